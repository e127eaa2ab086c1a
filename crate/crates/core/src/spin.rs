use std::fmt;

use serde::{Deserialize, Serialize};

/// A spin quantum number `j ∈ {0, 1/2, 1, 3/2, ...}` stored as the integer `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInteger(u32);

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger(0);

    pub const fn from_two_j(two_j: u32) -> Self {
        HalfInteger(two_j)
    }

    pub const fn two_j(self) -> u32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Dimension `2j + 1` of the irreducible representation.
    pub const fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// `⌊j⌋`.
    pub const fn floor(self) -> u32 {
        self.0 / 2
    }

    /// `⌈j⌉`; equals `j + 1/2` for half-odd spins.
    pub const fn ceil(self) -> u32 {
        self.0.div_ceil(2)
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// Twice the magnetic quantum numbers `2m` in basis order `+j, ..., -j`.
    pub fn doubled_weights(self) -> impl DoubleEndedIterator<Item = i64> + ExactSizeIterator {
        let two_j = i64::from(self.0);
        (0..self.0 as usize + 1).map(move |r| two_j - 2 * r as i64)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl From<u32> for HalfInteger {
    fn from(two_j: u32) -> Self {
        HalfInteger(two_j)
    }
}
