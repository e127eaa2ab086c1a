//! Sampled coefficient curves `A_k(θ)` on a uniform grid, written as CSV.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;

use crate::coefficients::coefficient;
use crate::{Error, HalfInteger, Result};

pub const DEFAULT_THETA_MIN: f64 = 0.0;
pub const DEFAULT_THETA_MAX: f64 = 4.0 * PI;
pub const DEFAULT_SAMPLES: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotRequest {
    pub spin: HalfInteger,
    pub k_list: Vec<u32>,
    pub theta_min: f64,
    pub theta_max: f64,
    pub samples: usize,
}

impl PlotRequest {
    /// Request over the default grid, `1024` samples of `[0, 4π]`.
    pub fn new(spin: HalfInteger, k_list: Vec<u32>) -> Self {
        PlotRequest {
            spin,
            k_list,
            theta_min: DEFAULT_THETA_MIN,
            theta_max: DEFAULT_THETA_MAX,
            samples: DEFAULT_SAMPLES,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::InvalidRequest(format!(
                "samples must be at least 2, got {}",
                self.samples
            )));
        }
        if !(self.theta_min.is_finite() && self.theta_max.is_finite()) || self.theta_min >= self.theta_max {
            return Err(Error::InvalidRequest(format!(
                "need finite theta_min < theta_max, got [{}, {}]",
                self.theta_min, self.theta_max
            )));
        }
        if self.k_list.is_empty() {
            return Err(Error::InvalidRequest("k list is empty".into()));
        }
        if let Some(&k) = self.k_list.iter().find(|&&k| k > self.spin.two_j()) {
            return Err(Error::InvalidRequest(format!(
                "k = {k} exceeds 2j = {}",
                self.spin.two_j()
            )));
        }
        Ok(())
    }

    /// Uniform grid including both endpoints.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.samples - 1;
        let step = (self.theta_max - self.theta_min) / last as f64;
        (0..self.samples)
            .map(|i| {
                if i == last {
                    self.theta_max
                } else {
                    self.theta_min + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub k_list: Vec<u32>,
    pub theta: Vec<f64>,
    /// `rows[i][c]` is `A_{k_list[c]}(theta[i])`.
    pub rows: Vec<Vec<f64>>,
}

impl PlotData {
    pub fn header(&self) -> Vec<String> {
        std::iter::once("theta".to_string())
            .chain(self.k_list.iter().map(|k| format!("A_{k}")))
            .collect()
    }

    /// Values are written with 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidRequest(format!("csv output failed: {e}"));
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(self.header()).map_err(io)?;
        for (theta, row) in self.theta.iter().zip(&self.rows) {
            let record = std::iter::once(theta).chain(row).map(|v| format!("{v:.16e}"));
            w.write_record(record).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::InvalidRequest(format!("csv output failed: {e}")))
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is ascii"))
    }
}

pub fn plot_data(request: &PlotRequest) -> Result<PlotData> {
    request.validate()?;
    let evaluators = request
        .k_list
        .iter()
        .map(|&k| coefficient(request.spin, k).map(|a| a.evaluator()))
        .collect::<Result<Vec<_>>>()?;
    let theta = request.grid();
    let rows = theta
        .par_iter()
        .map(|&t| evaluators.iter().map(|a| a.evaluate(t)).collect())
        .collect();
    Ok(PlotData {
        k_list: request.k_list.clone(),
        theta,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(two_j: u32, k_list: Vec<u32>, lo: f64, hi: f64, samples: usize) -> PlotRequest {
        PlotRequest {
            spin: HalfInteger::from_two_j(two_j),
            k_list,
            theta_min: lo,
            theta_max: hi,
            samples,
        }
    }

    #[test]
    fn validation() {
        assert!(request(4, vec![0], 0.0, 1.0, 1).validate().is_err());
        assert!(request(4, vec![0], 1.0, 1.0, 8).validate().is_err());
        assert!(request(4, vec![0], 2.0, 1.0, 8).validate().is_err());
        assert!(request(4, vec![0], 0.0, f64::NAN, 8).validate().is_err());
        assert!(request(4, vec![5], 0.0, 1.0, 8).validate().is_err());
        assert!(request(4, vec![], 0.0, 1.0, 8).validate().is_err());
        assert!(request(4, vec![0, 4], 0.0, 1.0, 2).validate().is_ok());
    }

    #[test]
    fn default_grid() {
        let r = PlotRequest::new(HalfInteger::from_two_j(2), vec![0]);
        let g = r.grid();
        assert_eq!(g.len(), 1024);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[1023], 4.0 * PI);
    }

    #[test]
    fn integer_spin_a0_is_one() {
        let data = plot_data(&request(138, vec![0], 0.0, 4.0 * PI, 33)).unwrap();
        assert!(data.rows.iter().all(|r| r[0] == 1.0));
    }

    #[test]
    fn half_odd_spin_a0_square_wave() {
        let data = plot_data(&request(137, vec![0], 0.0, 2.0 * PI, 5)).unwrap();
        assert!((data.rows[1][0] - 1.0).abs() <= 1e-12);
        assert!((data.rows[4][0] + 1.0).abs() <= 1e-12);
    }

    #[test]
    fn csv_layout() {
        let data = plot_data(&request(2, vec![0, 2], 0.0, PI, 3)).unwrap();
        let csv = data.to_csv_string().unwrap();
        let lines: Vec<&str> = csv.split('\n').collect();
        assert_eq!(lines[0], "theta,A_0,A_2");
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[4], "");
        assert!(!csv.contains('\r'));
        assert_eq!(
            lines[1],
            "0.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0"
        );
    }
}
