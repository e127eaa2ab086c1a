use spinpoly::biorthogonal::{dual_function, dual_truncation_series};
use spinpoly::exact::{int, ratio, Rational, RationalMatrix};
use spinpoly::vandermonde::{build_vandermonde, dual_matrices, metric};
use spinpoly::HalfInteger;

fn sj(two_j: u32) -> HalfInteger {
    HalfInteger::from_two_j(two_j)
}

fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

#[test]
fn generating_function_rows_through_x7() {
    let rows: [&[i64]; 7] = [
        &[1, 2, 2, 2, 2, 2, 2, 2],
        &[1, 4, 9, 16, 25, 36, 49, 64],
        &[1, 6, 20, 50, 105, 196, 336, 540],
        &[1, 8, 35, 112, 294, 672, 1386, 2640],
        &[1, 10, 54, 210, 660, 1782, 4290, 9438],
        &[1, 12, 77, 352, 1287, 4004, 11011, 27456],
        &[1, 14, 104, 546, 2275, 8008, 24752, 68952],
    ];
    for (n, row) in rows.iter().enumerate() {
        assert_eq!(dual_truncation_series(n as u32, 7), ints(row), "n={n}");
    }
}

#[test]
fn generating_function_rows_near_the_top() {
    // Leading terms of the rows n = j−3, j−2, j−1, j as polynomials in j.
    for j in 4i64..=12 {
        let n = (j - 3) as u32;
        let expect = [1, 2 * (j - 2), (2 * j - 5) * (j - 1), 2 * (2 * j - 5) * (j - 2) * j / 3];
        assert_eq!(dual_truncation_series(n, 3), ints(&expect), "j={j}");
        assert_eq!(
            dual_truncation_series(n + 1, 2),
            ints(&[1, 2 * (j - 1), (2 * j - 3) * j])
        );
        assert_eq!(dual_truncation_series(n + 2, 1), ints(&[1, 2 * j]));
        assert_eq!(dual_truncation_series(n + 3, 0), ints(&[1]));
    }
}

fn brackets(two_j: u32, n: u32) -> Vec<Rational> {
    let g = dual_function(sj(two_j), n).unwrap();
    (n..=g.cap()).map(|k| g.bracket_coefficient(k)).collect()
}

#[test]
fn even_table_rows() {
    // j = 8 shows every printed harmonic of the first rows.
    assert_eq!(brackets(16, 0), ints(&[1, 2, 2, 2, 2, 2, 2, 2, 2]));
    assert_eq!(brackets(16, 1)[..5], ints(&[1, 4, 9, 16, 25])[..]);
    assert_eq!(brackets(16, 2)[..4], ints(&[1, 6, 20, 50])[..]);
    assert_eq!(brackets(16, 3)[..4], ints(&[1, 8, 35, 112])[..]);
    assert_eq!(brackets(16, 4)[..4], ints(&[1, 10, 54, 210])[..]);
    assert_eq!(brackets(16, 5)[..4], ints(&[1, 12, 77, 352])[..]);
    for n in 0..=8 {
        let g = dual_function(sj(16), n).unwrap();
        assert_eq!(g.cos_coeffs[&n], Rational::from_integer((-4i64).pow(n).into()));
    }
}

#[test]
fn even_table_last_harmonics() {
    for j in 3i64..=10 {
        let two_j = 2 * j as u32;
        let j_u = j as u32;
        // n = 1: j², n = 2: C(j+1,3) j / 2, and the last three rows.
        assert_eq!(*brackets(two_j, 1).last().unwrap(), int(j * j));
        assert_eq!(*brackets(two_j, 2).last().unwrap(), int((j * j - 1) * j * j / 12));
        assert_eq!(brackets(two_j, j_u), ints(&[1]));
        assert_eq!(brackets(two_j, j_u - 1), ints(&[1, 2 * j]));
        assert_eq!(brackets(two_j, j_u - 2), ints(&[1, 2 * (j - 1), (2 * j - 3) * j]));
    }
}

#[test]
fn odd_table_rows() {
    // j = 13/2, cap 7.
    let g1 = dual_function(sj(13), 1).unwrap();
    assert!(g1.half_sine_factor);
    assert_eq!(brackets(13, 1), ints(&[1, 4, 9, 16, 25, 36, 49]));
    assert_eq!(brackets(13, 2)[..4], ints(&[1, 6, 20, 50])[..]);
    assert_eq!(brackets(13, 3)[..4], ints(&[1, 8, 35, 112])[..]);
    assert_eq!(brackets(13, 4)[..4], ints(&[1, 10, 54, 210])[..]);
    assert_eq!(brackets(13, 5)[..3], ints(&[1, 12, 77])[..]);
    assert_eq!(brackets(13, 6), ints(&[1, 14]));
    assert_eq!(brackets(13, 7), ints(&[1]));
    assert_eq!(dual_function(sj(13), 6).unwrap().cos_coeffs[&6], int(4096));
    // (j+1/2)² on the last harmonic of the first row, and 2(j+1/2) on the next to last row.
    for two_j in [3u32, 5, 7, 9] {
        let c = i64::from(two_j.div_ceil(2));
        assert_eq!(*brackets(two_j, 1).last().unwrap(), int(c * c));
        assert_eq!(brackets(two_j, c as u32 - 1), ints(&[1, 2 * c]));
    }
}

#[test]
fn spin_two_matrices() {
    let inv = RationalMatrix::from_scaled_rows(
        384,
        &[
            &[0, 0, 384, 0, 0],
            &[-16, 128, 0, -128, 16],
            &[-4, 64, -120, 64, -4],
            &[4, -8, 0, 8, -4],
            &[1, -4, 6, -4, 1],
        ],
    );
    assert_eq!(build_vandermonde(sj(4)).v_inv, inv);
    let t = dual_matrices(sj(4));
    assert_eq!(t[0], ints(&[0, 0, 1, 0, 0]));
    assert_eq!(
        t[1],
        [-1, 8, 0, -8, 1].iter().map(|&x| ratio(x, 24)).collect::<Vec<_>>()
    );
    assert_eq!(
        t[2],
        [-1, 16, -30, 16, -1].iter().map(|&x| ratio(x, 96)).collect::<Vec<_>>()
    );
    assert_eq!(
        t[3],
        [1, -2, 0, 2, -1].iter().map(|&x| ratio(x, 96)).collect::<Vec<_>>()
    );
    let g = metric(sj(4));
    assert_eq!(g[(0, 0)], ratio(289, 147456));
    assert_eq!(g[(1, 3)], ratio(-12336, 147456));
    assert_eq!(g[(2, 2)], ratio(161892, 147456));
}

#[test]
fn spin_half_and_three_halves_duals() {
    assert_eq!(
        dual_matrices(sj(1)),
        vec![vec![ratio(1, 2), ratio(1, 2)], vec![ratio(1, 2), ratio(-1, 2)]]
    );
    let t = dual_matrices(sj(3));
    assert_eq!(t[2], [1, -1, -1, 1].iter().map(|&x| ratio(x, 16)).collect::<Vec<_>>());
    assert_eq!(t[3], [1, -3, 3, -1].iter().map(|&x| ratio(x, 48)).collect::<Vec<_>>());
}
