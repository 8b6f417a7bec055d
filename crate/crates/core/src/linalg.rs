//! Small exact linear algebra over the integers and rationals.

use crate::scalar::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn det<const N: usize>(m: &[[i64; N]; N]) -> i128 {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..N {
        if a[k][k] == 0 {
            match (k + 1..N).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..N {
            for j in k + 1..N {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[N - 1][N - 1]
}

/// Exact inverse over the rationals; `None` if singular.
pub fn rational_inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &a[col][c] * &f;
                    a[r][c] = &a[r][c] - t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Returns `(adj, den)` with `m^{-1} = adj / den`, `adj` integral and `den > 0` minimal.
pub fn integer_inverse<const N: usize>(m: &[[i64; N]; N]) -> Option<([[i64; N]; N], i64)> {
    let q: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
        .collect();
    let inv = rational_inverse(&q)?;
    let mut den = BigInt::one();
    for row in &inv {
        for v in row {
            den = den.lcm(v.denom());
        }
    }
    let mut adj = [[0i64; N]; N];
    for i in 0..N {
        for j in 0..N {
            let v = &inv[i][j] * Rational::from_integer(den.clone());
            adj[i][j] = v.to_integer().to_i64()?;
        }
    }
    Some((adj, den.abs().to_i64()?))
}

/// Exact `L D L^T` decomposition of a symmetric positive-definite rational
/// matrix: returns `(mu, d)` with `x^T A x = sum_i d_i (x_i + sum_{j>i} mu[i][j] x_j)^2`.
pub fn ldl(a: &[Vec<Rational>]) -> Option<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let n = a.len();
    let mut q: Vec<Vec<Rational>> = a.to_vec();
    let mut d = vec![Rational::zero(); n];
    let mut mu = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        if !q[i][i].is_positive() {
            return None;
        }
        d[i] = q[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = &q[i][j] / &d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let t = &mu[i][j] * &q[i][k];
                q[j][k] = &q[j][k] - t;
            }
        }
    }
    Some((mu, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_small_matrices() {
        assert_eq!(det(&[[2, 1], [1, 2]]), 3);
        assert_eq!(det(&[[0, 1], [1, 0]]), -1);
        assert_eq!(det(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]), 0);
    }

    #[test]
    fn integer_inverse_round_trips() {
        let m = [[2, 1], [1, 1]];
        let (adj, den) = integer_inverse(&m).unwrap();
        assert_eq!(den, 1);
        assert_eq!(adj, [[1, -1], [-1, 2]]);
        let (adj, den) = integer_inverse(&[[2, 0], [0, 4]]).unwrap();
        assert_eq!(den, 4);
        assert_eq!(adj, [[2, 0], [0, 1]]);
    }
}
