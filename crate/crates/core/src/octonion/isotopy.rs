use super::basis::basis_data;
use super::Octonion;
use crate::error::{invalid, Result};
use crate::scalar::{Rational, Ring};
use num_traits::Zero;

type Mat8 = [[Rational; 8]; 8];

/// Three norm isometries acting on order coordinates (column vectors).
#[derive(Clone, Debug, PartialEq)]
pub struct IsometryTriple {
    pub xi: Mat8,
    pub upsilon: Mat8,
    pub zeta: Mat8,
}

impl IsometryTriple {
    pub fn new(xi: Mat8, upsilon: Mat8, zeta: Mat8) -> Self {
        Self { xi, upsilon, zeta }
    }

    /// Signed identities `(s1 * id, s2 * id, s3 * id)`.
    pub fn signs(s1: i64, s2: i64, s3: i64) -> Self {
        let m = |s: i64| -> Mat8 {
            std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rational::from_int(s) } else { Rational::zero() }))
        };
        Self::new(m(s1), m(s2), m(s3))
    }
}

fn apply(m: &Mat8, x: &Octonion<Rational>) -> Octonion<Rational> {
    let c = x.coords();
    Octonion::new(std::array::from_fn(|i| {
        let mut s = Rational::zero();
        for j in 0..8 {
            if !m[i][j].is_zero() && !c[j].is_zero() {
                s += &m[i][j] * &c[j];
            }
        }
        s
    }))
}

/// `M^T G M == G` for the Gram matrix of the norm form.
pub fn is_isometry(m: &Mat8) -> bool {
    let g = &basis_data().gram;
    for i in 0..8 {
        for j in 0..8 {
            let mut s = Rational::zero();
            for a in 0..8 {
                for b in 0..8 {
                    if g[a][b] != 0 {
                        s += &m[a][i] * &m[b][j] * Rational::from_int(g[a][b]);
                    }
                }
            }
            if s != Rational::from_int(g[i][j]) {
                return false;
            }
        }
    }
    true
}

/// Whether `Tr(xi(a) upsilon(b) zeta(c)) = Tr(a b c)` on all basis triples.
///
/// Inputs that are not isometries of the norm form are rejected.
pub fn isotopy_triple_check(t: &IsometryTriple) -> Result<bool> {
    for (name, m) in [("xi", &t.xi), ("upsilon", &t.upsilon), ("zeta", &t.zeta)] {
        if !is_isometry(m) {
            return Err(invalid(format!("{name} does not preserve the norm form")));
        }
    }
    let basis: Vec<Octonion<Rational>> = (0..8).map(Octonion::basis).collect();
    let images = |m: &Mat8| -> Vec<Octonion<Rational>> { basis.iter().map(|b| apply(m, b)).collect() };
    let (xs, ys, zs) = (images(&t.xi), images(&t.upsilon), images(&t.zeta));
    for i in 0..8 {
        for j in 0..8 {
            let lhs_ij = xs[i].checked_mul(&ys[j])?;
            let rhs_ij = basis[i].checked_mul(&basis[j])?;
            for k in 0..8 {
                if lhs_ij.checked_mul(&zs[k])?.trace() != rhs_ij.checked_mul(&basis[k])?.trace() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
