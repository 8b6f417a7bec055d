use crate::error::{Error, Result};
use crate::scalar::Ring;
use serde::Serialize;

type Mat2<T> = [[T; 2]; 2];

/// Split octonion `(u, v)` with `u, v` 2x2 matrices, multiplied by the
/// Cayley-Dickson rule `(u, v)(z, w) = (uz - conj(w) v, w u + v conj(z))`
/// where `conj` is the adjugate of a 2x2 matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SplitOctonion<T> {
    pub u: Mat2<T>,
    pub v: Mat2<T>,
}

fn ovf() -> Error {
    Error::Overflow("split octonion arithmetic")
}

fn m_mul<T: Ring>(a: &Mat2<T>, b: &Mat2<T>) -> Result<Mat2<T>> {
    let mut out: Mat2<T> = [[T::zero(), T::zero()], [T::zero(), T::zero()]];
    for i in 0..2 {
        for j in 0..2 {
            let p = a[i][0].checked_mul(&b[0][j]).ok_or_else(ovf)?;
            let q = a[i][1].checked_mul(&b[1][j]).ok_or_else(ovf)?;
            out[i][j] = p.checked_add(&q).ok_or_else(ovf)?;
        }
    }
    Ok(out)
}

fn m_add<T: Ring>(a: &Mat2<T>, b: &Mat2<T>, negate_b: bool) -> Result<Mat2<T>> {
    let mut out = a.clone();
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = if negate_b { a[i][j].checked_sub(&b[i][j]) } else { a[i][j].checked_add(&b[i][j]) }
                .ok_or_else(ovf)?;
        }
    }
    Ok(out)
}

fn m_bar<T: Ring>(a: &Mat2<T>) -> Mat2<T> {
    [[a[1][1].clone(), -a[0][1].clone()], [-a[1][0].clone(), a[0][0].clone()]]
}

fn m_det<T: Ring>(a: &Mat2<T>) -> Result<T> {
    let p = a[0][0].checked_mul(&a[1][1]).ok_or_else(ovf)?;
    let q = a[0][1].checked_mul(&a[1][0]).ok_or_else(ovf)?;
    p.checked_sub(&q).ok_or_else(ovf)
}

fn m_zero<T: Ring>() -> Mat2<T> {
    [[T::zero(), T::zero()], [T::zero(), T::zero()]]
}

impl<T: Ring> SplitOctonion<T> {
    pub fn new(u: Mat2<T>, v: Mat2<T>) -> Self {
        Self { u, v }
    }

    pub fn one() -> Self {
        Self { u: [[T::one(), T::zero()], [T::zero(), T::one()]], v: m_zero() }
    }

    pub fn zero() -> Self {
        Self { u: m_zero(), v: m_zero() }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (u, v, z, w) = (&self.u, &self.v, &other.u, &other.v);
        let first = m_add(&m_mul(u, z)?, &m_mul(&m_bar(w), v)?, true)?;
        let second = m_add(&m_mul(w, u)?, &m_mul(v, &m_bar(z))?, false)?;
        Ok(Self { u: first, v: second })
    }

    pub fn conj(&self) -> Self {
        let v = [[-self.v[0][0].clone(), -self.v[0][1].clone()], [-self.v[1][0].clone(), -self.v[1][1].clone()]];
        Self { u: m_bar(&self.u), v }
    }

    /// `Tr(u, v) = u + conj(u)` as a scalar.
    pub fn trace(&self) -> T {
        self.u[0][0].clone() + self.u[1][1].clone()
    }

    /// `N(u, v) = det(u) + det(v)`; `x conj(x) = N(x) * 1` for the product above.
    pub fn norm(&self) -> Result<T> {
        m_det(&self.u)?.checked_add(&m_det(&self.v)?).ok_or_else(ovf)
    }
}
