//! Integral and rational octonions.
//!
//! [`Octonion`] stores coordinates in the Z-basis of Coxeter's order
//! (see [`basis`]), so an `Octonion<i64>` is exactly an element of the order
//! and an `Octonion<Rational>` an element of the rational octonions.

pub mod basis;
mod isotopy;
mod order;
mod split;

pub use isotopy::{isotopy_triple_check, IsometryTriple};
pub use order::{verify_order, verify_order_model, OrderCheck, OrderModel, OrderReport};
pub use split::SplitOctonion;

use crate::error::{invalid, Error, Result};
use crate::scalar::{Rational, Ring};
use basis::{basis_data, ORDER_BASIS};
use num_traits::Zero;
use serde::Serialize;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Octonion<T> {
    coords: [T; 8],
}

fn overflow() -> Error {
    Error::Overflow("octonion arithmetic")
}

impl<T: Ring> Octonion<T> {
    pub fn new(coords: [T; 8]) -> Self {
        Self { coords }
    }

    pub fn zero() -> Self {
        Self { coords: std::array::from_fn(|_| T::zero()) }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// The `i`-th element of the order basis.
    pub fn basis(i: usize) -> Self {
        Self { coords: std::array::from_fn(|k| if k == i { T::one() } else { T::zero() }) }
    }

    pub fn from_int(v: i64) -> Self {
        Self::one().scale(&T::from_int(v))
    }

    pub fn coords(&self) -> &[T; 8] {
        &self.coords
    }

    pub fn into_coords(self) -> [T; 8] {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { coords: std::array::from_fn(|k| self.coords[k].clone() * s.clone()) }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.coords.clone();
        for k in 0..8 {
            out[k] = out[k].checked_add(&other.coords[k]).ok_or_else(overflow)?;
        }
        Ok(Self { coords: out })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.coords.clone();
        for k in 0..8 {
            out[k] = out[k].checked_sub(&other.coords[k]).ok_or_else(overflow)?;
        }
        Ok(Self { coords: out })
    }

    pub fn checked_scale(&self, s: &T) -> Result<Self> {
        let mut out = self.coords.clone();
        for v in out.iter_mut() {
            *v = v.checked_mul(s).ok_or_else(overflow)?;
        }
        Ok(Self { coords: out })
    }

    /// Product via the integer structure constants of the order basis.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let data = basis_data();
        let mut out: [T; 8] = std::array::from_fn(|_| T::zero());
        for i in 0..8 {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if other.coords[j].is_zero() {
                    continue;
                }
                let p = self.coords[i].checked_mul(&other.coords[j]).ok_or_else(overflow)?;
                for &(k, t) in &data.products[i * 8 + j] {
                    let term = p.checked_mul(&T::from_int(t)).ok_or_else(overflow)?;
                    out[k] = out[k].checked_add(&term).ok_or_else(overflow)?;
                }
            }
        }
        Ok(Self { coords: out })
    }

    /// `Tr(x) = x + conj(x)`, a scalar.
    pub fn trace(&self) -> T {
        let data = basis_data();
        let mut t = T::zero();
        for k in 0..8 {
            if data.trace[k] != 0 {
                t = t + self.coords[k].clone() * T::from_int(data.trace[k]);
            }
        }
        t
    }

    /// `conj(x) = Tr(x) * 1 - x`.
    pub fn conj(&self) -> Self {
        let mut out: [T; 8] = std::array::from_fn(|k| -self.coords[k].clone());
        out[0] = out[0].clone() + self.trace();
        Self { coords: out }
    }

    /// `<x, y> = Tr(conj(x) y)`, computed from the Gram matrix.
    pub fn bilinear(&self, other: &Self) -> T {
        let g = &basis_data().gram;
        let mut s = T::zero();
        for i in 0..8 {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if g[i][j] != 0 && !other.coords[j].is_zero() {
                    s = s + self.coords[i].clone() * other.coords[j].clone() * T::from_int(g[i][j]);
                }
            }
        }
        s
    }

    /// `N(x) = x conj(x)`, i.e. half of `<x, x>` (the Gram diagonal is even).
    pub fn norm(&self) -> T {
        let g = &basis_data().gram;
        let mut s = T::zero();
        for i in 0..8 {
            if self.coords[i].is_zero() {
                continue;
            }
            s = s + self.coords[i].clone() * self.coords[i].clone() * T::from_int(g[i][i] / 2);
            for j in i + 1..8 {
                if g[i][j] != 0 {
                    s = s + self.coords[i].clone() * self.coords[j].clone() * T::from_int(g[i][j]);
                }
            }
        }
        s
    }

    /// `Tr(x y z)`; independent of the association order.
    pub fn trilinear(&self, y: &Self, z: &Self) -> Result<T> {
        Ok(self.checked_mul(y)?.checked_mul(z)?.trace())
    }

    /// Doubled Fano coordinates `2 * [re, e0..e6]`.
    pub fn to_fano_doubled(&self) -> [T; 8] {
        let mut out: [T; 8] = std::array::from_fn(|_| T::zero());
        for (k, b) in ORDER_BASIS.iter().enumerate() {
            if self.coords[k].is_zero() {
                continue;
            }
            for r in 0..8 {
                if b[r] != 0 {
                    out[r] = out[r].clone() + self.coords[k].clone() * T::from_int(b[r]);
                }
            }
        }
        out
    }

    /// The Fano unit `e_i`, `i` in `0..7`.
    pub fn fano_unit(i: usize) -> Self {
        assert!(i < 7, "Fano units are e0..e6");
        let mut f = [0i64; 8];
        f[i + 1] = 2;
        let c = fano_doubled_to_order(&f).expect("Fano units lie in the order");
        Self { coords: c.map(T::from_int) }
    }
}

/// Order coordinates of a doubled Fano vector, if it lies in the order.
pub fn fano_doubled_to_order(f: &[i64; 8]) -> Option<[i64; 8]> {
    let data = basis_data();
    let mut out = [0i64; 8];
    for (r, o) in out.iter_mut().enumerate() {
        let s: i64 = (0..8).map(|c| data.fano_to_order[r][c] * f[c]).sum();
        if s % data.fano_to_order_den != 0 {
            return None;
        }
        *o = s / data.fano_to_order_den;
    }
    Some(out)
}

impl Octonion<Rational> {
    /// Rational octonion from plain (not doubled) Fano coordinates.
    pub fn from_fano(f: &[Rational; 8]) -> Self {
        let data = basis_data();
        let den = Rational::from_int(data.fano_to_order_den);
        let coords = std::array::from_fn(|r| {
            let mut s = Rational::zero();
            for c in 0..8 {
                s += Rational::from_int(data.fano_to_order[r][c]) * &f[c];
            }
            // doubled input is 2 f
            s * Rational::from_int(2) / &den
        });
        Self { coords }
    }

    pub fn to_fano(&self) -> [Rational; 8] {
        let half = crate::scalar::rat(1, 2);
        self.to_fano_doubled().map(|v| v * &half)
    }
}

impl From<&Octonion<i64>> for Octonion<Rational> {
    fn from(x: &Octonion<i64>) -> Self {
        Octonion { coords: x.coords.map(Rational::from_int) }
    }
}

impl<T: Ring> Add for &Octonion<T> {
    type Output = Octonion<T>;
    fn add(self, rhs: Self) -> Octonion<T> {
        self.checked_add(rhs).expect("octonion overflow")
    }
}

impl<T: Ring> Sub for &Octonion<T> {
    type Output = Octonion<T>;
    fn sub(self, rhs: Self) -> Octonion<T> {
        self.checked_sub(rhs).expect("octonion overflow")
    }
}

impl<T: Ring> Neg for &Octonion<T> {
    type Output = Octonion<T>;
    fn neg(self) -> Octonion<T> {
        Octonion { coords: std::array::from_fn(|k| -self.coords[k].clone()) }
    }
}

/// Panics on fixed-width overflow; use [`Octonion::checked_mul`] to recover.
impl<T: Ring> Mul for &Octonion<T> {
    type Output = Octonion<T>;
    fn mul(self, rhs: Self) -> Octonion<T> {
        self.checked_mul(rhs).expect("octonion overflow")
    }
}

/// The D6 Hermitian form `h(d1, d2) = -d1 d2 + e0 (d1 d2) e0` on the
/// sublattice orthogonal to `1` and `e0`. Values lie in `span{1, e0}`.
pub fn hermitian_d6<T: Ring>(d1: &Octonion<T>, d2: &Octonion<T>) -> Result<Octonion<T>> {
    let one = Octonion::<T>::one();
    let e0 = Octonion::<T>::fano_unit(0);
    for d in [d1, d2] {
        if !d.bilinear(&one).is_zero() || !d.bilinear(&e0).is_zero() {
            return Err(invalid("hermitian_d6 arguments must be orthogonal to 1 and e0"));
        }
    }
    let p = d1.checked_mul(d2)?;
    let twisted = e0.checked_mul(&p)?.checked_mul(&e0)?;
    twisted.checked_sub(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type Oct = Octonion<i64>;

    fn fano_doubled(idx: usize) -> [i64; 8] {
        let mut f = [0; 8];
        f[idx] = 2;
        f
    }

    #[test]
    fn identity_and_imaginary_units() {
        let one = Oct::one();
        for i in 0..7 {
            let e = Oct::fano_unit(i);
            assert_eq!(&one * &e, e);
            assert_eq!(&e * &e, Oct::from_int(-1));
            assert_eq!(e.trace(), 0);
            assert_eq!(e.norm(), 1);
            assert_eq!(one.bilinear(&e), 0);
        }
        assert_eq!(one.norm(), 1);
        assert_eq!(one.bilinear(&one), 2);
        assert_eq!(one.trilinear(&one, &one).unwrap(), 2);
    }

    #[test]
    fn fano_lines_are_quaternion_triples() {
        for [i, j, k] in basis::FANO_LINES {
            let (ei, ej, ek) = (Oct::fano_unit(i), Oct::fano_unit(j), Oct::fano_unit(k));
            assert_eq!(&ei * &ej, ek);
            assert_eq!(&ej * &ei, -&ek);
            assert_eq!(&ej * &ek, ei);
            assert_eq!(&ek * &ei, ej);
            // Tr(e_i e_j e_k) = Tr(e_k e_k) = -2
            assert_eq!(ei.trilinear(&ej, &ek).unwrap(), -2);
        }
    }

    #[test]
    fn fano_coordinates_round_trip() {
        for idx in 0..8 {
            let f = fano_doubled(idx);
            let o = Oct::new(fano_doubled_to_order(&f).unwrap());
            assert_eq!(o.to_fano_doubled(), f);
        }
        // (1 + e0)/2 has norm 1/2 and is not in the order
        assert!(fano_doubled_to_order(&[1, 1, 0, 0, 0, 0, 0, 0]).is_none());
    }

    #[test]
    fn structure_constants_agree_with_fano_table() {
        for i in 0..8 {
            for j in 0..8 {
                let p = &Oct::basis(i) * &Oct::basis(j);
                let direct = basis::fano_mul(&ORDER_BASIS[i], &ORDER_BASIS[j]).unwrap();
                let doubled = p.to_fano_doubled();
                assert_eq!(direct, doubled.map(|v| 2 * v));
            }
        }
    }

    fn d6_basis() -> [Octonion<Rational>; 3] {
        let h = rat(1, 2);
        let mk = |a: usize, b: usize, sb: i64| {
            let mut f: [Rational; 8] = std::array::from_fn(|_| Rational::zero());
            f[a + 1] = h.clone();
            f[b + 1] = h.clone() * Rational::from_int(sb);
            Octonion::from_fano(&f)
        };
        [mk(1, 3, 1), mk(2, 4, 1), mk(5, 6, -1)]
    }

    #[test]
    fn d6_basis_is_hermitian_orthonormal() {
        let b = d6_basis();
        for i in 0..3 {
            for j in 0..3 {
                let h = hermitian_d6(&b[i], &b[j]).unwrap();
                let expected = if i == j { Octonion::one() } else { Octonion::zero() };
                assert_eq!(h, expected, "h(b{}, b{})", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn hermitian_form_is_conjugate_symmetric_on_the_order() {
        let one = Oct::one();
        let e0 = Oct::fano_unit(0);
        // integral elements of D: e1..e6 and half-sums in the order
        let mut d = Vec::new();
        for i in 1..7 {
            d.push(Oct::fano_unit(i));
        }
        for x in crate::lattice::enumerate_shell(1).unwrap().elements() {
            if x.bilinear(&one) == 0 && x.bilinear(&e0) == 0 {
                d.push(x.clone());
            }
        }
        assert!(d.len() > 6);
        for x in &d {
            let hxx = hermitian_d6(x, x).unwrap();
            assert_eq!(hxx, Oct::from_int(2 * x.norm()));
            for y in &d {
                let h = hermitian_d6(x, y).unwrap();
                assert_eq!(h.bilinear(&Oct::fano_unit(1)), 0);
                for k in 2..7 {
                    assert_eq!(h.bilinear(&Oct::fano_unit(k)), 0);
                }
                assert_eq!(hermitian_d6(y, x).unwrap().conj(), h);
            }
        }
    }

    #[test]
    fn hermitian_rejects_elements_off_the_sublattice() {
        let e0 = Oct::fano_unit(0);
        assert!(hermitian_d6(&e0, &Oct::fano_unit(1)).is_err());
        assert!(hermitian_d6(&Oct::one(), &Oct::fano_unit(1)).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = Oct::from_int(i64::MAX / 2);
        assert_eq!(big.checked_mul(&big), Err(Error::Overflow("octonion arithmetic")));
    }

    #[test]
    fn rational_octonions_share_the_algebra() {
        let e1 = Octonion::<Rational>::fano_unit(1);
        let half = Octonion::<Rational>::one().scale(&rat(1, 2));
        let x = &half + &e1.scale(&rat(1, 2));
        assert_eq!(x.norm(), rat(1, 2));
        assert_eq!((&x * &x.conj()), Octonion::one().scale(&rat(1, 2)));
        assert_eq!(Octonion::from_fano(&x.to_fano()), x);
    }
}
