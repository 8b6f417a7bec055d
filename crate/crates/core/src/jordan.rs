//! The integral exceptional Jordan algebra `J3(Omega_c)` and the
//! Freudenthal space built on it.
//!
//! An element is the Hermitian matrix
//!
//! ```text
//! [ a        gamma    conj(beta) ]
//! [ conj(g)  b        alpha      ]
//! [ beta     conj(a)  c          ]
//! ```
//!
//! with `a, b, c` scalars and `alpha, beta, gamma` octonions.

use crate::error::{invalid, Error, Result};
use crate::octonion::Octonion;
use crate::scalar::Ring;
use num_integer::Integer;
use serde::Serialize;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct JordanElement<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub alpha: Octonion<T>,
    pub beta: Octonion<T>,
    pub gamma: Octonion<T>,
}

fn ov() -> Error {
    Error::Overflow("Jordan arithmetic")
}

fn mul<T: Ring>(x: &T, y: &T) -> Result<T> {
    x.checked_mul(y).ok_or_else(ov)
}

fn sub<T: Ring>(x: &T, y: &T) -> Result<T> {
    x.checked_sub(y).ok_or_else(ov)
}

impl<T: Ring> JordanElement<T> {
    pub fn new(a: T, b: T, c: T, alpha: Octonion<T>, beta: Octonion<T>, gamma: Octonion<T>) -> Self {
        Self { a, b, c, alpha, beta, gamma }
    }

    pub fn zero() -> Self {
        Self::diag(T::zero(), T::zero(), T::zero())
    }

    pub fn diag(a: T, b: T, c: T) -> Self {
        Self::new(a, b, c, Octonion::zero(), Octonion::zero(), Octonion::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero()
            && self.b.is_zero()
            && self.c.is_zero()
            && self.alpha.is_zero()
            && self.beta.is_zero()
            && self.gamma.is_zero()
    }

    pub fn trace(&self) -> Result<T> {
        self.a.checked_add(&self.b).and_then(|s| s.checked_add(&self.c)).ok_or_else(ov)
    }

    pub fn checked_scale(&self, s: &T) -> Result<Self> {
        Ok(Self::new(
            mul(&self.a, s)?,
            mul(&self.b, s)?,
            mul(&self.c, s)?,
            self.alpha.checked_scale(s)?,
            self.beta.checked_scale(s)?,
            self.gamma.checked_scale(s)?,
        ))
    }

    /// `Det(A) = abc + Tr(alpha beta gamma) - a N(alpha) - b N(beta) - c N(gamma)`.
    pub fn det(&self) -> Result<T> {
        let mut d = mul(&mul(&self.a, &self.b)?, &self.c)?;
        d = d.checked_add(&self.alpha.trilinear(&self.beta, &self.gamma)?).ok_or_else(ov)?;
        d = sub(&d, &mul(&self.a, &self.alpha.norm())?)?;
        d = sub(&d, &mul(&self.b, &self.beta.norm())?)?;
        sub(&d, &mul(&self.c, &self.gamma.norm())?)
    }

    /// The adjoint `A#`:
    /// diagonal `(bc - N(alpha), ca - N(beta), ab - N(gamma))` and
    /// off-diagonal `conj(beta gamma) - a alpha` and its cyclic shifts.
    pub fn sharp(&self) -> Result<Self> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (al, be, ga) = (&self.alpha, &self.beta, &self.gamma);
        Ok(Self::new(
            sub(&mul(b, c)?, &al.norm())?,
            sub(&mul(c, a)?, &be.norm())?,
            sub(&mul(a, b)?, &ga.norm())?,
            be.checked_mul(ga)?.conj().checked_sub(&al.checked_scale(a)?)?,
            ga.checked_mul(al)?.conj().checked_sub(&be.checked_scale(b)?)?,
            al.checked_mul(be)?.conj().checked_sub(&ga.checked_scale(c)?)?,
        ))
    }

    /// 0 for `A = 0`, 1 when `A# = 0`, 3 when `Det(A) != 0`, 2 otherwise.
    pub fn rank(&self) -> Result<u8> {
        if self.is_zero() {
            return Ok(0);
        }
        if self.sharp()?.is_zero() {
            return Ok(1);
        }
        Ok(if self.det()?.is_zero() { 2 } else { 3 })
    }
}

impl JordanElement<i64> {
    /// Largest `d` with `A / d` integral; rejects `A = 0`.
    pub fn content(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(invalid("content of the zero element"));
        }
        let g = [self.a, self.b, self.c]
            .iter()
            .chain(self.alpha.coords())
            .chain(self.beta.coords())
            .chain(self.gamma.coords())
            .fold(0i64, |g, v| g.gcd(v));
        Ok(g.unsigned_abs())
    }

    /// Rank one with non-negative diagonal.
    pub fn is_psd_rank1(&self) -> Result<bool> {
        Ok(self.a >= 0 && self.b >= 0 && self.c >= 0 && self.rank()? == 1)
    }
}

/// `(x, A+; A-, y)` in the 56-dimensional Freudenthal lattice.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FreudenthalElement<T> {
    pub x: T,
    pub y: T,
    pub a_plus: JordanElement<T>,
    pub a_minus: JordanElement<T>,
}

impl<T: Ring> FreudenthalElement<T> {
    pub fn new(x: T, y: T, a_plus: JordanElement<T>, a_minus: JordanElement<T>) -> Self {
        Self { x, y, a_plus, a_minus }
    }
}

impl FreudenthalElement<i64> {
    pub fn content(&self) -> Result<u64> {
        let parts = [&self.a_plus, &self.a_minus];
        let mut g = self.x.gcd(&self.y).unsigned_abs();
        for p in parts {
            if !p.is_zero() {
                g = g.gcd(&p.content()?);
            }
        }
        if g == 0 {
            return Err(invalid("content of the zero element"));
        }
        Ok(g)
    }
}

/// `x * (1, A; A#, Det A)`.
pub fn omega_element<T: Ring>(x: &T, a: &JordanElement<T>) -> Result<FreudenthalElement<T>> {
    if x.is_zero() {
        return Err(invalid("omega_element needs x != 0"));
    }
    Ok(FreudenthalElement::new(x.clone(), mul(x, &a.det()?)?, a.checked_scale(x)?, a.sharp()?.checked_scale(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_shell;
    use rand::{Rng, SeedableRng};

    type J = JordanElement<i64>;

    fn o(v: i64) -> Octonion<i64> {
        Octonion::from_int(v)
    }

    pub(crate) fn random_element(rng: &mut impl Rng, shells: &[Vec<Octonion<i64>>]) -> J {
        let mut pick = || {
            let s = &shells[rng.gen_range(0..shells.len())];
            s[rng.gen_range(0..s.len())].clone()
        };
        let (al, be, ga) = (pick(), pick(), pick());
        J::new(rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5), al, be, ga)
    }

    #[test]
    fn small_examples() {
        assert_eq!(J::diag(1, 1, 1).det().unwrap(), 1);
        assert_eq!(J::new(0, 0, 0, o(1), o(1), o(1)).det().unwrap(), 2);
        assert_eq!(J::diag(1, 1, 1).sharp().unwrap(), J::diag(1, 1, 1));
        assert!(J::diag(1, 0, 0).sharp().unwrap().is_zero());
        assert_eq!(J::zero().rank().unwrap(), 0);
        assert_eq!(J::diag(1, 0, 0).rank().unwrap(), 1);
        assert_eq!(J::diag(1, 1, 0).rank().unwrap(), 2);
        assert_eq!(J::diag(1, 1, 1).rank().unwrap(), 3);
        assert_eq!(J::diag(2, 2, 2).content().unwrap(), 2);
        assert_eq!(J::new(1, 6, 4, o(2), o(0), o(8)).content().unwrap(), 1);
        assert!(J::zero().content().is_err());
        assert!(J::diag(1, 0, 0).is_psd_rank1().unwrap());
        assert!(!J::diag(-1, 0, 0).is_psd_rank1().unwrap());
    }

    #[test]
    fn sharp_of_sharp_is_det_times_a() {
        let shells: Vec<Vec<_>> = (0..=2).map(|n| enumerate_shell(n).unwrap().elements().to_vec()).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let a = random_element(&mut rng, &shells);
            let d = a.det().unwrap();
            assert_eq!(a.sharp().unwrap().sharp().unwrap(), a.checked_scale(&d).unwrap());
            for l in [-2i64, 3] {
                let la = a.checked_scale(&l).unwrap();
                assert_eq!(la.det().unwrap(), l * l * l * d);
                assert_eq!(la.sharp().unwrap(), a.sharp().unwrap().checked_scale(&(l * l)).unwrap());
                if !a.is_zero() {
                    assert_eq!(la.content().unwrap(), l.unsigned_abs() * a.content().unwrap());
                }
            }
        }
    }

    #[test]
    fn rank_one_from_a_unit() {
        // (1, u, conj(u))-type rank-one: a = N(u), b = 1, c = ... use the outer
        // product v v* with v = (1, u, 0): diag (1, N(u), 0), gamma = u.
        let u = enumerate_shell(1).unwrap().elements()[5].clone();
        let a = J::new(1, 1, 0, Octonion::zero(), Octonion::zero(), u);
        assert_eq!(a.rank().unwrap(), 1);
        assert!(a.is_psd_rank1().unwrap());
        assert!(a.trace().unwrap() != 0);
    }

    #[test]
    fn omega_shape() {
        let f = omega_element(&1, &J::zero()).unwrap();
        assert_eq!((f.x, f.y), (1, 0));
        assert!(f.a_plus.is_zero() && f.a_minus.is_zero());
        let f = omega_element(&1, &J::diag(1, 0, 0)).unwrap();
        assert!(f.a_minus.is_zero());
        assert_eq!(f.y, 0);
        let a = J::new(1, 2, -1, o(1), o(0), o(3));
        let f = omega_element(&2, &a).unwrap();
        assert_eq!(f.content().unwrap() % 2, 0);
        assert_eq!(f.a_plus, a.checked_scale(&2).unwrap());
        assert!(omega_element(&0, &a).is_err());
    }
}
