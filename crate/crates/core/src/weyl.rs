//! W(E8)-invariant polynomials on the octonions, evaluated exactly.
//!
//! The roots are the 240 units of the order, with `<r, r> = 2` for the
//! bilinear form `<x, y> = Tr(conj(x) y)`. Invariants are kept in the basis
//! `r^{2k} P_j`, where `r^2 = <x, x>` and `P_j(x) = sum_r <r, x>^j`, and are
//! never expanded into monomials. Points are rational octonions.

use crate::error::{invalid, Result};
use crate::lattice::enumerate_shell;
use crate::octonion::basis::basis_data;
use crate::octonion::Octonion;
use crate::scalar::{Rational, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::sync::OnceLock;

pub const MAX_DEGREE: u32 = 30;

#[derive(Debug)]
pub struct RootSystem {
    roots: Vec<Octonion<i64>>,
    positive: Vec<Octonion<i64>>,
}

impl RootSystem {
    pub fn e8() -> &'static RootSystem {
        static ROOTS: OnceLock<RootSystem> = OnceLock::new();
        ROOTS.get_or_init(|| {
            let roots = enumerate_shell(1).expect("unit shell").elements().to_vec();
            let positive = roots
                .iter()
                .filter(|r| r.coords().iter().find(|&&v| v != 0).is_some_and(|&v| v > 0))
                .cloned()
                .collect();
            RootSystem { roots, positive }
        })
    }

    pub fn roots(&self) -> &[Octonion<i64>] {
        &self.roots
    }

    /// The roots whose first nonzero order coordinate is positive.
    pub fn positive_roots(&self) -> &[Octonion<i64>] {
        &self.positive
    }

    pub fn contains(&self, r: &Octonion<i64>) -> bool {
        self.roots.binary_search(r).is_ok()
    }
}

/// `x = num / den` with integer `num` and positive `den`.
fn clear_denominators(x: &Octonion<Rational>) -> ([BigInt; 8], BigInt) {
    let den = x.coords().iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let num = std::array::from_fn(|i| {
        let v = &x.coords()[i];
        v.numer() * (&den / v.denom())
    });
    (num, den)
}

fn pairing_int(r: &Octonion<i64>, x: &[BigInt; 8]) -> BigInt {
    let g = &basis_data().gram;
    let mut s = BigInt::zero();
    for i in 0..8 {
        if r.coords()[i] == 0 {
            continue;
        }
        for j in 0..8 {
            if g[i][j] != 0 {
                s += &x[j] * (r.coords()[i] * g[i][j]);
            }
        }
    }
    s
}

fn self_pairing(x: &[BigInt; 8]) -> BigInt {
    let g = &basis_data().gram;
    let mut s = BigInt::zero();
    for i in 0..8 {
        for j in 0..8 {
            if g[i][j] != 0 {
                s += &x[i] * &x[j] * g[i][j];
            }
        }
    }
    s
}

/// `P_j(num)` for every even `j <= d`, as integers.
fn power_sums(num: &[BigInt; 8], d: u32) -> Vec<BigInt> {
    let mut sums = vec![BigInt::zero(); d as usize / 2 + 1];
    for r in RootSystem::e8().roots() {
        let t = pairing_int(r, num);
        let t2 = &t * &t;
        let mut p = BigInt::one();
        for s in sums.iter_mut() {
            *s += &p;
            p *= &t2;
        }
    }
    sums
}

/// `P_d(x) = sum over the 240 roots of <r, x>^d`; zero for odd `d`.
pub fn power_sum_eval(d: u32, x: &Octonion<Rational>) -> Rational {
    if d % 2 == 1 {
        return Rational::zero();
    }
    let (num, den) = clear_denominators(x);
    let s = power_sums(&num, d).pop().expect("nonempty");
    Rational::new(s, num_traits::pow(den, d as usize))
}

/// `h_d = sum_k c_k r^{2k} P_{d - 2k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRep {
    pub degree: u32,
    #[serde(serialize_with = "rationals_as_strings")]
    pub coeffs: Vec<Rational>,
}

fn rationals_as_strings<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

impl InvariantRep {
    /// The power sum `P_d` itself (`c_k = delta_{k0}`).
    pub fn power_sum(d: u32) -> Result<Self> {
        check_degree(d)?;
        let mut coeffs = vec![Rational::zero(); d as usize / 2 + 1];
        coeffs[0] = Rational::one();
        Ok(Self { degree: d, coeffs })
    }
}

fn check_degree(d: u32) -> Result<()> {
    if d == 0 || d % 2 == 1 || d > MAX_DEGREE {
        return Err(invalid(format!("degree must be even and in 2..={MAX_DEGREE}, got {d}")));
    }
    Ok(())
}

/// Coefficients of `Laplacian(h)` in the basis `r^{2m} P_{d - 2m - 2}`.
///
/// Uses `Laplacian(r^{2k} f) = 2k(2k + 2j + 6) r^{2k-2} f + r^{2k} Laplacian(f)`
/// for `f` homogeneous of degree `j` in 8 variables, and
/// `Laplacian(P_j) = 2 j (j - 1) P_{j-2}`.
pub fn laplacian_coeffs(rep: &InvariantRep) -> Vec<Rational> {
    let d = rep.degree as i64;
    let c = &rep.coeffs;
    (0..c.len() - 1)
        .map(|m| {
            let mi = m as i64;
            let j = d - 2 * mi;
            let from_radial = &c[m + 1] * Rational::from_int(2 * (mi + 1) * (2 * d - 2 * mi + 4));
            let from_power = &c[m] * Rational::from_int(2 * j * (j - 1));
            from_radial + from_power
        })
        .collect()
}

/// True when the Laplacian of `rep` is the zero combination.
pub fn laplacian_check(rep: &InvariantRep) -> bool {
    laplacian_coeffs(rep).iter().all(Zero::is_zero)
}

/// The harmonic projection of `P_d`, normalized by `c_0 = 1`.
pub fn harmonic_project(d: u32) -> Result<InvariantRep> {
    check_degree(d)?;
    let d = d as i64;
    let mut coeffs = vec![Rational::one()];
    for m in 0..d / 2 {
        let j = d - 2 * m;
        let next = -&coeffs[m as usize] * Rational::new((j * (j - 1)).into(), ((m + 1) * (2 * d - 2 * m + 4)).into());
        coeffs.push(next);
    }
    Ok(InvariantRep { degree: d as u32, coeffs })
}

pub fn invariant_eval(rep: &InvariantRep, x: &Octonion<Rational>) -> Rational {
    let (num, den) = clear_denominators(x);
    let sums = power_sums(&num, rep.degree);
    let r2 = self_pairing(&num);
    let n = rep.coeffs.len();
    let mut acc = Rational::zero();
    let mut r2k = BigInt::one();
    for k in 0..n {
        acc += &rep.coeffs[k] * Rational::from_integer(&r2k * &sums[n - 1 - k]);
        r2k *= &r2;
    }
    acc / Rational::from_integer(num_traits::pow(den, rep.degree as usize))
}

/// `prod over positive roots of <r, x>`.
pub fn skew_eval(x: &Octonion<Rational>) -> Rational {
    let (num, den) = clear_denominators(x);
    let mut p = BigInt::one();
    for r in RootSystem::e8().positive_roots() {
        p *= pairing_int(r, &num);
        if p.is_zero() {
            return Rational::zero();
        }
    }
    let n = RootSystem::e8().positive_roots().len();
    Rational::new(p, num_traits::pow(den, n))
}

/// `s_r(x) = x - <r, x> r` for a root `r`.
pub fn reflect(r: &Octonion<i64>, x: &Octonion<Rational>) -> Result<Octonion<Rational>> {
    if !RootSystem::e8().contains(r) {
        return Err(invalid(format!("{r:?} is not a root")));
    }
    let r: Octonion<Rational> = r.into();
    let t = r.bilinear(x);
    r.checked_scale(&t).and_then(|s| x.checked_sub(&s))
}

/// Whether `r` is one of the chosen positive roots.
pub fn is_positive_root(r: &Octonion<i64>) -> bool {
    RootSystem::e8().contains(r) && r.coords().iter().find(|&&v| v != 0).is_some_and(|v| v.is_positive())
}
