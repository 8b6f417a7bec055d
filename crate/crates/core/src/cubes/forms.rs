//! Binary quadratic forms of negative discriminant: reduction, Dirichlet
//! composition and the narrow class group.

use crate::error::{invalid, Result};
use num_integer::Integer;
use serde::Serialize;
use std::fmt;

/// `a x^2 + b x y + c y^2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct BinaryQuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl BinaryQuadraticForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn content(&self) -> i64 {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// The principal form of discriminant `d < 0`.
    pub fn principal(d: i64) -> Self {
        let b = d.rem_euclid(2);
        Self::new(1, b, (b * b - d) / 4)
    }

    /// Inverse class representative `(a, -b, c)`.
    pub fn inverse(&self) -> Self {
        Self::new(self.a, -self.b, self.c)
    }

    /// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        a > 0 && b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
    }
}

/// Reduced representative of a positive-definite form.
pub(crate) fn reduce_positive(q: BinaryQuadraticForm) -> BinaryQuadraticForm {
    let d = q.disc() as i128;
    let (mut a, mut b, mut c) = (q.a as i128, q.b as i128, q.c as i128);
    loop {
        if b > a || b <= -a {
            let k = Integer::div_floor(&(a - b), &(2 * a));
            b += 2 * a * k;
            c = (b * b - d) / (4 * a);
        }
        if a > c {
            (a, b, c) = (c, -b, a);
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        break;
    }
    BinaryQuadraticForm::new(a as i64, b as i64, c as i64)
}

/// A narrow class for `D < 0`: an orientation sign and a reduced
/// positive-definite form standing for the underlying ideal class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct NarrowClass {
    pub sign: i8,
    pub form: BinaryQuadraticForm,
}

impl NarrowClass {
    pub fn is_principal(&self) -> bool {
        self.sign == 1 && self.form.a == 1
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self { sign: self.sign * other.sign, form: compose(&self.form, &other.form)? })
    }
}

/// Classifies a definite primitive form of negative discriminant.
///
/// A negative-definite `(a, b, c)` is sent to the ideal class of
/// `(-a, b, -c)` with sign `-1`: the lattice `[a, (-b + sqrt D)/2]` with its
/// orientation reversed. This is the convention under which the three forms
/// of a projective cube multiply to the principal class.
pub fn bqf_reduce(q: &BinaryQuadraticForm) -> Result<NarrowClass> {
    if q.disc() >= 0 {
        return Err(invalid(format!("form {q} is not definite (discriminant {})", q.disc())));
    }
    if !q.is_primitive() {
        return Err(invalid(format!("form {q} is not primitive")));
    }
    Ok(if q.a > 0 {
        NarrowClass { sign: 1, form: reduce_positive(*q) }
    } else {
        NarrowClass { sign: -1, form: reduce_positive(BinaryQuadraticForm::new(-q.a, q.b, -q.c)) }
    })
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.x, -e.y, -e.gcd)
    } else {
        (e.x, e.y, e.gcd)
    }
}

/// Reduced representative of the Dirichlet composite of two primitive
/// positive-definite forms of the same negative discriminant.
pub fn compose(q1: &BinaryQuadraticForm, q2: &BinaryQuadraticForm) -> Result<BinaryQuadraticForm> {
    let d = q1.disc();
    if d != q2.disc() {
        return Err(invalid(format!("discriminants differ: {} vs {}", d, q2.disc())));
    }
    if d >= 0 || q1.a <= 0 || q2.a <= 0 || !q1.is_primitive() || !q2.is_primitive() {
        return Err(invalid("composition needs primitive positive-definite forms"));
    }
    let (a1, b1, a2, b2, d) = (q1.a as i128, q1.b as i128, q2.a as i128, q2.b as i128, d as i128);
    let s = (b1 + b2) / 2;
    let (u1, v1, g1) = xgcd(a1, a2);
    let (u2, w, g) = xgcd(g1, s);
    let (u, v) = (u2 * u1, u2 * v1);
    let a3 = a1 * a2 / (g * g);
    let big_b = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + d) / 2) / g;
    let b3 = big_b.rem_euclid(2 * a3);
    let c3 = (b3 * b3 - d) / (4 * a3);
    Ok(reduce_positive(BinaryQuadraticForm::new(a3 as i64, b3 as i64, c3 as i64)))
}

pub(crate) fn check_discriminant(d: i64) -> Result<()> {
    if d.rem_euclid(4) > 1 {
        return Err(invalid(format!("{d} is not a discriminant (must be 0 or 1 mod 4)")));
    }
    Ok(())
}

/// Reduced primitive positive-definite forms of discriminant `d < 0`.
pub fn reduced_forms(d: i64) -> Result<Vec<BinaryQuadraticForm>> {
    check_discriminant(d)?;
    if d >= 0 {
        return Err(invalid(format!("discriminant {d} is not negative")));
    }
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 || (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let q = BinaryQuadraticForm::new(a, b, (b * b - d) / (4 * a));
            if q.is_reduced() && q.is_primitive() {
                out.push(q);
            }
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

/// Both orientations of every class: `|NCl(D)| = 2 h(D)`.
pub fn class_group(d: i64) -> Result<Vec<NarrowClass>> {
    let forms = reduced_forms(d)?;
    let mut out: Vec<NarrowClass> = [1i8, -1]
        .iter()
        .flat_map(|&sign| forms.iter().map(move |&form| NarrowClass { sign, form }))
        .collect();
    out.sort();
    Ok(out)
}
