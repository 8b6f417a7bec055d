//! Bhargava's 2x2x2 cubes under `SL2(Z)^3`.
//!
//! Entries are indexed `c[4i + 2j + k] = c_{ijk}`. The faces through
//! `c_000` are the `i = 0`, `j = 0` and `k = 0` slices, laid out cyclically:
//! `F1[k][j] = c_{0jk}`, `F2[i][k] = c_{i0k}`, `F3[j][i] = c_{ij0}`, with the
//! opposite faces `F'` the corresponding slices at index 1. Then
//! `Q_n(x, y) = -det(F_n x - F'_n y)`; for a normal cube with
//! `(e, f, g, m) = (c_011, c_101, c_110, c_111)` this gives
//! `Q1 = -e x^2 + m x y + f g y^2` and its cyclic variants.

mod forms;
mod ring;

pub use forms::{bqf_reduce, class_group, compose, reduced_forms, BinaryQuadraticForm, NarrowClass};
pub use ring::{quad_ring, QuadraticRing, RingKind};

use crate::error::{invalid, Error, Result};
use num_integer::Integer;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Cube {
    entries: [i64; 8],
}

type Mat2 = [[i64; 2]; 2];

impl Cube {
    pub const fn new(entries: [i64; 8]) -> Self {
        Self { entries }
    }

    /// Normal-form cube `c_000 = 1`, `(c_011, c_101, c_110, c_111) = (e, f, g, m)`.
    pub const fn normal(e: i64, f: i64, g: i64, m: i64) -> Self {
        Self::new([1, 0, 0, e, 0, f, g, m])
    }

    pub fn entries(&self) -> &[i64; 8] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.entries[4 * i + 2 * j + k]
    }

    pub fn is_normal(&self) -> bool {
        self.get(0, 0, 0) == 1 && self.get(1, 0, 0) == 0 && self.get(0, 1, 0) == 0 && self.get(0, 0, 1) == 0
    }

    /// `(e, f, g, m)` of a normal cube.
    pub fn normal_params(&self) -> Option<(i64, i64, i64, i64)> {
        self.is_normal().then(|| (self.get(0, 1, 1), self.get(1, 0, 1), self.get(1, 1, 0), self.get(1, 1, 1)))
    }

    fn faces(&self) -> [(Mat2, Mat2); 3] {
        let c = |i, j, k| self.get(i, j, k);
        let f1 = |s| [[c(s, 0, 0), c(s, 1, 0)], [c(s, 0, 1), c(s, 1, 1)]];
        let f2 = |s| [[c(0, s, 0), c(0, s, 1)], [c(1, s, 0), c(1, s, 1)]];
        let f3 = |s| [[c(0, 0, s), c(1, 0, s)], [c(0, 1, s), c(1, 1, s)]];
        [(f1(0), f1(1)), (f2(0), f2(1)), (f3(0), f3(1))]
    }

    /// The three forms `Q_n(x, y) = -det(F_n x - F'_n y)`.
    pub fn forms(&self) -> [BinaryQuadraticForm; 3] {
        self.faces().map(|(f, g)| {
            let det = |m: &Mat2| m[0][0] * m[1][1] - m[0][1] * m[1][0];
            let b = f[0][0] * g[1][1] + g[0][0] * f[1][1] - f[0][1] * g[1][0] - g[0][1] * f[1][0];
            BinaryQuadraticForm::new(-det(&f), b, -det(&g))
        })
    }

    /// The common discriminant of the three forms.
    pub fn discriminant(&self) -> i64 {
        let q = self.forms();
        debug_assert!(q[0].disc() == q[1].disc() && q[1].disc() == q[2].disc());
        q[0].disc()
    }

    /// All three attached forms are primitive.
    pub fn is_projective(&self) -> bool {
        let p = self.forms().iter().all(BinaryQuadraticForm::is_primitive);
        debug_assert!(!p || self.entries.iter().fold(0i64, |g, &v| g.gcd(&v)) == 1);
        p
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(i64::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Cube {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let vals: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| invalid(format!("bad cube entry '{t}'"))))
            .collect::<Result<_>>()?;
        let entries: [i64; 8] = vals.try_into().map_err(|_| invalid("a cube has exactly 8 entries"))?;
        Ok(Cube::new(entries))
    }
}

/// An element `(g1, g2, g3)` of `SL2(Z)^3`; `g_n` acts on the `n`-th index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct TripleSl2 {
    g: [Mat2; 3],
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

const I2: Mat2 = [[1, 0], [0, 1]];

impl TripleSl2 {
    pub fn new(g1: Mat2, g2: Mat2, g3: Mat2) -> Result<Self> {
        for g in [&g1, &g2, &g3] {
            if g[0][0] * g[1][1] - g[0][1] * g[1][0] != 1 {
                return Err(invalid(format!("{g:?} does not have determinant 1")));
            }
        }
        Ok(Self { g: [g1, g2, g3] })
    }

    pub fn identity() -> Self {
        Self { g: [I2; 3] }
    }

    fn single(slot: usize, m: Mat2) -> Self {
        let mut g = [I2; 3];
        g[slot] = m;
        Self { g }
    }

    pub fn components(&self) -> &[Mat2; 3] {
        &self.g
    }

    /// Componentwise product; `act(g.then_after(h), c) == act(g, act(h, c))`.
    pub fn compose(&self, h: &Self) -> Self {
        Self { g: std::array::from_fn(|n| mat_mul(&self.g[n], &h.g[n])) }
    }

    pub fn inverse(&self) -> Self {
        Self { g: self.g.map(|m| [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]) }
    }
}

/// `c'_{ijk} = sum g1[i][i'] g2[j][j'] g3[k][k'] c_{i'j'k'}`.
pub fn try_act(g: &TripleSl2, c: &Cube) -> Result<Cube> {
    let [g1, g2, g3] = &g.g;
    let mut out = [0i64; 8];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let mut s = 0i128;
                for a in 0..2 {
                    for b in 0..2 {
                        for d in 0..2 {
                            s += g1[i][a] as i128 * g2[j][b] as i128 * g3[k][d] as i128 * c.get(a, b, d) as i128;
                        }
                    }
                }
                out[4 * i + 2 * j + k] = i64::try_from(s).map_err(|_| Error::Overflow("cube action"))?;
            }
        }
    }
    Ok(Cube::new(out))
}

/// Panics if an entry leaves the `i64` range.
pub fn act(g: &TripleSl2, c: &Cube) -> Cube {
    try_act(g, c).expect("cube entries overflow")
}

const COPRIME_SEARCH_HEIGHT: i64 = 24;
const SMITH_BUDGET: usize = 256;

fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.x, -e.y, -e.gcd)
    } else {
        (e.x, e.y, e.gcd)
    }
}

/// An `SL2(Z)` matrix sending `(a, b)` to `(gcd, 0)` as a column vector.
fn clearing(a: i64, b: i64) -> Mat2 {
    if a != 0 && b % a == 0 {
        return [[1, 0], [-(b / a), 1]];
    }
    let (u, v, g) = xgcd(a, b);
    [[u, v], [-b / g, a / g]]
}

fn normal_size(c: &Cube) -> i128 {
    [c.get(1, 0, 1), c.get(1, 1, 0), c.get(1, 1, 1)].iter().map(|&v| (v as i128).abs()).sum()
}

/// A move `(g1, g2, g3)` keeping the cube normal and lowering `|f| + |g| + |m|`.
///
/// With `A = diag(1, e)` the pairs `g2 = [[1, t], [0, 1]]`, `g3 = [[1, 0], [-te, 1]]`
/// and `g2 = [[1, 0], [-te, 1]]`, `g3 = [[1, t], [0, 1]]` fix `A`; a shear in
/// the first slot then clears `c_100` again.
fn improving_move(c: &Cube) -> Result<Option<TripleSl2>> {
    let Some((e, f, g, m)) = c.normal_params() else {
        return Ok(None);
    };
    let mut ts = vec![1, -1];
    for den in [2 * e * g, 2 * e * f] {
        if den != 0 {
            let t = Integer::div_floor(&m, &den);
            ts.extend([t, t + 1, -t, -t - 1]);
        }
    }
    ts.retain(|&t| t != 0);
    ts.sort_unstable();
    ts.dedup();
    let size = normal_size(c);
    let mut best: Option<(i128, TripleSl2, Cube)> = None;
    for &t in &ts {
        let Some(te) = t.checked_mul(e) else { continue };
        for (g2, g3) in [([[1, t], [0, 1]], [[1, 0], [-te, 1]]), ([[1, 0], [-te, 1]], [[1, t], [0, 1]])] {
            let h = TripleSl2 { g: [I2, g2, g3] };
            let Ok(moved) = try_act(&h, c) else { continue };
            let s = TripleSl2 { g: [[[1, 0], [-moved.get(1, 0, 0), 1]], I2, I2] };
            let Ok(next) = try_act(&s, &moved) else { continue };
            if !next.is_normal() {
                return Err(Error::Internal(format!("normal-form move left {next} non-normal")));
            }
            let ns = normal_size(&next);
            if ns < size && best.as_ref().is_none_or(|(bs, _, _)| ns < *bs) {
                best = Some((ns, s.compose(&h), next));
            }
        }
    }
    Ok(best.map(|(_, h, _)| h))
}

/// `M` in `SL2(Z)` with `q(M (x, y))` reduced, for definite `q`.
fn reduction_transform(q: &BinaryQuadraticForm) -> Result<Mat2> {
    let sign = if q.a < 0 { -1 } else { 1 };
    let (mut a, mut b, mut c) = (sign * q.a as i128, sign * q.b as i128, sign * q.c as i128);
    let mut m = [[1i128, 0], [0, 1]];
    let mut steps = 0;
    loop {
        steps += 1;
        if steps > 10_000 {
            return Err(Error::ReductionBudget(steps));
        }
        if b > a || b <= -a {
            // x -> x + k y
            let k = Integer::div_floor(&(a - b), &(2 * a));
            c += k * b + k * k * a;
            b += 2 * a * k;
            m = [[m[0][0], m[0][0] * k + m[0][1]], [m[1][0], m[1][0] * k + m[1][1]]];
        }
        if a > c {
            // (x, y) -> (-y, x)
            (a, b, c) = (c, -b, a);
            m = [[m[0][1], -m[0][0]], [m[1][1], -m[1][0]]];
            continue;
        }
        break;
    }
    let out = m.map(|r| r.map(i64::try_from));
    match out {
        [[Ok(a), Ok(b)], [Ok(c), Ok(d)]] => Ok([[a, b], [c, d]]),
        _ => Err(Error::Overflow("form reduction")),
    }
}

fn content2(m: &Mat2) -> i64 {
    m[0][0].gcd(&m[0][1]).gcd(&m[1][0]).gcd(&m[1][1])
}

struct Reducer {
    cube: Cube,
    witness: TripleSl2,
}

impl Reducer {
    fn apply(&mut self, h: TripleSl2) -> Result<()> {
        self.cube = try_act(&h, &self.cube)?;
        self.witness = h.compose(&self.witness);
        Ok(())
    }

    /// `F1` seen as `A[j][k] = c_{0jk}`.
    fn face(&self, i: usize) -> Mat2 {
        [[self.cube.get(i, 0, 0), self.cube.get(i, 0, 1)], [self.cube.get(i, 1, 0), self.cube.get(i, 1, 1)]]
    }
}

/// Moves a projective nondegenerate cube into normal form.
///
/// Returns the normal cube and a witness `g` with `act(g, c)` equal to it.
/// The reduction picks a primitive member `pA + qB` of the pencil spanned by
/// the two `i`-slices, brings it to `diag(1, *)` by Smith reduction in the
/// `j` and `k` directions, then clears `c_100` by a shear.
pub fn normalize(c: &Cube) -> Result<(Cube, TripleSl2)> {
    if !c.is_projective() {
        return Err(invalid(format!("cube {c} is not projective")));
    }
    if c.discriminant() == 0 {
        return Err(invalid(format!("cube {c} is degenerate (discriminant 0)")));
    }
    let mut r = Reducer { cube: *c, witness: TripleSl2::identity() };

    // 1. bring Q1 to reduced shape, then take the primitive member of the
    //    pencil p*A + q*B with the smallest determinant
    if c.discriminant() < 0 {
        let m = reduction_transform(&r.cube.forms()[0])?;
        r.apply(TripleSl2::single(0, [[m[0][0], -m[1][0]], [-m[0][1], m[1][1]]]))?;
    }
    let (a, b) = (r.face(0), r.face(1));
    let mut best: Option<(i128, i64, i64)> = None;
    for h in 1..=COPRIME_SEARCH_HEIGHT {
        let ring = (-h..=h).flat_map(|p| (-h..=h).map(move |q| (p, q)));
        for (p, q) in std::iter::once((1, 0)).filter(|_| h == 1).chain(ring) {
            if p.abs().max(q.abs()) != h || p.gcd(&q) != 1 {
                continue;
            }
            let m: Mat2 = std::array::from_fn(|j| std::array::from_fn(|k| p * a[j][k] + q * b[j][k]));
            if content2(&m) != 1 {
                continue;
            }
            let d = (m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128).abs();
            if best.is_none_or(|(bd, _, _)| d < bd) {
                best = Some((d, p, q));
            }
        }
        if best.is_some_and(|(d, _, _)| d <= 1) {
            break;
        }
    }
    let (_, p, q) = best.ok_or(Error::ReductionBudget(COPRIME_SEARCH_HEIGHT as usize))?;
    if (p, q) != (1, 0) {
        let (s, t, _) = xgcd(p, q);
        // [[p, q], [-t, s]] has determinant ps + qt = 1
        r.apply(TripleSl2::single(0, [[p, q], [-t, s]]))?;
    }

    // 2. Smith reduction of the i = 0 face with SL2 row (j) and column (k) moves
    let mut steps = 0;
    loop {
        steps += 1;
        if steps > SMITH_BUDGET {
            return Err(Error::ReductionBudget(steps));
        }
        let m = r.face(0);
        if m[0][1] != 0 {
            r.apply(TripleSl2::single(2, clearing(m[0][0], m[0][1])))?;
        } else if m[1][0] != 0 {
            r.apply(TripleSl2::single(1, clearing(m[0][0], m[1][0])))?;
        } else if m[0][0].abs() != 1 {
            r.apply(TripleSl2::single(1, [[1, 1], [0, 1]]))?;
        } else {
            if m[0][0] == -1 {
                r.apply(TripleSl2::single(1, [[-1, 0], [0, -1]]))?;
            }
            break;
        }
    }

    // 3. clear c_100 with a shear in the i direction
    let b00 = r.cube.get(1, 0, 0);
    if b00 != 0 {
        r.apply(TripleSl2::single(0, [[1, 0], [-b00, 1]]))?;
    }

    // 4. shrink (f, g, m) with moves that fix the i = 0 face
    let mut steps = 0;
    while let Some(h) = improving_move(&r.cube)? {
        steps += 1;
        if steps > SMITH_BUDGET {
            return Err(Error::ReductionBudget(steps));
        }
        r.apply(h)?;
    }

    if !r.cube.is_normal() || try_act(&r.witness, c)? != r.cube {
        return Err(Error::Internal(format!("normalization of {c} produced an invalid certificate")));
    }
    Ok((r.cube, r.witness))
}

/// Discriminant and the three narrow classes of a projective cube with `D < 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct OrbitInvariants {
    pub disc: i64,
    pub classes: [NarrowClass; 3],
}

impl OrbitInvariants {
    /// The product of the three narrow classes.
    pub fn class_product(&self) -> Result<NarrowClass> {
        let [p, q, r] = self.classes;
        p.compose(&q)?.compose(&r)
    }
}

/// Discriminant and narrow classes of a projective cube with `D < 0`;
/// fails with an internal error if their product is not principal.
pub fn orbit_invariants(c: &Cube) -> Result<OrbitInvariants> {
    if !c.is_projective() {
        return Err(invalid(format!("cube {c} is not projective")));
    }
    let disc = c.discriminant();
    if disc >= 0 {
        return Err(invalid(format!("cube {c} has discriminant {disc} >= 0")));
    }
    let q = c.forms();
    let inv = OrbitInvariants { disc, classes: [bqf_reduce(&q[0])?, bqf_reduce(&q[1])?, bqf_reduce(&q[2])?] };
    let prod = inv.class_product()?;
    if !prod.is_principal() {
        return Err(Error::Internal(format!("class product {prod:?} of cube {c} is not principal")));
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(a, b, c)
    }

    #[test]
    fn normal_form_shapes() {
        for (e, fv, g, m) in [(-1, -1, -1, 1), (2, -3, 5, 7), (0, 0, 0, 1), (-4, 1, 3, -2)] {
            let c = Cube::normal(e, fv, g, m);
            assert_eq!(c.forms(), [f(-e, m, fv * g), f(-fv, m, e * g), f(-g, m, e * fv)]);
            assert_eq!(c.discriminant(), m * m + 4 * e * fv * g);
        }
        assert_eq!(Cube::normal(0, 0, 0, 1).forms(), [f(0, 1, 0); 3]);
        assert_eq!(Cube::normal(-1, -1, -1, 1).forms(), [f(1, 1, 1); 3]);
    }

    #[test]
    fn parse_and_print() {
        let c: Cube = "1,0,0,-1,0,-1,-1,1".parse().unwrap();
        assert_eq!(c, Cube::normal(-1, -1, -1, 1));
        assert_eq!(c.to_string(), "1,0,0,-1,0,-1,-1,1");
        assert_eq!(c.discriminant(), -3);
        assert!("1,2,3".parse::<Cube>().is_err());
        assert!("1,2,3,4,5,6,7,x".parse::<Cube>().is_err());
    }

    #[test]
    fn projectivity() {
        assert!(Cube::normal(-1, -1, -1, 1).is_projective());
        assert!(!Cube::new([2, 0, 4, 2, 6, 2, 0, 8]).is_projective());
        assert!(!Cube::new([0; 8]).is_projective());
    }

    #[test]
    fn normalize_fixes_normal_cubes() {
        let c = Cube::normal(-1, -1, -1, 1);
        assert_eq!(normalize(&c).unwrap(), (c, TripleSl2::identity()));
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert!(matches!(normalize(&Cube::new([2, 0, 4, 2, 6, 2, 0, 8])), Err(Error::InvalidInput(_))));
        // projective but degenerate: Q = xy-type forms with disc 1? use disc 0
        let degenerate = Cube::normal(0, 0, 0, 0);
        assert!(normalize(&degenerate).is_err());
    }

    #[test]
    fn triple_rejects_non_unimodular() {
        assert!(TripleSl2::new([[2, 0], [0, 1]], I2, I2).is_err());
    }

    #[test]
    fn orbit_invariants_of_the_minus_three_cube() {
        let inv = orbit_invariants(&Cube::normal(-1, -1, -1, 1)).unwrap();
        assert_eq!(inv.disc, -3);
        for c in inv.classes {
            assert_eq!(c.form, f(1, 1, 1));
        }
        assert!(orbit_invariants(&Cube::normal(1, 1, 1, 1)).is_err());
    }
}
