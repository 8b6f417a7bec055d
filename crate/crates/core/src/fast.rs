//! Hot-loop kernel on doubled Fano coordinates `X = 2 * [re, e0..e6]`.
//!
//! In these coordinates the order is `{X in Z^8 : X mod 2 in C}` for a
//! 16-word binary code `C`, `N(x) = |X|^2 / 4` and `(2x)(2y) = 4xy`.

use crate::octonion::basis::{FANO_TABLE, ORDER_BASIS};
use crate::octonion::Octonion;

pub(crate) type V8 = [i32; 8];

#[inline(always)]
pub(crate) fn mul(x: &V8, y: &V8) -> V8 {
    let mut out = [0i32; 8];
    for i in 0..8 {
        for j in 0..8 {
            let (s, k) = FANO_TABLE[i][j];
            out[k as usize] += s as i32 * x[i] * y[j];
        }
    }
    out
}

/// Matrix of `y -> x y`, row `k` giving output coordinate `k`.
pub(crate) fn left_matrix(x: &V8) -> [V8; 8] {
    let mut m = [[0i32; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let (s, k) = FANO_TABLE[i][j];
            m[k as usize][j] += s as i32 * x[i];
        }
    }
    m
}

#[inline(always)]
pub(crate) fn apply_row(row: &V8, y: &V8) -> i32 {
    let mut s = 0;
    for j in 0..8 {
        s += row[j] * y[j];
    }
    s
}

#[inline(always)]
pub(crate) fn conj(x: &V8) -> V8 {
    let mut out = x.map(|v| -v);
    out[0] = x[0];
    out
}

#[inline(always)]
pub(crate) fn norm4(x: &V8) -> i64 {
    x.iter().map(|&v| v as i64 * v as i64).sum()
}

fn code_table() -> [bool; 256] {
    let gens: Vec<u8> = ORDER_BASIS
        .iter()
        .map(|b| b.iter().enumerate().fold(0u8, |m, (i, &v)| m | (((v & 1) as u8) << i)))
        .collect();
    let mut t = [false; 256];
    for sel in 0u32..256 {
        let w = (0..8).filter(|&i| sel >> i & 1 == 1).fold(0u8, |m, i| m ^ gens[i]);
        t[w as usize] = true;
    }
    t
}

pub(crate) struct Membership {
    code: [bool; 256],
}

pub(crate) fn membership() -> &'static Membership {
    static M: std::sync::OnceLock<Membership> = std::sync::OnceLock::new();
    M.get_or_init(|| Membership { code: code_table() })
}

impl Membership {
    #[inline(always)]
    pub(crate) fn contains(&self, x: &V8) -> bool {
        let w = x.iter().enumerate().fold(0usize, |m, (i, &v)| m | (((v & 1) as usize) << i));
        self.code[w]
    }
}

pub(crate) fn from_octonion(x: &Octonion<i64>) -> V8 {
    x.to_fano_doubled().map(|v| i32::try_from(v).expect("doubled coordinate fits in i32"))
}

pub(crate) fn to_octonion(x: &V8) -> Octonion<i64> {
    let f = x.map(i64::from);
    Octonion::new(crate::octonion::fano_doubled_to_order(&f).expect("vector lies in the order"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_shell;
    use rand::{Rng, SeedableRng};

    #[test]
    fn code_has_sixteen_words() {
        assert_eq!(code_table().iter().filter(|&&b| b).count(), 16);
    }

    #[test]
    fn membership_matches_order_coordinates() {
        let m = membership();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20_000 {
            let x: V8 = std::array::from_fn(|_| rng.gen_range(-3..=3));
            let exact = crate::octonion::fano_doubled_to_order(&x.map(i64::from)).is_some();
            assert_eq!(m.contains(&x), exact, "{x:?}");
        }
    }

    #[test]
    fn agrees_with_generic_arithmetic() {
        let s = enumerate_shell(2).unwrap();
        let e = s.elements();
        for (i, x) in e.iter().enumerate().step_by(37) {
            let y = &e[(i * 7 + 3) % e.len()];
            let xy = x.checked_mul(y).unwrap();
            let fx = from_octonion(x);
            let fy = from_octonion(y);
            assert_eq!(norm4(&fx), 8);
            let p = mul(&fx, &fy);
            assert!(p.iter().all(|v| v % 2 == 0));
            assert_eq!(to_octonion(&p.map(|v| v / 2)), xy);
            assert_eq!(to_octonion(&conj(&fx)), x.conj());
            let l = left_matrix(&fx);
            assert_eq!(std::array::from_fn::<i32, 8, _>(|k| apply_row(&l[k], &fy)), p);
        }
    }
}
