//! The fixed multiplication table and the shipped basis of Coxeter's order.
//!
//! Fano coordinates are `[re, e0, e1, ..., e6]`; `e_i e_j = e_k` for every
//! oriented line `(i, j, k)` in [`FANO_LINES`], and `e_i^2 = -1`.
//!
//! Order coordinates are integer coefficients in [`ORDER_BASIS`], whose rows
//! are *doubled* Fano coordinates of the basis elements (so half-integers
//! become integers). The first basis element is `1`.

use crate::linalg;
use std::sync::OnceLock;

/// Oriented lines of the Fano plane: `(i, i+1, i+3) mod 7`.
pub const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 3],
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 0],
    [5, 6, 1],
    [6, 0, 2],
];

/// Doubled Fano coordinates of the Z-basis of the order.
pub const ORDER_BASIS: [[i64; 8]; 8] = [
    [2, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 1, 1, 0],
    [1, 0, 1, 0, 0, 0, 1, 1],
    [1, 0, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 2, 0, 0],
    [0, 0, 0, 0, 0, 0, 2, 0],
    [0, 0, 0, 0, 0, 0, 0, 2],
];

/// Version tag of the basis; written into shell cache headers.
pub const BASIS_TAG: &str = "coxeter-fano013-v1";

/// `STRUCTURE[i][j][k]`: coefficient of `b_k` in `b_i * b_j`.
pub(crate) const STRUCTURE: [[[i8; 8]; 8]; 8] = [
    [
        [1, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
    ],
    [
        [0, 1, 0, 0, 0, 0, 0, 0],
        [-1, 1, 0, 0, 0, 0, 0, 0],
        [-1, 1, 1, 0, 1, -1, -1, -1],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
        [0, -1, 0, 0, 0, 1, 1, 0],
        [-1, 1, 0, 0, 0, -1, 0, 0],
        [0, 0, 1, -1, 1, 0, -1, 0],
    ],
    [
        [0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, -1, 1, 1, 1],
        [-1, 0, 1, 0, 0, 0, 0, 0],
        [0, -1, 1, 0, 0, 1, 0, 0],
        [0, 0, 0, -1, 0, 1, 0, 1],
        [1, -1, 0, -1, -1, 2, 1, 1],
        [0, 0, -1, 0, 0, 0, 1, 1],
        [-1, 0, 1, 0, 0, 0, -1, 0],
    ],
    [
        [0, 0, 0, 1, 0, 0, 0, 0],
        [-1, 1, 0, 1, -1, 0, 0, 0],
        [-1, 1, 0, 1, 0, -1, 0, 0],
        [-1, 0, 0, 1, 0, 0, 0, 0],
        [-1, 1, 0, 0, 0, 0, 0, 0],
        [-1, 0, 1, 0, -1, 1, 0, 0],
        [0, 1, -1, 0, -1, 0, 1, 1],
        [-1, 1, 0, 0, 1, -1, -1, 0],
    ],
    [
        [0, 0, 0, 0, 1, 0, 0, 0],
        [-1, 0, 0, 1, 0, 0, 0, 0],
        [-1, 0, 0, 1, 1, -1, 0, -1],
        [0, -1, 0, 0, 1, 0, 0, 0],
        [-1, 0, 0, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, -1, 1, 1, 1],
        [-1, 1, -1, 1, 0, -1, 0, 0],
        [-1, 0, 1, 0, 1, -1, -1, -1],
    ],
    [
        [0, 0, 0, 0, 0, 1, 0, 0],
        [-1, 1, 0, 0, 0, 0, -1, 0],
        [-1, 1, 0, 1, 1, -1, -1, -1],
        [0, 0, -1, 0, 1, 0, 0, 0],
        [-1, 1, 0, 0, 1, -1, -1, -1],
        [-1, 0, 0, 0, 0, 0, 0, 0],
        [-1, 2, 0, 0, 0, -1, -1, 0],
        [0, 0, 0, 0, 2, -1, -1, -1],
    ],
    [
        [0, 0, 0, 0, 0, 0, 1, 0],
        [0, -1, 0, 0, 0, 1, 1, 0],
        [-1, 0, 1, 0, 0, 0, 0, -1],
        [0, -1, 1, 0, 1, 0, 0, -1],
        [0, -1, 1, -1, 0, 1, 0, 0],
        [1, -2, 0, 0, 0, 1, 1, 0],
        [-1, 0, 0, 0, 0, 0, 0, 0],
        [-1, 0, 2, 0, 0, 0, -1, -1],
    ],
    [
        [0, 0, 0, 0, 0, 0, 0, 1],
        [0, 0, -1, 1, -1, 0, 1, 1],
        [0, 0, -1, 0, 0, 0, 1, 1],
        [0, -1, 0, 0, -1, 1, 1, 1],
        [0, 0, -1, 0, -1, 1, 1, 1],
        [0, 0, 0, 0, -2, 1, 1, 1],
        [1, 0, -2, 0, 0, 0, 1, 1],
        [-1, 0, 0, 0, 0, 0, 0, 0],
    ],
];

/// Product of Fano units as `(sign, index)` over all eight Fano coordinates.
pub const FANO_TABLE: [[(i8, u8); 8]; 8] = build_fano_table();

const fn build_fano_table() -> [[(i8, u8); 8]; 8] {
    let mut t = [[(0i8, 0u8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        t[0][i] = (1, i as u8);
        t[i][0] = (1, i as u8);
        i += 1;
    }
    let mut i = 1;
    while i < 8 {
        t[i][i] = (-1, 0);
        i += 1;
    }
    let mut l = 0;
    while l < 7 {
        let [a, b, c] = FANO_LINES[l];
        let cyc = [[a, b, c], [b, c, a], [c, a, b]];
        let mut r = 0;
        while r < 3 {
            let [x, y, z] = cyc[r];
            t[x + 1][y + 1] = (1, (z + 1) as u8);
            t[y + 1][x + 1] = (-1, (z + 1) as u8);
            r += 1;
        }
        l += 1;
    }
    t
}

/// Data derived once from [`ORDER_BASIS`] and [`STRUCTURE`].
pub(crate) struct BasisData {
    /// `gram[i][j] = <b_i, b_j> = Tr(conj(b_i) b_j)`.
    pub gram: [[i64; 8]; 8],
    /// `Tr(b_i)`.
    pub trace: [i64; 8],
    /// Nonzero structure constants grouped by `(i, j)`.
    pub products: Vec<Vec<(usize, i64)>>,
    /// `16 * M^{-1}` where `M` has the doubled basis vectors as columns.
    pub fano_to_order: [[i64; 8]; 8],
    pub fano_to_order_den: i64,
}

pub(crate) fn basis_data() -> &'static BasisData {
    static DATA: OnceLock<BasisData> = OnceLock::new();
    DATA.get_or_init(|| {
        let gram = gram_of(&ORDER_BASIS);
        let trace = std::array::from_fn(|i| ORDER_BASIS[i][0]);
        let mut products = vec![Vec::new(); 64];
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let t = STRUCTURE[i][j][k] as i64;
                    if t != 0 {
                        products[i * 8 + j].push((k, t));
                    }
                }
            }
        }
        let cols: [[i64; 8]; 8] = std::array::from_fn(|r| std::array::from_fn(|c| ORDER_BASIS[c][r]));
        let (adj, den) = linalg::integer_inverse(&cols).expect("shipped basis is nonsingular");
        BasisData { gram, trace, products, fano_to_order: adj, fano_to_order_den: den }
    })
}

/// Gram matrix `<b_i, b_j>` of a basis given in doubled Fano coordinates.
///
/// In Fano coordinates `<x, y> = 2 * sum x_i y_i`, so with doubled entries the
/// pairing is `sum X_i Y_i / 2`; an odd sum means the pairing is not integral
/// and is reported by [`gram_of_checked`].
pub(crate) fn gram_of(basis: &[[i64; 8]; 8]) -> [[i64; 8]; 8] {
    gram_of_checked(basis).expect("integral Gram matrix")
}

pub(crate) fn gram_of_checked(basis: &[[i64; 8]; 8]) -> Option<[[i64; 8]; 8]> {
    let mut g = [[0i64; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let s: i64 = (0..8).map(|k| basis[i][k] * basis[j][k]).sum();
            if s % 2 != 0 {
                return None;
            }
            g[i][j] = s / 2;
        }
    }
    Some(g)
}

/// Exact product of two vectors in Fano coordinates.
pub(crate) fn fano_mul<T: crate::scalar::Ring>(x: &[T; 8], y: &[T; 8]) -> Option<[T; 8]> {
    let mut out: [T; 8] = std::array::from_fn(|_| T::zero());
    for i in 0..8 {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..8 {
            if y[j].is_zero() {
                continue;
            }
            let (s, k) = FANO_TABLE[i][j];
            let p = x[i].checked_mul(&y[j])?;
            let k = k as usize;
            out[k] = if s > 0 { out[k].checked_add(&p)? } else { out[k].checked_sub(&p)? };
        }
    }
    Some(out)
}
