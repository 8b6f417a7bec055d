//! Fourier coefficients of the two theta lifts of the constant form:
//! weighted counts of rank-one Jordan elements, their comparison with
//! `E4 x E4 x E4`, and octonion-triple counts attached to cubes.

use crate::cubes::Cube;
use crate::error::{invalid, Error, Result};
use crate::fast::{self, V8};
use crate::jordan::JordanElement;
use crate::lattice::ShellStore;
use crate::octonion::basis::basis_data;
use crate::octonion::Octonion;
use crate::scalar::sigma3;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// `n`-th coefficient of the weight-4 Eisenstein series `E4 = 1 + 240 q + ...`.
pub fn e4_coeff(n: u64) -> u64 {
    if n == 0 {
        1
    } else {
        240 * sigma3(n)
    }
}

/// `240 * sigma3(c(phi))` for a positive semi-definite rank-one `phi`.
pub fn kim_coeff(phi: &JordanElement<i64>) -> Result<u64> {
    if !phi.is_psd_rank1()? {
        return Err(invalid("Kim's coefficient needs a positive semi-definite rank-one element"));
    }
    Ok(240 * sigma3(phi.content()?))
}

/// Runs `f` on a pool of `workers` threads.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(e) => {
            log::warn!("could not start a worker pool ({e}); running inline");
            f()
        }
    }
}

/// A rank-one element found by the search, still in the rotated frame where
/// the pivot diagonal entry sits in the `c` slot. Octonions are in doubled
/// Fano coordinates.
pub struct Rank1Hit {
    shift: usize,
    diag: [i64; 3],
    off: [V8; 3],
}

impl Rank1Hit {
    /// The element in the caller's frame.
    pub fn element(&self) -> JordanElement<i64> {
        let mut d = [0i64; 3];
        let mut o: [Octonion<i64>; 3] = std::array::from_fn(|_| Octonion::zero());
        for i in 0..3 {
            d[(self.shift + i) % 3] = self.diag[i];
            o[(self.shift + i) % 3] = fast::to_octonion(&self.off[i]);
        }
        let [alpha, beta, gamma] = o;
        JordanElement::new(d[0], d[1], d[2], alpha, beta, gamma)
    }

    /// Content: the largest divisor `d` of the diagonal gcd with every
    /// off-diagonal entry divisible by `d` in the order.
    pub fn content(&self) -> u64 {
        let g = self.diag.iter().fold(0i64, |g, v| g.gcd(v));
        if g == 1 {
            return 1;
        }
        let member = fast::membership();
        (1..=g)
            .rev()
            .filter(|d| g % d == 0)
            .find(|&d| {
                let d = d as i32;
                self.off.iter().all(|x| x.iter().all(|v| v % d == 0) && member.contains(&x.map(|v| v / d)))
            })
            .expect("d = 1 always divides") as u64
    }
}

/// Map-reduce over every integral positive semi-definite rank-one element
/// with diagonal `diag`.
///
/// The smallest nonzero diagonal entry is rotated into the `c` slot; `alpha`
/// and `beta` range over the shells of norm `bc` and `ca`, and `gamma` is
/// forced to be `conj(alpha beta) / c`. Every remaining entry of `A#` is then
/// checked exactly.
pub fn rank1_map_reduce<T, M, R>(
    diag: [u64; 3],
    store: &ShellStore,
    workers: usize,
    identity: T,
    map: M,
    reduce: R,
) -> Result<T>
where
    T: Clone + Send + Sync,
    M: Fn(&Rank1Hit) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    if diag == [0, 0, 0] {
        return Err(invalid("the diagonal (0, 0, 0) has no rank-one elements"));
    }
    let products = [diag[1] * diag[2], diag[2] * diag[0], diag[0] * diag[1]];
    if let Some(&p) = products.iter().find(|&&p| p > store.max_norm()) {
        return Err(Error::Resource(format!("diagonal {diag:?} needs the shell of norm {p}")));
    }
    let pivot = (0..3).filter(|&i| diag[i] > 0).min_by_key(|&i| (diag[i], i)).expect("nonzero diagonal");
    let shift = (pivot + 1) % 3;
    let d: [i64; 3] = std::array::from_fn(|i| diag[(shift + i) % 3] as i64);
    let (a, b, c) = (d[0], d[1], d[2]);

    let to_fast = |n: i64| -> Result<Vec<V8>> {
        Ok(store.get(n as u64)?.elements().iter().map(fast::from_octonion).collect())
    };
    let xs = to_fast(b * c)?;
    let ys = to_fast(c * a)?;
    let member = fast::membership();
    let (two_c, four_ab) = (2 * c as i32, 4 * a * b);

    let scan = |x: &V8| -> T {
        let mut acc = identity.clone();
        let lx = fast::left_matrix(x);
        'pairs: for y in &ys {
            let mut p = [0i32; 8];
            for k in 0..8 {
                p[k] = fast::apply_row(&lx[k], y);
                if p[k] % two_c != 0 {
                    continue 'pairs;
                }
            }
            let z = fast::conj(&p.map(|v| v / two_c));
            if fast::norm4(&z) != four_ab || !member.contains(&z) {
                continue;
            }
            let yz = fast::conj(&fast::mul(y, &z));
            let zx = fast::conj(&fast::mul(&z, x));
            let (ta, tb) = (2 * a as i32, 2 * b as i32);
            if (0..8).all(|i| yz[i] == ta * x[i] && zx[i] == tb * y[i]) {
                acc = reduce(acc, map(&Rank1Hit { shift, diag: d, off: [*x, *y, z] }));
            }
        }
        acc
    };
    let total = with_workers(workers, || {
        xs.par_iter().map(scan).reduce(|| identity.clone(), &reduce)
    });
    Ok(total)
}

/// All integral positive semi-definite rank-one elements with diagonal
/// `diag`, sorted.
pub fn enumerate_rank1_psd(diag: [u64; 3], store: &ShellStore, workers: usize) -> Result<Vec<JordanElement<i64>>> {
    let mut out = rank1_map_reduce(
        diag,
        store,
        workers,
        Vec::new(),
        |h| vec![h.element()],
        |mut l, mut r| {
            l.append(&mut r);
            l
        },
    )?;
    out.sort_by(|x, y| (x.a, x.b, x.c, &x.alpha, &x.beta, &x.gamma).cmp(&(y.a, y.b, y.c, &y.alpha, &y.beta, &y.gamma)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoResult {
    pub diag: [u64; 3],
    /// Number of rank-one elements with this diagonal.
    pub count: u64,
    pub rho: u128,
    pub expected: u128,
}

impl RhoResult {
    pub fn matches(&self) -> bool {
        self.rho == self.expected
    }
}

/// `rho(a) = 240 * sum over rank-one A >= 0 with diag(A) = a of sigma3(c(A))`,
/// with `rho(0, 0, 0) = 1`.
pub fn rho(diag: [u64; 3], store: &ShellStore, workers: usize) -> Result<RhoResult> {
    let expected = diag.iter().map(|&n| e4_coeff(n) as u128).product();
    if diag == [0, 0, 0] {
        return Ok(RhoResult { diag, count: 0, rho: 1, expected });
    }
    let (count, weight) = rank1_map_reduce(
        diag,
        store,
        workers,
        (0u64, 0u128),
        |h| (1, sigma3(h.content()) as u128),
        |l, r| (l.0 + r.0, l.1 + r.1),
    )?;
    Ok(RhoResult { diag, count, rho: 240 * weight, expected })
}

/// Diagonals with every entry and every pairwise product at most `max`.
pub fn e4cube_diagonals(max: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                if a * b <= max && b * c <= max && c * a <= max {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// `rho` against `e4(a1) e4(a2) e4(a3)` on [`e4cube_diagonals`].
pub fn verify_e4cube(max: u64, store: &ShellStore, workers: usize) -> Result<Vec<RhoResult>> {
    e4cube_diagonals(max)
        .into_iter()
        .map(|d| {
            log::info!("rho{d:?}");
            rho(d, store, workers)
        })
        .collect()
}

/// Number of triples `(alpha, beta, gamma)` in the order with
/// `N = (-e, -f, -g)` and `Tr(alpha beta gamma) = m`, for a normal cube.
pub fn cube_coefficient(cube: &Cube, store: &ShellStore, workers: usize) -> Result<u128> {
    let (e, f, g, m) = cube.normal_params().ok_or_else(|| invalid(format!("cube {cube} is not in normal form")))?;
    if cube.discriminant() == 0 {
        return Err(invalid(format!("cube {cube} is degenerate (discriminant 0)")));
    }
    let norms = [-e, -f, -g];
    if norms.iter().any(|&n| n < 0) {
        return Ok(0);
    }
    if let Some(&n) = norms.iter().find(|&&n| n as u64 > store.max_norm()) {
        return Err(Error::Resource(format!("cube {cube} needs the shell of norm {n}")));
    }
    let shell = |n: i64| -> Result<Vec<V8>> { Ok(store.get(n as u64)?.elements().iter().map(fast::from_octonion).collect()) };
    let (xs, ys, zs) = (shell(-e)?, shell(-f)?, shell(-g)?);

    // (2 alpha)(2 beta) = 4 alpha beta; Tr((alpha beta) gamma) is a quarter of
    // the real part of (4 alpha beta)(2 gamma).
    let target = 4 * m;
    with_workers(workers, || {
        let products: HashMap<V8, u64> = xs
            .par_iter()
            .fold(HashMap::new, |mut h, x| {
                for y in &ys {
                    *h.entry(fast::mul(x, y)).or_insert(0) += 1;
                }
                h
            })
            .reduce(HashMap::new, |mut l, r| {
                for (k, v) in r {
                    *l.entry(k).or_insert(0) += v;
                }
                l
            });
        let products: Vec<(V8, u64)> = products.into_iter().collect();
        let total = products
            .par_iter()
            .map(|(p, mult)| {
                let hits = zs
                    .iter()
                    .filter(|z| {
                        let re = p[0] as i64 * z[0] as i64 - (1..8).map(|i| p[i] as i64 * z[i] as i64).sum::<i64>();
                        re == target
                    })
                    .count() as u128;
                hits * *mult as u128
            })
            .sum();
        Ok(total)
    })
}

/// A lattice with three integer quadratic forms and a trilinear form whose
/// entries may be only partly known.
///
/// Forms are stored as even Gram matrices: `Q(x) = x^T G x / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QtStructure {
    pub rank: usize,
    pub grams: [Vec<Vec<i64>>; 3],
    /// `T(e_i, e_j, e_k)` at index `(i * rank + j) * rank + k`; `None` if unknown.
    pub tensor: Vec<Option<i64>>,
}

impl QtStructure {
    pub fn quadratic(&self, n: usize, x: &[i64]) -> i64 {
        let g = &self.grams[n];
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += x[i] * g[i][j] * x[j];
            }
        }
        s / 2
    }

    pub fn trilinear_entry(&self, i: usize, j: usize, k: usize) -> Option<i64> {
        self.tensor[(i * self.rank + j) * self.rank + k]
    }

    /// `T(x, y, z)`, or `None` if an unknown entry is needed.
    pub fn trilinear(&self, x: &[i64], y: &[i64], z: &[i64]) -> Option<i64> {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                for k in 0..self.rank {
                    let w = x[i] * y[j] * z[k];
                    if w != 0 {
                        s += w * self.trilinear_entry(i, j, k)?;
                    }
                }
            }
        }
        Some(s)
    }
}

/// The rank-2 structure of a normal cube on the basis `(lambda, mu)`:
/// `Q1 = -e x^2 + m x y + f g y^2` and its cyclic variants,
/// `T(lambda, lambda, lambda) = m`, `T(mu, mu, mu) = m^2 + 2efg`.
pub fn qt_from_cube(cube: &Cube) -> Result<QtStructure> {
    let (e, f, g, m) = cube.normal_params().ok_or_else(|| invalid(format!("cube {cube} is not in normal form")))?;
    if cube.discriminant() == 0 {
        return Err(invalid(format!("cube {cube} is degenerate (discriminant 0)")));
    }
    let gram = |a: i64, c: i64| vec![vec![2 * a, m], vec![m, 2 * c]];
    let mut tensor = vec![None; 8];
    tensor[0] = Some(m);
    tensor[7] = Some(m * m + 2 * e * f * g);
    Ok(QtStructure { rank: 2, grams: [gram(-e, f * g), gram(-f, e * g), gram(-g, e * f)], tensor })
}

/// `(Omega_c, N, N, N, Tr(x y z))` in the order basis.
pub fn coxeter_qt() -> QtStructure {
    let data = basis_data();
    let gram: Vec<Vec<i64>> = data.gram.iter().map(|r| r.to_vec()).collect();
    let mut tensor = Vec::with_capacity(512);
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let t = Octonion::<i64>::basis(i).trilinear(&Octonion::basis(j), &Octonion::basis(k));
                tensor.push(Some(t.expect("basis products are small")));
            }
        }
    }
    QtStructure { rank: 8, grams: [gram.clone(), gram.clone(), gram], tensor }
}
