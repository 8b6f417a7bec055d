//! Shells of the E8 lattice `(Omega_c, 2N)`: enumeration and an on-disk cache.

use crate::error::{Error, Result};
use crate::linalg;
use crate::octonion::basis::{basis_data, BASIS_TAG};
use crate::octonion::Octonion;
use crate::scalar::Rational;
use num_traits::ToPrimitive;
use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

pub const DEFAULT_MAX_SHELL_NORM: u64 = 16;

/// All elements of the order with norm `norm`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shell {
    norm: u64,
    elements: Vec<Octonion<i64>>,
}

impl Shell {
    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn count(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Octonion<i64>] {
        &self.elements
    }
}

/// Integer points `x` with `x^T G x / 2 == n` for a positive-definite even
/// Gram matrix `G`, in lexicographic order.
///
/// Bounds come from an exact rational LDL^T of `G/2`, evaluated in floating
/// point with slack for pruning only; every candidate is accepted or rejected
/// by the exact integer norm.
pub(crate) fn enumerate_gram(gram: &[[i64; 8]; 8], n: u64) -> Vec<[i64; 8]> {
    let half: Vec<Vec<Rational>> = gram
        .iter()
        .map(|r| r.iter().map(|&v| Rational::new(v.into(), 2.into())).collect())
        .collect();
    let (mu, d) = linalg::ldl(&half).expect("Gram matrix must be positive definite");
    let mu: Vec<Vec<f64>> = mu.iter().map(|r| r.iter().map(|v| v.to_f64().unwrap()).collect()).collect();
    let d: Vec<f64> = d.iter().map(|v| v.to_f64().unwrap()).collect();

    let mut out = Vec::new();
    let mut x = [0i64; 8];
    search(gram, &mu, &d, n, 7, 0.0, &mut x, &mut out);
    out.sort_unstable();
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    gram: &[[i64; 8]; 8],
    mu: &[Vec<f64>],
    d: &[f64],
    n: u64,
    level: usize,
    partial: f64,
    x: &mut [i64; 8],
    out: &mut Vec<[i64; 8]>,
) {
    const SLACK: f64 = 1e-6;
    let rem = n as f64 - partial;
    if rem < -SLACK {
        return;
    }
    let center: f64 = -(level + 1..8).map(|j| mu[level][j] * x[j] as f64).sum::<f64>();
    let radius = (rem.max(0.0) / d[level]).sqrt() + SLACK;
    let lo = (center - radius).ceil() as i64;
    let hi = (center + radius).floor() as i64;
    for v in lo..=hi {
        x[level] = v;
        let t = v as f64 - center;
        let p = partial + d[level] * t * t;
        if level == 0 {
            if exact_norm(gram, x) == n as i64 {
                out.push(*x);
            }
        } else {
            search(gram, mu, d, n, level - 1, p, x, out);
        }
    }
    x[level] = 0;
}

fn exact_norm(gram: &[[i64; 8]; 8], x: &[i64; 8]) -> i64 {
    let mut s = 0i64;
    for i in 0..8 {
        for j in 0..8 {
            s += gram[i][j] * x[i] * x[j];
        }
    }
    s / 2
}

/// Complete shell of norm `n` with the default bound.
pub fn enumerate_shell(n: u64) -> Result<Shell> {
    enumerate_shell_bounded(n, DEFAULT_MAX_SHELL_NORM)
}

pub fn enumerate_shell_bounded(n: u64, max_norm: u64) -> Result<Shell> {
    if n > max_norm {
        return Err(Error::Resource(format!("shell norm {n} exceeds the configured bound {max_norm}")));
    }
    let elements = enumerate_gram(&basis_data().gram, n).into_iter().map(Octonion::new).collect();
    Ok(Shell { norm: n, elements })
}

/// Outcome of a cache lookup.
#[derive(Debug)]
pub enum CacheLoad {
    Hit(Shell),
    Miss(String),
}

pub fn cache_path(dir: &Path, n: u64) -> PathBuf {
    dir.join(format!("shell-{n}.txt"))
}

fn header(n: u64, count: usize) -> String {
    format!("D4MOD-SHELL v1 basis={BASIS_TAG} norm={n} count={count}")
}

/// Writes the shell atomically (temporary file, then rename).
pub fn shell_cache_store(dir: &Path, shell: &Shell) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, shell.norm);
    let tmp = dir.join(format!(".shell-{}.{}.tmp", shell.norm, std::process::id()));
    {
        let mut w = io::BufWriter::new(fs::File::create(&tmp)?);
        writeln!(w, "{}", header(shell.norm, shell.count()))?;
        for e in &shell.elements {
            let c = e.coords();
            writeln!(w, "{} {} {} {} {} {} {} {}", c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7])?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Loads a cached shell. Any defect is a miss, with a warning logged.
pub fn shell_cache_load(dir: &Path, n: u64) -> CacheLoad {
    let path = cache_path(dir, n);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return CacheLoad::Miss(format!("{}: {e}", path.display())),
    };
    match parse_cache(&text, n) {
        Ok(shell) => CacheLoad::Hit(shell),
        Err(reason) => {
            log::warn!("ignoring shell cache {}: {reason}", path.display());
            CacheLoad::Miss(reason)
        }
    }
}

fn parse_cache(text: &str, n: u64) -> std::result::Result<Shell, String> {
    let mut lines = text.lines();
    let head = lines.next().ok_or("empty file")?;
    let fields: Vec<&str> = head.split(' ').collect();
    if fields.len() != 5 || fields[0] != "D4MOD-SHELL" || fields[1] != "v1" {
        return Err(format!("corrupt header '{head}'"));
    }
    let value = |field: &str, key: &str| field.strip_prefix(key).map(str::to_owned).ok_or(format!("corrupt header '{head}'"));
    let tag = value(fields[2], "basis=")?;
    if tag != BASIS_TAG {
        return Err(format!("basis tag '{tag}' does not match '{BASIS_TAG}'"));
    }
    let norm: u64 = value(fields[3], "norm=")?.parse().map_err(|_| "bad norm".to_string())?;
    let count: usize = value(fields[4], "count=")?.parse().map_err(|_| "bad count".to_string())?;
    if norm != n {
        return Err(format!("file holds norm {norm}, expected {n}"));
    }
    let mut elements = Vec::with_capacity(count);
    for line in lines {
        let mut c = [0i64; 8];
        let mut it = line.split(' ');
        for v in c.iter_mut() {
            *v = it.next().and_then(|s| s.parse().ok()).ok_or(format!("malformed row '{line}'"))?;
        }
        if it.next().is_some() {
            return Err(format!("malformed row '{line}'"));
        }
        elements.push(Octonion::new(c));
    }
    if elements.len() != count {
        return Err(format!("header count {count} but body has {} rows", elements.len()));
    }
    Ok(Shell { norm, elements })
}

/// Memoizing shell provider with an optional disk cache and a norm bound.
#[derive(Debug)]
pub struct ShellStore {
    max_norm: u64,
    cache_dir: Option<PathBuf>,
    shells: Mutex<HashMap<u64, Arc<Shell>>>,
}

impl Default for ShellStore {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_SHELL_NORM, None)
    }
}

impl ShellStore {
    pub fn new(max_norm: u64, cache_dir: Option<PathBuf>) -> Self {
        Self { max_norm, cache_dir, shells: Mutex::new(HashMap::new()) }
    }

    pub fn max_norm(&self) -> u64 {
        self.max_norm
    }

    pub fn get(&self, n: u64) -> Result<Arc<Shell>> {
        if n > self.max_norm {
            return Err(Error::Resource(format!("shell norm {n} exceeds the configured bound {}", self.max_norm)));
        }
        if let Some(s) = self.shells.lock().unwrap().get(&n) {
            return Ok(Arc::clone(s));
        }
        let shell = match &self.cache_dir {
            Some(dir) => match shell_cache_load(dir, n) {
                CacheLoad::Hit(s) => s,
                CacheLoad::Miss(_) => {
                    let s = enumerate_shell_bounded(n, self.max_norm)?;
                    if let Err(e) = shell_cache_store(dir, &s) {
                        log::warn!("could not write shell cache in {}: {e}", dir.display());
                    }
                    s
                }
            },
            None => enumerate_shell_bounded(n, self.max_norm)?,
        };
        let shell = Arc::new(shell);
        self.shells.lock().unwrap().insert(n, Arc::clone(&shell));
        Ok(shell)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sigma3;

    #[test]
    fn small_shells() {
        assert_eq!(enumerate_shell(0).unwrap().elements(), &[Octonion::zero()]);
        for n in 1..=3 {
            assert_eq!(enumerate_shell(n).unwrap().count() as u64, 240 * sigma3(n));
        }
    }

    #[test]
    fn roots_match_a_brute_force_box() {
        // |x_i|^2 <= 2N (G^-1)_ii = 4 for N = 1
        let g = &basis_data().gram;
        let mut found = Vec::new();
        let mut x = [0i64; 8];
        for code in 0..5i64.pow(8) {
            let mut c = code;
            for v in x.iter_mut() {
                *v = c % 5 - 2;
                c /= 5;
            }
            if exact_norm(g, &x) == 1 {
                found.push(x);
            }
        }
        found.sort_unstable();
        let shell: Vec<[i64; 8]> = enumerate_shell(1).unwrap().elements().iter().map(|o| *o.coords()).collect();
        assert_eq!(found.len(), 240);
        assert_eq!(shell, found);
    }

    #[test]
    fn shell_symmetries() {
        let s = enumerate_shell(2).unwrap();
        let set: std::collections::HashSet<_> = s.elements().iter().cloned().collect();
        assert_eq!(set.len(), s.count());
        for x in s.elements() {
            assert_eq!(x.norm(), 2);
            assert!(set.contains(&-x));
            assert!(set.contains(&x.conj()));
        }
        for k in 0..8 {
            assert_eq!(s.elements().iter().map(|x| x.coords()[k]).sum::<i64>(), 0);
        }
        assert_eq!(enumerate_shell(2).unwrap(), s);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(enumerate_shell(17), Err(Error::Resource(_))));
        assert!(enumerate_shell_bounded(3, 2).is_err());
        assert!(ShellStore::new(2, None).get(3).is_err());
    }

    #[test]
    fn cache_round_trip_and_negative_controls() {
        let dir = tempfile::tempdir().unwrap();
        let shell = enumerate_shell(2).unwrap();
        let path = shell_cache_store(dir.path(), &shell).unwrap();
        match shell_cache_load(dir.path(), 2) {
            CacheLoad::Hit(s) => assert_eq!(s, shell),
            CacheLoad::Miss(r) => panic!("miss: {r}"),
        }
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(&format!("D4MOD-SHELL v1 basis={BASIS_TAG} norm=2 count=2160\n")));

        fs::write(&path, text.replacen(BASIS_TAG, "other-basis", 1)).unwrap();
        assert!(matches!(shell_cache_load(dir.path(), 2), CacheLoad::Miss(r) if r.contains("basis tag")));

        let truncated: String = text.lines().take(100).map(|l| format!("{l}\n")).collect();
        fs::write(&path, truncated).unwrap();
        assert!(matches!(shell_cache_load(dir.path(), 2), CacheLoad::Miss(r) if r.contains("count")));

        fs::write(&path, "garbage\n").unwrap();
        assert!(matches!(shell_cache_load(dir.path(), 2), CacheLoad::Miss(_)));
        assert!(matches!(shell_cache_load(dir.path(), 5), CacheLoad::Miss(_)));
    }

    #[test]
    fn store_recomputes_over_a_bad_cache() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(cache_path(dir.path(), 1), "D4MOD-SHELL v1 basis=x norm=1 count=0\n").unwrap();
        let store = ShellStore::new(4, Some(dir.path().to_path_buf()));
        assert_eq!(store.get(1).unwrap().count(), 240);
        assert!(matches!(shell_cache_load(dir.path(), 1), CacheLoad::Hit(_)));
    }
}
