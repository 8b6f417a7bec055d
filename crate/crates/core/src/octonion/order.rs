use super::basis::{fano_mul, gram_of_checked, ORDER_BASIS, STRUCTURE};
use crate::error::{Error, Result};
use crate::lattice::enumerate_gram;
use crate::linalg;
use std::fmt;

/// A candidate order: a basis in doubled Fano coordinates plus its claimed
/// integer structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderModel {
    pub basis: [[i64; 8]; 8],
    pub structure: [[[i64; 8]; 8]; 8],
}

impl OrderModel {
    pub fn shipped() -> Self {
        Self {
            basis: ORDER_BASIS,
            structure: std::array::from_fn(|i| std::array::from_fn(|j| STRUCTURE[i][j].map(i64::from))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub checks: Vec<OrderCheck>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self, axiom: &str) -> bool {
        self.checks.iter().any(|c| c.axiom == axiom && !c.passed)
    }

    pub fn into_result(self) -> Result<Self> {
        match self.checks.iter().find(|c| !c.passed) {
            Some(c) => Err(Error::Internal(format!("order axiom '{}' failed: {}", c.axiom, c.detail))),
            None => Ok(self),
        }
    }
}

impl fmt::Display for OrderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<12} {}  {}", c.axiom, if c.passed { "ok  " } else { "FAIL" }, c.detail)?;
        }
        Ok(())
    }
}

/// Self-check of the shipped basis.
pub fn verify_order() -> OrderReport {
    verify_order_model(&OrderModel::shipped())
}

/// Checks closure, unit, evenness, unimodularity and the root count.
pub fn verify_order_model(model: &OrderModel) -> OrderReport {
    let mut checks = Vec::new();
    let mut push = |axiom, passed, detail: String| checks.push(OrderCheck { axiom, passed, detail });

    let cols: [[i64; 8]; 8] = std::array::from_fn(|r| std::array::from_fn(|c| model.basis[c][r]));
    let det_basis = linalg::det(&cols);
    push("independent", det_basis != 0, format!("det of doubled basis = {det_basis}"));
    if det_basis == 0 {
        return OrderReport { checks };
    }

    let unit = linalg::integer_inverse(&cols).map(|(adj, den)| {
        // coefficients of 1 = doubled (2, 0, ..., 0)
        (0..8).all(|r| (adj[r][0] * 2) % den == 0)
    });
    push("unit", unit == Some(true), "1 is an integer combination of the basis".into());

    let mut bad = None;
    'outer: for i in 0..8 {
        for j in 0..8 {
            let lhs = fano_mul(&model.basis[i], &model.basis[j]);
            let mut rhs = [0i64; 8];
            for k in 0..8 {
                for r in 0..8 {
                    rhs[r] += 2 * model.structure[i][j][k] * model.basis[k][r];
                }
            }
            if lhs != Some(rhs) {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    push(
        "closure",
        bad.is_none(),
        match bad {
            None => "b_i b_j = sum_k T_ijk b_k for all i, j".into(),
            Some((i, j)) => format!("product b_{i} b_{j} disagrees with the structure constants"),
        },
    );

    let gram = gram_of_checked(&model.basis);
    let even = gram.map(|g| (0..8).all(|i| g[i][i] % 2 == 0));
    push("even", even == Some(true), "Gram matrix integral with even diagonal".into());
    let det_gram = gram.map(|g| linalg::det(&g));
    push("unimodular", det_gram == Some(1), format!("det Gram = {det_gram:?}"));

    let roots = gram.filter(|_| even == Some(true)).map(|g| enumerate_gram(&g, 1).len());
    push("roots", roots == Some(240), format!("norm-1 elements: {roots:?}"));

    OrderReport { checks }
}
