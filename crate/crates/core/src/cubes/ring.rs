use super::forms::check_discriminant;
use crate::error::Result;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingKind {
    /// `Z[x]/(x^2)`, `D = 0`.
    DualNumbers,
    /// `Z + sqrt(D)(Z + Z)`, `D` a positive square.
    Split,
    /// `Z[(D + sqrt D)/2]`.
    Domain,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct QuadraticRing {
    pub disc: i64,
    pub kind: RingKind,
}

/// The quadratic ring `R(D)`.
pub fn quad_ring(d: i64) -> Result<QuadraticRing> {
    check_discriminant(d)?;
    let kind = if d == 0 {
        RingKind::DualNumbers
    } else if d > 0 && (d as f64).sqrt().round().powi(2) as i64 == d {
        RingKind::Split
    } else {
        RingKind::Domain
    };
    Ok(QuadraticRing { disc: d, kind })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cases() {
        assert_eq!(quad_ring(0).unwrap().kind, RingKind::DualNumbers);
        assert_eq!(quad_ring(4).unwrap().kind, RingKind::Split);
        assert_eq!(quad_ring(1).unwrap().kind, RingKind::Split);
        assert_eq!(quad_ring(-3).unwrap().kind, RingKind::Domain);
        assert_eq!(quad_ring(5).unwrap().kind, RingKind::Domain);
        assert!(quad_ring(2).is_err());
        assert!(quad_ring(-1).is_err());
    }
}
