//! Numerical thresholds shared by every subspace decision.

use thiserror::Error;

/// Default relative singular-value cutoff used when extracting a basis.
pub const DEFAULT_RANK_CUTOFF_REL: f64 = 1e-10;
/// Default projector-distance threshold for subspace equality and ordering.
pub const DEFAULT_EQ_TOL: f64 = 1e-8;
/// Default residual threshold for vector membership.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolicyError {
    #[error("{name} must be a finite positive number, got {value}")]
    NotPositive { name: &'static str, value: f64 },
    #[error("rank_cutoff_rel must be below 1, got {0}")]
    CutoffTooLarge(f64),
}

/// Tolerances governing rank, equality and membership.
///
/// * `rank_cutoff_rel`: singular value `s` is kept iff `s > rank_cutoff_rel * s_max`.
/// * `eq_tol`: two subspaces are equal iff their projectors differ by at most
///   this much in Frobenius norm; `A <= B` iff `|P_B P_A - P_A|_F <= eq_tol`.
/// * `membership_tol`: `v` lies in `S` iff `|P_S v - v| <= membership_tol * max(1, |v|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    rank_cutoff_rel: f64,
    eq_tol: f64,
    membership_tol: f64,
}

impl NumericPolicy {
    pub fn new(rank_cutoff_rel: f64, eq_tol: f64, membership_tol: f64) -> Result<Self, PolicyError> {
        check_positive("rank_cutoff_rel", rank_cutoff_rel)?;
        check_positive("eq_tol", eq_tol)?;
        check_positive("membership_tol", membership_tol)?;
        if rank_cutoff_rel >= 1.0 {
            return Err(PolicyError::CutoffTooLarge(rank_cutoff_rel));
        }
        Ok(Self {
            rank_cutoff_rel,
            eq_tol,
            membership_tol,
        })
    }

    pub fn rank_cutoff_rel(&self) -> f64 {
        self.rank_cutoff_rel
    }

    pub fn eq_tol(&self) -> f64 {
        self.eq_tol
    }

    pub fn membership_tol(&self) -> f64 {
        self.membership_tol
    }

    /// Returns a copy with `eq_tol` replaced.
    pub fn with_eq_tol(self, eq_tol: f64) -> Result<Self, PolicyError> {
        Self::new(self.rank_cutoff_rel, eq_tol, self.membership_tol)
    }
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self {
            rank_cutoff_rel: DEFAULT_RANK_CUTOFF_REL,
            eq_tol: DEFAULT_EQ_TOL,
            membership_tol: DEFAULT_MEMBERSHIP_TOL,
        }
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<(), PolicyError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(PolicyError::NotPositive { name, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_values() {
        let p = NumericPolicy::default();
        assert_eq!(p.rank_cutoff_rel(), 1e-10);
        assert_eq!(p.eq_tol(), 1e-8);
        assert_eq!(p.membership_tol(), 1e-8);
    }

    #[test]
    fn rejects_non_positive_and_large_cutoff() {
        assert!(matches!(
            NumericPolicy::new(0.0, 1e-8, 1e-8),
            Err(PolicyError::NotPositive { name: "rank_cutoff_rel", .. })
        ));
        assert!(NumericPolicy::new(1e-10, -1.0, 1e-8).is_err());
        assert!(NumericPolicy::new(1e-10, 1e-8, f64::NAN).is_err());
        assert_eq!(
            NumericPolicy::new(1.0, 1e-8, 1e-8),
            Err(PolicyError::CutoffTooLarge(1.0))
        );
    }
}
