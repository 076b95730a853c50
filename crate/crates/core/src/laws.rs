//! Lattice-law checks on concrete subspaces.
//!
//! | law            | statement                                  | status in finite dimension |
//! |----------------|--------------------------------------------|----------------------------|
//! | orthomodular   | `x <= y  =>  x ∨ (x' ∧ y) = y`             | always holds               |
//! | modular        | `x <= y  =>  x ∨ (y ∧ z) = y ∧ (x ∨ z)`    | always holds               |
//! | distributivity | `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`          | contingent                 |
//!
//! The modular law fails for closed subspaces of infinite-dimensional
//! spaces; that case is outside what can be computed here.

use std::fmt;

use nalgebra::DMatrix;
use rand::Rng;
use thiserror::Error;

use crate::policy::NumericPolicy;
use crate::sampling::{derive_seed, random_nested_pair, random_subspace_with, random_subspace_within, rng_from_seed, Field};
use crate::subspace::{Subspace, SubspaceError, Vector, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    Orthomodular,
    Modular,
    Distributivity,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Orthomodular => "orthomodular",
            Law::Modular => "modular",
            Law::Distributivity => "distributivity",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LawError {
    #[error("{law} law precondition violated: x is not contained in y")]
    NotNested { law: Law },
    #[error("{law} witness has no third operand")]
    MissingOperand { law: Law },
    #[error("state vector must be nonzero")]
    ZeroVector,
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

/// A failing instance: the inputs plus both computed sides.
#[derive(Debug, Clone)]
pub struct LawWitness {
    pub law: Law,
    pub x: Subspace,
    pub y: Subspace,
    pub z: Option<Subspace>,
    pub lhs: Subspace,
    pub rhs: Subspace,
    pub distance: f64,
}

impl LawWitness {
    pub fn lhs_projector(&self) -> DMatrix<C64> {
        self.lhs.projector()
    }

    pub fn rhs_projector(&self) -> DMatrix<C64> {
        self.rhs.projector()
    }

    /// Recomputes both sides from the stored inputs and returns their
    /// projector distance.
    pub fn recheck(&self, policy: &NumericPolicy) -> Result<f64, LawError> {
        let (lhs, rhs) = match self.law {
            Law::Orthomodular => orthomodular_sides(&self.x, &self.y, policy)?,
            Law::Modular => modular_sides(&self.x, &self.y, self.z_or_missing()?, policy)?,
            Law::Distributivity => distributivity_sides(&self.x, &self.y, self.z_or_missing()?, policy)?,
        };
        Ok(lhs.projector_distance(&rhs)?)
    }

    fn z_or_missing(&self) -> Result<&Subspace, LawError> {
        self.z
            .as_ref()
            .ok_or(LawError::MissingOperand { law: self.law })
    }
}

/// Outcome of checking one law on one or more instances.
///
/// `holds` is true iff every instance matched within `eq_tol`; `witness`
/// carries the first failing instance and is present iff `holds` is false.
#[derive(Debug, Clone)]
pub struct LawReport {
    pub law: Law,
    pub instances: usize,
    pub passed: usize,
    pub holds: bool,
    pub witness: Option<LawWitness>,
}

impl LawReport {
    /// A report with no instances; `holds` is vacuously true.
    pub fn empty(law: Law) -> Self {
        Self {
            law,
            instances: 0,
            passed: 0,
            holds: true,
            witness: None,
        }
    }

    fn record(&mut self, witness: Option<LawWitness>) {
        self.instances += 1;
        match witness {
            None => self.passed += 1,
            Some(w) => {
                self.holds = false;
                if self.witness.is_none() {
                    self.witness = Some(w);
                }
            }
        }
    }

    /// Folds another report for the same law into this one, keeping the
    /// earliest witness.
    pub fn absorb(&mut self, other: LawReport) {
        debug_assert_eq!(self.law, other.law);
        self.instances += other.instances;
        self.passed += other.passed;
        self.holds &= other.holds;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    fn single(law: Law, witness: Option<LawWitness>) -> Self {
        let mut report = Self::empty(law);
        report.record(witness);
        report
    }
}

fn orthomodular_sides(x: &Subspace, y: &Subspace, policy: &NumericPolicy) -> Result<(Subspace, Subspace), LawError> {
    let lhs = x.join(&x.complement(policy).meet(y, policy)?, policy)?;
    Ok((lhs, y.clone()))
}

fn modular_sides(
    x: &Subspace,
    y: &Subspace,
    z: &Subspace,
    policy: &NumericPolicy,
) -> Result<(Subspace, Subspace), LawError> {
    let lhs = x.join(&y.meet(z, policy)?, policy)?;
    let rhs = y.meet(&x.join(z, policy)?, policy)?;
    Ok((lhs, rhs))
}

/// `(x ∧ (y ∨ z), (x ∧ y) ∨ (x ∧ z))`.
pub fn distributivity_sides(
    x: &Subspace,
    y: &Subspace,
    z: &Subspace,
    policy: &NumericPolicy,
) -> Result<(Subspace, Subspace), SubspaceError> {
    let lhs = x.meet(&y.join(z, policy)?, policy)?;
    let rhs = x.meet(y, policy)?.join(&x.meet(z, policy)?, policy)?;
    Ok((lhs, rhs))
}

fn compare(
    law: Law,
    (x, y, z): (&Subspace, &Subspace, Option<&Subspace>),
    (lhs, rhs): (Subspace, Subspace),
    policy: &NumericPolicy,
) -> Result<Option<LawWitness>, LawError> {
    let distance = lhs.projector_distance(&rhs)?;
    if distance <= policy.eq_tol() {
        return Ok(None);
    }
    Ok(Some(LawWitness {
        law,
        x: x.clone(),
        y: y.clone(),
        z: z.cloned(),
        lhs,
        rhs,
        distance,
    }))
}

fn require_nested(law: Law, x: &Subspace, y: &Subspace, policy: &NumericPolicy) -> Result<(), LawError> {
    if x.is_contained_in(y, policy)? {
        Ok(())
    } else {
        Err(LawError::NotNested { law })
    }
}

fn orthomodular_instance(x: &Subspace, y: &Subspace, policy: &NumericPolicy) -> Result<Option<LawWitness>, LawError> {
    require_nested(Law::Orthomodular, x, y, policy)?;
    let sides = orthomodular_sides(x, y, policy)?;
    compare(Law::Orthomodular, (x, y, None), sides, policy)
}

fn modular_instance(
    x: &Subspace,
    y: &Subspace,
    z: &Subspace,
    policy: &NumericPolicy,
) -> Result<Option<LawWitness>, LawError> {
    require_nested(Law::Modular, x, y, policy)?;
    z.check_same_space(x)?;
    let sides = modular_sides(x, y, z, policy)?;
    compare(Law::Modular, (x, y, Some(z)), sides, policy)
}

fn distributivity_instance(
    x: &Subspace,
    y: &Subspace,
    z: &Subspace,
    policy: &NumericPolicy,
) -> Result<Option<LawWitness>, LawError> {
    let sides = distributivity_sides(x, y, z, policy)?;
    compare(Law::Distributivity, (x, y, Some(z)), sides, policy)
}

/// Checks `x ∨ (x' ∧ y) = y`. Requires `x ⊆ y`.
pub fn check_orthomodular(x: &Subspace, y: &Subspace, policy: &NumericPolicy) -> Result<LawReport, LawError> {
    Ok(LawReport::single(Law::Orthomodular, orthomodular_instance(x, y, policy)?))
}

/// Checks `x ∨ (y ∧ z) = y ∧ (x ∨ z)`. Requires `x ⊆ y`.
pub fn check_modular(x: &Subspace, y: &Subspace, z: &Subspace, policy: &NumericPolicy) -> Result<LawReport, LawError> {
    Ok(LawReport::single(Law::Modular, modular_instance(x, y, z, policy)?))
}

/// Checks `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`. Either outcome is legitimate.
pub fn check_distributivity(
    x: &Subspace,
    y: &Subspace,
    z: &Subspace,
    policy: &NumericPolicy,
) -> Result<LawReport, LawError> {
    Ok(LawReport::single(Law::Distributivity, distributivity_instance(x, y, z, policy)?))
}

/// Orthomodular law on `trials` random nested pairs in dimension `n`.
/// Trial `i` draws from its own stream `derive_seed(seed, i)`.
pub fn random_orthomodular_trials(
    n: usize,
    trials: usize,
    seed: u64,
    field: Field,
    policy: &NumericPolicy,
) -> Result<LawReport, LawError> {
    let mut report = LawReport::empty(Law::Orthomodular);
    for i in 0..trials {
        let mut rng = rng_from_seed(derive_seed(seed, i as u64));
        let (x, y) = random_nested_pair(&mut rng, n, field, policy)?;
        report.record(orthomodular_instance(&x, &y, policy)?);
    }
    Ok(report)
}

/// Modular law on `trials` random triples: a nested pair `x ⊆ y` and an
/// unrelated `z` of uniformly drawn dimension.
pub fn random_modular_trials(
    n: usize,
    trials: usize,
    seed: u64,
    field: Field,
    policy: &NumericPolicy,
) -> Result<LawReport, LawError> {
    let mut report = LawReport::empty(Law::Modular);
    for i in 0..trials {
        let mut rng = rng_from_seed(derive_seed(seed, i as u64));
        let (x, y) = random_nested_pair(&mut rng, n, field, policy)?;
        let k_z = rng.random_range(0..=n);
        let z = random_subspace_with(&mut rng, n, k_z, field, policy)?;
        report.record(modular_instance(&x, &y, &z, policy)?);
    }
    Ok(report)
}

/// Searches random triples of distinct coplanar lines for a distributivity
/// failure and returns the first one found. `y` and `z` are independent
/// random lines and `x` is a random line in their join, so the search works
/// in any dimension `n >= 2`; independent lines in `n >= 3` almost never
/// share a plane and then satisfy the law trivially.
pub fn find_distributivity_counterexample(
    n: usize,
    trials: usize,
    seed: u64,
    field: Field,
    policy: &NumericPolicy,
) -> Result<Option<LawWitness>, LawError> {
    for i in 0..trials {
        let mut rng = rng_from_seed(derive_seed(seed, i as u64));
        let y = random_subspace_with(&mut rng, n, 1, field, policy)?;
        let z = random_subspace_with(&mut rng, n, 1, field, policy)?;
        let plane = y.join(&z, policy)?;
        if plane.dim() < 2 {
            continue;
        }
        let x = random_subspace_within(&mut rng, &plane, 1, field, policy)?;
        if let Some(w) = distributivity_instance(&x, &y, &z, policy)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Membership of one state vector in `S`, `S'` and `S ∨ S'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExcludedMiddle {
    pub in_s: bool,
    pub in_complement: bool,
    pub in_join: bool,
}

/// `S ∨ S'` is always the whole space, so `in_join` is always true even when
/// `v` lies in neither `S` nor `S'`: disjunction is not truth-functional
/// under membership valuation.
pub fn excluded_middle_demo(s: &Subspace, v: &Vector, policy: &NumericPolicy) -> Result<ExcludedMiddle, LawError> {
    if v.is_zero() {
        return Err(LawError::ZeroVector);
    }
    let complement = s.complement(policy);
    let join = s.join(&complement, policy)?;
    Ok(ExcludedMiddle {
        in_s: s.contains_vector(v, policy)?,
        in_complement: complement.contains_vector(v, policy)?,
        in_join: join.contains_vector(v, policy)?,
    })
}
