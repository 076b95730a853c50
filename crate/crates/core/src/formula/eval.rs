use std::collections::BTreeMap;

use thiserror::Error;

use super::Formula;
use crate::policy::NumericPolicy;
use crate::subspace::{Subspace, SubspaceError, Vector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound: {}", .0.join(", "))]
    Unbound(Vec<String>),
    #[error("state vector must be nonzero")]
    ZeroStateVector,
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

/// Binds variable names to subspaces of one common `n`-dimensional space.
#[derive(Debug, Clone)]
pub struct Assignment {
    ambient_dim: usize,
    bindings: BTreeMap<String, Subspace>,
}

impl Assignment {
    pub fn new(ambient_dim: usize) -> Self {
        assert!(ambient_dim >= 1, "ambient dimension must be at least 1");
        Self {
            ambient_dim,
            bindings: BTreeMap::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Binds `name`, replacing any earlier binding.
    pub fn bind(&mut self, name: impl Into<String>, subspace: Subspace) -> Result<(), SubspaceError> {
        if subspace.ambient_dim() != self.ambient_dim {
            return Err(SubspaceError::DimensionMismatch {
                expected: self.ambient_dim,
                found: subspace.ambient_dim(),
            });
        }
        self.bindings.insert(name.into(), subspace);
        Ok(())
    }

    pub fn with(mut self, name: impl Into<String>, subspace: Subspace) -> Result<Self, SubspaceError> {
        self.bind(name, subspace)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&Subspace> {
        self.bindings.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    /// Every variable of `f` that has no binding, sorted.
    pub fn unbound(&self, f: &Formula) -> Vec<String> {
        f.variables()
            .into_iter()
            .filter(|name| !self.bindings.contains_key(*name))
            .map(str::to_owned)
            .collect()
    }
}

/// Denotation of `f`: `And` is meet, `Or` is join, `Not` is complement.
pub fn eval_subspace(f: &Formula, a: &Assignment, policy: &NumericPolicy) -> Result<Subspace, EvalError> {
    let missing = a.unbound(f);
    if !missing.is_empty() {
        return Err(EvalError::Unbound(missing));
    }
    eval_bound(f, a, policy)
}

fn eval_bound(f: &Formula, a: &Assignment, policy: &NumericPolicy) -> Result<Subspace, EvalError> {
    Ok(match f {
        Formula::Var(name) => a.bindings[name].clone(),
        Formula::Top => Subspace::full(a.ambient_dim),
        Formula::Bottom => Subspace::zero(a.ambient_dim),
        Formula::Not(c) => eval_bound(c, a, policy)?.complement(policy),
        Formula::And(l, r) => eval_bound(l, a, policy)?.meet(&eval_bound(r, a, policy)?, policy)?,
        Formula::Or(l, r) => eval_bound(l, a, policy)?.join(&eval_bound(r, a, policy)?, policy)?,
    })
}

/// True iff the nonzero state `v` lies in the denotation of `f`.
pub fn eval_membership(f: &Formula, a: &Assignment, v: &Vector, policy: &NumericPolicy) -> Result<bool, EvalError> {
    if v.is_zero() {
        return Err(EvalError::ZeroStateVector);
    }
    Ok(eval_subspace(f, a, policy)?.contains_vector(v, policy)?)
}
