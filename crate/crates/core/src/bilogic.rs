//! Bi-logic operators over attribute subspaces.
//!
//! An object is a list of attribute classes, each a subspace of one common
//! space. Its conscious, asymmetric representation is the meet of those
//! subspaces; the unconscious modes are all expressed with joins:
//!
//! | operator        | result                                             |
//! |-----------------|----------------------------------------------------|
//! | asymmetric repr | `x1 ∧ x2 ∧ ... ∧ xn`                               |
//! | generalization  | `x1 ∨ x2 ∨ ... ∨ xn`                               |
//! | condensation    | `repr(a) ∨ repr(b)`                                |
//! | displacement    | `repr(target) ∨ (∧ of the transferred attributes)` |
//!
//! Symmetry identifies objects whose generalizations coincide. Temporal and
//! reality attributes are ordinary attributes carrying a kind tag; the tag
//! never changes any result.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::Assignment;
use crate::policy::NumericPolicy;
use crate::sampling::Field;
use crate::subspace::{Subspace, SubspaceError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BilogicError {
    #[error("duplicate attribute name `{0}`")]
    DuplicateAttribute(String),
    #[error("duplicate object name `{0}`")]
    DuplicateObject(String),
    #[error("object `{0}` has no attributes")]
    EmptyObject(String),
    #[error("object `{object}` lists attribute `{attribute}` more than once")]
    RepeatedAttribute { object: String, attribute: String },
    #[error("object `{object}` references unknown attribute `{attribute}`")]
    UnknownAttribute { object: String, attribute: String },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("attribute `{attribute}` lives in dimension {found}, scenario dimension is {expected}")]
    AttributeAmbient {
        attribute: String,
        expected: usize,
        found: usize,
    },
    #[error("attribute `{attribute}` has dimension {found}, but `{first}` has dimension {expected}; attribute classes must have equal dimensions")]
    UnequalAttributeDims {
        first: String,
        expected: usize,
        attribute: String,
        found: usize,
    },
    #[error("attribute `{attribute}` is not an attribute of source object `{source_object}`")]
    TransferNotInSource {
        attribute: String,
        source_object: String,
    },
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum AttributeKind {
    #[default]
    Regular,
    Temporal,
    Reality,
}

impl AttributeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AttributeKind::Regular => "regular",
            AttributeKind::Temporal => "temporal",
            AttributeKind::Reality => "reality",
        }
    }
}

impl fmt::Display for AttributeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AttributeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "regular" => Ok(AttributeKind::Regular),
            "temporal" => Ok(AttributeKind::Temporal),
            "reality" => Ok(AttributeKind::Reality),
            other => Err(format!(
                "unknown attribute kind `{other}` (expected regular, temporal or reality)"
            )),
        }
    }
}

/// A named class of objects sharing one attribute.
#[derive(Debug, Clone)]
pub struct AttributeClass {
    pub name: String,
    pub kind: AttributeKind,
    pub subspace: Subspace,
}

impl AttributeClass {
    pub fn new(name: impl Into<String>, kind: AttributeKind, subspace: Subspace) -> Self {
        Self {
            name: name.into(),
            kind,
            subspace,
        }
    }
}

/// An object described by the attribute classes it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilogicObject {
    pub name: String,
    pub attributes: Vec<String>,
}

impl BilogicObject {
    pub fn new<S: Into<String>>(name: impl Into<String>, attributes: impl IntoIterator<Item = S>) -> Self {
        Self {
            name: name.into(),
            attributes: attributes.into_iter().map(Into::into).collect(),
        }
    }

    pub fn attribute_set(&self) -> BTreeSet<&str> {
        self.attributes.iter().map(String::as_str).collect()
    }
}

/// Result of [`Scenario::negation_identity_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegationIdentity {
    /// Generalization gives `p` and `¬p` the same subspace.
    pub generalized_equal: bool,
    /// `repr(p)' ⊆ generalize(p)`; holds exactly when the generalization is
    /// the whole space.
    pub complement_contained: bool,
}

/// Temporal and reality attributes carried by one object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindsEntry {
    pub object: String,
    pub temporal: Vec<String>,
    pub reality: Vec<String>,
}

type ClassEntry<'a> = (Vec<BTreeSet<&'a str>>, Subspace, Vec<String>);

/// Attributes and objects over one ambient space.
#[derive(Debug, Clone)]
pub struct Scenario {
    ambient_dim: usize,
    field: Field,
    policy: NumericPolicy,
    seed: u64,
    attributes: Vec<AttributeClass>,
    objects: Vec<BilogicObject>,
    warnings: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct ScenarioOptions {
    pub field: Field,
    pub policy: NumericPolicy,
    pub seed: u64,
    /// Accept attribute classes of different dimensions (with a warning).
    pub allow_unequal_dims: bool,
}

impl Scenario {
    pub fn new(
        ambient_dim: usize,
        attributes: Vec<AttributeClass>,
        objects: Vec<BilogicObject>,
        options: ScenarioOptions,
    ) -> Result<Self, BilogicError> {
        if ambient_dim == 0 {
            return Err(SubspaceError::EmptyAmbient.into());
        }
        let mut warnings = Vec::new();
        let mut seen = HashSet::new();
        for attr in &attributes {
            if !seen.insert(attr.name.as_str()) {
                return Err(BilogicError::DuplicateAttribute(attr.name.clone()));
            }
            if attr.subspace.ambient_dim() != ambient_dim {
                return Err(BilogicError::AttributeAmbient {
                    attribute: attr.name.clone(),
                    expected: ambient_dim,
                    found: attr.subspace.ambient_dim(),
                });
            }
        }
        if let Some(first) = attributes.first() {
            for attr in &attributes[1..] {
                if attr.subspace.dim() != first.subspace.dim() {
                    let err = BilogicError::UnequalAttributeDims {
                        first: first.name.clone(),
                        expected: first.subspace.dim(),
                        attribute: attr.name.clone(),
                        found: attr.subspace.dim(),
                    };
                    if !options.allow_unequal_dims {
                        return Err(err);
                    }
                    warnings.push(err.to_string());
                }
            }
        }
        let scenario = Self {
            ambient_dim,
            field: options.field,
            policy: options.policy,
            seed: options.seed,
            attributes,
            objects: Vec::new(),
            warnings,
        };
        let mut names = HashSet::new();
        for obj in &objects {
            if !names.insert(obj.name.as_str()) {
                return Err(BilogicError::DuplicateObject(obj.name.clone()));
            }
            scenario.validate(obj)?;
        }
        Ok(Self { objects, ..scenario })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn policy(&self) -> &NumericPolicy {
        &self.policy
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn attributes(&self) -> &[AttributeClass] {
        &self.attributes
    }

    pub fn objects(&self) -> &[BilogicObject] {
        &self.objects
    }

    /// Non-fatal validation findings, e.g. unequal attribute dimensions
    /// accepted under `allow_unequal_dims`.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn attribute(&self, name: &str) -> Option<&AttributeClass> {
        self.attributes.iter().find(|a| a.name == name)
    }

    pub fn object(&self, name: &str) -> Result<&BilogicObject, BilogicError> {
        self.objects
            .iter()
            .find(|o| o.name == name)
            .ok_or_else(|| BilogicError::UnknownObject(name.to_owned()))
    }

    /// Every attribute name bound to its subspace, for formula evaluation.
    pub fn assignment(&self) -> Assignment {
        let mut a = Assignment::new(self.ambient_dim);
        for attr in &self.attributes {
            a.bind(attr.name.clone(), attr.subspace.clone())
                .expect("attribute dimensions validated at construction");
        }
        a
    }

    /// Same scenario with every attribute kind reset to regular.
    pub fn with_kinds_stripped(&self) -> Self {
        let mut s = self.clone();
        for attr in &mut s.attributes {
            attr.kind = AttributeKind::Regular;
        }
        s
    }

    /// Checks that `obj` is nonempty, has no repeated attribute and only
    /// references known attributes.
    pub fn validate(&self, obj: &BilogicObject) -> Result<(), BilogicError> {
        if obj.attributes.is_empty() {
            return Err(BilogicError::EmptyObject(obj.name.clone()));
        }
        let mut seen = HashSet::new();
        for name in &obj.attributes {
            if !seen.insert(name.as_str()) {
                return Err(BilogicError::RepeatedAttribute {
                    object: obj.name.clone(),
                    attribute: name.clone(),
                });
            }
            self.lookup(obj, name)?;
        }
        Ok(())
    }

    fn lookup(&self, obj: &BilogicObject, name: &str) -> Result<&Subspace, BilogicError> {
        self.attribute(name)
            .map(|a| &a.subspace)
            .ok_or_else(|| BilogicError::UnknownAttribute {
                object: obj.name.clone(),
                attribute: name.to_owned(),
            })
    }

    fn attribute_subspaces<'a>(
        &'a self,
        obj: &'a BilogicObject,
    ) -> Result<Vec<&'a Subspace>, BilogicError> {
        self.validate(obj)?;
        obj.attributes.iter().map(|name| self.lookup(obj, name)).collect()
    }

    fn fold_meet(&self, parts: &[&Subspace]) -> Result<Subspace, BilogicError> {
        let mut acc = parts[0].clone();
        for s in &parts[1..] {
            acc = acc.meet(s, &self.policy)?;
        }
        Ok(acc)
    }

    fn fold_join(&self, parts: &[&Subspace]) -> Result<Subspace, BilogicError> {
        let mut acc = parts[0].clone();
        for s in &parts[1..] {
            acc = acc.join(s, &self.policy)?;
        }
        Ok(acc)
    }

    /// Meet of the object's attribute classes, folded left. A zero result
    /// means the attribute combination is unrealizable; that is a value, not
    /// an error.
    pub fn asymmetric_repr(&self, obj: &BilogicObject) -> Result<Subspace, BilogicError> {
        let parts = self.attribute_subspaces(obj)?;
        self.fold_meet(&parts)
    }

    /// Join of the object's attribute classes.
    pub fn generalize(&self, obj: &BilogicObject) -> Result<Subspace, BilogicError> {
        let parts = self.attribute_subspaces(obj)?;
        self.fold_join(&parts)
    }

    /// Partitions objects by equality of their generalizations, classes and
    /// members in order of first appearance.
    ///
    /// Objects with the same attribute set are grouped before any numerical
    /// comparison, so they always share a class.
    pub fn symmetric_classes(&self, objs: &[BilogicObject]) -> Result<Vec<Vec<String>>, BilogicError> {
        // (attribute sets seen, representative generalization, members)
        let mut classes: Vec<ClassEntry> = Vec::new();
        for obj in objs {
            let key = obj.attribute_set();
            let general = self.generalize(obj)?;
            let mut placed = false;
            for (keys, rep, members) in classes.iter_mut() {
                if keys.contains(&key) || rep.equals(&general, &self.policy)? {
                    if !keys.contains(&key) {
                        keys.push(key.clone());
                    }
                    members.push(obj.name.clone());
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push((vec![key], general, vec![obj.name.clone()]));
            }
        }
        Ok(classes.into_iter().map(|(_, _, members)| members).collect())
    }

    /// Compares the generalizations of `p` and `¬p`, and tests whether the
    /// complement of `p`'s asymmetric representation lies inside its
    /// generalization.
    ///
    /// Generalization depends only on the attribute set, which `p` and `¬p`
    /// share, so `generalized_equal` is true for every valid object.
    pub fn negation_identity_check(&self, obj: &BilogicObject) -> Result<NegationIdentity, BilogicError> {
        let general = self.generalize(obj)?;
        let negated = BilogicObject {
            name: format!("¬{}", obj.name),
            attributes: obj.attributes.clone(),
        };
        let general_negated = self.generalize(&negated)?;
        let complement = self.asymmetric_repr(obj)?.complement(&self.policy);
        Ok(NegationIdentity {
            generalized_equal: general.equals(&general_negated, &self.policy)?,
            complement_contained: complement.is_contained_in(&general, &self.policy)?,
        })
    }

    /// `repr(a) ∨ repr(b)`.
    pub fn condense(&self, a: &BilogicObject, b: &BilogicObject) -> Result<Subspace, BilogicError> {
        let ra = self.asymmetric_repr(a)?;
        let rb = self.asymmetric_repr(b)?;
        Ok(ra.join(&rb, &self.policy)?)
    }

    /// Moves the `transferred` attributes of `source` onto `target`:
    /// `repr(target) ∨ (∧ transferred)`. An empty transfer leaves the
    /// target unchanged; transferring every source attribute equals
    /// [`condense`](Self::condense).
    pub fn displace(
        &self,
        target: &BilogicObject,
        source: &BilogicObject,
        transferred: &[&str],
    ) -> Result<Subspace, BilogicError> {
        self.validate(source)?;
        let base = self.asymmetric_repr(target)?;
        let mut parts = Vec::with_capacity(transferred.len());
        for name in transferred {
            if !source.attributes.iter().any(|a| a == name) {
                return Err(BilogicError::TransferNotInSource {
                    attribute: (*name).to_owned(),
                    source_object: source.name.clone(),
                });
            }
            parts.push(self.lookup(source, name)?);
        }
        if parts.is_empty() {
            return Ok(base);
        }
        let moved = self.fold_meet(&parts)?;
        Ok(base.join(&moved, &self.policy)?)
    }

    /// Objects carrying temporal or reality attributes. Objects with only
    /// regular attributes are omitted.
    pub fn attribute_kinds_report(&self) -> Vec<KindsEntry> {
        let kind_of = |name: &str| self.attribute(name).map_or(AttributeKind::Regular, |a| a.kind);
        self.objects
            .iter()
            .filter_map(|obj| {
                let pick = |kind| {
                    obj.attributes
                        .iter()
                        .filter(|a| kind_of(a) == kind)
                        .cloned()
                        .collect::<Vec<_>>()
                };
                let temporal = pick(AttributeKind::Temporal);
                let reality = pick(AttributeKind::Reality);
                (!temporal.is_empty() || !reality.is_empty()).then(|| KindsEntry {
                    object: obj.name.clone(),
                    temporal,
                    reality,
                })
            })
            .collect()
    }
}
