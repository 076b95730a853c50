//! Subspaces of a finite-dimensional inner-product space and the three
//! lattice connectives on them.
//!
//! A [`Subspace`] is stored as an `n x k` matrix with orthonormal columns.
//! Bases are not canonical, so all comparisons go through orthogonal
//! projectors `P = B B^H`:
//!
//! ```text
//! meet(A, B)    = A ∩ B          = (A' ∨ B')'
//! join(A, B)    = span(A ∪ B)
//! complement(A) = { x | (x, y) = 0 for all y in A }
//! ```
//!
//! Real spaces are embedded in the complex ones; a real generator set yields
//! a subspace whose projector is real up to rounding.

use nalgebra::{Complex, DMatrix, DVector};
use thiserror::Error;

use crate::policy::NumericPolicy;

pub type C64 = Complex<f64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubspaceError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension must be at least 1")]
    EmptyAmbient,
    #[error("non-finite component in input")]
    NonFinite,
    #[error("requested dimension {k} exceeds ambient dimension {n}")]
    RankExceedsDim { k: usize, n: usize },
}

/// A vector of `n >= 1` finite complex components.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(DVector<C64>);

impl Vector {
    pub fn new(components: Vec<C64>) -> Result<Self, SubspaceError> {
        if components.is_empty() {
            return Err(SubspaceError::EmptyAmbient);
        }
        if components.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SubspaceError::NonFinite);
        }
        Ok(Self(DVector::from_vec(components)))
    }

    pub fn from_real(components: &[f64]) -> Result<Self, SubspaceError> {
        Self::new(components.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// The `i`-th standard basis vector of dimension `n` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n, "unit index {i} out of range for dimension {n}");
        let mut v = DVector::zeros(n);
        v[i] = C64::new(1.0, 0.0);
        Self(v)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        Self(DVector::zeros(n))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &DVector<C64> {
        &self.0
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self(&self.0 * factor)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    fn check_dim(&self, n: usize) -> Result<(), SubspaceError> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(SubspaceError::DimensionMismatch {
                expected: n,
                found: self.dim(),
            })
        }
    }
}

/// `(x, y) = sum_i x_i * conj(y_i)`: linear in `x`, conjugate-linear in `y`.
pub fn inner_product(x: &Vector, y: &Vector) -> Result<C64, SubspaceError> {
    y.check_dim(x.dim())?;
    Ok(y.0.dotc(&x.0))
}

pub fn norm(x: &Vector) -> f64 {
    x.0.norm()
}

/// A subspace with an orthonormal basis. Immutable once built.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: DMatrix<C64>,
}

impl Subspace {
    /// The subspace `{0}` of an `n`-dimensional space.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        Self {
            ambient_dim: n,
            basis: DMatrix::zeros(n, 0),
        }
    }

    /// The whole `n`-dimensional space.
    pub fn full(n: usize) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        Self {
            ambient_dim: n,
            basis: DMatrix::identity(n, n),
        }
    }

    /// Linear closure of `generators`, with the basis extracted by SVD.
    ///
    /// An empty list gives the zero subspace of dimension `n`.
    pub fn span(n: usize, generators: &[Vector], policy: &NumericPolicy) -> Result<Self, SubspaceError> {
        if n == 0 {
            return Err(SubspaceError::EmptyAmbient);
        }
        for g in generators {
            g.check_dim(n)?;
        }
        let columns: Vec<DVector<C64>> = generators.iter().map(|g| g.0.clone()).collect();
        if columns.is_empty() {
            return Ok(Self::zero(n));
        }
        Ok(Self::from_columns(DMatrix::from_columns(&columns), policy))
    }

    /// Span of the columns of `generators` (an `n x m` matrix).
    pub fn from_matrix(generators: DMatrix<C64>, policy: &NumericPolicy) -> Result<Self, SubspaceError> {
        if generators.nrows() == 0 {
            return Err(SubspaceError::EmptyAmbient);
        }
        if generators.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SubspaceError::NonFinite);
        }
        Ok(Self::from_columns(generators, policy))
    }

    /// Coordinate subspace spanned by `e_i` for every `i` in `indices` (0-based).
    pub fn coordinate(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let mut basis = DMatrix::zeros(n, idx.len());
        for (col, &i) in idx.iter().enumerate() {
            assert!(i < n, "coordinate index {i} out of range for dimension {n}");
            basis[(i, col)] = C64::new(1.0, 0.0);
        }
        Self { ambient_dim: n, basis }
    }

    fn from_columns(generators: DMatrix<C64>, policy: &NumericPolicy) -> Self {
        let n = generators.nrows();
        if generators.ncols() == 0 {
            return Self::zero(n);
        }
        let (sigma, u) = left_singular(&generators);
        let order = descending_order(&sigma);
        let sigma_max = order.first().map_or(0.0, |&i| sigma[i]);
        if sigma_max <= 0.0 {
            return Self::zero(n);
        }
        let cutoff = policy.rank_cutoff_rel() * sigma_max;
        let kept: Vec<DVector<C64>> = order
            .into_iter()
            .filter(|&i| sigma[i] > cutoff)
            .map(|i| u.column(i).into_owned())
            .collect();
        // sigma_max itself always survives the cutoff, so `kept` is nonempty.
        Self {
            ambient_dim: n,
            basis: DMatrix::from_columns(&kept),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthonormal basis, one vector per column.
    pub fn basis(&self) -> &DMatrix<C64> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis
            .column_iter()
            .map(|c| Vector(c.into_owned()))
            .collect()
    }

    /// Orthogonal projector `B B^H`.
    pub fn projector(&self) -> DMatrix<C64> {
        &self.basis * self.basis.adjoint()
    }

    /// `|B^H B - I_k|_F`.
    pub fn orthonormality_defect(&self) -> f64 {
        let k = self.dim();
        (self.basis.adjoint() * &self.basis - DMatrix::<C64>::identity(k, k)).norm()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub(crate) fn check_same_space(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(SubspaceError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            })
        }
    }

    /// `|P v - v|`.
    pub fn residual(&self, v: &Vector) -> Result<f64, SubspaceError> {
        v.check_dim(self.ambient_dim)?;
        let coeffs = self.basis.adjoint() * &v.0;
        Ok((&self.basis * coeffs - &v.0).norm())
    }

    pub fn contains_vector(&self, v: &Vector, policy: &NumericPolicy) -> Result<bool, SubspaceError> {
        let r = self.residual(v)?;
        Ok(r <= policy.membership_tol() * norm(v).max(1.0))
    }

    pub fn join(&self, other: &Subspace, policy: &NumericPolicy) -> Result<Subspace, SubspaceError> {
        self.check_same_space(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let mut stacked = DMatrix::zeros(self.ambient_dim, self.dim() + other.dim());
        stacked.columns_mut(0, self.dim()).copy_from(&self.basis);
        stacked.columns_mut(self.dim(), other.dim()).copy_from(&other.basis);
        Ok(Self::from_columns(stacked, policy))
    }

    /// Orthogonal complement. Always has dimension `n - dim(self)`.
    pub fn complement(&self, _policy: &NumericPolicy) -> Subspace {
        let n = self.ambient_dim;
        let k = self.dim();
        if k == 0 {
            return Self::full(n);
        }
        if k == n {
            return Self::zero(n);
        }
        // The complement projector I - P has eigenvalues 1 (multiplicity n - k)
        // and 0; its dominant left singular vectors span the complement.
        let residual = DMatrix::<C64>::identity(n, n) - self.projector();
        let (sigma, u) = left_singular(&residual);
        let kept: Vec<DVector<C64>> = descending_order(&sigma)
            .into_iter()
            .take(n - k)
            .map(|i| u.column(i).into_owned())
            .collect();
        Self {
            ambient_dim: n,
            basis: DMatrix::from_columns(&kept),
        }
    }

    /// Intersection, computed as `(A' ∨ B')'`.
    pub fn meet(&self, other: &Subspace, policy: &NumericPolicy) -> Result<Subspace, SubspaceError> {
        self.check_same_space(other)?;
        let joined = self.complement(policy).join(&other.complement(policy), policy)?;
        Ok(joined.complement(policy))
    }

    /// Frobenius distance between the two projectors.
    pub fn projector_distance(&self, other: &Subspace) -> Result<f64, SubspaceError> {
        self.check_same_space(other)?;
        Ok((self.projector() - other.projector()).norm())
    }

    pub fn equals(&self, other: &Subspace, policy: &NumericPolicy) -> Result<bool, SubspaceError> {
        Ok(self.projector_distance(other)? <= policy.eq_tol())
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Subspace, policy: &NumericPolicy) -> Result<bool, SubspaceError> {
        self.check_same_space(other)?;
        let p_self = self.projector();
        let defect = (other.projector() * &p_self - p_self).norm();
        Ok(defect <= policy.eq_tol())
    }
}

/// Singular values and left singular vectors (thin SVD).
///
/// nalgebra's complex SVD loses accuracy on rank-deficient inputs, which are
/// the common case here (joins of overlapping subspaces), so the
/// factorization goes through faer.
fn left_singular(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let fm = faer::Mat::<faer::c64>::from_fn(m.nrows(), m.ncols(), |i, j| {
        let z = m[(i, j)];
        faer::c64::new(z.re, z.im)
    });
    let svd = fm.thin_svd().expect("SVD of a finite matrix converges");
    let s = svd.S().column_vector();
    let sigma = (0..s.nrows()).map(|i| s[i].re).collect();
    let u = svd.U();
    let left = DMatrix::from_fn(u.nrows(), u.ncols(), |i, j| {
        let z = u[(i, j)];
        C64::new(z.re, z.im)
    });
    (sigma, left)
}

fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    order
}
