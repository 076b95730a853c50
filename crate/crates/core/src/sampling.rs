//! Seeded random subspaces.
//!
//! Every generator here is a ChaCha8 stream seeded from a `u64`, so the same
//! seed gives the same subspace on every platform. Derived seeds
//! ([`derive_seed`], [`seed_for_name`]) let trial loops and named attributes
//! draw independent streams without depending on iteration order.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::policy::NumericPolicy;
use crate::subspace::{Subspace, SubspaceError, C64};

/// Scalar field of an ambient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    Real,
    #[default]
    Complex,
}

/// Mixes `(seed, index)` into a fresh seed (splitmix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed keyed by `(seed, name)`; FNV-1a over the name bytes.
pub fn seed_for_name(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    derive_seed(seed, h)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `rows x cols` matrix of independent standard Gaussians. Complex entries
/// have independent real and imaginary parts of variance 1/2.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, field: Field) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| match field {
        Field::Real => C64::new(rng.sample(StandardNormal), 0.0),
        Field::Complex => {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        }
    })
}

/// Uniformly oriented `k`-dimensional subspace of an `n`-dimensional space.
pub fn random_subspace(
    n: usize,
    k: usize,
    field: Field,
    seed: u64,
    policy: &NumericPolicy,
) -> Result<Subspace, SubspaceError> {
    random_subspace_with(&mut rng_from_seed(seed), n, k, field, policy)
}

pub fn random_subspace_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    field: Field,
    policy: &NumericPolicy,
) -> Result<Subspace, SubspaceError> {
    if n == 0 {
        return Err(SubspaceError::EmptyAmbient);
    }
    if k > n {
        return Err(SubspaceError::RankExceedsDim { k, n });
    }
    if k == 0 {
        return Ok(Subspace::zero(n));
    }
    loop {
        let s = Subspace::from_matrix(gaussian_matrix(rng, n, k, field), policy)?;
        // Rank deficiency has probability zero; redraw if it happens anyway.
        if s.dim() == k {
            return Ok(s);
        }
    }
}

/// Random `(x, y)` with `x ⊆ y` by construction: `y` has a uniformly drawn
/// dimension in `0..=n`, and `x` is spanned by random combinations of `y`'s
/// basis vectors, with dimension uniform in `0..=dim y`.
pub fn random_nested_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    field: Field,
    policy: &NumericPolicy,
) -> Result<(Subspace, Subspace), SubspaceError> {
    let k_y = rng.random_range(0..=n);
    let y = random_subspace_with(rng, n, k_y, field, policy)?;
    let k_x = rng.random_range(0..=k_y);
    let x = random_subspace_within(rng, &y, k_x, field, policy)?;
    Ok((x, y))
}

/// A random `k`-dimensional subspace of `parent`, spanned by Gaussian
/// combinations of its basis. Fails when `k` exceeds `parent.dim()`.
pub fn random_subspace_within<R: Rng + ?Sized>(
    rng: &mut R,
    parent: &Subspace,
    k: usize,
    field: Field,
    policy: &NumericPolicy,
) -> Result<Subspace, SubspaceError> {
    let n = parent.ambient_dim();
    if k > parent.dim() {
        return Err(SubspaceError::RankExceedsDim { k, n: parent.dim() });
    }
    if k == 0 {
        return Ok(Subspace::zero(n));
    }
    loop {
        let mix = gaussian_matrix(rng, parent.dim(), k, field);
        let x = Subspace::from_matrix(parent.basis() * mix, policy)?;
        if x.dim() == k {
            return Ok(x);
        }
    }
}
