//! Brute-force validation of the refined cut-set bound.
//!
//! Rebuilds the equicorrelated input covariance explicitly, evaluates the
//! generalized Schur complement of each cut numerically, and enumerates all
//! `2^N` relay subsets. None of this calls into the closed-form `eta`; it is
//! an independent route used to check it.
//!
//! Relay indices in [`CutSubset`] are zero-based.

use rayon::prelude::*;

use crate::converse::{check_correlation, eta};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::network::SymmetricNetwork;
use crate::scalar::Scalar;

/// Largest relay count accepted by subset enumeration.
pub const MAX_ENUMERATED_RELAYS: usize = 20;
/// Relative eigenvalue (and pivot) cutoff for generalized inverses.
pub const PINV_REL_TOL: f64 = 1e-12;
/// Absolute asymmetry accepted by [`CovarianceMatrix::new`].
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted by [`CovarianceMatrix::new`], relative to the trace.
pub const PSD_REL_TOL: f64 = 1e-9;
/// Quadratic forms within this (relative) distance below zero clamp to zero.
pub const NEGATIVE_CLAMP: f64 = 1e-9;

/// A symmetric positive semidefinite relay-input covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix<T> {
    matrix: DenseMatrix<T>,
    equicorrelation: Option<T>,
}

impl<T: Scalar> CovarianceMatrix<T> {
    /// Validates and wraps arbitrary row-major entries.
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::MatrixShape);
        }
        let matrix = DenseMatrix::from_fn(dim, dim, |i, j| rows[i][j]);
        let asym = matrix.max_asymmetry();
        if !(asym <= T::lit(SYMMETRY_TOL)) {
            return Err(Error::NotSymmetric(asym.as_f64()));
        }
        let (values, _) = matrix.symmetric_eigen();
        let smallest = values.iter().copied().fold(T::infinity(), T::min);
        if smallest < -T::lit(PSD_REL_TOL) * matrix.trace().abs() {
            return Err(Error::NotPsd(smallest.as_f64()));
        }
        Ok(Self {
            matrix,
            equicorrelation: None,
        })
    }

    /// `rho * ones + (1 - rho) * identity`.
    pub fn equicorrelated(dim: usize, rho: T) -> Result<Self> {
        if dim == 0 {
            return Err(Error::RelayCount { got: 0, min: 1 });
        }
        check_correlation(rho, dim)?;
        let matrix = DenseMatrix::from_fn(dim, dim, |i, j| if i == j { T::one() } else { rho });
        Ok(Self {
            matrix,
            equicorrelation: Some(rho),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.matrix[(i, j)]
    }

    /// The common off-diagonal value, if built by [`CovarianceMatrix::equicorrelated`].
    pub fn equicorrelation(&self) -> Option<T> {
        self.equicorrelation
    }

    /// `1' Q 1`.
    pub fn total(&self) -> T {
        self.matrix.sum()
    }

    /// Convex combination `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Self, lambda: T) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::MatrixShape);
        }
        let d = self.dim();
        let rows = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| lambda * self.get(i, j) + (T::one() - lambda) * other.get(i, j))
                    .collect()
            })
            .collect();
        Self::new(rows)
    }
}

/// A set of relays on the source side of a cut.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutSubset {
    members: Vec<usize>,
}

impl CutSubset {
    pub fn new(mut members: Vec<usize>, n_relays: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&index) = members.iter().find(|&&i| i >= n_relays) {
            return Err(Error::RelayIndex { index, n_relays });
        }
        Ok(Self { members })
    }

    /// The first `n` relays.
    pub fn prefix(n: usize) -> Self {
        Self {
            members: (0..n).collect(),
        }
    }

    pub fn empty() -> Self {
        Self {
            members: Vec::new(),
        }
    }

    fn from_mask(mask: u32, n_relays: usize) -> Self {
        Self {
            members: (0..n_relays).filter(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn complement(&self, n_relays: usize) -> Vec<usize> {
        (0..n_relays)
            .filter(|i| self.members.binary_search(i).is_err())
            .collect()
    }
}

/// How the generalized inverse of the destination-side block is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionPath {
    /// Gauss-Jordan with partial pivoting, falling back to an eigendecomposition
    /// pseudo-inverse when the block is singular. Works for any covariance.
    Generic,
    /// Closed-form inverse of `(1 - rho) I + rho 11'` (Sherman-Morrison), or
    /// `11' / m^2` at `rho = 1`. Equicorrelated matrices only.
    Structured,
}

/// `1' (Q_SS - Q_{S,S^c} Q_{S^c,S^c}^- Q_{S^c,S}) 1` via the generic path.
pub fn schur_quadratic<T: Scalar>(q: &CovarianceMatrix<T>, s: &CutSubset) -> Result<T> {
    schur_quadratic_with(q, s, InversionPath::Generic)
}

pub fn schur_quadratic_with<T: Scalar>(
    q: &CovarianceMatrix<T>,
    s: &CutSubset,
    path: InversionPath,
) -> Result<T> {
    let dim = q.dim();
    if let Some(&index) = s.members().last().filter(|&&i| i >= dim) {
        return Err(Error::RelayIndex {
            index,
            n_relays: dim,
        });
    }
    if s.is_empty() {
        return Ok(T::zero());
    }
    let inside = s.members();
    let outside = s.complement(dim);
    let own = q.matrix.select(inside, inside).sum();
    if outside.is_empty() {
        return Ok(own);
    }
    // u = Q_{S^c,S} 1
    let cross = q.matrix.select(&outside, inside);
    let u: Vec<T> = (0..outside.len())
        .map(|i| (0..inside.len()).fold(T::zero(), |acc, j| acc + cross[(i, j)]))
        .collect();
    let solved = match path {
        InversionPath::Generic => {
            let block = q.matrix.select(&outside, &outside);
            let tol = T::lit(PINV_REL_TOL);
            let inverse = block
                .gauss_jordan_inverse(tol)
                .unwrap_or_else(|| block.symmetric_pinv(tol));
            inverse.mul_vec(&u)
        }
        InversionPath::Structured => {
            let rho = q.equicorrelation().ok_or_else(|| {
                Error::Internal("structured inversion needs an equicorrelated matrix".into())
            })?;
            structured_solve(rho, &u)
        }
    };
    let explained = u
        .iter()
        .zip(&solved)
        .fold(T::zero(), |acc, (&a, &b)| acc + a * b);
    let value = own - explained;
    if value >= T::zero() {
        Ok(value)
    } else if value >= -T::lit(NEGATIVE_CLAMP) * own.abs().max(T::one()) {
        Ok(T::zero())
    } else {
        Err(Error::Internal(format!(
            "negative Schur quadratic form {}",
            value.as_f64()
        )))
    }
}

/// Applies the generalized inverse of the `m x m` equicorrelated block to `u`.
fn structured_solve<T: Scalar>(rho: T, u: &[T]) -> Vec<T> {
    let m = T::count(u.len());
    let total = u.iter().fold(T::zero(), |acc, &x| acc + x);
    if rho == T::one() {
        let c = total / (m * m);
        return vec![c; u.len()];
    }
    let shrink = rho / (T::one() + (m - T::one()) * rho);
    let scale = T::one() / (T::one() - rho);
    u.iter().map(|&x| scale * (x - shrink * total)).collect()
}

/// Minimum over all `2^N` cuts of
/// `0.5 log2(1 + |S^c| g) + 0.5 log2(1 + h * schur_quadratic(Q_rho, S))`.
///
/// Returns the value and the lexicographically smallest minimising subset
/// (values within `1e-12` relative count as ties).
pub fn brute_force_min_cut<T: Scalar>(net: &SymmetricNetwork<T>, rho: T) -> Result<(T, CutSubset)> {
    net.require_finite()?;
    let n_relays = net.n_relays();
    if n_relays > MAX_ENUMERATED_RELAYS {
        return Err(Error::TooManyRelays {
            n_relays,
            limit: MAX_ENUMERATED_RELAYS,
        });
    }
    let q = CovarianceMatrix::equicorrelated(n_relays, rho)?;
    let (g, h) = (net.g(), net.h());
    let values: Vec<T> = (0u32..1 << n_relays)
        .into_par_iter()
        .map(|mask| {
            let s = CutSubset::from_mask(mask, n_relays);
            let dest_side = T::count(n_relays - s.len());
            schur_quadratic(&q, &s)
                .map(|form| (dest_side * g).half_log2_1p() + (h * form).half_log2_1p())
        })
        .collect::<Result<_>>()?;
    let min = values.iter().copied().fold(T::infinity(), T::min);
    let slack = T::lit(1e-12) * min.abs().max(T::one());
    let subset = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v <= min + slack)
        .map(|(mask, _)| CutSubset::from_mask(mask as u32, n_relays))
        .min()
        .expect("at least one subset attains the minimum");
    Ok((min, subset))
}

/// Closed-form `eta` against both numeric inversion paths on the prefix cut `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EtaCheck<T> {
    pub n: usize,
    pub closed: T,
    pub numeric: T,
    pub structured: T,
    /// `|closed - numeric|`.
    pub abs_err: T,
    /// `|numeric - structured|`.
    pub path_gap: T,
}

impl<T: Scalar> EtaCheck<T> {
    /// Whether the closed form agrees within `1e-9 * max(1, closed)` and the two
    /// inversion paths within `1e-10`.
    pub fn passes(&self) -> bool {
        self.abs_err <= T::lit(1e-9) * self.closed.abs().max(T::one())
            && self.path_gap <= T::lit(1e-10)
    }
}

pub fn oracle_check_eta<T: Scalar>(n_relays: usize, rho: T, n: usize) -> Result<EtaCheck<T>> {
    if n_relays < 2 {
        return Err(Error::RelayCount {
            got: n_relays,
            min: 2,
        });
    }
    if n_relays > MAX_ENUMERATED_RELAYS {
        return Err(Error::TooManyRelays {
            n_relays,
            limit: MAX_ENUMERATED_RELAYS,
        });
    }
    let closed = eta(rho, n, n_relays)?;
    let q = CovarianceMatrix::equicorrelated(n_relays, rho)?;
    let s = CutSubset::prefix(n);
    let numeric = schur_quadratic_with(&q, &s, InversionPath::Generic)?;
    let structured = schur_quadratic_with(&q, &s, InversionPath::Structured)?;
    Ok(EtaCheck {
        n,
        closed,
        numeric,
        structured,
        abs_err: (closed - numeric).abs(),
        path_gap: (numeric - structured).abs(),
    })
}
