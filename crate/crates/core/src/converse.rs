//! Capacity upper bounds for symmetric diamond networks.
//!
//! Every bound here is a cut-set bound. A cut puts `n` relays on the source
//! side; its value is the single-input multiple-output rate to the `N - n`
//! destination-side relays plus the rate the `n` source-side relays deliver
//! to the destination given what the other relays already know. With
//! equicorrelated relay inputs of correlation `rho`, that second term has
//! effective coherent power [`eta`].

use serde::Serialize;

use crate::achievability::regime_of;
use crate::error::{Error, Result};
use crate::network::{Regime, SymmetricNetwork};
use crate::scalar::Scalar;
use crate::search::{grid_refine_max, linspace};

/// Number of uniform grid points in the correlation search.
pub const RHO_GRID_POINTS: usize = 1024;
/// Upper end of the correlation search; `rho = 1` itself is excluded.
pub const RHO_CAP: f64 = 1.0 - 1e-6;
/// Bracket width at which the golden-section refinement stops.
pub const RHO_TOL: f64 = 1e-9;

/// Common pairwise correlation of the relay inputs, in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Correlation<T>(T);

impl<T: Scalar> Correlation<T> {
    pub fn new(rho: T) -> Result<Self> {
        if rho >= T::zero() && rho < T::one() {
            Ok(Self(rho))
        } else {
            Err(Error::Correlation {
                rho: rho.as_f64(),
                lower: 0.0,
            })
        }
    }

    pub fn get(self) -> T {
        self.0
    }
}

/// Smallest correlation for which the equicorrelated `N x N` matrix is PSD.
pub fn correlation_floor<T: Scalar>(n_relays: usize) -> T {
    if n_relays <= 1 {
        -T::one()
    } else {
        -T::one() / T::count(n_relays - 1)
    }
}

pub(crate) fn check_correlation<T: Scalar>(rho: T, n_relays: usize) -> Result<()> {
    let lower = correlation_floor::<T>(n_relays);
    if rho >= lower && rho <= T::one() {
        Ok(())
    } else {
        Err(Error::Correlation {
            rho: rho.as_f64(),
            lower: lower.as_f64(),
        })
    }
}

/// `0.5 log2((1 + a)(1 + b))`: a source-to-relays term with SNR `a` plus a
/// relays-to-destination term with SNR `b`, using one logarithm.
#[inline]
fn two_hop<T: Scalar>(a: T, b: T) -> T {
    (a + b + a * b).half_log2_1p()
}

fn eta_unchecked<T: Scalar>(rho: T, n: usize, n_relays: usize) -> T {
    let one = T::one();
    let big_n = T::count(n_relays);
    if n == 0 {
        return T::zero();
    }
    if n == n_relays {
        return big_n * (one + (big_n - one) * rho);
    }
    let nn = T::count(n);
    let rest = T::count(n_relays - n);
    // n (1 + (n-1) rho - n (N-n) rho^2 / (1 + (N-n-1) rho)), with the numerator
    // factored so that rho -> 1 does not cancel catastrophically
    let value = nn * (one - rho) * (one + (big_n - one) * rho) / (one + (rest - one) * rho);
    value.max(T::zero())
}

/// Coherent power `1' Q_{[n]|[n]^c} 1` of `n` source-side relays after
/// conditioning on the other `N - n`, for equicorrelated inputs.
///
/// Boundary values are the limits: `0` for `n = 0`, `N (1 + (N-1) rho)` for
/// `n = N`, and `0` for `rho = 1` with `0 < n < N`.
pub fn eta<T: Scalar>(rho: T, n: usize, n_relays: usize) -> Result<T> {
    if n_relays < 1 {
        return Err(Error::RelayCount {
            got: n_relays,
            min: 1,
        });
    }
    if n > n_relays {
        return Err(Error::CutIndex { n, n_relays });
    }
    check_correlation(rho, n_relays)?;
    Ok(eta_unchecked(rho, n, n_relays))
}

/// Minimum of the broadcast cut `0.5 log(1 + N g)` and the multiple-access cut
/// `0.5 log(1 + N^2 h)`. Accepts one infinite gain.
pub fn bc_mac_bound<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<T> {
    let n = net.n();
    let bc = (n * net.g()).half_log2_1p();
    let mac = (n * n * net.h()).half_log2_1p();
    Ok(bc.min(mac))
}

/// Cut-set bound with the destination-side conditioning dropped and min/max
/// exchanged: `min_n 0.5 log(1 + (N-n) g) + 0.5 log(1 + n^2 h)`.
pub fn independent_cuts_bound<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<T> {
    net.require_finite()?;
    let (g, h) = (net.g(), net.h());
    let n_relays = net.n_relays();
    let value = (0..=n_relays)
        .map(|n| {
            let source_side = T::count(n);
            two_hop(T::count(n_relays - n) * g, source_side * source_side * h)
        })
        .fold(T::infinity(), T::min);
    Ok(value)
}

/// Inner minimum over cut sizes at a fixed correlation:
/// `min_n 0.5 log(1 + (N-n) g) + 0.5 log(1 + eta(rho, n) h)`.
pub fn cutset_at_correlation<T: Scalar>(net: &SymmetricNetwork<T>, rho: T) -> Result<T> {
    net.require_finite()?;
    check_correlation(rho, net.n_relays())?;
    Ok(CutsetObjective::new(net).value(rho))
}

/// Precomputed per-cut broadcast terms for repeated evaluation over `rho`.
struct CutsetObjective<T> {
    n_relays: usize,
    h: T,
    bc: Vec<T>,
}

impl<T: Scalar> CutsetObjective<T> {
    fn new(net: &SymmetricNetwork<T>) -> Self {
        let n_relays = net.n_relays();
        let bc = (0..=n_relays)
            .map(|n| T::count(n_relays - n) * net.g())
            .collect();
        Self {
            n_relays,
            h: net.h(),
            bc,
        }
    }

    fn value(&self, rho: T) -> T {
        let mut best = T::infinity();
        for (n, &a) in self.bc.iter().enumerate() {
            let b = eta_unchecked(rho, n, self.n_relays) * self.h;
            // the two-hop value is increasing in a + b + ab, so minimise that first
            let x = a + b + a * b;
            if x < best {
                best = x;
            }
        }
        best.half_log2_1p()
    }
}

/// Outcome of the correlation search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoOptimum<T> {
    /// Largest inner-minimum value found, in bits.
    pub value: T,
    /// Correlation attaining `value`.
    pub rho: Correlation<T>,
}

/// Search resolution of [`rho_cutset_bound`], for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoSearchResolution {
    pub grid_points: usize,
    pub cap: f64,
    pub tol: f64,
}

pub const RHO_SEARCH: RhoSearchResolution = RhoSearchResolution {
    grid_points: RHO_GRID_POINTS,
    cap: RHO_CAP,
    tol: RHO_TOL,
};

/// Refined cut-set bound: `sup_{rho in [0,1)} min_n (...)`.
///
/// The supremum is located numerically (uniform grid, then golden-section on
/// the best cell), so the returned value can undershoot the true supremum by
/// the search resolution in [`RHO_SEARCH`]. Single-relay networks fall back
/// to [`bc_mac_bound`] with `rho = 0`.
pub fn rho_cutset_bound<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<RhoOptimum<T>> {
    net.require_finite()?;
    if net.n_relays() < 2 {
        return Ok(RhoOptimum {
            value: bc_mac_bound(net)?,
            rho: Correlation(T::zero()),
        });
    }
    let objective = CutsetObjective::new(net);
    let grid = linspace(T::zero(), T::lit(RHO_CAP), RHO_GRID_POINTS);
    let best = grid_refine_max(|rho| objective.value(rho), &grid, T::lit(RHO_TOL));
    Ok(RhoOptimum {
        value: best.value,
        rho: Correlation::new(best.x)?,
    })
}

/// Weakened refined bound with `eta(rho, n)` replaced by `N^2 / (N - n)`.
/// The `n = N` cut is infinite and never attains the minimum.
pub fn simplified_cutset_bound<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<T> {
    net.require_finite()?;
    let n_relays = net.n_relays();
    let big_n = net.n();
    let value = (0..n_relays)
        .map(|n| {
            let dest_side = T::count(n_relays - n);
            two_hop(dest_side * net.g(), big_n * big_n / dest_side * net.h())
        })
        .fold(T::infinity(), T::min);
    Ok(value)
}

/// Regime-wise closed-form capacity upper bound.
///
/// An infinite `h` maps to the broadcast cut and an infinite `g` to the
/// multiple-access cut; both are reported as [`Regime::High`].
pub fn thm2_upper_bound<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<(T, Regime)> {
    let (n, g, h) = (net.n(), net.g(), net.h());
    if h.is_infinite() {
        return Ok(((n * g).half_log2_1p(), Regime::High));
    }
    if g.is_infinite() {
        return Ok(((n * n * h).half_log2_1p(), Regime::High));
    }
    let regime = regime_of(net);
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let value = match regime {
        Regime::High => (n * g.min(n * h)).half_log2_1p(),
        Regime::BcLimited => (n * g).half_log2_1p(),
        Regime::ProductHigh => (two * n * n * g * h).half_log2_1p() + half,
        Regime::ProductLow => (two * n * (g * h).sqrt()).log2_1p(),
        Regime::MacLimited => (n * n * h).half_log2_1p(),
    };
    Ok((value, regime))
}
