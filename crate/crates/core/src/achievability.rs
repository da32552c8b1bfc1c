//! Achievable rates for symmetric diamond networks.
//!
//! Amplify-and-forward (AF) turns the network into a point-to-point Gaussian
//! channel with gain `alpha N sqrt(g h)` and noise variance `1 + alpha^2 N h`.
//! Bursty AF transmits on a fraction `delta` of the time at power `1/delta`,
//! which is AF over gains `g/delta`, `h/delta` scaled by `delta`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::{Regime, SymmetricNetwork};
use crate::scalar::Scalar;
use crate::search::{grid_refine_max, logspace};

/// Number of log-uniform grid points in the duty-cycle search.
pub const DELTA_GRID_POINTS: usize = 256;
/// Smallest duty cycle on the search grid.
pub const DELTA_GRID_MIN: f64 = 1e-12;
/// Relative tolerance of the golden-section refinement (`|d delta| <= tol * delta`).
pub const DELTA_REL_TOL: f64 = 1e-10;

/// Fraction of time the bursty scheme is active, in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct DutyCycle<T>(T);

impl<T: Scalar> DutyCycle<T> {
    pub fn new(delta: T) -> Result<Self> {
        if delta > T::zero() && delta <= T::one() {
            Ok(Self(delta))
        } else {
            Err(Error::DutyCycle(delta.as_f64()))
        }
    }

    /// Continuous transmission.
    pub fn full() -> Self {
        Self(T::one())
    }

    pub fn get(self) -> T {
        self.0
    }
}

impl<T: fmt::Display> fmt::Display for DutyCycle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Bursty AF rate without input checks. `delta = 1` gives plain AF through the
/// identical arithmetic path.
fn bursty_rate_unchecked<T: Scalar>(n: T, g: T, h: T, delta: T) -> T {
    // (N^2 g h / delta^2) / (1 + g/delta + N h/delta), with delta factored out
    let snr = n * n * g * h / (delta * (delta + g + n * h));
    delta * snr.half_log2_1p()
}

/// Plain amplify-and-forward rate in bits per channel use.
pub fn af_rate<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<T> {
    bursty_af_rate(net, DutyCycle::full())
}

/// Bursty amplify-and-forward rate for duty cycle `delta`, in bits per channel use.
pub fn bursty_af_rate<T: Scalar>(net: &SymmetricNetwork<T>, delta: DutyCycle<T>) -> Result<T> {
    net.require_finite()?;
    Ok(bursty_rate_unchecked(
        net.n(),
        net.g(),
        net.h(),
        delta.get(),
    ))
}

/// Decode-and-forward rate: every relay decodes, then the relays beamform.
pub fn df_rate<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<T> {
    net.require_finite()?;
    let n = net.n();
    Ok(net.g().min(n * n * net.h()).half_log2_1p())
}

/// Regime of `net`, first match in declaration order of [`Regime`].
pub fn classify_regime<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<Regime> {
    net.require_finite()?;
    Ok(regime_of(net))
}

/// Classification that also accepts infinite-gain sentinels (which land in `High`).
pub(crate) fn regime_of<T: Scalar>(net: &SymmetricNetwork<T>) -> Regime {
    Regime::ALL
        .into_iter()
        .find(|r| r.predicate(net))
        .expect("regime predicates cover the parameter space")
}

/// Duty cycle used by the constructive lower bound in each regime, before clamping.
pub fn prescribed_duty_cycle<T: Scalar>(net: &SymmetricNetwork<T>, regime: Regime) -> T {
    let (n, g, h) = (net.n(), net.g(), net.h());
    match regime {
        Regime::High | Regime::ProductHigh => T::one(),
        Regime::BcLimited => n * g,
        Regime::ProductLow => n * (g * h).sqrt(),
        Regime::MacLimited => n * n * h,
    }
}

/// Result of the duty-cycle optimisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DutyCycleOptimum<T> {
    /// Maximising duty cycle.
    pub delta: DutyCycle<T>,
    /// Bursty AF rate at `delta`, in bits.
    pub rate: T,
    /// Regime-prescribed duty cycle after clamping into `(0, 1]`.
    pub prescribed: DutyCycle<T>,
    /// Bursty AF rate at the prescribed duty cycle.
    pub prescribed_rate: T,
    /// Whether the prescribed value had to be clamped.
    pub clamped: bool,
}

/// Maximises `delta -> R_delta` over `(0, 1]`.
///
/// The candidate set is the regime-prescribed duty cycle plus a log-uniform grid
/// on `[1e-12, 1]` refined by golden-section search in `ln(delta)`. The best
/// candidate is returned; the prescribed value wins ties.
pub fn optimal_duty_cycle<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<DutyCycleOptimum<T>> {
    net.require_finite()?;
    let (n, g, h) = (net.n(), net.g(), net.h());
    let regime = regime_of(net);

    let raw = prescribed_duty_cycle(net, regime);
    let tiny = T::lit(DELTA_GRID_MIN);
    let clamped_delta = raw.max(tiny).min(T::one());
    let clamped = clamped_delta != raw;
    let prescribed = DutyCycle::new(clamped_delta)?;
    let prescribed_rate = bursty_rate_unchecked(n, g, h, clamped_delta);

    let log_grid: Vec<T> = logspace(tiny, T::one(), DELTA_GRID_POINTS)
        .into_iter()
        .map(T::ln)
        .collect();
    let objective = |u: T| bursty_rate_unchecked(n, g, h, u.exp().min(T::one()));
    let found = grid_refine_max(objective, &log_grid, T::lit(DELTA_REL_TOL));

    let (delta, rate) = if found.value > prescribed_rate {
        (found.x.exp().min(T::one()), found.value)
    } else {
        (clamped_delta, prescribed_rate)
    };
    Ok(DutyCycleOptimum {
        delta: DutyCycle::new(delta)?,
        rate,
        prescribed,
        prescribed_rate,
        clamped,
    })
}

/// Regime-wise closed-form floor on the rate of optimally tuned bursty AF.
///
/// The guarantee is proven for `N >= 2`; single-relay networks are evaluated
/// with the same formulas (see [`SymmetricNetwork::within_theorem_range`]).
pub fn thm1_lower_bound<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<(T, Regime)> {
    net.require_finite()?;
    let regime = regime_of(net);
    let (n, g, h) = (net.n(), net.g(), net.h());
    let third = T::one() / T::lit(3.0);
    // 1/2 ln(4/3), the per-unit-duty-cycle rate factor
    let c = T::lit(0.5) * (T::lit(4.0) / T::lit(3.0)).ln();
    let value = match regime {
        Regime::High => (third * n * g.min(n * h)).half_log2_1p(),
        Regime::BcLimited => c * (n * g).log2_1p(),
        Regime::ProductHigh => (third * n * n * g * h).half_log2_1p(),
        Regime::ProductLow => c * (n * (g * h).sqrt()).log2_1p(),
        Regime::MacLimited => c * (n * n * h).log2_1p(),
    };
    Ok((value, regime))
}
