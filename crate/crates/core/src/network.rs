//! Symmetric diamond network parameters and the five parameter regimes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A diamond network with `n_relays` identical relays.
///
/// `g` is the power gain from the source to every relay and `h` the power gain
/// from every relay to the destination. One of the two may be `+inf`; that
/// sentinel only appears in class-wise relaxations of asymmetric networks and
/// most operations reject it through [`SymmetricNetwork::require_finite`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricNetwork<T> {
    n_relays: usize,
    g: T,
    h: T,
}

impl<T: Scalar> SymmetricNetwork<T> {
    /// Network with finite positive gains.
    pub fn new(n_relays: usize, g: T, h: T) -> Result<Self> {
        let net = Self::with_sentinels(n_relays, g, h)?;
        net.require_finite()?;
        Ok(net)
    }

    /// Network whose `g` or `h` (not both) may be `+inf`.
    pub fn with_sentinels(n_relays: usize, g: T, h: T) -> Result<Self> {
        if n_relays < 1 {
            return Err(Error::RelayCount {
                got: n_relays,
                min: 1,
            });
        }
        check_gain("g", g)?;
        check_gain("h", h)?;
        if g.is_infinite() && h.is_infinite() {
            return Err(Error::BothGainsInfinite);
        }
        Ok(Self { n_relays, g, h })
    }

    pub fn n_relays(&self) -> usize {
        self.n_relays
    }

    pub fn g(&self) -> T {
        self.g
    }

    pub fn h(&self) -> T {
        self.h
    }

    /// Relay count as a scalar.
    pub fn n(&self) -> T {
        T::count(self.n_relays)
    }

    pub fn is_finite(&self) -> bool {
        self.g.is_finite() && self.h.is_finite()
    }

    pub fn require_finite(&self) -> Result<()> {
        if self.g.is_infinite() {
            return Err(Error::InfiniteGain { name: "g" });
        }
        if self.h.is_infinite() {
            return Err(Error::InfiniteGain { name: "h" });
        }
        Ok(())
    }

    /// The closed-form theorems are stated for at least two relays.
    pub fn within_theorem_range(&self) -> bool {
        self.n_relays >= 2
    }
}

fn check_gain<T: Scalar>(name: &'static str, value: T) -> Result<()> {
    // NaN fails `> 0`
    if value > T::zero() {
        Ok(())
    } else {
        Err(Error::NonPositiveGain {
            name,
            value: value.as_f64(),
        })
    }
}

/// Which of the five parameter cases of the closed-form bounds applies.
///
/// Variants are listed in matching order; on a boundary the first match wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// `max{g, N h} >= 1`.
    High,
    /// `max{g, N h} < 1` and `g <= h`.
    BcLimited,
    /// `max{g, N h} < 1`, `h < g < N^2 h` and `N sqrt(g h) >= 1`.
    ProductHigh,
    /// `max{g, N h} < 1`, `h < g < N^2 h` and `N sqrt(g h) < 1`.
    ProductLow,
    /// `max{g, N h} < 1` and `g >= N^2 h`.
    MacLimited,
}

impl Regime {
    pub const ALL: [Regime; 5] = [
        Regime::High,
        Regime::BcLimited,
        Regime::ProductHigh,
        Regime::ProductLow,
        Regime::MacLimited,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::High => "HIGH",
            Regime::BcLimited => "BC_LIMITED",
            Regime::ProductHigh => "PRODUCT_HIGH",
            Regime::ProductLow => "PRODUCT_LOW",
            Regime::MacLimited => "MAC_LIMITED",
        }
    }

    /// The defining predicate of this regime, ignoring the tie-breaking order.
    pub fn predicate<T: Scalar>(self, net: &SymmetricNetwork<T>) -> bool {
        let (n, g, h) = (net.n(), net.g(), net.h());
        let one = T::one();
        let low = g.max(n * h) < one;
        let between = h < g && g < n * n * h;
        let product = n * (g * h).sqrt();
        match self {
            Regime::High => !low,
            Regime::BcLimited => low && g <= h,
            Regime::ProductHigh => low && between && product >= one,
            Regime::ProductLow => low && between && product < one,
            Regime::MacLimited => low && g >= n * n * h,
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
