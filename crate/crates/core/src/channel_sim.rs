//! Monte Carlo simulation of one amplify-and-forward block.
//!
//! Each symbol draws a unit-power Gaussian source symbol `X` and unit-variance
//! noises `Z_n` (relays) and `Z` (destination). Relay `n` sends
//! `X_n = alpha (sqrt(g) X + Z_n)`; the destination sees
//! `Y = alpha N sqrt(g h) X + alpha sqrt(h) sum Z_n + Z`. The signal and
//! noise parts of `Y` are accumulated separately, so the output SNR estimate
//! is a ratio of sample powers rather than a mutual-information estimate.
//!
//! Symbols are split into fixed-size shards. Shard `i` draws from a ChaCha20
//! stream `i` under the user seed and partial sums are combined in shard
//! order, so results are bit-identical for a fixed seed regardless of thread
//! scheduling. Accumulation is in `f64` for every scalar type.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::SymmetricNetwork;
use crate::scalar::Scalar;

/// Symbols per RNG stream.
pub const SHARD_SYMBOLS: u64 = 1 << 16;
/// Slack on the relay power constraint `alpha^2 <= 1 / (1 + g)`.
pub const POWER_SLACK: f64 = 1e-9;
/// Fewest symbols accepted by [`validate_af_snr`].
pub const MIN_VALIDATION_SYMBOLS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig<T> {
    net: SymmetricNetwork<T>,
    alpha: T,
    num_symbols: u64,
    seed: u64,
}

impl<T: Scalar> SimConfig<T> {
    pub fn new(net: SymmetricNetwork<T>, alpha: T, num_symbols: u64, seed: u64) -> Result<Self> {
        net.require_finite()?;
        let max_alpha_sq = T::one() / (T::one() + net.g());
        if !(alpha >= T::zero()) || alpha * alpha > max_alpha_sq + T::lit(POWER_SLACK) {
            return Err(Error::PowerInfeasible {
                alpha: alpha.as_f64(),
                max_alpha_sq: max_alpha_sq.as_f64(),
            });
        }
        if num_symbols < 1 {
            return Err(Error::SymbolCount {
                got: num_symbols,
                min: 1,
            });
        }
        Ok(Self {
            net,
            alpha,
            num_symbols,
            seed,
        })
    }

    /// Full-power amplification `alpha = 1 / sqrt(1 + g)`.
    pub fn full_power(net: SymmetricNetwork<T>, num_symbols: u64, seed: u64) -> Result<Self> {
        let alpha = (T::one() / (T::one() + net.g())).sqrt();
        Self::new(net, alpha, num_symbols, seed)
    }

    pub fn net(&self) -> &SymmetricNetwork<T> {
        &self.net
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn num_symbols(&self) -> u64 {
        self.num_symbols
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Standard errors of the three estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StdErrors<T> {
    pub output_snr: T,
    pub relay_power: T,
    pub source_power: T,
}

/// Sample estimates from one block. Standard errors are zero only when the
/// corresponding samples are identically zero (e.g. `alpha = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimResult<T> {
    pub est_output_snr: T,
    /// Mean of `X_n^2` over symbols and relays.
    pub est_relay_power: T,
    pub est_source_power: T,
    pub std_errors: StdErrors<T>,
    pub num_symbols: u64,
}

/// Per-shard raw moments. `a` is signal power, `b` noise power, `p` mean relay
/// power and `x` source power, each per symbol.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    a: f64,
    aa: f64,
    b: f64,
    bb: f64,
    ab: f64,
    p: f64,
    pp: f64,
    x: f64,
    xx: f64,
}

impl Moments {
    fn add(&mut self, o: &Moments) {
        self.a += o.a;
        self.aa += o.aa;
        self.b += o.b;
        self.bb += o.bb;
        self.ab += o.ab;
        self.p += o.p;
        self.pp += o.pp;
        self.x += o.x;
        self.xx += o.xx;
    }
}

fn run_shard(
    shard: u64,
    symbols: u64,
    seed: u64,
    n_relays: usize,
    alpha: f64,
    g: f64,
    h: f64,
) -> Moments {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    let (sqrt_g, sqrt_h) = (g.sqrt(), h.sqrt());
    let n = n_relays as f64;
    let gain = alpha * n * sqrt_g * sqrt_h;
    let mut m = Moments::default();
    for _ in 0..symbols {
        let x: f64 = StandardNormal.sample(&mut rng);
        let mut relay_noise = 0.0;
        let mut relay_power = 0.0;
        for _ in 0..n_relays {
            let z_n: f64 = StandardNormal.sample(&mut rng);
            let x_n = alpha * (sqrt_g * x + z_n);
            relay_power += x_n * x_n;
            relay_noise += z_n;
        }
        let z: f64 = StandardNormal.sample(&mut rng);
        let signal = gain * x;
        let noise = alpha * sqrt_h * relay_noise + z;
        let (a, b, p, xs) = (signal * signal, noise * noise, relay_power / n, x * x);
        m.a += a;
        m.aa += a * a;
        m.b += b;
        m.bb += b * b;
        m.ab += a * b;
        m.p += p;
        m.pp += p * p;
        m.x += xs;
        m.xx += xs * xs;
    }
    m
}

pub fn simulate_af<T: Scalar>(cfg: &SimConfig<T>) -> SimResult<T> {
    let total = cfg.num_symbols;
    let shards = total.div_ceil(SHARD_SYMBOLS);
    let (alpha, g, h) = (
        cfg.alpha.as_f64(),
        cfg.net.g().as_f64(),
        cfg.net.h().as_f64(),
    );
    let n_relays = cfg.net.n_relays();
    let partials: Vec<Moments> = (0..shards)
        .into_par_iter()
        .map(|i| {
            let symbols = SHARD_SYMBOLS.min(total - i * SHARD_SYMBOLS);
            run_shard(i, symbols, cfg.seed, n_relays, alpha, g, h)
        })
        .collect();
    let mut m = Moments::default();
    for p in &partials {
        m.add(p);
    }

    let t = total as f64;
    let mean = |s: f64| s / t;
    let var = |s: f64, ss: f64| (ss / t - (s / t) * (s / t)).max(0.0);
    let (ma, mb) = (mean(m.a), mean(m.b));
    let snr = ma / mb;
    let (va, vb) = (var(m.a, m.aa), var(m.b, m.bb));
    let cov = m.ab / t - ma * mb;
    // delta method for a ratio of means
    let snr_var =
        (va / (mb * mb) + ma * ma * vb / mb.powi(4) - 2.0 * ma * cov / mb.powi(3)).max(0.0) / t;
    let se = |s: f64, ss: f64| (var(s, ss) / t).sqrt();

    SimResult {
        est_output_snr: T::lit(snr),
        est_relay_power: T::lit(mean(m.p)),
        est_source_power: T::lit(mean(m.x)),
        std_errors: StdErrors {
            output_snr: T::lit(snr_var.sqrt()),
            relay_power: T::lit(se(m.p, m.pp)),
            source_power: T::lit(se(m.x, m.xx)),
        },
        num_symbols: total,
    }
}

/// `alpha^2 N^2 g h / (1 + alpha^2 N h)`.
pub fn closed_output_snr<T: Scalar>(net: &SymmetricNetwork<T>, alpha: T) -> T {
    let n = net.n();
    let a2 = alpha * alpha;
    a2 * n * n * net.g() * net.h() / (T::one() + a2 * n * net.h())
}

/// `alpha^2 (1 + g)`.
pub fn closed_relay_power<T: Scalar>(net: &SymmetricNetwork<T>, alpha: T) -> T {
    alpha * alpha * (T::one() + net.g())
}

/// Simulated estimates against closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnrValidation<T> {
    pub closed_snr: T,
    pub est_snr: T,
    pub z_score: T,
    pub closed_relay_power: T,
    pub est_relay_power: T,
    pub relay_z_score: T,
    pub result: SimResult<T>,
}

impl<T: Scalar> SnrValidation<T> {
    pub fn max_abs_z(&self) -> T {
        self.z_score.abs().max(self.relay_z_score.abs())
    }
}

fn z_score<T: Scalar>(est: T, closed: T, se: T) -> T {
    if se > T::zero() {
        (est - closed) / se
    } else if est == closed {
        T::zero()
    } else {
        T::infinity()
    }
}

pub fn validate_af_snr<T: Scalar>(cfg: &SimConfig<T>) -> Result<SnrValidation<T>> {
    if cfg.num_symbols < MIN_VALIDATION_SYMBOLS {
        return Err(Error::SymbolCount {
            got: cfg.num_symbols,
            min: MIN_VALIDATION_SYMBOLS,
        });
    }
    let result = simulate_af(cfg);
    let closed_snr = closed_output_snr(&cfg.net, cfg.alpha);
    let closed_relay_power = closed_relay_power(&cfg.net, cfg.alpha);
    Ok(SnrValidation {
        closed_snr,
        est_snr: result.est_output_snr,
        z_score: z_score(
            result.est_output_snr,
            closed_snr,
            result.std_errors.output_snr,
        ),
        closed_relay_power,
        est_relay_power: result.est_relay_power,
        relay_z_score: z_score(
            result.est_relay_power,
            closed_relay_power,
            result.std_errors.relay_power,
        ),
        result,
    })
}
