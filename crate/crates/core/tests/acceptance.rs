//! End-to-end acceptance checks. Runs as a plain binary so every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use diamond_relay::asymmetric::{self, AsymmetricNetwork};
use diamond_relay::channel_sim::{validate_af_snr, SimConfig};
use diamond_relay::converse::cutset_at_correlation;
use diamond_relay::cut_oracle::{brute_force_min_cut, oracle_check_eta};
use diamond_relay::report::{certify_sweep, counterexample, Family, SweepSpec};
use diamond_relay::{
    af_rate, bc_mac_bound, bursty_af_rate, independent_cuts_bound, optimal_duty_cycle,
    thm1_lower_bound, DutyCycle, SymmetricNetwork, ADDITIVE_GAP, MULTIPLICATIVE_GAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail = format!("{} [{:.2} s]", out.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        if elapsed > limit {
            out.pass = false;
            out.detail = format!("{} exceeds {:.0} s budget", out.detail, limit.as_secs_f64());
        }
    }
    out
}

fn additive_certificate() -> Outcome {
    let rows = certify_sweep::<f64>(&SweepSpec::default_grid()).expect("default sweep is valid");
    let (point, worst) = rows
        .iter()
        .max_by(|a, b| a.1.additive_gap.total_cmp(&b.1.additive_gap))
        .map(|(p, c)| (*p, c.additive_gap))
        .unwrap();
    Outcome {
        pass: rows.len() == 10 * 33 * 33 && worst <= ADDITIVE_GAP + 1e-9,
        detail: format!(
            "{} points, max gap {worst:.12} at {point:?}, limit {ADDITIVE_GAP:.12}",
            rows.len()
        ),
    }
}

fn multiplicative_certificate() -> Outcome {
    let rows = certify_sweep::<f64>(&SweepSpec::default_grid()).expect("default sweep is valid");
    let (point, worst) = rows
        .iter()
        .max_by(|a, b| {
            a.1.multiplicative_ratio
                .total_cmp(&b.1.multiplicative_ratio)
        })
        .map(|(p, c)| (*p, c.multiplicative_ratio))
        .unwrap();
    Outcome {
        pass: rows.len() == 10 * 33 * 33 && worst <= MULTIPLICATIVE_GAP * (1.0 + 1e-6),
        detail: format!(
            "{} points, max ratio {worst:.10} at {point:?}, limit {MULTIPLICATIVE_GAP:.10}",
            rows.len()
        ),
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rhos: Vec<f64> = (0..10).map(|k| k as f64 / 10.0).collect();
    rhos.extend([0.99, 1.0]);
    let (mut checks, mut worst_rel, mut worst_gap) = (0usize, 0.0f64, 0.0f64);
    let mut failures = Vec::new();
    for n_relays in 2..=12 {
        for &rho in &rhos {
            for n in 0..=n_relays {
                let c = oracle_check_eta(n_relays, rho, n).expect("valid oracle input");
                checks += 1;
                worst_rel = worst_rel.max(c.abs_err / c.closed.max(1.0));
                worst_gap = worst_gap.max(c.path_gap);
                if !(c.abs_err <= 1e-9 * c.closed.max(1.0) && c.path_gap <= 1e-10) {
                    failures.push((n_relays, rho, n));
                }
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "{checks} (N, rho, n) triples, max scaled error {worst_rel:.2e}, max path gap {worst_gap:.2e}, failures {failures:?}"
        ),
    }
}

fn subset_reduction() -> Outcome {
    let (mut checks, mut worst) = (0usize, 0.0f64);
    let mut failures = Vec::new();
    for n_relays in 2..=12 {
        for rho in [0.0f64, 0.25, 0.5, 0.75, 0.99] {
            for g in [0.01, 1.0, 100.0] {
                for h in [0.01, 1.0, 100.0] {
                    let net = SymmetricNetwork::new(n_relays, g, h).unwrap();
                    let (brute, _) = brute_force_min_cut(&net, rho).unwrap();
                    let reduced = cutset_at_correlation(&net, rho).unwrap();
                    let err = (brute - reduced).abs();
                    checks += 1;
                    worst = worst.max(err);
                    if err > 1e-9 {
                        failures.push((n_relays, rho, g, h));
                    }
                }
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("{checks} cases, max |brute - reduced| {worst:.2e}, failures {failures:?}"),
    }
}

fn additive_counterexample() -> Outcome {
    let ns: Vec<usize> = [8, 10, 12, 14, 16].iter().map(|&e| 1usize << e).collect();
    let rows = counterexample::<f64>(Family::Additive, &ns, false).unwrap();
    let diffs: Vec<f64> = rows.iter().map(|r| r.difference).collect();
    let steps: Vec<f64> = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    let increasing = steps.iter().all(|&s| s > 0.0);
    let top_step = *steps.last().unwrap();
    Outcome {
        pass: increasing && top_step >= 0.2,
        detail: format!(
            "bc_mac - thm2_upper at N=2^8..2^16: {}; steps {}; top step {top_step:.4} (need >= 0.2)",
            fmt_list(&diffs),
            fmt_list(&steps)
        ),
    }
}

fn multiplicative_counterexample() -> Outcome {
    let rows = counterexample::<f64>(Family::Multiplicative, &[64, 4096], false).unwrap();
    let growth = rows[1].ratio / rows[0].ratio;
    Outcome {
        pass: growth >= 4.0,
        detail: format!(
            "bc_mac/thm2_upper: {:.4} at N=64, {:.4} at N=4096, growth {growth:.4} (need >= 4)",
            rows[0].ratio, rows[1].ratio
        ),
    }
}

fn asymmetric_certificate() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let (mut worst, mut covers, mut holds) = (0.0f64, 0usize, 0usize);
    let instances = 500;
    for _ in 0..instances {
        let n = rng.gen_range(2..=64usize);
        let mut draw = || 10f64.powf(rng.gen_range(-6.0..=6.0));
        let g: Vec<f64> = (0..n).map(|_| draw()).collect();
        let h: Vec<f64> = (0..n).map(|_| draw()).collect();
        let net = AsymmetricNetwork::new(g, h).unwrap();
        let report = asymmetric::analyze(&net).unwrap();
        covers += usize::from(report.partition.is_disjoint_cover(n));
        holds += usize::from(report.certificate.ratio <= report.certificate.bound);
        worst = worst.max(report.certificate.ratio / report.certificate.bound);
    }
    Outcome {
        pass: covers == instances && holds == instances,
        detail: format!(
            "{instances} instances: {covers} disjoint covers, {holds} within 112 L~^2, max ratio/bound {worst:.3e}"
        ),
    }
}

fn monte_carlo() -> Outcome {
    let net = SymmetricNetwork::new(2, 1.0, 1.0).unwrap();
    let cfg = SimConfig::new(net, 0.5f64.sqrt(), 1_000_000, 42).unwrap();
    let v = validate_af_snr(&cfg).unwrap();
    let se = v.result.std_errors;
    let snr_ok = (v.est_snr - 1.0).abs() <= 4.0 * se.output_snr;
    let power_ok = (v.est_relay_power - 1.0).abs() <= 4.0 * se.relay_power;
    Outcome {
        pass: snr_ok && power_ok,
        detail: format!(
            "snr {:.6} (se {:.2e}, z {:.2}), relay power {:.6} (se {:.2e}, z {:.2})",
            v.est_snr, se.output_snr, v.z_score, v.est_relay_power, se.relay_power, v.relay_z_score
        ),
    }
}

fn internal_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let points = 10_000;
    let mut failures = Vec::new();
    for _ in 0..points {
        let n = rng.gen_range(2..=1024usize);
        let g = 10f64.powf(rng.gen_range(-8.0..=8.0));
        let h = 10f64.powf(rng.gen_range(-8.0..=8.0));
        let net = SymmetricNetwork::new(n, g, h).unwrap();
        let (lower, _) = thm1_lower_bound(&net).unwrap();
        let best = optimal_duty_cycle(&net).unwrap().rate;
        let indep = independent_cuts_bound(&net).unwrap();
        let bcmac = bc_mac_bound(&net).unwrap();
        let full = bursty_af_rate(&net, DutyCycle::full()).unwrap();
        let chain = lower <= best + 1e-9 && best <= indep + 1e-9 && indep <= bcmac + 1e-9;
        let exact = full == af_rate(&net).unwrap();
        if !(chain && exact) {
            failures.push((n, g, h));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("{points} points, chain or delta=1 identity broken at {failures:?}"),
    }
}

fn fmt_list(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.4}")).collect();
    format!("[{}]", parts.join(", "))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);
    let criteria: Vec<Criterion> = vec![
        ("additive gap certificate", secs(5), additive_certificate),
        (
            "multiplicative gap certificate",
            secs(5),
            multiplicative_certificate,
        ),
        (
            "closed-form eta vs numeric Schur complement",
            secs(10),
            oracle_equivalence,
        ),
        (
            "subset-to-integer cut reduction",
            secs(60),
            subset_reduction,
        ),
        (
            "additive counterexample growth",
            None,
            additive_counterexample,
        ),
        (
            "multiplicative counterexample growth",
            None,
            multiplicative_counterexample,
        ),
        (
            "asymmetric ratio certificate",
            secs(30),
            asymmetric_certificate,
        ),
        ("amplify-and-forward Monte Carlo", secs(2), monte_carlo),
        (
            "bound ordering and duty-cycle identity",
            secs(5),
            internal_consistency,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let out = timed(limit, run);
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {tag} {name}: {}", i + 1, out.detail);
        failed += usize::from(!out.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
