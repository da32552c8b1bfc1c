use diamond_relay::asymmetric::{partition, AsymmetricNetwork};
use diamond_relay::converse::{cutset_at_correlation, eta};
use diamond_relay::cut_oracle::brute_force_min_cut;
use diamond_relay::report::{BoundReport, GapCertificate};
use diamond_relay::{
    af_rate, bc_mac_bound, bursty_af_rate, independent_cuts_bound, optimal_duty_cycle,
    thm1_lower_bound, thm2_upper_bound, DutyCycle, SymmetricNetwork,
};
use proptest::prelude::*;

fn gain() -> impl Strategy<Value = f64> {
    (-8.0f64..=8.0).prop_map(|e| 10f64.powf(e))
}

fn network(max_relays: usize) -> impl Strategy<Value = SymmetricNetwork<f64>> {
    (2..=max_relays, gain(), gain()).prop_map(|(n, g, h)| SymmetricNetwork::new(n, g, h).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn full_duty_cycle_is_af(net in network(1024)) {
        prop_assert_eq!(bursty_af_rate(&net, DutyCycle::full()).unwrap(), af_rate(&net).unwrap());
    }

    #[test]
    fn bounds_are_ordered(net in network(1024)) {
        let report = BoundReport::compute(&net).unwrap();
        prop_assert!(report.violations().is_empty(), "{:?}", report.violations());
        prop_assert!(report.r_af <= report.r_bursty_best + 1e-12);
        prop_assert!(report.thm1_lower <= report.r_bursty_best + 1e-9);
        prop_assert!(report.independent_cuts <= report.bc_mac + 1e-12);
    }

    #[test]
    fn gaps_are_certified(net in network(1024)) {
        let cert = GapCertificate::compute(&net).unwrap();
        prop_assert!(cert.additive_holds(), "{:?}", cert);
        prop_assert!(cert.multiplicative_holds(), "{:?}", cert);
        let (lower, _) = thm1_lower_bound(&net).unwrap();
        let (upper, _) = thm2_upper_bound(&net).unwrap();
        prop_assert!(lower <= upper);
    }

    #[test]
    fn af_rate_grows_with_gains(net in network(256), factor in 1.0f64..10.0) {
        let base = af_rate(&net).unwrap();
        let more_g = SymmetricNetwork::new(net.n_relays(), net.g() * factor, net.h()).unwrap();
        let more_h = SymmetricNetwork::new(net.n_relays(), net.g(), net.h() * factor).unwrap();
        prop_assert!(af_rate(&more_g).unwrap() >= base);
        prop_assert!(af_rate(&more_h).unwrap() >= base);
        prop_assert!(independent_cuts_bound(&more_g).unwrap() >= independent_cuts_bound(&net).unwrap());
        prop_assert!(independent_cuts_bound(&more_h).unwrap() >= independent_cuts_bound(&net).unwrap());
    }

    #[test]
    fn duty_cycle_optimum_dominates_grid(net in network(256), delta in 1e-6f64..=1.0) {
        let best = optimal_duty_cycle(&net).unwrap().rate;
        let probe = bursty_af_rate(&net, DutyCycle::new(delta).unwrap()).unwrap();
        prop_assert!(probe <= best + 1e-9 * best.max(1.0));
        prop_assert!(best <= bc_mac_bound(&net).unwrap() + 1e-9);
    }

    #[test]
    fn eta_boundaries_and_range(n_relays in 2usize..=64, rho in 0.0f64..=1.0, pick in 0usize..1000) {
        let n = pick % (n_relays + 1);
        let big_n = n_relays as f64;
        prop_assert_eq!(eta(rho, 0, n_relays).unwrap(), 0.0);
        prop_assert_eq!(eta(rho, n_relays, n_relays).unwrap(), big_n * (1.0 + (big_n - 1.0) * rho));
        let value = eta(rho, n, n_relays).unwrap();
        prop_assert!(value >= 0.0);
        if n < n_relays {
            prop_assert!(value <= big_n * big_n / (big_n - n as f64) * (1.0 + 1e-12));
        }
        if rho == 0.0 {
            prop_assert!((value - n as f64).abs() <= 1e-12 * big_n);
        }
    }

    #[test]
    fn eta_full_cut_grows_with_rho(n_relays in 2usize..=64, a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(eta(lo, n_relays, n_relays).unwrap() <= eta(hi, n_relays, n_relays).unwrap());
    }

    #[test]
    fn brute_force_matches_reduction(n_relays in 2usize..=8, rho in 0.0f64..0.999, g in gain(), h in gain()) {
        let net = SymmetricNetwork::new(n_relays, g, h).unwrap();
        let (brute, _) = brute_force_min_cut(&net, rho).unwrap();
        let reduced = cutset_at_correlation(&net, rho).unwrap();
        prop_assert!((brute - reduced).abs() <= 1e-9 * reduced.max(1.0), "{} vs {}", brute, reduced);
    }

    #[test]
    fn partition_covers_relays(gains in prop::collection::vec((gain(), gain()), 2..=48)) {
        let (g, h): (Vec<f64>, Vec<f64>) = gains.into_iter().unzip();
        let n = g.len();
        let part = partition(&AsymmetricNetwork::new(g, h).unwrap()).unwrap();
        prop_assert!(part.is_disjoint_cover(n));
    }
}
