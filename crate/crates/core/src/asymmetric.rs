//! Networks with per-relay gains: star gains, the dyadic relay partition,
//! single-class relay selection, the aggregate parallel-network upper bound
//! and the resulting finite-`N` ratio certificate.
//!
//! Relay indices are zero-based throughout.

use std::fmt;

use serde::Serialize;

use crate::achievability::{optimal_duty_cycle, DutyCycleOptimum};
use crate::converse::{bc_mac_bound, thm2_upper_bound};
use crate::error::{Error, Result};
use crate::network::SymmetricNetwork;
use crate::scalar::Scalar;

/// Constant in the end-to-end certificate `C <= 112 L~^2 sup_delta R_delta`.
pub const CERTIFICATE_FACTOR: f64 = 112.0;

/// Per-relay gains `(g_n)`, `(h_n)`, all positive and finite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymmetricNetwork<T> {
    g: Vec<T>,
    h: Vec<T>,
}

impl<T: Scalar> AsymmetricNetwork<T> {
    pub fn new(g: Vec<T>, h: Vec<T>) -> Result<Self> {
        if g.len() != h.len() {
            return Err(Error::LengthMismatch {
                g: g.len(),
                h: h.len(),
            });
        }
        if g.is_empty() {
            return Err(Error::RelayCount { got: 0, min: 1 });
        }
        for (name, gains) in [("g", &g), ("h", &h)] {
            for &x in gains {
                if x.is_infinite() {
                    return Err(Error::InfiniteGain { name });
                }
                if !(x > T::zero()) {
                    return Err(Error::NonPositiveGain {
                        name,
                        value: x.as_f64(),
                    });
                }
            }
        }
        Ok(Self { g, h })
    }

    /// All relays share the gains of `net`.
    pub fn from_symmetric(net: &SymmetricNetwork<T>) -> Result<Self> {
        net.require_finite()?;
        Self::new(vec![net.g(); net.n_relays()], vec![net.h(); net.n_relays()])
    }

    pub fn n_relays(&self) -> usize {
        self.g.len()
    }

    pub fn g(&self) -> &[T] {
        &self.g
    }

    pub fn h(&self) -> &[T] {
        &self.h
    }

    /// Multiplies every gain by `c`.
    pub fn scaled(&self, c: T) -> Result<Self> {
        Self::new(
            self.g.iter().map(|&x| x * c).collect(),
            self.h.iter().map(|&x| x * c).collect(),
        )
    }

    fn require_pair(&self) -> Result<()> {
        if self.n_relays() < 2 {
            return Err(Error::RelayCount {
                got: self.n_relays(),
                min: 2,
            });
        }
        Ok(())
    }
}

/// `g* = max_n min{g_n, N^2 h_n}` and `h* = max_n min{h_n, g_n}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarGains<T> {
    pub g_star: T,
    pub h_star: T,
}

pub fn star_gains<T: Scalar>(net: &AsymmetricNetwork<T>) -> StarGains<T> {
    let n = T::count(net.n_relays());
    let n_sq = n * n;
    let mut g_star = T::zero();
    let mut h_star = T::zero();
    for (&g, &h) in net.g.iter().zip(&net.h) {
        g_star = g_star.max(g.min(n_sq * h));
        h_star = h_star.max(h.min(g));
    }
    StarGains { g_star, h_star }
}

/// A quantization class eligible for relay selection.
///
/// The derived order is the selection tie-break order:
/// `T1(0..=L)`, then `T2(0..=L)`, then `S(k, l)` row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassId {
    /// Relays with `h_n >= g_n` and `g_n` in the `l`-th dyadic cell below `g*`.
    T1(usize),
    /// Relays with `g_n >= N^2 h_n` and `h_n` in the `l`-th dyadic cell below `h*`.
    T2(usize),
    /// Remaining relays by their `(g, h)` dyadic cells.
    S(usize, usize),
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::T1(l) => write!(f, "T1_{l}"),
            ClassId::T2(l) => write!(f, "T2_{l}"),
            ClassId::S(k, l) => write!(f, "S_{k}_{l}"),
        }
    }
}

impl Serialize for ClassId {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Disjoint cover of the relay indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    /// Relays with `g_n <= g* / N^3`.
    pub t1: Vec<usize>,
    /// Relays outside `t1` with `h_n <= h* / N^3`.
    pub t2: Vec<usize>,
    pub t1_ell: Vec<Vec<usize>>,
    pub t2_ell: Vec<Vec<usize>>,
    /// `s_kl[k][l]`.
    pub s_kl: Vec<Vec<Vec<usize>>>,
    /// `floor(log2(N^3))`.
    pub l: usize,
    /// `(L+1)^2 + 2(L+1) + 2`, the total number of sets.
    pub l_tilde: usize,
}

impl Partition {
    /// Nonempty selectable classes in [`ClassId`] order.
    pub fn classes(&self) -> Vec<(ClassId, &[usize])> {
        let t1 = self
            .t1_ell
            .iter()
            .enumerate()
            .map(|(l, s)| (ClassId::T1(l), s.as_slice()));
        let t2 = self
            .t2_ell
            .iter()
            .enumerate()
            .map(|(l, s)| (ClassId::T2(l), s.as_slice()));
        let s = self.s_kl.iter().enumerate().flat_map(|(k, row)| {
            row.iter()
                .enumerate()
                .map(move |(l, s)| (ClassId::S(k, l), s.as_slice()))
        });
        t1.chain(t2)
            .chain(s)
            .filter(|(_, members)| !members.is_empty())
            .collect()
    }

    pub fn members(&self, class: ClassId) -> &[usize] {
        match class {
            ClassId::T1(l) => &self.t1_ell[l],
            ClassId::T2(l) => &self.t2_ell[l],
            ClassId::S(k, l) => &self.s_kl[k][l],
        }
    }

    /// Whether every index in `0..n_relays` lies in exactly one set.
    pub fn is_disjoint_cover(&self, n_relays: usize) -> bool {
        let mut seen = vec![0usize; n_relays];
        let all = self
            .t1
            .iter()
            .chain(&self.t2)
            .chain(self.t1_ell.iter().flatten())
            .chain(self.t2_ell.iter().flatten())
            .chain(self.s_kl.iter().flatten().flatten());
        for &i in all {
            if i >= n_relays {
                return false;
            }
            seen[i] += 1;
        }
        seen.iter().all(|&c| c == 1)
    }
}

/// `floor(log2(N^3))`, exact.
pub fn quantization_depth(n_relays: usize) -> usize {
    let cube = (n_relays as u128).pow(3);
    cube.ilog2() as usize
}

pub fn set_count(l: usize) -> usize {
    (l + 1) * (l + 1) + 2 * (l + 1) + 2
}

/// Index `l <= depth` with `x` in `(2^{-l-1} top, 2^{-l} top]`.
fn dyadic_cell<T: Scalar>(x: T, top: T, depth: usize) -> Option<usize> {
    if x > top {
        return None;
    }
    let half = T::lit(0.5);
    let mut lower = top * half;
    for l in 0..=depth {
        if x > lower {
            return Some(l);
        }
        lower = lower * half;
    }
    None
}

pub fn partition<T: Scalar>(net: &AsymmetricNetwork<T>) -> Result<Partition> {
    net.require_pair()?;
    let n_relays = net.n_relays();
    let n = T::count(n_relays);
    let n_cube = n * n * n;
    let StarGains { g_star, h_star } = star_gains(net);
    let l = quantization_depth(n_relays);
    let mut out = Partition {
        t1: Vec::new(),
        t2: Vec::new(),
        t1_ell: vec![Vec::new(); l + 1],
        t2_ell: vec![Vec::new(); l + 1],
        s_kl: vec![vec![Vec::new(); l + 1]; l + 1],
        l,
        l_tilde: set_count(l),
    };
    for i in 0..n_relays {
        let (g, h) = (net.g[i], net.h[i]);
        if g <= g_star / n_cube {
            out.t1.push(i);
            continue;
        }
        if h <= h_star / n_cube {
            out.t2.push(i);
            continue;
        }
        let g_cell = dyadic_cell(g, g_star, l);
        let h_cell = dyadic_cell(h, h_star, l);
        match (g_cell, h_cell) {
            (Some(k), _) if h >= g => out.t1_ell[k].push(i),
            (_, Some(m)) if g >= n * n * h => out.t2_ell[m].push(i),
            (Some(k), Some(m)) => out.s_kl[k][m].push(i),
            _ => {
                return Err(Error::Internal(format!(
                    "relay {i} falls outside every partition set"
                )));
            }
        }
    }
    Ok(out)
}

/// Symmetric network with the class size and its floor-quantized gains, the
/// network whose rate certifies the class.
fn certified_network<T: Scalar>(
    class: ClassId,
    size: usize,
    star: StarGains<T>,
    n_relays: usize,
) -> Result<SymmetricNetwork<T>> {
    let n = T::count(n_relays);
    let (g, h) = match class {
        ClassId::T1(l) => {
            let x = star.g_star * dyadic(l + 1);
            (x, x)
        }
        ClassId::T2(l) => {
            let x = star.h_star * dyadic(l + 1);
            (n * n * x, x)
        }
        ClassId::S(k, l) => (star.g_star * dyadic(k + 1), star.h_star * dyadic(l + 1)),
    };
    SymmetricNetwork::new(size, g, h)
}

/// Symmetric network with ceiling-quantized gains (possibly infinite)
/// dominating the class in the aggregate bound.
fn dominating_network<T: Scalar>(
    class: ClassId,
    size: usize,
    star: StarGains<T>,
    l_tilde: usize,
) -> Result<SymmetricNetwork<T>> {
    let lt = T::count(l_tilde);
    let two = T::lit(2.0);
    let (g, h) = match class {
        ClassId::T1(l) => (star.g_star * dyadic(l), T::infinity()),
        ClassId::T2(l) => (T::infinity(), lt * two * star.h_star * dyadic(l)),
        ClassId::S(k, l) => (star.g_star * dyadic(k), lt * two * star.h_star * dyadic(l)),
    };
    SymmetricNetwork::with_sentinels(size, g, h)
}

/// `2^{-e}`.
fn dyadic<T: Scalar>(e: usize) -> T {
    T::lit(2f64.powi(-(e as i32)))
}

/// Upper bound on the capacity of a symmetric network with one possibly
/// infinite gain. A single relay uses its exact min-cut.
fn class_upper_bound<T: Scalar>(net: &SymmetricNetwork<T>) -> Result<T> {
    if net.n_relays() == 1 {
        bc_mac_bound(net)
    } else {
        Ok(thm2_upper_bound(net)?.0)
    }
}

/// Rates for one selectable class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassEvaluation<T> {
    pub class: ClassId,
    pub size: usize,
    /// Best bursty AF rate of the floor-quantized symmetric network.
    pub certified: DutyCycleOptimum<T>,
    /// Best bursty AF rate using the class's smallest true gains.
    pub empirical: DutyCycleOptimum<T>,
    /// Upper bound of the dominating symmetric network.
    pub upper: T,
}

/// Best single class for bursty AF with all other relays silent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Selection<T> {
    pub class: ClassId,
    pub members: Vec<usize>,
    pub delta: T,
    pub certified: T,
    pub empirical: T,
    pub evaluations: Vec<ClassEvaluation<T>>,
}

pub fn evaluate_classes<T: Scalar>(
    net: &AsymmetricNetwork<T>,
    part: &Partition,
) -> Result<Vec<ClassEvaluation<T>>> {
    let star = star_gains(net);
    part.classes()
        .into_iter()
        .map(|(class, members)| {
            let size = members.len();
            let floor_net = certified_network(class, size, star, net.n_relays())?;
            let g_min = members
                .iter()
                .map(|&i| net.g[i])
                .fold(T::infinity(), T::min);
            let h_min = members
                .iter()
                .map(|&i| net.h[i])
                .fold(T::infinity(), T::min);
            let true_net = SymmetricNetwork::new(size, g_min, h_min)?;
            let upper = class_upper_bound(&dominating_network(class, size, star, part.l_tilde)?)?;
            Ok(ClassEvaluation {
                class,
                size,
                certified: optimal_duty_cycle(&floor_net)?,
                empirical: optimal_duty_cycle(&true_net)?,
                upper,
            })
        })
        .collect()
}

pub fn select_and_rate<T: Scalar>(net: &AsymmetricNetwork<T>) -> Result<Selection<T>> {
    let part = partition(net)?;
    select_from(net, &part)
}

fn select_from<T: Scalar>(net: &AsymmetricNetwork<T>, part: &Partition) -> Result<Selection<T>> {
    let evaluations = evaluate_classes(net, part)?;
    let best = evaluations
        .iter()
        .fold(None::<&ClassEvaluation<T>>, |acc, e| match acc {
            Some(b) if !(e.certified.rate > b.certified.rate) => Some(b),
            _ => Some(e),
        })
        .ok_or_else(|| Error::Internal("no selectable class".into()))?;
    Ok(Selection {
        class: best.class,
        members: part.members(best.class).to_vec(),
        delta: best.certified.delta.get(),
        certified: best.certified.rate,
        empirical: best.empirical.rate,
        evaluations: evaluations.clone(),
    })
}

/// `L~` times the largest class upper bound.
pub fn aggregate_upper_bound<T: Scalar>(net: &AsymmetricNetwork<T>) -> Result<T> {
    let part = partition(net)?;
    let evaluations = evaluate_classes(net, &part)?;
    Ok(aggregate_from(&part, &evaluations))
}

fn aggregate_from<T: Scalar>(part: &Partition, evaluations: &[ClassEvaluation<T>]) -> T {
    let best = evaluations.iter().map(|e| e.upper).fold(T::zero(), T::max);
    T::count(part.l_tilde) * best
}

/// Upper bound over certified rate, against `112 L~^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certificate<T> {
    pub ratio: T,
    pub bound: T,
    /// `ratio / log2(N)^4`, a measured stand-in for the unspecified constant.
    pub k_estimate: T,
    pub holds: bool,
}

pub fn certified_ratio<T: Scalar>(net: &AsymmetricNetwork<T>) -> Result<Certificate<T>> {
    Ok(analyze(net)?.certificate)
}

/// Everything the pipeline computes for one network.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymmetricReport<T> {
    pub n_relays: usize,
    pub star: StarGains<T>,
    pub partition: Partition,
    pub selection: Selection<T>,
    pub aggregate_upper: T,
    pub certificate: Certificate<T>,
}

pub fn analyze<T: Scalar>(net: &AsymmetricNetwork<T>) -> Result<AsymmetricReport<T>> {
    let part = partition(net)?;
    let selection = select_from(net, &part)?;
    let aggregate_upper = aggregate_from(&part, &selection.evaluations);
    if !(selection.certified > T::zero()) {
        return Err(Error::Internal("certified selection rate is zero".into()));
    }
    let ratio = aggregate_upper / selection.certified;
    let lt = T::count(part.l_tilde);
    let bound = T::lit(CERTIFICATE_FACTOR) * lt * lt;
    let log_n = T::count(net.n_relays()).log2();
    let certificate = Certificate {
        ratio,
        bound,
        k_estimate: ratio / log_n.powi(4),
        holds: ratio <= bound,
    };
    Ok(AsymmetricReport {
        n_relays: net.n_relays(),
        star: star_gains(net),
        partition: part,
        selection,
        aggregate_upper,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn net(g: &[f64], h: &[f64]) -> AsymmetricNetwork<f64> {
        AsymmetricNetwork::new(g.to_vec(), h.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_vectors() {
        assert_eq!(
            AsymmetricNetwork::new(vec![1.0], vec![1.0, 2.0]),
            Err(Error::LengthMismatch { g: 1, h: 2 })
        );
        assert!(AsymmetricNetwork::<f64>::new(vec![], vec![]).is_err());
        assert!(AsymmetricNetwork::new(vec![1.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(AsymmetricNetwork::new(vec![1.0, 1.0], vec![f64::INFINITY, 1.0]).is_err());
        assert_eq!(
            partition(&net(&[1.0], &[1.0])),
            Err(Error::RelayCount { got: 1, min: 2 })
        );
    }

    #[test]
    fn star_gain_examples() {
        assert_eq!(
            star_gains(&net(&[1.0, 1.0], &[1.0, 1.0])),
            StarGains {
                g_star: 1.0,
                h_star: 1.0
            }
        );
        assert_eq!(
            star_gains(&net(&[1.0, 1e-9], &[1.0, 1e-9])),
            StarGains {
                g_star: 1.0,
                h_star: 1.0
            }
        );
        assert_eq!(
            star_gains(&net(&[4.0, 100.0], &[1.0, 1e-4])),
            StarGains {
                g_star: 4.0,
                h_star: 1.0
            }
        );
    }

    #[test]
    fn depth_and_set_count() {
        assert_eq!((quantization_depth(2), set_count(3)), (3, 26));
        assert_eq!((quantization_depth(8), set_count(9)), (9, 122));
        // 3 log2(10) = 9.966
        assert_eq!(quantization_depth(10), 9);
        assert_eq!(quantization_depth(64), 18);
    }

    #[test]
    fn partition_examples() {
        let p = partition(&net(&[1.0, 1.0], &[1.0, 1.0])).unwrap();
        assert_eq!(p.t1_ell[0], vec![0, 1]);
        assert_eq!(p.classes().len(), 1);
        assert!(p.t1.is_empty() && p.t2.is_empty());
        assert_eq!((p.l, p.l_tilde), (3, 26));

        let p = partition(&net(&[1.0, 1e-9], &[1.0, 1e-9])).unwrap();
        assert_eq!(p.t1, vec![1]);
        assert_eq!(p.t1_ell[0], vec![0]);
        assert_eq!(p.classes().len(), 1);
    }

    #[test]
    fn symmetric_with_dominant_g_lands_in_one_cell() {
        for (n, g, h) in [(4usize, 50.0, 0.1), (8, 1.0, 1e-3), (3, 9.0, 1.0)] {
            let sym = SymmetricNetwork::new(n, g, h).unwrap();
            let p = partition(&AsymmetricNetwork::from_symmetric(&sym).unwrap()).unwrap();
            let classes = p.classes();
            assert_eq!(classes.len(), 1);
            assert_eq!(classes[0].1.len(), n);
            assert!(matches!(classes[0].0, ClassId::T2(_) | ClassId::S(_, _)));
        }
    }

    #[test]
    fn cell_boundaries_are_half_open() {
        // g_n = g* is in cell 0, g_n = g*/2 in cell 1
        let p = partition(&net(&[1.0, 0.5], &[4.0, 4.0])).unwrap();
        assert_eq!(p.t1_ell[0], vec![0]);
        assert_eq!(p.t1_ell[1], vec![1]);
    }

    #[test]
    fn unit_pair_pipeline() {
        let report = analyze(&net(&[1.0, 1.0], &[1.0, 1.0])).unwrap();
        assert_eq!(report.selection.class, ClassId::T1(0));
        // full-duty AF gives 0.5 log2(1.4); a shorter burst does better
        assert!(report.selection.certified > 0.5 * 1.4f64.log2());
        assert_abs_diff_eq!(
            report.selection.certified,
            0.253084460812667087,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(report.selection.empirical, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(report.aggregate_upper, 13.0 * 3f64.log2(), epsilon = 1e-13);
        assert_abs_diff_eq!(
            report.certificate.ratio,
            81.4135820240124259,
            epsilon = 1e-9
        );
        assert_eq!(report.certificate.bound, 75712.0);
        assert!(report.certificate.holds);
        assert_eq!(report.certificate.k_estimate, report.certificate.ratio);
    }

    #[test]
    fn weak_relay_is_deselected() {
        let report = analyze(&net(&[1.0, 1e-9], &[1.0, 1e-9])).unwrap();
        assert_eq!(report.selection.class, ClassId::T1(0));
        assert_eq!(report.selection.members, vec![0]);
        let single = SymmetricNetwork::new(1, 0.5, 0.5).unwrap();
        assert_eq!(
            report.selection.certified,
            optimal_duty_cycle(&single).unwrap().rate
        );
        assert_abs_diff_eq!(
            report.selection.certified,
            0.107319657976147059,
            epsilon = 1e-13
        );
    }

    #[test]
    fn singleton_class_uses_min_cut() {
        let single = SymmetricNetwork::with_sentinels(1, 1.0, f64::INFINITY).unwrap();
        assert_abs_diff_eq!(class_upper_bound(&single).unwrap(), 0.5, epsilon = 1e-15);
        let single = SymmetricNetwork::new(1, 1.0, 3.0).unwrap();
        assert_abs_diff_eq!(class_upper_bound(&single).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn scale_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(2..=24usize);
            let g: Vec<f64> = (0..n)
                .map(|_| 10f64.powf(rng.gen_range(-6.0..6.0)))
                .collect();
            let h: Vec<f64> = (0..n)
                .map(|_| 10f64.powf(rng.gen_range(-6.0..6.0)))
                .collect();
            let base = net(&g, &h);
            let p = partition(&base).unwrap();
            for e in -4..=4 {
                let scaled = base.scaled(2f64.powi(e)).unwrap();
                assert_eq!(partition(&scaled).unwrap(), p);
            }
        }
    }

    #[test]
    fn random_instances_hold_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..500 {
            let n = rng.gen_range(2..=64usize);
            let g: Vec<f64> = (0..n)
                .map(|_| 10f64.powf(rng.gen_range(-8.0..8.0)))
                .collect();
            let h: Vec<f64> = (0..n)
                .map(|_| 10f64.powf(rng.gen_range(-8.0..8.0)))
                .collect();
            let net = net(&g, &h);
            let star = star_gains(&net);
            let n_sq = (n * n) as f64;
            assert!(star.g_star >= star.h_star);
            assert!(star.h_star * n_sq >= star.g_star * (1.0 - 1e-12));

            let report = analyze(&net).unwrap();
            assert!(report.partition.is_disjoint_cover(n));
            assert_eq!(report.partition.l_tilde, set_count(quantization_depth(n)));
            let sel = &report.selection;
            assert!(sel.certified <= sel.empirical + 1e-9, "{sel:?}");
            assert!(sel.empirical <= report.aggregate_upper + 1e-9);
            assert!(report.certificate.holds, "{:?}", report.certificate);
        }
    }

    #[test]
    fn partition_sets_satisfy_membership_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let n = rng.gen_range(2..=40usize);
            let g: Vec<f64> = (0..n)
                .map(|_| 10f64.powf(rng.gen_range(-8.0..8.0)))
                .collect();
            let h: Vec<f64> = (0..n)
                .map(|_| 10f64.powf(rng.gen_range(-8.0..8.0)))
                .collect();
            let net = net(&g, &h);
            let StarGains { g_star, h_star } = star_gains(&net);
            let p = partition(&net).unwrap();
            let nf = n as f64;
            let in_cell = |x: f64, top: f64, l: usize| {
                x > top * 0.5f64.powi(l as i32 + 1) && x <= top * 0.5f64.powi(l as i32)
            };
            for &i in &p.t1 {
                assert!(g[i] <= g_star / nf.powi(3));
            }
            for &i in &p.t2 {
                assert!(h[i] <= h_star / nf.powi(3));
            }
            for (l, set) in p.t1_ell.iter().enumerate() {
                for &i in set {
                    assert!(in_cell(g[i], g_star, l) && h[i] >= g[i]);
                }
            }
            for (l, set) in p.t2_ell.iter().enumerate() {
                for &i in set {
                    assert!(g[i] >= nf * nf * h[i] && in_cell(h[i], h_star, l));
                }
            }
            for (k, row) in p.s_kl.iter().enumerate() {
                for (l, set) in row.iter().enumerate() {
                    for &i in set {
                        assert!(in_cell(g[i], g_star, k) && in_cell(h[i], h_star, l));
                    }
                }
            }
        }
    }

    #[test]
    fn class_order() {
        let mut ids = vec![
            ClassId::S(0, 0),
            ClassId::T2(3),
            ClassId::T1(5),
            ClassId::S(0, 1),
            ClassId::T1(0),
        ];
        ids.sort();
        assert_eq!(
            ids,
            vec![
                ClassId::T1(0),
                ClassId::T1(5),
                ClassId::T2(3),
                ClassId::S(0, 0),
                ClassId::S(0, 1)
            ]
        );
        assert_eq!(ClassId::S(2, 1).to_string(), "S_2_1");
    }
}
