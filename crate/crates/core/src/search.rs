//! One-dimensional maximisation: coarse grid scan followed by golden-section
//! refinement of the best bracket.
//!
//! The objectives here (duty-cycle rate, correlation-parameterised cut-set
//! bound) are piecewise smooth and not known to be unimodal, so the grid
//! guards against multiple local maxima and golden-section only polishes the
//! winning cell.

use crate::scalar::Scalar;

/// Location and value of a maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum<T> {
    pub x: T,
    pub value: T,
}

const MAX_GOLDEN_ITERS: usize = 500;

/// Golden-section search for a maximum of `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `tol`.
///
/// On a unimodal objective this converges to the maximiser; otherwise it
/// returns some local maximum inside the bracket.
pub fn golden_section_max<T, F>(f: F, lo: T, hi: T, tol: T) -> Maximum<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    // 1/phi
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iters = 0;
    while b - a > tol && iters < MAX_GOLDEN_ITERS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        iters += 1;
    }
    if fc >= fd {
        Maximum { x: c, value: fc }
    } else {
        Maximum { x: d, value: fd }
    }
}

/// Scans `grid` (sorted ascending), then refines around the best grid point.
///
/// Ties on the grid go to the lowest index. The refined point replaces the
/// grid winner only when strictly better, so the result is never worse than
/// the best grid value.
pub fn grid_refine_max<T, F>(f: F, grid: &[T], tol: T) -> Maximum<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    assert!(!grid.is_empty(), "search grid must be non-empty");
    let mut best = 0;
    let mut best_value = f(grid[0]);
    for (i, &x) in grid.iter().enumerate().skip(1) {
        let v = f(x);
        if v > best_value {
            best = i;
            best_value = v;
        }
    }
    let grid_best = Maximum {
        x: grid[best],
        value: best_value,
    };
    if grid.len() < 2 {
        return grid_best;
    }
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let refined = golden_section_max(&f, lo, hi, tol);
    if refined.value > grid_best.value {
        refined
    } else {
        grid_best
    }
}

/// `points` values evenly spaced on `[lo, hi]`, both ends included.
pub fn linspace<T: Scalar>(lo: T, hi: T, points: usize) -> Vec<T> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / T::count(points - 1);
            (0..points)
                .map(|i| {
                    if i == points - 1 {
                        hi
                    } else {
                        lo + step * T::count(i)
                    }
                })
                .collect()
        }
    }
}

/// `points` values evenly spaced in log scale on `[lo, hi]`, both ends included.
pub fn logspace<T: Scalar>(lo: T, hi: T, points: usize) -> Vec<T> {
    let mut out: Vec<T> = linspace(lo.ln(), hi.ln(), points)
        .into_iter()
        .map(T::exp)
        .collect();
    if let Some(first) = out.first_mut() {
        *first = lo;
    }
    if let Some(last) = out.last_mut() {
        *last = hi;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let m = golden_section_max(|x: f64| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-10);
        assert!((m.x - 0.3).abs() < 1e-9);
        assert!(m.value <= 0.0 && m.value > -1e-18);
    }

    #[test]
    fn golden_handles_boundary_maximum() {
        let m = golden_section_max(|x: f64| x, 0.0, 1.0, 1e-10);
        assert!(1.0 - m.x < 1e-9);
    }

    #[test]
    fn grid_escapes_local_maximum() {
        // two bumps, the right one taller
        let f =
            |x: f64| (-(x - 0.2).powi(2) * 400.0).exp() + 2.0 * (-(x - 0.8).powi(2) * 400.0).exp();
        let grid = linspace(0.0, 1.0, 64);
        let m = grid_refine_max(f, &grid, 1e-12);
        assert!((m.x - 0.8).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn grid_ties_prefer_lowest() {
        let grid = linspace(0.0, 1.0, 11);
        let m = grid_refine_max(|_x: f64| 1.0, &grid, 1e-9);
        assert_eq!(m.x, 0.0);
    }

    #[test]
    fn spaces_hit_endpoints() {
        let l = linspace(0.0, 1.0 - 1e-6, 1024);
        assert_eq!(l.len(), 1024);
        assert_eq!(l[0], 0.0);
        assert_eq!(l[1023], 1.0 - 1e-6);
        let g = logspace(1e-12, 1.0, 256);
        assert_eq!(g[0], 1e-12);
        assert_eq!(g[255], 1.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
