//! Small scalar solvers shared by the allocation and dynamic-DF modules.

/// Golden ratio conjugate, `(sqrt(5) - 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Finds a sign change of a nondecreasing `g` on `[lo, hi]` by bisection.
///
/// Returns the midpoint of the final bracket. Stops once the bracket no
/// longer shrinks in floating point or `|g| <= 0` is hit exactly, so the
/// bracket width ends at a few ulps.
pub fn bisect_increasing(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = g(mid);
        if v == 0.0 {
            return mid;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Returns `(x, f(x))` for the best point seen, including the endpoints.
pub fn golden_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let mut best = [(lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        for cand in [(c, fc), (d, fd)] {
            if cand.1 < best.1 {
                best = cand;
            }
        }
    }
    best
}

/// Coarse grid over `[lo, hi]` with spacing `step`, then golden-section
/// refinement in the two cells around the best grid point.
pub fn grid_then_golden(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    step: f64,
    tol: f64,
) -> (f64, f64) {
    if hi <= lo {
        return (lo, f(lo));
    }
    let cells = ((hi - lo) / step).ceil().max(1.0) as usize;
    let h = (hi - lo) / cells as f64;
    let (best_i, best) = (0..=cells)
        .map(|i| {
            let x = if i == cells { hi } else { lo + i as f64 * h };
            (x, f(x))
        })
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .unwrap();
    let a = lo + best_i.saturating_sub(1) as f64 * h;
    let b = (lo + (best_i + 1) as f64 * h).min(hi);
    let refined = golden_min(&f, a, b, tol);
    if refined.1 < best.1 {
        refined
    } else {
        best
    }
}
