//! Scalar search primitives shared by the dispersion solvers.

/// 1/phi, the golden-section shrink factor.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Location and value of a maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`,
/// stopping once the bracket is narrower than `xtol`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> Peak {
    if b < a {
        std::mem::swap(&mut a, &mut b);
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 200 shrinks reduce any finite f64 interval below one ulp
    for _ in 0..200 {
        if b - a <= xtol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        Peak { x: x1, value: f1 }
    } else {
        Peak { x: x2, value: f2 }
    }
}

/// Dense scan of `n` equispaced points on `[a, b]` followed by golden-section
/// refinement around the best sample. The scan guards against peaks sitting
/// near the interval ends.
pub fn scan_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize, xtol: f64) -> Peak {
    if b <= a {
        return Peak { x: a, value: f(a) };
    }
    let n = n.max(3);
    let h = (b - a) / (n - 1) as f64;
    let node = |k: usize| if k == n - 1 { b } else { a + k as f64 * h };
    let mut best = Peak { x: a, value: f(a) };
    let mut best_k = 0;
    for k in 1..n {
        let x = node(k);
        let value = f(x);
        if value > best.value {
            best = Peak { x, value };
            best_k = k;
        }
    }
    let lo = node(best_k.saturating_sub(1));
    let hi = node((best_k + 1).min(n - 1));
    let refined = golden_max(&f, lo, hi, xtol);
    if refined.value > best.value {
        refined
    } else {
        best
    }
}

/// Bisection for a nondecreasing `g` with `g(lo) < 0 <= g(hi)`. Returns the
/// final bracket once `hi - lo <= tol` (or no representable midpoint is
/// left).
pub fn bisect_increasing<G: FnMut(f64) -> f64>(mut g: G, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}
