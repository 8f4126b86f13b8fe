//! Composite Simpson quadrature with Richardson refinement.

/// Composite Simpson rule on `n` (even, ≥ 2) subintervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 1 { n + 1 } else { n.max(2) };
    let h = (b - a) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let x = a + i as f64 * h;
        if i % 2 == 1 {
            odd += f(x);
        } else {
            even += f(x);
        }
    }
    h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub intervals: usize,
    /// Absolute change between the last two Richardson estimates.
    pub change: f64,
    pub converged: bool,
}

/// Doubles the Simpson panel count from `n0` until successive Richardson
/// estimates differ by less than `tol`, or `max_doublings` is exhausted.
pub fn simpson_richardson<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    n0: usize,
    tol: f64,
    max_doublings: usize,
) -> Quadrature {
    let mut n = n0.max(2);
    let mut coarse = simpson(&f, a, b, n);
    let mut prev: Option<f64> = None;
    let mut last = Quadrature {
        value: coarse,
        intervals: n,
        change: f64::INFINITY,
        converged: false,
    };
    for _ in 0..max_doublings {
        n *= 2;
        let fine = simpson(&f, a, b, n);
        let extrapolated = fine + (fine - coarse) / 15.0;
        let change = match prev {
            Some(p) => (extrapolated - p).abs(),
            None => (fine - coarse).abs(),
        };
        last = Quadrature {
            value: extrapolated,
            intervals: n,
            change,
            converged: change < tol,
        };
        if last.converged {
            break;
        }
        prev = Some(extrapolated);
        coarse = fine;
    }
    last
}
