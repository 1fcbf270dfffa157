//! Gauss–Legendre quadrature.

use std::sync::OnceLock;

const CACHED: usize = 32;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// exact for polynomials of degree `2n − 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `P_n(x)` and `P_n'(x)`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn cached(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static TABLE: OnceLock<Vec<(Vec<f64>, Vec<f64>)>> = OnceLock::new();
    &TABLE.get_or_init(|| (1..=CACHED).map(gauss_legendre).collect())[n - 1]
}

/// `∫_a^b f` with the `n`-point rule.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let eval = |nodes: &[f64], weights: &[f64]| {
        nodes
            .iter()
            .zip(weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
    };
    let s = if n <= CACHED {
        let (x, w) = cached(n);
        eval(x, w)
    } else {
        let (x, w) = gauss_legendre(n);
        eval(&x, &w)
    };
    s * half
}

/// Number of nodes that integrates polynomials of degree `degree` exactly.
pub fn nodes_for_degree(degree: usize) -> usize {
    degree / 2 + 1
}
