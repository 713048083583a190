//! Composite Gauss–Legendre rules for Fourier integrals `∫ e^{iλu} f(u) du`
//! over a truncated line `[-u_max, u_max]`.
//!
//! The integrand is sampled once into a [`FourierTable`]; each transform is
//! then a weighted sum with phases split into a per-panel centre factor and
//! a per-node offset factor shared by all panels.

use num_complex::Complex64;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1, "Gauss-Legendre order must be positive");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
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

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Uniform panels covering `[-u_max, u_max]`, each carrying the same
/// Gauss–Legendre rule.
#[derive(Debug, Clone)]
pub struct PanelRule {
    centers: Vec<f64>,
    offsets: Vec<f64>,
    weights: Vec<f64>,
    width: f64,
}

impl PanelRule {
    /// Panels no wider than `max_width`; the count is rounded up so that
    /// panels tile the interval exactly.
    pub fn new(u_max: f64, max_width: f64, order: usize) -> Self {
        let count = ((2.0 * u_max / max_width).ceil() as usize).max(1);
        Self::with_count(u_max, count, order)
    }

    pub fn with_count(u_max: f64, count: usize, order: usize) -> Self {
        let width = 2.0 * u_max / count as f64;
        let (x, w) = gauss_legendre(order);
        let half = width / 2.0;
        // centres symmetric about 0 so that mirrored panels mirror exactly
        let centers = (0..count)
            .map(|k| {
                let twice = 2 * k as i64 + 1 - count as i64;
                twice as f64 * half
            })
            .collect();
        Self {
            centers,
            offsets: x.iter().map(|&t| t * half).collect(),
            weights: w.iter().map(|&t| t * half).collect(),
            width,
        }
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn panel_count(&self) -> usize {
        self.centers.len()
    }

    pub fn order(&self) -> usize {
        self.offsets.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.centers.iter().flat_map(move |&c| {
            self.offsets
                .iter()
                .zip(&self.weights)
                .map(move |(&o, &w)| (c + o, w))
        })
    }
}

/// A sampled integrand on one panel rule.
#[derive(Debug, Clone)]
struct SampledRule {
    rule: PanelRule,
    /// `w_j f(u_kj)`, panel-major
    values: Vec<Complex64>,
}

impl SampledRule {
    fn sample<F: Fn(f64) -> Complex64>(rule: PanelRule, f: &F) -> Self {
        let values = rule.nodes().map(|(u, w)| f(u) * w).collect();
        Self { rule, values }
    }

    fn transform(&self, lambda: f64) -> Complex64 {
        let order = self.rule.order();
        let phases: Vec<Complex64> = self
            .rule
            .offsets
            .iter()
            .map(|&o| {
                let (s, c) = (lambda * o).sin_cos();
                Complex64::new(c, s)
            })
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &center) in self.rule.centers.iter().enumerate() {
            let panel = &self.values[k * order..(k + 1) * order];
            let mut inner = Complex64::new(0.0, 0.0);
            for (v, ph) in panel.iter().zip(&phases) {
                inner += v * ph;
            }
            let (s, c) = (lambda * center).sin_cos();
            acc += Complex64::new(c, s) * inner;
        }
        acc
    }
}

/// Fourier integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

/// Samples of `f` on a fine panel rule plus a companion rule with panels of
/// twice the width; their difference bounds the fine-rule error.
#[derive(Debug, Clone)]
pub struct FourierTable {
    fine: SampledRule,
    coarse: SampledRule,
    tail: f64,
}

impl FourierTable {
    pub fn new<F: Fn(f64) -> Complex64>(u_max: f64, max_width: f64, order: usize, f: F) -> Self {
        let fine_rule = PanelRule::new(u_max, max_width, order);
        let coarse_count = fine_rule.panel_count().div_ceil(2);
        let coarse_rule = PanelRule::with_count(u_max, coarse_count, order);
        // integrands handled here decay at least like e^{-|u|/2}
        let tail = 2.0 * (f(u_max).norm() + f(-u_max).norm());
        Self {
            fine: SampledRule::sample(fine_rule, &f),
            coarse: SampledRule::sample(coarse_rule, &f),
            tail,
        }
    }

    /// Tables for `k` integrands sampled together: `f(u, out)` fills
    /// `out[j]` with the `j`-th integrand at `u`.
    pub fn new_many<F: Fn(f64, &mut [Complex64])>(
        u_max: f64,
        max_width: f64,
        order: usize,
        k: usize,
        f: F,
    ) -> Vec<Self> {
        let fine_rule = PanelRule::new(u_max, max_width, order);
        let coarse_count = fine_rule.panel_count().div_ceil(2);
        let coarse_rule = PanelRule::with_count(u_max, coarse_count, order);
        let mut buf = vec![Complex64::new(0.0, 0.0); k];
        let mut sample = |rule: &PanelRule| {
            let mut cols: Vec<Vec<Complex64>> = vec![Vec::with_capacity(rule.panel_count() * order); k];
            for (u, w) in rule.nodes() {
                f(u, &mut buf);
                for (col, v) in cols.iter_mut().zip(&buf) {
                    col.push(v * w);
                }
            }
            cols
        };
        let fine = sample(&fine_rule);
        let coarse = sample(&coarse_rule);
        let mut hi = vec![Complex64::new(0.0, 0.0); k];
        let mut lo = vec![Complex64::new(0.0, 0.0); k];
        f(u_max, &mut hi);
        f(-u_max, &mut lo);
        fine.into_iter()
            .zip(coarse)
            .enumerate()
            .map(|(j, (fv, cv))| Self {
                fine: SampledRule {
                    rule: fine_rule.clone(),
                    values: fv,
                },
                coarse: SampledRule {
                    rule: coarse_rule.clone(),
                    values: cv,
                },
                tail: 2.0 * (hi[j].norm() + lo[j].norm()),
            })
            .collect()
    }

    pub fn panel_width(&self) -> f64 {
        self.fine.rule.width()
    }

    /// `∫_{-u_max}^{u_max} e^{iλu} f(u) du`
    pub fn transform(&self, lambda: f64) -> Estimate {
        let value = self.fine.transform(lambda);
        let coarse = self.coarse.transform(lambda);
        Estimate {
            value,
            error: (value - coarse).norm() + self.tail,
        }
    }
}
