//! Self-checks bundling the invariants of the library into named suites.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::closed_forms::{crossvalidate_with, CLOSED_FORM_MODES};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::posmometry::{
    count_nodes, count_nodes_half_axis, normalization, posmogram_with, AmplitudeTable, LambdaGrid, ModeIndex,
    ParitySector, QuadratureConfig, DEFAULT_NODE_THRESHOLD,
};
use crate::sho::{compare, RESEMBLANCE_LINF};
use crate::sphere::{
    normal_posmom_apply, psi_eigenfunction, qz_apply, AngularPoint, EigenfunctionSpec, ScalarField,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SelectionRule,
    Symmetry,
    MReflection,
    Normalization,
    ClosedForms,
    Nodes,
    Stencil,
    /// Oscillator comparison; not part of the default run.
    Sho,
}

impl Suite {
    pub const DEFAULT: [Suite; 7] = [
        Suite::SelectionRule,
        Suite::Symmetry,
        Suite::MReflection,
        Suite::Normalization,
        Suite::ClosedForms,
        Suite::Nodes,
        Suite::Stencil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SelectionRule => "selection-rule",
            Suite::Symmetry => "symmetry",
            Suite::MReflection => "m-reflection",
            Suite::Normalization => "normalization",
            Suite::ClosedForms => "closed-forms",
            Suite::Nodes => "nodes",
            Suite::Stencil => "stencil",
            Suite::Sho => "sho",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::DEFAULT
            .iter()
            .chain(std::iter::once(&Suite::Sho))
            .find(|x| x.name() == s.trim())
            .copied()
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub limit: f64,
    pub detail: String,
}

impl Check {
    fn below(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            pass: value < limit,
            value,
            limit,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>, notes: Vec<String>) -> Self {
        Self {
            suite,
            pass: checks.iter().all(|c| c.pass),
            checks,
            notes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    /// Overrides the closed-form agreement tolerance (default `1e-7`).
    pub tol: Option<f64>,
    pub config: QuadratureConfig,
    pub execution: Execution,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            tol: None,
            config: QuadratureConfig::default(),
            execution: Execution::Parallel,
        }
    }
}

pub fn run(suites: &[Suite], opts: &ValidationOptions) -> Result<ValidationReport> {
    let suites = suites.iter().map(|&s| run_suite(s, opts)).collect::<Result<Vec<_>>>()?;
    Ok(ValidationReport {
        pass: suites.iter().all(|s| s.pass),
        suites,
    })
}

pub fn run_suite(suite: Suite, opts: &ValidationOptions) -> Result<SuiteReport> {
    opts.config.validate()?;
    log::info!("running suite {suite}");
    match suite {
        Suite::SelectionRule => selection_rule(opts),
        Suite::Symmetry => symmetry(opts),
        Suite::MReflection => m_reflection(opts),
        Suite::Normalization => normalization_suite(opts),
        Suite::ClosedForms => closed_forms(opts),
        Suite::Nodes => nodes(opts),
        Suite::Stencil => stencil(),
        Suite::Sho => sho(opts),
    }
}

fn mode(l: u32, m: i32) -> ModeIndex {
    ModeIndex::new(l, m).expect("suite modes are valid")
}

/// Modes whose normalization is checked.
pub const NORMALIZATION_MODES: [(u32, i32); 11] = [
    (0, 0),
    (1, 0),
    (1, 1),
    (2, 0),
    (2, 2),
    (3, 0),
    (3, 3),
    (5, 0),
    (5, 5),
    (20, 0),
    (20, 20),
];

/// Grid wide enough to hold all but a negligible part of the weight of a mode.
pub fn normalization_grid(l: u32) -> LambdaGrid {
    if l >= 10 {
        LambdaGrid::symmetric(25.0, 5001).expect("valid grid")
    } else {
        LambdaGrid::symmetric(15.0, 3001).expect("valid grid")
    }
}

fn selection_rule(opts: &ValidationOptions) -> Result<SuiteReport> {
    let grid = LambdaGrid::symmetric(10.0, 101)?;
    let lambdas = grid.values();
    let modes: Vec<ModeIndex> = (0..=20u32)
        .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| mode(l, m)))
        .collect();
    let results = opts.execution.map(&modes, |&md| -> Result<(f64, bool)> {
        let wrong = match md.physical_parity() {
            ParitySector::Even => ParitySector::Odd,
            ParitySector::Odd => ParitySector::Even,
        };
        let reduced = AmplitudeTable::new(md, wrong, 10.0, opts.config)?;
        let exact_zero = reduced.is_vanishing()
            && lambdas
                .iter()
                .all(|&l| reduced.evaluate(l).map(|v| v == Complex64::new(0.0, 0.0)).unwrap_or(false));
        let forced = AmplitudeTable::unreduced(md, wrong, 10.0, opts.config)?;
        let worst = lambdas
            .iter()
            .map(|&l| forced.estimate(l).value.norm())
            .fold(0.0, f64::max);
        Ok((worst, exact_zero))
    })?;
    let worst = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let zero = results.iter().all(|r| r.1);
    let checks = vec![
        Check {
            name: "short-circuit sector is exactly zero".into(),
            pass: zero,
            value: if zero { 0.0 } else { 1.0 },
            limit: 0.0,
            detail: format!("{} modes with l <= 20", modes.len()),
        },
        Check::below("force-integrated |I| in the vanishing sector", worst, 1e-12),
    ];
    Ok(SuiteReport::new(Suite::SelectionRule, checks, vec![]))
}

fn symmetry(opts: &ValidationOptions) -> Result<SuiteReport> {
    let grid = LambdaGrid::default();
    let mut checks = vec![];
    for &(l, m) in &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 0), (5, 3), (20, 0)] {
        let p = posmogram_with(mode(l, m), &grid, &opts.config, opts.execution)?;
        let n = grid.count();
        let d = p.density();
        let a = p.amplitudes();
        let dens = (0..n).map(|k| (d[k] - d[n - 1 - k]).abs()).fold(0.0, f64::max);
        let herm = (0..n).map(|k| (a[k] - a[n - 1 - k].conj()).norm()).fold(0.0, f64::max);
        checks.push(Check::below(format!("({l},{m}) max |density(λ) - density(-λ)|"), dens, 1e-10));
        checks.push(Check::below(format!("({l},{m}) max |I(-λ) - conj I(λ)|"), herm, 1e-12));
    }
    Ok(SuiteReport::new(Suite::Symmetry, checks, vec![]))
}

fn m_reflection(opts: &ValidationOptions) -> Result<SuiteReport> {
    let grid = LambdaGrid::symmetric(8.0, 801)?;
    let mut checks = vec![];
    for &(l, m) in &[(1, 1), (2, 1), (2, 2), (3, 2), (5, 3), (5, 5), (20, 7)] {
        let a = posmogram_with(mode(l, m), &grid, &opts.config, opts.execution)?;
        let b = posmogram_with(mode(l, -m), &grid, &opts.config, opts.execution)?;
        let peak = a.density().iter().cloned().fold(0.0, f64::max);
        let dev = a
            .density()
            .iter()
            .zip(b.density())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
            / peak;
        checks.push(Check::below(format!("({l},±{m}) relative density difference"), dev, 1e-12));
    }
    Ok(SuiteReport::new(Suite::MReflection, checks, vec![]))
}

fn normalization_suite(opts: &ValidationOptions) -> Result<SuiteReport> {
    let mut checks = vec![];
    for &(l, m) in &NORMALIZATION_MODES {
        let grid = normalization_grid(l);
        let p = posmogram_with(mode(l, m), &grid, &opts.config, opts.execution)?;
        let norm = normalization(&p);
        checks.push(
            Check::below(format!("({l},{m}) |∫density - 1|"), (norm - 1.0).abs(), 1e-5)
                .with_detail(format!("grid [{}, {}] x {}", grid.lo(), grid.hi(), grid.count())),
        );
    }
    Ok(SuiteReport::new(Suite::Normalization, checks, vec![]))
}

fn closed_forms(opts: &ValidationOptions) -> Result<SuiteReport> {
    let tol = opts.tol.unwrap_or(1e-7);
    let grid = LambdaGrid::symmetric(5.0, 201)?;
    let mut checks = vec![];
    let mut notes = vec![];
    for &(l, m) in &CLOSED_FORM_MODES {
        let r = crossvalidate_with(mode(l, m), &grid, tol, &opts.config, opts.execution)?;
        let mut check = Check::below(format!("({l},{m}) max relative deviation"), r.max_rel_deviation, tol)
            .with_detail(format!("worst at λ = {}", r.worst_lambda));
        if let Some(reading) = r.reading {
            check.detail.push_str(&format!("; reading {reading:?}"));
        }
        checks.push(check);
        if let Some(f) = r.finding {
            notes.push(format!("({l},{m}): {f}"));
        }
    }
    Ok(SuiteReport::new(Suite::ClosedForms, checks, notes))
}

/// Node counts stated for `(5, m)`, `m = 0..=5`.
pub const L5_NODE_COUNTS: [usize; 6] = [2, 2, 1, 1, 0, 0];

fn nodes(opts: &ValidationOptions) -> Result<SuiteReport> {
    let grid = LambdaGrid::default();
    let mut checks = vec![];
    let mut notes = vec![];
    let mut half = vec![];
    for (m, &want) in L5_NODE_COUNTS.iter().enumerate() {
        let p = posmogram_with(mode(5, m as i32), &grid, &opts.config, opts.execution)?;
        let got = count_nodes(&p, DEFAULT_NODE_THRESHOLD);
        half.push(count_nodes_half_axis(&p, DEFAULT_NODE_THRESHOLD));
        checks.push(Check {
            name: format!("(5,{m}) node count"),
            pass: got == want,
            value: got as f64,
            limit: want as f64,
            detail: "full axis, minima below 1e-4 of peak".into(),
        });
    }
    notes.push(format!("half-axis counts for (5, 0..5): {half:?}"));
    let l3: Vec<usize> = (0..=3)
        .map(|m| posmogram_with(mode(3, m), &grid, &opts.config, opts.execution).map(|p| count_nodes(&p, DEFAULT_NODE_THRESHOLD)))
        .collect::<Result<_>>()?;
    notes.push(format!("full-axis counts for (3, 0..3): {l3:?}"));
    Ok(SuiteReport::new(Suite::Nodes, checks, notes))
}

/// Points on a Kronecker sequence inside the given box.
pub fn quasi_random_points(count: usize, theta: (f64, f64), phi: (f64, f64)) -> Vec<AngularPoint> {
    const A1: f64 = 0.754_877_666_246_692_7;
    const A2: f64 = 0.569_840_290_998_053_3;
    (1..=count)
        .map(|k| {
            let u = (0.5 + A1 * k as f64).fract();
            let v = (0.5 + A2 * k as f64).fract();
            AngularPoint::new(theta.0 + u * (theta.1 - theta.0), phi.0 + v * (phi.1 - phi.0)).expect("box inside domain")
        })
        .collect()
}

/// Residual ratio `r(h) / r(h/2)` for the stencil checks.
pub const STENCIL_STEPS: (f64, f64) = (1e-2, 5e-3);

/// Maximum over sample points of `|Q_z Ψ_λ^± - λ Ψ_λ^±| / |Ψ_λ^±|`.
pub fn eigen_residual(lambda: f64, parity: ParitySector, step: f64) -> Result<f64> {
    let spec = EigenfunctionSpec::new(lambda, parity)?;
    let field = move |p: AngularPoint| psi_eigenfunction(spec, p.theta()).unwrap_or(Complex64::new(f64::NAN, 0.0));
    let north = quasi_random_points(50, (0.3, 1.3), (0.0, 6.0));
    let mut worst: f64 = 0.0;
    for p in north.iter().flat_map(|p| [*p, p.reflected()]) {
        let psi = field.eval(p);
        let r = (qz_apply(&field, p, step)? - psi * lambda).norm() / psi.norm();
        if !r.is_finite() {
            return Err(Error::NonFinite("eigen residual"));
        }
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Test states for the normal-posmom identity.
pub fn identity_states() -> Vec<(&'static str, Box<dyn ScalarField>)> {
    let i = Complex64::i();
    vec![
        (
            "sinθ e^{iφ}",
            Box::new(move |p: AngularPoint| p.theta().sin() * (i * p.phi()).exp()),
        ),
        ("cos²θ", Box::new(|p: AngularPoint| Complex64::from(p.theta().cos().powi(2)))),
        (
            "sin²θ cosθ e^{-2iφ} + i cosθ / 2",
            Box::new(move |p: AngularPoint| {
                let (s, c) = p.theta().sin_cos();
                s * s * c * (-2.0 * i * p.phi()).exp() + 0.5 * i * c
            }),
        ),
    ]
}

/// Maximum of `|(x·p + p·x) ψ|` over sample points.
pub fn identity_residual(field: &dyn ScalarField, step: f64) -> Result<f64> {
    let pts = quasi_random_points(50, (0.2, 2.9), (0.0, std::f64::consts::TAU));
    let mut worst: f64 = 0.0;
    for p in pts {
        worst = worst.max(normal_posmom_apply(field, p, step)?.norm());
    }
    Ok(worst)
}

fn ratio_check(name: String, coarse: f64, fine: f64) -> Check {
    let ratio = coarse / fine;
    Check {
        name,
        pass: (ratio - 4.0).abs() <= 0.8,
        value: ratio,
        limit: 4.0,
        detail: format!("residual {coarse:.3e} -> {fine:.3e} under step halving (4 ± 20%)"),
    }
}

fn stencil() -> Result<SuiteReport> {
    let (h1, h2) = STENCIL_STEPS;
    let mut checks = vec![];
    for &lambda in &[0.0, 0.5, -0.5, 2.0, -2.0, 7.0, -7.0] {
        for parity in ParitySector::BOTH {
            let a = eigen_residual(lambda, parity, h1)?;
            let b = eigen_residual(lambda, parity, h2)?;
            checks.push(ratio_check(format!("Q_z Ψ eigen-residual λ={lambda} {parity}"), a, b));
        }
    }
    for (name, field) in identity_states() {
        let a = identity_residual(field.as_ref(), h1)?;
        let b = identity_residual(field.as_ref(), h2)?;
        checks.push(ratio_check(format!("2(Q_x+Q_y+Q_z) on {name}"), a, b));
    }
    Ok(SuiteReport::new(Suite::Stencil, checks, vec![]))
}

fn sho(opts: &ValidationOptions) -> Result<SuiteReport> {
    let mut checks = vec![];
    let mut notes = vec![];
    let g0 = LambdaGrid::symmetric(15.0, 3001)?;
    let p0 = posmogram_with(mode(0, 0), &g0, &opts.config, opts.execution)?;
    let r0 = compare(&p0, 0)?;
    checks.push(
        Check::below("(0,0) vs n=0 L∞ / peak", r0.linf_relative, RESEMBLANCE_LINF)
            .with_detail(format!("scale {:.6}; 5% of peak is a crate convention", r0.scale)),
    );
    let g20 = LambdaGrid::symmetric(25.0, 5001)?;
    let p20 = posmogram_with(mode(20, 0), &g20, &opts.config, opts.execution)?;
    let r10 = compare(&p20, 10)?;
    checks.push(Check {
        name: "(20,0) vs n=10 antinode counts".into(),
        pass: r10.antinodes_posmom == r10.antinodes_sho,
        value: r10.antinodes_posmom as f64,
        limit: r10.antinodes_sho as f64,
        detail: format!("nodes {} vs {}", r10.nodes_posmom, r10.nodes_sho),
    });
    let mut others = vec![];
    for n in [8, 9, 11, 12] {
        others.push((n, compare(&p20, n)?.l1_diff));
    }
    let nearest = others.iter().map(|o| o.1).fold(f64::INFINITY, f64::min);
    checks.push(Check {
        name: "(20,0) L1 distance minimal at n=10".into(),
        pass: r10.l1_diff < nearest,
        value: r10.l1_diff,
        limit: nearest,
        detail: format!("{others:?}"),
    });
    notes.push(format!("(0,0) vs n=0 L1 {:.4}", r0.l1_diff));
    Ok(SuiteReport::new(Suite::Sho, checks, notes))
}
