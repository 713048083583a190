use num_complex::Complex64;
use posmom::posmometry::ParitySector;
use posmom::sphere::{
    geometric_momentum_apply, lz_apply, normal_posmom_apply, posmom_apply, psi_eigenfunction,
    qxyz_simultaneous_eigenfunction, qz_apply, qz_lz_commutator, AngularPoint, Axis, EigenfunctionSpec, ScalarField,
    Stencil,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn pt(t: f64, p: f64) -> AngularPoint {
    AngularPoint::new(t, p).unwrap()
}

fn random_points(n: usize, seed: u64, admissible: impl Fn(f64, f64) -> bool) -> Vec<AngularPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    while out.len() < n {
        let t = rng.gen_range(0.15..PI - 0.15);
        let p = rng.gen_range(0.0..TAU);
        if admissible(t, p) {
            out.push(pt(t, p));
        }
    }
    out
}

#[test]
fn constant_field_examples() {
    let one = |_: AngularPoint| Complex64::new(1.0, 0.0);
    let z = geometric_momentum_apply(Axis::Z, &one, pt(PI / 3.0, 0.0), 1e-4).unwrap();
    assert!((z - 0.5 * I).norm() < 1e-12);
    let x = geometric_momentum_apply(Axis::X, &one, pt(FRAC_PI_2, 0.0), 1e-4).unwrap();
    assert!((x - I).norm() < 1e-12);
    let y = geometric_momentum_apply(Axis::Y, &one, pt(FRAC_PI_2, FRAC_PI_2), 1e-4).unwrap();
    assert!((y - I).norm() < 1e-12);
}

#[test]
fn sum_rule_at_random_points() {
    let psi = |p: AngularPoint| p.theta().sin() * (I * p.phi()).exp();
    let pts = random_points(50, 7, |_, _| true);
    let residual = |h: f64| {
        pts.iter()
            .map(|&p| normal_posmom_apply(&psi, p, h).unwrap().norm())
            .fold(0.0, f64::max)
    };
    let (a, b) = (residual(1e-3), residual(5e-4));
    assert!(a < 1e-4, "{a}");
    assert!((a / b - 4.0).abs() < 0.8, "{a} {b}");
}

#[test]
fn qz_examples() {
    let psi1 = |p: AngularPoint| {
        let t = p.theta();
        (-I * 1.5 * t.tan().ln()).exp() / (t.sin() * t.cos().sqrt() * TAU.sqrt())
    };
    let p = pt(0.7, 0.0);
    let v = qz_apply(&psi1, p, 1e-4).unwrap();
    assert!((v - 1.5 * psi1.eval(p)).norm() < 1e-7);

    let flat = |p: AngularPoint| (I * p.phi()).exp();
    let v = qz_apply(&flat, pt(FRAC_PI_2, 2.0), 1e-4).unwrap();
    assert!((v + 0.5 * I * (2.0 * I).exp()).norm() < 1e-12);
}

#[test]
fn qz_agrees_with_symmetrized_product_definition() {
    let psi = |p: AngularPoint| {
        let (s, c) = p.theta().sin_cos();
        c * c * s * (I * p.phi()).exp() + 0.2
    };
    for p in random_points(20, 3, |_, _| true) {
        let a = qz_apply(&psi, p, 1e-4).unwrap();
        let b = posmom_apply(Axis::Z, &psi, p, 1e-4).unwrap();
        assert!((a - b).norm() < 1e-7);
    }
}

#[test]
fn lz_examples_and_commutator() {
    let e3 = |p: AngularPoint| (3.0 * I * p.phi()).exp();
    let p = pt(1.2, 0.4);
    assert!((lz_apply(&e3, p, 1e-4).unwrap() - 3.0 * e3(p)).norm() < 1e-7);
    let c = |_: AngularPoint| Complex64::new(2.0, -1.0);
    assert_eq!(lz_apply(&c, p, 1e-4).unwrap(), Complex64::new(0.0, 0.0));

    let psi = |p: AngularPoint| p.theta().sin().powi(2) * (2.0 * I * p.phi()).exp();
    let comm = |h: f64| qz_lz_commutator(&psi, p, h).unwrap().norm();
    assert!(comm(1e-3) < 1e-5);
}

#[test]
fn eigenfunction_examples() {
    let s = EigenfunctionSpec::new(0.0, ParitySector::Even).unwrap();
    let v = psi_eigenfunction(s, PI / 4.0).unwrap();
    assert!((v.re - 2f64.powf(0.25) / TAU.sqrt()).abs() < 1e-15);
    assert!((v.re - 0.474_40).abs() < 5e-5);
    let odd = EigenfunctionSpec::new(2.3, ParitySector::Odd).unwrap();
    for &t in &[0.2, 0.9, 1.4] {
        let a = psi_eigenfunction(odd, t).unwrap();
        let b = psi_eigenfunction(odd, PI - t).unwrap();
        assert!((a + b).norm() <= 1e-13 * a.norm());
    }
}

#[test]
fn cross_parity_orthogonality() {
    // ∫_0^π Ψ^{+*}_λ Ψ^-_{λ'} sinθ dθ on a symmetric trapezoid grid in θ,
    // cut off at the singular sets
    let n = 200_000;
    for &(l1, l2) in &[(0.0, 0.0), (0.5, -1.0), (2.0, 2.0)] {
        let e = EigenfunctionSpec::new(l1, ParitySector::Even).unwrap();
        let o = EigenfunctionSpec::new(l2, ParitySector::Odd).unwrap();
        let (a, b) = (0.05, FRAC_PI_2 - 0.05);
        let h = (b - a) / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=n {
            let t = a + k as f64 * h;
            let w = if k == 0 || k == n { 0.5 } else { 1.0 } * h;
            for tt in [t, PI - t] {
                acc += psi_eigenfunction(e, tt).unwrap().conj() * psi_eigenfunction(o, tt).unwrap() * tt.sin() * w;
            }
        }
        assert!(acc.norm() < 1e-12, "{acc}");
    }
}

fn away_from_singular_sets(t: f64, p: f64) -> bool {
    let q = p / FRAC_PI_2;
    (t - FRAC_PI_2).abs() > 0.1 && (q - q.round()).abs() > 0.1
}

#[test]
fn simultaneous_eigenfunction_in_all_quadrants() {
    let (ax, ay) = (0.7, -1.9);
    let f = move |p: AngularPoint| qxyz_simultaneous_eigenfunction(ax, ay, p).unwrap();
    for p in random_points(20, 11, away_from_singular_sets) {
        let v = f(p);
        for (axis, want) in [(Axis::X, ax), (Axis::Y, ay), (Axis::Z, -(ax + ay))] {
            let got = posmom_apply(axis, &f, p, 1e-4).unwrap();
            assert!((got - want * v).norm() < 1e-6 * v.norm(), "{axis:?} at {p:?}");
        }
    }
}

#[test]
fn zero_eigenvalue_simultaneous_state() {
    let f = |p: AngularPoint| qxyz_simultaneous_eigenfunction(0.0, 0.0, p).unwrap();
    for p in random_points(10, 5, away_from_singular_sets) {
        let v = f(p);
        for axis in Axis::ALL {
            assert!(posmom_apply(axis, &f, p, 1e-4).unwrap().norm() < 1e-6 * v.norm());
        }
    }
}

/// `⟨f, Q_z g⟩ - ⟨Q_z f, g⟩` with the stencil operator, for test functions
/// supported in `θ ∈ (0.3, 1.2)`.
fn hermiticity_defect(step: f64) -> f64 {
    let bump = |t: f64| {
        let x = (t - 0.75) / 0.45;
        if x.abs() < 1.0 {
            (-1.0 / (1.0 - x * x)).exp()
        } else {
            0.0
        }
    };
    let f = move |p: AngularPoint| bump(p.theta()) * (1.0 + 0.3 * p.theta()) * (I * p.phi()).exp();
    let g = move |p: AngularPoint| bump(p.theta()) * Complex64::new(p.theta().cos(), 0.4) * (I * p.phi()).exp();
    let (nt, np) = (2000, 16);
    let (a, b) = (0.3, 1.2);
    let ht = (b - a) / nt as f64;
    let hp = TAU / np as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 1..nt {
        let t = a + i as f64 * ht;
        for j in 0..np {
            let p = pt(t, j as f64 * hp);
            let lhs = f(p).conj() * qz_apply(&g, p, step).unwrap();
            let rhs = qz_apply(&f, p, step).unwrap().conj() * g(p);
            acc += (lhs - rhs) * t.sin() * ht * hp;
        }
    }
    acc.norm()
}

#[test]
fn discrete_hermiticity() {
    let a = hermiticity_defect(1e-2);
    let b = hermiticity_defect(5e-3);
    assert!(a < 1e-3, "{a}");
    assert!((a / b - 4.0).abs() < 0.8, "{a} {b}");
}

#[test]
fn richardson_stencil_reaches_high_accuracy() {
    let psi = |p: AngularPoint| {
        let t = p.theta();
        (-I * 2.0 * t.tan().ln()).exp() / (t.sin() * t.cos().sqrt())
    };
    let p = pt(0.9, 0.0);
    let plain = (qz_apply(&psi, p, 1e-3).unwrap() - 2.0 * psi(p)).norm();
    let rich = (qz_apply(&psi, p, Stencil::new(1e-3).with_richardson()).unwrap() - 2.0 * psi(p)).norm();
    assert!(rich < plain * 1e-2, "{rich} vs {plain}");
}

#[test]
fn stencil_rejects_points_near_poles() {
    let one = |_: AngularPoint| Complex64::new(1.0, 0.0);
    assert!(qz_apply(&one, pt(1.5e-4, 0.0), 1e-4).is_err());
    assert!(geometric_momentum_apply(Axis::X, &one, pt(PI - 1e-4, 0.0), 1e-4).is_err());
    assert!(lz_apply(&one, pt(2.1e-4, 0.0), 1e-4).is_ok());
}
