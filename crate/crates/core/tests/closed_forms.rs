use posmom::closed_forms::{
    closed_form_amplitude, closed_form_amplitude_with, crossvalidate, Mode21Denominator, CLOSED_FORM_MODES,
};
use posmom::posmometry::{amplitude, trapezoid, LambdaGrid, ModeIndex, ParitySector, QuadratureConfig};

fn mode(l: u32, m: i32) -> ModeIndex {
    ModeIndex::new(l, m).unwrap()
}

#[test]
fn crossvalidation_examples_pass() {
    let g = LambdaGrid::symmetric(5.0, 201).unwrap();
    for &(l, m) in &CLOSED_FORM_MODES {
        let r = crossvalidate(mode(l, m), &g, 1e-8, &QuadratureConfig::default()).unwrap();
        assert!(r.pass, "({l},{m}): {}", r.max_rel_deviation);
        assert_eq!(r.points, 201);
    }
}

#[test]
fn mode21_report_documents_reading() {
    let g = LambdaGrid::symmetric(5.0, 201).unwrap();
    let r = crossvalidate(mode(2, 1), &g, 1e-7, &QuadratureConfig::default()).unwrap();
    assert_eq!(r.reading, Some(Mode21Denominator::ImaginaryShift));
    assert!(r.printed_reading_deviation.unwrap() > 0.1);
    assert!(r.finding.unwrap().contains("2λ+3i"));
    let other = crossvalidate(mode(1, 1), &g, 1e-7, &QuadratureConfig::default()).unwrap();
    assert!(other.reading.is_none() && other.finding.is_none());
}

#[test]
fn spot_values_against_quadrature() {
    let cfg = QuadratureConfig::default();
    let q = amplitude(mode(2, 2), ParitySector::Even, 2.7, &cfg).unwrap();
    let c = closed_form_amplitude(mode(2, 2), 2.7).unwrap();
    assert!((q - c).norm() < 1e-8);
    let q = amplitude(mode(0, 0), ParitySector::Even, 0.0, &cfg).unwrap();
    assert!((closed_form_amplitude(mode(0, 0), 0.0).unwrap() - q).norm() < 1e-8);
}

#[test]
fn densities_are_even() {
    for &(l, m) in &CLOSED_FORM_MODES {
        for k in 1..40 {
            let lam = 0.37 * k as f64;
            let a = closed_form_amplitude(mode(l, m), lam).unwrap().norm_sqr();
            let b = closed_form_amplitude(mode(l, m), -lam).unwrap().norm_sqr();
            assert!((a - b).abs() < 1e-10, "({l},{m}) at {lam}");
        }
    }
}

#[test]
fn closed_forms_are_normalized() {
    let g = LambdaGrid::symmetric(15.0, 3001).unwrap();
    for &(l, m) in &CLOSED_FORM_MODES {
        let d: Vec<f64> = g
            .values()
            .iter()
            .map(|&lam| closed_form_amplitude(mode(l, m), lam).unwrap().norm_sqr())
            .collect();
        let n = trapezoid(&d, g.spacing());
        assert!((n - 1.0).abs() < 1e-5, "({l},{m}): {n}");
    }
}

#[test]
fn printed_reading_is_finite_at_its_pole() {
    let v = closed_form_amplitude_with(mode(2, 1), -1.5, Mode21Denominator::Printed).unwrap();
    assert!(v.re.is_finite() && v.im.is_finite());
    let ok = closed_form_amplitude(mode(2, 1), -1.5).unwrap();
    let q = amplitude(mode(2, 1), ParitySector::Odd, -1.5, &QuadratureConfig::default()).unwrap();
    assert!((ok - q).norm() < 1e-9);
}
