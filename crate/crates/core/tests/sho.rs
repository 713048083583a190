use posmom::posmometry::{posmogram, trapezoid, LambdaGrid, ModeIndex, QuadratureConfig};
use posmom::sho::{compare, fit_scale, overlay};

fn mode(l: u32, m: i32) -> ModeIndex {
    ModeIndex::new(l, m).unwrap()
}

#[test]
fn ground_state_scale_and_variance() {
    let g = LambdaGrid::symmetric(15.0, 3001).unwrap();
    let p = posmogram(mode(0, 0), &g, &QuadratureConfig::default()).unwrap();
    let s = fit_scale(&p, 0).unwrap();
    assert!((0.5..=2.0).contains(&s), "{s}");
    let r = compare(&p, 0).unwrap();
    assert!((r.variance_sho - r.variance_posmom).abs() < 1e-8);
    assert!((r.mass_posmom - 1.0).abs() < 1e-4);
    assert!((r.mass_sho - 1.0).abs() < 1e-4);
    assert!(r.linf_diff >= 0.0 && r.l1_diff >= 0.0);
}

#[test]
fn wrong_level_is_further_away() {
    let g = LambdaGrid::symmetric(15.0, 3001).unwrap();
    let p = posmogram(mode(0, 0), &g, &QuadratureConfig::default()).unwrap();
    let right = compare(&p, 0).unwrap();
    let wrong = compare(&p, 4).unwrap();
    assert!(wrong.linf_diff > right.linf_diff);
}

#[test]
fn high_mode_pairs_with_tenth_level() {
    let g = LambdaGrid::symmetric(25.0, 5001).unwrap();
    let p = posmogram(mode(20, 0), &g, &QuadratureConfig::default()).unwrap();
    let r10 = compare(&p, 10).unwrap();
    assert_eq!(r10.antinodes_posmom, r10.antinodes_sho);
    assert_eq!(r10.nodes_posmom, r10.nodes_sho);
    for n in [8, 9, 11, 12] {
        assert!(compare(&p, n).unwrap().l1_diff > r10.l1_diff, "n = {n}");
    }
    assert!((r10.mass_posmom - 1.0).abs() < 1e-4 && (r10.mass_sho - 1.0).abs() < 1e-4);
}

#[test]
fn overlay_columns_align() {
    let g = LambdaGrid::symmetric(10.0, 401).unwrap();
    let p = posmogram(mode(2, 0), &g, &QuadratureConfig::default()).unwrap();
    let o = overlay(&p, 1).unwrap();
    assert_eq!(o.lambda.len(), 401);
    assert_eq!(o.posmom.len(), o.sho.len());
    assert!((trapezoid(&o.sho, g.spacing()) - 1.0).abs() < 1e-6);
}
