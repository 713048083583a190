//! CSV and JSON renderings of results. Output depends only on the data, so
//! identical runs give byte-identical files.

use num_complex::Complex64;
use posmom::posmometry::{ExpansionCoefficients, ParitySector, Posmogram};
use posmom::sho::{ComparisonReport, Overlay, RESEMBLANCE_LINF};
use serde::Serialize;
use std::fmt::Write;

use crate::format::g17;

pub const UNITS: &str = "dimensionless units (hbar = r = 1)";

pub fn density_csv(posmograms: &[Posmogram]) -> String {
    let mut s = String::new();
    writeln!(s, "# posmom density |I_lm(lambda)|^2; {UNITS}").unwrap();
    writeln!(s, "lambda,re_I,im_I,density").unwrap();
    for p in posmograms {
        writeln!(s, "# l={} m={} parity={}", p.mode().l(), p.mode().m(), p.parity()).unwrap();
        let lambdas = p.grid().values();
        for ((l, a), d) in lambdas.iter().zip(p.amplitudes()).zip(p.density()) {
            row(&mut s, *l, *a, *d);
        }
    }
    s
}

fn row(s: &mut String, lambda: f64, a: Complex64, d: f64) {
    writeln!(s, "{},{},{},{}", g17(lambda), g17(a.re), g17(a.im), g17(d)).unwrap();
}

#[derive(Serialize)]
struct DensityJson<'a> {
    units: &'static str,
    posmograms: &'a [Posmogram],
}

pub fn density_json(posmograms: &[Posmogram]) -> serde_json::Result<String> {
    serde_json::to_string_pretty(&DensityJson {
        units: UNITS,
        posmograms,
    })
    .map(|s| s + "\n")
}

pub fn overlay_csv(report: &ComparisonReport, overlay: &Overlay) -> String {
    let mut s = String::new();
    writeln!(s, "# posmom density vs rescaled SHO momentum density; {UNITS}").unwrap();
    writeln!(
        s,
        "# l={} m={} sho_level={} scale={} linf_diff={} l1_diff={} linf_relative={}",
        report.mode.l(),
        report.mode.m(),
        report.sho_level,
        g17(report.scale),
        g17(report.linf_diff),
        g17(report.l1_diff),
        g17(report.linf_relative)
    )
    .unwrap();
    writeln!(
        s,
        "# resemblance threshold linf_relative < {RESEMBLANCE_LINF} is a convention of this tool"
    )
    .unwrap();
    writeln!(s, "lambda,posmom_density,sho_density").unwrap();
    for ((l, p), h) in overlay.lambda.iter().zip(&overlay.posmom).zip(&overlay.sho) {
        writeln!(s, "{},{},{}", g17(*l), g17(*p), g17(*h)).unwrap();
    }
    s
}

#[derive(Serialize)]
struct CompareJson<'a> {
    units: &'static str,
    report: &'a ComparisonReport,
    overlay: &'a Overlay,
}

pub fn compare_json(report: &ComparisonReport, overlay: &Overlay) -> serde_json::Result<String> {
    serde_json::to_string_pretty(&CompareJson {
        units: UNITS,
        report,
        overlay,
    })
    .map(|s| s + "\n")
}

/// Blocks whose coefficients all stay below `floor` are omitted.
pub fn expansion_csv(c: &ExpansionCoefficients, floor: f64) -> String {
    let mut s = String::new();
    writeln!(s, "# posmom expansion coefficients c_m^(+/-)(lambda); {UNITS}").unwrap();
    writeln!(s, "# parseval={}", g17(c.parseval())).unwrap();
    writeln!(s, "lambda,re_c,im_c,density").unwrap();
    let lambdas = c.grid().values();
    for (m, parity, values) in kept_blocks(c, floor) {
        writeln!(s, "# m={m} parity={parity}").unwrap();
        for (l, v) in lambdas.iter().zip(values) {
            row(&mut s, *l, *v, v.norm_sqr());
        }
    }
    s
}

fn kept_blocks(c: &ExpansionCoefficients, floor: f64) -> impl Iterator<Item = (i32, ParitySector, &[Complex64])> {
    c.blocks().filter(move |(_, _, v)| v.iter().any(|z| z.norm() > floor))
}

#[derive(Serialize)]
struct Block<'a> {
    m: i32,
    parity: ParitySector,
    weight: f64,
    coefficients: &'a [Complex64],
}

#[derive(Serialize)]
struct ExpansionJson<'a> {
    units: &'static str,
    grid: &'a posmom::LambdaGrid,
    parseval: f64,
    blocks: Vec<Block<'a>>,
}

pub fn expansion_json(c: &ExpansionCoefficients, floor: f64) -> serde_json::Result<String> {
    let blocks = kept_blocks(c, floor)
        .map(|(m, parity, coefficients)| Block {
            m,
            parity,
            weight: c.weight(m, parity),
            coefficients,
        })
        .collect();
    serde_json::to_string_pretty(&ExpansionJson {
        units: UNITS,
        grid: c.grid(),
        parseval: c.parseval(),
        blocks,
    })
    .map(|s| s + "\n")
}
