use super::types::Posmogram;

/// Relative depth below which a local minimum counts as a node.
pub const DEFAULT_NODE_THRESHOLD: f64 = 1e-4;

/// Finest grid spacing at which node counting is considered resolved.
pub const NODE_RESOLUTION: f64 = 0.02;

/// Trapezoid integral of a uniformly sampled density.
pub fn trapezoid(values: &[f64], spacing: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => spacing * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

/// `∫ |I(λ)|² dλ` over the grid of `p`.
///
/// Logs a warning when the density at either end of the grid exceeds the
/// absolute tolerance of the posmogram's configuration, since the
/// truncated tails then carry non-negligible mass.
pub fn normalization(p: &Posmogram) -> f64 {
    let d = p.density();
    let edge = d.first().copied().unwrap_or(0.0).max(d.last().copied().unwrap_or(0.0));
    if edge > p.config().abs_tol {
        log::warn!(
            "mode {}: density at the grid edge is {edge:.3e}; grid [{}, {}] is too narrow for a full normalization",
            p.mode(),
            p.grid().lo(),
            p.grid().hi()
        );
    }
    trapezoid(d, p.grid().spacing())
}

/// Number of interior local minima of the density that lie below
/// `rel_threshold` times its maximum, counted over the whole grid.
pub fn count_nodes(p: &Posmogram, rel_threshold: f64) -> usize {
    let spacing = p.grid().spacing();
    if spacing > NODE_RESOLUTION {
        log::warn!("node count at spacing {spacing} may miss narrow minima (resolved below {NODE_RESOLUTION})");
    }
    count_density_nodes(p.density(), rel_threshold)
}

/// [`count_nodes`] for a bare density sample.
pub fn count_density_nodes(d: &[f64], rel_threshold: f64) -> usize {
    let peak = d.iter().cloned().fold(0.0, f64::max);
    if peak <= 0.0 {
        return 0;
    }
    let thr = rel_threshold * peak;
    let mut count = 0;
    for k in 1..d.len().saturating_sub(1) {
        let (a, b, c) = (d[k - 1], d[k], d[k + 1]);
        if !(b < a && b <= c) {
            continue;
        }
        let below = b < thr;
        let curvature = a - 2.0 * b + c;
        if curvature > 0.0 {
            let vertex = b - (c - a) * (c - a) / (8.0 * curvature);
            if (vertex < thr) != below {
                log::warn!(
                    "ambiguous minimum near sample {k}: sampled {b:.3e}, interpolated {vertex:.3e}, threshold {thr:.3e}"
                );
            }
        }
        if below {
            count += 1;
        }
    }
    count
}

/// Nodes on the half axis `λ > 0` only; a minimum exactly at `λ = 0` is
/// not counted.
pub fn count_nodes_half_axis(p: &Posmogram, rel_threshold: f64) -> usize {
    let lambdas = p.grid().values();
    let d = p.density();
    let start = lambdas.iter().position(|&l| l > 0.0).unwrap_or(d.len());
    let from = start.saturating_sub(1);
    let sub = &d[from..];
    let peak = d.iter().cloned().fold(0.0, f64::max);
    let thr = rel_threshold * peak;
    (1..sub.len().saturating_sub(1))
        .filter(|&k| from + k >= start)
        .filter(|&k| sub[k] < sub[k - 1] && sub[k] <= sub[k + 1] && sub[k] < thr)
        .count()
}

/// Interior local maxima above `rel_threshold` times the peak.
pub fn count_antinodes(d: &[f64], rel_threshold: f64) -> usize {
    let peak = d.iter().cloned().fold(0.0, f64::max);
    let thr = rel_threshold * peak;
    (1..d.len().saturating_sub(1))
        .filter(|&k| d[k] > d[k - 1] && d[k] >= d[k + 1] && d[k] > thr)
        .count()
}
