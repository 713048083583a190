//! Posmom distributions of spherical harmonics and the expansion of general
//! states in the `Q_z` eigenbasis.

mod amplitude;
mod analysis;
mod expansion;
mod types;
mod weight;

pub use amplitude::{amplitude, amplitude_unreduced, posmogram, posmogram_in_sector, posmogram_with, AmplitudeTable};
pub use analysis::{
    count_antinodes, count_density_nodes, count_nodes, count_nodes_half_axis, normalization, trapezoid,
    DEFAULT_NODE_THRESHOLD, NODE_RESOLUTION,
};
pub use expansion::{
    expand_state, expand_state_grid, reconstruct_state, ExpandOptions, ExpansionCoefficients, StateProjection,
};
pub use types::{LambdaGrid, ModeIndex, ParitySector, Posmogram, QuadratureConfig};
pub use weight::{weight_function, WeightFunction};
