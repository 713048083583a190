//! Special-function kernel.

mod gamma;
mod hermite;
mod hypergeometric;
mod legendre;

pub use gamma::complex_gamma;
pub use hermite::{sho_eigenfunction, sho_momentum_density};
pub use hypergeometric::{hyp2f1_at_neg1, incomplete_beta_rank_neg1};
pub use legendre::{assoc_legendre, norm_const, NormalizedLegendre};
