//! Integral transforms: Fourier (full and partial), Hankel, Bargmann,
//! `U_δ`, Fourier–Wigner, symplectic Fourier, sphere radialization and
//! Cauchy-integral Taylor coefficients.

mod bargmann;
mod cauchy;
mod field;
mod fourier;
mod function;
mod hankel;
mod profile;
mod radial;
mod symplectic;
mod udelta;
mod wigner;

pub use bargmann::{
    bargmann_1d, bargmann_1d_report, bargmann_vector, bargmann_vector_report, BargmannProjector,
};
pub use cauchy::{
    cauchy_radius, cauchy_samples, coeffs_from_samples, taylor_coeffs_cauchy,
    taylor_coeffs_cauchy_m,
};
pub use field::{ComplexField, FieldEval, FieldRecord, GridMeta};
pub use fourier::{fourier, fourier_grid, fourier_report, fourier_spec, FourierConvention};
pub use function::{FunctionMeta, FunctionSpec, Parity, RegistryEntry, REGISTRY};
pub use hankel::{hankel, hankel_profile, hankel_report};
pub use radial::{default_sphere, radial_hankel, radial_hankel_many, radialize, radialize_with};
pub use symplectic::{
    check_field_envelope, symplectic_field, symplectic_fourier, symplectic_fourier_with,
    SymplecticNorm,
};
pub use profile::{laguerre_inner_all, RadialProfile};
pub use udelta::{
    cholewinski_moment, cholewinski_moment_exact, cholewinski_weight, cholewinski_weight_alt,
    u_delta, u_delta_report, UdeltaRoute,
};
pub use wigner::{
    fourier_wigner, fourier_wigner_report, wigner_field, WignerConfig, WignerEvaluator,
};

use crate::quadrature::DEFAULT_N;

/// Gauss–Legendre node count for an integrand oscillating at angular
/// frequency `omega` over a half-width `half_width`, sized so that the
/// half-resolution companion is itself resolved.
pub(crate) fn line_nodes(omega: f64, half_width: f64) -> usize {
    let need = (0.6 * omega * half_width + 60.0).ceil() as usize;
    (2 * need).clamp(DEFAULT_N, 2000)
}

/// Node-count rule shared with the analysis routes.
pub fn line_nodes_pub(omega: f64, half_width: f64) -> usize {
    line_nodes(omega, half_width)
}
