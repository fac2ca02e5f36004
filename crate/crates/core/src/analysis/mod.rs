//! Hermite projection norms and related coefficient tables.

mod direct;
mod spherical;
mod t_operator;
mod table;
mod wigner_route;

pub use direct::{
    fourier_hermite_pairs, hermite_coeff, hermite_coeffs, proj_norm_direct, proj_norms_direct,
    DIRECT_K_MAX,
};
pub use table::{fmt17, CoefficientTable, Quantity, Route, TableEntry, TableMeta};
pub use wigner_route::{proj_norm_wigner, proj_norms_wigner};
pub use spherical::{
    d_k_norms, laguerre_coeff, proj_norm_spherical, proj_norms_spherical, proj_norms_sq_via_c,
    spherical_decompose, DkRoute, SphericalDecomposition, SphericalProfile, DK_DIRECTIONS,
    REDUCED_MIN_RADIUS,
};
pub use t_operator::{t_operator, T_ANGULAR_SAMPLES};
