//! Special functions: Hermite and Laguerre functions, Bessel kernels,
//! gamma, circular harmonics and the constant `c(k, m)`.

mod bessel;
mod gamma;
mod harmonic;
mod hermite;
mod laguerre;

pub use bessel::{
    bessel_k, bessel_ratio, bessel_ratio_integral, bessel_ratio_series, BesselKernel,
};
pub(crate) use bessel::kernel_for;
pub(crate) use gamma::lgamma_pos;
pub use gamma::{c_constant, gamma_ratio, log_gamma};
pub use harmonic::{circular_harmonic, harmonic_count};
pub use hermite::{
    hermite_phi, hermite_phi_all, hermite_phi_multi, hermite_phi_value, HermiteIndex,
    HERMITE_K_MAX,
};
pub use laguerre::{
    laguerre_fn_all, laguerre_psi, laguerre_psi_all, psi_norm_sq, varphi, varphi_all,
    LaguerreOrder,
};

use crate::C64;
use serde::{Deserialize, Serialize};

/// A computed value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialValue {
    pub value: C64,
    pub abs_err_estimate: f64,
}

impl SpecialValue {
    pub fn real(value: f64, abs_err_estimate: f64) -> Self {
        SpecialValue {
            value: C64::new(value, 0.0),
            abs_err_estimate,
        }
    }
}
