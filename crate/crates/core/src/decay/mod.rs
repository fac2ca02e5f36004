//! Gaussian envelopes, decay-rate fits and the decay bounds for Hardy-class
//! functions.

mod envelope;
mod fit;
mod theorem;

pub use envelope::{
    hardy_envelope, hardy_envelope_hat, hardy_envelope_partial, profile_envelope, radial_profile,
    spherical_mean_envelope, EnvelopeEstimate, QUADRATURE_FLOOR, UNDERFLOW_FLOOR,
};
pub use fit::{
    bound_check, bound_check_with, decay_fit, decay_fit_with, tail_window, Abscissa, BoundReport,
    DecayFit, PMode, ERR_FRACTION, GROWTH_TOL, MIN_FIT_POINTS, ZERO_FLOOR,
};
pub use theorem::{
    theorem_check, EnvelopeCheck, Hypothesis, Status, Theorem, TheoremReport, THEOREM_ANNULUS,
    THEOREM_KMAX_1D, THEOREM_KMAX_2D, THEOREM_KMAX_LAGUERRE, THEOREM_KMAX_TAYLOR,
};
