//! Identity checks, fixed-point iterations and series diagnostics.

mod estimates;
mod fixed_point;
mod identities;
pub mod real;

pub use estimates::{
    estimate_mu, exponent_diagnostics, two_point_decay, v_truncated, y_truncated, DecayRow,
    DiagnosticsParams, DiagnosticsReport, ExponentEstimate, MuEstimate, Regression, MIN_POINTS,
};
pub use fixed_point::{
    g_eval, g_inverse, h_eval, iterate_mu, phi_inv, solve_mu_tilde, Direction, FixedPointTrace,
};
pub use identities::{
    expand_black_white, sandwich_upper, verify_bipartite_substitution, verify_circumnavigation, verify_fisher_identity,
    verify_sandwich, IdentityReport, Mismatch, SandwichKind,
};
pub use real::{Real, DEFAULT_DIGITS};
