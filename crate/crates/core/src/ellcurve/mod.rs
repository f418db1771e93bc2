//! Weierstrass curves over an arbitrary coefficient field, the chord-tangent
//! group law, quartic-to-Weierstrass maps and minimal models over Q(t).

pub mod curve;
pub mod minimal;
pub mod quartic;

pub use curve::{to_short_iso, CurvePoint, WeierstrassCurve, WeierstrassIso};
pub use minimal::{
    base_change, descend_square, euler_chi, minimal_model, minimal_model_descended,
    pullback_square, reduce_curve,
    specialize,
};
pub use quartic::{
    quartic_contains, quartic_invariants, quartic_jacobian_invariants, quartic_to_weierstrass,
    ModelMap, QuarticMap, QuarticPoint,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum EllCurveError {
    #[error("singular curve (discriminant 0)")]
    Singular,
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("expected a quartic, got degree {0}")]
    NotQuartic(i64),
    #[error("point {0} has no image under the model map")]
    Unmappable(String),
    #[error("coefficient has a pole at {0}")]
    Pole(String),
}
