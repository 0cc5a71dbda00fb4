//! Top views: generalized circles, quadratic circle families and their
//! envelope cyclics, Möbius transport of cyclics, and the dual conic of the
//! top views of a parabola surface.

mod circle;
mod cyclic;
mod dual;
mod family;
mod pipeline;
pub mod svg;
mod tangency;

pub use circle::{image_of_real_line, moebius_image_circle, GeneralizedCircle, HermForm, Locus};
pub use cyclic::{cyclic_transform, Cyclic};
pub use dual::{conic_eval, dual_conic_param1, dual_conic_with, line_families, DualConic, DualConicFit, Sym3, Vec3};
pub use family::{envelope_cyclic, family_product, family_sum, CircleFamily, SumEnvelope, SumShape};
pub use pipeline::{top2_pipeline, Top2Report};
pub use tangency::{tangency_points, tangency_samples, IsoPoint};

use crate::bilinfrac::BilinError;
use crate::polyring::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopviewError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Bilin(#[from] BilinError),
    #[error("generalized circle needs alpha or beta nonzero")]
    DegenerateCircle,
    #[error("generalized circle has no real points or only one")]
    PointCircle,
    #[error("discriminant vanishes identically: the family is a pencil and has no envelope")]
    NoEnvelope,
    #[error("family is linear in the parameter (A = 0); its members share the base locus B = C = 0")]
    LinearFamily,
    #[error("polynomial is not of cyclic shape: {0}")]
    NotCyclicShape(String),
    #[error("cyclic polynomial is zero")]
    ZeroCyclic,
    #[error("no three rational points found on the generalized circle")]
    NoRationalPoints,
    #[error("fewer than 5 independent top-view lines")]
    TooFewLines,
    #[error("top-view lines of the two families share no dual conic")]
    NoCommonConic,
    #[error("top view is degenerate (class {0})")]
    TopviewDegenerate(&'static str),
    #[error("top-view map has irrational canonical form; envelopes need an exact witness")]
    IrrationalWitness,
}

impl TopviewError {
    pub fn tag(&self) -> &'static str {
        match self {
            TopviewError::Poly(e) => e.tag(),
            TopviewError::Bilin(e) => e.tag(),
            TopviewError::DegenerateCircle => "topview.degenerate_circle",
            TopviewError::PointCircle => "topview.point_circle",
            TopviewError::NoEnvelope => "topview.no_envelope",
            TopviewError::LinearFamily => "topview.linear_family",
            TopviewError::NotCyclicShape(_) => "topview.not_cyclic_shape",
            TopviewError::ZeroCyclic => "topview.zero_cyclic",
            TopviewError::NoRationalPoints => "topview.no_rational_points",
            TopviewError::TooFewLines => "topview.too_few_lines",
            TopviewError::NoCommonConic => "topview.no_common_conic",
            TopviewError::TopviewDegenerate(_) => "topview.degenerate_topview",
            TopviewError::IrrationalWitness => "topview.irrational_witness",
        }
    }
}
