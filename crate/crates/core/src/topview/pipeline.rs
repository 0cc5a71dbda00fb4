//! Top views of an isotropic-circle surface: classify the top-view map, build
//! the two circle families in the canonical plane, and move their envelopes
//! back to the top-view plane.

use super::circle::{image_of_real_line, GeneralizedCircle};
use super::cyclic::{cyclic_transform, Cyclic};
use super::family::{envelope_cyclic, family_product, family_sum, CircleFamily};
use super::tangency::{tangency_samples, IsoPoint};
use super::TopviewError;
use crate::bilinfrac::{classify_exact, topview_map, Canonical, Moebius};
use crate::scalar::GaussianRational;
use crate::surface::IsoCircleSurface;

/// Members sampled per family for the coincidence check.
const MEMBERS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct Top2Report {
    pub class: Canonical,
    pub case: String,
    /// Generalized circles swept by `u` and by `v` in the canonical plane.
    pub omega1: GeneralizedCircle,
    pub omega2: GeneralizedCircle,
    /// Envelope of the top views of the curves `v = const`.
    pub envelope1: Option<Cyclic>,
    /// Envelope of the top views of the curves `u = const`.
    pub envelope2: Option<Cyclic>,
    /// Present only when both envelopes exist.
    pub same_cyclic: Option<bool>,
    /// Largest normalized residual seen by the coincidence check.
    pub max_residual: Option<f64>,
    pub samples: usize,
    pub diagnostics: Vec<String>,
}

fn envelope_or_none(fam: &CircleFamily, label: &str, diags: &mut Vec<String>) -> Result<Option<Cyclic>, TopviewError> {
    match envelope_cyclic(fam) {
        Ok(c) => Ok(Some(c)),
        Err(e @ (TopviewError::NoEnvelope | TopviewError::LinearFamily)) => {
            diags.push(format!("{label}: {}", e.tag()));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Tangency samples of `fam`, moved by `back`, checked against `target`.
fn cross_check(fam: &CircleFamily, back: &Moebius<GaussianRational>, target: &Cyclic) -> (f64, usize) {
    let pts: Vec<IsoPoint> = tangency_samples(fam, MEMBERS).iter().filter_map(|p| p.moebius(back)).collect();
    let worst = pts.iter().map(|p| target.residual(p.x, p.y)).fold(0.0, f64::max);
    (worst, pts.len())
}

pub fn top2_pipeline(s: &IsoCircleSurface, tol: f64) -> Result<Top2Report, TopviewError> {
    let f = topview_map(s);
    let class = classify_exact(&f).map_err(|_| TopviewError::IrrationalWitness)?;
    if !matches!(class.tag, Canonical::UV | Canonical::UPlusV) {
        return Err(TopviewError::TopviewDegenerate(class.tag.name()));
    }
    let (cinv, dinv) = (class.c.inverse(), class.d.inverse());
    let back = class.m.inverse();
    let omega1 = image_of_real_line(&cinv);
    let omega2 = image_of_real_line(&dinv);
    let (fam1, fam2) = if class.tag == Canonical::UV {
        (family_product(&omega1, &dinv), family_product(&omega2, &cinv))
    } else {
        (family_sum(&omega1, &dinv)?, family_sum(&omega2, &cinv)?)
    };
    let mut diagnostics = class.diagnostics.clone();
    let e1 = envelope_or_none(&fam1, "envelope1", &mut diagnostics)?;
    let e2 = envelope_or_none(&fam2, "envelope2", &mut diagnostics)?;
    let envelope1 = e1.as_ref().map(|c| cyclic_transform(&back, c)).transpose()?;
    let envelope2 = e2.as_ref().map(|c| cyclic_transform(&back, c)).transpose()?;
    let (same_cyclic, max_residual, samples) = match (&envelope1, &envelope2) {
        (Some(c1), Some(c2)) => {
            let (r12, n12) = cross_check(&fam1, &back, c2);
            let (r21, n21) = cross_check(&fam2, &back, c1);
            let worst = r12.max(r21);
            (Some(worst <= tol), Some(worst), n12 + n21)
        }
        _ => {
            diagnostics.push("coincidence check skipped: an envelope is missing".to_string());
            (None, None, 0)
        }
    };
    Ok(Top2Report {
        class: class.tag,
        case: class.case,
        omega1,
        omega2,
        envelope1,
        envelope2,
        same_cyclic,
        max_residual,
        samples,
        diagnostics,
    })
}
