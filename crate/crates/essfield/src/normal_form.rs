//! Canonical representatives under the affine action, with and without the
//! extra circle action that classifies the flat metrics, and the resulting
//! equivalence decision.
//!
//! A gauge `G(w) = a·w + b` is chosen so that `E` becomes monic (`a^d = 1/c₀`)
//! and one polynomial becomes centered (its subleading coefficient vanishes):
//! the exponential part for `d ≥ 2`, the zeros for `s ≥ 1` or the poles for
//! `r ≥ 1`. Among the finitely many scale branches the representative with
//! the lexicographically greatest coefficient tuple under the (Re, Im) order
//! is returned, which makes the representative unique and reduces
//! equivalence to tuple comparison. Rational fields (`d = 0`) fix the scale
//! by normalizing `λ̃ = 1` via `a^{s−r−1}` when `s − r − 1 ≠ 0`, and by a
//! divisor-radius normalization otherwise (`λ` is then itself an invariant).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{AffineMap, VectorField};
use crate::poly::{ONE, ZERO};
use crate::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeKind {
    /// `E` centered: needs `d ≥ 2`.
    ExpCentered,
    /// `Q` centered: needs `s ≥ 1`.
    ZeroCentered,
    /// `P` centered: needs `r ≥ 1`.
    PoleCentered,
}

impl GaugeKind {
    pub fn name(&self) -> &'static str {
        match self {
            GaugeKind::ExpCentered => "exp",
            GaugeKind::ZeroCentered => "zero",
            GaugeKind::PoleCentered => "pole",
        }
    }
}

/// Equivalence mode: affine changes only, or affine changes together with
/// the circle action `X ↦ e^{iθ}X` (isometric classification of the flat
/// metrics).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    Analytic,
    Metric,
}

/// A canonical representative together with the gauge that produced it.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub field: VectorField,
    /// `G` with `G*X = field`.
    pub gauge: AffineMap,
    pub gauge_kind: GaugeKind,
}

impl CanonicalForm {
    /// Flat coefficient tuple `(λ̃, Q̃, P̃, Ẽ)` used for comparisons, each
    /// polynomial in descending degree order.
    pub fn tuple(&self) -> Vec<Complex64> {
        field_tuple(&self.field)
    }
}

/// Witness of equivalence: `T*(e^{iθ}·X₁) = X₂`, with `θ` only present in
/// metric mode.
#[derive(Debug, Clone)]
pub struct Equivalence {
    pub map: AffineMap,
    pub theta: Option<f64>,
}

pub(crate) fn field_tuple(field: &VectorField) -> Vec<Complex64> {
    let mut tuple = vec![field.lambda()];
    tuple.extend_from_slice(field.q().coeffs());
    tuple.extend_from_slice(field.p().coeffs());
    tuple.extend_from_slice(field.e().coeffs());
    tuple
}

/// Lexicographic comparison of coefficient tuples, componentwise by
/// (Re, Im) with a fuzz at `eps` so noise does not flip branch choices.
/// "Greater" tuples are preferred as canonical.
fn tuple_better(candidate: &[Complex64], incumbent: &[Complex64], eps: f64) -> bool {
    for (x, y) in candidate.iter().zip(incumbent) {
        if (x.re - y.re).abs() > eps {
            return x.re > y.re;
        }
        if (x.im - y.im).abs() > eps {
            return x.im > y.im;
        }
    }
    false
}

fn tuple_scale(tuples: &[Vec<Complex64>]) -> f64 {
    tuples
        .iter()
        .flatten()
        .map(|c| c.norm())
        .fold(1.0, f64::max)
}

/// Relative agreement of two coefficient tuples.
pub(crate) fn tuples_agree(a: &[Complex64], b: &[Complex64], rel: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let scale = a.iter().chain(b).map(|c| c.norm()).fold(1.0, f64::max);
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= rel * scale)
}

pub(crate) fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * std::f64::consts::PI);
    if t > std::f64::consts::PI {
        t -= 2.0 * std::f64::consts::PI;
    }
    t
}

/// Translation part of the gauge: the barycenter of the centered multiset,
/// read off the coefficients.
fn translation_for(x: &VectorField, kind: GaugeKind) -> Result<Complex64> {
    let (s, r, d) = x.signature();
    match kind {
        GaugeKind::ExpCentered => {
            if d < 2 {
                return Err(Error::UnsupportedGauge(format!(
                    "exp-centered gauge needs d ≥ 2, signature is ({s},{r},{d})"
                )));
            }
            let c0 = x.e().leading();
            let c1 = x.e().coeff(d - 1);
            Ok(-c1 / (c0 * d as f64))
        }
        GaugeKind::ZeroCentered => {
            if s < 1 {
                return Err(Error::UnsupportedGauge(format!(
                    "zero-centered gauge needs s ≥ 1, signature is ({s},{r},{d})"
                )));
            }
            Ok(-x.q().coeff(s - 1) / s as f64)
        }
        GaugeKind::PoleCentered => {
            if r < 1 {
                return Err(Error::UnsupportedGauge(format!(
                    "pole-centered gauge needs r ≥ 1, signature is ({s},{r},{d})"
                )));
            }
            Ok(-x.p().coeff(r - 1) / r as f64)
        }
    }
}

fn unit_roots(n: u32) -> Vec<Complex64> {
    (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
        .collect()
}

/// Scale candidates for the gauge.
///
/// `d ≥ 1`: the `d` branches of `(1/c₀)^{1/d}`. `d = 0`, `m = s−r−1 ≠ 0`:
/// the `|m|` solutions of `λ·a^m = 1`. `d = 0`, `m = 0`: scaling cannot
/// touch `λ`, so the scale is fixed from the divisor by sending a point of
/// maximal distance from the center to 1 (one candidate per extremal
/// point); a fully concentrated divisor leaves `a = 1`.
fn scale_candidates(x: &VectorField, b: Complex64, tol: &Tolerances) -> Result<Vec<Complex64>> {
    let (_, _, d) = x.signature();
    if d >= 1 {
        let c0 = x.e().leading();
        let base = (ONE / c0).powf(1.0 / d as f64);
        return Ok(unit_roots(d as u32).into_iter().map(|u| base * u).collect());
    }
    let m = x.lambda_weight();
    if m != 0 {
        let n = m.unsigned_abs() as u32;
        let base = if m > 0 {
            (ONE / x.lambda()).powf(1.0 / n as f64)
        } else {
            x.lambda().powf(1.0 / n as f64)
        };
        return Ok(unit_roots(n).into_iter().map(|u| base * u).collect());
    }
    let div = x.divisor(tol)?;
    let mut relative: Vec<Complex64> = Vec::new();
    for part in div.parts() {
        for &(z, _) in part.entries() {
            relative.push(z - b);
        }
    }
    let rho = relative.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let guard = tol.cluster_distance(div.scale());
    if rho <= guard {
        return Ok(vec![ONE]);
    }
    let mut candidates: Vec<Complex64> = relative
        .into_iter()
        .filter(|z| z.norm() >= rho - guard)
        .collect();
    candidates.sort_by(crate::poly::cmp_re_im);
    candidates.dedup_by(|a, b| (*a - *b).norm() <= guard);
    Ok(candidates)
}

/// Apply the gauge and fold the constant term of the transformed `E` into
/// `λ`, so representatives are comparable coefficient tuples.
fn gauged_candidate(x: &VectorField, gauge: &AffineMap) -> Result<VectorField> {
    let cand = x.pullback(gauge);
    let (_, _, d) = cand.signature();
    if d == 0 {
        return Ok(cand);
    }
    let constant = cand.e().evaluate(ZERO);
    if constant == ZERO {
        return Ok(cand);
    }
    if constant.re.abs() > crate::field::EXP_OVERFLOW_RE {
        return Err(Error::Range {
            point: gauge.b,
            exponent: constant.re,
        });
    }
    let e = cand.e().minus_constant(constant)?;
    VectorField::new(
        cand.lambda() * constant.exp(),
        cand.q().clone(),
        cand.p().clone(),
        e,
    )
}

fn best_candidate(
    tuples: Vec<Vec<Complex64>>,
    candidates: Vec<(VectorField, AffineMap)>,
) -> (VectorField, AffineMap) {
    let eps = 1e-9 * tuple_scale(&tuples);
    let mut best: Option<(Vec<Complex64>, VectorField, AffineMap)> = None;
    for (tuple, (field, gauge)) in tuples.into_iter().zip(candidates) {
        let better = match &best {
            None => true,
            Some((incumbent, _, _)) => tuple_better(&tuple, incumbent, eps),
        };
        if better {
            best = Some((tuple, field, gauge));
        }
    }
    let (_, field, gauge) = best.expect("at least one scale candidate");
    (field, gauge)
}

fn gauge_candidates(
    x: &VectorField,
    kind: GaugeKind,
    tol: &Tolerances,
) -> Result<Vec<(VectorField, AffineMap)>> {
    let b = translation_for(x, kind)?;
    let scales = scale_candidates(x, b, tol)?;
    let mut candidates: Vec<(VectorField, AffineMap)> = Vec::new();
    for a in scales {
        let gauge = AffineMap::new(a, b)?;
        let field = gauged_candidate(x, &gauge)?;
        candidates.push((field, gauge));
    }
    Ok(candidates)
}

/// Canonical representative of the affine orbit of `X` in the given gauge.
pub fn canonical_form(
    x: &VectorField,
    kind: GaugeKind,
    tol: &Tolerances,
) -> Result<CanonicalForm> {
    let candidates = gauge_candidates(x, kind, tol)?;
    let tuples = candidates
        .iter()
        .map(|(field, _)| field_tuple(field))
        .collect();
    let (field, gauge) = best_candidate(tuples, candidates);
    Ok(CanonicalForm {
        field,
        gauge,
        gauge_kind: kind,
    })
}

/// Canonical representative under the combined affine and circle action:
/// the canonical field is additionally rotated so `λ̃ ∈ ℝ⁺` and the removed
/// angle `θ = arg λ̃ ∈ (−π, π]` is returned.
///
/// For rational fields with `s − r − 1 ≠ 0` the affine normalization pins
/// `λ̃ = 1`, so the circle action is instead absorbed into the scale phase:
/// the scale modulus fixes `|λ̃| = 1`, the phase is normalized from the
/// divisor, and `θ` is the remaining argument of `λ̃`.
pub fn canonical_metric_form(
    x: &VectorField,
    kind: GaugeKind,
    tol: &Tolerances,
) -> Result<(CanonicalForm, f64)> {
    let (_, _, d) = x.signature();
    let m = x.lambda_weight();
    if d == 0 && m != 0 {
        return metric_form_rational(x, kind, tol);
    }
    // Branch selection must not depend on the phase of λ̃ (the circle action
    // rotates it), so candidates are compared after rotating λ̃ to ℝ⁺.
    let candidates = gauge_candidates(x, kind, tol)?;
    let mut rotated: Vec<(VectorField, AffineMap)> = Vec::new();
    let mut angles: Vec<f64> = Vec::new();
    for (field, gauge) in candidates {
        let theta = wrap_angle(field.lambda().arg());
        let field = field
            .scaled(Complex64::from_polar(1.0, -theta))
            .expect("unit rotation keeps the field valid");
        rotated.push((field, gauge));
        angles.push(theta);
    }
    let tuples: Vec<Vec<Complex64>> = rotated
        .iter()
        .map(|(field, _)| field_tuple(field))
        .collect();
    let eps = 1e-9 * tuple_scale(&tuples);
    let mut best = 0usize;
    for i in 1..rotated.len() {
        if tuple_better(&tuples[i], &tuples[best], eps) {
            best = i;
        }
    }
    let (field, gauge) = rotated.swap_remove(best);
    let theta = angles[best];
    Ok((
        CanonicalForm {
            field,
            gauge,
            gauge_kind: kind,
        },
        theta,
    ))
}

fn metric_form_rational(
    x: &VectorField,
    kind: GaugeKind,
    tol: &Tolerances,
) -> Result<(CanonicalForm, f64)> {
    let b = translation_for(x, kind)?;
    let m = x.lambda_weight();
    let modulus = x.lambda().norm().powf(-1.0 / m as f64);

    // Phase candidates come from the divisor: each extremal-radius point is
    // sent to the positive real axis.
    let div = x.divisor(tol)?;
    let mut relative: Vec<Complex64> = Vec::new();
    for part in div.parts() {
        for &(z, _) in part.entries() {
            relative.push(z - b);
        }
    }
    let rho = relative.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let guard = tol.cluster_distance(div.scale());
    let phases: Vec<f64> = if rho <= guard {
        vec![0.0]
    } else {
        relative
            .iter()
            .filter(|z| z.norm() >= rho - guard)
            .map(|z| z.arg())
            .collect()
    };

    let mut tuples: Vec<Vec<Complex64>> = Vec::new();
    let mut candidates: Vec<(VectorField, AffineMap)> = Vec::new();
    for phase in phases {
        let gauge = AffineMap::new(Complex64::from_polar(modulus, phase), b)?;
        let field = x.pullback(&gauge);
        // Select on the divisor data only; the λ̃ phase is reported as θ.
        tuples.push(field_tuple(&field)[1..].to_vec());
        candidates.push((field, gauge));
    }
    let (field, gauge) = best_candidate(tuples, candidates);
    let theta = wrap_angle(field.lambda().arg());
    let rotated = field
        .scaled(Complex64::from_polar(1.0, -theta))
        .expect("unit rotation keeps the field valid");
    Ok((
        CanonicalForm {
            field: rotated,
            gauge,
            gauge_kind: kind,
        },
        theta,
    ))
}

/// The gauge kind used when none is specified: exp-centered when available,
/// then zero-centered, then pole-centered.
pub fn default_gauge(x: &VectorField) -> Result<GaugeKind> {
    let (s, r, d) = x.signature();
    if d >= 2 {
        Ok(GaugeKind::ExpCentered)
    } else if s >= 1 {
        Ok(GaugeKind::ZeroCentered)
    } else if r >= 1 {
        Ok(GaugeKind::PoleCentered)
    } else {
        Err(Error::UnsupportedGauge(format!(
            "no centering gauge available for signature ({s},{r},{d})"
        )))
    }
}

/// Decide equivalence of two fields.
///
/// Signatures must match. Both fields are brought to canonical form in the
/// same gauge; they are equivalent exactly when the canonical coefficient
/// tuples agree, and the witness map is composed from the two gauges
/// (`T = G₁ ∘ G₂⁻¹`, so that `T*X₁ = X₂` up to the reported rotation).
pub fn are_equivalent(
    x1: &VectorField,
    x2: &VectorField,
    mode: EquivalenceMode,
    tol: &Tolerances,
) -> Result<Option<Equivalence>> {
    if x1.signature() != x2.signature() {
        return Ok(None);
    }
    let (s, r, d) = x1.signature();

    // Signatures without a centering gauge: (0,0,0) is the constant field
    // λ ∂/∂z, a single orbit under scalings; (0,0,1) is λ e^{c₀ z} ∂/∂z,
    // a single orbit because a translation rescales λ by e^{c₀ b}.
    if s == 0 && r == 0 && d <= 1 {
        let gauge_of = |x: &VectorField| -> Result<AffineMap> {
            if x.signature().2 == 0 {
                AffineMap::new(ONE / x.lambda(), ZERO)
            } else {
                let c0 = x.e().leading();
                let c1 = x.e().coeff(0);
                let target = x.lambda() * c0;
                let b = (-target.ln() - c1) / c0;
                AffineMap::new(ONE / c0, b)
            }
        };
        let g1 = gauge_of(x1)?;
        let g2 = gauge_of(x2)?;
        let map = g1.compose(&g2.inverse());
        let theta = match mode {
            EquivalenceMode::Analytic => None,
            EquivalenceMode::Metric => Some(0.0),
        };
        return Ok(Some(Equivalence { map, theta }));
    }

    let kind = default_gauge(x1)?;
    match mode {
        EquivalenceMode::Analytic => {
            let c1 = canonical_form(x1, kind, tol)?;
            let c2 = canonical_form(x2, kind, tol)?;
            if tuples_agree(&c1.tuple(), &c2.tuple(), tol.equivalence) {
                Ok(Some(Equivalence {
                    map: c1.gauge.compose(&c2.gauge.inverse()),
                    theta: None,
                }))
            } else {
                Ok(None)
            }
        }
        EquivalenceMode::Metric => {
            let (m1, theta1) = canonical_metric_form(x1, kind, tol)?;
            let (m2, theta2) = canonical_metric_form(x2, kind, tol)?;
            if tuples_agree(&m1.tuple(), &m2.tuple(), tol.equivalence) {
                Ok(Some(Equivalence {
                    map: m1.gauge.compose(&m2.gauge.inverse()),
                    theta: Some(wrap_angle(theta2 - theta1)),
                }))
            } else {
                Ok(None)
            }
        }
    }
}
