//! The correspondence objects attached to a field `X`: the 1-form
//! `ω_X = 1/X` with `ω_X(X) ≡ 1`, its square (the orientable quadratic
//! differential), residues at the zeros of `Q`, single-valuedness of the
//! distinguished parameter `Ψ_X = ∫ ω_X`, path integrals of `Ψ_X`, and flat
//! path lengths `∫ |ω_X|` (the metric pulled back from `|dt|` under `Ψ_X`).
//!
//! Multivaluedness is handled purely through path semantics: integrals are
//! taken along the given polyline and no branch is ever selected.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{VectorField, EXP_OVERFLOW_RE};
use crate::poly::{is_finite, RootMultiset, ZERO};
use crate::Tolerances;

/// Piecewise-linear integration path.
#[derive(Debug, Clone)]
pub struct PathSpec {
    pub vertices: Vec<Complex64>,
    /// Maximum segment length fed to a single quadrature call.
    pub refinement: f64,
}

impl PathSpec {
    pub fn new(vertices: Vec<Complex64>, refinement: f64) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidInput("a path needs at least two vertices".into()));
        }
        if vertices.iter().any(|&v| !is_finite(v)) {
            return Err(Error::InvalidInput("non-finite path vertex".into()));
        }
        if !refinement.is_finite() || refinement <= 0.0 {
            return Err(Error::InvalidInput("path refinement must be positive".into()));
        }
        Ok(PathSpec {
            vertices,
            refinement,
        })
    }

    /// Straight segment with the default refinement.
    pub fn segment(from: Complex64, to: Complex64) -> Result<Self> {
        PathSpec::new(vec![from, to], 0.25)
    }
}

/// Residue data at one pole of `ω_X` (a zero of `Q`).
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueEntry {
    pub location: Complex64,
    pub residue: Complex64,
    /// Multiplicity of the underlying zero of `Q`.
    pub order: u32,
}

/// Reusable evaluator for `ω_X`; the poles of `ω_X` (zeros of `Q`) are
/// located once.
pub(crate) struct OneForm<'a> {
    x: &'a VectorField,
    poles: RootMultiset,
    guard: f64,
}

impl<'a> OneForm<'a> {
    pub fn new(x: &'a VectorField, tol: &Tolerances) -> Result<Self> {
        let poles = if x.q().degree() >= 1 {
            x.q().find_roots(tol)?
        } else {
            RootMultiset::empty()
        };
        Ok(OneForm {
            x,
            poles,
            guard: tol.pole,
        })
    }

    pub fn poles(&self) -> &RootMultiset {
        &self.poles
    }

    /// `ω_X` coefficient at `z`: `(1/λ)·P(z)/Q(z)·e^{−E(z)}`.
    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        for &(q, _) in self.poles.entries() {
            if (z - q).norm() <= self.guard {
                return Err(Error::PoleEvaluation { point: z });
            }
        }
        let exponent = self.x.e().evaluate(z);
        if exponent.re.abs() > EXP_OVERFLOW_RE {
            return Err(Error::Range {
                point: z,
                exponent: -exponent.re,
            });
        }
        Ok(self.x.p().evaluate(z) / (self.x.lambda() * self.x.q().evaluate(z)) * (-exponent).exp())
    }
}

/// Coefficient of the 1-form `ω_X` at `z`, so that
/// `one_form(X,z)·X(z) = 1` away from the singular set.
pub fn one_form(x: &VectorField, z: Complex64, tol: &Tolerances) -> Result<Complex64> {
    OneForm::new(x, tol)?.value(z)
}

/// Coefficient of the orientable quadratic differential `ω_X ⊗ ω_X` at `z`.
pub fn quadratic_differential(
    x: &VectorField,
    z: Complex64,
    tol: &Tolerances,
) -> Result<Complex64> {
    let w = one_form(x, z, tol)?;
    Ok(w * w)
}

/// Residues of `ω_X` at the zeros of `Q`, by contour integration on a
/// circle of half the distance to the nearest other pole of `ω_X` (capped
/// at 1), with trapezoid node doubling until the value settles below 1e−10.
pub fn residues(x: &VectorField, tol: &Tolerances) -> Result<Vec<ResidueEntry>> {
    let form = OneForm::new(x, tol)?;
    let poles = form.poles().clone();
    let mut out = Vec::with_capacity(poles.entries().len());
    for &(q, order) in poles.entries() {
        let mut radius = 1.0f64;
        for &(other, _) in poles.entries() {
            if other != q {
                radius = radius.min((q - other).norm() / 2.0);
            }
        }
        let residue = contour_mean(&form, q, radius)?;
        out.push(ResidueEntry {
            location: q,
            residue,
            order,
        });
    }
    Ok(out)
}

/// `(1/2πi)·∮ ω` on the circle of the given radius, trapezoid rule with
/// node doubling. The periodic trapezoid rule converges exponentially for
/// the analytic integrand.
fn contour_mean(form: &OneForm, center: Complex64, radius: f64) -> Result<Complex64> {
    let mut nodes = 32usize;
    let mut previous: Option<Complex64> = None;
    while nodes <= 16384 {
        let mut sum = ZERO;
        for j in 0..nodes {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / nodes as f64;
            let offset = Complex64::from_polar(radius, angle);
            sum += form.value(center + offset)? * offset;
        }
        let value = sum / nodes as f64;
        if let Some(prev) = previous {
            if (value - prev).norm() < 1e-10 * value.norm().max(1.0) {
                return Ok(value);
            }
        }
        previous = Some(value);
        nodes *= 2;
    }
    Err(Error::Quadrature(format!(
        "residue contour at {center} did not settle below 1e-10"
    )))
}

/// Whether `Ψ_X` is single valued: every residue of `ω_X` vanishes (below
/// the residue tolerance).
pub fn is_single_valued(x: &VectorField, tol: &Tolerances) -> Result<bool> {
    Ok(residues(x, tol)?
        .iter()
        .all(|entry| entry.residue.norm() < tol.residue))
}

// Gauss–Kronrod 7–15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One G7/K15 evaluation of `f` over `[a, b]` (scalar parameter), returning
/// the Kronrod value and the |K−G| error estimate.
fn gauss_kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let center_value = f(mid)?;
    let mut kronrod = WGK[7] * center_value;
    let mut gauss = WG[3] * center_value;
    for i in 0..7 {
        let offset = half * XGK[i];
        let left = f(mid - offset)?;
        let right = f(mid + offset)?;
        kronrod += WGK[i] * (left + right);
        if i % 2 == 1 {
            gauss += WG[i / 2] * (left + right);
        }
    }
    kronrod *= half;
    gauss *= half;
    Ok((kronrod, (kronrod - gauss).norm()))
}

/// Adaptive bisection quadrature of `f` over `[0, 1]` at absolute target
/// `tol_abs`.
fn adaptive_quadrature<F>(mut f: F, tol_abs: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut stack: Vec<(f64, f64, f64, u32)> = vec![(0.0, 1.0, tol_abs, 0)];
    let mut total = ZERO;
    let mut intervals = 0usize;
    while let Some((a, b, share, depth)) = stack.pop() {
        intervals += 1;
        if intervals > 20000 {
            return Err(Error::Quadrature(
                "adaptive quadrature exceeded its interval budget".into(),
            ));
        }
        let (value, error) = gauss_kronrod(&mut f, a, b)?;
        if error <= share {
            total += value;
        } else if depth >= 45 {
            return Err(Error::Quadrature(format!(
                "quadrature failed to converge on [{a}, {b}] (error {error:.3e})"
            )));
        } else {
            let mid = 0.5 * (a + b);
            stack.push((a, mid, share / 2.0, depth + 1));
            stack.push((mid, b, share / 2.0, depth + 1));
        }
    }
    Ok(total)
}

fn refined_segments(path: &PathSpec) -> Vec<(Complex64, Complex64)> {
    let mut out = Vec::new();
    for pair in path.vertices.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let length = (b - a).norm();
        let pieces = (length / path.refinement).ceil().max(1.0) as usize;
        for i in 0..pieces {
            let t0 = i as f64 / pieces as f64;
            let t1 = (i + 1) as f64 / pieces as f64;
            out.push((a + (b - a) * t0, a + (b - a) * t1));
        }
    }
    out
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn reject_near_poles(form: &OneForm, path: &PathSpec, guard: f64) -> Result<()> {
    for &(q, _) in form.poles().entries() {
        for pair in path.vertices.windows(2) {
            if point_segment_distance(q, pair[0], pair[1]) <= guard {
                return Err(Error::PathRejection(format!(
                    "path passes within {guard:e} of the ω-pole at {q}"
                )));
            }
        }
    }
    Ok(())
}

/// `Ψ_X` along the path: `∫ ω_X` by adaptive Gauss–Kronrod quadrature,
/// segment by segment, at absolute error target 1e−10 per unit length.
///
/// The value is the integral along the given path; when `Ψ_X` is
/// multivalued, homotopically different paths give different values and no
/// branch correction is applied.
pub fn distinguished_parameter(
    x: &VectorField,
    path: &PathSpec,
    tol: &Tolerances,
) -> Result<Complex64> {
    let form = OneForm::new(x, tol)?;
    reject_near_poles(&form, path, tol.pole)?;
    let mut total = ZERO;
    for (a, b) in refined_segments(path) {
        let step = b - a;
        let target = 1e-10 * step.norm().max(f64::MIN_POSITIVE);
        total += adaptive_quadrature(|t| Ok(form.value(a + step * t)? * step), target)?;
    }
    Ok(total)
}

/// Flat length of the path in the metric `g_X`: `∫ |ω_X| |dz|`.
pub fn flat_length(x: &VectorField, path: &PathSpec, tol: &Tolerances) -> Result<f64> {
    let form = OneForm::new(x, tol)?;
    reject_near_poles(&form, path, tol.pole)?;
    let mut total = 0.0;
    for (a, b) in refined_segments(path) {
        let step = b - a;
        let target = 1e-10 * step.norm().max(f64::MIN_POSITIVE);
        let value = adaptive_quadrature(
            |t| {
                let w = form.value(a + step * t)?;
                Ok(Complex64::new(w.norm() * step.norm(), 0.0))
            },
            target,
        )?;
        total += value.re;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Polynomial, ONE};
    use crate::realize::realize_symmetric;
    use crate::test_support::{random_complex, random_field, random_map, random_spec};
    use crate::VectorField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn exp_field() -> VectorField {
        VectorField::new(
            ONE,
            Polynomial::one(),
            Polynomial::one(),
            Polynomial::from_coeffs(vec![ONE, ZERO]).unwrap(),
        )
        .unwrap()
    }

    fn linear_field(lambda: Complex64) -> VectorField {
        let q = Polynomial::from_coeffs(vec![ONE, ZERO]).unwrap();
        VectorField::rational(lambda, q, Polynomial::one()).unwrap()
    }

    fn z_to_the(n: usize, lambda: Complex64) -> VectorField {
        let mut coeffs = vec![ONE];
        coeffs.extend(std::iter::repeat_n(ZERO, n));
        let q = Polynomial::from_coeffs(coeffs).unwrap();
        VectorField::rational(lambda, q, Polynomial::one()).unwrap()
    }

    /// z⁴(z³−1) ∂/∂z
    fn multivalued_example() -> VectorField {
        let q = Polynomial::from_coeffs(vec![
            ONE,
            ZERO,
            ZERO,
            c(-1.0, 0.0),
            ZERO,
            ZERO,
            ZERO,
            ZERO,
        ])
        .unwrap();
        VectorField::rational(ONE, q, Polynomial::one()).unwrap()
    }

    #[test]
    fn one_form_inverts_the_field() {
        let x = exp_field();
        assert!((one_form(&x, ZERO, &tol()).unwrap() - ONE).norm() < 1e-15);

        let lam = c(1.3, -0.4);
        let x = linear_field(lam);
        let z = c(2.0, 0.0);
        let expected = ONE / (lam * 2.0);
        assert!((one_form(&x, z, &tol()).unwrap() - expected).norm() < 1e-15);
    }

    #[test]
    fn one_form_times_field_is_one_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(401);
        let t = tol();
        let mut checked = 0;
        while checked < 60 {
            let x = random_field(&mut rng, 4);
            let z = random_complex(&mut rng, 3.0);
            if let (Ok(w), Ok(v)) = (one_form(&x, z, &t), x.evaluate(z, &t)) {
                assert!((w * v - ONE).norm() < 1e-12, "ω(X) ≠ 1: {w} · {v}");
                checked += 1;
            }
        }
    }

    #[test]
    fn quadratic_differential_is_the_square() {
        let lam = c(0.8, 0.3);
        let x = linear_field(lam);
        let q = quadratic_differential(&x, ONE, &tol()).unwrap();
        assert!((q - ONE / (lam * lam)).norm() < 1e-14);

        let e = exp_field();
        assert!((quadratic_differential(&e, ZERO, &tol()).unwrap() - ONE).norm() < 1e-14);
    }

    #[test]
    fn residues_of_monomials() {
        let t = tol();
        let x = linear_field(ONE);
        let rs = residues(&x, &t).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].order, 1);
        assert!((rs[0].residue - ONE).norm() < 1e-10);

        let lam = c(0.7, 0.4);
        let rs = residues(&linear_field(lam), &t).unwrap();
        assert!((rs[0].residue - ONE / lam).norm() < 1e-10);

        let rs = residues(&z_to_the(2, ONE), &t).unwrap();
        assert_eq!(rs[0].order, 2);
        assert!(rs[0].residue.norm() < 1e-10);
    }

    #[test]
    fn residue_closed_form_cross_check() {
        // For a simple zero q of Q the residue is P(q)e^{−E(q)}/(λQ′(q)).
        let mut rng = ChaCha8Rng::seed_from_u64(403);
        let t = tol();
        let mut checked = 0;
        while checked < 20 {
            let x = random_field(&mut rng, 3);
            if x.q().degree() == 0 {
                continue;
            }
            let rs = match residues(&x, &t) {
                Ok(rs) => rs,
                Err(_) => continue,
            };
            let qprime = x.q().derivative();
            for entry in rs {
                if entry.order != 1 {
                    continue;
                }
                let q = entry.location;
                let closed = x.p().evaluate(q) * (-x.e().evaluate(q)).exp()
                    / (x.lambda() * qprime.evaluate(q));
                let scale = closed.norm().max(1e-12);
                assert!(
                    (entry.residue - closed).norm() <= 1e-6 * scale,
                    "residue mismatch at {q}: {} vs {closed}",
                    entry.residue
                );
            }
            checked += 1;
        }
    }

    #[test]
    fn single_valuedness_examples() {
        let t = tol();
        assert!(is_single_valued(&z_to_the(2, ONE), &t).unwrap());
        assert!(!is_single_valued(&multivalued_example(), &t).unwrap());
        // Any E(0,r,0): ω = P dz is entire, vacuously single valued.
        let p = Polynomial::from_coeffs(vec![ONE, ZERO, c(-1.0, 0.0), ZERO]).unwrap();
        let x = VectorField::rational(ONE, Polynomial::one(), p).unwrap();
        assert!(is_single_valued(&x, &t).unwrap());
    }

    #[test]
    fn psi_of_exponential_segment() {
        let x = exp_field();
        let path = PathSpec::segment(ZERO, ONE).unwrap();
        let value = distinguished_parameter(&x, &path, &tol()).unwrap();
        let expected = 1.0 - (-1.0f64).exp();
        assert!((value - c(expected, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn psi_of_constant_field_is_identity() {
        let x = VectorField::rational(ONE, Polynomial::one(), Polynomial::one()).unwrap();
        let target = c(1.3, -2.2);
        let path = PathSpec::segment(ZERO, target).unwrap();
        let value = distinguished_parameter(&x, &path, &tol()).unwrap();
        assert!((value - target).norm() < 1e-12);
    }

    #[test]
    fn psi_matches_closed_form_for_multivalued_example() {
        // Ψ(z) = 1/(3z³) + (1/3)·log(1−z³) − log z along the real segment
        // [2, 3] (real-branch difference).
        let x = multivalued_example();
        let path = PathSpec::segment(c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        let value = distinguished_parameter(&x, &path, &tol()).unwrap();
        let psi =
            |z: f64| -> f64 { 1.0 / (3.0 * z.powi(3)) + (z.powi(3) - 1.0).ln() / 3.0 - z.ln() };
        let expected = psi(3.0) - psi(2.0);
        assert!(
            (value - c(expected, 0.0)).norm() < 1e-8,
            "Ψ mismatch: {value} vs {expected}"
        );
    }

    #[test]
    fn path_through_pole_is_rejected() {
        let x = multivalued_example();
        let path = PathSpec::segment(c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        let err = distinguished_parameter(&x, &path, &tol()).unwrap_err();
        assert_eq!(err.code(), "path-rejection");
    }

    #[test]
    fn flat_length_examples() {
        let t = tol();
        let unit = PathSpec::segment(ZERO, ONE).unwrap();
        let x = VectorField::rational(ONE, Polynomial::one(), Polynomial::one()).unwrap();
        assert!((flat_length(&x, &unit, &t).unwrap() - 1.0).abs() < 1e-12);

        let x2 = VectorField::rational(c(2.0, 0.0), Polynomial::one(), Polynomial::one()).unwrap();
        assert!((flat_length(&x2, &unit, &t).unwrap() - 0.5).abs() < 1e-12);

        let e = exp_field();
        let expected = 1.0 - (-1.0f64).exp();
        assert!((flat_length(&e, &unit, &t).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn flat_length_dominates_displacement() {
        let mut rng = ChaCha8Rng::seed_from_u64(405);
        let t = tol();
        let mut checked = 0;
        while checked < 20 {
            let x = random_field(&mut rng, 3);
            let a = random_complex(&mut rng, 2.0);
            let b = random_complex(&mut rng, 2.0);
            if (a - b).norm() < 0.1 {
                continue;
            }
            let path = PathSpec::segment(a, b).unwrap();
            let psi = distinguished_parameter(&x, &path, &t);
            let len = flat_length(&x, &path, &t);
            if let (Ok(psi), Ok(len)) = (psi, len) {
                assert!(
                    len + 1e-9 >= psi.norm(),
                    "triangle inequality violated: {len} < {}",
                    psi.norm()
                );
                checked += 1;
            }
        }
    }

    #[test]
    fn psi_is_natural_under_pullback() {
        // Ψ_{T*X} over a path equals Ψ_X over the image path.
        let mut rng = ChaCha8Rng::seed_from_u64(407);
        let t = tol();
        let mut checked = 0;
        while checked < 15 {
            let x = random_field(&mut rng, 3);
            let map = random_map(&mut rng);
            let y = x.pullback(&map);
            let a = random_complex(&mut rng, 2.0);
            let b = random_complex(&mut rng, 2.0);
            if (a - b).norm() < 0.1 {
                continue;
            }
            let path = PathSpec::segment(a, b).unwrap();
            let image = PathSpec::segment(map.apply(a), map.apply(b)).unwrap();
            let lhs = distinguished_parameter(&y, &path, &t);
            let rhs = distinguished_parameter(&x, &image, &t);
            if let (Ok(lhs), Ok(rhs)) = (lhs, rhs) {
                assert!(
                    (lhs - rhs).norm() <= 1e-8 * lhs.norm().max(rhs.norm()).max(1.0),
                    "naturality failed: {lhs} vs {rhs}"
                );
                checked += 1;
            }
        }
    }

    #[test]
    fn psi_is_symmetric_for_symmetric_fields() {
        // For cyclic isotropy with generator T, Ψ over a path and over the
        // rotated path agree. Exponential orbits are kept away so e^{−E}
        // stays representable along the sampled paths.
        let mut rng = ChaCha8Rng::seed_from_u64(409);
        let t = tol();
        let mut checked = 0;
        for case in 0..200u32 {
            if checked >= 10 {
                break;
            }
            let mut spec = random_spec(&mut rng, case % 4 + 2);
            spec.exp_orbits.clear();
            spec.exp_center_multiplicity = spec.exp_center_multiplicity.min(spec.order);
            let x = realize_symmetric(&spec).unwrap();
            let rotation = crate::realize::promised_generator(&spec);
            let a = spec.center + random_complex(&mut rng, 1.0) + c(0.2, 0.1);
            let b = spec.center + random_complex(&mut rng, 1.0) + c(0.1, 0.3);
            if (a - b).norm() < 0.1 {
                continue;
            }
            let path = PathSpec::segment(a, b).unwrap();
            let rotated = PathSpec::segment(rotation.apply(a), rotation.apply(b)).unwrap();
            let lhs = distinguished_parameter(&x, &path, &t);
            let rhs = distinguished_parameter(&x, &rotated, &t);
            if let (Ok(lhs), Ok(rhs)) = (lhs, rhs) {
                assert!(
                    (lhs - rhs).norm() <= 1e-8 * lhs.norm().max(rhs.norm()).max(1.0),
                    "Ψ symmetry failed: {lhs} vs {rhs}"
                );
                checked += 1;
            }
        }
        assert!(checked >= 10, "too few usable symmetric cases");
    }
}
