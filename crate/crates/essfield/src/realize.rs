//! Construction of fields with prescribed rotational symmetry from
//! combinatorial orbit data.
//!
//! A `ℤ_k`-symmetric field is assembled from a center `C` carrying either a
//! pole of multiplicity `ν` with `k | (ν+1)` (hyperbolic sectors come in
//! pairs) or a zero with `k | (ν−1)` (elliptic sectors come in pairs), plus
//! full rotation orbits: each orbit contributes the `k` points
//! `C + ρ·e^{iθ}·e^{2πiℓ/k}` with a common multiplicity. The exponential
//! part may additionally carry roots at `C` with multiplicity `μ`, which
//! `c₀·a^d`-invariance forces to be a multiple of `k`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{AffineMap, VectorField};
use crate::poly::{is_finite, Polynomial, RootMultiset, ONE, ZERO};

/// What sits at the rotation center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterKind {
    /// Pole of multiplicity `ν ≥ 1`, requires `k | (ν+1)`.
    Pole(u32),
    /// Zero of multiplicity `ν ≥ 1`, requires `k | (ν−1)`.
    Zero(u32),
}

/// One rotation orbit: `k` points at radius `ρ` from the center, phase `θ`,
/// all with the same multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSpec {
    pub radius: f64,
    pub angle: f64,
    pub multiplicity: u32,
}

impl OrbitSpec {
    pub fn new(radius: f64, angle: f64, multiplicity: u32) -> Self {
        OrbitSpec {
            radius,
            angle,
            multiplicity,
        }
    }
}

/// Combinatorial description of a `ℤ_k`-symmetric field.
#[derive(Debug, Clone)]
pub struct SymmetrySpec {
    /// Rotation order `k ≥ 2`.
    pub order: u32,
    /// Rotation center `C`.
    pub center: Complex64,
    pub center_kind: CenterKind,
    pub zero_orbits: Vec<OrbitSpec>,
    pub pole_orbits: Vec<OrbitSpec>,
    pub exp_orbits: Vec<OrbitSpec>,
    /// Multiplicity `μ` of the exponential root at the center (`k | μ`).
    pub exp_center_multiplicity: u32,
    pub lambda: Complex64,
    /// Leading coefficient of `E`; ignored when `d = 0`.
    pub c0: Complex64,
}

impl SymmetrySpec {
    /// Signature `(s, r, d)` the realized field will have.
    pub fn signature(&self) -> (usize, usize, usize) {
        let k = self.order as usize;
        let orbit_sum =
            |orbits: &[OrbitSpec]| orbits.iter().map(|o| o.multiplicity as usize).sum::<usize>();
        let mut s = k * orbit_sum(&self.zero_orbits);
        let mut r = k * orbit_sum(&self.pole_orbits);
        match self.center_kind {
            CenterKind::Pole(nu) => r += nu as usize,
            CenterKind::Zero(nu) => s += nu as usize,
        }
        let d = k * orbit_sum(&self.exp_orbits) + self.exp_center_multiplicity as usize;
        (s, r, d)
    }
}

fn orbit_points(center: Complex64, k: u32, orbit: &OrbitSpec) -> Vec<Complex64> {
    (0..k)
        .map(|ell| {
            let angle = orbit.angle + 2.0 * std::f64::consts::PI * ell as f64 / k as f64;
            center + Complex64::from_polar(orbit.radius, angle)
        })
        .collect()
}

fn validate_orbits(orbits: &[OrbitSpec], what: &str) -> Result<()> {
    for o in orbits {
        if !o.radius.is_finite() || o.radius <= 0.0 || !o.angle.is_finite() {
            return Err(Error::SpecRejection(format!(
                "{what} orbit needs a positive finite radius and finite angle"
            )));
        }
        if o.multiplicity == 0 {
            return Err(Error::SpecRejection(format!(
                "{what} orbit multiplicity must be ≥ 1"
            )));
        }
    }
    Ok(())
}

fn validate(spec: &SymmetrySpec) -> Result<()> {
    let k = spec.order;
    if k < 2 {
        return Err(Error::SpecRejection("rotation order k must be ≥ 2".into()));
    }
    if !is_finite(spec.center) {
        return Err(Error::SpecRejection("center must be finite".into()));
    }
    if spec.lambda == ZERO || !is_finite(spec.lambda) {
        return Err(Error::SpecRejection("lambda must be nonzero and finite".into()));
    }
    match spec.center_kind {
        CenterKind::Pole(nu) => {
            if nu == 0 {
                return Err(Error::SpecRejection("center pole multiplicity must be ≥ 1".into()));
            }
            if (nu + 1) % k != 0 {
                return Err(Error::SpecRejection(format!(
                    "center pole of multiplicity {nu} needs k | (ν+1): {k} ∤ {}",
                    nu + 1
                )));
            }
            if nu % k == 0 {
                return Err(Error::SpecRejection(format!(
                    "center pole multiplicity {nu} must not be divisible by k = {k}"
                )));
            }
        }
        CenterKind::Zero(nu) => {
            if nu == 0 {
                return Err(Error::SpecRejection("center zero multiplicity must be ≥ 1".into()));
            }
            if (nu - 1) % k != 0 {
                return Err(Error::SpecRejection(format!(
                    "center zero of multiplicity {nu} needs k | (ν−1): {k} ∤ {}",
                    nu - 1
                )));
            }
            if nu % k == 0 {
                return Err(Error::SpecRejection(format!(
                    "center zero multiplicity {nu} must not be divisible by k = {k}"
                )));
            }
        }
    }
    if !spec.exp_center_multiplicity.is_multiple_of(k) {
        return Err(Error::SpecRejection(format!(
            "exponential center multiplicity μ = {} needs k | μ (k = {k})",
            spec.exp_center_multiplicity
        )));
    }
    validate_orbits(&spec.zero_orbits, "zero")?;
    validate_orbits(&spec.pole_orbits, "pole")?;
    validate_orbits(&spec.exp_orbits, "exponential")?;

    let (_, _, d) = spec.signature();
    if d >= 1 && (spec.c0 == ZERO || !is_finite(spec.c0)) {
        return Err(Error::SpecRejection(
            "c0 must be nonzero and finite when the exponential part is present".into(),
        ));
    }

    // Zero and pole orbit points must stay disjoint (E may collide freely).
    let zero_points: Vec<Complex64> = spec
        .zero_orbits
        .iter()
        .flat_map(|o| orbit_points(spec.center, k, o))
        .collect();
    let pole_points: Vec<Complex64> = spec
        .pole_orbits
        .iter()
        .flat_map(|o| orbit_points(spec.center, k, o))
        .collect();
    for z in &zero_points {
        for p in &pole_points {
            if (z - p).norm() <= 1e-9 * (1.0 + z.norm()) {
                return Err(Error::SpecRejection(format!(
                    "zero orbit point {z} collides with pole orbit point {p}"
                )));
            }
        }
    }
    Ok(())
}

fn multiset_for(
    center: Complex64,
    k: u32,
    orbits: &[OrbitSpec],
    center_multiplicity: u32,
) -> Result<RootMultiset> {
    let mut entries: Vec<(Complex64, u32)> = Vec::new();
    if center_multiplicity > 0 {
        entries.push((center, center_multiplicity));
    }
    for orbit in orbits {
        for point in orbit_points(center, k, orbit) {
            entries.push((point, orbit.multiplicity));
        }
    }
    RootMultiset::new(entries)
}

/// Build the `ℤ_k`-symmetric field described by `spec`.
///
/// The divisor consists of the center point with its prescribed
/// multiplicity and, for each orbit, the `k` rotated copies of its
/// representative. The constructed field satisfies
/// `pullback(X, rotation by 2π/k about C) = X`.
pub fn realize_symmetric(spec: &SymmetrySpec) -> Result<VectorField> {
    validate(spec)?;
    let k = spec.order;

    let (zero_center, pole_center) = match spec.center_kind {
        CenterKind::Pole(nu) => (0, nu),
        CenterKind::Zero(nu) => (nu, 0),
    };
    let zeros = multiset_for(spec.center, k, &spec.zero_orbits, zero_center)?;
    let poles = multiset_for(spec.center, k, &spec.pole_orbits, pole_center)?;
    let exp_roots = multiset_for(
        spec.center,
        k,
        &spec.exp_orbits,
        spec.exp_center_multiplicity,
    )?;

    let q = Polynomial::expand_from_roots(ONE, &zeros)?;
    let p = Polynomial::expand_from_roots(ONE, &poles)?;
    let e = if exp_roots.total_multiplicity() == 0 {
        Polynomial::zero()
    } else {
        Polynomial::expand_from_roots(spec.c0, &exp_roots)?
    };
    let field = VectorField::new(spec.lambda, q, p, e)?;

    // The arithmetic leg of the invariance is automatic from the
    // divisibility checks; assert it here so a violated precondition cannot
    // slip through as a silently asymmetric field.
    let (s, r, d) = field.signature();
    debug_assert_eq!(field.signature(), spec.signature());
    let weight = s as i64 - r as i64 - 1;
    if !(d as u64).is_multiple_of(k as u64) || weight.rem_euclid(k as i64) != 0 {
        return Err(Error::SpecRejection(format!(
            "resulting signature ({s},{r},{d}) is not compatible with k = {k}"
        )));
    }
    Ok(field)
}

/// Build a `ℤ_k`-symmetric field whose finite zeros and poles are all
/// simple.
///
/// On top of [`realize_symmetric`], orbit multiplicities must be 1, a pole
/// center forces `k = 2` with `ν = 1` (simple fields with a fixed pole only
/// admit the half-turn), and a zero center must be simple.
pub fn realize_simple(spec: &SymmetrySpec) -> Result<VectorField> {
    for o in spec.zero_orbits.iter().chain(&spec.pole_orbits) {
        if o.multiplicity != 1 {
            return Err(Error::SpecRejection(
                "simple realization requires multiplicity 1 on all zero/pole orbits".into(),
            ));
        }
    }
    match spec.center_kind {
        CenterKind::Pole(nu) => {
            if nu != 1 {
                return Err(Error::SpecRejection(
                    "simple realization requires a simple pole at the center".into(),
                ));
            }
            if spec.order != 2 {
                return Err(Error::SpecRejection(format!(
                    "a simple pole at the center forces k = 2, got k = {}",
                    spec.order
                )));
            }
        }
        CenterKind::Zero(nu) => {
            if nu != 1 {
                return Err(Error::SpecRejection(
                    "simple realization requires a simple zero at the center".into(),
                ));
            }
        }
    }
    let field = realize_symmetric(spec)?;

    // All-simple validation of the resulting zero/pole divisor.
    let div = field.divisor(&crate::Tolerances::default())?;
    for part in [&div.zeros, &div.poles] {
        if part.entries().iter().any(|&(_, m)| m != 1) {
            return Err(Error::SpecRejection(
                "orbit points collide: resulting zeros/poles are not all simple".into(),
            ));
        }
    }
    Ok(field)
}

/// The rotation a symmetry spec promises invariance under.
pub fn promised_generator(spec: &SymmetrySpec) -> AffineMap {
    AffineMap::rotation_about(spec.center, 2.0 * std::f64::consts::PI / spec.order as f64)
}
