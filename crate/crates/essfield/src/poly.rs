//! Complex polynomials with dual coefficient/root views.
//!
//! Coefficients are stored in descending degree order, leading coefficient
//! first. A polynomial built from its roots keeps the exact root multiset
//! alongside the coefficients, so divisor queries on such polynomials never
//! have to recover multiplicities numerically; polynomials born from raw
//! coefficients fall back to Aberth–Ehrlich simultaneous iteration plus
//! clustering.

use std::cmp::Ordering;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::AffineMap;
use crate::Tolerances;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

const ABERTH_MAX_ITERATIONS: u32 = 200;

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Total order on complex numbers by (Re, Im), used everywhere a root list
/// has to come out in a reproducible order.
pub(crate) fn cmp_re_im(a: &Complex64, b: &Complex64) -> Ordering {
    match a.re.partial_cmp(&b.re) {
        Some(Ordering::Equal) | None => a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal),
        Some(ord) => ord,
    }
}

/// An unordered set of root locations with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset {
    entries: Vec<(Complex64, u32)>,
}

impl RootMultiset {
    pub fn empty() -> Self {
        RootMultiset { entries: Vec::new() }
    }

    /// Build from (location, multiplicity) pairs. Exactly coincident
    /// locations are merged; multiplicities must be positive and locations
    /// finite.
    pub fn new(entries: Vec<(Complex64, u32)>) -> Result<Self> {
        let mut cleaned: Vec<(Complex64, u32)> = Vec::with_capacity(entries.len());
        for (z, m) in entries {
            if !is_finite(z) {
                return Err(Error::InvalidInput("non-finite root location".into()));
            }
            if m == 0 {
                return Err(Error::InvalidInput("root multiplicity must be ≥ 1".into()));
            }
            match cleaned.iter_mut().find(|(w, _)| *w == z) {
                Some((_, acc)) => *acc += m,
                None => cleaned.push((z, m)),
            }
        }
        cleaned.sort_by(|a, b| cmp_re_im(&a.0, &b.0));
        Ok(RootMultiset { entries: cleaned })
    }

    /// Each point once, multiplicity 1 (coincident points merge).
    pub fn from_points(points: &[Complex64]) -> Result<Self> {
        RootMultiset::new(points.iter().map(|&z| (z, 1)).collect())
    }

    pub fn entries(&self) -> &[(Complex64, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total multiplicity, i.e. the degree of the originating polynomial.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m as usize).sum()
    }

    /// All locations repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for &(z, m) in &self.entries {
            for _ in 0..m {
                out.push(z);
            }
        }
        out
    }

    /// Multiplicity-weighted arithmetic mean; absent for the empty multiset.
    pub fn barycenter(&self) -> Option<Complex64> {
        if self.entries.is_empty() {
            return None;
        }
        let mut sum = ZERO;
        let mut count = 0.0;
        for &(z, m) in &self.entries {
            sum += z * (m as f64);
            count += m as f64;
        }
        Some(sum / count)
    }

    pub fn max_modulus(&self) -> f64 {
        self.entries
            .iter()
            .map(|(z, _)| z.norm())
            .fold(0.0, f64::max)
    }

    /// Transform every location, keeping multiplicities.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut entries: Vec<(Complex64, u32)> =
            self.entries.iter().map(|&(z, m)| (f(z), m)).collect();
        entries.sort_by(|a, b| cmp_re_im(&a.0, &b.0));
        RootMultiset { entries }
    }

    /// Multiset equality: every entry of `self` matches an unclaimed entry
    /// of `other` with the same multiplicity within distance `tol`.
    pub fn matches(&self, other: &RootMultiset, tol: f64) -> bool {
        if self.entries.len() != other.entries.len() {
            return false;
        }
        let mut claimed = vec![false; other.entries.len()];
        for &(z, m) in &self.entries {
            let mut best: Option<(usize, f64)> = None;
            for (i, &(w, m2)) in other.entries.iter().enumerate() {
                if claimed[i] || m2 != m {
                    continue;
                }
                let dist = (z - w).norm();
                if dist <= tol && best.is_none_or(|(_, d)| dist < d) {
                    best = Some((i, dist));
                }
            }
            match best {
                Some((i, _)) => claimed[i] = true,
                None => return false,
            }
        }
        true
    }

    /// Multiplicity at a location (entries within `tol` summed).
    pub fn multiplicity_at(&self, z: Complex64, tol: f64) -> u32 {
        self.entries
            .iter()
            .filter(|(w, _)| (z - w).norm() <= tol)
            .map(|&(_, m)| m)
            .sum()
    }
}

/// Complex polynomial, coefficients in descending degree order.
///
/// The zero polynomial is the single entry `[0]`; every other polynomial has
/// a nonzero leading coefficient and `degree = len − 1`.
#[derive(Debug, Clone)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
    roots: Option<RootMultiset>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Polynomial {
    /// Build from coefficients, trimming exactly-zero leading entries.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "a polynomial needs at least one coefficient".into(),
            ));
        }
        if coeffs.iter().any(|&c| !is_finite(c)) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        let first_nonzero = coeffs.iter().position(|c| *c != ZERO);
        let trimmed = match first_nonzero {
            Some(i) => coeffs[i..].to_vec(),
            None => vec![ZERO],
        };
        Ok(Polynomial {
            coeffs: trimmed,
            roots: None,
        })
    }

    pub fn constant(c: Complex64) -> Self {
        Polynomial {
            coeffs: vec![c],
            roots: if c == ZERO {
                None
            } else {
                Some(RootMultiset::empty())
            },
        }
    }

    pub fn zero() -> Self {
        Polynomial::constant(ZERO)
    }

    pub fn one() -> Self {
        Polynomial::constant(ONE)
    }

    /// Expand `leading · Π (z − rᵢ)^{mᵢ}`.
    ///
    /// Roots are processed in sorted `(|r|, arg r)` order so the floating
    /// point expansion is deterministic; the exact multiset is kept as the
    /// polynomial's root view.
    pub fn expand_from_roots(leading: Complex64, roots: &RootMultiset) -> Result<Self> {
        if leading == ZERO || !is_finite(leading) {
            return Err(Error::InvalidInput(
                "leading coefficient must be nonzero and finite".into(),
            ));
        }
        let mut points = roots.expanded();
        points.sort_by(|a, b| {
            let ka = (a.norm(), a.arg());
            let kb = (b.norm(), b.arg());
            ka.partial_cmp(&kb).unwrap_or(Ordering::Equal).then(cmp_re_im(a, b))
        });
        let mut coeffs = vec![leading];
        for r in points {
            coeffs.push(ZERO);
            let n = coeffs.len();
            for i in (0..n - 1).rev() {
                let t = coeffs[i];
                coeffs[i + 1] -= r * t;
            }
        }
        Ok(Polynomial {
            coeffs,
            roots: Some(roots.clone()),
        })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ZERO
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^power` (0 when above the degree).
    pub fn coeff(&self, power: usize) -> Complex64 {
        let n = self.degree();
        if power > n {
            ZERO
        } else {
            self.coeffs[n - power]
        }
    }

    /// The exact root view, when this polynomial was built from roots.
    pub fn known_roots(&self) -> Option<&RootMultiset> {
        self.roots.as_ref()
    }

    /// Evaluate at `z`.
    ///
    /// Uses the factored form `leading·Π(z−rᵢ)^{mᵢ}` when the exact root
    /// view is available (no cancellation, so high-degree expansions stay
    /// accurate to machine precision) and Horner on the coefficients
    /// otherwise.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        if let Some(roots) = &self.roots {
            let mut acc = self.coeffs[0];
            for &(r, m) in roots.entries() {
                acc *= (z - r).powu(m);
            }
            return acc;
        }
        let mut acc = ZERO;
        for &c in &self.coeffs {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        let n = self.degree();
        if n == 0 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .take(n)
            .enumerate()
            .map(|(i, &c)| c * ((n - i) as f64))
            .collect();
        Polynomial { coeffs, roots: None }
    }

    /// Multiply every coefficient by a nonzero factor (roots unchanged).
    pub fn scale(&self, factor: Complex64) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
            roots: self.roots.clone(),
        }
    }

    /// `(self / leading, leading)`; the zero polynomial is returned as is.
    pub fn monic(&self) -> (Polynomial, Complex64) {
        if self.is_zero() {
            return (self.clone(), ONE);
        }
        let lead = self.leading();
        let mut monic = self.scale(ONE / lead);
        monic.coeffs[0] = ONE;
        (monic, lead)
    }

    /// Subtract a constant. The root view no longer applies and is dropped.
    pub fn minus_constant(&self, c: Complex64) -> Result<Polynomial> {
        let mut coeffs = self.coeffs.clone();
        *coeffs.last_mut().expect("nonempty") -= c;
        Polynomial::from_coeffs(coeffs)
    }

    /// Substitute `z = a·w + b`: returns the polynomial `w ↦ p(a·w + b)`.
    ///
    /// The degree is preserved and the leading coefficient picks up `a^deg`;
    /// a known root view transforms exactly by `r ↦ (r − b)/a`.
    pub fn affine_substitute(&self, map: &AffineMap) -> Polynomial {
        if self.is_constant() {
            return self.clone();
        }
        // Horner composition: acc ← acc·(a·w + b) + cᵢ in polynomial arithmetic.
        let mut acc = vec![self.coeffs[0]];
        for &c in &self.coeffs[1..] {
            let mut next = vec![ZERO; acc.len() + 1];
            for (i, &t) in acc.iter().enumerate() {
                next[i] += t * map.a;
                next[i + 1] += t * map.b;
            }
            *next.last_mut().expect("nonempty") += c;
            acc = next;
        }
        let inverse = map.inverse();
        Polynomial {
            coeffs: acc,
            roots: self.roots.as_ref().map(|r| r.map(|z| inverse.apply(z))),
        }
    }

    /// Roots with multiplicities.
    ///
    /// Returns the stored root view when the polynomial was built from
    /// roots; otherwise runs Aberth–Ehrlich iteration and clusters the
    /// approximations at distance `tol.cluster · max(1, max |root|)`.
    pub fn find_roots(&self, tol: &Tolerances) -> Result<RootMultiset> {
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "the zero polynomial has no root multiset".into(),
            ));
        }
        if let Some(view) = &self.roots {
            return Ok(view.clone());
        }
        if self.degree() == 0 {
            return Ok(RootMultiset::empty());
        }

        let (monic, _) = self.monic();
        // Exactly-zero trailing coefficients factor out as exact roots at 0.
        let trailing = monic
            .coeffs
            .iter()
            .rev()
            .take_while(|&&c| c == ZERO)
            .count();
        let reduced = &monic.coeffs[..monic.coeffs.len() - trailing];
        let mut points: Vec<Complex64> = vec![ZERO; trailing];
        if reduced.len() > 1 {
            points.extend(aberth(reduced, tol)?);
        }

        // Multiple roots only converge to a cluster whose spread grows like
        // eps^{1/m}, so merging happens in two stages: a loose pre-cluster
        // that polishes its centroid on the (m−1)-th derivative and keeps
        // the merge only when the residual confirms an m-fold root, with a
        // fall back to strict clustering otherwise.
        let scale = points.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let strict = tol.cluster * scale;
        let pre = (3e-4 * scale).max(strict);
        let mut entries: Vec<(Complex64, u32)> = Vec::new();
        for members in cluster_points(&points, pre) {
            accept_cluster(&monic, &members, strict, &mut entries);
        }
        RootMultiset::new(entries)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let roots = match (&self.roots, &rhs.roots) {
            (Some(a), Some(b)) => {
                let mut entries = a.entries().to_vec();
                entries.extend_from_slice(b.entries());
                RootMultiset::new(entries).ok()
            }
            _ => None,
        };
        Polynomial { coeffs, roots }
    }
}

/// Horner evaluation returning the value together with `Σ |cᵢ|·|z|^{n−i}`,
/// the magnitude scale of the evaluation used in stopping criteria.
fn evaluate_with_scale(coeffs: &[Complex64], z: Complex64) -> (Complex64, f64) {
    let az = z.norm();
    let mut acc = ZERO;
    let mut scale = 0.0;
    for &c in coeffs {
        acc = acc * z + c;
        scale = scale * az + c.norm();
    }
    (acc, scale)
}

fn evaluate_slice(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = ZERO;
    for &c in coeffs {
        acc = acc * z + c;
    }
    acc
}

/// Aberth–Ehrlich simultaneous iteration on a monic polynomial with nonzero
/// constant term. Initial guesses sit on a circle of Cauchy-bound radius
/// around the root barycenter, with an angular offset to break symmetry.
fn aberth(coeffs: &[Complex64], tol: &Tolerances) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    debug_assert!(n >= 1);
    if n == 1 {
        return Ok(vec![-coeffs[1]]);
    }

    let deriv: Vec<Complex64> = coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * ((n - i) as f64))
        .collect();

    let center = -coeffs[1] / (n as f64);
    let radius = 1.0 + coeffs[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64) + 0.4;
            center + Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut converged = vec![false; n];

    let residual_floor = 20.0 * f64::EPSILON;
    for _ in 0..ABERTH_MAX_ITERATIONS {
        if converged.iter().all(|&c| c) {
            break;
        }
        for j in 0..n {
            if converged[j] {
                continue;
            }
            let zj = z[j];
            let (pv, scale) = evaluate_with_scale(coeffs, zj);
            if pv.norm() <= residual_floor * scale {
                converged[j] = true;
                continue;
            }
            let dv = evaluate_slice(&deriv, zj);
            if dv == ZERO {
                z[j] += Complex64::new(1e-8, 2e-8) * (1.0 + zj.norm());
                continue;
            }
            let w = pv / dv;
            let mut repulsion = ZERO;
            let mut collision = false;
            for (i, &zi) in z.iter().enumerate() {
                if i == j {
                    continue;
                }
                let diff = zj - zi;
                if diff == ZERO {
                    collision = true;
                    break;
                }
                repulsion += ONE / diff;
            }
            if collision {
                z[j] += Complex64::new(-2e-8, 1e-8) * (1.0 + zj.norm());
                continue;
            }
            let denom = ONE - w * repulsion;
            let step = if denom.norm() < 1e-280 { w } else { w / denom };
            if !is_finite(step) {
                z[j] += Complex64::new(1e-8, -1e-8) * (1.0 + zj.norm());
                continue;
            }
            z[j] -= step;
            if step.norm() <= tol.root * z[j].norm().max(1.0) {
                converged[j] = true;
            }
        }
    }

    if converged.iter().all(|&c| c) {
        Ok(z)
    } else {
        Err(Error::RootFinding {
            message: format!(
                "Aberth iteration did not converge within {ABERTH_MAX_ITERATIONS} iterations \
                 (degree {n})"
            ),
            partial: z,
        })
    }
}

/// Greedy centroid clustering of root approximations at distance `tol`,
/// returning the member lists.
fn cluster_points(points: &[Complex64], tol: f64) -> Vec<Vec<Complex64>> {
    let mut sorted = points.to_vec();
    sorted.sort_by(cmp_re_im);
    let mut clusters: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for p in sorted {
        let mut joined = false;
        for (sum, members) in clusters.iter_mut() {
            let centroid = *sum / (members.len() as f64);
            if (p - centroid).norm() <= tol {
                *sum += p;
                members.push(p);
                joined = true;
                break;
            }
        }
        if !joined {
            clusters.push((p, vec![p]));
        }
    }
    clusters.into_iter().map(|(_, members)| members).collect()
}

fn centroid(members: &[Complex64]) -> Complex64 {
    members.iter().sum::<Complex64>() / (members.len() as f64)
}

/// Whether `z` is consistent with being a root of `poly` at evaluation
/// noise level.
fn residual_confirms_root(poly: &Polynomial, z: Complex64) -> bool {
    let (value, scale) = evaluate_with_scale(&poly.coeffs, z);
    value.norm() <= 100.0 * f64::EPSILON * scale.max(f64::MIN_POSITIVE)
}

/// Accept a pre-cluster as one multiple root when the polished centroid
/// verifies as a root; otherwise split it back up at the strict tolerance.
fn accept_cluster(
    poly: &Polynomial,
    members: &[Complex64],
    strict: f64,
    out: &mut Vec<(Complex64, u32)>,
) {
    let m = members.len() as u32;
    let center = centroid(members);
    if m == 1 {
        out.push((center, 1));
        return;
    }
    let polished = polish_multiple_root(poly, center, m);
    if residual_confirms_root(poly, polished) {
        out.push((polished, m));
        return;
    }
    // Not an m-fold root: keep only merges the strict tolerance justifies.
    for sub in cluster_points(members, strict) {
        let sub_m = sub.len() as u32;
        let sub_center = centroid(&sub);
        if sub_m >= 2 {
            let refined = polish_multiple_root(poly, sub_center, sub_m);
            if residual_confirms_root(poly, refined) {
                out.push((refined, sub_m));
            } else {
                out.push((sub_center, sub_m));
            }
        } else {
            out.push((sub_center, 1));
        }
    }
}

/// Refine an order-`m` cluster centroid with Newton steps on the (m−1)-th
/// derivative, where the multiple root is simple.
fn polish_multiple_root(poly: &Polynomial, centroid: Complex64, m: u32) -> Complex64 {
    let mut g = poly.clone();
    for _ in 0..m - 1 {
        g = g.derivative();
    }
    let gp = g.derivative();
    let mut z = centroid;
    for _ in 0..6 {
        let dv = gp.evaluate(z);
        if dv == ZERO {
            return centroid;
        }
        let step = g.evaluate(z) / dv;
        if !is_finite(step) {
            return centroid;
        }
        z -= step;
    }
    if (z - centroid).norm() <= 1e-3 * (1.0 + centroid.norm()) {
        z
    } else {
        centroid
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn coeffs_close(a: &Polynomial, b: &Polynomial, rel: f64) {
        assert_eq!(a.degree(), b.degree(), "degree mismatch: {a:?} vs {b:?}");
        let scale = a
            .coeffs()
            .iter()
            .chain(b.coeffs())
            .map(|c| c.norm())
            .fold(1.0, f64::max);
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert!(
                (x - y).norm() <= rel * scale,
                "coefficient mismatch {x} vs {y} (scale {scale})"
            );
        }
    }

    #[test]
    fn expand_empty_product_is_constant() {
        let p = Polynomial::expand_from_roots(ONE, &RootMultiset::empty()).unwrap();
        assert_eq!(p.coeffs(), &[ONE]);
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn expand_rejects_zero_leading() {
        let err = Polynomial::expand_from_roots(ZERO, &RootMultiset::empty()).unwrap_err();
        assert_eq!(err.code(), "invalid-input");
    }

    #[test]
    fn expand_cube_root_configuration() {
        // Radius 3^{-1/3} at the cube-root angles: leading 3 gives 3z³ − 1.
        let rho = 3f64.powf(-1.0 / 3.0);
        let roots = RootMultiset::from_points(&[
            Complex64::from_polar(rho, 0.0),
            Complex64::from_polar(rho, 2.0 * std::f64::consts::PI / 3.0),
            Complex64::from_polar(rho, -2.0 * std::f64::consts::PI / 3.0),
        ])
        .unwrap();
        let p = Polynomial::expand_from_roots(c(3.0, 0.0), &roots).unwrap();
        let expected =
            Polynomial::from_coeffs(vec![c(3.0, 0.0), ZERO, ZERO, c(-1.0, 0.0)]).unwrap();
        coeffs_close(&p, &expected, 1e-14);
    }

    #[test]
    fn expand_third_roots_of_one_twentyseventh() {
        // Roots at (1/3)·(cube roots of unity) multiply out to z³ − 1/27.
        let roots = RootMultiset::from_points(&[
            Complex64::from_polar(1.0 / 3.0, 0.0),
            Complex64::from_polar(1.0 / 3.0, 2.0 * std::f64::consts::PI / 3.0),
            Complex64::from_polar(1.0 / 3.0, -2.0 * std::f64::consts::PI / 3.0),
        ])
        .unwrap();
        let p = Polynomial::expand_from_roots(ONE, &roots).unwrap();
        let expected =
            Polynomial::from_coeffs(vec![ONE, ZERO, ZERO, c(-1.0 / 27.0, 0.0)]).unwrap();
        coeffs_close(&p, &expected, 1e-14);
    }

    #[test]
    fn expand_double_root() {
        let roots = RootMultiset::new(vec![(ONE, 2)]).unwrap();
        let p = Polynomial::expand_from_roots(c(2.0, 0.0), &roots).unwrap();
        // 2(z−1)² = 2z² − 4z + 2
        let expected =
            Polynomial::from_coeffs(vec![c(2.0, 0.0), c(-4.0, 0.0), c(2.0, 0.0)]).unwrap();
        coeffs_close(&p, &expected, 1e-15);
    }

    #[test]
    fn find_roots_quadratic() {
        let p = Polynomial::from_coeffs(vec![ONE, ZERO, ONE]).unwrap();
        let roots = p.find_roots(&tol()).unwrap();
        let expected = RootMultiset::from_points(&[c(0.0, 1.0), c(0.0, -1.0)]).unwrap();
        assert!(roots.matches(&expected, 1e-10));
    }

    #[test]
    fn find_roots_scaled_cubic() {
        // 3z³ − 1: three simple roots on the circle of radius 3^{-1/3}.
        let p = Polynomial::from_coeffs(vec![c(3.0, 0.0), ZERO, ZERO, c(-1.0, 0.0)]).unwrap();
        let roots = p.find_roots(&tol()).unwrap();
        assert_eq!(roots.entries().len(), 3);
        let rho = 3f64.powf(-1.0 / 3.0);
        for (z, m) in roots.entries() {
            assert_eq!(*m, 1);
            assert!((z.norm() - rho).abs() < 1e-12);
            assert!(p.evaluate(*z).norm() < 1e-12);
        }
    }

    #[test]
    fn find_roots_triple_zero() {
        let p = Polynomial::from_coeffs(vec![c(2.0, 0.0), ZERO, ZERO, ZERO]).unwrap();
        let roots = p.find_roots(&tol()).unwrap();
        assert_eq!(roots.entries(), &[(ZERO, 3)]);
    }

    #[test]
    fn find_roots_double_root_clusters() {
        // 2(z−1)² from raw coefficients; the two approximations must merge.
        let p = Polynomial::from_coeffs(vec![c(2.0, 0.0), c(-4.0, 0.0), c(2.0, 0.0)]).unwrap();
        let roots = p.find_roots(&tol()).unwrap();
        assert_eq!(roots.entries().len(), 1);
        let (z, m) = roots.entries()[0];
        assert_eq!(m, 2);
        assert!((z - ONE).norm() < 1e-7);
    }

    #[test]
    fn find_roots_rejects_zero_polynomial() {
        let err = Polynomial::zero().find_roots(&tol()).unwrap_err();
        assert_eq!(err.code(), "invalid-input");
    }

    #[test]
    fn evaluate_examples() {
        let p = Polynomial::from_coeffs(vec![ONE, ZERO, ONE]).unwrap();
        assert!(p.evaluate(c(0.0, 1.0)).norm() < 1e-15);

        let q = Polynomial::from_coeffs(vec![c(3.0, 0.0), ZERO, ZERO, c(-1.0, 0.0)]).unwrap();
        assert!(q.evaluate(c(3f64.powf(-1.0 / 3.0), 0.0)).norm() < 1e-15);

        let id = Polynomial::from_coeffs(vec![ONE, ZERO]).unwrap();
        assert_eq!(id.evaluate(c(5.0, 2.0)), c(5.0, 2.0));
    }

    #[test]
    fn substitute_identity_and_scaling() {
        let id = AffineMap::identity();
        let p = Polynomial::from_coeffs(vec![ONE, ZERO]).unwrap();
        coeffs_close(&p.affine_substitute(&id), &p, 1e-15);

        let cube = Polynomial::from_coeffs(vec![ONE, ZERO, ZERO, ZERO]).unwrap();
        let double = AffineMap::new(c(2.0, 0.0), ZERO).unwrap();
        let expected = Polynomial::from_coeffs(vec![c(8.0, 0.0), ZERO, ZERO, ZERO]).unwrap();
        coeffs_close(&cube.affine_substitute(&double), &expected, 1e-15);
    }

    #[test]
    fn substitute_translation_centers_double_root() {
        // (z−1)² under w ↦ w+1 becomes w².
        let p = Polynomial::from_coeffs(vec![ONE, c(-2.0, 0.0), ONE]).unwrap();
        let shift = AffineMap::new(ONE, ONE).unwrap();
        let expected = Polynomial::from_coeffs(vec![ONE, ZERO, ZERO]).unwrap();
        coeffs_close(&p.affine_substitute(&shift), &expected, 1e-15);
    }

    fn random_complex(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
        Complex64::from_polar(rng.gen::<f64>() * radius, rng.gen::<f64>() * std::f64::consts::TAU)
    }

    #[test]
    fn roundtrip_random_root_multisets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let degree = rng.gen_range(1..=8usize);
            let mut entries: Vec<(Complex64, u32)> = Vec::new();
            let mut remaining = degree;
            while remaining > 0 {
                let m = rng.gen_range(1..=remaining.min(3)) as u32;
                entries.push((random_complex(&mut rng, 10.0), m));
                remaining -= m as usize;
            }
            let target = RootMultiset::new(entries).unwrap();
            let expanded = Polynomial::expand_from_roots(ONE, &target).unwrap();
            // Drop the exact view so the numeric path is exercised.
            let raw = Polynomial::from_coeffs(expanded.coeffs().to_vec()).unwrap();
            let recovered = raw.find_roots(&tol()).unwrap();
            let scale = target.max_modulus().max(1.0);
            assert!(
                recovered.matches(&target, 2e-6 * scale),
                "roundtrip failed: {target:?} vs {recovered:?}"
            );
        }
    }

    #[test]
    fn substitution_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let deg_p = rng.gen_range(0..=4usize);
            let deg_q = rng.gen_range(0..=4usize);
            let p = Polynomial::from_coeffs(
                (0..=deg_p).map(|_| random_complex(&mut rng, 2.0) + ONE).collect(),
            )
            .unwrap();
            let q = Polynomial::from_coeffs(
                (0..=deg_q).map(|_| random_complex(&mut rng, 2.0) + ONE).collect(),
            )
            .unwrap();
            let map = AffineMap::new(
                random_complex(&mut rng, 2.0) + c(0.5, 0.5),
                random_complex(&mut rng, 3.0),
            )
            .unwrap();
            let lhs = (&p * &q).affine_substitute(&map);
            let rhs = &p.affine_substitute(&map) * &q.affine_substitute(&map);
            coeffs_close(&lhs, &rhs, 1e-10);
        }
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let deg = rng.gen_range(0..=6usize);
            let p = Polynomial::from_coeffs(
                (0..=deg).map(|_| random_complex(&mut rng, 2.0) + ONE).collect(),
            )
            .unwrap();
            let map = AffineMap::new(
                random_complex(&mut rng, 2.0) + c(0.5, 0.5),
                random_complex(&mut rng, 3.0),
            )
            .unwrap();
            let w = random_complex(&mut rng, 10.0);
            let lhs = p.affine_substitute(&map).evaluate(w);
            let rhs = p.evaluate(map.apply(w));
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            assert!((lhs - rhs).norm() <= 1e-12 * scale);
        }
    }
}
