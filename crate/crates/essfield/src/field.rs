//! Vector fields `X = λ·(Q/P)·e^E ∂/∂z`, their divisors and the pullback
//! action of the affine group.
//!
//! Fields are stored with `Q`, `P` monic and `λ` carrying the scale; `E`
//! keeps its own leading coefficient `c₀`. For degree-0 exponential parts
//! the constant folds into `λ` and `E ≡ 0`, so rational fields live in the
//! same type with `e^E ≡ 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{cmp_re_im, is_finite, Polynomial, RootMultiset, ONE, ZERO};
use crate::Tolerances;

/// `Re E(z)` beyond this magnitude is reported as a range error instead of
/// silently producing an infinite exponential.
pub const EXP_OVERFLOW_RE: f64 = 700.0;

/// Affine transformation `T(w) = a·w + b` with `a ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub a: Complex64,
    pub b: Complex64,
}

impl AffineMap {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        if a == ZERO {
            return Err(Error::InvalidInput(
                "affine map requires a nonzero linear part".into(),
            ));
        }
        if !is_finite(a) || !is_finite(b) {
            return Err(Error::InvalidInput("non-finite affine coefficients".into()));
        }
        Ok(AffineMap { a, b })
    }

    pub fn identity() -> Self {
        AffineMap { a: ONE, b: ZERO }
    }

    /// Rotation by `angle` about `center`: `T(w) = e^{iθ}(w − C) + C`.
    pub fn rotation_about(center: Complex64, angle: f64) -> Self {
        let a = Complex64::from_polar(1.0, angle);
        AffineMap {
            a,
            b: center * (ONE - a),
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b
    }

    pub fn inverse(&self) -> AffineMap {
        AffineMap {
            a: ONE / self.a,
            b: -self.b / self.a,
        }
    }

    /// Composition `(self ∘ other)(w) = self(other(w))`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            a: self.a * other.a,
            b: self.a * other.b + self.b,
        }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.a - ONE).norm() <= tol && self.b.norm() <= tol
    }

    /// Fixed point in the plane; absent for nontrivial translations.
    pub fn fixed_point(&self) -> Option<Complex64> {
        if (self.a - ONE).norm() == 0.0 {
            if self.b == ZERO {
                Some(ZERO)
            } else {
                None
            }
        } else {
            Some(self.b / (ONE - self.a))
        }
    }
}

/// The three root multisets of a field: zeros `Z`, poles `P`, exponential
/// roots `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct Divisor {
    pub zeros: RootMultiset,
    pub poles: RootMultiset,
    pub exp_roots: RootMultiset,
}

impl Divisor {
    pub fn parts(&self) -> [&RootMultiset; 3] {
        [&self.zeros, &self.poles, &self.exp_roots]
    }

    /// Largest modulus over all divisor points (1 for the empty divisor).
    pub fn scale(&self) -> f64 {
        self.parts()
            .iter()
            .map(|m| m.max_modulus())
            .fold(1.0, f64::max)
    }

    pub fn total_points(&self) -> usize {
        self.parts().iter().map(|m| m.total_multiplicity()).sum()
    }

    /// All distinct locations across the three parts.
    pub fn all_locations(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for part in self.parts() {
            for &(z, _) in part.entries() {
                out.push(z);
            }
        }
        out.sort_by(cmp_re_im);
        out
    }
}

/// A diagnostic produced by [`VectorField::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    DegenerateLambda,
    NonMonic(&'static str),
    ZeroPoleCollision(Complex64),
    ExponentConstantNotFolded,
    RootFindingFailed(String),
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::DegenerateLambda => write!(f, "lambda must be nonzero"),
            Diagnostic::NonMonic(which) => write!(f, "{which} is not monic"),
            Diagnostic::ZeroPoleCollision(z) => {
                write!(f, "zero and pole collide near {z} (Z ∩ P must be empty)")
            }
            Diagnostic::ExponentConstantNotFolded => {
                write!(f, "degree-0 exponential part must be the zero polynomial")
            }
            Diagnostic::RootFindingFailed(msg) => write!(f, "root finding failed: {msg}"),
        }
    }
}

/// A vector field `λ·(Q/P)·e^E ∂/∂z` with signature `(s, r, d) =
/// (deg Q, deg P, deg E)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    lambda: Complex64,
    q: Polynomial,
    p: Polynomial,
    e: Polynomial,
}

impl VectorField {
    /// Normalizing constructor.
    ///
    /// The leading coefficients of `Q` and `P` fold into `λ`; a degree-0
    /// exponential part folds into `λ` as `e^{const}` and `E` becomes 0.
    /// Zero/pole disjointness is not enforced here — [`Self::validate`]
    /// reports it, and divisor extraction rejects it.
    pub fn new(
        lambda: Complex64,
        q: Polynomial,
        p: Polynomial,
        e: Polynomial,
    ) -> Result<VectorField> {
        if lambda == ZERO || !is_finite(lambda) {
            return Err(Error::InvalidInput("lambda must be nonzero and finite".into()));
        }
        if q.is_zero() {
            return Err(Error::InvalidInput("Q must not be the zero polynomial".into()));
        }
        if p.is_zero() {
            return Err(Error::InvalidInput("P must not be the zero polynomial".into()));
        }
        let (q_monic, q_lead) = q.monic();
        let (p_monic, p_lead) = p.monic();
        let mut lambda = lambda * q_lead / p_lead;
        let e = if e.is_constant() {
            let constant = e.evaluate(ZERO);
            if constant != ZERO {
                if constant.re.abs() > EXP_OVERFLOW_RE {
                    return Err(Error::Range {
                        point: ZERO,
                        exponent: constant.re,
                    });
                }
                lambda *= constant.exp();
            }
            Polynomial::zero()
        } else {
            e
        };
        if !is_finite(lambda) || lambda == ZERO {
            return Err(Error::InvalidInput(
                "lambda became degenerate under normalization".into(),
            ));
        }
        Ok(VectorField {
            lambda,
            q: q_monic,
            p: p_monic,
            e,
        })
    }

    /// Convenience constructor for rational fields (`d = 0`).
    pub fn rational(lambda: Complex64, q: Polynomial, p: Polynomial) -> Result<VectorField> {
        VectorField::new(lambda, q, p, Polynomial::zero())
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn e(&self) -> &Polynomial {
        &self.e
    }

    /// Leading coefficient `c₀` of `E` (absent for rational fields).
    pub fn c0(&self) -> Option<Complex64> {
        if self.e.is_zero() {
            None
        } else {
            Some(self.e.leading())
        }
    }

    /// `(s, r, d)` = degrees of `Q`, `P`, `E` (`d = 0` when `E ≡ 0`).
    pub fn signature(&self) -> (usize, usize, usize) {
        (self.q.degree(), self.p.degree(), self.e.degree())
    }

    /// Exponent of the scale action on `λ`: `s − r − 1`.
    pub fn lambda_weight(&self) -> i64 {
        let (s, r, _) = self.signature();
        s as i64 - r as i64 - 1
    }

    /// Evaluate `λ·Q(z)/P(z)·e^{E(z)}`.
    ///
    /// Errors when `z` sits within the pole guard distance of a root of `P`
    /// or when the exponential would overflow.
    pub fn evaluate(&self, z: Complex64, tol: &Tolerances) -> Result<Complex64> {
        if self.p.degree() >= 1 {
            let poles = self.p.find_roots(tol)?;
            for &(pole, _) in poles.entries() {
                if (z - pole).norm() <= tol.pole {
                    return Err(Error::PoleEvaluation { point: z });
                }
            }
        }
        let exponent = self.e.evaluate(z);
        if exponent.re.abs() > EXP_OVERFLOW_RE {
            return Err(Error::Range {
                point: z,
                exponent: exponent.re,
            });
        }
        Ok(self.lambda * self.q.evaluate(z) / self.p.evaluate(z) * exponent.exp())
    }

    /// The divisor `(Z, P, E)`; zeros and poles are re-checked for
    /// disjointness within the clustering tolerance.
    pub fn divisor(&self, tol: &Tolerances) -> Result<Divisor> {
        let zeros = if self.q.degree() >= 1 {
            self.q.find_roots(tol)?
        } else {
            RootMultiset::empty()
        };
        let poles = if self.p.degree() >= 1 {
            self.p.find_roots(tol)?
        } else {
            RootMultiset::empty()
        };
        let exp_roots = if self.e.degree() >= 1 {
            self.e.find_roots(tol)?
        } else {
            RootMultiset::empty()
        };
        let scale = zeros
            .max_modulus()
            .max(poles.max_modulus())
            .max(1.0);
        let guard = tol.cluster_distance(scale);
        for &(z, _) in zeros.entries() {
            for &(p, _) in poles.entries() {
                if (z - p).norm() <= guard {
                    return Err(Error::InvalidField(format!(
                        "zero at {z} collides with pole at {p}"
                    )));
                }
            }
        }
        Ok(Divisor {
            zeros,
            poles,
            exp_roots,
        })
    }

    /// Pullback `T*X`, the field transported by the coordinate change
    /// `z = T(w)`: value law `X(T(w))/T′(w)`.
    ///
    /// On parameters this is `λ ↦ λ·a^{s−r−1}`, `c₀ ↦ c₀·a^d`, and every
    /// divisor point moves by `T⁻¹`; the normalizing constructor restores
    /// monic `Q`, `P` automatically.
    pub fn pullback(&self, map: &AffineMap) -> VectorField {
        let q = self.q.affine_substitute(map);
        let p = self.p.affine_substitute(map);
        let e = self.e.affine_substitute(map);
        VectorField::new(self.lambda / map.a, q, p, e)
            .expect("pullback preserves field validity")
    }

    /// Diagnostics for every violated invariant (empty when valid).
    pub fn validate(&self, tol: &Tolerances) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.lambda == ZERO {
            out.push(Diagnostic::DegenerateLambda);
        }
        if self.q.leading() != ONE {
            out.push(Diagnostic::NonMonic("Q"));
        }
        if self.p.leading() != ONE {
            out.push(Diagnostic::NonMonic("P"));
        }
        if self.e.is_constant() && !self.e.is_zero() {
            out.push(Diagnostic::ExponentConstantNotFolded);
        }
        if self.q.degree() >= 1 && self.p.degree() >= 1 {
            let roots = self
                .q
                .find_roots(tol)
                .and_then(|zeros| self.p.find_roots(tol).map(|poles| (zeros, poles)));
            match roots {
                Ok((zeros, poles)) => {
                    let scale = zeros.max_modulus().max(poles.max_modulus()).max(1.0);
                    let guard = tol.cluster_distance(scale);
                    for &(z, _) in zeros.entries() {
                        for &(p, _) in poles.entries() {
                            if (z - p).norm() <= guard {
                                out.push(Diagnostic::ZeroPoleCollision(z));
                            }
                        }
                    }
                }
                Err(err) => out.push(Diagnostic::RootFindingFailed(err.to_string())),
            }
        }
        out
    }

    /// Multiply the field by a complex unit/scalar (the circle action used
    /// by the metric classification rotates `λ`).
    pub fn scaled(&self, factor: Complex64) -> Result<VectorField> {
        VectorField::new(self.lambda * factor, self.q.clone(), self.p.clone(), self.e.clone())
    }
}
