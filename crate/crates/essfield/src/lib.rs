//! Singular complex analytic vector fields `X = λ·(Q/P)·e^E ∂/∂z` on the
//! Riemann sphere, where `Q`, `P`, `E` are polynomials of degrees `(s, r, d)`.
//! For `d ≥ 1` such a field has `s` zeros and `r` poles in the plane and an
//! essential singularity at infinity; `d = 0` gives the rational fields.
//!
//! The crate computes, for fields in these families:
//!
//! - the divisor (the three unordered root multisets of `Q`, `P`, `E`) and
//!   the pullback action of the affine group ([`field`]),
//! - the cyclic rotation symmetries `Aut(ℂ)_X` and the family-level
//!   triviality predicate ([`symmetry`]),
//! - canonical representatives under affine changes of coordinate, with and
//!   without the extra circle action on the flat metric ([`normal_form`]),
//! - construction of fields with prescribed rotational symmetry from orbit
//!   data ([`realize`]),
//! - the quotient field under a detected `ℤ_k` symmetry, `w = (z−C)^k`,
//!   together with the germ-level quotient table ([`quotient`]),
//! - the associated 1-form `ω_X = 1/X`, its residues, the distinguished
//!   parameter `Ψ_X = ∫ ω_X` and flat path lengths ([`dictionary`]),
//! - streamline phase portraits of `Re X` as SVG or PNG ([`portrait`]).
//!
//! Every capability has a runnable example under `examples/`; the thin
//! `essfield` binary exposes the same operations as CLI subcommands over
//! JSON field documents ([`cli`]).

pub mod cli;
pub mod dictionary;
pub mod document;
pub mod error;
pub mod field;
pub mod normal_form;
pub mod poly;
pub mod portrait;
pub mod quotient;
pub mod realize;
pub mod symmetry;

#[cfg(test)]
pub(crate) mod test_support;

pub use error::{Error, Result};
pub use field::{AffineMap, Divisor, VectorField};
pub use poly::{Polynomial, RootMultiset};

/// Numerical tolerances shared by all modules.
///
/// The geometric decisions (root clustering, barycenter agreement, canonical
/// tuple comparison) hang off a single global knob so they can be tightened
/// or loosened together; `ESSFIELD_TOL` overrides that knob from the
/// environment.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Residual bound for accepted roots, relative to coefficient magnitude.
    pub root: f64,
    /// Root clustering distance, scaled by `max(1, max |root|)`.
    pub cluster: f64,
    /// Barycenter agreement required before testing rotation invariance.
    pub center: f64,
    /// Distance guard around poles for field evaluation.
    pub pole: f64,
    /// Relative tolerance for canonical-tuple comparison in equivalence tests.
    pub equivalence: f64,
    /// Modulus threshold below which a residue counts as zero.
    pub residue: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root: 1e-13,
            cluster: 1e-7,
            center: 1e-7,
            pole: 1e-12,
            equivalence: 1e-6,
            residue: 1e-8,
        }
    }
}

impl Tolerances {
    /// Default tolerances, with the global geometric knob overridden by the
    /// `ESSFIELD_TOL` environment variable when it is set to a decimal value.
    pub fn from_env() -> Self {
        let mut tol = Tolerances::default();
        if let Ok(raw) = std::env::var("ESSFIELD_TOL") {
            if let Ok(value) = raw.trim().parse::<f64>() {
                if value.is_finite() && value > 0.0 {
                    tol.set_global(value);
                }
            }
        }
        tol
    }

    /// Set the shared geometric tolerance (clustering, centers, equivalence).
    pub fn set_global(&mut self, value: f64) {
        self.cluster = value;
        self.center = value;
        self.equivalence = value.max(1e-9);
    }

    /// Clustering distance for a configuration whose largest modulus is `scale`.
    pub fn cluster_distance(&self, scale: f64) -> f64 {
        self.cluster * scale.max(1.0)
    }

    /// Center agreement distance at a given configuration scale.
    pub fn center_distance(&self, scale: f64) -> f64 {
        self.center * scale.max(1.0)
    }
}
