//! JSON documents for fields and symmetry specs.
//!
//! Complex numbers are two-element arrays of decimal doubles. Polynomials
//! come in one of two forms: `{"roots": [...]}` with entries either
//! `[re, im]` (simple root) or `[[re, im], mult]`, or
//! `{"coeffs": [[re, im], ...]}` in descending degree order. A roots-form
//! polynomial may carry `"leading"`; for `E` that is `c₀`, for `Q`/`P` it
//! folds into `λ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::poly::{Polynomial, RootMultiset, ONE};
use crate::realize::{CenterKind, OrbitSpec, SymmetrySpec};
use crate::Tolerances;

pub fn complex_to_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn pair_to_complex(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootEntry {
    Simple([f64; 2]),
    WithMultiplicity([f64; 2], u32),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<RootEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading: Option<[f64; 2]>,
}

impl PolySpec {
    fn to_polynomial(&self, what: &str) -> Result<Polynomial> {
        match (&self.roots, &self.coeffs) {
            (Some(_), Some(_)) | (None, None) => Err(Error::Parse(format!(
                "{what}: exactly one of \"roots\" or \"coeffs\" is required"
            ))),
            (Some(roots), None) => {
                let entries = roots
                    .iter()
                    .map(|entry| match entry {
                        RootEntry::Simple(p) => (pair_to_complex(*p), 1),
                        RootEntry::WithMultiplicity(p, m) => (pair_to_complex(*p), *m),
                    })
                    .collect();
                let multiset = RootMultiset::new(entries)
                    .map_err(|e| Error::Parse(format!("{what}: {e}")))?;
                let leading = self.leading.map(pair_to_complex).unwrap_or(ONE);
                Polynomial::expand_from_roots(leading, &multiset)
                    .map_err(|e| Error::Parse(format!("{what}: {e}")))
            }
            (None, Some(coeffs)) => {
                if self.leading.is_some() {
                    return Err(Error::Parse(format!(
                        "{what}: \"leading\" only applies to the roots form"
                    )));
                }
                Polynomial::from_coeffs(coeffs.iter().map(|&c| pair_to_complex(c)).collect())
                    .map_err(|e| Error::Parse(format!("{what}: {e}")))
            }
        }
    }

    fn from_polynomial(p: &Polynomial) -> PolySpec {
        if let Some(view) = p.known_roots() {
            let roots = view
                .entries()
                .iter()
                .map(|&(z, m)| {
                    if m == 1 {
                        RootEntry::Simple(complex_to_pair(z))
                    } else {
                        RootEntry::WithMultiplicity(complex_to_pair(z), m)
                    }
                })
                .collect();
            let leading = (p.leading() != ONE).then(|| complex_to_pair(p.leading()));
            PolySpec {
                roots: Some(roots),
                coeffs: None,
                leading,
            }
        } else {
            PolySpec {
                roots: None,
                coeffs: Some(p.coeffs().iter().map(|&c| complex_to_pair(c)).collect()),
                leading: None,
            }
        }
    }
}

/// On-disk description of a vector field.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDocument {
    pub lambda: [f64; 2],
    #[serde(rename = "Q")]
    pub q: PolySpec,
    #[serde(rename = "P")]
    pub p: PolySpec,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<PolySpec>,
    /// Optional override for the global geometric tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl FieldDocument {
    /// Build the field, normalizing (leading coefficients of `Q`, `P` fold
    /// into `λ`) and validating every invariant.
    pub fn parse(&self, tol: &mut Tolerances) -> Result<VectorField> {
        if let Some(t) = self.tolerance {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::Parse("tolerance must be a positive number".into()));
            }
            tol.set_global(t);
        }
        let lambda = pair_to_complex(self.lambda);
        let q = self.q.to_polynomial("Q")?;
        let p = self.p.to_polynomial("P")?;
        let e = match &self.e {
            Some(spec) => spec.to_polynomial("E")?,
            None => Polynomial::zero(),
        };
        let field = VectorField::new(lambda, q, p, e)?;
        let diagnostics = field.validate(tol);
        if !diagnostics.is_empty() {
            return Err(Error::Validation(
                diagnostics.iter().map(|d| d.to_string()).collect(),
            ));
        }
        Ok(field)
    }

    /// Serialize a field. Root views are kept when present (they preserve
    /// multiplicity structure exactly); otherwise coefficients are written.
    pub fn from_field(x: &VectorField) -> FieldDocument {
        FieldDocument {
            lambda: complex_to_pair(x.lambda()),
            q: PolySpec::from_polynomial(x.q()),
            p: PolySpec::from_polynomial(x.p()),
            e: (!x.e().is_zero()).then(|| PolySpec::from_polynomial(x.e())),
            tolerance: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterKindDoc {
    Pole(u32),
    Zero(u32),
}

fn default_c0() -> [f64; 2] {
    [1.0, 0.0]
}

/// On-disk description of a symmetry spec for the realizer.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryDocument {
    pub k: u32,
    pub center: [f64; 2],
    pub center_kind: CenterKindDoc,
    #[serde(default)]
    pub zero_orbits: Vec<(f64, f64, u32)>,
    #[serde(default)]
    pub pole_orbits: Vec<(f64, f64, u32)>,
    #[serde(default)]
    pub exp_orbits: Vec<(f64, f64, u32)>,
    #[serde(default)]
    pub exp_center_multiplicity: u32,
    pub lambda: [f64; 2],
    #[serde(default = "default_c0")]
    pub c0: [f64; 2],
}

impl SymmetryDocument {
    pub fn to_spec(&self) -> SymmetrySpec {
        let orbits = |list: &[(f64, f64, u32)]| {
            list.iter()
                .map(|&(radius, angle, m)| OrbitSpec::new(radius, angle, m))
                .collect()
        };
        SymmetrySpec {
            order: self.k,
            center: pair_to_complex(self.center),
            center_kind: match self.center_kind {
                CenterKindDoc::Pole(nu) => CenterKind::Pole(nu),
                CenterKindDoc::Zero(nu) => CenterKind::Zero(nu),
            },
            zero_orbits: orbits(&self.zero_orbits),
            pole_orbits: orbits(&self.pole_orbits),
            exp_orbits: orbits(&self.exp_orbits),
            exp_center_multiplicity: self.exp_center_multiplicity,
            lambda: pair_to_complex(self.lambda),
            c0: pair_to_complex(self.c0),
        }
    }
}
