//! The quotient field under a detected `ℤ_k` symmetry, and the germ-level
//! quotient table.
//!
//! For `X` with cyclic isotropy of order `k` about `C`, the quotient chart
//! is `w = (z−C)^k` and the pushforward is taken literally:
//! `Y(w) = k·(z−C)^{k−1}·X(z)`. Each divisor orbit with representative
//! `C + ρe^{iθ}` becomes a single root at `w = (ρe^{iθ})^k` with the orbit's
//! multiplicity, so no fractional powers ever enter the construction. The
//! center multiplicity transforms by `ν ↦ (ν−1)/k + 1` (zero center) and
//! `ν ↦ (ν+1)/k − 1` (pole center), the exponential part by
//! `Ê(w) = c₀·w^{μ/k}·Π(w − ê_j)`, and `λ̂ = k·λ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Divisor, VectorField};
use crate::poly::{Polynomial, RootMultiset, ONE, ZERO};
use crate::symmetry::{isotropy_group, rotation_invariant, IsotropyKind};
use crate::Tolerances;

/// Orbit data of a divisor under rotation by `2π/k` about a center.
#[derive(Debug, Clone)]
pub struct OrbitDecomposition {
    pub center: Complex64,
    pub order: u32,
    /// Multiplicity at the center in (zeros, poles, exponential roots).
    pub center_multiplicity: [u32; 3],
    /// Per part: one `(representative, multiplicity)` entry per orbit, the
    /// representative being the point with smallest `arg(p−C)` in
    /// `[0, 2π/k)`.
    pub orbits: [Vec<(Complex64, u32)>; 3],
}

impl OrbitDecomposition {
    /// Rebuild the full multiset of one part (for verification).
    pub fn reassemble(&self, part: usize) -> Result<RootMultiset> {
        let mut entries: Vec<(Complex64, u32)> = Vec::new();
        if self.center_multiplicity[part] > 0 {
            entries.push((self.center, self.center_multiplicity[part]));
        }
        for &(rep, m) in &self.orbits[part] {
            for ell in 0..self.order {
                let angle = 2.0 * std::f64::consts::PI * ell as f64 / self.order as f64;
                let rotated = self.center + (rep - self.center) * Complex64::from_polar(1.0, angle);
                entries.push((rotated, m));
            }
        }
        RootMultiset::new(entries)
    }
}

fn decompose_part(
    part: &RootMultiset,
    center: Complex64,
    k: u32,
    guard: f64,
) -> Result<(u32, Vec<(Complex64, u32)>)> {
    let sector = 2.0 * std::f64::consts::PI / k as f64;
    let mut center_mult = 0u32;
    let mut orbits: Vec<(Complex64, u32)> = Vec::new();
    let mut claimed = vec![false; part.entries().len()];

    for (i, &(z, m)) in part.entries().iter().enumerate() {
        if claimed[i] {
            continue;
        }
        if (z - center).norm() <= guard {
            claimed[i] = true;
            center_mult += m;
            continue;
        }
        // Claim the whole orbit of z and keep the representative whose
        // argument relative to the center lies in [0, 2π/k); the copy with
        // the minimal wrapped argument is exactly that one.
        let mut representative = z;
        let mut rep_angle = f64::INFINITY;
        for ell in 0..k {
            let angle = sector * ell as f64;
            let rotated = center + (z - center) * Complex64::from_polar(1.0, angle);
            let mut found = None;
            for (j, &(w, mw)) in part.entries().iter().enumerate() {
                if claimed[j] || mw != m {
                    continue;
                }
                if (rotated - w).norm() <= guard {
                    found = Some(j);
                    break;
                }
            }
            match found {
                Some(j) => claimed[j] = true,
                None => {
                    return Err(Error::NotSymmetric(format!(
                        "orbit of {z} is incomplete under rotation by 2π/{k} about {center}"
                    )));
                }
            }
            let mut arg = (rotated - center).arg().rem_euclid(2.0 * std::f64::consts::PI);
            if 2.0 * std::f64::consts::PI - arg < 1e-9 {
                arg = 0.0;
            }
            if arg < rep_angle {
                rep_angle = arg;
                representative = rotated;
            }
        }
        orbits.push((representative, m));
    }
    orbits.sort_by(|a, b| crate::poly::cmp_re_im(&a.0, &b.0));
    Ok((center_mult, orbits))
}

/// Split a divisor into center multiplicities and rotation orbits.
///
/// Errors with `not-symmetric` when some part is not invariant under the
/// rotation by `2π/k` about `center`.
pub fn orbit_decomposition(
    div: &Divisor,
    center: Complex64,
    k: u32,
    tol: &Tolerances,
) -> Result<OrbitDecomposition> {
    if k < 2 {
        return Err(Error::InvalidInput("orbit decomposition needs k ≥ 2".into()));
    }
    let guard = tol.cluster_distance(div.scale());
    for part in div.parts() {
        if !part.is_empty() && !rotation_invariant(part, center, k, guard) {
            return Err(Error::NotSymmetric(format!(
                "divisor part is not invariant under rotation by 2π/{k} about {center}"
            )));
        }
    }
    let (zc, zo) = decompose_part(&div.zeros, center, k, guard)?;
    let (pc, po) = decompose_part(&div.poles, center, k, guard)?;
    let (ec, eo) = decompose_part(&div.exp_roots, center, k, guard)?;
    Ok(OrbitDecomposition {
        center,
        order: k,
        center_multiplicity: [zc, pc, ec],
        orbits: [zo, po, eo],
    })
}

/// The quotient field together with the symmetry data it was divided by.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub field: VectorField,
    pub order: u32,
    pub center: Complex64,
}

/// Push `X` forward to the quotient chart `w = (z−C)^k` of its detected
/// cyclic symmetry.
///
/// The result lands in the signature `(s′, r′, d′)` with `d′ = d/k`,
/// `s′ = s/k`, `r′ = (r+1)/k − 1` for a pole center and `r′ = r/k`,
/// `s′ = (s−1)/k + 1` for a zero center.
pub fn quotient_field(x: &VectorField, tol: &Tolerances) -> Result<QuotientResult> {
    let isotropy = isotropy_group(x, tol)?;
    let k = match isotropy.kind {
        IsotropyKind::Cyclic(k) => k,
        IsotropyKind::Trivial => {
            return Err(Error::NotSymmetric(
                "the field has trivial isotropy; no quotient to take".into(),
            ));
        }
        IsotropyKind::Continuous => {
            return Err(Error::NotSymmetric(
                "continuous isotropy; pick a finite rotation subgroup to quotient by".into(),
            ));
        }
    };
    let center = isotropy.center.expect("cyclic isotropy carries a center");
    let div = x.divisor(tol)?;
    let od = orbit_decomposition(&div, center, k, tol)?;

    // Net center exponent of k·(z−C)^{k−1}·(z−C)^{ν_Z}/(z−C)^{ν_P}, always
    // divisible by k.
    let exponent =
        k as i64 - 1 + od.center_multiplicity[0] as i64 - od.center_multiplicity[1] as i64;
    debug_assert_eq!(exponent.rem_euclid(k as i64), 0);
    let net = exponent.div_euclid(k as i64);

    let push = |entries: &[(Complex64, u32)], center_mult: i64| -> Result<RootMultiset> {
        let mut out: Vec<(Complex64, u32)> = Vec::new();
        if center_mult > 0 {
            out.push((ZERO, center_mult as u32));
        }
        for &(rep, m) in entries {
            out.push(((rep - center).powu(k), m));
        }
        RootMultiset::new(out)
    };

    let zeros = push(&od.orbits[0], net.max(0))?;
    let poles = push(&od.orbits[1], (-net).max(0))?;
    let q = Polynomial::expand_from_roots(ONE, &zeros)?;
    let p = Polynomial::expand_from_roots(ONE, &poles)?;

    let (_, _, d) = x.signature();
    let e = if d == 0 {
        Polynomial::zero()
    } else {
        debug_assert_eq!(od.center_multiplicity[2] % k, 0);
        let exp_roots = push(&od.orbits[2], (od.center_multiplicity[2] / k) as i64)?;
        let c0 = x.c0().expect("d ≥ 1 has a leading exponential coefficient");
        Polynomial::expand_from_roots(c0, &exp_roots)?
    };

    let field = VectorField::new(x.lambda() * k as f64, q, p, e)?;
    Ok(QuotientResult {
        field,
        order: k,
        center,
    })
}

/// Local germ normal forms whose quotients the table covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GermSpec {
    /// `1/z^ν ∂/∂z`, ν ≥ 1.
    Pole(u32),
    /// `λz ∂/∂z` (residue `1/λ`).
    Linear(Complex64),
    /// `z^ν ∂/∂z`, ν ≥ 2 (zero residue).
    Zero(u32),
    /// `z^ν/(1 + λz^{ν−1}) ∂/∂z`, ν ≥ 3, residue λ ≠ 0: trivial isotropy.
    ZeroWithResidue(u32, Complex64),
    /// `e^{z^d} ∂/∂z` viewed as a germ at infinity.
    Exp(u32),
}

/// Quotient of a germ by `ℤ_k`, returning the output germ and the
/// normalization scalar `σ` with `Y_literal = σ·Y_table` relating the
/// literal pushforward under `w = z^k` to the tabulated form.
///
/// Pole and zero rows carry `σ = k`, the linear row `σ = k²` (the table
/// normalizes that row in the `w = z^{1/k}` convention), and the
/// exponential row `σ = 1` since it is a statement about the germ at
/// infinity where no affine-chart normalization applies.
pub fn germ_quotient(germ: &GermSpec, k: u32) -> Result<(GermSpec, f64)> {
    if k == 0 {
        return Err(Error::InvalidGerm("quotient order must be ≥ 1".into()));
    }
    if k == 1 {
        return Ok((*germ, 1.0));
    }
    match *germ {
        GermSpec::Pole(nu) => {
            if nu == 0 {
                return Err(Error::InvalidGerm("pole germ needs ν ≥ 1".into()));
            }
            if (nu + 1) % k != 0 {
                return Err(Error::InvalidGerm(format!(
                    "pole germ of order {nu} needs k | (ν+1): {k} ∤ {}",
                    nu + 1
                )));
            }
            Ok((GermSpec::Pole((nu + 1) / k - 1), k as f64))
        }
        GermSpec::Linear(lambda) => {
            Ok((GermSpec::Linear(lambda / k as f64), (k * k) as f64))
        }
        GermSpec::Zero(nu) => {
            if nu < 2 {
                return Err(Error::InvalidGerm("zero germ needs ν ≥ 2".into()));
            }
            if (nu - 1) % k != 0 {
                return Err(Error::InvalidGerm(format!(
                    "zero germ of order {nu} needs k | (ν−1): {k} ∤ {}",
                    nu - 1
                )));
            }
            Ok((GermSpec::Zero((nu - 1) / k + 1), k as f64))
        }
        GermSpec::ZeroWithResidue(_, _) => Err(Error::InvalidGerm(
            "a zero germ with nonzero residue has trivial isotropy; only k = 1 applies".into(),
        )),
        GermSpec::Exp(d) => {
            if d == 0 {
                return Err(Error::InvalidGerm("exponential germ needs d ≥ 1".into()));
            }
            if d % k != 0 {
                return Err(Error::InvalidGerm(format!(
                    "exponential germ of order {d} needs k | d"
                )));
            }
            Ok((GermSpec::Exp(d / k), 1.0))
        }
    }
}
