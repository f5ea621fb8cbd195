//! Detection of the rotation symmetries `Aut(ℂ)_X` and the family-level
//! triviality predicate.
//!
//! A nontrivial affine symmetry of a field with signature `(s, r, d)` is a
//! rotation `T(w) = e^{2πi/k}·w + b` whose order `k` divides both `d` and
//! `s − r − 1`, and whose center is shared by all three divisor barycenters.
//! Detection therefore runs in two stages: the arithmetic gate (the common
//! divisor set `𝒟`), then the geometric multiset test on the divisor.

use num_complex::Complex64;

use crate::error::Result;
use crate::field::{AffineMap, Divisor, VectorField};
use crate::poly::RootMultiset;
use crate::Tolerances;

/// The set `𝒟` of positive common divisors of `d` and `s − r − 1`.
///
/// With the convention `gcd(0, m) = |m|`, the set is finite unless both
/// quantities vanish (`d = 0` and `s = r + 1`), where every order passes the
/// arithmetic gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommonDivisors {
    Finite(Vec<u64>),
    Unbounded,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn divisors_of(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            if k != n / k {
                out.push(n / k);
            }
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// `𝒟` for the signature `(s, r, d)`.
pub fn common_divisor_set(s: usize, r: usize, d: usize) -> CommonDivisors {
    let weight = s as i64 - r as i64 - 1;
    if d == 0 && weight == 0 {
        return CommonDivisors::Unbounded;
    }
    let g = gcd(d as u64, weight.unsigned_abs());
    CommonDivisors::Finite(divisors_of(g))
}

/// Multiplicity-weighted barycenters of the three divisor parts, in the
/// order (zeros, poles, exponential roots); absent for empty parts.
pub fn barycenters(div: &Divisor) -> [Option<Complex64>; 3] {
    [
        div.zeros.barycenter(),
        div.poles.barycenter(),
        div.exp_roots.barycenter(),
    ]
}

/// Whether the multiset is invariant under rotation by `2π/k` about
/// `center`, with locations matched within `tol`.
pub fn rotation_invariant(m: &RootMultiset, center: Complex64, k: u32, tol: f64) -> bool {
    debug_assert!(k >= 2);
    let rotation = AffineMap::rotation_about(center, 2.0 * std::f64::consts::PI / k as f64);
    m.map(|z| rotation.apply(z)).matches(m, tol)
}

/// Detected isotropy of a single field.
#[derive(Debug, Clone, PartialEq)]
pub enum IsotropyKind {
    Trivial,
    Cyclic(u32),
    Continuous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsotropyResult {
    pub kind: IsotropyKind,
    /// Rotation center `C`, present for cyclic and continuous isotropy.
    pub center: Option<Complex64>,
    /// Witness generator `T(w) = e^{2πi/k}·w + C(1 − e^{2πi/k})`.
    pub generator: Option<AffineMap>,
}

impl IsotropyResult {
    fn trivial() -> Self {
        IsotropyResult {
            kind: IsotropyKind::Trivial,
            center: None,
            generator: None,
        }
    }

    pub fn order(&self) -> Option<u32> {
        match self.kind {
            IsotropyKind::Cyclic(k) => Some(k),
            _ => None,
        }
    }
}

/// Common center of the nonempty divisor parts, when their barycenters
/// agree within the center tolerance. Agreement is necessary for any
/// rotational symmetry, so disagreement short-circuits detection.
fn common_center(div: &Divisor, tol: &Tolerances) -> Option<Complex64> {
    let centers: Vec<Complex64> = barycenters(div).into_iter().flatten().collect();
    if centers.is_empty() {
        return None;
    }
    let guard = tol.center_distance(div.scale());
    for pair in centers.windows(2) {
        if (pair[0] - pair[1]).norm() > guard {
            return None;
        }
    }
    // Weighted mean over all divisor points is the most stable estimate.
    let mut sum = Complex64::new(0.0, 0.0);
    let mut count = 0.0;
    for part in div.parts() {
        for &(z, m) in part.entries() {
            sum += z * (m as f64);
            count += m as f64;
        }
    }
    Some(sum / count)
}

fn invariant_all(div: &Divisor, center: Complex64, k: u32, tol: &Tolerances) -> bool {
    let guard = tol.cluster_distance(div.scale());
    div.parts()
        .iter()
        .all(|part| part.is_empty() || rotation_invariant(part, center, k, guard))
}

/// Compute the isotropy group of `X` in the affine group.
///
/// Candidate orders come from `𝒟 \ {1}` and are tested in descending order,
/// so the result is the maximal invariance order; the isotropy of a finite
/// planar configuration about a fixed center is cyclic, so this is the
/// group order. The `Unbounded` arithmetic case (`d = 0`, `s = r + 1`)
/// reports `Continuous` when the whole divisor sits at one point and
/// otherwise caps the search at the total divisor cardinality.
pub fn isotropy_group(x: &VectorField, tol: &Tolerances) -> Result<IsotropyResult> {
    let (s, r, d) = x.signature();
    let div = x.divisor(tol)?;

    let candidates: Vec<u64> = match common_divisor_set(s, r, d) {
        CommonDivisors::Finite(divs) => divs.into_iter().filter(|&k| k >= 2).rev().collect(),
        CommonDivisors::Unbounded => {
            let center = match common_center(&div, tol) {
                Some(c) => c,
                None => return Ok(IsotropyResult::trivial()),
            };
            let guard = tol.cluster_distance(div.scale());
            let concentrated = div
                .parts()
                .iter()
                .all(|part| part.entries().iter().all(|(z, _)| (z - center).norm() <= guard));
            if concentrated {
                return Ok(IsotropyResult {
                    kind: IsotropyKind::Continuous,
                    center: Some(center),
                    generator: None,
                });
            }
            let cap = div.total_points() as u64;
            (2..=cap).rev().collect()
        }
    };

    if candidates.is_empty() {
        return Ok(IsotropyResult::trivial());
    }
    let center = match common_center(&div, tol) {
        Some(c) => c,
        None => return Ok(IsotropyResult::trivial()),
    };
    for k in candidates {
        let k = k as u32;
        if invariant_all(&div, center, k, tol) {
            let generator =
                AffineMap::rotation_about(center, 2.0 * std::f64::consts::PI / k as f64);
            return Ok(IsotropyResult {
                kind: IsotropyKind::Cyclic(k),
                center: Some(center),
                generator: Some(generator),
            });
        }
    }
    Ok(IsotropyResult::trivial())
}

/// Symmetry orders a family admits, per the divisibility pattern
/// (`k | s` and `k ∤ r`, center a pole) or (`k ∤ s` and `k | r`, center a
/// zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibleOrders {
    Finite(Vec<u64>),
    Unbounded,
}

/// Family-level classification data for `(s, r, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    /// Whether every field in the family has trivial affine isotropy.
    pub all_trivial: bool,
    /// Complex dimension `s + r + d − 1` of the moduli of trivial-isotropy
    /// classes.
    pub moduli_dimension: i64,
    pub admissible_orders: AdmissibleOrders,
}

/// Decide the family triviality predicate and the admissible symmetry
/// orders for `(s, r, d)`.
///
/// For `d ≥ 1` triviality holds exactly when `gcd(d, s−r−1) = 1` or no
/// nontrivial common divisor divides `s` or `r`. The rational families use
/// the primality criteria: `(0, r, 0)` is all-trivial iff `r + 1` is prime,
/// `(s, 0, 0)` iff `s − 1` is prime.
pub fn family_report(s: usize, r: usize, d: usize) -> FamilyReport {
    let moduli_dimension = s as i64 + r as i64 + d as i64 - 1;
    let divisor_set = common_divisor_set(s, r, d);

    let nontrivial: Vec<u64> = match &divisor_set {
        CommonDivisors::Finite(divs) => divs.iter().copied().filter(|&k| k >= 2).collect(),
        CommonDivisors::Unbounded => {
            return FamilyReport {
                all_trivial: false,
                moduli_dimension,
                admissible_orders: AdmissibleOrders::Unbounded,
            };
        }
    };

    let admissible: Vec<u64> = nontrivial
        .iter()
        .copied()
        .filter(|&k| {
            let div_s = (s as u64).is_multiple_of(k);
            let div_r = (r as u64).is_multiple_of(k);
            (div_s && !div_r) || (!div_s && div_r)
        })
        .collect();

    let all_trivial = if d == 0 && s == 0 {
        is_prime(r as i64 + 1)
    } else if d == 0 && r == 0 && s >= 3 {
        is_prime(s as i64 - 1)
    } else {
        nontrivial
            .iter()
            .all(|&k| !(s as u64).is_multiple_of(k) && !(r as u64).is_multiple_of(k))
    };

    FamilyReport {
        all_trivial,
        moduli_dimension,
        admissible_orders: AdmissibleOrders::Finite(admissible),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Polynomial, ONE, ZERO};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn divisor_sets_from_worked_signatures() {
        assert_eq!(
            common_divisor_set(0, 2, 3),
            CommonDivisors::Finite(vec![1, 3])
        );
        assert_eq!(common_divisor_set(0, 3, 3), CommonDivisors::Finite(vec![1]));
        assert_eq!(
            common_divisor_set(35, 4, 30),
            CommonDivisors::Finite(vec![1, 2, 3, 5, 6, 10, 15, 30])
        );
        assert_eq!(common_divisor_set(1, 0, 0), CommonDivisors::Unbounded);
    }

    #[test]
    fn barycenters_of_examples() {
        let div = Divisor {
            zeros: RootMultiset::empty(),
            poles: RootMultiset::new(vec![(ZERO, 2)]).unwrap(),
            exp_roots: RootMultiset::new(vec![(ZERO, 3)]).unwrap(),
        };
        assert_eq!(barycenters(&div), [None, Some(ZERO), Some(ZERO)]);

        let ring = RootMultiset::from_points(&[
            c(1.0, 0.0),
            c(0.0, 1.0),
            c(-1.0, 0.0),
            c(0.0, -1.0),
        ])
        .unwrap();
        assert!(ring.barycenter().unwrap().norm() < 1e-15);

        let pair = RootMultiset::from_points(&[c(2.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert_eq!(pair.barycenter().unwrap(), c(3.0, 0.0));
    }

    #[test]
    fn rotation_invariance_examples() {
        let triple = RootMultiset::new(vec![(ZERO, 3)]).unwrap();
        assert!(rotation_invariant(&triple, ZERO, 3, 1e-9));

        let rho = 3f64.powf(-1.0 / 3.0);
        let ring = RootMultiset::from_points(&[
            Complex64::from_polar(rho, 0.0),
            Complex64::from_polar(rho, 2.0 * std::f64::consts::PI / 3.0),
            Complex64::from_polar(rho, -2.0 * std::f64::consts::PI / 3.0),
        ])
        .unwrap();
        assert!(rotation_invariant(&ring, ZERO, 3, 1e-9));

        let skew = RootMultiset::from_points(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert!(!rotation_invariant(&skew, ZERO, 2, 1e-9));
    }

    fn z3_pole_field() -> VectorField {
        VectorField::new(
            c(-1.0 / 3.0, 0.0),
            Polynomial::one(),
            Polynomial::from_coeffs(vec![ONE, ZERO, ZERO]).unwrap(),
            Polynomial::from_coeffs(vec![ONE, ZERO, ZERO, ZERO]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn detects_z3_about_origin() {
        let result = isotropy_group(&z3_pole_field(), &tol()).unwrap();
        assert_eq!(result.kind, IsotropyKind::Cyclic(3));
        assert!(result.center.unwrap().norm() < 1e-12);
        let generator = result.generator.unwrap();
        let x = z3_pole_field();
        let y = x.pullback(&generator);
        assert!((x.lambda() - y.lambda()).norm() < 1e-12);
    }

    #[test]
    fn arithmetic_gate_blocks_symmetric_divisor() {
        // e^{z³}/(3z³−1): geometric condition holds but 𝒟 = {1}.
        let x = VectorField::new(
            ONE,
            Polynomial::one(),
            Polynomial::from_coeffs(vec![c(3.0, 0.0), ZERO, ZERO, c(-1.0, 0.0)]).unwrap(),
            Polynomial::from_coeffs(vec![ONE, ZERO, ZERO, ZERO]).unwrap(),
        )
        .unwrap();
        let result = isotropy_group(&x, &tol()).unwrap();
        assert_eq!(result.kind, IsotropyKind::Trivial);
    }

    #[test]
    fn detects_z3_for_polynomial_field() {
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
        let x = VectorField::rational(ONE, q, Polynomial::one()).unwrap();
        let result = isotropy_group(&x, &tol()).unwrap();
        assert_eq!(result.kind, IsotropyKind::Cyclic(3));
        assert!(result.center.unwrap().norm() < 1e-9);
    }

    #[test]
    fn linear_field_is_continuous() {
        let q = Polynomial::from_coeffs(vec![ONE, ZERO]).unwrap();
        let x = VectorField::rational(c(2.0, 1.0), q, Polynomial::one()).unwrap();
        let result = isotropy_group(&x, &tol()).unwrap();
        assert_eq!(result.kind, IsotropyKind::Continuous);
        assert!(result.center.unwrap().norm() < 1e-12);
    }

    #[test]
    fn constant_field_is_trivial_by_convention() {
        // λ ∂/∂z: 𝒟 = {1}; translation symmetry is outside the rotation
        // classification and reported as trivial.
        let x = VectorField::rational(ONE, Polynomial::one(), Polynomial::one()).unwrap();
        let result = isotropy_group(&x, &tol()).unwrap();
        assert_eq!(result.kind, IsotropyKind::Trivial);
    }

    #[test]
    fn off_center_symmetry_detected() {
        // ℤ₂ about C = 1: poles at 1 and 1 ± i, d = 2 exponential centered there.
        let center = ONE;
        let poles = RootMultiset::new(vec![
            (center, 1),
            (center + c(0.0, 1.0), 1),
            (center - c(0.0, 1.0), 1),
        ])
        .unwrap();
        let p = Polynomial::expand_from_roots(ONE, &poles).unwrap();
        let e = Polynomial::expand_from_roots(ONE, &RootMultiset::new(vec![(center, 2)]).unwrap())
            .unwrap();
        let x = VectorField::new(ONE, Polynomial::one(), p, e).unwrap();
        let result = isotropy_group(&x, &tol()).unwrap();
        assert_eq!(result.kind, IsotropyKind::Cyclic(2));
        assert!((result.center.unwrap() - center).norm() < 1e-9);
    }

    #[test]
    fn family_report_examples() {
        assert!(family_report(11, 7, 6).all_trivial);
        for d in 1..=12 {
            assert!(family_report(0, 0, d).all_trivial);
        }
        let report = family_report(35, 4, 30);
        assert!(!report.all_trivial);
        assert_eq!(
            report.admissible_orders,
            AdmissibleOrders::Finite(vec![2, 5])
        );
        let rational = family_report(0, 3, 0);
        assert!(!rational.all_trivial);
        assert_eq!(family_report(0, 3, 0).moduli_dimension, 2);
    }

    #[test]
    fn family_prime_criteria() {
        for r in 1..=30usize {
            assert_eq!(
                family_report(0, r, 0).all_trivial,
                is_prime(r as i64 + 1),
                "E(0,{r},0)"
            );
        }
        for s in 3..=30usize {
            assert_eq!(
                family_report(s, 0, 0).all_trivial,
                is_prime(s as i64 - 1),
                "E({s},0,0)"
            );
        }
    }

    #[test]
    fn moduli_dimension_formula() {
        for &(s, r, d) in &[(0, 2, 3), (0, 3, 3), (35, 4, 30), (7, 0, 0), (2, 5, 4)] {
            assert_eq!(
                family_report(s, r, d).moduli_dimension,
                s as i64 + r as i64 + d as i64 - 1
            );
        }
    }

    #[test]
    fn detected_generator_fixes_the_field() {
        // Soundness: pullback by the witness generator reproduces divisor,
        // λ and c₀; and invariance holds for every divisor of k.
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let t = tol();
        for case in 0..25u32 {
            let spec = crate::test_support::random_spec(&mut rng, case % 4 + 2);
            let x = crate::realize::realize_symmetric(&spec).unwrap();
            let result = isotropy_group(&x, &t).unwrap();
            let k = match result.kind {
                IsotropyKind::Cyclic(k) => k,
                _ => continue,
            };
            let generator = result.generator.unwrap();
            let y = x.pullback(&generator);
            assert!((x.lambda() - y.lambda()).norm() <= 1e-9 * x.lambda().norm());
            match (x.c0(), y.c0()) {
                (Some(a), Some(b)) => assert!((a - b).norm() <= 1e-9 * a.norm()),
                (None, None) => {}
                _ => panic!("c0 presence changed under pullback"),
            }
            let dx = x.divisor(&t).unwrap();
            let dy = y.divisor(&t).unwrap();
            let guard = t.cluster_distance(dx.scale());
            for (a, b) in dx.parts().iter().zip(dy.parts().iter()) {
                assert!(a.matches(b, guard), "divisor moved under the generator");
            }

            let center = result.center.unwrap();
            for div in 2..=k {
                if k % div == 0 {
                    for part in dx.parts() {
                        assert!(
                            part.is_empty() || rotation_invariant(part, center, div, guard),
                            "invariance fails for divisor {div} of {k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn random_fields_in_trivial_families_detect_trivial() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let t = tol();
        for _ in 0..40 {
            let x = crate::test_support::random_field(&mut rng, 4);
            let (s, r, d) = x.signature();
            if family_report(s, r, d).all_trivial && d >= 1 {
                let result = isotropy_group(&x, &t).unwrap();
                assert_eq!(result.kind, IsotropyKind::Trivial);
            }
        }
    }
}
