//! Shared generators for randomized unit tests (deterministic seeds).

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::field::{AffineMap, VectorField};
use crate::poly::{Polynomial, RootMultiset, ONE};
use crate::Tolerances;

pub(crate) fn random_complex(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(
        rng.gen::<f64>() * radius,
        rng.gen::<f64>() * std::f64::consts::TAU,
    )
}

/// Random valid field with simple roots in the disk of radius 2 and degrees
/// bounded by `max_deg`.
pub(crate) fn random_field(rng: &mut ChaCha8Rng, max_deg: usize) -> VectorField {
    loop {
        let s = rng.gen_range(0..=max_deg);
        let r = rng.gen_range(0..=max_deg);
        let d = rng.gen_range(0..=max_deg);
        if let Some(x) = random_field_with_signature(rng, s, r, d) {
            return x;
        }
    }
}

/// Random valid field with the exact signature, or `None` when the sampled
/// roots collide.
pub(crate) fn random_field_with_signature(
    rng: &mut ChaCha8Rng,
    s: usize,
    r: usize,
    d: usize,
) -> Option<VectorField> {
    let lambda = random_complex(rng, 1.5) + Complex64::new(0.5, 0.2);
    let mk = |rng: &mut ChaCha8Rng, deg: usize, lead: Complex64| {
        let entries: Vec<(Complex64, u32)> =
            (0..deg).map(|_| (random_complex(rng, 2.0), 1)).collect();
        let roots = RootMultiset::new(entries).unwrap();
        Polynomial::expand_from_roots(lead, &roots).unwrap()
    };
    let q = mk(rng, s, ONE);
    let p = mk(rng, r, ONE);
    let c0 = random_complex(rng, 1.0) + Complex64::new(0.4, 0.1);
    let e = if d == 0 {
        Polynomial::zero()
    } else {
        mk(rng, d, c0)
    };
    let x = VectorField::new(lambda, q, p, e).ok()?;
    if x.validate(&Tolerances::default()).is_empty() {
        Some(x)
    } else {
        None
    }
}

/// Random valid symmetry spec of order `k` with small orbit counts.
pub(crate) fn random_spec(rng: &mut ChaCha8Rng, k: u32) -> crate::realize::SymmetrySpec {
    use crate::realize::{CenterKind, OrbitSpec, SymmetrySpec};
    let center = random_complex(rng, 1.5);
    let center_kind = if rng.gen_bool(0.5) {
        CenterKind::Pole(k * rng.gen_range(1..=2) - 1)
    } else {
        CenterKind::Zero(k * rng.gen_range(0..=1) + 1)
    };
    let mut orbits = |max_orbits: u32| -> Vec<OrbitSpec> {
        (0..rng.gen_range(0..=max_orbits))
            .map(|_| {
                OrbitSpec::new(
                    0.3 + rng.gen::<f64>() * 1.5,
                    rng.gen::<f64>() * std::f64::consts::TAU,
                    rng.gen_range(1..=2),
                )
            })
            .collect()
    };
    let zero_orbits = orbits(1);
    let pole_orbits = orbits(1);
    let exp_orbits = orbits(1);
    let exp_center_multiplicity = k * rng.gen_range(0..=1);
    SymmetrySpec {
        order: k,
        center,
        center_kind,
        zero_orbits,
        pole_orbits,
        exp_orbits,
        exp_center_multiplicity,
        lambda: random_complex(rng, 1.0) + Complex64::new(0.5, 0.3),
        c0: random_complex(rng, 1.0) + Complex64::new(0.4, 0.2),
    }
}

/// Random affine map with `|a| ∈ [0.5, 2]` and `|b| ≤ 3`.
pub(crate) fn random_map(rng: &mut ChaCha8Rng) -> AffineMap {
    let a = Complex64::from_polar(
        0.5 + 1.5 * rng.gen::<f64>(),
        rng.gen::<f64>() * std::f64::consts::TAU,
    );
    AffineMap::new(a, random_complex(rng, 3.0)).unwrap()
}

pub(crate) fn sample_points(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n).map(|_| random_complex(rng, radius)).collect()
}
