//! Decide analytic and metric equivalence of fields and recover witness
//! maps.
//!
//! ```bash
//! cargo run -p essfield --example equivalence
//! ```

use essfield::normal_form::{are_equivalent, EquivalenceMode};
use essfield::poly::Polynomial;
use essfield::{AffineMap, Tolerances, VectorField};
use num_complex::Complex64;

fn main() {
    let tol = Tolerances::default();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    // e^z ∂/∂z and (1/2)e^{2w} ∂/∂w differ by the substitution z = 2w.
    let x1 = VectorField::new(
        one,
        Polynomial::one(),
        Polynomial::one(),
        Polynomial::from_coeffs(vec![one, zero]).unwrap(),
    )
    .unwrap();
    let x2 = VectorField::new(
        Complex64::new(0.5, 0.0),
        Polynomial::one(),
        Polynomial::one(),
        Polynomial::from_coeffs(vec![Complex64::new(2.0, 0.0), zero]).unwrap(),
    )
    .unwrap();
    match are_equivalent(&x1, &x2, EquivalenceMode::Analytic, &tol).unwrap() {
        Some(witness) => println!(
            "e^z and (1/2)e^{{2w}}: equivalent via T(w) = {:.3}·w + {:.3}",
            witness.map.a, witness.map.b
        ),
        None => println!("e^z and (1/2)e^{{2w}}: inequivalent"),
    }

    // A field against a hidden transport of itself.
    let e = Polynomial::from_coeffs(vec![one, Complex64::new(0.3, -0.2), zero]).unwrap();
    let q = Polynomial::from_coeffs(vec![one, Complex64::new(-0.7, 0.1)]).unwrap();
    let x = VectorField::new(Complex64::new(1.2, 0.4), q, Polynomial::one(), e).unwrap();
    let hidden = AffineMap::new(Complex64::new(0.6, 0.9), Complex64::new(2.0, -1.0)).unwrap();
    let moved = x.pullback(&hidden);
    let witness = are_equivalent(&x, &moved, EquivalenceMode::Analytic, &tol)
        .unwrap()
        .expect("a pullback is always equivalent");
    println!(
        "hidden map a = {:.4}, recovered witness a = {:.4}",
        hidden.a, witness.map.a
    );

    // Metric mode: rotating a field is invisible to the flat metric and the
    // rotation angle is reported back.
    let rotated = x
        .scaled(Complex64::from_polar(1.0, 0.75))
        .expect("rotation keeps the field valid");
    println!(
        "analytic mode sees the rotated copy as equivalent: {}",
        are_equivalent(&x, &rotated, EquivalenceMode::Analytic, &tol)
            .unwrap()
            .is_some()
    );
    let witness = are_equivalent(&x, &rotated, EquivalenceMode::Metric, &tol)
        .unwrap()
        .expect("rotations are metric-equivalences");
    println!(
        "metric mode succeeds with theta = {:.4} (expected 0.75)",
        witness.theta.unwrap()
    );

    // Different signatures can never be equivalent.
    let other = VectorField::rational(one, Polynomial::one(), q_poly()).unwrap();
    let verdict = are_equivalent(&x, &other, EquivalenceMode::Analytic, &tol).unwrap();
    println!("different signatures: {:?}", verdict.map(|w| w.map.a));
}

fn q_poly() -> Polynomial {
    let one = Complex64::new(1.0, 0.0);
    Polynomial::from_coeffs(vec![one, Complex64::new(0.5, 0.0)]).unwrap()
}
