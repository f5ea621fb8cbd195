//! Canonical representatives: transport a field by a random affine map and
//! check that both copies land on the same normal form; then split off the
//! circle action for the flat-metric classification.
//!
//! ```bash
//! cargo run -p essfield --example normal_forms
//! ```

use essfield::normal_form::{canonical_form, canonical_metric_form, GaugeKind};
use essfield::poly::Polynomial;
use essfield::{AffineMap, Tolerances, VectorField};
use num_complex::Complex64;

fn show(label: &str, x: &VectorField) {
    println!(
        "{label}: lambda = {:.6}, Q = {:?}",
        x.lambda(),
        x.q().coeffs().iter().map(|c| (c.re, c.im)).collect::<Vec<_>>()
    );
}

fn main() {
    let tol = Tolerances::default();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    // X = 2·e^{(z−1)²} ∂/∂z. The exp-centered gauge moves the barycenter of
    // the exponential roots to the origin: the normal form is 2·e^{w²}.
    let e = Polynomial::from_coeffs(vec![one, Complex64::new(-2.0, 0.0), one]).unwrap();
    let x = VectorField::new(Complex64::new(2.0, 0.0), Polynomial::one(), Polynomial::one(), e)
        .unwrap();
    let form = canonical_form(&x, GaugeKind::ExpCentered, &tol).unwrap();
    println!("gauge G(w) = {:.3}·w + {:.3}", form.gauge.a, form.gauge.b);
    println!(
        "normal form: lambda = {:.4}, E coefficients = {:?}",
        form.field.lambda(),
        form.field
            .e()
            .coeffs()
            .iter()
            .map(|c| (c.re, c.im))
            .collect::<Vec<_>>()
    );

    // Canonical forms are gauge invariant: a transported copy of the same
    // field produces the identical tuple.
    let map = AffineMap::new(Complex64::new(0.8, 0.4), Complex64::new(-1.2, 0.5)).unwrap();
    let moved = x.pullback(&map);
    let form_moved = canonical_form(&moved, GaugeKind::ExpCentered, &tol).unwrap();
    let same = form
        .tuple()
        .iter()
        .zip(form_moved.tuple())
        .all(|(a, b)| (a - b).norm() < 1e-8);
    println!("transported copy lands on the same normal form: {same}");

    // Metric classification: the circle action rotates lambda onto the
    // positive real axis and reports the removed angle.
    let rotated = x
        .scaled(Complex64::from_polar(1.0, 1.1))
        .expect("rotation keeps the field valid");
    let (metric, theta) = canonical_metric_form(&rotated, GaugeKind::ExpCentered, &tol).unwrap();
    show("metric form", &metric.field);
    println!("extracted rotation angle theta = {theta:.6} (should be 1.1)");

    // Rational fields use the zero-centered section; z⁴(z³−1) is already
    // centered because its zero barycenter vanishes.
    let mut coeffs = vec![one, zero, zero, Complex64::new(-1.0, 0.0)];
    coeffs.extend([zero, zero, zero, zero]);
    let q = Polynomial::from_coeffs(coeffs).unwrap();
    let poly_field = VectorField::rational(one, q, Polynomial::one()).unwrap();
    let form = canonical_form(&poly_field, GaugeKind::ZeroCentered, &tol).unwrap();
    show("zero-centered z^4(z^3-1)", &form.field);
}
