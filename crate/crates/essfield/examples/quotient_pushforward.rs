//! Quotient symmetric fields by their rotation group: the pushforward under
//! w = (z−C)^k, plus germ-level quotients from the local table.
//!
//! ```bash
//! cargo run -p essfield --example quotient_pushforward
//! ```

use essfield::poly::Polynomial;
use essfield::quotient::{germ_quotient, quotient_field, GermSpec};
use essfield::{Tolerances, VectorField};
use num_complex::Complex64;

fn show_quotient(name: &str, x: &VectorField, tol: &Tolerances) {
    let result = quotient_field(x, tol).unwrap();
    let (s, r, d) = result.field.signature();
    println!(
        "{name}: k = {}, C = {:.3}, quotient in E({s},{r},{d}) with lambda = {:.4}",
        result.order,
        result.center,
        result.field.lambda()
    );
}

fn main() {
    let tol = Tolerances::default();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    // −e^{z³}/(3z²) ∂/∂z has Z₃ isotropy; under w = z³ it pushes forward to
    // −e^w ∂/∂w.
    let x = VectorField::new(
        Complex64::new(-1.0 / 3.0, 0.0),
        Polynomial::one(),
        Polynomial::from_coeffs(vec![one, zero, zero]).unwrap(),
        Polynomial::from_coeffs(vec![one, zero, zero, zero]).unwrap(),
    )
    .unwrap();
    show_quotient("-e^{z^3}/(3z^2)", &x, &tol);

    // e^{z²}/(z(z²+1)) ∂/∂z maps to 2e^w/(w+1) ∂/∂w.
    let p = Polynomial::from_coeffs(vec![one, zero, one, zero]).unwrap();
    let x = VectorField::new(
        one,
        Polynomial::one(),
        p,
        Polynomial::from_coeffs(vec![one, zero, zero]).unwrap(),
    )
    .unwrap();
    show_quotient("e^{z^2}/(z(z^2+1))", &x, &tol);

    // The rational example z⁴(z³−1) ∂/∂z maps to 3w²(w−1) ∂/∂w.
    let q = Polynomial::from_coeffs(vec![one, zero, zero, Complex64::new(-1.0, 0.0), zero, zero, zero, zero])
        .unwrap();
    let x = VectorField::rational(one, q, Polynomial::one()).unwrap();
    show_quotient("z^4(z^3-1)", &x, &tol);

    // The pushforward identity Y((z−C)^k) = k(z−C)^{k−1}·X(z) holds
    // pointwise; check one sample by hand.
    let result = quotient_field(&x, &tol).unwrap();
    let z = Complex64::new(0.7, 0.4);
    let w = z.powu(3);
    let lhs = result.field.evaluate(w, &tol).unwrap();
    let rhs = 3.0 * z.powu(2) * x.evaluate(z, &tol).unwrap();
    println!(
        "pushforward identity residual at z = {z:.2}: {:.2e}",
        (lhs - rhs).norm() / rhs.norm()
    );

    // Germ-level table: local normal forms and their quotient orders, with
    // the normalization scalar relating the literal pushforward to the
    // tabulated form.
    for (germ, k) in [
        (GermSpec::Pole(5), 3u32),
        (GermSpec::Zero(7), 3),
        (GermSpec::Linear(Complex64::new(2.0, 0.0)), 4),
        (GermSpec::Exp(6), 3),
    ] {
        match germ_quotient(&germ, k) {
            Ok((out, sigma)) => println!("germ {germ:?} / Z_{k} -> {out:?} (scalar {sigma})"),
            Err(err) => println!("germ {germ:?} / Z_{k}: {err}"),
        }
    }
}
