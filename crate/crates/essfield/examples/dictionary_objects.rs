//! The dictionary around a field X: the 1-form 1/X, its residues,
//! single-valuedness of the distinguished parameter Ψ = ∫ 1/X, path
//! integrals of Ψ, and flat lengths.
//!
//! ```bash
//! cargo run -p essfield --example dictionary_objects
//! ```

use essfield::dictionary::{
    distinguished_parameter, flat_length, is_single_valued, one_form, residues, PathSpec,
};
use essfield::poly::Polynomial;
use essfield::{Tolerances, VectorField};
use num_complex::Complex64;

fn main() {
    let tol = Tolerances::default();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    // X = e^z ∂/∂z: the 1-form is e^{−z} dz and Ψ(z) = 1 − e^{−z}.
    let exp_field = VectorField::new(
        one,
        Polynomial::one(),
        Polynomial::one(),
        Polynomial::from_coeffs(vec![one, zero]).unwrap(),
    )
    .unwrap();
    let w = one_form(&exp_field, zero, &tol).unwrap();
    println!("omega(0) for e^z: {w:.6}  (omega·X = 1 there)");
    let path = PathSpec::segment(zero, one).unwrap();
    let psi = distinguished_parameter(&exp_field, &path, &tol).unwrap();
    println!(
        "Psi over [0,1]: {:.12} (closed form 1 - 1/e = {:.12})",
        psi.re,
        1.0 - (-1.0f64).exp()
    );
    println!(
        "flat length of [0,1]: {:.12}",
        flat_length(&exp_field, &path, &tol).unwrap()
    );

    // X = z⁴(z³−1) ∂/∂z: nonzero residues make Ψ multivalued.
    let q = Polynomial::from_coeffs(vec![
        one,
        zero,
        zero,
        Complex64::new(-1.0, 0.0),
        zero,
        zero,
        zero,
        zero,
    ])
    .unwrap();
    let x = VectorField::rational(one, q, Polynomial::one()).unwrap();
    println!("\nresidues of 1/(z^4(z^3-1)) dz:");
    for entry in residues(&x, &tol).unwrap() {
        println!(
            "  at {:+.4}: residue {:+.6} (order {})",
            entry.location, entry.residue, entry.order
        );
    }
    println!(
        "single valued: {}",
        is_single_valued(&x, &tol).unwrap()
    );

    // The path integral along [2,3] matches the closed form
    // 1/(3z³) + (1/3)·log(1−z³) − log z up to the real branch.
    let path = PathSpec::segment(Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)).unwrap();
    let value = distinguished_parameter(&x, &path, &tol).unwrap();
    let closed = |z: f64| 1.0 / (3.0 * z.powi(3)) + (z.powi(3) - 1.0).ln() / 3.0 - z.ln();
    println!(
        "Psi over [2,3]: {:.12} (closed form {:.12})",
        value.re,
        closed(3.0) - closed(2.0)
    );

    // A multi-vertex path around a pole of omega picks up the residue.
    let loop_path = PathSpec::new(
        vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.4, 1.6),
            Complex64::new(-1.6, 0.0),
            Complex64::new(0.4, -1.6),
            Complex64::new(2.0, 0.0),
        ],
        0.2,
    )
    .unwrap();
    let around = distinguished_parameter(&x, &loop_path, &tol).unwrap();
    println!(
        "loop around the multiple zero: {around:.6} (2πi × enclosed residues)"
    );
}
