//! Detect the rotation symmetries of two fields from the same family and
//! print their family-level classification data.
//!
//! ```bash
//! cargo run -p essfield --example analyze_symmetry
//! ```

use essfield::poly::Polynomial;
use essfield::symmetry::{self, IsotropyKind};
use essfield::{Tolerances, VectorField};
use num_complex::Complex64;

fn report(name: &str, x: &VectorField, tol: &Tolerances) {
    let (s, r, d) = x.signature();
    let isotropy = symmetry::isotropy_group(x, tol).expect("divisor computes");
    print!("{name}  E({s},{r},{d})  isotropy: ");
    match isotropy.kind {
        IsotropyKind::Trivial => println!("trivial"),
        IsotropyKind::Cyclic(k) => println!(
            "Z_{k} about C = {:.4}",
            isotropy.center.expect("cyclic result has a center")
        ),
        IsotropyKind::Continuous => println!("continuous (every rotation about the center)"),
    }
    let family = symmetry::family_report(s, r, d);
    println!(
        "          family: all_trivial = {}, moduli dimension = {}, admissible orders = {:?}",
        family.all_trivial, family.moduli_dimension, family.admissible_orders
    );
}

fn main() {
    let tol = Tolerances::default();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    // X = −e^{z³}/(3z²) ∂/∂z: divisor concentrated at the origin, and 3
    // divides both d = 3 and s−r−1 = −3, so the isotropy is Z₃.
    let x = VectorField::new(
        Complex64::new(-1.0 / 3.0, 0.0),
        Polynomial::one(),
        Polynomial::from_coeffs(vec![one, zero, zero]).unwrap(),
        Polynomial::from_coeffs(vec![one, zero, zero, zero]).unwrap(),
    )
    .unwrap();
    report("-e^{z^3}/(3z^2) dz", &x, &tol);

    // X = e^{z³}/(3z³−1) ∂/∂z: the pole configuration is Z₃-symmetric, but
    // gcd(d, s−r−1) = gcd(3, −4) = 1 blocks any symmetry.
    let y = VectorField::new(
        one,
        Polynomial::one(),
        Polynomial::from_coeffs(vec![
            Complex64::new(3.0, 0.0),
            zero,
            zero,
            Complex64::new(-1.0, 0.0),
        ])
        .unwrap(),
        Polynomial::from_coeffs(vec![one, zero, zero, zero]).unwrap(),
    )
    .unwrap();
    report("e^{z^3}/(3z^3-1) dz", &y, &tol);

    // A rational field with a symmetric pole arrangement: 1/(z(z²−1)).
    let p = Polynomial::from_coeffs(vec![one, zero, Complex64::new(-1.0, 0.0), zero]).unwrap();
    let z = VectorField::rational(one, Polynomial::one(), p).unwrap();
    report("1/(z(z^2-1)) dz    ", &z, &tol);
}
