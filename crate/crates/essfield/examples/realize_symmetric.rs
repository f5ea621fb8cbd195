//! Construct fields with a prescribed rotation symmetry from orbit data and
//! confirm the detector finds the symmetry back.
//!
//! ```bash
//! cargo run -p essfield --example realize_symmetric
//! ```

use essfield::realize::{realize_simple, realize_symmetric, CenterKind, OrbitSpec, SymmetrySpec};
use essfield::symmetry::isotropy_group;
use essfield::Tolerances;
use num_complex::Complex64;

fn main() {
    let tol = Tolerances::default();
    let zero = Complex64::new(0.0, 0.0);

    // Z₃ about the origin: a double pole at the center and a triple
    // exponential root there gives −e^{z³}/(3z²) ∂/∂z.
    let spec = SymmetrySpec {
        order: 3,
        center: zero,
        center_kind: CenterKind::Pole(2),
        zero_orbits: vec![],
        pole_orbits: vec![],
        exp_orbits: vec![],
        exp_center_multiplicity: 3,
        lambda: Complex64::new(-1.0 / 3.0, 0.0),
        c0: Complex64::new(1.0, 0.0),
    };
    let x = realize_symmetric(&spec).unwrap();
    println!(
        "realized signature {:?}, detector: {:?}",
        x.signature(),
        isotropy_group(&x, &tol).unwrap().kind
    );

    // Z₂ with an off-axis pole orbit and an exponential center: the mixed
    // example e^{z²}/(z(z²+1)) ∂/∂z.
    let spec = SymmetrySpec {
        order: 2,
        center: zero,
        center_kind: CenterKind::Pole(1),
        zero_orbits: vec![],
        pole_orbits: vec![OrbitSpec::new(1.0, std::f64::consts::FRAC_PI_2, 1)],
        exp_orbits: vec![],
        exp_center_multiplicity: 2,
        lambda: Complex64::new(1.0, 0.0),
        c0: Complex64::new(1.0, 0.0),
    };
    let x = realize_symmetric(&spec).unwrap();
    println!(
        "mixed example: signature {:?}, P coefficients {:?}",
        x.signature(),
        x.p().coeffs().iter().map(|c| c.re).collect::<Vec<_>>()
    );

    // Simple rational family: 1/(z(z²−1)(z²+4)) ∂/∂z, all poles simple.
    let spec = SymmetrySpec {
        order: 2,
        center: zero,
        center_kind: CenterKind::Pole(1),
        zero_orbits: vec![],
        pole_orbits: vec![
            OrbitSpec::new(1.0, 0.0, 1),
            OrbitSpec::new(2.0, std::f64::consts::FRAC_PI_2, 1),
        ],
        exp_orbits: vec![],
        exp_center_multiplicity: 0,
        lambda: Complex64::new(1.0, 0.0),
        c0: Complex64::new(1.0, 0.0),
    };
    let x = realize_simple(&spec).unwrap();
    println!(
        "simple family: signature {:?}, detector {:?}",
        x.signature(),
        isotropy_group(&x, &tol).unwrap().kind
    );

    // The divisibility gates reject impossible requests: a zero of
    // multiplicity 2 cannot center a Z₃ symmetry (3 ∤ ν−1).
    let bad = SymmetrySpec {
        order: 3,
        center: zero,
        center_kind: CenterKind::Zero(2),
        zero_orbits: vec![],
        pole_orbits: vec![],
        exp_orbits: vec![],
        exp_center_multiplicity: 3,
        lambda: Complex64::new(1.0, 0.0),
        c0: Complex64::new(1.0, 0.0),
    };
    match realize_symmetric(&bad) {
        Err(err) => println!("rejected as expected: {err}"),
        Ok(_) => println!("unexpected acceptance"),
    }
}
