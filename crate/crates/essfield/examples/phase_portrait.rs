//! Render streamline phase portraits of the Z₃-symmetric field
//! −e^{z³}/(3z²) ∂/∂z in the affine chart and around infinity.
//!
//! ```bash
//! cargo run -p essfield --example phase_portrait
//! ```
//!
//! Writes `portrait_affine.svg` and `portrait_projective.png` into the
//! current directory. Zeros render as red triangles, poles as blue crosses,
//! exponential roots as open green circles.

use essfield::poly::Polynomial;
use essfield::portrait::{render, OutputFormat, PortraitConfig};
use essfield::{Tolerances, VectorField};
use num_complex::Complex64;

fn main() {
    let tol = Tolerances::default();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    let x = VectorField::new(
        Complex64::new(-1.0 / 3.0, 0.0),
        Polynomial::one(),
        Polynomial::from_coeffs(vec![one, zero, zero]).unwrap(),
        Polynomial::from_coeffs(vec![one, zero, zero, zero]).unwrap(),
    )
    .unwrap();

    let cfg = PortraitConfig::affine(zero, 2.0);
    let doc = render(&x, &cfg, &tol).unwrap();
    doc.write_to(std::path::Path::new("portrait_affine.svg"))
        .unwrap();
    println!("wrote portrait_affine.svg ({} bytes)", doc.bytes().len());

    // The projective chart shows the essential singularity at infinity;
    // streamlines are clipped at |w| < 1e-6 instead of crossing it.
    let mut cfg = PortraitConfig::projective();
    cfg.format = OutputFormat::Png;
    cfg.seed_grid = (10, 10);
    let doc = render(&x, &cfg, &tol).unwrap();
    doc.write_to(std::path::Path::new("portrait_projective.png"))
        .unwrap();
    println!(
        "wrote portrait_projective.png ({} bytes)",
        doc.bytes().len()
    );
}
