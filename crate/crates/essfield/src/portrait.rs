//! Streamline phase portraits of `Re X`.
//!
//! Trajectories of `Re X` are the solutions of `ż = X(z)`; the integrator
//! follows the unit-speed direction field `X(z)/|X(z)|` instead, so poles
//! and exponential growth regions do not blow up the time parametrization
//! (the phase portrait as a point set is unchanged). The direction is
//! computed through arguments (`arg λ + Σ m·arg(z−q) − Σ m·arg(z−p) +
//! Im E(z)`), which never overflows.
//!
//! The affine chart integrates inside a disk window; the projective chart
//! substitutes `w = 1/z` and integrates `ẇ = −w²·X(1/w)`, clipping at
//! `|w| < 1e−6` around the essential singularity instead of continuing
//! through infinity.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::poly::Polynomial;
use crate::Tolerances;

/// Guard radius around `w = 0` (the point at infinity) in the projective
/// chart.
pub const PROJECTIVE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Chart {
    /// Disk window `|z − center| ≤ half_width`.
    Affine {
        center: Complex64,
        half_width: f64,
    },
    /// The `w = 1/z` chart on the unit disk around infinity.
    Projective,
}

impl Chart {
    fn center(&self) -> Complex64 {
        match self {
            Chart::Affine { center, .. } => *center,
            Chart::Projective => Complex64::new(0.0, 0.0),
        }
    }

    fn half_width(&self) -> f64 {
        match self {
            Chart::Affine { half_width, .. } => *half_width,
            Chart::Projective => 1.0,
        }
    }

    fn contains(&self, z: Complex64) -> bool {
        (z - self.center()).norm() <= self.half_width()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Svg,
    Png,
}

#[derive(Debug, Clone)]
pub struct PortraitConfig {
    pub chart: Chart,
    /// Seed grid dimensions (nx, ny).
    pub seed_grid: (u32, u32),
    /// Arclength budget per integration direction.
    pub max_arclength: f64,
    /// Local error tolerance of the adaptive stepper.
    pub step_tolerance: f64,
    /// Streamlines stop within this distance of a zero or pole.
    pub stop_radius_singular: f64,
    pub image_size: (u32, u32),
    /// Seed of the deterministic jitter applied to grid seeds.
    pub jitter_seed: u64,
    pub format: OutputFormat,
}

impl PortraitConfig {
    pub fn affine(center: Complex64, half_width: f64) -> Self {
        PortraitConfig {
            chart: Chart::Affine { center, half_width },
            seed_grid: (14, 14),
            max_arclength: 6.0 * half_width,
            step_tolerance: 1e-6,
            stop_radius_singular: 1e-3 * half_width,
            image_size: (800, 800),
            jitter_seed: 1,
            format: OutputFormat::Svg,
        }
    }

    pub fn projective() -> Self {
        PortraitConfig {
            chart: Chart::Projective,
            seed_grid: (14, 14),
            max_arclength: 6.0,
            step_tolerance: 1e-6,
            stop_radius_singular: 1e-3,
            image_size: (800, 800),
            jitter_seed: 1,
            format: OutputFormat::Svg,
        }
    }

    fn validate(&self) -> Result<()> {
        let (nx, ny) = self.seed_grid;
        if nx < 1 || ny < 1 {
            return Err(Error::InvalidInput("seed grid must be at least 1×1".into()));
        }
        if self.step_tolerance <= 0.0
            || self.stop_radius_singular <= 0.0
            || self.max_arclength <= 0.0
            || !self.step_tolerance.is_finite()
        {
            return Err(Error::InvalidInput(
                "portrait tolerances and arclength budget must be positive".into(),
            ));
        }
        if self.half_width() <= 0.0 {
            return Err(Error::InvalidInput("window half-width must be positive".into()));
        }
        Ok(())
    }

    fn half_width(&self) -> f64 {
        self.chart.half_width()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    LeftWindow,
    ReachedSingular,
    MaxLength,
    StepFailure,
}

/// One integrated streamline: points run backward-end → seed → forward-end.
#[derive(Debug, Clone)]
pub struct Streamline {
    pub points: Vec<Complex64>,
    /// Termination of the forward half.
    pub termination: Termination,
    /// Termination of the backward half.
    pub termination_backward: Termination,
}

/// Direction data of `Re X` in one chart, with the singular set located
/// once.
pub(crate) struct DirectionField {
    lambda_arg: f64,
    zeros: Vec<(Complex64, f64)>,
    poles: Vec<(Complex64, f64)>,
    exponent: Polynomial,
    projective: bool,
    /// Stopping points in chart coordinates (zeros, poles, and the point at
    /// infinity in the projective chart).
    stops: Vec<Complex64>,
}

impl DirectionField {
    pub fn new(x: &VectorField, projective: bool, tol: &Tolerances) -> Result<Self> {
        let div = x.divisor(tol)?;
        let zeros: Vec<(Complex64, f64)> = div
            .zeros
            .entries()
            .iter()
            .map(|&(z, m)| (z, m as f64))
            .collect();
        let poles: Vec<(Complex64, f64)> = div
            .poles
            .entries()
            .iter()
            .map(|&(z, m)| (z, m as f64))
            .collect();

        let to_chart = |z: Complex64| -> Option<Complex64> {
            if projective {
                if z.norm() < 1e-14 {
                    None
                } else {
                    Some(1.0 / z)
                }
            } else {
                Some(z)
            }
        };
        let mut stops: Vec<Complex64> = zeros
            .iter()
            .chain(&poles)
            .filter_map(|&(z, _)| to_chart(z))
            .collect();
        if projective {
            stops.push(Complex64::new(0.0, 0.0));
        }

        Ok(DirectionField {
            lambda_arg: x.lambda().arg(),
            zeros,
            poles,
            exponent: x.e().clone(),
            projective,
            stops,
        })
    }

    fn argument_at(&self, z: Complex64) -> Option<f64> {
        let mut theta = self.lambda_arg;
        for &(q, m) in &self.zeros {
            let d = z - q;
            if d.norm() == 0.0 {
                return None;
            }
            theta += m * d.arg();
        }
        for &(p, m) in &self.poles {
            let d = z - p;
            if d.norm() == 0.0 {
                return None;
            }
            theta -= m * d.arg();
        }
        theta += self.exponent.evaluate(z).im;
        theta.is_finite().then_some(theta)
    }

    /// Unit direction of the field at a chart point.
    pub fn direction(&self, w: Complex64) -> Option<Complex64> {
        let theta = if self.projective {
            if w.norm() < PROJECTIVE_GUARD {
                return None;
            }
            let z = 1.0 / w;
            let base = self.argument_at(z)?;
            std::f64::consts::PI + 2.0 * w.arg() + base
        } else {
            self.argument_at(w)?
        };
        Some(Complex64::from_polar(1.0, theta))
    }

    fn near_stop(&self, w: Complex64, radius: f64) -> bool {
        self.stops.iter().any(|&s| {
            let guard = if self.projective && s.norm() == 0.0 {
                radius.max(PROJECTIVE_GUARD)
            } else {
                radius
            };
            (w - s).norm() <= guard
        })
    }
}

// Dormand–Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const ERR: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

struct HalfTrajectory {
    points: Vec<Complex64>,
    termination: Termination,
}

/// Integrate one direction (`sign` = ±1) of the unit-speed field from
/// `seed` until a termination condition fires.
fn integrate_half(
    field: &DirectionField,
    seed: Complex64,
    sign: f64,
    cfg: &PortraitConfig,
) -> HalfTrajectory {
    let f = |z: Complex64| field.direction(z).map(|d| d * sign);
    let h_max = 0.2 * cfg.half_width();
    let h_min = 1e-9 * cfg.half_width().max(1.0);
    let mut h = 0.02 * cfg.half_width();
    let mut z = seed;
    let mut arclength = 0.0;
    let mut points = vec![seed];
    // Oscillatory zones (the entire sectors near the essential singularity)
    // demand ever-smaller steps; the budget keeps a single streamline from
    // stalling the whole render.
    let mut budget = 40_000u32;

    loop {
        budget -= 1;
        if budget == 0 {
            return HalfTrajectory {
                points,
                termination: Termination::StepFailure,
            };
        }
        if arclength >= cfg.max_arclength {
            return HalfTrajectory {
                points,
                termination: Termination::MaxLength,
            };
        }
        if h < h_min {
            return HalfTrajectory {
                points,
                termination: Termination::StepFailure,
            };
        }
        h = h.min(h_max).min(cfg.max_arclength - arclength + 1e-12);

        let mut ks: [Complex64; 7] = [Complex64::new(0.0, 0.0); 7];
        let mut failed = false;
        match f(z) {
            Some(k) => ks[0] = k,
            None => {
                return HalfTrajectory {
                    points,
                    termination: Termination::StepFailure,
                };
            }
        }
        for stage in 0..6 {
            let mut arg = z;
            for (j, &k) in ks.iter().enumerate().take(stage + 1) {
                arg += k * (h * A[stage][j]);
            }
            match f(arg) {
                Some(k) => ks[stage + 1] = k,
                None => {
                    failed = true;
                    break;
                }
            }
        }
        if failed {
            h *= 0.5;
            continue;
        }
        // ks[6] is the stage at the 5th-order solution point.
        let next = {
            let mut acc = z;
            for (j, &k) in ks.iter().enumerate().take(6) {
                acc += k * (h * A[5][j]);
            }
            acc
        };
        let error: f64 = {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &k) in ks.iter().enumerate() {
                acc += k * ERR[j];
            }
            (acc * h).norm()
        };

        if error > cfg.step_tolerance {
            let shrink = (cfg.step_tolerance / error).powf(0.2).clamp(0.2, 1.0);
            h *= 0.9 * shrink;
            continue;
        }

        // The chord must stay aligned with the field at the step midpoint.
        if let Some(mid_dir) = f(0.5 * (z + next)) {
            let chord = next - z;
            if chord.norm() > 0.0 {
                let misalignment = (chord / chord.norm() - mid_dir).norm();
                if misalignment > 5e-4 {
                    h *= 0.5;
                    continue;
                }
            }
        }

        z = next;
        arclength += h;
        points.push(z);
        if error > 0.0 {
            let grow = (cfg.step_tolerance / error).powf(0.2).clamp(1.0, 5.0);
            h *= 0.9 * grow;
        } else {
            h *= 2.0;
        }

        if field.near_stop(z, cfg.stop_radius_singular) {
            return HalfTrajectory {
                points,
                termination: Termination::ReachedSingular,
            };
        }
        if !cfg.chart.contains(z) {
            return HalfTrajectory {
                points,
                termination: Termination::LeftWindow,
            };
        }
    }
}

/// Integrate a streamline through `seed` (chart coordinates), forward and
/// backward.
pub fn streamline(
    x: &VectorField,
    seed: Complex64,
    cfg: &PortraitConfig,
    tol: &Tolerances,
) -> Result<Streamline> {
    cfg.validate()?;
    let projective = matches!(cfg.chart, Chart::Projective);
    let field = DirectionField::new(x, projective, tol)?;
    streamline_on(&field, seed, cfg)
}

fn streamline_on(
    field: &DirectionField,
    seed: Complex64,
    cfg: &PortraitConfig,
) -> Result<Streamline> {
    if field.near_stop(seed, cfg.stop_radius_singular) {
        return Err(Error::SeedRejection(format!(
            "seed {seed} lies inside a singular guard zone"
        )));
    }
    let forward = integrate_half(field, seed, 1.0, cfg);
    let backward = integrate_half(field, seed, -1.0, cfg);
    let mut points: Vec<Complex64> = backward.points.into_iter().rev().collect();
    points.extend_from_slice(&forward.points[1..]);
    Ok(Streamline {
        points,
        termination: forward.termination,
        termination_backward: backward.termination,
    })
}

/// A rendered portrait document.
#[derive(Debug, Clone)]
pub enum ImageDocument {
    Svg(String),
    Png(Vec<u8>),
}

impl ImageDocument {
    pub fn bytes(&self) -> &[u8] {
        match self {
            ImageDocument::Svg(s) => s.as_bytes(),
            ImageDocument::Png(b) => b,
        }
    }

    pub fn write_to(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.bytes())?;
        Ok(())
    }
}

/// Deterministic seed positions: grid cell centers plus seeded jitter.
pub fn seed_positions(cfg: &PortraitConfig) -> Vec<Complex64> {
    let (nx, ny) = cfg.seed_grid;
    let center = cfg.chart.center();
    let hw = cfg.half_width();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.jitter_seed);
    let mut out = Vec::with_capacity((nx * ny) as usize);
    for iy in 0..ny {
        for ix in 0..nx {
            let fx = (ix as f64 + 0.5) / nx as f64;
            let fy = (iy as f64 + 0.5) / ny as f64;
            let jitter = Complex64::new(
                (rng.gen::<f64>() - 0.5) * 0.6 / nx as f64,
                (rng.gen::<f64>() - 0.5) * 0.6 / ny as f64,
            );
            let pos = center
                + Complex64::new(
                    (2.0 * fx - 1.0 + jitter.re) * hw,
                    (2.0 * fy - 1.0 + jitter.im) * hw,
                );
            out.push(pos);
        }
    }
    out
}

/// Integrate every grid streamline. Seeds falling in a guard zone are
/// skipped; output order follows the seed grid, so the result is
/// deterministic for fixed inputs.
pub fn compute_streamlines(
    x: &VectorField,
    cfg: &PortraitConfig,
    tol: &Tolerances,
) -> Result<Vec<Streamline>> {
    cfg.validate()?;
    let projective = matches!(cfg.chart, Chart::Projective);
    let field = DirectionField::new(x, projective, tol)?;
    let mut lines = Vec::new();
    for seed in seed_positions(cfg) {
        if !cfg.chart.contains(seed) {
            continue;
        }
        match streamline_on(&field, seed, cfg) {
            Ok(line) => lines.push(line),
            Err(Error::SeedRejection(_)) => continue,
            Err(err) => return Err(err),
        }
    }
    Ok(lines)
}

struct PixelMap {
    center: Complex64,
    half_width: f64,
    width: f64,
    height: f64,
}

impl PixelMap {
    fn new(cfg: &PortraitConfig) -> Self {
        PixelMap {
            center: cfg.chart.center(),
            half_width: cfg.half_width(),
            width: cfg.image_size.0 as f64,
            height: cfg.image_size.1 as f64,
        }
    }

    fn to_px(&self, z: Complex64) -> (f64, f64) {
        let x = (z.re - self.center.re + self.half_width) / (2.0 * self.half_width) * self.width;
        let y = (self.center.im + self.half_width - z.im) / (2.0 * self.half_width) * self.height;
        (x, y)
    }
}

/// Render the phase portrait.
///
/// Marker legend: zeros are filled red triangles, poles are blue crosses,
/// and roots of `E` — which are not singular points of the flow — get a
/// visually distinct open green circle.
pub fn render(x: &VectorField, cfg: &PortraitConfig, tol: &Tolerances) -> Result<ImageDocument> {
    cfg.validate()?;
    let projective = matches!(cfg.chart, Chart::Projective);
    let field = DirectionField::new(x, projective, tol)?;
    let mut lines = Vec::new();
    for seed in seed_positions(cfg) {
        if !cfg.chart.contains(seed) {
            continue;
        }
        match streamline_on(&field, seed, cfg) {
            Ok(line) => lines.push(line),
            Err(Error::SeedRejection(_)) => continue,
            Err(err) => return Err(err),
        }
    }

    let map = PixelMap::new(cfg);
    let marker_data = markers_in_chart(x, projective, tol)?;

    match cfg.format {
        OutputFormat::Svg => Ok(ImageDocument::Svg(render_svg(
            cfg,
            &map,
            &lines,
            &marker_data,
        ))),
        OutputFormat::Png => render_png(cfg, &map, &lines, &marker_data),
    }
}

struct Markers {
    zeros: Vec<Complex64>,
    poles: Vec<Complex64>,
    exp_roots: Vec<Complex64>,
}

fn markers_in_chart(x: &VectorField, projective: bool, tol: &Tolerances) -> Result<Markers> {
    let div = x.divisor(tol)?;
    let to_chart = |z: Complex64| -> Option<Complex64> {
        if projective {
            if z.norm() < 1e-14 {
                None
            } else {
                Some(1.0 / z)
            }
        } else {
            Some(z)
        }
    };
    Ok(Markers {
        zeros: div
            .zeros
            .entries()
            .iter()
            .filter_map(|&(z, _)| to_chart(z))
            .collect(),
        poles: div
            .poles
            .entries()
            .iter()
            .filter_map(|&(z, _)| to_chart(z))
            .collect(),
        exp_roots: div
            .exp_roots
            .entries()
            .iter()
            .filter_map(|&(z, _)| to_chart(z))
            .collect(),
    })
}

fn render_svg(
    cfg: &PortraitConfig,
    map: &PixelMap,
    lines: &[Streamline],
    markers: &Markers,
) -> String {
    let (w, h) = cfg.image_size;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##);
    let _ = writeln!(
        svg,
        r##"<g fill="none" stroke="#555555" stroke-width="1" stroke-linejoin="round">"##
    );
    for line in lines {
        if line.points.len() < 2 {
            continue;
        }
        let mut d = String::new();
        for (i, &z) in line.points.iter().enumerate() {
            let (x, y) = map.to_px(z);
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{x:.2} {y:.2}");
        }
        let _ = writeln!(svg, r#"<path d="{d}"/>"#);
    }
    let _ = writeln!(svg, "</g>");

    let size = 6.0;
    for &z in &markers.zeros {
        let (x, y) = map.to_px(z);
        let _ = writeln!(
            svg,
            r##"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="#cc2222"/>"##,
            x,
            y - size,
            x - 0.866 * size,
            y + 0.5 * size,
            x + 0.866 * size,
            y + 0.5 * size
        );
    }
    for &z in &markers.poles {
        let (x, y) = map.to_px(z);
        let _ = writeln!(
            svg,
            r##"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}" stroke="#2244cc" stroke-width="2"/>"##,
            x - size,
            y - size,
            x + size,
            y + size,
            x - size,
            y + size,
            x + size,
            y - size
        );
    }
    for &z in &markers.exp_roots {
        let (x, y) = map.to_px(z);
        let _ = writeln!(
            svg,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="none" stroke="#22aa66" stroke-width="1.5"/>"##,
            0.8 * size
        );
    }
    let _ = writeln!(svg, "</svg>");
    svg
}

fn render_png(
    cfg: &PortraitConfig,
    map: &PixelMap,
    lines: &[Streamline],
    markers: &Markers,
) -> Result<ImageDocument> {
    let (w, h) = cfg.image_size;
    let mut img = image::RgbaImage::from_pixel(w, h, image::Rgba([255, 255, 255, 255]));
    let stroke = image::Rgba([85, 85, 85, 255]);
    for line in lines {
        for pair in line.points.windows(2) {
            let a = map.to_px(pair[0]);
            let b = map.to_px(pair[1]);
            draw_line(&mut img, a, b, stroke);
        }
    }
    let red = image::Rgba([204, 34, 34, 255]);
    let blue = image::Rgba([34, 68, 204, 255]);
    let green = image::Rgba([34, 170, 102, 255]);
    let size = 6.0;
    for &z in &markers.zeros {
        let (x, y) = map.to_px(z);
        let tri = [
            (x, y - size),
            (x - 0.866 * size, y + 0.5 * size),
            (x + 0.866 * size, y + 0.5 * size),
        ];
        for i in 0..3 {
            draw_line(&mut img, tri[i], tri[(i + 1) % 3], red);
        }
    }
    for &z in &markers.poles {
        let (x, y) = map.to_px(z);
        draw_line(&mut img, (x - size, y - size), (x + size, y + size), blue);
        draw_line(&mut img, (x - size, y + size), (x + size, y - size), blue);
    }
    for &z in &markers.exp_roots {
        let (x, y) = map.to_px(z);
        let r = 0.8 * size;
        let mut prev = (x + r, y);
        for i in 1..=24 {
            let a = 2.0 * std::f64::consts::PI * i as f64 / 24.0;
            let next = (x + r * a.cos(), y + r * a.sin());
            draw_line(&mut img, prev, next, green);
            prev = next;
        }
    }
    let mut bytes: Vec<u8> = Vec::new();
    image::DynamicImage::ImageRgba8(img)
        .write_to(
            &mut std::io::Cursor::new(&mut bytes),
            image::ImageFormat::Png,
        )
        .map_err(|e| Error::Quadrature(format!("png encoding failed: {e}")))?;
    Ok(ImageDocument::Png(bytes))
}

fn draw_line(
    img: &mut image::RgbaImage,
    a: (f64, f64),
    b: (f64, f64),
    color: image::Rgba<u8>,
) {
    let (w, h) = img.dimensions();
    let steps = ((b.0 - a.0).abs().max((b.1 - a.1).abs()).ceil() as usize).max(1);
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        let x = a.0 + (b.0 - a.0) * t;
        let y = a.1 + (b.1 - a.1) * t;
        if x >= 0.0 && y >= 0.0 && (x as u32) < w && (y as u32) < h {
            img.put_pixel(x as u32, y as u32, color);
        }
    }
}

fn point_polyline_distance(p: Complex64, line: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    if line.len() == 1 {
        return (p - line[0]).norm();
    }
    for pair in line.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let ab = b - a;
        let len2 = ab.norm_sqr();
        let t = if len2 == 0.0 {
            0.0
        } else {
            (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0)
        };
        best = best.min((p - (a + ab * t)).norm());
    }
    best
}

/// Symmetric Hausdorff distance between two polylines (vertex-to-segment).
pub fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let d_ab = a
        .iter()
        .map(|&p| point_polyline_distance(p, b))
        .fold(0.0, f64::max);
    let d_ba = b
        .iter()
        .map(|&p| point_polyline_distance(p, a))
        .fold(0.0, f64::max);
    d_ab.max(d_ba)
}
