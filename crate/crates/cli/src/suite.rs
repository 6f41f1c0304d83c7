//! Property suites run by `metproj verify`.
//!
//! Each property draws its own seeded configurations, compares a closed form
//! from `metproj_core` against an independent oracle, and records the worst
//! observed value next to the bound it must respect. `criterion` ties a
//! property to the numbered acceptance criterion it implements; supplemental
//! properties carry `None`.

use metproj_core::ball::Ball;
use metproj_core::soc::{self, SocLabel, SocPoint};
use metproj_core::verify::{self, FdConfig, FdScheme, Sampler};
use metproj_core::{Error, Frechet, LinOp, Matrix, Vector};
use serde::Serialize;

pub const BALL_DIMS: [usize; 3] = [2, 3, 8];
pub const SOC_DIMS: [usize; 3] = [3, 5, 10];
/// Dimensions for the structural-identity sweeps.
const IDENTITY_DIMS: [usize; 6] = [1, 2, 3, 5, 8, 16];

const BOUNDARY_STEP: f64 = 1e-7;
const BOUNDARY_LEVELS: usize = 2;
const SCAN_RADII: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
const DECAY_RADII: [f64; 2] = [1e-2, 1e-3];
const SCAN_SAMPLES: usize = 100;
const DECAY_SAMPLES: usize = 200;
const LIPSCHITZ_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Central-difference step for Jacobian comparisons.
    pub fd_step: f64,
    /// Region-classification band.
    pub tolerance: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, fd_step: 1e-6, tolerance: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub criterion: Option<u8>,
    pub pass: bool,
    pub samples: usize,
    pub worst: f64,
    pub bound: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub geometry: &'static str,
    pub pass: bool,
    pub properties: Vec<PropertyResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub fd_step: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn new(cfg: &SuiteConfig, suites: Vec<SuiteReport>) -> Self {
        Report {
            seed: cfg.seed,
            fd_step: cfg.fd_step,
            tolerance: cfg.tolerance,
            pass: suites.iter().all(|s| s.pass),
            suites,
        }
    }

    pub fn properties(&self) -> impl Iterator<Item = &PropertyResult> {
        self.suites.iter().flat_map(|s| s.properties.iter())
    }
}

fn at_most(
    name: &'static str,
    criterion: Option<u8>,
    samples: usize,
    worst: f64,
    limit: f64,
) -> PropertyResult {
    PropertyResult { name, criterion, pass: worst <= limit, samples, worst, bound: format!("<= {limit:e}") }
}

fn at_least(
    name: &'static str,
    criterion: Option<u8>,
    samples: usize,
    worst: f64,
    limit: f64,
) -> PropertyResult {
    PropertyResult { name, criterion, pass: worst >= limit, samples, worst, bound: format!(">= {limit:e}") }
}

/// Independent stream per property so adding one does not reshuffle others.
fn sampler(seed: u64, tag: u64) -> Sampler {
    Sampler::new(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(tag))
}

fn sub_seed(seed: u64, tag: u64) -> u64 {
    seed.rotate_left(17) ^ tag.wrapping_mul(0xD6E8_FEB8_6659_FD93)
}

fn expect_operator<R>(d: Frechet<R>) -> Result<LinOp, Error> {
    match d {
        Frechet::Operator(op) => Ok(op),
        Frechet::NotDifferentiable(_) => Err(Error::RegionViolation),
    }
}

fn concat(head: f64, tail: &Vector) -> Vector {
    let mut v = Vec::with_capacity(tail.len() + 1);
    v.push(head);
    v.extend_from_slice(tail.as_slice());
    Vector::new(v).expect("finite entries")
}

/// `I - b b^T / r^2`: the one-sided linearization on the ball boundary.
fn tangent_projector(offset: &Vector, radius: f64) -> LinOp {
    let m = offset.len();
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| f64::from(u8::from(i == j)) - offset[i] * offset[j] / (radius * radius))
                .collect()
        })
        .collect();
    LinOp::dense(Matrix::from_rows(&rows).expect("square and finite"))
}

/// `I - 2 c c^T` when `keep_identity`, otherwise `2 c c^T`.
fn rank_one_update(c: &Vector, keep_identity: bool) -> LinOp {
    let m = c.len();
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let outer = 2.0 * c[i] * c[j];
                    if keep_identity {
                        f64::from(u8::from(i == j)) - outer
                    } else {
                        outer
                    }
                })
                .collect()
        })
        .collect();
    LinOp::dense(Matrix::from_rows(&rows).expect("square and finite"))
}

// ---------------------------------------------------------------------------
// Ball

fn random_ball(s: &mut Sampler, m: usize) -> Ball {
    let center = s.gaussian_vector(m).scale(2.0);
    Ball::new(center, s.uniform(0.5, 3.0)).expect("positive radius")
}

fn at_distance(s: &mut Sampler, ball: &Ball, rho: f64) -> Vector {
    ball.center().axpy(rho, &s.unit_vector(ball.dim())).expect("same dimension")
}

/// Point at least `0.1 r` away from the sphere, inside or outside.
fn smooth_ball_point(s: &mut Sampler, ball: &Ball, exterior: bool) -> Vector {
    let r = ball.radius();
    let rho = if exterior { s.uniform(1.1 * r, 3.0 * r) } else { s.uniform(0.0, 0.9 * r) };
    at_distance(s, ball, rho)
}

fn ball_derivative_vs_fd(cfg: &SuiteConfig) -> Result<PropertyResult, Error> {
    let mut s = sampler(cfg.seed, 1);
    let fd = FdConfig::central(cfg.fd_step)?;
    let n = 200;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let ball = random_ball(&mut s, BALL_DIMS[i % 3]);
        let x = smooth_ball_point(&mut s, &ball, i % 2 == 0);
        let op = expect_operator(ball.frechet_derivative(&x, cfg.tolerance)?)?;
        let jac = verify::fd_jacobian(|y: &Vector| ball.project(y), &x, &fd)?;
        worst = worst.max(op.as_matrix().max_relative_error(&jac)?);
    }
    Ok(at_most("ball_derivative_vs_fd", Some(1), n, worst, 1e-6))
}

fn ball_boundary_directional(cfg: &SuiteConfig) -> Result<PropertyResult, Error> {
    let mut s = sampler(cfg.seed, 2);
    let fd = FdConfig::new(FdScheme::Forward, BOUNDARY_STEP, BOUNDARY_LEVELS)?;
    let n = 100;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let ball = random_ball(&mut s, BALL_DIMS[i % 3]);
        let x = at_distance(&mut s, &ball, ball.radius());
        let offset = x.sub(ball.center())?;
        let w = match i % 5 {
            0 => offset.scale(s.uniform(0.2, 2.0)),
            1 => offset.scale(-s.uniform(0.2, 2.0)),
            _ => s.gaussian_vector(ball.dim()).scale(s.uniform(0.5, 3.0)),
        };
        let closed = ball.directional_derivative(&x, &w, cfg.tolerance)?;
        let (approx, _) = verify::fd_directional(|y: &Vector| ball.project(y), &x, &w, &fd)?;
        worst = worst.max(approx.sub(&closed)?.max_abs() / (1.0 + w.norm()));
    }
    Ok(at_most("ball_boundary_directional_vs_fd", Some(3), n, worst, 1e-5))
}

fn ball_nondifferentiability(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, Error> {
    let mut s = sampler(cfg.seed, 3);
    let n = 50;
    let mut defect_err: f64 = 0.0;
    let mut min_ratio = f64::INFINITY;
    for i in 0..n {
        let ball = random_ball(&mut s, BALL_DIMS[i % 3]);
        let r = ball.radius();
        let x = at_distance(&mut s, &ball, r);
        let w = x.sub(ball.center())?;
        let plus = ball.directional_derivative(&x, &w, cfg.tolerance)?;
        let minus = ball.directional_derivative(&x, &w.neg(), cfg.tolerance)?;
        defect_err = defect_err.max((plus.add(&minus)?.norm() - r).abs());

        let candidates =
            [LinOp::identity(ball.dim()), LinOp::zero(ball.dim()), tangent_projector(&w, r)];
        for (k, op) in candidates.iter().enumerate() {
            let series = verify::strict_residual_scan(
                |y: &Vector| ball.project(y),
                op,
                &x,
                &SCAN_RADII,
                SCAN_SAMPLES,
                sub_seed(cfg.seed, (i * 3 + k) as u64),
            )?;
            min_ratio = min_ratio.min(series.min_ratio());
        }
    }
    Ok(vec![
        at_most("ball_additivity_defect", Some(4), n, defect_err, 1e-12),
        at_least("ball_boundary_no_linear_fit", Some(4), n * 3, min_ratio, 0.1),
    ])
}

/// Summary of decay checks shared by both geometries.
struct Decay {
    not_decreasing: usize,
    min_ratio: f64,
    max_ratio: f64,
}

impl Decay {
    fn new() -> Self {
        Decay { not_decreasing: 0, min_ratio: f64::INFINITY, max_ratio: 0.0 }
    }

    fn record(&mut self, series: &verify::ResidualSeries) {
        let (coarse, fine) = (series.max_residual_ratio[0], series.max_residual_ratio[1]);
        if !(fine < coarse) {
            self.not_decreasing += 1;
        }
        let ratio = coarse / fine;
        self.min_ratio = self.min_ratio.min(ratio);
        self.max_ratio = self.max_ratio.max(ratio);
    }

    fn results(&self, names: [&'static str; 3], n: usize) -> Vec<PropertyResult> {
        vec![
            at_most(names[0], Some(5), n, self.not_decreasing as f64, 0.0),
            at_least(names[1], Some(5), n, self.min_ratio, 3.0),
            at_most(names[2], Some(5), n, self.max_ratio, 30.0),
        ]
    }
}

fn ball_strict_decay(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, Error> {
    let mut s = sampler(cfg.seed, 4);
    let n = 50;
    let mut decay = Decay::new();
    let mut interior_worst: f64 = 0.0;
    for i in 0..n {
        let ball = random_ball(&mut s, BALL_DIMS[i % 3]);
        let project = |y: &Vector| ball.project(y);

        let x = smooth_ball_point(&mut s, &ball, true);
        let op = expect_operator(ball.frechet_derivative(&x, cfg.tolerance)?)?;
        let series = verify::strict_residual_scan(
            project,
            &op,
            &x,
            &DECAY_RADII,
            DECAY_SAMPLES,
            sub_seed(cfg.seed, 100 + i as u64),
        )?;
        decay.record(&series);

        // Inside the ball the projection is the identity, so the quotient vanishes.
        let x = smooth_ball_point(&mut s, &ball, false);
        let op = expect_operator(ball.frechet_derivative(&x, cfg.tolerance)?)?;
        let series = verify::strict_residual_scan(
            project,
            &op,
            &x,
            &DECAY_RADII,
            DECAY_SAMPLES,
            sub_seed(cfg.seed, 200 + i as u64),
        )?;
        interior_worst = interior_worst.max(series.max_residual_ratio[0]);
    }
    let mut out = decay.results(
        ["ball_strict_residual_decreases", "ball_decay_ratio_min", "ball_decay_ratio_max"],
        n,
    );
    out.push(at_most("ball_interior_residual_zero", None, n, interior_worst, 0.0));
    Ok(out)
}

fn ball_structural(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, Error> {
    let mut s = sampler(cfg.seed, 5);
    let n = 1000;
    let (mut shift, mut idem, mut expand): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let ball = random_ball(&mut s, IDENTITY_DIMS[i % IDENTITY_DIMS.len()]);
        let scale = s.uniform(0.1, 4.0);
        let x = ball.center().axpy(scale, &s.gaussian_vector(ball.dim()))?;
        let y = ball.center().axpy(scale, &s.gaussian_vector(ball.dim()))?;
        shift = shift.max(verify::shift_identity_residual(&ball, &x)?);
        let px = ball.project(&x)?;
        idem = idem.max(ball.project(&px)?.sub(&px)?.max_abs());
        let py = ball.project(&y)?;
        expand = expand.max(px.distance(&py)? / x.distance(&y)? - 1.0);
    }
    Ok(vec![
        at_most("ball_shift_identity", Some(6), n, shift, 1e-14),
        at_most("ball_idempotence", Some(6), n, idem, 1e-12),
        at_most("ball_nonexpansive_excess", Some(6), n, expand, 1e-12),
    ])
}

fn ball_lipschitz(cfg: &SuiteConfig) -> Result<PropertyResult, Error> {
    let mut s = sampler(cfg.seed, 6);
    let n = 50;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let m = BALL_DIMS[i % 3];
        let r = s.uniform(0.5, 3.0);
        let ball = Ball::origin(m, r)?;
        let rho = s.uniform(1.2 * r, 4.0 * r);
        let x = at_distance(&mut s, &ball, rho);
        let nx = x.norm();
        let delta = (nx - r) / 2.0;
        let est = verify::lipschitz_estimate(
            |y: &Vector| expect_operator(ball.frechet_derivative(y, cfg.tolerance)?),
            |y: &Vector| y.norm() > r,
            &x,
            delta,
            LIPSCHITZ_SAMPLES,
            sub_seed(cfg.seed, 300 + i as u64),
        )?;
        let bound = 6.0 * r / ((nx - delta) * (nx - delta)) * m as f64;
        worst = worst.max(est / bound);
    }
    Ok(at_most("ball_lipschitz_within_proof_constant", Some(7), n, worst, 1.0))
}

fn ball_consistency(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, Error> {
    let mut s = sampler(cfg.seed, 7);
    let n = 200;
    let (mut consistency, mut composition): (f64, f64) = (0.0, 0.0);
    for i in 0..n {
        let ball = random_ball(&mut s, BALL_DIMS[i % 3]);
        let x = smooth_ball_point(&mut s, &ball, i % 2 == 0);
        let w = s.gaussian_vector(ball.dim());
        let op = expect_operator(ball.frechet_derivative(&x, cfg.tolerance)?)?;
        let dd = ball.directional_derivative(&x, &w, cfg.tolerance)?;
        consistency = consistency.max(dd.sub(&op.apply(&w)?)?.max_abs());

        // Derivative of x -> P_{B(0,r)}(x - c) + c at x equals the general one.
        let origin = Ball::origin(ball.dim(), ball.radius())?;
        let inner = expect_operator(origin.frechet_derivative(&x.sub(ball.center())?, cfg.tolerance)?)?;
        composition = composition.max(op.as_matrix().sub(&inner.as_matrix())?.max_abs());
    }
    Ok(vec![
        at_most("ball_directional_matches_frechet", None, n, consistency, 1e-12),
        at_most("ball_shift_composition", None, n, composition, 1e-12),
    ])
}

pub fn run_ball(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut properties = vec![ball_derivative_vs_fd(cfg)?, ball_boundary_directional(cfg)?];
    properties.extend(ball_nondifferentiability(cfg)?);
    properties.extend(ball_strict_decay(cfg)?);
    properties.extend(ball_structural(cfg)?);
    properties.push(ball_lipschitz(cfg)?);
    properties.extend(ball_consistency(cfg)?);
    Ok(SuiteReport { geometry: "ball", pass: properties.iter().all(|p| p.pass), properties })
}

// ---------------------------------------------------------------------------
// Second-order cone

/// A point whose margins both exceed `0.1 |z|` in absolute value, in the
/// requested smooth region.
fn smooth_soc_point(s: &mut Sampler, m: usize, label: SocLabel) -> Vector {
    loop {
        let tail_norm = s.uniform(0.5, 3.0);
        let dir = s.unit_vector(m - 1);
        let ratio = match label {
            SocLabel::IntK => s.uniform(1.3, 3.0),
            SocLabel::IntNegK => s.uniform(-3.0, -1.3),
            _ => s.uniform(-0.7, 0.7),
        };
        let z = concat(ratio * tail_norm, &dir.scale(tail_norm));
        let (a, b) = SocPoint::from_vector(&z).expect("m >= 2").margins();
        if a.abs() >= 0.1 * z.norm() && b.abs() >= 0.1 * z.norm() {
            return z;
        }
    }
}

const SMOOTH_LABELS: [SocLabel; 3] = [SocLabel::IntK, SocLabel::IntNegK, SocLabel::Outside];

fn soc_derivative_vs_fd(cfg: &SuiteConfig) -> Result<PropertyResult, Error> {
    let mut s = sampler(cfg.seed, 11);
    let fd = FdConfig::central(cfg.fd_step)?;
    let n = 200;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let z = smooth_soc_point(&mut s, SOC_DIMS[i % 3], SMOOTH_LABELS[(i / 3) % 3]);
        let op = expect_operator(soc::frechet_derivative(&SocPoint::from_vector(&z)?, cfg.tolerance)?)?;
        let jac = verify::fd_jacobian(soc::project_vector, &z, &fd)?;
        worst = worst.max(op.as_matrix().max_relative_error(&jac)?);
    }
    Ok(at_most("soc_derivative_vs_fd", Some(2), n, worst, 1e-6))
}

#[derive(Clone, Copy)]
enum SocKink {
    Boundary,
    NegBoundary,
    Origin,
}

fn soc_kink_point(s: &mut Sampler, m: usize, kink: SocKink) -> Vector {
    let tail_norm = s.uniform(0.5, 3.0);
    let tail = s.unit_vector(m - 1).scale(tail_norm);
    match kink {
        SocKink::Boundary => concat(tail_norm, &tail),
        SocKink::NegBoundary => concat(-tail_norm, &tail),
        SocKink::Origin => Vector::zeros(m),
    }
}

fn mirrored(z: &Vector) -> Vector {
    concat(-z[0], &Vector::new(z.as_slice()[1..].to_vec()).expect("m >= 2"))
}

fn soc_boundary_directional(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, Error> {
    let fd = FdConfig::new(FdScheme::Forward, BOUNDARY_STEP, BOUNDARY_LEVELS)?;
    let n = 100;
    let mut out = Vec::new();
    let kinds: [(SocKink, &'static str, u64); 3] = [
        (SocKink::Boundary, "soc_bd_K_directional_vs_fd", 12),
        (SocKink::NegBoundary, "soc_bd_neg_K_directional_vs_fd", 13),
        (SocKink::Origin, "soc_origin_directional_vs_fd", 14),
    ];
    for (kind, name, tag) in kinds {
        let mut s = sampler(cfg.seed, tag);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let m = SOC_DIMS[i % 3];
            let z = soc_kink_point(&mut s, m, kind);
            let h = match (kind, i % 5) {
                (SocKink::Origin, 0) => Vector::basis(m, 0).scale(s.uniform(0.5, 3.0)),
                (SocKink::Origin, 1) => Vector::basis(m, 0).scale(-s.uniform(0.5, 3.0)),
                (_, 0) => mirrored(&z),
                (_, 1) => mirrored(&z).neg(),
                _ => s.gaussian_vector(m).scale(s.uniform(0.5, 3.0)),
            };
            let closed = soc::directional_derivative(&SocPoint::from_vector(&z)?, &h, cfg.tolerance)?;
            let (approx, _) = verify::fd_directional(soc::project_vector, &z, &h, &fd)?;
            worst = worst.max(approx.sub(&closed)?.max_abs() / (1.0 + h.norm()));
        }
        out.push(at_most(name, Some(3), n, worst, 1e-5));
    }
    Ok(out)
}

fn soc_nondifferentiability(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, Error> {
    let n = 50;
    let mut defect_err: f64 = 0.0;
    let mut min_ratio = f64::INFINITY;
    let kinds = [(SocKink::Boundary, 15), (SocKink::NegBoundary, 16), (SocKink::Origin, 17)];
    for (kind, tag) in kinds {
        let mut s = sampler(cfg.seed, tag);
        for i in 0..n {
            let m = SOC_DIMS[i % 3];
            let zv = soc_kink_point(&mut s, m, kind);
            let z = SocPoint::from_vector(&zv)?;
            let probe = match kind {
                SocKink::Origin => Vector::basis(m, 0).scale(s.uniform(0.5, 3.0)),
                _ => mirrored(&zv),
            };
            let plus = soc::directional_derivative(&z, &probe, cfg.tolerance)?;
            let minus = soc::directional_derivative(&z, &probe.neg(), cfg.tolerance)?;
            defect_err = defect_err.max((plus.add(&minus)?.norm() - probe.norm()).abs());

            let limit_op = match kind {
                SocKink::Boundary => {
                    rank_one_update(&soc::spectral_decompose(&z, None)?.c1, true)
                }
                SocKink::NegBoundary => {
                    rank_one_update(&soc::spectral_decompose(&z, None)?.c2, false)
                }
                SocKink::Origin => LinOp::soc_jacobian(concat(0.0, &s.unit_vector(m - 1)))?,
            };
            let candidates = [LinOp::identity(m), LinOp::zero(m), limit_op];
            for (k, op) in candidates.iter().enumerate() {
                let series = verify::strict_residual_scan(
                    soc::project_vector,
                    op,
                    &zv,
                    &SCAN_RADII,
                    SCAN_SAMPLES,
                    sub_seed(cfg.seed, tag * 1000 + (i * 3 + k) as u64),
                )?;
                min_ratio = min_ratio.min(series.min_ratio());
            }
        }
    }
    Ok(vec![
        at_most("soc_additivity_defect", Some(4), 3 * n, defect_err, 1e-12),
        at_least("soc_boundary_no_linear_fit", Some(4), 9 * n, min_ratio, 0.1),
    ])
}

fn soc_strict_decay(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, Error> {
    let mut s = sampler(cfg.seed, 18);
    let n = 50;
    let mut decay = Decay::new();
    let mut flat_worst: f64 = 0.0;
    for i in 0..n {
        let m = SOC_DIMS[i % 3];
        let z = smooth_soc_point(&mut s, m, SocLabel::Outside);
        let op = expect_operator(soc::frechet_derivative(&SocPoint::from_vector(&z)?, cfg.tolerance)?)?;
        let series = verify::strict_residual_scan(
            soc::project_vector,
            &op,
            &z,
            &DECAY_RADII,
            DECAY_SAMPLES,
            sub_seed(cfg.seed, 400 + i as u64),
        )?;
        decay.record(&series);

        // On int K and -int K the projection is affine, so only rounding remains.
        let label = if i % 2 == 0 { SocLabel::IntK } else { SocLabel::IntNegK };
        let z = smooth_soc_point(&mut s, m, label);
        let op = expect_operator(soc::frechet_derivative(&SocPoint::from_vector(&z)?, cfg.tolerance)?)?;
        let series = verify::strict_residual_scan(
            soc::project_vector,
            &op,
            &z,
            &DECAY_RADII,
            DECAY_SAMPLES,
            sub_seed(cfg.seed, 500 + i as u64),
        )?;
        flat_worst = flat_worst.max(series.max_residual_ratio[0]);
    }
    let mut out = decay.results(
        ["soc_strict_residual_decreases", "soc_decay_ratio_min", "soc_decay_ratio_max"],
        n,
    );
    out.push(at_most("soc_cone_interior_residual_rounding", None, n, flat_worst, 1e-10));
    Ok(out)
}

fn soc_structural(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, Error> {
    let mut s = sampler(cfg.seed, 19);
    let n = 1000;
    let (mut moreau, mut idem, mut expand, mut member, mut orth): (f64, f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        let m = 2 + i % 15;
        let scale = s.uniform(0.1, 4.0);
        let z = s.gaussian_vector(m).scale(scale);
        let y = s.gaussian_vector(m).scale(scale);
        let zp = SocPoint::from_vector(&z)?;
        moreau = moreau.max(verify::moreau_residual(&zp));
        let pz = soc::project(&zp);
        idem = idem.max(soc::project_vector(&pz)?.sub(&pz)?.max_abs());
        member = member.max(soc::tail_norm(&pz) - pz[0]);
        let py = soc::project_vector(&y)?;
        expand = expand.max(pz.distance(&py)? / z.distance(&y)? - 1.0);
        orth = orth.max(pz.dot(&pz.sub(&z)?)?.abs() / z.norm_squared());
    }
    Ok(vec![
        at_most("soc_moreau_identity", Some(6), n, moreau, 1e-12),
        at_most("soc_idempotence", Some(6), n, idem, 1e-12),
        at_most("soc_nonexpansive_excess", Some(6), n, expand, 1e-12),
        at_most("soc_membership_violation", None, n, member, 1e-12),
        at_most("soc_projection_orthogonality", None, n, orth, 1e-10),
    ])
}

fn soc_lipschitz(cfg: &SuiteConfig) -> Result<PropertyResult, Error> {
    let mut s = sampler(cfg.seed, 20);
    let n = 50;
    let delta1 = 0.1;
    let sq2 = std::f64::consts::SQRT_2;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let m = SOC_DIMS[i % 3];
        let z = loop {
            let tail_norm = s.uniform(0.5, 3.0);
            let z = concat(s.uniform(-0.6, 0.6) * tail_norm, &s.unit_vector(m - 1).scale(tail_norm));
            // B(z, δ1|z|) must stay clear of both cone surfaces.
            let gap = (soc::tail_norm(&z) - z[0].abs()) / sq2;
            if gap > delta1 * z.norm() {
                break z;
            }
        };
        let nz = z.norm();
        let est = verify::lipschitz_estimate(
            |y: &Vector| {
                expect_operator(soc::frechet_derivative(&SocPoint::from_vector(y)?, cfg.tolerance)?)
            },
            |y: &Vector| {
                SocPoint::from_vector(y)
                    .and_then(|p| soc::classify_point(&p, cfg.tolerance))
                    .is_ok_and(|r| r.label == SocLabel::Outside)
            },
            &z,
            delta1 * nz,
            LIPSCHITZ_SAMPLES,
            sub_seed(cfg.seed, 600 + i as u64),
        )?;
        let mf = m as f64;
        let bound = (sq2 * (1.0 - delta1).powi(2) + 6.0 * sq2 * mf * (1.0 + delta1).powi(2))
            / (nz * (1.0 - delta1).powi(3));
        worst = worst.max(est / bound);
    }
    Ok(at_most("soc_lipschitz_within_proof_constant", Some(7), n, worst, 1.0))
}

fn soc_fallback_independence(cfg: &SuiteConfig) -> Result<PropertyResult, Error> {
    let mut s = sampler(cfg.seed, 21);
    let points = 10;
    let per_point = 20;
    let mut worst: f64 = 0.0;
    for i in 0..points {
        let m = SOC_DIMS[i % 3];
        let z = SocPoint::new(s.uniform(-3.0, 3.0), Vector::zeros(m - 1))?;
        let base = soc::project(&z);
        for _ in 0..per_point {
            let w = s.unit_vector(m - 1);
            worst = worst.max(soc::project_with_fallback(&z, &w)?.sub(&base)?.max_abs());
        }
    }
    Ok(at_most("soc_fallback_independence", Some(9), points * per_point, worst, 1e-12))
}

fn soc_jacobian_structure(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>, Error> {
    let mut s = sampler(cfg.seed, 22);
    let n = 200;
    let (mut asym, mut spread, mut consistency): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let m = SOC_DIMS[i % 3];
        let z = smooth_soc_point(&mut s, m, SocLabel::Outside);
        let zp = SocPoint::from_vector(&z)?;
        let op = expect_operator(soc::frechet_derivative(&zp, cfg.tolerance)?)?;
        let jac = op.as_matrix();
        asym = asym.max(jac.asymmetry());
        // A symmetric J has eigenvalues in [0, 1] iff |J| <= 1 and |I - J| <= 1.
        let upper = op.operator_norm_estimate(200)?;
        let lower = LinOp::dense(Matrix::identity(m).sub(&jac)?).operator_norm_estimate(200)?;
        spread = spread.max(upper - 1.0).max(lower - 1.0);

        let h = s.gaussian_vector(m);
        let dd = soc::directional_derivative(&zp, &h, cfg.tolerance)?;
        consistency = consistency.max(dd.sub(&op.apply(&h)?)?.max_abs());
    }
    Ok(vec![
        at_most("soc_jacobian_asymmetry", None, n, asym, 1e-12),
        at_most("soc_jacobian_spectrum_excess", None, n, spread, 1e-10),
        at_most("soc_directional_matches_frechet", None, n, consistency, 1e-12),
    ])
}

pub fn run_soc(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut properties = vec![soc_derivative_vs_fd(cfg)?];
    properties.extend(soc_boundary_directional(cfg)?);
    properties.extend(soc_nondifferentiability(cfg)?);
    properties.extend(soc_strict_decay(cfg)?);
    properties.extend(soc_structural(cfg)?);
    properties.push(soc_lipschitz(cfg)?);
    properties.push(soc_fallback_independence(cfg)?);
    properties.extend(soc_jacobian_structure(cfg)?);
    Ok(SuiteReport { geometry: "soc", pass: properties.iter().all(|p| p.pass), properties })
}
