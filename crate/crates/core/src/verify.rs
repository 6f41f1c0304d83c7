//! Numerical oracles that check the closed forms without sharing their code
//! paths: finite differences, paired-point strict-residual scans, Lipschitz
//! estimates of derivative fields, and structural identity residuals.
//!
//! Every sampling routine is a pure function of its inputs and seed.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::linop::LinOp;
use crate::soc::{self, SocPoint};

const MIN_STEP: f64 = 1e-10;
const MAX_STEP: f64 = 1e-2;
const UNDERFLOW_STEP: f64 = 1e-12;
const MAX_REDRAWS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdScheme {
    /// `(f(x + t w) - f(x)) / t`; the only admissible scheme at kinks.
    Forward,
    /// `(f(x + t w) - f(x - t w)) / (2t)`.
    Central,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    scheme: FdScheme,
    step: f64,
    richardson_levels: usize,
}

impl FdConfig {
    pub fn new(scheme: FdScheme, step: f64, richardson_levels: usize) -> Result<Self> {
        if !(MIN_STEP..=MAX_STEP).contains(&step) {
            return Err(Error::InvalidStep(step));
        }
        if richardson_levels == 0 {
            return Err(Error::InvalidArgument("richardson_levels must be >= 1"));
        }
        Ok(FdConfig { scheme, step, richardson_levels })
    }

    pub fn forward(step: f64) -> Result<Self> {
        Self::new(FdScheme::Forward, step, 1)
    }

    pub fn central(step: f64) -> Result<Self> {
        Self::new(FdScheme::Central, step, 1)
    }

    pub fn scheme(&self) -> FdScheme {
        self.scheme
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn richardson_levels(&self) -> usize {
        self.richardson_levels
    }
}

fn difference_quotient<F>(f: &F, x: &Vector, w: &Vector, t: f64, scheme: FdScheme) -> Result<Vector>
where
    F: Fn(&Vector) -> Result<Vector>,
{
    let forward = f(&x.axpy(t, w)?)?;
    match scheme {
        FdScheme::Forward => Ok(forward.sub(&f(x)?)?.scale(1.0 / t)),
        FdScheme::Central => Ok(forward.sub(&f(&x.axpy(-t, w)?)?)?.scale(0.5 / t)),
    }
}

/// Finite-difference estimate of the directional derivative of `f` at `x`
/// along `w`, with Richardson extrapolation over successive step halvings.
///
/// Returns the estimate and the norm of the difference between the last two
/// extrapolation levels. With a single level the error estimate compares
/// the quotient at `step` with the one at `step / 2`.
pub fn fd_directional<F>(f: F, x: &Vector, w: &Vector, cfg: &FdConfig) -> Result<(Vector, f64)>
where
    F: Fn(&Vector) -> Result<Vector>,
{
    x.check_dim(w)?;
    if w.norm_squared() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let levels = cfg.richardson_levels;
    let rows = levels.max(2);
    let smallest = cfg.step / libm::pow(2.0, (rows - 1) as f64);
    if smallest < UNDERFLOW_STEP {
        return Err(Error::StepUnderflow(smallest));
    }
    // Leading error orders: t, t^2, ... for forward; t^2, t^4, ... for central.
    let order = match cfg.scheme {
        FdScheme::Forward => 1.0,
        FdScheme::Central => 2.0,
    };

    let mut prev_row: Vec<Vector> = Vec::new();
    let mut diagonal: Vec<Vector> = Vec::new();
    let mut t = cfg.step;
    for i in 0..rows {
        let mut row = Vec::with_capacity(i + 1);
        row.push(difference_quotient(&f, x, w, t, cfg.scheme)?);
        for k in 1..=i.min(levels - 1) {
            let factor = libm::pow(2.0, order * k as f64) - 1.0;
            let refined = row[k - 1].sub(&prev_row[k - 1])?;
            let next = row[k - 1].axpy(1.0 / factor, &refined)?;
            row.push(next);
        }
        diagonal.push(row.last().cloned().expect("row is nonempty"));
        prev_row = row;
        t *= 0.5;
    }

    if levels == 1 {
        let est = diagonal[1].sub(&diagonal[0])?.norm();
        Ok((diagonal.swap_remove(0), est))
    } else {
        let last = diagonal.pop().expect("at least two rows");
        let est = last.sub(diagonal.last().expect("at least two rows"))?.norm();
        Ok((last, est))
    }
}

/// Finite-difference Jacobian; column `j` is the directional estimate along `e_j`.
pub fn fd_jacobian<F>(f: F, x: &Vector, cfg: &FdConfig) -> Result<Matrix>
where
    F: Fn(&Vector) -> Result<Vector>,
{
    let m = x.len();
    let mut columns = Vec::with_capacity(m);
    for j in 0..m {
        let (col, _) = fd_directional(&f, x, &Vector::basis(m, j), cfg)?;
        if col.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: col.len() });
        }
        columns.push(col);
    }
    Ok(Matrix::from_columns(&columns))
}

/// Seeded sampler over spheres and balls.
///
/// Ball samples take a direction uniform on the sphere (a normalized
/// Gaussian) times `radius * u^(1/m)` with `u` uniform on `(0, 1)`.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn gaussian_vector(&mut self, dim: usize) -> Vector {
        Vector::from_raw((0..dim).map(|_| self.normal()).collect())
    }

    pub fn unit_vector(&mut self, dim: usize) -> Vector {
        loop {
            let g = self.gaussian_vector(dim);
            let n = g.norm();
            if n > 1e-12 {
                return g.scale(1.0 / n);
            }
        }
    }

    pub fn in_ball(&mut self, center: &Vector, radius: f64) -> Vector {
        let m = center.len();
        let dir = self.unit_vector(m);
        let u: f64 = self.rng.random::<f64>();
        let rho = radius * libm::pow(u, 1.0 / m as f64);
        center.axpy(rho, &dir).expect("same dimension")
    }

    fn pair_in_ball(&mut self, center: &Vector, radius: f64) -> Result<(Vector, Vector)> {
        for _ in 0..MAX_REDRAWS {
            let u = self.in_ball(center, radius);
            let v = self.in_ball(center, radius);
            if u != v {
                return Ok((u, v));
            }
        }
        Err(Error::DegeneratePair)
    }
}

/// Worst strict-differentiability quotient per radius.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSeries {
    pub radii: Vec<f64>,
    /// `max ‖f(u) - f(v) - D(u - v)‖ / ‖u - v‖` over the pairs drawn at each radius.
    pub max_residual_ratio: Vec<f64>,
    pub samples_per_radius: usize,
    pub seed: u64,
}

impl ResidualSeries {
    pub fn is_strictly_decreasing(&self) -> bool {
        self.max_residual_ratio.windows(2).all(|w| w[1] < w[0])
    }

    /// Smallest recorded quotient across radii.
    pub fn min_ratio(&self) -> f64 {
        self.max_residual_ratio.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Samples pairs `(u, v)` uniformly from `B(xbar, ρ)` for each radius and
/// records the largest linearization quotient against `op`.
pub fn strict_residual_scan<F>(
    f: F,
    op: &LinOp,
    xbar: &Vector,
    radii: &[f64],
    samples: usize,
    seed: u64,
) -> Result<ResidualSeries>
where
    F: Fn(&Vector) -> Result<Vector>,
{
    if samples < 2 {
        return Err(Error::InvalidArgument("samples must be >= 2"));
    }
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidArgument("radii must be positive"));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("radii must be strictly decreasing"));
    }
    if op.dim() != xbar.len() {
        return Err(Error::DimensionMismatch { expected: op.dim(), found: xbar.len() });
    }
    let mut sampler = Sampler::new(seed);
    let mut ratios = Vec::with_capacity(radii.len());
    for &rho in radii {
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let (u, v) = sampler.pair_in_ball(xbar, rho)?;
            let du = u.sub(&v)?;
            let lin = op.apply(&du)?;
            let res = f(&u)?.sub(&f(&v)?)?.sub(&lin)?;
            worst = worst.max(res.norm() / du.norm());
        }
        ratios.push(worst);
    }
    Ok(ResidualSeries {
        radii: radii.to_vec(),
        max_residual_ratio: ratios,
        samples_per_radius: samples,
        seed,
    })
}

/// Largest `‖D(x1) - D(x2)‖_F / ‖x1 - x2‖` over sampled pairs in
/// `B(center, radius)`. Every sample must satisfy `guard`.
pub fn lipschitz_estimate<D, G>(
    field: D,
    guard: G,
    center: &Vector,
    radius: f64,
    samples: usize,
    seed: u64,
) -> Result<f64>
where
    D: Fn(&Vector) -> Result<LinOp>,
    G: Fn(&Vector) -> bool,
{
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument("radius must be positive"));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1"));
    }
    let mut sampler = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let (x1, x2) = sampler.pair_in_ball(center, radius)?;
        if !guard(&x1) || !guard(&x2) {
            return Err(Error::RegionViolation);
        }
        let diff = field(&x1)?.as_matrix().sub(&field(&x2)?.as_matrix())?;
        worst = worst.max(diff.frobenius_norm() / x1.distance(&x2)?);
    }
    Ok(worst)
}

/// `‖P_{B(c,r)}(x) - (P_{B(0,r)}(x - c) + c)‖`.
pub fn shift_identity_residual(ball: &Ball, x: &Vector) -> Result<f64> {
    let direct = ball.project(x)?;
    let at_origin = Ball::origin(ball.dim(), ball.radius())?;
    let shifted = at_origin.project(&x.sub(ball.center())?)?.add(ball.center())?;
    direct.distance(&shifted)
}

/// `‖P_K(z) - P_K(-z) - z‖`.
pub fn moreau_residual(z: &SocPoint) -> f64 {
    let diff = soc::project(z).sub(&soc::project(&z.neg())).expect("same dimension");
    diff.distance(&z.to_vector()).expect("same dimension")
}
