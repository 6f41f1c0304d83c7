//! Single-point evaluation behind `ball eval` and `soc eval`.

use metproj_core::ball::{Ball, BallLabel, DirectionLabel};
use metproj_core::soc::{self, SocLabel, SocPoint};
use metproj_core::{Frechet, Vector};

use crate::wire::{DerivativeOut, Geometry, RegionOut, Request, Response, NOT_DIFFERENTIABLE};
use crate::CliError;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn vector(name: &str, entries: &[f64]) -> Result<Vector, CliError> {
    Vector::from_slice(entries).map_err(|e| CliError::Invalid(format!("{name}: {e}")))
}

fn check_geometry(req: &Request, expected: Geometry) -> Result<(), CliError> {
    match req.geometry {
        Some(g) if g != expected => Err(CliError::Invalid(format!(
            "request geometry {g:?} does not match subcommand {expected:?}"
        ))),
        _ => Ok(()),
    }
}

fn derivative_out<R>(d: &Frechet<R>) -> DerivativeOut {
    match d {
        Frechet::Operator(op) => DerivativeOut::Matrix(op.as_matrix().rows()),
        Frechet::NotDifferentiable(_) => DerivativeOut::Label(NOT_DIFFERENTIABLE.to_string()),
    }
}

pub fn ball_label(label: BallLabel) -> &'static str {
    match label {
        BallLabel::Interior => "interior",
        BallLabel::Exterior => "exterior",
        BallLabel::Boundary => "boundary",
    }
}

pub fn soc_label(label: SocLabel) -> &'static str {
    match label {
        SocLabel::IntK => "int_K",
        SocLabel::IntNegK => "int_neg_K",
        SocLabel::Outside => "outside",
        SocLabel::BdK => "bd_K",
        SocLabel::BdNegK => "bd_neg_K",
        SocLabel::Origin => "origin",
    }
}

/// Evaluates a ball request. `tolerance` (from the command line) takes
/// precedence over the request's own field; without either, the ball's
/// default band `1e-9 * max(1, r)` is used.
pub fn eval_ball(req: &Request, tolerance: Option<f64>) -> Result<Response, CliError> {
    check_geometry(req, Geometry::Ball)?;
    let center = req
        .center
        .as_deref()
        .ok_or_else(|| CliError::Invalid("ball request needs `center`".into()))?;
    let radius =
        req.radius.ok_or_else(|| CliError::Invalid("ball request needs `radius`".into()))?;
    if req.dimension.is_some() {
        return Err(CliError::Invalid("`dimension` is not a ball parameter".into()));
    }
    let ball = Ball::new(vector("center", center)?, radius)?;
    let x = vector("point", &req.point)?;
    if x.len() != ball.dim() {
        return Err(metproj_core::Error::DimensionMismatch { expected: ball.dim(), found: x.len() }.into());
    }
    let tol = tolerance.or(req.tolerance).unwrap_or_else(|| ball.default_tolerance());

    let region = ball.classify_point(&x, tol)?;
    let derivative = ball.frechet_derivative(&x, tol)?;
    let (directional_derivative, direction_class) = match &req.direction {
        Some(w) => {
            let w = vector("direction", w)?;
            let dd = ball.directional_derivative(&x, &w, tol)?;
            let class = (region.label == BallLabel::Boundary).then(|| {
                match ball.direction_label(&x, &w).expect("validated above") {
                    DirectionLabel::Up => "up".to_string(),
                    DirectionLabel::Down => "down".to_string(),
                }
            });
            (Some(dd.into_vec()), class)
        }
        None => (None, None),
    };
    Ok(Response {
        geometry: Geometry::Ball,
        projection: ball.project(&x)?.into_vec(),
        region: RegionOut {
            label: ball_label(region.label).to_string(),
            signed_distance: Some(region.signed_distance),
            margins: None,
            tolerance: tol,
        },
        derivative: derivative_out(&derivative),
        directional_derivative,
        direction_class,
    })
}

/// Evaluates a second-order-cone request; `dimension` must match the point.
pub fn eval_soc(req: &Request, tolerance: Option<f64>) -> Result<Response, CliError> {
    check_geometry(req, Geometry::Soc)?;
    if req.center.is_some() || req.radius.is_some() {
        return Err(CliError::Invalid("`center`/`radius` are not cone parameters".into()));
    }
    let m = req
        .dimension
        .ok_or_else(|| CliError::Invalid("soc request needs `dimension`".into()))?;
    if m < 2 {
        return Err(metproj_core::Error::ConeTooSmall(m).into());
    }
    let zv = vector("point", &req.point)?;
    if zv.len() != m {
        return Err(metproj_core::Error::DimensionMismatch { expected: m, found: zv.len() }.into());
    }
    let z = SocPoint::from_vector(&zv)?;
    let tol = tolerance.or(req.tolerance).unwrap_or(DEFAULT_TOLERANCE);

    let region = soc::classify_point(&z, tol)?;
    let derivative = soc::frechet_derivative(&z, tol)?;
    let directional_derivative = match &req.direction {
        Some(h) => Some(soc::directional_derivative(&z, &vector("direction", h)?, tol)?.into_vec()),
        None => None,
    };
    Ok(Response {
        geometry: Geometry::Soc,
        projection: soc::project(&z).into_vec(),
        region: RegionOut {
            label: soc_label(region.label).to_string(),
            signed_distance: None,
            margins: Some([region.margins.0, region.margins.1]),
            tolerance: tol,
        },
        derivative: derivative_out(&derivative),
        directional_derivative,
        direction_class: None,
    })
}
