//! Worked examples printed by `metproj examples`.
//!
//! Every case is evaluated through the library and, where a coordinate
//! formula exists, recomputed from that formula so that the two can be read
//! side by side.

use metproj_core::ball::{Ball, BallLabel, DirectionLabel};
use metproj_core::soc::{self, SocPoint};
use metproj_core::{Frechet, Vector};
use serde_json::{json, Value};

use crate::eval::{ball_label, soc_label};
use crate::wire::NOT_DIFFERENTIABLE;
use crate::CliError;

fn v(entries: &[f64]) -> Vector {
    Vector::from_slice(entries).expect("finite literal")
}

fn derivative_json<R>(d: &Frechet<R>) -> Value {
    match d {
        Frechet::Operator(op) => json!(op.as_matrix().rows()),
        Frechet::NotDifferentiable(_) => json!(NOT_DIFFERENTIABLE),
    }
}

fn max_abs_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

fn ball_case(ball: &Ball, point: &[f64], directions: &[&[f64]]) -> Result<Value, CliError> {
    let x = v(point);
    let tol = ball.default_tolerance();
    let region = ball.classify_point(&x, tol)?;
    let mut dirs = Vec::new();
    for w in directions {
        let wv = v(w);
        let mut entry = json!({
            "direction": w,
            "value": ball.directional_derivative(&x, &wv, tol)?.into_vec(),
        });
        if region.label == BallLabel::Boundary {
            entry["class"] = json!(match ball.direction_label(&x, &wv)? {
                DirectionLabel::Up => "up",
                DirectionLabel::Down => "down",
            });
        }
        dirs.push(entry);
    }
    Ok(json!({
        "point": point,
        "region": ball_label(region.label),
        "projection": ball.project(&x)?.into_vec(),
        "derivative": derivative_json(&ball.frechet_derivative(&x, tol)?),
        "directional": dirs,
    }))
}

/// Line segment `[c - r, c + r]`: derivative 1 inside, 0 outside, two
/// one-sided values at the endpoints.
fn ball_line() -> Result<Value, CliError> {
    let ball = Ball::new(v(&[1.0]), 2.0)?;
    let cases = vec![
        ball_case(&ball, &[1.5], &[&[1.0]])?,
        ball_case(&ball, &[4.0], &[&[1.0]])?,
        ball_case(&ball, &[-1.5], &[&[1.0]])?,
        ball_case(&ball, &[3.0], &[&[1.0], &[-1.0]])?,
        ball_case(&ball, &[-1.0], &[&[1.0], &[-1.0]])?,
    ];
    Ok(json!({ "center": [1.0], "radius": 2.0, "cases": cases }))
}

/// Disk of radius 2 about (1, 1). At the exterior point the library matrix is
/// compared with `(r / |b|) (I - b b^T / |b|^2)` written out by coordinates.
fn ball_disk() -> Result<Value, CliError> {
    let (c, r) = ([1.0, 1.0], 2.0);
    let ball = Ball::new(v(&c), r)?;
    let exterior = [4.0, 5.0];
    let (b1, b2) = (exterior[0] - c[0], exterior[1] - c[1]);
    let nb2 = b1 * b1 + b2 * b2;
    let k = r / nb2.sqrt() / nb2;
    let coordinate = vec![vec![k * b2 * b2, -k * b1 * b2], vec![-k * b1 * b2, k * b1 * b1]];
    let library = match ball.frechet_derivative(&v(&exterior), ball.default_tolerance())? {
        Frechet::Operator(op) => op.as_matrix().rows(),
        Frechet::NotDifferentiable(_) => return Err(metproj_core::Error::RegionViolation.into()),
    };
    Ok(json!({
        "center": c,
        "radius": r,
        "cases": [
            ball_case(&ball, &[1.5, 1.0], &[&[1.0, -2.0]])?,
            ball_case(&ball, &exterior, &[&[1.0, 0.0]])?,
            ball_case(&ball, &[3.0, 1.0], &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]])?,
        ],
        "exterior_coordinate_form": coordinate,
        "exterior_max_abs_difference": max_abs_diff(&library, &coordinate),
    }))
}

fn soc_case(point: &[f64], directions: &[&[f64]]) -> Result<Value, CliError> {
    let z = SocPoint::from_slice(point)?;
    let tol = crate::eval::DEFAULT_TOLERANCE;
    let region = soc::classify_point(&z, tol)?;
    let mut dirs = Vec::new();
    for h in directions {
        dirs.push(json!({
            "direction": h,
            "value": soc::directional_derivative(&z, &v(h), tol)?.into_vec(),
        }));
    }
    Ok(json!({
        "point": point,
        "region": soc_label(region.label),
        "projection": soc::project(&z).into_vec(),
        "derivative": derivative_json(&soc::frechet_derivative(&z, tol)?),
        "directional": dirs,
    }))
}

/// Jacobian of the projection onto the cone in R^3 at a point with
/// `|z1| < s = |(z2, z3)|`, written by coordinates. `squared_z1` swaps the
/// bottom-right `z1 z2^2` term for `z1^2 z2^2`.
fn soc3_coordinate_form(z: [f64; 3], squared_z1: bool) -> Vec<Vec<f64>> {
    let [z1, z2, z3] = z;
    let s2 = z2 * z2 + z3 * z3;
    let s3 = s2.powf(1.5);
    let d = 2.0 * s3;
    let corner = if squared_z1 { z1 * z1 * z2 * z2 } else { z1 * z2 * z2 };
    vec![
        vec![s3 / d, z2 * s2 / d, z3 * s2 / d],
        vec![z2 * s2 / d, (s3 + z1 * z3 * z3) / d, -z1 * z2 * z3 / d],
        vec![z3 * s2 / d, -z1 * z2 * z3 / d, (s3 + corner) / d],
    ]
}

fn soc_three() -> Result<Value, CliError> {
    let outside = [2.0, 3.0, 4.0];
    let library = match soc::frechet_derivative(&SocPoint::from_slice(&outside)?, crate::eval::DEFAULT_TOLERANCE)? {
        Frechet::Operator(op) => op.as_matrix().rows(),
        Frechet::NotDifferentiable(_) => return Err(metproj_core::Error::RegionViolation.into()),
    };
    let coordinate = soc3_coordinate_form(outside, false);
    let squared = soc3_coordinate_form(outside, true);
    Ok(json!({
        "cases": [
            soc_case(&[2.0, 1.0, 0.0], &[&[0.3, -1.0, 2.0]])?,
            soc_case(&[-2.0, 1.0, 0.0], &[&[0.3, -1.0, 2.0]])?,
            soc_case(&outside, &[&[1.0, 0.0, 0.0]])?,
            soc_case(&[1.0, 0.6, 0.8], &[&[1.0, 0.0, 0.0], &[-1.0, 0.6, 0.8], &[1.0, -0.6, -0.8]])?,
        ],
        "outside_coordinate_form": coordinate,
        "outside_max_abs_difference": max_abs_diff(&library, &coordinate),
        "outside_entry_3_3": {
            "jacobian": library[2][2],
            "with_z1_z2_squared": coordinate[2][2],
            "with_z1_squared_z2_squared": squared[2][2],
        },
    }))
}

/// At the origin the directional derivative is the projection itself, so
/// `h` and `-h` do not add up to zero.
fn soc_origin() -> Result<Value, CliError> {
    let z = SocPoint::from_slice(&[0.0, 0.0, 0.0])?;
    let tol = crate::eval::DEFAULT_TOLERANCE;
    let h = v(&[1.0, 0.0, 0.0]);
    let plus = soc::directional_derivative(&z, &h, tol)?;
    let minus = soc::directional_derivative(&z, &h.neg(), tol)?;
    Ok(json!({
        "point": z.to_vector().into_vec(),
        "region": soc_label(soc::classify_point(&z, tol)?.label),
        "direction": h.as_slice(),
        "value": plus.as_slice(),
        "negated_direction_value": minus.as_slice(),
        "additivity_defect": plus.add(&minus)?.norm(),
    }))
}

pub fn examples() -> Result<Value, CliError> {
    Ok(json!({
        "ball_line": ball_line()?,
        "ball_disk": ball_disk()?,
        "soc_three": soc_three()?,
        "soc_origin": soc_origin()?,
    }))
}
