//! Projection onto a closed Euclidean ball `B(c, r)` and its derivatives.
//!
//! The projection is the identity inside the ball and radial scaling onto
//! the sphere outside it. It is strictly Fréchet differentiable off the
//! sphere (identity inside, a scaled tangential projector outside) and only
//! directionally differentiable on it, where the directional derivative
//! depends on whether the direction points weakly outward or strictly
//! inward.

use crate::error::{Error, Result};
use crate::linalg::{dot, Vector};
use crate::linop::{Frechet, LinOp};

/// Closed ball with center `c` and radius `r > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    center: Vector,
    radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallLabel {
    Interior,
    Exterior,
    Boundary,
}

/// Point classification relative to a ball, with the data that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallRegion {
    pub label: BallLabel,
    /// `|x - c| - r`.
    pub signed_distance: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionLabel {
    /// `|x + t w - c| >= r` for all small `t > 0`.
    Up,
    /// `|x + t w - c| < r` for all small `t > 0`.
    Down,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionClass {
    pub label: DirectionLabel,
    pub boundary_point: Vector,
    pub direction: Vector,
}

impl Ball {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::NonPositiveRadius(radius));
        }
        Ok(Ball { center, radius })
    }

    /// `B(0, r)` in R^dim.
    pub fn origin(dim: usize, radius: f64) -> Result<Self> {
        Self::new(Vector::zeros(dim), radius)
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// `1e-9 * max(1, r)`.
    pub fn default_tolerance(&self) -> f64 {
        1e-9 * self.radius.max(1.0)
    }

    pub fn project(&self, x: &Vector) -> Result<Vector> {
        let d = x.sub(&self.center)?;
        let nd = d.norm();
        if nd <= self.radius {
            Ok(x.clone())
        } else {
            self.center.axpy(self.radius / nd, &d)
        }
    }

    pub fn classify_point(&self, x: &Vector, tol: f64) -> Result<BallRegion> {
        if !(tol >= 0.0) {
            return Err(Error::InvalidArgument("tolerance must be >= 0"));
        }
        let signed_distance = x.distance(&self.center)? - self.radius;
        let label = if signed_distance < -tol {
            BallLabel::Interior
        } else if signed_distance > tol {
            BallLabel::Exterior
        } else {
            BallLabel::Boundary
        };
        Ok(BallRegion { label, signed_distance, tolerance: tol })
    }

    /// Identity on the interior, the tangential operator
    /// `u -> (r/|x-c|)(u - <x-c,u>/|x-c|^2 (x-c))` on the exterior, and no
    /// derivative inside the boundary band.
    pub fn frechet_derivative(&self, x: &Vector, tol: f64) -> Result<Frechet<BallRegion>> {
        let region = self.classify_point(x, tol)?;
        Ok(match region.label {
            BallLabel::Interior => Frechet::Operator(LinOp::identity(self.dim())),
            BallLabel::Exterior => {
                Frechet::Operator(LinOp::ball_tangential(x.sub(&self.center)?, self.radius)?)
            }
            BallLabel::Boundary => Frechet::NotDifferentiable(region),
        })
    }

    /// Classifies `w` at a boundary point by the sign of `<x - c, w>`; the
    /// tangential case is `Up` since `|x - c + t w|^2 = r^2 + t^2 |w|^2`.
    pub fn classify_direction(&self, x: &Vector, w: &Vector) -> Result<DirectionClass> {
        let d = x.sub(&self.center)?;
        d.check_dim(w)?;
        let signed_distance = d.norm() - self.radius;
        if signed_distance.abs() > 1e-9 * self.radius {
            return Err(Error::NotOnBoundary { signed_distance });
        }
        if w.norm_squared() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(DirectionClass {
            label: direction_label(&d, w),
            boundary_point: x.clone(),
            direction: w.clone(),
        })
    }

    /// The sign test behind [`Ball::classify_direction`] without the boundary check.
    pub fn direction_label(&self, x: &Vector, w: &Vector) -> Result<DirectionLabel> {
        let d = x.sub(&self.center)?;
        d.check_dim(w)?;
        if w.norm_squared() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(direction_label(&d, w))
    }

    /// Gâteaux directional derivative `P'(x)(w)` in every region.
    ///
    /// On the boundary: `w - <x-c,w>(x-c)/r^2` for `Up` directions and `w` for
    /// `Down` ones. The outward normal `w = x - c` falls in the `Up` case and
    /// yields zero.
    pub fn directional_derivative(&self, x: &Vector, w: &Vector, tol: f64) -> Result<Vector> {
        x.check_dim(w)?;
        if w.norm_squared() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        match self.frechet_derivative(x, tol)? {
            Frechet::Operator(op) => op.apply(w),
            Frechet::NotDifferentiable(_) => {
                let d = x.sub(&self.center)?;
                Ok(match direction_label(&d, w) {
                    DirectionLabel::Up => {
                        let k = dot(d.as_slice(), w.as_slice()) / (self.radius * self.radius);
                        w.zip_with(&d, |wi, di| wi - k * di)
                    }
                    DirectionLabel::Down => w.clone(),
                })
            }
        }
    }
}

fn direction_label(offset: &Vector, w: &Vector) -> DirectionLabel {
    if dot(offset.as_slice(), w.as_slice()) >= 0.0 {
        DirectionLabel::Up
    } else {
        DirectionLabel::Down
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(x: &[f64]) -> Vector {
        Vector::from_slice(x).unwrap()
    }

    fn unit_ball() -> Ball {
        Ball::origin(2, 1.0).unwrap()
    }

    fn close(a: &Vector, b: &[f64], tol: f64) -> bool {
        a.as_slice().iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn project_examples() {
        let b = unit_ball();
        assert_eq!(b.project(&v(&[0.3, 0.4])).unwrap(), v(&[0.3, 0.4]));
        assert_eq!(b.project(&v(&[2.0, 0.0])).unwrap(), v(&[1.0, 0.0]));
        let shifted = Ball::new(v(&[1.0, 1.0]), 2.0).unwrap();
        let p = shifted.project(&v(&[4.0, 5.0])).unwrap();
        assert!(close(&p, &[2.2, 2.6], 1e-15), "{p:?}");
    }

    #[test]
    fn project_matches_boundary_sampling() {
        // Nearest point on the circle |y - (1,1)| = 2 by dense angular sampling.
        let shifted = Ball::new(v(&[1.0, 1.0]), 2.0).unwrap();
        let x = [4.0, 5.0];
        let n = 200_000;
        let mut best = (f64::INFINITY, [0.0, 0.0]);
        for k in 0..n {
            let th = 2.0 * core::f64::consts::PI * k as f64 / n as f64;
            let y = [1.0 + 2.0 * libm::cos(th), 1.0 + 2.0 * libm::sin(th)];
            let d = libm::hypot(x[0] - y[0], x[1] - y[1]);
            if d < best.0 {
                best = (d, y);
            }
        }
        let p = shifted.project(&v(&x)).unwrap();
        assert!(close(&p, &best.1, 1e-4));
    }

    #[test]
    fn classify_point_examples() {
        let b = unit_ball();
        assert_eq!(b.classify_point(&v(&[0.0, 0.0]), 1e-9).unwrap().label, BallLabel::Interior);
        assert_eq!(b.classify_point(&v(&[1.0, 0.0]), 1e-9).unwrap().label, BallLabel::Boundary);
        let shifted = Ball::new(v(&[1.0, 1.0]), 2.0).unwrap();
        let r = shifted.classify_point(&v(&[4.0, 5.0]), 1e-9).unwrap();
        assert_eq!(r.label, BallLabel::Exterior);
        assert_eq!(r.signed_distance, 3.0);
        assert!(b.classify_point(&v(&[0.0, 0.0]), -1.0).is_err());
    }

    #[test]
    fn frechet_examples() {
        let b = unit_ball();
        let d = b.frechet_derivative(&v(&[0.5, 0.0]), 1e-9).unwrap();
        assert_eq!(d.operator(), Some(&LinOp::identity(2)));
        let d = b.frechet_derivative(&v(&[2.0, 0.0]), 1e-9).unwrap();
        assert_eq!(d.operator().unwrap().as_matrix().rows(), vec![vec![0.0, 0.0], vec![0.0, 0.5]]);
        match b.frechet_derivative(&v(&[1.0, 0.0]), 1e-9).unwrap() {
            Frechet::NotDifferentiable(r) => assert_eq!(r.label, BallLabel::Boundary),
            other => panic!("expected no derivative, got {other:?}"),
        }
    }

    #[test]
    fn classify_direction_examples() {
        let b = unit_ball();
        let x = v(&[1.0, 0.0]);
        let up = |w: &[f64]| b.classify_direction(&x, &v(w)).unwrap().label;
        assert_eq!(up(&[1.0, 0.0]), DirectionLabel::Up);
        assert_eq!(up(&[-1.0, 0.0]), DirectionLabel::Down);
        assert_eq!(up(&[0.0, 1.0]), DirectionLabel::Up);
        assert_eq!(b.classify_direction(&x, &v(&[0.0, 0.0])), Err(Error::ZeroDirection));
        assert!(matches!(
            b.classify_direction(&v(&[0.5, 0.0]), &v(&[1.0, 0.0])),
            Err(Error::NotOnBoundary { .. })
        ));
    }

    #[test]
    fn classify_direction_agrees_with_definition() {
        // Definitional oracle: Up iff |x + t w - c| >= r at every sampled t.
        let b = Ball::new(v(&[0.5, -1.0, 2.0]), 1.5).unwrap();
        let dirs = [
            [1.0, 0.3, -0.2],
            [-0.4, 0.9, 0.1],
            [0.0, 0.0, 1.0],
            [-1.0, -1.0, -1.0],
            [0.2, -0.7, 0.5],
        ];
        let x = v(&[0.5 + 1.5, -1.0, 2.0]);
        for w in dirs {
            let w = v(&w);
            let defined_up = (3..=8).all(|k| {
                let t = libm::pow(10.0, -(k as f64));
                x.axpy(t, &w).unwrap().distance(b.center()).unwrap() >= b.radius()
            });
            let label = b.classify_direction(&x, &w).unwrap().label;
            assert_eq!(label == DirectionLabel::Up, defined_up, "w = {w:?}");
        }
        // Tangential direction on the sphere is Up.
        let t = b.classify_direction(&x, &v(&[0.0, 1.0, 0.0])).unwrap();
        assert_eq!(t.label, DirectionLabel::Up);
    }

    #[test]
    fn directional_examples() {
        let b = unit_ball();
        let x = v(&[1.0, 0.0]);
        assert_eq!(b.directional_derivative(&x, &v(&[0.0, 1.0]), 1e-9).unwrap(), v(&[0.0, 1.0]));
        assert_eq!(b.directional_derivative(&x, &v(&[1.0, 0.0]), 1e-9).unwrap(), v(&[0.0, 0.0]));
        let shifted = Ball::new(v(&[1.0, 1.0]), 2.0).unwrap();
        let x = v(&[3.0, 1.0]);
        let w = v(&[-1.0, -1.0]);
        let dd = shifted.directional_derivative(&x, &w, 1e-9).unwrap();
        assert_eq!(dd, w);
        // One-sided difference at t = 1e-6.
        let t = 1e-6;
        let fd = shifted
            .project(&x.axpy(t, &w).unwrap())
            .unwrap()
            .sub(&shifted.project(&x).unwrap())
            .unwrap()
            .scale(1.0 / t);
        assert!(close(&fd, dd.as_slice(), 1e-5));
        assert_eq!(b.directional_derivative(&x, &v(&[0.0, 0.0]), 1e-9), Err(Error::ZeroDirection));
    }

    #[test]
    fn radius_must_be_positive() {
        assert_eq!(Ball::origin(2, 0.0), Err(Error::NonPositiveRadius(0.0)));
        assert!(Ball::origin(2, -1.0).is_err());
        assert!(Ball::origin(2, f64::NAN).is_err());
    }

    #[test]
    fn one_dimensional_three_cases() {
        let b = Ball::new(v(&[1.0]), 2.0).unwrap();
        let op = |x: f64| b.frechet_derivative(&v(&[x]), 1e-9).unwrap();
        assert_eq!(op(1.5).operator().unwrap().as_matrix().rows(), vec![vec![1.0]]);
        assert_eq!(op(4.0).operator().unwrap().as_matrix().rows(), vec![vec![0.0]]);
        assert!(!op(3.0).is_differentiable());
        assert!(!op(-1.0).is_differentiable());
    }
}
