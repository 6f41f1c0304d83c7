//! The second-order (Lorentz) cone `K = {(z1, z2) : z1 >= |z2|}` in R^m.
//!
//! Every `z` splits as `λ1 c1 + λ2 c2` with `λi = z1 + (-1)^i |z2|` and
//! `ci = ½(1, (-1)^i ẑ2)`; the projection keeps the nonnegative parts of
//! the two eigenvalues. The projection is strictly Fréchet differentiable on
//! `int K`, `-int K` and outside `K ∪ -K`, and only directionally
//! differentiable on `bd K ∪ -bd K`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Vector};
use crate::linop::{Frechet, LinOp};

/// A point `z = (z1, z2)` of `R x R^{m-1}`, `m >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SocPoint {
    z1: f64,
    z2: Vector,
}

impl SocPoint {
    pub fn new(z1: f64, z2: Vector) -> Result<Self> {
        if !z1.is_finite() {
            return Err(Error::NonFinite { index: 0 });
        }
        Ok(SocPoint { z1, z2 })
    }

    /// Splits a vector of length `m >= 2` into head and tail.
    pub fn from_vector(z: &Vector) -> Result<Self> {
        if z.len() < 2 {
            return Err(Error::ConeTooSmall(z.len()));
        }
        let s = z.as_slice();
        Ok(SocPoint { z1: s[0], z2: Vector::from_raw(s[1..].to_vec()) })
    }

    pub fn from_slice(z: &[f64]) -> Result<Self> {
        Self::from_vector(&Vector::from_slice(z)?)
    }

    pub fn z1(&self) -> f64 {
        self.z1
    }

    pub fn z2(&self) -> &Vector {
        &self.z2
    }

    pub fn dim(&self) -> usize {
        self.z2.len() + 1
    }

    pub fn to_vector(&self) -> Vector {
        let mut out = Vec::with_capacity(self.dim());
        out.push(self.z1);
        out.extend_from_slice(self.z2.as_slice());
        Vector::from_raw(out)
    }

    pub fn neg(&self) -> SocPoint {
        SocPoint { z1: -self.z1, z2: self.z2.neg() }
    }

    /// `(z1 - |z2|, -z1 - |z2|)`: positive first entry means `int K`,
    /// positive second entry means `-int K`.
    pub fn margins(&self) -> (f64, f64) {
        let s = self.z2.norm();
        (self.z1 - s, -self.z1 - s)
    }
}

/// Spectral data of a point relative to `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomp {
    pub lambda1: f64,
    pub lambda2: f64,
    pub c1: Vector,
    pub c2: Vector,
    pub zbar2: Vector,
    /// Set when `z2 = 0` and the fallback unit vector stood in for `z2/|z2|`.
    pub tie_broken: bool,
}

impl SpectralDecomp {
    /// `λ1 c1 + λ2 c2`.
    pub fn reconstruct(&self) -> Vector {
        self.c1.zip_with(&self.c2, |a, b| self.lambda1 * a + self.lambda2 * b)
    }
}

pub fn spectral_decompose(z: &SocPoint, fallback_unit: Option<&Vector>) -> Result<SpectralDecomp> {
    if let Some(w) = fallback_unit {
        if w.len() != z.z2.len() || (w.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::BadFallback);
        }
    }
    let s = z.z2.norm();
    let (zbar2, tie_broken) = if s > 0.0 {
        (z.z2.scale(1.0 / s), false)
    } else {
        let w = fallback_unit.cloned().unwrap_or_else(|| Vector::basis(z.z2.len(), 0));
        (w, true)
    };
    let half_frame = |sign: f64| {
        let mut c = Vec::with_capacity(z.dim());
        c.push(0.5);
        c.extend(zbar2.as_slice().iter().map(|v| 0.5 * sign * v));
        Vector::from_raw(c)
    };
    Ok(SpectralDecomp {
        lambda1: z.z1 - s,
        lambda2: z.z1 + s,
        c1: half_frame(-1.0),
        c2: half_frame(1.0),
        zbar2,
        tie_broken,
    })
}

/// `(λ1)+ c1 + (λ2)+ c2`.
pub fn project(z: &SocPoint) -> Vector {
    let sd = spectral_decompose(z, None).expect("no fallback supplied");
    project_from(&sd)
}

/// Projection computed with an explicit fallback unit vector for `z2 = 0`.
pub fn project_with_fallback(z: &SocPoint, fallback_unit: &Vector) -> Result<Vector> {
    Ok(project_from(&spectral_decompose(z, Some(fallback_unit))?))
}

fn project_from(sd: &SpectralDecomp) -> Vector {
    let (a, b) = (sd.lambda1.max(0.0), sd.lambda2.max(0.0));
    sd.c1.zip_with(&sd.c2, |x, y| a * x + b * y)
}

/// Projection of a plain vector of length `m >= 2`.
pub fn project_vector(z: &Vector) -> Result<Vector> {
    Ok(project(&SocPoint::from_vector(z)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SocLabel {
    IntK,
    IntNegK,
    Outside,
    BdK,
    BdNegK,
    Origin,
}

impl SocLabel {
    /// Labels on which the projection is Fréchet differentiable.
    pub fn is_smooth(self) -> bool {
        matches!(self, SocLabel::IntK | SocLabel::IntNegK | SocLabel::Outside)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SocRegion {
    pub label: SocLabel,
    /// `(z1 - |z2|, -z1 - |z2|)`.
    pub margins: (f64, f64),
    pub tolerance: f64,
}

pub fn classify_point(z: &SocPoint, tol: f64) -> Result<SocRegion> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument("tolerance must be >= 0"));
    }
    let margins = z.margins();
    let (pos, neg) = margins;
    let label = if libm::hypot(z.z1, z.z2.norm()) <= tol {
        SocLabel::Origin
    } else if pos > tol {
        SocLabel::IntK
    } else if neg > tol {
        SocLabel::IntNegK
    } else if pos.abs() <= tol {
        SocLabel::BdK
    } else if neg.abs() <= tol {
        SocLabel::BdNegK
    } else {
        SocLabel::Outside
    };
    Ok(SocRegion { label, margins, tolerance: tol })
}

/// `I` on `int K`, `0` on `-int K`, the block Jacobian outside `K ∪ -K`,
/// and no derivative on either boundary (including the origin).
pub fn frechet_derivative(z: &SocPoint, tol: f64) -> Result<Frechet<SocRegion>> {
    let region = classify_point(z, tol)?;
    let m = z.dim();
    Ok(match region.label {
        SocLabel::IntK => Frechet::Operator(LinOp::identity(m)),
        SocLabel::IntNegK => Frechet::Operator(LinOp::zero(m)),
        SocLabel::Outside => Frechet::Operator(LinOp::soc_jacobian(z.to_vector())?),
        SocLabel::BdK | SocLabel::BdNegK | SocLabel::Origin => Frechet::NotDifferentiable(region),
    })
}

/// Gâteaux directional derivative `P'(z)(h)`.
///
/// * `bd K \ {0}`: `h - 2 (c1(z)^T h)- c1(z)`
/// * `-bd K \ {0}`: `2 (c2(z)^T h)+ c2(z)`
/// * origin: `P(h)`
/// * smooth regions: the Fréchet derivative applied to `h`
pub fn directional_derivative(z: &SocPoint, h: &Vector, tol: f64) -> Result<Vector> {
    if h.len() != z.dim() {
        return Err(Error::DimensionMismatch { expected: z.dim(), found: h.len() });
    }
    if h.norm_squared() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    match frechet_derivative(z, tol)? {
        Frechet::Operator(op) => op.apply(h),
        Frechet::NotDifferentiable(region) => match region.label {
            SocLabel::BdK => {
                let c1 = spectral_decompose(z, None)?.c1;
                let k = dot(c1.as_slice(), h.as_slice()).min(0.0);
                Ok(h.zip_with(&c1, |hi, ci| hi - 2.0 * k * ci))
            }
            SocLabel::BdNegK => {
                let c2 = spectral_decompose(z, None)?.c2;
                let k = dot(c2.as_slice(), h.as_slice()).max(0.0);
                Ok(c2.scale(2.0 * k))
            }
            _ => project_vector(h),
        },
    }
}

/// `|z2|` of a plain vector's tail; used by samplers and tests.
pub fn tail_norm(z: &Vector) -> f64 {
    norm(&z.as_slice()[1..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(x: &[f64]) -> SocPoint {
        SocPoint::from_slice(x).unwrap()
    }

    fn v(x: &[f64]) -> Vector {
        Vector::from_slice(x).unwrap()
    }

    #[test]
    fn spectral_examples() {
        let sd = spectral_decompose(&p(&[0.0, 1.0, 0.0]), None).unwrap();
        assert_eq!((sd.lambda1, sd.lambda2), (-1.0, 1.0));
        assert_eq!(sd.c1, v(&[0.5, -0.5, 0.0]));
        assert_eq!(sd.c2, v(&[0.5, 0.5, 0.0]));
        assert!(!sd.tie_broken);
        assert_eq!(sd.reconstruct(), v(&[0.0, 1.0, 0.0]));

        let sd = spectral_decompose(&p(&[1.0, 0.0, 0.0]), None).unwrap();
        assert_eq!((sd.lambda1, sd.lambda2), (1.0, 1.0));
        assert_eq!(sd.zbar2, v(&[1.0, 0.0]));
        assert!(sd.tie_broken);
        assert_eq!(sd.c1, v(&[0.5, -0.5, 0.0]));
        assert_eq!(sd.c2, v(&[0.5, 0.5, 0.0]));

        let sd = spectral_decompose(&p(&[0.0, 0.0, 0.0]), None).unwrap();
        assert_eq!((sd.lambda1, sd.lambda2), (0.0, 0.0));
        assert_eq!(sd.reconstruct(), v(&[0.0, 0.0, 0.0]));
    }

    #[test]
    fn bad_fallback_rejected() {
        let z = p(&[1.0, 0.0, 0.0]);
        assert_eq!(spectral_decompose(&z, Some(&v(&[2.0, 0.0]))), Err(Error::BadFallback));
        assert_eq!(spectral_decompose(&z, Some(&v(&[1.0]))), Err(Error::BadFallback));
        let sd = spectral_decompose(&z, Some(&v(&[0.0, -1.0]))).unwrap();
        assert_eq!(sd.zbar2, v(&[0.0, -1.0]));
    }

    #[test]
    fn project_examples() {
        assert_eq!(project(&p(&[2.0, 1.0, 0.0])), v(&[2.0, 1.0, 0.0]));
        assert_eq!(project(&p(&[-2.0, 1.0, 0.0])), v(&[0.0, 0.0, 0.0]));
        assert_eq!(project(&p(&[0.0, 1.0, 0.0])), v(&[0.5, 0.5, 0.0]));
    }

    #[test]
    fn project_matches_discretized_minimization() {
        // z lies outside K, so its nearest point is on bd K = {(t, t cos a, t sin a)}.
        let z = [0.0, 1.0, 0.0];
        let mut best = (f64::INFINITY, [0.0; 3]);
        for i in 0..=2000 {
            let t = i as f64 / 1000.0;
            for k in 0..720 {
                let a = 2.0 * core::f64::consts::PI * k as f64 / 720.0;
                let y = [t, t * libm::cos(a), t * libm::sin(a)];
                let d = (0..3).map(|j| (z[j] - y[j]) * (z[j] - y[j])).sum::<f64>();
                if d < best.0 {
                    best = (d, y);
                }
            }
        }
        let pz = project(&p(&z));
        for j in 0..3 {
            assert!((pz[j] - best.1[j]).abs() < 2e-3, "{pz:?} vs {:?}", best.1);
        }
    }

    #[test]
    fn classify_examples() {
        let lab = |x: &[f64]| classify_point(&p(x), 1e-9).unwrap().label;
        assert_eq!(lab(&[2.0, 1.0, 0.0]), SocLabel::IntK);
        assert_eq!(lab(&[1.0, 1.0, 0.0]), SocLabel::BdK);
        assert_eq!(lab(&[0.0, 0.0, 0.0]), SocLabel::Origin);
        assert_eq!(lab(&[-2.0, 1.0, 0.0]), SocLabel::IntNegK);
        assert_eq!(lab(&[-1.0, 0.0, 1.0]), SocLabel::BdNegK);
        assert_eq!(lab(&[0.0, 1.0, 0.0]), SocLabel::Outside);
        assert!(classify_point(&p(&[0.0, 1.0]), f64::NAN).is_err());
    }

    #[test]
    fn frechet_examples() {
        let d = frechet_derivative(&p(&[2.0, 1.0, 0.0]), 1e-9).unwrap();
        assert_eq!(d.operator(), Some(&LinOp::identity(3)));
        let d = frechet_derivative(&p(&[-2.0, 1.0, 0.0]), 1e-9).unwrap();
        assert_eq!(d.operator(), Some(&LinOp::zero(3)));
        let d = frechet_derivative(&p(&[0.0, 1.0, 0.0]), 1e-9).unwrap();
        assert_eq!(
            d.operator().unwrap().as_matrix().rows(),
            vec![vec![0.5, 0.5, 0.0], vec![0.5, 0.5, 0.0], vec![0.0, 0.0, 0.5]]
        );
        match frechet_derivative(&p(&[1.0, 1.0, 0.0]), 1e-9).unwrap() {
            Frechet::NotDifferentiable(r) => assert_eq!(r.label, SocLabel::BdK),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn directional_examples() {
        let dd = directional_derivative(&p(&[1.0, 1.0, 0.0]), &v(&[1.0, 1.0, 0.0]), 1e-9).unwrap();
        assert_eq!(dd, v(&[1.0, 1.0, 0.0]));
        let dd = directional_derivative(&p(&[0.0, 0.0, 0.0]), &v(&[1.0, 0.0, 0.0]), 1e-9).unwrap();
        assert_eq!(dd, v(&[1.0, 0.0, 0.0]));
        let dd =
            directional_derivative(&p(&[-1.0, 1.0, 0.0]), &v(&[-1.0, 1.0, 0.0]), 1e-9).unwrap();
        assert_eq!(dd, v(&[0.0, 0.0, 0.0]));
        assert_eq!(
            directional_derivative(&p(&[1.0, 1.0, 0.0]), &v(&[0.0, 0.0, 0.0]), 1e-9),
            Err(Error::ZeroDirection)
        );
        assert!(directional_derivative(&p(&[1.0, 1.0, 0.0]), &v(&[1.0, 0.0]), 1e-9).is_err());
    }

    #[test]
    fn boundary_directionals_match_one_sided_differences() {
        let t = 1e-6;
        let cases: [(&[f64], &[f64]); 2] =
            [(&[1.0, 1.0, 0.0], &[1.0, 1.0, 0.0]), (&[-1.0, 1.0, 0.0], &[-1.0, 1.0, 0.0])];
        for (z, h) in cases {
            let (zv, hv) = (v(z), v(h));
            let fd = project_vector(&zv.axpy(t, &hv).unwrap())
                .unwrap()
                .sub(&project_vector(&zv).unwrap())
                .unwrap()
                .scale(1.0 / t);
            let dd = directional_derivative(&p(z), &hv, 1e-9).unwrap();
            assert!(fd.sub(&dd).unwrap().max_abs() < 1e-5, "{fd:?} vs {dd:?}");
        }
    }

    #[test]
    fn two_dimensional_cone() {
        // m = 2: K is the wedge z1 >= |z2|.
        assert_eq!(project(&p(&[0.0, 2.0])), v(&[1.0, 1.0]));
        assert_eq!(project(&p(&[0.0, -2.0])), v(&[1.0, -1.0]));
        assert!(SocPoint::from_slice(&[1.0]).is_err());
    }
}
