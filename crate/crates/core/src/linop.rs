//! Linear operators on R^m with tagged closed forms.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Matrix, Vector};

/// Closed form of a [`LinOp`].
#[derive(Debug, Clone, PartialEq)]
pub enum OpForm {
    Identity,
    Zero,
    /// `u -> (r/|b|) (u - (<b,u>/|b|^2) b)`: the derivative of the ball
    /// projection at an exterior point, with `b = x - c`.
    BallTangential { base: Vector, radius: f64 },
    /// Jacobian of the second-order-cone projection at a point outside `K ∪ -K`.
    SocJacobian { z: Vector },
    Dense(Matrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinOp {
    dim: usize,
    form: OpForm,
}

impl LinOp {
    pub fn identity(dim: usize) -> Self {
        LinOp { dim, form: OpForm::Identity }
    }

    pub fn zero(dim: usize) -> Self {
        LinOp { dim, form: OpForm::Zero }
    }

    pub fn ball_tangential(base: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::NonPositiveRadius(radius));
        }
        if base.norm_squared() == 0.0 {
            return Err(Error::ZeroBase);
        }
        Ok(LinOp { dim: base.len(), form: OpForm::BallTangential { base, radius } })
    }

    /// Requires `z = (z1, z2)` with `m >= 2` and `z2 != 0`.
    pub fn soc_jacobian(z: Vector) -> Result<Self> {
        if z.len() < 2 {
            return Err(Error::ConeTooSmall(z.len()));
        }
        if norm(&z.as_slice()[1..]) == 0.0 {
            return Err(Error::ZeroBase);
        }
        Ok(LinOp { dim: z.len(), form: OpForm::SocJacobian { z } })
    }

    pub fn dense(matrix: Matrix) -> Self {
        LinOp { dim: matrix.dim(), form: OpForm::Dense(matrix) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &OpForm {
        &self.form
    }

    pub fn apply(&self, u: &Vector) -> Result<Vector> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: u.len() });
        }
        let out = match &self.form {
            OpForm::Identity => u.clone(),
            OpForm::Zero => Vector::zeros(self.dim),
            OpForm::BallTangential { base, radius } => {
                let nb2 = base.norm_squared();
                let scale = radius / libm::sqrt(nb2);
                let a = dot(base.as_slice(), u.as_slice()) / nb2;
                u.zip_with(base, |ui, bi| scale * (ui - a * bi))
            }
            OpForm::SocJacobian { z } => soc_jacobian_apply(z.as_slice(), u.as_slice()),
            OpForm::Dense(m) => m.mul_vec(u)?,
        };
        Ok(out)
    }

    /// Dense materialization; column `j` is `apply(e_j)`.
    pub fn as_matrix(&self) -> Matrix {
        match &self.form {
            OpForm::Identity => Matrix::identity(self.dim),
            OpForm::Zero => Matrix::zeros(self.dim),
            OpForm::Dense(m) => m.clone(),
            _ => {
                let columns: Vec<Vector> = (0..self.dim)
                    .map(|j| self.apply(&Vector::basis(self.dim, j)).expect("dimension matches"))
                    .collect();
                Matrix::from_columns(&columns)
            }
        }
    }

    /// Power-iteration estimate of the spectral norm, run on `A A^T`.
    ///
    /// The estimate never decreases with more iterations since `A A^T` is
    /// positive semidefinite.
    pub fn operator_norm_estimate(&self, iterations: usize) -> Result<f64> {
        if iterations == 0 {
            return Err(Error::InvalidArgument("iterations must be >= 1"));
        }
        match self.form {
            OpForm::Identity => return Ok(1.0),
            OpForm::Zero => return Ok(0.0),
            _ => {}
        }
        let a = self.as_matrix();
        let gram = a.matmul(&a.transpose())?;
        let n = self.dim;
        let mut v: Vec<f64> = (0..n).map(|j| 1.0 + 1.0 / (2.0 + j as f64)).collect();
        let nv = norm(&v);
        v.iter_mut().for_each(|x| *x /= nv);
        for _ in 0..iterations {
            let w = gram.mul_vec(&Vector::from_raw(v.clone()))?.into_vec();
            let nw = norm(&w);
            if nw == 0.0 {
                return Ok(0.0);
            }
            v = w.into_iter().map(|x| x / nw).collect();
        }
        let gv = gram.mul_vec(&Vector::from_raw(v.clone()))?;
        let rayleigh = dot(&v, gv.as_slice()).max(0.0);
        Ok(libm::sqrt(rayleigh))
    }
}

/// Block formula
/// `½(1 + z1/|z2|) I + ½ [[-z1/|z2|, ẑ2^T], [ẑ2, -(z1/|z2|) ẑ2 ẑ2^T]]`
/// applied to `u`, with `ẑ2 = z2/|z2|`.
fn soc_jacobian_apply(z: &[f64], u: &[f64]) -> Vector {
    let (z1, z2) = (z[0], &z[1..]);
    let (u1, u2) = (u[0], &u[1..]);
    let s = norm(z2);
    let q = z1 / s;
    let zbar: Vec<f64> = z2.iter().map(|v| v / s).collect();
    let zbar_u2 = dot(&zbar, u2);
    let diag = 0.5 * (1.0 + q);
    let mut out = Vec::with_capacity(z.len());
    out.push(diag * u1 + 0.5 * (-q * u1 + zbar_u2));
    for (ui, zi) in u2.iter().zip(&zbar) {
        out.push(diag * ui + 0.5 * (zi * u1 - q * zi * zbar_u2));
    }
    Vector::from_raw(out)
}

/// Outcome of a Fréchet derivative query.
///
/// `R` carries the region classification that ruled differentiability out.
#[derive(Debug, Clone, PartialEq)]
pub enum Frechet<R> {
    Operator(LinOp),
    NotDifferentiable(R),
}

impl<R> Frechet<R> {
    pub fn operator(&self) -> Option<&LinOp> {
        match self {
            Frechet::Operator(op) => Some(op),
            Frechet::NotDifferentiable(_) => None,
        }
    }

    pub fn is_differentiable(&self) -> bool {
        matches!(self, Frechet::Operator(_))
    }
}
