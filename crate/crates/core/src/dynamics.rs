//! The stiff planar system, its Heun discretisation and the one-dimensional
//! map obtained by restricting the discretisation to the invariant `x2` axis.
//!
//! The vector field is
//!
//! ```text
//! x1' = -2 x1 - x1^2 / (1 + x2^4)
//! x2' = -λ x2 - x2^2 / (1 + x1^4)
//! ```
//!
//! with λ = 30 for the system studied here, and Heun's method with step `h`
//! gives `F(x) = x + h/2 (f(x) + f(x + h f(x)))`.

use thiserror::Error;

use crate::interval::{Interval, Rect, Result as IvResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("Schwarzian undefined at critical point x = {x} (g'(x) = {derivative:e})")]
    CriticalPoint { x: f64, derivative: f64 },
}

/// Stiffness coefficient and step size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorFieldParams {
    pub lambda_stiff: f64,
    pub h: f64,
}

impl Default for VectorFieldParams {
    fn default() -> Self {
        VectorFieldParams {
            lambda_stiff: 30.0,
            h: 0.1,
        }
    }
}

impl VectorFieldParams {
    pub fn with_lambda(lambda_stiff: f64) -> Self {
        VectorFieldParams {
            lambda_stiff,
            ..Default::default()
        }
    }

    fn is_reference(&self) -> bool {
        self.lambda_stiff == 30.0 && self.h == 0.1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub const fn new(x1: f64, x2: f64) -> Self {
        Point2 { x1, x2 }
    }

    pub fn sup_norm(&self) -> f64 {
        self.x1.abs().max(self.x2.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }
}

pub fn vector_field(p: Point2, params: &VectorFieldParams) -> Point2 {
    let (x1, x2) = (p.x1, p.x2);
    Point2 {
        x1: -2.0 * x1 - x1 * x1 / (1.0 + x2.powi(4)),
        x2: -params.lambda_stiff * x2 - x2 * x2 / (1.0 + x1.powi(4)),
    }
}

/// One Heun step in predictor-corrector form.
pub fn heun_map(p: Point2, params: &VectorFieldParams) -> Point2 {
    let h = params.h;
    let k1 = vector_field(p, params);
    let predictor = Point2::new(p.x1 + h * k1.x1, p.x2 + h * k1.x2);
    let k2 = vector_field(predictor, params);
    let half = h / 2.0;
    Point2::new(
        p.x1 + half * (k1.x1 + k2.x1),
        p.x2 + half * (k1.x2 + k2.x2),
    )
}

/// Step size and stiffness as intervals, for the enclosure of `F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalParams {
    pub h: Interval,
    pub lambda_stiff: Interval,
}

impl IntervalParams {
    /// `h` enclosing exactly 1/10 and λ = 30.
    pub fn reference() -> Self {
        IntervalParams {
            h: Interval::from_decimal("0.1").expect("literal"),
            lambda_stiff: Interval::point(30.0).expect("literal"),
        }
    }
}

fn vector_field_iv(x1: Interval, x2: Interval, params: &IntervalParams) -> IvResult<Rect> {
    let one = Interval::point(1.0)?;
    let d1 = x1.scale(-2.0)?.sub(&x1.powi(2)?.div(&one.add(&x2.powi(4)?)?)?)?;
    let d2 = params
        .lambda_stiff
        .neg()
        .mul(&x2)?
        .sub(&x2.powi(2)?.div(&one.add(&x1.powi(4)?)?)?)?;
    Ok(Rect::new(d1, d2))
}

/// Interval enclosure of `F` over a box, evaluated as
/// `k1 = f(y); k2 = f(y + h k1); y + (h/2)(k1 + k2)`.
pub fn heun_map_iv(b: &Rect, params: &IntervalParams) -> IvResult<Rect> {
    let h = params.h;
    let k1 = vector_field_iv(b.x1, b.x2, params)?;
    let y1 = b.x1.add(&h.mul(&k1.x1)?)?;
    let y2 = b.x2.add(&h.mul(&k1.x2)?)?;
    let k2 = vector_field_iv(y1, y2, params)?;
    let half = h.scale(0.5)?;
    Ok(Rect::new(
        b.x1.add(&half.mul(&k1.x1.add(&k2.x1)?)?)?,
        b.x2.add(&half.mul(&k1.x2.add(&k2.x2)?)?)?,
    ))
}

/// The quartic `g(x) = 5/2 x - 1/10 x^2 - 1/50 x^3 - 1/2000 x^4`, the
/// restriction of `F` to the `x2` axis for λ = 30, h = 0.1.
pub fn reference_quartic(x: f64) -> f64 {
    2.5 * x - x * x / 10.0 - x * x * x / 50.0 - x * x * x * x / 2000.0
}

/// Restriction of `F` to the invariant `x2` axis.
pub fn restricted_map_g(x: f64, params: &VectorFieldParams) -> f64 {
    if params.is_reference() {
        reference_quartic(x)
    } else {
        heun_map(Point2::new(0.0, x), params).x2
    }
}

/// Dense polynomial, coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0.0) + other.0.get(i).unwrap_or(&0.0))
                .collect(),
        )
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    fn scale(&self, c: f64) -> Poly {
        Poly(self.0.iter().map(|a| a * c).collect())
    }
}

/// Polynomial form of the restricted map `g_λ`.
///
/// For the reference parameters the printed quartic coefficients are used
/// directly. Otherwise the axis restriction of the Heun step is expanded
/// symbolically: with `f(x) = -λx - x^2` and `q = x + h f(x)`,
/// `g = x + h/2 (f(x) + f(q))`.
pub fn restricted_poly(params: &VectorFieldParams) -> Poly {
    if params.is_reference() {
        return Poly(vec![0.0, 2.5, -0.1, -0.02, -0.0005]);
    }
    expand_restriction(params)
}

pub(crate) fn expand_restriction(params: &VectorFieldParams) -> Poly {
    let (lambda, h) = (params.lambda_stiff, params.h);
    let field = |p: &Poly| p.scale(-lambda).add(&p.mul(p).scale(-1.0));
    let x = Poly(vec![0.0, 1.0]);
    let fx = field(&x);
    let q = x.add(&fx.scale(h));
    let fq = field(&q);
    x.add(&fx.add(&fq).scale(h / 2.0))
}

/// `|g'(x)|` below this is treated as a critical point.
pub const CRITICAL_TOLERANCE: f64 = 1e-5;

/// Schwarzian derivative `g'''/g' - 3/2 (g''/g')^2` of the restricted map.
pub fn schwarzian_g(x: f64, params: &VectorFieldParams) -> Result<f64, DynamicsError> {
    let g = restricted_poly(params);
    let d1 = g.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let g1 = d1.eval(x);
    if g1.abs() < CRITICAL_TOLERANCE {
        return Err(DynamicsError::CriticalPoint { x, derivative: g1 });
    }
    let ratio = d2.eval(x) / g1;
    Ok(d3.eval(x) / g1 - 1.5 * ratio * ratio)
}

/// Stability function of Heun's method, `R(z) = 1 + z + z^2/2`.
pub fn stability_r(z: f64) -> f64 {
    1.0 + z * (1.0 + z / 2.0)
}

/// Eigenvalues of `DF(0)`: `(R(-2h), R(-λh))`.
pub fn jacobian_eigs_at_origin(params: &VectorFieldParams) -> (f64, f64) {
    (
        stability_r(-2.0 * params.h),
        stability_r(-params.lambda_stiff * params.h),
    )
}

/// Central-difference Jacobian of `F` at `p`, rows are output components.
pub fn fd_jacobian(p: Point2, params: &VectorFieldParams, step: f64) -> [[f64; 2]; 2] {
    let col = |dx: Point2| {
        let plus = heun_map(Point2::new(p.x1 + dx.x1, p.x2 + dx.x2), params);
        let minus = heun_map(Point2::new(p.x1 - dx.x1, p.x2 - dx.x2), params);
        (
            (plus.x1 - minus.x1) / (2.0 * step),
            (plus.x2 - minus.x2) / (2.0 * step),
        )
    };
    let (a11, a21) = col(Point2::new(step, 0.0));
    let (a12, a22) = col(Point2::new(0.0, step));
    [[a11, a12], [a21, a22]]
}

/// Finite-difference step for the Jacobian cross-check.
pub const FD_STEP: f64 = 1e-6;

/// Real eigenvalues of a 2x2 matrix in ascending order, `None` if complex.
pub fn eigenvalues_2x2(m: [[f64; 2]; 2]) -> Option<(f64, f64)> {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = tr * tr / 4.0 - det;
    if disc < 0.0 {
        return None;
    }
    let r = disc.sqrt();
    Some((tr / 2.0 - r, tr / 2.0 + r))
}

/// Eigenvalues of the finite-difference Jacobian of `F` at the origin.
pub fn fd_eigs_at_origin(params: &VectorFieldParams) -> Option<(f64, f64)> {
    eigenvalues_2x2(fd_jacobian(Point2::default(), params, FD_STEP))
}

/// `0 <= F(p).x1 <= 0.83 p.x1`, the exponential approach to the `x2` axis.
pub fn contraction_bound_check(p: Point2, params: &VectorFieldParams) -> bool {
    let next = heun_map(p, params).x1;
    0.0 <= next && next <= 0.83 * p.x1
}
