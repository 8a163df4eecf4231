//! The resolvent `R(λ, C) h`, the solution `f` of `λ f - C f = h`.
//!
//! Three independent routes:
//!
//! - **Recurrence**: forward substitution in coefficient space. Exact on
//!   truncations and used as the oracle for the other two.
//! - **Integral**: the closed formula
//!   `f(z) = h(z)/λ + λ^{-2} z^{1/λ-1} (1-z)^{-1/λ} ∫_0^z ζ^{-1/λ} (1-ζ)^{1/λ-1} h(ζ) dζ`
//!   evaluated pointwise with principal-branch powers.
//! - **Semigroup**: for `Re λ < 0`,
//!   `f = h/λ + λ^{-2} ∫_0^∞ e^{t/λ} S_t h dt`, integrated coefficientwise.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::operators::s_t_apply;
use crate::quadrature::GaussLegendre;
use crate::series::Poly;
use crate::weights::{sup_norm, WeightSpec};

/// The recurrence refuses `λ` this close to a diagonal value `1/(n+1)`.
pub const DIAGONAL_GUARD: f64 = 1e-12;

/// Multiplicative slack allowed by [`resolvent_bound_check`].
pub const BOUND_SLACK: f64 = 1e-6;

/// Fewest quadrature nodes accepted by the integral route.
pub const VANISHING_SLACK: f64 = 1e-9;
pub const MIN_QUADRATURE_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Recurrence,
    Integral,
    Semigroup,
}

fn check_lambda(lambda: Complex64) -> Result<()> {
    if !lambda.is_finite() || lambda.norm() == 0.0 {
        return Err(LabError::param(
            "lambda",
            format!("must be finite and nonzero, got {lambda}"),
        ));
    }
    Ok(())
}

/// Solves `(λ - 1/(n+1)) f̂(n) = ĥ(n) + (1/(n+1)) Σ_{k<n} f̂(k)` forward.
pub fn resolvent_recurrence(lambda: Complex64, h: &Poly) -> Result<Poly> {
    check_lambda(lambda)?;
    for n in 0..=h.degree() {
        let gap = lambda - 1.0 / (n as f64 + 1.0);
        if gap.norm() < DIAGONAL_GUARD {
            return Err(LabError::NearDiagonal {
                lambda: lambda.to_string(),
                denominator: n + 1,
                tolerance: DIAGONAL_GUARD,
            });
        }
    }
    let mut partial = Complex64::new(0.0, 0.0);
    let coeffs = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, &hn)| {
            let inv = 1.0 / (n as f64 + 1.0);
            let f = (hn + partial * inv) / (lambda - inv);
            partial += f;
            f
        })
        .collect();
    Ok(Poly::from_vec(coeffs))
}

/// `ξ^α = exp(α (ln|ξ| + i arg ξ))` with `arg ξ ∈ (-π, π)`.
pub fn branch_power(xi: Complex64, alpha: Complex64) -> Result<Complex64> {
    if !xi.is_finite() || (xi.im == 0.0 && xi.re <= 0.0) {
        return Err(LabError::OnBranchCut(xi.to_string()));
    }
    Ok((alpha * xi.ln()).exp())
}

/// Quadrature for the integral route, in the variable `s = -ln τ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralRule {
    pub panels: usize,
    pub nodes_per_panel: usize,
    /// Upper limit of `s` for an integrand decaying like `e^{-s}`; stretched
    /// by `1/d` when the decay rate `d` is below 1.
    pub s_max: f64,
}

impl Default for IntegralRule {
    fn default() -> Self {
        IntegralRule {
            panels: 4,
            nodes_per_panel: 256,
            s_max: 36.0,
        }
    }
}

/// Precomputed integral-route evaluator for one `(λ, h)` pair.
///
/// With `ζ = τ z` the powers of `z` cancel (`τ > 0` keeps `arg(τ z) = arg z`),
/// leaving
/// `f(z) = h(z)/λ + λ^{-2} (1-z)^{-1/λ} ∫_0^1 τ^{-1/λ} (1-τz)^{1/λ-1} h(τz) dτ`.
/// Near `τ = 0` the factor `τ^{-1/λ}` oscillates without bound when
/// `Re λ = 0`; `τ = e^{-s}` turns it into the damped `e^{s/λ - s}` on `[0, s_max]`.
#[derive(Debug, Clone)]
pub struct ResolventIntegral<'a> {
    lambda: Complex64,
    inv_lambda: Complex64,
    h: &'a Poly,
    /// `(τ_i, w_i e^{s_i/λ - s_i})`
    nodes: Vec<(f64, Complex64)>,
}

impl<'a> ResolventIntegral<'a> {
    pub fn new(lambda: Complex64, h: &'a Poly, rule: IntegralRule) -> Result<Self> {
        check_lambda(lambda)?;
        if rule.panels == 0 || rule.panels * rule.nodes_per_panel < MIN_QUADRATURE_NODES {
            return Err(LabError::param(
                "quadrature",
                format!(
                    "{} panels of {} nodes is below the minimum of {MIN_QUADRATURE_NODES} nodes",
                    rule.panels, rule.nodes_per_panel
                ),
            ));
        }
        if !(rule.s_max > 0.0 && rule.s_max.is_finite()) {
            return Err(LabError::param(
                "s_max",
                format!("must be positive, got {}", rule.s_max),
            ));
        }
        let inv_lambda = 1.0 / lambda;
        let order = h.vanishing_order();
        let bound = inv_lambda.re - 1.0;
        // the boundary case diverges logarithmically; rounding in 1/λ must not let it through
        if !h.is_zero() && (order as f64) <= bound + VANISHING_SLACK {
            return Err(LabError::VanishingOrder { order, bound });
        }
        let decay = if h.is_zero() {
            1.0
        } else {
            order as f64 - bound
        };
        let s_max = rule.s_max / decay.min(1.0);

        let gl = GaussLegendre::new(rule.nodes_per_panel)?;
        let nodes = gl
            .composite(0.0, s_max, rule.panels)
            .into_iter()
            .map(|(s, w)| ((-s).exp(), w * (inv_lambda * s - s).exp()))
            .collect();
        Ok(ResolventIntegral {
            lambda,
            inv_lambda,
            h,
            nodes,
        })
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !z.is_finite() || z.norm() >= 1.0 || (z.im == 0.0 && z.re <= 0.0) {
            return Err(LabError::OnBranchCut(z.to_string()));
        }
        let one = Complex64::new(1.0, 0.0);
        let exponent = self.inv_lambda - 1.0;
        let mut integral = Complex64::new(0.0, 0.0);
        for &(tau, weight) in &self.nodes {
            let zeta = z * tau;
            integral += weight * branch_power(one - zeta, exponent)? * self.h.eval(zeta);
        }
        let prefactor = branch_power(one - z, -self.inv_lambda)?;
        Ok(self.h.eval(z) / self.lambda + self.inv_lambda * self.inv_lambda * prefactor * integral)
    }
}

/// One-shot evaluation of the integral route at `z`.
pub fn resolvent_integral_eval(
    lambda: Complex64,
    h: &Poly,
    z: Complex64,
    rule: IntegralRule,
) -> Result<Complex64> {
    ResolventIntegral::new(lambda, h, rule)?.eval(z)
}

/// Quadrature for the semigroup route on `[0, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemigroupRule {
    pub t_max: f64,
    pub panels: usize,
    pub nodes_per_panel: usize,
    /// Required bound on `e^{t_max Re(1/λ)} / |Re(1/λ)|`.
    pub tail_tolerance: f64,
}

impl SemigroupRule {
    /// `t_max` one unit past the point where the tail bound meets
    /// `tail_tolerance`, with unit-width panels of 16 nodes.
    pub fn for_lambda(lambda: Complex64, tail_tolerance: f64) -> Result<Self> {
        check_lambda(lambda)?;
        let rate = (1.0 / lambda).re;
        if rate >= 0.0 {
            return Err(LabError::param(
                "lambda",
                format!("semigroup route needs Re λ < 0, got {lambda}"),
            ));
        }
        let t_max = ((tail_tolerance * rate.abs()).ln() / rate).max(0.0) + 1.0;
        Ok(SemigroupRule {
            t_max,
            panels: t_max.ceil() as usize,
            nodes_per_panel: 16,
            tail_tolerance,
        })
    }
}

/// Nodes on `[0, t_max]`. The first panel is split geometrically towards
/// 0: coefficient `n` of `S_t z^n` is `e^{-(n+1)t}`, a boundary layer of
/// width `1/(N+1)` that a single panel cannot resolve.
fn semigroup_nodes(gl: &GaussLegendre, rule: SemigroupRule, degree: usize) -> Vec<(f64, f64)> {
    let width = rule.t_max / rule.panels as f64;
    let levels = ((degree + 1) as f64).log2().ceil() as i32 + 2;
    let mut nodes = gl.composite(0.0, width * 0.5f64.powi(levels), 1);
    for j in (0..levels).rev() {
        let hi = width * 0.5f64.powi(j);
        nodes.extend(gl.composite(0.5 * hi, hi, 1));
    }
    if rule.panels > 1 {
        nodes.extend(gl.composite(width, rule.t_max, rule.panels - 1));
    }
    nodes
}

/// `h/λ + λ^{-2} ∫_0^{t_max} e^{t/λ} S_t h dt`, coefficientwise.
pub fn resolvent_semigroup(lambda: Complex64, h: &Poly, rule: SemigroupRule) -> Result<Poly> {
    check_lambda(lambda)?;
    let inv_lambda = 1.0 / lambda;
    let rate = inv_lambda.re;
    if lambda.re >= 0.0 {
        return Err(LabError::param(
            "lambda",
            format!("semigroup route needs Re λ < 0, got {lambda}"),
        ));
    }
    let tail = (rule.t_max * rate).exp() / rate.abs();
    if tail.is_nan() || tail >= rule.tail_tolerance {
        return Err(LabError::param(
            "t_max",
            format!(
                "tail bound {tail:e} at t_max = {} exceeds tolerance {:e}",
                rule.t_max, rule.tail_tolerance
            ),
        ));
    }
    if rule.panels == 0 {
        return Err(LabError::param("panels", "need at least one panel"));
    }
    let gl = GaussLegendre::new(rule.nodes_per_panel)?;
    let mut acc = vec![Complex64::new(0.0, 0.0); h.degree() + 1];
    for (t, w) in semigroup_nodes(&gl, rule, h.degree()) {
        let factor = w * (inv_lambda * t).exp();
        let st = s_t_apply(t, h)?;
        for (a, &c) in acc.iter_mut().zip(st.coeffs()) {
            *a += factor * c;
        }
    }
    let scale = inv_lambda * inv_lambda;
    let coeffs = h
        .coeffs()
        .iter()
        .zip(acc)
        .map(|(&hn, a)| hn * inv_lambda + scale * a)
        .collect();
    Ok(Poly::from_vec(coeffs))
}

/// `1/|b| + e^{4π/|b|} / b²`, the norm bound constant on the imaginary axis.
pub fn imaginary_axis_constant(b: f64) -> f64 {
    let ab = b.abs();
    1.0 / ab + (4.0 * PI / ab).exp() / (b * b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub b: f64,
    pub k: u32,
    /// `‖R(ib, C) h‖_{v_{k+1}}`
    pub lhs: f64,
    /// constant times `‖h‖_{v_k}`
    pub rhs: f64,
    pub pass: bool,
}

/// Checks `‖R(ib, C) h‖_{v_{k+1}} ≤ (1/|b| + e^{4π/|b|}/b²) ‖h‖_{v_k}`.
pub fn resolvent_bound_check(b: f64, h: &Poly, k: u32) -> Result<BoundCheck> {
    if !(b.is_finite() && b != 0.0) {
        return Err(LabError::param(
            "b",
            format!("must be finite and nonzero, got {b}"),
        ));
    }
    let wk = WeightSpec::log_power(k)?;
    let f = resolvent_recurrence(Complex64::new(0.0, b), h)?;
    let lhs = sup_norm(&f, WeightSpec::LogPower(k + 1));
    let rhs = imaginary_axis_constant(b) * sup_norm(h, wk);
    Ok(BoundCheck {
        b,
        k,
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + BOUND_SLACK),
    })
}

/// 100 points on the rings `|z| = 0.5` and `|z| = 0.8`, 50 angles each,
/// offset by half a step so that none falls on the negative axis.
pub fn agreement_sample_points() -> Vec<Complex64> {
    let per_ring = 50;
    [0.5, 0.8]
        .iter()
        .flat_map(|&r| {
            (0..per_ring).map(move |j| {
                let theta = -PI + (j as f64 + 0.5) * 2.0 * PI / per_ring as f64;
                Complex64::from_polar(r, theta)
            })
        })
        .collect()
}

/// A resolvent computation request, validated against its route.
#[derive(Debug, Clone)]
pub struct ResolventRequest {
    pub lambda: Complex64,
    pub h: Poly,
    pub route: Route,
    pub integral: IntegralRule,
    pub semigroup: Option<SemigroupRule>,
}

impl ResolventRequest {
    pub fn new(lambda: Complex64, h: Poly, route: Route) -> Self {
        ResolventRequest {
            lambda,
            h,
            route,
            integral: IntegralRule::default(),
            semigroup: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_lambda(self.lambda)?;
        match self.route {
            Route::Recurrence => {
                resolvent_recurrence(self.lambda, &Poly::zeros(self.h.degree())).map(|_| ())
            }
            Route::Integral => {
                ResolventIntegral::new(self.lambda, &self.h, self.integral).map(|_| ())
            }
            Route::Semigroup => {
                if self.lambda.re >= 0.0 {
                    return Err(LabError::param(
                        "lambda",
                        format!("semigroup route needs Re λ < 0, got {}", self.lambda),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Coefficients of the solution, for the two coefficient-space routes.
    pub fn solve_coefficients(&self) -> Result<Poly> {
        self.validate()?;
        match self.route {
            Route::Recurrence => resolvent_recurrence(self.lambda, &self.h),
            Route::Semigroup => {
                let rule = match self.semigroup {
                    Some(rule) => rule,
                    None => SemigroupRule::for_lambda(self.lambda, 1e-12)?,
                };
                resolvent_semigroup(self.lambda, &self.h, rule)
            }
            Route::Integral => Err(LabError::param(
                "route",
                "the integral route evaluates points, not coefficients",
            )),
        }
    }

    /// Values of the solution at the given points.
    pub fn solve_points(&self, points: &[Complex64]) -> Result<Vec<Complex64>> {
        self.validate()?;
        match self.route {
            Route::Integral => {
                let integral = ResolventIntegral::new(self.lambda, &self.h, self.integral)?;
                points.iter().map(|&z| integral.eval(z)).collect()
            }
            _ => {
                let f = self.solve_coefficients()?;
                Ok(points.iter().map(|&z| f.eval(z)).collect())
            }
        }
    }
}
