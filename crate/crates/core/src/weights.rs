//! Radial weights, sampled max-modulus, weighted sup-norms and growth fits.
//!
//! Norms are lower bounds: the maximum modulus on a circle is replaced by
//! the maximum over `S` equally spaced angles, and the supremum over the
//! disc by the maximum over a finite radius grid that stops at the
//! truncation-reliability radius `1 - 10/N`.

use std::cell::RefCell;
use std::f64::consts::E;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::series::Poly;

/// Radius below which the logarithmic weight is identically 1.
pub const LOG_WEIGHT_KNEE: f64 = 1.0 - 1.0 / E;

/// Number of geometric grid points between `1 - r = 0.5` and `1 - r = 10/N`.
pub const GEOMETRIC_GRID_POINTS: usize = 64;

/// Radii covering the inner half of the disc, prepended to every default grid.
pub const INNER_GRID: [f64; 5] = [0.0, 0.1, 0.2, 0.3, 0.4];

/// Minimum circle sampling.
pub const DEFAULT_SAMPLES: usize = 1024;

/// Smallest radius used by the growth regressions.
pub const FIT_MIN_RADIUS: f64 = 0.9;

/// Ratio of largest-degree to smallest-degree norm that flags divergence.
pub const DIVERGENCE_RATIO: f64 = 10.0;

const RADIUS_SLACK: f64 = 1e-12;

/// A radial weight on `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "order")]
pub enum WeightSpec {
    /// `(1 - r)^γ`
    Standard(f64),
    /// `1` for `r ≤ 1 - 1/e`, else `(-log(1 - r))^{-k}`
    LogPower(u32),
}

impl WeightSpec {
    pub fn standard(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(LabError::InvalidWeight(format!(
                "standard order must be positive, got {gamma}"
            )));
        }
        Ok(WeightSpec::Standard(gamma))
    }

    pub fn log_power(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(LabError::InvalidWeight(
                "logarithmic power must be at least 1".into(),
            ));
        }
        Ok(WeightSpec::LogPower(k))
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        weight_eval(*self, r)
    }

    /// Same as [`eval`](Self::eval) without the range check.
    fn eval_unchecked(&self, r: f64) -> f64 {
        match *self {
            WeightSpec::Standard(gamma) => (1.0 - r).powf(gamma),
            WeightSpec::LogPower(k) => {
                if r <= LOG_WEIGHT_KNEE {
                    1.0
                } else {
                    (-(1.0 - r).ln()).powi(-(k as i32))
                }
            }
        }
    }
}

impl std::fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightSpec::Standard(g) => write!(f, "w_{g}"),
            WeightSpec::LogPower(k) => write!(f, "v_{k}"),
        }
    }
}

pub fn weight_eval(w: WeightSpec, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(LabError::RadiusOutOfRange {
            radius: r,
            limit: 1.0,
        });
    }
    Ok(w.eval_unchecked(r))
}

/// Largest radius at which a degree-`N` truncation is trusted: `1 - 10/max(N, 20)`.
pub fn reliability_radius(degree: usize) -> f64 {
    1.0 - 10.0 / degree.max(20) as f64
}

/// Circle sampling used for a given degree: at least 1024, and at least
/// `N + 1` rounded up to a power of two so that no coefficients alias.
pub fn default_samples(degree: usize) -> usize {
    DEFAULT_SAMPLES.max((degree + 1).next_power_of_two())
}

/// [`INNER_GRID`] followed by 64 radii geometrically spaced in `1 - r`
/// from `0.5` down to `1 - reliability_radius(N)`.
pub fn default_grid(degree: usize) -> Vec<f64> {
    let r_max = reliability_radius(degree);
    let lo = 1.0 - r_max;
    let mut grid = INNER_GRID.to_vec();
    let last = GEOMETRIC_GRID_POINTS - 1;
    for j in 0..GEOMETRIC_GRID_POINTS {
        let r = if j == last {
            r_max
        } else {
            1.0 - 0.5 * (lo / 0.5).powf(j as f64 / last as f64)
        };
        grid.push(r);
    }
    grid.dedup();
    grid
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Values of `p` at `r e^{2πij/S}`, `j = 0..S`. Coefficients beyond `S`
/// are folded modulo `S`, which leaves the sampled values unchanged.
pub fn circle_values(p: &Poly, r: f64, samples: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); samples];
    let mut rn = 1.0;
    for (n, &c) in p.coeffs().iter().enumerate() {
        buf[n % samples] += c * rn;
        rn *= r;
    }
    let fft = PLANNER.with(|planner| planner.borrow_mut().plan_fft_inverse(samples));
    fft.process(&mut buf);
    buf
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 8 {
        return Err(LabError::param(
            "samples",
            format!("need at least 8 angles per circle, got {samples}"),
        ));
    }
    Ok(())
}

/// Sampled `M(p, r) = max_{|z| = r} |p(z)|`; a lower bound on the true value.
pub fn max_modulus(p: &Poly, r: f64, samples: usize) -> Result<f64> {
    check_samples(samples)?;
    if !(0.0..1.0).contains(&r) {
        return Err(LabError::RadiusOutOfRange {
            radius: r,
            limit: 1.0,
        });
    }
    Ok(circle_values(p, r, samples)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max))
}

/// Sampled maximum modulus of one function over a radius grid.
///
/// Computing the profile once lets several weights share the circle
/// evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusProfile {
    pub radii: Vec<f64>,
    pub maxima: Vec<f64>,
    pub samples: usize,
}

impl ModulusProfile {
    pub fn new(p: &Poly, grid: &[f64], samples: usize) -> Result<Self> {
        check_samples(samples)?;
        if grid.is_empty() {
            return Err(LabError::param("grid", "radius grid is empty"));
        }
        let limit = reliability_radius(p.degree());
        for &r in grid {
            if !(r >= 0.0 && r <= limit + RADIUS_SLACK) {
                return Err(LabError::RadiusOutOfRange { radius: r, limit });
            }
        }
        let maxima = grid
            .iter()
            .map(|&r| {
                circle_values(p, r, samples)
                    .iter()
                    .map(|v| v.norm())
                    .fold(0.0, f64::max)
            })
            .collect();
        Ok(ModulusProfile {
            radii: grid.to_vec(),
            maxima,
            samples,
        })
    }

    /// Profile on [`default_grid`] with [`default_samples`].
    pub fn with_defaults(p: &Poly) -> Self {
        Self::new(p, &default_grid(p.degree()), default_samples(p.degree()))
            .expect("default grid lies within the reliability radius")
    }

    pub fn weighted_norm(&self, w: WeightSpec) -> NormEstimate {
        let mut best = (f64::NEG_INFINITY, 0.0);
        for (&r, &m) in self.radii.iter().zip(&self.maxima) {
            let value = w.eval_unchecked(r) * m;
            if value > best.0 {
                best = (value, r);
            }
        }
        NormEstimate {
            value: best.0,
            argmax_radius: best.1,
            grid: self.radii.clone(),
            samples_per_circle: self.samples,
        }
    }
}

/// Result of a weighted sup-norm sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub argmax_radius: f64,
    pub grid: Vec<f64>,
    pub samples_per_circle: usize,
}

/// `max_j w(r_j) · M̂(p, r_j)`.
pub fn weighted_sup_norm(
    p: &Poly,
    w: WeightSpec,
    grid: &[f64],
    samples: usize,
) -> Result<NormEstimate> {
    Ok(ModulusProfile::new(p, grid, samples)?.weighted_norm(w))
}

/// Weighted norm on the default grid and sampling for `deg p`.
pub fn sup_norm(p: &Poly, w: WeightSpec) -> f64 {
    ModulusProfile::with_defaults(p).weighted_norm(w).value
}

/// Ordinary least-squares line with residual diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub rms_residual: f64,
    pub max_residual: f64,
    pub points: usize,
}

pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return Err(LabError::DegenerateFit(format!(
            "need at least two paired points, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(LabError::DegenerateFit("abscissae are all equal".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals: Vec<f64> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| y - (intercept + slope * x))
        .collect();
    let rms_residual = (residuals.iter().map(|r| r * r).sum::<f64>() / nf).sqrt();
    let max_residual = residuals.iter().map(|r| r.abs()).fold(0.0, f64::max);
    Ok(LinearFit {
        slope,
        intercept,
        rms_residual,
        max_residual,
        points: n,
    })
}

/// Fitted growth orders of a function from several truncations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    /// `k̂`: slope of `log M(f, r)` against `log(-log(1 - r))`, clamped at 0.
    pub log_order: f64,
    /// `γ̂`: slope of `log M(f, r)` against `log(1/(1 - r))`, clamped at 0.
    pub standard_order: f64,
    pub log_fit: LinearFit,
    pub standard_fit: LinearFit,
    pub divergence_flag: bool,
    pub weight: WeightSpec,
    pub degrees: Vec<usize>,
    pub norms: Vec<f64>,
}

/// Heuristic growth classification.
///
/// `family` holds truncations of one function at strictly increasing
/// degrees (at least three). Both regressions use the largest truncation
/// on its default grid, restricted to `r ≥ 0.9`. The divergence flag is
/// raised when the `weight`-norm at the largest degree exceeds ten times
/// the norm at the smallest one.
pub fn growth_classify(family: &[Poly], weight: WeightSpec) -> Result<GrowthReport> {
    if family.len() < 3 {
        return Err(LabError::param(
            "family",
            format!(
                "need at least three truncation degrees, got {}",
                family.len()
            ),
        ));
    }
    let degrees: Vec<usize> = family.iter().map(Poly::degree).collect();
    if degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LabError::param(
            "family",
            format!("truncation degrees must increase strictly, got {degrees:?}"),
        ));
    }

    let profiles: Vec<ModulusProfile> = family.iter().map(ModulusProfile::with_defaults).collect();
    let norms: Vec<f64> = profiles
        .iter()
        .map(|p| p.weighted_norm(weight).value)
        .collect();

    let top = profiles.last().expect("family is nonempty");
    let (mut log_x, mut std_x, mut ys) = (Vec::new(), Vec::new(), Vec::new());
    for (&r, &m) in top.radii.iter().zip(&top.maxima) {
        if r < FIT_MIN_RADIUS {
            continue;
        }
        if m <= 0.0 {
            return Err(LabError::DegenerateFit(
                "maximum modulus vanishes; the function is zero".into(),
            ));
        }
        let ell = -(1.0 - r).ln();
        log_x.push(ell.ln());
        std_x.push(ell);
        ys.push(m.ln());
    }
    if ys.len() < 4 {
        return Err(LabError::DegenerateFit(format!(
            "only {} radii at or beyond {FIT_MIN_RADIUS}; need at least 4",
            ys.len()
        )));
    }
    let log_fit = least_squares(&log_x, &ys)?;
    let standard_fit = least_squares(&std_x, &ys)?;
    let divergence_flag = norms[norms.len() - 1] > DIVERGENCE_RATIO * norms[0];

    Ok(GrowthReport {
        log_order: log_fit.slope.max(0.0),
        standard_order: standard_fit.slope.max(0.0),
        log_fit,
        standard_fit,
        divergence_flag,
        weight,
        degrees,
        norms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{binomial_series, log_one_minus_inv};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn weight_examples() {
        let v1 = WeightSpec::log_power(1).unwrap();
        assert_eq!(v1.eval(0.0).unwrap(), 1.0);
        let r = 1.0 - (-2.0f64).exp();
        assert!((v1.eval(r).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(WeightSpec::standard(1.0).unwrap().eval(0.5).unwrap(), 0.5);
    }

    #[test]
    fn weight_rejects_bad_input() {
        let v1 = WeightSpec::LogPower(1);
        assert!(v1.eval(1.0).is_err());
        assert!(v1.eval(-0.1).is_err());
        assert!(WeightSpec::log_power(0).is_err());
        assert!(WeightSpec::standard(0.0).is_err());
        assert!(WeightSpec::standard(f64::NAN).is_err());
    }

    #[test]
    fn log_weight_powers_and_knee() {
        for &r in &[0.0, 0.3, LOG_WEIGHT_KNEE, 0.7, 0.9, 0.999] {
            let base = WeightSpec::LogPower(1).eval(r).unwrap();
            for k in 2..6u32 {
                let vk = WeightSpec::LogPower(k).eval(r).unwrap();
                assert!((vk - base.powi(k as i32)).abs() <= 1e-15 * base.powi(k as i32));
            }
        }
        let just_above = LOG_WEIGHT_KNEE + 1e-12;
        assert!((WeightSpec::LogPower(3).eval(just_above).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn weights_are_non_increasing() {
        let grid = default_grid(2048);
        for w in [
            WeightSpec::LogPower(1),
            WeightSpec::LogPower(4),
            WeightSpec::Standard(0.5),
            WeightSpec::Standard(2.0),
        ] {
            for pair in grid.windows(2) {
                assert!(w.eval(pair[1]).unwrap() <= w.eval(pair[0]).unwrap());
            }
        }
    }

    #[test]
    fn default_grid_shape() {
        let grid = default_grid(512);
        assert_eq!(grid.len(), INNER_GRID.len() + GEOMETRIC_GRID_POINTS);
        assert_eq!(grid[INNER_GRID.len()], 0.5);
        assert_eq!(*grid.last().unwrap(), reliability_radius(512));
        assert!(grid.windows(2).all(|p| p[0] < p[1]));
        // tiny truncations collapse the geometric part onto r = 0.5
        assert_eq!(default_grid(0), vec![0.0, 0.1, 0.2, 0.3, 0.4, 0.5]);
    }

    #[test]
    fn fft_sampling_matches_horner() {
        let p = Poly::new(
            (0..300)
                .map(|n| Complex64::new((n as f64 * 0.37).sin(), (n as f64 * 0.11).cos()))
                .collect(),
        )
        .unwrap();
        for samples in [64, 1024] {
            let values = circle_values(&p, 0.93, samples);
            for (j, v) in values.iter().enumerate().step_by(7) {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
                let z = Complex64::from_polar(0.93, theta);
                assert!((p.eval(z) - v).norm() < 1e-11 * (1.0 + v.norm()));
            }
        }
    }

    #[test]
    fn max_modulus_examples() {
        let one = Poly::constant(c(1.0), 10);
        assert!((max_modulus(&one, 0.8, 64).unwrap() - 1.0).abs() < 1e-15);
        let z = Poly::monomial(1, 3);
        assert!((max_modulus(&z, 0.7, 64).unwrap() - 0.7).abs() < 1e-15);
        let positive = Poly::from_real(&[0.5, 1.0, 0.0, 2.0, 0.25]).unwrap();
        let r: f64 = 0.6;
        let expected = 0.5 + r + 2.0 * r.powi(3) + 0.25 * r.powi(4);
        assert!((max_modulus(&positive, r, 1024).unwrap() - expected).abs() < 1e-14);
        assert!(max_modulus(&one, 0.5, 4).is_err());
        assert!(max_modulus(&one, 1.0, 64).is_err());
    }

    #[test]
    fn weighted_norm_examples() {
        let one = Poly::constant(c(1.0), 0);
        let est = weighted_sup_norm(&one, WeightSpec::LogPower(1), &default_grid(0), 1024).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.argmax_radius, 0.0);

        let mut previous = 0.0;
        for degree in [128, 512, 2048] {
            let value = sup_norm(&log_one_minus_inv(degree), WeightSpec::LogPower(1));
            assert!(value <= 1.0 + 1e-12 && value > 0.999, "{degree}: {value}");
            assert!(value >= previous - 1e-9);
            previous = value;
        }
        for degree in [128, 512, 2048] {
            let value = sup_norm(&binomial_series(c(-2.0), degree), WeightSpec::Standard(2.0));
            assert!(value <= 1.0 + 1e-12 && value > 0.99, "{degree}: {value}");
        }
    }

    #[test]
    fn weighted_norm_rejects_radii_past_reliability() {
        let p = log_one_minus_inv(100);
        let err = weighted_sup_norm(&p, WeightSpec::LogPower(1), &[0.5, 0.95], 1024).unwrap_err();
        assert!(matches!(err, LabError::RadiusOutOfRange { .. }));
        assert!(weighted_sup_norm(&p, WeightSpec::LogPower(1), &[], 1024).is_err());
    }

    #[test]
    fn least_squares_recovers_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 3.0, 5.0, 7.0];
        let fit = least_squares(&xs, &ys).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-14);
        assert!((fit.intercept - 1.0).abs() < 1e-14);
        assert!(fit.max_residual < 1e-14);
        assert!(least_squares(&[1.0, 1.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn classify_log_and_constant() {
        let family: Vec<Poly> = [128, 512, 2048]
            .iter()
            .map(|&n| log_one_minus_inv(n))
            .collect();
        let report = growth_classify(&family, WeightSpec::LogPower(1)).unwrap();
        assert!((report.log_order - 1.0).abs() < 0.2, "{report:?}");
        assert!(report.standard_order < 0.5, "{report:?}");
        assert!(!report.divergence_flag);

        let consts: Vec<Poly> = [128, 512, 2048]
            .iter()
            .map(|&n| Poly::constant(c(1.0), n))
            .collect();
        let report = growth_classify(&consts, WeightSpec::LogPower(1)).unwrap();
        assert!(report.log_order.abs() < 1e-12);
        assert!(report.standard_order.abs() < 1e-12);
        assert!(!report.divergence_flag);
    }

    #[test]
    fn classify_rejects_bad_families() {
        let two: Vec<Poly> = [128, 512].iter().map(|&n| log_one_minus_inv(n)).collect();
        assert!(growth_classify(&two, WeightSpec::LogPower(1)).is_err());
        let unordered: Vec<Poly> = [512, 128, 2048]
            .iter()
            .map(|&n| log_one_minus_inv(n))
            .collect();
        assert!(growth_classify(&unordered, WeightSpec::LogPower(1)).is_err());
        // reliability radius 0.5 leaves no radius beyond 0.9 to fit
        let tiny: Vec<Poly> = [4, 8, 16].iter().map(|&n| log_one_minus_inv(n)).collect();
        assert!(matches!(
            growth_classify(&tiny, WeightSpec::LogPower(1)),
            Err(LabError::DegenerateFit(_))
        ));
        let zeros: Vec<Poly> = [128, 512, 2048].iter().map(|&n| Poly::zeros(n)).collect();
        assert!(growth_classify(&zeros, WeightSpec::LogPower(1)).is_err());
    }
}
