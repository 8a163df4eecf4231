//! Eigenvectors, iterates and Cesàro means of `C_t`, and the spectral sweep.
//!
//! For `t < 1`, `C_t` is power bounded and its means converge to the
//! projection `f ↦ f(0) g₀` with `g₀(z) = Σ tⁿ zⁿ`; for `t = 1` the means
//! keep the constant term fixed while no nonzero fixed vector exists, so
//! they cannot settle.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::operators::{finite_section, generalized_cesaro_unchecked};
use crate::resolvent::{resolvent_bound_check, resolvent_recurrence};
use crate::series::Poly;
use crate::weights::{default_grid, default_samples, sup_norm, ModulusProfile, WeightSpec};

/// Eigenvalue, eigenvector and the operator `C_t` they belong to.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    /// `n` for `C` (eigenvalue `1/n`), `m` for `C_t` (eigenvalue `1/(m+1)`).
    pub index: usize,
    pub t: f64,
    pub coeffs: Poly,
    pub eigenvalue: f64,
}

impl EigenPair {
    /// `‖C_t v - μ v‖_∞ / ‖v‖_∞` over the coefficients.
    pub fn residual(&self) -> f64 {
        let image = generalized_cesaro_unchecked(self.t, &self.coeffs);
        let diff = &image - &self.coeffs.scale(Complex64::new(self.eigenvalue, 0.0));
        diff.max_abs() / self.coeffs.max_abs()
    }

    /// `Σ_n |x_n|` over the stored coefficients.
    pub fn l1_partial_sum(&self) -> f64 {
        self.coeffs.l1_norm()
    }
}

/// `e_n(z) = z^{n-1} (1 - z)^{-n}`, eigenvector of `C` for `1/n`.
pub fn eigenpair_cesaro(n: usize, degree: usize) -> Result<EigenPair> {
    if n == 0 {
        return Err(LabError::param("n", "eigenvector index starts at 1"));
    }
    if degree < n {
        return Err(LabError::param(
            "degree",
            format!("need degree >= n = {n}, got {degree}"),
        ));
    }
    Ok(EigenPair {
        index: n,
        t: 1.0,
        coeffs: crate::corpus::cesaro_eigenfunction(n, degree),
        eigenvalue: 1.0 / n as f64,
    })
}

/// Eigenvector `g_m` of `C_t` for `1/(m+1)`, normalized by `x_m = 1`.
///
/// Solves `x_n (1/(n+1) - 1/(m+1)) = -(1/(n+1)) Σ_{j<n} t^{n-j} x_j`
/// forward from `n = m + 1`.
pub fn eigenvector_ct(t: f64, m: usize, degree: usize) -> Result<EigenPair> {
    if !(0.0..1.0).contains(&t) {
        return Err(LabError::param("t", format!("must lie in [0, 1), got {t}")));
    }
    if m > degree {
        return Err(LabError::param(
            "m",
            format!("index {m} exceeds the truncation degree {degree}"),
        ));
    }
    let mu = 1.0 / (m as f64 + 1.0);
    let mut x = vec![Complex64::new(0.0, 0.0); degree + 1];
    x[m] = Complex64::new(1.0, 0.0);
    // s = Σ_{j ≤ n} t^{n-j} x_j
    let mut s = Complex64::new(1.0, 0.0);
    for (n, slot) in x.iter_mut().enumerate().skip(m + 1) {
        let inv = 1.0 / (n as f64 + 1.0);
        let tail = s * t;
        *slot = -(tail * inv) / (inv - mu);
        s = tail + *slot;
    }
    Ok(EigenPair {
        index: m,
        t,
        coeffs: Poly::from_vec(x),
        eigenvalue: mu,
    })
}

/// One step of [`CesaroMeans`]: `Tⁿ f` and `T_[n] f = (1/n) Σ_{m=1}^n T^m f`.
#[derive(Debug, Clone)]
pub struct MeanStep {
    pub n: usize,
    pub iterate: Poly,
    pub mean: Poly,
}

/// Iterates and Cesàro means of `C_t` applied to a fixed function.
#[derive(Debug, Clone)]
pub struct CesaroMeans {
    t: f64,
    iterate: Poly,
    sum: Poly,
    n: usize,
}

pub fn cesaro_means(t: f64, f: &Poly) -> Result<CesaroMeans> {
    if !(0.0..=1.0).contains(&t) {
        return Err(LabError::param("t", format!("must lie in [0, 1], got {t}")));
    }
    Ok(CesaroMeans {
        t,
        iterate: f.clone(),
        sum: Poly::zeros(f.degree()),
        n: 0,
    })
}

impl Iterator for CesaroMeans {
    type Item = MeanStep;

    fn next(&mut self) -> Option<MeanStep> {
        self.n += 1;
        self.iterate = generalized_cesaro_unchecked(self.t, &self.iterate);
        self.sum = &self.sum + &self.iterate;
        // divide rather than multiply by 1/n so that n/n stays exactly 1
        let n = self.n as f64;
        let mean = Poly::from_vec(self.sum.coeffs().iter().map(|c| c / n).collect());
        Some(MeanStep {
            n: self.n,
            iterate: self.iterate.clone(),
            mean,
        })
    }
}

/// Norm histories of an iteration experiment. Entry `n - 1` of each
/// sequence refers to index `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErgodicTrace {
    pub t: f64,
    pub weight: WeightSpec,
    pub degree: usize,
    pub n_max: usize,
    /// `‖Tⁿ f‖`
    pub iterate_norms: Vec<f64>,
    /// `‖T_[n] f‖`
    pub mean_norms: Vec<f64>,
    /// `‖T_[2n] f - T_[n] f‖`
    pub mean_increments: Vec<f64>,
    /// `‖T_[n] f - f(0) g₀‖`, empty for `t = 1`
    pub projection_errors: Vec<f64>,
}

/// Runs `C_t` on `f` for `2 n_max` steps and records weighted norms on
/// the default grid for `deg f`.
pub fn iterate_trace(t: f64, f: &Poly, w: WeightSpec, n_max: usize) -> Result<ErgodicTrace> {
    if n_max < 8 {
        return Err(LabError::param(
            "n_max",
            format!("need at least 8 iterations, got {n_max}"),
        ));
    }
    if f.is_zero() {
        return Err(LabError::param(
            "f",
            "the starting function must be nonzero",
        ));
    }
    let degree = f.degree();
    let grid = default_grid(degree);
    let samples = default_samples(degree);
    let norm = |p: &Poly| -> Result<f64> {
        Ok(ModulusProfile::new(p, &grid, samples)?
            .weighted_norm(w)
            .value)
    };
    let projection = if t < 1.0 {
        Some(eigenvector_ct(t, 0, degree)?.coeffs.scale(f.coeff(0)))
    } else {
        None
    };

    let mut iterate_norms = Vec::with_capacity(n_max);
    let mut mean_norms = Vec::with_capacity(n_max);
    let mut mean_increments = vec![0.0; n_max];
    let mut projection_errors = Vec::new();
    let mut stored = Vec::with_capacity(n_max);

    for step in cesaro_means(t, f)?.take(2 * n_max) {
        let n = step.n;
        if n <= n_max {
            iterate_norms.push(norm(&step.iterate)?);
            mean_norms.push(norm(&step.mean)?);
            if let Some(target) = &projection {
                projection_errors.push(norm(&(&step.mean - target))?);
            }
        }
        if n % 2 == 0 {
            let half: &Poly = &stored[n / 2 - 1];
            mean_increments[n / 2 - 1] = norm(&(&step.mean - half))?;
        }
        if n <= n_max {
            stored.push(step.mean);
        }
    }

    Ok(ErgodicTrace {
        t,
        weight: w,
        degree,
        n_max,
        iterate_norms,
        mean_norms,
        mean_increments,
        projection_errors,
    })
}

/// Growth ratio across the swept degrees above which a probe counts as blowing up.
pub const GROWTH_RATIO_THRESHOLD: f64 = 2.0;

/// Probes closer than this to a diagonal value `1/(n+1)` are skipped.
pub const SWEEP_EXCLUSION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HalfPlane {
    Left,
    Imaginary,
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionSpectrum {
    pub t: f64,
    pub dimension: usize,
    pub lower_triangular: bool,
    /// `max_n |diag_n - 1/(n+1)|`
    pub max_diagonal_deviation: f64,
    pub leading_eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaProbe {
    pub re: f64,
    pub im: f64,
    pub region: HalfPlane,
    /// `‖R(λ, C) 1‖_{v_1}` at each swept degree.
    pub norms: Vec<f64>,
    pub growth_ratio: f64,
    pub grows: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisBound {
    pub b: f64,
    pub degree: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// Finite-section diagonals, resolvent norm growth over a `λ` grid, and
/// the imaginary-axis bound. A numerical illustration of where the
/// spectrum sits, not a certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub degrees: Vec<usize>,
    pub sections: Vec<SectionSpectrum>,
    pub probes: Vec<LambdaProbe>,
    pub axis_bounds: Vec<AxisBound>,
}

impl SpectralReport {
    pub fn probe(&self, re: f64, im: f64) -> Option<&LambdaProbe> {
        self.probes
            .iter()
            .find(|p| (p.re - re).abs() < 1e-12 && (p.im - im).abs() < 1e-12)
    }
}

/// `‖R(λ, C) 1‖_{v_1}` at each degree.
pub fn resolvent_norm_profile(lambda: Complex64, degrees: &[usize]) -> Result<Vec<f64>> {
    degrees
        .iter()
        .map(|&n| {
            let f = resolvent_recurrence(lambda, &Poly::constant(Complex64::new(1.0, 0.0), n))?;
            Ok(sup_norm(&f, WeightSpec::LogPower(1)))
        })
        .collect()
}

/// Probes `λ` on the grid `[-2, 2]²` with the given step, plus any
/// `extra` points, at degrees `N, 4N, 16N`.
pub fn spectral_sweep(degree: usize, step: f64, extra: &[Complex64]) -> Result<Vec<LambdaProbe>> {
    let degrees = [degree, 4 * degree, 16 * degree];
    let count = (4.0 / step).round() as i64;
    let mut lambdas: Vec<Complex64> = (0..=count)
        .flat_map(|i| (0..=count).map(move |j| (i, j)))
        .map(|(i, j)| Complex64::new(-2.0 + i as f64 * step, -2.0 + j as f64 * step))
        .collect();
    lambdas.extend_from_slice(extra);

    let top = *degrees.last().expect("nonempty");
    let mut probes = Vec::new();
    for lambda in lambdas {
        if lambda.norm() < SWEEP_EXCLUSION {
            continue;
        }
        let near_diagonal = lambda.im.abs() < SWEEP_EXCLUSION
            && lambda.re > 0.0
            && (1.0 / lambda.re - 1.0).round() <= top as f64
            && (lambda.re - 1.0 / (1.0 / lambda.re).round()).abs() < SWEEP_EXCLUSION;
        if near_diagonal {
            continue;
        }
        let norms = resolvent_norm_profile(lambda, &degrees)?;
        let growth_ratio = norms[norms.len() - 1] / norms[0];
        let region = if lambda.re.abs() < 1e-12 {
            HalfPlane::Imaginary
        } else if lambda.re < 0.0 {
            HalfPlane::Left
        } else {
            HalfPlane::Right
        };
        probes.push(LambdaProbe {
            re: lambda.re,
            im: lambda.im,
            region,
            norms,
            growth_ratio,
            grows: growth_ratio > GROWTH_RATIO_THRESHOLD,
        });
    }
    Ok(probes)
}

pub fn spectral_dichotomy_report(degree: usize) -> Result<SpectralReport> {
    if degree < 64 {
        return Err(LabError::param(
            "degree",
            format!("need at least 64, got {degree}"),
        ));
    }
    let degrees = vec![degree, 4 * degree, 16 * degree];

    let sections = [0.0, 0.5, 1.0]
        .iter()
        .map(|&t| {
            let section = finite_section(t, degree)?;
            let eig = section.eigenvalues();
            let max_diagonal_deviation = eig
                .iter()
                .enumerate()
                .map(|(n, mu)| (mu - 1.0 / (n as f64 + 1.0)).abs())
                .fold(0.0, f64::max);
            Ok(SectionSpectrum {
                t,
                dimension: section.dimension(),
                lower_triangular: section.is_lower_triangular(),
                max_diagonal_deviation,
                leading_eigenvalues: eig.into_iter().take(6).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let extra = [Complex64::new(0.51, 0.0), Complex64::new(0.0, 1.0)];
    let probes = spectral_sweep(degree, 0.25, &extra)?;

    let mut axis_bounds = Vec::new();
    for &b in &[-2.0, -1.0, 1.0, 2.0] {
        for &n in &degrees {
            let check = resolvent_bound_check(b, &Poly::constant(Complex64::new(1.0, 0.0), n), 1)?;
            axis_bounds.push(AxisBound {
                b,
                degree: n,
                lhs: check.lhs,
                rhs: check.rhs,
                pass: check.pass,
            });
        }
    }

    Ok(SpectralReport {
        degrees,
        sections,
        probes,
        axis_bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::cesaro_apply;

    fn binomial(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn cesaro_eigenpairs() {
        let e1 = eigenpair_cesaro(1, 20).unwrap();
        assert_eq!(e1.coeffs, Poly::from_real(&[1.0; 21]).unwrap());
        assert_eq!(cesaro_apply(&e1.coeffs), e1.coeffs);

        let e2 = eigenpair_cesaro(2, 20).unwrap();
        let image = cesaro_apply(&e2.coeffs);
        for n in 0..=20 {
            assert_eq!(e2.coeff_re(n), n as f64);
            assert!((image.coeff(n).re - n as f64 / 2.0).abs() < 1e-14);
        }
        assert!(eigenpair_cesaro(3, 512).unwrap().residual() <= 1e-12);
        assert!(eigenpair_cesaro(0, 10).is_err());
        assert!(eigenpair_cesaro(5, 4).is_err());
    }

    impl EigenPair {
        fn coeff_re(&self, n: usize) -> f64 {
            self.coeffs.coeff(n).re
        }
    }

    #[test]
    fn ct_eigenvectors_match_closed_form() {
        // g_m(z) = z^m (1 - t z)^{-(m+1)}: x_n = C(n, m) t^{n-m}
        for &t in &[0.0, 0.3, 0.5, 0.9] {
            for m in 0..5 {
                let pair = eigenvector_ct(t, m, 80).unwrap();
                assert_eq!(pair.eigenvalue, 1.0 / (m as f64 + 1.0));
                for n in 0..=80 {
                    let expected = if n < m {
                        0.0
                    } else {
                        binomial(n, m) * t.powi((n - m) as i32)
                    };
                    let got = pair.coeff_re(n);
                    assert!(
                        (got - expected).abs() <= 1e-12 * expected.abs().max(1.0),
                        "t={t} m={m} n={n}"
                    );
                }
                assert!(pair.residual() <= 1e-12);
            }
        }
    }

    #[test]
    fn ct_eigenvector_examples() {
        let g0 = eigenvector_ct(0.7, 0, 30).unwrap();
        for n in 0..=30 {
            assert!((g0.coeff_re(n) - 0.7f64.powi(n as i32)).abs() < 1e-15);
        }
        assert_eq!(
            eigenvector_ct(0.0, 3, 10).unwrap().coeffs,
            Poly::monomial(3, 10)
        );

        let big = eigenvector_ct(0.5, 2, 512).unwrap();
        let small = eigenvector_ct(0.5, 2, 256).unwrap();
        assert!(big.residual() <= 1e-12);
        assert!((big.l1_partial_sum() - small.l1_partial_sum()).abs() < 1e-10);

        assert!(eigenvector_ct(1.0, 0, 10).is_err());
        assert!(eigenvector_ct(0.5, 11, 10).is_err());
    }

    #[test]
    fn means_recombine_to_iterates() {
        let f = crate::corpus::random_polys(7, 1, 64).pop().unwrap();
        let steps: Vec<MeanStep> = cesaro_means(0.8, &f).unwrap().take(40).collect();
        for pair in steps.windows(2) {
            let (prev, cur) = (&pair[0], &pair[1]);
            let n = cur.n as f64;
            let lhs = cur.iterate.scale(Complex64::new(1.0 / n, 0.0));
            let rhs = &cur.mean - &prev.mean.scale(Complex64::new((n - 1.0) / n, 0.0));
            assert!((&lhs - &rhs).max_abs() <= 1e-12 * cur.mean.max_abs().max(1.0));
        }
    }

    #[test]
    fn constant_coordinate_is_conserved() {
        let f = crate::corpus::random_polys(11, 1, 32).pop().unwrap();
        for t in [0.0, 0.4, 1.0] {
            for step in cesaro_means(t, &f).unwrap().take(50) {
                assert_eq!(step.iterate.coeff(0), f.coeff(0));
            }
        }
    }

    #[test]
    fn trace_rejects_bad_input() {
        let one = Poly::constant(Complex64::new(1.0, 0.0), 16);
        assert!(iterate_trace(0.5, &one, WeightSpec::LogPower(1), 4).is_err());
        assert!(iterate_trace(0.5, &Poly::zeros(16), WeightSpec::LogPower(1), 16).is_err());
        assert!(iterate_trace(1.5, &one, WeightSpec::LogPower(1), 16).is_err());
    }

    #[test]
    fn short_trace_shapes() {
        let one = Poly::constant(Complex64::new(1.0, 0.0), 64);
        let trace = iterate_trace(0.5, &one, WeightSpec::LogPower(1), 16).unwrap();
        assert_eq!(trace.iterate_norms.len(), 16);
        assert_eq!(trace.mean_increments.len(), 16);
        assert_eq!(trace.projection_errors.len(), 16);
        assert!(trace.projection_errors[15] < trace.projection_errors[0]);
        let trace = iterate_trace(1.0, &one, WeightSpec::LogPower(1), 16).unwrap();
        assert!(trace.projection_errors.is_empty());
        assert!(trace
            .mean_increments
            .iter()
            .all(|x| x.is_finite() && *x > 0.0));
    }

    #[test]
    fn sweep_examples() {
        let probes = spectral_sweep(
            64,
            4.0,
            &[Complex64::new(-1.0, 0.0), Complex64::new(0.51, 0.0)],
        )
        .unwrap();
        let left = probes.iter().find(|p| p.re == -1.0 && p.im == 0.0).unwrap();
        assert!(!left.grows, "{left:?}");
        assert!((left.growth_ratio - 1.0).abs() < 0.05);
        let right = probes.iter().find(|p| p.re == 0.51).unwrap();
        assert!(right.grows, "{right:?}");
        // grid corners only, no diagonal points
        assert_eq!(probes.len(), 6);
    }

    #[test]
    fn sweep_skips_diagonal_values() {
        let probes = spectral_sweep(
            64,
            4.0,
            &[Complex64::new(0.5, 0.0), Complex64::new(0.125, 0.0)],
        )
        .unwrap();
        assert_eq!(probes.len(), 4);
    }
}
