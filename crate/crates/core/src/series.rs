//! Truncated Taylor series with complex coefficients.
//!
//! A [`Poly`] stores `c_0, ..., c_N` where `c_n` multiplies `z^n`. The
//! degree `N` is the truncation degree, not the position of the last
//! nonzero coefficient: `Poly::constant(1, 512)` is the constant function
//! carried with 513 slots, so that lower-triangular operators can fill the
//! higher coefficients in.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{LabError, Result};

/// Cap applied to the degree of untruncated products.
pub const DEFAULT_TRUNCATION_CAP: usize = 1024;

/// Absolute threshold below which a coefficient counts as a structural zero.
pub const ZERO_THRESHOLD: f64 = 1e-14;

#[derive(Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a series from its coefficients, rejecting empty or non-finite input.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(LabError::InvalidCoefficients(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        if let Some(n) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(LabError::InvalidCoefficients(format!(
                "coefficient {n} is not finite"
            )));
        }
        Ok(Poly { coeffs })
    }

    /// Internal constructor for coefficient vectors produced by arithmetic.
    pub(crate) fn from_vec(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zeros(degree: usize) -> Self {
        Poly {
            coeffs: vec![Complex64::new(0.0, 0.0); degree + 1],
        }
    }

    pub fn constant(value: Complex64, degree: usize) -> Self {
        let mut p = Self::zeros(degree);
        p.coeffs[0] = value;
        p
    }

    /// `z^power`, carried at truncation degree `degree` (zero if `power > degree`).
    pub fn monomial(power: usize, degree: usize) -> Self {
        let mut p = Self::zeros(degree);
        if power <= degree {
            p.coeffs[power] = Complex64::new(1.0, 0.0);
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^n`; zero beyond the truncation degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Sum of coefficient moduli.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Cuts or zero-pads to the given truncation degree.
    pub fn truncate(&self, degree: usize) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, Complex64::new(0.0, 0.0));
        Poly { coeffs }
    }

    pub fn scale(&self, factor: Complex64) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Multiplies by `z^shift`, keeping the truncation degree.
    pub fn shift_up(&self, shift: usize) -> Poly {
        let n = self.degree();
        let mut out = Self::zeros(n);
        for j in shift..=n {
            out.coeffs[j] = self.coeffs[j - shift];
        }
        out
    }

    /// Divides by `z^shift`, dropping the first `shift` coefficients and
    /// reducing the degree accordingly.
    pub fn shift_down(&self, shift: usize) -> Poly {
        if shift > self.degree() {
            return Self::zeros(0);
        }
        Poly {
            coeffs: self.coeffs[shift..].to_vec(),
        }
    }

    /// Evaluates `Σ c_n z^n` by nested multiplication.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner_eval(self, z)
    }

    /// Polynomial product, truncated at [`DEFAULT_TRUNCATION_CAP`].
    pub fn cauchy_product(&self, other: &Poly) -> Poly {
        cauchy_product(self, other)
    }

    /// Series product keeping only coefficients up to `degree`.
    pub fn mul_truncated(&self, other: &Poly, degree: usize) -> Poly {
        let mut out = vec![Complex64::new(0.0, 0.0); degree + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(degree + 1) {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(degree + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Poly { coeffs: out }
    }

    /// `p(q(z))` truncated at `max(deg p, deg q)`.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        compose(self, inner)
    }

    /// Multiplicity of the zero at the origin, [`ZERO_THRESHOLD`] as zero test.
    pub fn vanishing_order(&self) -> usize {
        vanishing_order(self)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 8;
        write!(f, "Poly(deg {}; [", self.degree())?;
        for (n, c) in self.coeffs.iter().take(SHOWN).enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        if self.coeffs.len() > SHOWN {
            write!(f, ", ...")?;
        }
        write!(f, "])")
    }
}

fn zip_with(a: &Poly, b: &Poly, op: impl Fn(Complex64, Complex64) -> Complex64) -> Poly {
    let len = a.coeffs.len().max(b.coeffs.len());
    Poly {
        coeffs: (0..len).map(|n| op(a.coeff(n), b.coeff(n))).collect(),
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: Complex64) -> Poly {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: f64) -> Poly {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

pub fn horner_eval(p: &Poly, z: Complex64) -> Complex64 {
    p.coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Product with degree `min(deg p + deg q, DEFAULT_TRUNCATION_CAP)`.
pub fn cauchy_product(p: &Poly, q: &Poly) -> Poly {
    cauchy_product_capped(p, q, DEFAULT_TRUNCATION_CAP)
}

pub fn cauchy_product_capped(p: &Poly, q: &Poly, cap: usize) -> Poly {
    let degree = (p.degree() + q.degree()).min(cap);
    p.mul_truncated(q, degree)
}

/// Coefficients of `(1 - z)^alpha` up to `z^degree`.
pub fn binomial_series(alpha: Complex64, degree: usize) -> Poly {
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut c = Complex64::new(1.0, 0.0);
    coeffs.push(c);
    for n in 1..=degree {
        let nf = n as f64;
        c *= -(alpha - (nf - 1.0)) / nf;
        coeffs.push(c);
    }
    Poly { coeffs }
}

/// Coefficients of `log(1/(1 - z)) = Σ_{n≥1} z^n / n`.
pub fn log_one_minus_inv(degree: usize) -> Poly {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = Complex64::new(1.0 / n as f64, 0.0);
    }
    Poly { coeffs }
}

/// Coefficients of `log(1 + z) = Σ_{n≥1} (-1)^{n+1} z^n / n`.
pub fn log_one_plus(degree: usize) -> Poly {
    let mut p = log_one_minus_inv(degree);
    for (n, c) in p.coeffs.iter_mut().enumerate() {
        if n % 2 == 0 {
            *c = -*c;
        }
    }
    p
}

/// Truncated composition `p ∘ q` by Horner's scheme in `q`.
///
/// The inner series must have an exactly zero constant term, otherwise every
/// coefficient of the composition depends on the discarded tail of `p`.
pub fn compose(p: &Poly, q: &Poly) -> Result<Poly> {
    if q.coeffs[0] != Complex64::new(0.0, 0.0) {
        return Err(LabError::NonzeroInnerConstant(q.coeffs[0].to_string()));
    }
    let degree = p.degree().max(q.degree());
    let mut acc = Poly::constant(p.coeffs[p.degree()], degree);
    for &c in p.coeffs.iter().rev().skip(1) {
        acc = acc.mul_truncated(q, degree);
        acc.coeffs[0] += c;
    }
    Ok(acc)
}

/// Taylor coefficients of `φ_t(z) = a z / (1 - (1 - a) z)` with `a = e^{-t}`.
pub fn mobius_coeffs(t: f64, degree: usize) -> Result<Poly> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(LabError::param(
            "t",
            format!("must be finite and >= 0, got {t}"),
        ));
    }
    let a = (-t).exp();
    let b = 1.0 - a;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
    let mut c = a;
    for slot in coeffs.iter_mut().skip(1) {
        *slot = Complex64::new(c, 0.0);
        c *= b;
    }
    Ok(Poly { coeffs })
}

pub fn vanishing_order(p: &Poly) -> usize {
    vanishing_order_with(p, ZERO_THRESHOLD)
}

/// Index of the first coefficient with modulus above `threshold`, or
/// `deg p + 1` when there is none.
pub fn vanishing_order_with(p: &Poly, threshold: f64) -> usize {
    p.coeffs
        .iter()
        .position(|c| c.norm() > threshold)
        .unwrap_or(p.coeffs.len())
}
