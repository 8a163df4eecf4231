//! Cesàro-type operators as lower-triangular maps on Taylor coefficients.
//!
//! All maps preserve the truncation degree, and the first `M + 1` output
//! coefficients depend only on the first `M + 1` input coefficients, so
//! applying them to a truncation yields the truncation of the image.

use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::series::{log_one_minus_inv, Poly};

fn check_unit_interval(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(LabError::param("t", format!("must lie in [0, 1], got {t}")));
    }
    Ok(())
}

fn check_semigroup_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(LabError::param(
            "t",
            format!("must be finite and >= 0, got {t}"),
        ));
    }
    Ok(())
}

/// Cesàro operator: coefficient `n` of `Cp` is `(p̂(0) + ... + p̂(n)) / (n + 1)`.
pub fn cesaro_apply(p: &Poly) -> Poly {
    let mut sum = Complex64::new(0.0, 0.0);
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            sum += c;
            sum / (n as f64 + 1.0)
        })
        .collect();
    Poly::from_vec(coeffs)
}

/// Generalized Cesàro operator `C_t`, `0 ≤ t ≤ 1`.
///
/// Uses the running sum `s_n = t s_{n-1} + p̂(n)`, output `s_n / (n + 1)`.
pub fn generalized_cesaro_apply(t: f64, p: &Poly) -> Result<Poly> {
    check_unit_interval(t)?;
    Ok(generalized_cesaro_unchecked(t, p))
}

pub(crate) fn generalized_cesaro_unchecked(t: f64, p: &Poly) -> Poly {
    let mut sum = Complex64::new(0.0, 0.0);
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            sum = sum * t + c;
            sum / (n as f64 + 1.0)
        })
        .collect();
    Poly::from_vec(coeffs)
}

/// Hardy operator `C_0`: `p̂(n) ↦ p̂(n) / (n + 1)`.
pub fn hardy_apply(p: &Poly) -> Poly {
    generalized_cesaro_unchecked(0.0, p)
}

/// `C^{-1} p = (1 - z)(z p)'`: coefficient `n` is `(n + 1) p̂(n) - n p̂(n - 1)`.
pub fn cesaro_inverse_apply(p: &Poly) -> Poly {
    let c = p.coeffs();
    let coeffs = (0..c.len())
        .map(|n| {
            let prev = if n == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                c[n - 1]
            };
            c[n] * (n as f64 + 1.0) - prev * n as f64
        })
        .collect();
    Poly::from_vec(coeffs)
}

/// `φ_t(z) = e^{-t} z / ((e^{-t} - 1) z + 1)`.
pub fn mobius_eval(t: f64, z: Complex64) -> Complex64 {
    let a = (-t).exp();
    a * z / ((a - 1.0) * z + 1.0)
}

/// In place: `v ← a v / (1 - b z)`, i.e. `v_n ← a v_n + b v_{n-1}`.
fn damp_geometric(v: &mut [Complex64], a: f64, b: f64) {
    let mut prev = Complex64::new(0.0, 0.0);
    for x in v.iter_mut() {
        *x = *x * a + prev * b;
        prev = *x;
    }
}

/// `S_t p(z) = (φ_t(z)/z) p(φ_t(z))`, truncated at `deg p`.
///
/// Horner's scheme in `φ_t`: multiplying by `φ_t = a z / (1 - b z)` is a
/// shift followed by a first-order recurrence, so the whole application
/// costs `O(N²)` instead of the `O(N³)` of a generic composition.
pub fn s_t_apply(t: f64, p: &Poly) -> Result<Poly> {
    check_semigroup_time(t)?;
    let n = p.degree();
    let a = (-t).exp();
    let b = 1.0 - a;
    let c = p.coeffs();
    let mut acc = vec![Complex64::new(0.0, 0.0); n + 1];
    acc[0] = c[n];
    for k in (0..n).rev() {
        damp_geometric(&mut acc, a, b);
        acc.rotate_right(1);
        acc[0] = c[k];
    }
    damp_geometric(&mut acc, a, b);
    Ok(Poly::from_vec(acc))
}

/// Leading `(N + 1) × (N + 1)` corner of the matrix of `C_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSection {
    t: f64,
    dim: usize,
    entries: Vec<f64>,
}

impl FiniteSection {
    pub fn t(&self) -> f64 {
        self.t
    }

    /// `N + 1`.
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|n| self.entry(n, n)).collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.dim).all(|n| self.row(n)[n + 1..].iter().all(|&x| x == 0.0))
    }

    /// Eigenvalues of a triangular matrix, read off its diagonal.
    pub fn eigenvalues(&self) -> Vec<f64> {
        debug_assert!(self.is_lower_triangular());
        self.diagonal()
    }

    /// Dense matrix-vector product; `x` must have degree `N`.
    pub fn apply(&self, x: &Poly) -> Result<Poly> {
        if x.degree() + 1 != self.dim {
            return Err(LabError::param(
                "x",
                format!(
                    "degree {} does not match section size {}",
                    x.degree(),
                    self.dim
                ),
            ));
        }
        let xs = x.coeffs();
        let coeffs = (0..self.dim)
            .map(|n| self.row(n)[..=n].iter().zip(xs).map(|(&m, &c)| c * m).sum())
            .collect();
        Ok(Poly::from_vec(coeffs))
    }
}

/// Entries `t^{n-j} / (n + 1)` for `j ≤ n`, zero above the diagonal.
pub fn finite_section(t: f64, degree: usize) -> Result<FiniteSection> {
    check_unit_interval(t)?;
    let dim = degree + 1;
    let mut entries = vec![0.0; dim * dim];
    for n in 0..dim {
        let scale = 1.0 / (n as f64 + 1.0);
        for j in 0..=n {
            entries[n * dim + j] = t.powi((n - j) as i32) * scale;
        }
    }
    Ok(FiniteSection { t, dim, entries })
}

/// Checks `C(g^k) = -g^{k+1} / ((k + 1) z)` for `g(z) = log(1 - z)` on
/// the first `degree + 1` coefficients; returns the largest discrepancy.
pub fn log_power_identity_check(k: u32, degree: usize) -> Result<f64> {
    if k == 0 {
        return Err(LabError::param("k", "power must be at least 1"));
    }
    if degree == 0 {
        return Err(LabError::param("degree", "must be at least 1"));
    }
    let n = degree + 1;
    let g = -&log_one_minus_inv(n);
    let mut g_pow = g.clone();
    for _ in 1..k {
        g_pow = g_pow.mul_truncated(&g, n);
    }
    let g_next = g_pow.mul_truncated(&g, n);

    let lhs = cesaro_apply(&g_pow.truncate(degree));
    let rhs = g_next
        .shift_down(1)
        .scale(Complex64::new(-1.0 / (k as f64 + 1.0), 0.0));
    Ok(lhs
        .coeffs()
        .iter()
        .zip(rhs.coeffs())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}
