//! Test functions: 50 seeded random polynomials and a structured family
//! with known growth.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{LabError, Result};
use crate::series::{binomial_series, log_one_minus_inv, log_one_plus, Poly};

pub const CORPUS_SEED: u64 = 0x5EED;
pub const RANDOM_CORPUS_SIZE: usize = 50;

/// `count` polynomials of the given degree with coefficients uniform in the unit disc.
pub fn random_polys(seed: u64, count: usize, degree: usize) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coeffs = (0..=degree)
                .map(|_| {
                    let r: f64 = rng.gen::<f64>().sqrt();
                    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                    Complex64::from_polar(r, theta)
                })
                .collect();
            Poly::from_vec(coeffs)
        })
        .collect()
}

pub fn random_corpus(degree: usize) -> Vec<Poly> {
    random_polys(CORPUS_SEED, RANDOM_CORPUS_SIZE, degree)
}

/// Functions addressable by name from the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedFunction {
    /// `1`
    Constant,
    /// `z`
    Identity,
    /// `log(1/(1 - z))`
    LogInv,
    /// `log(1 + z)`
    LogOnePlus,
    /// `g^k` with `g(z) = log(1 - z)`
    LogPower(u32),
    /// `(1 - z)^{-γ}`
    NegPower(f64),
    /// `e_n(z) = z^{n-1} (1 - z)^{-n}`
    Eigen(usize),
    /// Member `i` of the seeded random corpus.
    Random(usize),
}

/// `e_n(z) = z^{n-1} (1 - z)^{-n}` truncated at `degree`.
pub fn cesaro_eigenfunction(n: usize, degree: usize) -> Poly {
    assert!(n >= 1);
    Poly::monomial(n - 1, degree).mul_truncated(
        &binomial_series(Complex64::new(-(n as f64), 0.0), degree),
        degree,
    )
}

/// `log(1 - z)^k` truncated at `degree`.
pub fn log_power(k: u32, degree: usize) -> Poly {
    let g = -&log_one_minus_inv(degree);
    let mut out = Poly::constant(Complex64::new(1.0, 0.0), degree);
    for _ in 0..k {
        out = out.mul_truncated(&g, degree);
    }
    out
}

impl NamedFunction {
    pub fn build(&self, degree: usize) -> Poly {
        self.build_seeded(degree, CORPUS_SEED)
    }

    /// As [`build`](Self::build), drawing `random<i>` from `seed` instead of [`CORPUS_SEED`].
    pub fn build_seeded(&self, degree: usize, seed: u64) -> Poly {
        match *self {
            NamedFunction::Constant => Poly::constant(Complex64::new(1.0, 0.0), degree),
            NamedFunction::Identity => Poly::monomial(1, degree),
            NamedFunction::LogInv => log_one_minus_inv(degree),
            NamedFunction::LogOnePlus => log_one_plus(degree),
            NamedFunction::LogPower(k) => log_power(k, degree),
            NamedFunction::NegPower(gamma) => binomial_series(Complex64::new(-gamma, 0.0), degree),
            NamedFunction::Eigen(n) => cesaro_eigenfunction(n, degree),
            NamedFunction::Random(i) => {
                random_polys(seed, i + 1, degree).pop().expect("count >= 1")
            }
        }
    }
}

impl fmt::Display for NamedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedFunction::Constant => write!(f, "const1"),
            NamedFunction::Identity => write!(f, "z"),
            NamedFunction::LogInv => write!(f, "log-inv"),
            NamedFunction::LogOnePlus => write!(f, "log1p"),
            NamedFunction::LogPower(k) => write!(f, "g{k}"),
            NamedFunction::NegPower(g) => write!(f, "pow{g}"),
            NamedFunction::Eigen(n) => write!(f, "e{n}"),
            NamedFunction::Random(i) => write!(f, "random{i}"),
        }
    }
}

impl FromStr for NamedFunction {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            LabError::param(
                "function",
                format!(
                    "unknown function `{s}` (expected const1, z, log-inv, log1p, g<k>, pow<gamma>, e<n> or random<i>)"
                ),
            )
        };
        let parsed = match s {
            "const1" => NamedFunction::Constant,
            "z" => NamedFunction::Identity,
            "log-inv" => NamedFunction::LogInv,
            "log1p" => NamedFunction::LogOnePlus,
            _ => {
                if let Some(rest) = s.strip_prefix("random") {
                    let i: usize = rest.parse().map_err(|_| bad())?;
                    if i >= RANDOM_CORPUS_SIZE {
                        return Err(bad());
                    }
                    NamedFunction::Random(i)
                } else if let Some(rest) = s.strip_prefix("pow") {
                    let g: f64 = rest.parse().map_err(|_| bad())?;
                    if !(g > 0.0 && g.is_finite()) {
                        return Err(bad());
                    }
                    NamedFunction::NegPower(g)
                } else if let Some(rest) = s.strip_prefix('g') {
                    let k: u32 = rest.parse().map_err(|_| bad())?;
                    if k == 0 {
                        return Err(bad());
                    }
                    NamedFunction::LogPower(k)
                } else if let Some(rest) = s.strip_prefix('e') {
                    let n: usize = rest.parse().map_err(|_| bad())?;
                    if n == 0 {
                        return Err(bad());
                    }
                    NamedFunction::Eigen(n)
                } else {
                    return Err(bad());
                }
            }
        };
        Ok(parsed)
    }
}

/// `1`, `log(1/(1-z))`, `g^k` for `k ≤ 4`, `(1-z)^{-γ}` for `γ ∈ {1/2, 1, 2}`, `e_n` for `n ≤ 4`.
pub fn structured_family() -> Vec<NamedFunction> {
    let mut family = vec![NamedFunction::Constant, NamedFunction::LogInv];
    family.extend((1..=4).map(NamedFunction::LogPower));
    family.extend([0.5, 1.0, 2.0].into_iter().map(NamedFunction::NegPower));
    family.extend((1..=4).map(NamedFunction::Eigen));
    family
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub poly: Poly,
}

/// Random corpus followed by the structured family, all at `degree`.
pub fn full_corpus(degree: usize) -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = random_corpus(degree)
        .into_iter()
        .enumerate()
        .map(|(i, poly)| CorpusEntry {
            name: format!("random{i}"),
            poly,
        })
        .collect();
    out.extend(structured_family().into_iter().map(|f| CorpusEntry {
        name: f.to_string(),
        poly: f.build(degree),
    }));
    out
}
