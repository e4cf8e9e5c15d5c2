//! Complex q-arithmetic with a single, fixed branch of `ln q`.
//!
//! Every power `q^z` in the crate is `exp(z * gamma)` with `gamma` the
//! principal logarithm chosen once in [`DeformParams`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::IdentityReport;

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

pub const DEFAULT_TOL: f64 = 1e-9;
/// Largest n for which `q^n != 1` is checked.
pub const ROOT_OF_UNITY_ORDER: u32 = 64;

#[inline]
pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Deformation parameter together with its derived constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformParams {
    pub q: C64,
    pub kappa: i64,
    pub gamma: C64,
    pub alpha: f64,
    pub tol: f64,
}

impl DeformParams {
    pub fn new(q: C64, kappa: i64) -> Result<Self> {
        Self::with_tol(q, kappa, DEFAULT_TOL)
    }

    pub fn with_tol(q: C64, kappa: i64, tol: f64) -> Result<Self> {
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(Error::Param(format!("q = {q} is not finite")));
        }
        if q.norm() == 0.0 {
            return Err(Error::Param("q = 0".into()));
        }
        if q.im == 0.0 && q.re < 0.0 {
            return Err(Error::Param(format!(
                "q = {q} lies on the negative real axis (branch cut of ln q)"
            )));
        }
        Self::from_log(q.ln(), kappa, tol)
    }

    /// Build from a chosen logarithm. Used for derived bases (q^{1/2}, q^2,
    /// q^{-1}) so that they inherit the parent branch instead of re-taking a
    /// principal log.
    pub fn from_log(gamma: C64, kappa: i64, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Param(format!("tolerance {tol} must be positive")));
        }
        if !(gamma.re.is_finite() && gamma.im.is_finite()) {
            return Err(Error::Param(format!("ln q = {gamma} is not finite")));
        }
        let q = gamma.exp();
        for n in 1..=ROOT_OF_UNITY_ORDER {
            let qn = (gamma * n as f64).exp();
            if (qn - ONE).norm() <= 1e-12 {
                return Err(Error::Param(format!(
                    "q = {q} is (numerically) a root of unity: q^{n} = 1"
                )));
            }
        }
        Ok(Self {
            q,
            kappa,
            gamma,
            alpha: 2.0 * kappa as f64 * PI + PI / 2.0,
            tol,
        })
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Parameters at `q^{-1}`: `gamma -> -gamma`, branch integer unchanged.
    pub fn inverted(&self) -> Self {
        Self {
            q: (-self.gamma).exp(),
            gamma: -self.gamma,
            ..*self
        }
    }

    /// Parameters at base `q^t` (`gamma -> t * gamma`), same branch integer.
    pub fn rebased(&self, t: f64) -> Result<Self> {
        Self::from_log(self.gamma * t, self.kappa, self.tol)
    }

    /// The constant `i alpha / gamma` shifting `N` throughout the Hopf structure.
    pub fn offset(&self) -> C64 {
        I * self.alpha / self.gamma
    }

    /// `exp(i * alpha * t)`.
    pub fn phase(&self, t: f64) -> C64 {
        C64::from_polar(1.0, self.alpha * t)
    }

    pub fn q_power(&self, z: C64) -> C64 {
        (z * self.gamma).exp()
    }

    pub fn q_power_re(&self, x: f64) -> C64 {
        (self.gamma * x).exp()
    }

    /// `[x] = (q^x - q^{-x}) / (q - q^{-1})`, evaluated as `sinh(x gamma) / sinh(gamma)`.
    pub fn q_number(&self, x: C64) -> C64 {
        (x * self.gamma).sinh() / self.gamma.sinh()
    }

    pub fn q_number_re(&self, x: f64) -> C64 {
        self.q_number(c(x))
    }

    /// `[1][2]...[n]`.
    pub fn q_factorial(&self, n: u32) -> C64 {
        (1..=n).map(|j| self.q_number_re(j as f64)).product()
    }

    /// `prod_{j=1}^{k} [j/2]`, the denominator of the R-matrix series.
    pub fn half_index_product(&self, k: u32) -> C64 {
        (1..=k).map(|j| self.q_number_re(j as f64 / 2.0)).product()
    }

    /// Gaussian binomial `binom(n, k)_q` in the non-symmetric convention:
    /// if `y x = q x y` then `(x + y)^n = sum_k binom(n, k)_q x^k y^(n-k)`.
    pub fn gaussian_binomial(&self, n: u32, k: u32) -> C64 {
        if k > n {
            return ZERO;
        }
        let mut row = vec![ONE];
        for m in 1..=n as usize {
            let mut next = vec![ZERO; m + 1];
            next[0] = ONE;
            next[m] = ONE;
            for j in 1..m {
                next[j] = row[j - 1] + self.q_power_re(j as f64) * row[j];
            }
            row = next;
        }
        row[k as usize]
    }

    /// Whether `|q| = 1` within tolerance (flagged in reports; the
    /// recursive normalization still applies).
    pub fn on_unit_circle(&self) -> bool {
        (self.q.norm() - 1.0).abs() <= 1e-12
    }
}

/// Cross-checks of the q-arithmetic against direct closed forms.
pub fn self_checks(p: &DeformParams) -> Vec<IdentityReport> {
    let q = p.q;
    let args = [
        c(0.5),
        c(1.0),
        c(2.0),
        c(3.5),
        C64::new(1.0, 0.3),
        C64::new(-2.0, 0.7),
    ];
    let mut number = (0.0f64, 1.0f64);
    let mut symmetry = (0.0f64, 1.0f64);
    for &x in &args {
        let direct = (q.powc(x) - q.powc(-x)) / (q - 1.0 / q);
        let got = p.q_number(x);
        number = (
            number.0.max((got - direct).norm()),
            number.1.max(direct.norm()),
        );
        symmetry.0 = symmetry.0.max((p.q_number(-x) + got).norm());
        symmetry.1 = symmetry.1.max(got.norm());
    }
    let two = q + 1.0 / q;
    symmetry.0 = symmetry.0.max((p.q_number_re(2.0) - two).norm());

    let mut binom = (0.0f64, 1.0f64);
    for n in 0..=6u32 {
        for k in 0..=n {
            let direct: C64 = (0..k)
                .map(|i| {
                    (ONE - p.q_power_re((n - i) as f64)) / (ONE - p.q_power_re((i + 1) as f64))
                })
                .product();
            let got = p.gaussian_binomial(n, k);
            binom = (
                binom.0.max((got - direct).norm()),
                binom.1.max(direct.norm()),
            );
        }
    }
    let echo = format_complex(q);
    [
        ("qscalars_q_number", number),
        ("qscalars_symmetry", symmetry),
        ("qscalars_gaussian", binom),
    ]
    .into_iter()
    .map(|(name, (dev, scale))| {
        IdentityReport::new(name, dev, dev / scale, p.tol).param("q", &echo)
    })
    .collect()
}

/// Parse a complex literal such as `1.3`, `0.7+0.2i`, `-0.5i`, `2-1e-3i`.
pub fn parse_complex(text: &str) -> std::result::Result<C64, String> {
    let s: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let bad = || format!("malformed complex literal `{text}`");
    if let Some(body) = s.strip_suffix(['i', 'j']) {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            if (bytes[idx] == b'+' || bytes[idx] == b'-') && !matches!(bytes[idx - 1], b'e' | b'E')
            {
                split = Some(idx);
                break;
            }
        }
        let (re, im) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse::<f64>().map_err(|_| bad())?,
        };
        let re = re.parse::<f64>().map_err(|_| bad())?;
        Ok(C64::new(re, im))
    } else {
        s.parse::<f64>().map(c).map_err(|_| bad())
    }
}

/// Inverse of [`parse_complex`] with round-trip precision.
pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: f64) -> DeformParams {
        DeformParams::new(c(q), 0).unwrap()
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn q_number_small_cases() {
        let params = p(2.0);
        assert!(close(params.q_number(ZERO), ZERO, 1e-15));
        assert!(close(params.q_number(ONE), ONE, 1e-15));
        assert!(close(params.q_number_re(2.0), c(2.5), 1e-14));
    }

    #[test]
    fn q_number_half_matches_simplified_form() {
        for q in [C64::new(1.3, 0.0), C64::new(0.7, 0.2), C64::new(2.0, -0.5)] {
            let params = DeformParams::new(q, 0).unwrap();
            let sq = params.q_power_re(0.5);
            let expect = ONE / (sq + ONE / sq);
            assert!(close(params.q_number_re(0.5), expect, 1e-14));
        }
    }

    #[test]
    fn factorial_and_half_products() {
        let params = p(2.0);
        assert_eq!(params.q_factorial(0), ONE);
        assert!(close(params.q_factorial(1), ONE, 1e-15));
        assert!(close(params.q_factorial(3), c(13.125), 1e-12));
        assert_eq!(params.half_index_product(0), ONE);
        let sq = 2f64.sqrt();
        assert!(close(
            params.half_index_product(1),
            c(1.0 / (sq + 1.0 / sq)),
            1e-15
        ));
        assert!(close(
            params.half_index_product(2),
            c(0.471_404_520_791_031_7),
            1e-7
        ));
    }

    #[test]
    fn q_power_branch_constant() {
        let params = p(1.3);
        assert_eq!(params.q_power(ZERO), ONE);
        assert!(close(params.q_power(ONE), c(1.3), 1e-15));
        assert!(close(params.q_power(-params.offset()), -I, 1e-15));
        let k1 = DeformParams::new(C64::new(0.7, 0.2), 1).unwrap();
        assert!(close(k1.q_power(-k1.offset()), -I, 1e-12));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(DeformParams::new(ZERO, 0).is_err());
        assert!(DeformParams::new(ONE, 0).is_err());
        assert!(DeformParams::new(c(-2.0), 0).is_err());
        assert!(DeformParams::new(C64::from_polar(1.0, 2.0 * PI / 5.0), 0).is_err());
        assert!(DeformParams::new(C64::from_polar(1.0, 1.0), 0).is_ok());
        assert!(DeformParams::with_tol(c(1.3), 0, 0.0).is_err());
    }

    #[test]
    fn alpha_is_exact() {
        for kappa in [-2, 0, 1, 5] {
            let params = DeformParams::new(c(1.3), kappa).unwrap();
            assert_eq!(params.alpha, 2.0 * kappa as f64 * PI + PI / 2.0);
            assert!(close(params.gamma.exp(), params.q, 1e-15));
        }
    }

    #[test]
    fn inverted_flips_gamma_only() {
        let params = DeformParams::new(C64::new(0.7, 0.2), 1).unwrap();
        let inv = params.inverted();
        assert_eq!(inv.gamma, -params.gamma);
        assert_eq!(inv.alpha, params.alpha);
        assert!(close(inv.q * params.q, ONE, 1e-15));
        assert!(close(inv.offset(), -params.offset(), 1e-15));
    }

    #[test]
    fn gaussian_binomial_small() {
        let params = p(1.7);
        let q = c(1.7);
        assert!(close(params.gaussian_binomial(2, 1), ONE + q, 1e-14));
        assert!(close(
            params.gaussian_binomial(3, 1),
            ONE + q + q * q,
            1e-13
        ));
        assert_eq!(params.gaussian_binomial(2, 3), ZERO);
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.3").unwrap(), c(1.3));
        assert_eq!(parse_complex("0.7+0.2i").unwrap(), C64::new(0.7, 0.2));
        assert_eq!(parse_complex("-0.5i").unwrap(), C64::new(0.0, -0.5));
        assert_eq!(parse_complex("1e-3-2e-1i").unwrap(), C64::new(1e-3, -0.2));
        assert_eq!(parse_complex("i").unwrap(), I);
        assert!(parse_complex("1.3+").is_err());
        for z in [
            C64::new(0.7, 0.2),
            C64::new(1.3, 0.0),
            C64::new(-1.0, -1e-7),
        ] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }

    #[test]
    fn self_checks_pass() {
        for q in [c(1.3), C64::new(0.7, 0.2), C64::new(0.6, 0.8)] {
            let p = DeformParams::new(q, 0).unwrap();
            for r in self_checks(&p) {
                assert!(
                    r.normalized_residual <= 1e-13,
                    "{} {}",
                    r.identity,
                    r.normalized_residual
                );
            }
        }
    }
}
