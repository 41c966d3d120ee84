//! Polynomial algebra for potentials and changes of Wick ordering.
//!
//! A potential `V(phi)` is a dense univariate polynomial. Changing the
//! normal-ordering mass from `m0` to `m` and the mean from `0` to `xi`
//! re-expands `:V(phi):` in the new ordered powers; the coefficients of that
//! expansion are produced by Gaussian smearing (the heat operator
//! `exp(Y d^2/dx^2)`) followed by a Taylor shift to `xi`. All operations here
//! are exact on polynomials (the smearing series terminates) and pure.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// Maximum supported polynomial degree.
pub const MAX_DEGREE: usize = 16;

/// Factorials 0!..16!, all exactly representable in f64.
const FACT: [f64; MAX_DEGREE + 1] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
];

/// Dense real-coefficient univariate polynomial, constant term first.
///
/// Invariants: trailing coefficient nonzero unless the polynomial is a
/// constant, all coefficients finite, degree at most [`MAX_DEGREE`].
/// Serializes as a plain JSON array of coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients `c0..cd` (`ck` multiplies `x^k`).
    /// Trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                context: "polynomial coefficients",
            });
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        if coeffs.len() - 1 > MAX_DEGREE {
            return Err(Error::DegreeTooHigh {
                degree: coeffs.len() - 1,
                cap: MAX_DEGREE,
            });
        }
        Ok(Self { coeffs })
    }

    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `c * x^k`.
    pub fn monomial(k: usize, c: f64) -> Result<Self> {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0.0]
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::constant(0.0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        Self { coeffs }
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    /// `n`-th derivative evaluated at `x`, divided by `n!` (Taylor coefficient
    /// of the expansion about `x`).
    pub fn taylor_coeff(&self, x: f64, n: usize) -> f64 {
        if n > self.degree() {
            return 0.0;
        }
        let mut acc = 0.0;
        // sum_{i>=n} c_i * C(i,n) * x^(i-n), highest power first
        for i in (n..=self.degree()).rev() {
            acc = acc * x + self.coeffs[i] * binomial(i, n);
        }
        acc
    }

    /// Re-centers the polynomial: returns `q` with `q(b) = p(x0 + b)`.
    pub fn shifted(&self, x0: f64) -> Self {
        let coeffs = (0..=self.degree())
            .map(|k| self.taylor_coeff(x0, k))
            .collect();
        Self { coeffs }
    }

    /// Gaussian smearing `exp(y d^2/dx^2) p`: the terminating series
    /// `sum_j y^j / j! p^(2j)`. Preserves the degree.
    pub fn smear(&self, y: f64) -> Self {
        let d = self.degree();
        let mut out = vec![0.0; d + 1];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            let mut j = (d - i) / 2;
            // Horner in y: coefficients c_{i+2j} (i+2j)! / (i! j!)
            loop {
                acc = acc * y + self.coeffs[i + 2 * j] * FACT[i + 2 * j] / (FACT[i] * FACT[j]);
                if j == 0 {
                    break;
                }
                j -= 1;
            }
            *slot = acc;
        }
        Self { coeffs: out }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs: Vec<f64> = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        // re-trim: cancellation can lower the degree
        Self::new(coeffs).expect("sum of valid polynomials is valid")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-1.0))
    }
}

impl TryFrom<Vec<f64>> for Polynomial {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Polynomial> for Vec<f64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0.0 && self.degree() > 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    FACT[n] / (FACT[k] * FACT[n - k])
}

/// A change of Wick ordering: smearing parameter `y` and field mean `xi`.
///
/// `y = ln(m0^2/m^2) / (8 pi)` is half the variance shift
/// `delta = ln(m0^2/m^2) / (4 pi)` between the two orderings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderingShift {
    pub y: f64,
    pub xi: f64,
}

impl OrderingShift {
    pub fn new(y: f64, xi: f64) -> Self {
        Self { y, xi }
    }

    /// Shift from the ordering of mass `m0` (mean 0) to mass `m` (mean `xi`).
    pub fn from_masses(m0_sq: f64, m_sq: f64, xi: f64) -> Result<Self> {
        if m0_sq <= 0.0 || m_sq <= 0.0 {
            return Err(Error::Domain(format!(
                "ordering masses must be positive, got m0^2={m0_sq}, m^2={m_sq}"
            )));
        }
        Ok(Self {
            y: smearing_parameter(m0_sq, m_sq),
            xi,
        })
    }

    /// The variance shift between the two orderings, `2 y`.
    pub fn variance_shift(&self) -> f64 {
        2.0 * self.y
    }

    /// The shift undoing this one: `reorder(reorder(p, s), s.inverse()) = p`.
    pub fn inverse(&self) -> Self {
        Self {
            y: -self.y,
            xi: -self.xi,
        }
    }
}

/// `Y = ln(m0^2/m^2) / (8 pi)`.
pub fn smearing_parameter(m0_sq: f64, m_sq: f64) -> f64 {
    (m0_sq / m_sq).ln() / (8.0 * PI)
}

/// Coefficient of the `k`-th ordered power after re-ordering `:p(phi):` by
/// `shift`: the `k`-th Taylor coefficient of the smeared polynomial about
/// `xi`. Returns 0 for `k` beyond the degree.
pub fn t_coefficient(p: &Polynomial, shift: OrderingShift, k: usize) -> f64 {
    p.smear(shift.y).taylor_coeff(shift.xi, k)
}

/// Full re-ordered expansion: polynomial `q` with `q_k = t_coefficient(p, shift, k)`,
/// i.e. `q(b) = smear(p, y)(xi + b)`.
pub fn reorder(p: &Polynomial, shift: OrderingShift) -> Polynomial {
    p.smear(shift.y).shifted(shift.xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn x_pow(k: usize) -> Polynomial {
        Polynomial::monomial(k, 1.0).unwrap()
    }

    #[test]
    fn smear_x2_adds_constant() {
        let p = x_pow(2);
        for y in [-0.7, 0.0, 0.3, 2.0] {
            let q = p.smear(y);
            assert_eq!(q.coeffs(), &[2.0 * y, 0.0, 1.0]);
        }
    }

    #[test]
    fn smear_x4_closed_form() {
        let y = 0.37;
        let q = x_pow(4).smear(y);
        assert_eq!(q.coeffs(), &[12.0 * y * y, 0.0, 12.0 * y, 0.0, 1.0]);
    }

    #[test]
    fn smear_at_zero_is_identity() {
        let p = Polynomial::new(vec![1.0, -2.0, 0.5, 3.0, -0.25]).unwrap();
        assert_eq!(p.smear(0.0), p);
    }

    #[test]
    fn t1_for_quartic_matches_closed_form() {
        // p = lambda x^4 + sigma x^2:
        // T_1 = xi (4 lambda xi^2 + 2 sigma + 24 lambda y)
        let (lambda, sigma) = (0.7, -0.4);
        let p = Polynomial::new(vec![0.0, 0.0, sigma, 0.0, lambda]).unwrap();
        for (y, xi) in [(0.21, 1.3), (-0.5, -0.8), (0.0, 2.0)] {
            let t1 = t_coefficient(&p, OrderingShift::new(y, xi), 1);
            let expect = xi * (4.0 * lambda * xi * xi + 2.0 * sigma + 24.0 * lambda * y);
            assert_relative_eq!(t1, expect, max_relative = 1e-14);
        }
    }

    #[test]
    fn t2_of_x2_is_one() {
        let t2 = t_coefficient(&x_pow(2), OrderingShift::new(0.9, 0.0), 2);
        assert_eq!(t2, 1.0);
    }

    #[test]
    fn t1_of_x3() {
        // smear(x^3, y) = x^3 + 6 y x; derivative at xi: 3 xi^2 + 6 y
        let (y, xi) = (0.41, -1.7);
        let t1 = t_coefficient(&x_pow(3), OrderingShift::new(y, xi), 1);
        assert_relative_eq!(t1, 3.0 * xi * xi + 6.0 * y, max_relative = 1e-14);
    }

    #[test]
    fn t_beyond_degree_is_zero() {
        assert_eq!(t_coefficient(&x_pow(3), OrderingShift::new(0.2, 1.0), 7), 0.0);
    }

    #[test]
    fn reorder_examples() {
        let y = 0.13;
        let q = reorder(&x_pow(2), OrderingShift::new(y, 0.0));
        assert_eq!(q.coeffs(), &[2.0 * y, 0.0, 1.0]);
        let q4 = reorder(&x_pow(4), OrderingShift::new(y, 0.0));
        assert_eq!(q4.coeffs(), &[12.0 * y * y, 0.0, 12.0 * y, 0.0, 1.0]);
    }

    #[test]
    fn t1_is_xi_derivative_of_t0() {
        let p = Polynomial::new(vec![0.3, -1.0, 0.2, 0.0, 0.9, 0.01]).unwrap();
        let (y, xi) = (0.27, 0.85);
        let h = 1e-6;
        let t0 = |z: f64| t_coefficient(&p, OrderingShift::new(y, z), 0);
        let fd = (t0(xi + h) - t0(xi - h)) / (2.0 * h);
        let t1 = t_coefficient(&p, OrderingShift::new(y, xi), 1);
        assert_relative_eq!(t1, fd, max_relative = 1e-8);
    }

    #[test]
    fn degree_cap_enforced() {
        let mut coeffs = vec![0.0; MAX_DEGREE + 2];
        *coeffs.last_mut().unwrap() = 1.0;
        assert!(matches!(
            Polynomial::new(coeffs),
            Err(Error::DegreeTooHigh { .. })
        ));
    }

    #[test]
    fn serializes_as_coefficient_array() {
        let p = Polynomial::new(vec![1.5, 0.0, -2.0]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[1.5,0.0,-2.0]");
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    fn coeff_strategy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-3.0f64..3.0, 1..=9)
    }

    fn max_abs_coeff(p: &Polynomial) -> f64 {
        p.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs()))
    }

    proptest! {
        #[test]
        fn smear_semigroup(coeffs in coeff_strategy(), y1 in -1.0f64..1.0, y2 in -1.0f64..1.0) {
            let p = Polynomial::new(coeffs).unwrap();
            let a = p.smear(y1).smear(y2);
            let b = p.smear(y1 + y2);
            let scale = max_abs_coeff(&a);
            for k in 0..=a.degree().max(b.degree()) {
                prop_assert!((a.coeff(k) - b.coeff(k)).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn generating_identity(coeffs in coeff_strategy(),
                               y in -1.0f64..1.0,
                               xi in -3.0f64..3.0,
                               b in -2.0f64..2.0) {
            // sum_k T_k b^k = smear(p, y)(xi + b)
            let p = Polynomial::new(coeffs).unwrap();
            let shift = OrderingShift::new(y, xi);
            let lhs: f64 = (0..=p.degree())
                .map(|k| t_coefficient(&p, shift, k) * b.powi(k as i32))
                .sum();
            let rhs = p.smear(y).eval(xi + b);
            let scale = max_abs_coeff(&p) * (1.0 + b.abs() + xi.abs()).powi(p.degree() as i32);
            prop_assert!((lhs - rhs).abs() <= 1e-11 * scale);
        }

        #[test]
        fn reorder_round_trip(coeffs in coeff_strategy(),
                              y in -1.0f64..1.0,
                              xi in -3.0f64..3.0) {
            let p = Polynomial::new(coeffs).unwrap();
            let shift = OrderingShift::new(y, xi);
            let back = reorder(&reorder(&p, shift), shift.inverse());
            let scale = max_abs_coeff(&p) * (1.0 + xi.abs()).powi(p.degree() as i32);
            for k in 0..=p.degree().max(back.degree()) {
                prop_assert!((p.coeff(k) - back.coeff(k)).abs() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn ordering_shift_from_masses() {
        let s = OrderingShift::from_masses(4.0, 1.0, 0.5).unwrap();
        assert_relative_eq!(s.y, 4.0f64.ln() / (8.0 * PI), max_relative = 1e-15);
        assert_abs_diff_eq!(s.variance_shift(), 2.0 * s.y);
        assert!(OrderingShift::from_masses(-1.0, 1.0, 0.0).is_err());
    }
}
