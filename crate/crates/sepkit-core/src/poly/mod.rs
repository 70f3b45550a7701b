//! Exact arithmetic on integer polynomials.
//!
//! Coefficients are stored in ascending degree order (`coeffs[k]` multiplies
//! `x^k`). The zero polynomial is the distinguished empty coefficient vector;
//! `degree` and `height` fail loudly on it.

mod gcd;
mod resultant;

pub use gcd::{gcd_primitive, squarefree_part};
pub use resultant::{
    discriminant, has_opposite_root_pair, is_separable, product_polynomial, resultant,
    self_opposite_resultant, SylvesterMatrix,
};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::interval::DyInterval;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Univariate polynomial with arbitrary-precision integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPolynomial { coeffs: v }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Result<usize> {
        if self.is_zero() {
            Err(Error::ZeroPolynomial)
        } else {
            Ok(self.coeffs.len() - 1)
        }
    }

    pub fn height(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.coeffs.iter().map(|c| c.abs()).max().unwrap())
    }

    pub fn leading(&self) -> Result<&BigInt> {
        self.coeffs.last().ok_or(Error::ZeroPolynomial)
    }

    pub fn constant_coeff(&self) -> BigInt {
        self.coeff(0)
    }

    /// Exact evaluation at a rational point by Horner's scheme.
    pub fn evaluate_exact(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn evaluate_bigint(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Exact evaluation at a dyadic point (dyadics are closed under + and *).
    pub fn evaluate_dyadic(&self, t: &Dyadic) -> Dyadic {
        let mut acc = Dyadic::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t).add(&Dyadic::from_bigint(c.clone()));
        }
        acc
    }

    /// Rigorous enclosure of `{P(x) : x in t}` by interval Horner.
    pub fn evaluate_interval(&self, t: &DyInterval) -> DyInterval {
        let mut acc = DyInterval::zero();
        for c in self.coeffs.iter().rev() {
            let c = DyInterval::point(Dyadic::from_bigint(c.clone()));
            acc = acc.mul(t).add(&c);
        }
        acc
    }

    pub fn evaluate_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + bigint_to_f64(c);
        }
        acc
    }

    /// `P(-x)`: flips the sign of odd coefficients.
    pub fn negate_argument(&self) -> IntPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        IntPolynomial { coeffs }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        Self::new(coeffs)
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + o.coeff(k)).collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, o: &IntPolynomial) -> IntPolynomial {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return Self::zero();
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Gcd of all coefficients, positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide out the content and normalize the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.coeffs.last().unwrap().is_negative() {
            c = -c;
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|a| a / &c).collect() }
    }

    /// Exact division, asserting the remainder vanishes.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        let nd = self.coeffs.len() - 1;
        if nd < dd {
            return Err(Error::Parse("exact division with smaller dividend".into()));
        }
        let lc = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let (q, r) = rem[k + dd].div_rem(lc);
            if !r.is_zero() {
                return Err(Error::Parse("division is not exact".into()));
            }
            if q.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = &q * b;
                rem[k + j] -= t;
            }
            quot[k] = q;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Err(Error::Parse("division leaves a remainder".into()));
        }
        Ok(Self::new(quot))
    }

    /// Parse the ascending comma-separated coefficient format, e.g.
    /// `2,-13,17,14` for `14x^3+17x^2-13x+2`. A JSON array of decimal strings
    /// is also accepted.
    pub fn parse(text: &str) -> Result<IntPolynomial> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial text".into()));
        }
        let parts: Vec<String> = if text.starts_with('[') {
            let v: serde_json::Value = serde_json::from_str(text)
                .map_err(|e| Error::Parse(format!("invalid JSON array: {e}")))?;
            let arr = v.as_array().ok_or_else(|| Error::Parse("expected JSON array".into()))?;
            arr.iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => Ok(s.clone()),
                    serde_json::Value::Number(n) => Ok(n.to_string()),
                    _ => Err(Error::Parse("array entries must be strings or integers".into())),
                })
                .collect::<Result<_>>()?
        } else {
            text.split(',').map(|s| s.trim().to_string()).collect()
        };
        let coeffs = parts
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("invalid integer coefficient `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Ascending comma-separated coefficients (inverse of `parse`).
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Human-readable descending form, e.g. `14x^3+17x^2-13x+2`.
    pub fn to_pretty_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push('x'),
                _ => {
                    out.push_str("x^");
                    out.push_str(&k.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pretty_string())
    }
}

pub(crate) fn bigint_to_f64(v: &BigInt) -> f64 {
    // good enough for screening: BigInt -> f64 via decimal for big values
    v.to_string().parse::<f64>().unwrap_or(f64::NAN)
}
