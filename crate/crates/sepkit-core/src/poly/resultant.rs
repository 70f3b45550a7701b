//! Resultants via fraction-free Bareiss elimination on the exact Sylvester
//! matrix, and the derived quantities: discriminants, separability, the
//! opposite-root test `res(P(x), P(-x))`, and the composed-product polynomial
//! whose roots are the pairwise products of the roots of `P`.

use super::IntPolynomial;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The Sylvester matrix of two nonzero polynomials.
#[derive(Debug, Clone)]
pub struct SylvesterMatrix {
    entries: Vec<Vec<BigInt>>,
    d1: usize,
    d2: usize,
}

impl SylvesterMatrix {
    pub fn new(p: &IntPolynomial, q: &IntPolynomial) -> Result<Self> {
        let d1 = p.degree()?;
        let d2 = q.degree()?;
        let n = d1 + d2;
        let mut entries = vec![vec![BigInt::zero(); n]; n];
        // d2 shifted rows of P's descending coefficients, then d1 rows of Q's
        for i in 0..d2 {
            for k in 0..=d1 {
                entries[i][i + k] = p.coeff(d1 - k);
            }
        }
        for i in 0..d1 {
            for k in 0..=d2 {
                entries[d2 + i][i + k] = q.coeff(d2 - k);
            }
        }
        Ok(SylvesterMatrix { entries, d1, d2 })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn determinant(mut self) -> BigInt {
        let n = self.d1 + self.d2;
        if n == 0 {
            return BigInt::one();
        }
        let m = &mut self.entries;
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &t / &prev; // exact by Bareiss
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = std::mem::take(&mut m[n - 1][n - 1]);
        if sign < 0 {
            -det
        } else {
            det
        }
    }
}

/// `res(P, Q)`: determinant of the Sylvester matrix. Degree-zero operands
/// follow the usual convention `res(c, Q) = c^deg(Q)`.
pub fn resultant(p: &IntPolynomial, q: &IntPolynomial) -> Result<BigInt> {
    let d1 = p.degree()?;
    let d2 = q.degree()?;
    if d1 == 0 {
        return Ok(p.coeff(0).pow(d2 as u32));
    }
    if d2 == 0 {
        return Ok(q.coeff(0).pow(d1 as u32));
    }
    Ok(SylvesterMatrix::new(p, q)?.determinant())
}

/// `r = res(P(x), P(-x))`, which vanishes exactly when some pair of roots
/// sums to zero. When nonzero, `r` is divisible by `a_0 * a_d`.
pub fn self_opposite_resultant(p: &IntPolynomial) -> Result<BigInt> {
    let d = p.degree()?;
    if d == 0 {
        return Err(Error::DegreeTooSmall { required: 1, got: 0 });
    }
    let r = resultant(p, &p.negate_argument())?;
    if !r.is_zero() {
        let a0ad = p.coeff(0) * p.coeff(d);
        assert!(
            !a0ad.is_zero() && (&r % &a0ad).is_zero(),
            "self-opposite resultant must be divisible by a_0*a_d"
        );
    }
    Ok(r)
}

/// Discriminant: `(-1)^(d(d-1)/2) * res(P, P') / a_d`, exact.
pub fn discriminant(p: &IntPolynomial) -> Result<BigInt> {
    let d = p.degree()?;
    if d == 0 {
        return Err(Error::DegreeTooSmall { required: 1, got: 0 });
    }
    let r = resultant(p, &p.derivative())?;
    let lead = p.coeff(d);
    let q = &r / &lead;
    debug_assert_eq!(&q * &lead, r, "res(P, P') must be divisible by the leading coefficient");
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

/// True iff `P` has no multiple roots (nonzero discriminant).
pub fn is_separable(p: &IntPolynomial) -> Result<bool> {
    Ok(!discriminant(p)?.is_zero())
}

/// True iff some `alpha_i + alpha_j = 0` (including a root at zero).
pub fn has_opposite_root_pair(p: &IntPolynomial) -> Result<bool> {
    Ok(self_opposite_resultant(p)?.is_zero())
}

/// An integer polynomial of degree `d^2` whose roots are exactly the pairwise
/// products `alpha_i * alpha_j` over ordered pairs, computed as
/// `Res_x(P(x), x^d P(y/x))` by evaluation at `d^2 + 1` integer points
/// followed by exact interpolation.
pub fn product_polynomial(p: &IntPolynomial) -> Result<IntPolynomial> {
    let d = p.degree()?;
    if d == 0 {
        return Err(Error::DegreeTooSmall { required: 1, got: 0 });
    }
    if p.coeff(0).is_zero() {
        return Err(Error::ZeroConstantCoefficient);
    }
    let n = d * d; // exact degree in y: leading coefficient a_d^(2d) != 0
    let values: Vec<BigInt> = (0..=n)
        .map(|t| {
            let t = BigInt::from(t);
            // S_t(x) = sum_k a_k t^k x^(d-k); ascending x-coefficient j is a_(d-j) t^(d-j)
            let mut pow = vec![BigInt::one(); d + 1];
            for k in 1..=d {
                pow[k] = &pow[k - 1] * &t;
            }
            let coeffs = (0..=d).map(|j| p.coeff(d - j) * &pow[d - j]).collect();
            let s_t = IntPolynomial::new(coeffs);
            debug_assert_eq!(s_t.degree().unwrap(), d);
            resultant(p, &s_t)
        })
        .collect::<Result<Vec<_>>>()?;
    interpolate_integer(&values)
}

/// Exact interpolation at nodes `0..=n` via Newton forward differences,
/// asserting the result has integer coefficients.
fn interpolate_integer(values: &[BigInt]) -> Result<IntPolynomial> {
    let n = values.len() - 1;
    // forward differences Delta^k f(0)
    let mut diffs = values.to_vec();
    let mut deltas = Vec::with_capacity(n + 1);
    deltas.push(diffs[0].clone());
    for k in 1..=n {
        for i in 0..=n - k {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        deltas.push(diffs[0].clone());
    }
    // f(t) = sum_k Delta^k f(0)/k! * t(t-1)...(t-k+1)
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); n + 1];
    let mut basis: Vec<BigRational> = vec![BigRational::one()]; // product of (t - j)
    let mut factorial = BigInt::one();
    for (k, delta) in deltas.iter().enumerate() {
        if k > 0 {
            factorial *= BigInt::from(k);
            // basis *= (t - (k-1))
            let shift = BigRational::from_integer(BigInt::from(k as i64 - 1));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * &shift;
            }
            basis = next;
        }
        if delta.is_zero() {
            continue;
        }
        let scale = BigRational::new(delta.clone(), factorial.clone());
        for (i, b) in basis.iter().enumerate() {
            acc[i] += b * &scale;
        }
    }
    let coeffs = acc
        .into_iter()
        .map(|c| {
            if c.denom().is_one() {
                Ok(c.to_integer())
            } else {
                Err(Error::Parse("interpolation produced non-integer coefficient".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::new(coeffs))
}
