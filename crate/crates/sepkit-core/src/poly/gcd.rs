//! Polynomial gcd over the integers via the subresultant pseudo-remainder
//! sequence, with content removal at each step to control coefficient growth.

use super::IntPolynomial;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Pseudo-remainder of `a` by `b`: the remainder of `lc(b)^(da-db+1) * a`
/// divided by `b`, which stays integral.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let da = a.coeffs().len() - 1;
    let db = b.coeffs().len() - 1;
    debug_assert!(da >= db);
    let lc_b = b.coeffs().last().unwrap().clone();
    let mut rem: Vec<BigInt> = a.coeffs().to_vec();
    for k in (db..=da).rev() {
        let lead = rem[k].clone();
        for c in rem.iter_mut() {
            *c *= &lc_b;
        }
        if !lead.is_zero() {
            for (j, bc) in b.coeffs().iter().enumerate() {
                let t = &lead * bc;
                rem[k - db + j] -= t;
            }
        }
        debug_assert!(rem[k].is_zero());
    }
    rem.truncate(db.max(1));
    IntPolynomial::new(rem)
}

/// Primitive gcd over the rationals, scaled to integer coefficients with a
/// positive leading coefficient. `gcd(0, 0)` is an error.
pub fn gcd_primitive(p: &IntPolynomial, q: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_zero() {
        return Ok(q.primitive_part());
    }
    if q.is_zero() {
        return Ok(p.primitive_part());
    }
    let mut a = p.primitive_part();
    let mut b = q.primitive_part();
    if a.coeffs().len() < b.coeffs().len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return Ok(a.primitive_part());
        }
        if b.coeffs().len() == 1 {
            // nonzero constant: the inputs are coprime over Q
            return Ok(IntPolynomial::one());
        }
        let r = pseudo_rem(&a, &b).primitive_part();
        a = b;
        b = r;
    }
}

/// `P / gcd(P, P')`: the primitive polynomial with the same roots as `P`,
/// all simple.
pub fn squarefree_part(p: &IntPolynomial) -> Result<IntPolynomial> {
    let d = p.degree()?;
    if d == 0 {
        return Err(Error::DegreeTooSmall { required: 1, got: 0 });
    }
    let g = gcd_primitive(p, &p.derivative())?;
    let pp = p.primitive_part();
    let sf = pp.exact_div(&g)?;
    Ok(sf.primitive_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::is_separable;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(coeffs)
    }

    #[test]
    fn gcd_examples() {
        // gcd(x^2-1, x-1) = x-1
        assert_eq!(gcd_primitive(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        // gcd(P, 1) = 1
        assert_eq!(gcd_primitive(&p(&[3, 1, 4]), &p(&[1])).unwrap(), IntPolynomial::one());
        // gcd(x^2+1, x^2+1) = x^2+1
        assert_eq!(gcd_primitive(&p(&[1, 0, 1]), &p(&[1, 0, 1])).unwrap(), p(&[1, 0, 1]));
        // content is stripped and sign normalized
        assert_eq!(gcd_primitive(&p(&[-2, 0, -2]), &p(&[-2, 0, -2])).unwrap(), p(&[1, 0, 1]));
        assert!(gcd_primitive(&IntPolynomial::zero(), &IntPolynomial::zero()).is_err());
    }

    #[test]
    fn gcd_common_factor() {
        let f = p(&[-2, 7]);
        let g = p(&[-1, 3, 2]);
        let h = p(&[5, 1]);
        let a = f.mul(&g);
        let b = f.mul(&h);
        assert_eq!(gcd_primitive(&a, &b).unwrap(), p(&[-2, 7]));
    }

    #[test]
    fn squarefree_examples() {
        // x^2 -> x
        assert_eq!(squarefree_part(&p(&[0, 0, 1])).unwrap(), p(&[0, 1]));
        // already squarefree
        assert_eq!(squarefree_part(&p(&[-1, 0, 1])).unwrap(), p(&[-1, 0, 1]));
        // (x-1)^2 (x+2) -> (x-1)(x+2)
        let sq = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        assert_eq!(squarefree_part(&sq).unwrap(), p(&[-1, 1]).mul(&p(&[2, 1])));
        // (x^2-x-1)^2 -> x^2-x-1
        let f = p(&[-1, -1, 1]);
        assert_eq!(squarefree_part(&f.mul(&f)).unwrap(), f);
    }

    #[test]
    fn squarefree_output_is_separable() {
        let samples = [
            p(&[0, 0, 0, 2]),
            p(&[4, 0, -4, 0, 1]),
            p(&[1, 2, 1]).mul(&p(&[1, 2, 1])),
            p(&[-6, 1, 1]).mul(&p(&[-6, 1, 1])).mul(&p(&[1, 1])),
        ];
        for s in samples {
            let sf = squarefree_part(&s).unwrap();
            assert!(is_separable(&sf).unwrap(), "squarefree part of {s} not separable");
            // sf divides the primitive part over Z
            assert!(s.primitive_part().exact_div(&sf).is_ok());
        }
    }
}
