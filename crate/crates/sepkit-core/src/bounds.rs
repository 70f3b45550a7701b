//! The explicit separation lower bounds, evaluated with directed rounding:
//! lower bounds are rounded down, upper bounds up, so every emitted value is
//! safe to compare certified enclosures against.

use crate::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::interval::DyInterval;
use crate::poly::IntPolynomial;
use crate::roots::RootSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Default working precision for bound evaluation, in bits.
pub const DEFAULT_PRECISION: u64 = 128;

/// Pairwise root-distance lower bound for a separable polynomial:
/// `sqrt(3) * (d+1)^(-(2d+1)/2) * maxmod * H^(-d+1)`, rounded down.
///
/// `maxmod` is any certified value with `1 <= maxmod <= max{1,|alpha|,|beta|}`;
/// passing 1 is always sound.
pub fn mahler_pair_bound(d: u32, height: &BigInt, maxmod: &Dyadic, prec: u64) -> Result<Dyadic> {
    if d < 2 {
        return Err(Error::BoundDegree { required: 2, got: d });
    }
    assert!(height.is_positive(), "height must be >= 1");
    assert!(*maxmod >= Dyadic::one(), "maxmod must be >= 1");
    // sqrt(3 / (d+1)^(2d+1)), rounded down
    let den = BigInt::from(d + 1).pow(2 * d + 1);
    let inner = Dyadic::from_ratio(&BigInt::from(3), &den, 2 * prec, Round::Down);
    let root = inner.sqrt(prec, Round::Down);
    let scaled = root.mul(maxmod).round(prec, Round::Down);
    let hpow = height.pow(d - 1);
    Ok(scaled.div(&Dyadic::from_bigint(hpow), prec, Round::Down))
}

/// Theorem bound for two real roots with no opposite pair present:
/// `2^((-d^2+2)/2) * (d+1)^((-d+1)/2) * H^(-d+1)`, rounded down.
pub fn thm1_bound(d: u32, height: &BigInt, prec: u64) -> Result<Dyadic> {
    if d < 2 {
        return Err(Error::BoundDegree { required: 2, got: d });
    }
    assert!(height.is_positive(), "height must be >= 1");
    // value = sqrt(2^(-d^2+2) * (d+1)^(-d+1)) / H^(d-1)
    // inner rational: numerator 1, denominator 2^(d^2-2) * (d+1)^(d-1)
    let den = (BigInt::one() << (d * d - 2) as u64) * BigInt::from(d + 1).pow(d - 1);
    let inner = Dyadic::from_ratio(&BigInt::one(), &den, 2 * prec, Round::Down);
    let root = inner.sqrt(prec, Round::Down);
    let hpow = height.pow(d - 1);
    Ok(root.div(&Dyadic::from_bigint(hpow), prec, Round::Down))
}

/// Reducible-polynomial bound for two irrational real roots of distinct
/// moduli: `2^(-3d^2/2+3d-1) * d^((-d+2)/2) * H^(-d+2)`, rounded down.
/// Refuses `d < 4` (two irrational roots in a reducible polynomial force
/// degree at least 4).
pub fn thm2_bound(d: u32, height: &BigInt, prec: u64) -> Result<Dyadic> {
    if d < 4 {
        return Err(Error::BoundDegree { required: 4, got: d });
    }
    assert!(height.is_positive(), "height must be >= 1");
    // value = sqrt(2^(-3d^2+6d-2) * d^(-d+2)) / H^(d-2)
    let two_exp = (3 * d * d + 2 - 6 * d) as u64; // 3d^2 - 6d + 2 > 0 for d >= 2
    let den = (BigInt::one() << two_exp) * BigInt::from(d).pow(d - 2);
    let inner = Dyadic::from_ratio(&BigInt::one(), &den, 2 * prec, Round::Down);
    let root = inner.sqrt(prec, Round::Down);
    let hpow = height.pow(d - 2);
    Ok(root.div(&Dyadic::from_bigint(hpow), prec, Round::Down))
}

/// Exponent of the general (complex) absolute-separation consequence of the
/// pairwise bound: `-d(d^2+2d-1)/2`, exact. The multiplicative constant is
/// implicit; this exponent is reported as metadata only and certifies nothing
/// by itself.
pub fn gs_abssep_exponent(d: u32) -> BigRational {
    let d = BigInt::from(d);
    let num = -&d * (&d * &d + 2 * &d - BigInt::one());
    BigRational::new(num, BigInt::from(2))
}

/// Landau's upper bound on the Mahler measure: the 2-norm of the coefficient
/// vector, rounded up.
pub fn landau_upper(p: &IntPolynomial, prec: u64) -> Result<Dyadic> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sum: BigInt = p.coeffs().iter().map(|c| c * c).sum();
    Ok(Dyadic::from_bigint(sum).sqrt(prec, Round::Up))
}

/// Height bound for any factor of a degree-`d`, height-`H` polynomial:
/// `2^d * H`.
pub fn gelfond_factor_height_bound(d: u32, height: &BigInt) -> BigInt {
    assert!(d >= 1 && height.is_positive());
    (BigInt::one() << d as u64) * height
}

/// Rigorous enclosure of the Mahler measure `|a_d| * prod max{1, |alpha_i|}`.
///
/// Disks straddling the unit circle are refined; if refinement alone cannot
/// separate a modulus from 1, the exact product-polynomial test decides
/// whether `|alpha| = 1`, so the `max` branch is always resolved. The
/// `radius_floor_log2` option bounds how far refinement may go before the
/// exact test is consulted.
pub fn mahler_measure_enclosure(
    p: &IntPolynomial,
    roots: &RootSet,
    prec: u64,
) -> Result<DyInterval> {
    crate::roots::mahler_measure_enclosure_impl(p, roots, prec)
}

/// Every bound of interest for a `(d, H)` pair, evaluated at one precision.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub degree: u32,
    pub height: BigInt,
    pub precision_bits: u64,
    /// Pairwise root-distance lower bound with the supplied `maxmod`.
    pub mahler_pair: Dyadic,
    /// Real-pair absolute-separation lower bound.
    pub thm1: Dyadic,
    /// Reducible-case lower bound; absent for degree < 4.
    pub thm2: Option<Dyadic>,
    /// Exponent-only general bound.
    pub gs_exponent: BigRational,
    /// Always false: the general bound's multiplicative constant is implicit,
    /// so the exponent alone certifies nothing.
    pub gs_exponent_certifies: bool,
    /// Gelfond's factor height bound `2^d * H`.
    pub gelfond_factor_height: BigInt,
}

impl BoundReport {
    pub fn compute(d: u32, height: &BigInt, maxmod: &Dyadic, prec: u64) -> Result<BoundReport> {
        Ok(BoundReport {
            degree: d,
            height: height.clone(),
            precision_bits: prec,
            mahler_pair: mahler_pair_bound(d, height, maxmod, prec)?,
            thm1: thm1_bound(d, height, prec)?,
            thm2: if d >= 4 { Some(thm2_bound(d, height, prec)?) } else { None },
            gs_exponent: gs_abssep_exponent(d),
            gs_exponent_certifies: false,
            gelfond_factor_height: gelfond_factor_height_bound(d, height),
        })
    }
}
