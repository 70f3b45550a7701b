//! Real intervals and complex points over dyadic numbers.
//!
//! Intervals are closed and carry exact dyadic endpoints. Ring operations are
//! exact; `round_out` trades precision for shorter mantissas while keeping the
//! enclosure sound.

use crate::dyadic::{Dyadic, Round};
use num_rational::BigRational;
use std::cmp::Ordering;
use std::fmt;

/// A closed interval `[lo, hi]` with dyadic endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        DyInterval { lo, hi }
    }

    pub fn point(v: Dyadic) -> Self {
        DyInterval { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn add(&self, o: &DyInterval) -> DyInterval {
        DyInterval { lo: self.lo.add(&o.lo), hi: self.hi.add(&o.hi) }
    }

    pub fn sub(&self, o: &DyInterval) -> DyInterval {
        DyInterval { lo: self.lo.sub(&o.hi), hi: self.hi.sub(&o.lo) }
    }

    pub fn neg(&self) -> DyInterval {
        DyInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn mul(&self, o: &DyInterval) -> DyInterval {
        let cands = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        DyInterval { lo, hi }
    }

    /// Interval absolute value.
    pub fn abs(&self) -> DyInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = if self.lo.neg() > self.hi { self.lo.neg() } else { self.hi.clone() };
            DyInterval { lo: Dyadic::zero(), hi }
        }
    }

    /// Outward square root; requires `hi >= 0`, clamps `lo` at zero.
    pub fn sqrt_out(&self, prec: u64) -> DyInterval {
        let lo = if self.lo.is_negative() { Dyadic::zero() } else { self.lo.sqrt(prec, Round::Down) };
        DyInterval { lo, hi: self.hi.sqrt(prec, Round::Up) }
    }

    /// Round endpoints outward to `prec` mantissa bits.
    pub fn round_out(&self, prec: u64) -> DyInterval {
        DyInterval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lo.cmp_rational(r) != Ordering::Greater && self.hi.cmp_rational(r) != Ordering::Less
    }

    pub fn contains_interval(&self, o: &DyInterval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn intersects(&self, o: &DyInterval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Entirely positive / entirely negative sign, if decided.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    /// `width / |lo|` rounded up; `None` when the interval touches zero.
    pub fn relative_width(&self, prec: u64) -> Option<Dyadic> {
        if self.contains_zero() {
            return None;
        }
        let scale = self.lo.abs().min(self.hi.abs());
        Some(self.width().div(&scale, prec, Round::Up))
    }
}

impl fmt::Display for DyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_decimal(24, Round::Down), self.hi.to_decimal(24, Round::Up))
    }
}

/// An exact complex dyadic point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyComplex {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl DyComplex {
    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        DyComplex { re, im }
    }

    pub fn real(re: Dyadic) -> Self {
        DyComplex { re, im: Dyadic::zero() }
    }

    pub fn zero() -> Self {
        DyComplex { re: Dyadic::zero(), im: Dyadic::zero() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> DyComplex {
        DyComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> DyComplex {
        DyComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, o: &DyComplex) -> DyComplex {
        DyComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &DyComplex) -> DyComplex {
        DyComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &DyComplex) -> DyComplex {
        DyComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    /// Exact squared modulus.
    pub fn modulus_sq(&self) -> Dyadic {
        self.re.square().add(&self.im.square())
    }

    /// Directed modulus.
    pub fn modulus(&self, prec: u64, dir: Round) -> Dyadic {
        self.modulus_sq().sqrt(prec, dir)
    }

    /// Enclosure of the modulus.
    pub fn modulus_interval(&self, prec: u64) -> DyInterval {
        let sq = self.modulus_sq();
        DyInterval::new(sq.sqrt(prec, Round::Down), sq.sqrt(prec, Round::Up))
    }

    /// Approximate division rounded to `prec` bits (not directed; callers must
    /// re-certify anything that depends on the result).
    pub fn div_approx(&self, o: &DyComplex, prec: u64) -> DyComplex {
        let den = o.modulus_sq();
        let num = self.mul(&o.conj());
        DyComplex {
            re: num.re.div(&den, prec, Round::Down),
            im: num.im.div(&den, prec, Round::Down),
        }
    }

    pub fn round(&self, prec: u64) -> DyComplex {
        DyComplex {
            re: self.re.round(prec, Round::Down),
            im: self.im.round(prec, Round::Down),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}
