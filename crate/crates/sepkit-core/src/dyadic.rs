//! Arbitrary-precision dyadic numbers `m * 2^e` with explicit directed rounding.
//!
//! Addition, subtraction and multiplication are exact; division and square
//! root take a precision and a rounding direction. Every certified quantity
//! in this crate is either an exact dyadic or a pair of dyadics rounded
//! outward, so soundness reduces to the directed operations in this module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction for inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Round {
    fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// A dyadic rational `mantissa * 2^exponent`, normalized so the mantissa is
/// odd (or zero with exponent zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(m: BigInt) -> Self {
        Self::normalized(m, 0)
    }

    /// `m * 2^e`, normalizing the representation.
    pub fn from_parts(m: BigInt, e: i64) -> Self {
        Self::normalized(m, e)
    }

    fn normalized(mut m: BigInt, mut e: i64) -> Self {
        if m.is_zero() {
            return Dyadic::zero();
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            m >>= tz;
            e += tz as i64;
        }
        Dyadic { mantissa: m, exponent: e }
    }

    /// Exact conversion from a finite `f64`.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074i64) // subnormal
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let m = BigInt::from(mant) * sign;
        Some(Self::normalized(m, exp))
    }

    /// Nearest `f64` (for diagnostics and screening seeds only).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        // keep 64 bits of mantissa
        let shift = bits - 64;
        let (m, e) = if shift > 0 {
            ((&self.mantissa >> shift as u64).to_string(), self.exponent + shift)
        } else {
            (self.mantissa.to_string(), self.exponent)
        };
        let mut v: f64 = m.parse().unwrap_or(f64::NAN);
        // scale by 2^e in chunks so intermediate powers stay in normal range
        let mut e = e.clamp(-4400, 4400);
        while e != 0 {
            let step = e.clamp(-900, 900);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn signum(&self) -> i32 {
        if self.mantissa.is_zero() {
            0
        } else if self.mantissa.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Number of significant bits in the mantissa.
    pub fn precision_bits(&self) -> u64 {
        self.mantissa.bits()
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exponent: if self.is_zero() { 0 } else { self.exponent } }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Exact addition.
    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(other.exponent);
        let ma = &self.mantissa << (self.exponent - e) as u64;
        let mb = &other.mantissa << (other.exponent - e) as u64;
        Self::normalized(ma + mb, e)
    }

    /// Exact subtraction.
    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    /// Exact multiplication.
    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: &self.mantissa * &other.mantissa,
            exponent: self.exponent + other.exponent,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn shl(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent + k }
    }

    pub fn square(&self) -> Dyadic {
        self.mul(self)
    }

    /// Exact integer power.
    pub fn pow(&self, mut n: u32) -> Dyadic {
        let mut base = self.clone();
        let mut acc = Dyadic::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Round to at most `prec` mantissa bits, in the given direction.
    pub fn round(&self, prec: u64, dir: Round) -> Dyadic {
        let prec = prec.max(1);
        let bits = self.mantissa.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = bits - prec;
        let neg = self.mantissa.is_negative();
        let mag = self.mantissa.abs();
        let (q, r) = mag.div_rem(&(BigInt::one() << shift));
        let round_away = !r.is_zero()
            && match (neg, dir) {
                (false, Round::Up) => true,
                (false, Round::Down) => false,
                (true, Round::Down) => true,
                (true, Round::Up) => false,
            };
        let q = if round_away { q + 1 } else { q };
        let m = if neg { -q } else { q };
        Self::normalized(m, self.exponent + shift as i64)
    }

    /// Directed division to `prec` significant bits.
    pub fn div(&self, other: &Dyadic, prec: u64, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "division by zero dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let prec = prec.max(1);
        let neg = self.is_negative() != other.is_negative();
        let na = self.mantissa.abs();
        let nb = other.mantissa.abs();
        // scale numerator so the quotient has at least prec+1 bits
        let extra = (prec + 1 + nb.bits()).saturating_sub(na.bits());
        let (q, r) = (na << extra).div_rem(&nb);
        let magnitude_dir = if neg { dir.flip() } else { dir };
        let q = if !r.is_zero() && magnitude_dir == Round::Up { q + 1 } else { q };
        let m = if neg { -q } else { q };
        Self::normalized(m, self.exponent - other.exponent - extra as i64).round(prec, dir)
    }

    /// Directed square root to `prec` significant bits. Panics on negative input.
    pub fn sqrt(&self, prec: u64, dir: Round) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let prec = prec.max(1);
        // write self = n * 2^(e - t) with e - t even and n large enough that
        // isqrt(n) carries >= prec + 2 bits
        let bits = self.mantissa.bits();
        let mut t = (2 * (prec + 2)).saturating_sub(bits) as i64;
        if (self.exponent - t) % 2 != 0 {
            t += 1;
        }
        let n: BigInt = &self.mantissa << t as u64;
        let s = n.sqrt();
        let exact = (&s * &s) == n;
        let s = if !exact && dir == Round::Up { s + 1 } else { s };
        Self::normalized(s, (self.exponent - t) / 2).round(prec, dir)
    }

    /// Directed conversion of an exact rational `num/den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u64, dir: Round) -> Dyadic {
        let a = Dyadic::from_bigint(num.clone());
        let b = Dyadic::from_bigint(den.clone());
        a.div(&b, prec, dir)
    }

    pub fn from_rational(r: &BigRational, prec: u64, dir: Round) -> Dyadic {
        Self::from_ratio(r.numer(), r.denom(), prec, dir)
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as u64)
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        // self = m * 2^e  vs  n/d  (d > 0):  compare m * 2^e * d with n
        let d = r.denom();
        let n = r.numer();
        let (lhs, rhs) = if self.exponent >= 0 {
            ((&self.mantissa << self.exponent as u64) * d, n.clone())
        } else {
            (&self.mantissa * d, n << (-self.exponent) as u64)
        };
        lhs.cmp(&rhs)
    }

    /// Exact decimal representation (dyadics always have one).
    pub fn to_decimal_exact(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.exponent >= 0 {
            return (&self.mantissa << self.exponent as u64).to_string();
        }
        let k = (-self.exponent) as u64;
        // m / 2^k = m * 5^k / 10^k
        let scaled = &self.mantissa * BigInt::from(5u8).pow(k as u32);
        let neg = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let k = k as usize;
        let s = if digits.len() > k {
            let (int, frac) = digits.split_at(digits.len() - k);
            format!("{int}.{frac}")
        } else {
            format!("0.{}{}", "0".repeat(k - digits.len()), digits)
        };
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }

    /// Decimal string with at most `sig` significant digits, rounded in `dir`.
    /// Exact when the value fits; otherwise directed.
    pub fn to_decimal(&self, sig: usize, dir: Round) -> String {
        let exact = self.to_decimal_exact();
        let digits = exact.chars().filter(|c| c.is_ascii_digit()).count();
        if digits <= sig {
            return exact;
        }
        // round the value to sig decimal digits via rational arithmetic
        let r = self.to_rational();
        let neg = r.is_negative();
        let mag = r.abs();
        // find decimal exponent: 10^(k-1) <= mag < 10^k
        let mut k: i64 = 0;
        let ten = BigRational::from_integer(BigInt::from(10));
        let one = BigRational::one();
        let mut probe = mag.clone();
        if probe >= one {
            while probe >= ten {
                probe /= &ten;
                k += 1;
            }
            k += 1;
        } else {
            while probe < one {
                probe *= &ten;
                k -= 1;
            }
            k += 1;
        }
        // scaled = mag * 10^(sig - k), an integer in [10^(sig-1), 10^sig)
        let shift = sig as i64 - k;
        let pow = |n: i64| -> BigRational {
            let p = BigInt::from(10u8).pow(n.unsigned_abs() as u32);
            if n >= 0 {
                BigRational::from_integer(p)
            } else {
                BigRational::new(BigInt::one(), p)
            }
        };
        let scaled = &mag * pow(shift);
        let floor = scaled.floor().to_integer();
        let exact_scale = BigRational::from_integer(floor.clone()) == scaled;
        let magnitude_dir = if neg { dir.flip() } else { dir };
        let int = if !exact_scale && magnitude_dir == Round::Up { floor + 1 } else { floor };
        let digits = int.to_string();
        let point = k; // digits before the decimal point
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        if point <= 0 {
            s.push_str("0.");
            s.push_str(&"0".repeat((-point) as usize));
            s.push_str(&digits);
        } else if (point as usize) >= digits.len() {
            s.push_str(&digits);
            s.push_str(&"0".repeat(point as usize - digits.len()));
        } else {
            let (a, b) = digits.split_at(point as usize);
            s.push_str(a);
            s.push('.');
            s.push_str(b);
        }
        let trimmed = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        trimmed
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let ls = self.signum();
        let rs = other.signum();
        if ls != rs {
            return ls.cmp(&rs);
        }
        if ls == 0 {
            return Ordering::Equal;
        }
        // same nonzero sign: compare magnitudes cheaply by position of top bit
        let lt = self.exponent + self.mantissa.bits() as i64;
        let rt = other.exponent + other.mantissa.bits() as i64;
        if lt != rt {
            let mag = lt.cmp(&rt);
            return if ls > 0 { mag } else { mag.reverse() };
        }
        let e = self.exponent.min(other.exponent);
        let ma = &self.mantissa << (self.exponent - e) as u64;
        let mb = &other.mantissa << (other.exponent - e) as u64;
        ma.cmp(&mb)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(24, Round::Down))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(m: i64, e: i64) -> Dyadic {
        Dyadic::from_parts(BigInt::from(m), e)
    }

    #[test]
    fn normalization() {
        assert_eq!(dy(4, 0), dy(1, 2));
        assert_eq!(dy(12, -2), dy(3, 0));
        assert_eq!(Dyadic::from_int(0), Dyadic::zero());
    }

    #[test]
    fn exact_ring_ops() {
        let a = dy(3, -2); // 0.75
        let b = dy(5, -3); // 0.625
        assert_eq!(a.add(&b), dy(11, -3)); // 1.375
        assert_eq!(a.sub(&b), dy(1, -3)); // 0.125
        assert_eq!(a.mul(&b), dy(15, -5)); // 0.46875
        assert_eq!(a.neg().add(&a), Dyadic::zero());
    }

    #[test]
    fn rounding_directions() {
        // 0b1011 = 11; to 2 bits: down -> 0b10 << 2 = 8, up -> 0b11 << 2 = 12
        let v = dy(11, 0);
        assert_eq!(v.round(2, Round::Down), dy(8, 0));
        assert_eq!(v.round(2, Round::Up), dy(12, 0));
        let n = dy(-11, 0);
        assert_eq!(n.round(2, Round::Down), dy(-12, 0));
        assert_eq!(n.round(2, Round::Up), dy(-8, 0));
    }

    #[test]
    fn rounding_monotone_in_precision() {
        let v = Dyadic::from_parts(BigInt::from(0xdeadbeefcafeu64), -13);
        let mut prev = v.round(4, Round::Down);
        for p in 5..40 {
            let cur = v.round(p, Round::Down);
            assert!(cur >= prev && cur <= v);
            prev = cur;
        }
        let mut prev = v.round(4, Round::Up);
        for p in 5..40 {
            let cur = v.round(p, Round::Up);
            assert!(cur <= prev && cur >= v);
            prev = cur;
        }
    }

    #[test]
    fn division_brackets_truth() {
        let a = Dyadic::from_int(1);
        let b = Dyadic::from_int(3);
        let lo = a.div(&b, 60, Round::Down);
        let hi = a.div(&b, 60, Round::Up);
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        assert!(lo.cmp_rational(&third) == Ordering::Less);
        assert!(hi.cmp_rational(&third) == Ordering::Greater);
        assert!(hi.sub(&lo).cmp_rational(&BigRational::new(BigInt::one(), BigInt::from(1u64 << 55))) == Ordering::Less);
        // negative numerator flips which side truncation lands on
        let lo = a.neg().div(&b, 60, Round::Down);
        let hi = a.neg().div(&b, 60, Round::Up);
        let mthird = -third;
        assert!(lo.cmp_rational(&mthird) == Ordering::Less);
        assert!(hi.cmp_rational(&mthird) == Ordering::Greater);
    }

    #[test]
    fn exact_division_is_exact() {
        let a = dy(3, 4); // 48
        let b = dy(3, 1); // 6
        assert_eq!(a.div(&b, 8, Round::Down), Dyadic::from_int(8));
        assert_eq!(a.div(&b, 8, Round::Up), Dyadic::from_int(8));
    }

    #[test]
    fn sqrt_brackets_truth() {
        for v in [2i64, 3, 5, 7, 10, 17, 12345] {
            let x = Dyadic::from_int(v);
            let lo = x.sqrt(80, Round::Down);
            let hi = x.sqrt(80, Round::Up);
            assert!(lo.square().cmp_rational(&BigRational::from_integer(BigInt::from(v))) != Ordering::Greater);
            assert!(hi.square().cmp_rational(&BigRational::from_integer(BigInt::from(v))) != Ordering::Less);
            assert!(hi.sub(&lo) <= dy(1, -70));
        }
        // perfect square is exact
        assert_eq!(Dyadic::from_int(49).sqrt(10, Round::Down), Dyadic::from_int(7));
        assert_eq!(Dyadic::from_int(49).sqrt(10, Round::Up), Dyadic::from_int(7));
    }

    #[test]
    fn f64_roundtrip() {
        for v in [0.0, 1.0, -1.5, 0.1, 1e-300, -3.7e205, f64::MIN_POSITIVE * 0.5] {
            let d = Dyadic::from_f64(v).unwrap();
            assert_eq!(d.to_f64(), v);
        }
        assert!(Dyadic::from_f64(f64::NAN).is_none());
        assert!(Dyadic::from_f64(f64::INFINITY).is_none());
    }

    #[test]
    fn decimal_exact() {
        assert_eq!(dy(3, -2).to_decimal_exact(), "0.75");
        assert_eq!(dy(-1, -3).to_decimal_exact(), "-0.125");
        assert_eq!(dy(5, 2).to_decimal_exact(), "20");
        assert_eq!(Dyadic::zero().to_decimal_exact(), "0");
    }

    #[test]
    fn decimal_directed() {
        let third_lo = Dyadic::from_ratio(&BigInt::one(), &BigInt::from(3), 100, Round::Down);
        let s = third_lo.to_decimal(6, Round::Down);
        assert!(s.starts_with("0.333333"));
        let s = third_lo.to_decimal(6, Round::Up);
        assert_eq!(s, "0.333334");
        let neg = third_lo.neg();
        assert_eq!(neg.to_decimal(6, Round::Down), "-0.333334");
        assert_eq!(neg.to_decimal(6, Round::Up), "-0.333333");
    }

    #[test]
    fn ordering() {
        assert!(dy(1, -1) < Dyadic::one());
        assert!(dy(-3, 10) < dy(1, -10));
        assert!(dy(5, 0) > dy(9, -1)); // 5 > 4.5
        assert_eq!(dy(4, 0).cmp(&dy(1, 2)), Ordering::Equal);
    }

    #[test]
    fn cmp_rational_exact() {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(dy(1, -1).cmp_rational(&half), Ordering::Equal);
        assert_eq!(dy(1, -2).cmp_rational(&half), Ordering::Less);
        assert_eq!(dy(3, -2).cmp_rational(&half), Ordering::Greater);
    }
}
