//! Exhaustive, symmetry-reduced search over coefficient boxes.
//!
//! The search space for degree `d` is every coefficient tuple with
//! `a_d in [1, B]` (the symmetry group makes the leading sign positive) and
//! the remaining coefficients in `[-B, B]`. Each orbit under
//! `{P(x), -P(x), P(-x), -P(-x)}` is enumerated once via its canonical
//! representative. Indices linearize lexicographically, which gives chunked,
//! checkpointable, schedule-independent traversal.

mod records;

pub use records::{
    search_records, uniqueness_check, Metric, RecordEntry, SearchCounters, SearchOptions,
    SearchOutcome,
};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use num_bigint::BigInt;
use num_traits::Signed;

/// A coefficient box: degrees `2..=max_degree`, coefficients in
/// `[-coeff_bound, coeff_bound]`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SearchBox {
    pub max_degree: u32,
    pub coeff_bound: i64,
}

impl SearchBox {
    pub fn new(max_degree: u32, coeff_bound: i64) -> Result<Self> {
        if max_degree < 2 || coeff_bound < 1 {
            return Err(Error::Parse("search box needs max_degree >= 2 and bound >= 1".into()));
        }
        Ok(SearchBox { max_degree, coeff_bound })
    }

    /// Raw tuples of one degree block: `B * (2B+1)^degree`.
    fn block_size(&self, degree: u32) -> u64 {
        let width = (2 * self.coeff_bound + 1) as u64;
        self.coeff_bound as u64 * width.pow(degree)
    }

    /// Total raw tuples across all degree blocks.
    pub fn total_tuples(&self) -> u64 {
        (2..=self.max_degree).map(|d| self.block_size(d)).sum()
    }

    /// Decode a linear index into the ascending coefficient tuple.
    pub fn decode(&self, index: u64) -> Vec<i64> {
        let mut idx = index;
        for degree in 2..=self.max_degree {
            let block = self.block_size(degree);
            if idx < block {
                let width = (2 * self.coeff_bound + 1) as u64;
                let lead = 1 + (idx / width.pow(degree)) as i64;
                let mut rem = idx % width.pow(degree);
                let mut coeffs = Vec::with_capacity(degree as usize + 1);
                for _ in 0..degree {
                    coeffs.push((rem % width) as i64 - self.coeff_bound);
                    rem /= width;
                }
                coeffs.push(lead);
                return coeffs;
            }
            idx -= block;
        }
        panic!("index {index} out of range for {self:?}");
    }
}

/// Canonical representative of the orbit `{P(x), -P(x), P(-x), -P(-x)}`:
/// leading coefficient positive, then the lexicographically largest ascending
/// coefficient tuple of the two remaining candidates. Both separation metrics
/// are invariant on the orbit.
pub fn canonicalize(p: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let positive = |q: IntPolynomial| {
        if q.leading().unwrap().is_negative() {
            q.neg()
        } else {
            q
        }
    };
    let a = positive(p.clone());
    let b = positive(p.negate_argument());
    Ok(if tuple_cmp(a.coeffs(), b.coeffs()) == std::cmp::Ordering::Less { b } else { a })
}

fn tuple_cmp(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Canonicity test on a small-integer tuple (ascending, positive leading
/// coefficient): true iff the tuple is its own canonical representative.
pub(crate) fn is_canonical_i64(coeffs: &[i64]) -> bool {
    debug_assert!(*coeffs.last().unwrap() > 0);
    // the x -> -x image, sign-normalized to a positive leading coefficient
    let d = coeffs.len() - 1;
    let flip = |k: usize, c: i64| if k % 2 == 1 { -c } else { c };
    let lead_flipped = flip(d, coeffs[d]);
    let negate = lead_flipped < 0;
    for (k, &c) in coeffs.iter().enumerate() {
        let mut other = flip(k, c);
        if negate {
            other = -other;
        }
        match c.cmp(&other) {
            std::cmp::Ordering::Greater => return true,
            std::cmp::Ordering::Less => return false,
            std::cmp::Ordering::Equal => continue,
        }
    }
    true // fixed point of the involution
}

/// Exact discriminant-is-zero test for small tuples, via i128 Bareiss with
/// overflow fallback to the exact big-integer path.
pub(crate) fn is_separable_i64(coeffs: &[i64]) -> bool {
    match disc_zero_i128(coeffs) {
        Some(zero) => !zero,
        None => {
            let p = IntPolynomial::from_i64s(coeffs);
            crate::poly::is_separable(&p).unwrap_or(false)
        }
    }
}

/// `Some(true)` if the discriminant is zero, `None` on i128 overflow.
fn disc_zero_i128(coeffs: &[i64]) -> Option<bool> {
    let d = coeffs.len() - 1;
    if d == 1 {
        return Some(false);
    }
    // Sylvester matrix of P and P'
    let n = 2 * d - 1;
    let mut m = vec![vec![0i128; n]; n];
    for i in 0..d - 1 {
        for k in 0..=d {
            m[i][i + k] = coeffs[d - k] as i128;
        }
    }
    for i in 0..d {
        for k in 0..d {
            m[d - 1 + i][i + k] = (d - k) as i128 * coeffs[d - k] as i128;
        }
    }
    // Bareiss elimination with checked arithmetic
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                Some(s) => m.swap(k, s),
                None => return Some(true),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Some(m[n - 1][n - 1] == 0)
}

/// Streaming enumeration of canonical representatives, optionally skipping
/// non-separable tuples (used by the `sep` metric), with skip counters.
pub struct Enumerator<'a> {
    search_box: &'a SearchBox,
    filter_separable: bool,
    cursor: u64,
    total: u64,
    pub scanned: u64,
    pub skipped_symmetry: u64,
    pub skipped_non_separable: u64,
}

impl<'a> Enumerator<'a> {
    pub fn new(search_box: &'a SearchBox, filter_separable: bool) -> Self {
        Enumerator {
            search_box,
            filter_separable,
            cursor: 0,
            total: search_box.total_tuples(),
            scanned: 0,
            skipped_symmetry: 0,
            skipped_non_separable: 0,
        }
    }
}

impl Iterator for Enumerator<'_> {
    type Item = IntPolynomial;

    fn next(&mut self) -> Option<IntPolynomial> {
        while self.cursor < self.total {
            let coeffs = self.search_box.decode(self.cursor);
            self.cursor += 1;
            self.scanned += 1;
            if !is_canonical_i64(&coeffs) {
                self.skipped_symmetry += 1;
                continue;
            }
            if self.filter_separable && !is_separable_i64(&coeffs) {
                self.skipped_non_separable += 1;
                continue;
            }
            return Some(IntPolynomial::from_i64s(&coeffs));
        }
        None
    }
}
