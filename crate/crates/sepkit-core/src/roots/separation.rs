//! The separation quantities: `sep`, `abssep`, `abssep_real` and the minimal
//! pairwise root sum, all as rigorous enclosures with witness pairs.
//!
//! Equality of root moduli is decided exactly: conjugate partners and
//! opposite pairs are structural, and the remaining cases reduce to an
//! integer gap bound derived from the composed-product polynomial, so
//! refinement always terminates with a definite answer.

use super::{isolate_roots, opposite_pairs, RootConfig, RootSet};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::interval::DyInterval;
use crate::poly::{self, IntPolynomial};
use num_bigint::BigInt;

/// Options shared by the separation computations.
#[derive(Debug, Clone)]
pub struct SepOptions {
    /// Relative enclosure tolerance: stop once `width <= 2^-rel_tol_log2 * lower`.
    pub rel_tol_log2: u32,
    /// Precision ceiling forwarded to the root machinery.
    pub root_config: RootConfig,
}

impl Default for SepOptions {
    fn default() -> Self {
        SepOptions { rel_tol_log2: 20, root_config: RootConfig::default() }
    }
}

impl SepOptions {
    pub fn with_tolerance(rel_tol_log2: u32) -> Self {
        SepOptions { rel_tol_log2, ..Default::default() }
    }
}

/// Outcome classification of a separation query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SepStatus {
    /// The enclosure has a strictly positive lower edge.
    Positive,
    /// The quantity is certified to be exactly zero (unused by the current
    /// metrics, which exclude zero pairs by definition).
    ZeroCertified,
    /// No admissible root pair exists.
    Undefined,
    /// Reserved for interrupted computations.
    Undecided,
}

/// A certified separation value with its witness pair.
#[derive(Debug, Clone)]
pub struct SeparationResult {
    pub status: SepStatus,
    /// Enclosure of the minimum; present iff `status == Positive`.
    pub value: Option<DyInterval>,
    /// Indices into `root_set` of the minimizing pair.
    pub witness: Option<(usize, usize)>,
    /// Realness certificates of the witness roots.
    pub witness_real: Option<(bool, bool)>,
    /// True when the input was silently replaced by its squarefree part.
    pub squarefree_applied: bool,
    /// Working precision (bits) at the final refinement level.
    pub precision_used: u64,
    /// The certified disks the witness indices refer to.
    pub root_set: Option<RootSet>,
}

impl SeparationResult {
    fn undefined(squarefree_applied: bool, set: Option<RootSet>) -> Self {
        SeparationResult {
            status: SepStatus::Undefined,
            value: None,
            witness: None,
            witness_real: None,
            squarefree_applied,
            precision_used: 0,
            root_set: set,
        }
    }
}

/// Which quantity a pair contributes.
#[derive(Clone, Copy, PartialEq, Eq)]
enum PairMetric {
    Distance,
    ModulusGap,
    SumModulus,
}

struct Engine {
    sf: IntPolynomial,
    set: RootSet,
    cfg: RootConfig,
    target: Dyadic,
    prec: u64,
    squarefree_applied: bool,
}

impl Engine {
    fn new(p: &IntPolynomial, opts: &SepOptions) -> Result<Engine> {
        let d = p.degree()?;
        if d == 0 {
            return Err(Error::DegreeTooSmall { required: 1, got: 0 });
        }
        let sf = poly::squarefree_part(p)?;
        let squarefree_applied = sf.degree()? != d;
        let target = Dyadic::from_parts(BigInt::from(1), -48);
        let set = isolate_roots(&sf, &target, &opts.root_config)?;
        Ok(Engine {
            sf,
            set,
            cfg: opts.root_config.clone(),
            target,
            prec: 128,
            squarefree_applied,
        })
    }

    fn pair_interval(&self, metric: PairMetric, i: usize, j: usize) -> DyInterval {
        match metric {
            PairMetric::Distance => self.set.distance_interval(i, j, self.prec),
            PairMetric::ModulusGap => self.set.modulus_gap_interval(i, j, self.prec),
            PairMetric::SumModulus => self.set.sum_modulus_interval(i, j, self.prec),
        }
    }

    fn refine_all(&mut self) -> Result<()> {
        self.target = self.target.shl(-16);
        self.prec += 32;
        self.set = self.set.refine(&self.target, &self.cfg)?;
        Ok(())
    }

    fn refine_pair(&mut self, i: usize, j: usize) -> Result<()> {
        self.target = self.target.shl(-16);
        self.prec += 32;
        self.set = self.set.refine_indices(&[i, j], &self.target, &self.cfg)?;
        Ok(())
    }

    /// Certified minimum of `metric` over the admissible `pairs`.
    fn minimize(
        &mut self,
        metric: PairMetric,
        pairs: &[(usize, usize)],
        rel_tol_log2: u32,
    ) -> Result<SeparationResult> {
        assert!(!pairs.is_empty());
        loop {
            let intervals: Vec<DyInterval> =
                pairs.iter().map(|&(i, j)| self.pair_interval(metric, i, j)).collect();
            let min_lo = intervals.iter().map(|iv| iv.lo().clone()).min().unwrap();
            let (widx, min_hi) = intervals
                .iter()
                .enumerate()
                .map(|(k, iv)| (k, iv.hi().clone()))
                .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
                .unwrap();
            if min_lo.is_positive() {
                let width = min_hi.sub(&min_lo);
                if width <= min_lo.shl(-(rel_tol_log2 as i64)) {
                    let (i, j) = pairs[widx];
                    let a = &self.set.disks()[i];
                    let b = &self.set.disks()[j];
                    return Ok(SeparationResult {
                        status: SepStatus::Positive,
                        value: Some(DyInterval::new(min_lo, min_hi)),
                        witness: Some((i, j)),
                        witness_real: Some((a.is_real_certified(), b.is_real_certified())),
                        squarefree_applied: self.squarefree_applied,
                        precision_used: self.prec,
                        root_set: Some(self.set.clone()),
                    });
                }
            }
            self.refine_all()?;
        }
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            v.push((i, j));
        }
    }
    v
}

/// `sep(P)`: minimal distance between distinct roots. Non-separable inputs
/// are replaced by their squarefree part (the root set is unchanged).
pub fn sep(p: &IntPolynomial, opts: &SepOptions) -> Result<SeparationResult> {
    let d = p.degree()?;
    if d < 2 {
        return Ok(SeparationResult::undefined(false, None));
    }
    let mut eng = Engine::new(p, opts)?;
    let n = eng.set.len();
    if n < 2 {
        let applied = eng.squarefree_applied;
        return Ok(SeparationResult::undefined(applied, Some(eng.set)));
    }
    let pairs = all_pairs(n);
    eng.minimize(PairMetric::Distance, &pairs, opts.rel_tol_log2)
}

/// `sep` restricted to pairs of certified-real roots.
pub fn sep_real(p: &IntPolynomial, opts: &SepOptions) -> Result<SeparationResult> {
    let d = p.degree()?;
    if d < 2 {
        return Ok(SeparationResult::undefined(false, None));
    }
    let mut eng = Engine::new(p, opts)?;
    let reals = eng.set.real_indices();
    if reals.len() < 2 {
        let applied = eng.squarefree_applied;
        return Ok(SeparationResult::undefined(applied, Some(eng.set)));
    }
    let mut pairs = Vec::new();
    for (a, &i) in reals.iter().enumerate() {
        for &j in &reals[a + 1..] {
            pairs.push((i, j));
        }
    }
    eng.minimize(PairMetric::Distance, &pairs, opts.rel_tol_log2)
}

/// How a pair of roots relates under the exact modulus-equality decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbsEqualDecision {
    /// `|alpha_i| = |alpha_j|` exactly.
    Equal,
    /// Distinct moduli, with a certified enclosure of the positive gap.
    Distinct(DyInterval),
}

/// Gap threshold for `|alpha|^2` values: distinct roots of the squarefree
/// composed-product polynomial differ by more than this.
fn product_gap_threshold(sf: &IntPolynomial) -> Result<Dyadic> {
    let stripped = super::strip_zero_root(sf);
    let prod = poly::product_polynomial(&stripped)?;
    let t = poly::squarefree_part(&prod)?;
    let dt = t.degree()? as u32;
    crate::bounds::mahler_pair_bound(dt.max(2), &t.height()?, &Dyadic::one(), 128)
}

/// Exact interval for `||alpha_i|^2 - |alpha_j|^2|`.
fn modsq_gap(set: &RootSet, i: usize, j: usize, prec: u64) -> DyInterval {
    set.disks()[i]
        .modulus_sq_interval(prec)
        .sub(&set.disks()[j].modulus_sq_interval(prec))
        .abs()
}

struct PairClassifier {
    opposite: Vec<(usize, usize)>,
    threshold: Option<Dyadic>,
}

impl PairClassifier {
    fn new(sf: &IntPolynomial, set: &RootSet, cfg: &RootConfig) -> Result<Self> {
        Ok(PairClassifier { opposite: opposite_pairs(sf, set, cfg)?, threshold: None })
    }

    fn structurally_equal(&self, set: &RootSet, i: usize, j: usize) -> bool {
        set.disks()[i].conj_partner() == Some(j) || self.opposite.contains(&(i, j))
    }

    /// Decide one pair, refining the engine's disks as needed.
    fn decide(&mut self, eng: &mut Engine, i: usize, j: usize) -> Result<AbsEqualDecision> {
        if self.structurally_equal(&eng.set, i, j) {
            return Ok(AbsEqualDecision::Equal);
        }
        let both_real =
            eng.set.disks()[i].is_real_certified() && eng.set.disks()[j].is_real_certified();
        // two distinct real roots of equal modulus would be an opposite pair,
        // which was excluded above; comparable reasoning does not hold for
        // complex moduli, so those go through the exact product-poly gap
        loop {
            let gap = eng.set.modulus_gap_interval(i, j, eng.prec);
            if gap.lo().is_positive() {
                return Ok(AbsEqualDecision::Distinct(gap));
            }
            if !both_real {
                if self.threshold.is_none() {
                    self.threshold = Some(product_gap_threshold(&eng.sf)?);
                }
                let th = self.threshold.as_ref().unwrap();
                let dev = modsq_gap(&eng.set, i, j, eng.prec);
                if dev.hi() < th {
                    return Ok(AbsEqualDecision::Equal);
                }
            }
            eng.refine_pair(i, j)?;
        }
    }
}

/// `abssep(P)`: minimal `||alpha| - |beta||` over root pairs with distinct
/// moduli. Pairs with certified-equal moduli (conjugates, opposite pairs,
/// and general equal-modulus pairs) are excluded exactly.
pub fn abssep(p: &IntPolynomial, opts: &SepOptions) -> Result<SeparationResult> {
    let d = p.degree()?;
    if d < 2 {
        return Ok(SeparationResult::undefined(false, None));
    }
    let mut eng = Engine::new(p, opts)?;
    let n = eng.set.len();
    if n < 2 {
        let applied = eng.squarefree_applied;
        return Ok(SeparationResult::undefined(applied, Some(eng.set)));
    }
    let mut classifier = PairClassifier::new(&eng.sf, &eng.set, &eng.cfg)?;
    let mut admissible = Vec::new();
    for (i, j) in all_pairs(n) {
        if let AbsEqualDecision::Distinct(_) = classifier.decide(&mut eng, i, j)? {
            admissible.push((i, j));
        }
    }
    if admissible.is_empty() {
        let applied = eng.squarefree_applied;
        return Ok(SeparationResult::undefined(applied, Some(eng.set)));
    }
    eng.minimize(PairMetric::ModulusGap, &admissible, opts.rel_tol_log2)
}

/// `abssep` restricted to pairs of certified-real roots (the quantity the
/// real-pair lower bound controls).
pub fn abssep_real(p: &IntPolynomial, opts: &SepOptions) -> Result<SeparationResult> {
    let d = p.degree()?;
    if d < 2 {
        return Ok(SeparationResult::undefined(false, None));
    }
    let mut eng = Engine::new(p, opts)?;
    let reals = eng.set.real_indices();
    if reals.len() < 2 {
        let applied = eng.squarefree_applied;
        return Ok(SeparationResult::undefined(applied, Some(eng.set)));
    }
    let classifier = PairClassifier::new(&eng.sf, &eng.set, &eng.cfg)?;
    let mut admissible = Vec::new();
    for (a, &i) in reals.iter().enumerate() {
        for &j in &reals[a + 1..] {
            // equal-modulus real pairs are exactly the opposite pairs
            if !classifier.structurally_equal(&eng.set, i, j) {
                admissible.push((i, j));
            }
        }
    }
    if admissible.is_empty() {
        let applied = eng.squarefree_applied;
        return Ok(SeparationResult::undefined(applied, Some(eng.set)));
    }
    eng.minimize(PairMetric::ModulusGap, &admissible, opts.rel_tol_log2)
}

/// Minimal `|alpha_i + alpha_j|` over `i < j`. Errors when an opposite root
/// pair makes the quantity zero.
pub fn min_pairwise_sum(p: &IntPolynomial, opts: &SepOptions) -> Result<SeparationResult> {
    let d = p.degree()?;
    if d < 2 {
        return Ok(SeparationResult::undefined(false, None));
    }
    let sf = poly::squarefree_part(p)?;
    if poly::has_opposite_root_pair(&sf)? {
        return Err(Error::OppositeRootPair);
    }
    let mut eng = Engine::new(p, opts)?;
    let n = eng.set.len();
    if n < 2 {
        let applied = eng.squarefree_applied;
        return Ok(SeparationResult::undefined(applied, Some(eng.set)));
    }
    let pairs = all_pairs(n);
    eng.minimize(PairMetric::SumModulus, &pairs, opts.rel_tol_log2)
}

/// Exact decision of `|alpha_i| = |alpha_j|` for two isolated roots.
pub fn decide_abs_equal(
    p: &IntPolynomial,
    i: usize,
    j: usize,
    set: &RootSet,
    opts: &SepOptions,
) -> Result<AbsEqualDecision> {
    assert!(i != j, "decide_abs_equal needs two distinct indices");
    let sf = set.polynomial().clone();
    debug_assert!(
        sf == *p || sf == poly::squarefree_part(p)?,
        "root set does not belong to the supplied polynomial"
    );
    let mut eng = Engine {
        sf: sf.clone(),
        set: set.clone(),
        cfg: opts.root_config.clone(),
        target: Dyadic::from_parts(BigInt::from(1), -48),
        prec: 128,
        squarefree_applied: false,
    };
    let mut classifier = PairClassifier::new(&sf, &eng.set, &eng.cfg)?;
    let (i, j) = (i.min(j), i.max(j));
    classifier.decide(&mut eng, i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(coeffs)
    }

    fn tiny(log2: i64) -> Dyadic {
        Dyadic::from_parts(BigInt::from(1), log2)
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sep_unit_roots_is_two() {
        let r = sep(&p(&[-1, 0, 1]), &SepOptions::with_tolerance(70)).unwrap();
        assert_eq!(r.status, SepStatus::Positive);
        let v = r.value.unwrap();
        assert!(v.contains_rational(&ratio(2, 1)));
        assert!(v.width() < tiny(-66));
    }

    #[test]
    fn sep_golden_is_sqrt5() {
        let r = sep(&p(&[-1, -1, 1]), &SepOptions::default()).unwrap();
        let v = r.value.unwrap();
        let five = BigRational::from_integer(BigInt::from(5));
        // v^2 must enclose 5
        let lo2 = v.lo().square();
        let hi2 = v.hi().square();
        assert!(lo2.cmp_rational(&five) != std::cmp::Ordering::Greater);
        assert!(hi2.cmp_rational(&five) != std::cmp::Ordering::Less);
    }

    #[test]
    fn sep_record_cubic() {
        // 14x^3+17x^2-13x+2 = (7x-2)(2x^2+3x-1): sep = (29 - 7*sqrt(17))/28
        let r = sep(&p(&[2, -13, 17, 14]), &SepOptions::with_tolerance(40)).unwrap();
        let v = r.value.unwrap();
        assert!(v.hi().cmp_rational(&ratio(5, 1000)) == std::cmp::Ordering::Less);
        assert!(v.lo().is_positive());
        // independent oracle: (29 - 7*sqrt(17))/28 via directed sqrt
        use crate::dyadic::Round;
        let lo =
            Dyadic::from_int(29).sub(&Dyadic::from_int(17).sqrt(150, Round::Up).mul(&Dyadic::from_int(7)));
        let hi =
            Dyadic::from_int(29).sub(&Dyadic::from_int(17).sqrt(150, Round::Down).mul(&Dyadic::from_int(7)));
        let lo = lo.div(&Dyadic::from_int(28), 150, Round::Down);
        let hi = hi.div(&Dyadic::from_int(28), 150, Round::Up);
        assert!(*v.lo() <= hi && lo <= *v.hi());
        // witness is the irrational quadratic pair: both real
        assert_eq!(r.witness_real.unwrap(), (true, true));
    }

    #[test]
    fn sep_undefined_below_degree_two() {
        let r = sep(&p(&[1, 1]), &SepOptions::default()).unwrap();
        assert_eq!(r.status, SepStatus::Undefined);
    }

    #[test]
    fn sep_of_squared_quadratic_uses_squarefree_part() {
        let f = p(&[-1, -1, 1]);
        let r = sep(&f.mul(&f), &SepOptions::default()).unwrap();
        assert!(r.squarefree_applied);
        assert_eq!(r.status, SepStatus::Positive);
        let v = r.value.unwrap();
        let five = BigRational::from_integer(BigInt::from(5));
        assert!(v.lo().square().cmp_rational(&five) != std::cmp::Ordering::Greater);
        assert!(v.hi().square().cmp_rational(&five) != std::cmp::Ordering::Less);
    }

    #[test]
    fn abssep_golden_is_one() {
        // |phi| - |psi| = phi + psi = 1 exactly
        let r = abssep(&p(&[-1, -1, 1]), &SepOptions::with_tolerance(105)).unwrap();
        assert_eq!(r.status, SepStatus::Positive);
        let v = r.value.unwrap();
        assert!(v.contains_rational(&BigRational::one()));
        assert!(v.width() < tiny(-100));
    }

    #[test]
    fn abssep_unit_roots_undefined() {
        let r = abssep(&p(&[-1, 0, 1]), &SepOptions::default()).unwrap();
        assert_eq!(r.status, SepStatus::Undefined);
    }

    #[test]
    fn abssep_record_cubic() {
        // 17x^3-9x^2-7x+8: record value ~1.2332e-5, witness real vs complex
        let r = abssep(&p(&[8, -7, -9, 17]), &SepOptions::default()).unwrap();
        let v = r.value.unwrap();
        assert!(v.hi().cmp_rational(&ratio(15, 1_000_000)) == std::cmp::Ordering::Less);
        assert!(v.lo().cmp_rational(&ratio(12, 1_000_000)) == std::cmp::Ordering::Greater);
        let wr = r.witness_real.unwrap();
        assert!(wr.0 != wr.1, "record pair mixes a real root with a complex modulus");
    }

    #[test]
    fn abssep_all_equal_moduli_undefined() {
        // x^3 - 1: all roots on the unit circle
        let r = abssep(&p(&[-1, 0, 0, 1]), &SepOptions::default()).unwrap();
        assert_eq!(r.status, SepStatus::Undefined);
        // x^4 + 1 likewise (non-conjugate, non-opposite equal-modulus pairs)
        let r = abssep(&p(&[1, 0, 0, 0, 1]), &SepOptions::default()).unwrap();
        assert_eq!(r.status, SepStatus::Undefined);
    }

    #[test]
    fn abssep_real_family_cubic() {
        let r = abssep_real(&p(&[-1, 0, 100, 1]), &SepOptions::default()).unwrap();
        let v = r.value.unwrap();
        // witness pair near +-1/10 with gap ~1.000002e-4
        assert!(v.hi().cmp_rational(&ratio(101, 1_000_000)) == std::cmp::Ordering::Less);
        assert!(v.lo().cmp_rational(&ratio(99, 1_000_000)) == std::cmp::Ordering::Greater);
        assert_eq!(r.witness_real.unwrap(), (true, true));
    }

    #[test]
    fn abssep_real_no_real_pair() {
        let r = abssep_real(&p(&[1, 0, 1]), &SepOptions::default()).unwrap();
        assert_eq!(r.status, SepStatus::Undefined);
        // x^2 - x - 1 has two real roots with distinct moduli -> defined
        let r = abssep_real(&p(&[-1, -1, 1]), &SepOptions::default()).unwrap();
        assert_eq!(r.status, SepStatus::Positive);
        assert!(r.value.unwrap().contains_rational(&BigRational::one()));
    }

    #[test]
    fn min_sum_family_cubic() {
        let r = min_pairwise_sum(&p(&[-1, 0, 100, 1]), &SepOptions::default()).unwrap();
        let v = r.value.unwrap();
        // alpha + beta = -1/M^2 + smaller terms: |sum| close to 1e-4
        assert!(v.hi().cmp_rational(&ratio(101, 1_000_000)) == std::cmp::Ordering::Less);
        assert!(v.lo().cmp_rational(&ratio(99, 1_000_000)) == std::cmp::Ordering::Greater);
    }

    #[test]
    fn min_sum_golden_is_one() {
        let r = min_pairwise_sum(&p(&[-1, -1, 1]), &SepOptions::with_tolerance(40)).unwrap();
        let v = r.value.unwrap();
        assert!(v.contains_rational(&BigRational::one()));
    }

    #[test]
    fn min_sum_simple_pair() {
        // x^2+3x+2: roots -1, -2: single pair sum -3
        let r = min_pairwise_sum(&p(&[2, 3, 1]), &SepOptions::default()).unwrap();
        assert!(r.value.unwrap().contains_rational(&ratio(3, 1)));
    }

    #[test]
    fn min_sum_rejects_opposite_pairs() {
        assert_eq!(
            min_pairwise_sum(&p(&[-1, 0, 1]), &SepOptions::default()).unwrap_err(),
            Error::OppositeRootPair
        );
    }

    #[test]
    fn decide_examples() {
        let cfg = RootConfig::default();
        let opts = SepOptions::default();
        // conjugates
        let f = p(&[1, 0, 1]);
        let set = isolate_roots(&f, &tiny(-40), &cfg).unwrap();
        assert_eq!(decide_abs_equal(&f, 0, 1, &set, &opts).unwrap(), AbsEqualDecision::Equal);
        // opposite pair
        let f = p(&[-1, 0, 1]);
        let set = isolate_roots(&f, &tiny(-40), &cfg).unwrap();
        assert_eq!(decide_abs_equal(&f, 0, 1, &set, &opts).unwrap(), AbsEqualDecision::Equal);
        // golden ratio pair: distinct with gap around 1
        let f = p(&[-1, -1, 1]);
        let set = isolate_roots(&f, &tiny(-40), &cfg).unwrap();
        match decide_abs_equal(&f, 0, 1, &set, &opts).unwrap() {
            AbsEqualDecision::Distinct(gap) => {
                assert!(gap.contains_rational(&BigRational::one()));
            }
            other => panic!("expected distinct, got {other:?}"),
        }
        // x^3 - 1: real root 1 vs complex roots of modulus 1: equal via the
        // product-polynomial threshold route
        let f = p(&[-1, 0, 0, 1]);
        let set = isolate_roots(&f, &tiny(-40), &cfg).unwrap();
        let real = set.real_indices()[0];
        let complex = (0..3).find(|&i| !set.disks()[i].is_real_certified()).unwrap();
        assert_eq!(
            decide_abs_equal(&f, real, complex, &set, &opts).unwrap(),
            AbsEqualDecision::Equal
        );
    }

    #[test]
    fn abssep_handles_roots_at_zero() {
        // x(x^2+x+1): the zero root pairs against a unit-modulus complex pair
        let r = abssep(&p(&[0, 1, 1, 1]), &SepOptions::default()).unwrap();
        assert_eq!(r.status, SepStatus::Positive);
        assert!(r.value.unwrap().contains_rational(&BigRational::one()));

        // x(x^3-1): zero root plus three unit-modulus roots; the only
        // admissible gaps are zero-vs-unit, all exactly 1
        let r = abssep(&p(&[0, -1, 0, 0, 1]), &SepOptions::default()).unwrap();
        assert_eq!(r.status, SepStatus::Positive);
        let v = r.value.unwrap();
        assert!(v.contains_rational(&BigRational::one()));
        let wr = r.witness_real.unwrap();
        let set = r.root_set.unwrap();
        let (i, j) = r.witness.unwrap();
        // one side of the witness is the root at zero
        let zero_side = set.disks()[i].modulus_interval(96).contains(&Dyadic::zero())
            || set.disks()[j].modulus_interval(96).contains(&Dyadic::zero());
        assert!(zero_side, "witness {:?} realness {:?}", (i, j), wr);
    }

    #[test]
    fn metrics_invariant_under_scaling() {
        // scaling by a constant leaves the root set unchanged
        let f = p(&[2, -13, 17, 14]);
        let g = f.scale(&BigInt::from(3));
        let a = sep(&f, &SepOptions::default()).unwrap().value.unwrap();
        let b = sep(&g, &SepOptions::default()).unwrap().value.unwrap();
        assert!(a.intersects(&b));
    }

    #[test]
    fn sep_resolves_tight_clusters_beyond_f64() {
        // x^4 - 2(ax-1)^2 has two real roots near 1/a separated by
        // sqrt(2)/a^3, far below what hardware Aberth can distinguish
        for a in [1_000_000i64, 100_000_000] {
            let f = IntPolynomial::new(vec![
                BigInt::from(-2),
                BigInt::from(4 * a),
                BigInt::from(-2) * a * a,
                BigInt::from(0),
                BigInt::from(1),
            ]);
            let r = sep(&f, &SepOptions::default()).unwrap();
            assert_eq!(r.status, SepStatus::Positive);
            let v = r.value.unwrap();
            // sep = sqrt(2)/a^3 * (1 + O(a^-4)): pin v^2 to 2/a^6 within 1%
            let truth = BigRational::new(BigInt::from(2), BigInt::from(a).pow(6));
            let low = &truth * BigRational::new(BigInt::from(99), BigInt::from(100));
            let high = &truth * BigRational::new(BigInt::from(101), BigInt::from(100));
            assert!(v.lo().square().cmp_rational(&low) == std::cmp::Ordering::Greater);
            assert!(v.hi().square().cmp_rational(&high) == std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn enclosure_soundness_under_refinement() {
        // re-running at doubled tolerance yields an enclosure inside the first
        for coeffs in [&[2i64, -13, 17, 14][..], &[-1, 0, 100, 1], &[8, -7, -9, 17]] {
            let f = p(coeffs);
            let loose = sep(&f, &SepOptions::with_tolerance(15)).unwrap().value.unwrap();
            let tight = sep(&f, &SepOptions::with_tolerance(30)).unwrap().value.unwrap();
            assert!(loose.contains_interval(&tight), "{f}: tighter enclosure escaped looser one");
        }
    }
}
