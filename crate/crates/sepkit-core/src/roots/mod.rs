//! Certified root isolation.
//!
//! Roots are approximated by Aberth-Ehrlich iteration and certified by the
//! classical inclusion radius `r = d * |P(c)| / |P'(c)|` with outward
//! rounding: every such disk contains at least one root, so `d` pairwise
//! disjoint disks contain exactly one root each. Realness and conjugate
//! pairing are certified by the mirror argument: if the reflection of a disk
//! across the real axis meets no other disk, the conjugate of its root must
//! be its own root.

mod aberth;
mod separation;

pub use separation::{
    abssep, abssep_real, decide_abs_equal, min_pairwise_sum, sep, sep_real, AbsEqualDecision,
    SepOptions, SepStatus, SeparationResult,
};

pub(crate) use aberth::aberth_f64_raw;

use crate::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::interval::{DyComplex, DyInterval};
use crate::poly::{self, IntPolynomial};
use num_bigint::BigInt;

/// Knobs for the isolation/refinement machinery.
#[derive(Debug, Clone)]
pub struct RootConfig {
    /// Hard cap on working precision, in bits.
    pub precision_ceiling: u64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { precision_ceiling: 1 << 16 }
    }
}

impl RootConfig {
    pub fn with_ceiling(bits: u64) -> Self {
        RootConfig { precision_ceiling: bits }
    }
}

/// A certified disk containing exactly one root of the subject polynomial.
#[derive(Debug, Clone)]
pub struct RootDisk {
    center: DyComplex,
    radius: Dyadic,
    is_real_certified: bool,
    partner: Option<usize>,
}

impl RootDisk {
    pub fn center(&self) -> &DyComplex {
        &self.center
    }

    pub fn radius(&self) -> &Dyadic {
        &self.radius
    }

    pub fn is_real_certified(&self) -> bool {
        self.is_real_certified
    }

    /// Index of the disk holding the conjugate root, for non-real disks.
    pub fn conj_partner(&self) -> Option<usize> {
        self.partner
    }

    /// For real-certified disks, the real interval containing the root.
    pub fn real_interval(&self) -> Option<DyInterval> {
        if !self.is_real_certified {
            return None;
        }
        Some(DyInterval::new(
            self.center.re.sub(&self.radius),
            self.center.re.add(&self.radius),
        ))
    }

    /// Enclosure of the root's modulus. Exact (no square roots) for
    /// real-certified disks.
    pub fn modulus_interval(&self, prec: u64) -> DyInterval {
        if let Some(iv) = self.real_interval() {
            return iv.abs();
        }
        let m = self.center.modulus_interval(prec);
        let lo = m.lo().sub(&self.radius);
        let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
        DyInterval::new(lo, m.hi().add(&self.radius))
    }

    /// Enclosure of the squared modulus (no square roots involved).
    pub fn modulus_sq_interval(&self, prec: u64) -> DyInterval {
        let m = self.modulus_interval(prec);
        m.mul(&m)
    }


    /// Exact test: does this disk intersect the closed disk `(c, r)`?
    fn intersects_disk(&self, c: &DyComplex, r: &Dyadic) -> bool {
        let dist_sq = self.center.sub(c).modulus_sq();
        let rsum = self.radius.add(r);
        dist_sq <= rsum.square()
    }

    /// Exact test: is this disk contained in the closed disk `(c, r)`?
    fn contained_in(&self, c: &DyComplex, r: &Dyadic) -> bool {
        if self.radius > *r {
            return false;
        }
        let slack = r.sub(&self.radius);
        self.center.sub(c).modulus_sq() <= slack.square()
    }
}

/// A complete set of certified, pairwise disjoint root disks.
#[derive(Debug, Clone)]
pub struct RootSet {
    poly: IntPolynomial,
    disks: Vec<RootDisk>,
}

impl RootSet {
    pub fn polynomial(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn disks(&self) -> &[RootDisk] {
        &self.disks
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn real_indices(&self) -> Vec<usize> {
        (0..self.disks.len()).filter(|&i| self.disks[i].is_real_certified).collect()
    }

    /// Exact enclosure of `|alpha_i - alpha_j|`.
    pub fn distance_interval(&self, i: usize, j: usize, prec: u64) -> DyInterval {
        let di = &self.disks[i];
        let dj = &self.disks[j];
        let m = di.center.sub(&dj.center).modulus_interval(prec);
        let rr = di.radius.add(&dj.radius);
        let lo = m.lo().sub(&rr);
        let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
        DyInterval::new(lo, m.hi().add(&rr))
    }

    /// Exact enclosure of `|alpha_i + alpha_j|`.
    pub fn sum_modulus_interval(&self, i: usize, j: usize, prec: u64) -> DyInterval {
        let di = &self.disks[i];
        let dj = &self.disks[j];
        let m = di.center.add(&dj.center).modulus_interval(prec);
        let rr = di.radius.add(&dj.radius);
        let lo = m.lo().sub(&rr);
        let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
        DyInterval::new(lo, m.hi().add(&rr))
    }

    /// Enclosure of `||alpha_i| - |alpha_j||`.
    pub fn modulus_gap_interval(&self, i: usize, j: usize, prec: u64) -> DyInterval {
        self.disks[i]
            .modulus_interval(prec)
            .sub(&self.disks[j].modulus_interval(prec))
            .abs()
    }

    /// Refine every disk to radius at most `target`, preserving the
    /// root-to-disk assignment and all certification flags.
    pub fn refine(&self, target: &Dyadic, cfg: &RootConfig) -> Result<RootSet> {
        let all: Vec<usize> = (0..self.disks.len()).collect();
        self.refine_indices(&all, target, cfg)
    }

    /// Refine only the disks named in `indices` (plus conjugate partners, to
    /// keep the set exactly mirror-symmetric).
    pub fn refine_indices(
        &self,
        indices: &[usize],
        target: &Dyadic,
        cfg: &RootConfig,
    ) -> Result<RootSet> {
        let mut todo: Vec<usize> = Vec::new();
        for &i in indices {
            if !todo.contains(&i) {
                todo.push(i);
            }
            if let Some(p) = self.disks[i].partner {
                if !todo.contains(&p) {
                    todo.push(p);
                }
            }
        }
        let mut out = self.clone();
        let d = self.poly.degree().expect("root set of nonzero polynomial");
        let dp = self.poly.derivative();
        for &i in &todo {
            if out.disks[i].radius <= *target {
                continue;
            }
            // partners are rewritten from their mirror below
            if let Some(p) = out.disks[i].partner {
                if todo.contains(&p) && p < i {
                    continue;
                }
            }
            let old = out.disks[i].clone();
            let mut prec = suggested_precision(&old, target);
            let refined = loop {
                if prec > cfg.precision_ceiling {
                    return Err(Error::PrecisionExhausted {
                        ceiling_bits: cfg.precision_ceiling as u32,
                        context: format!("refining root disk {i}"),
                    });
                }
                if let Some(nd) = refine_disk(&self.poly, &dp, d, &old, target, prec) {
                    break nd;
                }
                prec *= 2;
            };
            out.disks[i] = refined;
            if let Some(p) = old.partner {
                let src = out.disks[i].clone();
                out.disks[p] = RootDisk {
                    center: src.center.conj(),
                    radius: src.radius,
                    is_real_certified: false,
                    partner: Some(i),
                };
            }
        }
        Ok(out)
    }
}

fn suggested_precision(disk: &RootDisk, target: &Dyadic) -> u64 {
    // enough bits to express the target radius relative to the center scale
    let scale_bits = disk.center.modulus_sq().exponent() / 2 + 8;
    let target_bits = -target.exponent() + target.precision_bits() as i64;
    ((scale_bits + target_bits).max(64) as u64).next_power_of_two()
}

/// One refinement attempt at fixed precision: Newton-polish the center, then
/// recertify. Sound only if the new disk stays inside the old one (same
/// root). Real disks stay exactly on the axis.
fn refine_disk(
    p: &IntPolynomial,
    dp: &IntPolynomial,
    d: usize,
    old: &RootDisk,
    target: &Dyadic,
    prec: u64,
) -> Option<RootDisk> {
    let mut c = old.center.round(prec);
    let steps = 2 + (prec.trailing_zeros() as usize / 8).min(4);
    for _ in 0..steps {
        c = newton_step(p, dp, &c, prec, old.is_real_certified);
    }
    let radius = certified_radius(p, dp, d, &c, prec)?;
    if radius > *target {
        return None;
    }
    let cand = RootDisk {
        center: c,
        radius,
        is_real_certified: old.is_real_certified,
        partner: old.partner,
    };
    if !cand.contained_in(&old.center, &old.radius) {
        return None;
    }
    Some(cand)
}

fn newton_step(
    p: &IntPolynomial,
    dp: &IntPolynomial,
    c: &DyComplex,
    prec: u64,
    keep_real: bool,
) -> DyComplex {
    if keep_real {
        let x = c.re.round(prec, Round::Down);
        let pv = p.evaluate_dyadic(&x);
        let dv = dp.evaluate_dyadic(&x);
        if dv.is_zero() {
            return DyComplex::real(x);
        }
        let step = pv.div(&dv, prec, Round::Down);
        return DyComplex::real(x.sub(&step).round(prec, Round::Down));
    }
    let z = c.round(prec);
    let pv = evaluate_complex(p, &z);
    let dv = evaluate_complex(dp, &z);
    if dv.modulus_sq().is_zero() {
        return z;
    }
    z.sub(&pv.div_approx(&dv, prec)).round(prec)
}

/// Exact complex Horner evaluation (integer coefficients, dyadic point).
pub(crate) fn evaluate_complex(p: &IntPolynomial, z: &DyComplex) -> DyComplex {
    let mut acc = DyComplex::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z).add(&DyComplex::real(Dyadic::from_bigint(c.clone())));
    }
    acc
}

/// Certified inclusion radius `d * |P(c)| / |P'(c)|`, outward rounded.
/// `None` when the derivative modulus cannot be bounded away from zero.
fn certified_radius(
    p: &IntPolynomial,
    dp: &IntPolynomial,
    d: usize,
    c: &DyComplex,
    prec: u64,
) -> Option<Dyadic> {
    let pv = evaluate_complex(p, c);
    let dv = evaluate_complex(dp, c);
    let den_sq = dv.modulus_sq();
    if den_sq.is_zero() {
        return None;
    }
    let num = pv.modulus_sq().sqrt(prec, Round::Up);
    let den = den_sq.sqrt(prec, Round::Down);
    if den.is_zero() {
        return None;
    }
    Some(num.mul(&Dyadic::from_int(d as i64)).div(&den, prec, Round::Up))
}

enum CertifyFailure {
    NeedPrecision,
    NotDisjoint,
    Ambiguous,
}

/// Isolate all roots of a separable polynomial into pairwise disjoint
/// certified disks of radius at most `target_radius`.
pub fn isolate_roots(
    p: &IntPolynomial,
    target_radius: &Dyadic,
    cfg: &RootConfig,
) -> Result<RootSet> {
    let d = p.degree()?;
    if d == 0 {
        return Err(Error::DegreeTooSmall { required: 1, got: 0 });
    }
    if !poly::is_separable(p)? {
        return Err(Error::NotSeparable);
    }
    assert!(target_radius.is_positive(), "target radius must be positive");

    let mut centers: Vec<DyComplex> = match aberth::aberth_f64(p, 60 * (d as u32 + 4)) {
        Some(zs) => zs
            .iter()
            .map(|z| {
                DyComplex::new(
                    Dyadic::from_f64(z.re).unwrap_or_else(Dyadic::zero),
                    Dyadic::from_f64(z.im).unwrap_or_else(Dyadic::zero),
                )
            })
            .collect(),
        None => fallback_seeds(p, d),
    };

    let dp = p.derivative();
    let mut prec: u64 = 64;
    let mut internal_target = target_radius.clone();
    let mut failures = 0u32;
    loop {
        if prec > cfg.precision_ceiling {
            return Err(Error::PrecisionExhausted {
                ceiling_bits: cfg.precision_ceiling as u32,
                context: format!("isolating roots of {}", p.to_coeff_string()),
            });
        }
        for c in centers.iter_mut() {
            let mut z = c.round(prec);
            for _ in 0..2 {
                z = newton_step(p, &dp, &z, prec, false);
            }
            *c = z;
        }
        match certify_and_classify(p, &dp, d, &centers, &internal_target, prec) {
            Ok(disks) => return Ok(RootSet { poly: p.clone(), disks }),
            Err(kind) => {
                failures += 1;
                if matches!(kind, CertifyFailure::Ambiguous) {
                    internal_target = internal_target.shl(-8);
                }
                // Newton alone stalls near clustered roots (linear descent
                // toward a near-double root); a full simultaneous pass
                // re-separates the approximations. Alternate the restart
                // between the polished centers and fresh circle seeds.
                if failures >= 2 {
                    let seeds =
                        if failures % 2 == 0 { centers.clone() } else { fallback_seeds(p, d) };
                    centers = aberth::aberth_dyadic(p, &seeds, prec, 80 * (d as u32 + 4));
                }
                prec *= 2;
            }
        }
    }
}

fn fallback_seeds(p: &IntPolynomial, d: usize) -> Vec<DyComplex> {
    let h = crate::poly::bigint_to_f64(&p.height().unwrap());
    let lead = crate::poly::bigint_to_f64(p.leading().unwrap()).abs();
    let r0 = (1.0 + h / lead) * 0.75;
    (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.397;
            DyComplex::new(
                Dyadic::from_f64(r0 * theta.cos()).unwrap(),
                Dyadic::from_f64(r0 * theta.sin()).unwrap(),
            )
        })
        .collect()
}

fn certify_and_classify(
    p: &IntPolynomial,
    dp: &IntPolynomial,
    d: usize,
    centers: &[DyComplex],
    target: &Dyadic,
    prec: u64,
) -> std::result::Result<Vec<RootDisk>, CertifyFailure> {
    // radii
    let mut disks: Vec<(DyComplex, Dyadic)> = Vec::with_capacity(d);
    for c in centers {
        let r = certified_radius(p, dp, d, c, prec).ok_or(CertifyFailure::NeedPrecision)?;
        if r > *target {
            return Err(CertifyFailure::NeedPrecision);
        }
        disks.push((c.clone(), r));
    }
    if !pairwise_disjoint(&disks) {
        return Err(CertifyFailure::NotDisjoint);
    }
    let assignment = classify_mirrors(&disks).ok_or(CertifyFailure::Ambiguous)?;

    // normalize: snap real roots onto the axis, mirror conjugate partners
    let mut out: Vec<RootDisk> = disks
        .iter()
        .map(|(c, r)| RootDisk {
            center: c.clone(),
            radius: r.clone(),
            is_real_certified: false,
            partner: None,
        })
        .collect();
    for (i, a) in assignment.iter().enumerate() {
        match *a {
            MirrorAssign::Real => {
                // a real root x in the disk satisfies |x - Re(c)| <= |x - c| <= r
                out[i].center = DyComplex::real(out[i].center.re.clone());
                out[i].is_real_certified = true;
            }
            MirrorAssign::Partner(j) => {
                out[i].partner = Some(j);
                if i < j {
                    out[j] = RootDisk {
                        center: out[i].center.conj(),
                        radius: out[i].radius.clone(),
                        is_real_certified: false,
                        partner: Some(i),
                    };
                }
            }
        }
    }
    // normalization moved centers: re-verify the geometric certificates
    let moved: Vec<(DyComplex, Dyadic)> =
        out.iter().map(|disk| (disk.center.clone(), disk.radius.clone())).collect();
    if !pairwise_disjoint(&moved) {
        return Err(CertifyFailure::Ambiguous);
    }
    match classify_mirrors(&moved) {
        Some(check) => {
            for (i, a) in check.iter().enumerate() {
                let consistent = match *a {
                    MirrorAssign::Real => out[i].is_real_certified,
                    MirrorAssign::Partner(j) => out[i].partner == Some(j),
                };
                if !consistent {
                    return Err(CertifyFailure::Ambiguous);
                }
            }
        }
        None => return Err(CertifyFailure::Ambiguous),
    }
    Ok(out)
}

fn pairwise_disjoint(disks: &[(DyComplex, Dyadic)]) -> bool {
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            let dist_sq = disks[i].0.sub(&disks[j].0).modulus_sq();
            let rsum = disks[i].1.add(&disks[j].1);
            if dist_sq <= rsum.square() {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum MirrorAssign {
    Real,
    Partner(usize),
}

/// For each disk, find which disks its mirror image meets. Exactly one hit is
/// required: the disk itself (real root) or a single partner (conjugate).
fn classify_mirrors(disks: &[(DyComplex, Dyadic)]) -> Option<Vec<MirrorAssign>> {
    let n = disks.len();
    let mut hit = vec![usize::MAX; n];
    for i in 0..n {
        let mirror = disks[i].0.conj();
        let mut found: Option<usize> = None;
        for (j, (cj, rj)) in disks.iter().enumerate() {
            let dist_sq = mirror.sub(cj).modulus_sq();
            let rsum = disks[i].1.add(rj);
            if dist_sq <= rsum.square() {
                if found.is_some() {
                    return None;
                }
                found = Some(j);
            }
        }
        hit[i] = found?;
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if hit[i] == i {
            out.push(MirrorAssign::Real);
        } else {
            if hit[hit[i]] != i {
                return None;
            }
            out.push(MirrorAssign::Partner(hit[i]));
        }
    }
    Some(out)
}

/// Opposite root pairs `(i, j)` with `alpha_i + alpha_j = 0`, found exactly
/// through `gcd(P(x), P(-x))`. Empty when `res(P(x), P(-x)) != 0`.
pub fn opposite_pairs(
    sf: &IntPolynomial,
    set: &RootSet,
    cfg: &RootConfig,
) -> Result<Vec<(usize, usize)>> {
    if !poly::has_opposite_root_pair(sf)? {
        return Ok(vec![]);
    }
    let g = poly::gcd_primitive(sf, &sf.negate_argument())?;
    let gd = g.degree()?;
    debug_assert!(gd >= 1);
    let mut gtarget = Dyadic::from_parts(BigInt::from(1), -32);
    let mut gset = isolate_roots(&g, &gtarget, cfg)?;
    let mut pairs = Vec::new();
    'outer: loop {
        pairs.clear();
        let mut matched: Vec<(usize, usize)> = Vec::new(); // (g index, sf index)
        for (k, gdisk) in gset.disks().iter().enumerate() {
            let holders: Vec<usize> = set
                .disks()
                .iter()
                .enumerate()
                .filter(|(_, d)| d.intersects_disk(&gdisk.center, &gdisk.radius))
                .map(|(i, _)| i)
                .collect();
            if holders.len() != 1 {
                gtarget = gtarget.shl(-16);
                gset = gset.refine(&gtarget, cfg)?;
                continue 'outer;
            }
            matched.push((k, holders[0]));
        }
        // the negation of each g-root is also a root of g and of sf
        for (k, i) in &matched {
            let neg_center = gset.disks()[*k].center.neg();
            let holders: Vec<usize> = set
                .disks()
                .iter()
                .enumerate()
                .filter(|(_, d)| d.intersects_disk(&neg_center, &gset.disks()[*k].radius))
                .map(|(j, _)| j)
                .collect();
            if holders.len() != 1 {
                gtarget = gtarget.shl(-16);
                gset = gset.refine(&gtarget, cfg)?;
                continue 'outer;
            }
            let j = holders[0];
            if *i != j {
                let pair = (usize::min(*i, j), usize::max(*i, j));
                if !pairs.contains(&pair) {
                    pairs.push(pair);
                }
            }
        }
        pairs.sort();
        return Ok(pairs);
    }
}

/// Mahler measure enclosure used by the bounds module: `|a_d| * prod
/// max{1, |alpha_i|}` with the unit-circle branch decided exactly.
pub(crate) fn mahler_measure_enclosure_impl(
    p: &IntPolynomial,
    roots: &RootSet,
    prec: u64,
) -> Result<DyInterval> {
    let cfg = RootConfig::default();
    let d = p.degree()?;
    let mut set = roots.clone();
    let one = Dyadic::one();
    let mut factors: Vec<DyInterval> = Vec::with_capacity(d);
    // threshold machinery, built lazily when some |alpha| = 1 must be decided
    let mut threshold: Option<Option<UnitThreshold>> = None;
    for i in 0..d {
        let mut target = set.disks()[i].radius().clone();
        loop {
            let m = set.disks()[i].modulus_interval(prec);
            if *m.lo() >= one {
                factors.push(m);
                break;
            }
            if *m.hi() <= one {
                factors.push(DyInterval::point(one.clone()));
                break;
            }
            // straddles the unit circle: consult the exact test
            let th = threshold.get_or_insert_with(|| unit_threshold(p).ok());
            let th = th.as_ref().ok_or(Error::UnresolvedUnitRoot)?.clone();
            match th {
                UnitThreshold::NoUnitProduct => {
                    // no pair product equals 1, so |alpha| != 1: keep refining
                }
                UnitThreshold::Gap(ref gap) => {
                    // |alpha|^2 - 1 is zero or at least `gap` in absolute value
                    let sq = set.disks()[i].modulus_sq_interval(prec);
                    let dev = sq.sub(&DyInterval::point(one.clone())).abs();
                    if dev.hi() < gap {
                        factors.push(DyInterval::point(one.clone()));
                        break;
                    }
                }
            }
            target = target.shl(-16);
            set = set.refine_indices(&[i], &target, &cfg).map_err(|e| match e {
                Error::PrecisionExhausted { .. } => Error::UnresolvedUnitRoot,
                other => other,
            })?;
        }
    }
    let lead = p.leading()?.clone();
    let mut acc = DyInterval::point(Dyadic::from_bigint(lead).abs());
    for f in &factors {
        acc = acc.mul(f);
    }
    Ok(acc.round_out(prec))
}

#[derive(Clone)]
enum UnitThreshold {
    /// The product polynomial does not vanish at 1: no root has modulus 1.
    NoUnitProduct,
    /// Minimal distance between 1 and any other root of the (squarefree)
    /// product polynomial.
    Gap(Dyadic),
}

fn unit_threshold(p: &IntPolynomial) -> Result<UnitThreshold> {
    let stripped = strip_zero_root(p);
    let prod = poly::product_polynomial(&stripped)?;
    let t = poly::squarefree_part(&prod)?;
    let at_one = t.evaluate_bigint(&BigInt::from(1));
    if !num_traits::Zero::is_zero(&at_one) {
        return Ok(UnitThreshold::NoUnitProduct);
    }
    let dt = t.degree()? as u32;
    let gap = crate::bounds::mahler_pair_bound(dt.max(2), &t.height()?, &Dyadic::one(), 128)?;
    Ok(UnitThreshold::Gap(gap))
}

/// Divide out a root at zero if present (returns `P / x^k`).
pub(crate) fn strip_zero_root(p: &IntPolynomial) -> IntPolynomial {
    let k = p.coeffs().iter().take_while(|c| num_traits::Zero::is_zero(*c)).count();
    if k == 0 || p.is_zero() {
        return p.clone();
    }
    IntPolynomial::new(p.coeffs()[k..].to_vec())
}
