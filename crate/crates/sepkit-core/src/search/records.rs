//! Two-phase record search: fast hardware-precision screening over statically
//! chunked index ranges, then certified recomputation of the survivors.
//!
//! Determinism: chunk boundaries depend only on the box and chunk size, each
//! chunk's result depends only on its own indices, and the merge orders by
//! chunk id, so worker count and scheduling cannot change the output. A
//! survivor set is sound as long as the hardware screen is within the
//! configured safety factor of the truth; that envelope is validated against
//! a full certified pass on a small box in the test suite.

use super::{is_canonical_i64, is_separable_i64, SearchBox};
use crate::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::interval::DyInterval;
use crate::poly::IntPolynomial;
use crate::roots::{self, SepOptions, SepStatus};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

/// Which separation quantity the search minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Sep,
    Abssep,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Sep => write!(f, "sep"),
            Metric::Abssep => write!(f, "abssep"),
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Metric> {
        match s {
            "sep" => Ok(Metric::Sep),
            "abssep" => Ok(Metric::Abssep),
            other => Err(Error::Parse(format!("unknown metric `{other}` (sep|abssep)"))),
        }
    }
}

/// Search configuration.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub top_k: usize,
    /// Raw tuples per chunk; also the checkpoint cadence.
    pub chunk_size: u64,
    pub exec: ExecMode,
    pub sep_opts: SepOptions,
    /// Screening safety factor: a candidate survives phase one if its
    /// hardware-precision value is below `safety_factor` times the current
    /// k-th record.
    pub safety_factor: f64,
    /// Relative modulus-difference below which a pair is routed to the exact
    /// decision procedure instead of being trusted to hardware screening.
    pub equal_modulus_cutoff: f64,
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            top_k: 1,
            chunk_size: 200_000,
            exec: ExecMode::Parallel,
            sep_opts: SepOptions::default(),
            safety_factor: 4.0,
            equal_modulus_cutoff: 1e-9,
            checkpoint: None,
        }
    }
}

/// Counters over the raw tuple space.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCounters {
    pub scanned: u64,
    pub canonical: u64,
    pub skipped_symmetry: u64,
    pub skipped_non_separable: u64,
    pub undefined_metric: u64,
    pub certified: u64,
}

impl SearchCounters {
    fn merge(&mut self, o: &SearchCounters) {
        self.scanned += o.scanned;
        self.canonical += o.canonical;
        self.skipped_symmetry += o.skipped_symmetry;
        self.skipped_non_separable += o.skipped_non_separable;
        self.undefined_metric += o.undefined_metric;
        self.certified += o.certified;
    }
}

/// One certified record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecordEntry {
    /// Ascending coefficients as decimal strings (canonical form).
    pub coeffs: Vec<String>,
    pub pretty: String,
    pub metric: Metric,
    /// Decimal enclosure edges, outward rounded.
    pub value_lower: String,
    pub value_upper: String,
    pub witness: (usize, usize),
    pub witness_real: (bool, bool),
}

/// Final result of a record search.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub records: Vec<RecordEntry>,
    pub counters: SearchCounters,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Candidate {
    index: u64,
    approx: f64,
    uncertain: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ChunkOutcome {
    chunk: u64,
    candidates: Vec<Candidate>,
    counters: SearchCounters,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
struct CheckpointHeader {
    kind: String,
    version: u32,
    #[serde(rename = "box")]
    search_box: SearchBox,
    metric: Metric,
    chunk_size: u64,
    total_chunks: u64,
}

/// Hardware-precision screen. Returns `(approx, uncertain)`; `approx` is
/// `INFINITY` when no admissible pair exists, `uncertain` marks polynomials
/// that must be certified regardless of their screened value.
fn screen(coeffs: &[i64], metric: Metric, cutoff: f64) -> (f64, bool) {
    let fc: Vec<f64> = coeffs.iter().map(|&c| c as f64).collect();
    let Some(zs) = roots::aberth_f64_raw(&fc, 400) else {
        return (0.0, true);
    };
    let scale = zs.iter().fold(1.0f64, |acc, z| acc.max(z.norm()));
    match metric {
        Metric::Sep => {
            let mut best = f64::INFINITY;
            for i in 0..zs.len() {
                for j in i + 1..zs.len() {
                    best = best.min((zs[i] - zs[j]).norm());
                }
            }
            (best, false)
        }
        Metric::Abssep => {
            let clearly_complex = |k: usize| zs[k].im.abs() > 1e-6 * scale;
            let mut best = f64::INFINITY;
            let mut uncertain = false;
            let mut any_admissible = false;
            for i in 0..zs.len() {
                for j in i + 1..zs.len() {
                    // a genuinely complex mirror pair is an exact conjugate pair
                    if clearly_complex(i)
                        && clearly_complex(j)
                        && zs[i].im * zs[j].im < 0.0
                        && (zs[i].conj() - zs[j]).norm() <= 1e-6 * scale
                    {
                        continue;
                    }
                    let dm = (zs[i].norm() - zs[j].norm()).abs();
                    if dm <= cutoff * scale {
                        // equal moduli or a gap below hardware resolution:
                        // only the exact machinery can tell
                        uncertain = true;
                    } else {
                        any_admissible = true;
                        best = best.min(dm);
                    }
                }
            }
            if !any_admissible && !uncertain {
                return (f64::INFINITY, false);
            }
            (best, uncertain)
        }
    }
}

/// Enclosure, witness index pair, witness realness flags.
type CertifiedValue = (DyInterval, (usize, usize), (bool, bool));

/// Certified metric for a single polynomial; `None` when undefined.
fn certified_metric(
    poly: &IntPolynomial,
    metric: Metric,
    opts: &SepOptions,
) -> Result<Option<CertifiedValue>> {
    let result = match metric {
        Metric::Sep => roots::sep(poly, opts)?,
        Metric::Abssep => roots::abssep(poly, opts)?,
    };
    match result.status {
        SepStatus::Positive => Ok(Some((
            result.value.expect("positive status carries a value"),
            result.witness.unwrap(),
            result.witness_real.unwrap(),
        ))),
        _ => Ok(None),
    }
}

fn process_chunk(
    search_box: &SearchBox,
    metric: Metric,
    chunk: u64,
    opts: &SearchOptions,
) -> ChunkOutcome {
    let total = search_box.total_tuples();
    let start = chunk * opts.chunk_size;
    let end = (start + opts.chunk_size).min(total);
    let mut counters = SearchCounters::default();
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut local_best: Vec<f64> = Vec::new(); // ascending, at most top_k
    for index in start..end {
        let coeffs = search_box.decode(index);
        counters.scanned += 1;
        if !is_canonical_i64(&coeffs) {
            counters.skipped_symmetry += 1;
            continue;
        }
        counters.canonical += 1;
        if !is_separable_i64(&coeffs) {
            if metric == Metric::Sep {
                counters.skipped_non_separable += 1;
            } else {
                // repeated roots defeat the hardware screen; the certified
                // path takes the squarefree part and decides properly
                candidates.push(Candidate { index, approx: 0.0, uncertain: true });
            }
            continue;
        }
        let (approx, uncertain) = screen(&coeffs, metric, opts.equal_modulus_cutoff);
        if uncertain {
            // the screened value of an uncertain candidate is never used
            // (certification is forced); keep it finite so the checkpoint
            // JSON round-trips
            let approx = if approx.is_finite() { approx } else { 0.0 };
            candidates.push(Candidate { index, approx, uncertain: true });
            continue;
        }
        if approx.is_infinite() {
            counters.undefined_metric += 1;
            continue;
        }
        let threshold = if local_best.len() >= opts.top_k {
            local_best[opts.top_k - 1] * opts.safety_factor
        } else {
            f64::INFINITY
        };
        if approx <= threshold {
            candidates.push(Candidate { index, approx, uncertain: false });
            let pos = local_best.partition_point(|v| *v < approx);
            local_best.insert(pos, approx);
            local_best.truncate(opts.top_k);
        }
    }
    // final prune against the settled local threshold
    if local_best.len() >= opts.top_k {
        let threshold = local_best[opts.top_k - 1] * opts.safety_factor;
        candidates.retain(|c| c.uncertain || c.approx <= threshold);
    }
    ChunkOutcome { chunk, candidates, counters }
}

fn read_checkpoint(
    path: &Path,
    expect: &CheckpointHeader,
) -> Result<Vec<ChunkOutcome>> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut outcomes = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if lineno == 0 {
            let header: CheckpointHeader =
                serde_json::from_str(&line).map_err(|e| Error::CheckpointCorrupt {
                    line: 1,
                    reason: format!("bad header: {e}"),
                })?;
            if header != *expect {
                return Err(Error::CheckpointMismatch {
                    expected: serde_json::to_string(expect).unwrap_or_default(),
                    found: line,
                });
            }
            continue;
        }
        let outcome: ChunkOutcome =
            serde_json::from_str(&line).map_err(|e| Error::CheckpointCorrupt {
                line: lineno + 1,
                reason: e.to_string(),
            })?;
        if outcome.chunk >= expect.total_chunks {
            return Err(Error::CheckpointCorrupt {
                line: lineno + 1,
                reason: format!("chunk id {} out of range", outcome.chunk),
            });
        }
        outcomes.push(outcome);
    }
    Ok(outcomes)
}

/// Search the box for the `top_k` smallest certified metric values.
pub fn search_records(
    search_box: &SearchBox,
    metric: Metric,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    let total = search_box.total_tuples();
    let total_chunks = total.div_ceil(opts.chunk_size);
    let header = CheckpointHeader {
        kind: "sepkit-search-checkpoint".into(),
        version: 1,
        search_box: search_box.clone(),
        metric,
        chunk_size: opts.chunk_size,
        total_chunks,
    };

    // resume or start fresh
    let mut outcomes: Vec<ChunkOutcome> = Vec::new();
    let mut checkpoint_file = None;
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            outcomes = read_checkpoint(path, &header)?;
        } else {
            let mut f = std::fs::File::create(path)?;
            writeln!(f, "{}", serde_json::to_string(&header).expect("header serializes"))?;
        }
        checkpoint_file =
            Some(std::fs::OpenOptions::new().append(true).open(path)?);
    }
    let done: std::collections::HashSet<u64> = outcomes.iter().map(|o| o.chunk).collect();
    let missing: Vec<u64> = (0..total_chunks).filter(|c| !done.contains(c)).collect();

    // process missing chunks in batches so checkpoints land periodically
    let batch = exec::effective_workers(opts.exec).max(1) * 4;
    for ids in missing.chunks(batch) {
        let mut fresh = exec::map_collect(opts.exec, ids.to_vec(), |id| {
            process_chunk(search_box, metric, id, opts)
        });
        fresh.sort_by_key(|o| o.chunk);
        if let Some(f) = checkpoint_file.as_mut() {
            for o in &fresh {
                writeln!(f, "{}", serde_json::to_string(o).expect("chunk outcome serializes"))?;
            }
            f.flush()?;
        }
        outcomes.extend(fresh);
    }
    outcomes.sort_by_key(|o| o.chunk);

    let mut counters = SearchCounters::default();
    for o in &outcomes {
        counters.merge(&o.counters);
    }

    // phase two: certify survivors in deterministic order
    let mut survivors: Vec<Candidate> =
        outcomes.into_iter().flat_map(|o| o.candidates).collect();
    survivors.sort_by(|a, b| {
        let ka = if a.uncertain { f64::NEG_INFINITY } else { a.approx };
        let kb = if b.uncertain { f64::NEG_INFINITY } else { b.approx };
        ka.partial_cmp(&kb).unwrap().then(a.index.cmp(&b.index))
    });

    // sorted by (value upper bound, canonical tuple)
    let mut certified: Vec<(Dyadic, Vec<i64>, CertifiedValue)> = Vec::new();
    for cand in survivors {
        if certified.len() >= opts.top_k && !cand.uncertain {
            let kth_upper = certified[opts.top_k - 1].0.to_f64();
            if cand.approx > opts.safety_factor * kth_upper {
                break; // true value >= approx / safety > current k-th record
            }
        }
        let coeffs = search_box.decode(cand.index);
        let poly = IntPolynomial::from_i64s(&coeffs);
        counters.certified += 1;
        match certified_metric(&poly, metric, &opts.sep_opts)? {
            Some(value) => {
                let key = value.0.hi().clone();
                let pos = certified.partition_point(|(upper, tuple, ..)| {
                    (upper, tuple.as_slice()) < (&key, coeffs.as_slice())
                });
                certified.insert(pos, (key, coeffs, value));
            }
            None => counters.undefined_metric += 1,
        }
    }

    let records = certified
        .into_iter()
        .take(opts.top_k)
        .map(|(_, coeffs, (iv, witness, realness))| {
            let poly = IntPolynomial::from_i64s(&coeffs);
            RecordEntry {
                coeffs: coeffs.iter().map(|c| c.to_string()).collect(),
                pretty: poly.to_pretty_string(),
                metric,
                value_lower: iv.lo().to_decimal(30, Round::Down),
                value_upper: iv.hi().to_decimal(30, Round::Up),
                witness,
                witness_real: realness,
            }
        })
        .collect();
    Ok(SearchOutcome { records, counters })
}

/// Count canonical polynomials whose certified metric value lies strictly
/// below `threshold`.
pub fn uniqueness_check(
    search_box: &SearchBox,
    metric: Metric,
    threshold: &BigRational,
    opts: &SearchOptions,
) -> Result<u64> {
    let total = search_box.total_tuples();
    let total_chunks = total.div_ceil(opts.chunk_size);
    let thr_f64 = {
        let n: f64 = threshold.numer().to_string().parse().unwrap_or(f64::MAX);
        let d: f64 = threshold.denom().to_string().parse().unwrap_or(1.0);
        n / d
    };
    let counts = exec::map_collect(opts.exec, (0..total_chunks).collect(), |chunk| {
        let start = chunk * opts.chunk_size;
        let end = (start + opts.chunk_size).min(total);
        let mut below = 0u64;
        for index in start..end {
            let coeffs = search_box.decode(index);
            if !is_canonical_i64(&coeffs) {
                continue;
            }
            let separable = is_separable_i64(&coeffs);
            if metric == Metric::Sep && !separable {
                continue;
            }
            if separable {
                let (approx, uncertain) = screen(&coeffs, metric, opts.equal_modulus_cutoff);
                if !uncertain && approx > opts.safety_factor * thr_f64 {
                    continue;
                }
            }
            let poly = IntPolynomial::from_i64s(&coeffs);
            if certified_below(&poly, metric, threshold, &opts.sep_opts)
                .unwrap_or_else(|e| panic!("certification failed for {poly}: {e}"))
            {
                below += 1;
            }
        }
        below
    });
    Ok(counts.into_iter().sum())
}

/// Decide `metric(P) < threshold` with certified enclosures, tightening the
/// tolerance until strict comparison is possible.
fn certified_below(
    poly: &IntPolynomial,
    metric: Metric,
    threshold: &BigRational,
    base: &SepOptions,
) -> Result<bool> {
    let mut tol = base.rel_tol_log2;
    loop {
        let opts = SepOptions { rel_tol_log2: tol, root_config: base.root_config.clone() };
        let Some((iv, _, _)) = certified_metric(poly, metric, &opts)? else {
            return Ok(false);
        };
        if iv.hi().cmp_rational(threshold) == std::cmp::Ordering::Less {
            return Ok(true);
        }
        if iv.lo().cmp_rational(threshold) != std::cmp::Ordering::Less {
            return Ok(false);
        }
        if tol >= 512 {
            return Err(Error::PrecisionExhausted {
                ceiling_bits: tol,
                context: format!("comparing {poly} against the uniqueness threshold"),
            });
        }
        tol *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn seq_opts() -> SearchOptions {
        SearchOptions {
            chunk_size: 4096,
            exec: ExecMode::Sequential,
            ..Default::default()
        }
    }

    #[test]
    fn tiny_box_sep_record_matches_bruteforce() {
        // full certified pass over every canonical separable tuple (d<=2, B=2)
        let search_box = SearchBox::new(2, 2).unwrap();
        let mut best: Option<(Dyadic, Vec<i64>)> = None;
        for poly in super::super::Enumerator::new(&search_box, true) {
            let r = roots::sep(&poly, &SepOptions::default()).unwrap();
            if let Some(iv) = r.value {
                let coeffs: Vec<i64> =
                    poly.coeffs().iter().map(|c| c.to_string().parse().unwrap()).collect();
                let key = iv.hi().clone();
                if best.as_ref().is_none_or(|(b, _)| key < *b) {
                    best = Some((key, coeffs));
                }
            }
        }
        let (oracle_upper, oracle_coeffs) = best.unwrap();

        let out = search_records(&search_box, Metric::Sep, &seq_opts()).unwrap();
        assert_eq!(out.records.len(), 1);
        let rec: Vec<i64> = out.records[0].coeffs.iter().map(|c| c.parse().unwrap()).collect();
        assert_eq!(rec, oracle_coeffs);
        let upper: f64 = out.records[0].value_upper.parse().unwrap();
        assert!((upper - oracle_upper.to_f64()).abs() <= 1e-9 * upper.abs().max(1e-30));
        assert_eq!(out.counters.scanned, search_box.total_tuples());
    }

    #[test]
    fn screening_soundness_small_box() {
        // no polynomial whose certified metric is strictly below the found
        // record was screened out: compare a full certified pass (d<=2, B<=5)
        // against the record's exact lower edge
        let search_box = SearchBox::new(2, 5).unwrap();
        for metric in [Metric::Sep, Metric::Abssep] {
            let out = search_records(&search_box, metric, &seq_opts()).unwrap();
            let record_lower = decimal_to_rational(&out.records[0].value_lower);
            let mut violations = 0;
            for poly in super::super::Enumerator::new(&search_box, metric == Metric::Sep) {
                if let Some((iv, _, _)) =
                    certified_metric(&poly, metric, &SepOptions::default()).unwrap()
                {
                    if iv.hi().cmp_rational(&record_lower) == std::cmp::Ordering::Less {
                        violations += 1;
                        eprintln!("{metric}: {poly} certified below the record");
                    }
                }
            }
            assert_eq!(violations, 0, "{metric}: certified value below the found record");
        }
    }

    fn decimal_to_rational(text: &str) -> BigRational {
        let (int, frac) = text.split_once('.').unwrap_or((text, ""));
        let digits: String = format!("{int}{frac}");
        BigRational::new(
            digits.parse::<BigInt>().unwrap(),
            BigInt::from(10u32).pow(frac.len() as u32),
        )
    }

    #[test]
    fn top_k_records_are_sorted_and_distinct() {
        let search_box = SearchBox::new(2, 4).unwrap();
        let opts = SearchOptions { top_k: 3, ..seq_opts() };
        let out = search_records(&search_box, Metric::Sep, &opts).unwrap();
        assert_eq!(out.records.len(), 3);
        let uppers: Vec<f64> =
            out.records.iter().map(|r| r.value_upper.parse().unwrap()).collect();
        assert!(uppers.windows(2).all(|w| w[0] <= w[1]), "records sorted by upper edge");
        let coeffs: std::collections::HashSet<_> =
            out.records.iter().map(|r| r.coeffs.clone()).collect();
        assert_eq!(coeffs.len(), 3, "records are distinct polynomials");
    }

    #[test]
    fn abssep_search_excludes_undefined() {
        // x^2 + c has only equal-modulus root pairs: never a record
        let search_box = SearchBox::new(2, 2).unwrap();
        let out = search_records(&search_box, Metric::Abssep, &seq_opts()).unwrap();
        assert!(!out.records.is_empty());
        assert!(out.counters.undefined_metric > 0);
        let rec: Vec<i64> = out.records[0].coeffs.iter().map(|c| c.parse().unwrap()).collect();
        // the winner must have two roots of genuinely distinct moduli
        let poly = IntPolynomial::from_i64s(&rec);
        let r = roots::abssep(&poly, &SepOptions::default()).unwrap();
        assert_eq!(r.status, SepStatus::Positive);
    }

    #[test]
    fn determinism_across_worker_counts() {
        let search_box = SearchBox::new(2, 5).unwrap();
        let base = SearchOptions { chunk_size: 1000, ..seq_opts() };
        let seq = search_records(&search_box, Metric::Sep, &base).unwrap();
        let par = SearchOptions { exec: ExecMode::Parallel, ..base };
        let par = search_records(&search_box, Metric::Sep, &par).unwrap();
        assert_eq!(
            serde_json::to_string(&seq.records).unwrap(),
            serde_json::to_string(&par.records).unwrap()
        );
        assert_eq!(seq.counters, par.counters);
    }

    #[test]
    fn checkpoint_resume_identical() {
        let dir = std::env::temp_dir().join(format!("sepkit-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ckpt-resume.jsonl");
        let _ = std::fs::remove_file(&path);
        let search_box = SearchBox::new(2, 5).unwrap();

        // uninterrupted reference
        let no_ckpt = search_records(&search_box, Metric::Sep, &seq_opts()).unwrap();

        // simulate a kill: process only a prefix of chunks, then resume
        let opts = SearchOptions {
            chunk_size: 50,
            checkpoint: Some(path.clone()),
            ..seq_opts()
        };
        let header = CheckpointHeader {
            kind: "sepkit-search-checkpoint".into(),
            version: 1,
            search_box: search_box.clone(),
            metric: Metric::Sep,
            chunk_size: 50,
            total_chunks: search_box.total_tuples().div_ceil(50),
        };
        {
            let mut f = std::fs::File::create(&path).unwrap();
            writeln!(f, "{}", serde_json::to_string(&header).unwrap()).unwrap();
            for id in [0u64, 1, 5] {
                let o = process_chunk(&search_box, Metric::Sep, id, &opts);
                writeln!(f, "{}", serde_json::to_string(&o).unwrap()).unwrap();
            }
        }
        let resumed = search_records(&search_box, Metric::Sep, &opts).unwrap();
        assert_eq!(
            serde_json::to_string(&no_ckpt.records).unwrap(),
            serde_json::to_string(&resumed.records).unwrap()
        );
        assert_eq!(no_ckpt.counters, resumed.counters);
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn checkpoint_roundtrips_uncertain_candidates() {
        // abssep boxes contain polynomials whose screen yields no admissible
        // pair (all pairs excluded or uncertain): their checkpoint entries
        // must stay valid JSON and resume cleanly
        let dir = std::env::temp_dir().join(format!("sepkit-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ckpt-uncertain.jsonl");
        let _ = std::fs::remove_file(&path);
        let search_box = SearchBox::new(2, 2).unwrap();
        let opts = SearchOptions { checkpoint: Some(path.clone()), ..seq_opts() };
        let first = search_records(&search_box, Metric::Abssep, &opts).unwrap();
        // a full re-read of the checkpoint must reproduce identical records
        let resumed = search_records(&search_box, Metric::Abssep, &opts).unwrap();
        assert_eq!(
            serde_json::to_string(&first.records).unwrap(),
            serde_json::to_string(&resumed.records).unwrap()
        );
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn checkpoint_mismatch_and_corruption() {
        let dir = std::env::temp_dir().join(format!("sepkit-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ckpt-bad.jsonl");
        std::fs::write(&path, "{\"kind\":\"something-else\"}\n").unwrap();
        let search_box = SearchBox::new(2, 2).unwrap();
        let opts = SearchOptions { checkpoint: Some(path.clone()), ..seq_opts() };
        let err = search_records(&search_box, Metric::Sep, &opts).unwrap_err();
        assert!(matches!(err, Error::CheckpointCorrupt { .. } | Error::CheckpointMismatch { .. }));

        std::fs::write(
            &path,
            "{\"kind\":\"sepkit-search-checkpoint\",\"version\":1,\"box\":{\"max_degree\":2,\"coeff_bound\":2},\"metric\":\"sep\",\"chunk_size\":4096,\"total_chunks\":1}\nnot json\n",
        )
        .unwrap();
        let err = search_records(&search_box, Metric::Sep, &opts).unwrap_err();
        match err {
            Error::CheckpointCorrupt { line, .. } => assert_eq!(line, 2),
            other => panic!("expected corruption error, got {other:?}"),
        }
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn uniqueness_thresholds() {
        let search_box = SearchBox::new(2, 2).unwrap();
        // metric values are strictly positive: nothing below zero
        assert_eq!(
            uniqueness_check(&search_box, Metric::Sep, &ratio(0, 1), &seq_opts()).unwrap(),
            0
        );
        // huge threshold counts every defined value
        let all =
            uniqueness_check(&search_box, Metric::Sep, &ratio(1_000_000, 1), &seq_opts()).unwrap();
        let defined = super::super::Enumerator::new(&search_box, true)
            .filter(|p| {
                certified_metric(p, Metric::Sep, &SepOptions::default()).unwrap().is_some()
            })
            .count() as u64;
        assert_eq!(all, defined);
    }
}
