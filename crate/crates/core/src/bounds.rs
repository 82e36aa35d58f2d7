//! Bounds on `f_n(s)`, the largest number of n-concepts of a cubic n-context
//! of side s, and exhaustive search for its exact value at tiny sizes.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bitset::ElementSet;
use crate::context::{numeric_labels, NContext};
use crate::enumeration::{count_concepts, for_each_concept};
use crate::error::{Error, Result};
use crate::generators::{contranominal, fixture, rook_context};
use crate::transforms::direct_sum_all;

/// `f_3(2)`, established by exhaustive search over all 256 relations.
pub const F_3_2: u64 = 9;
/// `f_4(2)`, established by exhaustive search over all 65536 relations.
pub const F_4_2: u64 = 17;

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("{what} does not fit in 128 bits"))
}

/// `(n^s, (2^s - 1)^(n-1) + n - 1)`.
pub fn naive_bounds(n: usize, s: usize) -> Result<(u128, u128)> {
    if n < 2 || s < 1 {
        return Err(Error::invalid("naive bounds need n >= 2 and s >= 1"));
    }
    let s32 = u32::try_from(s).map_err(|_| overflow("side"))?;
    let n32 = u32::try_from(n).map_err(|_| overflow("arity"))?;
    let lower = (n as u128).checked_pow(s32).ok_or_else(|| overflow("n^s"))?;
    let base = 1u128
        .checked_shl(s32)
        .filter(|_| s32 < 128)
        .ok_or_else(|| overflow("2^s"))?
        - 1;
    let upper = base
        .checked_pow(n32 - 1)
        .and_then(|p| p.checked_add(n as u128 - 1))
        .ok_or_else(|| overflow("(2^s-1)^(n-1)"))?;
    Ok((lower, upper))
}

/// Concepts of the 4-dimensional rook context of side 3.
pub const ROOK_4_3_COUNT: u128 = 112;

/// `k` copies of the rook context and a contranominal scale of side `r`,
/// where `s = 3k + r`.
pub fn lower_bound_context_4d(s: usize) -> Result<NContext> {
    if s < 3 {
        return Err(Error::invalid("the 4-dimensional construction needs s >= 3"));
    }
    let rook = fixture("rook-4x3")?;
    let mut parts = vec![rook; s / 3];
    if !s.is_multiple_of(3) {
        parts.push(contranominal(4, s % 3)?);
    }
    direct_sum_all(&parts)
}

/// `112^k * 4^r` for `s = 3k + r`.
pub fn lower_bound_4d_count(s: usize) -> Result<u128> {
    if s < 3 {
        return Err(Error::invalid("the 4-dimensional construction needs s >= 3"));
    }
    let k = u32::try_from(s / 3).map_err(|_| overflow("s"))?;
    ROOK_4_3_COUNT
        .checked_pow(k)
        .and_then(|a| a.checked_mul(4u128.pow((s % 3) as u32)))
        .ok_or_else(|| overflow("112^k * 4^r"))
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Visit one relation per symmetry class.
    pub symmetry_reduction: bool,
    /// Stop early and report a lower bound once this much time has passed.
    pub time_budget: Option<Duration>,
    /// Refuse to start when more than this many relations would be visited.
    pub max_candidates: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry_reduction: true,
            time_budget: None,
            max_candidates: 1 << 24,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub n: usize,
    pub s: usize,
    pub max_count: u64,
    /// Maximizers, one per symmetry class, in increasing mask order.
    pub witnesses: Vec<NContext>,
    /// False when the time budget ran out.
    pub exact: bool,
    /// Relations whose concepts were counted.
    pub evaluated: u64,
}

impl SearchResult {
    pub fn label(&self) -> &'static str {
        if self.exact {
            "exact"
        } else {
            "lower bound (partial search)"
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Cell permutations induced by permuting the elements of every dimension
/// independently and permuting the dimensions.
fn symmetry_group(n: usize, s: usize) -> Vec<Vec<u8>> {
    let cells = s.pow(n as u32);
    let elem = permutations(s);
    let dims = permutations(n);
    let mut tuples = Vec::with_capacity(cells);
    for idx in 0..cells {
        let mut t = vec![0; n];
        let mut r = idx;
        for d in (0..n).rev() {
            t[d] = r % s;
            r /= s;
        }
        tuples.push(t);
    }
    let mut group = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        for dp in &dims {
            let table: Vec<u8> = tuples
                .iter()
                .map(|t| {
                    let mut idx = 0;
                    for d in 0..n {
                        idx = idx * s + elem[choice[dp[d]]][t[dp[d]]];
                    }
                    idx as u8
                })
                .collect();
            group.push(table);
        }
        let mut d = 0;
        while d < n {
            choice[d] += 1;
            if choice[d] < elem.len() {
                break;
            }
            choice[d] = 0;
            d += 1;
        }
        if d == n {
            break;
        }
    }
    group
}

fn image(mask: u64, g: &[u8]) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << g[i];
        m &= m - 1;
    }
    out
}

fn is_canonical(mask: u64, group: &[Vec<u8>]) -> bool {
    group.iter().all(|g| image(mask, g) >= mask)
}

fn canonical(mask: u64, group: &[Vec<u8>]) -> u64 {
    group.iter().map(|g| image(mask, g)).min().unwrap_or(mask)
}

fn mask_context(n: usize, s: usize, mask: u64) -> NContext {
    let cells = s.pow(n as u32);
    let labels = vec![numeric_labels(s); n];
    let set = ElementSet::from_indices(cells, (0..cells).filter(|i| mask >> i & 1 == 1));
    NContext::from_cells(labels, set)
}

fn count_sequential(ctx: &NContext) -> u64 {
    let mut k = 0;
    for_each_concept(ctx, |_| k += 1);
    k
}

/// Maximum number of concepts over all cubic n-contexts of side s.
pub fn exhaustive_fn(n: usize, s: usize, options: &SearchOptions) -> Result<SearchResult> {
    if n < 2 || s < 1 {
        return Err(Error::invalid("exhaustive search needs n >= 2 and s >= 1"));
    }
    let cells = s
        .checked_pow(n as u32)
        .filter(|&c| c <= 63)
        .ok_or_else(|| Error::ResourceLimit {
            what: format!("search over relations on {s}^{n} cells"),
            cap: 63,
        })?;
    let total: u128 = 1u128 << cells;
    // needed even without reduction, to report witnesses up to symmetry
    let group = symmetry_group(n, s);
    let estimate = if options.symmetry_reduction {
        total / group.len() as u128
    } else {
        total
    };
    // the canonicity test itself still visits every relation
    if estimate > options.max_candidates || total > options.max_candidates.saturating_mul(64) {
        return Err(Error::ResourceLimit {
            what: format!("search over 2^{cells} relations (about {estimate} to evaluate)"),
            cap: options.max_candidates,
        });
    }

    let start = Instant::now();
    let stop = AtomicBool::new(false);
    let best = Mutex::new((0u64, BTreeSet::<u64>::new(), 0u64));
    const CHUNK: u64 = 1 << 10;
    let chunks = (total as u64).div_ceil(CHUNK);
    (0..chunks).into_par_iter().for_each(|c| {
        if stop.load(Ordering::Relaxed) {
            return;
        }
        if let Some(b) = options.time_budget {
            if start.elapsed() > b {
                stop.store(true, Ordering::Relaxed);
                return;
            }
        }
        let mut local_max = 0u64;
        let mut local: Vec<u64> = Vec::new();
        let mut evaluated = 0u64;
        let hi = ((c + 1) * CHUNK).min(total as u64);
        for mask in c * CHUNK..hi {
            if options.symmetry_reduction && !is_canonical(mask, &group) {
                continue;
            }
            evaluated += 1;
            let k = count_sequential(&mask_context(n, s, mask));
            if k > local_max {
                local_max = k;
                local.clear();
            }
            if k == local_max {
                local.push(mask);
            }
        }
        let mut g = best.lock().expect("no panics while holding the lock");
        g.2 += evaluated;
        if local_max > g.0 {
            g.0 = local_max;
            g.1.clear();
        }
        if local_max == g.0 {
            g.1.extend(local.iter().map(|&m| canonical(m, &group)));
        }
    });
    let (max_count, masks, evaluated) = best.into_inner().expect("lock not poisoned");
    Ok(SearchResult {
        n,
        s,
        max_count,
        witnesses: masks.into_iter().map(|m| mask_context(n, s, m)).collect(),
        exact: !stop.load(Ordering::Relaxed),
        evaluated,
    })
}

/// Bounds on `f_n(s)` gathered from the closed forms, the known
/// constructions and, when cheap, exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub s: usize,
    pub naive_lower: u128,
    pub naive_upper: u128,
    pub best_lower: u128,
    pub best_lower_source: String,
    pub exact: Option<u128>,
    pub witness_file: Option<String>,
    pub annotations: Vec<String>,
    /// A context reaching `best_lower`, when small enough to build.
    pub witness: Option<NContext>,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// Run exhaustive search when it needs at most this many relations.
    pub exhaustive_limit: u128,
    /// Enumerate the rook context when it has at most this many cells.
    pub rook_cell_limit: usize,
    /// Attach a witness context when it has at most this many cells.
    pub witness_cell_limit: usize,
    pub search: SearchOptions,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            exhaustive_limit: 1 << 16,
            rook_cell_limit: 4096,
            witness_cell_limit: 1 << 16,
            search: SearchOptions::default(),
        }
    }
}

pub fn bounds_report(n: usize, s: usize, options: &ReportOptions) -> Result<BoundsReport> {
    let (naive_lower, naive_upper) = naive_bounds(n, s)?;
    let cells = s.checked_pow(n as u32).unwrap_or(usize::MAX);
    let buildable = cells <= options.witness_cell_limit;
    let mut best = (
        naive_lower,
        "contranominal scale".to_string(),
        if buildable { Some(contranominal(n, s)?) } else { None },
    );
    let mut offer = |v: u128, src: &str, w: Option<NContext>| {
        if v > best.0 {
            best = (v, src.to_string(), w);
        }
    };
    if n == 4 && s >= 3 {
        let w = if buildable { Some(lower_bound_context_4d(s)?) } else { None };
        offer(lower_bound_4d_count(s)?, "rook construction", w);
    }
    if cells <= options.rook_cell_limit && s >= 2 {
        let rook = rook_context(n, s, 0)?;
        offer(count_concepts(&rook) as u128, "rook context", Some(rook));
    }
    let mut exact = None;
    if cells < 64 && (1u128 << cells) <= options.exhaustive_limit {
        let r = exhaustive_fn(n, s, &options.search)?;
        let w = r.witnesses.first().cloned();
        if r.exact {
            exact = Some(r.max_count as u128);
            offer(r.max_count as u128, "exhaustive search", w);
        } else {
            offer(r.max_count as u128, "partial exhaustive search", w);
        }
    }
    let mut annotations = Vec::new();
    match n {
        2 => annotations.push("lower and upper bounds coincide: f_2(s) = 2^s".to_string()),
        3 => annotations.push(
            "asymptotically f_3(s) lies between 3.359^s (construction) and 3.384^s (upper bound); not computed here"
                .to_string(),
        ),
        4 => annotations.push(
            "asymptotically f_4(s) >= c * 4.82^s with c = (4/4.82)^2; not computed here".to_string(),
        ),
        _ => {}
    }
    let (best_lower, best_lower_source, witness) = best;
    Ok(BoundsReport {
        n,
        s,
        naive_lower,
        naive_upper,
        best_lower,
        best_lower_source,
        exact,
        witness_file: None,
        annotations,
        witness,
    })
}

impl BoundsReport {
    /// `naive_lower <= best_lower <= exact <= naive_upper`.
    pub fn is_consistent(&self) -> bool {
        self.naive_lower <= self.best_lower
            && self.exact.is_none_or(|e| self.best_lower <= e && e <= self.naive_upper)
            && self.best_lower <= self.naive_upper
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("f_{}({})\n", self.n, self.s);
        out.push_str(&format!("  naive lower  {}\n", self.naive_lower));
        out.push_str(&format!(
            "  best lower   {} ({})\n",
            self.best_lower, self.best_lower_source
        ));
        match self.exact {
            Some(e) => out.push_str(&format!("  exact        {e}\n")),
            None => out.push_str("  exact        unknown\n"),
        }
        out.push_str(&format!("  naive upper  {}\n", self.naive_upper));
        if let Some(w) = &self.witness_file {
            out.push_str(&format!("  witness      {w}\n"));
        }
        for a in &self.annotations {
            out.push_str(&format!("  note: {a}\n"));
        }
        out
    }

    pub const CSV_HEADER: [&'static str; 8] = [
        "n",
        "s",
        "naive_lower",
        "best_lower",
        "best_lower_source",
        "exact",
        "naive_upper",
        "witness_file",
    ];

    fn csv_row(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.s.to_string(),
            self.naive_lower.to_string(),
            self.best_lower.to_string(),
            self.best_lower_source.clone(),
            self.exact.map(|e| e.to_string()).unwrap_or_default(),
            self.naive_upper.to_string(),
            self.witness_file.clone().unwrap_or_default(),
        ]
    }
}

/// Reports as CSV with a header row.
pub fn reports_to_csv(reports: &[BoundsReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let e = |e: csv::Error| Error::invalid(e.to_string());
    w.write_record(BoundsReport::CSV_HEADER).map_err(e)?;
    for r in reports {
        w.write_record(r.csv_row()).map_err(e)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_values() {
        assert_eq!(naive_bounds(2, 5).unwrap(), (32, 32));
        assert_eq!(naive_bounds(3, 2).unwrap(), (9, 11));
        assert_eq!(naive_bounds(4, 3).unwrap(), (64, 346));
        assert!(matches!(naive_bounds(3, 200), Err(Error::Overflow(_))));
        assert!(naive_bounds(1, 2).is_err());
    }

    #[test]
    fn group_sizes() {
        assert_eq!(symmetry_group(2, 2).len(), 2 * 2 * 2);
        assert_eq!(symmetry_group(3, 2).len(), 8 * 6);
        for g in symmetry_group(2, 3) {
            let mut seen = g.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..9).collect::<Vec<u8>>());
        }
    }

    #[test]
    fn small_exhaustive_values() {
        let r = exhaustive_fn(2, 2, &SearchOptions::default()).unwrap();
        assert_eq!(r.max_count, 4);
        assert!(r.exact);
        assert_eq!(r.witnesses.len(), 1);
        let r = exhaustive_fn(2, 3, &SearchOptions::default()).unwrap();
        assert_eq!(r.max_count, 8);
    }

    #[test]
    fn budget_is_guarded() {
        let opts = SearchOptions {
            max_candidates: 2,
            ..SearchOptions::default()
        };
        assert!(matches!(exhaustive_fn(3, 2, &opts), Err(Error::ResourceLimit { .. })));
        assert!(exhaustive_fn(3, 4, &SearchOptions::default()).is_err());
    }

    #[test]
    fn report_for_4_3_uses_rook() {
        let r = bounds_report(4, 3, &ReportOptions::default()).unwrap();
        assert_eq!(r.best_lower, 112);
        assert_eq!(r.naive_lower, 64);
        assert!(r.is_consistent());
        let csv = reports_to_csv(&[r]).unwrap();
        assert!(csv.starts_with("n,s,naive_lower,best_lower,best_lower_source,exact,naive_upper,witness_file\n"));
    }
}
