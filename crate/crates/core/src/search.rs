//! Brute-force search for effective stabilizers of large order.
//!
//! Candidates are enumerated directly in reduced row-echelon form: a pivot
//! pattern plus grid values for the free entries. Distinct matrices are
//! distinct subspaces, so the stream never repeats a candidate.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{KleinPair, LieAlgebra};
use crate::checks::{check_central_series_meet, check_nilpotent_order_bound};
use crate::error::{Error, Result};
use crate::filtration::{effectivity_radical, order, weisfeiler_filtration, Filtration};
use crate::report::Status;
use crate::scalar::{format_scalar, int, zero_vector, Scalar};
use crate::series::{derived_series_of, lower_central_series, lower_central_series_of};
use crate::subspace::Subspace;

pub const DEFAULT_CAP: usize = 1_000_000;
const CHUNK: usize = 4096;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub algebra: LieAlgebra,
    pub stab_dims: BTreeSet<usize>,
    pub coeff_grid: Vec<Scalar>,
    pub candidate_cap: usize,
    pub workers: usize,
}

impl SearchConfig {
    /// Dimensions {1, 2}, grid -2..2, cap 10⁶, one worker.
    pub fn new(algebra: LieAlgebra) -> Self {
        SearchConfig {
            algebra,
            stab_dims: [1, 2].into_iter().collect(),
            coeff_grid: (-2..=2).map(int).collect(),
            candidate_cap: DEFAULT_CAP,
            workers: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.candidate_cap == 0 {
            return Err(Error::Malformed("candidate cap must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::Malformed("worker count must be positive".into()));
        }
        if !self.coeff_grid.iter().any(Zero::is_zero) || !self.coeff_grid.iter().any(One::is_one) {
            return Err(Error::Malformed("coefficient grid must contain 0 and 1".into()));
        }
        Ok(())
    }

    fn sorted_grid(&self) -> Vec<Scalar> {
        let mut g = self.coeff_grid.clone();
        g.sort();
        g.dedup();
        g
    }
}

/// Deterministic candidate stream, cut off at the configured cap.
pub struct CandidateStream {
    inner: Box<dyn Iterator<Item = Subspace> + Send>,
    emitted: usize,
    cap: usize,
    truncated: Option<bool>,
}

impl CandidateStream {
    /// `Some(true)` once the cap cut the stream short; `None` until the
    /// stream has been exhausted.
    pub fn truncated(&self) -> Option<bool> {
        self.truncated
    }
}

impl Iterator for CandidateStream {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.emitted == self.cap {
            if self.truncated.is_none() {
                self.truncated = Some(self.inner.next().is_some());
            }
            return None;
        }
        match self.inner.next() {
            Some(s) => {
                self.emitted += 1;
                Some(s)
            }
            None => {
                self.truncated = Some(false);
                None
            }
        }
    }
}

/// Subspaces of each requested dimension, by pivot pattern in
/// lexicographic order and then by free entries in grid order.
pub fn enumerate_candidates(cfg: &SearchConfig) -> Result<CandidateStream> {
    cfg.validate()?;
    let n = cfg.algebra.dim();
    let grid = cfg.sorted_grid();
    let dims: Vec<usize> = cfg.stab_dims.iter().copied().filter(|&d| d <= n).collect();
    let inner = dims.into_iter().flat_map(move |d| {
        let grid = grid.clone();
        (0..n).combinations(d).flat_map(move |pivots| {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (row, c)))
                .collect();
            let grid = grid.clone();
            let pivots2 = pivots.clone();
            (0..free.len())
                .map(|_| 0..grid.len())
                .multi_cartesian_product()
                .map(move |choice| {
                    let mut rows = vec![zero_vector(n); pivots2.len()];
                    for (row, &p) in pivots2.iter().enumerate() {
                        rows[row][p] = Scalar::one();
                    }
                    for (&(row, c), &g) in free.iter().zip(&choice) {
                        rows[row][c] = grid[g].clone();
                    }
                    Subspace::from_rref_unchecked(rows, pivots2.clone(), n)
                })
        })
    });
    Ok(CandidateStream { inner: Box::new(inner), emitted: 0, cap: cfg.candidate_cap, truncated: None })
}

/// Everything computed for one candidate stabilizer.
#[derive(Clone, Debug)]
pub enum CandidateOutcome {
    NotSubalgebra,
    Subalgebra { filtration: Filtration, radical: Subspace },
}

pub fn evaluate_candidate(alg: &LieAlgebra, candidate: &Subspace) -> CandidateOutcome {
    if !alg.is_subalgebra(candidate) {
        return CandidateOutcome::NotSubalgebra;
    }
    let pair = KleinPair::new(alg.clone(), candidate.clone()).expect("closed");
    CandidateOutcome::Subalgebra { filtration: weisfeiler_filtration(&pair), radical: effectivity_radical(&pair) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    pub stabilizer: Subspace,
    pub order: usize,
    /// Lower central and derived lengths of the stabilizer as an algebra.
    pub stabilizer_nil_length: usize,
    pub stabilizer_sol_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub algebra: LieAlgebra,
    pub hits: Vec<SearchHit>,
    pub generated: usize,
    pub subalgebras: usize,
    pub effective: usize,
    pub truncated: bool,
    /// Hits dropped because an isolated recomputation disagreed.
    pub rejected: Vec<String>,
}

impl SearchResult {
    pub fn max_order(&self) -> Option<usize> {
        self.hits.first().map(|h| h.order)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &SearchHit> {
        let best = self.max_order();
        self.hits.iter().filter(move |h| Some(h.order) == best)
    }
}

/// Recomputes a hit from scratch and checks the nilpotent order bound and
/// the lower-central intersection on it.
fn reverify(alg: &LieAlgebra, hit: &SearchHit, nilpotent: bool) -> std::result::Result<(), String> {
    let labels = alg.labels();
    let name = hit.stabilizer.display(labels).to_string();
    let pair = KleinPair::new(alg.clone(), hit.stabilizer.clone()).map_err(|e| format!("{name}: {e}"))?;
    let r = order(&pair).map_err(|e| format!("{name}: {e}"))?;
    if r != hit.order {
        return Err(format!("{name}: order {r} on recomputation, {} in sweep", hit.order));
    }
    if nilpotent {
        let rep = check_nilpotent_order_bound(&pair).map_err(|e| format!("{name}: {e}"))?;
        if rep.has_failures() {
            return Err(format!("{name}: nilpotent order bound violated"));
        }
    }
    if r >= 1 {
        let rep = check_central_series_meet(&pair).map_err(|e| format!("{name}: {e}"))?;
        if rep.records.iter().any(|r| r.status != Status::Pass) {
            return Err(format!("{name}: stabilizer misses the lower central term"));
        }
    }
    Ok(())
}

pub fn search_max_order(cfg: &SearchConfig) -> Result<SearchResult> {
    let alg = &cfg.algebra;
    let mut stream = enumerate_candidates(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Malformed(format!("thread pool: {e}")))?;
    let nilpotent = lower_central_series(alg).reaches_zero();

    let mut generated = 0;
    let mut subalgebras = 0;
    let mut hits = Vec::new();
    loop {
        let chunk: Vec<Subspace> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        generated += chunk.len();
        let outcomes: Vec<Option<Option<SearchHit>>> = pool.install(|| {
            chunk
                .into_par_iter()
                .map(|cand| match evaluate_candidate(alg, &cand) {
                    CandidateOutcome::NotSubalgebra => None,
                    CandidateOutcome::Subalgebra { filtration, radical } => Some(radical.is_zero().then(|| {
                        let lcs = lower_central_series_of(alg, &cand);
                        let der = derived_series_of(alg, &cand);
                        SearchHit {
                            order: filtration.zero_index().expect("effective"),
                            stabilizer_nil_length: lcs.length(),
                            stabilizer_sol_length: der.reaches_zero().then(|| der.length()),
                            stabilizer: cand,
                        }
                    })),
                })
                .collect()
        });
        for outcome in outcomes.into_iter().flatten() {
            subalgebras += 1;
            hits.extend(outcome);
        }
    }
    let effective = hits.len();

    let checks: Vec<std::result::Result<(), String>> =
        pool.install(|| hits.par_iter().map(|h| reverify(alg, h, nilpotent)).collect());
    let mut rejected = Vec::new();
    let mut kept = Vec::with_capacity(hits.len());
    for (hit, check) in hits.into_iter().zip(checks) {
        match check {
            Ok(()) => kept.push(hit),
            Err(msg) => rejected.push(msg),
        }
    }
    kept.sort_by(|a, b| b.order.cmp(&a.order).then_with(|| a.stabilizer.basis().cmp(b.stabilizer.basis())));

    Ok(SearchResult {
        algebra: alg.clone(),
        hits: kept,
        generated,
        subalgebras,
        effective,
        truncated: stream.truncated().unwrap_or(false),
        rejected,
    })
}

#[derive(Serialize)]
struct HitJson {
    stabilizer: String,
    basis: Vec<Vec<String>>,
    dim: usize,
    order: usize,
    stabilizer_nil_length: usize,
    stabilizer_sol_length: Option<usize>,
}

#[derive(Serialize)]
struct ResultJson<'a> {
    algebra: &'a str,
    stab_dims: Vec<usize>,
    grid: Vec<String>,
    cap: usize,
    generated: usize,
    subalgebras: usize,
    effective: usize,
    truncated: bool,
    max_order: Option<usize>,
    witnesses: Vec<String>,
    rejected: &'a [String],
    hits: Vec<HitJson>,
}

impl SearchResult {
    fn hit_json(&self, h: &SearchHit) -> HitJson {
        HitJson {
            stabilizer: h.stabilizer.display(self.algebra.labels()).to_string(),
            basis: h.stabilizer.basis().iter().map(|r| r.iter().map(format_scalar).collect()).collect(),
            dim: h.stabilizer.dim(),
            order: h.order,
            stabilizer_nil_length: h.stabilizer_nil_length,
            stabilizer_sol_length: h.stabilizer_sol_length,
        }
    }

    /// Worker count is deliberately absent so that reports compare equal
    /// across parallelism settings.
    pub fn to_json(&self, cfg: &SearchConfig) -> String {
        let doc = ResultJson {
            algebra: self.algebra.name(),
            stab_dims: cfg.stab_dims.iter().copied().collect(),
            grid: cfg.sorted_grid().iter().map(format_scalar).collect(),
            cap: cfg.candidate_cap,
            generated: self.generated,
            subalgebras: self.subalgebras,
            effective: self.effective,
            truncated: self.truncated,
            max_order: self.max_order(),
            witnesses: self.witnesses().map(|h| h.stabilizer.display(self.algebra.labels()).to_string()).collect(),
            rejected: &self.rejected,
            hits: self.hits.iter().map(|h| self.hit_json(h)).collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let labels = self.algebra.labels();
        let mut out = format!(
            "algebra {}: {} candidates{}, {} subalgebras, {} effective, max order {}\n",
            self.algebra.name(),
            self.generated,
            if self.truncated { " (truncated)" } else { "" },
            self.subalgebras,
            self.effective,
            self.max_order().map_or("-".to_string(), |r| r.to_string()),
        );
        for h in &self.hits {
            out.push_str(&format!(
                "order {}  dim {}  {}  (nil {}, sol {})\n",
                h.order,
                h.stabilizer.dim(),
                h.stabilizer.display(labels),
                h.stabilizer_nil_length,
                h.stabilizer_sol_length.map_or("-".to_string(), |s| s.to_string()),
            ));
        }
        for r in &self.rejected {
            out.push_str(&format!("rejected: {r}\n"));
        }
        out
    }
}
