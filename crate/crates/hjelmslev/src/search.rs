//! Computer search for large arcs: probability-guided depth-first
//! extension, backtracking over orbits of a prescribed collineation group,
//! small exhaustive searches with certified maxima, and arc
//! extension/reduction.
//!
//! All searches work with projective arcs (candidate points are taken at
//! multiplicity 0) on top of an arbitrary verified starting multiset, and
//! every result is re-verified before being reported.

use crate::arcs::{self, ArcReport, PointMultiset};
use crate::classical::splitmix;
use crate::plane::{Collineation, Plane, PlaneError};
use std::collections::HashSet;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("starting multiset is not an n-arc for n = {0}")]
    BadStart(u64),
    #[error("group order enumeration is only feasible for q = 2, got q = {0}")]
    UnsupportedGroupOrder(u16),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Arc(#[from] crate::arcs::ArcError),
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub target_k: u64,
    pub n: u64,
    pub seed: u64,
    pub time_budget: Option<Duration>,
    pub node_budget: u64,
    pub invariant_screen: bool,
}

impl SearchConfig {
    pub fn new(n: u64, target_k: u64) -> SearchConfig {
        SearchConfig {
            target_k,
            n,
            seed: 0,
            time_budget: None,
            node_budget: 5_000_000,
            invariant_screen: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    pub fn with_time(mut self, secs: u64) -> Self {
        self.time_budget = Some(Duration::from_secs(secs));
        self
    }

    pub fn with_screen(mut self, on: bool) -> Self {
        self.invariant_screen = on;
        self
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best: PointMultiset,
    pub report: ArcReport,
    pub reached_target: bool,
    pub budget_exhausted: bool,
    pub nodes: u64,
}

/// P[X ≤ c] for X hypergeometric with population N, K marked, r draws.
/// Stable multiplicative recurrences; relative accuracy is far below 1e-12
/// in the plain regime (r ≤ N − K) and within a few 1e-12 otherwise.
pub fn hypergeometric_tail(n_total: u64, k_marked: u64, draws: u64, cap: i64) -> f64 {
    let (n, k, r) = (n_total as i64, k_marked as i64, draws as i64);
    if cap < 0 {
        return 0.0;
    }
    let j_lo = 0.max(r + k - n);
    let j_hi = r.min(k);
    if cap >= j_hi {
        return 1.0;
    }
    if cap < j_lo {
        return 0.0;
    }
    let mut t; // P(X = j_lo)
    if j_lo == 0 {
        t = 1.0f64;
        for i in 0..r {
            t *= (n - k - i) as f64 / (n - i) as f64;
        }
    } else {
        // ln C(k, j_lo) + ln C(n-k, r-j_lo) - ln C(n, r)
        let lf = |m: i64| -> f64 {
            let mut s = 0.0;
            for v in 2..=m {
                s += (v as f64).ln();
            }
            s
        };
        let lnc = |a: i64, b: i64| lf(a) - lf(b) - lf(a - b);
        t = (lnc(k, j_lo) + lnc(n - k, r - j_lo) - lnc(n, r)).exp();
    }
    let mut sum = t;
    let mut j = j_lo;
    while j < cap {
        let num = (k - j) as f64 * (r - j) as f64;
        let den = (j + 1) as f64 * (n - k - r + j + 1) as f64;
        t *= num / den;
        sum += t;
        j += 1;
    }
    sum.min(1.0)
}

/// Per-node lookup table for the tails with fixed (N, r): tail(K, c).
struct TailTable {
    n_free: u64,
    draws: u64,
    rows: Vec<Vec<f64>>, // rows[K][c]
}

impl TailTable {
    fn new(n_free: u64, draws: u64, max_k: usize, max_c: usize) -> TailTable {
        let (n, r) = (n_free as i64, draws as i64);
        let mut rows = Vec::with_capacity(max_k + 1);
        // P(X = 0) across K via C(N−K, r)/C(N, r) ratios, then the usual
        // upward term recurrence per row; rows where X = 0 is infeasible
        // fall back to the generic routine.
        let mut p0 = 1.0f64;
        for k in 0..=max_k as i64 {
            if k > 0 {
                let den = n - k + 1;
                p0 = if den <= 0 || den - r <= 0 { 0.0 } else { p0 * (den - r) as f64 / den as f64 };
            }
            if p0 == 0.0 && r <= n - k && r > 0 {
                // underflow-free but infeasible-looking; recompute directly
                rows.push(
                    (0..=max_c as i64)
                        .map(|c| hypergeometric_tail(n_free, k as u64, draws, c))
                        .collect(),
                );
                continue;
            }
            if r > n - k {
                rows.push(
                    (0..=max_c as i64)
                        .map(|c| hypergeometric_tail(n_free, k as u64, draws, c))
                        .collect(),
                );
                continue;
            }
            let mut row = Vec::with_capacity(max_c + 1);
            let mut t = if r == 0 { 1.0 } else { p0 };
            let mut sum = t;
            row.push(sum.min(1.0));
            for j in 0..max_c as i64 {
                if j >= r.min(k) {
                    row.push(sum.min(1.0));
                    continue;
                }
                let num = (k - j) as f64 * (r - j) as f64;
                let den = (j + 1) as f64 * (n - k - r + j + 1) as f64;
                t *= num / den;
                sum += t;
                row.push(sum.min(1.0));
            }
            rows.push(row);
        }
        TailTable { n_free, draws, rows }
    }

    #[inline]
    fn tail(&self, k: u64, c: i64) -> f64 {
        if c < 0 {
            return 0.0;
        }
        let _ = (self.n_free, self.draws);
        let row = &self.rows[k as usize];
        row[(c as usize).min(row.len() - 1)]
    }
}

struct ArcState<'a> {
    plane: &'a Plane,
    n: u64,
    mult: Vec<u32>,
    line_mult: Vec<u32>,
    k: u64,
}

impl<'a> ArcState<'a> {
    fn new(plane: &'a Plane, start: &PointMultiset, n: u64) -> Result<ArcState<'a>, SearchError> {
        let mut line_mult = vec![0u32; plane.lines.len()];
        for (l, lp) in plane.line_points.iter().enumerate() {
            line_mult[l] = lp.iter().map(|&p| start.mult[p as usize]).sum();
            if line_mult[l] as u64 > n {
                return Err(SearchError::BadStart(n));
            }
        }
        Ok(ArcState {
            plane,
            n,
            mult: start.mult.clone(),
            line_mult,
            k: start.cardinality(),
        })
    }

    #[inline]
    fn addable(&self, p: u32) -> bool {
        self.mult[p as usize] == 0
            && self.plane.point_lines[p as usize]
                .iter()
                .all(|&l| (self.line_mult[l as usize] as u64) < self.n)
    }

    fn add(&mut self, p: u32) {
        self.mult[p as usize] += 1;
        self.k += 1;
        for &l in &self.plane.point_lines[p as usize] {
            self.line_mult[l as usize] += 1;
        }
    }

    fn remove(&mut self, p: u32) {
        self.mult[p as usize] -= 1;
        self.k -= 1;
        for &l in &self.plane.point_lines[p as usize] {
            self.line_mult[l as usize] -= 1;
        }
    }

    fn candidates(&self) -> Vec<u32> {
        (0..self.plane.n_points() as u32).filter(|&p| self.addable(p)).collect()
    }

    fn to_multiset(&self) -> PointMultiset {
        PointMultiset { mult: self.mult.clone() }
    }

    /// Isomorphism-screening invariant: spectrum, sorted class census and
    /// sorted line-class multiplicities. Collisions may discard
    /// non-isomorphic nodes; that is accepted.
    fn invariant_hash(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut mix = |v: u64| {
            h ^= v;
            h = h.wrapping_mul(0x100000001b3);
        };
        let mut spectrum = vec![0u32; self.n as usize + 1];
        for &m in &self.line_mult {
            spectrum[m as usize] += 1;
        }
        for &s in &spectrum {
            mix(s as u64);
        }
        let mut class_mult = vec![0u64; self.plane.class_points.len()];
        for (c, pts) in self.plane.class_points.iter().enumerate() {
            class_mult[c] = pts.iter().map(|&p| self.mult[p as usize] as u64).sum();
        }
        let mut census = class_mult.clone();
        census.sort_unstable();
        for &f in &census {
            mix(f);
        }
        let mut lc = vec![0u64; self.plane.class_points.len()];
        for (l, &m) in self.line_mult.iter().enumerate() {
            lc[self.plane.line_class[l] as usize] += m as u64;
        }
        lc.sort_unstable();
        for &f in &lc {
            mix(f);
        }
        h
    }
}

/// The relative frequency that a uniformly random completion of
/// K' ∪ {x} to `target_k` points does not violate the n-arc condition,
/// taken as a product over the lines through x of hypergeometric tails.
/// Returns 0 for a non-addable x.
pub fn heuristic_score(
    plane: &Plane,
    current: &PointMultiset,
    x: u32,
    cfg: &SearchConfig,
) -> f64 {
    let state = match ArcState::new(plane, current, cfg.n) {
        Ok(s) => s,
        Err(_) => return 0.0,
    };
    if !state.addable(x) {
        return 0.0;
    }
    let free: Vec<u32> = state.candidates();
    let r = cfg.target_k.saturating_sub(state.k + 1);
    if r == 0 {
        return 1.0;
    }
    let n_free = free.len().saturating_sub(1) as u64;
    let mut score = 1.0;
    for &l in &plane.point_lines[x as usize] {
        let k_line = plane.line_points[l as usize]
            .iter()
            .filter(|&&p| p != x && state.addable(p))
            .count() as u64;
        let c = cfg.n as i64 - state.line_mult[l as usize] as i64 - 1;
        score *= hypergeometric_tail(n_free, k_line, r, c);
    }
    score
}

struct Budget {
    nodes_left: u64,
    deadline: Option<Instant>,
    exhausted: bool,
}

impl Budget {
    fn new(cfg: &SearchConfig) -> Budget {
        Budget {
            nodes_left: cfg.node_budget,
            deadline: cfg.time_budget.map(|d| Instant::now() + d),
            exhausted: false,
        }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if self.nodes_left == 0 {
            self.exhausted = true;
            return false;
        }
        self.nodes_left -= 1;
        if self.nodes_left % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }
}

/// Depth-first search for a large n-arc on top of `start`, ordering
/// children by descending heuristic score. Deterministic for a fixed seed.
pub fn heuristic_search(
    plane: &Plane,
    cfg: &SearchConfig,
    start: &PointMultiset,
) -> Result<SearchOutcome, SearchError> {
    let mut state = ArcState::new(plane, start, cfg.n)?;
    let mut best = state.to_multiset();
    let mut best_k = state.k;
    let mut budget = Budget::new(cfg);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut nodes = 0u64;

    fn dfs(
        state: &mut ArcState,
        cfg: &SearchConfig,
        budget: &mut Budget,
        seen: &mut HashSet<u64>,
        best: &mut PointMultiset,
        best_k: &mut u64,
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        if !budget.tick() {
            return false;
        }
        if state.k > *best_k {
            *best_k = state.k;
            *best = state.to_multiset();
        }
        if state.k >= cfg.target_k {
            return true;
        }
        let cands = state.candidates();
        if state.k + cands.len() as u64 <= *best_k && state.k + (cands.len() as u64) < cfg.target_k
        {
            // even taking every candidate cannot beat the best or reach the target
            if state.k + cands.len() as u64 <= *best_k {
                return false;
            }
        }
        if cands.is_empty() {
            return false;
        }
        // score children with one tail table per node; free-point counts
        // per line are precomputed so each candidate-line pair is O(1)
        let free_n = cands.len().saturating_sub(1) as u64;
        let r = cfg.target_k.saturating_sub(state.k + 1);
        let max_line = state.plane.line_points[0].len();
        let table = TailTable::new(free_n, r, max_line, cfg.n as usize);
        let mut free_on_line = vec![0u16; state.plane.lines.len()];
        for &x in &cands {
            for &l in &state.plane.point_lines[x as usize] {
                free_on_line[l as usize] += 1;
            }
        }
        let mut scored: Vec<(f64, u64, u32)> = cands
            .iter()
            .map(|&x| {
                let mut s = 1.0f64;
                if r > 0 {
                    for &l in &state.plane.point_lines[x as usize] {
                        let k_line = (free_on_line[l as usize] - 1) as u64;
                        let c = cfg.n as i64 - state.line_mult[l as usize] as i64 - 1;
                        s *= table.tail(k_line, c);
                    }
                }
                let tie = if cfg.seed == 0 {
                    x as u64
                } else {
                    splitmix(cfg.seed ^ (x as u64) << 20)
                };
                (s, tie, x)
            })
            .collect();
        scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        for (_, _, x) in scored {
            if !state.addable(x) {
                continue;
            }
            state.add(x);
            let mut skip = false;
            if cfg.invariant_screen {
                let h = state.invariant_hash() ^ (state.k << 48);
                if !seen.insert(h) {
                    skip = true;
                }
            }
            if !skip && dfs(state, cfg, budget, seen, best, best_k, nodes) {
                return true;
            }
            state.remove(x);
            if budget.exhausted {
                return false;
            }
        }
        false
    }

    let reached = dfs(&mut state, cfg, &mut budget, &mut seen, &mut best, &mut best_k, &mut nodes);
    let report = arcs::verify(plane, &best)?;
    debug_assert!(report.n_max <= cfg.n);
    Ok(SearchOutcome {
        best,
        report,
        reached_target: reached,
        budget_exhausted: budget.exhausted,
        nodes,
    })
}

/// Extend a verified arc to a (hopefully larger) new_n-arc by adding points.
pub fn extend_arc(
    plane: &Plane,
    ms: &PointMultiset,
    new_n: u64,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let mut cfg = cfg.clone();
    cfg.n = new_n;
    if cfg.target_k == 0 {
        cfg.target_k = ms.cardinality() + plane.n_points() as u64;
    }
    heuristic_search(plane, &cfg, ms)
}

/// Reduce an arc to a new_n-arc (new_n below the current maximum line
/// multiplicity) by removing as few points as possible: greedy removal of
/// the point covering the most excess, followed by re-add passes.
pub fn reduce_arc(
    plane: &Plane,
    ms: &PointMultiset,
    new_n: u64,
    _cfg: &SearchConfig,
) -> Result<PointMultiset, SearchError> {
    let mut mult = ms.mult.clone();
    let mut line_mult: Vec<u64> = plane
        .line_points
        .iter()
        .map(|lp| lp.iter().map(|&p| mult[p as usize] as u64).sum())
        .collect();
    let mut removed: Vec<u32> = Vec::new();
    loop {
        let mut worst: Option<(u64, u64, u32)> = None;
        for p in 0..plane.n_points() as u32 {
            if mult[p as usize] == 0 {
                continue;
            }
            let mut excess_lines = 0u64;
            let mut excess_total = 0u64;
            for &l in &plane.point_lines[p as usize] {
                if line_mult[l as usize] > new_n {
                    excess_lines += 1;
                    excess_total += line_mult[l as usize] - new_n;
                }
            }
            if excess_lines == 0 {
                continue;
            }
            let key = (excess_lines, excess_total, p);
            if worst.map_or(true, |w| key > w) {
                worst = Some(key);
            }
        }
        match worst {
            None => break,
            Some((_, _, p)) => {
                mult[p as usize] -= 1;
                removed.push(p);
                for &l in &plane.point_lines[p as usize] {
                    line_mult[l as usize] -= 1;
                }
            }
        }
    }
    // local improvement: try to re-add removed points
    let mut changed = true;
    while changed {
        changed = false;
        for &p in &removed {
            let fits = plane.point_lines[p as usize]
                .iter()
                .all(|&l| line_mult[l as usize] < new_n);
            if fits {
                mult[p as usize] += 1;
                for &l in &plane.point_lines[p as usize] {
                    line_mult[l as usize] += 1;
                }
                changed = true;
            }
        }
    }
    Ok(PointMultiset { mult })
}

/// The orbit formulation of the search with a prescribed collineation
/// group: atomic units are whole point orbits, and the n-arc condition is
/// enforced on one representative per line orbit.
#[derive(Clone, Debug)]
pub struct OrbitProblem {
    pub point_orbits: Vec<Vec<u32>>,
    pub line_orbits: Vec<Vec<u32>>,
    pub line_orbit_reps: Vec<u32>,
    /// counts[rep_idx][orbit_idx] = |orbit ∩ representative line|.
    pub counts: Vec<Vec<u16>>,
}

pub fn orbit_problem(plane: &Plane, generators: &[Collineation]) -> Result<OrbitProblem, SearchError> {
    let mut pperms = Vec::new();
    let mut lperms = Vec::new();
    for g in generators {
        let pp = plane.point_perm(g)?;
        lperms.push(plane.line_perm(&pp));
        pperms.push(pp);
    }
    let point_orbits = Plane::orbits(&pperms, plane.n_points());
    let line_orbits = Plane::orbits(&lperms, plane.lines.len());
    let line_orbit_reps: Vec<u32> = line_orbits.iter().map(|o| o[0]).collect();
    let mut counts = Vec::with_capacity(line_orbit_reps.len());
    for &rep in &line_orbit_reps {
        let mut row = Vec::with_capacity(point_orbits.len());
        for orbit in &point_orbits {
            row.push(orbit.iter().filter(|&&p| plane.line_on(rep, p)).count() as u16);
        }
        counts.push(row);
    }
    Ok(OrbitProblem { point_orbits, line_orbits, line_orbit_reps, counts })
}

/// Exhaustive branch-and-bound over unions of whole point orbits subject to
/// the per-line-orbit capacity n. Returns the largest verified arc found
/// within budget.
pub fn orbit_search(
    plane: &Plane,
    prob: &OrbitProblem,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let n_orbits = prob.point_orbits.len();
    let sizes: Vec<u64> = prob.point_orbits.iter().map(|o| o.len() as u64).collect();
    let mut order: Vec<usize> = (0..n_orbits).collect();
    // largest orbits first; the seed permutes ties so that different runs
    // reach different optimal unions first
    order.sort_by_key(|&i| {
        let tie = if cfg.seed == 0 { i as u64 } else { splitmix(cfg.seed ^ (i as u64) << 32) };
        (std::cmp::Reverse(sizes[i]), tie)
    });
    let mut budget = Budget::new(cfg);
    let mut line_load = vec![0u64; prob.line_orbit_reps.len()];
    let mut chosen = vec![false; n_orbits];
    let mut best_sel: Vec<usize> = Vec::new();
    let mut best_k = 0u64;
    let suffix_sizes: Vec<u64> = {
        let mut s = vec![0u64; n_orbits + 1];
        for i in (0..n_orbits).rev() {
            s[i] = s[i + 1] + sizes[order[i]];
        }
        s
    };

    #[allow(clippy::too_many_arguments)]
    fn rec(
        prob: &OrbitProblem,
        cfg: &SearchConfig,
        order: &[usize],
        suffix: &[u64],
        sizes: &[u64],
        pos: usize,
        cur: u64,
        line_load: &mut [u64],
        chosen: &mut [bool],
        best_k: &mut u64,
        best_sel: &mut Vec<usize>,
        budget: &mut Budget,
    ) {
        if !budget.tick() {
            return;
        }
        if cur > *best_k {
            *best_k = cur;
            *best_sel = chosen
                .iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .map(|(i, _)| i)
                .collect();
        }
        if pos == order.len() || cur + suffix[pos] <= *best_k {
            return;
        }
        let orbit = order[pos];
        // take
        let fits = prob
            .counts
            .iter()
            .enumerate()
            .all(|(li, row)| line_load[li] + row[orbit] as u64 <= cfg.n);
        if fits {
            for (li, row) in prob.counts.iter().enumerate() {
                line_load[li] += row[orbit] as u64;
            }
            chosen[orbit] = true;
            rec(prob, cfg, order, suffix, sizes, pos + 1, cur + sizes[orbit], line_load, chosen, best_k, best_sel, budget);
            chosen[orbit] = false;
            for (li, row) in prob.counts.iter().enumerate() {
                line_load[li] -= row[orbit] as u64;
            }
        }
        // skip
        rec(prob, cfg, order, suffix, sizes, pos + 1, cur, line_load, chosen, best_k, best_sel, budget);
    }

    rec(
        prob, cfg, &order, &suffix_sizes, &sizes, 0, 0, &mut line_load, &mut chosen, &mut best_k,
        &mut best_sel, &mut budget,
    );

    let mut ms = PointMultiset::empty(plane);
    for &o in &best_sel {
        for &p in &prob.point_orbits[o] {
            ms.mult[p as usize] = 1;
        }
    }
    let report = arcs::verify(plane, &ms)?;
    assert!(report.n_max <= cfg.n, "orbit search produced an invalid arc");
    Ok(SearchOutcome {
        best: ms,
        report,
        reached_target: best_k >= cfg.target_k,
        budget_exhausted: budget.exhausted,
        nodes: cfg.node_budget - budget.nodes_left,
    })
}

/// Result of an exhaustive search: the exact maximum (when `complete`) or a
/// certified lower bound with an explicit incompleteness flag.
#[derive(Clone, Debug)]
pub struct ExhaustiveResult {
    pub max_k: u64,
    pub witness: Vec<u32>,
    pub complete: bool,
    pub nodes: u64,
}

/// Exhaustive maximum size of a projective n-arc. The first point is fixed
/// to id 0 and the second to the least neighbour resp. non-neighbour of 0
/// (the collineation group is transitive on points, on ordered neighbour
/// pairs and on ordered non-neighbour pairs).
pub fn exhaustive_search(plane: &Plane, n: u64, cfg: &SearchConfig) -> ExhaustiveResult {
    if n == 0 {
        return ExhaustiveResult { max_k: 0, witness: vec![], complete: true, nodes: 0 };
    }
    if n == 1 {
        return ExhaustiveResult { max_k: 1, witness: vec![0], complete: true, nodes: 0 };
    }
    let np = plane.n_points() as u32;
    let words = plane.words;
    let mut budget = Budget::new(cfg);
    let mut best_k = 1u64;
    let mut best: Vec<u32> = vec![0];
    let mut nodes = 0u64;

    let second_reps: Vec<u32> = {
        let c0 = plane.point_class[0];
        let mut nb = None;
        let mut nonnb = None;
        for p in 1..np {
            if plane.point_class[p as usize] == c0 {
                if nb.is_none() {
                    nb = Some(p);
                }
            } else if nonnb.is_none() {
                nonnb = Some(p);
            }
            if nb.is_some() && nonnb.is_some() {
                break;
            }
        }
        [nb, nonnb].into_iter().flatten().collect()
    };

    struct Ctx<'a> {
        plane: &'a Plane,
        n: u64,
        words: usize,
    }

    // candidate masks: points > last, addable
    fn rec(
        c: &Ctx,
        chosen: &mut Vec<u32>,
        line_mult: &mut [u32],
        cand: Vec<u64>,
        best_k: &mut u64,
        best: &mut Vec<u32>,
        budget: &mut Budget,
        nodes: &mut u64,
    ) {
        *nodes += 1;
        if !budget.tick() {
            return;
        }
        if chosen.len() as u64 > *best_k {
            *best_k = chosen.len() as u64;
            *best = chosen.clone();
        }
        let avail: u64 = cand.iter().map(|w| w.count_ones() as u64).sum();
        if chosen.len() as u64 + avail <= *best_k {
            return;
        }
        // iterate candidates in increasing id order
        for wi in 0..cand.len() {
            let mut w = cand[wi];
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                let p = (wi * 64 + bit) as u32;
                // remaining candidates strictly above p
                let mut next: Vec<u64> = cand.clone();
                for x in next.iter_mut().take(wi) {
                    *x = 0;
                }
                next[wi] &= !((1u64 << bit) | ((1u64 << bit) - 1));
                // add p, prune lines reaching n
                for &l in &c.plane.point_lines[p as usize] {
                    line_mult[l as usize] += 1;
                }
                for &l in &c.plane.point_lines[p as usize] {
                    if line_mult[l as usize] as u64 == c.n {
                        let base = l as usize * c.words;
                        for t in 0..c.words {
                            next[t] &= !c.plane.line_mask[base + t];
                        }
                    }
                }
                chosen.push(p);
                rec(c, chosen, line_mult, next, best_k, best, budget, nodes);
                chosen.pop();
                for &l in &c.plane.point_lines[p as usize] {
                    line_mult[l as usize] -= 1;
                }
                if budget.exhausted {
                    return;
                }
            }
        }
    }

    let ctx = Ctx { plane, n, words };
    for &second in &second_reps {
        let mut chosen = vec![0u32, second];
        let mut line_mult = vec![0u32; plane.lines.len()];
        let mut bad = false;
        for &p in &chosen {
            for &l in &plane.point_lines[p as usize] {
                line_mult[l as usize] += 1;
                if line_mult[l as usize] as u64 > n {
                    bad = true;
                }
            }
        }
        if bad {
            continue;
        }
        if 2 > best_k {
            best_k = 2;
            best = chosen.clone();
        }
        // initial candidates: ids > second, addable
        let mut cand = vec![0u64; words];
        for p in (second + 1)..np {
            let ok = plane.point_lines[p as usize]
                .iter()
                .all(|&l| (line_mult[l as usize] as u64) < n);
            if ok {
                cand[p as usize / 64] |= 1 << (p % 64);
            }
        }
        rec(&ctx, &mut chosen, &mut line_mult, cand, &mut best_k, &mut best, &mut budget, &mut nodes);
    }

    ExhaustiveResult { max_k: best_k, witness: best, complete: !budget.exhausted, nodes }
}

/// Enumerate the invertible 3×3 matrices over R (feasible for q = 2 only)
/// and return |PΓL(3, R)| = |GL(3, R)| / |central units| · |Aut(R)|.
pub fn group_order_check(plane: &Plane) -> Result<u64, SearchError> {
    let ring = &plane.ring;
    if ring.q != 2 {
        return Err(SearchError::UnsupportedGroupOrder(ring.q));
    }
    let size = ring.size as u64;
    let gf = &plane.quotient.gf;
    let mut count = 0u64;
    let total = size.pow(9);
    for code in 0..total {
        let mut digits = [0u8; 9];
        let mut x = code;
        for d in digits.iter_mut() {
            *d = ring.residue(crate::ring::RingElement((x % size) as u16));
            x /= size;
        }
        // residue determinant over F_q
        let f = |i: usize, j: usize| digits[3 * i + j];
        let mut det = 0u8;
        det = gf.add(det, gf.mul(f(0, 0), gf.sub(gf.mul(f(1, 1), f(2, 2)), gf.mul(f(1, 2), f(2, 1)))));
        det = gf.sub(det, gf.mul(f(0, 1), gf.sub(gf.mul(f(1, 0), f(2, 2)), gf.mul(f(1, 2), f(2, 0)))));
        det = gf.add(det, gf.mul(f(0, 2), gf.sub(gf.mul(f(1, 0), f(2, 1)), gf.mul(f(1, 1), f(2, 0)))));
        if det != 0 {
            count += 1;
        }
    }
    let central_units = ring.central_unit_count();
    Ok(count / central_units * ring.automorphisms.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::Plane;
    use crate::ring::Ring;

    #[test]
    fn tail_basics_and_monotonicity() {
        // degenerate cases
        assert_eq!(hypergeometric_tail(10, 3, 0, 0), 1.0);
        assert_eq!(hypergeometric_tail(10, 3, 2, -1), 0.0);
        // exact small case: N=5, K=2, r=2: P(X=0)=3/10, P(X<=1)=9/10
        let p0 = hypergeometric_tail(5, 2, 2, 0);
        assert!((p0 - 0.3).abs() < 1e-14);
        let p1 = hypergeometric_tail(5, 2, 2, 1);
        assert!((p1 - 0.9).abs() < 1e-14);
        // monotone in the cap
        for c in 0..10 {
            assert!(
                hypergeometric_tail(40, 12, 9, c) <= hypergeometric_tail(40, 12, 9, c + 1) + 1e-15
            );
        }
        // forced overlap regime: r > N - K
        let p = hypergeometric_tail(10, 8, 5, 2);
        // X >= r + K - N = 3 always, so P(X <= 2) = 0
        assert_eq!(p, 0.0);
        let p = hypergeometric_tail(10, 8, 5, 3);
        // P(X = 3) = C(8,3)C(2,2)/C(10,5) = 56/252
        assert!((p - 56.0 / 252.0).abs() < 1e-12);
    }

    #[test]
    fn score_symmetry_on_empty_z4() {
        let pl = Plane::new(Ring::by_name("Z4").unwrap());
        let empty = PointMultiset::empty(&pl);
        let cfg = SearchConfig::new(2, 7);
        let s0 = heuristic_score(&pl, &empty, 0, &cfg);
        for p in 1..pl.n_points() as u32 {
            let s = heuristic_score(&pl, &empty, p, &cfg);
            assert!((s - s0).abs() < 1e-12, "point {p}: {s} vs {s0}");
        }
        assert!(s0 > 0.0 && s0 <= 1.0);
    }

    #[test]
    fn score_zero_when_not_addable() {
        let pl = Plane::new(Ring::by_name("Z4").unwrap());
        let ms = PointMultiset::from_points(&pl, &[0]);
        let cfg = SearchConfig::new(2, 7);
        assert_eq!(heuristic_score(&pl, &ms, 0, &cfg), 0.0);
    }

    #[test]
    fn heuristic_finds_hyperoval_z4() {
        let pl = Plane::new(Ring::by_name("Z4").unwrap());
        let cfg = SearchConfig::new(2, 7).with_nodes(100_000);
        let out = heuristic_search(&pl, &cfg, &PointMultiset::empty(&pl)).unwrap();
        assert!(out.reached_target, "only reached k = {}", out.report.k);
        assert_eq!(out.report.k, 7);
        assert_eq!(out.report.n_max, 2);
    }

    #[test]
    fn exhaustive_certificates_q2() {
        let z4 = Plane::new(Ring::by_name("Z4").unwrap());
        let cfg = SearchConfig::new(0, 0).with_nodes(50_000_000);
        let r2 = exhaustive_search(&z4, 2, &cfg);
        assert!(r2.complete);
        assert_eq!(r2.max_k, 7);
        let r3 = exhaustive_search(&z4, 3, &cfg);
        assert!(r3.complete);
        assert_eq!(r3.max_k, 10);
        let s2 = Plane::new(Ring::by_name("S2").unwrap());
        let r2 = exhaustive_search(&s2, 2, &cfg);
        assert!(r2.complete);
        assert_eq!(r2.max_k, 6);
        let r3 = exhaustive_search(&s2, 3, &cfg);
        assert!(r3.complete);
        assert_eq!(r3.max_k, 10);
    }

    #[test]
    fn group_order_z4_and_s2() {
        let z4 = Plane::new(Ring::by_name("Z4").unwrap());
        let v = group_order_check(&z4).unwrap();
        assert_eq!(v, 43008);
        assert_eq!(v % 7, 0);
        let s2 = Plane::new(Ring::by_name("S2").unwrap());
        assert_eq!(group_order_check(&s2).unwrap(), 43008);
        let z9 = Plane::new(Ring::by_name("Z9").unwrap());
        assert!(group_order_check(&z9).is_err());
    }

    #[test]
    fn trivial_group_orbit_search_z4() {
        let pl = Plane::new(Ring::by_name("Z4").unwrap());
        let prob = orbit_problem(&pl, &[]).unwrap();
        assert_eq!(prob.point_orbits.len(), pl.n_points());
        let cfg = SearchConfig::new(2, 7).with_nodes(10_000_000);
        let out = orbit_search(&pl, &prob, &cfg).unwrap();
        assert_eq!(out.report.k, 7);
        assert_eq!(out.report.n_max, 2);
    }

    #[test]
    fn reduce_full_plane_z4_to_6_is_noop() {
        let pl = Plane::new(Ring::by_name("Z4").unwrap());
        let full = PointMultiset { mult: vec![1; pl.n_points()] };
        let out = reduce_arc(&pl, &full, 6, &SearchConfig::new(6, 0)).unwrap();
        assert_eq!(out.cardinality(), 28);
    }
}
