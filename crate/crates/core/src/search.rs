//! Exhaustive enumeration of edge colorings deciding avoidance problems
//! exactly, with pattern pruning at every completed vertex, lex-minimality
//! pruning on small prefixes, and deterministic parallel splitting.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::canon::{allowed_palette_perms, is_canonical};
use crate::coloring::{pair_count, pair_index, EdgeColoring, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::pattern::{count_violations, find_in_class_containing, PatternSpec, Scope, Shape};

const DEFAULT_CANON_THRESHOLD: usize = 8;

/// Orders beyond this are out of reach for exhaustive probing; threshold
/// walks stop here and report an open upper end instead of running away.
const MAX_PROBE_ORDER: usize = 64;

fn default_canon_threshold() -> usize {
    DEFAULT_CANON_THRESHOLD
}

/// Optional caps on a single enumeration run. `nodes` bounds color
/// assignments tried (approximately: checked in batches); `wall_ms` bounds
/// elapsed time. Exceeding either yields BudgetExceeded, never a wrong
/// Exhausted claim.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

/// An avoidance problem: does some coloring of K_n with k colors avoid
/// every forbidden pattern?
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchTask {
    pub n: usize,
    pub k: usize,
    pub forbidden: Vec<PatternSpec>,
    #[serde(default)]
    pub limits: SearchLimits,
    /// Completed prefixes on at most this many vertices are rejected unless
    /// lexicographically minimal; 0 disables the pruning.
    #[serde(default = "default_canon_threshold")]
    pub canon_threshold: usize,
    /// Pair depth at which the tree is split into independently searched
    /// roots. Defaults to a palette-dependent depth yielding a few hundred
    /// roots. The value changes stats accounting but never the result.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_depth: Option<usize>,
}

impl SearchTask {
    pub fn new(n: usize, k: usize, forbidden: Vec<PatternSpec>) -> Self {
        SearchTask {
            n,
            k,
            forbidden,
            limits: SearchLimits::default(),
            canon_threshold: DEFAULT_CANON_THRESHOLD,
            split_depth: None,
        }
    }

    pub fn with_limits(mut self, limits: SearchLimits) -> Self {
        self.limits = limits;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Exhausted,
    WitnessFound,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub pattern_prunes: u64,
    pub canon_prunes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<EdgeColoring>,
    pub stats: SearchStats,
}

// ---------------------------------------------------------------------------
// Enumeration internals

#[derive(Debug, Default, Clone, Copy)]
struct Counters {
    nodes: u64,
    pattern_prunes: u64,
    canon_prunes: u64,
}

impl Counters {
    fn add(&mut self, other: &Counters) {
        self.nodes += other.nodes;
        self.pattern_prunes += other.pattern_prunes;
        self.canon_prunes += other.canon_prunes;
    }
}

struct TaskCtx {
    n: usize,
    k: usize,
    total_pairs: usize,
    split_depth: usize,
    pair_uv: Vec<(usize, usize)>,
    /// Monochromatic targets that can occur at this n: (shape, Some(color))
    /// or (shape, None) for any color.
    mono: Vec<(Shape, Option<usize>)>,
    rainbow: bool,
    canon_threshold: usize,
    perms: Vec<Vec<usize>>,
}

struct SharedCtl {
    nodes: AtomicU64,
    stop: AtomicBool,
    winner: AtomicUsize,
    node_cap: Option<u64>,
    deadline: Option<Instant>,
}

/// Batches node counts into the shared total and polls the abort
/// conditions. The batch size shrinks when a node cap is set so small
/// budgets still trip promptly.
struct Guard<'a> {
    shared: &'a SharedCtl,
    root_idx: Option<usize>,
    since_flush: u64,
    flush_every: u64,
}

impl<'a> Guard<'a> {
    fn new(shared: &'a SharedCtl, root_idx: Option<usize>) -> Self {
        let flush_every = if shared.node_cap.is_some() { 64 } else { 1024 };
        Guard {
            shared,
            root_idx,
            since_flush: 0,
            flush_every,
        }
    }

    /// Returns false when the search must stop.
    fn tick(&mut self) -> bool {
        self.since_flush += 1;
        if self.since_flush < self.flush_every {
            return true;
        }
        self.flush_and_poll()
    }

    fn flush_and_poll(&mut self) -> bool {
        let total = self
            .shared
            .nodes
            .fetch_add(self.since_flush, Ordering::Relaxed)
            + self.since_flush;
        self.since_flush = 0;
        if self.shared.stop.load(Ordering::Relaxed) {
            return false;
        }
        if let Some(cap) = self.shared.node_cap {
            if total >= cap {
                self.shared.stop.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if let Some(deadline) = self.shared.deadline {
            if Instant::now() >= deadline {
                self.shared.stop.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if let Some(i) = self.root_idx {
            // A witness in an earlier root makes this subtree irrelevant.
            if self.shared.winner.load(Ordering::Relaxed) < i {
                return false;
            }
        }
        true
    }

    fn final_flush(&mut self) {
        self.shared
            .nodes
            .fetch_add(self.since_flush, Ordering::Relaxed);
        self.since_flush = 0;
    }
}

struct DfsState {
    colors: Vec<u16>,
    rows: Vec<Vec<Bitset>>,
    counters: Counters,
}

impl DfsState {
    fn new(ctx: &TaskCtx) -> Self {
        DfsState {
            colors: vec![0; ctx.total_pairs],
            rows: (0..ctx.k)
                .map(|_| (0..ctx.n).map(|_| Bitset::new(ctx.n)).collect())
                .collect(),
            counters: Counters::default(),
        }
    }

    fn replay_prefix(&mut self, ctx: &TaskCtx, prefix: &[u16]) {
        for (t, &c) in prefix.iter().enumerate() {
            let (u, v) = ctx.pair_uv[t];
            self.colors[t] = c;
            self.rows[c as usize][u].insert(v);
            self.rows[c as usize][v].insert(u);
        }
    }

    /// All pruning tests for the prefix on vertices 0..=v, run right after
    /// the last pair of column v was assigned. A pattern that appeared
    /// earlier would have pruned earlier, so only copies through v matter.
    fn check_completed(&mut self, ctx: &TaskCtx, v: usize) -> bool {
        let s = v + 1;
        if ctx.rainbow && s >= 3 {
            for b in 1..v {
                let cbv = self.colors[pair_index(b, v)];
                for a in 0..b {
                    let cav = self.colors[pair_index(a, v)];
                    if cav == cbv {
                        continue;
                    }
                    let cab = self.colors[pair_index(a, b)];
                    if cab != cav && cab != cbv {
                        self.counters.pattern_prunes += 1;
                        return false;
                    }
                }
            }
        }
        for &(shape, colopt) in &ctx.mono {
            if shape.order() > s {
                continue;
            }
            let hit = match colopt {
                Some(c) => find_in_class_containing(&self.rows[c], s, shape, v).is_some(),
                None => (0..ctx.k)
                    .any(|c| find_in_class_containing(&self.rows[c], s, shape, v).is_some()),
            };
            if hit {
                self.counters.pattern_prunes += 1;
                return false;
            }
        }
        if s >= 2 && s <= ctx.canon_threshold && !is_canonical(&self.colors, s, &ctx.perms) {
            self.counters.canon_prunes += 1;
            return false;
        }
        true
    }
}

enum Flow {
    Continue,
    Witness,
    Stopped,
}

fn dfs(ctx: &TaskCtx, st: &mut DfsState, guard: &mut Guard<'_>, t: usize) -> Flow {
    if t == ctx.total_pairs {
        return Flow::Witness;
    }
    let (u, v) = ctx.pair_uv[t];
    for c in 0..ctx.k {
        st.counters.nodes += 1;
        if !guard.tick() {
            return Flow::Stopped;
        }
        st.colors[t] = c as u16;
        st.rows[c][u].insert(v);
        st.rows[c][v].insert(u);
        let ok = if u + 1 == v {
            st.check_completed(ctx, v)
        } else {
            true
        };
        if ok {
            match dfs(ctx, st, guard, t + 1) {
                Flow::Continue => {}
                // On a witness the assignment stays in place for the caller.
                other => return other,
            }
        }
        st.rows[c][u].remove(v);
        st.rows[c][v].remove(u);
    }
    Flow::Continue
}

/// Collects every surviving prefix of `split_depth` pairs, applying the same
/// pruning as the main descent.
fn rootgen(
    ctx: &TaskCtx,
    st: &mut DfsState,
    guard: &mut Guard<'_>,
    t: usize,
    roots: &mut Vec<Vec<u16>>,
) -> bool {
    if t == ctx.split_depth {
        roots.push(st.colors[..t].to_vec());
        return true;
    }
    let (u, v) = ctx.pair_uv[t];
    for c in 0..ctx.k {
        st.counters.nodes += 1;
        if !guard.tick() {
            return false;
        }
        st.colors[t] = c as u16;
        st.rows[c][u].insert(v);
        st.rows[c][v].insert(u);
        let ok = if u + 1 == v {
            st.check_completed(ctx, v)
        } else {
            true
        };
        let keep_going = if ok {
            rootgen(ctx, st, guard, t + 1, roots)
        } else {
            true
        };
        st.rows[c][u].remove(v);
        st.rows[c][v].remove(u);
        if !keep_going {
            return false;
        }
    }
    true
}

struct RootResult {
    counters: Counters,
    witness: Option<Vec<u16>>,
}

fn run_root(ctx: &TaskCtx, shared: &SharedCtl, idx: usize, prefix: &[u16]) -> RootResult {
    if shared.stop.load(Ordering::Relaxed) || shared.winner.load(Ordering::Relaxed) < idx {
        return RootResult {
            counters: Counters::default(),
            witness: None,
        };
    }
    let mut st = DfsState::new(ctx);
    st.replay_prefix(ctx, prefix);
    let mut guard = Guard::new(shared, Some(idx));
    let flow = dfs(ctx, &mut st, &mut guard, prefix.len());
    guard.final_flush();
    match flow {
        Flow::Witness => {
            shared.winner.fetch_min(idx, Ordering::SeqCst);
            RootResult {
                counters: st.counters,
                witness: Some(st.colors.clone()),
            }
        }
        Flow::Continue | Flow::Stopped => RootResult {
            counters: st.counters,
            witness: None,
        },
    }
}

fn default_split_depth(k: usize, total_pairs: usize) -> usize {
    if k < 2 {
        return 0;
    }
    let mut depth = 0;
    let mut span: u64 = 1;
    while span < 256 && depth < total_pairs {
        span = span.saturating_mul(k as u64);
        depth += 1;
    }
    depth
}

fn validate_task(task: &SearchTask) -> Result<()> {
    if task.n == 0 {
        return Err(Error::ParameterOutOfRange(
            "search order must be at least 1".into(),
        ));
    }
    if task.n > MAX_VERTICES {
        return Err(Error::OrderOutOfRange {
            n: task.n,
            max: MAX_VERTICES,
        });
    }
    if task.k == 0 {
        return Err(Error::ParameterOutOfRange(
            "palette size must be at least 1".into(),
        ));
    }
    if task.k > 64 {
        return Err(Error::ParameterOutOfRange(
            "palette size above 64 is not supported by the exhaustive search".into(),
        ));
    }
    if task.forbidden.is_empty() {
        return Err(Error::InvalidPattern(
            "forbidden pattern list is empty".into(),
        ));
    }
    for spec in &task.forbidden {
        spec.check()?;
    }
    Ok(())
}

/// Decides a task exactly. Colors are tried in ascending order and vertices
/// in label order, so the witness reported is the lexicographically least
/// valid coloring; this holds for any worker count because subtree results
/// are merged by least root index.
pub fn enumerate_exhaustive(task: &SearchTask) -> Result<SearchOutcome> {
    let start = Instant::now();
    validate_task(task)?;

    let applicable = |spec: &PatternSpec| match spec.scope {
        Scope::InColor(c) => c < task.k,
        Scope::AnyColor => true,
        Scope::RainbowTriangle => task.k >= 3,
    };
    // An order-1 target is a bare vertex: present in every coloring, so
    // nothing of order >= 1 can avoid it.
    if task.forbidden.iter().any(|s| {
        applicable(s) && !matches!(s.scope, Scope::RainbowTriangle) && s.shape.order() <= 1
    }) {
        return Ok(SearchOutcome {
            status: SearchStatus::Exhausted,
            witness: None,
            stats: SearchStats {
                elapsed: start.elapsed(),
                ..SearchStats::default()
            },
        });
    }

    let total_pairs = pair_count(task.n);
    let mut mono = Vec::new();
    let mut rainbow = false;
    for spec in &task.forbidden {
        if !applicable(spec) {
            continue;
        }
        match spec.scope {
            Scope::RainbowTriangle => rainbow = true,
            Scope::InColor(c) => {
                if spec.shape.order() <= task.n {
                    mono.push((spec.shape, Some(c)));
                }
            }
            Scope::AnyColor => {
                if spec.shape.order() <= task.n {
                    mono.push((spec.shape, None));
                }
            }
        }
    }

    let ctx = TaskCtx {
        n: task.n,
        k: task.k,
        total_pairs,
        split_depth: task
            .split_depth
            .unwrap_or_else(|| default_split_depth(task.k, total_pairs))
            .min(total_pairs),
        pair_uv: {
            let mut uv = Vec::with_capacity(total_pairs);
            for v in 1..task.n {
                for u in 0..v {
                    uv.push((u, v));
                }
            }
            uv
        },
        mono,
        rainbow,
        canon_threshold: task.canon_threshold,
        perms: allowed_palette_perms(task.k, &task.forbidden),
    };

    let shared = SharedCtl {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        winner: AtomicUsize::new(usize::MAX),
        node_cap: task.limits.nodes,
        deadline: task
            .limits
            .wall_ms
            .map(|ms| start + Duration::from_millis(ms)),
    };

    let mut roots = Vec::new();
    let mut rootgen_state = DfsState::new(&ctx);
    let mut rootgen_guard = Guard::new(&shared, None);
    let rootgen_ok = rootgen(&ctx, &mut rootgen_state, &mut rootgen_guard, 0, &mut roots);
    rootgen_guard.final_flush();
    let rootgen_counters = rootgen_state.counters;
    drop(rootgen_state);

    if !rootgen_ok {
        return Ok(SearchOutcome {
            status: SearchStatus::BudgetExceeded,
            witness: None,
            stats: SearchStats {
                nodes: rootgen_counters.nodes,
                pattern_prunes: rootgen_counters.pattern_prunes,
                canon_prunes: rootgen_counters.canon_prunes,
                elapsed: start.elapsed(),
            },
        });
    }

    let results: Vec<RootResult> = roots
        .par_iter()
        .enumerate()
        .map(|(idx, prefix)| run_root(&ctx, &shared, idx, prefix))
        .collect();

    let budget_hit = shared.stop.load(Ordering::Relaxed);
    let winner_idx = results.iter().position(|r| r.witness.is_some());
    let mut counters = rootgen_counters;
    let (status, witness) = match winner_idx {
        Some(w) => {
            for r in &results[..=w] {
                counters.add(&r.counters);
            }
            let colors = results[w]
                .witness
                .clone()
                .expect("witness present at winner index");
            let g = EdgeColoring::from_raw(task.n, task.k, colors);
            let violations = count_violations(&g, &task.forbidden);
            if violations != 0 {
                return Err(Error::InternalInconsistency(format!(
                    "search produced a witness with {violations} forbidden pattern(s)"
                )));
            }
            (SearchStatus::WitnessFound, Some(g))
        }
        None => {
            for r in &results {
                counters.add(&r.counters);
            }
            let status = if budget_hit {
                SearchStatus::BudgetExceeded
            } else {
                SearchStatus::Exhausted
            };
            (status, None)
        }
    };

    Ok(SearchOutcome {
        status,
        witness,
        stats: SearchStats {
            nodes: counters.nodes,
            pattern_prunes: counters.pattern_prunes,
            canon_prunes: counters.canon_prunes,
            elapsed: start.elapsed(),
        },
    })
}

// ---------------------------------------------------------------------------
// Threshold walks

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RamseyResolution {
    Exact(usize),
    /// The least forcing order lies in [lo, hi]; hi is open when no
    /// exhausted probe completed.
    Unresolved {
        lo: usize,
        hi: Option<usize>,
    },
}

/// Outcome of probing consecutive orders for the least one where every
/// coloring contains a forbidden pattern.
#[derive(Debug, Clone)]
pub struct RamseyComputation {
    pub resolution: RamseyResolution,
    /// Violation-free coloring at the largest order where one was found
    /// (one below the exact value when resolved).
    pub witness: Option<EdgeColoring>,
    pub witness_stats: Option<SearchStats>,
    pub exhausted_stats: Option<SearchStats>,
    /// Probe trail in execution order.
    pub probes: Vec<(usize, SearchStatus)>,
}

impl RamseyComputation {
    pub fn value(&self) -> Option<usize> {
        match self.resolution {
            RamseyResolution::Exact(v) => Some(v),
            RamseyResolution::Unresolved { .. } => None,
        }
    }
}

fn resolve_threshold<F>(task_for: F, n_start: usize) -> Result<RamseyComputation>
where
    F: Fn(usize) -> SearchTask,
{
    let mut probes: Vec<(usize, SearchStatus)> = Vec::new();
    let mut outcomes: BTreeMap<usize, SearchOutcome> = BTreeMap::new();
    let mut n = n_start.clamp(1, MAX_PROBE_ORDER);
    loop {
        let outcome = enumerate_exhaustive(&task_for(n))?;
        probes.push((n, outcome.status));
        let status = outcome.status;
        outcomes.insert(n, outcome);
        match status {
            SearchStatus::BudgetExceeded => break,
            SearchStatus::WitnessFound => {
                if n >= MAX_PROBE_ORDER || outcomes.contains_key(&(n + 1)) {
                    break;
                }
                n += 1;
            }
            SearchStatus::Exhausted => {
                if n == 1 || outcomes.contains_key(&(n - 1)) {
                    break;
                }
                n -= 1;
            }
        }
    }

    let exhausted_at = outcomes
        .iter()
        .find(|(_, o)| o.status == SearchStatus::Exhausted)
        .map(|(&n, _)| n);
    let witness_at = outcomes
        .iter()
        .rev()
        .find(|(_, o)| o.status == SearchStatus::WitnessFound)
        .map(|(&n, _)| n);
    if let (Some(w), Some(e)) = (witness_at, exhausted_at) {
        if w >= e {
            return Err(Error::InternalInconsistency(format!(
                "witness at order {w} but exhaustion at order {e}"
            )));
        }
    }

    let witness = witness_at.and_then(|w| outcomes[&w].witness.clone());
    if let (Some(w), Some(g)) = (witness_at, witness.as_ref()) {
        let forbidden = task_for(w).forbidden;
        if count_violations(g, &forbidden) != 0 {
            return Err(Error::InternalInconsistency(
                "stored witness fails re-verification".into(),
            ));
        }
    }

    let resolution = match (witness_at, exhausted_at) {
        (Some(w), Some(e)) if w + 1 == e => RamseyResolution::Exact(e),
        (None, Some(1)) => RamseyResolution::Exact(1),
        (w, e) => RamseyResolution::Unresolved {
            lo: w.map_or(1, |w| w + 1),
            hi: e,
        },
    };

    Ok(RamseyComputation {
        resolution,
        witness,
        witness_stats: witness_at.map(|w| outcomes[&w].stats),
        exhausted_stats: exhausted_at.map(|e| outcomes[&e].stats),
        probes,
    })
}

/// Least n such that every coloring of K_n with shapes.len() colors has a
/// copy of shapes[c] in some color c. Probes walk up or down from n_start.
pub fn compute_ramsey(
    shapes: &[Shape],
    n_start: usize,
    limits: SearchLimits,
) -> Result<RamseyComputation> {
    if shapes.is_empty() {
        return Err(Error::ParameterOutOfRange(
            "at least one per-color shape is required".into(),
        ));
    }
    let k = shapes.len();
    let forbidden: Vec<PatternSpec> = shapes
        .iter()
        .enumerate()
        .map(|(c, &shape)| PatternSpec::mono(shape, c))
        .collect();
    resolve_threshold(
        move |n| SearchTask::new(n, k, forbidden.clone()).with_limits(limits),
        n_start,
    )
}

/// Least n such that every k-coloring of K_n has a rainbow triangle or a
/// monochromatic copy of the shape.
pub fn compute_gallai_ramsey(
    shape: Shape,
    k: usize,
    n_start: usize,
    limits: SearchLimits,
) -> Result<RamseyComputation> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange(
            "palette size must be at least 1".into(),
        ));
    }
    let mut forbidden = vec![PatternSpec::rainbow()];
    forbidden.extend((0..k).map(|c| PatternSpec::mono(shape, c)));
    resolve_threshold(
        move |n| SearchTask::new(n, k, forbidden.clone()).with_limits(limits),
        n_start,
    )
}
