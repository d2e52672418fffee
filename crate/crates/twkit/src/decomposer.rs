//! Approximation pipelines.
//!
//! * `rs_4approx`: the quadratic separator recursion, width `4k+3`.
//! * `alg1` / `compress1` / `find_td`: width `3k+4`.
//! * `alg_alpha` / `compress_alpha` / `find_partial_td`: width `5k+4`.
//!
//! The reduction levels and the separator recursions run on explicit work
//! stacks; only the fixed-depth `alpha` nesting uses the call stack.

use std::cell::RefCell;

use thiserror::Error;

use crate::graph::{
    connected_components, contract_matching, decontract_decomposition, edge_bound_check, improved_graph,
    maximal_matching, reintroduce_with, simplicial_in, EdgeBound, Graph, VertexSet,
};
use crate::separators::flow_s_separator_with;
use crate::tables::{DsConfig, DsError, DsState, SetName, StateSnapshot, UpdateStats, WhatSep};
use crate::td::{build_from_parts, ceil_log2, greedy_decomposition, forgotten_map, locate_bag_containing, validate, TreeDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Rs4,
    Three,
    Five { alpha: usize },
}

impl Mode {
    /// Largest width the mode may return for parameter `k`.
    pub fn width_bound(self, k: usize) -> usize {
        match self {
            Mode::Rs4 => 4 * k + 3,
            Mode::Three => 3 * k + 4,
            Mode::Five { .. } => 5 * k + 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeOutcome {
    Decomposition(TreeDecomposition),
    /// The treewidth is certainly larger than the carried `k`.
    TwExceeds(usize),
}

impl DecomposeOutcome {
    pub fn decomposition(&self) -> Option<&TreeDecomposition> {
        match self {
            DecomposeOutcome::Decomposition(td) => Some(td),
            DecomposeOutcome::TwExceeds(_) => None,
        }
    }

    pub fn into_decomposition(self) -> Option<TreeDecomposition> {
        match self {
            DecomposeOutcome::Decomposition(td) => Some(td),
            DecomposeOutcome::TwExceeds(_) => None,
        }
    }

    pub fn is_rejection(&self) -> bool {
        matches!(self, DecomposeOutcome::TwExceeds(_))
    }
}

#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Tables(#[from] DsError),
}

fn invariant<T>(msg: impl Into<String>) -> Result<T, DecomposeError> {
    Err(DecomposeError::Invariant(msg.into()))
}

/// Decomposition of `G[S ∪ U]` built by the partial recursion, with the
/// covered vertex set.
#[derive(Clone, Debug)]
pub struct PartialResult {
    pub partial: TreeDecomposition,
    pub covered: VertexSet,
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposerConfig {
    pub tables: DsConfig,
    /// The I-simplicial set is used whenever it has at least
    /// `n / simplicial_divisor` vertices, even if a larger matching exists.
    pub simplicial_divisor: usize,
    /// Stack size for the worker thread of `approximate`.
    pub stack_size: usize,
}

impl Default for DecomposerConfig {
    fn default() -> Self {
        DecomposerConfig { tables: DsConfig::default(), simplicial_divisor: 16, stack_size: 1 << 30 }
    }
}

fn minus(a: &[usize], b: &[usize]) -> VertexSet {
    a.iter().copied().filter(|v| b.binary_search(v).is_err()).collect()
}

fn union(a: &[usize], b: &[usize]) -> VertexSet {
    let mut out: VertexSet = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn sorted(mut v: VertexSet) -> VertexSet {
    v.sort_unstable();
    v.dedup();
    v
}

/// The quadratic baseline. Returns a decomposition of width at most `4k+3`
/// whose root bag contains `s`, or a rejection.
pub fn rs_4approx(g: &Graph, k: usize, s: &[usize]) -> Result<DecomposeOutcome, DecomposeError> {
    let s = sorted(s.to_vec());
    if s.len() > 3 * k + 3 {
        return invariant(format!("|S| = {} exceeds 3k+3", s.len()));
    }
    if edge_bound_check(g, k) == EdgeBound::TooManyEdges {
        return Ok(DecomposeOutcome::TwExceeds(k));
    }
    let mut out: Option<TreeDecomposition> = None;
    let mut work: Vec<(VertexSet, VertexSet, Option<usize>)> = vec![((0..g.n()).collect(), s, None)];
    while let Some((vertices, mut s, parent)) = work.pop() {
        let bag = if vertices.len() <= 4 * k + 4 {
            vertices.clone()
        } else {
            for &v in &vertices {
                if s.len() >= 3 * k + 3 {
                    break;
                }
                if let Err(at) = s.binary_search(&v) {
                    s.insert(at, v);
                }
            }
            let (h, back) = g.induced_subgraph(&vertices);
            if edge_bound_check(&h, k) == EdgeBound::TooManyEdges {
                return Ok(DecomposeOutcome::TwExceeds(k));
            }
            let local_s: VertexSet = s.iter().map(|v| vertices.binary_search(v).unwrap()).collect();
            let Ok(x) = flow_s_separator_with(&h, &local_s, k, true) else {
                return Ok(DecomposeOutcome::TwExceeds(k));
            };
            let x: VertexSet = x.iter().map(|&v| back[v]).collect();
            let parent_id = push_node(&mut out, union(&s, &x), parent);
            for comp in connected_components(&h, &x.iter().map(|v| vertices.binary_search(v).unwrap()).collect::<Vec<_>>()) {
                let comp: VertexSet = comp.iter().map(|&v| back[v]).collect();
                let child_s = union(&s.iter().copied().filter(|v| comp.binary_search(v).is_ok()).collect::<Vec<_>>(), &x);
                work.push((union(&comp, &x), child_s, Some(parent_id)));
            }
            continue;
        };
        push_node(&mut out, bag, parent);
    }
    Ok(DecomposeOutcome::Decomposition(out.expect("at least one node")))
}

fn push_node(out: &mut Option<TreeDecomposition>, bag: VertexSet, parent: Option<usize>) -> usize {
    match out {
        None => {
            *out = Some(TreeDecomposition::single(bag));
            0
        }
        Some(td) => td.add_node(bag, parent),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stage {
    Three,
    Five(usize),
}

impl Stage {
    fn bound(self, k: usize) -> usize {
        match self {
            Stage::Three => 3 * k + 4,
            Stage::Five(_) => 5 * k + 4,
        }
    }

    fn s_limit(self, k: usize) -> usize {
        match self {
            Stage::Three => 2 * k + 3,
            Stage::Five(_) => 4 * k + 3,
        }
    }
}

enum Lift {
    Contract(Vec<usize>),
    Simplicial { removed: VertexSet, improved: Graph, back: Vec<usize> },
}

/// Width `3k+4` with root bag exactly `s0`. Requires `g` and `g - s0`
/// connected and `|s0| ≤ 2k+3`.
pub fn alg1(g: &Graph, k: usize, s0: &[usize], config: &DecomposerConfig) -> Result<DecomposeOutcome, DecomposeError> {
    reduce_and_compress(Stage::Three, g, k, s0, config)
}

/// Width `5k+4` with root bag exactly `s0`. Requires `g` and `g - s0`
/// connected and `|s0| ≤ 4k+3`.
pub fn alg_alpha(
    alpha: usize,
    g: &Graph,
    k: usize,
    s0: &[usize],
    config: &DecomposerConfig,
) -> Result<DecomposeOutcome, DecomposeError> {
    if alpha == 0 {
        return invariant("alpha must be at least 1");
    }
    reduce_and_compress(Stage::Five(alpha), g, k, s0, config)
}

fn reduce_and_compress(
    stage: Stage,
    g: &Graph,
    k: usize,
    s0: &[usize],
    config: &DecomposerConfig,
) -> Result<DecomposeOutcome, DecomposeError> {
    let bound = stage.bound(k);
    let s0 = sorted(s0.to_vec());
    if s0.len() > stage.s_limit(k) {
        return invariant(format!("|S0| = {} exceeds {}", s0.len(), stage.s_limit(k)));
    }
    let mut levels: Vec<(Graph, VertexSet, Lift)> = Vec::new();
    let mut cur = g.clone();
    let mut cur_s0 = s0;
    let mut td = loop {
        if edge_bound_check(&cur, k) == EdgeBound::TooManyEdges {
            return Ok(DecomposeOutcome::TwExceeds(k));
        }
        if cur.n() <= bound + 1 {
            break greedy_decomposition(&cur, &cur_s0, bound).unwrap_or_else(|| {
                let all: VertexSet = (0..cur.n()).collect();
                build_from_parts(&cur_s0, &minus(&all, &cur_s0), &[])
            });
        }
        let improved = improved_graph(&cur, bound);
        let removed = simplicial_in(&improved, bound);
        let matching = maximal_matching(&cur);
        let next = if removed.len() >= matching.len() || removed.len() * config.simplicial_divisor >= cur.n() {
            let keep = minus(&(0..cur.n()).collect::<Vec<_>>(), &removed);
            let (h, back) = improved.induced_subgraph(&keep);
            levels.push((std::mem::replace(&mut cur, h), std::mem::take(&mut cur_s0), Lift::Simplicial {
                removed,
                improved,
                back,
            }));
            continue;
        } else {
            contract_matching(&cur, &matching)
        };
        let (h, map) = next;
        levels.push((std::mem::replace(&mut cur, h), std::mem::take(&mut cur_s0), Lift::Contract(map)));
    };
    while let Some((graph, level_s0, lift)) = levels.pop() {
        let apx = match lift {
            Lift::Contract(map) => decontract_decomposition(&td, &map),
            Lift::Simplicial { removed, improved, back } => {
                match reintroduce_with(&td.relabel(&back), &removed, &improved, bound) {
                    Ok(t) => t,
                    Err(_) => return Ok(DecomposeOutcome::TwExceeds(k)),
                }
            }
        };
        let outcome = match stage {
            Stage::Three => compress1(&graph, k, &level_s0, &apx, config)?,
            Stage::Five(alpha) => compress_alpha(alpha, &graph, k, &level_s0, &apx, config)?,
        };
        td = match outcome {
            DecomposeOutcome::Decomposition(t) => t,
            rejected => return Ok(rejected),
        };
    }
    Ok(DecomposeOutcome::Decomposition(td))
}

/// Rebuilds a decomposition of width `3k+4` with root bag `s0` from an
/// approximate one.
pub fn compress1(
    g: &Graph,
    k: usize,
    s0: &[usize],
    td_apx: &TreeDecomposition,
    config: &DecomposerConfig,
) -> Result<DecomposeOutcome, DecomposeError> {
    compress_full(g, k, s0, td_apx, 2 * k + 3, config)
}

fn compress_full(
    g: &Graph,
    k: usize,
    s0: &[usize],
    td_apx: &TreeDecomposition,
    s_limit: usize,
    config: &DecomposerConfig,
) -> Result<DecomposeOutcome, DecomposeError> {
    let s0 = sorted(s0.to_vec());
    if s0.len() > s_limit {
        return invariant(format!("|S0| = {} exceeds {s_limit}", s0.len()));
    }
    if edge_bound_check(g, k) == EdgeBound::TooManyEdges {
        return Ok(DecomposeOutcome::TwExceeds(k));
    }
    if s0.len() == g.n() {
        return Ok(DecomposeOutcome::Decomposition(TreeDecomposition::single(s0)));
    }
    let td_apx = &narrowed(g, td_apx);
    let mut ds = DsState::new(g, k, td_apx, &s0, config.tables)?;
    let found = find_td_bounded(&mut ds, s_limit);
    log::debug!("compress n={} table width={} depth={} {:?}", g.n(), ds.table_width(), ds.nice().depth(), ds.stats());
    absorb(&ds);
    Ok(match found? {
        Some(td) => DecomposeOutcome::Decomposition(td),
        None => DecomposeOutcome::TwExceeds(k),
    })
}

/// `compress1` for `alpha = 1` (with `|s0| ≤ 4k+3`), otherwise a partial
/// decomposition completed by `alg_alpha(alpha - 1)` on the leftover
/// components.
pub fn compress_alpha(
    alpha: usize,
    g: &Graph,
    k: usize,
    s0: &[usize],
    td_apx: &TreeDecomposition,
    config: &DecomposerConfig,
) -> Result<DecomposeOutcome, DecomposeError> {
    if alpha <= 1 {
        return compress_full(g, k, s0, td_apx, 4 * k + 3, config);
    }
    let s0 = sorted(s0.to_vec());
    if s0.len() > 4 * k + 3 {
        return invariant(format!("|S0| = {} exceeds 4k+3", s0.len()));
    }
    if edge_bound_check(g, k) == EdgeBound::TooManyEdges {
        return Ok(DecomposeOutcome::TwExceeds(k));
    }
    if s0.len() == g.n() {
        return Ok(DecomposeOutcome::Decomposition(TreeDecomposition::single(s0)));
    }
    let n = g.n();
    let threshold = ceil_log2(n).max(1);
    let td_apx = &narrowed(g, td_apx);
    let mut ds = DsState::new(g, k, td_apx, &s0, config.tables)?;
    let found = find_partial_td(&mut ds, threshold);
    log::debug!("partial compress n={} table width={} depth={} {:?}", n, ds.table_width(), ds.nice().depth(), ds.stats());
    absorb(&ds);
    drop(ds);
    let Some(PartialResult { mut partial, covered }) = found? else {
        return Ok(DecomposeOutcome::TwExceeds(k));
    };
    let forgotten = forgotten_map(&partial, n);
    for comp in connected_components(g, &covered) {
        let mut nb: VertexSet = comp.iter().flat_map(|&v| g.neighbors(v).iter().copied()).collect();
        nb = minus(&sorted(nb), &comp);
        if comp.len() >= threshold || nb.len() > 4 * k + 3 {
            return invariant(format!("leftover component of size {} with {} neighbours", comp.len(), nb.len()));
        }
        let Some(host) = locate_bag_containing(&partial, &forgotten, &nb) else {
            return invariant("leftover neighbourhood not inside a bag");
        };
        let verts = union(&comp, &nb);
        let (h, back) = g.induced_subgraph(&verts);
        let local_s0: VertexSet = nb.iter().map(|v| verts.binary_search(v).unwrap()).collect();
        match alg_alpha(alpha - 1, &h, k, &local_s0, config)? {
            DecomposeOutcome::Decomposition(sub) => {
                partial.attach(host, &sub.relabel(&back));
            }
            rejected => return Ok(rejected),
        }
    }
    Ok(DecomposeOutcome::Decomposition(partial))
}

/// The table cost is exponential in the width, so a cheap elimination
/// ordering replaces `td` whenever it is narrower.
fn narrowed(g: &Graph, td: &TreeDecomposition) -> TreeDecomposition {
    match td.width() {
        w if w >= 1 => greedy_decomposition(g, &[], w as usize - 1).unwrap_or_else(|| td.clone()),
        _ => td.clone(),
    }
}

/// One level of the separator recursion waiting for its children.
struct Frame {
    old_s: VertexSet,
    old_pin: usize,
    old_w: WhatSep,
    entry: StateSnapshot,
    pins: Vec<usize>,
    bags: Vec<VertexSet>,
    next: usize,
    attach: usize,
}

enum Entered {
    Rejected,
    Leaf,
    Frame(Frame),
}

#[derive(Clone, Copy)]
enum Recursion {
    Full { s_limit: usize },
    Partial { threshold: usize },
}

fn set_s(ds: &mut DsState, target: &[usize]) -> Result<(), DsError> {
    for v in ds.get_s() {
        if target.binary_search(&v).is_err() {
            ds.remove(SetName::S, v)?;
        }
    }
    for &v in target {
        ds.insert(SetName::S, v)?;
    }
    Ok(())
}

fn enter(
    ds: &mut DsState,
    mode: Recursion,
    out: &mut Option<TreeDecomposition>,
    parent: Option<usize>,
) -> Result<Entered, DecomposeError> {
    let k = ds.k();
    let entry = ds.snapshot();
    let old_w = ds.whatsep();
    let Some(old_pin) = entry.pin else { return invariant("no pin at recursion entry") };
    if !entry.x.is_empty() || !entry.f.is_empty() {
        return invariant("X and F must be empty at recursion entry");
    }
    let limit = match (mode, old_w) {
        (Recursion::Full { s_limit }, _) => s_limit,
        (Recursion::Partial { .. }, WhatSep::S) => 4 * k + 3,
        (Recursion::Partial { .. }, WhatSep::U) => 3 * k + 2,
    };
    if entry.s.len() > limit {
        return invariant(format!("|S| = {} exceeds {limit}", entry.s.len()));
    }
    let sep = match (mode, old_w) {
        (Recursion::Full { .. }, _) => ds.find_s_separator()?,
        (Recursion::Partial { .. }, WhatSep::S) => {
            ds.set_whatsep(WhatSep::U);
            ds.find_s_separator()?
        }
        (Recursion::Partial { .. }, WhatSep::U) => {
            ds.set_whatsep(WhatSep::S);
            ds.find_u_separator()?
        }
    };
    let Some(mut sep) = sep else {
        ds.set_whatsep(old_w);
        return Ok(Entered::Rejected);
    };
    if let Recursion::Full { .. } = mode {
        sep = union(&sep, &[old_pin]);
    }
    for &v in &sep {
        ds.insert(SetName::X, v)?;
    }
    let mut pins = Vec::new();
    while let Some((u, size)) = ds.find_next_pin()? {
        if let Recursion::Partial { threshold } = mode {
            if size < threshold {
                break;
            }
        }
        pins.push(u);
        ds.insert(SetName::F, u)?;
    }
    ds.clear(SetName::X)?;
    ds.clear(SetName::F)?;
    let root = push_node(out, entry.s.clone(), parent);
    let attach = push_node(out, union(&entry.s, &sep), Some(root));
    if pins.is_empty() {
        ds.set_whatsep(old_w);
        return Ok(Entered::Leaf);
    }
    ds.set_pin(pins[0])?;
    for &v in &sep {
        ds.insert(SetName::S, v)?;
    }
    let mut bags = Vec::with_capacity(pins.len());
    for &u in &pins {
        ds.set_pin(u)?;
        match ds.find_neighborhood()? {
            Some(b) => bags.push(b),
            None => return invariant("component neighbourhood exceeds 4k+3"),
        }
    }
    Ok(Entered::Frame(Frame { old_s: entry.s.clone(), old_pin, old_w, entry, pins, bags, next: 0, attach }))
}

fn leave(ds: &mut DsState, frame: &Frame) -> Result<(), DecomposeError> {
    ds.set_whatsep(frame.old_w);
    set_s(ds, &frame.old_s)?;
    ds.set_pin(frame.old_pin)?;
    if ds.snapshot() != frame.entry || ds.whatsep() != frame.old_w {
        return invariant("data structure state not restored");
    }
    Ok(())
}

fn recurse(ds: &mut DsState, mode: Recursion) -> Result<Option<TreeDecomposition>, DecomposeError> {
    let mut out = None;
    let mut stack = match enter(ds, mode, &mut out, None)? {
        Entered::Rejected => return Ok(None),
        Entered::Leaf => return Ok(out),
        Entered::Frame(f) => vec![f],
    };
    while let Some(top) = stack.last_mut() {
        if top.next < top.pins.len() {
            let i = top.next;
            top.next += 1;
            let (u, bag, attach) = (top.pins[i], top.bags[i].clone(), top.attach);
            ds.set_pin(u)?;
            set_s(ds, &bag)?;
            match enter(ds, mode, &mut out, Some(attach))? {
                Entered::Rejected => {
                    while let Some(frame) = stack.pop() {
                        leave(ds, &frame)?;
                    }
                    return Ok(None);
                }
                Entered::Leaf => {}
                Entered::Frame(f) => stack.push(f),
            }
        } else {
            let frame = stack.pop().unwrap();
            leave(ds, &frame)?;
        }
    }
    Ok(out)
}

/// Decomposition of `G[S ∪ U]` of width `3k+4` with root bag `S`, or `None`
/// when `tw > k`. The state is restored on return.
pub fn find_td(ds: &mut DsState) -> Result<Option<TreeDecomposition>, DecomposeError> {
    let limit = 2 * ds.k() + 3;
    find_td_bounded(ds, limit)
}

fn find_td_bounded(ds: &mut DsState, s_limit: usize) -> Result<Option<TreeDecomposition>, DecomposeError> {
    recurse(ds, Recursion::Full { s_limit })
}

/// Partial decomposition of `G[S ∪ U]` with root bag `S`; components
/// smaller than `threshold` are left uncovered. `None` when `tw > k`.
pub fn find_partial_td(ds: &mut DsState, threshold: usize) -> Result<Option<PartialResult>, DecomposeError> {
    let Some(partial) = recurse(ds, Recursion::Partial { threshold })? else { return Ok(None) };
    let mut covered: VertexSet = partial.bags().iter().flatten().copied().collect();
    covered = sorted(covered);
    Ok(Some(PartialResult { partial, covered }))
}

fn decompose_connected(g: &Graph, k: usize, mode: Mode, config: &DecomposerConfig) -> Result<DecomposeOutcome, DecomposeError> {
    match mode {
        Mode::Rs4 => rs_4approx(g, k, &[]),
        Mode::Three => alg1(g, k, &[], config),
        Mode::Five { alpha } => alg_alpha(alpha, g, k, &[], config),
    }
}

thread_local! {
    static RUN_STATS: RefCell<UpdateStats> = RefCell::new(UpdateStats::default());
}

fn absorb(ds: &DsState) {
    RUN_STATS.with(|s| s.borrow_mut().merge(&ds.stats()));
}

/// Runs the chosen pipeline per connected component and checks the result
/// against the graph and the mode's width bound.
pub fn approximate(g: &Graph, k: usize, mode: Mode, config: &DecomposerConfig) -> Result<DecomposeOutcome, DecomposeError> {
    approximate_with_stats(g, k, mode, config).map(|(out, _)| out)
}

/// `approximate` together with the update counters summed over every data
/// structure the run built.
pub fn approximate_with_stats(
    g: &Graph,
    k: usize,
    mode: Mode,
    config: &DecomposerConfig,
) -> Result<(DecomposeOutcome, UpdateStats), DecomposeError> {
    let stack = config.stack_size;
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(stack)
            .spawn_scoped(scope, || {
                RUN_STATS.with(|s| *s.borrow_mut() = UpdateStats::default());
                let out = approximate_here(g, k, mode, config)?;
                Ok((out, RUN_STATS.with(|s| *s.borrow())))
            })
            .expect("spawn worker thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

fn approximate_here(g: &Graph, k: usize, mode: Mode, config: &DecomposerConfig) -> Result<DecomposeOutcome, DecomposeError> {
    let comps = connected_components(g, &[]);
    let td = if comps.len() == 1 {
        match decompose_connected(g, k, mode, config)? {
            DecomposeOutcome::Decomposition(td) => td,
            rejected => return Ok(rejected),
        }
    } else {
        let mut td = TreeDecomposition::single(Vec::new());
        for comp in comps {
            let (h, back) = g.induced_subgraph(&comp);
            match decompose_connected(&h, k, mode, config)? {
                DecomposeOutcome::Decomposition(sub) => {
                    td.attach(0, &sub.relabel(&back));
                }
                rejected => return Ok(rejected),
            }
        }
        td
    };
    if let Err(v) = validate(g, &td) {
        return invariant(format!("invalid decomposition: {v}"));
    }
    if td.width() > mode.width_bound(k) as isize {
        return invariant(format!("width {} exceeds {}", td.width(), mode.width_bound(k)));
    }
    Ok(DecomposeOutcome::Decomposition(td))
}

/// Smallest `k` on a doubling-then-bisection schedule for which the mode
/// returns a decomposition, together with it. The returned `k` was preceded
/// by a rejection at `k - 1` (unless it is `0`), which certifies
/// `tw(g) ≥ k`.
pub fn search_min_k(g: &Graph, mode: Mode, config: &DecomposerConfig) -> Result<(usize, TreeDecomposition), DecomposeError> {
    let mut failed: Option<usize> = None;
    let mut k = 0;
    let (mut hi, mut best) = loop {
        match approximate(g, k, mode, config)? {
            DecomposeOutcome::Decomposition(td) => break (k, td),
            DecomposeOutcome::TwExceeds(_) => {
                failed = Some(k);
                k = if k == 0 { 1 } else { 2 * k };
            }
        }
    };
    let Some(mut lo) = failed else { return Ok((hi, best)) };
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        match approximate(g, mid, mode, config)? {
            DecomposeOutcome::Decomposition(td) => {
                hi = mid;
                best = td;
            }
            DecomposeOutcome::TwExceeds(_) => lo = mid,
        }
    }
    Ok((hi, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_treewidth;
    use crate::generators::{complete_graph, cycle_graph, grid_graph, path_graph};

    fn cfg() -> DecomposerConfig {
        DecomposerConfig::default()
    }

    #[test]
    fn rs4_examples() {
        let tree = Graph::from_edges_lossy(30, (1..30).map(|i| ((i - 1) / 2, i)));
        let td = rs_4approx(&tree, 1, &[]).unwrap().into_decomposition().unwrap();
        validate(&tree, &td).unwrap();
        assert!(td.width() <= 7);
        assert!(rs_4approx(&complete_graph(2), 0, &[]).unwrap().is_rejection());
        let c9 = cycle_graph(9);
        let td = rs_4approx(&c9, 2, &[0, 4]).unwrap().into_decomposition().unwrap();
        validate(&c9, &td).unwrap();
        assert!(td.width() <= 11);
        assert!(td.bag(td.root()).contains(&0) && td.bag(td.root()).contains(&4));
    }

    #[test]
    fn alg1_examples() {
        let tree = Graph::from_edges_lossy(40, (1..40).map(|i| ((i - 1) / 3, i)));
        let td = alg1(&tree, 1, &[], &cfg()).unwrap().into_decomposition().unwrap();
        validate(&tree, &td).unwrap();
        assert!(td.width() <= 7);
        let grid = grid_graph(4, 4);
        let td = alg1(&grid, 4, &[], &cfg()).unwrap().into_decomposition().unwrap();
        validate(&grid, &td).unwrap();
        assert!(td.width() <= 16);
        assert!(alg1(&complete_graph(6), 2, &[], &cfg()).unwrap().is_rejection());
    }

    #[test]
    fn compress1_examples() {
        let p = path_graph(20);
        let bags = (0..19).map(|i| vec![i, i + 1]).collect();
        let parents = (0..19).map(|i: usize| i.checked_sub(1)).collect();
        let chain = TreeDecomposition::from_parents(bags, parents).unwrap();
        let td = compress1(&p, 1, &[0, 1], &chain, &cfg()).unwrap().into_decomposition().unwrap();
        validate(&p, &td).unwrap();
        assert!(td.width() <= 7);
        assert_eq!(td.bag(td.root()), &[0, 1]);

        let c8 = cycle_graph(8);
        let apx = crate::exact::exact_decomposition(&c8).unwrap();
        let td = compress1(&c8, 2, &[], &apx, &cfg()).unwrap().into_decomposition().unwrap();
        validate(&c8, &td).unwrap();
        assert!(td.width() <= 10);

        let k5 = complete_graph(5);
        let one = TreeDecomposition::single((0..5).collect());
        assert!(compress1(&k5, 1, &[], &one, &cfg()).unwrap().is_rejection());
    }

    #[test]
    fn find_td_restores_state() {
        let g = grid_graph(3, 6);
        let apx = crate::generators::grid_decomposition(3, 6);
        let mut ds = DsState::new(&g, 3, &apx, &[0, 1], DsConfig::default()).unwrap();
        let before = ds.snapshot();
        let td = find_td(&mut ds).unwrap().unwrap();
        assert_eq!(ds.snapshot(), before);
        assert_eq!(td.bag(td.root()), &[0, 1]);
        validate(&g, &td).unwrap();
        assert!(td.len() <= 2 * g.n());
    }

    #[test]
    fn five_examples() {
        let grid = grid_graph(3, 20);
        let td = alg_alpha(2, &grid, 3, &[], &cfg()).unwrap().into_decomposition().unwrap();
        validate(&grid, &td).unwrap();
        assert!(td.width() <= 19);
        let empty = Graph::empty(9);
        let out = approximate(&empty, 0, Mode::Five { alpha: 2 }, &cfg()).unwrap();
        assert!(out.decomposition().unwrap().width() <= 0);
    }

    #[test]
    fn approximate_handles_forests() {
        let forest = Graph::from_edges_lossy(12, [(0, 1), (1, 2), (3, 4), (5, 6), (6, 7), (7, 8)]);
        let td = approximate(&forest, 1, Mode::Three, &cfg()).unwrap().into_decomposition().unwrap();
        assert!(td.width() <= 7);
        assert!(td.bag(td.root()).is_empty());
        let k4 = complete_graph(4);
        let td = approximate(&k4, 3, Mode::Rs4, &cfg()).unwrap().into_decomposition().unwrap();
        assert!(td.width() <= 15);
    }

    #[test]
    fn search_examples() {
        let tree = Graph::from_edges_lossy(15, (1..15).map(|i| ((i - 1) / 2, i)));
        assert_eq!(search_min_k(&tree, Mode::Three, &cfg()).unwrap().0, 1);
        let (k, td) = search_min_k(&complete_graph(5), Mode::Three, &cfg()).unwrap();
        assert!((2..=4).contains(&k));
        assert!(td.width() <= (3 * k + 4) as isize);
        let grid = grid_graph(3, 3);
        let (k, td) = search_min_k(&grid, Mode::Five { alpha: 2 }, &cfg()).unwrap();
        assert!(k <= 3);
        assert!(td.width() <= (5 * k + 4) as isize);
        if k > 0 {
            assert!(exact_treewidth(&grid).unwrap() > k - 1);
        }
    }
}
