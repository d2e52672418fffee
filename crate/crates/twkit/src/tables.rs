//! The dynamic separator structure.
//!
//! State `(S, X, F, pin, whatsep)` lives over a nice decomposition,
//! rebalanced to logarithmic depth when the input is deep. Every table
//! entry is indexed by a node and a signature (the roles of the bag
//! vertices), optionally extended by an interface.
//! Entries are filled on demand from the children by the case formulas and
//! memoised per node. A vertex `v` influences entries only at the nodes on
//! the path from the node forgetting `v` to the root, so an update drops the
//! memo on exactly that path.
//!
//! Tables: `C` (connectivity of the active component below a node, with
//! `CardU`), `T1` (neighbourhood in `S`), `T2` (balanced S-separators),
//! `T3` (largest unmarked component) and `T4` (pushed separations).

use std::collections::BTreeSet;
use std::rc::Rc;

use rustc_hash::{FxHashMap, FxHashSet};
use smallvec::SmallVec;
use thiserror::Error;

use crate::exact::{active_component, brute_u_separator};
use crate::graph::{Graph, VertexSet};
use crate::td::{ceil_log2, rebalance_log_depth, shrink_bags, to_nice, validate, NiceTreeDecomposition, NodeKind, TreeDecomposition};

/// Largest bag the tables accept; signatures are 64-bit position masks.
pub const MAX_BAG: usize = 63;

/// Memos up to this size are cleared in place, larger ones are freed.
const SMALL_MEMO: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DsError {
    #[error("decomposition width {width} exceeds the table cap {cap}")]
    WidthTooLarge { width: usize, cap: usize },
    #[error("vertex {0} cannot be the pin while it is in S")]
    PinInS(usize),
    #[error("query requires a pin")]
    NoPin,
    #[error("the approximate decomposition is invalid: {0}")]
    InvalidDecomposition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhatSep {
    S,
    U,
}

/// The caller-visible state, used for rollback checks and by the oracle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StateSnapshot {
    pub s: VertexSet,
    pub x: VertexSet,
    pub f: VertexSet,
    pub pin: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetName {
    S,
    X,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Update {
    Insert(SetName, usize),
    Remove(SetName, usize),
    SetPin(usize),
    Clear(SetName),
    SetWhatsep(WhatSep),
}

#[derive(Clone, Copy, Debug)]
pub struct DsConfig {
    /// Largest accepted width of the nice decomposition.
    pub width_cap: usize,
    /// `|U|` below which the U-separator query searches explicitly;
    /// `None` selects `36(k+t+2)`.
    pub small_u_threshold: Option<usize>,
    /// Largest number of candidate sets the explicit search may visit before
    /// the table route is tried first.
    pub brute_budget: u64,
    /// When to rebalance the input decomposition to logarithmic depth.
    pub rebalance: Rebalance,
    /// Stored entries above which all memos are dropped.
    pub memo_cap: usize,
}

/// Rebalancing roughly triples the width, and table sizes are exponential
/// in the width, so by default it only happens for deep inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rebalance {
    Always,
    Never,
    /// Rebalance when the depth exceeds `factor * ceil(log2(N + 1))`.
    Deeper { factor: usize },
}

impl Default for DsConfig {
    fn default() -> Self {
        DsConfig { width_cap: 48, small_u_threshold: None, brute_budget: 2_000_000, rebalance: Rebalance::Deeper { factor: 8 }, memo_cap: 4_000_000 }
    }
}

/// Update counters. `recomputed` counts nodes whose tables an update
/// invalidated; `entries` counts table entries evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UpdateStats {
    pub updates: u64,
    pub pin_updates: u64,
    pub recomputed: u64,
    pub last_recomputed: usize,
    pub max_recomputed: usize,
    pub locality_violations: u64,
    pub entries: u64,
    pub flushes: u64,
    /// Largest number of memoised entries seen at a query boundary.
    pub peak_entries: usize,
}

impl UpdateStats {
    /// Accumulates counters of another structure; maxima are combined.
    pub fn merge(&mut self, other: &UpdateStats) {
        self.updates += other.updates;
        self.pin_updates += other.pin_updates;
        self.recomputed += other.recomputed;
        self.last_recomputed = other.last_recomputed;
        self.max_recomputed = self.max_recomputed.max(other.max_recomputed);
        self.locality_violations += other.locality_violations;
        self.entries += other.entries;
        self.flushes += other.flushes;
        self.peak_entries = self.peak_entries.max(other.peak_entries);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Sig {
    pub s: u64,
    pub u: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct T2Key {
    sig: Sig,
    m: [u64; 3],
    count: [u8; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Sig4 {
    s: u64,
    u: u64,
    x: u64,
    f: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct T4Key {
    pub sig: Sig,
    pub l: u64,
    pub r: u64,
    pub x: u8,
}

/// Connectivity of `U^ext` restricted to the bag: classes as position
/// masks sorted by lowest position, plus `|U^ext ∩ W_i|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CEntry {
    pub classes: Classes,
    pub card: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum T1Entry {
    Invalid,
    Overflow,
    List(VertexSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T3Entry {
    /// Classes of `U_i ∖ X_i` with the number of forgotten vertices in the
    /// component, `None` when the component meets `F`.
    pub classes: Vec<(u64, Option<u32>)>,
    /// Largest component lying wholly below the node, avoiding `F`.
    pub champion: Option<(usize, u32)>,
}

/// Classes of a bag partition as position masks.
pub type Classes = SmallVec<[u64; 6]>;

pub type T4Value = Option<u32>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Role {
    S,
    U,
    Out,
}

#[derive(Default)]
struct NodeMemo {
    c: FxHashMap<Sig, Option<CEntry>>,
    t1: FxHashMap<Sig, T1Entry>,
    t2: FxHashMap<T2Key, Option<Rc<Vec<usize>>>>,
    t3: FxHashMap<Sig4, Option<Rc<T3Entry>>>,
    t4: FxHashMap<T4Key, T4Value>,
}

impl NodeMemo {
    fn len(&self) -> usize {
        self.c.len() + self.t1.len() + self.t2.len() + self.t3.len() + self.t4.len()
    }

    fn clear(&mut self) {
        self.c.clear();
        self.t1.clear();
        self.t2.clear();
        self.t3.clear();
        self.t4.clear();
    }
}

/// Lookup context for the path program seeded at a traced node.
struct PathCtx<'p> {
    on_path: &'p FxHashSet<usize>,
    start: usize,
    seed_sig: Sig,
    seed_l: u64,
    seed_r: u64,
    memo: FxHashMap<(usize, T4Key), T4Value>,
}

#[inline]
fn remove_bit(m: u64, p: usize) -> u64 {
    let low = m & ((1u64 << p) - 1);
    let high = if p + 1 >= 64 { 0 } else { (m >> (p + 1)) << p };
    low | high
}

#[inline]
fn insert_bit(m: u64, p: usize, b: bool) -> u64 {
    let low = m & ((1u64 << p) - 1);
    low | ((b as u64) << p) | ((m >> p) << (p + 1))
}

fn canonical(mut classes: Classes) -> Classes {
    classes.sort_unstable_by_key(|c| c.trailing_zeros());
    classes
}

fn close_classes(a: &[u64], b: &[u64]) -> Classes {
    let mut out = Classes::with_capacity(a.len());
    for &c in a.iter().chain(b) {
        let mut merged = c;
        let mut i = 0;
        while i < out.len() {
            if out[i] & merged != 0 {
                merged |= out.swap_remove(i);
                i = 0;
            } else {
                i += 1;
            }
        }
        out.push(merged);
    }
    canonical(out)
}

pub struct DsState<'g> {
    g: &'g Graph,
    k: usize,
    ntd: NiceTreeDecomposition,
    config: DsConfig,
    ell: usize,
    depth: usize,
    live: usize,
    in_s: Vec<bool>,
    in_x: Vec<bool>,
    in_f: Vec<bool>,
    s_set: BTreeSet<usize>,
    x_set: BTreeSet<usize>,
    f_set: BTreeSet<usize>,
    pin: Option<usize>,
    whatsep: WhatSep,
    forget_node: Vec<usize>,
    pos: Vec<usize>,
    pin_below: Vec<bool>,
    s_below: Vec<u32>,
    memo: Vec<Option<Box<NodeMemo>>>,
    stats: UpdateStats,
}

impl<'g> DsState<'g> {
    /// Builds the structure over a nice form of `td_apx`, with
    /// `S = s0` and the pin at the smallest vertex outside `s0`.
    pub fn new(g: &'g Graph, k: usize, td_apx: &TreeDecomposition, s0: &[usize], config: DsConfig) -> Result<Self, DsError> {
        if cfg!(debug_assertions) {
            validate(g, td_apx).map_err(|e| DsError::InvalidDecomposition(e.to_string()))?;
        }
        let cap = config.width_cap.min(MAX_BAG - 1);
        let thin = shrink_bags(g, td_apx);
        let mut ntd = to_nice(g, &thin);
        let deep = match config.rebalance {
            Rebalance::Always => true,
            Rebalance::Never => false,
            Rebalance::Deeper { factor } => thin.depth() > factor * ceil_log2(thin.len() + 1),
        };
        if deep {
            let balanced = to_nice(g, &shrink_bags(g, &rebalance_log_depth(&thin)));
            if balanced.width().max(0) as usize <= cap {
                ntd = balanced;
            }
        }
        let width = ntd.width().max(0) as usize;
        if width > cap {
            return Err(DsError::WidthTooLarge { width, cap });
        }
        let n = g.n();
        let nodes = ntd.len();
        let mut forget_node = vec![usize::MAX; n];
        let mut pos = vec![0usize; nodes];
        for i in 0..nodes {
            match ntd.kind(i) {
                NodeKind::Introduce(v) => pos[i] = ntd.bag(i).binary_search(&v).unwrap(),
                NodeKind::Forget(w) => {
                    forget_node[w] = i;
                    pos[i] = ntd.bag(ntd.children(i)[0]).binary_search(&w).unwrap();
                }
                _ => {}
            }
        }
        let depth = ntd.depth();
        let mut ds = DsState {
            g,
            k,
            ntd,
            config,
            ell: 4 * k + 3,
            depth,
            live: 0,
            in_s: vec![false; n],
            in_x: vec![false; n],
            in_f: vec![false; n],
            s_set: BTreeSet::new(),
            x_set: BTreeSet::new(),
            f_set: BTreeSet::new(),
            pin: None,
            whatsep: WhatSep::S,
            forget_node,
            pos,
            pin_below: vec![false; nodes],
            s_below: vec![0; nodes],
            memo: (0..nodes).map(|_| None).collect(),
            stats: UpdateStats::default(),
        };
        for &v in s0 {
            ds.in_s[v] = true;
            ds.s_set.insert(v);
            for i in ds.path(v) {
                ds.s_below[i] += 1;
            }
        }
        if let Some(p) = (0..n).find(|&v| !ds.in_s[v]) {
            ds.pin = Some(p);
            for i in ds.path(p) {
                ds.pin_below[i] = true;
            }
        }
        Ok(ds)
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nice(&self) -> &NiceTreeDecomposition {
        &self.ntd
    }

    /// Width of the nice decomposition the tables live on.
    pub fn table_width(&self) -> usize {
        self.ntd.width().max(0) as usize
    }

    pub fn stats(&self) -> UpdateStats {
        UpdateStats { peak_entries: self.stats.peak_entries.max(self.live), ..self.stats }
    }

    pub fn neighborhood_bound(&self) -> usize {
        self.ell
    }

    pub fn get_s(&self) -> VertexSet {
        self.s_set.iter().copied().collect()
    }

    pub fn s_len(&self) -> usize {
        self.s_set.len()
    }

    pub fn get_x(&self) -> VertexSet {
        self.x_set.iter().copied().collect()
    }

    pub fn get_f(&self) -> VertexSet {
        self.f_set.iter().copied().collect()
    }

    pub fn get_pin(&self) -> Option<usize> {
        self.pin
    }

    pub fn whatsep(&self) -> WhatSep {
        self.whatsep
    }

    pub fn in_s(&self, v: usize) -> bool {
        self.in_s[v]
    }

    pub fn snapshot(&self) -> StateSnapshot {
        StateSnapshot { s: self.get_s(), x: self.get_x(), f: self.get_f(), pin: self.pin }
    }

    /// Nodes from the one forgetting `v` up to the root.
    fn path(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = Some(self.forget_node[v]);
        while let Some(i) = cur {
            out.push(i);
            cur = self.ntd.parent(i);
        }
        out
    }

    fn invalidate(&mut self, v: usize, only_t3: bool) -> usize {
        let path = self.path(v);
        for &i in &path {
            if only_t3 {
                if let Some(m) = self.memo[i].as_mut() {
                    self.live -= m.t3.len();
                    m.t3.clear();
                }
            } else if let Some(m) = self.memo[i].as_mut() {
                let len = m.len();
                self.live -= len;
                if len > SMALL_MEMO {
                    self.memo[i] = None;
                } else {
                    m.clear();
                }
            }
        }
        path.len()
    }

    fn record(&mut self, nodes: usize, pin: bool) {
        self.stats.updates += 1;
        self.stats.recomputed += nodes as u64;
        self.stats.last_recomputed = nodes;
        self.stats.max_recomputed = self.stats.max_recomputed.max(nodes);
        let bound = (self.depth + 1) * if pin { 2 } else { 1 };
        if pin {
            self.stats.pin_updates += 1;
        }
        if nodes > bound {
            self.stats.locality_violations += 1;
        }
    }

    pub fn apply(&mut self, update: Update) -> Result<(), DsError> {
        match update {
            Update::Insert(set, v) => self.set_member(set, v, true),
            Update::Remove(set, v) => self.set_member(set, v, false),
            Update::SetPin(v) => self.set_pin(v),
            Update::Clear(set) => {
                let members: Vec<usize> = match set {
                    SetName::S => self.get_s(),
                    SetName::X => self.get_x(),
                    SetName::F => self.get_f(),
                };
                for v in members {
                    self.set_member(set, v, false)?;
                }
                Ok(())
            }
            Update::SetWhatsep(w) => {
                self.whatsep = w;
                Ok(())
            }
        }
    }

    pub fn insert(&mut self, set: SetName, v: usize) -> Result<(), DsError> {
        self.set_member(set, v, true)
    }

    pub fn remove(&mut self, set: SetName, v: usize) -> Result<(), DsError> {
        self.set_member(set, v, false)
    }

    pub fn clear(&mut self, set: SetName) -> Result<(), DsError> {
        self.apply(Update::Clear(set))
    }

    pub fn set_whatsep(&mut self, w: WhatSep) {
        self.whatsep = w;
    }

    fn set_member(&mut self, set: SetName, v: usize, on: bool) -> Result<(), DsError> {
        if set == SetName::S && on && self.pin == Some(v) {
            return Err(DsError::PinInS(v));
        }
        let flags = match set {
            SetName::S => &mut self.in_s,
            SetName::X => &mut self.in_x,
            SetName::F => &mut self.in_f,
        };
        if flags[v] == on {
            return Ok(());
        }
        flags[v] = on;
        let members = match set {
            SetName::S => &mut self.s_set,
            SetName::X => &mut self.x_set,
            SetName::F => &mut self.f_set,
        };
        if on {
            members.insert(v);
        } else {
            members.remove(&v);
        }
        if set == SetName::S {
            for i in self.path(v) {
                if on {
                    self.s_below[i] += 1;
                } else {
                    self.s_below[i] -= 1;
                }
            }
        }
        let nodes = self.invalidate(v, set != SetName::S);
        self.record(nodes, false);
        Ok(())
    }

    pub fn set_pin(&mut self, v: usize) -> Result<(), DsError> {
        if self.in_s[v] {
            return Err(DsError::PinInS(v));
        }
        if self.pin == Some(v) {
            return Ok(());
        }
        let mut nodes = 0;
        if let Some(old) = self.pin {
            for i in self.path(old) {
                self.pin_below[i] = false;
            }
            nodes += self.invalidate(old, false);
        }
        self.pin = Some(v);
        for i in self.path(v) {
            self.pin_below[i] = true;
        }
        nodes += self.invalidate(v, false);
        self.record(nodes, true);
        Ok(())
    }

    #[inline]
    fn memo(&mut self, i: usize) -> &mut NodeMemo {
        self.memo[i].get_or_insert_with(Default::default)
    }

    #[inline]
    fn child(&self, i: usize) -> usize {
        self.ntd.children(i)[0]
    }

    #[inline]
    fn adj(&self, i: usize, p: usize) -> u64 {
        self.ntd.bag_adjacency(i)[p]
    }

    /// No vertex of `U^ext` lies at or below `i`, so every table holds its
    /// trivial value there.
    #[inline]
    fn detached(&self, i: usize, sig: Sig) -> bool {
        sig.u == 0 && !self.pin_below[i]
    }

    /// Resolves the role of the vertex forgotten at `i` under `sig`: it is in
    /// `S`, it is the pin, or it is outside `U^ext` whenever that is
    /// consistent, otherwise inside.
    fn deduce(&mut self, i: usize, sig: Sig) -> Option<(Sig, Role)> {
        let j = self.child(i);
        let p = self.pos[i];
        let NodeKind::Forget(w) = self.ntd.kind(i) else { unreachable!() };
        let with = |s: bool, u: bool| Sig { s: insert_bit(sig.s, p, s), u: insert_bit(sig.u, p, u) };
        if self.in_s[w] {
            let cs = with(true, false);
            return self.c(j, cs).map(|_| (cs, Role::S));
        }
        if self.pin == Some(w) {
            let cs = with(false, true);
            return self.c(j, cs).map(|_| (cs, Role::U));
        }
        let out = with(false, false);
        if self.c(j, out).is_some() {
            return Some((out, Role::Out));
        }
        let inside = with(false, true);
        self.c(j, inside).map(|_| (inside, Role::U))
    }

    /// Entry of table `C` (and `CardU`) at node `i`; `None` is bottom.
    pub fn c(&mut self, i: usize, sig: Sig) -> Option<CEntry> {
        if self.detached(i, sig) {
            return Some(CEntry { classes: Classes::new(), card: 0 });
        }
        if let Some(e) = self.memo[i].as_ref().and_then(|m| m.c.get(&sig)) {
            return e.clone();
        }
        self.stats.entries += 1;
        let value = self.compute_c(i, sig);
        self.memo(i).c.insert(sig, value.clone());
        self.live += 1;
        value
    }

    fn compute_c(&mut self, i: usize, sig: Sig) -> Option<CEntry> {
        match self.ntd.kind(i) {
            NodeKind::Leaf => (sig == Sig::default()).then(|| CEntry { classes: Classes::new(), card: 0 }),
            NodeKind::Introduce(_) => {
                let p = self.pos[i];
                let bit = 1u64 << p;
                let child_sig = Sig { s: remove_bit(sig.s, p), u: remove_bit(sig.u, p) };
                let j = self.child(i);
                let adj = self.adj(i, p);
                if sig.s & bit != 0 {
                    let e = self.c(j, child_sig)?;
                    return Some(lift(e, p));
                }
                if sig.u & bit != 0 {
                    if sig.u == bit && self.pin_below[i] {
                        return None;
                    }
                    if adj & !(sig.s | sig.u) != 0 {
                        return None;
                    }
                    let e = lift(self.c(j, child_sig)?, p);
                    let mut merged = bit;
                    let mut rest = Classes::with_capacity(e.classes.len());
                    for c in e.classes {
                        if c & adj != 0 {
                            merged |= c;
                        } else {
                            rest.push(c);
                        }
                    }
                    rest.push(merged);
                    return Some(CEntry { classes: canonical(rest), card: e.card });
                }
                if adj & sig.u != 0 {
                    return None;
                }
                Some(lift(self.c(j, child_sig)?, p))
            }
            NodeKind::Forget(_) => {
                let (child_sig, role) = self.deduce(i, sig)?;
                let j = self.child(i);
                let p = self.pos[i];
                let bit = 1u64 << p;
                let e = self.c(j, child_sig)?;
                if role == Role::U && sig.u != 0 && e.classes.contains(&bit) {
                    return None;
                }
                let classes = e.classes.iter().map(|&c| remove_bit(c, p)).filter(|&c| c != 0).collect();
                Some(CEntry { classes: canonical(classes), card: e.card + (role == Role::U) as u32 })
            }
            NodeKind::Join => {
                let (a, b) = (self.ntd.children(i)[0], self.ntd.children(i)[1]);
                let e1 = self.c(a, sig)?;
                let e2 = self.c(b, sig)?;
                Some(CEntry { classes: close_classes(&e1.classes, &e2.classes), card: e1.card + e2.card })
            }
        }
    }

    /// Entry of table `T1`: `N(U^ext) ∩ S^ext` bounded by `4k+3`.
    pub fn t1(&mut self, i: usize, sig: Sig) -> T1Entry {
        if self.detached(i, sig) {
            return T1Entry::List(Vec::new());
        }
        if let Some(e) = self.memo[i].as_ref().and_then(|m| m.t1.get(&sig)) {
            return e.clone();
        }
        self.stats.entries += 1;
        let value = if self.c(i, sig).is_none() { T1Entry::Invalid } else { self.compute_t1(i, sig) };
        self.memo(i).t1.insert(sig, value.clone());
        self.live += 1;
        value
    }

    fn compute_t1(&mut self, i: usize, sig: Sig) -> T1Entry {
        let push = |list: &mut VertexSet, v: usize| {
            if let Err(at) = list.binary_search(&v) {
                list.insert(at, v);
            }
        };
        match self.ntd.kind(i) {
            NodeKind::Leaf => T1Entry::List(Vec::new()),
            NodeKind::Introduce(v) => {
                let p = self.pos[i];
                let bit = 1u64 << p;
                let child_sig = Sig { s: remove_bit(sig.s, p), u: remove_bit(sig.u, p) };
                let j = self.child(i);
                let base = self.t1(j, child_sig);
                let T1Entry::List(mut list) = base else { return base };
                let adj = self.adj(i, p);
                if sig.s & bit != 0 && adj & sig.u != 0 {
                    push(&mut list, v);
                } else if sig.u & bit != 0 {
                    let mut m = adj & sig.s;
                    while m != 0 {
                        let q = m.trailing_zeros() as usize;
                        m &= m - 1;
                        push(&mut list, self.ntd.bag(i)[q]);
                    }
                }
                if list.len() > self.ell {
                    T1Entry::Overflow
                } else {
                    T1Entry::List(list)
                }
            }
            NodeKind::Forget(_) => match self.deduce(i, sig) {
                Some((child_sig, _)) => self.t1(self.child(i), child_sig),
                None => T1Entry::Invalid,
            },
            NodeKind::Join => {
                let (a, b) = (self.ntd.children(i)[0], self.ntd.children(i)[1]);
                let (e1, e2) = (self.t1(a, sig), self.t1(b, sig));
                match (e1, e2) {
                    (T1Entry::List(mut l1), T1Entry::List(l2)) => {
                        for v in l2 {
                            push(&mut l1, v);
                        }
                        if l1.len() > self.ell {
                            T1Entry::Overflow
                        } else {
                            T1Entry::List(l1)
                        }
                    }
                    (T1Entry::Invalid, _) | (_, T1Entry::Invalid) => T1Entry::Invalid,
                    _ => T1Entry::Overflow,
                }
            }
        }
    }

    /// `T2` budgets must cover the `S` vertices forgotten below.
    fn t2_feasible(&self, i: usize, key: &T2Key) -> bool {
        let budget: usize = key.count.iter().map(|&c| c as usize).sum();
        self.s_below[i] as usize <= budget
    }

    /// Entry of table `T2`: the separator part below `i` of a consistent
    /// 3-colouring with the given bag interface, using at most `count[j]`
    /// forgotten `S` vertices in class `j` and at most `count[3]` forgotten
    /// separator vertices; `None` if there is none.
    fn t2(&mut self, i: usize, key: T2Key) -> Option<Rc<Vec<usize>>> {
        if self.s_below[i] == 0 && self.detached(i, key.sig) {
            let adj = self.ntd.bag_adjacency(i);
            let crossing = (0..3).any(|a| {
                let others = key.m[(a + 1) % 3] | key.m[(a + 2) % 3];
                let mut m = key.m[a];
                while m != 0 {
                    let p = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if adj[p] & others != 0 {
                        return true;
                    }
                }
                false
            });
            return (!crossing).then(|| Rc::new(Vec::new()));
        }
        if let Some(e) = self.memo[i].as_ref().and_then(|m| m.t2.get(&key)) {
            return e.clone();
        }
        self.stats.entries += 1;
        let value = if self.t2_feasible(i, &key) && self.c(i, key.sig).is_some() {
            self.compute_t2(i, key)
        } else {
            None
        };
        self.memo(i).t2.insert(key, value.clone());
        self.live += 1;
        value
    }

    fn compute_t2(&mut self, i: usize, key: T2Key) -> Option<Rc<Vec<usize>>> {
        match self.ntd.kind(i) {
            NodeKind::Leaf => Some(Rc::new(Vec::new())),
            NodeKind::Introduce(_) => {
                let p = self.pos[i];
                let bit = 1u64 << p;
                let adj = self.adj(i, p);
                for a in 0..3 {
                    if key.m[a] & bit != 0 {
                        let others = key.m[(a + 1) % 3] | key.m[(a + 2) % 3];
                        if adj & others != 0 {
                            return None;
                        }
                    }
                }
                let child = T2Key {
                    sig: Sig { s: remove_bit(key.sig.s, p), u: remove_bit(key.sig.u, p) },
                    m: key.m.map(|m| remove_bit(m, p)),
                    count: key.count,
                };
                self.t2(self.child(i), child)
            }
            NodeKind::Forget(w) => {
                let (child_sig, role) = self.deduce(i, key.sig)?;
                let j = self.child(i);
                let p = self.pos[i];
                let base = T2Key { sig: child_sig, m: key.m.map(|m| insert_bit(m, p, false)), count: key.count };
                if role == Role::Out {
                    return self.t2(j, base);
                }
                for a in 0..3 {
                    let symmetric = (0..a).any(|b| key.m[b] == key.m[a] && key.count[b] == key.count[a]);
                    if symmetric {
                        continue;
                    }
                    let mut child = base;
                    child.m[a] |= 1 << p;
                    if role == Role::S {
                        if key.count[a] == 0 {
                            continue;
                        }
                        child.count[a] -= 1;
                    }
                    if let Some(list) = self.t2(j, child) {
                        return Some(list);
                    }
                }
                if key.count[3] > 0 {
                    let mut child = base;
                    child.count[3] -= 1;
                    if let Some(list) = self.t2(j, child) {
                        let mut out = (*list).clone();
                        out.push(w);
                        return Some(Rc::new(out));
                    }
                }
                None
            }
            NodeKind::Join => {
                let (a, b) = (self.ntd.children(i)[0], self.ntd.children(i)[1]);
                let (sa, sb) = (self.s_below[a] as usize, self.s_below[b] as usize);
                // Budget beyond what a side can use is never needed there.
                let range = |c: u8| {
                    let c = c as usize;
                    let hi = c.min(sa);
                    (c.saturating_sub(sb).min(hi) as u8)..=(hi as u8)
                };
                let [m1, m2, m3, x] = key.count;
                for a1 in range(m1) {
                    for b1 in range(m2) {
                        for c1 in range(m3) {
                            for x1 in 0..=x {
                                let left = T2Key { sig: key.sig, m: key.m, count: [a1, b1, c1, x1] };
                                let right = T2Key { sig: key.sig, m: key.m, count: [m1 - a1, m2 - b1, m3 - c1, x - x1] };
                                if !self.t2_feasible(a, &left) || !self.t2_feasible(b, &right) {
                                    continue;
                                }
                                let Some(l1) = self.t2(a, left) else { continue };
                                let Some(l2) = self.t2(b, right) else { continue };
                                let mut out = (*l1).clone();
                                out.extend(l2.iter().copied());
                                return Some(Rc::new(out));
                            }
                        }
                    }
                }
                None
            }
        }
    }

    /// Entry of table `T3`.
    fn t3(&mut self, i: usize, key: Sig4) -> Option<Rc<T3Entry>> {
        if self.detached(i, Sig { s: key.s, u: key.u }) {
            return Some(Rc::new(T3Entry { classes: Vec::new(), champion: None }));
        }
        if let Some(e) = self.memo[i].as_ref().and_then(|m| m.t3.get(&key)) {
            return e.clone();
        }
        self.stats.entries += 1;
        let value = if self.c(i, Sig { s: key.s, u: key.u }).is_some() { self.compute_t3(i, key) } else { None };
        self.memo(i).t3.insert(key, value.clone());
        self.live += 1;
        value
    }

    fn compute_t3(&mut self, i: usize, key: Sig4) -> Option<Rc<T3Entry>> {
        match self.ntd.kind(i) {
            NodeKind::Leaf => Some(Rc::new(T3Entry { classes: Vec::new(), champion: None })),
            NodeKind::Introduce(_) => {
                let p = self.pos[i];
                let bit = 1u64 << p;
                let child = Sig4 {
                    s: remove_bit(key.s, p),
                    u: remove_bit(key.u, p),
                    x: remove_bit(key.x, p),
                    f: remove_bit(key.f, p),
                };
                let e = self.t3(self.child(i), child)?;
                let mut classes: Vec<(u64, Option<u32>)> =
                    e.classes.iter().map(|&(c, m)| (insert_bit(c, p, false), m)).collect();
                if key.u & bit != 0 && key.x & bit == 0 {
                    let adj = self.adj(i, p) & key.u & !key.x;
                    let mut merged = bit;
                    let mut count = if key.f & bit != 0 { None } else { Some(0u32) };
                    classes.retain(|&(c, m)| {
                        if c & adj != 0 {
                            merged |= c;
                            count = count.zip(m).map(|(a, b)| a + b);
                            false
                        } else {
                            true
                        }
                    });
                    classes.push((merged, count));
                    classes.sort_unstable_by_key(|c| c.0.trailing_zeros());
                }
                Some(Rc::new(T3Entry { classes, champion: e.champion }))
            }
            NodeKind::Forget(w) => {
                let (child_sig, role) = self.deduce(i, Sig { s: key.s, u: key.u })?;
                let p = self.pos[i];
                let bit = 1u64 << p;
                let marked_x = self.in_x[w] && role != Role::Out;
                let marked_f = self.in_f[w] && role == Role::U && !self.in_x[w];
                let child = Sig4 {
                    s: child_sig.s,
                    u: child_sig.u,
                    x: insert_bit(key.x, p, marked_x),
                    f: insert_bit(key.f, p, marked_f),
                };
                let e = self.t3(self.child(i), child)?;
                let mut champion = e.champion;
                let mut classes = Vec::with_capacity(e.classes.len());
                for &(c, m) in &e.classes {
                    if c & bit == 0 {
                        classes.push((remove_bit(c, p), m));
                    } else if c == bit {
                        if let Some(size) = m.map(|m| m + 1) {
                            if champion.is_none_or(|(_, best)| size > best) {
                                champion = Some((w, size));
                            }
                        }
                    } else {
                        classes.push((remove_bit(c, p), m.map(|m| m + 1)));
                    }
                }
                Some(Rc::new(T3Entry { classes, champion }))
            }
            NodeKind::Join => {
                let (a, b) = (self.ntd.children(i)[0], self.ntd.children(i)[1]);
                let e1 = self.t3(a, key)?;
                let e2 = self.t3(b, key)?;
                let mut out: Vec<(u64, Option<u32>)> = Vec::new();
                for &(c, m) in e1.classes.iter().chain(&e2.classes) {
                    let (mut merged, mut count) = (c, m);
                    let mut k = 0;
                    while k < out.len() {
                        if out[k].0 & merged != 0 {
                            let (oc, om) = out.swap_remove(k);
                            merged |= oc;
                            count = count.zip(om).map(|(a, b)| a + b);
                            k = 0;
                        } else {
                            k += 1;
                        }
                    }
                    out.push((merged, count));
                }
                out.sort_unstable_by_key(|c| c.0.trailing_zeros());
                let champion = match (e1.champion, e2.champion) {
                    (Some(x), Some(y)) => Some(if y.1 > x.1 { y } else { x }),
                    (x, y) => x.or(y),
                };
                Some(Rc::new(T3Entry { classes: out, champion }))
            }
        }
    }

    /// Entry of table `T4`: the largest `|R^ext ∩ W_i|` over terminal
    /// separations of `G[U^ext_i]` with the given bag roles and exactly `x`
    /// separator vertices below.
    pub fn t4(&mut self, i: usize, key: T4Key) -> T4Value {
        self.t4_in(i, key, None)
    }

    fn t4_in(&mut self, i: usize, key: T4Key, mut ctx: Option<&mut PathCtx>) -> T4Value {
        let on_path = ctx.as_ref().is_some_and(|c| c.on_path.contains(&i));
        if on_path {
            let c = ctx.as_deref_mut().unwrap();
            if i == c.start {
                let hit = key.sig == c.seed_sig && key.l == c.seed_l && key.r == c.seed_r && key.x == 0;
                return hit.then_some(0);
            }
            if let Some(&e) = c.memo.get(&(i, key)) {
                return e;
            }
        } else {
            ctx = None;
            if key.l == 0 && key.r == 0 && self.detached(i, key.sig) {
                return (key.x == 0).then_some(0);
            }
            if let Some(&e) = self.memo[i].as_ref().and_then(|m| m.t4.get(&key)) {
                return e;
            }
        }
        self.stats.entries += 1;
        let value = match self.c(i, key.sig) {
            Some(e) if key.x as u32 <= e.card => self.compute_t4(i, key, ctx.as_deref_mut()),
            _ => None,
        };
        match ctx {
            Some(c) => {
                c.memo.insert((i, key), value);
            }
            None => {
                self.memo(i).t4.insert(key, value);
                self.live += 1;
            }
        }
        value
    }

    /// The child entries a `T4` entry is maximised over, each with the
    /// amount it adds and the forgotten vertex it puts into the separator.
    fn t4_options(&mut self, i: usize, key: T4Key) -> Option<SmallVec<[(usize, T4Key, u32, Option<usize>); 3]>> {
        let mut out = SmallVec::new();
        match self.ntd.kind(i) {
            NodeKind::Leaf => {}
            NodeKind::Introduce(_) => {
                let p = self.pos[i];
                let bit = 1u64 << p;
                let adj = self.adj(i, p);
                if (key.l & bit != 0 && adj & key.r != 0) || (key.r & bit != 0 && adj & key.l != 0) {
                    return None;
                }
                let child = T4Key {
                    sig: Sig { s: remove_bit(key.sig.s, p), u: remove_bit(key.sig.u, p) },
                    l: remove_bit(key.l, p),
                    r: remove_bit(key.r, p),
                    x: key.x,
                };
                out.push((self.child(i), child, 0, None));
            }
            NodeKind::Forget(w) => {
                let (child_sig, role) = self.deduce(i, key.sig)?;
                let j = self.child(i);
                let p = self.pos[i];
                let base = T4Key { sig: child_sig, l: insert_bit(key.l, p, false), r: insert_bit(key.r, p, false), x: key.x };
                if role != Role::U {
                    out.push((j, base, 0, None));
                } else {
                    out.push((j, T4Key { l: base.l | (1 << p), ..base }, 0, None));
                    if key.x > 0 {
                        out.push((j, T4Key { x: key.x - 1, ..base }, 0, Some(w)));
                    }
                    out.push((j, T4Key { r: base.r | (1 << p), ..base }, 1, None));
                }
            }
            NodeKind::Join => unreachable!("joins split the budget"),
        }
        Some(out)
    }

    fn compute_t4(&mut self, i: usize, key: T4Key, mut ctx: Option<&mut PathCtx>) -> T4Value {
        if self.ntd.kind(i) == NodeKind::Join {
            let (a, b) = (self.ntd.children(i)[0], self.ntd.children(i)[1]);
            let mut best = None;
            for x1 in 0..=key.x {
                let Some(r1) = self.t4_in(a, T4Key { x: x1, ..key }, ctx.as_deref_mut()) else { continue };
                let Some(r2) = self.t4_in(b, T4Key { x: key.x - x1, ..key }, ctx.as_deref_mut()) else { continue };
                best = best.max(Some(r1 + r2));
            }
            return best;
        }
        if self.ntd.kind(i) == NodeKind::Leaf {
            return (key.x == 0).then_some(0);
        }
        let mut best = None;
        for (j, child, add, _) in self.t4_options(i, key)? {
            if let Some(r) = self.t4_in(j, child, ctx.as_deref_mut()) {
                best = best.max(Some(r + add));
            }
        }
        best
    }

    /// Separator vertices below `i` of a separation attaining the `T4`
    /// entry, recovered by retracing optimal choices.
    fn t4_witness(&mut self, i: usize, key: T4Key, mut ctx: Option<&mut PathCtx>) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(i, key)];
        while let Some((i, key)) = stack.pop() {
            let on_path = ctx.as_ref().is_some_and(|c| c.on_path.contains(&i));
            if on_path && ctx.as_ref().is_some_and(|c| c.start == i) {
                continue;
            }
            let mut here = if on_path { ctx.as_deref_mut() } else { None };
            let Some(value) = self.t4_in(i, key, here.as_deref_mut()) else { continue };
            match self.ntd.kind(i) {
                NodeKind::Leaf => {}
                NodeKind::Join => {
                    let (a, b) = (self.ntd.children(i)[0], self.ntd.children(i)[1]);
                    for x1 in 0..=key.x {
                        let (ka, kb) = (T4Key { x: x1, ..key }, T4Key { x: key.x - x1, ..key });
                        let r1 = self.t4_in(a, ka, here.as_deref_mut());
                        let r2 = self.t4_in(b, kb, here.as_deref_mut());
                        if let (Some(r1), Some(r2)) = (r1, r2) {
                            if r1 + r2 == value {
                                stack.push((a, ka));
                                stack.push((b, kb));
                                break;
                            }
                        }
                    }
                }
                _ => {
                    let options = self.t4_options(i, key).unwrap_or_default();
                    for (j, child, add, sep) in options {
                        if self.t4_in(j, child, here.as_deref_mut()).map(|r| r + add) == Some(value) {
                            out.extend(sep);
                            stack.push((j, child));
                            break;
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks the pin and drops every memo once the stored entries exceed
    /// the cap; entries are recomputed on demand.
    fn begin_query(&mut self) -> Result<(), DsError> {
        self.stats.peak_entries = self.stats.peak_entries.max(self.live);
        if self.live > self.config.memo_cap {
            self.memo.iter_mut().for_each(|m| *m = None);
            self.live = 0;
            self.stats.flushes += 1;
        }
        if self.pin.is_none() {
            Err(DsError::NoPin)
        } else {
            Ok(())
        }
    }

    /// `|U|`, read at the root.
    pub fn component_size(&mut self) -> Result<usize, DsError> {
        self.begin_query()?;
        let root = self.ntd.root();
        Ok(self.c(root, Sig::default()).map_or(0, |e| e.card as usize))
    }

    /// `N(U) ∩ S`, or `None` when it has more than `4k+3` vertices.
    pub fn find_neighborhood(&mut self) -> Result<Option<VertexSet>, DsError> {
        self.begin_query()?;
        match self.t1(self.ntd.root(), Sig::default()) {
            T1Entry::List(l) => Ok(Some(l)),
            T1Entry::Overflow => Ok(None),
            T1Entry::Invalid => unreachable!("root signature is always valid"),
        }
    }

    /// A set of at most `k+1` vertices leaving at most `|S|/2` vertices of
    /// `S` in each component of `G[S ∪ U]`; `None` certifies
    /// `tw(G[S ∪ U]) > k`.
    pub fn find_s_separator(&mut self) -> Result<Option<VertexSet>, DsError> {
        self.begin_query()?;
        let root = self.ntd.root();
        let half = (self.s_set.len() / 2).min(u8::MAX as usize) as u8;
        let key = T2Key { sig: Sig::default(), m: [0; 3], count: [half, half, half, (self.k + 1) as u8] };
        Ok(self.t2(root, key).map(|list| {
            let mut out = (*list).clone();
            out.sort_unstable();
            out
        }))
    }

    /// A vertex of a largest component of `G[U] - X` avoiding `F`, with the
    /// component size.
    pub fn find_next_pin(&mut self) -> Result<Option<(usize, usize)>, DsError> {
        self.begin_query()?;
        let root = self.ntd.root();
        let e = self.t3(root, Sig4 { s: 0, u: 0, x: 0, f: 0 });
        Ok(e.and_then(|e| e.champion).map(|(v, m)| (v, m as usize)))
    }

    pub fn small_u_threshold(&self) -> usize {
        self.config.small_u_threshold.unwrap_or(36 * (self.k + self.table_width() + 2))
    }

    /// A set of at most `k+1` vertices leaving components of `G[U]` of size
    /// at most `8/9·|U|`; `None` certifies `tw(G[U]) > k`.
    pub fn find_u_separator(&mut self) -> Result<Option<VertexSet>, DsError> {
        self.begin_query()?;
        let size = self.component_size()?;
        if size >= self.small_u_threshold() {
            return Ok(self.u_separator_by_tables());
        }
        let candidates: u64 = (0..=self.k as u64 + 1).map(|i| binomial(size as u64, i)).sum();
        if candidates > self.config.brute_budget {
            if let Some(x) = self.u_separator_by_tables() {
                return Ok(Some(x));
            }
        }
        let u = active_component(self.g, &self.get_s(), self.pin.unwrap());
        Ok(brute_u_separator(self.g, &u, self.k))
    }

    /// Descends from the root while at least half of `U` lies below,
    /// choosing the heavier child at joins; returns the first node where
    /// fewer than half remain, with its signature.
    pub fn trace_heavy_node(&mut self) -> Result<(usize, Sig), DsError> {
        self.begin_query()?;
        let total = self.component_size()?;
        let mut i = self.ntd.root();
        let mut sig = Sig::default();
        loop {
            let card = self.c(i, sig).expect("traced signatures are valid").card as usize;
            if 2 * card < total {
                return Ok((i, sig));
            }
            match self.ntd.kind(i) {
                NodeKind::Leaf => return Ok((i, sig)),
                NodeKind::Introduce(_) => {
                    let p = self.pos[i];
                    sig = Sig { s: remove_bit(sig.s, p), u: remove_bit(sig.u, p) };
                    i = self.child(i);
                }
                NodeKind::Forget(_) => {
                    sig = self.deduce(i, sig).expect("traced signatures are valid").0;
                    i = self.child(i);
                }
                NodeKind::Join => {
                    let (a, b) = (self.ntd.children(i)[0], self.ntd.children(i)[1]);
                    let ca = self.c(a, sig).map_or(0, |e| e.card);
                    let cb = self.c(b, sig).map_or(0, |e| e.card);
                    i = if cb > ca { b } else { a };
                }
            }
        }
    }

    /// Vertices of the bag of `i` selected by a position mask.
    pub fn bag_vertices(&self, i: usize, mask: u64) -> VertexSet {
        let bag = self.ntd.bag(i);
        (0..bag.len()).filter(|&p| mask & (1 << p) != 0).map(|p| bag[p]).collect()
    }

    /// Combines pushed separations below and above a traced node.
    pub fn u_separator_by_tables(&mut self) -> Option<VertexSet> {
        let total = self.component_size().ok()?;
        if total == 0 {
            return Some(Vec::new());
        }
        let (start, sig) = self.trace_heavy_node().ok()?;
        let below = self.c(start, sig)?.card as usize;
        let u_positions: Vec<usize> = (0..64).filter(|&p| sig.u & (1 << p) != 0).collect();
        let bag_u = u_positions.len();
        let above = total - below - bag_u;
        let budget = self.k + 1;
        let mut on_path = FxHashSet::default();
        let mut cur = Some(start);
        while let Some(i) = cur {
            on_path.insert(i);
            cur = self.ntd.parent(i);
        }
        let root = self.ntd.root();
        let mut digits = vec![0u8; bag_u];
        loop {
            let (mut tl, mut tr, mut xb) = (0u64, 0u64, 0usize);
            for (d, &p) in digits.iter().zip(&u_positions) {
                match d {
                    0 => tl |= 1 << p,
                    1 => xb += 1,
                    _ => tr |= 1 << p,
                }
            }
            let adj = self.ntd.bag_adjacency(start);
            let crossing = u_positions.iter().any(|&p| tl & (1 << p) != 0 && adj[p] & tr != 0);
            if xb <= budget && !crossing {
                let (ntl, ntr) = (tl.count_ones() as usize, tr.count_ones() as usize);
                let mut lower = Vec::new();
                for kp in 0..=budget - xb {
                    if let Some(r) = self.t4(start, T4Key { sig, l: tl, r: tr, x: kp as u8 }) {
                        lower.push((kp, r as usize));
                    }
                }
                if !lower.is_empty() {
                    let mut ctx = PathCtx {
                        on_path: &on_path,
                        start,
                        seed_sig: sig,
                        seed_l: tr,
                        seed_r: tl,
                        memo: FxHashMap::default(),
                    };
                    for xd in xb..=budget {
                        let key = T4Key { sig: Sig::default(), l: 0, r: 0, x: xd as u8 };
                        let Some(rd) = self.t4_in(root, key, Some(&mut ctx)) else { continue };
                        let left_above = rd as usize - ntl;
                        let sep_above = xd - xb;
                        let right_above = above - left_above - sep_above;
                        for &(kp, r2) in &lower {
                            if xd + kp > budget {
                                continue;
                            }
                            let left = rd as usize + (below - r2 - kp);
                            let right = r2 + ntr + right_above;
                            if 9 * left <= 8 * total && 9 * right <= 8 * total {
                                let mut sep = self.t4_witness(root, key, Some(&mut ctx));
                                sep.extend(self.t4_witness(start, T4Key { sig, l: tl, r: tr, x: kp as u8 }, None));
                                sep.sort_unstable();
                                return Some(sep);
                            }
                        }
                    }
                }
            }
            let mut d = 0;
            loop {
                if d == bag_u {
                    return None;
                }
                digits[d] += 1;
                if digits[d] < 3 {
                    break;
                }
                digits[d] = 0;
                d += 1;
            }
        }
    }

    /// Every valid signature at node `i` with its `C` entry (test support).
    pub fn c_entries_at(&mut self, i: usize) -> Vec<(Sig, CEntry)> {
        let b = self.ntd.bag(i).len();
        let mut out = Vec::new();
        let mut digits = vec![0u8; b];
        loop {
            let mut sig = Sig::default();
            for (p, &d) in digits.iter().enumerate() {
                match d {
                    1 => sig.s |= 1 << p,
                    2 => sig.u |= 1 << p,
                    _ => {}
                }
            }
            if let Some(e) = self.c(i, sig) {
                out.push((sig, e));
            }
            let mut d = 0;
            loop {
                if d == b {
                    return out;
                }
                digits[d] += 1;
                if digits[d] < 3 {
                    break;
                }
                digits[d] = 0;
                d += 1;
            }
        }
    }

    /// Number of memoised entries currently held.
    pub fn memo_entries(&self) -> usize {
        self.live
    }

    /// Memoised entries per table: `C`, `T1`, `T2`, `T3`, `T4`.
    pub fn memo_breakdown(&self) -> [usize; 5] {
        let mut out = [0; 5];
        for m in self.memo.iter().flatten() {
            out[0] += m.c.len();
            out[1] += m.t1.len();
            out[2] += m.t2.len();
            out[3] += m.t3.len();
            out[4] += m.t4.len();
        }
        out
    }

    /// Whether `pin ∈ W_i`.
    pub fn pin_below(&self, i: usize) -> bool {
        self.pin_below[i]
    }

    /// `|S ∩ W_i|`.
    pub fn s_below(&self, i: usize) -> usize {
        self.s_below[i] as usize
    }

    pub fn forget_node(&self, v: usize) -> usize {
        self.forget_node[v]
    }
}

fn lift(e: CEntry, p: usize) -> CEntry {
    CEntry { classes: e.classes.into_iter().map(|c| insert_bit(c, p, false)).collect(), card: e.card }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}
