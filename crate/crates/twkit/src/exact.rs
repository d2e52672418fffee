//! Brute-force ground truth for small graphs: exact treewidth by subset
//! dynamic programming over elimination orders, optimal decompositions,
//! pushed terminal separations, and direct answers to the separator
//! queries of the dynamic data structure.

use thiserror::Error;

use crate::graph::{connected_components, Graph, VertexSet};
use crate::separators::{check_balanced, component_sizes, Beta, Separation, TerminalSpec};
use crate::tables::StateSnapshot;
use crate::td::TreeDecomposition;

pub const EXACT_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("graph with {0} vertices exceeds the exact oracle limit of {EXACT_LIMIT}")]
pub struct TooLarge(pub usize);

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect()
}

/// Vertices outside `eliminated ∪ {v}` reachable from `v` through `eliminated`.
fn q_set(adj: &[u32], eliminated: u32, v: usize) -> u32 {
    let mut comp = 1u32 << v;
    let mut frontier = comp;
    while frontier != 0 {
        let mut nb = 0;
        let mut f = frontier;
        while f != 0 {
            nb |= adj[f.trailing_zeros() as usize];
            f &= f - 1;
        }
        frontier = nb & eliminated & !comp;
        comp |= frontier;
    }
    let mut nb = 0;
    let mut c = comp;
    while c != 0 {
        nb |= adj[c.trailing_zeros() as usize];
        c &= c - 1;
    }
    nb & !comp & !eliminated
}

fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| deg[v]).unwrap();
        best = best.max(deg[v]);
        gone[v] = true;
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    best
}

/// Elimination order of width at most `k`, if one exists.
fn order_within(adj: &[u32], k: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut seen = vec![false; 1usize << n];
    let mut pred = vec![u8::MAX; 1usize << n];
    let mut stack = vec![0u32];
    seen[0] = true;
    while let Some(s) = stack.pop() {
        if s == full {
            let mut order = Vec::with_capacity(n);
            let mut cur = s;
            while cur != 0 {
                let v = pred[cur as usize] as usize;
                order.push(v);
                cur &= !(1 << v);
            }
            order.reverse();
            return Some(order);
        }
        for v in 0..n {
            let next = s | (1 << v);
            if s & (1 << v) != 0 || seen[next as usize] {
                continue;
            }
            if (q_set(adj, s, v).count_ones() as usize) <= k {
                seen[next as usize] = true;
                pred[next as usize] = v as u8;
                stack.push(next);
            }
        }
    }
    None
}

/// Whether `tw(g) ≤ k`.
pub fn treewidth_at_most(g: &Graph, k: usize) -> Result<bool, TooLarge> {
    if g.n() > EXACT_LIMIT {
        return Err(TooLarge(g.n()));
    }
    if g.m() > g.n() * k {
        return Ok(false);
    }
    Ok(connected_components(g, &[]).iter().all(|comp| {
        let (h, _) = g.induced_subgraph(comp);
        order_within(&masks(&h), k).is_some()
    }))
}

/// Exact treewidth; `0` for graphs without edges (including the empty graph).
pub fn exact_treewidth(g: &Graph) -> Result<usize, TooLarge> {
    if g.n() > EXACT_LIMIT {
        return Err(TooLarge(g.n()));
    }
    let mut best = 0;
    for comp in connected_components(g, &[]) {
        let (h, _) = g.induced_subgraph(&comp);
        let adj = masks(&h);
        let mut k = degeneracy(&h).max(best);
        while order_within(&adj, k).is_none() {
            k += 1;
        }
        best = best.max(k);
    }
    Ok(best)
}

/// An optimal decomposition built from an optimal elimination order.
pub fn exact_decomposition(g: &Graph) -> Result<TreeDecomposition, TooLarge> {
    let tw = exact_treewidth(g)?;
    let n = g.n();
    if n == 0 {
        return Ok(TreeDecomposition::single(Vec::new()));
    }
    let adj = masks(g);
    let order = order_within(&adj, tw).expect("order exists at the exact width");
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut parents = Vec::with_capacity(n);
    let mut eliminated = 0u32;
    for (i, &v) in order.iter().enumerate() {
        let q = q_set(&adj, eliminated, v);
        let mut bag = vec![v];
        let mut m = q;
        while m != 0 {
            bag.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        let parent = if i + 1 == n {
            None
        } else if q == 0 {
            Some(n - 1)
        } else {
            let first = bag[1..].iter().map(|&w| position[w]).min().unwrap();
            Some(first)
        };
        bags.push(bag);
        parents.push(parent);
        eliminated |= 1 << v;
    }
    Ok(TreeDecomposition::from_parents(bags, parents).expect("elimination tree is well formed"))
}

/// Independent exhaustive search over elimination orders with pruning.
pub fn treewidth_branch_and_bound(g: &Graph) -> usize {
    fn go(adj: &mut Vec<u32>, remaining: u32, cur: usize, best: &mut usize) {
        if remaining == 0 {
            *best = (*best).min(cur);
            return;
        }
        if remaining.count_ones() as usize - 1 <= cur {
            *best = (*best).min(cur);
            return;
        }
        let mut r = remaining;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            let nb = adj[v] & remaining;
            let deg = nb.count_ones() as usize;
            let next = cur.max(deg);
            if next >= *best {
                continue;
            }
            let saved = adj.clone();
            let mut m = nb;
            while m != 0 {
                let a = m.trailing_zeros() as usize;
                m &= m - 1;
                adj[a] |= nb & !(1 << a);
            }
            go(adj, remaining & !(1 << v), next, best);
            *adj = saved;
        }
    }
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut adj = masks(g);
    let mut best = n - 1;
    go(&mut adj, ((1u64 << n) - 1) as u32, 0, &mut best);
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Calls `f` on every subset of `items` of size at most `max`, by size then
/// lexicographically, until `f` returns `true`.
pub fn for_each_subset_upto(items: &[usize], max: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut chosen = Vec::new();
    for size in 0..=max.min(items.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            chosen.clear();
            chosen.extend(idx.iter().map(|&i| items[i]));
            if f(&chosen) {
                return true;
            }
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < items.len() - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    i = usize::MAX;
                    break;
                }
            }
            if i != usize::MAX {
                break;
            }
        }
    }
    false
}

/// Terminal separation of order at most `order_bound` maximising the chosen
/// side; ties go to the lexicographically smallest cut.
pub fn brute_pushed_separation(g: &Graph, spec: &TerminalSpec, side: Side) -> Option<Separation> {
    let n = g.n();
    let mut label = vec![0u8; n];
    for &v in &spec.t_left {
        label[v] = 1;
    }
    for &v in &spec.t_right {
        label[v] = 2;
    }
    let free: Vec<usize> = (0..n).filter(|&v| label[v] == 0).collect();
    let mut best: Option<(usize, Separation)> = None;
    for_each_subset_upto(&free, spec.order_bound, |cut| {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut loose = Vec::new();
        for comp in connected_components(g, cut) {
            let touches_l = comp.iter().any(|&v| label[v] == 1);
            let touches_r = comp.iter().any(|&v| label[v] == 2);
            match (touches_l, touches_r) {
                (true, true) => return false,
                (true, false) => left.extend(comp),
                (false, true) => right.extend(comp),
                (false, false) => loose.extend(comp),
            }
        }
        match side {
            Side::Left => left.extend(loose),
            Side::Right => right.extend(loose),
        }
        left.sort_unstable();
        right.sort_unstable();
        let score = match side {
            Side::Left => left.len(),
            Side::Right => right.len(),
        };
        let better = match &best {
            None => true,
            Some((s, sep)) => score > *s || (score == *s && cut < sep.cut.as_slice()),
        };
        if better {
            best = Some((score, Separation { left, cut: cut.to_vec(), right }));
        }
        false
    });
    best.map(|(_, s)| s)
}

/// Direct answers to the four data-structure queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveAnswers {
    pub component: VertexSet,
    pub neighborhood: VertexSet,
    pub s_separator: Option<VertexSet>,
    pub next_pin: Option<(usize, usize)>,
    pub u_separator: Option<VertexSet>,
}

/// The component of `pin` in `g - s`.
pub fn active_component(g: &Graph, s: &[usize], pin: usize) -> VertexSet {
    let mut blocked = vec![false; g.n()];
    for &v in s {
        blocked[v] = true;
    }
    blocked[pin] = true;
    let mut out = vec![pin];
    let mut i = 0;
    while i < out.len() {
        let v = out[i];
        i += 1;
        for &w in g.neighbors(v) {
            if !blocked[w] {
                blocked[w] = true;
                out.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn naive_query_answers(g: &Graph, k: usize, state: &StateSnapshot) -> NaiveAnswers {
    let pin = state.pin.expect("queries need a pin");
    let u = active_component(g, &state.s, pin);
    let mut in_u = vec![false; g.n()];
    for &v in &u {
        in_u[v] = true;
    }
    let neighborhood: VertexSet =
        state.s.iter().copied().filter(|&v| g.neighbors(v).iter().any(|&w| in_u[w])).collect();

    let mut ground: VertexSet = state.s.iter().chain(&u).copied().collect();
    ground.sort_unstable();
    let mut s_separator = None;
    for_each_subset_upto(&ground, k + 1, |x| {
        if check_balanced(g, &ground, &state.s, x, Beta::HALF) {
            s_separator = Some(x.to_vec());
            true
        } else {
            false
        }
    });

    let mut blocked = vec![true; g.n()];
    for &v in &u {
        blocked[v] = false;
    }
    for &v in &state.x {
        blocked[v] = true;
    }
    let mut in_f = vec![false; g.n()];
    for &v in &state.f {
        in_f[v] = true;
    }
    let mut next_pin: Option<(usize, usize)> = None;
    for &start in &u {
        if blocked[start] {
            continue;
        }
        blocked[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbors(v) {
                if !blocked[w] {
                    blocked[w] = true;
                    comp.push(w);
                }
            }
        }
        if comp.iter().any(|&v| in_f[v]) {
            continue;
        }
        if next_pin.is_none_or(|(_, size)| comp.len() > size) {
            next_pin = Some((*comp.iter().min().unwrap(), comp.len()));
        }
    }

    let u_separator = brute_u_separator(g, &u, k);
    NaiveAnswers { component: u, neighborhood, s_separator, next_pin, u_separator }
}

/// Smallest-first search for `X ⊆ u`, `|X| ≤ k+1`, with every component of
/// `g[u] - X` of size at most `8/9·|u|`.
pub fn brute_u_separator(g: &Graph, u: &[usize], k: usize) -> Option<VertexSet> {
    let mut found = None;
    for_each_subset_upto(u, k + 1, |x| {
        let ok = component_sizes(g, u, x).into_iter().all(|c| Beta::EIGHT_NINTHS.admits(c, u.len()));
        if ok {
            found = Some(x.to_vec());
        }
        ok
    });
    found
}
