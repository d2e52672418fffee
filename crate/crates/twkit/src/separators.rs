//! Balanced separators: unit-capacity vertex cuts, the flow-based
//! 2/3-balanced S-separator, the decomposition-based 1/2-balanced
//! S-separator, and balance checking with exact rational thresholds.

use std::collections::VecDeque;

use crate::graph::{Graph, TwExceeds, VertexSet};
use crate::td::TreeDecomposition;

/// A balance threshold `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Beta {
    pub num: usize,
    pub den: usize,
}

impl Beta {
    pub const HALF: Beta = Beta { num: 1, den: 2 };
    pub const TWO_THIRDS: Beta = Beta { num: 2, den: 3 };
    pub const EIGHT_NINTHS: Beta = Beta { num: 8, den: 9 };

    /// `count ≤ β·total`, decided exactly.
    #[inline]
    pub fn admits(self, count: usize, total: usize) -> bool {
        count * self.den <= total * self.num
    }
}

/// A vertex partition with no edge between `left` and `right`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Separation {
    pub left: VertexSet,
    pub cut: VertexSet,
    pub right: VertexSet,
}

impl Separation {
    pub fn order(&self) -> usize {
        self.cut.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalSpec {
    pub t_left: VertexSet,
    pub t_right: VertexSet,
    pub order_bound: usize,
}

const INF: u32 = u32::MAX / 2;

struct FlowNet {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { head: vec![usize::MAX; nodes], next: Vec::new(), to: Vec::new(), cap: Vec::new() }
    }

    fn arc(&mut self, a: usize, b: usize, c: u32) {
        for (x, y, z) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(z);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    /// One BFS augmentation of a unit of flow; returns false when none exists.
    fn augment(&mut self, src: usize, sink: usize, prev: &mut [usize]) -> bool {
        prev.fill(usize::MAX);
        let mut queue = VecDeque::from([src]);
        prev[src] = usize::MAX - 1;
        while let Some(v) = queue.pop_front() {
            let mut e = self.head[v];
            while e != usize::MAX {
                let w = self.to[e];
                if self.cap[e] > 0 && prev[w] == usize::MAX {
                    prev[w] = e;
                    if w == sink {
                        let mut x = sink;
                        while x != src {
                            let e = prev[x];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            x = self.to[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(w);
                }
                e = self.next[e];
            }
        }
        false
    }

    fn reachable(&self, src: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[src] = true;
        let mut stack = vec![src];
        while let Some(v) = stack.pop() {
            let mut e = self.head[v];
            while e != usize::MAX {
                let w = self.to[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
                e = self.next[e];
            }
        }
        seen
    }
}

/// Minimum `a`–`b` vertex cut avoiding `a ∪ b`, or `None` when it exceeds
/// `limit` (including the case of an `a`–`b` edge).
pub fn min_vertex_cut(g: &Graph, a: &[usize], b: &[usize], limit: usize) -> Option<VertexSet> {
    min_vertex_cut_avoiding(g, a, b, limit, &[])
}

/// As [`min_vertex_cut`] in `g - deleted`.
pub fn min_vertex_cut_avoiding(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    limit: usize,
    deleted: &[usize],
) -> Option<VertexSet> {
    if a.is_empty() || b.is_empty() {
        return Some(Vec::new());
    }
    let n = g.n();
    let mut role = vec![0u8; n];
    for &v in deleted {
        role[v] = 3;
    }
    for &v in a {
        role[v] = 1;
    }
    for &v in b {
        if role[v] == 1 {
            return None;
        }
        role[v] = 2;
    }
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        match role[v] {
            3 => continue,
            0 => net.arc(2 * v, 2 * v + 1, 1),
            _ => net.arc(2 * v, 2 * v + 1, INF),
        }
        if role[v] == 1 {
            net.arc(src, 2 * v, INF);
        }
        if role[v] == 2 {
            net.arc(2 * v + 1, sink, INF);
        }
        for &w in g.neighbors(v) {
            if role[w] != 3 {
                net.arc(2 * v + 1, 2 * w, INF);
            }
        }
    }
    let mut prev = vec![0; 2 * n + 2];
    let mut flow = 0;
    while net.augment(src, sink, &mut prev) {
        flow += 1;
        if flow > limit {
            return None;
        }
    }
    let seen = net.reachable(src);
    Some((0..n).filter(|&v| role[v] == 0 && seen[2 * v] && !seen[2 * v + 1]).collect())
}

/// Set `X`, `|X| ≤ k+1`, leaving at most `2/3·|s|` vertices of `s` in every
/// component of `g - X`. Partitions of `s` into left/cut/right are tried in
/// ternary-counter order; `TwExceeds` certifies `tw(g) > k`.
pub fn flow_s_separator(g: &Graph, s: &[usize], k: usize) -> Result<VertexSet, TwExceeds> {
    flow_s_separator_with(g, s, k, false)
}

/// With `split` set, only partitions placing vertices of `s` on both sides
/// are admitted, so that `g - X` has at least two components meeting `s`.
pub(crate) fn flow_s_separator_with(g: &Graph, s: &[usize], k: usize, split: bool) -> Result<VertexSet, TwExceeds> {
    let t = s.len();
    assert!(t <= 40, "S too large for partition enumeration");
    let mut digits = vec![0u8; t];
    loop {
        let (mut left, mut cut, mut right) = (Vec::new(), Vec::new(), Vec::new());
        for (i, &d) in digits.iter().enumerate() {
            match d {
                0 => left.push(s[i]),
                1 => cut.push(s[i]),
                _ => right.push(s[i]),
            }
        }
        let balanced = Beta::TWO_THIRDS.admits(left.len(), t) && Beta::TWO_THIRDS.admits(right.len(), t);
        let sides_ok = !split || (!left.is_empty() && !right.is_empty());
        if cut.len() <= k + 1 && balanced && sides_ok {
            if let Some(z) = min_vertex_cut_avoiding(g, &left, &right, k + 1 - cut.len(), &cut) {
                cut.extend(z);
                cut.sort_unstable();
                return Ok(cut);
            }
        }
        let mut i = 0;
        loop {
            if i == t {
                return Err(TwExceeds);
            }
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// A bag of `td` leaving at most `|s|/2` vertices of `s` in each component
/// of `G - bag`: walk from the root into any child subtree that holds more
/// than half of `s` strictly below the connecting edge.
pub fn td_based_s_separator(td: &TreeDecomposition, s: &[usize]) -> VertexSet {
    let order = td.preorder();
    let n = td.bags().iter().flat_map(|b| b.iter()).max().map_or(0, |&m| m + 1).max(s.iter().max().map_or(0, |&m| m + 1));
    let mut in_s = vec![false; n];
    for &v in s {
        in_s[v] = true;
    }
    let mut counted = vec![false; n];
    let mut below = vec![0usize; td.len()];
    for &i in &order {
        for &v in td.bag(i) {
            if in_s[v] && !counted[v] {
                counted[v] = true;
                below[i] += 1;
            }
        }
    }
    for &i in order.iter().rev() {
        if let Some(p) = td.parent(i) {
            below[p] += below[i];
        }
    }
    let mut cur = td.root();
    loop {
        let heavy = td
            .children(cur)
            .iter()
            .copied()
            .filter(|&c| 2 * below[c] > s.len())
            .min();
        match heavy {
            Some(c) => cur = c,
            None => return td.bag(cur).to_vec(),
        }
    }
}

/// Greedily merges the two lightest groups until three remain.
pub fn partition_into_three(weights: &[usize], q: usize) -> [Vec<usize>; 3] {
    debug_assert_eq!(weights.iter().sum::<usize>(), q);
    let mut groups: Vec<(usize, Vec<usize>)> = weights.iter().enumerate().map(|(i, &w)| (w, vec![i])).collect();
    while groups.len() > 3 {
        groups.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let (w1, g1) = groups.remove(0);
        let (w2, g2) = groups.remove(0);
        let mut merged = g1;
        merged.extend(g2);
        merged.sort_unstable();
        groups.push((w1 + w2, merged));
    }
    let mut out: [Vec<usize>; 3] = Default::default();
    for (slot, (_, g)) in out.iter_mut().zip(groups) {
        *slot = g;
    }
    out
}

/// Whether every component of `g[ground] - x` holds at most `β·|s|`
/// vertices of `s`.
pub fn check_balanced(g: &Graph, ground: &[usize], s: &[usize], x: &[usize], beta: Beta) -> bool {
    let n = g.n();
    let mut state = vec![0u8; n];
    for &v in ground {
        state[v] = 1;
    }
    for &v in x {
        state[v] = 0;
    }
    let mut in_s = vec![false; n];
    for &v in s {
        in_s[v] = true;
    }
    let mut stack = Vec::new();
    for &start in ground {
        if state[start] != 1 {
            continue;
        }
        state[start] = 2;
        stack.push(start);
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += in_s[v] as usize;
            for &w in g.neighbors(v) {
                if state[w] == 1 {
                    state[w] = 2;
                    stack.push(w);
                }
            }
        }
        if !beta.admits(count, s.len()) {
            return false;
        }
    }
    true
}

/// Sizes of the components of `g[ground] - x`.
pub fn component_sizes(g: &Graph, ground: &[usize], x: &[usize]) -> Vec<usize> {
    let all: Vec<usize> = ground.to_vec();
    let mut sizes = Vec::new();
    let n = g.n();
    let mut state = vec![0u8; n];
    for &v in &all {
        state[v] = 1;
    }
    for &v in x {
        state[v] = 0;
    }
    let mut stack = Vec::new();
    for &start in &all {
        if state[start] != 1 {
            continue;
        }
        state[start] = 2;
        stack.push(start);
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &w in g.neighbors(v) {
                if state[w] == 1 {
                    state[w] = 2;
                    stack.push(w);
                }
            }
        }
        sizes.push(count);
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn vertex_cuts() {
        let cut = min_vertex_cut(&path(5), &[0], &[4], 1).unwrap();
        assert_eq!(cut.len(), 1);
        assert!((1..4).contains(&cut[0]));
        assert_eq!(min_vertex_cut(&complete(4), &[0], &[1], 3), None);
        // 2x3 grid: 0-1-2 / 3-4-5
        let grid = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(min_vertex_cut(&grid, &[0], &[5], 2).unwrap().len(), 2);
        assert_eq!(min_vertex_cut(&grid, &[0], &[5], 1), None);
    }

    #[test]
    fn flow_separator_examples() {
        let p5 = path(5);
        let x = flow_s_separator(&p5, &[0, 4], 1).unwrap();
        assert!(x.len() <= 2);
        assert!(check_balanced(&p5, &[0, 1, 2, 3, 4], &[0, 4], &x, Beta::TWO_THIRDS));
        assert_eq!(flow_s_separator(&p5, &[3], 0).unwrap(), vec![3]);
        assert_eq!(flow_s_separator(&complete(4), &[0, 1, 2, 3], 1).unwrap().len(), 2);
        assert_eq!(flow_s_separator(&complete(7), &[0, 1, 2, 3, 4, 5, 6], 1), Err(TwExceeds));
        assert_eq!(flow_s_separator(&p5, &[], 0).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn td_separator_examples() {
        let p5 = path(5);
        let bags = (0..4).map(|i| vec![i, i + 1]).collect();
        let td = TreeDecomposition::from_parents(bags, vec![None, Some(0), Some(1), Some(2)]).unwrap();
        let bag = td_based_s_separator(&td, &[0, 4]);
        assert!(check_balanced(&p5, &[0, 1, 2, 3, 4], &[0, 4], &bag, Beta::HALF));
        let single = TreeDecomposition::single(vec![0, 1, 2]);
        assert_eq!(td_based_s_separator(&single, &[1]), vec![0, 1, 2]);
    }

    #[test]
    fn three_way_partitions() {
        let sums = |w: &[usize], q| {
            let mut s: Vec<usize> = partition_into_three(w, q).iter().map(|g| g.iter().map(|&i| w[i]).sum()).collect();
            s.sort_unstable();
            s
        };
        assert_eq!(sums(&[3, 3, 2, 2], 10), vec![3, 3, 4]);
        assert_eq!(sums(&[5, 5], 10), vec![0, 5, 5]);
        assert_eq!(sums(&[1, 1, 1, 1, 1, 1], 6), vec![2, 2, 2]);
    }

    #[test]
    fn balance_checks() {
        let p5 = path(5);
        let all = [0, 1, 2, 3, 4];
        assert!(check_balanced(&p5, &all, &[0, 4], &[2], Beta::HALF));
        assert!(!check_balanced(&p5, &all, &[0, 4], &[], Beta::HALF));
        assert!(check_balanced(&p5, &all, &[0, 4], &all, Beta::HALF));
    }
}
