//! Immutable undirected graphs and the reduction primitives used by the
//! recursive pipelines: maximal matching, contraction, the improved graph
//! and I-simplicial vertices.

use std::collections::VecDeque;

use thiserror::Error;

use crate::td::TreeDecomposition;

/// Sorted list of vertex ids without duplicates.
pub type VertexSet = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for n = {1}")]
    OutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list, rejecting self-loops and duplicates.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::OutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::OutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    /// Builds a graph from an edge list, silently dropping loops and repeats.
    pub fn from_edges_lossy(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Graph { adj, m: m / 2 }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`; local id `i` corresponds to `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut m = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if local[w] != usize::MAX {
                    adj[i].push(local[w]);
                }
            }
            adj[i].sort_unstable();
            m += adj[i].len();
        }
        (Graph { adj, m: m / 2 }, vertices.to_vec())
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || connected_components(self, &[]).len() == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeBound {
    Pass,
    TooManyEdges,
}

/// A graph of treewidth at most `k` has at most `n·k` edges.
pub fn edge_bound_check(g: &Graph, k: usize) -> EdgeBound {
    if g.m() > g.n().saturating_mul(k) {
        EdgeBound::TooManyEdges
    } else {
        EdgeBound::Pass
    }
}

/// Components of `g - forbidden`, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph, forbidden: &[usize]) -> Vec<VertexSet> {
    let mut seen = vec![false; g.n()];
    for &v in forbidden {
        seen[v] = true;
    }
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub type Matching = Vec<(usize, usize)>;

/// Greedy maximal matching over edges in lexicographic order.
pub fn maximal_matching(g: &Graph) -> Matching {
    let mut matched = vec![false; g.n()];
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
            out.push((u, v));
        }
    }
    out
}

/// Contracts every matching edge. New ids follow the smallest original id
/// of each merged class, so the map is monotone on class representatives.
pub fn contract_matching(g: &Graph, matching: &[(usize, usize)]) -> (Graph, Vec<usize>) {
    let n = g.n();
    let mut rep: Vec<usize> = (0..n).collect();
    for &(u, v) in matching {
        let r = u.min(v);
        rep[u] = r;
        rep[v] = r;
    }
    let mut map = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if rep[v] == v {
            map[v] = next;
            next += 1;
        }
    }
    for v in 0..n {
        map[v] = map[rep[v]];
    }
    let edges = g.edges().map(|(u, v)| (map[u], map[v]));
    (Graph::from_edges_lossy(next, edges), map)
}

/// Replaces each bag vertex by its preimage under `vertex_map`.
pub fn decontract_decomposition(td: &TreeDecomposition, vertex_map: &[usize]) -> TreeDecomposition {
    let n_new = vertex_map.iter().map(|&x| x + 1).max().unwrap_or(0);
    let mut preimage = vec![Vec::new(); n_new];
    for (old, &new) in vertex_map.iter().enumerate() {
        preimage[new].push(old);
    }
    td.map_bags(|bag| {
        let mut out: Vec<usize> = bag.iter().flat_map(|&v| preimage[v].iter().copied()).collect();
        out.sort_unstable();
        out
    })
}

/// `g` plus an edge between every non-adjacent pair having at least `k+1`
/// common neighbours of degree at most `k`. Pairs are gathered per low-degree
/// centre and grouped with a two-pass counting sort.
pub fn improved_graph(g: &Graph, k: usize) -> Graph {
    let n = g.n();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for c in 0..n {
        let nb = g.neighbors(c);
        if nb.len() > k {
            continue;
        }
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                pairs.push((nb[i], nb[j]));
            }
        }
    }
    let pairs = radix_sort_pairs(pairs, n);
    let mut extra = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let mut j = i;
        while j < pairs.len() && pairs[j] == pairs[i] {
            j += 1;
        }
        let (u, w) = pairs[i];
        if j - i > k && !g.has_edge(u, w) {
            extra.push((u, w));
        }
        i = j;
    }
    if extra.is_empty() {
        return g.clone();
    }
    Graph::from_edges_lossy(n, g.edges().chain(extra))
}

fn radix_sort_pairs(pairs: Vec<(usize, usize)>, n: usize) -> Vec<(usize, usize)> {
    let pass = |input: Vec<(usize, usize)>, key: fn(&(usize, usize)) -> usize| {
        let mut count = vec![0usize; n + 1];
        for p in &input {
            count[key(p) + 1] += 1;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let mut out = vec![(0, 0); input.len()];
        for p in input {
            let slot = &mut count[key(&p)];
            out[*slot] = p;
            *slot += 1;
        }
        out
    };
    let by_second = pass(pairs, |p| p.1);
    pass(by_second, |p| p.0)
}

/// Pairwise non-adjacent vertices that are simplicial in the improved graph
/// and have improved-graph degree at most `k`. Greedy in ascending id.
pub fn i_simplicial_vertices(g: &Graph, k: usize) -> VertexSet {
    let gi = improved_graph(g, k);
    simplicial_in(&gi, k)
}

pub(crate) fn simplicial_in(gi: &Graph, k: usize) -> VertexSet {
    let mut taken = vec![false; gi.n()];
    let mut out = Vec::new();
    for v in 0..gi.n() {
        let nb = gi.neighbors(v);
        if nb.len() > k || nb.iter().any(|&w| taken[w]) {
            continue;
        }
        let clique = nb
            .iter()
            .enumerate()
            .all(|(i, &a)| nb[i + 1..].iter().all(|&b| gi.has_edge(a, b)));
        if clique {
            taken[v] = true;
            out.push(v);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwExceeds;

/// Hangs a bag `N(v) ∪ {v}` for every removed I-simplicial vertex under a bag
/// holding its (clique) neighbourhood in the improved graph.
pub fn reintroduce_simplicial(
    td: &TreeDecomposition,
    x: &[usize],
    g: &Graph,
    k: usize,
) -> Result<TreeDecomposition, TwExceeds> {
    let gi = improved_graph(g, k);
    reintroduce_with(td, x, &gi, k)
}

pub(crate) fn reintroduce_with(
    td: &TreeDecomposition,
    x: &[usize],
    gi: &Graph,
    k: usize,
) -> Result<TreeDecomposition, TwExceeds> {
    let mut out = td.clone();
    if x.is_empty() {
        return Ok(out);
    }
    let mut occurrences = vec![Vec::new(); gi.n()];
    for i in 0..td.len() {
        for &v in td.bag(i) {
            occurrences[v].push(i);
        }
    }
    for &v in x {
        let nb = gi.neighbors(v);
        if nb.len() > k {
            return Err(TwExceeds);
        }
        let host = if nb.is_empty() {
            Some(td.root())
        } else {
            let pivot = *nb.iter().min_by_key(|&&w| occurrences[w].len()).unwrap();
            occurrences[pivot]
                .iter()
                .copied()
                .find(|&i| nb.iter().all(|w| td.bag(i).binary_search(w).is_ok()))
        };
        let host = host.ok_or(TwExceeds)?;
        let mut bag = nb.to_vec();
        bag.push(v);
        bag.sort_unstable();
        out.add_node(bag, Some(host));
    }
    Ok(out)
}
