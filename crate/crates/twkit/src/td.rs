//! Tree decompositions: storage, validation, nice form and rebalancing.

use std::fmt;

use crate::graph::{Graph, VertexSet};

/// Depth constant of [`rebalance_log_depth`]: output depth never exceeds
/// `C_BAL * ceil(log2(N + 1))` for an input with `N` nodes.
pub const C_BAL: usize = 4;

/// Rooted tree of bags. Bags are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<VertexSet>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl TreeDecomposition {
    pub fn single(mut bag: VertexSet) -> Self {
        bag.sort_unstable();
        bag.dedup();
        TreeDecomposition { bags: vec![bag], parent: vec![None], children: vec![Vec::new()], root: 0 }
    }

    /// Builds from a parent array; exactly one entry must be `None`.
    pub fn from_parents(bags: Vec<VertexSet>, parents: Vec<Option<usize>>) -> Result<Self, String> {
        if bags.is_empty() || bags.len() != parents.len() {
            return Err("bag and parent lists must be nonempty and of equal length".into());
        }
        let mut children = vec![Vec::new(); bags.len()];
        let mut root = None;
        for (i, p) in parents.iter().enumerate() {
            match *p {
                None if root.is_some() => return Err("more than one root".into()),
                None => root = Some(i),
                Some(p) if p >= bags.len() => return Err(format!("node {i} has missing parent {p}")),
                Some(p) => children[p].push(i),
            }
        }
        let root = root.ok_or("no root")?;
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        let td = TreeDecomposition { bags, parent: parents, children, root };
        if td.preorder().len() != td.len() {
            return Err("parent array contains a cycle".into());
        }
        Ok(td)
    }

    /// Builds from undirected tree edges, rooting at node 0.
    pub fn from_edges(bags: Vec<VertexSet>, edges: &[(usize, usize)]) -> Result<Self, String> {
        let n = bags.len();
        if n == 0 {
            return Err("no bags".into());
        }
        if edges.len() + 1 != n {
            return Err(format!("{} nodes need {} edges, found {}", n, n - 1, edges.len()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(format!("bad tree edge ({a}, {b})"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parents = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parents[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err("decomposition tree is disconnected".into());
        }
        Self::from_parents(bags, parents)
    }

    pub fn add_node(&mut self, mut bag: VertexSet, parent: Option<usize>) -> usize {
        bag.sort_unstable();
        bag.dedup();
        let id = self.bags.len();
        self.bags.push(bag);
        self.parent.push(parent);
        self.children.push(Vec::new());
        match parent {
            Some(p) => self.children[p].push(id),
            None => panic!("only the first node may be a root"),
        }
        id
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    #[inline]
    pub fn root(&self) -> usize {
        self.root
    }

    #[inline]
    pub fn bag(&self, i: usize) -> &[usize] {
        &self.bags[i]
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    #[inline]
    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    #[inline]
    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    /// Undirected tree edges `(parent, child)` in node order of the child.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).filter_map(|i| self.parent[i].map(|p| (p, i))).collect()
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            if out.len() > self.len() {
                break;
            }
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    pub fn map_bags(&self, mut f: impl FnMut(&[usize]) -> VertexSet) -> Self {
        let bags = self
            .bags
            .iter()
            .map(|b| {
                let mut nb = f(b);
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect();
        TreeDecomposition { bags, parent: self.parent.clone(), children: self.children.clone(), root: self.root }
    }

    /// Width, `-1` when every bag is empty.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    /// Number of edges on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.len()];
        let mut best = 0;
        for v in self.preorder() {
            if let Some(p) = self.parent[v] {
                depth[v] = depth[p] + 1;
                best = best.max(depth[v]);
            }
        }
        best
    }

    pub fn metrics(&self) -> DecompositionMetrics {
        DecompositionMetrics { width: self.width(), depth: self.depth(), node_count: self.len() }
    }

    /// Copies `sub` into `self` with its root as a new child of `host`;
    /// returns the new id of `sub`'s root.
    pub fn attach(&mut self, host: usize, sub: &TreeDecomposition) -> usize {
        let offset = self.len();
        let mut new_id = vec![0; sub.len()];
        for (i, id) in new_id.iter_mut().enumerate() {
            *id = offset + i;
        }
        for i in 0..sub.len() {
            let parent = match sub.parent[i] {
                Some(p) => new_id[p],
                None => host,
            };
            self.bags.push(sub.bags[i].clone());
            self.parent.push(Some(parent));
            self.children.push(sub.children[i].iter().map(|&c| new_id[c]).collect());
        }
        self.children[host].push(new_id[sub.root]);
        new_id[sub.root]
    }

    /// Renames every bag vertex through `map`.
    pub fn relabel(&self, map: &[usize]) -> Self {
        self.map_bags(|b| b.iter().map(|&v| map[v]).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionMetrics {
    pub width: isize,
    pub depth: usize,
    pub node_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    InvalidVertex { node: usize, vertex: usize },
    VertexMissing(usize),
    EdgeUncovered(usize, usize),
    Disconnected(usize),
    MalformedTree,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InvalidVertex { node, vertex } => write!(f, "bag {node} holds unknown vertex {vertex}"),
            Violation::VertexMissing(v) => write!(f, "vertex {v} is in no bag"),
            Violation::EdgeUncovered(u, v) => write!(f, "edge {{{u}, {v}}} is in no bag"),
            Violation::Disconnected(v) => write!(f, "bags containing vertex {v} are not connected"),
            Violation::MalformedTree => write!(f, "decomposition tree is malformed"),
        }
    }
}

impl std::error::Error for Violation {}

/// Checks the three decomposition conditions and reports the first failure.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> Result<(), Violation> {
    if td.preorder().len() != td.len() || td.parent[td.root].is_some() {
        return Err(Violation::MalformedTree);
    }
    let n = g.n();
    let mut occurrences = vec![Vec::new(); n];
    let mut tops = vec![0usize; n];
    for i in 0..td.len() {
        for &v in td.bag(i) {
            if v >= n {
                return Err(Violation::InvalidVertex { node: i, vertex: v });
            }
            occurrences[v].push(i);
            let in_parent = td.parent[i].is_some_and(|p| td.bag(p).binary_search(&v).is_ok());
            if !in_parent {
                tops[v] += 1;
            }
        }
    }
    for v in 0..n {
        if occurrences[v].is_empty() {
            return Err(Violation::VertexMissing(v));
        }
    }
    for (u, v) in g.edges() {
        let (a, b) = if occurrences[u].len() <= occurrences[v].len() { (u, v) } else { (v, u) };
        if !occurrences[a].iter().any(|&i| td.bag(i).binary_search(&b).is_ok()) {
            return Err(Violation::EdgeUncovered(u, v));
        }
    }
    for v in 0..n {
        if tops[v] != 1 {
            return Err(Violation::Disconnected(v));
        }
    }
    Ok(())
}

/// Root bag `s`, one child `s ∪ x`, and every child decomposition hung
/// beneath that child.
pub fn build_from_parts(s: &[usize], x: &[usize], children: &[TreeDecomposition]) -> TreeDecomposition {
    let mut td = TreeDecomposition::single(s.to_vec());
    let mut inner: Vec<usize> = s.iter().chain(x).copied().collect();
    inner.sort_unstable();
    inner.dedup();
    let b = td.add_node(inner, Some(0));
    for c in children {
        td.attach(b, c);
    }
    td
}

pub fn attach_subtree(td: &TreeDecomposition, host: usize, sub: &TreeDecomposition) -> TreeDecomposition {
    let mut out = td.clone();
    out.attach(host, sub);
    out
}

/// For every vertex the top-most node (first in preorder) whose bag holds it.
pub fn forgotten_map(td: &TreeDecomposition, n: usize) -> Vec<Option<usize>> {
    let mut map = vec![None; n];
    for i in td.preorder() {
        for &v in td.bag(i) {
            if map[v].is_none() {
                map[v] = Some(i);
            }
        }
    }
    map
}

/// A node among `forgotten(v)`, `v ∈ y`, whose bag contains all of `y`.
pub fn locate_bag_containing(td: &TreeDecomposition, forgotten: &[Option<usize>], y: &[usize]) -> Option<usize> {
    if y.is_empty() {
        return Some(td.root());
    }
    y.iter()
        .filter_map(|&v| forgotten.get(v).copied().flatten())
        .find(|&i| y.iter().all(|w| td.bag(i).binary_search(w).is_ok()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

/// Nice decomposition: empty leaves and root, binary, one vertex changes per
/// edge. Each node with at most 64 bag vertices also stores, for every bag
/// position, the mask of bag positions adjacent to it in the graph.
#[derive(Clone, Debug)]
pub struct NiceTreeDecomposition {
    bags: Vec<VertexSet>,
    kinds: Vec<NodeKind>,
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    bag_adj: Vec<Vec<u64>>,
    root: usize,
}

impl NiceTreeDecomposition {
    #[inline]
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    #[inline]
    pub fn root(&self) -> usize {
        self.root
    }

    #[inline]
    pub fn bag(&self, i: usize) -> &[usize] {
        &self.bags[i]
    }

    #[inline]
    pub fn kind(&self, i: usize) -> NodeKind {
        self.kinds[i]
    }

    #[inline]
    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    #[inline]
    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    #[inline]
    pub fn node_depth(&self, i: usize) -> usize {
        self.depth[i]
    }

    pub fn depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    /// Adjacency masks over bag positions (empty for bags wider than 64).
    #[inline]
    pub fn bag_adjacency(&self, i: usize) -> &[u64] {
        &self.bag_adj[i]
    }

    /// Edges inside bag `i` as position pairs `(p, q)`, `p < q`.
    pub fn bag_edges(&self, i: usize) -> Vec<(usize, usize)> {
        let adj = &self.bag_adj[i];
        let mut out = Vec::new();
        for (p, &mask) in adj.iter().enumerate() {
            let mut m = mask >> (p + 1) << (p + 1);
            while m != 0 {
                out.push((p, m.trailing_zeros() as usize));
                m &= m - 1;
            }
        }
        out
    }

    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        TreeDecomposition {
            bags: self.bags.clone(),
            parent: self.parent.clone(),
            children: self.children.clone(),
            root: self.root,
        }
    }
}

struct NiceBuilder {
    bags: Vec<VertexSet>,
    kinds: Vec<NodeKind>,
    children: Vec<Vec<usize>>,
}

impl NiceBuilder {
    fn push(&mut self, bag: VertexSet, kind: NodeKind, children: Vec<usize>) -> usize {
        self.bags.push(bag);
        self.kinds.push(kind);
        self.children.push(children);
        self.bags.len() - 1
    }

    /// Forgets `from ∖ to` then introduces `to ∖ from`, both ascending.
    fn chain(&mut self, mut top: usize, to: &[usize]) -> usize {
        let from = self.bags[top].clone();
        let mut cur = from.clone();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            cur.retain(|&w| w != v);
            top = self.push(cur.clone(), NodeKind::Forget(v), vec![top]);
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            let pos = cur.binary_search(&v).unwrap_err();
            cur.insert(pos, v);
            top = self.push(cur.clone(), NodeKind::Introduce(v), vec![top]);
        }
        top
    }

    fn join_all(&mut self, bag: &[usize], tops: &[usize]) -> usize {
        match tops.len() {
            1 => tops[0],
            _ => {
                let mid = tops.len() / 2;
                let a = self.join_all(bag, &tops[..mid]);
                let b = self.join_all(bag, &tops[mid..]);
                self.push(bag.to_vec(), NodeKind::Join, vec![a, b])
            }
        }
    }
}

/// Nice form of `td` with identical width.
pub fn to_nice(g: &Graph, td: &TreeDecomposition) -> NiceTreeDecomposition {
    let mut b = NiceBuilder { bags: Vec::new(), kinds: Vec::new(), children: Vec::new() };
    let order = td.preorder();
    let mut top = vec![usize::MAX; td.len()];
    for &v in order.iter().rev() {
        let bag = td.bag(v);
        let tops: Vec<usize> = if td.children(v).is_empty() {
            let leaf = b.push(Vec::new(), NodeKind::Leaf, Vec::new());
            vec![b.chain(leaf, bag)]
        } else {
            td.children(v).iter().map(|&c| b.chain(top[c], bag)).collect()
        };
        top[v] = b.join_all(bag, &tops);
    }
    let root = b.chain(top[td.root()], &[]);
    let n = b.bags.len();
    let mut parent = vec![None; n];
    for (i, ch) in b.children.iter().enumerate() {
        for &c in ch {
            parent[c] = Some(i);
        }
    }
    let mut depth = vec![0; n];
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &c in &b.children[v] {
            depth[c] = depth[v] + 1;
            stack.push(c);
        }
    }
    let bag_adj = b.bags.iter().map(|bag| bag_adjacency(g, bag)).collect();
    NiceTreeDecomposition { bags: b.bags, kinds: b.kinds, children: b.children, parent, depth, bag_adj, root }
}

fn bag_adjacency(g: &Graph, bag: &[usize]) -> Vec<u64> {
    if bag.len() > 64 {
        return Vec::new();
    }
    let mut adj = vec![0u64; bag.len()];
    for (p, &v) in bag.iter().enumerate() {
        if g.degree(v) < bag.len() {
            for &w in g.neighbors(v) {
                if let Ok(q) = bag.binary_search(&w) {
                    adj[p] |= 1 << q;
                }
            }
        } else {
            for (q, &w) in bag.iter().enumerate() {
                if q != p && g.has_edge(v, w) {
                    adj[p] |= 1 << q;
                }
            }
        }
    }
    adj
}

/// Logarithmic-depth binary decomposition of width at most `3w + 2`.
///
/// The tree is cut recursively into pieces, each touching at most two
/// previously chosen nodes. A piece with one such neighbour is split at its
/// centroid, a piece with two at the weighted median of the path joining
/// them. The new node for a piece holds the chosen bag plus the adhesions on
/// the piece boundary; nodes with more than two children are expanded into a
/// weight-balanced binary tree of copies.
pub fn rebalance_log_depth(td: &TreeDecomposition) -> TreeDecomposition {
    let n = td.len();
    let mut adj = vec![Vec::new(); n];
    for (p, c) in td.tree_edges() {
        adj[p].push(c);
        adj[c].push(p);
    }
    let mut removed = vec![false; n];
    let mut out_bags: Vec<VertexSet> = Vec::with_capacity(n);
    let mut out_parent: Vec<Option<usize>> = Vec::with_capacity(n);
    let mut bfs_parent = vec![usize::MAX; n];
    let mut sub = vec![0usize; n];
    let mut order = Vec::new();
    let mut work: Vec<(usize, Option<usize>)> = vec![(td.root(), None)];

    while let Some((start, new_parent)) = work.pop() {
        let bfs = |root: usize, order: &mut Vec<usize>, bfs_parent: &mut [usize], sub: &mut [usize]| {
            order.clear();
            order.push(root);
            bfs_parent[root] = usize::MAX;
            let mut head = 0;
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &w in &adj[v] {
                    if !removed[w] && w != bfs_parent[v] {
                        bfs_parent[w] = v;
                        order.push(w);
                    }
                }
            }
            for &v in order.iter().rev() {
                sub[v] = 1 + adj[v]
                    .iter()
                    .filter(|&&w| !removed[w] && bfs_parent[w] == v && w != bfs_parent[v])
                    .map(|&w| sub[w])
                    .sum::<usize>();
            }
        };
        bfs(start, &mut order, &mut bfs_parent, &mut sub);
        let total = order.len();
        let mut boundary = Vec::new();
        for &v in &order {
            for &w in &adj[v] {
                if removed[w] {
                    boundary.push((v, w));
                }
            }
        }
        debug_assert!(boundary.len() <= 2);
        let centre = if boundary.len() <= 1 {
            let mut c = start;
            loop {
                let heavy = adj[c]
                    .iter()
                    .copied()
                    .find(|&w| !removed[w] && bfs_parent[w] == c && w != bfs_parent[c] && 2 * sub[w] > total);
                match heavy {
                    Some(w) => c = w,
                    None => break c,
                }
            }
        } else {
            let (b1, b2) = (boundary[0].0, boundary[1].0);
            bfs(b1, &mut order, &mut bfs_parent, &mut sub);
            let mut path = vec![b2];
            while *path.last().unwrap() != b1 {
                path.push(bfs_parent[*path.last().unwrap()]);
            }
            path.reverse();
            let mut c = *path.last().unwrap();
            for i in 0..path.len() {
                let after = if i + 1 < path.len() { sub[path[i + 1]] } else { 0 };
                if 2 * after <= total {
                    c = path[i];
                    break;
                }
            }
            c
        };
        let mut bag: VertexSet = td.bag(centre).to_vec();
        for &(p, q) in &boundary {
            bag.extend(td.bag(p).iter().filter(|v| td.bag(q).binary_search(v).is_ok()));
        }
        bag.sort_unstable();
        bag.dedup();
        let node = out_bags.len();
        out_bags.push(bag.clone());
        out_parent.push(new_parent);

        let mut pieces: Vec<(usize, usize)> = adj[centre]
            .iter()
            .filter(|&&w| !removed[w])
            .map(|&w| {
                let size = if w == bfs_parent[centre] { total - sub[centre] } else { sub[w] };
                (w, size)
            })
            .collect();
        removed[centre] = true;
        pieces.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut groups = vec![(node, pieces)];
        while let Some((host, items)) = groups.pop() {
            if items.len() <= 2 {
                work.extend(items.iter().map(|&(w, _)| (w, Some(host))));
                continue;
            }
            let (mut left, mut right) = (Vec::new(), Vec::new());
            let (mut lw, mut rw) = (0, 0);
            for it in items {
                if lw <= rw {
                    lw += it.1;
                    left.push(it);
                } else {
                    rw += it.1;
                    right.push(it);
                }
            }
            for side in [left, right] {
                if side.len() == 1 {
                    work.push((side[0].0, Some(host)));
                } else {
                    let copy = out_bags.len();
                    out_bags.push(bag.clone());
                    out_parent.push(Some(host));
                    groups.push((copy, side));
                }
            }
        }
    }
    TreeDecomposition::from_parents(out_bags, out_parent).expect("rebalanced tree is well formed")
}

/// Min-degree elimination of the vertices outside `last`, which end up
/// together in the root bag. Gives up once an eliminated vertex has more
/// than `limit` remaining neighbours.
pub fn greedy_decomposition(g: &Graph, last: &[usize], limit: usize) -> Option<TreeDecomposition> {
    use rustc_hash::FxHashSet;
    use std::collections::BTreeSet;
    const TIE_CANDIDATES: usize = 256;
    let n = g.n();
    if last.len() > limit + 1 {
        return None;
    }
    let mut in_last = vec![false; n];
    for &v in last {
        in_last[v] = true;
    }
    let mut adj: Vec<FxHashSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).filter(|&v| !in_last[v]).map(|v| (adj[v].len(), v)).collect();
    let mut step = vec![usize::MAX; n];
    let mut bags = vec![last.to_vec()];
    let mut later: Vec<VertexSet> = Vec::new();
    let fill = |adj: &[FxHashSet<usize>], v: usize| {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in nb.iter().enumerate() {
            missing += nb[i + 1..].iter().filter(|&&b| !adj[a].contains(&b)).count();
        }
        missing
    };
    while let Some(&(deg, _)) = queue.first() {
        if deg > limit {
            return None;
        }
        // Among the first few vertices of minimum degree, take the one
        // adding the fewest edges.
        let (_, v) = queue
            .range((deg, 0)..(deg + 1, 0))
            .take(TIE_CANDIDATES)
            .map(|&(_, v)| (fill(&adj, v), v))
            .min()
            .unwrap();
        queue.remove(&(deg, v));
        step[v] = later.len();
        let nb: VertexSet = adj[v].drain().collect();
        for &a in &nb {
            if !in_last[a] {
                queue.remove(&(adj[a].len(), a));
            }
            adj[a].remove(&v);
        }
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            if !in_last[a] {
                queue.insert((adj[a].len(), a));
            }
        }
        let mut bag = nb.clone();
        bag.push(v);
        bags.push(bag);
        later.push(nb);
    }
    let parents = std::iter::once(None)
        .chain(later.iter().map(|nb| {
            let first = nb.iter().filter(|&&w| !in_last[w]).map(|&w| step[w]).min();
            Some(first.map_or(0, |s| s + 1))
        }))
        .collect();
    Some(TreeDecomposition::from_parents(bags, parents).expect("elimination tree"))
}

/// Keeps every vertex only in the smallest subtree that still covers its
/// edges, then merges each node whose bag lies inside its parent's bag.
/// Width never grows.
pub fn shrink_bags(g: &Graph, td: &TreeDecomposition) -> TreeDecomposition {
    let nodes = td.len();
    let n = g.n();
    let order = td.preorder();
    let mut depth = vec![0usize; nodes];
    for &i in &order {
        if let Some(p) = td.parent(i) {
            depth[i] = depth[p] + 1;
        }
    }
    let top = forgotten_map(td, n);
    let mut needed: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, w) in g.edges() {
        let (tv, tw) = (top[v].unwrap(), top[w].unwrap());
        let host = if depth[tv] >= depth[tw] { tv } else { tw };
        needed[v].push(host);
        needed[w].push(host);
    }
    let mut stamp = vec![usize::MAX; nodes];
    let mut need_stamp = vec![usize::MAX; nodes];
    let mut marked_children = vec![0usize; nodes];
    let mut bags: Vec<VertexSet> = vec![Vec::new(); nodes];
    let mut visited = Vec::new();
    for v in 0..n {
        let Some(t) = top[v] else { continue };
        if needed[v].is_empty() {
            needed[v].push(t);
        }
        visited.clear();
        for &x in &needed[v] {
            need_stamp[x] = v;
            if stamp[x] == v {
                continue;
            }
            stamp[x] = v;
            marked_children[x] = 0;
            visited.push(x);
            let mut cur = x;
            while cur != t {
                let p = td.parent(cur).unwrap();
                if stamp[p] == v {
                    marked_children[p] += 1;
                    break;
                }
                stamp[p] = v;
                marked_children[p] = 1;
                visited.push(p);
                cur = p;
            }
        }
        let mut head = t;
        while need_stamp[head] != v && marked_children[head] == 1 {
            stamp[head] = usize::MAX;
            head = *td.children(head).iter().find(|&&c| stamp[c] == v).unwrap();
        }
        for &x in &visited {
            if stamp[x] == v {
                bags[x].push(v);
            }
        }
    }
    let mut rep = vec![0usize; nodes];
    let mut kept = Vec::new();
    let mut new_id = vec![usize::MAX; nodes];
    let mut parents = Vec::new();
    for &i in &order {
        match td.parent(i) {
            Some(p) if bags[i].iter().all(|v| bags[rep[p]].binary_search(v).is_ok()) => rep[i] = rep[p],
            parent => {
                rep[i] = i;
                new_id[i] = kept.len();
                parents.push(parent.map(|p| new_id[rep[p]]));
                kept.push(i);
            }
        }
    }
    let out_bags = kept.iter().map(|&i| std::mem::take(&mut bags[i])).collect();
    TreeDecomposition::from_parents(out_bags, parents).expect("contracted tree stays a tree")
}

/// `ceil(log2(x))` for `x ≥ 1`, and 0 for `x ≤ 1`.
pub fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}
