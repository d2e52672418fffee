//! Graph families with known decompositions, for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::td::TreeDecomposition;

pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges_lossy(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_edges_lossy(n, (0..n).map(|i| (i, (i + 1) % n)).filter(|&(a, b)| a != b))
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edges_lossy(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// `rows × cols` grid, vertex `(r, c)` numbered `r * cols + c`.
pub fn grid_graph(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges_lossy(rows * cols, edges)
}

/// Path decomposition of a grid of width `min(rows, cols)`.
pub fn grid_decomposition(rows: usize, cols: usize) -> TreeDecomposition {
    let (long, short, id): (usize, usize, Box<dyn Fn(usize, usize) -> usize>) = if cols <= rows {
        (rows, cols, Box::new(move |i, j| i * cols + j))
    } else {
        (cols, rows, Box::new(move |i, j| j * cols + i))
    };
    let mut bags = Vec::new();
    for i in 0..long {
        for j in 0..short {
            let mut bag: Vec<usize> = (j..short).map(|q| id(i, q)).collect();
            if i + 1 < long {
                bag.extend((0..=j).map(|q| id(i + 1, q)));
            }
            bags.push(bag);
        }
    }
    if bags.is_empty() {
        return TreeDecomposition::single(Vec::new());
    }
    let parents = (0..bags.len()).map(|i| i.checked_sub(1)).collect();
    TreeDecomposition::from_parents(bags, parents).expect("path shape")
}

/// Random `k`-tree on `n ≥ k+1` vertices with a width-`k` decomposition.
/// Vertex ids are shuffled.
pub fn random_k_tree<R: Rng>(n: usize, k: usize, rng: &mut R) -> (Graph, TreeDecomposition) {
    random_partial_k_tree(n, k, 1.0, rng)
}

/// Random `k`-tree with each edge kept with probability `keep`, together
/// with the width-`k` decomposition of the full `k`-tree.
pub fn random_partial_k_tree<R: Rng>(n: usize, k: usize, keep: f64, rng: &mut R) -> (Graph, TreeDecomposition) {
    let base = (k + 1).min(n);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut edges = Vec::new();
    let mut bags: Vec<Vec<usize>> = vec![(0..base).collect()];
    let mut parents = vec![None];
    for i in 0..base {
        for j in i + 1..base {
            edges.push((i, j));
        }
    }
    for v in base..n {
        let host = rng.gen_range(0..bags.len());
        let mut clique = bags[host].clone();
        if clique.len() > k {
            let drop = rng.gen_range(0..clique.len());
            clique.remove(drop);
        }
        for &u in &clique {
            edges.push((u, v));
        }
        clique.push(v);
        bags.push(clique);
        parents.push(Some(host));
    }
    let kept = edges
        .into_iter()
        .filter(|_| keep >= 1.0 || rng.gen_bool(keep))
        .map(|(a, b)| (label[a], label[b]));
    let g = Graph::from_edges_lossy(n, kept);
    let bags = bags.into_iter().map(|b| b.into_iter().map(|v| label[v]).collect()).collect();
    let td = if n == 0 {
        TreeDecomposition::single(Vec::new())
    } else {
        TreeDecomposition::from_parents(bags, parents).expect("tree shape")
    };
    (g, td)
}

/// Erdős–Rényi graph.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges_lossy(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::td::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn decompositions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, k) in [(1, 1), (2, 1), (10, 2), (40, 3), (5, 5)] {
            let (g, td) = random_k_tree(n, k, &mut rng);
            validate(&g, &td).unwrap();
            assert!(td.width() <= k as isize);
            let (g, td) = random_partial_k_tree(n, k, 0.5, &mut rng);
            validate(&g, &td).unwrap();
        }
        for (r, c) in [(1, 1), (3, 5), (6, 2), (4, 4)] {
            let g = grid_graph(r, c);
            let td = grid_decomposition(r, c);
            validate(&g, &td).unwrap();
            assert!(td.width() <= r.min(c) as isize);
        }
        assert_eq!(cycle_graph(5).m(), 5);
        assert_eq!(complete_graph(5).m(), 10);
    }
}
