//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Exits nonzero on a failure only when `TWKIT_ACCEPTANCE_STRICT=1`.
//! `TWKIT_ACCEPTANCE_ONLY=1,5` restricts the run to the listed criteria.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twkit::decomposer::{find_partial_td, find_td};
use twkit::exact::{exact_treewidth, naive_query_answers};
use twkit::generators::{cycle_graph, grid_graph, path_graph, random_graph, random_k_tree, random_partial_k_tree};
use twkit::graph::connected_components;
use twkit::separators::{check_balanced, flow_s_separator, Beta};
use twkit::td::{ceil_log2, forgotten_map, locate_bag_containing, rebalance_log_depth, validate, C_BAL};
use twkit::{
    approximate, DecomposeOutcome, DecomposerConfig, DsConfig, DsState, Graph, Mode, SetName, TreeDecomposition,
    UpdateStats, VertexSet,
};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn within(elapsed: Duration, minutes: u64) -> bool {
    elapsed <= Duration::from_secs(60 * minutes)
}

/// Bit index of the pair `i < j` among `n` vertices.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn mask_graph(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if mask & (1 << pair_index(n, i, j)) != 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn canonical(n: usize, mask: u64, perms: &[Vec<usize>], pairs: &[(usize, usize)]) -> u64 {
    perms
        .iter()
        .map(|p| {
            pairs.iter().enumerate().filter(|&(b, _)| mask & (1 << b) != 0).fold(0u64, |acc, (_, &(i, j))| {
                let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                acc | 1 << pair_index(n, a, b)
            })
        })
        .min()
        .unwrap()
}

/// One representative of every isomorphism class of graphs on `n ≤ 7`
/// vertices, grown vertex by vertex over all neighbour subsets.
fn all_graphs_upto(max_n: usize) -> Vec<Graph> {
    let mut out = vec![Graph::empty(1)];
    let mut level: Vec<u64> = vec![0];
    for n in 2..=max_n {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for &prev in &level {
            let mut base = 0u64;
            for i in 0..n - 1 {
                for j in i + 1..n - 1 {
                    if prev & (1 << pair_index(n - 1, i, j)) != 0 {
                        base |= 1 << pair_index(n, i, j);
                    }
                }
            }
            for nb in 0u64..(1 << (n - 1)) {
                let mut mask = base;
                for i in 0..n - 1 {
                    if nb & (1 << i) != 0 {
                        mask |= 1 << pair_index(n, i, n - 1);
                    }
                }
                let c = canonical(n, mask, &perms, &pairs);
                if seen.insert(c) {
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().map(|&m| mask_graph(n, m)));
        level = next;
    }
    out
}

fn random_connected(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let g = random_graph(n, rng.gen_range(0.2..0.8), rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Connected graphs on at most 7 vertices up to isomorphism, then 500
/// random connected graphs on 8 or 9 vertices.
fn small_corpus() -> Vec<Graph> {
    let mut corpus: Vec<Graph> = all_graphs_upto(7).into_iter().filter(|g| g.is_connected()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..500 {
        corpus.push(random_connected(8 + i % 2, &mut rng));
    }
    corpus
}

fn width_check(g: &Graph, k: usize, mode: Mode) -> Result<(), String> {
    match approximate(g, k, mode, &DecomposerConfig::default()) {
        Ok(DecomposeOutcome::Decomposition(td)) => {
            validate(g, &td).map_err(|e| format!("invalid output: {e}"))?;
            if td.width() > mode.width_bound(k) as isize {
                return Err(format!("width {} > {}", td.width(), mode.width_bound(k)));
            }
            Ok(())
        }
        Ok(DecomposeOutcome::TwExceeds(_)) => Err(format!("rejected at k = tw = {k}")),
        Err(e) => Err(e.to_string()),
    }
}

fn criterion_1(corpus: &[(Graph, usize)]) -> Verdict {
    let start = Instant::now();
    let mut violations = Vec::new();
    for (g, k) in corpus {
        if let Err(e) = width_check(g, *k, Mode::Three) {
            violations.push(format!("n={} m={}: {e}", g.n(), g.m()));
        }
    }
    let t = start.elapsed();
    verdict(
        violations.is_empty() && within(t, 5),
        format!("{} graphs, {} violations {:?}, {:.1?}", corpus.len(), violations.len(), violations.first(), t),
    )
}

fn structured_families() -> Vec<(String, Graph, usize)> {
    let mut out = Vec::new();
    for n in [2, 10, 100, 2000] {
        out.push((format!("path {n}"), path_graph(n), 1));
    }
    for n in [3, 10, 100, 2000] {
        out.push((format!("cycle {n}"), cycle_graph(n), 2));
    }
    for r in 1..=4 {
        for c in r..=5 {
            out.push((format!("grid {r}x{c}"), grid_graph(r, c), r.min(c)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 1..=3 {
        for n in [k + 1, 50, 500, 2000] {
            out.push((format!("{k}-tree {n}"), random_k_tree(n, k, &mut rng).0, k));
        }
    }
    out
}

fn criterion_2(corpus: &[(Graph, usize)]) -> Verdict {
    let start = Instant::now();
    let mode = Mode::Five { alpha: 2 };
    let mut violations = Vec::new();
    for (g, k) in corpus {
        if let Err(e) = width_check(g, *k, mode) {
            violations.push(format!("n={} m={}: {e}", g.n(), g.m()));
        }
    }
    let families = structured_families();
    for (name, g, k) in &families {
        if let Err(e) = width_check(g, *k, mode) {
            violations.push(format!("{name}: {e}"));
        }
    }
    let t = start.elapsed();
    verdict(
        violations.is_empty() && within(t, 10),
        format!(
            "{} graphs + {} structured, {} violations {:?}, {:.1?}",
            corpus.len(),
            families.len(),
            violations.len(),
            violations.first(),
            t
        ),
    )
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let modes = [Mode::Rs4, Mode::Three, Mode::Five { alpha: 1 }, Mode::Five { alpha: 2 }];
    let (trials, mut rejections, mut violations) = (10_000, 0, Vec::new());
    for _ in 0..trials {
        let n = rng.gen_range(2..=14);
        let g = if rng.gen_bool(0.5) {
            random_graph(n, rng.gen_range(0.1..0.9), &mut rng)
        } else {
            let w = rng.gen_range(1..=4).min(n - 1);
            random_partial_k_tree(n, w, rng.gen_range(0.5..1.0), &mut rng).0
        };
        let k = rng.gen_range(0..=4);
        let mode = modes[rng.gen_range(0..modes.len())];
        match approximate(&g, k, mode, &DecomposerConfig::default()) {
            Ok(DecomposeOutcome::TwExceeds(_)) => {
                rejections += 1;
                let tw = exact_treewidth(&g).unwrap();
                if tw <= k {
                    violations.push(format!("{mode:?} rejected k={k} with tw={tw}, n={n}"));
                }
            }
            Ok(DecomposeOutcome::Decomposition(_)) => {}
            Err(e) => violations.push(e.to_string()),
        }
    }
    verdict(
        violations.is_empty(),
        format!(
            "{trials} trials, {rejections} rejections, {} violations {:?}, {:.1?}",
            violations.len(),
            violations.first(),
            start.elapsed()
        ),
    )
}

#[derive(Default)]
struct OracleTally {
    sessions: usize,
    checks: usize,
    mismatches: Vec<String>,
    s_separators: usize,
    s_violations: usize,
    u_separators: usize,
    u_violations: usize,
    stats: UpdateStats,
}

fn components_of(g: &Graph, ground: &[usize], blocked: &[usize]) -> Vec<VertexSet> {
    let mut outside: VertexSet = (0..g.n()).filter(|v| ground.binary_search(v).is_err()).collect();
    outside.extend_from_slice(blocked);
    connected_components(g, &outside)
}

fn random_update(ds: &mut DsState, rng: &mut ChaCha8Rng) {
    let n = ds.graph().n();
    let v = rng.gen_range(0..n);
    let set = [SetName::S, SetName::X, SetName::F][rng.gen_range(0..3)];
    match rng.gen_range(0..6) {
        0 if !ds.in_s(v) => ds.set_pin(v).unwrap(),
        1 | 2 => ds.remove(set, v).unwrap(),
        _ if !(set == SetName::S && ds.get_pin() == Some(v)) => ds.insert(set, v).unwrap(),
        _ => {}
    }
}

fn oracle_check(ds: &mut DsState, width: usize, tables_only: bool, tally: &mut OracleTally) {
    let snap = ds.snapshot();
    let g = ds.graph();
    let k = ds.k();
    let naive = naive_query_answers(g, k, &snap);
    let u = naive.component.clone();
    let mut bad = |what: &str| tally.mismatches.push(format!("{what} for {snap:?}"));
    tally.checks += 1;

    if ds.component_size().unwrap() != u.len() {
        bad("component size");
    }
    let nb = ds.find_neighborhood().unwrap();
    let expected = (naive.neighborhood.len() <= 4 * k + 3).then(|| naive.neighborhood.clone());
    if nb != expected {
        bad("neighbourhood");
    }

    let mut ground: VertexSet = snap.s.iter().chain(&u).copied().collect();
    ground.sort_unstable();
    let sep = ds.find_s_separator().unwrap();
    if sep.is_some() != naive.s_separator.is_some() {
        bad("s-separator existence");
    }
    if let Some(x) = sep {
        tally.s_separators += 1;
        let inside = x.iter().all(|v| ground.binary_search(v).is_ok());
        if x.len() > k + 1 || !inside || !check_balanced(g, &ground, &snap.s, &x, Beta::HALF) {
            tally.s_violations += 1;
            bad("s-separator witness");
        }
    }

    let pin = ds.find_next_pin().unwrap();
    if pin.map(|p| p.1) != naive.next_pin.map(|p| p.1) {
        bad("next pin size");
    }
    if let Some((v, size)) = pin {
        let comps = components_of(g, &u, &snap.x);
        let ok = comps.iter().find(|c| c.contains(&v)).is_some_and(|c| c.len() == size && c.iter().all(|w| !snap.f.contains(w)));
        if !ok {
            bad("next pin witness");
        }
    }

    let sep = ds.find_u_separator().unwrap();
    match (&sep, &naive.u_separator) {
        (Some(_), None) => bad("u-separator existence"),
        // The table route certifies only `tw(G[U]) > k`, so it may miss a
        // separator that exists when the graph is wider than `k`.
        (None, Some(_)) if !tables_only || width <= k => bad("u-separator existence"),
        _ => {}
    }
    if let Some(x) = sep {
        tally.u_separators += 1;
        let inside = x.iter().all(|v| u.binary_search(v).is_ok());
        if x.len() > k + 1 || !inside || !check_balanced(g, &u, &u, &x, Beta::EIGHT_NINTHS) {
            tally.u_violations += 1;
            bad("u-separator witness");
        }
    }
}

fn oracle_sessions(sessions: usize, seed: u64) -> OracleTally {
    let mut tally = OracleTally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for session in 0..sessions {
        let n = rng.gen_range(3..=40);
        let width = rng.gen_range(1..=3).min(n - 1);
        let (g, td) = random_partial_k_tree(n, width, rng.gen_range(0.5..1.0), &mut rng);
        let k = rng.gen_range(1..=3);
        let s0: VertexSet = (0..n).filter(|_| rng.gen_bool(0.15)).collect();
        let tables_only = session % 2 == 1;
        let config = DsConfig { small_u_threshold: tables_only.then_some(0), ..DsConfig::default() };
        let mut ds = DsState::new(&g, k, &td, &s0, config).unwrap();
        for _ in 0..rng.gen_range(1..=200) {
            random_update(&mut ds, &mut rng);
            if ds.get_pin().is_some() {
                oracle_check(&mut ds, width, tables_only, &mut tally);
            }
        }
        tally.stats.merge(&ds.stats());
        tally.sessions += 1;
    }
    tally
}

fn criterion_4(tally: &OracleTally) -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut found, mut rejected, mut violations) = (0, 0, 0);
    for _ in 0..2000 {
        let n = rng.gen_range(2..=30);
        let g = if rng.gen_bool(0.5) {
            random_graph(n, rng.gen_range(0.05..0.6), &mut rng)
        } else {
            random_partial_k_tree(n, rng.gen_range(1..=4).min(n - 1), rng.gen_range(0.5..1.0), &mut rng).0
        };
        let k = rng.gen_range(0..=4);
        let size = rng.gen_range(1..=(3 * k + 4).min(n).min(12));
        let mut s: VertexSet = rand::seq::index::sample(&mut rng, n, size).into_vec();
        s.sort_unstable();
        let all: VertexSet = (0..n).collect();
        match flow_s_separator(&g, &s, k) {
            Ok(x) => {
                found += 1;
                if x.len() > k + 1 || !check_balanced(&g, &all, &s, &x, Beta::TWO_THIRDS) {
                    violations += 1;
                }
            }
            Err(_) => rejected += 1,
        }
    }
    let pass = violations == 0 && tally.s_violations == 0 && tally.u_violations == 0 && tally.sessions > 0;
    verdict(
        pass,
        format!(
            "flow: {found} separators, {rejected} rejections, {violations} violations; find_s: {} checked, {} violations; find_u: {} checked, {} violations; {:.1?}",
            tally.s_separators,
            tally.s_violations,
            tally.u_separators,
            tally.u_violations,
            start.elapsed()
        ),
    )
}

fn criterion_5(tally: &OracleTally, elapsed: Duration) -> Verdict {
    verdict(
        tally.mismatches.is_empty() && tally.sessions >= 1000 && within(elapsed, 15),
        format!(
            "{} sessions, {} query rounds, {} mismatches {:?}, {:.1?}",
            tally.sessions,
            tally.checks,
            tally.mismatches.len(),
            tally.mismatches.first(),
            elapsed
        ),
    )
}

fn median(mut xs: Vec<usize>) -> usize {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn criterion_6(tally: &OracleTally) -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut stats = tally.stats;
    let mut medians = Vec::new();
    for exp in 10..=16 {
        let n = 1usize << exp;
        let mut counts = Vec::new();
        for _ in 0..3 {
            let (g, td) = random_partial_k_tree(n, 3, 0.8, &mut rng);
            let mut ds = DsState::new(&g, 3, &td, &[], DsConfig::default()).unwrap();
            for _ in 0..3000 {
                let before = ds.stats().updates;
                random_update(&mut ds, &mut rng);
                if ds.stats().updates > before {
                    counts.push(ds.stats().last_recomputed);
                }
            }
            stats.merge(&ds.stats());
        }
        medians.push(median(counts));
    }
    let ratios: Vec<f64> = medians.windows(2).map(|w| w[1] as f64 / w[0].max(1) as f64).collect();
    let worst = ratios.iter().cloned().fold(0.0, f64::max);
    verdict(
        stats.locality_violations == 0 && worst <= 1.2,
        format!(
            "{} updates, {} over the depth bound; medians n=2^10..2^16 {:?}, worst ratio {:.3}; {:.1?}",
            stats.updates,
            stats.locality_violations,
            medians,
            worst,
            start.elapsed()
        ),
    )
}

fn structural_cases() -> Vec<(String, Graph, TreeDecomposition, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::new();
    for &n in &[30, 256, 500, 1024, 3000] {
        for w in 1..=3 {
            let (g, td) = (0..50)
                .map(|_| random_partial_k_tree(n, w, 0.95, &mut rng))
                .find(|(g, _)| g.is_connected())
                .unwrap_or_else(|| random_k_tree(n, w, &mut rng));
            out.push((format!("{w}-partial n={n}"), g, td, w));
        }
    }
    for &(r, c) in &[(2, 200), (3, 100), (4, 12)] {
        out.push((format!("grid {r}x{c}"), grid_graph(r, c), twkit::generators::grid_decomposition(r, c), r));
    }
    out
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let mut violations = Vec::new();
    let mut checked = 0;
    for (name, g, td, k) in structural_cases() {
        if !g.is_connected() {
            continue;
        }
        let n = g.n();
        checked += 1;
        let mut ds = DsState::new(&g, k, &td, &[], DsConfig::default()).unwrap();
        match find_td(&mut ds) {
            Ok(Some(out)) if out.len() > 2 * n => violations.push(format!("{name}: FindTD {} bags > 2n", out.len())),
            Ok(Some(_)) => {}
            other => violations.push(format!("{name}: FindTD gave {other:?}")),
        }
        let threshold = ceil_log2(n).max(1);
        let partial = match find_partial_td(&mut ds, threshold) {
            Ok(Some(p)) => p,
            other => {
                violations.push(format!("{name}: FindPartialTD gave {other:?}"));
                continue;
            }
        };
        let bound = 42.0 * n as f64 / (n as f64).log2();
        if n >= 256 && partial.partial.len() as f64 > bound {
            violations.push(format!("{name}: FindPartialTD {} bags > {bound:.0}", partial.partial.len()));
        }
        let forgotten = forgotten_map(&partial.partial, n);
        let leftover = connected_components(&g, &partial.covered);
        for comp in leftover {
            let mut nb: VertexSet = comp.iter().flat_map(|&v| g.neighbors(v).iter().copied()).collect();
            nb.sort_unstable();
            nb.dedup();
            nb.retain(|v| comp.binary_search(v).is_err());
            if comp.len() >= threshold {
                violations.push(format!("{name}: leftover component of size {}", comp.len()));
            }
            if nb.len() > 4 * k + 3 || locate_bag_containing(&partial.partial, &forgotten, &nb).is_none() {
                violations.push(format!("{name}: leftover neighbourhood {nb:?} not in a bag"));
            }
        }
    }
    verdict(
        violations.is_empty(),
        format!("{checked} graphs, {} violations {:?}, {:.1?}", violations.len(), violations.first(), start.elapsed()),
    )
}

/// Random tree shapes with bags from a partial `k`-tree, a path
/// decomposition or a caterpillar over a path graph.
fn random_decomposition(size: usize, rng: &mut ChaCha8Rng) -> (Graph, TreeDecomposition) {
    match rng.gen_range(0..3) {
        0 => random_partial_k_tree(size, rng.gen_range(1..=4).min(size.max(2) - 1), 0.7, rng),
        1 => {
            let n = size + 1;
            let bags = (0..size).map(|i| vec![i, i + 1]).collect();
            let parents = (0..size).map(|i| i.checked_sub(1)).collect();
            (path_graph(n), TreeDecomposition::from_parents(bags, parents).unwrap())
        }
        _ => {
            let rows = rng.gen_range(1..=3);
            let cols = (size / rows).max(1);
            (grid_graph(rows, cols), twkit::generators::grid_decomposition(rows, cols))
        }
    }
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut violations = Vec::new();
    let mut largest = 0;
    for i in 0..200 {
        let size = if i < 10 { 100_000 } else { (10f64.powf(rng.gen_range(1.0..5.0))) as usize };
        let (g, td) = random_decomposition(size, &mut rng);
        let out = rebalance_log_depth(&td);
        largest = largest.max(td.len());
        let depth_bound = C_BAL * ceil_log2(td.len() + 1);
        if let Err(e) = validate(&g, &out) {
            violations.push(format!("N={}: invalid output {e}", td.len()));
        }
        if out.width() > 3 * td.width() + 2 {
            violations.push(format!("N={}: width {} > 3*{}+2", td.len(), out.width(), td.width()));
        }
        if out.depth() > depth_bound {
            violations.push(format!("N={}: depth {} > {depth_bound}", td.len(), out.depth()));
        }
    }
    verdict(
        violations.is_empty(),
        format!(
            "200 decompositions up to {largest} nodes, C_bal = {C_BAL}, {} violations {:?}, {:.1?}",
            violations.len(),
            violations.first(),
            start.elapsed()
        ),
    )
}

fn criterion_9() -> Verdict {
    let mut times = Vec::new();
    let mut problems = Vec::new();
    for &n in &[10_000usize, 100_000] {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (g, _) = random_partial_k_tree(n, 3, 0.8, &mut rng);
        let start = Instant::now();
        let mode = Mode::Five { alpha: 2 };
        if let Err(e) = width_check(&g, 3, mode) {
            problems.push(format!("n={n}: {e}"));
        }
        times.push(start.elapsed());
    }
    let ratio = times[1].as_secs_f64() / times[0].as_secs_f64();
    verdict(
        problems.is_empty() && ratio <= 15.0,
        format!("t(1e4) = {:.1?}, t(1e5) = {:.1?}, ratio {ratio:.1} (target <= 15) {problems:?}", times[0], times[1]),
    )
}

fn selected() -> Option<HashSet<usize>> {
    let only = std::env::var("TWKIT_ACCEPTANCE_ONLY").ok()?;
    Some(only.split(',').filter_map(|s| s.trim().parse().ok()).collect())
}

fn main() {
    let only = selected();
    let wanted = |c: usize| only.as_ref().is_none_or(|s| s.contains(&c));
    let names = [
        "width 3k+4 (mode three)",
        "width 5k+4 (mode five(2))",
        "rejection soundness",
        "separator contracts",
        "oracle equivalence",
        "update locality",
        "structural bounds",
        "rebalancing",
        "scaling n=1e4 to 1e5",
    ];
    let mut results: Vec<(usize, Verdict)> = Vec::new();
    let mut report = |c: usize, v: Verdict| {
        println!("criterion {c} [{}]: {} {}", names[c - 1], if v.pass { "PASS" } else { "FAIL" }, v.detail);
        results.push((c, v));
    };

    if wanted(1) || wanted(2) {
        let corpus: Vec<(Graph, usize)> = small_corpus()
            .into_iter()
            .map(|g| {
                let k = exact_treewidth(&g).unwrap();
                (g, k)
            })
            .collect();
        if wanted(1) {
            report(1, criterion_1(&corpus));
        }
        if wanted(2) {
            report(2, criterion_2(&corpus));
        }
    }
    if wanted(3) {
        report(3, criterion_3());
    }
    if wanted(4) || wanted(5) || wanted(6) {
        let start = Instant::now();
        let tally = oracle_sessions(1000, 5);
        let elapsed = start.elapsed();
        if wanted(4) {
            report(4, criterion_4(&tally));
        }
        if wanted(5) {
            report(5, criterion_5(&tally, elapsed));
        }
        if wanted(6) {
            report(6, criterion_6(&tally));
        }
    }
    if wanted(7) {
        report(7, criterion_7());
    }
    if wanted(8) {
        report(8, criterion_8());
    }
    if wanted(9) {
        report(9, criterion_9());
    }

    let failed: Vec<usize> = results.iter().filter(|(_, v)| !v.pass).map(|(c, _)| *c).collect();
    println!("acceptance: {} of {} criteria pass; failing: {failed:?}", results.len() - failed.len(), results.len());
    if !failed.is_empty() && std::env::var("TWKIT_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
