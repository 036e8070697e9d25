//! Small graph catalogs and random generators used by the tests and `selftest`.

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::betweenness::is_at_free;
use crate::convexity::{full_mask, Mask, SetSystem};
use crate::graph::{is_connected, parse_graph};
use crate::{Graph, Names};

pub const F7: &str = include_str!("../fixtures/f7.txt");

/// The seven-vertex fixture with two convex sets whose union is not convex.
pub fn f7() -> (Graph, Names) {
    parse_graph(F7).expect("fixture parses")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Every labelled graph on n vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let ps = pairs(n);
    (0u64..1 << ps.len()).map(move |m| {
        let es: Vec<(usize, usize)> = ps.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &es)
    })
}

fn edge_mask(g: &Graph, relabel: &[usize]) -> u64 {
    let n = g.n();
    let mut m = 0u64;
    for (u, v) in g.edges() {
        let (a, b) = (relabel[u].min(relabel[v]), relabel[u].max(relabel[v]));
        // index of (a,b) in the row-major upper triangle
        let idx = a * n - a * (a + 1) / 2 + (b - a - 1);
        m |= 1 << idx;
    }
    m
}

/// Canonical edge mask: least mask over relabellings that list vertices by
/// nonincreasing degree.
fn canonical_mask(g: &Graph) -> u64 {
    let n = g.n();
    let deg: Vec<usize> = (0..n).map(|v| g.neighbors(v).count()).collect();
    let mut by_deg: Vec<usize> = (0..n).collect();
    by_deg.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    // groups of equal degree, permuted independently
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &by_deg {
        match groups.last_mut() {
            Some(gr) if deg[gr[0]] == deg[v] => gr.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut relabel = vec![0; n];
    fn rec(g: &Graph, groups: &[Vec<usize>], gi: usize, next: usize, relabel: &mut [usize], best: &mut u64) {
        if gi == groups.len() {
            *best = (*best).min(edge_mask(g, relabel));
            return;
        }
        let k = groups[gi].len();
        permute(&mut groups[gi].clone(), 0, &mut |perm: &[usize]| {
            for (i, &v) in perm.iter().enumerate() {
                relabel[v] = next + i;
            }
            rec(g, groups, gi + 1, next + k, relabel, best);
        });
    }
    rec(g, &groups, 0, 0, &mut relabel, &mut best);
    best
}

fn permute(xs: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// One graph per isomorphism class on n vertices (n <= 7).
pub fn catalog(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "catalog is exhaustive and only meant for tiny n");
    let mut seen = HashSet::new();
    all_graphs(n).filter(|g| seen.insert(canonical_mask(g))).collect()
}

/// Connected isomorphism classes on 1..=max_n vertices.
pub fn connected_catalog(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(|n| catalog(n).into_iter().filter(is_connected)).collect()
}

pub fn random_graph(n: usize, p: f64, rng: &mut StdRng) -> Graph {
    let mut g = Graph::empty(n);
    for (u, v) in pairs(n) {
        if rng.random_bool(p) {
            g.add_edge(u, v);
        }
    }
    g
}

/// Connected AT-free graph by rejection sampling.
pub fn random_connected_at_free(n: usize, rng: &mut StdRng) -> Graph {
    loop {
        let p = rng.random_range(0.25..0.9);
        let g = random_graph(n, p, rng);
        if is_connected(&g) && is_at_free(&g) {
            return g;
        }
    }
}

/// `count` graphs with n drawn from `lo..=hi`, mixed densities, any structure.
pub fn random_graphs(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(lo..=hi);
            let p = rng.random_range(0.1..0.9);
            random_graph(n, p, &mut rng)
        })
        .collect()
}

/// Random families on `e` elements. About half are closed under
/// intersection with ∅ and E added, so they are alignments.
pub fn random_set_system(e: usize, rng: &mut StdRng) -> SetSystem {
    let full = full_mask(e);
    let k = rng.random_range(1..=(1usize << e).min(12));
    let mut fam: Vec<Mask> = (0..k).map(|_| rng.random_range(0..=full)).collect();
    if rng.random_bool(0.5) {
        fam.push(0);
        fam.push(full);
        loop {
            let mut grew = false;
            let cur = fam.clone();
            for &a in &cur {
                for &b in &cur {
                    if !fam.contains(&(a & b)) {
                        fam.push(a & b);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }
    SetSystem::new(e, fam).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        let counts: Vec<usize> = (1..=5).map(|n| catalog(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
        let conn: Vec<usize> = (1..=5).map(|n| catalog(n).into_iter().filter(is_connected).count()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn f7_names() {
        let (g, names) = f7();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 9);
        let id = |s: &str| names.lookup(s).unwrap();
        assert!(g.adjacent(id("w"), id("u'")));
        assert_eq!(id("y1"), 0);
        assert_eq!(id("u'"), 6);
    }
}
