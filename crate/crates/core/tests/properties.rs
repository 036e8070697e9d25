use std::collections::HashSet;

use atfree::betweenness::{check_betweenness_axiom, interval, interval_table, is_at_free, IntervalTable};
use atfree::convexity::{closure, enumerate_convex_sets, is_alignment, is_convex, mask_of, sigma_abstract, verify_convex_geometry};
use atfree::corpus;
use atfree::graph::{closed_neighborhood, component_table, components, is_clique, is_connected, is_module, parse_graph, render};
use atfree::gray::{canonical_order, check_sigma_split, decompose};
use atfree::orders::{appendable, enumerate_at_free_orders, is_at_free_order, LinearOrder, NumbadState};
use atfree::{Graph, VertexSet};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn find(p: &mut [usize], x: usize) -> usize {
    if p[x] != x {
        let r = find(p, p[x]);
        p[x] = r;
    }
    p[x]
}

/// z ∈ I(x,y) by searching for the two avoiding paths directly.
fn between_by_paths(g: &Graph, z: usize, x: usize, y: usize) -> bool {
    let reach = |from: usize, to: usize, avoid: &VertexSet| {
        if avoid.contains(from) || avoid.contains(to) {
            return false;
        }
        let mut seen = vec![false; g.n()];
        let mut st = vec![from];
        seen[from] = true;
        while let Some(v) = st.pop() {
            if v == to {
                return true;
            }
            for w in g.neighbors(v) {
                if !seen[w] && !avoid.contains(w) {
                    seen[w] = true;
                    st.push(w);
                }
            }
        }
        false
    };
    x != y && reach(z, x, &closed_neighborhood(g, y)) && reach(z, y, &closed_neighborhood(g, x))
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(&mut vec![], &mut vec![false; n], &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn components_match_union_find(g in arb_graph(32), seed in any::<u64>()) {
        let n = g.n();
        let removed = VertexSet::from_vertices(n, (0..n).filter(|v| (seed >> (v % 64)) & 1 == 1 && v % 3 == 0));
        let comps = components(&g, &removed);
        let mut p: Vec<usize> = (0..n).collect();
        for (u, v) in g.edges() {
            if !removed.contains(u) && !removed.contains(v) {
                let (a, b) = (find(&mut p, u), find(&mut p, v));
                p[a] = b;
            }
        }
        let mut covered = 0;
        for c in &comps {
            covered += c.len();
            let r = find(&mut p, c[0]);
            prop_assert!(c.iter().all(|&v| find(&mut p, v) == r && !removed.contains(v)));
        }
        prop_assert_eq!(covered, n - removed.len());
        let roots: HashSet<usize> = comps.iter().map(|c| find(&mut p, c[0])).collect();
        prop_assert_eq!(roots.len(), comps.len());
    }

    #[test]
    fn table_rows_match_components(g in arb_graph(12)) {
        let ct = component_table(&g);
        for x in 0..g.n() {
            for c in components(&g, &closed_neighborhood(&g, x)) {
                for &u in &c {
                    for v in 0..g.n() {
                        prop_assert_eq!(ct.same(x, u, v), c.contains(&v));
                    }
                }
            }
        }
    }

    #[test]
    fn render_round_trip(g in arb_graph(20)) {
        let (back, _) = parse_graph(&render(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn intervals_symmetric_and_outside_neighborhoods(g in arb_graph(16)) {
        let t = interval_table(&g).unwrap();
        let ct = component_table(&g);
        for x in 0..g.n() {
            prop_assert!(!t.contains(x, x, (x + 1) % g.n()) || g.n() == 1);
            for y in 0..g.n() {
                if x == y { continue; }
                let i = interval(&g, &ct, x, y).unwrap();
                prop_assert_eq!(&i, &interval(&g, &ct, y, x).unwrap());
                prop_assert_eq!(&i, &t.interval(x, y));
                let nb = closed_neighborhood(&g, x).union(&closed_neighborhood(&g, y));
                prop_assert!(i.intersection(&nb).is_empty());
            }
        }
    }

    #[test]
    fn intervals_match_path_search(g in arb_graph(9)) {
        let t = interval_table(&g).unwrap();
        for z in 0..g.n() {
            for x in 0..g.n() {
                for y in 0..g.n() {
                    prop_assert_eq!(t.contains(z, x, y), between_by_paths(&g, z, x, y));
                }
            }
        }
    }

    #[test]
    fn triple_iff_axiom_fails(g in arb_graph(8)) {
        let t = interval_table(&g).unwrap();
        prop_assert_eq!(is_at_free(&g), check_betweenness_axiom(&t).is_none());
    }

    #[test]
    fn closure_laws(g in arb_graph(10), a in any::<u16>(), b in any::<u16>()) {
        let n = g.n();
        let t = interval_table(&g).unwrap();
        let fam = enumerate_convex_sets(&t, 16).unwrap();
        prop_assert!(is_alignment(&fam));
        let u = VertexSet::from_vertices(n, (0..n).filter(|v| a >> v & 1 == 1));
        let w = u.union(&VertexSet::from_vertices(n, (0..n).filter(|v| b >> v & 1 == 1)));
        let cu = closure(&t, &u);
        prop_assert!(u.is_subset(&cu));
        prop_assert!(cu.is_subset(&closure(&t, &w)));
        prop_assert_eq!(&closure(&t, &cu), &cu);
        prop_assert!(is_convex(&t, &cu));
        let m = sigma_abstract(&fam, mask_of(u.iter())).unwrap();
        prop_assert_eq!(m, mask_of(cu.iter()));
    }

    #[test]
    fn geometry_verdicts_agree(g in arb_graph(9)) {
        let t = interval_table(&g).unwrap();
        let r = verify_convex_geometry(&enumerate_convex_sets(&t, 16).unwrap());
        prop_assert!(r.consistent());
        if is_at_free(&g) {
            prop_assert!(r.all_pass());
        }
    }

    #[test]
    fn numbad_walk_matches_scratch(g in arb_graph(9), moves in proptest::collection::vec(0usize..8, 1..200)) {
        prop_assume!(is_at_free(&g) && g.n() >= 2);
        let t = interval_table(&g).unwrap();
        let mut st = NumbadState::compute(&t, canonical_order(&g, &t).unwrap());
        for j in moves {
            let j = j % (g.n() - 1);
            if st.swap_valid(j).unwrap() {
                st.apply_swap(&t, j).unwrap();
                prop_assert!(is_at_free_order(&t, st.order()).is_none());
            }
        }
        prop_assert_eq!(&st, &NumbadState::compute(&t, st.order().clone()));
    }
}

fn small_graphs(max_n: usize) -> impl Iterator<Item = Graph> {
    (1..=max_n).flat_map(corpus::catalog)
}

/// Every graph up to 6 plus a seeded sample on 7 vertices, half of them AT-free.
fn graphs_up_to_seven(sample: usize, seed: u64) -> Vec<Graph> {
    let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(seed);
    let mut gs: Vec<Graph> = small_graphs(6).collect();
    gs.extend(corpus::random_graphs(sample / 2, 7, 7, seed));
    gs.extend((0..sample / 2).map(|_| corpus::random_connected_at_free(7, &mut rng)));
    gs
}

#[test]
fn enumeration_equals_filtered_permutations() {
    for g in graphs_up_to_seven(60, 11) {
        let t = interval_table(&g).unwrap();
        let want: Vec<Vec<usize>> = all_perms(g.n())
            .into_iter()
            .filter(|p| is_at_free_order(&t, &LinearOrder::new(p.clone()).unwrap()).is_none())
            .collect();
        let got: Vec<Vec<usize>> = enumerate_at_free_orders(&t).unwrap().iter().map(|o| o.perm().to_vec()).collect();
        assert_eq!(got, want, "{g:?}");
        assert_eq!(got.is_empty(), !is_at_free(&g));
    }
}

#[test]
fn orders_are_suffix_convex() {
    for g in small_graphs(6) {
        let t = interval_table(&g).unwrap();
        for p in all_perms(g.n()) {
            let o = LinearOrder::new(p.clone()).unwrap();
            let suffixes = (0..g.n()).all(|i| is_convex(&t, &VertexSet::from_vertices(g.n(), p[i..].iter().copied())));
            assert_eq!(is_at_free_order(&t, &o).is_none(), suffixes, "{g:?} {p:?}");
        }
    }
}

fn prefixes_extend(t: &IntervalTable, orders: &[LinearOrder], prefix: &mut Vec<usize>, n: usize) {
    let free: Vec<usize> = (0..n).filter(|x| !prefix.contains(x)).collect();
    for x in free {
        prefix.push(x);
        let extends = orders.iter().any(|o| o.perm().starts_with(prefix));
        prefix.pop();
        assert_eq!(appendable(t, prefix, x), extends, "{prefix:?} + {x}");
        if extends {
            prefix.push(x);
            prefixes_extend(t, orders, prefix, n);
            prefix.pop();
        }
    }
}

#[test]
fn appendable_iff_extendable() {
    for g in graphs_up_to_seven(60, 12).into_iter().filter(is_at_free) {
        let t = interval_table(&g).unwrap();
        let orders = enumerate_at_free_orders(&t).unwrap();
        prefixes_extend(&t, &orders, &mut vec![], g.n());
    }
}

#[test]
fn swap_oracle_is_exact_up_to_seven() {
    for g in graphs_up_to_seven(80, 13).into_iter().filter(is_at_free) {
        let t = interval_table(&g).unwrap();
        for o in enumerate_at_free_orders(&t).unwrap() {
            let st = NumbadState::compute(&t, o.clone());
            for j in 0..g.n().saturating_sub(1) {
                let mut s = o.clone();
                s.swap(j);
                assert_eq!(st.swap_valid(j).unwrap(), is_at_free_order(&t, &s).is_none(), "{g:?} {o:?} {j}");
            }
        }
    }
}

#[test]
fn h_matches_its_definition() {
    for g in small_graphs(6).filter(|g| is_at_free(g) && is_connected(g) && !is_clique(g, &g.vertices())) {
        let t = interval_table(&g).unwrap();
        let d = decompose(&g, &component_table(&g)).unwrap();
        let cs = d.c.union(&d.s);
        for o in enumerate_at_free_orders(&t).unwrap().into_iter().step_by(3) {
            let st = NumbadState::compute(&t, o.clone());
            for x in cs.iter() {
                let direct = d.c.iter().filter(|&z| t.contains(x, d.omega, z) && o.pos(x) < o.pos(z)).count() as u32;
                assert_eq!(st.h_value(d.omega, x), direct, "{g:?} {o:?} x={x}");
            }
        }
    }
}

#[test]
fn decomposition_invariants() {
    let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(3);
    let mut graphs: Vec<Graph> = small_graphs(6).collect();
    for i in 0..150 {
        graphs.push(corpus::random_connected_at_free(7 + i % 6, &mut rng));
    }
    for g in graphs.iter().filter(|g| is_at_free(g) && is_connected(g) && !is_clique(g, &g.vertices())) {
        let t = interval_table(g).unwrap();
        let d = decompose(g, &component_table(g)).unwrap();
        assert!(d.big_omega.contains(d.omega));
        assert!(d.big_omega.intersection(&d.s).is_empty() && d.s.intersection(&d.c).is_empty());
        assert_eq!(d.big_omega.union(&d.s).union(&d.c), g.vertices());
        assert!(d.big_omega.iter().all(|w| d.s.iter().all(|s| g.adjacent(w, s))), "{g:?}");
        assert!(is_module(g, &d.big_omega), "{g:?}");
        assert!(is_convex(&t, &d.big_omega) && is_convex(&t, &d.c.union(&d.s)), "{g:?}");
        assert!(is_at_free_order(&t, &canonical_order(g, &t).unwrap()).is_none());
    }
}

#[test]
fn sigma_split_agrees_with_direct_validation() {
    for g in small_graphs(6).filter(|g| is_at_free(g) && is_connected(g) && !is_clique(g, &g.vertices())) {
        let t = interval_table(&g).unwrap();
        let d = decompose(&g, &component_table(&g)).unwrap();
        for p in all_perms(g.n()) {
            let o = LinearOrder::new(p).unwrap();
            assert_eq!(check_sigma_split(&t, &d, &o), is_at_free_order(&t, &o).is_none(), "{g:?} {o:?}");
        }
    }
}
