use crate::betweenness::IntervalTable;
use crate::graph::{components_within, is_clique, is_connected, ComponentTable, Graph};
use crate::orders::LinearOrder;
use crate::{Error, Result, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub omega: usize,
    pub big_omega: VertexSet,
    pub s: VertexSet,
    pub c: VertexSet,
}

/// Best pivot within `vs` and its largest component (least-id ties).
fn pivot(g: &Graph, vs: &VertexSet) -> (usize, Vec<usize>) {
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for w in vs.iter() {
        let mut rest = vs.clone();
        rest.remove(w);
        for v in g.neighbors(w) {
            rest.remove(v);
        }
        let comps = components_within(g, &rest);
        let big = comps.iter().map(Vec::len).max().unwrap_or(0);
        if best.as_ref().is_none_or(|b| big > b.0) {
            // components come ordered by least vertex, so the first of max size wins
            let c = comps.into_iter().find(|c| c.len() == big).unwrap_or_default();
            best = Some((big, w, c));
        }
    }
    let (_, w, c) = best.expect("pivot of an empty set");
    (w, c)
}

fn split(g: &Graph, vs: &VertexSet) -> Decomposition {
    let n = g.n();
    let (omega, comp) = pivot(g, vs);
    let c = VertexSet::from_vertices(n, comp);
    let s = VertexSet::from_vertices(
        n,
        vs.iter().filter(|&v| !c.contains(v) && c.iter().any(|u| g.adjacent(u, v))),
    );
    let big_omega = vs.difference(&c).difference(&s);
    Decomposition { omega, big_omega, s, c }
}

pub fn choose_omega(g: &Graph, _tbl: &ComponentTable) -> Result<usize> {
    if g.n() == 0 {
        return Err(Error::Empty);
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    Ok(pivot(g, &g.vertices()).0)
}

pub fn decompose(g: &Graph, _tbl: &ComponentTable) -> Result<Decomposition> {
    if g.n() == 0 {
        return Err(Error::Empty);
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    if is_clique(g, &g.vertices()) {
        return Err(Error::Clique);
    }
    Ok(split(g, &g.vertices()))
}

fn canonical_within(g: &Graph, vs: &VertexSet, out: &mut Vec<usize>) {
    if is_clique(g, vs) {
        out.extend(vs.iter());
        return;
    }
    let comps = components_within(g, vs);
    if comps.len() > 1 {
        for c in comps {
            canonical_within(g, &VertexSet::from_vertices(g.n(), c), out);
        }
        return;
    }
    let d = split(g, vs);
    canonical_within(g, &d.big_omega, out);
    canonical_within(g, &d.c.union(&d.s), out);
}

/// The recursive order alone: cliques ascending, components by least id,
/// otherwise Ω's order then (C ∪ S)'s. Not always AT-free for G, since
/// intervals inside C ∪ S may run through Ω.
pub fn recursive_order(g: &Graph) -> Vec<usize> {
    let mut out = Vec::with_capacity(g.n());
    if g.n() > 0 {
        canonical_within(g, &g.vertices(), &mut out);
    }
    out
}

/// β: the recursive order, with each vertex taken as soon as it lies between
/// no two vertices still to come. Equals `recursive_order` whenever that is
/// already AT-free.
pub fn canonical_order(g: &Graph, tbl: &IntervalTable) -> Result<LinearOrder> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Empty);
    }
    let priority = recursive_order(g);
    let words = n.div_ceil(64);
    let mut rest = vec![0u64; words];
    for v in 0..n {
        rest[v / 64] |= 1 << (v % 64);
    }
    let meet = |row: &[u64], rest: &[u64]| -> u32 { row.iter().zip(rest).map(|(a, b)| (a & b).count_ones()).sum() };
    // pairs of remaining vertices that x lies between, counted per endpoint
    let mut cnt: Vec<u32> = (0..n).map(|x| (0..n).map(|y| meet(tbl.row(x, y), &rest)).sum()).collect();
    let mut taken = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let v = priority.iter().copied().find(|&x| !taken[x] && cnt[x] == 0).ok_or(Error::NotAtFree)?;
        taken[v] = true;
        out.push(v);
        rest[v / 64] &= !(1 << (v % 64));
        for x in (0..n).filter(|&x| !taken[x]) {
            cnt[x] -= 2 * meet(tbl.row(x, v), &rest);
        }
    }
    LinearOrder::new(out)
}

/// The order is AT-free iff its restrictions to Ω and to C ∪ S are, and every
/// x ∈ I(ω,y) with x before y among C ∪ S comes after ω, for each ω ∈ Ω.
pub fn check_sigma_split(tbl: &IntervalTable, d: &Decomposition, o: &LinearOrder) -> bool {
    let restricted_ok = |part: &VertexSet| {
        let vs = part.to_vec();
        !vs.iter().any(|&z| {
            vs.iter().any(|&x| {
                vs.iter().any(|&y| tbl.contains(z, x, y) && o.pos(z) < o.pos(x) && o.pos(z) < o.pos(y))
            })
        })
    };
    let cs = d.c.union(&d.s);
    if !restricted_ok(&d.big_omega) || !restricted_ok(&cs) {
        return false;
    }
    let inner = cs.to_vec();
    d.big_omega.iter().all(|w| {
        inner.iter().all(|&x| {
            inner
                .iter()
                .all(|&y| !(tbl.contains(x, w, y) && o.pos(x) < o.pos(y)) || o.pos(w) < o.pos(x))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::interval_table;
    use crate::graph::component_table;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    #[test]
    fn p5_decomposition() {
        let g = path(5);
        let ct = component_table(&g);
        assert_eq!(choose_omega(&g, &ct).unwrap(), 0);
        let d = decompose(&g, &ct).unwrap();
        assert_eq!(d.omega, 0);
        assert_eq!(d.big_omega.to_vec(), vec![0]);
        assert_eq!(d.s.to_vec(), vec![1]);
        assert_eq!(d.c.to_vec(), vec![2, 3, 4]);
    }

    #[test]
    fn p4_decomposition() {
        let g = path(4);
        let d = decompose(&g, &component_table(&g)).unwrap();
        assert_eq!((d.omega, d.c.to_vec(), d.s.to_vec(), d.big_omega.to_vec()), (0, vec![2, 3], vec![1], vec![0]));
    }

    #[test]
    fn canonical_orders() {
        let g = path(5);
        let t = interval_table(&g).unwrap();
        assert_eq!(canonical_order(&g, &t).unwrap().perm(), &[0, 1, 2, 3, 4]);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(canonical_order(&two, &interval_table(&two).unwrap()).unwrap().perm(), &[0, 1, 2, 3]);
    }

    #[test]
    fn intervals_through_omega_are_respected() {
        // 3 lies between 4 and 6 only via vertex 1, which sits in Omega
        let g = Graph::from_edges(
            8,
            &[(0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (1, 2), (1, 3), (1, 4), (2, 3), (2, 6), (3, 5), (3, 7), (4, 5), (4, 7), (5, 6), (5, 7), (6, 7)],
        );
        let t = interval_table(&g).unwrap();
        let raw = LinearOrder::new(recursive_order(&g)).unwrap();
        assert_eq!(raw.perm(), &[1, 2, 3, 6, 0, 4, 5, 7]);
        assert!(crate::orders::is_at_free_order(&t, &raw).is_some());
        let beta = canonical_order(&g, &t).unwrap();
        assert_eq!(beta.perm(), &[1, 2, 6, 3, 0, 4, 5, 7]);
        assert!(crate::orders::is_at_free_order(&t, &beta).is_none());
    }

    #[test]
    fn errors() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(decompose(&k3, &component_table(&k3)), Err(Error::Clique));
        assert_eq!(choose_omega(&k3, &component_table(&k3)), Ok(0));
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(decompose(&two, &component_table(&two)), Err(Error::Disconnected));
    }
}
