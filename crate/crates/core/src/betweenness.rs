//! The betweenness relation z ∈ I(x,y), asteroidal triples and the
//! interval rules that hold on AT-free graphs.

use crate::graph::{closed_neighborhood, component_table, ComponentTable, Graph, MAX_VERTICES};
use crate::{Error, Result, VertexSet};

/// Bit-packed table of `z ∈ I(x,y)`, stored as rows indexed by (z, x) over y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalTable {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl IntervalTable {
    fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        IntervalTable { n, words, bits: vec![0; n * n * words] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// z ∈ I(x,y)
    #[inline]
    pub fn contains(&self, z: usize, x: usize, y: usize) -> bool {
        let w = self.bits[(z * self.n + x) * self.words + y / 64];
        w >> (y % 64) & 1 == 1
    }

    /// All y with z ∈ I(x,y), as 64-bit words.
    #[inline]
    pub fn row(&self, z: usize, x: usize) -> &[u64] {
        let s = (z * self.n + x) * self.words;
        &self.bits[s..s + self.words]
    }

    pub fn row_iter(&self, z: usize, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(z, x).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Row (z, x) as a single mask; only for n <= 64.
    #[inline]
    pub fn row_mask(&self, z: usize, x: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[(z * self.n + x) * self.words]
    }

    fn set(&mut self, z: usize, x: usize, y: usize) {
        self.bits[(z * self.n + x) * self.words + y / 64] |= 1 << (y % 64);
    }

    pub fn interval(&self, x: usize, y: usize) -> VertexSet {
        VertexSet::from_vertices(self.n, (0..self.n).filter(|&z| self.contains(z, x, y)))
    }

    /// True when every interval is empty.
    pub fn is_trivial(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }
}

/// I(x,y) from the component table.
pub fn interval(g: &Graph, tbl: &ComponentTable, x: usize, y: usize) -> Result<VertexSet> {
    if x == y {
        return Err(Error::Usage(format!("interval needs two distinct vertices, got {x} twice")));
    }
    let mut s = VertexSet::new(g.n());
    if g.adjacent(x, y) {
        return Ok(s);
    }
    for z in 0..g.n() {
        if tbl.same(y, z, x) && tbl.same(x, z, y) {
            s.insert(z);
        }
    }
    Ok(s)
}

pub fn interval_table_from(g: &Graph, ct: &ComponentTable) -> IntervalTable {
    let n = g.n();
    let mut t = IntervalTable::empty(n);
    for x in 0..n {
        for y in x + 1..n {
            if g.adjacent(x, y) {
                continue;
            }
            for z in 0..n {
                if ct.same(y, z, x) && ct.same(x, z, y) {
                    t.set(z, x, y);
                    t.set(z, y, x);
                }
            }
        }
    }
    t
}

pub fn interval_table(g: &Graph) -> Result<IntervalTable> {
    if g.n() > MAX_VERTICES {
        return Err(Error::CapExceeded { what: "interval table", n: g.n(), cap: MAX_VERTICES });
    }
    Ok(interval_table_from(g, &component_table(g)))
}

/// Least (x,y,z), x<y<z, pairwise nonadjacent, each pair joined avoiding N of the third.
pub fn find_asteroidal_triple(g: &Graph, tbl: &ComponentTable) -> Option<(usize, usize, usize)> {
    let n = g.n();
    for x in 0..n {
        for y in x + 1..n {
            if g.adjacent(x, y) {
                continue;
            }
            for z in y + 1..n {
                if g.adjacent(x, z) || g.adjacent(y, z) {
                    continue;
                }
                if tbl.same(z, x, y) && tbl.same(y, x, z) && tbl.same(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn is_at_free(g: &Graph) -> bool {
    find_asteroidal_triple(g, &component_table(g)).is_none()
}

/// Least (x,y,z) with z ∈ I(x,y) and x ∈ I(z,y).
pub fn check_betweenness_axiom(tbl: &IntervalTable) -> Option<(usize, usize, usize)> {
    let n = tbl.n();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if tbl.contains(z, x, y) && tbl.contains(x, z, y) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// u ∈ I(v,x) and v ∈ I(u,y) imply u ∈ I(x,y). Returns the least (u,v,x,y) breaking it.
pub fn check_chain_rule(tbl: &IntervalTable) -> Option<(usize, usize, usize, usize)> {
    let n = tbl.n();
    for u in 0..n {
        for v in 0..n {
            for x in 0..n {
                if !tbl.contains(u, v, x) {
                    continue;
                }
                for y in tbl.row_iter(v, u) {
                    if !tbl.contains(u, x, y) {
                        return Some((u, v, x, y));
                    }
                }
            }
        }
    }
    None
}

/// With a ∈ I(x,b) and b ∈ I(y,z): a is outside N[y] ∩ N[z], and if a is outside
/// N[y] ∪ N[z] then a lies in I(x,y), I(x,z) or I(y,z).
/// Returns the least (a,b,x,y,z) breaking either part.
pub fn check_fan_rule(g: &Graph, tbl: &IntervalTable) -> Option<(usize, usize, usize, usize, usize)> {
    let n = tbl.n();
    let nb: Vec<VertexSet> = (0..n).map(|v| closed_neighborhood(g, v)).collect();
    for a in 0..n {
        for b in 0..n {
            for x in tbl.row_iter(a, b) {
                for y in 0..n {
                    for z in tbl.row_iter(b, y) {
                        let in_y = nb[y].contains(a);
                        let in_z = nb[z].contains(a);
                        if in_y && in_z {
                            return Some((a, b, x, y, z));
                        }
                        if in_y || in_z {
                            continue;
                        }
                        if !(tbl.contains(a, x, y) || tbl.contains(a, x, z) || tbl.contains(a, y, z)) {
                            return Some((a, b, x, y, z));
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn p5_has_one_interval() {
        let g = path(5);
        let t = interval_table(&g).unwrap();
        let ct = component_table(&g);
        assert_eq!(interval(&g, &ct, 0, 4).unwrap().to_vec(), vec![2]);
        for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    let want = z == 2 && ((x, y) == (0, 4) || (x, y) == (4, 0));
                    assert_eq!(t.contains(z, x, y), want, "{z} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn interval_rejects_equal_endpoints() {
        let g = path(3);
        assert!(interval(&g, &component_table(&g), 1, 1).is_err());
    }

    #[test]
    fn cliques_and_c5_are_trivial() {
        assert!(interval_table(&complete(5)).unwrap().is_trivial());
        assert!(interval_table(&cycle(5)).unwrap().is_trivial());
    }

    #[test]
    fn asteroidal_triples() {
        let c6 = cycle(6);
        assert_eq!(find_asteroidal_triple(&c6, &component_table(&c6)), Some((0, 2, 4)));
        assert!(!is_at_free(&c6));
        assert!(is_at_free(&path(5)));
        assert!(is_at_free(&complete(4)));
        assert!(is_at_free(&Graph::empty(1)));
    }

    #[test]
    fn axiom_sweeps() {
        let p5 = interval_table(&path(5)).unwrap();
        assert_eq!(check_betweenness_axiom(&p5), None);
        assert_eq!(check_chain_rule(&p5), None);
        assert_eq!(check_fan_rule(&path(5), &p5), None);
        let c6 = interval_table(&cycle(6)).unwrap();
        let (x, y, z) = check_betweenness_axiom(&c6).unwrap();
        assert!(c6.contains(z, x, y) && c6.contains(x, z, y));
        assert_eq!(check_betweenness_axiom(&interval_table(&complete(4)).unwrap()), None);
    }
}
