//! Dense undirected graphs, vertex sets and the edge-list format.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

/// Largest vertex count accepted anywhere (the interval table is cubic).
pub const MAX_VERTICES: usize = 2048;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet(FixedBitSet);

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert_range(..);
        VertexSet(s)
    }

    pub fn from_vertices(n: usize, vs: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, v: usize) {
        self.0.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.0.set(v, false);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.0.clone();
        s.union_with(&other.0);
        VertexSet(s)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.0.clone();
        s.intersect_with(&other.0);
        VertexSet(s)
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.0.clone();
        s.difference_with(&other.0);
        VertexSet(s)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn min(&self) -> Option<usize> {
        self.0.minimum()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![false; n * n], edge_count: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds an edge; self-loops are ignored and duplicates collapse.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || self.adj[u * self.n + v] {
            return;
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        self.edge_count += 1;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.adjacent(v, u))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Subgraph induced on `keep`, with vertices renumbered in ascending order.
    /// Returns the graph and the map from new ids to old ids.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = keep.to_vec();
        let mut g = Graph::empty(old.len());
        for (i, &u) in old.iter().enumerate() {
            for (j, &v) in old.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        (g, old)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// N[x]
pub fn closed_neighborhood(g: &Graph, x: usize) -> VertexSet {
    let mut s = VertexSet::from_vertices(g.n(), g.neighbors(x));
    s.insert(x);
    s
}

/// Connected components of G - removed, each sorted, ordered by least vertex.
pub fn components(g: &Graph, removed: &VertexSet) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] || removed.contains(s) {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for w in 0..n {
                if g.adjacent(v, w) && !seen[w] && !removed.contains(w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Components restricted to a vertex subset (everything outside `within` is removed).
pub fn components_within(g: &Graph, within: &VertexSet) -> Vec<Vec<usize>> {
    let removed = VertexSet::full(g.n()).difference(within);
    components(g, &removed)
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || components(g, &VertexSet::new(g.n())).len() == 1
}

/// For every x, a component labelling of G - N[x].
#[derive(Clone, Debug)]
pub struct ComponentTable {
    n: usize,
    labels: Vec<u32>,
}

const NO_LABEL: u32 = u32::MAX;

impl ComponentTable {
    /// Label of `v` in G - N[x]; `None` when v is in N[x].
    #[inline]
    pub fn label(&self, x: usize, v: usize) -> Option<u32> {
        match self.labels[x * self.n + v] {
            NO_LABEL => None,
            l => Some(l),
        }
    }

    /// True when u and v are both outside N[x] and connected in G - N[x].
    #[inline]
    pub fn same(&self, x: usize, u: usize, v: usize) -> bool {
        let a = self.labels[x * self.n + u];
        a != NO_LABEL && a == self.labels[x * self.n + v]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

pub fn component_table(g: &Graph) -> ComponentTable {
    let n = g.n();
    let mut labels = vec![NO_LABEL; n * n];
    for x in 0..n {
        let comps = components(g, &closed_neighborhood(g, x));
        for (l, comp) in comps.iter().enumerate() {
            for &v in comp {
                labels[x * n + v] = l as u32;
            }
        }
    }
    ComponentTable { n, labels }
}

/// Every vertex outside X sees all of X or none of it.
pub fn is_module(g: &Graph, x: &VertexSet) -> bool {
    (0..g.n()).filter(|&v| !x.contains(v)).all(|v| {
        let hits = x.iter().filter(|&u| g.adjacent(u, v)).count();
        hits == 0 || hits == x.len()
    })
}

pub fn is_clique(g: &Graph, x: &VertexSet) -> bool {
    let vs = x.to_vec();
    vs.iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.adjacent(u, v)))
}

/// Vertex names. Input tokens map to ids in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Names {
    names: Vec<String>,
    index: HashMap<String, usize>,
    explicit: bool,
}

impl Names {
    pub fn numeric(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Names { names, index, explicit: false }
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    /// True when the input used symbolic names rather than ids.
    pub fn is_explicit(&self) -> bool {
        self.explicit
    }

    pub fn lookup(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn set_to_string(&self, vs: impl IntoIterator<Item = usize>) -> String {
        let parts: Vec<&str> = vs.into_iter().map(|v| self.name(v)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Parses the edge-list format: `n m`, then `m` lines `u v`.
/// Lines starting with `#` and blank lines are skipped. If any endpoint is
/// not a number the whole file is read with symbolic names.
pub fn parse_graph(text: &str) -> Result<(Graph, Names)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || Error::Parse { line: hline, msg: format!("malformed header '{header}'") };
    if head.len() != 2 {
        return Err(bad_header());
    }
    let n: usize = head[0].parse().map_err(|_| bad_header())?;
    let m: usize = head[1].parse().map_err(|_| bad_header())?;
    if n > MAX_VERTICES {
        return Err(Error::CapExceeded { what: "vertex count", n, cap: MAX_VERTICES });
    }

    let mut raw: Vec<(usize, &str, &str)> = Vec::with_capacity(m);
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse { line, msg: format!("expected 'u v', got '{l}'") });
        }
        raw.push((line, parts[0], parts[1]));
    }
    if raw.len() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header announces {m} edges, found {}", raw.len()),
        });
    }

    let symbolic = raw
        .iter()
        .any(|(_, a, b)| a.parse::<usize>().is_err() || b.parse::<usize>().is_err());
    let mut g = Graph::empty(n);

    if !symbolic {
        for &(line, a, b) in &raw {
            let (u, v): (usize, usize) = (a.parse().unwrap(), b.parse().unwrap());
            if u >= n || v >= n {
                return Err(Error::Parse { line, msg: format!("vertex id out of range (n = {n})") });
            }
            if u == v {
                return Err(Error::Parse { line, msg: "self-loop".into() });
            }
            g.add_edge(u, v);
        }
        return Ok((g, Names::numeric(n)));
    }

    let mut names: Vec<String> = Vec::with_capacity(n);
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut intern = |tok: &str, line: usize| -> Result<usize> {
        if let Some(&i) = index.get(tok) {
            return Ok(i);
        }
        if names.len() == n {
            return Err(Error::Parse { line, msg: format!("more than {n} distinct vertex names") });
        }
        index.insert(tok.to_string(), names.len());
        names.push(tok.to_string());
        Ok(names.len() - 1)
    };
    for &(line, a, b) in &raw {
        let u = intern(a, line)?;
        let v = intern(b, line)?;
        if u == v {
            return Err(Error::Parse { line, msg: "self-loop".into() });
        }
        g.add_edge(u, v);
    }
    // vertices never mentioned keep their id as name
    for id in names.len()..n {
        let mut name = id.to_string();
        while index.contains_key(&name) {
            name.push('_');
        }
        index.insert(name.clone(), id);
        names.push(name);
    }
    Ok((g, Names { names, index, explicit: true }))
}

/// Canonical edge-list text (ids, edges ascending).
pub fn render(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Edge-list text using vertex names.
pub fn render_named(g: &Graph, names: &Names) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{} {}\n", names.name(u), names.name(v)));
    }
    s
}
