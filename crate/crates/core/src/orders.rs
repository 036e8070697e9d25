//! AT-free orders: validation, the backtracking oracle, the antimatroid
//! language check and the numbad counters behind adjacent swaps.

use std::collections::{HashMap, HashSet};

use crate::betweenness::IntervalTable;
use crate::{Error, Result};

pub const ENUMERATE_CAP: usize = 10;
pub const ANTIMATROID_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder {
    perm: Vec<usize>,
    pos: Vec<usize>,
}

impl LinearOrder {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in perm.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::Usage(format!("not a permutation: {perm:?}")));
            }
            pos[v] = i;
        }
        Ok(LinearOrder { perm, pos })
    }

    pub fn identity(n: usize) -> Self {
        LinearOrder { perm: (0..n).collect(), pos: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.perm[i]
    }

    #[inline]
    pub fn pos(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// Transposes positions j and j+1.
    #[inline]
    pub fn swap(&mut self, j: usize) {
        self.perm.swap(j, j + 1);
        self.pos[self.perm[j]] = j;
        self.pos[self.perm[j + 1]] = j + 1;
    }
}

impl std::fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.perm)
    }
}

/// Least (x,y,z) with z ∈ I(x,y) and z before both x and y.
pub fn is_at_free_order(tbl: &IntervalTable, o: &LinearOrder) -> Option<(usize, usize, usize)> {
    let n = tbl.n();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if tbl.contains(z, x, y) && o.pos(z) < o.pos(x) && o.pos(z) < o.pos(y) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// No two vertices left after prefix+x have x between them.
pub fn appendable(tbl: &IntervalTable, prefix: &[usize], x: usize) -> bool {
    let n = tbl.n();
    let mut rest = vec![true; n];
    for &p in prefix {
        rest[p] = false;
    }
    rest[x] = false;
    !(0..n).filter(|&y| rest[y]).any(|y| tbl.row_iter(x, y).any(|z| rest[z]))
}

/// All AT-free orders in lexicographic order.
pub fn enumerate_at_free_orders(tbl: &IntervalTable) -> Result<Vec<LinearOrder>> {
    let n = tbl.n();
    if n > ENUMERATE_CAP {
        return Err(Error::CapExceeded { what: "enumerate", n, cap: ENUMERATE_CAP });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(tbl: &IntervalTable, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<LinearOrder>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(LinearOrder::new(prefix.clone()).unwrap());
            return;
        }
        for x in 0..n {
            if used[x] || !appendable(tbl, prefix, x) {
                continue;
            }
            used[x] = true;
            prefix.push(x);
            rec(tbl, prefix, used, out);
            prefix.pop();
            used[x] = false;
        }
    }
    rec(tbl, &mut prefix, &mut used, &mut out);
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AntimatroidReport {
    /// A symbol that occurs in no word.
    pub alphabet: Option<usize>,
    /// A word repeating a symbol.
    pub simple: Option<Vec<usize>>,
    /// A word whose prefix is missing.
    pub hereditary: Option<Vec<usize>>,
    /// (s, t): s has a symbol outside t but no x in s makes tx a word.
    pub exchange: Option<(Vec<usize>, Vec<usize>)>,
}

impl AntimatroidReport {
    pub fn all_pass(&self) -> bool {
        self.alphabet.is_none() && self.simple.is_none() && self.hereditary.is_none() && self.exchange.is_none()
    }
}

/// Checks the four language axioms on all prefixes of all AT-free orders.
pub fn verify_antimatroid_language(tbl: &IntervalTable) -> Result<AntimatroidReport> {
    let n = tbl.n();
    if n > ANTIMATROID_CAP {
        return Err(Error::CapExceeded { what: "antimatroid check", n, cap: ANTIMATROID_CAP });
    }
    let orders = enumerate_at_free_orders(tbl)?;
    let mut lang: HashSet<Vec<usize>> = HashSet::new();
    lang.insert(Vec::new());
    for o in &orders {
        for k in 1..=n {
            lang.insert(o.perm()[..k].to_vec());
        }
    }
    let mut words: Vec<Vec<usize>> = lang.iter().cloned().collect();
    words.sort();

    let mut rep = AntimatroidReport::default();
    let mut seen: u32 = 0;
    for w in &words {
        for &v in w {
            seen |= 1 << v;
        }
    }
    rep.alphabet = (0..n).find(|&v| seen >> v & 1 == 0);

    rep.simple = words
        .iter()
        .find(|w| {
            let m = w.iter().fold(0u32, |m, &v| m | 1 << v);
            m.count_ones() as usize != w.len()
        })
        .cloned();

    rep.hereditary = words.iter().find(|w| (0..w.len()).any(|k| !lang.contains(&w[..k]))).cloned();

    let mask = |w: &[usize]| w.iter().fold(0u32, |m, &v| m | 1 << v);
    // one representative word per symbol set
    let mut by_set: HashMap<u32, &Vec<usize>> = HashMap::new();
    for w in &words {
        by_set.entry(mask(w)).or_insert(w);
    }
    let mut sets: Vec<(u32, &Vec<usize>)> = by_set.into_iter().collect();
    sets.sort();
    // words t grouped by (set(t), allowed extensions)
    let mut groups: HashMap<(u32, u32), &Vec<usize>> = HashMap::new();
    for t in &words {
        let mut ext = 0u32;
        let mut tx = t.clone();
        for x in 0..n {
            tx.push(x);
            if lang.contains(&tx) {
                ext |= 1 << x;
            }
            tx.pop();
        }
        groups.entry((mask(t), ext)).or_insert(t);
    }
    let mut groups: Vec<((u32, u32), &Vec<usize>)> = groups.into_iter().collect();
    groups.sort_by(|a, b| a.1.cmp(b.1));
    'ex: for ((tm, ext), t) in groups {
        for &(sm, s) in &sets {
            if sm & !tm != 0 && sm & ext == 0 {
                rep.exchange = Some((s.clone(), t.clone()));
                break 'ex;
            }
        }
    }
    Ok(rep)
}

/// numbad(x,y) = #{z after x : x ∈ I(y,z)} for the current order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumbadState {
    order: LinearOrder,
    counts: Vec<u32>,
}

impl NumbadState {
    pub fn compute(tbl: &IntervalTable, order: LinearOrder) -> Self {
        let n = tbl.n();
        let mut counts = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                counts[x * n + y] = tbl.row_iter(x, y).filter(|&z| order.pos(z) > order.pos(x)).count() as u32;
            }
        }
        NumbadState { order, counts }
    }

    pub fn order(&self) -> &LinearOrder {
        &self.order
    }

    #[inline]
    pub fn numbad(&self, x: usize, y: usize) -> u32 {
        self.counts[x * self.order.len() + y]
    }

    /// Swapping positions j and j+1 keeps the order AT-free.
    pub fn swap_valid(&self, j: usize) -> Result<bool> {
        if j + 1 >= self.order.len() {
            return Err(Error::Usage(format!("swap position {j} out of range")));
        }
        Ok(self.numbad(self.order.at(j + 1), self.order.at(j)) == 0)
    }

    pub fn apply_swap(&mut self, tbl: &IntervalTable, j: usize) -> Result<()> {
        if !self.swap_valid(j)? {
            return Err(Error::InvalidSwap(j));
        }
        self.swap_unchecked(tbl, j);
        Ok(())
    }

    /// Transposes positions j and j+1 and updates the counters.
    #[inline]
    pub fn swap_unchecked(&mut self, tbl: &IntervalTable, j: usize) {
        let n = self.order.len();
        let u = self.order.at(j);
        let v = self.order.at(j + 1);
        // v no longer follows u; u now follows v
        for y in tbl.row_iter(u, v) {
            self.counts[u * n + y] -= 1;
        }
        for y in tbl.row_iter(v, u) {
            self.counts[v * n + y] += 1;
        }
        self.order.swap(j);
    }

    /// h(x) = numbad(x, ω)
    pub fn h_value(&self, omega: usize, x: usize) -> u32 {
        self.numbad(x, omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::interval_table;
    use crate::Graph;

    fn p5() -> IntervalTable {
        interval_table(&Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])).unwrap()
    }

    #[test]
    fn validation() {
        let t = p5();
        let bad = LinearOrder::new(vec![2, 0, 1, 3, 4]).unwrap();
        assert_eq!(is_at_free_order(&t, &bad), Some((0, 4, 2)));
        assert_eq!(is_at_free_order(&t, &LinearOrder::identity(5)), None);
        assert!(LinearOrder::new(vec![0, 0]).is_err());
    }

    #[test]
    fn appendable_rule() {
        let t = p5();
        assert!(!appendable(&t, &[], 2));
        assert!(appendable(&t, &[0], 2));
    }

    #[test]
    fn counts() {
        let t = p5();
        assert_eq!(enumerate_at_free_orders(&t).unwrap().len(), 80);
        let p3 = interval_table(&Graph::from_edges(3, &[(0, 1), (1, 2)])).unwrap();
        assert_eq!(enumerate_at_free_orders(&p3).unwrap().len(), 6);
        let c6 = interval_table(&Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])).unwrap();
        assert!(enumerate_at_free_orders(&c6).unwrap().is_empty());
    }

    #[test]
    fn language_axioms() {
        assert!(verify_antimatroid_language(&p5()).unwrap().all_pass());
        let c6 = interval_table(&Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])).unwrap();
        let r = verify_antimatroid_language(&c6).unwrap();
        assert_eq!(r.alphabet, Some(0));
    }

    #[test]
    fn numbad_swaps() {
        let t = p5();
        // a c b d e
        let o = LinearOrder::new(vec![0, 2, 1, 3, 4]).unwrap();
        let mut st = NumbadState::compute(&t, o);
        assert_eq!(st.numbad(2, 0), 1);
        assert!(!st.swap_valid(0).unwrap());
        assert!(st.swap_valid(2).unwrap());
        let before = st.clone();
        st.apply_swap(&t, 2).unwrap();
        assert_eq!(st, NumbadState::compute(&t, LinearOrder::new(vec![0, 2, 3, 1, 4]).unwrap()));
        st.apply_swap(&t, 2).unwrap();
        assert_eq!(st, before);
        assert_eq!(st.apply_swap(&t, 0), Err(Error::InvalidSwap(0)));
        assert!(st.swap_valid(4).is_err());
    }

    #[test]
    fn h_on_identity() {
        let st = NumbadState::compute(&p5(), LinearOrder::identity(5));
        assert_eq!(st.h_value(0, 2), 1);
        assert_eq!(st.numbad(2, 4), 0);
    }
}
