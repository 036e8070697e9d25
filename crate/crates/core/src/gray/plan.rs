//! Level plan for the generator. Levels run front to back; each takes one
//! or two elements that are extreme among everything not yet placed.

use crate::betweenness::IntervalTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Single(usize),
    Pair(usize, usize),
}

struct Bits(Vec<u64>);

impl Bits {
    fn meets(&self, row: &[u64]) -> bool {
        self.0.iter().zip(row).any(|(a, b)| a & b != 0)
    }
}

fn bits(n: usize, vs: &[usize]) -> Bits {
    let mut b = vec![0u64; n.div_ceil(64).max(1)];
    for &v in vs {
        b[v / 64] |= 1 << (v % 64);
    }
    Bits(b)
}

/// Elements of E lying in no interval between two elements of E.
pub fn extreme_points(tbl: &IntervalTable, e: &[usize]) -> Vec<usize> {
    let eb = bits(tbl.n(), e);
    e.iter().copied().filter(|&v| !e.iter().any(|&y| eb.meets(tbl.row(v, y)))).collect()
}

/// The pair (a,b) cannot be swapped from front to back: some extreme z of
/// the rest lies between a and b and is bad for neither.
fn blocked(tbl: &IntervalTable, a: usize, b: usize, e: &[usize]) -> bool {
    let rest: Vec<usize> = e.iter().copied().filter(|&v| v != a && v != b).collect();
    if rest.is_empty() {
        return false;
    }
    extreme_points(tbl, &rest).into_iter().any(|z| {
        tbl.contains(z, a, b)
            && !rest.iter().any(|&y| y != z && (tbl.contains(z, a, y) || tbl.contains(z, b, y)))
    })
}

/// Depth-first search for a plan covering all vertices. None if the graph has
/// an asteroidal triple or no plan exists.
pub fn find_plan(tbl: &IntervalTable) -> Option<Vec<Level>> {
    fn rec(tbl: &IntervalTable, e: Vec<usize>, out: &mut Vec<Level>) -> bool {
        if e.is_empty() {
            return true;
        }
        let ext = extreme_points(tbl, &e);
        if ext.len() == 1 {
            let v = ext[0];
            out.push(Level::Single(v));
            if rec(tbl, e.iter().copied().filter(|&u| u != v).collect(), out) {
                return true;
            }
            out.pop();
            return false;
        }
        let mut cands: Vec<(bool, usize, usize)> = Vec::new();
        for (i, &a) in ext.iter().enumerate() {
            for &b in &ext[i + 1..] {
                let between = e.iter().any(|&z| tbl.contains(z, a, b));
                cands.push((between, a, b));
            }
        }
        cands.sort_unstable();
        for (_, a, b) in cands {
            if blocked(tbl, a, b, &e) {
                continue;
            }
            out.push(Level::Pair(a, b));
            if rec(tbl, e.iter().copied().filter(|&u| u != a && u != b).collect(), out) {
                return true;
            }
            out.pop();
        }
        false
    }
    let mut out = Vec::new();
    if rec(tbl, (0..tbl.n()).collect(), &mut out) {
        Some(out)
    } else {
        None
    }
}

/// The word obtained by reading the plan front to back.
pub fn home_word(plan: &[Level]) -> Vec<usize> {
    let mut w = Vec::new();
    for l in plan {
        match *l {
            Level::Single(v) => w.push(v),
            Level::Pair(a, b) => w.extend([a, b]),
        }
    }
    w
}
