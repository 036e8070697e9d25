//! Convex sets of a graph, hull operators and convex-geometry checks on
//! explicit set systems. Set-system members are bit masks over `0..|E|`.

use crate::betweenness::IntervalTable;
use crate::{Error, Result, VertexSet};

pub const DEFAULT_FAMILY_CAP: usize = 16;
pub const MAX_FAMILY_CAP: usize = 20;

pub type Mask = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    universe: usize,
    members: Vec<Mask>,
}

impl SetSystem {
    /// Members are deduplicated and sorted by mask.
    pub fn new(universe: usize, members: impl IntoIterator<Item = Mask>) -> Result<Self> {
        if universe > MAX_FAMILY_CAP {
            return Err(Error::CapExceeded { what: "set system", n: universe, cap: MAX_FAMILY_CAP });
        }
        let full = full_mask(universe);
        let mut members: Vec<Mask> = members.into_iter().collect();
        if let Some(m) = members.iter().find(|&&m| m & !full != 0) {
            return Err(Error::Usage(format!("member {m:#b} is outside the universe")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetSystem { universe, members })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn contains(&self, m: Mask) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    fn member_table(&self) -> Vec<bool> {
        let mut t = vec![false; 1 << self.universe];
        for &m in &self.members {
            t[m as usize] = true;
        }
        t
    }
}

pub fn full_mask(n: usize) -> Mask {
    if n == 32 { Mask::MAX } else { (1 << n) - 1 }
}

pub fn mask_of(vs: impl IntoIterator<Item = usize>) -> Mask {
    vs.into_iter().fold(0, |m, v| m | 1 << v)
}

pub fn elements(m: Mask) -> Vec<usize> {
    (0..32).filter(|&i| m >> i & 1 == 1).collect()
}

/// Least (x,y,z), x < y both in X, with z ∈ I(x,y) outside X.
pub fn convexity_witness(tbl: &IntervalTable, x: &VertexSet) -> Option<(usize, usize, usize)> {
    let vs = x.to_vec();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if let Some(z) = (0..tbl.n()).find(|&z| !x.contains(z) && tbl.contains(z, a, b)) {
                return Some((a, b, z));
            }
        }
    }
    None
}

pub fn is_convex(tbl: &IntervalTable, x: &VertexSet) -> bool {
    convexity_witness(tbl, x).is_none()
}

/// Least interval-closed superset of U.
pub fn closure(tbl: &IntervalTable, u: &VertexSet) -> VertexSet {
    let n = tbl.n();
    let mut x = u.clone();
    loop {
        let mut grew = false;
        for z in 0..n {
            if x.contains(z) {
                continue;
            }
            let hit = x.iter().any(|a| tbl.row_iter(z, a).any(|b| x.contains(b)));
            if hit {
                x.insert(z);
                grew = true;
            }
        }
        if !grew {
            return x;
        }
    }
}

/// All convex vertex sets, as masks.
pub fn enumerate_convex_sets(tbl: &IntervalTable, cap: usize) -> Result<SetSystem> {
    let n = tbl.n();
    let cap = cap.min(MAX_FAMILY_CAP);
    if n > cap {
        return Err(Error::CapExceeded { what: "convex family", n, cap });
    }
    let rows: Vec<Vec<Mask>> =
        (0..n).map(|z| (0..n).map(|x| tbl.row_mask(z, x) as Mask).collect()).collect();
    let members = (0..(1u64 << n) as u32).filter(|&m| {
        (0..n).filter(|&z| m >> z & 1 == 0).all(|z| {
            let mut xs = m;
            while xs != 0 {
                let x = xs.trailing_zeros() as usize;
                xs &= xs - 1;
                if rows[z][x] & m != 0 {
                    return false;
                }
            }
            true
        })
    });
    SetSystem::new(n, members)
}

pub fn is_alignment(s: &SetSystem) -> bool {
    let full = full_mask(s.universe);
    if !s.contains(0) || !s.contains(full) {
        return false;
    }
    let m = s.members();
    m.iter().enumerate().all(|(i, &a)| m[i + 1..].iter().all(|&b| s.contains(a & b)))
}

/// Hull operator of an alignment, tabulated over all subsets.
pub struct Hull {
    sigma: Vec<Mask>,
}

impl Hull {
    pub fn new(s: &SetSystem) -> Result<Self> {
        if !is_alignment(s) {
            return Err(Error::NotAlignment);
        }
        let n = s.universe;
        let member = s.member_table();
        let mut sigma = vec![0 as Mask; 1 << n];
        for u in (0..1usize << n).rev() {
            if member[u] {
                sigma[u] = u as Mask;
                continue;
            }
            let mut acc = full_mask(n);
            for b in 0..n {
                if u >> b & 1 == 0 {
                    acc &= sigma[u | 1 << b];
                }
            }
            sigma[u] = acc;
        }
        Ok(Hull { sigma })
    }

    #[inline]
    pub fn of(&self, u: Mask) -> Mask {
        self.sigma[u as usize]
    }
}

pub fn sigma_abstract(s: &SetSystem, u: Mask) -> Result<Mask> {
    if !is_alignment(s) {
        return Err(Error::NotAlignment);
    }
    Ok(s.members().iter().filter(|&&m| m & u == u).fold(full_mask(s.universe), |a, &m| a & m))
}

/// σ(C+y) ∖ y is a member.
pub fn is_extreme(s: &SetSystem, c: Mask, y: usize) -> Result<bool> {
    let h = sigma_abstract(s, c | 1 << y)?;
    Ok(s.contains(h & !(1 << y)))
}

/// y_{i+1} ∈ σ(y_i + X) around the whole cycle.
pub fn induces_cycle(s: &SetSystem, ys: &[usize], x: Mask) -> Result<bool> {
    if ys.len() < 2 {
        return Err(Error::Usage("a cycle needs at least two elements".into()));
    }
    for i in 0..ys.len() {
        let next = ys[(i + 1) % ys.len()];
        if sigma_abstract(s, x | 1 << ys[i])? >> next & 1 == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Pass,
    Fail(T),
    NotApplicable,
}

impl<T> Verdict<T> {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometryReport {
    pub alignment: bool,
    /// (Y, x, z): z ∈ σ(Y+x) and x ∈ σ(Y+z), Y a member.
    pub anti_exchange: Verdict<(Mask, usize, usize)>,
    /// A member other than E with no one-element extension.
    pub ej_augment: Verdict<Mask>,
    /// (X, y1..yk): a cycle induced on member X outside X.
    pub cycle_char: Verdict<(Mask, Vec<usize>)>,
}

impl GeometryReport {
    pub fn all_pass(&self) -> bool {
        self.alignment
            && self.anti_exchange.passed()
            && self.ej_augment.passed()
            && self.cycle_char.passed()
    }

    /// The three characterizations give the same answer.
    pub fn consistent(&self) -> bool {
        let v = [self.anti_exchange.passed(), self.ej_augment.passed(), self.cycle_char.passed()];
        v[0] == v[1] && v[1] == v[2]
    }
}

pub fn verify_convex_geometry(s: &SetSystem) -> GeometryReport {
    let hull = match Hull::new(s) {
        Ok(h) => h,
        Err(_) => {
            return GeometryReport {
                alignment: false,
                anti_exchange: Verdict::NotApplicable,
                ej_augment: Verdict::NotApplicable,
                cycle_char: Verdict::NotApplicable,
            }
        }
    };
    let n = s.universe;
    let full = full_mask(n);

    let mut anti_exchange = Verdict::Pass;
    'ae: for &y in s.members() {
        for x in (0..n).filter(|&x| y >> x & 1 == 0) {
            let hx = hull.of(y | 1 << x);
            for z in (0..n).filter(|&z| z != x && y >> z & 1 == 0) {
                if hx >> z & 1 == 1 && hull.of(y | 1 << z) >> x & 1 == 1 {
                    anti_exchange = Verdict::Fail((y, x, z));
                    break 'ae;
                }
            }
        }
    }

    let ej_augment = match s
        .members()
        .iter()
        .find(|&&m| m != full && (0..n).all(|y| m >> y & 1 == 1 || !s.contains(m | 1 << y)))
    {
        Some(&m) => Verdict::Fail(m),
        None => Verdict::Pass,
    };

    let mut cycle_char = Verdict::Pass;
    for &x in s.members() {
        if let Some(c) = find_cycle(n, x, &hull) {
            cycle_char = Verdict::Fail((x, c));
            break;
        }
    }

    GeometryReport { alignment: true, anti_exchange, ej_augment, cycle_char }
}

/// Directed cycle in the digraph on E∖X with y → y' iff y' ∈ σ(X+y).
fn find_cycle(n: usize, x: Mask, hull: &Hull) -> Option<Vec<usize>> {
    let out: Vec<Mask> = (0..n)
        .map(|y| if x >> y & 1 == 1 { 0 } else { hull.of(x | 1 << y) & !x & !(1 << y) })
        .collect();
    // 0 = unseen, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(v: usize, out: &[Mask], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for w in elements(out[v]) {
            match state[w] {
                1 => {
                    let i = stack.iter().position(|&s| s == w).unwrap();
                    return Some(stack[i..].to_vec());
                }
                0 => {
                    if let Some(c) = dfs(w, out, state, stack) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    for v in (0..n).filter(|&v| x >> v & 1 == 0) {
        if state[v] == 0 {
            if let Some(c) = dfs(v, &out, &mut state, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}

/// Least pair (A,B), A < B by mask, whose union is not a member.
pub fn is_union_closed(s: &SetSystem) -> Option<(Mask, Mask)> {
    union_counterexample_among(s, s.members())
}

/// As `is_union_closed`, scanning only pairs from `candidates`.
pub fn union_counterexample_among(s: &SetSystem, candidates: &[Mask]) -> Option<(Mask, Mask)> {
    let mut c = candidates.to_vec();
    c.sort_unstable();
    c.dedup();
    for (i, &a) in c.iter().enumerate() {
        for &b in &c[i + 1..] {
            if !s.contains(a | b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Parses `|E| k` followed by k member lines; `-` is the empty set.
pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let bad = || Error::Parse { line: hline, msg: format!("malformed header '{header}'") };
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(bad());
    }
    let e: usize = head[0].parse().map_err(|_| bad())?;
    let k: usize = head[1].parse().map_err(|_| bad())?;
    if e > MAX_FAMILY_CAP {
        return Err(Error::CapExceeded { what: "set system", n: e, cap: MAX_FAMILY_CAP });
    }
    let mut members = Vec::with_capacity(k);
    for (line, l) in lines {
        let mut m: Mask = 0;
        if l != "-" {
            for tok in l.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse { line, msg: format!("bad element '{tok}'") })?;
                if v >= e {
                    return Err(Error::Parse { line, msg: format!("element {v} out of range") });
                }
                m |= 1 << v;
            }
        }
        members.push(m);
    }
    if members.len() != k {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header announces {k} members, found {}", members.len()),
        });
    }
    SetSystem::new(e, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betweenness::interval_table;
    use crate::Graph;

    fn chain(n: usize) -> SetSystem {
        SetSystem::new(n, (0..=n).map(|k| full_mask(k))).unwrap()
    }

    #[test]
    fn p5_family() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let t = interval_table(&g).unwrap();
        let fam = enumerate_convex_sets(&t, 16).unwrap();
        // only a,e without c is excluded: 2^5 - 2^2
        let brute = (0u32..32).filter(|m| !(m & 1 == 1 && m >> 4 & 1 == 1 && m >> 2 & 1 == 0)).count();
        assert_eq!(fam.members().len(), brute);
        assert_eq!(brute, 28);
        let hull = closure(&t, &VertexSet::from_vertices(5, [0, 4]));
        assert_eq!(hull.to_vec(), vec![0, 2, 4]);
        assert!(is_alignment(&fam));
        assert!(verify_convex_geometry(&fam).all_pass());
    }

    #[test]
    fn small_systems() {
        let two = SetSystem::new(2, [0, 3]).unwrap();
        assert!(is_alignment(&two));
        assert_eq!(sigma_abstract(&two, 1).unwrap(), 3);
        assert!(!is_extreme(&two, 0, 0).unwrap());
        assert!(induces_cycle(&two, &[0, 1], 0).unwrap());
        let r = verify_convex_geometry(&two);
        assert!(r.alignment && !r.anti_exchange.passed() && !r.ej_augment.passed() && !r.cycle_char.passed());

        let c = chain(3);
        assert!(is_alignment(&c));
        assert!(is_extreme(&c, 0, 0).unwrap());
        assert!(!induces_cycle(&c, &[0, 1], 0).unwrap());
        assert!(verify_convex_geometry(&c).all_pass());
        assert_eq!(is_union_closed(&c), None);

        let bad = SetSystem::new(2, [0, 1, 2]).unwrap();
        assert!(!is_alignment(&bad));
        let r = verify_convex_geometry(&bad);
        assert_eq!(r.anti_exchange, Verdict::NotApplicable);
    }

    #[test]
    fn set_system_format() {
        let s = parse_set_system("2 3\n-\n0\n0 1\n").unwrap();
        assert_eq!(s.members(), &[0, 1, 3]);
        assert!(parse_set_system("2 1\n5").is_err());
        assert!(parse_set_system("2 2\n-").is_err());
    }
}
