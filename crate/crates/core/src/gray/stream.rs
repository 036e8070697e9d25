//! Gray-code stream over all AT-free orders.
//!
//! The plan fixes a home word. Each pair level walks its two elements
//! through the elements placed after it along a path of configurations,
//! and every configuration is a block in which the lower levels run in
//! full, alternating direction. Consecutive configurations are one or two
//! adjacent swaps apart. The whole listing closes into a cycle, so it is
//! started at the canonical order and wrapped around.

use crate::betweenness::IntervalTable;
use crate::gray::plan::{home_word, Level};
use crate::orders::{LinearOrder, NumbadState};

/// One or two swap positions, applied left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Swaps {
    len: u8,
    pos: [usize; 2],
}

impl Swaps {
    pub fn as_slice(&self) -> &[usize] {
        &self.pos[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn push(&mut self, j: usize) {
        assert!(self.len < 2, "more than two swaps between consecutive orders");
        self.pos[self.len as usize] = j;
        self.len += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrayStep {
    Init(LinearOrder),
    Delta(Swaps),
}

/// Local positions (of a, of b) among the pair and the elements after it.
type Cfg = (u32, u32);

#[derive(Clone, Copy, Debug, Default)]
struct Step {
    len: u8,
    // (element: 0 = a, 1 = b, direction)
    moves: [(u8, i8); 2],
}

#[derive(Clone, Debug, Default)]
struct Frame {
    f: usize,
    a: usize,
    b: usize,
    level: usize,
    dir: i8,
    t: usize,
    path: Vec<Cfg>,
    steps: Vec<Step>,
    switch: Vec<bool>,
    d: Vec<i8>,
}

fn half(k: usize, top: usize, out: &mut Vec<(usize, usize)>) {
    let flip = top > k && k % 2 == 0;
    let mut up = true;
    for x in 0..=k {
        if !up {
            out.extend((x..=top).rev().map(|y| (x, y)));
        } else if x == 0 && flip {
            out.extend((x..=top).step_by(2).map(|y| (x, y)));
            let odds: Vec<usize> = (x + 1..=top).step_by(2).collect();
            out.extend(odds.into_iter().rev().map(|y| (x, y)));
        } else {
            out.extend((x..=top).map(|y| (x, y)));
        }
        let last = out.last().unwrap().1;
        up = last != top || top == x;
    }
}

fn apply_move(p: Cfg, e: u8, d: i8) -> Cfg {
    let (pa, pb) = p;
    if e == 0 {
        let na = (pa as i64 + d as i64) as u32;
        if na == pb { (na, pa) } else { (na, pb) }
    } else {
        let nb = (pb as i64 + d as i64) as u32;
        if nb == pa { (pb, nb) } else { (pa, nb) }
    }
}

const MOVES: [(u8, i8); 4] = [(0, 1), (0, -1), (1, 1), (1, -1)];

fn moves_between(p: Cfg, q: Cfg) -> Step {
    for m in MOVES {
        if apply_move(p, m.0, m.1) == q {
            return Step { len: 1, moves: [m, m] };
        }
    }
    for m1 in MOVES {
        let p1 = apply_move(p, m1.0, m1.1);
        for m2 in MOVES {
            if apply_move(p1, m2.0, m2.1) == q {
                return Step { len: 2, moves: [m1, m2] };
            }
        }
    }
    panic!("configurations {p:?} and {q:?} are too far apart");
}

impl Frame {
    /// Builds the configuration path from the bounds and the move schedule.
    fn build(&mut self, a_lim: usize, b_lim: usize, c_lim: usize, has_lower: bool, scratch: &mut Vec<(usize, usize)>) {
        let k = a_lim.min(b_lim).min(c_lim);
        assert!(
            !(k == 0 && a_lim > 0 && b_lim > 0 && c_lim == 0),
            "pair ({}, {}) cannot pass the element after it",
            self.a,
            self.b
        );
        self.path.clear();
        scratch.clear();
        half(k, b_lim, scratch);
        self.path.extend(scratch.iter().map(|&(x, y)| (x as u32, y as u32 + 1)));
        scratch.clear();
        half(k, a_lim, scratch);
        self.path.extend(scratch.iter().rev().map(|&(y, x)| (x as u32 + 1, y as u32)));

        let kk = self.path.len();
        self.steps.clear();
        for t in 0..kk - 1 {
            self.steps.push(moves_between(self.path[t], self.path[t + 1]));
        }
        self.switch.clear();
        self.switch.resize(kk - 1, false);
        if has_lower && kk % 2 == 1 {
            let t = self.steps.iter().position(|s| s.len == 1).expect("no single-move transition to switch on");
            self.switch[t] = true;
        }
        self.d.clear();
        self.d.push(1);
        for t in 0..kk - 1 {
            let prev = self.d[t];
            self.d.push(if self.switch[t] { prev } else { -prev });
        }
        debug_assert!(!has_lower || self.d[kk - 1] == -1);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    Start,
    First,
    Second,
    Done,
}

pub struct GrayStream {
    tbl: IntervalTable,
    st: NumbadState,
    frames: Vec<Frame>,
    level_of: Vec<usize>,
    pair_at_level: Vec<Option<usize>>,
    home: Vec<usize>,
    beta: LinearOrder,
    beta_cfg: Vec<Cfg>,
    cur_cfg: Vec<Cfg>,
    mismatches: usize,
    pending: Swaps,
    phase: Phase,
    cyclic: bool,
    scratch: Vec<(usize, usize)>,
}

impl GrayStream {
    /// `beta` must be an AT-free order and `plan` a valid plan for `tbl`.
    pub fn new(tbl: IntervalTable, plan: &[Level], beta: LinearOrder) -> Self {
        let n = tbl.n();
        let home = home_word(plan);
        assert_eq!(home.len(), n, "plan does not cover every vertex");
        let mut level_of = vec![0; n];
        let mut pair_at_level = vec![None; plan.len()];
        let mut frames = Vec::new();
        let mut f = 0;
        for (li, l) in plan.iter().enumerate() {
            match *l {
                Level::Single(v) => {
                    level_of[v] = li;
                    f += 1;
                }
                Level::Pair(a, b) => {
                    level_of[a] = li;
                    level_of[b] = li;
                    pair_at_level[li] = Some(frames.len());
                    frames.push(Frame { f, a, b, level: li, ..Frame::default() });
                    f += 2;
                }
            }
        }
        let st = NumbadState::compute(&tbl, beta.clone());
        let mut s = GrayStream {
            tbl,
            st,
            frames,
            level_of,
            pair_at_level,
            home,
            beta,
            beta_cfg: Vec::new(),
            cur_cfg: Vec::new(),
            mismatches: 0,
            pending: Swaps::default(),
            phase: Phase::Start,
            cyclic: false,
            scratch: Vec::new(),
        };
        s.seek();
        s
    }

    /// The order reached by the last emitted step.
    pub fn order(&self) -> &LinearOrder {
        self.st.order()
    }

    pub fn table(&self) -> &IntervalTable {
        &self.tbl
    }

    /// After exhaustion: the last order is one step away from the first.
    pub fn cyclic(&self) -> bool {
        self.cyclic
    }

    /// Positions every frame at the configuration found in β.
    fn seek(&mut self) {
        let word = self.beta.perm().to_vec();
        let mut dir: i8 = 1;
        let mut cfgs = vec![(0, 0); self.frames.len()];
        for p in (0..self.frames.len()).rev() {
            let (a, b, level) = (self.frames[p].a, self.frames[p].b, self.frames[p].level);
            let sub: Vec<usize> = word.iter().copied().filter(|&v| self.level_of[v] >= level).collect();
            let r: Vec<usize> = sub.iter().copied().filter(|&v| v != a && v != b).collect();
            let tbl = &self.tbl;
            let bad_at = |e: usize| {
                (0..r.len())
                    .find(|&s| r[s + 1..].iter().any(|&y| tbl.contains(r[s], e, y)))
                    .unwrap_or(r.len())
            };
            let a_lim = bad_at(a);
            let b_lim = bad_at(b);
            let c_lim = r.iter().position(|&z| tbl.contains(z, a, b)).unwrap_or(r.len());
            let fr = &mut self.frames[p];
            fr.build(a_lim, b_lim, c_lim, p > 0, &mut self.scratch);
            let cfg = (
                sub.iter().position(|&v| v == a).unwrap() as u32,
                sub.iter().position(|&v| v == b).unwrap() as u32,
            );
            fr.t = fr.path.iter().position(|&c| c == cfg).expect("order not reachable from the plan");
            fr.dir = dir;
            dir *= fr.d[fr.t];
            cfgs[p] = cfg;
        }
        self.beta_cfg = cfgs.clone();
        self.cur_cfg = cfgs;
        self.mismatches = 0;
    }

    /// Starts fresh blocks on frames top..=0; lower levels sit at their home slots.
    fn descend(&mut self, top: usize, mut dir: i8) {
        let n = self.tbl.n();
        for p in (0..=top).rev() {
            let (f, a, b) = (self.frames[p].f, self.frames[p].a, self.frames[p].b);
            let order = self.st.order();
            let m = n - f - 2;
            let bad_at = |e: usize, limit: usize| {
                (0..limit.min(m)).find(|&s| self.st.numbad(order.at(f + 2 + s), e) > 0).unwrap_or(m)
            };
            let a_lim = bad_at(a, m);
            let b_lim = bad_at(b, m);
            let c_cap = a_lim.min(b_lim);
            let c_lim = (0..c_cap).find(|&s| self.tbl.contains(order.at(f + 2 + s), a, b)).unwrap_or(m);
            let fr = &mut self.frames[p];
            fr.build(a_lim, b_lim, c_lim, p > 0, &mut self.scratch);
            fr.dir = dir;
            fr.t = if dir > 0 { 0 } else { fr.path.len() - 1 };
            dir *= fr.d[fr.t];
        }
    }

    fn swap(&mut self, j: usize) {
        let order = self.st.order();
        let (u, v) = (order.at(j), order.at(j + 1));
        debug_assert!(self.st.swap_valid(j).unwrap(), "invalid swap at {j}");
        let (lu, lv) = (self.level_of[u], self.level_of[v]);
        let level = lu.min(lv);
        if let Some(p) = self.pair_at_level[level] {
            let before = self.cur_cfg[p] == self.beta_cfg[p];
            let c = &mut self.cur_cfg[p];
            let a = self.frames[p].a;
            if lu == lv {
                if u == a {
                    *c = (c.0 + 1, c.1 - 1);
                } else {
                    *c = (c.0 - 1, c.1 + 1);
                }
            } else {
                let (moved, delta) = if lu < lv { (u, 1i32) } else { (v, -1) };
                if moved == a {
                    c.0 = (c.0 as i32 + delta) as u32;
                } else {
                    c.1 = (c.1 as i32 + delta) as u32;
                }
            }
            let after = *c == self.beta_cfg[p];
            match (before, after) {
                (true, false) => self.mismatches += 1,
                (false, true) => self.mismatches -= 1,
                _ => {}
            }
        }
        self.st.swap_unchecked(&self.tbl, j);
        self.pending.push(j);
    }

    fn make_move(&mut self, p: usize, e: u8, d: i8) {
        let el = if e == 0 { self.frames[p].a } else { self.frames[p].b };
        let at = self.st.order().pos(el);
        if d > 0 {
            self.swap(at);
        } else {
            self.swap(at - 1);
        }
    }

    /// Moves frame p to its next configuration, if any.
    fn transition(&mut self, p: usize) -> bool {
        let fr = &self.frames[p];
        let t = fr.t;
        if fr.dir > 0 {
            if t + 1 >= fr.path.len() {
                return false;
            }
            let (step, sw) = (fr.steps[t], fr.switch[t]);
            for &(e, d) in &step.moves[..step.len as usize] {
                self.make_move(p, e, d);
            }
            if sw {
                let lf = self.frames[p - 1].f;
                self.swap(lf);
            }
            self.frames[p].t = t + 1;
        } else {
            if t == 0 {
                return false;
            }
            let (step, sw) = (fr.steps[t - 1], fr.switch[t - 1]);
            if sw {
                let lf = self.frames[p - 1].f;
                self.swap(lf);
            }
            for &(e, d) in step.moves[..step.len as usize].iter().rev() {
                self.make_move(p, e, -d);
            }
            self.frames[p].t = t - 1;
        }
        true
    }

    fn advance(&mut self) -> bool {
        for p in 0..self.frames.len() {
            if self.transition(p) {
                if p > 0 {
                    let fr = &self.frames[p];
                    let dir = fr.dir * fr.d[fr.t];
                    self.descend(p - 1, dir);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for GrayStream {
    type Item = GrayStep;

    fn next(&mut self) -> Option<GrayStep> {
        match self.phase {
            Phase::Done => None,
            Phase::Start => {
                self.phase = if self.frames.is_empty() { Phase::Done } else { Phase::First };
                Some(GrayStep::Init(self.beta.clone()))
            }
            Phase::First | Phase::Second => {
                self.pending = Swaps::default();
                if !self.advance() {
                    if self.phase == Phase::Second {
                        self.phase = Phase::Done;
                        return None;
                    }
                    // close the cycle and restart from the home word
                    let top = self.frames.len() - 1;
                    let f = self.frames[top].f;
                    self.swap(f);
                    debug_assert_eq!(self.st.order().perm(), &self.home[..]);
                    self.descend(top, 1);
                    self.phase = Phase::Second;
                }
                if self.phase == Phase::Second && self.mismatches == 0 {
                    self.cyclic = (1..=2).contains(&self.pending.len());
                    self.phase = Phase::Done;
                    return None;
                }
                Some(GrayStep::Delta(self.pending))
            }
        }
    }
}
