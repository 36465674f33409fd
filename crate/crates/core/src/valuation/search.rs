//! Bitmask backtracking over arrangements of basis summands.
//!
//! Boxes are filled in global order. Each slice keeps a mask of the basis
//! indices already placed in it and a mask of the summands still allowed
//! there, so a candidate test is a handful of ANDs and the inversion count
//! added by a placement is one popcount.

use crate::budget::{Budget, Meter};
use crate::count::{LocalCount, SignedCount};
use crate::design::ObstructionDesign;
use crate::error::{Error, Result};
use crate::run::{run_prefixes, CheckpointTag, SearchOptions};

/// Largest slice size and summand count the masks can hold.
pub const MASK_BITS: usize = 64;

/// A search problem: a design, a table of summands given by their per-axis
/// basis indices, and optionally a multiplicity for each summand.
///
/// Without multiplicities every summand may be used any number of times and
/// the search sums `val` over all index maps `[d] → [r]`.
#[derive(Clone, Debug)]
pub(crate) struct Problem {
    d: usize,
    k: usize,
    /// `box_slices[p*k + a]`: slice id of box `p` on axis `a`.
    box_slices: Vec<usize>,
    /// `index[s*k + a]`: basis index of summand `s` on axis `a`.
    index: Vec<u32>,
    /// `with_index[a][e]`: summands whose axis-`a` index is `e`.
    with_index: Vec<Vec<u64>>,
    mult: Option<Vec<u32>>,
    start: State,
}

#[derive(Clone, Debug)]
struct State {
    used: Vec<u64>,
    allowed: Vec<u64>,
    remaining: Vec<u32>,
    avail: u64,
    parity: u32,
}

impl Problem {
    pub fn new(design: &ObstructionDesign, table: &[Vec<usize>], mult: Option<&[usize]>) -> Result<Self> {
        let k = design.k();
        let d = design.len();
        if table.len() > MASK_BITS {
            return Err(Error::SizeCap(format!(
                "{} distinct summands; the basis search handles at most {MASK_BITS}",
                table.len()
            )));
        }
        if let Some(s) = design.slices().iter().find(|s| s.len() > MASK_BITS) {
            return Err(Error::SizeCap(format!(
                "slice of size {}; the basis search handles at most {MASK_BITS}",
                s.len()
            )));
        }
        if let Some(m) = mult {
            if m.len() != table.len() {
                return Err(Error::InvalidInput("one multiplicity per summand expected".into()));
            }
        }
        let mut index = Vec::with_capacity(table.len() * k);
        for t in table {
            if t.len() != k {
                return Err(Error::DimensionMismatch(format!(
                    "summand {t:?} has {} indices, design has {k} axes",
                    t.len()
                )));
            }
            index.extend(t.iter().map(|&e| e as u32));
        }
        let mut with_index = vec![vec![0u64; MASK_BITS]; k];
        for (s, t) in table.iter().enumerate() {
            for (a, &e) in t.iter().enumerate() {
                if e < MASK_BITS {
                    with_index[a][e] |= 1 << s;
                }
            }
        }
        let box_slices = (0..d).flat_map(|p| design.slices_of(p).to_vec()).collect();
        let nsumm = table.len();
        let allowed = design
            .slices()
            .iter()
            .map(|s| (0..s.len()).fold(0, |acc, e| acc | with_index[s.axis][e]))
            .collect();
        let all = if nsumm == MASK_BITS { !0 } else { (1u64 << nsumm) - 1 };
        let mult: Option<Vec<u32>> = mult.map(|m| m.iter().map(|&x| x as u32).collect());
        let (remaining, avail) = match &mult {
            Some(m) => {
                let avail = (0..nsumm).filter(|&s| m[s] > 0).fold(0, |acc, s| acc | 1 << s);
                (m.clone(), avail)
            }
            None => (Vec::new(), all),
        };
        let start = State {
            used: vec![0; design.slices().len()],
            allowed,
            remaining,
            avail,
            parity: 0,
        };
        Ok(Problem {
            d,
            k,
            box_slices,
            index,
            with_index,
            mult,
            start,
        })
    }

    fn fresh(&self) -> State {
        self.start.clone()
    }

    #[inline]
    fn candidates(&self, st: &State, p: usize) -> u64 {
        let mut c = st.avail;
        for &sid in &self.box_slices[p * self.k..(p + 1) * self.k] {
            c &= st.allowed[sid];
        }
        c
    }

    #[inline]
    fn place(&self, st: &mut State, p: usize, s: usize) {
        let k = self.k;
        for a in 0..k {
            let sid = self.box_slices[p * k + a];
            let e = self.index[s * k + a];
            let used = st.used[sid];
            st.parity += ((used >> e) >> 1).count_ones();
            st.used[sid] = used | 1 << e;
            st.allowed[sid] &= !self.with_index[a][e as usize];
        }
        if self.mult.is_some() {
            st.remaining[s] -= 1;
            if st.remaining[s] == 0 {
                st.avail &= !(1 << s);
            }
        }
    }

    #[inline]
    fn unplace(&self, st: &mut State, p: usize, s: usize) {
        let k = self.k;
        for a in 0..k {
            let sid = self.box_slices[p * k + a];
            let e = self.index[s * k + a];
            let used = st.used[sid] & !(1 << e);
            st.used[sid] = used;
            st.parity -= ((used >> e) >> 1).count_ones();
            st.allowed[sid] |= self.with_index[a][e as usize];
        }
        if self.mult.is_some() {
            if st.remaining[s] == 0 {
                st.avail |= 1 << s;
            }
            st.remaining[s] += 1;
        }
    }

    fn count_from(&self, st: &mut State, p: usize, meter: &mut Meter, out: &mut LocalCount) -> Result<()> {
        meter.tick()?;
        if p == self.d {
            out.push(st.parity & 1 == 1);
            return Ok(());
        }
        let mut cand = self.candidates(st, p);
        while cand != 0 {
            let s = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.place(st, p, s);
            let r = self.count_from(st, p + 1, meter, out);
            self.unplace(st, p, s);
            r?;
        }
        Ok(())
    }

    fn find_from(&self, st: &mut State, p: usize, out: &mut Vec<usize>) -> bool {
        if p == self.d {
            return true;
        }
        let mut cand = self.candidates(st, p);
        while cand != 0 {
            let s = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.place(st, p, s);
            out.push(s);
            if self.find_from(st, p + 1, out) {
                self.unplace(st, p, s);
                return true;
            }
            out.pop();
            self.unplace(st, p, s);
        }
        false
    }

    /// One arrangement with nonzero `val`, as summand ids per box.
    pub fn find_nonzero(&self) -> Option<Vec<usize>> {
        let mut st = self.fresh();
        let mut out = Vec::with_capacity(self.d);
        self.find_from(&mut st, 0, &mut out).then_some(out)
    }

    /// All feasible assignments of the first `depth` boxes, in search order.
    fn prefixes(&self, depth: usize) -> Vec<Vec<usize>> {
        fn go(pb: &Problem, st: &mut State, p: usize, depth: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if p == depth {
                out.push(cur.clone());
                return;
            }
            let mut cand = pb.candidates(st, p);
            while cand != 0 {
                let s = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                pb.place(st, p, s);
                cur.push(s);
                go(pb, st, p + 1, depth, cur, out);
                cur.pop();
                pb.unplace(st, p, s);
            }
        }
        let mut out = Vec::new();
        go(self, &mut self.fresh(), 0, depth, &mut Vec::new(), &mut out);
        out
    }

    /// Prefixes deep enough to keep workers busy and to give checkpoints a
    /// useful granularity. Independent of the worker count, so a checkpoint
    /// can be resumed with a different one.
    pub fn split(&self) -> Vec<Vec<usize>> {
        let target = 512;
        let mut depth = 0;
        let mut pre = self.prefixes(0);
        while depth < self.d / 2 && pre.len() < target {
            depth += 1;
            pre = self.prefixes(depth);
        }
        pre
    }

    fn count_prefix(&self, prefix: &[usize], budget: &Budget) -> Result<LocalCount> {
        let mut st = self.fresh();
        for (p, &s) in prefix.iter().enumerate() {
            self.place(&mut st, p, s);
        }
        let mut out = LocalCount::default();
        self.count_from(&mut st, prefix.len(), &mut Meter::new(budget), &mut out)?;
        Ok(out)
    }

    /// Signed count over all arrangements.
    pub fn count(&self, opts: &SearchOptions, tag: &CheckpointTag) -> Result<SignedCount> {
        let prefixes = self.split();
        let (count, _) = run_prefixes(prefixes.len(), opts, tag, false, |i, budget| {
            Ok((self.count_prefix(&prefixes[i], budget)?, LocalCount::default()))
        })?;
        Ok(count)
    }
}
