//! Latin cubes of order `n`: `n×n×n` arrays over `[n²]` that are a
//! bijection on every slice.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::count::{LocalCount, SignedCount};
use crate::error::{Error, Result};
use crate::perm;
use crate::run::{run_prefixes, CheckpointTag, SearchOptions};

/// A 3-dimensional permutation matrix: ones exactly at `(i, σ(i), τ(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermutationMatrix3D {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
}

impl PermutationMatrix3D {
    pub fn new(sigma: Vec<usize>, tau: Vec<usize>) -> Result<Self> {
        if sigma.len() != tau.len() {
            return Err(Error::InvalidInput("σ and τ differ in length".into()));
        }
        perm::check_permutation(&sigma)?;
        perm::check_permutation(&tau)?;
        Ok(PermutationMatrix3D { sigma, tau })
    }

    pub fn order(&self) -> usize {
        self.sigma.len()
    }

    /// `sgn(σ)·sgn(τ)`.
    pub fn sign(&self) -> i32 {
        perm::sign(&self.sigma) * perm::sign(&self.tau)
    }

    /// The 0/1 array, indexed `[(i*n + j)*n + k]`.
    pub fn to_array(&self) -> Vec<u8> {
        let n = self.order();
        let mut out = vec![0; n * n * n];
        for i in 0..n {
            out[(i * n + self.sigma[i]) * n + self.tau[i]] = 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CubeRepr", into = "CubeRepr")]
pub struct LatinCube {
    n: usize,
    /// Symbols `1..=n²` at `[(i*n + j)*n + k]`, 0-based coordinates.
    entries: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CubeRepr {
    n: usize,
    /// `entries[i][j][k]`.
    entries: Vec<Vec<Vec<usize>>>,
}

impl TryFrom<CubeRepr> for LatinCube {
    type Error = Error;
    fn try_from(r: CubeRepr) -> Result<Self> {
        LatinCube::new(r.n, r.entries.into_iter().flatten().flatten().collect())
    }
}

impl From<LatinCube> for CubeRepr {
    fn from(c: LatinCube) -> Self {
        let n = c.n;
        CubeRepr {
            n,
            entries: (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| c.get(i, j, k)).collect()).collect())
                .collect(),
        }
    }
}

/// `[(i, j, k)]` of the boxes of a slice, in lexicographic order.
fn slice_cells(n: usize, axis: usize, v: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n * n).map(move |t| {
        let (a, b) = (t / n, t % n);
        match axis {
            0 => (v, a, b),
            1 => (a, v, b),
            _ => (a, b, v),
        }
    })
}

impl LatinCube {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if n == 0 || entries.len() != n * n * n {
            return Err(Error::InvalidInput(format!(
                "a cube of order {n} needs {} entries",
                n * n * n
            )));
        }
        let c = LatinCube { n, entries };
        for axis in 0..3 {
            for v in 0..n {
                let mut seen = vec![false; n * n + 1];
                for (i, j, k) in slice_cells(n, axis, v) {
                    let s = c.get(i, j, k);
                    if s == 0 || s > n * n || seen[s] {
                        return Err(Error::InvalidInput(format!(
                            "slice {} on axis {} is not a bijection onto [{}]",
                            v + 1,
                            axis + 1,
                            n * n
                        )));
                    }
                    seen[s] = true;
                }
            }
        }
        Ok(c)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Symbol at 0-based `(i, j, k)`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> usize {
        self.entries[(i * self.n + j) * self.n + k]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// The slice read in lexicographic box order, as a sequence of symbols.
    pub fn slice(&self, axis: usize, v: usize) -> Vec<usize> {
        slice_cells(self.n, axis, v).map(|(i, j, k)| self.get(i, j, k)).collect()
    }

    /// Product of the signs of all `3n` slice permutations.
    pub fn sign(&self) -> i32 {
        (0..3)
            .flat_map(|a| (0..self.n).map(move |v| (a, v)))
            .map(|(a, v)| perm::sign(&self.slice(a, v)))
            .product()
    }

    /// The permutation matrices `P_s`, one per symbol `s = 1..=n²`.
    pub fn layers(&self) -> Vec<PermutationMatrix3D> {
        let n = self.n;
        let mut sigma = vec![vec![0; n]; n * n];
        let mut tau = vec![vec![0; n]; n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = self.get(i, j, k) - 1;
                    sigma[s][i] = j;
                    tau[s][i] = k;
                }
            }
        }
        sigma
            .into_iter()
            .zip(tau)
            .map(|(sigma, tau)| PermutationMatrix3D { sigma, tau })
            .collect()
    }

    /// `∏_s sgn(σ_{P_s})·sgn(τ_{P_s})`.
    pub fn symbol_sign(&self) -> i32 {
        self.layers().iter().map(PermutationMatrix3D::sign).product()
    }

    /// Moves slice `v` on `axis` to position `perm[v]`.
    pub fn permute_slices(&self, axis: usize, p: &[usize]) -> Result<Self> {
        if axis > 2 || p.len() != self.n {
            return Err(Error::InvalidInput("bad slice permutation".into()));
        }
        perm::check_permutation(p)?;
        let n = self.n;
        let mut entries = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut c = [i, j, k];
                    c[axis] = p[c[axis]];
                    entries[(c[0] * n + c[1]) * n + c[2]] = self.get(i, j, k);
                }
            }
        }
        LatinCube::new(n, entries)
    }

    /// Applies `relabel[s-1]` to every symbol `s`.
    pub fn relabel_symbols(&self, relabel: &[usize]) -> Result<Self> {
        perm::check_permutation(relabel)?;
        if relabel.len() != self.n * self.n {
            return Err(Error::InvalidInput("relabeling must permute [n²]".into()));
        }
        LatinCube::new(self.n, self.entries.iter().map(|&s| relabel[s - 1] + 1).collect())
    }

    /// Whether every main-diagonal cell holds `n²`.
    pub fn is_unipotent(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i, i) == self.n * self.n)
    }
}

/// Tallies over a set of cubes. Serialized with decimal strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatinCensus {
    pub n: usize,
    #[serde(with = "crate::serde_big::biguint")]
    pub total: BigUint,
    #[serde(with = "crate::serde_big::biguint")]
    pub even: BigUint,
    #[serde(with = "crate::serde_big::biguint")]
    pub odd: BigUint,
    #[serde(with = "crate::serde_big::biguint")]
    pub symbol_even: BigUint,
    #[serde(with = "crate::serde_big::biguint")]
    pub symbol_odd: BigUint,
}

impl LatinCensus {
    /// `Lᵉ − Lᵒ`.
    pub fn delta(&self) -> BigInt {
        BigInt::from(self.even.clone()) - BigInt::from(self.odd.clone())
    }

    /// `L^{se} − L^{so}`.
    pub fn symbol_delta(&self) -> BigInt {
        BigInt::from(self.symbol_even.clone()) - BigInt::from(self.symbol_odd.clone())
    }

    pub fn signed(&self) -> SignedCount {
        SignedCount::new(self.even.clone(), self.odd.clone())
    }
}

/// Which cubes to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeFamily {
    All,
    /// Main diagonal filled with `n²`.
    Unipotent,
}

/// Cells are filled in lexicographic order. Every slice keeps a mask of the
/// symbols it already holds, and every symbol keeps masks of the `j` and
/// `k` coordinates it already occupies, so both signs grow by popcounts.
struct Enumerator {
    n: usize,
    /// Symbols allowed at each cell regardless of the rest.
    cell_mask: Vec<u32>,
}

#[derive(Clone)]
struct CubeState {
    x: Vec<u32>,
    y: Vec<u32>,
    z: Vec<u32>,
    sym_j: Vec<u32>,
    sym_k: Vec<u32>,
    parity: u32,
    sym_parity: u32,
    cells: Vec<u8>,
}

#[inline]
fn above(mask: u32, e: usize) -> u32 {
    ((mask >> e) >> 1).count_ones()
}

impl Enumerator {
    fn new(n: usize, family: CubeFamily) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("order must be positive".into()));
        }
        if n * n > 32 {
            return Err(Error::SizeCap(format!("order {n} has more than 32 symbols")));
        }
        let m = n * n;
        let all: u32 = if m == 32 { !0 } else { (1 << m) - 1 };
        let top = 1u32 << (m - 1);
        let cell_mask = (0..n * n * n)
            .map(|c| {
                let (i, j, k) = (c / (n * n), (c / n) % n, c % n);
                match family {
                    CubeFamily::All => all,
                    CubeFamily::Unipotent if i == j && j == k => top,
                    CubeFamily::Unipotent => all & !top,
                }
            })
            .collect();
        Ok(Enumerator { n, cell_mask })
    }

    fn fresh(&self) -> CubeState {
        let n = self.n;
        CubeState {
            x: vec![0; n],
            y: vec![0; n],
            z: vec![0; n],
            sym_j: vec![0; n * n],
            sym_k: vec![0; n * n],
            parity: 0,
            sym_parity: 0,
            cells: Vec::with_capacity(n * n * n),
        }
    }

    #[inline]
    fn coords(&self, c: usize) -> (usize, usize, usize) {
        let n = self.n;
        (c / (n * n), (c / n) % n, c % n)
    }

    #[inline]
    fn candidates(&self, st: &CubeState, c: usize) -> u32 {
        let (i, j, k) = self.coords(c);
        self.cell_mask[c] & !(st.x[i] | st.y[j] | st.z[k])
    }

    #[inline]
    fn place(&self, st: &mut CubeState, c: usize, s: usize) {
        let (i, j, k) = self.coords(c);
        let bit = 1u32 << s;
        st.parity += above(st.x[i], s) + above(st.y[j], s) + above(st.z[k], s);
        st.sym_parity += above(st.sym_j[s], j) + above(st.sym_k[s], k);
        st.x[i] |= bit;
        st.y[j] |= bit;
        st.z[k] |= bit;
        st.sym_j[s] |= 1 << j;
        st.sym_k[s] |= 1 << k;
        st.cells.push(s as u8);
    }

    #[inline]
    fn unplace(&self, st: &mut CubeState, c: usize, s: usize) {
        let (i, j, k) = self.coords(c);
        let bit = !(1u32 << s);
        st.x[i] &= bit;
        st.y[j] &= bit;
        st.z[k] &= bit;
        st.sym_j[s] &= !(1 << j);
        st.sym_k[s] &= !(1 << k);
        st.parity -= above(st.x[i], s) + above(st.y[j], s) + above(st.z[k], s);
        st.sym_parity -= above(st.sym_j[s], j) + above(st.sym_k[s], k);
        st.cells.pop();
    }

    fn walk<F: FnMut(&CubeState)>(&self, st: &mut CubeState, c: usize, meter: &mut Meter, leaf: &mut F) -> Result<()> {
        meter.tick()?;
        if c == self.n * self.n * self.n {
            leaf(st);
            return Ok(());
        }
        let mut cand = self.candidates(st, c);
        while cand != 0 {
            let s = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.place(st, c, s);
            let r = self.walk(st, c + 1, meter, leaf);
            self.unplace(st, c, s);
            r?;
        }
        Ok(())
    }

    /// The first x-slice with its free cells numbered `1, 2, …` in order
    /// (and `n²` on the diagonal cell for unipotent cubes). Every cube is a
    /// symbol relabeling of exactly one cube starting this way.
    fn normalized_start(&self) -> CubeState {
        let mut st = self.fresh();
        let mut next = 0;
        for c in 0..self.n * self.n {
            let s = if self.cell_mask[c].count_ones() == 1 {
                self.cell_mask[c].trailing_zeros() as usize
            } else {
                next += 1;
                next - 1
            };
            self.place(&mut st, c, s);
        }
        st
    }

    fn prefixes(&self, start: &CubeState, depth: usize) -> Vec<Vec<u8>> {
        fn go(e: &Enumerator, st: &mut CubeState, c: usize, end: usize, out: &mut Vec<Vec<u8>>) {
            if c == end {
                out.push(st.cells.clone());
                return;
            }
            let mut cand = e.candidates(st, c);
            while cand != 0 {
                let s = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                e.place(st, c, s);
                go(e, st, c + 1, end, out);
                e.unplace(st, c, s);
            }
        }
        let mut out = Vec::new();
        let from = start.cells.len();
        go(self, &mut start.clone(), from, (from + depth).min(self.n.pow(3)), &mut out);
        out
    }

    fn replay(&self, cells: &[u8]) -> CubeState {
        let mut st = self.fresh();
        for (c, &s) in cells.iter().enumerate() {
            self.place(&mut st, c, s as usize);
        }
        st
    }

    /// Tallies every completion of `start`, split into prefixes for the
    /// pool. Returns (sign tally, symbol-sign tally).
    fn tally(&self, start: CubeState, opts: &SearchOptions, tag: &CheckpointTag) -> Result<(SignedCount, SignedCount)> {
        let free = self.n.pow(3) - start.cells.len();
        let mut depth = 0;
        let mut pre = self.prefixes(&start, 0);
        while depth < free && pre.len() < 256 {
            depth += 1;
            pre = self.prefixes(&start, depth);
        }
        run_prefixes(pre.len(), opts, tag, true, |i, budget| {
            let cells = &pre[i];
            let mut st = self.replay(cells);
            let (mut sign, mut sym) = (LocalCount::default(), LocalCount::default());
            let mut meter = Meter::new(budget);
            self.walk(&mut st, cells.len(), &mut meter, &mut |s| {
                sign.push(s.parity & 1 == 1);
                sym.push(s.sym_parity & 1 == 1);
            })?;
            Ok((sign, sym))
        })
    }
}

fn census_tag(n: usize, family: CubeFamily, mode: &str) -> CheckpointTag {
    CheckpointTag {
        design: serde_json::json!({ "latin_cube_order": n }),
        class: serde_json::json!({ "family": format!("{family:?}").to_lowercase(), "mode": mode }),
    }
}

/// Calls `f` on every cube of the family, in lexicographic order of entries.
pub fn enumerate_latin_cubes<F: FnMut(&LatinCube)>(
    n: usize,
    family: CubeFamily,
    budget_nodes: Option<u64>,
    mut f: F,
) -> Result<()> {
    let e = Enumerator::new(n, family)?;
    let budget = Budget::new(budget_nodes);
    let mut meter = Meter::new(&budget);
    e.walk(&mut e.fresh(), 0, &mut meter, &mut |st| {
        let entries = st.cells.iter().map(|&s| s as usize + 1).collect();
        f(&LatinCube { n, entries });
    })?;
    meter.finish()
}

/// The census of [`latin_census`] from one cube per symbol relabeling class.
///
/// Only cubes whose first x-slice is normalized are visited. Relabeling the
/// free symbols by `π` multiplies the sign by `sgn(π)^{3n}` and leaves the
/// symbol sign alone, so each normalized cube stands for `f!` cubes (`f` the
/// number of free symbols), split evenly by sign when `n` is odd.
pub fn latin_census_by_relabeling(n: usize, family: CubeFamily, opts: &SearchOptions) -> Result<LatinCensus> {
    let e = Enumerator::new(n, family)?;
    let (sign, sym) = e.tally(e.normalized_start(), opts, &census_tag(n, family, "relabeling"))?;
    let free = match family {
        CubeFamily::All => n * n,
        CubeFamily::Unipotent => n * n - 1,
    };
    let orbit = perm::factorial(free);
    let total = &orbit * sign.total();
    let (even, odd) = if n % 2 == 0 || free < 2 {
        (&orbit * sign.positives(), &orbit * sign.negatives())
    } else {
        (&total / 2u32, &total / 2u32)
    };
    Ok(LatinCensus {
        n,
        total,
        even,
        odd,
        symbol_even: &orbit * sym.positives(),
        symbol_odd: &orbit * sym.negatives(),
    })
}

/// Counts of all cubes (or all unipotent cubes) by sign and symbol sign,
/// visiting every cube once.
pub fn latin_census(n: usize, family: CubeFamily, opts: &SearchOptions) -> Result<LatinCensus> {
    let e = Enumerator::new(n, family)?;
    let (sign, sym) = e.tally(e.fresh(), opts, &census_tag(n, family, "exhaustive"))?;
    Ok(LatinCensus {
        n,
        total: sign.total(),
        even: sign.positives().clone(),
        odd: sign.negatives().clone(),
        symbol_even: sym.positives().clone(),
        symbol_odd: sym.negatives().clone(),
    })
}

/// `Lᵉ − Lᵒ` over all Latin cubes of order `n`.
pub fn alon_tarsi_delta_3d(n: usize, opts: &SearchOptions) -> Result<SignedCount> {
    Ok(latin_census(n, CubeFamily::All, opts)?.signed())
}

/// `Uᵉ − Uᵒ` over unipotent Latin cubes of order `n`.
pub fn unipotent_delta(n: usize, opts: &SearchOptions) -> Result<SignedCount> {
    Ok(latin_census(n, CubeFamily::Unipotent, opts)?.signed())
}
