//! Latin squares and their row/column sign.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::count::{LocalCount, SignedCount};
use crate::error::{Error, Result};
use crate::perm;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SquareRepr", into = "SquareRepr")]
pub struct LatinSquare {
    n: usize,
    /// Symbols `1..=n` row by row.
    entries: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SquareRepr {
    n: usize,
    entries: Vec<Vec<usize>>,
}

impl TryFrom<SquareRepr> for LatinSquare {
    type Error = Error;
    fn try_from(r: SquareRepr) -> Result<Self> {
        LatinSquare::new(r.n, r.entries.into_iter().flatten().collect())
    }
}

impl From<LatinSquare> for SquareRepr {
    fn from(s: LatinSquare) -> Self {
        SquareRepr {
            n: s.n,
            entries: s.entries.chunks(s.n).map(<[usize]>::to_vec).collect(),
        }
    }
}

impl LatinSquare {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::InvalidInput(format!("a square of order {n} needs {} entries", n * n)));
        }
        let sq = LatinSquare { n, entries };
        for v in 0..n {
            for line in [sq.row(v), sq.column(v)] {
                let zero_based: Vec<usize> = line.iter().map(|&s| s.wrapping_sub(1)).collect();
                if !perm::is_permutation(&zero_based) {
                    return Err(Error::InvalidInput(format!("line {} is not a permutation of [{n}]", v + 1)));
                }
            }
        }
        Ok(sq)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> Vec<usize> {
        self.entries[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<usize> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Product of the signs of all rows and columns.
    pub fn sign(&self) -> i32 {
        (0..self.n)
            .map(|v| perm::sign(&self.row(v)) * perm::sign(&self.column(v)))
            .product()
    }
}

fn walk<F: FnMut(&[u8], u32)>(
    n: usize,
    c: usize,
    rows: &mut [u32],
    cols: &mut [u32],
    cells: &mut Vec<u8>,
    parity: u32,
    meter: &mut Meter,
    f: &mut F,
) -> Result<()> {
    meter.tick()?;
    if c == n * n {
        f(cells, parity);
        return Ok(());
    }
    let (i, j) = (c / n, c % n);
    let mut cand = ((1u32 << n) - 1) & !(rows[i] | cols[j]);
    while cand != 0 {
        let s = cand.trailing_zeros();
        cand &= cand - 1;
        let add = ((rows[i] >> s) >> 1).count_ones() + ((cols[j] >> s) >> 1).count_ones();
        rows[i] |= 1 << s;
        cols[j] |= 1 << s;
        cells.push(s as u8);
        let r = walk(n, c + 1, rows, cols, cells, parity + add, meter, f);
        cells.pop();
        rows[i] &= !(1 << s);
        cols[j] &= !(1 << s);
        r?;
    }
    Ok(())
}

/// Calls `f` with every Latin square of order `n` and its sign.
pub fn enumerate_latin_squares<F: FnMut(&LatinSquare, i32)>(
    n: usize,
    budget_nodes: Option<u64>,
    mut f: F,
) -> Result<()> {
    if n == 0 || n > 31 {
        return Err(Error::InvalidInput(format!("unsupported order {n}")));
    }
    let budget = Budget::new(budget_nodes);
    let mut meter = Meter::new(&budget);
    walk(n, 0, &mut vec![0; n], &mut vec![0; n], &mut Vec::new(), 0, &mut meter, &mut |cells, parity| {
        let sq = LatinSquare {
            n,
            entries: cells.iter().map(|&s| s as usize + 1).collect(),
        };
        f(&sq, if parity & 1 == 0 { 1 } else { -1 });
    })?;
    meter.finish()
}

/// Orders above this are refused by [`latin_square_delta`].
pub const SQUARE_ORDER_CAP: usize = 5;

/// `Lᴱ − Lᴼ` over all Latin squares of order `n ≤ 5`.
pub fn latin_square_delta(n: usize, budget_nodes: Option<u64>) -> Result<SignedCount> {
    if n > SQUARE_ORDER_CAP {
        return Err(Error::SizeCap(format!(
            "square enumeration is capped at order {SQUARE_ORDER_CAP}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    let budget = Budget::new(budget_nodes);
    let mut meter = Meter::new(&budget);
    let mut count = LocalCount::default();
    walk(n, 0, &mut vec![0; n], &mut vec![0; n], &mut Vec::new(), 0, &mut meter, &mut |_, parity| {
        count.push(parity & 1 == 1)
    })?;
    meter.finish()?;
    Ok(count.into())
}
