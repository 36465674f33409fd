//! Equivalence classes: multisets of summands that could fill a design.

use serde::{Deserialize, Serialize};

use crate::design::ObstructionDesign;
use crate::error::Result;

use super::search::Problem;

/// A multiset of summands, as `(summand id, multiplicity)` pairs sorted by
/// id. Ids index a summand table supplied alongside the class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EquivalenceClass {
    entries: Vec<(usize, usize)>,
}

impl EquivalenceClass {
    /// Drops zero multiplicities and merges repeated ids.
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut entries: Vec<(usize, usize)> = Vec::new();
        let mut pairs: Vec<_> = pairs.into_iter().filter(|&(_, m)| m > 0).collect();
        pairs.sort();
        for (id, m) in pairs {
            match entries.last_mut() {
                Some((last, acc)) if *last == id => *acc += m,
                _ => entries.push((id, m)),
            }
        }
        EquivalenceClass { entries }
    }

    /// The class of a list of summand ids, one per box.
    pub fn from_arrangement(ids: &[usize]) -> Self {
        Self::new(ids.iter().map(|&id| (id, 1)))
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    /// Total number of summands counted with multiplicity.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn multiplicity(&self, id: usize) -> usize {
        self.entries
            .binary_search_by_key(&id, |e| e.0)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// One arrangement of the class: ids in ascending order, repeated.
    pub fn arrangement(&self) -> Vec<usize> {
        self.entries
            .iter()
            .flat_map(|&(id, m)| std::iter::repeat(id).take(m))
            .collect()
    }

    /// Whether each axis-`a` basis index `e` occurs exactly as often as
    /// there are axis-`a` slices with more than `e` boxes. A class failing
    /// this has no nonzero arrangement.
    pub fn satisfies_marginals(&self, design: &ObstructionDesign, table: &[Vec<usize>]) -> bool {
        if self.size() != design.len() || self.entries.iter().any(|e| e.0 >= table.len()) {
            return false;
        }
        let need = required_counts(design);
        for (a, need_a) in need.iter().enumerate() {
            let mut have = vec![0usize; need_a.len()];
            for &(id, m) in &self.entries {
                let e = table[id][a];
                if e >= have.len() {
                    return false;
                }
                have[e] += m;
            }
            if &have != need_a {
                return false;
            }
        }
        true
    }
}

/// `need[a][e]`: how many axis-`a` slices have more than `e` boxes.
fn required_counts(design: &ObstructionDesign) -> Vec<Vec<usize>> {
    (0..design.k())
        .map(|a| {
            let sizes = design.marginals(a);
            let max = sizes.iter().copied().max().unwrap_or(0);
            (0..max).map(|e| sizes.iter().filter(|&&s| s > e).count()).collect()
        })
        .collect()
}

/// Every multiset over `table` meeting the marginal counts, as a
/// multiplicity vector aligned with `table`.
pub fn marginal_multisets(design: &ObstructionDesign, table: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let k = design.k();
    let mut need = required_counts(design);
    let usable: Vec<bool> = table
        .iter()
        .map(|t| t.len() == k && (0..k).all(|a| t[a] < need[a].len()))
        .collect();
    // after summand s is decided, these (axis, index) demands must be met
    let mut closes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); table.len()];
    let mut orphan = false;
    for (a, need_a) in need.iter().enumerate() {
        for e in 0..need_a.len() {
            match (0..table.len()).rev().find(|&s| usable[s] && table[s][a] == e) {
                Some(s) => closes[s].push((a, e)),
                None => orphan |= need_a[e] > 0,
            }
        }
    }
    let mut out = Vec::new();
    if orphan {
        return out;
    }

    fn go(
        s: usize,
        table: &[Vec<usize>],
        usable: &[bool],
        closes: &[Vec<(usize, usize)>],
        need: &mut [Vec<usize>],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if s == table.len() {
            out.push(cur.clone());
            return;
        }
        let max = if usable[s] {
            (0..need.len()).map(|a| need[a][table[s][a]]).min().unwrap_or(0)
        } else {
            0
        };
        for m in (0..=max).rev() {
            for (a, row) in need.iter_mut().enumerate() {
                row[table[s][a]] -= m;
            }
            if closes[s].iter().all(|&(a, e)| need[a][e] == 0) {
                cur.push(m);
                go(s + 1, table, usable, closes, need, cur, out);
                cur.pop();
            }
            for (a, row) in need.iter_mut().enumerate() {
                row[table[s][a]] += m;
            }
        }
    }
    go(0, table, &usable, &closes, &mut need, &mut Vec::new(), &mut out);
    out
}

/// Classes over `table` that meet the marginals and admit at least one
/// arrangement with nonzero `val`, in canonical order.
pub fn enumerate_classes(design: &ObstructionDesign, table: &[Vec<usize>]) -> Result<Vec<EquivalenceClass>> {
    let mut out = Vec::new();
    for mult in marginal_multisets(design, table) {
        let probe = Problem::new(design, table, Some(&mult))?;
        if probe.find_nonzero().is_some() {
            out.push(EquivalenceClass::new(mult.into_iter().enumerate()));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
