//! Obstruction designs: finite box sets in `Z₊ᵏ` with their slice structure.
//!
//! Boxes carry 1-based coordinates. The ordering `H ≅ [d]` is lexicographic
//! with axis 1 most significant, slices on an axis are ordered by coordinate
//! value, and inside a slice boxes keep their global order. Every sign in the
//! crate is computed relative to this ordering.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm;

/// One slice: the boxes of a design sharing coordinate `value` on `axis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub axis: usize,
    /// 1-based coordinate value.
    pub value: usize,
    /// Positions in the global box order, ascending.
    pub positions: Vec<usize>,
}

impl Slice {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// A diagonal `{(i, σ(i), τ(i))}` of the cube `B(n,n,n)`.
///
/// `sigma` and `tau` are stored 0-based: box `i` (1-based) of the diagonal is
/// `(i, sigma[i-1] + 1, tau[i-1] + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagonal {
    sigma: Vec<usize>,
    tau: Vec<usize>,
}

impl Diagonal {
    pub fn new(sigma: Vec<usize>, tau: Vec<usize>) -> Result<Self> {
        if sigma.len() != tau.len() || sigma.is_empty() {
            return Err(Error::InvalidInput(
                "diagonal permutations must have the same positive length".into(),
            ));
        }
        perm::check_permutation(&sigma)?;
        perm::check_permutation(&tau)?;
        Ok(Diagonal { sigma, tau })
    }

    /// The main diagonal `D(n)`.
    pub fn main(n: usize) -> Self {
        Diagonal {
            sigma: perm::identity(n),
            tau: perm::identity(n),
        }
    }

    pub fn order(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// The `n` boxes, 1-based, ordered by x coordinate.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|i| vec![i + 1, self.sigma[i] + 1, self.tau[i] + 1])
            .collect()
    }

    /// Recognizes a set of boxes of `B(n,n,n)` as a diagonal.
    pub fn from_cells(n: usize, cells: &[Vec<usize>]) -> Option<Diagonal> {
        if cells.len() != n {
            return None;
        }
        let mut sigma = vec![usize::MAX; n];
        let mut tau = vec![usize::MAX; n];
        for c in cells {
            if c.len() != 3 || c.iter().any(|&x| x == 0 || x > n) {
                return None;
            }
            let i = c[0] - 1;
            if sigma[i] != usize::MAX {
                return None;
            }
            sigma[i] = c[1] - 1;
            tau[i] = c[2] - 1;
        }
        Diagonal::new(sigma, tau).ok()
    }

    /// Slice permutations taking `self` to `other`: a y-permutation
    /// `σ₂σ₁⁻¹` followed by a z-permutation `τ₂τ₁⁻¹`. The x-slices are left
    /// alone.
    pub fn transport_to(&self, other: &Diagonal) -> Result<[(usize, Vec<usize>); 2]> {
        if self.order() != other.order() {
            return Err(Error::InvalidInput("diagonals of different order".into()));
        }
        let y = perm::compose(&other.sigma, &perm::inverse(&self.sigma));
        let z = perm::compose(&other.tau, &perm::inverse(&self.tau));
        Ok([(1, y), (2, z)])
    }

    /// Every diagonal of `B(n,n,n)`, `(n!)²` of them.
    pub fn all(n: usize) -> Vec<Diagonal> {
        let perms = perm::all_with_sign(n);
        let mut out = Vec::with_capacity(perms.len() * perms.len());
        for (s, _) in &perms {
            for (t, _) in &perms {
                out.push(Diagonal {
                    sigma: s.clone(),
                    tau: t.clone(),
                });
            }
        }
        out
    }
}

/// A finite box set in `Z₊ᵏ`: the full box `B(dims)` minus a (possibly empty)
/// set of deleted boxes. Immutable once built.
#[derive(Clone, Debug)]
pub struct ObstructionDesign {
    dims: Vec<usize>,
    boxes: Vec<Vec<usize>>,
    deleted: Vec<Vec<usize>>,
    slices: Vec<Slice>,
    axis_start: Vec<usize>,
    box_slices: Vec<Vec<usize>>,
}

impl PartialEq for ObstructionDesign {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.boxes == other.boxes
    }
}

impl Eq for ObstructionDesign {}

impl ObstructionDesign {
    /// The full box `B(dims)`.
    pub fn build_box(dims: &[usize]) -> Result<Self> {
        Self::from_parts(dims.to_vec(), Vec::new())
    }

    /// Full box minus `deleted`. Rejects duplicate or out-of-range deleted
    /// boxes, empty designs and designs with an empty slice.
    pub fn from_parts(dims: Vec<usize>, deleted: Vec<Vec<usize>>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::InvalidDesign(format!(
                "need at least 2 axes, got {}",
                dims.len()
            )));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidDesign(format!(
                "every dimension must be positive: {dims:?}"
            )));
        }
        let k = dims.len();
        let mut removed = BTreeSet::new();
        for b in &deleted {
            if b.len() != k || b.iter().zip(&dims).any(|(&c, &n)| c == 0 || c > n) {
                return Err(Error::InvalidDesign(format!(
                    "deleted box {b:?} lies outside B{dims:?}"
                )));
            }
            if !removed.insert(b.clone()) {
                return Err(Error::InvalidDesign(format!("box {b:?} deleted twice")));
            }
        }

        let mut boxes = Vec::new();
        let mut cur = vec![1; k];
        'odometer: loop {
            if !removed.contains(&cur) {
                boxes.push(cur.clone());
            }
            // last axis fastest, so boxes come out in lexicographic order
            for a in (0..k).rev() {
                if cur[a] < dims[a] {
                    cur[a] += 1;
                    continue 'odometer;
                }
                cur[a] = 1;
            }
            break;
        }
        if boxes.is_empty() {
            return Err(Error::InvalidDesign("design has no boxes".into()));
        }

        let mut slices = Vec::new();
        let mut axis_start = Vec::with_capacity(k + 1);
        for (axis, &n) in dims.iter().enumerate() {
            axis_start.push(slices.len());
            for value in 1..=n {
                slices.push(Slice {
                    axis,
                    value,
                    positions: Vec::new(),
                });
            }
        }
        axis_start.push(slices.len());
        let mut box_slices = Vec::with_capacity(boxes.len());
        for (p, b) in boxes.iter().enumerate() {
            let ids: Vec<usize> = (0..k).map(|a| axis_start[a] + b[a] - 1).collect();
            for &id in &ids {
                slices[id].positions.push(p);
            }
            box_slices.push(ids);
        }
        if let Some(s) = slices.iter().find(|s| s.is_empty()) {
            return Err(Error::InvalidDesign(format!(
                "slice {} on axis {} is empty",
                s.value,
                s.axis + 1
            )));
        }

        Ok(ObstructionDesign {
            dims,
            boxes,
            deleted: removed.into_iter().collect(),
            slices,
            axis_start,
            box_slices,
        })
    }

    /// `B(n,n,n) ∖ D`. The design must be a full cube of side `d.order()`.
    pub fn delete_diagonal(&self, d: &Diagonal) -> Result<Self> {
        let n = d.order();
        if self.dims != [n, n, n] {
            return Err(Error::InvalidDesign(format!(
                "diagonal deletion needs B({n},{n},{n}), got B{:?}",
                self.dims
            )));
        }
        if !self.deleted.is_empty() {
            return Err(Error::InvalidDesign(
                "diagonal deletion needs a full box".into(),
            ));
        }
        Self::from_parts(self.dims.clone(), d.cells())
    }

    /// Permutes the slices on `axis`: every box with coordinate `v` there is
    /// moved to coordinate `perm[v-1] + 1`. Returns the relabeled design and
    /// the map from old box positions to new ones.
    pub fn apply_slice_permutation(&self, axis: usize, perm: &[usize]) -> Result<(Self, Vec<usize>)> {
        if axis >= self.k() {
            return Err(Error::InvalidInput(format!("no axis {}", axis + 1)));
        }
        if perm.len() != self.dims[axis] {
            return Err(Error::InvalidInput(format!(
                "axis {} has {} slices, permutation has length {}",
                axis + 1,
                self.dims[axis],
                perm.len()
            )));
        }
        perm::check_permutation(perm)?;
        let moved = |b: &Vec<usize>| {
            let mut b = b.clone();
            b[axis] = perm[b[axis] - 1] + 1;
            b
        };
        let deleted = self.deleted.iter().map(moved).collect();
        let design = Self::from_parts(self.dims.clone(), deleted)?;
        let index: HashMap<&Vec<usize>, usize> =
            design.boxes.iter().enumerate().map(|(p, b)| (b, p)).collect();
        let relabel = self.boxes.iter().map(|b| index[&moved(b)]).collect();
        Ok((design, relabel))
    }

    /// Conjugates of the per-axis marginal distributions (sorted decreasingly
    /// first): the type `(λ, μ, ν, …)`.
    pub fn design_type(&self) -> Vec<Partition> {
        (0..self.k())
            .map(|a| Partition::from_unsorted(self.marginals(a)).conjugate())
            .collect()
    }

    /// Slice sizes along `axis`, in slice order.
    pub fn marginals(&self, axis: usize) -> Vec<usize> {
        self.axis_slices(axis).iter().map(Slice::len).collect()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of axes.
    pub fn k(&self) -> usize {
        self.dims.len()
    }

    /// Number of boxes `d`.
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[Vec<usize>] {
        &self.boxes
    }

    pub fn deleted(&self) -> &[Vec<usize>] {
        &self.deleted
    }

    /// All slices, grouped by axis and ordered by value within an axis.
    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn axis_slices(&self, axis: usize) -> &[Slice] {
        &self.slices[self.axis_start[axis]..self.axis_start[axis + 1]]
    }

    /// Slice ids (indices into [`slices`](Self::slices)) containing the box at
    /// `position`, one per axis.
    pub fn slices_of(&self, position: usize) -> &[usize] {
        &self.box_slices[position]
    }

    /// Position of a box in the global order.
    pub fn position_of(&self, b: &[usize]) -> Option<usize> {
        self.boxes.binary_search_by(|x| x.as_slice().cmp(b)).ok()
    }

    /// The deleted diagonal when this is `B(n,n,n) ∖ D`.
    pub fn deleted_diagonal(&self) -> Option<Diagonal> {
        let n = self.dims[0];
        if self.dims != [n, n, n] {
            return None;
        }
        Diagonal::from_cells(n, &self.deleted)
    }

    /// `±1` relating `val` on `B(n,n,n) ∖ D` to `val` on the full cube with
    /// the top basis vector `e_{n²}` placed on every deleted box: inserting
    /// it into a slice adds one inversion per box after it. `None` unless a
    /// diagonal is deleted.
    pub fn diagonal_orientation(&self) -> Option<i32> {
        let n = self.deleted_diagonal()?.order();
        let mut flips = 0;
        for cell in &self.deleted {
            for a in 0..3 {
                let rest: Vec<usize> = (0..3).filter(|&b| b != a).map(|b| cell[b] - 1).collect();
                flips += n * n - 1 - (rest[0] * n + rest[1]);
            }
        }
        Some(if flips % 2 == 0 { 1 } else { -1 })
    }

    pub fn to_spec(&self) -> DesignSpec {
        DesignSpec {
            dims: self.dims.clone(),
            deleted: self.deleted.clone(),
        }
    }
}

/// JSON form of a design: `{"dims":[...], "deleted":[[i,j,k],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignSpec {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub deleted: Vec<Vec<usize>>,
}

impl DesignSpec {
    /// Only diagonals may be deleted, and only from a cube.
    pub fn build(&self) -> Result<ObstructionDesign> {
        if !self.deleted.is_empty() {
            let n = self.dims[0];
            if self.dims != [n, n, n] || Diagonal::from_cells(n, &self.deleted).is_none() {
                return Err(Error::InvalidDesign(
                    "deleted boxes must form a diagonal of a cube".into(),
                ));
            }
        }
        ObstructionDesign::from_parts(self.dims.clone(), self.deleted.clone())
    }
}

impl Serialize for ObstructionDesign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ObstructionDesign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DesignSpec::deserialize(d)?
            .build()
            .map_err(serde::de::Error::custom)
    }
}
