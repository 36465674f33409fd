//! `F_H(ω) = Σ_I val_H(ω_I)` for tensors with arbitrary rational factors.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::design::ObstructionDesign;
use crate::error::{Error, Result};
use crate::linalg;
use crate::tensor::TensorDecomposition;

struct Walk<'a> {
    design: &'a ObstructionDesign,
    tensor: &'a TensorDecomposition,
    /// Slices whose last box is at each position.
    closing: Vec<Vec<usize>>,
    assign: Vec<usize>,
    /// Terms already placed in each slice; a repeat makes a column repeat.
    in_slice: Vec<Vec<bool>>,
    memo: Vec<HashMap<Vec<usize>, BigRational>>,
    nodes: u64,
    budget: Option<u64>,
    sum: BigRational,
}

impl Walk<'_> {
    fn slice_det(&mut self, sid: usize) -> BigRational {
        let slice = &self.design.slices()[sid];
        let key: Vec<usize> = slice.positions.iter().map(|&p| self.assign[p]).collect();
        if let Some(v) = self.memo[sid].get(&key) {
            return v.clone();
        }
        let size = slice.len();
        let rows = (0..size)
            .map(|i| {
                key.iter()
                    .map(|&t| self.tensor.terms()[t].vectors[slice.axis].entry(i))
                    .collect()
            })
            .collect();
        let det = linalg::determinant(rows);
        self.memo[sid].insert(key, det.clone());
        det
    }

    fn go(&mut self, p: usize, acc: BigRational) -> Result<()> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::BudgetExceeded {
                    budget: b,
                    explored: self.nodes,
                });
            }
        }
        if p == self.design.len() {
            self.sum += acc;
            return Ok(());
        }
        let slices = self.design.slices_of(p).to_vec();
        for t in 0..self.tensor.rank_one_count() {
            if slices.iter().any(|&sid| self.in_slice[sid][t]) {
                continue;
            }
            let coef = &self.tensor.terms()[t].coef;
            if coef.is_zero() {
                continue;
            }
            self.assign[p] = t;
            for &sid in &slices {
                self.in_slice[sid][t] = true;
            }
            let mut next = &acc * coef;
            for sid in self.closing[p].clone() {
                if next.is_zero() {
                    break;
                }
                next *= self.slice_det(sid);
            }
            let r = if next.is_zero() { Ok(()) } else { self.go(p + 1, next) };
            for &sid in &slices {
                self.in_slice[sid][t] = false;
            }
            r?;
        }
        Ok(())
    }
}

/// Sums `val_H(ω_I)` over every index map `I`, pruning as soon as a slice
/// repeats a term or completes with a zero determinant. Vectors longer than
/// a slice are truncated to its size.
pub fn evaluate_dense(
    design: &ObstructionDesign,
    tensor: &TensorDecomposition,
    budget: Option<u64>,
) -> Result<BigRational> {
    if tensor.dims().len() != design.k() {
        return Err(Error::DimensionMismatch(format!(
            "tensor has {} factors, design has {} axes",
            tensor.dims().len(),
            design.k()
        )));
    }
    for s in design.slices() {
        if tensor.dims()[s.axis] < s.len() {
            return Err(Error::DimensionMismatch(format!(
                "factor {} has dimension {} but a slice has {} boxes",
                s.axis + 1,
                tensor.dims()[s.axis],
                s.len()
            )));
        }
    }
    let r = tensor.rank_one_count();
    if r == 0 {
        return Ok(BigRational::zero());
    }
    let mut closing = vec![Vec::new(); design.len()];
    for (sid, s) in design.slices().iter().enumerate() {
        closing[*s.positions.last().expect("nonempty slice")].push(sid);
    }
    let nslices = design.slices().len();
    let mut walk = Walk {
        design,
        tensor,
        closing,
        assign: vec![0; design.len()],
        in_slice: vec![vec![false; r]; nslices],
        memo: vec![HashMap::new(); nslices],
        nodes: 0,
        budget,
        sum: BigRational::zero(),
    };
    walk.go(0, BigRational::one())?;
    Ok(walk.sum)
}
