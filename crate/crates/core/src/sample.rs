//! Seeded random inputs for property checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::design::ObstructionDesign;
use crate::error::{Error, Result};
use crate::latin::LatinCube;
use crate::tensor::{FactorVector, RankOneTerm, TensorDecomposition};
use crate::valuation::EquivalenceClass;

/// A rational in `[-bound, bound]` with denominator at most 3.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    let den = rng.gen_range(1..=3i64);
    BigRational::new(BigInt::from(rng.gen_range(-bound * den..=bound * den)), BigInt::from(den))
}

/// `rank` dense rank-one terms with integer entries in `[-bound, bound]`.
pub fn integer_tensor<R: Rng>(rng: &mut R, dims: &[usize], rank: usize, bound: i64) -> Result<TensorDecomposition> {
    tensor_with(dims, rank, |_| BigRational::from_integer(rng.gen_range(-bound..=bound).into()))
}

/// Like [`integer_tensor`] with small fractions and random coefficients.
pub fn rational_tensor<R: Rng>(rng: &mut R, dims: &[usize], rank: usize, bound: i64) -> Result<TensorDecomposition> {
    let mut t = tensor_with(dims, rank, |_| rational(rng, bound))?;
    let coefs: Vec<BigRational> = (0..rank).map(|_| rational(rng, 2)).collect();
    let terms = t
        .terms()
        .iter()
        .zip(coefs)
        .map(|(term, c)| RankOneTerm {
            coef: if c.is_zero() { BigRational::one() } else { c },
            vectors: term.vectors.clone(),
        })
        .collect();
    t = TensorDecomposition::new(dims.to_vec(), terms)?;
    Ok(t)
}

fn tensor_with(dims: &[usize], rank: usize, mut entry: impl FnMut(usize) -> BigRational) -> Result<TensorDecomposition> {
    let terms = (0..rank)
        .map(|_| {
            RankOneTerm::new(
                dims.iter()
                    .map(|&d| FactorVector::dense((0..d).map(&mut entry).collect()))
                    .collect(),
            )
        })
        .collect();
    TensorDecomposition::new(dims.to_vec(), terms)
}

/// An integer matrix of determinant `±1`: a product of random elementary
/// row operations and a random permutation.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(BigInt::from(i32::from(i == j)))).collect())
        .collect();
    if n > 1 {
        for _ in 0..3 * n {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a == b {
                continue;
            }
            let c = BigRational::from_integer(rng.gen_range(-2..=2).into());
            for j in 0..n {
                let add = &c * &m[b][j];
                m[a][j] += add;
            }
        }
    }
    m.shuffle(rng);
    m
}

/// `diag(s, 1, …, 1)`.
pub fn scaling(n: usize, s: BigRational) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i == j, i) {
                    (true, 0) => s.clone(),
                    (true, _) => BigRational::one(),
                    _ => BigRational::zero(),
                })
                .collect()
        })
        .collect()
}

/// Basis indices for every box such that each slice gets a permutation of
/// `0..len`, so `val` is `±1`. The axes are independent.
pub fn nonzero_basis_labeling<R: Rng>(rng: &mut R, design: &ObstructionDesign) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![0; design.k()]; design.len()];
    for s in design.slices() {
        let mut p: Vec<usize> = (0..s.len()).collect();
        p.shuffle(rng);
        for (&pos, v) in s.positions.iter().zip(p) {
            idx[pos][s.axis] = v;
        }
    }
    idx
}

/// Basis indices drawn uniformly below each box's slice sizes; usually `val = 0`.
pub fn basis_labeling<R: Rng>(rng: &mut R, design: &ObstructionDesign) -> Vec<Vec<usize>> {
    (0..design.len())
        .map(|p| {
            design
                .slices_of(p)
                .iter()
                .map(|&sid| rng.gen_range(0..design.slices()[sid].len()))
                .collect()
        })
        .collect()
}

/// A random multiset of `size` summand ids below `count`.
pub fn class<R: Rng>(rng: &mut R, count: usize, size: usize) -> EquivalenceClass {
    let ids: Vec<usize> = (0..size).map(|_| rng.gen_range(0..count)).collect();
    EquivalenceClass::from_arrangement(&ids)
}

/// A Latin cube of order `n`, by backtracking over cells with the symbols
/// tried in random order.
pub fn latin_cube<R: Rng>(rng: &mut R, n: usize) -> Result<LatinCube> {
    fn fill<R: Rng>(rng: &mut R, n: usize, c: usize, used: &mut [Vec<bool>; 3], cells: &mut Vec<usize>) -> bool {
        if c == n * n * n {
            return true;
        }
        let at = [c / (n * n), (c / n) % n, c % n];
        let mut symbols: Vec<usize> = (0..n * n).collect();
        symbols.shuffle(rng);
        for s in symbols {
            if (0..3).any(|a| used[a][at[a] * n * n + s]) {
                continue;
            }
            for a in 0..3 {
                used[a][at[a] * n * n + s] = true;
            }
            cells.push(s + 1);
            if fill(rng, n, c + 1, used, cells) {
                return true;
            }
            cells.pop();
            for a in 0..3 {
                used[a][at[a] * n * n + s] = false;
            }
        }
        false
    }
    let mut used = [vec![false; n * n * n], vec![false; n * n * n], vec![false; n * n * n]];
    let mut cells = Vec::with_capacity(n * n * n);
    if !fill(rng, n, 0, &mut used, &mut cells) {
        return Err(Error::InvalidInput(format!("no Latin cube of order {n}")));
    }
    LatinCube::new(n, cells)
}
