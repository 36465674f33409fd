//! Symmetric-group characters and Kronecker coefficients at small degree.
//!
//! Characters come from the Murnaghan–Nakayama rule on beta-sets, and
//! `k(λ,μ,ν) = (1/d!) Σ_ρ (d!/z_ρ) χ_λ(ρ) χ_μ(ρ) χ_ν(ρ)` is summed over
//! conjugacy classes `ρ`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::factorial;

/// Largest degree the character tables are built for.
pub const DEGREE_CAP: usize = 12;

fn check_degree(d: usize) -> Result<()> {
    if d > DEGREE_CAP {
        return Err(Error::SizeCap(format!(
            "degree {d} exceeds the character table cap of {DEGREE_CAP}"
        )));
    }
    Ok(())
}

type Memo = HashMap<(Vec<usize>, usize), i64>;

/// `χ_λ` on the class whose remaining cycle lengths are `rho[from..]`.
fn mn(lambda: &[usize], rho: &[usize], from: usize, memo: &mut Memo) -> i64 {
    if from == rho.len() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), from);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = rho[from];
    // beta numbers λ_i + (L - i), strictly decreasing
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        // beads strictly between target and b give the leg length
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let l = moved.len();
        let shape: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (l - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let v = mn(&shape, rho, from + 1, memo);
        total += if height % 2 == 0 { v } else { -v };
    }
    memo.insert(key, total);
    total
}

/// `χ_λ` at the class of cycle type `class_type`.
pub fn character_value(lambda: &Partition, class_type: &Partition) -> Result<BigInt> {
    if lambda.size() != class_type.size() {
        return Err(Error::DimensionMismatch(format!(
            "|{lambda}| = {} but the class has size {}",
            lambda.size(),
            class_type.size()
        )));
    }
    check_degree(lambda.size())?;
    Ok(mn(lambda.parts(), class_type.parts(), 0, &mut Memo::new()).into())
}

/// `z_ρ = ∏ i^{m_i} m_i!`, the order of the centralizer of a permutation of
/// cycle type `ρ`.
pub fn centralizer_order(rho: &Partition) -> BigUint {
    let mut z = BigUint::from(1u32);
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &p in rho.parts() {
        *counts.entry(p).or_default() += 1;
    }
    for (i, m) in counts {
        z *= BigUint::from(i).pow(m as u32) * factorial(m);
    }
    z
}

/// All characters of `S_d`: `values[λ][ρ]` with both indices into
/// `partitions`.
#[derive(Debug)]
pub struct CharacterTable {
    degree: usize,
    partitions: Vec<Partition>,
    class_sizes: Vec<BigUint>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(d: usize) -> Result<Self> {
        check_degree(d)?;
        let partitions = Partition::all(d);
        let fact = factorial(d);
        let class_sizes = partitions.iter().map(|rho| &fact / centralizer_order(rho)).collect();
        let mut values = Vec::with_capacity(partitions.len());
        for lambda in &partitions {
            let mut memo = Memo::new();
            values.push(
                partitions
                    .iter()
                    .map(|rho| {
                        memo.clear();
                        mn(lambda.parts(), rho.parts(), 0, &mut memo)
                    })
                    .collect(),
            );
        }
        Ok(CharacterTable {
            degree: d,
            partitions,
            class_sizes,
            values,
        })
    }

    /// A shared table for degree `d`, built on first use.
    pub fn for_degree(d: usize) -> Result<Arc<CharacterTable>> {
        check_degree(d)?;
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().expect("table cache").get(&d) {
            return Ok(t.clone());
        }
        let t = Arc::new(CharacterTable::new(d)?);
        cache.lock().expect("table cache").insert(d, t.clone());
        Ok(t)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.class_sizes
    }

    fn index(&self, p: &Partition) -> Result<usize> {
        self.partitions
            .iter()
            .position(|q| q == p)
            .ok_or_else(|| Error::DimensionMismatch(format!("{p} is not a partition of {}", self.degree)))
    }

    pub fn value(&self, lambda: &Partition, rho: &Partition) -> Result<i64> {
        Ok(self.values[self.index(lambda)?][self.index(rho)?])
    }

    /// The row of `χ_λ`, in the order of [`partitions`](Self::partitions).
    pub fn row(&self, lambda: &Partition) -> Result<&[i64]> {
        Ok(&self.values[self.index(lambda)?])
    }

    /// `(1/d!) Σ_ρ |C_ρ| ∏_i χ_{λ_i}(ρ)` for any number of partitions.
    /// Panics if the division is not exact, which would mean a wrong table.
    pub fn multiplicity(&self, shapes: &[&Partition]) -> Result<BigInt> {
        let rows = shapes.iter().map(|p| self.row(p)).collect::<Result<Vec<_>>>()?;
        let mut sum = BigInt::zero();
        for (c, size) in self.class_sizes.iter().enumerate() {
            let prod: BigInt = rows.iter().map(|r| BigInt::from(r[c])).product();
            sum += prod * BigInt::from(size.clone());
        }
        let (q, r) = sum.div_rem(&BigInt::from(factorial(self.degree)));
        assert!(r.is_zero(), "character sum {sum} not divisible by {}!", self.degree);
        Ok(q)
    }
}

/// `k(λ,μ,ν)`; the empty triple gives 1.
pub fn kronecker_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    let d = lambda.size();
    if mu.size() != d || nu.size() != d {
        return Err(Error::DimensionMismatch(format!(
            "partitions {lambda}, {mu}, {nu} have different sizes"
        )));
    }
    let k = CharacterTable::for_degree(d)?.multiplicity(&[lambda, mu, nu])?;
    assert!(!k.is_negative(), "negative Kronecker coefficient {k}");
    Ok(k.magnitude().clone())
}

/// `k_m(δ) = k(m×δ, m×δ, m×δ)`.
pub fn rectangular_kronecker(m: usize, delta: usize) -> Result<BigUint> {
    let r = Partition::rectangle(m, delta);
    kronecker_coefficient(&r, &r, &r)
}

/// Both sides of `k_{n²−j}(n) = k_j(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleSymmetry {
    pub n: usize,
    pub j: usize,
    #[serde(with = "crate::serde_big::biguint")]
    pub complement: BigUint,
    #[serde(with = "crate::serde_big::biguint")]
    pub direct: BigUint,
}

impl RectangleSymmetry {
    pub fn holds(&self) -> bool {
        self.complement == self.direct
    }
}

pub fn rectangle_symmetry(n: usize, j: usize) -> Result<RectangleSymmetry> {
    if j > n * n {
        return Err(Error::InvalidInput(format!("need j ≤ n² = {}", n * n)));
    }
    Ok(RectangleSymmetry {
        n,
        j,
        complement: rectangular_kronecker(n * n - j, n)?,
        direct: rectangular_kronecker(j, n)?,
    })
}

pub fn rectangle_symmetry_check(n: usize, j: usize) -> Result<bool> {
    Ok(rectangle_symmetry(n, j)?.holds())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangularTriple {
    pub rows: [usize; 3],
    pub widths: [usize; 3],
    #[serde(with = "crate::serde_big::biguint")]
    pub coefficient: BigUint,
    /// `m₁ ≤ δ₂δ₃`, `m₂ ≤ δ₁δ₃`, `m₃ ≤ δ₁δ₂`.
    pub inequalities_hold: bool,
}

/// `k(m₁×δ₁, m₂×δ₂, m₃×δ₃)` and whether the necessary inequalities hold.
pub fn rectangular_triple_positive(rows: [usize; 3], widths: [usize; 3]) -> Result<RectangularTriple> {
    let d = rows[0] * widths[0];
    if rows[1] * widths[1] != d || rows[2] * widths[2] != d {
        return Err(Error::DimensionMismatch(format!(
            "rectangles {}×{}, {}×{}, {}×{} have different sizes",
            rows[0], widths[0], rows[1], widths[1], rows[2], widths[2]
        )));
    }
    let [a, b, c] = rows;
    let shapes: Vec<Partition> = (0..3).map(|i| Partition::rectangle(rows[i], widths[i])).collect();
    Ok(RectangularTriple {
        rows,
        widths,
        coefficient: kronecker_coefficient(&shapes[0], &shapes[1], &shapes[2])?,
        inequalities_hold: a <= widths[1] * widths[2] && b <= widths[0] * widths[2] && c <= widths[0] * widths[1],
    })
}

/// The types `ℓm×n, mn×ℓ, nℓ×m` of the matrix multiplication design.
pub fn matmul_rectangles(l: usize, m: usize, n: usize) -> Result<RectangularTriple> {
    rectangular_triple_positive([l * m, m * n, n * l], [n, l, m])
}

/// Smallest `δ ≤ max_delta` with `k_m(δ) > 0`.
pub fn minimal_delta(m: usize, max_delta: usize) -> Result<Option<usize>> {
    for delta in 1..=max_delta {
        if !rectangular_kronecker(m, delta)?.is_zero() {
            return Ok(Some(delta));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn identity_class_gives_dimension() {
        for d in 1..=8 {
            let id = Partition::new(vec![1; d]).unwrap();
            for lambda in Partition::all(d) {
                let chi = character_value(&lambda, &id).unwrap();
                assert_eq!(chi, BigInt::from(lambda.hook_dimension()));
            }
        }
    }

    #[test]
    fn trivial_and_sign_characters() {
        for d in 1..=7 {
            let triv = p(&[d]);
            let sgn = Partition::new(vec![1; d]).unwrap();
            for rho in Partition::all(d) {
                assert_eq!(character_value(&triv, &rho).unwrap(), BigInt::from(1));
                let expected = if (d - rho.length()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(character_value(&sgn, &rho).unwrap(), BigInt::from(expected));
            }
        }
    }

    #[test]
    fn s3_table() {
        // rows (3), (2,1), (1,1,1); columns (3), (2,1), (1,1,1)
        let t = CharacterTable::new(3).unwrap();
        let want = [[1, 1, 1], [-1, 0, 2], [1, -1, 1]];
        for (i, lambda) in t.partitions().iter().enumerate() {
            for (j, rho) in t.partitions().iter().enumerate() {
                assert_eq!(t.value(lambda, rho).unwrap(), want[i][j]);
            }
        }
    }

    #[test]
    fn row_orthogonality() {
        for d in 1..=7 {
            let t = CharacterTable::new(d).unwrap();
            for a in t.partitions() {
                for b in t.partitions() {
                    let ip = t.multiplicity(&[a, b]).unwrap();
                    assert_eq!(ip, BigInt::from(i32::from(a == b)));
                }
            }
        }
    }

    #[test]
    fn centralizers() {
        assert_eq!(centralizer_order(&p(&[1, 1, 1])), 6u32.into());
        assert_eq!(centralizer_order(&p(&[2, 2])), 8u32.into());
        assert_eq!(centralizer_order(&p(&[3, 1])), 3u32.into());
    }

    #[test]
    fn small_kronecker_values() {
        assert_eq!(kronecker_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[2, 1])).unwrap(), 1u32.into());
        assert_eq!(kronecker_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3])).unwrap(), 1u32.into());
        assert_eq!(kronecker_coefficient(&p(&[3]), &p(&[3]), &p(&[1, 1, 1])).unwrap(), 0u32.into());
        assert_eq!(kronecker_coefficient(&Partition::empty(), &Partition::empty(), &Partition::empty()).unwrap(), 1u32.into());
    }

    #[test]
    fn rectangles() {
        assert_eq!(rectangular_kronecker(3, 2).unwrap(), 1u32.into());
        assert_eq!(rectangular_kronecker(2, 2).unwrap(), 1u32.into());
        assert_eq!(rectangular_kronecker(2, 3).unwrap(), 0u32.into());
        assert_eq!(rectangular_kronecker(0, 2).unwrap(), 1u32.into());
        let t = matmul_rectangles(1, 2, 2).unwrap();
        assert!(t.inequalities_hold);
        assert_eq!(t.coefficient, 1u32.into());
        assert_eq!(minimal_delta(3, 3).unwrap(), Some(2));
    }

    #[test]
    fn rejects() {
        assert!(kronecker_coefficient(&p(&[2]), &p(&[1]), &p(&[1])).is_err());
        assert!(matches!(CharacterTable::new(13), Err(Error::SizeCap(_))));
        assert!(rectangular_triple_positive([2, 3, 1], [2, 1, 1]).is_err());
    }
}
