//! Hyperdeterminant and hyperpermanent of `n×n×n` arrays, and the
//! inclusion–exclusion sums over binary arrays that count Latin cubes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm;

/// An `n×n×n` array of integers indexed `[(i*n + j)*n + k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Array3 {
    n: usize,
    entries: Vec<BigInt>,
}

impl Array3 {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != n * n * n {
            return Err(Error::InvalidInput(format!("need {} entries for order {n}", n * n * n)));
        }
        Ok(Array3 { n, entries })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    entries.push(f(i, j, k));
                }
            }
        }
        Array3 { n, entries }
    }

    /// A 0/1 array, e.g. from a permutation matrix or a binary matrix.
    pub fn from_bits(n: usize, bits: &[u8]) -> Result<Self> {
        Self::new(n, bits.iter().map(|&b| BigInt::from(b)).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.entries[(i * self.n + j) * self.n + k]
    }

    /// Moves slice `v` on `axis` to position `p[v]`.
    pub fn permute_slices(&self, axis: usize, p: &[usize]) -> Result<Self> {
        perm::check_permutation(p)?;
        if axis > 2 || p.len() != self.n {
            return Err(Error::InvalidInput("bad slice permutation".into()));
        }
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut c = [i, j, k];
                    c[axis] = p[c[axis]];
                    entries[(c[0] * n + c[1]) * n + c[2]] = self.get(i, j, k).clone();
                }
            }
        }
        Ok(Array3 { n, entries })
    }
}

/// The double sums are evaluated literally over `S_n × S_n`.
pub const HYPER_ORDER_CAP: usize = 6;

fn hyper(a: &Array3, signed: bool) -> Result<BigInt> {
    let n = a.n;
    if n > HYPER_ORDER_CAP {
        return Err(Error::SizeCap(format!(
            "order {n} exceeds the cap of {HYPER_ORDER_CAP} for the literal double sum"
        )));
    }
    let perms = perm::all_with_sign(n);
    let mut total = BigInt::zero();
    for (sigma, ss) in &perms {
        for (tau, st) in &perms {
            let mut prod = BigInt::one();
            for i in 0..n {
                prod *= a.get(i, sigma[i], tau[i]);
                if prod.is_zero() {
                    break;
                }
            }
            if signed && ss * st < 0 {
                total -= prod;
            } else {
                total += prod;
            }
        }
    }
    Ok(total)
}

/// `Det(X) = Σ_{σ,τ} sgn(σ)sgn(τ) ∏ X_{i,σ(i),τ(i)}`.
pub fn hyperdet(a: &Array3) -> Result<BigInt> {
    hyper(a, true)
}

/// `Per(X) = Σ_{σ,τ} ∏ X_{i,σ(i),τ(i)}`.
pub fn hyperper(a: &Array3) -> Result<BigInt> {
    hyper(a, false)
}

/// `2^{n³}` binary arrays are visited, so only orders up to 3 are accepted.
pub const INCLUSION_EXCLUSION_CAP: usize = 3;

/// `Σ_A (-1)^{σ₀(A)} f(A)^{n²}` over binary `A`, with `f` the hyperdeterminant
/// (`signed`) or hyperpermanent. A binary array picks up a diagonal's term
/// exactly when it contains the whole diagonal, so both are sums over the
/// `(n!)²` diagonal masks contained in `A`.
fn inclusion_exclusion(n: usize, signed: bool) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    if n > INCLUSION_EXCLUSION_CAP {
        return Err(Error::SizeCap(format!(
            "2^{} binary arrays is beyond the cap of order {INCLUSION_EXCLUSION_CAP}",
            n * n * n
        )));
    }
    let cells = n * n * n;
    let perms = perm::all_with_sign(n);
    let mut diagonals: Vec<(u32, i64)> = Vec::new();
    for (sigma, ss) in &perms {
        for (tau, st) in &perms {
            let mask = (0..n).fold(0u32, |m, i| m | 1 << ((i * n + sigma[i]) * n + tau[i]));
            let w = if signed { (ss * st) as i64 } else { 1 };
            diagonals.push((mask, w));
        }
    }
    let power = (n * n) as u32;
    let mut total: i128 = 0;
    for a in 0u64..(1u64 << cells) {
        let a = a as u32;
        let f: i64 = diagonals
            .iter()
            .filter(|(m, _)| a & m == *m)
            .map(|(_, w)| w)
            .sum();
        if f == 0 {
            continue;
        }
        let term = (f as i128).pow(power);
        let zeros = cells as u32 - a.count_ones();
        if zeros % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(BigInt::from(total))
}

/// `Σ_{A∈B_n} (-1)^{σ₀(A)} Det(A)^{n²}`, which equals `L^{se} − L^{so}`.
pub fn symbol_delta_by_inclusion_exclusion(n: usize) -> Result<BigInt> {
    inclusion_exclusion(n, true)
}

/// `Σ_{A∈B_n} (-1)^{σ₀(A)} Per(A)^{n²}`, which equals the number of Latin
/// cubes of order `n`.
pub fn count_by_inclusion_exclusion(n: usize) -> Result<BigInt> {
    inclusion_exclusion(n, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::PermutationMatrix3D;

    fn ones(n: usize) -> Array3 {
        Array3::from_fn(n, |_, _, _| BigInt::one())
    }

    #[test]
    fn all_ones() {
        assert_eq!(hyperdet(&ones(2)).unwrap(), BigInt::zero());
        assert_eq!(hyperper(&ones(2)).unwrap(), BigInt::from(4));
        assert_eq!(hyperper(&ones(3)).unwrap(), BigInt::from(36));
        let zero = Array3::from_fn(3, |_, _, _| BigInt::zero());
        assert_eq!(hyperper(&zero).unwrap(), BigInt::zero());
    }

    #[test]
    fn permutation_arrays() {
        for (sigma, _) in perm::all_with_sign(3) {
            for (tau, _) in perm::all_with_sign(3) {
                let p = PermutationMatrix3D::new(sigma.clone(), tau).unwrap();
                let a = Array3::from_bits(3, &p.to_array()).unwrap();
                assert_eq!(hyperdet(&a).unwrap(), BigInt::from(p.sign()));
                assert_eq!(hyperper(&a).unwrap(), BigInt::one());
            }
        }
    }

    #[test]
    fn cap() {
        assert!(hyperdet(&ones(7)).is_err());
        assert!(count_by_inclusion_exclusion(4).is_err());
    }

    #[test]
    fn order_one() {
        assert_eq!(count_by_inclusion_exclusion(1).unwrap(), BigInt::one());
        assert_eq!(symbol_delta_by_inclusion_exclusion(1).unwrap(), BigInt::one());
    }
}
