//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Parses `"3"`, `"-7/4"` or `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(digits, den));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Determinant of a square matrix given as rows.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Rank of the matrix whose columns are `cols` (all of equal length).
pub fn rank_of_columns(cols: &[Vec<BigRational>]) -> usize {
    // row-reduce the transpose: rank is the same
    let mut m: Vec<Vec<BigRational>> = cols.to_vec();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(pivot, rank);
        let p = m[rank][c].clone();
        for r in rank + 1..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] / &p;
            for k in c..width {
                let sub = &factor * &m[rank][k];
                m[r][k] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// `g · v` for a square matrix `g` given as rows.
pub fn mat_vec(g: &[Vec<BigRational>], v: &[BigRational]) -> Result<Vec<BigRational>> {
    if g.iter().any(|row| row.len() != v.len()) || g.len() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x? matrix applied to vector of length {}",
            g.len(),
            v.len()
        )));
    }
    Ok(g.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect())
}

pub fn is_square(g: &[Vec<BigRational>]) -> bool {
    g.iter().all(|row| row.len() == g.len())
}
