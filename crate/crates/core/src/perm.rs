//! Small permutation helpers. Permutations are 0-based images: `p[i]` is the
//! image of `i`.

use crate::error::{Error, Result};

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn check_permutation(p: &[usize]) -> Result<()> {
    if is_permutation(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p:?} is not a permutation")))
    }
}

/// Number of pairs `i < j` with `seq[i] > seq[j]`.
pub fn inversions<T: Ord>(seq: &[T]) -> usize {
    let mut count = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                count += 1;
            }
        }
    }
    count
}

/// `+1` or `-1`.
pub fn sign<T: Ord>(seq: &[T]) -> i32 {
    if inversions(seq) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// All permutations of `0..n` in lexicographic order, paired with their sign.
pub fn all_with_sign(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut p = identity(n);
    loop {
        let s = sign(&p);
        out.push((p.clone(), s));
        if !next_permutation(&mut p) {
            break;
        }
    }
    out
}

/// Advances `p` to the next permutation in lexicographic order. Returns
/// `false` (leaving `p` sorted ascending) once the last one is passed.
pub fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn factorial(n: usize) -> num_bigint::BigUint {
    (1..=n).fold(num_bigint::BigUint::from(1u32), |acc, k| acc * k)
}
