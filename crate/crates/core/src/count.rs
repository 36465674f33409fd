use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

/// A tally of `+1` and `-1` contributions.
///
/// Only the two tallies are stored; [`SignedCount::value`] is always derived
/// from them so the two can never disagree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedCount {
    #[serde(with = "crate::serde_big::biguint")]
    positives: BigUint,
    #[serde(with = "crate::serde_big::biguint")]
    negatives: BigUint,
}

impl SignedCount {
    pub fn new(positives: impl Into<BigUint>, negatives: impl Into<BigUint>) -> Self {
        SignedCount {
            positives: positives.into(),
            negatives: negatives.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn positives(&self) -> &BigUint {
        &self.positives
    }

    pub fn negatives(&self) -> &BigUint {
        &self.negatives
    }

    pub fn total(&self) -> BigUint {
        &self.positives + &self.negatives
    }

    pub fn value(&self) -> BigInt {
        BigInt::from(self.positives.clone()) - BigInt::from(self.negatives.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.positives == self.negatives
    }

    /// Both tallies multiplied by `factor`.
    pub fn scaled(&self, factor: &BigUint) -> Self {
        SignedCount {
            positives: &self.positives * factor,
            negatives: &self.negatives * factor,
        }
    }

    /// Swaps the tallies, i.e. multiplies every contribution by `-1`.
    pub fn negated(&self) -> Self {
        SignedCount {
            positives: self.negatives.clone(),
            negatives: self.positives.clone(),
        }
    }

    pub fn add_sign(&mut self, positive: bool) {
        if positive {
            self.positives += 1u32;
        } else {
            self.negatives += 1u32;
        }
    }
}

impl From<LocalCount> for SignedCount {
    fn from(c: LocalCount) -> Self {
        SignedCount::new(c.pos, c.neg)
    }
}

impl Add for SignedCount {
    type Output = SignedCount;
    fn add(mut self, rhs: SignedCount) -> SignedCount {
        self += rhs;
        self
    }
}

impl AddAssign for SignedCount {
    fn add_assign(&mut self, rhs: SignedCount) {
        self.positives += rhs.positives;
        self.negatives += rhs.negatives;
    }
}

impl<'a> AddAssign<&'a SignedCount> for SignedCount {
    fn add_assign(&mut self, rhs: &'a SignedCount) {
        self.positives += &rhs.positives;
        self.negatives += &rhs.negatives;
    }
}

impl std::iter::Sum for SignedCount {
    fn sum<I: Iterator<Item = SignedCount>>(iter: I) -> Self {
        iter.fold(SignedCount::zero(), |a, b| a + b)
    }
}

impl fmt::Display for SignedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (+{} / -{})", self.value(), self.positives, self.negatives)
    }
}

/// Machine-word tally used inside hot loops before folding into a
/// [`SignedCount`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct LocalCount {
    pub pos: u64,
    pub neg: u64,
}

impl LocalCount {
    #[inline]
    pub fn push(&mut self, odd: bool) {
        if odd {
            self.neg += 1;
        } else {
            self.pos += 1;
        }
    }
}
