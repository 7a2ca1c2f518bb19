//! Nimbers, outcomes, and the xor/mex arithmetic connecting them.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

/// Grundy value of a position, written `*n`.
///
/// Adding nimbers is xor on their values: `*a + *b = *(a xor b)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Nimber(pub u32);

impl Nimber {
    pub const ZERO: Nimber = Nimber(0);

    pub fn value(self) -> u32 {
        self.0
    }
}

impl From<u32> for Nimber {
    fn from(value: u32) -> Self {
        Nimber(value)
    }
}

impl BitXor for Nimber {
    type Output = Nimber;

    fn bitxor(self, rhs: Nimber) -> Nimber {
        Nimber(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Nimber {
    fn bitxor_assign(&mut self, rhs: Nimber) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Nimber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "*{}", self.0)
    }
}

/// Who wins a position with both players playing perfectly: `Win` means the
/// player to move wins, `Loss` means the previous player does.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Outcome {
    Win,
    Loss,
}

impl Outcome {
    pub fn is_win(self) -> bool {
        self == Outcome::Win
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Win => write!(f, "W"),
            Outcome::Loss => write!(f, "L"),
        }
    }
}

/// Sum of two nimbers: `*a + *b = *(a xor b)`.
pub fn nim_sum(a: Nimber, b: Nimber) -> Nimber {
    a ^ b
}

/// Sum of any number of nimbers. The empty sum is `*0`.
pub fn nim_sum_fold<I: IntoIterator<Item = Nimber>>(nimbers: I) -> Nimber {
    nimbers.into_iter().fold(Nimber::ZERO, |acc, n| acc ^ n)
}

/// Least nimber not present in `values`. `mex([])` is `*0`.
pub fn mex<I: IntoIterator<Item = Nimber>>(values: I) -> Nimber {
    let mut seen: Vec<u32> = values.into_iter().map(Nimber::value).collect();
    seen.sort_unstable();
    seen.dedup();
    let mut result = 0u32;
    for v in seen {
        if v == result {
            result += 1;
        } else if v > result {
            break;
        }
    }
    Nimber(result)
}

/// A position is losing exactly when its nimber is `*0`.
pub fn outcome_from_nimber(n: Nimber) -> Outcome {
    if n == Nimber::ZERO {
        Outcome::Loss
    } else {
        Outcome::Win
    }
}

/// A sum of two positions is losing exactly when the component nimbers match.
pub fn sum_outcome_from_nimbers(a: Nimber, b: Nimber) -> Outcome {
    outcome_from_nimber(nim_sum(a, b))
}
