//! Nim: heaps of matches, a move takes any positive number from one heap.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::Position;
use crate::nimber::{nim_sum_fold, outcome_from_nimber, Nimber, Outcome};

/// A multiset of heap sizes, kept sorted descending with empty heaps dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NimPosition {
    heaps: Vec<u32>,
}

impl NimPosition {
    pub fn new<I: IntoIterator<Item = u32>>(heaps: I) -> Self {
        let mut heaps: Vec<u32> = heaps.into_iter().filter(|&h| h > 0).collect();
        heaps.sort_unstable_by(|a, b| b.cmp(a));
        NimPosition { heaps }
    }

    pub fn heaps(&self) -> &[u32] {
        &self.heaps
    }

    /// Closed-form outcome: losing exactly when the xor of the heaps is 0.
    pub fn bouton_outcome(&self) -> Outcome {
        outcome_from_nimber(self.bouton_nimber())
    }

    /// Closed-form nimber: the xor of the heap sizes.
    pub fn bouton_nimber(&self) -> Nimber {
        nim_sum_fold(self.heaps.iter().map(|&h| Nimber(h)))
    }
}

impl Position for NimPosition {
    fn is_terminal(&self) -> bool {
        self.heaps.is_empty()
    }

    /// One option per distinct successor: equal heaps would otherwise
    /// produce the same position several times.
    fn options(&self) -> Vec<Self> {
        let mut opts = Vec::new();
        let mut seen: Vec<Vec<u32>> = Vec::new();
        for i in 0..self.heaps.len() {
            if i > 0 && self.heaps[i] == self.heaps[i - 1] {
                continue;
            }
            for take in 1..=self.heaps[i] {
                let mut heaps = self.heaps.clone();
                heaps[i] -= take;
                let next = NimPosition::new(heaps);
                if !seen.contains(&next.heaps) {
                    seen.push(next.heaps.clone());
                    opts.push(next);
                }
            }
        }
        opts
    }

    fn split(&self) -> Vec<Self> {
        self.heaps.iter().map(|&h| NimPosition::new([h])).collect()
    }

    fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(1 + 4 * self.heaps.len());
        key.push(b'N');
        for &h in &self.heaps {
            key.extend_from_slice(&h.to_le_bytes());
        }
        key
    }

    fn size(&self) -> usize {
        self.heaps.iter().map(|&h| h as usize).sum()
    }
}

impl fmt::Display for NimPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.heaps.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.heaps.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ParseNimError {
    #[error("bad heap size {text:?}: expected a non-negative integer")]
    BadHeap { text: String },
}

impl FromStr for NimPosition {
    type Err = ParseNimError;

    /// Comma-separated heap sizes, e.g. `7,5,4,2`. Zero heaps are dropped;
    /// an empty string is the empty position.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "-" {
            return Ok(NimPosition::new([]));
        }
        let mut heaps = Vec::new();
        for part in trimmed.split(',') {
            let part = part.trim();
            let heap: u32 = part
                .parse()
                .map_err(|_| ParseNimError::BadHeap { text: part.to_string() })?;
            heaps.push(heap);
        }
        Ok(NimPosition::new(heaps))
    }
}
