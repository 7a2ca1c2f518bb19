//! Store of proven facts about positions, keyed by canonical key.
//!
//! Only two kinds of facts are kept: the exact nimber of a position (learned
//! when some couple `(P, *n)` turns out losing) and lower-bound exclusions
//! (learned when ladder trials below some value all turned out winning).
//! Winning couples themselves are never stored; the exclusion already says
//! everything they prove.

use std::collections::HashMap;

use crate::nimber::{Nimber, Outcome};

/// What the store knows about one position.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Knowledge {
    /// The nimber is exactly this value.
    ExactNimber(Nimber),
    /// The nimber is not any value below this one.
    ExcludedBelow(Nimber),
}

impl Knowledge {
    /// True when this fact alone proves `(P, *trial)` is winning.
    pub fn proves_winning(&self, trial: Nimber) -> bool {
        match *self {
            Knowledge::ExactNimber(n) => n != trial,
            Knowledge::ExcludedBelow(k) => trial < k,
        }
    }

    /// Outcome of `(P, *trial)` if this fact decides it.
    pub fn outcome_of_trial(&self, trial: Nimber) -> Option<Outcome> {
        match *self {
            Knowledge::ExactNimber(n) if n == trial => Some(Outcome::Loss),
            Knowledge::ExactNimber(_) => Some(Outcome::Win),
            Knowledge::ExcludedBelow(k) if trial < k => Some(Outcome::Win),
            Knowledge::ExcludedBelow(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Entry {
    knowledge: Knowledge,
    touched: u64,
}

/// Transposition table shared by one search session.
///
/// An optional size cap evicts the least recently used `ExcludedBelow`
/// entries; exact nimbers are never evicted, so the table may exceed the cap
/// when everything left in it is exact.
#[derive(Default, Debug)]
pub struct TranspositionTable {
    entries: HashMap<Vec<u8>, Entry>,
    clock: u64,
    capacity: Option<usize>,
    exact_entries: usize,
}

impl TranspositionTable {
    pub fn new() -> Self {
        TranspositionTable::default()
    }

    pub fn with_capacity_limit(capacity: usize) -> Self {
        TranspositionTable {
            capacity: Some(capacity),
            ..TranspositionTable::default()
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of positions whose exact nimber is stored.
    pub fn exact_entries(&self) -> usize {
        self.exact_entries
    }

    /// Looks a position up and marks it recently used.
    pub fn probe(&mut self, key: &[u8]) -> Option<Knowledge> {
        self.clock += 1;
        let clock = self.clock;
        self.entries.get_mut(key).map(|e| {
            e.touched = clock;
            e.knowledge
        })
    }

    /// Looks a position up without touching recency.
    pub fn knowledge(&self, key: &[u8]) -> Option<Knowledge> {
        self.entries.get(key).map(|e| e.knowledge)
    }

    /// Records an exact nimber. Returns true when the position was not
    /// already exact. An existing exclusion must be consistent with `n`.
    pub fn record_exact(&mut self, key: &[u8], n: Nimber) -> bool {
        self.clock += 1;
        if let Some(entry) = self.entries.get_mut(key) {
            entry.touched = self.clock;
            match entry.knowledge {
                Knowledge::ExactNimber(prev) => {
                    debug_assert_eq!(prev, n, "conflicting exact nimbers for one key");
                    return false;
                }
                Knowledge::ExcludedBelow(k) => {
                    debug_assert!(n >= k, "exact nimber {n} contradicts exclusion below {k}");
                    entry.knowledge = Knowledge::ExactNimber(n);
                }
            }
        } else {
            let touched = self.clock;
            self.entries.insert(key.to_vec(), Entry { knowledge: Knowledge::ExactNimber(n), touched });
            self.enforce_capacity();
        }
        self.exact_entries += 1;
        true
    }

    /// Records that the nimber is not below `below`. Exclusions only grow;
    /// an exact entry already subsumes any consistent exclusion.
    pub fn record_excluded(&mut self, key: &[u8], below: Nimber) {
        self.clock += 1;
        if let Some(entry) = self.entries.get_mut(key) {
            entry.touched = self.clock;
            match entry.knowledge {
                Knowledge::ExactNimber(n) => {
                    debug_assert!(n >= below, "exclusion below {below} contradicts exact nimber {n}");
                }
                Knowledge::ExcludedBelow(k) => {
                    entry.knowledge = Knowledge::ExcludedBelow(k.max(below));
                }
            }
        } else {
            let touched = self.clock;
            self.entries.insert(
                key.to_vec(),
                Entry { knowledge: Knowledge::ExcludedBelow(below), touched },
            );
            self.enforce_capacity();
        }
    }

    fn enforce_capacity(&mut self) {
        let Some(cap) = self.capacity else { return };
        if self.entries.len() <= cap {
            return;
        }
        let mut evictable: Vec<(u64, Vec<u8>)> = self
            .entries
            .iter()
            .filter(|(_, e)| matches!(e.knowledge, Knowledge::ExcludedBelow(_)))
            .map(|(k, e)| (e.touched, k.clone()))
            .collect();
        evictable.sort_unstable();
        let excess = self.entries.len() - cap;
        for (_, key) in evictable.into_iter().take(excess) {
            self.entries.remove(&key);
        }
    }
}
