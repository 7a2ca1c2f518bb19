//! Brute-force reference solver used to validate the real one.
//!
//! The oracle expands the whole game tree below a position, never splitting
//! it into components and never reasoning about couples, so it shares no
//! code path with the search it is checking. Results are cached per
//! canonical key; keys identify positions up to symmetry, so the cache can
//! only merge positions with equal values.

use std::collections::HashMap;

use crate::game::Position;
use crate::nimber::{mex, Nimber, Outcome};

/// Write-once caches of oracle results keyed by canonical key.
#[derive(Default, Debug)]
pub struct Oracle {
    nimbers: HashMap<Vec<u8>, Nimber>,
    outcomes: HashMap<Vec<u8>, Outcome>,
}

impl Oracle {
    pub fn new() -> Self {
        Oracle::default()
    }

    /// Nimber by direct mex recursion over all options.
    pub fn nimber<P: Position>(&mut self, position: &P) -> Nimber {
        let key = position.canonical_key();
        if let Some(&n) = self.nimbers.get(&key) {
            return n;
        }
        let options = position.options();
        let values: Vec<Nimber> = options.iter().map(|o| self.nimber(o)).collect();
        let n = mex(values);
        self.nimbers.insert(key, n);
        n
    }

    /// Outcome by direct win/loss recursion: a position is winning exactly
    /// when some option is losing.
    pub fn outcome<P: Position>(&mut self, position: &P) -> Outcome {
        let key = position.canonical_key();
        if let Some(&o) = self.outcomes.get(&key) {
            return o;
        }
        let mut result = Outcome::Loss;
        for option in position.options() {
            if self.outcome(&option) == Outcome::Loss {
                result = Outcome::Win;
                break;
            }
        }
        self.outcomes.insert(key, result);
        result
    }
}
