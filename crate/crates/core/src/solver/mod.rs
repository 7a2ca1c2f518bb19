//! Couple search with sum decomposition.
//!
//! The outcome of `(P, *n)` is searched over the couple's options; when the
//! position part falls apart into independent components the search does not
//! descend into the sum's own move list. It computes the nimbers of all
//! components but one, folds them with xor into the nim heap, and solves the
//! single remaining couple. Nimbers themselves come from a ladder of couple
//! searches `(P, *0), (P, *1), ...` whose first losing trial is the nimber;
//! every failed trial is banked in the store as a lower-bound exclusion, and
//! every losing couple as an exact nimber.
//!
//! `elementary_solve` is the deliberately split-free baseline the same
//! session type also offers, with its memo kept apart from the couple store
//! so node counts compare honestly.

mod table;
mod tree;

pub use table::{Knowledge, TranspositionTable};
pub use tree::{
    extract_component_nimber, ComponentSide, ExtractError, ExtractedNimber, NimberRelation,
    SolutionTree, TreeError,
};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::{Couple, Position};
use crate::nimber::{Nimber, Outcome};

/// Default cap on couple expansions per session.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Error, Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchError {
    #[error("search budget exhausted after {expanded} couple expansions")]
    BudgetExhausted { expanded: u64 },
}

/// Counters for one search session. All counts only ever grow.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct SearchStats {
    /// Couples (or baseline nodes) whose options were generated.
    pub couples_expanded: u64,
    /// Calls answered by the store without expansion.
    pub tt_hits: u64,
    /// Exact nimbers recorded, one per losing couple discovered.
    pub losing_couples_stored: u64,
    /// Highest ladder trial attempted so far.
    pub max_nimber_tried: Nimber,
}

/// How sibling options (and sum components) are ordered before searching.
///
/// Every strategy is a pure reordering: it changes where refutations are
/// found first, never what is found.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum OrderingStrategy {
    /// Generation order; a couple's nim-heap options come after its
    /// position options.
    Natural,
    /// Fewest position-part moves first.
    FewestMoves,
    /// Smallest position part first.
    #[default]
    SmallestComponent,
}

impl OrderingStrategy {
    pub const ALL: [OrderingStrategy; 3] = [
        OrderingStrategy::Natural,
        OrderingStrategy::FewestMoves,
        OrderingStrategy::SmallestComponent,
    ];

    pub fn token(self) -> &'static str {
        match self {
            OrderingStrategy::Natural => "natural",
            OrderingStrategy::FewestMoves => "fewest-moves",
            OrderingStrategy::SmallestComponent => "smallest-component",
        }
    }
}

impl fmt::Display for OrderingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for OrderingStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OrderingStrategy::ALL
            .into_iter()
            .find(|o| o.token() == s)
            .ok_or_else(|| format!("unknown ordering strategy {s:?}, expected natural, fewest-moves, or smallest-component"))
    }
}

/// Reorders a couple's options for search. Stable: ties keep their
/// generation order after the strategy's metric and the canonical key.
pub fn order_options<P: Position>(
    options: Vec<Couple<P>>,
    strategy: OrderingStrategy,
) -> Vec<Couple<P>> {
    let metric: fn(&P) -> usize = match strategy {
        OrderingStrategy::Natural => return options,
        OrderingStrategy::FewestMoves => |p| p.options().len(),
        OrderingStrategy::SmallestComponent => Position::size,
    };
    let mut decorated: Vec<(usize, Vec<u8>, Couple<P>)> = options
        .into_iter()
        .map(|c| (metric(&c.position), c.position.canonical_key(), c))
        .collect();
    decorated.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    decorated.into_iter().map(|(_, _, c)| c).collect()
}

/// Search-side option list: ordered like [`order_options`], each option
/// carrying its canonical key, and options the keys identify as the same
/// position (with the same nim heap) collapsed to their first occurrence.
fn ordered_keyed_options<P: Position>(
    options: Vec<Couple<P>>,
    strategy: OrderingStrategy,
) -> Vec<(Couple<P>, Vec<u8>)> {
    let mut decorated: Vec<(usize, Vec<u8>, Couple<P>)> = options
        .into_iter()
        .map(|c| (0, c.position.canonical_key(), c))
        .collect();
    let metric: Option<fn(&P) -> usize> = match strategy {
        OrderingStrategy::Natural => None,
        OrderingStrategy::FewestMoves => Some(|p| p.options().len()),
        OrderingStrategy::SmallestComponent => Some(Position::size),
    };
    if let Some(metric) = metric {
        for entry in &mut decorated {
            entry.0 = metric(&entry.2.position);
        }
        decorated.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    }
    let mut unique: Vec<(Couple<P>, Vec<u8>)> = Vec::with_capacity(decorated.len());
    for (_, key, couple) in decorated {
        let duplicate = unique
            .iter()
            .any(|(c, k)| *k == key && c.nimber_part == couple.nimber_part);
        if !duplicate {
            unique.push((couple, key));
        }
    }
    unique
}

/// One search session: a couple store, a separate baseline memo, counters,
/// and the knobs that shape the search. Sessions are single-owner; run
/// parallel work on separate sessions.
pub struct Solver {
    tt: TranspositionTable,
    elementary_memo: HashMap<Vec<u8>, Outcome>,
    stats: SearchStats,
    budget: u64,
    strategy: OrderingStrategy,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new()
    }
}

impl Solver {
    pub fn new() -> Self {
        Solver {
            tt: TranspositionTable::new(),
            elementary_memo: HashMap::new(),
            stats: SearchStats::default(),
            budget: DEFAULT_BUDGET,
            strategy: OrderingStrategy::default(),
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_strategy(mut self, strategy: OrderingStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// Replaces the couple store, e.g. with one that has a capacity limit or
    /// knowledge carried over from an earlier session.
    pub fn with_table(mut self, tt: TranspositionTable) -> Self {
        self.tt = tt;
        self
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    pub fn strategy(&self) -> OrderingStrategy {
        self.strategy
    }

    pub fn table(&self) -> &TranspositionTable {
        &self.tt
    }

    fn expand(&mut self) -> Result<(), SearchError> {
        if self.stats.couples_expanded >= self.budget {
            return Err(SearchError::BudgetExhausted { expanded: self.stats.couples_expanded });
        }
        self.stats.couples_expanded += 1;
        Ok(())
    }

    /// Outcome of `position + *nimber_part` by couple search.
    pub fn solve_couple<P: Position>(&mut self, couple: &Couple<P>) -> Result<Outcome, SearchError> {
        let key = couple.position.canonical_key();
        self.solve_couple_keyed(couple, &key)
    }

    /// The search proper; `key` must be `couple.position.canonical_key()`,
    /// precomputed so sibling enumeration and recursion key each position
    /// exactly once.
    fn solve_couple_keyed<P: Position>(
        &mut self,
        couple: &Couple<P>,
        key: &[u8],
    ) -> Result<Outcome, SearchError> {
        if let Some(known) = self.tt.probe(key) {
            if let Some(outcome) = known.outcome_of_trial(couple.nimber_part) {
                self.stats.tt_hits += 1;
                return Ok(outcome);
            }
        }
        let components = couple.position.split();
        if components.is_empty() {
            // no playable part: the couple is the bare nim heap *n
            self.expand()?;
            return Ok(if couple.nimber_part == Nimber::ZERO {
                Outcome::Loss
            } else {
                Outcome::Win
            });
        }
        if components.len() > 1 || components[0] != couple.position {
            return self.solve_components(components, couple.nimber_part);
        }
        self.expand()?;
        let options = ordered_keyed_options(couple.options(), self.strategy);
        for (option, option_key) in &options {
            if self.solve_couple_keyed(option, option_key)? == Outcome::Loss {
                return Ok(Outcome::Win);
            }
        }
        // every option wins, so the couple is losing and the position's
        // nimber is exactly the nim-heap value
        if self.tt.record_exact(key, couple.nimber_part) {
            self.stats.losing_couples_stored += 1;
        }
        Ok(Outcome::Loss)
    }

    /// Outcome of `components[0] + ... + components[k-1] + *nimber_part`.
    ///
    /// All components but a deferred one get their nimbers computed and
    /// folded into the nim heap; the deferred component is then solved as a
    /// single couple. The ordering strategy picks the deferred component:
    /// components sort ascending by its metric and the last one is deferred,
    /// so under the default strategy the largest component's nimber is the
    /// one never computed.
    pub fn solve_sum<P: Position>(
        &mut self,
        components: &[P],
        nimber_part: Nimber,
    ) -> Result<Outcome, SearchError> {
        if components.is_empty() {
            self.expand()?;
            return Ok(if nimber_part == Nimber::ZERO {
                Outcome::Loss
            } else {
                Outcome::Win
            });
        }
        self.solve_components(components.to_vec(), nimber_part)
    }

    fn solve_components<P: Position>(
        &mut self,
        mut components: Vec<P>,
        nimber_part: Nimber,
    ) -> Result<Outcome, SearchError> {
        self.order_components(&mut components);
        let deferred = components.pop().expect("components list is non-empty");
        let mut folded = nimber_part;
        for component in &components {
            folded = folded ^ self.nimber_of(component)?;
        }
        self.solve_couple(&Couple::new(deferred, folded))
    }

    fn order_components<P: Position>(&self, components: &mut Vec<P>) {
        let metric: fn(&P) -> usize = match self.strategy {
            OrderingStrategy::Natural => return,
            OrderingStrategy::FewestMoves => |p| p.options().len(),
            OrderingStrategy::SmallestComponent => Position::size,
        };
        let mut decorated: Vec<(usize, Vec<u8>, P)> = std::mem::take(components)
            .into_iter()
            .map(|p| (metric(&p), p.canonical_key(), p))
            .collect();
        decorated.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        *components = decorated.into_iter().map(|(_, _, p)| p).collect();
    }

    /// Nimber of a position: the first ladder trial `(p, *n)` that is
    /// losing. Failed trials are banked as exclusions, so an interrupted
    /// ladder resumes where it stopped, and on success the store holds the
    /// exact nimber under `p`'s own key.
    pub fn nimber_of<P: Position>(&mut self, position: &P) -> Result<Nimber, SearchError> {
        let key = position.canonical_key();
        let mut trial = match self.tt.probe(&key) {
            Some(Knowledge::ExactNimber(n)) => {
                self.stats.tt_hits += 1;
                return Ok(n);
            }
            Some(Knowledge::ExcludedBelow(k)) => k,
            None => Nimber::ZERO,
        };
        let mut couple = Couple::new(position.clone(), trial);
        loop {
            self.stats.max_nimber_tried = self.stats.max_nimber_tried.max(trial);
            couple.nimber_part = trial;
            match self.solve_couple_keyed(&couple, &key)? {
                Outcome::Loss => {
                    if self.tt.record_exact(&key, trial) {
                        self.stats.losing_couples_stored += 1;
                    }
                    return Ok(trial);
                }
                Outcome::Win => {
                    self.tt.record_excluded(&key, Nimber(trial.value() + 1));
                    trial = Nimber(trial.value() + 1);
                }
            }
        }
    }

    /// Split-free baseline: plain win/loss recursion over whole positions,
    /// memoized per canonical key in its own namespace.
    pub fn elementary_solve<P: Position>(&mut self, position: &P) -> Result<Outcome, SearchError> {
        let key = position.canonical_key();
        self.elementary_keyed(position, key)
    }

    fn elementary_keyed<P: Position>(
        &mut self,
        position: &P,
        key: Vec<u8>,
    ) -> Result<Outcome, SearchError> {
        if let Some(&outcome) = self.elementary_memo.get(&key) {
            self.stats.tt_hits += 1;
            return Ok(outcome);
        }
        self.expand()?;
        let options = ordered_keyed_options(
            position.options().into_iter().map(Couple::bare).collect(),
            self.strategy,
        );
        let mut outcome = Outcome::Loss;
        for (option, option_key) in options {
            if self.elementary_keyed(&option.position, option_key)? == Outcome::Loss {
                outcome = Outcome::Win;
                break;
            }
        }
        self.elementary_memo.insert(key, outcome);
        Ok(outcome)
    }

    /// Like [`elementary_solve`](Self::elementary_solve), but keeps the
    /// whole proof: one losing reply per winning node, all options per
    /// losing node. No memo shortcuts, so every kept child is fully
    /// expanded below.
    pub fn elementary_solution_tree<P: Position>(
        &mut self,
        position: &P,
    ) -> Result<SolutionTree<P>, SearchError> {
        self.expand()?;
        let couple = Couple::bare(position.clone());
        if position.is_terminal() {
            return Ok(SolutionTree { couple, outcome: Outcome::Loss, children: Vec::new() });
        }
        let options = order_options(
            position.options().into_iter().map(Couple::bare).collect(),
            self.strategy,
        );
        let mut children = Vec::new();
        for option in options {
            let sub = self.elementary_solution_tree(&option.position)?;
            if sub.outcome == Outcome::Loss {
                return Ok(SolutionTree { couple, outcome: Outcome::Win, children: vec![sub] });
            }
            children.push(sub);
        }
        Ok(SolutionTree { couple, outcome: Outcome::Loss, children })
    }
}
