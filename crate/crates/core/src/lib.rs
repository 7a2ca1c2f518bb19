//! Solver for finite impartial games under the normal play convention.
//!
//! A position is losing exactly when its nimber is `*0`, and the nimber of a
//! sum of independent positions is the xor of the component nimbers. The
//! [`solver`] module exploits this: instead of searching a sum as one big
//! position it splits it into components, computes the cheap components'
//! nimbers first, and folds them into a single equivalent couple
//! `(position, *n)`. [`nim`] and [`cram`] provide concrete games, and
//! [`oracle`] is a deliberately naive reference implementation used to check
//! the clever one.

pub mod cram;
pub mod game;
pub mod nim;
pub mod nimber;
pub mod oracle;
pub mod solver;

pub use cram::{rectangle_shortcut, CramBoard};
pub use game::{Couple, Position, SumPosition};
pub use nim::NimPosition;
pub use nimber::{mex, nim_sum, nim_sum_fold, outcome_from_nimber, sum_outcome_from_nimbers};
pub use nimber::{Nimber, Outcome};
pub use oracle::Oracle;
pub use solver::{
    extract_component_nimber, order_options, ComponentSide, ExtractedNimber, Knowledge,
    NimberRelation, OrderingStrategy, SearchError, SearchStats, SolutionTree, Solver,
    TranspositionTable, DEFAULT_BUDGET,
};
