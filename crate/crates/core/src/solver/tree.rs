//! Solution trees and the nimber information they already contain.
//!
//! A solution tree proves an outcome: a winning node keeps exactly the one
//! losing reply it chose, a losing node keeps all of its options, each
//! winning. For a sum of two positions such a proof is worth more than the
//! outcome it was built for: walking it recovers the exact nimber of one
//! component and an equal/different relation for the other, without
//! expanding a single further position.

use thiserror::Error;

use crate::game::{Couple, Position, SumPosition};
use crate::nimber::{mex, Nimber, Outcome};

/// Proof tree for the outcome of one couple.
#[derive(Clone, PartialEq, Debug)]
pub struct SolutionTree<P> {
    pub couple: Couple<P>,
    pub outcome: Outcome,
    pub children: Vec<SolutionTree<P>>,
}

impl<P: Position> SolutionTree<P> {
    /// Checks the structural invariants, replaying option generation to
    /// confirm a losing node keeps every option as a winning child.
    pub fn validate(&self) -> Result<(), TreeError> {
        match self.outcome {
            Outcome::Win => {
                if self.children.len() != 1 {
                    return Err(TreeError::WinNodeFanout { children: self.children.len() });
                }
                if self.children[0].outcome != Outcome::Loss {
                    return Err(TreeError::BrokenAlternation);
                }
            }
            Outcome::Loss => {
                let options = self.couple.options();
                if self.children.len() != options.len() {
                    return Err(TreeError::MissingOptions {
                        children: self.children.len(),
                        options: options.len(),
                    });
                }
                let mut unmatched = options;
                for child in &self.children {
                    if child.outcome != Outcome::Win {
                        return Err(TreeError::BrokenAlternation);
                    }
                    match unmatched.iter().position(|o| *o == child.couple) {
                        Some(i) => {
                            unmatched.swap_remove(i);
                        }
                        None => return Err(TreeError::UnknownChild),
                    }
                }
            }
        }
        for child in &self.children {
            child.validate()?;
        }
        Ok(())
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum TreeError {
    #[error("winning node must keep exactly one losing reply, found {children} children")]
    WinNodeFanout { children: usize },
    #[error("losing node keeps {children} children but has {options} options")]
    MissingOptions { children: usize, options: usize },
    #[error("child outcome does not alternate with its parent")]
    BrokenAlternation,
    #[error("child is not an option of its parent")]
    UnknownChild,
}

/// Which of the two summands a result refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComponentSide {
    Left,
    Right,
}

impl ComponentSide {
    fn other(self) -> ComponentSide {
        match self {
            ComponentSide::Left => ComponentSide::Right,
            ComponentSide::Right => ComponentSide::Left,
        }
    }

    pub fn index(self) -> usize {
        match self {
            ComponentSide::Left => 0,
            ComponentSide::Right => 1,
        }
    }
}

/// How the other summand's nimber relates to the extracted one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NimberRelation {
    Equal,
    Different,
}

/// Result of reading a two-part sum's solution tree: the exact nimber of one
/// side, and whether the other side's nimber equals it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExtractedNimber {
    pub side: ComponentSide,
    pub nimber: Nimber,
    pub relation: NimberRelation,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ExtractError {
    #[error("expected a sum of exactly 2 components, found {found}")]
    NotTwoComponents { found: usize },
    #[error("extraction only reads trees over plain positions, found nimber part {part}")]
    UnexpectedNimberPart { part: Nimber },
    #[error("losing leaf is not a terminal position")]
    NonTerminalLeaf,
    #[error("child position does not differ from its parent in exactly one component")]
    AmbiguousMove,
    #[error("{0}")]
    Structure(#[from] TreeError),
}

/// Reads one component's exact nimber out of a finished solution tree for a
/// two-part sum, plus an equal/different relation for the other component.
///
/// Pure structural walk: no options are generated and nothing is searched.
/// At a losing node every move keeps the components' nimbers related the
/// same way, so either some child already knows the untouched side's nimber,
/// or the children touching the left side enumerate all of its options and
/// mex over their nimbers rebuilds it. At a winning node the one losing
/// reply's result transfers to the side the move did not touch.
pub fn extract_component_nimber<P: Position>(
    tree: &SolutionTree<SumPosition<P>>,
) -> Result<ExtractedNimber, ExtractError> {
    if tree.couple.nimber_part != Nimber::ZERO {
        return Err(ExtractError::UnexpectedNimberPart { part: tree.couple.nimber_part });
    }
    let parts = tree.couple.position.components();
    if parts.len() != 2 {
        return Err(ExtractError::NotTwoComponents { found: parts.len() });
    }
    match tree.outcome {
        Outcome::Loss => {
            if tree.children.is_empty() {
                if !tree.couple.position.is_terminal() {
                    return Err(ExtractError::NonTerminalLeaf);
                }
                // no move left anywhere: both sides are *0
                return Ok(ExtractedNimber {
                    side: ComponentSide::Left,
                    nimber: Nimber::ZERO,
                    relation: NimberRelation::Equal,
                });
            }
            let mut left_option_nimbers = Vec::new();
            for child in &tree.children {
                if child.outcome != Outcome::Win {
                    return Err(TreeError::BrokenAlternation.into());
                }
                let moved = changed_side(tree, child)?;
                let sub = extract_component_nimber(child)?;
                if sub.side == moved.other() {
                    // the child pinned down the side this move did not touch;
                    // a losing sum makes the other side equal to it
                    return Ok(ExtractedNimber {
                        side: sub.side,
                        nimber: sub.nimber,
                        relation: NimberRelation::Equal,
                    });
                }
                if moved == ComponentSide::Left {
                    left_option_nimbers.push(sub.nimber);
                }
            }
            // every left option's nimber is known, and a losing node keeps
            // all options, so the mex is the left component's nimber
            Ok(ExtractedNimber {
                side: ComponentSide::Left,
                nimber: mex(left_option_nimbers),
                relation: NimberRelation::Equal,
            })
        }
        Outcome::Win => {
            if tree.children.len() != 1 {
                return Err(TreeError::WinNodeFanout { children: tree.children.len() }.into());
            }
            let child = &tree.children[0];
            if child.outcome != Outcome::Loss {
                return Err(TreeError::BrokenAlternation.into());
            }
            let moved = changed_side(tree, child)?;
            let sub = extract_component_nimber(child)?;
            debug_assert_eq!(sub.relation, NimberRelation::Equal);
            // the losing child's sides share one nimber, so the untouched
            // side still has it; a winning sum makes the sides differ
            Ok(ExtractedNimber {
                side: moved.other(),
                nimber: sub.nimber,
                relation: NimberRelation::Different,
            })
        }
    }
}

fn changed_side<P: Position>(
    parent: &SolutionTree<SumPosition<P>>,
    child: &SolutionTree<SumPosition<P>>,
) -> Result<ComponentSide, ExtractError> {
    let p = parent.couple.position.components();
    let c = child.couple.position.components();
    if c.len() != 2 {
        return Err(ExtractError::NotTwoComponents { found: c.len() });
    }
    match (p[0] == c[0], p[1] == c[1]) {
        (false, true) => Ok(ComponentSide::Left),
        (true, false) => Ok(ComponentSide::Right),
        _ => Err(ExtractError::AmbiguousMove),
    }
}
