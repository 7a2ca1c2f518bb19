//! Game-agnostic position interface, couples, and explicit sums.

use crate::nimber::Nimber;

/// A finite impartial game position under the normal play convention.
///
/// Implementations must guarantee that `options` eventually reaches a
/// terminal position (no infinite play) and that `is_terminal` is true
/// exactly when `options` is empty.
pub trait Position: Clone + PartialEq {
    /// True when no move is available.
    fn is_terminal(&self) -> bool;

    /// All positions reachable in one move, in a deterministic order.
    fn options(&self) -> Vec<Self>;

    /// Independent components of this position, in a deterministic order.
    ///
    /// A position that does not decompose returns itself as the only entry,
    /// already in its normal form; a position with no playable part at all
    /// may return an empty list. Splitting a returned component again must
    /// return that component alone.
    fn split(&self) -> Vec<Self>;

    /// Stable byte key identifying this position up to game symmetry.
    ///
    /// Equal keys imply equal nimbers. Each game prepends its own tag byte
    /// so keys from different games never collide in a shared store.
    fn canonical_key(&self) -> Vec<u8>;

    /// Game-specific size measure (empty cells, matches, ...), used by
    /// ordering heuristics. Moves must strictly decrease it.
    fn size(&self) -> usize;
}

/// A position plus an extra nim-heap `*n`, representing the sum `P + *n`.
///
/// `(P, *0)` behaves exactly like `P` alone.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Couple<P> {
    pub position: P,
    pub nimber_part: Nimber,
}

impl<P: Position> Couple<P> {
    pub fn new(position: P, nimber_part: Nimber) -> Self {
        Couple { position, nimber_part }
    }

    /// `P` alone, written as the couple `(P, *0)`.
    pub fn bare(position: P) -> Self {
        Couple { position, nimber_part: Nimber::ZERO }
    }

    /// No move left in either part.
    pub fn is_terminal(&self) -> bool {
        self.nimber_part == Nimber::ZERO && self.position.is_terminal()
    }

    /// Moves in the position part keep `*n`; moves in the nim heap replace
    /// `*n` by any smaller `*i`. Position-part options come first.
    pub fn options(&self) -> Vec<Couple<P>> {
        let mut opts: Vec<Couple<P>> = self
            .position
            .options()
            .into_iter()
            .map(|p| Couple::new(p, self.nimber_part))
            .collect();
        for i in 0..self.nimber_part.value() {
            opts.push(Couple::new(self.position.clone(), Nimber(i)));
        }
        opts
    }
}

/// Explicit sum of independent positions of one game.
///
/// The component list keeps its order, so a move changes exactly one index
/// and leaves the others untouched; this is what lets a solution tree over a
/// sum be read back component by component.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SumPosition<P> {
    components: Vec<P>,
}

impl<P: Position> SumPosition<P> {
    pub fn new(components: Vec<P>) -> Self {
        SumPosition { components }
    }

    pub fn components(&self) -> &[P] {
        &self.components
    }
}

impl<P: Position> Position for SumPosition<P> {
    fn is_terminal(&self) -> bool {
        self.components.iter().all(Position::is_terminal)
    }

    fn options(&self) -> Vec<Self> {
        let mut opts = Vec::new();
        for (i, component) in self.components.iter().enumerate() {
            for option in component.options() {
                let mut next = self.components.clone();
                next[i] = option;
                opts.push(SumPosition::new(next));
            }
        }
        opts
    }

    fn split(&self) -> Vec<Self> {
        self.components
            .iter()
            .flat_map(Position::split)
            .map(|c| SumPosition::new(vec![c]))
            .collect()
    }

    fn canonical_key(&self) -> Vec<u8> {
        let mut keys: Vec<Vec<u8>> = self.components.iter().map(Position::canonical_key).collect();
        keys.sort();
        // A one-part sum keys identically to its part, so store entries are
        // shared between wrapped and bare searches of the same position.
        if keys.len() == 1 {
            return keys.pop().unwrap();
        }
        let mut key = vec![b'+'];
        for part in keys {
            let len = u16::try_from(part.len()).expect("component key fits u16");
            key.extend_from_slice(&len.to_le_bytes());
            key.extend_from_slice(&part);
        }
        key
    }

    fn size(&self) -> usize {
        self.components.iter().map(Position::size).sum()
    }
}
