//! Cram: players place dominoes on the empty cells of a rectangular board.
//!
//! The board is at most 64 cells so the empty-cell set fits one `u64`, bit
//! `r * cols + c` for cell `(r, c)`. A move clears two orthogonally adjacent
//! empty bits. Disconnected empty regions play independently, which is what
//! the solver's sum decomposition exploits.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::Position;
use crate::nimber::Outcome;

/// Largest supported board, chosen so the empty-cell set fits one `u64`.
pub const MAX_CELLS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CramBoard {
    rows: u8,
    cols: u8,
    /// Set bits are empty cells, row-major.
    cells: u64,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ParseBoardError {
    #[error("bad board spec {text:?}: expected ROWSxCOLS with both at least 1, or a grid of '.' and '#'")]
    BadDimensions { text: String },
    #[error("board {rows}x{cols} exceeds the supported {MAX_CELLS} cells")]
    TooLarge { rows: usize, cols: usize },
    #[error("line {line}: unexpected character {ch:?}, expected '.' or '#'")]
    BadCharacter { line: usize, ch: char },
    #[error("line {line}: row of width {len}, expected {expected} like the first row")]
    RaggedRow { line: usize, len: usize, expected: usize },
    #[error("empty board spec")]
    Empty,
}

fn shl(x: u64, s: u32) -> u64 {
    if s >= 64 {
        0
    } else {
        x << s
    }
}

fn shr(x: u64, s: u32) -> u64 {
    if s >= 64 {
        0
    } else {
        x >> s
    }
}

impl CramBoard {
    /// Fully empty `rows x cols` board.
    pub fn empty_rect(rows: usize, cols: usize) -> Result<Self, ParseBoardError> {
        let blank = Self::from_bits(rows, cols, 0)?;
        let n = (rows * cols) as u32;
        let cells = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(CramBoard { cells, ..blank })
    }

    /// Board with an explicit empty-cell set. Bits outside the board must be 0.
    pub fn from_bits(rows: usize, cols: usize, cells: u64) -> Result<Self, ParseBoardError> {
        if rows == 0 || cols == 0 {
            return Err(ParseBoardError::BadDimensions {
                text: format!("{rows}x{cols}"),
            });
        }
        if rows.checked_mul(cols).map_or(true, |n| n > MAX_CELLS) {
            return Err(ParseBoardError::TooLarge { rows, cols });
        }
        let n = (rows * cols) as u32;
        assert_eq!(shr(cells, n), 0, "empty-cell bits outside the {rows}x{cols} board");
        Ok(CramBoard {
            rows: rows as u8,
            cols: cols as u8,
            cells,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows as usize
    }

    pub fn cols(&self) -> usize {
        self.cols as usize
    }

    pub fn empty_cells(&self) -> u32 {
        self.cells.count_ones()
    }

    pub fn bits(&self) -> u64 {
        self.cells
    }

    pub fn is_cell_empty(&self, r: usize, c: usize) -> bool {
        self.cells >> (r * self.cols() + c) & 1 == 1
    }

    fn row_mask(&self) -> u64 {
        if self.cols == 64 {
            u64::MAX
        } else {
            (1u64 << self.cols) - 1
        }
    }

    /// Bits of the leftmost column.
    fn left_mask(&self) -> u64 {
        let mut m = 0u64;
        for r in 0..self.rows as u32 {
            m |= shl(1, r * self.cols as u32);
        }
        m
    }

    /// Bit positions where a horizontal domino can start: this cell and its
    /// right neighbour are both empty.
    fn horizontal_starts(&self) -> u64 {
        let not_last_col = !(self.left_mask() << (self.cols - 1));
        self.cells & shr(self.cells, 1) & not_last_col
    }

    /// Bit positions where a vertical domino can start: this cell and the one
    /// below are both empty.
    fn vertical_starts(&self) -> u64 {
        self.cells & shr(self.cells, self.cols as u32)
    }

    /// All successor boards, horizontal placements first, each in bit order.
    pub fn moves(&self) -> Vec<CramBoard> {
        let mut out = Vec::new();
        let mut h = self.horizontal_starts();
        while h != 0 {
            let i = h.trailing_zeros();
            h &= h - 1;
            out.push(CramBoard {
                cells: self.cells & !(0b11 << i),
                ..*self
            });
        }
        let mut v = self.vertical_starts();
        while v != 0 {
            let i = v.trailing_zeros();
            v &= v - 1;
            out.push(CramBoard {
                cells: self.cells & !(shl(1, i) | shl(1, i + self.cols as u32)),
                ..*self
            });
        }
        out
    }

    /// Empty cells orthogonally adjacent to `set`.
    fn neighbors(&self, set: u64) -> u64 {
        let cols = self.cols as u32;
        let left_edge = self.left_mask();
        let right_edge = left_edge << (self.cols - 1);
        let sideways = shr(set & !left_edge, 1) | shl(set & !right_edge, 1);
        (sideways | shr(set, cols) | shl(set, cols)) & self.cells
    }

    /// Connected groups of empty cells that still admit a move, cropped to
    /// their bounding boxes, in normal form, sorted by canonical key.
    ///
    /// Single isolated cells can never be played on and are dropped.
    pub fn components(&self) -> Vec<CramBoard> {
        let mut comps = Vec::new();
        let mut remaining = self.cells;
        while remaining != 0 {
            let mut comp = remaining & remaining.wrapping_neg();
            loop {
                let grown = comp | (self.neighbors(comp) & remaining);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            remaining &= !comp;
            if comp.count_ones() >= 2 {
                comps.push(self.cropped(comp).canonical_form());
            }
        }
        comps.sort_by_key(CramBoard::canonical_key);
        comps
    }

    /// Sub-board holding only `mask`, cropped to its bounding box.
    fn cropped(&self, mask: u64) -> CramBoard {
        debug_assert_ne!(mask, 0);
        let cols = self.cols as u32;
        let (mut min_r, mut max_r, mut min_c, mut max_c) = (u32::MAX, 0, u32::MAX, 0);
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            let (r, c) = (i / cols, i % cols);
            min_r = min_r.min(r);
            max_r = max_r.max(r);
            min_c = min_c.min(c);
            max_c = max_c.max(c);
        }
        let (new_rows, new_cols) = (max_r - min_r + 1, max_c - min_c + 1);
        let mut cells = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            let (r, c) = (i / cols - min_r, i % cols - min_c);
            cells |= shl(1, r * new_cols + c);
        }
        CramBoard {
            rows: new_rows as u8,
            cols: new_cols as u8,
            cells,
        }
    }

    /// The board and its mirror, rotation, and transposition images, as
    /// `(rows, cols, cells)` triples.
    fn symmetry_images(&self) -> [(u8, u8, u64); 8] {
        let rows = self.rows as u32;
        let cols = self.cols as u32;
        let row_mask = self.row_mask();
        let (mut flip_c, mut flip_r, mut rot) = (0u64, 0u64, 0u64);
        for r in 0..rows {
            let row = shr(self.cells, r * cols) & row_mask;
            let rev = row.reverse_bits() >> (64 - cols);
            flip_c |= shl(rev, r * cols);
            flip_r |= shl(row, (rows - 1 - r) * cols);
            rot |= shl(rev, (rows - 1 - r) * cols);
        }
        let mut tr = 0u64;
        let mut bits = self.cells;
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            tr |= shl(1, (i % cols) * rows + i / cols);
        }
        let t_row_mask = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
        let (mut t_flip_c, mut t_flip_r, mut t_rot) = (0u64, 0u64, 0u64);
        for r in 0..cols {
            let row = shr(tr, r * rows) & t_row_mask;
            let rev = row.reverse_bits() >> (64 - rows);
            t_flip_c |= shl(rev, r * rows);
            t_flip_r |= shl(row, (cols - 1 - r) * rows);
            t_rot |= shl(rev, (cols - 1 - r) * rows);
        }
        let (h, w) = (self.rows, self.cols);
        [
            (h, w, self.cells),
            (h, w, flip_c),
            (h, w, flip_r),
            (h, w, rot),
            (w, h, tr),
            (w, h, t_flip_c),
            (w, h, t_flip_r),
            (w, h, t_rot),
        ]
    }

    fn least_image(&self) -> (u8, u8, u64) {
        *self
            .symmetry_images()
            .iter()
            .min_by_key(|&&(r, c, cells)| (r, c, cells.swap_bytes()))
            .unwrap()
    }

    /// The symmetry image whose serialization is smallest. Two boards equal
    /// up to mirror, rotation, or transposition normalize to the same form.
    pub fn canonical_form(&self) -> CramBoard {
        let (rows, cols, cells) = self.least_image();
        CramBoard { rows, cols, cells }
    }

    /// Serialization `(rows, cols, row-major cell bits)` of the least
    /// symmetry image, tagged so it cannot collide with other games' keys.
    pub fn key(&self) -> Vec<u8> {
        let (rows, cols, cells) = self.least_image();
        let n_bytes = (rows as usize * cols as usize + 7) / 8;
        let mut key = Vec::with_capacity(3 + n_bytes);
        key.push(b'C');
        key.push(rows);
        key.push(cols);
        key.extend_from_slice(&cells.to_le_bytes()[..n_bytes]);
        key
    }
}

/// Outcome of the fully empty `rows x cols` rectangle when a pairing
/// argument decides it: the second player mirrors on even x even boards, the
/// first player opens in the middle and mirrors on even x odd boards.
/// Odd x odd boards have no such argument and return `None`.
pub fn rectangle_shortcut(rows: usize, cols: usize) -> Option<Outcome> {
    match (rows % 2 == 0, cols % 2 == 0) {
        (true, true) => Some(Outcome::Loss),
        (true, false) | (false, true) => Some(Outcome::Win),
        (false, false) => None,
    }
}

impl Position for CramBoard {
    fn is_terminal(&self) -> bool {
        self.horizontal_starts() == 0 && self.vertical_starts() == 0
    }

    fn options(&self) -> Vec<Self> {
        self.moves()
    }

    fn split(&self) -> Vec<Self> {
        self.components()
    }

    fn canonical_key(&self) -> Vec<u8> {
        self.key()
    }

    fn size(&self) -> usize {
        self.empty_cells() as usize
    }
}

impl FromStr for CramBoard {
    type Err = ParseBoardError;

    /// Either `ROWSxCOLS` for a fully empty rectangle (`"3x4"`) or an ASCII
    /// grid with one row per line, `.` empty and `#` filled. `/` separates
    /// rows too, so grids fit on one line: `"..#/.#."`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim_matches(|c: char| c == '\n' || c == '\r' || c == ' ' || c == '\t');
        if trimmed.is_empty() {
            return Err(ParseBoardError::Empty);
        }
        if !trimmed.contains(['.', '#', '\n']) {
            let (r, c) = trimmed
                .split_once('x')
                .ok_or_else(|| ParseBoardError::BadDimensions { text: trimmed.to_string() })?;
            let rows: usize = r.trim().parse().map_err(|_| ParseBoardError::BadDimensions {
                text: trimmed.to_string(),
            })?;
            let cols: usize = c.trim().parse().map_err(|_| ParseBoardError::BadDimensions {
                text: trimmed.to_string(),
            })?;
            if rows == 0 || cols == 0 {
                return Err(ParseBoardError::BadDimensions { text: trimmed.to_string() });
            }
            return CramBoard::empty_rect(rows, cols);
        }
        let mut cells = 0u64;
        let mut cols = 0usize;
        let mut rows = 0usize;
        let grid = trimmed.replace('/', "\n");
        for (idx, line) in grid.lines().enumerate() {
            let line = line.trim();
            if idx == 0 {
                cols = line.chars().count();
                if cols == 0 {
                    return Err(ParseBoardError::Empty);
                }
            } else if line.chars().count() != cols {
                return Err(ParseBoardError::RaggedRow {
                    line: idx + 1,
                    len: line.chars().count(),
                    expected: cols,
                });
            }
            rows = idx + 1;
            if rows * cols > MAX_CELLS {
                return Err(ParseBoardError::TooLarge { rows, cols });
            }
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '.' => cells |= shl(1, (idx * cols + j) as u32),
                    '#' => {}
                    other => {
                        return Err(ParseBoardError::BadCharacter { line: idx + 1, ch: other })
                    }
                }
            }
        }
        CramBoard::from_bits(rows, cols, cells)
    }
}

impl fmt::Display for CramBoard {
    /// Writes the grid back in the same '.'/'#' alphabet the parser reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows() {
            if r > 0 {
                writeln!(f)?;
            }
            for c in 0..self.cols() {
                write!(f, "{}", if self.is_cell_empty(r, c) { '.' } else { '#' })?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nimber::Outcome;
    use proptest::prelude::*;

    fn board(spec: &str) -> CramBoard {
        spec.parse().expect("valid board spec")
    }

    #[test]
    fn parse_rect_and_grid() {
        let rect = board("3x4");
        assert_eq!((rect.rows(), rect.cols()), (3, 4));
        assert_eq!(rect.empty_cells(), 12);
        let grid = board(".#\n..");
        assert_eq!((grid.rows(), grid.cols()), (2, 2));
        assert_eq!(grid.empty_cells(), 3);
        assert!(!grid.is_cell_empty(0, 1));
        assert_eq!(board(".#/.."), grid);
    }

    #[test]
    fn parse_rejects_bad_specs() {
        assert!(matches!("0x3".parse::<CramBoard>(), Err(ParseBoardError::BadDimensions { .. })));
        assert!(matches!("5x13".parse::<CramBoard>(), Err(ParseBoardError::TooLarge { .. })));
        assert!(matches!("x4".parse::<CramBoard>(), Err(ParseBoardError::BadDimensions { .. })));
        assert!(matches!("".parse::<CramBoard>(), Err(ParseBoardError::Empty)));
        let ragged = "...\n..".parse::<CramBoard>();
        assert_eq!(ragged, Err(ParseBoardError::RaggedRow { line: 2, len: 2, expected: 3 }));
        let bad = "..\n.x".parse::<CramBoard>();
        assert_eq!(bad, Err(ParseBoardError::BadCharacter { line: 2, ch: 'x' }));
    }

    #[test]
    fn display_round_trips() {
        for spec in ["3x4", ".#.\n...", "#.\n.#"] {
            let b = board(spec);
            assert_eq!(board(&b.to_string()), b);
        }
    }

    #[test]
    fn move_counts_on_full_rectangles() {
        assert_eq!(board("2x2").moves().len(), 4);
        assert_eq!(board("3x3").moves().len(), 12);
        // R(C-1) horizontal + (R-1)C vertical placements
        assert_eq!(board("4x6").moves().len(), 4 * 5 + 3 * 6);
    }

    #[test]
    fn moves_clear_adjacent_pairs() {
        for succ in board("2x3").moves() {
            assert_eq!(succ.empty_cells(), 4);
        }
        let strip = board("..");
        let after = strip.moves();
        assert_eq!(after.len(), 1);
        assert!(after[0].is_terminal());
        assert_eq!(after[0].empty_cells(), 0);
    }

    #[test]
    fn terminal_when_no_adjacent_pair() {
        assert!(board("#").is_terminal());
        assert!(board(".#.").is_terminal());
        assert!(board("#.\n.#").is_terminal());
        assert!(!board("..").is_terminal());
    }

    #[test]
    fn split_finds_strips() {
        let comps = board("..#..").components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], board(".."));
        assert_eq!(comps[1], board(".."));
    }

    #[test]
    fn split_drops_isolated_cells() {
        assert!(board(".#.").components().is_empty());
        // an isolated cell next to a live region disappears, the region stays
        let comps = board("..#.").components();
        assert_eq!(comps, vec![board("..")]);
    }

    #[test]
    fn split_of_connected_board_is_identity() {
        let full = board("3x4");
        assert_eq!(full.components(), vec![full]);
    }

    #[test]
    fn split_normalizes_orientation() {
        // a 4x3 rectangle's one component comes back in 3x4 form
        let comps = board("4x3").components();
        assert_eq!(comps, vec![board("3x4")]);
    }

    #[test]
    fn split_is_idempotent() {
        for spec in ["..#..", "3x4", ".#.\n...", "..\n#.\n..", "4x3"] {
            for comp in board(spec).components() {
                assert_eq!(comp.components(), vec![comp]);
            }
        }
    }

    #[test]
    fn split_is_sorted_by_key() {
        let comps = board("...#..").components();
        assert_eq!(comps.len(), 2);
        assert!(comps[0].key() <= comps[1].key());
    }

    #[test]
    fn canonical_key_merges_transposed_boards() {
        assert_eq!(board("2x3").key(), board("3x2").key());
        assert_eq!(board("2x3").canonical_form(), board("3x2").canonical_form());
        assert_ne!(board("2x3").key(), board("2x2").key());
    }

    #[test]
    fn canonical_key_merges_mirror_images() {
        let l_shape = board("..\n.#");
        let mirrored = board("..\n#.");
        let flipped = board(".#\n..");
        assert_eq!(l_shape.key(), mirrored.key());
        assert_eq!(l_shape.key(), flipped.key());
    }

    #[test]
    fn rectangle_shortcut_by_parity() {
        assert_eq!(rectangle_shortcut(2, 2), Some(Outcome::Loss));
        assert_eq!(rectangle_shortcut(4, 6), Some(Outcome::Loss));
        assert_eq!(rectangle_shortcut(2, 3), Some(Outcome::Win));
        assert_eq!(rectangle_shortcut(3, 6), Some(Outcome::Win));
        assert_eq!(rectangle_shortcut(3, 3), None);
        assert_eq!(rectangle_shortcut(5, 7), None);
    }

    fn arb_board() -> impl Strategy<Value = CramBoard> {
        (1usize..=4, 1usize..=5, any::<u64>()).prop_map(|(rows, cols, raw)| {
            let n = rows * cols;
            let mask = if n == 64 { u64::MAX } else { (1 << n) - 1 };
            CramBoard::from_bits(rows, cols, raw & mask).unwrap()
        })
    }

    proptest! {
        #[test]
        fn full_rect_move_count_formula(rows in 1usize..=6, cols in 1usize..=8) {
            prop_assume!(rows * cols <= MAX_CELLS);
            let b = CramBoard::empty_rect(rows, cols).unwrap();
            prop_assert_eq!(b.moves().len(), rows * (cols - 1) + (rows - 1) * cols);
        }

        #[test]
        fn moves_remove_exactly_two_cells(b in arb_board()) {
            for succ in b.moves() {
                prop_assert_eq!(succ.empty_cells(), b.empty_cells() - 2);
            }
        }

        #[test]
        fn key_is_invariant_under_symmetry(b in arb_board()) {
            for &(rows, cols, cells) in b.symmetry_images().iter() {
                let image = CramBoard { rows, cols, cells };
                prop_assert_eq!(image.key(), b.key());
            }
        }

        #[test]
        fn components_preserve_playable_cells(b in arb_board()) {
            let comp_cells: u32 = b.components().iter().map(CramBoard::empty_cells).sum();
            let isolated = (0..b.rows()).map(|r| (0..b.cols()).filter(|&c| {
                b.is_cell_empty(r, c)
                    && !(r > 0 && b.is_cell_empty(r - 1, c))
                    && !(r + 1 < b.rows() && b.is_cell_empty(r + 1, c))
                    && !(c > 0 && b.is_cell_empty(r, c - 1))
                    && !(c + 1 < b.cols() && b.is_cell_empty(r, c + 1))
            }).count()).sum::<usize>() as u32;
            prop_assert_eq!(comp_cells + isolated, b.empty_cells());
        }
    }
}
