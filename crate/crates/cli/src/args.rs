//! Command line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};
use grundy::{OrderingStrategy, DEFAULT_BUDGET};

use crate::report::Format;

#[derive(Parser, Debug)]
#[command(
    name = "grundy",
    version,
    about = "Solve impartial game positions: outcomes, nimbers, tables, search comparisons"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Win or loss of a single position under perfect play
    Outcome(PositionArgs),
    /// Exact nimber (Grundy value) of a single position
    Nimber(PositionArgs),
    /// Grid of nimbers for empty rectangles over row and column ranges
    Table(TableArgs),
    /// Cost of solving a two-part sum, split search against the elementary one
    Compare(CompareArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Game {
    Nim,
    Cram,
}

impl Game {
    pub fn tag(self) -> &'static str {
        match self {
            Game::Nim => "nim",
            Game::Cram => "cram",
        }
    }
}

#[derive(Args, Debug)]
pub struct PositionArgs {
    /// Which game the position belongs to
    #[arg(long, value_enum)]
    pub game: Game,
    /// Nim heaps, comma separated: "7,5,4,2" ("-" for the empty position)
    #[arg(long)]
    pub heaps: Option<String>,
    /// Cram board: "ROWSxCOLS" for an empty rectangle, or a grid of '.' and
    /// '#' with rows split by newlines or '/'
    #[arg(long)]
    pub board: Option<String>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Which game to tabulate (only cram has rectangle tables)
    #[arg(long, value_enum)]
    pub game: Game,
    /// Row counts: "3" or an inclusive range "3..6"
    #[arg(long)]
    pub rows: String,
    /// Column counts: "5" or an inclusive range "3..9"
    #[arg(long)]
    pub cols: String,
    /// Worker threads; cells are independent, each worker owns its store
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Which game both summands belong to
    #[arg(long, value_enum)]
    pub game: Game,
    /// Two position specs joined by '+', e.g. "3x3+3x3"
    #[arg(long)]
    pub sum: String,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Abort after this many couple expansions
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Option ordering: natural, fewest-moves, or smallest-component
    #[arg(long, default_value = "smallest-component")]
    pub order: OrderingStrategy,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}
