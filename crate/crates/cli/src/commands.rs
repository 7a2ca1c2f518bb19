//! Command implementations behind the four verbs.

use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;
use std::time::Instant;

use grundy::{
    Couple, CramBoard, Knowledge, NimPosition, Outcome, Position, SearchError, Solver, SumPosition,
};
use thiserror::Error;

use crate::args::{Cli, Command, CompareArgs, Game, PositionArgs, SearchArgs, TableArgs};
use crate::report::{CompareReport, RunReport, TableCell, TableReport};

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("search budget exhausted after {expanded} couple expansions")]
    Budget { expanded: u64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget { .. } => 3,
        }
    }

    fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Outcome(args) => cmd_position(&args, Mode::Outcome),
        Command::Nimber(args) => cmd_position(&args, Mode::Nimber),
        Command::Table(args) => cmd_table(&args),
        Command::Compare(args) => cmd_compare(&args),
    }
}

#[derive(Clone, Copy)]
enum Mode {
    Outcome,
    Nimber,
}

fn cmd_position(args: &PositionArgs, mode: Mode) -> Result<(), CliError> {
    match args.game {
        Game::Nim => {
            if args.board.is_some() {
                return Err(CliError::input("--board is for cram; nim positions use --heaps"));
            }
            let spec = args
                .heaps
                .as_deref()
                .ok_or_else(|| CliError::input("nim needs --heaps, e.g. --heaps 7,5,4,2"))?;
            let position =
                spec.parse::<NimPosition>().map_err(|e| CliError::input(e.to_string()))?;
            solve_and_report(args.game.tag(), one_line(spec), position, &args.search, mode)
        }
        Game::Cram => {
            if args.heaps.is_some() {
                return Err(CliError::input("--heaps is for nim; cram positions use --board"));
            }
            let spec = args
                .board
                .as_deref()
                .ok_or_else(|| CliError::input("cram needs --board, e.g. --board 3x6"))?;
            let board = spec.parse::<CramBoard>().map_err(|e| CliError::input(e.to_string()))?;
            solve_and_report(args.game.tag(), one_line(spec), board, &args.search, mode)
        }
    }
}

fn solve_and_report<P: Position>(
    game: &str,
    position_spec: String,
    position: P,
    search: &SearchArgs,
    mode: Mode,
) -> Result<(), CliError> {
    let mut solver = Solver::new().with_budget(search.budget).with_strategy(search.order);
    let started = Instant::now();
    let searched: Result<(String, Option<u32>), SearchError> = match mode {
        Mode::Outcome => {
            solver.solve_couple(&Couple::bare(position)).map(|o| (o.to_string(), None))
        }
        Mode::Nimber => solver.nimber_of(&position).map(|n| (n.to_string(), Some(n.value()))),
    };
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let (result, nimber, aborted) = match searched {
        Ok((result, nimber)) => (result, nimber, None),
        Err(SearchError::BudgetExhausted { expanded }) => ("aborted".into(), None, Some(expanded)),
    };
    let report = RunReport {
        game: game.into(),
        position: position_spec,
        result,
        nimber,
        nodes_expanded: solver.stats().couples_expanded,
        tt_losing_couples: solver.stats().losing_couples_stored,
        elapsed_ms,
        strategy: search.order.to_string(),
    };
    println!("{}", report.render(search.format));
    match aborted {
        None => Ok(()),
        Some(expanded) => Err(CliError::Budget { expanded }),
    }
}

fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let (a, b) = args.sum.split_once('+').ok_or_else(|| {
        CliError::input("sum spec wants two positions joined by '+', e.g. \"3x3+3x3\"")
    })?;
    match args.game {
        Game::Nim => {
            let a = a.parse::<NimPosition>().map_err(|e| CliError::input(e.to_string()))?;
            let b = b.parse::<NimPosition>().map_err(|e| CliError::input(e.to_string()))?;
            compare_and_report(args.game.tag(), one_line(&args.sum), a, b, &args.search)
        }
        Game::Cram => {
            let a = a.parse::<CramBoard>().map_err(|e| CliError::input(e.to_string()))?;
            let b = b.parse::<CramBoard>().map_err(|e| CliError::input(e.to_string()))?;
            compare_and_report(args.game.tag(), one_line(&args.sum), a, b, &args.search)
        }
    }
}

fn compare_and_report<P: Position>(
    game: &str,
    position_spec: String,
    a: P,
    b: P,
    search: &SearchArgs,
) -> Result<(), CliError> {
    let sum = SumPosition::new(vec![a, b]);
    let started = Instant::now();
    let mut split = Solver::new().with_budget(search.budget).with_strategy(search.order);
    let split_outcome = split.solve_couple(&Couple::bare(sum.clone()));
    let mut elementary = Solver::new().with_budget(search.budget).with_strategy(search.order);
    let elementary_outcome = elementary.elementary_solve(&sum);
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let (s, e): (Outcome, Outcome) = match (split_outcome, elementary_outcome) {
        (Ok(s), Ok(e)) => (s, e),
        (Err(SearchError::BudgetExhausted { expanded }), _)
        | (_, Err(SearchError::BudgetExhausted { expanded })) => {
            return Err(CliError::Budget { expanded })
        }
    };
    assert_eq!(s, e, "split and elementary searches disagree on {position_spec}");
    let report = CompareReport {
        game: game.into(),
        position: position_spec,
        result: s.to_string(),
        split_nodes_expanded: split.stats().couples_expanded,
        elementary_nodes_expanded: elementary.stats().couples_expanded,
        elapsed_ms,
        strategy: search.order.to_string(),
    };
    println!("{}", report.render(search.format));
    Ok(())
}

fn cmd_table(args: &TableArgs) -> Result<(), CliError> {
    if args.game == Game::Nim {
        return Err(CliError::input(
            "tables are defined for cram rectangles; nim nimbers have the closed form nim_sum",
        ));
    }
    let rows = parse_range(&args.rows, "--rows")?;
    let cols = parse_range(&args.cols, "--cols")?;
    if rows.end() * cols.end() > 64 {
        return Err(CliError::input(format!(
            "largest cell {}x{} exceeds the 64-cell board cap",
            rows.end(),
            cols.end()
        )));
    }
    let cells: Vec<(usize, usize)> =
        rows.flat_map(|r| cols.clone().map(move |c| (r, c))).collect();
    let next = AtomicUsize::new(0);
    let mut solved: Vec<TableCell> = Vec::with_capacity(cells.len());
    thread::scope(|scope| {
        let workers: Vec<_> = (0..args.jobs.max(1))
            .map(|_| {
                scope.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(&(r, c)) = cells.get(i) else { break };
                        mine.push(solve_cell(r, c, &args.search));
                    }
                    mine
                })
            })
            .collect();
        for worker in workers {
            solved.extend(worker.join().expect("table worker does not panic"));
        }
    });
    solved.sort_by_key(|cell| (cell.rows, cell.cols));
    let report = TableReport {
        game: args.game.tag().into(),
        strategy: args.search.order.to_string(),
        cells: solved,
    };
    println!("{}", report.render(args.search.format));
    Ok(())
}

fn solve_cell(rows: usize, cols: usize, search: &SearchArgs) -> TableCell {
    let board = CramBoard::empty_rect(rows, cols).expect("cell size checked against the cap");
    let mut solver = Solver::new().with_budget(search.budget).with_strategy(search.order);
    let started = Instant::now();
    let solved = solver.nimber_of(&board);
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let (result, nimber) = match solved {
        Ok(n) => (n.to_string(), Some(n.value())),
        // keep what the interrupted ladder already proved: trials through
        // *k refuted means the nimber is above *k
        Err(SearchError::BudgetExhausted { .. }) => {
            match solver.table().knowledge(&board.canonical_key()) {
                Some(Knowledge::ExcludedBelow(b)) if b.value() >= 1 => {
                    (format!(">*{}", b.value() - 1), None)
                }
                _ => ("?".to_string(), None),
            }
        }
    };
    TableCell {
        rows,
        cols,
        result,
        nimber,
        nodes_expanded: solver.stats().couples_expanded,
        elapsed_ms,
    }
}

fn parse_range(spec: &str, flag: &str) -> Result<RangeInclusive<usize>, CliError> {
    let (lo, hi) = match spec.split_once("..") {
        Some((lo, hi)) => (lo, hi),
        None => (spec, spec),
    };
    let parse = |s: &str| {
        s.trim().parse::<usize>().map_err(|_| {
            CliError::input(format!(
                "{flag} wants a count like \"3\" or an inclusive range like \"3..9\", got {spec:?}"
            ))
        })
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo == 0 || hi < lo {
        return Err(CliError::input(format!("{flag} range {spec:?} is empty or starts at zero")));
    }
    Ok(lo..=hi)
}

/// Collapses a possibly multi-line board spec to the one-line '/' form so
/// it fits a report field and still parses back.
fn one_line(spec: &str) -> String {
    spec.trim()
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty())
        .collect::<Vec<_>>()
        .join("/")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("3", "--rows").unwrap(), 3..=3);
        assert_eq!(parse_range("3..9", "--cols").unwrap(), 3..=9);
        assert!(parse_range("0..2", "--rows").is_err());
        assert!(parse_range("5..2", "--rows").is_err());
        assert!(parse_range("a..b", "--rows").is_err());
    }

    #[test]
    fn board_specs_flatten_to_one_line() {
        assert_eq!(one_line(" 3x4 "), "3x4");
        assert_eq!(one_line("..#\n.#.\n"), "..#/.#.");
    }
}
