//! Acceptance suite: the gating checks for the whole engine, run in one
//! test so every check reports a line even when an earlier one fails.
//!
//! Each check prints `acceptance <n> <name>: pass (<time>)` or a FAIL line
//! with the reason; the test fails at the end if any check failed. The
//! slow tiers (3x10..3x12, 5x6, 4x7, 5x7) are separate ignored tests.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use grundy::{
    extract_component_nimber, nim_sum, nim_sum_fold, outcome_from_nimber, Couple, CramBoard,
    NimPosition, Nimber, NimberRelation, Oracle, Outcome, OrderingStrategy, Position, Solver,
    SumPosition,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Suite {
    failures: Vec<String>,
}

impl Suite {
    fn run(
        &mut self,
        name: &str,
        limit: Option<Duration>,
        check: impl FnOnce() -> Result<(), String>,
    ) {
        let started = Instant::now();
        let mut result = check();
        let elapsed = started.elapsed();
        if result.is_ok() {
            if let Some(limit) = limit {
                if elapsed > limit {
                    result = Err(format!("took {elapsed:.1?}, budget {limit:.0?}"));
                }
            }
        }
        match result {
            Ok(()) => println!("acceptance {name}: pass ({elapsed:.1?})"),
            Err(why) => {
                println!("acceptance {name}: FAIL ({why})");
                self.failures.push(format!("{name}: {why}"));
            }
        }
    }
}

fn board(spec: &str) -> CramBoard {
    spec.parse().expect("test board parses")
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// Every board reachable from `full` by some sequence of moves, the full
/// board included, deduplicated by raw cell bits.
fn reachable(full: CramBoard) -> Vec<CramBoard> {
    let mut seen = HashSet::new();
    let mut queue = vec![full];
    let mut out = Vec::new();
    while let Some(b) = queue.pop() {
        if !seen.insert(b.bits()) {
            continue;
        }
        queue.extend(b.options());
        out.push(b);
    }
    out
}

#[test]
fn acceptance() {
    let mut suite = Suite { failures: Vec::new() };

    suite.run("1 nim-sum spot checks", None, || {
        let a = nim_sum(Nimber(9), Nimber(12));
        if a != Nimber(5) {
            return Err(format!("nim_sum(9, 12) = {a}, want *5"));
        }
        let b = nim_sum_fold([7, 5, 4, 2].map(Nimber));
        if b != Nimber(4) {
            return Err(format!("fold of 7,5,4,2 = {b}, want *4"));
        }
        Ok(())
    });

    suite.run("2 bouton equivalence on random nim", secs(10), || {
        let mut rng = StdRng::seed_from_u64(0xB0);
        let mut solver = Solver::new();
        let mut oracle = Oracle::new();
        for _ in 0..1000 {
            let count = rng.gen_range(0..=4);
            let position = NimPosition::new((0..count).map(|_| rng.gen_range(1..=6)));
            let expected = position.bouton_outcome();
            let searched = solver.elementary_solve(&position).unwrap();
            if searched != expected {
                return Err(format!("{position}: searched {searched}, bouton {expected}"));
            }
            if oracle.nimber(&position) != position.bouton_nimber() {
                return Err(format!("{position}: oracle and bouton nimbers differ"));
            }
        }
        Ok(())
    });

    suite.run("3 cram 3xn nimbers, n=3..9", secs(300), || {
        let mut solver = Solver::new();
        for (n, want) in (3..=9).zip([0, 1, 1, 4, 1, 3, 1]) {
            let got = solver.nimber_of(&board(&format!("3x{n}"))).unwrap();
            if got != Nimber(want) {
                return Err(format!("3x{n} = {got}, want *{want}"));
            }
        }
        Ok(())
    });

    suite.run("4 cram small rectangles", None, || {
        let mut solver = Solver::new();
        let outcome = solver.solve_couple(&Couple::bare(board("4x4"))).unwrap();
        if outcome != Outcome::Loss {
            return Err(format!("4x4 outcome {outcome}, want L"));
        }
        let outcome = solver.solve_couple(&Couple::bare(board("4x6"))).unwrap();
        if outcome != Outcome::Loss {
            return Err(format!("4x6 outcome {outcome}, want L"));
        }
        for (spec, want) in [("4x5", 2), ("5x5", 0)] {
            let got = solver.nimber_of(&board(spec)).unwrap();
            if got != Nimber(want) {
                return Err(format!("{spec} = {got}, want *{want}"));
            }
        }
        Ok(())
    });

    // criteria 5 and 8 walk the same boards: every sub-position of the full
    // 3x4 and 2x6 dags, nimber checked against the oracle, and the store
    // checked right after each ladder for winning witnesses below the nimber
    let mut witness_gaps: Vec<String> = Vec::new();
    suite.run("5 solver vs oracle over full dags", secs(120), || {
        let mut solver = Solver::new();
        let mut oracle = Oracle::new();
        let mut checked = 0usize;
        for full in [board("3x4"), board("2x6")] {
            for position in reachable(full) {
                let got = solver.nimber_of(&position).unwrap();
                let want = oracle.nimber(&position);
                if got != want {
                    return Err(format!("a {}-cell board: solver {got}, oracle {want}", position.size()));
                }
                checked += 1;
                let knowledge = solver.table().knowledge(&position.canonical_key());
                for k in 0..got.value() {
                    let proven = knowledge.and_then(|kn| kn.outcome_of_trial(Nimber(k)));
                    if proven != Some(Outcome::Win) {
                        witness_gaps
                            .push(format!("nimber {got} found but (p, *{k}) not proven winning"));
                    }
                }
            }
        }
        if checked < 2 {
            return Err("dag enumeration came up empty".into());
        }
        Ok(())
    });

    suite.run("6 component nimber extraction", secs(60), || {
        let mut rng = StdRng::seed_from_u64(0xE6);
        let mut oracle = Oracle::new();
        for _ in 0..200 {
            let mut parts = Vec::new();
            while parts.len() < 2 {
                let rows = rng.gen_range(1..=3);
                let cols = rng.gen_range(1..=4);
                let cells = rng.gen::<u64>() & ((1u64 << (rows * cols)) - 1);
                parts.push(CramBoard::from_bits(rows, cols, cells).unwrap());
            }
            let total: usize = parts.iter().map(Position::size).sum();
            if total > 10 {
                continue;
            }
            let sum = SumPosition::new(parts.clone());
            let mut solver = Solver::new();
            let tree = solver.elementary_solution_tree(&sum).unwrap();
            let before = solver.stats();
            let extracted = extract_component_nimber(&tree)
                .map_err(|e| format!("extraction failed: {e}"))?;
            if solver.stats() != before {
                return Err("extraction expanded couples".into());
            }
            let nimbers = [oracle.nimber(&parts[0]), oracle.nimber(&parts[1])];
            if extracted.nimber != nimbers[extracted.side.index()] {
                return Err(format!(
                    "extracted {} for one side, oracle says {}",
                    extracted.nimber,
                    nimbers[extracted.side.index()]
                ));
            }
            let equal = nimbers[0] == nimbers[1];
            if (extracted.relation == NimberRelation::Equal) != equal {
                return Err(format!(
                    "relation {:?} but oracle nimbers are {} and {}",
                    extracted.relation, nimbers[0], nimbers[1]
                ));
            }
        }
        Ok(())
    });

    suite.run("7 split beats elementary on 3x3+3x3", None, || {
        let sum = SumPosition::new(vec![board("3x3"), board("3x3")]);
        for strategy in OrderingStrategy::ALL {
            let mut split = Solver::new().with_strategy(strategy);
            let mut baseline = Solver::new().with_strategy(strategy);
            let a = split.solve_couple(&Couple::bare(sum.clone())).unwrap();
            let b = baseline.elementary_solve(&sum).unwrap();
            if a != b {
                return Err(format!("{strategy}: outcomes disagree"));
            }
            let (s, e) = (split.stats().couples_expanded, baseline.stats().couples_expanded);
            if s >= e {
                return Err(format!("{strategy}: split {s} vs elementary {e}"));
            }
        }
        Ok(())
    });

    suite.run("8 ladder leaves winning witnesses", None, || {
        if witness_gaps.is_empty() {
            Ok(())
        } else {
            Err(format!("{} gaps, first: {}", witness_gaps.len(), witness_gaps[0]))
        }
    });

    suite.run("9 outcomes match rectangle parity rule", None, || {
        let mut solver = Solver::new();
        for rows in 1..=20usize {
            for cols in 1..=20usize {
                if rows * cols > 20 {
                    continue;
                }
                let Some(want) = grundy::rectangle_shortcut(rows, cols) else {
                    continue;
                };
                let full = CramBoard::empty_rect(rows, cols).unwrap();
                let got = solver.solve_couple(&Couple::bare(full)).unwrap();
                if got != want {
                    return Err(format!("{rows}x{cols}: computed {got}, parity rule {want}"));
                }
            }
        }
        Ok(())
    });

    assert!(
        suite.failures.is_empty(),
        "failed acceptance checks:\n  {}",
        suite.failures.join("\n  ")
    );
}

/// Slow tier, hours not minutes: run with `cargo test -- --ignored`.
#[test]
#[ignore]
fn extended_3xn_tier() {
    let mut solver = Solver::new();
    for (n, want) in (10..=12).zip([2, 0, 1]) {
        let got = solver.nimber_of(&board(&format!("3x{n}"))).unwrap();
        assert_eq!(got, Nimber(want), "3x{n}");
    }
}

/// Slow tier, hours not minutes: run with `cargo test -- --ignored`.
#[test]
#[ignore]
fn extended_rectangles_tier() {
    let mut solver = Solver::new();
    for (spec, want) in [("5x6", 2), ("4x7", 3), ("5x7", 1)] {
        let got = solver.nimber_of(&board(spec)).unwrap();
        assert_eq!(got, Nimber(want), "{spec}");
    }
}

/// The parity rule itself is exercised against search results in the main
/// suite; this pins the rule's own shape so a regression there cannot
/// silently weaken that check.
#[test]
fn rectangle_parity_rule_shape() {
    assert_eq!(grundy::rectangle_shortcut(2, 4), Some(Outcome::Loss));
    assert_eq!(grundy::rectangle_shortcut(2, 5), Some(Outcome::Win));
    assert_eq!(grundy::rectangle_shortcut(3, 5), None);
    assert_eq!(outcome_from_nimber(Nimber(0)), Outcome::Loss);
}
