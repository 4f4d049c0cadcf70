//! Exact unknotting index by bounded search, with a replayable witness.

use vlink::search::{unknotting_index, SearchOutcome};
use vlink::{parse_gauss_code, MoveBudget, SearchCaps};

fn main() -> vlink::Result<()> {
    let budget = MoveBudget::default();
    let caps = SearchCaps::default();
    for code in [
        "O1+ / U1+",
        "O1+ U2+ / U1+ O2+ O3+ U3+",
        "O1+ U2+ O3+ U1+ O2+ U3+",
    ] {
        let d = parse_gauss_code(code)?;
        let result = unknotting_index(&d, &budget, &caps)?;
        match &result.outcome {
            SearchOutcome::Exact { m, n, .. } => println!("{d}: exactly ({m}, {n})"),
            SearchOutcome::Interval {
                lower,
                upper,
                reason,
                ..
            } => {
                println!("{d}: between {lower} and {upper} ({reason})")
            }
        }
        let w = result.witness();
        let end = w.replay(&d)?;
        println!(
            "  virtualize {:?}, change {:?}, {} moves -> {} crossings left; {} candidates tried",
            w.virtualized,
            w.changed,
            w.trace.len(),
            end.crossing_count(),
            result.stats.candidates_evaluated
        );
    }
    Ok(())
}
