//! Inflate a diagram with random Reidemeister insertions, then simplify it
//! back and decide triviality.

use vlink::moves::{is_trivial, random_inflate, simplify_traced, TrivialityVerdict};
use vlink::{parse_gauss_code, MoveBudget};

fn main() -> vlink::Result<()> {
    let budget = MoveBudget::default();
    let unknot = parse_gauss_code("O1+ U1+")?;
    let big = random_inflate(&unknot, 6, 2024);
    println!("inflated: {big} ({} crossings)", big.crossing_count());

    let s = simplify_traced(&big, &budget);
    println!(
        "simplified to {:?} in {} moves",
        s.diagram.serialize(),
        s.trace.len()
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&s.trace).expect("moves serialize")
    );

    for code in ["O1+ U1+ O2- U2-", "O1+ / U1+", "O1+ U2+ O3+ U1+ O2+ U3+"] {
        let d = parse_gauss_code(code)?;
        match is_trivial(&d, &budget) {
            TrivialityVerdict::Trivial { trace, .. } => {
                println!("{d}: trivial after {} moves", trace.len())
            }
            TrivialityVerdict::NonTrivial { certificate } => {
                println!("{d}: non-trivial, {certificate:?}")
            }
            TrivialityVerdict::Unknown { states_explored } => {
                println!("{d}: undecided after {states_explored} states")
            }
        }
    }
    Ok(())
}
