//! The labeled pretzel link L(7, 5, 9, 11): virtualize thirteen labels, read
//! off the closed form and build an explicit unknotting sequence.

use std::collections::BTreeSet;

use vlink::pretzel::{
    construct_witness, formula_index, label_counts, pretzel, strand_labels, virtualize_labels,
};

fn main() -> vlink::Result<()> {
    let p = [7, 5, 9, 11];
    let lp = pretzel(&p)?;
    println!("L{p:?}: {} crossings", lp.diagram.crossing_count());
    for i in 1..=p.len() {
        println!("  strand {i}: labels {:?}", strand_labels(&p, i)?);
    }

    let labels: BTreeSet<u32> = [2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 1, 3, 5].into();
    let d = virtualize_labels(&lp, &labels)?;
    let target = formula_index(&lp, &labels)?;
    println!("virtualized {labels:?}");
    println!("  counts {:?}", label_counts(&lp, &labels)?);
    println!("  closed form {target}");

    match construct_witness(&lp, &labels, target, 4096)? {
        Some(w) => {
            let end = w.replay(&d)?;
            println!(
                "  witness: virtualize {:?}, change {:?}",
                w.virtualized, w.changed
            );
            println!(
                "  {} Reidemeister moves leave {} crossings",
                w.trace.len(),
                end.crossing_count()
            );
        }
        None => println!("  no witness found"),
    }
    Ok(())
}
