//! Check the pretzel closed forms against bounds, witnesses and exact search
//! over every virtualization subset of a few small families.

use vlink::pretzel::{verify_family, VerifyOptions};

fn main() -> vlink::Result<()> {
    let options = VerifyOptions::default();
    for p in [vec![1, 3], vec![3, 3], vec![1, 1, 1, 1], vec![2, 2]] {
        let report = verify_family(&p, &options)?;
        println!(
            "L{:?} ({:?}): {}/{} subsets checked, {} discrepancies",
            report.params,
            report.family,
            report.subsets_checked,
            report.total_subsets,
            report.discrepancy_count
        );
        for check in report.checks.iter().filter(|c| !c.passed()).take(3) {
            println!(
                "  labels {:?}: formula {}, lower {}",
                check.labels, check.formula, check.lower_bound
            );
            for note in &check.discrepancies {
                println!("    {note}");
            }
        }
    }
    Ok(())
}
