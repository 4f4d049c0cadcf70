//! Parse a few Gauss codes and print their linking and self-crossing invariants.

use vlink::invariants::{
    component_writhes, doubled_linking_number, pair_summaries, total_span, warping_degree,
};
use vlink::parse_gauss_code;

fn main() -> vlink::Result<()> {
    let codes = [
        ("virtual Hopf", "O1+ / U1+"),
        ("virtual trefoil", "O1+ U2+ / U1+ O2+ O3+ U3+"),
        ("classical trefoil", "O1+ U2+ O3+ U1+ O2+ U3+"),
        ("three components", "O1- U3+ / U1- O2+ / U2+ O3+ O4- U4-"),
    ];
    for (name, code) in codes {
        let d = parse_gauss_code(code)?;
        println!("{name}: {d}");
        println!(
            "  total span {}, lk x2 {}, warping {}",
            total_span(&d),
            doubled_linking_number(&d),
            warping_degree(&d)
        );
        for p in pair_summaries(&d) {
            println!(
                "  pair ({}, {}): span {}, lk x2 {}, ell x2 {}",
                p.i, p.j, p.span, p.doubled_lk, p.ell_doubled
            );
        }
        for (k, w) in component_writhes(&d).iter().enumerate() {
            println!("  component {k} n-writhes {:?}", w.entries());
        }
    }
    Ok(())
}
