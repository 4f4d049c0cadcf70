//! Lower and upper bounds on the unknotting index, without any search.

use vlink::bounds::bound_report;
use vlink::parse_gauss_code;

fn main() -> vlink::Result<()> {
    let codes = [
        "% v=1\nO1+ / U1+",
        "O1+ U2+ / U1+ O2+ O3+ U3+",
        "O1+ O2+ O3+ U2+ U1+ U3+",
        "% v=1\nO1+ O2+ U1+ U2+",
    ];
    for code in codes {
        let d = parse_gauss_code(code)?;
        let r = bound_report(&d);
        println!("{}", d.serialize().replace('\n', "  "));
        println!("  lower {}  (rounded up {})", r.lower, r.lower_ceiling);
        match r.upper {
            Some(u) => println!("  upper {u}"),
            None => println!("  upper unknown: no virtual crossing count recorded"),
        }
        if let Some(k) = &r.knot_lower {
            println!(
                "  knot lower {} (asymmetric spectrum: {})",
                k.effective(),
                k.asymmetric
            );
        }
        if let Some(u) = r.knot_upper {
            println!("  knot upper {u}");
        }
    }
    Ok(())
}
