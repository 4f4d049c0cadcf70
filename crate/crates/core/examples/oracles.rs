//! Brute-force oracles against the closed-form invariants on random
//! two-component diagrams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vlink::invariants::{pair_ell_doubled, total_span};
use vlink::random::{random_diagram, RandomSpec};
use vlink::search::{ell_bruteforce, min_virtualizations_to_zero_span};

fn main() -> vlink::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut span_ok, mut ell_ok) = (0, 0);
    let trials = 200;
    for _ in 0..trials {
        let d = random_diagram(&mut rng, &RandomSpec::new(2, 7, 2));
        span_ok += usize::from(min_virtualizations_to_zero_span(&d)? == total_span(&d));
        ell_ok += usize::from(ell_bruteforce(&d)?.doubled() == pair_ell_doubled(&d, 0, 1)? as i64);
    }
    println!("span equals minimal virtualizations: {span_ok}/{trials}");
    println!("ell equals brute-force minimum:      {ell_ok}/{trials}");
    Ok(())
}
