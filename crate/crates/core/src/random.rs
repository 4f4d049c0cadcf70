//! Random Gauss diagrams for oracle checks.

use rand::Rng;

use crate::gauss::{Diagram, Sign, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub components: usize,
    pub linking_crossings: usize,
    pub self_crossings: usize,
}

impl RandomSpec {
    pub fn new(components: usize, linking_crossings: usize, self_crossings: usize) -> Self {
        Self {
            components,
            linking_crossings,
            self_crossings,
        }
    }
}

/// Chords with uniformly random endpoints, roles and signs. Linking chords
/// need at least two components and are dropped otherwise.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, spec: &RandomSpec) -> Diagram {
    let n = spec.components.max(1);
    let mut components: Vec<Vec<Symbol>> = vec![Vec::new(); n];
    let mut signs = std::collections::BTreeMap::new();
    let linking = if n >= 2 { spec.linking_crossings } else { 0 };
    let place = |rng: &mut R, comp: usize, sym: Symbol, components: &mut Vec<Vec<Symbol>>| {
        let at = rng.gen_range(0..=components[comp].len());
        components[comp].insert(at, sym);
    };
    for (chord, next) in (0..linking + spec.self_crossings).zip(1..) {
        let (a, b) = if chord < linking {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            (a, b)
        } else {
            let a = rng.gen_range(0..n);
            (a, a)
        };
        place(rng, a, Symbol::over(next), &mut components);
        place(rng, b, Symbol::under(next), &mut components);
        let sign = if rng.gen_bool(0.5) {
            Sign::Positive
        } else {
            Sign::Negative
        };
        signs.insert(next, sign);
    }
    Diagram::assemble(components, &signs, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_the_spec() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let d = random_diagram(&mut rng, &RandomSpec::new(3, 5, 2));
            assert_eq!(d.component_count(), 3);
            assert_eq!(d.linking_crossing_count(), 5);
            assert_eq!(d.crossing_count(), 7);
        }
        let knot = random_diagram(&mut rng, &RandomSpec::new(1, 4, 3));
        assert_eq!(knot.crossing_count(), 3);
    }
}
