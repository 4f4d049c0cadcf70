//! Brute-force oracles and the exact unknotting-index search.
//!
//! The search walks `(m, n)` in dictionary order and, for each tuple, every
//! disjoint pair `(S, T)` of crossing sets with `|S| = m`, `|T| = n`. The
//! first tuple with a `Trivial` verdict is the answer, unless an `Unknown`
//! verdict at a smaller tuple makes the result an interval.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::gauss::{CrossingId, Diagram, Role};
use crate::index::{HalfInteger, IndexBound, UnknottingIndex};
use crate::invariants;
use crate::moves::{self, Move, MoveBudget, TrivialityVerdict};

/// Size limits for the exhaustive procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchCaps {
    /// Largest crossing count `unknotting_index` accepts.
    pub max_crossings: usize,
    /// Largest linking-crossing count the subset oracles accept.
    pub max_linking_crossings: usize,
    /// Skip tuples below the invariant lower bound.
    pub use_lower_bound: bool,
}

impl Default for SearchCaps {
    fn default() -> Self {
        Self {
            max_crossings: 16,
            max_linking_crossings: 20,
            use_lower_bound: true,
        }
    }
}

fn linking_ids_capped(d: &Diagram, cap: usize) -> Result<Vec<CrossingId>> {
    let ids = d.linking_crossing_ids();
    if ids.len() > cap {
        return Err(Error::TooLarge(format!(
            "{} linking crossings exceed the cap of {cap}",
            ids.len()
        )));
    }
    Ok(ids)
}

fn virtualized(d: &Diagram, s: &[CrossingId]) -> Diagram {
    moves::virtualize(d, &s.iter().copied().collect()).expect("ids come from the diagram")
}

/// Λ(D): every set of `total_span(d)` linking crossings whose virtualization
/// leaves total span zero, in lexicographic order.
pub fn lambda_sets(d: &Diagram) -> Result<Vec<BTreeSet<CrossingId>>> {
    lambda_sets_capped(d, SearchCaps::default().max_linking_crossings)
}

pub fn lambda_sets_capped(d: &Diagram, cap: usize) -> Result<Vec<BTreeSet<CrossingId>>> {
    let ids = linking_ids_capped(d, cap)?;
    let span = invariants::total_span(d) as usize;
    Ok(ids
        .into_iter()
        .combinations(span)
        .filter(|s| invariants::total_span(&virtualized(d, s)) == 0)
        .map(|s| s.into_iter().collect())
        .collect())
}

/// ℓ_D by minimizing `|lk|` over Λ(D).
pub fn ell_bruteforce(d: &Diagram) -> Result<HalfInteger> {
    ell_bruteforce_capped(d, SearchCaps::default().max_linking_crossings)
}

pub fn ell_bruteforce_capped(d: &Diagram, cap: usize) -> Result<HalfInteger> {
    let sets = lambda_sets_capped(d, cap)?;
    let best = sets
        .iter()
        .map(|s| {
            let v: Vec<_> = s.iter().copied().collect();
            invariants::doubled_linking_number(&virtualized(d, &v)).abs()
        })
        .min()
        .expect("Λ(D) is never empty");
    Ok(HalfInteger::from_doubled(best))
}

/// Fewest linking crossings whose virtualization zeroes the total span,
/// found by trying subset sizes in increasing order.
pub fn min_virtualizations_to_zero_span(d: &Diagram) -> Result<u64> {
    min_virtualizations_capped(d, SearchCaps::default().max_linking_crossings)
}

pub fn min_virtualizations_capped(d: &Diagram, cap: usize) -> Result<u64> {
    let ids = linking_ids_capped(d, cap)?;
    for size in 0..=ids.len() {
        if ids
            .iter()
            .copied()
            .combinations(size)
            .any(|s| invariants::total_span(&virtualized(d, &s)) == 0)
        {
            return Ok(size as u64);
        }
    }
    unreachable!("virtualizing every linking crossing zeroes the span")
}

/// For one component pair, the crossings whose virtualization lowers the
/// span: positive crossings over on the first component and negative
/// crossings under on it when the signed span is positive, the mirror
/// classes when it is negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanReduction {
    pub i: usize,
    pub j: usize,
    pub needed: usize,
    pub candidates: Vec<CrossingId>,
}

pub fn span_reductions(d: &Diagram) -> Vec<SpanReduction> {
    invariants::pair_summaries(d)
        .into_iter()
        .filter(|p| p.span > 0)
        .map(|p| {
            let positive_side = p.link_data.signed_span() > 0;
            let candidates = d
                .crossings()
                .filter(|c| c.pair() == Some((p.i, p.j)))
                .filter(|c| {
                    let over_on_i = c.role_on(p.i) == Some(Role::Over);
                    let positive = c.sign.value() > 0;
                    (over_on_i == positive) == positive_side
                })
                .map(|c| c.id)
                .collect();
            SpanReduction {
                i: p.i,
                j: p.j,
                needed: p.span as usize,
                candidates,
            }
        })
        .collect()
}

/// A `total_span(d)`-element set that zeroes the span, taking the smallest
/// ids allowed by the sign rule for every pair.
pub fn span_zeroing_set(d: &Diagram) -> BTreeSet<CrossingId> {
    span_reductions(d)
        .into_iter()
        .flat_map(|r| r.candidates.into_iter().take(r.needed))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub virtualized: BTreeSet<CrossingId>,
    pub changed: BTreeSet<CrossingId>,
    pub trace: Vec<Move>,
}

impl Witness {
    /// Virtualizes, changes crossings and replays the trace.
    pub fn replay(&self, d: &Diagram) -> Result<Diagram> {
        let v = moves::virtualize(d, &self.virtualized)?;
        let c = moves::change_crossings(&v, &self.changed)?;
        moves::replay(&c, &self.trace)
    }

    pub fn index(&self) -> UnknottingIndex {
        UnknottingIndex::new(self.virtualized.len() as u64, self.changed.len() as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchOutcome {
    Exact {
        m: u64,
        n: u64,
        witness: Witness,
    },
    Interval {
        lower: IndexBound,
        upper: UnknottingIndex,
        reason: String,
        witness: Witness,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub tuples_examined: u64,
    pub candidates_evaluated: u64,
    pub duplicates_skipped: u64,
    pub states_explored: u64,
    pub unknown_verdicts: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    #[serde(flatten)]
    pub outcome: SearchOutcome,
    pub lower_bound: IndexBound,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn exact(&self) -> Option<UnknottingIndex> {
        match self.outcome {
            SearchOutcome::Exact { m, n, .. } => Some(UnknottingIndex::new(m, n)),
            SearchOutcome::Interval { .. } => None,
        }
    }

    pub fn witness(&self) -> &Witness {
        match &self.outcome {
            SearchOutcome::Exact { witness, .. } | SearchOutcome::Interval { witness, .. } => {
                witness
            }
        }
    }

    /// Best tuple known to unknot the diagram.
    pub fn upper(&self) -> UnknottingIndex {
        self.witness().index()
    }
}

const CHUNK: usize = 2048;

struct Candidate {
    s: BTreeSet<CrossingId>,
    t: BTreeSet<CrossingId>,
    diagram: Diagram,
}

enum TupleOutcome {
    Found(Witness),
    Exhausted { saw_unknown: bool },
}

/// The least `(m, n)` in dictionary order for which some disjoint `S`, `T`
/// with `|S| = m`, `|T| = n` unknot `d` within the move budget.
pub fn unknotting_index(
    d: &Diagram,
    budget: &MoveBudget,
    caps: &SearchCaps,
) -> Result<SearchResult> {
    let c = d.crossing_count();
    if c > caps.max_crossings {
        return Err(Error::TooLarge(format!(
            "{c} crossings exceed the search cap of {}",
            caps.max_crossings
        )));
    }
    let lower = bounds::lower_bound(d);
    let start = lower.ceil();
    let ids = d.crossing_ids();
    let mut stats = SearchStats::default();
    let mut first_unknown: Option<UnknottingIndex> = None;

    for m in 0..=c as u64 {
        if caps.use_lower_bound && m < start.m {
            continue;
        }
        for n in 0..=(c as u64 - m) {
            let tuple = UnknottingIndex::new(m, n);
            if caps.use_lower_bound && tuple < start {
                continue;
            }
            stats.tuples_examined += 1;
            match search_tuple(d, &ids, tuple, budget, &mut stats) {
                TupleOutcome::Found(witness) => {
                    let outcome = match first_unknown {
                        None => SearchOutcome::Exact { m, n, witness },
                        Some(blocked) => SearchOutcome::Interval {
                            lower: lower.max(blocked.into()),
                            upper: tuple,
                            reason: format!(
                                "move budget exhausted on candidates at {blocked} without a verdict"
                            ),
                            witness,
                        },
                    };
                    return Ok(SearchResult {
                        outcome,
                        lower_bound: lower,
                        stats,
                    });
                }
                TupleOutcome::Exhausted { saw_unknown } => {
                    if saw_unknown && first_unknown.is_none() {
                        first_unknown = Some(tuple);
                    }
                }
            }
        }
    }
    unreachable!("virtualizing every crossing yields the trivial diagram")
}

fn search_tuple(
    d: &Diagram,
    ids: &[CrossingId],
    tuple: UnknottingIndex,
    budget: &MoveBudget,
    stats: &mut SearchStats,
) -> TupleOutcome {
    let mut seen: HashSet<String> = HashSet::new();
    let mut saw_unknown = false;
    let mut pairs = ids
        .iter()
        .copied()
        .combinations(tuple.m as usize)
        .flat_map(|s| {
            let rest: Vec<CrossingId> = ids.iter().copied().filter(|id| !s.contains(id)).collect();
            let s_set: BTreeSet<CrossingId> = s.into_iter().collect();
            rest.into_iter()
                .combinations(tuple.n as usize)
                .map(move |t| (s_set.clone(), t.into_iter().collect::<BTreeSet<_>>()))
        });
    loop {
        let mut chunk = Vec::with_capacity(CHUNK);
        for (s, t) in pairs.by_ref() {
            let v = moves::virtualize(d, &s).expect("ids come from the diagram");
            let diagram = moves::change_crossings(&v, &t).expect("ids come from the diagram");
            if seen.insert(diagram.serialize()) {
                chunk.push(Candidate { s, t, diagram });
            } else {
                stats.duplicates_skipped += 1;
            }
            if chunk.len() == CHUNK {
                break;
            }
        }
        if chunk.is_empty() {
            return TupleOutcome::Exhausted { saw_unknown };
        }
        let verdicts: Vec<TrivialityVerdict> = chunk
            .par_iter()
            .map(|cand| moves::is_trivial(&cand.diagram, budget))
            .collect();
        stats.candidates_evaluated += chunk.len() as u64;
        for (cand, verdict) in chunk.into_iter().zip(verdicts) {
            match verdict {
                TrivialityVerdict::Trivial {
                    trace,
                    states_explored,
                } => {
                    stats.states_explored += states_explored as u64;
                    return TupleOutcome::Found(Witness {
                        virtualized: cand.s,
                        changed: cand.t,
                        trace,
                    });
                }
                TrivialityVerdict::Unknown { states_explored } => {
                    stats.states_explored += states_explored as u64;
                    stats.unknown_verdicts += 1;
                    saw_unknown = true;
                }
                TrivialityVerdict::NonTrivial { .. } => {}
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_gauss_code;

    fn d(s: &str) -> Diagram {
        parse_gauss_code(s).unwrap()
    }

    fn set(v: &[CrossingId]) -> BTreeSet<CrossingId> {
        v.iter().copied().collect()
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(
            lambda_sets(&d("O1+ U2+ / U1+ O2+")).unwrap(),
            vec![set(&[])]
        );
        assert_eq!(lambda_sets(&d("O1+ / U1+")).unwrap(), vec![set(&[1])]);
        assert_eq!(
            lambda_sets(&d("O1+ O2+ U3+ / U1+ U2+ O3+")).unwrap(),
            vec![set(&[1]), set(&[2])]
        );
    }

    #[test]
    fn ell_examples() {
        assert_eq!(
            ell_bruteforce(&d("O1+ U2+ / U1+ O2+")).unwrap(),
            HalfInteger::from_int(1)
        );
        assert_eq!(ell_bruteforce(&d("O1+ / U1+")).unwrap(), HalfInteger::ZERO);
        assert_eq!(
            ell_bruteforce(&d("O1+ O2+ U3+ / U1+ U2+ O3+")).unwrap(),
            HalfInteger::from_int(1)
        );
    }

    #[test]
    fn min_virtualization_examples() {
        assert_eq!(
            min_virtualizations_to_zero_span(&d("O1+ U2+ / U1+ O2+")).unwrap(),
            0
        );
        assert_eq!(
            min_virtualizations_to_zero_span(&d("O1+ / U1+")).unwrap(),
            1
        );
        assert_eq!(
            min_virtualizations_to_zero_span(&d("O1+ O2+ / U1+ U2+")).unwrap(),
            2
        );
    }

    #[test]
    fn caps_are_enforced() {
        let many: String = (1..=21).map(|i| format!("O{i}+ ")).collect::<String>()
            + "/ "
            + &(1..=21).map(|i| format!("U{i}+ ")).collect::<String>();
        assert!(matches!(lambda_sets(&d(&many)), Err(Error::TooLarge(_))));
        assert!(matches!(
            unknotting_index(&d(&many), &MoveBudget::default(), &SearchCaps::default()),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn span_zeroing_follows_sign_rule() {
        let x = d("O1+ O2+ U3+ / U1+ U2+ O3+");
        assert_eq!(span_zeroing_set(&x), set(&[1]));
        assert_eq!(invariants::total_span(&virtualized(&x, &[1])), 0);
        assert_eq!(span_zeroing_set(&d("O1+ U2+ / U1+ O2+")), set(&[]));
    }

    fn exact(code: &str) -> (UnknottingIndex, SearchResult) {
        let diagram = d(code);
        let r = unknotting_index(&diagram, &MoveBudget::default(), &SearchCaps::default()).unwrap();
        assert_eq!(r.witness().replay(&diagram).unwrap().crossing_count(), 0);
        (r.exact().expect("exact result"), r)
    }

    #[test]
    fn search_examples() {
        let (u, r) = exact("O1+ / U1+");
        assert_eq!(u, UnknottingIndex::new(1, 0));
        assert_eq!(r.witness().virtualized, set(&[1]));
        assert_eq!(exact("O1+ O2+ U1+ U2+").0, UnknottingIndex::new(0, 1));
        assert_eq!(exact("").0, UnknottingIndex::new(0, 0));
        assert_eq!(exact("O1+ U2+ / U1+ O2+").0, UnknottingIndex::new(0, 1));
    }

    #[test]
    fn pruning_does_not_change_the_answer() {
        let caps = SearchCaps {
            use_lower_bound: false,
            ..SearchCaps::default()
        };
        for code in ["O1+ / U1+", "O1+ O2+ U1+ U2+", "O1+ O2+ U3+ / U1+ U2+ O3+"] {
            let x = d(code);
            let pruned =
                unknotting_index(&x, &MoveBudget::default(), &SearchCaps::default()).unwrap();
            let full = unknotting_index(&x, &MoveBudget::default(), &caps).unwrap();
            assert_eq!(pruned.exact(), full.exact());
        }
    }

    #[test]
    fn unknowns_degrade_to_interval() {
        // Classical trefoil: invariants vanish and no R1/R2 move applies.
        let x = d("O1+ U2+ O3+ U1+ O2+ U3+");
        let r = unknotting_index(&x, &MoveBudget::default(), &SearchCaps::default()).unwrap();
        match &r.outcome {
            SearchOutcome::Interval { lower, upper, .. } => {
                assert_eq!(*lower, IndexBound::from(UnknottingIndex::new(0, 0)));
                assert!(*upper <= UnknottingIndex::new(3, 0));
            }
            other => panic!("expected interval, got {other:?}"),
        }
        assert!(r.stats.unknown_verdicts > 0);
    }
}
