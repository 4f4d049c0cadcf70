//! Unknotting operations and classical Reidemeister moves on Gauss diagrams.
//!
//! R1 and R2 deletions are applied greedily to a fixed point. R3 moves and
//! R2 insertions are only explored by a budgeted breadth-first search when
//! enabled in the [`MoveBudget`].

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss::{CrossingId, Diagram, Role, Sign, Slot, Symbol};
use crate::invariants::{self, WritheSpectrum};

/// Caps for the move search. Running out yields `Unknown`, never a wrong verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MoveBudget {
    pub max_states: usize,
    pub max_depth: usize,
    pub enable_r3: bool,
    pub enable_r2_insertion: bool,
}

impl Default for MoveBudget {
    fn default() -> Self {
        Self {
            max_states: 100_000,
            max_depth: 64,
            enable_r3: false,
            enable_r2_insertion: false,
        }
    }
}

impl MoveBudget {
    fn explores(&self) -> bool {
        self.enable_r3 || self.enable_r2_insertion
    }
}

/// R2 insertions never grow a search state more than this many crossings
/// past the diagram the search started from.
const MAX_INSERTION_SURPLUS: usize = 4;

/// One Reidemeister move. `position` is the slot of the first over endpoint
/// involved (deletions, R3) or the gap the over endpoints go into (insertions),
/// measured in the diagram before the move.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    R1Delete {
        crossings: [CrossingId; 1],
        position: Slot,
    },
    R2Delete {
        crossings: [CrossingId; 2],
        position: Slot,
    },
    R3 {
        crossings: [CrossingId; 3],
        position: Slot,
    },
    R1Insert {
        crossings: [CrossingId; 1],
        position: Slot,
        sign: Sign,
        over_first: bool,
    },
    /// Chord `crossings[0]` gets `sign`, `crossings[1]` the opposite sign.
    /// Over endpoints go in at `position` in that order; under endpoints go in
    /// at `under_position`, reversed when `antiparallel`.
    R2Insert {
        crossings: [CrossingId; 2],
        position: Slot,
        under_position: Slot,
        sign: Sign,
        antiparallel: bool,
    },
}

impl Move {
    pub fn crossings(&self) -> &[CrossingId] {
        match self {
            Move::R1Delete { crossings, .. } | Move::R1Insert { crossings, .. } => crossings,
            Move::R2Delete { crossings, .. } | Move::R2Insert { crossings, .. } => crossings,
            Move::R3 { crossings, .. } => crossings,
        }
    }
}

/// Replaces every crossing in `ids` by a virtual crossing (deletes its chord).
/// The virtual crossing count, when known, grows by `|ids|`.
pub fn virtualize(d: &Diagram, ids: &BTreeSet<CrossingId>) -> Result<Diagram> {
    check_known(d, ids)?;
    let out = d.without_crossings(ids);
    let v = d.virtual_count().map(|v| v + ids.len() as u32);
    Ok(out.with_virtual_count(v))
}

/// Crossing changes: swaps the over and under endpoints and negates the sign.
pub fn change_crossings(d: &Diagram, ids: &BTreeSet<CrossingId>) -> Result<Diagram> {
    check_known(d, ids)?;
    let components = d
        .components()
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|s| {
                    if ids.contains(&s.crossing) {
                        Symbol::new(s.crossing, s.role.flip())
                    } else {
                        *s
                    }
                })
                .collect()
        })
        .collect();
    let signs = d
        .crossings()
        .map(|c| {
            let sign = if ids.contains(&c.id) {
                c.sign.flip()
            } else {
                c.sign
            };
            (c.id, sign)
        })
        .collect();
    Ok(Diagram::assemble(components, &signs, d.virtual_count()))
}

fn check_known(d: &Diagram, ids: &BTreeSet<CrossingId>) -> Result<()> {
    match ids.iter().find(|id| d.crossing(**id).is_none()) {
        Some(&id) => Err(Error::UnknownCrossing(id)),
        None => Ok(()),
    }
}

fn adjacent(a: Slot, b: Slot, len: usize) -> bool {
    a.component == b.component
        && len >= 2
        && ((a.index + 1) % len == b.index || (b.index + 1) % len == a.index)
}

fn comp_len(d: &Diagram, slot: Slot) -> usize {
    d.components()[slot.component].len()
}

fn neighbours(slot: Slot, len: usize) -> Vec<Slot> {
    if len < 2 {
        return Vec::new();
    }
    let next = Slot::new(slot.component, (slot.index + 1) % len);
    let prev = Slot::new(slot.component, (slot.index + len - 1) % len);
    if next == prev {
        vec![next]
    } else {
        vec![prev, next]
    }
}

/// All R1 deletions: chords whose endpoints are adjacent on one component.
pub fn r1_deletions(d: &Diagram) -> Vec<Move> {
    let mut moves = Vec::new();
    for (ci, comp) in d.components().iter().enumerate() {
        for (pi, sym) in comp.iter().enumerate() {
            if sym.role != Role::Over {
                continue;
            }
            let c = d.crossing(sym.crossing).unwrap();
            if adjacent(c.over, c.under, comp.len()) {
                moves.push(Move::R1Delete {
                    crossings: [c.id],
                    position: Slot::new(ci, pi),
                });
            }
        }
    }
    moves
}

/// All R2 deletions: two chords of opposite sign whose over endpoints are
/// adjacent and whose under endpoints are adjacent.
pub fn r2_deletions(d: &Diagram) -> Vec<Move> {
    let mut moves = Vec::new();
    let mut seen = HashSet::new();
    for (ci, comp) in d.components().iter().enumerate() {
        for (pi, sym) in comp.iter().enumerate() {
            if sym.role != Role::Over {
                continue;
            }
            let a = d.crossing(sym.crossing).unwrap();
            for nb in neighbours(a.over, comp.len()) {
                let other = d.symbol_at(nb);
                if other.role != Role::Over || other.crossing == a.id {
                    continue;
                }
                let b = d.crossing(other.crossing).unwrap();
                if a.sign == b.sign || !adjacent(a.under, b.under, comp_len(d, a.under)) {
                    continue;
                }
                let key = (a.id.min(b.id), a.id.max(b.id));
                if seen.insert(key) {
                    moves.push(Move::R2Delete {
                        crossings: [a.id, b.id],
                        position: Slot::new(ci, pi),
                    });
                }
            }
        }
    }
    moves
}

/// A located R3 triangle: top segment (two over endpoints), middle segment
/// (under of `x`, over of `z`) and bottom segment (unders of `y` and `z`).
struct Triangle {
    ids: [CrossingId; 3],
    segments: [(Slot, Slot); 3],
}

fn r3_triangles(d: &Diagram) -> Vec<Triangle> {
    let mut found = Vec::new();
    let mut seen = HashSet::new();
    for (ci, comp) in d.components().iter().enumerate() {
        let len = comp.len();
        if len < 3 {
            continue;
        }
        for p in 0..len {
            let first = Slot::new(ci, p);
            let second = Slot::new(ci, (p + 1) % len);
            let (s1, s2) = (d.symbol_at(first), d.symbol_at(second));
            if s1.role != Role::Over || s2.role != Role::Over || s1.crossing == s2.crossing {
                continue;
            }
            for (x_id, y_id, x_first) in [
                (s1.crossing, s2.crossing, true),
                (s2.crossing, s1.crossing, false),
            ] {
                let x = d.crossing(x_id).unwrap();
                let y = d.crossing(y_id).unwrap();
                let mid_len = comp_len(d, x.under);
                if mid_len < 3 {
                    continue;
                }
                for nb in neighbours(x.under, mid_len) {
                    let zs = d.symbol_at(nb);
                    if zs.role != Role::Over || zs.crossing == x_id || zs.crossing == y_id {
                        continue;
                    }
                    let z = d.crossing(zs.crossing).unwrap();
                    let bot_len = comp_len(d, y.under);
                    if bot_len < 3 || !adjacent(y.under, z.under, bot_len) {
                        continue;
                    }
                    let t = if x_first { 1 } else { -1 };
                    let m = if (x.under.index + 1) % mid_len == nb.index {
                        1
                    } else {
                        -1
                    };
                    let b = if (y.under.index + 1) % bot_len == z.under.index {
                        1
                    } else {
                        -1
                    };
                    let (sx, sy, sz) = (x.sign.value(), y.sign.value(), z.sign.value());
                    if sx * sy != m * b || sy * sz != t * m {
                        continue;
                    }
                    let mut key = [x_id, y_id, z.id];
                    key.sort_unstable();
                    if !seen.insert(key) {
                        continue;
                    }
                    found.push(Triangle {
                        ids: [x_id, y_id, z.id],
                        segments: [(first, second), (x.under, nb), (y.under, z.under)],
                    });
                }
            }
        }
    }
    found
}

/// All admissible R3 moves.
pub fn r3_moves(d: &Diagram) -> Vec<Move> {
    r3_triangles(d)
        .into_iter()
        .map(|t| Move::R3 {
            crossings: t.ids,
            position: t.segments[0].0,
        })
        .collect()
}

fn gap_count(d: &Diagram, component: usize) -> usize {
    d.components()[component].len().max(1)
}

fn all_gaps(d: &Diagram) -> Vec<Slot> {
    (0..d.component_count())
        .flat_map(|c| (0..gap_count(d, c)).map(move |g| Slot::new(c, g)))
        .collect()
}

/// All R2 insertions between two distinct gaps, with fresh crossing ids.
pub fn r2_insertions(d: &Diagram) -> Vec<Move> {
    let next = d.max_crossing_id() + 1;
    let gaps = all_gaps(d);
    let mut moves = Vec::new();
    for &over_gap in &gaps {
        for &under_gap in &gaps {
            if over_gap == under_gap {
                continue;
            }
            for antiparallel in [false, true] {
                for sign in [Sign::Positive, Sign::Negative] {
                    moves.push(Move::R2Insert {
                        crossings: [next, next + 1],
                        position: over_gap,
                        under_position: under_gap,
                        sign,
                        antiparallel,
                    });
                }
            }
        }
    }
    moves
}

fn insert_symbols(
    d: &Diagram,
    insertions: BTreeMap<Slot, Vec<Symbol>>,
    new_signs: &[(CrossingId, Sign)],
) -> Result<Diagram> {
    for slot in insertions.keys() {
        d.check_component(slot.component)?;
        if slot.index >= gap_count(d, slot.component) {
            return Err(Error::PreconditionViolated(format!(
                "gap {} out of range on component {}",
                slot.index, slot.component
            )));
        }
    }
    for (id, _) in new_signs {
        if d.crossing(*id).is_some() {
            return Err(Error::PreconditionViolated(format!(
                "crossing {id} already exists"
            )));
        }
    }
    let components = d
        .components()
        .iter()
        .enumerate()
        .map(|(ci, comp)| {
            let mut out = Vec::with_capacity(comp.len() + 4);
            for idx in 0..=comp.len() {
                if let Some(extra) = insertions.get(&Slot::new(ci, idx)) {
                    out.extend_from_slice(extra);
                }
                if idx < comp.len() {
                    out.push(comp[idx]);
                }
            }
            out
        })
        .collect();
    let mut signs = d.signs();
    signs.extend(new_signs.iter().copied());
    Ok(Diagram::assemble(components, &signs, d.virtual_count()))
}

/// Applies a single move, checking that it is admissible in `d`.
pub fn apply_move(d: &Diagram, mv: &Move) -> Result<Diagram> {
    let invalid = || Error::PreconditionViolated(format!("move {mv:?} does not apply"));
    match mv {
        Move::R1Delete {
            crossings: [id], ..
        } => {
            let c = d.crossing(*id).ok_or(Error::UnknownCrossing(*id))?;
            if !adjacent(c.over, c.under, comp_len(d, c.over)) {
                return Err(invalid());
            }
            Ok(d.without_crossings(&BTreeSet::from([*id])))
        }
        Move::R2Delete {
            crossings: [a, b], ..
        } => {
            let ok = r2_deletions(d).iter().any(|m| {
                let ids = m.crossings();
                (ids[0] == *a && ids[1] == *b) || (ids[0] == *b && ids[1] == *a)
            });
            if !ok {
                return Err(invalid());
            }
            Ok(d.without_crossings(&BTreeSet::from([*a, *b])))
        }
        Move::R3 { crossings, .. } => {
            let mut wanted = *crossings;
            wanted.sort_unstable();
            let tri = r3_triangles(d)
                .into_iter()
                .find(|t| {
                    let mut ids = t.ids;
                    ids.sort_unstable();
                    ids == wanted
                })
                .ok_or_else(invalid)?;
            let mut components = d.components().to_vec();
            for (a, b) in tri.segments {
                let sa = components[a.component][a.index];
                let sb = components[b.component][b.index];
                components[a.component][a.index] = sb;
                components[b.component][b.index] = sa;
            }
            Ok(Diagram::assemble(components, &d.signs(), d.virtual_count()))
        }
        Move::R1Insert {
            crossings: [id],
            position,
            sign,
            over_first,
        } => {
            let pair = if *over_first {
                vec![Symbol::over(*id), Symbol::under(*id)]
            } else {
                vec![Symbol::under(*id), Symbol::over(*id)]
            };
            insert_symbols(d, BTreeMap::from([(*position, pair)]), &[(*id, *sign)])
        }
        Move::R2Insert {
            crossings: [a, b],
            position,
            under_position,
            sign,
            antiparallel,
        } => {
            if position == under_position || a == b {
                return Err(invalid());
            }
            let unders = if *antiparallel {
                vec![Symbol::under(*b), Symbol::under(*a)]
            } else {
                vec![Symbol::under(*a), Symbol::under(*b)]
            };
            let insertions = BTreeMap::from([
                (*position, vec![Symbol::over(*a), Symbol::over(*b)]),
                (*under_position, unders),
            ]);
            insert_symbols(d, insertions, &[(*a, *sign), (*b, sign.flip())])
        }
    }
}

/// Replays a move trace step by step.
pub fn replay(d: &Diagram, trace: &[Move]) -> Result<Diagram> {
    trace
        .iter()
        .try_fold(d.clone(), |acc, mv| apply_move(&acc, mv))
}

/// Outcome of [`simplify_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplification {
    pub diagram: Diagram,
    pub trace: Vec<Move>,
    pub states_explored: usize,
    /// True when the search stopped on a budget cap.
    pub exhausted: bool,
}

/// Greedy R1/R2 reduction, then (if enabled) budgeted search. Returns the
/// diagram with the fewest crossings found.
pub fn simplify(d: &Diagram, budget: &MoveBudget) -> Diagram {
    simplify_traced(d, budget).diagram
}

pub fn simplify_traced(d: &Diagram, budget: &MoveBudget) -> Simplification {
    let (reduced, mut trace) = greedy_reduce(d);
    if reduced.crossing_count() == 0 || !budget.explores() {
        return Simplification {
            diagram: reduced,
            trace,
            states_explored: 1,
            exhausted: false,
        };
    }
    let found = breadth_first(&reduced, budget);
    trace.extend(found.trace);
    Simplification {
        diagram: found.diagram,
        trace,
        states_explored: found.states_explored,
        exhausted: found.exhausted,
    }
}

fn greedy_reduce(d: &Diagram) -> (Diagram, Vec<Move>) {
    let mut current = d.clone();
    let mut trace = Vec::new();
    loop {
        let next = r1_deletions(&current)
            .into_iter()
            .next()
            .or_else(|| r2_deletions(&current).into_iter().next());
        let Some(mv) = next else { break };
        current = apply_move(&current, &mv).expect("detected move applies");
        trace.push(mv);
    }
    (current, trace)
}

struct Node {
    diagram: Diagram,
    parent: Option<usize>,
    mv: Option<Move>,
    depth: usize,
}

fn is_better(candidate: &Diagram, best: &Diagram) -> bool {
    (candidate.crossing_count(), candidate.serialize()) < (best.crossing_count(), best.serialize())
}

fn breadth_first(start: &Diagram, budget: &MoveBudget) -> Simplification {
    let ceiling = start.crossing_count() + MAX_INSERTION_SURPLUS;
    let mut nodes = vec![Node {
        diagram: start.clone(),
        parent: None,
        mv: None,
        depth: 0,
    }];
    let mut visited: HashSet<String> = HashSet::from([start.serialize()]);
    let mut queue = VecDeque::from([0usize]);
    let mut best = 0usize;
    let mut exhausted = false;

    'search: while let Some(idx) = queue.pop_front() {
        if nodes[idx].depth >= budget.max_depth {
            exhausted = true;
            continue;
        }
        let current = nodes[idx].diagram.clone();
        let mut candidates = r1_deletions(&current);
        candidates.extend(r2_deletions(&current));
        if budget.enable_r3 {
            candidates.extend(r3_moves(&current));
        }
        if budget.enable_r2_insertion && current.crossing_count() + 2 <= ceiling {
            candidates.extend(r2_insertions(&current));
        }
        for mv in candidates {
            let next = apply_move(&current, &mv).expect("generated move applies");
            if !visited.insert(next.serialize()) {
                continue;
            }
            if nodes.len() >= budget.max_states {
                exhausted = true;
                break 'search;
            }
            let done = next.crossing_count() == 0;
            nodes.push(Node {
                diagram: next,
                parent: Some(idx),
                mv: Some(mv),
                depth: nodes[idx].depth + 1,
            });
            let new_idx = nodes.len() - 1;
            if is_better(&nodes[new_idx].diagram, &nodes[best].diagram) {
                best = new_idx;
            }
            if done {
                exhausted = false;
                break 'search;
            }
            queue.push_back(new_idx);
        }
    }

    let mut trace = Vec::new();
    let mut cursor = best;
    while let Some(parent) = nodes[cursor].parent {
        trace.push(nodes[cursor].mv.clone().expect("non-root node has a move"));
        cursor = parent;
    }
    trace.reverse();
    Simplification {
        diagram: nodes[best].diagram.clone(),
        trace,
        states_explored: nodes.len(),
        exhausted,
    }
}

/// Evidence that a diagram is not a trivial link.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Span {
        total_span: u64,
    },
    LinkingNumber {
        i: usize,
        j: usize,
        doubled_lk: i64,
    },
    Writhe {
        component: usize,
        spectrum: WritheSpectrum,
    },
}

impl Certificate {
    /// Recomputes the certified invariant on `d`; true when still nonzero.
    pub fn holds_for(&self, d: &Diagram) -> bool {
        match self {
            Certificate::Span { .. } => invariants::total_span(d) != 0,
            Certificate::LinkingNumber { i, j, .. } => invariants::pair_link_data(d, *i, *j)
                .map(|p| p.doubled_linking_number() != 0)
                .unwrap_or(false),
            Certificate::Writhe { component, .. } => d
                .extract_component_knot(*component)
                .and_then(|k| invariants::nth_writhes(&k))
                .map(|s| !s.is_empty())
                .unwrap_or(false),
        }
    }
}

/// First nonzero invariant among total span, pairwise linking numbers and
/// per-component writhe spectra.
pub fn nontriviality_certificate(d: &Diagram) -> Option<Certificate> {
    let pairs = invariants::pair_summaries(d);
    let total_span: u64 = pairs.iter().map(|p| p.span).sum();
    if total_span != 0 {
        return Some(Certificate::Span { total_span });
    }
    if let Some(p) = pairs.iter().find(|p| p.doubled_lk != 0) {
        return Some(Certificate::LinkingNumber {
            i: p.i,
            j: p.j,
            doubled_lk: p.doubled_lk,
        });
    }
    for component in 0..d.component_count() {
        if d.self_crossing_count(component) < 2 {
            continue;
        }
        let knot = d.extract_component_knot(component).expect("index in range");
        let spectrum = invariants::nth_writhes(&knot).expect("one component");
        if !spectrum.is_empty() {
            return Some(Certificate::Writhe {
                component,
                spectrum,
            });
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TrivialityVerdict {
    Trivial {
        trace: Vec<Move>,
        states_explored: usize,
    },
    NonTrivial {
        certificate: Certificate,
    },
    Unknown {
        states_explored: usize,
    },
}

impl TrivialityVerdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TrivialityVerdict::Trivial { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TrivialityVerdict::Unknown { .. })
    }
}

/// Three-valued triviality test: an invariant certificate proves
/// nontriviality, reaching a crossing-free diagram proves triviality.
pub fn is_trivial(d: &Diagram, budget: &MoveBudget) -> TrivialityVerdict {
    if let Some(certificate) = nontriviality_certificate(d) {
        return TrivialityVerdict::NonTrivial { certificate };
    }
    let s = simplify_traced(d, budget);
    if s.diagram.crossing_count() == 0 {
        TrivialityVerdict::Trivial {
            trace: s.trace,
            states_explored: s.states_explored,
        }
    } else {
        TrivialityVerdict::Unknown {
            states_explored: s.states_explored,
        }
    }
}

/// Applies `k` random R1/R2 insertions, deterministically from `seed`.
pub fn random_inflate(d: &Diagram, k: usize, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = d.clone();
    for _ in 0..k {
        let gaps = all_gaps(&current);
        let next = current.max_crossing_id() + 1;
        let sign = if rng.gen_bool(0.5) {
            Sign::Positive
        } else {
            Sign::Negative
        };
        let use_r2 = gaps.len() >= 2 && rng.gen_bool(0.5);
        let mv = if use_r2 {
            let over_gap = gaps[rng.gen_range(0..gaps.len())];
            let mut under_gap = gaps[rng.gen_range(0..gaps.len() - 1)];
            if under_gap == over_gap {
                under_gap = gaps[gaps.len() - 1];
            }
            Move::R2Insert {
                crossings: [next, next + 1],
                position: over_gap,
                under_position: under_gap,
                sign,
                antiparallel: rng.gen_bool(0.5),
            }
        } else {
            Move::R1Insert {
                crossings: [next],
                position: gaps[rng.gen_range(0..gaps.len())],
                sign,
                over_first: rng.gen_bool(0.5),
            }
        };
        current = apply_move(&current, &mv).expect("generated insertion applies");
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_gauss_code;

    fn d(s: &str) -> Diagram {
        parse_gauss_code(s).unwrap()
    }

    fn ids(v: &[CrossingId]) -> BTreeSet<CrossingId> {
        v.iter().copied().collect()
    }

    #[test]
    fn virtualize_examples() {
        assert_eq!(
            virtualize(&d("O1+ / U1+"), &ids(&[1])).unwrap(),
            Diagram::unlink(2)
        );
        assert_eq!(
            virtualize(&d("O1+ O2+ U1+ U2+"), &ids(&[2])).unwrap(),
            d("O1+ U1+")
        );
        let t = d("O1+ O2+ U1+ U2+");
        assert_eq!(virtualize(&t, &BTreeSet::new()).unwrap(), t);
        assert_eq!(virtualize(&t, &ids(&[5])), Err(Error::UnknownCrossing(5)));
        let counted = d("% v=1\nO1+ O2+ U1+ U2+");
        assert_eq!(
            virtualize(&counted, &ids(&[1])).unwrap().virtual_count(),
            Some(2)
        );
    }

    #[test]
    fn change_examples() {
        assert_eq!(
            change_crossings(&d("O1+ U1+"), &ids(&[1])).unwrap(),
            d("U1- O1-")
        );
        let t = d("O1+ O2+ U1+ U2+");
        let changed = change_crossings(&t, &ids(&[2])).unwrap();
        assert_eq!(changed, d("O1+ U2- U1+ O2-"));
        assert_eq!(change_crossings(&changed, &ids(&[2])).unwrap(), t);
        assert_eq!(
            change_crossings(&t, &ids(&[9])),
            Err(Error::UnknownCrossing(9))
        );
    }

    #[test]
    fn simplify_examples() {
        let b = MoveBudget::default();
        assert_eq!(simplify(&d("O1+ U1+"), &b).crossing_count(), 0);
        assert_eq!(simplify(&d("O1+ U2- U1+ O2-"), &b).crossing_count(), 0);
        let t = d("O1+ O2+ U1+ U2+");
        assert_eq!(simplify(&t, &b), t);
    }

    #[test]
    fn r2_requires_opposite_signs() {
        assert!(r2_deletions(&d("O1+ O2+ / U1+ U2+")).is_empty());
        assert_eq!(r2_deletions(&d("O1+ O2- / U1+ U2-")).len(), 1);
        assert_eq!(r2_deletions(&d("O1+ O2- / U2- U1+")).len(), 1);
        // Over endpoints adjacent but under endpoints split.
        assert!(r2_deletions(&d("O1+ O2- / U1+ O3+ U2- O4+ / U3+ U4+")).is_empty());
    }

    #[test]
    fn r3_round_trip() {
        // Top x,y; middle Ux Oz; bottom Uy Uz, with x first everywhere.
        let base = d("O1+ O2+ O9+ / U1+ O3+ O8+ / U2+ U3+ U9+ U8+");
        let moves = r3_moves(&base);
        assert_eq!(moves.len(), 1);
        let after = apply_move(&base, &moves[0]).unwrap();
        assert_eq!(
            after.serialize(),
            "O2+ O1+ O9+ / O3+ U1+ O8+ / U3+ U2+ U9+ U8+"
        );
        let back = r3_moves(&after)
            .into_iter()
            .find(|m| {
                let mut ids = m.crossings().to_vec();
                ids.sort_unstable();
                ids == [1, 2, 3]
            })
            .unwrap();
        assert_eq!(apply_move(&after, &back).unwrap(), base);
    }

    #[test]
    fn r3_rejects_inadmissible_signs() {
        let bad = d("O1+ O2+ O9+ / U1+ O3- O8+ / U2+ U3- U9+ U8+");
        assert!(r3_moves(&bad).is_empty());
    }

    #[test]
    fn triviality_examples() {
        let b = MoveBudget::default();
        assert!(is_trivial(&Diagram::unlink(3), &b).is_trivial());
        match is_trivial(&d("O1+ O2+ U1+ U2+"), &b) {
            TrivialityVerdict::NonTrivial {
                certificate: Certificate::Writhe { spectrum, .. },
            } => {
                assert_eq!(spectrum.get(1), 1);
                assert_eq!(spectrum.get(-1), 1);
            }
            other => panic!("unexpected verdict {other:?}"),
        }
        assert!(matches!(
            is_trivial(&d("O1+ / U1+"), &b),
            TrivialityVerdict::NonTrivial {
                certificate: Certificate::Span { total_span: 1 }
            }
        ));
    }

    #[test]
    fn inflate_examples() {
        let one = random_inflate(&Diagram::unlink(1), 1, 3);
        assert_eq!(one.crossing_count(), 1);
        let c = one.crossings().next().unwrap();
        assert!(c.is_self());
        let hopf = d("O1+ / U1+");
        assert_eq!(random_inflate(&hopf, 0, 9), hopf);
        let big = random_inflate(&hopf, 5, 42);
        assert_eq!(big.component_count(), 2);
        assert!(big.crossing_count() > 1);
        assert_eq!(invariants::total_span(&big), 1);
        assert_eq!(random_inflate(&hopf, 5, 42), big);
    }

    #[test]
    fn traces_replay() {
        let b = MoveBudget::default();
        let inflated = random_inflate(&Diagram::unlink(2), 6, 11);
        if let TrivialityVerdict::Trivial { trace, .. } = is_trivial(&inflated, &b) {
            assert_eq!(replay(&inflated, &trace).unwrap().crossing_count(), 0);
        }
    }

    #[test]
    fn search_with_r3_unlocks_reduction() {
        // An unknot diagram with no R1/R2 deletion that needs an R3 move first.
        let base = d("O1+ O2+ O9+ / U1+ O3+ O8+ / U2+ U3+ U9+ U8+");
        let greedy = simplify(&base, &MoveBudget::default());
        assert_eq!(greedy.crossing_count(), base.crossing_count());
        let budget = MoveBudget {
            enable_r3: true,
            ..MoveBudget::default()
        };
        let s = simplify_traced(&base, &budget);
        assert_eq!(replay(&base, &s.trace).unwrap(), s.diagram);
        assert!(s.diagram.crossing_count() <= base.crossing_count());
    }
}
