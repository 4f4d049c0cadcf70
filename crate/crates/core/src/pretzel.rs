//! Labeled standard pretzel diagrams `L(p_1, …, p_n)` and the closed-form
//! unknotting indices of their virtualizations.
//!
//! Twist region `i` (0-based) holds `p_i` crossings stacked top to bottom.
//! Neighbouring regions are joined along the top and the bottom, and the
//! outermost ports are joined around the back. Crossing ids are the labels:
//! region `i` owns a contiguous block of labels, numbered top to bottom in
//! even regions and bottom to top in odd ones.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::gauss::{CrossingId, Diagram, Role, Sign, Symbol};
use crate::index::{IndexBound, UnknottingIndex};
use crate::invariants;
use crate::moves::{self, MoveBudget};
use crate::search::{self, SearchCaps, SearchOutcome, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledPretzel {
    pub params: Vec<u32>,
    pub diagram: Diagram,
    pub label_to_crossing: BTreeMap<u32, CrossingId>,
    /// 1-based strand (twist region) of every label.
    pub strand_of_label: BTreeMap<u32, usize>,
}

impl LabeledPretzel {
    pub fn label_count(&self) -> u32 {
        self.params.iter().sum()
    }

    pub fn strand_count(&self) -> usize {
        self.params.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Left,
    Right,
}

impl Column {
    fn flip(self) -> Self {
        match self {
            Column::Left => Column::Right,
            Column::Right => Column::Left,
        }
    }

    fn slot(self) -> usize {
        match self {
            Column::Left => 0,
            Column::Right => 1,
        }
    }
}

fn check_params(p: &[u32]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::EmptyParams);
    }
    if p.contains(&0) {
        return Err(Error::PreconditionViolated(
            "pretzel parameters must be positive".into(),
        ));
    }
    Ok(())
}

fn prefix(p: &[u32], region: usize) -> u32 {
    p[..region].iter().sum()
}

fn label_of(p: &[u32], region: usize, level: u32) -> u32 {
    if region.is_multiple_of(2) {
        prefix(p, region) + level + 1
    } else {
        prefix(p, region) + p[region] - level
    }
}

/// The neighbour of a top or bottom port: right ports join the left port of
/// the next region, cyclically.
fn partner(region: usize, col: Column, n: usize) -> (usize, Column) {
    match col {
        Column::Right => ((region + 1) % n, Column::Left),
        Column::Left => ((region + n - 1) % n, Column::Right),
    }
}

/// Direction of travel through a crossing when moving down from `above`.
fn down_vector(above: Column) -> (i64, i64) {
    match above {
        Column::Left => (1, -1),
        Column::Right => (-1, -1),
    }
}

/// Builds the labeled standard diagram. Every component is traced starting
/// downward from an unused top-right port, then from unused top-left ports.
pub fn pretzel(p: &[u32]) -> Result<LabeledPretzel> {
    check_params(p)?;
    let n = p.len();
    let mut top_used = vec![[false; 2]; n];
    let mut components: Vec<Vec<Symbol>> = Vec::new();
    let mut over_vec: BTreeMap<CrossingId, (i64, i64)> = BTreeMap::new();
    let mut under_vec: BTreeMap<CrossingId, (i64, i64)> = BTreeMap::new();

    let starts = [Column::Right, Column::Left]
        .into_iter()
        .flat_map(|c| (0..n).map(move |r| (r, c)));
    for (start_region, start_col) in starts {
        if top_used[start_region][start_col.slot()] {
            continue;
        }
        let mut component = Vec::new();
        let (mut region, mut col) = (start_region, start_col);
        loop {
            // Downward pass through `region`, entering at the top.
            top_used[region][col.slot()] = true;
            for level in 0..p[region] {
                let above = col;
                let id = label_of(p, region, level);
                let role = if above == Column::Right {
                    Role::Over
                } else {
                    Role::Under
                };
                let v = down_vector(above);
                match role {
                    Role::Over => over_vec.insert(id, v),
                    Role::Under => under_vec.insert(id, v),
                };
                component.push(Symbol::new(id, role));
                col = col.flip();
            }
            // Along the bottom to the next region, then upward through it.
            (region, col) = partner(region, col, n);
            for level in (0..p[region]).rev() {
                let above = col.flip();
                let id = label_of(p, region, level);
                let role = if above == Column::Right {
                    Role::Over
                } else {
                    Role::Under
                };
                let (x, y) = down_vector(above);
                match role {
                    Role::Over => over_vec.insert(id, (-x, -y)),
                    Role::Under => under_vec.insert(id, (-x, -y)),
                };
                component.push(Symbol::new(id, role));
                col = above;
            }
            top_used[region][col.slot()] = true;
            (region, col) = partner(region, col, n);
            if (region, col) == (start_region, start_col) {
                break;
            }
        }
        components.push(component);
    }

    let signs: BTreeMap<CrossingId, Sign> = over_vec
        .iter()
        .map(|(&id, &(ox, oy))| {
            let (ux, uy) = under_vec[&id];
            let det = ox * uy - oy * ux;
            (
                id,
                if det > 0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                },
            )
        })
        .collect();
    let diagram = Diagram::assemble(components, &signs, Some(0));
    let label_to_crossing = signs.keys().map(|&id| (id, id)).collect();
    let strand_of_label = (0..n)
        .flat_map(|r| strand_range(p, r).map(move |l| (l, r + 1)))
        .collect();
    Ok(LabeledPretzel {
        params: p.to_vec(),
        diagram,
        label_to_crossing,
        strand_of_label,
    })
}

fn strand_range(p: &[u32], region: usize) -> RangeInclusive<u32> {
    let start = prefix(p, region) + 1;
    start..=start + p[region] - 1
}

/// Labels owned by strand `i` (1-based).
pub fn strand_labels(p: &[u32], i: usize) -> Result<RangeInclusive<u32>> {
    if i == 0 || i > p.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            components: p.len(),
        });
    }
    Ok(strand_range(p, i - 1))
}

/// Virtualizes the crossings carrying `labels`; the result records exactly
/// `|labels|` virtual crossings.
pub fn virtualize_labels(lp: &LabeledPretzel, labels: &BTreeSet<u32>) -> Result<Diagram> {
    let ids = labels
        .iter()
        .map(|l| {
            lp.label_to_crossing
                .get(l)
                .copied()
                .ok_or(Error::UnknownLabel(*l))
        })
        .collect::<Result<BTreeSet<_>>>()?;
    moves::virtualize(&lp.diagram, &ids)
}

fn even_label_count(p: &[u32]) -> u32 {
    p.iter().sum::<u32>() / 2
}

fn odd_label_count(p: &[u32]) -> u32 {
    p.iter().sum::<u32>().div_ceil(2)
}

fn violated(msg: impl Into<String>) -> Error {
    Error::PreconditionViolated(msg.into())
}

fn two_class_index(total: u32, k: u32, k1: u32) -> UnknottingIndex {
    let (k, k1, total) = (i64::from(k), i64::from(k1), i64::from(total));
    let m = (k - 2 * k1).unsigned_abs();
    let n = if k > 2 * k1 {
        total / 2 - k + k1
    } else {
        total / 2 - k1
    };
    UnknottingIndex::new(m, n as u64)
}

/// `n` even, every `p_i` odd, `k` virtualized crossings of which `k1` carry
/// even labels.
pub fn thm31_index(p: &[u32], k: u32, k1: u32) -> Result<UnknottingIndex> {
    check_params(p)?;
    if !p.len().is_multiple_of(2) || p.iter().any(|x| x % 2 == 0) {
        return Err(violated("needs an even number of odd parameters"));
    }
    let total: u32 = p.iter().sum();
    if k1 > k || k > total || k1 > even_label_count(p) || k - k1 > odd_label_count(p) {
        return Err(violated(format!(
            "counts k={k}, k1={k1} are not realizable"
        )));
    }
    Ok(two_class_index(total, k, k1))
}

/// `n` even, every `p_i` even; strand `i` has `k_even[i]` even-labeled and
/// `k_odd[i]` odd-labeled virtualized crossings.
pub fn thm32_index(p: &[u32], k_even: &[u32], k_odd: &[u32]) -> Result<UnknottingIndex> {
    check_params(p)?;
    if !p.len().is_multiple_of(2) || p.iter().any(|x| x % 2 != 0) {
        return Err(violated("needs an even number of even parameters"));
    }
    if k_even.len() != p.len() || k_odd.len() != p.len() {
        return Err(violated("one count per strand is required"));
    }
    let mut m = 0u64;
    let mut doubled_n = 0u64;
    for ((&pi, &ki), &kpi) in p.iter().zip(k_even).zip(k_odd) {
        if ki > pi / 2 || kpi > pi / 2 {
            return Err(violated(format!(
                "counts ({ki}, {kpi}) exceed strand size {pi}"
            )));
        }
        let diff = u64::from(ki.abs_diff(kpi));
        m += diff;
        doubled_n += u64::from(pi - ki - kpi) - diff;
    }
    Ok(UnknottingIndex::new(m, doubled_n / 2))
}

/// Two-strand case with `p1 + p2` even.
pub fn cor33_index(p1: u32, p2: u32, k: u32, k1: u32) -> Result<UnknottingIndex> {
    check_params(&[p1, p2])?;
    let total = p1 + p2;
    if !total.is_multiple_of(2) {
        return Err(violated("needs p1 + p2 even"));
    }
    if k1 > k || k > total || k1 > total / 2 || k - k1 > total / 2 {
        return Err(violated(format!(
            "counts k={k}, k1={k1} are not realizable"
        )));
    }
    Ok(two_class_index(total, k, k1))
}

/// Which closed form applies to a parameter list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Even number of strands, all odd.
    OddStrands,
    /// Even number of strands, all even.
    EvenStrands,
}

pub fn family_of(p: &[u32]) -> Result<Family> {
    check_params(p)?;
    if !p.len().is_multiple_of(2) {
        return Err(violated("the closed forms need an even number of strands"));
    }
    if p.iter().all(|x| x % 2 == 1) {
        Ok(Family::OddStrands)
    } else if p.iter().all(|x| x % 2 == 0) {
        Ok(Family::EvenStrands)
    } else {
        Err(violated("the closed forms need parameters of equal parity"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
pub enum LabelCounts {
    Thm31 { k: u32, k1: u32 },
    Thm32 { k_even: Vec<u32>, k_odd: Vec<u32> },
}

pub fn label_counts(lp: &LabeledPretzel, labels: &BTreeSet<u32>) -> Result<LabelCounts> {
    Ok(match family_of(&lp.params)? {
        Family::OddStrands => LabelCounts::Thm31 {
            k: labels.len() as u32,
            k1: labels.iter().filter(|l| *l % 2 == 0).count() as u32,
        },
        Family::EvenStrands => {
            let mut k_even = vec![0; lp.strand_count()];
            let mut k_odd = vec![0; lp.strand_count()];
            for l in labels {
                let strand = *lp.strand_of_label.get(l).ok_or(Error::UnknownLabel(*l))?;
                if l % 2 == 0 {
                    k_even[strand - 1] += 1;
                } else {
                    k_odd[strand - 1] += 1;
                }
            }
            LabelCounts::Thm32 { k_even, k_odd }
        }
    })
}

/// Closed-form index for a virtualization label set.
pub fn formula_index(lp: &LabeledPretzel, labels: &BTreeSet<u32>) -> Result<UnknottingIndex> {
    match label_counts(lp, labels)? {
        LabelCounts::Thm31 { k, k1 } => thm31_index(&lp.params, k, k1),
        LabelCounts::Thm32 { k_even, k_odd } => thm32_index(&lp.params, &k_even, &k_odd),
    }
}

/// Per strand, the labels still present after virtualizing `labels`, split by parity.
fn residual_by_strand(lp: &LabeledPretzel, labels: &BTreeSet<u32>) -> Vec<(Vec<u32>, Vec<u32>)> {
    (0..lp.strand_count())
        .map(|r| {
            strand_range(&lp.params, r)
                .filter(|l| !labels.contains(l))
                .partition(|l| l % 2 == 0)
        })
        .collect()
}

/// Virtualizes the surplus parity class inside every strand.
fn balancing_set(lp: &LabeledPretzel, labels: &BTreeSet<u32>) -> BTreeSet<CrossingId> {
    residual_by_strand(lp, labels)
        .into_iter()
        .flat_map(|(even, odd)| {
            let (long, short) = if even.len() > odd.len() {
                (even, odd)
            } else {
                (odd, even)
            };
            let surplus = long.len() - short.len();
            long.into_iter().take(surplus)
        })
        .collect()
}

/// Sign-rule candidates for one pair, ordered so that strands holding the
/// largest surplus of the candidate class come first.
fn ranked_candidates(
    lp: &LabeledPretzel,
    labels: &BTreeSet<u32>,
    candidates: &[CrossingId],
) -> Vec<CrossingId> {
    let residual = residual_by_strand(lp, labels);
    let mut surplus: Vec<i64> = vec![0; lp.strand_count()];
    let class_of = |id: CrossingId| id % 2;
    let Some(&first) = candidates.first() else {
        return Vec::new();
    };
    let class = class_of(first);
    for (r, (even, odd)) in residual.iter().enumerate() {
        let (same, other) = if class == 0 { (even, odd) } else { (odd, even) };
        surplus[r] = same.len() as i64 - other.len() as i64;
    }
    let mut pool: Vec<CrossingId> = candidates.to_vec();
    let mut ranked = Vec::with_capacity(pool.len());
    while !pool.is_empty() {
        let (pos, _) = pool
            .iter()
            .enumerate()
            .max_by_key(|(_, id)| (surplus[lp.strand_of_label[id] - 1], std::cmp::Reverse(**id)))
            .expect("pool is non-empty");
        let id = pool.remove(pos);
        surplus[lp.strand_of_label[&id] - 1] -= 1;
        ranked.push(id);
    }
    ranked
}

/// Searches for an explicit witness realizing `target` on the diagram with
/// `labels` virtualized: virtualize `target.m` further crossings (first the
/// per-strand balancing set, then sign-rule choices), change one parity class
/// of the residual crossings, and reduce by R1/R2 moves.
pub fn construct_witness(
    lp: &LabeledPretzel,
    labels: &BTreeSet<u32>,
    target: UnknottingIndex,
    attempts: usize,
) -> Result<Option<Witness>> {
    let base = virtualize_labels(lp, labels)?;
    let reductions = search::span_reductions(&base);
    let per_pair: Vec<Vec<Vec<CrossingId>>> = reductions
        .iter()
        .map(|r| {
            ranked_candidates(lp, labels, &r.candidates)
                .into_iter()
                .combinations(r.needed)
                .take(attempts.max(1))
                .collect()
        })
        .collect();
    let sign_rule_sets = per_pair
        .into_iter()
        .multi_cartesian_product()
        .map(|parts| parts.into_iter().flatten().collect::<BTreeSet<_>>());
    let choices = std::iter::once(balancing_set(lp, labels)).chain(sign_rule_sets);
    // multi_cartesian_product of zero pairs yields nothing; the balancing set
    // already covers the span-zero case.
    for s in choices.take(attempts.max(1)) {
        if s.len() as u64 != target.m {
            continue;
        }
        let reduced = moves::virtualize(&base, &s)?;
        let residual = reduced.crossing_ids();
        for parity in [1, 0] {
            let t: BTreeSet<CrossingId> = residual
                .iter()
                .copied()
                .filter(|id| id % 2 == parity)
                .collect();
            if t.len() as u64 != target.n {
                continue;
            }
            let changed = moves::change_crossings(&reduced, &t)?;
            let simplified = moves::simplify_traced(&changed, &MoveBudget::default());
            if simplified.diagram.crossing_count() == 0 {
                return Ok(Some(Witness {
                    virtualized: s,
                    changed: t,
                    trace: simplified.trace,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    /// Subsets are taken in increasing bitmask order up to this many.
    pub max_subsets: usize,
    pub budget: MoveBudget,
    pub caps: SearchCaps,
    pub run_search: bool,
    pub witness_attempts: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_subsets: 1024,
            budget: MoveBudget::default(),
            caps: SearchCaps::default(),
            run_search: true,
            witness_attempts: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub exact: Option<UnknottingIndex>,
    pub lower: IndexBound,
    pub upper: UnknottingIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetCheck {
    pub labels: Vec<u32>,
    pub counts: LabelCounts,
    pub formula: UnknottingIndex,
    pub total_span: u64,
    pub lower_bound: IndexBound,
    pub witness: Option<Witness>,
    pub search: Option<SearchSummary>,
    /// Two-strand closed form on the same counts, when `n = 2`.
    pub cor33: Option<UnknottingIndex>,
    pub discrepancies: Vec<String>,
}

impl SubsetCheck {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub params: Vec<u32>,
    pub family: Family,
    pub total_subsets: u128,
    pub subsets_checked: usize,
    pub discrepancy_count: usize,
    pub checks: Vec<SubsetCheck>,
}

impl FamilyReport {
    pub fn all_passed(&self) -> bool {
        self.discrepancy_count == 0
    }
}

/// Checks one virtualization label set against the bounds, an explicit
/// witness and (optionally) the exact search.
pub fn check_subset(
    lp: &LabeledPretzel,
    labels: &BTreeSet<u32>,
    options: &VerifyOptions,
) -> Result<SubsetCheck> {
    let counts = label_counts(lp, labels)?;
    let formula = formula_index(lp, labels)?;
    let d = virtualize_labels(lp, labels)?;
    let total_span = invariants::total_span(&d);
    let lower = bounds::lower_bound(&d);
    let mut discrepancies = Vec::new();

    if formula.m != total_span {
        discrepancies.push(format!(
            "formula m = {} but total span = {total_span}",
            formula.m
        ));
    }
    if IndexBound::from(formula) != lower {
        discrepancies.push(format!(
            "formula {formula} differs from lower bound {lower}"
        ));
    }

    let witness = construct_witness(lp, labels, formula, options.witness_attempts)?;
    match &witness {
        Some(w) => {
            let end = w.replay(&d)?;
            if end.crossing_count() != 0 {
                discrepancies.push("witness replay leaves crossings".into());
            }
        }
        None => discrepancies.push(format!("no witness realizing {formula} found")),
    }

    let search = if options.run_search && d.crossing_count() <= options.caps.max_crossings {
        let r = search::unknotting_index(&d, &options.budget, &options.caps)?;
        let summary = match &r.outcome {
            SearchOutcome::Exact { m, n, .. } => SearchSummary {
                exact: Some(UnknottingIndex::new(*m, *n)),
                lower: UnknottingIndex::new(*m, *n).into(),
                upper: UnknottingIndex::new(*m, *n),
            },
            SearchOutcome::Interval { lower, upper, .. } => SearchSummary {
                exact: None,
                lower: *lower,
                upper: *upper,
            },
        };
        match summary.exact {
            Some(u) if u != formula => {
                discrepancies.push(format!("search found {u}, formula gives {formula}"))
            }
            Some(_) => {}
            None => discrepancies.push(format!(
                "search inconclusive between {} and {}",
                summary.lower, summary.upper
            )),
        }
        Some(summary)
    } else {
        None
    };

    let cor33 = if lp.params.len() == 2 {
        let k = labels.len() as u32;
        let k1 = labels.iter().filter(|l| *l % 2 == 0).count() as u32;
        let c = cor33_index(lp.params[0], lp.params[1], k, k1)?;
        if matches!(counts, LabelCounts::Thm31 { .. }) && c != formula {
            discrepancies.push(format!(
                "two-strand form gives {c}, formula gives {formula}"
            ));
        }
        Some(c)
    } else {
        None
    };

    Ok(SubsetCheck {
        labels: labels.iter().copied().collect(),
        counts,
        formula,
        total_span,
        lower_bound: lower,
        witness,
        search,
        cor33,
        discrepancies,
    })
}

/// Checks every virtualization subset (up to `options.max_subsets`) of the
/// standard diagram of `L(p)`.
pub fn verify_family(p: &[u32], options: &VerifyOptions) -> Result<FamilyReport> {
    let family = family_of(p)?;
    let lp = pretzel(p)?;
    let labels_total = lp.label_count();
    if labels_total >= 127 {
        return Err(Error::TooLarge(format!("{labels_total} labels")));
    }
    let total_subsets = 1u128 << labels_total;
    let count = total_subsets.min(options.max_subsets as u128) as u64;
    let mut checks = (0..count)
        .into_par_iter()
        .map(|mask| {
            let labels: BTreeSet<u32> = (1..=labels_total)
                .filter(|l| mask >> (l - 1) & 1 == 1)
                .collect();
            check_subset(&lp, &labels, options)
        })
        .collect::<Result<Vec<_>>>()?;
    checks.sort_by(|a, b| (a.labels.len(), &a.labels).cmp(&(b.labels.len(), &b.labels)));
    let discrepancy_count = checks.iter().filter(|c| !c.passed()).count();
    Ok(FamilyReport {
        params: p.to_vec(),
        family,
        total_subsets,
        subsets_checked: checks.len(),
        discrepancy_count,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn generator_examples() {
        let hopf = pretzel(&[1, 1]).unwrap();
        assert_eq!(hopf.diagram.component_count(), 2);
        assert_eq!(hopf.diagram.linking_crossing_count(), 2);
        assert_eq!(invariants::doubled_linking_number(&hopf.diagram).abs(), 2);
        let two = pretzel(&[2, 2]).unwrap();
        assert_eq!(two.diagram.component_count(), 2);
        assert_eq!(invariants::total_span(&two.diagram), 0);
        assert_eq!(invariants::doubled_linking_number(&two.diagram).abs(), 4);
        let big = pretzel(&[7, 5, 9, 11]).unwrap();
        assert_eq!(big.diagram.component_count(), 2);
        assert_eq!(big.diagram.crossing_count(), 32);
        assert_eq!(invariants::total_span(&big.diagram), 0);
        assert_eq!(big.diagram.virtual_count(), Some(0));
        assert_eq!(pretzel(&[]), Err(Error::EmptyParams));
    }

    #[test]
    fn linking_crossings_share_a_sign() {
        for p in [
            vec![1, 1],
            vec![3, 5],
            vec![1, 1, 1, 1],
            vec![2, 2],
            vec![2, 4, 2, 2],
        ] {
            let lp = pretzel(&p).unwrap();
            let signs: BTreeSet<Sign> = lp.diagram.crossings().map(|c| c.sign).collect();
            assert_eq!(signs.len(), 1, "{p:?}");
            assert!(lp.diagram.crossings().all(|c| c.is_linking()), "{p:?}");
        }
    }

    #[test]
    fn even_strands_join_neighbouring_components() {
        let p = [2, 4, 2, 2];
        let lp = pretzel(&p).unwrap();
        assert_eq!(lp.diagram.component_count(), 4);
        for c in lp.diagram.crossings() {
            let strand = lp.strand_of_label[&c.id];
            let expected = if strand == 1 {
                (0, 3)
            } else {
                (strand - 2, strand - 1)
            };
            assert_eq!(c.pair(), Some(expected));
        }
    }

    #[test]
    fn strand_label_examples() {
        assert_eq!(strand_labels(&[3, 2], 2).unwrap(), 4..=5);
        assert_eq!(strand_labels(&[7, 5, 9, 11], 3).unwrap(), 13..=21);
        assert_eq!(strand_labels(&[6], 1).unwrap(), 1..=6);
        assert!(matches!(
            strand_labels(&[3, 2], 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn virtualize_label_examples() {
        let hopf = pretzel(&[1, 1]).unwrap();
        let one = virtualize_labels(&hopf, &labels(&[1])).unwrap();
        assert_eq!(one.crossing_count(), 1);
        assert_eq!(invariants::total_span(&one), 1);
        assert_eq!(
            virtualize_labels(&hopf, &labels(&[]))
                .unwrap()
                .virtual_count(),
            Some(0)
        );
        assert_eq!(
            virtualize_labels(&hopf, &labels(&[3])),
            Err(Error::UnknownLabel(3))
        );
        let big = pretzel(&[7, 5, 9, 11]).unwrap();
        let chosen = labels(&[2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 1, 3, 5]);
        let d = virtualize_labels(&big, &chosen).unwrap();
        assert_eq!(invariants::total_span(&d), 7);
        assert_eq!(d.virtual_count(), Some(13));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(
            thm31_index(&[7, 5, 9, 11], 13, 10).unwrap(),
            UnknottingIndex::new(7, 6)
        );
        assert_eq!(
            thm31_index(&[1, 1], 0, 0).unwrap(),
            UnknottingIndex::new(0, 1)
        );
        assert_eq!(
            thm31_index(&[3, 3], 2, 1).unwrap(),
            UnknottingIndex::new(0, 2)
        );
        assert!(thm31_index(&[3, 3], 2, 3).is_err());
        assert!(thm31_index(&[3], 0, 0).is_err());
        assert_eq!(
            thm32_index(&[2, 2], &[0, 0], &[0, 0]).unwrap(),
            UnknottingIndex::new(0, 2)
        );
        assert_eq!(
            thm32_index(&[2, 2], &[1, 0], &[0, 0]).unwrap(),
            UnknottingIndex::new(1, 1)
        );
        assert_eq!(
            thm32_index(&[4, 2], &[0, 0], &[0, 0]).unwrap(),
            UnknottingIndex::new(0, 3)
        );
        assert!(thm32_index(&[2, 2], &[2, 0], &[0, 0]).is_err());
        assert_eq!(cor33_index(1, 1, 0, 0).unwrap(), UnknottingIndex::new(0, 1));
        assert_eq!(cor33_index(2, 2, 0, 0).unwrap(), UnknottingIndex::new(0, 2));
        assert_eq!(cor33_index(7, 5, 3, 0).unwrap(), UnknottingIndex::new(3, 3));
        assert!(cor33_index(7, 4, 0, 0).is_err());
    }

    #[test]
    fn calibration_for_odd_strands() {
        let p = [3, 1, 1, 3];
        let lp = pretzel(&p).unwrap();
        let total: u32 = p.iter().sum();
        for mask in 0u32..(1 << total) {
            let chosen: BTreeSet<u32> = (1..=total).filter(|l| mask >> (l - 1) & 1 == 1).collect();
            let k = chosen.len() as i64;
            let k1 = chosen.iter().filter(|l| *l % 2 == 0).count() as i64;
            let d = virtualize_labels(&lp, &chosen).unwrap();
            assert_eq!(invariants::total_span(&d) as i64, (k - 2 * k1).abs());
            assert_eq!(
                invariants::doubled_linking_number(&d).abs(),
                i64::from(total) - k
            );
        }
    }

    #[test]
    fn witness_for_worked_example() {
        let lp = pretzel(&[7, 5, 9, 11]).unwrap();
        let chosen = labels(&[2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 1, 3, 5]);
        let w = construct_witness(&lp, &chosen, UnknottingIndex::new(7, 6), 4096)
            .unwrap()
            .expect("witness");
        assert_eq!(w.index(), UnknottingIndex::new(7, 6));
        let d = virtualize_labels(&lp, &chosen).unwrap();
        assert_eq!(w.replay(&d).unwrap().crossing_count(), 0);
    }

    #[test]
    fn small_families_verify() {
        for p in [[1u32, 1], [1, 3]] {
            let r = verify_family(&p, &VerifyOptions::default()).unwrap();
            assert_eq!(r.subsets_checked, 1 << p.iter().sum::<u32>());
            assert!(
                r.all_passed(),
                "{:?}",
                r.checks.iter().find(|c| !c.passed())
            );
        }
    }
}
