//! Diagram invariants: linking number, span, crossing index, n-th writhes,
//! warping degree and the per-pair quantity `ℓ`.
//!
//! Spans over several components are summed over unordered pairs `{i, j}`,
//! each pair once.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss::{CrossingId, Diagram, Role};

/// Linking-crossing counts of a component pair, classified while traversing
/// the first component: `r` for over passes, `l` for under passes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PairLinkData {
    pub r_plus: u32,
    pub r_minus: u32,
    pub l_plus: u32,
    pub l_minus: u32,
}

impl PairLinkData {
    /// `r₊ − r₋ − l₊ + l₋`, whose absolute value is the span.
    pub fn signed_span(&self) -> i64 {
        self.r_plus as i64 - self.r_minus as i64 - self.l_plus as i64 + self.l_minus as i64
    }

    pub fn span(&self) -> u64 {
        self.signed_span().unsigned_abs()
    }

    pub fn doubled_linking_number(&self) -> i64 {
        self.r_plus as i64 + self.l_plus as i64 - self.r_minus as i64 - self.l_minus as i64
    }

    pub fn total(&self) -> u32 {
        self.r_plus + self.r_minus + self.l_plus + self.l_minus
    }
}

/// Summary of one unordered component pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairSummary {
    pub i: usize,
    pub j: usize,
    pub link_data: PairLinkData,
    pub span: u64,
    pub doubled_lk: i64,
    pub ell_doubled: u64,
}

/// `J_n` for every `n ≠ 0` with a nonzero value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WritheSpectrum {
    entries: BTreeMap<i64, i64>,
}

impl WritheSpectrum {
    pub fn from_entries(entries: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut spectrum = WritheSpectrum::default();
        for (n, value) in entries {
            spectrum.add(n, value);
        }
        spectrum
    }

    fn add(&mut self, n: i64, value: i64) {
        if n == 0 || value == 0 {
            return;
        }
        let slot = self.entries.entry(n).or_insert(0);
        *slot += value;
        if *slot == 0 {
            self.entries.remove(&n);
        }
    }

    pub fn get(&self, n: i64) -> i64 {
        self.entries.get(&n).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<i64, i64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ_n |J_n|`.
    pub fn abs_sum(&self) -> u64 {
        self.entries.values().map(|v| v.unsigned_abs()).sum()
    }

    /// True when `J_k = J_{−k}` for every `k`.
    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(&k, &v)| self.get(-k) == v)
    }

    /// The spectrum under the opposite index-side convention: `n ↦ −n`.
    pub fn mirrored_indices(&self) -> Self {
        Self::from_entries(self.entries.iter().map(|(&k, &v)| (-k, v)))
    }
}

/// Which chord endpoint on the arc `over(c) → under(c)` counts on the `r` side.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum IndexSide {
    /// A chord whose over endpoint lies on the arc counts on the `r` side.
    #[default]
    OverOnArc,
    /// The mirrored convention; negates every index.
    UnderOnArc,
}

/// `Σ sgn(c)` over all linking crossings, i.e. `2·lk`.
pub fn doubled_linking_number(d: &Diagram) -> i64 {
    d.crossings()
        .filter(|c| c.is_linking())
        .map(|c| c.sign.value())
        .sum()
}

pub fn pair_link_data(d: &Diagram, i: usize, j: usize) -> Result<PairLinkData> {
    d.check_pair(i, j)?;
    let mut data = PairLinkData::default();
    for sym in &d.components()[i] {
        let c = d
            .crossing(sym.crossing)
            .expect("symbol refers to a crossing");
        let other = c.slot(sym.role.flip()).component;
        if other != j {
            continue;
        }
        let positive = c.sign.value() > 0;
        match (sym.role, positive) {
            (Role::Over, true) => data.r_plus += 1,
            (Role::Over, false) => data.r_minus += 1,
            (Role::Under, true) => data.l_plus += 1,
            (Role::Under, false) => data.l_minus += 1,
        }
    }
    Ok(data)
}

pub fn pair_span(d: &Diagram, i: usize, j: usize) -> Result<u64> {
    Ok(pair_link_data(d, i, j)?.span())
}

/// `2·ℓ` for the pair, via `max(0, 2|lk| − span)`.
pub fn pair_ell_doubled(d: &Diagram, i: usize, j: usize) -> Result<u64> {
    let data = pair_link_data(d, i, j)?;
    Ok(ell_doubled_from(data.doubled_linking_number(), data.span()))
}

fn ell_doubled_from(doubled_lk: i64, span: u64) -> u64 {
    doubled_lk.unsigned_abs().saturating_sub(span)
}

/// Every unordered pair `i < j` in lexicographic order, including pairs
/// without linking crossings.
pub fn pair_summaries(d: &Diagram) -> Vec<PairSummary> {
    let n = d.component_count();
    let mut table: BTreeMap<(usize, usize), PairLinkData> = BTreeMap::new();
    for c in d.crossings() {
        let Some((i, j)) = c.pair() else { continue };
        let data = table.entry((i, j)).or_default();
        let role_on_i = c.role_on(i).unwrap();
        match (role_on_i, c.sign.value() > 0) {
            (Role::Over, true) => data.r_plus += 1,
            (Role::Over, false) => data.r_minus += 1,
            (Role::Under, true) => data.l_plus += 1,
            (Role::Under, false) => data.l_minus += 1,
        }
    }
    (0..n)
        .tuple_combinations()
        .map(|(i, j)| {
            let link_data = table.get(&(i, j)).copied().unwrap_or_default();
            let span = link_data.span();
            let doubled_lk = link_data.doubled_linking_number();
            PairSummary {
                i,
                j,
                link_data,
                span,
                doubled_lk,
                ell_doubled: ell_doubled_from(doubled_lk, span),
            }
        })
        .collect()
}

pub fn total_span(d: &Diagram) -> u64 {
    pair_summaries(d).iter().map(|p| p.span).sum()
}

/// Index of the chord of crossing `c` in a knot diagram.
pub fn index_of_crossing(knot: &Diagram, c: CrossingId) -> Result<i64> {
    index_of_crossing_with(knot, c, IndexSide::default())
}

pub fn index_of_crossing_with(knot: &Diagram, c: CrossingId, side: IndexSide) -> Result<i64> {
    knot.check_knot()?;
    let chord = knot.crossing(c).ok_or(Error::UnknownCrossing(c))?;
    let len = knot.components()[0].len();
    let start = chord.over.index;
    let arc_len = (chord.under.index + len - start) % len;
    let on_arc = |pos: usize| {
        let offset = (pos + len - start) % len;
        offset > 0 && offset < arc_len
    };
    let mut index = 0;
    for other in knot.crossings().filter(|o| o.id != c) {
        let over_in = on_arc(other.over.index);
        let under_in = on_arc(other.under.index);
        if over_in == under_in {
            continue;
        }
        let r_side = match side {
            IndexSide::OverOnArc => over_in,
            IndexSide::UnderOnArc => under_in,
        };
        let contribution = other.sign.value();
        index += if r_side { contribution } else { -contribution };
    }
    Ok(index)
}

pub fn nth_writhes(knot: &Diagram) -> Result<WritheSpectrum> {
    nth_writhes_with(knot, IndexSide::default())
}

pub fn nth_writhes_with(knot: &Diagram, side: IndexSide) -> Result<WritheSpectrum> {
    knot.check_knot()?;
    let mut spectrum = WritheSpectrum::default();
    for c in knot.crossings() {
        let ind = index_of_crossing_with(knot, c.id, side)?;
        spectrum.add(ind, c.sign.value());
    }
    Ok(spectrum)
}

/// Writhe spectrum of every component, computed on its self crossings only.
pub fn component_writhes(d: &Diagram) -> Vec<WritheSpectrum> {
    (0..d.component_count())
        .map(|i| {
            let knot = d.extract_component_knot(i).expect("index in range");
            nth_writhes(&knot).expect("one component")
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WarpingOptions {
    /// Also minimize over every ordering of the components.
    pub minimize_component_order: bool,
}

pub fn warping_degree(d: &Diagram) -> u64 {
    warping_degree_with(d, WarpingOptions::default())
}

pub fn warping_degree_with(d: &Diagram, options: WarpingOptions) -> u64 {
    let self_term: u64 = (0..d.component_count())
        .map(|i| min_self_warping(d, i))
        .sum();
    let identity: Vec<usize> = (0..d.component_count()).collect();
    let linking_term = if options.minimize_component_order {
        identity
            .iter()
            .copied()
            .permutations(identity.len())
            .map(|order| linking_warping(d, &order))
            .min()
            .unwrap_or(0)
    } else {
        linking_warping(d, &identity)
    };
    self_term + linking_term
}

/// Linking crossings that are under on whichever of their two components
/// comes first in `order` (`order[k]` is the component at rank `k`).
fn linking_warping(d: &Diagram, order: &[usize]) -> u64 {
    let mut rank = vec![0; order.len()];
    for (r, &comp) in order.iter().enumerate() {
        rank[comp] = r;
    }
    d.crossings()
        .filter(|c| c.is_linking() && rank[c.under.component] < rank[c.over.component])
        .count() as u64
}

/// Self crossings of component `i` met first at the under endpoint when the
/// traversal starts at position `start`.
pub(crate) fn self_warping_from(d: &Diagram, i: usize, start: usize) -> u64 {
    let len = d.components()[i].len();
    if len == 0 {
        return 0;
    }
    d.crossings()
        .filter(|c| c.is_self() && c.over.component == i)
        .filter(|c| (c.under.index + len - start) % len < (c.over.index + len - start) % len)
        .count() as u64
}

fn min_self_warping(d: &Diagram, i: usize) -> u64 {
    let len = d.components()[i].len();
    (0..len.max(1))
        .map(|start| self_warping_from(d, i, start))
        .min()
        .unwrap_or(0)
}
