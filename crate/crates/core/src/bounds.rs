//! Lower and upper bounds for the unknotting index of a diagram.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss::Diagram;
use crate::index::{HalfInteger, IndexBound, UnknottingIndex};
use crate::invariants::{self, PairSummary, WritheSpectrum};

/// `(total span, Σ pair ℓ + ½ Σ_i Σ_k |J_k(D_i)|)`, exact.
pub fn lower_bound(d: &Diagram) -> IndexBound {
    let pairs = invariants::pair_summaries(d);
    let writhes = invariants::component_writhes(d);
    lower_bound_from(&pairs, &writhes)
}

fn lower_bound_from(pairs: &[PairSummary], writhes: &[WritheSpectrum]) -> IndexBound {
    let span: u64 = pairs.iter().map(|p| p.span).sum();
    let ell: u64 = pairs.iter().map(|p| p.ell_doubled).sum();
    let writhe: u64 = writhes.iter().map(WritheSpectrum::abs_sum).sum();
    // ell_doubled is always even, so the pair part is integral.
    IndexBound::new(span, HalfInteger::from_doubled((ell + writhe) as i64))
}

/// The two knot bounds from the writhe spectrum, kept separately because
/// `(1, 0)` and `(0, ½Σ|J_k|)` come from different arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnotLowerBound {
    /// Some `J_k ≠ J_{-k}`, which forces at least one virtualization.
    pub asymmetric: bool,
    pub writhe_bound: IndexBound,
}

impl KnotLowerBound {
    pub fn asymmetry_bound(&self) -> Option<IndexBound> {
        self.asymmetric
            .then(|| IndexBound::new(1, HalfInteger::ZERO))
    }

    /// The dictionary-greater of the applicable bounds.
    pub fn effective(&self) -> IndexBound {
        self.asymmetry_bound()
            .map_or(self.writhe_bound, |a| a.max(self.writhe_bound))
    }
}

pub fn knot_lower_bound(knot: &Diagram) -> Result<KnotLowerBound> {
    let spectrum = invariants::nth_writhes(knot)?;
    Ok(KnotLowerBound {
        asymmetric: !spectrum.is_symmetric(),
        writhe_bound: IndexBound::new(0, HalfInteger::from_doubled(spectrum.abs_sum() as i64)),
    })
}

/// `(v, d(D))`, defined only when the virtual crossing count is known.
pub fn upper_bound(d: &Diagram) -> Option<UnknottingIndex> {
    d.virtual_count()
        .map(|v| UnknottingIndex::new(u64::from(v), invariants::warping_degree(d)))
}

/// `(v - 1, ⌊c/2⌋)` for a knot with at least one virtual crossing.
pub fn knot_upper_bound(knot: &Diagram) -> Result<UnknottingIndex> {
    knot.check_knot()?;
    match knot.virtual_count() {
        None => Err(Error::MissingMetadata),
        Some(0) => Err(Error::NotApplicable(
            "a knot diagram without virtual crossings".into(),
        )),
        Some(v) => Ok(UnknottingIndex::new(
            u64::from(v) - 1,
            knot.crossing_count() as u64 / 2,
        )),
    }
}

/// Both bound tuples together with the invariants they were computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub lower: IndexBound,
    pub lower_ceiling: UnknottingIndex,
    pub upper: Option<UnknottingIndex>,
    pub total_span: u64,
    pub warping_degree: u64,
    pub pairs: Vec<PairSummary>,
    pub writhes: Vec<WritheSpectrum>,
    /// Present for one-component diagrams.
    pub knot_lower: Option<KnotLowerBound>,
    /// Present for one-component diagrams with at least one virtual crossing.
    pub knot_upper: Option<UnknottingIndex>,
}

pub fn bound_report(d: &Diagram) -> BoundReport {
    let pairs = invariants::pair_summaries(d);
    let writhes = invariants::component_writhes(d);
    let lower = lower_bound_from(&pairs, &writhes);
    let is_knot = d.component_count() == 1;
    BoundReport {
        lower,
        lower_ceiling: lower.ceil(),
        upper: upper_bound(d),
        total_span: lower.m,
        warping_degree: invariants::warping_degree(d),
        pairs,
        writhes,
        knot_lower: is_knot.then(|| knot_lower_bound(d).expect("one component")),
        knot_upper: if is_knot {
            knot_upper_bound(d).ok()
        } else {
            None
        },
    }
}
