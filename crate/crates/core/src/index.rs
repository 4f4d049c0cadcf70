//! Exact values used by the bounds: half-integers and unknotting-index tuples
//! compared in dictionary order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Serialize, Serializer};

/// An exact multiple of one half, stored doubled.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    doubled: i64,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { doubled: 0 };

    pub const fn from_doubled(doubled: i64) -> Self {
        Self { doubled }
    }

    pub const fn from_int(value: i64) -> Self {
        Self { doubled: 2 * value }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn abs(self) -> Self {
        Self::from_doubled(self.doubled.abs())
    }

    pub fn ceil(self) -> i64 {
        self.doubled.div_euclid(2) + self.doubled.rem_euclid(2)
    }

    pub fn floor(self) -> i64 {
        self.doubled.div_euclid(2)
    }

    /// Decimal rendering, e.g. `"3"` or `"-1.5"`.
    pub fn to_decimal_string(self) -> String {
        let sign = if self.doubled < 0 { "-" } else { "" };
        let magnitude = self.doubled.unsigned_abs();
        if magnitude.is_multiple_of(2) {
            format!("{sign}{}", magnitude / 2)
        } else {
            format!("{sign}{}.5", magnitude / 2)
        }
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;

    fn add(self, rhs: Self) -> Self {
        Self::from_doubled(self.doubled + rhs.doubled)
    }
}

impl AddAssign for HalfInteger {
    fn add_assign(&mut self, rhs: Self) {
        self.doubled += rhs.doubled;
    }
}

impl std::iter::Sum for HalfInteger {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl Serialize for HalfInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("HalfInteger", 2)?;
        s.serialize_field("doubled", &self.doubled)?;
        s.serialize_field("value", &self.to_decimal_string())?;
        s.end()
    }
}

/// An unknotting index `(m, n)`: `m` virtualizations and `n` crossing changes.
///
/// The derived ordering is the dictionary order, `m` first.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct UnknottingIndex {
    pub m: u64,
    pub n: u64,
}

impl UnknottingIndex {
    pub const fn new(m: u64, n: u64) -> Self {
        Self { m, n }
    }
}

impl fmt::Display for UnknottingIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// A lower-bound tuple whose second coordinate may be a half-integer.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndexBound {
    pub m: u64,
    pub n: HalfInteger,
}

impl IndexBound {
    pub const fn new(m: u64, n: HalfInteger) -> Self {
        Self { m, n }
    }

    /// Smallest integer tuple that is not below this bound.
    pub fn ceil(self) -> UnknottingIndex {
        UnknottingIndex::new(self.m, self.n.ceil().max(0) as u64)
    }
}

impl From<UnknottingIndex> for IndexBound {
    fn from(u: UnknottingIndex) -> Self {
        IndexBound::new(u.m, HalfInteger::from_int(u.n as i64))
    }
}

impl fmt::Display for IndexBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// Dictionary-order comparison of two index tuples, with exact rational `n`.
pub fn compare_dict(a: impl Into<IndexBound>, b: impl Into<IndexBound>) -> Ordering {
    a.into().cmp(&b.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary_order_examples() {
        assert_eq!(
            compare_dict(UnknottingIndex::new(0, 2), UnknottingIndex::new(1, 0)),
            Ordering::Less
        );
        assert_eq!(
            compare_dict(UnknottingIndex::new(1, 3), UnknottingIndex::new(1, 5)),
            Ordering::Less
        );
        assert_eq!(
            compare_dict(UnknottingIndex::new(2, 1), UnknottingIndex::new(2, 1)),
            Ordering::Equal
        );
    }

    #[test]
    fn half_integer_rounding() {
        assert_eq!(HalfInteger::from_doubled(7).ceil(), 4);
        assert_eq!(HalfInteger::from_doubled(7).floor(), 3);
        assert_eq!(HalfInteger::from_doubled(-3).ceil(), -1);
        assert_eq!(HalfInteger::from_doubled(-3).floor(), -2);
        assert_eq!(HalfInteger::from_doubled(-3).to_decimal_string(), "-1.5");
        assert_eq!(HalfInteger::from_doubled(4).to_string(), "2");
        assert_eq!(HalfInteger::from_doubled(3).to_string(), "3/2");
    }

    #[test]
    fn rational_comparison_against_integers() {
        let lower = IndexBound::new(0, HalfInteger::from_doubled(3));
        assert_eq!(
            compare_dict(lower, UnknottingIndex::new(0, 1)),
            Ordering::Greater
        );
        assert_eq!(
            compare_dict(lower, UnknottingIndex::new(0, 2)),
            Ordering::Less
        );
        assert_eq!(lower.ceil(), UnknottingIndex::new(0, 2));
    }

    #[test]
    fn serializes_doubled_with_decimal() {
        let json = serde_json::to_string(&HalfInteger::from_doubled(13)).unwrap();
        assert_eq!(json, r#"{"doubled":13,"value":"6.5"}"#);
    }
}
