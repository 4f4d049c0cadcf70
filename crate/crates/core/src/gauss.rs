//! Gauss diagrams of oriented multi-component virtual link diagrams.
//!
//! A diagram is an ordered list of components, each a cyclic sequence of
//! crossing endpoints in traversal order. Every classical crossing appears
//! exactly twice, once as its over endpoint and once as its under endpoint.
//! Virtual crossings are not represented: virtual moves never change the
//! Gauss diagram, so only an optional count of them is carried as metadata.
//!
//! Text encoding, one symbol per endpoint:
//!
//! ```text
//! % v=1            optional header: number of virtual crossings
//! # comment lines are ignored
//! O1+ O2+ U1+ U2+  components separated by "/", tokens by spaces or commas
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type CrossingId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Self {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// One entry of a component's cyclic sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Symbol {
    pub crossing: CrossingId,
    pub role: Role,
}

impl Symbol {
    pub const fn new(crossing: CrossingId, role: Role) -> Self {
        Self { crossing, role }
    }

    pub const fn over(crossing: CrossingId) -> Self {
        Self::new(crossing, Role::Over)
    }

    pub const fn under(crossing: CrossingId) -> Self {
        Self::new(crossing, Role::Under)
    }
}

/// Location of an endpoint: component index and position in its sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Slot {
    pub component: usize,
    pub index: usize,
}

impl Slot {
    pub const fn new(component: usize, index: usize) -> Self {
        Self { component, index }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub crossing_id: CrossingId,
    pub role: Role,
    pub component_index: usize,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: CrossingId,
    pub sign: Sign,
    pub over: Slot,
    pub under: Slot,
}

impl Crossing {
    pub fn is_self(&self) -> bool {
        self.over.component == self.under.component
    }

    pub fn is_linking(&self) -> bool {
        !self.is_self()
    }

    pub fn slot(&self, role: Role) -> Slot {
        match role {
            Role::Over => self.over,
            Role::Under => self.under,
        }
    }

    /// The role this crossing plays on `component`, if it touches it.
    /// For a self crossing the over role is reported.
    pub fn role_on(&self, component: usize) -> Option<Role> {
        if self.over.component == component {
            Some(Role::Over)
        } else if self.under.component == component {
            Some(Role::Under)
        } else {
            None
        }
    }

    /// The unordered component pair of a linking crossing, smaller index first.
    pub fn pair(&self) -> Option<(usize, usize)> {
        let (a, b) = (self.over.component, self.under.component);
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some((a, b)),
            std::cmp::Ordering::Greater => Some((b, a)),
            std::cmp::Ordering::Equal => None,
        }
    }
}

/// A validated Gauss diagram. Immutable; all operations return new values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    components: Vec<Vec<Symbol>>,
    crossings: BTreeMap<CrossingId, Crossing>,
    virtual_count: Option<u32>,
}

impl Diagram {
    /// Builds and validates a diagram from component sequences and crossing signs.
    pub fn new(
        components: Vec<Vec<Symbol>>,
        signs: &BTreeMap<CrossingId, Sign>,
        virtual_count: Option<u32>,
    ) -> Result<Self> {
        let mut seen: BTreeMap<CrossingId, (Option<Slot>, Option<Slot>)> = BTreeMap::new();
        for (ci, comp) in components.iter().enumerate() {
            for (pi, sym) in comp.iter().enumerate() {
                if sym.crossing == 0 {
                    return Err(Error::ZeroCrossingId);
                }
                let entry = seen.entry(sym.crossing).or_default();
                let target = match sym.role {
                    Role::Over => &mut entry.0,
                    Role::Under => &mut entry.1,
                };
                if target.is_some() {
                    return Err(Error::BadMultiplicity(sym.crossing));
                }
                *target = Some(Slot::new(ci, pi));
            }
        }
        let mut crossings = BTreeMap::new();
        for (&id, &(over, under)) in &seen {
            let (Some(over), Some(under)) = (over, under) else {
                return Err(Error::BadMultiplicity(id));
            };
            let sign = *signs.get(&id).ok_or(Error::BadMultiplicity(id))?;
            crossings.insert(
                id,
                Crossing {
                    id,
                    sign,
                    over,
                    under,
                },
            );
        }
        if let Some(&extra) = signs.keys().find(|id| !seen.contains_key(id)) {
            return Err(Error::BadMultiplicity(extra));
        }
        Ok(Self {
            components,
            crossings,
            virtual_count,
        })
    }

    /// Rebuilds slots for sequences known to be valid.
    pub(crate) fn assemble(
        components: Vec<Vec<Symbol>>,
        signs: &BTreeMap<CrossingId, Sign>,
        virtual_count: Option<u32>,
    ) -> Self {
        match Self::new(components, signs, virtual_count) {
            Ok(d) => d,
            Err(e) => panic!("internal diagram construction produced an invalid diagram: {e}"),
        }
    }

    /// A diagram of `n` crossing-free components.
    pub fn unlink(n: usize) -> Self {
        Self {
            components: vec![Vec::new(); n],
            crossings: BTreeMap::new(),
            virtual_count: None,
        }
    }

    pub fn components(&self) -> &[Vec<Symbol>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossing(&self, id: CrossingId) -> Option<&Crossing> {
        self.crossings.get(&id)
    }

    pub fn crossings(&self) -> impl Iterator<Item = &Crossing> + '_ {
        self.crossings.values()
    }

    pub fn crossing_ids(&self) -> Vec<CrossingId> {
        self.crossings.keys().copied().collect()
    }

    pub fn signs(&self) -> BTreeMap<CrossingId, Sign> {
        self.crossings.iter().map(|(&id, c)| (id, c.sign)).collect()
    }

    pub fn virtual_count(&self) -> Option<u32> {
        self.virtual_count
    }

    pub fn with_virtual_count(&self, virtual_count: Option<u32>) -> Self {
        Self {
            virtual_count,
            ..self.clone()
        }
    }

    pub fn max_crossing_id(&self) -> CrossingId {
        self.crossings.keys().next_back().copied().unwrap_or(0)
    }

    pub fn symbol_at(&self, slot: Slot) -> Symbol {
        self.components[slot.component][slot.index]
    }

    pub fn endpoints(&self) -> impl Iterator<Item = Endpoint> + '_ {
        self.components.iter().enumerate().flat_map(|(ci, comp)| {
            comp.iter().enumerate().map(move |(pi, sym)| Endpoint {
                crossing_id: sym.crossing,
                role: sym.role,
                component_index: ci,
                position: pi,
            })
        })
    }

    pub fn self_crossing_count(&self, component: usize) -> usize {
        self.crossings
            .values()
            .filter(|c| c.is_self() && c.over.component == component)
            .count()
    }

    pub fn linking_crossing_count(&self) -> usize {
        self.crossings.values().filter(|c| c.is_linking()).count()
    }

    pub fn linking_crossing_ids(&self) -> Vec<CrossingId> {
        self.crossings
            .values()
            .filter(|c| c.is_linking())
            .map(|c| c.id)
            .collect()
    }

    pub(crate) fn check_component(&self, index: usize) -> Result<()> {
        if index < self.components.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                components: self.components.len(),
            })
        }
    }

    pub(crate) fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_component(i)?;
        self.check_component(j)?;
        if i == j {
            return Err(Error::SamePair(i));
        }
        Ok(())
    }

    pub(crate) fn check_knot(&self) -> Result<()> {
        if self.components.len() == 1 {
            Ok(())
        } else {
            Err(Error::NotAKnot(self.components.len()))
        }
    }

    /// Deletes every listed crossing (both endpoints), closing the gaps.
    /// `virtual_count` is carried over unchanged.
    pub(crate) fn without_crossings(&self, removed: &BTreeSet<CrossingId>) -> Self {
        if removed.is_empty() {
            return self.clone();
        }
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .filter(|s| !removed.contains(&s.crossing))
                    .copied()
                    .collect()
            })
            .collect();
        let signs = self
            .crossings
            .iter()
            .filter(|(id, _)| !removed.contains(id))
            .map(|(&id, c)| (id, c.sign))
            .collect();
        Self::assemble(components, &signs, self.virtual_count)
    }

    /// Keeps the listed components, in the listed order, and deletes every
    /// crossing with an endpoint elsewhere. The virtual crossing count is dropped.
    pub fn restrict_to(&self, keep: &[usize]) -> Result<Self> {
        for &k in keep {
            self.check_component(k)?;
        }
        let kept: BTreeSet<usize> = keep.iter().copied().collect();
        let removed: BTreeSet<CrossingId> = self
            .crossings
            .values()
            .filter(|c| !kept.contains(&c.over.component) || !kept.contains(&c.under.component))
            .map(|c| c.id)
            .collect();
        let components = keep
            .iter()
            .map(|&k| {
                self.components[k]
                    .iter()
                    .filter(|s| !removed.contains(&s.crossing))
                    .copied()
                    .collect()
            })
            .collect();
        let signs = self
            .crossings
            .iter()
            .filter(|(id, _)| !removed.contains(id))
            .map(|(&id, c)| (id, c.sign))
            .collect();
        Ok(Self::assemble(components, &signs, None))
    }

    /// The two-component subdiagram `K_i ∪ K_j`, component `i` first.
    pub fn extract_pair(&self, i: usize, j: usize) -> Result<Self> {
        self.check_pair(i, j)?;
        self.restrict_to(&[i, j])
    }

    /// Component `i` as a knot diagram: its self crossings only.
    pub fn extract_component_knot(&self, i: usize) -> Result<Self> {
        self.check_component(i)?;
        self.restrict_to(&[i])
    }

    /// Rotates the stored cyclic sequence of one component left by `k`.
    pub fn rotate_component(&self, component: usize, k: usize) -> Result<Self> {
        self.check_component(component)?;
        let mut components = self.components.clone();
        let comp = &mut components[component];
        if !comp.is_empty() {
            let k = k % comp.len();
            comp.rotate_left(k);
        }
        Ok(Self::assemble(
            components,
            &self.signs(),
            self.virtual_count,
        ))
    }

    /// Canonical text form; parses back to an identical diagram.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if let Some(v) = self.virtual_count {
            out.push_str(&format!("% v={v}\n"));
        }
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|s| {
                        let sign = self.crossings[&s.crossing].sign;
                        format!("{}{}{}", s.role.letter(), s.crossing, sign.symbol())
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        out.push_str(&comps.join(" / "));
        out
    }
}

/// Serializes as the Gauss code text.
impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&Diagram::serialize(self))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_gauss_code(s)
    }
}

/// Parses the text encoding described in the module docs.
pub fn parse_gauss_code(text: &str) -> Result<Diagram> {
    let mut virtual_count = None;
    let mut components: Vec<Vec<Symbol>> = vec![Vec::new()];
    let mut signs: BTreeMap<CrossingId, Sign> = BTreeMap::new();
    let mut seen_content = false;

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let trimmed = raw.trim_start();
        if trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('%') {
            if seen_content || virtual_count.is_some() {
                return Err(syntax(line_no, 1, "header must come first and appear once"));
            }
            virtual_count = Some(parse_header(rest, line_no)?);
            continue;
        }
        let chars: Vec<(usize, char)> = raw.char_indices().collect();
        let mut k = 0;
        while k < chars.len() {
            let (byte, ch) = chars[k];
            let column = raw[..byte].chars().count() + 1;
            if ch.is_whitespace() || ch == ',' {
                k += 1;
                continue;
            }
            seen_content = true;
            if ch == '/' {
                components.push(Vec::new());
                k += 1;
                continue;
            }
            let role = match ch {
                'O' | 'o' => Role::Over,
                'U' | 'u' => Role::Under,
                other => {
                    return Err(syntax(
                        line_no,
                        column,
                        &format!("expected O or U, found {other:?}"),
                    ))
                }
            };
            k += 1;
            let digits_start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            if k == digits_start {
                return Err(syntax(line_no, column, "missing crossing number"));
            }
            let digits: String = chars[digits_start..k].iter().map(|&(_, c)| c).collect();
            let id: CrossingId = digits
                .parse()
                .map_err(|_| syntax(line_no, column, "crossing number out of range"))?;
            if id == 0 {
                return Err(syntax(line_no, column, "crossing numbers must be positive"));
            }
            let sign = match chars.get(k).map(|&(_, c)| c) {
                Some('+') => Sign::Positive,
                Some('-') | Some('\u{2212}') => Sign::Negative,
                _ => return Err(syntax(line_no, column, "missing crossing sign (+ or -)")),
            };
            k += 1;
            if let Some(&(_, next)) = chars.get(k) {
                if !(next.is_whitespace() || next == ',' || next == '/') {
                    return Err(syntax(line_no, column, "malformed symbol"));
                }
            }
            if let Some(&prev) = signs.get(&id) {
                if prev != sign {
                    return Err(Error::SignMismatch(id));
                }
            }
            signs.insert(id, sign);
            components
                .last_mut()
                .expect("at least one component")
                .push(Symbol::new(id, role));
        }
    }
    Diagram::new(components, &signs, virtual_count)
}

fn parse_header(rest: &str, line_no: usize) -> Result<u32> {
    let compact: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
    let value = compact
        .strip_prefix("v=")
        .ok_or_else(|| syntax(line_no, 1, "header must read \"% v=<count>\""))?;
    value.parse().map_err(|_| {
        syntax(
            line_no,
            1,
            "virtual crossing count must be a non-negative integer",
        )
    })
}

fn syntax(line: usize, column: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        parse_gauss_code(s).unwrap()
    }

    #[test]
    fn virtual_hopf_parses() {
        let hopf = d("O1+ / U1+");
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(hopf.crossing_count(), 1);
        let c = hopf.crossing(1).unwrap();
        assert!(c.is_linking());
        assert_eq!(c.sign, Sign::Positive);
    }

    #[test]
    fn virtual_trefoil_parses() {
        let t = d("O1+ O2+ U1+ U2+");
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.crossing_count(), 2);
        assert!(t.crossings().all(|c| c.is_self()));
        assert_eq!(t.crossing(2).unwrap().over, Slot::new(0, 1));
        assert_eq!(t.crossing(2).unwrap().under, Slot::new(0, 3));
    }

    #[test]
    fn sign_mismatch_is_rejected() {
        assert_eq!(parse_gauss_code("O1+ / U1−"), Err(Error::SignMismatch(1)));
        assert_eq!(parse_gauss_code("O1+ / U1-"), Err(Error::SignMismatch(1)));
    }

    #[test]
    fn multiplicity_errors() {
        assert_eq!(parse_gauss_code("O1+ O1+"), Err(Error::BadMultiplicity(1)));
        assert_eq!(parse_gauss_code("O1+"), Err(Error::BadMultiplicity(1)));
        assert_eq!(parse_gauss_code("U2- U2-"), Err(Error::BadMultiplicity(2)));
    }

    #[test]
    fn syntax_errors() {
        for bad in [
            "X1+",
            "O+",
            "O1",
            "O0+",
            "O1+x U1+",
            "% w=3\nO1+ U1+",
            "O1+ U1+\n% v=1",
        ] {
            assert!(
                matches!(parse_gauss_code(bad), Err(Error::Syntax { .. })),
                "{bad} should be a syntax error"
            );
        }
    }

    #[test]
    fn empty_components_are_allowed() {
        let e = d("");
        assert_eq!(e.component_count(), 1);
        assert_eq!(e.crossing_count(), 0);
        let three = d("O1+ / U1+ / ");
        assert_eq!(three.component_count(), 3);
        assert!(three.components()[2].is_empty());
        assert_eq!(d(" / ").component_count(), 2);
    }

    #[test]
    fn header_comments_and_commas() {
        let t = d("# virtual trefoil\n% v = 1\nO1+, O2+,\nU1+ U2+\n");
        assert_eq!(t.virtual_count(), Some(1));
        assert_eq!(t, d("% v=1\nO1+ O2+ U1+ U2+"));
        assert_eq!(d("O1+/U1+"), d("O1+ / U1+"));
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(Diagram::unlink(1).serialize(), "");
        assert_eq!(d("O1+ / U1+").serialize(), "O1+ / U1+");
        assert_eq!(d("% v=3\nO1- U1-").serialize(), "% v=3\nO1- U1-");
        let t = d("O1+ O2+ U1+ U2+").with_virtual_count(Some(3));
        assert!(t.serialize().starts_with("% v=3\n"));
        assert_eq!(d(&t.serialize()), t);
    }

    #[test]
    fn extract_pair_examples() {
        let hopf = d("% v=2\nO1+ / U1+");
        let pair = hopf.extract_pair(0, 1).unwrap();
        assert_eq!(pair, hopf.with_virtual_count(None));

        let three = d("O1+ / U1+ / ");
        let p = three.extract_pair(0, 2).unwrap();
        assert_eq!(p.component_count(), 2);
        assert_eq!(p.crossing_count(), 0);

        let chain = d("O1+ / U1+ O2+ / U2+");
        assert_eq!(chain.extract_pair(1, 2).unwrap(), d("O2+ / U2+"));
        assert_eq!(chain.extract_pair(2, 1).unwrap(), d("U2+ / O2+"));
    }

    #[test]
    fn extract_pair_errors() {
        let chain = d("O1+ / U1+ O2+ / U2+");
        assert!(matches!(
            chain.extract_pair(0, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(chain.extract_pair(1, 1), Err(Error::SamePair(1)));
    }

    #[test]
    fn extract_component_knot_examples() {
        let t = d("O1+ O2+ U1+ U2+");
        assert_eq!(t.extract_component_knot(0).unwrap(), t);
        assert_eq!(
            d("O1+ / U1+").extract_component_knot(0).unwrap(),
            Diagram::unlink(1)
        );
        assert_eq!(
            d("O1+ O3+ U3+ / U1+").extract_component_knot(0).unwrap(),
            d("O3+ U3+")
        );
        assert!(matches!(
            t.extract_component_knot(1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn crossing_counts_partition() {
        let x = d("O1+ O2- U1+ O3+ / U2- U3+ O4- U4-");
        let selfs: usize = (0..x.component_count())
            .map(|i| x.self_crossing_count(i))
            .sum();
        assert_eq!(selfs + x.linking_crossing_count(), x.crossing_count());
    }

    #[test]
    fn rotation_keeps_crossings() {
        let t = d("O1+ O2+ U1+ U2+");
        let r = t.rotate_component(0, 1).unwrap();
        assert_eq!(r.serialize(), "O2+ U1+ U2+ O1+");
        assert_eq!(r.crossing(1).unwrap().over, Slot::new(0, 3));
    }
}
