//! Locally constant, compactly supported integer functions `C_c(Y, ℤ)`.
//!
//! On a Cantor component a function is a binary trie whose leaves carry
//! integer values; on a discrete component it is a finite map from point
//! indices to nonzero integers. Both are kept canonical, so derived
//! equality is equality of functions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cantor::{
    separating_point, BinaryWord, CantorError, CantorPoint, Cell, ClopenSet, ComponentId, Cylinder,
    PointValue, Space, SpacePoint,
};
use crate::trie::Trie;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZfunError {
    #[error(transparent)]
    Cantor(#[from] CantorError),
    #[error("functions live on different spaces")]
    SpaceMismatch,
    #[error("cell {0} lies outside the space")]
    CellOutsideSpace(String),
    #[error("point {0} lies outside the space")]
    PointOutsideSpace(String),
    #[error("enumeration is only defined on a single full Cantor component")]
    UnsupportedSpace,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum ComponentFn {
    Cantor(Trie<BigInt>),
    Discrete(BTreeMap<usize, BigInt>),
}

impl ComponentFn {
    fn is_zero(&self) -> bool {
        match self {
            ComponentFn::Cantor(t) => matches!(t, Trie::Leaf(v) if v.is_zero()),
            ComponentFn::Discrete(m) => m.is_empty(),
        }
    }

    fn add(&self, other: &ComponentFn) -> ComponentFn {
        match (self, other) {
            (ComponentFn::Cantor(a), ComponentFn::Cantor(b)) => {
                ComponentFn::Cantor(Trie::zip_with(a, b, &|x: &BigInt, y: &BigInt| x + y))
            }
            (ComponentFn::Discrete(a), ComponentFn::Discrete(b)) => {
                let mut out = a.clone();
                for (i, v) in b {
                    let e = out.entry(*i).or_insert_with(BigInt::zero);
                    *e += v;
                    if e.is_zero() {
                        out.remove(i);
                    }
                }
                ComponentFn::Discrete(out)
            }
            _ => unreachable!("component kinds are fixed by the shared space"),
        }
    }

    fn scale(&self, k: &BigInt) -> ComponentFn {
        match self {
            ComponentFn::Cantor(t) => ComponentFn::Cantor(t.map(&|v: &BigInt| v * k)),
            ComponentFn::Discrete(m) => ComponentFn::Discrete(if k.is_zero() {
                BTreeMap::new()
            } else {
                m.iter().map(|(i, v)| (*i, v * k)).collect()
            }),
        }
    }
}

/// An element of `C_c(Y, ℤ)` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocIntFun {
    space: Arc<Space>,
    parts: BTreeMap<ComponentId, ComponentFn>,
}

impl LocIntFun {
    pub fn zero(space: Arc<Space>) -> Self {
        LocIntFun {
            space,
            parts: BTreeMap::new(),
        }
    }

    /// `Σ value · 1_cell`; overlapping cells add up.
    pub fn make(space: Arc<Space>, cells: &[(Cell, BigInt)]) -> Result<Self, ZfunError> {
        let mut f = LocIntFun::zero(space);
        for (cell, value) in cells {
            let g = f.indicator_like(cell, value.clone())?;
            f = f.add_unchecked(&g);
        }
        Ok(f)
    }

    pub fn indicator(space: Arc<Space>, cell: &Cell) -> Result<Self, ZfunError> {
        LocIntFun::zero(space).indicator_like(cell, BigInt::from(1))
    }

    fn indicator_like(&self, cell: &Cell, value: BigInt) -> Result<LocIntFun, ZfunError> {
        if !self.space.contains_cell(cell) {
            return Err(ZfunError::CellOutsideSpace(cell.to_string()));
        }
        let part = match cell {
            Cell::Cylinder(c) => ComponentFn::Cantor(Trie::graft(
                c.word.bits(),
                Trie::leaf(value),
                &BigInt::zero(),
            )),
            Cell::Atom { index, .. } => {
                let mut m = BTreeMap::new();
                if !value.is_zero() {
                    m.insert(*index, value);
                }
                ComponentFn::Discrete(m)
            }
        };
        Ok(LocIntFun::from_parts(
            self.space.clone(),
            [(cell.component(), part)].into(),
        ))
    }

    pub(crate) fn from_parts(
        space: Arc<Space>,
        mut parts: BTreeMap<ComponentId, ComponentFn>,
    ) -> Self {
        parts.retain(|_, p| !p.is_zero());
        LocIntFun { space, parts }
    }

    /// Cantor-component trie, with zero for absent components.
    pub(crate) fn trie(&self, id: ComponentId) -> Trie<BigInt> {
        match self.parts.get(&id) {
            Some(ComponentFn::Cantor(t)) => t.clone(),
            _ => Trie::leaf(BigInt::zero()),
        }
    }

    pub(crate) fn atom_value(&self, id: ComponentId, index: usize) -> BigInt {
        match self.parts.get(&id) {
            Some(ComponentFn::Discrete(m)) => m.get(&index).cloned().unwrap_or_default(),
            _ => BigInt::zero(),
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn evaluate(&self, y: &SpacePoint) -> Result<BigInt, ZfunError> {
        if !self.space.contains_point(y) {
            return Err(ZfunError::PointOutsideSpace(y.to_string()));
        }
        Ok(match (&y.value, self.parts.get(&y.component)) {
            (PointValue::Cantor(x), Some(ComponentFn::Cantor(t))) => t.lookup(x.bits()).clone(),
            (PointValue::Discrete(i), Some(ComponentFn::Discrete(m))) => {
                m.get(i).cloned().unwrap_or_default()
            }
            _ => BigInt::zero(),
        })
    }

    /// Value on a cell on which the function is constant (any cell at
    /// depth ≥ [`LocIntFun::max_depth`]).
    pub fn value_on_cell(&self, cell: &Cell) -> BigInt {
        match cell {
            Cell::Cylinder(c) => match self.trie(c.component).subtrie(c.word.bits()) {
                Trie::Leaf(v) => v,
                Trie::Node(..) => panic!("function is not constant on {cell}"),
            },
            Cell::Atom { component, index } => self.atom_value(*component, *index),
        }
    }

    fn check_same_space(&self, other: &LocIntFun) -> Result<(), ZfunError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(ZfunError::SpaceMismatch)
        }
    }

    fn add_unchecked(&self, other: &LocIntFun) -> LocIntFun {
        let mut parts = self.parts.clone();
        for (id, p) in &other.parts {
            let sum = match parts.get(id) {
                Some(q) => q.add(p),
                None => p.clone(),
            };
            parts.insert(*id, sum);
        }
        LocIntFun::from_parts(self.space.clone(), parts)
    }

    pub fn add(&self, other: &LocIntFun) -> Result<LocIntFun, ZfunError> {
        self.check_same_space(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &LocIntFun) -> Result<LocIntFun, ZfunError> {
        self.add(&other.negate())
    }

    pub fn scale(&self, k: &BigInt) -> LocIntFun {
        let parts = self.parts.iter().map(|(id, p)| (*id, p.scale(k))).collect();
        LocIntFun::from_parts(self.space.clone(), parts)
    }

    pub fn negate(&self) -> LocIntFun {
        self.scale(&BigInt::from(-1))
    }

    pub fn equals(&self, other: &LocIntFun) -> Result<bool, ZfunError> {
        self.check_same_space(other)?;
        Ok(self.parts == other.parts)
    }

    /// The canonical cells with their nonzero values, component by component.
    pub fn cells(&self) -> Vec<(Cell, BigInt)> {
        let mut out = Vec::new();
        for (&component, p) in &self.parts {
            match p {
                ComponentFn::Cantor(t) => {
                    for (word, v) in t.leaves() {
                        if !v.is_zero() {
                            out.push((Cell::Cylinder(Cylinder { component, word }), v.clone()));
                        }
                    }
                }
                ComponentFn::Discrete(m) => out.extend(
                    m.iter()
                        .map(|(&index, v)| (Cell::Atom { component, index }, v.clone())),
                ),
            }
        }
        out
    }

    pub fn support(&self) -> ClopenSet {
        let cells: Vec<Cell> = self.cells().into_iter().map(|(c, _)| c).collect();
        ClopenSet::from_cells(&cells).expect("cells of one function share component kinds")
    }

    /// `f(Y)` as a finite set.
    pub fn image_values(&self) -> BTreeSet<BigInt> {
        let mut out: BTreeSet<BigInt> = self.cells().into_iter().map(|(_, v)| v).collect();
        if self.support() != self.space.whole() {
            out.insert(BigInt::zero());
        }
        out
    }

    /// Deepest Cantor cell of the canonical form (0 if there is none).
    pub fn max_depth(&self) -> usize {
        self.parts
            .values()
            .map(|p| match p {
                ComponentFn::Cantor(t) => t.depth(),
                ComponentFn::Discrete(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn to_doc(&self) -> FunctionDoc {
        let per = |id: ComponentId| -> ComponentCells {
            let cells = self
                .cells()
                .into_iter()
                .filter(|(c, _)| c.component() == id)
                .map(|(c, value)| match c {
                    Cell::Cylinder(cy) => CellValue::Word {
                        word: cy.word,
                        value,
                    },
                    Cell::Atom { index, .. } => CellValue::Index { index, value },
                })
                .collect();
            ComponentCells {
                component: id,
                cells,
            }
        };
        if self.space.components().len() == 1 {
            FunctionDoc::One(per(ComponentId(0)))
        } else {
            FunctionDoc::Many(self.space.ids().map(per).collect())
        }
    }

    pub fn from_doc(space: Arc<Space>, doc: &FunctionDoc) -> Result<Self, ZfunError> {
        let groups: Vec<&ComponentCells> = match doc {
            FunctionDoc::One(c) => vec![c],
            FunctionDoc::Many(cs) => cs.iter().collect(),
        };
        let mut cells = Vec::new();
        for g in groups {
            for cv in &g.cells {
                cells.push(match cv {
                    CellValue::Word { word, value } => (
                        Cell::Cylinder(Cylinder {
                            component: g.component,
                            word: word.clone(),
                        }),
                        value.clone(),
                    ),
                    CellValue::Index { index, value } => (
                        Cell::Atom {
                            component: g.component,
                            index: *index,
                        },
                        value.clone(),
                    ),
                });
            }
        }
        LocIntFun::make(space, &cells)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("function documents always serialize")
    }
}

/// Integers are written as JSON numbers when they fit in `i64` and as
/// decimal strings otherwise.
pub mod int_json {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(x) => Ok(BigInt::from(x)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellValue {
    Word {
        word: BinaryWord,
        #[serde(with = "int_json")]
        value: BigInt,
    },
    Index {
        index: usize,
        #[serde(with = "int_json")]
        value: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCells {
    pub component: ComponentId,
    pub cells: Vec<CellValue>,
}

/// JSON form of a function: one object for single-component spaces, an
/// array of per-component objects otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionDoc {
    One(ComponentCells),
    Many(Vec<ComponentCells>),
}

/// Witness that `δ_x` is not locally constant at scale `d`: a point `y ≠ x`
/// in the depth-`d` cylinder of `x` with `δ_x(x) = 1` and `δ_x(y) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaWitness {
    pub y: CantorPoint,
    pub value_at_x: i64,
    pub value_at_y: i64,
}

pub fn delta_witness(x: &CantorPoint, d: usize) -> DeltaWitness {
    let y = separating_point(x, d);
    let delta = |p: &CantorPoint| i64::from(p == x);
    DeltaWitness {
        value_at_x: delta(x),
        value_at_y: delta(&y),
        y,
    }
}

// Enumeration of C(X, ℤ).
//
// Stage 0 holds only the zero function. Stage s ≥ 1 holds the functions
// that are constant on depth-s cells with values in -s..=s, minus those of
// stage s-1. Within a stage, functions are ordered lexicographically by
// their value tuple over the 2^s depth-s cells (values ordered -s..=s).
// Stage s ends at cumulative index (2s+1)^(2^s).

fn stage_total(s: u32) -> u128 {
    let base = 2 * u128::from(s) + 1;
    base.pow(1 << s)
}

fn stage_start(s: u32) -> u128 {
    if s == 0 {
        0
    } else {
        stage_total(s - 1)
    }
}

fn stage_of(k: u128) -> u32 {
    (0..)
        .find(|&s| k < stage_total(s))
        .expect("every u64 index lies in stage 5 or below")
}

/// Number of completions of `prefix` (values in `-s..=s`, total length
/// `len`) that already belong to stage `s - 1`.
fn earlier_completions(prefix: &[i64], s: u32, len: usize) -> u128 {
    if s == 0 {
        return 0;
    }
    let bound = i64::from(s) - 1;
    if prefix.iter().any(|v| v.abs() > bound) {
        return 0;
    }
    if prefix.chunks_exact(2).any(|p| p[0] != p[1]) {
        return 0;
    }
    let mut remaining = len - prefix.len();
    if prefix.len() % 2 == 1 {
        remaining -= 1;
    }
    (2 * u128::from(s) - 1).pow((remaining / 2) as u32)
}

fn tuple_function(values: &[i64]) -> LocIntFun {
    let mut layer: Vec<Trie<BigInt>> = values
        .iter()
        .map(|&v| Trie::leaf(BigInt::from(v)))
        .collect();
    while layer.len() > 1 {
        layer = layer
            .chunks_exact(2)
            .map(|p| Trie::node(p[0].clone(), p[1].clone()))
            .collect();
    }
    let trie = layer.pop().expect("at least one cell");
    LocIntFun::from_parts(
        Arc::new(Space::cantor()),
        [(ComponentId(0), ComponentFn::Cantor(trie))].into(),
    )
}

fn unrank_in_stage(s: u32, mut rank: u128) -> Vec<i64> {
    let len = 1usize << s;
    let base = 2 * i64::from(s) + 1;
    let mut prefix: Vec<i64> = Vec::with_capacity(len);
    for p in 0..len {
        let free = (base as u128).pow((len - p - 1) as u32);
        let mut chosen = None;
        for digit in 0..base {
            prefix.push(digit - i64::from(s));
            let fresh = free - earlier_completions(&prefix, s, len);
            if rank < fresh {
                chosen = Some(());
                break;
            }
            rank -= fresh;
            prefix.pop();
        }
        assert!(chosen.is_some(), "rank exceeds stage size");
    }
    prefix
}

/// Position in the enumeration of `C(X, ℤ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCursor {
    pub position: u64,
    pub stage: u32,
    pub in_stage: u128,
}

impl EnumerationCursor {
    pub fn at(position: u64) -> Self {
        let k = u128::from(position);
        let stage = stage_of(k);
        EnumerationCursor {
            position,
            stage,
            in_stage: k - stage_start(stage),
        }
    }

    pub fn function(&self) -> LocIntFun {
        tuple_function(&unrank_in_stage(self.stage, self.in_stage))
    }
}

impl Iterator for EnumerationCursor {
    type Item = LocIntFun;

    fn next(&mut self) -> Option<LocIntFun> {
        let f = self.function();
        *self = EnumerationCursor::at(self.position.checked_add(1)?);
        Some(f)
    }
}

/// The `k`-th element of the fixed enumeration of `C(X, ℤ)`.
pub fn enumerate(k: u64) -> LocIntFun {
    EnumerationCursor::at(k).function()
}

/// Like [`enumerate`] but refuses spaces other than one full Cantor component.
pub fn enumerate_on(space: &Space, k: u64) -> Result<LocIntFun, ZfunError> {
    if *space != Space::cantor() {
        return Err(ZfunError::UnsupportedSpace);
    }
    Ok(enumerate(k))
}

/// Number of enumeration indices taken by stages `0..=s`.
pub fn stage_end(s: u32) -> u128 {
    stage_total(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::Component;

    fn x() -> Arc<Space> {
        Arc::new(Space::cantor())
    }

    fn cyl(w: &str) -> Cell {
        Cell::Cylinder(Cylinder::new(0, w).unwrap())
    }

    fn f(cells: &[(&str, i64)]) -> LocIntFun {
        let cells: Vec<(Cell, BigInt)> = cells
            .iter()
            .map(|(w, v)| (cyl(w), BigInt::from(*v)))
            .collect();
        LocIntFun::make(x(), &cells).unwrap()
    }

    fn pt(s: &str) -> SpacePoint {
        SpacePoint::cantor(0, s.parse().unwrap())
    }

    fn cell_strings(g: &LocIntFun) -> Vec<(String, i64)> {
        g.cells()
            .into_iter()
            .map(|(c, v)| match c {
                Cell::Cylinder(c) => (c.word.to_string(), i64::try_from(v).unwrap()),
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn make_examples() {
        assert_eq!(
            cell_strings(&f(&[("0", 1), ("1", 1)])),
            [("".to_string(), 1)]
        );
        assert_eq!(
            cell_strings(&f(&[("0", 2), ("01", -2)])),
            [("00".to_string(), 2)]
        );
        assert!(f(&[]).is_zero());
    }

    #[test]
    fn make_rejects_cells_outside() {
        let space =
            Arc::new(Space::new(vec![Component::Cantor(vec!["0".parse().unwrap()])]).unwrap());
        let err = LocIntFun::make(space, &[(cyl("1"), BigInt::from(1))]).unwrap_err();
        assert!(matches!(err, ZfunError::CellOutsideSpace(_)));
    }

    #[test]
    fn evaluate_examples() {
        let g = f(&[("0", 2), ("1", -1)]);
        assert_eq!(g.evaluate(&pt("(0)")).unwrap(), BigInt::from(2));
        assert_eq!(f(&[]).evaluate(&pt("01(1)")).unwrap(), BigInt::zero());
        assert_eq!(
            f(&[("01", 1)]).evaluate(&pt("01(1)")).unwrap(),
            BigInt::from(1)
        );
        let bad = SpacePoint::discrete(0, 0);
        assert!(matches!(
            g.evaluate(&bad),
            Err(ZfunError::PointOutsideSpace(_))
        ));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(f(&[("0", 1)]).add(&f(&[("1", 1)])).unwrap(), f(&[("", 1)]));
        assert!(f(&[("0", 1)]).scale(&BigInt::zero()).is_zero());
        assert_eq!(
            f(&[("0", 1)]).add(&f(&[("00", -1)])).unwrap(),
            f(&[("01", 1)])
        );
        let other = LocIntFun::zero(Arc::new(Space::discrete(2).unwrap()));
        assert_eq!(f(&[("0", 1)]).add(&other), Err(ZfunError::SpaceMismatch));
    }

    #[test]
    fn support_examples() {
        assert!(f(&[]).support().is_empty());
        assert_eq!(f(&[("", 1)]).support(), Space::cantor().whole());
        let s = f(&[("00", 2), ("01", 3)]).support();
        assert_eq!(
            s.words(ComponentId(0)),
            &["0".parse::<BinaryWord>().unwrap()]
        );
    }

    #[test]
    fn image_examples() {
        let set = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<BTreeSet<_>>();
        assert_eq!(f(&[("", 5)]).image_values(), set(&[5]));
        assert_eq!(f(&[]).image_values(), set(&[0]));
        assert_eq!(f(&[("0", 2), ("1", -1)]).image_values(), set(&[2, -1]));
        assert_eq!(f(&[("0", 2)]).image_values(), set(&[2, 0]));
    }

    #[test]
    fn json_round_trip() {
        let g = f(&[("0", 2), ("11", -3)]);
        let json = g.to_json();
        assert_eq!(
            json,
            r#"{"component":0,"cells":[{"word":"0","value":2},{"word":"11","value":-3}]}"#
        );
        let doc: FunctionDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(LocIntFun::from_doc(x(), &doc).unwrap(), g);
    }

    #[test]
    fn big_values_survive_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let g = LocIntFun::make(x(), &[(cyl("1"), big.clone())]).unwrap();
        let doc: FunctionDoc = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(
            LocIntFun::from_doc(x(), &doc)
                .unwrap()
                .evaluate(&pt("(1)"))
                .unwrap(),
            big
        );
    }

    #[test]
    fn discrete_functions() {
        let space = Arc::new(Space::discrete(3).unwrap());
        let a = Cell::Atom {
            component: ComponentId(0),
            index: 2,
        };
        let g = LocIntFun::make(
            space.clone(),
            &[(a.clone(), BigInt::from(4)), (a, BigInt::from(-4))],
        )
        .unwrap();
        assert!(g.is_zero());
        let h = LocIntFun::indicator(
            space,
            &Cell::Atom {
                component: ComponentId(0),
                index: 1,
            },
        )
        .unwrap();
        assert_eq!(
            h.evaluate(&SpacePoint::discrete(0, 1)).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            h.to_json(),
            r#"{"component":0,"cells":[{"index":1,"value":1}]}"#
        );
    }

    #[test]
    fn enumeration_starts_with_zero_and_stage_one() {
        assert!(enumerate(0).is_zero());
        let stage1: Vec<LocIntFun> = (1..9).map(enumerate).collect();
        // Eight new functions at stage 1: all (a,b) in {-1,0,1}^2 except (0,0).
        assert_eq!(stage1.len(), 8);
        assert_eq!(stage1[0], f(&[("", -1)]));
        assert_eq!(stage_end(1), 9);
        assert_eq!(stage_end(2), 625);
        assert_eq!(EnumerationCursor::at(9).stage, 2);
    }

    #[test]
    fn enumeration_cursor_matches_random_access() {
        let seq: Vec<LocIntFun> = EnumerationCursor::at(600).take(50).collect();
        for (i, g) in seq.iter().enumerate() {
            assert_eq!(*g, enumerate(600 + i as u64));
        }
    }

    #[test]
    fn enumeration_on_other_spaces_is_unsupported() {
        let s = Space::discrete(2).unwrap();
        assert_eq!(enumerate_on(&s, 0), Err(ZfunError::UnsupportedSpace));
    }

    #[test]
    fn delta_witness_examples() {
        let w = delta_witness(&"(0)".parse().unwrap(), 3);
        assert_eq!(
            (w.y.to_string(), w.value_at_x, w.value_at_y),
            ("0001(0)".into(), 1, 0)
        );
        let w = delta_witness(&"(1)".parse().unwrap(), 1);
        assert_eq!(
            (w.y.to_string(), w.value_at_x, w.value_at_y),
            ("10(1)".into(), 1, 0)
        );
        let x: CantorPoint = "01(10)".parse().unwrap();
        let w = delta_witness(&x, 4);
        assert_eq!(w.y.prefix(4).to_string(), "0110");
        assert_ne!(w.y.bit(4), x.bit(4));
    }
}
