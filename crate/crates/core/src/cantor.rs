//! The Cantor set `{0,1}^ℕ`, its cylinders and clopen sets, and the finite
//! spaces assembled from Cantor and discrete components.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::trie::Trie;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CantorError {
    #[error("invalid binary word {0:?}: only '0' and '1' are allowed")]
    BadWord(String),
    #[error("invalid point {0:?}: expected \"u(v)\" with nonempty period v")]
    BadPoint(String),
    #[error("component {0} does not exist")]
    NoSuchComponent(ComponentId),
    #[error("component {0} has the wrong kind for this operation")]
    KindMismatch(ComponentId),
    #[error("cantor component {0} has an empty restriction")]
    EmptyRestriction(usize),
    #[error("discrete component {0} has size zero")]
    EmptyDiscrete(usize),
    #[error("cell {0} lies outside its component")]
    OutsideSpace(String),
    #[error("depth {depth} is smaller than word {word:?}")]
    DepthTooSmall { depth: usize, word: String },
    #[error("point and cylinder refer to different components ({0} vs {1})")]
    ComponentMismatch(ComponentId, ComponentId),
}

/// A finite word over `{0,1}`; the empty word stands for the whole component.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<bool>);

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BinaryWord(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn child(&self, bit: bool) -> Self {
        let mut c = self.clone();
        c.0.push(bit);
        c
    }

    pub fn concat(&self, other: &BinaryWord) -> Self {
        let mut c = self.0.clone();
        c.extend_from_slice(&other.0);
        BinaryWord(c)
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// The suffix left after removing the first `n` bits.
    pub fn tail(&self, n: usize) -> Self {
        BinaryWord(self.0[n.min(self.0.len())..].to_vec())
    }

    /// All `2^d` words of length `d`, in lexicographic order.
    pub fn all_of_depth(d: usize) -> Vec<BinaryWord> {
        (0..1usize << d)
            .map(|i| BinaryWord((0..d).map(|k| (i >> (d - 1 - k)) & 1 == 1).collect()))
            .collect()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BinaryWord {
    type Err = CantorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(CantorError::BadWord(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BinaryWord)
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordRelation {
    Equal,
    UPrefixOfV,
    VPrefixOfU,
    Disjoint,
}

/// How the cylinders `[u]` and `[v]` sit relative to each other.
pub fn word_relation(u: &BinaryWord, v: &BinaryWord) -> WordRelation {
    let common = u.depth().min(v.depth());
    if u.0[..common] != v.0[..common] {
        WordRelation::Disjoint
    } else if u.depth() == v.depth() {
        WordRelation::Equal
    } else if u.depth() < v.depth() {
        WordRelation::UPrefixOfV
    } else {
        WordRelation::VPrefixOfU
    }
}

/// An eventually periodic point `u·vvv…` of the Cantor set.
///
/// Always stored in canonical form: the period is primitive and the
/// preperiod is as short as possible, so derived equality is equality of
/// the underlying sequences.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CantorPoint {
    preperiod: BinaryWord,
    period: BinaryWord,
}

impl CantorPoint {
    pub fn new(preperiod: BinaryWord, period: BinaryWord) -> Result<Self, CantorError> {
        if period.is_empty() {
            return Err(CantorError::BadPoint(format!("{preperiod}()")));
        }
        Ok(Self::canonical(preperiod.0, period.0))
    }

    pub fn constant(bit: bool) -> Self {
        Self::canonical(Vec::new(), vec![bit])
    }

    fn canonical(mut pre: Vec<bool>, period: Vec<bool>) -> Self {
        let len = period.len();
        let root = (1..=len)
            .find(|&p| len.is_multiple_of(p) && (p..len).all(|i| period[i] == period[i - p]))
            .unwrap_or(len);
        let mut period: Vec<bool> = period[..root].to_vec();
        while let Some(&last) = pre.last() {
            if last != *period.last().unwrap() {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        CantorPoint {
            preperiod: BinaryWord(pre),
            period: BinaryWord(period),
        }
    }

    pub fn preperiod(&self) -> &BinaryWord {
        &self.preperiod
    }

    pub fn period(&self) -> &BinaryWord {
        &self.period
    }

    /// Bit at 0-based position `i`.
    pub fn bit(&self, i: usize) -> bool {
        let pre = self.preperiod.depth();
        if i < pre {
            self.preperiod.0[i]
        } else {
            self.period.0[(i - pre) % self.period.depth()]
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..).map(move |i| self.bit(i))
    }

    pub fn prefix(&self, n: usize) -> BinaryWord {
        BinaryWord((0..n).map(|i| self.bit(i)).collect())
    }

    pub fn in_cylinder(&self, word: &BinaryWord) -> bool {
        word.0.iter().enumerate().all(|(i, &b)| self.bit(i) == b)
    }

    /// The shifted point obtained by dropping the first `n` bits.
    pub fn drop_prefix(&self, n: usize) -> Self {
        let pre = self.preperiod.depth();
        if n <= pre {
            Self::canonical(self.preperiod.0[n..].to_vec(), self.period.0.clone())
        } else {
            let mut period = self.period.0.clone();
            let k = (n - pre) % period.len();
            period.rotate_left(k);
            Self::canonical(Vec::new(), period)
        }
    }

    pub fn prepend(&self, word: &BinaryWord) -> Self {
        let mut pre = word.0.clone();
        pre.extend_from_slice(&self.preperiod.0);
        Self::canonical(pre, self.period.0.clone())
    }
}

impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.preperiod, self.period)
    }
}

impl fmt::Debug for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CantorPoint {
    type Err = CantorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CantorError::BadPoint(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let pre: BinaryWord = s[..open].parse().map_err(|_| bad())?;
        let period: BinaryWord = inner.parse().map_err(|_| bad())?;
        CantorPoint::new(pre, period).map_err(|_| bad())
    }
}

impl Serialize for CantorPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CantorPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point `y ≠ x` that agrees with `x` on its first `d` bits.
///
/// `y = x₁…x_d · (¬x_{d+1}) · x_{d+1} x_{d+1} …`.
pub fn separating_point(x: &CantorPoint, d: usize) -> CantorPoint {
    let b = x.bit(d);
    let mut pre = x.prefix(d);
    pre.push(!b);
    CantorPoint::canonical(pre.0, vec![b])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentId(pub usize);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cylinder {
    pub component: ComponentId,
    pub word: BinaryWord,
}

impl Cylinder {
    pub fn new(component: usize, word: &str) -> Result<Self, CantorError> {
        Ok(Cylinder {
            component: ComponentId(component),
            word: word.parse()?,
        })
    }
}

/// A basic clopen piece of a space: a cylinder of a Cantor component or a
/// single point of a discrete component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Cylinder(Cylinder),
    Atom {
        component: ComponentId,
        index: usize,
    },
}

impl Cell {
    pub fn component(&self) -> ComponentId {
        match self {
            Cell::Cylinder(c) => c.component,
            Cell::Atom { component, .. } => *component,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Cylinder(c) => write!(f, "{}:[{}]", c.component, c.word),
            Cell::Atom { component, index } => write!(f, "{component}:#{index}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    /// A clopen piece of the standard Cantor set, given by canonical words.
    Cantor(Vec<BinaryWord>),
    Discrete(usize),
}

/// A finite disjoint union of Cantor and discrete components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Space {
    components: Vec<Component>,
}

impl Space {
    pub fn new(components: Vec<Component>) -> Result<Self, CantorError> {
        let components = components
            .into_iter()
            .enumerate()
            .map(|(i, c)| match c {
                Component::Cantor(words) => {
                    let canon = normalize_words(&words);
                    if canon.is_empty() {
                        Err(CantorError::EmptyRestriction(i))
                    } else {
                        Ok(Component::Cantor(canon))
                    }
                }
                Component::Discrete(0) => Err(CantorError::EmptyDiscrete(i)),
                d => Ok(d),
            })
            .collect::<Result<_, _>>()?;
        Ok(Space { components })
    }

    pub fn empty() -> Self {
        Space {
            components: Vec::new(),
        }
    }

    /// The standard Cantor set as a one-component space.
    pub fn cantor() -> Self {
        Space {
            components: vec![Component::Cantor(vec![BinaryWord::empty()])],
        }
    }

    pub fn discrete(size: usize) -> Result<Self, CantorError> {
        Space::new(vec![Component::Discrete(size)])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: ComponentId) -> Result<&Component, CantorError> {
        self.components
            .get(id.0)
            .ok_or(CantorError::NoSuchComponent(id))
    }

    pub fn ids(&self) -> impl Iterator<Item = ComponentId> {
        (0..self.components.len()).map(ComponentId)
    }

    pub fn is_cantor(&self, id: ComponentId) -> bool {
        matches!(self.components.get(id.0), Some(Component::Cantor(_)))
    }

    /// Largest restriction word depth over all Cantor components.
    pub fn restriction_depth(&self) -> usize {
        self.components
            .iter()
            .filter_map(|c| match c {
                Component::Cantor(ws) => ws.iter().map(BinaryWord::depth).max(),
                Component::Discrete(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn contains_cell(&self, cell: &Cell) -> bool {
        match (cell, self.components.get(cell.component().0)) {
            (Cell::Cylinder(c), Some(Component::Cantor(r))) => {
                r.iter().any(|w| w.is_prefix_of(&c.word))
                    || Trie::from_words(r).subtrie(c.word.bits()) == Trie::leaf(true)
            }
            (Cell::Atom { index, .. }, Some(Component::Discrete(n))) => index < n,
            _ => false,
        }
    }

    pub fn contains_point(&self, p: &SpacePoint) -> bool {
        match (&p.value, self.components.get(p.component.0)) {
            (PointValue::Cantor(x), Some(Component::Cantor(r))) => {
                r.iter().any(|w| x.in_cylinder(w))
            }
            (PointValue::Discrete(i), Some(Component::Discrete(n))) => i < n,
            _ => false,
        }
    }

    /// Whole space as a clopen set.
    pub fn whole(&self) -> ClopenSet {
        let parts = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let part = match c {
                    Component::Cantor(ws) => Part::Words(ws.clone()),
                    Component::Discrete(n) => Part::Indices((0..*n).collect()),
                };
                (ComponentId(i), part)
            })
            .collect();
        ClopenSet { parts }
    }

    /// Basis of depth-`d` cells: all depth-`d` cylinders inside each Cantor
    /// component, and every point of each discrete component.
    pub fn basis_at_depth(&self, d: usize) -> Result<Vec<Cell>, CantorError> {
        self.whole().refine_to_depth(d)
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let components = Vec::<Component>::deserialize(d)?;
        Space::new(components).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointValue {
    Cantor(CantorPoint),
    Discrete(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpacePoint {
    pub component: ComponentId,
    pub value: PointValue,
}

impl SpacePoint {
    pub fn cantor(component: usize, x: CantorPoint) -> Self {
        SpacePoint {
            component: ComponentId(component),
            value: PointValue::Cantor(x),
        }
    }

    pub fn discrete(component: usize, index: usize) -> Self {
        SpacePoint {
            component: ComponentId(component),
            value: PointValue::Discrete(index),
        }
    }
}

impl fmt::Display for SpacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            PointValue::Cantor(x) => write!(f, "{}:{x}", self.component),
            PointValue::Discrete(i) => write!(f, "{}:#{i}", self.component),
        }
    }
}

pub fn point_in_cylinder(x: &SpacePoint, c: &Cylinder) -> Result<bool, CantorError> {
    if x.component != c.component {
        return Err(CantorError::ComponentMismatch(x.component, c.component));
    }
    match &x.value {
        PointValue::Cantor(p) => Ok(p.in_cylinder(&c.word)),
        PointValue::Discrete(_) => Err(CantorError::KindMismatch(x.component)),
    }
}

/// Canonical prefix-free, fully merged, sorted family with the same union.
pub(crate) fn normalize_words(words: &[BinaryWord]) -> Vec<BinaryWord> {
    let mut sorted: Vec<&BinaryWord> = words.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut stack: Vec<BinaryWord> = Vec::new();
    for w in sorted {
        // In sorted order a prefix precedes all of its extensions.
        if stack.last().is_some_and(|top| top.is_prefix_of(w)) {
            continue;
        }
        stack.push(w.clone());
        while stack.len() >= 2 {
            let n = stack.len();
            let (a, b) = (&stack[n - 2], &stack[n - 1]);
            let d = a.depth();
            let siblings = d > 0
                && d == b.depth()
                && a.0[..d - 1] == b.0[..d - 1]
                && !a.0[d - 1]
                && b.0[d - 1];
            if !siblings {
                break;
            }
            let parent = BinaryWord(a.0[..d - 1].to_vec());
            stack.truncate(n - 2);
            stack.push(parent);
        }
    }
    stack
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Part {
    Words(Vec<BinaryWord>),
    Indices(BTreeSet<usize>),
}

impl Part {
    fn is_empty(&self) -> bool {
        match self {
            Part::Words(w) => w.is_empty(),
            Part::Indices(i) => i.is_empty(),
        }
    }
}

/// A clopen subset in canonical form; structural equality is set equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ClopenSet {
    parts: BTreeMap<ComponentId, Part>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
}

/// Normalizes a list of cylinders into a canonical clopen set.
pub fn normalize_clopen(cylinders: &[Cylinder]) -> ClopenSet {
    let mut by_comp: BTreeMap<ComponentId, Vec<BinaryWord>> = BTreeMap::new();
    for c in cylinders {
        by_comp.entry(c.component).or_default().push(c.word.clone());
    }
    let parts = by_comp
        .into_iter()
        .map(|(id, ws)| (id, Part::Words(normalize_words(&ws))))
        .collect();
    ClopenSet { parts }
}

impl ClopenSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Normalizes an arbitrary list of cells (cylinders and atoms).
    pub fn from_cells(cells: &[Cell]) -> Result<Self, CantorError> {
        let mut words: BTreeMap<ComponentId, Vec<BinaryWord>> = BTreeMap::new();
        let mut atoms: BTreeMap<ComponentId, BTreeSet<usize>> = BTreeMap::new();
        for c in cells {
            match c {
                Cell::Cylinder(cy) => words.entry(cy.component).or_default().push(cy.word.clone()),
                Cell::Atom { component, index } => {
                    atoms.entry(*component).or_default().insert(*index);
                }
            }
        }
        let mut parts = BTreeMap::new();
        for (id, ws) in words {
            if atoms.contains_key(&id) {
                return Err(CantorError::KindMismatch(id));
            }
            parts.insert(id, Part::Words(normalize_words(&ws)));
        }
        for (id, is) in atoms {
            parts.insert(id, Part::Indices(is));
        }
        Ok(ClopenSet { parts })
    }

    pub fn is_empty(&self) -> bool {
        self.parts.values().all(Part::is_empty)
    }

    pub fn parts(&self) -> &BTreeMap<ComponentId, Part> {
        &self.parts
    }

    /// Canonical words on a Cantor component (empty if absent).
    pub fn words(&self, id: ComponentId) -> &[BinaryWord] {
        match self.parts.get(&id) {
            Some(Part::Words(w)) => w,
            _ => &[],
        }
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (&component, part) in &self.parts {
            match part {
                Part::Words(ws) => out.extend(ws.iter().map(|w| {
                    Cell::Cylinder(Cylinder {
                        component,
                        word: w.clone(),
                    })
                })),
                Part::Indices(is) => {
                    out.extend(is.iter().map(|&index| Cell::Atom { component, index }))
                }
            }
        }
        out
    }

    pub fn contains_point(&self, p: &SpacePoint) -> bool {
        match (self.parts.get(&p.component), &p.value) {
            (Some(Part::Words(ws)), PointValue::Cantor(x)) => ws.iter().any(|w| x.in_cylinder(w)),
            (Some(Part::Indices(is)), PointValue::Discrete(i)) => is.contains(i),
            _ => false,
        }
    }

    /// Whether the cylinder `[word]` of component `id` lies inside the set.
    pub fn contains_cylinder(&self, id: ComponentId, word: &BinaryWord) -> bool {
        self.words(id).iter().any(|w| w.is_prefix_of(word))
    }

    pub fn combine(&self, other: &ClopenSet, op: SetOp) -> Result<ClopenSet, CantorError> {
        let ids: BTreeSet<ComponentId> = self
            .parts
            .keys()
            .chain(other.parts.keys())
            .copied()
            .collect();
        let mut parts = BTreeMap::new();
        for id in ids {
            let (a, b) = (self.parts.get(&id), other.parts.get(&id));
            let words = |p: Option<&Part>| matches!(p, Some(Part::Words(_)));
            let indices = |p: Option<&Part>| matches!(p, Some(Part::Indices(_)));
            if (words(a) && indices(b)) || (indices(a) && words(b)) {
                return Err(CantorError::KindMismatch(id));
            }
            let part = if words(a) || words(b) {
                let ta = Trie::from_words(self.words(id));
                let tb = Trie::from_words(other.words(id));
                let t: Trie<bool> = Trie::zip_with(&ta, &tb, &|x: &bool, y: &bool| match op {
                    SetOp::Union => *x || *y,
                    SetOp::Intersection => *x && *y,
                    SetOp::Difference => *x && !*y,
                });
                Part::Words(t.true_words())
            } else {
                let get = |p: Option<&Part>| match p {
                    Some(Part::Indices(s)) => s.clone(),
                    _ => BTreeSet::new(),
                };
                let (sa, sb) = (get(a), get(b));
                Part::Indices(match op {
                    SetOp::Union => sa.union(&sb).copied().collect(),
                    SetOp::Intersection => sa.intersection(&sb).copied().collect(),
                    SetOp::Difference => sa.difference(&sb).copied().collect(),
                })
            };
            if !part.is_empty() {
                parts.insert(id, part);
            }
        }
        Ok(ClopenSet { parts })
    }

    pub fn union(&self, other: &ClopenSet) -> Result<ClopenSet, CantorError> {
        self.combine(other, SetOp::Union)
    }

    pub fn intersection(&self, other: &ClopenSet) -> Result<ClopenSet, CantorError> {
        self.combine(other, SetOp::Intersection)
    }

    pub fn difference(&self, other: &ClopenSet) -> Result<ClopenSet, CantorError> {
        self.combine(other, SetOp::Difference)
    }

    pub fn complement(&self, space: &Space) -> Result<ClopenSet, CantorError> {
        self.check_in(space)?;
        space.whole().difference(self)
    }

    pub fn is_subset(&self, other: &ClopenSet) -> Result<bool, CantorError> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Errors unless every cell of the set lies in `space`.
    pub fn check_in(&self, space: &Space) -> Result<(), CantorError> {
        for cell in self.cells() {
            if !space.contains_cell(&cell) {
                return Err(CantorError::OutsideSpace(cell.to_string()));
            }
        }
        Ok(())
    }

    pub fn max_depth(&self) -> usize {
        self.parts
            .values()
            .filter_map(|p| match p {
                Part::Words(ws) => ws.iter().map(BinaryWord::depth).max(),
                Part::Indices(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Every depth-`d` cell contained in the set; atoms pass through.
    pub fn refine_to_depth(&self, d: usize) -> Result<Vec<Cell>, CantorError> {
        let mut out = Vec::new();
        for (&component, part) in &self.parts {
            match part {
                Part::Words(ws) => {
                    for w in refine_words(ws, d)? {
                        out.push(Cell::Cylinder(Cylinder { component, word: w }));
                    }
                }
                Part::Indices(is) => {
                    out.extend(is.iter().map(|&index| Cell::Atom { component, index }))
                }
            }
        }
        Ok(out)
    }
}

/// The depth-`d` words whose cylinders lie in the union of `words`.
pub fn refine_words(words: &[BinaryWord], d: usize) -> Result<Vec<BinaryWord>, CantorError> {
    let mut out = Vec::new();
    for w in normalize_words(words) {
        if w.depth() > d {
            return Err(CantorError::DepthTooSmall {
                depth: d,
                word: w.to_string(),
            });
        }
        let extra = d - w.depth();
        for tail in BinaryWord::all_of_depth(extra) {
            out.push(w.concat(&tail));
        }
    }
    Ok(out)
}

impl Serialize for ClopenSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.cells().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClopenSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let cells = Vec::<Cell>::deserialize(d)?;
        ClopenSet::from_cells(&cells).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> CantorPoint {
        s.parse().unwrap()
    }

    fn cyls(ws: &[&str]) -> Vec<Cylinder> {
        ws.iter().map(|s| Cylinder::new(0, s).unwrap()).collect()
    }

    fn set(ws: &[&str]) -> ClopenSet {
        normalize_clopen(&cyls(ws))
    }

    fn words_of(s: &ClopenSet) -> Vec<String> {
        s.words(ComponentId(0))
            .iter()
            .map(|x| x.to_string())
            .collect()
    }

    // Bit-by-bit comparison, independent of `word_relation`.
    fn relation_oracle(u: &str, v: &str) -> WordRelation {
        for (a, b) in u.chars().zip(v.chars()) {
            if a != b {
                return WordRelation::Disjoint;
            }
        }
        match u.len().cmp(&v.len()) {
            std::cmp::Ordering::Equal => WordRelation::Equal,
            std::cmp::Ordering::Less => WordRelation::UPrefixOfV,
            std::cmp::Ordering::Greater => WordRelation::VPrefixOfU,
        }
    }

    #[test]
    fn word_relation_examples() {
        assert_eq!(word_relation(&w(""), &w("01")), WordRelation::UPrefixOfV);
        assert_eq!(word_relation(&w("0"), &w("0")), WordRelation::Equal);
        assert_eq!(relation_oracle("01", "001"), WordRelation::Disjoint);
        assert_eq!(word_relation(&w("01"), &w("001")), WordRelation::Disjoint);
        assert_eq!(word_relation(&w("011"), &w("01")), WordRelation::VPrefixOfU);
    }

    #[test]
    fn word_relation_matches_oracle_exhaustively() {
        let all: Vec<BinaryWord> = (0..=3).flat_map(BinaryWord::all_of_depth).collect();
        for u in &all {
            for v in &all {
                assert_eq!(
                    word_relation(u, v),
                    relation_oracle(&u.to_string(), &v.to_string())
                );
            }
        }
    }

    #[test]
    fn bad_word_rejected() {
        assert!(matches!(
            "012".parse::<BinaryWord>(),
            Err(CantorError::BadWord(_))
        ));
    }

    #[test]
    fn point_parsing_and_canonical_form() {
        assert_eq!(pt("01(10)").to_string(), "01(10)");
        assert_eq!(pt("0(10)"), pt("(01)"));
        assert_eq!(pt("(0000)"), pt("(0)"));
        assert_eq!(pt("0(0)"), pt("(0)"));
        assert_eq!(pt("1(0101)").to_string(), "(10)");
        assert_eq!(pt("01(1)").to_string(), "0(1)");
        assert!("01".parse::<CantorPoint>().is_err());
        assert!("0()".parse::<CantorPoint>().is_err());
    }

    #[test]
    fn point_in_cylinder_examples() {
        let zeros = SpacePoint::cantor(0, pt("(0)"));
        assert!(point_in_cylinder(&zeros, &Cylinder::new(0, "000").unwrap()).unwrap());
        let x = SpacePoint::cantor(0, pt("1(0)"));
        assert!(!point_in_cylinder(&x, &Cylinder::new(0, "0").unwrap()).unwrap());
        // 01(10) expands to 0 1 1 0 1 0
        let y = pt("01(10)");
        assert_eq!(y.prefix(6).to_string(), "011010");
        let y = SpacePoint::cantor(0, y);
        assert!(point_in_cylinder(&y, &Cylinder::new(0, "0110").unwrap()).unwrap());
        assert_eq!(
            point_in_cylinder(&y, &Cylinder::new(1, "0").unwrap()),
            Err(CantorError::ComponentMismatch(
                ComponentId(0),
                ComponentId(1)
            ))
        );
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(words_of(&set(&["0", "1"])), [""]);
        assert_eq!(words_of(&set(&["00", "01", "10"])), ["0", "10"]);
        assert!(set(&[]).is_empty());
        assert_eq!(words_of(&set(&["0", "01", "011"])), ["0"]);
        assert_eq!(words_of(&set(&["00", "010", "011", "1"])), [""]);
    }

    #[test]
    fn algebra_examples() {
        let space = Space::cantor();
        assert_eq!(words_of(&set(&["0"]).complement(&space).unwrap()), ["1"]);
        assert_eq!(
            words_of(&set(&["0"]).intersection(&set(&["01"])).unwrap()),
            ["01"]
        );
        assert_eq!(
            words_of(&set(&["00", "11"]).union(&set(&["01"])).unwrap()),
            ["0", "11"]
        );
        assert_eq!(
            words_of(&set(&[""]).difference(&set(&["1"])).unwrap()),
            ["0"]
        );
    }

    #[test]
    fn mixed_kinds_are_a_mismatch() {
        let a = set(&["0"]);
        let b = ClopenSet::from_cells(&[Cell::Atom {
            component: ComponentId(0),
            index: 1,
        }])
        .unwrap();
        assert_eq!(a.union(&b), Err(CantorError::KindMismatch(ComponentId(0))));
    }

    #[test]
    fn refine_examples() {
        let s = |v: Vec<Cell>| -> Vec<String> {
            v.into_iter()
                .map(|c| match c {
                    Cell::Cylinder(c) => c.word.to_string(),
                    _ => unreachable!(),
                })
                .collect()
        };
        assert_eq!(
            s(set(&[""]).refine_to_depth(2).unwrap()),
            ["00", "01", "10", "11"]
        );
        assert_eq!(s(set(&["0"]).refine_to_depth(2).unwrap()), ["00", "01"]);
        assert_eq!(
            s(set(&["0", "10"]).refine_to_depth(2).unwrap()),
            ["00", "01", "10"]
        );
        assert!(matches!(
            set(&["011"]).refine_to_depth(2),
            Err(CantorError::DepthTooSmall { depth: 2, .. })
        ));
    }

    #[test]
    fn separating_point_examples() {
        assert_eq!(separating_point(&pt("(0)"), 3).to_string(), "0001(0)");
        assert_eq!(separating_point(&pt("(1)"), 1).to_string(), "10(1)");
        let x = pt("01(10)");
        let y = separating_point(&x, 4);
        assert_eq!(y.prefix(4).to_string(), "0110");
        assert_ne!(y.bit(4), x.bit(4));
        assert_ne!(x, y);
    }

    #[test]
    fn shift_operations() {
        let x = pt("01(10)");
        assert_eq!(x.drop_prefix(1), pt("1(10)"));
        assert_eq!(x.drop_prefix(3), pt("(01)"));
        assert_eq!(x.drop_prefix(0), x);
        assert_eq!(pt("(1)").prepend(&w("0")), pt("0(1)"));
        assert_eq!(x.drop_prefix(2).prepend(&w("01")), x);
    }

    #[test]
    fn space_validation() {
        assert_eq!(
            Space::new(vec![Component::Cantor(vec![])]),
            Err(CantorError::EmptyRestriction(0))
        );
        assert_eq!(Space::discrete(0), Err(CantorError::EmptyDiscrete(0)));
        let s = Space::new(vec![
            Component::Cantor(vec![w("01"), w("00")]),
            Component::Discrete(2),
        ])
        .unwrap();
        assert_eq!(s.components()[0], Component::Cantor(vec![w("0")]));
        assert!(s.contains_cell(&Cell::Cylinder(Cylinder::new(0, "011").unwrap())));
        assert!(!s.contains_cell(&Cell::Cylinder(Cylinder::new(0, "1").unwrap())));
        assert!(!s.contains_cell(&Cell::Cylinder(Cylinder::new(0, "").unwrap())));
        assert!(s.contains_cell(&Cell::Atom {
            component: ComponentId(1),
            index: 1
        }));
        assert!(!s.contains_cell(&Cell::Atom {
            component: ComponentId(1),
            index: 2
        }));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"[{"cantor":["0"]},{"discrete":2}]"#);
        assert_eq!(serde_json::from_str::<Space>(&json).unwrap(), s);
    }

    #[test]
    fn clopen_json_round_trip() {
        let s = set(&["00", "11"]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"[{"component":0,"word":"00"},{"component":0,"word":"11"}]"#
        );
        assert_eq!(serde_json::from_str::<ClopenSet>(&json).unwrap(), s);
    }
}
