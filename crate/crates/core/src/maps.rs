//! Local homeomorphisms presented by finitely many prefix-substitution
//! charts, together with fibers, composition, inversion, pushforward and
//! pullback of locally constant integer functions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cantor::{
    word_relation, Cell, ClopenSet, Component, ComponentId, Cylinder, PointValue, Space,
    SpacePoint, WordRelation,
};
use crate::trie::Trie;
use crate::zfun::{ComponentFn, LocIntFun};

/// Problems found while validating a chart presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    /// Source and target of a chart are of different kinds.
    KindMismatch {
        chart: usize,
    },
    SourceOutsideDomain {
        chart: usize,
        cell: String,
    },
    TargetOutsideCodomain {
        chart: usize,
        cell: String,
    },
    Overlap {
        first: usize,
        second: usize,
    },
    /// Part of the domain is covered by no chart.
    Gap {
        cells: Vec<String>,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::KindMismatch { chart } => {
                write!(f, "chart {chart}: source and target have different kinds")
            }
            Diagnostic::SourceOutsideDomain { chart, cell } => {
                write!(f, "chart {chart}: source {cell} is outside the domain")
            }
            Diagnostic::TargetOutsideCodomain { chart, cell } => {
                write!(f, "chart {chart}: target {cell} is outside the codomain")
            }
            Diagnostic::Overlap { first, second } => {
                write!(f, "charts {first} and {second} have overlapping sources")
            }
            Diagnostic::Gap { cells } => write!(f, "domain not covered: {}", cells.join(", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("invalid chart presentation: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("space mismatch")]
    SpaceMismatch,
    #[error("point {0} is not covered by any chart")]
    Uncovered(String),
    #[error("map is not injective: targets of charts {0} and {1} overlap")]
    NotInjective(usize, usize),
    #[error("map is not surjective: {0} is not hit")]
    NotSurjective(String),
    #[error("cell {cell} is coarser than the chart resolution")]
    CellTooCoarse { cell: String },
}

/// `x = u·t ↦ v·t` from `[u]` onto `[v]`, or a single point to a single point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrefixChart {
    #[serde(rename = "src")]
    pub source: Cell,
    #[serde(rename = "dst")]
    pub target: Cell,
}

impl PrefixChart {
    pub fn cylinders(src: Cylinder, dst: Cylinder) -> Self {
        PrefixChart {
            source: Cell::Cylinder(src),
            target: Cell::Cylinder(dst),
        }
    }

    pub fn atoms(src: (usize, usize), dst: (usize, usize)) -> Self {
        PrefixChart {
            source: Cell::Atom {
                component: ComponentId(src.0),
                index: src.1,
            },
            target: Cell::Atom {
                component: ComponentId(dst.0),
                index: dst.1,
            },
        }
    }

    /// `depth(v) - depth(u)`; zero for point charts.
    pub fn shift(&self) -> isize {
        match (&self.source, &self.target) {
            (Cell::Cylinder(u), Cell::Cylinder(v)) => {
                v.word.depth() as isize - u.word.depth() as isize
            }
            _ => 0,
        }
    }
}

fn cells_overlap(a: &Cell, b: &Cell) -> bool {
    match (a, b) {
        (Cell::Cylinder(x), Cell::Cylinder(y)) => {
            x.component == y.component && word_relation(&x.word, &y.word) != WordRelation::Disjoint
        }
        (
            Cell::Atom {
                component: c,
                index: i,
            },
            Cell::Atom {
                component: d,
                index: j,
            },
        ) => c == d && i == j,
        _ => false,
    }
}

fn first_overlap(cells: &[&Cell]) -> Option<(usize, usize)> {
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if cells_overlap(cells[i], cells[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

fn uncovered(space: &Space, cells: &[&Cell]) -> Vec<Cell> {
    let owned: Vec<Cell> = cells.iter().map(|c| (*c).clone()).collect();
    match ClopenSet::from_cells(&owned) {
        Ok(covered) => space
            .whole()
            .difference(&covered)
            .map(|d| d.cells())
            .unwrap_or_default(),
        Err(_) => Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalHomeo {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    charts: Vec<PrefixChart>,
}

impl LocalHomeo {
    pub fn new(
        domain: Arc<Space>,
        codomain: Arc<Space>,
        charts: Vec<PrefixChart>,
    ) -> Result<Self, MapError> {
        let p = LocalHomeo {
            domain,
            codomain,
            charts,
        };
        p.validate().map_err(MapError::Invalid)?;
        Ok(p)
    }

    pub fn identity(space: Arc<Space>) -> Self {
        let charts = space
            .whole()
            .cells()
            .into_iter()
            .map(|c| PrefixChart {
                source: c.clone(),
                target: c,
            })
            .collect();
        LocalHomeo {
            domain: space.clone(),
            codomain: space,
            charts,
        }
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    pub fn charts(&self) -> &[PrefixChart] {
        &self.charts
    }

    /// Checks that the chart sources partition the domain and that every
    /// chart maps a cell of the domain onto a cell of the codomain.
    pub fn validate(&self) -> Result<(), Vec<Diagnostic>> {
        let mut diags = Vec::new();
        for (i, ch) in self.charts.iter().enumerate() {
            let same_kind = matches!(
                (&ch.source, &ch.target),
                (Cell::Cylinder(_), Cell::Cylinder(_)) | (Cell::Atom { .. }, Cell::Atom { .. })
            );
            if !same_kind {
                diags.push(Diagnostic::KindMismatch { chart: i });
                continue;
            }
            if !self.domain.contains_cell(&ch.source) {
                diags.push(Diagnostic::SourceOutsideDomain {
                    chart: i,
                    cell: ch.source.to_string(),
                });
            }
            if !self.codomain.contains_cell(&ch.target) {
                diags.push(Diagnostic::TargetOutsideCodomain {
                    chart: i,
                    cell: ch.target.to_string(),
                });
            }
        }
        let sources: Vec<&Cell> = self.charts.iter().map(|c| &c.source).collect();
        for i in 0..sources.len() {
            for j in i + 1..sources.len() {
                if cells_overlap(sources[i], sources[j]) {
                    diags.push(Diagnostic::Overlap {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let gap = uncovered(&self.domain, &sources);
        if !gap.is_empty() {
            diags.push(Diagnostic::Gap {
                cells: gap.iter().map(|c| c.to_string()).collect(),
            });
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(diags)
        }
    }

    fn chart_containing(&self, y: &SpacePoint) -> Option<&PrefixChart> {
        self.charts.iter().find(|ch| match (&ch.source, &y.value) {
            (Cell::Cylinder(c), PointValue::Cantor(x)) => {
                c.component == y.component && x.in_cylinder(&c.word)
            }
            (Cell::Atom { component, index }, PointValue::Discrete(i)) => {
                *component == y.component && index == i
            }
            _ => false,
        })
    }

    pub fn apply(&self, y: &SpacePoint) -> Result<SpacePoint, MapError> {
        if !self.domain.contains_point(y) {
            return Err(MapError::Uncovered(y.to_string()));
        }
        let ch = self
            .chart_containing(y)
            .ok_or_else(|| MapError::Uncovered(y.to_string()))?;
        Ok(match (&ch.source, &ch.target, &y.value) {
            (Cell::Cylinder(u), Cell::Cylinder(v), PointValue::Cantor(x)) => SpacePoint {
                component: v.component,
                value: PointValue::Cantor(x.drop_prefix(u.word.depth()).prepend(&v.word)),
            },
            (_, Cell::Atom { component, index }, _) => SpacePoint::discrete(component.0, *index),
            _ => unreachable!("validated charts pair cells of the same kind"),
        })
    }

    /// All preimages of `z`, in chart order.
    pub fn fiber(&self, z: &SpacePoint) -> Vec<SpacePoint> {
        let mut out = Vec::new();
        for ch in &self.charts {
            match (&ch.source, &ch.target, &z.value) {
                (Cell::Cylinder(u), Cell::Cylinder(v), PointValue::Cantor(x))
                    if v.component == z.component && x.in_cylinder(&v.word) =>
                {
                    out.push(SpacePoint {
                        component: u.component,
                        value: PointValue::Cantor(x.drop_prefix(v.word.depth()).prepend(&u.word)),
                    });
                }
                (
                    Cell::Atom {
                        component: sc,
                        index: si,
                    },
                    Cell::Atom {
                        component: tc,
                        index: ti,
                    },
                    PointValue::Discrete(i),
                ) if *tc == z.component && ti == i => {
                    out.push(SpacePoint::discrete(sc.0, *si));
                }
                _ => {}
            }
        }
        out
    }

    /// Fiber-sum pushforward `(p_*f)(z) = Σ_{p(y)=z} f(y)`.
    pub fn pushforward(&self, f: &LocIntFun) -> Result<LocIntFun, MapError> {
        if **f.space() != *self.domain {
            return Err(MapError::SpaceMismatch);
        }
        Ok(transport(
            &self.codomain,
            self.charts.iter().map(|c| (&c.source, &c.target)),
            f,
        ))
    }

    /// `(p^*g)(y) = g(p(y))`.
    pub fn pullback(&self, g: &LocIntFun) -> Result<LocIntFun, MapError> {
        if **g.space() != *self.codomain {
            return Err(MapError::SpaceMismatch);
        }
        // Sources partition the domain, so pulling back chart by chart and
        // summing is the same as composing.
        Ok(transport(
            &self.domain,
            self.charts.iter().map(|c| (&c.target, &c.source)),
            g,
        ))
    }

    /// Presentation of `q ∘ p` (`self` is `p`), refining each chart of `p`
    /// only as far as needed for its image to sit in one chart of `q`.
    pub fn then(&self, q: &LocalHomeo) -> Result<LocalHomeo, MapError> {
        compose(q, self)
    }

    pub fn invert(&self) -> Result<LocalHomeo, MapError> {
        let targets: Vec<&Cell> = self.charts.iter().map(|c| &c.target).collect();
        if let Some((i, j)) = first_overlap(&targets) {
            return Err(MapError::NotInjective(i, j));
        }
        if let Some(missing) = uncovered(&self.codomain, &targets).first() {
            return Err(MapError::NotSurjective(missing.to_string()));
        }
        let charts = self
            .charts
            .iter()
            .map(|c| PrefixChart {
                source: c.target.clone(),
                target: c.source.clone(),
            })
            .collect();
        LocalHomeo::new(self.codomain.clone(), self.domain.clone(), charts)
    }

    /// Whether both presentations define the same map.
    pub fn same_map(&self, other: &LocalHomeo) -> bool {
        if self.domain != other.domain || self.codomain != other.codomain {
            return false;
        }
        for a in &self.charts {
            for b in &other.charts {
                if !cells_overlap(&a.source, &b.source) {
                    continue;
                }
                let agree = match (&a.source, &a.target, &b.source, &b.target) {
                    (
                        Cell::Cylinder(ua),
                        Cell::Cylinder(va),
                        Cell::Cylinder(ub),
                        Cell::Cylinder(vb),
                    ) => {
                        let w = if ua.word.depth() >= ub.word.depth() {
                            &ua.word
                        } else {
                            &ub.word
                        };
                        let ia = va.word.concat(&w.tail(ua.word.depth()));
                        let ib = vb.word.concat(&w.tail(ub.word.depth()));
                        va.component == vb.component && ia == ib
                    }
                    _ => a.target == b.target,
                };
                if !agree {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.same_map(&LocalHomeo::identity(self.domain.clone()))
    }

    /// Whether every chart keeps word length (all shifts are zero).
    pub fn is_depth_preserving(&self) -> bool {
        self.charts.iter().all(|c| c.shift() == 0)
    }

    /// Image of a cell lying inside a single chart source.
    pub fn image_cell(&self, cell: &Cell) -> Result<Cell, MapError> {
        for ch in &self.charts {
            match (cell, &ch.source, &ch.target) {
                (Cell::Cylinder(c), Cell::Cylinder(u), Cell::Cylinder(v))
                    if c.component == u.component =>
                {
                    match word_relation(&u.word, &c.word) {
                        WordRelation::Equal | WordRelation::UPrefixOfV => {
                            return Ok(Cell::Cylinder(Cylinder {
                                component: v.component,
                                word: v.word.concat(&c.word.tail(u.word.depth())),
                            }));
                        }
                        WordRelation::VPrefixOfU => {
                            return Err(MapError::CellTooCoarse {
                                cell: cell.to_string(),
                            })
                        }
                        WordRelation::Disjoint => {}
                    }
                }
                (Cell::Atom { .. }, src @ Cell::Atom { .. }, tgt) if src == cell => {
                    return Ok(tgt.clone());
                }
                _ => {}
            }
        }
        Err(MapError::Uncovered(cell.to_string()))
    }

    /// Chart list as JSON-friendly document.
    pub fn to_doc(&self) -> LocalHomeoDoc {
        LocalHomeoDoc {
            domain: (*self.domain).clone(),
            codomain: (*self.codomain).clone(),
            charts: self.charts.clone(),
        }
    }

    pub fn from_doc(doc: LocalHomeoDoc) -> Result<Self, MapError> {
        LocalHomeo::new(Arc::new(doc.domain), Arc::new(doc.codomain), doc.charts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalHomeoDoc {
    pub domain: Space,
    pub codomain: Space,
    pub charts: Vec<PrefixChart>,
}

/// Moves the restriction of `f` to each `from` cell onto the paired `to`
/// cell by prefix substitution and sums the pieces on `target`.
fn transport<'a, I>(target: &Arc<Space>, pairs: I, f: &LocIntFun) -> LocIntFun
where
    I: Iterator<Item = (&'a Cell, &'a Cell)>,
{
    let mut tries: BTreeMap<ComponentId, Trie<BigInt>> = BTreeMap::new();
    let mut atoms: BTreeMap<ComponentId, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for (from, to) in pairs {
        match (from, to) {
            (Cell::Cylinder(u), Cell::Cylinder(v)) => {
                let piece = f.trie(u.component).subtrie(u.word.bits());
                if matches!(&piece, Trie::Leaf(x) if x.is_zero()) {
                    continue;
                }
                let moved = Trie::graft(v.word.bits(), piece, &BigInt::zero());
                let acc = tries
                    .entry(v.component)
                    .or_insert_with(|| Trie::leaf(BigInt::zero()));
                *acc = Trie::zip_with(acc, &moved, &|a: &BigInt, b: &BigInt| a + b);
            }
            (
                Cell::Atom {
                    component: sc,
                    index: si,
                },
                Cell::Atom {
                    component: tc,
                    index: ti,
                },
            ) => {
                let v = f.atom_value(*sc, *si);
                if v.is_zero() {
                    continue;
                }
                let e = atoms
                    .entry(*tc)
                    .or_default()
                    .entry(*ti)
                    .or_insert_with(BigInt::zero);
                *e += v;
            }
            _ => unreachable!("validated charts pair cells of the same kind"),
        }
    }
    let mut parts: BTreeMap<ComponentId, ComponentFn> = BTreeMap::new();
    for (id, t) in tries {
        parts.insert(id, ComponentFn::Cantor(t));
    }
    for (id, mut m) in atoms {
        m.retain(|_, v| !v.is_zero());
        parts.insert(id, ComponentFn::Discrete(m));
    }
    debug_assert!(parts.keys().all(|id| matches!(
        (target.component(*id), &parts[id]),
        (Ok(Component::Cantor(_)), ComponentFn::Cantor(_))
            | (Ok(Component::Discrete(_)), ComponentFn::Discrete(_))
    )));
    LocIntFun::from_parts(target.clone(), parts)
}

/// `q ∘ p`.
pub fn compose(q: &LocalHomeo, p: &LocalHomeo) -> Result<LocalHomeo, MapError> {
    if p.codomain != q.domain {
        return Err(MapError::SpaceMismatch);
    }
    let mut charts = Vec::new();
    for pc in &p.charts {
        match (&pc.source, &pc.target) {
            (Cell::Cylinder(s), Cell::Cylinder(t)) => {
                for qc in &q.charts {
                    let (Cell::Cylinder(u), Cell::Cylinder(v)) = (&qc.source, &qc.target) else {
                        continue;
                    };
                    if u.component != t.component {
                        continue;
                    }
                    let (src, dst) = match word_relation(&u.word, &t.word) {
                        WordRelation::Equal | WordRelation::UPrefixOfV => {
                            (s.word.clone(), v.word.concat(&t.word.tail(u.word.depth())))
                        }
                        WordRelation::VPrefixOfU => {
                            (s.word.concat(&u.word.tail(t.word.depth())), v.word.clone())
                        }
                        WordRelation::Disjoint => continue,
                    };
                    charts.push(PrefixChart::cylinders(
                        Cylinder {
                            component: s.component,
                            word: src,
                        },
                        Cylinder {
                            component: v.component,
                            word: dst,
                        },
                    ));
                }
            }
            (Cell::Atom { .. }, mid @ Cell::Atom { .. }) => {
                if let Some(qc) = q.charts.iter().find(|qc| &qc.source == mid) {
                    charts.push(PrefixChart {
                        source: pc.source.clone(),
                        target: qc.target.clone(),
                    });
                }
            }
            _ => unreachable!("validated charts pair cells of the same kind"),
        }
    }
    LocalHomeo::new(p.domain.clone(), q.codomain.clone(), charts)
}

/// Standard maps on the full Cantor set used throughout the crate and tests.
pub mod standard {
    use super::*;

    fn cyl(w: &str) -> Cylinder {
        Cylinder::new(0, w).expect("literal words are binary")
    }

    fn on_cantor(charts: &[(&str, &str)]) -> LocalHomeo {
        let x = Arc::new(Space::cantor());
        let charts = charts
            .iter()
            .map(|(u, v)| PrefixChart::cylinders(cyl(u), cyl(v)))
            .collect();
        LocalHomeo::new(x.clone(), x, charts).expect("standard charts are valid")
    }

    /// The one-sided shift `σ`, dropping the first bit.
    pub fn shift() -> LocalHomeo {
        on_cantor(&[("0", ""), ("1", "")])
    }

    /// Flips the first bit.
    pub fn bit_swap() -> LocalHomeo {
        on_cantor(&[("0", "1"), ("1", "0")])
    }

    pub fn identity() -> LocalHomeo {
        LocalHomeo::identity(Arc::new(Space::cantor()))
    }

    pub fn from_words(charts: &[(&str, &str)]) -> Result<LocalHomeo, MapError> {
        let x = Arc::new(Space::cantor());
        let charts = charts
            .iter()
            .map(|(u, v)| PrefixChart::cylinders(cyl(u), cyl(v)))
            .collect();
        LocalHomeo::new(x.clone(), x, charts)
    }
}
