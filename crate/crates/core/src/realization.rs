//! The classifying-space side of the degree-zero comparison.
//!
//! Simplex points, the finitely supported sequence model `Δ^∞_fin` with the
//! maps `ȷ` and `κ`, path-component descriptors with symbolic cardinalities,
//! and the report comparing Moore `H₀` with singular `H₀`. All arithmetic is
//! exact.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cantor::{CantorPoint, Cell, Component, ComponentId, Space};
use crate::complex::{
    homology_at_depth, nerve_unit_cantor, truncation_matrix, SimplicialPresentation,
};
use crate::sampling;
use crate::zfun::{delta_witness, stage_end, EnumerationCursor, LocIntFun};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("operator value {value} at {index} exceeds target dimension {n}")]
    OutOfRange {
        index: usize,
        value: usize,
        n: usize,
    },
    #[error("operator is not monotone at {index}")]
    NotMonotone { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("negative coordinate {0}")]
    Negative(String),
    #[error("coordinates sum to {0}, not 1")]
    BadSum(String),
    #[error("parameter {0} outside [0, 1]")]
    ParameterRange(String),
    #[error("compare_h0 needs at least two levels, got {0}")]
    TooFewLevels(usize),
}

mod rational_json {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn to_string(q: &BigRational) -> String {
        format!("{}/{}", q.numer(), q.denom())
    }

    pub fn parse(s: &str) -> Result<BigRational, String> {
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let p = p
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: num_bigint::BigInt = q
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if q == 0.into() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(BigRational::new(p, q))
    }

    pub fn serialize_vec<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_string))
    }

    pub fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

fn check_simplex<'a>(
    coords: impl Iterator<Item = &'a BigRational>,
) -> Result<(), RealizationError> {
    let mut sum = BigRational::zero();
    for c in coords {
        if c.is_negative() {
            return Err(RealizationError::Negative(rational_json::to_string(c)));
        }
        sum += c;
    }
    if !sum.is_one() {
        return Err(RealizationError::BadSum(rational_json::to_string(&sum)));
    }
    Ok(())
}

/// A monotone map `[m] → [n]` stored as its values `θ(0) ≤ … ≤ θ(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialOperator {
    n: usize,
    values: Vec<usize>,
}

impl SimplicialOperator {
    pub fn new(n: usize, values: Vec<usize>) -> Result<Self, RealizationError> {
        if values.is_empty() {
            return Err(RealizationError::Dimension {
                expected: 1,
                found: 0,
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if value > n {
                return Err(RealizationError::OutOfRange { index, value, n });
            }
            if index > 0 && values[index - 1] > value {
                return Err(RealizationError::NotMonotone { index });
            }
        }
        Ok(SimplicialOperator { n, values })
    }

    pub fn identity(n: usize) -> Self {
        SimplicialOperator {
            n,
            values: (0..=n).collect(),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// `θ₂ ∘ θ₁`.
pub fn operator_compose(
    theta2: &SimplicialOperator,
    theta1: &SimplicialOperator,
) -> Result<SimplicialOperator, RealizationError> {
    if theta1.n != theta2.source_dim() {
        return Err(RealizationError::Dimension {
            expected: theta2.source_dim(),
            found: theta1.n,
        });
    }
    let values = theta1.values.iter().map(|&i| theta2.values[i]).collect();
    Ok(SimplicialOperator {
        n: theta2.n,
        values,
    })
}

/// A point of the standard simplex `Δⁿ` in barycentric coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSimplexPoint", into = "RawSimplexPoint")]
pub struct BarycentricPoint {
    coords: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RawSimplexPoint(
    #[serde(
        serialize_with = "rational_json::serialize_vec",
        deserialize_with = "rational_json::deserialize_vec"
    )]
    Vec<BigRational>,
);

impl TryFrom<RawSimplexPoint> for BarycentricPoint {
    type Error = RealizationError;

    fn try_from(raw: RawSimplexPoint) -> Result<Self, RealizationError> {
        BarycentricPoint::new(raw.0)
    }
}

impl From<BarycentricPoint> for RawSimplexPoint {
    fn from(p: BarycentricPoint) -> Self {
        RawSimplexPoint(p.coords)
    }
}

impl BarycentricPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self, RealizationError> {
        if coords.is_empty() {
            return Err(RealizationError::Dimension {
                expected: 1,
                found: 0,
            });
        }
        check_simplex(coords.iter())?;
        Ok(BarycentricPoint { coords })
    }

    /// Parses coordinates such as `["1/3", "2/3"]`.
    pub fn parse(coords: &[&str]) -> Result<Self, String> {
        let coords = coords
            .iter()
            .map(|s| rational_json::parse(s))
            .collect::<Result<_, _>>()?;
        BarycentricPoint::new(coords).map_err(|e| e.to_string())
    }

    pub fn vertex(n: usize, k: usize) -> Self {
        let coords = (0..=n)
            .map(|i| {
                if i == k {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        BarycentricPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }
}

impl fmt::Display for BarycentricPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(rational_json::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `(θ_* t)_j = Σ_{θ(i) = j} t_i`.
pub fn affine_push(
    theta: &SimplicialOperator,
    t: &BarycentricPoint,
) -> Result<BarycentricPoint, RealizationError> {
    if t.dim() != theta.source_dim() {
        return Err(RealizationError::Dimension {
            expected: theta.source_dim(),
            found: t.dim(),
        });
    }
    let mut coords = vec![BigRational::zero(); theta.n + 1];
    for (ti, &j) in t.coords.iter().zip(&theta.values) {
        coords[j] += ti;
    }
    Ok(BarycentricPoint { coords })
}

/// A finitely supported nonnegative sequence summing to one. Zeros are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<usize, String>", into = "BTreeMap<usize, String>")]
pub struct FinSeqPoint {
    coords: BTreeMap<usize, BigRational>,
}

impl TryFrom<BTreeMap<usize, String>> for FinSeqPoint {
    type Error = String;

    fn try_from(raw: BTreeMap<usize, String>) -> Result<Self, String> {
        let coords = raw
            .into_iter()
            .map(|(k, v)| rational_json::parse(&v).map(|q| (k, q)))
            .collect::<Result<_, _>>()?;
        FinSeqPoint::new(coords).map_err(|e| e.to_string())
    }
}

impl From<FinSeqPoint> for BTreeMap<usize, String> {
    fn from(p: FinSeqPoint) -> Self {
        p.coords
            .iter()
            .map(|(k, v)| (*k, rational_json::to_string(v)))
            .collect()
    }
}

impl FinSeqPoint {
    pub fn new(coords: BTreeMap<usize, BigRational>) -> Result<Self, RealizationError> {
        check_simplex(coords.values())?;
        Ok(FinSeqPoint {
            coords: coords.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        })
    }

    /// The first basis vector `e₀`.
    pub fn e0() -> Self {
        FinSeqPoint {
            coords: [(0, BigRational::one())].into(),
        }
    }

    pub fn coords(&self) -> &BTreeMap<usize, BigRational> {
        &self.coords
    }

    pub fn get(&self, k: usize) -> BigRational {
        self.coords
            .get(&k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Whether the stored coordinates satisfy the defining conditions.
    pub fn is_valid(&self) -> bool {
        self.coords.values().all(|v| !v.is_zero()) && check_simplex(self.coords.values()).is_ok()
    }
}

impl fmt::Display for FinSeqPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(k, v)| format!("{k}↦{}", rational_json::to_string(v)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `ȷ`: copies the coordinates of `t`, zero beyond its dimension.
pub fn embed_j(t: &BarycentricPoint) -> FinSeqPoint {
    let coords = t
        .coords
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, v.clone()))
        .collect();
    FinSeqPoint { coords }
}

/// `κ`: the shortest simplex point carrying the support of `a`.
pub fn kappa(a: &FinSeqPoint) -> BarycentricPoint {
    let n = a.coords.keys().next_back().copied().unwrap_or(0);
    BarycentricPoint {
        coords: (0..=n).map(|k| a.get(k)).collect(),
    }
}

/// Straight-line homotopy `(1 - s)·a + s·e₀`.
pub fn contraction(a: &FinSeqPoint, s: &BigRational) -> Result<FinSeqPoint, RealizationError> {
    if s.is_negative() || *s > BigRational::one() {
        return Err(RealizationError::ParameterRange(rational_json::to_string(
            s,
        )));
    }
    let keep = BigRational::one() - s;
    let mut coords: BTreeMap<usize, BigRational> =
        a.coords.iter().map(|(k, v)| (*k, v * &keep)).collect();
    *coords.entry(0).or_insert_with(BigRational::zero) += s;
    coords.retain(|_, v| !v.is_zero());
    Ok(FinSeqPoint { coords })
}

/// Whether every level equals level 0 and every face is the identity.
pub fn is_constant_presentation(p: &SimplicialPresentation) -> bool {
    let base = p.level(0);
    p.levels().iter().all(|s| s == base)
        && (1..=p.max_level()).all(|n| p.faces(n).iter().all(|d| d.is_identity()))
}

/// Symbolic cardinalities, ordered `finite < ℵ₀ < 2^ℵ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinality {
    Finite(u64),
    Countable,
    Continuum,
}

impl Cardinality {
    fn plus(self, other: Cardinality) -> Cardinality {
        match (self, other) {
            (Cardinality::Finite(a), Cardinality::Finite(b)) => Cardinality::Finite(a + b),
            (a, b) => a.max(b),
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(k) => write!(f, "{k}"),
            Cardinality::Countable => f.write_str("ℵ₀"),
            Cardinality::Continuum => f.write_str("2^ℵ₀"),
        }
    }
}

impl Serialize for Cardinality {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Path components of a presented space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Pi0Descriptor {
    /// One component per listed point of a discrete part.
    FinitePoints { points: Vec<(ComponentId, usize)> },
    /// Cantor components: every point is its own component.
    SingletonContinuum { components: Vec<ComponentId> },
    /// Disjoint union of the listed descriptors.
    Union { parts: Vec<Pi0Descriptor> },
    /// `π₀(Y × C)` for contractible `C`, equal to `π₀(Y)`.
    ProductWithContractible { inner: Box<Pi0Descriptor> },
}

impl Pi0Descriptor {
    pub fn cardinality(&self) -> Cardinality {
        match self {
            Pi0Descriptor::FinitePoints { points } => Cardinality::Finite(points.len() as u64),
            Pi0Descriptor::SingletonContinuum { components } if components.is_empty() => {
                Cardinality::Finite(0)
            }
            Pi0Descriptor::SingletonContinuum { .. } => Cardinality::Continuum,
            Pi0Descriptor::Union { parts } => parts
                .iter()
                .fold(Cardinality::Finite(0), |acc, p| acc.plus(p.cardinality())),
            Pi0Descriptor::ProductWithContractible { inner } => inner.cardinality(),
        }
    }

    /// Whether `a` and `b` lie in the same path component. Every component
    /// of a presented space is a single point.
    pub fn same_component(
        &self,
        a: &crate::cantor::SpacePoint,
        b: &crate::cantor::SpacePoint,
    ) -> bool {
        a == b
    }
}

pub fn pi0(space: &Space) -> Pi0Descriptor {
    let mut points = Vec::new();
    let mut cantor = Vec::new();
    for (i, c) in space.components().iter().enumerate() {
        match c {
            Component::Discrete(k) => points.extend((0..*k).map(|j| (ComponentId(i), j))),
            Component::Cantor(_) => cantor.push(ComponentId(i)),
        }
    }
    match (points.is_empty(), cantor.is_empty()) {
        (_, true) => Pi0Descriptor::FinitePoints { points },
        (true, false) => Pi0Descriptor::SingletonContinuum { components: cantor },
        (false, false) => Pi0Descriptor::Union {
            parts: vec![
                Pi0Descriptor::SingletonContinuum { components: cantor },
                Pi0Descriptor::FinitePoints { points },
            ],
        },
    }
}

/// A free abelian group given by the cardinality of a basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeAbelian {
    pub description: String,
    pub generators: Cardinality,
}

/// Singular `H₀`: free abelian on the path components.
pub fn h0_sing(d: &Pi0Descriptor) -> FreeAbelian {
    let generators = d.cardinality();
    let description = match generators {
        Cardinality::Finite(0) => "0".to_string(),
        Cardinality::Finite(1) => "ℤ".to_string(),
        Cardinality::Finite(k) => format!("ℤ^{k}"),
        Cardinality::Countable => "⊕_ℕ ℤ".to_string(),
        Cardinality::Continuum => "⊕_{x∈X} ℤ".to_string(),
    };
    FreeAbelian {
        description,
        generators,
    }
}

/// A finitely supported integer function on the Cantor set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FinSupFun {
    values: BTreeMap<CantorPoint, BigInt>,
}

impl FinSupFun {
    pub fn delta(x: &CantorPoint) -> Self {
        FinSupFun {
            values: [(x.clone(), BigInt::one())].into(),
        }
    }

    pub fn from_values(values: impl IntoIterator<Item = (CantorPoint, BigInt)>) -> Self {
        let mut out = BTreeMap::new();
        for (x, v) in values {
            *out.entry(x).or_insert_with(BigInt::zero) += v;
        }
        out.retain(|_, v: &mut BigInt| !v.is_zero());
        FinSupFun { values: out }
    }

    pub fn values(&self) -> &BTreeMap<CantorPoint, BigInt> {
        &self.values
    }

    pub fn evaluate(&self, x: &CantorPoint) -> BigInt {
        self.values.get(x).cloned().unwrap_or_else(BigInt::zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaBasis {
    pub functions: Vec<FinSupFun>,
    /// Index pairs `(i, j)`, `i < j`, with equal deltas.
    pub duplicates: Vec<(usize, usize)>,
}

impl DeltaBasis {
    pub fn pairwise_distinct(&self) -> bool {
        self.duplicates.is_empty()
    }
}

pub fn delta_basis(points: &[CantorPoint]) -> DeltaBasis {
    let functions: Vec<FinSupFun> = points.iter().map(FinSupFun::delta).collect();
    let mut first: BTreeMap<&FinSupFun, usize> = BTreeMap::new();
    let mut duplicates = Vec::new();
    for (j, f) in functions.iter().enumerate() {
        match first.get(f) {
            Some(&i) => duplicates.push((i, j)),
            None => {
                first.insert(f, j);
            }
        }
    }
    DeltaBasis {
        functions: functions.clone(),
        duplicates,
    }
}

impl PartialOrd for FinSupFun {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FinSupFun {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.values.iter().cmp(other.values.iter())
    }
}

/// One check behind a comparison verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub side: Side,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Moore,
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NotIsomorphic,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MooreSide {
    pub group: String,
    pub cardinality: Cardinality,
    pub depth: usize,
    pub rank_at_depth: Option<usize>,
    pub enumerated: usize,
    pub complete_stages: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SingularSide {
    pub constant: bool,
    pub descriptor: Option<Pi0Descriptor>,
    pub group: Option<FreeAbelian>,
    pub sampled_points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComparisonReport {
    pub moore: MooreSide,
    pub singular: SingularSide,
    pub verdict: Verdict,
    pub reason: String,
    pub witnesses: Vec<Witness>,
    pub diagnostics: Vec<String>,
}

impl ComparisonReport {
    pub fn all_witnesses_pass(&self) -> bool {
        self.witnesses.iter().all(|w| w.passed)
    }
}

/// Builds the unit groupoid nerve on the Cantor set and compares both
/// sides of `H₀`.
pub fn compare_h0(
    levels: usize,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<ComparisonReport, RealizationError> {
    if levels < 2 {
        return Err(RealizationError::TooFewLevels(levels));
    }
    compare_h0_for(&nerve_unit_cantor(levels), depth, samples, seed)
}

pub fn compare_h0_for(
    p: &SimplicialPresentation,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<ComparisonReport, RealizationError> {
    if p.max_level() < 2 {
        return Err(RealizationError::TooFewLevels(p.max_level()));
    }
    let mut witnesses = Vec::new();
    let mut push = |side, name: &str, passed, detail: String| {
        witnesses.push(Witness {
            side,
            name: name.to_string(),
            passed,
            detail,
        });
    };

    let (ok, detail) = boundary_pattern(p, depth);
    push(Side::Moore, "boundary-pattern", ok, detail);

    let rank = homology_at_depth(p, 0, depth).ok().map(|h| h.rank);
    let cells = p.level(0).basis_at_depth(depth).map(|b| b.len()).ok();
    push(
        Side::Moore,
        "h0-rank",
        rank.is_some() && rank == cells,
        format!("rank {rank:?}, depth-{depth} cells {cells:?}"),
    );

    let is_cantor = **p.level(0) == Space::cantor();
    let enumerated: Vec<LocIntFun> = EnumerationCursor::at(0).take(samples).collect();
    let distinct = enumerated.iter().collect::<HashSet<_>>().len() == enumerated.len();
    push(
        Side::Moore,
        "enumeration-distinct",
        is_cantor && distinct,
        format!(
            "{} outputs, pairwise distinct: {distinct}",
            enumerated.len()
        ),
    );

    let (complete_stages, stages_ok, detail) = stage_completeness(&enumerated);
    push(
        Side::Moore,
        "enumeration-stage-complete",
        is_cantor && stages_ok,
        detail,
    );

    let constant = is_constant_presentation(p);
    push(
        Side::Singular,
        "constant-presentation",
        constant,
        if constant {
            "all levels equal, all faces identity".into()
        } else {
            "some level or face differs".into()
        },
    );

    let descriptor = constant.then(|| Pi0Descriptor::ProductWithContractible {
        inner: Box::new(pi0(p.level(0))),
    });
    let group = descriptor.as_ref().map(h0_sing);
    let continuum = group
        .as_ref()
        .is_some_and(|g| g.generators == Cardinality::Continuum);
    push(
        Side::Singular,
        "pi0-continuum",
        continuum,
        format!(
            "generators: {}",
            group
                .as_ref()
                .map_or("-".into(), |g| g.generators.to_string())
        ),
    );

    let points = sampling::distinct_points(&mut sampling::rng(seed), samples);
    let basis = delta_basis(&points);
    push(
        Side::Singular,
        "delta-distinct",
        basis.pairwise_distinct() && basis.functions.len() == samples,
        format!(
            "{} deltas, duplicates {:?}",
            basis.functions.len(),
            basis.duplicates
        ),
    );

    let bad: Vec<String> = points
        .iter()
        .filter(|x| {
            let w = delta_witness(x, depth);
            !(w.y != **x
                && w.y.prefix(depth) == x.prefix(depth)
                && w.value_at_x == 1
                && w.value_at_y == 0)
        })
        .map(|x| x.to_string())
        .collect();
    push(
        Side::Singular,
        "delta-not-locally-constant",
        bad.is_empty(),
        format!(
            "{} points checked at depth {depth}, failures {bad:?}",
            points.len()
        ),
    );

    let moore = MooreSide {
        group: "C(X,ℤ)".into(),
        cardinality: Cardinality::Countable,
        depth,
        rank_at_depth: rank,
        enumerated: enumerated.len(),
        complete_stages,
    };
    let singular = SingularSide {
        constant,
        descriptor,
        group: group.clone(),
        sampled_points: points.len(),
    };
    let diagnostics: Vec<String> = witnesses
        .iter()
        .filter(|w| !w.passed)
        .map(|w| format!("{} check failed: {}", w.name, w.detail))
        .collect();
    let separated = group.is_some_and(|g| moore.cardinality < g.generators);
    let (verdict, reason) = if diagnostics.is_empty() && separated {
        (
            Verdict::NotIsomorphic,
            "countable vs. cardinality ≥ 2^ℵ₀".to_string(),
        )
    } else {
        (
            Verdict::Inconclusive,
            "not every witness passed".to_string(),
        )
    };
    Ok(ComparisonReport {
        moore,
        singular,
        verdict,
        reason,
        witnesses,
        diagnostics,
    })
}

fn boundary_pattern(p: &SimplicialPresentation, depth: usize) -> (bool, String) {
    let mut seen = Vec::new();
    for n in 0..=p.max_level() {
        let m = match truncation_matrix(p, n, depth) {
            Ok(m) => m,
            Err(e) => return (false, format!("∂{n}: {e}")),
        };
        let expect_identity = n >= 2 && n % 2 == 0;
        let ok = if expect_identity {
            m.is_identity()
        } else {
            m.is_zero()
        };
        seen.push(format!(
            "∂{n}={}",
            if m.is_zero() {
                "0"
            } else if m.is_identity() {
                "id"
            } else {
                "other"
            }
        ));
        if !ok {
            return (false, seen.join(" "));
        }
    }
    (true, seen.join(" "))
}

/// Checks that the outputs fill every stage they cover completely.
fn stage_completeness(enumerated: &[LocIntFun]) -> (u32, bool, String) {
    let mut s = 0u32;
    let mut ok = true;
    while stage_end(s) <= enumerated.len() as u128 {
        let end = stage_end(s) as usize;
        let produced: HashSet<&LocIntFun> = enumerated[..end].iter().collect();
        let expected = brute_force_stage(s);
        if produced.len() != expected.len() || expected.iter().any(|f| !produced.contains(f)) {
            ok = false;
            break;
        }
        s += 1;
    }
    (s, ok, format!("stages 0..{s} complete: {ok}"))
}

/// All functions constant on depth-`s` cells with values in `-s..=s`.
pub fn brute_force_stage(s: u32) -> Vec<LocIntFun> {
    let x = std::sync::Arc::new(Space::cantor());
    let cells = x.basis_at_depth(s as usize).expect("full Cantor space");
    let base = 2 * i64::from(s) + 1;
    let count = (base as u128).pow(cells.len() as u32);
    let mut out = Vec::with_capacity(count as usize);
    for mut code in 0..count {
        let mut terms: Vec<(Cell, BigInt)> = Vec::with_capacity(cells.len());
        for c in &cells {
            let v = (code % base as u128) as i64 - i64::from(s);
            code /= base as u128;
            terms.push((c.clone(), BigInt::from(v)));
        }
        out.push(LocIntFun::make(x.clone(), &terms).expect("cells lie in the space"));
    }
    out
}

/// A random monotone operator with dimensions up to `max_dim`.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> SimplicialOperator {
    let m = rng.gen_range(0..=max_dim);
    let n = rng.gen_range(0..=max_dim);
    random_operator_between(rng, m, n)
}

pub fn random_operator_between<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
) -> SimplicialOperator {
    let mut values: Vec<usize> = (0..=m).map(|_| rng.gen_range(0..=n)).collect();
    values.sort_unstable();
    SimplicialOperator { n, values }
}

/// A random simplex point of dimension `n` with denominators dividing a
/// random bound up to `max_den`.
pub fn random_simplex_point<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_den: u32,
) -> BarycentricPoint {
    let den = rng.gen_range(1..=max_den.max(1));
    // Random composition of `den` into n + 1 nonnegative parts.
    let mut cuts: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=den)).collect();
    cuts.sort_unstable();
    let mut prev = 0;
    let mut coords = Vec::with_capacity(n + 1);
    for c in cuts.into_iter().chain([den]) {
        coords.push(BigRational::new(BigInt::from(c - prev), BigInt::from(den)));
        prev = c;
    }
    BarycentricPoint { coords }
}

/// A random point of `Δ^∞_fin` with support inside `0..=max_index`.
pub fn random_finseq<R: Rng + ?Sized>(rng: &mut R, max_index: usize, max_den: u32) -> FinSeqPoint {
    let support: BTreeSet<usize> = (0..rng.gen_range(1..=4))
        .map(|_| rng.gen_range(0..=max_index))
        .collect();
    let t = random_simplex_point(rng, support.len() - 1, max_den);
    let coords = support
        .into_iter()
        .zip(t.coords)
        .filter(|(_, v)| !v.is_zero())
        .collect();
    FinSeqPoint { coords }
}

pub fn random_parameter<R: Rng + ?Sized>(rng: &mut R, max_den: u32) -> BigRational {
    let den = rng.gen_range(1..=max_den.max(1));
    BigRational::new(BigInt::from(rng.gen_range(0..=den)), BigInt::from(den))
}

/// Outcome of one sampled property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub witness: Option<String>,
}

impl PropertyOutcome {
    fn new(name: &str) -> Self {
        PropertyOutcome {
            name: name.to_string(),
            passed: 0,
            failed: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationSuite {
    pub samples: usize,
    pub seed: u64,
    pub properties: Vec<PropertyOutcome>,
}

impl RealizationSuite {
    pub fn all_pass(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Property suite over `samples` seeded cases each. With `fault` set, the
/// affine push drops the last coordinate.
pub fn realization_suite(samples: usize, seed: u64, fault: bool) -> RealizationSuite {
    let mut rng = sampling::rng(seed);
    let push = |theta: &SimplicialOperator, t: &BarycentricPoint| {
        let mut out = affine_push(theta, t).expect("dimensions agree");
        if fault {
            let last = *theta.values.last().expect("nonempty operator");
            out.coords[last] -= t.coords.last().expect("nonempty point");
        }
        out
    };

    let mut simplex = PropertyOutcome::new("affine-push-simplex");
    let mut functor = PropertyOutcome::new("affine-push-functorial");
    let mut compat = PropertyOutcome::new("j-compatibility");
    let mut j_kappa = PropertyOutcome::new("j-kappa-identity");
    let mut kappa_j = PropertyOutcome::new("kappa-j-round-trip");
    let mut ends = PropertyOutcome::new("contraction-endpoints");
    let mut member = PropertyOutcome::new("contraction-membership");

    for _ in 0..samples {
        let theta = random_operator(&mut rng, 5);
        let t = random_simplex_point(&mut rng, theta.source_dim(), 12);
        let pushed = push(&theta, &t);
        simplex.record(check_simplex(pushed.coords.iter()).is_ok(), || {
            format!("θ={:?} t={t} ↦ {pushed}", theta.values)
        });
        compat.record(embed_j(&pushed) == embed_j(&t), || {
            format!(
                "θ={:?} t={t}: ȷ(θ_*t)={} ȷ(t)={}",
                theta.values,
                embed_j(&pushed),
                embed_j(&t)
            )
        });

        let k = rng.gen_range(0..=5);
        let theta2 = random_operator_between(&mut rng, theta.n, k);
        let both = operator_compose(&theta2, &theta).expect("composable");
        let lhs = push(&both, &t);
        let rhs = push(&theta2, &pushed);
        functor.record(lhs == rhs, || {
            format!("θ₁={:?} θ₂={:?} t={t}", theta.values, theta2.values)
        });

        let a = random_finseq(&mut rng, 8, 12);
        j_kappa.record(embed_j(&kappa(&a)) == a, || format!("a={a}"));
        kappa_j.record(embed_j(&kappa(&embed_j(&t))) == embed_j(&t), || {
            format!("t={t}")
        });

        let zero = contraction(&a, &BigRational::zero()).expect("in range");
        let one = contraction(&a, &BigRational::one()).expect("in range");
        ends.record(zero == a && one == FinSeqPoint::e0(), || {
            format!("a={a}: s=0 ↦ {zero}, s=1 ↦ {one}")
        });
        let s = random_parameter(&mut rng, 12);
        let h = contraction(&a, &s).expect("in range");
        member.record(h.is_valid(), || {
            format!("a={a} s={}: {h}", rational_json::to_string(&s))
        });
    }
    RealizationSuite {
        samples,
        seed,
        properties: vec![simplex, functor, compat, j_kappa, kappa_j, ends, member],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{separating_point, SpacePoint};
    use crate::maps::standard;

    fn q(s: &str) -> BigRational {
        rational_json::parse(s).unwrap()
    }

    fn pt(c: &[&str]) -> BarycentricPoint {
        BarycentricPoint::parse(c).unwrap()
    }

    fn op(n: usize, v: &[usize]) -> SimplicialOperator {
        SimplicialOperator::new(n, v.to_vec()).unwrap()
    }

    fn seq(c: &[(usize, &str)]) -> FinSeqPoint {
        FinSeqPoint::new(c.iter().map(|(k, v)| (*k, q(v))).collect()).unwrap()
    }

    #[test]
    fn operator_validation() {
        assert!(SimplicialOperator::new(2, vec![0, 3]).is_err());
        assert!(SimplicialOperator::new(2, vec![1, 0]).is_err());
        assert!(SimplicialOperator::new(2, vec![]).is_err());
        assert_eq!(op(2, &[0, 2]).source_dim(), 1);
    }

    #[test]
    fn point_validation() {
        assert!(BarycentricPoint::parse(&["1/2", "1/3"]).is_err());
        assert!(BarycentricPoint::parse(&["3/2", "-1/2"]).is_err());
        assert!(BarycentricPoint::parse(&["1/0"]).is_err());
        assert_eq!(pt(&["2/4", "1/2"]).coords()[0], q("1/2"));
    }

    #[test]
    fn affine_push_examples() {
        let t = pt(&["1/3", "2/3"]);
        assert_eq!(
            affine_push(&SimplicialOperator::identity(1), &t).unwrap(),
            t
        );
        assert_eq!(
            affine_push(&op(2, &[0, 2]), &t).unwrap(),
            pt(&["1/3", "0", "2/3"])
        );
        assert_eq!(
            affine_push(&op(1, &[0, 0, 1]), &pt(&["1/4", "1/4", "1/2"])).unwrap(),
            pt(&["1/2", "1/2"])
        );
        assert!(matches!(
            affine_push(&op(1, &[0, 1]), &pt(&["1"])),
            Err(RealizationError::Dimension { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let theta = op(2, &[0, 2]);
        assert_eq!(
            operator_compose(&SimplicialOperator::identity(2), &theta).unwrap(),
            theta
        );
        assert_eq!(
            operator_compose(&op(2, &[0, 2]), &op(1, &[0, 1])).unwrap(),
            op(2, &[0, 2])
        );
        assert!(operator_compose(&op(2, &[0, 2]), &op(2, &[0, 1])).is_err());
    }

    #[test]
    fn embed_and_kappa_examples() {
        assert_eq!(embed_j(&pt(&["1"])), FinSeqPoint::e0());
        assert_eq!(
            embed_j(&pt(&["1/2", "1/2"])),
            seq(&[(0, "1/2"), (1, "1/2")])
        );
        assert_eq!(kappa(&seq(&[(1, "1")])), pt(&["0", "1"]));
        assert_eq!(kappa(&FinSeqPoint::e0()), pt(&["1"]));
        // Trailing zeros are a degeneracy: the embedding forgets them.
        assert_eq!(
            kappa(&embed_j(&pt(&["1/2", "1/2", "0"]))),
            pt(&["1/2", "1/2"])
        );
    }

    #[test]
    fn j_compatibility_fails_for_a_coface() {
        // θ : [0] → [1], 0 ↦ 1 moves the vertex e₀ to e₁.
        let t = pt(&["1"]);
        let pushed = affine_push(&op(1, &[1]), &t).unwrap();
        assert_eq!(embed_j(&pushed), seq(&[(1, "1")]));
        assert_ne!(embed_j(&pushed), embed_j(&t));
        // It holds when θ fixes the support of t.
        let t = pt(&["1/3", "2/3", "0"]);
        let pushed = affine_push(&op(1, &[0, 1, 1]), &t).unwrap();
        assert_eq!(embed_j(&pushed), embed_j(&t));
    }

    #[test]
    fn contraction_examples() {
        let a = seq(&[(0, "1/2"), (2, "1/2")]);
        assert_eq!(contraction(&a, &q("0")).unwrap(), a);
        assert_eq!(contraction(&a, &q("1")).unwrap(), FinSeqPoint::e0());
        assert_eq!(
            contraction(&a, &q("1/2")).unwrap(),
            seq(&[(0, "3/4"), (2, "1/4")])
        );
        assert!(contraction(&a, &q("3/2")).is_err());
        assert!(contraction(&a, &q("-1/2")).is_err());
    }

    #[test]
    fn rational_json_format() {
        let t = pt(&["1/3", "0", "2/3"]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"["1/3","0/1","2/3"]"#);
        assert_eq!(serde_json::from_str::<BarycentricPoint>(&json).unwrap(), t);
        assert!(serde_json::from_str::<BarycentricPoint>(r#"["1/2"]"#).is_err());
        let a = seq(&[(0, "1/4"), (3, "3/4")]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"0":"1/4","3":"3/4"}"#);
        assert_eq!(serde_json::from_str::<FinSeqPoint>(&json).unwrap(), a);
    }

    #[test]
    fn constant_presentation_examples() {
        assert!(is_constant_presentation(&nerve_unit_cantor(3)));
        assert!(!is_constant_presentation(
            &crate::complex::nerve_pair_groupoid(2, 2).unwrap()
        ));
        let bad = nerve_unit_cantor(2)
            .with_face(2, 1, standard::bit_swap())
            .unwrap();
        assert!(!is_constant_presentation(&bad));
    }

    #[test]
    fn pi0_examples() {
        let d = pi0(&Space::discrete(3).unwrap());
        assert_eq!(d.cardinality(), Cardinality::Finite(3));
        assert_eq!(h0_sing(&d).description, "ℤ^3");
        let c = pi0(&Space::cantor());
        assert_eq!(
            c,
            Pi0Descriptor::SingletonContinuum {
                components: vec![ComponentId(0)]
            }
        );
        assert_eq!(h0_sing(&c).description, "⊕_{x∈X} ℤ");
        let mixed = Space::new(vec![
            Component::Cantor(vec![Default::default()]),
            Component::Discrete(2),
        ])
        .unwrap();
        let m = pi0(&mixed);
        assert!(matches!(m, Pi0Descriptor::Union { .. }));
        assert_eq!(m.cardinality(), Cardinality::Continuum);
        let prod = Pi0Descriptor::ProductWithContractible {
            inner: Box::new(c.clone()),
        };
        assert_eq!(h0_sing(&prod), h0_sing(&c));
        assert!(Cardinality::Finite(u64::MAX) < Cardinality::Countable);
        assert!(Cardinality::Countable < Cardinality::Continuum);
    }

    #[test]
    fn pi0_separates_points() {
        let desc = pi0(&Space::cantor());
        for x in sampling::distinct_points(&mut sampling::rng(4), 50) {
            for d in 0..8 {
                let y = separating_point(&x, d);
                assert!(!desc
                    .same_component(&SpacePoint::cantor(0, x.clone()), &SpacePoint::cantor(0, y)));
            }
        }
    }

    #[test]
    fn delta_basis_examples() {
        let x: CantorPoint = "01(1)".parse().unwrap();
        let b = delta_basis(std::slice::from_ref(&x));
        assert_eq!(b.functions, vec![FinSupFun::delta(&x)]);
        let pts = sampling::distinct_points(&mut sampling::rng(9), 100);
        assert!(delta_basis(&pts).pairwise_distinct());
        let y: CantorPoint = "(0)".parse().unwrap();
        let b = delta_basis(&[x.clone(), y, x]);
        assert_eq!(b.duplicates, vec![(0, 2)]);
    }

    #[test]
    fn fin_sup_fun_sums() {
        let x: CantorPoint = "(01)".parse().unwrap();
        let f =
            FinSupFun::from_values([(x.clone(), BigInt::from(2)), (x.clone(), BigInt::from(-2))]);
        assert!(f.values().is_empty());
        assert_eq!(FinSupFun::delta(&x).evaluate(&x), BigInt::one());
    }

    #[test]
    fn compare_examples() {
        let r = compare_h0(3, 3, 100, sampling::DEFAULT_SEED).unwrap();
        assert_eq!(r.verdict, Verdict::NotIsomorphic, "{:?}", r.diagnostics);
        assert!(r.all_witnesses_pass());
        assert_eq!(r.moore.rank_at_depth, Some(8));
        assert_eq!(r.moore.complete_stages, 2);

        let r = compare_h0(2, 0, 1, sampling::DEFAULT_SEED).unwrap();
        assert_eq!(r.verdict, Verdict::NotIsomorphic, "{:?}", r.diagnostics);

        assert!(compare_h0(1, 0, 1, 0).is_err());
    }

    #[test]
    fn compare_refuses_non_constant() {
        let bad = nerve_unit_cantor(3)
            .with_face(2, 1, standard::bit_swap())
            .unwrap();
        let r = compare_h0_for(&bad, 2, 10, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r
            .diagnostics
            .iter()
            .any(|d| d.starts_with("constant-presentation")));
        assert!(r
            .diagnostics
            .iter()
            .any(|d| d.starts_with("boundary-pattern")));
    }

    #[test]
    fn brute_force_stage_sizes() {
        assert_eq!(brute_force_stage(0).len(), 1);
        assert_eq!(brute_force_stage(1).len(), 9);
        assert_eq!(
            brute_force_stage(2).iter().collect::<HashSet<_>>().len(),
            625
        );
    }

    #[test]
    fn suite_reports() {
        let s = realization_suite(200, 3, false);
        for p in &s.properties {
            if p.name != "j-compatibility" {
                assert_eq!(p.failed, 0, "{p:?}");
            }
        }
        let c = s.property("j-compatibility").unwrap();
        assert!(c.failed > 0 && c.witness.is_some());
        let f = realization_suite(200, 3, true);
        assert!(f.property("affine-push-simplex").unwrap().failed > 0);
    }
}
