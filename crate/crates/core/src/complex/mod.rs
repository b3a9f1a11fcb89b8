//! Moore chain complexes of simplicial-space presentations.
//!
//! Level `n` carries the chain group `C_c(G_n, ℤ)` and the boundary is the
//! alternating sum of face pushforwards `∂ₙ = Σ (-1)^i (dᵢ)_*`. Homology is
//! computed at a fixed cell depth `d` from integer matrices of `∂ₙ`.

pub mod matrix;
pub mod snf;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cantor::{CantorError, Cell, Space};
use crate::maps::{compose, LocalHomeo, MapError, PrefixChart};
use crate::sampling;
use crate::zfun::LocIntFun;

pub use matrix::{IntMatrix, MatrixError};
pub use snf::{smith_normal_form, SnfResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("level {level} out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("presentation needs at least one level above 0")]
    NoLevels,
    #[error("level {level} must have {expected} faces, found {found}")]
    FaceCount {
        level: usize,
        expected: usize,
        found: usize,
    },
    #[error("face d{face} at level {level} has the wrong domain or codomain")]
    FaceSpaces { level: usize, face: usize },
    #[error("face d{face} at level {level}: {source}")]
    Face {
        level: usize,
        face: usize,
        source: MapError,
    },
    #[error("face d{face} at level {level} is not depth preserving: chart {chart} shifts depth by {shift}")]
    NotDepthPreserving {
        level: usize,
        face: usize,
        chart: usize,
        shift: isize,
    },
    #[error("depth {depth} is coarser than the charts of face d{face} at level {level}")]
    DepthTooCoarse {
        level: usize,
        face: usize,
        depth: usize,
    },
    #[error("∂{level} ∘ ∂{next} is not zero")]
    BoundarySquareNonzero { level: usize, next: usize },
    #[error(transparent)]
    Space(#[from] CantorError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A finite truncation `G_0, …, G_N` of a simplicial space with its face maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialPresentation {
    levels: Vec<Arc<Space>>,
    /// `faces[n - 1][i]` is `dᵢ : G_n → G_{n-1}`.
    faces: Vec<Vec<LocalHomeo>>,
}

/// A failed face identity `dᵢ ∘ dⱼ = dⱼ₋₁ ∘ dᵢ` at some level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceIdentityViolation {
    pub level: usize,
    pub i: usize,
    pub j: usize,
}

impl SimplicialPresentation {
    pub fn new(levels: Vec<Arc<Space>>, faces: Vec<Vec<LocalHomeo>>) -> Result<Self, ComplexError> {
        if levels.len() < 2 {
            return Err(ComplexError::NoLevels);
        }
        if faces.len() != levels.len() - 1 {
            return Err(ComplexError::FaceCount {
                level: faces.len().min(levels.len() - 1) + 1,
                expected: 0,
                found: faces.len(),
            });
        }
        for (k, fs) in faces.iter().enumerate() {
            let n = k + 1;
            if fs.len() != n + 1 {
                return Err(ComplexError::FaceCount {
                    level: n,
                    expected: n + 1,
                    found: fs.len(),
                });
            }
            for (i, d) in fs.iter().enumerate() {
                if d.domain() != &levels[n] || d.codomain() != &levels[n - 1] {
                    return Err(ComplexError::FaceSpaces { level: n, face: i });
                }
            }
        }
        Ok(SimplicialPresentation { levels, faces })
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Arc<Space> {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Arc<Space>] {
        &self.levels
    }

    /// Faces `d₀, …, dₙ` out of level `n ≥ 1`.
    pub fn faces(&self, n: usize) -> &[LocalHomeo] {
        &self.faces[n - 1]
    }

    /// Copy with face `dᵢ` at level `n` replaced.
    pub fn with_face(&self, n: usize, i: usize, face: LocalHomeo) -> Result<Self, ComplexError> {
        let mut faces = self.faces.clone();
        faces[n - 1][i] = face;
        SimplicialPresentation::new(self.levels.clone(), faces)
    }

    /// Checks `dᵢ ∘ dⱼ = dⱼ₋₁ ∘ dᵢ` for all `i < j` by chart comparison.
    pub fn face_identity_violations(&self) -> Result<Vec<FaceIdentityViolation>, ComplexError> {
        let mut out = Vec::new();
        for n in 2..=self.max_level() {
            let top = self.faces(n);
            let below = self.faces(n - 1);
            for j in 1..=n {
                for i in 0..j {
                    let lhs = compose(&below[i], &top[j])?;
                    let rhs = compose(&below[j - 1], &top[i])?;
                    if !lhs.same_map(&rhs) {
                        out.push(FaceIdentityViolation { level: n, i, j });
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_level(&self, n: usize) -> Result<(), ComplexError> {
        if n > self.max_level() {
            return Err(ComplexError::LevelOutOfRange {
                level: n,
                max: self.max_level(),
            });
        }
        Ok(())
    }

    pub fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            max_level: self.max_level(),
            levels: self.levels.iter().map(|s| (**s).clone()).collect(),
            faces: self
                .faces
                .iter()
                .map(|fs| fs.iter().map(|d| d.charts().to_vec()).collect())
                .collect(),
        }
    }

    pub fn from_doc(doc: PresentationDoc) -> Result<Self, ComplexError> {
        if doc.levels.len() != doc.max_level + 1 {
            return Err(ComplexError::LevelOutOfRange {
                level: doc.levels.len(),
                max: doc.max_level,
            });
        }
        let levels: Vec<Arc<Space>> = doc.levels.into_iter().map(Arc::new).collect();
        let mut faces = Vec::new();
        for (k, fs) in doc.faces.into_iter().enumerate() {
            let n = k + 1;
            if n >= levels.len() {
                return Err(ComplexError::FaceCount {
                    level: n,
                    expected: 0,
                    found: fs.len(),
                });
            }
            let mut row = Vec::new();
            for (i, charts) in fs.into_iter().enumerate() {
                let d = LocalHomeo::new(levels[n].clone(), levels[n - 1].clone(), charts).map_err(
                    |source| ComplexError::Face {
                        level: n,
                        face: i,
                        source,
                    },
                )?;
                row.push(d);
            }
            faces.push(row);
        }
        SimplicialPresentation::new(levels, faces)
    }
}

/// JSON form: `{"maxLevel": N, "levels": [...], "faces": [[d₀, …, dₙ] per n]}`
/// with every face given by its chart list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PresentationDoc {
    pub max_level: usize,
    pub levels: Vec<Space>,
    pub faces: Vec<Vec<Vec<PrefixChart>>>,
}

/// Nerve of the unit groupoid on the Cantor set: every level is the Cantor
/// set (identified with the diagonal) and every face is the identity.
pub fn nerve_unit_cantor(max_level: usize) -> SimplicialPresentation {
    constant_nerve(Arc::new(Space::cantor()), max_level)
}

/// Nerve of the unit groupoid on a finite set of `size` points.
pub fn nerve_unit_discrete(
    size: usize,
    max_level: usize,
) -> Result<SimplicialPresentation, ComplexError> {
    Ok(constant_nerve(Arc::new(Space::discrete(size)?), max_level))
}

fn constant_nerve(space: Arc<Space>, max_level: usize) -> SimplicialPresentation {
    let max_level = max_level.max(1);
    let levels = vec![space.clone(); max_level + 1];
    let faces = (1..=max_level)
        .map(|n| vec![LocalHomeo::identity(space.clone()); n + 1])
        .collect();
    SimplicialPresentation::new(levels, faces).expect("constant nerve is well formed")
}

/// Nerve of the pair groupoid on `size` objects: level `n` is the set of
/// `(n+1)`-tuples (first coordinate most significant in the point index)
/// and `dᵢ` deletes coordinate `i`.
pub fn nerve_pair_groupoid(
    size: usize,
    max_level: usize,
) -> Result<SimplicialPresentation, ComplexError> {
    let max_level = max_level.max(1);
    let levels: Vec<Arc<Space>> = (0..=max_level)
        .map(|n| Space::discrete(size.pow(n as u32 + 1)).map(Arc::new))
        .collect::<Result<_, _>>()?;
    let mut faces = Vec::new();
    for n in 1..=max_level {
        let count = size.pow(n as u32 + 1);
        let mut row = Vec::new();
        for i in 0..=n {
            let charts = (0..count)
                .map(|idx| {
                    let mut digits = to_digits(idx, size, n + 1);
                    digits.remove(i);
                    PrefixChart::atoms((0, idx), (0, from_digits(&digits, size)))
                })
                .collect();
            row.push(LocalHomeo::new(
                levels[n].clone(),
                levels[n - 1].clone(),
                charts,
            )?);
        }
        faces.push(row);
    }
    SimplicialPresentation::new(levels, faces)
}

fn to_digits(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for k in (0..len).rev() {
        d[k] = idx % base;
        idx /= base;
    }
    d
}

fn from_digits(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * base + x)
}

/// A formal signed sum of pushforwards between two levels.
#[derive(Debug, Clone)]
pub struct ChainMap {
    codomain: Arc<Space>,
    terms: Vec<(i64, LocalHomeo)>,
}

impl ChainMap {
    pub fn terms(&self) -> &[(i64, LocalHomeo)] {
        &self.terms
    }

    pub fn apply(&self, chain: &LocIntFun) -> Result<LocIntFun, ComplexError> {
        let mut acc = LocIntFun::zero(self.codomain.clone());
        for (sign, d) in &self.terms {
            let pushed = d.pushforward(chain)?.scale(&BigInt::from(*sign));
            acc = acc.add(&pushed).expect("terms share the codomain");
        }
        Ok(acc)
    }
}

/// `∂ₙ = Σ (-1)^i (dᵢ)_*`; `∂₀` is the zero map to the empty space.
pub fn boundary(p: &SimplicialPresentation, n: usize) -> Result<ChainMap, ComplexError> {
    p.check_level(n)?;
    if n == 0 {
        return Ok(ChainMap {
            codomain: Arc::new(Space::empty()),
            terms: Vec::new(),
        });
    }
    let terms = p
        .faces(n)
        .iter()
        .enumerate()
        .map(|(i, d)| (if i % 2 == 0 { 1 } else { -1 }, d.clone()))
        .collect();
    Ok(ChainMap {
        codomain: p.level(n - 1).clone(),
        terms,
    })
}

pub fn apply_boundary(
    p: &SimplicialPresentation,
    n: usize,
    chain: &LocIntFun,
) -> Result<LocIntFun, ComplexError> {
    boundary(p, n)?.apply(chain)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DdReport {
    pub level: usize,
    pub samples: usize,
    pub zero: usize,
    /// First chain `c` with `∂ₙ₋₁ ∂ₙ c ≠ 0`, with that value, as JSON.
    pub counterexample: Option<(String, String)>,
}

impl DdReport {
    pub fn all_zero(&self) -> bool {
        self.zero == self.samples
    }
}

/// Applies `∂ₙ₋₁ ∘ ∂ₙ` to `samples` seeded random chains of depth ≤ `depth`.
pub fn verify_dd_zero(
    p: &SimplicialPresentation,
    n: usize,
    samples: usize,
    depth: usize,
    seed: u64,
) -> Result<DdReport, ComplexError> {
    if n < 2 {
        return Err(ComplexError::LevelOutOfRange {
            level: n,
            max: p.max_level(),
        });
    }
    let outer = boundary(p, n)?;
    let inner = boundary(p, n - 1)?;
    let mut rng = sampling::rng(seed ^ n as u64);
    let mut report = DdReport {
        level: n,
        samples,
        zero: 0,
        counterexample: None,
    };
    for _ in 0..samples {
        let c = sampling::random_function(p.level(n), &mut rng, depth, 5);
        let dd = inner.apply(&outer.apply(&c)?)?;
        if dd.is_zero() {
            report.zero += 1;
        } else if report.counterexample.is_none() {
            report.counterexample = Some((c.to_json(), dd.to_json()));
        }
    }
    Ok(report)
}

fn depth_preserving(p: &SimplicialPresentation, n: usize) -> Result<(), ComplexError> {
    for (i, d) in p.faces(n).iter().enumerate() {
        if let Some((chart, c)) = d.charts().iter().enumerate().find(|(_, c)| c.shift() != 0) {
            return Err(ComplexError::NotDepthPreserving {
                level: n,
                face: i,
                chart,
                shift: c.shift(),
            });
        }
    }
    Ok(())
}

/// Matrix of `∂ₙ` in the bases of depth-`d` cells of levels `n` and `n-1`.
pub fn truncation_matrix(
    p: &SimplicialPresentation,
    n: usize,
    d: usize,
) -> Result<IntMatrix, ComplexError> {
    p.check_level(n)?;
    let cols = p.level(n).basis_at_depth(d)?;
    if n == 0 {
        return Ok(IntMatrix::zeros(0, cols.len()));
    }
    depth_preserving(p, n)?;
    let rows = p.level(n - 1).basis_at_depth(d)?;
    let row_of: HashMap<&Cell, usize> = rows.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (i, face) in p.faces(n).iter().enumerate() {
        let sign = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
        for (j, cell) in cols.iter().enumerate() {
            let image = face.image_cell(cell).map_err(|e| match e {
                MapError::CellTooCoarse { .. } => ComplexError::DepthTooCoarse {
                    level: n,
                    face: i,
                    depth: d,
                },
                other => ComplexError::Map(other),
            })?;
            let r = row_of[&image];
            m.add_to(r, j, &sign);
        }
    }
    Ok(m)
}

/// `Hₙ` as rank plus torsion divisors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

mod bigint_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// `ker ∂ₙ / im ∂ₙ₊₁` at depth `d`.
///
/// The kernel basis comes from the column transform of the Smith form of
/// `∂ₙ`; `∂ₙ₊₁` is rewritten in that basis and reduced again.
pub fn homology_at_depth(
    p: &SimplicialPresentation,
    n: usize,
    d: usize,
) -> Result<HomologyGroup, ComplexError> {
    p.check_level(n + 1)?;
    let dn = truncation_matrix(p, n, d)?;
    let dn1 = truncation_matrix(p, n + 1, d)?;
    homology_from_matrices(&dn, &dn1).ok_or(ComplexError::BoundarySquareNonzero {
        level: n,
        next: n + 1,
    })
}

/// Homology at the middle of `C_{n+1} --dn1--> C_n --dn--> C_{n-1}`, or
/// `None` when `dn · dn1 ≠ 0`.
pub fn homology_from_matrices(dn: &IntMatrix, dn1: &IntMatrix) -> Option<HomologyGroup> {
    let s = smith_normal_form(dn);
    let r = s.rank();
    let coords = s.v_inv.mul(dn1).expect("boundary shapes are compatible");
    if coords.nonzero_entries().any(|(i, _, _)| i < r) {
        return None;
    }
    let kernel_dim = dn.cols() - r;
    let mut restricted = IntMatrix::zeros(kernel_dim, dn1.cols());
    for (i, j, v) in coords.nonzero_entries() {
        restricted.set(i - r, j, v.clone());
    }
    let t = smith_normal_form(&restricted);
    Some(HomologyGroup {
        rank: kernel_dim - t.rank(),
        torsion: t.torsion(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub level: usize,
    pub depth: usize,
    pub rank: usize,
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStability {
    pub level: usize,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub entries: Vec<HomologyEntry>,
    pub stability: Vec<LevelStability>,
}

impl HomologyReport {
    pub fn get(&self, level: usize, depth: usize) -> Option<&HomologyEntry> {
        self.entries
            .iter()
            .find(|e| e.level == level && e.depth == depth)
    }
}

/// Homology for levels `0..levels` at each depth. A level is flagged stable
/// when its torsion is the same at every depth and its rank is either
/// constant or doubles with each extra bit of depth.
pub fn homology_report(
    p: &SimplicialPresentation,
    levels: usize,
    depths: &[usize],
) -> Result<HomologyReport, ComplexError> {
    if levels > p.max_level() {
        return Err(ComplexError::LevelOutOfRange {
            level: levels,
            max: p.max_level(),
        });
    }
    let mut entries = Vec::new();
    let mut by_level: BTreeMap<usize, Vec<(usize, HomologyGroup)>> = BTreeMap::new();
    for n in 0..levels {
        for &d in depths {
            let h = homology_at_depth(p, n, d)?;
            entries.push(HomologyEntry {
                level: n,
                depth: d,
                rank: h.rank,
                torsion: h.torsion.clone(),
            });
            by_level.entry(n).or_default().push((d, h));
        }
    }
    let stability = by_level
        .into_iter()
        .map(|(level, hs)| {
            let stable = hs.windows(2).all(|w| {
                let ((d0, a), (d1, b)) = (&w[0], &w[1]);
                let scaled = d1
                    .checked_sub(*d0)
                    .and_then(|k| a.rank.checked_shl(k as u32));
                a.torsion == b.torsion && (a.rank == b.rank || scaled == Some(b.rank))
            });
            LevelStability { level, stable }
        })
        .collect();
    Ok(HomologyReport { entries, stability })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{ComponentId, Cylinder};
    use crate::maps::standard;

    fn x() -> Arc<Space> {
        Arc::new(Space::cantor())
    }

    fn ind(w: &str) -> LocIntFun {
        LocIntFun::indicator(x(), &Cell::Cylinder(Cylinder::new(0, w).unwrap())).unwrap()
    }

    fn atom(i: usize) -> Cell {
        Cell::Atom {
            component: ComponentId(0),
            index: i,
        }
    }

    #[test]
    fn unit_cantor_shape() {
        let p = nerve_unit_cantor(1);
        assert_eq!(p.max_level(), 1);
        assert!(p.faces(1).iter().all(LocalHomeo::is_identity));
        for n in 1..=5 {
            assert!(nerve_unit_cantor(5)
                .faces(n)
                .iter()
                .all(|d| d.validate().is_ok()));
        }
        assert!(nerve_unit_cantor(5)
            .face_identity_violations()
            .unwrap()
            .is_empty());
        assert!(apply_boundary(&p, 1, &ind("0")).unwrap().is_zero());
    }

    #[test]
    fn pair_groupoid_shape() {
        let p = nerve_pair_groupoid(2, 1).unwrap();
        assert_eq!(**p.level(1), Space::discrete(4).unwrap());
        // (x, y) ↦ [y] - [x]
        let m = truncation_matrix(&p, 1, 0).unwrap();
        let expected = IntMatrix::from_rows(&[vec![0, -1, 1, 0], vec![0, 1, -1, 0]]);
        assert_eq!(m, expected);
        let q = nerve_pair_groupoid(1, 3).unwrap();
        for n in 1..=3 {
            let m = truncation_matrix(&q, n, 0).unwrap();
            assert_eq!(m.is_identity(), n % 2 == 0);
            assert_eq!(m.is_zero(), n % 2 == 1);
        }
    }

    #[test]
    fn pair_groupoid_face_identities_brute_force() {
        let p = nerve_pair_groupoid(3, 2).unwrap();
        assert!(p.face_identity_violations().unwrap().is_empty());
        // Direct pointwise check on all 27 points of level 2.
        let (top, below) = (p.faces(2), p.faces(1));
        for idx in 0..27 {
            let y = crate::cantor::SpacePoint::discrete(0, idx);
            for j in 1..=2 {
                for i in 0..j {
                    let lhs = below[i].apply(&top[j].apply(&y).unwrap()).unwrap();
                    let rhs = below[j - 1].apply(&top[i].apply(&y).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn boundary_examples() {
        let p = nerve_unit_cantor(3);
        let c = ind("01").add(&ind("1")).unwrap();
        assert_eq!(apply_boundary(&p, 2, &c).unwrap(), c);
        assert!(apply_boundary(&p, 1, &c).unwrap().is_zero());
        assert!(apply_boundary(&p, 0, &c).unwrap().is_zero());
        assert!(matches!(
            boundary(&p, 4),
            Err(ComplexError::LevelOutOfRange { .. })
        ));

        let q = nerve_pair_groupoid(2, 1).unwrap();
        // basis chain on (a, b) = (0, 1), index 1
        let chain = LocIntFun::indicator(q.level(1).clone(), &atom(1)).unwrap();
        let expected = LocIntFun::make(
            q.level(0).clone(),
            &[(atom(1), BigInt::from(1)), (atom(0), BigInt::from(-1))],
        )
        .unwrap();
        assert_eq!(apply_boundary(&q, 1, &chain).unwrap(), expected);
    }

    #[test]
    fn dd_zero_examples() {
        let p = nerve_unit_cantor(4);
        for n in 2..=4 {
            assert!(verify_dd_zero(&p, n, 50, 4, 1).unwrap().all_zero());
        }
        let q = nerve_pair_groupoid(3, 2).unwrap();
        assert!(verify_dd_zero(&q, 2, 200, 0, 1).unwrap().all_zero());
    }

    #[test]
    fn corrupted_face_breaks_dd_zero() {
        let p = nerve_unit_cantor(2)
            .with_face(2, 0, standard::bit_swap())
            .unwrap();
        assert!(!p.face_identity_violations().unwrap().is_empty());
        // Hand check: c = 1_[0]. ∂₂c = swap_*c - c + c = 1_[1]; ∂₁(1_[1]) = 0.
        // With the corrupted face ∂₁∂₂ still vanishes at level 1 (both
        // faces there are identities), so corrupt level 1 instead.
        let c = ind("0");
        assert_eq!(apply_boundary(&p, 2, &c).unwrap(), ind("1"));
        let q = nerve_unit_cantor(2)
            .with_face(1, 0, standard::bit_swap())
            .unwrap();
        // ∂₂c = c; ∂₁c = swap_*c - c = 1_[1] - 1_[0] ≠ 0.
        let dd = apply_boundary(&q, 1, &apply_boundary(&q, 2, &c).unwrap()).unwrap();
        assert_eq!(dd, ind("1").sub(&ind("0")).unwrap());
        let report = verify_dd_zero(&q, 2, 20, 3, 5).unwrap();
        assert!(!report.all_zero());
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn truncation_examples() {
        let p = nerve_unit_cantor(2);
        assert!(truncation_matrix(&p, 2, 2).unwrap().is_identity());
        let m = truncation_matrix(&p, 1, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 4));
        assert!(m.is_zero());
        let m0 = truncation_matrix(&p, 0, 3).unwrap();
        assert_eq!((m0.rows(), m0.cols()), (0, 8));
    }

    #[test]
    fn shifting_faces_are_rejected() {
        let p = nerve_unit_cantor(1)
            .with_face(1, 1, standard::shift())
            .unwrap();
        assert_eq!(
            truncation_matrix(&p, 1, 2),
            Err(ComplexError::NotDepthPreserving {
                level: 1,
                face: 1,
                chart: 0,
                shift: -1
            })
        );
    }

    #[test]
    fn coarse_depth_is_rejected() {
        let swap = standard::bit_swap();
        let p = nerve_unit_cantor(1).with_face(1, 0, swap).unwrap();
        assert!(matches!(
            truncation_matrix(&p, 1, 0),
            Err(ComplexError::DepthTooCoarse { .. })
        ));
        assert!(truncation_matrix(&p, 1, 1).is_ok());
    }

    #[test]
    fn homology_examples() {
        let p = nerve_unit_cantor(3);
        assert_eq!(
            homology_at_depth(&p, 0, 3).unwrap(),
            HomologyGroup {
                rank: 8,
                torsion: vec![]
            }
        );
        for n in 1..=2 {
            for d in 0..3 {
                assert_eq!(
                    homology_at_depth(&p, n, d).unwrap(),
                    HomologyGroup {
                        rank: 0,
                        torsion: vec![]
                    }
                );
            }
        }
        let q = nerve_pair_groupoid(3, 2).unwrap();
        assert_eq!(homology_at_depth(&q, 0, 0).unwrap().rank, 1);
        assert_eq!(homology_at_depth(&q, 1, 0).unwrap().rank, 0);
        assert!(homology_at_depth(&q, 2, 0).is_err());
    }

    #[test]
    fn homology_sees_torsion() {
        // C_1 = ℤ --(2)--> C_0 = ℤ: H₀ = ℤ/2.
        let d0 = IntMatrix::zeros(0, 1);
        let d1 = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(
            homology_from_matrices(&d0, &d1).unwrap(),
            HomologyGroup {
                rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        let bad = IntMatrix::from_rows(&[vec![1]]);
        assert_eq!(homology_from_matrices(&bad, &bad), None);
    }

    #[test]
    fn report_examples() {
        let p = nerve_unit_cantor(4);
        let r = homology_report(&p, 4, &[0, 1, 2, 3, 4]).unwrap();
        let ranks: Vec<usize> = (0..=4).map(|d| r.get(0, d).unwrap().rank).collect();
        assert_eq!(ranks, [1, 2, 4, 8, 16]);
        for n in 1..4 {
            assert!((0..=4).all(|d| r.get(n, d).unwrap().rank == 0));
        }
        assert!(r.stability.iter().all(|s| s.stable));

        let q = nerve_pair_groupoid(2, 3).unwrap();
        let r = homology_report(&q, 3, &[0]).unwrap();
        assert_eq!(r.get(0, 0).unwrap().rank, 1);
        assert_eq!(r.get(1, 0).unwrap().rank, 0);
        assert_eq!(r.get(2, 0).unwrap().rank, 0);

        let one = homology_report(&nerve_pair_groupoid(1, 3).unwrap(), 3, &[0]).unwrap();
        let unit = homology_report(&nerve_unit_discrete(1, 3).unwrap(), 3, &[0]).unwrap();
        assert_eq!(one, unit);
    }

    #[test]
    fn presentation_json_round_trip() {
        let p = nerve_pair_groupoid(2, 2).unwrap();
        let json = serde_json::to_string(&p.to_doc()).unwrap();
        assert!(json.starts_with(r#"{"maxLevel":2,"levels":[[{"discrete":2}]"#));
        let back = SimplicialPresentation::from_doc(serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
