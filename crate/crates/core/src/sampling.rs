//! Seeded generators for functions, points and maps.
//!
//! Used by the sampled checks in [`crate::complex`] and
//! [`crate::realization`] and by the property tests. Everything draws from
//! a caller-supplied RNG, so a fixed seed gives a fixed sample.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cantor::{BinaryWord, CantorPoint, Cell, Component, ComponentId, Cylinder, Space};
use crate::maps::{LocalHomeo, PrefixChart};
use crate::zfun::LocIntFun;

/// Seed used by every sampled check unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0x5EED_CA27_0000_0001;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_word<R: Rng + ?Sized>(rng: &mut R, len: usize) -> BinaryWord {
    BinaryWord::from_bits((0..len).map(|_| rng.gen()).collect())
}

/// A random function on `space` built as a sum of up to four weighted
/// cells of depth ≤ `max_depth` (Cantor parts) and random point values
/// (discrete parts), values bounded by `max_abs`.
pub fn random_function<R: Rng + ?Sized>(
    space: &Arc<Space>,
    rng: &mut R,
    max_depth: usize,
    max_abs: i64,
) -> LocIntFun {
    let mut cells = Vec::new();
    for (i, c) in space.components().iter().enumerate() {
        let component = ComponentId(i);
        match c {
            Component::Cantor(restriction) => {
                for _ in 0..rng.gen_range(0..=4) {
                    // Pick a restriction word, then extend it.
                    let base = restriction.choose(rng).expect("restrictions are nonempty");
                    let extra = rng.gen_range(0..=max_depth.saturating_sub(base.depth()));
                    let word = base.concat(&random_word(rng, extra));
                    let value = BigInt::from(rng.gen_range(-max_abs..=max_abs));
                    cells.push((Cell::Cylinder(Cylinder { component, word }), value));
                }
            }
            Component::Discrete(n) => {
                for index in 0..*n {
                    let value = rng.gen_range(-max_abs..=max_abs);
                    if value != 0 {
                        cells.push((Cell::Atom { component, index }, BigInt::from(value)));
                    }
                }
            }
        }
    }
    LocIntFun::make(space.clone(), &cells).expect("sampled cells lie in the space")
}

/// A random partition of the Cantor set into at most `max_pieces`
/// cylinders of depth ≤ `max_depth`, in lexicographic order.
pub fn random_partition<R: Rng + ?Sized>(
    rng: &mut R,
    max_pieces: usize,
    max_depth: usize,
) -> Vec<BinaryWord> {
    let target = rng.gen_range(1..=max_pieces.max(1));
    let mut pieces = vec![BinaryWord::empty()];
    while pieces.len() < target {
        let splittable: Vec<usize> = (0..pieces.len())
            .filter(|&i| pieces[i].depth() < max_depth)
            .collect();
        let Some(&i) = splittable.choose(rng) else {
            break;
        };
        let w = pieces.swap_remove(i);
        pieces.push(w.child(false));
        pieces.push(w.child(true));
    }
    pieces.sort();
    pieces
}

fn cantor_map(charts: Vec<(BinaryWord, BinaryWord)>) -> LocalHomeo {
    let x = Arc::new(Space::cantor());
    let charts = charts
        .into_iter()
        .map(|(u, v)| {
            PrefixChart::cylinders(
                Cylinder {
                    component: ComponentId(0),
                    word: u,
                },
                Cylinder {
                    component: ComponentId(0),
                    word: v,
                },
            )
        })
        .collect();
    LocalHomeo::new(x.clone(), x, charts).expect("sampled charts partition the domain")
}

/// A random local homeomorphism of the Cantor set to itself with at most
/// `max_charts` charts and words of depth ≤ `max_depth`.
pub fn random_local_homeo<R: Rng + ?Sized>(
    rng: &mut R,
    max_charts: usize,
    max_depth: usize,
) -> LocalHomeo {
    let sources = random_partition(rng, max_charts, max_depth);
    let charts = sources
        .into_iter()
        .map(|u| {
            let len = rng.gen_range(0..=max_depth);
            (u, random_word(rng, len))
        })
        .collect();
    cantor_map(charts)
}

/// A random homeomorphism of the Cantor set: two partitions with the same
/// number of pieces matched by a random permutation.
pub fn random_bijection<R: Rng + ?Sized>(
    rng: &mut R,
    max_charts: usize,
    max_depth: usize,
) -> LocalHomeo {
    let sources = random_partition(rng, max_charts, max_depth);
    let mut targets = loop {
        let t = random_partition(rng, max_charts, max_depth);
        if t.len() == sources.len() {
            break t;
        }
    };
    targets.shuffle(rng);
    cantor_map(sources.into_iter().zip(targets).collect())
}

pub fn random_point<R: Rng + ?Sized>(
    rng: &mut R,
    max_pre: usize,
    max_period: usize,
) -> CantorPoint {
    let pre_len = rng.gen_range(0..=max_pre);
    let period_len = rng.gen_range(1..=max_period.max(1));
    CantorPoint::new(random_word(rng, pre_len), random_word(rng, period_len))
        .expect("period is nonempty")
}

/// `count` pairwise distinct eventually periodic points.
pub fn distinct_points<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<CantorPoint> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut width = 4;
    while out.len() < count {
        let p = random_point(rng, width, width);
        if seen.insert(p.clone()) {
            out.push(p);
        } else {
            width += 1;
        }
    }
    out
}

/// Sum of the values of `f` over the given points.
pub fn sum_over(f: &LocIntFun, points: &[crate::cantor::SpacePoint]) -> BigInt {
    points
        .iter()
        .map(|p| {
            f.evaluate(p)
                .expect("points come from the function's space")
        })
        .fold(BigInt::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sample() {
        let x = Arc::new(Space::cantor());
        let a: Vec<_> = {
            let mut r = rng(7);
            (0..5).map(|_| random_function(&x, &mut r, 4, 5)).collect()
        };
        let b: Vec<_> = {
            let mut r = rng(7);
            (0..5).map(|_| random_function(&x, &mut r, 4, 5)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn partitions_respect_bounds() {
        let mut r = rng(1);
        for _ in 0..200 {
            let p = random_partition(&mut r, 6, 4);
            assert!(p.len() <= 6);
            assert!(p.iter().all(|w| w.depth() <= 4));
            assert_eq!(
                crate::cantor::normalize_words(&p),
                vec![BinaryWord::empty()]
            );
        }
    }

    #[test]
    fn bijections_invert() {
        let mut r = rng(2);
        for _ in 0..50 {
            assert!(random_bijection(&mut r, 6, 4).invert().is_ok());
        }
    }

    #[test]
    fn distinct_points_are_distinct() {
        let pts = distinct_points(&mut rng(3), 300);
        let set: BTreeSet<_> = pts.iter().collect();
        assert_eq!(set.len(), 300);
    }
}
