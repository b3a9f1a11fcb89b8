use std::sync::Arc;

use num_bigint::BigInt;

use groupoid_homology::cantor::{CantorPoint, Cell, Cylinder, Space, SpacePoint};
use groupoid_homology::complex::{
    homology_report, nerve_pair_groupoid, nerve_unit_cantor, nerve_unit_discrete,
};
use groupoid_homology::maps::standard;
use groupoid_homology::zfun::{delta_witness, enumerate, stage_end, LocIntFun};

fn fun(cells: &[(&str, i64)]) -> LocIntFun {
    let x = Arc::new(Space::cantor());
    let cells: Vec<(Cell, BigInt)> = cells
        .iter()
        .map(|(w, v)| {
            (
                Cell::Cylinder(Cylinder::new(0, w).unwrap()),
                BigInt::from(*v),
            )
        })
        .collect();
    LocIntFun::make(x, &cells).unwrap()
}

#[test]
fn stage_boundaries() {
    assert_eq!(
        (0..4).map(stage_end).collect::<Vec<_>>(),
        [1, 9, 625, 5_764_801]
    );
    assert_eq!(enumerate(0), fun(&[]));
    assert_eq!(enumerate(1), fun(&[("", -1)]));
    assert_eq!(enumerate(8), fun(&[("", 1)]));
    assert_eq!(enumerate(9), fun(&[("0", -2), ("1", -2)]));
    assert_eq!(enumerate(624), fun(&[("", 2)]));
    // First element of stage 3 has -3 on every depth-3 cell.
    assert_eq!(enumerate(625), fun(&[("", -3)]));
}

#[test]
fn unit_groupoid_homology() {
    let r = homology_report(&nerve_unit_cantor(5), 5, &[0, 1, 2, 3, 4]).unwrap();
    for d in 0..=4 {
        assert_eq!(r.get(0, d).unwrap().rank, 1 << d);
        for n in 1..5 {
            let e = r.get(n, d).unwrap();
            assert_eq!((e.rank, e.torsion.len()), (0, 0));
        }
    }
    let discrete = homology_report(&nerve_unit_discrete(5, 3).unwrap(), 3, &[0]).unwrap();
    assert_eq!(discrete.get(0, 0).unwrap().rank, 5);
}

#[test]
fn pair_groupoid_homology() {
    for size in 1..=4 {
        let r = homology_report(&nerve_pair_groupoid(size, 3).unwrap(), 3, &[0]).unwrap();
        assert_eq!(
            r.entries.iter().map(|e| e.rank).collect::<Vec<_>>(),
            [1, 0, 0]
        );
    }
}

#[test]
fn shift_pushforward_doubles_constants() {
    let s = standard::shift();
    assert_eq!(s.pushforward(&fun(&[("", 1)])).unwrap(), fun(&[("", 2)]));
    assert_eq!(s.pushforward(&fun(&[("01", 1)])).unwrap(), fun(&[("1", 1)]));
    let z = SpacePoint::cantor(0, "(01)".parse().unwrap());
    assert_eq!(s.fiber(&z).len(), 2);
}

#[test]
fn delta_witnesses_up_to_depth_sixteen() {
    for x in ["(0)", "(1)", "0(01)", "1101(011)"] {
        let x: CantorPoint = x.parse().unwrap();
        for d in 0..=16 {
            let w = delta_witness(&x, d);
            assert_ne!(w.y, x);
            assert_eq!(w.y.prefix(d), x.prefix(d));
            assert_eq!((w.value_at_x, w.value_at_y), (1, 0));
        }
    }
}
