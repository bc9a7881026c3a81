use std::collections::BTreeSet;

use proptest::prelude::*;
use stbc_core::arith::{int, QuadField, Rational, RingElem};
use stbc_core::norm_cert::NormBudget;
use stbc_core::search::{candidate_pairs, enumerate_candidates, optimal_search, PDisk};

fn field(d: i64) -> QuadField {
    QuadField::new(d).unwrap()
}

/// `p` has minimal norm among `p + 2k` for small `k`.
fn minimal_in_class(p: RingElem) -> bool {
    let f = p.field();
    (-3..=3).all(|a| (-3..=3).all(|b| p.norm() <= (p + RingElem::new(f, 2 * a, 2 * b)).norm()))
}

fn is_square(z: RingElem) -> bool {
    let f = z.field();
    (-8..=8).any(|a| (-8..=8).any(|b| RingElem::new(f, a, b).square() == z))
}

fn naive(f: QuadField, bound: i64) -> BTreeSet<([i64; 2], [i64; 2])> {
    let mut out = BTreeSet::new();
    for pa in -3..=3 {
        for pb in -3..=3 {
            let p = RingElem::new(f, pa, pb);
            if !minimal_in_class(p) {
                continue;
            }
            for qa in -8..=8 {
                for qb in -8..=8 {
                    let q = RingElem::new(f, qa, qb);
                    let disc = p.square() - q.scale(4);
                    if disc.norm() < bound && !is_square(disc) {
                        out.insert((p.coords(), q.coords()));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn candidates_match_naive_oracle() {
    for (d, bounds) in [
        (1, [9, 16]),
        (2, [9, 16]),
        (3, [9, 16]),
        (7, [16, 9]),
        (11, [9, 16]),
    ] {
        for b in bounds {
            let got: BTreeSet<_> = enumerate_candidates(field(d), &int(b))
                .into_iter()
                .map(|c| (c.poly.p().coords(), c.poly.q().coords()))
                .collect();
            assert_eq!(got, naive(field(d), b), "d={d}, bound {b}");
        }
    }
}

#[test]
fn certified_reports_carry_artifacts() {
    for (d, t) in [(1, 3), (2, 3), (3, 3), (7, 4), (11, 3)] {
        let r = optimal_search(field(d), &int(t), &NormBudget::default());
        assert!(r.certified, "d={d}");
        assert!(r.artifacts_check());
        assert_eq!(r.unresolved().count(), 0);
    }
}

#[test]
fn report_json() {
    let r = optimal_search(field(7), &int(4), &NormBudget::default());
    let v = r.to_json();
    assert_eq!(v["certified"], true);
    assert_eq!(v["best"]["rho"], "1/49");
    assert_eq!(v["survivors"].as_array().unwrap().len(), r.survivors.len());
    assert_eq!(v["survivors"][0]["status"]["verdict"], "IsNorm");
}

#[test]
fn open_disk_is_a_subset() {
    for d in [1, 2, 3, 7, 11] {
        let (open, _) = candidate_pairs(field(d), &int(4), PDisk::Open);
        let (closed, _) = candidate_pairs(field(d), &int(4), PDisk::Closed);
        assert!(open.iter().all(|p| closed.contains(p)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn raising_target_keeps_pairs(d in proptest::sample::select(vec![1i64, 2, 3, 7, 11]), n in 1i64..=8, extra in 0i64..=6) {
        let lo = Rational::new(n.into(), 2.into());
        let hi = Rational::new((n + extra).into(), 2.into());
        let (small, _) = candidate_pairs(field(d), &lo, PDisk::Closed);
        let (large, _) = candidate_pairs(field(d), &hi, PDisk::Closed);
        prop_assert!(small.iter().all(|p| large.contains(p)));
    }
}
