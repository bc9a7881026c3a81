use std::cmp::Ordering;

use stbc_core::arith::{int, rat, QuadField, RingElem};
use stbc_core::norm_cert::NormBudget;
use stbc_core::quad_ext::QuadPoly;
use stbc_core::search::{golden_code, reproduce_table, table_csv};
use stbc_core::stbc::{compare, det2, detmin_enumerate, encode};
use stbc_core::{make_code, CodeSpec, Execution};

fn field(d: i64) -> QuadField {
    QuadField::new(d).unwrap()
}

#[test]
fn same_algebra_different_root_spacing() {
    let k = field(2);
    let b = NormBudget::default();
    let wide = make_code(
        k,
        QuadPoly::from_coords(k, [0, 0], [3, 0]),
        RingElem::from_int(k, -1),
        &b,
    )
    .unwrap();
    let tight = make_code(
        k,
        QuadPoly::from_coords(k, [-1, 0], [1, 0]),
        RingElem::from_int(k, -1),
        &b,
    )
    .unwrap();
    assert_eq!(wide.reduced_c_det_sq(), int(144));
    assert_eq!(tight.reduced_c_det_sq(), int(9));
    assert_eq!(compare(&tight, &wide), Ordering::Less);
    assert!(tight.density().delta > wide.density().delta);
}

#[test]
fn numeric_and_exact_determinants_agree() {
    for c in reproduce_table(&NormBudget::default())
        .into_iter()
        .map(|r| r.code)
    {
        let k = c.field();
        let s = [
            RingElem::new(k, 1, -1),
            RingElem::new(k, 0, 2),
            RingElem::new(k, -1, 1),
            RingElem::new(k, 2, 0),
        ];
        let (w, m) = encode(&c, s).unwrap();
        assert!((det2(&m) - w.det().to_complex()).norm() < 1e-9);
        assert_eq!(w.det(), w.det_ring().to_field());
    }
}

#[test]
fn detmin_strategies_agree() {
    let g = golden_code(&NormBudget::default());
    assert_eq!(
        detmin_enumerate(&g, 1, Execution::Sequential),
        detmin_enumerate(&g, 1, Execution::Parallel)
    );
}

#[test]
fn json_specs_round_trip() {
    for row in reproduce_table(&NormBudget::default()) {
        let text = row.code.to_json().to_string();
        let back = CodeSpec::from_json(&text, &NormBudget::default());
        // The d = 1 and d = 3 gammas are not certified, which does not block construction.
        assert_eq!(back.unwrap(), row.code);
    }
    let g = golden_code(&NormBudget::default());
    assert_eq!(g.to_json()["rho"], "1/25");
    assert_eq!(g.rho(), &rat(1, 25));
}

#[test]
fn table_outputs() {
    let rows = reproduce_table(&NormBudget::default());
    let csv = table_csv(&rows);
    assert_eq!(csv.lines().count(), 6);
    assert!(csv.lines().nth(1).unwrap().ends_with("true,false"));
    let json = rows[0].to_json();
    assert_eq!(json["flagged"], true);
    assert_eq!(json["alternatives"].as_array().unwrap().len(), 3);
    assert_eq!(json["alternatives"][1]["rho"], serde_json::Value::Null);
}
