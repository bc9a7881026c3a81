//! Certified search for optimal codes over a fixed field.
//!
//! Translating `x ↦ x + p0` leaves `p² − 4q` unchanged, so `p` only matters
//! modulo `2·O_F`. For a target reduced `c_det = |γ|·|p² − 4q|`, any better
//! code has `|γ|·|disc| < target` with `|γ| ≥ 1`, which leaves finitely many
//! `(p, q, γ)` to gate through [`decide_norm`].

mod table;

pub use table::{golden_code, reference_code, reproduce_table, table_csv, Reading, TableRow};

use serde::Serialize;

use crate::arith::{
    enumerate_closed_disk, enumerate_disk, format_rational, int, rat, QuadField, Rational, RingElem,
};
use crate::norm_cert::{decide_norm, NormBudget, NormStatus, Verdict};
use crate::quad_ext::QuadPoly;
use crate::stbc::CodeSpec;

/// Minimal-norm representative of `p` modulo `2·O_F`.
pub fn reduce_p(p: RingElem) -> RingElem {
    let f = p.field();
    let (a, b) = p.parity();
    match (f.half_basis(), a, b) {
        (true, 1, 1) => RingElem::new(f, -1, 1),
        _ => RingElem::new(f, a, b),
    }
}

/// `|p − 2p0|²` is at most this after [`reduce_p`].
pub fn reduce_p_bound(field: QuadField) -> Rational {
    let d = field.d();
    if field.half_basis() {
        rat(d + 1, 4)
    } else {
        int(d + 1)
    }
}

/// Which reduced `p` to scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PDisk {
    /// `|p|² ≤` [`reduce_p_bound`]: every class modulo `2·O_F` is covered.
    #[default]
    Closed,
    /// `|p|² <` [`reduce_p_bound`]. Drops the classes whose minimal norm
    /// sits on the bound (`ω` and `ω − 1` for the half basis, `1 + √-d`
    /// otherwise), so it is not exhaustive.
    Open,
}

/// Every `p` of minimal norm in its class modulo `2·O_F`, in disk order.
/// Sign and conjugate ties are all kept.
pub fn reduced_p_set(field: QuadField, disk: PDisk) -> Vec<RingElem> {
    let bound = reduce_p_bound(field);
    let ps = match disk {
        PDisk::Closed => enumerate_closed_disk(field, &bound),
        PDisk::Open => enumerate_disk(field, &bound),
    };
    ps.into_iter()
        .filter(|&p| p.norm() == reduce_p(p).norm())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub poly: QuadPoly,
    pub disc: RingElem,
}

/// All `(p, q)` with `p` reduced and `|p² − 4q|² < bound_sq`, split into
/// irreducible candidates and reducible polynomials (with `√disc`).
#[derive(Clone, Debug, Default)]
pub struct CandidateScan {
    pub irreducible: Vec<Candidate>,
    pub reducible: Vec<(QuadPoly, RingElem)>,
}

pub fn scan_candidates(field: QuadField, bound_sq: &Rational, disk: PDisk) -> CandidateScan {
    let discs = enumerate_disk(field, bound_sq);
    let mut scan = CandidateScan::default();
    for p in reduced_p_set(field, disk) {
        let p2 = p.square();
        for &z in &discs {
            let Some(q) = (p2 - z).div_int(4) else {
                continue;
            };
            let poly = QuadPoly::new(p, q).expect("same field");
            match poly
                .discriminant_sqrt()
                .and_then(|s| RingElem::from_field(&s))
            {
                Some(s) => scan.reducible.push((poly, s)),
                None => scan.irreducible.push(Candidate { poly, disc: z }),
            }
        }
    }
    scan
}

/// Irreducible `x² + px + q`, `p` reduced, with `|p² − 4q|² < bound_sq`.
pub fn enumerate_candidates(field: QuadField, bound_sq: &Rational) -> Vec<Candidate> {
    scan_candidates(field, bound_sq, PDisk::Closed).irreducible
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Survivor {
    #[serde(serialize_with = "ser_display")]
    pub poly: QuadPoly,
    #[serde(serialize_with = "ser_coords")]
    pub gamma: RingElem,
    pub status: NormStatus,
}

impl Survivor {
    /// The status is `IsNorm` and its witness has norm exactly `γ`.
    pub fn eliminated(&self) -> bool {
        self.status.verdict() == Verdict::IsNorm
            && self.status.witness_checks(&self.gamma.to_field())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub field: QuadField,
    pub target: Rational,
    pub bound_sq: Rational,
    pub survivors: Vec<Survivor>,
    pub reducible: Vec<(QuadPoly, RingElem)>,
    pub best: Option<CodeSpec>,
    pub certified: bool,
}

impl SearchReport {
    pub fn unresolved(&self) -> impl Iterator<Item = &Survivor> {
        self.survivors.iter().filter(|s| !s.eliminated())
    }

    /// Every elimination carries a checkable artifact.
    pub fn artifacts_check(&self) -> bool {
        let reducible_ok = self
            .reducible
            .iter()
            .all(|(poly, s)| s.square() == poly.discriminant());
        let survivors_ok = self
            .survivors
            .iter()
            .all(|s| s.status.verdict() != Verdict::IsNorm || s.eliminated());
        reducible_ok && survivors_ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        let reducible: Vec<_> = self
            .reducible
            .iter()
            .map(|(poly, s)| serde_json::json!({"poly": poly.to_string(), "disc_sqrt": s.coords()}))
            .collect();
        serde_json::json!({
            "d": self.field.d(),
            "target": format_rational(&self.target),
            "bound_sq": format_rational(&self.bound_sq),
            "certified": self.certified,
            "best": self.best.as_ref().map(|b| b.to_json()),
            "survivors": self.survivors,
            "reducible": reducible,
        })
    }
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_coords<S: serde::Serializer>(v: &RingElem, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.coords().serialize(s)
}

/// All `(poly, γ)` with `γ ≠ 0` and `|γ|²·|disc|² < target²`.
pub fn candidate_pairs(
    field: QuadField,
    target: &Rational,
    disk: PDisk,
) -> (Vec<(QuadPoly, RingElem)>, CandidateScan) {
    let bound_sq = target * target;
    let scan = scan_candidates(field, &bound_sq, disk);
    let mut pairs = Vec::new();
    for c in &scan.irreducible {
        let gamma_bound = &bound_sq / int(c.disc.norm());
        for g in enumerate_disk(field, &gamma_bound) {
            if !g.is_zero() {
                pairs.push((c.poly, g));
            }
        }
    }
    (pairs, scan)
}

/// Gate every candidate pair below `target` (reduced `c_det`, without the
/// `|det M|²` factor). The search is certified iff each pair is proved to
/// have `γ` a norm.
pub fn optimal_search(field: QuadField, target: &Rational, budget: &NormBudget) -> SearchReport {
    optimal_search_with(field, target, budget, PDisk::Closed)
}

pub fn optimal_search_with(
    field: QuadField,
    target: &Rational,
    budget: &NormBudget,
    disk: PDisk,
) -> SearchReport {
    let (pairs, scan) = candidate_pairs(field, target, disk);
    let statuses = budget.exec.map_collect(pairs.len(), |i| {
        let (poly, g) = pairs[i];
        decide_norm(&poly, &g.to_field(), budget).expect("irreducible poly with nonzero gamma")
    });
    let survivors: Vec<Survivor> = pairs
        .into_iter()
        .zip(statuses)
        .map(|((poly, gamma), status)| Survivor {
            poly,
            gamma,
            status,
        })
        .collect();
    let certified = survivors.iter().all(Survivor::eliminated);
    let best = reference_code(field, budget).filter(|c| c.reduced_c_det_sq() == target * target);
    SearchReport {
        field,
        bound_sq: target * target,
        target: target.clone(),
        survivors,
        reducible: scan.reducible,
        best,
        certified,
    }
}

/// Squarefree `d > 0` with `|det M|⁴ < threshold_sq`.
pub fn candidate_fields(threshold_sq: &Rational) -> Vec<i64> {
    let mut out = Vec::new();
    // |det M|² ≥ d/4, so d/4 ≥ √threshold_sq ends the scan.
    let mut d = 1i64;
    while int(d * d) < int(16) * threshold_sq {
        if let Ok(f) = QuadField::new(d) {
            let g = f.gram_det();
            if &(&g * &g) < threshold_sq {
                out.push(d);
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(d: i64) -> QuadField {
        QuadField::new(d).unwrap()
    }

    fn polys(c: &[Candidate]) -> Vec<String> {
        c.iter().map(|c| c.poly.to_string()).collect()
    }

    #[test]
    fn reduce_p_examples() {
        let k = f(7);
        assert!(reduce_p(RingElem::new(k, 2, 2)).is_zero());
        assert_eq!(reduce_p(RingElem::omega(k)), RingElem::omega(k));
        assert_eq!(reduce_p(RingElem::one(k)), RingElem::one(k));
        assert_eq!(reduce_p(RingElem::new(k, 3, -5)), RingElem::new(k, -1, 1));
        let k = f(2);
        assert_eq!(reduce_p(RingElem::new(k, -3, 4)), RingElem::one(k));
    }

    #[test]
    fn reduced_sets() {
        let show = |d| -> Vec<String> {
            reduced_p_set(f(d), PDisk::Closed)
                .iter()
                .map(|p| p.to_string())
                .collect()
        };
        assert_eq!(show(2).len(), 9);
        assert_eq!(reduced_p_set(f(2), PDisk::Open).len(), 5);
        assert_eq!(reduced_p_set(f(11), PDisk::Open).len(), 3);
        // ω and ω − 1 tie with their negatives and conjugates at norm 2.
        assert_eq!(show(7), ["0", "-1", "1", "-1 + w", "-w", "w", "1 - w"]);
    }

    #[test]
    fn d2_candidates() {
        let c = enumerate_candidates(f(2), &int(9));
        assert_eq!(polys(&c), ["x^2 - √-2x - 1", "x^2 + √-2x - 1"]);
        assert!(c.iter().all(|c| c.disc == RingElem::from_int(f(2), 2)));
    }

    #[test]
    fn d7_candidates_contain_proof_list() {
        let c = polys(&enumerate_candidates(f(7), &int(16)));
        assert!(c.contains(&"x^2 - x + 1".to_string()));
        assert!(c.contains(&"x^2 + x + 1".to_string()));
        let open = scan_candidates(f(7), &int(16), PDisk::Open).irreducible;
        assert_eq!(polys(&open), ["x^2 - x + 1", "x^2 + x + 1"]);
    }

    #[test]
    fn d11_boundary_classes() {
        assert!(scan_candidates(f(11), &int(9), PDisk::Open)
            .irreducible
            .is_empty());
        let closed = enumerate_candidates(f(11), &int(9));
        assert!(!closed.is_empty());
        let r = optimal_search(f(11), &int(3), &NormBudget::default());
        assert!(r.certified && r.artifacts_check());
    }

    #[test]
    fn search_d2() {
        let r = optimal_search(f(2), &int(3), &NormBudget::default());
        assert!(r.certified);
        assert!(r.artifacts_check());
        assert_eq!(r.survivors.len(), 8);
        assert_eq!(r.best.as_ref().unwrap().poly().to_string(), "x^2 - x + 1");
    }

    #[test]
    fn fields() {
        assert_eq!(candidate_fields(&rat(7396, 625)), [1, 2, 3, 7, 11]);
        assert_eq!(candidate_fields(&int(1)), [3]);
        assert!(candidate_fields(&int(0)).is_empty());
    }
}
