//! Certificates for whether `γ` is a relative norm of `K = F(α1)` over `F`.
//!
//! Two certified paths exist. A norm is proved by an explicit witness `x`
//! with `N_{K/F}(x) = γ`, checked exactly. A non-norm is proved only by the
//! two local congruence obstructions for `γ = −1` (up to squares of `F`):
//!
//! * `K = F(√−3)` and `dF ≡ 1 (mod 3)`: `F` embeds in `Q_3`, and `−1 ≡ 2`
//!   is not of the form `a² + 3b²` over `Z_3`;
//! * `K = F(i)` and `dF ≡ 1 (mod 8)`: the 2-adic analogue.
//!
//! Everything else is [`Verdict::Unknown`]. A failed witness search is
//! never taken as evidence of non-norm status.

use serde::{Serialize, Serializer};

use crate::arith::{enumerate_disk, format_rational, int, FieldElem, Rational, RingElem};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quad_ext::{ExtElem, QuadPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    IsNorm,
    NotNorm,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub prime: u32,
    pub congruence: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormStatus {
    verdict: Verdict,
    witness: Option<ExtElem>,
    obstruction: Option<Obstruction>,
}

impl NormStatus {
    pub fn norm(witness: ExtElem) -> Self {
        NormStatus {
            verdict: Verdict::IsNorm,
            witness: Some(witness),
            obstruction: None,
        }
    }

    pub fn not_norm(obstruction: Obstruction) -> Self {
        NormStatus {
            verdict: Verdict::NotNorm,
            witness: None,
            obstruction: Some(obstruction),
        }
    }

    pub fn unknown() -> Self {
        NormStatus {
            verdict: Verdict::Unknown,
            witness: None,
            obstruction: None,
        }
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn witness(&self) -> Option<&ExtElem> {
        self.witness.as_ref()
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        self.obstruction.as_ref()
    }

    /// Re-checks an `IsNorm` certificate: the witness norm must be `γ`.
    pub fn witness_checks(&self, gamma: &FieldElem) -> bool {
        match (&self.verdict, &self.witness) {
            (Verdict::IsNorm, Some(w)) => &w.rel_norm() == gamma,
            _ => false,
        }
    }
}

#[derive(Serialize)]
struct WitnessJson {
    display: String,
    /// Coordinates of `a` and `b` in `x = a + b·α1`, each as `[x, y]` for
    /// `x + y√−d`.
    a: [String; 2],
    b: [String; 2],
}

#[derive(Serialize)]
struct NormStatusJson<'a> {
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_coords: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    obstruction: Option<&'a Obstruction>,
}

impl Serialize for NormStatus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coords = |e: &FieldElem| [format_rational(e.x()), format_rational(e.y())];
        NormStatusJson {
            verdict: self.verdict,
            witness_coords: self.witness.as_ref().map(|w| WitnessJson {
                display: w.to_string(),
                a: coords(w.a()),
                b: coords(w.b()),
            }),
            obstruction: self.obstruction.as_ref(),
        }
        .serialize(s)
    }
}

/// Search budget for [`witness_search`].
#[derive(Clone, Debug)]
pub struct NormBudget {
    pub radius_sq: Rational,
    pub denominators: Vec<u32>,
    pub exec: Execution,
}

impl Default for NormBudget {
    fn default() -> Self {
        NormBudget {
            radius_sq: int(50),
            denominators: vec![1, 2],
            exec: Execution::default(),
        }
    }
}

impl NormBudget {
    pub fn with_radius_sq(radius_sq: Rational) -> Self {
        NormBudget {
            radius_sq,
            ..Default::default()
        }
    }
}

/// `ext_disc = c·s²` for some nonzero `s ∈ F`, i.e. `K = F(√c)`.
fn is_c_times_square(ext_disc: RingElem, c: i64) -> bool {
    if ext_disc.is_zero() {
        return false;
    }
    let f = ext_disc.field();
    ext_disc
        .to_field()
        .checked_div(&FieldElem::from_int(f, c))
        .map(|z| z.is_square())
        .unwrap_or(false)
}

fn applies(d_f: i64, ext_disc: RingElem, c: i64, modulus: i64) -> bool {
    ext_disc.field().radicand() == d_f
        && d_f.rem_euclid(modulus) == 1
        && is_c_times_square(ext_disc, c)
}

/// `true` certifies that `−1` is not a norm of `K = F(√−3)` over
/// `F = Q(√dF)`: requires `ext_disc ∈ −3·(F^×)²` and `dF ≡ 1 (mod 3)`.
/// `false` means no certificate, never that a norm exists.
pub fn obstruction_minus_one_mod3(d_f: i64, ext_disc: RingElem) -> bool {
    applies(d_f, ext_disc, -3, 3)
}

/// 2-adic analogue for `K = F(i)`: `ext_disc ∈ −1·(F^×)²`, `dF ≡ 1 (mod 8)`.
pub fn obstruction_minus_one_mod8(d_f: i64, ext_disc: RingElem) -> bool {
    applies(d_f, ext_disc, -1, 8)
}

/// Witnesses that cost nothing: `N(1) = 1`, `N(α1) = q`, and `N(s) = s²` for
/// `s ∈ F`.
fn trivial_witness(poly: &QuadPoly, gamma: &FieldElem) -> Option<ExtElem> {
    if gamma.is_one() {
        return Some(ExtElem::one(*poly));
    }
    if gamma == &poly.q().to_field() {
        return Some(ExtElem::alpha(*poly));
    }
    None
}

/// Search `x = (u + v·α1)/m` for `u, v` in the `O_F`-disk `|·|² < radius_sq·m²`
/// and `m ∈ denominators`, returning the first `x` with `N(x) = γ` in
/// canonical order (denominators as given, then `u`, then `v`).
pub fn witness_search(
    poly: &QuadPoly,
    gamma: &FieldElem,
    radius_sq: &Rational,
    denominators: &[u32],
    exec: Execution,
) -> Option<ExtElem> {
    if let Some(w) = trivial_witness(poly, gamma) {
        return Some(w);
    }
    let field = poly.field();
    if gamma.field() != field {
        return None;
    }
    let (p, q) = (poly.p(), poly.q());
    for &m in denominators.iter().filter(|&&m| m > 0) {
        let m = i64::from(m);
        // N(u + vα1) ∈ O_F, so γ·m² must be integral to be hit at all.
        let Some(target) = gamma.scale(&int(m * m)).to_ring() else {
            continue;
        };
        let disk = enumerate_disk(field, &(radius_sq * int(m * m)));
        let n = disk.len();
        let u_sq: Vec<RingElem> = disk.iter().map(|u| u.square()).collect();
        let pu: Vec<RingElem> = disk.iter().map(|&u| p.mul_unchecked(u)).collect();
        let qv_sq: Vec<RingElem> = u_sq.iter().map(|&v2| q.mul_unchecked(v2)).collect();
        let hit = exec.find_first(n * n, |k| {
            let (i, j) = (k / n, k % n);
            u_sq[i] - pu[i].mul_unchecked(disk[j]) + qv_sq[j] == target
        });
        if let Some(k) = hit {
            let inv_m = Rational::new(1.into(), m.into());
            let x = ExtElem::new(
                *poly,
                disk[k / n].to_field().scale(&inv_m),
                disk[k % n].to_field().scale(&inv_m),
            )
            .expect("same field");
            debug_assert_eq!(&x.rel_norm(), gamma);
            return Some(x);
        }
    }
    None
}

/// Decide `γ ∈ N_{K/F}(K^×)` as far as the certified paths allow.
pub fn decide_norm(poly: &QuadPoly, gamma: &FieldElem, budget: &NormBudget) -> Result<NormStatus> {
    let field = poly.field();
    field.check_same(gamma.field())?;
    if !poly.is_irreducible() {
        return Err(Error::Domain(format!(
            "{poly} is reducible over {}",
            field.name()
        )));
    }
    if gamma.is_zero() {
        return Err(Error::Domain("gamma must be nonzero".into()));
    }
    if let Some(w) = trivial_witness(poly, gamma) {
        return Ok(NormStatus::norm(w));
    }
    if let Some(s) = gamma.sqrt() {
        // Squares of F are norms of themselves.
        return Ok(NormStatus::norm(ExtElem::from_base(*poly, s)?));
    }
    if let Some(obstruction) = minus_one_obstruction(poly, gamma) {
        return Ok(NormStatus::not_norm(obstruction));
    }
    match witness_search(
        poly,
        gamma,
        &budget.radius_sq,
        &budget.denominators,
        budget.exec,
    ) {
        Some(w) => Ok(NormStatus::norm(w)),
        None => Ok(NormStatus::unknown()),
    }
}

/// `γ = −s²` with an applicable congruence obstruction for `−1`. If `γ` were
/// a norm, so would be `−1 = γ / s²`.
fn minus_one_obstruction(poly: &QuadPoly, gamma: &FieldElem) -> Option<Obstruction> {
    let s = (-gamma).sqrt()?;
    let field = poly.field();
    let d_f = field.radicand();
    let disc = poly.discriminant();
    let scaled = if s.is_one() {
        String::new()
    } else {
        format!("; gamma = -1·({s})²")
    };
    if obstruction_minus_one_mod3(d_f, disc) {
        return Some(Obstruction {
            prime: 3,
            congruence: format!(
                "K = F(√-3), dF = {d_f} ≡ 1 (mod 3): -1 ≡ 2 (mod 3) is not a² + 3b² over Z_3{scaled}"
            ),
        });
    }
    if obstruction_minus_one_mod8(d_f, disc) {
        return Some(Obstruction {
            prime: 2,
            congruence: format!(
                "K = F(i), dF = {d_f} ≡ 1 (mod 8): -1 is not a² + b² over Z_2{scaled}"
            ),
        });
    }
    None
}
