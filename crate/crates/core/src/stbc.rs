//! The code family `C(F, α1, α2, γ)`: codewords
//!
//! ```text
//!     X = [ a + bα1        c + dα1 ]
//!         [ γ(c + dα2)     a + bα2 ]      a, b, c, d ∈ O_F
//! ```
//!
//! with `det X = N(a + bα1) − γ·N(c + dα1)`. When `γ` is not a relative norm
//! every nonzero codeword has `det X ∈ O_F \ {0}`, hence `|det X| ≥ 1`, and
//! `(1, 0, 0, 0)` attains `det X = 1`.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{
    format_rational, int, rational_to_f64, FieldElem, QuadField, Rational, RingElem,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{self, base_gen_matrix, ComplexGen, DensityReport, RealGen};
use crate::norm_cert::{decide_norm, NormBudget, NormStatus, Verdict};
use crate::quad_ext::{principal_sqrt, ExtElem, QuadPoly};

pub type CMatrix2 = [[Complex64; 2]; 2];

pub fn det2(m: &CMatrix2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeSpec {
    poly: QuadPoly,
    gamma: RingElem,
    c_det_sq: Rational,
    rho: Rational,
    norm_status: NormStatus,
    roots: (Complex64, Complex64),
}

/// `|γ|²·|p² − 4q|²·|det M|⁴`, the square of `c_det`.
pub fn c_det_sq(poly: &QuadPoly, gamma: RingElem) -> Rational {
    let gram = poly.field().gram_det();
    int(gamma.norm()) * int(poly.discriminant().norm()) * &gram * &gram
}

/// Build and certify a code. Rejects reducible polynomials, `γ = 0`, and
/// `γ` proved to be a relative norm. An `Unknown` norm status still yields a
/// code, flagged as unverified.
pub fn make_code(
    field: QuadField,
    poly: QuadPoly,
    gamma: RingElem,
    budget: &NormBudget,
) -> Result<CodeSpec> {
    field.check_same(poly.field())?;
    field.check_same(gamma.field())?;
    if !poly.is_irreducible() {
        return Err(Error::Reducible(format!("{poly} over {}", field.name())));
    }
    if gamma.is_zero() {
        return Err(Error::Domain("gamma must be nonzero".into()));
    }
    let status = decide_norm(&poly, &gamma.to_field(), budget)?;
    if let (Verdict::IsNorm, Some(w)) = (status.verdict(), status.witness()) {
        return Err(Error::GammaIsNorm {
            gamma: gamma.to_string(),
            witness: Box::new(w.clone()),
        });
    }
    Ok(CodeSpec::assemble(poly, gamma, status))
}

impl CodeSpec {
    pub(crate) fn assemble(poly: QuadPoly, gamma: RingElem, norm_status: NormStatus) -> CodeSpec {
        let c_det_sq = c_det_sq(&poly, gamma);
        let rho = num_traits::Inv::inv(c_det_sq.clone());
        CodeSpec {
            roots: poly.roots_complex(),
            poly,
            gamma,
            c_det_sq,
            rho,
            norm_status,
        }
    }

    pub fn field(&self) -> QuadField {
        self.poly.field()
    }

    pub fn poly(&self) -> &QuadPoly {
        &self.poly
    }

    pub fn gamma(&self) -> RingElem {
        self.gamma
    }

    pub fn c_det_sq(&self) -> &Rational {
        &self.c_det_sq
    }

    /// `c_det²` without the `|det M|⁴` factor: `|γ|²·|p² − 4q|²`.
    pub fn reduced_c_det_sq(&self) -> Rational {
        int(self.gamma.norm()) * int(self.poly.discriminant().norm())
    }

    pub fn c_det(&self) -> f64 {
        rational_to_f64(&self.c_det_sq).sqrt()
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }

    pub fn rho_float(&self) -> f64 {
        rational_to_f64(&self.rho)
    }

    /// `det_min = 1` from the non-norm argument; see [`detmin_enumerate`]
    /// for the brute-force check.
    pub fn density(&self) -> DensityReport {
        lattice::density(&int(1), &self.c_det_sq, 2).expect("c_det_sq > 0")
    }

    pub fn norm_status(&self) -> &NormStatus {
        &self.norm_status
    }

    /// `γ` is certified not to be a norm, so the minimum determinant is 1.
    pub fn verified(&self) -> bool {
        self.norm_status.verdict() == Verdict::NotNorm
    }

    /// `(α1, α2)` under the principal square root.
    pub fn roots(&self) -> (Complex64, Complex64) {
        self.roots
    }

    /// Two-layer generators `G1 = [[1, α1], [1, α2]]`,
    /// `G2 = [[1, α1], [γ, γα2]]`, each over the base lattice `Λ₂(M)`.
    pub fn layer_generators(&self) -> Result<Vec<(ComplexGen, RealGen)>> {
        let (a1, a2) = self.roots;
        let g = self.gamma.to_field().to_complex();
        let one = Complex64::new(1.0, 0.0);
        let g1 = ComplexGen::new(DMatrix::from_row_slice(2, 2, &[one, a1, one, a2]))?;
        let g2 = ComplexGen::new(DMatrix::from_row_slice(2, 2, &[one, a1, g, g * a2]))?;
        let (m, _) = base_gen_matrix(self.field());
        Ok(vec![(g1, m.clone()), (g2, m)])
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CodeSpecJson::from(self)).expect("serializable")
    }

    /// Rebuilds from `{d, p, q, gamma}`; derived fields in the input are
    /// ignored and recomputed, including the norm certificate.
    pub fn from_json(text: &str, budget: &NormBudget) -> Result<CodeSpec> {
        let input: CodeSpecInput =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let field = QuadField::new(input.d)?;
        let poly = QuadPoly::from_coords(field, input.p, input.q);
        let gamma = RingElem::new(field, input.gamma[0], input.gamma[1]);
        make_code(field, poly, gamma, budget)
    }

    fn embed(&self, s: RingElem, t: RingElem) -> (Complex64, Complex64) {
        let (a1, a2) = self.roots;
        let (s, t) = (s.to_field().to_complex(), t.to_field().to_complex());
        (s + t * a1, s + t * a2)
    }
}

#[derive(Deserialize)]
struct CodeSpecInput {
    d: i64,
    p: [i64; 2],
    q: [i64; 2],
    gamma: [i64; 2],
}

#[derive(Serialize)]
struct CodeSpecJson<'a> {
    d: i64,
    p: [i64; 2],
    q: [i64; 2],
    gamma: [i64; 2],
    polynomial: String,
    c_det_sq: String,
    rho: String,
    rho_float: f64,
    delta: f64,
    verified: bool,
    norm_status: &'a NormStatus,
}

impl<'a> From<&'a CodeSpec> for CodeSpecJson<'a> {
    fn from(c: &'a CodeSpec) -> Self {
        CodeSpecJson {
            d: c.field().d(),
            p: c.poly.p().coords(),
            q: c.poly.q().coords(),
            gamma: c.gamma.coords(),
            polynomial: c.poly.to_string(),
            c_det_sq: format_rational(&c.c_det_sq),
            rho: format_rational(&c.rho),
            rho_float: c.rho_float(),
            delta: c.density().delta,
            verified: c.verified(),
            norm_status: &c.norm_status,
        }
    }
}

/// Information symbols `(a, b, c, d)` of one codeword.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Codeword<'a> {
    spec: &'a CodeSpec,
    symbols: [RingElem; 4],
}

/// `N(s + t·α1) = s² − p·st + q·t²` in `O_F`.
fn layer_norm(poly: &QuadPoly, s: RingElem, t: RingElem) -> RingElem {
    let (p, q) = (poly.p(), poly.q());
    s.square() - p.mul_unchecked(s).mul_unchecked(t) + q.mul_unchecked(t.square())
}

impl<'a> Codeword<'a> {
    pub fn new(spec: &'a CodeSpec, symbols: [RingElem; 4]) -> Result<Self> {
        for s in symbols {
            spec.field().check_same(s.field())?;
        }
        Ok(Codeword { spec, symbols })
    }

    pub fn symbols(&self) -> [RingElem; 4] {
        self.symbols
    }

    pub fn is_zero(&self) -> bool {
        self.symbols.iter().all(|s| s.is_zero())
    }

    /// Exact determinant in `O_F`.
    pub fn det_ring(&self) -> RingElem {
        let [a, b, c, d] = self.symbols;
        let poly = self.spec.poly();
        layer_norm(poly, a, b) - self.spec.gamma.mul_unchecked(layer_norm(poly, c, d))
    }

    /// `det X = N(a + bα1) − γ·N(c + dα1)`, computed through `K`.
    pub fn det(&self) -> FieldElem {
        let [a, b, c, d] = self.symbols;
        let poly = *self.spec.poly();
        let x1 = ExtElem::from_ring(poly, a, b).expect("same field");
        let x2 = ExtElem::from_ring(poly, c, d).expect("same field");
        x1.rel_norm() - self.spec.gamma.to_field() * x2.rel_norm()
    }

    pub fn matrix(&self) -> CMatrix2 {
        let [a, b, c, d] = self.symbols;
        let (x1, y1) = self.spec.embed(a, b);
        let (x2, y2) = self.spec.embed(c, d);
        let g = self.spec.gamma.to_field().to_complex();
        [[x1, x2], [g * y2, y1]]
    }

    /// Off-diagonal entries both scaled by the principal `√γ`.
    pub fn balanced_matrix(&self) -> CMatrix2 {
        let [a, b, c, d] = self.symbols;
        let (x1, y1) = self.spec.embed(a, b);
        let (x2, y2) = self.spec.embed(c, d);
        let r = principal_sqrt(self.spec.gamma.to_field().to_complex());
        [[x1, r * x2], [r * y2, y1]]
    }
}

pub fn encode<'a>(spec: &'a CodeSpec, symbols: [RingElem; 4]) -> Result<(Codeword<'a>, CMatrix2)> {
    let w = Codeword::new(spec, symbols)?;
    let m = w.matrix();
    Ok((w, m))
}

pub fn balanced_encode(spec: &CodeSpec, symbols: [RingElem; 4]) -> Result<CMatrix2> {
    Ok(Codeword::new(spec, symbols)?.balanced_matrix())
}

/// All `RingElem`s with both coordinates in `[−bound, bound]`, row-major in
/// `(a, b)`.
pub fn symbol_box(field: QuadField, bound: u32) -> Vec<RingElem> {
    let r = bound as i64;
    (-r..=r)
        .flat_map(|a| (-r..=r).map(move |b| RingElem::new(field, a, b)))
        .collect()
}

/// Minimum `|det X|²` over all nonzero codewords whose eight integer symbol
/// coordinates lie in `[−bound, bound]`. Returns 0 if some nonzero codeword
/// is singular.
pub fn detmin_enumerate(spec: &CodeSpec, bound: u32, exec: Execution) -> Rational {
    let alphabet = symbol_box(spec.field(), bound);
    let s = alphabet.len();
    let zero = alphabet
        .iter()
        .position(|z| z.is_zero())
        .expect("box contains 0");
    let poly = spec.poly();
    // N(s + tα1) for every (s, t) pair; the second layer reuses it times γ.
    let first: Vec<RingElem> = (0..s * s)
        .map(|k| layer_norm(poly, alphabet[k / s], alphabet[k % s]))
        .collect();
    let second: Vec<RingElem> = first.iter().map(|&n| spec.gamma.mul_unchecked(n)).collect();
    let zero_pair = zero * s + zero;
    let best = exec.map_reduce(
        first.len(),
        i64::MAX,
        |i| {
            let mut m = i64::MAX;
            for (j, &n2) in second.iter().enumerate() {
                if i == zero_pair && j == zero_pair {
                    continue;
                }
                m = m.min((first[i] - n2).norm());
            }
            m
        },
        i64::min,
    );
    int(best)
}

/// Determinant criterion: `Less` means `c1` is the better code (smaller
/// `c_det`). Only meaningful between codes of equal minimum determinant.
pub fn compare(c1: &CodeSpec, c2: &CodeSpec) -> Ordering {
    c1.c_det_sq.cmp(&c2.c_det_sq)
}
