//! Monic quadratics over `O_F` and the relative extension `K = F(α1)`.

use std::fmt;

use num_complex::Complex64;

use crate::arith::{FieldElem, QuadField, RingElem};
use crate::error::Result;

/// `x² + p·x + q` with `p, q ∈ O_F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadPoly {
    p: RingElem,
    q: RingElem,
}

impl QuadPoly {
    pub fn new(p: RingElem, q: RingElem) -> Result<Self> {
        p.field().check_same(q.field())?;
        Ok(QuadPoly { p, q })
    }

    /// From integral-basis coordinates `p = p[0] + p[1]·ω`, likewise `q`.
    pub fn from_coords(field: QuadField, p: [i64; 2], q: [i64; 2]) -> Self {
        QuadPoly {
            p: RingElem::new(field, p[0], p[1]),
            q: RingElem::new(field, q[0], q[1]),
        }
    }

    pub fn field(&self) -> QuadField {
        self.p.field()
    }

    pub fn p(&self) -> RingElem {
        self.p
    }

    pub fn q(&self) -> RingElem {
        self.q
    }

    /// `p² − 4q = (α1 − α2)²`.
    pub fn discriminant(&self) -> RingElem {
        self.p.square() - self.q.scale(4)
    }

    /// A square root of the discriminant in `F`, i.e. a proof of
    /// reducibility, when one exists.
    pub fn discriminant_sqrt(&self) -> Option<FieldElem> {
        self.discriminant().to_field().sqrt()
    }

    pub fn is_irreducible(&self) -> bool {
        self.discriminant_sqrt().is_none()
    }

    /// The polynomial whose roots are `αᵢ + p0`:
    /// `x² + (p − 2p0)x + (q − p0·p + p0²)`.
    pub fn translate(&self, p0: RingElem) -> QuadPoly {
        QuadPoly {
            p: self.p - p0.scale(2),
            q: self.q - p0 * self.p + p0.square(),
        }
    }

    /// `(α1, α2) = ((−p + √disc)/2, (−p − √disc)/2)` with the principal
    /// square root.
    pub fn roots_complex(&self) -> (Complex64, Complex64) {
        let s = principal_sqrt(self.discriminant().to_field().to_complex());
        let mp = -self.p.to_field().to_complex();
        ((mp + s) / 2.0, (mp - s) / 2.0)
    }
}

/// Principal branch: nonnegative real part, and `+i·√|z|` on the negative
/// real axis regardless of the sign of zero.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            Complex64::new(z.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-z.re).sqrt())
        }
    } else {
        z.sqrt()
    }
}

fn signed_term(f: &mut fmt::Formatter<'_>, c: RingElem, var: &str) -> fmt::Result {
    if c.is_zero() {
        return Ok(());
    }
    let monomial = c.a() == 0 || c.b() == 0;
    let negative = if c.b() == 0 {
        c.a() < 0
    } else {
        c.a() == 0 && c.b() < 0
    };
    if monomial {
        let mag = if negative { -c } else { c };
        let sign = if negative { " - " } else { " + " };
        if mag.is_one() && !var.is_empty() {
            write!(f, "{sign}{var}")
        } else {
            write!(f, "{sign}{mag}{var}")
        }
    } else {
        write!(f, " + ({c}){var}")
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^2")?;
        signed_term(f, self.p, "x")?;
        signed_term(f, self.q, "")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// `σ1(α1) = α1`
    First,
    /// `σ2(α1) = α2`
    Second,
}

/// `a + b·α1 ∈ K` with `a, b ∈ F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElem {
    poly: QuadPoly,
    a: FieldElem,
    b: FieldElem,
}

impl ExtElem {
    pub fn new(poly: QuadPoly, a: FieldElem, b: FieldElem) -> Result<Self> {
        poly.field().check_same(a.field())?;
        poly.field().check_same(b.field())?;
        Ok(ExtElem { poly, a, b })
    }

    pub fn from_base(poly: QuadPoly, a: FieldElem) -> Result<Self> {
        let zero = FieldElem::zero(poly.field());
        ExtElem::new(poly, a, zero)
    }

    pub fn from_ring(poly: QuadPoly, a: RingElem, b: RingElem) -> Result<Self> {
        ExtElem::new(poly, a.to_field(), b.to_field())
    }

    pub fn one(poly: QuadPoly) -> Self {
        let f = poly.field();
        ExtElem {
            poly,
            a: FieldElem::one(f),
            b: FieldElem::zero(f),
        }
    }

    /// The root `α1` itself.
    pub fn alpha(poly: QuadPoly) -> Self {
        let f = poly.field();
        ExtElem {
            poly,
            a: FieldElem::zero(f),
            b: FieldElem::one(f),
        }
    }

    pub fn poly(&self) -> &QuadPoly {
        &self.poly
    }

    pub fn a(&self) -> &FieldElem {
        &self.a
    }

    pub fn b(&self) -> &FieldElem {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &ExtElem) -> Result<ExtElem> {
        self.same_poly(rhs)?;
        Ok(ExtElem {
            poly: self.poly,
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        })
    }

    pub fn sub(&self, rhs: &ExtElem) -> Result<ExtElem> {
        self.same_poly(rhs)?;
        Ok(ExtElem {
            poly: self.poly,
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        })
    }

    /// Product reduced with `α1² = −p·α1 − q`.
    pub fn mul(&self, rhs: &ExtElem) -> Result<ExtElem> {
        self.same_poly(rhs)?;
        let p = self.poly.p.to_field();
        let q = self.poly.q.to_field();
        let bb = &self.b * &rhs.b;
        let a = &self.a * &rhs.a - &q * &bb;
        let b = &self.a * &rhs.b + &self.b * &rhs.a - &p * &bb;
        Ok(ExtElem {
            poly: self.poly,
            a,
            b,
        })
    }

    pub fn scale(&self, c: &FieldElem) -> ExtElem {
        ExtElem {
            poly: self.poly,
            a: &self.a * c,
            b: &self.b * c,
        }
    }

    /// The `K/F`-conjugate: `α1 ↦ α2 = −p − α1`, so
    /// `a + bα1 ↦ (a − p·b) + (−b)·α1`.
    pub fn conjugate(&self) -> ExtElem {
        let p = self.poly.p.to_field();
        ExtElem {
            poly: self.poly,
            a: &self.a - &(&p * &self.b),
            b: -&self.b,
        }
    }

    /// `N_{K/F}(a + bα1) = a² − p·ab + q·b²`.
    pub fn rel_norm(&self) -> FieldElem {
        let p = self.poly.p.to_field();
        let q = self.poly.q.to_field();
        &self.a * &self.a - &p * &self.a * &self.b + &q * &self.b * &self.b
    }

    /// Numerical image under `σ1` or `σ2`. For output, lattices and
    /// simulation only.
    pub fn embed(&self, which: Embedding) -> Complex64 {
        let (r1, r2) = self.poly.roots_complex();
        let root = match which {
            Embedding::First => r1,
            Embedding::Second => r2,
        };
        self.a.to_complex() + self.b.to_complex() * root
    }

    fn same_poly(&self, rhs: &ExtElem) -> Result<()> {
        if self.poly == rhs.poly {
            Ok(())
        } else {
            Err(crate::Error::Parameter(format!(
                "extension mismatch: {} vs {}",
                self.poly, rhs.poly
            )))
        }
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "α1"),
            (true, false) => write!(f, "({})·α1", self.b),
            (false, false) => write!(f, "({}) + ({})·α1", self.a, self.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(d: i64) -> QuadField {
        QuadField::new(d).unwrap()
    }

    #[test]
    fn discriminants() {
        let k = f(2);
        assert_eq!(
            QuadPoly::from_coords(k, [-1, 0], [1, 0]).discriminant(),
            RingElem::from_int(k, -3)
        );
        assert_eq!(
            QuadPoly::from_coords(k, [0, 0], [1, 0]).discriminant(),
            RingElem::from_int(k, -4)
        );
        assert!(QuadPoly::from_coords(k, [0, 0], [0, 0])
            .discriminant()
            .is_zero());
    }

    #[test]
    fn irreducibility() {
        let k2 = f(2);
        for s in [1, -1] {
            assert!(QuadPoly::from_coords(k2, [0, s], [-1, 0]).is_irreducible());
        }
        let k11 = f(11);
        for s in [1, -1] {
            assert!(!QuadPoly::from_coords(k11, [s, 0], [0, 0]).is_irreducible());
        }
        let k7 = f(7);
        for s in [1, -1] {
            assert!(QuadPoly::from_coords(k7, [s, 0], [1, 0]).is_irreducible());
        }
        // x² − 2 over Q(√-2) is irreducible, x² + 2 is not.
        assert!(QuadPoly::from_coords(k2, [0, 0], [-2, 0]).is_irreducible());
        assert!(!QuadPoly::from_coords(k2, [0, 0], [2, 0]).is_irreducible());
    }

    #[test]
    fn relative_norms() {
        let k2 = f(2);
        let poly = QuadPoly::from_coords(k2, [0, 1], [-1, 0]);
        assert!(ExtElem::one(poly).rel_norm().is_one());
        assert_eq!(ExtElem::alpha(poly).rel_norm(), poly.q().to_field());
        assert_eq!(ExtElem::alpha(poly).rel_norm(), FieldElem::from_int(k2, -1));
        // α1 is (−√-2 + √2)/2 under the principal root.
        let (a1, _) = poly.roots_complex();
        let expect = Complex64::new(2f64.sqrt() / 2.0, -(2f64.sqrt()) / 2.0);
        assert!((a1 - expect).norm() < 1e-12);
    }

    #[test]
    fn conjugation_gives_norm() {
        let k7 = f(7);
        let poly = QuadPoly::from_coords(k7, [1, 0], [1, 0]);
        let x =
            ExtElem::from_ring(poly, RingElem::new(k7, 2, -1), RingElem::new(k7, 1, 3)).unwrap();
        let n = x.mul(&x.conjugate()).unwrap();
        assert!(n.b().is_zero());
        assert_eq!(n.a(), &x.rel_norm());
    }

    #[test]
    fn embeddings() {
        let k7 = f(7);
        let one = ExtElem::one(QuadPoly::from_coords(k7, [0, 0], [1, 0]));
        assert!((one.embed(Embedding::First) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let i_poly = QuadPoly::from_coords(k7, [0, 0], [1, 0]);
        let a = ExtElem::alpha(i_poly);
        assert!((a.embed(Embedding::First) - Complex64::i()).norm() < 1e-15);
        assert!((a.embed(Embedding::Second) + Complex64::i()).norm() < 1e-15);
        let eis = QuadPoly::from_coords(k7, [-1, 0], [1, 0]);
        let z = ExtElem::alpha(eis).embed(Embedding::First);
        assert!((z - Complex64::new(0.5, 0.75f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn translation_keeps_discriminant() {
        let k3 = f(3);
        let poly = QuadPoly::from_coords(k3, [-1, -1], [-1, 2]);
        for p0 in [RingElem::new(k3, 1, 0), RingElem::new(k3, -2, 3)] {
            assert_eq!(poly.translate(p0).discriminant(), poly.discriminant());
        }
    }

    #[test]
    fn display() {
        let k2 = f(2);
        assert_eq!(
            QuadPoly::from_coords(k2, [-1, 0], [1, 0]).to_string(),
            "x^2 - x + 1"
        );
        assert_eq!(
            QuadPoly::from_coords(k2, [0, 1], [-1, 0]).to_string(),
            "x^2 + √-2x - 1"
        );
        assert_eq!(
            QuadPoly::from_coords(k2, [0, 0], [1, 0]).to_string(),
            "x^2 + 1"
        );
        let k3 = f(3);
        assert_eq!(
            QuadPoly::from_coords(k3, [-1, -1], [-1, 2]).to_string(),
            "x^2 + (-1 - w)x + (-1 + 2w)"
        );
    }
}
