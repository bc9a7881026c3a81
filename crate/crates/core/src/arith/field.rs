use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rational::{int, rat, rational_sqrt, rational_to_f64, Rational};
use super::ring::RingElem;
use crate::error::{Error, Result};

/// The imaginary quadratic field `Q(√−d)`, `d` positive and squarefree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::Parameter(format!("d must be positive, got {d}")));
        }
        if !is_squarefree(d) {
            return Err(Error::Parameter(format!("d = {d} is not squarefree")));
        }
        Ok(QuadField { d })
    }

    pub fn d(self) -> i64 {
        self.d
    }

    /// The integer `dF = −d` such that `F = Q(√dF)`.
    pub fn radicand(self) -> i64 {
        -self.d
    }

    /// `−d ≡ 1 (mod 4)`: the integral basis is `{1, (1+√−d)/2}`.
    pub fn half_basis(self) -> bool {
        self.d % 4 == 3
    }

    /// `ω² = −c₀ + c₁·ω` in the integral basis; returns `(c₀, c₁)`.
    pub(crate) fn omega_relation(self) -> (i64, i64) {
        if self.half_basis() {
            ((1 + self.d) / 4, 1)
        } else {
            (self.d, 0)
        }
    }

    /// The second integral basis element `ω_d`.
    pub fn omega(self) -> FieldElem {
        if self.half_basis() {
            FieldElem::new(self, rat(1, 2), rat(1, 2))
        } else {
            FieldElem::new(self, int(0), int(1))
        }
    }

    /// `|det M|²` for the generator matrix of the integral basis lattice.
    pub fn gram_det(self) -> Rational {
        if self.half_basis() {
            rat(self.d, 4)
        } else {
            int(self.d)
        }
    }

    /// Display name, e.g. `Q(√-7)`.
    pub fn name(self) -> String {
        format!("Q(√-{})", self.d)
    }

    pub(crate) fn check_same(self, other: QuadField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "field mismatch: {} vs {}",
                self.name(),
                other.name()
            )))
        }
    }
}

fn is_squarefree(n: i64) -> bool {
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// `x + y·√−d` with `x, y ∈ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: QuadField,
    x: Rational,
    y: Rational,
}

impl FieldElem {
    pub fn new(field: QuadField, x: Rational, y: Rational) -> Self {
        FieldElem { field, x, y }
    }

    pub fn from_rational(field: QuadField, x: Rational) -> Self {
        FieldElem::new(field, x, Rational::zero())
    }

    pub fn from_int(field: QuadField, n: i64) -> Self {
        FieldElem::from_rational(field, int(n))
    }

    pub fn zero(field: QuadField) -> Self {
        FieldElem::from_int(field, 0)
    }

    pub fn one(field: QuadField) -> Self {
        FieldElem::from_int(field, 1)
    }

    /// `√−d`.
    pub fn sqrt_neg_d(field: QuadField) -> Self {
        FieldElem::new(field, int(0), int(1))
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    /// `|u|² = x² + d·y²`.
    pub fn abs_sq(&self) -> Rational {
        &self.x * &self.x + int(self.field.d) * &self.y * &self.y
    }

    pub fn conj(&self) -> FieldElem {
        FieldElem::new(self.field, self.x.clone(), -&self.y)
    }

    pub fn checked_add(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.field.check_same(rhs.field)?;
        Ok(FieldElem::new(
            self.field,
            &self.x + &rhs.x,
            &self.y + &rhs.y,
        ))
    }

    pub fn checked_sub(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.field.check_same(rhs.field)?;
        Ok(FieldElem::new(
            self.field,
            &self.x - &rhs.x,
            &self.y - &rhs.y,
        ))
    }

    pub fn checked_mul(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.field.check_same(rhs.field)?;
        let d = int(self.field.d);
        let x = &self.x * &rhs.x - d * &self.y * &rhs.y;
        let y = &self.x * &rhs.y + &self.y * &rhs.x;
        Ok(FieldElem::new(self.field, x, y))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        let n = self.abs_sq();
        if n.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(FieldElem::new(self.field, &self.x / &n, -&self.y / &n))
    }

    pub fn checked_div(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> FieldElem {
        FieldElem::new(self.field, &self.x * r, &self.y * r)
    }

    pub fn pow(&self, mut e: u32) -> FieldElem {
        let mut base = self.clone();
        let mut acc = FieldElem::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The element as a point of `O_F`, when it is integral.
    pub fn to_ring(&self) -> Option<RingElem> {
        RingElem::from_field(self)
    }

    pub fn to_complex(&self) -> Complex64 {
        let sd = (self.field.d as f64).sqrt();
        Complex64::new(rational_to_f64(&self.x), rational_to_f64(&self.y) * sd)
    }

    /// A square root in `F`, when one exists.
    ///
    /// Solves `u² − d·v² = x, 2uv = y` over `Q`. For `y ≠ 0`, `t = u² + d·v²`
    /// must be the rational square root of `x² + d·y²`, which pins down
    /// `u² = (x + t)/2`.
    pub fn sqrt(&self) -> Option<FieldElem> {
        let d = int(self.field.d);
        if self.y.is_zero() {
            if let Some(u) = rational_sqrt(&self.x) {
                return Some(FieldElem::new(self.field, u, Rational::zero()));
            }
            let v = rational_sqrt(&(-&self.x / &d))?;
            return Some(FieldElem::new(self.field, Rational::zero(), v));
        }
        let t = rational_sqrt(&self.abs_sq())?;
        let u = rational_sqrt(&((&self.x + &t) / int(2)))?;
        if u.is_zero() {
            return None;
        }
        let v = &self.y / (int(2) * &u);
        let w = FieldElem::new(self.field, u, v);
        debug_assert_eq!(&(&w * &w), self);
        Some(w)
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Rational, first: bool) -> fmt::Result {
    if first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    Ok(())
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("√-{}", self.field.d);
        match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => write!(f, "{}", self.x),
            (true, false) => {
                write_coeff(f, &self.y, true)?;
                let a = self.y.abs();
                if a.is_one() {
                    write!(f, "{root}")
                } else {
                    write!(f, "{a}{root}")
                }
            }
            (false, false) => {
                write!(f, "{}", self.x)?;
                write_coeff(f, &self.y, false)?;
                let a = self.y.abs();
                if a.is_one() {
                    write!(f, "{root}")
                } else {
                    write!(f, "{a}{root}")
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::new(self.field, -&self.x, -&self.y)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}
