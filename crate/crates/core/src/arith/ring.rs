use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::field::{FieldElem, QuadField};
use super::rational::{int, rat, Rational};
use crate::error::Result;

/// `a + b·ω_d` in `O_F`, where `ω_d = (1+√−d)/2` when `−d ≡ 1 (mod 4)` and
/// `ω_d = √−d` otherwise.
///
/// Coordinates are machine integers; every search in this crate stays far
/// below the overflow range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    field: QuadField,
    a: i64,
    b: i64,
}

impl RingElem {
    pub fn new(field: QuadField, a: i64, b: i64) -> Self {
        RingElem { field, a, b }
    }

    pub fn from_int(field: QuadField, n: i64) -> Self {
        RingElem::new(field, n, 0)
    }

    pub fn zero(field: QuadField) -> Self {
        RingElem::new(field, 0, 0)
    }

    pub fn one(field: QuadField) -> Self {
        RingElem::new(field, 1, 0)
    }

    pub fn omega(field: QuadField) -> Self {
        RingElem::new(field, 0, 1)
    }

    pub fn field(self) -> QuadField {
        self.field
    }

    pub fn a(self) -> i64 {
        self.a
    }

    pub fn b(self) -> i64 {
        self.b
    }

    pub fn coords(self) -> [i64; 2] {
        [self.a, self.b]
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_one(self) -> bool {
        self.a == 1 && self.b == 0
    }

    /// `|z|²`, which is the rational integer `N_{F/Q}(z)`.
    pub fn norm(self) -> i64 {
        let (c0, c1) = self.field.omega_relation();
        // |a + bω|² = a² + c1·ab + c0·b²
        self.a * self.a + c1 * self.a * self.b + c0 * self.b * self.b
    }

    pub fn abs_sq(self) -> Rational {
        int(self.norm())
    }

    pub fn conj(self) -> RingElem {
        if self.field.half_basis() {
            // conj(ω) = 1 − ω
            RingElem::new(self.field, self.a + self.b, -self.b)
        } else {
            RingElem::new(self.field, self.a, -self.b)
        }
    }

    pub fn checked_add(self, rhs: RingElem) -> Result<RingElem> {
        self.field.check_same(rhs.field)?;
        Ok(RingElem::new(self.field, self.a + rhs.a, self.b + rhs.b))
    }

    pub fn checked_sub(self, rhs: RingElem) -> Result<RingElem> {
        self.field.check_same(rhs.field)?;
        Ok(RingElem::new(self.field, self.a - rhs.a, self.b - rhs.b))
    }

    pub fn checked_mul(self, rhs: RingElem) -> Result<RingElem> {
        self.field.check_same(rhs.field)?;
        Ok(self.mul_unchecked(rhs))
    }

    #[inline]
    pub(crate) fn mul_unchecked(self, rhs: RingElem) -> RingElem {
        let (c0, c1) = self.field.omega_relation();
        let bb = self.b * rhs.b;
        RingElem::new(
            self.field,
            self.a * rhs.a - c0 * bb,
            self.a * rhs.b + self.b * rhs.a + c1 * bb,
        )
    }

    pub fn scale(self, k: i64) -> RingElem {
        RingElem::new(self.field, self.a * k, self.b * k)
    }

    /// `self / k` when the quotient stays in `O_F`.
    pub fn div_int(self, k: i64) -> Option<RingElem> {
        (k != 0 && self.a % k == 0 && self.b % k == 0)
            .then(|| RingElem::new(self.field, self.a / k, self.b / k))
    }

    pub fn square(self) -> RingElem {
        self.mul_unchecked(self)
    }

    pub fn to_field(self) -> FieldElem {
        if self.field.half_basis() {
            // a + b(1+√−d)/2
            FieldElem::new(self.field, rat(2 * self.a + self.b, 2), rat(self.b, 2))
        } else {
            FieldElem::new(self.field, int(self.a), int(self.b))
        }
    }

    /// Inverse of [`RingElem::to_field`]; `None` unless the element is
    /// integral.
    pub fn from_field(u: &FieldElem) -> Option<RingElem> {
        let field = u.field();
        let as_i64 = |r: &Rational| -> Option<i64> {
            r.is_integer()
                .then(|| r.to_integer())
                .and_then(|n: BigInt| n.to_i64())
        };
        if field.half_basis() {
            let b = u.y() * int(2);
            let a = u.x() - u.y();
            Some(RingElem::new(field, as_i64(&a)?, as_i64(&b)?))
        } else {
            Some(RingElem::new(field, as_i64(u.x())?, as_i64(u.y())?))
        }
    }

    /// Coordinates parity class `(a mod 2, b mod 2)`.
    pub fn parity(self) -> (i64, i64) {
        (self.a.rem_euclid(2), self.b.rem_euclid(2))
    }
}

impl fmt::Display for RingElem {
    /// Prints in the integral basis with `w` standing for `ω_d`, e.g.
    /// `-1 + 2w`. For `d ≢ 3 (mod 4)` this is `√-d`, printed as such.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = if self.field.half_basis() {
            "w".to_string()
        } else if self.field.d() == 1 {
            "i".to_string()
        } else {
            format!("√-{}", self.field.d())
        };
        let term = |b: i64| match b.abs() {
            1 => sym.clone(),
            n => format!("{n}{sym}"),
        };
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) if b < 0 => write!(f, "-{}", term(b)),
            (0, b) => write!(f, "{}", term(b)),
            (a, b) if b < 0 => write!(f, "{a} - {}", term(b)),
            (a, b) => write!(f, "{a} + {}", term(b)),
        }
    }
}

impl From<RingElem> for FieldElem {
    fn from(z: RingElem) -> FieldElem {
        z.to_field()
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::new(self.field, -self.a, -self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_squares() {
        let f7 = QuadField::new(7).unwrap();
        let w = RingElem::omega(f7);
        // ω² = ω − 2
        assert_eq!(w.square(), RingElem::new(f7, -2, 1));
        assert_eq!(w.square().to_field(), &w.to_field() * &w.to_field());
        let f2 = QuadField::new(2).unwrap();
        assert_eq!(RingElem::omega(f2).square(), RingElem::from_int(f2, -2));
    }

    #[test]
    fn norm_matches_abs_sq() {
        for d in [1, 2, 3, 7, 11, 15] {
            let f = QuadField::new(d).unwrap();
            for a in -3..=3 {
                for b in -3..=3 {
                    let z = RingElem::new(f, a, b);
                    assert_eq!(z.abs_sq(), z.to_field().abs_sq());
                    assert_eq!(RingElem::from_field(&z.to_field()), Some(z));
                    assert_eq!(z.conj().to_field(), z.to_field().conj());
                }
            }
        }
    }

    #[test]
    fn non_integral() {
        let f2 = QuadField::new(2).unwrap();
        assert_eq!(
            RingElem::from_field(&FieldElem::new(f2, rat(1, 2), int(0))),
            None
        );
        let f3 = QuadField::new(3).unwrap();
        // (1 + √-3)/2 is integral, √-3/2 is not.
        assert!(RingElem::from_field(&FieldElem::new(f3, rat(1, 2), rat(1, 2))).is_some());
        assert!(RingElem::from_field(&FieldElem::new(f3, int(0), rat(1, 2))).is_none());
    }

    #[test]
    fn display() {
        let f7 = QuadField::new(7).unwrap();
        assert_eq!(RingElem::new(f7, -1, 2).to_string(), "-1 + 2w");
        let f1 = QuadField::new(1).unwrap();
        assert_eq!(RingElem::new(f1, 0, -1).to_string(), "-i");
        let f2 = QuadField::new(2).unwrap();
        assert_eq!(RingElem::new(f2, 1, -1).to_string(), "1 - √-2");
    }
}
