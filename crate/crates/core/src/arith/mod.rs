//! Exact arithmetic in `Q`, in `F = Q(√−d)` and in its ring of integers.

mod disk;
mod field;
mod rational;
mod ring;

pub use disk::{enumerate_closed_disk, enumerate_disk};
pub use field::{FieldElem, QuadField};
pub use rational::{
    format_rational, int, parse_rational, rat, rational_sqrt, rational_to_f64, Rational,
};
pub use ring::RingElem;
