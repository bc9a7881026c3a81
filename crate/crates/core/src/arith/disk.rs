use num_traits::ToPrimitive;

use super::field::QuadField;
use super::rational::Rational;
use super::ring::RingElem;

/// All `z ∈ O_F` with `|z|² < bound_sq`, ordered by `(|z|², a, b)`.
pub fn enumerate_disk(field: QuadField, bound_sq: &Rational) -> Vec<RingElem> {
    // Norms are integers, so |z|² < B  ⇔  |z|² ≤ ⌈B⌉ − 1.
    match bound_sq.ceil().to_integer().to_i64() {
        Some(c) => disk_up_to(field, c - 1),
        None => Vec::new(),
    }
}

/// All `z ∈ O_F` with `|z|² ≤ bound_sq`, same ordering.
pub fn enumerate_closed_disk(field: QuadField, bound_sq: &Rational) -> Vec<RingElem> {
    match bound_sq.floor().to_integer().to_i64() {
        Some(c) => disk_up_to(field, c),
        None => Vec::new(),
    }
}

fn disk_up_to(field: QuadField, max_norm: i64) -> Vec<RingElem> {
    if max_norm < 0 {
        return Vec::new();
    }
    let d = field.d() as f64;
    let r = (max_norm as f64).sqrt();
    let mut out = Vec::new();
    if field.half_basis() {
        // |a + bω|² = (a + b/2)² + d·b²/4
        let b_max = (2.0 * r / d.sqrt()).ceil() as i64 + 1;
        for b in -b_max..=b_max {
            let centre = -(b as f64) / 2.0;
            let lo = (centre - r).floor() as i64 - 1;
            let hi = (centre + r).ceil() as i64 + 1;
            for a in lo..=hi {
                let z = RingElem::new(field, a, b);
                if z.norm() <= max_norm {
                    out.push(z);
                }
            }
        }
    } else {
        let b_max = (r / d.sqrt()).ceil() as i64 + 1;
        let a_max = r.ceil() as i64 + 1;
        for b in -b_max..=b_max {
            for a in -a_max..=a_max {
                let z = RingElem::new(field, a, b);
                if z.norm() <= max_norm {
                    out.push(z);
                }
            }
        }
    }
    out.sort_by_key(|z| (z.norm(), z.a(), z.b()));
    out
}
