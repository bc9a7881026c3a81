//! Real and complex lattice generator matrices, realification, composed
//! lattices and normalized density.
//!
//! Generator rows are basis vectors for real lattices; complex generators
//! act on column coordinate vectors as `y = G·x`, and the realified matrix
//! uses the interleaved `[[Re g, −Im g], [Im g, Re g]]` block layout.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{format_rational, rational_to_f64, QuadField, Rational};
use crate::error::{Error, Result};

const RANK_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct RealGen {
    entries: DMatrix<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexGen {
    entries: DMatrix<Complex64>,
}

fn hadamard_bound<T, F: Fn(&T) -> f64>(m: &DMatrix<T>, abs_sq: F) -> f64
where
    T: nalgebra::Scalar,
{
    m.row_iter()
        .map(|row| row.iter().map(&abs_sq).sum::<f64>().sqrt())
        .product()
}

impl RealGen {
    /// Rejects non-square and numerically singular matrices (`|det|` below
    /// `1e−12` times the Hadamard bound).
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::Parameter("generator matrix must be square".into()));
        }
        let det = entries.clone().determinant().abs();
        let bound = hadamard_bound(&entries, |x| x * x);
        if det.is_nan() || det <= RANK_TOL * bound {
            return Err(Error::Domain("generator matrix is not full rank".into()));
        }
        Ok(RealGen { entries })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        if flat.len() != n * n {
            return Err(Error::Parameter("generator matrix must be square".into()));
        }
        RealGen::new(DMatrix::from_row_slice(n, n, &flat))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn abs_det(&self) -> f64 {
        self.entries.clone().determinant().abs()
    }
}

impl ComplexGen {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::Parameter("generator matrix must be square".into()));
        }
        let det = entries.clone().determinant().norm();
        let bound = hadamard_bound(&entries, |z| z.norm_sqr());
        if det.is_nan() || det <= RANK_TOL * bound {
            return Err(Error::Domain("generator matrix is not full rank".into()));
        }
        Ok(ComplexGen { entries })
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Result<Self> {
        let n = rows.len();
        let flat: Vec<Complex64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        if flat.len() != n * n {
            return Err(Error::Parameter("generator matrix must be square".into()));
        }
        ComplexGen::new(DMatrix::from_row_slice(n, n, &flat))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn abs_det(&self) -> f64 {
        self.entries.clone().determinant().norm()
    }
}

/// The `2n × 2n` real matrix with `2×2` blocks `[[Re g, −Im g], [Im g, Re g]]`.
pub fn realify(g: &ComplexGen) -> RealGen {
    let n = g.dim();
    let mut out = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = g.entries[(i, j)];
            out[(2 * i, 2 * j)] = z.re;
            out[(2 * i, 2 * j + 1)] = -z.im;
            out[(2 * i + 1, 2 * j)] = z.im;
            out[(2 * i + 1, 2 * j + 1)] = z.re;
        }
    }
    RealGen { entries: out }
}

/// Generator matrix `M` of the integral-basis lattice of `O_F` in `R²` and
/// its exact Gram determinant `|det M|²`.
///
/// Columns map integral coordinates `(a, b)` to `(Re, Im)` of `a + b·ω_d`.
pub fn base_gen_matrix(field: QuadField) -> (RealGen, Rational) {
    let d = field.d() as f64;
    let m = if field.half_basis() {
        DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, d.sqrt() / 2.0])
    } else {
        DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, d.sqrt()])
    };
    (RealGen { entries: m }, field.gram_det())
}

fn check_layers(layers: &[(ComplexGen, RealGen)]) -> Result<usize> {
    let n = layers
        .first()
        .ok_or_else(|| Error::Parameter("at least one layer required".into()))?
        .0
        .dim();
    for (g, m) in layers {
        if g.dim() != n {
            return Err(Error::Parameter("all layers must share dimension n".into()));
        }
        if m.dim() != 2 {
            return Err(Error::Parameter(
                "base lattice generators must be 2×2".into(),
            ));
        }
    }
    Ok(n)
}

/// `∏_l |det G_l|² · |det M_l|ⁿ` for a composed complex lattice.
pub fn composed_abs_det(layers: &[(ComplexGen, RealGen)]) -> Result<f64> {
    let n = check_layers(layers)?;
    Ok(layers
        .iter()
        .map(|(g, m)| g.abs_det().powi(2) * m.abs_det().powi(n as i32))
        .product())
}

/// The full `2nL × 2nL` real generator of a composed lattice: block diagonal
/// in the layers, each block `realify(G_l) · diag(M_l, …, M_l)`.
pub fn composed_generator(layers: &[(ComplexGen, RealGen)]) -> Result<RealGen> {
    let n = check_layers(layers)?;
    let size = 2 * n * layers.len();
    let mut out = DMatrix::<f64>::zeros(size, size);
    for (l, (g, m)) in layers.iter().enumerate() {
        let mut diag = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for k in 0..n {
            diag.view_mut((2 * k, 2 * k), (2, 2)).copy_from(&m.entries);
        }
        let block = realify(g).entries * diag;
        out.view_mut((2 * n * l, 2 * n * l), (2 * n, 2 * n))
            .copy_from(&block);
    }
    Ok(RealGen { entries: out })
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    #[serde(serialize_with = "ser_rational")]
    pub det_min: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub gram_abs_det: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub rho: Rational,
    pub rho_float: f64,
    pub delta: f64,
}

/// `ρ = det_min^{2n} / |det 𝒢|` and `δ = ρ^{1/2n}`.
pub fn density(det_min: &Rational, gram_abs_det: &Rational, n: u32) -> Result<DensityReport> {
    if !det_min.is_positive() || !gram_abs_det.is_positive() {
        return Err(Error::Domain("det_min and |det G| must be positive".into()));
    }
    if n.is_zero() {
        return Err(Error::Parameter("dimension must be positive".into()));
    }
    let num = num_traits::pow(det_min.clone(), 2 * n as usize);
    let rho = num / gram_abs_det;
    let rho_float = rational_to_f64(&rho);
    Ok(DensityReport {
        det_min: det_min.clone(),
        gram_abs_det: gram_abs_det.clone(),
        delta: rho_float.powf(1.0 / (2.0 * n as f64)),
        rho,
        rho_float,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn realify_identity_and_diag() {
        let id =
            ComplexGen::from_rows(&[&[c(1., 0.), c(0., 0.)], &[c(0., 0.), c(1., 0.)]]).unwrap();
        assert_eq!(realify(&id).entries(), &DMatrix::<f64>::identity(4, 4));
        let g = ComplexGen::from_rows(&[&[c(1., 1.), c(0., 0.)], &[c(0., 0.), c(1., 0.)]]).unwrap();
        assert!((realify(&g).abs_det() - 2.0).abs() < 1e-12);
        assert!((g.abs_det().powi(2) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn base_matrices() {
        let gram = |d| base_gen_matrix(QuadField::new(d).unwrap()).1;
        assert_eq!(gram(2), int(2));
        assert_eq!(gram(7), rat(7, 4));
        assert_eq!(gram(1), int(1));
        for d in [1, 2, 3, 7, 11, 19] {
            let (m, g) = base_gen_matrix(QuadField::new(d).unwrap());
            assert!((m.abs_det().powi(2) - rational_to_f64(&g)).abs() < 1e-12);
        }
    }

    #[test]
    fn density_examples() {
        let r = density(&int(1), &int(36), 2).unwrap();
        assert_eq!(r.rho, rat(1, 36));
        let r = density(&int(1), &int(49), 2).unwrap();
        assert_eq!(r.rho, rat(1, 49));
        assert!((r.delta - 1.0 / 7f64.sqrt()).abs() < 1e-12);
        assert!((r.delta - r.rho_float.powf(0.25)).abs() < 1e-12);
        assert_eq!(density(&int(1), &int(1), 2).unwrap().rho, int(1));
        assert!(density(&int(0), &int(1), 2).is_err());
        assert!(density(&int(1), &int(-1), 2).is_err());
    }

    #[test]
    fn composed_identity() {
        let id =
            ComplexGen::from_rows(&[&[c(1., 0.), c(0., 0.)], &[c(0., 0.), c(1., 0.)]]).unwrap();
        let m = RealGen::from_rows(&[&[1., 0.], &[0., 1.]]).unwrap();
        let layers = vec![(id.clone(), m.clone()), (id, m)];
        assert!((composed_abs_det(&layers).unwrap() - 1.0).abs() < 1e-15);
        assert!((composed_generator(&layers).unwrap().abs_det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_singular() {
        assert!(RealGen::from_rows(&[&[1., 2.], &[2., 4.]]).is_err());
        assert!(
            ComplexGen::from_rows(&[&[c(1., 1.), c(2., 2.)], &[c(1., 0.), c(2., 0.)]]).is_err()
        );
    }
}
