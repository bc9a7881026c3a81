//! Monte Carlo codeword error rate over a quasi-static 2×2 Rayleigh channel
//! with coherent exhaustive ML decoding.
//!
//! Each trial `t` draws from its own ChaCha stream `(seed, t)`, and the same
//! channel, codeword and unit noise are reused at every SNR point. Results
//! are therefore bit-identical across execution strategies, and error counts
//! at different SNRs are strongly correlated.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::arith::RingElem;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::stbc::{symbol_box, CMatrix2, CodeSpec, Codeword};

pub const DEFAULT_CODEBOOK_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub spec: CodeSpec,
    pub symbol_box: u32,
    pub snr_grid_db: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub balanced: bool,
    pub codebook_cap: usize,
    pub exec: Execution,
}

impl SimConfig {
    pub fn new(spec: CodeSpec) -> Self {
        SimConfig {
            spec,
            symbol_box: 1,
            snr_grid_db: vec![0.0, 6.0, 12.0, 18.0],
            trials: 1000,
            seed: 0,
            balanced: false,
            codebook_cap: DEFAULT_CODEBOOK_CAP,
            exec: Execution::default(),
        }
    }

    /// `(2·box + 1)⁸`, saturating.
    pub fn codebook_size(&self) -> usize {
        let s = (2 * self.symbol_box as usize + 1).saturating_pow(2);
        s.saturating_pow(4)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SnrPoint {
    pub snr_db: f64,
    pub cer: f64,
    pub errors: u64,
    pub trials: u64,
    /// 95% normal-approximation halfwidth.
    pub confidence_halfwidth: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimResult {
    pub points: Vec<SnrPoint>,
}

impl SimResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("snr_db,cer,halfwidth,trials\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{}\n",
                p.snr_db, p.cer, p.confidence_halfwidth, p.trials
            ));
        }
        out
    }

    pub fn to_gnuplot(&self) -> String {
        let mut out = String::from("# snr_db cer halfwidth trials\n");
        for p in &self.points {
            out.push_str(&format!(
                "{} {} {} {}\n",
                p.snr_db, p.cer, p.confidence_halfwidth, p.trials
            ));
        }
        out
    }

    /// Point with the largest SNR.
    pub fn top(&self) -> Option<&SnrPoint> {
        self.points
            .iter()
            .max_by(|a, b| a.snr_db.total_cmp(&b.snr_db))
    }
}

pub fn halfwidth95(errors: u64, trials: u64) -> f64 {
    let n = trials as f64;
    let p = errors as f64 / n;
    1.96 * (p * (1.0 - p) / n).sqrt()
}

type Layer = Vec<CMatrix2>;

/// The codebook splits as `X = A_i + B_j`: `A` carries the diagonal layer
/// `(a, b)`, `B` the off-diagonal layer `(c, d)`. Both are scaled so that
/// the mean of `‖X‖²_F` is 2, one unit of energy per channel use.
fn layers(config: &SimConfig) -> (Layer, Layer) {
    let spec = &config.spec;
    let alphabet = symbol_box(spec.field(), config.symbol_box);
    let z = RingElem::zero(spec.field());
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &s in &alphabet {
        for &t in &alphabet {
            let da = Codeword::new(spec, [s, t, z, z]).expect("same field");
            let db = Codeword::new(spec, [z, z, s, t]).expect("same field");
            if config.balanced {
                a.push(da.balanced_matrix());
                b.push(db.balanced_matrix());
            } else {
                a.push(da.matrix());
                b.push(db.matrix());
            }
        }
    }
    let energy = mean_energy(&a) + mean_energy(&b);
    if energy > 0.0 {
        let k = (2.0 / energy).sqrt();
        for m in a.iter_mut().chain(b.iter_mut()) {
            scale(m, k);
        }
    }
    (a, b)
}

fn frob_sq(m: &CMatrix2) -> f64 {
    m.iter().flatten().map(|z| z.norm_sqr()).sum()
}

fn mean_energy(layer: &[CMatrix2]) -> f64 {
    layer.iter().map(frob_sq).sum::<f64>() / layer.len() as f64
}

fn scale(m: &mut CMatrix2, k: f64) {
    for z in m.iter_mut().flatten() {
        *z *= k;
    }
}

/// Mean `‖X‖²_F` over the normalized codebook, for checking.
pub fn codebook_energy(config: &SimConfig) -> f64 {
    let (a, b) = layers(config);
    mean_energy(&a) + mean_energy(&b)
}

fn mul(h: &CMatrix2, x: &CMatrix2) -> CMatrix2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = h[i][0] * x[0][j] + h[i][1] * x[1][j];
        }
    }
    out
}

fn cn(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn cn_matrix(rng: &mut ChaCha8Rng) -> CMatrix2 {
    [[cn(rng), cn(rng)], [cn(rng), cn(rng)]]
}

fn noise_sigma(snr_db: f64) -> f64 {
    if snr_db == f64::INFINITY {
        0.0
    } else {
        10f64.powf(-snr_db / 20.0)
    }
}

fn ml_decode(y: &CMatrix2, ha: &[CMatrix2], hb: &[CMatrix2]) -> (usize, usize) {
    let mut best = (0, 0);
    let mut best_d = f64::INFINITY;
    for (i, a) in ha.iter().enumerate() {
        let mut r = *y;
        for (ri, ai) in r.iter_mut().flatten().zip(a.iter().flatten()) {
            *ri -= ai;
        }
        for (j, b) in hb.iter().enumerate() {
            let mut d = 0.0;
            for (ri, bi) in r.iter().flatten().zip(b.iter().flatten()) {
                d += (ri - bi).norm_sqr();
            }
            if d < best_d {
                best_d = d;
                best = (i, j);
            }
        }
    }
    best
}

/// SNR is received signal power per receive antenna over the noise variance
/// per complex entry; `f64::INFINITY` runs noiseless.
pub fn run(config: &SimConfig) -> Result<SimResult> {
    if config.trials == 0 {
        return Err(Error::Config("trials must be positive".into()));
    }
    let size = config.codebook_size();
    if size > config.codebook_cap {
        return Err(Error::Config(format!(
            "codebook of {size} words exceeds cap {}",
            config.codebook_cap
        )));
    }
    let (a, b) = layers(config);
    let sigmas: Vec<f64> = config.snr_grid_db.iter().map(|&s| noise_sigma(s)).collect();
    let n_snr = sigmas.len();
    let errors = config.exec.map_reduce(
        config.trials,
        vec![0u64; n_snr],
        |t| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(t as u64);
            let h = cn_matrix(&mut rng);
            let (i0, j0) = (rng.random_range(0..a.len()), rng.random_range(0..b.len()));
            let w = cn_matrix(&mut rng);
            let ha: Vec<CMatrix2> = a.iter().map(|x| mul(&h, x)).collect();
            let hb: Vec<CMatrix2> = b.iter().map(|x| mul(&h, x)).collect();
            sigmas
                .iter()
                .map(|&sigma| {
                    let mut y = ha[i0];
                    for ((yk, bk), wk) in y
                        .iter_mut()
                        .flatten()
                        .zip(hb[j0].iter().flatten())
                        .zip(w.iter().flatten())
                    {
                        *yk += bk + wk * sigma;
                    }
                    u64::from(ml_decode(&y, &ha, &hb) != (i0, j0))
                })
                .collect()
        },
        |x, y| x.iter().zip(&y).map(|(p, q)| p + q).collect(),
    );
    let n = config.trials as u64;
    let points = config
        .snr_grid_db
        .iter()
        .zip(errors)
        .map(|(&snr_db, e)| SnrPoint {
            snr_db,
            cer: e as f64 / n as f64,
            errors: e,
            trials: n,
            confidence_halfwidth: halfwidth95(e, n),
        })
        .collect();
    Ok(SimResult { points })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedCode {
    /// Position in the input list.
    pub index: usize,
    pub cer: f64,
    pub halfwidth: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ranking {
    /// Best (lowest CER at the top SNR) first.
    pub order: Vec<RankedCode>,
    /// Index pairs whose CER intervals overlap.
    pub inconclusive: Vec<(usize, usize)>,
}

impl Ranking {
    pub fn is_conclusive(&self, i: usize, j: usize) -> bool {
        !self
            .inconclusive
            .iter()
            .any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }
}

/// Run every spec under `shared` (its `spec` field is replaced) and sort by
/// CER at the highest SNR point.
pub fn rank_codes(specs: &[CodeSpec], shared: &SimConfig) -> Result<Ranking> {
    let mut order = Vec::with_capacity(specs.len());
    for (index, spec) in specs.iter().enumerate() {
        let config = SimConfig {
            spec: spec.clone(),
            ..shared.clone()
        };
        let result = run(&config)?;
        let top = result
            .top()
            .ok_or_else(|| Error::Config("empty SNR grid".into()))?;
        order.push(RankedCode {
            index,
            cer: top.cer,
            halfwidth: top.confidence_halfwidth,
            delta: spec.density().delta,
        });
    }
    order.sort_by(|x, y| x.cer.total_cmp(&y.cer));
    let mut inconclusive = Vec::new();
    for (k, x) in order.iter().enumerate() {
        for y in &order[k + 1..] {
            if (x.cer - y.cer).abs() <= x.halfwidth + y.halfwidth {
                inconclusive.push((x.index, y.index));
            }
        }
    }
    Ok(Ranking {
        order,
        inconclusive,
    })
}
