//! Monte Carlo verification layer: uniform sphere vectors by gaussianization,
//! complex-reflection matrices, Haar unitaries as products of embedded
//! reflections, the projection to one dimension lower, and empirical moment
//! estimation with standard errors.
//!
//! Sampling is reproducible: worker w draws from stream w of a counter-based
//! generator seeded by the run seed, and partial sums combine in worker
//! order, so a fixed (seed, worker_count) gives bit-identical estimates.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::query::{MomentQuery, Target};
use crate::sym::permutation::Permutation;

pub type C64 = Complex<f64>;
pub type ComplexVector = DVector<C64>;
pub type ComplexMatrix = DMatrix<C64>;

/// Below this distance from the x_n = 1 singularity, pipelines redraw the
/// sphere vector (the event has probability zero; the guard is numerical).
pub const DEFAULT_RESAMPLE_EPSILON: f64 = 1e-12;

const UNIT_NORM_TOLERANCE: f64 = 1e-8;
const UNITARY_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
    pub resample_epsilon: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0,
            samples: 100_000,
            workers: 1,
            resample_epsilon: DEFAULT_RESAMPLE_EPSILON,
        }
    }
}

/// Empirical moment with its standard error.
#[derive(Clone, Debug, Serialize)]
pub struct MomentEstimate {
    pub query: String,
    pub n: i64,
    pub samples: u64,
    pub seed: u64,
    pub mean_re: f64,
    pub mean_im: f64,
    pub standard_error: f64,
}

impl MomentEstimate {
    pub fn mean(&self) -> C64 {
        C64::new(self.mean_re, self.mean_im)
    }

    /// Distance from a reference value in units of the standard error.
    pub fn z_score(&self, exact: f64) -> f64 {
        (self.mean() - C64::new(exact, 0.0)).norm() / self.standard_error
    }
}

/// The RNG stream for one worker of a run.
pub fn worker_rng(seed: u64, worker: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(worker);
    rng
}

/// Uniform point on the complex unit sphere of C^n: n i.i.d. standard
/// complex gaussians, normalized.
pub fn sample_sphere(n: usize, rng: &mut impl Rng) -> ComplexVector {
    loop {
        let v = ComplexVector::from_fn(n, |_, _| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let norm = v.norm();
        if norm > 1e-150 {
            return v / C64::new(norm, 0.0);
        }
        // astronomically unlikely underflow; redraw
    }
}

fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The complex reflection R with R e_n = x. Takes the identity branch when
/// x is numerically at e_n (pipelines resample instead of ever hitting the
/// 1/(1 − x̄_n) singularity).
pub fn build_reflection(x: &ComplexVector, epsilon: f64) -> Result<ComplexMatrix> {
    let n = x.len();
    if n == 0 {
        return Err(Error::Domain("reflection needs dimension >= 1".into()));
    }
    if (x.norm() - 1.0).abs() > UNIT_NORM_TOLERANCE {
        return Err(Error::Domain(format!(
            "reflection input is not a unit vector (norm {})",
            x.norm()
        )));
    }
    let xn = x[n - 1];
    if n >= 2 && (C64::new(1.0, 0.0) - xn).norm() < epsilon {
        return Ok(ComplexMatrix::identity(n, n));
    }
    let denom = C64::new(1.0, 0.0) - xn.conj();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            x[i]
        } else if i == n - 1 {
            (C64::new(1.0, 0.0) - xn) / denom * x[j].conj()
        } else {
            let delta = if i == j { 1.0 } else { 0.0 };
            C64::new(delta, 0.0) - x[i] * x[j].conj() / denom
        }
    }))
}

/// Haar-distributed U(n) matrix as the product of embedded reflections
/// R̃_n R̃_{n−1} ⋯ R̃_1, built incrementally as g_m = R_m (g_{m−1} ⊕ 1).
pub fn sample_haar_unitary(n: usize, rng: &mut impl Rng, epsilon: f64) -> ComplexMatrix {
    let mut g = ComplexMatrix::identity(0, 0);
    for m in 1..=n {
        let x = loop {
            let cand = sample_sphere(m, rng);
            if m == 1 || (C64::new(1.0, 0.0) - cand[m - 1]).norm() >= epsilon {
                break cand;
            }
        };
        let r = build_reflection(&x, epsilon).expect("sampled vector is unit");
        let mut embedded = ComplexMatrix::identity(m, m);
        embedded.view_mut((0, 0), (m - 1, m - 1)).copy_from(&g);
        g = r * embedded;
    }
    g
}

/// The projection U(n) → U(n−1): a_ij + a_in a_nj/(1 − a_nn), with the
/// top-left block returned on the a_nn = 1 branch.
pub fn neretin_project(g: &ComplexMatrix, epsilon: f64) -> Result<ComplexMatrix> {
    let n = g.nrows();
    if n < 2 || g.ncols() != n {
        return Err(Error::Domain(format!(
            "projection needs a square matrix of size >= 2, got {}x{}",
            g.nrows(),
            g.ncols()
        )));
    }
    let defect = max_abs(&(g.adjoint() * g - ComplexMatrix::identity(n, n)));
    if defect > UNITARY_TOLERANCE {
        return Err(Error::Domain(format!(
            "projection input is not unitary (defect {defect:.3e})"
        )));
    }
    let ann = g[(n - 1, n - 1)];
    if (C64::new(1.0, 0.0) - ann).norm() < epsilon {
        return Ok(g.view((0, 0), (n - 1, n - 1)).into_owned());
    }
    let denom = C64::new(1.0, 0.0) - ann;
    Ok(ComplexMatrix::from_fn(n - 1, n - 1, |i, j| {
        g[(i, j)] + g[(i, n - 1)] * g[(n - 1, j)] / denom
    }))
}

// ---------------------------------------------------------------------------
// Moment estimation

/// Streaming pairwise summation (binary-counter merging), so 10^7 samples
/// accumulate without drift.
struct Pairwise<T> {
    levels: Vec<Option<T>>,
}

impl<T: Copy + std::ops::Add<Output = T>> Pairwise<T> {
    fn new() -> Self {
        Pairwise { levels: Vec::new() }
    }

    fn push(&mut self, mut v: T) {
        let mut i = 0;
        loop {
            if i == self.levels.len() {
                self.levels.push(Some(v));
                return;
            }
            match self.levels[i].take() {
                None => {
                    self.levels[i] = Some(v);
                    return;
                }
                Some(u) => {
                    v = u + v;
                    i += 1;
                }
            }
        }
    }

    fn total(&self, zero: T) -> T {
        self.levels.iter().flatten().fold(zero, |a, &b| a + b)
    }
}

struct CompiledFactor {
    target: Target,
    row: usize,
    col: usize,
    conj: bool,
    power: u32,
}

fn compile_query(query: &MomentQuery, n: i64) -> Result<(Target, Vec<CompiledFactor>)> {
    let family = query.target()?;
    let factors = query
        .factors()
        .iter()
        .map(|f| {
            Ok(CompiledFactor {
                target: f.target,
                row: f.row.resolve(n)? as usize - 1,
                col: f.col.resolve(n)? as usize - 1,
                conj: f.conj,
                power: f.power,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((family, factors))
}

fn monomial_value(factors: &[CompiledFactor], u: &ComplexMatrix) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for f in factors {
        let entry = u[(f.row, f.col)];
        let mut v = match f.target {
            Target::U | Target::R => entry,
            Target::P => {
                let delta = if f.row == f.col { 1.0 } else { 0.0 };
                C64::new(delta, 0.0) - entry
            }
        };
        if f.conj {
            v = v.conj();
        }
        for _ in 0..f.power {
            acc *= v;
        }
    }
    acc
}

/// Sample mean and standard error of the queried monomial over independent
/// draws. P and R targets draw a single reflection per sample; U targets
/// draw the full product of embedded reflections.
pub fn estimate_moment(
    query: &MomentQuery,
    n: i64,
    config: &SamplerConfig,
) -> Result<MomentEstimate> {
    if n < 1 {
        return Err(Error::Domain(format!("dimension must be >= 1, got {n}")));
    }
    if config.samples < 2 {
        return Err(Error::Domain(
            "need at least 2 samples for a standard error".into(),
        ));
    }
    if config.workers == 0 {
        return Err(Error::Domain("worker count must be >= 1".into()));
    }
    let (family, factors) = compile_query(query, n)?;
    let dim = n as usize;
    let workers = config.workers.min(config.samples as usize).max(1);
    let per = config.samples / workers as u64;
    let extra = config.samples % workers as u64;
    let eps = config.resample_epsilon;

    let partials: Vec<(C64, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let factors = &factors;
                let count = per + if (w as u64) < extra { 1 } else { 0 };
                let seed = config.seed;
                scope.spawn(move || {
                    let mut rng = worker_rng(seed, w as u64);
                    let mut sum = Pairwise::<C64>::new();
                    let mut sumsq = Pairwise::<f64>::new();
                    for _ in 0..count {
                        let matrix = match family {
                            Target::U => sample_haar_unitary(dim, &mut rng, eps),
                            _ => {
                                let x = loop {
                                    let cand = sample_sphere(dim, &mut rng);
                                    if dim == 1
                                        || (C64::new(1.0, 0.0) - cand[dim - 1]).norm() >= eps
                                    {
                                        break cand;
                                    }
                                };
                                build_reflection(&x, eps).expect("sampled vector is unit")
                            }
                        };
                        let v = monomial_value(factors, &matrix);
                        sum.push(v);
                        sumsq.push(v.norm_sqr());
                    }
                    (sum.total(C64::new(0.0, 0.0)), sumsq.total(0.0))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });

    let mut total = Pairwise::<C64>::new();
    let mut total_sq = Pairwise::<f64>::new();
    for (s, ss) in partials {
        total.push(s);
        total_sq.push(ss);
    }
    let s = total.total(C64::new(0.0, 0.0));
    let ss = total_sq.total(0.0);
    let count = config.samples as f64;
    let mean = s / C64::new(count, 0.0);
    let variance = ((ss - s.norm_sqr() / count) / (count - 1.0)).max(0.0);
    let standard_error = (variance / count).sqrt();
    Ok(MomentEstimate {
        query: query.to_string(),
        n,
        samples: config.samples,
        seed: config.seed,
        mean_re: mean.re,
        mean_im: mean.im,
        standard_error,
    })
}

/// Per-sample identity behind the dimension recursion: the first n−1 columns
/// of R satisfy Σ_{p<n} r_ip conj(r_jp) = δ_ij − x_i conj(x_j). Returns the
/// largest deviation over index pairs for one sampled reflection.
pub fn row_identity_defect(r: &ComplexMatrix) -> f64 {
    let n = r.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for p in 0..n - 1 {
                s += r[(i, p)] * r[(j, p)].conj();
            }
            let delta = if i == j { 1.0 } else { 0.0 };
            let expect = C64::new(delta, 0.0) - r[(i, n - 1)] * r[(j, n - 1)].conj();
            worst = worst.max((s - expect).norm());
        }
    }
    worst
}

/// Permutation monomial ∏ u_{i,σ(i)} used by sampler-side spot checks.
pub fn permutation_monomial(u: &ComplexMatrix, sigma: &Permutation) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for i in 1..=sigma.degree() {
        acc *= u[(i - 1, sigma.apply(i) - 1)];
    }
    acc
}
