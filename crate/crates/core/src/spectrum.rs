//! Finite-difference checks of the harmonic spectrum: a Sturm-bisection
//! symmetric solver, the 2N x 2N Lévy-Leblond assembly and a smallest
//! singular value probe for the pencil `Hll - gp E`.

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::clifford::MatrixRep;
use crate::scalar::GaussianRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("grid needs N >= 16 and L > 0 (got N = {n}, L = {half_width})")]
    InvalidGrid { n: usize, half_width: f64 },
    #[error("parameters must be finite with beta > 0 and k >= 0")]
    InvalidParameters,
    #[error("requested {count} eigenvalues of a {dim}x{dim} matrix")]
    CountOutOfRange { count: usize, dim: usize },
    #[error("expected a 2x2 representation, got dimension {0}")]
    RepDimension(usize),
    #[error("representation lacks `{0}`")]
    MissingBlade(&'static str),
    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("inverse iteration did not converge in {0} steps")]
    NotConverged(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub half_width: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(half_width: f64, n: usize) -> Result<Self, SpectrumError> {
        if n < 16 || !(half_width > 0.0) || !half_width.is_finite() {
            return Err(SpectrumError::InvalidGrid { n, half_width });
        }
        Ok(Self { half_width, n })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }
}

fn check_params(beta: f64, k: f64) -> Result<(), SpectrumError> {
    if beta > 0.0 && k >= 0.0 && beta.is_finite() && k.is_finite() {
        Ok(())
    } else {
        Err(SpectrumError::InvalidParameters)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiag {
    pub diagonal: Vec<f64>,
    /// `off[i]` couples rows `i` and `i + 1`.
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diagonal: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diagonal.len().max(1), "off-diagonal length");
        Self { diagonal, off }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Number of eigenvalues strictly below `x` (Sturm count).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.dim() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / q };
            q = self.diagonal[i] - x - coupling;
            if q == 0.0 {
                q = f64::EPSILON * (self.diagonal[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.dim() {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 } + self.off.get(i).map_or(0.0, |v| v.abs());
            lo = lo.min(self.diagonal[i] - r);
            hi = hi.max(self.diagonal[i] + r);
        }
        (lo, hi)
    }
}

/// `-(1/beta) d^2 + (k/2) x^2` with Dirichlet ends.
pub fn discretize_schrodinger(g: &Grid, beta: f64, k: f64) -> Result<SymTridiag, SpectrumError> {
    check_params(beta, k)?;
    let h2 = g.spacing() * g.spacing();
    let diagonal = g.nodes().iter().map(|x| 2.0 / (beta * h2) + 0.5 * k * x * x).collect();
    Ok(SymTridiag::new(diagonal, vec![-1.0 / (beta * h2); g.n - 1]))
}

const BISECTION_TOL: f64 = 1e-10;

/// Lowest `count` eigenvalues, ascending.
pub fn eig_sym_tridiag(m: &SymTridiag, count: usize) -> Result<Vec<f64>, SpectrumError> {
    if count > m.dim() {
        return Err(SpectrumError::CountOutOfRange { count, dim: m.dim() });
    }
    let (lo, hi) = m.gershgorin();
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        let (mut a, mut b) = (lo - 1.0, hi + 1.0);
        while b - a > BISECTION_TOL {
            let mid = 0.5 * (a + b);
            if mid == a || mid == b {
                break;
            }
            if m.count_below(mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseComplexMatrix {
    pub dim: usize,
    pub entries: Vec<Complex64>,
}

impl DenseComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::zero(); dim * dim],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.dim + j] += v;
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Product that skips zeros of the left factor.
    pub fn mul(&self, rhs: &Self) -> Result<Self, SpectrumError> {
        if self.dim != rhs.dim {
            return Err(SpectrumError::DimensionMismatch(self.dim, rhs.dim));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                let row = &rhs.entries[l * n..(l + 1) * n];
                for (j, b) in row.iter().enumerate() {
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The `n x n` block at block position `(bi, bj)`.
    pub fn block(&self, n: usize, bi: usize, bj: usize) -> Self {
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(bi * n + i, bj * n + j));
            }
        }
        out
    }

    /// `rep_matrix (x) inner` with component-major layout `c * N + i`.
    fn add_kron(&mut self, blade: &[Complex64; 4], inner: &[(usize, usize, Complex64)], n: usize) {
        for c in 0..2 {
            for d in 0..2 {
                let w = blade[2 * c + d];
                if w.is_zero() {
                    continue;
                }
                for &(i, j, v) in inner {
                    self.add_at(c * n + i, d * n + j, w * v);
                }
            }
        }
    }
}

fn to_c64(z: &GaussianRational) -> Complex64 {
    use num_traits::ToPrimitive;
    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

fn blade_2x2(rep: &MatrixRep, name: &'static str) -> Result<[Complex64; 4], SpectrumError> {
    if rep.dim != 2 {
        return Err(SpectrumError::RepDimension(rep.dim));
    }
    let m = rep.images.get(name).ok_or(SpectrumError::MissingBlade(name))?;
    Ok([to_c64(m.get(0, 0)), to_c64(m.get(0, 1)), to_c64(m.get(1, 0)), to_c64(m.get(1, 1))])
}

const IDENTITY_2: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 0.0),
    Complex64::new(0.0, 0.0),
    Complex64::new(1.0, 0.0),
];

fn diagonal_entries(values: impl IntoIterator<Item = f64>) -> Vec<(usize, usize, Complex64)> {
    values.into_iter().enumerate().map(|(i, v)| (i, i, Complex64::new(v, 0.0))).collect()
}

/// `gm beta - i g1 D + gp (k/2) x^2`, with `D` the central first difference.
pub fn discretize_ll(g: &Grid, beta: f64, k: f64, rep: &MatrixRep) -> Result<DenseComplexMatrix, SpectrumError> {
    check_params(beta, k)?;
    let (gp, gm, g1) = (blade_2x2(rep, "gp")?, blade_2x2(rep, "gm")?, blade_2x2(rep, "g1")?);
    let n = g.n;
    let h = g.spacing();
    let mut m = DenseComplexMatrix::zeros(2 * n);
    m.add_kron(&gm, &diagonal_entries(vec![beta; n]), n);
    let mut minus_i_d = Vec::with_capacity(2 * n);
    let w = Complex64::new(0.0, -1.0 / (2.0 * h));
    for i in 0..n {
        if i + 1 < n {
            minus_i_d.push((i, i + 1, w));
        }
        if i > 0 {
            minus_i_d.push((i, i - 1, -w));
        }
    }
    m.add_kron(&g1, &minus_i_d, n);
    m.add_kron(&gp, &diagonal_entries(g.nodes().iter().map(|x| 0.5 * k * x * x)), n);
    Ok(m)
}

/// `gp` on the same layout as [`discretize_ll`].
pub fn gamma_plus_matrix(g: &Grid, rep: &MatrixRep) -> Result<DenseComplexMatrix, SpectrumError> {
    let mut m = DenseComplexMatrix::zeros(2 * g.n);
    m.add_kron(&blade_2x2(rep, "gp")?, &diagonal_entries(vec![1.0; g.n]), g.n);
    Ok(m)
}

/// `beta` times the Schrödinger-like operator on the wide stencil
/// `D^2`: diagonal blocks `-D^2 + beta V`, coupling `-i k x_(i±1/2) / 2`
/// on the `gp` block.
pub fn wide_stencil_schrodinger_like(
    g: &Grid,
    beta: f64,
    k: f64,
    rep: &MatrixRep,
) -> Result<DenseComplexMatrix, SpectrumError> {
    check_params(beta, k)?;
    let gp = blade_2x2(rep, "gp")?;
    let n = g.n;
    let h = g.spacing();
    let x = g.nodes();
    let mut diag_block = Vec::new();
    let mut coupling = Vec::new();
    for i in 0..n {
        let v = 0.5 * k * x[i] * x[i];
        diag_block.push((i, i, Complex64::new(1.0 / (2.0 * h * h) + beta * v, 0.0)));
        if i >= 2 {
            diag_block.push((i, i - 2, Complex64::new(-1.0 / (4.0 * h * h), 0.0)));
        }
        if i + 2 < n {
            diag_block.push((i, i + 2, Complex64::new(-1.0 / (4.0 * h * h), 0.0)));
        }
        if i + 1 < n {
            coupling.push((i, i + 1, Complex64::new(0.0, -0.5 * k * (x[i] + 0.5 * h))));
        }
        if i > 0 {
            coupling.push((i, i - 1, Complex64::new(0.0, -0.5 * k * (x[i] - 0.5 * h))));
        }
    }
    let mut m = DenseComplexMatrix::zeros(2 * n);
    m.add_kron(&IDENTITY_2, &diag_block, n);
    m.add_kron(&gp, &coupling, n);
    Ok(m)
}

/// Largest entrywise difference between `Hll^2` and the wide-stencil
/// assembly over rows `1..N-1` of each block.
pub fn interior_identity_residual(g: &Grid, beta: f64, k: f64, rep: &MatrixRep) -> Result<f64, SpectrumError> {
    let ll = discretize_ll(g, beta, k, rep)?;
    let sq = ll.mul(&ll)?;
    let reference = wide_stencil_schrodinger_like(g, beta, k, rep)?;
    let n = g.n;
    let mut worst: f64 = 0.0;
    for c in 0..2 {
        for i in 1..n - 1 {
            let r = c * n + i;
            for j in 0..2 * n {
                worst = worst.max((sq.get(r, j) - reference.get(r, j)).norm());
            }
        }
    }
    Ok(worst)
}

/// LU with partial pivoting in band storage; row `i` keeps columns
/// `i - kl ..= i + kl + ku`.
struct BandLu {
    n: usize,
    kl: usize,
    width: usize,
    rows: Vec<Complex64>,
    pivots: Vec<usize>,
    singular: bool,
}

impl BandLu {
    fn slot(&self, i: usize, j: usize) -> usize {
        i * self.width + (j + self.kl - i)
    }

    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.rows[self.slot(i, j)]
    }

    fn factor(a: &DenseComplexMatrix, perm: &[usize]) -> Self {
        let n = a.dim;
        let (mut kl, mut ku) = (0, 0);
        for i in 0..n {
            for j in 0..n {
                if !a.get(perm[i], perm[j]).is_zero() {
                    if j < i {
                        kl = kl.max(i - j);
                    } else {
                        ku = ku.max(j - i);
                    }
                }
            }
        }
        let width = 2 * kl + ku + 1;
        let mut lu = Self {
            n,
            kl,
            width,
            rows: vec![Complex64::zero(); n * width],
            pivots: vec![0; n],
            singular: false,
        };
        for i in 0..n {
            for j in i.saturating_sub(kl)..n.min(i + ku + 1) {
                let s = lu.slot(i, j);
                lu.rows[s] = a.get(perm[i], perm[j]);
            }
        }
        let reach = kl + ku;
        for col in 0..n {
            let last_row = (n - 1).min(col + kl);
            let last_col = (n - 1).min(col + reach);
            let mut p = col;
            for r in col..=last_row {
                if lu.at(r, col).norm() > lu.at(p, col).norm() {
                    p = r;
                }
            }
            lu.pivots[col] = p;
            if p != col {
                for j in col..=last_col {
                    let (s1, s2) = (lu.slot(col, j), lu.slot(p, j));
                    lu.rows.swap(s1, s2);
                }
            }
            let pivot = lu.at(col, col);
            if pivot.is_zero() {
                lu.singular = true;
                continue;
            }
            for r in col + 1..=last_row {
                let s = lu.slot(r, col);
                let factor = lu.rows[s] / pivot;
                lu.rows[s] = factor;
                if factor.is_zero() {
                    continue;
                }
                for j in col + 1..=last_col {
                    let u = lu.at(col, j);
                    let t = lu.slot(r, j);
                    lu.rows[t] -= factor * u;
                }
            }
        }
        lu
    }

    fn reach(&self, i: usize) -> usize {
        (self.n - 1).min(i + self.width - 1 - self.kl)
    }

    /// `A x = b`.
    fn solve(&self, b: &mut [Complex64]) {
        for col in 0..self.n {
            b.swap(col, self.pivots[col]);
            let bc = b[col];
            for r in col + 1..=(self.n - 1).min(col + self.kl) {
                b[r] -= self.at(r, col) * bc;
            }
        }
        for i in (0..self.n).rev() {
            let mut acc = b[i];
            for j in i + 1..=self.reach(i) {
                acc -= self.at(i, j) * b[j];
            }
            b[i] = acc / self.at(i, i);
        }
    }

    /// `A^H x = b`.
    fn solve_adjoint(&self, b: &mut [Complex64]) {
        for i in 0..self.n {
            let mut acc = b[i];
            for j in i.saturating_sub(self.width - 1 - self.kl)..i {
                acc -= self.at(j, i).conj() * b[j];
            }
            b[i] = acc / self.at(i, i).conj();
        }
        for col in (0..self.n).rev() {
            let mut acc = b[col];
            for r in col + 1..=(self.n - 1).min(col + self.kl) {
                acc -= self.at(r, col).conj() * b[r];
            }
            b[col] = acc;
            b.swap(col, self.pivots[col]);
        }
    }
}

fn interleave(dim: usize) -> Vec<usize> {
    if dim % 2 != 0 {
        return (0..dim).collect();
    }
    let n = dim / 2;
    (0..dim).map(|p| (p % 2) * n + p / 2).collect()
}

pub const PROBE_MAX_ITERATIONS: usize = 2000;
const PROBE_TOL: f64 = 1e-10;

/// Smallest singular value of `hll - E gp`, by inverse iteration on the
/// Gram matrix. An exactly zero pivot returns 0.
pub fn gamma_spectrum_probe(
    hll: &DenseComplexMatrix,
    gamma_plus: &DenseComplexMatrix,
    energy: f64,
) -> Result<f64, SpectrumError> {
    if hll.dim != gamma_plus.dim {
        return Err(SpectrumError::DimensionMismatch(hll.dim, gamma_plus.dim));
    }
    let n = hll.dim;
    let mut pencil = hll.clone();
    for (e, g) in pencil.entries.iter_mut().zip(&gamma_plus.entries) {
        *e -= g * energy;
    }
    let perm = interleave(n);
    let lu = BandLu::factor(&pencil, &perm);
    if lu.singular {
        return Ok(0.0);
    }
    let mut v: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + 0.5 * (i as f64).sin(), 0.25 * (i as f64 * 0.7).cos())).collect();
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nv = norm(&v);
    v.iter_mut().for_each(|z| *z /= nv);
    let mut previous = 0.0;
    for _ in 0..PROBE_MAX_ITERATIONS {
        lu.solve_adjoint(&mut v);
        lu.solve(&mut v);
        let mu = norm(&v);
        if !mu.is_finite() {
            return Ok(0.0);
        }
        v.iter_mut().for_each(|z| *z /= mu);
        if (mu - previous).abs() <= PROBE_TOL * mu {
            return Ok(1.0 / mu.sqrt());
        }
        previous = mu;
    }
    Err(SpectrumError::NotConverged(PROBE_MAX_ITERATIONS))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockReport {
    pub max_lower_left: f64,
    pub diagonal_blocks_match: bool,
    pub max_coupling: f64,
}

impl BlockReport {
    pub fn passed(&self) -> bool {
        self.max_lower_left == 0.0 && self.diagonal_blocks_match
    }
}

/// `H (x) I - gp i (k/beta) diag(x)` on the component-major layout.
pub fn assemble_schrodinger_like(g: &Grid, beta: f64, k: f64, rep: &MatrixRep) -> Result<DenseComplexMatrix, SpectrumError> {
    let h = discretize_schrodinger(g, beta, k)?;
    let gp = blade_2x2(rep, "gp")?;
    let mut inner = diagonal_entries(h.diagonal.iter().copied());
    for (i, v) in h.off.iter().enumerate() {
        inner.push((i, i + 1, Complex64::new(*v, 0.0)));
        inner.push((i + 1, i, Complex64::new(*v, 0.0)));
    }
    let mut m = DenseComplexMatrix::zeros(2 * g.n);
    m.add_kron(&IDENTITY_2, &inner, g.n);
    let coupling = g.nodes().into_iter().enumerate().map(|(i, x)| (i, i, Complex64::new(0.0, -k / beta * x))).collect::<Vec<_>>();
    m.add_kron(&gp, &coupling, g.n);
    Ok(m)
}

/// Structural check on an assembled `2N x 2N` matrix against `H`.
pub fn block_structure_of(m: &DenseComplexMatrix, h: &SymTridiag) -> BlockReport {
    let n = h.dim();
    let lower = m.block(n, 1, 0);
    let upper = m.block(n, 0, 1);
    let expected = |i: usize, j: usize| -> f64 {
        if i == j {
            h.diagonal[i]
        } else if i + 1 == j {
            h.off[i]
        } else if j + 1 == i {
            h.off[j]
        } else {
            0.0
        }
    };
    let mut diagonal_blocks_match = true;
    for b in 0..2 {
        let blk = m.block(n, b, b);
        for i in 0..n {
            for j in 0..n {
                if blk.get(i, j) != Complex64::new(expected(i, j), 0.0) {
                    diagonal_blocks_match = false;
                }
            }
        }
    }
    BlockReport {
        max_lower_left: lower.entries.iter().map(|z| z.norm()).fold(0.0, f64::max),
        diagonal_blocks_match,
        max_coupling: upper.entries.iter().map(|z| z.norm()).fold(0.0, f64::max),
    }
}

pub fn block_structure_check(g: &Grid, beta: f64, k: f64, rep: &MatrixRep) -> Result<BlockReport, SpectrumError> {
    let m = assemble_schrodinger_like(g, beta, k, rep)?;
    Ok(block_structure_of(&m, &discretize_schrodinger(g, beta, k)?))
}

pub const EIGEN_TOLERANCE: f64 = 0.01;
pub const CONTRAST_TOLERANCE: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub omega: f64,
    pub targets: Vec<f64>,
    pub eigenvalues: Vec<f64>,
    pub relative_errors: Vec<f64>,
    /// Probe at `omega (n + 1/2)`.
    pub probe_at_target: Vec<f64>,
    /// Probe at `omega n`, between consecutive targets (and at 0 for n = 0).
    pub probe_at_reference: Vec<f64>,
    pub contrasts: Vec<f64>,
    pub eigen_pass: Vec<bool>,
    pub probe_pass: Vec<bool>,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        self.eigen_pass.iter().chain(&self.probe_pass).all(|p| *p)
    }

    pub fn max_relative_error(&self) -> f64 {
        self.relative_errors.iter().copied().fold(0.0, f64::max)
    }
}

pub fn omega(beta: f64, k: f64) -> f64 {
    (2.0 * k / beta).sqrt()
}

pub fn harmonic_spectrum_check(
    beta: f64,
    k: f64,
    g: &Grid,
    count: usize,
    rep: &MatrixRep,
) -> Result<SpectrumReport, SpectrumError> {
    if count > 8 {
        return Err(SpectrumError::CountOutOfRange { count, dim: 8 });
    }
    let w = omega(beta, k);
    let targets: Vec<f64> = (0..count).map(|n| w * (n as f64 + 0.5)).collect();
    let eigenvalues = eig_sym_tridiag(&discretize_schrodinger(g, beta, k)?, count)?;
    let relative_errors: Vec<f64> = eigenvalues.iter().zip(&targets).map(|(e, t)| ((e - t) / t).abs()).collect();
    let mut probe_at_target = Vec::with_capacity(count);
    let mut probe_at_reference = Vec::with_capacity(count);
    if count > 0 {
        let ll = discretize_ll(g, beta, k, rep)?;
        let gp = gamma_plus_matrix(g, rep)?;
        for n in 0..count {
            probe_at_target.push(gamma_spectrum_probe(&ll, &gp, targets[n])?);
            probe_at_reference.push(gamma_spectrum_probe(&ll, &gp, w * n as f64)?);
        }
    }
    let contrasts: Vec<f64> = probe_at_target.iter().zip(&probe_at_reference).map(|(t, r)| t / r).collect();
    Ok(SpectrumReport {
        omega: w,
        eigen_pass: relative_errors.iter().map(|e| *e < EIGEN_TOLERANCE).collect(),
        probe_pass: contrasts.iter().map(|c| *c < CONTRAST_TOLERANCE).collect(),
        targets,
        eigenvalues,
        relative_errors,
        probe_at_target,
        probe_at_reference,
        contrasts,
    })
}
