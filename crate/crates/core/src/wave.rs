//! Symbolic multi-component wavefunctions built from `x^m exp(q x^2 + c x)`
//! terms, and the eigenstate constructions that act on them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::clifford::{ExactMatrix, MatrixRep};
use crate::operator::{
    hll_free, hll_harmonic, lowering, momentum, parity_one, parse_operator, raising, Blade, OperatorPoly, BETA,
};
use crate::scalar::{rational, GaussianRational, ScalarError, ScalarSum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WaveError {
    #[error("representation has dimension {rep} but the state has {state} components")]
    DimensionMismatch { rep: usize, state: usize },
    #[error("representation has no image for blade `{0}`")]
    MissingBlade(String),
    #[error("E must be nonzero here")]
    ZeroEnergy,
    #[error("state is not a gamma-plus eigenstate with the given E")]
    NotEigenstate,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `(x_pow, q, c)`: the term `x^x_pow exp(q x^2 + c x)`.
pub type TermKey = (u32, ScalarSum, ScalarSum);

/// One component: a canonical sum of weighted terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct WaveFn {
    terms: BTreeMap<TermKey, ScalarSum>,
}

impl WaveFn {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coeff: ScalarSum, x_pow: u32, q: ScalarSum, c: ScalarSum) -> Self {
        let mut out = Self::zero();
        out.push((x_pow, q, c), coeff);
        out
    }

    /// `coeff exp(c x)`.
    pub fn exp_linear(coeff: ScalarSum, c: ScalarSum) -> Self {
        Self::term(coeff, 0, ScalarSum::zero(), c)
    }

    pub fn constant(coeff: ScalarSum) -> Self {
        Self::exp_linear(coeff, ScalarSum::zero())
    }

    fn push(&mut self, key: TermKey, coeff: ScalarSum) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.get(&key) {
            Some(e) => e + &coeff,
            None => coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &ScalarSum)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.push(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&ScalarSum::integer(-1)))
    }

    pub fn scale(&self, s: &ScalarSum) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.push(k.clone(), c * s);
        }
        out
    }

    pub fn mul_x(&self) -> Self {
        let mut out = Self::zero();
        for ((m, q, c), coeff) in &self.terms {
            out.push((m + 1, q.clone(), c.clone()), coeff.clone());
        }
        out
    }

    /// `d/dx (x^m e) = m x^(m-1) e + (2q x^(m+1) + c x^m) e`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for ((m, q, c), coeff) in &self.terms {
            if *m > 0 {
                out.push((m - 1, q.clone(), c.clone()), coeff.scale_rational(&rational(*m as i64, 1)));
            }
            out.push((m + 1, q.clone(), c.clone()), &(coeff * q) * &ScalarSum::integer(2));
            out.push((*m, q.clone(), c.clone()), coeff * c);
        }
        out
    }

    /// `f(x) -> f(-x)`.
    pub fn reflect(&self) -> Self {
        let mut out = Self::zero();
        for ((m, q, c), coeff) in &self.terms {
            let sign = if m % 2 == 0 { coeff.clone() } else { -coeff };
            out.push((*m, q.clone(), -c), sign);
        }
        out
    }

    /// Multiplies by `exp(freq x)`.
    pub fn shift(&self, freq: &ScalarSum) -> Self {
        let mut out = Self::zero();
        for ((m, q, c), coeff) in &self.terms {
            out.push((*m, q.clone(), c + freq), coeff.clone());
        }
        out
    }

    /// Largest power of `x`.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// Distinct `(q, c)` envelopes present.
    pub fn envelopes(&self) -> Vec<(ScalarSum, ScalarSum)> {
        let mut v: Vec<_> = self.terms.keys().map(|(_, q, c)| (q.clone(), c.clone())).collect();
        v.dedup();
        v
    }
}

/// Vector of components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveState {
    pub components: Vec<WaveFn>,
}

impl WaveState {
    pub fn new(components: Vec<WaveFn>) -> Self {
        Self { components }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![WaveFn::zero(); dim])
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(WaveFn::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.components.iter().zip(&o.components).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.components.iter().zip(&o.components).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, s: &ScalarSum) -> Self {
        Self::new(self.components.iter().map(|a| a.scale(s)).collect())
    }

    fn map(&self, f: impl Fn(&WaveFn) -> WaveFn) -> Self {
        Self::new(self.components.iter().map(f).collect())
    }
}

fn gaussian_scalar(z: &GaussianRational) -> ScalarSum {
    ScalarSum::gaussian(z.re.clone(), z.im.clone())
}

fn blade_matrix(rep: &MatrixRep, b: Blade) -> Result<ExactMatrix, WaveError> {
    if b == Blade::Id {
        return Ok(ExactMatrix::identity(rep.dim));
    }
    rep.images
        .get(b.name())
        .cloned()
        .ok_or_else(|| WaveError::MissingBlade(b.name().to_string()))
}

fn apply_matrix(m: &ExactMatrix, s: &WaveState) -> WaveState {
    let n = m.dim;
    let mut out = WaveState::zero(n);
    for i in 0..n {
        for j in 0..n {
            let e = m.get(i, j);
            if e.re == num_traits::Zero::zero() && e.im == num_traits::Zero::zero() {
                continue;
            }
            out.components[i] = out.components[i].add(&s.components[j].scale(&gaussian_scalar(e)));
        }
    }
    out
}

/// Applies `coeff x^m d^n P^p G` termwise; blades act through `rep`.
pub fn apply_op(op: &OperatorPoly, rep: &MatrixRep, s: &WaveState) -> Result<WaveState, WaveError> {
    if rep.dim != s.components.len() {
        return Err(WaveError::DimensionMismatch {
            rep: rep.dim,
            state: s.components.len(),
        });
    }
    let mut out = WaveState::zero(rep.dim);
    for (key, coeff) in op.terms() {
        let mut t = apply_matrix(&blade_matrix(rep, key.blade)?, s);
        if key.parity {
            t = t.map(WaveFn::reflect);
        }
        for _ in 0..key.d_pow {
            t = t.map(WaveFn::derivative);
        }
        for _ in 0..key.x_pow {
            t = t.map(WaveFn::mul_x);
        }
        out = out.add(&t.scale(coeff));
    }
    Ok(out)
}

fn sqrt_beta() -> ScalarSum {
    ScalarSum::symbol_pow(BETA, rational(1, 2))
}

/// Unnormalized `psi_k = (kw, sqrt(beta)) exp(i sqrt(beta) kw x)`.
pub fn plane_wave(k_wave: &ScalarSum) -> WaveState {
    let freq = &(&ScalarSum::i() * &sqrt_beta()) * k_wave;
    WaveState::new(vec![
        WaveFn::exp_linear(k_wave.clone(), freq.clone()),
        WaveFn::exp_linear(sqrt_beta(), freq),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Potential {
    Free,
    Harmonic,
}

impl Potential {
    pub fn hamiltonian(&self) -> OperatorPoly {
        match self {
            Potential::Free => hll_free(),
            Potential::Harmonic => hll_harmonic(),
        }
    }
}

fn gamma_plus() -> OperatorPoly {
    OperatorPoly::blade(Blade::GammaPlus)
}

/// `Hll s - gp E s`.
pub fn gamma_eigen_residual(
    potential: &Potential,
    rep: &MatrixRep,
    s: &WaveState,
    energy: &ScalarSum,
) -> Result<WaveState, WaveError> {
    let op = &potential.hamiltonian() - &gamma_plus().scale(energy);
    apply_op(&op, rep, s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimultaneousDecomposition {
    pub phi1: WaveState,
    pub phi2: WaveState,
    pub a: ScalarSum,
    pub b: ScalarSum,
}

impl SimultaneousDecomposition {
    /// `a phi1 + b P1 phi2`.
    pub fn reconstruct(&self, rep: &MatrixRep) -> Result<WaveState, WaveError> {
        let p1_phi2 = apply_op(&parity_one(), rep, &self.phi2)?;
        Ok(self.phi1.scale(&self.a).add(&p1_phi2.scale(&self.b)))
    }

    /// `P^ phi_i - sqrt(E beta) phi_i` and `D+ phi_i - sqrt(E beta) phi_i`
    /// for `i = 1, 2`.
    pub fn eigen_residuals(&self, rep: &MatrixRep, energy: &ScalarSum) -> Result<Vec<WaveState>, WaveError> {
        let root = (energy * &ScalarSum::symbol(BETA)).sqrt()?;
        let mut out = Vec::new();
        for phi in [&self.phi1, &self.phi2] {
            for op in [momentum(), crate::operator::d_plus()] {
                out.push(apply_op(&op, rep, phi)?.sub(&phi.scale(&root)));
            }
        }
        Ok(out)
    }
}

/// Splits a gamma-plus eigenstate into common eigenstates of `P^` and `D+`
/// with eigenvalue `sqrt(E beta)`, following `chi = P^ s / sqrt(E beta)`.
pub fn decompose_simultaneous(
    s: &WaveState,
    rep: &MatrixRep,
    energy: &ScalarSum,
) -> Result<SimultaneousDecomposition, WaveError> {
    if energy.is_zero() {
        return Err(WaveError::ZeroEnergy);
    }
    if !gamma_eigen_residual(&Potential::Free, rep, s, energy)?.is_zero() {
        return Err(WaveError::NotEigenstate);
    }
    let root = (energy * &ScalarSum::symbol(BETA)).sqrt()?;
    let inv_root = root
        .as_monomial()
        .expect("square root of a monomial is a monomial")
        .inverse()?;
    let chi = apply_op(&momentum(), rep, s)?.scale(&inv_root.into());
    let zero = WaveState::zero(s.components.len());
    if chi == *s {
        return Ok(SimultaneousDecomposition {
            phi1: s.clone(),
            phi2: zero,
            a: ScalarSum::one(),
            b: ScalarSum::zero(),
        });
    }
    if chi == s.scale(&ScalarSum::integer(-1)) {
        return Ok(SimultaneousDecomposition {
            phi1: zero,
            phi2: apply_op(&parity_one(), rep, s)?,
            a: ScalarSum::zero(),
            b: ScalarSum::one(),
        });
    }
    let half = ScalarSum::ratio(1, 2);
    Ok(SimultaneousDecomposition {
        phi1: s.add(&chi),
        phi2: apply_op(&parity_one(), rep, &s.sub(&chi))?,
        a: half.clone(),
        b: half,
    })
}

/// `sqrt(beta k / 2)`.
fn ground_width() -> ScalarSum {
    parse_operator("sqrt(beta*k/2)")
        .ok()
        .and_then(|p| p.as_scalar())
        .expect("positive monomial")
}

/// `(b†)^n |0>`, where `|0> = (beta I + c)|0>_sch` and `|0>_sch` is the
/// Gaussian in the first component. When `gp` kills `|0>_sch`, which it does
/// in the 2x2 representation, `Hll |0>_sch` is used in its place.
pub fn harmonic_state(n: u32, rep: &MatrixRep) -> Result<WaveState, WaveError> {
    let q = ground_width().scale_rational(&rational(-1, 2));
    let mut comps = vec![WaveFn::zero(); rep.dim];
    comps[0] = WaveFn::term(ScalarSum::one(), 0, q, ScalarSum::zero());
    let mut sch = WaveState::new(comps);
    if apply_op(&gamma_plus(), rep, &sch)?.is_zero() {
        sch = apply_op(&hll_harmonic(), rep, &sch)?;
    }
    let beta_plus_c = &OperatorPoly::scalar(ScalarSum::symbol(BETA)) + &crate::operator::c_operator();
    let mut state = apply_op(&beta_plus_c, rep, &sch)?;
    let up = raising();
    for _ in 0..n {
        state = apply_op(&up, rep, &state)?;
    }
    Ok(state)
}

/// `omega (n + 1/2)`.
pub fn harmonic_energy(n: u32) -> ScalarSum {
    crate::operator::omega().scale_rational(&rational(2 * n as i64 + 1, 2))
}

pub fn lowering_residual(rep: &MatrixRep, s: &WaveState) -> Result<WaveState, WaveError> {
    apply_op(&lowering(), rep, s)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Overlap {
    /// Coefficient in front of `delta(k - j)`.
    pub coefficient: f64,
    /// `sqrt(beta) (k - j)`; zero means the same frequency channel.
    pub frequency_difference: f64,
}

/// `(j k + beta) / sqrt((k^2 + beta)(j^2 + beta))`.
pub fn overlap_numeric(j: f64, k: f64, beta: f64) -> Overlap {
    let coefficient = if j == k {
        1.0
    } else {
        (j * k + beta) / ((k * k + beta) * (j * j + beta)).sqrt()
    };
    Overlap {
        coefficient,
        frequency_difference: beta.sqrt() * (k - j),
    }
}

/// `sum blade * coeff * exp(freq x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpGammaOp {
    pub terms: Vec<(Blade, ScalarSum, ScalarSum)>,
}

impl ExpGammaOp {
    pub fn identity() -> Self {
        Self {
            terms: vec![(Blade::Id, ScalarSum::one(), ScalarSum::zero())],
        }
    }
}

pub fn apply_exp_op(op: &ExpGammaOp, rep: &MatrixRep, s: &WaveState) -> Result<WaveState, WaveError> {
    if rep.dim != s.components.len() {
        return Err(WaveError::DimensionMismatch {
            rep: rep.dim,
            state: s.components.len(),
        });
    }
    let mut out = WaveState::zero(rep.dim);
    for (blade, coeff, freq) in &op.terms {
        let t = apply_matrix(&blade_matrix(rep, *blade)?, s);
        out = out.add(&t.map(|f| f.shift(freq)).scale(coeff));
    }
    Ok(out)
}

/// The four operators built from the general solution of the coefficient
/// system: `I`, `gp iE + gm i beta`, and the two exponential ones.
pub fn eigen_condition_operators(energy: &ScalarSum) -> Result<[ExpGammaOp; 4], WaveError> {
    let e = energy.as_monomial().filter(|m| !m.is_zero()).ok_or(WaveError::ZeroEnergy)?;
    let beta = ScalarSum::symbol(BETA);
    let i = ScalarSum::i();
    let root = (energy * &beta).sqrt()?;
    let e_over_b = (energy * &ScalarSum::symbol_pow(BETA, rational(-1, 1))).sqrt()?;
    let b_over_e = ScalarSum::from(e.inverse()?).mul_monomial(beta.as_monomial().expect("symbol")).sqrt()?;
    let freq = &(&i * &root) * &ScalarSum::integer(2);
    let neg = |s: &ScalarSum| -s;
    Ok([
        ExpGammaOp::identity(),
        ExpGammaOp {
            terms: vec![
                (Blade::GammaPlus, &i * energy, ScalarSum::zero()),
                (Blade::GammaMinus, &i * &beta, ScalarSum::zero()),
            ],
        },
        ExpGammaOp {
            terms: vec![
                (Blade::GammaPlus, neg(&e_over_b), freq.clone()),
                (Blade::GammaMinus, b_over_e.clone(), freq.clone()),
                (Blade::Gamma1, ScalarSum::one(), freq.clone()),
            ],
        },
        ExpGammaOp {
            terms: vec![
                (Blade::GammaPlus, e_over_b, neg(&freq)),
                (Blade::GammaMinus, neg(&b_over_e), neg(&freq)),
                (Blade::Gamma1, ScalarSum::one(), neg(&freq)),
            ],
        },
    ])
}

/// Closed-form solution of the coefficient system for constants `a`, `b`,
/// `d0`, and an arbitrary constant `c_id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSolution {
    pub c_id: WaveFn,
    pub c1: WaveFn,
    pub c: WaveFn,
    pub c_plus: WaveFn,
    pub c_minus: WaveFn,
    pub energy: ScalarSum,
}

impl CoeffSolution {
    pub fn closed_form(energy: &ScalarSum, a: &ScalarSum, b: &ScalarSum, d0: &ScalarSum) -> Result<Self, WaveError> {
        let e = energy.as_monomial().filter(|m| !m.is_zero()).ok_or(WaveError::ZeroEnergy)?;
        let beta = ScalarSum::symbol(BETA);
        let i = ScalarSum::i();
        let root = (energy * &beta).sqrt()?;
        let e_over_b = (energy * &ScalarSum::symbol_pow(BETA, rational(-1, 1))).sqrt()?;
        let b_over_e = ScalarSum::from(e.inverse()?).mul_monomial(beta.as_monomial().expect("symbol")).sqrt()?;
        let w = &(&i * &root) * &ScalarSum::integer(2);
        let up = |coeff: ScalarSum| WaveFn::exp_linear(coeff, w.clone());
        let down = |coeff: ScalarSum| WaveFn::exp_linear(coeff, -&w);
        let d_over_beta = d0.div_monomial(beta.as_monomial().expect("symbol"))?;
        let d_over_e = d0.div_monomial(e)?;
        Ok(Self {
            c_id: WaveFn::constant(ScalarSum::symbol("c_id")),
            c1: up(a.clone()).add(&down(b.clone())),
            c: up(&w * a).add(&down(-&(&w * b))),
            c_plus: up(-&(a * &e_over_b))
                .add(&down(b * &e_over_b))
                .add(&WaveFn::constant(d_over_beta)),
            c_minus: up(a * &b_over_e)
                .add(&down(-&(b * &b_over_e)))
                .add(&WaveFn::constant(d_over_e)),
            energy: energy.clone(),
        })
    }

    /// Each line of the system and of its reduced form, as `lhs - rhs`.
    pub fn residuals(&self) -> Vec<(&'static str, WaveFn)> {
        let beta = ScalarSum::symbol(BETA);
        let i = ScalarSum::i();
        let e = &self.energy;
        let two = ScalarSum::integer(2);
        let four = ScalarSum::integer(4);
        let combo = self.c_plus.scale(&-&(&i * &beta)).add(&self.c_minus.scale(&(&i * e)));
        vec![
            ("c_I' = 0", self.c_id.derivative()),
            (
                "c_+' = -2iE c_1",
                self.c_plus.derivative().add(&self.c1.scale(&(&(&two * &i) * e))),
            ),
            (
                "c_-' = 2i beta c_1",
                self.c_minus.derivative().sub(&self.c1.scale(&(&(&two * &i) * &beta))),
            ),
            ("c_1' = -i beta c_+ + iE c_-", self.c1.derivative().sub(&combo)),
            ("c = -i beta c_+ + iE c_-", self.c.sub(&combo)),
            ("c' = -4E beta c_1", self.c.derivative().add(&self.c1.scale(&(&(&four * e) * &beta)))),
            ("c_1' = c", self.c1.derivative().sub(&self.c)),
        ]
    }
}

pub fn verify_coeff_ode(
    energy: &ScalarSum,
    a: &ScalarSum,
    b: &ScalarSum,
    d0: &ScalarSum,
) -> Result<Vec<(&'static str, WaveFn)>, WaveError> {
    Ok(CoeffSolution::closed_form(energy, a, b, d0)?.residuals())
}
