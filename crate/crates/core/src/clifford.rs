//! Complexified Cl(1,d): blade products, the chirality element, the
//! Lévy-Leblond gammas built from it, and exact matrix representations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::anchors;
use crate::relations::{
    base_relations, check_relations, extended_relations, spatial_name, RelationAlgebra, RelationOutcome,
};
use crate::scalar::{GaussianRational, Rational, ScalarSum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("the construction needs an odd spatial dimension, got d = {0}")]
    EvenDimension(usize),
    #[error("no matrix representation is built in for d = {0}")]
    UnsupportedDimension(usize),
    #[error("spatial dimension must be at least 1")]
    ZeroDimension,
}

/// Metric `diag(+1, -1, ..., -1)` on generators `0..=d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub d: usize,
}

impl Signature {
    pub fn new(d: usize) -> Result<Self, CliffordError> {
        if d == 0 {
            return Err(CliffordError::ZeroDimension);
        }
        if d > 62 {
            return Err(CliffordError::UnsupportedDimension(d));
        }
        Ok(Self { d })
    }

    pub fn metric(&self, j: usize) -> i32 {
        if j == 0 {
            1
        } else {
            -1
        }
    }

    pub fn generators(&self) -> usize {
        self.d + 1
    }
}

/// Linear combination of blades; a blade is a bit set of generators in
/// ascending order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliffordElement {
    terms: BTreeMap<u64, ScalarSum>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(s: ScalarSum) -> Self {
        Self::blade(0, s)
    }

    pub fn one() -> Self {
        Self::scalar(ScalarSum::one())
    }

    pub fn blade(mask: u64, coeff: ScalarSum) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mask, coeff);
        }
        Self { terms }
    }

    pub fn generator(j: usize) -> Self {
        Self::blade(1 << j, ScalarSum::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &ScalarSum)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let sum = terms.get(m).map(|e| e + c).unwrap_or_else(|| c.clone());
            if sum.is_zero() {
                terms.remove(m);
            } else {
                terms.insert(*m, sum);
            }
        }
        Self { terms }
    }

    pub fn scale(&self, s: &ScalarSum) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c * s))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        self.scale(&ScalarSum::integer(-1))
    }

    pub fn anticommutator(&self, other: &Self, sig: &Signature) -> Self {
        geometric_product(self, other, sig).add(&geometric_product(other, self, sig))
    }
}

/// Sign of `e_a e_b` relative to the ascending blade `e_{a xor b}`.
fn blade_sign(a: u64, b: u64, sig: &Signature) -> i32 {
    let mut swaps = 0u32;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        // generators of b lower than i must pass over e_i
        swaps += (b & ((1u64 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    let mut sign = if swaps % 2 == 0 { 1 } else { -1 };
    let mut common = a & b;
    while common != 0 {
        let j = common.trailing_zeros() as usize;
        sign *= sig.metric(j);
        common &= common - 1;
    }
    sign
}

pub fn geometric_product(u: &CliffordElement, v: &CliffordElement, sig: &Signature) -> CliffordElement {
    let mut out = CliffordElement::zero();
    for (a, ca) in &u.terms {
        for (b, cb) in &v.terms {
            let s = ScalarSum::integer(blade_sign(*a, *b, sig) as i64);
            out = out.add(&CliffordElement::blade(a ^ b, &(ca * cb) * &s));
        }
    }
    out
}

/// `i^((d+3)d/2)` times the ascending product of all generators.
pub fn chirality(sig: &Signature) -> CliffordElement {
    let d = sig.d as u64;
    let phase_pow = ((d + 3) * d / 2) % 4;
    let phase = ScalarSum::i().pow(phase_pow as u32);
    let all = if sig.generators() == 64 { u64::MAX } else { (1u64 << sig.generators()) - 1 };
    CliffordElement::blade(all, phase)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiralityCheck {
    pub chi: CliffordElement,
    pub squares_to_identity: bool,
    /// Generators `j` with `{gt_j, chi} != 0`.
    pub failing_anticommutators: Vec<usize>,
}

impl ChiralityCheck {
    pub fn passed(&self) -> bool {
        self.squares_to_identity && self.failing_anticommutators.is_empty()
    }
}

pub fn check_chirality(sig: &Signature) -> ChiralityCheck {
    let chi = chirality(sig);
    let squares_to_identity = geometric_product(&chi, &chi, sig) == CliffordElement::one();
    let failing_anticommutators = (0..sig.generators())
        .filter(|&j| !CliffordElement::generator(j).anticommutator(&chi, sig).is_zero())
        .collect();
    ChiralityCheck {
        chi,
        squares_to_identity,
        failing_anticommutators,
    }
}

/// Lévy-Leblond gammas `gp`, `gm`, `g1..gd` inside Cl(1,d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LlGammas {
    pub sig: Signature,
    pub gamma_plus: CliffordElement,
    pub gamma_minus: CliffordElement,
    pub spatial: Vec<CliffordElement>,
}

/// `g± = (chi ± chi gt0)/2`, `gj = chi gtj`.
pub fn construct_ll_gammas(sig: &Signature) -> Result<LlGammas, CliffordError> {
    construct_with_chirality(sig, &chirality(sig))
}

/// Same construction with the opposite overall sign on `chi`.
pub fn construct_ll_gammas_negated(sig: &Signature) -> Result<LlGammas, CliffordError> {
    construct_with_chirality(sig, &chirality(sig).neg())
}

fn construct_with_chirality(sig: &Signature, chi: &CliffordElement) -> Result<LlGammas, CliffordError> {
    if sig.d % 2 == 0 {
        return Err(CliffordError::EvenDimension(sig.d));
    }
    let half = ScalarSum::ratio(1, 2);
    let chi_g0 = geometric_product(chi, &CliffordElement::generator(0), sig);
    Ok(LlGammas {
        sig: *sig,
        gamma_plus: chi.add(&chi_g0).scale(&half),
        gamma_minus: chi.add(&chi_g0.neg()).scale(&half),
        spatial: (1..=sig.d)
            .map(|j| geometric_product(chi, &CliffordElement::generator(j), sig))
            .collect(),
    })
}

impl RelationAlgebra for LlGammas {
    type Elem = CliffordElement;

    fn generator(&self, name: &str) -> Option<CliffordElement> {
        match name {
            "gp" => Some(self.gamma_plus.clone()),
            "gm" => Some(self.gamma_minus.clone()),
            _ => {
                let j: usize = name.strip_prefix('g')?.parse().ok()?;
                (1..=self.sig.d).contains(&j).then(|| self.spatial[j - 1].clone())
            }
        }
    }

    fn identity(&self) -> CliffordElement {
        CliffordElement::one()
    }

    fn zero(&self) -> CliffordElement {
        CliffordElement::zero()
    }

    fn mul(&self, a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
        geometric_product(a, b, &self.sig)
    }

    fn add(&self, a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
        a.add(b)
    }

    fn scale(&self, r: &Rational, a: &CliffordElement) -> CliffordElement {
        a.scale(&ScalarSum::from_rational(r.clone()))
    }

    fn equal(&self, a: &CliffordElement, b: &CliffordElement) -> bool {
        a == b
    }
}

/// Square matrix with exact Gaussian-rational entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    pub dim: usize,
    pub entries: Vec<GaussianRational>,
}

fn gz() -> GaussianRational {
    GaussianRational::new(Rational::zero(), Rational::zero())
}

impl ExactMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![gz(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = GaussianRational::new(Rational::one(), Rational::zero());
        }
        m
    }

    /// From small integer entries `(re, im)`.
    pub fn from_ints(dim: usize, entries: &[(i64, i64)]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self {
            dim,
            entries: entries
                .iter()
                .map(|&(re, im)| GaussianRational::new(Rational::from_integer(re.into()), Rational::from_integer(im.into())))
                .collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a * &o.entries[k * n + j];
                    out.entries[i * n + j] = &out.entries[i * n + j] + prod;
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, r: &GaussianRational) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * r).collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.dim;
        let mut out = Self::zero(2 * n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * 2 * n + j] = a.get(i, j).clone();
                out.entries[i * 2 * n + n + j] = b.get(i, j).clone();
                out.entries[(n + i) * 2 * n + j] = c.get(i, j).clone();
                out.entries[(n + i) * 2 * n + n + j] = d.get(i, j).clone();
            }
        }
        out
    }
}

/// Named matrix images of gamma generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub dim: usize,
    pub images: BTreeMap<String, ExactMatrix>,
}

fn pauli() -> [ExactMatrix; 3] {
    [
        ExactMatrix::from_ints(2, &[(0, 0), (1, 0), (1, 0), (0, 0)]),
        ExactMatrix::from_ints(2, &[(0, 0), (0, -1), (0, 1), (0, 0)]),
        ExactMatrix::from_ints(2, &[(1, 0), (0, 0), (0, 0), (-1, 0)]),
    ]
}

/// `d = 1`: the 2x2 triple `g1`, `gp`, `gm`. `d = 3`: the Dirac matrices
/// `gt0..gt3` together with the block Lévy-Leblond gammas `gp`, `gm`, `g1..g3`.
pub fn build_rep(d: usize) -> Result<MatrixRep, CliffordError> {
    let mut images = BTreeMap::new();
    match d {
        1 => {
            images.insert("g1".into(), ExactMatrix::from_ints(2, &[(1, 0), (0, 0), (0, 0), (-1, 0)]));
            images.insert("gp".into(), ExactMatrix::from_ints(2, &[(0, 0), (1, 0), (0, 0), (0, 0)]));
            images.insert("gm".into(), ExactMatrix::from_ints(2, &[(0, 0), (0, 0), (1, 0), (0, 0)]));
            Ok(MatrixRep { dim: 2, images })
        }
        3 => {
            let i2 = ExactMatrix::identity(2);
            let z2 = ExactMatrix::zero(2);
            let minus = GaussianRational::new(-Rational::one(), Rational::zero());
            images.insert("gt0".into(), ExactMatrix::blocks(&i2, &z2, &z2, &i2.scale(&minus)));
            images.insert("gp".into(), ExactMatrix::blocks(&z2, &i2, &z2, &z2));
            images.insert("gm".into(), ExactMatrix::blocks(&z2, &z2, &i2, &z2));
            for (j, s) in pauli().iter().enumerate() {
                images.insert(format!("gt{}", j + 1), ExactMatrix::blocks(&z2, s, &s.scale(&minus), &z2));
                images.insert(spatial_name(j + 1), ExactMatrix::blocks(s, &z2, &z2, &s.scale(&minus)));
            }
            Ok(MatrixRep { dim: 4, images })
        }
        _ => Err(CliffordError::UnsupportedDimension(d)),
    }
}

impl RelationAlgebra for MatrixRep {
    type Elem = ExactMatrix;

    fn generator(&self, name: &str) -> Option<ExactMatrix> {
        self.images.get(name).cloned()
    }

    fn identity(&self) -> ExactMatrix {
        ExactMatrix::identity(self.dim)
    }

    fn zero(&self) -> ExactMatrix {
        ExactMatrix::zero(self.dim)
    }

    fn mul(&self, a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        a.mul(b)
    }

    fn add(&self, a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        a.add(b)
    }

    fn scale(&self, r: &Rational, a: &ExactMatrix) -> ExactMatrix {
        a.scale(&GaussianRational::new(r.clone(), Rational::zero()))
    }

    fn equal(&self, a: &ExactMatrix, b: &ExactMatrix) -> bool {
        a == b
    }
}

pub fn verify_rep(rep: &MatrixRep, relations: &[crate::relations::Relation]) -> Vec<RelationOutcome> {
    check_relations(rep, relations)
}

/// `{gt_j, gt_k} = 2 eta_jk` for the Dirac generators of a representation.
pub fn dirac_relations(d: usize) -> Vec<crate::relations::Relation> {
    use crate::relations::{Relation, RelExpr as E};
    let mut out = Vec::new();
    for j in 0..=d {
        for k in j..=d {
            let rhs = match (j == k, j) {
                (true, 0) => E::scale(Rational::from_integer(2.into()), E::Id),
                (true, _) => E::scale(Rational::from_integer((-2).into()), E::Id),
                _ => E::Zero,
            };
            out.push(Relation {
                lhs: E::acomm(E::gen(&format!("gt{j}")), E::gen(&format!("gt{k}"))),
                rhs,
                anchor: anchors::PAULI,
            });
        }
    }
    out
}

/// Outcome of the chirality construction for one dimension.
#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub d: usize,
    pub chirality: ChiralityCheck,
    pub base: Vec<RelationOutcome>,
    /// Only for `d = 1`.
    pub extended: Vec<RelationOutcome>,
    /// `d = 1` extended set with `-chi` in place of `chi`.
    pub extended_negated_chirality: Vec<RelationOutcome>,
}

pub fn construction_report(d: usize) -> Result<ConstructionReport, CliffordError> {
    let sig = Signature::new(d)?;
    let chirality = check_chirality(&sig);
    let gammas = construct_ll_gammas(&sig)?;
    let base = check_relations(&gammas, &base_relations(d));
    let (extended, extended_negated_chirality) = if d == 1 {
        let neg = construct_ll_gammas_negated(&sig)?;
        (
            check_relations(&gammas, &extended_relations()),
            check_relations(&neg, &extended_relations()),
        )
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(ConstructionReport {
        d,
        chirality,
        base,
        extended,
        extended_negated_chirality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(d: usize) -> Signature {
        Signature::new(d).unwrap()
    }

    fn g(j: usize) -> CliffordElement {
        CliffordElement::generator(j)
    }

    #[test]
    fn generator_squares_follow_metric() {
        let s = sig(1);
        assert_eq!(geometric_product(&g(0), &g(0), &s), CliffordElement::one());
        assert_eq!(geometric_product(&g(1), &g(1), &s), CliffordElement::one().neg());
        let g01 = geometric_product(&g(0), &g(1), &s);
        assert_eq!(geometric_product(&g01, &g01, &s), CliffordElement::one());
    }

    #[test]
    fn product_is_associative_on_blades() {
        let s = sig(3);
        for a in 0..16u64 {
            for b in 0..16u64 {
                for c in [1u64, 6, 11, 15] {
                    let (ea, eb, ec) = (
                        CliffordElement::blade(a, ScalarSum::one()),
                        CliffordElement::blade(b, ScalarSum::one()),
                        CliffordElement::blade(c, ScalarSum::one()),
                    );
                    let l = geometric_product(&geometric_product(&ea, &eb, &s), &ec, &s);
                    let r = geometric_product(&ea, &geometric_product(&eb, &ec, &s), &s);
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn chirality_phases() {
        assert_eq!(chirality(&sig(1)), CliffordElement::blade(0b11, ScalarSum::integer(-1)));
        assert_eq!(chirality(&sig(3)), CliffordElement::blade(0b1111, ScalarSum::i()));
        for d in [1, 3, 5] {
            assert!(check_chirality(&sig(d)).passed(), "d = {d}");
        }
        let even = check_chirality(&sig(2));
        assert!(!even.failing_anticommutators.is_empty());
    }

    #[test]
    fn odd_constructions_satisfy_base_relations() {
        for d in [1, 3, 5] {
            let r = construction_report(d).unwrap();
            assert!(r.base.iter().all(|o| o.passed()), "d = {d}");
        }
        assert_eq!(construction_report(2).unwrap_err(), CliffordError::EvenDimension(2));
    }

    #[test]
    fn one_dimensional_extended_set_depends_on_chirality_sign() {
        let r = construction_report(1).unwrap();
        let failing: Vec<_> = r.extended.iter().filter(|o| !o.passed()).map(|o| o.name.clone()).collect();
        assert_eq!(failing.len(), 6, "{failing:?}");
        assert!(r.extended_negated_chirality.iter().all(|o| o.passed()));
    }

    #[test]
    fn representations_verify() {
        let r1 = build_rep(1).unwrap();
        assert!(verify_rep(&r1, &base_relations(1)).iter().all(|o| o.passed()));
        assert!(verify_rep(&r1, &extended_relations()).iter().all(|o| o.passed()));
        let r3 = build_rep(3).unwrap();
        assert!(verify_rep(&r3, &base_relations(3)).iter().all(|o| o.passed()));
        assert!(verify_rep(&r3, &dirac_relations(3)).iter().all(|o| o.passed()));
        assert!(build_rep(2).is_err());
    }

    #[test]
    fn broken_rep_is_reported() {
        let mut r = build_rep(1).unwrap();
        r.images.insert("gp".into(), ExactMatrix::identity(2));
        assert!(verify_rep(&r, &base_relations(1)).iter().any(|o| !o.passed()));
    }
}
