//! Normal-ordered operator polynomials in `x`, `d`, the parity `P` and the
//! gamma blades `{I, gp, gm, g1}`.
//!
//! Every monomial is stored as `coeff * x^m d^n P^p G`. Products are brought
//! back to this order with
//!
//! ```text
//! d x = x d + 1,   P x = -x P,   P d = -d P,   P^2 = I,
//! ```
//!
//! blades commuting with `x`, `d` and `P`, and blade products read from a
//! [`BladeTable`].

mod library;
mod parse;
mod tables;

pub use library::*;
pub use parse::{parse_operator, parse_operator_with, ParseError, ParseOptions};
pub use tables::{free_relation_table, harmonic_relation_table, OpExpr, OperatorIdentity};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{fmt_monomial_parts, int, rational, Rational, ScalarSum};

/// Basis element of the four-dimensional gamma algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Blade {
    Id,
    GammaPlus,
    GammaMinus,
    Gamma1,
}

impl Blade {
    pub const ALL: [Blade; 4] = [Blade::Id, Blade::GammaPlus, Blade::GammaMinus, Blade::Gamma1];

    /// Name used by the expression grammar and by matrix representations.
    pub fn name(self) -> &'static str {
        match self {
            Blade::Id => "I",
            Blade::GammaPlus => "gp",
            Blade::GammaMinus => "gm",
            Blade::Gamma1 => "g1",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Product table of the gamma blades.
///
/// The identity row and column are fixed. The nine products among
/// `gp`, `gm`, `g1` are data, which lets tests perturb single entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BladeTable {
    entries: [[Vec<(Rational, Blade)>; 4]; 4],
}

/// Location of one signed coefficient inside a [`BladeTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableSite {
    pub left: Blade,
    pub right: Blade,
    pub term: usize,
}

impl BladeTable {
    /// `gp gp = gm gm = 0`, `gp gm = (I + g1)/2`, `gm gp = (I - g1)/2`,
    /// `g1 gp = gp = -gp g1`, `g1 gm = -gm = -gm g1`, `g1 g1 = I`.
    pub fn standard() -> &'static BladeTable {
        static TABLE: OnceLock<BladeTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            use Blade::*;
            let half = rational(1, 2);
            let mut entries: [[Vec<(Rational, Blade)>; 4]; 4] = Default::default();
            for b in Blade::ALL {
                entries[Id.index()][b.index()] = vec![(int(1), b)];
                entries[b.index()][Id.index()] = vec![(int(1), b)];
            }
            entries[GammaPlus.index()][GammaMinus.index()] = vec![(half.clone(), Id), (half.clone(), Gamma1)];
            entries[GammaMinus.index()][GammaPlus.index()] = vec![(half.clone(), Id), (-half, Gamma1)];
            entries[Gamma1.index()][GammaPlus.index()] = vec![(int(1), GammaPlus)];
            entries[GammaPlus.index()][Gamma1.index()] = vec![(int(-1), GammaPlus)];
            entries[Gamma1.index()][GammaMinus.index()] = vec![(int(-1), GammaMinus)];
            entries[GammaMinus.index()][Gamma1.index()] = vec![(int(1), GammaMinus)];
            entries[Gamma1.index()][Gamma1.index()] = vec![(int(1), Id)];
            BladeTable { entries }
        })
    }

    pub fn product(&self, left: Blade, right: Blade) -> &[(Rational, Blade)] {
        &self.entries[left.index()][right.index()]
    }

    /// Every signed coefficient among the non-identity products.
    pub fn sign_sites(&self) -> Vec<TableSite> {
        let gens = [Blade::GammaPlus, Blade::GammaMinus, Blade::Gamma1];
        let mut sites = Vec::new();
        for left in gens {
            for right in gens {
                for term in 0..self.product(left, right).len() {
                    sites.push(TableSite { left, right, term });
                }
            }
        }
        sites
    }

    pub fn with_flipped_sign(&self, site: TableSite) -> BladeTable {
        let mut out = self.clone();
        let entry = &mut out.entries[site.left.index()][site.right.index()][site.term];
        entry.0 = -entry.0.clone();
        out
    }
}

/// Position of a monomial in normal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpKey {
    pub x_pow: u32,
    pub d_pow: u32,
    pub parity: bool,
    pub blade: Blade,
}

impl OpKey {
    pub const IDENTITY: OpKey = OpKey {
        x_pow: 0,
        d_pow: 0,
        parity: false,
        blade: Blade::Id,
    };
}

/// Normal-ordered operator polynomial; the zero polynomial has no terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OperatorPoly {
    terms: BTreeMap<OpKey, ScalarSum>,
}

fn falling_factorial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

fn binomial(n: u32, k: u32) -> BigInt {
    falling_factorial(n, k) / falling_factorial(k, k)
}

impl OperatorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: ScalarSum, key: OpKey) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        Self { terms }
    }

    pub fn scalar(s: ScalarSum) -> Self {
        Self::monomial(s, OpKey::IDENTITY)
    }

    pub fn identity() -> Self {
        Self::scalar(ScalarSum::one())
    }

    pub fn x() -> Self {
        Self::monomial(ScalarSum::one(), OpKey { x_pow: 1, ..OpKey::IDENTITY })
    }

    pub fn d() -> Self {
        Self::monomial(ScalarSum::one(), OpKey { d_pow: 1, ..OpKey::IDENTITY })
    }

    pub fn parity() -> Self {
        Self::monomial(ScalarSum::one(), OpKey { parity: true, ..OpKey::IDENTITY })
    }

    pub fn blade(b: Blade) -> Self {
        Self::monomial(ScalarSum::one(), OpKey { blade: b, ..OpKey::IDENTITY })
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (OpKey, ScalarSum)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, key: OpKey, coeff: ScalarSum) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &ScalarSum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &OpKey) -> Option<&ScalarSum> {
        self.terms.get(key)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Scalar multiple of the identity, if that is what this is.
    pub fn as_scalar(&self) -> Option<ScalarSum> {
        match self.terms.len() {
            0 => Some(ScalarSum::zero()),
            1 => self.terms.get(&OpKey::IDENTITY).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, s: &ScalarSum) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c * s)))
    }

    /// Product under an explicit blade table.
    pub fn mul_with(&self, rhs: &OperatorPoly, table: &BladeTable) -> OperatorPoly {
        let mut acc: BTreeMap<OpKey, ScalarSum> = BTreeMap::new();
        for (lk, lc) in &self.terms {
            for (rk, rc) in &rhs.terms {
                let blades = table.product(lk.blade, rk.blade);
                if blades.is_empty() {
                    continue;
                }
                let coeff = lc * rc;
                // moving P past x^c d^d
                let negate = lk.parity && (rk.x_pow + rk.d_pow) % 2 == 1;
                for j in 0..=lk.d_pow.min(rk.x_pow) {
                    let reorder = binomial(lk.d_pow, j) * falling_factorial(rk.x_pow, j);
                    let reorder = Rational::from_integer(if negate { -reorder } else { reorder });
                    for (r, blade) in blades {
                        let key = OpKey {
                            x_pow: lk.x_pow + rk.x_pow - j,
                            d_pow: lk.d_pow + rk.d_pow - j,
                            parity: lk.parity ^ rk.parity,
                            blade: *blade,
                        };
                        let term = coeff.scale_rational(&(&reorder * r));
                        let slot = acc.entry(key).or_default();
                        *slot = &*slot + &term;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        OperatorPoly { terms: acc }
    }

    pub fn pow(&self, n: u32) -> OperatorPoly {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `A B - epsilon B A`.
    pub fn bracket_with(&self, rhs: &OperatorPoly, epsilon: i8, table: &BladeTable) -> OperatorPoly {
        let ab = self.mul_with(rhs, table);
        let ba = rhs.mul_with(self, table);
        match epsilon {
            1 => &ab - &ba,
            -1 => &ab + &ba,
            _ => panic!("commutation factor must be +1 or -1, got {epsilon}"),
        }
    }

    pub fn bracket(&self, rhs: &OperatorPoly, epsilon: i8) -> OperatorPoly {
        self.bracket_with(rhs, epsilon, BladeTable::standard())
    }

    pub fn commutator(&self, rhs: &OperatorPoly) -> OperatorPoly {
        self.bracket(rhs, 1)
    }

    pub fn anticommutator(&self, rhs: &OperatorPoly) -> OperatorPoly {
        self.bracket(rhs, -1)
    }

    /// Largest combined power of `x` and `d` over all terms.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.x_pow + k.d_pow).max().unwrap_or(0)
    }
}

/// Bracket `A B - epsilon B A` under the standard blade table.
pub fn op_bracket(a: &OperatorPoly, b: &OperatorPoly, epsilon: i8) -> OperatorPoly {
    a.bracket(b, epsilon)
}

impl From<ScalarSum> for OperatorPoly {
    fn from(s: ScalarSum) -> Self {
        Self::scalar(s)
    }
}

impl<'a> Add<&'a OperatorPoly> for &'a OperatorPoly {
    type Output = OperatorPoly;
    fn add(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a OperatorPoly> for &'a OperatorPoly {
    type Output = OperatorPoly;
    fn sub(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Neg for &OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        OperatorPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        -&self
    }
}

impl<'a> Mul<&'a OperatorPoly> for &'a OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: &OperatorPoly) -> OperatorPoly {
        self.mul_with(rhs, BladeTable::standard())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<OperatorPoly> for OperatorPoly {
            type Output = OperatorPoly;
            fn $m(self, rhs: OperatorPoly) -> OperatorPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a OperatorPoly> for OperatorPoly {
            type Output = OperatorPoly;
            fn $m(self, rhs: &OperatorPoly) -> OperatorPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<OperatorPoly> for &'a OperatorPoly {
            type Output = OperatorPoly;
            fn $m(self, rhs: OperatorPoly) -> OperatorPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Mul<&ScalarSum> for &OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: &ScalarSum) -> OperatorPoly {
        self.scale(rhs)
    }
}

impl Mul<ScalarSum> for OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: ScalarSum) -> OperatorPoly {
        self.scale(&rhs)
    }
}

fn fmt_key_factors(key: &OpKey) -> Vec<String> {
    let mut parts = Vec::new();
    match key.x_pow {
        0 => {}
        1 => parts.push("x".to_string()),
        n => parts.push(format!("x^{n}")),
    }
    match key.d_pow {
        0 => {}
        1 => parts.push("d".to_string()),
        n => parts.push(format!("d^{n}")),
    }
    if key.parity {
        parts.push("P".to_string());
    }
    if key.blade != Blade::Id {
        parts.push(key.blade.name().to_string());
    }
    parts
}

/// Written in the expression grammar, so `parse_operator(&p.to_string()) == p`.
impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (key, coeff)) in self.terms.iter().enumerate() {
            let factors = fmt_key_factors(key);
            let (negative, mut parts) = match coeff.as_monomial() {
                Some(m) => {
                    let (neg, body) = fmt_monomial_parts(m);
                    let trivial = body == "1";
                    (neg, if trivial && !factors.is_empty() { vec![] } else { vec![body] })
                }
                None => (false, vec![format!("({coeff})")]),
            };
            parts.extend(factors);
            let body = parts.join("*");
            match (idx, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl Zero for OperatorPoly {
    fn zero() -> Self {
        OperatorPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> OperatorPoly {
        parse_operator(s).unwrap()
    }

    #[test]
    fn derivative_past_x() {
        assert_eq!(OperatorPoly::d() * OperatorPoly::x(), p("x*d + 1"));
        // d^2 x^2 = x^2 d^2 + 4 x d + 2
        assert_eq!(p("d^2") * p("x^2"), p("x^2*d^2 + 4*x*d + 2"));
    }

    #[test]
    fn blade_products_follow_table() {
        let gp = OperatorPoly::blade(Blade::GammaPlus);
        let gm = OperatorPoly::blade(Blade::GammaMinus);
        let g1 = OperatorPoly::blade(Blade::Gamma1);
        assert_eq!(&gp * &gm, p("(1/2)*I + (1/2)*g1"));
        assert_eq!(&g1 * &gp, -(&gp * &g1));
        assert!((&gp * &gp).is_zero());
        assert_eq!(&g1 * &g1, OperatorPoly::identity());
    }

    #[test]
    fn parity_anticommutes_with_x_and_d() {
        let xgp = &OperatorPoly::x() * &OperatorPoly::blade(Blade::GammaPlus);
        assert_eq!(OperatorPoly::parity() * xgp, p("-x*P*gp"));
        assert_eq!(OperatorPoly::parity() * OperatorPoly::d(), p("-d*P"));
        assert_eq!(OperatorPoly::parity() * OperatorPoly::parity(), OperatorPoly::identity());
    }

    #[test]
    fn commutator_of_anything_with_itself_vanishes() {
        let a = p("x*d*gp + beta*P*g1 - i*d^2");
        assert!(a.commutator(&a).is_zero());
        assert_eq!(a.anticommutator(&a), (&a * &a).scale(&ScalarSum::integer(2)));
    }

    #[test]
    fn equality_is_structural() {
        assert_ne!(p("x*d"), p("d*x"));
        assert_eq!(p("g1*gp"), p("-gp*g1"));
    }

    #[test]
    fn sign_sites_cover_nine_coefficients() {
        let table = BladeTable::standard();
        assert_eq!(table.sign_sites().len(), 9);
        let site = table.sign_sites()[0];
        let flipped = table.with_flipped_sign(site);
        assert_ne!(&flipped, table);
        assert_eq!(&flipped.with_flipped_sign(site), table);
    }
}
