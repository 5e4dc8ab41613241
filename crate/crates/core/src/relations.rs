//! Named gamma relation sets, checkable in any algebra that can name its
//! generators.

use std::fmt;

use num_traits::One;

use crate::anchors;
use crate::operator::{Blade, BladeTable, OperatorPoly};
use crate::scalar::{rational, Rational, ScalarSum};

/// Word in the generators of a gamma algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelExpr {
    Gen(String),
    Id,
    Zero,
    Mul(Box<RelExpr>, Box<RelExpr>),
    Add(Box<RelExpr>, Box<RelExpr>),
    Scale(Rational, Box<RelExpr>),
    Acomm(Box<RelExpr>, Box<RelExpr>),
}

impl RelExpr {
    pub fn gen(name: &str) -> Self {
        RelExpr::Gen(name.to_string())
    }

    pub fn mul(a: RelExpr, b: RelExpr) -> Self {
        RelExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn add(a: RelExpr, b: RelExpr) -> Self {
        RelExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn scale(r: Rational, a: RelExpr) -> Self {
        RelExpr::Scale(r, Box::new(a))
    }

    pub fn acomm(a: RelExpr, b: RelExpr) -> Self {
        RelExpr::Acomm(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for RelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelExpr::Gen(n) => f.write_str(n),
            RelExpr::Id => f.write_str("I"),
            RelExpr::Zero => f.write_str("0"),
            RelExpr::Mul(a, b) => write!(f, "{a} {b}"),
            RelExpr::Add(a, b) => write!(f, "({a} + {b})"),
            RelExpr::Scale(r, a) => write!(f, "{r}*{a}"),
            RelExpr::Acomm(a, b) => write!(f, "{{{a}, {b}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: RelExpr,
    pub rhs: RelExpr,
    pub anchor: &'static str,
}

impl Relation {
    pub fn name(&self) -> String {
        format!("{} = {}", self.lhs, self.rhs)
    }
}

/// An algebra in which relation words can be evaluated.
pub trait RelationAlgebra {
    type Elem: Clone;
    fn generator(&self, name: &str) -> Option<Self::Elem>;
    fn identity(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, r: &Rational, a: &Self::Elem) -> Self::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("generator `{0}` is not bound")]
pub struct UnboundGenerator(pub String);

pub fn evaluate<A: RelationAlgebra>(alg: &A, e: &RelExpr) -> Result<A::Elem, UnboundGenerator> {
    Ok(match e {
        RelExpr::Gen(n) => alg.generator(n).ok_or_else(|| UnboundGenerator(n.clone()))?,
        RelExpr::Id => alg.identity(),
        RelExpr::Zero => alg.zero(),
        RelExpr::Mul(a, b) => alg.mul(&evaluate(alg, a)?, &evaluate(alg, b)?),
        RelExpr::Add(a, b) => alg.add(&evaluate(alg, a)?, &evaluate(alg, b)?),
        RelExpr::Scale(r, a) => alg.scale(r, &evaluate(alg, a)?),
        RelExpr::Acomm(a, b) => {
            let (a, b) = (evaluate(alg, a)?, evaluate(alg, b)?);
            alg.add(&alg.mul(&a, &b), &alg.mul(&b, &a))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub name: String,
    pub anchor: &'static str,
    pub result: Result<bool, UnboundGenerator>,
}

impl RelationOutcome {
    pub fn passed(&self) -> bool {
        matches!(self.result, Ok(true))
    }
}

pub fn check_relations<A: RelationAlgebra>(alg: &A, relations: &[Relation]) -> Vec<RelationOutcome> {
    relations
        .iter()
        .map(|r| RelationOutcome {
            name: r.name(),
            anchor: r.anchor,
            result: evaluate(alg, &r.lhs).and_then(|l| Ok(alg.equal(&l, &evaluate(alg, &r.rhs)?))),
        })
        .collect()
}

pub fn spatial_name(j: usize) -> String {
    format!("g{j}")
}

/// `{g±, g±} = 0`, `{gp, gm} = I`, `{g±, gj} = 0`, `{gj, gk} = 2 delta_jk`
/// for `j, k = 1..=d`.
pub fn base_relations(d: usize) -> Vec<Relation> {
    use RelExpr as E;
    let a = anchors::GAMMA_BASE;
    let rel = |lhs, rhs| Relation { lhs, rhs, anchor: a };
    let mut out = vec![
        rel(E::acomm(E::gen("gp"), E::gen("gp")), E::Zero),
        rel(E::acomm(E::gen("gm"), E::gen("gm")), E::Zero),
        rel(E::acomm(E::gen("gp"), E::gen("gm")), E::Id),
    ];
    for j in 1..=d {
        let gj = spatial_name(j);
        out.push(rel(E::acomm(E::gen("gp"), E::gen(&gj)), E::Zero));
        out.push(rel(E::acomm(E::gen("gm"), E::gen(&gj)), E::Zero));
    }
    for j in 1..=d {
        for k in j..=d {
            let rhs = if j == k { E::scale(Rational::from_integer(2.into()), E::Id) } else { E::Zero };
            out.push(rel(E::acomm(E::gen(&spatial_name(j)), E::gen(&spatial_name(k))), rhs));
        }
    }
    out
}

/// The additional products required in one spatial dimension.
pub fn extended_relations() -> Vec<Relation> {
    use RelExpr as E;
    let a = anchors::GAMMA_EXTENDED;
    let rel = |lhs, rhs| Relation { lhs, rhs, anchor: a };
    let g = E::gen;
    let half = || rational(1, 2);
    let neg = |e| E::scale(-Rational::one(), e);
    vec![
        rel(E::mul(g("gp"), g("gp")), E::Zero),
        rel(E::mul(g("gm"), g("gm")), E::Zero),
        rel(E::mul(g("g1"), g("g1")), E::Id),
        rel(E::mul(g("gp"), g("gm")), E::scale(half(), E::add(E::Id, g("g1")))),
        rel(E::mul(g("gm"), g("gp")), E::scale(half(), E::add(E::Id, neg(g("g1"))))),
        rel(E::mul(g("g1"), g("gp")), g("gp")),
        rel(E::mul(g("gp"), g("g1")), neg(g("gp"))),
        rel(E::mul(g("g1"), g("gm")), neg(g("gm"))),
        rel(E::mul(g("gm"), g("g1")), g("gm")),
    ]
}

/// The abstract four-blade algebra under a given product table.
pub struct BladeAlgebra<'a> {
    pub table: &'a BladeTable,
}

impl<'a> BladeAlgebra<'a> {
    pub fn new(table: &'a BladeTable) -> Self {
        Self { table }
    }
}

impl RelationAlgebra for BladeAlgebra<'_> {
    type Elem = OperatorPoly;

    fn generator(&self, name: &str) -> Option<OperatorPoly> {
        let b = match name {
            "gp" => Blade::GammaPlus,
            "gm" => Blade::GammaMinus,
            "g1" => Blade::Gamma1,
            _ => return None,
        };
        Some(OperatorPoly::blade(b))
    }

    fn identity(&self) -> OperatorPoly {
        OperatorPoly::identity()
    }

    fn zero(&self) -> OperatorPoly {
        OperatorPoly::zero()
    }

    fn mul(&self, a: &OperatorPoly, b: &OperatorPoly) -> OperatorPoly {
        a.mul_with(b, self.table)
    }

    fn add(&self, a: &OperatorPoly, b: &OperatorPoly) -> OperatorPoly {
        a + b
    }

    fn scale(&self, r: &Rational, a: &OperatorPoly) -> OperatorPoly {
        a.scale(&ScalarSum::from_rational(r.clone()))
    }

    fn equal(&self, a: &OperatorPoly, b: &OperatorPoly) -> bool {
        a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_blades_satisfy_both_sets() {
        let alg = BladeAlgebra::new(BladeTable::standard());
        for o in check_relations(&alg, &base_relations(1)).iter().chain(&check_relations(&alg, &extended_relations())) {
            assert!(o.passed(), "{}", o.name);
        }
        assert_eq!(base_relations(1).len(), 6);
        assert_eq!(base_relations(3).len(), 3 + 6 + 6);
    }

    #[test]
    fn every_single_sign_flip_breaks_an_extended_relation() {
        let std = BladeTable::standard();
        for site in std.sign_sites() {
            let t = std.with_flipped_sign(site);
            let alg = BladeAlgebra::new(&t);
            assert!(check_relations(&alg, &extended_relations()).iter().any(|o| !o.passed()), "{site:?}");
        }
    }

    #[test]
    fn unbound_generator_is_reported() {
        let alg = BladeAlgebra::new(BladeTable::standard());
        let out = check_relations(&alg, &base_relations(2));
        assert!(out.iter().any(|o| o.result == Err(UnboundGenerator("g2".into()))));
    }
}
