//! Free and harmonic relation tables as checkable operator identities.
//!
//! Both sides are kept as unevaluated expression trees so the identities can
//! be re-evaluated under a perturbed [`BladeTable`].

use super::library::*;
use super::{parse_operator, BladeTable, OperatorPoly};
use crate::anchors;
use crate::scalar::ScalarSum;

#[derive(Clone, Debug)]
pub enum OpExpr {
    Leaf(OperatorPoly),
    Scale(ScalarSum, Box<OpExpr>),
    Sum(Vec<OpExpr>),
    Product(Vec<OpExpr>),
    Bracket(Box<OpExpr>, Box<OpExpr>, i8),
}

impl OpExpr {
    pub fn eval(&self, table: &BladeTable) -> OperatorPoly {
        match self {
            OpExpr::Leaf(p) => p.clone(),
            OpExpr::Scale(s, e) => e.eval(table).scale(s),
            OpExpr::Sum(items) => items.iter().fold(OperatorPoly::zero(), |acc, e| &acc + &e.eval(table)),
            OpExpr::Product(items) => items
                .iter()
                .fold(OperatorPoly::identity(), |acc, e| acc.mul_with(&e.eval(table), table)),
            OpExpr::Bracket(a, b, eps) => a.eval(table).bracket_with(&b.eval(table), *eps, table),
        }
    }
}

impl From<OperatorPoly> for OpExpr {
    fn from(p: OperatorPoly) -> Self {
        OpExpr::Leaf(p)
    }
}

fn leaf(p: OperatorPoly) -> OpExpr {
    OpExpr::Leaf(p)
}

fn prod(items: Vec<OpExpr>) -> OpExpr {
    OpExpr::Product(items)
}

fn comm(a: OpExpr, b: OpExpr) -> OpExpr {
    OpExpr::Bracket(Box::new(a), Box::new(b), 1)
}

fn acomm(a: OpExpr, b: OpExpr) -> OpExpr {
    OpExpr::Bracket(Box::new(a), Box::new(b), -1)
}

fn scaled(s: &str, e: OpExpr) -> OpExpr {
    let s = parse_operator(s).ok().and_then(|p| p.as_scalar()).expect("scalar literal");
    OpExpr::Scale(s, Box::new(e))
}

fn zero() -> OpExpr {
    leaf(OperatorPoly::zero())
}

/// A named identity `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct OperatorIdentity {
    pub name: String,
    pub anchor: &'static str,
    pub lhs: OpExpr,
    pub rhs: OpExpr,
}

impl OperatorIdentity {
    fn new(name: &str, anchor: &'static str, lhs: OpExpr, rhs: OpExpr) -> Self {
        Self {
            name: name.to_string(),
            anchor,
            lhs,
            rhs,
        }
    }

    /// `lhs - rhs` under `table`.
    pub fn residual_with(&self, table: &BladeTable) -> OperatorPoly {
        &self.lhs.eval(table) - &self.rhs.eval(table)
    }

    pub fn residual(&self) -> OperatorPoly {
        self.residual_with(BladeTable::standard())
    }

    pub fn holds_with(&self, table: &BladeTable) -> bool {
        self.residual_with(table).is_zero()
    }

    pub fn holds(&self) -> bool {
        self.residual().is_zero()
    }
}

/// The free-particle table: twelve (anti)commutators among `P^`, `D+`, `P1`,
/// plus `Hsch` commuting with each of them.
pub fn free_relation_table() -> Vec<OperatorIdentity> {
    let p = || leaf(momentum());
    let dp = || leaf(d_plus());
    let p1 = || leaf(parity_one());
    let h = || leaf(hsch_free());
    let two_beta_h = || scaled("2*beta", h());
    let a = anchors::RELATION_TABLE;
    vec![
        OperatorIdentity::new("[P^, P^] = 0", a, comm(p(), p()), zero()),
        OperatorIdentity::new("{P^, P^} = 2 beta Hsch", a, acomm(p(), p()), two_beta_h()),
        OperatorIdentity::new("[D+, D+] = 0", a, comm(dp(), dp()), zero()),
        OperatorIdentity::new("{D+, D+} = 2 beta Hsch", a, acomm(dp(), dp()), two_beta_h()),
        OperatorIdentity::new("[P1, P1] = 0", a, comm(p1(), p1()), zero()),
        OperatorIdentity::new("{P1, P1} = 2 I", a, acomm(p1(), p1()), scaled("2", leaf(OperatorPoly::identity()))),
        OperatorIdentity::new("[P^, D+] = 0", a, comm(p(), dp()), zero()),
        OperatorIdentity::new("{P^, D+} = 2 D+ P^", a, acomm(p(), dp()), scaled("2", prod(vec![dp(), p()]))),
        OperatorIdentity::new("[P^, P1] = -2 P1 P^", a, comm(p(), p1()), scaled("-2", prod(vec![p1(), p()]))),
        OperatorIdentity::new("{P^, P1} = 0", a, acomm(p(), p1()), zero()),
        OperatorIdentity::new("[D+, P1] = -2 P1 D+", a, comm(dp(), p1()), scaled("-2", prod(vec![p1(), dp()]))),
        OperatorIdentity::new("{D+, P1} = 0", a, acomm(dp(), p1()), zero()),
        OperatorIdentity::new("[Hsch, P^] = 0", a, comm(h(), p()), zero()),
        OperatorIdentity::new("[Hsch, D+] = 0", a, comm(h(), dp()), zero()),
        OperatorIdentity::new("[Hsch, P1] = 0", a, comm(h(), p1()), zero()),
    ]
}

/// The harmonic-potential relations among `Hll`, `Hsch`, `b`, `b†`, `c` and `gp`.
pub fn harmonic_relation_table() -> Vec<OperatorIdentity> {
    let hll = || leaf(hll_harmonic());
    let hsch = || leaf(hsch_harmonic());
    let b = || leaf(lowering());
    let bd = || leaf(raising());
    let c = || leaf(c_operator());
    let gp = || leaf(parse_operator("gp").expect("blade"));
    let id = || leaf(OperatorPoly::identity());
    let gpb = || prod(vec![gp(), b()]);
    let gpbd = || prod(vec![gp(), bd()]);
    let w = || omega();
    let omega_times = |e: OpExpr| OpExpr::Scale(w(), Box::new(e));
    let neg_omega_times = |e: OpExpr| OpExpr::Scale(-w(), Box::new(e));
    let beta_i_plus_c = || OpExpr::Sum(vec![scaled("beta", id()), c()]);

    let ops = anchors::HARMONIC_OPERATORS;
    let rel = anchors::HARMONIC_RELATIONS;
    let der = anchors::DERIVATION;
    vec![
        OperatorIdentity::new(
            "Hsch = Hll^2 / beta",
            anchors::SCHRODINGER_LIKE,
            hsch(),
            scaled("1/beta", prod(vec![hll(), hll()])),
        ),
        OperatorIdentity::new("[Hll, Hll] = 0", ops, comm(hll(), hll()), zero()),
        OperatorIdentity::new("[Hll, b] = -omega gp b", ops, comm(hll(), b()), neg_omega_times(gpb())),
        OperatorIdentity::new("[Hll, b†] = omega gp b†", ops, comm(hll(), bd()), omega_times(gpbd())),
        OperatorIdentity::new("{Hll, c} = 0", ops, acomm(hll(), c()), zero()),
        OperatorIdentity::new("{Hll, gp b} = beta b", der, acomm(hll(), gpb()), scaled("beta", b())),
        OperatorIdentity::new("{Hll, gp b†} = beta b†", der, acomm(hll(), gpbd()), scaled("beta", bd())),
        OperatorIdentity::new("[Hsch, b] = -omega b", ops, comm(hsch(), b()), neg_omega_times(b())),
        OperatorIdentity::new("[Hsch, b†] = omega b†", ops, comm(hsch(), bd()), omega_times(bd())),
        OperatorIdentity::new("[Hsch, gp b] = -omega gp b", ops, comm(hsch(), gpb()), neg_omega_times(gpb())),
        OperatorIdentity::new("[Hsch, gp b†] = omega gp b†", ops, comm(hsch(), gpbd()), omega_times(gpbd())),
        OperatorIdentity::new("{Hll, Hll} = 2 beta Hsch", rel, acomm(hll(), hll()), scaled("2*beta", hsch())),
        OperatorIdentity::new("{b, b†} = 2 beta Hsch", rel, acomm(b(), bd()), scaled("2*beta", hsch())),
        OperatorIdentity::new("{gp, Hll} = beta I", rel, acomm(gp(), hll()), scaled("beta", id())),
        OperatorIdentity::new("[gp, b] = 0", rel, comm(gp(), b()), zero()),
        OperatorIdentity::new("[gp, b†] = 0", rel, comm(gp(), bd()), zero()),
        OperatorIdentity::new("{gp, c} = 0", rel, acomm(gp(), c()), zero()),
        OperatorIdentity::new("[b, c] = 0", rel, comm(b(), c()), zero()),
        OperatorIdentity::new("[b†, c] = 0", rel, comm(bd(), c()), zero()),
        OperatorIdentity::new("{c, gp b} = 0", rel, acomm(c(), gpb()), zero()),
        OperatorIdentity::new("{c, gp b†} = 0", rel, acomm(c(), gpbd()), zero()),
        OperatorIdentity::new("{c, c} = 2 beta^2 I", rel, acomm(c(), c()), scaled("2*beta^2", id())),
        OperatorIdentity::new("{b, gp b} = 2 gp b^2", rel, acomm(b(), gpb()), scaled("2", prod(vec![gp(), b(), b()]))),
        OperatorIdentity::new(
            "{b†, gp b†} = 2 gp (b†)^2",
            rel,
            acomm(bd(), gpbd()),
            scaled("2", prod(vec![gp(), bd(), bd()])),
        ),
        OperatorIdentity::new(
            "{b, gp b†} = 2 gp beta Hsch",
            rel,
            acomm(b(), gpbd()),
            scaled("2*beta", prod(vec![gp(), hsch()])),
        ),
        OperatorIdentity::new(
            "{b†, gp b} = 2 gp beta Hsch",
            rel,
            acomm(bd(), gpb()),
            scaled("2*beta", prod(vec![gp(), hsch()])),
        ),
        OperatorIdentity::new("[gp b, gp b†] = 0", rel, comm(gpb(), gpbd()), zero()),
        OperatorIdentity::new(
            "[b, b†] = sqrt(2 beta k) I",
            anchors::BRACKET_B_BDAG,
            comm(b(), bd()),
            scaled("sqrt(2*beta*k)", id()),
        ),
        OperatorIdentity::new(
            "(beta I + c)^2 = 2 beta (beta I + c)",
            anchors::IDEMPOTENT,
            prod(vec![beta_i_plus_c(), beta_i_plus_c()]),
            scaled("2*beta", beta_i_plus_c()),
        ),
        OperatorIdentity::new(
            "beta I + c = 2 Hll gp",
            anchors::SIMPLIFY,
            beta_i_plus_c(),
            scaled("2", prod(vec![hll(), gp()])),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all_hold(table: &[OperatorIdentity]) {
        for id in table {
            assert!(id.holds(), "{} fails, residual {}", id.name, id.residual());
        }
    }

    #[test]
    fn free_table_holds() {
        let t = free_relation_table();
        assert_eq!(t.len(), 15);
        assert_all_hold(&t);
    }

    #[test]
    fn harmonic_table_holds() {
        let t = harmonic_relation_table();
        assert_eq!(t.len(), 30);
        assert_all_hold(&t);
    }

    #[test]
    fn hsch_ladder_with_gp_on_the_left_only_scales_gp_b_dagger() {
        // [Hsch, gp b†] is omega gp b†, not omega b†.
        let lhs = hsch_harmonic().commutator(&(parse_operator("gp").unwrap() * raising()));
        assert_ne!(lhs, raising().scale(&omega()));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(momentum().anticommutator(&momentum()), parse_operator("-2*d^2").unwrap());
        assert!(momentum().commutator(&d_plus()).is_zero());
    }
}
