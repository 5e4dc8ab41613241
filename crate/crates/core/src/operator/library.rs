//! The named operators of the free and harmonic Lévy-Leblond problems.
//!
//! `k` is the spring constant. The plane-wave number lives in the separate
//! symbol `kw`.

use super::{parse_operator, OperatorPoly};
use crate::scalar::ScalarSum;

pub const BETA: &str = "beta";
pub const K: &str = "k";
pub const ENERGY: &str = "E";
pub const K_WAVE: &str = "kw";

fn op(text: &str) -> OperatorPoly {
    parse_operator(text).unwrap_or_else(|e| panic!("built-in operator `{text}`: {e}"))
}

pub fn beta() -> ScalarSum {
    ScalarSum::symbol(BETA)
}

/// `sqrt(2k/beta)`.
pub fn omega() -> ScalarSum {
    op("sqrt(2*k/beta)").as_scalar().expect("scalar")
}

/// `-i d`.
pub fn momentum() -> OperatorPoly {
    op("-i*d")
}

/// `-(1/beta) d^2`.
pub fn hsch_free() -> OperatorPoly {
    op("-(1/beta)*d^2")
}

/// `-gp (1/beta) d^2 + gm beta`.
pub fn d_plus() -> OperatorPoly {
    op("-gp*(1/beta)*d^2 + gm*beta")
}

/// `g1 P`.
pub fn parity_one() -> OperatorPoly {
    op("g1*P")
}

pub fn hll_free() -> OperatorPoly {
    op("gm*beta - i*g1*d")
}

pub fn hll_harmonic() -> OperatorPoly {
    op("gm*beta - i*g1*d + gp*(k/2)*x^2")
}

pub fn hsch_harmonic() -> OperatorPoly {
    op("-(1/beta)*d^2 + (k/2)*x^2 - i*gp*(k/beta)*x")
}

/// Lowering operator `b`.
pub fn lowering() -> OperatorPoly {
    op("sqrt(beta*k/2)*x + d - i*gp*sqrt(k/(2*beta))")
}

/// Raising operator `b†`.
pub fn raising() -> OperatorPoly {
    op("sqrt(beta*k/2)*x - d - i*gp*sqrt(k/(2*beta))")
}

/// `c = beta I - 2 gp Hll`, the sign for which `beta I + c = 2 Hll gp`.
pub fn c_operator() -> OperatorPoly {
    let gp = op("gp");
    &op("beta*I") - &(&gp * &hll_harmonic()).scale(&ScalarSum::integer(2))
}

/// `gp 2i d + g1 beta`, which equals `-c`.
pub fn c_operator_negated() -> OperatorPoly {
    op("gp*2*i*d + g1*beta")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_a_monomial() {
        assert!(omega().as_monomial().is_some());
        assert_eq!(omega().pow(2), op("2*k/beta").as_scalar().unwrap());
    }

    #[test]
    fn c_closed_form() {
        assert_eq!(c_operator(), op("-beta*g1 - 2*i*gp*d"));
        assert_eq!(c_operator_negated(), -c_operator());
    }

    #[test]
    fn harmonic_schrodinger_is_the_square() {
        let hll = hll_harmonic();
        assert_eq!((&hll * &hll).scale(&op("1/beta").as_scalar().unwrap()), hsch_harmonic());
        let free = hll_free();
        assert_eq!((&free * &free).scale(&op("1/beta").as_scalar().unwrap()), hsch_free());
    }
}
