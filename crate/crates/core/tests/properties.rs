use graded_ll::clifford::build_rep;
use graded_ll::operator::{parse_operator, raising};
use graded_ll::scalar::{bindings, rational};
use graded_ll::spectrum::{
    discretize_ll, discretize_schrodinger, eig_sym_tridiag, gamma_plus_matrix, gamma_spectrum_probe,
    harmonic_spectrum_check, omega, Grid,
};
use graded_ll::wave::{apply_op, gamma_eigen_residual, harmonic_energy, harmonic_state, Potential, WaveFn, WaveState};
use graded_ll::{Blade, OperatorPoly, ScalarSum};
use proptest::prelude::*;

fn monomial() -> impl Strategy<Value = ScalarSum> {
    (-3i64..=3, -2i64..=2, -2i64..=2, -2i64..=2, 0i64..=1, any::<bool>()).prop_map(|(c, b, k, e, two, imag)| {
        let coeff = if imag {
            ScalarSum::gaussian(rational(0, 1), rational(c, 1))
        } else {
            ScalarSum::integer(c)
        };
        let root_two = if two == 1 { ScalarSum::integer(2).sqrt().unwrap() } else { ScalarSum::one() };
        &(&(&(&coeff * &ScalarSum::symbol_pow("beta", rational(b, 2))) * &ScalarSum::symbol_pow("k", rational(k, 2)))
            * &ScalarSum::symbol_pow("E", rational(e, 1)))
            * &root_two
    })
}

fn scalar_sum() -> impl Strategy<Value = ScalarSum> {
    prop::collection::vec(monomial(), 1..=3).prop_map(|v| v.iter().fold(ScalarSum::zero(), |a, m| &a + m))
}

fn positive_monomial() -> impl Strategy<Value = ScalarSum> {
    (1i64..=9, 1i64..=4, -3i64..=3, -3i64..=3).prop_map(|(n, d, b, k)| {
        &(&ScalarSum::ratio(n, d) * &ScalarSum::symbol_pow("beta", rational(b, 2))) * &ScalarSum::symbol_pow("k", rational(k, 1))
    })
}

fn factor() -> impl Strategy<Value = OperatorPoly> {
    prop_oneof![
        Just(OperatorPoly::x()),
        Just(OperatorPoly::d()),
        Just(OperatorPoly::parity()),
        Just(OperatorPoly::blade(Blade::GammaPlus)),
        Just(OperatorPoly::blade(Blade::GammaMinus)),
        Just(OperatorPoly::blade(Blade::Gamma1)),
        monomial().prop_map(OperatorPoly::scalar),
    ]
}

/// Product of up to four generators.
fn op_monomial() -> impl Strategy<Value = OperatorPoly> {
    prop::collection::vec(factor(), 1..=4).prop_map(|fs| fs.iter().fold(OperatorPoly::identity(), |a, f| &a * f))
}

fn small_op() -> impl Strategy<Value = OperatorPoly> {
    prop::collection::vec(prop::collection::vec(factor(), 1..=3), 1..=2).prop_map(|terms| {
        terms
            .iter()
            .map(|fs| fs.iter().fold(OperatorPoly::identity(), |a, f| &a * f))
            .fold(OperatorPoly::zero(), |a, t| &a + &t)
    })
}

fn wave_fn() -> impl Strategy<Value = WaveFn> {
    prop::collection::vec((-3i64..=3, 0u32..=2, 0usize..2, 0usize..3), 1..=2).prop_map(|terms| {
        terms.into_iter().fold(WaveFn::zero(), |acc, (c, m, q, lin)| {
            let q = [ScalarSum::zero(), ScalarSum::ratio(-1, 2)][q].clone();
            let lin = [ScalarSum::zero(), ScalarSum::i(), ScalarSum::integer(2)][lin].clone();
            acc.add(&WaveFn::term(ScalarSum::integer(c), m, q, lin))
        })
    })
}

fn state() -> impl Strategy<Value = WaveState> {
    (wave_fn(), wave_fn()).prop_map(|(a, b)| WaveState::new(vec![a, b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_axioms(a in scalar_sum(), b in scalar_sum(), c in scalar_sum()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn sqrt_squares_back(m in positive_monomial()) {
        let r = m.sqrt().unwrap();
        prop_assert_eq!(&r * &r, m);
    }

    #[test]
    fn operator_product_is_associative(a in op_monomial(), b in op_monomial(), c in op_monomial()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn display_parses_back(a in small_op()) {
        let text = a.to_string();
        prop_assert_eq!(parse_operator(&text).unwrap(), a, "{}", text);
    }

    #[test]
    fn apply_op_is_multiplicative_and_linear(a in small_op(), b in small_op(), s in state(), t in state()) {
        let rep = build_rep(1).unwrap();
        let ab = apply_op(&(&a * &b), &rep, &s).unwrap();
        let nested = apply_op(&a, &rep, &apply_op(&b, &rep, &s).unwrap()).unwrap();
        prop_assert_eq!(ab, nested);
        let lhs = apply_op(&a, &rep, &s.add(&t)).unwrap();
        let rhs = apply_op(&a, &rep, &s).unwrap().add(&apply_op(&a, &rep, &t).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eval_is_a_ring_homomorphism(a in scalar_sum(), b in scalar_sum(), beta in 0.2f64..5.0, k in 0.2f64..5.0, e in 0.2f64..5.0) {
        let env = bindings([("beta", beta), ("k", k), ("E", e)]);
        let (va, vb) = (a.eval(&env).unwrap(), b.eval(&env).unwrap());
        let prod = (&a * &b).eval(&env).unwrap();
        let sum = (&a + &b).eval(&env).unwrap();
        let scale = 1.0 + va.norm() * vb.norm();
        prop_assert!((prod - va * vb).norm() <= 1e-12 * scale);
        prop_assert!((sum - (va + vb)).norm() <= 1e-12 * (1.0 + va.norm() + vb.norm()));
    }
}

#[test]
fn raising_shifts_the_level_by_omega() {
    let rep = build_rep(1).unwrap();
    for n in 0..=6 {
        let s = harmonic_state(n, &rep).unwrap();
        assert!(gamma_eigen_residual(&Potential::Harmonic, &rep, &s, &harmonic_energy(n)).unwrap().is_zero());
        let up = apply_op(&raising(), &rep, &s).unwrap();
        assert!(gamma_eigen_residual(&Potential::Harmonic, &rep, &up, &harmonic_energy(n + 1)).unwrap().is_zero());
    }
}

#[test]
fn harmonic_states_share_one_gaussian_envelope() {
    let rep = build_rep(1).unwrap();
    let q = parse_operator("-sqrt(beta*k/2)/2").unwrap().as_scalar().unwrap();
    for n in 0..=6 {
        let s = harmonic_state(n, &rep).unwrap();
        for c in &s.components {
            assert!(c.degree().unwrap_or(0) <= n + 1);
            assert!(c.envelopes().iter().all(|(eq, lin)| *eq == q && lin.is_zero()));
        }
    }
}

#[test]
fn refining_the_grid_reduces_the_error() {
    let rep = build_rep(1).unwrap();
    let coarse = harmonic_spectrum_check(2.0, 1.0, &Grid::new(12.0, 400).unwrap(), 5, &rep).unwrap();
    let fine = harmonic_spectrum_check(2.0, 1.0, &Grid::new(12.0, 800).unwrap(), 5, &rep).unwrap();
    assert!(fine.max_relative_error() < coarse.max_relative_error());
}

#[test]
fn probe_dips_at_computed_eigenvalues() {
    let rep = build_rep(1).unwrap();
    let g = Grid::new(10.0, 400).unwrap();
    let (beta, k) = (1.0, 2.0);
    let half_gap = 0.5 * omega(beta, k);
    let eig = eig_sym_tridiag(&discretize_schrodinger(&g, beta, k).unwrap(), 4).unwrap();
    let ll = discretize_ll(&g, beta, k, &rep).unwrap();
    let gp = gamma_plus_matrix(&g, &rep).unwrap();
    for e in eig {
        let at = gamma_spectrum_probe(&ll, &gp, e).unwrap();
        let off = gamma_spectrum_probe(&ll, &gp, e + half_gap).unwrap();
        assert!(at < 0.05 * off, "E = {e}: {at} vs {off}");
    }
}
