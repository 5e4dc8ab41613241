//! Check suites behind each CLI command.

use std::fmt::Write as _;

use crate::anchors;
use crate::clifford::{build_rep, check_chirality, construction_report, dirac_relations, verify_rep, MatrixRep, Signature};
use crate::graded::{jacobi_check, AlgebraSpec, CommutationFactorKind};
use crate::operator::{free_relation_table, harmonic_relation_table, momentum, parity_one, OperatorIdentity, BETA, K};
use crate::relations::{base_relations, check_relations, extended_relations, BladeAlgebra, RelationOutcome};
use crate::report::{Check, ReportDocument, Status};
use crate::scalar::{bindings, ScalarSum};
use crate::spectrum::{block_structure_check, harmonic_spectrum_check, Grid};
use crate::wave::{
    apply_exp_op, apply_op, decompose_simultaneous, eigen_condition_operators, gamma_eigen_residual,
    harmonic_energy, harmonic_state, lowering_residual, overlap_numeric, plane_wave, verify_coeff_ode, Potential,
    WaveState,
};
use crate::BladeTable;

fn outcome_check(prefix: &str, o: &RelationOutcome) -> Check {
    let name = format!("{prefix}{}", o.name);
    match &o.result {
        Ok(ok) => Check::bool(name, o.anchor, *ok, if *ok { "holds exactly" } else { "does not hold" }),
        Err(e) => Check::error(name, o.anchor, e),
    }
}

fn rep_one() -> MatrixRep {
    build_rep(1).expect("d = 1 representation")
}

/// Abstract blades and the 2x2 matrices against the base and extended sets.
pub fn gamma_relation_checks() -> Vec<Check> {
    let alg = BladeAlgebra::new(BladeTable::standard());
    let rep = rep_one();
    let mut out = Vec::new();
    for set in [base_relations(1), extended_relations()] {
        out.extend(check_relations(&alg, &set).iter().map(|o| outcome_check("blades: ", o)));
        out.extend(verify_rep(&rep, &set).iter().map(|o| outcome_check("2x2 matrices: ", o)));
    }
    out
}

pub fn verify_clifford(d: usize) -> ReportDocument {
    let mut r = ReportDocument::new("verify clifford").param("d", d);
    let sig = match Signature::new(d) {
        Ok(s) => s,
        Err(e) => {
            r.push(Check::error("signature", anchors::SIGNATURE, e));
            return r;
        }
    };
    let chi = check_chirality(&sig);
    let phase = ((d + 3) * d / 2) % 4;
    r.push(Check::bool(
        "chi^2 = I",
        anchors::CHIRALITY,
        chi.squares_to_identity,
        format!("chi = i^{phase} times the ordered product of {} generators", sig.generators()),
    ));
    let failing = &chi.failing_anticommutators;
    r.push(Check::bool(
        "{gt_j, chi} = 0 for every generator",
        anchors::ODD_DIMENSION,
        failing.is_empty(),
        if failing.is_empty() {
            "all anticommute".to_string()
        } else {
            format!("nonzero for j in {failing:?}")
        },
    ));
    if d % 2 == 0 {
        r.push(Check::new(
            "construct gp, gm, gj",
            anchors::ODD_DIMENSION,
            Status::Fail,
            "the construction needs odd d",
        ));
        return r;
    }
    match construction_report(d) {
        Ok(c) => {
            for o in &c.base {
                let mut ch = outcome_check("constructed: ", o);
                ch.paper_anchor = anchors::CONSTRUCTED_GAMMAS.to_string();
                r.push(ch);
            }
            for o in &c.extended {
                r.push(outcome_check("constructed: ", o));
            }
            if d == 1 {
                let ok = c.extended_negated_chirality.iter().all(RelationOutcome::passed);
                r.push(Check::bool(
                    "constructed with -chi: extended set",
                    anchors::GAMMA_EXTENDED,
                    ok,
                    "same construction with the opposite sign of chi",
                ));
            }
        }
        Err(e) => r.push(Check::error("construct gp, gm, gj", anchors::CONSTRUCTED_GAMMAS, e)),
    }
    match d {
        1 => {
            for mut c in gamma_relation_checks() {
                if c.name.starts_with("2x2") {
                    c.paper_anchor = anchors::GAMMA_MATRICES.to_string();
                }
                r.push(c);
            }
        }
        3 => {
            let rep = build_rep(3).expect("d = 3 representation");
            for o in verify_rep(&rep, &dirac_relations(3)) {
                let mut c = outcome_check("Dirac matrices: ", &o);
                c.paper_anchor = anchors::PAULI.to_string();
                r.push(c);
            }
            for o in verify_rep(&rep, &base_relations(3)) {
                r.push(outcome_check("4x4 gammas: ", &o));
            }
        }
        _ => {}
    }
    r
}

fn coefficient_list(cs: &[(String, ScalarSum)]) -> String {
    let mut s = String::new();
    for (i, (label, c)) in cs.iter().enumerate() {
        if i > 0 {
            s.push_str(" + ");
        }
        let _ = write!(s, "({c}) {label}");
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn verify_algebra(spec: &AlgebraSpec) -> ReportDocument {
    let mut r = ReportDocument::new("verify algebra")
        .param("name", spec.name.as_str())
        .param("dimension", spec.basis.len());
    let anchor = match spec.factor {
        CommutationFactorKind::Super => anchors::CLOSES,
        CommutationFactorKind::Colour2 => anchors::COLOUR_DEFINITIONS,
    };
    if let Err(e) = spec.validate() {
        r.push(Check::error("algebra spec", anchor, e));
        return r;
    }
    let report = jacobi_check(spec);
    for e in &report.entries {
        let name = format!("[{}, {}] lies in sector {}", e.a, e.b, e.target_degree);
        let details = match (&e.sector_coefficients, &e.failure) {
            (Some(cs), _) => format!("= {}", coefficient_list(cs)),
            (None, Some(f)) => f.clone(),
            (None, None) => format!("= {}", e.result),
        };
        r.push(Check::bool(name, anchors::CLOSES, e.closes(), details));
    }
    let jacobi_details = if report.jacobi_passed() {
        format!("{} triples, all residuals zero", report.jacobi_triples)
    } else {
        let mut s = format!("{} of {} triples fail:", report.jacobi_failures.len(), report.jacobi_triples);
        for f in report.jacobi_failures.iter().take(5) {
            let _ = write!(s, " ({}, {}, {})", f.triple.0, f.triple.1, f.triple.2);
        }
        s
    };
    r.push(Check::bool("colour Jacobi identity", anchor, report.jacobi_passed(), jacobi_details));
    if spec.name == "A" {
        let nonzero: Vec<_> = report.entries.iter().filter(|e| !e.result.is_zero()).collect();
        r.push(Check::bool(
            "every bracket vanishes",
            anchors::TRIVIAL_ALGEBRA,
            nonzero.is_empty(),
            format!("{} nonzero brackets", nonzero.len()),
        ));
    }
    r
}

fn identity_check(id: &OperatorIdentity) -> Check {
    let res = id.residual();
    let details = if res.is_zero() {
        "residual 0".to_string()
    } else {
        format!("residual {res}")
    };
    Check::bool(id.name.clone(), id.anchor, res.is_zero(), details)
}

pub fn relation_table_checks() -> Vec<Check> {
    free_relation_table()
        .iter()
        .chain(&harmonic_relation_table())
        .map(identity_check)
        .collect()
}

pub fn verify_relations() -> ReportDocument {
    let mut r = ReportDocument::new("verify relations");
    for c in relation_table_checks() {
        r.push(c);
    }
    r
}

fn zero_check(name: &str, anchor: &str, w: Result<WaveState, crate::wave::WaveError>) -> Check {
    match w {
        Ok(s) => Check::bool(name, anchor, s.is_zero(), if s.is_zero() { "exactly zero" } else { "nonzero" }),
        Err(e) => Check::error(name, anchor, e),
    }
}

pub fn ode_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let sym = ScalarSum::symbol;
    match verify_coeff_ode(&sym("E"), &sym("a"), &sym("b"), &sym("d")) {
        Ok(lines) => {
            for (i, (name, res)) in lines.iter().enumerate() {
                let anchor = if i < 4 { anchors::COUPLED_ODE } else { anchors::ODE_CONSTANTS };
                let ok = res.is_zero();
                out.push(Check::bool(
                    format!("closed form satisfies {name}"),
                    anchor,
                    ok,
                    if ok { "residual 0 for symbolic a, b, d" } else { "nonzero residual" },
                ));
            }
        }
        Err(e) => out.push(Check::error("closed form", anchors::COUPLED_ODE, e)),
    }
    let rep = rep_one();
    let kw = sym("kw");
    let energy = &kw * &kw;
    let plus = plane_wave(&kw);
    let minus = plane_wave(&-&kw);
    match eigen_condition_operators(&energy) {
        Ok(ops) => {
            for (i, op) in ops.iter().enumerate() {
                let w = apply_exp_op(op, &rep, &plus)
                    .and_then(|img| gamma_eigen_residual(&Potential::Free, &rep, &img, &energy));
                out.push(zero_check(
                    &format!("operator {} preserves the gp-eigenspace of psi_k", i + 1),
                    anchors::FOUR_OPERATORS,
                    w,
                ));
            }
            let w = apply_exp_op(&ops[3], &rep, &plus).and_then(|img| {
                let p1 = apply_op(&parity_one(), &rep, &plus)?;
                Ok(img.sub(&p1.scale(&ScalarSum::integer(2))))
            });
            out.push(zero_check("operator 4 acts as 2 P1 on psi_k", anchors::PARITY_ACTION, w));
            out.push(zero_check(
                "operator 4 annihilates psi_-k",
                anchors::ZERO_OPERATOR,
                apply_exp_op(&ops[3], &rep, &minus),
            ));
            out.push(zero_check(
                "operator 3 annihilates psi_k",
                anchors::ZERO_OPERATOR,
                apply_exp_op(&ops[2], &rep, &plus),
            ));
        }
        Err(e) => out.push(Check::error("eigenvalue-condition operators", anchors::FOUR_OPERATORS, e)),
    }
    out
}

pub fn verify_ode() -> ReportDocument {
    let mut r = ReportDocument::new("verify ode");
    for c in ode_checks() {
        r.push(c);
    }
    r
}

/// `k_wave` may be symbolic; `beta` is only used for the numeric overlap.
pub fn solve_free(k_wave_text: &str, k_wave: &ScalarSum, beta: f64) -> ReportDocument {
    let mut r = ReportDocument::new("solve free")
        .param("k_wave", k_wave_text)
        .param("beta", beta);
    let rep = rep_one();
    let energy = k_wave * k_wave;
    let psi = plane_wave(k_wave);
    r.push(zero_check(
        "Hll psi_k = gp kw^2 psi_k",
        anchors::IS_SOLUTION,
        gamma_eigen_residual(&Potential::Free, &rep, &psi, &energy),
    ));
    r.push(zero_check(
        "E = 0: psi_0 = (0, sqrt(beta)) is a gp-eigenvector",
        anchors::STILL_EIGENVECTOR,
        gamma_eigen_residual(&Potential::Free, &rep, &plane_wave(&ScalarSum::zero()), &ScalarSum::zero()),
    ));
    let root_beta = ScalarSum::symbol_pow(BETA, crate::scalar::rational(1, 2));
    r.push(zero_check(
        "P^ psi_k = sqrt(beta) kw psi_k",
        anchors::SIMULTANEOUS,
        apply_op(&momentum(), &rep, &psi).map(|p| p.sub(&psi.scale(&(&root_beta * k_wave)))),
    ));
    if k_wave.is_zero() {
        r.push(Check::new(
            "simultaneous eigenstates",
            anchors::SIMULTANEOUS,
            Status::Pass,
            "not applicable at E = 0",
        ));
    } else {
        let mixed = psi.add(&plane_wave(&-k_wave));
        for (label, s) in [("psi_k", &psi), ("psi_k + psi_-k", &mixed)] {
            let name = format!("simultaneous eigenstates of P^ and D+ for {label}");
            let check = match decompose_simultaneous(s, &rep, &energy) {
                Ok(d) => {
                    let rebuilt = d.reconstruct(&rep).map(|x| x == *s).unwrap_or(false);
                    let eigen = d
                        .eigen_residuals(&rep, &energy)
                        .map(|v| v.iter().all(WaveState::is_zero))
                        .unwrap_or(false);
                    Check::bool(
                        name,
                        anchors::SIMULTANEOUS,
                        rebuilt && eigen,
                        format!("a = {}, b = {}, reconstructs: {rebuilt}, eigen relations: {eigen}", d.a, d.b),
                    )
                }
                Err(e) => Check::error(name, anchors::SIMULTANEOUS, e),
            };
            r.push(check);
        }
    }
    let kw_num = k_wave.as_rational().and_then(|q| num_traits::ToPrimitive::to_f64(&q)).unwrap_or(1.0);
    let o = overlap_numeric(kw_num, kw_num, beta);
    r.push(Check::bool(
        "overlap coefficient at j = k",
        anchors::ORTHONORMAL,
        o.coefficient == 1.0 && o.frequency_difference == 0.0,
        format!("coefficient {} at k = {kw_num}", o.coefficient),
    ));
    r
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericOptions {
    pub grid: usize,
    pub domain: f64,
    pub count: usize,
}

pub fn harmonic_symbolic_checks(n: u32, beta: f64, k: f64) -> Vec<Check> {
    let rep = rep_one();
    let mut out = Vec::new();
    let energy = harmonic_energy(n);
    let value = energy
        .eval(&bindings([(BETA, beta), (K, k)]))
        .map(|z| format!("{:.6}", z.re))
        .unwrap_or_else(|_| "?".into());
    match harmonic_state(n, &rep) {
        Ok(s) => {
            let res = gamma_eigen_residual(&Potential::Harmonic, &rep, &s, &energy);
            let mut c = zero_check(
                &format!("Hll |{n}> = gp omega({n} + 1/2) |{n}>"),
                anchors::ANGULAR_FREQUENCY,
                res,
            );
            c.details = format!("{}; E = {energy} = {value}", c.details);
            out.push(c);
            out.push(Check::bool(
                format!("|{n}> is nonzero"),
                anchors::ANGULAR_FREQUENCY,
                !s.is_zero(),
                "",
            ));
        }
        Err(e) => out.push(Check::error(format!("harmonic state {n}"), anchors::ANGULAR_FREQUENCY, e)),
    }
    match harmonic_state(0, &rep) {
        Ok(v) => out.push(zero_check("b |0> = 0", anchors::VACUUM, lowering_residual(&rep, &v))),
        Err(e) => out.push(Check::error("b |0> = 0", anchors::VACUUM, e)),
    }
    for id in harmonic_relation_table() {
        if id.anchor == anchors::IDEMPOTENT || id.anchor == anchors::SIMPLIFY {
            out.push(identity_check(&id));
        }
    }
    out
}

pub fn harmonic_numeric_checks(beta: f64, k: f64, opts: NumericOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let rep = rep_one();
    let grid = match Grid::new(opts.domain, opts.grid) {
        Ok(g) => g,
        Err(e) => {
            out.push(Check::error("grid", anchors::CONTAINED_SPECTRUM, e));
            return out;
        }
    };
    match harmonic_spectrum_check(beta, k, &grid, opts.count, &rep) {
        Ok(s) => {
            for n in 0..s.targets.len() {
                out.push(Check::bool(
                    format!("eigenvalue {n} near omega({n} + 1/2)"),
                    anchors::CONTAINED_SPECTRUM,
                    s.eigen_pass[n],
                    format!(
                        "computed {:.8}, target {:.8}, relative error {:.2e}",
                        s.eigenvalues[n], s.targets[n], s.relative_errors[n]
                    ),
                ));
            }
            for n in 0..s.targets.len() {
                out.push(Check::bool(
                    format!("pencil probe contrast at level {n}"),
                    anchors::NO_BOUNDED_INVERSE,
                    s.probe_pass[n],
                    format!(
                        "sigma_min {:.3e} at E = {:.4}, {:.3e} at E = {:.4}, ratio {:.3e}",
                        s.probe_at_target[n],
                        s.targets[n],
                        s.probe_at_reference[n],
                        s.omega * n as f64,
                        s.contrasts[n]
                    ),
                ));
            }
        }
        Err(e) => out.push(Check::error("harmonic spectrum", anchors::EXACT_SPECTRUM, e)),
    }
    match block_structure_check(&grid, beta, k, &rep) {
        Ok(b) => out.push(Check::bool(
            "Schrödinger-like assembly is block upper triangular",
            anchors::BLOCK_EXAMPLE,
            b.passed(),
            format!(
                "max |lower-left| = {}, diagonal blocks equal H: {}, max |coupling| = {:.4}",
                b.max_lower_left, b.diagonal_blocks_match, b.max_coupling
            ),
        )),
        Err(e) => out.push(Check::error("block structure", anchors::BLOCK_EXAMPLE, e)),
    }
    out
}

pub fn solve_harmonic(n: u32, beta: f64, k: f64, numeric: Option<NumericOptions>) -> ReportDocument {
    let mut r = ReportDocument::new("solve harmonic")
        .param("n", n)
        .param("beta", beta)
        .param("k", k)
        .param("numeric", numeric.is_some());
    if let Some(o) = numeric {
        r = r.param("grid", o.grid).param("domain", o.domain).param("count", o.count);
    }
    for c in harmonic_symbolic_checks(n, beta, k) {
        r.push(c);
    }
    if let Some(o) = numeric {
        for c in harmonic_numeric_checks(beta, k, o) {
            r.push(c);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::builtin_algebra;

    #[test]
    fn relations_report_is_large_and_green() {
        let r = verify_relations();
        assert!(r.checks.len() >= 28);
        assert!(r.passed());
    }

    #[test]
    fn clifford_reports() {
        assert!(verify_clifford(3).passed());
        assert!(!verify_clifford(2).passed());
        let one = verify_clifford(1);
        let failing: Vec<_> = one.checks.iter().filter(|c| c.status != Status::Pass).collect();
        assert_eq!(failing.len(), 6);
        assert!(failing.iter().all(|c| c.name.starts_with("constructed: ")));
    }

    #[test]
    fn algebra_and_ode_reports() {
        let r = verify_algebra(&builtin_algebra("A").unwrap());
        assert!(r.passed());
        assert!(r.checks.iter().any(|c| c.paper_anchor == anchors::TRIVIAL_ALGEBRA));
        assert!(verify_ode().passed());
    }

    #[test]
    fn free_reports() {
        assert!(solve_free("kw", &ScalarSum::symbol("kw"), 1.0).passed());
        assert!(solve_free("0", &ScalarSum::zero(), 2.0).passed());
        assert!(solve_free("3/2", &ScalarSum::ratio(3, 2), 2.0).passed());
    }

    #[test]
    fn harmonic_report_names_the_energy() {
        let r = solve_harmonic(3, 2.0, 1.0, None);
        assert!(r.passed());
        assert!(r.checks[0].details.contains("3.500000"), "{}", r.checks[0].details);
    }
}
