//! Human-readable text rendering. Rows and columns print 1-based, matching
//! the usual handwritten matrix convention; JSON keeps 0-based indices.

use std::fmt::Write as _;

use cartan_core::verify::VerificationReport;
use cartan_core::{
    BasisIndex, EvolutionMethod, EvolutionResult, FormVector, IrrepSet, OperatorMatrix,
    SparseScalarMatrix,
};

use crate::json::parity_name;

pub fn operator_text(name: &str, op: &OperatorMatrix) -> String {
    let mut out = format!(
        "operator {name} (n = {}, dim = {}, parity = {})\n",
        op.n(),
        op.dim(),
        parity_name(op.parity())
    );
    let mut any = false;
    for (r, c, d) in op.entries() {
        let _ = writeln!(out, "({}, {}): {d}", r + 1, c + 1);
        any = true;
    }
    if !any {
        out.push_str("(zero matrix)\n");
    }
    out
}

pub fn scalar_matrix_text(name: &str, n: usize, m: &SparseScalarMatrix) -> String {
    let mut out = format!("{name} (n = {n}, dim = {})\n", m.rows());
    let mut any = false;
    for (r, c, v) in m.iter() {
        let _ = writeln!(out, "({}, {}): {v}", r + 1, c + 1);
        any = true;
    }
    if !any {
        out.push_str("(zero matrix)\n");
    }
    out
}

pub fn form_text(form: &FormVector) -> String {
    let mut out = format!("form (n = {})\n", form.n());
    for idx in 0..form.dim() {
        let label = BasisIndex::from_linear(form.n(), idx)
            .expect("component index in range")
            .label();
        let _ = writeln!(out, "{label}: {}", form.component(idx));
    }
    out
}

pub fn evolve_text(result: &EvolutionResult) -> String {
    let method = match result.method {
        EvolutionMethod::ExactFree => "free".to_string(),
        EvolutionMethod::Taylor(order) => format!("taylor (order {order})"),
    };
    format!("t = {}\nmethod = {method}\n{}", result.t, form_text(&result.psi))
}

pub fn verify_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for report in reports {
        let _ = write!(
            out,
            "suite {} (n = {}, seed = {}",
            report.suite.name(),
            report.n,
            report.seed
        );
        if let Some(h) = &report.hamiltonian {
            let _ = write!(out, ", H = {h}");
        }
        if let Some(beta) = &report.beta {
            let _ = write!(out, ", beta = {beta}");
        }
        if let Some(h) = &report.casimir {
            let _ = write!(out, ", h = {h}");
        }
        out.push_str(")\n");
        let mut failures = 0usize;
        for check in &report.checks {
            if check.pass {
                let _ = writeln!(out, "  ok    {}  {}", check.label, check.identity);
            } else {
                failures += 1;
                let _ = writeln!(out, "  FAIL  {}  {}", check.label, check.identity);
                if let Some(ce) = &check.counterexample {
                    let _ = writeln!(out, "        counterexample: {ce}");
                }
            }
        }
        let _ = writeln!(
            out,
            "  {} checks, {} failure{}\n",
            report.checks.len(),
            failures,
            if failures == 1 { "" } else { "s" }
        );
    }
    let overall = if reports.iter().all(|r| r.passed) {
        "pass"
    } else {
        "FAIL"
    };
    let _ = writeln!(
        out,
        "overall: {overall} ({} report{})",
        reports.len(),
        if reports.len() == 1 { "" } else { "s" }
    );
    out
}

pub fn irrep_text(set: &IrrepSet) -> String {
    let field = set.field();
    let mut out = format!("h = {}\n", set.h);
    let basis: Vec<String> = IrrepSet::BASIS_LABELS
        .iter()
        .zip(IrrepSet::BASIS_PARITY.iter())
        .map(|(label, &p)| format!("{label} ({})", parity_name(p)))
        .collect();
    let _ = writeln!(out, "basis: {}", basis.join(", "));
    for (name, m) in set.named_matrices() {
        let _ = writeln!(out, "{name} =");
        for r in 0..m.dim() {
            let row: Vec<String> = (0..m.dim()).map(|c| field.render(m.get(r, c))).collect();
            let _ = writeln!(out, "  [{}]", row.join(", "));
        }
    }
    out
}

pub fn basis_text(n: usize, states: &[BasisIndex]) -> String {
    let mut out = format!("basis states (n = {n})\n");
    for b in states {
        let parity = if b.degree() % 2 == 0 { "even" } else { "odd" };
        let _ = writeln!(out, "{:>3}  degree {}  {:<5} {}", b.linear(), b.degree(), parity, b.label());
    }
    out
}
