//! JSON document shapes. Every numeric value is an exact rational string;
//! serialization order is fixed by struct declaration and by the sorted
//! iteration of the underlying maps, so output is byte-stable.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use cartan_core::forms::form_to_spec;
use cartan_core::superalgebra::commutant_dimension;
use cartan_core::verify::VerificationReport;
use cartan_core::{
    BasisIndex, DiffOp, EvolutionMethod, EvolutionResult, FormVector, IrrepSet, OperatorMatrix,
    Parity, SparseScalarMatrix,
};

use crate::CliError;

pub fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
        Parity::Mixed => "mixed",
    }
}

fn pretty<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut out = serde_json::to_string_pretty(doc)?;
    out.push('\n');
    Ok(out)
}

// ---------------------------------------------------------------------------
// Forms.

/// Input schema: `{n, terms: [{indices: [k…], coeff: "poly"}]}`.
#[derive(Deserialize)]
pub struct FormFile {
    pub n: usize,
    #[serde(default)]
    pub terms: Vec<FormFileTerm>,
}

#[derive(Deserialize)]
pub struct FormFileTerm {
    pub indices: Vec<usize>,
    pub coeff: String,
}

#[derive(Serialize)]
struct FormDoc {
    n: usize,
    terms: Vec<TermDoc>,
    components: Vec<ComponentDoc>,
}

#[derive(Serialize)]
struct TermDoc {
    indices: Vec<usize>,
    coeff: String,
}

#[derive(Serialize)]
struct ComponentDoc {
    index: usize,
    basis: String,
    value: String,
}

fn form_doc(form: &FormVector) -> FormDoc {
    let spec = form_to_spec(form);
    let terms = spec
        .terms
        .iter()
        .map(|(indices, coeff)| TermDoc {
            indices: indices.iter().map(|v| v.0).collect(),
            coeff: coeff.to_string(),
        })
        .collect();
    let components = (0..form.dim())
        .map(|idx| ComponentDoc {
            index: idx,
            basis: BasisIndex::from_linear(form.n(), idx)
                .expect("component index in range")
                .label(),
            value: form.component(idx).to_string(),
        })
        .collect();
    FormDoc {
        n: form.n(),
        terms,
        components,
    }
}

pub fn form_json(form: &FormVector) -> Result<String, CliError> {
    pretty(&form_doc(form))
}

// ---------------------------------------------------------------------------
// Operators.

#[derive(Serialize)]
struct DiffOpTermDoc {
    coeff: String,
    deriv: Vec<u32>,
}

fn diffop_doc(op: &DiffOp) -> Vec<DiffOpTermDoc> {
    op.terms()
        .map(|(deriv, coeff)| DiffOpTermDoc {
            coeff: coeff.to_string(),
            deriv: deriv.exponents().to_vec(),
        })
        .collect()
}

#[derive(Serialize)]
struct OperatorDoc {
    op: String,
    n: usize,
    dim: usize,
    parity: &'static str,
    entries: Vec<(usize, usize, Vec<DiffOpTermDoc>)>,
}

pub fn operator_json(name: &str, op: &OperatorMatrix) -> Result<String, CliError> {
    let entries = op
        .entries()
        .map(|(r, c, d)| (r, c, diffop_doc(d)))
        .collect();
    pretty(&OperatorDoc {
        op: name.into(),
        n: op.n(),
        dim: op.dim(),
        parity: parity_name(op.parity()),
        entries,
    })
}

#[derive(Serialize)]
struct ScalarMatrixDoc {
    op: String,
    n: usize,
    dim: usize,
    entries: Vec<(usize, usize, String)>,
}

pub fn scalar_matrix_json(
    name: &str,
    n: usize,
    m: &SparseScalarMatrix,
) -> Result<String, CliError> {
    let entries = m.iter().map(|(r, c, v)| (r, c, v.to_string())).collect();
    pretty(&ScalarMatrixDoc {
        op: name.into(),
        n,
        dim: m.rows(),
        entries,
    })
}

// ---------------------------------------------------------------------------
// Evolution.

#[derive(Serialize)]
struct EvolveDoc {
    t: String,
    method: &'static str,
    order: Option<u32>,
    #[serde(flatten)]
    form: FormDoc,
}

pub fn evolve_json(result: &EvolutionResult) -> Result<String, CliError> {
    let (method, order) = match result.method {
        EvolutionMethod::ExactFree => ("free", None),
        EvolutionMethod::Taylor(order) => ("taylor", Some(order)),
    };
    pretty(&EvolveDoc {
        t: result.t.to_string(),
        method,
        order,
        form: form_doc(&result.psi),
    })
}

// ---------------------------------------------------------------------------
// Verification reports.

#[derive(Serialize)]
struct CheckDoc {
    label: String,
    identity: String,
    pass: bool,
    counterexample: Option<String>,
}

#[derive(Serialize)]
struct ReportDoc {
    suite: String,
    n: usize,
    seed: u64,
    hamiltonian: Option<String>,
    beta: Option<String>,
    casimir: Option<String>,
    passed: bool,
    checks: Vec<CheckDoc>,
}

#[derive(Serialize)]
struct VerifyDoc {
    passed: bool,
    reports: Vec<ReportDoc>,
}

pub fn verify_json(reports: &[VerificationReport]) -> Result<String, CliError> {
    let docs = reports
        .iter()
        .map(|r| ReportDoc {
            suite: r.suite.name().into(),
            n: r.n,
            seed: r.seed,
            hamiltonian: r.hamiltonian.clone(),
            beta: r.beta.clone(),
            casimir: r.casimir.clone(),
            passed: r.passed,
            checks: r
                .checks
                .iter()
                .map(|c| CheckDoc {
                    label: c.label.clone(),
                    identity: c.identity.clone(),
                    pass: c.pass,
                    counterexample: c.counterexample.clone(),
                })
                .collect(),
        })
        .collect();
    pretty(&VerifyDoc {
        passed: reports.iter().all(|r| r.passed),
        reports: docs,
    })
}

// ---------------------------------------------------------------------------
// The superalgebra representation.

#[derive(Serialize)]
struct IrrepDoc {
    h: String,
    sqrt_h: Option<String>,
    basis: Vec<&'static str>,
    parity: Vec<&'static str>,
    commutant_dimension: usize,
    matrices: Vec<MatrixDoc>,
}

#[derive(Serialize)]
struct MatrixDoc {
    name: &'static str,
    rows: Vec<Vec<String>>,
}

pub fn irrep_json(set: &IrrepSet) -> Result<String, CliError> {
    let field = set.field();
    let sqrt = field.sqrt_element();
    let sqrt_h = sqrt.b.is_zero().then(|| sqrt.a.to_string());
    let matrices = set
        .named_matrices()
        .iter()
        .map(|(name, m)| MatrixDoc {
            name,
            rows: (0..m.dim())
                .map(|r| (0..m.dim()).map(|c| field.render(m.get(r, c))).collect())
                .collect(),
        })
        .collect();
    let generators: Vec<_> = set
        .named_matrices()
        .iter()
        .map(|(_, m)| (*m).clone())
        .collect();
    pretty(&IrrepDoc {
        h: set.h.to_string(),
        sqrt_h,
        basis: IrrepSet::BASIS_LABELS.to_vec(),
        parity: IrrepSet::BASIS_PARITY.iter().map(|&p| parity_name(p)).collect(),
        commutant_dimension: commutant_dimension(field, 4, &generators)?,
        matrices,
    })
}

// ---------------------------------------------------------------------------
// Basis listing.

#[derive(Serialize)]
struct BasisDoc {
    n: usize,
    states: Vec<StateDoc>,
}

#[derive(Serialize)]
struct StateDoc {
    index: usize,
    label: String,
    degree: u32,
    parity: &'static str,
}

pub fn basis_json(n: usize, states: &[BasisIndex]) -> Result<String, CliError> {
    let states = states
        .iter()
        .map(|b| StateDoc {
            index: b.linear(),
            label: b.label(),
            degree: b.degree(),
            parity: if b.degree() % 2 == 0 { "even" } else { "odd" },
        })
        .collect();
    pretty(&BasisDoc { n, states })
}
