//! `cartan` — command-line front end for the exact symplectic Cartan
//! calculus: dump operator matrices, apply them to forms, run the named
//! verification suites, evolve states in time, and print the 4×4 charge
//! superalgebra representation.
//!
//! Every number in the output is an exact rational string; output is
//! byte-stable for identical inputs and seeds. Exit codes: 0 success (and
//! all checks passing), 1 verification failure, 2 bad input.

mod json;
mod render;

use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::One;

use cartan_core::cartan::{
    build_charge, codifferential, evolution_operator, exterior_derivative, hodge_operator,
    hodge_star, interior_contraction, laplacian, lie_derivative,
};
use cartan_core::forms::{form_from_spec, FormSpec};
use cartan_core::verify::{
    run_suite_in, seeded_hamiltonian, SuiteKind, SuiteOptions, VerificationReport,
};
use cartan_core::{
    check_dof, irrep_build, BasisIndex, ChargeKind, EvolutionMethod, FormVector, Mutation,
    OperatorMatrix, Polynomial, Rep, VarIndex, VectorField, DEFAULT_MAX_DOF,
};

#[derive(Parser)]
#[command(name = "cartan", version, about = "Exact Cartan calculus on symplectic phase space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one operator matrix.
    DumpOp(DumpOpArgs),
    /// Apply an operator to a form read from a JSON file.
    Apply(ApplyArgs),
    /// Run verification suites and report every check.
    Verify(VerifyArgs),
    /// Evolve a form in time (exact free flow or truncated series).
    Evolve(EvolveArgs),
    /// Print the 4×4 charge-superalgebra representation for a Casimir value.
    Irrep(IrrepArgs),
    /// Print the Hodge star matrix.
    Hodge(HodgeArgs),
    /// List the Grassmann basis states.
    Basis(BasisArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
        })
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output path; `-` writes to stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Copy, Clone, ValueEnum)]
enum MutationArg {
    /// Replace σ_z with σ_x in the grading strings.
    GradingSigmaX,
    /// Drop the grading strings entirely.
    GradingDropped,
    /// Flip the sign of the symplectic pairing.
    OmegaSignFlip,
}

impl From<MutationArg> for Mutation {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::GradingSigmaX => Mutation::GradingSigmaX,
            MutationArg::GradingDropped => Mutation::GradingDropped,
            MutationArg::OmegaSignFlip => Mutation::OmegaSignFlip,
        }
    }
}

#[derive(Args)]
struct DumpOpArgs {
    /// Operator name: d, delta, laplacian, hodge, iota, lie, H, Q, Qbar,
    /// Qf, K, Kbar, QH, QHbar, N, Nbar.
    #[arg(long)]
    op: String,
    /// Degrees of freedom.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Hamiltonian polynomial in p1,q1,…
    #[arg(long)]
    hamiltonian: Option<String>,
    /// Deformation parameter for QH/QHbar (default 1).
    #[arg(long)]
    beta: Option<String>,
    /// Comma-separated components (V^p1, V^q1, …) for iota.
    #[arg(long)]
    vector_field: Option<String>,
    /// Raise the degrees-of-freedom ceiling (default 3).
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ApplyArgs {
    /// Operator name, as for dump-op.
    #[arg(long)]
    op: String,
    /// Input form JSON path; `-` reads stdin.
    #[arg(long = "in", default_value = "-")]
    input: String,
    /// Hamiltonian polynomial, for the operators that need one.
    #[arg(long)]
    hamiltonian: Option<String>,
    /// Deformation parameter for QH/QHbar (default 1).
    #[arg(long)]
    beta: Option<String>,
    /// Comma-separated components (V^p1, V^q1, …) for iota.
    #[arg(long)]
    vector_field: Option<String>,
    /// Raise the degrees-of-freedom ceiling (default 3).
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name (repeatable): grassmann, charges, susy, cartan, hodge,
    /// geometry, superalgebra, evolution, intertwine, or all.
    #[arg(long)]
    suite: Vec<String>,
    /// Run every suite (same as --suite all).
    #[arg(long)]
    all: bool,
    /// Degrees of freedom (repeatable); defaults to 1 and 2.
    #[arg(long)]
    n: Vec<usize>,
    /// Seed for the sampled inputs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampled forms per degree in the geometry and evolution suites.
    #[arg(long, default_value_t = 8)]
    samples: usize,
    /// Hamiltonian polynomial; the susy suite samples one when absent.
    #[arg(long)]
    hamiltonian: Option<String>,
    /// Deformation parameter (default 1).
    #[arg(long)]
    beta: Option<String>,
    /// Casimir value for the superalgebra suite (default 1).
    #[arg(long)]
    casimir: Option<String>,
    /// Deliberately broken construction recipe (negative control).
    #[arg(long, value_enum)]
    mutate: Option<MutationArg>,
    /// Raise the degrees-of-freedom ceiling (default 3).
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EvolveArgs {
    /// Exact free-particle evolution (the default method).
    #[arg(long)]
    free: bool,
    /// Evolution method: free or taylor.
    #[arg(long)]
    method: Option<String>,
    /// Truncation order for the taylor method.
    #[arg(long)]
    order: Option<u32>,
    /// Evolution time as an exact rational.
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Hamiltonian polynomial (required for taylor).
    #[arg(long)]
    hamiltonian: Option<String>,
    /// Input form JSON path; `-` reads stdin.
    #[arg(long = "in", default_value = "-")]
    input: String,
    /// Raise the degrees-of-freedom ceiling (default 3).
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct IrrepArgs {
    /// Casimir value h ≥ 0, as an exact rational.
    #[arg(long, default_value = "1")]
    h: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HodgeArgs {
    /// Degrees of freedom.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Raise the degrees-of-freedom ceiling (default 3).
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BasisArgs {
    /// Degrees of freedom.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Raise the degrees-of-freedom ceiling (default 3).
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Input-side failure; always maps to exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<cartan_core::Error> for CliError {
    fn from(e: cartan_core::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError(format!("invalid JSON input: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Dispatches a parsed command; the boolean is false when verification ran
/// and at least one check failed.
fn run(command: &Command) -> Result<bool, CliError> {
    match command {
        Command::DumpOp(args) => {
            let out = cmd_dump_op(args)?;
            write_output(&args.output.out, &out)?;
            Ok(true)
        }
        Command::Apply(args) => {
            let out = cmd_apply(args)?;
            write_output(&args.output.out, &out)?;
            Ok(true)
        }
        Command::Verify(args) => {
            let (out, passed) = cmd_verify(args)?;
            write_output(&args.output.out, &out)?;
            Ok(passed)
        }
        Command::Evolve(args) => {
            let out = cmd_evolve(args)?;
            write_output(&args.output.out, &out)?;
            Ok(true)
        }
        Command::Irrep(args) => {
            let out = cmd_irrep(args)?;
            write_output(&args.output.out, &out)?;
            Ok(true)
        }
        Command::Hodge(args) => {
            let out = cmd_hodge(args)?;
            write_output(&args.output.out, &out)?;
            Ok(true)
        }
        Command::Basis(args) => {
            let out = cmd_basis(args)?;
            write_output(&args.output.out, &out)?;
            Ok(true)
        }
    }
}

// ---------------------------------------------------------------------------
// Shared parsing helpers.

fn parse_rational(src: &str) -> Result<BigRational, CliError> {
    src.trim()
        .parse::<BigRational>()
        .map_err(|_| CliError(format!("could not parse `{src}` as an exact rational")))
}

fn parse_poly(src: &str, nvars: usize) -> Result<Polynomial, CliError> {
    Polynomial::parse(src, nvars)
        .map_err(|e| CliError(format!("in polynomial `{src}`: {e}")))
}

fn parse_vector_field(src: Option<&str>, n: usize) -> Result<VectorField, CliError> {
    let src = src.ok_or_else(|| {
        CliError("iota needs --vector-field with 2n comma-separated components".into())
    })?;
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 2 * n {
        return Err(CliError(format!(
            "--vector-field needs {} components for n = {n}, got {}",
            2 * n,
            parts.len()
        )));
    }
    let components = parts
        .iter()
        .map(|p| parse_poly(p, 2 * n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VectorField::from_components(n, components)?)
}

fn resolve_max_n(flag: Option<usize>) -> usize {
    match flag {
        None => DEFAULT_MAX_DOF,
        Some(max) => {
            if max > DEFAULT_MAX_DOF {
                let dim = if 2 * max < usize::BITS as usize {
                    (1usize << (2 * max)).to_string()
                } else {
                    String::from("astronomically large")
                };
                eprintln!(
                    "warning: ceiling raised to n = {max}; operator matrices reach \
                     dimension {dim} and exact arithmetic slows down accordingly"
                );
            }
            max
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn write_output(path: &str, content: &str) -> Result<(), CliError> {
    if path == "-" {
        print!("{content}");
        Ok(())
    } else {
        Ok(fs::write(path, content)?)
    }
}

fn read_form(path: &str) -> Result<FormVector, CliError> {
    let text = read_input(path)?;
    let file: json::FormFile = serde_json::from_str(&text)?;
    let n = file.n;
    if n == 0 {
        return Err(CliError("form file declares n = 0".into()));
    }
    let mut spec = FormSpec::new();
    for term in &file.terms {
        let mut indices = Vec::new();
        for &k in &term.indices {
            if k == 0 || k > 2 * n {
                return Err(CliError(format!(
                    "generator index {k} out of range 1..={} for n = {n}",
                    2 * n
                )));
            }
            indices.push(VarIndex(k));
        }
        spec.push(indices, parse_poly(&term.coeff, 2 * n)?);
    }
    Ok(form_from_spec(n, &spec)?)
}

// ---------------------------------------------------------------------------
// Commands.

fn build_operator(
    name: &str,
    n: usize,
    hamiltonian: Option<&str>,
    beta: Option<&str>,
    vector_field: Option<&str>,
) -> Result<OperatorMatrix, CliError> {
    let need_h = || -> Result<Polynomial, CliError> {
        let src = hamiltonian
            .ok_or_else(|| CliError(format!("--op {name} requires --hamiltonian")))?;
        parse_poly(src, 2 * n)
    };
    let beta_value = match beta {
        Some(src) => parse_rational(src)?,
        None => BigRational::one(),
    };
    let charge = |kind: ChargeKind| -> Result<OperatorMatrix, CliError> {
        let h;
        let h_ref = if kind.needs_hamiltonian() {
            h = need_h()?;
            Some(&h)
        } else {
            None
        };
        let beta_ref = kind.needs_beta().then_some(&beta_value);
        Ok(build_charge(kind, h_ref, beta_ref, n)?)
    };
    match name {
        "d" => Ok(exterior_derivative(n)?),
        "delta" => Ok(codifferential(n)?),
        "laplacian" => Ok(laplacian(n)?),
        "hodge" => Ok(hodge_operator(n)?),
        "iota" => Ok(interior_contraction(&parse_vector_field(vector_field, n)?)?),
        "lie" => Ok(lie_derivative(&need_h()?, n)?),
        "H" => Ok(evolution_operator(&need_h()?, n)?),
        "Q" => charge(ChargeKind::Q),
        "Qbar" => charge(ChargeKind::QBar),
        "Qf" => charge(ChargeKind::QF),
        "K" => charge(ChargeKind::K),
        "Kbar" => charge(ChargeKind::KBar),
        "N" => charge(ChargeKind::N),
        "Nbar" => charge(ChargeKind::NBar),
        "QH" => charge(ChargeKind::QH),
        "QHbar" => charge(ChargeKind::QHBar),
        other => Err(CliError(format!(
            "unknown operator `{other}`; expected one of d, delta, laplacian, hodge, \
             iota, lie, H, Q, Qbar, Qf, K, Kbar, QH, QHbar, N, Nbar"
        ))),
    }
}

fn cmd_dump_op(args: &DumpOpArgs) -> Result<String, CliError> {
    check_dof(args.n, resolve_max_n(args.max_n))?;
    let op = build_operator(
        &args.op,
        args.n,
        args.hamiltonian.as_deref(),
        args.beta.as_deref(),
        args.vector_field.as_deref(),
    )?;
    Ok(match args.output.format {
        Format::Json => json::operator_json(&args.op, &op)?,
        Format::Text => render::operator_text(&args.op, &op),
    })
}

fn cmd_apply(args: &ApplyArgs) -> Result<String, CliError> {
    let form = read_form(&args.input)?;
    let n = form.n();
    check_dof(n, resolve_max_n(args.max_n))?;
    let op = build_operator(
        &args.op,
        n,
        args.hamiltonian.as_deref(),
        args.beta.as_deref(),
        args.vector_field.as_deref(),
    )?;
    let result = op.apply(&form)?;
    Ok(match args.output.format {
        Format::Json => json::form_json(&result)?,
        Format::Text => render::form_text(&result),
    })
}

fn resolve_suites(names: &[String], all: bool) -> Result<Vec<SuiteKind>, CliError> {
    if all || names.iter().any(|s| s == "all") || names.is_empty() {
        return Ok(SuiteKind::ALL.to_vec());
    }
    let mut kinds = Vec::new();
    for name in names {
        let kind = SuiteKind::from_name(name)
            .ok_or_else(|| CliError(format!("unknown suite `{name}`")))?;
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    Ok(kinds)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool), CliError> {
    let max_n = resolve_max_n(args.max_n);
    let rep = match args.mutate {
        Some(m) => Rep::mutated(m.into()),
        None => Rep::standard(),
    };
    let kinds = resolve_suites(&args.suite, args.all)?;
    let ns = if args.n.is_empty() {
        vec![1, 2]
    } else {
        args.n.clone()
    };

    let mut reports: Vec<VerificationReport> = Vec::new();
    for &kind in &kinds {
        if SuiteKind::SAMPLED.contains(&kind) {
            for &n in &ns {
                let mut opts = SuiteOptions::new(n);
                opts.seed = args.seed;
                opts.samples = args.samples;
                opts.max_n = max_n;
                opts.beta = args.beta.as_deref().map(parse_rational).transpose()?;
                opts.hamiltonian = match (&args.hamiltonian, kind) {
                    (Some(src), _) => Some(parse_poly(src, 2 * n)?),
                    (None, SuiteKind::Susy) => Some(seeded_hamiltonian(args.seed, n)),
                    (None, _) => None,
                };
                reports.push(run_suite_in(&rep, kind, &opts)?);
            }
        } else {
            // Fixed at one degree of freedom; runs once regardless of --n.
            let mut opts = SuiteOptions::new(1);
            opts.seed = args.seed;
            opts.samples = args.samples;
            opts.max_n = max_n;
            opts.casimir = args.casimir.as_deref().map(parse_rational).transpose()?;
            opts.hamiltonian = args
                .hamiltonian
                .as_deref()
                .map(|src| parse_poly(src, 2))
                .transpose()?;
            reports.push(run_suite_in(&rep, kind, &opts)?);
        }
    }

    let passed = reports.iter().all(|r| r.passed);
    let out = match args.output.format {
        Format::Json => json::verify_json(&reports)?,
        Format::Text => render::verify_text(&reports),
    };
    Ok((out, passed))
}

fn cmd_evolve(args: &EvolveArgs) -> Result<String, CliError> {
    let psi = read_form(&args.input)?;
    check_dof(psi.n(), resolve_max_n(args.max_n))?;
    let t = parse_rational(&args.t)?;
    let method_name = match (&args.method, args.free) {
        (Some(m), _) => m.as_str(),
        (None, _) => "free",
    };
    let (method, hamiltonian) = match method_name {
        "free" => (EvolutionMethod::ExactFree, None),
        "taylor" => {
            let order = args
                .order
                .ok_or_else(|| CliError("--method taylor requires --order".into()))?;
            let src = args
                .hamiltonian
                .as_deref()
                .ok_or_else(|| CliError("--method taylor requires --hamiltonian".into()))?;
            (
                EvolutionMethod::Taylor(order),
                Some(parse_poly(src, 2 * psi.n())?),
            )
        }
        other => {
            return Err(CliError(format!(
                "unknown method `{other}`; expected free or taylor"
            )))
        }
    };
    let result = cartan_core::evolve::evolve(hamiltonian.as_ref(), &psi, &t, method)?;
    Ok(match args.output.format {
        Format::Json => json::evolve_json(&result)?,
        Format::Text => render::evolve_text(&result),
    })
}

fn cmd_irrep(args: &IrrepArgs) -> Result<String, CliError> {
    let h = parse_rational(&args.h)?;
    let set = irrep_build(&h)?;
    Ok(match args.output.format {
        Format::Json => json::irrep_json(&set)?,
        Format::Text => render::irrep_text(&set),
    })
}

fn cmd_hodge(args: &HodgeArgs) -> Result<String, CliError> {
    check_dof(args.n, resolve_max_n(args.max_n))?;
    let star = hodge_star(args.n)?;
    Ok(match args.output.format {
        Format::Json => json::scalar_matrix_json("hodge-star", args.n, &star)?,
        Format::Text => render::scalar_matrix_text("hodge-star", args.n, &star),
    })
}

fn cmd_basis(args: &BasisArgs) -> Result<String, CliError> {
    check_dof(args.n, resolve_max_n(args.max_n))?;
    let states = BasisIndex::all(args.n)?;
    Ok(match args.output.format {
        Format::Json => json::basis_json(args.n, &states)?,
        Format::Text => render::basis_text(args.n, &states),
    })
}
