//! `rcpoly`: encode graph problems as polynomial systems and decide them.
//!
//! Every invocation prints exactly one JSON report on stdout.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use rcpoly::encode::{EncodeConfig, Encoding, EncodingJob, Problem};
use rcpoly::membership::{rc2_membership_with, MembershipConfig};
use rcpoly::nulla::{
    resolve_cap, search_certificate, verify_certificate, Certificate, DegreeCap, NullaConfig,
    SearchOutcome, DEFAULT_MATRIX_BUDGET,
};
use rcpoly::oracle::{self, chromatic_feasible, rc_at_most, rc_exact, stable_set_count};
use rcpoly::poly::Coeff;
use rcpoly::{FieldSpec, Graph, MonomialOrder, OrderKind, PolySystem};

use report::{CliError, Inputs, Report, EXIT_DISCREPANCY, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "rcpoly",
    version,
    about = "Polynomial encodings of graph problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Monomial order for division.
    #[arg(long, global = true)]
    order: Option<OrderKind>,
    /// Largest certificate degree to try.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Work budget for exhaustive searches and linear systems.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Coefficient field characteristic (0 for Q).
    #[arg(long, global = true)]
    field: Option<u64>,
    /// Add wall time to the report (breaks byte reproducibility).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode a DIMACS graph as a polynomial system.
    Encode {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        k: Option<usize>,
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a Nullstellensatz certificate.
    Nulla {
        system: PathBuf,
        /// Try an exhaustive search for a common zero first.
        #[arg(long)]
        witness_search: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against a system.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        system: PathBuf,
    },
    /// Decide rc <= 2 by ideal membership.
    Membership {
        graph: PathBuf,
        #[arg(long)]
        emit_remainder: bool,
    },
    /// Exhaustive combinatorial answers.
    Oracle {
        #[arg(long)]
        problem: OracleProblem,
        #[arg(long)]
        k: Option<usize>,
        graph: PathBuf,
    },
    /// Encode, decide algebraically and cross-check against the oracle.
    Pipeline {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        k: Option<usize>,
        graph: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleProblem {
    Rc,
    RcAtMost,
    Chromatic,
    StableCount,
}

impl OracleProblem {
    fn name(self) -> &'static str {
        match self {
            OracleProblem::Rc => "rc",
            OracleProblem::RcAtMost => "rc-at-most",
            OracleProblem::Chromatic => "chromatic",
            OracleProblem::StableCount => "stable-count",
        }
    }
}

type Payload = Map<String, Value>;

struct Run<'a> {
    global: &'a GlobalOpts,
    inputs: Inputs,
    config: Payload,
    /// Set when the algebraic and combinatorial answers disagree.
    discrepancy: bool,
}

impl Run<'_> {
    fn budget(&self) -> u64 {
        self.global.budget.unwrap_or(oracle::DEFAULT_BUDGET)
    }

    fn echo(&mut self, key: &str, value: Value) {
        self.config.insert(key.to_string(), value);
    }

    fn field(&self) -> Result<Option<FieldSpec>, CliError> {
        self.global
            .field
            .map(FieldSpec::new)
            .transpose()
            .map_err(CliError::from)
    }

    fn graph(&mut self, path: &Path) -> Result<Graph, CliError> {
        let text = self.inputs.read("graph", path)?;
        Ok(Graph::parse_dimacs(&text)?)
    }

    fn nulla_config(&mut self, witness_search: bool) -> NullaConfig {
        let cap = self
            .global
            .max_degree
            .map_or(DegreeCap::Auto, DegreeCap::Fixed);
        self.echo("witnessSearch", json!(witness_search));
        NullaConfig {
            cap,
            witness_search,
            matrix_budget: self.global.budget.unwrap_or(DEFAULT_MATRIX_BUDGET),
            witness_budget: self.budget(),
        }
    }

    fn encode(
        &mut self,
        problem: Problem,
        k: Option<usize>,
        graph: &Path,
    ) -> Result<(Graph, Encoding), CliError> {
        let k = match (problem, k) {
            (_, Some(k)) => k,
            (Problem::Rc2, None) => 2,
            (_, None) => return Err(CliError::usage(format!("--k is required for {problem}"))),
        };
        if problem == Problem::Rc2 && k != 2 {
            return Err(CliError::usage(
                "rc2 is the k = 2 case; use --problem rck for other k",
            ));
        }
        self.echo("problem", json!(problem));
        self.echo("k", json!(k));
        let g = self.graph(graph)?;
        let mut job = EncodingJob::new(problem, k);
        if let Some(field) = self.field()? {
            job = job.with_field(field);
        }
        let encoding = job.run(&g, &EncodeConfig::default())?;
        self.echo("encodedField", json!(encoding.system.field()));
        Ok((g, encoding))
    }
}

fn format_point(field: FieldSpec, point: &[Coeff]) -> Value {
    json!(point.iter().map(|c| field.format(c)).collect::<Vec<_>>())
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string(value).expect("values serialize");
    text.push('\n');
    fs::write(path, text)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

fn outcome_payload(sys: &PolySystem, outcome: &SearchOutcome) -> Payload {
    let mut out = Payload::new();
    match outcome {
        SearchOutcome::Certificate(cert) => {
            out.insert("outcome".into(), json!("certificate"));
            out.insert("degree".into(), json!(cert.degree));
            out.insert("cofactors".into(), json!(cert.cofactors));
        }
        SearchOutcome::Exhausted { max_degree } => {
            out.insert("outcome".into(), json!("exhausted"));
            out.insert("degree".into(), json!(max_degree));
        }
        SearchOutcome::Witness(point) => {
            out.insert("outcome".into(), json!("witness"));
            out.insert("witness".into(), format_point(sys.field(), point));
        }
    }
    out
}

fn cmd_encode(
    run: &mut Run,
    problem: Problem,
    k: Option<usize>,
    graph: &Path,
    output: Option<&Path>,
) -> Result<Payload, CliError> {
    run.echo("output", json!(output));
    let (_, encoding) = run.encode(problem, k, graph)?;
    let sys = &encoding.system;
    let mut out = Payload::new();
    out.insert("field".into(), json!(sys.field()));
    out.insert("vars".into(), json!(sys.nvars()));
    out.insert("equations".into(), json!(sys.len()));
    out.insert("varMeaning".into(), json!(encoding.var_meaning));
    match output {
        Some(path) => write_json(path, &encoding)?,
        None => {
            out.insert("system".into(), json!(encoding));
        }
    }
    Ok(out)
}

fn cmd_nulla(
    run: &mut Run,
    system: &Path,
    witness_search: bool,
    output: Option<&Path>,
) -> Result<Payload, CliError> {
    run.echo("output", json!(output));
    let sys: PolySystem = run.inputs.read_json("system", system)?;
    let config = run.nulla_config(witness_search);
    run.echo("degreeCap", json!(resolve_cap(&sys, config.cap)));
    let outcome = search_certificate(&sys, &config)?;
    if let (Some(path), SearchOutcome::Certificate(cert)) = (output, &outcome) {
        write_json(path, cert)?;
    }
    Ok(outcome_payload(&sys, &outcome))
}

fn cmd_verify(run: &mut Run, cert: &Path, system: &Path) -> Result<Payload, CliError> {
    let sys: PolySystem = run.inputs.read_json("system", system)?;
    let cert: Certificate = run.inputs.read_json("certificate", cert)?;
    let valid = verify_certificate(&sys, &cert)?;
    let mut out = Payload::new();
    out.insert("valid".into(), json!(valid));
    out.insert("degree".into(), json!(cert.degree));
    out.insert("actualDegree".into(), json!(cert.actual_degree()));
    Ok(out)
}

fn cmd_membership(run: &mut Run, graph: &Path, emit_remainder: bool) -> Result<Payload, CliError> {
    let order = run.global.order.unwrap_or_default();
    run.echo("emitRemainder", json!(emit_remainder));
    run.echo("order", json!(order));
    let g = run.graph(graph)?;
    let config = MembershipConfig {
        order: MonomialOrder::new(order),
        ..MembershipConfig::default()
    };
    let verdict = rc2_membership_with(&g, &config)?;
    let mut out = Payload::new();
    out.insert("decision".into(), json!(verdict.decision));
    out.insert("reason".into(), json!(verdict.reason));
    out.insert(
        "remainderTerms".into(),
        json!(verdict.remainder.term_count()),
    );
    if emit_remainder {
        out.insert("remainder".into(), json!(verdict.remainder));
    }
    Ok(out)
}

fn cmd_oracle(
    run: &mut Run,
    problem: OracleProblem,
    k: Option<usize>,
    graph: &Path,
) -> Result<Payload, CliError> {
    run.echo("problem", json!(problem.name()));
    run.echo("k", json!(k));
    let g = run.graph(graph)?;
    let budget = run.budget();
    let need_k =
        || k.ok_or_else(|| CliError::usage(format!("--k is required for {}", problem.name())));
    let value = match problem {
        OracleProblem::Rc => json!(rc_exact(&g, budget)?),
        OracleProblem::RcAtMost => json!(rc_at_most(&g, need_k()?, budget)?),
        OracleProblem::Chromatic => json!(chromatic_feasible(&g, need_k()?, budget)?),
        OracleProblem::StableCount => json!(stable_set_count(&g, need_k()?, budget)?),
    };
    let mut out = Payload::new();
    out.insert("value".into(), value);
    Ok(out)
}

fn cmd_pipeline(
    run: &mut Run,
    problem: Problem,
    k: Option<usize>,
    graph: &Path,
) -> Result<Payload, CliError> {
    let (g, encoding) = run.encode(problem, k, graph)?;
    let sys = &encoding.system;
    let config = run.nulla_config(true);
    run.echo("degreeCap", json!(resolve_cap(sys, config.cap)));
    let outcome = search_certificate(sys, &config)?;
    let budget = run.budget();
    let mut out = Payload::new();
    let infeasible = match &outcome {
        SearchOutcome::Certificate(cert) => {
            out.insert("algebraic".into(), json!("infeasible"));
            out.insert("certificateDegree".into(), json!(cert.degree));
            Some(true)
        }
        SearchOutcome::Witness(point) => {
            out.insert("algebraic".into(), json!("feasible"));
            out.insert("witness".into(), format_point(sys.field(), point));
            Some(false)
        }
        SearchOutcome::Exhausted { max_degree } => {
            out.insert("algebraic".into(), json!("undecided"));
            out.insert("exhaustedAt".into(), json!(max_degree));
            None
        }
    };
    let (oracle, oracle_infeasible) = match problem {
        Problem::Rc2 | Problem::Rck => {
            let rc = rc_exact(&g, budget)?;
            (json!({ "rc": rc }), rc > encoding.k)
        }
        Problem::Vcolor => {
            let colorable = chromatic_feasible(&g, encoding.k, budget)?;
            (json!({ "colorable": colorable }), !colorable)
        }
        Problem::Stable => {
            let count = stable_set_count(&g, encoding.k, budget)?;
            (json!({ "stableSets": count }), count == 0)
        }
    };
    out.insert("oracle".into(), oracle);
    let agree = infeasible.map(|a| a == oracle_infeasible);
    run.discrepancy = agree == Some(false);
    out.insert("agree".into(), json!(agree));
    Ok(out)
}

fn dispatch(run: &mut Run, command: &Command) -> Result<Payload, CliError> {
    match command {
        Command::Encode {
            problem,
            k,
            graph,
            output,
        } => cmd_encode(run, *problem, *k, graph, output.as_deref()),
        Command::Nulla {
            system,
            witness_search,
            output,
        } => cmd_nulla(run, system, *witness_search, output.as_deref()),
        Command::Verify { cert, system } => cmd_verify(run, cert, system),
        Command::Membership {
            graph,
            emit_remainder,
        } => cmd_membership(run, graph, *emit_remainder),
        Command::Oracle { problem, k, graph } => cmd_oracle(run, *problem, *k, graph),
        Command::Pipeline { problem, k, graph } => cmd_pipeline(run, *problem, *k, graph),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Encode { .. } => "encode",
        Command::Nulla { .. } => "nulla",
        Command::Verify { .. } => "verify",
        Command::Membership { .. } => "membership",
        Command::Oracle { .. } => "oracle",
        Command::Pipeline { .. } => "pipeline",
    }
}

fn global_echo(global: &GlobalOpts) -> Payload {
    let mut config = Payload::new();
    config.insert("order".into(), json!(global.order));
    config.insert("maxDegree".into(), json!(global.max_degree));
    config.insert("budget".into(), json!(global.budget));
    config.insert("field".into(), json!(global.field));
    config.insert("timing".into(), json!(global.timing));
    config
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let echoed_argv = argv[1..].to_vec();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let report = Report {
                command: None,
                argv: echoed_argv,
                config: Payload::new(),
                inputs: Inputs::default(),
                wall_time_ms: None,
            };
            let rendered = e.to_string();
            let message = rendered.lines().next().unwrap_or_default();
            let message = message.strip_prefix("error: ").unwrap_or(message);
            println!("{}", report.render(&Err(CliError::usage(message))));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let start = Instant::now();
    let mut run = Run {
        global: &cli.global,
        inputs: Inputs::default(),
        config: global_echo(&cli.global),
        discrepancy: false,
    };
    let result = dispatch(&mut run, &cli.command);
    let wall_time_ms = cli.global.timing.then(|| start.elapsed().as_millis());
    let code = match &result {
        Ok(_) if run.discrepancy => EXIT_DISCREPANCY,
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    };
    let report = Report {
        command: Some(command_name(&cli.command).to_string()),
        argv: echoed_argv,
        config: run.config,
        inputs: run.inputs,
        wall_time_ms,
    };
    println!("{}", report.render(&result));
    ExitCode::from(code)
}
