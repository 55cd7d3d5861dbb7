use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dwtrace::io::{self, CenterDocument, CochainDocument, CohomologyDocument, DatumDocument, IoError, MultiPointDocument};
use dwtrace::monomial::DecompositionConfig;
use dwtrace::phases::{
    cohomology_group, symmetrize_in_class, symmetrize_theta, Obstruction, PhaseError, SolverConfig,
    SymmetrizeOutcome,
};
use dwtrace::trace_engine::{
    compute_trace, cyclic_invariance_check, drinfeld_center_report, fingerprint, solve_admissible_theta,
    RouteComparison, ThetaOutcome, TraceConfig, TraceError, VERSION,
};
use dwtrace::transgression::Certificates;
use dwtrace::CategoryInvariants;
use serde::Serialize;

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_OBSTRUCTION: u8 = 3;
const EXIT_BUDGET: u8 = 4;

/// Traces of defect circles in Dijkgraaf-Witten theory for finite groups.
#[derive(Parser, Debug)]
#[command(name = "dwtrace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the randomized decompositions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Eigenvalue clustering tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,
    /// Denominator bound for the Q/Z solvers (default |G|^2 times the
    /// target's denominators).
    #[arg(long, global = true)]
    denominator_bound: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certificate checks of a defect datum.
    Check { input: PathBuf },
    /// Both pipelines on a defect datum, compared.
    Trace { input: PathBuf },
    /// Drinfeld center of Vect(G)^omega.
    Center { input: PathBuf },
    /// Solve d theta = iota1^* omega / iota2^* omega.
    SolveTheta { input: PathBuf },
    /// H^n(G, Q/Z) with generators.
    Cohomology { input: PathBuf },
    /// Gauge a 3-cocycle (or 2-cochain) to a symmetric representative.
    Symmetrize { input: PathBuf },
    /// Cyclic invariance of a multi-point trace.
    Cyclic { input: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Trace { .. } => "trace",
            Command::Center { .. } => "center",
            Command::SolveTheta { .. } => "solve-theta",
            Command::Cohomology { .. } => "cohomology",
            Command::Symmetrize { .. } => "symmetrize",
            Command::Cyclic { .. } => "cyclic",
        }
    }

    fn input(&self) -> &Path {
        match self {
            Command::Check { input }
            | Command::Trace { input }
            | Command::Center { input }
            | Command::SolveTheta { input }
            | Command::Cohomology { input }
            | Command::Symmetrize { input }
            | Command::Cyclic { input } => input,
        }
    }
}

/// What a command produced: exit code, structured result, human text.
struct Outcome {
    code: u8,
    fingerprint: String,
    status: &'static str,
    result: serde_json::Value,
    human: String,
}

#[derive(Serialize)]
struct Envelope<'a> {
    version: &'a str,
    command: &'a str,
    fingerprint: &'a str,
    seed: u64,
    status: &'a str,
    exit_code: u8,
    result: &'a serde_json::Value,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    kind: &'static str,
    stage: Option<String>,
    message: String,
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    kind: &'a str,
    stage: Option<&'a str>,
    message: &'a str,
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let (code, kind) = if e.is_parse_error() {
            (EXIT_PARSE, "parse_error")
        } else if e.is_budget_exceeded() {
            (EXIT_BUDGET, "budget_exceeded")
        } else {
            match e {
                IoError::ThetaObstructed(_) | IoError::NotSymmetrizable => (EXIT_OBSTRUCTION, "obstruction"),
                _ => (EXIT_FAILURE, "error"),
            }
        };
        let stage = match &e {
            IoError::Trace(t) => t.stage().map(|s| s.to_string()),
            _ => None,
        };
        Failure { code, kind, stage, message: e.to_string() }
    }
}

impl From<TraceError> for Failure {
    fn from(e: TraceError) -> Self {
        IoError::Trace(e).into()
    }
}

impl From<PhaseError> for Failure {
    fn from(e: PhaseError) -> Self {
        IoError::Phase(e).into()
    }
}

struct Settings {
    trace: TraceConfig,
}

impl Settings {
    fn from_cli(cli: &Cli) -> Self {
        let decomposition = DecompositionConfig { seed: cli.seed, tolerance: cli.tolerance, ..Default::default() };
        let solver = SolverConfig { denominator_bound: cli.denominator_bound, ..Default::default() };
        Settings { trace: TraceConfig { decomposition, solver } }
    }

    fn solver(&self) -> &SolverConfig {
        &self.trace.solver
    }

    fn describe(&self) -> String {
        let d = &self.trace.decomposition;
        format!("seed={} tolerance={:e} bound={:?}", d.seed, d.tolerance, self.trace.solver.denominator_bound)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings::from_cli(&cli);
    let command = cli.command.name();
    let (code, text) = match run(&cli.command, &settings) {
        Ok(out) => (out.code, render(&cli, &settings, command, &out)),
        Err(f) => (f.code, render_failure(&cli, &settings, command, &f)),
    };
    if let Err(e) = emit(cli.output.as_deref(), &text) {
        eprintln!("dwtrace: cannot write output: {e}");
        return ExitCode::from(EXIT_FAILURE);
    }
    ExitCode::from(code)
}

fn render(cli: &Cli, settings: &Settings, command: &str, out: &Outcome) -> String {
    match cli.format {
        Format::Human => out.human.clone(),
        Format::Structured => {
            let env = Envelope {
                version: VERSION,
                command,
                fingerprint: &out.fingerprint,
                seed: settings.trace.decomposition.seed,
                status: out.status,
                exit_code: out.code,
                result: &out.result,
            };
            serde_json::to_string_pretty(&env).expect("envelope serializes") + "\n"
        }
    }
}

fn render_failure(cli: &Cli, settings: &Settings, command: &str, f: &Failure) -> String {
    match cli.format {
        Format::Human => {
            let stage = f.stage.as_deref().map(|s| format!(" ({s})")).unwrap_or_default();
            eprintln!("dwtrace {command}: {}{stage}: {}", f.kind, f.message);
            String::new()
        }
        Format::Structured => {
            #[derive(Serialize)]
            struct E<'a> {
                version: &'a str,
                command: &'a str,
                seed: u64,
                status: &'a str,
                exit_code: u8,
                error: ErrorRecord<'a>,
            }
            let e = E {
                version: VERSION,
                command,
                seed: settings.trace.decomposition.seed,
                status: "error",
                exit_code: f.code,
                error: ErrorRecord { kind: f.kind, stage: f.stage.as_deref(), message: &f.message },
            };
            serde_json::to_string_pretty(&e).expect("error serializes") + "\n"
        }
    }
}

/// Writes all of `text` at once; files go through a temporary and a rename.
fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
        Some(p) => {
            let mut tmp = p.as_os_str().to_owned();
            tmp.push(".partial");
            let tmp = PathBuf::from(tmp);
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, p)
        }
    }
}

fn read<D: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<D, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        kind: "parse_error",
        stage: None,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(io::parse(&text)?)
}

fn json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn yes(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn run(command: &Command, s: &Settings) -> Result<Outcome, Failure> {
    let input = command.input();
    match command {
        Command::Check { .. } => check(read(input)?, s),
        Command::Trace { .. } => trace(read(input)?, s),
        Command::Center { .. } => center(read(input)?, s),
        Command::SolveTheta { .. } => solve_theta(read(input)?, s),
        Command::Cohomology { .. } => cohomology(read(input)?, s),
        Command::Symmetrize { .. } => symmetrize(read(input)?, s),
        Command::Cyclic { .. } => cyclic(read(input)?, s),
    }
}

fn certificate_lines(c: &Certificates) -> String {
    let mut h = String::new();
    let slots = |r: &dwtrace::phases::NormalizationReport| {
        let f = r.failing_slots();
        if f.is_empty() {
            String::new()
        } else {
            format!(" (slots {:?} at {:?})", f, r.witness.as_deref().unwrap_or_default())
        }
    };
    let wit = |w: &Option<Vec<usize>>| w.as_ref().map(|w| format!(" at {w:?}")).unwrap_or_default();
    let _ = writeln!(h, "omega cocycle:        {}{}", yes(c.omega_cocycle.ok), wit(&c.omega_cocycle.witness));
    let _ = writeln!(h, "omega normalized:     {}{}", yes(c.omega_normalized.full()), slots(&c.omega_normalized));
    let _ = writeln!(h, "theta normalized:     {}{}", yes(c.theta_normalized.full()), slots(&c.theta_normalized));
    let _ = writeln!(h, "defect condition:     {}{}", yes(c.defect_condition.ok), wit(&c.defect_condition.witness));
    let sym = |ok: bool, w: &Option<dwtrace::phases::SymmetryWitness>| {
        let tail = w.as_ref().map(|w| format!(" (relation {} at {:?})", w.relation, w.args)).unwrap_or_default();
        format!("{}{tail}", if ok { "yes" } else { "no" })
    };
    let _ = writeln!(h, "omega tetrahedral:    {} [optional]", sym(c.omega_tetrahedral.ok, &c.omega_tetrahedral.witness));
    let _ = writeln!(h, "theta triangle:       {} [optional]", sym(c.theta_triangle.ok, &c.theta_triangle.witness));
    h
}

fn check(doc: DatumDocument, s: &Settings) -> Result<Outcome, Failure> {
    let d = io::resolve_datum(&doc, s.solver())?;
    let c = d.certificates();
    let ok = c.admitted();
    let mut human = certificate_lines(c);
    let _ = writeln!(human, "admitted: {}", ok);
    #[derive(Serialize)]
    struct R<'a> {
        admitted: bool,
        certificates: &'a Certificates,
        theta: Vec<String>,
        failures: Vec<String>,
    }
    let result = json(&R { admitted: ok, certificates: c, theta: io::cochain_strings(d.theta()), failures: c.failures() });
    Ok(Outcome {
        code: if ok { 0 } else { EXIT_FAILURE },
        fingerprint: fingerprint(&d, &s.trace),
        status: if ok { "ok" } else { "certificate_failure" },
        result,
        human,
    })
}

fn invariants_line(label: &str, inv: &CategoryInvariants) -> String {
    format!("{label}: {} simples, total dims {:?}, graded dims {:?}\n", inv.count, inv.total_dims, inv.graded_dims)
}

fn trace(doc: DatumDocument, s: &Settings) -> Result<Outcome, Failure> {
    let d = io::resolve_datum(&doc, s.solver())?;
    let fp = fingerprint(&d, &s.trace);
    if !d.certificates().admitted() {
        let human = certificate_lines(d.certificates()) + "admitted: false\n";
        return Ok(Outcome {
            code: EXIT_FAILURE,
            fingerprint: fp,
            status: "certificate_failure",
            result: json(&d.certificates().failures()),
            human,
        });
    }
    let r = compute_trace::<f64>(&d, &s.trace)?;
    let ok = r.all_checks_pass();
    let mut h = format!("dwtrace {VERSION}  fingerprint {}\n", r.fingerprint);
    let t = &r.transgression;
    let routes = match &t.closed_vs_simplicial {
        RouteComparison::Equal => "equal".to_string(),
        RouteComparison::Differ { first } => format!("DIFFER at {first:?}"),
        RouteComparison::Skipped { reason } => format!("skipped ({reason})"),
    };
    let _ = writeln!(
        h,
        "transgression: groupoid cocycle {}, mixed normalization {}, closed form vs simplicial {routes}",
        yes(t.groupoid_cocycle),
        yes(t.mixed_normalization)
    );
    let _ = writeln!(h, "relations: rho {:?}, varrho {:?}, mixed {:?}", r.relations.rho, r.relations.varrho, r.relations.mixed);
    h += &invariants_line("gauge side    ", &r.gauge);
    h += &invariants_line("algebraic side", &r.algebraic);
    let _ = writeln!(h, "agreement: {}", r.agreement);
    for (stage, dt) in &r.timings {
        let _ = writeln!(h, "  {stage}: {dt:.2?}");
    }
    if !r.agreement {
        h += "DISAGREEMENT: the two pipelines produced different categories\n";
    }
    Ok(Outcome {
        code: if ok { 0 } else { EXIT_FAILURE },
        fingerprint: fp,
        status: if ok { "agreement" } else { "disagreement" },
        result: json(&r),
        human: h,
    })
}

fn center(doc: CenterDocument, s: &Settings) -> Result<Outcome, Failure> {
    let (g, omega) = io::resolve_center(&doc, s.solver())?;
    let r = drinfeld_center_report::<f64>(&g, &omega, &s.trace)?;
    let mut h = invariants_line("Drinfeld center", &r.trace.gauge);
    h += &invariants_line("algebraic      ", &r.trace.algebraic);
    h += &invariants_line("conjugation    ", &r.conjugation);
    let _ = writeln!(h, "agreement: {}", r.agreement);
    Ok(Outcome {
        code: if r.agreement { 0 } else { EXIT_FAILURE },
        fingerprint: io::document_fingerprint(&doc, &s.describe()),
        status: if r.agreement { "agreement" } else { "disagreement" },
        result: json(&r),
        human: h,
    })
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ObstructionRecord {
    NonzeroClass { class: Vec<(u64, u64)> },
    BeyondBound { bound: u64 },
}

impl From<&Obstruction> for ObstructionRecord {
    fn from(o: &Obstruction) -> Self {
        match o {
            Obstruction::NonzeroClass { class, .. } => ObstructionRecord::NonzeroClass { class: class.clone() },
            Obstruction::BeyondBound { bound } => ObstructionRecord::BeyondBound { bound: *bound },
        }
    }
}

fn solve_theta(doc: DatumDocument, s: &Settings) -> Result<Outcome, Failure> {
    let (g, omega, emb) = io::resolve_parts(&doc, s.solver())?;
    let fp = io::document_fingerprint(&doc, &s.describe());
    match solve_admissible_theta(&g, &omega, &emb, s.solver())? {
        ThetaOutcome::Solved { theta, triangle_symmetric, bound } => {
            #[derive(Serialize)]
            struct R {
                theta: Vec<String>,
                triangle_symmetric: bool,
                bound: u64,
            }
            let values = io::cochain_strings(&theta);
            let human = format!(
                "theta ({} values, bound {bound}, triangle symmetric {triangle_symmetric}):\n{}\n",
                values.len(),
                values.join(" ")
            );
            Ok(Outcome {
                code: 0,
                fingerprint: fp,
                status: "solved",
                result: json(&R { theta: values, triangle_symmetric, bound }),
                human,
            })
        }
        ThetaOutcome::Obstructed(o) => {
            let rec = ObstructionRecord::from(&o);
            let human = match &rec {
                ObstructionRecord::NonzeroClass { class } => {
                    let coords: Vec<String> = class.iter().map(|(f, c)| format!("{c} mod {f}")).collect();
                    format!("obstructed: the target class in H^3(H, Q/Z) is nonzero ({})\n", coords.join(", "))
                }
                ObstructionRecord::BeyondBound { bound } => {
                    format!("obstructed: no solution with denominators dividing {bound}\n")
                }
            };
            Ok(Outcome { code: EXIT_OBSTRUCTION, fingerprint: fp, status: "obstructed", result: json(&rec), human })
        }
    }
}

fn cohomology(doc: CohomologyDocument, s: &Settings) -> Result<Outcome, Failure> {
    let g = io::build_group(&doc.group)?;
    let rep = cohomology_group(&g, doc.degree, s.solver())?;
    #[derive(Serialize)]
    struct R {
        degree: usize,
        invariant_factors: Vec<u64>,
        representatives: Vec<Vec<String>>,
    }
    let reps: Vec<Vec<String>> = rep.representatives.iter().map(io::cochain_strings).collect();
    let mut h = format!("H^{}(G, Q/Z) invariant factors {:?}\n", doc.degree, rep.invariant_factors);
    for (f, r) in rep.invariant_factors.iter().zip(&reps) {
        let _ = writeln!(h, "  order {f}: {}", r.join(" "));
    }
    Ok(Outcome {
        code: 0,
        fingerprint: io::document_fingerprint(&doc, &s.describe()),
        status: "ok",
        result: json(&R { degree: doc.degree, invariant_factors: rep.invariant_factors.clone(), representatives: reps }),
        human: h,
    })
}

fn symmetrize(doc: CochainDocument, s: &Settings) -> Result<Outcome, Failure> {
    let c = io::resolve_cochain(&doc)?;
    let outcome = match doc.degree {
        3 => symmetrize_in_class(&c, s.solver())?,
        2 => symmetrize_theta(&c, s.solver())?,
        d => return Err(IoError::Invalid(format!("symmetrize takes degree 2 or 3, got {d}")).into()),
    };
    let fp = io::document_fingerprint(&doc, &s.describe());
    #[derive(Serialize)]
    #[serde(tag = "kind", rename_all = "snake_case")]
    enum R {
        Symmetric { symmetric: Vec<String>, beta: Vec<String>, bound: u64 },
        NoSymmetricRepresentative,
        BeyondBound { bound: u64 },
    }
    let (code, status, r, human) = match outcome {
        SymmetrizeOutcome::Symmetric { symmetric, beta, bound } => {
            let sym = io::cochain_strings(&symmetric);
            let human = format!("symmetric representative (bound {bound}):\n{}\n", sym.join(" "));
            (0, "symmetric", R::Symmetric { symmetric: sym, beta: io::cochain_strings(&beta), bound }, human)
        }
        SymmetrizeOutcome::NoSymmetricRepresentative { .. } => (
            EXIT_OBSTRUCTION,
            "obstructed",
            R::NoSymmetricRepresentative,
            "obstructed: the class has no symmetric representative\n".to_string(),
        ),
        SymmetrizeOutcome::BeyondBound { bound } => (
            EXIT_OBSTRUCTION,
            "obstructed",
            R::BeyondBound { bound },
            format!("obstructed: no symmetric representative with denominators dividing {bound}\n"),
        ),
    };
    Ok(Outcome { code, fingerprint: fp, status, result: json(&r), human })
}

fn cyclic(doc: MultiPointDocument, s: &Settings) -> Result<Outcome, Failure> {
    let mp = io::resolve_multi_point(&doc, s.solver())?;
    let r = cyclic_invariance_check::<f64>(&mp, &s.trace.decomposition)?;
    let mut h = String::new();
    for (i, inv) in r.rotations.iter().enumerate() {
        h += &invariants_line(&format!("rotation {i}"), inv);
    }
    let _ = writeln!(h, "cyclically invariant: {}", r.invariant);
    Ok(Outcome {
        code: if r.invariant { 0 } else { EXIT_FAILURE },
        fingerprint: io::document_fingerprint(&doc, &s.describe()),
        status: if r.invariant { "invariant" } else { "not_invariant" },
        result: json(&r),
        human: h,
    })
}
