use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kbig::correspondence::{
    enumerate_frames, gl_check, gl_frame_condition, gl_formula, glivenko_check, glivenko_suite, transfer_check,
    transfer_suite, FrameFamily,
};
use kbig::fmodel::{
    brute_force, eval_fmodel, sat, valid_kbig, valid_kg2, FModel, SolveStats, SolverOptions, ValidOutcome,
    Verdict,
};
use kbig::formula::{axiom_corpus, nnf, plus_translation, schemas, Calculus};
use kbig::semantics::{eval_kbig, eval_kg2, frame_valid_kbig, FrameVerdict, KG2Model, ModelFile, PairValue};
use kbig::{parse, Error, Formula};

#[derive(Parser)]
#[command(name = "kbig", version, about = "Bi-Goedel modal logic: evaluation, tableau solving and frame correspondence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FormulaInput {
    /// Formula text
    #[arg(long)]
    formula: Option<String>,
    /// File holding the formula
    #[arg(long)]
    formula_file: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalFormula {
    /// Check this formula instead of running the built-in suite
    #[arg(long)]
    formula: Option<String>,
    #[arg(long)]
    formula_file: Option<PathBuf>,
}

#[derive(Args)]
struct ModelInput {
    /// JSON model file
    #[arg(long)]
    model: PathBuf,
    /// World to evaluate at; every world when omitted
    #[arg(long)]
    world: Option<String>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: FormulaInput,
    /// Grid 0, 1/R, ..., 1 for the tableau's values
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    grid: u32,
    /// Refine the grid until the verdict no longer depends on it
    #[arg(long)]
    exhaustive: bool,
    /// Print every rule application
    #[arg(long)]
    trace: bool,
    /// Write the witness model here instead of printing it
    #[arg(long)]
    witness_out: Option<PathBuf>,
    /// Rule applications before giving up
    #[arg(long, default_value_t = 2_000_000)]
    max_steps: u64,
}

#[derive(Args)]
struct SuiteArgs {
    /// Frames range over all crisp frames with this many worlds
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=4))]
    max_worlds: u64,
    /// Random formulas per generated group
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print one line per checked frame or world
    #[arg(long)]
    records: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CalculusArg {
    Kbig,
    Kg2,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and classify a formula
    Parse(FormulaInput),
    /// Negation normal form
    Nnf(FormulaInput),
    /// Translation into the `!`-free language
    Translate(FormulaInput),
    /// Value of a formula in a KbiG model (F-model semantics when the file has `T`)
    Eval {
        #[command(flatten)]
        model: ModelInput,
        #[command(flatten)]
        input: FormulaInput,
    },
    /// Value pair of a formula in a KG2 model
    Eval2 {
        #[command(flatten)]
        model: ModelInput,
        #[command(flatten)]
        input: FormulaInput,
    },
    /// Satisfiability (value 1 somewhere) with the tableau
    Sat {
        #[command(flatten)]
        solve: SolveArgs,
        /// Search models with at most this many worlds exhaustively instead
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4))]
        max_worlds: Option<u64>,
    },
    /// KbiG validity with the tableau
    Valid(SolveArgs),
    /// KG2 validity with the tableau
    Valid2(SolveArgs),
    /// Validity on the frame of a model file
    FrameCheck {
        #[command(flatten)]
        model: ModelInput,
        #[command(flatten)]
        input: FormulaInput,
        /// Write the refuting model here instead of printing it
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Classical versus KbiG validity on all small frames
    Transfer {
        #[command(flatten)]
        input: OptionalFormula,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Double-negation translations on all small frames
    Glivenko {
        #[command(flatten)]
        input: OptionalFormula,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// The Loeb formula against its frame condition
    Gl {
        /// Check the worlds of this model's frame only
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Axiom schemas of the Hilbert calculi
    Axioms {
        #[arg(long, value_enum, default_value_t = CalculusArg::Kbig)]
        calculus: CalculusArg,
        /// List instances over formulas of this depth instead of the schemas
        #[arg(long)]
        depth: Option<usize>,
        /// Also decide every listed formula on this grid
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        grid: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconclusive(_) => Failure::Inconclusive(e.to_string()),
            Error::TooLarge(_) => Failure::Inconclusive(format!("inconclusive: {e}")),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Out {
    match command {
        Command::Parse(input) => cmd_parse(&read_formula(&input)?),
        Command::Nnf(input) => Ok(format!("{}\n", nnf(&read_formula(&input)?))),
        Command::Translate(input) => {
            let f = read_formula(&input)?;
            Ok(format!("{}\n", plus_translation(&nnf(&f)).map_err(Error::from)?))
        }
        Command::Eval { model, input } => cmd_eval(&model, &no_dmneg(read_formula(&input)?, "eval", "eval2")?),
        Command::Eval2 { model, input } => cmd_eval2(&model, &read_formula(&input)?),
        Command::Sat { solve, max_worlds } => {
            let f = no_dmneg(read_formula(&solve.input)?, "sat", "valid2")?;
            match max_worlds {
                Some(n) => cmd_bounded_sat(&f, solve.grid, n as usize, solve.witness_out.as_deref()),
                None => cmd_sat(&f, &solve),
            }
        }
        Command::Valid(solve) => {
            let f = no_dmneg(read_formula(&solve.input)?, "valid", "valid2")?;
            cmd_valid(&f, &solve, false)
        }
        Command::Valid2(solve) => cmd_valid(&read_formula(&solve.input)?, &solve, true),
        Command::FrameCheck { model, input, witness_out } => {
            let f = no_dmneg(read_formula(&input)?, "frame-check", "valid2")?;
            cmd_frame_check(&model, &f, witness_out.as_deref())
        }
        Command::Transfer { input, suite } => {
            let n = suite.max_worlds as usize;
            match optional_formula(&input)? {
                Some(f) => {
                    let f = no_dmneg(f, "transfer", "valid2")?;
                    let rep = transfer_check(&f, &FrameFamily::AllCrisp(n))?;
                    Ok(if suite.records { rep.render() } else { format!("{}\n", rep.summary()) })
                }
                None => Ok(transfer_suite(n, suite.samples, suite.seed)?.render(suite.records)),
            }
        }
        Command::Glivenko { input, suite } => {
            let n = suite.max_worlds as usize;
            let rep = match optional_formula(&input)? {
                Some(f) => glivenko_check(&[f], n)?,
                None => glivenko_suite(n, suite.samples, suite.seed)?,
            };
            Ok(rep.render(suite.records))
        }
        Command::Gl { model, suite } => cmd_gl(model.as_deref(), &suite),
        Command::Axioms { calculus, depth, grid } => cmd_axioms(calculus, depth, grid),
    }
}

fn read_formula(input: &FormulaInput) -> Result<Formula, Failure> {
    let text = match (&input.formula, &input.formula_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(Failure::Usage("a formula is required".into())),
    };
    parse(text.trim()).map_err(|e| Failure::Usage(format!("parse error: {e}")))
}

fn optional_formula(input: &OptionalFormula) -> Result<Option<Formula>, Failure> {
    if input.formula.is_none() && input.formula_file.is_none() {
        return Ok(None);
    }
    read_formula(&FormulaInput { formula: input.formula.clone(), formula_file: input.formula_file.clone() }).map(Some)
}

fn no_dmneg(f: Formula, command: &str, hint: &str) -> Result<Formula, Failure> {
    if f.has_dmneg() {
        Err(Failure::Usage(format!("`!` is not supported by `{command}`; use `{hint}` for formulas with `!`")))
    } else {
        Ok(f)
    }
}

fn load_model(path: &Path) -> Result<ModelFile, Failure> {
    Ok(ModelFile::load(path)?)
}

fn write_witness(path: &Path, file: &ModelFile) -> Result<(), Failure> {
    std::fs::write(path, file.to_json()).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Writes the witness to `path`, or appends it to `out` when there is none.
fn emit_witness(out: &mut String, path: Option<&Path>, file: &ModelFile) -> Result<(), Failure> {
    match path {
        Some(p) => write_witness(p, file),
        None => {
            out.push_str(&file.to_json());
            Ok(())
        }
    }
}

fn worlds_to_report(file: &ModelFile, world: &Option<String>) -> Result<Vec<usize>, Failure> {
    match world {
        Some(w) => Ok(vec![file.frame.index_of(w)?]),
        None => Ok((0..file.frame.len()).collect()),
    }
}

fn cmd_parse(f: &Formula) -> Out {
    let classes = f.syntactic_classes();
    let vars: Vec<String> = f.vars().into_iter().collect();
    Ok(format!(
        "{f}\nclass: {:?}\nsize: {}\ndepth: {}\nvars: {}\nmonotone: {} positive: {} sahlqvist: {}\n",
        f.classify(),
        f.size(),
        f.modal_depth(),
        vars.join(","),
        classes.monotone,
        classes.positive,
        classes.sahlqvist
    ))
}

fn cmd_eval(input: &ModelInput, f: &Formula) -> Out {
    let file = load_model(&input.model)?;
    let worlds = worlds_to_report(&file, &input.world)?;
    let single = input.world.is_some();
    let mut out = String::new();
    let fm = file.t.is_some().then(|| FModel::from_file(&file)).transpose()?;
    for w in worlds {
        let name = file.frame.world(w);
        let value = match &fm {
            Some(fm) => eval_fmodel(fm, name, f)?,
            None => eval_kbig(&file.kbig(), name, f)?,
        };
        if single {
            let _ = writeln!(out, "{value}");
        } else {
            let _ = writeln!(out, "{name}: {value}");
        }
    }
    Ok(out)
}

/// With `T` present both components are computed through the translation
/// under F-model semantics: the truth support of `f` and of `!f`.
fn kg2_value(file: &ModelFile, model: &KG2Model, world: &str, f: &Formula) -> Result<PairValue, Failure> {
    match &file.t {
        None => Ok(eval_kg2(model, world, f)?),
        Some(t) => {
            let fm = FModel::new(model.plus_model(), t.clone())?;
            let tr = |g: &Formula| plus_translation(&nnf(g)).map_err(Error::from);
            let pos = eval_fmodel(&fm, world, &tr(f)?)?;
            let neg = eval_fmodel(&fm, world, &tr(&Formula::dmneg(f.clone()))?)?;
            Ok(PairValue::new(pos, neg))
        }
    }
}

fn cmd_eval2(input: &ModelInput, f: &Formula) -> Out {
    let file = load_model(&input.model)?;
    let model = file.kg2()?;
    let mut out = String::new();
    for w in worlds_to_report(&file, &input.world)? {
        let name = file.frame.world(w);
        let value = kg2_value(&file, &model, name, f)?;
        if input.world.is_some() {
            let _ = writeln!(out, "{value}");
        } else {
            let _ = writeln!(out, "{name}: {value}");
        }
    }
    Ok(out)
}

fn solver_options(solve: &SolveArgs) -> SolverOptions {
    SolverOptions { max_steps: solve.max_steps, trace: solve.trace, exhaustive: solve.exhaustive }
}

fn push_trace(out: &mut String, stats: &SolveStats) {
    for line in &stats.trace {
        let _ = writeln!(out, "trace {line}");
    }
}

fn report_stats(stats: &SolveStats) {
    eprintln!(
        "steps={} max_path_entries={} root_size={} r={}",
        stats.steps, stats.max_path_entries, stats.root_size, stats.r
    );
}

fn cmd_sat(f: &Formula, solve: &SolveArgs) -> Out {
    let (verdict, stats) = sat(f, solve.grid, &solver_options(solve))?;
    report_stats(&stats);
    let mut out = String::new();
    push_trace(&mut out, &stats);
    match verdict {
        Verdict::Sat { witness, world } => {
            let _ = writeln!(out, "sat at {world} (r={})", stats.r);
            emit_witness(&mut out, solve.witness_out.as_deref(), &witness.to_file())?;
        }
        Verdict::UnsatAtGrid { r } => {
            let _ = writeln!(out, "unsat (grid-relative r={r})");
        }
        Verdict::Unsat { complete: true } => out.push_str("unsat (complete)\n"),
        Verdict::Unsat { complete: false } => {
            let _ = writeln!(out, "unsat (grid-relative r={})", stats.r);
        }
    }
    Ok(out)
}

fn cmd_bounded_sat(f: &Formula, r: u32, max_worlds: usize, witness_out: Option<&Path>) -> Out {
    let max_t = f.size() + 2;
    let mut out = String::new();
    match brute_force(f, r, max_worlds, max_t, 50_000_000)? {
        Some((witness, world)) => {
            let _ = writeln!(out, "sat at {world} (r={r})");
            emit_witness(&mut out, witness_out, &witness.to_file())?;
        }
        None => {
            let _ = writeln!(out, "no model with at most {max_worlds} worlds (r={r})");
        }
    }
    Ok(out)
}

fn cmd_valid(f: &Formula, solve: &SolveArgs, kg2: bool) -> Out {
    let opts = solver_options(solve);
    let (outcome, stats) = if kg2 { valid_kg2(f, solve.grid, &opts)? } else { valid_kbig(f, solve.grid, &opts)? };
    report_stats(&stats);
    let mut out = String::new();
    push_trace(&mut out, &stats);
    match outcome {
        ValidOutcome::Valid { r, complete } => {
            let kind = if complete { "complete" } else { "grid-relative" };
            let _ = writeln!(out, "valid ({kind} r={r}): all branches closed");
        }
        ValidOutcome::Countermodel { witness, world, value } => {
            let _ = writeln!(out, "invalid: countermodel at {world} with value {value} (r={})", stats.r);
            let file = if kg2 {
                ModelFile::from_kg2(&KG2Model::from_plus_model(&witness.model)?).with_t(witness.t.clone())
            } else {
                witness.to_file()
            };
            emit_witness(&mut out, solve.witness_out.as_deref(), &file)?;
        }
    }
    Ok(out)
}

fn cmd_frame_check(input: &ModelInput, f: &Formula, witness_out: Option<&Path>) -> Out {
    let file = load_model(&input.model)?;
    let mut out = String::new();
    match frame_valid_kbig(&file.frame, f, input.world.as_deref())? {
        FrameVerdict::Valid => {
            let at = input.world.as_deref().map_or("every world".to_string(), |w| format!("world {w}"));
            let _ = writeln!(out, "valid on the frame at {at}");
        }
        FrameVerdict::Refuted(r) => {
            let _ = writeln!(out, "refuted at {} with value {}", file.frame.world(r.world), r.value);
            emit_witness(&mut out, witness_out, &ModelFile::from_kbig(&r.model))?;
        }
    }
    Ok(out)
}

fn cmd_gl(model: Option<&Path>, suite: &SuiteArgs) -> Out {
    let frames = match model {
        Some(path) => vec![load_model(path)?.frame],
        None => enumerate_frames(&FrameFamily::AllCrisp(suite.max_worlds as usize))?,
    };
    let mut out = String::new();
    let (mut worlds, mut agree) = (0, 0);
    for frame in &frames {
        for (w, name) in frame.worlds().iter().enumerate() {
            let v = gl_check(frame, name)?;
            debug_assert_eq!(v.frame_condition, gl_frame_condition(frame, w));
            worlds += 1;
            agree += usize::from(v.agrees());
            if suite.records || model.is_some() {
                let _ = writeln!(
                    out,
                    "record frame={frame} world={name} formula={} condition={}",
                    v.formula_holds, v.frame_condition
                );
            }
        }
    }
    let _ = writeln!(out, "summary formula={} frames={} worlds={worlds} agree={agree}", gl_formula(), frames.len());
    Ok(out)
}

fn cmd_axioms(calculus: CalculusArg, depth: Option<usize>, grid: Option<u32>) -> Out {
    let calculus = match calculus {
        CalculusArg::Kbig => Calculus::HKbiG,
        CalculusArg::Kg2 => Calculus::HKG2,
    };
    let listed: Vec<(&str, Formula)> = match depth {
        None => schemas(calculus).into_iter().map(|s| (s.id, s.template)).collect(),
        Some(d) => axiom_corpus(calculus, d).into_iter().map(|i| (i.schema, i.formula)).collect(),
    };
    let mut out = String::new();
    let mut failed = 0;
    for (id, f) in &listed {
        match grid {
            None => {
                let _ = writeln!(out, "{id}: {f}");
            }
            Some(r) => {
                let valid = match calculus {
                    Calculus::HKbiG => valid_kbig(f, r, &SolverOptions::default())?.0.is_valid(),
                    Calculus::HKG2 => valid_kg2(f, r, &SolverOptions::default())?.0.is_valid(),
                };
                failed += usize::from(!valid);
                let _ = writeln!(out, "{id}: {f} {}", if valid { "valid" } else { "INVALID" });
            }
        }
    }
    if let Some(r) = grid {
        let _ = writeln!(out, "summary formulas={} invalid={failed} r={r}", listed.len());
    }
    Ok(out)
}
