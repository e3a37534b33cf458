//! `overhang`: generate, check, simulate, verify and render block stacks.
//!
//! Exit codes: 0 success, 1 a negative answer (unbalanced, inapplicable
//! move, failed check), 2 bad input.

mod diag;
mod render;
mod script;
mod stackfile;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use overhang::balance::{check_balance, BalanceVerdict};
use overhang::generators::{gen_brickwall, gen_diamond, gen_harmonic, gen_inverted_triangle};
use overhang::harness::{end_to_end_with, Options, MIN_PRECISION_BITS};
use overhang::massmove::{check_spread_lemma, weight_constraint_scan, MassError, Trace};
use overhang::model::{contacts, overhang, Stack};
use overhang::rational::Exact;

use crate::script::{parse_script, MoveScript};
use crate::stackfile::{parse_stack, serialize_stack};

const PRECISION_VAR: &str = "OVERHANG_PRECISION_BITS";

#[derive(Parser)]
#[command(
    name = "overhang",
    version,
    about = "Exact balance checks and overhang bounds for block stacks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one of the named constructions as a stack file.
    Generate { kind: Kind, size: u64, out: PathBuf },
    /// Decide whether stacks are balanced.
    Check {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Print the balancing forces as `(upper lower position magnitude)`.
        #[arg(long)]
        certificate: bool,
        /// Process the inputs concurrently.
        #[arg(long)]
        batch: bool,
    },
    /// Replay a move script and print the final distribution.
    Simulate {
        script: PathBuf,
        /// Print moments and spread per step and check the weight constraint.
        #[arg(long)]
        report: bool,
    },
    /// Run the full verification pipeline on stacks.
    Verify {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Also record the sharper, non-normative bounds.
        #[arg(long)]
        improved: bool,
        /// Process the inputs concurrently.
        #[arg(long)]
        batch: bool,
    },
    /// Draw a stack or a move script as SVG.
    Render {
        input: PathBuf,
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Stack)]
        mode: Mode,
        /// Draw balancing forces (stack mode, balanced stacks only).
        #[arg(long)]
        forces: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Harmonic,
    Brickwall,
    Triangle,
    Diamond,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Stack,
    Trace,
}

/// What a command prints and the code it exits with.
struct Outcome {
    stdout: String,
    stderr: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn negative(stdout: String, stderr: String) -> Self {
        Outcome {
            stdout,
            stderr,
            code: 1,
        }
    }

    fn input_error(path: &Path, err: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("{}: {err}\n", path.display()),
            code: 2,
        }
    }

    fn emit(&self) {
        print!("{}", self.stdout);
        eprint!("{}", self.stderr);
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome::input_error(path, e))
}

fn load_stack(path: &Path) -> Result<Stack, Outcome> {
    parse_stack(&read(path)?).map_err(|d| Outcome::input_error(path, d))
}

fn load_script(path: &Path) -> Result<MoveScript, Outcome> {
    parse_script(&read(path)?).map_err(|d| Outcome::input_error(path, d))
}

fn write(path: &Path, text: &str) -> Result<(), Outcome> {
    std::fs::write(path, text).map_err(|e| Outcome::input_error(path, e))
}

fn generate(kind: Kind, size: u64, out: &Path) -> Result<Outcome, Outcome> {
    if size == 0 {
        return Err(Outcome::input_error(out, "size must be at least 1"));
    }
    let stack = match kind {
        Kind::Harmonic => gen_harmonic(size),
        Kind::Brickwall => gen_brickwall(size),
        Kind::Triangle => gen_inverted_triangle(size),
        Kind::Diamond => gen_diamond(size),
    };
    let stack = parse_stack(&serialize_stack(&stack)).map_err(|d| Outcome::input_error(out, d))?;
    write(out, &serialize_stack(&stack))?;
    let reach = overhang(&stack).map_err(|e| Outcome::input_error(out, e))?;
    let noun = if stack.len() == 1 { "block" } else { "blocks" };
    Ok(Outcome::ok(format!(
        "{} {noun}\noverhang {}\n",
        stack.len(),
        Exact(&reach)
    )))
}

fn check(path: &Path, certificate: bool) -> Result<Outcome, Outcome> {
    let stack = load_stack(path)?;
    let verdict = check_balance(&stack).map_err(|e| Outcome::input_error(path, e))?;
    match verdict {
        BalanceVerdict::Balanced(cert) => {
            let mut out = String::from("balanced\n");
            if certificate {
                let cs = contacts(&stack);
                for e in &cert.entries {
                    let c = &cs[e.contact];
                    let _ = writeln!(
                        out,
                        "({} {} {} {})",
                        c.upper,
                        c.lower,
                        Exact(&e.position),
                        Exact(&e.magnitude)
                    );
                }
            }
            Ok(Outcome::ok(out))
        }
        BalanceVerdict::Unbalanced(_) => {
            Ok(Outcome::negative("unbalanced\n".into(), String::new()))
        }
    }
}

fn simulate(path: &Path, report: bool) -> Result<Outcome, Outcome> {
    let script = load_script(path)?;
    let mut trace = Trace::new(script.init.clone());
    let mut out = String::new();
    let mut spread_ok = true;
    let mut record = |out: &mut String, label: &str, d: &overhang::massmove::Distribution| {
        let c = check_spread_lemma(d);
        spread_ok &= c.holds;
        let _ = writeln!(
            out,
            "{label}: M0 = {} M1 = {} M2 = {} S = {} spread lemma {} (S² = {} ≤ M2·M0³/3 = {})",
            Exact(&d.moment(0)),
            Exact(&d.moment(1)),
            Exact(&d.moment(2)),
            Exact(&d.spread()),
            if c.holds { "holds" } else { "FAILS" },
            Exact(&c.lhs),
            Exact(&c.rhs)
        );
    };
    if report {
        record(&mut out, "initial", trace.initial());
    }
    for (line, step) in &script.steps {
        match trace.push(step.clone()) {
            Ok(d) => {
                if report {
                    let d = d.clone();
                    record(&mut out, &format!("line {line}"), &d);
                }
            }
            Err(e) => {
                let msg = format!("{}: line {line}: {e}\n", path.display());
                return Ok(Outcome::negative(out, msg));
            }
        }
    }
    let _ = writeln!(out, "{}", trace.last());
    if report {
        match weight_constraint_scan(&trace) {
            Ok(scan) => match &scan.violation {
                None => out.push_str("weight-constrained: yes\n"),
                Some(v) => {
                    let _ = writeln!(
                        out,
                        "weight-constrained: no ({} moves centered right of {}, μ_max = {})",
                        v.moves_right,
                        Exact(&v.a),
                        Exact(&v.mu_max)
                    );
                }
            },
            Err(MassError::NotPlain) => {
                out.push_str("weight-constrained: not applicable (lossy moves)\n")
            }
            Err(e) => out.push_str(&format!("weight-constrained: {e}\n")),
        }
    }
    if spread_ok {
        Ok(Outcome::ok(out))
    } else {
        Ok(Outcome::negative(out, String::new()))
    }
}

fn precision_bits() -> Result<u32, String> {
    match std::env::var(PRECISION_VAR) {
        Err(_) => Ok(MIN_PRECISION_BITS),
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(bits) if bits >= MIN_PRECISION_BITS => Ok(bits),
            _ => Err(format!(
                "{PRECISION_VAR} must be an integer ≥ {MIN_PRECISION_BITS}, got {v:?}"
            )),
        },
    }
}

fn verify(path: &Path, options: &Options) -> Result<Outcome, Outcome> {
    let stack = load_stack(path)?;
    let mut report = end_to_end_with(&stack, options);
    report.subject = format!("{} ({})", path.display(), report.subject);
    let text = format!("{report}\n");
    Ok(if report.passed() {
        Outcome::ok(text)
    } else {
        Outcome::negative(text, String::new())
    })
}

fn render(input: &Path, out: &Path, mode: Mode, forces: bool) -> Result<Outcome, Outcome> {
    let svg = match mode {
        Mode::Stack => {
            let stack = load_stack(input)?;
            let cert = if forces {
                check_balance(&stack)
                    .map_err(|e| Outcome::input_error(input, e))?
                    .certificate()
                    .cloned()
            } else {
                None
            };
            render::render_stack(&stack, cert.as_ref())
        }
        Mode::Trace => {
            let script = load_script(input)?;
            let steps = script.steps.iter().map(|(_, s)| s.clone());
            match Trace::from_steps(script.init.clone(), steps) {
                Ok(trace) => render::render_trace(&trace),
                Err(MassError::StepFailed { step, source }) => {
                    let line = script.steps[step].0;
                    return Ok(Outcome::negative(
                        String::new(),
                        format!("{}: line {line}: {source}\n", input.display()),
                    ));
                }
                Err(e) => {
                    return Ok(Outcome::negative(
                        String::new(),
                        format!("{}: {e}\n", input.display()),
                    ))
                }
            }
        }
    };
    write(out, &svg)?;
    Ok(Outcome::ok(format!("wrote {}\n", out.display())))
}

/// Runs `job` on every input, concurrently if asked, and combines the
/// outcomes in input order; the exit code is the worst one.
fn for_each_input(
    inputs: &[PathBuf],
    batch: bool,
    job: impl Fn(&Path) -> Outcome + Sync,
) -> Outcome {
    let outcomes: Vec<Outcome> = if batch && inputs.len() > 1 {
        std::thread::scope(|scope| {
            let handles: Vec<_> = inputs.iter().map(|p| scope.spawn(|| job(p))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    } else {
        inputs.iter().map(|p| job(p)).collect()
    };
    let many = inputs.len() > 1;
    let mut combined = Outcome::ok(String::new());
    for (path, o) in inputs.iter().zip(outcomes) {
        if many && !o.stdout.is_empty() {
            let _ = write!(combined.stdout, "{}: ", path.display());
        }
        combined.stdout.push_str(&o.stdout);
        combined.stderr.push_str(&o.stderr);
        combined.code = combined.code.max(o.code);
    }
    combined
}

fn flatten(r: Result<Outcome, Outcome>) -> Outcome {
    r.unwrap_or_else(|e| e)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Generate { kind, size, out } => flatten(generate(kind, size, &out)),
        Command::Check {
            inputs,
            certificate,
            batch,
        } => for_each_input(&inputs, batch, |p| flatten(check(p, certificate))),
        Command::Simulate { script, report } => flatten(simulate(&script, report)),
        Command::Verify {
            inputs,
            improved,
            batch,
        } => match precision_bits() {
            Ok(precision_bits) => {
                let options = Options {
                    precision_bits,
                    improved,
                };
                for_each_input(&inputs, batch, |p| flatten(verify(p, &options)))
            }
            Err(msg) => Outcome {
                stdout: String::new(),
                stderr: format!("{msg}\n"),
                code: 2,
            },
        },
        Command::Render {
            input,
            out,
            mode,
            forces,
        } => flatten(render(&input, &out, mode, forces)),
    };
    outcome.emit();
    ExitCode::from(outcome.code)
}
