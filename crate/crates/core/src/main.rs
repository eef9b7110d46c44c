use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aqce::demo::DEFAULT_EPSILON;
use aqce::qpe::{theta_from_phi, MAX_MAIN_QUBITS};
use aqce::{
    alias, build_qpe, build_separation_circuit, canonical_encode, dealias, decide,
    first_qubit_one_probability, measurement_distribution, parse_instance, pick_safe_phases,
    read_circuit, render, run, run_demo, write_circuit, AqceInstance, Error, GateDictionary,
    Outcome,
};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXIT_USAGE: u8 = 1;
const EXIT_PROMISE_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "aqce", version, about = "Aliased quantum circuit instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance string
    Parse {
        /// Instance text, e.g. "2(1)[0](2)[0,1]"
        instance: Option<String>,
        /// Read the instance from a file instead
        #[arg(long, conflicts_with = "instance")]
        file: Option<PathBuf>,
    },
    /// Print the canonical encoding of a circuit file
    Encode {
        circuit: PathBuf,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
        precision: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Alias a circuit file into an instance string and a dictionary
    Alias {
        circuit: PathBuf,
        /// Instance output file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Dictionary output file
        #[arg(long)]
        dict_out: Option<PathBuf>,
    },
    /// Resolve an instance against a dictionary file
    Dealias {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        dict: PathBuf,
        /// Write the circuit file here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
        precision: u8,
    },
    /// Simulate a circuit file from |0...0>
    Simulate {
        circuit: PathBuf,
        /// Comma-separated qubits whose joint distribution is printed
        #[arg(long, value_delimiter = ',')]
        measure: Option<Vec<usize>>,
        /// Draw this many seeded samples from the distribution (display only)
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=17))]
        precision: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide the first-qubit promise for an instance
    Decide {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        dict: PathBuf,
    },
    /// Build a phase-estimation circuit
    QpeBuild {
        #[command(flatten)]
        phase: PhaseArg,
        /// Main-register size
        #[arg(long, required_unless_present = "k", conflicts_with = "k")]
        t: Option<usize>,
        /// Bits to resolve; sizes the register from --epsilon and appends
        /// the swap of bit k onto qubit 0
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the one-string, two-dictionary separation
    Demo {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InstanceArg {
    /// Instance text
    #[arg(long)]
    instance: Option<String>,
    /// File holding the instance text
    #[arg(long)]
    instance_file: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PhaseArg {
    /// Phase angle θ in radians
    #[arg(long, allow_negative_numbers = true)]
    phase: Option<f64>,
    /// Phase as a fraction φ = θ/2π
    #[arg(long)]
    phi: Option<f64>,
}

enum Status {
    Done,
    PromiseViolation,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli.command) {
        Ok(Status::Done) => ExitCode::SUCCESS,
        Ok(Status::PromiseViolation) => ExitCode::from(EXIT_PROMISE_VIOLATION),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Instance files may end with a newline; nothing else is trimmed.
fn load_instance(arg: &InstanceArg) -> Result<AqceInstance, Error> {
    match (&arg.instance, &arg.instance_file) {
        (Some(text), _) => parse_instance(text),
        (None, Some(path)) => {
            let text = read(path)?;
            parse_instance(text.strip_suffix('\n').map(|t| t.strip_suffix('\r').unwrap_or(t)).unwrap_or(&text))
        }
        (None, None) => unreachable!("clap requires one of the instance arguments"),
    }
}

fn execute(command: Command) -> Result<Status, Error> {
    match command {
        Command::Parse { instance, file } => {
            let inst = match (instance, file) {
                (Some(text), _) => parse_instance(&text)?,
                (None, Some(path)) => load_instance(&InstanceArg {
                    instance: None,
                    instance_file: Some(path),
                })?,
                (None, None) => parse_instance("")?,
            };
            let mut out = format!("n: {}\nsubstrings: {}\n", inst.n(), inst.substrings().len());
            for (i, s) in inst.substrings().iter().enumerate() {
                writeln!(out, "{}: type {} {s}", i + 1, s.kind()).unwrap();
            }
            emit(None, &out)?;
        }
        Command::Encode {
            circuit,
            precision,
            out,
        } => {
            let c = read_circuit(&read(&circuit)?)?;
            emit(out.as_deref(), &format!("{}\n", render(&canonical_encode(&c), precision as usize)))?;
        }
        Command::Alias {
            circuit,
            out,
            dict_out,
        } => {
            let c = read_circuit(&read(&circuit)?)?;
            let (inst, dict) = alias(&c)?;
            let dict_text = dict.to_text()?;
            match (&out, &dict_out) {
                (None, None) => emit(None, &format!("{}\n{dict_text}", inst.source()))?,
                _ => {
                    emit(out.as_deref(), &format!("{}\n", inst.source()))?;
                    emit(dict_out.as_deref(), &dict_text)?;
                }
            }
        }
        Command::Dealias {
            instance,
            dict,
            out,
            precision,
        } => {
            let inst = load_instance(&instance)?;
            let d = GateDictionary::from_text(&read(&dict)?)?;
            let c = dealias(&inst, &d)?;
            if let Some(path) = out.as_deref() {
                emit(Some(path), &write_circuit(&c)?)?;
            }
            emit(None, &format!("{}\n", render(&canonical_encode(&c), precision as usize)))?;
        }
        Command::Simulate {
            circuit,
            measure,
            sample,
            seed,
            precision,
            out,
        } => {
            let c = read_circuit(&read(&circuit)?)?;
            let sv = run(&c)?;
            let digits = precision as usize;
            let mut text = format!("p1={:.digits$}\n", first_qubit_one_probability(&sv));
            let qubits = measure.unwrap_or_else(|| (0..c.n()).collect());
            let dist = measurement_distribution(&sv, &qubits)?;
            for (bits, p) in dist.support(1e-15) {
                writeln!(text, "{bits}: {p:.digits$}").unwrap();
            }
            if let Some(count) = sample {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                writeln!(text, "samples:").unwrap();
                for _ in 0..count {
                    let mut u: f64 = rng.random();
                    let mut pick = dist.probabilities().len() - 1;
                    for (i, &p) in dist.probabilities().iter().enumerate() {
                        if u < p {
                            pick = i;
                            break;
                        }
                        u -= p;
                    }
                    writeln!(text, "{}", dist.bitstring(pick)).unwrap();
                }
            }
            emit(out.as_deref(), &text)?;
        }
        Command::Decide { instance, dict } => {
            let inst = load_instance(&instance)?;
            let d = GateDictionary::from_text(&read(&dict)?)?;
            let decision = decide(&inst, &d)?;
            println!("{decision}");
            if decision.outcome == Outcome::PromiseViolation {
                return Ok(Status::PromiseViolation);
            }
        }
        Command::QpeBuild {
            phase,
            t,
            k,
            epsilon,
            out,
        } => {
            let theta = match (phase.phase, phase.phi) {
                (Some(theta), _) => theta,
                (None, Some(phi)) => theta_from_phi(phi),
                (None, None) => unreachable!("clap requires --phase or --phi"),
            };
            let c = match (t, k) {
                (Some(t), _) => build_qpe(theta, t)?,
                (None, Some(k)) => build_separation_circuit(theta, k, epsilon)?,
                (None, None) => {
                    return Err(Error::InvalidArgument(format!(
                        "one of --t (1..={MAX_MAIN_QUBITS}) or --k is required"
                    )))
                }
            };
            emit(out.as_deref(), &write_circuit(&c)?)?;
        }
        Command::Demo {
            k,
            seed,
            epsilon,
            out,
        } => {
            let (x, y) = pick_safe_phases(seed, k)?;
            let report = run_demo(x, y, epsilon)?;
            if let Some(path) = out.as_deref() {
                emit(Some(path), &report.to_text())?;
            }
            emit(None, &report.to_text())?;
        }
    }
    Ok(Status::Done)
}
