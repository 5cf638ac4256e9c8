use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use ququint::analysis::{count_table, emit_report, ReportFormat};
use ququint::document::CircuitDocument;
use ququint::grover::{run_grover, Backend, GroverSpec, Iterations};
use ququint::verify::{verify_circuit, VerifyReport};
use ququint::{
    Bitstring, DecompositionRequest, EmbeddingMap, Method, OddVariant, QuditCircuit, StateVector, Target,
};

/// Multi-controlled gate compilation onto qudit registers.
#[derive(Parser)]
#[command(name = "ququint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a multi-controlled gate and write it as a circuit document.
    Decompose {
        #[command(flatten)]
        gate: GateArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a compiled gate on every computational basis input.
    Verify {
        #[arg(long, required_unless_present = "file")]
        n: Option<usize>,
        #[arg(long, default_value = "ququint")]
        method: Method,
        #[arg(long, value_enum, default_value_t = Variant::Single)]
        odd_variant: Variant,
        /// `z` or `x:<qubit>`.
        #[arg(long, default_value = "z")]
        target: Target,
        /// Verify a circuit document (must carry an embedding) instead.
        #[arg(long, conflicts_with = "n")]
        file: Option<PathBuf>,
        /// Accepted for clarity; verification is always exhaustive.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Run a circuit document on one input.
    Simulate {
        file: PathBuf,
        /// Qubit bitstring, or a qudit level label when the document has no embedding.
        #[arg(long, conflicts_with = "state", required_unless_present = "state")]
        input: Option<String>,
        /// JSON array of `[re, im]` amplitudes over the qudit register.
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long, conflicts_with = "shots")]
        probs: bool,
        #[arg(long, required_unless_present = "probs")]
        shots: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Grover search for one marked bitstring.
    Grover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omega: Bitstring,
        #[arg(long, default_value = "ququint")]
        method: Backend,
        #[arg(long, value_enum, default_value_t = Variant::Single)]
        odd_variant: Variant,
        /// `auto` or a positive count.
        #[arg(long, default_value = "auto")]
        iterations: String,
        #[arg(long, value_enum, default_value_t = ReportStyle::Text)]
        report: ReportStyle,
    },
    /// Two-particle gate counts of Grover search per method.
    Count {
        /// Inclusive range `A..B`.
        #[arg(long)]
        n_range: String,
        #[arg(long, value_enum, default_value_t = Variant::Single)]
        odd_variant: Variant,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "ququint")]
    method: Method,
    #[arg(long, value_enum, default_value_t = Variant::Single)]
    odd_variant: Variant,
    /// `z` or `x:<qubit>`.
    #[arg(long, default_value = "z")]
    target: Target,
}

#[derive(Copy, Clone, ValueEnum)]
enum Variant {
    Single,
    Neighbor,
}

impl From<Variant> for OddVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Single => OddVariant::Single,
            Variant::Neighbor => OddVariant::Neighbor,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum ReportStyle {
    Json,
    Text,
}

/// Largest `n` accepted by `verify`.
const MAX_CLI_VERIFY: usize = 10;

enum Outcome {
    Success,
    VerificationFailed,
}

impl GateArgs {
    fn request(&self) -> DecompositionRequest {
        DecompositionRequest::new(self.n, self.method)
            .odd_variant(self.odd_variant.into())
            .target(self.target)
    }
}

fn write_output(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

fn load_document(path: &Path) -> anyhow::Result<(QuditCircuit, Option<EmbeddingMap>)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = CircuitDocument::from_json(&text).with_context(|| format!("invalid document {}", path.display()))?;
    Ok(doc.to_circuit()?)
}

fn decompose(gate: &GateArgs, out: &Path) -> anyhow::Result<Outcome> {
    let r = ququint::decompose::decompose(&gate.request())?;
    let doc = CircuitDocument::from_circuit(&r.circuit, Some(&r.embedding));
    write_output(out, doc.to_json().as_bytes())?;
    println!("two_particle_gates: {}", r.two_particle_gate_count);
    println!("ancilla_systems: {}", r.ancilla_systems);
    Ok(Outcome::Success)
}

fn print_verify(report: &VerifyReport) -> Outcome {
    println!("inputs_checked: {}", report.inputs_checked);
    println!("max_amplitude_error: {:e}", report.max_amplitude_error);
    println!("max_leakage: {:e}", report.max_leakage);
    match &report.first_failure {
        None => {
            println!("result: pass");
            Outcome::Success
        }
        Some(m) => {
            println!("result: fail");
            println!("failing_input: {}", m.input);
            if m.bystander {
                println!("bystander: 1");
            }
            Outcome::VerificationFailed
        }
    }
}

fn verify(gate: Option<GateArgs>, target: Target, file: Option<&Path>) -> anyhow::Result<Outcome> {
    let (circuit, embedding) = match (gate, file) {
        (_, Some(path)) => {
            let (circuit, embedding) = load_document(path)?;
            (circuit, embedding.context("document has no embedding to verify against")?)
        }
        (Some(gate), None) => {
            ensure!(gate.n <= MAX_CLI_VERIFY, "verify supports n <= {MAX_CLI_VERIFY}, got {}", gate.n);
            let r = ququint::decompose::decompose(&gate.request())?;
            (r.circuit, r.embedding)
        }
        (None, None) => bail!("either --n or --file is required"),
    };
    let report = verify_circuit(&circuit, &embedding, target)?;
    Ok(print_verify(&report))
}

fn read_state(path: &Path, circuit: &QuditCircuit) -> anyhow::Result<StateVector> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let pairs: Vec<[f64; 2]> = serde_json::from_str(&text).context("state file must be a list of [re, im] pairs")?;
    let amps = pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    Ok(StateVector::from_amplitudes(circuit.register().clone(), amps)?)
}

fn simulate(
    file: &Path,
    input: Option<&str>,
    state: Option<&Path>,
    shots: Option<usize>,
    seed: u64,
) -> anyhow::Result<Outcome> {
    let (circuit, embedding) = load_document(file)?;
    let reg = circuit.register().clone();
    let initial = match (input, state) {
        (_, Some(path)) => read_state(path, &circuit)?,
        (Some(label), None) => match &embedding {
            Some(map) => {
                let bits: Bitstring = label.parse()?;
                ensure!(
                    bits.len() == map.qubit_count(),
                    "input has {} bits, document encodes {} qubits",
                    bits.len(),
                    map.qubit_count()
                );
                map.embed_state(&bits, false)?
            }
            None => StateVector::basis(reg.clone(), reg.parse_label(label)?)?,
        },
        (None, None) => bail!("either --input or --state is required"),
    };
    let out = circuit.run(&initial)?;

    let mut table = String::new();
    match (shots, &embedding) {
        (None, Some(map)) => {
            let dist = map.read_out(&out.probabilities())?;
            writeln!(table, "outcome,probability")?;
            for (v, p) in dist.probabilities.iter().enumerate() {
                if *p > PRINT_FLOOR {
                    writeln!(table, "{},{p:.12}", Bitstring::from_index(v, map.qubit_count()))?;
                }
            }
            writeln!(table, "leakage,{:.12}", dist.leakage)?;
        }
        (None, None) => {
            writeln!(table, "outcome,probability")?;
            for (idx, p) in out.probabilities().iter().enumerate() {
                if *p > PRINT_FLOOR {
                    writeln!(table, "{},{p:.12}", reg.label(idx))?;
                }
            }
        }
        (Some(shots), map) => {
            let hist = out.sample(seed, shots)?;
            let mut counts = std::collections::BTreeMap::new();
            for (idx, k) in hist {
                let key = match map {
                    Some(map) => map
                        .decode_index(idx)
                        .map_or_else(|| "leakage".to_string(), |v| Bitstring::from_index(v, map.qubit_count()).to_string()),
                    None => reg.label(idx),
                };
                *counts.entry(key).or_insert(0usize) += k;
            }
            writeln!(table, "outcome,count")?;
            for (key, k) in counts {
                writeln!(table, "{key},{k}")?;
            }
        }
    }
    print!("{table}");
    Ok(Outcome::Success)
}

/// Probabilities at or below this are omitted from `simulate --probs`.
const PRINT_FLOOR: f64 = 1e-12;

fn grover(
    n: usize,
    omega: Bitstring,
    method: Backend,
    odd: Variant,
    iterations: &str,
    report: ReportStyle,
) -> anyhow::Result<Outcome> {
    ensure!(omega.len() == n, "--omega has {} bits but --n is {n}", omega.len());
    let mut spec = GroverSpec::new(omega, method);
    spec.odd_variant = odd.into();
    spec.iterations = match iterations {
        "auto" => Iterations::Auto,
        k => Iterations::Fixed(k.parse().with_context(|| format!("bad --iterations {k:?}"))?),
    };
    let r = run_grover(&spec)?;
    match report {
        ReportStyle::Json => println!("{}", serde_json::to_string_pretty(&r)?),
        ReportStyle::Text => {
            println!("n: {}", r.n);
            println!("omega: {}", r.omega);
            println!("backend: {}", r.backend);
            println!("iterations: {}", r.iterations);
            println!("success_probability: {:.6}", r.success_probability);
            println!("top_outcome: {}", r.top_outcome);
            println!("two_particle_gates: {}", r.two_particle_gates);
            println!("leakage: {:e}", r.leakage);
        }
    }
    Ok(Outcome::Success)
}

fn parse_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s.split_once("..").with_context(|| format!("expected A..B, got {s:?}"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn count(range: &str, odd: Variant, format: &str, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let format: ReportFormat = format.parse()?;
    let (lo, hi) = parse_range(range)?;
    let bytes = emit_report(&count_table(lo, hi, odd.into())?, format)?;
    match out {
        Some(path) => write_output(path, &bytes)?,
        None => print!("{}", String::from_utf8(bytes)?),
    }
    Ok(Outcome::Success)
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Decompose { gate, out } => decompose(&gate, &out),
        Command::Verify { n, method, odd_variant, target, file, exhaustive: _ } => {
            let gate = n.map(|n| GateArgs { n, method, odd_variant, target });
            verify(gate, target, file.as_deref())
        }
        Command::Simulate { file, input, state, probs: _, shots, seed } => {
            simulate(&file, input.as_deref(), state.as_deref(), shots, seed)
        }
        Command::Grover { n, omega, method, odd_variant, iterations, report } => {
            grover(n, omega, method, odd_variant, &iterations, report)
        }
        Command::Count { n_range, odd_variant, format, out } => {
            count(&n_range, odd_variant, &format, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
