//! Batch-oriented command line for the revgate library: deterministic,
//! machine-readable, with exit status 0 for success/PASS, 1 for FAIL,
//! 2 for usage errors, and 3 for resource caps.

mod check;
mod gatespec;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use revgate::algebra::{controlled_instances, GateFamily};
use revgate::circuit::Circuit;
use revgate::groups::{
    generates, parity_sequence, parity_sequence_on, parity_span, target_order, StabilizerChain,
    TargetClass,
};
use revgate::hypergraphs::{components, GraphKind};
use revgate::search::{bfs_min, mitm_min_budgeted, InstanceSet, SearchStatus};
use revgate::{Error, GatePerm, Word};

use report::RunReport;

#[derive(Parser)]
#[command(
    name = "revgate",
    about = "Reversible gates over finite alphabets: components, generation checks, \
             parity sequences, and optimal decompositions",
    version,
    after_help = "Gate specs: swap:a,b | cycle:u,v,w | rot3 | fredkin | toffoli | \
                  controlled:<word>:<spec>\nWords are digit strings over 0..q-1; \
                  `-` is the empty control word."
)]
struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel search phases (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    G1,
    G2,
    G3,
    G4,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    P1,
    P2,
    P3,
    P4,
}

impl From<FamilyArg> for GateFamily {
    fn from(f: FamilyArg) -> GateFamily {
        match f {
            FamilyArg::P1 => GateFamily::P1,
            FamilyArg::P2 => GateFamily::P2,
            FamilyArg::P3 => GateFamily::P3,
            FamilyArg::P4 => GateFamily::P4,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Full,
    Alt,
    Cons,
    Altcons,
    Modk,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Bfs,
    Mitm,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Connected components of one of the rewrite graphs on A^n.
    Components {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
    /// Check that a controlled family generates its class at one arity.
    VerifyGeneration {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// Modulus for --class modk.
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Parity sequences of a circuit or of generator extensions.
    ParitySeq(ParitySeqArgs),
    /// Shortest decomposition of a target over controlled-gate instances.
    Decompose {
        /// Gate spec or circuit file path.
        #[arg(long)]
        target: String,
        /// Base gate spec (repeatable); placements on n wires are enumerated.
        #[arg(long, required = true)]
        base: Vec<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, value_enum, default_value = "mitm")]
        algo: AlgoArg,
        #[arg(long)]
        max_depth: usize,
        /// Visited-state budget for meet-in-the-middle, in megabytes.
        #[arg(long, default_value_t = 6144)]
        mem_budget: usize,
        /// Write the found circuit to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prefix extra control wires onto every gate of a circuit.
    Lift {
        #[arg(long)]
        circuit: PathBuf,
        /// Control word for the new wires, e.g. `01`.
        #[arg(long)]
        prefix: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor a target into controlled basis gates via a stabilizer chain.
    Synthesize {
        /// Gate spec or circuit file path.
        #[arg(long)]
        target: String,
        #[arg(long, value_enum)]
        basis: FamilyArg,
        /// Target class; defaults to the class the basis is universal for.
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a circuit file on one input word.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        /// Input word as digits, e.g. `01011`.
        #[arg(long)]
        input: String,
    },
    /// Run the bundled verification suite and print a PASS/FAIL table.
    CheckPaper {
        #[arg(long, value_enum, default_value = "quick")]
        suite: SuiteArg,
        /// Seed for the randomized property suites.
        #[arg(long, default_value_t = 1010)]
        seed: u64,
    },
}

#[derive(Args)]
struct ParitySeqArgs {
    /// Circuit file whose permutation is analyzed.
    #[arg(long, conflicts_with = "gens")]
    circuit: Option<PathBuf>,
    /// Generator gate specs (repeatable).
    #[arg(long)]
    gens: Vec<String>,
    /// Wire count the generators are extended to.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    q: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // may already be initialized in tests; that is fine
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    match run(cli.command, cli.json) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceCap(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_circuit(path: &PathBuf) -> Result<Circuit, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })?;
    Circuit::parse(&text)
}

/// A target flag is either a circuit file path or a gate spec.
fn read_target(q: u32, text: &str) -> Result<GatePerm, Error> {
    let path = PathBuf::from(text);
    if path.exists() {
        return read_circuit(&path)?.to_perm();
    }
    gatespec::parse_gate(q, text).map_err(|msg| Error::Parse { line: 0, msg })
}

fn write_or_print(out: &Option<PathBuf>, text: &str, json: bool) -> Result<(), Error> {
    if let Some(path) = out {
        std::fs::write(path, text).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
    } else if !json {
        print!("{text}");
    }
    Ok(())
}

fn class_arg_to_target(class: ClassArg, k: u32) -> Result<TargetClass, Error> {
    Ok(match class {
        ClassArg::Full => TargetClass::Full,
        ClassArg::Alt => TargetClass::Alt,
        ClassArg::Cons => TargetClass::Conservative,
        ClassArg::Altcons => TargetClass::AltConservative,
        ClassArg::Modk => TargetClass::ModK(k),
    })
}

fn parity_string(seq: &revgate::groups::ParitySequence) -> String {
    seq.bits()
        .iter()
        .map(|b| if b.is_even() { '0' } else { '1' })
        .collect()
}

fn run(command: Command, json: bool) -> Result<ExitCode, Error> {
    let t0 = Instant::now();
    match command {
        Command::Components { kind, q, n } => {
            let kind = match kind {
                KindArg::G1 => GraphKind::G1,
                KindArg::G2 => GraphKind::G2,
                KindArg::G3 => GraphKind::G3,
                KindArg::G4 => GraphKind::G4,
            };
            let partition = components(kind, q, n)?;
            let report = RunReport::new(
                "components",
                json!({"kind": format!("{kind:?}"), "q": q, "n": n}),
                json!({
                    "count": partition.class_count(),
                    "sizes": partition.class_sizes(),
                    "representatives": partition.representatives(),
                }),
                t0,
            );
            report.emit(json, |r| {
                println!(
                    "{} components; sizes {:?}",
                    r["count"],
                    r["sizes"]
                        .as_array()
                        .map(|v| v.len())
                        .map(|len| if len > 16 {
                            format!("(first 16 of {len}) {:?}", &r["sizes"].as_array().unwrap()[..16])
                        } else {
                            r["sizes"].to_string()
                        })
                        .unwrap_or_default()
                );
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyGeneration {
            family,
            class,
            q,
            n,
            k,
        } => {
            let target_class = class_arg_to_target(class, k)?;
            let gens = controlled_instances(family.into(), q, n)?;
            let pass = generates(&gens, &target_class, q, n)?;
            let chain = StabilizerChain::build(&gens)?;
            let report = RunReport::new(
                "verify-generation",
                json!({
                    "family": format!("{:?}", GateFamily::from(family)),
                    "class": format!("{target_class:?}"),
                    "q": q, "n": n,
                }),
                json!({
                    "pass": pass,
                    "generators": gens.len(),
                    "group_order": chain.order().to_string(),
                    "target_order": target_order(&target_class, q, n)?.to_string(),
                }),
                t0,
            );
            report.emit(json, |r| {
                println!(
                    "{}: group order {} vs target order {} ({} generators)",
                    if pass { "PASS" } else { "FAIL" },
                    r["group_order"],
                    r["target_order"],
                    r["generators"],
                );
            });
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::ParitySeq(args) => {
            let (inputs, payload) = match (&args.circuit, args.gens.is_empty()) {
                (Some(path), _) => {
                    let perm = read_circuit(path)?.to_perm()?;
                    let seq = parity_sequence(&perm)?;
                    (
                        json!({"circuit": path.display().to_string()}),
                        json!({"sequence": parity_string(&seq)}),
                    )
                }
                (None, false) => {
                    let n = args.n.ok_or(Error::Parse {
                        line: 0,
                        msg: "--gens needs --n".into(),
                    })?;
                    let gens: Vec<GatePerm> = args
                        .gens
                        .iter()
                        .map(|s| {
                            gatespec::parse_gate(args.q, s)
                                .map_err(|msg| Error::Parse { line: 0, msg })
                        })
                        .collect::<Result<_, _>>()?;
                    let sequences: Vec<String> = gens
                        .iter()
                        .map(|g| parity_sequence_on(g, n).map(|s| parity_string(&s)))
                        .collect::<Result<_, _>>()?;
                    let span = parity_span(&gens, n)?;
                    (
                        json!({"gens": args.gens, "q": args.q, "n": n}),
                        json!({
                            "sequences": sequences,
                            "span_size": span.len(),
                            "span": span.iter().map(parity_string).collect::<Vec<_>>(),
                        }),
                    )
                }
                (None, true) => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: "need --circuit or --gens".into(),
                    })
                }
            };
            let report = RunReport::new("parity-seq", inputs, payload, t0);
            report.emit(json, |r| {
                if let Some(seq) = r.get("sequence") {
                    println!("parity sequence {seq}");
                } else {
                    println!(
                        "sequences {:?}; span size {}",
                        r["sequences"], r["span_size"]
                    );
                }
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose {
            target,
            base,
            n,
            q,
            algo,
            max_depth,
            mem_budget,
            out,
        } => {
            let target_gate = read_target(q, &target)?;
            let specs: Vec<_> = base
                .iter()
                .map(|s| {
                    gatespec::parse_controlled_spec(q, s)
                        .map_err(|msg| Error::Parse { line: 0, msg })
                })
                .collect::<Result<_, _>>()?;
            let set = InstanceSet::enumerate(&specs, n)?;
            let result = match algo {
                AlgoArg::Bfs => bfs_min(&target_gate, &set, max_depth)?,
                AlgoArg::Mitm => {
                    mitm_min_budgeted(&target_gate, &set, max_depth, mem_budget << 20)?
                }
            };
            let (status_json, circuit_text, exit) = match &result.status {
                SearchStatus::Found(word) => {
                    let circuit = set.circuit_for(word)?;
                    let text = circuit.serialize();
                    (
                        json!({"found": true, "depth": word.len(), "instances": word}),
                        Some(text),
                        ExitCode::SUCCESS,
                    )
                }
                SearchStatus::ExhaustedToDepth(d) => (
                    json!({"found": false, "exhausted_to_depth": d}),
                    None,
                    ExitCode::SUCCESS,
                ),
            };
            let report = RunReport::new(
                "decompose",
                json!({
                    "target": target, "base": base, "n": n, "q": q,
                    "algo": match algo { AlgoArg::Bfs => "bfs", AlgoArg::Mitm => "mitm" },
                    "max_depth": max_depth,
                }),
                json!({
                    "status": status_json,
                    "instance_count": set.len(),
                    "nodes_expanded": result.nodes_expanded,
                    "circuit": circuit_text,
                }),
                t0,
            );
            report.emit(json, |r| {
                let status = &r["status"];
                if status["found"].as_bool() == Some(true) {
                    println!(
                        "found at depth {} ({} instances, {} nodes)",
                        status["depth"], r["instance_count"], r["nodes_expanded"]
                    );
                } else {
                    println!(
                        "no circuit of length <= {} exists ({} instances, {} nodes)",
                        status["exhausted_to_depth"], r["instance_count"], r["nodes_expanded"]
                    );
                }
            });
            if let Some(text) = circuit_text {
                write_or_print(&out, &text, json)?;
            }
            Ok(exit)
        }
        Command::Lift {
            circuit,
            prefix,
            out,
        } => {
            let circ = read_circuit(&circuit)?;
            let prefix_word = if prefix == "-" {
                Word::empty(circ.q())?
            } else {
                Word::from_digits(circ.q(), &prefix)?
            };
            let lifted = revgate::constructions::lift_control(&circ, &prefix_word)?;
            let text = lifted.serialize();
            let report = RunReport::new(
                "lift",
                json!({"circuit": circuit.display().to_string(), "prefix": prefix}),
                json!({"wires": lifted.arity(), "gates": lifted.len(), "circuit": text}),
                t0,
            );
            report.emit(json, |r| {
                println!("lifted to {} wires, {} gates", r["wires"], r["gates"]);
            });
            write_or_print(&out, &text, json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Synthesize {
            target,
            basis,
            class,
            q,
            out,
        } => {
            let target_gate = read_target(q, &target)?;
            let family: GateFamily = basis.into();
            let target_class = match class {
                Some(c) => class_arg_to_target(c, 2)?,
                None => match family {
                    GateFamily::P1 => TargetClass::Full,
                    GateFamily::P2 => TargetClass::Conservative,
                    GateFamily::P3 => TargetClass::Alt,
                    GateFamily::P4 => TargetClass::AltConservative,
                },
            };
            let circuit =
                revgate::constructions::synthesize(&target_gate, &target_class, family)?;
            // hard postcondition, independent of the library's own check
            if circuit.to_perm()? != target_gate {
                return Err(Error::Parse {
                    line: 0,
                    msg: "internal: synthesized circuit failed re-simulation".into(),
                });
            }
            let text = circuit.serialize();
            let report = RunReport::new(
                "synthesize",
                json!({
                    "target": target,
                    "basis": format!("{family:?}"),
                    "class": format!("{target_class:?}"),
                    "q": q,
                }),
                json!({"gates": circuit.len(), "verified": true, "circuit": text}),
                t0,
            );
            report.emit(json, |r| {
                println!("synthesized {} gates, re-simulation verified", r["gates"]);
            });
            write_or_print(&out, &text, json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { circuit, input } => {
            let circ = read_circuit(&circuit)?;
            let word = Word::from_digits(circ.q(), &input)?;
            let output = circ.simulate(&word)?;
            let report = RunReport::new(
                "simulate",
                json!({"circuit": circuit.display().to_string(), "input": input}),
                json!({"output": output.display()}),
                t0,
            );
            report.emit(json, |r| {
                println!("{}", r["output"].as_str().unwrap_or_default());
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckPaper { suite, seed } => {
            let full = matches!(suite, SuiteArg::Full);
            let results = check::run_suite(full, seed);
            let all_pass = results.iter().all(|r| r.pass);
            let report = RunReport::new(
                "check-paper",
                json!({"suite": if full { "full" } else { "quick" }, "seed": seed}),
                json!({
                    "pass": all_pass,
                    "checks": results.iter().map(|r| json!({
                        "name": r.name,
                        "pass": r.pass,
                        "detail": r.detail,
                        "ms": r.ms,
                    })).collect::<Vec<_>>(),
                }),
                t0,
            );
            report.emit(json, |_| {
                for r in &results {
                    println!(
                        "[{}] {:<42} {} ({:.0} ms)",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.name,
                        r.detail,
                        r.ms
                    );
                }
                println!("overall: {}", if all_pass { "PASS" } else { "FAIL" });
            });
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
