use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use afgroup_cli::{batch, parse_manifest, pretty, run, write_atomic, Command, JobSpec, EXIT_MALFORMED};
use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

#[derive(Parser)]
#[command(name = "afgroup", version, about = "Exact invariance groups, Laurent certificates and realization reports")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// JSON file with the command inputs; flags override its fields
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the result document here (atomically) instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Rational height bound for candidate families
    #[arg(long, global = true)]
    height: Option<u32>,
    /// Exponent bound for candidate families
    #[arg(long, global = true)]
    expo: Option<u32>,
    /// Largest power checked when verifying the claimed generator
    #[arg(long, global = true)]
    nbound: Option<u32>,
    /// Refuse candidate families larger than this
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Trust that given polynomials are irreducible
    #[arg(long, global = true)]
    assume_irreducible: bool,
}

/// Values are JSON, `@file`, or bare text read as a JSON string.
#[derive(Subcommand)]
enum Cmd {
    /// Integerized Bezout identity A·ψ1 + B·ψ2 = M
    Bezout {
        #[arg(long)]
        psi1: Option<String>,
        #[arg(long)]
        psi2: Option<String>,
    },
    /// Monic lemma M·φ1 + ψ·φ2 + t^N = 1
    MonicLemma {
        #[arg(long)]
        psi: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        max_steps: Option<String>,
    },
    /// Unit power s·r + q^N = 1, optionally after the q-adic split of m
    UnitPower {
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        min_n: Option<String>,
    },
    /// Write replayable certificates for a pair of numbers
    Certify {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        out_dir: Option<String>,
        #[arg(long)]
        prefix: Option<String>,
    },
    /// Replay a certificate file
    Verify {
        file: Option<String>,
    },
    /// Decide membership of an element in a presentation
    Member {
        #[arg(long)]
        presentation: Option<String>,
        #[arg(long)]
        element: Option<String>,
    },
    /// Decide whether a monomial matrix leaves the group invariant
    Invariant {
        #[arg(long)]
        presentation: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Independent group elements of norm below eps
    Density {
        #[arg(long)]
        presentation: Option<String>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Interpolant z with g1, g2 <= z <= h1, h2
    Riesz {
        #[arg(long)]
        presentation: Option<String>,
        #[arg(long)]
        g1: Option<String>,
        #[arg(long)]
        g2: Option<String>,
        #[arg(long)]
        h1: Option<String>,
        #[arg(long)]
        h2: Option<String>,
    },
    /// Realization report for a beta case
    Fgroup {
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        radical_parts: bool,
        /// Keep every refutation in the JSON report
        #[arg(long)]
        full: bool,
    },
    /// Run a manifest of jobs
    Batch {
        manifest: PathBuf,
    },
}

fn flag_value(raw: &str) -> Result<Value, String> {
    if let Some(path) = raw.strip_prefix('@') {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        return serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"));
    }
    Ok(serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string())))
}

fn read_json(path: &PathBuf) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn build_job(g: &Global, cmd: Cmd) -> Result<JobSpec, String> {
    let mut inputs = match &g.input {
        Some(p) => match read_json(p)? {
            Value::Object(m) => m,
            _ => return Err("--input must hold a JSON object".into()),
        },
        None => Map::new(),
    };
    let mut set = |k: &str, v: Option<String>| -> Result<(), String> {
        if let Some(raw) = v {
            inputs.insert(k.to_string(), flag_value(&raw)?);
        }
        Ok(())
    };
    let command = match cmd {
        Cmd::Bezout { psi1, psi2 } => {
            set("psi1", psi1)?;
            set("psi2", psi2)?;
            Command::Bezout
        }
        Cmd::MonicLemma { psi, m, max_steps } => {
            set("psi", psi)?;
            set("m", m)?;
            set("max_steps", max_steps)?;
            Command::MonicLemma
        }
        Cmd::UnitPower { q, r, m, min_n } => {
            set("q", q)?;
            set("r", r)?;
            set("m", m)?;
            set("min_n", min_n)?;
            Command::UnitPower
        }
        Cmd::Certify { a, b, phi, out_dir, prefix } => {
            set("a", a)?;
            set("b", b)?;
            set("phi", phi)?;
            set("out_dir", out_dir.map(|s| Value::String(s).to_string()))?;
            set("prefix", prefix.map(|s| Value::String(s).to_string()))?;
            Command::Certify
        }
        Cmd::Verify { file } => {
            set("file", file.map(|s| Value::String(s).to_string()))?;
            Command::Verify
        }
        Cmd::Member { presentation, element } => {
            set("presentation", presentation)?;
            set("element", element)?;
            Command::Member
        }
        Cmd::Invariant { presentation, matrix } => {
            set("presentation", presentation)?;
            set("matrix", matrix)?;
            Command::Invariant
        }
        Cmd::Density { presentation, eps } => {
            set("presentation", presentation)?;
            set("eps", eps.map(|s| Value::String(s).to_string()))?;
            Command::Density
        }
        Cmd::Riesz { presentation, g1, g2, h1, h2 } => {
            set("presentation", presentation)?;
            set("g1", g1)?;
            set("g2", g2)?;
            set("h1", h1)?;
            set("h2", h2)?;
            Command::Riesz
        }
        Cmd::Fgroup { alpha, beta, radical_parts, full } => {
            set("alpha", alpha.map(|s| Value::String(s).to_string()))?;
            set("beta", beta.map(|s| Value::String(s).to_string()))?;
            if radical_parts {
                inputs.insert("radical_parts".into(), Value::Bool(true));
            }
            if full {
                inputs.insert("full".into(), Value::Bool(true));
            }
            Command::Fgroup
        }
        Cmd::Batch { .. } => unreachable!("handled by the caller"),
    };
    let numeric = [
        ("jobs", g.jobs.map(|v| v as u64)),
        ("height", g.height.map(u64::from)),
        ("expo", g.expo.map(u64::from)),
        ("nbound", g.nbound.map(u64::from)),
        ("budget", g.budget),
    ];
    for (k, v) in numeric {
        if let Some(v) = v {
            inputs.insert(k.into(), Value::from(v));
        }
    }
    if g.assume_irreducible {
        inputs.insert("assume_irreducible".into(), Value::Bool(true));
    }
    Ok(JobSpec { command, inputs: Value::Object(inputs), output: g.output.clone() })
}

fn code(status: i32) -> ExitCode {
    ExitCode::from(u8::try_from(status).unwrap_or(1))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return code(if e.use_stderr() { EXIT_MALFORMED } else { 0 });
        }
    };
    if let Cmd::Batch { manifest } = &cli.cmd {
        let jobs = match read_json(manifest).and_then(|v| parse_manifest(&v).map_err(|e| e.to_string())) {
            Ok(j) => j,
            Err(e) => {
                eprintln!("error: {e}");
                return code(EXIT_MALFORMED);
            }
        };
        let threads = cli.global.jobs.unwrap_or(1);
        let (status, summary) = batch(&jobs, threads);
        for j in summary["jobs"].as_array().into_iter().flatten() {
            println!("[{}] {} -> {}", j["index"], j["command"].as_str().unwrap_or("?"), j["status"]);
        }
        println!("{}/{} jobs succeeded", summary["succeeded"], summary["total"]);
        if let Some(path) = &cli.global.output {
            if let Err(e) = write_atomic(path, pretty(&summary).as_bytes()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return code(EXIT_MALFORMED);
            }
        }
        return code(status);
    }
    let job = match build_job(&cli.global, cli.cmd) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return code(EXIT_MALFORMED);
        }
    };
    let r = run(&job);
    if r.status == 0 {
        println!("{}", r.summary);
    } else {
        eprintln!("{}", r.summary);
    }
    if job.output.is_none() {
        print!("{}", pretty(&r.document));
    }
    code(r.status)
}
