//! Job model behind the `afgroup` binary: every subcommand is a [`JobSpec`]
//! with a JSON payload, so single runs and batch manifests share one code
//! path.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;

use afgroup::certificates::{certify, verify_json, Verdict};
use afgroup::exactnum::{AlgebraicNumber, Number};
use afgroup::fgroup::{parse_symbol, realize_dispatch, BetaCase, RealizeOptions};
use afgroup::groups::{Invariance, Membership, MonomialMatrix, Presentation};
use afgroup::laurent::{
    bezout_integerized, monic_lemma_with_budget, q_adic_certificate, solve_unit_power, DEFAULT_MAX_STEPS,
};
use afgroup::serde_util::{format_rational, parse_rational};
use afgroup::{Error, ErrorClass, IntPoly, LaurentPoly, Rational};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_EXHAUSTED: i32 = 4;

pub fn exit_code(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Malformed => EXIT_MALFORMED,
        ErrorClass::Negative => EXIT_NEGATIVE,
        ErrorClass::Hypothesis => EXIT_HYPOTHESIS,
        ErrorClass::Exhausted => EXIT_EXHAUSTED,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Bezout,
    MonicLemma,
    UnitPower,
    Certify,
    Verify,
    Member,
    Invariant,
    Density,
    Riesz,
    Fgroup,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit variant");
        f.write_str(v.as_str().expect("string"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default = "empty_object")]
    pub inputs: Value,
    #[serde(default, alias = "output_path", skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn empty_object() -> Value {
    Value::Object(Map::new())
}

/// Outcome of one job: exit status, a human-readable summary, the result
/// document and any files written.
#[derive(Clone, Debug, PartialEq)]
pub struct JobResult {
    pub status: i32,
    pub summary: String,
    pub document: Value,
    pub artifacts: Vec<PathBuf>,
}

struct Success {
    status: i32,
    summary: String,
    result: Value,
    artifacts: Vec<PathBuf>,
}

impl Success {
    fn ok(summary: String, result: Value) -> Self {
        Self { status: EXIT_OK, summary, result, artifacts: Vec::new() }
    }

    fn negative(summary: String, result: Value) -> Self {
        Self { status: EXIT_NEGATIVE, summary, result, artifacts: Vec::new() }
    }
}

type Res<T> = afgroup::Result<T>;

fn malformed(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Writes `bytes` to `path` through a temporary file in the same directory
/// followed by a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

/// Runs one job. When `job.output` is set the result document is written
/// there atomically; a failed write turns the status into 1.
pub fn run(job: &JobSpec) -> JobResult {
    let outcome = match job.inputs.as_object() {
        Some(inputs) => dispatch(job.command, &Inputs(inputs)),
        None => Err(malformed("inputs must be a JSON object")),
    };
    let (status, summary, result, artifacts) = match outcome {
        Ok(s) => (s.status, s.summary, s.result, s.artifacts),
        Err(e) => {
            let class = e.class();
            let name = format!("{class:?}").to_lowercase();
            (exit_code(class), format!("error: {e}"), json!({"error": {"class": name, "message": e.to_string()}}), Vec::new())
        }
    };
    let document = json!({
        "schema_version": SCHEMA_VERSION,
        "command": job.command,
        "status": status,
        "result": result,
    });
    let mut out = JobResult { status, summary, document, artifacts };
    if let Some(path) = &job.output {
        if let Err(e) = write_atomic(path, pretty(&out.document).as_bytes()) {
            out.status = EXIT_MALFORMED;
            out.summary = format!("{}\nerror: cannot write {}: {e}", out.summary, path.display());
        }
    }
    out
}

struct Inputs<'a>(&'a Map<String, Value>);

impl Inputs<'_> {
    fn opt(&self, key: &str) -> Option<&Value> {
        self.0.get(key).filter(|v| !v.is_null())
    }

    fn get(&self, key: &str) -> Res<&Value> {
        self.opt(key).ok_or_else(|| malformed(format!("missing input {key:?}")))
    }

    fn int(&self, key: &str) -> Res<BigInt> {
        parse_int(self.get(key)?).ok_or_else(|| malformed(format!("{key} must be an integer")))
    }

    fn small<T: TryFrom<u64>>(&self, key: &str, default: T) -> Res<T> {
        match self.opt(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .and_then(|n| T::try_from(n).ok())
                .ok_or_else(|| malformed(format!("{key} must be a small non-negative integer"))),
        }
    }

    fn flag(&self, key: &str) -> Res<bool> {
        match self.opt(key) {
            None => Ok(false),
            Some(v) => v.as_bool().ok_or_else(|| malformed(format!("{key} must be a boolean"))),
        }
    }

    fn text(&self, key: &str) -> Res<&str> {
        self.get(key)?.as_str().ok_or_else(|| malformed(format!("{key} must be a string")))
    }

    fn rational(&self, key: &str) -> Res<Rational> {
        parse_rat_value(self.get(key)?).map_err(|e| malformed(format!("{key}: {e}")))
    }

    fn poly(&self, key: &str) -> Res<IntPoly> {
        let items = self.get(key)?.as_array().ok_or_else(|| malformed(format!("{key} must be a coefficient array")))?;
        let c = items.iter().map(parse_int).collect::<Option<Vec<_>>>();
        Ok(IntPoly::new(c.ok_or_else(|| malformed(format!("{key} has a non-integer coefficient")))?))
    }

    fn laurent(&self, key: &str) -> Res<LaurentPoly> {
        let v = self.get(key)?;
        let (lowest, items) = match v {
            Value::Array(a) => (0, a),
            Value::Object(o) => {
                let lowest = o.get("lowest").and_then(Value::as_i64).unwrap_or(0);
                let a = o.get("coeffs").and_then(Value::as_array).ok_or_else(|| malformed(format!("{key}.coeffs missing")))?;
                (lowest, a)
            }
            _ => return Err(malformed(format!("{key} must be a Laurent polynomial"))),
        };
        let c = items.iter().map(parse_rat_value).collect::<Result<Vec<_>, _>>().map_err(|e| malformed(format!("{key}: {e}")))?;
        Ok(LaurentPoly::new(lowest, c))
    }

    fn number(&self, key: &str, assume_irreducible: bool) -> Res<AlgebraicNumber> {
        parse_number(self.get(key)?, assume_irreducible).map_err(|e| match e {
            Error::InvalidInput(m) => malformed(format!("{key}: {m}")),
            other => other,
        })
    }

    fn presentation(&self) -> Res<Presentation> {
        Presentation::from_json(self.get("presentation")?)
    }
}

fn parse_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().ok(),
        Value::Number(n) => n.as_i64().map(BigInt::from),
        _ => None,
    }
}

fn parse_rat_value(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())).ok_or_else(|| format!("{n} is not an integer")),
        other => Err(format!("{other} is not a rational")),
    }
}

/// A rational (`"1/2"`, `3`, `{"kind": "rational", ...}`) or an algebraic
/// number `{"kind": "algebraic", "minpoly": [...], "interval": [lo, hi]}`.
/// The polynomial may be reducible; the factor owning the root is used.
pub fn parse_number(v: &Value, assume_irreducible: bool) -> Res<AlgebraicNumber> {
    if let Ok(q) = parse_rat_value(v) {
        return Ok(AlgebraicNumber::rational(&q));
    }
    let obj = v.as_object().ok_or_else(|| malformed(format!("{v} is not a number")))?;
    if obj.get("kind").and_then(Value::as_str) == Some("algebraic") {
        let inputs = Inputs(obj);
        let poly = inputs.poly("minpoly")?;
        let iv = obj.get("interval").and_then(Value::as_array).filter(|a| a.len() == 2);
        let iv = iv.ok_or_else(|| malformed("interval must be [lo, hi]"))?;
        let lo = parse_rat_value(&iv[0]).map_err(malformed)?;
        let hi = parse_rat_value(&iv[1]).map_err(malformed)?;
        let asserted = inputs.flag("asserted_minimal")? || assume_irreducible;
        return AlgebraicNumber::root_of(&poly, lo, hi, asserted);
    }
    let n: Number = serde_json::from_value(v.clone()).map_err(|e| malformed(e.to_string()))?;
    n.to_algebraic().ok_or_else(|| malformed("a symbolic real has no exact description"))
}

fn dispatch(cmd: Command, inp: &Inputs) -> Res<Success> {
    match cmd {
        Command::Bezout => bezout(inp),
        Command::MonicLemma => monic(inp),
        Command::UnitPower => unit_power(inp),
        Command::Certify => certify_job(inp),
        Command::Verify => verify_job(inp),
        Command::Member => member(inp),
        Command::Invariant => invariant(inp),
        Command::Density => density(inp),
        Command::Riesz => riesz(inp),
        Command::Fgroup => fgroup(inp),
    }
}

fn bezout(inp: &Inputs) -> Res<Success> {
    let (f, g) = (inp.poly("psi1")?, inp.poly("psi2")?);
    let r = bezout_integerized(&f, &g)?;
    let summary = format!("({})·({f}) + ({})·({g}) = {}", r.a_poly, r.b_poly, r.m);
    Ok(Success::ok(summary, serde_json::to_value(&r).expect("serializes")))
}

fn monic(inp: &Inputs) -> Res<Success> {
    let psi = inp.poly("psi")?;
    let m = inp.int("m")?;
    let steps = inp.small("max_steps", DEFAULT_MAX_STEPS)?;
    let r = monic_lemma_with_budget(&psi, &m, steps)?;
    let summary = format!("{m}·({}) + ({psi})·({}) + t^{} = 1   [{} steps]", r.phi1, r.phi2, r.n, r.steps);
    Ok(Success::ok(summary, serde_json::to_value(&r).expect("serializes")))
}

fn unit_power(inp: &Inputs) -> Res<Success> {
    let q = inp.int("q")?;
    let min_n = inp.small("min_n", 1u32)?;
    let mut result = Map::new();
    let mut lines = Vec::new();
    let r = match inp.opt("m") {
        Some(_) => {
            let m = inp.int("m")?;
            let split = q_adic_certificate(&m, &q)?;
            lines.push(format!("{}·{m} = {}·{q}^{}", split.amp, split.r, split.n));
            result.insert("split".into(), serde_json::to_value(&split).expect("serializes"));
            split.r
        }
        None => inp.int("r")?,
    };
    let u = solve_unit_power(&r, &q, min_n)?;
    lines.push(format!("{}·{r} + {q}^{} = 1", u.s, u.n));
    result.insert("unit".into(), serde_json::to_value(&u).expect("serializes"));
    Ok(Success::ok(lines.join("\n"), Value::Object(result)))
}

fn certify_job(inp: &Inputs) -> Res<Success> {
    let assume = inp.flag("assume_irreducible")?;
    let a = inp.number("a", assume)?;
    let b = inp.number("b", assume)?;
    let phi = match inp.opt("phi") {
        Some(_) => Some(inp.laurent("phi")?),
        None => None,
    };
    let certs = certify(&a, &b, phi.as_ref())?;
    let dir = PathBuf::from(inp.opt("out_dir").and_then(Value::as_str).unwrap_or("."));
    let prefix = inp.opt("prefix").and_then(Value::as_str).unwrap_or("certificate");
    let mut files = Vec::new();
    let mut lines = vec![format!("regime {} for a = {a}, b = {b}", certs[0].regime)];
    for (i, c) in certs.iter().enumerate() {
        let path = dir.join(format!("{prefix}-{}.json", i + 1));
        let mut text = c.to_json_string();
        text.push('\n');
        write_atomic(&path, text.as_bytes()).map_err(|e| malformed(format!("cannot write {}: {e}", path.display())))?;
        lines.push(format!("  {} certifies {}", path.display(), c.target));
        files.push(path);
    }
    let result = json!({
        "regime": certs[0].regime,
        "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "targets": certs.iter().map(|c| c.target.to_string()).collect::<Vec<_>>(),
    });
    Ok(Success { status: EXIT_OK, summary: lines.join("\n"), result, artifacts: files })
}

fn verify_job(inp: &Inputs) -> Res<Success> {
    let cert = match inp.opt("certificate") {
        Some(v) => v.clone(),
        None => {
            let path = inp.text("file")?;
            let text = fs::read_to_string(path).map_err(|e| malformed(format!("cannot read {path}: {e}")))?;
            serde_json::from_str(&text).map_err(|e| malformed(format!("{path}: {e}")))?
        }
    };
    Ok(match verify_json(&cert) {
        Verdict::Accepted => Success::ok("accepted".into(), json!({"verdict": "accepted"})),
        Verdict::Rejected(why) => {
            Success::negative(format!("rejected: {why}"), json!({"verdict": "rejected", "reason": why}))
        }
    })
}

fn member(inp: &Inputs) -> Res<Success> {
    let p = inp.presentation()?;
    let g = p.element_from_json(inp.get("element")?)?;
    Ok(match p.is_member(&g) {
        Membership::Member => Success::ok("member".into(), json!({"member": true})),
        Membership::NonMember(why) => {
            Success::negative(format!("not a member: {why}"), json!({"member": false, "reason": why}))
        }
    })
}

fn matrix_input(v: &Value) -> Res<MonomialMatrix> {
    MonomialMatrix::from_json(v)
}

fn invariant(inp: &Inputs) -> Res<Success> {
    let p = inp.presentation()?;
    let m = matrix_input(inp.get("matrix")?)?;
    Ok(match p.check_invariance(&m)? {
        Invariance::Invariant => Success::ok(format!("G·{m} = G"), json!({"invariant": true})),
        Invariance::NotInvariant(w) => Success::negative(
            format!("not invariant under {m}: {}", w.reason),
            json!({"invariant": false, "witness": w.to_json()}),
        ),
    })
}

fn density(inp: &Inputs) -> Res<Success> {
    let p = inp.presentation()?;
    let eps = inp.rational("eps")?;
    let elems = p.density_witness(&eps)?;
    let mut lines = vec![format!("{} independent elements of norm < {}", elems.len(), format_rational(&eps))];
    let mut out = Vec::new();
    for g in &elems {
        let mut coords = Vec::new();
        for k in 0..p.dim {
            let (e, enc) = p.state_eval(k, g)?;
            coords.push(json!({
                "value": e.to_string(),
                "enclosure": enc.map(|i| [i.lo, i.hi]),
            }));
        }
        lines.push(format!("  {}", p.to_vector(g).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")));
        out.push(json!({"element": g.to_json(), "coordinates": coords}));
    }
    Ok(Success::ok(lines.join("\n"), json!({"eps": format_rational(&eps), "elements": out})))
}

fn riesz(inp: &Inputs) -> Res<Success> {
    let p = inp.presentation()?;
    let el = |k: &str| -> Res<_> { p.element_from_json(inp.get(k)?) };
    let (g1, g2, h1, h2) = (el("g1")?, el("g2")?, el("h1")?, el("h2")?);
    let z = p.riesz_interpolate(&g1, &g2, &h1, &h2)?;
    let v: Vec<String> = p.to_vector(&z).iter().map(|e| e.to_string()).collect();
    Ok(Success::ok(format!("interpolant ({})", v.join(", ")), json!({"element": z.to_json(), "vector": v})))
}

fn fgroup(inp: &Inputs) -> Res<Success> {
    let alpha = parse_symbol(inp.opt("alpha").and_then(Value::as_str).unwrap_or("alpha"))?;
    let beta: BetaCase = inp.text("beta")?.parse()?;
    let d = RealizeOptions::default();
    let opts = RealizeOptions {
        height: inp.small("height", d.height)?,
        exponent_bound: inp.small("expo", d.exponent_bound)?,
        n_bound: inp.small("nbound", d.n_bound)?,
        budget: inp.small("budget", d.budget)?,
        radical_parts: inp.flag("radical_parts")?,
        jobs: inp.small("jobs", d.jobs)?,
    };
    let (_, report) = realize_dispatch(&alpha, &beta, &opts)?;
    let status = match report.verdict {
        afgroup::fgroup::ReportVerdict::ConsistentWithClaim => EXIT_OK,
        afgroup::fgroup::ReportVerdict::CounterexampleFound => EXIT_NEGATIVE,
    };
    Ok(Success { status, summary: report.summary_table(), result: report.to_json(inp.flag("full")?), artifacts: Vec::new() })
}

/// Parses a manifest: a list of jobs, or `{"schema_version": 1, "jobs": [...]}`.
/// Entries that are not valid jobs are kept as errors so they can be
/// reported with status 1 without aborting the batch.
pub fn parse_manifest(v: &Value) -> Res<Vec<Result<JobSpec, String>>> {
    let list = match v {
        Value::Array(a) => a,
        Value::Object(o) => {
            if let Some(s) = o.get("schema_version") {
                if s.as_u64() != Some(SCHEMA_VERSION as u64) {
                    return Err(malformed(format!("unsupported manifest schema_version {s}")));
                }
            }
            o.get("jobs").and_then(Value::as_array).ok_or_else(|| malformed("manifest needs a \"jobs\" array"))?
        }
        _ => return Err(malformed("manifest must be a list of jobs or an object with \"jobs\"")),
    };
    Ok(list.iter().map(|j| serde_json::from_value::<JobSpec>(j.clone()).map_err(|e| e.to_string())).collect())
}

/// Runs the jobs on up to `threads` workers. The summary lists jobs in
/// manifest order; the overall status is 0 iff every job returned 0.
pub fn batch(jobs: &[Result<JobSpec, String>], threads: usize) -> (i32, Value) {
    let threads = threads.max(1).min(jobs.len().max(1));
    let run_one = |j: &Result<JobSpec, String>| -> Value {
        match j {
            Ok(job) => {
                let r = run(job);
                json!({
                    "command": job.command,
                    "status": r.status,
                    "summary": r.summary,
                    "output": job.output.as_ref().map(|p| p.display().to_string()),
                    "artifacts": r.artifacts.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
                })
            }
            Err(e) => json!({"command": null, "status": EXIT_MALFORMED, "summary": format!("malformed job: {e}")}),
        }
    };
    let chunk = jobs.len().div_ceil(threads).max(1);
    let entries: Vec<Value> = thread::scope(|s| {
        let handles: Vec<_> =
            jobs.chunks(chunk).map(|part| s.spawn(move || part.iter().map(run_one).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("batch worker panicked")).collect()
    });
    let failed = entries.iter().filter(|e| e["status"] != json!(EXIT_OK)).count();
    let jobs_json: Vec<Value> = entries
        .into_iter()
        .enumerate()
        .map(|(i, mut e)| {
            e["index"] = json!(i);
            e
        })
        .collect();
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "total": jobs_json.len(),
        "succeeded": jobs_json.len() - failed,
        "failed": failed,
        "jobs": jobs_json,
    });
    (if failed == 0 { EXIT_OK } else { 1 }, summary)
}
