//! One job per invocation: parse the input, run the requested operation,
//! build the report and pick the exit status.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use prym_core::counting::{CountLimits, Counter};
use prym_core::poly::{disc_ternary_quartic, partials_resultant, partials_resultant_euler, TernaryForm};
use prym_core::prym::{split, validate, BiellipticQuartic, BruinCover, Check, DeformationPencil};
use prym_core::zeta::{verify_bruin, verify_split, Certificate, SplitVerification, Verdict};
use prym_core::{Error, Field, GaloisField, Gf, Rationals};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::acceptance;
use crate::input::{parse_curve_doc, reduce_curve, AnyCurve, CurveDoc, InputError};
use crate::parallel::Threaded;
use crate::report::{
    binary_json, field_json, quadrics_json, records_json, split_json, uni_json, uni_text, validation_json, weil_json, JsonField, SCHEMA,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Split,
    Verify,
    Bruin,
    DiscCheck,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Split => "split",
            Command::Verify => "verify",
            Command::Bruin => "bruin",
            Command::DiscCheck => "disc-check",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    None,
    Path(PathBuf),
    Inline(String),
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub input: InputSource,
    pub p: Option<u32>,
    pub seed: u64,
    pub depth: u32,
    pub cap_evals: Option<u64>,
    pub skip_validation: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Default seed for every randomized step.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Good primes used to test a curve over `Q`.
pub const RATIONAL_PRIMES: usize = 3;

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            input: InputSource::None,
            p: None,
            seed: DEFAULT_SEED,
            depth: 3,
            cap_evals: None,
            skip_validation: false,
            format: Format::Json,
            out: None,
        }
    }

    pub fn inline(command: Command, doc: impl Into<String>) -> Self {
        JobSpec { input: InputSource::Inline(doc.into()), ..Self::new(command) }
    }

    fn limits(&self) -> CountLimits {
        let mut l = CountLimits::default();
        if let Some(c) = self.cap_evals {
            l.max_plane_evals = c;
        }
        l
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExitStatus {
    Success,
    Internal,
    VerificationFailed,
    Rejected,
    ResourceCap,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Internal => 1,
            ExitStatus::VerificationFailed => 2,
            ExitStatus::Rejected => 3,
            ExitStatus::ResourceCap => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExitStatus::Success => "success",
            ExitStatus::Internal => "internal-error",
            ExitStatus::VerificationFailed => "verification-failed",
            ExitStatus::Rejected => "rejected-input",
            ExitStatus::ResourceCap => "resource-cap",
        }
    }

    pub fn from_error(e: &Error) -> Self {
        match e {
            Error::ResourceLimit(_) => ExitStatus::ResourceCap,
            Error::InconsistentCounts(_) | Error::InternalContradiction(_) => ExitStatus::Internal,
            _ => ExitStatus::Rejected,
        }
    }
}

/// What a job produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: ExitStatus,
    pub report: Value,
    pub summary: String,
}

#[derive(Debug)]
enum JobError {
    Input(InputError),
    Core(Error),
}

impl From<InputError> for JobError {
    fn from(e: InputError) -> Self {
        JobError::Input(e)
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        JobError::Core(e)
    }
}

impl JobError {
    fn status(&self) -> ExitStatus {
        match self {
            JobError::Input(_) => ExitStatus::Rejected,
            JobError::Core(e) => ExitStatus::from_error(e),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            JobError::Input(_) => "input",
            JobError::Core(_) => "computation",
        }
    }

    fn message(&self) -> String {
        match self {
            JobError::Input(e) => e.to_string(),
            JobError::Core(e) => e.to_string(),
        }
    }
}

struct Done {
    status: ExitStatus,
    result: Value,
    summary: String,
}

/// Runs `job` with the thread count from `PRYM_THREADS`.
pub fn run(job: &JobSpec) -> Outcome {
    run_with(job, &Threaded::from_env())
}

pub fn run_with<C: Counter>(job: &JobSpec, counter: &C) -> Outcome {
    let doc = load_doc(job);
    let raw = doc.as_ref().ok().and_then(|d| d.as_ref().map(|d| d.raw.clone())).unwrap_or(Value::Null);
    let done = doc.map_err(JobError::from).and_then(|doc| dispatch(job, doc.as_ref(), counter));
    let (status, result, summary, error) = match done {
        Ok(d) => (d.status, d.result, d.summary, None),
        Err(e) => {
            let status = e.status();
            let summary = format!("{}: {} ({})", job.command.name(), e.message(), status.name());
            (status, Value::Null, summary, Some(json!({"kind": e.kind(), "message": e.message()})))
        }
    };
    let mut report = json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": job.command.name(),
        "seed": job.seed,
        "options": {
            "p": job.p,
            "depth": job.depth,
            "cap_evals": job.cap_evals,
            "skip_validation": job.skip_validation,
        },
        "input": raw,
        "status": status.name(),
        "exit_code": status.code(),
        "result": result,
    });
    if let Some(e) = error {
        report["error"] = e;
    }
    Outcome { status, report, summary }
}

fn load_doc(job: &JobSpec) -> Result<Option<CurveDoc>, InputError> {
    let text = match &job.input {
        InputSource::None => return Ok(None),
        InputSource::Inline(s) => s.clone(),
        InputSource::Path(p) => std::fs::read_to_string(p).map_err(|e| InputError(format!("cannot read {}: {e}", p.display())))?,
    };
    parse_curve_doc(&text).map(Some)
}

fn need_doc(doc: Option<&CurveDoc>) -> Result<&CurveDoc, JobError> {
    doc.ok_or_else(|| JobError::Input(InputError("this command needs a curve document (--input)".into())))
}

fn dispatch<C: Counter>(job: &JobSpec, doc: Option<&CurveDoc>, counter: &C) -> Result<Done, JobError> {
    match job.command {
        Command::Validate => match need_doc(doc)?.curve(job.p)? {
            AnyCurve::Finite(c) => do_validate(&c, job),
            AnyCurve::Rational(c) => do_validate(&c, job),
        },
        Command::Split => match need_doc(doc)?.curve(job.p)? {
            AnyCurve::Finite(c) => do_split(&c, job),
            AnyCurve::Rational(c) => do_split(&c, job),
        },
        Command::Verify => match need_doc(doc)?.curve(job.p)? {
            AnyCurve::Finite(c) => do_verify_finite(&c, job, counter),
            AnyCurve::Rational(c) => do_verify_rational(&c, job, counter),
        },
        Command::Bruin => {
            let doc = need_doc(doc)?;
            match doc.curve(job.p)? {
                AnyCurve::Finite(c) => do_bruin(&c, doc, job, counter),
                AnyCurve::Rational(_) => Err(InputError("key `p`: bruin needs a finite field (set p or --p)".into()).into()),
            }
        }
        Command::DiscCheck => match doc {
            None => do_disc_golden(job),
            Some(d) => match d.curve(job.p)? {
                AnyCurve::Finite(c) => do_disc_curve(&c, job),
                AnyCurve::Rational(c) => do_disc_curve(&c, job),
            },
        },
        Command::Selftest => do_selftest(job, counter),
    }
}

fn do_validate<F: JsonField>(c: &BiellipticQuartic<F>, job: &JobSpec) -> Result<Done, JobError> {
    let r = validate(c, job.seed)?;
    let status = if r.passed() { ExitStatus::Success } else { ExitStatus::Rejected };
    let failed: Vec<&str> = r.failed_checks().iter().map(|c| c.name()).collect();
    let summary = if r.passed() {
        format!("validate: all checks pass over {}", field_label(&c.field))
    } else {
        format!("validate: failed {}", failed.join(", "))
    };
    Ok(Done { status, result: json!({"field": field_json(&c.field), "validation": validation_json(&r, &c.field)}), summary })
}

fn field_label<F: Field>(field: &F) -> String {
    match field.descriptor() {
        prym_core::FieldDescriptor::Rationals => "Q".into(),
        prym_core::FieldDescriptor::Finite(d) if d.k == 1 => format!("F_{}", d.p),
        prym_core::FieldDescriptor::Finite(d) => format!("F_{}^{}", d.p, d.k),
    }
}

fn check_validation<F: Field>(c: &BiellipticQuartic<F>, seed: u64) -> Result<(), JobError> {
    let r = validate(c, seed)?;
    if !r.passed() {
        return Err(Error::Rejected { failed: r.failed_checks() }.into());
    }
    Ok(())
}

fn do_split<F: JsonField>(c: &BiellipticQuartic<F>, job: &JobSpec) -> Result<Done, JobError> {
    if !job.skip_validation {
        check_validation(c, job.seed)?;
    }
    let s = split(c, true)?;
    let s = prym_core::prym::SplitResult { validated: !job.skip_validation, ..s };
    let k = &c.field;
    let summary = format!(
        "split over {}: X : y^2 = {}\n  D : Y^2 = {}",
        field_label(k),
        uni_text(&s.sextic, k, "x"),
        crate::report::binary_text(&s.genus_one.s, k)
    );
    Ok(Done { status: ExitStatus::Success, result: json!({"field": field_json(k), "split": split_json(&s, k)}), summary })
}

fn verification_json(v: &SplitVerification, field: &GaloisField) -> Value {
    let opt = |l: &Option<_>| l.as_ref().map(weil_json);
    json!({
        "field": field_json(field),
        "split": split_json(&v.split, field),
        "counted_sextic": uni_json(&v.sextic, field),
        "counts": {
            "C": records_json(&v.counts_c),
            "D": records_json(&v.counts_d),
            "X": records_json(&v.counts_x),
        },
        "L": {
            "C": opt(&v.l_c),
            "D": opt(&v.l_d),
            "X": opt(&v.l_x),
            "D*X": opt(&v.product),
        },
        "verdict": verdict_json(&v.verdict),
    })
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Pass => json!({"passed": true}),
        Verdict::Fail { reason } => json!({"passed": false, "reason": reason}),
    }
}

fn lpoly_text(l: &Option<prym_core::zeta::WeilPolynomial>) -> String {
    l.as_ref().map(|l| format!("{:?}", l.coeffs())).unwrap_or_else(|| "-".into())
}

fn do_verify_finite<C: Counter>(c: &BiellipticQuartic<GaloisField>, job: &JobSpec, counter: &C) -> Result<Done, JobError> {
    let v = verify_split(c, counter, &job.limits())?;
    let status = if v.verdict.passed() { ExitStatus::Success } else { ExitStatus::VerificationFailed };
    let summary = format!(
        "verify over {}: {}\n  L_C   = {}\n  L_D*L_X = {}",
        field_label(&c.field),
        if v.verdict.passed() { "L_C = L_D * L_X" } else { "MISMATCH" },
        lpoly_text(&v.l_c),
        lpoly_text(&v.product)
    );
    Ok(Done { status, result: verification_json(&v, &c.field), summary })
}

fn is_prime(n: u32) -> bool {
    prym_core::field::is_prime(n as u64)
}

fn do_verify_rational<C: Counter>(c: &BiellipticQuartic<Rationals>, job: &JobSpec, counter: &C) -> Result<Done, JobError> {
    check_validation(c, job.seed)?;
    let mut per_prime = Vec::new();
    let mut lines = Vec::new();
    let mut all_pass = true;
    let mut skipped = Vec::new();
    for p in (5u32..10_000).filter(|&p| is_prime(p)) {
        if per_prime.len() == RATIONAL_PRIMES {
            break;
        }
        let field = GaloisField::prime(p)?;
        let Some(r) = reduce_curve(c, &field) else {
            skipped.push(json!({"p": p, "reason": "denominator"}));
            continue;
        };
        if r.f.is_zero(&field) || r.g.is_zero(&field) || !validate(&r, job.seed)?.passed() {
            skipped.push(json!({"p": p, "reason": "bad reduction"}));
            continue;
        }
        let v = verify_split(&r, counter, &job.limits())?;
        all_pass &= v.verdict.passed();
        lines.push(format!("  p = {p}: {}", if v.verdict.passed() { "pass" } else { "MISMATCH" }));
        per_prime.push(json!({"p": p, "verification": verification_json(&v, &field)}));
    }
    if per_prime.len() < RATIONAL_PRIMES {
        return Err(Error::ResourceLimit(format!("only {} good primes below 10000", per_prime.len())).into());
    }
    let status = if all_pass { ExitStatus::Success } else { ExitStatus::VerificationFailed };
    let summary = format!("verify over Q at {RATIONAL_PRIMES} good primes:\n{}", lines.join("\n"));
    Ok(Done { status, result: json!({"field": field_json(&Rationals), "primes": per_prime, "skipped": skipped, "passed": all_pass}), summary })
}

/// A smooth fiber of the deformation pencil, preferring `eps` outside
/// `{0, 1}` (the fiber at 1 does not depend on `C`).
fn choose_fiber(pencil: &DeformationPencil<GaloisField>, seed: u64) -> Result<(Gf, BruinCover<GaloisField>), Error> {
    let k = &pencil.field;
    let mut candidates: Vec<Gf> = k.elements().filter(|e| *e != k.zero() && *e != k.one()).collect();
    candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    candidates.truncate(64);
    for eps in candidates {
        let cover = pencil.fiber(&eps)?;
        if cover.is_smooth() {
            return Ok((eps, cover));
        }
    }
    Err(Error::Rejected { failed: vec![Check::BaseQuarticSmooth] })
}

fn do_bruin<C: Counter>(c: &BiellipticQuartic<GaloisField>, doc: &CurveDoc, job: &JobSpec, counter: &C) -> Result<Done, JobError> {
    if !job.skip_validation {
        check_validation(c, job.seed)?;
    }
    let k = &c.field;
    let pencil = DeformationPencil::from_curve(c)?;
    let (eps, cover) = match doc.epsilon_in(k)? {
        Some(eps) => (eps, pencil.fiber(&eps)?),
        None => choose_fiber(&pencil, job.seed)?,
    };
    let v = verify_bruin(&cover, job.depth, counter, &job.limits())?;
    let status = if v.verdict.passed() { ExitStatus::Success } else { ExitStatus::VerificationFailed };
    let certificate = match v.certificate {
        Certificate::Full => json!({"kind": "full"}),
        Certificate::Partial { depth } => json!({"kind": "partial", "depth": depth}),
    };
    let predicted: Vec<Value> = v.predicted_y.iter().map(|&n| i64::try_from(n).map(Value::from).unwrap_or_else(|_| n.to_string().into())).collect();
    let result = json!({
        "field": field_json(k),
        "epsilon": k.elem_json(&eps),
        "quadrics": quadrics_json(&cover.quadrics, k),
        "quartic_discriminant": k.elem_json(&cover.quartic_discriminant),
        "pencil_sextic": uni_json(&cover.sextic, k),
        "H": format!("y^2 = {}", uni_text(&cover.sextic, k, "x")),
        "counts": {
            "Z": records_json(&v.counts_z),
            "H": records_json(&v.counts_h),
            "Y": records_json(&v.counts_y),
        },
        "predicted_Y": predicted,
        "L": {"Z": weil_json(&v.l_z), "H": weil_json(&v.l_h), "Z*H": weil_json(&v.product)},
        "requested_depth": v.requested_depth,
        "achieved_depth": v.achieved_depth,
        "certificate": certificate,
        "verdict": verdict_json(&v.verdict),
    });
    let mut summary = format!("bruin over {} at eps = {}: ", field_label(k), k.render(&eps));
    let _ = write!(
        summary,
        "{} through m = {} ({})",
        if v.verdict.passed() { "N_m(Y) matches L_Z * L_H" } else { "MISMATCH" },
        v.achieved_depth,
        if v.certificate == Certificate::Full { "full certificate" } else { "partial certificate" }
    );
    Ok(Done { status, result, summary })
}

fn disc_paths<F: JsonField>(form: &TernaryForm<F::Elem>, field: &F, seed: u64) -> Result<(Value, bool, F::Elem), Error> {
    let raw = partials_resultant(form, field, seed)?;
    let disc = disc_ternary_quartic(form, field, seed)?;
    let euler = partials_resultant_euler(form, field, seed.wrapping_add(1))?;
    let agrees = euler.as_ref().is_none_or(|e| *e == raw);
    let v = json!({
        "partials_resultant": field.elem_json(&raw),
        "euler_route": euler.as_ref().map(|e| field.elem_json(e)),
        "normalization": "Disc = Res(F_1, F_2, F_3) / 4^7",
        "discriminant": field.elem_json(&disc),
        "routes_agree": euler.as_ref().map(|_| agrees),
    });
    Ok((v, agrees, disc))
}

fn do_disc_golden(job: &JobSpec) -> Result<Done, JobError> {
    let q = Rationals;
    let form = TernaryForm::from_int_terms(4, &[([4, 0, 0], 1), ([0, 4, 0], -1), ([0, 0, 4], 1)], &q);
    let (v, agrees, disc) = disc_paths(&form, &q, job.seed)?;
    let expected = q.from_i64(-(1i64 << 40));
    let ok = agrees && disc == expected;
    let summary = format!("disc-check x1^4 - x2^4 + x3^4: {} (expected -2^40)", q.render(&disc));
    let status = if ok { ExitStatus::Success } else { ExitStatus::VerificationFailed };
    Ok(Done { status, result: json!({"quartic": "x1^4 - x2^4 + x3^4", "expected": "-1099511627776", "paths": v, "passed": ok}), summary })
}

fn do_disc_curve<F: JsonField>(c: &BiellipticQuartic<F>, job: &JobSpec) -> Result<Done, JobError> {
    let k = &c.field;
    let (v, agrees, disc) = disc_paths(&c.plane_quartic(), k, job.seed)?;
    let smooth = validate(c, job.seed)?.smooth();
    let consistent = (!k.is_zero(&disc)) == smooth;
    let ok = agrees && consistent;
    let summary = format!(
        "disc-check over {}: Disc = {}, squarefree criterion says {}",
        field_label(k),
        k.render(&disc),
        if smooth { "smooth" } else { "singular" }
    );
    let status = if ok { ExitStatus::Success } else { ExitStatus::VerificationFailed };
    Ok(Done {
        status,
        result: json!({"field": field_json(k), "paths": v, "criterion_smooth": smooth, "criterion_agrees": consistent, "passed": ok, "s": binary_json(&c.s(), k)}),
        summary,
    })
}

fn do_selftest<C: Counter>(job: &JobSpec, counter: &C) -> Result<Done, JobError> {
    let mut lines = Vec::new();
    let results = acceptance::run_all(counter, job.seed, |r| lines.push(r.line()));
    let all = results.iter().all(|r| r.passed);
    let result = Value::Array(results.iter().map(|r| r.to_json()).collect());
    let status = if all { ExitStatus::Success } else { ExitStatus::VerificationFailed };
    Ok(Done { status, result, summary: lines.join("\n") })
}

/// Writes `bytes` to `path` through a sibling temporary file and a rename.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}

/// Renders the outcome, writes it, and returns the process exit code.
pub fn emit(job: &JobSpec, outcome: &Outcome) -> i32 {
    let body = match job.format {
        Format::Json => serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n",
        Format::Text => format!("{}\nstatus: {} (exit {})\n", outcome.summary, outcome.status.name(), outcome.status.code()),
    };
    match &job.out {
        Some(path) => {
            if let Err(e) = write_atomically(path, body.as_bytes()) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitStatus::Internal.code();
            }
            eprintln!("{}", outcome.summary);
        }
        None => {
            print!("{body}");
            if job.format == Format::Json {
                eprintln!("{}", outcome.summary);
            }
        }
    }
    outcome.status.code()
}
