//! Command-line front end: every pipeline of `plnr-core` behind one
//! subcommand, reporting verdicts as JSON.
//!
//! Exit codes: 0 when a verdict was produced (true or false), 1 for usage
//! and input errors, 2 when an internal invariant breaks.

use std::fs;
use std::panic::{self, AssertUnwindSafe};

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use plnr_core::components::{
    bent_support_difference_set, boolean_graph_rds, elementary_abelian, is_bent, is_negabent,
    nega_spectrum, nega_spectrum_csv, negabent_from_projection, rds_from_two_difference_sets,
    standard_form_component, verify_counting, walsh_spectrum, BooleanFunction, ComponentError,
    MAX_GROUP_ARITY,
};
use plnr_core::designs::{
    design_from_semifield, plane_from_design, verify_design, verify_plane_seeded, DesignError,
    IncidenceStructure, PLANE_SEED,
};
use plnr_core::funcmaps::{FuncError, PolyMap};
use plnr_core::gf::{FiniteField, GfError};
use plnr_core::groups::{BilinearForm, Group, GroupError};
use plnr_core::planar::{
    is_planar_table, kantor_planar, search_planar_monomials, two_to_one, Convention, PlanarError,
};
use plnr_core::rds::{
    parse_list, project_rds, rds_from_planar_even, rds_from_planar_even_table, rds_from_planar_odd,
    rds_from_semifield, verify_rds, LinearFunctional, RdsError, RdsParams, RdsVerdict,
    RelativeDifferenceSet,
};
use plnr_core::semifield::{
    check_axioms_seeded, presemifield_from_planar_even, presemifield_from_planar_even_table,
    presemifield_from_planar_odd, spread_from_semifield, to_semifield, PreSemifield,
    SemifieldError, AXIOM_SEED,
};

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "PLNR_THREADS";

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    PlanarVerify,
    PlanarSearch,
    SemifieldBuild,
    SemifieldCheck,
    RdsBuild,
    RdsVerify,
    RdsProject,
    DesignBuild,
    DesignVerify,
    PlaneBuild,
    PlaneVerify,
    Negabent,
    Bent,
    Kantor,
    Spread,
    Fixtures,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::PlanarVerify => "planar-verify",
            Command::PlanarSearch => "planar-search",
            Command::SemifieldBuild => "semifield-build",
            Command::SemifieldCheck => "semifield-check",
            Command::RdsBuild => "rds-build",
            Command::RdsVerify => "rds-verify",
            Command::RdsProject => "rds-project",
            Command::DesignBuild => "design-build",
            Command::DesignVerify => "design-verify",
            Command::PlaneBuild => "plane-build",
            Command::PlaneVerify => "plane-verify",
            Command::Negabent => "negabent",
            Command::Bent => "bent",
            Command::Kantor => "kantor",
            Command::Spread => "spread",
            Command::Fixtures => "fixtures",
        }
    }
}

/// A fully specified job. Every accepted command line maps to one, and
/// every `JobSpec` serializes and deserializes losslessly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Option<Command>,
    pub field: Option<String>,
    /// Sparse polynomial `e:c,...`, or a truth table (`hex:` prefix
    /// optional, or `anf:` followed by monomial masks).
    pub function: Option<String>,
    pub arity: Option<u32>,
    pub group: Option<String>,
    pub forbidden: Option<String>,
    pub set: Option<String>,
    pub project: Option<String>,
    pub functional: Option<u32>,
    /// Inclusive exponent range `a..b`.
    pub range: Option<String>,
    pub convention: Option<String>,
    pub restrict: bool,
    /// `field`, `albert:k`, `planar` or `kantor`.
    pub source: Option<String>,
    pub identity: Option<u32>,
    pub chain: Option<String>,
    pub zetas: Option<String>,
    pub input: Option<String>,
    pub output: Option<String>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Parser, Debug)]
#[command(name = "plnr", about = "Planar functions, semifields and relative difference sets")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Field as `p^m`, optionally `/c0,c1,...` for the modulus.
    #[arg(long)]
    field: Option<String>,
    /// Polynomial `e:c,...` or boolean truth table.
    #[arg(long = "fn")]
    function: Option<String>,
    /// Arity of a boolean function.
    #[arg(long)]
    arity: Option<u32>,
    /// Group spec such as `Z8`, `Z4xZ4`, `Z2^3` or `cocycle:2^3:product`.
    #[arg(long)]
    group: Option<String>,
    /// Generators of the forbidden subgroup.
    #[arg(long)]
    forbidden: Option<String>,
    /// Elements of the candidate set.
    #[arg(long)]
    set: Option<String>,
    /// Generators of the subgroup to project along.
    #[arg(long)]
    project: Option<String>,
    /// `c` selecting the functional `y ↦ Tr(c·y)` for projections.
    #[arg(long)]
    functional: Option<u32>,
    /// Inclusive exponent range `a..b`.
    #[arg(long)]
    range: Option<String>,
    /// `odd` or `even`; defaults to the characteristic of the field.
    #[arg(long)]
    convention: Option<String>,
    /// Only exponents coprime to the characteristic.
    #[arg(long)]
    restrict: bool,
    /// Pre-semifield source: `field`, `albert:k`, `planar` or `kantor`.
    #[arg(long)]
    source: Option<String>,
    /// Element `e` for the identity repair.
    #[arg(long)]
    identity: Option<u32>,
    /// Subfield degrees of the Kantor chain, outermost first.
    #[arg(long)]
    chain: Option<String>,
    /// Nonzero coefficients of the Kantor map.
    #[arg(long)]
    zetas: Option<String>,
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

impl From<Cli> for JobSpec {
    fn from(c: Cli) -> Self {
        JobSpec {
            command: Some(c.command),
            field: c.field,
            function: c.function,
            arity: c.arity,
            group: c.group,
            forbidden: c.forbidden,
            set: c.set,
            project: c.project,
            functional: c.functional,
            range: c.range,
            convention: c.convention,
            restrict: c.restrict,
            source: c.source,
            identity: c.identity,
            chain: c.chain,
            zetas: c.zetas,
            input: c.input,
            output: c.output,
            threads: c.threads,
            seed: c.seed,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Usage(e.to_string())
            }
        }
    )*};
}

input_error!(GfError, GroupError, FuncError, SemifieldError, RdsError, DesignError, ComponentError, std::io::Error);

impl From<PlanarError> for CliError {
    fn from(e: PlanarError) -> Self {
        match e {
            PlanarError::KernelMismatch { .. } => CliError::Internal(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

/// Parses `argv` (including the program name), runs the job and returns the
/// exit code with the JSON report.
pub fn run<I, S>(argv: I) -> (i32, Value)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run_job(&JobSpec::from(cli)),
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, json!({ "help": e.to_string() })),
                _ => (1, json!({ "error": e.to_string(), "exit_code": 1 })),
            }
        }
    }
}

fn thread_count(job: &JobSpec) -> Result<Option<usize>, CliError> {
    if let Some(n) = job.threads {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

/// Runs a job on a dedicated worker pool. Panics inside the job are
/// reported as internal errors.
pub fn run_job(job: &JobSpec) -> (i32, Value) {
    let command = job.command.map(Command::name).unwrap_or("");
    let fail = |e: CliError| {
        let code = e.exit_code();
        (code, json!({ "command": command, "error": e.message(), "exit_code": code }))
    };
    let threads = match thread_count(job) {
        Ok(Some(0)) => return fail(usage("thread count must be positive")),
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return fail(CliError::Internal(e.to_string())),
    };
    let outcome = pool.install(|| panic::catch_unwind(AssertUnwindSafe(|| dispatch(job))));
    match outcome {
        Ok(Ok(mut report)) => {
            let obj = report.as_object_mut().expect("reports are objects");
            obj.insert("command".into(), json!(command));
            obj.insert("seed".into(), json!(job.seed.unwrap_or(default_seed(job))));
            obj.insert("threads".into(), json!(pool.current_num_threads()));
            obj.insert("job".into(), to_value(job));
            (0, report)
        }
        Ok(Err(e)) => fail(e),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(CliError::Internal(format!("internal error: {msg}")))
        }
    }
}

fn default_seed(job: &JobSpec) -> u64 {
    match job.command {
        Some(Command::PlaneBuild | Command::PlaneVerify) => PLANE_SEED,
        _ => AXIOM_SEED,
    }
}

fn dispatch(job: &JobSpec) -> Result<Value, CliError> {
    let command = job.command.ok_or_else(|| usage("missing command"))?;
    match command {
        Command::PlanarVerify => planar_verify(job),
        Command::PlanarSearch => planar_search(job),
        Command::SemifieldBuild => semifield_build(job),
        Command::SemifieldCheck => semifield_check(job),
        Command::RdsBuild => rds_build(job),
        Command::RdsVerify => rds_verify(job),
        Command::RdsProject => rds_project(job),
        Command::DesignBuild => design_build(job),
        Command::DesignVerify => incidence_verify(job, "design"),
        Command::PlaneBuild => plane_build(job),
        Command::PlaneVerify => incidence_verify(job, "plane"),
        Command::Negabent => negabent(job),
        Command::Bent => bent(job),
        Command::Kantor => kantor(job),
        Command::Spread => spread(job),
        Command::Fixtures => Ok(fixtures()),
    }
}

fn require<'a>(opt: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    opt.as_deref().ok_or_else(|| usage(format!("missing --{flag}")))
}

fn field(job: &JobSpec) -> Result<FiniteField, CliError> {
    Ok(FiniteField::from_spec(require(&job.field, "field")?)?)
}

fn polynomial(job: &JobSpec, f: &FiniteField) -> Result<PolyMap, CliError> {
    Ok(PolyMap::parse_sparse(f, require(&job.function, "fn")?)?)
}

fn list(s: &str, flag: &str) -> Result<Vec<u32>, CliError> {
    parse_list(s).ok_or_else(|| usage(format!("--{flag} must be a comma-separated list of integers")))
}

fn convention(job: &JobSpec, f: &FiniteField) -> Result<Convention, CliError> {
    let natural = Convention::for_field(f);
    let chosen = match job.convention.as_deref() {
        None => natural,
        Some("odd") => Convention::Odd,
        Some("even") => Convention::Even,
        Some(other) => return Err(usage(format!("--convention must be odd or even, got {other:?}"))),
    };
    if chosen != natural {
        return Err(usage(format!("the {chosen:?} convention does not apply to {}", f.spec()).to_lowercase()));
    }
    Ok(chosen)
}

fn write_output(job: &JobSpec, text: &str) -> Result<Option<String>, CliError> {
    match &job.output {
        Some(path) => {
            fs::write(path, text)?;
            Ok(Some(path.clone()))
        }
        None => Ok(None),
    }
}

fn read_input(job: &JobSpec) -> Result<Option<String>, CliError> {
    job.input.as_ref().map(fs::read_to_string).transpose().map_err(CliError::from)
}

fn verdict_json(v: &RdsVerdict) -> Value {
    to_value(v)
}

fn planar_verify(job: &JobSpec) -> Result<Value, CliError> {
    let f = field(job)?;
    let conv = convention(job, &f)?;
    let poly = polynomial(job, &f)?;
    let verdict = is_planar_table(&poly.table())?;
    let class = if f.order() <= plnr_core::funcmaps::MAX_INTERPOLATION_ORDER {
        Some(poly.classify().tag)
    } else {
        None
    };
    let two_to_one = match conv {
        Convention::Odd => Some(two_to_one(&poly)?),
        Convention::Even => None,
    };
    Ok(json!({
        "field": f.spec(),
        "function": poly.to_sparse(),
        "planar": verdict.planar,
        "convention": verdict.convention,
        "failing_a": verdict.failing_a,
        "do_class": class,
        "two_to_one": two_to_one,
    }))
}

fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || usage(format!("--range must look like a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.trim_start_matches('=');
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn planar_search(job: &JobSpec) -> Result<Value, CliError> {
    let f = field(job)?;
    let conv = convention(job, &f)?;
    let (a, b) = match &job.range {
        Some(r) => parse_range(r)?,
        None => (1, f.order() - 1),
    };
    let report = search_planar_monomials(&f, conv, a..=b, job.restrict)?;
    let violations = report.closure_violations(&f);
    let mut out = to_value(&report);
    let obj = out.as_object_mut().expect("object");
    // wall-clock time would make reports nondeterministic
    obj.remove("elapsed");
    obj.insert("hit_exponents".into(), json!(report.hit_exponents()));
    obj.insert("closure_violations".into(), json!(violations));
    obj.insert("closed".into(), json!(violations.is_empty()));
    Ok(out)
}

fn chain_and_zetas(job: &JobSpec) -> Result<(Vec<u32>, Vec<u32>), CliError> {
    let chain = list(require(&job.chain, "chain")?, "chain")?;
    let zetas = list(require(&job.zetas, "zetas")?, "zetas")?;
    Ok((chain, zetas))
}

/// Builds the pre-semifield named by `--source`, applying the identity
/// repair when `--identity` is given.
fn presemifield(job: &JobSpec) -> Result<PreSemifield, CliError> {
    let f = field(job)?;
    let default = if job.function.is_some() { "planar" } else { "field" };
    let source = job.source.as_deref().unwrap_or(default);
    let s = match source {
        "field" => PreSemifield::field_product(&f),
        "planar" => {
            let poly = polynomial(job, &f)?;
            match Convention::for_field(&f) {
                Convention::Odd => presemifield_from_planar_odd(&poly)?,
                Convention::Even => presemifield_from_planar_even(&poly)?,
            }
        }
        "kantor" => {
            let (chain, zetas) = chain_and_zetas(job)?;
            presemifield_from_planar_even_table(&kantor_planar(&f, &chain, &zetas)?)?
        }
        other => match other.strip_prefix("albert:").map(str::parse::<u32>) {
            Some(Ok(k)) => PreSemifield::albert(&f, k),
            _ => return Err(usage(format!("unknown --source {other:?}"))),
        },
    };
    Ok(match job.identity {
        Some(e) => to_semifield(&s, Some(e))?,
        None => s,
    })
}

fn semifield_json(s: &PreSemifield, seed: u64) -> Value {
    let axioms = check_axioms_seeded(s, seed);
    json!({
        "field": s.field().spec(),
        "order": s.order(),
        "origin": to_value(s.origin()),
        "commutative": s.is_commutative(),
        "identity": s.identity(),
        "presemifield": axioms.presemifield(),
        "semifield": axioms.semifield(),
        "axioms": to_value(&axioms),
        "warnings": s.warnings(),
    })
}

fn seed(job: &JobSpec) -> u64 {
    job.seed.unwrap_or(default_seed(job))
}

fn semifield_build(job: &JobSpec) -> Result<Value, CliError> {
    let s = presemifield(job)?;
    let mut out = semifield_json(&s, seed(job));
    let written = match &job.output {
        Some(_) => write_output(job, &s.to_text()?)?,
        None => None,
    };
    out["output"] = json!(written);
    Ok(out)
}

fn semifield_check(job: &JobSpec) -> Result<Value, CliError> {
    let s = match read_input(job)? {
        Some(text) => PreSemifield::from_text(&text)?,
        None => presemifield(job)?,
    };
    Ok(semifield_json(&s, seed(job)))
}

fn rds_json(d: &RelativeDifferenceSet) -> Value {
    let verdict = d.verify();
    let mut out = verdict_json(&verdict);
    out["group"] = json!(d.group().spec());
    out["group_order"] = json!(d.group().order());
    out["forbidden"] = json!(d.forbidden());
    out["set"] = json!(d.set());
    out
}

/// The RDS named by the source flags: directly from a planar function, or
/// through a pre-semifield.
fn rds_from_source(job: &JobSpec) -> Result<RelativeDifferenceSet, CliError> {
    let f = field(job)?;
    let source = job.source.as_deref().unwrap_or(if job.function.is_some() { "planar" } else { "field" });
    match source {
        "planar" if job.identity.is_none() => {
            let poly = polynomial(job, &f)?;
            Ok(match Convention::for_field(&f) {
                Convention::Odd => rds_from_planar_odd(&poly)?,
                Convention::Even => rds_from_planar_even(&poly)?,
            })
        }
        "kantor" if job.identity.is_none() => {
            let (chain, zetas) = chain_and_zetas(job)?;
            Ok(rds_from_planar_even_table(&kantor_planar(&f, &chain, &zetas)?)?)
        }
        _ => Ok(rds_from_semifield(&presemifield(job)?)?),
    }
}

fn write_rds(job: &JobSpec, d: &RelativeDifferenceSet) -> Result<Option<String>, CliError> {
    match &job.output {
        Some(_) => write_output(job, &d.to_text()?),
        None => Ok(None),
    }
}

fn rds_build(job: &JobSpec) -> Result<Value, CliError> {
    let d = rds_from_source(job)?;
    let mut out = rds_json(&d);
    out["output"] = json!(write_rds(job, &d)?);
    Ok(out)
}

fn explicit_rds(job: &JobSpec) -> Result<RelativeDifferenceSet, CliError> {
    if let Some(text) = read_input(job)? {
        return Ok(RelativeDifferenceSet::from_text(&text)?);
    }
    let group = Group::from_spec(require(&job.group, "group")?)?;
    let gens = list(job.forbidden.as_deref().unwrap_or(""), "forbidden")?;
    let forbidden = group.generated_subgroup(&gens)?;
    let set = list(require(&job.set, "set")?, "set")?;
    Ok(RelativeDifferenceSet::new(group, &forbidden, &set)?)
}

fn rds_verify(job: &JobSpec) -> Result<Value, CliError> {
    let d = explicit_rds(job)?;
    Ok(rds_json(&d))
}

fn rds_project(job: &JobSpec) -> Result<Value, CliError> {
    if job.group.is_some() || job.input.is_some() {
        let d = explicit_rds(job)?;
        let gens = list(require(&job.project, "project")?, "project")?;
        let u = d.group().generated_subgroup(&gens)?;
        let projected = project_rds(&d, &u)?;
        return Ok(json!({
            "original": rds_json(&d),
            "subgroup_order": u.len(),
            "projected": rds_json(&projected),
            "ok": projected.verify().ok,
        }));
    }
    let d = rds_from_source(job)?;
    let Group::Cocycle(g) = d.group() else {
        return Err(usage("projection by a functional needs a pair group"));
    };
    let c = job.functional.ok_or_else(|| usage("missing --functional or --group"))?;
    if c == 0 || c >= g.fiber().order() {
        return Err(usage("--functional must be a nonzero field element"));
    }
    let ell = LinearFunctional::from_trace(g.fiber(), c);
    let u = ell.kernel_in(g);
    let projected = project_rds(&d, &u)?;
    let mut out = json!({
        "original": rds_json(&d),
        "subgroup_order": u.len(),
        "projected": rds_json(&projected),
        "ok": projected.verify().ok,
    });
    if g.fiber().characteristic() == 2 {
        let outcome = negabent_from_projection(&d, &ell)?;
        out["component"] = json!(outcome.component.to_hex());
        out["standard_component"] = json!(outcome.standard.to_hex());
        out["negabent"] = json!(outcome.negabent);
    }
    Ok(out)
}

fn expected_params(n: u32) -> RdsParams {
    RdsParams { m: n, n, k: n, lambda: 1 }
}

fn design_build(job: &JobSpec) -> Result<Value, CliError> {
    let s = presemifield(job)?;
    let d = design_from_semifield(&s)?;
    let report = verify_design(&d, Some(expected_params(s.order())))?;
    Ok(json!({
        "ok": report.ok(),
        "points": d.num_points(),
        "lines": d.num_lines(),
        "fingerprint": format!("{:016x}", d.fingerprint()),
        "report": to_value(&report),
        "output": write_output(job, &d.to_text("design"))?,
    }))
}

fn plane_build(job: &JobSpec) -> Result<Value, CliError> {
    let s = presemifield(job)?;
    let d = design_from_semifield(&s)?;
    let plane = plane_from_design(&d)?;
    let report = verify_plane_seeded(&plane, seed(job));
    Ok(json!({
        "ok": report.ok(),
        "points": plane.num_points(),
        "lines": plane.num_lines(),
        "fingerprint": format!("{:016x}", plane.fingerprint()),
        "report": to_value(&report),
        "output": write_output(job, &plane.to_text("plane"))?,
    }))
}

fn incidence_verify(job: &JobSpec, expected_kind: &str) -> Result<Value, CliError> {
    let text = read_input(job)?.ok_or_else(|| usage("missing --input"))?;
    let (i, kind) = IncidenceStructure::parse_text(&text)?;
    if kind != expected_kind {
        return Err(usage(format!("expected a {expected_kind} file, found {kind:?}")));
    }
    let (ok, report) = if kind == "plane" {
        let r = verify_plane_seeded(&i, seed(job));
        (r.ok(), to_value(&r))
    } else {
        let r = verify_design(&i, None)?;
        (r.ok(), to_value(&r))
    };
    Ok(json!({
        "ok": ok,
        "points": i.num_points(),
        "lines": i.num_lines(),
        "fingerprint": format!("{:016x}", i.fingerprint()),
        "report": report,
    }))
}

fn boolean(job: &JobSpec) -> Result<BooleanFunction, CliError> {
    let spec = require(&job.function, "fn")?;
    let m = job.arity.ok_or_else(|| usage("missing --arity"))?;
    if let Some(masks) = spec.strip_prefix("anf:") {
        let masks: Result<Vec<u64>, _> = masks
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<u64>())
            .collect();
        let masks = masks.map_err(|_| usage("anf: expects comma-separated monomial masks"))?;
        if masks.iter().any(|&mask| mask >> m != 0) {
            return Err(usage("monomial mask uses a variable beyond the arity"));
        }
        return Ok(BooleanFunction::from_anf(m, &masks));
    }
    Ok(BooleanFunction::from_hex(m, spec.strip_prefix("hex:").unwrap_or(spec))?)
}

fn negabent(job: &JobSpec) -> Result<Value, CliError> {
    let f = boolean(job)?;
    let m = f.arity();
    let spectrum = nega_spectrum(&f);
    let norms: Vec<i128> = spectrum.iter().map(|z| z.norm()).collect();
    let parseval: i128 = norms.iter().sum();
    let counting = verify_counting(&f, &BilinearForm::dot(m as usize))?;
    let rds = if (1..=MAX_GROUP_ARITY).contains(&m) {
        Some(boolean_graph_rds(&f, &BilinearForm::dot(m as usize))?.verify())
    } else {
        None
    };
    Ok(json!({
        "function": f.to_hex(),
        "arity": m,
        "negabent": is_negabent(&f),
        "counting": counting,
        "rds": rds.as_ref().map(verdict_json),
        "min_modulus2": norms.iter().min().map(|v| v.to_string()),
        "max_modulus2": norms.iter().max().map(|v| v.to_string()),
        "parseval_exact": parseval == 1i128 << (2 * m),
        "output": write_output(job, &nega_spectrum_csv(&f))?,
    }))
}

fn bent(job: &JobSpec) -> Result<Value, CliError> {
    let f = boolean(job)?;
    let m = f.arity();
    let mut abs: Vec<i64> = walsh_spectrum(&f).iter().map(|w| w.abs()).collect();
    abs.sort_unstable();
    abs.dedup();
    let is_b = is_bent(&f);
    let mut out = json!({
        "function": f.to_hex(),
        "arity": m,
        "bent": is_b,
        "walsh_abs_values": abs,
        "support": null,
        "four_block": null,
    });
    if m == 0 || m + 1 > MAX_GROUP_ARITY {
        return Ok(out);
    }
    let (support, verdict) = bent_support_difference_set(&f)?;
    out["support"] = verdict_json(&verdict);
    if verdict.ok {
        let g = elementary_abelian(m)?;
        let (rds, verdict) = rds_from_two_difference_sets(&g, &support, &support)?;
        let component = if verdict.ok {
            let h = standard_form_component(m, rds.set())?;
            json!({ "function": h.to_hex(), "arity": h.arity(), "negabent": is_negabent(&h) })
        } else {
            Value::Null
        };
        let mut block = verdict_json(&verdict);
        block["component"] = component;
        out["four_block"] = block;
    }
    Ok(out)
}

fn kantor(job: &JobSpec) -> Result<Value, CliError> {
    let f = field(job)?;
    let (chain, zetas) = chain_and_zetas(job)?;
    let table = kantor_planar(&f, &chain, &zetas)?;
    let verdict = is_planar_table(&table)?;
    let mut out = json!({
        "field": f.spec(),
        "values": table.values(),
        "planar": verdict.planar,
        "failing_a": verdict.failing_a,
        "presemifield": null,
        "rds": null,
    });
    if verdict.planar {
        let s = presemifield_from_planar_even_table(&table)?;
        out["presemifield"] = semifield_json(&s, seed(job));
        out["rds"] = rds_json(&rds_from_planar_even_table(&table)?);
    }
    Ok(out)
}

fn spread(job: &JobSpec) -> Result<Value, CliError> {
    let s = presemifield(job)?;
    let sp = spread_from_semifield(&s)?;
    let report = sp.verify();
    Ok(json!({
        "order": s.order(),
        "ok": report.ok(s.order()),
        "report": to_value(&report),
        "output": write_output(job, &sp.to_text())?,
    }))
}

/// One reproducible example: what the source states and what the engine
/// computes.
struct Fixture {
    name: &'static str,
    expected: Value,
    run: fn() -> Result<Value, String>,
}

fn params_of(v: &RdsVerdict) -> Value {
    match v.params {
        Some(p) => json!([p.m, p.n, p.k, p.lambda]),
        None => Value::Null,
    }
}

fn verify_listed(group: &str, forbidden: &[u32], set: &[u32]) -> Result<Value, String> {
    let g = Group::from_spec(group).map_err(|e| e.to_string())?;
    let n = g.generated_subgroup(forbidden).map_err(|e| e.to_string())?;
    let v = verify_rds(&g, &n, set).map_err(|e| e.to_string())?;
    Ok(params_of(&v))
}

fn planar_on(field: &str, poly: &str) -> Result<Value, String> {
    let f = FiniteField::from_spec(field).map_err(|e| e.to_string())?;
    let p = PolyMap::parse_sparse(&f, poly).map_err(|e| e.to_string())?;
    Ok(json!(is_planar_table(&p.table()).map_err(|e| e.to_string())?.planar))
}

fn some_coefficient_planar(field: &str, d: u64) -> Result<Value, String> {
    let f = FiniteField::from_spec(field).map_err(|e| e.to_string())?;
    let cs = plnr_core::planar::even_monomial_planar_coefficients(&f, d).map_err(|e| e.to_string())?;
    Ok(json!(!cs.is_empty()))
}

fn fixture_list() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "cyclic Z8 set {1,2,4}",
            expected: json!([4, 2, 3, 1]),
            run: || verify_listed("Z8", &[4], &[1, 2, 4]),
        },
        Fixture {
            name: "Z4xZ4 set {(0,0),(0,1),(1,3),(3,0)}",
            expected: json!([4, 4, 4, 1]),
            run: || verify_listed("Z4xZ4", &[2, 8], &[0, 4, 13, 3]),
        },
        Fixture {
            name: "Z3xZ3 set {(0,0),(1,1),(2,1)}",
            expected: json!([3, 3, 3, 1]),
            run: || verify_listed("Z3xZ3", &[3], &[0, 4, 5]),
        },
        Fixture {
            name: "x^2 planar on GF(9)",
            expected: json!(true),
            run: || planar_on("3^2", "2:1"),
        },
        Fixture {
            name: "x^10+x^6+2x^2 planar on GF(27)",
            expected: json!(true),
            run: || planar_on("3^3", "10:1,6:1,2:2"),
        },
        Fixture {
            name: "x^10+2x^6+2x^2 planar on GF(27)",
            expected: json!(true),
            run: || planar_on("3^3", "10:1,6:2,2:2"),
        },
        Fixture {
            name: "x^10+x^6+2x^2 planar on GF(243)",
            expected: json!(true),
            run: || planar_on("3^5", "10:1,6:1,2:2"),
        },
        Fixture {
            name: "x^10+x^6+2x^2 not planar on GF(9)",
            expected: json!(false),
            run: || planar_on("3^2", "10:1,6:1,2:2"),
        },
        Fixture {
            name: "x^10+x^6+2x^2 not planar on GF(81)",
            expected: json!(false),
            run: || planar_on("3^4", "10:1,6:1,2:2"),
        },
        Fixture {
            name: "Albert pre-semifield on GF(27) gives a (27,27,27,1) set",
            expected: json!([27, 27, 27, 1]),
            run: || {
                let f = FiniteField::from_spec("3^3").map_err(|e| e.to_string())?;
                let d = rds_from_semifield(&PreSemifield::albert(&f, 1)).map_err(|e| e.to_string())?;
                Ok(params_of(&d.verify()))
            },
        },
        Fixture {
            name: "some c x^3 planar on GF(4)",
            expected: json!(true),
            run: || some_coefficient_planar("2^2", 3),
        },
        Fixture {
            name: "some c x^5 planar on GF(16)",
            expected: json!(true),
            run: || some_coefficient_planar("2^4", 5),
        },
        Fixture {
            name: "some c x^9 planar on GF(64)",
            expected: json!(true),
            run: || some_coefficient_planar("2^6", 9),
        },
        Fixture {
            name: "some c x^20 planar on GF(64)",
            expected: json!(true),
            run: || some_coefficient_planar("2^6", 20),
        },
        Fixture {
            name: "Kantor map on GF(8) with zeta 1 is planar",
            expected: json!(true),
            run: || {
                let f = FiniteField::from_spec("2^3").map_err(|e| e.to_string())?;
                let t = kantor_planar(&f, &[1], &[1]).map_err(|e| e.to_string())?;
                Ok(json!(is_planar_table(&t).map_err(|e| e.to_string())?.planar))
            },
        },
        Fixture {
            name: "bent x1x2+x3x4 gives a (32,2,32,16) set in Z4xZ2^4",
            expected: json!([32, 2, 32, 16]),
            run: || {
                let f = BooleanFunction::from_anf(4, &[0b0011, 0b1100]);
                let (support, _) = bent_support_difference_set(&f).map_err(|e| e.to_string())?;
                let g = elementary_abelian(4).map_err(|e| e.to_string())?;
                let (_, v) = rds_from_two_difference_sets(&g, &support, &support).map_err(|e| e.to_string())?;
                Ok(params_of(&v))
            },
        },
    ]
}

fn fixtures() -> Value {
    let rows: Vec<Value> = fixture_list()
        .par_iter()
        .map(|fx| {
            let (observed, error) = match (fx.run)() {
                Ok(v) => (v, None),
                Err(e) => (Value::Null, Some(e)),
            };
            json!({
                "name": fx.name,
                "expected": fx.expected,
                "observed": observed,
                "pass": error.is_none() && observed == fx.expected,
                "error": error,
            })
        })
        .collect();
    let passed = rows.iter().filter(|r| r["pass"] == json!(true)).count();
    json!({
        "total": rows.len(),
        "passed": passed,
        "all_passed": passed == rows.len(),
        "fixtures": rows,
    })
}
