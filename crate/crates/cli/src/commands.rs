//! Command implementations. Each job yields one report; jobs run in
//! parallel and reports are printed in input order.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use sphtrop::compactify::{
    certify_limit, compactify_cone, limit_of_ray, p_image, p_image_closure, CompactifiedCone,
    CompactifyMode, PImage,
};
use sphtrop::fan::{
    check_star, colored_faces, star_fan, validate_colored_fan, ColoredCone, ColoredFan,
    SphericalData,
};
use sphtrop::polyhedral::parse_vectors;
use sphtrop::puiseux::{
    retract_point, retraction_value, trp_generic_with, trp_toric_extended, trp_torus, Family,
    LaurentPoly, PuiseuxPoint, SamplerConfig, SeminormSample,
};
use sphtrop::registry::{registry_get, RegistryEntry};
use sphtrop::{Rat, RatCone, RatVec, Val};

use crate::context::{self, build_jobs, resolve, Failure, Resolved};
use crate::doc::{self, JRat};
use crate::{plot, Cli, Command, CompactMode, FamilyArg, Format, Outcome, Status, TropMode};

pub const DEFAULT_EXAMPLES: [&str; 3] = ["torus(2)", "sl2_h", "gl2"];

// JSON encodings of library values. A valuation is a rational or "inf".

pub fn jr(r: &Rat) -> Value {
    serde_json::to_value(JRat(r.clone())).expect("rationals serialize")
}

pub fn jv(v: &RatVec) -> Value {
    Value::Array(v.iter().map(jr).collect())
}

fn jvs(vs: &[RatVec]) -> Value {
    Value::Array(vs.iter().map(jv).collect())
}

pub fn jval(v: &Val) -> Value {
    match v {
        Val::Finite(r) => jr(r),
        Val::Infinity => Value::String("inf".into()),
    }
}

pub fn jcone(c: &RatCone) -> Value {
    json!({
        "rays": jvs(c.rays()),
        "lines": jvs(c.lines()),
        "halfspaces": jvs(c.halfspaces()),
        "equations": jvs(c.equations()),
    })
}

pub fn jcolored(cc: &ColoredCone) -> Value {
    let mut m = Map::new();
    m.insert("rays".into(), jvs(cc.cone.rays()));
    if !cc.cone.lines().is_empty() {
        m.insert("lines".into(), jvs(cc.cone.lines()));
    }
    m.insert("colors".into(), json!(cc.colors));
    Value::Object(m)
}

fn jpoint(x: &PuiseuxPoint) -> Value {
    serde_json::to_value(doc::jpoint(x)).expect("points serialize")
}

fn jcompactified(c: &CompactifiedCone) -> Value {
    Value::Array(
        c.strata
            .iter()
            .map(|p| {
                json!({
                    "face": jcone(&p.face),
                    "quotient": jvs(p.quotient.rows()),
                    "cone": jcone(&p.cone),
                })
            })
            .collect(),
    )
}

fn text_compactified(c: &CompactifiedCone, out: &mut String) {
    for p in &c.strata {
        out.push_str(&format!("  over {}: {}\n", p.face, p.cone));
    }
}

/// Results of one job.
struct Report {
    label: String,
    results: Vec<Value>,
    text: String,
    status: Status,
    error: Option<String>,
    /// `(file stem, svg)` per drawn fan.
    svgs: Vec<(String, String)>,
}

impl Report {
    fn new(label: &str) -> Self {
        Report {
            label: label.to_string(),
            results: Vec::new(),
            text: String::new(),
            status: Status::Ok,
            error: None,
            svgs: Vec::new(),
        }
    }

    fn push(&mut self, json: Value, text: impl AsRef<str>) {
        self.results.push(json);
        self.line(text);
    }

    fn line(&mut self, text: impl AsRef<str>) {
        let t = text.as_ref();
        self.text.push_str(t);
        if !t.ends_with('\n') {
            self.text.push('\n');
        }
    }

    /// An item failed; the batch goes on.
    fn item_error(&mut self, mut json: Map<String, Value>, what: &str, e: impl ToString) {
        let e = e.to_string();
        json.insert("error".into(), Value::String(e.clone()));
        self.push(Value::Object(json), format!("{what}: error: {e}"));
        self.status = self.status.max(Status::Failed);
    }

    fn invalid(&mut self) {
        self.status = self.status.max(Status::Invalid);
    }

    fn fatal(label: &str, e: impl ToString) -> Self {
        let mut r = Report::new(label);
        let e = e.to_string();
        r.line(format!("error: {e}"));
        r.error = Some(e);
        r.status = Status::Failed;
        r
    }

    fn to_json(&self, command: &str) -> Value {
        let status = match self.status {
            Status::Ok => "ok",
            Status::Invalid => "invalid",
            Status::Failed | Status::ParseError => "error",
        };
        let mut m = Map::new();
        m.insert("kind".into(), json!("report"));
        m.insert("command".into(), json!(command));
        m.insert("source".into(), json!(self.label));
        m.insert("status".into(), json!(status));
        match &self.error {
            Some(e) => m.insert("error".into(), json!(e)),
            None => m.insert("results".into(), Value::Array(self.results.clone())),
        };
        Value::Object(m)
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate => "validate",
        Command::Faces => "faces",
        Command::Star { .. } => "star",
        Command::CheckStar { .. } => "check-star",
        Command::Trop { .. } => "trop",
        Command::Retract { .. } => "retract",
        Command::Compactify { .. } => "compactify",
        Command::PImage { .. } => "p-image",
        Command::Limits { .. } => "limits",
        Command::Examples { .. } => "examples",
        Command::Plot { .. } => "plot",
        Command::Run { .. } => "run",
    }
}

// Flag values, parsed before any document is read so that malformed
// arguments exit as parse errors.

fn flag<T>(name: &str, r: sphtrop::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::parse(format!("--{name}: {e}")))
}

fn parse_points(raw: &[String]) -> Result<Vec<PuiseuxPoint>, Failure> {
    raw.iter().map(|s| flag("point", s.parse())).collect()
}

fn parse_colors(s: &str) -> BTreeSet<String> {
    s.split(',')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(str::to_string)
        .collect()
}

fn parse_mu(s: &str) -> Result<Val, Failure> {
    match s.trim() {
        "inf" | "infinity" | "∞" => Ok(Val::Infinity),
        t => Rat::from_str(t)
            .map(Val::Finite)
            .map_err(|_| Failure::parse(format!("--mu: expected a rational or \"inf\", found `{s}`"))),
    }
}

fn cone_of(dim: usize, rays: &[RatVec]) -> sphtrop::Result<RatCone> {
    RatCone::from_generators(dim, rays, &[])
}

fn single_vector(name: &str, s: &str) -> Result<RatVec, Failure> {
    let mut v = flag(name, parse_vectors(s))?;
    if v.len() != 1 {
        return Err(Failure::parse(format!("--{name}: expected one vector, found {}", v.len())));
    }
    Ok(v.remove(0))
}

/// Whether this invocation must read documents from standard input.
fn needs_documents(cli: &Cli) -> bool {
    if !cli.inputs.is_empty() || cli.entry.is_some() {
        return false;
    }
    match &cli.command {
        Command::Examples { .. } | Command::Run { .. } => false,
        Command::Trop { points, .. } | Command::Retract { points, .. } => points.is_empty(),
        Command::Compactify { mode, cone } => cone.is_none() || *mode == Some(CompactMode::Colored),
        Command::Limits { mode, .. } => *mode == CompactMode::Colored,
        _ => true,
    }
}

fn reads_documents(cli: &Cli) -> bool {
    !matches!(cli.command, Command::Examples { .. } | Command::Run { .. })
        && (needs_documents(cli) || !cli.inputs.is_empty())
}

pub fn dispatch(cli: &Cli, stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome {
    let (mut out, status) = match run(cli, stdin) {
        Ok(r) => r,
        Err(f) => (
            Outcome {
                stderr: format!("error: {}\n", f.message),
                ..Outcome::default()
            },
            f.status,
        ),
    };
    out.code = status.code();
    out
}

fn render(cli: &Cli, command: &str, reports: &[Report], default: Format) -> (Outcome, Status) {
    let format = cli.format.unwrap_or(default);
    let mut stdout = String::new();
    let mut stderr = String::new();
    for r in reports {
        match format {
            Format::Json => {
                stdout.push_str(&serde_json::to_string_pretty(&r.to_json(command)).expect("reports serialize"));
                stdout.push('\n');
            }
            Format::Text => {
                if reports.len() > 1 {
                    stdout.push_str(&format!("# {}\n", r.label));
                }
                stdout.push_str(&r.text);
            }
        }
        if let Some(e) = &r.error {
            stderr.push_str(&format!("error: {}: {e}\n", r.label));
        }
    }
    let status = reports.iter().map(|r| r.status).max().unwrap_or(Status::Ok);
    (
        Outcome {
            stdout,
            stderr,
            code: 0,
        },
        status,
    )
}

fn run(cli: &Cli, stdin: impl FnOnce() -> std::io::Result<String>) -> Result<(Outcome, Status), Failure> {
    let name = command_name(&cli.command);
    match &cli.command {
        Command::Examples { names } => return Ok(examples(cli, names)),
        Command::Run { script } => return run_script(cli, script),
        _ => {}
    }
    let task = Task::prepare(cli)?;

    let entry = match &cli.entry {
        Some(n) => Some(Arc::new(registry_get(n).map_err(|e| Failure::runtime(e.to_string()))?)),
        None => None,
    };
    let sources = if reads_documents(cli) {
        context::read_documents(&cli.inputs, stdin)?
    } else {
        Vec::new()
    };
    let jobs = build_jobs(entry, sources)?;
    let mut select = cli.fans.clone();
    if let Command::CheckStar { fans } = &cli.command {
        select.extend(fans.iter().cloned());
    }
    let reports: Vec<Report> = jobs
        .par_iter()
        .map(|job| match resolve(job, &select) {
            Ok(r) => task.apply(&r),
            Err(e) => Report::fatal(&job.label, e),
        })
        .collect();
    let (mut out, mut status) = render(cli, name, &reports, Format::Text);
    if let Task::Plot { out: target } = &task {
        let svgs: Vec<(String, String)> = reports.iter().flat_map(|r| r.svgs.clone()).collect();
        match plot::write_all(&svgs, target.as_deref()) {
            Ok(plot::Written::Stdout(svg)) => out.stdout = svg,
            Ok(plot::Written::Files(paths)) => {
                out.stdout = paths.iter().map(|p| format!("wrote {}\n", p.display())).collect();
            }
            Err(e) => {
                out.stderr.push_str(&format!("error: {e}\n"));
                status = status.max(Status::Failed);
            }
        }
    }
    Ok((out, status))
}

/// A command with its flags parsed.
enum Task {
    Validate,
    Faces,
    Star {
        tau: Vec<RatVec>,
        colors: BTreeSet<String>,
        dominant: Option<BTreeSet<String>>,
    },
    CheckStar,
    Trop {
        mode: Option<TropMode>,
        points: Vec<PuiseuxPoint>,
        cfg: SamplerConfig,
        seed: u64,
        chart: Option<Vec<RatVec>>,
    },
    Retract {
        family: Family,
        mu: Val,
        polys: Vec<String>,
        points: Vec<PuiseuxPoint>,
    },
    Compactify {
        mode: Option<CompactMode>,
        cone: Option<Vec<RatVec>>,
    },
    PImage {
        closure: bool,
    },
    Limits {
        sigma: Vec<RatVec>,
        v0: RatVec,
        w: RatVec,
        mode: CompactMode,
    },
    Plot {
        out: Option<PathBuf>,
    },
}

impl Task {
    fn prepare(cli: &Cli) -> Result<Task, Failure> {
        Ok(match &cli.command {
            Command::Validate => Task::Validate,
            Command::Faces => Task::Faces,
            Command::Star {
                tau,
                tau_colors,
                dominant,
            } => Task::Star {
                tau: flag("tau", parse_vectors(tau))?,
                colors: parse_colors(tau_colors),
                dominant: dominant.as_deref().map(parse_colors),
            },
            Command::CheckStar { .. } => Task::CheckStar,
            Command::Trop {
                mode,
                points,
                samples,
                seed,
                range,
                chart,
            } => {
                if *mode == Some(TropMode::Extended) && chart.is_none() {
                    return Err(Failure::parse("--mode extended needs --chart"));
                }
                Task::Trop {
                    mode: *mode,
                    points: parse_points(points)?,
                    cfg: SamplerConfig {
                        samples: *samples,
                        range: *range,
                    },
                    seed: *seed,
                    chart: chart
                        .as_deref()
                        .map(|c| flag("chart", parse_vectors(c)))
                        .transpose()?,
                }
            }
            Command::Retract {
                family,
                mu,
                polys,
                points,
            } => {
                for p in polys {
                    flag("poly", LaurentPoly::parse(p, None))?;
                }
                Task::Retract {
                    family: match family {
                        FamilyArg::Monomial => Family::Monomial,
                        FamilyArg::Homotopy => Family::Homotopy,
                    },
                    mu: parse_mu(mu)?,
                    polys: polys.clone(),
                    points: parse_points(points)?,
                }
            }
            Command::Compactify { mode, cone } => Task::Compactify {
                mode: *mode,
                cone: cone
                    .as_deref()
                    .map(|c| flag("cone", parse_vectors(c)))
                    .transpose()?,
            },
            Command::PImage { closure } => Task::PImage { closure: *closure },
            Command::Limits { sigma, v0, w, mode } => {
                let v0 = single_vector("v0", v0)?;
                let w = single_vector("w", w)?;
                if v0.dim() != w.dim() {
                    return Err(Failure::parse("--v0 and --w have different lengths"));
                }
                Task::Limits {
                    sigma: flag("sigma", parse_vectors(sigma))?,
                    v0,
                    w,
                    mode: *mode,
                }
            }
            Command::Plot { out } => Task::Plot { out: out.clone() },
            Command::Examples { .. } | Command::Run { .. } => unreachable!("handled before"),
        })
    }

    fn apply(&self, job: &Resolved) -> Report {
        let r = match self {
            Task::Validate => validate(job),
            Task::Faces => faces(job),
            Task::Star {
                tau,
                colors,
                dominant,
            } => star(job, tau, colors, dominant.as_ref()),
            Task::CheckStar => check_star_cmd(job),
            Task::Trop {
                mode,
                points,
                cfg,
                seed,
                chart,
            } => trop(job, *mode, points, cfg, *seed, chart.as_deref()),
            Task::Retract {
                family,
                mu,
                polys,
                points,
            } => retract(job, *family, mu, polys, points),
            Task::Compactify { mode, cone } => compactify(job, *mode, cone.as_deref()),
            Task::PImage { closure } => p_image_cmd(job, *closure),
            Task::Limits { sigma, v0, w, mode } => limits(job, sigma, v0, w, *mode),
            Task::Plot { .. } => plot_cmd(job),
        };
        r.unwrap_or_else(|e| Report::fatal(&job.label, e))
    }
}

type Job<'a> = &'a Resolved;
type Fans<'a> = (&'a SphericalData, &'a [(String, ColoredFan)]);

fn fans_of(job: Job<'_>) -> Result<Fans<'_>, String> {
    let sd = job.data()?;
    if job.fans.is_empty() {
        return Err("no fans".into());
    }
    Ok((sd, &job.fans))
}

fn validate(job: Job<'_>) -> Result<Report, String> {
    let (sd, fans) = fans_of(job)?;
    let mut r = Report::new(&job.label);
    for (name, fan) in fans {
        let rep = match validate_colored_fan(sd, fan) {
            Ok(rep) => rep,
            Err(e) => {
                r.item_error(Map::from_iter([("fan".into(), json!(name))]), name, e);
                continue;
            }
        };
        let mut violations = Vec::new();
        let cones: Vec<Value> = fan
            .cones
            .iter()
            .zip(&rep.cone_reports)
            .enumerate()
            .map(|(i, (cc, c))| {
                for f in c.failures() {
                    violations.push(format!("member {i} {cc} fails {f}"));
                }
                json!({
                    "index": i,
                    "cone": jcolored(cc),
                    "CC1": c.cc1,
                    "CC2": c.cc2,
                    "CC3": c.cc3,
                    "strictly_convex": c.strictly_convex,
                    "valid": c.is_valid(),
                })
            })
            .collect();
        for (i, face) in &rep.missing_faces {
            violations.push(format!("face closure: colored face {face} of member {i} is missing"));
        }
        for (i, j) in &rep.overlaps {
            violations.push(format!(
                "uniqueness: relative interiors of members {i} and {j} meet inside V"
            ));
        }
        let valid = rep.is_valid();
        if !valid {
            r.invalid();
        }
        let mut text = format!("{name}: {}\n", if valid { "valid" } else { "invalid" });
        for v in &violations {
            text.push_str(&format!("  {v}\n"));
        }
        r.push(
            json!({
                "fan": name,
                "valid": valid,
                "cones": cones,
                "face_closed": rep.face_closed(),
                "missing_faces": rep.missing_faces.iter().map(|(i, f)| json!({"member": i, "face": jcolored(f)})).collect::<Vec<_>>(),
                "unique_interiors": rep.unique_interiors(),
                "overlaps": rep.overlaps.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
                "violations": violations,
            }),
            text,
        );
    }
    Ok(r)
}

fn faces(job: Job<'_>) -> Result<Report, String> {
    let (sd, fans) = fans_of(job)?;
    let mut r = Report::new(&job.label);
    for (name, fan) in fans {
        let mut members = Vec::new();
        let mut text = format!("{name}:\n");
        let mut failed = None;
        for cc in &fan.cones {
            match colored_faces(sd, cc) {
                Ok(fs) => {
                    text.push_str(&format!("  {cc}: {} faces\n", fs.len()));
                    for f in &fs {
                        text.push_str(&format!("    {f}\n"));
                    }
                    members.push(json!({
                        "cone": jcolored(cc),
                        "faces": fs.iter().map(jcolored).collect::<Vec<_>>(),
                    }));
                }
                Err(e) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        match failed {
            Some(e) => r.item_error(Map::from_iter([("fan".into(), json!(name))]), name, e),
            None => r.push(json!({"fan": name, "members": members}), text),
        }
    }
    Ok(r)
}

fn star(
    job: Job<'_>,
    tau: &[RatVec],
    colors: &BTreeSet<String>,
    dominant: Option<&BTreeSet<String>>,
) -> Result<Report, String> {
    let (sd, fans) = fans_of(job)?;
    let cone = cone_of(sd.dim(), tau).map_err(|e| format!("--tau: {e}"))?;
    let tau = ColoredCone::new(cone, colors.iter().cloned());
    let mut r = Report::new(&job.label);
    for (name, fan) in fans {
        match star_fan(sd, fan, &tau, dominant) {
            Ok(s) => {
                let mut text = format!(
                    "{name}: Star{tau} in N(tau) with basis ({})\n",
                    s.data.basis_names().join(", ")
                );
                for cc in &s.fan.cones {
                    text.push_str(&format!("  {cc}\n"));
                }
                r.push(
                    json!({
                        "fan": name,
                        "tau": jcolored(&tau),
                        "quotient": jvs(s.quotient.rows()),
                        "data": doc::data_doc(&s.data),
                        "star": doc::fan_doc(Some("Star"), &s.fan),
                    }),
                    text,
                );
            }
            Err(e) => r.item_error(Map::from_iter([("fan".into(), json!(name))]), name, e),
        }
    }
    Ok(r)
}

fn check_star_cmd(job: Job<'_>) -> Result<Report, String> {
    let (sd, fans) = fans_of(job)?;
    let mut r = Report::new(&job.label);
    for (name, fan) in fans {
        let s = check_star(sd, fan);
        r.push(json!({"fan": name, "star": s}), format!("{name}: {s}"));
    }
    Ok(r)
}

fn trop(
    job: Job<'_>,
    mode: Option<TropMode>,
    extra: &[PuiseuxPoint],
    cfg: &SamplerConfig,
    seed: u64,
    chart: Option<&[RatVec]>,
) -> Result<Report, String> {
    let points: Vec<&PuiseuxPoint> = job.points.iter().chain(extra).collect();
    if points.is_empty() {
        return Err("no points (pass --point or a points document)".into());
    }
    let mode = mode.unwrap_or(if job.entry.is_some() {
        TropMode::Generic
    } else {
        TropMode::Torus
    });
    let mut r = Report::new(&job.label);
    let point_json = |x: &PuiseuxPoint| Map::from_iter([("point".to_string(), jpoint(x))]);
    match mode {
        TropMode::Torus => {
            for x in points {
                match trp_torus(x) {
                    Ok(v) => r.push(json!({"point": jpoint(x), "trop": jv(&v)}), format!("{x} -> {v}")),
                    Err(e) => r.item_error(point_json(x), &x.to_string(), e),
                }
            }
        }
        TropMode::Generic => {
            let entry: &RegistryEntry = job.entry()?;
            for x in points {
                match trp_generic_with(entry, x, cfg, seed) {
                    Ok(v) => r.push(json!({"point": jpoint(x), "trop": jv(&v)}), format!("{x} -> {v}")),
                    Err(e) => r.item_error(point_json(x), &x.to_string(), e),
                }
            }
        }
        TropMode::Extended => {
            let (sd, fans) = fans_of(job)?;
            let chart = cone_of(sd.dim(), chart.expect("checked when parsing"))
                .map_err(|e| format!("--chart: {e}"))?;
            for (name, fan) in fans {
                for x in &points {
                    let what = format!("{name} {x}");
                    let mut ctx = point_json(x);
                    ctx.insert("fan".into(), json!(name));
                    match trp_toric_extended(fan, &chart, x) {
                        Ok(p) => r.push(
                            json!({
                                "fan": name,
                                "point": jpoint(x),
                                "stratum": jcone(&p.stratum),
                                "functional": jv(&p.functional),
                            }),
                            format!("{what} -> stratum {} functional {}", p.stratum, p.functional),
                        ),
                        Err(e) => r.item_error(ctx, &what, e),
                    }
                }
            }
        }
    }
    Ok(r)
}

fn retract(
    job: Job<'_>,
    family: Family,
    mu: &Val,
    polys: &[String],
    extra: &[PuiseuxPoint],
) -> Result<Report, String> {
    let points: Vec<&PuiseuxPoint> = job.points.iter().chain(extra).collect();
    if points.is_empty() {
        return Err("no points (pass --point or a points document)".into());
    }
    let family_name = match family {
        Family::Monomial => "monomial",
        Family::Homotopy => "homotopy",
    };
    let mut r = Report::new(&job.label);
    for x in points {
        let sample = SeminormSample::new(family, mu.clone(), x.clone());
        let descriptor = retract_point(x).ok();
        let mut text = format!("{x}");
        if let Some(d) = &descriptor {
            text.push_str(&format!(" retracts to {}", d.values));
        }
        text.push('\n');
        let mut values = Vec::new();
        let mut failed = false;
        for p in polys {
            let v = LaurentPoly::parse(p, Some(x.dim())).and_then(|f| {
                let v = retraction_value(&sample, &f)?;
                Ok((f, v))
            });
            match v {
                Ok((f, v)) => {
                    text.push_str(&format!("  {f} -> {v}\n"));
                    values.push(json!({"poly": f.to_string(), "value": jval(&v)}));
                }
                Err(e) => {
                    failed = true;
                    text.push_str(&format!("  {p} -> error: {e}\n"));
                    values.push(json!({"poly": p, "error": e.to_string()}));
                }
            }
        }
        if failed {
            r.status = r.status.max(Status::Failed);
        }
        r.push(
            json!({
                "point": jpoint(x),
                "family": family_name,
                "mu": jval(mu),
                "descriptor": descriptor.map(|d| jv(&d.values)),
                "values": values,
            }),
            text,
        );
    }
    Ok(r)
}

fn mode_of<'a>(mode: CompactMode, sd: Option<&'a SphericalData>) -> Result<CompactifyMode<'a>, String> {
    match mode {
        CompactMode::Toric => Ok(CompactifyMode::Toric),
        CompactMode::Colored => sd
            .map(CompactifyMode::Colored)
            .ok_or_else(|| "colored mode needs spherical data (pass --entry or a spherical_data document)".into()),
    }
}

fn compactify(job: Job<'_>, mode: Option<CompactMode>, cone: Option<&[RatVec]>) -> Result<Report, String> {
    let mode = mode.unwrap_or(if job.data.is_some() {
        CompactMode::Colored
    } else {
        CompactMode::Toric
    });
    let mode_name = match mode {
        CompactMode::Toric => "toric",
        CompactMode::Colored => "colored",
    };
    let cmode = mode_of(mode, job.data.as_ref())?;
    let mut sigmas: Vec<(Option<&str>, RatCone)> = Vec::new();
    match cone {
        Some(rays) => {
            let dim = match (&job.data, rays.first()) {
                (Some(sd), _) => sd.dim(),
                (None, Some(r)) => r.dim(),
                (None, None) => return Err("--cone: an empty cone needs spherical data for its dimension".into()),
            };
            sigmas.push((None, cone_of(dim, rays).map_err(|e| format!("--cone: {e}"))?));
        }
        None => {
            let (_, fans) = fans_of(job)?;
            for (name, fan) in fans {
                for cc in fan.canonical().maximal_cones() {
                    sigmas.push((Some(name), cc.cone.clone()));
                }
            }
        }
    }
    let mut r = Report::new(&job.label);
    for (fan, sigma) in sigmas {
        let mut ctx = Map::new();
        if let Some(f) = fan {
            ctx.insert("fan".into(), json!(f));
        }
        ctx.insert("sigma".into(), jcone(&sigma));
        match compactify_cone(&sigma, cmode) {
            Ok(c) => {
                let mut text = match fan {
                    Some(f) => format!("{f}: "),
                    None => String::new(),
                };
                text.push_str(&format!("{sigma} ({mode_name}): {} strata\n", c.len()));
                text_compactified(&c, &mut text);
                ctx.insert("mode".into(), json!(mode_name));
                ctx.insert("strata".into(), jcompactified(&c));
                r.push(Value::Object(ctx), text);
            }
            Err(e) => r.item_error(ctx, &sigma.to_string(), e),
        }
    }
    Ok(r)
}

fn jpimage(name: &str, img: &PImage) -> Result<(Value, String), String> {
    let consistent = img.gluing_consistent().map_err(|e| e.to_string())?;
    let glued = img.glued_strata();
    let mut text = format!(
        "{name}: star {}, {} pieces, {} glued strata, gluing {}\n",
        img.star,
        img.piece_count(),
        glued.len(),
        if consistent { "consistent" } else { "inconsistent" }
    );
    let pieces: Vec<Value> = img
        .cones
        .iter()
        .map(|(cc, c)| {
            text.push_str(&format!(" {cc}:\n"));
            text_compactified(c, &mut text);
            json!({"sigma": jcolored(cc), "strata": jcompactified(c)})
        })
        .collect();
    Ok((
        json!({
            "fan": name,
            "star": img.star,
            "gluing_consistent": consistent,
            "glued_strata": glued.len(),
            "pieces": pieces,
        }),
        text,
    ))
}

fn p_image_cmd(job: Job<'_>, closure: bool) -> Result<Report, String> {
    let (sd, fans) = fans_of(job)?;
    let mut r = Report::new(&job.label);
    for (name, fan) in fans {
        let img = if closure {
            p_image_closure(sd, fan)
        } else {
            p_image(sd, fan)
        };
        match img.map_err(|e| e.to_string()).and_then(|img| jpimage(name, &img)) {
            Ok((j, t)) => r.push(j, t),
            Err(e) => r.item_error(Map::from_iter([("fan".into(), json!(name))]), name, e),
        }
    }
    Ok(r)
}

fn limits(job: Job<'_>, sigma: &[RatVec], v0: &RatVec, w: &RatVec, mode: CompactMode) -> Result<Report, String> {
    let cmode = mode_of(mode, job.data.as_ref())?;
    let sigma = cone_of(v0.dim(), sigma).map_err(|e| format!("--sigma: {e}"))?;
    let space = compactify_cone(&sigma, cmode).map_err(|e| e.to_string())?;
    let p = limit_of_ray(&space, v0, w).map_err(|e| e.to_string())?;
    let certified = certify_limit(&p, v0, w).map_err(|e| e.to_string())?;
    let mut r = Report::new(&job.label);
    let mut text = format!(
        "limit of {v0} + s{w} in {sigma}: stratum {}, functional {}, certified {certified}\n",
        p.stratum, p.functional
    );
    let mut values = Vec::new();
    for u in sigma.dual().rays() {
        if let Ok(v) = p.evaluate(u) {
            text.push_str(&format!("  {u} -> {v}\n"));
            values.push(json!({"u": jv(u), "value": jval(&v)}));
        }
    }
    r.push(
        json!({
            "sigma": jcone(&sigma),
            "v0": jv(v0),
            "w": jv(w),
            "stratum": jcone(&p.stratum),
            "functional": jv(&p.functional),
            "certified": certified,
            "values": values,
        }),
        text,
    );
    Ok(r)
}

fn plot_cmd(job: Job<'_>) -> Result<Report, String> {
    let (sd, fans) = fans_of(job)?;
    let mut r = Report::new(&job.label);
    for (name, fan) in fans {
        match plot::render(sd, &format!("{} {name}", job.label), fan) {
            Ok(svg) => {
                r.svgs.push((format!("{}_{name}", job.label), svg));
                r.push(json!({"fan": name}), format!("{name}: drawn"));
            }
            Err(e) => r.item_error(Map::from_iter([("fan".into(), json!(name))]), name, e),
        }
    }
    Ok(r)
}

fn examples(cli: &Cli, names: &[String]) -> (Outcome, Status) {
    let names: Vec<String> = if names.is_empty() {
        DEFAULT_EXAMPLES.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    let entries: Vec<Result<RegistryEntry, String>> = names
        .par_iter()
        .map(|n| registry_get(n).map_err(|e| e.to_string()))
        .collect();
    let mut stdout = String::new();
    let mut stderr = String::new();
    let mut status = Status::Ok;
    for e in &entries {
        match e {
            Ok(e) => match cli.format.unwrap_or(Format::Json) {
                Format::Json => {
                    stdout.push_str(&doc::Document::RegistryEntry(doc::entry_doc(e)).to_json());
                    stdout.push('\n');
                }
                Format::Text => stdout.push_str(&summary(e)),
            },
            Err(m) => {
                stderr.push_str(&format!("error: {m}\n"));
                status = Status::Failed;
            }
        }
    }
    (
        Outcome {
            stdout,
            stderr,
            code: 0,
        },
        status,
    )
}

fn summary(e: &RegistryEntry) -> String {
    let sd = &e.data;
    let mut s = format!(
        "{}: dim {}, basis ({}), semi-invariants ({})\n  V = {}\n",
        e.name,
        sd.dim(),
        sd.basis_names().join(", "),
        e.characters.join(", "),
        sd.vcone()
    );
    for c in sd.colors() {
        s.push_str(&format!("  color {}: rho {}\n", c.name, c.rho));
    }
    for (name, fan) in &e.fans {
        let valid = validate_colored_fan(sd, fan).map(|r| r.is_valid()).unwrap_or(false);
        s.push_str(&format!(
            "  fan {name}: {} cones, {}, star {}\n",
            fan.len(),
            if valid { "valid" } else { "invalid" },
            check_star(sd, fan)
        ));
    }
    s
}

fn run_script(cli: &Cli, script: &Path) -> Result<(Outcome, Status), Failure> {
    let docs = context::read_documents(&[script], || Ok(String::new()))?;
    let mut commands = Vec::new();
    for (source, ds) in docs {
        for (k, d) in ds.into_iter().enumerate() {
            match d {
                doc::Document::CommandScript(s) => commands.extend(s.commands),
                other => {
                    return Err(Failure::parse(format!(
                        "{source}#{}: expected a command_script document, found {}",
                        k + 1,
                        other.kind()
                    )))
                }
            }
        }
    }
    let mut out = Outcome::default();
    let mut status = Status::Ok;
    for argv in commands {
        if argv.first().map(String::as_str) == Some("run") {
            out.stderr.push_str("error: scripts cannot call `run`\n");
            status = status.max(Status::Failed);
            continue;
        }
        let mut full = vec!["sphtrop".to_string()];
        full.extend(argv.iter().cloned());
        if let Some(f) = cli.format {
            if !argv.iter().any(|a| a == "--format" || a.starts_with("--format=")) {
                full.push("--format".into());
                full.push(match f {
                    Format::Json => "json".into(),
                    Format::Text => "text".into(),
                });
            }
        }
        let o = crate::execute(&full, || Ok(String::new()));
        out.stdout.push_str(&o.stdout);
        out.stderr.push_str(&o.stderr);
        let s = match o.code {
            0 => Status::Ok,
            3 => Status::Invalid,
            2 => Status::ParseError,
            _ => Status::Failed,
        };
        status = status.max(s);
    }
    Ok((out, status))
}
