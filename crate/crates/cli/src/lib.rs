//! The `dyck` command-line tool.
//!
//! [`run`] parses arguments, dispatches one subcommand and returns the exit
//! status: 0 on success, 1 on a domain error, 2 on a usage error.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use dyck_core::angles::{AngleModPi, DEFAULT_TOL};
use dyck_core::families::{
    constant_angle_family, constant_ratio_family, incircle_outcircle, inscribed_family,
    limit_class, poncelet_closure_residual, poncelet_family, separation_test, Family, Model,
    PonceletConfig, DEFAULT_SEPARATION,
};
use dyck_core::json;
use dyck_core::projections::{classify_sphere_locus, to_sphere, to_torus};
use dyck_core::shape::{canonical_rep, class_of, orbit, phi, ShapeClass};
use dyck_core::triangle::{DirectionTriple, Slot, TriangleVariable};
use dyck_core::verify;
use dyck_core::group::GroupElement;
use num_complex::Complex64;
use serde_json::{json, Value};

pub mod figures;

use figures::Figure;

/// Environment variable overriding the shape tolerance.
pub const TOL_VAR: &str = "SHAPE_TOL";

#[derive(Debug, Parser)]
#[command(name = "dyck", version, about = "Classify, project and trace triangle shape classes")]
pub struct Cli {
    /// Output format; JSON unless given. `selftest` prints plain lines by
    /// default.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degeneracy type, orientation and interior angles of a triangle.
    Classify(TriangleInput),
    /// Image of the triangle's class in one model.
    Project {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[command(flatten)]
        input: TriangleInput,
    },
    /// The class under all twelve relabelings and reflections.
    Orbit(TriangleInput),
    /// Samples a family of triangles, optionally with its degenerate limit.
    Trace(TraceArgs),
    /// The incircle/outcircle configuration and a sampled Poncelet orbit.
    Poncelet {
        #[arg(long)]
        r: f64,
        #[arg(long = "R")]
        big_r: f64,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Whether two families have distinct limits in a model.
    Separate {
        /// `constant-angle:α1,α2` (radians) or `constant-ratio:κ1,κ2`.
        #[arg(long, value_parser = parse_pair)]
        pair: FamilyPair,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, default_value_t = DEFAULT_SEPARATION)]
        threshold: f64,
    },
    /// Runs the acceptance criteria; fails if any does.
    Selftest,
    /// Writes figure data as CSV.
    EmitFigure(figures::FigureArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Sphere,
    Torus,
    Dyck,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Sphere => Model::Sphere,
            ModelArg::Torus => Model::Torus,
            ModelArg::Dyck => Model::Dyck,
        }
    }
}

/// A triangle given by vertices or as JSON.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["vertices", "triangle"])))]
pub struct TriangleInput {
    /// Vertices A B C as `re,im`.
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_hyphen_values = true, value_parser = parse_complex)]
    pub vertices: Option<Vec<Complex64>>,

    /// Direction sextuple `a1,a2,b1,b2,c1,c2`; needed when all vertices coincide.
    #[arg(long, requires = "vertices", allow_hyphen_values = true, value_parser = parse_directions)]
    pub directions: Option<Directions>,

    /// Free argument of a zero side, as `slot=radians` (repeatable).
    #[arg(long = "free", requires = "vertices", value_parser = parse_free)]
    pub free: Vec<(Slot, f64)>,

    /// Triangle JSON, inline or `@path`.
    #[arg(long)]
    pub triangle: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Directions(pub [f64; 6]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Poncelet,
    Inscribed,
    ConstantAngle,
    ConstantRatio,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    /// Constant angle (radians) or side ratio.
    #[arg(long)]
    pub param: Option<f64>,
    #[arg(long, default_value_t = 0.3)]
    pub r: f64,
    #[arg(long = "R", default_value_t = 1.0)]
    pub big_r: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "-1,0")]
    pub chord_b: Complex64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "1,0")]
    pub chord_c: Complex64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0,0")]
    pub center: Complex64,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 16)]
    pub samples: usize,
    /// Append the extrapolated limit at the degenerate end.
    #[arg(long)]
    pub limit: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyPair {
    pub kind: FamilyKind,
    pub params: (f64, f64),
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `re,im`, got `{s}`"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("`{x}` is not a finite number"))
    };
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

fn parse_numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("`{x}` is not a finite number"))
        })
        .collect()
}

fn parse_directions(s: &str) -> Result<Directions, String> {
    let v = parse_numbers(s)?;
    let coords: [f64; 6] = v
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 6 numbers, got {}", v.len()))?;
    Ok(Directions(coords))
}

fn parse_slot(s: &str) -> Result<Slot, String> {
    match s {
        "a" => Ok(Slot::A),
        "b" => Ok(Slot::B),
        "c" => Ok(Slot::C),
        _ => Err(format!("unknown side `{s}`, expected a, b or c")),
    }
}

fn parse_free(s: &str) -> Result<(Slot, f64), String> {
    let (slot, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected `slot=radians`, got `{s}`"))?;
    let x = value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("`{value}` is not a finite number"))?;
    Ok((parse_slot(slot)?, x))
}

fn parse_pair(s: &str) -> Result<FamilyPair, String> {
    let (kind, params) = s
        .split_once(':')
        .ok_or_else(|| format!("expected `family:p1,p2`, got `{s}`"))?;
    let kind = match kind {
        "constant-angle" => FamilyKind::ConstantAngle,
        "constant-ratio" => FamilyKind::ConstantRatio,
        _ => return Err(format!("`{kind}` is not a parameterized family (constant-angle, constant-ratio)")),
    };
    match parse_numbers(params)?.as_slice() {
        [p, q] => Ok(FamilyPair { kind, params: (*p, *q) }),
        v => Err(format!("expected two parameters, got {}", v.len())),
    }
}

/// Why a command failed, deciding the exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "error: {m}"),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<dyck_core::Error> for CliError {
    fn from(e: dyck_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs the tool on `args` (program name first) against the process's
/// standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let to_out = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let stream: &mut dyn Write = if to_out { out } else { err };
            let _ = write!(stream, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

/// The tolerance from `SHAPE_TOL`, or the default.
pub fn tolerance() -> CliResult<f64> {
    match std::env::var(TOL_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TOL),
        Err(e) => Err(CliError::Usage(format!("{TOL_VAR}: {e}"))),
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t > 0.0)
            .ok_or_else(|| CliError::Usage(format!("{TOL_VAR}={s} is not a positive number"))),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let tol = tolerance()?;
    let format = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Classify(input) => classify(&input.read(tol)?, tol, format, out),
        Command::Project { model, input } => project(&input.read(tol)?, *model, tol, format, out),
        Command::Orbit(input) => orbit_cmd(&input.read(tol)?, tol, format, out),
        Command::Trace(args) => trace(args, tol, format, out),
        Command::Poncelet { r, big_r, samples } => poncelet(*r, *big_r, *samples, format, out),
        Command::Separate { pair, model, threshold } => {
            separate(pair, (*model).into(), *threshold, tol, format, out)
        }
        Command::Selftest => return selftest(cli.format, out),
        Command::EmitFigure(args) => {
            let fig = Figure::from_args(args)?;
            out.write_all(fig.render()?.as_bytes())?;
            Ok(())
        }
    }?;
    Ok(0)
}

impl TriangleInput {
    /// Builds the triangle, checking it before anything is computed.
    pub fn read(&self, tol: f64) -> CliResult<TriangleVariable> {
        let t = if let Some(text) = &self.triangle {
            let text = match text.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(PathBuf::from(path))
                    .map_err(|e| CliError::Domain(format!("{path}: {e}")))?,
                None => text.clone(),
            };
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Domain(format!("$: invalid JSON: {e}")))?;
            json::triangle_from_json(&v, tol)?
        } else {
            let v = self.vertices.as_ref().expect("clap requires vertices or triangle");
            self.build([v[0], v[1], v[2]], tol)?
        };
        let problems = t.validate(tol);
        if !problems.is_empty() {
            let list: Vec<String> = problems.iter().map(|p| p.to_string()).collect();
            return Err(CliError::Domain(list.join("; ")));
        }
        Ok(t)
    }

    fn build(&self, v: [Complex64; 3], tol: f64) -> CliResult<TriangleVariable> {
        let mut t = if v[0] == v[1] && v[1] == v[2] {
            let d = self.directions.ok_or(dyck_core::Error::UnderdeterminedTriplePoint)?;
            TriangleVariable::triple_point(v[1], DirectionTriple::new(d.0, tol)?)
        } else {
            let t = TriangleVariable::from_vertices(v[0], v[1], v[2])?;
            if let Some(d) = self.directions {
                if !t.directions.approx_eq(&DirectionTriple::new(d.0, tol)?, tol) {
                    return Err(CliError::Domain("directions: do not match the vertices".into()));
                }
            }
            t
        };
        for (slot, x) in &self.free {
            t = t.with_free_argument(*slot, AngleModPi::new(*x)?)?;
        }
        Ok(t)
    }
}

fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        ryu::Buffer::new().format_finite(x).to_owned()
    } else {
        x.to_string()
    }
}

fn write_json(out: &mut dyn Write, v: &Value) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn class_fields(c: &ShapeClass) -> Vec<String> {
    let mut v: Vec<String> = c
        .sides
        .coords()
        .iter()
        .flat_map(|z| [fmt_f64(z.re), fmt_f64(z.im)])
        .collect();
    v.extend(c.angles.iter().map(|a| fmt_f64(a.value())));
    v
}

const CLASS_HEADER: [&str; 9] = ["a_re", "a_im", "b_re", "b_im", "c_re", "c_im", "alpha", "beta", "gamma"];

fn classify(t: &TriangleVariable, tol: f64, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let degeneracy = t.classify(tol);
    let orientation = t.orientation(tol);
    let angles = t.interior_angles().ok().map(|a| a.map(|x| x.value()));
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "degeneracy": degeneracy,
                "orientation": orientation,
                "angles": angles,
            }),
        ),
        Format::Csv => {
            let mut row = vec![degeneracy.to_string(), orientation.to_string()];
            match angles {
                Some(a) => row.extend(a.map(fmt_f64)),
                None => row.extend(["", "", ""].map(String::from)),
            }
            write_csv(out, &["degeneracy", "orientation", "alpha", "beta", "gamma"], &[row])
        }
    }
}

fn project(t: &TriangleVariable, model: ModelArg, tol: f64, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let c = class_of(t)?;
    match (model, format) {
        (ModelArg::Sphere, _) => {
            let s = to_sphere(&c);
            let loci: Vec<String> = classify_sphere_locus(&s, tol).iter().map(|l| l.to_string()).collect();
            if format == Format::Json {
                write_json(out, &json!({"model": "sphere", "point": json::sphere_to_json(&s), "loci": loci}))
            } else {
                let row = vec![fmt_f64(s.x), fmt_f64(s.y), fmt_f64(s.z), loci.join(";")];
                write_csv(out, &["x", "y", "z", "loci"], &[row])
            }
        }
        (ModelArg::Torus, _) => {
            let p = to_torus(&c);
            let sheet = format!("{:?}", p.sheet());
            if format == Format::Json {
                write_json(out, &json!({"model": "torus", "point": json::torus_to_json(&p), "sheet": sheet}))
            } else {
                let row = vec![fmt_f64(p.p.value()), fmt_f64(p.q.value()), fmt_f64(p.r.value()), sheet];
                write_csv(out, &["p", "q", "r", "sheet"], &[row])
            }
        }
        (ModelArg::Dyck, Format::Json) => write_json(
            out,
            &json!({"model": "dyck", "class": json::class_to_json(&c), "blowup": json::blowup_to_json(&phi(&c))}),
        ),
        (ModelArg::Dyck, Format::Csv) => write_csv(out, &CLASS_HEADER, &[class_fields(&c)]),
    }
}

fn orbit_cmd(t: &TriangleVariable, tol: f64, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let c = class_of(t)?;
    let distinct = orbit(&c, tol).len();
    let images: Vec<(GroupElement, ShapeClass)> = GroupElement::all()
        .into_iter()
        .map(|g| (g, class_of(&t.act(&g))))
        .map(|(g, r)| r.map(|c| (g, c)))
        .collect::<Result<_, _>>()?;
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "size": distinct,
                "canonical": json::class_to_json(&canonical_rep(&c, tol)),
                "images": images.iter().map(|(g, c)| json!({"element": g.to_string(), "class": json::class_to_json(c)})).collect::<Vec<_>>(),
            }),
        ),
        Format::Csv => {
            let mut header = vec!["element"];
            header.extend(CLASS_HEADER);
            let rows: Vec<Vec<String>> = images
                .iter()
                .map(|(g, c)| {
                    let mut r = vec![g.to_string()];
                    r.extend(class_fields(c));
                    r
                })
                .collect();
            write_csv(out, &header, &rows)
        }
    }
}

fn require(param: Option<f64>, family: &str) -> CliResult<f64> {
    param.ok_or_else(|| CliError::Usage(format!("--family {family} needs --param")))
}

fn build_family(args: &TraceArgs) -> CliResult<Option<Family>> {
    Ok(Some(match args.family {
        FamilyKind::Poncelet => return Ok(None),
        FamilyKind::Inscribed => inscribed_family(args.chord_b, args.chord_c, args.center, args.radius)?,
        FamilyKind::ConstantAngle => {
            let alpha = require(args.param, "constant-angle")?;
            constant_angle_family(AngleModPi::new(alpha)?)?
        }
        FamilyKind::ConstantRatio => constant_ratio_family(require(args.param, "constant-ratio")?)?,
    }))
}

struct TraceRow {
    t: f64,
    class: ShapeClass,
}

fn trace(args: &TraceArgs, tol: f64, format: Format, out: &mut dyn Write) -> CliResult<()> {
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let n = args.samples;
    let (label, rows, limit) = match build_family(args)? {
        None => {
            if args.limit {
                return Err(CliError::Usage("the Poncelet family does not degenerate; drop --limit".into()));
            }
            let cfg = PonceletConfig::from_radii(args.r, args.big_r)?;
            let rows = (0..n)
                .map(|k| {
                    let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                    Ok(TraceRow { t: theta, class: class_of(&poncelet_family(&cfg, theta)?)? })
                })
                .collect::<CliResult<Vec<_>>>()?;
            ("poncelet".to_string(), rows, None)
        }
        Some(f) => {
            let (lo, hi) = f.domain;
            let hi = if hi.is_finite() { hi } else { lo + 4.0 };
            let rows = (1..=n)
                .map(|k| {
                    let t = lo + (hi - lo) * k as f64 / (n + 1) as f64;
                    Ok(TraceRow { t, class: f.class_at(t)? })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let limit = if args.limit {
                let end = match f.limit_end {
                    dyck_core::families::LimitEnd::Lower => lo,
                    dyck_core::families::LimitEnd::Upper => hi,
                };
                Some(TraceRow { t: end, class: limit_class(&f, &f.default_schedule(), tol)? })
            } else {
                None
            };
            (f.label.clone(), rows, limit)
        }
    };
    match format {
        Format::Json => {
            let row = |r: &TraceRow| {
                json!({
                    "t": r.t,
                    "class": json::class_to_json(&r.class),
                    "sphere": json::sphere_to_json(&to_sphere(&r.class)),
                    "torus": json::torus_to_json(&to_torus(&r.class)),
                })
            };
            let mut v = json!({"family": label, "rows": rows.iter().map(row).collect::<Vec<_>>()});
            if let Some(l) = &limit {
                v["limit"] = row(l);
            }
            write_json(out, &v)
        }
        Format::Csv => {
            let csv_row = |r: &TraceRow| -> Vec<String> {
                let s = to_sphere(&r.class);
                let p = to_torus(&r.class);
                vec![
                    fmt_f64(r.t),
                    json::class_to_json(&r.class).to_string(),
                    fmt_f64(s.x),
                    fmt_f64(s.y),
                    fmt_f64(s.z),
                    fmt_f64(p.p.value()),
                    fmt_f64(p.q.value()),
                    fmt_f64(p.r.value()),
                ]
            };
            let table: Vec<Vec<String>> = rows.iter().chain(limit.iter()).map(csv_row).collect();
            write_csv(out, &["t", "class", "x", "y", "z", "p", "q", "r"], &table)
        }
    }
}

fn poncelet(r: f64, big_r: f64, samples: usize, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let cfg = PonceletConfig::from_radii(r, big_r)?;
    let mut orbit = Vec::with_capacity(samples);
    for k in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
        let t = poncelet_family(&cfg, theta)?;
        let ratio = incircle_outcircle(&t)?.ratio();
        orbit.push((theta, t.vertices(), ratio, poncelet_closure_residual(&cfg, &t)));
    }
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "config": json::config_to_json(&cfg),
                "ratio": cfg.ratio(),
                "chapple_residual": cfg.chapple_residual(),
                "orbit": orbit.iter().map(|(theta, v, ratio, res)| json!({
                    "theta": theta,
                    "vertices": v.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
                    "ratio": ratio,
                    "closure_residual": res,
                })).collect::<Vec<_>>(),
            }),
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = orbit
                .iter()
                .map(|(theta, v, ratio, res)| {
                    let mut r = vec![fmt_f64(*theta)];
                    r.extend(v.iter().flat_map(|z| [fmt_f64(z.re), fmt_f64(z.im)]));
                    r.extend([fmt_f64(*ratio), fmt_f64(*res)]);
                    r
                })
                .collect();
            write_csv(
                out,
                &["theta", "a_re", "a_im", "b_re", "b_im", "c_re", "c_im", "ratio", "closure_residual"],
                &rows,
            )
        }
    }
}

fn pair_family(kind: FamilyKind, p: f64) -> CliResult<Family> {
    Ok(match kind {
        FamilyKind::ConstantAngle => constant_angle_family(AngleModPi::new(p)?)?,
        FamilyKind::ConstantRatio => constant_ratio_family(p)?,
        _ => unreachable!("parse_pair only accepts parameterized families"),
    })
}

fn separate(pair: &FamilyPair, model: Model, threshold: f64, tol: f64, format: Format, out: &mut dyn Write) -> CliResult<()> {
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(CliError::Usage(format!("--threshold {threshold} must be positive")));
    }
    let f1 = pair_family(pair.kind, pair.params.0)?;
    let f2 = pair_family(pair.kind, pair.params.1)?;
    let report = separation_test(&f1, &f2, model, &dyck_core::extrapolate::DEFAULT_OFFSETS, threshold, tol)?;
    match format {
        Format::Json => write_json(out, &json::report_to_json(&report)),
        Format::Csv => write_csv(
            out,
            &["model", "distance", "verdict"],
            &[vec![report.model.to_string(), fmt_f64(report.distance), format!("{:?}", report.verdict)]],
        ),
    }
}

/// Criteria 1 to 10 plus an in-process check that every figure renders
/// identically twice.
pub fn selftest_reports() -> Vec<verify::CriterionReport> {
    let mut reports = verify::run_all();
    reports.push(figures::determinism_report());
    reports
}

fn selftest(format: Option<Format>, out: &mut dyn Write) -> CliResult<i32> {
    let reports = selftest_reports();
    match format {
        None => {
            for r in &reports {
                writeln!(out, "{}", r.line())?;
            }
        }
        Some(Format::Json) => write_json(
            out,
            &Value::Array(
                reports
                    .iter()
                    .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}))
                    .collect(),
            ),
        )?,
        Some(Format::Csv) => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| vec![r.id.to_string(), r.name.to_string(), r.passed.to_string(), r.detail.clone()])
                .collect();
            write_csv(out, &["id", "name", "passed", "detail"], &rows)?
        }
    }
    Ok(if reports.iter().all(|r| r.passed) { 0 } else { 1 })
}
