use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pantsgraph::pants::{pants_distance_escalating, DEFAULT_VERTEX_BUDGET};
use pantsgraph::translation::{default_curve_probes, default_slope_probes, orbit_distances_escalating};
use pantsgraph::*;
use serde::Serialize;
use serde_json::{json, Value};

const GRAMMAR: &str = "\
Grammars:
  curve  DT[g=2; (m1,t1) (m2,t2) (m3,t3)]
         Dehn-Thurston coordinates relative to the base decomposition
         {c1, s, c5}, one (m,t) pair per base curve; decimal integers, m >= 0.
  slope  p/q in lowest terms with q >= 0; 1/0 is allowed.
         Curves on the punctured-torus model are slopes.
  pants  {curve; curve; curve} on a closed surface, {p/q} on the punctured
         torus.
  word   whitespace-separated tokens; token = generator name (t1 .. t{2g+1},
         or L / R for the punctured-torus model) optionally followed by ^ and
         a nonzero decimal exponent. The rightmost token acts first.";

/// Pants graphs, Dehn twists and mapping-torus volumes on a genus-2 surface
/// and the once-punctured torus.
#[derive(Parser)]
#[command(name = "pantsgraph", version, after_help = GRAMMAR)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Genus of the closed model.
    #[arg(long, global = true, default_value_t = 2)]
    genus: u32,
    #[arg(long, global = true, value_enum, default_value_t = ModelArg::Closed)]
    model: ModelArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized harnesses; the subcommands here are deterministic
    /// and ignore it.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Closed,
    PuncturedTorus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Copy)]
struct CutoffArgs {
    /// Twist window in genus 2; box bound |p|, q <= T on the punctured
    /// torus (default: 1 in genus 2, the smallest box holding the inputs on
    /// the torus).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    max_twist: Option<u32>,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    max_radius: u32,
    /// Vertex budget of one search.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_vertices: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Geometric intersection number of two curves or slopes.
    #[command(after_help = GRAMMAR)]
    Intersect {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Image of a curve or slope under a word.
    #[command(after_help = GRAMMAR)]
    Twist {
        #[arg(long)]
        word: String,
        #[arg(long)]
        curve: String,
    },
    /// Pants decompositions one elementary move away.
    #[command(after_help = GRAMMAR)]
    Neighbors {
        #[arg(long)]
        pants: String,
        #[command(flatten)]
        cutoff: CutoffArgs,
    },
    /// Distance in the truncated pants graph, with a path.
    #[command(after_help = GRAMMAR)]
    Dist {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        cutoff: CutoffArgs,
        /// Attempts, doubling max-twist and growing max-radius after each
        /// inexact one.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        rounds: u32,
    },
    /// Orbit distances d(P, w^n P) and the estimate min d_n / n.
    #[command(after_help = GRAMMAR)]
    TranslationLength {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[command(flatten)]
        cutoff: CutoffArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        rounds: u32,
        /// Iterations of the reducibility heuristic.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        probe_depth: u32,
    },
    /// Volume / length ratios and the empirical constant.
    #[command(after_help = GRAMMAR)]
    Compare {
        /// Volume table (name,genus,word,volume[,power_of,power]).
        #[arg(long)]
        volumes: PathBuf,
        /// Precomputed orbit samples to reuse.
        #[arg(long)]
        lengths: Option<PathBuf>,
        /// Writes the orbit samples used.
        #[arg(long)]
        write_lengths: Option<PathBuf>,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[command(flatten)]
        cutoff: CutoffArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        rounds: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        probe_depth: u32,
    },
    /// Checks vol(w^n) = n vol(w) over a volume table.
    #[command(after_help = GRAMMAR)]
    PowerCheck {
        #[arg(long)]
        volumes: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Writes a monodromy exchange file.
    #[command(after_help = GRAMMAR)]
    Export {
        #[arg(long)]
        word: String,
        #[arg(long)]
        volume: Option<f64>,
        /// Destination; the file text is printed when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Intersect { .. } => "intersect",
            Command::Twist { .. } => "twist",
            Command::Neighbors { .. } => "neighbors",
            Command::Dist { .. } => "dist",
            Command::TranslationLength { .. } => "translation-length",
            Command::Compare { .. } => "compare",
            Command::PowerCheck { .. } => "power-check",
            Command::Export { .. } => "export",
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::SurfaceMismatch(..) => "surface_mismatch",
        Error::MalformedCoordinates(_) => "malformed_coordinates",
        Error::EmptyMulticurve => "empty_multicurve",
        Error::MalformedWord(_) => "malformed_word",
        Error::Parse(_) => "parse",
        Error::UnsupportedGenus(_) => "unsupported_genus",
        Error::WrongModel(_) => "wrong_model",
        Error::CoordinateOverflow => "coordinate_overflow",
        Error::WrongCount { .. } => "wrong_count",
        Error::IntersectingCurves { .. } => "intersecting_curves",
        Error::DuplicateCurve { .. } => "duplicate_curve",
        Error::NotACurve(_) => "not_a_curve",
        Error::NotFound { .. } => "not_found",
        Error::InvalidCutoff => "invalid_cutoff",
        Error::InsufficientData => "insufficient_data",
        Error::Schema { .. } => "schema",
        Error::NonPositiveVolume { .. } => "non_positive_volume",
        Error::DuplicateName { .. } => "duplicate_name",
        Error::Io(_) => "io",
    }
}

enum Object {
    Curve(Curve64),
    Slope(Slope64),
}

impl Object {
    fn to_value(&self) -> Value {
        match self {
            Object::Curve(c) => Value::String(c.to_string()),
            Object::Slope(s) => Value::String(s.to_string()),
        }
    }
}

struct Context {
    surface: SurfaceSpec,
}

impl Context {
    fn new(c: &Common) -> Result<Self> {
        let surface = match c.model {
            ModelArg::Closed => SurfaceSpec::closed(c.genus)?,
            ModelArg::PuncturedTorus => SurfaceSpec::punctured_torus(),
        };
        Ok(Context { surface })
    }

    fn object(&self, text: &str) -> std::result::Result<Object, Failure> {
        if self.surface.is_closed() {
            let c = Curve64::parse(text).map_err(usage)?;
            c.surface().same_as(&self.surface)?;
            Ok(Object::Curve(c))
        } else {
            Ok(Object::Slope(Slope64::parse(text).map_err(usage)?))
        }
    }

    fn word(&self, text: &str) -> std::result::Result<MappingClassWord, Failure> {
        MappingClassWord::parse(self.surface, text).map_err(usage)
    }

    fn pants(&self, text: &str) -> std::result::Result<Pants64, Failure> {
        match Pants64::parse(self.surface, text) {
            Err(e @ Error::Parse(_)) => Err(usage(e)),
            other => Ok(other?),
        }
    }

    fn cutoff(&self, a: &CutoffArgs, inputs: &[&Pants64], default_budget: usize) -> Result<Cutoff> {
        let twist = a.max_twist.unwrap_or_else(|| match self.surface.model {
            Model::PuncturedTorus => inputs
                .iter()
                .filter_map(|p| p.slope())
                .map(|s| s.p().unsigned_abs().max(s.q().unsigned_abs()))
                .max()
                .unwrap_or(1)
                .clamp(1, u64::from(u32::MAX)) as u32,
            Model::Closed { .. } => 1,
        });
        let budget = a.max_vertices.map_or(default_budget, |v| v as usize);
        Ok(Cutoff::new(twist, a.max_radius)?.with_budget(budget))
    }

    fn surface_value(&self) -> Value {
        Value::String(self.surface.to_string())
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable payload")
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn intersect(cx: &Context, a: &str, b: &str) -> std::result::Result<Value, Failure> {
    let (x, y) = (cx.object(a)?, cx.object(b)?);
    let n = match (&x, &y) {
        (Object::Curve(p), Object::Curve(q)) => intersection_number(p, q)?,
        (Object::Slope(p), Object::Slope(q)) => slope_intersection(p, q),
        _ => unreachable!("both objects follow the model"),
    };
    Ok(json!({ "surface": cx.surface_value(), "a": x.to_value(), "b": y.to_value(), "intersection": n }))
}

fn twist(cx: &Context, word: &str, curve: &str) -> std::result::Result<Value, Failure> {
    let w = cx.word(word)?;
    let x = cx.object(curve)?;
    let image = match &x {
        Object::Curve(c) => Object::Curve(apply_word(&w, c)?),
        Object::Slope(s) => Object::Slope(farey::act(&w, s)?),
    };
    Ok(json!({ "surface": cx.surface_value(), "word": w.to_string(), "curve": x.to_value(), "image": image.to_value() }))
}

fn run(cli: &Cli) -> std::result::Result<Value, Failure> {
    let cx = Context::new(&cli.common).map_err(usage)?;
    match &cli.command {
        Command::Intersect { a, b } => intersect(&cx, a, b),
        Command::Twist { word, curve } => twist(&cx, word, curve),
        Command::Neighbors { pants, cutoff } => {
            let p = cx.pants(pants)?;
            let c = cx.cutoff(cutoff, &[&p], DEFAULT_VERTEX_BUDGET)?;
            let ns = neighbors(&p, &c)?;
            Ok(json!({
                "surface": cx.surface_value(),
                "pants": to_value(&p),
                "cutoff": to_value(&c),
                "count": ns.len(),
                "neighbors": to_value(&ns),
            }))
        }
        Command::Dist { from, to, cutoff, rounds } => {
            let (p, q) = (cx.pants(from)?, cx.pants(to)?);
            let c = cx.cutoff(cutoff, &[&p, &q], DEFAULT_VERTEX_BUDGET)?;
            let cert = pants_distance_escalating(&p, &q, &c, *rounds)?;
            Ok(json!({
                "surface": cx.surface_value(),
                "from": to_value(&p),
                "to": to_value(&q),
                "distance": cert.distance,
                "status": to_value(&cert.status),
                "path": to_value(&cert.path),
                "cutoff": to_value(&cert.cutoff),
                "visited": cert.visited,
            }))
        }
        Command::TranslationLength { word, n_max, cutoff, rounds, probe_depth } => {
            let w = cx.word(word)?;
            let base = Pants64::base(cx.surface)?;
            let c = cx.cutoff(cutoff, &[], DEFAULT_VERTEX_BUDGET)?;
            let e = orbit_distances_escalating(&w, &base, *n_max, &c, *rounds)?;
            let verdict = match cx.surface.model {
                Model::PuncturedTorus => to_value(&reducibility_heuristic(&w, &default_slope_probes::<i64>(), *probe_depth)?),
                Model::Closed { .. } => to_value(&reducibility_heuristic(&w, &default_curve_probes::<i64>(), *probe_depth)?),
            };
            Ok(json!({ "surface": cx.surface_value(), "estimate": to_value(&e), "heuristic": verdict }))
        }
        Command::Compare { volumes, lengths, write_lengths, n_max, cutoff, rounds, probe_depth } => {
            let defaults = EstimatorConfig::default();
            let mut args = *cutoff;
            if args.max_twist.is_none() {
                args.max_twist = Some(defaults.cutoff.max_twist);
            }
            let config = EstimatorConfig {
                n_max: *n_max,
                cutoff: cx.cutoff(&args, &[], defaults.cutoff.max_vertices)?,
                rounds: *rounds,
                probe_depth: *probe_depth,
            };
            let mut records: Vec<Record64> = load_volumes(read(volumes)?.as_bytes())?;
            if let Some(path) = lengths {
                attach_samples(&mut records, &load_samples(read(path)?.as_bytes())?)?;
            }
            attach_estimates(&mut records, &config)?;
            if let Some(path) = write_lengths {
                let mut buf = Vec::new();
                write_samples(&records, &mut buf)?;
                fs::write(path, buf).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(to_value(&compare(&records, &config)?))
        }
        Command::PowerCheck { volumes, tol } => {
            let records: Vec<Record64> = load_volumes(read(volumes)?.as_bytes())?;
            Ok(to_value(&power_consistency(&records, *tol)))
        }
        Command::Export { word, volume, out } => {
            let w = cx.word(word)?;
            if w.is_identity() {
                return Err(Failure::Usage("export needs a nonempty word".into()));
            }
            if volume.is_some_and(|v| !(v.is_finite() && v > 0.0)) {
                return Err(Error::NonPositiveVolume { line: 4 }.into());
            }
            let r = Record64 {
                name: String::new(),
                surface: cx.surface,
                word: w,
                volume: *volume,
                power_of: None,
                estimate: None,
            };
            let mut buf = Vec::new();
            export_monodromy(&r, &mut buf)?;
            let text = String::from_utf8(buf).expect("ascii exchange file");
            if let Some(path) = out {
                fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(json!({ "path": out.as_ref().map(|p| p.display().to_string()), "exchange": text }))
        }
    }
}

fn render(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render(x, &if path.is_empty() { k.clone() } else { format!("{path}.{k}") }, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                render(x, &format!("{path}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{path}: {s}\n")),
        other => out.push_str(&format!("{path}: {other}\n")),
    }
}

fn emit(format: Format, doc: &Value, raw: Option<&str>) {
    let text = match (format, raw) {
        (Format::Json, _) => format!("{}\n", serde_json::to_string_pretty(doc).expect("json")),
        (Format::Text, Some(raw)) => raw.to_string(),
        (Format::Text, None) => {
            let mut s = String::new();
            render(doc, "", &mut s);
            s
        }
    };
    let _ = io::stdout().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}\n{GRAMMAR}");
            return ExitCode::from(2);
        }
    };
    let command = cli.command.name();
    match run(&cli) {
        Ok(result) => {
            let raw = match (&cli.command, &result["exchange"]) {
                (Command::Export { out: None, .. }, Value::String(s)) => Some(s.clone()),
                _ => None,
            };
            emit(cli.common.format, &json!({ "command": command, "result": result }), raw.as_deref());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{GRAMMAR}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            let doc = json!({ "command": command, "error": { "kind": error_kind(&e), "message": e.to_string() } });
            emit(cli.common.format, &doc, None);
            ExitCode::from(1)
        }
    }
}
