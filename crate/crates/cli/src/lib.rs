//! The `systolic-atlas` command line. [`run`] is the whole program; the
//! binary only wires it to the process streams.
//!
//! Data goes to stdout (or `--out`), diagnostics to stderr. Exit codes:
//! 0 on success, 2 on invalid input or usage, 3 when a size limit is hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use systolic_atlas::census::{CensusStore, DEFAULT_V_MAX};
use systolic_atlas::hypgeom::{solve_pentagon, DEFAULT_TOLERANCE};
use systolic_atlas::mdp::{ball, ball_bound, sparsity_experiment, SparsityParams};
use systolic_atlas::multigraph::{girth, named};
use systolic_atlas::rewrite::girth_lift;
use systolic_atlas::surfaces::{
    build_hairy_torus, build_y_surface, hairy_torus_report, verify_systole_certificate,
};
use systolic_atlas::{CanonicalCode, CubicMultigraph, Error};

#[derive(Parser, Debug)]
#[command(
    name = "systolic-atlas",
    version,
    about = "Cubic multigraph census, Whitehead moves and systole certificates"
)]
pub struct RunConfig {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Directory for census cache files (overrides SYSTOLIC_ATLAS_CACHE).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for census and MDP searches (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Largest census vertex count (up to 14).
    #[arg(long, global = true, default_value_t = DEFAULT_V_MAX)]
    pub v_max: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Census of connected cubic multigraphs on V vertices.
    Census {
        /// Vertex count (even).
        #[arg(long = "v")]
        v: usize,
        /// Include the canonical codes.
        #[arg(long)]
        list: bool,
    },
    /// Solve the right-angled pentagon that fixes s and b.
    Pentagon {
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_negative_numbers = true)]
        tolerance: f64,
    },
    /// Hairy torus cover of an m x n grid of π/4 squares.
    HairyTorus {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Y-piece surface over a graph of girth at least 6, with its certificate.
    YSurface {
        /// Graph in .cmg format.
        #[arg(long)]
        input: PathBuf,
        /// Apply the girth lift first.
        #[arg(long)]
        lift: bool,
    },
    /// Raise the girth of a graph to at least 6 with octagon gadgets.
    GirthLift {
        /// Graph in .cmg format.
        #[arg(long)]
        input: PathBuf,
    },
    /// Ball in the move graph around a census class.
    MdpBall {
        /// Genus; the graphs have 2g - 2 vertices.
        #[arg(long)]
        g: usize,
        /// Radius.
        #[arg(long)]
        r: usize,
        /// Canonical code of the center (default: a uniform sample from --seed).
        #[arg(long)]
        center: Option<String>,
    },
    /// Fraction of graphs with many short disjoint cycles and distances to them.
    Sparsity {
        #[arg(long, default_value_t = 2)]
        g_min: usize,
        #[arg(long, default_value_t = 6)]
        g_max: usize,
        /// Longest cycle counted.
        #[arg(long = "L", alias = "max-length", default_value_t = 3)]
        max_length: usize,
        /// Required cycles are ceil(h g).
        #[arg(long, default_value_t = 0.25, allow_negative_numbers = true)]
        h: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Summary of every computation at default sizes.
    Report,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

struct Output {
    json: Value,
    csv: String,
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let result = match config.global.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))
            .and_then(|pool| pool.install(|| execute(&config))),
        None => execute(&config),
    };
    let result = result.and_then(|o| emit(&config.global, o, stdout));
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_limit() {
                3
            } else {
                2
            }
        }
    }
}

fn emit(global: &GlobalArgs, o: Output, stdout: &mut dyn Write) -> Result<(), Failure> {
    let text = match global.format {
        Format::Json => {
            let mut s = String::new();
            write_json(&o.json, 0, &mut s);
            s.push('\n');
            s
        }
        Format::Csv => o.csv,
    };
    match &global.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(config: &RunConfig) -> Result<Output, Failure> {
    let g = &config.global;
    if g.v_max > systolic_atlas::census::EXTENDED_V_MAX {
        return Err(Failure::Usage(format!("--v-max {} exceeds 14", g.v_max)));
    }
    let store = CensusStore::with_env(g.cache_dir.clone(), g.v_max);
    match &config.command {
        Command::Census { v, list } => census(&store, *v, *list),
        Command::Pentagon { tolerance } => pentagon(*tolerance),
        Command::HairyTorus { m, n } => hairy(*m, *n),
        Command::YSurface { input, lift } => y_surface(input, *lift),
        Command::GirthLift { input } => lift(input),
        Command::MdpBall {
            g: genus,
            r,
            center,
        } => mdp_ball(&store, *genus, *r, center.as_deref(), g.seed),
        Command::Sparsity {
            g_min,
            g_max,
            max_length,
            h,
            trials,
        } => {
            let params = SparsityParams {
                g_min: *g_min,
                g_max: *g_max,
                max_length: *max_length,
                h: *h,
                trials: *trials,
                seed: g.seed,
            };
            let report = sparsity_experiment(&store, &params)?;
            Ok(Output {
                csv: report.to_csv(),
                json: to_value(&report),
            })
        }
        Command::Report => report(&store, g.seed),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn read_graph(path: &Path) -> Result<CubicMultigraph, Failure> {
    let text = std::fs::read_to_string(path)?;
    Ok(CubicMultigraph::from_cmg(&text)?)
}

fn census(store: &CensusStore, v: usize, list: bool) -> Result<Output, Failure> {
    let table = store.table(v)?;
    let simple = table.count_simple();
    let mut json = json!({
        "V": v,
        "genus": table.genus(),
        "count": table.count(),
        "count_simple": simple,
    });
    let mut csv = format!(
        "V,genus,count,count_simple\n{v},{},{},{simple}\n",
        table.genus(),
        table.count()
    );
    if list {
        json["codes"] = to_value(&table.codes());
        csv = String::from("code\n");
        for c in table.codes() {
            csv.push_str(c.as_str());
            csv.push('\n');
        }
    }
    Ok(Output { json, csv })
}

fn pentagon(tolerance: f64) -> Result<Output, Failure> {
    let p = solve_pentagon(tolerance)?;
    let mut json = to_value(&p);
    json["tolerance"] = json!(tolerance);
    json["defining_residual"] = json!(p.defining_residual());
    json["companion_residual"] = json!(p.companion_residual());
    let mut csv = String::from("quantity,value\n");
    for (name, x) in [("s", p.s), ("b", p.b), ("c", p.c)] {
        csv.push_str(&format!("{name},{}\n", fmt_float(x)));
    }
    for (i, r) in p.residuals.iter().enumerate() {
        csv.push_str(&format!("residual_{i},{}\n", fmt_float(*r)));
    }
    Ok(Output { json, csv })
}

fn hairy(m: usize, n: usize) -> Result<Output, Failure> {
    let model = build_hairy_torus(m, n)?;
    let r = hairy_torus_report(m, n)?;
    let mut json = to_value(&r);
    json["singular_count"] = json!(model.singular_count);
    json["square"] = to_value(&model.square);
    let csv = format!(
        "m,n,genus,systole_length,bers_lower_bound,bers_exceeds_2sqrt_g,systole_certified,filling\n{m},{n},{},{},{},{},{},{}\n",
        r.genus,
        fmt_float(r.systole_length),
        fmt_float(r.bers_lower_bound),
        r.bers_exceeds_2sqrt_g,
        r.systole_certified,
        r.filling_certificate.passes
    );
    Ok(Output { json, csv })
}

fn y_surface(input: &Path, lift: bool) -> Result<Output, Failure> {
    let mut g = read_graph(input)?;
    if lift {
        g = girth_lift(&g)?.0;
    }
    let model = build_y_surface(&g)?;
    let report = verify_systole_certificate(&model);
    let mut csv = String::from("check,name,bound,required,margin,passed\n");
    for c in &report.checks {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.id,
            c.name.replace(',', ""),
            fmt_float(c.bound),
            fmt_float(c.required),
            fmt_float(c.margin),
            c.passed
        ));
    }
    Ok(Output {
        json: json!({ "model": to_value(&model), "certificate": to_value(&report) }),
        csv,
    })
}

fn lift(input: &Path) -> Result<Output, Failure> {
    let g = read_graph(input)?;
    let (lifted, corr) = girth_lift(&g)?;
    let gi = girth(&lifted);
    let json = json!({
        "input_vertices": g.vertex_count(),
        "output_vertices": lifted.vertex_count(),
        "girth": gi,
        "correspondence": to_value(&corr),
        "cmg": lifted.to_cmg(),
    });
    let csv = format!(
        "input_vertices,output_vertices,girth,gadgets,a,b,coverage_radius\n{},{},{gi},{},{},{},{}\n",
        g.vertex_count(),
        lifted.vertex_count(),
        corr.gadgets,
        fmt_float(corr.a),
        corr.b,
        corr.coverage_radius
    );
    Ok(Output { json, csv })
}

fn mdp_ball(
    store: &CensusStore,
    g: usize,
    r: usize,
    center: Option<&str>,
    seed: u64,
) -> Result<Output, Failure> {
    if g < 2 {
        return Err(Failure::Usage(format!("genus must be at least 2, got {g}")));
    }
    let v = 2 * g - 2;
    let center: CanonicalCode = match center {
        Some(text) => {
            let c: CanonicalCode = text.parse()?;
            if c.vertex_count() != v {
                return Err(Failure::Usage(format!(
                    "center has {} vertices, genus {g} needs {v}",
                    c.vertex_count()
                )));
            }
            c
        }
        None => systolic_atlas::multigraph::canonical_code(&store.sample_uniform(v, seed)?),
    };
    let b = ball(store, &center, r)?;
    let mut by_distance = vec![0usize; r + 1];
    for &d in b.values() {
        by_distance[d] += 1;
    }
    let bound = ball_bound(g, r);
    let bound_json = match u64::try_from(&bound) {
        Ok(x) => json!(x),
        Err(_) => json!(bound.to_string()),
    };
    let within = num_le(b.len(), &bound_json);
    let json = json!({
        "g": g,
        "V": v,
        "r": r,
        "center": center.as_str(),
        "size": b.len(),
        "by_distance": by_distance,
        "bound": bound_json,
        "within_bound": within,
    });
    let csv = format!(
        "g,V,r,size,bound,within_bound\n{g},{v},{r},{},{bound},{within}\n",
        b.len()
    );
    Ok(Output { json, csv })
}

fn num_le(size: usize, bound: &Value) -> bool {
    // a bound too large for u64 exceeds any ball that fits in memory
    bound.as_u64().map_or(true, |b| size as u64 <= b)
}

fn report(store: &CensusStore, seed: u64) -> Result<Output, Failure> {
    let growth = store.growth_report(store.v_max().min(DEFAULT_V_MAX))?;
    let pentagon = solve_pentagon(DEFAULT_TOLERANCE)?;
    let hairy: Vec<_> = (4..=20)
        .step_by(2)
        .map(|n| hairy_torus_report(n, n))
        .collect::<Result<_, _>>()?;
    let heawood = build_y_surface(&named::heawood())?;
    let certificate = verify_systole_certificate(&heawood);
    let sparsity = sparsity_experiment(
        store,
        &SparsityParams {
            g_min: 2,
            g_max: 6,
            max_length: 3,
            h: 0.25,
            trials: 100,
            seed,
        },
    )?;
    let mut csv = String::from("g,V,count,g_pow_2g,ratio\n");
    for r in &growth {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            r.genus,
            r.vertex_count,
            r.count,
            r.g_pow_2g,
            fmt_float(r.ratio)
        ));
    }
    let json = json!({
        "growth": to_value(&growth),
        "pentagon": to_value(&pentagon),
        "hairy_torus": to_value(&hairy),
        "y_surface_heawood": { "genus": heawood.genus, "complex": to_value(&heawood.complex), "certificate": to_value(&certificate) },
        "sparsity": to_value(&sparsity),
    });
    Ok(Output { json, csv })
}

/// 17 significant digits, positional where that stays short.
fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..16).contains(&mag) {
        format!("{:.*}", (16 - mag) as usize, x)
    } else {
        format!("{:.16e}", x)
    }
}

fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize, out: &mut String| out.extend(std::iter::repeat("  ").take(n));
    match v {
        Value::Number(n) if n.is_f64() => out.push_str(&fmt_float(n.as_f64().unwrap())),
        Value::Array(items) if !items.is_empty() => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(indent + 1, out);
                write_json(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => write_object(map, indent, out),
        other => out.push_str(&other.to_string()),
    }
}

fn write_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    out.push_str("{\n");
    for (i, (k, v)) in map.iter().enumerate() {
        out.extend(std::iter::repeat("  ").take(indent + 1));
        out.push_str(&Value::String(k.clone()).to_string());
        out.push_str(": ");
        write_json(v, indent + 1, out);
        out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
    }
    out.extend(std::iter::repeat("  ").take(indent));
    out.push('}');
}
