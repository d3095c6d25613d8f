//! Command-line front end: reads point sets, runs one computation and
//! writes a JSON report plus optional CSV tables.

mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use pierce_core::extremal::{halving_count, kset_count};
use pierce_core::family::{analyze_family, is_separated, Family};
use pierce_core::geometry::{combinations, PointSet};
use pierce_core::partition::{
    build_partition, colored_tuple_census, crossing_profile, same_type_extract, tuple_census, Probes,
};
use pierce_core::rational::{self, format_rational, parse_rational, Rational};
use pierce_core::selection::{
    brute_force_deepest, colorful_deepest, colorful_floor, pinning_pipeline, select_point, RChoice, SelectConfig,
};
use pierce_core::turan::{kpartite_turan, scaling_ratio};
use serde::Serialize;
use serde_json::{json, Value};

pub use input::{parse_pointset, read_edges, read_pointset, read_pointsets};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Domain(#[from] pierce_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "pierce", version, about = "Exact point-selection, partition and extremal-count experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for report.json and CSV files; the report goes to stdout
    /// when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write the command's CSV tables (requires --out).
    #[arg(long, global = true)]
    pub emit_csv: bool,
}

#[derive(Args, Debug)]
pub struct PointsArg {
    /// Point-set file: {"dimension": d, "points": [["p/q", ...], ...]}.
    #[arg(long)]
    pub input: PathBuf,
    /// Required dimension of the input.
    #[arg(long)]
    pub dimension: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ColorsArg {
    /// JSON list of point-set objects, one per color class.
    #[arg(long)]
    pub colors: PathBuf,
    #[arg(long)]
    pub dimension: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a family of d+1 simplices as crossed, loose or tight.
    #[command(after_help = "CSV class.csv: class,separated")]
    Classify {
        /// JSON list of d+1 point-set objects, each the vertices of one simplex.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dimension: Option<usize>,
    },
    /// Build a simplicial partition and profile its crossing numbers.
    #[command(after_help = "CSV parts.csv: part,size,dummy\nCSV crossings.csv: crossings,probes")]
    Partition {
        #[command(flatten)]
        points: PointsArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
        /// Number of probe hyperplanes for the crossing profile.
        #[arg(long, default_value_t = 1000)]
        probes: usize,
    },
    /// Classify all (d+1)-tuples of partition cells, and edge ambients.
    #[command(after_help = "CSV census.csv: scope,crossed,loose,tight,crowded")]
    Census {
        #[command(flatten)]
        points: PointsArg,
        /// Edge file: {"edges": [[i, j, k], ...]}, 0-based sorted indices.
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Partition each color class and classify colorful cell tuples.
    #[command(name = "colored-census", after_help = "CSV census.csv: crossed,loose,tight,tight_blocks")]
    ColoredCensus {
        #[command(flatten)]
        colors: ColorsArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Recursive selection of a point in many edge simplices.
    #[command(after_help = "CSV trace.csv: level,n,edges,r,case,assigned,assigned_pierced")]
    Select {
        #[command(flatten)]
        points: PointsArg,
        /// Edge file; all (d+1)-subsets when omitted.
        #[arg(long)]
        edges: Option<PathBuf>,
        /// Part count per level, or "auto".
        #[arg(long, default_value = "auto")]
        r: String,
        /// Base-case size below which the exact oracle is used.
        #[arg(long)]
        n0: Option<usize>,
        #[arg(long)]
        seed: u64,
    },
    /// Exact deepest point over the open edge simplices.
    #[command(name = "oracle-depth", after_help = "CSV depth.csv: pierced,x1..xd")]
    OracleDepth {
        #[command(flatten)]
        points: PointsArg,
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Exact deepest point over closed colorful simplices.
    #[command(name = "colorful-depth", after_help = "CSV depth.csv: pierced,floor")]
    ColorfulDepth {
        #[command(flatten)]
        colors: ColorsArg,
    },
    /// Pinned loose families among a collection of simplices.
    #[command(after_help = "CSV families.csv: family,simplices")]
    Pinning {
        /// JSON list of point-set objects, each the vertices of one d-simplex.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dimension: Option<usize>,
        #[arg(long)]
        seed: u64,
    },
    /// Complete block of a semi-algebraic k-partite hypergraph.
    #[command(after_help = "CSV levels.csv: level,left,right,edges,class_index,packing,mnet_sets,omega,w1,w2")]
    Turan {
        /// One point-set object per class; for the loose relation each point
        /// lists the d*d vertex coordinates of a facet.
        #[command(flatten)]
        colors: ColorsArg,
        /// Relation file, or "loose" for the loose-boundary relation in
        /// --dimension d.
        #[arg(long)]
        relation: String,
        /// Edge density lower bound, e.g. "3/10".
        #[arg(long)]
        eps: String,
        /// Constants file overriding the extraction constants.
        #[arg(long)]
        constants: Option<PathBuf>,
        #[arg(long)]
        seed: u64,
    },
    /// k parts on which all transversal tuples share one order type.
    #[command(name = "same-type", after_help = "CSV parts.csv: class,size")]
    SameType {
        #[command(flatten)]
        points: PointsArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: Option<usize>,
        /// Constant c in the default r = ceil(c k^(d^2)).
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long)]
        seed: u64,
    },
    /// Halving d-subsets.
    #[command(after_help = "CSV subsets.csv: subset,positive,negative\nCSV table.csv: n,count (with --table)")]
    Halving {
        #[command(flatten)]
        points: PointsArg,
        /// Also count halving subsets of every prefix of the input.
        #[arg(long)]
        table: bool,
    },
    /// k-subsets cut out by open halfspaces.
    #[command(after_help = "CSV subsets.csv: subset")]
    Ksets {
        #[command(flatten)]
        points: PointsArg,
        #[arg(long)]
        k: usize,
    },
}

struct Table {
    name: &'static str,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(name: &'static str, header: &[&'static str]) -> Self {
        Table { name, header: header.to_vec(), rows: Vec::new() }
    }

    fn row<T: ToString>(&mut self, cells: &[T]) {
        self.rows.push(cells.iter().map(ToString::to_string).collect());
    }
}

struct Outcome {
    inputs: Value,
    seed: Option<u64>,
    result: Value,
    tables: Vec<Table>,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    inputs: &'a Value,
    seed: Option<u64>,
    version: &'static str,
    timestamp: u64,
    result: &'a Value,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn parse_q(text: &str, flag: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn all_edges(p: &PointSet) -> Vec<Vec<usize>> {
    combinations(p.len(), p.dim + 1)
}

fn joined(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Classify { .. } => "classify",
        Command::Partition { .. } => "partition",
        Command::Census { .. } => "census",
        Command::ColoredCensus { .. } => "colored-census",
        Command::Select { .. } => "select",
        Command::OracleDepth { .. } => "oracle-depth",
        Command::ColorfulDepth { .. } => "colorful-depth",
        Command::Pinning { .. } => "pinning",
        Command::Turan { .. } => "turan",
        Command::SameType { .. } => "same-type",
        Command::Halving { .. } => "halving",
        Command::Ksets { .. } => "ksets",
    }
}

fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    let mut tables = Vec::new();
    let (inputs, seed, result) = match cmd {
        Command::Classify { input, dimension } => {
            let members = input::read_simplices(input, *dimension)?;
            let family = Family::new(members.clone())?;
            let separated = is_separated(&family)?;
            let (class, delta) = analyze_family(&family)?;
            let mut t = Table::new("class", &["class", "separated"]);
            t.row(&[format!("{class:?}"), separated.to_string()]);
            tables.push(t);
            let result = json!({ "class": class, "separated": separated, "delta": delta });
            (json!({ "simplices": members }), None, result)
        }
        Command::Partition { points, r, seed, probes } => {
            let p = read_pointset(&points.input, points.dimension)?;
            let pi = build_partition(&p, *r, *seed)?;
            let check = pi.check(&p);
            let profile = crossing_profile(&pi, &p, &Probes::Auto { count: *probes, seed: *seed })?;
            let mut parts = Table::new("parts", &["part", "size", "dummy"]);
            for (j, part) in pi.parts.iter().enumerate() {
                parts.row(&[j.to_string(), part.indices.len().to_string(), part.dummy.to_string()]);
            }
            let mut crossings = Table::new("crossings", &["crossings", "probes"]);
            for (c, &k) in profile.histogram.iter().enumerate() {
                crossings.row(&[c, k]);
            }
            tables.extend([parts, crossings]);
            let result = json!({
                "partition": pi,
                "check": check,
                "crossings": { "probes": profile.probes, "max": profile.max, "histogram": profile.histogram },
            });
            (json!({ "points": p, "r": r, "probes": probes }), Some(*seed), result)
        }
        Command::Census { points, edges, r, seed } => {
            let p = read_pointset(&points.input, points.dimension)?;
            let e = edges.as_deref().map(read_edges).transpose()?;
            let pi = build_partition(&p, *r, *seed)?;
            let census = tuple_census(&p, e.as_deref(), &pi)?;
            let mut t = Table::new("census", &["scope", "crossed", "loose", "tight", "crowded"]);
            let c = census.tuples;
            t.row(&["tuples".to_string(), c.crossed.to_string(), c.loose.to_string(), c.tight.to_string(), "0".into()]);
            if let Some(ec) = census.edges {
                t.row(&[
                    "edges".to_string(),
                    ec.crossed_ambient.to_string(),
                    ec.loose_ambient.to_string(),
                    ec.tight_ambient.to_string(),
                    ec.crowded.to_string(),
                ]);
            }
            tables.push(t);
            (json!({ "points": p, "edges": e, "r": r }), Some(*seed), to_value(&census))
        }
        Command::ColoredCensus { colors, r, seed } => {
            let classes = read_pointsets(&colors.colors, colors.dimension)?;
            let census = colored_tuple_census(&classes, *r, *seed)?;
            let mut t = Table::new("census", &["crossed", "loose", "tight", "tight_blocks"]);
            let c = census.counts;
            t.row(&[c.crossed, c.loose, c.tight, census.tight_blocks.len()]);
            tables.push(t);
            (json!({ "colors": classes, "r": r }), Some(*seed), to_value(&census))
        }
        Command::Select { points, edges, r, n0, seed } => {
            let p = read_pointset(&points.input, points.dimension)?;
            let e = match edges {
                Some(path) => read_edges(path)?,
                None => all_edges(&p),
            };
            let r_choice = if r == "auto" {
                RChoice::Auto
            } else {
                RChoice::Fixed(r.parse().map_err(|_| CliError::Usage(format!("--r: expected a count or auto, got {r:?}")))?)
            };
            let config = SelectConfig { r: r_choice, n0: *n0, seed: *seed };
            let (depth, trace) = select_point(&p, &e, &config)?;
            let mut t = Table::new("trace", &["level", "n", "edges", "r", "case", "assigned", "assigned_pierced"]);
            let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
            for (i, level) in trace.levels.iter().enumerate() {
                t.row(&[
                    i.to_string(),
                    level.n.to_string(),
                    level.edges.to_string(),
                    opt(level.r),
                    format!("{:?}", level.case),
                    opt(level.assigned),
                    opt(level.assigned_pierced),
                ]);
            }
            tables.push(t);
            let inputs = json!({ "points": p, "edges": e, "r": r, "n0": n0 });
            (inputs, Some(*seed), json!({ "depth": depth, "trace": trace }))
        }
        Command::OracleDepth { points, edges } => {
            let p = read_pointset(&points.input, points.dimension)?;
            let e = match edges {
                Some(path) => read_edges(path)?,
                None => all_edges(&p),
            };
            let depth = brute_force_deepest(&p, &e)?;
            tables.push(depth_table(&depth.point, depth.pierced_count));
            (json!({ "points": p, "edges": e }), None, to_value(&depth))
        }
        Command::ColorfulDepth { colors } => {
            let classes = read_pointsets(&colors.colors, colors.dimension)?;
            let depth = colorful_deepest(&classes)?;
            let floor = colorful_floor(&classes.iter().map(|c| c.len()).collect::<Vec<_>>());
            let mut t = Table::new("depth", &["pierced", "floor"]);
            t.row(&[depth.pierced_count.to_string(), floor.to_string()]);
            tables.push(t);
            (json!({ "colors": classes }), None, json!({ "depth": depth, "floor": floor }))
        }
        Command::Pinning { input, dimension, seed } => {
            let sigma = input::read_simplices(input, *dimension)?;
            let outcome = pinning_pipeline(&sigma, *seed)?;
            let mut t = Table::new("families", &["family", "simplices"]);
            for (i, f) in outcome.families.iter().enumerate() {
                t.row(&[i.to_string(), joined(&f.simplices)]);
            }
            tables.push(t);
            (json!({ "simplices": sigma }), Some(*seed), to_value(&outcome))
        }
        Command::Turan { colors, relation, eps, constants, seed } => {
            let classes = read_pointsets(&colors.colors, None)?;
            let rel = input::read_relation(relation, colors.dimension)?;
            let eps_q = parse_q(eps, "eps")?;
            let consts = input::read_constants(constants.as_deref())?;
            let coords: Vec<Vec<Vec<Rational>>> =
                classes.iter().map(|c| c.points.iter().map(|x| x.coords().to_vec()).collect()).collect();
            let block = kpartite_turan(&coords, &rel, &eps_q, &consts, *seed)?;
            let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
            let ratio = scaling_ratio(&block, &eps_q, rel.block_dims[0], &sizes);
            let mut t = Table::new(
                "levels",
                &["level", "left", "right", "edges", "class_index", "packing", "mnet_sets", "omega", "w1", "w2"],
            );
            for (i, l) in block.levels.iter().enumerate() {
                t.row(&[i, l.left, l.right, l.edges, l.class_index as usize, l.packing, l.mnet_sets, l.omega, l.w1, l.w2]);
            }
            tables.push(t);
            let inputs = json!({
                "colors": classes,
                "relation": rel,
                "eps": format_rational(&eps_q),
                "constants": consts,
            });
            (inputs, Some(*seed), json!({ "block": block, "scaling_ratio": ratio }))
        }
        Command::SameType { points, k, r, c, seed } => {
            let p = read_pointset(&points.input, points.dimension)?;
            let c_q = parse_q(c, "c")?;
            let st = same_type_extract(&p, *k, *r, &c_q, *seed)?;
            let mut t = Table::new("parts", &["class", "size"]);
            for (i, s) in st.subsets.iter().enumerate() {
                t.row(&[i, s.len()]);
            }
            tables.push(t);
            let inputs = json!({ "points": p, "k": k, "r": r, "c": format_rational(&c_q) });
            (inputs, Some(*seed), to_value(&st))
        }
        Command::Halving { points, table } => {
            let p = read_pointset(&points.input, points.dimension)?;
            let report = halving_count(&p)?;
            let mut t = Table::new("subsets", &["subset", "positive", "negative"]);
            for (s, (a, b)) in report.subsets.iter().zip(&report.sides) {
                t.row(&[joined(s), a.to_string(), b.to_string()]);
            }
            tables.push(t);
            let mut result = json!({ "report": report });
            if *table {
                let mut rows = Vec::new();
                let mut growth = Table::new("table", &["n", "count"]);
                for n in p.dim.max(1)..=p.len() {
                    let prefix = p.subset(&(0..n).collect::<Vec<_>>());
                    let count = halving_count(&prefix)?.count;
                    growth.row(&[n, count]);
                    rows.push(json!({ "n": n, "count": count }));
                }
                tables.push(growth);
                result["table"] = Value::Array(rows);
            }
            (json!({ "points": p }), None, result)
        }
        Command::Ksets { points, k } => {
            let p = read_pointset(&points.input, points.dimension)?;
            let report = kset_count(&p, *k)?;
            let mut t = Table::new("subsets", &["subset"]);
            for s in &report.subsets {
                t.row(&[joined(s)]);
            }
            tables.push(t);
            (json!({ "points": p, "k": k }), None, to_value(&report))
        }
    };
    Ok(Outcome { inputs, seed, result, tables })
}

fn depth_table(point: &pierce_core::Point, pierced: usize) -> Table {
    let mut header = vec!["pierced"];
    let names = ["x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"];
    header.extend(names.iter().take(point.dim()));
    let mut t = Table { name: "depth", header, rows: Vec::new() };
    let mut row = vec![pierced.to_string()];
    row.extend(point.coords().iter().map(|q| format!("{}", rational::to_f64(q))));
    t.rows.push(row);
    t
}

fn write_csv(dir: &Path, table: &Table) -> Result<(), CliError> {
    let path = dir.join(format!("{}.csv", table.name));
    let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(&path).map_err(io)?;
    w.write_record(&table.header).map_err(io)?;
    for row in &table.rows {
        w.write_record(row).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Runs one command and writes its report.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    if cli.emit_csv && cli.out.is_none() {
        return Err(CliError::Usage("--emit-csv requires --out".into()));
    }
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        // A pool may already exist when `run` is called more than once in a process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let outcome = execute(&cli.command)?;
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let report = Report {
        command: command_name(&cli.command),
        inputs: &outcome.inputs,
        seed: outcome.seed,
        version: env!("CARGO_PKG_VERSION"),
        timestamp,
        result: &outcome.result,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            let path = dir.join("report.json");
            fs::write(&path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            if cli.emit_csv {
                for t in &outcome.tables {
                    write_csv(dir, t)?;
                }
            }
        }
        None => writeln!(std::io::stdout().lock(), "{text}").map_err(|e| CliError::Io(format!("stdout: {e}")))?,
    }
    Ok(())
}
