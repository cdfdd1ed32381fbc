//! Command-line interface: plane inspection, arc verification and
//! construction, classical-plane searches, bound tables, the search
//! drivers and table reproduction.
//!
//! Exit codes: 0 success, 1 verification mismatch or table discrepancy,
//! 2 usage error.

use crate::arcs::{self, PointMultiset};
use crate::bounds;
use crate::classical::{self, ClassicalPlane, ObjectRequest, ObjectSpec};
use crate::constructions::{self, ConstructionId};
use crate::files::{self, ArcFile};
use crate::plane::Plane;
use crate::ring::Ring;
use crate::search::{self, SearchConfig};
use crate::tables;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "phg", version, about = "arcs in projective Hjelmslev planes over small chain rings")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plane inspection.
    Plane {
        #[command(subcommand)]
        cmd: PlaneCmd,
    },
    /// Arc files: verification and construction.
    Arc {
        #[command(subcommand)]
        cmd: ArcCmd,
    },
    /// Sub-object searches in PG(2, q) / AG(2, q).
    Classical {
        #[command(subcommand)]
        cmd: ClassicalCmd,
    },
    /// Bound records for m_n(R).
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// Arc searches.
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
    },
    /// Reference tables and their reproduction.
    Tables {
        #[command(subcommand)]
        cmd: TablesCmd,
    },
}

#[derive(Subcommand)]
enum PlaneCmd {
    /// Print counts and sanity invariants of PHG(2, R).
    Info { ring: String },
}

#[derive(Subcommand)]
enum ArcCmd {
    /// Load an arc file, verify it and check any declared parameters.
    Verify { file: PathBuf },
    /// Run a construction and write the verified arc.
    Construct {
        #[arg(long)]
        ring: String,
        /// Construction id, e.g. Q4_N8, LARGE_N, TRIANGLE_SINGER.
        #[arg(long)]
        method: String,
        /// Parameter for LARGE_N (s), Q2_RANGE / TWOQ_RANGE (t).
        #[arg(long)]
        param: Option<u16>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ClassicalCmd {
    /// Search for a classical sub-object (debugging helper).
    Find {
        #[arg(long)]
        q: u8,
        /// hyperoval | oval | arc | blocking
        #[arg(long)]
        kind: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u8>,
        #[arg(long, default_value_t = false)]
        affine: bool,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Print best-known bound records with provenance.
    Table {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = false)]
        json: bool,
    },
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Random seed (0 = canonical order).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Node budget.
    #[arg(long, default_value_t = 2_000_000)]
    nodes: u64,
    /// Time budget in seconds (default from PHG_BUDGET_SECS when set).
    #[arg(long)]
    budget: Option<u64>,
}

impl BudgetArgs {
    fn config(&self, n: u64, target: u64) -> SearchConfig {
        let mut cfg = SearchConfig::new(n, target).with_seed(self.seed).with_nodes(self.nodes);
        let budget = self.budget.or_else(|| {
            std::env::var("PHG_BUDGET_SECS").ok().and_then(|v| v.parse().ok())
        });
        if let Some(secs) = budget {
            cfg = cfg.with_time(secs);
        }
        cfg
    }
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Probability-guided depth-first search for an (k, n)-arc.
    Heuristic {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        target: u64,
        /// Enable isomorphism screening by invariants.
        #[arg(long, default_value_t = false)]
        screen: bool,
        /// Start from the arc in this file instead of the empty multiset.
        #[arg(long)]
        start: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Backtracking over the orbits of a prescribed collineation group.
    Orbit {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        target: u64,
        /// Group to prescribe; currently "singer".
        #[arg(long, default_value = "singer")]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Add points to the arc in --start until it is a maximal new-n arc.
    Extend {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        target: u64,
        #[arg(long)]
        start: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Remove as few points as possible to reach a smaller n.
    Reduce {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        start: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Certified maximum by exhaustive backtracking (small cases).
    Exhaustive {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Enumerate |PΓL(3, R)| for q = 2 and compare with the group order
    /// formula.
    GroupOrder {
        #[arg(long)]
        ring: String,
    },
}

#[derive(Subcommand)]
enum TablesCmd {
    /// Rebuild a best-known table from constructions, fixtures and the
    /// bound engine, and diff it against the reference values.
    Reproduce {
        #[arg(long)]
        q: Option<u8>,
        #[arg(long, default_value_t = false)]
        json: bool,
        /// Run the short live exhaustive searches for the small cells.
        #[arg(long, default_value_t = false)]
        live: bool,
        /// File listing extra arc files (one path per line) to include as
        /// lower-bound witnesses.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn load_plane(name: &str) -> Result<std::sync::Arc<Plane>, String> {
    let ring = Ring::by_name(name).map_err(|e| e.to_string())?;
    Ok(Plane::new(ring))
}

fn write_or_print(
    plane: &Plane,
    ms: &PointMultiset,
    declared: Option<(u64, u64)>,
    provenance: &str,
    out: Option<PathBuf>,
) -> Result<(), String> {
    let text = files::render(plane, ms, declared, provenance);
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| e.to_string())?,
        None => print!("{text}"),
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Plane { cmd: PlaneCmd::Info { ring } } => {
            let plane = load_plane(&ring)?;
            let q = plane.q() as usize;
            println!("ring            {}", plane.ring.name);
            println!("q               {q}");
            println!("|R|             {}", plane.ring.size);
            println!("points          {}", plane.n_points());
            println!("lines           {}", plane.lines.len());
            println!("points per line {}", plane.line_points[0].len());
            println!("lines per point {}", plane.point_lines[0].len());
            println!("point classes   {}", plane.class_points.len());
            println!("class size      {}", plane.class_points[0].len());
            println!("automorphisms   {}", plane.ring.automorphisms.len());
            let ok = plane.n_points() == q * q * q * q + q * q * q + q * q
                && plane.line_points.iter().all(|l| l.len() == q * q + q)
                && plane.class_points.iter().all(|c| c.len() == q * q);
            println!("invariants      {}", if ok { "ok" } else { "VIOLATED" });
            Ok(if ok { 0 } else { 1 })
        }
        Command::Arc { cmd } => match cmd {
            ArcCmd::Verify { file } => {
                let arc = ArcFile::load(&file).map_err(|e| e.to_string())?;
                let plane = load_plane(&arc.ring_name)?;
                let ms = arc.to_multiset(&plane).map_err(|e| e.to_string())?;
                let report = arcs::verify(&plane, &ms).map_err(|e| e.to_string())?;
                println!("ring       {}", plane.ring.name);
                println!("k          {}", report.k);
                println!("n_max      {}", report.n_max);
                println!("n_min      {}", report.n_min);
                println!("projective {}", report.projective);
                if let Some(c) = report.complete_at {
                    println!("complete   at n = {c}");
                }
                if let Some((dk, dn)) = arc.declared {
                    let ok = report.k == dk && report.n_max <= dn;
                    println!(
                        "declared   ({dk}, {dn}) -> {}",
                        if ok { "confirmed" } else { "MISMATCH" }
                    );
                    if !ok {
                        return Ok(1);
                    }
                }
                Ok(0)
            }
            ArcCmd::Construct { ring, method, param, seed, out } => {
                let plane = load_plane(&ring)?;
                let id = ConstructionId::parse(&method, param)
                    .ok_or_else(|| format!("unknown construction {method:?} (or missing --param)"))?;
                let ms = constructions::construct(&plane, id, seed).map_err(|e| e.to_string())?;
                let report = arcs::verify(&plane, &ms).map_err(|e| e.to_string())?;
                eprintln!("{id} over {}: k = {}, n_max = {}, n_min = {}", plane.ring.name, report.k, report.n_max, report.n_min);
                write_or_print(
                    &plane,
                    &ms,
                    Some((report.k, report.n_max)),
                    &format!("construction {id} (seed {seed})"),
                    out,
                )?;
                Ok(0)
            }
        },
        Command::Classical { cmd: ClassicalCmd::Find { q, kind, k, n, affine } } => {
            let pg = ClassicalPlane::new(q);
            let spec = match kind.as_str() {
                "hyperoval" => ObjectSpec::Hyperoval,
                "oval" => ObjectSpec::Oval,
                "arc" => ObjectSpec::Arc {
                    k: k.ok_or("arc needs --k")?,
                    n: n.ok_or("arc needs --n")?,
                },
                "blocking" => ObjectSpec::Blocking {
                    k: k.ok_or("blocking needs --k")?,
                    s: n.ok_or("blocking needs --n (the s parameter)")?,
                },
                other => return Err(format!("unknown kind {other:?}")),
            };
            let mut req = ObjectRequest::new(spec);
            if affine {
                req = req.affine();
            }
            match classical::find_object(&pg, &req) {
                Ok(pts) => {
                    let coords: Vec<String> =
                        pts.iter().map(|&p| format!("{:?}", pg.points[p as usize])).collect();
                    println!("found {} points: {}", pts.len(), coords.join(" "));
                    Ok(0)
                }
                Err(classical::ClassicalError::NotFound) => {
                    println!("no such object (exhaustive search)");
                    Ok(1)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Bounds { cmd: BoundsCmd::Table { ring, n, json } } => {
            let r = Ring::by_name(&ring).map_err(|e| e.to_string())?;
            let plane = Plane::new(r.clone());
            // artifacts from the constructions and fixtures
            let mut artifacts = Vec::new();
            for id in constructions::applicable_ids(&r) {
                if let Ok(ms) = constructions::construct(&plane, id, 0) {
                    let report = arcs::verify(&plane, &ms).unwrap();
                    artifacts.push(bounds::Artifact {
                        k: report.k,
                        n_max: report.n_max,
                        source: bounds::BoundSource::Construction(id.to_string()),
                    });
                    if let Ok(c) = arcs::complement_blocking(&plane, &ms) {
                        let rc = arcs::verify(&plane, &c).unwrap();
                        artifacts.push(bounds::Artifact {
                            k: rc.k,
                            n_max: rc.n_max,
                            source: bounds::BoundSource::Construction(format!("complement of {id}")),
                        });
                    }
                }
            }
            for f in crate::fixtures::all() {
                let file = crate::fixtures::parse(*f);
                if file.ring_name == r.name {
                    let ms = file.to_multiset(&plane).unwrap();
                    let report = arcs::verify(&plane, &ms).unwrap();
                    artifacts.push(bounds::Artifact {
                        k: report.k,
                        n_max: report.n_max,
                        source: bounds::BoundSource::Fixture(f.name.to_string()),
                    });
                }
            }
            let q = r.q as u64;
            let ns: Vec<u64> = match n {
                Some(n) => vec![n],
                None => (0..=q * q + q).collect(),
            };
            let mut records = Vec::new();
            for n in ns {
                let (lo, up) =
                    bounds::best_known(&r, n, &artifacts, &[]).map_err(|e| e.to_string())?;
                records.push((n, lo, up));
            }
            if json {
                #[derive(serde::Serialize)]
                struct Row {
                    n: u64,
                    lower: bounds::BoundRecord,
                    upper: bounds::BoundRecord,
                }
                let rows: Vec<Row> =
                    records.into_iter().map(|(n, lower, upper)| Row { n, lower, upper }).collect();
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                for (n, lo, up) in records {
                    println!(
                        "n={n:<2} {:>4} - {:<4}  lower: {:?}; upper: {:?}",
                        lo.value, up.value, lo.source, up.source
                    );
                }
            }
            Ok(0)
        }
        Command::Search { cmd } => match cmd {
            SearchCmd::Heuristic { ring, n, target, screen, start, out, budget } => {
                let plane = load_plane(&ring)?;
                let start_ms = match start {
                    Some(p) => {
                        let f = ArcFile::load(&p).map_err(|e| e.to_string())?;
                        f.to_multiset(&plane).map_err(|e| e.to_string())?
                    }
                    None => PointMultiset::empty(&plane),
                };
                let cfg = budget.config(n, target).with_screen(screen);
                let outc =
                    search::heuristic_search(&plane, &cfg, &start_ms).map_err(|e| e.to_string())?;
                eprintln!(
                    "best k = {} (n_max = {}), target {}{}, nodes {}",
                    outc.report.k,
                    outc.report.n_max,
                    target,
                    if outc.reached_target { " reached" } else { "" },
                    outc.nodes
                );
                write_or_print(
                    &plane,
                    &outc.best,
                    Some((outc.report.k, outc.report.n_max.max(1))),
                    &format!("heuristic search (seed {}, n {})", cfg.seed, n),
                    out,
                )?;
                Ok(if outc.reached_target || target == 0 { 0 } else { 1 })
            }
            SearchCmd::Orbit { ring, n, target, group, out, budget } => {
                if group != "singer" {
                    return Err(format!("unknown group {group:?}"));
                }
                let plane = load_plane(&ring)?;
                let g = constructions::singer_collineation(&plane).map_err(|e| e.to_string())?;
                let prob = search::orbit_problem(&plane, &[g]).map_err(|e| e.to_string())?;
                eprintln!(
                    "{} point orbits, {} line orbits",
                    prob.point_orbits.len(),
                    prob.line_orbits.len()
                );
                let cfg = budget.config(n, target);
                let outc = search::orbit_search(&plane, &prob, &cfg).map_err(|e| e.to_string())?;
                eprintln!("best k = {} (n_max = {})", outc.report.k, outc.report.n_max);
                write_or_print(
                    &plane,
                    &outc.best,
                    Some((outc.report.k, outc.report.n_max.max(1))),
                    &format!("orbit search (seed {}, n {})", cfg.seed, n),
                    out,
                )?;
                Ok(if target == 0 || outc.report.k >= target { 0 } else { 1 })
            }
            SearchCmd::Extend { ring, n, target, start, out, budget } => {
                let plane = load_plane(&ring)?;
                let f = ArcFile::load(&start).map_err(|e| e.to_string())?;
                let ms = f.to_multiset(&plane).map_err(|e| e.to_string())?;
                let cfg = budget.config(n, target);
                let outc = search::extend_arc(&plane, &ms, n, &cfg).map_err(|e| e.to_string())?;
                eprintln!("extended to k = {} (n_max = {})", outc.report.k, outc.report.n_max);
                write_or_print(
                    &plane,
                    &outc.best,
                    Some((outc.report.k, outc.report.n_max.max(1))),
                    &format!("extension to n = {n} (seed {})", cfg.seed),
                    out,
                )?;
                Ok(if target == 0 || outc.report.k >= target { 0 } else { 1 })
            }
            SearchCmd::Reduce { ring, n, start, out, budget } => {
                let plane = load_plane(&ring)?;
                let f = ArcFile::load(&start).map_err(|e| e.to_string())?;
                let ms = f.to_multiset(&plane).map_err(|e| e.to_string())?;
                let cfg = budget.config(n, 0);
                let reduced = search::reduce_arc(&plane, &ms, n, &cfg).map_err(|e| e.to_string())?;
                let report = arcs::verify(&plane, &reduced).map_err(|e| e.to_string())?;
                eprintln!("reduced to k = {} (n_max = {})", report.k, report.n_max);
                write_or_print(
                    &plane,
                    &reduced,
                    Some((report.k, report.n_max.max(1))),
                    &format!("reduction to n = {n}"),
                    out,
                )?;
                Ok(0)
            }
            SearchCmd::Exhaustive { ring, n, budget } => {
                let plane = load_plane(&ring)?;
                let cfg = budget.config(n, 0);
                let res = search::exhaustive_search(&plane, n, &cfg);
                println!(
                    "m_{n}({}) {} {} ({} nodes, {})",
                    plane.ring.name,
                    if res.complete { "=" } else { ">=" },
                    res.max_k,
                    res.nodes,
                    if res.complete { "complete" } else { "budget exhausted" }
                );
                Ok(0)
            }
            SearchCmd::GroupOrder { ring } => {
                let plane = load_plane(&ring)?;
                let v = search::group_order_check(&plane).map_err(|e| e.to_string())?;
                let q = plane.q() as u64;
                let formula = q.pow(11) * (q - 1) * (q - 1) * (q + 1) * (q * q + q + 1)
                    * plane.ring.automorphisms.len() as u64;
                println!("enumerated |PGammaL(3, {})| = {v}", plane.ring.name);
                println!("formula value             = {formula}");
                Ok(if v == formula { 0 } else { 1 })
            }
        },
        Command::Tables { cmd: TablesCmd::Reproduce { q, json, live, config } } => {
            let mut extra = Vec::new();
            if let Some(path) = config {
                let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
                for line in text.lines() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    extra.push(ArcFile::load(std::path::Path::new(line)).map_err(|e| e.to_string())?);
                }
            }
            let opts = tables::ReproOptions { live_exhaustive: live, extra_arc_files: extra };
            let qs: Vec<u8> = match q {
                Some(q) => vec![q],
                None => vec![2, 3, 4, 5],
            };
            let mut bad = 0;
            for q in qs {
                let rep = tables::reproduce(q, &opts)
                    .ok_or_else(|| format!("no reference table for q = {q}"))?;
                if json {
                    println!("{}", serde_json::to_string_pretty(&rep).unwrap());
                } else {
                    print!("{}", rep.render_text());
                }
                bad += rep.discrepancies;
            }
            Ok(if bad == 0 { 0 } else { 1 })
        }
    }
}
