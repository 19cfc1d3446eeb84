use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use convex_embed::embedding::{embed_lower_bounded, geometric_d_relation, EmbeddingCertificate, EmbeddingError};
use convex_embed::geometry::{
    closure, extreme_points, is_lower_bounded_geometry, is_plenary, join, join_irreducibles_geometry, meet,
    polygon_hull, ClosedSet, Point, Point2, PointConfig, Polygon2D,
};
use convex_embed::identity::{check_star_identity, ClosureOps, PolygonOps, STAR_VARIABLES};
use convex_embed::random::{random_star_assignment, seeded};
use convex_embed::rewrite::{normal_form_with_trace, nu, trace_json, PosVector, PosVectorJson, StepJson};
use convex_embed::tree::{
    build_tree_general, build_tree_lb, norm_check, ColoredTree, NormReport, TreeError, TreeExport,
    DEFAULT_MAX_HEIGHT,
};
use convex_embed::{FiniteLattice, LatticeSpec};

mod svg;

#[derive(Parser)]
#[command(name = "convex-embed", version, about = "Exact lattice embeddings into convex geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Join-irreducibles, minimal covers, D relation and classification of a lattice.
    LatticeInfo {
        lattice: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Builds the colored tree of a lattice together with its norm.
    Tree {
        lattice: PathBuf,
        /// Use all nontrivial join-covers and truncate at --max-height.
        #[arg(long)]
        general: bool,
        #[arg(long, requires = "general")]
        max_height: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embeds a lower bounded lattice and writes the verified certificate.
    Embed {
        lattice: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        emit_svg: Option<PathBuf>,
    },
    /// Normal form of a vector over a tree, with the contraction chain.
    NormalForm {
        tree: PathBuf,
        vector: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Queries on the convex geometry of a point configuration.
    Cog {
        op: CogOp,
        config: PathBuf,
        /// Comma-separated point indices, e.g. `0,2,3`.
        sets: Vec<String>,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluates both sides of the star identity.
    CheckStarIdentity {
        #[arg(required_unless_present = "random_polygons", conflicts_with = "random_polygons")]
        assignment: Option<PathBuf>,
        #[arg(long)]
        random_polygons: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draws a configuration or certificate (coordinate table above dimension 2).
    EmitSvg {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CogOp {
    Closure,
    Join,
    Meet,
    Irreducibles,
    DRelation,
    LowerBounded,
    Plenary,
    Extreme,
}

enum Failure {
    Input(String),
    Verification { message: String, witness: Value },
}

type Outcome = Result<(), Failure>;

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    // clap reports usage errors with status 2, which is reserved for failed verification.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification { message, witness }) => {
            eprintln!("verification failed: {message}");
            println!("{}", serde_json::to_string_pretty(&witness).expect("json"));
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::LatticeInfo { lattice, out } => {
            let l = load_lattice(&lattice)?;
            write_json(&l.report(), out.as_deref())
        }
        Command::Tree { lattice, general, max_height, out } => tree(&lattice, general, max_height, out.as_deref()),
        Command::Embed { lattice, out, emit_svg } => embed(&lattice, out.as_deref(), emit_svg.as_deref()),
        Command::NormalForm { tree, vector, out } => normal_form(&tree, &vector, out.as_deref()),
        Command::Cog { op, config, sets, samples, seed, out } => {
            let cfg: PointConfig = load(&config)?;
            let sets = sets.iter().map(|s| parse_set(&cfg, s)).collect::<Result<Vec<_>, _>>()?;
            cog(op, &cfg, &sets, samples, seed, out.as_deref())
        }
        Command::CheckStarIdentity { assignment, random_polygons, seed, out } => match random_polygons {
            Some(n) => random_star(n, seed, out.as_deref()),
            None => star_from_file(&assignment.expect("clap enforces a source"), out.as_deref()),
        },
        Command::EmitSvg { input, out } => emit_svg(&input, out.as_deref()),
    }
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<FiniteLattice, Failure> {
    let spec: LatticeSpec = load(path)?;
    FiniteLattice::from_spec(&spec).map_err(input)
}

fn write_text(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).expect("json");
    text.push('\n');
    write_text(&text, out)
}

#[derive(Serialize, Deserialize)]
struct TreeOutput {
    tree: TreeExport,
    norm: NormReport,
}

/// `normal-form` takes either a bare tree export or the output of `tree`.
#[derive(Deserialize)]
#[serde(untagged)]
enum TreeInput {
    Wrapped(TreeOutput),
    Bare(TreeExport),
}

fn tree(lattice: &Path, general: bool, max_height: Option<usize>, out: Option<&Path>) -> Outcome {
    let l = load_lattice(lattice)?;
    let built = if general {
        build_tree_general(&l, max_height.unwrap_or(DEFAULT_MAX_HEIGHT))
    } else {
        build_tree_lb(&l)
    };
    let (t, e) = built.map_err(tree_failure)?;
    let norm = norm_check(&t, &e, &l);
    write_json(&TreeOutput { tree: t.export(Some((&e, &l))), norm }, out)
}

fn tree_failure(e: TreeError) -> Failure {
    match &e {
        TreeError::NotLowerBounded(cycle) => {
            Failure::Verification { message: e.to_string(), witness: json!({ "d_cycle": cycle }) }
        }
        _ => input(e),
    }
}

fn embed(lattice: &Path, out: Option<&Path>, svg_out: Option<&Path>) -> Outcome {
    let l = load_lattice(lattice)?;
    let cert = embed_lower_bounded(&l).map_err(embedding_failure)?;
    write_json(&cert, out)?;
    if let Some(path) = svg_out {
        write_text(&render_certificate(&cert), Some(path))?;
    }
    Ok(())
}

fn embedding_failure(e: EmbeddingError) -> Failure {
    let message = e.to_string();
    let witness = match e {
        EmbeddingError::Lattice(inner) => return input(inner),
        EmbeddingError::Tree(inner) => return tree_failure(inner),
        EmbeddingError::Quotient(_) | EmbeddingError::Geometry(_) => json!({ "error": message }),
        EmbeddingError::NotANorm(report) => json!({ "norm": report }),
        EmbeddingError::NotClosed { element } | EmbeddingError::NotFull { element } => {
            json!({ "element": element })
        }
        EmbeddingError::Verification(report) => json!({ "report": report }),
        EmbeddingError::GeometryNotLowerBounded(cycle) => json!({ "d_cycle": cycle }),
        EmbeddingError::DDirection(p, q) => json!({ "d_pair": [p, q] }),
        EmbeddingError::NotPlenary(verdict) => json!({ "plenary": verdict }),
    };
    Failure::Verification { message, witness }
}

#[derive(Serialize)]
struct NormalFormOutput {
    input: PosVectorJson,
    normal_form: PosVectorJson,
    nu_input: String,
    nu_normal_form: String,
    chain: Vec<StepJson>,
}

fn normal_form(tree: &Path, vector: &Path, out: Option<&Path>) -> Outcome {
    let export = match load::<TreeInput>(tree)? {
        TreeInput::Wrapped(w) => w.tree,
        TreeInput::Bare(t) => t,
    };
    let (t, _) = ColoredTree::import(&export, None).map_err(input)?;
    let x = PosVector::from_json(&t, &load(vector)?).map_err(input)?;
    let (y, steps) = normal_form_with_trace(&t, &x);
    write_json(
        &NormalFormOutput {
            input: x.to_json(&t),
            normal_form: y.to_json(&t),
            nu_input: nu(&t, &x).to_string(),
            nu_normal_form: nu(&t, &y).to_string(),
            chain: trace_json(&t, &x, &steps),
        },
        out,
    )
}

fn parse_set(cfg: &PointConfig, text: &str) -> Result<Vec<usize>, Failure> {
    let members = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|e| input(format!("bad index {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    cfg.check_indices(&members).map_err(input)?;
    Ok(members)
}

#[derive(Serialize)]
struct SetOutput {
    members: Vec<usize>,
    points: Vec<Point>,
}

fn describe(cfg: &PointConfig, set: &ClosedSet) -> SetOutput {
    SetOutput { members: set.members().to_vec(), points: cfg.subset(set.members()) }
}

fn exact_sets(op: &str, sets: &[Vec<usize>], n: usize) -> Outcome {
    if sets.len() == n {
        Ok(())
    } else {
        Err(input(format!("cog {op} takes {n} index set(s), got {}", sets.len())))
    }
}

fn cog(op: CogOp, cfg: &PointConfig, sets: &[Vec<usize>], samples: usize, seed: u64, out: Option<&Path>) -> Outcome {
    match op {
        CogOp::Closure => {
            exact_sets("closure", sets, 1)?;
            write_json(&describe(cfg, &closure(cfg, &sets[0])), out)
        }
        CogOp::Join | CogOp::Meet => {
            let name = if matches!(op, CogOp::Join) { "join" } else { "meet" };
            exact_sets(name, sets, 2)?;
            let a = closure(cfg, &sets[0]);
            let b = closure(cfg, &sets[1]);
            let r = if matches!(op, CogOp::Join) { join(cfg, &a, &b) } else { meet(&a, &b) };
            write_json(&describe(cfg, &r), out)
        }
        CogOp::Irreducibles => {
            exact_sets("irreducibles", sets, 0)?;
            let found = join_irreducibles_geometry(cfg).map_err(input)?;
            write_json(&found.iter().map(|s| describe(cfg, s)).collect::<Vec<_>>(), out)
        }
        CogOp::DRelation => {
            exact_sets("d-relation", sets, 0)?;
            write_json(&geometric_d_relation(cfg), out)
        }
        CogOp::LowerBounded => {
            exact_sets("lower-bounded", sets, 0)?;
            write_json(&is_lower_bounded_geometry(cfg).map_err(input)?, out)
        }
        CogOp::Plenary => {
            exact_sets("plenary", sets, 0)?;
            write_json(&is_plenary(cfg, samples, seed).map_err(input)?, out)
        }
        CogOp::Extreme => {
            if sets.len() > 1 {
                return Err(input("cog extreme takes at most one index set"));
            }
            let members: Vec<usize> = sets.first().cloned().unwrap_or_else(|| (0..cfg.len()).collect());
            let vertices = extreme_points(&cfg.subset(&members));
            let members = vertices.iter().map(|v| cfg.index_of(v).expect("extreme points are members")).collect();
            write_json(&SetOutput { members, points: vertices }, out)
        }
    }
}

/// A star assignment file. With `config`, each variable names points of the
/// configuration and is evaluated in its closure lattice; without it, each
/// variable is the convex hull of its points in the plane.
#[derive(Deserialize)]
struct StarFile {
    config: Option<PointConfig>,
    assignment: BTreeMap<String, Vec<Point>>,
}

fn star_from_file(path: &Path, out: Option<&Path>) -> Outcome {
    let file: StarFile = load(path)?;
    for v in STAR_VARIABLES {
        if !file.assignment.contains_key(v) {
            return Err(input(format!("variable {v:?} is unassigned")));
        }
    }
    match &file.config {
        Some(cfg) => {
            let mut asg = BTreeMap::new();
            for (var, pts) in &file.assignment {
                let idx = pts
                    .iter()
                    .map(|p| cfg.index_of(p).ok_or_else(|| input(format!("point of {var:?} is not in the configuration"))))
                    .collect::<Result<Vec<_>, _>>()?;
                asg.insert(var.clone(), closure(cfg, &idx));
            }
            let outcome = check_star_identity(&ClosureOps(cfg), &asg).map_err(input)?;
            write_json(
                &json!({
                    "lattice": "closure",
                    "holds": outcome.holds,
                    "lhs": describe(cfg, &outcome.lhs),
                    "rhs": describe(cfg, &outcome.rhs),
                }),
                out,
            )
        }
        None => {
            let mut asg = BTreeMap::new();
            for (var, pts) in &file.assignment {
                let planar = pts
                    .iter()
                    .map(|p| match p.as_slice() {
                        [x, y] => Ok([x.clone(), y.clone()]),
                        _ => Err(input(format!("point of {var:?} is not planar"))),
                    })
                    .collect::<Result<Vec<Point2>, _>>()?;
                asg.insert(var.clone(), polygon_hull(&planar));
            }
            let outcome = check_star_identity(&PolygonOps, &asg).map_err(input)?;
            write_json(&json!({ "lattice": "polygons", "holds": outcome.holds, "lhs": outcome.lhs, "rhs": outcome.rhs }), out)
        }
    }
}

fn random_star(samples: usize, seed: u64, out: Option<&Path>) -> Outcome {
    let mut rng = seeded(seed);
    for i in 0..samples {
        let asg: BTreeMap<String, Polygon2D> = random_star_assignment(&mut rng);
        let outcome = check_star_identity(&PolygonOps, &asg).map_err(input)?;
        if !outcome.holds {
            return Err(Failure::Verification {
                message: format!("sample {i} violates the star identity in the plane"),
                witness: json!({ "sample": i, "seed": seed, "assignment": asg, "lhs": outcome.lhs, "rhs": outcome.rhs }),
            });
        }
    }
    write_json(&json!({ "lattice": "polygons", "samples": samples, "seed": seed, "failures": 0 }), out)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Drawable {
    Certificate(Box<EmbeddingCertificate>),
    Config(PointConfig),
}

fn emit_svg(path: &Path, out: Option<&Path>) -> Outcome {
    let text = match load::<Drawable>(path)? {
        Drawable::Certificate(cert) => render_certificate(&cert),
        Drawable::Config(cfg) => {
            let labels: Vec<String> = (0..cfg.len()).map(|i| i.to_string()).collect();
            render(&cfg, &labels, &[])
        }
    };
    write_text(&text, out)
}

fn render_certificate(cert: &EmbeddingCertificate) -> String {
    let regions: Vec<(String, Vec<Point>)> =
        cert.polytopes.iter().filter(|(_, v)| !v.is_empty()).map(|(k, v)| (k.clone(), v.clone())).collect();
    render(&cert.omega, &cert.point_nodes, &regions)
}

fn render(cfg: &PointConfig, labels: &[String], regions: &[(String, Vec<Point>)]) -> String {
    if cfg.dim() <= 2 {
        svg::draw(cfg, labels, regions)
    } else {
        svg::table(cfg, labels)
    }
}
