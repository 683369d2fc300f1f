//! The command surface: every exact operation behind a scriptable CLI with
//! deterministic stdout and the exit-code contract 0 = success,
//! 1 = verification mismatch, 2 = input error.

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use conewalk_core::cones::{self, ExtremalRays, RationalCone};
use conewalk_core::enumeration::{ClassQuery, ClassSearch, MarkedLattice, RootSet};
use conewalk_core::isometry::{self, IsometryKind, LatticeIsometry};
use conewalk_core::lattice::LatticeVector;
use conewalk_core::matrix::Matrix;
use conewalk_core::surfaces::{self, registry};

use crate::descriptor::{int_to_json, LatticeDescriptor};
use crate::hyperviz;

#[derive(Parser, Debug)]
#[command(
    name = "conewalk",
    version,
    about = "Exact cone-of-curves geometry of surface lattices: enumeration, chamber walks, dual cones, isometry classification"
)]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank, signature, determinant and evenness of a lattice file
    Info { file: PathBuf },
    /// Enumerate classes of a given norm up to an inclusive degree bound
    Classes {
        file: PathBuf,
        /// Target self-intersection, e.g. -2, -1, 0
        #[arg(long)]
        norm: i64,
        /// Inclusive bound on the pairing with the marking
        #[arg(long)]
        max_degree: u64,
        /// Reduce classes to primitive representatives
        #[arg(long)]
        primitive: bool,
        /// Extra exact pairing constraint "v1,v2,...=value" (repeatable)
        #[arg(long, value_name = "VEC=VAL")]
        constraint: Vec<String>,
    },
    /// Walk a class into the chamber cut out by roots up to a degree bound
    Walk {
        file: PathBuf,
        /// The class to walk, "v1,v2,..."
        #[arg(long)]
        vector: String,
        /// Roots are auto-enumerated to this inclusive degree bound
        #[arg(long)]
        max_degree: u64,
    },
    /// Dual cone of the cone on the given generators
    Dual {
        file: PathBuf,
        /// Semicolon-separated generators, e.g. "0,1;1,-1"
        #[arg(long)]
        generators: String,
    },
    /// Extremal rays of the cone on the given generators
    Rays {
        file: PathBuf,
        /// Semicolon-separated generators, e.g. "0,1;1,-1;1,0"
        #[arg(long)]
        generators: String,
    },
    /// Classify an integral isometry as elliptic, parabolic or hyperbolic
    Classify {
        file: PathBuf,
        /// Row-major matrix, rows separated by ';', e.g. "1,0;0,1"
        #[arg(long)]
        matrix: String,
    },
    /// Mordell-Weil rank from the Picard rank and reducible-fiber profiles
    MwRank {
        #[arg(long)]
        rho: u32,
        /// Component counts of reducible fibers, e.g. 2,3
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        profiles: Vec<u32>,
    },
    /// Check the four lattice-level non-arithmeticity hypotheses
    Nonarith {
        #[arg(long)]
        rho: u32,
        /// Assert the first elliptic fibration has no reducible fibers
        #[arg(long)]
        fib1_irreducible: bool,
        /// Assert the second fibration has positive Mordell-Weil rank
        #[arg(long)]
        fib2_mw_positive: bool,
        /// Assert the surface contains a (-2)-curve
        #[arg(long)]
        has_minus2: bool,
    },
    /// Print a registry example; --verify runs its expected-value checks
    Example {
        name: String,
        #[arg(long)]
        verify: bool,
    },
    /// Render the disk picture of the chamber at the marking (rank 3 only)
    Render {
        file: PathBuf,
        /// Walls are drawn for roots up to this inclusive degree bound
        #[arg(long)]
        max_degree: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

pub enum Outcome {
    Success(String),
    VerifyFailed(String),
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Info { file } => info(file, cli.json),
        Command::Classes {
            file,
            norm,
            max_degree,
            primitive,
            constraint,
        } => classes(file, *norm, *max_degree, *primitive, constraint, cli.json),
        Command::Walk {
            file,
            vector,
            max_degree,
        } => walk(file, vector, *max_degree, cli.json),
        Command::Dual { file, generators } => dual(file, generators, cli.json),
        Command::Rays { file, generators } => rays(file, generators, cli.json),
        Command::Classify { file, matrix } => classify(file, matrix, cli.json),
        Command::MwRank { rho, profiles } => mw_rank(*rho, profiles, cli.json),
        Command::Nonarith {
            rho,
            fib1_irreducible,
            fib2_mw_positive,
            has_minus2,
        } => nonarith(
            *rho,
            *fib1_irreducible,
            *fib2_mw_positive,
            *has_minus2,
            cli.json,
        ),
        Command::Example { name, verify } => example(name, *verify, cli.json),
        Command::Render {
            file,
            max_degree,
            out,
        } => render(file, *max_degree, out, cli.json),
    }
}

fn load_descriptor(path: &Path) -> Result<LatticeDescriptor> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    Ok(LatticeDescriptor::from_json(&text)?)
}

fn parse_vector(text: &str, rank: usize) -> Result<LatticeVector> {
    let coords: Result<Vec<BigInt>> = text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<BigInt>()
                .map_err(|_| anyhow!("'{c}' is not an integer"))
        })
        .collect();
    let coords = coords?;
    if coords.len() != rank {
        bail!(
            "vector '{text}' has {} entries, lattice rank is {rank}",
            coords.len()
        );
    }
    Ok(LatticeVector::new(coords))
}

fn parse_vector_list(text: &str, rank: usize) -> Result<Vec<LatticeVector>> {
    text.split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| parse_vector(part, rank))
        .collect()
}

fn parse_constraint(text: &str, rank: usize) -> Result<(LatticeVector, BigInt)> {
    let (vec_part, val_part) = text
        .rsplit_once('=')
        .ok_or_else(|| anyhow!("constraint '{text}' is not of the form VEC=VAL"))?;
    let vector = parse_vector(vec_part, rank)?;
    let value = val_part
        .trim()
        .parse::<BigInt>()
        .map_err(|_| anyhow!("constraint value '{val_part}' is not an integer"))?;
    Ok((vector, value))
}

fn parse_matrix(text: &str, rank: usize) -> Result<Matrix> {
    let rows: Result<Vec<Vec<BigInt>>> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<BigInt>()
                        .map_err(|_| anyhow!("'{c}' is not an integer"))
                })
                .collect()
        })
        .collect();
    let rows = rows?;
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        bail!("matrix must be {rank}x{rank} for this lattice");
    }
    Ok(Matrix::from_rows(rows))
}

/// Worker pool capped by CONEWALK_THREADS (default: available cores).
fn pool() -> Result<&'static rayon::ThreadPool> {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    if let Some(p) = POOL.get() {
        return Ok(p);
    }
    let threads = match std::env::var("CONEWALK_THREADS") {
        Ok(v) => Some(
            v.parse::<usize>()
                .map_err(|_| anyhow!("CONEWALK_THREADS must be a positive integer, got '{v}'"))
                .and_then(|n| {
                    if n == 0 {
                        Err(anyhow!("CONEWALK_THREADS must be positive"))
                    } else {
                        Ok(n)
                    }
                })?,
        ),
        Err(_) => None,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let built = builder.build().context("cannot build worker pool")?;
    Ok(POOL.get_or_init(|| built))
}

/// Per-degree fibers are independent; evaluate them in parallel and merge in
/// the fixed degree-major order, so output is identical to the sequential
/// path.
fn enumerate_parallel(marked: &MarkedLattice, query: &ClassQuery) -> Result<Vec<LatticeVector>> {
    let search = ClassSearch::new(marked, query)?;
    let fibers: Vec<Vec<LatticeVector>> = pool()?.install(|| {
        (0..=query.max_degree)
            .into_par_iter()
            .map(|d| search.fiber(d))
            .collect()
    });
    Ok(search.merge(fibers))
}

fn enumerate_roots(marked: &MarkedLattice, max_degree: u64) -> Result<RootSet> {
    let classes = enumerate_parallel(marked, &ClassQuery::new(-2, max_degree))?;
    let mut roots = Vec::new();
    let mut walls = Vec::new();
    for r in classes {
        if marked.degree(&r)?.sign() == num_bigint::Sign::NoSign {
            walls.push(r);
        } else {
            roots.push(r);
        }
    }
    Ok(RootSet {
        roots,
        walls_through_marking: walls,
    })
}

fn info(file: &Path, json_mode: bool) -> Result<Outcome> {
    let descriptor = load_descriptor(file)?;
    let space = descriptor.space()?;
    let signature = space.signature();
    let determinant = space.determinant();
    let even = space.is_even();
    let out = if json_mode {
        json_line(json!({
            "rank": space.rank(),
            "signature": {"positive": signature.positive, "negative": signature.negative},
            "determinant": int_to_json(&determinant),
            "even": even,
        }))
    } else {
        format!(
            "rank: {}\nsignature: {}\ndeterminant: {}\neven: {}\n",
            space.rank(),
            signature,
            determinant,
            even
        )
    };
    Ok(Outcome::Success(out))
}

fn classes(
    file: &Path,
    norm: i64,
    max_degree: u64,
    primitive: bool,
    constraints: &[String],
    json_mode: bool,
) -> Result<Outcome> {
    let descriptor = load_descriptor(file)?;
    let marked = descriptor.marked()?;
    let mut query = ClassQuery::new(norm, max_degree);
    if primitive {
        query = query.primitive();
    }
    for c in constraints {
        let (vector, value) = parse_constraint(c, marked.rank())?;
        query.constraints.push((vector, value));
    }
    let classes = enumerate_parallel(&marked, &query)?;
    let out = if json_mode {
        let items: Vec<Value> = classes
            .iter()
            .map(|v| {
                json!({
                    "coords": v.coords().iter().map(int_to_json).collect::<Vec<_>>(),
                    "degree": int_to_json(&marked.degree(v).expect("rank matches")),
                })
            })
            .collect();
        json_line(json!({
            "count": classes.len(),
            "norm": norm,
            "max_degree": max_degree,
            "primitive": primitive,
            "classes": items,
        }))
    } else {
        let mut s = format!(
            "classes: {} (norm {}, degree <= {})\n",
            classes.len(),
            norm,
            max_degree
        );
        for v in &classes {
            let d = marked.degree(v).expect("rank matches");
            s.push_str(&format!("{v}  degree {d}\n"));
        }
        s
    };
    Ok(Outcome::Success(out))
}

fn walk(file: &Path, vector: &str, max_degree: u64, json_mode: bool) -> Result<Outcome> {
    let descriptor = load_descriptor(file)?;
    let marked = descriptor.marked()?;
    let x = parse_vector(vector, marked.rank())?;
    let roots = enumerate_roots(&marked, max_degree)?;
    if !roots.marking_is_interior() {
        bail!(
            "marking lies on the mirror of root {}; chamber walk undefined",
            roots.walls_through_marking[0]
        );
    }
    let result = cones::chamber_walk(&marked, &roots.roots, &x)?;
    let out = if json_mode {
        json_line(json!({
            "root_bound": max_degree,
            "roots": roots.roots.len(),
            "image": result.image.coords().iter().map(int_to_json).collect::<Vec<_>>(),
            "word": result
                .word
                .iter()
                .map(|r| r.coords().iter().map(int_to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "soundness": format!(
                "image is nef against the {} enumerated roots of degree <= {}",
                roots.roots.len(),
                max_degree
            ),
        }))
    } else {
        let mut s = format!(
            "root bound: {} ({} roots)\nimage: {}\nword length: {}\n",
            max_degree,
            roots.roots.len(),
            result.image,
            result.length()
        );
        for r in &result.word {
            s.push_str(&format!("reflect in {r}\n"));
        }
        s.push_str(&format!(
            "soundness: image is nef against the {} enumerated roots of degree <= {}\n",
            roots.roots.len(),
            max_degree
        ));
        s
    };
    Ok(Outcome::Success(out))
}

fn dual(file: &Path, generators: &str, json_mode: bool) -> Result<Outcome> {
    let descriptor = load_descriptor(file)?;
    let space = descriptor.space()?;
    let gens = parse_vector_list(generators, space.rank())?;
    let cone = RationalCone::new(space, gens)?;
    let dd = cones::dual_description(&cone)?;
    let dual = cones::dual_cone(&cone)?;
    let out = if json_mode {
        json_line(json!({
            "rays": vecs_to_json(&dd.rays),
            "lineality": vecs_to_json(&dd.lineality),
            "generators": vecs_to_json(dual.generators()),
        }))
    } else {
        let mut s = format!("dual cone rays: {}\n", dd.rays.len());
        for r in &dd.rays {
            s.push_str(&format!("{r}\n"));
        }
        s.push_str(&format!("lineality rank: {}\n", dd.lineality.len()));
        for l in &dd.lineality {
            s.push_str(&format!("+- {l}\n"));
        }
        s
    };
    Ok(Outcome::Success(out))
}

fn rays(file: &Path, generators: &str, json_mode: bool) -> Result<Outcome> {
    let descriptor = load_descriptor(file)?;
    let space = descriptor.space()?;
    let gens = parse_vector_list(generators, space.rank())?;
    let cone = RationalCone::new(space, gens)?;
    let out = match cones::extremal_rays(&cone)? {
        ExtremalRays::Pointed(rays) => {
            if json_mode {
                json_line(json!({"pointed": true, "rays": vecs_to_json(&rays)}))
            } else {
                let mut s = format!("extremal rays: {}\n", rays.len());
                for r in &rays {
                    s.push_str(&format!("{r}\n"));
                }
                s
            }
        }
        ExtremalRays::NonPointed { lineality } => {
            if json_mode {
                json_line(json!({"pointed": false, "lineality": vecs_to_json(&lineality)}))
            } else {
                let mut s = format!(
                    "cone is not pointed; lineality rank {}\n",
                    lineality.len()
                );
                for l in &lineality {
                    s.push_str(&format!("+- {l}\n"));
                }
                s
            }
        }
    };
    Ok(Outcome::Success(out))
}

fn classify(file: &Path, matrix: &str, json_mode: bool) -> Result<Outcome> {
    let descriptor = load_descriptor(file)?;
    let marked = descriptor.marked()?;
    let m = parse_matrix(matrix, marked.rank())?;
    let g = LatticeIsometry::new(marked.space().clone(), m)?;
    let kind = isometry::classify(&marked, &g)?;
    let order = isometry::order(&g);
    let out = if json_mode {
        let mut obj = serde_json::Map::new();
        match &kind {
            IsometryKind::Elliptic { order } => {
                obj.insert("kind".into(), json!("elliptic"));
                obj.insert("order".into(), json!(order));
            }
            IsometryKind::Parabolic { fixed_ray } => {
                obj.insert("kind".into(), json!("parabolic"));
                obj.insert(
                    "fixed_ray".into(),
                    Value::Array(fixed_ray.coords().iter().map(int_to_json).collect()),
                );
            }
            IsometryKind::Hyperbolic { certificate } => {
                obj.insert("kind".into(), json!("hyperbolic"));
                obj.insert("certificate".into(), json!(certificate.to_string()));
            }
        }
        obj.insert("group_order".into(), json!(order.to_string()));
        json_line(Value::Object(obj))
    } else {
        let kind_line = match &kind {
            IsometryKind::Elliptic { order } => format!("kind: elliptic\norder: {order}\n"),
            IsometryKind::Parabolic { fixed_ray } => {
                format!("kind: parabolic\nfixed ray: {fixed_ray}\n")
            }
            IsometryKind::Hyperbolic { certificate } => {
                format!("kind: hyperbolic\ncertificate: {certificate}\n")
            }
        };
        format!("{kind_line}element order: {order}\n")
    };
    Ok(Outcome::Success(out))
}

fn mw_rank(rho: u32, profiles: &[u32], json_mode: bool) -> Result<Outcome> {
    let rank = surfaces::mordell_weil_rank(rho, profiles)?;
    let out = if json_mode {
        json_line(json!({"rho": rho, "profiles": profiles, "rank": rank}))
    } else {
        format!("{rank}\n")
    };
    Ok(Outcome::Success(out))
}

fn nonarith(
    rho: u32,
    fib1_irreducible: bool,
    fib2_mw_positive: bool,
    has_minus2: bool,
    json_mode: bool,
) -> Result<Outcome> {
    let report =
        surfaces::check_nonarithmetic_asserted(rho, fib1_irreducible, fib2_mw_positive, has_minus2);
    let out = if json_mode {
        json_line(json!({
            "verdict": report.verdict.to_string(),
            "hypotheses": report
                .checked_hypotheses
                .iter()
                .map(|h| json!({"name": h.name, "passed": h.passed, "detail": h.detail}))
                .collect::<Vec<_>>(),
            "explanation": report.explanation,
        }))
    } else {
        let mut s = format!("verdict: {}\n", report.verdict);
        for h in &report.checked_hypotheses {
            s.push_str(&format!(
                "{}: {} ({})\n",
                h.name,
                if h.passed { "pass" } else { "fail" },
                h.detail
            ));
        }
        s.push_str(&format!("explanation: {}\n", report.explanation));
        s
    };
    Ok(Outcome::Success(out))
}

fn example(name: &str, verify: bool, json_mode: bool) -> Result<Outcome> {
    let entry = registry::get(name)?;
    let descriptor = LatticeDescriptor::from_model(&entry.model);
    let outcomes = if verify {
        Some(surfaces::run_expected_checks(&entry)?)
    } else {
        None
    };
    let all_passed = outcomes
        .as_ref()
        .map(|o| o.iter().all(|c| c.passed))
        .unwrap_or(true);
    let out = if json_mode {
        let mut obj = serde_json::Map::new();
        obj.insert("name".into(), json!(entry.name));
        obj.insert("kind".into(), json!(entry.model.kind.to_string()));
        obj.insert("rank".into(), json!(entry.model.rank()));
        obj.insert("notes".into(), json!(entry.model.notes));
        obj.insert("descriptor".into(), descriptor.to_json());
        if let Some(outcomes) = &outcomes {
            obj.insert(
                "checks".into(),
                Value::Array(
                    outcomes
                        .iter()
                        .map(|c| {
                            json!({
                                "label": c.label,
                                "expected": c.expected,
                                "actual": c.actual,
                                "passed": c.passed,
                            })
                        })
                        .collect(),
                ),
            );
            obj.insert("all_passed".into(), json!(all_passed));
        }
        json_line(Value::Object(obj))
    } else {
        let sig = entry.model.lattice.space().signature();
        let mut s = format!(
            "example: {}\nkind: {}\nrank: {}\nsignature: {}\nmarking: {}\ncanonical: {}\n",
            entry.name,
            entry.model.kind,
            entry.model.rank(),
            sig,
            entry.model.lattice.marking(),
            entry.model.canonical_class,
        );
        if !entry.model.notes.is_empty() {
            s.push_str(&format!("notes: {}\n", entry.model.notes));
        }
        if let Some(outcomes) = &outcomes {
            for c in outcomes {
                if c.passed {
                    s.push_str(&format!("{}: {} \u{2713}\n", c.label, c.expected));
                } else {
                    s.push_str(&format!(
                        "{}: expected {}, got {} \u{2717}\n",
                        c.label, c.expected, c.actual
                    ));
                }
            }
        }
        s
    };
    if all_passed {
        Ok(Outcome::Success(out))
    } else {
        Ok(Outcome::VerifyFailed(out))
    }
}

fn render(file: &Path, max_degree: u64, out_path: &Path, json_mode: bool) -> Result<Outcome> {
    let descriptor = load_descriptor(file)?;
    let marked = descriptor.marked()?;
    let scene = hyperviz::build_scene(&marked, max_degree)?;
    let svg = hyperviz::render_scene(&scene)?;
    std::fs::write(out_path, &svg)
        .with_context(|| format!("cannot write {}", out_path.display()))?;
    let out = if json_mode {
        json_line(json!({
            "out": out_path.display().to_string(),
            "walls": scene.walls.len(),
            "rays": scene.rays.len(),
            "root_bound": max_degree,
        }))
    } else {
        format!(
            "wrote {} ({} walls, {} marked rays, root bound {})\n",
            out_path.display(),
            scene.walls.len(),
            scene.rays.len(),
            max_degree
        )
    };
    Ok(Outcome::Success(out))
}

fn vecs_to_json(vs: &[LatticeVector]) -> Vec<Value> {
    vs.iter()
        .map(|v| Value::Array(v.coords().iter().map(int_to_json).collect()))
        .collect()
}

fn json_line(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json serializes");
    s.push('\n');
    s
}
