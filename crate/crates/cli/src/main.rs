//! `dijoin`: batch front end for instances, fixtures and conjecture checks.
//!
//! Exit codes: 0 success, 1 check failed or counterexample found,
//! 2 precondition or hypothesis violated, 3 parse error, 4 guard exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dijoin::bias::{brute_force_orient, valid_directing, Bias, OrientConstraints};
use dijoin::caterpillar::{is_caterpillar_subdivision, orient_caterpillar_subdivision};
use dijoin::dot;
use dijoin::embedding::embed;
use dijoin::fixtures::{self, instance_bias};
use dijoin::generate::{self, PartitionKind};
use dijoin::harness::{check_given, conjecture_check, Conjecture};
use dijoin::instance::Instance;
use dijoin::planar::{brute_force_bi_acyclic, check_planarthm_hypothesis, is_bi_acyclic, orient_planar, solve_orientthm_planar};
use dijoin::solver::{check_cut_condition, partition_with, Engine, EngineChoice};
use dijoin::tree::is_tree;
use dijoin::{Digraph, Directing, EdgeSet, Error, VertexId};

#[derive(Parser)]
#[command(name = "dijoin", version, about = "Dijoin partitions and tree directings under directed-cut constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report hypothesis, connectivity, caterpillar and planarity status.
    Verify {
        file: PathBuf,
        /// Required number of S-edges in every directed cut.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// A partition result (JSON with "a" and "b") to check against the instance.
        #[arg(long)]
        recheck: Option<PathBuf>,
    },
    /// Partition the S-edges into two dijoins.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveEngine::Auto)]
        engine: SolveEngine,
        /// Also write a DOT rendering of the partition here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Direct the S-edges against the outsets of T (or the given bias).
    Orient {
        file: PathBuf,
        #[arg(long, value_enum)]
        engine: OrientEngine,
        /// Wedge vertex.
        #[arg(long)]
        t: Option<VertexId>,
        /// Comma-separated S-edge ids that must have tail t.
        #[arg(long, value_delimiter = ',')]
        wedge: Vec<usize>,
        /// Comma-separated vertices of a path of S that must become directed.
        #[arg(long, value_delimiter = ',')]
        require_path: Vec<VertexId>,
    },
    /// Exhaustively check a conjecture on all small trees.
    ConjectureCheck {
        #[arg(long, value_enum)]
        conjecture: ConjectureArg,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Check only the graph S and family (bias field, or outsets of T) of this file.
        #[arg(long)]
        forest: Option<PathBuf>,
    },
    /// Render an instance as Graphviz DOT.
    ExportDot { file: PathBuf },
    /// List, dump or check the built-in fixtures.
    Fixtures {
        #[arg(long)]
        check: bool,
        /// Restrict to one fixture.
        #[arg(long)]
        name: Option<String>,
        /// Print the fixture as instance JSON.
        #[arg(long)]
        dump: Option<String>,
    },
    /// Print a seeded random instance.
    Generate {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveEngine {
    Auto,
    Caterpillar,
    Planar,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientEngine {
    Caterpillar,
    Planar,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConjectureArg {
    Mainconj,
    BiasconjOutset,
    Pathbias,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Caterpillar,
    Planar,
    PlanarOutset,
}

/// A failed command: exit code plus JSON body.
struct Failure {
    code: u8,
    body: Value,
}

type Outcome = Result<(), Failure>;

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 3,
        Error::GuardExceeded { .. } | Error::TooLarge { .. } => 4,
        Error::Internal(_) | Error::WidthMismatch { .. } => 1,
        _ => 2,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut body = json!({ "error": e.to_string() });
        match &e {
            Error::Hypothesis { witness, .. } => body["witness"] = json!(witness.to_vec()),
            Error::DirectedTreePath { edge } => body["edge"] = json!(edge),
            _ => {}
        }
        Failure {
            code: error_code(&e),
            body,
        }
    }
}

fn fail(code: u8, body: Value) -> Failure {
    Failure { code, body }
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(3, json!({ "error": format!("cannot read {}: {e}", path.display()) })))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    Instance::from_json(&read(path)?).map_err(Failure::from)
}

fn directing_json(d: &Directing) -> Value {
    Value::Array(
        d.arcs()
            .map(|(id, a)| json!({ "id": id, "tail": a.tail, "head": a.head }))
            .collect(),
    )
}

/// T is a spanning tree and no explicit bias is given: the tree form.
fn tree_form(inst: &Instance) -> bool {
    inst.bias().is_none() && inst.vertices() > 0 && is_tree(&inst.t_graph())
}

fn cmd_verify(file: &Path, k: usize, recheck: Option<&Path>) -> Outcome {
    let inst = load(file)?;
    let s = inst.s_undirected();
    let t = inst.t_graph();
    let mut report = json!({
        "vertices": inst.vertices(),
        "s_edges": inst.s_edges().len(),
        "t_edges": inst.t_edges().len(),
        "s_directed": inst.is_fully_directed(),
        "s_connected": s.is_connected(),
        "t_spanning_tree": is_tree(&t),
    });
    report["caterpillar_subdivision"] = match is_caterpillar_subdivision(&s) {
        Ok(spine) => json!(spine),
        Err(_) => Value::Null,
    };
    report["planar"] = json!(embed(&inst.union_undirected()).is_ok());
    report["embedding"] = json!(match inst.embedding() {
        Some(e) if e.euler_check() => "valid",
        Some(_) => "invalid",
        None => "absent",
    });

    let mut ok = if inst.is_fully_directed() {
        let cut = check_cut_condition(&inst, k)?;
        report["cut_condition"] = json!({
            "k": k,
            "holds": cut.is_ok(),
            "witness": cut.err().map(|x| x.to_vec()),
        });
        report["cut_condition"]["holds"] == json!(true)
    } else if tree_form(&inst) {
        let h = check_planarthm_hypothesis(&s, &t)?;
        report["tree_path_hypothesis"] = json!(h);
        h
    } else {
        let bias = instance_bias(&inst)?;
        let low = bias.first_below_cut_bound(&s, k);
        report["bias_members"] = json!(bias.len());
        report["bias_hypothesis"] = json!({ "k": k, "holds": low.is_none(), "witness": low.map(|x| x.to_vec()) });
        low.is_none()
    };

    if let Some(path) = recheck {
        let v: Value = serde_json::from_str(&read(path)?)
            .map_err(|e| fail(3, json!({ "error": format!("parse error: {e}") })))?;
        let ids = |key: &str| -> Result<EdgeSet, Failure> {
            let list = v[key]
                .as_array()
                .ok_or_else(|| fail(3, json!({ "error": format!("missing edge list {key:?}") })))?;
            let mut set = EdgeSet::empty(inst.edge_space());
            for x in list {
                match x.as_u64() {
                    Some(id) if (id as usize) < inst.edge_space() => set.insert(id as usize),
                    _ => return Err(fail(3, json!({ "error": format!("bad edge id {x} in {key:?}") }))),
                }
            }
            Ok(set)
        };
        let (a, b) = (ids("a")?, ids("b")?);
        let g = inst.union_graph();
        let valid = a.is_disjoint(&b)
            && a.union(&b) == inst.s_ids()
            && [&a, &b].iter().all(|x| g.is_dijoin(x) && g.is_dijoin_definitional(x));
        report["recheck"] = json!(valid);
        ok &= valid;
    }
    report["ok"] = json!(ok);
    print(&report);
    if ok {
        Ok(())
    } else {
        Err(fail(1, Value::Null))
    }
}

fn cmd_solve(file: &Path, engine: SolveEngine, dot_path: Option<&Path>) -> Outcome {
    let inst = load(file)?;
    let choice = match engine {
        SolveEngine::Auto => EngineChoice::Auto,
        SolveEngine::Caterpillar => EngineChoice::Only(Engine::Caterpillar),
        SolveEngine::Planar => EngineChoice::Only(Engine::Planar),
    };
    let r = partition_with(&inst, choice)?;
    if !r.is_valid_for(&inst) {
        return Err(fail(1, json!({ "error": "internal check failed: result is not a dijoin partition" })));
    }
    if let Some(p) = dot_path {
        std::fs::write(p, dot::to_dot_partition(&inst, &r.a))
            .map_err(|e| fail(1, json!({ "error": format!("cannot write {}: {e}", p.display()) })))?;
    }
    print(&serde_json::to_value(&r).expect("serializable"));
    Ok(())
}

fn wedge_set(inst: &Instance, s: &Digraph, t: VertexId, wedge: &[usize]) -> Result<EdgeSet, Failure> {
    let mut w = EdgeSet::empty(inst.edge_space());
    for &id in wedge {
        match s.edge(id) {
            Some(e) if e.has_end(t) => w.insert(id),
            _ => return Err(Error::InvalidWedge(format!("edge {id} is not an S-edge at {t}")).into()),
        }
    }
    Ok(w)
}

fn satisfies_constraints(s: &Digraph, d: &Directing, c: &OrientConstraints) -> bool {
    let path_ok = c.required_path.as_ref().is_none_or(|p| {
        let g = d.apply(s);
        let along = |p: &[VertexId]| {
            p.windows(2)
                .all(|w| g.edges().any(|(_, e)| e.tail == w[0] && e.head == w[1]))
        };
        let rev: Vec<VertexId> = p.iter().rev().copied().collect();
        along(p) || along(&rev)
    });
    let head_ok = c
        .forbidden_head
        .as_ref()
        .is_none_or(|(t, w)| w.iter().all(|id| d.head(id) != Some(*t)));
    path_ok && head_ok
}

fn cmd_orient(
    file: &Path,
    engine: OrientEngine,
    t: Option<VertexId>,
    wedge: &[usize],
    require_path: &[VertexId],
) -> Outcome {
    let inst = load(file)?;
    let s = inst.s_undirected();
    let tg = inst.t_graph();
    if t.is_none() && !wedge.is_empty() {
        return Err(Error::InvalidWedge("--wedge needs --t".into()).into());
    }
    if let Some(v) = t {
        if v >= inst.vertices() {
            return Err(Error::InvalidWedge(format!("vertex {v} out of range")).into());
        }
    }
    let root = t.unwrap_or(0);
    let w = wedge_set(&inst, &s, root, wedge)?;
    let path = (!require_path.is_empty()).then(|| require_path.to_vec());
    let unsupported = |what: &str| -> Failure {
        Error::NoEngine(format!("{what} is supported by the oracle engine only")).into()
    };

    let (name, d, check): (&str, Option<Directing>, &str) = match engine {
        OrientEngine::Caterpillar => {
            if path.is_some() || t.is_some() {
                return Err(unsupported("--t/--wedge/--require-path"));
            }
            let bias = instance_bias(&inst)?;
            let d = orient_caterpillar_subdivision(&s, &bias)?;
            if !valid_directing(&s, &bias, &d) {
                return Err(fail(1, json!({ "error": "internal check failed: directing not valid" })));
            }
            ("caterpillar", Some(d), "valid for every member")
        }
        OrientEngine::Planar => {
            if path.is_some() {
                return Err(unsupported("--require-path"));
            }
            let emb = inst
                .embedding()
                .ok_or_else(|| Failure::from(Error::Precondition("the planar engine needs an embedding".into())))?;
            let emb = emb.with_tails(&s.union(&tg)?)?;
            if tree_form(&inst) {
                let d = orient_planar(&s, &tg, &emb, root, &w)?;
                let tails = w.iter().all(|id| d.arc(id).map(|a| a.tail) == Some(root));
                if !is_bi_acyclic(&s, &tg, &d) || !tails {
                    return Err(fail(1, json!({ "error": "internal check failed: directing not bi-acyclic" })));
                }
                ("planar", Some(d), "acyclic with T and with T reversed")
            } else {
                if t.is_some() {
                    return Err(Error::Precondition("--t needs T to be a spanning tree".into()).into());
                }
                let bias = instance_bias(&inst)?;
                let d = solve_orientthm_planar(&s, &tg, &emb)?;
                if !valid_directing(&s, &bias, &d) {
                    return Err(fail(1, json!({ "error": "internal check failed: directing not valid" })));
                }
                ("planar", Some(d), "valid for every member")
            }
        }
        OrientEngine::Oracle => {
            if tree_form(&inst) && path.is_none() {
                let d = brute_force_bi_acyclic(&s, &tg, t.map(|v| (v, &w)))?;
                if let Some(d) = &d {
                    if !is_bi_acyclic(&s, &tg, d) {
                        return Err(fail(1, json!({ "error": "internal check failed: directing not bi-acyclic" })));
                    }
                }
                ("oracle", d, "acyclic with T and with T reversed")
            } else {
                let bias: Bias = instance_bias(&inst)?;
                let c = OrientConstraints {
                    required_path: path,
                    forbidden_head: t.map(|v| (v, w.clone())),
                };
                let d = brute_force_orient(&s, &bias, &c)?;
                if let Some(d) = &d {
                    if !valid_directing(&s, &bias, d) || !satisfies_constraints(&s, d, &c) {
                        return Err(fail(1, json!({ "error": "internal check failed: directing not valid" })));
                    }
                }
                ("oracle", d, "valid for every member")
            }
        }
    };
    match d {
        Some(d) => {
            print(&json!({ "engine": name, "verified": check, "directing": directing_json(&d) }));
            Ok(())
        }
        None => {
            print(&json!({ "engine": name, "directing": null, "result": "none exists" }));
            Err(fail(2, Value::Null))
        }
    }
}

fn cmd_conjecture(conj: ConjectureArg, max_n: usize, forest: Option<&Path>) -> Outcome {
    let conj = match conj {
        ConjectureArg::Mainconj => Conjecture::Mainconj,
        ConjectureArg::BiasconjOutset => Conjecture::BiasconjOutset,
        ConjectureArg::Pathbias => Conjecture::Pathbias,
    };
    let report = match forest {
        Some(p) => {
            let inst = load(p)?;
            let bias = instance_bias(&inst)?;
            check_given(conj, &inst.s_undirected(), bias.sets())?
        }
        None => conjecture_check(conj, max_n)?,
    };
    print(&serde_json::to_value(&report).expect("serializable"));
    if report.holds() {
        Ok(())
    } else {
        Err(fail(1, Value::Null))
    }
}

fn cmd_fixtures(check: bool, name: Option<&str>, dump: Option<&str>) -> Outcome {
    if let Some(n) = dump {
        let inst = fixtures::by_name(n)
            .ok_or_else(|| Failure::from(Error::Precondition(format!("unknown fixture {n}"))))?;
        println!("{}", inst.to_json());
        return Ok(());
    }
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => fixtures::NAMES.to_vec(),
    };
    if !check {
        for n in names {
            println!("{n}");
        }
        return Ok(());
    }
    let mut failed = 0;
    for n in names {
        for c in fixtures::check_fixture(n)? {
            println!("{} {n}: {}", if c.ok { "PASS" } else { "FAIL" }, c.name);
            failed += usize::from(!c.ok);
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        println!("{failed} fixture expectations failed");
        Err(fail(1, Value::Null))
    }
}

fn cmd_generate(kind: GenKind, n: usize, seed: u64) -> Outcome {
    let mut rng = generate::rng(seed);
    let inst = generate::retry(1000, &mut rng, |r| match kind {
        GenKind::Caterpillar => generate::partition_instance(PartitionKind::Caterpillar, n, r),
        GenKind::Planar => generate::partition_instance(PartitionKind::Planar, n, r),
        GenKind::PlanarOutset => generate::planar_outset_instance(n, n, r),
    })
    .ok_or_else(|| Failure::from(Error::Precondition(format!("no instance found for n = {n}"))))?;
    println!("{}", inst.to_json());
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { file, k, recheck } => cmd_verify(&file, k, recheck.as_deref()),
        Command::Solve { file, engine, dot } => cmd_solve(&file, engine, dot.as_deref()),
        Command::Orient {
            file,
            engine,
            t,
            wedge,
            require_path,
        } => cmd_orient(&file, engine, t, &wedge, &require_path),
        Command::ConjectureCheck {
            conjecture,
            max_n,
            forest,
        } => cmd_conjecture(conjecture, max_n, forest.as_deref()),
        Command::ExportDot { file } => {
            print!("{}", dot::to_dot(&load(&file)?));
            Ok(())
        }
        Command::Fixtures { check, name, dump } => cmd_fixtures(check, name.as_deref(), dump.as_deref()),
        Command::Generate { kind, n, seed } => cmd_generate(kind, n, seed),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.body.is_null() {
                print(&f.body);
            }
            ExitCode::from(f.code)
        }
    }
}
