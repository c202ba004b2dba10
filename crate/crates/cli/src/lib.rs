//! Batch front end for `greenring`. Every subcommand produces one JSON document.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use greenring::chartable::char_table;
use greenring::essential::{essential_dim, factor_through_trivial_rank, prim, seed_triplet_count, SmallerGroups};
use greenring::group::{cyclic_subgroups_up_to_conjugacy, FiniteGroup, GroupSpec};
use greenring::ideal::{ideal_evaluation, Context, IdealSpec};
use greenring::rep::{f_classes, idempotent_orbit, orbit_space, FieldSpec};
use greenring::verify::{run_suite, Suite};
use greenring::{Error, Result};
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "greenring", version, about = "Exact computations in Green biset functors of rational characters")]
pub struct Cli {
    /// Write the JSON document to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conjugacy classes and F-classes of a group.
    Classes { field: String, group: String },
    /// The orbit set Ω(k, F, G).
    Omega { k: String, field: String, group: String },
    /// Primitive idempotents of kR_F(G), one per orbit.
    Idempotents { k: String, field: String, group: String },
    /// Ideals of kR_F,G, listed by support, optionally evaluated at a group H.
    Ideals {
        k: String,
        field: String,
        group: String,
        /// Comma-separated orbit indices; all supports are listed when absent.
        #[arg(long, value_name = "LIST")]
        support: Option<String>,
        /// Evaluate each ideal at H (default: the trivial group).
        #[arg(long, value_name = "GROUPSPEC")]
        at: Option<String>,
    },
    /// Dimension of the essential algebra at H over the rational-character level.
    Essential {
        k: String,
        field: String,
        h: String,
        /// Shift group G; trivial when absent.
        #[arg(long, value_name = "GROUPSPEC")]
        shift: Option<String>,
    },
    /// Number of seed triplets of order m for the shift group G.
    Seeds {
        group: String,
        #[arg(long, value_name = "M")]
        order: u64,
    },
    /// Character table of a group.
    Chartable { group: String },
    /// Rank of the maps K×G ← H×G that factor through the trivial group.
    #[command(name = "r3check")]
    FactorRank { k: String, h: String, g: String },
    /// Run verification suites.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 24)]
        max_order: usize,
    },
}

/// Outcome of a run: the rendered document (or error text) and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn group(s: &str) -> Result<Arc<FiniteGroup>> {
    GroupSpec::parse(s)?.build()
}

fn field(s: &str) -> Result<FieldSpec> {
    FieldSpec::parse(s)
}

fn parse_support(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for part in s.split(',') {
        let trimmed = part.trim();
        if trimmed.is_empty() && s.trim().is_empty() {
            break;
        }
        let v = trimmed.parse::<usize>().map_err(|_| Error::Parse {
            input: s.to_string(),
            pos,
            expected: "a comma-separated list of orbit indices".into(),
        })?;
        out.push(v);
        pos += part.len() + 1;
    }
    Ok(out)
}

fn document(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    doc
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn classes_doc(f: FieldSpec, g: &Arc<FiniteGroup>) -> Value {
    let part = f_classes(g, f);
    let classes: Vec<Value> = (0..g.num_classes())
        .map(|c| {
            json!({
                "index": c,
                "size": g.class_size(c),
                "representative": g.class_rep(c),
                "order": g.element_order(g.class_rep(c)),
            })
        })
        .collect();
    let blocks: Vec<&[usize]> = (0..part.len()).map(|b| part.block(b)).collect();
    json!({
        "group": g.name(),
        "order": g.order(),
        "exponent": g.exponent(),
        "F": f,
        "F_n": part.galois().members(),
        "classes": classes,
        "f_classes": blocks,
    })
}

fn ideal_doc(ctx: &Context, spec: &IdealSpec, at: &Arc<FiniteGroup>) -> Result<Value> {
    let level = ctx.level(at)?;
    let ev = ideal_evaluation(&level, spec)?;
    Ok(json!({
        "support": spec.support(),
        "at": at.name(),
        "orbits": ev.orbits,
        "orbit_count": ev.orbit_count(),
        "k_dim": ev.k_dim,
    }))
}

/// Computes the JSON document for one command.
pub fn execute(command: &Command) -> Result<Value> {
    Ok(match command {
        Command::Classes { field: f, group: g } => document("classes", classes_doc(field(f)?, &group(g)?)),
        Command::Omega { k, field: f, group: g } => {
            let space = orbit_space(&group(g)?, field(k)?, field(f)?);
            let mut body = to_value(&space);
            body["size"] = json!(space.len());
            document("omega", body)
        }
        Command::Idempotents { k, field: f, group: g } => {
            let g = group(g)?;
            let space = orbit_space(&g, field(k)?, field(f)?);
            let idempotents = (0..space.len())
                .map(|o| {
                    let e = idempotent_orbit(&space, o)?;
                    Ok(json!({ "orbit": o, "classes": space.orbit_classes(o), "values": e.values() }))
                })
                .collect::<Result<Vec<_>>>()?;
            document(
                "idempotents",
                json!({ "group": g.name(), "k": space.k_field(), "F": space.f_field(), "idempotents": idempotents }),
            )
        }
        Command::Ideals { k, field: f, group: g, support, at } => {
            let g = group(g)?;
            let ctx = Context::new(field(k)?, field(f)?, &g);
            let at = match at {
                Some(h) => group(h)?,
                None => Arc::new(FiniteGroup::trivial()),
            };
            let specs = match support {
                Some(s) => vec![ctx.ideal(parse_support(s)?)?],
                None => ctx.all_ideals(),
            };
            let ideals = specs.iter().map(|s| ideal_doc(&ctx, s, &at)).collect::<Result<Vec<_>>>()?;
            document(
                "ideals",
                json!({
                    "group": g.name(),
                    "k": ctx.k(),
                    "F": ctx.f(),
                    "omega": to_value(ctx.omega())["orbits"].clone(),
                    "ideals": ideals,
                }),
            )
        }
        Command::Essential { k, field: f, h, shift } => {
            let h = group(h)?;
            let g = match shift {
                Some(g) => group(g)?,
                None => Arc::new(FiniteGroup::trivial()),
            };
            let ctx = Context::new(field(k)?, field(f)?, &g);
            document("essential", to_value(&essential_dim(&ctx, &h, &SmallerGroups::CyclicDivisors)?))
        }
        Command::Seeds { group: g, order } => {
            let g = group(g)?;
            let count = seed_triplet_count(&g, *order)?;
            document(
                "seeds",
                json!({
                    "G": g.name(),
                    "m": order,
                    "prim": prim(*order),
                    "cyclic_subgroup_classes": cyclic_subgroups_up_to_conjugacy(&g).len(),
                    "count": count,
                }),
            )
        }
        Command::Chartable { group: g } => {
            let g = group(g)?;
            let t = char_table(&g)?;
            let rows: Vec<_> = t.rows().iter().map(|r| r.values()).collect();
            document(
                "chartable",
                json!({
                    "group": g.name(),
                    "class_sizes": (0..g.num_classes()).map(|c| g.class_size(c)).collect::<Vec<_>>(),
                    "representative_orders":
                        (0..g.num_classes()).map(|c| g.element_order(g.class_rep(c))).collect::<Vec<_>>(),
                    "rows": rows,
                }),
            )
        }
        Command::FactorRank { k, h, g } => {
            let (k, h, g) = (group(k)?, group(h)?, group(g)?);
            let r = factor_through_trivial_rank(&k, &h, &g)?;
            if r.rank != r.full_dim {
                return Err(Error::InvariantViolation(format!(
                    "maps through the trivial group span rank {} of {} for ({}, {}, {})",
                    r.rank,
                    r.full_dim,
                    k.name(),
                    h.name(),
                    g.name()
                )));
            }
            document(
                "r3check",
                json!({ "K": k.name(), "H": h.name(), "G": g.name(), "rank": r.rank, "full_dim": r.full_dim }),
            )
        }
        Command::Verify { suite, max_order } => {
            let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
            let reports = suites.into_iter().map(|s| run_suite(s, *max_order)).collect::<Result<Vec<_>>>()?;
            document("verify", json!({ "max_order": max_order, "passed": true, "suites": reports }))
        }
    })
}

fn exit_code(e: &Error) -> i32 {
    if e.is_invariant_violation() {
        2
    } else {
        1
    }
}

/// Parses `args` (including the program name), runs the command and writes `--json` output.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let fail = |e: Error| Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(&e) };
    let doc = match execute(&cli.command) {
        Ok(doc) => doc,
        Err(e) => return fail(e),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    match &cli.json {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { stdout: String::new(), stderr: String::new(), code: 0 },
            Err(source) => fail(Error::Io { context: format!("writing {}", path.display()), source }),
        },
        None => Outcome { stdout: text, stderr: String::new(), code: 0 },
    }
}
