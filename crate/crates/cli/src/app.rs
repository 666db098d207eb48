use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use halg_core::algcore::{gabriel_quiver, matrix_algebra, path_algebra, skew_group_algebra, Algebra, GroupAction, Quiver};
use halg_core::conjcheck::{self, Extension, Params, Report};
use halg_core::exactlin::Field;
use halg_core::modhom::{minimal_resolution, Direction, Module, ModuleCategory};
use serde_json::{json, Value};

use crate::corpus;
use crate::ingest::{self, algebra_json, quiver_json};
use crate::render::{self, EXIT_INPUT, EXIT_OK};

pub const DEFAULT_MAX_DIM: usize = 512;

#[derive(Parser, Debug)]
#[command(name = "halg", version, about = "Exact homological algebra for finite-dimensional algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Global {
    /// Resolution length bound.
    #[arg(long, global = true, default_value_t = conjcheck::DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Seed for idempotent extraction and isomorphism trials.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Built-in instance: a2, dual-numbers, example2.8, star-z3, star-s3,
    /// with optional suffix -skew or -mN.
    #[arg(long, global = true)]
    corpus: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    /// Algebra file (structure constants).
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,
    /// Group action file for the input algebra.
    #[arg(long, global = true)]
    action: Option<PathBuf>,
    /// Quiver file for build-path-algebra.
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,
    /// Module file; selected with `--pick module`.
    #[arg(long, global = true)]
    module: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Projective,
    Injective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckClaim {
    Gsc,
    Nc,
    Agc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProbeKind {
    Snc,
    Gnc,
    Arc,
    Findim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Lemma31,
    Prop27,
    Prop35,
    Thm36,
    Adjoint,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Path algebra of an acyclic quiver.
    BuildPathAlgebra {
        /// Work over F_p instead of Q.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Full matrix algebra M_n over the input algebra.
    MatrixExt {
        /// Matrix size.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Skew group algebra of the input action.
    Skew,
    /// Gabriel quiver and simple dimensions of the input algebra.
    GabrielQuiver,
    /// Minimal projective or injective resolution of one module.
    Resolve {
        #[arg(long, value_enum, default_value_t = DirectionArg::Projective)]
        direction: DirectionArg,
        /// Module selector: regular, simple:C, projective:C, injective:C, module.
        #[arg(long)]
        pick: Option<String>,
    },
    /// Decide a homological condition: gsc, nc or agc.
    Check {
        #[arg(value_enum)]
        claim: CheckClaim,
    },
    /// Search for Ext witnesses or lower bounds: snc, gnc, arc, findim.
    Probe {
        #[arg(value_enum)]
        kind: ProbeKind,
        #[arg(long)]
        pick: Option<String>,
    },
    /// Check a transfer statement with certificates.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        /// Modules M (comma-separated selectors).
        #[arg(long)]
        pick: Option<String>,
        /// Module N for prop35.
        #[arg(long)]
        against: Option<String>,
        /// Extension for lemma31: skew or matrix:N.
        #[arg(long)]
        ext: Option<String>,
        /// Largest Ext degree for prop35.
        #[arg(long, default_value_t = 5)]
        i_max: usize,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

enum Produced {
    Doc(Value),
    Report(Report),
}

struct Ctx {
    algebra: Arc<Algebra>,
    action: Option<Arc<GroupAction>>,
    quiver: Option<Quiver>,
    max_dim: usize,
}

fn max_dim() -> Result<usize, Fail> {
    match std::env::var("HALG_MAX_DIM") {
        Ok(v) => v.trim().parse().map_err(|_| Fail(format!("HALG_MAX_DIM must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn cap(d: usize, max: usize, what: &str) -> Result<(), Fail> {
    if d > max {
        return Err(Fail(format!("{what} has dimension {d}, above HALG_MAX_DIM = {max}")));
    }
    Ok(())
}

fn load_ctx(g: &Global) -> Result<Ctx, Fail> {
    let max = max_dim()?;
    if g.corpus.is_some() && g.algebra.is_some() {
        return Err(Fail("give either --corpus or --algebra, not both".into()));
    }
    if let Some(name) = &g.corpus {
        let inst = corpus::load(name, max).ok_or_else(|| {
            Fail(format!("unknown corpus entry {name:?}; known: {}", corpus::names().join(", ")))
        })??;
        cap(inst.algebra.dim(), max, name)?;
        let action = match &g.action {
            Some(p) => Some(Arc::new(ingest::parse_action(&ingest::read_doc(p)?, &inst.algebra)?)),
            None => inst.action,
        };
        return Ok(Ctx { algebra: inst.algebra, action, quiver: inst.quiver, max_dim: max });
    }
    if let Some(p) = &g.algebra {
        let algebra = Arc::new(ingest::parse_algebra(&ingest::read_doc(p)?)?);
        cap(algebra.dim(), max, &p.display().to_string())?;
        let action = match &g.action {
            Some(ap) => Some(Arc::new(ingest::parse_action(&ingest::read_doc(ap)?, &algebra)?)),
            None => None,
        };
        return Ok(Ctx { algebra, action, quiver: None, max_dim: max });
    }
    if let Some(p) = &g.module {
        // the module file names its own algebra
        let m = ingest::parse_module(&ingest::read_doc(p)?, None)?;
        cap(m.algebra().dim(), max, &p.display().to_string())?;
        return Ok(Ctx { algebra: m.algebra().clone(), action: None, quiver: None, max_dim: max });
    }
    Err(Fail("no input algebra: use --corpus NAME or --algebra FILE".into()))
}

fn need_action(ctx: &Ctx) -> Result<Arc<GroupAction>, Fail> {
    ctx.action.clone().ok_or_else(|| Fail("this verb needs a group action (--action FILE or a corpus entry with one)".into()))
}

fn index(token: &str, kind: &str, len: usize) -> Result<usize, Fail> {
    let c: usize = token.parse().map_err(|_| Fail(format!("bad {kind} index {token:?}")))?;
    if c >= len {
        return Err(Fail(format!("{kind} index {c} out of range (there are {len})")));
    }
    Ok(c)
}

/// Resolves a comma-separated module selector list.
fn pick_modules(cat: &ModuleCategory, g: &Global, spec: &str) -> Result<Vec<(String, Module)>, Fail> {
    let mut out = Vec::new();
    let n = cat.class_count();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match token.split_once(':') {
            Some(("simple", c)) => out.push((token.to_string(), cat.simples()[index(c, "simple", n)?].clone())),
            Some(("projective", c)) => {
                out.push((token.to_string(), cat.projectives()[index(c, "projective", n)?].module.clone()))
            }
            Some(("injective", c)) => out.push((token.to_string(), cat.injectives()[index(c, "injective", n)?].clone())),
            None if token == "regular" => out.push((token.to_string(), cat.regular())),
            None if token == "simples" => {
                out.extend(cat.simples().iter().enumerate().map(|(c, m)| (format!("simple:{c}"), m.clone())))
            }
            None if token == "projectives" => out.extend(
                cat.projective_modules().into_iter().enumerate().map(|(c, m)| (format!("projective:{c}"), m)),
            ),
            None if token == "injectives" => {
                out.extend(cat.injectives().iter().enumerate().map(|(c, m)| (format!("injective:{c}"), m.clone())))
            }
            None if token == "module" => {
                let p = g.module.as_ref().ok_or_else(|| Fail("selector \"module\" needs --module FILE".into()))?;
                let m = ingest::parse_module(&ingest::read_doc(p)?, Some(cat.algebra()))?;
                if !halg_core::modhom::same_algebra(m.algebra(), cat.algebra()) {
                    return Err(Fail(format!("{}: module lives over a different algebra", p.display())));
                }
                out.push((token.to_string(), m));
            }
            _ => return Err(Fail(format!("unknown module selector {token:?}"))),
        }
    }
    if out.is_empty() {
        return Err(Fail("empty module selection".into()));
    }
    Ok(out)
}

fn single(mut ms: Vec<(String, Module)>) -> Result<(String, Module), Fail> {
    if ms.len() != 1 {
        return Err(Fail(format!("expected exactly one module, selector gives {}", ms.len())));
    }
    Ok(ms.remove(0))
}

fn default_pick(g: &Global, otherwise: &str) -> String {
    if g.module.is_some() {
        "module".to_string()
    } else {
        otherwise.to_string()
    }
}

/// Fills defaults into the verb so the embedded command replays exactly.
fn resolve_defaults(cli: &mut Cli, ctx_has_action: bool) {
    let g = &cli.global;
    match &mut cli.verb {
        Verb::Resolve { pick, .. } => {
            pick.get_or_insert_with(|| default_pick(g, "regular"));
        }
        Verb::Probe { kind, pick } => {
            let d = match kind {
                ProbeKind::Findim => "simples",
                ProbeKind::Gnc => "simples",
                _ => "simple:0",
            };
            pick.get_or_insert_with(|| default_pick(g, d));
        }
        Verb::Verify { kind, pick, against, ext, .. } => match kind {
            VerifyKind::Lemma31 => {
                ext.get_or_insert_with(|| if ctx_has_action { "skew".into() } else { "matrix:2".into() });
            }
            VerifyKind::Prop27 => {
                pick.get_or_insert_with(|| default_pick(g, "simples,projectives"));
            }
            VerifyKind::Prop35 => {
                pick.get_or_insert_with(|| default_pick(g, "simples"));
                against.get_or_insert_with(|| "regular".into());
            }
            _ => {}
        },
        _ => {}
    }
}

fn canonical_argv(cli: &Cli) -> Vec<String> {
    let mut a: Vec<String> = Vec::new();
    let mut push = |xs: &[&str]| a.extend(xs.iter().map(|s| s.to_string()));
    let name = |v: &dyn ValueEnumName| v.name();
    match &cli.verb {
        Verb::BuildPathAlgebra { prime } => {
            push(&["build-path-algebra"]);
            if let Some(p) = prime {
                push(&["--prime", &p.to_string()]);
            }
        }
        Verb::MatrixExt { n } => push(&["matrix-ext", "--n", &n.to_string()]),
        Verb::Skew => push(&["skew"]),
        Verb::GabrielQuiver => push(&["gabriel-quiver"]),
        Verb::Resolve { direction, pick } => {
            push(&["resolve", "--direction", &name(direction), "--pick", pick.as_deref().unwrap_or("")])
        }
        Verb::Check { claim } => push(&["check", &name(claim)]),
        Verb::Probe { kind, pick } => push(&["probe", &name(kind), "--pick", pick.as_deref().unwrap_or("")]),
        Verb::Verify { kind, pick, against, ext, i_max } => {
            push(&["verify", &name(kind)]);
            for (flag, v) in [("--pick", pick), ("--against", against), ("--ext", ext)] {
                if let Some(v) = v {
                    push(&[flag, v]);
                }
            }
            if *kind == VerifyKind::Prop35 {
                push(&["--i-max", &i_max.to_string()]);
            }
        }
    }
    let g = &cli.global;
    push(&["--cutoff", &g.cutoff.to_string(), "--seed", &g.seed.to_string(), "--format", &name(&g.format)]);
    for (flag, v) in [("--corpus", g.corpus.clone()), ("--algebra", path(&g.algebra)), ("--action", path(&g.action))] {
        if let Some(v) = v {
            push(&[flag, &v]);
        }
    }
    for (flag, v) in [("--quiver", path(&g.quiver)), ("--module", path(&g.module))] {
        if let Some(v) = v {
            push(&[flag, &v]);
        }
    }
    a
}

fn path(p: &Option<PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

trait ValueEnumName {
    fn name(&self) -> String;
}

impl<T: ValueEnum> ValueEnumName for T {
    fn name(&self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

fn category(ctx: &Ctx, seed: u64) -> Result<ModuleCategory, Fail> {
    Ok(ModuleCategory::new(&ctx.algebra, seed)?)
}

fn execute(cli: &Cli) -> Result<Produced, Fail> {
    let g = &cli.global;
    let params = Params::new(g.cutoff, g.seed);
    if let Verb::BuildPathAlgebra { prime } = &cli.verb {
        let q = match (&g.quiver, &g.corpus) {
            (Some(p), _) => ingest::parse_quiver(&ingest::read_doc(p)?)?,
            (None, Some(_)) => load_ctx(g)?.quiver.ok_or_else(|| Fail("corpus entry has no quiver".into()))?,
            (None, None) => return Err(Fail("build-path-algebra needs --quiver FILE or --corpus NAME".into())),
        };
        let field = match prime {
            Some(p) => Field::prime(*p)?,
            None => Field::Rationals,
        };
        let a = path_algebra(field, &q)?;
        cap(a.dim(), max_dim()?, "path algebra")?;
        return Ok(Produced::Doc(algebra_json(&a)));
    }
    let ctx = load_ctx(g)?;
    match &cli.verb {
        Verb::BuildPathAlgebra { .. } => unreachable!("handled above"),
        Verb::MatrixExt { n } => {
            if *n == 0 {
                return Err(Fail("--n must be at least 1".into()));
            }
            cap(n.saturating_mul(*n).saturating_mul(ctx.algebra.dim()), ctx.max_dim, "matrix extension")?;
            Ok(Produced::Doc(algebra_json(&matrix_algebra(&ctx.algebra, *n)?)))
        }
        Verb::Skew => {
            let action = need_action(&ctx)?;
            cap(action.order() * ctx.algebra.dim(), ctx.max_dim, "skew group algebra")?;
            Ok(Produced::Doc(algebra_json(&skew_group_algebra(&action)?)))
        }
        Verb::GabrielQuiver => {
            let gq = gabriel_quiver(&ctx.algebra, g.seed)?;
            Ok(Produced::Doc(json!({
                "quiver": quiver_json(&gq.quiver),
                "simple_dims": gq.simple_dims,
                "arrow_counts": gq.arrow_counts,
                "vertex_count": gq.vertex_count(),
                "arrow_total": gq.arrow_total(),
                "seed": gq.seed,
            })))
        }
        Verb::Resolve { direction, pick } => {
            let cat = category(&ctx, g.seed)?;
            let (label, m) = single(pick_modules(&cat, g, pick.as_deref().unwrap_or("regular"))?)?;
            let dir = match direction {
                DirectionArg::Projective => Direction::Projective,
                DirectionArg::Injective => Direction::Injective,
            };
            let res = minimal_resolution(&cat, &m, dir, g.cutoff)?;
            Ok(Produced::Doc(json!({
                "module": label,
                "module_dim": m.dim(),
                "dimension": res.dimension(),
                "multiplicities": res.multiplicities(cat.class_count()),
                "resolution": res,
                "cutoff": g.cutoff,
                "seed": g.seed,
            })))
        }
        Verb::Check { claim } => {
            let cat = category(&ctx, g.seed)?;
            Ok(Produced::Report(match claim {
                CheckClaim::Gsc => conjcheck::gsc_check(&cat, params)?,
                CheckClaim::Nc => conjcheck::nakayama_condition(&cat, params)?,
                CheckClaim::Agc => conjcheck::auslander_condition(&cat, params)?,
            }))
        }
        Verb::Probe { kind, pick } => {
            let cat = category(&ctx, g.seed)?;
            let spec = pick.as_deref().unwrap_or("simple:0");
            Ok(Produced::Report(match kind {
                ProbeKind::Snc => conjcheck::snc_probe(&cat, &single(pick_modules(&cat, g, spec)?)?.1, params)?,
                ProbeKind::Gnc => conjcheck::gnc_probe(&cat, params)?,
                ProbeKind::Arc => conjcheck::arc_probe(&cat, &single(pick_modules(&cat, g, spec)?)?.1, params)?,
                ProbeKind::Findim => {
                    let ms: Vec<Module> = pick_modules(&cat, g, spec)?.into_iter().map(|(_, m)| m).collect();
                    conjcheck::findim_probe(&cat, &ms, params)?
                }
            }))
        }
        Verb::Verify { kind, pick, against, ext, i_max } => verify(&ctx, g, params, *kind, pick, against, ext, *i_max),
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    ctx: &Ctx,
    g: &Global,
    params: Params,
    kind: VerifyKind,
    pick: &Option<String>,
    against: &Option<String>,
    ext: &Option<String>,
    i_max: usize,
) -> Result<Produced, Fail> {
    let d = ctx.algebra.dim();
    match kind {
        VerifyKind::Lemma31 => {
            let spec = ext.as_deref().unwrap_or("matrix:2");
            let extension = if spec == "skew" {
                let action = need_action(ctx)?;
                cap(action.order() * d, ctx.max_dim, "skew group algebra")?;
                Extension::Skew(action)
            } else if let Some(n) = spec.strip_prefix("matrix:") {
                let n: usize = n.parse().ok().filter(|&n| n >= 1).ok_or_else(|| Fail(format!("bad extension {spec:?}")))?;
                cap(n.saturating_mul(n).saturating_mul(d), ctx.max_dim, "matrix extension")?;
                Extension::Matrix(n)
            } else {
                return Err(Fail(format!("unknown extension {spec:?}; use skew or matrix:N")));
            };
            Ok(Produced::Report(conjcheck::verify_lemma31(&ctx.algebra, &extension, params)?))
        }
        VerifyKind::Prop27 | VerifyKind::Prop35 | VerifyKind::Thm36 | VerifyKind::Adjoint => {
            let action = need_action(ctx)?;
            cap(action.order() * d, ctx.max_dim, "skew group algebra")?;
            let cat = category(ctx, g.seed)?;
            match kind {
                VerifyKind::Prop27 => {
                    let ms = pick_modules(&cat, g, pick.as_deref().unwrap_or("simples,projectives"))?;
                    let parts = ms
                        .into_iter()
                        .map(|(l, m)| Ok((l, conjcheck::verify_prop27(&m, &action, g.seed)?)))
                        .collect::<Result<Vec<_>, Fail>>()?;
                    Ok(Produced::Report(render::combine("prop2.7", parts)))
                }
                VerifyKind::Prop35 => {
                    let ms = pick_modules(&cat, g, pick.as_deref().unwrap_or("simples"))?;
                    let (_, n) = single(pick_modules(&cat, g, against.as_deref().unwrap_or("regular"))?)?;
                    let parts = ms
                        .into_iter()
                        .map(|(l, m)| Ok((l, conjcheck::verify_prop35(&m, &n, &action, i_max, g.seed)?)))
                        .collect::<Result<Vec<_>, Fail>>()?;
                    Ok(Produced::Report(render::combine("prop3.5", parts)))
                }
                VerifyKind::Thm36 => Ok(Produced::Report(conjcheck::verify_thm36_machinery(&action, params)?)),
                _ => {
                    let gamma = Arc::new(skew_group_algebra(&action)?);
                    let cat_g = ModuleCategory::new(&gamma, g.seed)?;
                    let all = "simples,projectives,injectives";
                    let ms: Vec<Module> = pick_modules(&cat, g, all)?.into_iter().map(|(_, m)| m).collect();
                    let ns: Vec<Module> = pick_modules(&cat_g, g, all)?.into_iter().map(|(_, m)| m).collect();
                    Ok(Produced::Report(conjcheck::verify_adjoint(&action, &ms, &ns, g.seed)?))
                }
            }
        }
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit code with everything that would be printed. With
/// `-o PATH` the document goes to the file and `stdout` stays empty.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                RunOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let has_action = cli.global.action.is_some()
        || cli
            .global
            .corpus
            .as_deref()
            .is_some_and(|c| corpus::ACTED.contains(&c));
    resolve_defaults(&mut cli, has_action);
    let argv = canonical_argv(&cli);
    let (mut doc, code, stderr) = match execute(&cli) {
        Ok(Produced::Doc(v)) => (v, EXIT_OK, String::new()),
        Ok(Produced::Report(r)) => {
            let code = render::report_code(&r);
            let stderr = r.banner().map(|b| b + "\n").unwrap_or_default();
            (serde_json::to_value(&r).expect("reports serialize"), code, stderr)
        }
        Err(Fail(msg)) => {
            return RunOutput { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") };
        }
    };
    doc["command"] = json!({ "argv": argv });
    let text = match cli.global.format {
        Format::Json => render::to_json(&doc),
        Format::Text => render::to_text(&doc),
    };
    match &cli.global.output {
        Some(p) => match std::fs::write(p, &text) {
            Ok(()) => RunOutput { code, stdout: String::new(), stderr },
            Err(e) => RunOutput { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", p.display()) },
        },
        None => RunOutput { code, stdout: text, stderr },
    }
}
