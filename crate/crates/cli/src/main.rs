//! `hecke`: Kazhdan-Lusztig tables, the asymptotic ring, spectrum
//! preservation checks and (periodic) cyclic homology from the command line.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 usage error,
//! 3 inconclusive or unresolved.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hecke_core::asymptotic::{Asymptotic, Convention, JElement, DEFAULT_RADIUS, DEFAULT_STEP};
use hecke_core::coxeter::{from_label, CoxeterDatum, GroupElement};
use hecke_core::field::NumberField;
use hecke_core::findim::io::parse_algebra;
use hecke_core::findim::{
    group_algebra, hecke_as_findim, q_field, spec_check, FinDimAlgebra, QSpec, DEFAULT_SEED,
};
use hecke_core::hecke::{cache, c_basis, h_constants, kl_column, t_multiply, HeckeElement, KLTable};
use hecke_core::homology::{
    cyclic_dims_with_budget, finite_order_classes, hochschild_dims_with_budget, hp_findim, hp_group_algebra,
    DEFAULT_BUDGET,
};
use hecke_core::Error;

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact Hecke algebra, KL and cyclic homology computations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// KL cache directory (falls back to $HECKE_CACHE_DIR; no cache if unset)
    #[arg(long, global = true, env = "HECKE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Args, Clone)]
struct TypeArg {
    /// Type label: A<n>, B<n>, G2, I2(m), affine-A1, affine-A2, ext-affine-A1, ext-affine-A2
    #[arg(long = "type")]
    label: String,
}

#[derive(Args, Clone)]
struct Scope {
    #[command(flatten)]
    ty: TypeArg,
    /// Length radius for infinite types
    #[arg(long, default_value_t = DEFAULT_RADIUS)]
    radius: usize,
}

#[derive(Args, Clone)]
struct AlgebraSource {
    /// Algebra file (`dim=<n> field=<..>` header, then `i j k c` lines)
    #[arg(long, conflicts_with = "label")]
    algebra: Option<PathBuf>,
    /// Use the Hecke algebra of this finite type (with --q) or its group algebra
    #[arg(long = "type")]
    label: Option<String>,
    #[arg(long, requires = "label", allow_hyphen_values = true)]
    q: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// KL polynomials P_{y,w} for all y ≤ w
    Kl {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        w: String,
    },
    /// C_w in the T-basis
    Cbasis {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        w: String,
    },
    /// T_x T_y, generic or specialized at --q
    Hmul {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// h_{w,u,v} with C_w C_u = Σ h_{w,u,v} C_v
    Hconst {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        w: String,
        #[arg(long)]
        u: String,
    },
    /// Lusztig's a-function
    Afn {
        #[command(flatten)]
        scope: Scope,
    },
    /// Distinguished involutions
    Dinv {
        #[command(flatten)]
        scope: Scope,
    },
    /// Structure constants γ_{x,y,z} of J
    Gamma {
        #[command(flatten)]
        scope: Scope,
        #[arg(long, default_value = "normalized")]
        convention: String,
    },
    /// t_x t_y in J
    Jmul {
        #[command(flatten)]
        scope: Scope,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "normalized")]
        convention: String,
    },
    /// φ(C_w) in J ⊗ Z[r, r^-1]
    Phi {
        #[command(flatten)]
        scope: Scope,
        #[arg(long)]
        w: String,
    },
    /// Checks φ(C_w C_u) = φ(C_w) φ(C_u) on all pairs in scope
    Phicheck {
        #[command(flatten)]
        scope: Scope,
        #[arg(long, default_value = "normalized")]
        convention: String,
    },
    /// Weak spectrum preservation of φ_q for the a-level filtration
    SpecCheck {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Hochschild homology HH_0..HH_n
    Hh {
        #[command(flatten)]
        source: AlgebraSource,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Cyclic homology HC_0..HC_n
    Hc {
        #[command(flatten)]
        source: AlgebraSource,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Periodic cyclic homology of a finite-dimensional algebra
    HpFindim {
        #[command(flatten)]
        source: AlgebraSource,
    },
    /// Periodic cyclic homology of a group algebra from conjugacy classes
    HpGroup {
        #[command(flatten)]
        ty: TypeArg,
        /// Also count infinite-order elements up to this length
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Finite-order conjugacy classes with conjugator certificates
    Classes {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// KL cache maintenance
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Computes columns (one element, or the whole scope) and saves them
    Fill {
        #[command(flatten)]
        scope: Scope,
        #[arg(long)]
        w: Option<String>,
    },
    /// Validates the cache file
    Check {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Prints the cache file
    Show {
        #[command(flatten)]
        ty: TypeArg,
    },
}

/// Result of a command: report lines (text and record forms) and an exit
/// code.
struct Report {
    lines: Vec<(String, Value)>,
    code: u8,
}

impl Report {
    fn new() -> Self {
        Report { lines: Vec::new(), code: 0 }
    }

    fn push(&mut self, text: String, record: Value) {
        self.lines.push((text, record));
    }
}

fn record(kind: &str, fields: Value) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind));
    if let Value::Object(f) = fields {
        m.extend(f);
    }
    Value::Object(m)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Inconclusive(_)
        | Error::Unresolved(_)
        | Error::IntervalTooLarge { .. }
        | Error::BudgetExceeded { .. }
        | Error::NonSplit(_)
        | Error::Inconsistent(_) => 3,
        _ => 2,
    }
}

struct Ctx {
    cache_dir: Option<PathBuf>,
    seed: u64,
}

impl Ctx {
    fn cache_path(&self, d: &CoxeterDatum) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|dir| dir.join(format!("{}.kl", d.label())))
    }

    fn load(&self, d: &CoxeterDatum) -> Result<KLTable, Error> {
        match self.cache_path(d) {
            Some(p) => cache::load_or_new(d, &p),
            None => Ok(KLTable::new(d.label())),
        }
    }

    fn save(&self, table: &KLTable) -> Result<(), Error> {
        if let Some(dir) = &self.cache_dir {
            cache::save(table, &dir.join(format!("{}.kl", table.label())))?;
        }
        Ok(())
    }

    fn asymptotic(&self, d: &CoxeterDatum, radius: usize) -> Result<Asymptotic, Error> {
        if d.is_finite() {
            let mut table = self.load(d)?;
            let asy = Asymptotic::finite_with_table(d, &mut table)?;
            self.save(asy.table())?;
            Ok(asy)
        } else {
            Asymptotic::ball(d, radius, DEFAULT_STEP)
        }
    }
}

fn datum(ty: &TypeArg) -> Result<CoxeterDatum, Error> {
    from_label(&ty.label)
}

fn element(d: &CoxeterDatum, s: &str) -> Result<GroupElement, Error> {
    d.parse(s)
}

fn j_lines(rep: &mut Report, kind: &str, j: &JElement) {
    for (z, c) in &j.0 {
        rep.push(format!("{z}|{c}"), record(kind, json!({"z": z.to_string(), "coeff": c.to_string()})));
    }
}

fn load_source(src: &AlgebraSource, ctx: &Ctx) -> Result<FinDimAlgebra, Error> {
    match (&src.algebra, &src.label) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)?;
            parse_algebra(&path.display().to_string(), &text)
        }
        (None, Some(label)) => {
            let d = from_label(label)?;
            match &src.q {
                Some(q) => {
                    let q: QSpec = q.parse()?;
                    let (k, root) = q_field(&q)?;
                    let mut asy = ctx.asymptotic(&d, 0)?;
                    Ok(hecke_as_findim(&mut asy, &k, &root, Convention::Normalized)?.hecke)
                }
                None => group_algebra(&d, &NumberField::rationals()),
            }
        }
        (None, None) => Err(Error::InvalidInput("one of --algebra or --type is required".into())),
    }
}

fn conv(s: &str) -> Result<Convention, Error> {
    s.parse()
}

fn run(cmd: &Command, ctx: &Ctx) -> Result<Report, Error> {
    let mut rep = Report::new();
    match cmd {
        Command::Kl { ty, w } => {
            let d = datum(ty)?;
            let w = element(&d, w)?;
            let mut table = ctx.load(&d)?;
            let col = kl_column(&d, &mut table, &w).clone();
            for (y, p) in &col {
                rep.push(
                    format!("P[{y},{w}] = {p}"),
                    record("kl", json!({"y": y.to_string(), "w": w.to_string(), "p": p.to_string()})),
                );
            }
            ctx.save(&table)?;
        }
        Command::Cbasis { ty, w } => {
            let d = datum(ty)?;
            let w = element(&d, w)?;
            let mut table = ctx.load(&d)?;
            let c = c_basis(&d, &w, &mut table);
            for (x, p) in c.terms() {
                rep.push(format!("{x}|{p}"), record("cbasis", json!({"x": x.to_string(), "coeff": p.to_string()})));
            }
            ctx.save(&table)?;
        }
        Command::Hmul { ty, x, y, q } => {
            let d = datum(ty)?;
            let prod = t_multiply(&d, &HeckeElement::t(element(&d, x)?), &HeckeElement::t(element(&d, y)?));
            match q.as_deref().map(str::parse::<QSpec>).transpose()? {
                None | Some(QSpec::Generic) => {
                    for (z, p) in prod.terms() {
                        rep.push(format!("{z}|{p}"), record("hmul", json!({"z": z.to_string(), "coeff": p.to_string()})));
                    }
                }
                Some(q) => {
                    let (k, root) = q_field(&q)?;
                    for (z, c) in prod.specialize(&k, &root)? {
                        let c = k.format(&c);
                        rep.push(format!("{z}|{c}"), record("hmul", json!({"z": z.to_string(), "coeff": c})));
                    }
                }
            }
        }
        Command::Hconst { ty, w, u } => {
            let d = datum(ty)?;
            let (w, u) = (element(&d, w)?, element(&d, u)?);
            let mut table = ctx.load(&d)?;
            for (v, p) in h_constants(&d, &w, &u, &mut table) {
                rep.push(format!("{v}|{p}"), record("hconst", json!({"v": v.to_string(), "coeff": p.to_string()})));
            }
            ctx.save(&table)?;
        }
        Command::Afn { scope } => {
            let asy = ctx.asymptotic(&datum(&scope.ty)?, scope.radius)?;
            for (w, v) in asy.a_table() {
                rep.push(
                    format!("a|{w}|{}|{}", v.value, v.certificate),
                    record("a", json!({"w": w.to_string(), "a": v.value, "certificate": v.certificate.to_string()})),
                );
            }
        }
        Command::Dinv { scope } => {
            let mut asy = ctx.asymptotic(&datum(&scope.ty)?, scope.radius)?;
            for (w, inv) in asy.distinguished()? {
                rep.push(format!("d|{w}|{inv}"), record("dinv", json!({"w": w.to_string(), "involution": inv})));
                if !inv {
                    rep.code = 3;
                }
            }
        }
        Command::Gamma { scope, convention } => {
            let asy = ctx.asymptotic(&datum(&scope.ty)?, scope.radius)?;
            let g = asy.gamma_table(conv(convention)?)?;
            for ((x, y, z), v) in &g.entries {
                rep.push(
                    format!("g|{x}|{y}|{z}|{v}|{}", g.convention),
                    record(
                        "gamma",
                        json!({"x": x.to_string(), "y": y.to_string(), "z": z.to_string(), "value": v, "convention": g.convention.to_string()}),
                    ),
                );
            }
        }
        Command::Jmul { scope, x, y, convention } => {
            let d = datum(&scope.ty)?;
            let asy = ctx.asymptotic(&d, scope.radius)?;
            let g = asy.gamma_table(conv(convention)?)?;
            let p = g.j_multiply(&JElement::t(element(&d, x)?), &JElement::t(element(&d, y)?))?;
            j_lines(&mut rep, "jmul", &p);
        }
        Command::Phi { scope, w } => {
            let d = datum(&scope.ty)?;
            let mut asy = ctx.asymptotic(&d, scope.radius)?;
            let p = asy.phi(&element(&d, w)?)?;
            j_lines(&mut rep, "phi", &p);
        }
        Command::Phicheck { scope, convention } => {
            let c = conv(convention)?;
            let mut asy = ctx.asymptotic(&datum(&scope.ty)?, scope.radius)?;
            let bad = asy.phi_multiplicativity_failures(c)?;
            let n = asy.elements().len();
            for (w, u) in &bad {
                rep.push(format!("fail|{w}|{u}"), record("phicheck-failure", json!({"w": w.to_string(), "u": u.to_string()})));
            }
            let holds = bad.is_empty();
            rep.push(
                format!("pairs={} failures={} convention={c} multiplicative={holds}", n * n, bad.len()),
                record(
                    "phicheck",
                    json!({"pairs": n * n, "failures": bad.len(), "convention": c.to_string(), "multiplicative": holds}),
                ),
            );
            rep.code = match (holds, c) {
                (true, _) => 0,
                (false, Convention::Literal) => 3,
                (false, Convention::Normalized) => 1,
            };
        }
        Command::SpecCheck { ty, q } => {
            let d = datum(ty)?;
            let q: QSpec = q.parse()?;
            let mut asy = ctx.asymptotic(&d, 0)?;
            let report = spec_check(&mut asy, &q, ctx.seed)?;
            for (l, layer) in report.render().lines().zip(&report.layers) {
                rep.push(
                    l.to_string(),
                    record(
                        "layer",
                        json!({
                            "index": layer.index,
                            "source_dim": layer.source_dim,
                            "target_dim": layer.target_dim,
                            "line": l,
                        }),
                    ),
                );
            }
            rep.push(
                format!("weakly spectrum preserving: {} ({})", report.holds, report.reason),
                record("spec-check", json!({"type": d.label(), "q": q.to_string(), "holds": report.holds, "reason": report.reason})),
            );
            rep.code = if report.holds { 0 } else { 1 };
        }
        Command::Hh { source, n, budget } => {
            let a = load_source(source, ctx)?;
            let h = hochschild_dims_with_budget(&a, *n, *budget)?;
            rep.push(h.to_string(), record("hh", json!({"dims": h.dims})));
        }
        Command::Hc { source, n, budget } => {
            let a = load_source(source, ctx)?;
            let h = cyclic_dims_with_budget(&a, *n, *budget)?;
            rep.push(h.to_string(), record("hc", json!({"dims": h.dims})));
        }
        Command::HpFindim { source } => {
            let a = load_source(source, ctx)?;
            let h = hp_findim(&a, ctx.seed)?;
            rep.push(h.to_string(), record("hp", json!({"hp0": h.dims[0], "hp1": h.dims[1]})));
        }
        Command::HpGroup { ty, radius } => {
            let r = hp_group_algebra(&datum(ty)?, *radius)?;
            for c in &r.classes {
                rep.push(c.report_line(), class_record(c));
            }
            if let Some(s) = &r.infinite {
                rep.push(
                    format!(
                        "infinite order within radius {}: {} elements, {} linear classes",
                        s.radius, s.elements, s.linear_classes
                    ),
                    record("infinite", json!({"radius": s.radius, "elements": s.elements, "linear_classes": s.linear_classes})),
                );
            }
            rep.push(r.hp.to_string(), record("hp", json!({"hp0": r.hp.dims[0], "hp1": r.hp.dims[1]})));
        }
        Command::Classes { ty } => {
            let d = datum(ty)?;
            for c in finite_order_classes(&d)? {
                rep.push(c.report_line(), class_record(&c));
                for (x, h) in &c.members {
                    rep.push(
                        format!("  {x} ~ {} via {h}", c.representative),
                        record("member", json!({"x": x.to_string(), "rep": c.representative.to_string(), "conjugator": h.to_string()})),
                    );
                }
            }
        }
        Command::Cache { action } => return run_cache(action, ctx),
    }
    Ok(rep)
}

fn class_record(c: &hecke_core::homology::ConjClassRecord) -> Value {
    record(
        "class",
        json!({
            "rep": c.representative.to_string(),
            "order": c.order,
            "rank": c.rank(),
            "centralizer_quotient": c.centralizer_quotient.len(),
            "cohomology": c.cohomology,
        }),
    )
}

fn require_cache(ctx: &Ctx, d: &CoxeterDatum) -> Result<PathBuf, Error> {
    ctx.cache_path(d)
        .ok_or_else(|| Error::InvalidInput("no cache directory: pass --cache-dir or set HECKE_CACHE_DIR".into()))
}

fn run_cache(action: &CacheAction, ctx: &Ctx) -> Result<Report, Error> {
    let mut rep = Report::new();
    match action {
        CacheAction::Fill { scope, w } => {
            let d = datum(&scope.ty)?;
            let path = require_cache(ctx, &d)?;
            let mut table = cache::load_or_new(&d, &path)?;
            let ws = match w {
                Some(w) => vec![element(&d, w)?],
                None if d.is_finite() => d.elements()?,
                None => d.ball(scope.radius),
            };
            for w in ws.iter().filter(|w| w.omega() == 0) {
                kl_column(&d, &mut table, w);
            }
            cache::save(&table, &path)?;
            rep.push(
                format!("{}: {} columns", path.display(), table.column_count()),
                record("cache", json!({"path": path.display().to_string(), "columns": table.column_count()})),
            );
        }
        CacheAction::Check { ty } => {
            let d = datum(ty)?;
            let path = require_cache(ctx, &d)?;
            let table = cache::load(&d, &path)?;
            rep.push(
                format!("ok: {} columns, {} entries", table.column_count(), table.entries().len()),
                record("cache", json!({"columns": table.column_count(), "entries": table.entries().len()})),
            );
        }
        CacheAction::Show { ty } => {
            let d = datum(ty)?;
            let path = require_cache(ctx, &d)?;
            let table = cache::load(&d, &path)?;
            for line in cache::render(&table).lines() {
                rep.push(line.to_string(), record("kl-entry", json!({"line": line})));
            }
        }
    }
    Ok(rep)
}

fn emit(rep: &Report, format: Format) {
    let mut out = std::io::stdout().lock();
    for (text, rec) in &rep.lines {
        let res = match format {
            Format::Text => writeln!(out, "{text}"),
            Format::Records => writeln!(out, "{rec}"),
        };
        if res.is_err() {
            return;
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let ctx = Ctx {
        cache_dir: cli.global.cache_dir.clone(),
        seed: cli.global.seed,
    };
    match run(&cli.command, &ctx) {
        Ok(rep) => {
            emit(&rep, cli.global.format);
            ExitCode::from(rep.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

