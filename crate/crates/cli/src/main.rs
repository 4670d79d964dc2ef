use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use subcat::catalog::io::load_catalog;
use subcat::catalog::{Builtin, Catalog, Limits};
use subcat::closures::{
    serre_closure, torf_closure_certified, tors_closure_certified, ChainCertificate, SubcatBits,
};
use subcat::lattices::{
    enumerate_all, enumerate_family, enumerate_ie_by_intersection, hasse, is_closed, render_table, CheckConfig,
    ClassKind, Family, Strategy,
};
use subcat::{verify, Error};

/// Subcategory lattices of finite-length module categories over prime fields.
#[derive(Parser)]
#[command(name = "subcat", version)]
struct Cli {
    #[command(flatten)]
    source: Source,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Largest multiplicity of one indecomposable in a morphism source or target.
    #[arg(long, default_value_t = 2, global = true)]
    mult_cap: usize,

    /// Largest total dimension of an assembled direct sum.
    #[arg(long, default_value_t = 16, global = true)]
    dim_cap: usize,

    /// Include certificates and witnesses.
    #[arg(long, global = true)]
    explain: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// a2 | a<n> | an:<n>:<word over r,l> | uniserial:<n>
    #[arg(long, global = true, conflicts_with = "algebra")]
    builtin: Option<String>,

    /// Field characteristic for builtin algebras.
    #[arg(long = "char", default_value_t = 2, global = true)]
    field_char: u32,

    /// Algebra description (JSON).
    #[arg(long, global = true, requires = "modules")]
    algebra: Option<PathBuf>,

    /// Directory with one JSON file per indecomposable.
    #[arg(long, global = true)]
    modules: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureKind {
    Serre,
    Tors,
    Torf,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Nextclosure,
    Bruteforce,
    /// ie only: intersections of torsion and torsion-free classes.
    Intersection,
}

#[derive(Subcommand)]
enum Command {
    /// Indecomposables, Hom dimensions and extension middle terms.
    Catalog,
    /// Smallest subcategory of a kind containing a set.
    Closure {
        #[arg(long, value_enum)]
        kind: ClosureKind,
        /// Comma-separated catalog names; empty for the zero subcategory.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Whether a set is closed for a kind, with a witness when it is not.
    Check {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "")]
        set: String,
    },
    /// All subcategories of one kind, or of every kind.
    Enumerate {
        /// serre | tors | torf | wide | ice | ike | ie | all
        #[arg(long, default_value = "all")]
        kind: String,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
    },
    /// Run the verification battery.
    Verify,
}

enum Failure {
    Input(String),
    Cap(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::InFile { ref source, .. } if matches!(**source, Error::CapExceeded { .. }) => {
                Failure::Cap(e.to_string())
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

fn load(source: &Source) -> Result<(Catalog, bool), Failure> {
    match (&source.builtin, &source.algebra, &source.modules) {
        (Some(spec), None, None) => {
            let b: Builtin = spec.parse()?;
            let cat = b.build(source.field_char, Limits::default())?;
            Ok((cat, b == Builtin::A2))
        }
        (None, Some(alg), Some(dir)) => Ok((load_catalog(alg, dir, Limits::default())?, false)),
        (None, None, None) => Err(Failure::Input("choose an algebra with --builtin or --algebra/--modules".into())),
        _ => Err(Failure::Input("use either --builtin or --algebra with --modules".into())),
    }
}

fn parse_set(cat: &Catalog, set: &str) -> Result<SubcatBits, Failure> {
    let names: Vec<&str> = set
        .trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(SubcatBits::from_names(cat, &names)?)
}

fn no_dot(format: Format, what: &str) -> Result<(), Failure> {
    if format == Format::Dot {
        return Err(Failure::Input(format!("dot output is not available for {what}")));
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn catalog_text(cat: &Catalog) -> String {
    let alg = cat.algebra();
    let mut out = format!("field: F_{}\nvertices: {}\n", alg.p(), alg.vertices().join(", "));
    let arrows: Vec<String> = alg
        .arrows()
        .iter()
        .map(|a| format!("{}: {} -> {}", a.name, alg.vertices()[a.source], alg.vertices()[a.target]))
        .collect();
    out.push_str(&format!("arrows: {}\n", if arrows.is_empty() { "none".into() } else { arrows.join(", ") }));
    let rels: Vec<String> = (0..alg.relations().len()).map(|i| alg.describe_relation(i)).collect();
    out.push_str(&format!("relations: {}\n", if rels.is_empty() { "none".into() } else { rels.join(", ") }));
    out.push_str(&format!("\nindecomposables ({}):\n", cat.len()));
    let w = cat.names().iter().map(String::len).max().unwrap_or(1);
    for (name, m) in cat.names().iter().zip(cat.indecs()) {
        out.push_str(&format!("  {name:<w$}  dims {:?}\n", m.dims()));
    }
    let simples: Vec<&str> = cat.simples().iter().map(|&i| cat.name(i)).collect();
    out.push_str(&format!("simples: {}\n", simples.join(", ")));
    out.push_str("\ndim Hom(row, column):\n");
    out.push_str(&format!("  {:<w$}", ""));
    for name in cat.names() {
        out.push_str(&format!(" {name:>w$}"));
    }
    out.push('\n');
    for (i, name) in cat.names().iter().enumerate() {
        out.push_str(&format!("  {name:<w$}"));
        for d in &cat.hom_dims()[i] {
            out.push_str(&format!(" {d:>w$}"));
        }
        out.push('\n');
    }
    out.push_str("\nnon-split extensions 0 -> L -> M -> N -> 0:\n");
    let mut any = false;
    for i in 0..cat.len() {
        for j in 0..cat.len() {
            let terms = cat.ext_middle_terms(i, j);
            if terms.len() > 1 {
                any = true;
                let labels: Vec<String> = terms.iter().map(|t| cat.id_label(t)).collect();
                out.push_str(&format!("  L = {}, N = {}: M in {{{}}}\n", cat.name(i), cat.name(j), labels.join(", ")));
            }
        }
    }
    if !any {
        out.push_str("  none\n");
    }
    out
}

fn certificate_text(c: &ChainCertificate) -> String {
    let steps: Vec<String> = c
        .steps
        .iter()
        .map(|s| format!("{} (length {}, removes {})", s.module, s.length, s.layer_dim))
        .collect();
    let end = if c.reaches_zero { "0" } else { "stuck" };
    format!("  {}: {} -> {end}\n", c.start, steps.join(" -> "))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let cfg = CheckConfig::new(cli.mult_cap, cli.dim_cap)?;
    let (cat, is_a2) = load(&cli.source)?;
    match &cli.command {
        Command::Catalog => {
            no_dot(cli.format, "catalog")?;
            Ok(match cli.format {
                Format::Json => pretty(&serde_json::to_value(cat.export()).expect("serializable")),
                _ => catalog_text(&cat),
            })
        }
        Command::Closure { kind, set } => {
            no_dot(cli.format, "closure")?;
            let c = parse_set(&cat, set)?;
            let (name, result, certs) = match kind {
                ClosureKind::Serre => ("serre", serre_closure(&cat, c), None),
                ClosureKind::Tors => {
                    let (b, certs) = tors_closure_certified(&cat, c)?;
                    ("tors", b, Some(certs))
                }
                ClosureKind::Torf => {
                    let (b, certs) = torf_closure_certified(&cat, c)?;
                    ("torf", b, Some(certs))
                }
            };
            let certs = certs.filter(|_| cli.explain);
            Ok(match cli.format {
                Format::Json => {
                    let mut v = json!({"kind": name, "set": c.names(&cat), "closure": result.names(&cat)});
                    if let Some(certs) = &certs {
                        v["certificates"] = serde_json::to_value(certs).expect("serializable");
                    }
                    pretty(&v)
                }
                _ => {
                    let mut out = format!("{}\n", result.label(&cat));
                    if let Some(certs) = &certs {
                        let layer = if name == "tors" { "trace" } else { "reject" };
                        out.push_str(&format!("iterated {layer} chains:\n"));
                        for cert in certs {
                            out.push_str(&certificate_text(cert));
                        }
                    }
                    out
                }
            })
        }
        Command::Check { kind, set } => {
            no_dot(cli.format, "check")?;
            let kind: ClassKind = kind.parse()?;
            let s = parse_set(&cat, set)?;
            let v = is_closed(&cat, kind, s, cfg)?;
            Ok(match cli.format {
                Format::Json => pretty(&json!({
                    "kind": kind,
                    "set": s.names(&cat),
                    "closed": v.closed,
                    "witness": v.witness,
                    "truncated": v.truncated,
                })),
                _ => match &v.witness {
                    None if v.truncated => format!("{} is {kind}-closed (within caps)\n", s.label(&cat)),
                    None => format!("{} is {kind}-closed\n", s.label(&cat)),
                    Some(w) => format!("{} is not {kind}-closed: {w}\n", s.label(&cat)),
                },
            })
        }
        Command::Enumerate { kind, strategy } => {
            let families: Vec<Family> = if kind == "all" {
                if strategy.is_some() {
                    return Err(Failure::Input("--strategy needs a single --kind".into()));
                }
                enumerate_all(&cat, cfg)?
            } else {
                let kind: ClassKind = kind.parse()?;
                let f = match strategy {
                    None => enumerate_family(&cat, kind, Strategy::default_for(kind), cfg)?,
                    Some(StrategyArg::Nextclosure) => enumerate_family(&cat, kind, Strategy::NextClosure, cfg)?,
                    Some(StrategyArg::Bruteforce) => enumerate_family(&cat, kind, Strategy::BruteForce, cfg)?,
                    Some(StrategyArg::Intersection) if kind == ClassKind::Ie => enumerate_ie_by_intersection(&cat)?,
                    Some(StrategyArg::Intersection) => {
                        return Err(Error::StrategyMismatch {
                            strategy: "intersection",
                            kind: kind.as_str(),
                        }
                        .into())
                    }
                };
                vec![f]
            };
            Ok(match cli.format {
                Format::Dot => {
                    if families.len() != 1 {
                        return Err(Failure::Input("dot output needs a single --kind".into()));
                    }
                    hasse(&families[0]).to_dot(&cat)
                }
                Format::Json => {
                    let reports: Vec<_> = families.iter().map(|f| f.report(&cat, cfg)).collect();
                    let v = if kind == "all" {
                        serde_json::to_value(reports)
                    } else {
                        serde_json::to_value(&reports[0])
                    };
                    pretty(&v.expect("serializable"))
                }
                Format::Table => {
                    let mut out = render_table(&cat, &families);
                    let truncated: Vec<&str> = families.iter().filter(|f| f.truncated).map(|f| f.kind.as_str()).collect();
                    if !truncated.is_empty() {
                        out.push_str(&format!(
                            "note: {} accepted within mult_cap = {}, dim_cap = {}\n",
                            truncated.join(", "),
                            cfg.mult_cap,
                            cfg.dim_cap
                        ));
                    }
                    out
                }
            })
        }
        Command::Verify => {
            no_dot(cli.format, "verify")?;
            let report = verify::run(&cat, cfg, is_a2)?;
            let text = match cli.format {
                Format::Json => pretty(&json!({"passed": report.passed(), "checks": report.checks})),
                _ => report.render(),
            };
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("SUBCAT_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("SUBCAT_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli)).and_then(|text| emit(&cli, &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(text)) => {
            let _ = emit(&cli, &text);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
