use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use anchorkit::anchor::{
    anchors, brauer_quotient_dim, defect_group_mod_p, order_lattice, radical_data, reduce_mod_p, AnchorConfig,
    Reduction,
};
use anchorkit::cache::{default_cache_dir, TableCache, TableSource, CACHE_DIR_ENV};
use anchorkit::catalog::{builtin_catalog, Catalog};
use anchorkit::chtab::{block_defect_group, blocks, export_table, CharTable};
use anchorkit::grp::{group_from_spec, Group, GroupSpec, Subgroup};
use anchorkit::verify::{self, VerifyConfig};
use anchorkit::Error;

#[derive(Parser, Debug)]
#[command(name = "anchorkit", version, about = "Exact anchor computation for characters of finite groups")]
struct Cli {
    /// Character table cache directory.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    /// Use coefficients in Q(ζ_m) with m = exp(G) rather than the value field.
    #[arg(long, global = true)]
    full_field: bool,
    /// Initial p-adic precision.
    #[arg(long, global = true, env = "ANCHORKIT_PRECISION")]
    precision: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GroupArg {
    /// Group JSON file: {"name", "degree", "generators"}.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Built-in catalog group, e.g. S4 or "GL(2,3)".
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the character table as JSON.
    Table {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// p-blocks with defects, heights and defect groups.
    Blocks {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Anchors of one or all irreducible characters.
    Anchors {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        char: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Structure of the reduction of the order modulo p.
    Reduce {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        char: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run every theorem check over a catalog and write a report.
    Verify {
        /// `builtin` or a catalog JSON file.
        #[arg(long, default_value = "builtin")]
        catalog: String,
        /// Restrict to these primes (repeatable).
        #[arg(long)]
        prime: Vec<u64>,
        #[arg(long)]
        report: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(_) | Error::Io(_) | Error::Capacity(_) => Failure::Input(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn input<E: std::fmt::Display>(path: &Path) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

struct Ctx {
    cache: TableCache,
    cfg: VerifyConfig,
}

impl Ctx {
    fn load_group(&self, arg: &GroupArg) -> Res<Group> {
        if let Some(path) = &arg.group {
            let text = fs::read_to_string(path).map_err(input(path))?;
            let spec: GroupSpec = serde_json::from_str(&text).map_err(input(path))?;
            return Ok(group_from_spec(&spec)?);
        }
        let name = arg.builtin.as_deref().expect("clap requires one group source");
        let cat = builtin_catalog();
        match cat.get(name) {
            Some(e) => Ok(e.build()?),
            None => Err(Failure::Input(format!("unknown builtin group {name}; known: {}", cat.names().join(", ")))),
        }
    }

    fn table(&self, g: &Group) -> Res<CharTable> {
        let (t, src) = self.cache.load_or_compute(g)?;
        if src == TableSource::Cache {
            eprintln!("character table served from cache {}", self.cache.path_for(g).display());
        }
        Ok(t)
    }
}

fn gens(g: &Group, h: &Subgroup) -> Vec<String> {
    h.generators(g).into_iter().map(|x| g.element(x).to_string()).collect()
}

fn show_subgroup(g: &Group, h: &Subgroup) -> String {
    let gs = gens(g, h);
    if gs.is_empty() {
        format!("order {} <>", h.order())
    } else {
        format!("order {} <{}>", h.order(), gs.join(", "))
    }
}

fn check_char(t: &CharTable, chi: usize) -> Res<()> {
    if chi >= t.characters.len() {
        return Err(Failure::Input(format!("character {chi} out of range 0..{}", t.characters.len())));
    }
    Ok(())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value serializes"));
}

fn cmd_table(ctx: &Ctx, group: &GroupArg, out: Option<&Path>) -> Res<()> {
    let g = ctx.load_group(group)?;
    let text = export_table(&ctx.table(&g)?);
    match out {
        Some(path) => fs::write(path, &text).map_err(input(path))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_blocks(ctx: &Ctx, group: &GroupArg, p: u64, as_json: bool) -> Res<()> {
    let g = ctx.load_group(group)?;
    let t = ctx.table(&g)?;
    let ld = verify::local_data(&t, p, &ctx.cfg)?;
    let bl = blocks(&t, &ld)?;
    let mut rows = Vec::new();
    if !as_json {
        println!("{} (order {}), p = {}: {} blocks", g.name, g.order(), p, bl.len());
    }
    for (i, b) in bl.iter().enumerate() {
        let d = block_defect_group(&g, b, &ld)?;
        if as_json {
            rows.push(json!({
                "index": i, "members": b.members, "defect": b.defect, "heights": b.heights,
                "defect_group_order": d.order(), "defect_group_generators": d.generator_perms(&g),
            }));
        } else {
            println!(
                "block {i}: characters {:?}, defect {}, heights {:?}, defect group {}",
                b.members,
                b.defect,
                b.heights,
                show_subgroup(&g, &d)
            );
        }
    }
    if as_json {
        print_json(&json!({ "group": g.name, "prime": p, "header": ld.header(), "blocks": rows }));
    }
    Ok(())
}

fn cmd_anchors(ctx: &Ctx, group: &GroupArg, p: u64, chi: Option<usize>, as_json: bool) -> Res<()> {
    let g = ctx.load_group(group)?;
    let t = ctx.table(&g)?;
    let ld = verify::local_data(&t, p, &ctx.cfg)?;
    let chars: Vec<usize> = match chi {
        Some(c) => {
            check_char(&t, c)?;
            vec![c]
        }
        None => (0..t.characters.len()).collect(),
    };
    let cfg = AnchorConfig { full_field: ctx.cfg.full_field };
    let mut rows = Vec::new();
    for c in chars {
        let order = order_lattice(&g, &t, c, &ld, cfg)?;
        let a = anchors(&order)?;
        if as_json {
            rows.push(json!({
                "char": c, "degree": t.characters[c].degree, "coefficient_conductor": order.conductor,
                "anchor_order": a.anchor_order(), "anchor_class": a.anchor_class(),
                "anchor_generators": a.anchor.generator_perms(&g), "trace_defects": a.trace_defects,
            }));
        } else {
            println!(
                "char {c} (degree {}): anchor {}, trace defects {:?}",
                t.characters[c].degree,
                show_subgroup(&g, &a.anchor),
                a.trace_defects
            );
        }
    }
    if as_json {
        print_json(&json!({ "group": g.name, "prime": p, "header": ld.header(), "characters": rows }));
    }
    Ok(())
}

fn cmd_reduce(ctx: &Ctx, group: &GroupArg, p: u64, chi: usize, as_json: bool) -> Res<()> {
    let g = ctx.load_group(group)?;
    let t = ctx.table(&g)?;
    check_char(&t, chi)?;
    let ld = verify::local_data(&t, p, &ctx.cfg)?;
    let order = order_lattice(&g, &t, chi, &ld, AnchorConfig { full_field: ctx.cfg.full_field })?;
    let a = anchors(&order)?;
    let red = Reduction::new(&order)?;
    let alg = reduce_mod_p(&order, &red)?;
    let rd = radical_data(&alg)?;
    let q = defect_group_mod_p(&g, &alg, Some(&a.anchor))?;
    let brauer = brauer_quotient_dim(&order, &red, &a.anchor)?;
    let irreducible = rd.radical_dim == 0 && rd.center_dim == 1;
    if as_json {
        print_json(&json!({
            "group": g.name, "prime": p, "char": chi, "degree": t.characters[chi].degree,
            "dimension": alg.dimension(), "field_degree": alg.f, "radical_dim": rd.radical_dim,
            "center_dim": rd.center_dim, "quotient_blocks": rd.quotient_blocks,
            "commutative": alg.is_commutative(), "irreducible_mod_p": irreducible,
            "mod_p_defect_order": q.order(), "mod_p_defect_generators": q.generator_perms(&g),
            "anchor_order": a.anchor_order(), "brauer_quotient_at_anchor": brauer,
        }));
        return Ok(());
    }
    println!("{} (order {}), p = {}, char {chi} (degree {})", g.name, g.order(), p, t.characters[chi].degree);
    println!("dimension {} over F_{}^{}", alg.dimension(), p, alg.f);
    println!("radical dimension {}, center dimension {}", rd.radical_dim, rd.center_dim);
    println!("semisimple quotient matrix sizes {:?}", rd.quotient_blocks);
    println!("commutative {}, irreducible mod p {irreducible}", alg.is_commutative());
    println!("mod-p defect group {}", show_subgroup(&g, &q));
    println!("anchor {}, Brauer quotient dimension {brauer}", show_subgroup(&g, &a.anchor));
    Ok(())
}

fn cmd_verify(ctx: &Ctx, catalog: &str, primes: &[u64], report: &Path, format: Format) -> Res<bool> {
    let cat = if catalog == "builtin" {
        builtin_catalog()
    } else {
        let path = Path::new(catalog);
        Catalog::from_json(&fs::read_to_string(path).map_err(input(path))?)?
    };
    let ps = (!primes.is_empty()).then_some(primes);
    let r = verify::verify_catalog(&cat, catalog, ps, &ctx.cfg, Some(&ctx.cache))?;
    let text = match format {
        Format::Json => verify::render_json(&r),
        Format::Csv => verify::render_csv(&r)?,
        Format::Md => verify::render_markdown(&r),
    };
    fs::write(report, text).map_err(input(report))?;
    let s = &r.summary;
    println!("{} runs, {} checks, {} passed, {} failed", s.runs, s.checks, s.passed, s.failed);
    for f in &s.failed_checks {
        println!("FAILED {f}");
    }
    Ok(r.all_passed())
}

fn run(cli: &Cli) -> Res<bool> {
    let ctx = Ctx {
        cache: TableCache::new(cli.cache_dir.clone().unwrap_or_else(default_cache_dir)),
        cfg: VerifyConfig { full_field: cli.full_field, initial_precision: cli.precision },
    };
    match &cli.command {
        Command::Table { group, out } => cmd_table(&ctx, group, out.as_deref()).map(|_| true),
        Command::Blocks { group, prime, json } => cmd_blocks(&ctx, group, *prime, *json).map(|_| true),
        Command::Anchors { group, prime, char, json } => cmd_anchors(&ctx, group, *prime, *char, *json).map(|_| true),
        Command::Reduce { group, prime, char, json } => cmd_reduce(&ctx, group, *prime, *char, *json).map(|_| true),
        Command::Verify { catalog, prime, report, format } => cmd_verify(&ctx, catalog, prime, report, *format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(e)) => {
            eprintln!("anchorkit: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("anchorkit: {e}");
            ExitCode::from(2)
        }
    }
}
