use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qdouble_core::characters::DEFAULT_SEED;
use qdouble_core::double::Double;
use qdouble_core::fixtures::{check_s_matrix, compare_group, Check, FixtureSet};
use qdouble_core::fusion::fusion_data;
use qdouble_core::graphs::{dot_export, embedding_irreps, fusion_graph, vertex_labels};
use qdouble_core::groups::{catalog, catalog_names, family_of, parse_generator_file, GroupData, DEFAULT_LIMIT};
use qdouble_core::report::{analyze, Options, ReportBundle};

#[derive(Parser)]
#[command(name = "qdouble", version, about = "Modular data and fusion rings of Drinfeld doubles")]
struct Cli {
    /// Worker threads.
    #[arg(long, global = true, env = "MD_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute S, T, fusion rules and the summary report for one group.
    Compute(ComputeArgs),
    /// Compare computed data with the reference fixtures.
    Verify(VerifyArgs),
    /// Write fusion graphs as DOT files.
    Graph(GraphArgs),
    /// List the catalog.
    List,
}

#[derive(Args)]
struct Source {
    /// Catalog name, e.g. Sigma168 or Dhat5.
    group: Option<String>,
    /// Permutation generators, one per line in cycle notation.
    #[arg(long, conflicts_with = "group")]
    generators: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Skip the full fusion tensor.
    #[arg(long)]
    aggregates_only: bool,
}

#[derive(Args)]
struct VerifyArgs {
    groups: Vec<String>,
    #[arg(long, conflicts_with = "groups")]
    all: bool,
    /// Fixture file (TOML, or JSON by extension); the built-in set by default.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    source: Source,
    /// 1-based irrep label of D(G).
    #[arg(long, conflicts_with = "embedding", required_unless_present = "embedding")]
    irrep: Option<usize>,
    /// All embedding irreps of G.
    #[arg(long)]
    embedding: bool,
    /// Directory for the DOT files.
    #[arg(long)]
    dot: Option<PathBuf>,
}

fn load_group(src: &Source) -> Result<(String, GroupData)> {
    match (&src.group, &src.generators) {
        (Some(name), _) => Ok((name.clone(), catalog(name)?)),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let gens = parse_generator_file(&text)?;
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("group").to_string();
            let g = GroupData::enumerate(&name, &gens, DEFAULT_LIMIT)?;
            Ok((name, g))
        }
        (None, None) => bail!("give a catalog name or --generators FILE"),
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn compute(args: &ComputeArgs) -> Result<()> {
    let (name, g) = load_group(&args.source)?;
    let opts = Options {
        seed: args.seed,
        aggregates_only: args.aggregates_only,
        family: family_of(&name),
    };
    let a = analyze(&name, &g, &opts)?;
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write(&args.out.join(format!("{name}_modular.json")), &a.modular.to_json())?;
    if let Some(t) = &a.fusion.tensor {
        write(&args.out.join(format!("{name}_fusion.txt")), &t.to_triples())?;
    }
    let b = &a.bundle;
    match args.format {
        Format::Json => write(
            &args.out.join(format!("{name}_report.json")),
            &(serde_json::to_string_pretty(b)? + "\n"),
        )?,
        Format::Csv => write(
            &args.out.join(format!("{name}_report.csv")),
            &format!("{}\n{}\n", ReportBundle::csv_header(), b.csv_row()),
        )?,
    }
    println!(
        "{name}: |G|={} l={} r={} d_B={} ({}) units={} row_sum_rule={}",
        b.order, b.class_number, b.rank, b.d_b, b.d_b_value, b.table.units, b.table.row_sum_double
    );
    println!("quantum dimensions {}", b.qdims);
    Ok(())
}

fn verify_one(name: &str, fx: &FixtureSet, seed: u64) -> Result<Vec<Check>> {
    let gf = fx.get(name).with_context(|| format!("no fixture for {name}"))?;
    let g = catalog(name)?;
    let opts = Options {
        seed,
        aggregates_only: true,
        family: family_of(name),
    };
    let a = analyze(name, &g, &opts)?;
    let mut checks = compare_group(gf, &a.bundle);
    if let Some(sf) = fx.s_matrix.as_ref().filter(|f| f.group == name) {
        let m = check_s_matrix(sf, &a.modular.s)?;
        checks.push(Check {
            group: name.to_string(),
            quantity: "s_matrix".into(),
            expected: format!("{} entries within 1e-9", m.entries),
            actual: format!("max error {:.1e}", m.max_error),
            pass: m.pass(),
            disputed: false,
        });
    }
    Ok(checks)
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let fx = match &args.fixtures {
        Some(p) => FixtureSet::load(p)?,
        None => FixtureSet::builtin(),
    };
    let names: Vec<String> = if args.all || args.groups.is_empty() {
        let known = catalog_names();
        fx.group.iter().map(|g| g.name.clone()).filter(|n| known.contains(&n.as_str())).collect()
    } else {
        args.groups.clone()
    };
    let results: Vec<(String, Result<Vec<Check>>)> = names
        .par_iter()
        .map(|n| (n.clone(), verify_one(n, &fx, args.seed)))
        .collect();
    let mut ok = true;
    let (mut total, mut failed) = (0, 0);
    println!("{:<20} {:<20} {:<8} expected / actual", "group", "quantity", "status");
    for (name, res) in results {
        match res {
            Ok(checks) => {
                for c in checks {
                    total += 1;
                    if !c.ok() {
                        failed += 1;
                        ok = false;
                    }
                    if c.pass {
                        println!("{:<20} {:<20} {:<8} {}", c.group, c.quantity, c.status(), c.actual);
                    } else {
                        println!(
                            "{:<20} {:<20} {:<8} {} / {}",
                            c.group,
                            c.quantity,
                            c.status(),
                            c.expected,
                            c.actual
                        );
                    }
                }
            }
            Err(e) => {
                ok = false;
                failed += 1;
                println!("{name:<20} {:<20} {:<8} {e:#}", "-", "ERROR");
            }
        }
    }
    println!("{total} checks, {failed} failed");
    Ok(ok)
}

fn graph(args: &GraphArgs) -> Result<()> {
    let (name, g) = load_group(&args.source)?;
    let d = Double::new(&g)?;
    let md = d.modular_data()?;
    let fd = fusion_data(&md, false)?;
    let sets: Vec<Vec<usize>> = if let Some(k) = args.irrep {
        if k == 0 || k > md.rank() {
            bail!("irrep {k} out of range 1..={}", md.rank());
        }
        vec![vec![k - 1]]
    } else {
        let family = family_of(&name).context("embedding needs a catalog group")?;
        let sel = embedding_irreps(&g, &d.centralizers[0].table, family);
        if sel.embeddings.is_empty() {
            println!("{name}: no embedding irrep");
            return Ok(());
        }
        sel.embeddings
            .iter()
            .map(|e| e.iter().map(|&r| d.index_of(0, r)).collect())
            .collect()
    };
    let labels = vertex_labels(&d);
    if let Some(dir) = &args.dot {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for set in sets {
        let gr = fusion_graph(&md, &fd, &set)?;
        let tag = set.iter().map(|i| format!("N{}", i + 1)).collect::<Vec<_>>().join("+");
        let sizes: Vec<usize> = gr.weak_components.iter().map(Vec::len).collect();
        println!(
            "{name} {tag}: {} components, sizes {:?}, {}",
            gr.component_count(),
            sizes,
            if gr.oriented { "oriented" } else { "unoriented" }
        );
        if let Some(dir) = &args.dot {
            let file = set.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("+");
            write(&dir.join(format!("{name}_N{file}.dot")), &dot_export(&gr, &labels, &tag))?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global()?;
    }
    match &cli.command {
        Command::Compute(a) => compute(a).map(|_| true),
        Command::Verify(a) => verify(a),
        Command::Graph(a) => graph(a).map(|_| true),
        Command::List => {
            for n in catalog_names() {
                let fam = family_of(n).map(|f| format!("{f:?}")).unwrap_or_default();
                println!("{n:<20} {fam}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
