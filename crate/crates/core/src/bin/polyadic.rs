use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polyadic::bounds::{bounds_report, exhaustive_fn, reports_to_csv, ReportOptions, SearchOptions};
use polyadic::enumeration::{brute_force_concepts, count_concepts, enumerate_concepts};
use polyadic::generators::{b_class, contranominal, fixture, fixture_names, random_context, rook_context, Shape};
use polyadic::implications::{canonical_context, classify_with, holds, lattice_equivalent, Implication, Scope, StructuralCloser};
use polyadic::io::{format_subset, label_set, parse_attribute_set, parse_context, serialize_concepts, serialize_context, ConceptFormat};
use polyadic::transforms::{direct_sum_all, flatten, slice, Bipartition};
use polyadic::verify::{render, run_checks};
use polyadic::{Error, NContext, Result};

#[derive(Parser)]
#[command(name = "polyadic", version, about = "Concepts, implications and bounds for n-ary relations")]
struct Cli {
    /// Worker threads for enumeration and search (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Context file; `-` or nothing reads standard input.
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated context to standard output.
    #[command(subcommand)]
    Gen(Gen),
    /// List all concepts.
    Enum {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Use the definition-checking oracle instead of the enumerator.
        #[arg(long)]
        brute_force: bool,
    },
    /// Print the number of concepts.
    Count {
        #[command(flatten)]
        input: Input,
    },
    /// Flatten to a 2-context; dimensions are 1-based, comma-separated.
    Flatten {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        right: Vec<usize>,
    },
    /// Remove a dimension, keeping tuples present for every listed label.
    Slice {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dim: usize,
        /// Comma-separated labels of the removed dimension; may be empty.
        #[arg(long, default_value = "")]
        keep: String,
    },
    /// Direct sum of two or more context files.
    Sum {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Check whether an implication holds.
    ImplCheck {
        #[command(flatten)]
        input: Input,
        /// `premise -> conclusion`, e.g. "(1,a),(1,b) -> (1,c)".
        #[arg(long = "impl")]
        implication: String,
        /// `[dim=labels;...]/left|right`, e.g. "3=a/1|2"; default objects against the rest.
        #[arg(long)]
        scope: Option<String>,
    },
    /// Classify implications of the objects-vs-rest flattening.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long = "impl", required = true)]
        implications: Vec<String>,
    },
    /// Rewrite a context with one object per class of linked features.
    Minimize {
        #[command(flatten)]
        input: Input,
    },
    /// Whether two contexts have the same concept features.
    Equiv { first: PathBuf, second: PathBuf },
    /// Known bounds on the maximal number of concepts.
    Bounds {
        #[arg(short, long)]
        n: usize,
        /// One side, or a range like 2..5.
        #[arg(short, long)]
        s: String,
        #[arg(long)]
        csv: bool,
        /// Write a witness context for every row into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Exhaustive search for the maximal number of concepts.
    Search {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        s: usize,
        #[arg(long)]
        no_symmetry: bool,
        /// Seconds before stopping with a lower bound.
        #[arg(long)]
        time_budget: Option<f64>,
        #[arg(long, default_value_t = 1 << 24)]
        max_candidates: u128,
        /// Write the witnesses into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Check the library against the published worked examples.
    VerifyPaper,
}

#[derive(Subcommand)]
enum Gen {
    Contranominal {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        s: usize,
    },
    /// Feature dimension sizes, comma-separated.
    Bclass {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    Rook {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
    },
    /// A bundled context by name.
    Fixture {
        #[arg(value_parser = fixture_names())]
        name: String,
    },
    Random {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

fn read_text(path: Option<&Path>) -> Result<String> {
    let mut text = String::new();
    match path {
        None => io::stdin().read_to_string(&mut text).map(|_| ()),
        Some(p) if p == Path::new("-") => io::stdin().read_to_string(&mut text).map(|_| ()),
        Some(p) => fs::read_to_string(p).map(|t| text = t),
    }
    .map_err(|e| Error::InvalidArgument(format!("cannot read input: {e}")))?;
    Ok(text)
}

fn load(input: &Input) -> Result<NContext> {
    parse_context(&read_text(input.file.as_deref())?)
}

fn load_path(p: &Path) -> Result<NContext> {
    parse_context(&read_text(Some(p))?)
}

fn dim_index(ctx: &NContext, d: usize) -> Result<usize> {
    if d == 0 || d > ctx.arity() {
        return Err(Error::InvalidArgument(format!(
            "dimension {d} out of range 1..={}",
            ctx.arity()
        )));
    }
    Ok(d - 1)
}

fn dims(ctx: &NContext, ds: &[usize]) -> Result<Vec<usize>> {
    ds.iter().map(|&d| dim_index(ctx, d)).collect()
}

fn labels_of(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_scope(ctx: &NContext, text: &str) -> Result<Scope> {
    let (slices, split) = match text.split_once('/') {
        Some((s, rest)) => (s, rest),
        None => ("", text),
    };
    let mut sl = Vec::new();
    for part in slices.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (d, keep) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("slice {part:?} needs `dim=labels`")))?;
        let d: usize = d
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad dimension in {part:?}")))?;
        let d = dim_index(ctx, d)?;
        sl.push((d, label_set(ctx.labels(d), labels_of(keep))?));
    }
    let (l, r) = split
        .split_once('|')
        .ok_or_else(|| Error::InvalidArgument("scope needs `left|right`".into()))?;
    let side = |s: &str| -> Result<Vec<usize>> {
        labels_of(s)
            .iter()
            .map(|d| {
                d.parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad dimension {d:?}")))
                    .and_then(|d| dim_index(ctx, d))
            })
            .collect()
    };
    Scope::new(ctx.arity(), sl, side(l)?, side(r)?)
}

fn write_witness(dir: &Path, name: &str, ctx: &NContext) -> Result<String> {
    fs::create_dir_all(dir).map_err(|e| Error::InvalidArgument(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, serialize_context(ctx))
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

fn side_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("bad side {s:?}; use N or A..B"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.parse().map_err(|_| bad())?]),
    }
}

fn run(cli: Cli, out: &mut String) -> Result<bool> {
    match cli.command {
        Command::Gen(g) => {
            let ctx = match g {
                Gen::Contranominal { n, s } => contranominal(n, s)?,
                Gen::Bclass { sizes } => b_class(&sizes)?,
                Gen::Rook { n, s, offset } => rook_context(n, s, offset)?,
                Gen::Fixture { name } => fixture(&name)?,
                Gen::Random { sizes, density } => random_context(&Shape::new(sizes)?, density, cli.seed)?,
            };
            out.push_str(&serialize_context(&ctx));
        }
        Command::Enum {
            input,
            format,
            brute_force,
        } => {
            let ctx = load(&input)?;
            let cs = if brute_force {
                brute_force_concepts(&ctx)?
            } else {
                enumerate_concepts(&ctx)
            };
            let format = match format {
                Format::Text => ConceptFormat::Text,
                Format::Json => ConceptFormat::Json,
                Format::Csv => ConceptFormat::Csv,
            };
            out.push_str(&serialize_concepts(&ctx, &cs, format)?);
        }
        Command::Count { input } => {
            out.push_str(&format!("{}\n", count_concepts(&load(&input)?)));
        }
        Command::Flatten { input, left, right } => {
            let ctx = load(&input)?;
            let p = Bipartition::new(ctx.arity(), &dims(&ctx, &left)?, &dims(&ctx, &right)?)?;
            out.push_str(&serialize_context(&flatten(&ctx, &p)?));
        }
        Command::Slice { input, dim, keep } => {
            let ctx = load(&input)?;
            let d = dim_index(&ctx, dim)?;
            let keep = label_set(ctx.labels(d), labels_of(&keep))?;
            out.push_str(&serialize_context(&slice(&ctx, d, &keep)?));
        }
        Command::Sum { files } => {
            let parts = files.iter().map(|f| load_path(f)).collect::<Result<Vec<_>>>()?;
            out.push_str(&serialize_context(&direct_sum_all(&parts)?));
        }
        Command::ImplCheck {
            input,
            implication,
            scope,
        } => {
            let ctx = load(&input)?;
            let scope = match scope {
                Some(s) => parse_scope(&ctx, &s)?,
                None => Scope::objects_vs_rest(ctx.arity())?,
            };
            let ctx2 = scope.apply(&ctx)?;
            let (p, c) = polyadic::io::parse_implication(ctx2.labels(1), &implication)?;
            let imp = Implication::new(p, c, scope)?;
            let ok = holds(&ctx, &imp)?;
            out.push_str(if ok { "holds\n" } else { "does not hold\n" });
        }
        Command::Classify { input, implications } => {
            let ctx = load(&input)?;
            let scope = Scope::objects_vs_rest(ctx.arity())?;
            let attrs = scope.apply(&ctx)?.labels(1).to_vec();
            let closer = StructuralCloser::new(&ctx)?;
            for text in implications {
                let (p, c) = text
                    .split_once("->")
                    .ok_or_else(|| Error::InvalidArgument(format!("{text:?} needs `->`")))?;
                let imp = Implication::new(
                    parse_attribute_set(&attrs, p)?,
                    parse_attribute_set(&attrs, c)?,
                    scope.clone(),
                )?;
                let r = classify_with(&ctx, &closer, &imp)?;
                out.push_str(&format!(
                    "{}\t{}\tsupport {}\n",
                    text.trim(),
                    r.classification,
                    format_subset(ctx.labels(0), &r.support)
                ));
            }
        }
        Command::Minimize { input } => {
            out.push_str(&serialize_context(&canonical_context(&load(&input)?)?));
        }
        Command::Equiv { first, second } => {
            let eq = lattice_equivalent(&load_path(&first)?, &load_path(&second)?)?;
            out.push_str(if eq { "equivalent\n" } else { "not equivalent\n" });
        }
        Command::Bounds {
            n,
            s,
            csv,
            witness_dir,
        } => {
            let mut reports = Vec::new();
            for s in side_range(&s)? {
                let mut r = bounds_report(n, s, &ReportOptions::default())?;
                if let (Some(dir), Some(w)) = (&witness_dir, &r.witness) {
                    r.witness_file = Some(write_witness(dir, &format!("witness-n{n}-s{s}.ctx"), w)?);
                }
                reports.push(r);
            }
            if csv {
                out.push_str(&reports_to_csv(&reports)?);
            } else {
                for r in &reports {
                    out.push_str(&r.to_text());
                }
            }
        }
        Command::Search {
            n,
            s,
            no_symmetry,
            time_budget,
            max_candidates,
            witness_dir,
        } => {
            let opts = SearchOptions {
                symmetry_reduction: !no_symmetry,
                time_budget: time_budget.map(Duration::from_secs_f64),
                max_candidates,
            };
            let r = exhaustive_fn(n, s, &opts)?;
            out.push_str(&format!(
                "f_{n}({s}) = {} [{}], {} witnesses up to symmetry, {} relations evaluated\n",
                r.max_count,
                r.label(),
                r.witnesses.len(),
                r.evaluated
            ));
            if let Some(dir) = witness_dir {
                for (i, w) in r.witnesses.iter().enumerate() {
                    let p = write_witness(&dir, &format!("max-n{n}-s{s}-{}.ctx", i + 1), w)?;
                    out.push_str(&format!("wrote {p}\n"));
                }
            }
        }
        Command::VerifyPaper => {
            let checks = run_checks()?;
            out.push_str(&render(&checks));
            return Ok(checks.iter().all(|c| c.passed));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let mut out = String::new();
    let result = run(cli, &mut out);
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
