use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use gnc::count::{count, Method, Reduced};
use gnc::patterns::{avoids, census_sharded, PatternSet};
use gnc::schroder::{decode_path, encode_tree, encode_tree_literal, enumerate_schroder, SchroderPath};
use gnc::sequences::{self, SequenceFormat};
use gnc::series::{render_json, render_numeric, render_text, Family, Solutions, TriSeries, DEFAULT_ORDER};
use gnc::trees::enumerate_gnc;
use gnc::verify::{self, Suite, VerifyOptions};
use gnc::{Error, GncTree, Limits};

#[derive(Parser)]
#[command(name = "gnc", version, about = "Exact enumeration and verification for generalized non-crossing trees")]
struct Cli {
    /// Number of shards for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Largest series order accepted.
    #[arg(long, global = true, default_value_t = 20)]
    max_order: usize,
    /// Largest edge count accepted by enumeration (and the brute-force
    /// bound of `verify`).
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Output format: text, csv, json or bfile, depending on the command.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the trees with `n` edges avoiding a pattern set.
    Count {
        n: usize,
        /// Comma-separated patterns, e.g. `uu,h`.
        #[arg(long, default_value = "")]
        avoid: String,
        /// brute, formula or series.
        #[arg(long, default_value = "brute")]
        method: String,
    },
    /// Joint (u, h, d) distribution of the avoiders.
    Census {
        n: usize,
        #[arg(long, default_value = "")]
        avoid: String,
        /// Restrict to trees whose first edge is an ascent.
        #[arg(long)]
        star: bool,
    },
    /// Solve and print a generating-function family.
    Series {
        /// master, uu-dd, ud-du, uudd, ternary or star.
        family: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Substitute integers for x,y,z, e.g. `1,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// The bijection between increasing trees and little Schröder paths.
    Bijection {
        #[command(subcommand)]
        mode: BijectionMode,
    },
    /// Run a verification suite; exits nonzero on any failed check.
    Verify {
        /// all, equations, theorems, bijection, identities or oracle.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Print a named sequence from 0 to --max-n (default 10) as a b-file or CSV.
    Oeis { name: String },
}

#[derive(Subcommand)]
enum BijectionMode {
    /// Exhaustive bijectivity check at size n.
    Check { n: usize },
    /// Encode a tree JSON file (`-` for standard input).
    Encode { file: PathBuf },
    /// Decode a path written over U, D, F.
    Decode { path: String },
}

struct Output {
    body: String,
    success: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, success: true }
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut limits = Limits::default();
    if let Some(n) = cli.max_n {
        limits.max_gnc_n = n;
        limits.max_points = (n + 2).max(limits.max_points);
        limits.max_path_n = n.max(limits.max_path_n);
    }
    limits
}

fn format_of<'a>(cli: &'a Cli, default: &'a str, allowed: &[&str]) -> anyhow::Result<&'a str> {
    let f = cli.format.as_deref().unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("format {f:?} not available here (expected one of {})", allowed.join(", "));
    }
    Ok(f)
}

fn parse_point(s: &str) -> anyhow::Result<(i64, i64, i64)> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("--at expects three integers x,y,z, got {s:?}"))?;
    match parts.as_slice() {
        [x, y, z] => Ok((*x, *y, *z)),
        _ => bail!("--at expects three integers x,y,z, got {s:?}"),
    }
}

fn family_members(family: Family, s: &Solutions) -> Vec<(&'static str, TriSeries)> {
    match family {
        Family::Master => vec![("master", s.master.main.clone())],
        Family::Star => vec![("star", s.star.clone())],
        Family::Ternary => vec![("ternary", s.ternary.clone())],
        Family::UuDd => vec![("uu", s.uu().clone()), ("dd", s.dd().clone())],
        Family::UdDu => vec![("ud", s.ud().clone()), ("du", s.du().clone())],
        Family::Uudd => vec![("uudd", s.uudd.main.clone())],
    }
}

fn cmd_series(cli: &Cli, family: &str, order: usize, at: Option<&str>) -> anyhow::Result<Output> {
    let family: Family = family.parse()?;
    if order > cli.max_order {
        return Err(Error::BoundExceeded {
            what: "order",
            requested: order,
            bound: cli.max_order,
        }
        .into());
    }
    let solutions = Solutions::new(order);
    let members = family_members(family, &solutions);
    let format = format_of(cli, "text", &["text", "json"])?;
    let single = members.len() == 1;
    let mut body = String::new();
    if let Some(at) = at {
        let (x, y, z) = parse_point(at)?;
        if format == "json" {
            let map: serde_json::Map<String, serde_json::Value> = members
                .iter()
                .map(|(name, s)| {
                    let coeffs = s.eval_int(x, y, z).iter().map(|c| c.to_string().into()).collect();
                    (name.to_string(), serde_json::Value::Array(coeffs))
                })
                .collect();
            body = serde_json::to_string_pretty(&map)? + "\n";
        } else {
            for (name, s) in &members {
                if single {
                    body += &format!("{}\n", render_numeric(s, x, y, z));
                } else {
                    body += &format!("{name}: {}\n", render_numeric(s, x, y, z));
                }
            }
        }
    } else if format == "json" {
        let map: serde_json::Map<String, serde_json::Value> = members
            .iter()
            .map(|(name, s)| Ok((name.to_string(), serde_json::from_str(&render_json(s))?)))
            .collect::<anyhow::Result<_>>()?;
        body = serde_json::to_string_pretty(&map)? + "\n";
    } else {
        for (name, s) in &members {
            if !single {
                body += &format!("# {name}\n");
            }
            body += &render_text(s);
        }
    }
    Ok(Output::ok(body))
}

fn read_input(file: &PathBuf) -> anyhow::Result<String> {
    if file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))
    }
}

fn cmd_bijection(cli: &Cli, mode: &BijectionMode) -> anyhow::Result<Output> {
    let limits = limits(cli);
    match mode {
        BijectionMode::Encode { file } => {
            let tree = GncTree::from_json_str(&read_input(file)?)?;
            Ok(Output::ok(format!("{}\n", encode_tree(&tree)?)))
        }
        BijectionMode::Decode { path } => {
            let path: SchroderPath = path.parse()?;
            let tree = decode_path(&path)?;
            Ok(Output::ok(serde_json::to_string(&tree.to_json())? + "\n"))
        }
        BijectionMode::Check { n } => {
            let n = *n;
            let hd: PatternSet = "h,d".parse()?;
            let trees: Vec<GncTree> = enumerate_gnc(n, &limits)?.iter().filter(|t| avoids(t, &hd)).collect();
            let paths: BTreeSet<SchroderPath> = enumerate_schroder(n, &limits)?.into_iter().collect();
            let mut image = BTreeSet::new();
            let mut tree_trips = 0;
            let mut literal = BTreeSet::new();
            for t in &trees {
                let p = encode_tree(t)?;
                if &decode_path(&p)? == t {
                    tree_trips += 1;
                }
                image.insert(p);
                literal.insert(encode_tree_literal(t)?.to_string());
            }
            let mut path_trips = 0;
            for p in &paths {
                if &encode_tree(&decode_path(p)?)? == p {
                    path_trips += 1;
                }
            }
            let success = image.len() == trees.len()
                && image == paths
                && tree_trips == trees.len()
                && path_trips == paths.len();
            let body = format!(
                "n={n}\ntrees: {}\npaths: {}\ndistinct encodings: {}\nimage equals path set: {}\ntree round trips: {}/{}\npath round trips: {}/{}\nliteral-rule distinct words: {}\nresult: {}\n",
                trees.len(),
                paths.len(),
                image.len(),
                image == paths,
                tree_trips,
                trees.len(),
                path_trips,
                paths.len(),
                literal.len(),
                if success { "pass" } else { "FAIL" },
            );
            Ok(Output { body, success })
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Count { n, avoid, method } => {
            let set: PatternSet = avoid.parse()?;
            let method: Method = method.parse()?;
            if method == Method::Series {
                Reduced::new(&set)?;
                if *n > cli.max_order {
                    return Err(Error::BoundExceeded {
                        what: "order",
                        requested: *n,
                        bound: cli.max_order,
                    }
                    .into());
                }
            }
            let c = count(*n, &set, method, &limits(cli), cli.jobs)?;
            Ok(Output::ok(format!("{c}\n")))
        }
        Command::Census { n, avoid, star } => {
            let set: PatternSet = avoid.parse()?;
            let c = census_sharded(*n, &set, *star, &limits(cli), cli.jobs)?;
            let body = match format_of(cli, "csv", &["csv", "json"])? {
                "json" => serde_json::to_string_pretty(&c.to_json())? + "\n",
                _ => c.to_csv(),
            };
            Ok(Output::ok(body))
        }
        Command::Series { family, order, at } => cmd_series(cli, family, *order, at.as_deref()),
        Command::Bijection { mode } => cmd_bijection(cli, mode),
        Command::Verify {
            suite,
            order,
            inject_fault,
        } => {
            let suite: Suite = suite.parse()?;
            let opts = VerifyOptions {
                max_n: cli.max_n.unwrap_or(VerifyOptions::default().max_n),
                order: *order,
                jobs: cli.jobs,
                limits: limits(cli),
                inject_fault: *inject_fault,
            };
            let report = verify::run(suite, &opts)?;
            for r in report.failures() {
                eprintln!("FAIL {} [{}] expected {} observed {}", r.id, r.params, r.expected, r.observed);
            }
            eprintln!(
                "suite {}: {} checks, {} passed, {} failed",
                report.suite, report.summary.total, report.summary.passed, report.summary.failed
            );
            Ok(Output {
                body: report.to_json() + "\n",
                success: report.pass,
            })
        }
        Command::Oeis { name } => {
            let max_n = cli.max_n.unwrap_or(10) as u64;
            let seq = sequences::lookup(name)?;
            let format: SequenceFormat = format_of(cli, "bfile", &["bfile", "csv"])?.parse()?;
            Ok(Output::ok(sequences::render(&seq.prefix(max_n), format)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &out.body).with_context(|| format!("writing {}", path.display())),
                None => io::stdout().write_all(out.body.as_bytes()).map_err(Into::into),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = matches!(
                e.downcast_ref::<Error>(),
                Some(Error::Unsupported(_) | Error::BoundExceeded { .. } | Error::InvalidPattern(_))
            );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
