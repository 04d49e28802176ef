use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use finegrain::bench::{self, BenchOptions, BenchProblem};
use finegrain::gen::{generate, Family, GenSpec};
use finegrain::io;
use finegrain::proximity::{bcp_euclid, bcp_frechet, nn_build, nn_query, Dataset, Metric, Query};
use finegrain::reduction::{
    embed_euclid, embed_frechet, or_gadget, run_sweep, validate_gadget_config, GadgetConfig,
    GadgetValidation, ReductionKind, SweepOptions, ValidationOptions, VerifyContext,
};
use finegrain::{frechet_sq, ov_count, ov_decide, Rat};

#[derive(Parser)]
#[command(name = "finegrain", version, about = "Orthogonal Vectors reductions, exact solvers and benchmarks")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output file (or file prefix for `reduce`). Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an OV instance.
    Gen(GenArgs),
    /// Solve an instance read from files.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Write the reduced instance of an OV instance to files.
    Reduce(ReduceArgs),
    /// Check reductions against the brute-force OV oracle.
    Verify(VerifyArgs),
    /// Measure wall-clock scaling; writes CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// uniform-random, planted-orthogonal, no-orthogonal or unbalanced(ALPHA)
    #[arg(long, default_value = "uniform-random")]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Orthogonal Vectors on an instance file.
    Ov { instance: PathBuf },
    /// Discrete Fréchet distance between two curve files.
    Frechet { pi: PathBuf, sigma: PathBuf },
    /// Closest pair between two point files.
    BcpEuclid { p: PathBuf, q: PathBuf },
    /// Closest pair between two curve-set files.
    BcpFrechet { p: PathBuf, q: PathBuf },
    /// Nearest neighbor of each query in a data set.
    Nn {
        #[arg(long, default_value = "euclid-kdtree")]
        metric: String,
        data: PathBuf,
        queries: PathBuf,
    },
}

#[derive(Args)]
struct ReduceArgs {
    /// euclid-embed, ov-to-bcp, frechet-embed, ov-to-frechet or unbalanced-nn
    kind: String,
    instance: PathBuf,
    /// OR-gadget offset; validated before use.
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated reduction kinds, or `all`. An empty list checks nothing.
    #[arg(long, default_value = "all")]
    kinds: String,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 6)]
    max_d: usize,
    #[arg(long)]
    delta: Option<String>,
    /// Skip the exhaustive block of tiny instances.
    #[arg(long)]
    no_exhaustive: bool,
    /// Halve every reduced threshold so the harness has something to catch.
    #[arg(long, hide = true)]
    corrupt: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// ov, bcp-euclid, bcp-frechet, frechet-pair or nn-query
    problem: String,
    /// Ascending, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 16)]
    d: usize,
}

fn output(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn validated(delta: Option<&str>, seed: u64) -> Result<GadgetConfig> {
    let delta = match delta {
        Some(s) => s.parse::<Rat>()?,
        None => GadgetConfig::default_delta(),
    };
    let cfg = GadgetConfig::new(delta)?;
    let opts = ValidationOptions {
        seed,
        ..ValidationOptions::default()
    };
    match validate_gadget_config(&cfg, &opts)? {
        GadgetValidation::Passed { config, .. } => Ok(config),
        GadgetValidation::Failed {
            counterexample,
            expected,
            checked,
        } => bail!(
            "delta {} failed validation after {checked} instances; \
             counterexample (OV answer {expected}):\n{}",
            cfg.delta(),
            instance_text(&counterexample)?
        ),
    }
}

fn instance_text(inst: &finegrain::OvInstance) -> Result<String> {
    let mut buf = Vec::new();
    io::write_instance(&mut buf, inst, None)?;
    Ok(String::from_utf8(buf)?)
}

fn cmd_gen(cli: &Cli, args: &GenArgs) -> Result<u8> {
    let spec = GenSpec {
        n: args.n,
        d: args.d,
        family: args.family.parse::<Family>()?,
        seed: cli.seed,
    };
    let inst = generate(&spec)?;
    let mut w = output(cli.out.as_deref())?;
    io::write_instance(&mut w, &inst, Some(&spec.header()))?;
    w.flush()?;
    Ok(0)
}

fn cmd_solve(cli: &Cli, cmd: &SolveCmd) -> Result<u8> {
    let json = cli.format == Format::Json;
    let mut w = output(cli.out.as_deref())?;
    match cmd {
        SolveCmd::Ov { instance } => {
            let inst = io::load_instance(instance)?;
            let witness = ov_decide(&inst).map(|w| (w.index_a + 1, w.index_b + 1));
            let count = ov_count(&inst);
            if json {
                writeln!(w, "{}", json!({ "orthogonal": witness.is_some(), "witness": witness, "count": count }))?;
            } else {
                match witness {
                    Some((i, j)) => writeln!(w, "yes a={i} b={j} count={count}")?,
                    None => writeln!(w, "no")?,
                }
            }
        }
        SolveCmd::Frechet { pi, sigma } => {
            let r = frechet_sq(&io::load_curve(pi)?, &io::load_curve(sigma)?)?;
            if json {
                let steps: Vec<_> = r.traversal.one_based().collect();
                writeln!(w, "{}", json!({ "sq_value": r.sq_value.to_string(), "traversal": steps }))?;
            } else {
                writeln!(w, "sq_value {}", r.sq_value)?;
                writeln!(w, "traversal {}", r.traversal)?;
            }
        }
        SolveCmd::BcpEuclid { p, q } => {
            let r = bcp_euclid(&io::load_points(p)?, &io::load_points(q)?)?;
            bcp_line(&mut w, json, r.index_p, r.index_q, &r.sq_value.to_string())?;
        }
        SolveCmd::BcpFrechet { p, q } => {
            let r = bcp_frechet(&io::load_curve_set(p)?, &io::load_curve_set(q)?)?;
            bcp_line(&mut w, json, r.index_p, r.index_q, &r.sq_value.to_string())?;
        }
        SolveCmd::Nn { metric, data, queries } => {
            let metric: Metric = metric.parse()?;
            let answers = if metric == Metric::FrechetLinear {
                let index = nn_build(Dataset::Curves(io::load_curve_set(data)?), metric)?;
                io::load_curve_set(queries)?
                    .iter()
                    .map(|c| nn_query(&index, Query::Curve(c)))
                    .collect::<finegrain::Result<Vec<_>>>()?
            } else {
                let index = nn_build(Dataset::Points(io::load_points(data)?), metric)?;
                io::load_points(queries)?
                    .iter()
                    .map(|p| nn_query(&index, Query::Point(p)))
                    .collect::<finegrain::Result<Vec<_>>>()?
            };
            if json {
                let rows: Vec<_> = answers
                    .iter()
                    .map(|(i, d)| json!({ "index": i + 1, "sq_value": d.to_string() }))
                    .collect();
                writeln!(w, "{}", serde_json::Value::Array(rows))?;
            } else {
                for (k, (i, d)) in answers.iter().enumerate() {
                    writeln!(w, "{} {} {}", k + 1, i + 1, d)?;
                }
            }
        }
    }
    w.flush()?;
    Ok(0)
}

fn bcp_line(w: &mut dyn Write, json: bool, ip: usize, iq: usize, v: &str) -> Result<()> {
    if json {
        writeln!(w, "{}", json!({ "index_p": ip + 1, "index_q": iq + 1, "sq_value": v }))?;
    } else {
        writeln!(w, "p={} q={} sq_value {v}", ip + 1, iq + 1)?;
    }
    Ok(())
}

fn cmd_reduce(cli: &Cli, args: &ReduceArgs) -> Result<u8> {
    let Some(prefix) = cli.out.as_deref() else {
        bail!("reduce writes several files; pass --out PREFIX");
    };
    let path = |suffix: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(suffix);
        PathBuf::from(s)
    };
    let kind: ReductionKind = args.kind.parse()?;
    let inst = io::load_instance(&args.instance)?;
    let (tau_sq, files) = match kind {
        ReductionKind::EuclidEmbed | ReductionKind::OvToBcp | ReductionKind::UnbalancedNn => {
            let e = embed_euclid(&inst);
            let (fp, fq) = (path(".P.points"), path(".Q.points"));
            io::save_points(&fp, &e.p)?;
            io::save_points(&fq, &e.q)?;
            (e.tau_sq, vec![fp, fq])
        }
        ReductionKind::FrechetEmbed => {
            let e = embed_frechet(&inst);
            let (fp, fq) = (path(".P.curves"), path(".Q.curves"));
            io::save_curve_set(&fp, &e.p)?;
            io::save_curve_set(&fq, &e.q)?;
            (e.tau_sq, vec![fp, fq])
        }
        ReductionKind::OvToFrechet => {
            let cfg = validated(args.delta.as_deref(), cli.seed)?;
            let g = or_gadget(&inst, &cfg)?;
            let (fp, fs) = (path(".pi.curve"), path(".sigma.curve"));
            io::save_curve(&fp, &g.pi)?;
            io::save_curve(&fs, &g.sigma)?;
            (g.tau_sq, vec![fp, fs])
        }
    };
    let files: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
    if cli.format == Format::Json {
        println!("{}", json!({ "kind": kind, "tau_sq": tau_sq.to_string(), "files": files }));
    } else {
        println!("tau_sq {tau_sq}");
        for f in files {
            println!("{f}");
        }
    }
    Ok(0)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<u8> {
    let kinds = ReductionKind::parse_list(&args.kinds)?;
    let gadget = if kinds.contains(&ReductionKind::OvToFrechet) {
        validated(args.delta.as_deref(), cli.seed)?
    } else {
        GadgetConfig::default()
    };
    let mut ctx = VerifyContext::new(gadget);
    ctx.corrupt = args.corrupt;
    let opts = SweepOptions {
        kinds,
        trials: args.trials,
        max_n: args.max_n,
        max_d: args.max_d,
        seed: cli.seed,
        exhaustive: !args.no_exhaustive,
    };
    let summary = run_sweep(&opts, &ctx)?;

    let mut w = output(cli.out.as_deref())?;
    if cli.format == Format::Json {
        serde_json::to_writer_pretty(&mut w, &summary)?;
        writeln!(w)?;
    } else {
        writeln!(w, "{:<15} {:>7} {:>7} {:>9} {:>9}", "kind", "total", "agreed", "positive", "disagree")?;
        for k in &summary.kinds {
            writeln!(
                w,
                "{:<15} {:>7} {:>7} {:>9} {:>9}",
                k.kind.name(),
                k.total,
                k.agreed,
                k.positives,
                k.disagreements.len()
            )?;
        }
        for k in &summary.kinds {
            for r in k.disagreements.iter().take(5) {
                writeln!(
                    w,
                    "disagreement {} {}: oracle={} reduced={}",
                    r.kind.name(),
                    r.instance_id,
                    r.oracle_answer,
                    r.reduced_answer
                )?;
            }
        }
    }
    w.flush()?;
    Ok(summary.exit_code() as u8)
}

fn cmd_bench(cli: &Cli, args: &BenchArgs) -> Result<u8> {
    let opts = BenchOptions {
        problem: args.problem.parse::<BenchProblem>()?,
        sizes: args.sizes.clone(),
        repeats: args.repeats,
        d: args.d,
        seed: cli.seed,
    };
    let mut wtr = bench::csv_writer(output(cli.out.as_deref())?);
    bench::write_header(&mut wtr)?;
    bench::run_bench(&opts, |rec| {
        wtr.write_record([
            rec.problem.clone(),
            rec.n.to_string(),
            rec.d.to_string(),
            rec.seed.to_string(),
            rec.repeat.to_string(),
            rec.wall_ns.to_string(),
            rec.answer.clone(),
        ])?;
        wtr.flush()?;
        Ok(())
    })?;
    wtr.flush()?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Cmd::Gen(a) => cmd_gen(cli, a),
        Cmd::Solve(c) => cmd_solve(cli, c),
        Cmd::Reduce(a) => cmd_reduce(cli, a),
        Cmd::Verify(a) => cmd_verify(cli, a),
        Cmd::Bench(a) => cmd_bench(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
