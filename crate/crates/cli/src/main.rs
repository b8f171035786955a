//! `craftbench`: run policies, score logs, inspect worlds and verify records.
//!
//! Exit codes: 0 success, 1 invariant violation (ceiling check, replay
//! divergence, incomplete golden plan), 2 bad arguments or unusable input.

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::Rng;
use serde_json::json;

use craftbench::env::record::EpisodeRecord;
use craftbench::env::replay::{replay_episode, ReplayError};
use craftbench::eval::golden::plan_golden;
use craftbench::eval::report::{score_table, write_report, MethodRuns};
use craftbench::eval::stats::read_stats;
use craftbench::eval::{aggregate_runs, run_policy, summarize, EvalError, Policy, RandomPolicy, RunOptions, ScriptPolicy};
use craftbench::render::{render_full_map, TextureAtlas};
use craftbench::worldgen::{derive_episode_seed, generate_world, Stream};
use craftbench::{Achievement, BalanceConfig, Env};

#[derive(Parser)]
#[command(name = "craftbench", version, about = "Deterministic Crafter benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a policy for a step budget and log per-episode stats.
    Run(RunArgs),
    /// Score one or more run directories and draw the report charts.
    Score(ScoreArgs),
    /// Render a generated map and dump its semantic grid.
    Gen(GenArgs),
    /// Re-simulate a recorded episode and verify it bit for bit.
    Replay(ReplayArgs),
    /// Author a golden action script with the privileged planner.
    Script(ScriptArgs),
    /// Measure env throughput under a random policy.
    Bench(BenchArgs),
}

#[derive(Clone, Debug)]
enum PolicySpec {
    Random,
    Script(PathBuf),
}

fn parse_policy(s: &str) -> Result<PolicySpec, String> {
    match s.split_once(':') {
        None if s == "random" => Ok(PolicySpec::Random),
        Some(("script", path)) if !path.is_empty() => Ok(PolicySpec::Script(PathBuf::from(path))),
        _ => Err(format!("expected `random` or `script:<path>`, got `{s}`")),
    }
}

#[derive(Args)]
struct RunArgs {
    /// `random` or `script:<path>` (text script or .crtr record).
    #[arg(long, value_parser = parse_policy)]
    policy: PolicySpec,
    /// Run seed; repeat to run several seeds in parallel.
    #[arg(long = "seed", required = true, num_args = 1..)]
    seeds: Vec<u64>,
    #[arg(long, default_value_t = craftbench::eval::DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Record every k-th episode with images.
    #[arg(long = "record-video-every", value_parser = clap::value_parser!(u64).range(1..))]
    record_every: Option<u64>,
}

#[derive(Args)]
struct ScoreArgs {
    /// Run directories, one per method.
    #[arg(long = "in", required = true, num_args = 1..)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    episode: u64,
    #[arg(long)]
    config: Option<PathBuf>,
    /// PNG path; the semantic grid goes next to it as JSON.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReplayArgs {
    #[arg(long)]
    episode: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ScriptArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    episode: u64,
    #[arg(long, default_value_t = 10_000)]
    max_steps: u32,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 100_000)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip rendering observations.
    #[arg(long)]
    no_render: bool,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Invariant(anyhow::Error),
    Input(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e = e.into();
        let invariant = matches!(e.downcast_ref::<EvalError>(), Some(EvalError::Invariant(_)))
            || matches!(
                e.downcast_ref::<ReplayError>(),
                Some(ReplayError::Diverged { .. } | ReplayError::ConfigMismatch { .. })
            );
        if invariant {
            Failure::Invariant(e)
        } else {
            Failure::Input(e)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Score(a) => cmd_score(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Replay(a) => cmd_replay(a),
        Command::Script(a) => cmd_script(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(e)) => {
            eprintln!("invariant violated: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<Arc<BalanceConfig>> {
    let config = match path {
        Some(p) => BalanceConfig::load(p).with_context(|| format!("loading config {}", p.display()))?,
        None => BalanceConfig::default(),
    };
    Ok(Arc::new(config))
}

fn make_policy(spec: &PolicySpec) -> Result<Box<dyn Policy + Send>> {
    Ok(match spec {
        PolicySpec::Random => Box::new(RandomPolicy::new()),
        PolicySpec::Script(path) => {
            Box::new(ScriptPolicy::load(path).with_context(|| format!("loading script {}", path.display()))?)
        }
    })
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// One seed of `run`: `<out>/seed-<seed>/{stats.jsonl, summary.json, *.crtr}`.
fn run_seed(
    spec: &PolicySpec,
    config: Arc<BalanceConfig>,
    seed: u64,
    args: &RunArgs,
) -> Result<craftbench::eval::RunSummary, Failure> {
    let dir = args.out.join(format!("seed-{seed}"));
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut policy = make_policy(spec)?;
    let mut opts = RunOptions::new(seed, args.steps);
    opts.record_every = args.record_every;
    opts.record_dir = args.record_every.map(|_| dir.clone());
    let file = fs::File::create(dir.join("stats.jsonl"))?;
    let mut sink = BufWriter::new(file);
    let outcome = run_policy(policy.as_mut(), config, &opts, &mut sink)?;
    if outcome.info_reads != 0 {
        return Err(Failure::Invariant(anyhow::anyhow!("policy run built {} info records", outcome.info_reads)));
    }
    let summary = summarize(seed, &outcome.stats)?;
    write_json(&dir.join("summary.json"), &serde_json::to_value(&summary)?)?;
    Ok(summary)
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    let config = load_config(&args.config)?;
    make_policy(&args.policy)?;
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = args
            .seeds
            .iter()
            .map(|&seed| {
                let config = Arc::clone(&config);
                let args = &args;
                scope.spawn(move || run_seed(&args.policy, config, seed, args))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut scores = Vec::new();
    for r in results {
        let s = r?;
        println!(
            "seed {}: {} episodes, {} steps, score {:.2}, mean return {:.2}",
            s.seed, s.episodes, s.steps, s.score, s.mean_return
        );
        scores.push(s.score);
    }
    if scores.len() > 1 {
        let (mean, stderr) = aggregate_runs(&scores)?;
        println!("score {mean:.2} ± {stderr:.2} over {} seeds", scores.len());
    }
    Ok(())
}

/// Stats logs under a run directory: its own `stats.jsonl` and those of
/// its immediate subdirectories, sorted by path.
fn find_logs(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut logs = Vec::new();
    let own = dir.join("stats.jsonl");
    if own.is_file() {
        logs.push(own);
    }
    let entries = fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))?;
    for entry in entries {
        let log = entry?.path().join("stats.jsonl");
        if log.is_file() {
            logs.push(log);
        }
    }
    logs.sort();
    if logs.is_empty() {
        bail!("no stats.jsonl under {}", dir.display());
    }
    Ok(logs)
}

fn seed_of(log: &Path, fallback: u64) -> u64 {
    log.parent()
        .and_then(|d| d.file_name())
        .and_then(|n| n.to_str())
        .and_then(|n| n.strip_prefix("seed-"))
        .and_then(|n| n.parse().ok())
        .unwrap_or(fallback)
}

fn cmd_score(args: ScoreArgs) -> Result<(), Failure> {
    let mut methods = Vec::new();
    let mut curves = Vec::new();
    for input in &args.inputs {
        let label = input
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| input.display().to_string());
        let mut runs = Vec::new();
        for (i, log) in find_logs(input)?.iter().enumerate() {
            let stats = read_stats(log).with_context(|| format!("reading {}", log.display()))?;
            runs.push(summarize(seed_of(log, i as u64), &stats)?);
            if i == 0 {
                curves.push((label.clone(), stats));
            }
        }
        methods.push(MethodRuns { label, runs });
    }
    write_report(&methods, &curves, &args.out)?;
    let mut summary = Vec::new();
    for m in &methods {
        let (mean, stderr) = m.score()?;
        summary.push(json!({
            "label": m.label,
            "score": mean,
            "stderr": stderr,
            "runs": m.runs,
        }));
    }
    write_json(&args.out.join("summary.json"), &json!(summary))?;
    print!("{}", score_table(&methods)?);
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let config = load_config(&args.config)?;
    let episode_seed = derive_episode_seed(args.seed, args.episode);
    let world = generate_world(episode_seed, &config)?;
    let grid = &world.grid;
    render_full_map(grid, TextureAtlas::shared())
        .save_png(&args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;
    let semantic: Vec<Vec<u8>> = grid
        .semantic()
        .chunks(craftbench::world::WORLD_SIZE as usize)
        .map(<[u8]>::to_vec)
        .collect();
    let json_path = args.out.with_extension("json");
    write_json(
        &json_path,
        &json!({
            "run_seed": args.seed,
            "episode_index": args.episode,
            "episode_seed": episode_seed,
            "rerolls": world.rerolls,
            "spawn": [grid.spawn_point.x, grid.spawn_point.y],
            "semantic": semantic,
        }),
    )?;
    println!("wrote {} and {}", args.out.display(), json_path.display());
    Ok(())
}

fn cmd_replay(args: ReplayArgs) -> Result<(), Failure> {
    let config = load_config(&args.config)?;
    let record = EpisodeRecord::load(&args.episode).with_context(|| format!("loading {}", args.episode.display()))?;
    let report = replay_episode(&record, config)?;
    fs::create_dir_all(&args.out)?;
    if let Some(last) = record.len().checked_sub(1).and_then(|t| record.image(t)) {
        let obs = craftbench::render::Observation::from_raw(last.to_vec()).context("bad image size")?;
        obs.to_image().upscale(4).save_png(args.out.join("final.png"))?;
    }
    let unlocked: Vec<&str> = Achievement::ALL
        .iter()
        .filter(|a| report.achievements.is_unlocked(**a))
        .map(|a| a.name())
        .collect();
    write_json(
        &args.out.join("replay.json"),
        &json!({
            "episode": args.episode.display().to_string(),
            "run_seed": record.run_seed,
            "episode_index": record.episode_index,
            "steps": report.steps,
            "return": report.episode_return,
            "achievements": unlocked,
            "images_verified": record.has_images(),
            "verified": true,
        }),
    )?;
    println!(
        "verified {} steps, return {:.1}, {} achievements",
        report.steps,
        report.episode_return,
        unlocked.len()
    );
    Ok(())
}

fn cmd_script(args: ScriptArgs) -> Result<(), Failure> {
    let config = load_config(&args.config)?;
    let plan = plan_golden(config, args.seed, args.episode, args.max_steps)?;
    let missing: Vec<&str> = Achievement::ALL
        .iter()
        .filter(|a| !plan.achievements.is_unlocked(**a))
        .map(|a| a.name())
        .collect();
    if !missing.is_empty() {
        return Err(Failure::Invariant(anyhow::anyhow!(
            "plan for seed {} episode {} misses {}",
            args.seed,
            args.episode,
            missing.join(", ")
        )));
    }
    let mut text = format!(
        "# golden playthrough: run seed {}, episode {}, {} actions\n",
        args.seed,
        args.episode,
        plan.actions.len()
    );
    text.push_str(&ScriptPolicy::new(plan.actions).to_text());
    fs::write(&args.out, text).with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let config = load_config(&args.config)?;
    let mut env = Env::with_config(config);
    env.set_info_enabled(false);
    let mut rng = Stream::Policy.rng(args.seed);
    let mut episode = 0;
    env.reset(args.seed, episode)?;
    let start = Instant::now();
    for _ in 0..args.steps {
        let action = rng.gen_range(0..craftbench::sim::NUM_ACTIONS);
        let done = if args.no_render {
            env.step_fast(action)?.done
        } else {
            env.step(action)?.done
        };
        if done {
            episode += 1;
            env.reset(args.seed, episode)?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    println!(
        "{} steps in {secs:.2} s: {:.0} steps/s ({})",
        args.steps,
        args.steps as f64 / secs,
        if args.no_render { "no render" } else { "with render" }
    );
    Ok(())
}
