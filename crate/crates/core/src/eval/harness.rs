use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use super::policy::Policy;
use super::stats::EpisodeStats;
use super::EvalError;
use crate::config::BalanceConfig;
use crate::env::record::EpisodeRecord;
use crate::env::Env;

/// Default training budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub run_seed: u64,
    pub budget_steps: u64,
    /// Record every k-th episode (with images) into `record_dir`.
    pub record_every: Option<u64>,
    pub record_dir: Option<PathBuf>,
}

impl RunOptions {
    pub fn new(run_seed: u64, budget_steps: u64) -> Self {
        Self {
            run_seed,
            budget_steps,
            record_every: None,
            record_dir: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub stats: Vec<EpisodeStats>,
    pub steps: u64,
    pub recordings: Vec<PathBuf>,
    /// Privileged info records built during the run. Always 0: the harness
    /// never hands info to a policy.
    pub info_reads: u64,
}

/// `ceil(return)` for a return given in tenths.
pub fn ceil_tenths(tenths: i64) -> i64 {
    (tenths + 9).div_euclid(10)
}

/// Runs whole episodes until at least `budget_steps` steps have been taken,
/// finishing the episode in flight. Each finished episode is written to
/// `sink` as one JSON line.
pub fn run_policy(
    policy: &mut dyn Policy,
    config: Arc<BalanceConfig>,
    opts: &RunOptions,
    sink: &mut dyn Write,
) -> Result<RunOutcome, EvalError> {
    if opts.budget_steps == 0 {
        return Err(EvalError::EmptyInput);
    }
    let config_hash = config.content_hash();
    let mut env = Env::with_config(config);
    env.set_info_enabled(false);
    let mut steps = 0u64;
    let mut stats = Vec::new();
    let mut recordings = Vec::new();
    let mut episode_index = 0u64;

    while steps < opts.budget_steps {
        let mut observation = Some(env.reset(opts.run_seed, episode_index)?);
        let episode_seed = env.episode().expect("reset sets episode").episode_seed;
        policy.begin_episode(episode_seed);
        let record_this = match (opts.record_every, &opts.record_dir) {
            (Some(k), Some(_)) if k > 0 => episode_index % k == 0,
            _ => false,
        };
        let render = record_this || policy.needs_observation();
        let mut record =
            record_this.then(|| EpisodeRecord::new(opts.run_seed, episode_index, config_hash.clone(), true));

        loop {
            let action = policy.act(observation.as_ref());
            let done = if render {
                let r = env.step(action)?;
                if let Some(rec) = &mut record {
                    rec.push(action as u8, r.reward, r.done, Some(&r.observation));
                }
                observation = Some(r.observation);
                r.done
            } else {
                observation = None;
                env.step_fast(action)?.done
            };
            if done {
                break;
            }
        }

        let length = env.steps();
        let distinct = env.achievements().distinct() as i64;
        if ceil_tenths(env.return_tenths()) != distinct {
            return Err(EvalError::Invariant(format!(
                "episode {episode_index}: return {} but {distinct} achievements",
                env.episode_return()
            )));
        }
        let s = EpisodeStats::new(episode_index, length, env.episode_return(), env.achievements());
        writeln!(sink, "{}", s.to_json_line())?;
        stats.push(s);
        if let (Some(rec), Some(dir)) = (record, &opts.record_dir) {
            recordings.push(rec.save(dir)?);
        }
        steps += length as u64;
        episode_index += 1;
    }
    sink.flush()?;
    Ok(RunOutcome {
        stats,
        steps,
        recordings,
        info_reads: env.info_reads(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_of_tenths() {
        assert_eq!(ceil_tenths(0), 0);
        assert_eq!(ceil_tenths(1), 1);
        assert_eq!(ceil_tenths(10), 1);
        assert_eq!(ceil_tenths(11), 2);
        assert_eq!(ceil_tenths(-9), 0);
        assert_eq!(ceil_tenths(-10), -1);
        assert_eq!(ceil_tenths(21), 3);
    }
}
