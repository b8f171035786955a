use std::sync::Arc;

use thiserror::Error;

use super::record::EpisodeRecord;
use super::{AchievementSet, Env, EnvError};
use crate::config::BalanceConfig;

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("record was made with config {recorded}, replaying with {current}")]
    ConfigMismatch { recorded: String, current: String },
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error("replay diverged at step {step}: {field} differs")]
    Diverged { step: usize, field: &'static str },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReplayReport {
    pub steps: usize,
    pub episode_return: f64,
    pub achievements: AchievementSet,
}

/// Plays `actions` from a fresh reset, stopping early if the episode ends.
pub fn record_actions(
    config: Arc<BalanceConfig>,
    run_seed: u64,
    episode_index: u64,
    actions: &[u8],
    with_images: bool,
) -> Result<EpisodeRecord, EnvError> {
    let hash = config.content_hash();
    let mut env = Env::with_config(config);
    env.set_info_enabled(false);
    env.reset(run_seed, episode_index)?;
    let mut record = EpisodeRecord::new(run_seed, episode_index, hash, with_images);
    for &a in actions {
        if with_images {
            let r = env.step(a as usize)?;
            record.push(a, r.reward, r.done, Some(&r.observation));
        } else {
            let r = env.step_fast(a as usize)?;
            record.push(a, r.reward, r.done, None);
        }
        if env.is_done() {
            break;
        }
    }
    Ok(record)
}

/// Re-simulates a record and checks every reward, done flag and stored
/// image bit for bit.
pub fn replay_episode(record: &EpisodeRecord, config: Arc<BalanceConfig>) -> Result<ReplayReport, ReplayError> {
    let current = config.content_hash();
    if current != record.config_hash {
        return Err(ReplayError::ConfigMismatch {
            recorded: record.config_hash.clone(),
            current,
        });
    }
    let mut env = Env::with_config(config);
    env.set_info_enabled(false);
    env.reset(record.run_seed, record.episode_index)?;
    for (t, &a) in record.actions.iter().enumerate() {
        let (reward, done) = if record.has_images() {
            let r = env.step(a as usize)?;
            if Some(r.observation.pixels()) != record.image(t) {
                return Err(ReplayError::Diverged { step: t, field: "observation" });
            }
            (r.reward, r.done)
        } else {
            let r = env.step_fast(a as usize)?;
            (r.reward, r.done)
        };
        if reward.to_bits() != record.rewards[t].to_bits() {
            return Err(ReplayError::Diverged { step: t, field: "reward" });
        }
        if done != record.dones[t] {
            return Err(ReplayError::Diverged { step: t, field: "done" });
        }
    }
    Ok(ReplayReport {
        steps: record.len(),
        episode_return: env.episode_return(),
        achievements: *env.achievements(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recorded_episode_replays() {
        let config = Arc::new(BalanceConfig::default());
        let actions: Vec<u8> = (0..200).map(|i| (i * 7 % 17) as u8).collect();
        let rec = record_actions(Arc::clone(&config), 3, 1, &actions, true).unwrap();
        let report = replay_episode(&rec, Arc::clone(&config)).unwrap();
        assert_eq!(report.steps, rec.len());

        let mut tampered = rec.clone();
        tampered.rewards[10] += 1.0;
        assert!(matches!(
            replay_episode(&tampered, Arc::clone(&config)),
            Err(ReplayError::Diverged { step: 10, field: "reward" })
        ));

        let other = BalanceConfig {
            cow_target: 2,
            ..BalanceConfig::default()
        };
        assert!(matches!(
            replay_episode(&rec, Arc::new(other)),
            Err(ReplayError::ConfigMismatch { .. })
        ));
    }
}
