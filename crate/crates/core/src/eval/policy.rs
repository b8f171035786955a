use std::path::Path;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::EvalError;
use crate::env::record::EpisodeRecord;
use crate::render::Observation;
use crate::sim::{Action, NUM_ACTIONS};
use crate::worldgen::Stream;

/// An agent choosing one action index per step from the observation alone.
pub trait Policy {
    /// Called before each episode with that episode's seed.
    fn begin_episode(&mut self, _episode_seed: u64) {}

    fn act(&mut self, observation: Option<&Observation>) -> usize;

    /// Whether [`act`](Self::act) looks at the observation. The harness skips
    /// rendering for policies that do not.
    fn needs_observation(&self) -> bool {
        true
    }
}

/// Uniform over all 17 actions, seeded per episode from the policy stream.
#[derive(Clone, Debug)]
pub struct RandomPolicy {
    rng: ChaCha8Rng,
}

impl RandomPolicy {
    pub fn new() -> Self {
        Self {
            rng: Stream::Policy.rng(0),
        }
    }
}

impl Default for RandomPolicy {
    fn default() -> Self {
        Self::new()
    }
}

impl Policy for RandomPolicy {
    fn begin_episode(&mut self, episode_seed: u64) {
        self.rng = Stream::Policy.rng(episode_seed);
    }

    fn act(&mut self, _observation: Option<&Observation>) -> usize {
        self.rng.gen_range(0..NUM_ACTIONS)
    }

    fn needs_observation(&self) -> bool {
        false
    }
}

/// Replays a fixed action list each episode, then issues noops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptPolicy {
    actions: Vec<Action>,
    cursor: usize,
}

impl ScriptPolicy {
    pub fn new(actions: Vec<Action>) -> Self {
        Self { actions, cursor: 0 }
    }

    /// Parses whitespace-separated action names or indices. `#` starts a
    /// comment running to the end of the line.
    pub fn parse(text: &str) -> Result<Self, EvalError> {
        let mut actions = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for token in line.split_whitespace() {
                let action = match token.parse::<usize>() {
                    Ok(n) => Action::from_index(n).ok(),
                    Err(_) => Action::from_name(token),
                };
                actions.push(action.ok_or_else(|| EvalError::Parse {
                    line: i + 1,
                    message: format!("unknown action {token:?}"),
                })?);
            }
        }
        Ok(Self::new(actions))
    }

    /// Loads a text script, or the action stream of a `.crtr` record.
    pub fn load(path: &Path) -> Result<Self, EvalError> {
        if path.extension().is_some_and(|e| e == crate::env::record::EXTENSION) {
            let record = EpisodeRecord::load(path)?;
            let actions = record
                .actions
                .iter()
                .map(|&a| Action::from_index(a as usize).map_err(|e| EvalError::Invariant(e.to_string())))
                .collect::<Result<_, _>>()?;
            return Ok(Self::new(actions));
        }
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    /// One action name per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for a in &self.actions {
            s.push_str(a.name());
            s.push('\n');
        }
        s
    }
}

impl Policy for ScriptPolicy {
    fn begin_episode(&mut self, _episode_seed: u64) {
        self.cursor = 0;
    }

    fn act(&mut self, _observation: Option<&Observation>) -> usize {
        let a = self.actions.get(self.cursor).copied().unwrap_or(Action::Noop);
        self.cursor += 1;
        a.index()
    }

    fn needs_observation(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_policy_is_uniform_and_seeded() {
        let mut p = RandomPolicy::new();
        p.begin_episode(5);
        let a: Vec<usize> = (0..17_000).map(|_| p.act(None)).collect();
        p.begin_episode(5);
        let b: Vec<usize> = (0..17_000).map(|_| p.act(None)).collect();
        assert_eq!(a, b);
        let mut hist = [0usize; NUM_ACTIONS];
        for x in a {
            hist[x] += 1;
        }
        assert!(hist.iter().all(|&h| (800..1200).contains(&h)), "{hist:?}");
    }

    #[test]
    fn script_parse_and_exhaustion() {
        let mut p = ScriptPolicy::parse("move_left 5 # collect\n\nsleep\n").unwrap();
        assert_eq!(p.actions(), &[Action::MoveLeft, Action::Do, Action::Sleep]);
        p.begin_episode(0);
        let got: Vec<usize> = (0..5).map(|_| p.act(None)).collect();
        assert_eq!(got, vec![1, 5, 6, 0, 0]);
        assert_eq!(ScriptPolicy::parse(&p.to_text()).unwrap().actions(), p.actions());
        assert!(ScriptPolicy::parse("jump").is_err());
        assert!(ScriptPolicy::parse("17").is_err());
    }
}
