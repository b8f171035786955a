//! Episode lifecycle: reset, step, reward, achievements and privileged info.

mod achievement;
pub mod record;
pub mod replay;

use std::cell::Cell;
use std::collections::BTreeMap;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use achievement::{Achievement, AchievementSet, NUM_ACHIEVEMENTS};

use crate::config::BalanceConfig;
use crate::render::{render_observation, Observation, TextureAtlas};
use crate::sim::{Action, Item, SimError, WorldState, NUM_ACTIONS};
use crate::world::WORLD_SIZE;
use crate::worldgen::{derive_episode_seed, generate_world, Stream, WorldgenError};

/// Episodes are truncated after this many steps.
pub const TIME_LIMIT: u32 = 10_000;

#[derive(Debug, Error)]
pub enum EnvError {
    #[error("action index {0} outside 0..17")]
    InvalidActionIndex(usize),
    #[error("step called on a finished episode")]
    SteppedAfterDone,
    #[error("step called before reset")]
    NotReset,
    #[error(transparent)]
    Worldgen(#[from] WorldgenError),
}

impl From<SimError> for EnvError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::InvalidActionIndex(i) => EnvError::InvalidActionIndex(i),
        }
    }
}

/// `newly_unlocked * 1.0 + health_delta * 0.1`, computed in tenths.
pub fn compute_step_reward(newly_unlocked: u32, health_delta: i32) -> f32 {
    reward_tenths(newly_unlocked, health_delta) as f32 / 10.0
}

fn reward_tenths(newly_unlocked: u32, health_delta: i32) -> i64 {
    10 * newly_unlocked as i64 + health_delta as i64
}

/// Privileged per-step record. Agents must not read it; it exists for
/// debugging, evaluation and tests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Info {
    pub step: u32,
    /// Vitals (`health`, `food`, `drink`, `energy`) and item counts.
    pub inventory: BTreeMap<String, u8>,
    pub achievements: BTreeMap<String, u32>,
    pub player_pos: [i32; 2],
    pub player_facing: String,
    pub sleeping: bool,
    pub daylight: f64,
    pub discount: f32,
    /// Material ids indexed `semantic[y][x]`.
    pub semantic: Vec<Vec<u8>>,
}

impl Info {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("info serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct StepResult {
    pub observation: Observation,
    pub reward: f32,
    pub done: bool,
    /// 0 when the player died this step, 1 otherwise.
    pub discount: f32,
    /// Present when info output is enabled on the environment.
    pub info: Option<Info>,
}

/// Outcome of a step without rendering or info.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FastStep {
    pub reward: f32,
    pub done: bool,
    pub discount: f32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EpisodeId {
    pub run_seed: u64,
    pub episode_index: u64,
    pub episode_seed: u64,
}

pub struct Env {
    config: Arc<BalanceConfig>,
    atlas: &'static TextureAtlas,
    state: Option<WorldState>,
    episode: Option<EpisodeId>,
    achievements: AchievementSet,
    view_noise: ChaCha8Rng,
    observation: Observation,
    steps: u32,
    done: bool,
    discount: f32,
    return_tenths: i64,
    info_enabled: bool,
    info_reads: Cell<u64>,
}

impl Env {
    pub fn new(config: BalanceConfig) -> Self {
        Self::with_config(Arc::new(config))
    }

    pub fn with_config(config: Arc<BalanceConfig>) -> Self {
        Self {
            config,
            atlas: TextureAtlas::shared(),
            state: None,
            episode: None,
            achievements: AchievementSet::new(),
            view_noise: Stream::ViewNoise.rng(0),
            observation: Observation::new(),
            steps: 0,
            done: false,
            discount: 1.0,
            return_tenths: 0,
            info_enabled: true,
            info_reads: Cell::new(0),
        }
    }

    pub fn config(&self) -> &Arc<BalanceConfig> {
        &self.config
    }

    pub fn num_actions(&self) -> usize {
        NUM_ACTIONS
    }

    /// Whether [`step`](Self::step) attaches an [`Info`] to its result.
    pub fn set_info_enabled(&mut self, enabled: bool) {
        self.info_enabled = enabled;
    }

    /// Number of [`Info`] records built so far.
    pub fn info_reads(&self) -> u64 {
        self.info_reads.get()
    }

    /// Starts the episode `episode_index` of run `run_seed` in a freshly
    /// generated world.
    pub fn reset(&mut self, run_seed: u64, episode_index: u64) -> Result<Observation, EnvError> {
        let episode_seed = derive_episode_seed(run_seed, episode_index);
        let world = generate_world(episode_seed, &self.config)?;
        let state = WorldState::new(world, Arc::clone(&self.config), episode_seed);
        self.episode = Some(EpisodeId {
            run_seed,
            episode_index,
            episode_seed,
        });
        Ok(self.start(state, episode_seed))
    }

    /// Starts an episode from a prepared state, e.g. a hand-built test world.
    pub fn reset_to_state(&mut self, state: WorldState, noise_seed: u64) -> Observation {
        self.episode = None;
        self.start(state, noise_seed)
    }

    fn start(&mut self, state: WorldState, noise_seed: u64) -> Observation {
        self.state = Some(state);
        self.view_noise = Stream::ViewNoise.rng(noise_seed);
        self.achievements = AchievementSet::new();
        self.steps = 0;
        self.done = false;
        self.discount = 1.0;
        self.return_tenths = 0;
        self.render()
    }

    /// Renders the current observation. At night this advances the
    /// view-noise stream, so call it once per step for reproducible frames.
    pub fn render(&mut self) -> Observation {
        if let Some(state) = &self.state {
            render_observation(state, self.atlas, &mut self.view_noise, &mut self.observation);
        }
        self.observation.clone()
    }

    pub fn step(&mut self, action: usize) -> Result<StepResult, EnvError> {
        let fast = self.step_fast(action)?;
        let observation = self.render();
        let info = self.info_enabled.then(|| self.info()).flatten();
        Ok(StepResult {
            observation,
            reward: fast.reward,
            done: fast.done,
            discount: fast.discount,
            info,
        })
    }

    /// Advances the simulation without rendering or building info.
    pub fn step_fast(&mut self, action: usize) -> Result<FastStep, EnvError> {
        let action = Action::from_index(action)?;
        if self.done {
            return Err(EnvError::SteppedAfterDone);
        }
        let state = self.state.as_mut().ok_or(EnvError::NotReset)?;
        let health_before = state.player().vitals.health as i32;
        state.step(action);
        let health_delta = state.player().vitals.health as i32 - health_before;

        let mut newly = 0;
        for event in state.events() {
            if let Some(a) = Achievement::from_event(event) {
                if self.achievements.unlock(a) {
                    newly += 1;
                }
            }
        }
        let tenths = reward_tenths(newly, health_delta);
        self.return_tenths += tenths;
        self.steps += 1;

        let dead = !state.player().is_alive();
        self.done = dead || self.steps >= TIME_LIMIT;
        self.discount = if dead { 0.0 } else { 1.0 };
        Ok(FastStep {
            reward: tenths as f32 / 10.0,
            done: self.done,
            discount: self.discount,
        })
    }

    /// Builds the privileged info record for the current state.
    pub fn info(&self) -> Option<Info> {
        let state = self.state.as_ref()?;
        self.info_reads.set(self.info_reads.get() + 1);
        let p = state.player();
        let mut inventory = BTreeMap::new();
        inventory.insert("health".to_string(), p.vitals.health);
        inventory.insert("food".to_string(), p.vitals.food);
        inventory.insert("drink".to_string(), p.vitals.water);
        inventory.insert("energy".to_string(), p.vitals.energy);
        for item in Item::ALL {
            inventory.insert(item.name().to_string(), p.inventory.count(item));
        }
        let sem = state.grid().semantic();
        let semantic = sem.chunks(WORLD_SIZE as usize).map(<[u8]>::to_vec).collect();
        Some(Info {
            step: self.steps,
            inventory,
            achievements: self.achievements.to_map(),
            player_pos: [p.pos.x, p.pos.y],
            player_facing: format!("{:?}", p.facing).to_lowercase(),
            sleeping: p.sleeping,
            daylight: state.daylight().light_level(),
            discount: self.discount,
            semantic,
        })
    }

    pub fn state(&self) -> Option<&WorldState> {
        self.state.as_ref()
    }

    /// Mutable access for test setups. Changing the state mid-episode breaks
    /// replay guarantees.
    pub fn state_mut(&mut self) -> Option<&mut WorldState> {
        self.state.as_mut()
    }

    pub fn episode(&self) -> Option<EpisodeId> {
        self.episode
    }

    pub fn achievements(&self) -> &AchievementSet {
        &self.achievements
    }

    pub fn steps(&self) -> u32 {
        self.steps
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    /// Episode return so far, summed exactly in tenths.
    pub fn episode_return(&self) -> f64 {
        self.return_tenths as f64 / 10.0
    }

    pub fn return_tenths(&self) -> i64 {
        self.return_tenths
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{Material, Pos, WorldGrid};

    #[test]
    fn reward_formula() {
        assert_eq!(compute_step_reward(0, 0), 0.0);
        assert_eq!(compute_step_reward(1, -2), 0.8);
        assert_eq!(compute_step_reward(3, 0), 3.0);
        assert_eq!(compute_step_reward(0, -9), -0.9);
    }

    fn grass_env() -> Env {
        let mut grid = WorldGrid::filled(Material::Grass);
        grid.spawn_point = Pos::new(32, 32);
        let config = Arc::new(BalanceConfig::default());
        let state = WorldState::from_grid(grid, Arc::clone(&config), 1);
        let mut env = Env::with_config(config);
        env.reset_to_state(state, 1);
        env
    }

    #[test]
    fn errors() {
        let mut env = Env::new(BalanceConfig::default());
        assert!(matches!(env.step(0), Err(EnvError::NotReset)));
        let mut env = grass_env();
        assert!(matches!(env.step(17), Err(EnvError::InvalidActionIndex(17))));
        env.state_mut().unwrap().player_mut().vitals.health = 1;
        env.state_mut().unwrap().player_mut().vitals.food = 0;
        env.state_mut().unwrap().player_mut().vitals.degen_clock = 100;
        let r = env.step(0).unwrap();
        assert!(r.done);
        assert_eq!(r.discount, 0.0);
        assert!(matches!(env.step(0), Err(EnvError::SteppedAfterDone)));
    }

    #[test]
    fn info_reflects_state() {
        let mut env = grass_env();
        let info = env.step(0).unwrap().info.unwrap();
        assert_eq!(info.semantic.len(), 64);
        assert!(info.semantic.iter().all(|r| r.len() == 64));
        assert_eq!(info.player_pos, [32, 32]);
        assert_eq!(info.inventory["health"], 9);
        assert_eq!(info.achievements.len(), 22);
        assert_eq!(Info::from_json(&info.to_json()).unwrap(), info);
        assert_eq!(env.info_reads(), 1);
        env.set_info_enabled(false);
        assert!(env.step(0).unwrap().info.is_none());
        assert_eq!(env.info_reads(), 1);
    }

    #[test]
    fn time_limit_truncates() {
        let mut env = grass_env();
        // Keep the player fed so the episode can only end by truncation.
        for i in 0..TIME_LIMIT {
            let v = &mut env.state_mut().unwrap().player_mut().vitals;
            v.food = 9;
            v.water = 9;
            v.energy = 9;
            v.health = 9;
            let r = env.step_fast(0).unwrap();
            assert_eq!(r.done, i + 1 == TIME_LIMIT, "step {i}");
            if r.done {
                assert_eq!(r.discount, 1.0);
            }
        }
    }
}
