//! Deterministic open-world survival benchmark.
//!
//! * [`worldgen`] builds a 64x64 world from a seed.
//! * [`sim`] advances the world one tick per action.
//! * [`render`] rasterizes 64x64x3 observations and debug maps.
//! * [`env`] wraps the simulation into reset/step episodes with rewards,
//!   achievements and episode recording.
//! * [`eval`] runs policies against a step budget and scores them.

pub mod config;
pub mod env;
pub mod eval;
pub mod render;
pub mod sim;
pub mod world;
pub mod worldgen;

pub use config::BalanceConfig;
pub use env::{Achievement, AchievementSet, Env, EnvError, StepResult};
pub use sim::{Action, WorldState};
pub use world::{Material, Pos, WorldGrid};
