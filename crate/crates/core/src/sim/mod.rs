//! Per-tick simulation of one world.
//!
//! A tick runs five phases in a fixed order:
//!
//! 1. the player action ([`WorldState::apply_action`]),
//! 2. creatures, arrows and plants ([`WorldState::tick_entities`]),
//! 3. player vitals ([`WorldState::tick_vitals`]),
//! 4. population balancing ([`WorldState::balance_spawns`]),
//! 5. the day/night clock ([`WorldState::advance_daylight`]).
//!
//! Randomness comes from three per-episode streams (interaction, creatures,
//! spawning) so that each phase's draws are independent of the others.

mod action;
mod creatures;
mod daylight;
mod entity;
mod interact;
mod inventory;
mod spawn;
mod vitals;

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::config::BalanceConfig;
use crate::world::{Dir, Material, Pos, WorldGrid};
use crate::worldgen::{GeneratedWorld, Stream};

pub use action::{Action, NUM_ACTIONS};
pub use daylight::Daylight;
pub use entity::{Creature, CreatureKind, EntityStore, Occupant};
pub use inventory::{Inventory, Item, Vitals, MAX_LEVEL};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SimError {
    #[error("action index {0} outside 0..17")]
    InvalidActionIndex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DamageSource {
    Zombie,
    Arrow,
    Lava,
    Deprivation,
}

/// Semantic outcome of one tick, consumed by achievement tracking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Collected(Item),
    Drank,
    /// Food eaten: a defeated cow or a ripe plant.
    Ate(CreatureKind),
    Defeated(CreatureKind),
    Placed(Material),
    Made(Item),
    WokeUp,
    Damaged { source: DamageSource, amount: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Player {
    pub pos: Pos,
    pub facing: Dir,
    pub vitals: Vitals,
    pub inventory: Inventory,
    pub sleeping: bool,
}

impl Player {
    pub fn new(pos: Pos) -> Self {
        Self {
            pos,
            facing: Dir::South,
            vitals: Vitals::default(),
            inventory: Inventory::default(),
            sleeping: false,
        }
    }

    pub fn is_alive(&self) -> bool {
        self.vitals.health > 0
    }

    /// Cell in front of the player.
    pub fn target(&self) -> Pos {
        self.pos.step(self.facing)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct SimRngs {
    pub interaction: ChaCha8Rng,
    pub creatures: ChaCha8Rng,
    pub spawning: ChaCha8Rng,
}

impl SimRngs {
    fn new(episode_seed: u64) -> Self {
        Self {
            interaction: Stream::Interaction.rng(episode_seed),
            creatures: Stream::Creatures.rng(episode_seed),
            spawning: Stream::Spawning.rng(episode_seed),
        }
    }
}

/// Health change of one tick, split by phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TickReport {
    pub health_delta: i32,
    pub entity_damage: u32,
    pub vitals_delta: i32,
}

/// The complete simulation state of one episode.
#[derive(Clone, Debug)]
pub struct WorldState {
    pub(crate) config: Arc<BalanceConfig>,
    pub(crate) grid: WorldGrid,
    pub(crate) entities: EntityStore,
    pub(crate) player: Player,
    pub(crate) daylight: Daylight,
    pub(crate) tick: u32,
    pub(crate) rng: SimRngs,
    pub(crate) events: Vec<Event>,
}

impl WorldState {
    /// Builds the initial state from a generated world.
    pub fn new(world: GeneratedWorld, config: Arc<BalanceConfig>, episode_seed: u64) -> Self {
        let GeneratedWorld { grid, creatures, .. } = world;
        let mut state = Self::from_grid(grid, config, episode_seed);
        for (kind, pos) in creatures {
            state.spawn_creature(kind, pos);
        }
        state
    }

    /// A state over an arbitrary grid with no creatures; the player stands on
    /// the grid's spawn point. Used for scripted micro-worlds.
    pub fn from_grid(grid: WorldGrid, config: Arc<BalanceConfig>, episode_seed: u64) -> Self {
        let spawn = grid.spawn_point;
        let mut entities = EntityStore::default();
        entities.place_player(None, spawn);
        let daylight = Daylight::new(config.day_length, config.night_start());
        Self {
            grid,
            entities,
            player: Player::new(spawn),
            daylight,
            tick: 0,
            rng: SimRngs::new(episode_seed),
            events: Vec::with_capacity(8),
            config,
        }
    }

    pub fn config(&self) -> &BalanceConfig {
        &self.config
    }

    pub fn grid(&self) -> &WorldGrid {
        &self.grid
    }

    pub fn grid_mut(&mut self) -> &mut WorldGrid {
        &mut self.grid
    }

    pub fn player(&self) -> &Player {
        &self.player
    }

    /// Direct access for scripted scenarios. Moving the player must go
    /// through [`WorldState::teleport_player`] to keep occupancy consistent.
    pub fn player_mut(&mut self) -> &mut Player {
        &mut self.player
    }

    pub fn teleport_player(&mut self, to: Pos) {
        let from = self.player.pos;
        if from != to {
            self.entities.place_player(Some(from), to);
            self.player.pos = to;
        }
    }

    pub fn entities(&self) -> &EntityStore {
        &self.entities
    }

    pub fn entities_mut(&mut self) -> &mut EntityStore {
        &mut self.entities
    }

    pub fn daylight(&self) -> &Daylight {
        &self.daylight
    }

    pub fn daylight_mut(&mut self) -> &mut Daylight {
        &mut self.daylight
    }

    /// Ticks simulated so far.
    pub fn tick(&self) -> u32 {
        self.tick
    }

    /// Events emitted by the most recent tick.
    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Adds a creature with its configured starting health. Returns `None`
    /// when the cell is occupied or outside the map.
    pub fn spawn_creature(&mut self, kind: CreatureKind, pos: Pos) -> Option<usize> {
        if !pos.in_bounds() || !self.entities.is_free(pos) {
            return None;
        }
        let health = match kind {
            CreatureKind::Cow => self.config.cow_health,
            CreatureKind::Zombie => self.config.zombie_health,
            CreatureKind::Skeleton => self.config.skeleton_health,
            CreatureKind::Arrow | CreatureKind::Plant => 1,
        } as i32;
        Some(self.entities.insert(Creature::new(kind, pos, health)))
    }

    pub(crate) fn hurt_player(&mut self, amount: u32, source: DamageSource) -> u32 {
        let vitals = &mut self.player.vitals;
        let dealt = amount.min(vitals.health as u32);
        vitals.health -= dealt as u8;
        if dealt > 0 {
            self.events.push(Event::Damaged {
                source,
                amount: dealt as u8,
            });
        }
        dealt
    }

    /// Runs one full tick in the fixed phase order.
    pub fn step(&mut self, action: Action) -> TickReport {
        self.events.clear();
        let health_before = self.player.vitals.health as i32;
        self.apply_action(action);
        let entity_damage = self.tick_entities();
        let vitals_delta = self.tick_vitals();
        self.balance_spawns();
        self.advance_daylight();
        self.tick += 1;
        TickReport {
            health_delta: self.player.vitals.health as i32 - health_before,
            entity_damage,
            vitals_delta,
        }
    }

    pub fn advance_daylight(&mut self) {
        self.daylight.advance();
    }

    /// Creature populations the spawner currently aims for, as
    /// `(cows, zombies, skeletons)`.
    pub fn population_targets(&self) -> (usize, usize, usize) {
        let c = &self.config;
        let zombies = if self.daylight.is_night() {
            c.zombie_target * c.night_zombie_multiplier
        } else {
            c.zombie_target
        };
        (
            c.cow_target as usize,
            zombies as usize,
            c.skeleton_target as usize,
        )
    }

    /// Order-sensitive fingerprint of the full simulation state, including
    /// random stream positions. Intended for determinism checks.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.grid.cells().hash(&mut h);
        self.player.hash(&mut h);
        for (slot, c) in self.entities.iter() {
            slot.hash(&mut h);
            c.hash(&mut h);
        }
        self.daylight.hash(&mut h);
        self.tick.hash(&mut h);
        self.rng.interaction.get_word_pos().hash(&mut h);
        self.rng.creatures.get_word_pos().hash(&mut h);
        self.rng.spawning.get_word_pos().hash(&mut h);
        h.finish()
    }
}
