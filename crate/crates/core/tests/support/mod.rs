//! Helpers shared by the integration tests and the acceptance target.
#![allow(dead_code)]

pub mod bigfloat;

use std::sync::Arc;

use craftbench::sim::{Action, Item};
use craftbench::world::Dir;
use craftbench::{BalanceConfig, Material, Pos, WorldGrid, WorldState};

/// Player position in every micro-world.
pub const HOME: Pos = Pos::new(10, 10);

/// Defaults with all spawning switched off, so micro-worlds stay as built.
pub fn quiet_config() -> BalanceConfig {
    BalanceConfig {
        cow_spawn_prob: 0.0,
        zombie_spawn_prob: 0.0,
        skeleton_spawn_prob: 0.0,
        ..BalanceConfig::default()
    }
}

/// A grass world with the player at [`HOME`] facing east; `setup` edits the
/// grid before the state is built.
pub fn micro_with(config: BalanceConfig, setup: impl FnOnce(&mut WorldGrid)) -> WorldState {
    let mut grid = WorldGrid::filled(Material::Grass);
    grid.spawn_point = HOME;
    setup(&mut grid);
    let mut s = WorldState::from_grid(grid, Arc::new(config), 7);
    s.player_mut().facing = Dir::East;
    s
}

pub fn micro(setup: impl FnOnce(&mut WorldGrid)) -> WorldState {
    micro_with(quiet_config(), setup)
}

/// Cell east of the player.
pub fn east() -> Pos {
    HOME.step(Dir::East)
}

pub fn give(s: &mut WorldState, item: Item, n: u8) {
    s.player_mut().inventory.set(item, n);
}

pub fn inventory(s: &WorldState) -> Vec<u8> {
    Item::ALL.iter().map(|&i| s.player().inventory.count(i)).collect()
}

/// SplitMix64 stream for test inputs, independent of the crate's RNGs.
pub struct TestRng(pub u64);

impl TestRng {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn action(&mut self) -> Action {
        Action::ALL[self.below(Action::ALL.len() as u64) as usize]
    }
}
