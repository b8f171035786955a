//! Procedural generation of the per-episode world.
//!
//! Generation is layered. A start area around the map center is forced to
//! grassland. Two low-frequency noise fields then split the rest of the map
//! into lakes (with sandy shores), mountains (with caves, tunnels, ores and
//! lava) and grassland (with forests). Inside each region, objects appear
//! with a fixed per-cell probability drawn from the worldgen stream in
//! row-major order.

pub mod noise;
pub mod seed;

use std::collections::VecDeque;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::config::BalanceConfig;
use crate::sim::CreatureKind;
use crate::world::{Material, Pos, WorldGrid, WORLD_CELLS, WORLD_SIZE};

pub use noise::{noise2, OpenSimplex};
pub use seed::{derive_episode_seed, mix64, Stream, GOLDEN_GAMMA};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WorldgenError {
    #[error("no viable world after {attempts} attempts; the balance config is degenerate")]
    RetryExhausted { attempts: u32 },
}

/// Output of generation: the grid plus the creatures placed at start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedWorld {
    pub grid: WorldGrid,
    pub creatures: Vec<(CreatureKind, Pos)>,
    /// Re-rolls consumed before a viable world came up (0 = first try).
    pub rerolls: u32,
}

/// Materials every world must contain somewhere in its interior so that all
/// achievements stay attainable.
pub const REQUIRED_MATERIALS: [Material; 6] = [
    Material::Water,
    Material::Tree,
    Material::Stone,
    Material::Coal,
    Material::Iron,
    Material::Diamond,
];

enum Channel {
    Mountain = 0,
    Coal = 1,
    Iron = 2,
    Water = 3,
    Sand = 4,
    Forest = 5,
    Cave = 6,
    Tunnel = 7,
    Start = 8,
}

struct Fields {
    channels: Vec<OpenSimplex>,
}

impl Fields {
    fn new(seed: u64) -> Self {
        let channels = (0..9u64)
            .map(|c| OpenSimplex::new(mix64(seed ^ (c + 1).wrapping_mul(GOLDEN_GAMMA))))
            .collect();
        Self { channels }
    }

    /// Weighted sum of octaves `(size, weight)` sampled at `(x / size, y / size)`.
    fn sample(&self, channel: Channel, x: f64, y: f64, octaves: &[(f64, f64)], normalize: bool) -> f64 {
        let noise = &self.channels[channel as usize];
        let mut value = 0.0;
        let mut total = 0.0;
        for &(size, weight) in octaves {
            value += weight * noise.noise2(x / size, y / size);
            total += weight;
        }
        if normalize {
            value / total
        } else {
            value
        }
    }
}

/// Smooth squashing of the reals onto (0, 1) with `squash(0) = 0.5`, using
/// only exactly rounded operations.
fn squash(t: f64) -> f64 {
    0.5 + 0.5 * t / (1.0 + t.abs())
}

/// Generates the world for one episode, re-rolling with derived seeds until
/// the result is viable.
pub fn generate_world(
    episode_seed: u64,
    config: &BalanceConfig,
) -> Result<GeneratedWorld, WorldgenError> {
    for attempt in 0..config.worldgen_max_attempts {
        let seed = if attempt == 0 {
            episode_seed
        } else {
            mix64(episode_seed ^ (attempt as u64).wrapping_mul(GOLDEN_GAMMA))
        };
        let mut world = generate_candidate(seed, config);
        if is_viable(&world.grid) {
            world.rerolls = attempt;
            return Ok(world);
        }
    }
    Err(WorldgenError::RetryExhausted {
        attempts: config.worldgen_max_attempts,
    })
}

/// One generation pass without the viability check.
pub fn generate_candidate(seed: u64, config: &BalanceConfig) -> GeneratedWorld {
    let mut rng = Stream::Worldgen.rng(seed);
    let fields = Fields::new(Stream::Worldgen.seed(seed));
    let mut grid = WorldGrid::filled(Material::Grass);
    let center = Pos::new(WORLD_SIZE / 2, WORLD_SIZE / 2);

    for y in 0..WORLD_SIZE {
        for x in 0..WORLD_SIZE {
            let pos = Pos::new(x, y);
            let (material, tunnel) = terrain_at(pos, center, &fields, &mut rng, config);
            grid.set(pos, material);
            grid.set_tunnel(pos, tunnel);
        }
    }

    grid.spawn_point = nearest_walkable(&grid, center).unwrap_or(center);
    let creatures = place_creatures(&grid, &mut rng, config);
    GeneratedWorld {
        grid,
        creatures,
        rerolls: 0,
    }
}

fn terrain_at(
    pos: Pos,
    center: Pos,
    fields: &Fields,
    rng: &mut ChaCha8Rng,
    c: &BalanceConfig,
) -> (Material, bool) {
    let (x, y) = (pos.x as f64, pos.y as f64);
    let dx = x - center.x as f64;
    let dy = y - center.y as f64;
    let dist = (dx * dx + dy * dy).sqrt();

    let start_raw =
        c.start_radius - dist + c.start_noise_amp * fields.sample(Channel::Start, x, y, &[(3.0, 1.0)], true);
    let start = squash(start_raw);
    let mut water =
        fields.sample(Channel::Water, x, y, &[(15.0, 1.0), (5.0, 0.15)], false) + c.water_bias;
    water -= 2.0 * start;
    let mut mountain = fields.sample(Channel::Mountain, x, y, &[(15.0, 1.0), (5.0, 0.3)], true);
    mountain -= 4.0 * start + 0.3 * water;

    if start_raw > 0.0 {
        return (Material::Grass, false);
    }
    if mountain > c.mountain_threshold {
        if fields.sample(Channel::Cave, x, y, &[(7.0, 1.0)], true) > c.cave_noise_threshold
            && mountain > c.cave_mountain_threshold
        {
            return (Material::Path, false);
        }
        if fields.sample(Channel::Tunnel, 2.0 * x, y / 5.0, &[(3.0, 1.0)], true) > c.tunnel_threshold {
            return (Material::Path, true);
        }
        if fields.sample(Channel::Tunnel, x / 5.0, 2.0 * y, &[(3.0, 1.0)], true) > c.tunnel_threshold {
            return (Material::Path, true);
        }
        if fields.sample(Channel::Coal, x, y, &[(8.0, 1.0)], true) > c.coal_noise_threshold
            && rng.gen::<f64>() < c.coal_density
        {
            return (Material::Coal, false);
        }
        if fields.sample(Channel::Iron, x, y, &[(6.0, 1.0)], true) > c.iron_noise_threshold
            && rng.gen::<f64>() < c.iron_density
        {
            return (Material::Iron, false);
        }
        if mountain > c.diamond_mountain_threshold && rng.gen::<f64>() < c.diamond_density {
            return (Material::Diamond, false);
        }
        if mountain > c.lava_mountain_threshold
            && fields.sample(Channel::Cave, x, y, &[(5.0, 1.0)], true) > c.lava_noise_threshold
        {
            return (Material::Lava, false);
        }
        return (Material::Stone, false);
    }
    if c.sand_low < water
        && water <= c.sand_high
        && fields.sample(Channel::Sand, x, y, &[(9.0, 1.0)], true) > c.sand_noise_threshold
    {
        return (Material::Sand, false);
    }
    if water > c.water_threshold {
        return (Material::Water, false);
    }
    if fields.sample(Channel::Forest, x, y, &[(7.0, 1.0)], true) > c.forest_noise_threshold
        && rng.gen::<f64>() < c.tree_density
    {
        return (Material::Tree, false);
    }
    (Material::Grass, false)
}

/// Walkable interior cell closest to `target`; ties broken by row, then column.
fn nearest_walkable(grid: &WorldGrid, target: Pos) -> Option<Pos> {
    grid.positions()
        .filter(|p| p.in_interior() && grid.at(*p).is_walkable())
        .min_by_key(|p| {
            let dx = p.x - target.x;
            let dy = p.y - target.y;
            (dx * dx + dy * dy, p.y, p.x)
        })
}

fn place_creatures(
    grid: &WorldGrid,
    rng: &mut ChaCha8Rng,
    c: &BalanceConfig,
) -> Vec<(CreatureKind, Pos)> {
    let spawn = grid.spawn_point;
    let mut out = Vec::new();
    for pos in grid.positions() {
        if !pos.in_interior() || pos == spawn {
            continue;
        }
        let material = grid.at(pos);
        if !material.is_walkable() {
            continue;
        }
        let dx = (pos.x - spawn.x) as f64;
        let dy = (pos.y - spawn.y) as f64;
        let dist = (dx * dx + dy * dy).sqrt();
        if material == Material::Grass && dist > c.cow_min_distance && rng.gen::<f64>() < c.cow_density {
            out.push((CreatureKind::Cow, pos));
        } else if material == Material::Grass
            && dist > c.zombie_min_distance
            && rng.gen::<f64>() < c.zombie_density
        {
            out.push((CreatureKind::Zombie, pos));
        } else if material == Material::Path
            && grid.is_tunnel(pos)
            && rng.gen::<f64>() < c.skeleton_density
        {
            out.push((CreatureKind::Skeleton, pos));
        }
    }
    out
}

/// Every required material is present in the interior and some diamond is
/// reachable from the spawn point.
pub fn is_viable(grid: &WorldGrid) -> bool {
    let mut present = [false; Material::ALL.len()];
    for pos in grid.positions().filter(|p| p.in_interior()) {
        present[grid.at(pos).id() as usize] = true;
    }
    REQUIRED_MATERIALS.iter().all(|m| present[m.id() as usize])
        && grid.at(grid.spawn_point).is_walkable()
        && diamond_reachable(grid)
}

/// Breadth-first search from the spawn point over walkable or mineable cells.
pub fn diamond_reachable(grid: &WorldGrid) -> bool {
    let mut seen = vec![false; WORLD_CELLS];
    let mut queue = VecDeque::new();
    seen[grid.spawn_point.index()] = true;
    queue.push_back(grid.spawn_point);
    while let Some(pos) = queue.pop_front() {
        if grid.at(pos) == Material::Diamond {
            return true;
        }
        for dir in crate::world::Dir::ALL {
            let next = pos.step(dir);
            if !next.in_interior() || seen[next.index()] {
                continue;
            }
            let m = grid.at(next);
            if m.is_walkable() || m.is_mineable() {
                seen[next.index()] = true;
                queue.push_back(next);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let config = BalanceConfig::default();
        let a = generate_world(42, &config).unwrap();
        let b = generate_world(42, &config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn player_placed_materials_never_generated() {
        let config = BalanceConfig::default();
        for seed in 0..20 {
            let world = generate_world(derive_episode_seed(seed, 0), &config).unwrap();
            for m in [Material::Table, Material::Furnace, Material::Sapling] {
                assert_eq!(world.grid.count(m), 0);
            }
        }
    }

    #[test]
    fn spawn_is_walkable_and_free() {
        let config = BalanceConfig::default();
        for seed in 0..20 {
            let world = generate_world(derive_episode_seed(seed, 1), &config).unwrap();
            assert!(world.grid.at(world.grid.spawn_point).is_walkable());
            assert!(world.creatures.iter().all(|(_, p)| *p != world.grid.spawn_point));
        }
    }

    #[test]
    fn creatures_sit_in_their_habitat() {
        let config = BalanceConfig::default();
        for seed in 0..20 {
            let world = generate_world(derive_episode_seed(seed, 2), &config).unwrap();
            for (kind, pos) in &world.creatures {
                let m = world.grid.at(*pos);
                match kind {
                    CreatureKind::Cow | CreatureKind::Zombie => assert_eq!(m, Material::Grass),
                    CreatureKind::Skeleton => {
                        assert_eq!(m, Material::Path);
                        assert!(world.grid.is_tunnel(*pos));
                    }
                    _ => panic!("unexpected initial creature {kind:?}"),
                }
            }
        }
    }

    #[test]
    fn degenerate_config_exhausts_retries() {
        let mut config = BalanceConfig::default();
        config.diamond_density = 0.0;
        config.worldgen_max_attempts = 3;
        assert_eq!(
            generate_world(1, &config),
            Err(WorldgenError::RetryExhausted { attempts: 3 })
        );
    }

    #[test]
    fn squash_is_monotone_and_centered() {
        assert_eq!(squash(0.0), 0.5);
        let mut prev = 0.0;
        for i in -100..=100 {
            let v = squash(i as f64 * 0.1);
            assert!(v > prev && v < 1.0);
            prev = v;
        }
    }
}
