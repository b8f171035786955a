use rand::Rng;

use super::{CreatureKind, WorldState};
use crate::world::{Material, Pos, WORLD_SIZE};

/// Half extents of the player's view rectangle (9x7 cells).
pub const VIEW_HALF_WIDTH: i32 = 4;
pub const VIEW_HALF_HEIGHT: i32 = 3;

impl WorldState {
    /// Nudges each population toward its target: below target a creature may
    /// spawn on a random habitat cell outside the view rectangle, above target
    /// a random creature of that kind may despawn if it is far enough away.
    pub fn balance_spawns(&mut self) {
        let (cows, zombies, skeletons) = self.population_targets();
        let c = &self.config;
        let plan = [
            (CreatureKind::Zombie, zombies, c.zombie_spawn_prob),
            (CreatureKind::Skeleton, skeletons, c.skeleton_spawn_prob),
            (CreatureKind::Cow, cows, c.cow_spawn_prob),
        ];
        for (kind, target, spawn_prob) in plan {
            self.balance_kind(kind, target, spawn_prob);
        }
    }

    fn balance_kind(&mut self, kind: CreatureKind, target: usize, spawn_prob: f64) {
        let count = self.entities.count(kind);
        if count < target {
            if self.rng.spawning.gen::<f64>() < spawn_prob {
                self.try_spawn(kind);
            }
        } else if count > target && self.rng.spawning.gen::<f64>() < self.config.despawn_prob {
            let pick = self.rng.spawning.gen_range(0..count);
            let (slot, pos) = self
                .entities
                .iter()
                .filter(|(_, c)| c.kind == kind)
                .nth(pick)
                .map(|(slot, c)| (slot, c.pos))
                .expect("pick < count");
            if pos.chebyshev(self.player.pos) >= self.config.despawn_distance as i32 {
                self.entities.remove(slot);
            }
        }
    }

    fn try_spawn(&mut self, kind: CreatureKind) {
        for _ in 0..self.config.spawn_attempts {
            let pos = Pos::new(
                self.rng.spawning.gen_range(1..WORLD_SIZE - 1),
                self.rng.spawning.gen_range(1..WORLD_SIZE - 1),
            );
            if self.is_spawnable(kind, pos) {
                self.spawn_creature(kind, pos);
                return;
            }
        }
    }

    fn is_spawnable(&self, kind: CreatureKind, pos: Pos) -> bool {
        let habitat = match kind {
            CreatureKind::Skeleton => self.grid.at(pos) == Material::Path && self.grid.is_tunnel(pos),
            _ => self.grid.at(pos) == Material::Grass,
        };
        let player = self.player.pos;
        let outside_view = (pos.x - player.x).abs() > VIEW_HALF_WIDTH
            || (pos.y - player.y).abs() > VIEW_HALF_HEIGHT;
        habitat && outside_view && self.entities.is_free(pos)
    }
}
