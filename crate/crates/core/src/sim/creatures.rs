//! Creature behaviour. Slots are visited in ascending order; each creature
//! sees the effects of creatures updated before it in the same tick.

use rand::Rng;

use super::{Creature, CreatureKind, DamageSource, Occupant, WorldState};
use crate::world::{Dir, Pos};

impl WorldState {
    /// Updates every creature once. Returns the damage dealt to the player.
    pub fn tick_entities(&mut self) -> u32 {
        let mut damage = 0;
        for slot in 0..self.entities.slot_count() {
            let Some(creature) = self.entities.get(slot).copied() else {
                continue;
            };
            damage += match creature.kind {
                CreatureKind::Cow => {
                    self.tick_cow(slot);
                    0
                }
                CreatureKind::Zombie => self.tick_zombie(slot, creature),
                CreatureKind::Skeleton => self.tick_skeleton(slot, creature),
                CreatureKind::Arrow => {
                    if creature.fresh {
                        0
                    } else {
                        self.tick_arrow(slot, creature)
                    }
                }
                CreatureKind::Plant => {
                    let ripe = self.config.plant_ripe_ticks;
                    if let Some(plant) = self.entities.get_mut(slot) {
                        plant.timer = (plant.timer + 1).min(ripe);
                    }
                    0
                }
            };
        }
        for slot in 0..self.entities.slot_count() {
            if let Some(c) = self.entities.get_mut(slot) {
                c.fresh = false;
            }
        }
        damage
    }

    /// Moves a creature one cell if the target is inside, free and part of
    /// its habitat. Updates facing either way.
    fn try_move(&mut self, slot: usize, dir: Dir) -> bool {
        let Some(creature) = self.entities.get_mut(slot) else {
            return false;
        };
        creature.facing = dir;
        let kind = creature.kind;
        let target = creature.pos.step(dir);
        if target.in_interior() && self.entities.is_free(target) && kind.can_enter(self.grid.at(target)) {
            self.entities.move_to(slot, target);
            true
        } else {
            false
        }
    }

    fn random_move(&mut self, slot: usize) {
        let dir = Dir::ALL[self.rng.creatures.gen_range(0..4)];
        self.try_move(slot, dir);
    }

    /// Steps toward `goal` along the longer axis, falling back to the other axis.
    fn move_toward(&mut self, slot: usize, from: Pos, goal: Pos) {
        let (primary, secondary) = Dir::toward(from, goal);
        if let Some(d) = primary {
            if self.try_move(slot, d) {
                return;
            }
        }
        if let Some(d) = secondary {
            self.try_move(slot, d);
        }
    }

    fn tick_cow(&mut self, slot: usize) {
        if self.rng.creatures.gen::<f64>() < self.config.cow_move_prob {
            self.random_move(slot);
        }
    }

    fn tick_zombie(&mut self, slot: usize, zombie: Creature) -> u32 {
        let player = self.player.pos;
        let mut cooldown = zombie.timer.saturating_sub(1);
        let mut dealt = 0;
        if zombie.pos.manhattan(player) == 1 {
            if cooldown == 0 && self.player.is_alive() {
                dealt = self.hurt_player(self.config.zombie_damage, DamageSource::Zombie);
                cooldown = self.config.zombie_cooldown;
            }
        } else if zombie.pos.chebyshev(player) <= self.config.zombie_aggro_radius as i32
            && self.rng.creatures.gen::<f64>() < self.config.zombie_chase_prob
        {
            self.move_toward(slot, zombie.pos, player);
        } else {
            self.random_move(slot);
        }
        if let Some(z) = self.entities.get_mut(slot) {
            z.timer = cooldown;
        }
        dealt
    }

    fn tick_skeleton(&mut self, slot: usize, skeleton: Creature) -> u32 {
        let c = &self.config;
        let player = self.player.pos;
        let pos = skeleton.pos;
        let dist = pos.chebyshev(player) as u32;
        let reload = skeleton.timer.saturating_sub(1);
        let mut next_reload = reload;
        let mut dealt = 0;
        let rng = &mut self.rng.creatures;

        if pos.manhattan(player) == 1 {
            if reload == 0 && self.player.is_alive() {
                if let (Some(d), _) = Dir::toward(pos, player) {
                    if let Some(s) = self.entities.get_mut(slot) {
                        s.facing = d;
                    }
                }
                dealt = self.hurt_player(self.config.arrow_damage, DamageSource::Arrow);
                next_reload = self.config.skeleton_reload;
            }
        } else if dist <= c.skeleton_retreat_distance && rng.gen::<f64>() < c.skeleton_retreat_prob {
            if let (Some(d), _) = Dir::toward(pos, player) {
                self.try_move(slot, d.opposite());
            }
        } else if dist <= c.skeleton_shoot_range && reload == 0 && rng.gen::<f64>() < c.skeleton_shoot_prob {
            if let (Some(d), _) = Dir::toward(pos, player) {
                next_reload = self.config.skeleton_reload;
                self.fire_arrow(slot, pos, d);
            }
        } else if dist <= c.skeleton_approach_range && rng.gen::<f64>() < c.skeleton_approach_prob {
            self.move_toward(slot, pos, player);
        } else if rng.gen::<f64>() < c.skeleton_wander_prob {
            self.random_move(slot);
        }
        if let Some(s) = self.entities.get_mut(slot) {
            s.timer = next_reload;
        }
        dealt
    }

    fn fire_arrow(&mut self, shooter: usize, from: Pos, dir: Dir) {
        if let Some(s) = self.entities.get_mut(shooter) {
            s.facing = dir;
        }
        let at = from.step(dir);
        if !at.in_interior() || !self.entities.is_free(at) || !CreatureKind::Arrow.can_enter(self.grid.at(at)) {
            return;
        }
        if let Some(arrow_slot) = self.spawn_creature(CreatureKind::Arrow, at) {
            let arrow = self.entities.get_mut(arrow_slot).expect("just inserted");
            arrow.facing = dir;
            arrow.fresh = true;
        }
    }

    fn tick_arrow(&mut self, slot: usize, arrow: Creature) -> u32 {
        let target = arrow.pos.step(arrow.facing);
        if !target.in_interior() {
            self.entities.remove(slot);
            return 0;
        }
        match self.entities.occupant(target) {
            Occupant::Player => {
                self.entities.remove(slot);
                if self.player.is_alive() {
                    self.hurt_player(self.config.arrow_damage, DamageSource::Arrow)
                } else {
                    0
                }
            }
            Occupant::Creature(_) => {
                self.entities.remove(slot);
                0
            }
            Occupant::Empty => {
                if CreatureKind::Arrow.can_enter(self.grid.at(target)) {
                    self.entities.move_to(slot, target);
                } else {
                    self.entities.remove(slot);
                }
                0
            }
        }
    }
}
