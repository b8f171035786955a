use super::{DamageSource, Event, WorldState, MAX_LEVEL};

impl WorldState {
    /// Advances hunger, thirst and fatigue, then degenerates or regenerates
    /// health. A sleeping player regains energy instead of losing it and wakes
    /// up once energy is full and it is daytime. Returns the health change.
    pub fn tick_vitals(&mut self) -> i32 {
        if !self.player.is_alive() {
            return 0;
        }
        let c = &self.config;
        let sleeping = self.player.sleeping;
        let v = &mut self.player.vitals;
        let before = v.health as i32;

        v.hunger_clock += 1;
        if v.hunger_clock >= c.food_period {
            v.hunger_clock = 0;
            v.food = v.food.saturating_sub(1);
        }
        v.thirst_clock += 1;
        if v.thirst_clock >= c.water_period {
            v.thirst_clock = 0;
            v.water = v.water.saturating_sub(1);
        }
        v.fatigue_clock += 1;
        if sleeping {
            if v.fatigue_clock >= c.sleep_energy_period {
                v.fatigue_clock = 0;
                v.energy = (v.energy + 1).min(MAX_LEVEL);
            }
        } else if v.fatigue_clock >= c.energy_period {
            v.fatigue_clock = 0;
            v.energy = v.energy.saturating_sub(1);
        }

        let deprived = v.food == 0 || v.water == 0 || (v.energy == 0 && !sleeping);
        let mut lost = false;
        if deprived {
            v.regen_clock = 0;
            v.degen_clock += 1;
            if v.degen_clock >= c.degen_period {
                v.degen_clock = 0;
                lost = true;
            }
        } else {
            v.degen_clock = 0;
            v.regen_clock += 1;
            if v.regen_clock >= c.regen_period {
                v.regen_clock = 0;
                v.health = (v.health + 1).min(MAX_LEVEL);
            }
        }
        if lost {
            self.hurt_player(1, DamageSource::Deprivation);
        }

        if self.player.sleeping
            && self.player.vitals.energy >= MAX_LEVEL
            && !self.daylight.is_night()
        {
            self.player.sleeping = false;
            self.events.push(Event::WokeUp);
        }
        self.player.vitals.health as i32 - before
    }
}
