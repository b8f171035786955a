//! Player actions: movement, `do`, sleeping, placing and crafting.

use rand::Rng;

use super::{Action, CreatureKind, DamageSource, Event, Item, Occupant, WorldState, MAX_LEVEL};
use crate::world::{Dir, Material, Pos};

/// What a placement action puts down, what it costs, and where it may go.
struct Placement {
    material: Material,
    cost: (Item, u32),
    allowed: &'static [Material],
}

const STONE_TARGETS: &[Material] = &[
    Material::Grass,
    Material::Sand,
    Material::Path,
    Material::Water,
    Material::Lava,
];
const STATION_TARGETS: &[Material] = &[Material::Grass, Material::Sand, Material::Path];
const PLANT_TARGETS: &[Material] = &[Material::Grass];

impl WorldState {
    /// Applies the player's action. Requirements that are not met leave the
    /// state untouched (movement still turns the player). While asleep every
    /// action is replaced by `Noop`.
    pub fn apply_action(&mut self, action: Action) {
        if !self.player.is_alive() {
            return;
        }
        let action = if self.player.sleeping {
            Action::Noop
        } else {
            action
        };
        match action {
            Action::Noop => {}
            Action::MoveLeft | Action::MoveRight | Action::MoveUp | Action::MoveDown => {
                self.move_player(action.direction().expect("movement action"));
            }
            Action::Do => self.interact(),
            Action::Sleep => {
                if self.player.vitals.energy < MAX_LEVEL {
                    self.player.sleeping = true;
                    self.player.vitals.fatigue_clock = 0;
                }
            }
            Action::PlaceStone => {
                let p = Placement {
                    material: Material::Stone,
                    cost: (Item::Stone, self.config.place_stone_cost),
                    allowed: STONE_TARGETS,
                };
                self.place(p);
            }
            Action::PlaceTable => {
                let p = Placement {
                    material: Material::Table,
                    cost: (Item::Wood, self.config.table_wood),
                    allowed: STATION_TARGETS,
                };
                self.place(p);
            }
            Action::PlaceFurnace => {
                let p = Placement {
                    material: Material::Furnace,
                    cost: (Item::Stone, self.config.furnace_stone),
                    allowed: STATION_TARGETS,
                };
                self.place(p);
            }
            Action::PlacePlant => {
                let p = Placement {
                    material: Material::Sapling,
                    cost: (Item::Sapling, self.config.plant_sapling_cost),
                    allowed: PLANT_TARGETS,
                };
                self.place(p);
            }
            Action::MakeWoodPickaxe => self.make(Item::WoodPickaxe),
            Action::MakeStonePickaxe => self.make(Item::StonePickaxe),
            Action::MakeIronPickaxe => self.make(Item::IronPickaxe),
            Action::MakeWoodSword => self.make(Item::WoodSword),
            Action::MakeStoneSword => self.make(Item::StoneSword),
            Action::MakeIronSword => self.make(Item::IronSword),
        }
    }

    fn move_player(&mut self, dir: Dir) {
        self.player.facing = dir;
        let target = self.player.pos.step(dir);
        if !target.in_interior() || !self.entities.is_free(target) {
            return;
        }
        let material = self.grid.at(target);
        if !(material.is_walkable() || material == Material::Lava) {
            return;
        }
        self.teleport_player(target);
        if material == Material::Lava {
            self.hurt_player(u32::MAX, DamageSource::Lava);
        }
    }

    /// Damage dealt by the player's best sword.
    pub fn attack_damage(&self) -> u32 {
        let inv = &self.player.inventory;
        let c = &self.config;
        if inv.has(Item::IronSword) {
            c.damage_iron_sword
        } else if inv.has(Item::StoneSword) {
            c.damage_stone_sword
        } else if inv.has(Item::WoodSword) {
            c.damage_wood_sword
        } else {
            c.damage_bare
        }
    }

    fn interact(&mut self) {
        let target = self.player.target();
        if !target.in_interior() {
            return;
        }
        match self.entities.occupant(target) {
            Occupant::Creature(slot) => self.interact_creature(slot),
            Occupant::Player => {}
            Occupant::Empty => self.interact_material(target),
        }
    }

    fn interact_creature(&mut self, slot: usize) {
        let damage = self.attack_damage() as i32;
        let Some(creature) = self.entities.get_mut(slot) else {
            return;
        };
        match creature.kind {
            CreatureKind::Cow | CreatureKind::Zombie | CreatureKind::Skeleton => {
                creature.health -= damage;
                if creature.health > 0 {
                    return;
                }
                let kind = creature.kind;
                self.entities.remove(slot);
                if kind == CreatureKind::Cow {
                    let food = &mut self.player.vitals.food;
                    *food = (*food as u32 + self.config.cow_food).min(MAX_LEVEL as u32) as u8;
                    self.events.push(Event::Ate(CreatureKind::Cow));
                } else {
                    self.events.push(Event::Defeated(kind));
                }
            }
            CreatureKind::Plant => {
                if creature.timer >= self.config.plant_ripe_ticks {
                    creature.timer = 0;
                    let food = &mut self.player.vitals.food;
                    *food = (*food as u32 + self.config.plant_food).min(MAX_LEVEL as u32) as u8;
                    self.events.push(Event::Ate(CreatureKind::Plant));
                }
            }
            CreatureKind::Arrow => {}
        }
    }

    fn interact_material(&mut self, target: Pos) {
        let material = self.grid.at(target);
        let inv = &mut self.player.inventory;
        let (item, tool, leaves) = match material {
            Material::Water => {
                let water = &mut self.player.vitals.water;
                *water = (*water as u32 + self.config.drink_amount).min(MAX_LEVEL as u32) as u8;
                self.events.push(Event::Drank);
                return;
            }
            Material::Grass => {
                if self.rng.interaction.gen::<f64>() < self.config.sapling_prob {
                    inv.add(Item::Sapling, 1);
                    self.events.push(Event::Collected(Item::Sapling));
                }
                return;
            }
            Material::Tree => (Item::Wood, None, Material::Tree),
            Material::Stone => (Item::Stone, Some(Item::WoodPickaxe), Material::Path),
            Material::Coal => (Item::Coal, Some(Item::WoodPickaxe), Material::Path),
            Material::Iron => (Item::Iron, Some(Item::StonePickaxe), Material::Path),
            Material::Diamond => (Item::Diamond, Some(Item::IronPickaxe), Material::Path),
            _ => return,
        };
        if let Some(tool) = tool {
            if !inv.has(tool) {
                return;
            }
        }
        inv.add(item, 1);
        self.grid.set(target, leaves);
        self.events.push(Event::Collected(item));
    }

    fn place(&mut self, placement: Placement) {
        let target = self.player.target();
        if !target.in_interior() || !self.entities.is_free(target) {
            return;
        }
        if !placement.allowed.contains(&self.grid.at(target)) {
            return;
        }
        if !self.player.inventory.spend(&[placement.cost]) {
            return;
        }
        self.grid.set(target, placement.material);
        if placement.material == Material::Sapling {
            self.spawn_creature(CreatureKind::Plant, target);
        }
        self.events.push(Event::Placed(placement.material));
    }

    /// Material costs of a tool and whether it needs a furnace besides a table.
    pub fn recipe(&self, tool: Item) -> (Vec<(Item, u32)>, bool) {
        let c = &self.config;
        match tool {
            Item::WoodPickaxe => (vec![(Item::Wood, c.wood_pickaxe_wood)], false),
            Item::WoodSword => (vec![(Item::Wood, c.wood_sword_wood)], false),
            Item::StonePickaxe => (
                vec![(Item::Wood, c.stone_pickaxe_wood), (Item::Stone, c.stone_pickaxe_stone)],
                false,
            ),
            Item::StoneSword => (
                vec![(Item::Wood, c.stone_sword_wood), (Item::Stone, c.stone_sword_stone)],
                false,
            ),
            Item::IronPickaxe => (
                vec![
                    (Item::Wood, c.iron_pickaxe_wood),
                    (Item::Coal, c.iron_pickaxe_coal),
                    (Item::Iron, c.iron_pickaxe_iron),
                ],
                true,
            ),
            Item::IronSword => (
                vec![
                    (Item::Wood, c.iron_sword_wood),
                    (Item::Coal, c.iron_sword_coal),
                    (Item::Iron, c.iron_sword_iron),
                ],
                true,
            ),
            _ => (Vec::new(), false),
        }
    }

    /// Whether `material` lies within the crafting radius of the player.
    pub fn is_nearby(&self, material: Material) -> bool {
        let r = self.config.nearby_radius as i32;
        let p = self.player.pos;
        for y in p.y - r..=p.y + r {
            for x in p.x - r..=p.x + r {
                if self.grid.get(Pos::new(x, y)) == Some(material) {
                    return true;
                }
            }
        }
        false
    }

    fn make(&mut self, tool: Item) {
        let (costs, needs_furnace) = self.recipe(tool);
        if !self.is_nearby(Material::Table) {
            return;
        }
        if needs_furnace && !self.is_nearby(Material::Furnace) {
            return;
        }
        if !self.player.inventory.spend(&costs) {
            return;
        }
        self.player.inventory.add(tool, 1);
        self.events.push(Event::Made(tool));
    }
}
