use serde::{Deserialize, Serialize};

use crate::world::{Dir, Material, Pos, WORLD_CELLS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CreatureKind {
    Cow,
    Zombie,
    Skeleton,
    Arrow,
    Plant,
}

impl CreatureKind {
    pub fn name(self) -> &'static str {
        match self {
            CreatureKind::Cow => "cow",
            CreatureKind::Zombie => "zombie",
            CreatureKind::Skeleton => "skeleton",
            CreatureKind::Arrow => "arrow",
            CreatureKind::Plant => "plant",
        }
    }

    /// Whether this kind may step onto `material`.
    #[inline]
    pub fn can_enter(self, material: Material) -> bool {
        match self {
            CreatureKind::Cow | CreatureKind::Zombie | CreatureKind::Arrow => material.is_walkable(),
            CreatureKind::Skeleton => material == Material::Path,
            CreatureKind::Plant => false,
        }
    }
}

/// A non-player entity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Creature {
    pub kind: CreatureKind,
    pub pos: Pos,
    pub health: i32,
    /// Zombie attack cooldown, skeleton reload, or plant growth ticks.
    pub timer: u32,
    /// Skeleton facing or arrow flight direction.
    pub facing: Dir,
    /// Set on arrows fired during the current entity pass; they first move
    /// on the following tick.
    pub fresh: bool,
}

impl Creature {
    pub fn new(kind: CreatureKind, pos: Pos, health: i32) -> Self {
        Self {
            kind,
            pos,
            health,
            timer: 0,
            facing: Dir::South,
            fresh: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Occupant {
    Empty,
    Player,
    Creature(usize),
}

const EMPTY: u16 = 0;
const PLAYER: u16 = 1;

/// Slot storage for creatures plus a per-cell occupancy index. At most one
/// entity (player included) occupies a cell. Freed slots are reused in LIFO
/// order, which keeps iteration order a pure function of history.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntityStore {
    slots: Vec<Option<Creature>>,
    free: Vec<usize>,
    occupancy: Box<[u16]>,
}

impl Default for EntityStore {
    fn default() -> Self {
        Self {
            slots: Vec::new(),
            free: Vec::new(),
            occupancy: vec![EMPTY; WORLD_CELLS].into_boxed_slice(),
        }
    }
}

impl EntityStore {
    #[inline]
    pub fn occupant(&self, pos: Pos) -> Occupant {
        match self.occupancy[pos.index()] {
            EMPTY => Occupant::Empty,
            PLAYER => Occupant::Player,
            n => Occupant::Creature(n as usize - 2),
        }
    }

    #[inline]
    pub fn is_free(&self, pos: Pos) -> bool {
        self.occupancy[pos.index()] == EMPTY
    }

    pub fn place_player(&mut self, from: Option<Pos>, to: Pos) {
        if let Some(from) = from {
            debug_assert_eq!(self.occupancy[from.index()], PLAYER);
            self.occupancy[from.index()] = EMPTY;
        }
        debug_assert_eq!(self.occupancy[to.index()], EMPTY);
        self.occupancy[to.index()] = PLAYER;
    }

    /// Inserts a creature on a free cell. Returns its slot.
    pub fn insert(&mut self, creature: Creature) -> usize {
        debug_assert!(self.is_free(creature.pos));
        let slot = match self.free.pop() {
            Some(slot) => {
                self.slots[slot] = Some(creature);
                slot
            }
            None => {
                self.slots.push(Some(creature));
                self.slots.len() - 1
            }
        };
        self.occupancy[creature.pos.index()] = slot as u16 + 2;
        slot
    }

    pub fn remove(&mut self, slot: usize) -> Option<Creature> {
        let creature = self.slots.get_mut(slot)?.take()?;
        self.occupancy[creature.pos.index()] = EMPTY;
        self.free.push(slot);
        Some(creature)
    }

    /// Moves a creature to a free cell.
    pub fn move_to(&mut self, slot: usize, to: Pos) {
        let creature = self.slots[slot].as_mut().expect("live slot");
        debug_assert_eq!(self.occupancy[to.index()], EMPTY);
        self.occupancy[creature.pos.index()] = EMPTY;
        creature.pos = to;
        self.occupancy[to.index()] = slot as u16 + 2;
    }

    #[inline]
    pub fn get(&self, slot: usize) -> Option<&Creature> {
        self.slots.get(slot).and_then(|s| s.as_ref())
    }

    #[inline]
    pub fn get_mut(&mut self, slot: usize) -> Option<&mut Creature> {
        self.slots.get_mut(slot).and_then(|s| s.as_mut())
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Creature)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|c| (i, c)))
    }

    pub fn count(&self, kind: CreatureKind) -> usize {
        self.iter().filter(|(_, c)| c.kind == kind).count()
    }

    pub fn len(&self) -> usize {
        self.slots.len() - self.free.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn creature_at(&self, pos: Pos) -> Option<&Creature> {
        match self.occupant(pos) {
            Occupant::Creature(slot) => self.get(slot),
            _ => None,
        }
    }
}
