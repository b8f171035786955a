use serde::{Deserialize, Serialize};

use super::SimError;
use crate::world::Dir;

pub const NUM_ACTIONS: usize = 17;

/// The flat categorical action space. Discriminants are the wire indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum Action {
    Noop = 0,
    MoveLeft = 1,
    MoveRight = 2,
    MoveUp = 3,
    MoveDown = 4,
    Do = 5,
    Sleep = 6,
    PlaceStone = 7,
    PlaceTable = 8,
    PlaceFurnace = 9,
    PlacePlant = 10,
    MakeWoodPickaxe = 11,
    MakeStonePickaxe = 12,
    MakeIronPickaxe = 13,
    MakeWoodSword = 14,
    MakeStoneSword = 15,
    MakeIronSword = 16,
}

impl Action {
    pub const ALL: [Action; NUM_ACTIONS] = [
        Action::Noop,
        Action::MoveLeft,
        Action::MoveRight,
        Action::MoveUp,
        Action::MoveDown,
        Action::Do,
        Action::Sleep,
        Action::PlaceStone,
        Action::PlaceTable,
        Action::PlaceFurnace,
        Action::PlacePlant,
        Action::MakeWoodPickaxe,
        Action::MakeStonePickaxe,
        Action::MakeIronPickaxe,
        Action::MakeWoodSword,
        Action::MakeStoneSword,
        Action::MakeIronSword,
    ];

    pub fn from_index(index: usize) -> Result<Self, SimError> {
        Self::ALL
            .get(index)
            .copied()
            .ok_or(SimError::InvalidActionIndex(index))
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::Noop => "noop",
            Action::MoveLeft => "move_left",
            Action::MoveRight => "move_right",
            Action::MoveUp => "move_up",
            Action::MoveDown => "move_down",
            Action::Do => "do",
            Action::Sleep => "sleep",
            Action::PlaceStone => "place_stone",
            Action::PlaceTable => "place_table",
            Action::PlaceFurnace => "place_furnace",
            Action::PlacePlant => "place_plant",
            Action::MakeWoodPickaxe => "make_wood_pickaxe",
            Action::MakeStonePickaxe => "make_stone_pickaxe",
            Action::MakeIronPickaxe => "make_iron_pickaxe",
            Action::MakeWoodSword => "make_wood_sword",
            Action::MakeStoneSword => "make_stone_sword",
            Action::MakeIronSword => "make_iron_sword",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|a| a.name() == name)
    }

    pub fn direction(self) -> Option<Dir> {
        match self {
            Action::MoveLeft => Some(Dir::West),
            Action::MoveRight => Some(Dir::East),
            Action::MoveUp => Some(Dir::North),
            Action::MoveDown => Some(Dir::South),
            _ => None,
        }
    }

    pub fn movement(dir: Dir) -> Self {
        match dir {
            Dir::West => Action::MoveLeft,
            Dir::East => Action::MoveRight,
            Dir::North => Action::MoveUp,
            Dir::South => Action::MoveDown,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_are_dense() {
        for (i, a) in Action::ALL.iter().enumerate() {
            assert_eq!(a.index(), i);
            assert_eq!(Action::from_index(i).unwrap(), *a);
            assert_eq!(Action::from_name(a.name()), Some(*a));
        }
        assert_eq!(Action::from_index(17), Err(SimError::InvalidActionIndex(17)));
    }

    #[test]
    fn movement_round_trip() {
        for d in Dir::ALL {
            assert_eq!(Action::movement(d).direction(), Some(d));
        }
    }
}
