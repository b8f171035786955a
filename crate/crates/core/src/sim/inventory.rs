use serde::{Deserialize, Serialize};

/// Upper bound of every vital level and item count.
pub const MAX_LEVEL: u8 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Item {
    Sapling,
    Wood,
    Stone,
    Coal,
    Iron,
    Diamond,
    WoodPickaxe,
    StonePickaxe,
    IronPickaxe,
    WoodSword,
    StoneSword,
    IronSword,
}

impl Item {
    pub const ALL: [Item; 12] = [
        Item::Sapling,
        Item::Wood,
        Item::Stone,
        Item::Coal,
        Item::Iron,
        Item::Diamond,
        Item::WoodPickaxe,
        Item::StonePickaxe,
        Item::IronPickaxe,
        Item::WoodSword,
        Item::StoneSword,
        Item::IronSword,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Item::Sapling => "sapling",
            Item::Wood => "wood",
            Item::Stone => "stone",
            Item::Coal => "coal",
            Item::Iron => "iron",
            Item::Diamond => "diamond",
            Item::WoodPickaxe => "wood_pickaxe",
            Item::StonePickaxe => "stone_pickaxe",
            Item::IronPickaxe => "iron_pickaxe",
            Item::WoodSword => "wood_sword",
            Item::StoneSword => "stone_sword",
            Item::IronSword => "iron_sword",
        }
    }

    pub fn is_tool(self) -> bool {
        self as usize >= Item::WoodPickaxe as usize
    }
}

/// Item counts, each within `0..=MAX_LEVEL`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Inventory {
    counts: [u8; 12],
}

impl Inventory {
    #[inline]
    pub fn count(&self, item: Item) -> u8 {
        self.counts[item as usize]
    }

    #[inline]
    pub fn has(&self, item: Item) -> bool {
        self.count(item) > 0
    }

    /// Adds up to `amount`, saturating at the cap. Returns the amount stored.
    pub fn add(&mut self, item: Item, amount: u32) -> u8 {
        let slot = &mut self.counts[item as usize];
        let before = *slot;
        *slot = (before as u32 + amount).min(MAX_LEVEL as u32) as u8;
        *slot - before
    }

    /// True when every `(item, amount)` requirement is covered.
    pub fn covers(&self, costs: &[(Item, u32)]) -> bool {
        costs.iter().all(|&(item, n)| self.count(item) as u32 >= n)
    }

    /// Removes all costs if covered; otherwise leaves the inventory untouched.
    pub fn spend(&mut self, costs: &[(Item, u32)]) -> bool {
        if !self.covers(costs) {
            return false;
        }
        for &(item, n) in costs {
            self.counts[item as usize] -= n as u8;
        }
        true
    }

    pub fn set(&mut self, item: Item, count: u8) {
        self.counts[item as usize] = count.min(MAX_LEVEL);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Item, u8)> + '_ {
        Item::ALL.iter().map(move |&i| (i, self.count(i)))
    }
}

/// The four player levels and the clocks driving them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vitals {
    pub health: u8,
    pub food: u8,
    pub water: u8,
    pub energy: u8,
    pub hunger_clock: u32,
    pub thirst_clock: u32,
    /// Counts toward energy loss while awake and toward recovery while asleep.
    pub fatigue_clock: u32,
    pub regen_clock: u32,
    pub degen_clock: u32,
}

impl Default for Vitals {
    fn default() -> Self {
        Self {
            health: MAX_LEVEL,
            food: MAX_LEVEL,
            water: MAX_LEVEL,
            energy: MAX_LEVEL,
            hunger_clock: 0,
            thirst_clock: 0,
            fatigue_clock: 0,
            regen_clock: 0,
            degen_clock: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_saturates_at_cap() {
        let mut inv = Inventory::default();
        assert_eq!(inv.add(Item::Wood, 7), 7);
        assert_eq!(inv.add(Item::Wood, 5), 2);
        assert_eq!(inv.count(Item::Wood), MAX_LEVEL);
    }

    #[test]
    fn spend_is_all_or_nothing() {
        let mut inv = Inventory::default();
        inv.add(Item::Wood, 1);
        inv.add(Item::Coal, 1);
        let recipe = [(Item::Wood, 1), (Item::Coal, 1), (Item::Iron, 1)];
        assert!(!inv.spend(&recipe));
        assert_eq!(inv.count(Item::Wood), 1);
        inv.add(Item::Iron, 1);
        assert!(inv.spend(&recipe));
        assert_eq!(inv, Inventory::default());
    }

    #[test]
    fn tools_are_flagged() {
        assert!(!Item::Diamond.is_tool());
        assert!(Item::WoodPickaxe.is_tool());
        assert!(Item::IronSword.is_tool());
    }
}
