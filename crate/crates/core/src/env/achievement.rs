use std::collections::BTreeMap;

use crate::sim::{CreatureKind, Event, Item};
use crate::world::Material;

/// The 22 achievements, in canonical (alphabetical) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Achievement {
    CollectCoal,
    CollectDiamond,
    CollectDrink,
    CollectIron,
    CollectSapling,
    CollectStone,
    CollectWood,
    DefeatSkeleton,
    DefeatZombie,
    EatCow,
    EatPlant,
    MakeIronPickaxe,
    MakeIronSword,
    MakeStonePickaxe,
    MakeStoneSword,
    MakeWoodPickaxe,
    MakeWoodSword,
    PlaceFurnace,
    PlacePlant,
    PlaceStone,
    PlaceTable,
    WakeUp,
}

pub const NUM_ACHIEVEMENTS: usize = 22;

impl Achievement {
    pub const ALL: [Achievement; NUM_ACHIEVEMENTS] = [
        Achievement::CollectCoal,
        Achievement::CollectDiamond,
        Achievement::CollectDrink,
        Achievement::CollectIron,
        Achievement::CollectSapling,
        Achievement::CollectStone,
        Achievement::CollectWood,
        Achievement::DefeatSkeleton,
        Achievement::DefeatZombie,
        Achievement::EatCow,
        Achievement::EatPlant,
        Achievement::MakeIronPickaxe,
        Achievement::MakeIronSword,
        Achievement::MakeStonePickaxe,
        Achievement::MakeStoneSword,
        Achievement::MakeWoodPickaxe,
        Achievement::MakeWoodSword,
        Achievement::PlaceFurnace,
        Achievement::PlacePlant,
        Achievement::PlaceStone,
        Achievement::PlaceTable,
        Achievement::WakeUp,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Achievement::CollectCoal => "collect_coal",
            Achievement::CollectDiamond => "collect_diamond",
            Achievement::CollectDrink => "collect_drink",
            Achievement::CollectIron => "collect_iron",
            Achievement::CollectSapling => "collect_sapling",
            Achievement::CollectStone => "collect_stone",
            Achievement::CollectWood => "collect_wood",
            Achievement::DefeatSkeleton => "defeat_skeleton",
            Achievement::DefeatZombie => "defeat_zombie",
            Achievement::EatCow => "eat_cow",
            Achievement::EatPlant => "eat_plant",
            Achievement::MakeIronPickaxe => "make_iron_pickaxe",
            Achievement::MakeIronSword => "make_iron_sword",
            Achievement::MakeStonePickaxe => "make_stone_pickaxe",
            Achievement::MakeStoneSword => "make_stone_sword",
            Achievement::MakeWoodPickaxe => "make_wood_pickaxe",
            Achievement::MakeWoodSword => "make_wood_sword",
            Achievement::PlaceFurnace => "place_furnace",
            Achievement::PlacePlant => "place_plant",
            Achievement::PlaceStone => "place_stone",
            Achievement::PlaceTable => "place_table",
            Achievement::WakeUp => "wake_up",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == name)
    }

    /// Achievement unlocked by a simulation event, if any.
    pub fn from_event(event: &Event) -> Option<Self> {
        Some(match *event {
            Event::Collected(item) => match item {
                Item::Coal => Achievement::CollectCoal,
                Item::Diamond => Achievement::CollectDiamond,
                Item::Iron => Achievement::CollectIron,
                Item::Sapling => Achievement::CollectSapling,
                Item::Stone => Achievement::CollectStone,
                Item::Wood => Achievement::CollectWood,
                _ => return None,
            },
            Event::Drank => Achievement::CollectDrink,
            Event::Defeated(CreatureKind::Skeleton) => Achievement::DefeatSkeleton,
            Event::Defeated(CreatureKind::Zombie) => Achievement::DefeatZombie,
            Event::Ate(CreatureKind::Cow) => Achievement::EatCow,
            Event::Ate(CreatureKind::Plant) => Achievement::EatPlant,
            Event::Made(item) => match item {
                Item::IronPickaxe => Achievement::MakeIronPickaxe,
                Item::IronSword => Achievement::MakeIronSword,
                Item::StonePickaxe => Achievement::MakeStonePickaxe,
                Item::StoneSword => Achievement::MakeStoneSword,
                Item::WoodPickaxe => Achievement::MakeWoodPickaxe,
                Item::WoodSword => Achievement::MakeWoodSword,
                _ => return None,
            },
            Event::Placed(material) => match material {
                Material::Furnace => Achievement::PlaceFurnace,
                Material::Sapling => Achievement::PlacePlant,
                Material::Stone => Achievement::PlaceStone,
                Material::Table => Achievement::PlaceTable,
                _ => return None,
            },
            Event::WokeUp => Achievement::WakeUp,
            _ => return None,
        })
    }
}

impl std::fmt::Display for Achievement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-episode unlock counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AchievementSet {
    counts: [u32; NUM_ACHIEVEMENTS],
}

impl AchievementSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one unlock. Returns true the first time in this set.
    pub fn unlock(&mut self, a: Achievement) -> bool {
        let c = &mut self.counts[a.index()];
        *c += 1;
        *c == 1
    }

    pub fn count(&self, a: Achievement) -> u32 {
        self.counts[a.index()]
    }

    pub fn is_unlocked(&self, a: Achievement) -> bool {
        self.counts[a.index()] > 0
    }

    /// Number of distinct achievements unlocked at least once.
    pub fn distinct(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Achievement, u32)> + '_ {
        Achievement::ALL.into_iter().map(|a| (a, self.counts[a.index()]))
    }

    pub fn to_map(&self) -> BTreeMap<String, u32> {
        self.iter().map(|(a, c)| (a.name().to_string(), c)).collect()
    }

    /// Builds a set from name → count pairs. Unknown names are returned as errors.
    pub fn from_map(map: &BTreeMap<String, u32>) -> Result<Self, String> {
        let mut set = Self::new();
        for (name, &count) in map {
            let a = Achievement::from_name(name).ok_or_else(|| name.clone())?;
            set.counts[a.index()] = count;
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_two_sorted_unique_names() {
        let names: Vec<&str> = Achievement::ALL.iter().map(|a| a.name()).collect();
        assert_eq!(names.len(), 22);
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(names, sorted);
        for (i, a) in Achievement::ALL.into_iter().enumerate() {
            assert_eq!(a.index(), i);
            assert_eq!(Achievement::from_name(a.name()), Some(a));
        }
    }

    #[test]
    fn every_achievement_has_an_event() {
        let mut events = vec![Event::Drank, Event::WokeUp];
        events.extend(Item::ALL.map(Event::Collected));
        events.extend(Item::ALL.map(Event::Made));
        events.extend(Material::ALL.map(Event::Placed));
        for k in [CreatureKind::Cow, CreatureKind::Plant, CreatureKind::Zombie, CreatureKind::Skeleton] {
            events.push(Event::Ate(k));
            events.push(Event::Defeated(k));
        }
        let mut hit: Vec<Achievement> = events.iter().filter_map(Achievement::from_event).collect();
        hit.sort();
        hit.dedup();
        assert_eq!(hit, Achievement::ALL.to_vec());
    }

    #[test]
    fn unlock_reports_first_time_only() {
        let mut s = AchievementSet::new();
        assert!(s.unlock(Achievement::CollectWood));
        assert!(!s.unlock(Achievement::CollectWood));
        assert_eq!(s.count(Achievement::CollectWood), 2);
        assert_eq!(s.distinct(), 1);
        let back = AchievementSet::from_map(&s.to_map()).unwrap();
        assert_eq!(back, s);
    }
}
