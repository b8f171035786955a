//! Privileged planner that authors the golden playthrough.
//!
//! The planner reads the full world state every step, so it is an authoring
//! tool rather than a policy. What it produces is a plain action list that
//! replays through the ordinary env like any other script.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use super::EvalError;
use crate::config::BalanceConfig;
use crate::env::{Achievement, AchievementSet, Env, NUM_ACHIEVEMENTS};
use crate::sim::{Action, CreatureKind, Item, WorldState};
use crate::world::{Dir, Material, Pos, WORLD_CELLS};

/// Ticks before nightfall at which the planner heads for shelter.
const SHELTER_LEAD: u32 = 25;
/// Ticks before the shelter window in which vitals are topped up.
const PREP_WINDOW: u32 = 60;
/// Route cost beyond which an existing table or furnace is not worth
/// walking back to.
const STATION_DETOUR: u32 = 24;

#[derive(Clone, Debug)]
pub struct GoldenPlan {
    pub run_seed: u64,
    pub episode_index: u64,
    pub actions: Vec<Action>,
    pub achievements: AchievementSet,
}

impl GoldenPlan {
    pub fn is_complete(&self) -> bool {
        self.achievements.distinct() == NUM_ACHIEVEMENTS
    }
}

/// Plans one episode until every achievement is unlocked, the player dies,
/// or `max_steps` actions have been issued.
pub fn plan_golden(
    config: Arc<BalanceConfig>,
    run_seed: u64,
    episode_index: u64,
    max_steps: u32,
) -> Result<GoldenPlan, EvalError> {
    let mut env = Env::with_config(config);
    env.set_info_enabled(false);
    env.reset(run_seed, episode_index)?;
    let mut planner = Planner {
        env,
        plant: None,
        shelter: None,
        drinking: false,
    };
    let mut actions = Vec::new();
    while (actions.len() as u32) < max_steps && !planner.env.is_done() {
        if planner.env.achievements().distinct() == NUM_ACHIEVEMENTS {
            break;
        }
        let action = planner.decide();
        planner.env.step_fast(action.index())?;
        actions.push(action);
    }
    Ok(GoldenPlan {
        run_seed,
        episode_index,
        actions,
        achievements: *planner.env.achievements(),
    })
}

/// First episode in `episodes` whose plan unlocks everything.
pub fn find_golden(
    config: Arc<BalanceConfig>,
    run_seed: u64,
    episodes: std::ops::Range<u64>,
    max_steps: u32,
) -> Result<Option<GoldenPlan>, EvalError> {
    for index in episodes {
        let plan = plan_golden(Arc::clone(&config), run_seed, index, max_steps)?;
        if plan.is_complete() {
            return Ok(Some(plan));
        }
    }
    Ok(None)
}

/// A two-cell dead end: `entry` is outside, the player seals it with stone
/// from the first cell.
#[derive(Clone, Copy, Debug)]
struct Shelter {
    entry: Pos,
    dir: Dir,
    sealed: bool,
}

impl Shelter {
    fn inner(&self) -> Pos {
        self.entry.step(self.dir)
    }

    fn back(&self) -> Pos {
        self.inner().step(self.dir)
    }
}

struct Planner {
    env: Env,
    plant: Option<Pos>,
    shelter: Option<Shelter>,
    drinking: bool,
}

/// Outcome of a route query.
enum Route {
    Arrived,
    Next(Action),
    Unreachable,
}

fn dir_index(d: Dir) -> usize {
    Dir::ALL.iter().position(|&x| x == d).expect("dir")
}

fn perpendicular(d: Dir) -> [Dir; 2] {
    match d {
        Dir::North | Dir::South => [Dir::East, Dir::West],
        Dir::East | Dir::West => [Dir::North, Dir::South],
    }
}

fn pickaxe_for(material: Material) -> Option<Item> {
    match material {
        Material::Stone | Material::Coal => Some(Item::WoodPickaxe),
        Material::Iron => Some(Item::StonePickaxe),
        Material::Diamond => Some(Item::IronPickaxe),
        _ => None,
    }
}

fn can_dig(s: &WorldState, pos: Pos) -> bool {
    pos.in_interior()
        && s.entities().is_free(pos)
        && pickaxe_for(s.grid().at(pos)).is_some_and(|tool| s.player().inventory.has(tool))
}

fn can_walk(s: &WorldState, pos: Pos) -> bool {
    pos.in_interior() && s.entities().is_free(pos) && s.grid().at(pos).is_walkable()
}

/// Blocks both creatures and the player, and is not lava.
fn is_solid(s: &WorldState, pos: Pos) -> bool {
    if !pos.in_interior() {
        return true;
    }
    let m = s.grid().at(pos);
    !m.is_walkable() && m != Material::Lava && m != Material::Sapling
}

fn creature_is(s: &WorldState, pos: Pos, kind: CreatureKind) -> bool {
    s.entities().creature_at(pos).is_some_and(|c| c.kind == kind)
}

/// Cheapest first action toward a state whose (position, faced cell)
/// satisfies `goal`. Moves cost one, digging through a mineable cell two.
/// The player never steps or turns onto lava.
fn route(s: &WorldState, dig: bool, max_cost: u32, mut goal: impl FnMut(Pos, Pos) -> bool) -> Route {
    let p = s.player();
    let key = |pos: Pos, d: Dir| pos.index() * 4 + dir_index(d);
    let mut cost = vec![u32::MAX; WORLD_CELLS * 4];
    let mut first: Vec<Option<Action>> = vec![None; WORLD_CELLS * 4];
    let mut heap = BinaryHeap::new();
    let start = key(p.pos, p.facing);
    cost[start] = 0;
    heap.push(Reverse((0u32, start)));
    while let Some(Reverse((c, k))) = heap.pop() {
        if c > cost[k] {
            continue;
        }
        let pos = Pos::from_index(k / 4);
        let facing = Dir::ALL[k % 4];
        if goal(pos, pos.step(facing)) {
            return match first[k] {
                None => Route::Arrived,
                Some(a) => Route::Next(a),
            };
        }
        if c >= max_cost {
            continue;
        }
        for d in Dir::ALL {
            let t = pos.step(d);
            if t.in_bounds() && s.grid().at(t) == Material::Lava {
                continue;
            }
            let mut edges: [Option<(usize, u32, Action)>; 2] = [None, None];
            if can_walk(s, t) {
                edges[0] = Some((key(t, d), 1, Action::movement(d)));
            } else {
                if facing != d {
                    edges[0] = Some((key(pos, d), 1, Action::movement(d)));
                }
                if dig && facing == d && can_dig(s, t) {
                    edges[1] = Some((key(t, d), 2, Action::Do));
                }
            }
            for (nk, w, action) in edges.into_iter().flatten() {
                let nc = c + w;
                if nc < cost[nk] {
                    cost[nk] = nc;
                    first[nk] = Some(first[k].unwrap_or(action));
                    heap.push(Reverse((nc, nk)));
                }
            }
        }
    }
    Route::Unreachable
}

impl Planner {
    fn state(&self) -> &WorldState {
        self.env.state().expect("planner env is reset")
    }

    fn done(&self, a: Achievement) -> bool {
        self.env.achievements().is_unlocked(a)
    }

    fn count(&self, item: Item) -> u32 {
        self.state().player().inventory.count(item) as u32
    }

    fn decide(&mut self) -> Action {
        if self.state().player().sleeping {
            return Action::Noop;
        }
        if let Some(a) = self.shelter_step() {
            return a;
        }
        if let Some(a) = self.defend() {
            return a;
        }
        if let Some(a) = self.maintain() {
            return a;
        }
        self.progress().unwrap_or(Action::Noop)
    }

    /// Faces a cell satisfying `target` and performs `action` on it.
    fn act_on(&self, dig: bool, max_cost: u32, action: Action, target: impl Fn(&WorldState, Pos) -> bool) -> Option<Action> {
        let s = self.state();
        match route(s, dig, max_cost, |_, t| t.in_interior() && target(s, t)) {
            Route::Arrived => Some(action),
            Route::Next(a) => Some(a),
            Route::Unreachable => None,
        }
    }

    fn collect(&self, material: Material) -> Option<Action> {
        self.act_on(true, 400, Action::Do, |s, t| s.grid().at(t) == material && s.entities().is_free(t))
    }

    fn place(&self, action: Action, allowed: &'static [Material]) -> Option<Action> {
        self.act_on(false, 40, action, |s, t| {
            allowed.contains(&s.grid().at(t)) && s.entities().is_free(t) && s.player().pos.manhattan(t) == 1
        })
    }

    fn attack(&self, kind: CreatureKind, dig: bool, max_cost: u32) -> Option<Action> {
        self.act_on(dig, max_cost, Action::Do, |s, t| creature_is(s, t, kind))
    }

    fn in_shelter_window(&self) -> bool {
        let d = self.state().daylight();
        d.tick_of_day() + SHELTER_LEAD >= d.night_start()
    }

    fn shelter_step(&mut self) -> Option<Action> {
        let window = self.in_shelter_window();
        let Some(sh) = self.shelter else {
            if !window {
                return None;
            }
            self.shelter = self.find_shelter();
            return self.shelter.and_then(|_| self.shelter_step());
        };
        let s = self.state();
        let p = s.player();
        if sh.sealed {
            if window {
                let sleep = p.vitals.energy < crate::sim::MAX_LEVEL;
                return Some(if sleep { Action::Sleep } else { Action::Noop });
            }
            let walled_in = p.target() == sh.entry && !s.grid().at(sh.entry).is_walkable();
            self.shelter = None;
            return walled_in.then_some(Action::Do);
        }
        if !window {
            self.shelter = None;
            return None;
        }
        let back = sh.dir.opposite();
        if p.pos == sh.back() {
            return Some(Action::movement(back));
        }
        if p.pos == sh.inner() {
            if p.facing == back {
                if is_solid(s, sh.entry) {
                    self.shelter = Some(Shelter { sealed: true, ..sh });
                    return self.shelter_step();
                }
                if self.count(Item::Stone) == 0 || !s.entities().is_free(sh.entry) {
                    return Some(Action::Noop);
                }
                return Some(Action::PlaceStone);
            }
            let b = sh.back();
            if can_walk(s, b) || p.facing != sh.dir {
                return Some(Action::movement(sh.dir));
            }
            if can_dig(s, b) {
                return Some(Action::Do);
            }
            self.shelter = None;
            return None;
        }
        let (entry, inner) = (sh.entry, sh.inner());
        match route(s, true, 400, |pos, t| pos == entry && t == inner) {
            Route::Arrived => {
                if can_walk(s, inner) {
                    Some(Action::movement(sh.dir))
                } else if can_dig(s, inner) {
                    Some(Action::Do)
                } else {
                    self.shelter = None;
                    None
                }
            }
            Route::Next(a) => Some(a),
            Route::Unreachable => {
                self.shelter = None;
                None
            }
        }
    }

    /// Nearest dead end that can be dug out and sealed.
    fn find_shelter(&self) -> Option<Shelter> {
        let s = self.state();
        let mut candidates = vec![None; WORLD_CELLS * 4];
        let mut any = false;
        for entry in s.grid().positions() {
            if !can_walk(s, entry) && entry != s.player().pos {
                continue;
            }
            for dir in Dir::ALL {
                let inner = entry.step(dir);
                let back = inner.step(dir);
                let end = back.step(dir);
                if !back.in_interior() {
                    continue;
                }
                let open = |c: Pos| {
                    (can_walk(s, c) && s.grid().at(c) == Material::Path && !s.grid().is_tunnel(c)) || can_dig(s, c)
                };
                if !open(inner) || !open(back) || !is_solid(s, end) {
                    continue;
                }
                let walls = perpendicular(dir)
                    .iter()
                    .all(|&w| is_solid(s, inner.step(w)) && is_solid(s, back.step(w)));
                let dug = [inner, back].iter().filter(|&&c| can_dig(s, c)).count();
                if walls && self.count(Item::Stone) as usize + dug > 0 {
                    candidates[entry.index() * 4 + dir_index(dir)] = Some(Shelter {
                        entry,
                        dir,
                        sealed: false,
                    });
                    any = true;
                }
            }
        }
        if !any {
            return None;
        }
        let mut best = None;
        let probe = |pos: Pos, t: Pos| {
            Dir::ALL
                .iter()
                .any(|&d| pos.step(d) == t && candidates[pos.index() * 4 + dir_index(d)].is_some())
        };
        route(s, true, 400, |pos, t| {
            let hit = probe(pos, t);
            if hit {
                let d = Dir::ALL.iter().copied().find(|&d| pos.step(d) == t).expect("adjacent");
                best = best.or(candidates[pos.index() * 4 + dir_index(d)]);
            }
            hit
        });
        best
    }

    /// Fights zombies that come close.
    fn defend(&self) -> Option<Action> {
        let s = self.state();
        let me = s.player().pos;
        let close = s
            .entities()
            .iter()
            .any(|(_, c)| c.kind == CreatureKind::Zombie && c.pos.chebyshev(me) <= 2);
        if close {
            self.attack(CreatureKind::Zombie, false, 4)
        } else {
            None
        }
    }

    fn maintain(&mut self) -> Option<Action> {
        let v = self.state().player().vitals;
        let tod = self.state().daylight().tick_of_day();
        let prep = tod + SHELTER_LEAD + PREP_WINDOW >= self.state().daylight().night_start();
        if v.water <= 4 || (prep && v.water < 7) {
            self.drinking = true;
        }
        if v.water >= crate::sim::MAX_LEVEL {
            self.drinking = false;
        }
        if self.drinking {
            if let Some(a) = self.act_on(false, 400, Action::Do, |s, t| s.grid().at(t) == Material::Water) {
                return Some(a);
            }
        }
        if v.food <= 4 || (prep && v.food < 5) {
            if let Some(a) = self.eat_plant() {
                return Some(a);
            }
            return self.attack(CreatureKind::Cow, false, 400);
        }
        None
    }

    fn eat_plant(&self) -> Option<Action> {
        let plant = self.plant?;
        let s = self.state();
        let ripe = s
            .entities()
            .creature_at(plant)
            .is_some_and(|c| c.kind == CreatureKind::Plant && c.timer >= s.config().plant_ripe_ticks);
        if !ripe {
            return None;
        }
        self.act_on(false, 400, Action::Do, |_, t| t == plant)
    }

    fn wood_needed(&self) -> u32 {
        let mut n = 0;
        for a in [
            Achievement::PlaceTable,
            Achievement::MakeWoodPickaxe,
            Achievement::MakeWoodSword,
            Achievement::MakeStonePickaxe,
            Achievement::MakeStoneSword,
            Achievement::MakeIronPickaxe,
            Achievement::MakeIronSword,
        ] {
            if !self.done(a) {
                n += 1;
            }
        }
        if !self.done(Achievement::MakeIronPickaxe) || !self.done(Achievement::MakeIronSword) {
            n += 2;
        }
        n.min(crate::sim::MAX_LEVEL as u32)
    }

    fn stone_needed(&self) -> u32 {
        let mut n = 2;
        for a in [
            Achievement::PlaceStone,
            Achievement::MakeStonePickaxe,
            Achievement::MakeStoneSword,
            Achievement::PlaceFurnace,
        ] {
            if !self.done(a) {
                n += 1;
            }
        }
        if !self.done(Achievement::MakeIronPickaxe) || !self.done(Achievement::MakeIronSword) {
            n += 1;
        }
        n.min(crate::sim::MAX_LEVEL as u32)
    }

    /// Crafts `tool`, walking back to stations or placing new ones.
    fn craft(&self, tool: Item, action: Action) -> Option<Action> {
        let s = self.state();
        let (costs, furnace) = s.recipe(tool);
        if !s.player().inventory.covers(&costs) {
            return None;
        }
        let table_ok = s.is_nearby(Material::Table);
        let furnace_ok = !furnace || s.is_nearby(Material::Furnace);
        if table_ok && furnace_ok {
            return Some(action);
        }
        let r = s.config().nearby_radius as i32;
        let stations: Vec<Pos> = s
            .grid()
            .positions()
            .filter(|&q| matches!(s.grid().at(q), Material::Table | Material::Furnace))
            .collect();
        let near = |pos: Pos, m: Material| stations.iter().any(|&q| s.grid().at(q) == m && q.chebyshev(pos) <= r);
        let go = route(s, false, STATION_DETOUR, |pos, _| {
            near(pos, Material::Table) && (!furnace || near(pos, Material::Furnace))
        });
        if let Route::Next(a) = go {
            return Some(a);
        }
        let inv = &s.player().inventory;
        if !table_ok {
            let spare = costs.iter().find(|c| c.0 == Item::Wood).map_or(0, |c| c.1);
            if inv.count(Item::Wood) as u32 > spare {
                return self.place(Action::PlaceTable, &[Material::Grass, Material::Sand, Material::Path]);
            }
            return self.collect(Material::Tree);
        }
        if inv.count(Item::Stone) == 0 {
            return self.collect(Material::Stone);
        }
        self.place(Action::PlaceFurnace, &[Material::Grass, Material::Sand, Material::Path])
    }

    fn progress(&mut self) -> Option<Action> {
        use Achievement as A;
        const STATION: &[Material] = &[Material::Grass, Material::Sand, Material::Path];
        const STONE_SPOTS: &[Material] = &[Material::Grass, Material::Sand, Material::Path, Material::Water];

        if let Some(a) = self.eat_plant() {
            return Some(a);
        }
        if self.count(Item::Wood) < self.wood_needed() {
            if let Some(a) = self.collect(Material::Tree) {
                return Some(a);
            }
        }
        if !self.done(A::PlaceTable) {
            if let Some(a) = self.place(Action::PlaceTable, STATION) {
                return Some(a);
            }
        }
        for (ach, tool, action) in [
            (A::MakeWoodPickaxe, Item::WoodPickaxe, Action::MakeWoodPickaxe),
            (A::MakeWoodSword, Item::WoodSword, Action::MakeWoodSword),
        ] {
            if !self.done(ach) {
                if let Some(a) = self.craft(tool, action) {
                    return Some(a);
                }
            }
        }
        if !self.done(A::PlacePlant) {
            if self.count(Item::Sapling) == 0 {
                if let Some(a) = self.act_on(false, 400, Action::Do, |s, t| s.grid().at(t) == Material::Grass) {
                    return Some(a);
                }
            } else if let Some(a) = self.place(Action::PlacePlant, &[Material::Grass]) {
                if a == Action::PlacePlant {
                    self.plant = Some(self.state().player().target());
                }
                return Some(a);
            }
        }
        if !self.done(A::CollectDrink) {
            if let Some(a) = self.act_on(false, 400, Action::Do, |s, t| s.grid().at(t) == Material::Water) {
                return Some(a);
            }
        }
        if !self.done(A::EatCow) {
            if let Some(a) = self.attack(CreatureKind::Cow, false, 400) {
                return Some(a);
            }
        }
        if self.count(Item::Stone) < self.stone_needed() {
            if let Some(a) = self.collect(Material::Stone) {
                return Some(a);
            }
        }
        if !self.done(A::PlaceStone) {
            if let Some(a) = self.place(Action::PlaceStone, STONE_SPOTS) {
                return Some(a);
            }
        }
        for (ach, tool, action) in [
            (A::MakeStonePickaxe, Item::StonePickaxe, Action::MakeStonePickaxe),
            (A::MakeStoneSword, Item::StoneSword, Action::MakeStoneSword),
        ] {
            if !self.done(ach) {
                if let Some(a) = self.craft(tool, action) {
                    return Some(a);
                }
            }
        }
        if !self.done(A::PlaceFurnace) {
            if let Some(a) = self.place(Action::PlaceFurnace, STATION) {
                return Some(a);
            }
        }
        let iron_tools = [
            (A::MakeIronPickaxe, Item::IronPickaxe, Action::MakeIronPickaxe),
            (A::MakeIronSword, Item::IronSword, Action::MakeIronSword),
        ];
        let missing = iron_tools.iter().filter(|t| !self.done(t.0)).count() as u32;
        for material in [Material::Coal, Material::Iron] {
            let item = if material == Material::Coal { Item::Coal } else { Item::Iron };
            if self.count(item) < missing {
                if let Some(a) = self.collect(material) {
                    return Some(a);
                }
            }
        }
        for (ach, tool, action) in iron_tools {
            if !self.done(ach) {
                if let Some(a) = self.craft(tool, action) {
                    return Some(a);
                }
            }
        }
        if !self.done(A::CollectDiamond) {
            if let Some(a) = self.collect(Material::Diamond) {
                return Some(a);
            }
        }
        if !self.done(A::DefeatZombie) {
            if let Some(a) = self.attack(CreatureKind::Zombie, false, 400) {
                return Some(a);
            }
        }
        if !self.done(A::DefeatSkeleton) {
            if let Some(a) = self.attack(CreatureKind::Skeleton, true, 400) {
                return Some(a);
            }
        }
        None
    }
}
