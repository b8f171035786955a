//! Embedded 16x16 sprites.
//!
//! Every sprite is authored as 8x8 pixel art over a shared palette and doubled
//! to 16x16. A `.` marks a transparent pixel. Rotated and mirrored variants
//! are derived in code.

use sha2::{Digest, Sha256};

use crate::sim::Item;
use crate::world::{Dir, Material};

pub const SPRITE_SIZE: usize = 16;
const ART_SIZE: usize = 8;
/// Edge of a sprite downscaled into one observation cell.
pub const TILE_SIZE: usize = 7;

fn palette(c: char) -> Option<[u8; 3]> {
    Some(match c {
        'k' => [20, 20, 20],
        'w' => [235, 235, 235],
        'g' => [92, 166, 64],
        'G' => [64, 130, 48],
        'l' => [130, 196, 90],
        'b' => [52, 104, 204],
        'B' => [96, 152, 232],
        's' => [222, 204, 146],
        'S' => [198, 178, 120],
        'p' => [156, 134, 110],
        'P' => [128, 108, 90],
        'r' => [134, 134, 134],
        'R' => [100, 100, 100],
        'L' => [176, 176, 176],
        'n' => [134, 88, 44],
        'N' => [92, 58, 28],
        'o' => [236, 108, 24],
        'y' => [250, 212, 64],
        'c' => [34, 34, 34],
        'i' => [214, 164, 128],
        'd' => [120, 236, 232],
        'e' => [204, 44, 44],
        'h' => [232, 184, 144],
        'u' => [52, 76, 184],
        'z' => [84, 160, 80],
        'Z' => [40, 96, 44],
        'm' => [240, 156, 176],
        'f' => [214, 214, 200],
        _ => return None,
    })
}

const WATER: [&str; 8] = [
    "bbbbbbbb", "bbBBbbbb", "bbbbbbbb", "bbbbbBBb", "bbbbbbbb", "bBBbbbbb", "bbbbbbbb", "bbbbBBbb",
];
const SAND: [&str; 8] = [
    "ssssssss", "sssSssss", "ssssssSs", "ssssssss", "sSssssss", "sssssSss", "ssssssss", "ssSsssss",
];
const GRASS: [&str; 8] = [
    "gggggggg", "ggGggggg", "gggggglg", "gggggggg", "glgggGgg", "gggggggg", "ggggglgg", "gGgggggg",
];
const TREE: [&str; 8] = [
    "ggGGGGgg", "gGGlGGGg", "GGGGGlGG", "GlGGGGGG", "gGGGGGGg", "ggGnnGgg", "gggnnggg", "ggNnnNgg",
];
const PATH: [&str; 8] = [
    "pppppppp", "ppPppppp", "pppppPpp", "pppppppp", "pPpppppp", "ppppppPp", "pppPpppp", "pppppppp",
];
const STONE: [&str; 8] = [
    "rrrrRrrr", "rLrrRrrr", "rrrrRRrr", "RRrrrrrR", "rrrLrrrr", "rrrrrRrr", "rRRrrRrr", "rrrrrrrL",
];
const COAL: [&str; 8] = [
    "rrrrRrrr", "rccrRrrr", "rccrRccr", "RRrrrccR", "rrrcrrrr", "rrcccRrr", "rRrcrRrr", "rrrrrrrL",
];
const IRON: [&str; 8] = [
    "rrrrRrrr", "riirRrrr", "riirRiir", "RRrrriiR", "rrrirrrr", "rriiiRrr", "rRrirRrr", "rrrrrrrL",
];
const DIAMOND: [&str; 8] = [
    "rrrrRrrr", "rdwrRrrr", "rddrRdwr", "RRrrrddR", "rrrdrrrr", "rrdwdRrr", "rRrdrRrr", "rrrrrrrL",
];
const LAVA: [&str; 8] = [
    "oooyoooo", "ooyyooeo", "oooooooo", "oeooyooo", "ooooyyoo", "yooooooe", "oooeoooo", "ooyooooo",
];
const TABLE: [&str; 8] = [
    "gggggggg", "nnnnnnnn", "NnnnnnnN", "NNNNNNNN", "gNggggNg", "gNggggNg", "gNggggNg", "gggggggg",
];
const FURNACE: [&str; 8] = [
    "RRRRRRRR", "RrrrrrrR", "RrRRRRrR", "RrRkkRrR", "RrRoyRrR", "RrRooRrR", "RrrrrrrR", "RRRRRRRR",
];
const SAPLING: [&str; 8] = [
    "gggggggg", "gggggggg", "gggllggg", "ggGllGgg", "gggGGggg", "ggggGggg", "gggNNggg", "gggggggg",
];

const PLAYER_DOWN: [&str; 8] = [
    "..NNNN..", "..hhhh..", "..khkh..", "..hhhh..", ".uuuuuu.", "h.uuuu.h", "..uuuu..", "..k..k..",
];
const PLAYER_UP: [&str; 8] = [
    "..NNNN..", "..NNNN..", "..NNNN..", "..hhhh..", ".uuuuuu.", "h.uuuu.h", "..uuuu..", "..k..k..",
];
const PLAYER_LEFT: [&str; 8] = [
    "..NNNN..", ".hhhhN..", ".khhhh..", "..hhhh..", "..uuuu..", "..uhuu..", "..uuuu..", "..k.k...",
];
const PLAYER_SLEEP: [&str; 8] = [
    "........", "......w.", ".....w..", "NNhh....", "NNhhuuuu", "..kkuuuu", "........", "........",
];
const COW: [&str; 8] = [
    "........", "k.....kw", "wwkkwwww", "wkkwwwkm", "wwwwkkw.", "wwwwwww.", "k.k..k.k", "........",
];
const ZOMBIE: [&str; 8] = [
    "..zzzz..", "..ezez..", "..zzzz..", "zzZZZZzz", "..ZZZZ..", "..ZZZZ..", "..z..z..", "..z..z..",
];
const SKELETON: [&str; 8] = [
    "..ffff..", "..fkfk..", "..ffff..", "...ff...", ".ffffff.", "f.ffff.f", "..f..f..", "..f..f..",
];
const ARROW_RIGHT: [&str; 8] = [
    "........", "........", "........", "ww....L.", "nnnnnnLL", "ww....L.", "........", "........",
];
const PLANT_YOUNG: [&str; 8] = [
    "........", "........", "...ll...", "..GllG..", "...GG...", "....G...", "...NN...", "........",
];
const PLANT_RIPE: [&str; 8] = [
    "........", "..e..e..", ".eGllGe.", "..GllG..", "..eGGe..", "....G...", "...NN...", "........",
];

const HEART: [&str; 8] = [
    "........", ".ee.ee..", "eeeeeee.", "eeeeeee.", ".eeeee..", "..eee...", "...e....", "........",
];
const FOOD: [&str; 8] = [
    "....N...", "...G....", ".eeeee..", "eeeeewe.", "eeeeeee.", "eeeeeee.", ".eeeee..", "........",
];
const DRINK: [&str; 8] = [
    "...B....", "...B....", "..BbB...", "..bbb...", ".bbbbb..", ".bBbbb..", "..bbb...", "........",
];
const ENERGY: [&str; 8] = [
    "....yy..", "...yy...", "..yy....", ".yyyyy..", "...yy...", "..yy....", ".yy.....", "........",
];
const SAPLING_ICON: [&str; 8] = [
    "........", "...ll...", "..lGGl..", "...GG...", "...G....", "...G....", "..NNN...", "........",
];
const WOOD_ICON: [&str; 8] = [
    "........", ".NNNNNN.", "NnnnnnnN", "NnNnnnnN", "NnnnnNnN", "NnnnnnnN", ".NNNNNN.", "........",
];
const ROCK_ICON: [&str; 8] = [
    "........", "...LL...", "..LXXR..", ".LXXXXR.", ".XXXRXR.", ".XRXXXR.", "..RRRR..", "........",
];
const DIAMOND_ICON: [&str; 8] = [
    "........", "..dddd..", ".dwdddd.", "dddddddd", ".dddddd.", "..dddd..", "...dd...", "........",
];
const PICKAXE: [&str; 8] = [
    "........", ".XXXXX..", "X..n..X.", "...n....", "...n....", "...n....", "...n....", "........",
];
const SWORD: [&str; 8] = [
    "......X.", ".....XX.", "....XX..", "...XX...", ".NXX....", "..N.....", ".N.N....", "........",
];

/// Every sprite in the atlas. The discriminant indexes atlas storage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sprite {
    Water,
    Sand,
    Grass,
    Tree,
    Path,
    Stone,
    Coal,
    Iron,
    Diamond,
    Lava,
    Table,
    Furnace,
    Sapling,
    PlayerNorth,
    PlayerSouth,
    PlayerEast,
    PlayerWest,
    PlayerSleeping,
    Cow,
    Zombie,
    Skeleton,
    ArrowNorth,
    ArrowSouth,
    ArrowEast,
    ArrowWest,
    PlantYoung,
    PlantRipe,
    IconHealth,
    IconFood,
    IconDrink,
    IconEnergy,
    IconSapling,
    IconWood,
    IconStone,
    IconCoal,
    IconIron,
    IconDiamond,
    IconWoodPickaxe,
    IconStonePickaxe,
    IconIronPickaxe,
    IconWoodSword,
    IconStoneSword,
    IconIronSword,
}

impl Sprite {
    pub const COUNT: usize = Sprite::IconIronSword as usize + 1;

    pub fn material(m: Material) -> Sprite {
        match m {
            Material::Water => Sprite::Water,
            Material::Sand => Sprite::Sand,
            Material::Grass => Sprite::Grass,
            Material::Tree => Sprite::Tree,
            Material::Path => Sprite::Path,
            Material::Stone => Sprite::Stone,
            Material::Coal => Sprite::Coal,
            Material::Iron => Sprite::Iron,
            Material::Diamond => Sprite::Diamond,
            Material::Lava => Sprite::Lava,
            Material::Table => Sprite::Table,
            Material::Furnace => Sprite::Furnace,
            Material::Sapling => Sprite::Sapling,
        }
    }

    pub fn player(facing: Dir) -> Sprite {
        match facing {
            Dir::North => Sprite::PlayerNorth,
            Dir::South => Sprite::PlayerSouth,
            Dir::East => Sprite::PlayerEast,
            Dir::West => Sprite::PlayerWest,
        }
    }

    pub fn arrow(dir: Dir) -> Sprite {
        match dir {
            Dir::North => Sprite::ArrowNorth,
            Dir::South => Sprite::ArrowSouth,
            Dir::East => Sprite::ArrowEast,
            Dir::West => Sprite::ArrowWest,
        }
    }

    pub fn item(item: Item) -> Sprite {
        match item {
            Item::Sapling => Sprite::IconSapling,
            Item::Wood => Sprite::IconWood,
            Item::Stone => Sprite::IconStone,
            Item::Coal => Sprite::IconCoal,
            Item::Iron => Sprite::IconIron,
            Item::Diamond => Sprite::IconDiamond,
            Item::WoodPickaxe => Sprite::IconWoodPickaxe,
            Item::StonePickaxe => Sprite::IconStonePickaxe,
            Item::IronPickaxe => Sprite::IconIronPickaxe,
            Item::WoodSword => Sprite::IconWoodSword,
            Item::StoneSword => Sprite::IconStoneSword,
            Item::IronSword => Sprite::IconIronSword,
        }
    }
}

/// One 16x16 RGB image with a per-pixel opacity mask, plus its precomputed
/// downscaled observation tile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpriteImage {
    pub rgb: Vec<u8>,
    pub opaque: Vec<bool>,
    pub tile_rgb: Vec<u8>,
    pub tile_opaque: Vec<bool>,
}

impl SpriteImage {
    fn from_art(art: &[&str; 8], substitute: Option<(char, char)>) -> Self {
        let mut rgb = vec![0u8; SPRITE_SIZE * SPRITE_SIZE * 3];
        let mut opaque = vec![false; SPRITE_SIZE * SPRITE_SIZE];
        for (ay, row) in art.iter().enumerate() {
            debug_assert_eq!(row.len(), ART_SIZE, "sprite row {row:?}");
            for (ax, ch) in row.chars().enumerate() {
                let ch = match substitute {
                    Some((from, to)) if ch == from => to,
                    _ => ch,
                };
                let Some(color) = palette(ch) else {
                    continue;
                };
                for dy in 0..2 {
                    for dx in 0..2 {
                        let i = (ay * 2 + dy) * SPRITE_SIZE + ax * 2 + dx;
                        rgb[i * 3..i * 3 + 3].copy_from_slice(&color);
                        opaque[i] = true;
                    }
                }
            }
        }
        Self::finish(rgb, opaque)
    }

    fn finish(rgb: Vec<u8>, opaque: Vec<bool>) -> Self {
        let mut tile_rgb = vec![0u8; TILE_SIZE * TILE_SIZE * 3];
        let mut tile_opaque = vec![false; TILE_SIZE * TILE_SIZE];
        for ty in 0..TILE_SIZE {
            let sy = (2 * ty + 1) * SPRITE_SIZE / (2 * TILE_SIZE);
            for tx in 0..TILE_SIZE {
                let sx = (2 * tx + 1) * SPRITE_SIZE / (2 * TILE_SIZE);
                let s = sy * SPRITE_SIZE + sx;
                let t = ty * TILE_SIZE + tx;
                tile_rgb[t * 3..t * 3 + 3].copy_from_slice(&rgb[s * 3..s * 3 + 3]);
                tile_opaque[t] = opaque[s];
            }
        }
        Self {
            rgb,
            opaque,
            tile_rgb,
            tile_opaque,
        }
    }

    /// Applies `map(x, y) -> (src_x, src_y)` to every pixel.
    fn remap(&self, map: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        let mut rgb = vec![0u8; self.rgb.len()];
        let mut opaque = vec![false; self.opaque.len()];
        for y in 0..SPRITE_SIZE {
            for x in 0..SPRITE_SIZE {
                let (sx, sy) = map(x, y);
                let d = y * SPRITE_SIZE + x;
                let s = sy * SPRITE_SIZE + sx;
                rgb[d * 3..d * 3 + 3].copy_from_slice(&self.rgb[s * 3..s * 3 + 3]);
                opaque[d] = self.opaque[s];
            }
        }
        Self::finish(rgb, opaque)
    }

    fn mirrored(&self) -> Self {
        self.remap(|x, y| (SPRITE_SIZE - 1 - x, y))
    }

    /// Rotated 90 degrees counter-clockwise.
    fn rotated_ccw(&self) -> Self {
        self.remap(|x, y| (SPRITE_SIZE - 1 - y, x))
    }
}

/// All sprites plus the 3x5 digit font used by the inventory display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextureAtlas {
    sprites: Vec<SpriteImage>,
}

pub const DIGIT_WIDTH: usize = 3;
pub const DIGIT_HEIGHT: usize = 5;

const DIGITS: [[&str; 5]; 10] = [
    ["###", "#.#", "#.#", "#.#", "###"],
    [".#.", "##.", ".#.", ".#.", "###"],
    ["###", "..#", "###", "#..", "###"],
    ["###", "..#", "###", "..#", "###"],
    ["#.#", "#.#", "###", "..#", "..#"],
    ["###", "#..", "###", "..#", "###"],
    ["###", "#..", "###", "#.#", "###"],
    ["###", "..#", "..#", "..#", "..#"],
    ["###", "#.#", "###", "#.#", "###"],
    ["###", "#.#", "###", "..#", "###"],
];

/// Whether pixel `(x, y)` of digit `d` is lit.
#[inline]
pub fn digit_pixel(d: u8, x: usize, y: usize) -> bool {
    DIGITS[d as usize % 10][y].as_bytes()[x] == b'#'
}

impl TextureAtlas {
    pub fn builtin() -> Self {
        let art = SpriteImage::from_art;
        let arrow_east = art(&ARROW_RIGHT, None);
        let arrow_north = arrow_east.rotated_ccw();
        let arrow_west = arrow_east.mirrored();
        let arrow_south = arrow_north.remap(|x, y| (x, SPRITE_SIZE - 1 - y));
        let player_west = art(&PLAYER_LEFT, None);
        let player_east = player_west.mirrored();

        let sprites = vec![
            art(&WATER, None),
            art(&SAND, None),
            art(&GRASS, None),
            art(&TREE, None),
            art(&PATH, None),
            art(&STONE, None),
            art(&COAL, None),
            art(&IRON, None),
            art(&DIAMOND, None),
            art(&LAVA, None),
            art(&TABLE, None),
            art(&FURNACE, None),
            art(&SAPLING, None),
            art(&PLAYER_UP, None),
            art(&PLAYER_DOWN, None),
            player_east,
            player_west,
            art(&PLAYER_SLEEP, None),
            art(&COW, None),
            art(&ZOMBIE, None),
            art(&SKELETON, None),
            arrow_north,
            arrow_south,
            arrow_east,
            arrow_west,
            art(&PLANT_YOUNG, None),
            art(&PLANT_RIPE, None),
            art(&HEART, None),
            art(&FOOD, None),
            art(&DRINK, None),
            art(&ENERGY, None),
            art(&SAPLING_ICON, None),
            art(&WOOD_ICON, None),
            art(&ROCK_ICON, Some(('X', 'r'))),
            art(&ROCK_ICON, Some(('X', 'c'))),
            art(&ROCK_ICON, Some(('X', 'i'))),
            art(&DIAMOND_ICON, None),
            art(&PICKAXE, Some(('X', 'N'))),
            art(&PICKAXE, Some(('X', 'r'))),
            art(&PICKAXE, Some(('X', 'i'))),
            art(&SWORD, Some(('X', 'N'))),
            art(&SWORD, Some(('X', 'r'))),
            art(&SWORD, Some(('X', 'i'))),
        ];
        assert_eq!(sprites.len(), Sprite::COUNT);
        Self { sprites }
    }

    #[inline]
    pub fn sprite(&self, id: Sprite) -> &SpriteImage {
        &self.sprites[id as usize]
    }

    pub fn len(&self) -> usize {
        self.sprites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sprites.is_empty()
    }

    /// Hex SHA-256 over every sprite's pixels and mask, in sprite order.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for s in &self.sprites {
            hasher.update(&s.rgb);
            hasher.update(s.opaque.iter().map(|&o| o as u8).collect::<Vec<u8>>());
        }
        hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl Default for TextureAtlas {
    fn default() -> Self {
        Self::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn materials_are_fully_opaque() {
        let atlas = TextureAtlas::builtin();
        for m in Material::ALL {
            let s = atlas.sprite(Sprite::material(m));
            assert!(s.opaque.iter().all(|&o| o), "{m:?}");
            assert!(s.tile_opaque.iter().all(|&o| o), "{m:?}");
        }
    }

    #[test]
    fn all_art_uses_known_palette() {
        let all: Vec<&[&str; 8]> = vec![
            &WATER, &SAND, &GRASS, &TREE, &PATH, &STONE, &COAL, &IRON, &DIAMOND, &LAVA, &TABLE,
            &FURNACE, &SAPLING, &PLAYER_DOWN, &PLAYER_UP, &PLAYER_LEFT, &PLAYER_SLEEP, &COW,
            &ZOMBIE, &SKELETON, &ARROW_RIGHT, &PLANT_YOUNG, &PLANT_RIPE, &HEART, &FOOD, &DRINK,
            &ENERGY, &SAPLING_ICON, &WOOD_ICON, &ROCK_ICON, &DIAMOND_ICON, &PICKAXE, &SWORD,
        ];
        for art in all {
            for row in art {
                assert_eq!(row.len(), 8, "{row:?}");
                for ch in row.chars() {
                    assert!(ch == '.' || ch == 'X' || palette(ch).is_some(), "{ch:?} in {row:?}");
                }
            }
        }
    }

    #[test]
    fn sprites_are_distinct() {
        let atlas = TextureAtlas::builtin();
        for i in 0..atlas.len() {
            for j in i + 1..atlas.len() {
                assert_ne!(atlas.sprites[i], atlas.sprites[j], "sprites {i} and {j}");
            }
        }
    }

    #[test]
    fn arrow_rotations_point_the_right_way() {
        let atlas = TextureAtlas::builtin();
        // The arrow tip (light grey) sits at the leading edge.
        let tip = palette('L').unwrap();
        let lit = |s: Sprite, x: usize, y: usize| {
            let img = atlas.sprite(s);
            let i = y * SPRITE_SIZE + x;
            img.opaque[i] && img.rgb[i * 3..i * 3 + 3] == tip
        };
        assert!(lit(Sprite::ArrowEast, 15, 8));
        assert!(lit(Sprite::ArrowWest, 0, 8));
        assert!(lit(Sprite::ArrowNorth, 8, 0));
        assert!(lit(Sprite::ArrowSouth, 8, 15));
    }
}
