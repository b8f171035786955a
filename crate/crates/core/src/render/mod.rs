//! Observation and debug-map rasterization.
//!
//! Observation layout (64x64 RGB, origin top-left):
//!
//! | region        | x      | y      | contents                                  |
//! |---------------|--------|--------|-------------------------------------------|
//! | world view    | 0..63  | 0..49  | 9x7 cells of 7x7 px, player in cell (4,3) |
//! | separator     | 63     | 0..50  | black                                     |
//! | separator     | 0..64  | 49     | black                                     |
//! | HUD row 0     | 0..63  | 50..57 | 9 slots of 7x7 px                         |
//! | HUD row 1     | 0..63  | 57..64 | 9 slots of 7x7 px                         |
//!
//! HUD slots are filled in order: health, food, drink, energy, then every
//! inventory item with a nonzero count in [`Item::ALL`] order. Each slot shows
//! the icon with its count as a white 3x5 digit at offset (4, 2).
//!
//! At night every view cell farther than the night radius (Chebyshev) from the
//! player is darkened and speckled with noise from the caller's RNG. Pixels are
//! processed in row-major order, drawing one `u32` per darkened pixel plus one
//! more for each speckle.

pub mod atlas;
pub mod font;
pub mod image;

use std::sync::OnceLock;

use rand::RngCore;

pub use atlas::{Sprite, SpriteImage, TextureAtlas, SPRITE_SIZE, TILE_SIZE};
pub use image::RgbImage;

use crate::sim::{CreatureKind, Item, WorldState};
use crate::world::{Pos, WorldGrid, WORLD_SIZE};

pub const OBS_SIZE: usize = 64;
pub const OBS_CHANNELS: usize = 3;
pub const OBS_BYTES: usize = OBS_SIZE * OBS_SIZE * OBS_CHANNELS;

pub const CELL_PX: usize = TILE_SIZE;
pub const VIEW_COLS: usize = 9;
pub const VIEW_ROWS: usize = 7;
pub const VIEW_WIDTH: usize = VIEW_COLS * CELL_PX;
pub const VIEW_HEIGHT: usize = VIEW_ROWS * CELL_PX;
pub const HUD_Y: usize = VIEW_HEIGHT + 1;
pub const HUD_COLS: usize = 9;
pub const HUD_ROWS: usize = 2;
pub const HUD_SLOTS: usize = HUD_COLS * HUD_ROWS;
const DIGIT_OFFSET: (usize, usize) = (4, 2);
const DIGIT_COLOR: [u8; 3] = [255, 255, 255];

/// One 64x64x3 observation, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Observation {
    pixels: Vec<u8>,
}

impl std::fmt::Debug for Observation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Observation(64x64x3)")
    }
}

impl Default for Observation {
    fn default() -> Self {
        Self::new()
    }
}

impl Observation {
    pub fn new() -> Self {
        Self { pixels: vec![0; OBS_BYTES] }
    }

    pub fn from_raw(pixels: Vec<u8>) -> Option<Self> {
        (pixels.len() == OBS_BYTES).then_some(Self { pixels })
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (OBS_SIZE, OBS_SIZE, OBS_CHANNELS)
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * OBS_SIZE + x) * 3;
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    pub fn to_image(&self) -> RgbImage {
        RgbImage::from_raw(OBS_SIZE, OBS_SIZE, self.pixels.clone()).expect("observation size")
    }

    fn blit_tile(&mut self, px: usize, py: usize, sprite: &SpriteImage) {
        for ty in 0..TILE_SIZE {
            for tx in 0..TILE_SIZE {
                let t = ty * TILE_SIZE + tx;
                if sprite.tile_opaque[t] {
                    let o = ((py + ty) * OBS_SIZE + px + tx) * 3;
                    self.pixels[o..o + 3].copy_from_slice(&sprite.tile_rgb[t * 3..t * 3 + 3]);
                }
            }
        }
    }

    fn fill(&mut self, px: usize, py: usize, w: usize, h: usize) {
        for y in py..py + h {
            let o = (y * OBS_SIZE + px) * 3;
            self.pixels[o..o + w * 3].fill(0);
        }
    }
}

impl TextureAtlas {
    /// Process-wide builtin atlas.
    pub fn shared() -> &'static TextureAtlas {
        static ATLAS: OnceLock<TextureAtlas> = OnceLock::new();
        ATLAS.get_or_init(TextureAtlas::builtin)
    }
}

/// World position shown in view cell `(col, row)`.
#[inline]
pub fn view_cell_pos(player: Pos, col: usize, row: usize) -> Pos {
    Pos::new(
        player.x + col as i32 - (VIEW_COLS / 2) as i32,
        player.y + row as i32 - (VIEW_ROWS / 2) as i32,
    )
}

/// Sprite drawn for the entity at `pos`, if any.
fn entity_sprite(state: &WorldState, pos: Pos) -> Option<Sprite> {
    let player = state.player();
    if pos == player.pos {
        return Some(if player.sleeping {
            Sprite::PlayerSleeping
        } else {
            Sprite::player(player.facing)
        });
    }
    let c = state.entities().creature_at(pos)?;
    Some(match c.kind {
        CreatureKind::Cow => Sprite::Cow,
        CreatureKind::Zombie => Sprite::Zombie,
        CreatureKind::Skeleton => Sprite::Skeleton,
        CreatureKind::Arrow => Sprite::arrow(c.facing),
        CreatureKind::Plant => {
            if c.timer >= state.config().plant_ripe_ticks {
                Sprite::PlantRipe
            } else {
                Sprite::PlantYoung
            }
        }
    })
}

/// HUD slot contents in display order.
pub fn hud_entries(state: &WorldState) -> Vec<(Sprite, u8)> {
    let p = state.player();
    let v = &p.vitals;
    let mut out = vec![
        (Sprite::IconHealth, v.health),
        (Sprite::IconFood, v.food),
        (Sprite::IconDrink, v.water),
        (Sprite::IconEnergy, v.energy),
    ];
    for item in Item::ALL {
        let n = p.inventory.count(item);
        if n > 0 {
            out.push((Sprite::item(item), n));
        }
    }
    out.truncate(HUD_SLOTS);
    out
}

/// Renders the agent observation into `out`.
pub fn render_observation<R: RngCore + ?Sized>(
    state: &WorldState,
    atlas: &TextureAtlas,
    noise: &mut R,
    out: &mut Observation,
) {
    out.pixels.fill(0);
    let player = state.player().pos;
    let grid = state.grid();

    for row in 0..VIEW_ROWS {
        for col in 0..VIEW_COLS {
            let pos = view_cell_pos(player, col, row);
            let (px, py) = (col * CELL_PX, row * CELL_PX);
            let Some(material) = grid.get(pos) else {
                out.fill(px, py, CELL_PX, CELL_PX);
                continue;
            };
            out.blit_tile(px, py, atlas.sprite(Sprite::material(material)));
            if let Some(s) = entity_sprite(state, pos) {
                out.blit_tile(px, py, atlas.sprite(s));
            }
        }
    }

    if state.daylight().is_night() {
        apply_night(state, noise, out);
    }

    for (i, (sprite, count)) in hud_entries(state).into_iter().enumerate() {
        let px = (i % HUD_COLS) * CELL_PX;
        let py = HUD_Y + (i / HUD_COLS) * CELL_PX;
        out.blit_tile(px, py, atlas.sprite(sprite));
        draw_digit(out, px + DIGIT_OFFSET.0, py + DIGIT_OFFSET.1, count);
    }
}

fn draw_digit(out: &mut Observation, x: usize, y: usize, value: u8) {
    for dy in 0..font::GLYPH_HEIGHT {
        for dx in 0..font::GLYPH_WIDTH {
            if atlas::digit_pixel(value.min(9), dx, dy) {
                let o = ((y + dy) * OBS_SIZE + x + dx) * 3;
                out.pixels[o..o + 3].copy_from_slice(&DIGIT_COLOR);
            }
        }
    }
}

fn apply_night<R: RngCore + ?Sized>(state: &WorldState, noise: &mut R, out: &mut Observation) {
    let c = state.config();
    let radius = c.night_view_radius as usize;
    let keep = (c.night_darkening.clamp(0.0, 1.0) * 256.0).round() as u32;
    let speckle = (c.night_speckle_prob.clamp(0.0, 1.0) * 4_294_967_296.0).min(u32::MAX as f64) as u32;
    let (center_col, center_row) = (VIEW_COLS / 2, VIEW_ROWS / 2);
    for y in 0..VIEW_HEIGHT {
        let row = y / CELL_PX;
        for x in 0..VIEW_WIDTH {
            let col = x / CELL_PX;
            if col.abs_diff(center_col).max(row.abs_diff(center_row)) <= radius {
                continue;
            }
            let o = (y * OBS_SIZE + x) * 3;
            if noise.next_u32() < speckle {
                let gray = (noise.next_u32() >> 24) as u8;
                out.pixels[o..o + 3].fill(gray);
            } else {
                for p in &mut out.pixels[o..o + 3] {
                    *p = ((*p as u32 * keep) >> 8) as u8;
                }
            }
        }
    }
}

/// Debug render of the whole map at sprite resolution, materials only.
pub fn render_full_map(grid: &WorldGrid, atlas: &TextureAtlas) -> RgbImage {
    let side = WORLD_SIZE as usize * SPRITE_SIZE;
    let mut img = RgbImage::new(side, side, [0; 3]);
    let pixels = img.pixels_mut();
    for pos in grid.positions() {
        let sprite = atlas.sprite(Sprite::material(grid.at(pos)));
        let (ox, oy) = (pos.x as usize * SPRITE_SIZE, pos.y as usize * SPRITE_SIZE);
        for sy in 0..SPRITE_SIZE {
            let src = sy * SPRITE_SIZE * 3;
            let dst = ((oy + sy) * side + ox) * 3;
            pixels[dst..dst + SPRITE_SIZE * 3].copy_from_slice(&sprite.rgb[src..src + SPRITE_SIZE * 3]);
        }
    }
    img
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::config::BalanceConfig;
    use crate::world::Material;

    fn grass_state() -> WorldState {
        let mut grid = WorldGrid::filled(Material::Grass);
        grid.spawn_point = Pos::new(32, 32);
        WorldState::from_grid(grid, Arc::new(BalanceConfig::default()), 7)
    }

    fn render(state: &WorldState, seed: u64) -> Observation {
        let mut obs = Observation::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        render_observation(state, TextureAtlas::shared(), &mut rng, &mut obs);
        obs
    }

    #[test]
    fn grass_world_view_is_mostly_grass() {
        let state = grass_state();
        let obs = render(&state, 0);
        let grass = TextureAtlas::shared().sprite(Sprite::Grass);
        let palette: Vec<[u8; 3]> = grass.rgb.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        let mut hits = 0;
        for y in 0..VIEW_HEIGHT {
            for x in 0..VIEW_WIDTH {
                if palette.contains(&obs.get(x, y)) {
                    hits += 1;
                }
            }
        }
        assert!(hits * 2 >= VIEW_WIDTH * VIEW_HEIGHT, "{hits}");
    }

    #[test]
    fn separators_are_black() {
        let obs = render(&grass_state(), 0);
        for y in 0..OBS_SIZE {
            assert_eq!(obs.get(63, y), [0; 3]);
        }
        for x in 0..OBS_SIZE {
            assert_eq!(obs.get(x, VIEW_HEIGHT), [0; 3]);
        }
    }

    #[test]
    fn hud_isolated_from_view() {
        let mut state = grass_state();
        let a = render(&state, 0);
        state.player_mut().vitals.health = 3;
        let b = render(&state, 0);
        assert_eq!(a.pixels()[..VIEW_HEIGHT * OBS_SIZE * 3], b.pixels()[..VIEW_HEIGHT * OBS_SIZE * 3]);
        assert_ne!(a.pixels()[HUD_Y * OBS_SIZE * 3..], b.pixels()[HUD_Y * OBS_SIZE * 3..]);
    }

    #[test]
    fn outside_map_is_dark() {
        let mut state = grass_state();
        state.teleport_player(Pos::new(1, 1));
        let obs = render(&state, 0);
        // Column 0 of the view shows x = -3.
        for y in 0..VIEW_HEIGHT {
            for x in 0..CELL_PX {
                assert_eq!(obs.get(x, y), [0; 3]);
            }
        }
    }

    #[test]
    fn night_darkens_only_far_cells() {
        let mut state = grass_state();
        let day = render(&state, 0);
        state.daylight_mut().set_tick_of_day(250);
        let night = render(&state, 0);
        // Player cell untouched, corner cell changed.
        let (cx, cy) = (4 * CELL_PX + 3, 3 * CELL_PX + 3);
        assert_eq!(day.get(cx, cy), night.get(cx, cy));
        let changed = (0..CELL_PX)
            .flat_map(|y| (0..CELL_PX).map(move |x| (x, y)))
            .filter(|&(x, y)| day.get(x, y) != night.get(x, y))
            .count();
        assert_eq!(changed, CELL_PX * CELL_PX);
        // Same noise stream gives the same image.
        assert_eq!(night, render(&state, 0));
        assert_ne!(night, render(&state, 1));
    }

    #[test]
    fn hud_lists_nonzero_items() {
        let mut state = grass_state();
        state.player_mut().inventory.set(Item::Wood, 3);
        state.player_mut().inventory.set(Item::IronSword, 1);
        let entries = hud_entries(&state);
        assert_eq!(entries.len(), 6);
        assert_eq!(entries[4], (Sprite::IconWood, 3));
        assert_eq!(entries[5], (Sprite::IconIronSword, 1));
    }

    #[test]
    fn full_map_of_water_is_all_water_tiles() {
        let grid = WorldGrid::filled(Material::Water);
        let img = render_full_map(&grid, TextureAtlas::shared());
        assert_eq!((img.width(), img.height()), (1024, 1024));
        let water = &TextureAtlas::shared().sprite(Sprite::Water).rgb;
        for (tx, ty) in [(0, 0), (63, 63), (17, 40)] {
            for sy in 0..SPRITE_SIZE {
                for sx in 0..SPRITE_SIZE {
                    let i = (sy * SPRITE_SIZE + sx) * 3;
                    assert_eq!(img.get(tx * 16 + sx, ty * 16 + sy), [water[i], water[i + 1], water[i + 2]]);
                }
            }
        }
    }
}
