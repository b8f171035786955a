mod support;

use std::sync::Arc;

use craftbench::render::{
    render_full_map, render_observation, Observation, TextureAtlas, OBS_BYTES, VIEW_HEIGHT, VIEW_WIDTH,
};
use craftbench::worldgen::{derive_episode_seed, generate_world, Stream};
use craftbench::{BalanceConfig, Env, Material, Pos, WorldGrid, WorldState};
use support::*;

/// Pinned so any sprite edit is a visible, deliberate change.
const ATLAS_HASH: &str = "b7fa8ccbf6c93af877e724714475eeda2b22cda70d165d6a4a5a07d31f526577";

fn render(state: &WorldState, noise_seed: u64) -> Observation {
    let mut out = Observation::new();
    let mut rng = Stream::ViewNoise.rng(noise_seed);
    render_observation(state, TextureAtlas::shared(), &mut rng, &mut out);
    out
}

fn view_region(obs: &Observation) -> Vec<[u8; 3]> {
    let mut v = Vec::new();
    for y in 0..VIEW_HEIGHT {
        for x in 0..VIEW_WIDTH {
            v.push(obs.get(x, y));
        }
    }
    v
}

fn generated_state(seed: u64) -> WorldState {
    let config = Arc::new(BalanceConfig::default());
    let episode_seed = derive_episode_seed(seed, 0);
    let world = generate_world(episode_seed, &config).unwrap();
    WorldState::new(world, config, episode_seed)
}

#[test]
fn atlas_hash_is_pinned() {
    assert_eq!(TextureAtlas::builtin().content_hash(), ATLAS_HASH);
}

#[test]
fn view_depends_only_on_visible_window() {
    for night in [false, true] {
        let mut base = generated_state(4);
        if night {
            let t = base.config().night_start() + 50;
            base.daylight_mut().set_tick_of_day(t);
        }
        let p = base.player().pos;
        let reference = view_region(&render(&base, 1));
        let mut rng = TestRng(8);
        for _ in 0..200 {
            let q = Pos::new(1 + rng.below(62) as i32, 1 + rng.below(62) as i32);
            let inside = (q.x - p.x).abs() <= 4 && (q.y - p.y).abs() <= 3;
            let mut edited = base.clone();
            let m = if edited.grid().at(q) == Material::Lava { Material::Table } else { Material::Lava };
            edited.grid_mut().set(q, m);
            let view = view_region(&render(&edited, 1));
            if inside {
                if !night || q.chebyshev(p) <= 2 {
                    assert_ne!(view, reference, "visible edit at {q:?} must show");
                }
            } else {
                assert_eq!(view, reference, "edit at {q:?} outside the window leaked");
            }
        }
    }
}

#[test]
fn same_state_same_stream_same_pixels() {
    let mut s = generated_state(2);
    let t = s.config().night_start() + 10;
    s.daylight_mut().set_tick_of_day(t);
    assert_eq!(render(&s, 5), render(&s, 5));
    assert_ne!(render(&s, 5), render(&s, 6), "night noise follows the stream");
}

#[test]
fn observation_shape_holds_over_random_play() {
    let mut env = Env::new(BalanceConfig::default());
    env.set_info_enabled(false);
    let mut rng = TestRng(21);
    let mut episode = 0;
    env.reset(8, episode).unwrap();
    for _ in 0..100_000 {
        let r = env.step(rng.below(17) as usize).unwrap();
        assert_eq!(r.observation.shape(), (64, 64, 3));
        assert_eq!(r.observation.pixels().len(), OBS_BYTES);
        if r.done {
            episode += 1;
            env.reset(8, episode).unwrap();
        }
    }
}

#[test]
fn health_changes_touch_only_the_hud() {
    let mut a = micro(|_| {});
    let mut b = a.clone();
    a.player_mut().vitals.health = 9;
    b.player_mut().vitals.health = 3;
    let (ra, rb) = (render(&a, 0), render(&b, 0));
    assert_eq!(view_region(&ra), view_region(&rb));
    assert_ne!(ra, rb);
}

#[test]
fn full_maps_differ_by_seed_and_cover_water() {
    let atlas = TextureAtlas::shared();
    let a = render_full_map(&generated_state(0).grid().clone(), atlas);
    let b = render_full_map(&generated_state(1).grid().clone(), atlas);
    assert_eq!((a.width(), a.height()), (1024, 1024));
    assert_ne!(a.pixels(), b.pixels());

    let water = render_full_map(&WorldGrid::filled(Material::Water), atlas);
    let tile: Vec<[u8; 3]> = (0..16).flat_map(|y| (0..16).map(move |x| (x, y))).map(|(x, y)| water.get(x, y)).collect();
    for ty in 0..64 {
        for tx in 0..64 {
            for (i, px) in tile.iter().enumerate() {
                assert_eq!(water.get(tx * 16 + i % 16, ty * 16 + i / 16), *px);
            }
        }
    }
}

#[test]
fn png_encoding_is_stable() {
    let img = render_full_map(generated_state(3).grid(), TextureAtlas::shared());
    assert_eq!(img.encode_png().unwrap(), img.encode_png().unwrap());
}
