//! Balance table: every tunable constant of world generation, simulation and
//! rendering, with a flat `key = number` text serialization.
//!
//! The text format is UTF-8, one `key = value` pair per line. Blank lines and
//! lines starting with `#` are ignored, as is anything after a `#` on a value
//! line. Keys not listed in the file keep their default. Unknown keys are an
//! error so typos do not silently fall back to defaults.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value {value:?} for `{key}`")]
    InvalidNumber {
        line: usize,
        key: String,
        value: String,
    },
    #[error("`{key}` = {value} violates constraint: {constraint}")]
    Constraint {
        key: &'static str,
        value: String,
        constraint: &'static str,
    },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

trait CheckValue {
    fn positive(&self) -> bool;
    fn unit(&self) -> bool;
}

impl CheckValue for u32 {
    fn positive(&self) -> bool {
        *self > 0
    }
    fn unit(&self) -> bool {
        *self <= 1
    }
}

impl CheckValue for f64 {
    fn positive(&self) -> bool {
        self.is_finite() && *self > 0.0
    }
    fn unit(&self) -> bool {
        (0.0..=1.0).contains(self)
    }
}

macro_rules! check {
    (positive, $k:expr, $v:expr) => {
        if !$v.positive() {
            return Err(ConfigError::Constraint {
                key: $k,
                value: $v.to_string(),
                constraint: "must be strictly positive",
            });
        }
    };
    (unit, $k:expr, $v:expr) => {
        if !$v.unit() {
            return Err(ConfigError::Constraint {
                key: $k,
                value: $v.to_string(),
                constraint: "must lie in [0, 1]",
            });
        }
    };
    (any, $k:expr, $v:expr) => {
        if !($v as f64).is_finite() {
            return Err(ConfigError::Constraint {
                key: $k,
                value: $v.to_string(),
                constraint: "must be finite",
            });
        }
    };
}

macro_rules! balance_config {
    ($( $section:literal { $( $(#[doc = $doc:literal])* $field:ident : $ty:ty = $default:expr => $rule:ident ),* $(,)? } )*) => {
        /// All balance constants. See the module docs for the file format.
        #[derive(Clone, Debug, PartialEq)]
        pub struct BalanceConfig {
            $( $( $(#[doc = $doc])* pub $field: $ty, )* )*
        }

        impl Default for BalanceConfig {
            fn default() -> Self {
                Self { $( $( $field: $default, )* )* }
            }
        }

        impl BalanceConfig {
            /// Every key accepted by the text format, in file order.
            pub const KEYS: &'static [&'static str] = &[$( $( stringify!($field), )* )*];

            fn assign(&mut self, line: usize, key: &str, value: &str) -> Result<(), ConfigError> {
                match key {
                    $( $( stringify!($field) => {
                        self.$field = value.parse::<$ty>().map_err(|_| ConfigError::InvalidNumber {
                            line,
                            key: key.to_string(),
                            value: value.to_string(),
                        })?;
                    } )* )*
                    _ => {
                        return Err(ConfigError::UnknownKey { line, key: key.to_string() });
                    }
                }
                Ok(())
            }

            /// Checks every per-key constraint.
            pub fn validate(&self) -> Result<(), ConfigError> {
                $( $( check!($rule, stringify!($field), self.$field); )* )*
                if self.night_zombie_multiplier < 1 {
                    return Err(ConfigError::Constraint {
                        key: "night_zombie_multiplier",
                        value: self.night_zombie_multiplier.to_string(),
                        constraint: "must be at least 1",
                    });
                }
                if !(self.night_fraction > 0.0 && self.night_fraction < 1.0) {
                    return Err(ConfigError::Constraint {
                        key: "night_fraction",
                        value: self.night_fraction.to_string(),
                        constraint: "must lie strictly between 0 and 1",
                    });
                }
                Ok(())
            }

            /// Serializes every constant, grouped by section, with its current value.
            pub fn to_text(&self) -> String {
                let mut out = String::new();
                $(
                    let _ = writeln!(out, "# {}", $section);
                    $( let _ = writeln!(out, "{} = {}", stringify!($field), self.$field); )*
                    out.push('\n');
                )*
                out
            }
        }
    };
}

balance_config! {
    "world generation" {
        /// Radius (cells) of the grassland bias around the map center.
        start_radius: f64 = 8.0 => positive,
        /// Amplitude of the noise perturbing the start area border.
        start_noise_amp: f64 = 2.0 => any,
        water_bias: f64 = 0.2 => any,
        water_threshold: f64 = 0.3 => any,
        sand_low: f64 = 0.25 => any,
        sand_high: f64 = 0.35 => any,
        sand_noise_threshold: f64 = -0.2 => any,
        mountain_threshold: f64 = 0.22 => any,
        cave_noise_threshold: f64 = 0.15 => any,
        cave_mountain_threshold: f64 = 0.37 => any,
        tunnel_threshold: f64 = 0.4 => any,
        coal_noise_threshold: f64 = 0.0 => any,
        coal_density: f64 = 0.15 => unit,
        iron_noise_threshold: f64 = 0.4 => any,
        iron_density: f64 = 0.25 => unit,
        diamond_mountain_threshold: f64 = 0.25 => any,
        diamond_density: f64 = 0.006 => unit,
        lava_mountain_threshold: f64 = 0.37 => any,
        lava_noise_threshold: f64 = 0.35 => any,
        forest_noise_threshold: f64 = 0.0 => any,
        tree_density: f64 = 0.2 => unit,
        cow_density: f64 = 0.015 => unit,
        cow_min_distance: f64 = 3.0 => positive,
        zombie_density: f64 = 0.002 => unit,
        zombie_min_distance: f64 = 10.0 => positive,
        skeleton_density: f64 = 0.05 => unit,
        /// Re-rolls allowed before generation reports a degenerate config.
        worldgen_max_attempts: u32 = 32 => positive,
    }
    "vitals" {
        food_period: u32 = 60 => positive,
        water_period: u32 = 45 => positive,
        energy_period: u32 = 80 => positive,
        /// Ticks asleep per restored energy point.
        sleep_energy_period: u32 = 10 => positive,
        /// Ticks of deprivation per lost health point.
        degen_period: u32 = 25 => positive,
        regen_period: u32 = 30 => positive,
        drink_amount: u32 = 1 => positive,
        cow_food: u32 = 6 => positive,
        plant_food: u32 = 6 => positive,
    }
    "combat" {
        zombie_damage: u32 = 2 => positive,
        zombie_cooldown: u32 = 5 => positive,
        arrow_damage: u32 = 2 => positive,
        damage_bare: u32 = 1 => positive,
        damage_wood_sword: u32 = 2 => positive,
        damage_stone_sword: u32 = 3 => positive,
        damage_iron_sword: u32 = 5 => positive,
        cow_health: u32 = 3 => positive,
        zombie_health: u32 = 5 => positive,
        skeleton_health: u32 = 3 => positive,
    }
    "creatures" {
        cow_move_prob: f64 = 0.5 => unit,
        zombie_aggro_radius: u32 = 8 => positive,
        zombie_chase_prob: f64 = 0.8 => unit,
        skeleton_reload: u32 = 4 => positive,
        skeleton_retreat_distance: u32 = 3 => positive,
        skeleton_retreat_prob: f64 = 0.4 => unit,
        skeleton_shoot_range: u32 = 5 => positive,
        skeleton_shoot_prob: f64 = 0.5 => unit,
        skeleton_approach_range: u32 = 8 => positive,
        skeleton_approach_prob: f64 = 0.3 => unit,
        skeleton_wander_prob: f64 = 0.2 => unit,
        sapling_prob: f64 = 0.1 => unit,
        plant_ripe_ticks: u32 = 100 => positive,
    }
    "spawning" {
        cow_target: u32 = 8 => positive,
        zombie_target: u32 = 3 => positive,
        skeleton_target: u32 = 4 => positive,
        night_zombie_multiplier: u32 = 3 => positive,
        cow_spawn_prob: f64 = 0.05 => unit,
        zombie_spawn_prob: f64 = 0.3 => unit,
        skeleton_spawn_prob: f64 = 0.1 => unit,
        despawn_prob: f64 = 0.1 => unit,
        /// Chebyshev distance from the player beyond which creatures may despawn.
        despawn_distance: u32 = 6 => positive,
        spawn_attempts: u32 = 8 => positive,
    }
    "daylight" {
        day_length: u32 = 300 => positive,
        night_fraction: f64 = 0.3333333333333333 => unit,
    }
    "crafting" {
        /// Chebyshev radius within which a table or furnace counts as nearby.
        nearby_radius: u32 = 2 => positive,
        table_wood: u32 = 1 => positive,
        furnace_stone: u32 = 1 => positive,
        place_stone_cost: u32 = 1 => positive,
        plant_sapling_cost: u32 = 1 => positive,
        wood_pickaxe_wood: u32 = 1 => positive,
        wood_sword_wood: u32 = 1 => positive,
        stone_pickaxe_wood: u32 = 1 => positive,
        stone_pickaxe_stone: u32 = 1 => positive,
        stone_sword_wood: u32 = 1 => positive,
        stone_sword_stone: u32 = 1 => positive,
        iron_pickaxe_wood: u32 = 1 => positive,
        iron_pickaxe_coal: u32 = 1 => positive,
        iron_pickaxe_iron: u32 = 1 => positive,
        iron_sword_wood: u32 = 1 => positive,
        iron_sword_coal: u32 = 1 => positive,
        iron_sword_iron: u32 = 1 => positive,
    }
    "rendering" {
        night_view_radius: u32 = 2 => positive,
        night_darkening: f64 = 0.4 => unit,
        night_speckle_prob: f64 = 0.05 => unit,
    }
}

impl BalanceConfig {
    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let mut config = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line,
                text: raw.to_string(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || value.is_empty() {
                return Err(ConfigError::Syntax {
                    line,
                    text: raw.to_string(),
                });
            }
            config.assign(line, key, value)?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_text(&text)
    }

    /// Hex SHA-256 of the canonical text form; identifies a balance table in
    /// episode records.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// First tick of the night phase within a day.
    pub fn night_start(&self) -> u32 {
        let start = (self.day_length as f64 * (1.0 - self.night_fraction)).round() as u32;
        start.clamp(1, self.day_length.saturating_sub(1).max(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        BalanceConfig::default().validate().unwrap();
    }

    #[test]
    fn text_round_trip_preserves_every_value() {
        let mut config = BalanceConfig::default();
        config.sapling_prob = 0.125;
        config.food_period = 77;
        let parsed = BalanceConfig::from_text(&config.to_text()).unwrap();
        assert_eq!(parsed, config);
        assert_eq!(parsed.content_hash(), config.content_hash());
    }

    #[test]
    fn every_key_appears_in_text() {
        let text = BalanceConfig::default().to_text();
        for key in BalanceConfig::KEYS {
            assert!(
                text.lines().any(|l| l.starts_with(&format!("{key} = "))),
                "{key} missing"
            );
        }
    }

    #[test]
    fn comments_and_partial_files() {
        let config = BalanceConfig::from_text(
            "# tuned\n\nwater_period = 50  # slower thirst\n   day_length=120\n",
        )
        .unwrap();
        assert_eq!(config.water_period, 50);
        assert_eq!(config.day_length, 120);
        assert_eq!(config.food_period, 60);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            BalanceConfig::from_text("nope = 1"),
            Err(ConfigError::UnknownKey { line: 1, .. })
        ));
        assert!(matches!(
            BalanceConfig::from_text("food_period 60"),
            Err(ConfigError::Syntax { .. })
        ));
        assert!(matches!(
            BalanceConfig::from_text("food_period = -3"),
            Err(ConfigError::InvalidNumber { .. })
        ));
        assert!(matches!(
            BalanceConfig::from_text("food_period = 0"),
            Err(ConfigError::Constraint { key: "food_period", .. })
        ));
        assert!(matches!(
            BalanceConfig::from_text("sapling_prob = 1.5"),
            Err(ConfigError::Constraint { .. })
        ));
    }

    #[test]
    fn night_start_matches_fraction() {
        let config = BalanceConfig::default();
        assert_eq!(config.night_start(), 200);
    }
}
