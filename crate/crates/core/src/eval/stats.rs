use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::env::{Achievement, AchievementSet};

/// One finished episode. Serialized as one JSON line with keys in field order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpisodeStats {
    pub episode_index: u64,
    pub length: u32,
    #[serde(rename = "return")]
    pub episode_return: f64,
    /// Unlock counts for all 22 achievements, in canonical order.
    pub achievements: BTreeMap<String, u32>,
}

impl EpisodeStats {
    pub fn new(episode_index: u64, length: u32, episode_return: f64, achievements: &AchievementSet) -> Self {
        Self {
            episode_index,
            length,
            episode_return,
            achievements: achievements.to_map(),
        }
    }

    pub fn unlocked(&self, a: Achievement) -> bool {
        self.achievements.get(a.name()).is_some_and(|&c| c > 0)
    }

    pub fn distinct(&self) -> usize {
        Achievement::ALL.iter().filter(|&&a| self.unlocked(a)).count()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}

pub fn write_stats<W: Write>(mut out: W, stats: &[EpisodeStats]) -> std::io::Result<()> {
    for s in stats {
        writeln!(out, "{}", s.to_json_line())?;
    }
    out.flush()
}

pub fn parse_stats(text: &str) -> Result<Vec<EpisodeStats>, EvalError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let s: EpisodeStats = serde_json::from_str(line).map_err(|e| EvalError::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        for name in s.achievements.keys() {
            if Achievement::from_name(name).is_none() {
                return Err(EvalError::Parse {
                    line: i + 1,
                    message: format!("unknown achievement {name:?}"),
                });
            }
        }
        out.push(s);
    }
    Ok(out)
}

pub fn read_stats(path: &Path) -> Result<Vec<EpisodeStats>, EvalError> {
    let file = fs::File::open(path)?;
    let mut text = String::new();
    for line in BufReader::new(file).lines() {
        text.push_str(&line?);
        text.push('\n');
    }
    parse_stats(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_line_field_order() {
        let mut set = AchievementSet::new();
        set.unlock(Achievement::WakeUp);
        let s = EpisodeStats::new(4, 120, 0.9, &set);
        let line = s.to_json_line();
        assert!(line.starts_with(r#"{"episode_index":4,"length":120,"return":0.9,"achievements":{"collect_coal":0,"#));
        assert!(line.ends_with(r#""wake_up":1}}"#));
        assert_eq!(parse_stats(&line).unwrap(), vec![s]);
    }

    #[test]
    fn parse_reports_bad_lines() {
        let err = parse_stats("{\"episode_index\":0}\n").unwrap_err();
        assert!(matches!(err, EvalError::Parse { line: 1, .. }));
    }
}
