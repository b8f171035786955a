use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::stats::EpisodeStats;
use super::EvalError;
use crate::env::{Achievement, NUM_ACHIEVEMENTS};

/// Window for the reported mean return, in environment steps.
pub const RETURN_WINDOW_STEPS: u64 = 100_000;

/// Percentage of episodes that unlocked each achievement at least once, in
/// canonical order.
pub fn success_rates(stats: &[EpisodeStats]) -> Result<[f64; NUM_ACHIEVEMENTS], EvalError> {
    if stats.is_empty() {
        return Err(EvalError::EmptyLog);
    }
    let mut rates = [0.0; NUM_ACHIEVEMENTS];
    for a in Achievement::ALL {
        let hits = stats.iter().filter(|s| s.unlocked(a)).count();
        rates[a.index()] = 100.0 * hits as f64 / stats.len() as f64;
    }
    Ok(rates)
}

/// `exp(mean(ln(1 + s_i))) - 1` over success rates given in percent.
pub fn compute_score(rates: &[f64]) -> Result<f64, EvalError> {
    if rates.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    for (index, &value) in rates.iter().enumerate() {
        if !(0.0..=100.0).contains(&value) {
            return Err(EvalError::RateOutOfRange { index, value });
        }
    }
    // A mean of identical terms is that term; skip the round trip through
    // ln/exp so the boundaries come out exact.
    if rates.iter().all(|&r| r == rates[0]) {
        return Ok(rates[0]);
    }
    let mean = rates.iter().map(|r| r.ln_1p()).sum::<f64>() / rates.len() as f64;
    Ok(mean.exp_m1().clamp(0.0, 100.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    pub episodes: usize,
    pub steps: u64,
    pub score: f64,
    /// Mean return of the episodes that end within the last
    /// [`RETURN_WINDOW_STEPS`] steps of the log.
    pub mean_return: f64,
    pub success_rates: BTreeMap<String, f64>,
}

pub fn summarize(seed: u64, stats: &[EpisodeStats]) -> Result<RunSummary, EvalError> {
    let rates = success_rates(stats)?;
    let steps: u64 = stats.iter().map(|s| s.length as u64).sum();
    let window_start = steps.saturating_sub(RETURN_WINDOW_STEPS);
    let mut end = 0u64;
    let mut window = Vec::new();
    for s in stats {
        end += s.length as u64;
        if end > window_start {
            window.push(s.episode_return);
        }
    }
    Ok(RunSummary {
        seed,
        episodes: stats.len(),
        steps,
        score: compute_score(&rates)?,
        mean_return: window.iter().sum::<f64>() / window.len() as f64,
        success_rates: Achievement::ALL
            .iter()
            .map(|a| (a.name().to_string(), rates[a.index()]))
            .collect(),
    })
}

/// Mean and standard error (sample standard deviation over `sqrt(n)`).
pub fn aggregate_runs(scores: &[f64]) -> Result<(f64, f64), EvalError> {
    if scores.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut sorted = scores.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mean = sorted.iter().sum::<f64>() / n;
    if sorted.len() == 1 {
        return Ok((mean, 0.0));
    }
    let var = sorted.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::AchievementSet;

    fn episode(i: u64, len: u32, unlocked: &[Achievement]) -> EpisodeStats {
        let mut set = AchievementSet::new();
        for &a in unlocked {
            set.unlock(a);
        }
        EpisodeStats::new(i, len, unlocked.len() as f64, &set)
    }

    #[test]
    fn rates_count_episodes_not_unlocks() {
        let mut log: Vec<EpisodeStats> = (0..10)
            .map(|i| {
                let a: &[Achievement] = if i < 7 { &[Achievement::CollectWood] } else { &[] };
                episode(i, 100, a)
            })
            .collect();
        log[0].achievements.insert("collect_wood".into(), 5);
        let r = success_rates(&log).unwrap();
        assert_eq!(r[Achievement::CollectWood.index()], 70.0);
        assert_eq!(r[Achievement::CollectDiamond.index()], 0.0);
        assert!(matches!(success_rates(&[]), Err(EvalError::EmptyLog)));
    }

    #[test]
    fn score_boundaries_and_errors() {
        assert_eq!(compute_score(&[0.0; 22]).unwrap(), 0.0);
        assert_eq!(compute_score(&[100.0; 22]).unwrap(), 100.0);
        assert!(matches!(
            compute_score(&[101.0, 0.0]),
            Err(EvalError::RateOutOfRange { index: 0, .. })
        ));
        assert!(matches!(compute_score(&[f64::NAN]), Err(EvalError::RateOutOfRange { .. })));
    }

    #[test]
    fn random_agent_reference_rates() {
        let mut rates = [0.0; 22];
        rates[..10].copy_from_slice(&[93.6, 50.2, 44.6, 24.4, 9.3, 4.4, 0.4, 0.3, 0.3, 0.1]);
        let s = compute_score(&rates).unwrap();
        assert!((s - 1.54).abs() < 0.01, "{s}");
    }

    #[test]
    fn aggregate() {
        assert_eq!(aggregate_runs(&[3.0]).unwrap(), (3.0, 0.0));
        let (m, se) = aggregate_runs(&[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(m, 5.0);
        assert!((se - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(aggregate_runs(&[6.0, 4.0, 5.0]).unwrap(), (m, se));
        assert!(aggregate_runs(&[]).is_err());
    }

    #[test]
    fn summary_window_uses_trailing_episodes() {
        let log = vec![
            episode(0, 60_000, &[]),
            episode(1, 60_000, &[Achievement::WakeUp]),
            episode(2, 50_000, &[Achievement::WakeUp, Achievement::EatCow]),
        ];
        let s = summarize(0, &log).unwrap();
        assert_eq!(s.steps, 170_000);
        // Window covers steps 70k..170k: episodes 1 and 2.
        assert_eq!(s.mean_return, 1.5);
    }
}
