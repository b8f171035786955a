mod support;

use std::sync::Arc;

use craftbench::env::replay::{record_actions, replay_episode};
use craftbench::eval::report::{bar_length, write_report, MethodRuns};
use craftbench::eval::stats::{parse_stats, write_stats};
use craftbench::eval::{
    aggregate_runs, compute_score, run_policy, success_rates, summarize, EpisodeStats, EvalError, RandomPolicy,
    RunOptions, ScriptPolicy,
};
use craftbench::{Achievement, AchievementSet, BalanceConfig};
use support::TestRng;

const GOLDEN: &str = include_str!("data/golden_seed0_ep0.txt");

fn stats_with(unlocked: &[(Achievement, u32)], index: u64) -> EpisodeStats {
    let mut set = AchievementSet::new();
    for &(a, n) in unlocked {
        for _ in 0..n {
            set.unlock(a);
        }
    }
    EpisodeStats::new(index, 100, unlocked.len() as f64, &set)
}

#[test]
fn golden_script_unlocks_everything() {
    let config = Arc::new(BalanceConfig::default());
    let script = ScriptPolicy::parse(GOLDEN).unwrap();
    let actions: Vec<u8> = script.actions().iter().map(|a| a.index() as u8).collect();
    let rec = record_actions(Arc::clone(&config), 0, 0, &actions, false).unwrap();
    let report = replay_episode(&rec, config).unwrap();
    assert_eq!(report.achievements.distinct(), 22);
}

#[test]
fn golden_script_through_harness() {
    let mut policy = ScriptPolicy::parse(GOLDEN).unwrap();
    let mut sink = Vec::new();
    let out = run_policy(&mut policy, Arc::new(BalanceConfig::default()), &RunOptions::new(0, 1), &mut sink).unwrap();
    assert_eq!(out.stats.len(), 1);
    assert_eq!(out.stats[0].distinct(), 22);
    assert_eq!(compute_score(&success_rates(&out.stats).unwrap()).unwrap(), 100.0);
}

#[test]
fn random_runs_are_reproducible_and_cover_budget() {
    let config = Arc::new(BalanceConfig::default());
    let run = || {
        let mut sink = Vec::new();
        let out = run_policy(&mut RandomPolicy::new(), Arc::clone(&config), &RunOptions::new(9, 1000), &mut sink).unwrap();
        (sink, out)
    };
    let (a, out) = run();
    let (b, _) = run();
    assert_eq!(a, b);
    assert!(!out.stats.is_empty());
    assert!(out.stats.iter().map(|s| s.length as u64).sum::<u64>() >= 1000);
    assert_eq!(out.info_reads, 0);
    assert_eq!(parse_stats(std::str::from_utf8(&a).unwrap()).unwrap(), out.stats);
}

#[test]
fn zero_budget_rejected() {
    let mut sink = Vec::new();
    let r = run_policy(&mut RandomPolicy::new(), Arc::new(BalanceConfig::default()), &RunOptions::new(0, 0), &mut sink);
    assert!(matches!(r, Err(EvalError::EmptyInput)));
}

#[test]
fn success_rate_examples() {
    let mut log = Vec::new();
    for i in 0..10 {
        let wood = if i < 7 { vec![(Achievement::CollectWood, 5)] } else { vec![] };
        log.push(stats_with(&wood, i));
    }
    let rates = success_rates(&log).unwrap();
    assert_eq!(rates[Achievement::CollectWood.index()], 70.0);
    assert_eq!(rates[Achievement::CollectDiamond.index()], 0.0);
    log.reverse();
    assert_eq!(success_rates(&log).unwrap(), rates);
    assert!(matches!(success_rates(&[]), Err(EvalError::EmptyLog)));
}

#[test]
fn score_bounds_monotonicity_and_reference() {
    assert_eq!(compute_score(&[0.0; 22]).unwrap(), 0.0);
    assert_eq!(compute_score(&[100.0; 22]).unwrap(), 100.0);
    let mut random = [0.0; 22];
    random[..10].copy_from_slice(&[93.6, 50.2, 44.6, 24.4, 9.3, 4.4, 0.4, 0.3, 0.3, 0.1]);
    let s = compute_score(&random).unwrap();
    assert!((s - 1.54).abs() < 0.01, "{s}");
    let mut rng = TestRng(2);
    for _ in 0..500 {
        let rates: Vec<f64> = (0..22).map(|_| rng.unit() * 100.0).collect();
        let i = rng.below(22) as usize;
        let mut up = rates.clone();
        up[i] = (up[i] + 1.0).min(100.0);
        if up[i] > rates[i] {
            assert!(compute_score(&up).unwrap() > compute_score(&rates).unwrap());
        }
    }
    let mut bad = [1.0; 22];
    bad[5] = 100.5;
    assert!(matches!(compute_score(&bad), Err(EvalError::RateOutOfRange { index: 5, .. })));
}

#[test]
fn score_matches_big_integer_oracle() {
    let mut rng = TestRng(12);
    for _ in 0..100 {
        let rates: Vec<f64> = (0..22).map(|_| rng.unit() * 100.0).collect();
        let oracle = support::bigfloat::crafter_score(&rates);
        assert!((compute_score(&rates).unwrap() - oracle).abs() < 1e-9);
    }
}

#[test]
fn aggregate_examples() {
    assert_eq!(aggregate_runs(&[3.5]).unwrap(), (3.5, 0.0));
    let (m, _) = aggregate_runs(&[4.0, 5.0, 6.0]).unwrap();
    assert_eq!(m, 5.0);
    assert_eq!(aggregate_runs(&[6.0, 4.0, 5.0]).unwrap(), aggregate_runs(&[4.0, 5.0, 6.0]).unwrap());
    assert!(matches!(aggregate_runs(&[]), Err(EvalError::EmptyInput)));
}

#[test]
fn stats_lines_have_fixed_key_order() {
    let s = stats_with(&[(Achievement::WakeUp, 1)], 3);
    let mut buf = Vec::new();
    write_stats(&mut buf, &[s.clone()]).unwrap();
    let line = String::from_utf8(buf).unwrap();
    assert!(line.starts_with(r#"{"episode_index":3,"length":100,"return":1.0,"achievements":{"collect_coal":0,"#));
    assert_eq!(parse_stats(&line).unwrap(), vec![s]);
}

#[test]
fn report_writes_table_and_charts() {
    let log: Vec<EpisodeStats> = (0..20)
        .map(|i| stats_with(if i % 2 == 0 { &[(Achievement::WakeUp, 1)] } else { &[] }, i))
        .collect();
    let summary = summarize(0, &log).unwrap();
    let methods = vec![
        MethodRuns { label: "a".into(), runs: vec![summary.clone()] },
        MethodRuns { label: "b".into(), runs: vec![summary] },
    ];
    let dir = tempfile::tempdir().unwrap();
    let files = write_report(&methods, &[("a".into(), log)], dir.path()).unwrap();
    assert_eq!(files.len(), 3);
    let table = std::fs::read_to_string(&files[0]).unwrap();
    assert!(table.contains("Wake Up"));
    assert!(table.contains("Collect Diamond"));
    assert!(bar_length(0.0, 300) > 0, "empty achievements still get a stub");
}
