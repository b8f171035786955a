//! Score table and charts.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::score::{aggregate_runs, RunSummary};
use super::stats::EpisodeStats;
use super::EvalError;
use crate::env::{Achievement, NUM_ACHIEVEMENTS};
use crate::render::RgbImage;

/// Lowest success rate on the log axis, in percent. Zero rates are drawn as
/// a stub at this floor.
pub const CHART_FLOOR: f64 = 0.01;
const CHART_CEIL: f64 = 100.0;
const STUB_PX: i64 = 2;

const SERIES_COLORS: [[u8; 3]; 6] = [
    [66, 133, 244],
    [234, 67, 53],
    [52, 168, 83],
    [251, 188, 5],
    [154, 82, 200],
    [0, 172, 193],
];
const BACKGROUND: [u8; 3] = [255, 255, 255];
const INK: [u8; 3] = [40, 40, 40];
const GRID: [u8; 3] = [220, 220, 220];

/// All seeds of one method.
#[derive(Clone, Debug)]
pub struct MethodRuns {
    pub label: String,
    pub runs: Vec<RunSummary>,
}

impl MethodRuns {
    /// Success rates averaged over seeds, in canonical order.
    pub fn mean_rates(&self) -> [f64; NUM_ACHIEVEMENTS] {
        let mut out = [0.0; NUM_ACHIEVEMENTS];
        if self.runs.is_empty() {
            return out;
        }
        for a in Achievement::ALL {
            let sum: f64 = self.runs.iter().map(|r| r.success_rates[a.name()]).sum();
            out[a.index()] = sum / self.runs.len() as f64;
        }
        out
    }

    pub fn score(&self) -> Result<(f64, f64), EvalError> {
        aggregate_runs(&self.runs.iter().map(|r| r.score).collect::<Vec<_>>())
    }
}

/// "collect_coal" -> "Collect Coal"
pub fn title_case(name: &str) -> String {
    name.split('_')
        .map(|w| {
            let mut c = w.chars();
            match c.next() {
                Some(f) => f.to_uppercase().chain(c).collect::<String>(),
                None => String::new(),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Plain-text table: one row per achievement with the seed-averaged success
/// rate of each method, then the score as mean ± standard error.
pub fn score_table(methods: &[MethodRuns]) -> Result<String, EvalError> {
    const NAME_W: usize = 20;
    const COL_W: usize = 14;
    let mut out = String::new();
    write!(out, "{:<NAME_W$}", "Achievement").unwrap();
    for m in methods {
        write!(out, "{:>COL_W$}", m.label).unwrap();
    }
    out.push('\n');
    out.push_str(&"-".repeat(NAME_W + COL_W * methods.len()));
    out.push('\n');
    let rates: Vec<_> = methods.iter().map(MethodRuns::mean_rates).collect();
    for a in Achievement::ALL {
        write!(out, "{:<NAME_W$}", title_case(a.name())).unwrap();
        for r in &rates {
            write!(out, "{:>COL_W$}", format!("{:.1}%", r[a.index()])).unwrap();
        }
        out.push('\n');
    }
    out.push_str(&"-".repeat(NAME_W + COL_W * methods.len()));
    out.push('\n');
    write!(out, "{:<NAME_W$}", "Score").unwrap();
    for m in methods {
        let (mean, se) = m.score()?;
        write!(out, "{:>COL_W$}", format!("{mean:.1} ± {se:.1}%")).unwrap();
    }
    out.push('\n');
    Ok(out)
}

/// Bar length in pixels for a rate on the log axis of `width` pixels.
pub fn bar_length(rate: f64, width: i64) -> i64 {
    if rate <= CHART_FLOOR {
        return STUB_PX;
    }
    let span = CHART_CEIL.log10() - CHART_FLOOR.log10();
    let frac = ((rate.min(CHART_CEIL).log10() - CHART_FLOOR.log10()) / span).clamp(0.0, 1.0);
    ((frac * width as f64).round() as i64).max(STUB_PX)
}

/// Horizontal log-scale bars, one group per achievement with one bar per
/// series.
pub fn spectrum_chart(series: &[(String, [f64; NUM_ACHIEVEMENTS])]) -> RgbImage {
    let scale = 2;
    let label_w = RgbImage::text_width("make_stone_pickaxe", scale) + 16;
    let plot_w: i64 = 480;
    let bar_h: i64 = 6;
    let group_h = bar_h * series.len().max(1) as i64 + 6;
    let top: i64 = 40;
    let legend_h = 16 * series.len() as i64 + 8;
    let width = label_w + plot_w + 40;
    let height = top + group_h * NUM_ACHIEVEMENTS as i64 + 30 + legend_h;
    let mut img = RgbImage::new(width as usize, height as usize, BACKGROUND);

    img.draw_text(8, 8, "success rate %  log scale", INK, scale);
    let mut tick = CHART_FLOOR;
    while tick <= CHART_CEIL * 1.0001 {
        let x = label_w + bar_length(tick, plot_w);
        img.fill_rect(x, top - 4, 1, group_h * NUM_ACHIEVEMENTS as i64 + 4, GRID);
        let label = if tick < 1.0 { format!("{tick}") } else { format!("{}", tick as i64) };
        let tw = RgbImage::text_width(&label, 1);
        img.draw_text(x - tw / 2, top + group_h * NUM_ACHIEVEMENTS as i64 + 6, &label, INK, 1);
        tick *= 10.0;
    }

    for a in Achievement::ALL {
        let y0 = top + group_h * a.index() as i64;
        img.draw_text(8, y0 + (group_h - 10) / 2, a.name(), INK, scale);
        for (s, (_, rates)) in series.iter().enumerate() {
            let len = bar_length(rates[a.index()], plot_w);
            let color = SERIES_COLORS[s % SERIES_COLORS.len()];
            img.fill_rect(label_w, y0 + 3 + bar_h * s as i64, len, bar_h - 1, color);
        }
    }
    img.fill_rect(label_w, top - 4, 1, group_h * NUM_ACHIEVEMENTS as i64 + 4, INK);

    let ly = top + group_h * NUM_ACHIEVEMENTS as i64 + 24;
    for (s, (label, _)) in series.iter().enumerate() {
        let y = ly + 16 * s as i64;
        img.fill_rect(8, y, 10, 10, SERIES_COLORS[s % SERIES_COLORS.len()]);
        img.draw_text(24, y, label, INK, scale);
    }
    img
}

/// Mean episode return per bucket of `bucket_steps` environment steps,
/// bucketed by the step at which each episode ended.
pub fn return_curve(stats: &[EpisodeStats], bucket_steps: u64) -> Vec<(u64, f64)> {
    let mut out: Vec<(u64, f64, usize)> = Vec::new();
    let mut end = 0u64;
    for s in stats {
        end += s.length as u64;
        let bucket = (end - 1) / bucket_steps.max(1);
        match out.last_mut() {
            Some(last) if last.0 == bucket => {
                last.1 += s.episode_return;
                last.2 += 1;
            }
            _ => out.push((bucket, s.episode_return, 1)),
        }
    }
    out.into_iter()
        .map(|(b, sum, n)| ((b + 1) * bucket_steps, sum / n as f64))
        .collect()
}

/// Line chart of [`return_curve`] for each series.
pub fn reward_chart(series: &[(String, Vec<EpisodeStats>)]) -> RgbImage {
    let (w, h) = (640i64, 360i64);
    let (left, right, top, bottom) = (48i64, 16i64, 32i64, 40i64);
    let mut img = RgbImage::new(w as usize, h as usize, BACKGROUND);
    let total: u64 = series
        .iter()
        .map(|(_, s)| s.iter().map(|e| e.length as u64).sum::<u64>())
        .max()
        .unwrap_or(1)
        .max(1);
    let bucket = (total / 50).max(1);
    let curves: Vec<Vec<(u64, f64)>> = series.iter().map(|(_, s)| return_curve(s, bucket)).collect();
    let ymax = curves
        .iter()
        .flatten()
        .map(|p| p.1)
        .fold(1.0f64, f64::max)
        .ceil();
    let ymin = curves.iter().flatten().map(|p| p.1).fold(0.0f64, f64::min).floor();
    let px = |x: u64| left + ((x as f64 / total as f64) * (w - left - right) as f64) as i64;
    let py = |y: f64| top + (((ymax - y) / (ymax - ymin)) * (h - top - bottom) as f64) as i64;

    img.draw_text(8, 8, "episode return", INK, 2);
    img.fill_rect(left, top, 1, h - top - bottom, INK);
    img.fill_rect(left, h - bottom, w - left - right, 1, INK);
    img.draw_text(4, top, &format!("{ymax}"), INK, 1);
    img.draw_text(4, h - bottom - 5, &format!("{ymin}"), INK, 1);
    let total_label = format!("{total} steps");
    img.draw_text(w - right - RgbImage::text_width(&total_label, 1), h - bottom + 8, &total_label, INK, 1);

    for (s, curve) in curves.iter().enumerate() {
        let color = SERIES_COLORS[s % SERIES_COLORS.len()];
        for pair in curve.windows(2) {
            draw_line(&mut img, (px(pair[0].0), py(pair[0].1)), (px(pair[1].0), py(pair[1].1)), color);
        }
        for &(x, y) in curve {
            img.fill_rect(px(x) - 1, py(y) - 1, 3, 3, color);
        }
        img.fill_rect(left + 8, h - 18 - 12 * s as i64, 8, 8, color);
        img.draw_text(left + 20, h - 18 - 12 * s as i64, &series[s].0, INK, 1);
    }
    img
}

fn draw_line(img: &mut RgbImage, (x0, y0): (i64, i64), (x1, y1): (i64, i64), color: [u8; 3]) {
    let (dx, dy) = ((x1 - x0).abs(), -(y1 - y0).abs());
    let (sx, sy) = (if x0 < x1 { 1 } else { -1 }, if y0 < y1 { 1 } else { -1 });
    let (mut x, mut y, mut err) = (x0, y0, dx + dy);
    loop {
        img.put(x, y, color);
        if x == x1 && y == y1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

/// Writes `scores.txt`, `spectrum.png` and `rewards.png` into `out_dir`.
pub fn write_report(
    methods: &[MethodRuns],
    logs: &[(String, Vec<EpisodeStats>)],
    out_dir: &Path,
) -> Result<Vec<PathBuf>, EvalError> {
    std::fs::create_dir_all(out_dir)?;
    let table = out_dir.join("scores.txt");
    std::fs::write(&table, score_table(methods)?)?;
    let series: Vec<_> = methods.iter().map(|m| (m.label.clone(), m.mean_rates())).collect();
    let spectrum = out_dir.join("spectrum.png");
    spectrum_chart(&series).save_png(&spectrum)?;
    let rewards = out_dir.join("rewards.png");
    reward_chart(logs).save_png(&rewards)?;
    Ok(vec![table, spectrum, rewards])
}
