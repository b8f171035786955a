//! 3x5 bitmap font for HUD digits and chart labels.

use super::atlas::{digit_pixel, DIGIT_HEIGHT, DIGIT_WIDTH};

pub const GLYPH_WIDTH: usize = DIGIT_WIDTH;
pub const GLYPH_HEIGHT: usize = DIGIT_HEIGHT;

fn letter(c: char) -> Option<[&'static str; 5]> {
    Some(match c {
        'a' => [".#.", "#.#", "###", "#.#", "#.#"],
        'b' => ["##.", "#.#", "##.", "#.#", "##."],
        'c' => ["###", "#..", "#..", "#..", "###"],
        'd' => ["##.", "#.#", "#.#", "#.#", "##."],
        'e' => ["###", "#..", "##.", "#..", "###"],
        'f' => ["###", "#..", "##.", "#..", "#.."],
        'g' => ["###", "#..", "#.#", "#.#", "###"],
        'h' => ["#.#", "#.#", "###", "#.#", "#.#"],
        'i' => ["###", ".#.", ".#.", ".#.", "###"],
        'j' => ["..#", "..#", "..#", "#.#", "###"],
        'k' => ["#.#", "#.#", "##.", "#.#", "#.#"],
        'l' => ["#..", "#..", "#..", "#..", "###"],
        'm' => ["#.#", "###", "###", "#.#", "#.#"],
        'n' => ["##.", "#.#", "#.#", "#.#", "#.#"],
        'o' => ["###", "#.#", "#.#", "#.#", "###"],
        'p' => ["###", "#.#", "###", "#..", "#.."],
        'q' => ["###", "#.#", "#.#", "###", "..#"],
        'r' => ["##.", "#.#", "##.", "#.#", "#.#"],
        's' => ["###", "#..", "###", "..#", "###"],
        't' => ["###", ".#.", ".#.", ".#.", ".#."],
        'u' => ["#.#", "#.#", "#.#", "#.#", "###"],
        'v' => ["#.#", "#.#", "#.#", "#.#", ".#."],
        'w' => ["#.#", "#.#", "###", "###", "#.#"],
        'x' => ["#.#", "#.#", ".#.", "#.#", "#.#"],
        'y' => ["#.#", "#.#", ".#.", ".#.", ".#."],
        'z' => ["###", "..#", ".#.", "#..", "###"],
        '_' => ["...", "...", "...", "...", "###"],
        '.' => ["...", "...", "...", "...", ".#."],
        '%' => ["#.#", "..#", ".#.", "#..", "#.#"],
        '-' => ["...", "...", "###", "...", "..."],
        '+' => ["...", ".#.", "###", ".#.", "..."],
        ':' => ["...", ".#.", "...", ".#.", "..."],
        _ => return None,
    })
}

/// Whether pixel `(x, y)` of glyph `c` is lit. Unknown characters and spaces
/// are blank. Letters are case-insensitive.
pub fn glyph_pixel(c: char, x: usize, y: usize) -> bool {
    if let Some(d) = c.to_digit(10) {
        return digit_pixel(d as u8, x, y);
    }
    match letter(c.to_ascii_lowercase()) {
        Some(rows) => rows[y].as_bytes()[x] == b'#',
        None => false,
    }
}
