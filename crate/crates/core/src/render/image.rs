use std::io::Write;
use std::path::Path;

use super::font::{glyph_pixel, GLYPH_HEIGHT, GLYPH_WIDTH};

/// Row-major 8-bit RGB image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, fill: [u8; 3]) -> Self {
        let mut pixels = Vec::with_capacity(width * height * 3);
        for _ in 0..width * height {
            pixels.extend_from_slice(&fill);
        }
        Self { width, height, pixels }
    }

    pub fn from_raw(width: usize, height: usize, pixels: Vec<u8>) -> Option<Self> {
        (pixels.len() == width * height * 3).then_some(Self { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * 3;
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    /// Writes one pixel; coordinates outside the image are ignored.
    pub fn put(&mut self, x: i64, y: i64, color: [u8; 3]) {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            return;
        }
        let i = (y as usize * self.width + x as usize) * 3;
        self.pixels[i..i + 3].copy_from_slice(&color);
    }

    pub fn fill_rect(&mut self, x: i64, y: i64, w: i64, h: i64, color: [u8; 3]) {
        for yy in y..y + h {
            for xx in x..x + w {
                self.put(xx, yy, color);
            }
        }
    }

    /// Draws text with the 3x5 font, each font pixel `scale` pixels wide,
    /// one blank column between glyphs.
    pub fn draw_text(&mut self, x: i64, y: i64, text: &str, color: [u8; 3], scale: i64) {
        let advance = (GLYPH_WIDTH as i64 + 1) * scale;
        for (i, c) in text.chars().enumerate() {
            let gx = x + i as i64 * advance;
            for py in 0..GLYPH_HEIGHT {
                for px in 0..GLYPH_WIDTH {
                    if glyph_pixel(c, px, py) {
                        self.fill_rect(gx + px as i64 * scale, y + py as i64 * scale, scale, scale, color);
                    }
                }
            }
        }
    }

    /// Pixel width of `text` as drawn by [`draw_text`](Self::draw_text).
    pub fn text_width(text: &str, scale: i64) -> i64 {
        let n = text.chars().count() as i64;
        if n == 0 {
            0
        } else {
            n * (GLYPH_WIDTH as i64 + 1) * scale - scale
        }
    }

    /// Nearest-neighbour upscale by an integer factor.
    pub fn upscale(&self, factor: usize) -> RgbImage {
        let mut out = RgbImage::new(self.width * factor, self.height * factor, [0; 3]);
        for y in 0..out.height {
            for x in 0..out.width {
                let c = self.get(x / factor, y / factor);
                let i = (y * out.width + x) * 3;
                out.pixels[i..i + 3].copy_from_slice(&c);
            }
        }
        out
    }

    /// Encodes as an 8-bit RGB, non-interlaced PNG.
    pub fn encode_png(&self) -> Result<Vec<u8>, png::EncodingError> {
        let mut buf = Vec::new();
        self.write_png(&mut buf)?;
        Ok(buf)
    }

    pub fn write_png<W: Write>(&self, out: W) -> Result<(), png::EncodingError> {
        let mut encoder = png::Encoder::new(out, self.width as u32, self.height as u32);
        encoder.set_color(png::ColorType::Rgb);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder.write_header()?;
        writer.write_image_data(&self.pixels)?;
        writer.finish()
    }

    pub fn save_png(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let bytes = self.encode_png().map_err(std::io::Error::other)?;
        std::fs::write(path, bytes)
    }
}
