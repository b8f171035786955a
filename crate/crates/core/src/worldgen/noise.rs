//! Two-dimensional OpenSimplex gradient noise.
//!
//! Port of the 2014 public-domain OpenSimplex algorithm: a 256-entry
//! permutation shuffled by a 64-bit LCG, eight lattice gradients, and the
//! stretched/squished triangular lattice. Only IEEE-754 add, multiply and
//! compare are used, so results are bit-identical on every platform.

const STRETCH_2D: f64 = -0.211_324_865_405_187; // (1/sqrt(3) - 1) / 2
const SQUISH_2D: f64 = 0.366_025_403_784_439; // (sqrt(3) - 1) / 2
const NORM_2D: f64 = 47.0;

const GRADIENTS_2D: [f64; 16] = [
    5.0, 2.0, 2.0, 5.0, -5.0, 2.0, -2.0, 5.0, 5.0, -2.0, 2.0, -5.0, -5.0, -2.0, -2.0, -5.0,
];

const LCG_MUL: i64 = 6_364_136_223_846_793_005;
const LCG_ADD: i64 = 1_442_695_040_888_963_407;

#[derive(Clone, Debug)]
pub struct OpenSimplex {
    perm: [u8; 256],
}

impl OpenSimplex {
    pub fn new(seed: u64) -> Self {
        let mut perm = [0u8; 256];
        let mut source: [u8; 256] = std::array::from_fn(|i| i as u8);
        let mut state = seed as i64;
        for _ in 0..3 {
            state = state.wrapping_mul(LCG_MUL).wrapping_add(LCG_ADD);
        }
        for i in (0..256usize).rev() {
            state = state.wrapping_mul(LCG_MUL).wrapping_add(LCG_ADD);
            let modulus = i as i64 + 1;
            let mut r = state.wrapping_add(31) % modulus;
            if r < 0 {
                r += modulus;
            }
            let r = r as usize;
            perm[i] = source[r];
            source[r] = source[i];
        }
        Self { perm }
    }

    #[inline]
    fn extrapolate(&self, xsb: i64, ysb: i64, dx: f64, dy: f64) -> f64 {
        let inner = self.perm[(xsb & 0xFF) as usize] as i64;
        let index = (self.perm[((inner + ysb) & 0xFF) as usize] & 0x0E) as usize;
        GRADIENTS_2D[index] * dx + GRADIENTS_2D[index + 1] * dy
    }

    /// Noise value at `(x, y)`, clamped to `[-1, 1]`.
    pub fn noise2(&self, x: f64, y: f64) -> f64 {
        let stretch = (x + y) * STRETCH_2D;
        let xs = x + stretch;
        let ys = y + stretch;
        let mut xsb = xs.floor() as i64;
        let mut ysb = ys.floor() as i64;

        let squish = (xsb + ysb) as f64 * SQUISH_2D;
        let xb = xsb as f64 + squish;
        let yb = ysb as f64 + squish;

        let xins = xs - xsb as f64;
        let yins = ys - ysb as f64;
        let in_sum = xins + yins;

        let mut dx0 = x - xb;
        let mut dy0 = y - yb;
        let mut value = 0.0;

        let dx1 = dx0 - 1.0 - SQUISH_2D;
        let dy1 = dy0 - SQUISH_2D;
        let attn1 = 2.0 - dx1 * dx1 - dy1 * dy1;
        if attn1 > 0.0 {
            let a = attn1 * attn1;
            value += a * a * self.extrapolate(xsb + 1, ysb, dx1, dy1);
        }

        let dx2 = dx0 - SQUISH_2D;
        let dy2 = dy0 - 1.0 - SQUISH_2D;
        let attn2 = 2.0 - dx2 * dx2 - dy2 * dy2;
        if attn2 > 0.0 {
            let a = attn2 * attn2;
            value += a * a * self.extrapolate(xsb, ysb + 1, dx2, dy2);
        }

        let (xsv_ext, ysv_ext, dx_ext, dy_ext);
        if in_sum <= 1.0 {
            let zins = 1.0 - in_sum;
            if zins > xins || zins > yins {
                if xins > yins {
                    xsv_ext = xsb + 1;
                    ysv_ext = ysb - 1;
                    dx_ext = dx0 - 1.0;
                    dy_ext = dy0 + 1.0;
                } else {
                    xsv_ext = xsb - 1;
                    ysv_ext = ysb + 1;
                    dx_ext = dx0 + 1.0;
                    dy_ext = dy0 - 1.0;
                }
            } else {
                xsv_ext = xsb + 1;
                ysv_ext = ysb + 1;
                dx_ext = dx0 - 1.0 - 2.0 * SQUISH_2D;
                dy_ext = dy0 - 1.0 - 2.0 * SQUISH_2D;
            }
        } else {
            let zins = 2.0 - in_sum;
            if zins < xins || zins < yins {
                if xins > yins {
                    xsv_ext = xsb + 2;
                    ysv_ext = ysb;
                    dx_ext = dx0 - 2.0 - 2.0 * SQUISH_2D;
                    dy_ext = dy0 - 2.0 * SQUISH_2D;
                } else {
                    xsv_ext = xsb;
                    ysv_ext = ysb + 2;
                    dx_ext = dx0 - 2.0 * SQUISH_2D;
                    dy_ext = dy0 - 2.0 - 2.0 * SQUISH_2D;
                }
            } else {
                dx_ext = dx0;
                dy_ext = dy0;
                xsv_ext = xsb;
                ysv_ext = ysb;
            }
            xsb += 1;
            ysb += 1;
            dx0 = dx0 - 1.0 - 2.0 * SQUISH_2D;
            dy0 = dy0 - 1.0 - 2.0 * SQUISH_2D;
        }

        let attn0 = 2.0 - dx0 * dx0 - dy0 * dy0;
        if attn0 > 0.0 {
            let a = attn0 * attn0;
            value += a * a * self.extrapolate(xsb, ysb, dx0, dy0);
        }

        let attn_ext = 2.0 - dx_ext * dx_ext - dy_ext * dy_ext;
        if attn_ext > 0.0 {
            let a = attn_ext * attn_ext;
            value += a * a * self.extrapolate(xsv_ext, ysv_ext, dx_ext, dy_ext);
        }

        (value / NORM_2D).clamp(-1.0, 1.0)
    }
}

/// Convenience wrapper that builds the permutation on every call. Prefer
/// holding an [`OpenSimplex`] when sampling many points.
pub fn noise2(seed: u64, x: f64, y: f64) -> f64 {
    OpenSimplex::new(seed).noise2(x, y)
}
