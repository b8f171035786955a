/// Periodic day/night clock, counted in ticks within the current day.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Daylight {
    tick_of_day: u32,
    day_length: u32,
    night_start: u32,
}

impl Daylight {
    pub fn new(day_length: u32, night_start: u32) -> Self {
        Self {
            tick_of_day: 0,
            day_length,
            night_start,
        }
    }

    /// Phase in `[0, 1)`.
    pub fn clock(&self) -> f64 {
        self.tick_of_day as f64 / self.day_length as f64
    }

    pub fn tick_of_day(&self) -> u32 {
        self.tick_of_day
    }

    pub fn set_tick_of_day(&mut self, tick: u32) {
        self.tick_of_day = tick % self.day_length;
    }

    #[inline]
    pub fn is_night(&self) -> bool {
        self.tick_of_day >= self.night_start
    }

    /// 1.0 during the day, 0.0 at night.
    pub fn light_level(&self) -> f64 {
        if self.is_night() {
            0.0
        } else {
            1.0
        }
    }

    pub fn advance(&mut self) {
        self.tick_of_day += 1;
        if self.tick_of_day >= self.day_length {
            self.tick_of_day = 0;
        }
    }

    pub fn day_length(&self) -> u32 {
        self.day_length
    }

    pub fn night_start(&self) -> u32 {
        self.night_start
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraps_below_one() {
        let mut d = Daylight::new(300, 200);
        d.set_tick_of_day(299);
        assert!(d.clock() > 0.99 && d.clock() < 1.0);
        d.advance();
        assert_eq!(d.clock(), 0.0);
    }

    #[test]
    fn full_day_returns_to_phase() {
        let mut d = Daylight::new(300, 200);
        d.set_tick_of_day(123);
        let start = d;
        for _ in 0..300 {
            d.advance();
            assert!((0.0..1.0).contains(&d.clock()));
        }
        assert_eq!(d, start);
    }

    #[test]
    fn night_window() {
        let mut d = Daylight::new(300, 200);
        let nights = (0..300)
            .filter(|_| {
                let n = d.is_night();
                d.advance();
                n
            })
            .count();
        assert_eq!(nights, 100);
    }
}
