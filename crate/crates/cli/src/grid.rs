use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// Evenly spaced samples `start, …, stop` (both ends included).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn point(value: f64) -> Self {
        Grid {
            start: value,
            stop: value,
            count: 1,
        }
    }

    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self, String> {
        if !(start.is_finite() && stop.is_finite()) {
            return Err(format!("bounds must be finite, got {start}:{stop}"));
        }
        if count == 0 {
            return Err("count must be at least 1".into());
        }
        if start > stop {
            return Err(format!("start {start} exceeds stop {stop}"));
        }
        Ok(Grid { start, stop, count })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last
                }
            })
            .collect()
    }

    /// The single value of a one-point grid.
    pub fn single(&self) -> Option<f64> {
        (self.count == 1).then_some(self.start)
    }
}

/// Parses `x`, `pi`, `2pi`, `0.5pi`, `pi/4`, `3pi/4`.
pub fn parse_number(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let bad = || format!("cannot parse `{text}` as a number");
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let (head, tail) = (&t[..pos], &t[pos + 2..]);
    let factor = match head.trim_end_matches('*') {
        "" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match tail {
        "" => 1.0,
        d => d
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .ok_or_else(bad)?,
    };
    Ok(factor * PI / divisor)
}

impl FromStr for Grid {
    type Err = String;

    /// `a:b:k` for `k` samples from `a` to `b`, or a single value.
    fn from_str(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Grid::point(parse_number(v)?)),
            [a, b, k] => {
                let count = k
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| format!("cannot parse count `{k}`"))?;
                Grid::new(parse_number(a)?, parse_number(b)?, count)
            }
            _ => Err(format!(
                "expected `start:stop:count` or a single value, got `{text}`"
            )),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}:{:e}:{}", self.start, self.stop, self.count)
    }
}
