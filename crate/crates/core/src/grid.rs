//! Evenly spaced parameter grids (`start:step:stop`, both ends inclusive).

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub step: f64,
    pub stop: f64,
}

impl Grid {
    pub fn new(start: f64, step: f64, stop: f64) -> Result<Self> {
        if !(start.is_finite() && step.is_finite() && stop.is_finite()) {
            return invalid("grid bounds must be finite");
        }
        if step <= 0.0 {
            return invalid(format!("grid step must be > 0, got {step}"));
        }
        if stop < start {
            return invalid(format!("grid stop {stop} is below start {start}"));
        }
        Ok(Self { start, step, stop })
    }

    /// Grid points `start + i * step`, rounded to 12 decimals so that decimal
    /// steps print cleanly. The last point is `stop` when it lies on the grid.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n)
            .map(|i| round12(self.start + i as f64 * self.step))
            .collect()
    }
}

fn round12(x: f64) -> f64 {
    let y = (x * 1e12).round() / 1e12;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad grid value {p:?} in {s:?}")))
        };
        match parts.as_slice() {
            [single] => {
                let v = num(single)?;
                Grid::new(v, 1.0, v)
            }
            [start, step, stop] => Grid::new(num(start)?, num(step)?, num(stop)?),
            _ => invalid(format!("grid must be `start:step:stop` or a single value, got {s:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_expands() {
        let g: Grid = "20:5:40".parse().unwrap();
        assert_eq!(g.points(), vec![20.0, 25.0, 30.0, 35.0, 40.0]);
        let g: Grid = "0:0.005:0.5".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 101);
        assert_eq!(p[20], 0.1);
        assert_eq!(p[100], 0.5);
        let g: Grid = "0.3".parse().unwrap();
        assert_eq!(g.points(), vec![0.3]);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!("1:0:2".parse::<Grid>().is_err());
        assert!("2:1:1".parse::<Grid>().is_err());
        assert!("a:1:2".parse::<Grid>().is_err());
        assert!("1:2".parse::<Grid>().is_err());
    }
}
