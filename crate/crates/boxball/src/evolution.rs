//! Carrier transport and the one-step evolution operator.
//!
//! A carrier of capacity `ell` sweeps left to right, picking up a ball at
//! every occupied site while not full and dropping one at every vacant site
//! while not empty. `W(x)` records its load after visiting site `x`, and one
//! time step of the dynamics moves each site's content by
//! `(T eta)(x) = eta(x) + W(x-1) - W(x)`.

use crate::config::{BallConfig, Window};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Carrier capacity: a positive integer or unbounded.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Capacity {
    Finite(usize),
    Infinite,
}

impl Capacity {
    /// `min(k, ell)`, the shift applied to rank-`k` data by one step.
    pub fn min_with(self, k: usize) -> usize {
        match self {
            Capacity::Finite(l) => k.min(l),
            Capacity::Infinite => k,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "inf" | "Inf" | "INF" | "infinite" | "infinity" | "∞" => Ok(Capacity::Infinite),
            num => {
                let value: usize = num
                    .parse()
                    .map_err(|_| Error::Argument(format!("capacity {num:?} is not a positive integer or 'inf'")))?;
                if value == 0 {
                    return Err(Error::Argument("capacity must be at least 1".into()));
                }
                Ok(Capacity::Finite(value))
            }
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(l) => write!(f, "{l}"),
            Capacity::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Capacity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Capacity::parse(s)
    }
}

/// The carrier load `W(x)` for `x = 0..=window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierTrace {
    values: Vec<usize>,
}

impl CarrierTrace {
    #[inline]
    pub fn get(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn window(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// Runs the carrier recursion over `1..=window` and returns the load trace.
pub fn carrier_trace(cfg: &BallConfig, cap: Capacity, window: Window) -> CarrierTrace {
    let mut values = Vec::with_capacity(window.0 + 1);
    let mut w = 0usize;
    values.push(0);
    for x in 1..=window.0 {
        if cfg.get(x) == 1 {
            let room = match cap {
                Capacity::Finite(l) => l - w,
                Capacity::Infinite => 1,
            };
            w += room.min(1);
        } else {
            w -= w.min(1);
        }
        values.push(w);
    }
    CarrierTrace { values }
}

/// One step of the dynamics. The output window is the input window plus the
/// ball count, so no ball is ever truncated.
pub fn evolve(cfg: &BallConfig, cap: Capacity) -> BallConfig {
    let out_window = cfg.window() + cfg.ball_count();
    let trace = carrier_trace(cfg, cap, Window(out_window));
    let bits: Vec<u8> = (1..=out_window)
        .map(|x| {
            let v = cfg.get(x) as i64 + trace.get(x - 1) as i64 - trace.get(x) as i64;
            debug_assert!(v == 0 || v == 1, "evolution produced a non-binary value");
            v as u8
        })
        .collect();
    let out = BallConfig::new(bits).expect("binary by construction");
    debug_assert_eq!(out.ball_count(), cfg.ball_count());
    out
}

/// The orbit `cfg, T cfg, ..., T^steps cfg` (so `steps + 1` entries).
pub fn evolve_n(cfg: &BallConfig, cap: Capacity, steps: usize) -> Vec<BallConfig> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(cfg.clone());
    for _ in 0..steps {
        out.push(evolve(out.last().unwrap(), cap));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eta_a() -> BallConfig {
        BallConfig::parse("110011101100011000").unwrap()
    }

    #[test]
    fn carrier_trace_golden_values() {
        let trace = carrier_trace(&eta_a(), Capacity::Finite(4), Window(19));
        assert_eq!(trace.get(10), 4);
        assert_eq!(trace.get(18), 0);
        assert_eq!(trace.get(19), 0);
        // full golden load row
        assert_eq!(
            trace.values(),
            &[0, 1, 2, 1, 0, 1, 2, 3, 2, 3, 4, 3, 2, 1, 2, 3, 2, 1, 0, 0]
        );
    }

    #[test]
    fn carrier_trace_empty_config() {
        let trace = carrier_trace(&BallConfig::empty(), Capacity::Infinite, Window(6));
        assert!(trace.values().iter().all(|&w| w == 0));
    }

    #[test]
    fn carrier_trace_small_capacity() {
        // hand trace of the recursion for eta = 111, capacity 2
        let cfg = BallConfig::parse("111").unwrap();
        let trace = carrier_trace(&cfg, Capacity::Finite(2), Window(3));
        assert_eq!(trace.values(), &[0, 1, 2, 2]);
    }

    #[test]
    fn evolve_golden_single_step() {
        let eta_b = BallConfig::parse("111000010010").unwrap();
        let next = evolve(&eta_b, Capacity::Infinite);
        assert_eq!(next, BallConfig::parse("000111001001").unwrap());
    }

    #[test]
    fn evolve_empty_is_empty() {
        assert_eq!(evolve(&BallConfig::empty(), Capacity::Infinite), BallConfig::empty());
    }

    #[test]
    fn evolve_capacity_one() {
        // capacity-1 carrier moves one ball two sites per step
        let cfg = BallConfig::parse("1100").unwrap();
        assert_eq!(evolve(&cfg, Capacity::Finite(1)), BallConfig::parse("0110").unwrap());
    }

    #[test]
    fn evolve_n_zero_steps() {
        let cfg = eta_a();
        let orbit = evolve_n(&cfg, Capacity::Infinite, 0);
        assert_eq!(orbit.len(), 1);
        assert_eq!(orbit[0], cfg);
    }

    #[test]
    fn free_ball_moves_at_speed_one() {
        let mut cfg = BallConfig::parse("1").unwrap();
        for t in 1..=6 {
            cfg = evolve(&cfg, Capacity::Infinite);
            assert_eq!(cfg.ball_sites(), vec![1 + t]);
        }
    }

    #[test]
    fn ball_conservation() {
        let cfg = eta_a();
        for cap in [Capacity::Finite(1), Capacity::Finite(3), Capacity::Infinite] {
            assert_eq!(evolve(&cfg, cap).ball_count(), cfg.ball_count());
        }
    }

    #[test]
    fn capacity_parsing() {
        assert_eq!(Capacity::parse("inf").unwrap(), Capacity::Infinite);
        assert_eq!(Capacity::parse("3").unwrap(), Capacity::Finite(3));
        assert!(Capacity::parse("0").is_err());
        assert!(Capacity::parse("-1").is_err());
    }
}
