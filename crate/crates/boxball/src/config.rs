//! Ball configurations on the half line: parsing, rendering and generation.
//!
//! Sites are numbered 1, 2, ... and site 0 is always vacant. A configuration
//! stores an explicit window of sites; everything beyond the window is
//! implicitly empty.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finite-support 0/1 configuration on sites `1..=window`.
///
/// Equality and hashing ignore trailing empty sites, so two configurations
/// that differ only in window padding compare equal.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BallConfig {
    bits: Vec<u8>,
}

/// An explicit site count used when a computation needs more room than the
/// configuration's own window (trailing records, stabilization).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Window(pub usize);

impl Window {
    /// The safe window for `cfg`: last ball position + ball count + 1.
    ///
    /// A carrier holding `c` balls empties after at most `c` vacant sites, so
    /// the final site of the safe window is always a record. Every analysis
    /// that needs a trailing record (KKR stabilization, Takahashi-Satsuma
    /// termination, zeta extraction) is complete on this window.
    pub fn safe_for(cfg: &BallConfig) -> Window {
        Window(cfg.safe_window())
    }
}

impl BallConfig {
    /// Builds a configuration from explicit 0/1 site values (site 1 first).
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::Argument(format!(
                "site value {} at site {} is not 0 or 1",
                bits[pos],
                pos + 1
            )));
        }
        Ok(BallConfig { bits })
    }

    /// The empty configuration (window 0, no balls).
    pub fn empty() -> Self {
        BallConfig { bits: Vec::new() }
    }

    /// Parses a 0/1 string; whitespace is ignored. Site 1 is the first
    /// character. Any other character is an error naming its 1-based
    /// position in the input.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for (idx, ch) in text.chars().enumerate() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse {
                        position: idx + 1,
                        found: c,
                    })
                }
            }
        }
        Ok(BallConfig { bits })
    }

    /// Renders exactly `window.0` characters of `0`/`1`, padding with zeros
    /// past the stored window.
    pub fn render(&self, window: Window) -> String {
        (1..=window.0)
            .map(|x| if self.get(x) == 1 { '1' } else { '0' })
            .collect()
    }

    /// Site value at 1-based site `x`; zero for `x == 0` and beyond the window.
    #[inline]
    pub fn get(&self, x: usize) -> u8 {
        if x == 0 || x > self.bits.len() {
            0
        } else {
            self.bits[x - 1]
        }
    }

    /// Stored window length.
    pub fn window(&self) -> usize {
        self.bits.len()
    }

    /// Number of balls.
    pub fn ball_count(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    /// Sites that hold a ball, in increasing order.
    pub fn ball_sites(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Position of the last ball, if any.
    pub fn last_ball(&self) -> Option<usize> {
        self.bits.iter().rposition(|&b| b == 1).map(|i| i + 1)
    }

    /// Safe window length: last ball + ball count + 1 (at least 1).
    pub fn safe_window(&self) -> usize {
        self.last_ball().unwrap_or(0) + self.ball_count() + 1
    }

    /// Copy with all trailing empty sites removed.
    pub fn canonical(&self) -> BallConfig {
        let len = self.last_ball().unwrap_or(0);
        BallConfig {
            bits: self.bits[..len].to_vec(),
        }
    }

    /// Copy with the window extended (never truncated) to at least `window`.
    pub fn padded(&self, window: Window) -> BallConfig {
        let mut bits = self.bits.clone();
        if bits.len() < window.0 {
            bits.resize(window.0, 0);
        }
        BallConfig { bits }
    }

    /// Deterministic random configuration: each of `length` sites holds a
    /// ball independently with probability `density`. Same arguments give
    /// the same output on every platform.
    pub fn random(length: usize, density: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::Argument(format!(
                "density {density} outside [0, 1]"
            )));
        }
        let mut rng = SplitMix64::new(seed);
        let bits = (0..length)
            .map(|_| if rng.next_unit() < density { 1 } else { 0 })
            .collect();
        Ok(BallConfig { bits })
    }

    /// A deterministic batch of random configurations; entry `i` uses a
    /// per-configuration seed drawn from a master stream seeded with `seed`.
    /// The fuzz harness draws its inputs the same way, so any reported
    /// counterexample index is reproducible here.
    pub fn random_batch(count: usize, length: usize, density: f64, seed: u64) -> Result<Vec<Self>> {
        let mut master = SplitMix64::new(seed);
        (0..count)
            .map(|_| Self::random(length, density, master.next_u64()))
            .collect()
    }

    fn trimmed(&self) -> &[u8] {
        let len = self.last_ball().unwrap_or(0);
        &self.bits[..len]
    }
}

impl PartialEq for BallConfig {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for BallConfig {}

impl std::hash::Hash for BallConfig {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl fmt::Display for BallConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Window(self.window())))
    }
}

impl std::str::FromStr for BallConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BallConfig::parse(s)
    }
}

/// SplitMix64: the fixed 64-bit generator behind `BallConfig::random`.
/// Chosen for reproducibility, not statistical quality.
pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from [0, 1) with 53 random bits.
    pub(crate) fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_golden_configuration() {
        let cfg = BallConfig::parse("110011101100011000").unwrap();
        assert_eq!(cfg.ball_sites(), vec![1, 2, 5, 6, 7, 9, 10, 14, 15]);
        assert_eq!(cfg.window(), 18);
    }

    #[test]
    fn parse_empty_and_smallest() {
        let empty = BallConfig::parse("").unwrap();
        assert_eq!(empty.ball_count(), 0);
        assert_eq!(empty.window(), 0);

        let one = BallConfig::parse("10").unwrap();
        assert_eq!(one.ball_sites(), vec![1]);
        assert_eq!(one.window(), 2);
    }

    #[test]
    fn parse_rejects_illegal_character() {
        let err = BallConfig::parse("01x1").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                position: 3,
                found: 'x'
            }
        );
    }

    #[test]
    fn parse_skips_whitespace() {
        let cfg = BallConfig::parse("1100 1110 1\t1").unwrap();
        assert_eq!(cfg.window(), 10);
        assert_eq!(cfg.ball_count(), 7);
    }

    #[test]
    fn render_pads_with_zeros() {
        let cfg = BallConfig::parse("110011101100011000").unwrap();
        assert_eq!(cfg.render(Window(19)), "1100111011000110000");
        assert_eq!(BallConfig::empty().render(Window(4)), "0000");
    }

    #[test]
    fn render_parse_round_trip() {
        let s = "1100111011000110000";
        let cfg = BallConfig::parse(s).unwrap();
        assert_eq!(cfg.render(Window(s.len())), s);
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        let a = BallConfig::parse("101").unwrap();
        let b = BallConfig::parse("10100").unwrap();
        assert_eq!(a, b);
        assert_ne!(a, BallConfig::parse("1010100").unwrap());
    }

    #[test]
    fn random_degenerate_densities() {
        let zeros = BallConfig::random(64, 0.0, 7).unwrap();
        assert_eq!(zeros.ball_count(), 0);
        let ones = BallConfig::random(64, 1.0, 7).unwrap();
        assert_eq!(ones.ball_count(), 64);
    }

    #[test]
    fn random_is_reproducible() {
        let a = BallConfig::random(200, 0.4, 12345).unwrap();
        let b = BallConfig::random(200, 0.4, 12345).unwrap();
        assert_eq!(a.render(Window(200)), b.render(Window(200)));
        let c = BallConfig::random(200, 0.4, 12346).unwrap();
        assert_ne!(a.render(Window(200)), c.render(Window(200)));
    }

    #[test]
    fn random_rejects_bad_density() {
        assert!(BallConfig::random(8, 1.5, 0).is_err());
        assert!(BallConfig::random(8, -0.1, 0).is_err());
    }

    #[test]
    fn safe_window_covers_balls_and_records() {
        let cfg = BallConfig::parse("10").unwrap();
        assert_eq!(cfg.safe_window(), 3);
        assert_eq!(BallConfig::empty().safe_window(), 1);
    }
}
