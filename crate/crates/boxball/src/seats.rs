//! The carrier with seat numbers and the seat number configuration.
//!
//! Seats of the carrier are indexed 1, 2, ...; a picked-up ball boards the
//! empty seat with the smallest number and a dropped ball leaves the occupied
//! seat with the smallest number. Marking each site with the seat it touches
//! (or as a record when an empty carrier passes an empty site) yields the
//! seat number configuration, from which the matching points `tau`, the
//! effective-position counters `xi` and the linearization data `zeta` are
//! all derived.

use crate::config::{BallConfig, Window};
use crate::evolution::Capacity;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Boarding (`Up`) or alighting (`Down`) side of a seat mark.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Arrow {
    Up,
    Down,
}

/// The single mark carried by a site: a `(k, up)`-seat, a `(k, down)`-seat,
/// or a record.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Mark {
    Up(usize),
    Down(usize),
    Record,
}

/// Seat occupancy `W_k(x) in {0, 1}` for `k = 1..=max_seat`, `x = 0..=window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeatTrace {
    occupancy: Vec<Vec<u8>>,
    window: usize,
}

impl SeatTrace {
    /// Occupancy of seat `k` after site `x`; zero for seats never used.
    #[inline]
    pub fn get(&self, k: usize, x: usize) -> u8 {
        debug_assert!(k >= 1);
        if k > self.occupancy.len() {
            0
        } else {
            self.occupancy[k - 1][x]
        }
    }

    /// Largest seat index that is ever occupied.
    pub fn max_seat(&self) -> usize {
        self.occupancy.len()
    }

    pub fn window(&self) -> usize {
        self.window
    }
}

/// The seat number configuration of a ball configuration on a window,
/// together with the cumulative tables every derived quantity reads from.
#[derive(Clone, Debug)]
pub struct SeatNumberConfig {
    window: usize,
    max_seat: usize,
    marks: Vec<Mark>,
    /// `cum_up[k][x]` = number of `(k, up)`-seats in `1..=x`; row `max_seat+1` is zero.
    cum_up: Vec<Vec<usize>>,
    cum_down: Vec<Vec<usize>>,
    /// `sum_up[k][x]` = number of `(l, up)`-seats with `l <= k` in `1..=x`.
    sum_up: Vec<Vec<usize>>,
    sum_down: Vec<Vec<usize>>,
}

/// Computes the seat occupancy trace over `1..=window`.
pub fn seat_trace(cfg: &BallConfig, window: Window) -> SeatTrace {
    seat_numbers(cfg, window).trace()
}

/// Computes the seat number configuration over `1..=window`.
///
/// Panics if the window does not cover every ball of `cfg`.
pub fn seat_numbers(cfg: &BallConfig, window: Window) -> SeatNumberConfig {
    SeatNumberConfig::new(cfg, window)
}

impl SeatNumberConfig {
    pub fn new(cfg: &BallConfig, window: Window) -> Self {
        let l = window.0;
        assert!(
            cfg.last_ball().unwrap_or(0) <= l,
            "window {l} does not cover the last ball of the configuration"
        );

        // Left-to-right scan: `occupied[k]` mirrors seat k of the carrier.
        let mut occupied: Vec<bool> = Vec::new();
        let mut marks = Vec::with_capacity(l);
        let mut max_seat = 0usize;
        for x in 1..=l {
            if cfg.get(x) == 1 {
                let k = match occupied.iter().position(|&o| !o) {
                    Some(i) => i + 1,
                    None => {
                        occupied.push(false);
                        occupied.len()
                    }
                };
                occupied[k - 1] = true;
                max_seat = max_seat.max(k);
                marks.push(Mark::Up(k));
            } else {
                match occupied.iter().position(|&o| o) {
                    Some(i) => {
                        occupied[i] = false;
                        marks.push(Mark::Down(i + 1));
                    }
                    None => marks.push(Mark::Record),
                }
            }
        }

        let rows = max_seat + 2; // index 0 unused, row max_seat + 1 stays zero
        let mut cum_up = vec![vec![0usize; l + 1]; rows];
        let mut cum_down = vec![vec![0usize; l + 1]; rows];
        for x in 1..=l {
            for k in 1..rows {
                cum_up[k][x] = cum_up[k][x - 1];
                cum_down[k][x] = cum_down[k][x - 1];
            }
            match marks[x - 1] {
                Mark::Up(k) => cum_up[k][x] += 1,
                Mark::Down(k) => cum_down[k][x] += 1,
                Mark::Record => {}
            }
        }
        let mut sum_up = vec![vec![0usize; l + 1]; rows];
        let mut sum_down = vec![vec![0usize; l + 1]; rows];
        for k in 1..rows {
            for x in 0..=l {
                sum_up[k][x] = sum_up[k - 1][x] + cum_up[k][x];
                sum_down[k][x] = sum_down[k - 1][x] + cum_down[k][x];
            }
        }

        SeatNumberConfig {
            window: l,
            max_seat,
            marks,
            cum_up,
            cum_down,
            sum_up,
            sum_down,
        }
    }

    /// Seat number configuration on the safe window of `cfg`.
    pub fn at_safe_window(cfg: &BallConfig) -> Self {
        Self::new(cfg, Window::safe_for(cfg))
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Largest seat index ever occupied (bounded by the ball count).
    pub fn max_seat(&self) -> usize {
        self.max_seat
    }

    /// The mark of site `x` (1-based; sites beyond the window are records).
    pub fn mark(&self, x: usize) -> Mark {
        if x >= 1 && x <= self.window {
            self.marks[x - 1]
        } else {
            Mark::Record
        }
    }

    /// The underlying site value: 1 exactly at up-seats.
    pub fn eta(&self, x: usize) -> u8 {
        matches!(self.mark(x), Mark::Up(_)) as u8
    }

    pub fn eta_up(&self, k: usize, x: usize) -> u8 {
        (self.mark(x) == Mark::Up(k)) as u8
    }

    pub fn eta_down(&self, k: usize, x: usize) -> u8 {
        (self.mark(x) == Mark::Down(k)) as u8
    }

    pub fn is_record(&self, x: usize) -> bool {
        self.mark(x) == Mark::Record
    }

    /// Cumulative seat count: the number of `(k, sigma)`-seats in `1..=x`.
    #[inline]
    pub fn cum(&self, sigma: Arrow, k: usize, x: usize) -> usize {
        debug_assert!(k >= 1 && x <= self.window);
        if k > self.max_seat {
            return 0;
        }
        match sigma {
            Arrow::Up => self.cum_up[k][x],
            Arrow::Down => self.cum_down[k][x],
        }
    }

    /// Cumulative count over seats `1..=k`: `sum_{l<=k} cum(sigma, l, x)`.
    #[inline]
    pub fn cum_le(&self, sigma: Arrow, k: usize, x: usize) -> usize {
        debug_assert!(x <= self.window);
        let k = k.min(self.max_seat);
        if k == 0 {
            return 0;
        }
        match sigma {
            Arrow::Up => self.sum_up[k][x],
            Arrow::Down => self.sum_down[k][x],
        }
    }

    /// Occupancy `W_k(x)` of seat `k` after site `x`.
    #[inline]
    pub fn occupancy(&self, k: usize, x: usize) -> u8 {
        (self.cum(Arrow::Up, k, x) - self.cum(Arrow::Down, k, x)) as u8
    }

    /// Carrier load of capacity `cap` after site `x`, summed from seats.
    pub fn carrier_load(&self, cap: Capacity, x: usize) -> usize {
        let k = cap.min_with(self.max_seat);
        self.cum_le(Arrow::Up, k, x) - self.cum_le(Arrow::Down, k, x)
    }

    /// Materializes the occupancy matrix.
    pub fn trace(&self) -> SeatTrace {
        let occupancy = (1..=self.max_seat)
            .map(|k| (0..=self.window).map(|x| self.occupancy(k, x)).collect())
            .collect();
        SeatTrace {
            occupancy,
            window: self.window,
        }
    }

    /// `m_k^sigma(x)`: the running count of `(k, sigma)`-seats minus
    /// `(k+1, sigma)`-seats, which counts matched size-`k` components.
    #[inline]
    pub fn m_value(&self, k: usize, sigma: Arrow, x: usize) -> usize {
        self.cum(sigma, k, x) - self.cum(sigma, k + 1, x)
    }

    /// The `j`-th leftmost matching point (1-based `j`), or `None` if the
    /// window contains fewer than `j` matches. On a safe window the answer
    /// is definitive for finite configurations.
    pub fn tau(&self, k: usize, j: usize) -> Option<usize> {
        debug_assert!(j >= 1);
        self.tau_list(k).get(j - 1).copied()
    }

    /// All matching points of rank `k` in the window: entry `j-1` is `tau_k(j)`.
    pub fn tau_list(&self, k: usize) -> Vec<usize> {
        let mut taus = Vec::new();
        if k > self.max_seat {
            return taus;
        }
        let mut reached = 0usize;
        for x in 1..=self.window {
            let m = self
                .m_value(k, Arrow::Up, x)
                .min(self.m_value(k, Arrow::Down, x));
            if m > reached {
                debug_assert_eq!(m, reached + 1);
                taus.push(x);
                reached = m;
            }
        }
        taus
    }

    /// `xi_k(x)`: the number of sites in `1..=x` that are records or
    /// `(l, sigma)`-seats with `l > k`.
    #[inline]
    pub fn xi(&self, k: usize, x: usize) -> usize {
        x - self.cum_le(Arrow::Up, k, x) - self.cum_le(Arrow::Down, k, x)
    }

    /// `s_k(i)`: the smallest `x` with `xi_k(x) = i`, or `None` if the window
    /// never reaches count `i`.
    pub fn s_anchor(&self, k: usize, i: usize) -> Option<usize> {
        self.s_list(k).get(i).copied()
    }

    /// Anchor table: entry `i` is `s_k(i)`, starting with `s_k(0) = 0`.
    pub fn s_list(&self, k: usize) -> Vec<usize> {
        let mut anchors = vec![0usize];
        for x in 1..=self.window {
            if self.xi(k, x) > self.xi(k, x - 1) {
                anchors.push(x);
            }
        }
        anchors
    }

    /// Counts `(k, sigma)`-seats at site `x` summed over `sigma`, for the
    /// slot equivalence; 1 when the site is any rank-`k` seat.
    pub fn seat_indicator(&self, k: usize, x: usize) -> u8 {
        match self.mark(x) {
            Mark::Up(l) | Mark::Down(l) if l == k => 1,
            _ => 0,
        }
    }

    /// Sites carrying an `(k, up)` mark.
    pub fn up_sites(&self, k: usize) -> Vec<usize> {
        (1..=self.window).filter(|&x| self.eta_up(k, x) == 1).collect()
    }

    /// Sites carrying an `(k, down)` mark.
    pub fn down_sites(&self, k: usize) -> Vec<usize> {
        (1..=self.window)
            .filter(|&x| self.eta_down(k, x) == 1)
            .collect()
    }

    /// Record sites within the window.
    pub fn records(&self) -> Vec<usize> {
        (1..=self.window).filter(|&x| self.is_record(x)).collect()
    }

    /// `E_k(x)`: the number of `(l, up)`-seats with `l <= k` in `1..=x`,
    /// which equals the KKR energy of the prefix.
    #[inline]
    pub fn energy(&self, k: usize, x: usize) -> usize {
        self.cum_le(Arrow::Up, k, x)
    }

    /// `p_k(x) = x - 2 E_k(x)`, the KKR vacancy of the prefix.
    #[inline]
    pub fn vacancy(&self, k: usize, x: usize) -> i64 {
        x as i64 - 2 * self.energy(k, x) as i64
    }

    /// The effective-position histogram `zeta`: `zeta_k(i)` counts matching
    /// points of rank `k` at effective position `i`. Complete only on a safe
    /// window (a trailing record must exist).
    pub fn zeta(&self) -> SeatZeta {
        let mut entries = BTreeMap::new();
        let mut xi_tables = Vec::with_capacity(self.max_seat);
        let mut anchors = Vec::with_capacity(self.max_seat);
        for k in 1..=self.max_seat {
            for x in self.tau_list(k) {
                *entries.entry((k, self.xi(k, x))).or_insert(0) += 1;
            }
            xi_tables.push((0..=self.window).map(|x| self.xi(k, x)).collect());
            anchors.push(self.s_list(k));
        }
        SeatZeta {
            entries,
            xi: xi_tables,
            anchors,
        }
    }
}

/// Sparse linearization data `(k, i) -> zeta_k(i)` plus the `xi` tables and
/// anchor positions it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeatZeta {
    /// Nonzero counts, keyed by `(k, i)`.
    pub entries: BTreeMap<(usize, usize), usize>,
    /// `xi[k-1][x]` for `k = 1..=max_seat`, `x = 0..=window`.
    pub xi: Vec<Vec<usize>>,
    /// `anchors[k-1][i]` is `s_k(i)`.
    pub anchors: Vec<Vec<usize>>,
}

impl SeatZeta {
    /// The entries shifted by `min(k, ell)` in `i`, the exact image predicted
    /// for one time step under capacity `ell`.
    pub fn shifted(&self, cap: Capacity) -> BTreeMap<(usize, usize), usize> {
        self.entries
            .iter()
            .map(|(&(k, i), &c)| ((k, i + cap.min_with(k)), c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eta_a() -> BallConfig {
        BallConfig::parse("1100111011000110000").unwrap()
    }

    fn snc_a() -> SeatNumberConfig {
        SeatNumberConfig::new(&eta_a(), Window(19))
    }

    #[test]
    fn trace_golden_rows() {
        let trace = seat_trace(&eta_a(), Window(19));
        let row1: Vec<u8> = (0..=19).map(|x| trace.get(1, x)).collect();
        assert_eq!(row1, [0, 1, 1, 0, 0, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0]);
        let row3: Vec<u8> = (0..=19).map(|x| trace.get(3, x)).collect();
        assert_eq!(row3, [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn trace_empty_and_pair() {
        let empty = seat_trace(&BallConfig::empty(), Window(4));
        assert_eq!(empty.max_seat(), 0);

        // hand trace for "11": ball 1 boards seat 1, ball 2 boards seat 2
        let pair = seat_trace(&BallConfig::parse("11").unwrap(), Window(2));
        assert_eq!((0..=2).map(|x| pair.get(1, x)).collect::<Vec<_>>(), [0, 1, 1]);
        assert_eq!((0..=2).map(|x| pair.get(2, x)).collect::<Vec<_>>(), [0, 0, 1]);
    }

    #[test]
    fn marks_golden() {
        let s = snc_a();
        assert_eq!(s.up_sites(1), vec![1, 5, 9, 14]);
        assert_eq!(s.down_sites(1), vec![3, 8, 11, 16]);
        assert_eq!(s.up_sites(4), vec![10]);
        assert_eq!(s.down_sites(4), vec![18]);
        assert_eq!(s.records(), vec![19]);
    }

    #[test]
    fn marks_single_soliton() {
        let s = SeatNumberConfig::new(&BallConfig::parse("11110000").unwrap(), Window(8));
        for k in 1..=4 {
            assert_eq!(s.up_sites(k), vec![k]);
            assert_eq!(s.down_sites(k), vec![4 + k]);
        }
    }

    #[test]
    fn marks_empty_all_records() {
        let s = SeatNumberConfig::new(&BallConfig::empty(), Window(5));
        assert_eq!(s.records(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn every_site_has_exactly_one_mark() {
        let s = snc_a();
        for x in 1..=s.window() {
            let ups: usize = (1..=s.max_seat()).map(|k| s.eta_up(k, x) as usize).sum();
            let downs: usize = (1..=s.max_seat()).map(|k| s.eta_down(k, x) as usize).sum();
            assert_eq!(ups + downs + s.is_record(x) as usize, 1);
            assert_eq!(ups as u8, s.eta(x));
        }
    }

    #[test]
    fn m_values_golden() {
        let s = snc_a();
        assert_eq!(s.m_value(2, Arrow::Up, 4), 1);
        assert_eq!(s.m_value(2, Arrow::Down, 4), 1);
        assert_eq!(s.m_value(4, Arrow::Up, 18), 1);
        assert_eq!(s.m_value(4, Arrow::Down, 18), 1);
        assert_eq!(s.m_value(3, Arrow::Up, 0), 0);
    }

    #[test]
    fn tau_golden() {
        let s = snc_a();
        assert_eq!(s.tau(2, 1), Some(4));
        assert_eq!(s.tau(1, 1), Some(9));
        assert_eq!(s.tau(2, 2), Some(17));
        assert_eq!(s.tau(4, 1), Some(18));
        assert_eq!(s.tau(3, 1), None);

        let empty = SeatNumberConfig::new(&BallConfig::empty(), Window(3));
        assert_eq!(empty.tau(1, 1), None);

        // both m rows of "10" first reach 1 at x = 2
        let one = SeatNumberConfig::new(&BallConfig::parse("10").unwrap(), Window(2));
        assert_eq!(one.tau(1, 1), Some(2));
    }

    #[test]
    fn xi_golden() {
        let s = snc_a();
        assert_eq!(s.xi(1, 19), 11);
        assert_eq!(s.xi(2, 19), 5);
        assert_eq!(s.xi(3, 19), 3);
        assert_eq!(s.xi(4, 19), 1);
        for k in 1..=4 {
            assert_eq!(s.xi(k, 0), 0);
        }
        // both sites of "10" are rank-1 seats
        let one = SeatNumberConfig::new(&BallConfig::parse("10").unwrap(), Window(2));
        assert_eq!(one.xi(1, 2), 0);
    }

    #[test]
    fn s_anchor_golden() {
        let s = snc_a();
        assert_eq!(s.s_anchor(1, 1), Some(2));
        assert_eq!(s.s_anchor(4, 1), Some(19));
        for k in 1..=4 {
            assert_eq!(s.s_anchor(k, 0), Some(0));
        }
    }

    #[test]
    fn zeta_golden_pair() {
        let z = snc_a().zeta();
        let expected: BTreeMap<(usize, usize), usize> =
            [((4, 0), 1), ((2, 0), 1), ((2, 3), 1), ((1, 4), 1)].into_iter().collect();
        assert_eq!(z.entries, expected);

        let next = crate::evolution::evolve(&eta_a(), Capacity::Infinite);
        let zt = SeatNumberConfig::at_safe_window(&next).zeta();
        let expected_t: BTreeMap<(usize, usize), usize> =
            [((4, 4), 1), ((2, 2), 1), ((2, 5), 1), ((1, 5), 1)].into_iter().collect();
        assert_eq!(zt.entries, expected_t);

        // the two sides of the one-step linearization
        assert_eq!(zt.entries, z.shifted(Capacity::Infinite));
    }

    #[test]
    fn zeta_empty() {
        let z = SeatNumberConfig::new(&BallConfig::empty(), Window(2)).zeta();
        assert!(z.is_zero());
    }

    #[test]
    fn seat_sum_matches_carrier() {
        let cfg = eta_a();
        let s = snc_a();
        for cap in [Capacity::Finite(1), Capacity::Finite(2), Capacity::Finite(4), Capacity::Infinite] {
            let trace = crate::evolution::carrier_trace(&cfg, cap, Window(19));
            for x in 0..=19 {
                assert_eq!(s.carrier_load(cap, x), trace.get(x));
            }
        }
    }
}
