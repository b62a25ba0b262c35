//! Property tests for the invariants that tie the encodings together, on
//! randomly drawn finite configurations.

use boxball::{
    carrier_trace, evolve, interlacing_sequence, kkr_inverse, kkr_stabilized, reconstruct,
    seat_numbers, slot_decomposition, ts_decompose, Arrow, BallConfig, Capacity, Mark,
    SeatNumberConfig, Window,
};
use proptest::prelude::*;

fn configs() -> impl Strategy<Value = BallConfig> {
    prop::collection::vec(0u8..=1, 0..40).prop_map(|bits| BallConfig::new(bits).unwrap())
}

fn capacities() -> impl Strategy<Value = Capacity> {
    prop_oneof![
        (1usize..=5).prop_map(Capacity::Finite),
        Just(Capacity::Infinite),
    ]
}

proptest! {
    #[test]
    fn parse_render_round_trip(bits in prop::collection::vec(0u8..=1, 0..64)) {
        let text: String = bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
        let cfg = BallConfig::parse(&text).unwrap();
        prop_assert_eq!(cfg.render(Window(text.len())), text);
    }

    #[test]
    fn evolution_conserves_balls(cfg in configs(), cap in capacities()) {
        prop_assert_eq!(evolve(&cfg, cap).ball_count(), cfg.ball_count());
    }

    /// The carrier load of any capacity is the sum of the bounded seat
    /// occupancies.
    #[test]
    fn carrier_load_is_seat_sum(cfg in configs(), cap in capacities()) {
        let window = Window::safe_for(&cfg);
        let snc = seat_numbers(&cfg, window);
        let trace = carrier_trace(&cfg, cap, window);
        for x in 0..=window.0 {
            prop_assert_eq!(snc.carrier_load(cap, x), trace.get(x));
        }
    }

    /// Every site carries exactly one mark, and the marks split eta:
    /// sum_k up_k = eta and r + sum_k down_k = 1 - eta.
    #[test]
    fn marks_partition_sites(cfg in configs()) {
        let snc = SeatNumberConfig::at_safe_window(&cfg);
        for x in 1..=snc.window() {
            match snc.mark(x) {
                Mark::Up(_) => prop_assert_eq!(cfg.get(x), 1),
                Mark::Down(_) | Mark::Record => prop_assert_eq!(cfg.get(x), 0),
            }
        }
    }

    /// At an up-seat of rank k every seat below is occupied; at a down-seat
    /// every seat below is empty; at a record the whole carrier is empty.
    #[test]
    fn seat_marks_pin_occupancy(cfg in configs()) {
        let snc = SeatNumberConfig::at_safe_window(&cfg);
        for x in 1..=snc.window() {
            match snc.mark(x) {
                Mark::Up(k) => {
                    for l in 1..=k {
                        prop_assert_eq!(snc.occupancy(l, x), 1);
                    }
                }
                Mark::Down(k) => {
                    for l in 1..=k {
                        prop_assert_eq!(snc.occupancy(l, x), 0);
                    }
                }
                Mark::Record => {
                    prop_assert_eq!(snc.carrier_load(Capacity::Infinite, x), 0);
                }
            }
        }
    }

    /// xi is nondecreasing with steps in {0, 1}, and the matching counters
    /// agree at every anchor and are nondecreasing along anchors.
    #[test]
    fn anchors_match_and_are_monotone(cfg in configs()) {
        let snc = SeatNumberConfig::at_safe_window(&cfg);
        for k in 1..=snc.max_seat() {
            let mut previous = None;
            for x in 1..=snc.window() {
                let step = snc.xi(k, x) - snc.xi(k, x - 1);
                prop_assert!(step <= 1);
            }
            for &anchor in &snc.s_list(k) {
                let up = snc.m_value(k, Arrow::Up, anchor);
                let down = snc.m_value(k, Arrow::Down, anchor);
                prop_assert_eq!(up, down);
                if let Some(prev) = previous {
                    prop_assert!(up >= prev);
                }
                previous = Some(up);
            }
        }
    }

    /// zeta sums to the number of matching points, rank by rank.
    #[test]
    fn zeta_mass_counts_matching_points(cfg in configs()) {
        let snc = SeatNumberConfig::at_safe_window(&cfg);
        let zeta = snc.zeta();
        for k in 1..=snc.max_seat() {
            let mass: usize = zeta
                .entries
                .iter()
                .filter(|(&(rank, _), _)| rank == k)
                .map(|(_, &c)| c)
                .sum();
            prop_assert_eq!(mass, snc.tau_list(k).len());
        }
    }

    /// zeta_k(i) equals the increment of either matching counter between
    /// consecutive anchors.
    #[test]
    fn zeta_equals_anchor_increments(cfg in configs()) {
        let snc = SeatNumberConfig::at_safe_window(&cfg);
        let zeta = snc.zeta();
        for k in 1..=snc.max_seat() {
            let anchors = snc.s_list(k);
            for i in 0..anchors.len().saturating_sub(1) {
                let value = zeta.entries.get(&(k, i)).copied().unwrap_or(0);
                for sigma in [Arrow::Up, Arrow::Down] {
                    let increment = snc.m_value(k, sigma, anchors[i + 1])
                        - snc.m_value(k, sigma, anchors[i]);
                    prop_assert_eq!(value, increment);
                }
            }
        }
    }

    /// One step never decreases xi, the gap is the sum of the two carrier
    /// loads of capacity k, and the gap is exactly k at down-seats of rank
    /// at least k.
    #[test]
    fn xi_drift_is_carrier_sum(cfg in configs(), k in 1usize..=4) {
        let next = evolve(&cfg, Capacity::Infinite);
        let window = cfg.safe_window().max(next.safe_window());
        let snc = seat_numbers(&cfg, Window(window));
        let snc_next = seat_numbers(&next, Window(window));
        let w = carrier_trace(&cfg, Capacity::Finite(k), Window(window));
        let w_next = carrier_trace(&next, Capacity::Finite(k), Window(window));
        for x in 0..=window {
            let gap = snc_next.xi(k, x) as i64 - snc.xi(k, x) as i64;
            prop_assert_eq!(gap, (w.get(x) + w_next.get(x)) as i64);
            prop_assert!(gap >= 0);
            if let Mark::Down(l) = snc.mark(x) {
                if l >= k {
                    prop_assert_eq!(gap, k as i64);
                }
            }
        }
    }

    /// The interlacing pair really interlaces at every site, and every
    /// rigging respects the lower bound -k.
    #[test]
    fn interlacing_and_rigging_bounds(cfg in configs()) {
        let window = cfg.safe_window();
        for x in 0..=window {
            let pair = interlacing_sequence(&cfg, x);
            prop_assert!(pair.interlaces());
            for (rig, partition) in [
                (&pair.up_riggings, &pair.up),
                (&pair.down_riggings, &pair.down),
            ] {
                for (&k, values) in rig {
                    prop_assert_eq!(values.len(), partition.multiplicity(k));
                    prop_assert!(values.windows(2).all(|w| w[0] <= w[1]));
                    prop_assert!(values.first().is_none_or(|&j| j >= -(k as i64)));
                }
            }
        }
    }

    /// Forward then inverse KKR is the identity.
    #[test]
    fn kkr_round_trip(cfg in configs()) {
        prop_assert_eq!(kkr_inverse(&kkr_stabilized(&cfg)).unwrap(), cfg);
    }

    /// Slot decomposition then reconstruction is the identity.
    #[test]
    fn slot_round_trip(cfg in configs()) {
        let zeta = slot_decomposition(&cfg);
        prop_assert_eq!(reconstruct(&zeta.entries).unwrap(), cfg);
    }

    /// Every size-k soliton carries k balls and k vacancies, and the soliton
    /// count of each size matches the final matching counters.
    #[test]
    fn soliton_structure(cfg in configs()) {
        let decomposition = ts_decompose(&cfg);
        let snc = SeatNumberConfig::at_safe_window(&cfg);
        for soliton in &decomposition.solitons {
            let balls: usize = soliton.sites.iter().map(|&x| cfg.get(x) as usize).sum();
            prop_assert_eq!(soliton.sites.len(), 2 * soliton.size);
            prop_assert_eq!(balls, soliton.size);
            prop_assert!(soliton.sites.windows(2).all(|w| w[0] < w[1]));
        }
        for k in 1..=snc.max_seat() {
            let count = decomposition.of_size(k).count();
            prop_assert_eq!(count, snc.m_value(k, Arrow::Up, snc.window()));
            prop_assert_eq!(count, snc.m_value(k, Arrow::Down, snc.window()));
        }
    }
}

/// A single free soliton of size k translates by k sites per step.
#[test]
fn free_soliton_speed() {
    for k in 1..=6usize {
        for offset in 0..3usize {
            let mut bits = vec![0u8; offset];
            bits.extend(std::iter::repeat_n(1, k));
            let cfg = BallConfig::new(bits).unwrap();
            let moved = evolve(&cfg, Capacity::Infinite);
            let want: Vec<usize> = cfg.ball_sites().iter().map(|&x| x + k).collect();
            assert_eq!(moved.ball_sites(), want, "size {k} at offset {offset}");
        }
    }
}

/// The inverse scan agrees with the forward scan on every configuration of
/// window length at most 14, the documented brute-force horizon.
#[test]
fn kkr_inverse_exhaustive_equivalence() {
    for len in 0..=14usize {
        for word in 0u32..(1u32 << len) {
            let bits: Vec<u8> = (0..len).map(|i| ((word >> i) & 1) as u8).collect();
            let cfg = BallConfig::new(bits).unwrap();
            let back = kkr_inverse(&kkr_stabilized(&cfg)).unwrap();
            assert_eq!(back, cfg, "round trip failed for {cfg}");
        }
    }
}
