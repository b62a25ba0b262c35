//! Takahashi-Satsuma soliton decomposition, the slot configuration and the
//! slot decomposition.
//!
//! The TS scan repeatedly selects, among uncrossed runs, the leftmost run at
//! least as long as the run before it, and crosses out a soliton made of the
//! last `k` letters of the preceding run and the first `k` letters of the
//! selected run. The half line is bordered by vacant sites on both ends, so
//! the boundary zero runs count as infinitely long; this is what makes
//! leading zeros come out as records.

use crate::config::{BallConfig, Window};
use crate::error::{Error, Result};
use crate::kkr::{kkr_inverse, Partition, RiggedConfig};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A soliton of size `k`: its `2k` sites in increasing order, `k` of them
/// occupied and `k` vacant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Soliton {
    pub size: usize,
    pub sites: Vec<usize>,
}

impl Soliton {
    /// Rightmost site, which is always a matching point of rank `size`.
    pub fn rightmost(&self) -> usize {
        *self.sites.last().expect("solitons are nonempty")
    }

    pub fn leftmost(&self) -> usize {
        self.sites[0]
    }
}

/// The full crossing-out of a finite configuration: solitons plus records.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolitonDecomposition {
    /// Sorted by decreasing size, then by leftmost site.
    pub solitons: Vec<Soliton>,
    /// Sites of the safe window that belong to no soliton.
    pub records: Vec<usize>,
    window: usize,
}

impl SolitonDecomposition {
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn of_size(&self, k: usize) -> impl Iterator<Item = &Soliton> {
        self.solitons.iter().filter(move |s| s.size == k)
    }

    pub fn max_size(&self) -> usize {
        self.solitons.iter().map(|s| s.size).max().unwrap_or(0)
    }
}

/// Slot values `nu(x)` for `x = 1..=window`; `None` marks a record
/// (an unbounded slot).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotConfig {
    nu: Vec<Option<usize>>,
}

impl SlotConfig {
    /// `nu(x)`; sites beyond the window are records.
    pub fn get(&self, x: usize) -> Option<usize> {
        debug_assert!(x >= 1);
        if x > self.nu.len() {
            None
        } else {
            self.nu[x - 1]
        }
    }

    pub fn window(&self) -> usize {
        self.nu.len()
    }

    /// True when `x` is a `k`-slot, i.e. `nu(x) >= k`.
    pub fn is_slot(&self, k: usize, x: usize) -> bool {
        self.get(x).is_none_or(|v| v >= k)
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.nu
    }
}

/// Sparse slot decomposition `(k, i) -> zeta_k(i)` with the slot-counting
/// tables it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotZeta {
    /// Nonzero counts keyed by `(k, i)`: `k`-solitons appended to the `i`-th `k`-slot.
    pub entries: BTreeMap<(usize, usize), usize>,
    /// `xi[k-1][x]` = number of `k`-slots in `1..=x`, for `k = 1..=max_size`.
    pub xi: Vec<Vec<usize>>,
    /// `anchors[k-1][i]` is the position of the `i`-th `k`-slot (entry 0 is site 0).
    pub anchors: Vec<Vec<usize>>,
}

impl SlotZeta {
    pub fn shifted(&self, cap: crate::evolution::Capacity) -> BTreeMap<(usize, usize), usize> {
        self.entries
            .iter()
            .map(|(&(k, i), &c)| ((k, i + cap.min_with(k)), c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Effective length of an uncrossed run: boundary zero runs are unbounded.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum RunLen {
    Finite(usize),
    Unbounded,
}

/// Crosses out every soliton of `cfg` by the run-matching scan.
pub fn ts_decompose(cfg: &BallConfig) -> SolitonDecomposition {
    let window = cfg.safe_window();
    let mut alive: Vec<usize> = (1..=window).collect();
    let mut solitons: Vec<Soliton> = Vec::new();

    loop {
        // runs of equal letters among uncrossed sites
        let mut runs: Vec<(u8, Vec<usize>)> = Vec::new();
        for &x in &alive {
            let bit = cfg.get(x);
            match runs.last_mut() {
                Some((b, sites)) if *b == bit => sites.push(x),
                _ => runs.push((bit, vec![x])),
            }
        }
        if runs.first().is_some_and(|(b, _)| *b == 1) {
            runs.insert(0, (0, Vec::new()));
        }
        if !runs.iter().any(|(b, _)| *b == 1) {
            break;
        }
        debug_assert!(
            runs.last().is_some_and(|(b, _)| *b == 0),
            "safe window always leaves trailing vacant sites"
        );

        let eff = |idx: usize| -> RunLen {
            let (bit, sites) = &runs[idx];
            if *bit == 0 && (idx == 0 || idx == runs.len() - 1) {
                RunLen::Unbounded
            } else {
                RunLen::Finite(sites.len())
            }
        };

        let selected = (1..runs.len())
            .find(|&i| eff(i) >= eff(i - 1))
            .expect("the unbounded trailing run always qualifies");
        let RunLen::Finite(k) = eff(selected - 1) else {
            unreachable!("a selected run is never preceded by a boundary run");
        };

        let prev = &runs[selected - 1].1;
        let head = &runs[selected].1;
        debug_assert!(head.len() >= k, "selected run shorter than its predecessor");
        let mut sites: Vec<usize> = prev[prev.len() - k..].to_vec();
        sites.extend_from_slice(&head[..k]);
        alive.retain(|x| !sites.contains(x));
        solitons.push(Soliton { size: k, sites });
    }

    debug_assert!(alive.iter().all(|&x| cfg.get(x) == 0));
    solitons.sort_by_key(|s| (std::cmp::Reverse(s.size), s.leftmost()));
    SolitonDecomposition {
        solitons,
        records: alive,
        window,
    }
}

/// The slot configuration `nu` of a finite configuration.
///
/// A site that is the `l`-th or `(l+k)`-th component of a `k`-soliton has
/// `nu = l - 1`; records have unbounded `nu`.
pub fn slot_config(cfg: &BallConfig) -> SlotConfig {
    slot_config_of(&ts_decompose(cfg))
}

/// Same as [`slot_config`], reusing an existing decomposition.
pub fn slot_config_of(decomposition: &SolitonDecomposition) -> SlotConfig {
    let mut nu = vec![None; decomposition.window()];
    for soliton in &decomposition.solitons {
        let k = soliton.size;
        for (l, &x) in soliton.sites.iter().enumerate() {
            nu[x - 1] = Some(if l < k { l } else { l - k });
        }
    }
    SlotConfig { nu }
}

/// The slot decomposition of a finite configuration: for every `k`-soliton,
/// count it at the index of the `k`-slot interval containing it.
pub fn slot_decomposition(cfg: &BallConfig) -> SlotZeta {
    let decomposition = ts_decompose(cfg);
    let nu = slot_config_of(&decomposition);
    slot_decomposition_of(&decomposition, &nu)
}

/// Same as [`slot_decomposition`], reusing precomputed pieces.
pub fn slot_decomposition_of(
    decomposition: &SolitonDecomposition,
    nu: &SlotConfig,
) -> SlotZeta {
    let window = decomposition.window();
    let max_size = decomposition.max_size();

    let mut xi = Vec::with_capacity(max_size);
    let mut anchors = Vec::with_capacity(max_size);
    for k in 1..=max_size {
        let mut row = Vec::with_capacity(window + 1);
        row.push(0usize);
        let mut anchor_row = vec![0usize];
        for x in 1..=window {
            let count = row[x - 1] + nu.is_slot(k, x) as usize;
            if count > row[x - 1] {
                anchor_row.push(x);
            }
            row.push(count);
        }
        xi.push(row);
        anchors.push(anchor_row);
    }

    let mut entries = BTreeMap::new();
    for soliton in &decomposition.solitons {
        let k = soliton.size;
        let i = xi[k - 1][soliton.leftmost()];
        debug_assert!(
            soliton.sites.iter().all(|&x| xi[k - 1][x] == i),
            "a soliton never straddles a slot of its own rank"
        );
        *entries.entry((k, i)).or_insert(0) += 1;
    }

    SlotZeta {
        entries,
        xi,
        anchors,
    }
}

/// Rebuilds the unique finite configuration whose slot decomposition equals
/// `entries`, rendered with a single trailing record.
///
/// Each count at `(k, i)` becomes a rigging `i - k` on a row of length `k`;
/// the resulting rigged configuration is inverted through the KKR scan.
pub fn reconstruct(entries: &BTreeMap<(usize, usize), usize>) -> Result<BallConfig> {
    let mut riggings: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    for (&(k, i), &count) in entries {
        if k == 0 {
            return Err(Error::InfeasibleSlots("soliton size 0".into()));
        }
        riggings
            .entry(k)
            .or_default()
            .extend(std::iter::repeat_n(i as i64 - k as i64, count));
    }
    riggings.retain(|_, v| !v.is_empty());
    for v in riggings.values_mut() {
        v.sort_unstable();
    }
    let mut rows: Vec<usize> = riggings
        .iter()
        .flat_map(|(&k, v)| std::iter::repeat_n(k, v.len()))
        .collect();
    rows.sort_unstable_by(|a, b| b.cmp(a));
    let rc = RiggedConfig::new(Partition::new(rows)?, riggings)
        .map_err(|e| Error::InfeasibleSlots(e.to_string()))?;
    let cfg = kkr_inverse(&rc).map_err(|e| Error::InfeasibleSlots(e.to_string()))?;
    Ok(cfg.padded(Window(cfg.last_ball().unwrap_or(0) + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{evolve, Capacity};

    fn eta_a() -> BallConfig {
        BallConfig::parse("1100111011000110000").unwrap()
    }

    fn eta_b() -> BallConfig {
        BallConfig::parse("111000010010").unwrap()
    }

    #[test]
    fn decompose_golden() {
        let d = ts_decompose(&eta_a());
        let got: Vec<(usize, Vec<usize>)> =
            d.solitons.iter().map(|s| (s.size, s.sites.clone())).collect();
        assert_eq!(
            got,
            vec![
                (4, vec![5, 6, 7, 10, 11, 12, 13, 18]),
                (2, vec![1, 2, 3, 4]),
                (2, vec![14, 15, 16, 17]),
                (1, vec![8, 9]),
            ]
        );
    }

    #[test]
    fn decompose_single_run_pair() {
        let d = ts_decompose(&BallConfig::parse("11110000").unwrap());
        assert_eq!(d.solitons.len(), 1);
        assert_eq!(d.solitons[0].size, 4);
        assert_eq!(d.solitons[0].sites, vec![1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn decompose_three_solitons() {
        let d = ts_decompose(&eta_b());
        let got: Vec<(usize, Vec<usize>)> =
            d.solitons.iter().map(|s| (s.size, s.sites.clone())).collect();
        assert_eq!(
            got,
            vec![
                (3, vec![1, 2, 3, 4, 5, 6]),
                (1, vec![8, 9]),
                (1, vec![11, 12]),
            ]
        );
    }

    #[test]
    fn leading_zeros_are_records() {
        let d = ts_decompose(&BallConfig::parse("0011").unwrap());
        assert_eq!(d.solitons.len(), 1);
        assert_eq!(d.solitons[0].sites, vec![3, 4, 5, 6]);
        assert!(d.records.contains(&1) && d.records.contains(&2));
    }

    #[test]
    fn slot_config_golden() {
        let nu = slot_config(&eta_a());
        let expected: Vec<Option<usize>> = vec![
            Some(0), Some(1), Some(0), Some(1), Some(0), Some(1), Some(2),
            Some(0), Some(0), Some(3), Some(0), Some(1), Some(2), Some(0),
            Some(1), Some(0), Some(1), Some(3), None,
        ];
        assert_eq!(&nu.values()[..19], expected.as_slice());
        // everything past x = 19 in the safe window is a record
        assert!(nu.values()[19..].iter().all(|v| v.is_none()));
    }

    #[test]
    fn slot_config_trivial() {
        let nu = slot_config(&BallConfig::empty());
        assert!(nu.values().iter().all(|v| v.is_none()));

        let nu = slot_config(&BallConfig::parse("1100").unwrap());
        assert_eq!(&nu.values()[..4], &[Some(0), Some(1), Some(0), Some(1)]);
    }

    #[test]
    fn slot_decomposition_golden() {
        let z = slot_decomposition(&eta_a());
        let expected: BTreeMap<(usize, usize), usize> =
            [((1, 4), 1), ((2, 0), 1), ((2, 3), 1), ((4, 0), 1)].into_iter().collect();
        assert_eq!(z.entries, expected);

        assert!(slot_decomposition(&BallConfig::empty()).is_zero());

        let zt = slot_decomposition(&evolve(&eta_a(), Capacity::Infinite));
        let expected_t: BTreeMap<(usize, usize), usize> =
            [((4, 4), 1), ((2, 2), 1), ((2, 5), 1), ((1, 5), 1)].into_iter().collect();
        assert_eq!(zt.entries, expected_t);
    }

    #[test]
    fn reconstruct_round_trips() {
        let z = slot_decomposition(&eta_a());
        assert_eq!(reconstruct(&z.entries).unwrap(), eta_a());

        assert_eq!(reconstruct(&BTreeMap::new()).unwrap(), BallConfig::empty());

        let single: BTreeMap<(usize, usize), usize> = [((1, 0), 1)].into_iter().collect();
        assert_eq!(reconstruct(&single).unwrap(), BallConfig::parse("10").unwrap());
        // rendered with exactly one trailing record
        assert_eq!(reconstruct(&single).unwrap().window(), 2);
    }

    #[test]
    fn reconstruct_matches_brute_force_short_lengths() {
        // brute force over all configurations of length <= 4: the slot
        // decomposition is injective and reconstruct inverts it
        for len in 0..=4usize {
            for word in 0..(1u32 << len) {
                let bits: Vec<u8> = (0..len).map(|i| ((word >> i) & 1) as u8).collect();
                let cfg = BallConfig::new(bits).unwrap();
                let z = slot_decomposition(&cfg);
                assert_eq!(reconstruct(&z.entries).unwrap(), cfg, "failed for {cfg}");
            }
        }
    }
}
