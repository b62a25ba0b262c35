//! Differential and exhaustive verification of every identity the modules
//! promise about each other.
//!
//! Each named check is an exact integer predicate over a configuration, a
//! capacity and a time step; there are no tolerances. A failing check
//! shrinks its witness by greedily deleting leading and trailing sites while
//! the failure persists, and the report always carries a replayable
//! counterexample.

use crate::config::{BallConfig, Window};
use crate::error::{Error, Result};
use crate::evolution::{carrier_trace, evolve, Capacity, CarrierTrace};
use crate::kkr::{kkr_inverse, kkr_stabilized, InterlacingBuilder, KkrBuilder, RiggedConfig};
use crate::seats::{Arrow, Mark, SeatNumberConfig, SeatZeta};
use crate::slots::{
    reconstruct, slot_config_of, slot_decomposition_of, ts_decompose, SlotConfig,
    SolitonDecomposition,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

/// Names of every check in the suite, in report order.
pub const CHECK_NAMES: [&str; 17] = [
    "alt",
    "alt2",
    "alt3",
    "char_slot",
    "conservation",
    "kosty",
    "local_energy",
    "match",
    "roundtrip_kkr",
    "roundtrip_slots",
    "seat_ISM",
    "seat_KKR",
    "seat_flip",
    "seat_slot",
    "slot_finite",
    "tau_soliton",
    "thm2",
];

/// Largest window accepted by [`exhaustive`].
pub const EXHAUSTIVE_MAX_LEN: usize = 14;

/// A replayable witness for a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// The (shrunken) configuration, rendered over its window.
    pub config: String,
    pub capacity: Capacity,
    /// First time step at which the check fails for this configuration.
    pub step: usize,
    pub detail: String,
}

/// Aggregated outcome of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckStats {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
    pub counterexample: Option<Counterexample>,
    /// Wall-clock time spent inside the check (not part of the canonical report).
    #[serde(with = "duration_millis")]
    pub duration: Duration,
}

mod duration_millis {
    use serde::Serializer;
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u128(d.as_millis())
    }
}

/// Report over a set of configurations, capacities and time steps.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckStats>,
    pub states_checked: u64,
    pub configs_checked: u64,
}

impl CheckReport {
    fn new() -> Self {
        CheckReport {
            checks: CHECK_NAMES
                .iter()
                .map(|&name| CheckStats {
                    name,
                    passed: 0,
                    failed: 0,
                    counterexample: None,
                    duration: Duration::ZERO,
                })
                .collect(),
            states_checked: 0,
            configs_checked: 0,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn merge(&mut self, other: &CheckReport) {
        for (mine, theirs) in self.checks.iter_mut().zip(&other.checks) {
            debug_assert_eq!(mine.name, theirs.name);
            mine.passed += theirs.passed;
            mine.failed += theirs.failed;
            mine.duration += theirs.duration;
            if mine.counterexample.is_none() {
                mine.counterexample = theirs.counterexample.clone();
            }
        }
        self.states_checked += other.states_checked;
        self.configs_checked += other.configs_checked;
    }

    /// Deterministic report body: one line per check plus a summary line.
    /// Timing is excluded so equal inputs give byte-identical output.
    pub fn canonical_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let mut line = format!(
                    "{:<16} {} pass={} fail={}",
                    c.name,
                    if c.failed == 0 { "pass" } else { "FAIL" },
                    c.passed,
                    c.failed
                );
                if let Some(ce) = &c.counterexample {
                    let _ = write!(
                        line,
                        " counterexample: config={} capacity={} step={} ({})",
                        ce.config, ce.capacity, ce.step, ce.detail
                    );
                }
                line
            })
            .collect();
        lines.push(format!(
            "total: {} configurations, {} states, {}",
            self.configs_checked,
            self.states_checked,
            if self.all_passed() { "all pass" } else { "FAILURES" }
        ));
        lines
    }

    /// Per-check wall-clock summary (non-deterministic; keep off stdout).
    pub fn timing_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| format!("{:<16} {:>9.3} ms", c.name, c.duration.as_secs_f64() * 1e3))
            .collect()
    }
}

type CheckOutcome = std::result::Result<(), String>;
type CheckFn = fn(&StateArtifacts) -> CheckOutcome;

/// Everything the per-state checks read; computed once per (state, capacity).
struct StateArtifacts {
    cfg: BallConfig,
    cap: Capacity,
    window: usize,
    snc: SeatNumberConfig,

    snc_next: SeatNumberConfig,
    zeta: SeatZeta,
    zeta_next: SeatZeta,
    /// `carriers[k - 1]` is the finite-capacity trace for capacity `k`,
    /// for `k = 1..=max_seat + 1`.
    carriers: Vec<CarrierTrace>,
    decomposition: SolitonDecomposition,
    nu: SlotConfig,
    slot_zeta: crate::slots::SlotZeta,
    kkr_final: RiggedConfig,
}

impl StateArtifacts {
    fn build(cfg: &BallConfig, cap: Capacity) -> Self {
        let next = evolve(cfg, Capacity::Infinite);
        let window = cfg.safe_window().max(next.safe_window());
        let snc = SeatNumberConfig::new(cfg, Window(window));
        let snc_next = SeatNumberConfig::new(&next, Window(window));
        let zeta = snc.zeta();
        let zeta_next = snc_next.zeta();
        let carriers = (1..=snc.max_seat() + 1)
            .map(|k| carrier_trace(cfg, Capacity::Finite(k), Window(window)))
            .collect();
        let decomposition = ts_decompose(cfg);
        let nu = slot_config_of(&decomposition);
        let slot_zeta = slot_decomposition_of(&decomposition, &nu);
        let kkr_final = kkr_stabilized(cfg);
        StateArtifacts {
            cfg: cfg.clone(),
            cap,
            window,
            snc,

            snc_next,
            zeta,
            zeta_next,
            carriers,
            decomposition,
            nu,
            slot_zeta,
            kkr_final,
        }
    }

    fn max_seat(&self) -> usize {
        self.snc.max_seat()
    }

    /// `W_k(x)` for finite `k`, valid for any `k >= 1`.
    fn w_finite(&self, k: usize, x: usize) -> usize {
        let idx = k.min(self.carriers.len());
        if idx == 0 {
            return 0;
        }
        self.carriers[idx - 1].get(x)
    }
}

fn fail(detail: String) -> CheckOutcome {
    Err(detail)
}

/// eta_down(k, x) = (T eta)_up(k, x), and at every up-seat the flipped site
/// is a down-seat of rank >= k or a record one step later.
fn check_seat_flip(a: &StateArtifacts) -> CheckOutcome {
    let kmax = a.max_seat().max(a.snc_next.max_seat());
    for x in 1..=a.window {
        for k in 1..=kmax {
            if a.snc.eta_down(k, x) != a.snc_next.eta_up(k, x) {
                return fail(format!(
                    "eta_down({k}, {x}) = {} but T eta_up({k}, {x}) = {}",
                    a.snc.eta_down(k, x),
                    a.snc_next.eta_up(k, x)
                ));
            }
        }
        if let Mark::Up(k) = a.snc.mark(x) {
            let flipped = match a.snc_next.mark(x) {
                Mark::Down(l) => l >= k,
                Mark::Record => true,
                Mark::Up(_) => false,
            };
            if !flipped {
                return fail(format!(
                    "up-seat of rank {k} at x = {x} not covered by T down-seats of rank >= {k} plus T records"
                ));
            }
        }
    }
    Ok(())
}

/// (T zeta)_k(i) = zeta_k(i - k).
fn check_seat_ism(a: &StateArtifacts) -> CheckOutcome {
    let want = a.zeta.shifted(Capacity::Infinite);
    if a.zeta_next.entries != want {
        return fail(format!(
            "T zeta = {:?}, expected shift {:?}",
            a.zeta_next.entries, want
        ));
    }
    Ok(())
}

/// x >= tau_k(j) iff both m-counters reached j.
fn check_match(a: &StateArtifacts) -> CheckOutcome {
    for k in 1..=a.max_seat() {
        let taus = a.snc.tau_list(k);
        let mut reached = 0usize;
        for x in 0..=a.window {
            while reached < taus.len() && taus[reached] <= x {
                reached += 1;
            }
            let m = a
                .snc
                .m_value(k, Arrow::Up, x)
                .min(a.snc.m_value(k, Arrow::Down, x));
            if m != reached {
                return fail(format!(
                    "min m_{k}(x={x}) = {m} but {reached} matching points are at or before x"
                ));
            }
        }
    }
    Ok(())
}

/// Runs the classical KKR scan and the interlacing scan side by side and
/// checks, at every site, the four identities tying them to the seats:
/// seat_KKR, alt, alt2 and alt3.
fn check_kkr_family(a: &StateArtifacts) -> [(&'static str, CheckOutcome); 4] {
    let mut kkr = KkrBuilder::new();
    let mut inter = InterlacingBuilder::new();
    let snc = &a.snc;
    // last-touch sites t_k^sigma(x, j), grown as matches appear
    let mut touch = [Vec::<Vec<usize>>::new(), Vec::<Vec<usize>>::new()];

    let mut seat_kkr: CheckOutcome = Ok(());
    let mut alt: CheckOutcome = Ok(());
    let mut alt2: CheckOutcome = Ok(());
    let mut alt3: CheckOutcome = Ok(());

    for x in 1..=a.window {
        let bit = a.cfg.get(x);
        kkr.step(bit);
        inter.step(bit);

        match snc.mark(x) {
            Mark::Up(k) | Mark::Down(k) => {
                let sigma = if snc.eta(x) == 1 { 0 } else { 1 };
                let arrow = if sigma == 0 { Arrow::Up } else { Arrow::Down };
                let j = snc.m_value(k, arrow, x);
                let t = &mut touch[sigma];
                if t.len() < k {
                    t.resize(k, Vec::new());
                }
                if t[k - 1].len() < j {
                    t[k - 1].resize(j, 0);
                }
                t[k - 1][j - 1] = x;
            }
            Mark::Record => {}
        }

        // seat_KKR: classical state equals the boarding side, and the
        // conjugate/vacancy read off the seat tables
        if seat_kkr.is_ok() {
            if kkr.conjugate() != inter.lambda(Arrow::Up)
                || kkr.riggings() != inter.riggings(Arrow::Up)
            {
                seat_kkr = fail(format!(
                    "classical KKR state differs from boarding side at x = {x}"
                ));
            } else {
                for k in 1..=a.max_seat() + 1 {
                    let lam = kkr.conjugate().get(k - 1).copied().unwrap_or(0);
                    if lam != snc.cum(Arrow::Up, k, x) {
                        seat_kkr = fail(format!(
                            "lambda_{k}({x}) = {lam} but up-seat count is {}",
                            snc.cum(Arrow::Up, k, x)
                        ));
                        break;
                    }
                    if kkr.vacancy(k) != snc.vacancy(k, x) {
                        seat_kkr = fail(format!(
                            "p_{k}({x}) = {} but seat formula gives {}",
                            kkr.vacancy(k),
                            snc.vacancy(k, x)
                        ));
                        break;
                    }
                }
            }
        }

        // alt: lambda^sigma from the pair equals seat prefix counts; the
        // occupancy, m and k_up/k_down characterizations follow
        if alt.is_ok() {
            'alt: for k in 1..=a.max_seat() + 1 {
                for (sigma, side) in [(Arrow::Up, 0), (Arrow::Down, 1)] {
                    let lam = inter.lambda(sigma).get(k - 1).copied().unwrap_or(0);
                    if lam != snc.cum(sigma, k, x) {
                        alt = fail(format!("lambda^sigma_{k}({x}) mismatch on side {side}"));
                        break 'alt;
                    }
                }
                let up = inter.lambda(Arrow::Up).get(k - 1).copied().unwrap_or(0);
                let down = inter.lambda(Arrow::Down).get(k - 1).copied().unwrap_or(0);
                if up - down != snc.occupancy(k, x) as usize {
                    alt = fail(format!("occupancy identity fails at k = {k}, x = {x}"));
                    break;
                }
            }
            if alt.is_ok() {
                let mut expect_up = 0;
                while snc.occupancy(expect_up + 1, x) == 1 {
                    expect_up += 1;
                }
                let expect_down = if snc.carrier_load(Capacity::Infinite, x) == 0 {
                    None
                } else {
                    let mut k = 0;
                    while snc.occupancy(k + 1, x) == 0 {
                        k += 1;
                    }
                    Some(k)
                };
                if inter.k_up() != expect_up || inter.k_down() != expect_down {
                    alt = fail(format!(
                        "k_up/k_down = {}/{:?} but seat characterization gives {}/{:?} at x = {x}",
                        inter.k_up(),
                        inter.k_down(),
                        expect_up,
                        expect_down
                    ));
                }
            }
        }

        // alt2: every refined rigging equals the vacancy at its last touch
        if alt2.is_ok() {
            'alt2: for (sigma, side) in [(Arrow::Up, 0usize), (Arrow::Down, 1)] {
                for (&k, rig) in inter.riggings(sigma) {
                    for (j, &value) in rig.iter().enumerate() {
                        let t = touch[side]
                            .get(k - 1)
                            .and_then(|row| row.get(j))
                            .copied()
                            .unwrap_or(0);
                        if t == 0 {
                            alt2 = fail(format!(
                                "no last-touch site for J^sigma_{{{k},{}}}({x})",
                                j + 1
                            ));
                            break 'alt2;
                        }
                        let p = match sigma {
                            Arrow::Up => snc.vacancy(k, t),
                            Arrow::Down => t as i64 - 2 * snc.cum_le(Arrow::Down, k, t) as i64,
                        };
                        if value != p {
                            alt2 = fail(format!(
                                "J^sigma_{{{k},{}}}({x}) = {value} but vacancy at last touch {t} is {p}",
                                j + 1
                            ));
                            break 'alt2;
                        }
                    }
                }
            }
        }

        // alt3: the maximal singular length is k_up (resp. k_down)
        if alt3.is_ok() {
            let max_up = inter.max_singular(Arrow::Up);
            if max_up != inter.k_up() {
                alt3 = fail(format!(
                    "max singular up-length {max_up} != k_up {} at x = {x}",
                    inter.k_up()
                ));
            } else if let Some(kd) = inter.k_down() {
                let max_down = inter.max_singular(Arrow::Down);
                if max_down != kd {
                    alt3 = fail(format!(
                        "max singular down-length {max_down} != k_down {kd} at x = {x}"
                    ));
                }
            }
        }
    }

    [
        ("seat_KKR", seat_kkr),
        ("alt", alt),
        ("alt2", alt2),
        ("alt3", alt3),
    ]
}

/// A site is a rank-k seat iff nu = k - 1, and the two slot counters agree.
fn check_seat_slot(a: &StateArtifacts) -> CheckOutcome {
    for x in 1..=a.window {
        let expected = match a.snc.mark(x) {
            Mark::Up(k) | Mark::Down(k) => Some(k - 1),
            Mark::Record => None,
        };
        if a.nu.get(x) != expected {
            return fail(format!(
                "nu({x}) = {:?} but seat mark gives {:?}",
                a.nu.get(x),
                expected
            ));
        }
    }
    let max_size = a.decomposition.max_size();
    if max_size != a.max_seat() {
        return fail(format!(
            "largest soliton {max_size} != largest seat {}",
            a.max_seat()
        ));
    }
    for k in 1..=max_size {
        let table = &a.slot_zeta.xi[k - 1];
        for (x, &count) in table.iter().enumerate().take(a.window + 1) {
            if count != a.snc.xi(k, x) {
                return fail(format!("slot count xi~_{k}({x}) differs from xi_{k}({x})"));
            }
        }
    }
    if a.slot_zeta.entries != a.zeta.entries {
        return fail(format!(
            "slot decomposition {:?} != seat zeta {:?}",
            a.slot_zeta.entries, a.zeta.entries
        ));
    }
    Ok(())
}

/// zeta~_k(i) counts riggings equal to i - k.
fn check_thm2(a: &StateArtifacts) -> CheckOutcome {
    let mut want: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&k, rig) in a.kkr_final.riggings() {
        for &j in rig {
            let i = j + k as i64;
            debug_assert!(i >= 0);
            *want.entry((k, i as usize)).or_insert(0) += 1;
        }
    }
    if a.slot_zeta.entries != want {
        return fail(format!(
            "slot decomposition {:?} != rigging histogram {:?}",
            a.slot_zeta.entries, want
        ));
    }
    Ok(())
}

/// One step under the active capacity shifts every rigging by min(k, ell).
fn check_kosty(a: &StateArtifacts) -> CheckOutcome {
    let evolved = kkr_stabilized(&evolve(&a.cfg, a.cap));
    let want = a.kkr_final.shift(a.cap);
    if evolved != want {
        return fail(format!(
            "KKR of evolved state {evolved:?} != shifted riggings {want:?}"
        ));
    }
    Ok(())
}

/// One step under the active capacity shifts the slot decomposition.
fn check_slot_finite(a: &StateArtifacts) -> CheckOutcome {
    let evolved = crate::slots::slot_decomposition(&evolve(&a.cfg, a.cap));
    let want = a.slot_zeta.shifted(a.cap);
    if evolved.entries != want {
        return fail(format!(
            "slot decomposition of evolved state {:?} != shift {:?}",
            evolved.entries, want
        ));
    }
    Ok(())
}

/// The local energy identity: sum of up-seat indicators of rank <= k equals
/// min(eta(x), k - W_k(x - 1)).
fn check_local_energy(a: &StateArtifacts) -> CheckOutcome {
    for k in 1..=a.max_seat() + 1 {
        for x in 1..=a.window {
            let lhs = a.snc.cum_le(Arrow::Up, k, x) - a.snc.cum_le(Arrow::Up, k, x - 1);
            let room = k - a.w_finite(k, x - 1);
            let rhs = (a.cfg.get(x) as usize).min(room);
            if lhs != rhs {
                return fail(format!(
                    "local energy at k = {k}, x = {x}: seats give {lhs}, carrier gives {rhs}"
                ));
            }
        }
    }
    Ok(())
}

/// Seat counts balance and are conserved by one time step.
fn check_conservation(a: &StateArtifacts) -> CheckOutcome {
    for k in 1..=a.max_seat().max(a.snc_next.max_seat()) {
        let ups = a.snc.cum(Arrow::Up, k, a.window);
        let downs = a.snc.cum(Arrow::Down, k, a.window);
        let next_ups = a.snc_next.cum(Arrow::Up, k, a.window);
        if ups != downs || ups != next_ups {
            return fail(format!(
                "rank {k}: {ups} up-seats, {downs} down-seats, {next_ups} after one step"
            ));
        }
    }
    Ok(())
}

/// Forward then inverse KKR is the identity.
fn check_roundtrip_kkr(a: &StateArtifacts) -> CheckOutcome {
    match kkr_inverse(&a.kkr_final) {
        Ok(back) if back == a.cfg => Ok(()),
        Ok(back) => fail(format!("inverse returned {back} instead of {}", a.cfg)),
        Err(e) => fail(format!("inverse failed: {e}")),
    }
}

/// Slot decomposition then reconstruction is the identity.
fn check_roundtrip_slots(a: &StateArtifacts) -> CheckOutcome {
    match reconstruct(&a.slot_zeta.entries) {
        Ok(back) if back == a.cfg => Ok(()),
        Ok(back) => fail(format!("reconstruct returned {back} instead of {}", a.cfg)),
        Err(e) => fail(format!("reconstruct failed: {e}")),
    }
}

/// Rightmost soliton components are exactly the matching points, and the
/// soliton count of every size matches the m-counters.
fn check_tau_soliton(a: &StateArtifacts) -> CheckOutcome {
    let kmax = a.max_seat().max(a.decomposition.max_size());
    for k in 1..=kmax {
        let mut rightmost: Vec<usize> = a.decomposition.of_size(k).map(|s| s.rightmost()).collect();
        rightmost.sort_unstable();
        let taus = a.snc.tau_list(k);
        if rightmost != taus {
            return fail(format!(
                "rank {k}: rightmost soliton sites {rightmost:?} != matching points {taus:?}"
            ));
        }
        let count = a.decomposition.of_size(k).count();
        let m_up = a.snc.m_value(k, Arrow::Up, a.window);
        let m_down = a.snc.m_value(k, Arrow::Down, a.window);
        if count != m_up || count != m_down {
            return fail(format!(
                "rank {k}: {count} solitons but m counters end at {m_up}/{m_down}"
            ));
        }
    }
    Ok(())
}

/// The carrier characterization of nu: the first seat with room (ball case)
/// or the first occupied seat (vacant case), minus one.
fn check_char_slot(a: &StateArtifacts) -> CheckOutcome {
    for x in 1..=a.window {
        let expected = if a.cfg.get(x) == 1 {
            let mut l = 1;
            while l - a.w_finite(l, x - 1) < 1 {
                l += 1;
            }
            Some(l - 1)
        } else if a.snc.carrier_load(Capacity::Infinite, x - 1) == 0 {
            None
        } else {
            let mut l = 1;
            while a.w_finite(l, x - 1) < 1 {
                l += 1;
            }
            Some(l - 1)
        };
        if a.nu.get(x) != expected {
            return fail(format!(
                "nu({x}) = {:?} but carrier characterization gives {expected:?}",
                a.nu.get(x)
            ));
        }
    }
    Ok(())
}

/// Runs every check once on one state under one capacity.
fn run_state(cfg: &BallConfig, cap: Capacity) -> Vec<(&'static str, CheckOutcome, Duration)> {
    let a = StateArtifacts::build(cfg, cap);
    let mut out: Vec<(&'static str, CheckOutcome, Duration)> =
        Vec::with_capacity(CHECK_NAMES.len());
    let singles: [(&'static str, CheckFn); 13] = [
        ("seat_flip", check_seat_flip),
        ("seat_ISM", check_seat_ism),
        ("match", check_match),
        ("seat_slot", check_seat_slot),
        ("thm2", check_thm2),
        ("kosty", check_kosty),
        ("slot_finite", check_slot_finite),
        ("local_energy", check_local_energy),
        ("conservation", check_conservation),
        ("roundtrip_kkr", check_roundtrip_kkr),
        ("roundtrip_slots", check_roundtrip_slots),
        ("tau_soliton", check_tau_soliton),
        ("char_slot", check_char_slot),
    ];
    for (name, f) in singles {
        let start = Instant::now();
        let res = f(&a);
        out.push((name, res, start.elapsed()));
    }
    let start = Instant::now();
    let family = check_kkr_family(&a);
    let family_elapsed = start.elapsed() / 4;
    for (name, res) in family {
        out.push((name, res, family_elapsed));
    }
    debug_assert_eq!(out.len(), CHECK_NAMES.len());
    out
}

/// Whether `name` fails anywhere on the orbit of `cfg` under `cap`,
/// returning the first failing step and its detail.
fn first_failure(name: &str, cfg: &BallConfig, cap: Capacity, steps: usize) -> Option<(usize, String)> {
    let mut state = cfg.clone();
    for t in 0..=steps {
        for (check, outcome, _) in run_state(&state, cap) {
            if check == name {
                if let Err(detail) = outcome {
                    return Some((t, detail));
                }
            }
        }
        if t < steps {
            state = evolve(&state, cap);
        }
    }
    None
}

/// Greedily drops trailing then leading sites while the named check still
/// fails somewhere on the orbit.
fn shrink(name: &str, cfg: &BallConfig, cap: Capacity, steps: usize) -> BallConfig {
    let mut bits: Vec<u8> = (1..=cfg.window()).map(|x| cfg.get(x)).collect();
    loop {
        let mut progressed = false;
        if bits.len() > 1 {
            let candidate = BallConfig::new(bits[..bits.len() - 1].to_vec()).unwrap();
            if first_failure(name, &candidate, cap, steps).is_some() {
                bits.pop();
                progressed = true;
            }
        }
        if !progressed && bits.len() > 1 {
            let candidate = BallConfig::new(bits[1..].to_vec()).unwrap();
            if first_failure(name, &candidate, cap, steps).is_some() {
                bits.remove(0);
                progressed = true;
            }
        }
        if !progressed {
            return BallConfig::new(bits).unwrap();
        }
    }
}

/// Runs the full suite on `cfg` and each of its first `steps` evolutions
/// under every capacity in `caps`.
pub fn check_all(cfg: &BallConfig, caps: &[Capacity], steps: usize) -> CheckReport {
    let mut report = CheckReport::new();
    report.configs_checked = 1;
    for &cap in caps {
        let mut state = cfg.clone();
        for t in 0..=steps {
            report.states_checked += 1;
            for (name, outcome, elapsed) in run_state(&state, cap) {
                let stats = report
                    .checks
                    .iter_mut()
                    .find(|c| c.name == name)
                    .expect("known check name");
                stats.duration += elapsed;
                match outcome {
                    Ok(()) => stats.passed += 1,
                    Err(_) => {
                        stats.failed += 1;
                        if stats.counterexample.is_none() {
                            let witness = shrink(name, cfg, cap, steps);
                            let (step, detail) = first_failure(name, &witness, cap, steps)
                                .unwrap_or((t, "failure did not survive shrinking".into()));
                            stats.counterexample = Some(Counterexample {
                                config: witness.to_string(),
                                capacity: cap,
                                step,
                                detail,
                            });
                        }
                    }
                }
            }
            if t < steps {
                state = evolve(&state, cap);
            }
        }
    }
    report
}

/// Runs the suite on every binary configuration of window length
/// `1..=max_len` (that is `2^(max_len + 1) - 2` configurations).
pub fn exhaustive(max_len: usize, caps: &[Capacity], steps: usize) -> Result<CheckReport> {
    if max_len == 0 || max_len > EXHAUSTIVE_MAX_LEN {
        return Err(Error::Argument(format!(
            "exhaustive window length must be in 1..={EXHAUSTIVE_MAX_LEN}, got {max_len}"
        )));
    }
    let mut report = CheckReport::new();
    for len in 1..=max_len {
        for word in 0u64..(1u64 << len) {
            let bits: Vec<u8> = (0..len).map(|i| ((word >> i) & 1) as u8).collect();
            let cfg = BallConfig::new(bits).expect("binary by construction");
            report.merge(&check_all(&cfg, caps, steps));
        }
    }
    Ok(report)
}

/// Runs the suite on `count` random configurations drawn deterministically
/// from `seed`.
pub fn fuzz(
    count: usize,
    length: usize,
    density: f64,
    seed: u64,
    caps: &[Capacity],
    steps: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    for cfg in BallConfig::random_batch(count, length, density, seed)? {
        report.merge(&check_all(&cfg, caps, steps));
    }
    Ok(report)
}
