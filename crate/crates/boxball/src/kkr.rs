//! Rigged configurations, the sequential KKR bijection and its inverse, and
//! the interlacing pair of Young diagrams with refined riggings.
//!
//! The forward map scans the configuration once, inserting a box at the
//! singular row of maximal length for every ball. The inverse runs the same
//! scan backwards: a state has a singular row exactly at ball sites, and the
//! freshly grown row is always the singular row of minimal length, so the
//! reverse step is forced.

use crate::config::{BallConfig, Window};
use crate::error::{Error, Result};
use crate::evolution::Capacity;
use crate::seats::SeatNumberConfig;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A partition: weakly decreasing positive row lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    rows: Vec<usize>,
}

impl Partition {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::Argument("partition rows must be positive".into()));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Argument(
                "partition rows must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { rows })
    }

    pub fn empty() -> Self {
        Partition { rows: Vec::new() }
    }

    /// Rebuilds the partition from its conjugate `lambda_k = #{i : mu_i >= k}`.
    pub fn from_conjugate(lambda: &[usize]) -> Self {
        let mut rows = Vec::new();
        let depth = lambda.first().copied().unwrap_or(0);
        for i in 1..=depth {
            let len = lambda.iter().take_while(|&&l| l >= i).count();
            rows.push(len);
        }
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]));
        Partition { rows }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Total number of boxes.
    pub fn total(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Conjugate partition as `lambda[k-1] = lambda_k` for `k = 1..=mu_1`.
    pub fn conjugate(&self) -> Vec<usize> {
        let width = self.rows.first().copied().unwrap_or(0);
        (1..=width)
            .map(|k| self.rows.iter().take_while(|&&r| r >= k).count())
            .collect()
    }

    /// Multiplicity of rows of length `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.rows.iter().filter(|&&r| r == k).count()
    }

    /// `E_k = sum_i min(mu_i, k)`, the `k`-th energy.
    pub fn energy(&self, k: usize) -> usize {
        self.rows.iter().map(|&r| r.min(k)).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("()");
        }
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// A partition with a sorted rigging array per occupied row length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiggedConfig {
    partition: Partition,
    /// Row length -> ascending riggings; keys are exactly the lengths with
    /// positive multiplicity.
    riggings: BTreeMap<usize, Vec<i64>>,
}

impl RiggedConfig {
    pub fn new(partition: Partition, riggings: BTreeMap<usize, Vec<i64>>) -> Result<Self> {
        for (&k, rig) in &riggings {
            if rig.len() != partition.multiplicity(k) {
                return Err(Error::Argument(format!(
                    "rigging count {} for length {k} does not match multiplicity {}",
                    rig.len(),
                    partition.multiplicity(k)
                )));
            }
            if rig.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Argument(format!(
                    "riggings for length {k} are not sorted ascending"
                )));
            }
            if rig.first().is_some_and(|&j| j < -(k as i64)) {
                return Err(Error::Argument(format!(
                    "rigging below -{k} for length {k}"
                )));
            }
        }
        for &k in partition.rows() {
            if partition.multiplicity(k) > 0 && !riggings.contains_key(&k) {
                return Err(Error::Argument(format!("missing riggings for length {k}")));
            }
        }
        Ok(RiggedConfig {
            partition,
            riggings,
        })
    }

    pub fn empty() -> Self {
        RiggedConfig {
            partition: Partition::empty(),
            riggings: BTreeMap::new(),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn riggings(&self) -> &BTreeMap<usize, Vec<i64>> {
        &self.riggings
    }

    pub fn riggings_for(&self, k: usize) -> &[i64] {
        self.riggings.get(&k).map_or(&[], |v| v.as_slice())
    }

    /// Vacancy `p_k(x) = x - 2 E_k` of this state read at site count `x`.
    pub fn vacancy(&self, k: usize, x: usize) -> i64 {
        x as i64 - 2 * self.partition.energy(k) as i64
    }

    /// Row lengths whose top rigging equals the vacancy at site count `x`.
    pub fn singular_rows(&self, x: usize) -> Vec<usize> {
        self.riggings
            .iter()
            .filter(|(&k, rig)| rig.last() == Some(&self.vacancy(k, x)))
            .map(|(&k, _)| k)
            .collect()
    }

    /// Every rigging shifted by `min(k, ell)`: the exact one-step image of
    /// the dynamics under capacity `ell`. The partition is unchanged.
    pub fn shift(&self, cap: Capacity) -> RiggedConfig {
        let riggings = self
            .riggings
            .iter()
            .map(|(&k, rig)| {
                let d = cap.min_with(k) as i64;
                (k, rig.iter().map(|&j| j + d).collect())
            })
            .collect();
        RiggedConfig {
            partition: self.partition.clone(),
            riggings,
        }
    }
}

/// See [`RiggedConfig::shift`].
pub fn shift_riggings(rc: &RiggedConfig, cap: Capacity) -> RiggedConfig {
    rc.shift(cap)
}

/// Incremental state of the classical KKR scan.
///
/// Feed sites left to right with [`KkrBuilder::step`]; `state()` materializes
/// the rigged configuration of the prefix read so far.
#[derive(Clone, Debug)]
pub struct KkrBuilder {
    x: usize,
    /// Conjugate counts: `lambda[k-1]` rows of length at least `k`.
    lambda: Vec<usize>,
    rig: BTreeMap<usize, Vec<i64>>,
}

impl Default for KkrBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl KkrBuilder {
    pub fn new() -> Self {
        KkrBuilder {
            x: 0,
            lambda: Vec::new(),
            rig: BTreeMap::new(),
        }
    }

    pub fn site(&self) -> usize {
        self.x
    }

    /// Conjugate counts of the current partition.
    pub fn conjugate(&self) -> &[usize] {
        &self.lambda
    }

    pub fn riggings(&self) -> &BTreeMap<usize, Vec<i64>> {
        &self.rig
    }

    fn energy(&self, k: usize) -> usize {
        self.lambda.iter().take(k).sum()
    }

    /// Vacancy of the current state read at the current site count.
    pub fn vacancy(&self, k: usize) -> i64 {
        self.x as i64 - 2 * self.energy(k) as i64
    }

    /// Longest singular row, or 0 when no row is singular.
    pub fn max_singular(&self) -> usize {
        self.rig
            .iter()
            .rev()
            .find(|(&k, rig)| rig.last() == Some(&self.vacancy(k)))
            .map(|(&k, _)| k)
            .unwrap_or(0)
    }

    pub fn step(&mut self, bit: u8) {
        if bit == 0 {
            self.x += 1;
            return;
        }
        let k = self.max_singular();
        if k > 0 {
            let expected = self.vacancy(k);
            let rig = self.rig.get_mut(&k).expect("singular row has riggings");
            let top = rig.pop().expect("nonempty");
            debug_assert_eq!(top, expected);
            if rig.is_empty() {
                self.rig.remove(&k);
            }
        }
        self.x += 1;
        if self.lambda.len() <= k {
            self.lambda.resize(k + 1, 0);
        }
        self.lambda[k] += 1;
        let p = self.vacancy(k + 1);
        let rig = self.rig.entry(k + 1).or_default();
        debug_assert!(rig.last().is_none_or(|&t| t <= p));
        rig.push(p);
    }

    pub fn state(&self) -> RiggedConfig {
        RiggedConfig {
            partition: Partition::from_conjugate(&self.lambda),
            riggings: self.rig.clone(),
        }
    }
}

/// Runs the KKR scan over sites `1..=upto` of `cfg`.
///
/// For `upto` at least the safe window this is the stabilized rigged
/// configuration of `cfg`.
pub fn kkr_forward(cfg: &BallConfig, upto: usize) -> RiggedConfig {
    let mut builder = KkrBuilder::new();
    for x in 1..=upto {
        builder.step(cfg.get(x));
    }
    builder.state()
}

/// The stabilized rigged configuration (scan over the safe window).
pub fn kkr_stabilized(cfg: &BallConfig) -> RiggedConfig {
    kkr_forward(cfg, cfg.safe_window())
}

/// Inverts the KKR scan: returns the unique finite configuration whose
/// stabilized rigged configuration is `rc`, rendered through its last ball.
///
/// The reverse scan starts at the largest site where any row is singular
/// (which is the last ball position) and undoes one insertion per ball site;
/// a state reached by a no-ball step has no singular row, so the decision at
/// every site is forced. The result is re-validated with a forward scan.
pub fn kkr_inverse(rc: &RiggedConfig) -> Result<BallConfig> {
    if rc.partition().is_empty() {
        return Ok(BallConfig::empty());
    }
    let infeasible = |msg: &str| Error::InfeasibleRigging(msg.into());

    let last_ball = rc
        .riggings()
        .iter()
        .map(|(&k, rig)| rig.last().unwrap() + 2 * rc.partition().energy(k) as i64)
        .max()
        .unwrap();
    if last_ball < 1 {
        return Err(infeasible("no feasible last ball site"));
    }
    let last_ball = last_ball as usize;

    let mut lambda = rc.partition().conjugate();
    let mut rig: BTreeMap<usize, Vec<i64>> = rc.riggings().clone();
    let mut bits = vec![0u8; last_ball];

    let energy = |lambda: &[usize], k: usize| -> i64 { lambda.iter().take(k).sum::<usize>() as i64 };

    for x in (1..=last_ball).rev() {
        let singular = rig
            .iter()
            .find(|(&k, r)| r.last() == Some(&(x as i64 - 2 * energy(&lambda, k))))
            .map(|(&k, _)| k);
        let Some(k) = singular else { continue };
        bits[x - 1] = 1;
        let r = rig.get_mut(&k).expect("selected row exists");
        r.pop();
        if r.is_empty() {
            rig.remove(&k);
        }
        lambda[k - 1] -= 1;
        while lambda.last() == Some(&0) {
            lambda.pop();
        }
        if k > 1 {
            let p = (x as i64 - 1) - 2 * energy(&lambda, k - 1);
            let row = rig.entry(k - 1).or_default();
            let pos = row.partition_point(|&v| v <= p);
            row.insert(pos, p);
        }
    }

    if !lambda.is_empty() || !rig.is_empty() {
        return Err(infeasible("reverse scan did not empty the partition"));
    }
    let out = BallConfig::new(bits).expect("binary by construction");
    if &kkr_stabilized(&out) != rc {
        return Err(infeasible("not in the image of the forward scan"));
    }
    Ok(out)
}

/// `(E_k(x), p_k(x))` of the prefix `1..=x`, computed from seat prefix sums.
pub fn energy_vacancy(cfg: &BallConfig, k: usize, x: usize) -> (usize, i64) {
    let window = x.max(cfg.last_ball().unwrap_or(0));
    let snc = SeatNumberConfig::new(cfg, Window(window));
    (snc.energy(k, x), snc.vacancy(k, x))
}

/// One side (boarding or alighting) of the interlacing pair.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Side {
    lambda: Vec<usize>,
    rig: BTreeMap<usize, Vec<i64>>,
}

impl Side {
    fn new() -> Self {
        Side {
            lambda: Vec::new(),
            rig: BTreeMap::new(),
        }
    }

    fn lambda_at(&self, k: usize) -> usize {
        self.lambda.get(k - 1).copied().unwrap_or(0)
    }

    fn energy(&self, k: usize) -> usize {
        self.lambda.iter().take(k).sum()
    }

    fn vacancy(&self, k: usize, x: usize) -> i64 {
        x as i64 - 2 * self.energy(k) as i64
    }

    /// Grows a row of length `k` to `k + 1` (creates a length-1 row when
    /// `k == 0`); removes the largest rigging at `k` and appends the new
    /// vacancy at `k + 1`, both read at site count `x_new`.
    fn add_box(&mut self, k: usize, x_new: usize) {
        if k > 0 {
            let rig = self.rig.get_mut(&k).expect("grown row must be rigged");
            rig.pop();
            if rig.is_empty() {
                self.rig.remove(&k);
            }
        }
        if self.lambda.len() <= k {
            self.lambda.resize(k + 1, 0);
        }
        self.lambda[k] += 1;
        let p = self.vacancy(k + 1, x_new);
        let rig = self.rig.entry(k + 1).or_default();
        debug_assert!(rig.last().is_none_or(|&t| t <= p));
        rig.push(p);
    }
}

/// Incremental construction of the interlacing pair with refined riggings.
#[derive(Clone, Debug)]
pub struct InterlacingBuilder {
    x: usize,
    up: Side,
    down: Side,
}

impl Default for InterlacingBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl InterlacingBuilder {
    pub fn new() -> Self {
        InterlacingBuilder {
            x: 0,
            up: Side::new(),
            down: Side::new(),
        }
    }

    pub fn site(&self) -> usize {
        self.x
    }

    /// Largest `k` with `lambda_up_l - lambda_down_l = 1` for all `l <= k`.
    pub fn k_up(&self) -> usize {
        let mut k = 0;
        while self.up.lambda_at(k + 1) == self.down.lambda_at(k + 1) + 1 {
            k += 1;
        }
        k
    }

    /// Largest `k` with `lambda_up_l = lambda_down_l` for all `l <= k`, or
    /// `None` (infinity) when the two diagrams coincide.
    pub fn k_down(&self) -> Option<usize> {
        if self.up.lambda == self.down.lambda {
            return None;
        }
        let mut k = 0;
        while self.up.lambda_at(k + 1) == self.down.lambda_at(k + 1) {
            k += 1;
        }
        Some(k)
    }

    pub fn step(&mut self, bit: u8) {
        let x_new = self.x + 1;
        if bit == 1 {
            let k = self.k_up();
            self.up.add_box(k, x_new);
        } else if self.up.lambda != self.down.lambda {
            let k = self.k_down().expect("sides differ");
            self.down.add_box(k, x_new);
        }
        self.x = x_new;
    }

    pub fn lambda(&self, sigma: crate::seats::Arrow) -> &[usize] {
        match sigma {
            crate::seats::Arrow::Up => &self.up.lambda,
            crate::seats::Arrow::Down => &self.down.lambda,
        }
    }

    pub fn riggings(&self, sigma: crate::seats::Arrow) -> &BTreeMap<usize, Vec<i64>> {
        match sigma {
            crate::seats::Arrow::Up => &self.up.rig,
            crate::seats::Arrow::Down => &self.down.rig,
        }
    }

    pub fn vacancy(&self, sigma: crate::seats::Arrow, k: usize) -> i64 {
        match sigma {
            crate::seats::Arrow::Up => self.up.vacancy(k, self.x),
            crate::seats::Arrow::Down => self.down.vacancy(k, self.x),
        }
    }

    /// Longest singular row on one side at the current site count, 0 if none.
    pub fn max_singular(&self, sigma: crate::seats::Arrow) -> usize {
        let side = match sigma {
            crate::seats::Arrow::Up => &self.up,
            crate::seats::Arrow::Down => &self.down,
        };
        side.rig
            .iter()
            .rev()
            .find(|(&k, rig)| rig.last() == Some(&side.vacancy(k, self.x)))
            .map(|(&k, _)| k)
            .unwrap_or(0)
    }

    /// The boarding side as a plain rigged configuration; by the seat-KKR
    /// correspondence this equals the classical KKR state at every site.
    pub fn up_rigged(&self) -> RiggedConfig {
        RiggedConfig {
            partition: Partition::from_conjugate(&self.up.lambda),
            riggings: self.up.rig.clone(),
        }
    }

    pub fn pair(&self) -> InterlacingPair {
        InterlacingPair {
            site: self.x,
            up: Partition::from_conjugate(&self.up.lambda),
            down: Partition::from_conjugate(&self.down.lambda),
            up_riggings: self.up.rig.clone(),
            down_riggings: self.down.rig.clone(),
        }
    }
}

/// A pair of interlacing Young diagrams with refined riggings, read at a
/// fixed site count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterlacingPair {
    site: usize,
    pub up: Partition,
    pub down: Partition,
    pub up_riggings: BTreeMap<usize, Vec<i64>>,
    pub down_riggings: BTreeMap<usize, Vec<i64>>,
}

impl InterlacingPair {
    pub fn site(&self) -> usize {
        self.site
    }

    /// The interlacing property `mu_up_1 >= mu_down_1 >= mu_up_2 >= ...`.
    pub fn interlaces(&self) -> bool {
        let up = self.up.rows();
        let down = self.down.rows();
        let at = |rows: &[usize], i: usize| rows.get(i).copied().unwrap_or(0);
        (0..up.len().max(down.len()))
            .all(|i| at(up, i) >= at(down, i) && at(down, i) >= at(up, i + 1))
    }

    fn side(&self, sigma: crate::seats::Arrow) -> (&Partition, &BTreeMap<usize, Vec<i64>>) {
        match sigma {
            crate::seats::Arrow::Up => (&self.up, &self.up_riggings),
            crate::seats::Arrow::Down => (&self.down, &self.down_riggings),
        }
    }

    pub fn vacancy(&self, sigma: crate::seats::Arrow, k: usize, x: usize) -> i64 {
        let (partition, _) = self.side(sigma);
        x as i64 - 2 * partition.energy(k) as i64
    }

    /// Row lengths singular at site count `x`: top rigging equals vacancy.
    pub fn singular_rows(&self, sigma: crate::seats::Arrow, x: usize) -> Vec<usize> {
        let (_, rig) = self.side(sigma);
        rig.iter()
            .filter(|(&k, r)| r.last() == Some(&self.vacancy(sigma, k, x)))
            .map(|(&k, _)| k)
            .collect()
    }
}

/// Runs the interlacing construction over sites `1..=upto` of `cfg`.
pub fn interlacing_sequence(cfg: &BallConfig, upto: usize) -> InterlacingPair {
    let mut builder = InterlacingBuilder::new();
    for x in 1..=upto {
        builder.step(cfg.get(x));
    }
    builder.pair()
}
