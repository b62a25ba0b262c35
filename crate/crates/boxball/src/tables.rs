//! Text layouts: evolution rows, the seat table, the rigged diagram, the
//! eta/nu table and zeta blocks.
//!
//! Cells are fixed width, sized to the widest entry, so output is stable and
//! diffable.

use crate::config::{BallConfig, Window};
use crate::evolution::Capacity;
use crate::kkr::RiggedConfig;
use crate::seats::SeatNumberConfig;
use crate::slots::{SlotConfig, SolitonDecomposition};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// One 0/1 line per generation, all rendered at the same window.
/// With `window` unset, the largest minimal window of the orbit is used.
pub fn evolution_lines(orbit: &[BallConfig], window: Option<usize>) -> String {
    let width = window.unwrap_or_else(|| orbit.iter().map(|c| c.window()).max().unwrap_or(0));
    let mut out = String::new();
    for cfg in orbit {
        out.push_str(&cfg.render(Window(width)));
        out.push('\n');
    }
    out
}

fn grid(rows: &[(String, Vec<String>)]) -> String {
    let label_width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let cell_width = rows
        .iter()
        .flat_map(|(_, cells)| cells.iter().map(|c| c.len()))
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for (label, cells) in rows {
        let _ = write!(out, "{label:<label_width$} |");
        for cell in cells {
            let _ = write!(out, " {cell:>cell_width$}");
        }
        out.push('\n');
    }
    out
}

/// The seat table: site index, eta, the capacity-`cap` carrier load, then
/// per seat rank the occupancy and the up/down marks, and finally the record
/// row. Load rows start at `x = 0`; site-mark rows leave that cell blank.
pub fn seats_table(snc: &SeatNumberConfig, cap: Capacity) -> String {
    let l = snc.window();
    let blank_then = |f: &dyn Fn(usize) -> String| -> Vec<String> {
        std::iter::once(String::new())
            .chain((1..=l).map(f))
            .collect()
    };
    let from_zero = |f: &dyn Fn(usize) -> String| -> Vec<String> { (0..=l).map(f).collect() };

    let mut rows: Vec<(String, Vec<String>)> = Vec::new();
    rows.push(("x".into(), from_zero(&|x| x.to_string())));
    rows.push(("eta".into(), blank_then(&|x| snc.eta(x).to_string())));
    rows.push((
        format!("W({cap})"),
        from_zero(&|x| snc.carrier_load(cap, x).to_string()),
    ));
    for k in 1..=snc.max_seat() {
        rows.push((
            format!("w{k}"),
            from_zero(&|x| snc.occupancy(k, x).to_string()),
        ));
        rows.push((
            format!("up{k}"),
            blank_then(&|x| snc.eta_up(k, x).to_string()),
        ));
        rows.push((
            format!("down{k}"),
            blank_then(&|x| snc.eta_down(k, x).to_string()),
        ));
    }
    rows.push((
        "r".into(),
        blank_then(&|x| (snc.is_record(x) as u8).to_string()),
    ));
    grid(&rows)
}

/// The rigged configuration as box rows with right-aligned riggings; rows of
/// equal length carry their riggings in descending order top to bottom.
pub fn kkr_diagram(rc: &RiggedConfig) -> String {
    if rc.partition().is_empty() {
        return "(empty)\n".into();
    }
    let mut labels: BTreeMap<usize, Vec<i64>> = rc.riggings().clone();
    let widest = rc.partition().rows()[0];
    let rig_width = rc
        .riggings()
        .values()
        .flatten()
        .map(|j| j.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for &len in rc.partition().rows() {
        let rig = labels
            .get_mut(&len)
            .and_then(|v| v.pop())
            .expect("one rigging per row");
        let boxes = "[]".repeat(len);
        let pad = 2 * (widest - len);
        let _ = writeln!(out, "{boxes}{:pad$}  {rig:>rig_width$}", "");
    }
    out
}

/// The two-row eta/nu table plus one line per soliton. The table spans
/// `1..=display`; soliton site lists are always complete.
pub fn slots_table(
    cfg: &BallConfig,
    nu: &SlotConfig,
    decomposition: &SolitonDecomposition,
    display: usize,
) -> String {
    let l = display.min(nu.window());
    let table_rows: Vec<(String, Vec<String>)> = vec![
        ("x".into(), (1..=l).map(|x| x.to_string()).collect()),
        (
            "eta".into(),
            (1..=l).map(|x| cfg.get(x).to_string()).collect(),
        ),
        (
            "nu".into(),
            (1..=l)
                .map(|x| match nu.get(x) {
                    Some(v) => v.to_string(),
                    None => "inf".into(),
                })
                .collect(),
        ),
    ];
    let mut out = grid(&table_rows);
    for soliton in &decomposition.solitons {
        let _ = write!(out, "soliton k={}:", soliton.size);
        for site in &soliton.sites {
            let _ = write!(out, " {site}");
        }
        out.push('\n');
    }
    out
}

/// A titled `k i count` block for a sparse zeta map.
pub fn zeta_block(title: &str, entries: &BTreeMap<(usize, usize), usize>) -> String {
    let mut out = format!("{title}\n");
    let _ = writeln!(out, "k i count");
    for (&(k, i), &count) in entries {
        let _ = writeln!(out, "{k} {i} {count}");
    }
    out
}

/// The seat-route zeta, slot-route zeta and KKR rigging histogram side by
/// side; the three agree on every input.
pub fn zeta_report(
    seat: &BTreeMap<(usize, usize), usize>,
    slot: &BTreeMap<(usize, usize), usize>,
    kkr: &BTreeMap<(usize, usize), usize>,
) -> String {
    let mut out = String::new();
    out.push_str(&zeta_block("zeta (seat route)", seat));
    out.push('\n');
    out.push_str(&zeta_block("zeta (slot route)", slot));
    out.push('\n');
    out.push_str(&zeta_block("zeta (kkr riggings)", kkr));
    let agree = seat == slot && slot == kkr;
    let _ = writeln!(out, "\nroutes agree: {}", if agree { "yes" } else { "NO" });
    out
}
