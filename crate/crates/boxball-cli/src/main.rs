//! Command line interface for the box-ball system toolkit.
//!
//! Reads ball configurations (0/1 lines) from a file or stdin and exposes
//! the evolution operator, the seat table, the KKR rigged configuration, the
//! slot decomposition, the three-route zeta cross-check and the verification
//! harness. Output on stdout is byte-deterministic given input, flags and
//! seed; timing goes to stderr. No output is ever colored, so the
//! `BOXBALL_COLOR=0` convention is honored unconditionally.

use boxball::{
    check_all, evolve_n, exhaustive, fuzz, kkr_forward, kkr_stabilized, seat_numbers,
    slot_decomposition, tables, ts_decompose, BallConfig, Capacity, CheckReport,
    SeatNumberConfig, Window,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "boxball",
    about = "Box-ball system simulator and linearization toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct InputArgs {
    /// Input file with one 0/1 configuration per line; stdin when omitted.
    file: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Run the time evolution and print every generation.
    Evolve {
        #[command(flatten)]
        input: InputArgs,
        /// Carrier capacity: a positive integer or `inf`.
        #[arg(long, default_value = "inf")]
        capacity: Capacity,
        /// Number of time steps.
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Render window; defaults to the widest generation.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Print the carrier-with-seat-numbers table.
    Seats {
        #[command(flatten)]
        input: InputArgs,
        /// Capacity of the carrier-load row of the table.
        #[arg(long, default_value = "inf")]
        capacity: Capacity,
        /// Table window; defaults to the configuration's own window.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Print the KKR rigged configuration.
    Kkr {
        #[command(flatten)]
        input: InputArgs,
        /// Scan only sites 1..=WINDOW; defaults to the safe window
        /// (the stabilized rigged configuration).
        #[arg(long)]
        window: Option<usize>,
    },
    /// Print the soliton decomposition and slot configuration.
    Slots {
        #[command(flatten)]
        input: InputArgs,
        /// Display window; defaults to the configuration's own window.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Print zeta by the seat route, the slot route and the KKR riggings.
    Zeta {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run the verification suite; exit code 0 iff every check passes.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Check every configuration of window length 1..=N.
        #[arg(long, conflicts_with = "fuzz")]
        exhaustive: Option<usize>,
        /// Check COUNT deterministic random configurations.
        #[arg(long)]
        fuzz: Option<usize>,
        /// Capacities to exercise, e.g. `1,2,inf`.
        #[arg(long, default_value = "1,2,3,inf", value_delimiter = ',')]
        caps: Vec<Capacity>,
        /// Time steps per configuration.
        #[arg(long, default_value_t = 3)]
        steps: usize,
        /// Seed for --fuzz.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Length of random configurations for --fuzz.
        #[arg(long, default_value_t = 200)]
        length: usize,
        /// Ball density for --fuzz.
        #[arg(long, default_value_t = 0.4)]
        density: f64,
    },
    /// Emit deterministic random configurations.
    Random {
        /// Sites per configuration.
        #[arg(long)]
        length: usize,
        /// Ball probability per site.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Seed of the generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of configurations.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Evolve {
            input,
            capacity,
            steps,
            window,
        } => {
            for (idx, cfg) in read_configs(&input)?.iter().enumerate() {
                let orbit = evolve_n(cfg, capacity, steps);
                match input.format {
                    Format::Table => {
                        if idx > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", tables::evolution_lines(&orbit, window))?;
                    }
                    Format::Json => {
                        let width =
                            window.unwrap_or_else(|| orbit.iter().map(|c| c.window()).max().unwrap_or(0));
                        let doc = EvolveDoc {
                            capacity: capacity.to_string(),
                            generations: orbit.iter().map(|c| c.render(Window(width))).collect(),
                        };
                        writeln!(out, "{}", serde_json::to_string(&doc)?)?;
                    }
                    Format::Csv => {
                        if idx == 0 {
                            writeln!(out, "config,t,bits")?;
                        }
                        let width =
                            window.unwrap_or_else(|| orbit.iter().map(|c| c.window()).max().unwrap_or(0));
                        for (t, generation) in orbit.iter().enumerate() {
                            writeln!(out, "{idx},{t},{}", generation.render(Window(width)))?;
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Seats {
            input,
            capacity,
            window,
        } => {
            for (idx, cfg) in read_configs(&input)?.iter().enumerate() {
                let table_window = window.unwrap_or_else(|| cfg.window());
                if table_window < cfg.last_ball().unwrap_or(0) {
                    return Err(format!(
                        "window {table_window} does not cover the configuration"
                    )
                    .into());
                }
                let snc = seat_numbers(cfg, Window(table_window));
                match input.format {
                    Format::Table => {
                        if idx > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", tables::seats_table(&snc, capacity))?;
                    }
                    Format::Json => {
                        writeln!(out, "{}", serde_json::to_string(&seats_doc(&snc, capacity))?)?;
                    }
                    Format::Csv => {
                        if idx == 0 {
                            writeln!(out, "config,row,values")?;
                        }
                        for (label, cells) in seats_rows(&snc, capacity) {
                            writeln!(out, "{idx},{label},{}", cells.join(" "))?;
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Kkr { input, window } => {
            for (idx, cfg) in read_configs(&input)?.iter().enumerate() {
                let rc = match window {
                    Some(upto) => kkr_forward(cfg, upto),
                    None => kkr_stabilized(cfg),
                };
                match input.format {
                    Format::Table => {
                        if idx > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", tables::kkr_diagram(&rc))?;
                    }
                    Format::Json => {
                        let doc = KkrDoc {
                            mu: rc.partition().rows().to_vec(),
                            riggings: rc
                                .riggings()
                                .iter()
                                .map(|(k, v)| (k.to_string(), v.clone()))
                                .collect(),
                        };
                        writeln!(out, "{}", serde_json::to_string(&doc)?)?;
                    }
                    Format::Csv => {
                        if idx == 0 {
                            writeln!(out, "config,k,rigging")?;
                        }
                        for (k, rig) in rc.riggings() {
                            for j in rig {
                                writeln!(out, "{idx},{k},{j}")?;
                            }
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Slots { input, window } => {
            for (idx, cfg) in read_configs(&input)?.iter().enumerate() {
                let decomposition = ts_decompose(cfg);
                let nu = boxball::slots::slot_config_of(&decomposition);
                let zeta = boxball::slots::slot_decomposition_of(&decomposition, &nu);
                let display = window.unwrap_or_else(|| cfg.window()).min(nu.window());
                match input.format {
                    Format::Table => {
                        if idx > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", tables::slots_table(cfg, &nu, &decomposition, display))?;
                    }
                    Format::Json => {
                        let doc = SlotsDoc {
                            eta: cfg.render(Window(display)),
                            nu: (1..=display).map(|x| nu.get(x)).collect(),
                            solitons: decomposition
                                .solitons
                                .iter()
                                .map(|s| SolitonDoc {
                                    k: s.size,
                                    sites: s.sites.clone(),
                                })
                                .collect(),
                            zeta: zeta_entries(&zeta.entries),
                        };
                        writeln!(out, "{}", serde_json::to_string(&doc)?)?;
                    }
                    Format::Csv => {
                        if idx == 0 {
                            writeln!(out, "config,x,eta,nu")?;
                        }
                        for x in 1..=display {
                            let nu_cell = nu
                                .get(x)
                                .map(|v| v.to_string())
                                .unwrap_or_else(|| "inf".into());
                            writeln!(out, "{idx},{x},{},{nu_cell}", cfg.get(x))?;
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Zeta { input } => {
            for (idx, cfg) in read_configs(&input)?.iter().enumerate() {
                let seat = SeatNumberConfig::at_safe_window(cfg).zeta().entries;
                let slot = slot_decomposition(cfg).entries;
                let rc = kkr_stabilized(cfg);
                let mut kkr: BTreeMap<(usize, usize), usize> = BTreeMap::new();
                for (&k, rig) in rc.riggings() {
                    for &j in rig {
                        *kkr.entry((k, (j + k as i64) as usize)).or_insert(0) += 1;
                    }
                }
                match input.format {
                    Format::Table => {
                        if idx > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", tables::zeta_report(&seat, &slot, &kkr))?;
                    }
                    Format::Json => {
                        let doc = ZetaDoc {
                            agree: seat == slot && slot == kkr,
                            seat: zeta_entries(&seat),
                            slot: zeta_entries(&slot),
                            kkr: zeta_entries(&kkr),
                        };
                        writeln!(out, "{}", serde_json::to_string(&doc)?)?;
                    }
                    Format::Csv => {
                        if idx == 0 {
                            writeln!(out, "config,route,k,i,count")?;
                        }
                        for (route, entries) in
                            [("seat", &seat), ("slot", &slot), ("kkr", &kkr)]
                        {
                            for (&(k, i), &count) in entries {
                                writeln!(out, "{idx},{route},{k},{i},{count}")?;
                            }
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            input,
            exhaustive: exhaustive_len,
            fuzz: fuzz_count,
            caps,
            steps,
            seed,
            length,
            density,
        } => {
            let report = if let Some(max_len) = exhaustive_len {
                exhaustive(max_len, &caps, steps)?
            } else if let Some(count) = fuzz_count {
                fuzz(count, length, density, seed, &caps, steps)?
            } else {
                let mut merged: Option<CheckReport> = None;
                for cfg in read_configs(&input)? {
                    let report = check_all(&cfg, &caps, steps);
                    match &mut merged {
                        Some(m) => m.merge(&report),
                        None => merged = Some(report),
                    }
                }
                merged.ok_or("no configurations to verify")?
            };
            match input.format {
                Format::Table => {
                    for line in report.canonical_lines() {
                        writeln!(out, "{line}")?;
                    }
                    for line in report.timing_lines() {
                        eprintln!("{line}");
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
                Format::Csv => {
                    writeln!(out, "check,status,pass,fail")?;
                    for c in &report.checks {
                        writeln!(
                            out,
                            "{},{},{},{}",
                            c.name,
                            if c.failed == 0 { "pass" } else { "fail" },
                            c.passed,
                            c.failed
                        )?;
                    }
                }
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Random {
            length,
            density,
            seed,
            count,
        } => {
            for cfg in BallConfig::random_batch(count, length, density, seed)? {
                writeln!(out, "{}", cfg.render(Window(length)))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_configs(input: &InputArgs) -> Result<Vec<BallConfig>, Box<dyn std::error::Error>> {
    let text = match &input.file {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut buf = String::new();
            std::io::stdin().lock().read_to_string(&mut buf)?;
            buf
        }
    };
    text.lines()
        .map(|line| BallConfig::parse(line).map_err(Into::into))
        .collect()
}

#[derive(Serialize)]
struct EvolveDoc {
    capacity: String,
    generations: Vec<String>,
}

#[derive(Serialize)]
struct SeatsDoc {
    window: usize,
    max_seat: usize,
    eta: String,
    carrier: CarrierDoc,
    occupancy: Vec<Vec<u8>>,
    up: BTreeMap<String, Vec<usize>>,
    down: BTreeMap<String, Vec<usize>>,
    records: Vec<usize>,
}

#[derive(Serialize)]
struct CarrierDoc {
    capacity: String,
    values: Vec<usize>,
}

#[derive(Serialize)]
struct KkrDoc {
    mu: Vec<usize>,
    riggings: BTreeMap<String, Vec<i64>>,
}

#[derive(Serialize)]
struct SolitonDoc {
    k: usize,
    sites: Vec<usize>,
}

#[derive(Serialize)]
struct SlotsDoc {
    eta: String,
    nu: Vec<Option<usize>>,
    solitons: Vec<SolitonDoc>,
    zeta: Vec<ZetaEntry>,
}

#[derive(Serialize)]
struct ZetaEntry {
    k: usize,
    i: usize,
    count: usize,
}

#[derive(Serialize)]
struct ZetaDoc {
    agree: bool,
    seat: Vec<ZetaEntry>,
    slot: Vec<ZetaEntry>,
    kkr: Vec<ZetaEntry>,
}

fn zeta_entries(map: &BTreeMap<(usize, usize), usize>) -> Vec<ZetaEntry> {
    map.iter()
        .map(|(&(k, i), &count)| ZetaEntry { k, i, count })
        .collect()
}

fn seats_doc(snc: &SeatNumberConfig, capacity: Capacity) -> SeatsDoc {
    let l = snc.window();
    SeatsDoc {
        window: l,
        max_seat: snc.max_seat(),
        eta: (1..=l).map(|x| if snc.eta(x) == 1 { '1' } else { '0' }).collect(),
        carrier: CarrierDoc {
            capacity: capacity.to_string(),
            values: (0..=l).map(|x| snc.carrier_load(capacity, x)).collect(),
        },
        occupancy: (1..=snc.max_seat())
            .map(|k| (0..=l).map(|x| snc.occupancy(k, x)).collect())
            .collect(),
        up: (1..=snc.max_seat())
            .map(|k| (k.to_string(), snc.up_sites(k)))
            .collect(),
        down: (1..=snc.max_seat())
            .map(|k| (k.to_string(), snc.down_sites(k)))
            .collect(),
        records: snc.records(),
    }
}

fn seats_rows(snc: &SeatNumberConfig, capacity: Capacity) -> Vec<(String, Vec<String>)> {
    let l = snc.window();
    let mut rows = Vec::new();
    rows.push((
        "eta".to_string(),
        (1..=l).map(|x| snc.eta(x).to_string()).collect(),
    ));
    rows.push((
        format!("W({capacity})"),
        (0..=l).map(|x| snc.carrier_load(capacity, x).to_string()).collect(),
    ));
    for k in 1..=snc.max_seat() {
        rows.push((
            format!("w{k}"),
            (0..=l).map(|x| snc.occupancy(k, x).to_string()).collect(),
        ));
        rows.push((
            format!("up{k}"),
            (1..=l).map(|x| snc.eta_up(k, x).to_string()).collect(),
        ));
        rows.push((
            format!("down{k}"),
            (1..=l).map(|x| snc.eta_down(k, x).to_string()).collect(),
        ));
    }
    rows.push((
        "r".to_string(),
        (1..=l).map(|x| (snc.is_record(x) as u8).to_string()).collect(),
    ));
    rows
}
