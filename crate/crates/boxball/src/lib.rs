//! Box-ball system toolkit.
//!
//! Simulates the box-ball system with arbitrary (finite or unbounded) carrier
//! capacity and computes its three linearizations:
//!
//! * the seat number configuration of the carrier, with the matching points
//!   `tau`, effective positions `xi` and linearization data `zeta`
//!   ([`seats`]);
//! * the rigged configuration of the sequential KKR scan, its inverse, and
//!   the interlacing pair of Young diagrams with refined riggings ([`kkr`]);
//! * the Takahashi-Satsuma soliton decomposition, slot configuration and slot
//!   decomposition, with full reconstruction ([`slots`]).
//!
//! The [`verify`] module cross-checks every identity relating these encodings
//! by exact integer computation, exhaustively on short configurations and on
//! deterministic random batches.

pub mod config;
pub mod error;
pub mod evolution;
pub mod kkr;
pub mod seats;
pub mod slots;
pub mod tables;
pub mod verify;

pub use config::{BallConfig, Window};
pub use error::{Error, Result};
pub use evolution::{carrier_trace, evolve, evolve_n, Capacity, CarrierTrace};
pub use kkr::{
    energy_vacancy, interlacing_sequence, kkr_forward, kkr_inverse, kkr_stabilized,
    shift_riggings, InterlacingBuilder, InterlacingPair, KkrBuilder, Partition, RiggedConfig,
};
pub use seats::{seat_numbers, seat_trace, Arrow, Mark, SeatNumberConfig, SeatTrace, SeatZeta};
pub use slots::{
    reconstruct, slot_config, slot_decomposition, ts_decompose, SlotConfig, SlotZeta, Soliton,
    SolitonDecomposition,
};
pub use verify::{check_all, exhaustive, fuzz, CheckReport, CheckStats, Counterexample};
