//! Simulation of GHZ-based quantum direct communication with an
//! authenticating third party.
//!
//! Alice sends a message to Bob over GHZ triples that Trent, the
//! authenticator, prepared and shares with them. With the bit-flip encoding
//! (`H` for 0, `H·X` for 1) an insider Trent recovers every message bit by
//! rotating Alice's qubit back and reading it against his own. Replacing
//! `X` with the phase flip `σz` leaves Bob's decoding intact while Trent's
//! reading becomes independent of the bit.
//!
//! - [`qsim`]: exact state vectors for up to three qubits, Z/X/Bell measurements.
//! - [`protocol`]: encodings, decoding tables, rounds, sessions, exact enumeration.
//! - [`adversary`]: Trent's honest and attacking strategies, attack metrics.
//! - [`harness`]: seeded Monte Carlo experiments, identity checks, table rendering.

pub mod adversary;
pub mod error;
pub mod harness;
pub mod protocol;
pub mod qsim;

pub use error::{Error, Result};

/// Alice's qubit.
pub const QUBIT_A: usize = 0;
/// Trent's qubit.
pub const QUBIT_T: usize = 1;
/// Bob's qubit.
pub const QUBIT_B: usize = 2;
