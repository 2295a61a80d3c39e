//! Reversed-order (RevOrder) arithmetic traces.
//!
//! * [`digits`]: exact base-10 arithmetic with carry and borrow tracking.
//! * [`csid`]: sequential-intermediate-digit counts for equations.
//! * [`traces`]: generation, serialization, parsing and verification of
//!   step-by-step traces for the four operations.
//! * [`dataset`]: deterministic synthesis of training records and token-cost
//!   statistics.

pub mod csid;
pub mod dataset;
pub mod digits;
pub mod traces;

pub use digits::{DigitString, ReversedLiteral};
pub use traces::{Equation, Form, Op, Trace};
