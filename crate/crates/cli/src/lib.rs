//! Library side of the `pi1` binary: expression text, file schemas, and
//! trace formatting, shared with the integration tests.

pub mod exprtext;
pub mod schema;
pub mod trace;
