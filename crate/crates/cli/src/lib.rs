//! Front end of the `latgap` command: instance specs, reports and verifications.

pub mod commands;
pub mod fail;
pub mod instance;
pub mod output;
pub mod verify;
