//! Library side of the `unexp` command: analysis orchestration, reports and
//! the fixture acceptance harness.

pub mod analyze;
pub mod report;
pub mod verify;
