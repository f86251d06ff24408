//! Oracles, strategies and property checks shared by the test targets.

pub mod checks;
pub mod oracle;
pub mod strategies;
