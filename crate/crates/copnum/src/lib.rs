//! Cops and robbers on chess, royal, and animal graphs: board construction,
//! exact k-cop solving by retrograde analysis, named cop/robber strategies
//! with a deterministic simulation engine, and verification reports for the
//! classification results these tools reproduce.

pub mod analysis;
pub mod board;
pub mod cli;
pub mod solver;
pub mod strategies;
