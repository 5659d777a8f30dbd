//! Command implementations and bundled fixtures for the `symunion` binary.

pub mod commands;
pub mod corpus;
