//! JSON documents and commands for the `schreier` tool.

pub mod commands;
pub mod document;
