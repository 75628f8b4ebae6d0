//! Decide Sylow commutator and center indices from character tables.

pub mod exactnum;
pub mod numtheory;
pub mod table;
pub mod oracle;
pub mod io;
pub mod corpus;
pub mod blocks;
pub mod simplerec;
pub mod detect;
pub mod app;
