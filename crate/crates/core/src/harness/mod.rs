//! Reports, regression ledgers and randomized suites built on the core
//! algorithms. The command-line tool is a thin layer over this module.

pub mod corpus;
pub mod ledger;
pub mod report;
pub mod suites;
