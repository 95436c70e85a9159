pub mod cli;
pub mod fock;
pub mod lex;
pub mod logic;
pub mod qsets;
pub mod quantum;
pub mod report;
pub mod structures;
