pub mod bench;
pub mod engine;
pub mod expr;
pub mod interval;
pub mod rational;
pub mod rewrite;
pub mod rules;
pub mod search;
