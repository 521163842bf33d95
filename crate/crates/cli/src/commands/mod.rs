pub mod audit;
pub mod build;
pub mod flow;
pub mod sweep;
