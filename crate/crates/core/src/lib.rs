pub mod dsl;
pub mod engine;
pub mod field;
pub mod maps;
pub mod models;
pub mod moments;
pub mod report;
pub mod sampling;
