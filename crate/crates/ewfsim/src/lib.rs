pub mod basis;
pub mod cli;
pub mod event;
pub mod measure;
pub mod protocol;
pub mod scalar;
pub mod scenarios;
pub mod state;
pub mod system;
