pub mod coeff;
pub mod complex;
pub mod error;
pub mod io;
pub mod localization;
pub mod model;
pub mod monoidal;
pub mod presentation;
pub mod selftest;
pub mod spectra;

pub use error::{Error, Result};
