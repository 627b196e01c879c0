//! Good pairs of varieties and the differential generic types they determine.

pub mod diff;
pub mod enumerate;
pub mod error;
pub mod generic;
pub mod pair;
pub mod ideal;
pub mod oracle;
pub mod io;
pub mod poly;

pub use error::{Condition, Error, Result};
