//! Independent checks for membership verdicts.

pub mod queries;
pub mod series;
pub mod subst;

pub use queries::{QueryBounds, QueryGen};
pub use series::{choose_point, integrate, series_at, series_oracle, Series, SeriesVerdict, DEFAULT_ORDER};
pub use subst::subst_oracle;

#[cfg(test)]
mod tests;
