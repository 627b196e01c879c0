pub mod formula;
pub mod tower;
pub use tower::{DeltaGenericType, Frac, TowerLevel, Verdict};
pub mod stabilize;
pub use stabilize::{read_stacked, stabilize, StabilizationTrace};
