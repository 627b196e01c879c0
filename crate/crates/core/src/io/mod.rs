pub mod manifest;
pub mod parse;
pub mod print;

pub use manifest::{parse_system, system_to_text, IdealFile, ManifestPrimality, PairManifest};
