//! Data model for packed interval covering: intervals, packs, instances,
//! witnesses, the polynomial cover verifier, and coordinate compression.

mod compress;
mod instance;
mod interval;

pub use compress::{CompressedInstance, Segment};
pub use instance::{Pack, PicInstance, Selection, SelectionError, Violation};
pub use interval::Interval;
