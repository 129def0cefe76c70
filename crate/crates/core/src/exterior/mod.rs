pub mod basis;
pub mod form;
pub mod frame;
pub mod linear_map;

pub use basis::Mask;
pub use form::{complex_top_ratio, form_ratio, Form, MaskVec};
pub use frame::{tables, Frame, FrameTables};
pub use linear_map::{LinearMap, Slice};
