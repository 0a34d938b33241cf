pub mod error;
pub mod exactlin;

pub use error::{Error, Result};
pub use exactlin::{Field, FieldMatrix};
pub mod chaincx;
pub mod decomp;
pub mod morinv;
pub mod pipeline;
pub mod random;
pub mod tamecat;
pub mod zigzag;
