//! Reading filtrations, text formats for tame objects, zigzags and diagrams.

mod filtration;
mod format;
mod text;

pub use filtration::{ingest_filtration, parse_filtration, serialize_filtration, FilteredComplex};
pub use format::{
    describe, emit_diagrams, parse_diagrams, parse_document, parse_tame, parse_tame_map,
    parse_zigzag, serialize_tame, serialize_tame_map, serialize_zigzag, DiagramFormat, Document,
    CSV_HEADER,
};

#[cfg(test)]
mod tests;
