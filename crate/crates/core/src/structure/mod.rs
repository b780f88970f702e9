//! Structure results for special posets: barcodes over chains, middle
//! exactness and block decompositions over grids, zigzag extension and
//! triangular regions.

mod barcode;
mod blocks;
mod exact;
mod zigzag;

pub use barcode::{barcode_chain, Bar, Barcode};
pub use blocks::{block_decompose, blocks_of, verify_triangle_blocks, Block, BlockList};
pub use exact::{check_middle_exact, check_rectangle, unit_squares, MiddleExactness, SquareReport};
pub use zigzag::{extend_zigzag, fence_window_ids, zigzag_barcode};
