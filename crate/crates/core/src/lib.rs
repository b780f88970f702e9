//! Exact decomposition of persistence modules over finite posets.
//!
//! A persistence module here is a functor from a finite poset to
//! finite-dimensional vector spaces over a prime field `F_p`, stored as one
//! dimension per element and one matrix per cover arrow. The crate provides
//!
//! * [`poset`]: chains, grids, zigzag fences, triangular regions and their
//!   intervals, ideals, filters and blocks;
//! * [`linalg`]: exact dense linear algebra over `F_p`;
//! * [`module`]: validation, direct sums, restriction, duality and the
//!   directional submodules of a two-parameter module;
//! * [`hom`]: morphism spaces, retractions and isomorphism testing;
//! * [`decomp`]: Fitting-lemma based decomposition into indecomposables and
//!   Krull–Remak–Schmidt matching of decompositions;
//! * [`structure`]: specialised structure results (chain barcodes,
//!   middle exactness, block decomposition, zigzag extension and
//!   triangular regions);
//! * [`ingest`]: `H_0` sublevel and interlevel modules of sampled functions,
//!   plus seeded generators of scrambled modules with known summands;
//! * [`io`], [`svg`] and [`cli`]: the `pmd` command-line front end.
//!
//! ```
//! use std::sync::Arc;
//! use persmod::prelude::*;
//!
//! let chain = Arc::new(FinitePoset::chain(3).unwrap());
//! let a = PersistenceModule::interval(&chain, Field::default(), &[0, 1]).unwrap();
//! let b = PersistenceModule::interval(&chain, Field::default(), &[1, 2]).unwrap();
//! let (sum, _) = a.direct_sum(&b).unwrap();
//! let bars = barcode_chain(&sum).unwrap();
//! assert_eq!(bars.len(), 2);
//! ```

pub mod cli;
pub mod decomp;
pub mod error;
pub mod hom;
pub mod ingest;
pub mod io;
pub mod linalg;
pub mod module;
pub mod poset;
pub mod structure;
pub mod svg;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::decomp::{decompose, fitting_split, krs_match, Certificate, Decomposition};
    pub use crate::error::{Error, Result};
    pub use crate::hom::{are_isomorphic, hom_basis, retraction};
    pub use crate::linalg::{Field, Matrix, Subspace};
    pub use crate::module::{Morphism, PersistenceModule, SubmoduleFamily};
    pub use crate::poset::{BlockType, FinitePoset, Interval, Shape, ShapeDescriptor, ZigzagPath};
    pub use crate::structure::{
        barcode_chain, block_decompose, check_middle_exact, extend_zigzag,
        verify_triangle_blocks, zigzag_barcode, Barcode, BlockList,
    };
}
