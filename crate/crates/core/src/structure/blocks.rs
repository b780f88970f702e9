use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::exact::check_middle_exact;
use crate::decomp::decompose;
use crate::error::{Error, Result};
use crate::hom::indecomposables_isomorphic;
use crate::module::PersistenceModule;
use crate::poset::{classify_block, BlockType, Interval, Shape};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub carrier: Interval,
    pub types: BTreeSet<BlockType>,
    pub multiplicity: usize,
}

/// Multiset of block carriers, sorted by carrier.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockList {
    pub blocks: Vec<Block>,
}

impl BlockList {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().map(|b| b.multiplicity).sum()
    }

    pub fn pointwise_dims(&self, size: usize) -> Vec<usize> {
        let mut dims = vec![0; size];
        for b in &self.blocks {
            for &x in b.carrier.elements() {
                dims[x] += b.multiplicity;
            }
        }
        dims
    }

    pub fn matches_dims(&self, module: &PersistenceModule) -> bool {
        self.pointwise_dims(module.poset().len()) == module.dims()
    }
}

impl fmt::Display for BlockList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let tags: Vec<&str> = b.types.iter().map(|t| t.tag()).collect();
            write!(f, "{:?} [{}]", b.carrier.elements(), tags.join(","))?;
            if b.multiplicity > 1 {
                write!(f, " x{}", b.multiplicity)?;
            }
        }
        Ok(())
    }
}

/// Decompose a middle exact module over a grid or triangular region and
/// check that every summand is a block module.
///
/// A summand whose support is not a block, or which is not isomorphic to
/// the interval module on its support, is returned as
/// [`Error::NonBlockSummand`].
pub fn blocks_of(m: &PersistenceModule, seed: u64) -> Result<BlockList> {
    check_middle_exact(m)?.require()?;
    let p = m.poset();
    let d = decompose(m, seed);
    let mut counts: BTreeMap<Interval, (BTreeSet<BlockType>, usize)> = BTreeMap::new();
    for (index, s) in d.summands.iter().enumerate() {
        let support = s.support();
        let non_block = || Error::NonBlockSummand { index, support: support.clone() };
        let carrier = Interval::new(p, &support).map_err(|_| non_block())?;
        let types = classify_block(&support, p)?.ok_or_else(non_block)?;
        let model = PersistenceModule::interval_module(p, m.field(), &carrier);
        if indecomposables_isomorphic(&s.module, &model)?.is_none() {
            return Err(non_block());
        }
        counts.entry(carrier).or_insert((types, 0)).1 += 1;
    }
    Ok(BlockList {
        blocks: counts
            .into_iter()
            .map(|(carrier, (types, multiplicity))| Block { carrier, types, multiplicity })
            .collect(),
    })
}

/// Block decomposition of a middle exact module over a grid.
pub fn block_decompose(m: &PersistenceModule, seed: u64) -> Result<BlockList> {
    if !matches!(m.poset().shape(), Shape::Grid(..)) {
        return Err(Error::NotAGrid(m.poset().shape().to_string()));
    }
    blocks_of(m, seed)
}

/// Block decomposition of a middle exact module over a triangular region,
/// where a block means the trace of a grid block on the region.
pub fn verify_triangle_blocks(m: &PersistenceModule, seed: u64) -> Result<BlockList> {
    if !matches!(m.poset().shape(), Shape::TriangleRegion { .. }) {
        return Err(Error::NotGridLike(format!("{} is not a triangular region", m.poset().shape())));
    }
    blocks_of(m, seed)
}
