//! Write SVG pictures of a barcode and of a block decomposition.

use std::sync::Arc;

use persmod::ingest::{interlevel_h0, Rat, SampledFunction};
use persmod::prelude::*;
use persmod::svg::{render_barcode, render_blocks};

fn main() -> Result<()> {
    let out = std::env::temp_dir();
    let f = Field::default();

    let chain = Arc::new(FinitePoset::chain(5)?);
    let parts = [
        PersistenceModule::interval(&chain, f, &[0, 1, 2, 3, 4])?,
        PersistenceModule::interval(&chain, f, &[1, 2])?,
        PersistenceModule::interval(&chain, f, &[3])?,
    ];
    let sum = PersistenceModule::direct_sum_all(&chain, f, &parts)?;
    let path = out.join("barcode.svg");
    std::fs::write(&path, render_barcode(&barcode_chain(&sum)?, 5))?;
    println!("wrote {}", path.display());

    let ints = |xs: &[i64]| xs.iter().map(|&x| Rat::int(x)).collect::<Vec<_>>();
    let g = SampledFunction::interlevel(ints(&[0, 5, 1, 6, 2, 4]), ints(&[-1, 1, 2]), ints(&[3, 5, 7]));
    let m = interlevel_h0(&g, f)?;
    let path = out.join("blocks.svg");
    std::fs::write(&path, render_blocks(&block_decompose(&m, 0)?, m.poset()))?;
    println!("wrote {}", path.display());
    Ok(())
}
