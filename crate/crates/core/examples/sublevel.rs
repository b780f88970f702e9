//! Sublevel set persistence of a sampled function.

use persmod::ingest::{sublevel_h0, Rat, SampledFunction};
use persmod::prelude::*;

fn main() -> Result<()> {
    let values = [3, 1, 4, 1, 5, 0, 2].map(Rat::int).to_vec();
    let thresholds = (0..6).map(Rat::int).collect();
    let m = sublevel_h0(&SampledFunction::sublevel(values, thresholds), Field::default())?;
    println!("components per threshold: {:?}", m.dims());
    println!("barcode: {}", barcode_chain(&m)?);
    Ok(())
}
