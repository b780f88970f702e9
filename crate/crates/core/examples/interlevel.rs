//! Interlevel set persistence of a sampled function and its blocks.

use persmod::ingest::{interlevel_h0, Rat, SampledFunction};
use persmod::prelude::*;

fn main() -> Result<()> {
    let ints = |xs: &[i64]| xs.iter().map(|&x| Rat::int(x)).collect::<Vec<_>>();
    let f = SampledFunction::interlevel(ints(&[0, 4, 0, 4, 0]), ints(&[-1, 1]), ints(&[3, 5]));
    let m = interlevel_h0(&f, Field::default())?;
    println!("dims over {}: {:?}", m.poset().shape(), m.dims());
    let blocks = block_decompose(&m, 0)?;
    println!("{blocks}");
    println!("dimension identity holds: {}", blocks.matches_dims(&m));
    Ok(())
}
