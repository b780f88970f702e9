//! Barcode of a module over a chain, computed two independent ways.

use std::sync::Arc;

use persmod::prelude::*;

fn main() -> Result<()> {
    let f = Field::new(5)?;
    let chain = Arc::new(FinitePoset::chain(4)?);
    // k^1 -> k^2 -> k^2 -> k^1 with one class dying early
    let maps = vec![
        Matrix::from_i64(f, &[&[1], &[0]]),
        Matrix::from_i64(f, &[&[1, 0], &[0, 0]]),
        Matrix::from_i64(f, &[&[2, 3]]),
    ];
    let m = PersistenceModule::new(chain, f, vec![1, 2, 2, 1], maps)?;

    let bars = barcode_chain(&m)?;
    println!("barcode: {bars}");
    println!("supports from decompose: {:?}", decompose(&m, 0).supports());
    println!("dimension identity holds: {}", bars.matches_dims(&m));
    Ok(())
}
