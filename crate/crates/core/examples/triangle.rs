//! Block decomposition over a triangular region of a grid.

use std::sync::Arc;

use persmod::ingest::generate;
use persmod::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let tri = Arc::new(FinitePoset::triangle(4, 4, 2)?);
    let id = |i: i64, j: i64| tri.id_at((i, j)).expect("inside the region");
    // a lower-left block and a full-width strip, both cut down to the region
    let low = Interval::new(&tri, &[id(0, 3), id(1, 2), id(1, 3), id(2, 1), id(2, 2), id(2, 3)])?;
    let strip = Interval::new(&tri, &[id(1, 2), id(2, 2), id(3, 2), id(0, 3), id(1, 3), id(2, 3), id(3, 3)])?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m = generate(&tri, Field::default(), &[&low, &strip], true, &mut rng)?.module;
    println!("{} elements, middle exact: {}", tri.len(), check_middle_exact(&m)?.is_middle_exact());
    println!("{}", verify_triangle_blocks(&m, 0)?);
    Ok(())
}
