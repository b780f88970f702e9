//! Monomorphisms out of the interval module on a principal down-set split.

use std::sync::Arc;

use persmod::ingest::generate;
use persmod::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let f = Field::default();
    let grid = Arc::new(FinitePoset::grid(3, 3)?);
    let down_set: Vec<usize> = grid.elements().filter(|&x| grid.leq(x, 4)).collect();
    println!("down-set of (1, 1): {down_set:?}, directed ideal: {}", grid.is_directed(&down_set) && grid.is_ideal(&down_set));
    let k = PersistenceModule::interval(&grid, f, &down_set)?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let carriers = [Interval::new(&grid, &[0, 1, 3, 4, 6, 7])?, Interval::new(&grid, &down_set)?];
    let target = generate(&grid, f, &carriers.iter().collect::<Vec<_>>(), true, &mut rng)?.module;

    let hom = hom_basis(&k, &target)?;
    println!("dim Hom = {}", hom.dim());
    let coeffs: Vec<u32> = (1..=hom.dim() as u32).collect();
    let mono = hom.combine(&coeffs).expect("nonempty basis");
    println!("pointwise injective: {}", mono.is_mono());

    let g = retraction(&k, &target, &mono)?.expect("splits");
    println!("g . f = id: {}", g.compose(&mono) == Morphism::identity(&k));

    let small = PersistenceModule::interval(&grid, f, &[4])?;
    let into_point = hom_basis(&small, &k)?;
    println!("maps from the top point into the down-set module: {}", into_point.dim());
    Ok(())
}
