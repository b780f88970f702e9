//! Hom spaces and isomorphism testing.

use std::sync::Arc;

use persmod::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let f = Field::default();
    let chain = Arc::new(FinitePoset::chain(4)?);
    let a = PersistenceModule::interval(&chain, f, &[0, 1, 2])?;
    let b = PersistenceModule::interval(&chain, f, &[1, 2, 3])?;
    println!("dim Hom(k[0,2], k[1,3]) = {}", hom_basis(&a, &b)?.dim());
    println!("dim Hom(k[1,3], k[0,2]) = {}", hom_basis(&b, &a)?.dim());

    let (sum, _) = a.direct_sum(&b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let q: Vec<Matrix> = sum.dims().iter().map(|&d| Matrix::random_invertible(f, d, &mut rng)).collect();
    let scrambled = sum.conjugate(&q)?;
    let iso = are_isomorphic(&sum, &scrambled, 0)?;
    println!("sum and scrambled copy isomorphic: {}", iso.is_some_and(|g| g.is_iso()));
    println!("k[0,2] and k[1,3] isomorphic: {}", are_isomorphic(&a, &b, 0)?.is_some());
    Ok(())
}
