//! A zigzag module, its extension to the enclosing grid, and the barcode
//! obtained along both routes.

use std::sync::Arc;

use persmod::poset::Step;
use persmod::prelude::*;

fn main() -> Result<()> {
    let f = Field::new(7)?;
    let path = ZigzagPath::from_steps(vec![Step::Right, Step::Down, Step::Right, Step::Down]);
    let fence = Arc::new(FinitePoset::zigzag(path)?);
    for &(a, b) in fence.covers() {
        println!("arrow {a} -> {b}");
    }
    // dims 1, 2, 1, 1, 1 with one class of the middle space killed on each side
    let dims = vec![1, 2, 1, 1, 1];
    let maps = fence
        .covers()
        .iter()
        .map(|&(a, b)| match (a, b) {
            (0, 1) => Matrix::from_i64(f, &[&[1], &[0]]),
            (2, 1) => Matrix::from_i64(f, &[&[1], &[1]]),
            (2, 3) => Matrix::from_i64(f, &[&[3]]),
            (4, 3) => Matrix::from_i64(f, &[&[0]]),
            _ => unreachable!(),
        })
        .collect();
    let m = PersistenceModule::new(fence, f, dims, maps)?;

    let e = extend_zigzag(&m)?;
    println!("extension lives on {} with dims {:?}", e.poset().shape(), e.dims());
    println!("extension middle exact: {}", check_middle_exact(&e)?.is_middle_exact());
    println!("barcode: {}", zigzag_barcode(&m, 0)?);
    Ok(())
}
