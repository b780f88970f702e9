//! Middle exactness and block decomposition over a grid, plus the effect
//! of duality on block types.

use persmod::ingest::{random_module, CarrierSpec, GeneratorSpec};
use persmod::prelude::*;

fn main() -> Result<()> {
    // Grid(3, 4): id = 4 i + j
    let spec = GeneratorSpec {
        poset: ShapeDescriptor::Grid { m: 3, n: 4 },
        carriers: vec![
            CarrierSpec { elements: vec![0, 1, 4, 5], multiplicity: 1 },
            CarrierSpec { elements: vec![6, 7, 10, 11], multiplicity: 1 },
            CarrierSpec { elements: (4..8).collect(), multiplicity: 1 },
            CarrierSpec { elements: vec![1, 5, 9], multiplicity: 1 },
        ],
        scramble: true,
        seed: 3,
    };
    let m = random_module(&spec, Field::default())?.module;

    let exactness = check_middle_exact(&m)?;
    println!("{} unit squares, middle exact: {}", exactness.squares.len(), exactness.is_middle_exact());

    let blocks = block_decompose(&m, 0)?;
    println!("blocks:\n{blocks}");

    let dual = block_decompose(&m.dualize_on_grid()?, 0)?;
    println!("blocks of the dual:\n{dual}");

    let point = PersistenceModule::interval(m.poset(), m.field(), &[5])?;
    match block_decompose(&point, 0) {
        Err(Error::NotMiddleExact(square)) => println!("a single interior point fails: {square}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
