//! Decompose a scrambled direct sum over a grid and match it against the
//! summands it was built from.

use persmod::decomp::{decompose, krs_match};
use persmod::ingest::{random_module, CarrierSpec, GeneratorSpec};
use persmod::prelude::*;

fn main() -> Result<()> {
    let spec = GeneratorSpec {
        poset: ShapeDescriptor::Grid { m: 3, n: 3 },
        carriers: vec![
            CarrierSpec { elements: vec![0, 1, 3, 4], multiplicity: 1 },
            CarrierSpec { elements: vec![1, 2, 4, 5, 7, 8], multiplicity: 2 },
            CarrierSpec { elements: vec![4], multiplicity: 1 },
        ],
        scramble: true,
        seed: 17,
    };
    let generated = random_module(&spec, Field::default())?;
    let m = &generated.module;
    println!("module over {} with dims {:?}", m.poset().shape(), m.dims());

    let d = decompose(m, 0);
    for (i, s) in d.summands.iter().enumerate() {
        println!("summand {i}: support {:?} ({})", s.support(), s.certificate);
    }
    println!("reconstructs identity: {}", d.reconstructs());

    match krs_match(&d, &generated.ground_truth) {
        Ok(matching) => println!("matches the generating summands via {:?}", matching.permutation()),
        Err(report) => println!("mismatch: {report}"),
    }
    Ok(())
}
