//! Reading and writing module files, and what validation errors look like.

use persmod::io::{parse_module, serialize_module};
use persmod::prelude::*;

const CHAIN: &str = r#"{
  "field_char": 5,
  "poset": { "chain": { "length": 3 } },
  "dims": { "0": 1, "1": 2, "2": 1 },
  "maps": { "0->1": [[1], [0]], "1->2": [[0, 6]] }
}"#;

const BROKEN_SQUARE: &str = r#"{
  "field_char": 5,
  "poset": { "grid": { "m": 2, "n": 2 } },
  "dims": { "0": 1, "1": 1, "2": 1, "3": 1 },
  "maps": { "0->1": [[1]], "0->2": [[1]], "1->3": [[1]], "2->3": [[2]] }
}"#;

fn main() -> Result<()> {
    let m = parse_module(CHAIN)?;
    println!("parsed {} with dims {:?}", m.poset().shape(), m.dims());
    print!("{}", serialize_module(&m));

    match parse_module(BROKEN_SQUARE) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    match parse_module(&CHAIN.replace("\"0->1\"", "\"0->2\"")) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
