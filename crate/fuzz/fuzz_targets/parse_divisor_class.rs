#![no_main]

use fatpoints::cohomology::cohomology;
use fatpoints::parse::parse_divisor_class;
use fatpoints::{mu_rank, DivisorClass};
use libfuzzer_sys::fuzz_target;

// keeps the engine check cheap
const BOUND: i64 = 40;

fuzz_target!(|data: &str| {
    let Ok(class) = parse_divisor_class(data) else {
        return;
    };
    assert_eq!(parse_divisor_class(&class.to_string()).unwrap(), class);
    if class.d.abs() > BOUND || class.m.iter().any(|m| m.abs() > BOUND) {
        return;
    }
    let c = cohomology(&class).unwrap();
    assert_eq!(c.h0 as i64 - c.h1 as i64 + c.h2 as i64, c.chi);
    let rep = mu_rank(&class).unwrap();
    let next = cohomology(&(class + DivisorClass::line())).unwrap().h0;
    assert_eq!(rep.cok as i64 - rep.ker as i64, next as i64 - 3 * c.h0 as i64);
});
