#![no_main]

use fatpoints::parse::{parse_batch, parse_multiplicities};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(rows) = parse_batch(data) else {
        return;
    };
    let lines: Vec<&str> = data.lines().collect();
    let mut last = 0;
    for (line, mults) in rows {
        assert!(line > last && line <= lines.len());
        last = line;
        assert_eq!(parse_multiplicities(lines[line - 1]).unwrap(), mults);
    }
});
