#![no_main]

use fatpoints::parse::parse_multiplicities;
use fatpoints::resolution::MAX_MULTIPLICITY;
use fatpoints::FatPointScheme;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(mults) = parse_multiplicities(data) else {
        return;
    };
    assert!(!mults.is_empty() && mults.len() <= 8);
    assert!(mults.iter().all(|&m| m >= 0));
    let text = mults.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
    assert_eq!(parse_multiplicities(&text).unwrap(), mults);
    let Ok(scheme) = FatPointScheme::new(&mults) else {
        assert!(mults.iter().any(|&m| m > MAX_MULTIPLICITY));
        return;
    };
    assert!(scheme.mults().windows(2).all(|w| w[0] >= w[1]));
});
