//! Replays the checked-in fuzz seeds with the same checks as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use fatpoints::cohomology::cohomology;
use fatpoints::parse::{parse_batch, parse_divisor_class, parse_multiplicities};
use fatpoints::resolution::MAX_MULTIPLICITY;
use fatpoints::{mu_rank, DivisorClass, FatPointScheme};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with("seed-"))
        .map(|p| {
            let text = String::from_utf8_lossy(&fs::read(&p).unwrap()).into_owned();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn multiplicity_seeds() {
    let mut accepted = 0;
    for (path, text) in seeds("parse_multiplicities") {
        let Ok(mults) = parse_multiplicities(&text) else {
            continue;
        };
        accepted += 1;
        let joined = mults.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(parse_multiplicities(&joined).unwrap(), mults, "{}", path.display());
        let Ok(scheme) = FatPointScheme::new(&mults) else {
            assert!(mults.iter().any(|&m| m > MAX_MULTIPLICITY));
            return;
        };
        assert!(scheme.mults().windows(2).all(|w| w[0] >= w[1]));
    }
    assert!(accepted > 0);
}

#[test]
fn divisor_class_seeds() {
    let mut accepted = 0;
    for (path, text) in seeds("parse_divisor_class") {
        let Ok(class) = parse_divisor_class(&text) else {
            continue;
        };
        accepted += 1;
        assert_eq!(parse_divisor_class(&class.to_string()).unwrap(), class, "{}", path.display());
        let c = cohomology(&class).unwrap();
        assert_eq!(c.h0 as i64 - c.h1 as i64 + c.h2 as i64, c.chi);
        let rep = mu_rank(&class).unwrap();
        let next = cohomology(&(class + DivisorClass::line())).unwrap().h0;
        assert_eq!(rep.cok as i64 - rep.ker as i64, next as i64 - 3 * c.h0 as i64, "{}", path.display());
    }
    assert!(accepted > 0);
}

#[test]
fn batch_seeds() {
    let mut accepted = 0;
    for (path, text) in seeds("parse_batch") {
        let Ok(rows) = parse_batch(&text) else {
            continue;
        };
        accepted += 1;
        let lines: Vec<&str> = text.lines().collect();
        for (line, mults) in rows {
            assert_eq!(parse_multiplicities(lines[line - 1]).unwrap(), mults, "{}", path.display());
        }
    }
    assert!(accepted > 0);
}
