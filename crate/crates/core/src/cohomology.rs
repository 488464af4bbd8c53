//! Dimensions of cohomology of line bundles on the blow-up at eight general
//! points.
//!
//! `h0` strips exceptional curves that meet the class negatively (they are
//! forced fixed components) until the class is either nef, where
//! Riemann-Roch is exact, or has negative degree and no sections. With eight
//! points the anticanonical class is ample, so no other curve can be fixed.
//! `h2` comes from Serre duality and `h1` from the Euler characteristic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{canonical_class, check_bounds, exceptional_curves, CurveClass, DivisorClass};

/// Whether `class` meets every exceptional curve nonnegatively.
pub fn is_nef(class: &DivisorClass) -> bool {
    exceptional_curves().iter().all(|c| class.dot(&c.class) >= 0)
}

/// Riemann-Roch: `(F^2 - F.K)/2 + 1`.
pub fn chi(class: &DivisorClass) -> i64 {
    let twice = class.square() - class.dot_canonical();
    debug_assert!(twice % 2 == 0, "F^2 - F.K is always even");
    twice / 2 + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The residual class is nef, so `h0 = chi(residual)`.
    NefResidual,
    /// The residual has negative degree: no sections at all.
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    /// Curves removed, in the order first removed, with multiplicity.
    pub subtracted: Vec<(CurveClass, u64)>,
    pub residual: DivisorClass,
    pub verdict: Verdict,
}

impl ReductionReport {
    /// `residual + sum mult * curve`, which must equal the input class.
    pub fn reassemble(&self) -> DivisorClass {
        self.subtracted.iter().fold(self.residual, |acc, (c, k)| acc + (*k as i64) * c.class)
    }
}

pub(crate) fn iteration_cap(class: &DivisorClass) -> u64 {
    let size = class.d.unsigned_abs() + class.m.iter().map(|x| x.unsigned_abs()).sum::<u64>();
    10 * size + 100
}

/// Peels exceptional curves `C` with `F.C < 0` off `F`, one copy at a time,
/// always taking the first such curve in table order.
pub fn fixed_component_reduction(class: &DivisorClass) -> Result<ReductionReport> {
    check_bounds(class)?;
    let cap = iteration_cap(class);
    let mut residual = *class;
    let mut subtracted: Vec<(CurveClass, u64)> = Vec::new();
    for _ in 0..=cap {
        if residual.degree() < 0 {
            return Ok(ReductionReport { subtracted, residual, verdict: Verdict::Empty });
        }
        let Some(curve) = exceptional_curves().iter().find(|c| residual.dot(&c.class) < 0) else {
            if residual.dot(&-canonical_class()) < 0 {
                return Err(Error::invariant(format!("nef class {residual} meets -K negatively")));
            }
            return Ok(ReductionReport { subtracted, residual, verdict: Verdict::NefResidual });
        };
        residual -= curve.class;
        match subtracted.iter_mut().find(|(c, _)| c.class == curve.class) {
            Some((_, k)) => *k += 1,
            None => subtracted.push((*curve, 1)),
        }
    }
    Err(Error::invariant(format!("fixed component reduction of {class} exceeded {cap} steps")))
}

/// `h0` without the trace. Same loop as [`fixed_component_reduction`], but
/// a curve with `F.C = -k` is removed `k` times at once.
pub fn h0(class: &DivisorClass) -> Result<u64> {
    check_bounds(class)?;
    let cap = iteration_cap(class);
    let mut f = *class;
    for _ in 0..=cap {
        if f.degree() < 0 {
            return Ok(0);
        }
        match exceptional_curves().iter().map(|c| (f.dot(&c.class), c)).find(|(dot, _)| *dot < 0) {
            Some((dot, c)) => f -= -dot * c.class,
            None => {
                let value = chi(&f);
                return u64::try_from(value).map_err(|_| Error::invariant(format!("nef class {f} has chi = {value}")));
            }
        }
    }
    Err(Error::invariant(format!("fixed component reduction of {class} exceeded {cap} steps")))
}

/// `h2(F) = h0(K - F)`.
pub fn h2(class: &DivisorClass) -> Result<u64> {
    h0(&(canonical_class() - *class))
}

/// `h1(F) = h0(F) + h2(F) - chi(F)`.
pub fn h1(class: &DivisorClass) -> Result<u64> {
    let value = h0(class)? as i128 + h2(class)? as i128 - chi(class) as i128;
    u64::try_from(value).map_err(|_| Error::invariant(format!("h1({class}) came out as {value}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cohomology {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    pub chi: i64,
}

pub fn cohomology(class: &DivisorClass) -> Result<Cohomology> {
    let (h0, h2) = (h0(class)?, h2(class)?);
    let chi = chi(class);
    let h1 = h0 as i128 + h2 as i128 - chi as i128;
    let h1 = u64::try_from(h1).map_err(|_| Error::invariant(format!("h1({class}) came out as {h1}")))?;
    Ok(Cohomology { h0, h1, h2, chi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{normalized, NEARLY_UNIFORM_NEF_GENERATORS};
    use proptest::prelude::*;

    fn binom2(n: i64) -> i64 {
        if n < 2 {
            0
        } else {
            n * (n - 1) / 2
        }
    }

    fn uniform(d: i64, m: i64) -> DivisorClass {
        DivisorClass::new(d, [m; 8])
    }

    #[test]
    fn nef_examples() {
        assert!(is_nef(&uniform(17, 6)));
        assert!(!is_nef(&DivisorClass::exceptional(0)));
        for g in NEARLY_UNIFORM_NEF_GENERATORS {
            assert!(is_nef(&g.to_class()), "{g}");
        }
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(&DivisorClass::ZERO), 1);
        for t in 0..20 {
            assert_eq!(chi(&DivisorClass::new(t, [0; 8])), (t + 2) * (t + 1) / 2);
        }
        assert_eq!(chi(&uniform(153, 54)), binom2(155) - 8 * binom2(55));
        assert_eq!(chi(&uniform(153, 54)), 55);
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0(&uniform(9, 3)).unwrap(), 7);
        assert_eq!(h0(&uniform(10, 3)).unwrap(), 18);
        assert_eq!(h0(&-canonical_class()).unwrap(), 2);
        for t in -5..15 {
            let expect = if t < 0 { 0 } else { ((t + 2) * (t + 1) / 2) as u64 };
            assert_eq!(h0(&DivisorClass::new(t, [0; 8])).unwrap(), expect);
        }
        assert_eq!(h0(&uniform(152, 54)).unwrap(), 0);
        assert_eq!(h0(&uniform(153, 54)).unwrap(), 55);
    }

    #[test]
    fn h2_examples() {
        assert_eq!(h2(&DivisorClass::ZERO).unwrap(), 0);
        assert_eq!(h2(&-canonical_class()).unwrap(), 0);
        assert_eq!(h2(&canonical_class()).unwrap(), 1);
    }

    #[test]
    fn h1_of_twisted_pencils() {
        let pencil = DivisorClass::padded(1, &[1]);
        for r in 2..=10 {
            let f = r * pencil + canonical_class();
            assert_eq!(h1(&f).unwrap(), (r - 1) as u64, "r = {r}");
        }
        assert_eq!(h1(&uniform(17, 6)).unwrap(), 0);
    }

    #[test]
    fn reduction_traces() {
        let nef = uniform(153, 54);
        let rep = fixed_component_reduction(&nef).unwrap();
        assert!(rep.subtracted.is_empty());
        assert_eq!(rep.residual, nef);
        assert_eq!(rep.verdict, Verdict::NefResidual);

        // L - 2E1 + E2: E2 first, then a line through p1
        let f = DivisorClass::padded(1, &[2, -1]);
        let rep = fixed_component_reduction(&f).unwrap();
        assert_eq!(rep.verdict, Verdict::Empty);
        assert_eq!(rep.subtracted[0].0.class, DivisorClass::exceptional(1));
        let line = rep.subtracted[1].0.class;
        assert_eq!((line.d, line.m[0], line.square()), (1, 1, -1));
        assert_eq!(rep.reassemble(), f);
        assert!(rep.residual.degree() < 0);
        assert_eq!(h0(&f).unwrap(), 0);
        assert_eq!(h1(&f).unwrap(), 0);

        let g = DivisorClass::padded(6, &[1, -3, 2]);
        let rep = fixed_component_reduction(&g).unwrap();
        assert_eq!(rep.subtracted[0], (*crate::lattice::curve_for_class(&DivisorClass::exceptional(1)).unwrap(), 3));
    }

    fn class() -> impl Strategy<Value = DivisorClass> {
        (-30i64..40, prop::array::uniform8(-12i64..15)).prop_map(|(d, m)| DivisorClass::new(d, m))
    }

    proptest! {
        #[test]
        fn riemann_roch_and_reassembly(f in class()) {
            let c = cohomology(&f).unwrap();
            prop_assert_eq!(c.h0 as i64 - c.h1 as i64 + c.h2 as i64, c.chi);
            if c.h2 == 0 {
                prop_assert!(c.h0 as i64 >= c.chi.max(0));
            }
            let rep = fixed_component_reduction(&f).unwrap();
            prop_assert_eq!(rep.reassemble(), f);
            match rep.verdict {
                Verdict::NefResidual => prop_assert!(is_nef(&rep.residual)),
                Verdict::Empty => prop_assert!(rep.residual.degree() < 0),
            }
        }

        #[test]
        fn h0_is_permutation_invariant(f in class()) {
            prop_assert_eq!(h0(&f).unwrap(), h0(&normalized(&f)).unwrap());
        }

        #[test]
        fn nef_classes_have_no_h1(f in class()) {
            if is_nef(&f) {
                prop_assert_eq!(h1(&f).unwrap(), 0);
                prop_assert_eq!(h0(&f).unwrap() as i64, chi(&f));
            }
        }
    }
}
