//! Rank of the multiplication map `mu_F : H0(F) (x) H0(L) -> H0(F + L)`.
//!
//! The dispatch works on the monotone form of `F`:
//!
//! * no sections: trivially injective;
//! * `F.C >= Lambda_C` for every exceptional curve: maximal rank;
//! * `F.C < lambda_C` for some exceptional curve: the kernel agrees with
//!   that of `F - C`, so recurse;
//! * otherwise one of three closed forms applies: `F` orthogonal to
//!   `L - E1 - E2`, the family `(3,1,0) + r(8,3,1)`, or maximal rank.
//!
//! Only kernels propagate through the reduction chain. Each cokernel is
//! recovered from `cok - ker = h0(F + L) - 3 h0(F)` at its own class.

use serde::{Deserialize, Serialize};

use crate::cohomology::{h0, h1, iteration_cap};
use crate::error::{Error, Result};
use crate::lattice::{check_bounds, exceptional_curves, normalized, CurveClass, CurveKind, DivisorClass, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum DispatchCase {
    #[serde(rename = "h0_zero")]
    NoSections,
    #[serde(rename = "case_a")]
    MaximalRank,
    #[serde(rename = "case_b_step")]
    Reduction { curve: DivisorClass },
    #[serde(rename = "case_c_i")]
    OrthogonalLine,
    #[serde(rename = "case_c_ii")]
    SpecialFamily { r: u64 },
    #[serde(rename = "case_c_iii_maxrank")]
    GenericMaximalRank,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Monotone class the case was decided on.
    pub class: DivisorClass,
    #[serde(flatten)]
    pub case: DispatchCase,
    pub ker: u64,
    pub cok: u64,
    /// `h0(F)` and `h0(F + L)`.
    pub h0: u64,
    pub h0_next: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuRankReport {
    pub class: DivisorClass,
    pub ker: u64,
    pub cok: u64,
    /// From the (normalized) input down to the class that was settled directly.
    pub trace: Vec<TraceStep>,
}

impl MuRankReport {
    /// Rank of `mu_F`: `3 h0(F) - ker`.
    pub fn rank(&self) -> u64 {
        3 * self.trace[0].h0 - self.ker
    }
}

/// Membership in `[3L - E1 - ... - E7] + r [8L - 3E1 - ... - 3E7 - E8]`
/// with `r >= 1`, for a monotone class.
pub fn special_family_index(class: &DivisorClass) -> Option<u64> {
    let t = Triple::from_class(class)?;
    let r = t.b;
    (r >= 1 && t.d == 3 + 8 * r && t.a == 1 + 3 * r).then_some(r as u64)
}

enum Settled {
    Terminal { case: DispatchCase, ker: u64, cok: u64 },
    Reduce(&'static CurveClass),
}

fn expected(h0_f: u64, h0_next: u64) -> i128 {
    h0_next as i128 - 3 * h0_f as i128
}

fn to_u64(value: i128, what: &str, class: &DivisorClass) -> Result<u64> {
    u64::try_from(value).map_err(|_| Error::invariant(format!("{what} of mu at {class} came out as {value}")))
}

fn settle(f: &DivisorClass, h0_f: u64, h0_next: u64) -> Result<Settled> {
    let exp = expected(h0_f, h0_next);
    if h0_f == 0 {
        return Ok(Settled::Terminal { case: DispatchCase::NoSections, ker: 0, cok: h0_next });
    }
    let curves = exceptional_curves();
    if curves.iter().all(|c| f.dot(&c.class) >= c.max_rank_threshold) {
        return Ok(Settled::Terminal {
            case: DispatchCase::MaximalRank,
            ker: to_u64((-exp).max(0), "kernel", f)?,
            cok: to_u64(exp.max(0), "cokernel", f)?,
        });
    }
    // smallest F.C among the curves below threshold; first in table order on ties
    let reducer = curves
        .iter()
        .map(|c| (f.dot(&c.class), c))
        .filter(|(dot, c)| *dot < c.reduction_threshold)
        .min_by_key(|(dot, _)| *dot);
    if let Some((_, c)) = reducer {
        return Ok(Settled::Reduce(c));
    }

    if f.dot(&DivisorClass::padded(1, &[1, 1])) == 0 {
        let a = *f - DivisorClass::padded(1, &[1]);
        let b = *f - DivisorClass::padded(1, &[0, 1]);
        let ker = h0(&a)? + h0(&b)?;
        let cok = h1(&a)? + h1(&b)?;
        if cok as i128 - ker as i128 != exp {
            return Err(Error::invariant(format!(
                "orthogonal-line case at {f}: h1 sum {cok} minus h0 sum {ker} differs from {exp}"
            )));
        }
        return Ok(Settled::Terminal { case: DispatchCase::OrthogonalLine, ker, cok });
    }
    if let Some(r) = special_family_index(f) {
        if r as i128 - (r as i128 + 1) != exp {
            return Err(Error::invariant(format!("special family at {f}: expected defect {exp}")));
        }
        return Ok(Settled::Terminal { case: DispatchCase::SpecialFamily { r }, ker: r + 1, cok: r });
    }
    let formula = (f.degree() as i128 + f.dot_canonical() as i128 - f.square() as i128).max(0);
    if formula != exp.max(0) {
        return Err(Error::invariant(format!("maximal-rank formula at {f} gives {formula}, rank-nullity gives {exp}")));
    }
    Ok(Settled::Terminal {
        case: DispatchCase::GenericMaximalRank,
        ker: to_u64(formula - exp, "kernel", f)?,
        cok: to_u64(formula, "cokernel", f)?,
    })
}

/// Kernel and cokernel dimensions of `mu_F`, with the dispatch trace.
pub fn mu_rank(class: &DivisorClass) -> Result<MuRankReport> {
    check_bounds(class)?;
    let cap = iteration_cap(class);
    let line = DivisorClass::line();
    // (class, h0(F), h0(F + L), reducing curve)
    let mut chain: Vec<(DivisorClass, u64, u64, &'static CurveClass)> = Vec::new();
    let mut f = normalized(class);
    let mut depth = 0u64;
    let (case, ker, cok, h0_f, h0_next) = loop {
        if depth > cap {
            return Err(Error::invariant(format!("mu reduction of {class} exceeded {cap} steps")));
        }
        depth += 1;
        let h0_f = h0(&f)?;
        let h0_next = h0(&(f + line))?;
        match settle(&f, h0_f, h0_next)? {
            Settled::Terminal { case, ker, cok } => break (case, ker, cok, h0_f, h0_next),
            Settled::Reduce(c) => {
                chain.push((f, h0_f, h0_next, c));
                f = normalized(&(f - c.class));
            }
        }
    };

    let mut trace = Vec::with_capacity(chain.len() + 1);
    trace.push(TraceStep { class: f, case, ker, cok, h0: h0_f, h0_next });
    for (g, h0_g, h0_next, c) in chain.into_iter().rev() {
        let cok = to_u64(ker as i128 + expected(h0_g, h0_next), "cokernel", &g)?;
        if ker > 3 * h0_g || cok > h0_next {
            return Err(Error::invariant(format!("mu at {g}: ker {ker}, cok {cok} out of range")));
        }
        trace.push(TraceStep {
            class: g,
            case: DispatchCase::Reduction { curve: c.class },
            ker,
            cok,
            h0: h0_g,
            h0_next,
        });
    }
    trace.reverse();
    let top = &trace[0];
    Ok(MuRankReport { class: *class, ker: top.ker, cok: top.cok, trace })
}

/// `q = h0(F - E1)`, `l = h0(F - (L - E1))` and the matching `h1` values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QLReport {
    pub q: u64,
    pub l: u64,
    pub q_star: u64,
    pub l_star: u64,
}

/// The quantities bounding kernel and cokernel of `mu_F` for monotone `F`:
/// `ker <= q + l`, and `cok <= q* + l*` when `F` is effective with `h1 = 0`.
pub fn ql_report(class: &DivisorClass) -> Result<QLReport> {
    if !class.is_monotone() {
        return Err(Error::usage(format!("{class} is not monotone")));
    }
    let minus_point = *class - DivisorClass::exceptional(0);
    let minus_pencil = *class - DivisorClass::padded(1, &[1]);
    Ok(QLReport { q: h0(&minus_point)?, l: h0(&minus_pencil)?, q_star: h1(&minus_point)?, l_star: h1(&minus_pencil)? })
}

/// How far the restricted map `H0(O_C(t)) (x) H0(L) -> H0(O_C(t + d))` falls
/// short of maximal rank for a smooth rational curve `C` of degree `d`.
///
/// Zero except for the quartics `4L - 3Ei - sum_{j != i} Ej` at `t = 1` and the
/// octics `8L - 3(E1 + ... + E8) + 2Ej` at `t = 3`, which are one short.
pub fn curve_restriction_mu_defect(curve: &CurveClass, t: i64) -> Result<u64> {
    if t < 0 {
        return Err(Error::usage(format!("restriction degree must be nonnegative, got {t}")));
    }
    if curve.kind == CurveKind::Exceptional {
        return Ok(0);
    }
    let sorted = normalized(&curve.class);
    let quartic = DivisorClass::new(4, [3, 1, 1, 1, 1, 1, 1, 1]);
    let octic = DivisorClass::new(8, [3, 3, 3, 3, 3, 3, 3, 1]);
    Ok(u64::from((sorted == quartic && t == 1) || (sorted == octic && t == 3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{canonical_class, square_zero_curves};

    fn uniform(d: i64, m: i64) -> DivisorClass {
        DivisorClass::new(d, [m; 8])
    }

    fn ker_cok(f: DivisorClass) -> (u64, u64) {
        let r = mu_rank(&f).unwrap();
        (r.ker, r.cok)
    }

    #[test]
    fn anticanonical_multiples() {
        assert_eq!(ker_cok(-canonical_class()), (0, 1));
        assert_eq!(ker_cok(-2 * canonical_class()), (0, 0));
    }

    #[test]
    fn uniform_54_chain_reaches_nonics() {
        let rep = mu_rank(&uniform(153, 54)).unwrap();
        assert_eq!((rep.ker, rep.cok), (3, 48));
        let last = rep.trace.last().unwrap();
        assert_eq!(last.class, uniform(9, 3));
        assert_eq!(last.case, DispatchCase::MaximalRank);
        assert_eq!((last.ker, last.cok), (3, 0));
        assert!(rep.trace[..rep.trace.len() - 1].iter().all(|s| matches!(s.case, DispatchCase::Reduction { .. })));
    }

    #[test]
    fn special_family() {
        for r in 1..=5i64 {
            let f = Triple::new(3 + 8 * r, 1 + 3 * r, r).to_class();
            let rep = mu_rank(&f).unwrap();
            assert_eq!((rep.ker, rep.cok), (r as u64 + 1, r as u64));
            assert_eq!(rep.trace[0].case, DispatchCase::SpecialFamily { r: r as u64 });
        }
        assert_eq!(special_family_index(&Triple::new(3, 1, 0).to_class()), None);
    }

    #[test]
    fn double_point_conic() {
        let f = DivisorClass::padded(2, &[2]);
        let rep = mu_rank(&f).unwrap();
        assert_eq!((rep.ker, rep.cok), (2, 0));
        assert_eq!(rep.trace[0].case, DispatchCase::OrthogonalLine);
    }

    #[test]
    fn input_is_normalized() {
        let a = mu_rank(&DivisorClass::padded(5, &[0, 2, 1, 2])).unwrap();
        let b = mu_rank(&DivisorClass::padded(5, &[2, 2, 1])).unwrap();
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn ql_examples() {
        let f = DivisorClass::new(4, [2, 2, 1, 1, 1, 1, 1, 1]);
        let q = ql_report(&f).unwrap();
        assert_eq!((q.q, q.l), (0, 0));
        assert_eq!(ker_cok(f).0, 0);
        for t in 1..10 {
            let q = ql_report(&DivisorClass::new(t, [0; 8])).unwrap();
            assert_eq!(q.q as i64, (t + 2) * (t + 1) / 2 - 1);
        }
        let z = ql_report(&DivisorClass::ZERO).unwrap();
        assert_eq!((z.q, z.l), (0, 0));
        assert!(matches!(ql_report(&DivisorClass::padded(3, &[0, 1])), Err(Error::Usage(_))));
    }

    #[test]
    fn restriction_defects() {
        for c in exceptional_curves() {
            for t in 0..8 {
                assert_eq!(curve_restriction_mu_defect(c, t).unwrap(), 0);
            }
        }
        let mut hits = 0;
        for c in square_zero_curves() {
            for t in 0..8 {
                hits += curve_restriction_mu_defect(c, t).unwrap();
            }
        }
        // eight quartics and eight octics
        assert_eq!(hits, 16);
        let quartic = crate::lattice::curve_for_class(&DivisorClass::new(4, [3, 1, 1, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(curve_restriction_mu_defect(quartic, 1).unwrap(), 1);
        assert_eq!(curve_restriction_mu_defect(quartic, 2).unwrap(), 0);
        let octic = crate::lattice::curve_for_class(&DivisorClass::new(8, [3, 3, 3, 3, 3, 3, 3, 1])).unwrap();
        assert_eq!(curve_restriction_mu_defect(octic, 3).unwrap(), 1);
        assert!(curve_restriction_mu_defect(octic, -1).is_err());
    }
}
