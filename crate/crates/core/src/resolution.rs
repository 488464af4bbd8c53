//! Hilbert functions and minimal free resolutions of fat point ideals.
//!
//! For `Z = m1 p1 + ... + m8 p8` the degree `t` piece of `I_Z` is the space
//! of sections of `F_t = tL - m1 E1 - ... - m8 E8`, and the number of minimal
//! generators in degree `t + 1` is the cokernel of `mu_{F_t}`. The syzygy
//! counts then follow from `nu_t - s_t = Delta^3 h_Z(t)`.
//!
//! The zero scheme resolves as the unit ideal: one generator in degree 0.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohomology::{h0, is_nef};
use crate::error::{Error, Result};
use crate::lattice::{exceptional_curves, DivisorClass, MAX_COEFFICIENT, POINTS};
use crate::mu::mu_rank;

/// Largest multiplicity a scheme may have. Every degree the resolution
/// looks at then stays below [`MAX_COEFFICIENT`].
pub const MAX_MULTIPLICITY: i64 = MAX_COEFFICIENT / 10;

/// Multiplicities of a fat point scheme at up to eight general points,
/// zero-padded and sorted non-increasing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FatPointScheme {
    mults: [i64; POINTS],
}

impl FatPointScheme {
    pub fn new(mults: &[i64]) -> Result<Self> {
        if mults.is_empty() || mults.len() > POINTS {
            return Err(Error::usage(format!("expected 1 to {POINTS} multiplicities, got {}", mults.len())));
        }
        if let Some(m) = mults.iter().find(|&&m| m < 0) {
            return Err(Error::usage(format!("multiplicities must be nonnegative, got {m}")));
        }
        if let Some(m) = mults.iter().find(|&&m| m > MAX_MULTIPLICITY) {
            return Err(Error::usage(format!("multiplicity {m} exceeds the supported bound {MAX_MULTIPLICITY}")));
        }
        let mut padded = [0; POINTS];
        padded[..mults.len()].copy_from_slice(mults);
        padded.sort_unstable_by(|a, b| b.cmp(a));
        Ok(FatPointScheme { mults: padded })
    }

    pub fn mults(&self) -> &[i64; POINTS] {
        &self.mults
    }

    /// `F_t = tL - sum mi Ei`.
    pub fn class_at(&self, t: i64) -> DivisorClass {
        DivisorClass::new(t, self.mults)
    }

    /// Least `t >= 0` with `F_t` nef. Adding `L` keeps a class nef, so `F_t`
    /// is nef for every larger `t` too.
    pub fn nef_threshold(&self) -> i64 {
        exceptional_curves()
            .iter()
            .filter(|c| c.class.d > 0)
            .map(|c| {
                let load: i64 = c.class.m.iter().zip(&self.mults).map(|(a, b)| a * b).sum();
                load.div_euclid(c.class.d) + i64::from(load.rem_euclid(c.class.d) != 0)
            })
            .fold(0, i64::max)
    }

    /// Smallest degree any nef witness allows a form of `I_Z` to live in.
    fn alpha_lower_bound(&self) -> i64 {
        let m = &self.mults;
        let total: i64 = m.iter().sum();
        let ceil = |num: i64, den: i64| num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0);
        [0, m[0], ceil(m[0] + m[1] + m[2] + m[3], 2), ceil(total, 3), ceil(6 * total, 17)]
            .into_iter()
            .max()
            .unwrap_or(0)
    }
}

/// `h_Z(t) = dim (I_Z)_t`.
pub fn hilbert_function(scheme: &FatPointScheme, t: i64) -> Result<u64> {
    if t < 0 {
        return Ok(0);
    }
    h0(&scheme.class_at(t))
}

/// Least `t` with `h_Z(t) > 0`.
pub fn alpha(scheme: &FatPointScheme) -> Result<i64> {
    let top = scheme.nef_threshold();
    for t in scheme.alpha_lower_bound()..=top {
        if hilbert_function(scheme, t)? > 0 {
            return Ok(t);
        }
    }
    Err(Error::invariant(format!("no sections at the nef threshold {top} for {:?}", scheme.mults)))
}

/// Generator counts `t -> nu_t`, nonzero entries only.
///
/// `nu_alpha = h_Z(alpha)`, later entries are cokernels of multiplication,
/// and nothing is generated past `T + 1` where `T` is the nef threshold.
pub fn nu_sequence(scheme: &FatPointScheme) -> Result<BTreeMap<i64, u64>> {
    let alpha = alpha(scheme)?;
    let top = scheme.nef_threshold();
    let mut nu = BTreeMap::new();
    nu.insert(alpha, hilbert_function(scheme, alpha)?);
    for t in alpha + 1..=top + 1 {
        let cok = mu_rank(&scheme.class_at(t - 1))?.cok;
        if cok > 0 {
            nu.insert(t, cok);
        }
    }
    // two degrees past the cut-off must already be generated
    for t in top + 2..=top + 3 {
        if t > alpha {
            let cok = mu_rank(&scheme.class_at(t - 1))?.cok;
            if cok != 0 {
                return Err(Error::invariant(format!(
                    "generator in degree {t} past the window for {:?}",
                    scheme.mults
                )));
            }
        }
    }
    Ok(nu)
}

fn binom2(n: i64) -> i64 {
    // C(n, 2) with C(n, 2) = 0 for n < 2
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Graded Betti numbers of `0 -> F1 -> F0 -> I_Z -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedResolution {
    pub mults: [i64; POINTS],
    pub alpha: i64,
    /// `(t, h_Z(t))` for `alpha <= t <= window_end`.
    pub hilbert: Vec<(i64, u64)>,
    pub generators: BTreeMap<i64, u64>,
    pub syzygies: BTreeMap<i64, u64>,
    #[serde(skip)]
    pub window_end: i64,
}

impl GradedResolution {
    pub fn hilbert_at(&self, t: i64) -> Option<u64> {
        if t < self.alpha {
            return Some(0);
        }
        self.hilbert.iter().find(|(s, _)| *s == t).map(|(_, h)| *h)
    }
}

pub fn third_difference(h: impl Fn(i64) -> i64, t: i64) -> i64 {
    h(t) - 3 * h(t - 1) + 3 * h(t - 2) - h(t - 3)
}

pub fn resolution(scheme: &FatPointScheme) -> Result<GradedResolution> {
    let alpha = alpha(scheme)?;
    let top = scheme.nef_threshold();
    let window_end = top + 3;
    let generators = nu_sequence(scheme)?;

    let mut hilbert = Vec::new();
    for t in alpha..=window_end + 2 {
        hilbert.push((t, hilbert_function(scheme, t)?));
    }
    let h = |t: i64| -> i64 {
        if t < alpha {
            0
        } else {
            hilbert[(t - alpha) as usize].1 as i64
        }
    };

    let mut syzygies = BTreeMap::new();
    for t in alpha..=window_end + 2 {
        let nu = generators.get(&t).copied().unwrap_or(0) as i64;
        let s = nu - third_difference(h, t);
        if s < 0 {
            return Err(Error::invariant(format!("negative syzygy count {s} in degree {t} for {:?}", scheme.mults)));
        }
        if s > 0 {
            if t > window_end || t <= alpha {
                return Err(Error::invariant(format!("syzygy in degree {t} outside window for {:?}", scheme.mults)));
            }
            syzygies.insert(t, s as u64);
        }
    }
    hilbert.truncate((window_end - alpha + 1) as usize);

    let res = GradedResolution { mults: scheme.mults, alpha, hilbert, generators, syzygies, window_end };
    check_exactness(&res)?;
    Ok(res)
}

/// `h_Z(t) = sum_i (nu_i - s_i) C(t - i + 2, 2)` across the stored window.
pub fn check_exactness(res: &GradedResolution) -> Result<()> {
    for &(t, h) in &res.hilbert {
        let free = |m: &BTreeMap<i64, u64>| -> i64 { m.iter().map(|(&i, &n)| n as i64 * binom2(t - i + 2)).sum() };
        let predicted = free(&res.generators) - free(&res.syzygies);
        if predicted != h as i64 {
            return Err(Error::invariant(format!(
                "resolution of {:?} predicts h({t}) = {predicted}, actual {h}",
                res.mults
            )));
        }
    }
    Ok(())
}

/// Whether `F_T` is nef, for callers that want to double-check the window.
pub fn window_is_nef(scheme: &FatPointScheme) -> bool {
    is_nef(&scheme.class_at(scheme.nef_threshold()))
}
