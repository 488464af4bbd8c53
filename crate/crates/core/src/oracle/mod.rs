//! Brute-force check of the engine over a prime field.
//!
//! Eight random points are drawn in the affine chart `z = 1`. The degree `t`
//! piece of `I_Z` is the kernel of the matrix of Taylor coefficients of order
//! below `mi` at each `pi`, taken over all degree `t` monomials. The
//! multiplication map is checked by spanning `x b, y b, z b` for a kernel
//! basis `b`. Nothing here touches the divisor lattice.

mod field;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use field::{is_prime, Echelon, PrimeField};

use crate::error::{Error, Result};
use crate::lattice::POINTS;
use crate::resolution::{third_difference, FatPointScheme};

pub const DEFAULT_PRIME: u64 = 1_000_003;
const DRAW_ATTEMPTS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleInstance {
    field: PrimeField,
    seed: u64,
    points: [(u64, u64); POINTS],
}

/// `h_Z(t)`, and kernel and cokernel of `(I_Z)_t (x) R_1 -> (I_Z)_{t+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Values {
    pub h: u64,
    pub ker: u64,
    pub cok: u64,
}

/// Position of `x^a y^b z^c` among the monomials of degree `a + b + c`.
fn monomial_index(a: usize, c: usize, t: usize) -> usize {
    let s = t - a;
    s * (s + 1) / 2 + c
}

fn monomials(t: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=t).rev().flat_map(move |a| (0..=t - a).map(move |c| (a, t - a - c, c)))
}

fn collinear(f: &PrimeField, p: (u64, u64), q: (u64, u64), r: (u64, u64)) -> bool {
    // det [[px, py, 1], [qx, qy, 1], [rx, ry, 1]]
    let lhs = f.add(f.add(f.mul(p.0, q.1), f.mul(q.0, r.1)), f.mul(r.0, p.1));
    let rhs = f.add(f.add(f.mul(p.0, r.1), f.mul(q.0, p.1)), f.mul(r.0, q.1));
    lhs == rhs
}

impl OracleInstance {
    /// Draws eight distinct points, no three collinear, reproducibly from `seed`.
    pub fn new(prime: u64, seed: u64) -> Result<Self> {
        let field = PrimeField::new(prime).ok_or_else(|| Error::usage(format!("{prime} is not a prime below 2^31")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..DRAW_ATTEMPTS {
            let points: [(u64, u64); POINTS] =
                std::array::from_fn(|_| (rng.gen_range(0..prime), rng.gen_range(0..prime)));
            if Self::general(&field, &points) {
                return Ok(OracleInstance { field, seed, points });
            }
        }
        Err(Error::usage(format!("could not draw general points mod {prime} in {DRAW_ATTEMPTS} attempts")))
    }

    fn general(f: &PrimeField, pts: &[(u64, u64)]) -> bool {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if pts[i] == pts[j] {
                    return false;
                }
                for k in j + 1..pts.len() {
                    if collinear(f, pts[i], pts[j], pts[k]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn points(&self) -> &[(u64, u64); POINTS] {
        &self.points
    }

    fn check_degree(&self, scheme: &FatPointScheme, t: i64) -> Result<()> {
        let p = self.prime() as i64;
        let top = scheme.mults()[0];
        if p <= t || p <= top {
            return Err(Error::usage(format!("prime {p} must exceed degree {t} and multiplicity {top}")));
        }
        Ok(())
    }

    /// Echelon form of the vanishing conditions on degree `t` forms.
    fn conditions(&self, scheme: &FatPointScheme, t: usize) -> Echelon {
        let f = self.field;
        let n = (t + 1) * (t + 2) / 2;
        let mut binom = vec![vec![0u64; t + 1]; t + 1];
        for i in 0..=t {
            binom[i][0] = 1;
            for j in 1..=i {
                binom[i][j] = f.add(binom[i - 1][j - 1], if j < i { binom[i - 1][j] } else { 0 });
            }
        }
        let mut ech = Echelon::new(f, n);
        for (&(x, y), &m) in self.points.iter().zip(scheme.mults()) {
            let xp: Vec<u64> = (0..=t as u64).map(|e| f.pow(x, e)).collect();
            let yp: Vec<u64> = (0..=t as u64).map(|e| f.pow(y, e)).collect();
            let m = (m as usize).min(t + 1);
            for i in 0..m {
                for j in 0..m - i {
                    // coefficient of u^i v^j in (x + u)^a (y + v)^b
                    let mut row = vec![0u64; n];
                    for (a, b, c) in monomials(t) {
                        if a >= i && b >= j {
                            let cx = f.mul(binom[a][i], xp[a - i]);
                            let cy = f.mul(binom[b][j], yp[b - j]);
                            row[monomial_index(a, c, t)] = f.mul(cx, cy);
                        }
                    }
                    if ech.rank() < n {
                        ech.insert(row);
                    }
                }
            }
        }
        ech
    }

    /// `dim (I_Z)_t`.
    pub fn ideal_dim(&self, scheme: &FatPointScheme, t: i64) -> Result<u64> {
        if t < 0 {
            return Ok(0);
        }
        self.check_degree(scheme, t)?;
        let t = t as usize;
        let n = (t + 1) * (t + 2) / 2;
        Ok((n - self.conditions(scheme, t).rank()) as u64)
    }

    fn multiply_rank(&self, basis: &[Vec<u64>], t: usize, target: usize) -> usize {
        let n_next = (t + 2) * (t + 3) / 2;
        let mut span = Echelon::new(self.field, n_next);
        'fill: for b in basis {
            for shift in 0..3 {
                if span.rank() == target {
                    break 'fill;
                }
                let mut v = vec![0u64; n_next];
                for ((a, _, c), &coef) in monomials(t).zip(b) {
                    if coef != 0 {
                        let (a2, c2) = match shift {
                            0 => (a + 1, c),
                            1 => (a, c),
                            _ => (a, c + 1),
                        };
                        v[monomial_index(a2, c2, t + 1)] = coef;
                    }
                }
                span.insert(v);
            }
        }
        span.rank()
    }

    /// `(ker, cok)` of `(I_Z)_t (x) R_1 -> (I_Z)_{t+1}`.
    pub fn mu_rank_bruteforce(&self, scheme: &FatPointScheme, t: i64) -> Result<(u64, u64)> {
        if t < 0 {
            return Err(Error::usage(format!("degree {t} is negative")));
        }
        let v = self.profile(scheme, t)?;
        let last = v.last().expect("profile covers t");
        Ok((last.ker, last.cok))
    }

    /// Values for every `0 <= t <= t_max`.
    pub fn profile(&self, scheme: &FatPointScheme, t_max: i64) -> Result<Vec<Values>> {
        if t_max < 0 {
            return Ok(Vec::new());
        }
        self.check_degree(scheme, t_max + 1)?;
        let mut out = Vec::new();
        let mut current = self.conditions(scheme, 0).nullspace();
        for t in 0..=t_max as usize {
            let next = self.conditions(scheme, t + 1).nullspace();
            let rank = self.multiply_rank(&current, t, next.len());
            out.push(Values {
                h: current.len() as u64,
                ker: (3 * current.len() - rank) as u64,
                cok: (next.len() - rank) as u64,
            });
            current = next;
        }
        Ok(out)
    }

    /// Betti numbers read off from brute-force values up to degree `t_end`.
    pub fn resolution(&self, scheme: &FatPointScheme, t_end: i64) -> Result<OracleResolution> {
        let values = self.profile(scheme, t_end)?;
        let h = |t: i64| if t < 0 { 0 } else { values[t as usize].h as i64 };
        let alpha = (0..=t_end)
            .find(|&t| h(t) > 0)
            .ok_or_else(|| Error::usage(format!("no forms of degree <= {t_end} vanish on the scheme")))?;
        let mut generators = BTreeMap::new();
        let mut syzygies = BTreeMap::new();
        for t in alpha..=t_end {
            let nu = if t == alpha { h(alpha) as u64 } else { values[(t - 1) as usize].cok };
            if nu > 0 {
                generators.insert(t, nu);
            }
            let s = nu as i64 - third_difference(h, t);
            if s < 0 {
                return Err(Error::invariant(format!("negative syzygy count {s} in degree {t}")));
            }
            if s != 0 {
                syzygies.insert(t, s as u64);
            }
        }
        Ok(OracleResolution { alpha, generators, syzygies })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResolution {
    pub alpha: i64,
    pub generators: BTreeMap<i64, u64>,
    pub syzygies: BTreeMap<i64, u64>,
}

/// Every nonincreasing 8-vector with entries in `0..=max_mult`, in
/// lexicographic order.
pub fn monotone_vectors(max_mult: i64) -> Vec<[i64; POINTS]> {
    fn go(prefix: &mut Vec<i64>, cap: i64, out: &mut Vec<[i64; POINTS]>) {
        if prefix.len() == POINTS {
            out.push(prefix.as_slice().try_into().expect("length checked"));
            return;
        }
        for m in 0..=cap {
            prefix.push(m);
            go(prefix, m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if max_mult >= 0 {
        go(&mut Vec::with_capacity(POINTS), max_mult, &mut out);
    }
    out.sort();
    out
}

/// What the oracle is compared against.
pub trait Engine {
    fn values(&self, scheme: &FatPointScheme, t: i64) -> Result<Values>;
}

/// The lattice engine of this crate.
pub struct ExactEngine;

impl Engine for ExactEngine {
    fn values(&self, scheme: &FatPointScheme, t: i64) -> Result<Values> {
        let report = crate::mu::mu_rank(&scheme.class_at(t))?;
        Ok(Values { h: crate::resolution::hilbert_function(scheme, t)?, ker: report.ker, cok: report.cok })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareRow {
    pub mults: [i64; POINTS],
    pub prime: u64,
    pub seed: u64,
    pub t: i64,
    pub engine: Values,
    pub oracle: Values,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
    pub first_mismatch: Option<i64>,
}

impl CompareReport {
    pub fn success(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Runs engine and oracle side by side for `0 <= t <= t_max`.
pub fn compare(
    inst: &OracleInstance,
    scheme: &FatPointScheme,
    t_max: i64,
    engine: &dyn Engine,
) -> Result<CompareReport> {
    let oracle = inst.profile(scheme, t_max)?;
    let mut rows = Vec::with_capacity(oracle.len());
    let mut first_mismatch = None;
    for (t, o) in (0..).zip(oracle) {
        let e = engine.values(scheme, t)?;
        let ok = e == o;
        if !ok && first_mismatch.is_none() {
            first_mismatch = Some(t);
        }
        rows.push(CompareRow {
            mults: *scheme.mults(),
            prime: inst.prime(),
            seed: inst.seed(),
            t,
            engine: e,
            oracle: o,
            ok,
        });
    }
    Ok(CompareReport { rows, first_mismatch })
}
