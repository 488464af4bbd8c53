//! The divisor class group of the plane blown up at eight points.
//!
//! A class is stored as `(d; m1, ..., m8)` and denotes `dL - m1 E1 - ... - m8 E8`,
//! so `F . Ei = mi` and the exceptional divisor `Ei` itself has `mi = -1`.
//! The intersection form is `L^2 = 1`, `Ei . Ej = -delta_ij`, `L . Ei = 0`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

/// Number of blown-up points. Smaller configurations are zero-padded.
pub const POINTS: usize = 8;

/// Largest `|d|` or `|mi|` the engine accepts. Keeps every intersection
/// number and Euler characteristic well inside `i64`.
pub const MAX_COEFFICIENT: i64 = 1_000_000;

/// Usage error unless every coefficient is within [`MAX_COEFFICIENT`].
pub fn check_bounds(class: &DivisorClass) -> crate::Result<()> {
    let limit = MAX_COEFFICIENT.unsigned_abs();
    if class.d.unsigned_abs() > limit || class.m.iter().any(|m| m.unsigned_abs() > limit) {
        return Err(crate::Error::usage(format!(
            "coefficients of {class} exceed the supported bound {MAX_COEFFICIENT}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub d: i64,
    pub m: [i64; POINTS],
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass { d: 0, m: [0; POINTS] };

    pub const fn new(d: i64, m: [i64; POINTS]) -> Self {
        DivisorClass { d, m }
    }

    /// The line class `L`.
    pub const fn line() -> Self {
        DivisorClass { d: 1, m: [0; POINTS] }
    }

    /// The exceptional divisor over point `i` (zero-based).
    pub fn exceptional(i: usize) -> Self {
        let mut m = [0; POINTS];
        m[i] = -1;
        DivisorClass { d: 0, m }
    }

    /// `dL - sum mi Ei` for up to eight coefficients; missing ones are zero.
    ///
    /// Panics if more than eight coefficients are given.
    pub fn padded(d: i64, mults: &[i64]) -> Self {
        assert!(mults.len() <= POINTS, "at most {POINTS} point coefficients");
        let mut m = [0; POINTS];
        m[..mults.len()].copy_from_slice(mults);
        DivisorClass { d, m }
    }

    /// `F . L`.
    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn dot(&self, other: &DivisorClass) -> i64 {
        intersect(self, other)
    }

    pub fn square(&self) -> i64 {
        intersect(self, self)
    }

    /// `F . K` for the canonical class `K = -3L + E1 + ... + E8`.
    pub fn dot_canonical(&self) -> i64 {
        intersect(self, &canonical_class())
    }

    pub fn is_monotone(&self) -> bool {
        self.m.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn max_coefficient(&self) -> i64 {
        self.m.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for DivisorClass {
    /// Canonical text form `d m1 ... m8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.d)?;
        for x in &self.m {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(mut self, rhs: DivisorClass) -> DivisorClass {
        self += rhs;
        self
    }
}

impl AddAssign for DivisorClass {
    fn add_assign(&mut self, rhs: DivisorClass) {
        self.d += rhs.d;
        for (a, b) in self.m.iter_mut().zip(rhs.m) {
            *a += b;
        }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(mut self, rhs: DivisorClass) -> DivisorClass {
        self -= rhs;
        self
    }
}

impl SubAssign for DivisorClass {
    fn sub_assign(&mut self, rhs: DivisorClass) {
        self.d -= rhs.d;
        for (a, b) in self.m.iter_mut().zip(rhs.m) {
            *a -= b;
        }
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass { d: -self.d, m: self.m.map(|x| -x) }
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass { d: self * rhs.d, m: rhs.m.map(|x| self * x) }
    }
}

/// The intersection pairing `dA dB - sum mA,i mB,i`.
///
/// Products are accumulated in 128 bits; a result outside `i64` panics.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> i64 {
    let mut acc = a.d as i128 * b.d as i128;
    for (x, y) in a.m.iter().zip(&b.m) {
        acc -= *x as i128 * *y as i128;
    }
    i64::try_from(acc).expect("intersection number overflows i64")
}

/// `K = -3L + E1 + ... + E8`.
pub const fn canonical_class() -> DivisorClass {
    DivisorClass { d: -3, m: [-1; POINTS] }
}

/// A permutation of the eight point indices. `map[i]` is the position that
/// input index `i` is sent to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    map: [usize; POINTS],
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { map: std::array::from_fn(|i| i) }
    }

    /// Builds a permutation from its image table. Returns `None` unless
    /// `map` is a bijection of `0..8`.
    pub fn from_map(map: [usize; POINTS]) -> Option<Self> {
        let mut seen = [false; POINTS];
        for &j in &map {
            if j >= POINTS || std::mem::replace(&mut seen[j], true) {
                return None;
            }
        }
        Some(Permutation { map })
    }

    pub fn as_map(&self) -> &[usize; POINTS] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0; POINTS];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { map: inv }
    }

    /// Moves coefficient `i` of `class` to position `map[i]`.
    pub fn apply(&self, class: &DivisorClass) -> DivisorClass {
        let mut m = [0; POINTS];
        for (i, &j) in self.map.iter().enumerate() {
            m[j] = class.m[i];
        }
        DivisorClass { d: class.d, m }
    }
}

/// Sorts the point coefficients into non-increasing order. Ties keep their
/// original relative order, so the permutation is deterministic.
pub fn monotone_normalize(class: &DivisorClass) -> (DivisorClass, Permutation) {
    let mut order: [usize; POINTS] = std::array::from_fn(|i| i);
    // stable sort by descending coefficient
    order.sort_by(|&a, &b| class.m[b].cmp(&class.m[a]));
    let mut map = [0; POINTS];
    for (pos, &src) in order.iter().enumerate() {
        map[src] = pos;
    }
    let perm = Permutation { map };
    (perm.apply(class), perm)
}

/// Sorted form only.
pub fn normalized(class: &DivisorClass) -> DivisorClass {
    let mut out = *class;
    out.m.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Quadratic Cremona transformation centred at points `i, j, k` (zero-based).
///
/// `d' = 2d - mi - mj - mk`, `mi' = d - mj - mk` and cyclically; other
/// coefficients are untouched. Panics if the indices are not distinct.
pub fn cremona(class: &DivisorClass, i: usize, j: usize, k: usize) -> DivisorClass {
    assert!(i != j && j != k && i != k, "cremona centres must be distinct");
    assert!(i < POINTS && j < POINTS && k < POINTS, "cremona centre out of range");
    let (d, mi, mj, mk) = (class.d, class.m[i], class.m[j], class.m[k]);
    let mut out = *class;
    out.d = 2 * d - mi - mj - mk;
    out.m[i] = d - mj - mk;
    out.m[j] = d - mi - mk;
    out.m[k] = d - mi - mj;
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    /// Smooth rational, self-intersection -1.
    Exceptional,
    /// Smooth rational, self-intersection 0.
    SquareZero,
}

/// A smooth rational curve class together with the thresholds that steer
/// the multiplication-map dispatch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub class: DivisorClass,
    pub kind: CurveKind,
    /// Below this, `F . C` lets the curve be peeled off without changing
    /// the kernel of multiplication.
    pub reduction_threshold: i64,
    /// At or above this for every curve, multiplication has maximal rank.
    pub max_rank_threshold: i64,
    /// Largest `C . Ei`.
    pub max_point_mult: i64,
}

/// `(lambda, Lambda, m_C)` for a class. The `Ei` themselves get zero
/// thresholds. For a curve that is not smooth rational, the lower
/// threshold is raised to at least 2.
pub fn thresholds(class: &DivisorClass, smooth_rational: bool) -> (i64, i64, i64) {
    let m_c = class.max_coefficient();
    if class.d == 0 && class.m.iter().filter(|&&x| x == -1).count() == 1 && class.m.iter().all(|&x| x <= 0) {
        return (0, 0, m_c);
    }
    let other = class.d - m_c;
    let lower = m_c.min(other);
    let upper = m_c.max(other);
    let lower = if smooth_rational { lower } else { lower.max(2) };
    (lower, upper, m_c)
}

impl CurveClass {
    fn smooth_rational(class: DivisorClass, kind: CurveKind) -> Self {
        let (lo, hi, m_c) = thresholds(&class, true);
        CurveClass { class, kind, reduction_threshold: lo, max_rank_threshold: hi, max_point_mult: m_c }
    }
}

/// Representatives of the exceptional curves up to permutation.
const EXCEPTIONAL_PATTERNS: [(i64, [i64; POINTS]); 7] = [
    (0, [0, 0, 0, 0, 0, 0, 0, -1]),
    (1, [1, 1, 0, 0, 0, 0, 0, 0]),
    (2, [1, 1, 1, 1, 1, 0, 0, 0]),
    (3, [2, 1, 1, 1, 1, 1, 1, 0]),
    (4, [2, 2, 2, 1, 1, 1, 1, 1]),
    (5, [2, 2, 2, 2, 2, 2, 1, 1]),
    (6, [3, 2, 2, 2, 2, 2, 2, 2]),
];

/// Representatives of the square-zero smooth rational curves up to permutation.
const SQUARE_ZERO_PATTERNS: [(i64, [i64; POINTS]); 15] = [
    (1, [1, 0, 0, 0, 0, 0, 0, 0]),
    (2, [1, 1, 1, 1, 0, 0, 0, 0]),
    (3, [2, 1, 1, 1, 1, 1, 0, 0]),
    (4, [2, 2, 2, 1, 1, 1, 1, 0]),
    (4, [3, 1, 1, 1, 1, 1, 1, 1]),
    (5, [3, 2, 2, 2, 1, 1, 1, 1]),
    (5, [2, 2, 2, 2, 2, 2, 1, 0]),
    (6, [3, 3, 2, 2, 2, 2, 1, 1]),
    (7, [3, 3, 3, 3, 2, 2, 2, 1]),
    (7, [4, 3, 2, 2, 2, 2, 2, 2]),
    (8, [3, 3, 3, 3, 3, 3, 3, 1]),
    (8, [4, 3, 3, 3, 3, 2, 2, 2]),
    (9, [4, 4, 3, 3, 3, 3, 3, 2]),
    (10, [4, 4, 4, 4, 3, 3, 3, 3]),
    (11, [4, 4, 4, 4, 4, 4, 4, 3]),
];

/// Advances `v` to the next lexicographic permutation; false when `v` was last.
fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn expand(patterns: &[(i64, [i64; POINTS])], kind: CurveKind) -> Vec<CurveClass> {
    let mut out = Vec::new();
    for &(d, m) in patterns {
        let mut v = m;
        v.sort_unstable();
        loop {
            out.push(CurveClass::smooth_rational(DivisorClass::new(d, v), kind));
            if !next_permutation(&mut v) {
                break;
            }
        }
    }
    // canonical order: degree, then lexicographic on coefficients
    out.sort_by_key(|a| a.class);
    out.dedup_by(|a, b| a.class == b.class);
    out
}

static EXCEPTIONAL: LazyLock<Vec<CurveClass>> = LazyLock::new(|| expand(&EXCEPTIONAL_PATTERNS, CurveKind::Exceptional));
static SQUARE_ZERO: LazyLock<Vec<CurveClass>> = LazyLock::new(|| expand(&SQUARE_ZERO_PATTERNS, CurveKind::SquareZero));

/// All 240 exceptional curves, sorted by degree then coefficients.
pub fn exceptional_curves() -> &'static [CurveClass] {
    &EXCEPTIONAL
}

/// All 2160 smooth rational curves of self-intersection zero, same order.
pub fn square_zero_curves() -> &'static [CurveClass] {
    &SQUARE_ZERO
}

/// Looks a class up in either curve table.
pub fn curve_for_class(class: &DivisorClass) -> Option<&'static CurveClass> {
    let table = match class.square() {
        -1 => exceptional_curves(),
        0 => square_zero_curves(),
        _ => return None,
    };
    table.binary_search_by(|c| c.class.cmp(class)).ok().map(|i| &table[i])
}

/// A nearly uniform class `dL - a(E1 + ... + E7) - bE8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub d: i64,
    pub a: i64,
    pub b: i64,
}

impl Triple {
    pub const fn new(d: i64, a: i64, b: i64) -> Self {
        Triple { d, a, b }
    }

    pub fn to_class(self) -> DivisorClass {
        let mut m = [self.a; POINTS];
        m[POINTS - 1] = self.b;
        DivisorClass::new(self.d, m)
    }

    /// Inverse of [`Triple::to_class`]; `None` unless the first seven
    /// coefficients agree.
    pub fn from_class(class: &DivisorClass) -> Option<Self> {
        let a = class.m[0];
        class.m[..POINTS - 1].iter().all(|&x| x == a).then(|| Triple::new(class.d, a, class.m[POINTS - 1]))
    }

    /// Membership in the cone of monotone nef nearly uniform classes.
    pub fn in_nef_cone(self) -> bool {
        cone_slacks(self).iter().all(|&s| s >= 0)
    }

    /// Writes the triple as a nonnegative integer combination of
    /// [`NEARLY_UNIFORM_NEF_GENERATORS`], if it lies in the cone.
    ///
    /// The generators form a Hilbert basis of the cone, so whenever the
    /// remainder is in the cone some generator can be taken off it.
    pub fn decompose(self) -> Option<[u64; 7]> {
        if !self.in_nef_cone() {
            return None;
        }
        let mut coeffs = [0u64; 7];
        let mut rest = [self.d as i128, self.a as i128, self.b as i128];
        while rest != [0, 0, 0] {
            let step = NEARLY_UNIFORM_NEF_GENERATORS.iter().enumerate().rev().find_map(|(i, g)| {
                // largest k keeping rest - k g in the cone
                let slack = slacks(rest);
                let cost = slacks([g.d as i128, g.a as i128, g.b as i128]);
                let k = slack
                    .iter()
                    .zip(cost)
                    .filter(|(_, c)| *c > 0)
                    .map(|(s, c)| s / c)
                    .min()
                    .unwrap_or(i128::MAX)
                    .min(rest[0] / g.d as i128);
                (k > 0).then_some((i, g, k))
            });
            let (i, g, k) = step?;
            coeffs[i] += k as u64;
            rest = [rest[0] - k * g.d as i128, rest[1] - k * g.a as i128, rest[2] - k * g.b as i128];
        }
        Some(coeffs)
    }
}

fn slacks([d, a, b]: [i128; 3]) -> [i128; 5] {
    [a - b, b, 3 * d - 8 * a, 5 * d - 13 * a - b, 6 * d - 15 * a - 2 * b]
}

fn cone_slacks(t: Triple) -> [i128; 5] {
    slacks([t.d as i128, t.a as i128, t.b as i128])
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d, self.a, self.b)
    }
}

/// Generators of the monoid of monotone nef nearly uniform classes.
pub const NEARLY_UNIFORM_NEF_GENERATORS: [Triple; 7] = [
    Triple::new(1, 0, 0),
    Triple::new(3, 1, 0),
    Triple::new(3, 1, 1),
    Triple::new(8, 3, 0),
    Triple::new(8, 3, 1),
    Triple::new(11, 4, 3),
    Triple::new(17, 6, 6),
];

pub fn nearly_uniform_nef_generators() -> &'static [Triple; 7] {
    &NEARLY_UNIFORM_NEF_GENERATORS
}
