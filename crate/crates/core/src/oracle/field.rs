//! Arithmetic and row reduction over `Z/p` for primes below `2^31`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be a prime below `2^31` so products fit in a `u64`.
    pub fn new(p: u64) -> Option<Self> {
        (p < (1 << 31) && is_prime(p)).then_some(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    /// `row -= factor * pivot`, from column `start` on.
    #[inline]
    fn eliminate(&self, row: &mut [u64], pivot: &[u64], factor: u64, start: usize) {
        let neg = self.p - factor;
        for (x, &y) in row[start..].iter_mut().zip(&pivot[start..]) {
            if y != 0 {
                *x = (*x + neg * y) % self.p;
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row space built one vector at a time. Stored rows are monic at their
/// pivot and zero in every earlier pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        Echelon { field, cols, rows: Vec::new(), pivot_row: vec![None; cols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; true if it was independent.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        for col in 0..self.cols {
            if v[col] == 0 {
                continue;
            }
            match self.pivot_row[col] {
                Some(r) => {
                    let factor = v[col];
                    f.eliminate(&mut v, &self.rows[r], factor, col);
                }
                None => {
                    let scale = f.inv(v[col]);
                    for x in v[col..].iter_mut() {
                        *x = f.mul(*x, scale);
                    }
                    self.pivot_row[col] = Some(self.rows.len());
                    self.rows.push(v);
                    return true;
                }
            }
        }
        false
    }

    /// Basis of `{x : row . x = 0 for every stored row}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        // full back-substitution into reduced row echelon form
        let mut pivots: Vec<(usize, Vec<u64>)> =
            self.pivot_row.iter().enumerate().filter_map(|(c, r)| r.map(|r| (c, self.rows[r].clone()))).collect();
        for i in (0..pivots.len()).rev() {
            let (col_i, row_i) = pivots[i].clone();
            for (_, row) in pivots[..i].iter_mut() {
                let factor = row[col_i];
                if factor != 0 {
                    f.eliminate(row, &row_i, factor, col_i);
                }
            }
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| self.pivot_row[c].is_none()) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (col, row) in &pivots {
                if row[free] != 0 {
                    v[*col] = f.sub(0, row[free]);
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(PrimeField::new(4).is_none());
        assert!(PrimeField::new(2_147_483_647).is_some());
        assert!(PrimeField::new(4_294_967_291).is_none());
    }

    #[test]
    fn inverse() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rank_and_nullspace() {
        let f = PrimeField::new(7).unwrap();
        let mut e = Echelon::new(f, 4);
        assert!(e.insert(vec![1, 2, 3, 4]));
        assert!(e.insert(vec![0, 1, 1, 1]));
        assert!(!e.insert(vec![1, 3, 4, 5]));
        assert!(!e.insert(vec![2, 4, 6, 1])); // 2*(1,2,3,4) mod 7
        assert_eq!(e.rank(), 2);
        let null = e.nullspace();
        assert_eq!(null.len(), 2);
        for v in &null {
            for row in [[1u64, 2, 3, 4], [0, 1, 1, 1]] {
                let dot = row.iter().zip(v).fold(0, |acc, (a, b)| f.add(acc, f.mul(*a, *b)));
                assert_eq!(dot, 0);
            }
        }
    }
}
