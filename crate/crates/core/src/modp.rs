//! Word-sized arithmetic modulo a prime below `2^32`, and dense rank.

const MERSENNE_31: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be a prime below `2^32` so that products fit in a `u64`.
    pub fn new(p: u64) -> Option<Self> {
        (p < (1 << 32) && is_prime(p)).then_some(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        if self.p == MERSENNE_31 {
            let r = (x & MERSENNE_31) + (x >> 31);
            let r = (r & MERSENNE_31) + (r >> 31);
            if r >= MERSENNE_31 {
                r - MERSENNE_31
            } else {
                r
            }
        } else {
            x % self.p
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
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

    /// Rank of a dense matrix given as rows of reduced residues. The matrix
    /// is consumed by the elimination.
    pub fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let p = self.p;
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inv(rows[rank][col]);
            for x in &mut rows[rank][col..] {
                *x = self.mul(*x, inv);
            }
            let (top, bottom) = rows.split_at_mut(rank + 1);
            let pivot_row = &top[rank][col..];
            for row in bottom {
                let f = row[col];
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                // row < p and neg * pivot < p^2 < 2^64 - p
                for (x, &y) in row[col..].iter_mut().zip(pivot_row) {
                    *x = self.reduce(*x + neg * y);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

/// Deterministic Miller-Rabin, exact for `n < 2^32` with bases 2, 7, 61.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 61] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    if n >= 1 << 32 {
        return false;
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| a * b % n;
    'bases: for a in [2u64, 7, 61] {
        let mut x = 1u64;
        let (mut b, mut e) = (a % n, d);
        while e > 0 {
            if e & 1 == 1 {
                x = mulmod(x, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}
