//! Generic `h^0` by interpolation rank over a prime field.
//!
//! The space of polynomials of degree `<= d` in an affine chart of `P^n` has
//! dimension `binom(d+n, n)`. A point of multiplicity `m` imposes the
//! vanishing of every Hasse derivative of order `< m`; the Hasse derivative
//! `D^b x^a = prod binom(a_j, b_j) x^(a-b)` has no factorial denominators,
//! so the conditions are well defined for any prime larger than `d`.
//! Points are sampled at random, and the minimum over several trials is
//! returned since special positions can only increase `h^0`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dimension::{dim2, dim3, DimensionError, DimensionResult};
use crate::lattice::DivisorClass;
use crate::modp::PrimeField;
use crate::reduction::{standardize, ReductionStatus};

pub const DEFAULT_PRIME: u64 = (1 << 31) - 1;
pub const DEFAULT_TRIALS: usize = 3;
pub const DEFAULT_SEED: u64 = 0;
/// Largest row or column count handled by the dense elimination.
pub const MATRIX_CAP: usize = 4000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("prime {prime} must exceed the degree and every multiplicity (largest is {needed})")]
    PrimeTooSmall { prime: u64, needed: u64 },
    #[error("interpolation matrix {rows}x{cols} exceeds the cap of {cap}")]
    TooLarge { rows: usize, cols: usize, cap: usize },
    #[error("at least one trial is required")]
    NoTrials,
    #[error("degree and multiplicities must be non-negative machine integers")]
    OutOfRange,
    #[error("unsupported ambient dimension {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Dimension(#[from] DimensionError),
}

/// Degree-`d` hypersurfaces in `P^n` through fat points `m_i`, over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationProblem {
    ambient_dim: usize,
    degree: usize,
    mults: Vec<usize>,
    field: PrimeField,
    seed: u64,
    trials: usize,
}

/// `binom(a, b)` for small arguments, saturating at `usize::MAX`.
fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

impl InterpolationProblem {
    pub fn new(
        ambient_dim: usize,
        degree: usize,
        mults: &[usize],
        prime: u64,
        seed: u64,
        trials: usize,
    ) -> Result<Self, OracleError> {
        Self::with_cap(ambient_dim, degree, mults, prime, seed, trials, MATRIX_CAP)
    }

    pub fn with_cap(
        ambient_dim: usize,
        degree: usize,
        mults: &[usize],
        prime: u64,
        seed: u64,
        trials: usize,
        cap: usize,
    ) -> Result<Self, OracleError> {
        if ambient_dim == 0 {
            return Err(OracleError::UnsupportedDimension(0));
        }
        let field = PrimeField::new(prime).ok_or(OracleError::NotPrime(prime))?;
        if trials == 0 {
            return Err(OracleError::NoTrials);
        }
        let mults: Vec<usize> = mults.iter().copied().filter(|&m| m > 0).collect();
        let needed = mults.iter().copied().max().unwrap_or(0).max(degree) as u64;
        if prime <= needed {
            return Err(OracleError::PrimeTooSmall { prime, needed });
        }
        let problem = Self {
            ambient_dim,
            degree,
            mults,
            field,
            seed,
            trials,
        };
        let (rows, cols) = (problem.rows(), problem.columns());
        if rows > cap || cols > cap {
            return Err(OracleError::TooLarge { rows, cols, cap });
        }
        Ok(problem)
    }

    /// Number of monomials of degree `<= d`: `binom(d+n, n)`.
    pub fn columns(&self) -> usize {
        binomial(self.degree + self.ambient_dim, self.ambient_dim)
    }

    /// Number of conditions: `sum binom(m_i - 1 + n, n)`.
    pub fn rows(&self) -> usize {
        self.mults
            .iter()
            .map(|&m| binomial(m - 1 + self.ambient_dim, self.ambient_dim))
            .fold(0usize, usize::saturating_add)
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    fn trial_rank(&self, trial: usize, monomials: &[Vec<usize>], binom: &[Vec<u64>]) -> usize {
        let f = self.field;
        let p = f.modulus();
        let n = self.ambient_dim;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(trial as u64));
        let mut seen = HashSet::new();
        let mut rows = Vec::with_capacity(self.rows());
        for &m in &self.mults {
            let point = loop {
                let candidate: Vec<u64> = (0..n).map(|_| rng.random_range(0..p)).collect();
                if seen.insert(candidate.clone()) {
                    break candidate;
                }
            };
            // powers[j][e] = point_j^e
            let powers: Vec<Vec<u64>> = point
                .iter()
                .map(|&x| {
                    let mut v = Vec::with_capacity(self.degree + 1);
                    let mut acc = 1 % p;
                    for _ in 0..=self.degree {
                        v.push(acc);
                        acc = f.mul(acc, x);
                    }
                    v
                })
                .collect();
            for order in monomials.iter().take_while(|b| b.iter().sum::<usize>() < m) {
                let row = monomials
                    .iter()
                    .map(|alpha| {
                        let mut entry = 1 % p;
                        for j in 0..n {
                            if alpha[j] < order[j] {
                                return 0;
                            }
                            entry = f.mul(entry, binom[alpha[j]][order[j]]);
                            entry = f.mul(entry, powers[j][alpha[j] - order[j]]);
                        }
                        entry
                    })
                    .collect();
                rows.push(row);
            }
        }
        f.rank(rows)
    }
}

/// Exponent vectors of total degree `<= d`, graded by total degree.
fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn fill(prefix: &mut Vec<usize>, n: usize, remaining: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n - 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(prefix, n, remaining - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=d {
        fill(&mut Vec::with_capacity(n), n, total, &mut out);
    }
    out
}

/// Generic `h^0` of the problem: `binom(d+n, n) - rank`, minimized over trials.
pub fn h0_interpolation(problem: &InterpolationProblem) -> usize {
    let cols = problem.columns();
    let mons = monomials(problem.ambient_dim, problem.degree);
    debug_assert_eq!(mons.len(), cols);
    let f = problem.field;
    let mut binom = vec![vec![0u64; problem.degree + 1]; problem.degree + 1];
    for a in 0..=problem.degree {
        binom[a][0] = 1;
        for b in 1..=a {
            binom[a][b] = f.add(binom[a - 1][b - 1], if b < a { binom[a - 1][b] } else { 0 });
        }
    }
    (0..problem.trials)
        .map(|t| cols - problem.trial_rank(t, &mons, &binom))
        .min()
        .expect("at least one trial")
}

/// Oracle `h^0` of an arbitrary class. Classes with negative multiplicities
/// are first moved along the `h^0`-preserving standardization chain.
pub fn oracle_h0(class: &DivisorClass, prime: u64, seed: u64, trials: usize) -> Result<usize, OracleError> {
    let target = if class.degree().is_negative() {
        return Ok(0);
    } else if class.has_negative_mult() {
        let report = standardize(class);
        if report.status == ReductionStatus::NotEffective && report.result.degree().is_negative() {
            return Ok(0);
        }
        report.result
    } else {
        class.clone()
    };
    let degree = target.degree().to_usize().ok_or(OracleError::OutOfRange)?;
    let mults = target
        .mults()
        .iter()
        .map(|m| m.to_usize().ok_or(OracleError::OutOfRange))
        .collect::<Result<Vec<_>, _>>()?;
    let problem = InterpolationProblem::new(target.ambient_dim(), degree, &mults, prime, seed, trials)?;
    Ok(h0_interpolation(&problem))
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub oracle_h0: BigInt,
    pub algorithm: DimensionResult,
    pub agree: bool,
}

impl VerifyReport {
    pub fn algorithm_h0(&self) -> &BigInt {
        &self.algorithm.h0
    }
}

/// Compares `dim2`/`dim3` with the interpolation oracle.
pub fn verify_class(class: &DivisorClass, prime: u64, seed: u64, trials: usize) -> Result<VerifyReport, OracleError> {
    let algorithm = match class.ambient_dim() {
        2 => dim2(class)?,
        3 => dim3(class)?,
        n => return Err(OracleError::UnsupportedDimension(n)),
    };
    let oracle_h0 = BigInt::from(oracle_h0(class, prime, seed, trials)?);
    let agree = oracle_h0 == algorithm.h0;
    Ok(VerifyReport {
        oracle_h0,
        algorithm,
        agree,
    })
}
