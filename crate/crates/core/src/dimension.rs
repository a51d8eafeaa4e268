//! Euler characteristics and `h^0` algorithms for the plane and for space.
//!
//! Binomials are evaluated as polynomials over all integers, so negative
//! multiplicities contribute their polynomial value. That keeps `chi`
//! invariant under Weyl moves in the plane; only clamp steps change it.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::DivisorClass;
use crate::reduction::{is_standard, standardize, ReductionStatus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimensionError {
    #[error("expected a class on the blow-up of P^{expected}, got P^{found}")]
    WrongAmbientDim { expected: usize, found: usize },
    #[error("class {0} is not in standard form")]
    NotStandard(String),
    #[error("class {0} has q <= 0")]
    NonPositiveQ(String),
}

/// How much of the literature backs an `h^0` value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Decided without any conjecture.
    Unconditional,
    /// Inside a range where the conjecture is a theorem.
    ProvenRange,
    Conjectural,
}

impl Basis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Basis::Unconditional => "Unconditional",
            Basis::ProvenRange => "ProvenRange",
            Basis::Conjectural => "Conjectural",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionResult {
    pub h0: BigInt,
    /// Euler characteristic of the input class.
    pub chi: BigInt,
    /// `max(chi, 0)`.
    pub expected: BigInt,
    pub basis: Basis,
    /// The class the formula was applied to (or the partial reduction when
    /// the input is not effective).
    pub reduced: DivisorClass,
}

impl DimensionResult {
    fn new(h0: BigInt, input: &DivisorClass, basis: Basis, reduced: DivisorClass) -> Self {
        let chi = chi(input);
        let expected = chi.clone().max(BigInt::zero());
        Self {
            h0,
            chi,
            expected,
            basis,
            reduced,
        }
    }
}

fn require_dim(class: &DivisorClass, expected: usize) -> Result<(), DimensionError> {
    if class.ambient_dim() != expected {
        return Err(DimensionError::WrongAmbientDim {
            expected,
            found: class.ambient_dim(),
        });
    }
    Ok(())
}

/// `binom(x, k)` as the polynomial `x (x-1) ... (x-k+1) / k!`.
pub fn binomial_poly(x: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= x - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `chi(D) = binom(d+n, n) - sum binom(m_i+n-1, n)`.
pub fn chi(class: &DivisorClass) -> BigInt {
    let n = class.ambient_dim();
    let mut value = binomial_poly(&(class.degree() + BigInt::from(n)), n);
    for m in class.mults() {
        value -= binomial_poly(&(m + BigInt::from(n - 1)), n);
    }
    value
}

/// `h^0` of a plane class, assuming standard classes are non-special.
pub fn dim2(class: &DivisorClass) -> Result<DimensionResult, DimensionError> {
    require_dim(class, 2)?;
    let report = standardize(class);
    if report.status == ReductionStatus::NotEffective {
        return Ok(DimensionResult::new(
            BigInt::zero(),
            class,
            Basis::Unconditional,
            report.result,
        ));
    }
    let reduced = report.result;
    if reduced.degree().is_zero() {
        // A standard class of degree 0 is the zero class.
        return Ok(DimensionResult::new(
            BigInt::one(),
            class,
            Basis::Unconditional,
            reduced,
        ));
    }
    let h0 = chi(&reduced).max(BigInt::zero());
    Ok(DimensionResult::new(h0, class, Basis::Conjectural, reduced))
}

/// Multiplicities sorted non-increasingly and zero-padded to at least `len`.
fn sorted_padded(class: &DivisorClass, len: usize) -> Vec<BigInt> {
    let mut mults = class.mults().to_vec();
    mults.sort_by(|a, b| b.cmp(a));
    if mults.len() < len {
        mults.resize(len, BigInt::zero());
    }
    mults
}

/// Class of `D|_Q` for the quadric `Q` through the first nine points, in the
/// plane model of `Q` as a blow-up of `P^2` at ten points.
pub fn restrict_to_quadric(class: &DivisorClass) -> Result<DivisorClass, DimensionError> {
    require_dim(class, 3)?;
    let d = class.degree();
    let m = sorted_padded(class, 9);
    let a = d - &m[0];
    let mut mults = vec![a.clone(), a];
    mults.extend(m[1..9].iter().cloned());
    Ok(DivisorClass::new(2, BigInt::from(2) * d - &m[0], mults).expect("ambient dimension 2"))
}

/// `q(D) = (d+1)^2 - 1/2 sum_{i<=9} m_i (m_i + 1)` for a standard class.
pub fn q_value(class: &DivisorClass) -> Result<BigInt, DimensionError> {
    require_dim(class, 3)?;
    if !is_standard(class) {
        return Err(DimensionError::NotStandard(class.to_string()));
    }
    Ok(q_unchecked(class))
}

fn q_unchecked(class: &DivisorClass) -> BigInt {
    let d1 = class.degree() + BigInt::one();
    let m = sorted_padded(class, 9);
    let twice: BigInt = m[..9].iter().map(|mi| mi * (mi + BigInt::one())).sum();
    &d1 * &d1 - twice / BigInt::from(2)
}

/// `Q = 2H - E_1 - ... - E_9`, subtracted from the sorted class.
fn subtract_quadric(class: &DivisorClass) -> DivisorClass {
    let mut mults = sorted_padded(class, 9);
    for m in &mut mults[..9] {
        *m -= BigInt::one();
    }
    DivisorClass::new(3, class.degree() - BigInt::from(2), mults).expect("ambient dimension 3")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadStatus {
    /// Standard class with `q > 0`.
    Reduced,
    NotEffective,
}

impl QuadStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuadStatus::Reduced => "Reduced",
            QuadStatus::NotEffective => "NotEffective",
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuadOutcome {
    pub class: DivisorClass,
    pub status: QuadStatus,
    /// Number of times the quadric class was peeled off.
    pub subtractions: usize,
    /// Largest multiplicity over all standard classes visited.
    pub max_mult: BigInt,
    /// Largest number of nonzero multiplicities over all standard classes visited.
    pub max_points: usize,
}

/// Alternates standardization and peeling off `Q` while `q <= 0`.
pub fn quad(class: &DivisorClass) -> Result<QuadOutcome, DimensionError> {
    require_dim(class, 3)?;
    let mut current = class.clone();
    let mut subtractions = 0;
    let mut max_mult = BigInt::zero();
    let mut max_points = 0;
    loop {
        let report = standardize(&current);
        current = report.result;
        if report.status == ReductionStatus::NotEffective {
            return Ok(QuadOutcome {
                class: current,
                status: QuadStatus::NotEffective,
                subtractions,
                max_mult,
                max_points,
            });
        }
        max_mult = max_mult.max(current.mult(0));
        max_points = max_points.max(current.mults().iter().filter(|m| !m.is_zero()).count());
        if q_unchecked(&current).is_positive() {
            return Ok(QuadOutcome {
                class: current,
                status: QuadStatus::Reduced,
                subtractions,
                max_mult,
                max_points,
            });
        }
        current = subtract_quadric(&current);
        subtractions += 1;
    }
}

fn require_standard_positive_q(class: &DivisorClass) -> Result<(), DimensionError> {
    if !q_value(class)?.is_positive() {
        return Err(DimensionError::NonPositiveQ(class.to_string()));
    }
    Ok(())
}

/// `binom(d+3,3) - sum binom(m_i+2,3) + sum_{m_i+m_j>d+1} binom(m_i+m_j-d+1,3)`.
pub fn h0_formula3(class: &DivisorClass) -> Result<BigInt, DimensionError> {
    require_standard_positive_q(class)?;
    let d = class.degree();
    let m = class.mults();
    let mut value = binomial_poly(&(d + BigInt::from(3)), 3);
    for mi in m {
        value -= binomial_poly(&(mi + BigInt::from(2)), 3);
    }
    let threshold = d + BigInt::one();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let s = &m[i] + &m[j];
            if s > threshold {
                value += binomial_poly(&(s - d + BigInt::one()), 3);
            }
        }
    }
    Ok(value)
}

/// `d < m_1 + m_2 - 1` for a standard class with `q > 0`.
pub fn is_special3(class: &DivisorClass) -> Result<bool, DimensionError> {
    require_standard_positive_q(class)?;
    Ok(*class.degree() < class.mult(0) + class.mult(1) - BigInt::one())
}

/// `h^0` of a space class according to the quadric-peeling conjecture.
pub fn dim3(class: &DivisorClass) -> Result<DimensionResult, DimensionError> {
    let outcome = quad(class)?;
    let proven = outcome.max_points <= 8 || outcome.max_mult <= BigInt::from(4);
    let conditional = if proven { Basis::ProvenRange } else { Basis::Conjectural };
    // Peeling Q is itself conjectural, so a trivial endpoint is only
    // unconditional when nothing was peeled.
    let trivial = if outcome.subtractions == 0 {
        Basis::Unconditional
    } else {
        conditional
    };
    match outcome.status {
        QuadStatus::NotEffective => Ok(DimensionResult::new(BigInt::zero(), class, trivial, outcome.class)),
        QuadStatus::Reduced if outcome.class.degree().is_zero() => {
            Ok(DimensionResult::new(BigInt::one(), class, trivial, outcome.class))
        }
        QuadStatus::Reduced => {
            let h0 = h0_formula3(&outcome.class)?.max(BigInt::zero());
            Ok(DimensionResult::new(h0, class, conditional, outcome.class))
        }
    }
}
