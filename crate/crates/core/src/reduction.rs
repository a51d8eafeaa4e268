//! Reduction of classes to pre-standard and standard form.
//!
//! A class is pre-standard when `d >= m_1 >= ... >= m_r` and
//! `(n-1) d >= m_1 + ... + m_{n+1}`, and standard when moreover `m_r >= 0`.
//! Every Weyl move preserves `h^0`, and so does clamping a negative
//! multiplicity to zero (the exceptional divisor is a fixed component).
//!
//! A `NotEffective` verdict is reached when the class has negative degree,
//! or stalls with `D.F >= 0` but `d < m_1`. Both imply `h^0 = 0`, also for
//! inputs that were never effective to begin with.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::{DivisorClass, Move, WeylWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionStatus {
    PreStandard,
    Standard,
    NotEffective,
}

impl ReductionStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReductionStatus::PreStandard => "PreStandard",
            ReductionStatus::Standard => "Standard",
            ReductionStatus::NotEffective => "NotEffective",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub result: DivisorClass,
    pub word: WeylWord,
    pub status: ReductionStatus,
    /// Amount added by clamp moves, indexed by the slot the clamp acted on.
    pub clamp_total: Vec<BigInt>,
}

fn leading_mult(class: &DivisorClass) -> BigInt {
    class.mult(0)
}

pub fn is_pre_standard(class: &DivisorClass) -> bool {
    class.is_sorted_desc() && *class.degree() >= leading_mult(class) && !class.dot_f().is_negative()
}

pub fn is_standard(class: &DivisorClass) -> bool {
    is_pre_standard(class) && !class.has_negative_mult()
}

/// Sorts, then applies the Cremona move while `D.F < 0`, in place.
fn descend(current: &mut DivisorClass, word: &mut WeylWord) -> ReductionStatus {
    loop {
        let (sorted, sort_word) = current.sort_desc();
        *current = sorted;
        word.extend(sort_word);
        if current.degree().is_negative() {
            return ReductionStatus::NotEffective;
        }
        if current.dot_f().is_negative() {
            *current = current.cremona();
            word.push(Move::Cremona);
        } else if *current.degree() >= leading_mult(current) {
            return ReductionStatus::PreStandard;
        } else {
            return ReductionStatus::NotEffective;
        }
    }
}

/// Sort, then apply the Cremona move while `D.F < 0`.
pub fn pre_standard_form(class: &DivisorClass) -> ReductionReport {
    let mut current = class.clone();
    let mut word = WeylWord::new();
    let status = descend(&mut current, &mut word);
    current.strip_padding(class.points());
    ReductionReport {
        result: current,
        word,
        status,
        clamp_total: Vec::new(),
    }
}

/// Reduce to a standard class with the same `h^0`, or report that `h^0 = 0`.
///
/// Each round reaches pre-standard form and then clamps the negative
/// multiplicities (which sit at the tail) to zero. Clamping can make `D.F`
/// negative again, in which case another round follows.
pub fn standardize(class: &DivisorClass) -> ReductionReport {
    let mut current = class.clone();
    let mut word = WeylWord::new();
    let mut clamp_total: Vec<BigInt> = Vec::new();
    let status = loop {
        if descend(&mut current, &mut word) == ReductionStatus::NotEffective {
            break ReductionStatus::NotEffective;
        }
        let mut clamped = false;
        for slot in 0..current.points() {
            let m = &current.mults()[slot];
            if m.is_negative() {
                let amount = -m;
                current.mults_mut()[slot] = BigInt::zero();
                if clamp_total.len() <= slot {
                    clamp_total.resize(slot + 1, BigInt::zero());
                }
                clamp_total[slot] += &amount;
                word.push(Move::Clamp { slot, amount });
                clamped = true;
            }
        }
        if !clamped {
            break ReductionStatus::Standard;
        }
    };
    current.strip_padding(class.points());
    ReductionReport {
        result: current,
        word,
        status,
        clamp_total,
    }
}
