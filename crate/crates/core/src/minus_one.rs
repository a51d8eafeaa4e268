//! (-1)-classes: integral effective classes with `E^2 = E.K = -1`.
//!
//! Every (-1)-class is a Weyl image of `E_1`. Recognition runs the descent
//! (sort, Cremona while `E.F < 0`) and accepts when it lands on some `E_i`.
//! Enumeration runs the same moves backwards from `E_r`, bounded in degree.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dimension::{chi, dim2, DimensionError};
use crate::lattice::{DivisorClass, Move, WeylWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    /// `E^2 != -1` or `E.K != -1`.
    BadNumerics,
    NegativeMultNotExceptional,
    StalledPositiveF,
    /// Degree dropped to `<= 0` without reaching an exceptional class.
    NegativeDegree,
}

impl RejectReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            RejectReason::BadNumerics => "BadNumerics",
            RejectReason::NegativeMultNotExceptional => "NegativeMultNotExceptional",
            RejectReason::StalledPositiveF => "StalledPositiveF",
            RejectReason::NegativeDegree => "NegativeDegree",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinusOneCertificate {
    pub verdict: bool,
    /// Classes visited by the descent, starting with the input.
    pub chain: Vec<DivisorClass>,
    /// Moves taking the input to the last entry of `chain`.
    pub word: WeylWord,
    pub failure_reason: Option<RejectReason>,
}

impl MinusOneCertificate {
    fn reject(chain: Vec<DivisorClass>, word: WeylWord, reason: RejectReason) -> Self {
        Self {
            verdict: false,
            chain,
            word,
            failure_reason: Some(reason),
        }
    }
}

pub fn is_minus_one_class(class: &DivisorClass) -> MinusOneCertificate {
    let minus_one = BigInt::from(-1);
    let mut chain = vec![class.clone()];
    let mut word = WeylWord::new();
    if class.self_intersection() != minus_one || class.k_dot() != minus_one {
        return MinusOneCertificate::reject(chain, word, RejectReason::BadNumerics);
    }
    let mut current = class.clone();
    loop {
        let (sorted, sort_word) = current.sort_desc();
        if !sort_word.is_empty() {
            chain.push(sorted.clone());
            word.extend(sort_word);
        }
        current = sorted;
        if current.exceptional_slot().is_some() {
            return MinusOneCertificate {
                verdict: true,
                chain,
                word,
                failure_reason: None,
            };
        }
        if !current.degree().is_positive() {
            return MinusOneCertificate::reject(chain, word, RejectReason::NegativeDegree);
        }
        if current.has_negative_mult() {
            return MinusOneCertificate::reject(chain, word, RejectReason::NegativeMultNotExceptional);
        }
        if !current.dot_f().is_negative() {
            return MinusOneCertificate::reject(chain, word, RejectReason::StalledPositiveF);
        }
        current = current.cremona();
        word.push(Move::Cremona);
        chain.push(current.clone());
    }
}

/// All (-1)-classes on `points` points up to a degree bound, stored as
/// sorted representatives; individual classes are produced on demand.
#[derive(Clone, Debug)]
pub struct MinusOneSet {
    ambient_dim: usize,
    points: usize,
    representatives: BTreeSet<DivisorClass>,
}

impl MinusOneSet {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Representatives with non-increasing multiplicities.
    pub fn representatives(&self) -> impl Iterator<Item = &DivisorClass> {
        self.representatives.iter()
    }

    /// Every class, i.e. every distinct arrangement of each representative.
    pub fn iter(&self) -> impl Iterator<Item = DivisorClass> + '_ {
        self.representatives.iter().flat_map(arrangements)
    }

    /// Number of classes (not representatives).
    pub fn len(&self) -> usize {
        self.representatives.iter().map(|c| arrangement_count(c.mults())).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn contains(&self, class: &DivisorClass) -> bool {
        if class.ambient_dim() != self.ambient_dim {
            return false;
        }
        let (sorted, _) = class.with_points(self.points).sort_desc();
        sorted.points() == self.points && self.representatives.contains(&sorted)
    }
}

fn arrangement_count(mults: &[BigInt]) -> usize {
    let mut count: u128 = 1;
    let mut placed: u128 = 0;
    for (_, group) in &mults.iter().chunk_by(|m| (*m).clone()) {
        for k in 1..=group.count() as u128 {
            placed += 1;
            count = count * placed / k;
        }
    }
    usize::try_from(count).expect("arrangement count fits in usize")
}

/// Distinct permutations of the multiplicities, in lexicographic order.
fn arrangements(class: &DivisorClass) -> impl Iterator<Item = DivisorClass> + '_ {
    let mut current: Vec<BigInt> = class.mults().to_vec();
    current.sort();
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = DivisorClass::new(class.ambient_dim(), class.degree().clone(), current.clone())
            .expect("ambient dimension already validated");
        done = !next_permutation(&mut current);
        Some(out)
    })
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Breadth-first search over sorted representatives starting from `E_r`.
///
/// Descent from any (-1)-class strictly lowers the degree, so its reversal
/// never leaves the degree bound and the search is complete. With fewer than
/// `n+1` points the search runs on `n+1` slots and keeps the classes
/// supported on `points` of them.
pub fn enumerate_minus_one(ambient_dim: usize, points: usize, d_max: u64) -> MinusOneSet {
    let mut representatives = BTreeSet::new();
    if points == 0 {
        return MinusOneSet {
            ambient_dim,
            points,
            representatives,
        };
    }
    let k = ambient_dim + 1;
    let slots = points.max(k);
    let start = DivisorClass::exceptional(ambient_dim, slots, slots - 1).expect("ambient dimension >= 2");
    let bound = BigInt::from(d_max);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(rep) = queue.pop_front() {
        for subset in (0..slots).combinations(k) {
            let head: BigInt = subset.iter().map(|&i| &rep.mults()[i]).sum();
            let t = BigInt::from(ambient_dim - 1) * rep.degree() - head;
            if t.is_zero() {
                continue;
            }
            let degree = rep.degree() + &t;
            if degree > bound {
                continue;
            }
            let mut mults = rep.mults().to_vec();
            for &i in &subset {
                mults[i] += &t;
            }
            mults.sort_by(|a, b| b.cmp(a));
            let next = DivisorClass::new(ambient_dim, degree, mults).expect("ambient dimension >= 2");
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    for rep in seen {
        let mut surplus = slots - points;
        if rep.mults().iter().filter(|m| m.is_zero()).count() < surplus {
            continue;
        }
        let mults: Vec<BigInt> = rep
            .mults()
            .iter()
            .filter(|m| {
                let drop = m.is_zero() && surplus > 0;
                surplus -= usize::from(drop);
                !drop
            })
            .cloned()
            .collect();
        representatives
            .insert(DivisorClass::new(ambient_dim, rep.degree().clone(), mults).expect("ambient dimension >= 2"));
    }
    MinusOneSet {
        ambient_dim,
        points,
        representatives,
    }
}

/// (-1)-classes of degree at most `d_max` meeting `class` negatively, with
/// the product.
pub fn negative_classes(class: &DivisorClass, d_max: u64) -> Vec<(DivisorClass, BigInt)> {
    let set = enumerate_minus_one(class.ambient_dim(), class.points(), d_max);
    set.iter()
        .filter_map(|e| {
            let product = class.intersect(&e).expect("same ambient dimension");
            product.is_negative().then_some((e, product))
        })
        .collect()
}

/// Plane speciality: `h^0 > max(chi, 0)` with `h^0 > 0`.
pub fn is_special2(class: &DivisorClass) -> Result<bool, DimensionError> {
    let result = dim2(class)?;
    Ok(result.h0.is_positive() && result.h0 > chi(class).max(BigInt::zero()))
}

/// A (-1)-curve of degree at most `d_max` with `D.E <= -2`, if one exists.
pub fn special_witness2(class: &DivisorClass, d_max: u64) -> Result<Option<(DivisorClass, BigInt)>, DimensionError> {
    if class.ambient_dim() != 2 {
        return Err(DimensionError::WrongAmbientDim {
            expected: 2,
            found: class.ambient_dim(),
        });
    }
    let minus_two = BigInt::from(-2);
    Ok(negative_classes(class, d_max)
        .into_iter()
        .find(|(_, p)| *p <= minus_two))
}
