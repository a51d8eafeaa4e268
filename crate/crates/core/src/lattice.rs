//! Integer model of the Picard group of the blow-up of `P^n` at `r` points.
//!
//! A class is stored as `D = dH - sum m_i E_i`, so the exceptional class
//! `E_i` has degree 0 and multiplicity `-1` in slot `i`. The bilinear form is
//! diagonal with `H^2 = n - 1` and `E_i^2 = -1`.
//!
//! Classes with different numbers of multiplicities are compared and paired
//! after zero-padding the shorter one: a very general point of multiplicity 0
//! changes nothing.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("ambient dimension must be at least 2, got {0}")]
    AmbientDimTooSmall(usize),
    #[error("ambient dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("class has self-intersection {0}, a root must have -2")]
    NotARoot(BigInt),
    #[error("word contains a clamp move and cannot be inverted")]
    ClampNotInvertible,
}

/// A divisor class `dH - sum m_i E_i` on the blow-up of `P^n`.
#[derive(Clone, Debug)]
pub struct DivisorClass {
    ambient_dim: usize,
    degree: BigInt,
    mults: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(ambient_dim: usize, degree: BigInt, mults: Vec<BigInt>) -> Result<Self, LatticeError> {
        if ambient_dim < 2 {
            return Err(LatticeError::AmbientDimTooSmall(ambient_dim));
        }
        Ok(Self {
            ambient_dim,
            degree,
            mults,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(ambient_dim: usize, degree: i64, mults: &[i64]) -> Result<Self, LatticeError> {
        Self::new(
            ambient_dim,
            BigInt::from(degree),
            mults.iter().map(|&m| BigInt::from(m)).collect(),
        )
    }

    /// The pull-back `H` of a hyperplane, with `points` zero multiplicities.
    pub fn hyperplane(ambient_dim: usize, points: usize) -> Result<Self, LatticeError> {
        Self::new(ambient_dim, BigInt::from(1), vec![BigInt::zero(); points])
    }

    /// The exceptional class `E_slot` (0-based) among `points` points.
    pub fn exceptional(ambient_dim: usize, points: usize, slot: usize) -> Result<Self, LatticeError> {
        let mut mults = vec![BigInt::zero(); points.max(slot + 1)];
        mults[slot] = BigInt::from(-1);
        Self::new(ambient_dim, BigInt::zero(), mults)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn mults(&self) -> &[BigInt] {
        &self.mults
    }

    /// Number of stored multiplicity slots (including zeros).
    pub fn points(&self) -> usize {
        self.mults.len()
    }

    /// Multiplicity at `slot`, zero beyond the stored length.
    pub fn mult(&self, slot: usize) -> BigInt {
        self.mults.get(slot).cloned().unwrap_or_default()
    }

    pub(crate) fn mults_mut(&mut self) -> &mut Vec<BigInt> {
        &mut self.mults
    }

    /// Returns the multiplicities without trailing zeros.
    fn trimmed(&self) -> &[BigInt] {
        let end = self.mults.iter().rposition(|m| !m.is_zero()).map_or(0, |i| i + 1);
        &self.mults[..end]
    }

    pub(crate) fn pad_to(&mut self, len: usize) {
        if self.mults.len() < len {
            self.mults.resize(len, BigInt::zero());
        }
    }

    /// Drops trailing zero slots at index `keep` and beyond.
    pub(crate) fn strip_padding(&mut self, keep: usize) {
        while self.mults.len() > keep && self.mults.last().is_some_and(|m| m.is_zero()) {
            self.mults.pop();
        }
    }

    /// Copy of the class with exactly `len` slots if it is at least as long
    /// as the current trimmed length.
    pub fn with_points(&self, len: usize) -> Self {
        let mut out = self.clone();
        out.pad_to(len);
        out.strip_padding(len);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_zero() && self.mults.iter().all(Zero::is_zero)
    }

    /// If the class is an exceptional class `E_i`, returns `i`.
    pub fn exceptional_slot(&self) -> Option<usize> {
        if !self.degree.is_zero() {
            return None;
        }
        let minus_one = BigInt::from(-1);
        let mut found = None;
        for (i, m) in self.mults.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            if *m != minus_one || found.is_some() {
                return None;
            }
            found = Some(i);
        }
        found
    }

    fn check_same_dim(&self, other: &Self) -> Result<(), LatticeError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LatticeError::DimensionMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    /// `D1 . D2 = (n-1) d d' - sum m_i m'_i`.
    pub fn intersect(&self, other: &Self) -> Result<BigInt, LatticeError> {
        self.check_same_dim(other)?;
        let mut value = BigInt::from(self.ambient_dim - 1) * &self.degree * &other.degree;
        for (a, b) in self.mults.iter().zip(&other.mults) {
            value -= a * b;
        }
        Ok(value)
    }

    pub fn self_intersection(&self) -> BigInt {
        let mut value = BigInt::from(self.ambient_dim - 1) * &self.degree * &self.degree;
        for m in &self.mults {
            value -= m * m;
        }
        value
    }

    /// Pairing with `K = K_X / (n-1)`: `D . K = sum m_i - (n+1) d`.
    pub fn k_dot(&self) -> BigInt {
        let sum: BigInt = self.mults.iter().sum();
        sum - BigInt::from(self.ambient_dim + 1) * &self.degree
    }

    /// `D . F` for `F = H - E_1 - ... - E_{n+1}`.
    pub fn dot_f(&self) -> BigInt {
        let head: BigInt = self.mults.iter().take(self.ambient_dim + 1).sum();
        BigInt::from(self.ambient_dim - 1) * &self.degree - head
    }

    /// Reflection `D + (D.R) R` in a root.
    pub fn reflect(&self, root: &RootClass) -> Result<Self, LatticeError> {
        let root = root.class();
        self.check_same_dim(root)?;
        let product = self.intersect(root)?;
        let mut out = self.clone();
        if product.is_zero() {
            return Ok(out);
        }
        out.pad_to(root.mults.len());
        out.degree += &product * &root.degree;
        for (m, rm) in out.mults.iter_mut().zip(&root.mults) {
            *m += &product * rm;
        }
        out.strip_padding(self.mults.len());
        Ok(out)
    }

    /// The Cremona move: reflection in `F`. With `t = D.F`, adds `t` to the
    /// degree and to the first `n+1` multiplicities.
    pub fn cremona(&self) -> Self {
        let t = self.dot_f();
        let mut out = self.clone();
        if t.is_zero() {
            return out;
        }
        let k = self.ambient_dim + 1;
        out.pad_to(k);
        out.degree += &t;
        for m in &mut out.mults[..k] {
            *m += &t;
        }
        out
    }

    /// Swaps slots `slot` and `slot + 1` (reflection in `F_{slot+1}`).
    pub fn transpose(&self, slot: usize) -> Self {
        let mut out = self.clone();
        out.pad_to(slot + 2);
        out.mults.swap(slot, slot + 1);
        out.strip_padding(self.mults.len());
        out
    }

    /// Stable sort of the multiplicities into non-increasing order, together
    /// with a word of adjacent transpositions realizing the permutation.
    pub fn sort_desc(&self) -> (Self, WeylWord) {
        let mut out = self.clone();
        let mut word = WeylWord::new();
        let len = out.mults.len();
        // Bubble sort: only strict inversions are swapped, so ties keep their
        // original order.
        for pass in 0..len {
            let mut swapped = false;
            for i in 0..len.saturating_sub(pass + 1) {
                if out.mults[i] < out.mults[i + 1] {
                    out.mults.swap(i, i + 1);
                    word.push(Move::Transposition(i));
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        (out, word)
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.mults.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn apply_move(&self, mv: &Move) -> Self {
        match mv {
            Move::Transposition(i) => self.transpose(*i),
            Move::Cremona => self.cremona(),
            Move::Clamp { slot, amount } => {
                let mut out = self.clone();
                out.pad_to(slot + 1);
                out.mults[*slot] += amount;
                out
            }
        }
    }

    pub fn apply_word(&self, word: &WeylWord) -> Self {
        word.moves().iter().fold(self.clone(), |d, mv| d.apply_move(mv))
    }

    /// Returns `self - other` (same ambient dimension).
    pub fn sub(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check_same_dim(other)?;
        let mut out = self.clone();
        out.pad_to(other.mults.len());
        out.degree -= &other.degree;
        for (m, o) in out.mults.iter_mut().zip(&other.mults) {
            *m -= o;
        }
        Ok(out)
    }

    pub fn has_negative_mult(&self) -> bool {
        self.mults.iter().any(Signed::is_negative)
    }
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.degree == other.degree && self.trimmed() == other.trimmed()
    }
}

impl Eq for DivisorClass {}

impl Hash for DivisorClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.degree.hash(state);
        self.trimmed().hash(state);
    }
}

impl PartialOrd for DivisorClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DivisorClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient_dim
            .cmp(&other.ambient_dim)
            .then_with(|| self.degree.cmp(&other.degree))
            .then_with(|| self.trimmed().cmp(other.trimmed()))
    }
}

/// Flat form `d m_1 ... m_r`.
impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degree)?;
        for m in &self.mults {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

/// A class of self-intersection `-2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootClass(DivisorClass);

impl RootClass {
    pub fn new(class: DivisorClass) -> Result<Self, LatticeError> {
        let square = class.self_intersection();
        if square != BigInt::from(-2) {
            return Err(LatticeError::NotARoot(square));
        }
        Ok(Self(class))
    }

    /// `F = H - E_1 - ... - E_{n+1}`.
    pub fn cremona_root(ambient_dim: usize) -> Result<Self, LatticeError> {
        let ones = vec![1; ambient_dim + 1];
        Self::new(DivisorClass::from_ints(ambient_dim, 1, &ones)?)
    }

    /// `F_i = E_i - E_{i+1}` with 0-based `slot = i`.
    pub fn transposition_root(ambient_dim: usize, slot: usize) -> Result<Self, LatticeError> {
        let mut mults = vec![0; slot + 2];
        mults[slot] = -1;
        mults[slot + 1] = 1;
        Self::new(DivisorClass::from_ints(ambient_dim, 0, &mults)?)
    }

    pub fn class(&self) -> &DivisorClass {
        &self.0
    }
}

/// One step of a reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Swap of slots `i` and `i + 1` (0-based).
    Transposition(usize),
    /// Reflection in `F`.
    Cremona,
    /// Adds `amount >= 0` to a negative multiplicity. Not a Weyl element:
    /// it records the removal of a fixed exceptional component.
    Clamp { slot: usize, amount: BigInt },
}

impl Move {
    pub fn is_weyl(&self) -> bool {
        !matches!(self, Move::Clamp { .. })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Transposition(i) => write!(f, "s{}", i + 1),
            Move::Cremona => f.write_str("sigma"),
            Move::Clamp { slot, amount } => write!(f, "clamp{}+{}", slot + 1, amount),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeylWord {
    moves: Vec<Move>,
}

impl WeylWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, mv: Move) {
        self.moves.push(mv);
    }

    pub fn extend(&mut self, other: WeylWord) {
        self.moves.extend(other.moves);
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn is_weyl(&self) -> bool {
        self.moves.iter().all(Move::is_weyl)
    }

    /// Length of the longest prefix made only of Weyl moves.
    pub fn weyl_prefix_len(&self) -> usize {
        self.moves.iter().take_while(|m| m.is_weyl()).count()
    }

    /// Every Weyl move is an involution, so the inverse is the reversal.
    pub fn invert(&self) -> Result<Self, LatticeError> {
        if !self.is_weyl() {
            return Err(LatticeError::ClampNotInvertible);
        }
        Ok(Self {
            moves: self.moves.iter().rev().cloned().collect(),
        })
    }
}

impl From<Vec<Move>> for WeylWord {
    fn from(moves: Vec<Move>) -> Self {
        Self { moves }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, mv) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{mv}")?;
        }
        Ok(())
    }
}

/// `K^2 = n + 3 + 4/(n-1) - r`.
pub fn k_self(ambient_dim: usize, points: usize) -> Ratio<i64> {
    let n = ambient_dim as i64;
    Ratio::new((n + 1) * (n + 1), n - 1) - Ratio::from_integer(points as i64)
}

/// Isomorphism type of `(K^perp, .)` when it is negative definite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootLatticeType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    Indefinite,
}

impl fmt::Display for RootLatticeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLatticeType::A(r) => write!(f, "A_{r}"),
            RootLatticeType::D(k) => write!(f, "D_{k}"),
            RootLatticeType::E6 => f.write_str("E_6"),
            RootLatticeType::E7 => f.write_str("E_7"),
            RootLatticeType::E8 => f.write_str("E_8"),
            RootLatticeType::Indefinite => f.write_str("INDEFINITE"),
        }
    }
}

pub fn root_lattice_type(ambient_dim: usize, points: usize) -> RootLatticeType {
    if k_self(ambient_dim, points) <= Ratio::from_integer(0) {
        return RootLatticeType::Indefinite;
    }
    let n = ambient_dim;
    match (n, points) {
        (_, r) if r <= n + 2 => RootLatticeType::A(r),
        (_, r) if r == n + 3 => RootLatticeType::D(n + 3),
        (2, 6) => RootLatticeType::E6,
        (2, 7) | (3, 7) => RootLatticeType::E7,
        (2, 8) | (4, 8) => RootLatticeType::E8,
        // K^2 > 0 forces r <= n + 3 outside the cases above.
        _ => unreachable!("K^2 > 0 with n = {n}, r = {points}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(n: usize, d: i64, m: &[i64]) -> DivisorClass {
        DivisorClass::from_ints(n, d, m).unwrap()
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(class(2, 1, &[1, 1]).intersect(&class(2, 1, &[1, 0])).unwrap(), 0.into());
        let f = class(3, 1, &[1, 1, 1, 1]);
        assert_eq!(f.intersect(&f).unwrap(), (-2).into());
        for n in 2..6 {
            let h = DivisorClass::hyperplane(n, 4).unwrap();
            let e = DivisorClass::exceptional(n, 4, 2).unwrap();
            assert_eq!(h.intersect(&e).unwrap(), 0.into());
        }
    }

    #[test]
    fn intersect_rejects_dimension_mismatch() {
        let err = class(2, 1, &[]).intersect(&class(3, 1, &[])).unwrap_err();
        assert_eq!(err, LatticeError::DimensionMismatch(2, 3));
    }

    #[test]
    fn ambient_dim_below_two_rejected() {
        assert!(DivisorClass::from_ints(1, 1, &[]).is_err());
    }

    #[test]
    fn self_intersection_examples() {
        assert_eq!(
            DivisorClass::exceptional(2, 1, 0).unwrap().self_intersection(),
            (-1).into()
        );
        assert_eq!(class(2, 96, &[34; 8]).self_intersection(), (-32).into());
        assert_eq!(class(2, 0, &[0, 0, 0]).self_intersection(), 0.into());
    }

    #[test]
    fn sign_convention_k_dot_of_exceptional() {
        let e1 = DivisorClass::exceptional(2, 3, 0).unwrap();
        assert_eq!(e1.mults()[0], BigInt::from(-1));
        assert_eq!(e1.k_dot(), (-1).into());
    }

    #[test]
    fn k_dot_examples() {
        for n in 2..7 {
            let f = RootClass::cremona_root(n).unwrap();
            assert_eq!(f.class().k_dot(), 0.into());
            for i in 0..5 {
                let fi = RootClass::transposition_root(n, i).unwrap();
                assert_eq!(fi.class().k_dot(), 0.into());
            }
        }
        assert_eq!(class(2, 3, &[1, 1, 1]).k_dot(), (-6).into());
    }

    #[test]
    fn k_self_examples() {
        assert_eq!(k_self(2, 8), Ratio::from_integer(1));
        assert_eq!(k_self(3, 7), Ratio::from_integer(1));
        assert_eq!(k_self(2, 9), Ratio::from_integer(0));
        assert_eq!(k_self(4, 8), Ratio::new(1, 3));
    }

    #[test]
    fn reflect_examples() {
        let d = class(2, 5, &[4, 1, 3]);
        let f1 = RootClass::transposition_root(2, 0).unwrap();
        assert_eq!(d.reflect(&f1).unwrap(), class(2, 5, &[1, 4, 3]));
        let f = RootClass::cremona_root(2).unwrap();
        assert_eq!(d.reflect(&f).unwrap().reflect(&f).unwrap(), d);
        assert_eq!(class(2, 2, &[2, 2, 0]).reflect(&f).unwrap(), class(2, 0, &[0, 0, -2]));
    }

    #[test]
    fn non_root_rejected() {
        assert_eq!(
            RootClass::new(class(2, 1, &[1])).unwrap_err(),
            LatticeError::NotARoot(0.into())
        );
    }

    #[test]
    fn cremona_examples() {
        assert_eq!(class(3, 4, &[3, 3, 3, 3]).cremona(), class(3, 0, &[-1, -1, -1, -1]));
        assert_eq!(class(2, 1, &[0, 0, 0]).cremona(), class(2, 2, &[1, 1, 1]));
        assert_eq!(class(5, 6, &[5; 6]).cremona(), class(5, 0, &[-1; 6]));
    }

    #[test]
    fn cremona_pads_and_keeps_nonzero_slots() {
        let d = class(2, 1, &[1, 1]);
        let c = d.cremona();
        assert_eq!(c.mults().len(), 3);
        assert_eq!(c, class(2, 0, &[0, 0, -1]));
        // t = 0 leaves the caller's r untouched
        assert_eq!(class(2, 3, &[1]).cremona().mults().len(), 3);
        assert_eq!(class(2, 2, &[1, 1]).cremona().mults().len(), 2);
    }

    #[test]
    fn sort_desc_examples() {
        let (s, w) = class(2, 2, &[0, 2, 1]).sort_desc();
        assert_eq!(s.mults(), class(2, 2, &[2, 1, 0]).mults());
        assert_eq!(class(2, 2, &[0, 2, 1]).apply_word(&w).mults(), s.mults());
        let (_, w) = class(2, 3, &[3, 2, 2]).sort_desc();
        assert!(w.is_empty());
        let (s, _) = class(2, 0, &[-1, 3]).sort_desc();
        assert_eq!(s.mults(), class(2, 0, &[3, -1]).mults());
    }

    #[test]
    fn words_round_trip() {
        let d = class(2, 7, &[1, 5, 2, 2]);
        assert_eq!(d.apply_word(&WeylWord::new()), d);
        let w = WeylWord::from(vec![Move::Cremona, Move::Cremona]);
        assert_eq!(d.apply_word(&w), d);
        let w = WeylWord::from(vec![Move::Transposition(1), Move::Cremona, Move::Transposition(0)]);
        assert_eq!(d.apply_word(&w).apply_word(&w.invert().unwrap()), d);
    }

    #[test]
    fn clamp_words_not_invertible() {
        let w = WeylWord::from(vec![
            Move::Cremona,
            Move::Clamp {
                slot: 0,
                amount: 1.into(),
            },
        ]);
        assert_eq!(w.invert().unwrap_err(), LatticeError::ClampNotInvertible);
        assert_eq!(w.weyl_prefix_len(), 1);
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        assert_eq!(class(2, 1, &[1]), class(2, 1, &[1, 0, 0]));
        assert_ne!(class(2, 1, &[1]), class(3, 1, &[1]));
    }

    #[test]
    fn root_lattice_table() {
        assert_eq!(root_lattice_type(2, 6), RootLatticeType::E6);
        assert_eq!(root_lattice_type(3, 7), RootLatticeType::E7);
        assert_eq!(root_lattice_type(2, 7), RootLatticeType::E7);
        assert_eq!(root_lattice_type(2, 8), RootLatticeType::E8);
        assert_eq!(root_lattice_type(4, 8), RootLatticeType::E8);
        assert_eq!(root_lattice_type(2, 5), RootLatticeType::D(5));
        assert_eq!(root_lattice_type(3, 6), RootLatticeType::D(6));
        assert_eq!(root_lattice_type(2, 1), RootLatticeType::A(1));
        assert_eq!(root_lattice_type(2, 10), RootLatticeType::Indefinite);
        assert_eq!(root_lattice_type(2, 9), RootLatticeType::Indefinite);
    }

    #[test]
    fn indefinite_exactly_when_k_square_nonpositive() {
        for n in 2..30 {
            for r in 1..40 {
                let indefinite = root_lattice_type(n, r) == RootLatticeType::Indefinite;
                assert_eq!(indefinite, k_self(n, r) <= Ratio::from_integer(0), "n={n} r={r}");
            }
        }
    }
}
