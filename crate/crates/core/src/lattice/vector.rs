use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::Int;

/// Fixed-length vector of exact integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct IntVector(Vec<Int>);

impl IntVector {
    pub fn new(entries: Vec<Int>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        IntVector(vec![Int::zero(); n])
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        IntVector(v.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Int::one();
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    #[inline]
    pub fn entries_mut(&mut self) -> &mut [Int] {
        &mut self.0
    }

    pub fn into_entries(self) -> Vec<Int> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Int> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Int::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn norm1(&self) -> Int {
        self.0.iter().map(Int::abs).sum()
    }

    pub fn norm_inf(&self) -> Int {
        self.0.iter().map(Int::abs).max().unwrap_or_default()
    }

    /// Componentwise maximum with zero.
    pub fn pos_part(&self) -> IntVector {
        IntVector(
            self.0.iter().map(|x| if x.is_positive() { x.clone() } else { Int::zero() }).collect(),
        )
    }

    /// Componentwise maximum of the negation with zero, so `v = v⁺ - v⁻`.
    pub fn neg_part(&self) -> IntVector {
        IntVector(self.0.iter().map(|x| if x.is_negative() { -x } else { Int::zero() }).collect())
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }

    pub fn supports_intersect(&self, other: &IntVector) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| !a.is_zero() && !b.is_zero())
    }

    /// Conformal order: `self ⊑ other` when every nonzero entry of `self`
    /// has the sign of the matching entry of `other` and no larger magnitude.
    pub fn conformally_le(&self, other: &IntVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| {
            a.is_zero() || (a.signum() == b.signum() && a.cmp_abs(b) != std::cmp::Ordering::Greater)
        })
    }

    /// No coordinate where the two vectors have strictly opposite signs.
    pub fn sign_compatible(&self, other: &IntVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.signum() * b.signum() >= 0)
    }

    /// Chooses the representative of `±self` whose first nonzero entry is positive.
    pub fn sign_canonical(&self) -> IntVector {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn is_sign_canonical(&self) -> bool {
        !matches!(self.0.iter().find(|x| !x.is_zero()), Some(x) if x.is_negative())
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, k: &Int) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn concat(parts: &[&IntVector]) -> IntVector {
        IntVector(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(Int::to_i64).collect()
    }
}

impl Index<usize> for IntVector {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl From<Vec<Int>> for IntVector {
    fn from(v: Vec<Int>) -> Self {
        IntVector(v)
    }
}

impl FromIterator<Int> for IntVector {
    fn from_iter<T: IntoIterator<Item = Int>>(iter: T) -> Self {
        IntVector(iter.into_iter().collect())
    }
}

impl<'a> Add<&'a IntVector> for &'a IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a IntVector> for &'a IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A vector of length `r·n` viewed as `r` slices of width `n`, slice-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SlicedVector {
    base: IntVector,
    r: usize,
    n: usize,
}

impl SlicedVector {
    pub fn new(base: IntVector, r: usize, n: usize) -> Result<Self> {
        if r.checked_mul(n) != Some(base.len()) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} cannot be viewed as {r} slices of width {n}",
                base.len()
            )));
        }
        Ok(SlicedVector { base, r, n })
    }

    pub fn from_slices(slices: &[IntVector]) -> Result<Self> {
        let n = slices.first().map_or(0, IntVector::len);
        if slices.iter().any(|s| s.len() != n) {
            return Err(Error::DimensionMismatch("slices of unequal width".into()));
        }
        let base = IntVector::concat(&slices.iter().collect::<Vec<_>>());
        Ok(SlicedVector { base, r: slices.len(), n })
    }

    pub fn slice_count(&self) -> usize {
        self.r
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &IntVector {
        &self.base
    }

    pub fn into_base(self) -> IntVector {
        self.base
    }

    /// Zero-based slice accessor.
    pub fn slice(&self, i: usize) -> &[Int] {
        &self.base.entries()[i * self.n..(i + 1) * self.n]
    }

    pub fn slices(&self) -> Vec<IntVector> {
        (0..self.r).map(|i| IntVector::new(self.slice(i).to_vec())).collect()
    }

    /// Number of nonzero slices.
    pub fn type_of(&self) -> usize {
        (0..self.r).filter(|&i| self.slice(i).iter().any(|x| !x.is_zero())).count()
    }

    pub fn permute_slices(&self, perm: &[usize]) -> SlicedVector {
        let slices = self.slices();
        let permuted: Vec<IntVector> = perm.iter().map(|&i| slices[i].clone()).collect();
        SlicedVector::from_slices(&permuted).expect("same width")
    }

    /// Sum of all slices.
    pub fn slice_sum(&self) -> IntVector {
        let mut acc = IntVector::zeros(self.n);
        for i in 0..self.r {
            for (a, x) in acc.entries_mut().iter_mut().zip(self.slice(i)) {
                *a += x;
            }
        }
        acc
    }
}

/// Type of a flat vector viewed with `r` slices.
pub fn type_of(v: &IntVector, r: usize, n: usize) -> Result<usize> {
    Ok(SlicedVector::new(v.clone(), r, n)?.type_of())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    #[test]
    fn conformal_order() {
        assert!(v(&[1, 0, -1]).conformally_le(&v(&[2, 1, -1])));
        assert!(!v(&[1, 0, -2]).conformally_le(&v(&[2, 1, -1])));
        assert!(!v(&[-1, 0, 0]).conformally_le(&v(&[2, 1, -1])));
        assert!(v(&[0, 0, 0]).conformally_le(&v(&[2, 1, -1])));
    }

    #[test]
    fn sign_canonical_makes_first_nonzero_positive() {
        assert_eq!(v(&[0, -1, 2]).sign_canonical(), v(&[0, 1, -2]));
        assert_eq!(v(&[0, 1, -2]).sign_canonical(), v(&[0, 1, -2]));
        assert_eq!(v(&[0, 0]).sign_canonical(), v(&[0, 0]));
    }

    #[test]
    fn parts() {
        let u = v(&[2, -3, 0, 1]);
        assert_eq!(u.pos_part(), v(&[2, 0, 0, 1]));
        assert_eq!(u.neg_part(), v(&[0, 3, 0, 0]));
        assert_eq!(&u.pos_part() - &u.neg_part(), u);
        assert_eq!(u.norm1(), Int::from(6));
    }

    #[test]
    fn type_counts_nonzero_slices() {
        let g = v(&[1, -1, -1, 1]);
        let stacked = IntVector::concat(&[&g, &-&g, &IntVector::zeros(4)]);
        assert_eq!(type_of(&stacked, 3, 4).unwrap(), 2);
        assert_eq!(type_of(&IntVector::zeros(6), 2, 3).unwrap(), 0);
        assert!(type_of(&IntVector::zeros(7), 2, 3).is_err());
    }

    #[test]
    fn type_invariant_under_slice_permutation() {
        let s = SlicedVector::new(v(&[1, 0, 0, 0, 0, -1]), 3, 2).unwrap();
        assert_eq!(s.permute_slices(&[2, 0, 1]).type_of(), s.type_of());
    }
}
