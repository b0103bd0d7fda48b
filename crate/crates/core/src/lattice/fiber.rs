//! Enumeration of fibers `{x ∈ Nⁿ : m·x = b}` of nonnegative matrices.

use std::collections::HashSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::{IntMatrix, IntVector};

#[derive(Debug, Clone)]
pub struct Fiber {
    pub matrix: IntMatrix,
    pub rhs: IntVector,
    /// Sorted, duplicate-free.
    pub points: Vec<IntVector>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub(crate) fn check_fiber_matrix(m: &IntMatrix) -> Result<()> {
    if !m.is_nonnegative() {
        return Err(Error::Precondition("fiber matrix has a negative entry".into()));
    }
    if m.has_zero_column() {
        return Err(Error::Precondition("fiber matrix has a zero column (fiber may be infinite)".into()));
    }
    Ok(())
}

/// Per-row index of the last allowed column with a positive entry.
fn last_positive(m: &IntMatrix, allowed: Option<&[bool]>) -> Vec<Option<usize>> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .rev()
                .find(|&c| allowed.is_none_or(|a| a[c]) && m.get(r, c).is_positive())
        })
        .collect()
}

struct Enumerator<'a> {
    m: &'a IntMatrix,
    allowed: Option<&'a [bool]>,
    closes: Vec<Vec<usize>>,
    caps: &'a Caps,
    current: Vec<Int>,
    residual: Vec<Int>,
    out: Vec<IntVector>,
}

impl Enumerator<'_> {
    fn upper_bound(&self, c: usize) -> Int {
        let mut ub: Option<Int> = None;
        for r in 0..self.m.rows() {
            let a = self.m.get(r, c);
            if a.is_positive() {
                let q = self.residual[r].div_floor(a);
                if ub.as_ref().is_none_or(|u| q < *u) {
                    ub = Some(q);
                }
            }
        }
        ub.expect("no zero columns")
    }

    fn apply(&mut self, c: usize, k: &Int, sign: i8) {
        for r in 0..self.m.rows() {
            let a = self.m.get(r, c);
            if !a.is_zero() {
                let d = a * k;
                if sign > 0 {
                    self.residual[r] -= &d;
                } else {
                    self.residual[r] += &d;
                }
            }
        }
    }

    fn dfs(&mut self, c: usize) -> Result<()> {
        if c == self.m.cols() {
            if self.residual.iter().all(Int::is_zero) {
                self.out.push(IntVector::new(self.current.clone()));
                self.caps.check_fiber(self.out.len())?;
            }
            return Ok(());
        }
        if self.out.len() % 4096 == 0 {
            self.caps.check_time()?;
        }
        if self.allowed.is_some_and(|a| !a[c]) {
            if self.closes[c].iter().all(|&r| self.residual[r].is_zero()) {
                self.dfs(c + 1)?;
            }
            return Ok(());
        }
        let ub = self.upper_bound(c);
        if ub.is_negative() {
            return Ok(());
        }
        let mut k = Int::zero();
        while k <= ub {
            self.apply(c, &k, 1);
            if self.closes[c].iter().all(|&r| self.residual[r].is_zero()) {
                self.current[c] = k.clone();
                self.dfs(c + 1)?;
            }
            self.apply(c, &k, -1);
            k += &Int::one();
        }
        self.current[c] = Int::zero();
        Ok(())
    }
}

/// All nonnegative solutions of `m·x = b`, optionally restricted to the
/// columns marked in `allowed` (other coordinates fixed at zero).
pub fn fiber_enumerate_masked(
    m: &IntMatrix,
    b: &IntVector,
    allowed: Option<&[bool]>,
    caps: &Caps,
) -> Result<Fiber> {
    check_fiber_matrix(m)?;
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let mut points = Vec::new();
    let last = last_positive(m, allowed);
    let feasible_rows = last
        .iter()
        .zip(b.iter())
        .all(|(l, x)| !x.is_negative() && (l.is_some() || x.is_zero()));
    if feasible_rows && m.cols() > 0 {
        let mut closes = vec![Vec::new(); m.cols()];
        for (r, l) in last.iter().enumerate() {
            if let Some(c) = l {
                closes[*c].push(r);
            }
        }
        let mut e = Enumerator {
            m,
            allowed,
            closes,
            caps,
            current: vec![Int::zero(); m.cols()],
            residual: b.entries().to_vec(),
            out: Vec::new(),
        };
        e.dfs(0)?;
        points = e.out;
    } else if feasible_rows && b.is_zero() {
        points.push(IntVector::zeros(0));
    }
    points.sort();
    points.dedup();
    Ok(Fiber { matrix: m.clone(), rhs: b.clone(), points })
}

pub fn fiber_enumerate(m: &IntMatrix, b: &IntVector, caps: &Caps) -> Result<Fiber> {
    fiber_enumerate_masked(m, b, None, caps)
}

/// Nonemptiness test for fibers of one fixed matrix, memoizing the
/// `(column, residual)` states already shown to be dead ends.
pub struct FeasibilityOracle<'a> {
    m: &'a IntMatrix,
    closes: Vec<Vec<usize>>,
    dead: HashSet<(usize, Vec<Int>)>,
}

impl<'a> FeasibilityOracle<'a> {
    pub fn new(m: &'a IntMatrix) -> Result<Self> {
        check_fiber_matrix(m)?;
        let last = last_positive(m, None);
        let mut closes = vec![Vec::new(); m.cols()];
        for (r, l) in last.iter().enumerate() {
            if let Some(c) = l {
                closes[*c].push(r);
            }
        }
        Ok(FeasibilityOracle { m, closes, dead: HashSet::new() })
    }

    pub fn is_feasible(&mut self, b: &IntVector) -> bool {
        if b.iter().any(Int::is_negative) {
            return false;
        }
        if self.m.cols() == 0 {
            return b.is_zero();
        }
        // rows with no positive entry at all must be zero
        for r in 0..self.m.rows() {
            if (0..self.m.cols()).all(|c| self.m.get(r, c).is_zero()) && !b[r].is_zero() {
                return false;
            }
        }
        let mut residual = b.entries().to_vec();
        self.search(0, &mut residual)
    }

    fn search(&mut self, c: usize, residual: &mut Vec<Int>) -> bool {
        if c == self.m.cols() {
            return residual.iter().all(Int::is_zero);
        }
        if self.dead.contains(&(c, residual.clone())) {
            return false;
        }
        let mut ub: Option<Int> = None;
        for r in 0..self.m.rows() {
            let a = self.m.get(r, c);
            if a.is_positive() {
                let q = residual[r].div_floor(a);
                if ub.as_ref().is_none_or(|u| q < *u) {
                    ub = Some(q);
                }
            }
        }
        let ub = ub.expect("no zero columns");
        // Larger values first: they clear residual faster.
        let mut k = ub;
        while !k.is_negative() {
            for r in 0..self.m.rows() {
                let a = self.m.get(r, c);
                if !a.is_zero() {
                    residual[r] -= &(a * &k);
                }
            }
            let ok = self.closes[c].iter().all(|&r| residual[r].is_zero()) && self.search(c + 1, residual);
            for r in 0..self.m.rows() {
                let a = self.m.get(r, c);
                if !a.is_zero() {
                    residual[r] += &(a * &k);
                }
            }
            if ok {
                return true;
            }
            k -= &Int::one();
        }
        self.dead.insert((c, residual.clone()));
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    #[test]
    fn single_row() {
        let m = IntMatrix::from_i64_rows(&[&[1, 1]]);
        let f = fiber_enumerate(&m, &v(&[2]), &Caps::default()).unwrap();
        assert_eq!(f.points, vec![v(&[0, 2]), v(&[1, 1]), v(&[2, 0])]);
    }

    #[test]
    fn two_by_two_swap_fiber() {
        // rows: r1, r2, c1, c2 of a 2x2 table, cells (11,12,21,22)
        let m = IntMatrix::from_i64_rows(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let b = m.mul_vec(&v(&[1, 0, 0, 1])).unwrap();
        let f = fiber_enumerate(&m, &b, &Caps::default()).unwrap();
        assert_eq!(f.points, vec![v(&[0, 1, 1, 0]), v(&[1, 0, 0, 1])]);
    }

    #[test]
    fn zero_column_rejected() {
        let m = IntMatrix::from_i64_rows(&[&[1, 0]]);
        assert!(matches!(fiber_enumerate(&m, &v(&[1]), &Caps::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn cap_is_reported() {
        let m = IntMatrix::from_i64_rows(&[&[1, 1, 1]]);
        let caps = Caps::default().with_fiber_points(3);
        let err = fiber_enumerate(&m, &v(&[5]), &caps).unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn masked_enumeration() {
        let m = IntMatrix::from_i64_rows(&[&[1, 1, 1]]);
        let f = fiber_enumerate_masked(&m, &v(&[1]), Some(&[true, false, true]), &Caps::default()).unwrap();
        assert_eq!(f.points, vec![v(&[0, 0, 1]), v(&[1, 0, 0])]);
    }

    #[test]
    fn oracle_matches_enumeration() {
        let m = IntMatrix::from_i64_rows(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let mut o = FeasibilityOracle::new(&m).unwrap();
        for b in [v(&[1, 1, 1, 1]), v(&[2, 0, 1, 1]), v(&[1, 0, 0, 0]), v(&[2, 1, 0, 3])] {
            let f = fiber_enumerate(&m, &b, &Caps::default()).unwrap();
            assert_eq!(o.is_feasible(&b), !f.is_empty(), "{b:?}");
        }
    }
}
