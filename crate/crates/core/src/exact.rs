//! Exact rational arithmetic and small dense linear algebra.
//!
//! Everything downstream (root systems, chamber reduction, genera) is decided
//! by signs and equalities of inner products, so there is no floating point
//! anywhere in this crate.  `Rat` wraps an arbitrary-precision reduced
//! fraction; vectors are coordinate tuples in the simple-root basis and all
//! pairings go through a Gram matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Reduced fraction with arbitrary-precision numerator and positive
/// denominator.  The invariants (gcd = 1, den > 0) are maintained by
/// `BigRational` on every operation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Result<Rat, ExactError> {
        if den == 0 {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Numerator as `i64` when the value is a small integer.  Handy where the
    /// theory guarantees integrality (Cartan pairings, root coordinates).
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if !self.0.is_integer() {
            return None;
        }
        self.0.numer().to_i64()
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rat, ExactError> {
        Rat::one().checked_div(self)
    }

    /// Sign as -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    /// Parses `"p"` or `"p/q"` with optional sign on p.
    fn from_str(s: &str) -> Result<Rat, ExactError> {
        let s = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Rat(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(ExactError::ZeroDenominator);
                }
                Ok(Rat(BigRational::new(p, q)))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat { Rat(self.0 $op rhs.0) }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat { Rat(&self.0 $op &rhs.0) }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "Rat division by zero");
        Rat(self.0 / rhs.0)
    }
}
impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "Rat division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}
impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}
impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}
impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

/// Vector in Π-coordinates: entry i is the coefficient of the i-th simple
/// root.  Length always equals the rank of the ambient root system.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VecPi(pub Vec<Rat>);

impl VecPi {
    pub fn zero(rank: usize) -> VecPi {
        VecPi(vec![Rat::zero(); rank])
    }

    /// i-th standard basis vector, i.e. the simple root α_i in Π-coordinates.
    pub fn basis(rank: usize, i: usize) -> VecPi {
        let mut v = VecPi::zero(rank);
        v.0[i] = Rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn add(&self, rhs: &VecPi) -> VecPi {
        assert_eq!(self.dim(), rhs.dim());
        VecPi(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, rhs: &VecPi) -> VecPi {
        assert_eq!(self.dim(), rhs.dim());
        VecPi(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> VecPi {
        VecPi(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rat) -> VecPi {
        VecPi(self.0.iter().map(|a| a * c).collect())
    }

    /// Sign of the first nonzero coordinate (0 for the zero vector).  This is
    /// the comparator underlying the total order on V used for lexicographic
    /// maxima: u ≤ v iff v - u is zero or has positive leading sign.
    pub fn leading_sign(&self) -> i32 {
        for a in &self.0 {
            let s = a.signum();
            if s != 0 {
                return s;
            }
        }
        0
    }

    /// Total order on V: compares by the sign of the leading coordinate of
    /// the difference.  Refines the dominance order used for positivity.
    pub fn total_cmp(&self, other: &VecPi) -> Ordering {
        match other.sub(self).leading_sign() {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Display for VecPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatRat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl MatRat {
    pub fn zero(rows: usize, cols: usize) -> MatRat {
        MatRat { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> MatRat {
        let mut m = MatRat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> MatRat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        MatRat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    /// Integer shorthand used all over the tests and the builtin Cartan data.
    pub fn from_i64(rows: &[&[i64]]) -> MatRat {
        MatRat::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect(),
        )
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> MatRat {
        let mut t = MatRat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &VecPi) -> VecPi {
        assert_eq!(self.cols, v.dim(), "matrix/vector dimension mismatch");
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Rat::zero();
            for j in 0..self.cols {
                if !v.0[j].is_zero() {
                    acc += &(self.at(i, j) * &v.0[j]);
                }
            }
            out.push(acc);
        }
        VecPi(out)
    }

    pub fn mul_mat(&self, rhs: &MatRat) -> MatRat {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let mut out = MatRat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.at(k, j);
                    *out.at_mut(i, j) += &add;
                }
            }
        }
        out
    }

    /// Simultaneous row/column permutation: entry (i, j) of the result is the
    /// entry (perm[i], perm[j]) of self.  So if `perm[new] = old`, the result
    /// is the matrix relabelled along `old -> new`.
    pub fn permuted_symmetric(&self, perm: &[usize]) -> MatRat {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = MatRat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(perm[i], perm[j]).clone();
            }
        }
        out
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { return Rat::zero() };
            if p != col {
                for j in 0..n {
                    let a = m.at(p, j).clone();
                    let b = m.at(col, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(col, j) = a;
                }
                det = -det;
            }
            let pv = m.at(col, col).clone();
            det = &det * &pv;
            for r in col + 1..n {
                let factor = m.at(r, col) / &pv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = &factor * m.at(col, j);
                    *m.at_mut(r, j) -= &sub;
                }
            }
        }
        det
    }

    /// Row-major flat view, mostly for serialization.
    pub fn row_major(&self) -> &[Rat] {
        &self.entries
    }
}

/// Solves A·x = b exactly by Gaussian elimination.
///
/// Returns `Ok(None)` when A is singular (no pivot in some column), `Err` on
/// shape mismatch.  A must be square here — that is all the callers need.
pub fn solve_linear(a: &MatRat, b: &[Rat]) -> Result<Option<Vec<Rat>>, ExactError> {
    if !a.is_square() {
        return Err(ExactError::DimMismatch(format!("{}x{} is not square", a.rows, a.cols)));
    }
    if a.rows != b.len() {
        return Err(ExactError::DimMismatch(format!(
            "matrix is {}x{} but rhs has length {}",
            a.rows, a.cols, b.len()
        )));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    // Forward elimination with the first nonzero entry as pivot.
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
            return Ok(None);
        };
        if p != col {
            for j in 0..n {
                let a1 = m.at(p, j).clone();
                let b1 = m.at(col, j).clone();
                *m.at_mut(p, j) = b1;
                *m.at_mut(col, j) = a1;
            }
            rhs.swap(p, col);
        }
        let pv = m.at(col, col).clone();
        for r in col + 1..n {
            let factor = m.at(r, col) / &pv;
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let sub = &factor * m.at(col, j);
                *m.at_mut(r, j) -= &sub;
            }
            let sub = &factor * &rhs[col];
            rhs[r] -= &sub;
        }
    }
    // Back substitution.
    let mut x = vec![Rat::zero(); n];
    for col in (0..n).rev() {
        let mut acc = rhs[col].clone();
        for j in col + 1..n {
            let sub = m.at(col, j) * &x[j];
            acc -= &sub;
        }
        x[col] = &acc / m.at(col, col);
    }
    Ok(Some(x))
}

/// Inertia (p, n, z) of a symmetric rational matrix: counts of positive,
/// negative and zero eigenvalues, computed by exact symmetric reduction.
/// Used to separate finite (positive definite) from affine (psd, corank 1)
/// generalized Cartan matrices.
pub fn symmetric_inertia(a: &MatRat) -> (usize, usize, usize) {
    assert!(a.is_square());
    assert_eq!(a, &a.transpose(), "symmetric_inertia needs a symmetric matrix");
    let n = a.rows;
    let mut m = a.clone();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&last) = active.last() {
        let _ = last;
        // Pick an active index with nonzero diagonal if possible.
        if let Some(pi) = active.iter().position(|&i| !m.at(i, i).is_zero()) {
            let p = active.remove(pi);
            let pv = m.at(p, p).clone();
            if pv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &r in &active {
                let factor = m.at(r, p) / &pv;
                if factor.is_zero() {
                    continue;
                }
                for &c in &active {
                    let sub = &factor * m.at(p, c);
                    *m.at_mut(r, c) -= &sub;
                }
                *m.at_mut(r, p) = Rat::zero();
            }
            for &c in &active {
                *m.at_mut(p, c) = Rat::zero();
            }
        } else if let Some((ri, ci)) = {
            let mut found = None;
            'search: for (ii, &i) in active.iter().enumerate() {
                for (jj, &j) in active.iter().enumerate() {
                    if ii < jj && !m.at(i, j).is_zero() {
                        found = Some((i, j));
                        break 'search;
                    }
                }
            }
            found
        } {
            // Hyperbolic pair: zero diagonal block with a nonzero coupling
            // contributes one positive and one negative eigenvalue.
            let (i, j) = (ri, ci);
            // Replace row/col i by i+j, making the diagonal nonzero, then recurse
            // via the normal path: add row j to row i and col j to col i.
            for c in 0..n {
                let add = m.at(j, c).clone();
                *m.at_mut(i, c) += &add;
            }
            for r in 0..n {
                let add = m.at(r, j).clone();
                *m.at_mut(r, i) += &add;
            }
            // Diagonal entry at i is now 2*m[i][j] ≠ 0; loop continues.
            continue;
        } else {
            // All remaining entries vanish.
            zero += active.len();
            break;
        }
    }
    (pos, neg, zero)
}
