//! Exact linear algebra over the rationals.
//!
//! Scalars are [`Rat`] (arbitrary precision, always reduced). The elimination
//! engine works on integer rows: every rational row is scaled to a primitive
//! integer row (gcd of entries 1) and eliminated fraction-free, dividing out
//! the row content after each step. Pivots are chosen as the first nonzero
//! entry in column order, so echelon forms and kernel bases are reproducible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Row vector of rationals.
pub type QVec = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<QVec>) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r);
        }
        QMatrix {
            rows: nrows,
            cols,
            entries,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> QVec {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> QVec {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn int_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| to_primitive(self.row(r))).collect()
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Scales a rational vector to a primitive integer vector with the same span.
pub fn to_primitive(v: &[Rat]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        if !x.is_zero() && !x.denom().is_one() {
            l = l.lcm(x.denom());
        }
    }
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&l / x.denom())
            }
        })
        .collect();
    make_primitive(&mut out);
    out
}

/// Divides out the content; makes the leading nonzero entry positive.
pub fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if lead_neg {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// `v <- a*v - b*row`, followed by content removal. `a` is the pivot entry of
/// `row`, `b` the entry of `v` in the pivot column.
fn eliminate(v: &mut [BigInt], row: &[BigInt], pivot: usize) {
    let b = v[pivot].clone();
    if b.is_zero() {
        return;
    }
    let a = row[pivot].clone();
    let g = a.gcd(&b);
    let (a, b) = (a / &g, b / &g);
    let a_one = a.is_one();
    for (x, r) in v.iter_mut().zip(row) {
        if r.is_zero() {
            if !a_one && !x.is_zero() {
                *x *= &a;
            }
        } else if x.is_zero() {
            *x = -(&b * r);
        } else {
            if !a_one {
                *x *= &a;
            }
            *x -= &b * r;
        }
    }
    v[pivot] = BigInt::zero();
    make_primitive(v);
}

/// Incrementally built row-echelon basis of a subspace of `Q^ncols`.
///
/// Rows are primitive integer vectors sorted by pivot column; every row is
/// zero left of its pivot and its pivot entry is positive.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn int_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &mut [BigInt]) {
        debug_assert_eq!(v.len(), self.ncols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                eliminate(v, row, p);
            }
        }
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        leading(&w).is_none()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.contains_int(&to_primitive(v))
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert_int(&mut self, mut v: Vec<BigInt>) -> bool {
        self.reduce(&mut v);
        match leading(&v) {
            None => false,
            Some(p) => {
                make_primitive(&mut v);
                let pos = self.pivots.partition_point(|&q| q < p);
                self.pivots.insert(pos, p);
                self.rows.insert(pos, v);
                true
            }
        }
    }

    pub fn insert(&mut self, v: &[Rat]) -> bool {
        self.insert_int(to_primitive(v))
    }

    /// Fully reduced echelon form as primitive integer rows: each row is zero
    /// at every other row's pivot column.
    pub fn reduced_int(&self) -> Vec<Vec<BigInt>> {
        let mut rows = self.rows.clone();
        for i in (0..rows.len()).rev() {
            let p = self.pivots[i];
            let (upper, lower) = rows.split_at_mut(i);
            let pivot_row = &lower[0];
            for r in upper.iter_mut() {
                if !r[p].is_zero() {
                    eliminate(r, pivot_row, p);
                }
            }
        }
        rows
    }

    /// Reduced row echelon form over the rationals (pivot entries 1).
    pub fn rref(&self) -> Vec<QVec> {
        self.reduced_int()
            .into_iter()
            .zip(&self.pivots)
            .map(|(row, &p)| {
                let lead = row[p].clone();
                row.into_iter()
                    .map(|x| Rat::new(x, lead.clone()))
                    .collect()
            })
            .collect()
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &QMatrix) -> usize {
    let mut e = Echelon::new(m.cols());
    for row in m.int_rows() {
        e.insert_int(row);
        if e.rank() == m.cols() {
            break;
        }
    }
    e.rank()
}

/// Rank of a list of rational vectors of common length `ncols`.
pub fn rank_of(ncols: usize, vectors: &[QVec]) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of the right kernel `{v : m v = 0}`, read off the reduced echelon
/// form: one vector per free column, with a 1 in that column.
pub fn kernel_basis(m: &QMatrix) -> Vec<QVec> {
    let mut e = Echelon::new(m.cols());
    for row in m.int_rows() {
        e.insert_int(row);
    }
    kernel_from_echelon(&e)
}

/// Kernel basis of the matrix whose row space is held by `e`.
pub fn kernel_from_echelon(e: &Echelon) -> Vec<QVec> {
    let n = e.ncols();
    let rref = e.rref();
    let pivots = e.pivots();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rat::zero(); n];
            v[free] = Rat::one();
            for (row, &p) in rref.iter().zip(pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            v
        })
        .collect()
}

/// Dimension of span(ambient) / span(sub); every `sub` vector must lie in the
/// span of `ambient`.
pub fn quotient_dim(ambient: &[QVec], sub: &[QVec]) -> Result<usize, Error> {
    let ncols = ambient
        .first()
        .or(sub.first())
        .map_or(0, |v| v.len());
    let mut amb = Echelon::new(ncols);
    for v in ambient {
        amb.insert(v);
    }
    let mut s = Echelon::new(ncols);
    for (i, v) in sub.iter().enumerate() {
        if !amb.contains(v) {
            return Err(Error::SubspaceNotContained { index: i });
        }
        s.insert(v);
    }
    Ok(amb.rank() - s.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_rank(m: &QMatrix) -> usize {
        // plain Gaussian elimination on rationals
        let mut a: Vec<QVec> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != rank && !row[c].is_zero() {
                    let f = &row[c] / &pivot[c];
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x -= &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&QMatrix::identity(3)), 3);
        assert_eq!(rank(&QMatrix::zeros(2, 2)), 0);
        let m = QMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[3, 6]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&QMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&QMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&QMatrix::identity(4)).is_empty());
        let k = kernel_basis(&QMatrix::from_i64_rows(&[&[1, -1]]));
        assert_eq!(k, vec![vec![rat(1), rat(1)]]);
        // (a,b,c) -> a*y + b*x + c*0 on degree-0 coefficients, f = xy
        let m = QMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(kernel_basis(&m), vec![vec![rat(0), rat(0), rat(1)]]);
    }

    #[test]
    fn kernel_is_deterministic_and_annihilated() {
        let m = QMatrix::from_i64_rows(&[&[2, 4, 1, 0, 3], &[1, 2, 0, 1, -1], &[3, 6, 1, 1, 2]]);
        let k1 = kernel_basis(&m);
        let k2 = kernel_basis(&m.clone());
        assert_eq!(k1, k2);
        assert_eq!(k1.len(), m.cols() - rank(&m));
        for v in &k1 {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn quotient_dim_examples() {
        let e1 = vec![rat(1), rat(0)];
        let e2 = vec![rat(0), rat(1)];
        assert_eq!(quotient_dim(&[e1.clone(), e2.clone()], std::slice::from_ref(&e1)).unwrap(), 1);
        assert_eq!(quotient_dim(&[e1.clone(), e2.clone()], &[e1.clone(), e2.clone()]).unwrap(), 0);
        let amb: Vec<QVec> = (0..3)
            .map(|i| (0..3).map(|j| rat((i == j) as i64)).collect())
            .collect();
        let sub = vec![vec![rat(1), rat(1), rat(0)], vec![rat(1), rat(-1), rat(0)]];
        assert_eq!(quotient_dim(&amb, &sub).unwrap(), 1);
        let err = quotient_dim(std::slice::from_ref(&e1), std::slice::from_ref(&e2));
        assert!(matches!(err, Err(Error::SubspaceNotContained { index: 0 })));
    }

    #[test]
    fn rref_is_reduced() {
        let mut e = Echelon::new(4);
        e.insert(&[rat(2), rat(4), rat(6), rat(1)]);
        e.insert(&[rat(1), rat(3), rat(0), rat(0)]);
        let r = e.rref();
        assert_eq!(e.pivots(), &[0, 1]);
        assert_eq!(r[0][0], rat(1));
        assert_eq!(r[0][1], rat(0));
        assert_eq!(r[1][1], rat(1));
        assert_eq!(r[1][0], rat(0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix(max: usize) -> impl Strategy<Value = QMatrix> {
            (1..=max, 1..=max).prop_flat_map(|(r, c)| {
                prop::collection::vec(-9i64..=9, r * c).prop_map(move |vals| {
                    QMatrix::from_rows(
                        c,
                        vals.chunks(c).map(|ch| ch.iter().map(|&v| rat(v)).collect()).collect(),
                    )
                })
            })
        }

        proptest! {
            #[test]
            fn rank_nullity(m in small_matrix(7)) {
                prop_assert_eq!(rank(&m) + kernel_basis(&m).len(), m.cols());
            }

            #[test]
            fn rank_of_transpose(m in small_matrix(7)) {
                prop_assert_eq!(rank(&m), rank(&m.transpose()));
            }

            #[test]
            fn fraction_free_agrees_with_naive(vals in prop::collection::vec(-9i64..=9, 100)) {
                let m = QMatrix::from_rows(10, vals.chunks(10).map(|ch| ch.iter().map(|&v| rat(v)).collect()).collect());
                prop_assert_eq!(rank(&m), naive_rank(&m));
            }

            #[test]
            fn low_rank_products(a in prop::collection::vec(-5i64..=5, 30), b in prop::collection::vec(-5i64..=5, 30)) {
                // 10x3 times 3x10 has rank <= 3
                let left = QMatrix::from_rows(3, a.chunks(3).map(|ch| ch.iter().map(|&v| rat(v)).collect()).collect());
                let right = QMatrix::from_rows(10, b.chunks(10).map(|ch| ch.iter().map(|&v| rat(v)).collect()).collect());
                let p = left.mul(&right);
                prop_assert!(rank(&p) <= 3);
                prop_assert_eq!(rank(&p), naive_rank(&p));
            }
        }
    }
}
