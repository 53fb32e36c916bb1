//! Small dense integer and rational matrices, Smith normal form and lattice helpers.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Q = Ratio<i64>;

/// Dense row-major integer matrix. Ordering is lexicographic on the entries,
/// which is what class representatives use for tie-breaking.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IMat { rows: r, cols: c, data: rows.concat() }
    }

    /// Matrix whose columns are the given vectors (all of length `n`).
    pub fn from_cols(n: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), n);
            for i in 0..n {
                m.set(i, j, v[i]);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).take(self.rows).collect()
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_cols(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn mul_qvec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| (0..self.cols).fold(Q::zero(), |acc, j| acc + v[j] * self.get(i, j))).collect()
    }

    pub fn sub(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as i64))
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Determinant by fraction-free Gaussian elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = self.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflow")
    }

    pub fn to_q(&self) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| Q::from_integer(x)).collect() }
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<IMat> {
        let inv = self.to_q().inverse()?;
        inv.to_integer()
    }

    /// Characteristic polynomial det(xI - M), coefficients from constant term upward.
    pub fn char_poly(&self) -> Vec<i64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // Faddeev-LeVerrier over the rationals.
        let a = self.to_q();
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut m = QMat::zeros(n, n);
        for k in 1..=n {
            let mut next = a.mul(&m);
            for i in 0..n {
                let v = next.get(i, i) + coeffs[n - k + 1];
                next.set(i, i, v);
            }
            m = next;
            let am = a.mul(&m);
            let tr = (0..n).fold(Q::zero(), |acc, i| acc + am.get(i, i));
            coeffs[n - k] = -tr / Q::from_integer(k as i64);
        }
        coeffs.into_iter().map(|c| c.to_integer()).collect()
    }
}

/// Dense rational matrix, used for exact linear solves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        (0..self.rows).map(|i| (0..self.cols).fold(Q::zero(), |acc, j| acc + self.get(i, j) * v[j])).collect()
    }

    pub fn to_integer(&self) -> Option<IMat> {
        let mut out = IMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_integer() {
                    return None;
                }
                out.set(i, j, v.to_integer());
            }
        }
        Some(out)
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let piv = a.get(c, c);
            for j in 0..n {
                a.set(c, j, a.get(c, j) / piv);
                inv.set(c, j, inv.get(c, j) / piv);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - f * a.get(c, j));
                    inv.set(r, j, inv.get(r, j) - f * inv.get(c, j));
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let piv = self.get(r, c);
            for j in 0..self.cols {
                self.set(r, j, self.get(r, j) / piv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    self.set(i, j, self.get(i, j) - f * self.get(r, j));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solve `self * x = b`; returns one solution if consistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let piv = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &c) in piv.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Smith normal form: returns `(U, S, V)` with `U * m * V = S`, `U`, `V` unimodular,
/// `S` diagonal with nonnegative entries and `S[i][i]` dividing `S[i+1][i+1]`.
pub fn smith_normal_form(m: &IMat) -> (IMat, IMat, IMat) {
    let (r, c) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IMat::identity(r);
    let mut v = IMat::identity(c);

    let row_swap = |a: &mut IMat, i: usize, j: usize| {
        if i != j {
            for k in 0..a.cols() {
                let t = a.get(i, k);
                a.set(i, k, a.get(j, k));
                a.set(j, k, t);
            }
        }
    };
    let col_swap = |a: &mut IMat, i: usize, j: usize| {
        if i != j {
            for k in 0..a.rows() {
                let t = a.get(k, i);
                a.set(k, i, a.get(k, j));
                a.set(k, j, t);
            }
        }
    };
    // row_i += f * row_j
    let row_add = |a: &mut IMat, i: usize, j: usize, f: i64| {
        for k in 0..a.cols() {
            let val = a.get(i, k).checked_add(f.checked_mul(a.get(j, k)).expect("SNF overflow")).expect("SNF overflow");
            a.set(i, k, val);
        }
    };
    let col_add = |a: &mut IMat, i: usize, j: usize, f: i64| {
        for k in 0..a.rows() {
            let val = a.get(k, i).checked_add(f.checked_mul(a.get(k, j)).expect("SNF overflow")).expect("SNF overflow");
            a.set(k, i, val);
        }
    };

    for t in 0..r.min(c) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = s.get(i, j);
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap(&mut s, t, pi);
        row_swap(&mut u, t, pi);
        col_swap(&mut s, t, pj);
        col_swap(&mut v, t, pj);

        loop {
            let p = s.get(t, t);
            let mut clean = true;
            for i in t + 1..r {
                let q = s.get(i, t).div_euclid(p);
                if q != 0 {
                    row_add(&mut s, i, t, -q);
                    row_add(&mut u, i, t, -q);
                }
                if s.get(i, t) != 0 {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = s.get(t, j).div_euclid(p);
                if q != 0 {
                    col_add(&mut s, j, t, -q);
                    col_add(&mut v, j, t, -q);
                }
                if s.get(t, j) != 0 {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remainder in row/column t into the pivot
                let mut bi = (t, t);
                for i in t + 1..r {
                    let x = s.get(i, t);
                    if x != 0 && x.abs() < s.get(bi.0, bi.1).abs() {
                        bi = (i, t);
                    }
                }
                for j in t + 1..c {
                    let x = s.get(t, j);
                    if x != 0 && x.abs() < s.get(bi.0, bi.1).abs() {
                        bi = (t, j);
                    }
                }
                if bi.1 == t {
                    row_swap(&mut s, t, bi.0);
                    row_swap(&mut u, t, bi.0);
                } else {
                    col_swap(&mut s, t, bi.1);
                    col_swap(&mut v, t, bi.1);
                }
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..r).flat_map(|i| (t + 1..c).map(move |j| (i, j))).find(|&(i, j)| s.get(i, j) % p != 0);
            match bad {
                Some((i, _)) => {
                    row_add(&mut s, t, i, 1);
                    row_add(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if s.get(t, t) < 0 {
            for k in 0..c {
                s.set(t, k, -s.get(t, k));
            }
            for k in 0..r {
                u.set(t, k, -u.get(t, k));
            }
        }
    }
    (u, s, v)
}

/// Nonzero diagonal of a Smith form.
pub fn invariant_factors(s: &IMat) -> Vec<i64> {
    (0..s.rows().min(s.cols())).map(|i| s.get(i, i)).filter(|&d| d != 0).collect()
}

/// Column-style Hermite normal form of the lattice spanned by the given columns:
/// an echelon basis where each basis vector has a positive pivot in a row strictly
/// below the previous pivot row and zeros above it.
pub fn hermite_basis(n: usize, cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut basis: Vec<Vec<i64>> = cols.iter().filter(|c| c.iter().any(|&x| x != 0)).cloned().collect();
    let mut out = Vec::new();
    let mut row = 0;
    while row < n && !basis.is_empty() {
        // Euclid on the `row` coordinate across the remaining vectors
        loop {
            let nz: Vec<usize> = (0..basis.len()).filter(|&k| basis[k][row] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let &m = nz.iter().min_by_key(|&&k| basis[k][row].abs()).unwrap();
            let piv = basis[m].clone();
            for &k in &nz {
                if k == m {
                    continue;
                }
                let q = basis[k][row].div_euclid(piv[row]);
                for (x, y) in basis[k].iter_mut().zip(&piv) {
                    *x -= q * y;
                }
            }
        }
        if let Some(k) = (0..basis.len()).find(|&k| basis[k][row] != 0) {
            let mut v = basis.remove(k);
            if v[row] < 0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(v);
        }
        basis.retain(|c| c.iter().any(|&x| x != 0));
        row += 1;
    }
    // reduce entries above each pivot into [0, pivot)
    for k in 0..out.len() {
        let prow = out[k].iter().position(|&x| x != 0).unwrap();
        for l in 0..k {
            let q = out[l][prow].div_euclid(out[k][prow]);
            if q != 0 {
                let pk = out[k].clone();
                for (x, y) in out[l].iter_mut().zip(&pk) {
                    *x -= q * y;
                }
            }
        }
    }
    out
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    num_integer::lcm(a, b)
}

pub fn q_is_zero(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn q_abs(x: Q) -> Q {
    x.abs()
}

pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(q))
}

pub fn ser_qvec<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IMat) {
        let (u, s, v) = smith_normal_form(m);
        assert_eq!(u.mul(m).mul(&v), s);
        assert_eq!(u.det().abs(), 1);
        assert_eq!(v.det().abs(), 1);
        let d: Vec<i64> = (0..s.rows().min(s.cols())).map(|i| s.get(i, i)).collect();
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j {
                    assert_eq!(s.get(i, j), 0);
                }
            }
        }
        for w in d.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0, "{d:?}");
            } else {
                assert!(w[0] >= 0);
            }
        }
    }

    #[test]
    fn snf_examples() {
        let (_, s, _) = smith_normal_form(&IMat::identity(2));
        assert_eq!(s, IMat::identity(2));
        let (_, s, _) = smith_normal_form(&IMat::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s, IMat::from_rows(&[vec![1, 0], vec![0, 6]]));
        let (_, s, _) = smith_normal_form(&IMat::zeros(2, 2));
        assert_eq!(s, IMat::zeros(2, 2));
        check(&IMat::from_rows(&[vec![4, 6, 2], vec![6, 9, 3]]));
        check(&IMat::from_rows(&[vec![0, 3], vec![5, 0], vec![7, 7]]));
    }

    #[test]
    fn det_and_charpoly() {
        let m = IMat::from_rows(&[vec![0, -1], vec![1, 1]]);
        assert_eq!(m.det(), 1);
        assert_eq!(m.char_poly(), vec![1, -1, 1]);
        assert_eq!(IMat::from_rows(&[vec![2, 1], vec![1, 1]]).inverse_unimodular().unwrap(), IMat::from_rows(&[vec![1, -1], vec![-1, 2]]));
    }

    #[test]
    fn hermite() {
        let b = hermite_basis(2, &[vec![2, 1], vec![4, 3]]);
        assert_eq!(b, vec![vec![2, 0], vec![0, 1]]);
    }
}
