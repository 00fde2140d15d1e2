//! Dense matrices and streaming row echelon forms over a prime field F_p.
//!
//! Entries are stored as `u8`, which limits the characteristic to primes
//! below 256. Every group in the desk-scale catalog lives far below that.

use std::fmt;

/// Largest characteristic supported by the byte representation.
pub const MAX_PRIME: u32 = 251;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(a: u8, b: u8, p: u32) -> u8 {
    ((a as u32 + b as u32) % p) as u8
}

#[inline]
pub fn sub(a: u8, b: u8, p: u32) -> u8 {
    ((a as u32 + p - b as u32) % p) as u8
}

#[inline]
pub fn mul(a: u8, b: u8, p: u32) -> u8 {
    ((a as u32 * b as u32) % p) as u8
}

#[inline]
pub fn neg(a: u8, p: u32) -> u8 {
    ((p - a as u32) % p) as u8
}

pub fn inv(a: u8, p: u32) -> u8 {
    assert!(a as u32 % p != 0, "inverse of zero in F_{p}");
    let mut result = 1u32;
    let mut base = a as u32 % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result as u8
}

/// Reduces a signed integer into `0..p`.
pub fn from_i64(x: i64, p: u32) -> u8 {
    x.rem_euclid(p as i64) as u8
}

/// `dst += m * src` over F_p.
#[inline]
pub fn axpy(dst: &mut [u8], src: &[u8], m: u8, p: u32) {
    debug_assert_eq!(dst.len(), src.len());
    if m == 0 {
        return;
    }
    if p == 2 {
        for (d, s) in dst.iter_mut().zip(src) {
            *d ^= *s;
        }
        return;
    }
    let mut lut = [0u8; 256];
    for (s, slot) in lut.iter_mut().enumerate().take(p as usize) {
        *slot = mul(s as u8, m, p);
    }
    let p8 = p as u16;
    for (d, s) in dst.iter_mut().zip(src) {
        let t = *d as u16 + lut[*s as usize] as u16;
        *d = if t >= p8 { (t - p8) as u8 } else { t as u8 };
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix over F_{} ({}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Scalar multiple of the identity; `c` is reduced mod p.
    pub fn scalar(p: u32, n: usize, c: i64) -> Self {
        let mut m = Self::zeros(p, n, n);
        let c = from_i64(c, p);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u8>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().map(|&x| (x as u32 % p) as u8));
        }
        Self { p, rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u8>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, &x) in col.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = (v as u32 % self.p) as u8;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: u8) {
        let i = r * self.cols + c;
        self.data[i] = add(self.data[i], v, self.p);
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.p, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p, "characteristic mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = vec![0u8; other.cols];
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a != 0 {
                    axpy(&mut acc, other.row(k), a, self.p);
                }
            }
            out.data[r * other.cols..(r + 1) * other.cols].copy_from_slice(&acc);
        }
        out
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let s: u32 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u32 * b as u32)
                    .fold(0, |acc, x| (acc + x) % self.p);
                s as u8
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.p, self.rows, self.cols), (other.p, other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add(a, b, self.p)).collect();
        FpMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.p, self.rows, self.cols), (other.p, other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub(a, b, self.p)).collect();
        FpMatrix { data, ..*self }
    }

    pub fn scale(&self, c: i64) -> FpMatrix {
        let c = from_i64(c, self.p);
        let data = self.data.iter().map(|&a| mul(a, c, self.p)).collect();
        FpMatrix { data, ..*self }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.p, self.cols), (other.p, other.cols));
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.p, self.cols);
        for r in 0..self.rows {
            e.insert(self.row(r).to_vec());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u8>> {
        self.echelon().into_kernel()
    }

    /// Basis of the column space.
    pub fn column_space(&self) -> Vec<Vec<u8>> {
        self.transpose().echelon().into_rows()
    }

    /// Solves `self * x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[u8]) -> Option<Vec<u8>> {
        assert_eq!(b.len(), self.rows);
        // Reduce the augmented system [A | b].
        let mut e = Echelon::new(self.p, self.cols + 1);
        for r in 0..self.rows {
            let mut row = self.row(r).to_vec();
            row.push(b[r]);
            e.insert(row);
        }
        if e.pivots.iter().any(|&c| c == self.cols) {
            return None;
        }
        let rref = e.into_rref();
        let mut x = vec![0u8; self.cols];
        for (row, &col) in rref.rows.iter().zip(&rref.pivots) {
            x[col] = row[self.cols];
        }
        Some(x)
    }
}

/// Rows kept in semi-echelon form: each stored row is normalized to 1 at its
/// pivot and vanishes at the pivots of every earlier row.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    width: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, width: usize) -> Self {
        Self { p, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_rows(self) -> Vec<Vec<u8>> {
        self.rows
    }

    /// Reduces `v` in place, returning the multiplier used for each stored row.
    pub fn reduce_with_coeffs(&self, v: &mut [u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.width);
        let mut coeffs = vec![0u8; self.rows.len()];
        for (k, (row, &col)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let m = v[col];
            if m != 0 {
                coeffs[k] = m;
                axpy(v, row, neg(m, self.p), self.p);
            }
        }
        coeffs
    }

    pub fn reduce(&self, v: &mut [u8]) {
        assert_eq!(v.len(), self.width);
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let m = v[col];
            if m != 0 {
                axpy(v, row, neg(m, self.p), self.p);
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        self.reduce(&mut v);
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(col) => {
                let s = inv(v[col], self.p);
                if s != 1 {
                    for x in v.iter_mut() {
                        *x = mul(*x, s, self.p);
                    }
                }
                self.rows.push(v);
                self.pivots.push(col);
                true
            }
        }
    }

    /// Fully reduced row echelon form, rows sorted by pivot column.
    pub fn into_rref(mut self) -> Echelon {
        let n = self.rows.len();
        // Row j is already zero at pivots of rows < j; clear the remaining
        // entries above each pivot, latest rows first.
        for j in (0..n).rev() {
            let col = self.pivots[j];
            let (head, tail) = self.rows.split_at_mut(j);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let m = row[col];
                if m != 0 {
                    axpy(row, pivot_row, neg(m, self.p), self.p);
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let rows = order.iter().map(|&i| std::mem::take(&mut self.rows[i])).collect();
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        Echelon { p: self.p, width: self.width, rows, pivots }
    }

    /// Basis of the common null space of the stored rows.
    pub fn into_kernel(self) -> Vec<Vec<u8>> {
        let p = self.p;
        let width = self.width;
        let rref = self.into_rref();
        let mut is_pivot = vec![false; width];
        for &c in &rref.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..width).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; width];
            v[free] = 1;
            for (row, &pc) in rref.rows.iter().zip(&rref.pivots) {
                v[pc] = neg(row[free], p);
            }
            basis.push(v);
        }
        basis
    }
}

/// A subquotient `Z / B` of `F_p^width` with chosen representatives.
///
/// The representatives are the rows added after the rows spanning `B`, so the
/// reduction multipliers of a vector against them are its coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    echelon: Echelon,
    base_rank: usize,
}

impl Subquotient {
    pub fn new<I, J>(p: u32, width: usize, sub_gens: I, super_gens: J) -> Self
    where
        I: IntoIterator<Item = Vec<u8>>,
        J: IntoIterator<Item = Vec<u8>>,
    {
        let mut echelon = Echelon::new(p, width);
        for v in sub_gens {
            echelon.insert(v);
        }
        let base_rank = echelon.rank();
        for v in super_gens {
            echelon.insert(v);
        }
        Self { echelon, base_rank }
    }

    /// The whole space `F_p^width` modulo the span of `sub_gens`.
    pub fn quotient_of_full<I>(p: u32, width: usize, sub_gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<u8>>,
    {
        let unit = (0..width).map(move |i| {
            let mut v = vec![0u8; width];
            v[i] = 1;
            v
        });
        Self::new(p, width, sub_gens, unit)
    }

    pub fn p(&self) -> u32 {
        self.echelon.p
    }

    pub fn width(&self) -> usize {
        self.echelon.width
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank() - self.base_rank
    }

    pub fn base_dim(&self) -> usize {
        self.base_rank
    }

    pub fn reps(&self) -> &[Vec<u8>] {
        &self.echelon.rows[self.base_rank..]
    }

    /// Coordinates of the class of `v`; `None` if `v` is outside `Z`.
    pub fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        let mut w = v.to_vec();
        let coeffs = self.echelon.reduce_with_coeffs(&mut w);
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        Some(coeffs[self.base_rank..].to_vec())
    }

    /// Whether `v` lies in `B`.
    pub fn is_trivial(&self, v: &[u8]) -> bool {
        self.coords(v).is_some_and(|c| c.iter().all(|&x| x == 0))
    }
}

/// Exact equality of the spans of two families of vectors.
pub fn same_span(p: u32, width: usize, a: &[Vec<u8>], b: &[Vec<u8>]) -> bool {
    let mut ea = Echelon::new(p, width);
    for v in a {
        ea.insert(v.clone());
    }
    let mut eb = Echelon::new(p, width);
    for v in b {
        eb.insert(v.clone());
    }
    ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v)) && a.iter().all(|v| eb.contains(v))
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersection(p: u32, width: usize, a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    // Solve sum x_i a_i = sum y_j b_j and map the x-part back.
    let na = a.len();
    let nb = b.len();
    let mut m = FpMatrix::zeros(p, width, na + nb);
    for (i, v) in a.iter().enumerate() {
        for r in 0..width {
            m.set(r, i, v[r]);
        }
    }
    for (j, v) in b.iter().enumerate() {
        for r in 0..width {
            m.set(r, na + j, neg(v[r], p));
        }
    }
    let mut out = Echelon::new(p, width);
    for sol in m.kernel() {
        let mut w = vec![0u8; width];
        for i in 0..na {
            axpy(&mut w, &a[i], sol[i], p);
        }
        out.insert(w);
    }
    out.into_rows()
}
