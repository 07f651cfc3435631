//! Exact linear algebra for coboundary matrices: integer matrices, rank and
//! kernels over `𝔽_p`, and Smith normal form over `ℤ`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// Dense matrices are refused beyond this many entries.
pub const MAX_ENTRIES: usize = 1 << 26;

/// A dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows.saturating_mul(cols) > MAX_ENTRIES {
            return Err(Error::Budget(format!("{rows}x{cols} matrix exceeds {MAX_ENTRIES} entries")));
        }
        Ok(IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rows and columns picked out by index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c));
            }
        }
        IntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn to_fp(&self, p: u64) -> FpMatrix {
        let pi = p as i64;
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.rem_euclid(pi) as u64).collect(),
        }
    }
}

/// A dense matrix over `𝔽_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut e, mut base, mut acc) = (p - 2, a % p, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl FpMatrix {
    /// A matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let cols = columns.len();
        let mut data = vec![0; rows * cols];
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, &x) in v.iter().enumerate() {
                data[r * cols + c] = x % p;
            }
        }
        FpMatrix { p, rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.data[r * self.cols + c]).collect())
            .collect()
    }

    /// `M·v`.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(0u64, |s, (&a, &b)| (s + a * b) % self.p)
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let (p, cols) = (self.p, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p);
            for j in c..cols {
                let v = &mut self.data[r * cols + j];
                *v = *v * inv % p;
            }
            let pivot_row: Vec<u64> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..self.rows {
                let f = self.data[i * cols + c];
                if i == r || f == 0 {
                    continue;
                }
                let row = &mut self.data[i * cols..(i + 1) * cols];
                for j in c..cols {
                    if pivot_row[j] != 0 {
                        row[j] = (row[j] + (p - f) * pivot_row[j]) % p;
                    }
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

    /// A basis of `{v : M·v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &c) in pivots.iter().enumerate() {
                    let x = m.data[r * self.cols + free];
                    v[c] = (p - x) % p;
                }
                v
            })
            .collect()
    }
}

/// Rank over `𝔽_p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    m.to_fp(p).rank()
}

/// Kernel basis over `𝔽_p`.
pub fn kernel_mod_p(m: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
    m.to_fp(p).kernel()
}

/// Rank of the span of `vectors` over `𝔽_p`.
pub fn span_rank(p: u64, len: usize, vectors: &[Vec<u64>]) -> usize {
    FpMatrix::from_columns(p, len, vectors).rank()
}

/// Euclidean-domain operations the diagonalization needs; `None` signals
/// overflow.
trait Euclid: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn quot(&self, d: &Self) -> Self;
    /// `self − q·b`.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Euclid for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|x| self.checked_sub(x))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Euclid for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Diagonalizes by unimodular row and column operations and returns the
/// nonzero diagonal entries (absolute values, unsorted); `None` on overflow.
fn diagonalize<T: Euclid>(rows: usize, cols: usize, mut a: Vec<T>) -> Option<Vec<BigInt>> {
    let at = |i: usize, j: usize| i * cols + j;
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = &a[at(i, j)];
                if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs_lt(&a[at(bi, bj)])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi != t {
            for j in 0..cols {
                a.swap(at(pi, j), at(t, j));
            }
        }
        if pj != t {
            for i in 0..rows {
                a.swap(at(i, pj), at(i, t));
            }
        }
        loop {
            let mut moved = false;
            for i in t + 1..rows {
                if a[at(i, t)].is_zero() {
                    continue;
                }
                let q = a[at(i, t)].quot(&a[at(t, t)]);
                for j in t..cols {
                    a[at(i, j)] = a[at(i, j)].sub_mul(&q, &a[at(t, j)])?;
                }
                if !a[at(i, t)].is_zero() {
                    for j in 0..cols {
                        a.swap(at(i, j), at(t, j));
                    }
                    moved = true;
                }
            }
            for j in t + 1..cols {
                if a[at(t, j)].is_zero() {
                    continue;
                }
                let q = a[at(t, j)].quot(&a[at(t, t)]);
                for i in t..rows {
                    a[at(i, j)] = a[at(i, j)].sub_mul(&q, &a[at(i, t)])?;
                }
                if !a[at(t, j)].is_zero() {
                    for i in 0..rows {
                        a.swap(at(i, j), at(i, t));
                    }
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        diag.push(a[at(t, t)].to_big().abs());
        t += 1;
    }
    Some(diag)
}

/// Invariant factors `d₁ | d₂ | … | d_r` of the Smith normal form (all
/// positive; `r` is the rank).
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let small: Vec<i128> = m.data.iter().map(|&v| v as i128).collect();
    let diag = diagonalize(m.rows, m.cols, small).unwrap_or_else(|| {
        let big: Vec<BigInt> = m.data.iter().map(|&v| BigInt::from(v)).collect();
        diagonalize(m.rows, m.cols, big).expect("big integers do not overflow")
    });
    divisibility_chain(diag)
}

/// `(a, b) ↦ (gcd, lcm)` sweeps turn any diagonal into invariant factors.
fn divisibility_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// A finitely generated abelian group `ℤ^rank ⊕ ⊕ ℤ/tᵢ`, `tᵢ > 1`,
/// `t₁ | t₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    #[serde(serialize_with = "decimal_strings")]
    pub torsion: Vec<BigInt>,
}

fn decimal_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    /// From the cyclic orders of any direct-sum decomposition into finite
    /// cyclic groups (orders ≤ 1 are dropped).
    pub fn finite(orders: Vec<BigInt>) -> Self {
        let mut t: Vec<BigInt> = orders.into_iter().filter(|o| *o > BigInt::from(1)).collect();
        t = divisibility_chain(t);
        t.retain(|o| *o > BigInt::from(1));
        AbelianGroup { rank: 0, torsion: t }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order, if finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    /// Order as a machine integer, if finite and small enough.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().and_then(|o| o.to_u64())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".into() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_rank_and_kernel() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(rank_mod_p(&m, 5), 2);
        let k = kernel_mod_p(&m, 5);
        assert_eq!(k.len(), 1);
        assert!(m.to_fp(5).apply(&k[0]).iter().all(|&x| x == 0));
        // mod 2 the first and last rows agree and the middle one vanishes
        assert_eq!(rank_mod_p(&m, 2), 1);
    }

    #[test]
    fn smith_form_small() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let inv: Vec<i64> = smith_invariants(&m).iter().map(|b| b.to_i64().unwrap()).collect();
        assert_eq!(inv, vec![2, 6, 12]);
        let z = IntMatrix::zeros(2, 3).unwrap();
        assert!(smith_invariants(&z).is_empty());
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = i64::MAX / 3;
        let m = IntMatrix::from_rows(&[vec![big, big - 1], vec![big - 1, big - 2]]);
        let inv = smith_invariants(&m);
        // det = -1
        assert_eq!(inv, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn abelian_group_display() {
        let g = AbelianGroup::finite(vec![BigInt::from(2), BigInt::from(3), BigInt::from(1)]);
        assert_eq!(g.to_string(), "Z/6");
        assert_eq!(g.order_u64(), Some(6));
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
    }
}
