use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Dense row-major matrix of exact integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl Serialize for IntegerMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(ser)
    }
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn push_row(&mut self, row: &[i64]) {
        assert_eq!(row.len(), self.cols);
        self.entries.extend(row.iter().map(|&x| BigInt::from(x)));
        self.rows += 1;
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntegerMatrix {
        IntegerMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries: rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Fraction-free Gaussian elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * self.get(src, j);
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * self.get(i, src);
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let k = i * self.cols + j;
            self.entries[k] = -std::mem::take(&mut self.entries[k]);
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Operations on `S` are mirrored onto `U` (rows) and `V` (columns) when
/// tracking is on.
struct Reducer {
    s: IntegerMatrix,
    u: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.add_row(dst, src, q);
        if let Some(u) = &mut self.u {
            u.add_row(dst, src, q);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.add_col(dst, src, q);
        if let Some(v) = &mut self.v {
            v.add_col(dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }

    /// Smallest nonzero pivot in the trailing block, remainder reduction,
    /// and a row merge whenever the pivot fails to divide the block.
    fn run(&mut self) {
        let (r, c) = (self.s.rows, self.s.cols);
        for t in 0..r.min(c) {
            loop {
                let mut pivot: Option<(usize, usize)> = None;
                for i in t..r {
                    for j in t..c {
                        let x = self.s.get(i, j);
                        if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.abs() < self.s.get(pi, pj).abs()) {
                            pivot = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = pivot else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.s.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..r {
                    let q = self.s.get(i, t).div_floor(&p);
                    if !q.is_zero() {
                        self.add_row(i, t, &-q);
                    }
                    clean &= self.s.get(i, t).is_zero();
                }
                for j in t + 1..c {
                    let q = self.s.get(t, j).div_floor(&p);
                    if !q.is_zero() {
                        self.add_col(j, t, &-q);
                    }
                    clean &= self.s.get(t, j).is_zero();
                }
                if !clean {
                    continue;
                }
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !self.s.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.s.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Returns `(S, U, V)` with `U * m * V = S`, `U` and `V` unimodular and `S`
/// diagonal with nonnegative entries, each dividing the next.
pub fn smith_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let mut red = Reducer {
        s: m.clone(),
        u: Some(IntegerMatrix::identity(m.rows)),
        v: Some(IntegerMatrix::identity(m.cols)),
    };
    red.run();
    (red.s, red.u.unwrap(), red.v.unwrap())
}

/// Cokernel `Z^cols / rowspace` as elementary divisors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InvariantFactors {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl InvariantFactors {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|n| format!("Z/{n}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Reads the cokernel of `m` off its Smith form.
pub fn cokernel(m: &IntegerMatrix) -> InvariantFactors {
    let mut red = Reducer {
        s: m.clone(),
        u: None,
        v: None,
    };
    red.run();
    let mut torsion = Vec::new();
    let mut rank = 0;
    for i in 0..m.rows.min(m.cols) {
        let d = red.s.get(i, i);
        if !d.is_zero() {
            rank += 1;
            if !d.is_one() {
                torsion.push(d.to_u64().expect("invariant factor fits in u64"));
            }
        }
    }
    InvariantFactors {
        torsion,
        free_rank: m.cols - rank,
    }
}
