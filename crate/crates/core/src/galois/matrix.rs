//! Small dense square matrices over cyclotomic numbers.

use std::fmt;

use crate::algebra::CycNum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    e: Vec<CycNum>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Matrix { n, e: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect()).collect())
            .expect("square integer matrix")
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, CycNum::one())
    }

    pub fn scalar(n: usize, c: CycNum) -> Self {
        let mut e = vec![CycNum::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = c.clone();
        }
        Matrix { n, e }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.e[i * self.n + j]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut e = vec![CycNum::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        e[i * n + j] = &e[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Matrix { n, e }
    }

    pub fn scale(&self, c: &CycNum) -> Matrix {
        Matrix { n: self.n, e: self.e.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> CycNum {
        (0..self.n).fold(CycNum::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        Matrix { n, e: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect() }
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let n = self.n + other.n;
        let mut e = vec![CycNum::zero(); n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                e[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                e[(i + self.n) * n + j + self.n] = other.get(i, j).clone();
            }
        }
        Matrix { n, e }
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.e
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (a, b) = (self.n, other.n);
        let n = a * b;
        let mut e = vec![CycNum::zero(); n * n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..b {
                    for l in 0..b {
                        e[(i * b + k) * n + j * b + l] = self.get(i, j) * other.get(k, l);
                    }
                }
            }
        }
        Matrix { n, e }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CycNum]> {
        self.e.chunks(self.n.max(1))
    }
}

impl fmt::Display for Matrix {
    /// Rows separated by ` | `, entries by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|r| r.iter().map(|c| match c.to_rational() {
                Some(q) => crate::algebra::cyclo::fmt_rational(&q),
                None => c.to_string(),
            }).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" | "))
    }
}
