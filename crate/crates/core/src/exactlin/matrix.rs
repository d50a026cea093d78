use super::field::{Field, PrimeField};
use super::LinAlgError;

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from raw entries, reducing each modulo `p`.
    pub fn from_entries(
        field: PrimeField,
        rows: usize,
        cols: usize,
        entries: Vec<u64>,
    ) -> Result<Self, LinAlgError> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::ShapeMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let entries = entries.into_iter().map(|v| field.reduce(v)).collect();
        Ok(Self {
            field,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from row vectors; every row must have `cols` entries.
    pub fn from_rows(
        field: PrimeField,
        cols: usize,
        rows: &[Vec<u64>],
    ) -> Result<Self, LinAlgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::ShapeMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&v| field.reduce(v)));
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u64]) -> Result<(), LinAlgError> {
        if row.len() != self.cols {
            return Err(LinAlgError::ShapeMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.entries
            .extend(row.iter().map(|&v| self.field.reduce(v)));
        self.rows += 1;
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::ShapeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank_in(&self.field, self.rows, self.cols, self.entries.clone())
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        kernel_in(&self.field, self.rows, self.cols, self.entries.clone())
    }
}

/// Rank of `m` over `F_p`.
pub fn rank(m: &DenseMatrix) -> usize {
    m.rank()
}

/// A basis of `{ v : M v = 0 }`, one vector per non-pivot column.
pub fn kernel_basis(m: &DenseMatrix) -> Vec<Vec<u64>> {
    m.kernel_basis()
}

/// Reduced row echelon form in place; returns the pivot columns.
///
/// Pivoting takes the first nonzero entry at or below the current row.
pub fn rref_in<F: Field>(field: &F, rows: usize, cols: usize, a: &mut [u64]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if found != pr {
            for c in 0..cols {
                a.swap(found * cols + c, pr * cols + c);
            }
        }
        let inv = field.inv(a[pr * cols + col]);
        for c in col..cols {
            a[pr * cols + c] = field.mul(a[pr * cols + c], inv);
        }
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = a[r * cols + col];
            if factor == 0 {
                continue;
            }
            for c in col..cols {
                let sub = field.mul(factor, a[pr * cols + c]);
                a[r * cols + c] = field.sub(a[r * cols + c], sub);
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

/// Rank by forward elimination only.
pub fn rank_in<F: Field>(field: &F, rows: usize, cols: usize, mut a: Vec<u64>) -> usize {
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if found != pr {
            for c in col..cols {
                a.swap(found * cols + c, pr * cols + c);
            }
        }
        let inv = field.inv(a[pr * cols + col]);
        for r in pr + 1..rows {
            let factor = a[r * cols + col];
            if factor == 0 {
                continue;
            }
            let factor = field.mul(factor, inv);
            for c in col..cols {
                let sub = field.mul(factor, a[pr * cols + c]);
                a[r * cols + c] = field.sub(a[r * cols + c], sub);
            }
        }
        pr += 1;
    }
    pr
}

pub fn kernel_in<F: Field>(field: &F, rows: usize, cols: usize, mut a: Vec<u64>) -> Vec<Vec<u64>> {
    let pivots = rref_in(field, rows, cols, &mut a);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(a[row * cols + free]);
            }
            v
        })
        .collect()
}
