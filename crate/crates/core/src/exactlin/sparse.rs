use super::ModMatrix;

/// Row-compressed matrix over ℤ/m, used for the structured coface operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(usize, u64)>>,
}

impl SparseMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        SparseMatrix { modulus, rows, cols, entries: vec![Vec::new(); rows] }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut s = Self::zeros(modulus, n, n);
        for i in 0..n {
            s.entries[i].push((i, 1 % modulus));
        }
        s
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Accumulates `v` at (i, j). Call [`SparseMatrix::compact`] before comparing.
    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i].push((j, v % self.modulus));
    }

    pub fn add_sign(&mut self, i: usize, j: usize, positive: bool) {
        let v = if positive { 1 } else { self.modulus - 1 };
        self.add_at(i, j, v);
    }

    /// Sorts each row, merging duplicates and dropping zeros.
    pub fn compact(&mut self) {
        let m = self.modulus;
        for row in &mut self.entries {
            row.sort_unstable_by_key(|e| e.0);
            let mut out: Vec<(usize, u64)> = Vec::with_capacity(row.len());
            for &(j, v) in row.iter() {
                match out.last_mut() {
                    Some(last) if last.0 == j => last.1 = (last.1 + v) % m,
                    _ => out.push((j, v)),
                }
            }
            out.retain(|e| e.1 != 0);
            *row = out;
        }
    }

    pub fn row(&self, i: usize) -> &[(usize, u64)] {
        &self.entries[i]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        let m = self.modulus;
        self.entries.iter().all(|r| {
            let mut r = r.clone();
            r.sort_unstable_by_key(|e| e.0);
            let mut acc: Option<(usize, u64)> = None;
            for (j, v) in r {
                match acc {
                    Some((k, s)) if k == j => acc = Some((k, (s + v) % m)),
                    Some((_, s)) if s != 0 => return false,
                    _ => acc = Some((j, v)),
                }
            }
            acc.map_or(true, |(_, s)| s == 0)
        })
    }

    /// self · other
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "sparse product shape mismatch");
        let m = self.modulus;
        let mut acc = vec![0u64; other.cols];
        let mut touched = Vec::new();
        let mut out = SparseMatrix::zeros(m, self.rows, other.cols);
        for i in 0..self.rows {
            for &(k, a) in &self.entries[i] {
                for &(j, b) in &other.entries[k] {
                    touched.push(j);
                    acc[j] = (acc[j] + a * b) % m;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &j in &touched {
                if acc[j] != 0 {
                    out.entries[i].push((j, acc[j]));
                }
                acc[j] = 0;
            }
            touched.clear();
        }
        out
    }

    pub fn scale(&self, c: u64) -> SparseMatrix {
        let m = self.modulus;
        let mut out = self.clone();
        for row in &mut out.entries {
            for e in row.iter_mut() {
                e.1 = e.1 * (c % m) % m;
            }
            row.retain(|e| e.1 != 0);
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let m = self.modulus;
        let mut out = self.clone();
        for (i, row) in other.entries.iter().enumerate() {
            for &(j, v) in row {
                out.entries[i].push((j, (m - v % m) % m));
            }
        }
        out.compact();
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let m = self.modulus;
        self.entries.iter().map(|row| row.iter().fold(0, |s, &(j, a)| (s + a * (v[j] % m)) % m)).collect()
    }

    pub fn to_dense(&self) -> ModMatrix {
        let mut d = ModMatrix::zeros(self.modulus, self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for &(j, v) in row {
                d.add_at(i, j, v);
            }
        }
        d
    }

    /// Writes `c · self` into a block of `dst` starting at (r0, c0).
    pub fn write_into(&self, dst: &mut ModMatrix, r0: usize, c0: usize, c: u64) {
        let m = self.modulus;
        for (i, row) in self.entries.iter().enumerate() {
            for &(j, v) in row {
                dst.add_at(r0 + i, c0 + j, v * (c % m) % m);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_dense() {
        let m = 6;
        let mut a = SparseMatrix::zeros(m, 3, 4);
        let mut b = SparseMatrix::zeros(m, 4, 2);
        for (i, j, v) in [(0, 0, 1), (0, 3, 5), (1, 1, 2), (2, 2, 3), (2, 2, 4)] {
            a.add_at(i, j, v);
        }
        for (i, j, v) in [(0, 1, 2), (1, 0, 3), (2, 0, 1), (3, 1, 1)] {
            b.add_at(i, j, v);
        }
        a.compact();
        assert_eq!(a.mul(&b).to_dense(), a.to_dense().mul(&b.to_dense()));
        let mut z = SparseMatrix::zeros(m, 1, 1);
        z.add_at(0, 0, 2);
        z.add_at(0, 0, 4);
        assert!(z.is_zero());
        assert!(a.sub(&a).is_zero());
    }
}
