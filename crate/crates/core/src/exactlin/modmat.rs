use super::{divide_mod, ext_gcd, gcd, LinAlgError};

/// Reduce a lazily accumulated row after this many unreduced updates.
const LAZY_LIMIT: u32 = 1 << 20;

/// Dense matrix over ℤ/m, entries kept in `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        ModMatrix { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut out = Self::zeros(modulus, n, n);
        for i in 0..n {
            out.set(i, i, 1);
        }
        out
    }

    pub fn diagonal(modulus: u64, entries: &[u64]) -> Self {
        let mut out = Self::zeros(modulus, entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            out.set(i, i, d);
        }
        out
    }

    /// Builds a matrix from signed integer rows; all rows must share a length.
    pub fn from_rows(modulus: u64, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut out = Self::zeros(modulus, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                out.data[i * cols + j] = x.rem_euclid(modulus as i64) as u64;
            }
        }
        out
    }

    pub fn from_columns(modulus: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut out = Self::zeros(modulus, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &x) in col.iter().enumerate() {
                out.data[i * columns.len() + j] = x % modulus;
            }
        }
        out
    }

    pub fn from_fn(modulus: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut out = Self::zeros(modulus, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = f(i, j) % modulus;
            }
        }
        out
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

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    /// Adds `v` to entry (i, j).
    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        let idx = i * self.cols + j;
        self.data[idx] = (self.data[idx] + v % self.modulus) % self.modulus;
    }

    /// Adds `sign * 1` to entry (i, j); the common case when filling differentials.
    pub fn add_sign(&mut self, i: usize, j: usize, positive: bool) {
        let m = self.modulus;
        let idx = i * self.cols + j;
        self.data[idx] = if positive { (self.data[idx] + 1) % m } else { (self.data[idx] + m - 1) % m };
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.modulus, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data.iter().position(|&x| x != 0).map(|k| (k / self.cols, k % self.cols))
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        assert_eq!(self.modulus, other.modulus, "moduli differ");
        let m = self.modulus;
        let mut out = ModMatrix::zeros(m, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0u32;
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a * b;
                }
                pending += 1;
                if pending == LAZY_LIMIT {
                    acc.iter_mut().for_each(|x| *x %= m);
                    pending = 0;
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = x % m;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let m = self.modulus;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (k, (&a, &b)) in self.row(i).iter().zip(v).enumerate() {
                    s += a * (b % m);
                    if k % (LAZY_LIMIT as usize) == LAZY_LIMIT as usize - 1 {
                        s %= m;
                    }
                }
                s % m
            })
            .collect()
    }

    pub fn add(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let m = self.modulus;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % m).collect();
        ModMatrix { modulus: m, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &ModMatrix) -> ModMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModMatrix {
        self.scale(self.modulus - 1)
    }

    pub fn scale(&self, c: u64) -> ModMatrix {
        let m = self.modulus;
        let c = c % m;
        let data = self.data.iter().map(|a| a * c % m).collect();
        ModMatrix { modulus: m, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_rows(&self, factors: &[u64]) -> ModMatrix {
        assert_eq!(factors.len(), self.rows);
        let m = self.modulus;
        Self::from_fn(m, self.rows, self.cols, |i, j| self.get(i, j) * (factors[i] % m))
    }

    pub fn hstack(parts: &[&ModMatrix]) -> ModMatrix {
        let first = parts.first().expect("hstack of nothing");
        let rows = first.rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = ModMatrix::zeros(first.modulus, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                out.data[i * cols + off..i * cols + off + p.cols].copy_from_slice(p.row(i));
            }
            off += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[&ModMatrix]) -> ModMatrix {
        let first = parts.first().expect("vstack of nothing");
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        ModMatrix { modulus: first.modulus, rows, cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> ModMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        ModMatrix { modulus: self.modulus, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> ModMatrix {
        Self::from_fn(self.modulus, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Diagonal form U·A·V = D over ℤ/m with V and V⁻¹ tracked explicitly.
///
/// U is not stored; instead any right-hand-side columns supplied to
/// [`diagonalize`] are carried along, so `transformed_rhs` is U·B.
/// Diagonal entries need not form a divisibility chain; consumers only
/// look at gcd(d_i, m).
#[derive(Clone, Debug)]
pub struct Diagonalization {
    modulus: u64,
    rows: usize,
    cols: usize,
    diag: Vec<u64>,
    v: ModMatrix,
    v_inv: ModMatrix,
    rhs: Option<ModMatrix>,
}

impl Diagonalization {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The diagonal, of length min(rows, cols).
    pub fn diagonal(&self) -> &[u64] {
        &self.diag
    }

    pub fn pivot(&self, i: usize) -> u64 {
        self.diag.get(i).copied().unwrap_or(0)
    }

    pub fn v(&self) -> &ModMatrix {
        &self.v
    }

    pub fn v_inv(&self) -> &ModMatrix {
        &self.v_inv
    }

    pub fn transformed_rhs(&self) -> Option<&ModMatrix> {
        self.rhs.as_ref()
    }

    /// Order of the kernel summand in column i: gcd(d_i, m), with d_i = 0 past the diagonal.
    pub fn kernel_order(&self, i: usize) -> u64 {
        gcd(self.pivot(i), self.modulus)
    }

    /// Kernel generators as (vector, order) pairs, order > 1.
    pub fn kernel_generators(&self) -> Vec<(Vec<u64>, u64)> {
        let m = self.modulus;
        (0..self.cols)
            .filter_map(|i| {
                let g = self.kernel_order(i);
                (g > 1).then(|| {
                    let c = m / g;
                    ((0..self.cols).map(|r| self.v.get(r, i) * c % m).collect(), g)
                })
            })
            .collect()
    }

    /// Whether A·z = 0.
    pub fn in_kernel(&self, z: &[u64]) -> bool {
        let y = self.v_inv.mul_vec(z);
        y.iter().enumerate().all(|(i, &yi)| self.pivot(i) * yi % self.modulus == 0)
    }

    /// Solves A·x = b for the j-th carried right-hand side.
    pub fn solve_rhs(&self, j: usize) -> Option<Vec<u64>> {
        let rhs = self.rhs.as_ref()?;
        let c = rhs.column(j);
        self.solve_transformed(&c)
    }

    fn solve_transformed(&self, c: &[u64]) -> Option<Vec<u64>> {
        let m = self.modulus;
        let mut y = vec![0u64; self.cols];
        for (i, &ci) in c.iter().enumerate() {
            if i < self.cols {
                y[i] = divide_mod(ci, self.pivot(i), m)?;
            } else if ci % m != 0 {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// Row i of the image test: (m / gcd(d_i, m)) · (U b)_i vanishes for all i iff b ∈ im A.
    pub fn image_obstruction(&self, transformed: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        transformed
            .iter()
            .enumerate()
            .map(|(i, &c)| (m / gcd(self.pivot(i), m)) * c % m)
            .collect()
    }
}

fn reduce_row(row: &mut [u64], m: u64) {
    row.iter_mut().for_each(|x| *x %= m);
}

fn signed_to_mod(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

/// Unimodular 2×2 combination sending (a, b) to (gcd, 0) in the first slot.
struct Bezout {
    s: u64,
    t: u64,
    a: u64,
    b: u64,
}

impl Bezout {
    fn new(a: u64, b: u64, m: u64) -> Self {
        let (g, s, t) = ext_gcd(a as i64, b as i64);
        let g = g as u64;
        Bezout { s: signed_to_mod(s, m), t: signed_to_mod(t, m), a: (a / g) % m, b: (b / g) % m }
    }
}

/// Diagonalizes `a` over ℤ/m, carrying the columns of `rhs` through the row operations.
pub fn diagonalize(a: &ModMatrix, rhs: Option<&ModMatrix>) -> Diagonalization {
    let m = a.modulus;
    let (nrows, ncols) = (a.rows, a.cols);
    let extra = rhs.map_or(0, |r| {
        assert_eq!(r.rows, nrows, "rhs row count differs");
        assert_eq!(r.modulus, m, "rhs modulus differs");
        r.cols
    });
    let width = ncols + extra;
    let mut work: Vec<Vec<u64>> = (0..nrows)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            row.extend_from_slice(a.row(i));
            if let Some(r) = rhs {
                row.extend_from_slice(r.row(i));
            }
            row
        })
        .collect();

    let rank = echelon(&mut work, m, ncols);
    let (mut top, bottom) = {
        let bottom = work.split_off(rank);
        (work, bottom)
    };

    let mut vt: Vec<Vec<u64>> = ModMatrix::identity(m, ncols).to_rows();
    let mut vinv: Vec<Vec<u64>> = vt.clone();
    let npiv = diagonalize_top(&mut top, m, ncols, &mut vt, &mut vinv);

    let dlen = nrows.min(ncols);
    let mut diag = vec![0u64; dlen];
    for (t, d) in diag.iter_mut().enumerate().take(npiv) {
        *d = top[t][t] % m;
    }

    let mut v = ModMatrix::zeros(m, ncols, ncols);
    for (j, col) in vt.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            v.data[i * ncols + j] = x;
        }
    }
    let mut v_inv = ModMatrix::zeros(m, ncols, ncols);
    for (i, row) in vinv.iter().enumerate() {
        v_inv.data[i * ncols..(i + 1) * ncols].copy_from_slice(row);
    }

    let rhs_out = rhs.map(|_| {
        let mut out = ModMatrix::zeros(m, nrows, extra);
        for (i, row) in top.iter().chain(bottom.iter()).enumerate() {
            out.data[i * extra..(i + 1) * extra].copy_from_slice(&row[ncols..]);
        }
        out
    });

    Diagonalization { modulus: m, rows: nrows, cols: ncols, diag, v, v_inv, rhs: rhs_out }
}

/// Row echelon form in place; returns the number of pivot rows, which end up on top.
fn echelon(work: &mut [Vec<u64>], m: u64, ncols: usize) -> usize {
    let nrows = work.len();
    let mut pending = vec![0u32; nrows];
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let mut best: Option<(usize, u64)> = None;
        for (i, row) in work.iter().enumerate().skip(r) {
            let v = row[c] % m;
            if v != 0 {
                let g = gcd(v, m);
                if best.map_or(true, |(_, bg)| g < bg) {
                    best = Some((i, g));
                    if g == 1 {
                        break;
                    }
                }
            }
        }
        let Some((pi, _)) = best else { continue };
        work.swap(r, pi);
        pending.swap(r, pi);
        reduce_row(&mut work[r], m);
        pending[r] = 0;
        let (head, tail) = work.split_at_mut(r + 1);
        let prow = &mut head[r];
        for (off, row) in tail.iter_mut().enumerate() {
            let i = r + 1 + off;
            let v = row[c] % m;
            if v == 0 {
                continue;
            }
            match divide_mod(v, prow[c], m) {
                Some(q) => {
                    let f = m - q;
                    for (x, &p) in row[c..].iter_mut().zip(&prow[c..]) {
                        *x += f * p;
                    }
                    pending[i] += 1;
                    if pending[i] >= LAZY_LIMIT {
                        reduce_row(row, m);
                        pending[i] = 0;
                    }
                }
                None => {
                    reduce_row(row, m);
                    pending[i] = 0;
                    let bz = Bezout::new(prow[c], row[c], m);
                    for (x, y) in prow[c..].iter_mut().zip(row[c..].iter_mut()) {
                        let (px, ry) = (*x, *y);
                        *x = (bz.s * px + bz.t * ry) % m;
                        *y = ((m - bz.b) * px + bz.a * ry) % m;
                    }
                }
            }
        }
        r += 1;
    }
    for row in work.iter_mut() {
        reduce_row(row, m);
    }
    r
}

/// Diagonalizes the top block with row and column operations; returns the number of pivots.
fn diagonalize_top(
    e: &mut [Vec<u64>],
    m: u64,
    ncols: usize,
    vt: &mut [Vec<u64>],
    vinv: &mut [Vec<u64>],
) -> usize {
    let r = e.len();
    let mut t = 0;
    while t < r && t < ncols {
        let mut best: Option<(usize, usize, u64)> = None;
        'search: for (i, row) in e.iter().enumerate().skip(t) {
            for (j, &x) in row[..ncols].iter().enumerate().skip(t) {
                if x != 0 {
                    let g = gcd(x, m);
                    if best.map_or(true, |(_, _, bg)| g < bg) {
                        best = Some((i, j, g));
                        if g == 1 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        e.swap(t, pi);
        if pj != t {
            for row in e.iter_mut() {
                row.swap(t, pj);
            }
            vt.swap(t, pj);
            vinv.swap(t, pj);
        }
        loop {
            // clear the pivot column
            let (head, tail) = e.split_at_mut(t + 1);
            let prow = &mut head[t];
            for row in tail.iter_mut() {
                let v = row[t];
                if v == 0 {
                    continue;
                }
                match divide_mod(v, prow[t], m) {
                    Some(q) => {
                        let f = m - q;
                        for (x, &p) in row[t..].iter_mut().zip(&prow[t..]) {
                            *x = (*x + f * p) % m;
                        }
                    }
                    None => {
                        let bz = Bezout::new(prow[t], v, m);
                        for (x, y) in prow[t..].iter_mut().zip(row[t..].iter_mut()) {
                            let (px, ry) = (*x, *y);
                            *x = (bz.s * px + bz.t * ry) % m;
                            *y = ((m - bz.b) * px + bz.a * ry) % m;
                        }
                    }
                }
            }
            // clear the pivot row
            let mut clean = true;
            for j in t + 1..ncols {
                let v = e[t][j];
                if v == 0 {
                    continue;
                }
                let p = e[t][t];
                match divide_mod(v, p, m) {
                    Some(q) => {
                        let f = m - q;
                        for row in e[t..].iter_mut() {
                            row[j] = (row[j] + f * row[t]) % m;
                        }
                        let (a, b) = pair_mut(vt, t, j);
                        for (x, &y) in b.iter_mut().zip(a.iter()) {
                            *x = (*x + f * y) % m;
                        }
                        let (a, b) = pair_mut(vinv, t, j);
                        for (x, &y) in a.iter_mut().zip(b.iter()) {
                            *x = (*x + q * y) % m;
                        }
                    }
                    None => {
                        clean = false;
                        let bz = Bezout::new(p, v, m);
                        for row in e[t..].iter_mut() {
                            let (x, y) = (row[t], row[j]);
                            row[t] = (bz.s * x + bz.t * y) % m;
                            row[j] = ((m - bz.b) * x + bz.a * y) % m;
                        }
                        let (a, b) = pair_mut(vt, t, j);
                        for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                            let (cx, cy) = (*x, *y);
                            *x = (bz.s * cx + bz.t * cy) % m;
                            *y = ((m - bz.b) * cx + bz.a * cy) % m;
                        }
                        let (a, b) = pair_mut(vinv, t, j);
                        for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                            let (rx, ry) = (*x, *y);
                            *x = (bz.a * rx + bz.b * ry) % m;
                            *y = ((m - bz.t) * rx + bz.s * ry) % m;
                        }
                    }
                }
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
    t
}

fn pair_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert!(i < j);
    let (a, b) = v.split_at_mut(j);
    (&mut a[i], &mut b[0])
}

/// Some x with A·x = b, or `None` when b ∉ im A.
///
/// The solution has the smallest non-negative coordinates in the
/// diagonalizing basis, so repeated calls agree.
pub fn solve_mod(a: &ModMatrix, b: &[u64]) -> Option<Vec<u64>> {
    let rhs = ModMatrix::from_columns(a.modulus, a.rows, &[b.to_vec()]);
    diagonalize(a, Some(&rhs)).solve_rhs(0)
}

/// A matrix Q with ker Q = im B.
pub fn image_annihilator(b: &ModMatrix) -> ModMatrix {
    let m = b.modulus;
    let d = diagonalize(b, Some(&ModMatrix::identity(m, b.rows)));
    let u = d.rhs.as_ref().expect("identity rhs supplied");
    let mut rows = Vec::new();
    for i in 0..b.rows {
        let f = m / gcd(d.pivot(i), m);
        if f % m != 0 {
            rows.push(u.row(i).iter().map(|x| x * f % m).collect::<Vec<_>>());
        }
    }
    let mut out = ModMatrix::zeros(m, rows.len(), b.rows);
    for (i, row) in rows.iter().enumerate() {
        out.data[i * b.rows..(i + 1) * b.rows].copy_from_slice(row);
    }
    out
}

/// Inverse over ℤ/m, if the matrix is square and invertible.
pub fn inverse_mod(a: &ModMatrix) -> Option<ModMatrix> {
    if a.rows != a.cols {
        return None;
    }
    let m = a.modulus;
    let n = a.rows;
    let d = diagonalize(a, Some(&ModMatrix::identity(m, n)));
    let u = d.rhs.as_ref()?;
    let mut dinv = Vec::with_capacity(n);
    for i in 0..n {
        dinv.push(super::inv_mod(d.pivot(i), m)?);
    }
    Some(d.v.mul(&ModMatrix::diagonal(m, &dinv)).mul(u))
}

impl ModMatrix {
    /// Checks `self * other == 0`, reporting the first offending entry.
    pub fn check_composition_zero(&self, other: &ModMatrix) -> Result<(), LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let prod = self.mul(other);
        match prod.first_nonzero() {
            None => Ok(()),
            Some((row, col)) => Err(LinAlgError::CompositionNotZero { rows: prod.rows, cols: prod.cols, row, col }),
        }
    }
}
