use super::modmat::{diagonalize, inverse_mod, Diagonalization, ModMatrix};
use super::{ext_gcd, gcd, LinAlgError};
use num_bigint::BigUint;

/// (ℤ/m)^s modulo the column span of a relation matrix, in invariant-factor form.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub modulus: u64,
    /// d₁ | d₂ | …, all > 1.
    pub orders: Vec<u64>,
    /// Coordinate functionals: the class of w has j-th coordinate `coord_rows[j]·w mod orders[j]`.
    pub coord_rows: Vec<Vec<u64>>,
    /// Representatives in (ℤ/m)^s of the unit vectors.
    pub generators: Vec<Vec<u64>>,
}

pub fn cokernel(rel: &ModMatrix) -> Cokernel {
    let m = rel.modulus();
    let s = rel.rows();
    let d = diagonalize(rel, Some(&ModMatrix::identity(m, s)));
    let u = d.transformed_rhs().expect("identity rhs").clone();
    let u_inv = inverse_mod(&u).expect("row transform is invertible");
    let mut orders: Vec<u64> = (0..s).map(|i| gcd(d.pivot(i), m)).collect();
    let mut rows: Vec<Vec<u64>> = (0..s).map(|i| u.row(i).to_vec()).collect();
    let mut gens: Vec<Vec<u64>> = u_inv.columns();

    let mi = m as i64;
    let md = |x: i64| x.rem_euclid(mi) as u64;
    for i in 0..s {
        for j in i + 1..s {
            let (a, b) = (orders[i], orders[j]);
            if b % a == 0 {
                continue;
            }
            let (g, sc, tc) = ext_gcd(a as i64, b as i64);
            let (ag, bg) = ((a as i64) / g, (b as i64) / g);
            let (ri, rj) = (rows[i].clone(), rows[j].clone());
            for k in 0..s {
                let (x, y) = (ri[k] as i64, rj[k] as i64);
                rows[i][k] = md(sc * x % mi + tc * y % mi);
                rows[j][k] = md(-bg * x % mi + ag * y % mi);
            }
            let (gi, gj) = (gens[i].clone(), gens[j].clone());
            for k in 0..s {
                let (x, y) = (gi[k] as i64, gj[k] as i64);
                gens[i][k] = md(ag * x % mi + bg * y % mi);
                gens[j][k] = md(-tc * x % mi + sc * y % mi);
            }
            orders[i] = g as u64;
            orders[j] = a / g as u64 * b;
        }
    }
    let keep: Vec<usize> = (0..s).filter(|&i| orders[i] > 1).collect();
    Cokernel {
        modulus: m,
        orders: keep.iter().map(|&i| orders[i]).collect(),
        coord_rows: keep.iter().map(|&i| rows[i].clone()).collect(),
        generators: keep.iter().map(|&i| gens[i].clone()).collect(),
    }
}

/// A subquotient ker(d_out)/im(d_in) of (ℤ/m)^n with element tracking.
#[derive(Clone, Debug)]
pub struct Presentation {
    modulus: u64,
    ambient: usize,
    invariant_factors: Vec<u64>,
    generators: Vec<Vec<u64>>,
    v_inv: ModMatrix,
    pivots: Vec<u64>,
    kernel_index: Vec<usize>,
    scales: Vec<u64>,
    coord_rows: Vec<Vec<u64>>,
}

impl Presentation {
    /// Builds ker(A)/im(d_in) from a diagonalization of A = d_out.
    ///
    /// The caller guarantees d_out·d_in = 0 (see [`homology_at`]).
    pub fn from_diagonalization(d_out: &Diagonalization, d_in: &ModMatrix) -> Result<Self, LinAlgError> {
        let m = d_out.modulus();
        let n = d_out.cols();
        if d_in.rows() != n {
            return Err(LinAlgError::DimensionMismatch(format!(
                "incoming differential has {} rows, ambient dimension is {n}",
                d_in.rows()
            )));
        }
        let mut kernel_index = Vec::new();
        let mut scales = Vec::new();
        for i in 0..n {
            let g = d_out.kernel_order(i);
            if g > 1 {
                kernel_index.push(i);
                scales.push(m / g);
            }
        }
        let s = kernel_index.len();
        let pivots: Vec<u64> = (0..n).map(|i| d_out.pivot(i)).collect();
        let v_inv = d_out.v_inv().clone();

        let mut rel = ModMatrix::zeros(m, s, d_in.cols() + s);
        for j in 0..d_in.cols() {
            let y = v_inv.mul_vec(&d_in.column(j));
            for (k, &i) in kernel_index.iter().enumerate() {
                if y[i] % scales[k] != 0 {
                    return Err(LinAlgError::CompositionNotZero { rows: n, cols: d_in.cols(), row: i, col: j });
                }
                rel.set(k, j, y[i] / scales[k]);
            }
            for (i, &p) in pivots.iter().enumerate() {
                if p * y[i] % m != 0 {
                    return Err(LinAlgError::CompositionNotZero { rows: n, cols: d_in.cols(), row: i, col: j });
                }
            }
        }
        for k in 0..s {
            rel.set(k, d_in.cols() + k, m / scales[k]);
        }
        let cok = cokernel(&rel);

        let v = d_out.v();
        let generators = cok
            .generators
            .iter()
            .map(|coeffs| {
                let mut x = vec![0u64; n];
                for (k, &i) in kernel_index.iter().enumerate() {
                    let c = coeffs[k] * scales[k] % m;
                    if c == 0 {
                        continue;
                    }
                    for (r, xr) in x.iter_mut().enumerate() {
                        *xr = (*xr + c * v.get(r, i)) % m;
                    }
                }
                x
            })
            .collect();

        Ok(Presentation {
            modulus: m,
            ambient: n,
            invariant_factors: cok.orders,
            generators,
            v_inv,
            pivots,
            kernel_index,
            scales,
            coord_rows: cok.coord_rows,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.invariant_factors.iter().map(|&d| BigUint::from(d)).product()
    }

    /// Whether z lies in ker(d_out).
    pub fn is_cocycle(&self, z: &[u64]) -> bool {
        z.len() == self.ambient && {
            let y = self.v_inv.mul_vec(z);
            y.iter().zip(&self.pivots).all(|(&yi, &p)| p * yi % self.modulus == 0)
        }
    }

    /// Coordinates of the class of a cocycle over the invariant factors.
    pub fn reduce(&self, z: &[u64]) -> Result<Vec<u64>, LinAlgError> {
        if z.len() != self.ambient {
            return Err(LinAlgError::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                z.len(),
                self.ambient
            )));
        }
        let m = self.modulus;
        let y = self.v_inv.mul_vec(z);
        if !y.iter().zip(&self.pivots).all(|(&yi, &p)| p * yi % m == 0) {
            return Err(LinAlgError::NotACocycle);
        }
        let c: Vec<u64> = self.kernel_index.iter().zip(&self.scales).map(|(&i, &sc)| y[i] / sc).collect();
        Ok(self
            .coord_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, &e)| row.iter().zip(&c).map(|(a, b)| a * b % m).sum::<u64>() % e)
            .collect())
    }

    /// The cocycle representing the given coordinate vector.
    pub fn representative(&self, coords: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let mut x = vec![0u64; self.ambient];
        for (g, &c) in self.generators.iter().zip(coords) {
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi = (*xi + c % m * gi) % m;
            }
        }
        x
    }
}

/// ker(d_out)/im(d_in) over ℤ/m.
pub fn homology_at(d_in: &ModMatrix, d_out: &ModMatrix) -> Result<Presentation, LinAlgError> {
    d_out.check_composition_zero(d_in)?;
    let diag = diagonalize(d_out, None);
    Presentation::from_diagonalization(&diag, d_in)
}

/// Homology of a complex of modules ⊕ℤ/o_k (each o_k | m), given by
/// matrices over ℤ/m that respect the relations.
///
/// `mid_orders` are the orders of the coordinates of the middle module and
/// `out_orders` those of the target of `d_out`.
pub fn homology_with_orders(
    d_in: &ModMatrix,
    d_out: &ModMatrix,
    mid_orders: &[u64],
    out_orders: &[u64],
) -> Result<Presentation, LinAlgError> {
    let m = d_out.modulus();
    if mid_orders.len() != d_out.cols() || out_orders.len() != d_out.rows() {
        return Err(LinAlgError::DimensionMismatch("order lists do not match the differentials".into()));
    }
    let rel_cols: Vec<Vec<u64>> = mid_orders
        .iter()
        .enumerate()
        .filter(|(_, &o)| o % m != 0)
        .map(|(k, &o)| {
            let mut c = vec![0u64; mid_orders.len()];
            c[k] = o;
            c
        })
        .collect();
    let rel = ModMatrix::from_columns(m, mid_orders.len(), &rel_cols);
    let d_in_aug = if rel_cols.is_empty() { d_in.clone() } else { ModMatrix::hstack(&[d_in, &rel]) };
    let scale: Vec<u64> = out_orders.iter().map(|&o| m / o).collect();
    let d_out_scaled = d_out.scale_rows(&scale);
    homology_at(&d_in_aug, &d_out_scaled)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_differentials() {
        let p = homology_at(&ModMatrix::zeros(6, 3, 0), &ModMatrix::zeros(6, 0, 3)).unwrap();
        assert_eq!(p.invariant_factors(), &[6, 6, 6]);
    }

    #[test]
    fn times_two_on_z4() {
        let p = homology_at(&ModMatrix::from_rows(4, &[vec![2]]), &ModMatrix::zeros(4, 0, 1)).unwrap();
        assert_eq!(p.invariant_factors(), &[2]);
        assert_eq!(p.reduce(&[1]).unwrap(), vec![1]);
        assert_eq!(p.reduce(&[2]).unwrap(), vec![0]);
        assert_eq!(p.reduce(&[3]).unwrap(), vec![1]);
    }

    #[test]
    fn identity_kills_everything() {
        let p = homology_at(&ModMatrix::identity(5, 2), &ModMatrix::zeros(5, 1, 2)).unwrap();
        assert!(p.is_trivial());
    }

    #[test]
    fn composition_checked() {
        let err = homology_at(&ModMatrix::identity(3, 1), &ModMatrix::identity(3, 1)).unwrap_err();
        assert!(matches!(err, LinAlgError::CompositionNotZero { .. }));
    }

    #[test]
    fn cokernel_chain() {
        // ℤ/4 ⊕ ℤ/6 in chain form
        let rel = ModMatrix::from_rows(12, &[vec![4, 0], vec![0, 6]]);
        let c = cokernel(&rel);
        assert_eq!(c.orders, vec![2, 12]);
        let rel = ModMatrix::from_rows(12, &[vec![3, 0], vec![0, 4]]);
        assert_eq!(cokernel(&rel).orders, vec![12]);
    }

    #[test]
    fn twisted_module() {
        // C₂ acting by −1 on ℤ/4: H¹ = ℤ/2 from the complex ℤ/4 → ℤ/4 → ℤ/4 with d⁰ = −2, d¹ = 0
        let d0 = ModMatrix::from_rows(4, &[vec![2]]);
        let d1 = ModMatrix::from_rows(4, &[vec![0]]);
        let p = homology_with_orders(&d0, &d1, &[4], &[4]).unwrap();
        assert_eq!(p.invariant_factors(), &[2]);
        // a ℤ/2 coordinate inside ℤ/4
        let p = homology_with_orders(&ModMatrix::zeros(4, 1, 0), &ModMatrix::zeros(4, 0, 1), &[2], &[]).unwrap();
        assert_eq!(p.invariant_factors(), &[2]);
    }
}
