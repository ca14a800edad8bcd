//! Subgroups and homomorphisms of groups ⊕ℤ/o_j given in coordinates.

use super::intmat::{smith_normal_form, IntMatrix};
use super::modmat::{diagonalize, ModMatrix};
use super::lcm;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn small_mod(x: &BigInt, o: u64) -> u64 {
    x.mod_floor(&big(o)).to_u64().expect("residue fits")
}

/// [G | diag(o)] as an integer matrix.
fn generator_matrix(orders: &[u64], gens: &[Vec<u64>]) -> IntMatrix {
    let k = orders.len();
    let mut a = IntMatrix::zeros(k, gens.len() + k);
    for (j, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), k, "generator length mismatch");
        for i in 0..k {
            a.set(i, j, big(g[i] % orders[i]));
        }
    }
    for i in 0..k {
        a.set(i, gens.len() + i, big(orders[i]));
    }
    a
}

/// Whether v lies in the subgroup generated by `gens`.
pub fn contains(orders: &[u64], gens: &[Vec<u64>], v: &[u64]) -> bool {
    assert_eq!(v.len(), orders.len());
    if orders.is_empty() {
        return true;
    }
    let a = generator_matrix(orders, gens);
    let b: Vec<BigInt> = v.iter().zip(orders).map(|(&x, &o)| big(x % o)).collect();
    a.solve(&b).is_some()
}

/// Invariant factors of the subgroup generated by `gens`.
pub fn subgroup_invariants(orders: &[u64], gens: &[Vec<u64>]) -> Vec<u64> {
    if gens.is_empty() || orders.is_empty() {
        return Vec::new();
    }
    let g = gens.len();
    let a = generator_matrix(orders, gens);
    let kernel = a.kernel_basis();
    let mut rel = IntMatrix::zeros(g, kernel.len());
    for (j, col) in kernel.iter().enumerate() {
        for i in 0..g {
            rel.set(i, j, col[i].clone());
        }
    }
    smith_normal_form(&rel)
        .diagonal()
        .iter()
        .filter_map(|d| {
            let d = d.to_u64().expect("invariant factor fits");
            (d != 1).then_some(d)
        })
        .collect()
}

/// Invariant factors of the quotient of ⊕ℤ/o_j by the subgroup generated by `gens`.
pub fn quotient_invariants(orders: &[u64], gens: &[Vec<u64>]) -> Vec<u64> {
    if orders.is_empty() {
        return Vec::new();
    }
    smith_normal_form(&generator_matrix(orders, gens))
        .diagonal()
        .iter()
        .filter_map(|d| {
            let d = d.to_u64().expect("invariant factor fits");
            (d != 1).then_some(d)
        })
        .collect()
}

pub fn subgroups_equal(orders: &[u64], a: &[Vec<u64>], b: &[Vec<u64>]) -> bool {
    a.iter().all(|x| contains(orders, b, x)) && b.iter().all(|x| contains(orders, a, x))
}

/// Generators of the kernel of the homomorphism with the given columns.
pub fn hom_kernel(src: &[u64], dst: &[u64], columns: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let k = src.len();
    assert_eq!(columns.len(), k);
    if k == 0 {
        return Vec::new();
    }
    if dst.is_empty() {
        return (0..k).map(|j| unit(k, j)).collect();
    }
    let big_m = dst.iter().fold(1u64, |acc, &o| lcm(acc, o));
    // x ↦ (M/o_i)·(Mx)_i mod M has the same kernel; echelon it to at most k rows
    let scaled = ModMatrix::from_fn(big_m, dst.len(), k, |i, j| (big_m / dst[i]) * (columns[j][i] % dst[i]));
    let compressed = compress_rows(&scaled);
    let r = compressed.len();
    let mut a = IntMatrix::zeros(r, k + r);
    for (i, row) in compressed.iter().enumerate() {
        for j in 0..k {
            a.set(i, j, big(row[j]));
        }
        a.set(i, k + i, big(big_m));
    }
    let mut out: Vec<Vec<u64>> = a
        .kernel_basis()
        .iter()
        .map(|col| (0..k).map(|j| small_mod(&col[j], src[j])).collect::<Vec<u64>>())
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    out.dedup();
    out
}

fn unit(k: usize, j: usize) -> Vec<u64> {
    let mut v = vec![0; k];
    v[j] = 1;
    v
}

/// Nonzero rows of U·a for an invertible U over ℤ/M; at most min(rows, cols) survive.
fn compress_rows(a: &ModMatrix) -> Vec<Vec<u64>> {
    let e = diagonalize(a, Some(a));
    let ua = e.transformed_rhs().expect("rhs supplied");
    (0..ua.rows()).map(|i| ua.row(i)).filter(|row| row.iter().any(|&x| x != 0)).map(|r| r.to_vec()).collect()
}

/// A homomorphism ⊕ℤ/src_j → ⊕ℤ/dst_i stored by the images of the unit vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    pub src: Vec<u64>,
    pub dst: Vec<u64>,
    /// `columns[j]` is the image of the j-th generator.
    pub columns: Vec<Vec<u64>>,
}

impl GroupHom {
    pub fn new(src: Vec<u64>, dst: Vec<u64>, columns: Vec<Vec<u64>>) -> Self {
        assert_eq!(columns.len(), src.len(), "one column per source generator");
        let columns = columns
            .into_iter()
            .map(|c| {
                assert_eq!(c.len(), dst.len(), "column length must match target rank");
                c.iter().zip(&dst).map(|(&x, &o)| x % o).collect()
            })
            .collect();
        GroupHom { src, dst, columns }
    }

    pub fn zero(src: Vec<u64>, dst: Vec<u64>) -> Self {
        let columns = vec![vec![0; dst.len()]; src.len()];
        GroupHom { src, dst, columns }
    }

    pub fn identity(orders: Vec<u64>) -> Self {
        let k = orders.len();
        GroupHom { src: orders.clone(), dst: orders, columns: (0..k).map(|j| unit(k, j)).collect() }
    }

    /// Relations go to zero: src_j · column_j = 0.
    pub fn is_well_defined(&self) -> bool {
        self.columns
            .iter()
            .zip(&self.src)
            .all(|(c, &o)| c.iter().zip(&self.dst).all(|(&x, &d)| (x as u128 * o as u128) % d as u128 == 0))
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.src.len());
        let mut y = vec![0u64; self.dst.len()];
        for (c, &xj) in self.columns.iter().zip(x) {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = ((*yi as u128 + c[i] as u128 * xj as u128) % self.dst[i] as u128) as u64;
            }
        }
        y
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &GroupHom) -> GroupHom {
        assert_eq!(self.dst, then.src, "composition of incompatible maps");
        GroupHom::new(self.src.clone(), then.dst.clone(), self.columns.iter().map(|c| then.apply(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|&x| x == 0))
    }

    pub fn kernel(&self) -> Vec<Vec<u64>> {
        hom_kernel(&self.src, &self.dst, &self.columns)
    }

    pub fn image(&self) -> Vec<Vec<u64>> {
        self.columns.iter().filter(|c| c.iter().any(|&x| x != 0)).cloned().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_empty()
    }

    pub fn is_surjective(&self) -> bool {
        let k = self.dst.len();
        (0..k).all(|i| contains(&self.dst, &self.columns, &unit(k, i)))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Row-major matrix (rows indexed by target coordinates) for reports.
    pub fn matrix_rows(&self) -> Vec<Vec<u64>> {
        (0..self.dst.len()).map(|i| self.columns.iter().map(|c| c[i]).collect()).collect()
    }
}

/// Outcome of comparing im(f) with ker(g) inside a common group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessVerdict {
    pub exact: bool,
    pub image_invariants: Vec<u64>,
    pub kernel_invariants: Vec<u64>,
    /// g∘f = 0, checked on its own so a non-complex shows up separately.
    pub composite_zero: bool,
}

impl ExactnessVerdict {
    pub fn at(f: &GroupHom, g: &GroupHom) -> Self {
        assert_eq!(f.dst, g.src, "maps do not meet in a common group");
        let orders = &f.dst;
        let image = f.image();
        let kernel = g.kernel();
        ExactnessVerdict {
            exact: subgroups_equal(orders, &image, &kernel),
            image_invariants: subgroup_invariants(orders, &image),
            kernel_invariants: subgroup_invariants(orders, &kernel),
            composite_zero: f.then(g).is_zero(),
        }
    }
}
