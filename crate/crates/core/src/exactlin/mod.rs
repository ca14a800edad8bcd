//! Exact linear algebra over ℤ, ℤ/m and ℚ.
//!
//! Everything cohomological in the crate bottoms out here: cochain
//! differentials are [`ModMatrix`] values, cohomology groups are
//! [`Presentation`]s, and maps between them are [`GroupHom`]s whose
//! kernels and images are compared with integer Smith normal forms.

mod coords;
mod intmat;
mod modmat;
mod presentation;
mod rational;
mod sparse;

pub use coords::{
    contains, hom_kernel, quotient_invariants, subgroup_invariants, subgroups_equal, ExactnessVerdict, GroupHom,
};
pub use intmat::{smith_normal_form, IntMatrix, SmithForm};
pub use modmat::{diagonalize, image_annihilator, inverse_mod, solve_mod, Diagonalization, ModMatrix};
pub use presentation::{cokernel, homology_at, homology_with_orders, Cokernel, Presentation};
pub use rational::RationalMatrix;
pub use sparse::SparseMatrix;

use thiserror::Error;

/// Largest modulus accepted by the residue arithmetic.
///
/// Products of two residues stay below 2^40, which lets row updates
/// accumulate lazily in `u64` before a reduction is needed.
pub const MAX_MODULUS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("d_out * d_in is not zero ({rows}x{cols} product has a nonzero entry at ({row}, {col}))")]
    CompositionNotZero { rows: usize, cols: usize, row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus {0} outside the supported range 2..={max}", max = MAX_MODULUS)]
    ModulusOutOfRange(u64),
    #[error("vector is not in the kernel of the outgoing differential")]
    NotACocycle,
}

pub fn check_modulus(m: u64) -> Result<(), LinAlgError> {
    if (2..=MAX_MODULUS).contains(&m) {
        Ok(())
    } else {
        Err(LinAlgError::ModulusOutOfRange(m))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended gcd on non-negative inputs: returns (g, s, t) with s*a + t*b = g.
pub(crate) fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// Smallest non-negative q with p*q ≡ v (mod m), if one exists.
pub(crate) fn divide_mod(v: u64, p: u64, m: u64) -> Option<u64> {
    let v = v % m;
    let p = p % m;
    if v == 0 {
        return Some(0);
    }
    let g = gcd(p, m);
    if v % g != 0 {
        return None;
    }
    let mg = m / g;
    let pinv = inv_mod((p / g) % mg, mg)?;
    Some(((v / g) % mg) * pinv % mg)
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i64, m as i64);
    if g != 1 {
        return None;
    }
    Some(s.rem_euclid(m as i64) as u64)
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divide_mod_cases() {
        assert_eq!(divide_mod(2, 2, 4), Some(1));
        assert_eq!(divide_mod(1, 2, 4), None);
        assert_eq!(divide_mod(3, 5, 12), Some(3));
        assert_eq!(divide_mod(0, 0, 7), Some(0));
        assert_eq!(divide_mod(3, 0, 7), None);
    }

    #[test]
    fn ext_gcd_bezout() {
        for a in 0..30i64 {
            for b in 0..30i64 {
                let (g, s, t) = ext_gcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert_eq!(g as u64, gcd(a as u64, b as u64));
            }
        }
    }
}
