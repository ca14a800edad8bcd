//! Group cohomology from the normalized inhomogeneous bar complex.

use crate::cochain::{SizeGuard, SizeGuardExceeded, TupleCodec};
use crate::exactlin::{
    check_modulus, homology_with_orders, GroupHom, LinAlgError, ModMatrix, Presentation,
};
use crate::fingroup::FiniteGroup;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    SizeGuard(#[from] SizeGuardExceeded),
    #[error("invalid coefficient module: {0}")]
    InvalidModule(String),
    #[error("map is not a homomorphism compatible with the coefficients")]
    NotHomomorphism,
    #[error("degree {degree} needs a complex built to degree {needed}")]
    DegreeOutOfRange { degree: usize, needed: usize },
    #[error("{0}")]
    Precondition(String),
}

/// A finite abelian group ⊕ℤ/o_k (each o_k | m) with a G-action by matrices over ℤ/m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientModule {
    modulus: u64,
    orders: Vec<u64>,
    action: Vec<ModMatrix>,
}

impl CoefficientModule {
    /// ℤ/m with trivial action.
    pub fn trivial_cyclic(m: u64, group_order: usize) -> Self {
        CoefficientModule { modulus: m, orders: vec![m], action: vec![ModMatrix::identity(m, 1); group_order] }
    }

    /// ℤ/m with g acting as multiplication by `values[g]`.
    pub fn cyclic_character(m: u64, group: &FiniteGroup, values: &[u64]) -> Result<Self, BarError> {
        let action = values.iter().map(|&v| ModMatrix::from_fn(m, 1, 1, |_, _| v)).collect();
        Self::new(m, vec![m], action, group)
    }

    /// Validates that the matrices respect the relations and form a representation.
    pub fn new(m: u64, orders: Vec<u64>, action: Vec<ModMatrix>, group: &FiniteGroup) -> Result<Self, BarError> {
        check_modulus(m)?;
        let r = orders.len();
        if let Some(&o) = orders.iter().find(|&&o| o < 2 || m % o != 0) {
            return Err(BarError::InvalidModule(format!("order {o} does not divide the modulus {m}")));
        }
        if action.len() != group.order() {
            return Err(BarError::InvalidModule(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        if action.iter().any(|a| a.rows() != r || a.cols() != r || a.modulus() != m) {
            return Err(BarError::InvalidModule("action matrices have the wrong shape".into()));
        }
        let module = CoefficientModule { modulus: m, orders, action };
        for (g, a) in module.action.iter().enumerate() {
            for k in 0..r {
                for i in 0..r {
                    if module.orders[k] * a.get(i, k) % module.orders[i] != 0 {
                        return Err(BarError::InvalidModule(format!("element {g} does not respect the relations")));
                    }
                }
            }
        }
        if !module.same_mod_relations(&module.action[0], &ModMatrix::identity(m, r)) {
            return Err(BarError::InvalidModule("the identity does not act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let prod = module.action[g].mul(&module.action[h]);
                if !module.same_mod_relations(&prod, &module.action[group.mul(g, h)]) {
                    return Err(BarError::InvalidModule(format!("action is not multiplicative at ({g}, {h})")));
                }
            }
        }
        Ok(module)
    }

    fn same_mod_relations(&self, a: &ModMatrix, b: &ModMatrix) -> bool {
        (0..a.rows()).all(|i| (0..a.cols()).all(|j| (a.get(i, j) + self.modulus - b.get(i, j)) % self.orders[i] == 0))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn action(&self, g: usize) -> &ModMatrix {
        &self.action[g]
    }

    pub fn is_trivial(&self) -> bool {
        let id = ModMatrix::identity(self.modulus, self.rank());
        self.action.iter().all(|a| self.same_mod_relations(a, &id))
    }

    /// The module restricted along a map of groups `phi: H → G`.
    pub fn pullback(&self, phi: &[usize]) -> CoefficientModule {
        CoefficientModule {
            modulus: self.modulus,
            orders: self.orders.clone(),
            action: phi.iter().map(|&g| self.action[g].clone()).collect(),
        }
    }
}

/// The normalized (or, for cross-checks, full) bar cochain complex C⁰ → C¹ → … → C^{n_max}.
#[derive(Clone, Debug)]
pub struct GroupCochainComplex {
    group: FiniteGroup,
    module: CoefficientModule,
    codec: TupleCodec,
    n_max: usize,
    d: Vec<ModMatrix>,
}

impl GroupCochainComplex {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.module
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn codec(&self) -> TupleCodec {
        self.codec
    }

    /// Number of coordinates of Cⁿ.
    pub fn dim(&self, n: usize) -> usize {
        self.codec.count(n) * self.module.rank()
    }

    /// The differential Cⁿ → Cⁿ⁺¹.
    pub fn differential(&self, n: usize) -> &ModMatrix {
        &self.d[n]
    }

    /// Coefficient orders for each coordinate of Cⁿ.
    pub fn orders(&self, n: usize) -> Vec<u64> {
        let r = self.module.orders();
        (0..self.codec.count(n)).flat_map(|_| r.iter().copied()).collect()
    }

    /// Coordinate of the value f(tuple) in component k.
    pub fn coordinate(&self, tuple: &[usize], k: usize) -> Option<usize> {
        self.codec.encode(tuple).map(|i| i * self.module.rank() + k)
    }

    pub fn cohomology(&self, n: usize) -> Result<Presentation, BarError> {
        if n >= self.n_max {
            return Err(BarError::DegreeOutOfRange { degree: n, needed: n + 1 });
        }
        let m = self.module.modulus();
        let d_in = if n == 0 { ModMatrix::zeros(m, self.dim(0), 0) } else { self.d[n - 1].clone() };
        Ok(homology_with_orders(&d_in, &self.d[n], &self.orders(n), &self.orders(n + 1))?)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BarOptions {
    pub normalized: bool,
    pub guard: SizeGuard,
}

impl Default for BarOptions {
    fn default() -> Self {
        BarOptions { normalized: true, guard: SizeGuard::default() }
    }
}

pub fn build_bar_complex(
    group: &FiniteGroup,
    module: &CoefficientModule,
    n_max: usize,
) -> Result<GroupCochainComplex, BarError> {
    build_bar_complex_with(group, module, n_max, BarOptions::default())
}

pub fn build_bar_complex_with(
    group: &FiniteGroup,
    module: &CoefficientModule,
    n_max: usize,
    opts: BarOptions,
) -> Result<GroupCochainComplex, BarError> {
    if n_max < 1 {
        return Err(BarError::Precondition("n_max must be at least 1".into()));
    }
    if module.action.len() != group.order() {
        return Err(BarError::InvalidModule("module belongs to a group of another order".into()));
    }
    let codec = TupleCodec::new(group.order(), opts.normalized);
    let r = module.rank();
    let m = module.modulus();
    for n in 0..n_max {
        opts.guard.check(codec.count(n + 1) * r, codec.count(n) * r)?;
    }
    let mut d = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let (rows, cols) = (codec.count(n + 1) * r, codec.count(n) * r);
        let mut mat = ModMatrix::zeros(m, rows, cols);
        let mut tail = Vec::with_capacity(n + 1);
        for (ri, g) in codec.tuples(n + 1).enumerate() {
            // g₁·f(g₂,…)
            if let Some(c) = codec.encode(&g[1..]) {
                let a = module.action(g[0]);
                for k2 in 0..r {
                    for k in 0..r {
                        let v = a.get(k2, k);
                        if v != 0 {
                            mat.add_at(ri * r + k2, c * r + k, v);
                        }
                    }
                }
            }
            for i in 1..=n {
                tail.clear();
                tail.extend_from_slice(&g[..i - 1]);
                tail.push(group.mul(g[i - 1], g[i]));
                tail.extend_from_slice(&g[i + 1..]);
                if let Some(c) = codec.encode(&tail) {
                    for k in 0..r {
                        mat.add_sign(ri * r + k, c * r + k, i % 2 == 0);
                    }
                }
            }
            if let Some(c) = codec.encode(&g[..n]) {
                for k in 0..r {
                    mat.add_sign(ri * r + k, c * r + k, (n + 1) % 2 == 0);
                }
            }
        }
        d.push(mat);
    }
    let complex = GroupCochainComplex { group: group.clone(), module: module.clone(), codec, n_max, d };
    for n in 1..n_max {
        let prod = complex.d[n].mul(&complex.d[n - 1]);
        let orders = complex.orders(n + 1);
        let ok = (0..prod.rows()).all(|i| (0..prod.cols()).all(|j| prod.get(i, j) % orders[i] == 0));
        if !ok {
            return Err(BarError::LinAlg(LinAlgError::CompositionNotZero {
                rows: prod.rows(),
                cols: prod.cols(),
                row: 0,
                col: 0,
            }));
        }
    }
    Ok(complex)
}

/// Hⁿ(G, M) bundled with the complex it came from.
#[derive(Clone, Debug)]
pub struct GroupCohomology {
    pub complex: GroupCochainComplex,
    pub degree: usize,
    pub presentation: Presentation,
}

impl GroupCohomology {
    pub fn compute(group: &FiniteGroup, module: &CoefficientModule, n: usize) -> Result<Self, BarError> {
        Self::compute_with(group, module, n, BarOptions::default())
    }

    pub fn compute_with(
        group: &FiniteGroup,
        module: &CoefficientModule,
        n: usize,
        opts: BarOptions,
    ) -> Result<Self, BarError> {
        let complex = build_bar_complex_with(group, module, n + 1, opts)?;
        let presentation = complex.cohomology(n)?;
        Ok(GroupCohomology { complex, degree: n, presentation })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.presentation.invariant_factors()
    }

    /// Pullback of an n-cochain on G along `phi: H → G` to an n-cochain of `target`.
    pub fn pull_back_cochain(&self, phi: &[usize], target: &GroupCochainComplex, f: &[u64]) -> Vec<u64> {
        let n = self.degree;
        let r = self.complex.module.rank();
        let mut out = vec![0u64; target.dim(n)];
        let tc = target.codec();
        for (idx, h) in tc.tuples(n).enumerate() {
            let g: Vec<usize> = h.iter().map(|&x| phi[x]).collect();
            if let Some(c) = self.complex.codec.encode(&g) {
                for k in 0..r {
                    out[idx * r + k] = f[c * r + k];
                }
            }
        }
        out
    }
}

/// The group cohomology Hⁿ(G, M) as a presentation.
pub fn group_cohomology(group: &FiniteGroup, module: &CoefficientModule, n: usize) -> Result<Presentation, BarError> {
    Ok(GroupCohomology::compute(group, module, n)?.presentation)
}

/// Alias spelling out that the module may carry a nontrivial action.
pub fn cohomology_with_module_coefficients(
    group: &FiniteGroup,
    module: &CoefficientModule,
    n: usize,
) -> Result<Presentation, BarError> {
    group_cohomology(group, module, n)
}

/// The map Hⁿ(G, M) → Hⁿ(H, φ*M) induced by a homomorphism `phi: H → G`.
///
/// `to` must be computed for H with the pulled-back module.
pub fn induced_map(phi: &[usize], from: &GroupCohomology, to: &GroupCohomology) -> Result<GroupHom, BarError> {
    let g = from.complex.group();
    let h = to.complex.group();
    if from.degree != to.degree || !h.is_homomorphism(g, phi) {
        return Err(BarError::NotHomomorphism);
    }
    if to.complex.module() != &from.complex.module().pullback(phi) {
        return Err(BarError::NotHomomorphism);
    }
    let columns = from
        .presentation
        .generators()
        .iter()
        .map(|z| to.presentation.reduce(&from.pull_back_cochain(phi, &to.complex, z)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupHom::new(
        from.invariant_factors().to_vec(),
        to.invariant_factors().to_vec(),
        columns,
    ))
}

/// Hⁿ(G, ℤ/m) → Hⁿ(G, ℤ/m') for m | m', induced by x ↦ (m'/m)·x.
pub fn coefficient_change_map(from: &GroupCohomology, to: &GroupCohomology) -> Result<GroupHom, BarError> {
    let (m, m2) = (from.complex.module().modulus(), to.complex.module().modulus());
    if m2 % m != 0 || from.degree != to.degree || from.complex.group() != to.complex.group() {
        return Err(BarError::Precondition("coefficient change needs m | m' on the same group and degree".into()));
    }
    if !from.complex.module().is_trivial() || !to.complex.module().is_trivial() || from.complex.module().rank() != 1 {
        return Err(BarError::Precondition("coefficient change is implemented for trivial cyclic coefficients".into()));
    }
    let f = m2 / m;
    let columns = from
        .presentation
        .generators()
        .iter()
        .map(|z| to.presentation.reduce(&z.iter().map(|x| x * f % m2).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupHom::new(from.invariant_factors().to_vec(), to.invariant_factors().to_vec(), columns))
}

/// Hⁿ(G, ℚ/ℤ), read off as the image of Hⁿ(G, ℤ/m) → Hⁿ(G, ℤ/(m·|G|)).
///
/// Needs |G| | m and n ≥ 1. Multiplication by |G| kills Hⁿ(G, ℚ/ℤ), so
/// the Bockstein part of Hⁿ(G, ℤ/m) dies under the comparison map and
/// what survives is the divisible-coefficient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibleCoefficients {
    pub at_m: Vec<u64>,
    pub at_multiple: Vec<u64>,
    pub stable: Vec<u64>,
}

pub fn divisible_coefficient_cohomology(group: &FiniteGroup, n: usize, m: u64) -> Result<DivisibleCoefficients, BarError> {
    let order = group.order() as u64;
    if n == 0 || m % order != 0 {
        return Err(BarError::Precondition(format!("need n >= 1 and |G| = {order} dividing m = {m}")));
    }
    let m2 = m * order;
    check_modulus(m2)?;
    let a = GroupCohomology::compute(group, &CoefficientModule::trivial_cyclic(m, group.order()), n)?;
    let b = GroupCohomology::compute(group, &CoefficientModule::trivial_cyclic(m2, group.order()), n)?;
    let map = coefficient_change_map(&a, &b)?;
    let stable = crate::exactlin::subgroup_invariants(&map.dst, &map.image());
    Ok(DivisibleCoefficients {
        at_m: a.invariant_factors().to_vec(),
        at_multiple: b.invariant_factors().to_vec(),
        stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial(m: u64, g: &FiniteGroup) -> CoefficientModule {
        CoefficientModule::trivial_cyclic(m, g.order())
    }

    #[test]
    fn trivial_group_has_no_cohomology() {
        let g = FiniteGroup::trivial();
        for n in 1..4 {
            assert!(group_cohomology(&g, &trivial(5, &g), n).unwrap().is_trivial());
        }
    }

    #[test]
    fn cyclic_groups() {
        for n in 1..=6usize {
            let g = FiniteGroup::cyclic(n);
            for m in 2..=8u64 {
                let gc = crate::exactlin::gcd(n as u64, m);
                let expect: Vec<u64> = if gc > 1 { vec![gc] } else { vec![] };
                assert_eq!(group_cohomology(&g, &trivial(m, &g), 1).unwrap().invariant_factors(), &expect[..]);
                assert_eq!(group_cohomology(&g, &trivial(m, &g), 2).unwrap().invariant_factors(), &expect[..]);
            }
        }
    }

    #[test]
    fn c2_structure() {
        let g = FiniteGroup::cyclic(2);
        let c = build_bar_complex(&g, &trivial(2, &g), 3).unwrap();
        assert_eq!(c.dim(2), 1);
        assert_eq!(group_cohomology(&g, &trivial(2, &g), 2).unwrap().invariant_factors(), &[2]);
    }

    #[test]
    fn sign_twisted_coefficients() {
        let g = FiniteGroup::cyclic(2);
        let neg3 = CoefficientModule::cyclic_character(3, &g, &[1, 2]).unwrap();
        assert!(group_cohomology(&g, &neg3, 1).unwrap().is_trivial());
        assert!(group_cohomology(&g, &neg3, 2).unwrap().is_trivial());
        let neg4 = CoefficientModule::cyclic_character(4, &g, &[1, 3]).unwrap();
        assert_eq!(group_cohomology(&g, &neg4, 1).unwrap().invariant_factors(), &[2]);
        assert!(CoefficientModule::cyclic_character(4, &g, &[1, 2]).is_err());
    }

    #[test]
    fn normalized_agrees_with_full() {
        let g = FiniteGroup::symmetric(3);
        for n in 1..=2 {
            let a = group_cohomology(&g, &trivial(6, &g), n).unwrap();
            let full = GroupCohomology::compute_with(
                &g,
                &trivial(6, &g),
                n,
                BarOptions { normalized: false, guard: SizeGuard::default() },
            )
            .unwrap();
            assert_eq!(a.invariant_factors(), full.invariant_factors());
        }
    }

    #[test]
    fn inversion_on_h2_of_c3() {
        let g = FiniteGroup::cyclic(3);
        let h = GroupCohomology::compute(&g, &trivial(3, &g), 2).unwrap();
        let phi = vec![0, 2, 1];
        let map = induced_map(&phi, &h, &h).unwrap();
        assert_eq!(map.then(&map), GroupHom::identity(h.invariant_factors().to_vec()));
        assert_eq!(map.columns, vec![vec![2]]);
        let id = induced_map(&[0, 1, 2], &h, &h).unwrap();
        assert_eq!(id, GroupHom::identity(vec![3]));
    }

    #[test]
    fn schur_multipliers() {
        let s3 = FiniteGroup::symmetric(3);
        let d = divisible_coefficient_cohomology(&s3, 2, 36).unwrap();
        assert_eq!(d.at_m, vec![2]);
        assert!(d.stable.is_empty());
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(divisible_coefficient_cohomology(&v4, 2, 4).unwrap().stable, vec![2]);
        let c4 = FiniteGroup::cyclic(4);
        assert!(divisible_coefficient_cohomology(&c4, 2, 4).unwrap().stable.is_empty());
        assert_eq!(divisible_coefficient_cohomology(&c4, 1, 4).unwrap().stable, vec![4]);
    }
}
