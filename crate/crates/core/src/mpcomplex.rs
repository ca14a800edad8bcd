//! The matched-pair double complex C^{p,q} = maps T^p × N^q → ℤ/m and its cohomology.
//!
//! Tuples are stored left to right. For (𝐭; 𝐧) = (t₁,…,t_p; n₁,…,n_q):
//!
//! * δ_N f(𝐭; n₁,…,n_{q+1}) = f(𝐭◁n₁; n₂,…) + Σᵢ(−1)ⁱ f(𝐭; …,nᵢn_{i+1},…) + (−1)^{q+1} f(𝐭; n₁,…,n_q)
//! * δ_T f(s₁,…,s_{p+1}; 𝐧) = f(s₁,…,s_p; s_{p+1}▷𝐧) + Σⱼ(−1)ʲ f(…,s_k s_{k+1},…; 𝐧) + (−1)^{p+1} f(s₂,…; 𝐧)
//!   where the j-th merge uses k = p+1−j.
//!
//! The total complex of the edge-deleted part (p, q ≥ 1) has differential
//! D = δ_T + (−1)^p δ_N, and ℋⁱ(T,N,ℤ/m) is its cohomology in total degree i+1.

use crate::barcomplex::{BarError, CoefficientModule, GroupCohomology};
use crate::cochain::{SizeGuard, SizeGuardExceeded, TupleCodec};
use crate::exactlin::{
    check_modulus, diagonalize, homology_at, image_annihilator, ExactnessVerdict, GroupHom, LinAlgError, ModMatrix,
    Presentation, SparseMatrix,
};
use crate::fingroup::GroupMatchedPair;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MPError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    SizeGuard(#[from] SizeGuardExceeded),
    #[error(transparent)]
    Bar(#[from] BarError),
    #[error("bounds p_max = {p_max}, q_max = {q_max} are too small; need at least ({need_p}, {need_q})")]
    InsufficientBounds { p_max: usize, q_max: usize, need_p: usize, need_q: usize },
    #[error("the right action of N on T must be trivial here")]
    NonTrivialRightAction,
    #[error("identity {0} fails on the double complex")]
    IdentityFailed(&'static str),
    #[error("degree must be at least 1")]
    DegreeOutOfRange,
}

/// Normalized double complex with both edges (p = 0 or q = 0) included.
#[derive(Clone, Debug)]
pub struct MPDoubleComplex {
    pair: GroupMatchedPair,
    modulus: u64,
    p_max: usize,
    q_max: usize,
    tc: TupleCodec,
    nc: TupleCodec,
    guard: SizeGuard,
    delta_n: BTreeMap<(usize, usize), SparseMatrix>,
    delta_t: BTreeMap<(usize, usize), SparseMatrix>,
}

pub fn build_double_complex(
    pair: &GroupMatchedPair,
    m: u64,
    p_max: usize,
    q_max: usize,
) -> Result<MPDoubleComplex, MPError> {
    build_double_complex_with(pair, m, p_max, q_max, SizeGuard::default())
}

pub fn build_double_complex_with(
    pair: &GroupMatchedPair,
    m: u64,
    p_max: usize,
    q_max: usize,
    guard: SizeGuard,
) -> Result<MPDoubleComplex, MPError> {
    check_modulus(m)?;
    let tc = TupleCodec::normalized(pair.t().order());
    let nc = TupleCodec::normalized(pair.n().order());
    let mut dc = MPDoubleComplex {
        pair: pair.clone(),
        modulus: m,
        p_max,
        q_max,
        tc,
        nc,
        guard,
        delta_n: BTreeMap::new(),
        delta_t: BTreeMap::new(),
    };
    for p in 0..=p_max {
        for q in 0..=q_max {
            if q < q_max {
                guard.check(dc.dim(p, q + 1), dc.dim(p, q))?;
            }
            if p < p_max {
                guard.check(dc.dim(p + 1, q), dc.dim(p, q))?;
            }
        }
    }
    for p in 0..=p_max {
        for q in 0..=q_max {
            if q < q_max {
                let d = dc.build_delta_n(p, q);
                dc.delta_n.insert((p, q), d);
            }
            if p < p_max {
                let d = dc.build_delta_t(p, q);
                dc.delta_t.insert((p, q), d);
            }
        }
    }
    dc.check_identities()?;
    Ok(dc)
}

impl MPDoubleComplex {
    pub fn pair(&self) -> &GroupMatchedPair {
        &self.pair
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.p_max, self.q_max)
    }

    /// rank C^{p,q} = (|T|−1)^p (|N|−1)^q
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.tc.count(p) * self.nc.count(q)
    }

    /// Coordinate of f(𝐭; 𝐧), or `None` if some entry is an identity.
    pub fn index(&self, ts: &[usize], ns: &[usize]) -> Option<usize> {
        Some(self.tc.encode(ts)? * self.nc.count(ns.len()) + self.nc.encode(ns)?)
    }

    pub fn decode(&self, p: usize, q: usize, idx: usize) -> (Vec<usize>, Vec<usize>) {
        let nq = self.nc.count(q);
        (self.tc.decode(idx / nq, p), self.nc.decode(idx % nq, q))
    }

    /// Iterates (index, 𝐭, 𝐧) over the basis of C^{p,q}.
    pub fn basis(&self, p: usize, q: usize) -> impl Iterator<Item = (usize, Vec<usize>, Vec<usize>)> + '_ {
        (0..self.dim(p, q)).map(move |i| {
            let (t, n) = self.decode(p, q, i);
            (i, t, n)
        })
    }

    /// δ_N: C^{p,q} → C^{p,q+1}.
    pub fn delta_n(&self, p: usize, q: usize) -> &SparseMatrix {
        &self.delta_n[&(p, q)]
    }

    /// δ_T: C^{p,q} → C^{p+1,q}.
    pub fn delta_t(&self, p: usize, q: usize) -> &SparseMatrix {
        &self.delta_t[&(p, q)]
    }

    fn build_delta_n(&self, p: usize, q: usize) -> SparseMatrix {
        let n = self.pair.n();
        let mut d = SparseMatrix::zeros(self.modulus, self.dim(p, q + 1), self.dim(p, q));
        let mut buf = Vec::with_capacity(q + 1);
        for (row, ts, ns) in self.basis(p, q + 1) {
            let tn = self.pair.act_right_tuple(&ts, ns[0]);
            if let Some(c) = self.index(&tn, &ns[1..]) {
                d.add_at(row, c, 1);
            }
            for i in 1..=q {
                buf.clear();
                buf.extend_from_slice(&ns[..i - 1]);
                buf.push(n.mul(ns[i - 1], ns[i]));
                buf.extend_from_slice(&ns[i + 1..]);
                if let Some(c) = self.index(&ts, &buf) {
                    d.add_sign(row, c, i % 2 == 0);
                }
            }
            if let Some(c) = self.index(&ts, &ns[..q]) {
                d.add_sign(row, c, (q + 1) % 2 == 0);
            }
        }
        d.compact();
        d
    }

    fn build_delta_t(&self, p: usize, q: usize) -> SparseMatrix {
        let t = self.pair.t();
        let mut d = SparseMatrix::zeros(self.modulus, self.dim(p + 1, q), self.dim(p, q));
        let mut buf = Vec::with_capacity(p + 1);
        for (row, s, ns) in self.basis(p + 1, q) {
            let acted = self.pair.act_left_tuple(s[p], &ns);
            if let Some(c) = self.index(&s[..p], &acted) {
                d.add_at(row, c, 1);
            }
            for j in 1..=p {
                // merge the 1-based entries k, k+1
                let k = p + 1 - j;
                buf.clear();
                buf.extend_from_slice(&s[..k - 1]);
                buf.push(t.mul(s[k - 1], s[k]));
                buf.extend_from_slice(&s[k + 1..]);
                if let Some(c) = self.index(&buf, &ns) {
                    d.add_sign(row, c, j % 2 == 0);
                }
            }
            if let Some(c) = self.index(&s[1..], &ns) {
                d.add_sign(row, c, (p + 1) % 2 == 0);
            }
        }
        d.compact();
        d
    }

    fn check_identities(&self) -> Result<(), MPError> {
        for (&(p, q), dn) in &self.delta_n {
            if let Some(dn2) = self.delta_n.get(&(p, q + 1)) {
                if !dn2.mul(dn).is_zero() {
                    return Err(MPError::IdentityFailed("δ_N∘δ_N = 0"));
                }
            }
        }
        for (&(p, q), dt) in &self.delta_t {
            if let Some(dt2) = self.delta_t.get(&(p + 1, q)) {
                if !dt2.mul(dt).is_zero() {
                    return Err(MPError::IdentityFailed("δ_T∘δ_T = 0"));
                }
            }
            if let (Some(dn_a), Some(dn_b), Some(dt_b)) =
                (self.delta_n.get(&(p + 1, q)), self.delta_n.get(&(p, q)), self.delta_t.get(&(p, q + 1)))
            {
                if !dn_a.mul(dt).sub(&dt_b.mul(dn_b)).is_zero() {
                    return Err(MPError::IdentityFailed("δ_N∘δ_T = δ_T∘δ_N"));
                }
            }
        }
        Ok(())
    }

    fn require(&self, need_p: usize, need_q: usize) -> Result<(), MPError> {
        if self.p_max < need_p || self.q_max < need_q {
            Err(MPError::InsufficientBounds { p_max: self.p_max, q_max: self.q_max, need_p, need_q })
        } else {
            Ok(())
        }
    }

    /// Blocks (p, offset, dim) of Tot^k = ⊕_{p=1}^{k−1} C^{p,k−p}, ascending in p.
    pub fn total_blocks(&self, k: usize) -> Vec<TotalBlock> {
        let mut off = 0;
        (1..k)
            .map(|p| {
                let b = TotalBlock { p, q: k - p, offset: off, dim: self.dim(p, k - p) };
                off += b.dim;
                b
            })
            .collect()
    }

    pub fn total_dim(&self, k: usize) -> usize {
        self.total_blocks(k).iter().map(|b| b.dim).sum()
    }

    /// D: Tot^k → Tot^{k+1}. Needs p_max, q_max ≥ k.
    pub fn total_differential(&self, k: usize) -> Result<ModMatrix, MPError> {
        self.require(k.max(1), k.max(1))?;
        let src = self.total_blocks(k);
        let dst = self.total_blocks(k + 1);
        let rows = self.total_dim(k + 1);
        let cols = self.total_dim(k);
        self.guard.check(rows, cols)?;
        let m = self.modulus;
        let mut d = ModMatrix::zeros(m, rows, cols);
        for b in &src {
            let up = &dst[b.p];
            self.delta_t(b.p, b.q).write_into(&mut d, up.offset, b.offset, 1);
            let right = &dst[b.p - 1];
            let sign = if b.p % 2 == 0 { 1 } else { m - 1 };
            self.delta_n(b.p, b.q).write_into(&mut d, right.offset, b.offset, sign);
        }
        Ok(d)
    }

    /// ℋⁱ(T, N, ℤ/m) = H^{i+1}(Tot).
    pub fn cohomology(&self, i: usize) -> Result<MPCohomology, MPError> {
        if i == 0 {
            return Err(MPError::DegreeOutOfRange);
        }
        self.require(i + 1, i + 1)?;
        let d_in = self.total_differential(i)?;
        let d_out = self.total_differential(i + 1)?;
        let presentation = homology_at(&d_in, &d_out)?;
        Ok(MPCohomology { degree: i, blocks: self.total_blocks(i + 1), presentation, d_in, d_out })
    }

    /// ℋⁱ_p: classes with a representative supported in bidegree (p, i+1−p).
    pub fn restricted_subgroup(&self, full: &MPCohomology, p: usize) -> Result<RestrictedSubgroup, MPError> {
        let i = full.degree;
        if p == 0 || p > i {
            return Err(MPError::DegreeOutOfRange);
        }
        let block = full.blocks[p - 1];
        let range: Vec<usize> = (block.offset..block.offset + block.dim).collect();
        let other: Vec<usize> = (0..full.d_out.cols()).filter(|x| !range.contains(x)).collect();
        let d_out = full.d_out.select_columns(&range);
        let outside = full.d_in.select_rows(&other);
        let kernel = diagonalize(&outside, None).kernel_generators();
        let p_rows = full.d_in.select_rows(&range);
        let images: Vec<Vec<u64>> = kernel.iter().map(|(v, _)| p_rows.mul_vec(v)).collect();
        let d_in = ModMatrix::from_columns(self.modulus, block.dim, &images);
        let presentation = homology_at(&d_in, &d_out)?;
        let columns = presentation
            .generators()
            .iter()
            .map(|z| full.presentation.reduce(&full.embed(p, z)))
            .collect::<Result<Vec<_>, _>>()?;
        let embedding = GroupHom::new(
            presentation.invariant_factors().to_vec(),
            full.invariant_factors().to_vec(),
            columns,
        );
        Ok(RestrictedSubgroup { degree: i, p, presentation, embedding })
    }

    fn require_trivial_right(&self) -> Result<(), MPError> {
        if self.pair.right_is_trivial() {
            Ok(())
        } else {
            Err(MPError::NonTrivialRightAction)
        }
    }

    /// H^{i,j}: α ∈ C^{i,j} with δ_N α = 0 and δ_T α ∈ δ_N(C^{i+1,j−1}), modulo
    /// δ_N(C^{i,j−1}) + δ_T(ker δ_N on C^{i−1,j}). The edges p = 0 and q = 0 take part.
    pub fn bidegree_cohomology(&self, i: usize, j: usize) -> Result<BidegreeCohomology, MPError> {
        self.require_trivial_right()?;
        if i == 0 || j == 0 {
            return Err(MPError::DegreeOutOfRange);
        }
        self.require(i + 1, j + 1)?;
        let dn_here = self.delta_n(i, j).to_dense();
        let q = image_annihilator(&self.delta_n(i + 1, j - 1).to_dense());
        let dt_here = self.delta_t(i, j).to_dense();
        let d_out = ModMatrix::vstack(&[&dn_here, &q.mul(&dt_here)]);
        let gamma = self.delta_n(i, j - 1).to_dense();
        let kernel = diagonalize(&self.delta_n(i - 1, j).to_dense(), None).kernel_generators();
        let dt_below = self.delta_t(i - 1, j);
        let mut cols = gamma.columns();
        cols.extend(kernel.iter().map(|(v, _)| dt_below.mul_vec(v)));
        let d_in = ModMatrix::from_columns(self.modulus, self.dim(i, j), &cols);
        let presentation = homology_at(&d_in, &d_out)?;
        Ok(BidegreeCohomology { i, j, presentation })
    }

    /// π: ℋ² → H^{1,2}, the class of (f₁, f₂) going to the class of f₁ ∈ C^{1,2}.
    pub fn pi_map(&self, h2: &MPCohomology, h12: &BidegreeCohomology) -> Result<GroupHom, MPError> {
        self.require_trivial_right()?;
        if h2.degree != 2 || (h12.i, h12.j) != (1, 2) {
            return Err(MPError::DegreeOutOfRange);
        }
        let columns = h2
            .presentation
            .generators()
            .iter()
            .map(|z| h12.presentation.reduce(h2.component(z, 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupHom::new(h2.invariant_factors().to_vec(), h12.presentation.invariant_factors().to_vec(), columns))
    }

    /// H²(N) ⊕ ℋ²_2 → ℋ² → H^{1,2}, checking im = ker at ℋ².
    pub fn verify_pi_exactness(&self) -> Result<PiExactnessReport, MPError> {
        self.require_trivial_right()?;
        let h2 = self.cohomology(2)?;
        let h12 = self.bidegree_cohomology(1, 2)?;
        let h22 = self.restricted_subgroup(&h2, 2)?;
        let n = self.pair.n();
        let hn = GroupCohomology::compute(n, &CoefficientModule::trivial_cyclic(self.modulus, n.order()), 2)?;
        let dt = self.delta_t(0, 2);
        let mut columns = Vec::new();
        for z in hn.presentation.generators() {
            let image = h2.embed(1, &dt.mul_vec(z));
            columns.push(h2.presentation.reduce(&image)?);
        }
        columns.extend(h22.embedding.columns.iter().cloned());
        let mut src = hn.invariant_factors().to_vec();
        src.extend_from_slice(h22.presentation.invariant_factors());
        let incoming = GroupHom::new(src, h2.invariant_factors().to_vec(), columns);
        let pi = self.pi_map(&h2, &h12)?;
        let verdict = ExactnessVerdict::at(&incoming, &pi);
        Ok(PiExactnessReport {
            h2_n: hn.invariant_factors().to_vec(),
            h2_2: h22.presentation.invariant_factors().to_vec(),
            h2: h2.invariant_factors().to_vec(),
            h12: h12.presentation.invariant_factors().to_vec(),
            incoming,
            pi,
            verdict,
        })
    }
}

/// One summand C^{p,q} of a total-complex degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TotalBlock {
    pub p: usize,
    pub q: usize,
    pub offset: usize,
    pub dim: usize,
}

/// ℋⁱ together with the total differentials around it.
#[derive(Clone, Debug)]
pub struct MPCohomology {
    pub degree: usize,
    pub blocks: Vec<TotalBlock>,
    pub presentation: Presentation,
    d_in: ModMatrix,
    d_out: ModMatrix,
}

/// A class of ℋⁱ, split into components f_p: T^p × N^{i+1−p} → ℤ/m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MPCohomologyClass {
    pub degree: usize,
    pub components: Vec<(usize, Vec<u64>)>,
    pub coordinates: Vec<u64>,
}

impl MPCohomology {
    pub fn invariant_factors(&self) -> &[u64] {
        self.presentation.invariant_factors()
    }

    /// The T-degree-p part of a Tot^{i+1} vector.
    pub fn component<'a>(&self, z: &'a [u64], p: usize) -> &'a [u64] {
        let b = self.blocks[p - 1];
        &z[b.offset..b.offset + b.dim]
    }

    /// A cochain in C^{p, i+1−p} as a Tot^{i+1} vector.
    pub fn embed(&self, p: usize, f: &[u64]) -> Vec<u64> {
        let b = self.blocks[p - 1];
        assert_eq!(f.len(), b.dim, "component has the wrong size");
        let mut z = vec![0u64; self.d_out.cols()];
        z[b.offset..b.offset + b.dim].copy_from_slice(f);
        z
    }

    pub fn is_cocycle(&self, z: &[u64]) -> bool {
        self.d_out.mul_vec(z).iter().all(|&x| x == 0)
    }

    pub fn total_differential_in(&self) -> &ModMatrix {
        &self.d_in
    }

    pub fn total_differential_out(&self) -> &ModMatrix {
        &self.d_out
    }

    pub fn class_of(&self, z: &[u64]) -> Result<MPCohomologyClass, MPError> {
        let coordinates = self.presentation.reduce(z)?;
        let components = self.blocks.iter().map(|b| (b.p, self.component(z, b.p).to_vec())).collect();
        Ok(MPCohomologyClass { degree: self.degree, components, coordinates })
    }

    pub fn classes(&self) -> Vec<MPCohomologyClass> {
        self.presentation
            .generators()
            .iter()
            .map(|z| self.class_of(z).expect("generators are cocycles"))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct RestrictedSubgroup {
    pub degree: usize,
    pub p: usize,
    pub presentation: Presentation,
    /// ℋⁱ_p → ℋⁱ; injective by construction.
    pub embedding: GroupHom,
}

#[derive(Clone, Debug)]
pub struct BidegreeCohomology {
    pub i: usize,
    pub j: usize,
    pub presentation: Presentation,
}

#[derive(Clone, Debug, Serialize)]
pub struct PiExactnessReport {
    pub h2_n: Vec<u64>,
    pub h2_2: Vec<u64>,
    pub h2: Vec<u64>,
    pub h12: Vec<u64>,
    pub incoming: GroupHom,
    pub pi: GroupHom,
    pub verdict: ExactnessVerdict,
}

pub fn matched_pair_cohomology(pair: &GroupMatchedPair, m: u64, i: usize) -> Result<MPCohomology, MPError> {
    build_double_complex(pair, m, i + 1, i + 1)?.cohomology(i)
}

pub fn restricted_subgroup(pair: &GroupMatchedPair, m: u64, i: usize, p: usize) -> Result<RestrictedSubgroup, MPError> {
    let dc = build_double_complex(pair, m, i + 1, i + 1)?;
    let full = dc.cohomology(i)?;
    dc.restricted_subgroup(&full, p)
}

pub fn bidegree_cohomology(pair: &GroupMatchedPair, m: u64, i: usize, j: usize) -> Result<BidegreeCohomology, MPError> {
    build_double_complex(pair, m, i + 1, j + 1)?.bidegree_cohomology(i, j)
}

pub fn verify_pi_exactness(pair: &GroupMatchedPair, m: u64) -> Result<PiExactnessReport, MPError> {
    build_double_complex(pair, m, 3, 3)?.verify_pi_exactness()
}

/// Hⁱ(T, Hʲ(N, ℤ/m)) for a pair with trivial right action, T acting on
/// Hʲ(N) through t ↦ (precomposition with n ↦ t⁻¹▷n).
pub fn iterated_group_cohomology(pair: &GroupMatchedPair, m: u64, i: usize, j: usize) -> Result<Presentation, MPError> {
    if !pair.right_is_trivial() {
        return Err(MPError::NonTrivialRightAction);
    }
    let (t, n) = (pair.t(), pair.n());
    let hn = GroupCohomology::compute(n, &CoefficientModule::trivial_cyclic(m, n.order()), j)?;
    let orders = hn.invariant_factors().to_vec();
    let r = orders.len();
    let mut action = Vec::with_capacity(t.order());
    for x in 0..t.order() {
        let inv = t.inv(x);
        let phi: Vec<usize> = (0..n.order()).map(|y| pair.left(inv, y)).collect();
        let map = crate::barcomplex::induced_map(&phi, &hn, &hn)?;
        action.push(ModMatrix::from_fn(m, r, r, |a, b| map.columns[b][a]));
    }
    if r == 0 {
        return Ok(homology_at(&ModMatrix::zeros(m, 0, 0), &ModMatrix::zeros(m, 0, 0))?);
    }
    let module = CoefficientModule::new(m, orders, action, t)?;
    Ok(crate::barcomplex::group_cohomology(t, &module, i)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::FiniteGroup;

    fn inversion_pair(n: usize) -> GroupMatchedPair {
        let action: Vec<Vec<usize>> = vec![(0..n).collect(), (0..n).map(|x| (n - x) % n).collect()];
        GroupMatchedPair::semidirect(FiniteGroup::cyclic(2), FiniteGroup::cyclic(n), &action).unwrap()
    }

    #[test]
    fn ranks() {
        let dc = build_double_complex(&inversion_pair(3), 6, 2, 2).unwrap();
        assert_eq!(dc.dim(1, 1), 2);
        assert_eq!(dc.dim(2, 1), 2);
        assert_eq!(dc.dim(1, 2), 4);
        assert_eq!(dc.total_dim(3), 6);
    }

    #[test]
    fn unrolled_low_degree_faces() {
        // p = 1, q = 0 → 1: δ_N f(t; n) = f(t◁n) − f(t); p = 0 → 1 in T: δ_T f(s; n) = f(s▷n) − f(n)
        let pair = inversion_pair(3);
        let dc = build_double_complex(&pair, 6, 1, 1).unwrap();
        let dt = dc.delta_t(0, 1).to_dense();
        // f = indicator of n = 1; (δ_T f)(1; 1) = f(2) − f(1) = −1, (δ_T f)(1; 2) = f(1) − f(2) = 1
        let f = vec![1, 0];
        assert_eq!(dt.mul_vec(&f), vec![5, 1]);
        assert!(dc.delta_n(1, 0).is_zero());
    }

    #[test]
    fn trivial_t_kills_everything() {
        let pair = GroupMatchedPair::trivial_actions(FiniteGroup::trivial(), FiniteGroup::cyclic(3));
        for i in 1..=2 {
            assert!(matched_pair_cohomology(&pair, 3, i).unwrap().presentation.is_trivial());
        }
    }

    #[test]
    fn c2_c2_pairing_group() {
        let pair = GroupMatchedPair::trivial_actions(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
        let h1 = matched_pair_cohomology(&pair, 2, 1).unwrap();
        assert_eq!(h1.invariant_factors(), &[2]);
        let h11 = bidegree_cohomology(&pair, 2, 1, 1).unwrap();
        assert_eq!(h11.presentation.invariant_factors(), &[2]);
    }

    #[test]
    fn restricted_subgroups_embed() {
        let pair = inversion_pair(3);
        let dc = build_double_complex(&pair, 6, 3, 3).unwrap();
        let h2 = dc.cohomology(2).unwrap();
        for p in 1..=2 {
            let r = dc.restricted_subgroup(&h2, p).unwrap();
            assert!(r.embedding.is_well_defined());
            assert!(r.embedding.is_injective());
        }
    }

    #[test]
    fn iterated_side_matches_bidegree() {
        let pair = inversion_pair(3);
        let lhs = iterated_group_cohomology(&pair, 3, 1, 2).unwrap();
        let rhs = bidegree_cohomology(&pair, 3, 1, 2).unwrap();
        assert_eq!(lhs.invariant_factors(), rhs.presentation.invariant_factors());
    }

    #[test]
    fn pi_sequence_exact() {
        let r = verify_pi_exactness(&inversion_pair(3), 6).unwrap();
        assert!(r.verdict.exact, "{r:?}");
    }
}
