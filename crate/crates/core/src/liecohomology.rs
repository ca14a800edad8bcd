//! Chevalley–Eilenberg cohomology of finite-dimensional Lie algebras over ℚ
//! with trivial coefficients, finite group actions on it, and the pipeline
//! that reads off the second matched-pair cohomology of a pointed pair from
//! the generalized Kac sequence.

use crate::barcomplex::{induced_map, BarError, CoefficientModule, GroupCohomology};
use crate::exactlin::{hom_kernel, quotient_invariants, subgroup_invariants, RationalMatrix};
use crate::fingroup::{FiniteGroup, GroupMatchedPair};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(transparent)]
    Bar(#[from] BarError),
    #[error("bracket index out of range: ({0}, {1}, {2})")]
    IndexOutOfRange(usize, usize, usize),
    #[error("bracket is not antisymmetric at [e{0}, e{1}]")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails for (e{0}, e{1}, e{2})")]
    JacobiViolated(usize, usize, usize),
    #[error("matrix for element {0} is not a Lie algebra automorphism")]
    NotAutomorphism(usize),
    #[error("matrices do not form a representation: {0}")]
    NotRepresentation(String),
    #[error("actions are incompatible: {0}")]
    ActionsIncompatible(String),
    #[error("degree {0} exceeds the computed range of the complex")]
    DegreeOutOfRange(usize),
}

pub type Rational = BigRational;

fn q(x: i64) -> Rational {
    BigRational::from_integer(BigInt::from(x))
}

/// Structure constants c^k_{ij} with [e_i, e_j] = Σ_k c^k_{ij} e_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    dim: usize,
    /// `c[(i * dim + j) * dim + k]`
    c: Vec<Rational>,
}

impl LieAlgebraData {
    /// Validates antisymmetry and the Jacobi identity on all basis triples.
    pub fn new(dim: usize, c: Vec<Rational>) -> Result<Self, LieError> {
        assert_eq!(c.len(), dim * dim * dim, "structure constant tensor has the wrong size");
        let g = LieAlgebraData { dim, c };
        g.validate()?;
        Ok(g)
    }

    /// Builds the tensor from entries (i, j, k, c^k_{ij}); the entry for (j, i)
    /// is filled in with the opposite sign unless it is listed as well.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self, LieError> {
        let mut c = vec![Rational::zero(); dim * dim * dim];
        let mut given = vec![false; dim * dim * dim];
        for (i, j, k, v) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(LieError::IndexOutOfRange(i, j, k));
            }
            let at = (i * dim + j) * dim + k;
            c[at] = v.clone();
            given[at] = true;
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let at = (i * dim + j) * dim + k;
                    let opp = (j * dim + i) * dim + k;
                    if given[at] && !given[opp] {
                        c[opp] = -c[at].clone();
                    }
                }
            }
        }
        Self::new(dim, c)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebraData { dim, c: vec![Rational::zero(); dim * dim * dim] }
    }

    /// sl₂ in the basis (e, f, h).
    pub fn sl2() -> Self {
        let e = [(0, 1, 2, q(1)), (2, 0, 0, q(2)), (2, 1, 1, q(-2))];
        Self::from_brackets(3, &e).expect("sl2 is a Lie algebra")
    }

    /// slₙ in the basis of [`sl_basis`].
    pub fn sl(n: usize) -> Self {
        let basis = sl_basis(n);
        let d = basis.len();
        let mut c = vec![Rational::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                let br = basis[i].mul(&basis[j]).sub(&basis[j].mul(&basis[i]));
                for (k, v) in sl_coordinates(n, &br).into_iter().enumerate() {
                    c[(i * d + j) * d + k] = v;
                }
            }
        }
        Self::new(d, c).expect("sl_n is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// [x, y] in coordinates.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    fn validate(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if *self.constant(i, j, k) != -self.constant(j, i, k).clone() {
                        return Err(LieError::NotAntisymmetric(i, j));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket(&x, &self.bracket(&y, &z));
                    let b = self.bracket(&y, &self.bracket(&z, &x));
                    let c = self.bracket(&z, &self.bracket(&x, &y));
                    if (0..n).any(|t| !(&a[t] + &b[t] + &c[t]).is_zero()) {
                        return Err(LieError::JacobiViolated(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the matrix (columns = images of the basis) is an invertible bracket-preserving map.
    pub fn is_automorphism(&self, m: &RationalMatrix) -> bool {
        let n = self.dim;
        if m.rows() != n || m.cols() != n || m.determinant().is_zero() {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = m.mul_vec(&self.bracket(&self.unit(i), &self.unit(j)));
                let rhs = self.bracket(&m.column(i), &m.column(j));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Basis of slₙ: E_ij for i ≠ j in row-major order, then H_k = E_kk − E_{k+1,k+1}.
pub fn sl_basis(n: usize) -> Vec<RationalMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut e = RationalMatrix::zeros(n, n);
                e.set(i, j, q(1));
                out.push(e);
            }
        }
    }
    for k in 0..n.saturating_sub(1) {
        let mut h = RationalMatrix::zeros(n, n);
        h.set(k, k, q(1));
        h.set(k + 1, k + 1, q(-1));
        out.push(h);
    }
    out
}

/// Coordinates of a traceless matrix in [`sl_basis`].
pub fn sl_coordinates(n: usize, x: &RationalMatrix) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(x.get(i, j).clone());
            }
        }
    }
    let mut acc = Rational::zero();
    for k in 0..n.saturating_sub(1) {
        acc += x.get(k, k);
        out.push(acc.clone());
    }
    out
}

/// The automorphism X ↦ P X P⁻¹ of slₙ as a matrix in [`sl_basis`].
pub fn sl_conjugation(p: &RationalMatrix) -> RationalMatrix {
    let n = p.rows();
    let inv = p.inverse().expect("conjugating matrix is invertible");
    let cols: Vec<Vec<Rational>> = sl_basis(n).iter().map(|b| sl_coordinates(n, &p.mul(b).mul(&inv))).collect();
    RationalMatrix::from_columns(n * n - 1, &cols)
}

/// A finite group acting on a Lie algebra by automorphisms.
#[derive(Clone, Debug)]
pub struct LieGroupAction {
    group: FiniteGroup,
    matrices: Vec<RationalMatrix>,
}

impl LieGroupAction {
    /// One matrix per group element; checks automorphisms and ρ(gh) = ρ(g)ρ(h).
    pub fn new(lie: &LieAlgebraData, group: FiniteGroup, matrices: Vec<RationalMatrix>) -> Result<Self, LieError> {
        if matrices.len() != group.order() {
            return Err(LieError::NotRepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        for (g, m) in matrices.iter().enumerate() {
            if !lie.is_automorphism(m) {
                return Err(LieError::NotAutomorphism(g));
            }
        }
        if matrices[group.identity()] != RationalMatrix::identity(lie.dim()) {
            return Err(LieError::NotRepresentation("identity does not act trivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if matrices[group.mul(a, b)] != matrices[a].mul(&matrices[b]) {
                    return Err(LieError::NotRepresentation(format!("ρ({a}·{b}) ≠ ρ({a})ρ({b})")));
                }
            }
        }
        Ok(LieGroupAction { group, matrices })
    }

    /// Extends matrices given on generating elements to the whole group,
    /// rejecting generators that violate a relation.
    pub fn from_generators(
        lie: &LieAlgebraData,
        group: FiniteGroup,
        gens: &[(usize, RationalMatrix)],
    ) -> Result<Self, LieError> {
        let order = group.order();
        let mut assigned: Vec<Option<RationalMatrix>> = vec![None; order];
        assigned[group.identity()] = Some(RationalMatrix::identity(lie.dim()));
        let mut frontier = vec![group.identity()];
        while let Some(g) = frontier.pop() {
            for (s, m) in gens {
                if *s >= order {
                    return Err(LieError::NotRepresentation(format!("element {s} is not in the group")));
                }
                let gs = group.mul(g, *s);
                let value = assigned[g].as_ref().expect("assigned").mul(m);
                match &assigned[gs] {
                    Some(existing) if *existing != value => {
                        return Err(LieError::NotRepresentation(format!("relation violated at element {gs}")));
                    }
                    Some(_) => {}
                    None => {
                        assigned[gs] = Some(value);
                        frontier.push(gs);
                    }
                }
            }
        }
        let matrices = assigned
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or_else(|| LieError::NotRepresentation(format!("element {g} is not generated"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(lie, group, matrices)
    }

    pub fn trivial(lie: &LieAlgebraData, group: FiniteGroup) -> Self {
        let id = RationalMatrix::identity(lie.dim());
        LieGroupAction { matrices: vec![id; group.order()], group }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn matrix(&self, g: usize) -> &RationalMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[RationalMatrix] {
        &self.matrices
    }
}

/// Sorted p-subsets of {0, …, n−1}, the basis of Λᵖ𝐠*.
pub fn exterior_basis(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

/// Sign of the permutation sorting `v`, or None on a repeated entry.
fn sort_sign(v: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

/// The Chevalley–Eilenberg complex Λ^•𝐠* with trivial coefficients.
#[derive(Clone, Debug)]
pub struct CEComplex {
    dim: usize,
    n_max: usize,
    d: Vec<RationalMatrix>,
}

/// dω(x₀,…,x_p) = Σ_{i<j} (−1)^{i+j} ω([x_i,x_j], x₀,…,x̂_i,…,x̂_j,…,x_p), for p ≤ n_max.
pub fn chevalley_eilenberg(g: &LieAlgebraData, n_max: usize) -> CEComplex {
    let n = g.dim();
    let mut d = Vec::with_capacity(n_max + 1);
    for p in 0..=n_max {
        let src = exterior_basis(n, p);
        let dst = exterior_basis(n, p + 1);
        let index: HashMap<Vec<usize>, usize> = src.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut mat = RationalMatrix::zeros(dst.len(), src.len());
        for (row, js) in dst.iter().enumerate() {
            for a in 0..js.len() {
                for b in a + 1..js.len() {
                    let rest: Vec<usize> =
                        js.iter().enumerate().filter(|&(t, _)| t != a && t != b).map(|(_, &x)| x).collect();
                    for k in 0..n {
                        let c = g.constant(js[a], js[b], k);
                        if c.is_zero() {
                            continue;
                        }
                        let mut tuple = vec![k];
                        tuple.extend_from_slice(&rest);
                        let Some(odd) = sort_sign(&mut tuple) else { continue };
                        let col = index[&tuple];
                        let term = if odd ^ ((a + b) % 2 == 1) { -c.clone() } else { c.clone() };
                        mat.add_at(row, col, &term);
                    }
                }
            }
        }
        d.push(mat);
    }
    for p in 1..d.len() {
        assert!(d[p].mul(&d[p - 1]).is_zero(), "d∘d ≠ 0 in degree {p}");
    }
    CEComplex { dim: n, n_max, d }
}

/// Hᵖ(𝐠) with chosen cocycle representatives.
#[derive(Clone, Debug)]
pub struct LieCohomology {
    pub degree: usize,
    /// columns of the cochain space Λᵖ𝐠*
    pub representatives: Vec<Vec<Rational>>,
    boundaries: Vec<Vec<Rational>>,
    cochain_dim: usize,
}

impl LieCohomology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn coordinates(&self, z: &[Rational]) -> Option<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = self.boundaries.iter().chain(&self.representatives).cloned().collect();
        let a = RationalMatrix::from_columns(self.cochain_dim, &cols);
        let x = a.solve(z)?;
        Some(x[self.boundaries.len()..].to_vec())
    }
}

impl CEComplex {
    pub fn cochain_dim(&self, p: usize) -> usize {
        exterior_basis(self.dim, p).len()
    }

    pub fn differential(&self, p: usize) -> &RationalMatrix {
        &self.d[p]
    }

    pub fn cohomology_dim(&self, p: usize) -> Result<usize, LieError> {
        Ok(self.cohomology(p)?.dim())
    }

    pub fn cohomology(&self, p: usize) -> Result<LieCohomology, LieError> {
        if p > self.n_max {
            return Err(LieError::DegreeOutOfRange(p));
        }
        let cochain_dim = self.cochain_dim(p);
        let cocycles = self.d[p].kernel_basis();
        let boundary_matrix = if p == 0 { RationalMatrix::zeros(cochain_dim, 0) } else { self.d[p - 1].clone() };
        let (_, pivots) = boundary_matrix.rref_columns();
        let boundaries: Vec<Vec<Rational>> = pivots.iter().map(|&j| boundary_matrix.column(j)).collect();
        let mut cols = boundaries.clone();
        cols.extend(cocycles.iter().cloned());
        let (_, pivots) = RationalMatrix::from_columns(cochain_dim, &cols).rref_columns();
        let representatives = pivots.iter().filter(|&&j| j >= boundaries.len()).map(|&j| cols[j].clone()).collect();
        Ok(LieCohomology { degree: p, representatives, boundaries, cochain_dim })
    }
}

impl RationalMatrix {
    /// Pivot columns of the column space, leftmost first.
    fn rref_columns(&self) -> (RationalMatrix, Vec<usize>) {
        if self.cols() == 0 || self.rows() == 0 {
            return (self.clone(), Vec::new());
        }
        self.rref()
    }
}

/// The action ω ↦ ω∘(ρ(g)⁻¹ × ⋯ × ρ(g)⁻¹) on Λᵖ𝐠*.
pub fn cochain_action(m: &RationalMatrix, p: usize) -> RationalMatrix {
    let n = m.rows();
    let inv = m.inverse().expect("automorphism is invertible");
    let basis = exterior_basis(n, p);
    let mut out = RationalMatrix::zeros(basis.len(), basis.len());
    for (col, is) in basis.iter().enumerate() {
        for (row, js) in basis.iter().enumerate() {
            // (g·ω_I)(e_J) = det inv[I, J]
            let mut sub = RationalMatrix::zeros(p, p);
            for (a, &i) in is.iter().enumerate() {
                for (b, &j) in js.iter().enumerate() {
                    sub.set(a, b, inv.get(i, j).clone());
                }
            }
            let det = if p == 0 { Rational::one() } else { sub.determinant() };
            if !det.is_zero() {
                out.set(row, col, det);
            }
        }
    }
    out
}

/// Matrices of the induced action on Hᵖ(𝐠) in the representative basis, one per group element.
pub fn induced_action_on_h(
    g: &LieAlgebraData,
    action: &LieGroupAction,
    p: usize,
) -> Result<(LieCohomology, Vec<RationalMatrix>), LieError> {
    let ce = chevalley_eilenberg(g, p.max(1));
    let h = ce.cohomology(p)?;
    let mut mats = Vec::with_capacity(action.group().order());
    for (e, m) in action.matrices().iter().enumerate() {
        let on_cochains = cochain_action(m, p);
        let cols = h
            .representatives
            .iter()
            .map(|z| h.coordinates(&on_cochains.mul_vec(z)).ok_or(LieError::NotAutomorphism(e)))
            .collect::<Result<Vec<_>, _>>()?;
        mats.push(RationalMatrix::from_columns(h.dim(), &cols));
    }
    let grp = action.group();
    for a in 0..grp.order() {
        for b in 0..grp.order() {
            if mats[grp.mul(a, b)] != mats[a].mul(&mats[b]) {
                return Err(LieError::NotRepresentation(format!("induced action on H^{p} at ({a}, {b})")));
            }
        }
    }
    Ok((h, mats))
}

/// Basis of the common fixed space of the matrices: the kernel of the stacked ρ(g) − 1.
pub fn invariants(dim: usize, matrices: &[RationalMatrix]) -> Vec<Vec<Rational>> {
    if matrices.is_empty() {
        return RationalMatrix::zeros(0, dim).kernel_basis_or_all(dim);
    }
    let id = RationalMatrix::identity(dim);
    let parts: Vec<RationalMatrix> = matrices.iter().map(|m| m.sub(&id)).collect();
    let refs: Vec<&RationalMatrix> = parts.iter().collect();
    RationalMatrix::vstack(&refs).kernel_basis_or_all(dim)
}

impl RationalMatrix {
    fn kernel_basis_or_all(&self, dim: usize) -> Vec<Vec<Rational>> {
        if self.rows() == 0 {
            return (0..dim)
                .map(|j| (0..dim).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect();
        }
        self.kernel_basis()
    }
}

/// Which side of the pair carries the Lie algebra of primitives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LieSide {
    T,
    N,
}

/// The determined value of ℋ²: a vector space of the given dimension times a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Method6Value {
    pub rational_dim: usize,
    pub finite_part: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Method6Report {
    pub modulus: u64,
    pub lie_side: LieSide,
    pub order_t: usize,
    pub order_n: usize,
    pub coprime: bool,
    pub h2_lie_dim: usize,
    /// dim H²(𝐠)^{G(T)}
    pub h2_lie_invariant_t: usize,
    /// dim H²(𝐠)^{G(N)}
    pub h2_lie_invariant_n: usize,
    /// invariants under the whole group of points
    pub h2_lie_invariant_all: usize,
    pub lie_quotient_dim: usize,
    /// H²(G_other, ℤ/m)
    pub h2_other: Vec<u64>,
    pub h2_other_invariant: Vec<u64>,
    pub other_quotient: Vec<u64>,
    pub determined: Option<Method6Value>,
    pub steps: Vec<String>,
}

impl Method6Report {
    pub fn summary(&self) -> String {
        match &self.determined {
            Some(v) => format!("MP-H2 = {}", render_value(v, self.modulus)),
            None => "sequence does not determine MP-H2 here (group orders not coprime)".to_string(),
        }
    }
}

fn render_value(v: &Method6Value, m: u64) -> String {
    let mut parts = Vec::new();
    if v.rational_dim > 0 {
        parts.push(if v.rational_dim == 1 { "k".to_string() } else { format!("k^{}", v.rational_dim) });
    }
    parts.extend(v.finite_part.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        return format!("0 (coefficients Z/{m})");
    }
    format!("{} (finite part with coefficients Z/{m})", parts.join(" x "))
}

#[derive(Clone, Debug)]
pub struct Method6Input<'a> {
    /// the groups of points, with G_T acting on G_N (Lie side T) or G_N acting on G_T (Lie side N)
    pub pair: &'a GroupMatchedPair,
    pub lie: &'a LieAlgebraData,
    pub side: LieSide,
    pub action_t: &'a LieGroupAction,
    pub action_n: &'a LieGroupAction,
    pub modulus: u64,
}

/// Computes the pieces of the injection
/// H²(𝐠)^{G_own}/H²(𝐠)^{G} ⊕ H²(G_other)/H²(G_other)^{G_own} → ℋ²
/// and reports ℋ² when |G_T| and |G_N| are coprime.
pub fn method6(input: &Method6Input<'_>) -> Result<Method6Report, LieError> {
    let Method6Input { pair, lie, side, action_t, action_n, modulus: m } = *input;
    let (gt, gn) = (pair.t(), pair.n());
    if action_t.group().table() != gt.table() || action_n.group().table() != gn.table() {
        return Err(LieError::ActionsIncompatible("action groups differ from the pair".into()));
    }
    match side {
        LieSide::T if !pair.right_is_trivial() => {
            return Err(LieError::ActionsIncompatible("Lie side T needs a trivial right action".into()))
        }
        LieSide::N if !pair.left_is_trivial() => {
            return Err(LieError::ActionsIncompatible("Lie side N needs a trivial left action".into()))
        }
        _ => {}
    }
    // ρ(n, t) = ρ_N(n)ρ_T(t) must be a representation of N⋈T
    let bis = pair.bismash();
    let h = bis.group();
    let rho = |x: usize| {
        let (n, t) = bis.split(x);
        action_n.matrix(n).mul(action_t.matrix(t))
    };
    let all: Vec<RationalMatrix> = (0..h.order()).map(rho).collect();
    for a in 0..h.order() {
        for b in 0..h.order() {
            if all[h.mul(a, b)] != all[a].mul(&all[b]) {
                return Err(LieError::ActionsIncompatible(format!("ρ({a}·{b}) ≠ ρ({a})ρ({b}) in the bismash group")));
            }
        }
    }
    let whole = LieGroupAction { group: h.clone(), matrices: all };
    let (h2, t_mats) = induced_action_on_h(lie, action_t, 2)?;
    let (_, n_mats) = induced_action_on_h(lie, action_n, 2)?;
    let (_, all_mats) = induced_action_on_h(lie, &whole, 2)?;
    let inv_t = invariants(h2.dim(), &t_mats).len();
    let inv_n = invariants(h2.dim(), &n_mats).len();
    let inv_all = invariants(h2.dim(), &all_mats).len();
    let inv_own = match side {
        LieSide::T => inv_t,
        LieSide::N => inv_n,
    };

    let (own, other) = match side {
        LieSide::T => (gt, gn),
        LieSide::N => (gn, gt),
    };
    let h2_other = GroupCohomology::compute(other, &CoefficientModule::trivial_cyclic(m, other.order()), 2)?;
    let orders = h2_other.invariant_factors().to_vec();
    // generators of the fixed subgroup: kernel of x ↦ (ρ(g)x − x)_g
    let mut stacked_dst = Vec::new();
    let mut columns = vec![Vec::new(); orders.len()];
    for g in 0..own.order() {
        let phi: Vec<usize> = (0..other.order())
            .map(|y| match side {
                LieSide::T => pair.left(own.inv(g), y),
                LieSide::N => pair.right(y, g),
            })
            .collect();
        let map = induced_map(&phi, &h2_other, &h2_other)?;
        stacked_dst.extend_from_slice(&orders);
        for (j, col) in columns.iter_mut().enumerate() {
            for (i, &o) in orders.iter().enumerate() {
                let id = u64::from(i == j);
                col.push((map.columns[j][i] + o - id) % o);
            }
        }
    }
    let fixed = hom_kernel(&orders, &stacked_dst, &columns);
    let h2_other_invariant = subgroup_invariants(&orders, &fixed);
    let other_quotient = quotient_invariants(&orders, &fixed);

    let coprime = gt.order().gcd(&gn.order()) == 1;
    let lie_quotient_dim = inv_own - inv_all;
    let own_name = match side {
        LieSide::T => "G(T)",
        LieSide::N => "G(N)",
    };
    let mut steps = vec![
        format!("dim H2(g) = {}, dim H2(g)^G(T) = {inv_t}, dim H2(g)^G(N) = {inv_n}, dim H2(g)^G = {inv_all}", h2.dim()),
        format!("H1({own_name}, H2(g)) = 0: H2(g) is a rational vector space and {own_name} is finite"),
        format!("H2(G_other, Z/{m}) = {orders:?}, fixed part {h2_other_invariant:?}, quotient {other_quotient:?}"),
    ];
    if inv_all == 0 {
        steps.push("H2(g)^G = 0, so pi vanishes on the Lie part".to_string());
    }
    let determined = if coprime {
        steps.push(format!(
            "|G(T)| = {} and |G(N)| = {} are coprime: res3 is injective and Phi is an isomorphism",
            gt.order(),
            gn.order()
        ));
        Some(Method6Value { rational_dim: lie_quotient_dim, finite_part: other_quotient.clone() })
    } else {
        steps.push("orders are not coprime: Phi is only known to be injective".to_string());
        None
    };
    Ok(Method6Report {
        modulus: m,
        lie_side: side,
        order_t: gt.order(),
        order_n: gn.order(),
        coprime,
        h2_lie_dim: h2.dim(),
        h2_lie_invariant_t: inv_t,
        h2_lie_invariant_n: inv_n,
        h2_lie_invariant_all: inv_all,
        lie_quotient_dim,
        h2_other: orders,
        h2_other_invariant,
        other_quotient,
        determined,
        steps,
    })
}

/// Integer matrix rows as a rational matrix.
pub fn int_matrix(rows: &[Vec<i64>]) -> RationalMatrix {
    RationalMatrix::from_int_rows(rows)
}

/// The permutation matrix sending e_j to e_{perm[j]}.
pub fn permutation_matrix(perm: &[usize]) -> RationalMatrix {
    let n = perm.len();
    let mut out = RationalMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        out.set(i, j, q(1));
    }
    out
}
