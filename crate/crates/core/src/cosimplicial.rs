//! Cosimplicial objects and bicomplexes of free ℤ/m-modules: Dold–Kan
//! normalization, diagonal and total complexes, and the Alexander–Whitney and
//! shuffle maps between them.
//!
//! Operators act on cochains by pullback, so a coface ∂ⁱ: Xⁿ → Xⁿ⁺¹ is a sparse
//! matrix with rows indexed by Xⁿ⁺¹.

use crate::cochain::{SizeGuard, SizeGuardExceeded, TupleCodec};
use crate::exactlin::{diagonalize, gcd, homology_at, GroupHom, LinAlgError, ModMatrix, Presentation, SparseMatrix};
use crate::fingroup::GroupMatchedPair;
use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosimplicialError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    SizeGuard(#[from] SizeGuardExceeded),
    #[error("cosimplicial identity fails: {0}")]
    IdentityFailed(String),
    #[error("normalization does not split: {0}")]
    SplittingFailed(String),
    #[error("{map} is not a cochain map in degree {degree}")]
    NotChainMap { map: &'static str, degree: usize },
    #[error("degree {degree} exceeds the bound {bound}")]
    OutOfBounds { degree: usize, bound: usize },
}

fn same(a: &SparseMatrix, b: &SparseMatrix) -> bool {
    a.sub(b).is_zero()
}

fn alternating_sum(ops: &[SparseMatrix], sign_offset: usize) -> ModMatrix {
    let first = &ops[0];
    let m = first.modulus();
    let mut d = ModMatrix::zeros(m, first.rows(), first.cols());
    for (i, op) in ops.iter().enumerate() {
        let c = if (i + sign_offset) % 2 == 0 { 1 } else { m - 1 };
        op.write_into(&mut d, 0, 0, c);
    }
    d
}

/// A finite stretch X⁰ ⇉ X¹ ⇉ … ⇉ X^top with cofaces and codegeneracies.
#[derive(Clone, Debug)]
pub struct CosimplicialObject {
    modulus: u64,
    dims: Vec<usize>,
    /// `faces[n][i]` = ∂ⁱ: Xⁿ → Xⁿ⁺¹, 0 ≤ i ≤ n+1
    faces: Vec<Vec<SparseMatrix>>,
    /// `degens[n][j]` = σʲ: Xⁿ⁺¹ → Xⁿ, 0 ≤ j ≤ n
    degens: Vec<Vec<SparseMatrix>>,
}

impl CosimplicialObject {
    pub fn new(
        modulus: u64,
        dims: Vec<usize>,
        faces: Vec<Vec<SparseMatrix>>,
        degens: Vec<Vec<SparseMatrix>>,
    ) -> Result<Self, CosimplicialError> {
        let top = dims.len().saturating_sub(1);
        if faces.len() != top || degens.len() != top {
            return Err(CosimplicialError::IdentityFailed("operator lists do not match the degrees".into()));
        }
        for n in 0..top {
            if faces[n].len() != n + 2 || degens[n].len() != n + 1 {
                return Err(CosimplicialError::IdentityFailed(format!("wrong number of operators in degree {n}")));
            }
            let shapes_ok = faces[n].iter().all(|f| f.rows() == dims[n + 1] && f.cols() == dims[n])
                && degens[n].iter().all(|s| s.rows() == dims[n] && s.cols() == dims[n + 1]);
            if !shapes_ok {
                return Err(CosimplicialError::IdentityFailed(format!("operator shapes in degree {n}")));
            }
        }
        let x = CosimplicialObject { modulus, dims, faces, degens };
        x.validate()?;
        Ok(x)
    }

    /// Xⁿ = (ℤ/m)^r for all n with every operator the identity.
    pub fn constant(modulus: u64, rank: usize, top: usize) -> Self {
        let id = SparseMatrix::identity(modulus, rank);
        CosimplicialObject {
            modulus,
            dims: vec![rank; top + 1],
            faces: (0..top).map(|n| vec![id.clone(); n + 2]).collect(),
            degens: (0..top).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &SparseMatrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &SparseMatrix {
        &self.degens[n][j]
    }

    fn fail(what: String) -> CosimplicialError {
        CosimplicialError::IdentityFailed(what)
    }

    pub fn validate(&self) -> Result<(), CosimplicialError> {
        let top = self.top();
        let (f, s) = (&self.faces, &self.degens);
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n + 2 {
                for i in 0..j {
                    if !same(&f[n + 1][j].mul(&f[n][i]), &f[n + 1][i].mul(&f[n][j - 1])) {
                        return Err(Self::fail(format!("∂^{j}∂^{i} = ∂^{i}∂^{} on X^{n}", j - 1)));
                    }
                }
            }
            for j in 0..=n {
                for i in 0..=j {
                    if !same(&s[n][j].mul(&s[n + 1][i]), &s[n][i].mul(&s[n + 1][j + 1])) {
                        return Err(Self::fail(format!("σ^{j}σ^{i} = σ^{i}σ^{} on X^{}", j + 1, n + 2)));
                    }
                }
            }
        }
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = s[n][j].mul(&f[n][i]);
                    let ok = if i == j || i == j + 1 {
                        same(&lhs, &SparseMatrix::identity(self.modulus, self.dims[n]))
                    } else if n == 0 {
                        true
                    } else if i < j {
                        same(&lhs, &f[n - 1][i].mul(&s[n - 1][j - 1]))
                    } else {
                        same(&lhs, &f[n - 1][i - 1].mul(&s[n - 1][j]))
                    };
                    if !ok {
                        return Err(Self::fail(format!("σ^{j}∂^{i} on X^{n}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The associated cochain complex C(X) with d = Σ(−1)ⁱ∂ⁱ.
    pub fn cochain_complex(&self) -> CochainComplex {
        CochainComplex {
            modulus: self.modulus,
            dims: self.dims.clone(),
            d: (0..self.top()).map(|n| alternating_sum(&self.faces[n], 0)).collect(),
        }
    }

    /// Nⁿ = ∩ ker σʲ and Dⁿ = Σ_{j<n} im ∂ʲ, with the splitting checked by orders.
    pub fn normalize(&self) -> Result<Normalization, CosimplicialError> {
        let m = self.modulus;
        let complex = self.cochain_complex();
        let mut degrees = Vec::new();
        for n in 0..=self.top() {
            let stacked = self.stacked_degeneracies(n);
            let kernel: Vec<Vec<u64>> = diagonalize(&stacked, None).kernel_generators().into_iter().map(|(v, _)| v).collect();
            let degenerate: Vec<Vec<u64>> = if n == 0 {
                Vec::new()
            } else {
                (0..n).flat_map(|j| self.faces[n - 1][j].to_dense().columns()).collect()
            };
            let dim = self.dims[n];
            let n_order = span_order(m, dim, &kernel);
            let d_order = span_order(m, dim, &degenerate);
            let both: Vec<Vec<u64>> = kernel.iter().chain(&degenerate).cloned().collect();
            let sum_order = span_order(m, dim, &both);
            let full = BigUint::from(m).pow(dim as u32);
            if sum_order != full {
                return Err(CosimplicialError::SplittingFailed(format!("N + D ≠ X in degree {n}")));
            }
            if &n_order * &d_order != full {
                return Err(CosimplicialError::SplittingFailed(format!("N ∩ D ≠ 0 in degree {n}")));
            }
            degrees.push(NormalizedDegree {
                degree: n,
                rank: dim,
                normalized_rank: log_order(&n_order, m),
                degenerate_rank: log_order(&d_order, m),
                generators: kernel,
                degeneracy_stack: stacked,
            });
        }
        Ok(Normalization { modulus: m, complex, degrees })
    }

    fn stacked_degeneracies(&self, n: usize) -> ModMatrix {
        if n == 0 {
            return ModMatrix::zeros(self.modulus, 0, self.dims[0]);
        }
        let parts: Vec<ModMatrix> = self.degens[n - 1].iter().map(SparseMatrix::to_dense).collect();
        let refs: Vec<&ModMatrix> = parts.iter().collect();
        ModMatrix::vstack(&refs)
    }
}

/// Order of the subgroup of (ℤ/m)^dim spanned by the vectors.
fn span_order(m: u64, dim: usize, vectors: &[Vec<u64>]) -> BigUint {
    if vectors.is_empty() {
        return BigUint::from(1u32);
    }
    let a = ModMatrix::from_columns(m, dim, vectors);
    let d = diagonalize(&a, None);
    d.diagonal().iter().fold(BigUint::from(1u32), |acc, &x| acc * (m / gcd(x, m)))
}

/// log_m of an order that is a power of m, or the rounded-down value otherwise.
fn log_order(order: &BigUint, m: u64) -> usize {
    let mut k = 0;
    let mut x = BigUint::from(1u32);
    while &x * m <= *order {
        x *= m;
        k += 1;
    }
    k
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizedDegree {
    pub degree: usize,
    pub rank: usize,
    pub normalized_rank: usize,
    pub degenerate_rank: usize,
    #[serde(skip)]
    generators: Vec<Vec<u64>>,
    #[serde(skip)]
    degeneracy_stack: ModMatrix,
}

/// The Dold–Kan splitting C(X) = N(X) ⊕ D(X), degree by degree.
#[derive(Clone, Debug)]
pub struct Normalization {
    modulus: u64,
    complex: CochainComplex,
    pub degrees: Vec<NormalizedDegree>,
}

impl Normalization {
    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    /// Hⁿ of the normalized subcomplex, with cocycles given as vectors of Xⁿ.
    pub fn cohomology(&self, n: usize) -> Result<Presentation, CosimplicialError> {
        let top = self.degrees.len() - 1;
        if n >= top {
            return Err(CosimplicialError::OutOfBounds { degree: n + 1, bound: top });
        }
        let m = self.modulus;
        let here = &self.degrees[n];
        let d_out = ModMatrix::vstack(&[&here.degeneracy_stack, self.complex.differential(n)]);
        let d_in = if n == 0 {
            ModMatrix::zeros(m, here.rank, 0)
        } else {
            let below = &self.degrees[n - 1];
            let images: Vec<Vec<u64>> =
                below.generators.iter().map(|v| self.complex.differential(n - 1).mul_vec(v)).collect();
            ModMatrix::from_columns(m, here.rank, &images)
        };
        Ok(homology_at(&d_in, &d_out)?)
    }

    /// The map Hⁿ(N(X)) → Hⁿ(C(X)) induced by inclusion.
    pub fn inclusion_map(&self, n: usize) -> Result<GroupHom, CosimplicialError> {
        let hn = self.cohomology(n)?;
        let hc = self.complex.cohomology(n)?;
        let cols = hn.generators().iter().map(|z| hc.reduce(z)).collect::<Result<Vec<_>, _>>()?;
        Ok(GroupHom::new(hn.invariant_factors().to_vec(), hc.invariant_factors().to_vec(), cols))
    }
}

/// A bounded cochain complex of free ℤ/m-modules.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    modulus: u64,
    dims: Vec<usize>,
    d: Vec<ModMatrix>,
}

impl CochainComplex {
    pub fn new(modulus: u64, dims: Vec<usize>, d: Vec<ModMatrix>) -> Result<Self, CosimplicialError> {
        for (n, dn) in d.iter().enumerate() {
            if n > 0 {
                dn.check_composition_zero(&d[n - 1])?;
            }
        }
        Ok(CochainComplex { modulus, dims, d })
    }

    pub fn top(&self) -> usize {
        self.d.len()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn differential(&self, n: usize) -> &ModMatrix {
        &self.d[n]
    }

    /// Hⁿ for n < top.
    pub fn cohomology(&self, n: usize) -> Result<Presentation, CosimplicialError> {
        if n >= self.top() {
            return Err(CosimplicialError::OutOfBounds { degree: n + 1, bound: self.top() });
        }
        let d_in = if n == 0 { ModMatrix::zeros(self.modulus, self.dims[0], 0) } else { self.d[n - 1].clone() };
        Ok(homology_at(&d_in, &self.d[n])?)
    }

    pub fn squares_to_zero(&self) -> bool {
        (1..self.d.len()).all(|n| self.d[n].mul(&self.d[n - 1]).is_zero())
    }
}

/// Degree-wise matrices between two cochain complexes.
#[derive(Clone, Debug)]
pub struct CochainMap {
    pub maps: Vec<ModMatrix>,
}

impl CochainMap {
    /// d∘φⁿ = φⁿ⁺¹∘d for every n with both sides available.
    pub fn commutes(&self, src: &CochainComplex, dst: &CochainComplex) -> Result<(), usize> {
        for n in 0..self.maps.len().saturating_sub(1) {
            if n >= src.top() || n >= dst.top() {
                break;
            }
            if dst.differential(n).mul(&self.maps[n]) != self.maps[n + 1].mul(src.differential(n)) {
                return Err(n);
            }
        }
        Ok(())
    }

    pub fn induced(&self, n: usize, src: &Presentation, dst: &Presentation) -> Result<GroupHom, CosimplicialError> {
        let cols = src.generators().iter().map(|z| dst.reduce(&self.maps[n].mul_vec(z))).collect::<Result<Vec<_>, _>>()?;
        Ok(GroupHom::new(src.invariant_factors().to_vec(), dst.invariant_factors().to_vec(), cols))
    }
}

/// Sign convention of the shuffle map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum ShuffleSign {
    /// (−1) to the parity of the (μ, ν) shuffle permutation
    #[default]
    Parity,
    /// all shuffles with sign +1; not a cochain map in general
    Unsigned,
}

/// X^{p,q} for p, q ≤ bound with horizontal (p) and vertical (q) operators.
#[derive(Clone, Debug)]
pub struct CosimplicialBicomplex {
    modulus: u64,
    bound: usize,
    dims: Vec<Vec<usize>>,
    /// `h_faces[p][q][i]`: X^{p,q} → X^{p+1,q}
    h_faces: Vec<Vec<Vec<SparseMatrix>>>,
    /// `h_degens[p][q][j]`: X^{p+1,q} → X^{p,q}
    h_degens: Vec<Vec<Vec<SparseMatrix>>>,
    v_faces: Vec<Vec<Vec<SparseMatrix>>>,
    v_degens: Vec<Vec<Vec<SparseMatrix>>>,
}

fn pullback(m: u64, rows: usize, cols: usize, mut source: impl FnMut(usize) -> usize) -> SparseMatrix {
    let mut s = SparseMatrix::zeros(m, rows, cols);
    for r in 0..rows {
        s.add_at(r, source(r), 1);
    }
    s
}

impl CosimplicialBicomplex {
    /// X^{p,q} = all maps T^p × N^q → ℤ/m, with the coface operators of the
    /// matched-pair double complex before alternating sums.
    pub fn from_matched_pair(
        pair: &GroupMatchedPair,
        m: u64,
        bound: usize,
        guard: SizeGuard,
    ) -> Result<Self, CosimplicialError> {
        let tc = TupleCodec::new(pair.t().order(), false);
        let nc = TupleCodec::new(pair.n().order(), false);
        let dim = |p: usize, q: usize| tc.count(p) * nc.count(q);
        guard.check(dim(bound, bound), dim(bound, bound))?;
        let idx = |ts: &[usize], ns: &[usize]| {
            tc.encode(ts).expect("full codec") * nc.count(ns.len()) + nc.encode(ns).expect("full codec")
        };
        let split = |p: usize, q: usize, r: usize| {
            let nq = nc.count(q);
            (tc.decode(r / nq, p), nc.decode(r % nq, q))
        };
        let (t, n) = (pair.t(), pair.n());
        let mut h_faces = vec![vec![Vec::new(); bound + 1]; bound + 1];
        let mut h_degens = vec![vec![Vec::new(); bound + 1]; bound + 1];
        let mut v_faces = vec![vec![Vec::new(); bound + 1]; bound + 1];
        let mut v_degens = vec![vec![Vec::new(); bound + 1]; bound + 1];
        for p in 0..=bound {
            for q in 0..=bound {
                if p < bound {
                    let (rows, cols) = (dim(p + 1, q), dim(p, q));
                    for i in 0..=p + 1 {
                        h_faces[p][q].push(pullback(m, rows, cols, |r| {
                            let (s, ns) = split(p + 1, q, r);
                            if i == 0 {
                                idx(&s[..p], &pair.act_left_tuple(s[p], &ns))
                            } else if i == p + 1 {
                                idx(&s[1..], &ns)
                            } else {
                                let k = p + 1 - i;
                                let mut merged = s[..k - 1].to_vec();
                                merged.push(t.mul(s[k - 1], s[k]));
                                merged.extend_from_slice(&s[k + 1..]);
                                idx(&merged, &ns)
                            }
                        }));
                    }
                    for j in 0..=p {
                        // σ_hʲ inserts the identity at position p − j
                        h_degens[p][q].push(pullback(m, cols, rows, |r| {
                            let (s, ns) = split(p, q, r);
                            let mut ins = s.clone();
                            ins.insert(p - j, 0);
                            idx(&ins, &ns)
                        }));
                    }
                }
                if q < bound {
                    let (rows, cols) = (dim(p, q + 1), dim(p, q));
                    for i in 0..=q + 1 {
                        v_faces[p][q].push(pullback(m, rows, cols, |r| {
                            let (ts, ns) = split(p, q + 1, r);
                            if i == 0 {
                                idx(&pair.act_right_tuple(&ts, ns[0]), &ns[1..])
                            } else if i == q + 1 {
                                idx(&ts, &ns[..q])
                            } else {
                                let mut merged = ns[..i - 1].to_vec();
                                merged.push(n.mul(ns[i - 1], ns[i]));
                                merged.extend_from_slice(&ns[i + 1..]);
                                idx(&ts, &merged)
                            }
                        }));
                    }
                    for j in 0..=q {
                        v_degens[p][q].push(pullback(m, cols, rows, |r| {
                            let (ts, ns) = split(p, q, r);
                            let mut ins = ns.clone();
                            ins.insert(j, 0);
                            idx(&ts, &ins)
                        }));
                    }
                }
            }
        }
        let dims = (0..=bound).map(|p| (0..=bound).map(|q| dim(p, q)).collect()).collect();
        let x = CosimplicialBicomplex { modulus: m, bound, dims, h_faces, h_degens, v_faces, v_degens };
        x.validate()?;
        Ok(x)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims[p][q]
    }

    pub fn h_face(&self, p: usize, q: usize, i: usize) -> &SparseMatrix {
        &self.h_faces[p][q][i]
    }

    pub fn v_face(&self, p: usize, q: usize, i: usize) -> &SparseMatrix {
        &self.v_faces[p][q][i]
    }

    pub fn h_degeneracy(&self, p: usize, q: usize, j: usize) -> &SparseMatrix {
        &self.h_degens[p][q][j]
    }

    pub fn v_degeneracy(&self, p: usize, q: usize, j: usize) -> &SparseMatrix {
        &self.v_degens[p][q][j]
    }

    /// The horizontal cosimplicial object X^{•,q}.
    pub fn row(&self, q: usize) -> Result<CosimplicialObject, CosimplicialError> {
        CosimplicialObject::new(
            self.modulus,
            (0..=self.bound).map(|p| self.dims[p][q]).collect(),
            (0..self.bound).map(|p| self.h_faces[p][q].clone()).collect(),
            (0..self.bound).map(|p| self.h_degens[p][q].clone()).collect(),
        )
    }

    /// The vertical cosimplicial object X^{p,•}.
    pub fn column(&self, p: usize) -> Result<CosimplicialObject, CosimplicialError> {
        CosimplicialObject::new(
            self.modulus,
            (0..=self.bound).map(|q| self.dims[p][q]).collect(),
            (0..self.bound).map(|q| self.v_faces[p][q].clone()).collect(),
            (0..self.bound).map(|q| self.v_degens[p][q].clone()).collect(),
        )
    }

    /// Rows and columns are cosimplicial, and horizontal operators commute with vertical ones.
    pub fn validate(&self) -> Result<(), CosimplicialError> {
        for k in 0..=self.bound {
            self.row(k)?;
            self.column(k)?;
        }
        let b = self.bound;
        let fail = |what: &str, p: usize, q: usize| CosimplicialError::IdentityFailed(format!("{what} at ({p}, {q})"));
        for p in 0..b {
            for q in 0..b {
                for i in 0..=p + 1 {
                    for j in 0..=q + 1 {
                        let hv = self.h_faces[p][q + 1][i].mul(&self.v_faces[p][q][j]);
                        let vh = self.v_faces[p + 1][q][j].mul(&self.h_faces[p][q][i]);
                        if !same(&hv, &vh) {
                            return Err(fail("∂_h∂_v = ∂_v∂_h", p, q));
                        }
                    }
                    for j in 0..=q {
                        // X^{p,q+1} → X^{p+1,q}
                        let a = self.v_degens[p + 1][q][j].mul(&self.h_faces[p][q + 1][i]);
                        let c = self.h_faces[p][q][i].mul(&self.v_degens[p][q][j]);
                        if !same(&a, &c) {
                            return Err(fail("σ_v∂_h = ∂_hσ_v", p, q));
                        }
                    }
                }
                for i in 0..=p {
                    for j in 0..=q + 1 {
                        let a = self.v_faces[p][q][j].mul(&self.h_degens[p][q][i]);
                        let c = self.h_degens[p][q + 1][i].mul(&self.v_faces[p + 1][q][j]);
                        if !same(&a, &c) {
                            return Err(fail("∂_vσ_h = σ_h∂_v", p, q));
                        }
                    }
                    for j in 0..=q {
                        let a = self.h_degens[p][q][i].mul(&self.v_degens[p + 1][q][j]);
                        let c = self.v_degens[p][q][j].mul(&self.h_degens[p][q + 1][i]);
                        if !same(&a, &c) {
                            return Err(fail("σ_hσ_v = σ_vσ_h", p, q));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Diagⁿ = X^{n,n} with ∂ⁱ = ∂_hⁱ∂_vⁱ and σʲ = σ_hʲσ_vʲ.
    pub fn diag(&self) -> Result<CosimplicialObject, CosimplicialError> {
        let b = self.bound;
        let faces = (0..b)
            .map(|n| (0..=n + 1).map(|i| self.h_faces[n][n + 1][i].mul(&self.v_faces[n][n][i])).collect())
            .collect();
        let degens = (0..b)
            .map(|n| (0..=n).map(|j| self.h_degens[n][n][j].mul(&self.v_degens[n + 1][n][j])).collect())
            .collect();
        CosimplicialObject::new(self.modulus, (0..=b).map(|n| self.dims[n][n]).collect(), faces, degens)
    }

    /// Blocks (p, offset, dim) of Totⁿ = ⊕_{p+q=n} X^{p,q}, ascending in p.
    pub fn tot_blocks(&self, n: usize) -> Vec<(usize, usize, usize)> {
        let mut off = 0;
        (0..=n)
            .map(|p| {
                let d = self.dims[p][n - p];
                let b = (p, off, d);
                off += d;
                b
            })
            .collect()
    }

    /// Tot with d = d_h + d_v, d_h = Σ(−1)ⁱ∂_hⁱ and d_v = Σ(−1)^{p+j}∂_vʲ, up to degree `bound`.
    pub fn tot(&self) -> CochainComplex {
        let m = self.modulus;
        let mut dims = Vec::new();
        let mut d = Vec::new();
        for n in 0..=self.bound {
            let src = self.tot_blocks(n);
            dims.push(src.iter().map(|b| b.2).sum());
            if n == self.bound {
                break;
            }
            let dst = self.tot_blocks(n + 1);
            let rows: usize = dst.iter().map(|b| b.2).sum();
            let cols: usize = src.iter().map(|b| b.2).sum();
            let mut mat = ModMatrix::zeros(m, rows, cols);
            for &(p, off, _) in &src {
                let q = n - p;
                let dh = alternating_sum(&self.h_faces[p][q], 0);
                let dv = alternating_sum(&self.v_faces[p][q], p);
                paste(&mut mat, &dh, dst[p + 1].1, off);
                paste(&mut mat, &dv, dst[p].1, off);
            }
            d.push(mat);
        }
        CochainComplex { modulus: m, dims, d }
    }

    /// g: Tot → C(Diag), g on X^{p,q} being ∂_hⁿ⋯∂_h^{p+1}(∂_v⁰)^p.
    pub fn alexander_whitney(&self) -> CochainMap {
        let m = self.modulus;
        let maps = (0..=self.bound)
            .map(|n| {
                let blocks = self.tot_blocks(n);
                let cols: usize = blocks.iter().map(|b| b.2).sum();
                let mut g = ModMatrix::zeros(m, self.dims[n][n], cols);
                for &(p, off, dim) in &blocks {
                    let mut op = SparseMatrix::identity(m, dim);
                    for k in 0..p {
                        op = self.v_faces[p][n - p + k][0].mul(&op);
                    }
                    for k in p + 1..=n {
                        op = self.h_faces[k - 1][n][k].mul(&op);
                    }
                    op.write_into(&mut g, 0, off, 1);
                }
                g
            })
            .collect();
        CochainMap { maps }
    }

    /// f: C(Diag) → Tot, f to X^{p,q} being Σ ± σ_h^{ν₁}⋯σ_h^{ν_q}σ_v^{μ₁}⋯σ_v^{μ_p}
    /// over (p, q)-shuffles (μ, ν).
    pub fn shuffle(&self, sign: ShuffleSign) -> CochainMap {
        let m = self.modulus;
        let maps = (0..=self.bound)
            .map(|n| {
                let blocks = self.tot_blocks(n);
                let rows: usize = blocks.iter().map(|b| b.2).sum();
                let mut f = ModMatrix::zeros(m, rows, self.dims[n][n]);
                for &(p, off, _) in &blocks {
                    let q = n - p;
                    for (mu, nu, odd) in shuffles(p, q) {
                        let mut op = SparseMatrix::identity(m, self.dims[n][n]);
                        let mut cur = (n, n);
                        for &j in mu.iter().rev() {
                            op = self.v_degens[cur.0][cur.1 - 1][j].mul(&op);
                            cur.1 -= 1;
                        }
                        for &j in nu.iter().rev() {
                            op = self.h_degens[cur.0 - 1][cur.1][j].mul(&op);
                            cur.0 -= 1;
                        }
                        let c = match sign {
                            ShuffleSign::Parity if odd => m - 1,
                            _ => 1,
                        };
                        op.write_into(&mut f, off, 0, c);
                    }
                }
                f
            })
            .collect();
        CochainMap { maps }
    }
}

fn paste(dst: &mut ModMatrix, block: &ModMatrix, r0: usize, c0: usize) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = block.get(i, j);
            if v != 0 {
                dst.add_at(r0 + i, c0 + j, v);
            }
        }
    }
}

/// (p, q)-shuffles as (μ, ν, odd) with μ the p positions, ν the rest, and
/// `odd` the parity of the permutation listing μ then ν.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>, bool)> {
    let n = p + q;
    let mut out = Vec::new();
    let mut mu = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, mu: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Vec<usize>, bool)>) {
        if mu.len() == p {
            let nu: Vec<usize> = (0..n).filter(|x| !mu.contains(x)).collect();
            let inversions: usize = mu.iter().map(|&a| nu.iter().filter(|&&b| b < a).count()).sum();
            out.push((mu.clone(), nu, inversions % 2 == 1));
            return;
        }
        for x in start..n {
            mu.push(x);
            rec(x + 1, n, p, mu, out);
            mu.pop();
        }
    }
    rec(0, n, p, &mut mu, &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct EzDegree {
    pub degree: usize,
    pub tot: Vec<u64>,
    pub diag: Vec<u64>,
    pub g_star: GroupHom,
    pub f_star: GroupHom,
    pub mutually_inverse: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EzReport {
    pub modulus: u64,
    pub shuffle_sign: ShuffleSign,
    pub degrees: Vec<EzDegree>,
}

impl EzReport {
    pub fn all_isomorphisms(&self) -> bool {
        self.degrees.iter().all(|d| d.mutually_inverse)
    }
}

/// Checks that g and f are cochain maps and inverse to each other on Hⁿ for n ≤ n_max.
pub fn verify_ez(x: &CosimplicialBicomplex, n_max: usize, sign: ShuffleSign) -> Result<EzReport, CosimplicialError> {
    if n_max + 1 > x.bound() {
        return Err(CosimplicialError::OutOfBounds { degree: n_max + 1, bound: x.bound() });
    }
    let tot = x.tot();
    let diag = x.diag()?.cochain_complex();
    let g = x.alexander_whitney();
    let f = x.shuffle(sign);
    g.commutes(&tot, &diag).map_err(|degree| CosimplicialError::NotChainMap { map: "alexander-whitney", degree })?;
    f.commutes(&diag, &tot).map_err(|degree| CosimplicialError::NotChainMap { map: "shuffle", degree })?;
    let mut degrees = Vec::new();
    for n in 0..=n_max {
        let ht = tot.cohomology(n)?;
        let hd = diag.cohomology(n)?;
        let g_star = g.induced(n, &ht, &hd)?;
        let f_star = f.induced(n, &hd, &ht)?;
        let mutually_inverse = g_star.then(&f_star) == GroupHom::identity(ht.invariant_factors().to_vec())
            && f_star.then(&g_star) == GroupHom::identity(hd.invariant_factors().to_vec());
        degrees.push(EzDegree {
            degree: n,
            tot: ht.invariant_factors().to_vec(),
            diag: hd.invariant_factors().to_vec(),
            g_star,
            f_star,
            mutually_inverse,
        });
    }
    Ok(EzReport { modulus: x.modulus(), shuffle_sign: sign, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::standard::{inversion_pair, trivial_pair};

    #[test]
    fn shuffle_enumeration() {
        let s = shuffles(2, 1);
        assert_eq!(s.len(), 3);
        assert_eq!(s[0], (vec![0, 1], vec![2], false));
        assert_eq!(s[1], (vec![0, 2], vec![1], true));
        assert_eq!(s[2], (vec![1, 2], vec![0], false));
    }

    #[test]
    fn constant_object_normalizes_to_degree_zero() {
        let x = CosimplicialObject::constant(4, 2, 3);
        x.validate().unwrap();
        let n = x.normalize().unwrap();
        assert_eq!(n.degrees[0].normalized_rank, 2);
        assert!(n.degrees[1..].iter().all(|d| d.normalized_rank == 0));
    }

    #[test]
    fn matched_pair_bicomplex_identities() {
        for pair in [trivial_pair(2, 2), inversion_pair(3)] {
            let x = CosimplicialBicomplex::from_matched_pair(&pair, 6, 2, SizeGuard::default()).unwrap();
            assert!(x.tot().squares_to_zero());
            x.diag().unwrap();
        }
    }

    #[test]
    fn ez_on_small_pair() {
        let x = CosimplicialBicomplex::from_matched_pair(&inversion_pair(3), 6, 3, SizeGuard::default()).unwrap();
        let r = verify_ez(&x, 2, ShuffleSign::Parity).unwrap();
        assert!(r.all_isomorphisms());
        assert_eq!(x.alexander_whitney().maps[0], ModMatrix::identity(6, 1));
        assert!(matches!(verify_ez(&x, 2, ShuffleSign::Unsigned), Err(CosimplicialError::NotChainMap { .. })));
    }
}
