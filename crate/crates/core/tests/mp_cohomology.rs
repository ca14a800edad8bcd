//! Double-complex computations checked against a pointwise oracle that
//! evaluates the twisted differentials straight from the pair's tables.

use kacseq::fingroup::standard::{inversion_pair, s4_factorization, trivial_pair};
use kacseq::fingroup::GroupMatchedPair;
use kacseq::mpcomplex::{
    bidegree_cohomology, build_double_complex, iterated_group_cohomology, matched_pair_cohomology, MPError,
};
use proptest::prelude::*;
use std::collections::HashSet;

type Key = (Vec<usize>, Vec<usize>);

fn tuples(order: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| (1..order).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Cochains of bidegree (p, q) as explicit lists of keys.
fn keys(pair: &GroupMatchedPair, p: usize, q: usize) -> Vec<Key> {
    let mut out = Vec::new();
    for t in tuples(pair.t().order(), p) {
        for n in tuples(pair.n().order(), q) {
            out.push((t.clone(), n));
        }
    }
    out
}

struct Oracle<'a> {
    pair: &'a GroupMatchedPair,
    m: u64,
}

impl Oracle<'_> {
    fn eval(&self, f: &[(Key, u64)], t: &[usize], n: &[usize]) -> u64 {
        if t.contains(&0) || n.contains(&0) {
            return 0;
        }
        f.iter().find(|(k, _)| k.0 == t && k.1 == n).map_or(0, |e| e.1)
    }

    /// Right action of n on a tuple of T, computed from the last entry backwards.
    fn right_tuple(&self, ts: &[usize], n: usize) -> Vec<usize> {
        let mut out = ts.to_vec();
        let mut cur = n;
        for k in (0..ts.len()).rev() {
            out[k] = self.pair.right(ts[k], cur);
            cur = self.pair.left(ts[k], cur);
        }
        out
    }

    fn left_tuple(&self, t: usize, ns: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = t;
        for &x in ns {
            out.push(self.pair.left(cur, x));
            cur = self.pair.right(cur, x);
        }
        out
    }

    fn delta_n(&self, f: &[(Key, u64)], t: &[usize], n: &[usize]) -> u64 {
        let q = n.len() - 1;
        let mut s = self.eval(f, &self.right_tuple(t, n[0]), &n[1..]) as i64;
        for i in 1..=q {
            let mut merged = n[..i - 1].to_vec();
            merged.push(self.pair.n().mul(n[i - 1], n[i]));
            merged.extend_from_slice(&n[i + 1..]);
            s += (-1i64).pow(i as u32) * self.eval(f, t, &merged) as i64;
        }
        s += (-1i64).pow(q as u32 + 1) * self.eval(f, t, &n[..q]) as i64;
        s.rem_euclid(self.m as i64) as u64
    }

    fn delta_t(&self, f: &[(Key, u64)], s: &[usize], n: &[usize]) -> u64 {
        let p = s.len() - 1;
        let mut acc = self.eval(f, &s[..p], &self.left_tuple(s[p], n)) as i64;
        for j in 1..=p {
            let k = p + 1 - j;
            let mut merged = s[..k - 1].to_vec();
            merged.push(self.pair.t().mul(s[k - 1], s[k]));
            merged.extend_from_slice(&s[k + 1..]);
            acc += (-1i64).pow(j as u32) * self.eval(f, &merged, n) as i64;
        }
        acc += (-1i64).pow(p as u32 + 1) * self.eval(f, &s[1..], n) as i64;
        acc.rem_euclid(self.m as i64) as u64
    }

    /// D = δ_T + (−1)^p δ_N on a total cochain given as a list of (key, value); returns the nonzero part.
    fn total_d(&self, f: &[(Key, u64)], k: usize) -> Vec<(Key, u64)> {
        let m = self.m;
        let mut out = Vec::new();
        for p in 1..k + 1 {
            let q = k + 1 - p;
            for key in keys(self.pair, p, q) {
                let mut v = 0;
                if p >= 2 {
                    let part: Vec<_> = f.iter().filter(|e| e.0 .0.len() == p - 1).cloned().collect();
                    v += self.delta_t(&part, &key.0, &key.1);
                }
                if q >= 2 {
                    let part: Vec<_> = f.iter().filter(|e| e.0 .0.len() == p).cloned().collect();
                    let d = self.delta_n(&part, &key.0, &key.1);
                    v += if p % 2 == 0 { d } else { m - d };
                }
                if v % m != 0 {
                    out.push((key, v % m));
                }
            }
        }
        out
    }
}

fn all_cochains(basis: &[Key], m: u64) -> Vec<Vec<(Key, u64)>> {
    let mut out = vec![vec![]];
    for key in basis {
        out = out
            .into_iter()
            .flat_map(|v: Vec<(Key, u64)>| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    if x != 0 {
                        w.push((key.clone(), x));
                    }
                    w
                })
            })
            .collect();
    }
    out
}

fn total_basis(pair: &GroupMatchedPair, k: usize) -> Vec<Key> {
    (1..k).flat_map(|p| keys(pair, p, k - p)).collect()
}

fn canon(mut v: Vec<(Key, u64)>) -> Vec<(Key, u64)> {
    v.sort();
    v
}

/// |ℋ^i| by enumeration of Tot^{i+1} cocycles and Tot^i coboundaries.
fn oracle_order(pair: &GroupMatchedPair, m: u64, i: usize) -> usize {
    let o = Oracle { pair, m };
    let z = all_cochains(&total_basis(pair, i + 1), m).into_iter().filter(|f| o.total_d(f, i + 1).is_empty()).count();
    let b: HashSet<_> = all_cochains(&total_basis(pair, i), m).iter().map(|g| canon(o.total_d(g, i))).collect();
    z / b.len()
}

/// |ℋ^i_p| = |𝒵_p| / |𝒵_p ∩ ℬ| by enumeration.
fn oracle_restricted_order(pair: &GroupMatchedPair, m: u64, i: usize, p: usize) -> usize {
    let o = Oracle { pair, m };
    let z = all_cochains(&keys(pair, p, i + 1 - p), m).into_iter().filter(|f| o.total_d(f, i + 1).is_empty()).count();
    let b: HashSet<_> = all_cochains(&total_basis(pair, i), m)
        .iter()
        .map(|g| canon(o.total_d(g, i)))
        .filter(|x| x.iter().all(|e| e.0 .0.len() == p))
        .collect();
    z / b.len()
}

fn order(f: &[u64]) -> usize {
    f.iter().product::<u64>() as usize
}

#[test]
fn first_degree_matches_enumeration() {
    for (pair, m) in [(trivial_pair(2, 2), 2), (trivial_pair(2, 2), 4), (inversion_pair(3), 3), (trivial_pair(2, 3), 6)] {
        let h = matched_pair_cohomology(&pair, m, 1).unwrap();
        assert_eq!(order(h.invariant_factors()), oracle_order(&pair, m, 1));
    }
    assert_eq!(matched_pair_cohomology(&trivial_pair(2, 2), 2, 1).unwrap().invariant_factors(), &[2]);
}

#[test]
fn second_degree_matches_enumeration() {
    for (pair, m) in [(trivial_pair(2, 2), 2), (inversion_pair(3), 2), (trivial_pair(3, 2), 2)] {
        let dc = build_double_complex(&pair, m, 3, 3).unwrap();
        let h = dc.cohomology(2).unwrap();
        assert_eq!(order(h.invariant_factors()), oracle_order(&pair, m, 2));
        for p in 1..=2 {
            let r = dc.restricted_subgroup(&h, p).unwrap();
            assert_eq!(order(r.presentation.invariant_factors()), oracle_restricted_order(&pair, m, 2, p), "p = {p}");
            assert!(r.embedding.is_injective());
        }
    }
}

#[test]
fn twisted_differentials_match_the_oracle_entrywise() {
    let pair = inversion_pair(3);
    let m = 6;
    let dc = build_double_complex(&pair, m, 2, 2).unwrap();
    let o = Oracle { pair: &pair, m };
    for (p, q) in [(1, 1), (2, 1), (1, 2), (0, 2), (2, 0)] {
        for (col, t, n) in dc.basis(p, q) {
            let f = vec![((t.clone(), n.clone()), 1)];
            if q < 2 {
                let dn = dc.delta_n(p, q).to_dense();
                for (row, t2, n2) in dc.basis(p, q + 1) {
                    assert_eq!(dn.get(row, col), o.delta_n(&f, &t2, &n2));
                }
            }
            if p < 2 {
                let dt = dc.delta_t(p, q).to_dense();
                for (row, t2, n2) in dc.basis(p + 1, q) {
                    assert_eq!(dt.get(row, col), o.delta_t(&f, &t2, &n2));
                }
            }
        }
    }
    // the two differentials commute as dense matrices too
    let lhs = dc.delta_n(2, 1).to_dense().mul(&dc.delta_t(1, 1).to_dense());
    let rhs = dc.delta_t(1, 2).to_dense().mul(&dc.delta_n(1, 1).to_dense());
    assert_eq!(lhs, rhs);
}

#[test]
fn trivial_t_gives_nothing() {
    let pair = GroupMatchedPair::trivial_actions(kacseq::fingroup::FiniteGroup::trivial(), kacseq::fingroup::FiniteGroup::cyclic(4));
    let dc = build_double_complex(&pair, 4, 3, 3).unwrap();
    let h2 = dc.cohomology(2).unwrap();
    assert!(h2.presentation.is_trivial());
    for p in 1..=2 {
        assert!(dc.restricted_subgroup(&h2, p).unwrap().presentation.is_trivial());
    }
}

#[test]
fn bounds_are_enforced() {
    let dc = build_double_complex(&trivial_pair(2, 2), 2, 2, 2).unwrap();
    assert!(matches!(dc.cohomology(2), Err(MPError::InsufficientBounds { .. })));
    assert!(dc.cohomology(1).is_ok());
}

#[test]
fn bidegree_needs_trivial_right_action() {
    assert!(matches!(bidegree_cohomology(&s4_factorization(), 2, 1, 1), Err(MPError::NonTrivialRightAction)));
}

#[test]
fn bidegree_one_one_is_the_pairing_group() {
    // trivial actions on C₂, C₂: bilinear maps C₂ × C₂ → ℤ/2
    assert_eq!(bidegree_cohomology(&trivial_pair(2, 2), 2, 1, 1).unwrap().presentation.invariant_factors(), &[2]);
}

#[test]
fn second_degree_top_part_matches_bidegree_column() {
    for (pair, m) in [(inversion_pair(3), 6), (trivial_pair(2, 2), 2), (trivial_pair(2, 2), 4), (inversion_pair(4), 4), (trivial_pair(3, 3), 3)] {
        let dc = build_double_complex(&pair, m, 3, 3).unwrap();
        let h2 = dc.cohomology(2).unwrap();
        let top = dc.restricted_subgroup(&h2, 2).unwrap();
        let h21 = dc.bidegree_cohomology(2, 1).unwrap();
        assert_eq!(top.presentation.invariant_factors(), h21.presentation.invariant_factors());
    }
}

#[test]
fn first_degree_top_part_differs_from_bidegree_column() {
    // the N-edge coboundaries δ_T Hom(N, ℤ/m) are divided out of H^{1,1} but not of ℋ¹
    let dc = build_double_complex(&inversion_pair(3), 3, 2, 2).unwrap();
    let h1 = dc.cohomology(1).unwrap();
    assert_eq!(dc.restricted_subgroup(&h1, 1).unwrap().presentation.invariant_factors(), &[3]);
    assert!(dc.bidegree_cohomology(1, 1).unwrap().presentation.is_trivial());
}

#[test]
fn iterated_cohomology_of_smash_products() {
    let cases = [
        (inversion_pair(3), 3, 1, 2),
        (inversion_pair(3), 6, 1, 1),
        (inversion_pair(3), 6, 2, 1),
        (inversion_pair(4), 4, 1, 2),
        (inversion_pair(4), 2, 2, 1),
        (trivial_pair(2, 2), 2, 1, 2),
        (trivial_pair(2, 2), 2, 2, 1),
    ];
    for (pair, m, i, j) in cases {
        let lhs = iterated_group_cohomology(&pair, m, i, j).unwrap();
        let rhs = bidegree_cohomology(&pair, m, i, j).unwrap();
        assert_eq!(lhs.invariant_factors(), rhs.presentation.invariant_factors(), "m = {m}, (i, j) = ({i}, {j})");
    }
}

#[test]
fn pi_sequences_are_exact() {
    for (pair, m) in [(inversion_pair(3), 6), (trivial_pair(2, 2), 2), (inversion_pair(4), 4)] {
        let r = build_double_complex(&pair, m, 3, 3).unwrap().verify_pi_exactness().unwrap();
        assert!(r.verdict.composite_zero);
        assert!(r.verdict.exact, "{:?}", r.verdict);
    }
}

proptest! {
    #[test]
    fn rank_formula(a in 1usize..5, b in 1usize..5, p_max in 0usize..4, q_max in 0usize..4) {
        let dc = build_double_complex(&trivial_pair(a, b), 2, p_max, q_max).unwrap();
        for p in 0..=p_max {
            for q in 0..=q_max {
                prop_assert_eq!(dc.dim(p, q), (a - 1).pow(p as u32) * (b - 1).pow(q as u32));
            }
        }
    }

    #[test]
    fn coprime_coefficients_kill_trivial_pairs(a in 1usize..5, b in 1usize..5, m in prop::sample::select(vec![5u64, 7, 11])) {
        for i in 1..=2 {
            prop_assert!(matched_pair_cohomology(&trivial_pair(a, b), m, i).unwrap().presentation.is_trivial());
        }
    }
}
