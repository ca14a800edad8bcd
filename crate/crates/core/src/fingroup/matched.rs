use super::{FiniteGroup, GroupError};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The identities a matched pair of groups has to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    /// 1▷n = n
    LeftUnit,
    /// t◁1 = t
    RightUnit,
    /// t▷1 = 1
    LeftOnIdentity,
    /// 1◁n = 1
    RightOnIdentity,
    /// (ts)▷n = t▷(s▷n)
    LeftAction,
    /// t◁(nm) = (t◁n)◁m
    RightAction,
    /// t▷(nm) = (t▷n)·((t◁n)▷m)
    LeftOnProduct,
    /// (ts)◁n = (t◁(s▷n))·(s◁n)
    RightOnProduct,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::LeftUnit => "1▷n = n",
            Axiom::RightUnit => "t◁1 = t",
            Axiom::LeftOnIdentity => "t▷1 = 1",
            Axiom::RightOnIdentity => "1◁n = 1",
            Axiom::LeftAction => "(ts)▷n = t▷(s▷n)",
            Axiom::RightAction => "t◁(nm) = (t◁n)◁m",
            Axiom::LeftOnProduct => "t▷(nm) = (t▷n)((t◁n)▷m)",
            Axiom::RightOnProduct => "(ts)◁n = (t◁(s▷n))(s◁n)",
        };
        f.write_str(s)
    }
}

/// Groups T and N acting on each other: T acts on the set N from the
/// left (t▷n) and N acts on the set T from the right (t◁n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMatchedPair {
    t: FiniteGroup,
    n: FiniteGroup,
    left: Vec<usize>,
    right: Vec<usize>,
}

/// How the factors sit inside the group they were cut out of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Element of the ambient group for each element of N.
    pub n_embed: Vec<usize>,
    pub t_embed: Vec<usize>,
}

impl GroupMatchedPair {
    /// Checks every matched-pair axiom exhaustively.
    ///
    /// `left[t][n]` is t▷n and `right[t][n]` is t◁n.
    pub fn new(t: FiniteGroup, n: FiniteGroup, left: &[Vec<usize>], right: &[Vec<usize>]) -> Result<Self, GroupError> {
        let (nt, nn) = (t.order(), n.order());
        let flat = |table: &[Vec<usize>], name: &'static str, bound: usize| -> Result<Vec<usize>, GroupError> {
            let bad_shape = table.len() != nt || table.iter().any(|r| r.len() != nn);
            if bad_shape {
                return Err(GroupError::ActionShape {
                    table: name,
                    rows: table.len(),
                    cols: table.first().map_or(0, |r| r.len()),
                    exp_rows: nt,
                    exp_cols: nn,
                });
            }
            for (i, row) in table.iter().enumerate() {
                if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= bound) {
                    return Err(GroupError::ActionOutOfRange { table: name, row: i, col: j, value: v });
                }
            }
            Ok(table.iter().flatten().copied().collect())
        };
        let left = flat(left, "left", nn)?;
        let right = flat(right, "right", nt)?;
        let mp = GroupMatchedPair { t, n, left, right };
        mp.check_axioms()?;
        Ok(mp)
    }

    /// Both actions trivial: the bismash product is N × T.
    pub fn trivial_actions(t: FiniteGroup, n: FiniteGroup) -> Self {
        let left = (0..t.order()).flat_map(|_| 0..n.order()).collect();
        let right = (0..t.order()).flat_map(|ti| std::iter::repeat(ti).take(n.order())).collect();
        GroupMatchedPair { t, n, left, right }
    }

    /// T acting on N by automorphisms with trivial right action (a semidirect product N⋊T).
    pub fn semidirect(t: FiniteGroup, n: FiniteGroup, action: &[Vec<usize>]) -> Result<Self, GroupError> {
        let right: Vec<Vec<usize>> = (0..t.order()).map(|ti| vec![ti; n.order()]).collect();
        Self::new(t, n, action, &right)
    }

    fn check_axioms(&self) -> Result<(), GroupError> {
        let (t, n) = (&self.t, &self.n);
        let (nt, nn) = (t.order(), n.order());
        let fail = |axiom, witness: Vec<usize>| Err(GroupError::AxiomViolation { axiom, witness });
        for x in 0..nn {
            if self.left(0, x) != x {
                return fail(Axiom::LeftUnit, vec![x]);
            }
            if self.right(0, x) != 0 {
                return fail(Axiom::RightOnIdentity, vec![x]);
            }
        }
        for s in 0..nt {
            if self.right(s, 0) != s {
                return fail(Axiom::RightUnit, vec![s]);
            }
            if self.left(s, 0) != 0 {
                return fail(Axiom::LeftOnIdentity, vec![s]);
            }
        }
        for a in 0..nt {
            for x in 0..nn {
                for y in 0..nn {
                    if self.right(a, n.mul(x, y)) != self.right(self.right(a, x), y) {
                        return fail(Axiom::RightAction, vec![a, x, y]);
                    }
                    let lhs = self.left(a, n.mul(x, y));
                    let rhs = n.mul(self.left(a, x), self.left(self.right(a, x), y));
                    if lhs != rhs {
                        return fail(Axiom::LeftOnProduct, vec![a, x, y]);
                    }
                }
            }
        }
        for a in 0..nt {
            for b in 0..nt {
                for x in 0..nn {
                    if self.left(t.mul(a, b), x) != self.left(a, self.left(b, x)) {
                        return fail(Axiom::LeftAction, vec![a, b, x]);
                    }
                    let lhs = self.right(t.mul(a, b), x);
                    let rhs = t.mul(self.right(a, self.left(b, x)), self.right(b, x));
                    if lhs != rhs {
                        return fail(Axiom::RightOnProduct, vec![a, b, x]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Reads off t▷n and t◁n from t·n = (t▷n)·(t◁n) inside `f`.
    pub fn from_exact_factorization(
        f: &FiniteGroup,
        n_elems: &[usize],
        t_elems: &[usize],
    ) -> Result<(Self, Factorization), GroupError> {
        let (n, n_embed) = f.subgroup(n_elems).map_err(|_| GroupError::NotSubgroup("N".into()))?;
        let (t, t_embed) = f.subgroup(t_elems).map_err(|_| GroupError::NotSubgroup("T".into()))?;
        if n.order() * t.order() != f.order() {
            return Err(GroupError::NotExactFactorization(format!(
                "|N|·|T| = {}·{} but |F| = {}",
                n.order(),
                t.order(),
                f.order()
            )));
        }
        // each element of F as n·t
        let mut split = vec![None; f.order()];
        for (ni, &ne) in n_embed.iter().enumerate() {
            for (ti, &te) in t_embed.iter().enumerate() {
                let x = f.mul(ne, te);
                if split[x].replace((ni, ti)).is_some() {
                    return Err(GroupError::NotExactFactorization(format!(
                        "element {} has two factorizations n·t",
                        f.name(x)
                    )));
                }
            }
        }
        let (nt, nn) = (t.order(), n.order());
        let mut left = vec![vec![0; nn]; nt];
        let mut right = vec![vec![0; nn]; nt];
        for (ti, &te) in t_embed.iter().enumerate() {
            for (ni, &ne) in n_embed.iter().enumerate() {
                let (a, b) = split[f.mul(te, ne)].expect("bijective factorization");
                left[ti][ni] = a;
                right[ti][ni] = b;
            }
        }
        let mp = Self::new(t, n, &left, &right)?;
        Ok((mp, Factorization { n_embed, t_embed }))
    }

    pub fn t(&self) -> &FiniteGroup {
        &self.t
    }

    pub fn n(&self) -> &FiniteGroup {
        &self.n
    }

    /// t▷n
    #[inline]
    pub fn left(&self, t: usize, n: usize) -> usize {
        self.left[t * self.n.order() + n]
    }

    /// t◁n
    #[inline]
    pub fn right(&self, t: usize, n: usize) -> usize {
        self.right[t * self.n.order() + n]
    }

    pub fn left_table(&self) -> Vec<Vec<usize>> {
        self.left.chunks(self.n.order()).map(|r| r.to_vec()).collect()
    }

    pub fn right_table(&self) -> Vec<Vec<usize>> {
        self.right.chunks(self.n.order()).map(|r| r.to_vec()).collect()
    }

    pub fn left_is_trivial(&self) -> bool {
        (0..self.t.order()).all(|t| (0..self.n.order()).all(|n| self.left(t, n) == n))
    }

    pub fn right_is_trivial(&self) -> bool {
        (0..self.t.order()).all(|t| (0..self.n.order()).all(|n| self.right(t, n) == t))
    }

    /// t▷(n₁,…,n_p) = (t▷n₁, (t◁n₁)▷(n₂,…,n_p)).
    pub fn act_left_tuple(&self, t: usize, ns: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(ns.len());
        let mut cur = t;
        for &x in ns {
            out.push(self.left(cur, x));
            cur = self.right(cur, x);
        }
        out
    }

    /// (t₁,…,t_q)◁n = ((t₁,…,t_{q−1})◁(t_q▷n), t_q◁n).
    pub fn act_right_tuple(&self, ts: &[usize], n: usize) -> Vec<usize> {
        let mut out = vec![0; ts.len()];
        let mut cur = n;
        for (k, &s) in ts.iter().enumerate().rev() {
            out[k] = self.right(s, cur);
            cur = self.left(s, cur);
        }
        out
    }

    pub fn bismash(&self) -> BismashGroup {
        let (nt, nn) = (self.t.order(), self.n.order());
        let order = nt * nn;
        let table: Vec<Vec<usize>> = (0..order)
            .map(|x| {
                let (n1, t1) = (x / nt, x % nt);
                (0..order)
                    .map(|y| {
                        let (n2, t2) = (y / nt, y % nt);
                        let n = self.n.mul(n1, self.left(t1, n2));
                        let t = self.t.mul(self.right(t1, n2), t2);
                        n * nt + t
                    })
                    .collect()
            })
            .collect();
        let group = FiniteGroup::from_table(&table).expect("validated matched pair gives a group");
        BismashGroup { group, nt, nn }
    }
}

/// N⋈T on pairs (n, t), stored at index n·|T| + t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BismashGroup {
    group: FiniteGroup,
    nt: usize,
    nn: usize,
}

impl BismashGroup {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn element(&self, n: usize, t: usize) -> usize {
        n * self.nt + t
    }

    /// (n, t) with h = n·t.
    pub fn split(&self, h: usize) -> (usize, usize) {
        (h / self.nt, h % self.nt)
    }

    pub fn embed_n(&self, n: usize) -> usize {
        n * self.nt
    }

    pub fn embed_t(&self, t: usize) -> usize {
        t
    }

    pub fn n_embedding(&self) -> Vec<usize> {
        (0..self.nn).map(|n| self.embed_n(n)).collect()
    }

    pub fn t_embedding(&self) -> Vec<usize> {
        (0..self.nt).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn inversion_pair(n: usize) -> GroupMatchedPair {
        let inv: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
        let left = vec![(0..n).collect(), inv];
        GroupMatchedPair::semidirect(FiniteGroup::cyclic(2), FiniteGroup::cyclic(n), &left).unwrap()
    }

    #[test]
    fn inversion_gives_s3() {
        let mp = inversion_pair(3);
        let h = mp.bismash();
        let stats = h.group().order_statistics();
        assert_eq!(stats[&3], 2);
        assert_eq!(stats[&2], 3);
        assert_eq!(mp.act_left_tuple(1, &[1, 1]), vec![2, 2]);
        assert_eq!(mp.act_left_tuple(1, &[2]), vec![1]);
        assert_eq!(mp.act_left_tuple(0, &[1, 2]), vec![1, 2]);
    }

    #[test]
    fn broken_right_action() {
        let t = FiniteGroup::cyclic(2);
        let n = FiniteGroup::cyclic(3);
        let left = vec![vec![0, 1, 2], vec![0, 1, 2]];
        let right = vec![vec![0, 0, 0], vec![1, 0, 0]];
        let err = GroupMatchedPair::new(t, n, &left, &right).unwrap_err();
        assert!(matches!(err, GroupError::AxiomViolation { .. }), "{err}");
    }

    #[test]
    fn factorization_of_s3() {
        let s3 = FiniteGroup::symmetric(3);
        let names = s3.names().unwrap().to_vec();
        let find = |s: &str| names.iter().position(|x| x == s).unwrap();
        let a3 = [0, find("(1 2 3)"), find("(1 3 2)")];
        let t = [0, find("(1 2)")];
        let (mp, fac) = GroupMatchedPair::from_exact_factorization(&s3, &a3, &t).unwrap();
        assert!(mp.right_is_trivial());
        assert!(!mp.left_is_trivial());
        let h = mp.bismash();
        let iso: Vec<usize> = (0..6)
            .map(|x| {
                let (n, t) = h.split(x);
                s3.mul(fac.n_embed[n], fac.t_embed[t])
            })
            .collect();
        assert!(h.group().is_homomorphism(&s3, &iso));
        let c6 = FiniteGroup::cyclic(6);
        let (mp, _) = GroupMatchedPair::from_exact_factorization(&c6, &[0, 2, 4], &[0, 3]).unwrap();
        assert!(mp.left_is_trivial() && mp.right_is_trivial());
        assert!(matches!(
            GroupMatchedPair::from_exact_factorization(&c6, &[0, 2, 4], &[0]),
            Err(GroupError::NotExactFactorization(_))
        ));
    }
}
