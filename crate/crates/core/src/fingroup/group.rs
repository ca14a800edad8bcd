use super::GroupError;
use std::collections::{BTreeMap, HashMap, VecDeque};

/// A finite group given by its full multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a multiplication table: shape, identity at 0, inverses, associativity.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: i, len: row.len(), expected: n });
            }
            if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::EntryOutOfRange { row: i, col: j, value: v });
            }
        }
        let mul: Vec<usize> = table.iter().flatten().copied().collect();
        let at = |a: usize, b: usize| mul[a * n + b];
        let is_identity = |e: usize| (0..n).all(|x| at(e, x) == x && at(x, e) == x);
        if !is_identity(0) {
            return Err(match (1..n).find(|&e| is_identity(e)) {
                Some(e) => GroupError::IdentityNotFirst(e),
                None => GroupError::NoIdentity,
            });
        }
        let mut inv = vec![0; n];
        for x in 0..n {
            match (0..n).find(|&y| at(x, y) == 0 && at(y, x) == 0) {
                Some(y) => inv[x] = y,
                None => return Err(GroupError::NoInverse(x)),
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                for z in 0..n {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(GroupError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, mul, inv, names: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.order {
            return Err(GroupError::NameCount(names.len(), self.order));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, mul: vec![0], inv: vec![0], names: None }
    }

    /// ℤ/n with element k standing for k.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&table).expect("cyclic table is a group")
    }

    /// The group generated by permutations of {0..degree-1}, composed as (στ)(i) = σ(τ(i)).
    ///
    /// Elements are listed in breadth-first order from the identity; the
    /// returned vector gives the permutation of each element.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>), GroupError> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(GroupError::BadPermutation(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let prod: Vec<usize> = (0..degree).map(|i| elems[x][g[i]]).collect();
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let ab: Vec<usize> = (0..degree).map(|i| a[b[i]]).collect();
                        index[&ab]
                    })
                    .collect()
            })
            .collect();
        let names = elems.iter().map(|p| cycle_notation(p)).collect();
        let group = Self::from_table(&table)?.with_names(names)?;
        Ok((group, elems))
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations(n.max(1), &gens).expect("valid generators").0
    }

    /// Dihedral group of order 2n as symmetries of an n-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rot, refl]).expect("valid generators").0
    }

    /// Pairs (a, b) indexed as a * |B| + b.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let nb = b.order;
        let n = a.order * nb;
        let table: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
            .collect();
        Self::from_table(&table).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Number of elements of each order; an isomorphism invariant.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for a in 0..self.order {
            *out.entry(self.element_order(a)).or_insert(0) += 1;
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &e in elems {
            if e >= self.order {
                return false;
            }
            member[e] = true;
        }
        member[0] && elems.iter().all(|&a| elems.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// The subgroup on `elems` (identity moved first, duplicates dropped) and its embedding.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(elems) {
            return Err(GroupError::NotSubgroup(format!("{elems:?}")));
        }
        let mut embed = vec![0];
        for &e in elems {
            if !embed.contains(&e) {
                embed.push(e);
            }
        }
        let pos: HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table: Vec<Vec<usize>> =
            embed.iter().map(|&a| embed.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        let mut sub = Self::from_table(&table)?;
        if let Some(names) = &self.names {
            sub = sub.with_names(embed.iter().map(|&e| names[e].clone()).collect())?;
        }
        Ok((sub, embed))
    }

    /// Whether `map` (element of self ↦ element of target) is a homomorphism.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&x| x < target.order)
            && (0..self.order)
                .all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_three() {
        let g = FiniteGroup::cyclic(3);
        assert_eq!(g.order(), 3);
        assert_eq!(g.inv(1), 2);
    }

    #[test]
    fn corrupted_entry_is_not_associative() {
        let mut t = FiniteGroup::cyclic(3).table();
        t[1][1] = 0;
        assert!(matches!(FiniteGroup::from_table(&t), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn s3_from_permutations() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let stats = s3.order_statistics();
        assert_eq!(stats[&2], 3);
        assert_eq!(stats[&3], 2);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
    }

    #[test]
    fn identity_placement() {
        let t = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(FiniteGroup::from_table(&t), Err(GroupError::IdentityNotFirst(1)));
        let t = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(FiniteGroup::from_table(&t), Err(GroupError::NoIdentity));
        let t = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(FiniteGroup::from_table(&t), Err(GroupError::NoInverse(1)));
    }

    #[test]
    fn subgroups() {
        let c6 = FiniteGroup::cyclic(6);
        let (sub, embed) = c6.subgroup(&[4, 2, 0]).unwrap();
        assert_eq!(embed, vec![0, 4, 2]);
        assert_eq!(sub.order(), 3);
        assert!(c6.subgroup(&[0, 1]).is_err());
        assert!(sub.is_homomorphism(&c6, &embed));
    }
}
