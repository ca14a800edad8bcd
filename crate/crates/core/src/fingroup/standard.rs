//! Small matched pairs used throughout the tests and the CLI.

use super::{FiniteGroup, GroupMatchedPair};

/// C₂ acting on C_n by inversion; the bismash product is the dihedral group of order 2n.
pub fn inversion_pair(n: usize) -> GroupMatchedPair {
    let action: Vec<Vec<usize>> = vec![(0..n).collect(), (0..n).map(|x| (n - x) % n).collect()];
    GroupMatchedPair::semidirect(FiniteGroup::cyclic(2), FiniteGroup::cyclic(n), &action)
        .expect("inversion is an automorphism")
}

/// T × N with both actions trivial.
pub fn trivial_pair(t: usize, n: usize) -> GroupMatchedPair {
    GroupMatchedPair::trivial_actions(FiniteGroup::cyclic(t), FiniteGroup::cyclic(n))
}

/// S₄ = Stab(4) · ⟨(1 2 3 4)⟩ with N ≅ S₃ and T ≅ C₄. Neither factor is
/// normal, so both actions are nontrivial.
pub fn s4_factorization() -> GroupMatchedPair {
    let (s4, perms) =
        FiniteGroup::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).expect("valid generators");
    let find = |p: &[usize]| perms.iter().position(|q| q == p).expect("element of S4");
    let n_elems: Vec<usize> = (0..s4.order()).filter(|&i| perms[i][3] == 3).collect();
    let cycle = find(&[1, 2, 3, 0]);
    let t_elems: Vec<usize> = (0..4).map(|k| s4.power(cycle, k)).collect();
    GroupMatchedPair::from_exact_factorization(&s4, &n_elems, &t_elems).expect("exact factorization").0
}
