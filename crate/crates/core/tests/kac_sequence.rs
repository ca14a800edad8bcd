use kacseq::fingroup::standard::{inversion_pair, s4_factorization, trivial_pair};
use kacseq::fingroup::GroupMatchedPair;
use kacseq::barcomplex::{build_bar_complex, CoefficientModule};
use kacseq::exactlin::{diagonalize, solve_mod};
use kacseq::kac::{is_group_cocycle, verify_kac_exactness, KacMaps, PsiConvention};

fn check(pair: &GroupMatchedPair, m: u64) {
    let r = verify_kac_exactness(pair, m).unwrap();
    let groups: Vec<_> = r.groups.iter().map(|g| g.invariant_factors.clone()).collect();
    assert!(r.all_exact(), "m = {m}: {groups:?} {:#?}", r.positions);
    assert!(r.all_composites_zero());
    assert!(r.maps.iter().all(|e| e.well_defined));
}

#[test]
fn trivial_c2_c2() {
    for m in [2, 6, 12] {
        check(&trivial_pair(2, 2), m);
    }
}

#[test]
fn dihedral_pairs() {
    for n in [3, 4] {
        for m in [2, 6, 12] {
            check(&inversion_pair(n), m);
        }
    }
}

#[test]
fn cyclic_six_as_c2_times_c3() {
    let r = verify_kac_exactness(&trivial_pair(2, 3), 6).unwrap();
    assert!(r.all_exact());
    // pairing group Hom(C₂ ⊗ C₃, ℤ/6) = 0
    assert_eq!(r.groups[2].invariant_factors, Some(vec![]));
}

#[test]
fn s4_factorization_exact() {
    let pair = s4_factorization();
    assert!(!pair.left_is_trivial() && !pair.right_is_trivial());
    for m in [2, 6, 12] {
        check(&pair, m);
    }
}

#[test]
fn swapped_psi_convention_breaks_on_s4() {
    let pair = s4_factorization();
    for m in [2, 3] {
        let maps = KacMaps::new(&pair, m).unwrap();
        let h2 = maps.double_complex().cohomology(2).unwrap();
        let cocycles = diagonalize(h2.total_differential_out(), None).kernel_generators();
        assert!(cocycles.iter().all(|(z, _)| maps.psi(z, PsiConvention::A).is_ok()));
        let failures = cocycles.iter().filter(|(z, _)| maps.psi(z, PsiConvention::B).is_err()).count();
        assert!(failures > 0, "m = {m}");
    }
}

/// Every element of a kernel basis of Z²(H, ℤ/6) decomposes, and the
/// reassembled cocycle differs from the input by a coboundary.
fn decomposition_over_cocycle_basis(pair: &GroupMatchedPair, m: u64) {
    let maps = KacMaps::new(pair, m).unwrap();
    let h = maps.bismash().group().clone();
    let bar = build_bar_complex(&h, &CoefficientModule::trivial_cyclic(m, h.order()), 3).unwrap();
    let basis = diagonalize(bar.differential(2), None).kernel_generators();
    assert!(!basis.is_empty());
    for (f, _) in &basis {
        assert!(is_group_cocycle(&h, m, 2, f));
        let d = maps.decompose_cocycle(f).unwrap();
        let neg_fc: Vec<u64> = d.f_c.iter().map(|x| (m - x) % m).collect();
        let assembled = maps.assemble_cocycle(&d.f_t, &d.f_n, &neg_fc).unwrap();
        assert_eq!(assembled, d.h);
        let diff: Vec<u64> = assembled.iter().zip(f).map(|(a, b)| (a + m - b) % m).collect();
        let g = solve_mod(bar.differential(1), &diff).expect("difference is a coboundary");
        assert_eq!(bar.differential(1).mul_vec(&g), diff);
    }
}

#[test]
fn decompose_assemble_on_s3_cocycle_basis() {
    decomposition_over_cocycle_basis(&inversion_pair(3), 6);
}

#[test]
fn decompose_assemble_on_s4_cocycle_basis() {
    decomposition_over_cocycle_basis(&s4_factorization(), 2);
}
