use proptest::prelude::*;
use sandwich_core::relroots::{build_relative, fold, identify_folding, RelativeDatum};
use sandwich_core::rootsys::{build_root_system, diagram_automorphisms, root_sum, Family, RootSystemType};

fn types() -> Vec<RootSystemType> {
    RootSystemType::all_up_to_rank(6)
}

proptest! {
    #[test]
    fn reflections_are_isometric_involutions(t in 0usize..32, a in 0usize..200, b in 0usize..200, c in 0usize..200) {
        let types = types();
        let sys = build_root_system(types[t % types.len()]);
        let r = sys.roots();
        let (a, b, c) = (&r[a % r.len()], &r[b % r.len()], &r[c % r.len()]);
        // reflect(x, a) is s_a(x).
        prop_assert_eq!(&sys.reflect(&sys.reflect(b, a), a), b);
        prop_assert_eq!(sys.pairing(&sys.reflect(a, c), &sys.reflect(b, c)), sys.pairing(a, b));
    }

    #[test]
    fn sums_are_symmetric(t in 0usize..32, a in 0usize..200, b in 0usize..200) {
        let types = types();
        let sys = build_root_system(types[t % types.len()]);
        let r = sys.roots();
        let (a, b) = (&r[a % r.len()], &r[b % r.len()]);
        prop_assert_eq!(root_sum(&sys, a, b), root_sum(&sys, b, a));
        if let Some(s) = root_sum(&sys, a, b) {
            prop_assert!(sys.contains(&s));
            prop_assert!(a != &b.neg());
        }
    }
}

fn nontrivial_automorphisms(t: RootSystemType) -> Vec<sandwich_core::rootsys::DiagramAutomorphism> {
    let sys = build_root_system(t);
    diagram_automorphisms(&sys).into_iter().filter(|g| !g.is_identity()).collect()
}

#[test]
fn foldings_have_the_right_root_counts() {
    // Oracle: |F4| = 48, |G2| = 12, |C3| = 18, |B3| = 18.
    for (family, rank, expected, count) in
        [(Family::E, 6, "F4", 48), (Family::D, 4, "G2", 12), (Family::A, 5, "C3", 18), (Family::D, 4, "B3", 18)]
    {
        let t = RootSystemType::new(family, rank).unwrap();
        let autos = nontrivial_automorphisms(t);
        let gamma = if expected == "G2" { autos.clone() } else { vec![autos[0].clone()] };
        let rel = fold(&build_root_system(t), &gamma).unwrap();
        assert_eq!(rel.rel_roots().len(), count, "{t}");
        assert_eq!(identify_folding(&rel).unwrap().0.to_string(), expected);
    }
}

#[test]
fn odd_type_a_folds_to_a_non_reduced_system() {
    let t = RootSystemType::new(Family::A, 4).unwrap();
    let rel = fold(&build_root_system(t), &nontrivial_automorphisms(t)).unwrap();
    // BC2: ±e_i, ±2e_i, ±e_1 ± e_2.
    assert_eq!(rel.rel_roots().len(), 12);
    assert!(rel.rel_roots().iter().any(|a| rel.contains(&a.scale(2))));
    assert!(identify_folding(&rel).is_none());
}

#[test]
fn fibers_partition_the_non_kernel_roots() {
    for t in RootSystemType::all_up_to_rank(5) {
        let sys = build_root_system(t);
        for j in 1..(1usize << t.rank()) {
            let datum = RelativeDatum::new(sys.clone(), (0..t.rank()).filter(|i| j >> i & 1 == 1), &[]).unwrap();
            let rel = build_relative(datum);
            let fibers: usize = rel.rel_roots().iter().map(|a| rel.fiber(a).len()).sum();
            assert_eq!(fibers + rel.kernel_roots().len(), sys.roots().len(), "{t} J={j:b}");
            for r in sys.roots() {
                let p = rel.project(r);
                assert!(p.is_zero() || rel.contains(&p));
            }
        }
    }
}
