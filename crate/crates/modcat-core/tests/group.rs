use modcat_core::group::{
    self, FiniteGroup, Subgroup,
};

#[test]
fn builtin_groups_have_expected_shape() {
    assert_eq!(FiniteGroup::trivial().order(), 1);
    let z5 = FiniteGroup::cyclic(5);
    assert_eq!(z5.order(), 5);
    assert!(z5.is_abelian());
    assert_eq!(z5.exponent(), 5);
    let k = FiniteGroup::klein();
    assert!(k.is_abelian());
    assert_eq!(k.exponent(), 2);
    let s3 = FiniteGroup::s3();
    assert!(!s3.is_abelian());
    assert_eq!(s3.order(), 6);
    assert_eq!(s3.exponent(), 6);
    let d8 = FiniteGroup::d8();
    assert!(!d8.is_abelian());
    assert_eq!(d8.order(), 8);
}

#[test]
fn builtin_lookup_parses_names() {
    assert_eq!(FiniteGroup::builtin("Z12").unwrap().order(), 12);
    assert_eq!(FiniteGroup::builtin("Z2xZ2").unwrap().order(), 4);
    assert_eq!(FiniteGroup::builtin("S3").unwrap().order(), 6);
    assert_eq!(FiniteGroup::builtin("D8").unwrap().order(), 8);
    assert_eq!(FiniteGroup::builtin("trivial").unwrap().order(), 1);
    assert!(FiniteGroup::builtin("E8").is_err());
}

#[test]
fn cyclic_subgroups_match_divisors() {
    // A cyclic group has exactly one subgroup per divisor of its order.
    for n in 1..=12usize {
        let g = FiniteGroup::cyclic(n);
        let divisors = (1..=n).filter(|d| n % d == 0).count();
        assert_eq!(group::subgroups(&g).len(), divisors, "Z{n}");
    }
}

#[test]
fn d8_subgroup_lattice() {
    let g = FiniteGroup::d8();
    let subs = group::subgroups(&g);
    assert_eq!(subs.len(), 10);
    let classes = group::conjugacy_classes_of_subgroups(&g);
    assert_eq!(classes.len(), 8);
    // <x> and <y> are conjugate (by z), as are <z> and <xyz> (by x).
    let sx = Subgroup::generated(g.clone(), &[1]);
    let sy = Subgroup::generated(g.clone(), &[2]);
    let class_of = |s: &Subgroup| {
        classes
            .iter()
            .find(|(_, members)| members.contains(s))
            .map(|(rep, _)| rep.clone())
            .unwrap()
    };
    assert_eq!(class_of(&sx), class_of(&sy));
    let sz = Subgroup::generated(g.clone(), &[4]);
    let sxyz = Subgroup::generated(g.clone(), &[7]);
    assert_eq!(class_of(&sz), class_of(&sxyz));
    // <xz> is cyclic of order 4 and normal.
    let sxz = Subgroup::generated(g.clone(), &[5]);
    assert_eq!(sxz.order(), 4);
    assert_eq!(sxz.elements(), &[0, 3, 5, 6]);
    assert_eq!(group::normalizer(&g, &sxz).order(), 8);
}

#[test]
fn d8_element_classes_and_centralizers() {
    let g = FiniteGroup::d8();
    let classes = group::element_conjugacy_classes(&g);
    assert_eq!(classes.len(), 5);
    assert_eq!(classes, vec![vec![0], vec![1, 2], vec![3], vec![4, 7], vec![5, 6]]);
    assert_eq!(group::centralizer(&g, 4).elements(), &[0, 3, 4, 7]);
    assert_eq!(group::normalizer(&g, &Subgroup::generated(g.clone(), &[1])).elements(), &[0, 1, 2, 3]);
}

#[test]
fn double_cosets_partition_the_group() {
    let g = FiniteGroup::d8();
    for l in group::subgroups(&g) {
        for r in group::subgroups(&g) {
            let dc = group::double_cosets(&l, &r).unwrap();
            let mut all: Vec<usize> = dc.cosets.iter().flatten().copied().collect();
            all.sort();
            assert_eq!(all, (0..8).collect::<Vec<_>>());
            for (rep, coset) in dc.representatives.iter().zip(&dc.cosets) {
                assert_eq!(rep, coset.iter().min().unwrap());
                assert!(coset.contains(rep));
            }
            // The identity's coset is always represented by the identity.
            assert_eq!(dc.representatives[0], 0);
        }
    }
}

#[test]
fn s3_exact_factorization() {
    let g = FiniteGroup::s3();
    let rot = Subgroup::generated(g.clone(), &[1]); // <r>
    let refl = Subgroup::generated(g.clone(), &[3]); // <s>
    assert_eq!(rot.order(), 3);
    assert_eq!(refl.order(), 2);
    assert!(group::is_exact_factorization(&refl, &rot).unwrap());
    assert!(!group::is_exact_factorization(&rot, &rot).unwrap());
    assert_eq!(group::subgroups(&g).len(), 6);
}

#[test]
fn klein_exact_factorization_and_product_sets() {
    let g = FiniteGroup::klein();
    let sx = Subgroup::generated(g.clone(), &[1]);
    let sy = Subgroup::generated(g.clone(), &[2]);
    assert!(group::is_exact_factorization(&sx, &sy).unwrap());
    assert_eq!(group::product_set(&sx, &sy).unwrap(), vec![0, 1, 2, 3]);
    assert!(!group::is_exact_factorization(&sx, &sx).unwrap());
}

#[test]
fn subgroup_construction_validates() {
    let g = FiniteGroup::d8();
    assert!(Subgroup::new(g.clone(), &[0, 1]).is_ok());
    assert!(Subgroup::new(g.clone(), &[1]).is_err()); // missing identity
    assert!(Subgroup::new(g.clone(), &[0, 4, 5]).is_err()); // not closed
}

#[test]
fn display_names_prefer_generators() {
    let g = FiniteGroup::d8();
    assert_eq!(Subgroup::trivial(g.clone()).display_name(), "<e>");
    assert_eq!(Subgroup::generated(g.clone(), &[1]).display_name(), "<x>");
    assert_eq!(Subgroup::generated(g.clone(), &[1, 2]).display_name(), "<x,y>");
}

#[test]
fn custom_cayley_table_roundtrip() {
    // Z3 given explicitly as a table.
    let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
    let g = FiniteGroup::validate(table, 0, None).unwrap();
    assert_eq!(g.order(), 3);
    assert_eq!(g.inv(1), 2);
    let bad = vec![vec![0, 1], vec![1, 1]];
    assert!(FiniteGroup::validate(bad, 0, None).is_err());
}
