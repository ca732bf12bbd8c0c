use num::{BigInt, BigRational};

use modcat_core::cochain::{kx_coboundary_witness, omega_d8, Cochain};
use modcat_core::group::{FiniteGroup, Subgroup};
use modcat_core::gt::{
    all_algebra_data, classify_algebras, commutativity_report, exact_factorization_bound,
    fiber_functors, fpdim_squared, path_algebra_check, simple_objects, FiberDatum, GTCategory,
};
use modcat_core::modcat::{are_equivalent, enumerate_data};

fn rational(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn h8_category() -> GTCategory {
    let g = FiniteGroup::d8();
    let k = Subgroup::new(g, &[0, 4]).unwrap();
    let alpha = Cochain::trivial(k.clone(), 2);
    GTCategory::new(omega_d8(false), k, alpha).unwrap()
}

fn rep_g_category(g: std::sync::Arc<FiniteGroup>) -> GTCategory {
    let whole = Subgroup::whole(g.clone());
    let omega = Cochain::trivial(whole.clone(), 3);
    let alpha = Cochain::trivial(whole.clone(), 2);
    GTCategory::new(omega, whole, alpha).unwrap()
}

/// The fiber functor with 𝕜ˣ-nontrivial γ (the H₈ presentation).
fn h8_fiber(c: &GTCategory) -> FiberDatum {
    fiber_functors(c)
        .unwrap()
        .into_iter()
        .find(|f| kx_coboundary_witness(&f.gamma).unwrap().is_none())
        .expect("H8 fiber with nontrivial gamma")
}

#[test]
fn h8_category_fiber_functors() {
    let c = h8_category();
    let fibers = fiber_functors(&c).unwrap();
    // Only N = <x,y> satisfies G = KN with omega|_N trivializable; both
    // Schur classes give rank-one module categories since K ∩ N = <e>.
    assert_eq!(fibers.len(), 2);
    for f in &fibers {
        assert_eq!(f.n.elements(), &[0, 1, 2, 3]);
    }
    let nontrivial: Vec<bool> = fibers
        .iter()
        .map(|f| kx_coboundary_witness(&f.gamma).unwrap().is_none())
        .collect();
    assert_eq!(nontrivial.iter().filter(|&&b| b).count(), 1);
}

#[test]
fn pointed_category_with_nontrivial_omega_has_no_fiber_functor() {
    // C(G, omega, <e>, 1) is Vec_G^omega itself.
    let g = FiniteGroup::d8();
    let k = Subgroup::trivial(g);
    let alpha = Cochain::trivial(k.clone(), 2);
    let c = GTCategory::new(omega_d8(false), k, alpha).unwrap();
    assert!(fiber_functors(&c).unwrap().is_empty());
}

#[test]
fn rep_g_has_forgetful_fiber_functor() {
    for g in [FiniteGroup::s3(), FiniteGroup::cyclic(4)] {
        let c = rep_g_category(g);
        let fibers = fiber_functors(&c).unwrap();
        assert!(fibers
            .iter()
            .any(|f| f.n.order() == 1 && f.gamma.is_trivial()));
    }
}

#[test]
fn h8_classify_algebras_and_dimensions() {
    let c = h8_category();
    let algebras = classify_algebras(&c).unwrap();
    assert_eq!(algebras.len(), 6);
    let supports: Vec<Vec<usize>> =
        algebras.iter().map(|d| d.modcat.subgroup().elements().to_vec()).collect();
    assert_eq!(
        supports,
        vec![
            vec![0],
            vec![0, 1],
            vec![0, 3],
            vec![0, 4],
            vec![0, 1, 2, 3],
            vec![0, 3, 4, 7],
        ]
    );
    // Canonical simples sit over the identity coset with rank-one
    // representations.
    for d in &algebras {
        assert_eq!(d.g, 0);
        assert_eq!(d.rho_index, 0);
        assert_eq!(d.rho_dim, 1);
    }
    let mut dims: Vec<BigRational> =
        algebras.iter().map(|d| fpdim_squared(&c, d).unwrap()).collect();
    dims.sort();
    let expected: Vec<BigRational> = [1, 2, 2, 4, 4, 8].iter().map(|&n| rational(n)).collect();
    assert_eq!(dims, expected);
}

#[test]
fn h8_path_verdicts() {
    let c = h8_category();
    let fiber = h8_fiber(&c);
    let algebras = classify_algebras(&c).unwrap();
    let expected_commutative = [true, true, true, true, false, true];
    for (d, &want) in algebras.iter().zip(&expected_commutative) {
        let report = commutativity_report(&c, d, &fiber).unwrap();
        assert_eq!(
            report.commutative,
            want,
            "L = {}",
            d.modcat.subgroup().display_name()
        );
        assert!(rational(report.lhs) <= report.rhs, "inequality must hold");
        let (a, b, cc) = report.exact_fact_breakdown.expect("K, N factor D8 exactly");
        assert!(a, "canonical simples have rank-one representations");
        assert_eq!(a && b && cc, report.commutative);
        if d.modcat.subgroup().elements() == [0, 1, 2, 3] {
            // The failure for <x,y> is via (b): gamma*psi^{-1} is the mu
            // class on N, not via the counting bound (c).
            assert!(!b);
            assert!(cc);
        }
    }
    let (all_ok, _) = path_algebra_check(&c, &algebras, &fiber).unwrap();
    assert!(!all_ok);
    let commutative_only: Vec<_> = algebras
        .iter()
        .filter(|d| d.modcat.subgroup().elements() != [0, 1, 2, 3])
        .cloned()
        .collect();
    let (ok, reports) = path_algebra_check(&c, &commutative_only, &fiber).unwrap();
    assert!(ok);
    assert_eq!(reports.len(), 5);
    let (vacuous, empty) = path_algebra_check(&c, &[], &fiber).unwrap();
    assert!(vacuous);
    assert!(empty.is_empty());
}

#[test]
fn exact_factorization_bound_spot_checks() {
    let g = FiniteGroup::d8();
    let k = Subgroup::new(g.clone(), &[0, 4]).unwrap();
    let n = Subgroup::new(g.clone(), &[0, 1, 2, 3]).unwrap();
    let point = Subgroup::trivial(g.clone());
    assert!(exact_factorization_bound(&k, &n, &point, 0).unwrap());
    let klein_xyz = Subgroup::new(g.clone(), &[0, 3, 4, 7]).unwrap();
    assert!(exact_factorization_bound(&k, &n, &klein_xyz, 0).unwrap());
    let klein_xy = Subgroup::new(g.clone(), &[0, 1, 2, 3]).unwrap();
    assert!(exact_factorization_bound(&k, &n, &klein_xy, 0).unwrap());
    // Non-exact pair is rejected.
    assert!(exact_factorization_bound(&k, &klein_xyz, &point, 0).is_err());
}

#[test]
fn inequality_holds_on_all_enumerated_data() {
    let mut cases: Vec<(GTCategory, FiberDatum)> = Vec::new();
    let h8 = h8_category();
    let h8_f = h8_fiber(&h8);
    cases.push((h8, h8_f));
    for g in [FiniteGroup::cyclic(4), FiniteGroup::s3(), FiniteGroup::d8()] {
        let c = rep_g_category(g);
        let fiber = fiber_functors(&c)
            .unwrap()
            .into_iter()
            .find(|f| f.n.order() == 1)
            .expect("forgetful fiber");
        cases.push((c, fiber));
    }
    for (c, fiber) in &cases {
        for d in all_algebra_data(c).unwrap() {
            let report = commutativity_report(c, &d, fiber).unwrap();
            assert!(rational(report.lhs) <= report.rhs);
            assert_eq!(report.commutative, rational(report.lhs) == report.rhs);
            if let Some((a, b, cc)) = report.exact_fact_breakdown {
                assert_eq!(a && b && cc, report.commutative);
            }
        }
    }
}

#[test]
fn fpdims_sum_to_group_order_over_each_module_category() {
    let c = h8_category();
    let g_order = c.group().order();
    for modcat in modcat_core::modcat::classify(c.omega()).unwrap() {
        let mut total = BigRational::from_integer(BigInt::from(0));
        for label in simple_objects(&c, &modcat).unwrap() {
            let stab = c.k().intersect(&modcat.subgroup().conjugate(label.g)).unwrap();
            let num = c.k().order() * modcat.subgroup().order() * label.rho_dim * label.rho_dim;
            total += BigRational::new(BigInt::from(num), BigInt::from(stab.order() * stab.order()));
        }
        assert_eq!(total, rational(g_order));
    }
}

#[test]
fn fpdim_squared_is_equivalence_invariant() {
    let c = h8_category();
    let data = enumerate_data(c.omega()).unwrap();
    for (i, di) in data.iter().enumerate() {
        for dj in &data[i + 1..] {
            if are_equivalent(di, dj).unwrap().is_none() {
                continue;
            }
            let ai = classify_algebras_for(&c, di);
            let aj = classify_algebras_for(&c, dj);
            assert_eq!(fpdim_squared(&c, &ai).unwrap(), fpdim_squared(&c, &aj).unwrap());
        }
    }
}

fn classify_algebras_for(
    c: &GTCategory,
    modcat: &modcat_core::modcat::ModCatDatum,
) -> modcat_core::gt::AlgebraDatum {
    let labels = simple_objects(c, modcat).unwrap();
    let first = &labels[0];
    modcat_core::gt::AlgebraDatum {
        modcat: modcat.clone(),
        g: first.g,
        rho_index: first.rho_index,
        rho_dim: first.rho_dim,
    }
}

#[test]
fn rep_g_regular_algebra_is_commutative() {
    let c = rep_g_category(FiniteGroup::s3());
    let fiber = fiber_functors(&c)
        .unwrap()
        .into_iter()
        .find(|f| f.n.order() == 1)
        .unwrap();
    let algebras = classify_algebras(&c).unwrap();
    assert_eq!(algebras.len(), 4);
    // L = G with the trivial representation: both sides are 1 (S = k).
    let whole = algebras.iter().find(|d| d.modcat.subgroup().order() == 6).unwrap();
    let report = commutativity_report(&c, whole, &fiber).unwrap();
    assert_eq!(report.lhs, 1);
    assert_eq!(report.rhs, rational(1));
    assert!(report.commutative);
    // L = <e>: both sides are |K| = |G|.
    let point = algebras.iter().find(|d| d.modcat.subgroup().order() == 1).unwrap();
    let report = commutativity_report(&c, point, &fiber).unwrap();
    assert_eq!(report.lhs, 6);
    assert_eq!(report.rhs, rational(6));
    assert!(report.commutative);
}

#[test]
fn trivial_group_has_single_algebra_class() {
    let c = rep_g_category(FiniteGroup::trivial());
    let algebras = classify_algebras(&c).unwrap();
    assert_eq!(algebras.len(), 1);
    assert_eq!(fpdim_squared(&c, &algebras[0]).unwrap(), rational(1));
}
