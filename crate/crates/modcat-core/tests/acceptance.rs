//! Acceptance gate: one test per top-level criterion, each printing a
//! single PASS line (run with `--nocapture` to see them). Every expected
//! value is an exact integer or rational; the time limits are generous
//! wall-clock bounds for a desk-scale machine.

use std::time::{Duration, Instant};

use num::{BigInt, BigRational};

use modcat_core::cochain::{
    h2_classes, kx_coboundary_witness, omega_correction, omega_cyclic, omega_d8, solve_psi,
    Cochain,
};
use modcat_core::group::{subgroups, FiniteGroup, Subgroup};
use modcat_core::gt::{
    all_algebra_data, classify_algebras, commutativity_report, fiber_functors, fpdim_squared,
    path_algebra_check, GTCategory,
};
use modcat_core::h8::{
    build_h8, builtin_module_algebra, decompose_module, irreps, match_classification,
    verify_module_algebra, Tag,
};
use modcat_core::modcat::{classify, enumerate_data, rank_table, rank_table_for, ModCatDatum};
use modcat_core::oracle::{
    ambient_field, conjugacy_classes, invertible_group, simple_catalog, twisted_group_algebra,
    two_vertex_classes, AlgebraObject,
};

fn trivial_omega(g: &std::sync::Arc<FiniteGroup>) -> Cochain {
    Cochain::trivial(Subgroup::whole(g.clone()), 3)
}

fn rational(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn finish(criterion: usize, what: &str, start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= limit,
        "criterion {criterion} exceeded its {limit:?} budget: {elapsed:?}"
    );
    println!("criterion {criterion}: PASS ({what}; {elapsed:.2?})");
}

#[test]
fn criterion_1_klein_rank_table() {
    let start = Instant::now();
    let table = rank_table(&trivial_omega(&FiniteGroup::klein())).unwrap();
    assert_eq!(
        table.entries,
        vec![
            vec![4, 2, 2, 2, 1, 1],
            vec![2, 4, 1, 1, 2, 2],
            vec![2, 1, 4, 1, 2, 2],
            vec![2, 1, 1, 4, 2, 2],
            vec![1, 2, 2, 2, 4, 1],
            vec![1, 2, 2, 2, 1, 4],
        ]
    );
    finish(1, "Z2xZ2 6x6 rank table", start, Duration::from_secs(1));
}

#[test]
fn criterion_2_base_algebra_counts() {
    let start = Instant::now();
    assert_eq!(classify(&trivial_omega(&FiniteGroup::klein())).unwrap().len(), 6);
    assert_eq!(classify(&trivial_omega(&FiniteGroup::s3())).unwrap().len(), 4);

    let d8 = classify(&trivial_omega(&FiniteGroup::d8())).unwrap();
    let labels: Vec<String> = d8.iter().map(|d| d.label()).collect();
    assert_eq!(
        labels,
        vec![
            "(<e>, 1)",
            "(<x>, 1)",
            "(<xy>, 1)",
            "(<z>, 1)",
            "(<x,y>, 1)",
            "(<x,y>, h2#1)",
            "(<xy,z>, 1)",
            "(<xy,z>, h2#1)",
            "(<xz>, 1)",
            "(<x,z>, 1)",
            "(<x,z>, h2#1)",
        ]
    );

    let twisted = classify(&omega_d8(false)).unwrap();
    assert_eq!(twisted.len(), 6);
    let supports: Vec<Vec<usize>> =
        twisted.iter().map(|d| d.subgroup().elements().to_vec()).collect();
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

    // Cyclic divisor rule: over Z_n with the class-l associator, the
    // admissible subgroups are the <x^m> with (n/m) | l.
    for n in 1..=12usize {
        for ell in 0..n as u64 {
            let classes = classify(&omega_cyclic(n, ell)).unwrap();
            let mut got: Vec<usize> = classes.iter().map(|d| d.subgroup().order()).collect();
            got.sort_unstable();
            let mut expected: Vec<usize> =
                (1..=n).filter(|d| n % d == 0 && ell % (*d as u64) == 0).collect();
            expected.sort_unstable();
            assert_eq!(got, expected, "n = {n}, ell = {ell}");
        }
    }
    finish(2, "class counts and the cyclic divisor rule", start, Duration::from_secs(10));
}

#[test]
fn criterion_3_d8_bimodule_spot_checks() {
    let start = Instant::now();
    let table = rank_table(&trivial_omega(&FiniteGroup::d8())).unwrap();
    let find = |label: &str| table.data.iter().position(|d| d.label() == label).unwrap();
    let point = find("(<e>, 1)");
    let klein_xy = find("(<x,y>, 1)");
    let klein_xy_tw = find("(<x,y>, h2#1)");
    let z = find("(<z>, 1)");
    let klein_xyz = find("(<xy,z>, 1)");
    let whole = find("(<x,z>, 1)");
    assert_eq!(table.entries[point][point], 8);
    assert_eq!(table.entries[klein_xy][z], 1);
    // Two double cosets with order-2 stabilizers (<z> at e, and <xyz> at x
    // since x z x^{-1} = xyz lies in <xy,z>): four rank-one labels.
    assert_eq!(table.entries[klein_xyz][z], 4);
    assert_eq!(
        [
            table.entries[klein_xy][klein_xy],
            table.entries[klein_xy_tw][klein_xy_tw],
            table.entries[klein_xy][klein_xy_tw],
            table.entries[klein_xy_tw][klein_xy],
        ],
        [8, 8, 2, 2]
    );
    assert_eq!(table.entries[whole][whole], 5);
    finish(3, "D8 spot checks 8, 1, 4, {8,8,2,2}, 5", start, Duration::from_secs(1));
}

#[test]
fn criterion_4_s3_conjugacy_orbits() {
    let start = Instant::now();
    let g = FiniteGroup::s3();
    let omega = trivial_omega(&g);
    let field = ambient_field(&omega, &[]);
    let bases = [
        Subgroup::trivial(g.clone()),
        Subgroup::generated(g.clone(), &[3]),
        Subgroup::generated(g.clone(), &[1]),
        Subgroup::whole(g.clone()),
    ];
    let algebra = |l: &Subgroup| -> AlgebraObject {
        let psi = Cochain::trivial(l.clone(), 2);
        twisted_group_algebra(l, &psi, &omega, &field).unwrap()
    };
    // Conjugation orbits of the simple A-A bimodules over the four bases:
    // always the three conjugacy classes of S3.
    let conj: Vec<usize> = bases
        .iter()
        .map(|l| conjugacy_classes(&algebra(l)).unwrap().orbits.len())
        .collect();
    assert_eq!(conj, vec![3, 3, 3, 3]);
    // Two-vertex orbits for the doubled algebra S ⊕ S.
    let two: Vec<usize> = bases
        .iter()
        .map(|l| two_vertex_classes(&algebra(l), &algebra(l)).unwrap().orbits.len())
        .collect();
    assert_eq!(two, vec![1, 2, 1, 2]);
    // The invertible A(<r>,1)-bimodules: the reflection-coset invertibles
    // are involutions conjugating the rotation characters through
    // s r s^{-1} = r^{-1}, so the group is the nonabelian S3.
    let inv = invertible_group(&algebra(&bases[2])).unwrap();
    assert_eq!(inv.order, 6);
    assert!(!inv.abelian);
    let mut orders = inv.element_orders.clone();
    orders.sort_unstable();
    assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
    finish(4, "S3 orbit counts (3;3;3;3), (1;2;1;2), invertibles = S3", start, Duration::from_secs(30));
}

#[test]
fn criterion_5_oracle_formula_equivalence() {
    let start = Instant::now();
    let pools: Vec<(std::sync::Arc<FiniteGroup>, Cochain)> = vec![
        (FiniteGroup::klein(), trivial_omega(&FiniteGroup::klein())),
        (FiniteGroup::s3(), trivial_omega(&FiniteGroup::s3())),
        (FiniteGroup::d8(), trivial_omega(&FiniteGroup::d8())),
        (FiniteGroup::d8(), omega_d8(false)),
    ];
    for (g, omega) in &pools {
        let data = enumerate_data(omega).unwrap();
        let table = rank_table_for(&data).unwrap();
        for (i, di) in data.iter().enumerate() {
            for (j, dj) in data.iter().enumerate().skip(i) {
                let field = ambient_field(omega, &[di.psi(), dj.psi()]);
                let make = |d: &ModCatDatum| {
                    twisted_group_algebra(d.subgroup(), d.psi(), omega, &field).unwrap()
                };
                let cat = simple_catalog(&make(di), &make(dj)).unwrap();
                assert_eq!(
                    cat.rank(),
                    table.entries[i][j],
                    "rank mismatch at ({}, {})",
                    di.label(),
                    dj.label()
                );
                // Σ (dim S)² = |L_i|·|L_j|·|G|; with L_i = K this is the
                // dimension identity for the simples of M^{K,α}(L_j, ψ_j).
                let sq: usize = cat.simples.iter().map(|s| s.dim() * s.dim()).sum();
                assert_eq!(
                    sq,
                    di.subgroup().order() * dj.subgroup().order() * g.order(),
                    "dimension identity at ({}, {})",
                    di.label(),
                    dj.label()
                );
            }
        }
    }
    finish(5, "oracle = counting formula on every pair, with Σ dim² identity", start, Duration::from_secs(120));
}

#[test]
fn criterion_6_cohomology_engine() {
    let start = Instant::now();
    // Schur multipliers: two classes for the Kleins of rank two and D8,
    // trivial for cyclic groups and S3 subgroups.
    assert_eq!(h2_classes(&Subgroup::whole(FiniteGroup::klein())).class_representatives.len(), 2);
    assert_eq!(h2_classes(&Subgroup::whole(FiniteGroup::d8())).class_representatives.len(), 2);
    for n in [1usize, 2, 3, 4, 6, 8, 12] {
        let g = FiniteGroup::cyclic(n);
        assert_eq!(h2_classes(&Subgroup::whole(g)).class_representatives.len(), 1, "Z{n}");
    }
    for sub in subgroups(&FiniteGroup::s3()) {
        assert_eq!(h2_classes(&sub).class_representatives.len(), 1, "S3 subgroup {sub}");
    }

    // Restriction triviality for the cyclic associators, n ≤ 12.
    for n in 1..=12usize {
        let g = FiniteGroup::cyclic(n);
        for ell in 0..n as u64 {
            let omega = omega_cyclic(n, ell);
            for m in (1..=n).filter(|m| n % m == 0) {
                let sub = Subgroup::generated(g.clone(), &[m % n]);
                let trivial = solve_psi(&omega, &sub).unwrap().is_some();
                assert_eq!(trivial, ell % (n / m) as u64 == 0, "n={n} l={ell} m={m}");
            }
        }
    }

    // Conjugation identity, tablewise over D8 with the nontrivial
    // associator: d(ψ^{g^{-1}} · Ω_{g^{-1}}|) = ω|_{gLg^{-1}}.
    let omega = omega_d8(false);
    let g8 = FiniteGroup::d8();
    for l in subgroups(&g8) {
        let Some(psi) = solve_psi(&omega, &l).unwrap() else { continue };
        for g in 0..8 {
            let ginv = g8.inv(g);
            let conj_dom = l.conjugate(g);
            let corr = omega_correction(&omega, ginv).unwrap().restrict(&conj_dom).unwrap();
            let lhs = psi.conjugate(ginv).mul(&corr);
            let d = lhs.differential().unwrap();
            assert!(d.same_values(&omega.restrict(&conj_dom).unwrap()), "L = {l}, g = {g}");
        }
    }

    // Ω_z restricted to <x,y> is cohomologically nontrivial.
    let klein = Subgroup::generated(g8, &[1, 2]);
    let omega_z = omega_correction(&omega, 4).unwrap().restrict(&klein).unwrap();
    assert!(omega_z.is_cocycle());
    assert!(kx_coboundary_witness(&omega_z).unwrap().is_none());
    finish(6, "H² counts, divisor rule, conjugation identity, Ω_z class", start, Duration::from_secs(30));
}

#[test]
fn criterion_7_h8_case_study() {
    let start = Instant::now();
    let h = build_h8();
    h.verify_hopf_axioms().unwrap();
    let dims: Vec<usize> = irreps(&h).unwrap().iter().map(|w| w.dim).collect();
    assert_eq!(dims, vec![2, 1, 1, 1, 1]);

    // The six module algebras verify and decompose as stated.
    let expected = [
        (Tag::I, [0, 1, 0, 0, 0]),
        (Tag::Ii, [0, 1, 1, 0, 0]),
        (Tag::Iii, [0, 1, 0, 1, 0]),
        (Tag::Iv, [1, 1, 1, 0, 0]),
        (Tag::V, [0, 1, 1, 1, 1]),
        (Tag::Vi, [2, 1, 1, 1, 1]),
    ];
    for (tag, decomp) in expected {
        let s = builtin_module_algebra(&h, tag);
        verify_module_algebra(&h, &s).unwrap();
        let d = decompose_module(&h, &s.underlying_module(&h).unwrap()).unwrap();
        assert_eq!(d, decomp, "{}", tag.name());
    }

    // The category side: C(D8, ω, <z>, 1).
    let g = FiniteGroup::d8();
    let k = Subgroup::new(g.clone(), &[0, 4]).unwrap();
    let alpha = Cochain::trivial(k.clone(), 2);
    let c = GTCategory::new(omega_d8(false), k, alpha).unwrap();

    let algebras = classify_algebras(&c).unwrap();
    let mut fp: Vec<BigRational> =
        algebras.iter().map(|d| fpdim_squared(&c, d).unwrap()).collect();
    fp.sort();
    assert_eq!(fp, [1, 2, 2, 4, 4, 8].map(rational).to_vec());

    let matching = match_classification(&h, &c).unwrap();
    let pairing: Vec<(String, &str)> = matching
        .pairs
        .iter()
        .map(|p| (p.algebra.modcat.label(), p.tag.name()))
        .collect();
    assert_eq!(
        pairing,
        vec![
            ("(<e>, 1)".to_string(), "(ii)"),
            ("(<x>, 1)".to_string(), "(iv)"),
            ("(<xy>, 1)".to_string(), "(v)"),
            ("(<z>, 1)".to_string(), "(i)"),
            ("(<x,y>, 1)".to_string(), "(vi)"),
            ("(<xy,z>, 1)".to_string(), "(iii)"),
        ]
    );
    for p in &matching.pairs {
        assert_eq!(p.category_multiplicities, p.hopf_multiplicities);
    }

    // Fiber functors: (<x,y>, γ) twice here, none on Vec_{D8}^ω itself.
    let fibers = fiber_functors(&c).unwrap();
    assert_eq!(fibers.len(), 2);
    assert!(fibers.iter().all(|f| f.n.elements() == [0, 1, 2, 3]));
    assert!(fibers
        .iter()
        .any(|f| kx_coboundary_witness(&f.gamma).unwrap().is_none()));
    let pointed = GTCategory::new(
        omega_d8(false),
        Subgroup::trivial(g),
        Cochain::trivial(Subgroup::trivial(FiniteGroup::d8()), 2),
    )
    .unwrap();
    assert!(fiber_functors(&pointed).unwrap().is_empty());

    // Path-algebra verdicts against the nontrivial-γ fiber functor.
    let fiber = fibers
        .iter()
        .find(|f| kx_coboundary_witness(&f.gamma).unwrap().is_none())
        .unwrap();
    let (all_ok, reports) = path_algebra_check(&c, &algebras, fiber).unwrap();
    assert!(!all_ok);
    for r in &reports {
        let commutative = r.algebra.modcat.subgroup().elements() != [0, 1, 2, 3];
        assert_eq!(r.commutative, commutative, "L = {}", r.algebra.modcat.label());
    }
    finish(7, "H8 axioms, module algebras, matching, path verdicts", start, Duration::from_secs(30));
}

#[test]
fn criterion_8_commutativity_inequality() {
    let start = Instant::now();
    let mut cases: Vec<GTCategory> = Vec::new();
    let g = FiniteGroup::d8();
    let k = Subgroup::new(g, &[0, 4]).unwrap();
    cases.push(GTCategory::new(omega_d8(false), k.clone(), Cochain::trivial(k, 2)).unwrap());
    for g in [FiniteGroup::cyclic(4), FiniteGroup::s3(), FiniteGroup::d8()] {
        let whole = Subgroup::whole(g.clone());
        cases.push(
            GTCategory::new(trivial_omega(&g), whole.clone(), Cochain::trivial(whole, 2))
                .unwrap(),
        );
    }
    for c in &cases {
        for fiber in fiber_functors(c).unwrap() {
            for d in all_algebra_data(c).unwrap() {
                let report = commutativity_report(c, &d, &fiber).unwrap();
                assert!(rational(report.lhs) <= report.rhs, "lhs must not exceed rhs");
                assert_eq!(report.commutative, rational(report.lhs) == report.rhs);
                if let Some((a, b, cc)) = report.exact_fact_breakdown {
                    assert_eq!(a && b && cc, report.commutative, "(a)(b)(c) characterization");
                }
            }
        }
    }
    finish(8, "lhs ≤ rhs with exact-factorization equality cases", start, Duration::from_secs(30));
}
