use modcat_core::cochain::{
    self, beta_d8, builtin_cochain, h2_classes, kx_coboundary_witness, mixed_cocycle, mu_klein,
    omega_correction, omega_cyclic, omega_d8, solve_psi, Cochain,
};
use modcat_core::group::{self, FiniteGroup, Subgroup};

fn d8_whole() -> Subgroup {
    Subgroup::whole(FiniteGroup::d8())
}

#[test]
fn differentials_square_to_zero() {
    let g = FiniteGroup::s3();
    let dom = Subgroup::whole(g);
    // An arbitrary normalized 1-cochain.
    let eta = Cochain::from_fn(dom, 1, 6, |t| (3 * t[0] + 1) as i64 * (t[0] != 0) as i64).unwrap();
    let d1 = eta.differential().unwrap();
    assert!(d1.is_cocycle());
    assert!(d1.differential().unwrap().is_trivial());
}

#[test]
fn builtin_two_cocycles_are_cocycles() {
    let mu = mu_klein();
    assert_eq!(mu.degree(), 2);
    assert_eq!(mu.modulus(), 4);
    assert!(mu.is_cocycle());
    // mu(y, x) = -1, mu(x, y) = 1 (exponents of a 4th root of unity).
    assert_eq!(mu.value(&[2, 1]), 2);
    assert_eq!(mu.value(&[1, 2]), 0);
    // mu² is a coboundary-free trivial cochain.
    assert!(mu.mul(&mu).is_trivial());
}

#[test]
fn beta_d8_represents_the_schur_class() {
    let beta = beta_d8();
    assert!(beta.is_cocycle());
    assert!(kx_coboundary_witness(&beta).unwrap().is_none());
    let g = FiniteGroup::d8();
    // Restriction to <x, y> is exactly the mu pattern.
    let kxy = Subgroup::generated(g.clone(), &[1, 2]);
    let r = beta.restrict(&kxy).unwrap();
    let mu_on_kxy = Cochain::from_fn(kxy.clone(), 2, 4, |t| {
        2 * (((t[0] / 2) % 2) * (t[1] % 2)) as i64
    })
    .unwrap();
    assert!(r.same_values(&mu_on_kxy));
    // The Schur class restricts nontrivially to both Klein subgroups.
    let kxyz = Subgroup::generated(g, &[3, 4]);
    let r2 = beta.restrict(&kxyz).unwrap();
    assert!(kx_coboundary_witness(&r2).unwrap().is_none());
}

#[test]
fn mu_klein_is_kx_nontrivial() {
    assert!(kx_coboundary_witness(&mu_klein()).unwrap().is_none());
}

#[test]
fn symmetrized_mu_is_a_coboundary() {
    // mu(a,b)·mu(b,a) is symmetric on an abelian group, hence trivial in
    // H² of Z2 x Z2 over an algebraically closed field.
    let mu = mu_klein();
    let g = FiniteGroup::klein();
    let sym = Cochain::from_fn(Subgroup::whole(g), 2, 4, |t| {
        (mu.value(&[t[0], t[1]]) + mu.value(&[t[1], t[0]])) as i64
    })
    .unwrap();
    let w = kx_coboundary_witness(&sym).unwrap().expect("symmetric class is trivial");
    assert!(w.verify());
}

#[test]
fn omega_cyclic_cocycle_and_divisor_rule() {
    for n in [2usize, 4, 6, 8] {
        let g = FiniteGroup::cyclic(n);
        for ell in 0..n as u64 {
            let omega = omega_cyclic(n, ell);
            assert!(omega.is_cocycle(), "omega_{ell} on Z{n}");
            for m in (1..=n).filter(|m| n % m == 0) {
                let sub = Subgroup::generated(g.clone(), &[m % n]);
                let trivial = solve_psi(&omega, &sub).unwrap().is_some();
                let expected = ell % (n / m) as u64 == 0;
                assert_eq!(trivial, expected, "n={n} l={ell} m={m}");
            }
        }
    }
}

#[test]
fn omega_d8_is_a_nontrivial_cocycle() {
    for conj in [false, true] {
        let omega = omega_d8(conj);
        assert_eq!(omega.modulus(), 4);
        assert!(omega.is_cocycle());
        assert!(kx_coboundary_witness(&omega).unwrap().is_none());
    }
    // Spot values: omega(x,z,z) = sigma_{1,0}(z,z) = -i and
    // omega(y,x,z) = tau_z(y,x) = -1.
    let omega = omega_d8(false);
    assert_eq!(omega.value(&[1, 4, 4]), 3);
    assert_eq!(omega.value(&[2, 1, 4]), 2);
    assert_eq!(omega_d8(true).value(&[1, 4, 4]), 1);
}

#[test]
fn omega_d8_trivializable_subgroups() {
    // Restriction of the D8 cocycle is k^x-trivial on every subgroup
    // except the cyclic group <xz> of order 4 and D8 itself.
    let omega = omega_d8(false);
    let g = FiniteGroup::d8();
    for sub in group::subgroups(&g) {
        let trivial = solve_psi(&omega, &sub).unwrap().is_some();
        let expected = !(sub.elements() == [0, 3, 5, 6] || sub.order() == 8);
        assert_eq!(trivial, expected, "L = {sub}");
    }
}

#[test]
fn solve_psi_produces_a_genuine_primitive() {
    let omega = omega_d8(false);
    let g = FiniteGroup::d8();
    let l = Subgroup::generated(g, &[3, 4]); // <xy, z>
    let psi = solve_psi(&omega, &l).unwrap().expect("trivializable");
    let d = psi.differential().unwrap();
    assert!(d.same_values(&omega.restrict(&l).unwrap()));
}

#[test]
fn conjugation_lemma_for_psi_and_omega_correction() {
    // If d(psi) = omega|_L then d(psi^{g^-1} · Omega_{g^-1}|) = omega|_{gLg^-1}.
    let omega = omega_d8(false);
    let g8 = FiniteGroup::d8();
    for l in group::subgroups(&g8) {
        let Some(psi) = solve_psi(&omega, &l).unwrap() else { continue };
        for g in 0..8 {
            let ginv = g8.inv(g);
            let conj_dom = l.conjugate(g);
            let corr = omega_correction(&omega, ginv).unwrap().restrict(&conj_dom).unwrap();
            let lhs = psi.conjugate(ginv).mul(&corr);
            assert_eq!(lhs.domain().elements(), conj_dom.elements());
            let d = lhs.differential().unwrap();
            assert!(
                d.same_values(&omega.restrict(&conj_dom).unwrap()),
                "L = {l}, g = {g}"
            );
        }
    }
}

#[test]
fn omega_correction_z_is_nontrivial_on_klein_subgroup() {
    let omega = omega_d8(false);
    let g = FiniteGroup::d8();
    let klein = Subgroup::generated(g.clone(), &[1, 2]); // <x, y>
    let omega_z = omega_correction(&omega, 4).unwrap().restrict(&klein).unwrap();
    assert!(omega_z.is_cocycle());
    assert!(kx_coboundary_witness(&omega_z).unwrap().is_none());
    // Spot checks of the correction table (a coboundary shift of the
    // tau_z pattern; only the class is convention-independent).
    assert_eq!(omega_z.value(&[1, 1]), 1); // Omega_z(x, x) = i
    assert_eq!(omega_z.value(&[1, 2]), 2); // Omega_z(x, y) = -1
    assert_eq!(omega_z.value(&[3, 2]), 3); // Omega_z(xy, y) = -i

    let other = Subgroup::generated(g, &[3, 4]); // <xy, z>
    let omega_x = omega_correction(&omega, 1).unwrap().restrict(&other).unwrap();
    assert!(kx_coboundary_witness(&omega_x).unwrap().is_none());
}

#[test]
fn h2_of_small_groups() {
    let h2 = |g: std::sync::Arc<FiniteGroup>| h2_classes(&Subgroup::whole(g));
    assert!(h2(FiniteGroup::trivial()).elementary_divisors.is_empty());
    assert!(h2(FiniteGroup::cyclic(2)).elementary_divisors.is_empty());
    assert!(h2(FiniteGroup::cyclic(4)).elementary_divisors.is_empty());
    assert!(h2(FiniteGroup::cyclic(6)).elementary_divisors.is_empty());
    assert!(h2(FiniteGroup::s3()).elementary_divisors.is_empty());
    let klein = h2(FiniteGroup::klein());
    assert_eq!(klein.elementary_divisors, vec![2]);
    assert_eq!(klein.class_representatives.len(), 2);
    let d8 = h2(FiniteGroup::d8());
    assert_eq!(d8.elementary_divisors, vec![2]);
}

#[test]
fn h2_representatives_are_pairwise_inequivalent() {
    let g = FiniteGroup::klein();
    let report = h2_classes(&Subgroup::whole(g));
    let reps = &report.class_representatives;
    for (i, a) in reps.iter().enumerate() {
        assert!(a.is_cocycle());
        for b in reps.iter().skip(i + 1) {
            let diff = a.mul(&b.invert());
            assert!(kx_coboundary_witness(&diff).unwrap().is_none());
        }
    }
    // The nontrivial class agrees with the class of mu.
    let nontrivial = reps.iter().find(|c| !c.is_trivial()).unwrap();
    let diff = nontrivial.mul(&mu_klein().invert());
    assert!(kx_coboundary_witness(&diff).unwrap().is_some());
}

#[test]
fn mixed_cocycle_trivial_inputs() {
    let g = FiniteGroup::klein();
    let whole = Subgroup::whole(g.clone());
    let omega = Cochain::trivial(whole.clone(), 3);
    let one = Cochain::trivial(whole.clone(), 2);
    let mu = mu_klein();
    let m0 = mixed_cocycle(&one, &one, &omega, 0).unwrap();
    assert!(m0.is_trivial());
    // psi_i = 1, psi_j = mu at g = e gives mu(b, a)-type values.
    let m1 = mixed_cocycle(&one, &mu, &omega, 0).unwrap();
    assert!(m1.is_cocycle());
    assert!(kx_coboundary_witness(&m1).unwrap().is_none());
    // psi_i = psi_j = mu at g = e is symmetric, hence k^x-trivial.
    let m2 = mixed_cocycle(&mu, &mu, &omega, 0).unwrap();
    assert!(kx_coboundary_witness(&m2).unwrap().is_some());
}

#[test]
fn mixed_cocycle_rejects_incompatible_primitives() {
    let g = FiniteGroup::klein();
    let whole = Subgroup::whole(g);
    // A nontrivial omega-free setup where d(psi) != omega|_L.
    let omega = Cochain::trivial(whole.clone(), 3);
    let mu = mu_klein();
    assert!(mixed_cocycle(&mu, &mu, &omega, 0).is_ok());
    let bad_omega = omega_d8(false);
    assert!(mixed_cocycle(&mu, &mu, &bad_omega, 0).is_err());
}

#[test]
fn restriction_and_modulus_operations() {
    let omega = omega_d8(false);
    let g = FiniteGroup::d8();
    let sub = Subgroup::generated(g, &[1, 2]);
    let r = omega.restrict(&sub).unwrap();
    // omega vanishes identically inside <x, y>.
    assert!(r.is_trivial());
    assert_eq!(r.reduce_modulus().modulus(), 1);
    let mu = mu_klein();
    let big = mu.at_modulus(12);
    assert!(big.same_values(&mu));
    assert_eq!(big.reduce_modulus().modulus(), 2);
}

#[test]
fn conjugate_cochain_on_abelian_groups_is_identity() {
    let mu = mu_klein();
    for g in 0..4 {
        assert!(mu.conjugate(g).same_values(&mu));
    }
}

#[test]
fn builtin_cochain_lookup() {
    let d8 = FiniteGroup::d8();
    assert!(builtin_cochain("omega_d8", &d8, 3).is_ok());
    assert!(builtin_cochain("omega_d8_conj", &d8, 3).is_ok());
    assert!(builtin_cochain("trivial", &d8, 3).unwrap().is_trivial());
    let oc = builtin_cochain("omega_cyclic:6:2", &FiniteGroup::cyclic(6), 3).unwrap();
    assert!(oc.same_values(&omega_cyclic(6, 2)));
    assert!(builtin_cochain("nope", &d8, 3).is_err());
    assert!(builtin_cochain("omega_cyclic:x:1", &d8, 3).is_err());
}

#[test]
fn json_cochain_input_builds_mu() {
    let g = FiniteGroup::klein();
    let input: cochain::CochainInput = serde_json::from_str(
        r#"{
            "group": [0, 1, 2, 3],
            "degree": 2,
            "modulus": 4,
            "values": [[2, 1, 2], [2, 3, 2], [3, 1, 2], [3, 3, 2]]
        }"#,
    )
    .unwrap();
    let c = input.build(&g).unwrap();
    assert!(c.same_values(&mu_klein()));
}
