//! Randomized invariants, all deterministic: proptest cases run with a
//! fixed RNG seed, and the sampling tests use an explicitly seeded
//! ChaCha stream (the seed is printed so a failure can be replayed).

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modcat_core::cochain::{h2_classes, kx_coboundary_witness, omega_d8, Cochain};
use modcat_core::group::{subgroups, FiniteGroup, Subgroup};
use modcat_core::modcat::{enumerate_data, rank_entry};
use modcat_core::oracle::{
    ambient_field, decompose, direct_sum, simple_catalog, twisted_group_algebra, BimoduleObject,
};

const SEED: u64 = 0x5eed_0b5e_55ed_cafe;

fn group_pool() -> Vec<Arc<FiniteGroup>> {
    vec![
        FiniteGroup::klein(),
        FiniteGroup::cyclic(6),
        FiniteGroup::s3(),
        FiniteGroup::d8(),
    ]
}

fn seeded_config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// A normalized 1-cochain on `l` with values drawn from `vals`.
fn eta_from(l: &Subgroup, modulus: u64, vals: &[i64]) -> Cochain {
    let e = l.parent().identity();
    Cochain::from_fn(l.clone(), 1, modulus, |t| {
        if t[0] == e {
            0
        } else {
            vals[t[0] % vals.len()]
        }
    })
    .expect("eta(e) = 0 is normalized")
}

proptest! {
    #![proptest_config(seeded_config(24))]

    /// dη is always a normalized 2-cocycle, and it is 𝕜ˣ-trivial with a
    /// verifiable witness.
    #[test]
    fn coboundaries_are_kx_trivial_cocycles(
        gi in 0usize..4,
        m in 2u64..=6,
        vals in prop::collection::vec(0i64..12, 8),
    ) {
        let l = Subgroup::whole(group_pool()[gi].clone());
        let eta = eta_from(&l, m, &vals);
        let d = eta.differential().unwrap();
        prop_assert_eq!(d.degree(), 2);
        prop_assert!(d.is_cocycle());
        let witness = kx_coboundary_witness(&d).unwrap();
        let witness = witness.expect("a coboundary must be recognized as trivial");
        prop_assert!(witness.verify());
        prop_assert!(witness.eta.differential().unwrap().same_values(&d));
    }

    /// d∘d = 0 on random normalized cochains of degree 1 and 2.
    #[test]
    fn differential_squares_to_zero(
        gi in 0usize..4,
        deg in 1usize..=2,
        m in 2u64..=6,
        vals in prop::collection::vec(-12i64..12, 64),
    ) {
        let l = Subgroup::whole(group_pool()[gi].clone());
        let e = l.parent().identity();
        let c = Cochain::from_fn(l, deg, m, |t| {
            if t.contains(&e) {
                0
            } else {
                let idx = t[0] + 8 * t.get(1).copied().unwrap_or(0);
                vals[idx % vals.len()]
            }
        })
        .unwrap();
        let d = c.differential().unwrap();
        prop_assert_eq!(d.degree(), deg + 1);
        // For degree 1 the image is a 2-cocycle (checked via a second
        // differential); for degree 2 the 3-cocycle identity is evaluated
        // directly.
        prop_assert!(d.is_cocycle());
        if deg == 1 {
            prop_assert!(d.differential().unwrap().is_trivial());
        }
    }
}

proptest! {
    #![proptest_config(seeded_config(16))]

    /// The coboundary witness agrees with a brute-force search over all
    /// normalized 1-cochains at modulus M·|L|, on subgroups of order ≤ 4.
    #[test]
    fn witness_matches_brute_force(
        gi in 0usize..4,
        li in 0usize..32,
        ci in 0usize..4,
        m in 2u64..=4,
        vals in prop::collection::vec(0i64..8, 8),
    ) {
        let g = group_pool()[gi].clone();
        let subs: Vec<Subgroup> =
            subgroups(&g).into_iter().filter(|s| s.order() <= 4).collect();
        let l = subs[li % subs.len()].clone();
        let reps = h2_classes(&l).class_representatives;
        let rep = reps[ci % reps.len()].clone();
        // A random cocycle in rep's cohomology class.
        let eta = eta_from(&l, m, &vals);
        let phi = rep.mul(&eta.differential().unwrap()).reduce_modulus();
        let mb = phi.modulus() * l.order() as u64;
        prop_assume!((mb as usize).pow(l.order() as u32 - 1) <= 1 << 16);

        let e = l.parent().identity();
        let free: Vec<usize> =
            l.elements().iter().copied().filter(|&x| x != e).collect();
        let target = phi.at_modulus(mb);
        let mut brute_found = false;
        for code in 0..(mb as usize).pow(free.len() as u32) {
            let candidate = Cochain::from_fn(l.clone(), 1, mb, |t| {
                if t[0] == e {
                    0
                } else {
                    let pos = free.iter().position(|&y| y == t[0]).unwrap();
                    ((code / (mb as usize).pow(pos as u32)) % mb as usize) as i64
                }
            })
            .unwrap();
            if candidate.differential().unwrap().same_values(&target) {
                brute_found = true;
                break;
            }
        }

        let witness = kx_coboundary_witness(&phi).unwrap();
        prop_assert_eq!(witness.is_some(), brute_found);
        if let Some(w) = witness {
            prop_assert!(w.verify());
        }
    }
}

/// Decomposition multiplicities must not depend on the order in which a
/// direct sum was assembled.
#[test]
fn decompose_is_order_independent() {
    println!("seed = {SEED:#x}");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    let omega = omega_d8(false);
    let g = FiniteGroup::d8();
    let k = Subgroup::new(g, &[0, 4]).unwrap();
    let alpha = Cochain::trivial(k.clone(), 2);
    let field = ambient_field(&omega, &[&alpha]);
    let a = twisted_group_algebra(&k, &alpha, &omega, &field).unwrap();
    let cat = simple_catalog(&a, &a).unwrap();
    assert!(cat.rank() >= 2);

    for _ in 0..4 {
        // A random multiset of simples with at least one part.
        let mut expected: Vec<(usize, usize)> = Vec::new();
        let mut parts_owned: Vec<&BimoduleObject> = Vec::new();
        for (i, s) in cat.simples.iter().enumerate() {
            let mult = rng.gen_range(0..3usize);
            if mult > 0 {
                expected.push((i, mult));
                for _ in 0..mult {
                    parts_owned.push(s);
                }
            }
        }
        if parts_owned.is_empty() {
            parts_owned.push(&cat.simples[0]);
            expected.push((0, 1));
        }

        let mut first: Option<Vec<(usize, usize)>> = None;
        for _ in 0..3 {
            parts_owned.shuffle(&mut rng);
            let sum = direct_sum(&parts_owned).unwrap();
            let mut got = decompose(&sum, &cat).unwrap();
            got.sort();
            match &first {
                None => first = Some(got.clone()),
                Some(f) => assert_eq!(&got, f, "decomposition depends on summand order"),
            }
            let mut want = expected.clone();
            want.sort();
            assert_eq!(got, want);
        }
    }
}

/// Sampled (Lᵢ, ψᵢ) × (Lⱼ, ψⱼ) pairs: the constructed simple-bimodule
/// catalog matches the counting formula, and Σ (dim S)² = |Lᵢ|·|Lⱼ|·|G|.
#[test]
fn sampled_pairs_match_rank_formula() {
    println!("seed = {SEED:#x}");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    let pools = [
        (
            FiniteGroup::klein(),
            Cochain::trivial(Subgroup::whole(FiniteGroup::klein()), 3),
        ),
        (
            FiniteGroup::s3(),
            Cochain::trivial(Subgroup::whole(FiniteGroup::s3()), 3),
        ),
        (FiniteGroup::d8(), omega_d8(false)),
    ];
    for (g, omega) in &pools {
        let data = enumerate_data(omega).unwrap();
        for _ in 0..3 {
            let i = rng.gen_range(0..data.len());
            let j = rng.gen_range(0..data.len());
            let (di, dj) = (&data[i], &data[j]);
            let field = ambient_field(omega, &[di.psi(), dj.psi()]);
            let ai =
                twisted_group_algebra(di.subgroup(), di.psi(), omega, &field).unwrap();
            let aj =
                twisted_group_algebra(dj.subgroup(), dj.psi(), omega, &field).unwrap();
            let cat = simple_catalog(&ai, &aj).unwrap();
            assert_eq!(
                cat.rank(),
                rank_entry(di, dj).unwrap(),
                "rank mismatch at ({}, {})",
                di.label(),
                dj.label()
            );
            let sq: usize = cat.simples.iter().map(|s| s.dim() * s.dim()).sum();
            assert_eq!(
                sq,
                di.subgroup().order() * dj.subgroup().order() * g.order(),
                "dimension identity fails at ({}, {})",
                di.label(),
                dj.label()
            );
        }
    }
}
