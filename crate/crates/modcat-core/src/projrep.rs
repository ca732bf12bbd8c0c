//! φ-regular elements and conjugacy classes, Schur's count of irreducible
//! projective representations, and the multiplicities m_{i,j}(g).
//!
//! Irreducible projective representations are only counted here (via
//! Schur's theorem: their number equals the number of φ-regular conjugacy
//! classes); explicit models live in the concrete oracle module.

use crate::cochain::{mixed_cocycle, Cochain, CochainError};
use crate::group::{self, Subgroup};
use std::collections::HashMap;
use std::sync::Mutex;

/// φ-regular conjugacy classes of a subgroup with a 2-cocycle.
#[derive(Debug, Clone)]
pub struct RegularClassReport {
    pub group: Subgroup,
    pub cocycle: Cochain,
    pub regular_classes: Vec<Vec<usize>>,
    pub count: usize,
}

/// g is φ-regular when φ(g,h) = φ(h,g) for every h in the centralizer of g
/// taken inside the domain of φ.
pub fn is_regular(g: usize, phi: &Cochain) -> Result<bool, CochainError> {
    let l = phi.domain();
    if !l.contains(g) {
        return Err(CochainError::ElementNotInGroup(g));
    }
    let grp = l.parent();
    Ok(l.elements().iter().all(|&h| {
        grp.mul(g, h) != grp.mul(h, g) || phi.value(&[g, h]) == phi.value(&[h, g])
    }))
}

/// All φ-regular conjugacy classes, asserting conjugation invariance of
/// regularity member by member.
pub fn regular_classes(phi: &Cochain) -> Result<RegularClassReport, CochainError> {
    if phi.degree() != 2 || !phi.is_cocycle() {
        return Err(CochainError::NotACocycle);
    }
    let l = phi.domain();
    let mut regular_classes = Vec::new();
    for class in group::element_conjugacy_classes_in(l) {
        let flags: Vec<bool> = class
            .iter()
            .map(|&g| is_regular(g, phi))
            .collect::<Result<_, _>>()?;
        assert!(
            flags.iter().all(|&f| f == flags[0]),
            "regularity must be constant on conjugacy classes"
        );
        if flags[0] {
            regular_classes.push(class);
        }
    }
    let count = regular_classes.len();
    Ok(RegularClassReport { group: l.clone(), cocycle: phi.clone(), regular_classes, count })
}

/// Schur's count: the number of irreducible projective φ-representations
/// of L equals the number of φ-regular conjugacy classes.
pub fn count_irreducible_projreps(phi: &Cochain) -> Result<usize, CochainError> {
    Ok(regular_classes(phi)?.count)
}

type MijKey = (Vec<usize>, Vec<u64>, Vec<usize>, Vec<u64>, Vec<u64>, usize);

static MIJ_CACHE: Mutex<Option<HashMap<MijKey, usize>>> = Mutex::new(None);

fn cochain_key(c: &Cochain) -> (Vec<usize>, Vec<u64>) {
    let elements = c.domain().elements().to_vec();
    let values = c.tuples().map(|t| c.value(&t)).collect();
    (elements, values)
}

/// m_{i,j}(g): the number of irreducible ψ^g_{i,j}-representations of
/// L_i ∩ gL_jg⁻¹, memoized per argument tuple.
pub fn count_mij(
    psi_i: &Cochain,
    psi_j: &Cochain,
    omega: &Cochain,
    g: usize,
) -> Result<usize, CochainError> {
    let (ie, iv) = cochain_key(psi_i);
    let (je, jv) = cochain_key(psi_j);
    let (_, ov) = cochain_key(omega);
    let key = (ie, iv, je, jv, ov, g);
    {
        let cache = MIJ_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(&v) = map.get(&key) {
                return Ok(v);
            }
        }
    }
    let mixed = mixed_cocycle(psi_i, psi_j, omega, g)?;
    let n = count_irreducible_projreps(&mixed)?;
    let mut cache = MIJ_CACHE.lock().unwrap();
    cache.get_or_insert_with(HashMap::new).insert(key, n);
    Ok(n)
}

/// Schur-trivial: H²(L, 𝕜ˣ) = 1.
pub fn is_schur_trivial(l: &Subgroup) -> bool {
    crate::cochain::h2_classes(l).elementary_divisors.is_empty()
}

/// Sub-Schur-trivial: every subgroup is Schur-trivial.
pub fn is_sub_schur_trivial(g: &std::sync::Arc<crate::group::FiniteGroup>) -> bool {
    group::subgroups(g).iter().all(is_schur_trivial)
}
