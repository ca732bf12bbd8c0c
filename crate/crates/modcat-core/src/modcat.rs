//! Classification of indecomposable semisimple module categories M(L, ψ)
//! over `Vec_G^ω`.
//!
//! A module-category datum is a pair (L, ψ) of a subgroup L ≤ G and a
//! 2-cochain ψ on L with dψ = ω|_L; it presents both the twisted group
//! algebra A(L, ψ) and the module category M(L, ψ) of its right modules.
//! Two data give equivalent module categories iff some g ∈ G conjugates
//! one subgroup onto the other and the comparison cocycle
//! ψ′⁻¹ · ψ^g · Ω_g|_{L′} is a 𝕜ˣ-coboundary; [`are_equivalent`] returns
//! the coboundary witness as a checkable certificate.
//!
//! Simple bimodules between two data are labelled by a double coset
//! L_i g L_j together with an irreducible projective representation of
//! L_i ∩ gL_jg⁻¹ twisted by the mixed 2-cocycle ψ^g_{i,j}; summing the
//! counts over double cosets gives the entries of the [`RankTable`].

use std::sync::Arc;

use thiserror::Error;

use crate::cochain::{
    h2_classes, kx_coboundary_witness, mixed_cocycle, omega_correction, solve_psi,
    CoboundaryWitness, Cochain, CochainError,
};
use crate::cyclo::CycField;
use crate::group::{
    conjugacy_classes_of_subgroups, double_cosets, normalizer, FiniteGroup, GroupError, Subgroup,
};
use crate::oracle::{projective_irreps, OracleError};
use crate::projrep::count_mij;

#[derive(Debug, Error)]
pub enum ModCatError {
    #[error("the associator must be a 3-cocycle defined on the whole group")]
    BadAssociator,
    #[error("d(psi) differs from the associator restricted to {0}")]
    TwistIncompatible(String),
    #[error("the two data live over different ambient categories")]
    AmbientMismatch,
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Oracle(#[from] Box<OracleError>),
}

impl From<OracleError> for ModCatError {
    fn from(e: OracleError) -> Self {
        ModCatError::Oracle(Box::new(e))
    }
}

/// A pair (L, ψ) with dψ = ω|_L, presenting the module category M(L, ψ)
/// over `Vec_G^ω`.
#[derive(Debug, Clone)]
pub struct ModCatDatum {
    subgroup: Subgroup,
    psi: Cochain,
    omega: Cochain,
    psi_name: String,
}

impl ModCatDatum {
    pub fn new(subgroup: Subgroup, psi: Cochain, omega: Cochain) -> Result<Self, ModCatError> {
        validate_associator(&omega)?;
        if psi.degree() != 2 || psi.domain().elements() != subgroup.elements() {
            return Err(ModCatError::TwistIncompatible(subgroup.display_name()));
        }
        let d = psi.differential()?;
        let restricted = omega.restrict(&subgroup)?;
        if !d.same_values(&restricted) {
            return Err(ModCatError::TwistIncompatible(subgroup.display_name()));
        }
        let psi = psi.reduce_modulus();
        let psi_name = if psi.is_trivial() { "1".to_string() } else { "psi".to_string() };
        Ok(ModCatDatum { subgroup, psi, omega, psi_name })
    }

    fn with_name(mut self, name: &str) -> ModCatDatum {
        self.psi_name = name.to_string();
        self
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn psi(&self) -> &Cochain {
        &self.psi
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    /// The display label "(L, ψ)"; the ψ name is an enumeration artifact
    /// ("1" for the trivial twist, "h2#k" for the k-th Schur class).
    pub fn label(&self) -> String {
        format!("({}, {})", self.subgroup.display_name(), self.psi_name)
    }

    fn same_ambient(&self, other: &ModCatDatum) -> bool {
        self.subgroup.parent() == other.subgroup.parent()
            && self.omega.same_values(&other.omega)
    }
}

/// Proof object for M(L, ψ) ≃ M(L′, ψ′): the conjugator g with L = ᵍL′
/// and a coboundary witness dη = ψ′⁻¹ · ψ^g · Ω_g|_{L′}.
#[derive(Debug, Clone)]
pub struct EquivalenceCertificate {
    pub g: usize,
    pub witness: CoboundaryWitness,
}

/// Label of a simple A(L_i,ψ_i)-A(L_j,ψ_j)-bimodule: a double-coset
/// representative g and an irreducible ψ^g_{i,j}-projective representation
/// of L_i ∩ gL_jg⁻¹, recorded by index and dimension. The bimodule is
/// supported on the double coset L_i g L_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleBimoduleLabel {
    pub g: usize,
    pub rho_index: usize,
    pub rho_dim: usize,
    pub support: Vec<usize>,
}

/// Matrix of simple-bimodule counts between the listed data.
#[derive(Debug, Clone)]
pub struct RankTable {
    pub data: Vec<ModCatDatum>,
    pub entries: Vec<Vec<usize>>,
}

impl RankTable {
    pub fn labels(&self) -> Vec<String> {
        self.data.iter().map(|d| d.label()).collect()
    }
}

fn validate_associator(omega: &Cochain) -> Result<(), ModCatError> {
    if omega.degree() != 3
        || omega.domain().order() != omega.domain().parent().order()
        || !omega.is_cocycle()
    {
        return Err(ModCatError::BadAssociator);
    }
    Ok(())
}

/// Normalized Schur-class representatives of L: the trivial class is the
/// zero cochain and comes first; the rest keep the lattice order.
fn schur_class_reps(l: &Subgroup) -> Result<Vec<Cochain>, ModCatError> {
    let report = h2_classes(l);
    let mut reps = Vec::with_capacity(report.class_representatives.len());
    for c in &report.class_representatives {
        if kx_coboundary_witness(c)?.is_some() {
            reps.push(Cochain::trivial(l.clone(), 2));
        } else {
            reps.push(c.clone());
        }
    }
    reps.sort_by_key(|c| !c.is_trivial());
    Ok(reps)
}

/// All module-category data over `Vec_G^ω`, one per (subgroup conjugacy
/// class, Schur class of a compatible twist): for each subgroup-class
/// representative L with ω|_L a 𝕜ˣ-coboundary, a particular solution of
/// dψ = ω|_L translated by every H²(L, 𝕜ˣ) class representative.
pub fn enumerate_data(omega: &Cochain) -> Result<Vec<ModCatDatum>, ModCatError> {
    validate_associator(omega)?;
    let grp = omega.domain().parent().clone();
    let mut out = Vec::new();
    for (rep, _) in conjugacy_classes_of_subgroups(&grp) {
        let Some(psi0) = solve_psi(omega, &rep)? else { continue };
        // Prefer the zero particular solution whenever the restriction is
        // literally trivial, so ω = 1 enumerates the familiar (L, 1) data.
        let psi0 = if omega.restrict(&rep)?.reduce_modulus().is_trivial() {
            Cochain::trivial(rep.clone(), 2)
        } else {
            psi0
        };
        for (k, class) in schur_class_reps(&rep)?.iter().enumerate() {
            let psi = psi0.mul(class);
            let name = if k == 0 && psi0.is_trivial() {
                "1".to_string()
            } else if k == 0 {
                "psi0".to_string()
            } else {
                format!("h2#{k}")
            };
            out.push(ModCatDatum::new(rep.clone(), psi, omega.clone())?.with_name(&name));
        }
    }
    Ok(out)
}

/// Tests M(L, ψ) ≃ M(L′, ψ′): searches g ∈ G in index order for L = ᵍL′
/// with ψ′⁻¹ · ψ^g · Ω_g|_{L′} a 𝕜ˣ-coboundary, and returns the first
/// certificate found.
pub fn are_equivalent(
    d1: &ModCatDatum,
    d2: &ModCatDatum,
) -> Result<Option<EquivalenceCertificate>, ModCatError> {
    if !d1.same_ambient(d2) {
        return Err(ModCatError::AmbientMismatch);
    }
    let grp = d1.subgroup.parent().clone();
    for g in 0..grp.order() {
        if d1.subgroup.elements() != d2.subgroup.conjugate(g).elements() {
            continue;
        }
        // ψ^g lives on g⁻¹ L g = L′; Ω_g is restricted there as well.
        let correction = omega_correction(&d1.omega, g)?.restrict(&d2.subgroup)?;
        let comparison =
            d2.psi.invert().mul(&d1.psi.conjugate(g)).mul(&correction).reduce_modulus();
        if let Some(witness) = kx_coboundary_witness(&comparison)? {
            return Ok(Some(EquivalenceCertificate { g, witness }));
        }
    }
    Ok(None)
}

/// Deduplicates `data` under [`are_equivalent`], keeping the first
/// representative of each class in input order.
pub fn classify_data(data: &[ModCatDatum]) -> Result<Vec<ModCatDatum>, ModCatError> {
    let mut reps: Vec<ModCatDatum> = Vec::new();
    for d in data {
        let mut seen = false;
        for r in &reps {
            if are_equivalent(r, d)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(d.clone());
        }
    }
    Ok(reps)
}

/// Equivalence classes of indecomposable semisimple module categories over
/// `Vec_G^ω`, as representatives in deterministic order.
pub fn classify(omega: &Cochain) -> Result<Vec<ModCatDatum>, ModCatError> {
    classify_data(&enumerate_data(omega)?)
}

/// Labels of the simple A(L_i,ψ_i)-A(L_j,ψ_j)-bimodules, grouped by double
/// coset in representative order. Representation dimensions come from the
/// explicit irreducible models of the mixed-cocycle-twisted group algebra.
pub fn simple_bimodules(
    di: &ModCatDatum,
    dj: &ModCatDatum,
) -> Result<Vec<SimpleBimoduleLabel>, ModCatError> {
    if !di.same_ambient(dj) {
        return Err(ModCatError::AmbientMismatch);
    }
    let dc = double_cosets(&di.subgroup, &dj.subgroup)?;
    let mut out = Vec::new();
    for (&g, coset) in dc.representatives.iter().zip(&dc.cosets) {
        let mixed = mixed_cocycle(&di.psi, &dj.psi, &di.omega, g)?.reduce_modulus();
        let field = CycField::new(mixed.modulus() as usize * mixed.domain().order());
        let irreps = projective_irreps(&mixed, &field)?;
        let counted = count_mij(&di.psi, &dj.psi, &di.omega, g)?;
        assert_eq!(irreps.len(), counted, "explicit model and regular-class count disagree");
        for (rho_index, ir) in irreps.iter().enumerate() {
            out.push(SimpleBimoduleLabel {
                g,
                rho_index,
                rho_dim: ir.dim,
                support: coset.clone(),
            });
        }
    }
    Ok(out)
}

/// The rank of Fun(M(L_i,ψ_i), M(L_j,ψ_j)): the number of simple bimodule
/// labels, counted without building explicit representation models.
pub fn rank_entry(di: &ModCatDatum, dj: &ModCatDatum) -> Result<usize, ModCatError> {
    if !di.same_ambient(dj) {
        return Err(ModCatError::AmbientMismatch);
    }
    let dc = double_cosets(&di.subgroup, &dj.subgroup)?;
    let mut total = 0;
    for &g in &dc.representatives {
        total += count_mij(&di.psi, &dj.psi, &di.omega, g)?;
    }
    Ok(total)
}

/// Rank table over the given data.
pub fn rank_table_for(data: &[ModCatDatum]) -> Result<RankTable, ModCatError> {
    let mut entries = Vec::with_capacity(data.len());
    for di in data {
        let mut row = Vec::with_capacity(data.len());
        for dj in data {
            row.push(rank_entry(di, dj)?);
        }
        entries.push(row);
    }
    Ok(RankTable { data: data.to_vec(), entries })
}

/// Rank table over `enumerate_data(omega)`.
pub fn rank_table(omega: &Cochain) -> Result<RankTable, ModCatError> {
    rank_table_for(&enumerate_data(omega)?)
}

/// Independent count of module-category classes for ω = 1:
/// Σ_{[L]} |H²(L, 𝕜ˣ) / N_G(L)| by direct orbit counting of the normalizer
/// action [c] ↦ [c ∘ conj] on Schur classes.
pub fn omega_trivial_class_count(grp: &Arc<FiniteGroup>) -> Result<usize, ModCatError> {
    let mut total = 0;
    for (rep, _) in conjugacy_classes_of_subgroups(grp) {
        let classes = schur_class_reps(&rep)?;
        let norm = normalizer(grp, &rep);
        let n = classes.len();
        let mut orbit = (0..n).collect::<Vec<usize>>();
        fn root(orbit: &mut Vec<usize>, mut i: usize) -> usize {
            while orbit[i] != i {
                orbit[i] = orbit[orbit[i]];
                i = orbit[i];
            }
            i
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let mut related = false;
                for &g in norm.elements() {
                    let moved = classes[i].conjugate(g);
                    let cmp = classes[j].invert().mul(&moved).reduce_modulus();
                    if kx_coboundary_witness(&cmp)?.is_some() {
                        related = true;
                        break;
                    }
                }
                if related {
                    let (a, b) = (root(&mut orbit, i), root(&mut orbit, j));
                    orbit[a.max(b)] = a.min(b);
                }
            }
        }
        total += (0..n).filter(|&i| root(&mut orbit, i) == i).count();
    }
    Ok(total)
}
