//! Group-theoretical fusion categories C(G, ω, K, α): fiber-functor
//! detection, transported algebra classification, Frobenius–Perron
//! dimensions, 𝕜-commutativity, and the path-algebra verdict.
//!
//! Module categories over C(G, ω, K, α) are the categories M^{K,α}(L, ψ)
//! transported from `Vec_G^ω`, so the classification reuses the
//! module-category classifier. The algebras studied here are the internal
//! Ends A_{M(g,ρ)} of simple objects M(g, ρ) ∈ M^{K,α}(L, ψ); their images
//! under a fiber functor are ordinary algebras whose dimension is the
//! squared FP-dimension of M(g, ρ), and 𝕜-commutativity is decided by an
//! exact double-coset counting inequality.

use num::{BigInt, BigRational};
use thiserror::Error;

use crate::cochain::{kx_coboundary_witness, Cochain, CochainError};
use crate::group::{
    double_cosets, is_exact_factorization, product_set, subgroups, FiniteGroup, GroupError,
    Subgroup,
};
use crate::modcat::{classify, simple_bimodules, ModCatDatum, ModCatError, SimpleBimoduleLabel};
use crate::projrep::count_mij;

#[derive(Debug, Error)]
pub enum GtError {
    #[error("invalid group-theoretical datum: {0}")]
    BadCategory(String),
    #[error("the fiber datum does not define a fiber functor for this category")]
    FiberMismatch,
    #[error("K and N do not form an exact factorization of G")]
    NotExactFactorization,
    #[error(transparent)]
    ModCat(#[from] ModCatError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The group-theoretical fusion category C(G, ω, K, α): the dual of
/// `Vec_G^ω` with respect to the module category M(K, α).
#[derive(Debug, Clone)]
pub struct GTCategory {
    base: ModCatDatum,
}

impl GTCategory {
    /// Requires dα = ω|_K (checked by the underlying datum constructor).
    pub fn new(omega: Cochain, k: Subgroup, alpha: Cochain) -> Result<GTCategory, GtError> {
        let base = ModCatDatum::new(k, alpha, omega)
            .map_err(|e| GtError::BadCategory(e.to_string()))?;
        Ok(GTCategory { base })
    }

    pub fn group(&self) -> &std::sync::Arc<FiniteGroup> {
        self.base.subgroup().parent()
    }

    pub fn k(&self) -> &Subgroup {
        self.base.subgroup()
    }

    pub fn alpha(&self) -> &Cochain {
        self.base.psi()
    }

    pub fn omega(&self) -> &Cochain {
        self.base.omega()
    }

    /// The (K, α) pair as a module-category datum over `Vec_G^ω`.
    pub fn base_datum(&self) -> &ModCatDatum {
        &self.base
    }
}

/// A pair (N, γ) inducing a fiber functor on C(G, ω, K, α): G = KN,
/// dγ = ω|_N, and M^{K,α}(N, γ) has rank one.
#[derive(Debug, Clone)]
pub struct FiberDatum {
    pub n: Subgroup,
    pub gamma: Cochain,
}

/// An algebra A_{M(g,ρ)} = internal End of the simple object M(g, ρ) of
/// M^{K,α}(L, ψ).
#[derive(Debug, Clone)]
pub struct AlgebraDatum {
    pub modcat: ModCatDatum,
    pub g: usize,
    pub rho_index: usize,
    pub rho_dim: usize,
}

/// The 𝕜-commutativity verdict for one algebra: the double-coset counting
/// left-hand side, the squared-FP-dimension right-hand side, and (when
/// G = KN is exact) the condition-(a)(b)(c) breakdown.
#[derive(Debug, Clone)]
pub struct PathReport {
    pub algebra: AlgebraDatum,
    pub lhs: usize,
    pub rhs: BigRational,
    pub commutative: bool,
    pub exact_fact_breakdown: Option<(bool, bool, bool)>,
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The γ-candidates on a subgroup N: one per Schur class translated by a
/// particular solution of dγ = ω|_N, or none when ω|_N is 𝕜ˣ-nontrivial.
fn gamma_candidates(omega: &Cochain, n: &Subgroup) -> Result<Vec<Cochain>, GtError> {
    use crate::cochain::solve_psi;
    let Some(psi0) = solve_psi(omega, n)? else { return Ok(Vec::new()) };
    let psi0 = if omega.restrict(n)?.reduce_modulus().is_trivial() {
        Cochain::trivial(n.clone(), 2)
    } else {
        psi0
    };
    let report = crate::cochain::h2_classes(n);
    let mut out = Vec::new();
    for c in &report.class_representatives {
        let c = if kx_coboundary_witness(c)?.is_some() {
            Cochain::trivial(n.clone(), 2)
        } else {
            c.clone()
        };
        out.push(psi0.mul(&c).reduce_modulus());
    }
    out.sort_by_key(|c| !c.is_trivial());
    out.dedup_by(|a, b| a.same_values(b));
    Ok(out)
}

/// Whether (N, γ) induces a fiber functor: G = KN setwise and M^{K,α}(N,γ)
/// has rank one, i.e. K∩N carries a unique irreducible representation for
/// the mixed cocycle with ψ_i = α, ψ_j = γ.
fn is_fiber(c: &GTCategory, n: &Subgroup, gamma: &Cochain) -> Result<bool, GtError> {
    let grp = c.group().clone();
    if product_set(c.k(), n)?.len() != grp.order() {
        return Ok(false);
    }
    let dc = double_cosets(c.k(), n)?;
    let mut rank = 0;
    for &h in &dc.representatives {
        rank += count_mij(c.alpha(), gamma, c.omega(), h)?;
    }
    Ok(rank == 1)
}

/// All fiber functors of C(G, ω, K, α), as pairs (N, γ-class) with G = KN,
/// dγ = ω|_N, and a unique irreducible mixed representation on K∩N.
pub fn fiber_functors(c: &GTCategory) -> Result<Vec<FiberDatum>, GtError> {
    let grp = c.group().clone();
    let mut out = Vec::new();
    for n in subgroups(&grp) {
        if product_set(c.k(), &n)?.len() != grp.order() {
            continue;
        }
        for gamma in gamma_candidates(c.omega(), &n)? {
            if is_fiber(c, &n, &gamma)? {
                out.push(FiberDatum { n: n.clone(), gamma });
            }
        }
    }
    Ok(out)
}

/// The simple objects of M^{K,α}(L, ψ): simple A(K,α)-A(L,ψ)-bimodule
/// labels.
pub fn simple_objects(
    c: &GTCategory,
    modcat: &ModCatDatum,
) -> Result<Vec<SimpleBimoduleLabel>, GtError> {
    Ok(simple_bimodules(c.base_datum(), modcat)?)
}

/// Every algebra datum A_{M(g,ρ)} over every classified module category of
/// the given group-theoretical category.
pub fn all_algebra_data(c: &GTCategory) -> Result<Vec<AlgebraDatum>, GtError> {
    let mut out = Vec::new();
    for modcat in classify(c.omega())? {
        for label in simple_objects(c, &modcat)? {
            out.push(AlgebraDatum {
                modcat: modcat.clone(),
                g: label.g,
                rho_index: label.rho_index,
                rho_dim: label.rho_dim,
            });
        }
    }
    Ok(out)
}

/// One canonical algebra datum per equivalence class of module categories:
/// the simple object with the least double-coset representative and least
/// ρ-index (so g = e and, for trivial twists, ρ the trivial character).
pub fn classify_algebras(c: &GTCategory) -> Result<Vec<AlgebraDatum>, GtError> {
    let mut out = Vec::new();
    for modcat in classify(c.omega())? {
        let labels = simple_objects(c, &modcat)?;
        let first = labels.first().expect("every module category has a simple object");
        out.push(AlgebraDatum {
            modcat,
            g: first.g,
            rho_index: first.rho_index,
            rho_dim: first.rho_dim,
        });
    }
    Ok(out)
}

/// dim F_V(A_{M(g,ρ)}) = (FPdim M(g,ρ))² = |K|·|L|·(dim ρ)² / |K ∩ gLg⁻¹|²,
/// exactly.
pub fn fpdim_squared(c: &GTCategory, d: &AlgebraDatum) -> Result<BigRational, GtError> {
    let l = d.modcat.subgroup();
    let stab = c.k().intersect(&l.conjugate(d.g))?;
    Ok(ratio(
        c.k().order() * l.order() * d.rho_dim * d.rho_dim,
        stab.order() * stab.order(),
    ))
}

/// Lemma-level bound check for exact factorizations G = KN: whether
/// |N ∩ hLh⁻¹| · |K ∩ gLg⁻¹| = |L| for every h ∈ G.
pub fn exact_factorization_bound(
    k: &Subgroup,
    n: &Subgroup,
    l: &Subgroup,
    g: usize,
) -> Result<bool, GtError> {
    if !is_exact_factorization(k, n)? {
        return Err(GtError::NotExactFactorization);
    }
    let grp = k.parent().clone();
    let k_stab = k.intersect(&l.conjugate(g))?.order();
    for h in 0..grp.order() {
        let n_stab = n.intersect(&l.conjugate(h))?.order();
        if n_stab * k_stab != l.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The 𝕜-commutativity report for A_{M(g,ρ)} with respect to a fixed fiber
/// functor (N, γ): compares Σ_{h ∈ N\G/L} m_{γ,ψ}(h) with the squared
/// FP-dimension, and when G = KN is exact also evaluates the
/// (a) dim ρ = 1, (b) N∩hLh⁻¹ abelian with γψ⁻¹_h a coboundary,
/// (c) |N∩hLh⁻¹|·|K∩gLg⁻¹| = |L| breakdown.
pub fn commutativity_report(
    c: &GTCategory,
    d: &AlgebraDatum,
    fiber: &FiberDatum,
) -> Result<PathReport, GtError> {
    if !is_fiber(c, &fiber.n, &fiber.gamma)? {
        return Err(GtError::FiberMismatch);
    }
    let l = d.modcat.subgroup();
    let dc = double_cosets(&fiber.n, l)?;
    let mut lhs = 0;
    for &h in &dc.representatives {
        lhs += count_mij(&fiber.gamma, d.modcat.psi(), c.omega(), h)?;
    }
    let rhs = fpdim_squared(c, d)?;
    let commutative = ratio(lhs, 1) == rhs;
    let exact_fact_breakdown = if is_exact_factorization(c.k(), &fiber.n)? {
        let a = d.rho_dim == 1;
        let mut b = true;
        for &h in &dc.representatives {
            let stab = fiber.n.intersect(&l.conjugate(h))?;
            if !stab.is_abelian() {
                b = false;
                break;
            }
            let mixed =
                crate::cochain::mixed_cocycle(&fiber.gamma, d.modcat.psi(), c.omega(), h)?;
            if kx_coboundary_witness(&mixed.reduce_modulus())?.is_none() {
                b = false;
                break;
            }
        }
        let cc = exact_factorization_bound(c.k(), &fiber.n, l, d.g)?;
        Some((a, b, cc))
    } else {
        None
    };
    Ok(PathReport { algebra: d.clone(), lhs, rhs, commutative, exact_fact_breakdown })
}

/// Path-algebra verdict for a direct sum of base algebras: true iff every
/// summand's internal-End algebra is 𝕜-commutative.
pub fn path_algebra_check(
    c: &GTCategory,
    summands: &[AlgebraDatum],
    fiber: &FiberDatum,
) -> Result<(bool, Vec<PathReport>), GtError> {
    let mut reports = Vec::with_capacity(summands.len());
    for d in summands {
        reports.push(commutativity_report(c, d, fiber)?);
    }
    let verdict = reports.iter().all(|r| r.commutative);
    Ok((verdict, reports))
}
