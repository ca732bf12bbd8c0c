//! Concrete linear-algebra model of the category of G-graded vector
//! spaces with a 3-cocycle twist ω.
//!
//! Everything here is built from explicit matrices over a cyclotomic
//! field: twisted group algebras A(L,ψ), bimodules between them, Hom
//! spaces, relative tensor products, duals, and conjugation orbits of
//! simple bimodules under invertible objects. All arithmetic is exact,
//! so ranks, multiplicities, and isomorphism decisions are
//! ground-truth values the rest of the crate is checked against.

use crate::cochain::{Cochain, CochainError};
use crate::cyclo::{solve, CMat, Cyc, CycField, RowSpace};
use crate::group::{
    double_cosets, subgroups, FiniteGroup, GroupError, Subgroup,
};
use crate::snf::{kernel_mod, solve_mod, Mat};
use num::bigint::BigInt;
use num::{Integer, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("dψ ≠ ω|L at the triple ({0}, {1}, {2})")]
    TwistMismatch(usize, usize, usize),
    #[error("operands live over different algebra pairs")]
    AlgebraMismatch,
    #[error("input is not semisimple over the catalogued simples")]
    NonSemisimpleInput,
    #[error("field ℚ(ζ_{have}) cannot host roots of unity of order {need}")]
    FieldMismatch { have: usize, need: usize },
    #[error("bimodule axiom violated: {0}")]
    AxiomViolated(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// A G-graded vector space given by the degree of each basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    pub degrees: Vec<usize>,
}

impl GradedSpace {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// Dimension of each homogeneous component, by degree.
    pub fn dims_by_degree(&self) -> HashMap<usize, usize> {
        let mut out = HashMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }
}

/// The value of an exponent-valued cochain as a field element.
fn cval(f: &CycField, c: &Cochain, args: &[usize]) -> Cyc {
    f.root(c.modulus() as usize, c.value(args) as i64)
}

fn cval_inv(f: &CycField, c: &Cochain, args: &[usize]) -> Cyc {
    f.root(c.modulus() as usize, -(c.value(args) as i64))
}

fn cmat_eq(a: &CMat, b: &CMat) -> bool {
    a.rows == b.rows && a.cols == b.cols && a.data == b.data
}

fn unit_vec(f: &CycField, dim: usize, i: usize) -> Vec<Cyc> {
    let mut v = vec![f.zero(); dim];
    v[i] = f.one();
    v
}

fn apply(f: &CycField, m: &CMat, v: &[Cyc]) -> Vec<Cyc> {
    let mut out = vec![f.zero(); m.rows];
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            let e = m.at(i, j);
            if !e.is_zero() {
                let t = f.mul(e, x);
                *o = f.add(o, &t);
            }
        }
    }
    out
}

fn from_cols(f: &CycField, rows: usize, cols: &[Vec<Cyc>]) -> CMat {
    let mut m = CMat::zeros(f, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            *m.at_mut(i, j) = v.clone();
        }
    }
    m
}

/// A small generating set of the subgroup, greedily collected.
fn generating_set(sub: &Subgroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = Subgroup::trivial(sub.parent().clone());
    for &x in sub.elements() {
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::generated(
                sub.parent().clone(),
                &gens,
            );
            if span.order() == sub.order() {
                break;
            }
        }
    }
    gens
}

/// The smallest cyclotomic field this crate guarantees to be large
/// enough for every oracle computation in the ambient (G, ω) with the
/// given 2-cochains in play: ℚ(ζ_N) with N = lcm(moduli)·|G|.
pub fn ambient_field(omega: &Cochain, psis: &[&Cochain]) -> Arc<CycField> {
    let mut m = omega.modulus();
    for p in psis {
        m = m.lcm(&p.modulus());
    }
    CycField::new(m as usize * omega.domain().parent().order())
}

/// The twisted group algebra A(L,ψ) inside (Vec_G, ω): basis δ_g for
/// g ∈ L with δ_g·δ_g′ = ζ^{ψ(g,g′)} δ_{gg′}.
#[derive(Debug, Clone)]
pub struct AlgebraObject {
    field: Arc<CycField>,
    omega: Cochain,
    subgroup: Subgroup,
    psi: Cochain,
}

impl PartialEq for AlgebraObject {
    fn eq(&self, other: &AlgebraObject) -> bool {
        self.field.order() == other.field.order()
            && self.subgroup.elements() == other.subgroup.elements()
            && self.psi.same_values(&other.psi)
            && self.omega.same_values(&other.omega)
    }
}

impl AlgebraObject {
    pub fn dim(&self) -> usize {
        self.subgroup.order()
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

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn carrier(&self) -> GradedSpace {
        GradedSpace { degrees: self.subgroup.elements().to_vec() }
    }

    /// Structure constant: position and scalar of δ_a·δ_b (positions in
    /// the subgroup basis).
    pub fn mult(&self, a_pos: usize, b_pos: usize) -> (usize, Cyc) {
        let g = self.subgroup.parent();
        let a = self.subgroup.elements()[a_pos];
        let b = self.subgroup.elements()[b_pos];
        let ab = g.mul(a, b);
        (self.subgroup.position(ab).unwrap(), cval(&self.field, &self.psi, &[a, b]))
    }
}

/// Builds A(L,ψ), verifying dψ = ω|_L and the ω-twisted associativity
/// entrywise.
pub fn twisted_group_algebra(
    l: &Subgroup,
    psi: &Cochain,
    omega: &Cochain,
    field: &Arc<CycField>,
) -> Result<AlgebraObject, OracleError> {
    assert_eq!(psi.domain().elements(), l.elements(), "ψ must live on L");
    assert_eq!(psi.degree(), 2);
    assert_eq!(omega.degree(), 3);
    assert_eq!(
        omega.domain().order(),
        omega.domain().parent().order(),
        "ω must live on the whole group"
    );
    let need = psi.modulus().lcm(&omega.modulus()) as usize;
    if field.order() % need != 0 {
        return Err(OracleError::FieldMismatch { have: field.order(), need });
    }
    let d = psi.differential()?;
    let r = omega.restrict(l)?;
    if !d.same_values(&r) {
        let m = d.modulus().lcm(&r.modulus());
        let (dm, rm) = (d.at_modulus(m), r.at_modulus(m));
        for t in dm.tuples() {
            if dm.value(&t) != rm.value(&t) {
                return Err(OracleError::TwistMismatch(t[0], t[1], t[2]));
            }
        }
        unreachable!("same_values disagreed without a violating triple");
    }
    // Entrywise associativity: ψ(a,b)ψ(ab,c) = ω(a,b,c)ψ(b,c)ψ(a,bc).
    let g = l.parent().clone();
    let m = psi.modulus().lcm(&omega.modulus());
    let k_psi = m / psi.modulus();
    let k_om = m / omega.modulus();
    for &a in l.elements() {
        for &b in l.elements() {
            for &c in l.elements() {
                let lhs = (psi.value(&[a, b]) + psi.value(&[g.mul(a, b), c])) * k_psi % m;
                let rhs = (omega.value(&[a, b, c]) * k_om
                    + (psi.value(&[b, c]) + psi.value(&[a, g.mul(b, c)])) * k_psi)
                    % m;
                if lhs != rhs {
                    return Err(OracleError::TwistMismatch(a, b, c));
                }
            }
        }
    }
    Ok(AlgebraObject {
        field: field.clone(),
        omega: omega.clone(),
        subgroup: l.clone(),
        psi: psi.clone(),
    })
}

/// An (A,B)-bimodule given by explicit action matrices: `left_act[p]`
/// is the action of the p-th basis element of A, `right_act[q]` of the
/// q-th basis element of B.
#[derive(Debug, Clone)]
pub struct BimoduleObject {
    left_alg: AlgebraObject,
    right_alg: AlgebraObject,
    space: GradedSpace,
    left_act: Vec<CMat>,
    right_act: Vec<CMat>,
}

impl BimoduleObject {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn degree(&self, i: usize) -> usize {
        self.space.degrees[i]
    }

    pub fn left_algebra(&self) -> &AlgebraObject {
        &self.left_alg
    }

    pub fn right_algebra(&self) -> &AlgebraObject {
        &self.right_alg
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.left_alg.field
    }

    pub fn left_action(&self, pos: usize) -> &CMat {
        &self.left_act[pos]
    }

    pub fn right_action(&self, pos: usize) -> &CMat {
        &self.right_act[pos]
    }

    /// The set of degrees carrying a nonzero component, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.space.degrees.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Checks gradedness, unitality, the ω-twisted one-sided module
    /// axioms, and middle associativity, entrywise.
    pub fn check_axioms(&self) -> Result<(), OracleError> {
        let f = self.left_alg.field.as_ref();
        let g = self.left_alg.subgroup.parent().clone();
        let omega = &self.left_alg.omega;
        let li = &self.left_alg.subgroup;
        let lj = &self.right_alg.subgroup;
        let (psi_i, psi_j) = (&self.left_alg.psi, &self.right_alg.psi);
        let dim = self.dim();
        let deg = &self.space.degrees;
        let fail = |msg: String| Err(OracleError::AxiomViolated(msg));
        // Gradedness.
        for (pos, &h) in li.elements().iter().enumerate() {
            let m = &self.left_act[pos];
            for q in 0..dim {
                for p in 0..dim {
                    if !m.at(q, p).is_zero() && deg[q] != g.mul(h, deg[p]) {
                        return fail(format!("left action of {h} is not graded"));
                    }
                }
            }
        }
        for (pos, &k) in lj.elements().iter().enumerate() {
            let m = &self.right_act[pos];
            for q in 0..dim {
                for p in 0..dim {
                    if !m.at(q, p).is_zero() && deg[q] != g.mul(deg[p], k) {
                        return fail(format!("right action of {k} is not graded"));
                    }
                }
            }
        }
        // Unitality.
        let e = g.identity();
        if !cmat_eq(&self.left_act[li.position(e).unwrap()], &CMat::eye(f, dim))
            || !cmat_eq(&self.right_act[lj.position(e).unwrap()], &CMat::eye(f, dim))
        {
            return fail("identity does not act as the identity".to_string());
        }
        // Left module: λ(h)λ(k) = ψ_i(h,k)·ω(h,k,|m|)⁻¹·λ(hk) columnwise.
        for (hp, &h) in li.elements().iter().enumerate() {
            for (kp, &k) in li.elements().iter().enumerate() {
                let prod = self.left_act[hp].mul(f, &self.left_act[kp]);
                let target = &self.left_act[li.position(g.mul(h, k)).unwrap()];
                for p in 0..dim {
                    let s = f.mul(
                        &cval(f, psi_i, &[h, k]),
                        &cval_inv(f, omega, &[h, k, deg[p]]),
                    );
                    for q in 0..dim {
                        let want = f.mul(&s, target.at(q, p));
                        if *prod.at(q, p) != want {
                            return fail(format!("left module axiom at ({h},{k})"));
                        }
                    }
                }
            }
        }
        // Right module: ρ(k)ρ(h) = ω(|m|,h,k)·ψ_j(h,k)·ρ(hk) columnwise.
        for (hp, &h) in lj.elements().iter().enumerate() {
            for (kp, &k) in lj.elements().iter().enumerate() {
                let prod = self.right_act[kp].mul(f, &self.right_act[hp]);
                let target = &self.right_act[lj.position(g.mul(h, k)).unwrap()];
                for p in 0..dim {
                    let s = f.mul(
                        &cval(f, omega, &[deg[p], h, k]),
                        &cval(f, psi_j, &[h, k]),
                    );
                    for q in 0..dim {
                        let want = f.mul(&s, target.at(q, p));
                        if *prod.at(q, p) != want {
                            return fail(format!("right module axiom at ({h},{k})"));
                        }
                    }
                }
            }
        }
        // Middle associativity: ρ(b)λ(a) = ω(a,|m|,b)·λ(a)ρ(b) columnwise.
        for (ap, &a) in li.elements().iter().enumerate() {
            for (bp, &b) in lj.elements().iter().enumerate() {
                let lhs = self.right_act[bp].mul(f, &self.left_act[ap]);
                let rhs = self.left_act[ap].mul(f, &self.right_act[bp]);
                for p in 0..dim {
                    let s = cval(f, omega, &[a, deg[p], b]);
                    for q in 0..dim {
                        let want = f.mul(&s, rhs.at(q, p));
                        if *lhs.at(q, p) != want {
                            return fail(format!("middle associativity at ({a},{b})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn same_pair(m: &BimoduleObject, n: &BimoduleObject) -> bool {
    m.left_alg == n.left_alg && m.right_alg == n.right_alg
}

/// A as an (A,A)-bimodule, with the ψ-twisted multiplication actions.
pub fn regular_bimodule(a: &AlgebraObject) -> BimoduleObject {
    let f = a.field.as_ref();
    let g = a.subgroup.parent().clone();
    let l = &a.subgroup;
    let dim = l.order();
    let mut left_act = Vec::with_capacity(dim);
    let mut right_act = Vec::with_capacity(dim);
    for &h in l.elements() {
        let mut lm = CMat::zeros(f, dim, dim);
        let mut rm = CMat::zeros(f, dim, dim);
        for (p, &b) in l.elements().iter().enumerate() {
            *lm.at_mut(l.position(g.mul(h, b)).unwrap(), p) = cval(f, &a.psi, &[h, b]);
            *rm.at_mut(l.position(g.mul(b, h)).unwrap(), p) = cval(f, &a.psi, &[b, h]);
        }
        left_act.push(lm);
        right_act.push(rm);
    }
    let bim = BimoduleObject {
        left_alg: a.clone(),
        right_alg: a.clone(),
        space: a.carrier(),
        left_act,
        right_act,
    };
    bim.check_axioms().expect("regular bimodule satisfies the axioms");
    bim
}

/// The free (A,B)-bimodule A ⊗ δ_g ⊗ B, with the regular actions and
/// all associators inserted. Basis (a,b) ↦ δ_a⊗δ_g⊗δ_b, ordered with
/// the B-index fastest.
pub fn free_bimodule(
    a: &AlgebraObject,
    b: &AlgebraObject,
    g_elt: usize,
) -> Result<BimoduleObject, OracleError> {
    if a.field.order() != b.field.order() || !a.omega.same_values(&b.omega) {
        return Err(OracleError::AlgebraMismatch);
    }
    let f = a.field.as_ref();
    let g = a.subgroup.parent().clone();
    let (li, lj) = (&a.subgroup, &b.subgroup);
    let (ni, nj) = (li.order(), lj.order());
    let dim = ni * nj;
    let idx = |ia: usize, ib: usize| ia * nj + ib;
    let degrees: Vec<usize> = (0..dim)
        .map(|p| g.mul(g.mul(li.elements()[p / nj], g_elt), lj.elements()[p % nj]))
        .collect();
    let omega = &a.omega;
    let mut left_act = Vec::with_capacity(ni);
    for &h in li.elements() {
        let mut m = CMat::zeros(f, dim, dim);
        for (ia, &x) in li.elements().iter().enumerate() {
            for (ib, &y) in lj.elements().iter().enumerate() {
                let xg = g.mul(x, g_elt);
                let scal = f.mul(
                    &cval(f, &a.psi, &[h, x]),
                    &f.mul(
                        &cval_inv(f, omega, &[h, xg, y]),
                        &cval_inv(f, omega, &[h, x, g_elt]),
                    ),
                );
                *m.at_mut(idx(li.position(g.mul(h, x)).unwrap(), ib), idx(ia, ib)) = scal;
            }
        }
        left_act.push(m);
    }
    let mut right_act = Vec::with_capacity(nj);
    for &k in lj.elements() {
        let mut m = CMat::zeros(f, dim, dim);
        for (ia, &x) in li.elements().iter().enumerate() {
            for (ib, &y) in lj.elements().iter().enumerate() {
                let xg = g.mul(x, g_elt);
                let scal = f.mul(&cval(f, &b.psi, &[y, k]), &cval(f, omega, &[xg, y, k]));
                *m.at_mut(idx(ia, lj.position(g.mul(y, k)).unwrap()), idx(ia, ib)) = scal;
            }
        }
        right_act.push(m);
    }
    let bim = BimoduleObject {
        left_alg: a.clone(),
        right_alg: b.clone(),
        space: GradedSpace { degrees },
        left_act,
        right_act,
    };
    bim.check_axioms()?;
    Ok(bim)
}

/// Block-diagonal direct sum of bimodules over the same algebra pair.
pub fn direct_sum(parts: &[&BimoduleObject]) -> Result<BimoduleObject, OracleError> {
    assert!(!parts.is_empty());
    let first = parts[0];
    if !parts.iter().all(|p| same_pair(first, p)) {
        return Err(OracleError::AlgebraMismatch);
    }
    let f = first.field().as_ref();
    let dim: usize = parts.iter().map(|p| p.dim()).sum();
    let degrees: Vec<usize> =
        parts.iter().flat_map(|p| p.space.degrees.iter().copied()).collect();
    let block = |pick: &dyn Fn(&BimoduleObject) -> CMat| {
        let mut m = CMat::zeros(f, dim, dim);
        let mut off = 0;
        for p in parts {
            let sub = pick(p);
            for i in 0..sub.rows {
                for j in 0..sub.cols {
                    *m.at_mut(off + i, off + j) = sub.at(i, j).clone();
                }
            }
            off += p.dim();
        }
        m
    };
    let left_act: Vec<CMat> = (0..first.left_alg.dim())
        .map(|pos| block(&|p: &BimoduleObject| p.left_act[pos].clone()))
        .collect();
    let right_act: Vec<CMat> = (0..first.right_alg.dim())
        .map(|pos| block(&|p: &BimoduleObject| p.right_act[pos].clone()))
        .collect();
    Ok(BimoduleObject {
        left_alg: first.left_alg.clone(),
        right_alg: first.right_alg.clone(),
        space: GradedSpace { degrees },
        left_act,
        right_act,
    })
}

/// The space of bimodule maps M → N: degree-preserving linear maps
/// intertwining both actions.
pub struct HomSpace {
    pub dim: usize,
    /// Basis of intertwiners as dim(N) × dim(M) matrices.
    pub basis: Vec<CMat>,
}

/// Solves the intertwiner equations. Checking a generating set of each
/// acting subgroup suffices: products of actions differ from the action
/// of the product by a scalar that depends only on the pair and the
/// degree, and candidate maps are degree-preserving, so the scalar
/// factors out of both sides.
pub fn hom_space(m: &BimoduleObject, n: &BimoduleObject) -> Result<HomSpace, OracleError> {
    if !same_pair(m, n) {
        return Err(OracleError::AlgebraMismatch);
    }
    let f = m.field().clone();
    let g = m.left_alg.subgroup.parent().clone();
    let (dm, dn) = (m.dim(), n.dim());
    // Unknowns: degree-matching pairs (q in N, p in M).
    let mut unknown = vec![usize::MAX; dn * dm];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for q in 0..dn {
        for p in 0..dm {
            if n.degree(q) == m.degree(p) {
                unknown[q * dm + p] = pairs.len();
                pairs.push((q, p));
            }
        }
    }
    let nu = pairs.len();
    let mut rows = RowSpace::new(f.clone(), nu);
    let mut saturated = false;
    let feed = |ma: &CMat, mb: &CMat, h: usize, rows: &mut RowSpace| {
        // Equation (X·A − B·X)_{q,p} = 0 at pairs with deg q = h·deg p
        // (all other entries vanish identically).
        for q in 0..dn {
            for p in 0..dm {
                if n.degree(q) != g.mul(h, m.degree(p)) {
                    continue;
                }
                let mut row = vec![f.zero(); nu];
                let mut nonzero = false;
                for pp in 0..dm {
                    let aval = ma.at(pp, p);
                    if aval.is_zero() {
                        continue;
                    }
                    let u = unknown[q * dm + pp];
                    if u != usize::MAX {
                        row[u] = f.add(&row[u], aval);
                        nonzero = true;
                    }
                }
                for qq in 0..dn {
                    let bval = mb.at(q, qq);
                    if bval.is_zero() {
                        continue;
                    }
                    let u = unknown[qq * dm + p];
                    if u != usize::MAX {
                        row[u] = f.sub(&row[u], bval);
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.insert(row);
                }
            }
        }
    };
    'outer: for side in 0..2 {
        let sub = if side == 0 { &m.left_alg.subgroup } else { &m.right_alg.subgroup };
        for h in generating_set(sub) {
            let pos = sub.position(h).unwrap();
            let (ma, mb) = if side == 0 {
                (&m.left_act[pos], &n.left_act[pos])
            } else {
                (&m.right_act[pos], &n.right_act[pos])
            };
            // The degree constraint for right actions has h on the right.
            if side == 0 {
                feed(ma, mb, h, &mut rows);
            } else {
                for q in 0..dn {
                    for p in 0..dm {
                        if n.degree(q) != g.mul(m.degree(p), h) {
                            continue;
                        }
                        let mut row = vec![f.zero(); nu];
                        let mut nonzero = false;
                        for pp in 0..dm {
                            let aval = ma.at(pp, p);
                            if aval.is_zero() {
                                continue;
                            }
                            let u = unknown[q * dm + pp];
                            if u != usize::MAX {
                                row[u] = f.add(&row[u], aval);
                                nonzero = true;
                            }
                        }
                        for qq in 0..dn {
                            let bval = mb.at(q, qq);
                            if bval.is_zero() {
                                continue;
                            }
                            let u = unknown[qq * dm + p];
                            if u != usize::MAX {
                                row[u] = f.sub(&row[u], bval);
                                nonzero = true;
                            }
                        }
                        if nonzero {
                            rows.insert(row);
                        }
                    }
                }
            }
            if rows.rank() == nu {
                saturated = true;
                break 'outer;
            }
        }
    }
    if saturated {
        return Ok(HomSpace { dim: 0, basis: Vec::new() });
    }
    let kern = rows.kernel_basis();
    let basis = kern
        .into_iter()
        .map(|v| {
            let mut x = CMat::zeros(&f, dn, dm);
            for (u, &(q, p)) in pairs.iter().enumerate() {
                *x.at_mut(q, p) = v[u].clone();
            }
            x
        })
        .collect::<Vec<_>>();
    Ok(HomSpace { dim: basis.len(), basis })
}

/// An irreducible projective representation of (H, φ), with the
/// convention R(a)·R(b) = ζ^{φ(a,b)}·R(ab).
#[derive(Debug, Clone)]
pub struct ProjectiveIrrep {
    pub dim: usize,
    /// One matrix per position in the domain subgroup.
    pub mats: Vec<CMat>,
}

/// All irreducible projective representations of (H, φ), found by
/// inducing one-dimensional projective characters up from subgroups
/// (complete at desk scale; completeness is asserted via Σ dim² = |H|).
pub fn projective_irreps(
    phi: &Cochain,
    field: &Arc<CycField>,
) -> Result<Vec<ProjectiveIrrep>, OracleError> {
    assert_eq!(phi.degree(), 2);
    let h_sub = phi.domain().clone();
    let parent = h_sub.parent().clone();
    let nh = h_sub.order();
    let need = phi.modulus() as usize * nh;
    if field.order() % need != 0 {
        return Err(OracleError::FieldMismatch { have: field.order(), need });
    }
    let f = field.as_ref();
    let mut subs: Vec<Subgroup> = subgroups(&parent)
        .into_iter()
        .filter(|t| t.elements().iter().all(|&x| h_sub.contains(x)))
        .collect();
    subs.sort_by(|a, b| b.order().cmp(&a.order()).then(a.elements().cmp(b.elements())));
    let mut found: Vec<ProjectiveIrrep> = Vec::new();
    let mut sumsq = 0usize;
    'subs: for t in subs {
        let nt = t.order();
        let m_t = BigInt::from(phi.modulus() * nt as u64);
        let lift = nt as u64;
        // One-dimensional solutions ν of ν(a)+ν(b)−ν(ab) ≡ φ(a,b).
        let mut a_mat: Mat = Vec::new();
        let mut rhs: Vec<BigInt> = Vec::new();
        for &x in t.elements() {
            for &y in t.elements() {
                let mut row = vec![BigInt::zero(); nt];
                row[t.position(x).unwrap()] += 1;
                row[t.position(y).unwrap()] += 1;
                row[t.position(parent.mul(x, y)).unwrap()] -= 1;
                a_mat.push(row);
                rhs.push(BigInt::from(phi.value(&[x, y]) * lift));
            }
        }
        let Some(x0) = solve_mod(&a_mat, &rhs, &m_t) else {
            continue;
        };
        let kernel = kernel_mod(&a_mat, &m_t);
        // Left transversal H = ⊔ g_r·T, with the factorization map.
        let mut reps: Vec<usize> = Vec::new();
        let mut factor: HashMap<usize, (usize, usize)> = HashMap::new();
        for &h in h_sub.elements() {
            if factor.contains_key(&h) {
                continue;
            }
            let r = reps.len();
            reps.push(h);
            for &x in t.elements() {
                factor.insert(parent.mul(h, x), (r, x));
            }
        }
        let d = reps.len();
        let m_t_usize = (phi.modulus() * nt as u64) as usize;
        for kappa in &kernel {
            let nu: Vec<i64> = (0..nt)
                .map(|p| {
                    let v = (&x0[p] + &kappa[p]).mod_floor(&m_t);
                    v.to_i64().expect("character exponent fits")
                })
                .collect();
            // Induced action: δ_h·(g_r⊗1) = φ(h,g_r)·φ(g_r′,x)⁻¹·ν(x)·(g_r′⊗1)
            // where h·g_r = g_r′·x.
            let mats: Vec<CMat> = h_sub
                .elements()
                .iter()
                .map(|&h| {
                    let mut m = CMat::zeros(f, d, d);
                    for (r, &gr) in reps.iter().enumerate() {
                        let (rp, x) = factor[&parent.mul(h, gr)];
                        let s = f.mul(
                            &cval(f, phi, &[h, gr]),
                            &f.mul(
                                &cval_inv(f, phi, &[reps[rp], x]),
                                &f.root(m_t_usize, nu[t.position(x).unwrap()]),
                            ),
                        );
                        *m.at_mut(rp, r) = s;
                    }
                    m
                })
                .collect();
            // Representation property.
            for (ap, &a) in h_sub.elements().iter().enumerate() {
                for (bp, &b) in h_sub.elements().iter().enumerate() {
                    let prod = mats[ap].mul(f, &mats[bp]);
                    let target = &mats[h_sub.position(parent.mul(a, b)).unwrap()];
                    let want = target.scale(f, &cval(f, phi, &[a, b]));
                    assert!(cmat_eq(&prod, &want), "induced map is not a φ-representation");
                }
            }
            if commutant_dim(field, &h_sub, &mats) != 1 {
                continue;
            }
            let is_new = found.iter().all(|r| {
                r.dim != d || intertwiner_dim(field, &h_sub, &r.mats, &mats) == 0
            });
            if !is_new {
                continue;
            }
            sumsq += d * d;
            found.push(ProjectiveIrrep { dim: d, mats });
            if sumsq == nh {
                break 'subs;
            }
        }
    }
    assert_eq!(
        sumsq, nh,
        "projective representations incomplete: Σ dim² = {sumsq} ≠ |H| = {nh}"
    );
    // Deterministic order: by dimension, with the trivial representation
    // (if present) first among the one-dimensional ones.
    found.sort_by_key(|r| {
        let trivial = r.mats.iter().all(|m| cmat_eq(m, &CMat::eye(f, r.dim)));
        (r.dim, if trivial { 0 } else { 1 })
    });
    Ok(found)
}

fn commutant_dim(field: &Arc<CycField>, h_sub: &Subgroup, mats: &[CMat]) -> usize {
    let f = field.as_ref();
    let d = mats[0].rows;
    let mut rows = RowSpace::new(field.clone(), d * d);
    for h in generating_set(h_sub) {
        let m = &mats[h_sub.position(h).unwrap()];
        for i in 0..d {
            for j in 0..d {
                // (X·M − M·X)_{i,j} = 0.
                let mut row = vec![f.zero(); d * d];
                for k in 0..d {
                    row[i * d + k] = f.add(&row[i * d + k], m.at(k, j));
                    row[k * d + j] = f.sub(&row[k * d + j], m.at(i, k));
                }
                rows.insert(row);
            }
        }
    }
    d * d - rows.rank()
}

fn intertwiner_dim(field: &Arc<CycField>, h_sub: &Subgroup, a: &[CMat], b: &[CMat]) -> usize {
    let f = field.as_ref();
    let (da, db) = (a[0].rows, b[0].rows);
    let mut rows = RowSpace::new(field.clone(), da * db);
    for h in generating_set(h_sub) {
        let pos = h_sub.position(h).unwrap();
        let (ma, mb) = (&a[pos], &b[pos]);
        for i in 0..da {
            for j in 0..db {
                // (X·B − A·X)_{i,j} = 0 for X: b-space → a-space.
                let mut row = vec![f.zero(); da * db];
                for k in 0..db {
                    row[i * db + k] = f.add(&row[i * db + k], mb.at(k, j));
                }
                for k in 0..da {
                    row[k * db + j] = f.sub(&row[k * db + j], ma.at(i, k));
                }
                rows.insert(row);
            }
        }
    }
    da * db - rows.rank()
}

/// Identity of a catalogued simple bimodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleLabel {
    /// Double-coset representative g.
    pub coset_rep: usize,
    /// Index of the irreducible representation of the stabilizer datum.
    pub rho_index: usize,
    pub rho_dim: usize,
    /// The double coset L_i·g·L_j carrying the simple.
    pub support: Vec<usize>,
}

/// The full list of simple (A,B)-bimodules, one per (double coset,
/// irreducible representation) pair.
pub struct SimpleCatalog {
    pub left: AlgebraObject,
    pub right: AlgebraObject,
    pub simples: Vec<BimoduleObject>,
    pub labels: Vec<SimpleLabel>,
}

impl SimpleCatalog {
    pub fn rank(&self) -> usize {
        self.simples.len()
    }
}

/// Splits the free bimodule A⊗δ_g⊗B into simples.
///
/// End(A⊗δ_g⊗B) has a monomial basis T_ℓ indexed by ℓ ∈ L^g =
/// L_i ∩ gL_jg⁻¹ (an endomorphism is fixed by the image of the
/// generator δ_e⊗δ_g⊗δ_e, which must stay in degree g). Reading the
/// composition scalars off numerically identifies End with a twisted
/// group algebra of L^g; its irreducible representations give primitive
/// idempotents, whose images are the simple sub-bimodules.
fn split_free(
    a: &AlgebraObject,
    b: &AlgebraObject,
    g_elt: usize,
) -> Result<(Vec<BimoduleObject>, Vec<SimpleLabel>), OracleError> {
    let f = a.field.as_ref();
    let g = a.subgroup.parent().clone();
    let free = free_bimodule(a, b, g_elt)?;
    let (li, lj) = (&a.subgroup, &b.subgroup);
    let nj = lj.order();
    let idx = |ia: usize, ib: usize| ia * nj + ib;
    let lg = li.intersect(&lj.conjugate(g_elt))?;
    let dim = free.dim();
    // T_ℓ: the endomorphism sending the generator to the basis vector
    // (ℓ, g⁻¹ℓ⁻¹g), extended by the bimodule actions.
    let mut t_mats: HashMap<usize, CMat> = HashMap::new();
    for &ell in lg.elements() {
        let ell_r = g.mul(g.mul(g.inv(g_elt), g.inv(ell)), g_elt);
        let target = idx(li.position(ell).unwrap(), lj.position(ell_r).unwrap());
        let mut cols: Vec<Vec<Cyc>> = Vec::with_capacity(dim);
        for ia in 0..li.order() {
            for ib in 0..nj {
                let x = li.elements()[ia];
                let y = lj.elements()[ib];
                let v0 = unit_vec(f, dim, target);
                let v1 = apply(f, &free.right_act[ib], &v0);
                let v2 = apply(f, &free.left_act[ia], &v1);
                let s = cval(f, &a.omega, &[x, g_elt, y]);
                cols.push(v2.into_iter().map(|c| f.mul(&c, &s)).collect());
            }
        }
        t_mats.insert(ell, from_cols(f, dim, &cols));
    }
    assert!(cmat_eq(&t_mats[&g.identity()], &CMat::eye(f, dim)));
    // Composition scalars: T_u·T_v = ζ^{c(u,v)}·T_{vu}.
    let mut c_table: HashMap<(usize, usize), i64> = HashMap::new();
    for &u in lg.elements() {
        for &v in lg.elements() {
            let prod = t_mats[&u].mul(f, &t_mats[&v]);
            let target = &t_mats[&g.mul(v, u)];
            let k = (0..dim * dim).find(|&k| !target.data[k].is_zero()).unwrap();
            let s = f.div(&prod.data[k], &target.data[k]);
            let exp = f
                .as_root_of_unity(&s)
                .expect("composition scalar is a root of unity");
            assert!(
                cmat_eq(&prod, &target.scale(f, &s)),
                "endomorphism composition is not monomial"
            );
            c_table.insert((u, v), exp as i64);
        }
    }
    // ℓ ↦ T_{ℓ⁻¹} is an isomorphism from the twisted group algebra with
    // cocycle φ(x,y) = c(x⁻¹,y⁻¹) onto End(free).
    let phi = Cochain::from_fn(lg.clone(), 2, f.order() as u64, |t| {
        c_table[&(g.inv(t[0]), g.inv(t[1]))]
    })?
    .reduce_modulus();
    assert!(phi.is_cocycle(), "endomorphism cocycle must be a 2-cocycle");
    let irreps = projective_irreps(&phi, &a.field)?;
    let nlg = lg.order();
    assert_eq!(irreps.iter().map(|r| r.dim * r.dim).sum::<usize>(), nlg);
    // Solve for the element mapping to the (1,1) matrix unit of each block.
    let mut block_rows = CMat::zeros(f, nlg, nlg);
    let mut row_of: Vec<(usize, usize, usize)> = Vec::new(); // (irrep, i, j)
    for (k, r) in irreps.iter().enumerate() {
        for i in 0..r.dim {
            for j in 0..r.dim {
                row_of.push((k, i, j));
            }
        }
    }
    for (row, &(k, i, j)) in row_of.iter().enumerate() {
        for h in 0..nlg {
            *block_rows.at_mut(row, h) = irreps[k].mats[h].at(i, j).clone();
        }
    }
    let support: Vec<usize> = free.support();
    let mut simples = Vec::new();
    let mut labels = Vec::new();
    for (k, r) in irreps.iter().enumerate() {
        let rhs: Vec<Cyc> = row_of
            .iter()
            .map(|&(kk, i, j)| {
                if kk == k && i == 0 && j == 0 {
                    f.one()
                } else {
                    f.zero()
                }
            })
            .collect();
        let alpha = solve(f, &block_rows, &rhs).expect("block system is invertible");
        let mut proj = CMat::zeros(f, dim, dim);
        for (h_pos, &h) in lg.elements().iter().enumerate() {
            if alpha[h_pos].is_zero() {
                continue;
            }
            let term = t_mats[&g.inv(h)].scale(f, &alpha[h_pos]);
            proj = proj.add(f, &term);
        }
        assert!(cmat_eq(&proj.mul(f, &proj), &proj), "projector must be idempotent");
        // Image basis: the projector's pivot columns.
        let mut reduced = proj.clone();
        let pivots = crate::cyclo::rref(f, &mut reduced);
        let basis_cols: Vec<Vec<Cyc>> = pivots
            .iter()
            .map(|&p| (0..dim).map(|i| proj.at(i, p).clone()).collect())
            .collect();
        let s_dim = basis_cols.len();
        assert_eq!(
            s_dim * nlg,
            li.order() * lj.order() * r.dim,
            "simple dimension formula |L_i||L_j|·dimρ/|L^g|"
        );
        let degrees: Vec<usize> = pivots.iter().map(|&p| free.degree(p)).collect();
        for (col, &d) in basis_cols.iter().zip(&degrees) {
            for (i, v) in col.iter().enumerate() {
                assert!(v.is_zero() || free.degree(i) == d, "projector column homogeneous");
            }
        }
        let bmat = from_cols(f, dim, &basis_cols);
        // Left inverse of the basis matrix, for expressing action images
        // back in the sub-bimodule basis.
        let mut aug = CMat::zeros(f, dim, s_dim + dim);
        for i in 0..dim {
            for j in 0..s_dim {
                *aug.at_mut(i, j) = bmat.at(i, j).clone();
            }
            *aug.at_mut(i, s_dim + i) = f.one();
        }
        let piv = crate::cyclo::rref(f, &mut aug);
        assert_eq!(&piv[..s_dim], &(0..s_dim).collect::<Vec<_>>()[..]);
        let mut left_inv = CMat::zeros(f, s_dim, dim);
        for i in 0..s_dim {
            for j in 0..dim {
                *left_inv.at_mut(i, j) = aug.at(i, s_dim + j).clone();
            }
        }
        let restrict = |act: &CMat| -> CMat {
            let img = act.mul(f, &bmat);
            let x = left_inv.mul(f, &img);
            assert!(cmat_eq(&bmat.mul(f, &x), &img), "image is action-invariant");
            x
        };
        let simple = BimoduleObject {
            left_alg: a.clone(),
            right_alg: b.clone(),
            space: GradedSpace { degrees },
            left_act: free.left_act.iter().map(&restrict).collect(),
            right_act: free.right_act.iter().map(&restrict).collect(),
        };
        simple.check_axioms()?;
        simples.push(simple);
        labels.push(SimpleLabel {
            coset_rep: g_elt,
            rho_index: k,
            rho_dim: r.dim,
            support: support.clone(),
        });
    }
    Ok((simples, labels))
}

/// Catalogues every simple (A,B)-bimodule by splitting the free
/// bimodule of each double coset. Simples from different cosets have
/// disjoint supports and simples from one coset sit in inequivalent
/// blocks, so the list is pairwise non-isomorphic by construction.
pub fn simple_catalog(
    a: &AlgebraObject,
    b: &AlgebraObject,
) -> Result<SimpleCatalog, OracleError> {
    if a.field.order() != b.field.order() || !a.omega.same_values(&b.omega) {
        return Err(OracleError::AlgebraMismatch);
    }
    let dc = double_cosets(&a.subgroup, &b.subgroup)?;
    let mut simples = Vec::new();
    let mut labels = Vec::new();
    for &g_elt in &dc.representatives {
        let (s, l) = split_free(a, b, g_elt)?;
        simples.extend(s);
        labels.extend(l);
    }
    Ok(SimpleCatalog { left: a.clone(), right: b.clone(), simples, labels })
}

/// Multiplicity vector of `m` against the catalogue: (index, mult)
/// pairs for every simple occurring. Errors if the multiplicities do
/// not exhaust the dimension.
pub fn decompose(
    m: &BimoduleObject,
    cat: &SimpleCatalog,
) -> Result<Vec<(usize, usize)>, OracleError> {
    if m.left_alg != cat.left || m.right_alg != cat.right {
        return Err(OracleError::AlgebraMismatch);
    }
    let mut out = Vec::new();
    let mut total = 0;
    for (i, s) in cat.simples.iter().enumerate() {
        let mult = hom_space(s, m)?.dim;
        if mult > 0 {
            total += mult * s.dim();
            out.push((i, mult));
        }
    }
    if total != m.dim() {
        return Err(OracleError::NonSemisimpleInput);
    }
    Ok(out)
}

/// Exact isomorphism test for semisimple bimodules: equality of all
/// multiplicities, decided by dim Hom(M,M) = dim Hom(M,N) = dim Hom(N,N)
/// (the Cauchy–Schwarz equality case) plus equal dimension.
pub fn is_isomorphic(m: &BimoduleObject, n: &BimoduleObject) -> Result<bool, OracleError> {
    if !same_pair(m, n) {
        return Err(OracleError::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(false);
    }
    let mm = hom_space(m, m)?.dim;
    let mn = hom_space(m, n)?.dim;
    if mm != mn {
        return Ok(false);
    }
    let nn = hom_space(n, n)?.dim;
    Ok(nn == mn)
}

/// Relative tensor product M ⊗_B N of an (A,B)- and a (B,C)-bimodule:
/// the cokernel of (right action ⊗ id) − (id ⊗ left action) with the
/// associator inserted, carrying the descended outer actions.
pub fn tensor_over(
    m: &BimoduleObject,
    n: &BimoduleObject,
) -> Result<BimoduleObject, OracleError> {
    if m.right_alg != n.left_alg {
        return Err(OracleError::AlgebraMismatch);
    }
    let f = m.field().clone();
    let g = m.left_alg.subgroup.parent().clone();
    let omega = &m.left_alg.omega;
    let (dm, dn) = (m.dim(), n.dim());
    let cols = dm * dn;
    let mid = &m.right_alg.subgroup;
    let mut rel = RowSpace::new(f.clone(), cols);
    for (h_pos, &h) in mid.elements().iter().enumerate() {
        if h == g.identity() {
            continue;
        }
        let rm = &m.right_act[h_pos];
        let ln = &n.left_act[h_pos];
        for p in 0..dm {
            for q in 0..dn {
                // (m·δ_h)⊗n − ω(|m|,h,|n|)·m⊗(δ_h·n).
                let mut row = vec![f.zero(); cols];
                for i in 0..dm {
                    let v = rm.at(i, p);
                    if !v.is_zero() {
                        row[i * dn + q] = f.add(&row[i * dn + q], v);
                    }
                }
                let s = cval(&f, omega, &[m.degree(p), h, n.degree(q)]);
                for j in 0..dn {
                    let v = ln.at(j, q);
                    if !v.is_zero() {
                        let t = f.mul(&s, v);
                        row[p * dn + j] = f.sub(&row[p * dn + j], &t);
                    }
                }
                rel.insert(row);
            }
        }
    }
    let free_cols = rel.free_columns();
    let degrees: Vec<usize> =
        free_cols.iter().map(|&c| g.mul(m.degree(c / dn), n.degree(c % dn))).collect();
    let left_sub = &m.left_alg.subgroup;
    let right_sub = &n.right_alg.subgroup;
    let mut left_act = Vec::with_capacity(left_sub.order());
    for (a_pos, &a) in left_sub.elements().iter().enumerate() {
        let lm = &m.left_act[a_pos];
        let cols_out: Vec<Vec<Cyc>> = free_cols
            .iter()
            .map(|&c| {
                let (p, q) = (c / dn, c % dn);
                let s = cval_inv(&f, omega, &[a, m.degree(p), n.degree(q)]);
                let mut w = vec![f.zero(); cols];
                for i in 0..dm {
                    let v = lm.at(i, p);
                    if !v.is_zero() {
                        w[i * dn + q] = f.mul(&s, v);
                    }
                }
                rel.quotient_coords(&w)
            })
            .collect();
        left_act.push(from_cols(&f, free_cols.len(), &cols_out));
    }
    let mut right_act = Vec::with_capacity(right_sub.order());
    for (c_pos, &celt) in right_sub.elements().iter().enumerate() {
        let rn = &n.right_act[c_pos];
        let cols_out: Vec<Vec<Cyc>> = free_cols
            .iter()
            .map(|&c| {
                let (p, q) = (c / dn, c % dn);
                let s = cval(&f, omega, &[m.degree(p), n.degree(q), celt]);
                let mut w = vec![f.zero(); cols];
                for j in 0..dn {
                    let v = rn.at(j, q);
                    if !v.is_zero() {
                        w[p * dn + j] = f.mul(&s, v);
                    }
                }
                rel.quotient_coords(&w)
            })
            .collect();
        right_act.push(from_cols(&f, free_cols.len(), &cols_out));
    }
    let out = BimoduleObject {
        left_alg: m.left_alg.clone(),
        right_alg: n.right_alg.clone(),
        space: GradedSpace { degrees },
        left_act,
        right_act,
    };
    out.check_axioms()?;
    Ok(out)
}

/// Quick necessary condition for Hom(A, X⊗Y) ≠ 0: some product of
/// supports must hit the identity.
fn supports_can_pair(g: &FiniteGroup, x: &BimoduleObject, y: &BimoduleObject) -> bool {
    x.support()
        .iter()
        .any(|&s| y.support().iter().any(|&t| g.mul(s, t) == g.identity()))
}

/// The dual of a simple (A,B)-bimodule X: the unique simple (B,A)-
/// bimodule Y with Hom_{(A,A)}(X⊗_B Y, A) ≠ 0.
fn dual_simple(
    x: &BimoduleObject,
    rev_cat: &SimpleCatalog,
    reg_left: &BimoduleObject,
) -> Result<usize, OracleError> {
    let g = x.left_alg.subgroup.parent().clone();
    let mut found = None;
    for (j, y) in rev_cat.simples.iter().enumerate() {
        if !supports_can_pair(&g, x, y) {
            continue;
        }
        let t = tensor_over(x, y)?;
        if hom_space(reg_left, &t)?.dim >= 1 {
            assert!(found.is_none(), "dual of a simple is unique");
            found = Some(j);
        }
    }
    Ok(found.expect("every simple has a dual"))
}

/// The dual bimodule X^∨ (for a general X: the sum of the duals of its
/// simple constituents).
pub fn dual_bimodule(x: &BimoduleObject) -> Result<BimoduleObject, OracleError> {
    let cat = simple_catalog(&x.left_alg, &x.right_alg)?;
    let rev = simple_catalog(&x.right_alg, &x.left_alg)?;
    let reg_left = regular_bimodule(&x.left_alg);
    let parts = decompose(x, &cat)?;
    let mut pieces: Vec<&BimoduleObject> = Vec::new();
    let mut duals: Vec<usize> = Vec::new();
    for (i, mult) in parts {
        let j = dual_simple(&cat.simples[i], &rev, &reg_left)?;
        for _ in 0..mult {
            duals.push(j);
        }
    }
    for &j in &duals {
        pieces.push(&rev.simples[j]);
    }
    direct_sum(&pieces)
}

/// X is invertible iff X⊗_B X^∨ ≅ A and X^∨⊗_A X ≅ B.
pub fn is_invertible(x: &BimoduleObject) -> Result<bool, OracleError> {
    if hom_space(x, x)?.dim != 1 {
        // Invertibles are simple: the regular bimodule is.
        return Ok(false);
    }
    let xd = dual_bimodule(x)?;
    let reg_a = regular_bimodule(&x.left_alg);
    let reg_b = regular_bimodule(&x.right_alg);
    Ok(is_isomorphic(&tensor_over(x, &xd)?, &reg_a)?
        && is_isomorphic(&tensor_over(&xd, x)?, &reg_b)?)
}

/// Shared data for conjugation-orbit computations over one algebra.
struct InvData {
    cat: SimpleCatalog,
    reg_index: usize,
    /// Dual index of each simple within the catalogue.
    dual: Vec<usize>,
    /// Indices of the invertible simples.
    invertible: Vec<usize>,
}

fn position_in_catalog(
    cat: &SimpleCatalog,
    x: &BimoduleObject,
) -> Result<usize, OracleError> {
    for (i, s) in cat.simples.iter().enumerate() {
        if is_isomorphic(s, x)? {
            return Ok(i);
        }
    }
    panic!("bimodule not found in the simple catalogue");
}

fn invertibility_data(a: &AlgebraObject) -> Result<InvData, OracleError> {
    let cat = simple_catalog(a, a)?;
    let reg = regular_bimodule(a);
    let reg_index = position_in_catalog(&cat, &reg)?;
    let mut dual = Vec::with_capacity(cat.rank());
    for x in &cat.simples {
        dual.push(dual_simple(x, &cat, &reg)?);
    }
    let mut invertible = Vec::new();
    for (i, x) in cat.simples.iter().enumerate() {
        let xd = &cat.simples[dual[i]];
        if is_isomorphic(&tensor_over(x, xd)?, &cat.simples[reg_index])?
            && is_isomorphic(&tensor_over(xd, x)?, &cat.simples[reg_index])?
        {
            invertible.push(i);
        }
    }
    Ok(InvData { cat, reg_index, dual, invertible })
}

/// Orbits of the simple (A,A)-bimodules under E ↦ X^∨ ⊗_A E ⊗_A X for
/// invertible X. Since the invertibles form a group, one application of
/// every invertible computes full orbits.
pub struct ConjugacyReport {
    pub catalog: SimpleCatalog,
    pub labels: Vec<SimpleLabel>,
    pub regular_index: usize,
    pub invertible: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

pub fn conjugacy_classes(a: &AlgebraObject) -> Result<ConjugacyReport, OracleError> {
    let data = invertibility_data(a)?;
    let n = data.cat.rank();
    let mut class = (0..n).collect::<Vec<usize>>();
    for &v in &data.invertible {
        let xd = &data.cat.simples[data.dual[v]];
        let x = &data.cat.simples[v];
        for e in 0..n {
            let t = tensor_over(&tensor_over(xd, &data.cat.simples[e])?, x)?;
            let j = position_in_catalog(&data.cat, &t)?;
            let (a_root, b_root) = (root(&mut class, e), root(&mut class, j));
            if a_root != b_root {
                class[b_root.max(a_root)] = b_root.min(a_root);
            }
        }
    }
    let orbits = collect_orbits(&mut class);
    let labels = data.cat.labels.clone();
    Ok(ConjugacyReport {
        catalog: data.cat,
        labels,
        regular_index: data.reg_index,
        invertible: data.invertible,
        orbits,
    })
}

fn root(class: &mut [usize], mut i: usize) -> usize {
    while class[i] != i {
        class[i] = class[class[i]];
        i = class[i];
    }
    i
}

fn collect_orbits(class: &mut [usize]) -> Vec<Vec<usize>> {
    let n = class.len();
    let mut buckets: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        let r = root(class, i);
        buckets.entry(r).or_default().push(i);
    }
    let mut orbits: Vec<Vec<usize>> = buckets.into_values().collect();
    orbits.sort_by_key(|o| o[0]);
    orbits
}

/// The group formed by the invertible simple (A,A)-bimodules under
/// ⊗_A, reported abstractly.
pub struct InvertibleGroupReport {
    pub order: usize,
    /// Sorted multiset of element orders.
    pub element_orders: Vec<usize>,
    pub abelian: bool,
    pub cyclic: bool,
    /// Best-effort isomorphism-type name (exact for cyclic and small
    /// abelian groups).
    pub name: String,
}

pub fn invertible_group(a: &AlgebraObject) -> Result<InvertibleGroupReport, OracleError> {
    let data = invertibility_data(a)?;
    let inv = &data.invertible;
    let n = inv.len();
    let mut table = vec![vec![0usize; n]; n];
    for (i, &vi) in inv.iter().enumerate() {
        for (j, &vj) in inv.iter().enumerate() {
            let t = tensor_over(&data.cat.simples[vi], &data.cat.simples[vj])?;
            let k = position_in_catalog(&data.cat, &t)?;
            table[i][j] = inv.iter().position(|&x| x == k).expect("product is invertible");
        }
    }
    let identity = inv
        .iter()
        .position(|&x| x == data.reg_index)
        .expect("the regular bimodule is invertible");
    let group = FiniteGroup::validate(table, identity, None)?;
    let mut element_orders: Vec<usize> = (0..n).map(|x| group.element_order(x)).collect();
    element_orders.sort_unstable();
    let abelian = group.is_abelian();
    let cyclic = element_orders.iter().any(|&o| o == n);
    let name = if cyclic {
        format!("Z{n}")
    } else if abelian {
        let e = group.exponent();
        if e * e == n {
            format!("Z{e} x Z{e}")
        } else {
            format!("abelian of order {n}, exponent {e}")
        }
    } else {
        format!("nonabelian of order {n}")
    };
    Ok(InvertibleGroupReport { order: n, element_orders, abelian, cyclic, name })
}

/// Orbits of the simple (A₁,A₂)-bimodules under
/// E ↦ X₁^∨ ⊗ E ⊗ X₂ over pairs of invertibles.
pub struct TwoVertexReport {
    pub catalog: SimpleCatalog,
    pub orbits: Vec<Vec<usize>>,
}

pub fn two_vertex_classes(
    a1: &AlgebraObject,
    a2: &AlgebraObject,
) -> Result<TwoVertexReport, OracleError> {
    let d1 = invertibility_data(a1)?;
    let d2 = invertibility_data(a2)?;
    let cat = simple_catalog(a1, a2)?;
    let n = cat.rank();
    let mut class = (0..n).collect::<Vec<usize>>();
    for &v1 in &d1.invertible {
        let x1d = &d1.cat.simples[d1.dual[v1]];
        for &v2 in &d2.invertible {
            let x2 = &d2.cat.simples[v2];
            for e in 0..n {
                let t = tensor_over(&tensor_over(x1d, &cat.simples[e])?, x2)?;
                let j = position_in_catalog(&cat, &t)?;
                let (ra, rb) = (root(&mut class, e), root(&mut class, j));
                if ra != rb {
                    class[rb.max(ra)] = rb.min(ra);
                }
            }
        }
    }
    let orbits = collect_orbits(&mut class);
    Ok(TwoVertexReport { catalog: cat, orbits })
}
