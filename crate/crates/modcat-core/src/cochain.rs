//! Normalized cochains on subgroups valued in roots of unity, their
//! differentials, the conjugation cochains ψ^g / Ω_g / ψ^g_{i,j},
//! coboundary testing over 𝕜ˣ, H² enumeration, and the builtin cocycles
//! used by the worked examples.
//!
//! A cochain stores exponents mod M of a fixed primitive M-th root of
//! unity, so all cochain arithmetic is additive mod M. Combining cochains
//! promotes both to the lcm of their moduli.

use crate::group::{FiniteGroup, Subgroup};
use crate::snf::{self, Mat};
use num::bigint::BigInt;
use num::{Integer, ToPrimitive, Zero};
use serde::Deserialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CochainError {
    #[error("differential of a degree-{0} cochain is not representable")]
    DegreeTooHigh(usize),
    #[error("degree must be 1, 2 or 3 (got {0})")]
    BadDegree(usize),
    #[error("{0} is not a subgroup of the cochain domain")]
    NotASubgroup(String),
    #[error("cochain is not normalized and cannot be renormalized")]
    NotNormalized,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("compatibility violated: {0}")]
    CompatibilityViolated(String),
    #[error("unknown builtin cochain `{0}`")]
    UnknownName(String),
    #[error("bad parameters for builtin cochain: {0}")]
    BadParams(String),
    #[error("element {0} not in the cochain domain")]
    ElementNotInGroup(usize),
}

/// A normalized n-cochain on a subgroup L, valued in μ_M (stored as
/// exponents mod M).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    domain: Subgroup,
    degree: usize,
    modulus: u64,
    /// Exponent table of length |L|^degree, indexed by local positions.
    values: Vec<u64>,
}

fn pow(base: usize, exp: usize) -> usize {
    base.pow(exp as u32)
}

impl Cochain {
    /// The identically-1 cochain.
    pub fn trivial(domain: Subgroup, degree: usize) -> Cochain {
        let len = pow(domain.order(), degree);
        Cochain { domain, degree, modulus: 1, values: vec![0; len] }
    }

    /// Builds a cochain from an exponent function on global element ids,
    /// normalizing and validating.
    pub fn from_fn(
        domain: Subgroup,
        degree: usize,
        modulus: u64,
        f: impl Fn(&[usize]) -> i64,
    ) -> Result<Cochain, CochainError> {
        if !(1..=3).contains(&degree) {
            return Err(CochainError::BadDegree(degree));
        }
        let n = domain.order();
        let len = pow(n, degree);
        let mut values = vec![0u64; len];
        let mut tuple = vec![0usize; degree];
        for (idx, value) in values.iter_mut().enumerate() {
            let mut rest = idx;
            for t in tuple.iter_mut() {
                *t = domain.elements()[rest % n];
                rest /= n;
            }
            *value = f(&tuple).rem_euclid(modulus as i64) as u64;
        }
        let mut c = Cochain { domain, degree, modulus, values };
        c.renormalize()?;
        Ok(c)
    }

    /// Subtracts the standard normalization coboundary if needed; errors
    /// when the identity values cannot be cleared that way.
    fn renormalize(&mut self) -> Result<(), CochainError> {
        let e = self.domain.parent().identity();
        let is_norm = |c: &Cochain| {
            c.tuples().all(|t| !t.contains(&e) || c.value(&t) == 0)
        };
        if is_norm(self) {
            return Ok(());
        }
        if self.degree == 2 {
            // For a 2-cocycle φ, φ(e,·) = φ(·,e) = φ(e,e); subtracting the
            // coboundary of the constant cochain η ≡ φ(e,e) normalizes it.
            let c0 = self.value(&[e, e]);
            for v in self.values.iter_mut() {
                *v = (*v + self.modulus - c0) % self.modulus;
            }
        }
        if is_norm(self) {
            Ok(())
        } else {
            Err(CochainError::NotNormalized)
        }
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Iterates over all argument tuples (global element ids).
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let n = self.domain.order();
        let len = pow(n, self.degree);
        (0..len).map(move |idx| {
            let mut rest = idx;
            (0..self.degree)
                .map(|_| {
                    let g = self.domain.elements()[rest % n];
                    rest /= n;
                    g
                })
                .collect()
        })
    }

    fn index(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.degree);
        let n = self.domain.order();
        // Little-endian tuple layout, matching tuples().
        let mut idx = 0;
        let mut mult = 1;
        for &g in args {
            let p = self.domain.position(g).expect("argument outside cochain domain");
            idx += p * mult;
            mult *= n;
        }
        idx
    }

    /// Exponent value at a tuple of global element ids.
    pub fn value(&self, args: &[usize]) -> u64 {
        self.values[self.index(args)]
    }

    pub fn set_value(&mut self, args: &[usize], v: i64) {
        let idx = self.index(args);
        self.values[idx] = v.rem_euclid(self.modulus as i64) as u64;
    }

    /// Re-expresses the cochain at a larger modulus (old must divide new).
    pub fn at_modulus(&self, modulus: u64) -> Cochain {
        assert!(modulus % self.modulus == 0, "modulus must be a multiple");
        let k = modulus / self.modulus;
        Cochain {
            domain: self.domain.clone(),
            degree: self.degree,
            modulus,
            values: self.values.iter().map(|&v| v * k).collect(),
        }
    }

    /// Shrinks the modulus to the subgroup of μ_M actually generated by the
    /// values.
    pub fn reduce_modulus(&self) -> Cochain {
        let g = self.values.iter().fold(self.modulus, |acc, &v| acc.gcd(&v));
        if g <= 1 {
            return self.clone();
        }
        Cochain {
            domain: self.domain.clone(),
            degree: self.degree,
            modulus: self.modulus / g,
            values: self.values.iter().map(|&v| v / g).collect(),
        }
    }

    /// Pointwise product (exponent sum) at the lcm modulus.
    pub fn mul(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.domain.elements(), other.domain.elements());
        assert_eq!(self.degree, other.degree);
        let m = self.modulus.lcm(&other.modulus);
        let a = self.at_modulus(m);
        let b = other.at_modulus(m);
        let values = a.values.iter().zip(&b.values).map(|(x, y)| (x + y) % m).collect();
        Cochain { domain: self.domain.clone(), degree: self.degree, modulus: m, values }
    }

    /// Pointwise inverse (exponent negation).
    pub fn invert(&self) -> Cochain {
        let m = self.modulus;
        let values = self.values.iter().map(|&v| (m - v) % m).collect();
        Cochain { domain: self.domain.clone(), degree: self.degree, modulus: m, values }
    }

    /// Equality as 𝕜ˣ-valued functions (compares at the common modulus).
    pub fn same_values(&self, other: &Cochain) -> bool {
        if self.domain.elements() != other.domain.elements() || self.degree != other.degree {
            return false;
        }
        let m = self.modulus.lcm(&other.modulus);
        self.at_modulus(m).values == other.at_modulus(m).values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// The bar differential with trivial coefficients:
    /// `dη(a,b) = η(b)·η(ab)⁻¹·η(a)` and
    /// `dψ(a,b,c) = ψ(b,c)·ψ(ab,c)⁻¹·ψ(a,bc)·ψ(a,b)⁻¹`.
    pub fn differential(&self) -> Result<Cochain, CochainError> {
        if self.degree >= 3 {
            return Err(CochainError::DegreeTooHigh(self.degree));
        }
        let grp = self.domain.parent().clone();
        let m = self.modulus;
        let dom = self.domain.clone();
        let out = match self.degree {
            1 => Cochain::from_fn(dom, 2, m, |t| {
                let (a, b) = (t[0], t[1]);
                self.value(&[a]) as i64 + self.value(&[b]) as i64
                    - self.value(&[grp.mul(a, b)]) as i64
            }),
            2 => Cochain::from_fn(dom, 3, m, |t| {
                let (a, b, c) = (t[0], t[1], t[2]);
                self.value(&[b, c]) as i64 - self.value(&[grp.mul(a, b), c]) as i64
                    + self.value(&[a, grp.mul(b, c)]) as i64
                    - self.value(&[a, b]) as i64
            }),
            d => return Err(CochainError::BadDegree(d)),
        };
        out
    }

    /// Cocycle test; for degree 3 the degree-4 identity is evaluated
    /// directly.
    pub fn is_cocycle(&self) -> bool {
        let grp = self.domain.parent().clone();
        let m = self.modulus as i64;
        match self.degree {
            1 | 2 => self.differential().map(|d| d.is_trivial()).unwrap_or(false),
            3 => {
                let els = self.domain.elements();
                for &a in els {
                    for &b in els {
                        for &c in els {
                            for &d in els {
                                let v = self.value(&[b, c, d]) as i64
                                    - self.value(&[grp.mul(a, b), c, d]) as i64
                                    + self.value(&[a, grp.mul(b, c), d]) as i64
                                    - self.value(&[a, b, grp.mul(c, d)]) as i64
                                    + self.value(&[a, b, c]) as i64;
                                if v.rem_euclid(m) != 0 {
                                    return false;
                                }
                            }
                        }
                    }
                }
                true
            }
            _ => false,
        }
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Cochain, CochainError> {
        if sub.parent() != self.domain.parent()
            || !sub.elements().iter().all(|&g| self.domain.contains(g))
        {
            return Err(CochainError::NotASubgroup(format!("{sub}")));
        }
        Cochain::from_fn(sub.clone(), self.degree, self.modulus, |t| self.value(t) as i64)
    }

    /// ψ^g(g₁,…) = ψ(ᵍg₁,…), a cochain on g⁻¹Lg.
    pub fn conjugate(&self, g: usize) -> Cochain {
        let grp = self.domain.parent().clone();
        let dom = self.domain.conjugate(grp.inv(g));
        Cochain::from_fn(dom, self.degree, self.modulus, |t| {
            let conj: Vec<usize> = t.iter().map(|&a| grp.conj(g, a)).collect();
            self.value(&conj) as i64
        })
        .expect("conjugate of a normalized cochain is normalized")
    }
}

/// Ω_g(g₁,g₂) = ω(ᵍg₁,ᵍg₂,g)·ω(g,g₁,g₂)/ω(ᵍg₁,g,g₂), a 2-cochain on G.
pub fn omega_correction(omega: &Cochain, g: usize) -> Result<Cochain, CochainError> {
    if omega.degree() != 3 || !omega.is_cocycle() {
        return Err(CochainError::NotACocycle);
    }
    let grp = omega.domain().parent().clone();
    let dom = omega.domain().clone();
    Cochain::from_fn(dom, 2, omega.modulus(), |t| {
        let (g1, g2) = (t[0], t[1]);
        let (cg1, cg2) = (grp.conj(g, g1), grp.conj(g, g2));
        omega.value(&[cg1, cg2, g]) as i64 + omega.value(&[g, g1, g2]) as i64
            - omega.value(&[cg1, g, g2]) as i64
    })
}

/// The mixed 2-cocycle ψ^g_{i,j} on L_i ∩ gL_jg⁻¹:
/// ψ_i(ℓ,ℓ′)·ψ_j(g⁻¹ℓ′⁻¹g, g⁻¹ℓ⁻¹g)·ω(ℓ,ℓ′,g)·ω(ℓ,ℓ′g,g⁻¹ℓ′⁻¹g)
/// / ω(ℓℓ′g, g⁻¹ℓ′⁻¹g, g⁻¹ℓ⁻¹g).
pub fn mixed_cocycle(
    psi_i: &Cochain,
    psi_j: &Cochain,
    omega: &Cochain,
    g: usize,
) -> Result<Cochain, CochainError> {
    let grp = omega.domain().parent().clone();
    for (tag, psi) in [("psi_i", psi_i), ("psi_j", psi_j)] {
        let d = psi.differential()?;
        let rest = omega.restrict(psi.domain())?;
        if !d.same_values(&rest) {
            return Err(CochainError::CompatibilityViolated(format!(
                "d{tag} != omega restricted to its domain"
            )));
        }
    }
    let lj_conj = psi_j.domain().conjugate(g);
    let dom = psi_i.domain().intersect(&lj_conj).expect("same parent");
    let m = psi_i.modulus().lcm(&psi_j.modulus()).lcm(&omega.modulus());
    let psi_i = psi_i.at_modulus(m);
    let psi_j = psi_j.at_modulus(m);
    let omega = omega.at_modulus(m);
    let ginv = grp.inv(g);
    let out = Cochain::from_fn(dom, 2, m, |t| {
        let (l, lp) = (t[0], t[1]);
        // g⁻¹ℓ⁻¹g and g⁻¹ℓ′⁻¹g
        let a = grp.conj(ginv, grp.inv(l));
        let b = grp.conj(ginv, grp.inv(lp));
        let lpg = grp.mul(lp, g);
        let llpg = grp.mul(l, lpg);
        psi_i.value(&[l, lp]) as i64 + psi_j.value(&[b, a]) as i64
            + omega.value(&[l, lp, g]) as i64
            + omega.value(&[l, lpg, b]) as i64
            - omega.value(&[llpg, b, a]) as i64
    })?;
    if !out.is_cocycle() {
        return Err(CochainError::CompatibilityViolated(
            "mixed cochain failed the cocycle check".into(),
        ));
    }
    Ok(out)
}

/// A coboundary certificate: `differential(eta) = target` (both at the
/// witness modulus).
#[derive(Debug, Clone)]
pub struct CoboundaryWitness {
    pub eta: Cochain,
    pub target: Cochain,
}

impl CoboundaryWitness {
    pub fn verify(&self) -> bool {
        self.eta.differential().map(|d| d.same_values(&self.target)).unwrap_or(false)
    }
}

/// The Smith factorizations of bar-differential matrices dominate the
/// coboundary solves and depend only on the multiplication pattern of the
/// domain, so they are shared globally across groups and moduli.
type DiffSnfKey = (Vec<usize>, usize);

static DIFF_SNF_CACHE: Mutex<Option<HashMap<DiffSnfKey, Arc<snf::Snf>>>> = Mutex::new(None);

/// The multiplication table of a subgroup in positional indices; two
/// subgroups with equal patterns are identical as labeled groups, so
/// positional cohomology data transfers between them verbatim.
fn mult_pattern(domain: &Subgroup) -> Vec<usize> {
    let grp = domain.parent();
    domain
        .elements()
        .iter()
        .flat_map(|&a| {
            domain
                .elements()
                .iter()
                .map(move |&b| domain.position(grp.mul(a, b)).expect("closed"))
        })
        .collect()
}

fn differential_snf(domain: &Subgroup, n: usize) -> Arc<snf::Snf> {
    let key = (mult_pattern(domain), n);
    {
        let cache = DIFF_SNF_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(s) = map.get(&key) {
                return s.clone();
            }
        }
    }
    let s = Arc::new(snf::smith_normal_form(&differential_matrix(domain, n)));
    let mut cache = DIFF_SNF_CACHE.lock().unwrap();
    cache.get_or_insert_with(HashMap::new).entry(key).or_insert_with(|| s.clone());
    s
}

/// Builds the matrix of the bar differential d: C^{n-1}(L) → C^n(L) in the
/// full (non-normalized) tuple coordinates.
fn differential_matrix(domain: &Subgroup, n: usize) -> Mat {
    let grp = domain.parent().clone();
    let sz = domain.order();
    let rows = pow(sz, n);
    let cols = pow(sz, n - 1);
    let mut a = snf::zeros(rows, cols);
    let pos = |g: usize| domain.position(g).unwrap();
    let col_index = |args: &[usize]| -> usize {
        let mut idx = 0;
        let mut mult = 1;
        for &g in args {
            idx += pos(g) * mult;
            mult *= sz;
        }
        idx
    };
    let mut tuple = vec![0usize; n];
    for row in 0..rows {
        let mut rest = row;
        for t in tuple.iter_mut() {
            *t = domain.elements()[rest % sz];
            rest /= sz;
        }
        let mut add = |args: &[usize], sign: i64| {
            a[row][col_index(args)] += BigInt::from(sign);
        };
        match n {
            2 => {
                let (x, y) = (tuple[0], tuple[1]);
                add(&[x], 1);
                add(&[y], 1);
                add(&[grp.mul(x, y)], -1);
            }
            3 => {
                let (x, y, z) = (tuple[0], tuple[1], tuple[2]);
                add(&[y, z], 1);
                add(&[grp.mul(x, y), z], -1);
                add(&[x, grp.mul(y, z)], 1);
                add(&[x, y], -1);
            }
            _ => unreachable!("differential matrices needed only for n = 2, 3"),
        }
    }
    a
}

/// Decides 𝕜ˣ-triviality of a μ_M-valued cocycle exactly by solving
/// dη = φ over ℤ/(M·|L|); this modulus is sufficient for degrees ≤ 3.
pub fn kx_coboundary_witness(phi: &Cochain) -> Result<Option<CoboundaryWitness>, CochainError> {
    if !phi.is_cocycle() {
        return Err(CochainError::NotACocycle);
    }
    let l = phi.domain().order() as u64;
    match phi.degree() {
        1 => {
            // Degree-0 cochains are constants with zero differential.
            if phi.is_trivial() {
                let eta = Cochain::trivial(phi.domain().clone(), 1);
                // Represent the (vacuous) degree-0 witness as the trivial
                // degree-1 cochain paired with the trivial target.
                return Ok(Some(CoboundaryWitness { eta, target: phi.clone() }));
            }
            Ok(None)
        }
        n @ (2 | 3) => {
            if phi.is_trivial() {
                let eta = Cochain::trivial(phi.domain().clone(), n - 1);
                return Ok(Some(CoboundaryWitness { eta, target: phi.clone() }));
            }
            if let Some(g) = cyclic_generator(phi.domain()) {
                return Ok(cyclic_witness(phi, g));
            }
            let m_big = phi.modulus() * l;
            let target = phi.at_modulus(m_big);
            let a = differential_snf(phi.domain(), n);
            let b: Vec<BigInt> = target.tuples().map(|t| BigInt::from(target.value(&t))).collect();
            let modulus = BigInt::from(m_big);
            match snf::solve_mod_snf(&a, &b, &modulus) {
                None => Ok(None),
                Some(x) => {
                    let sz = phi.domain().order();
                    let cols = pow(sz, n - 1);
                    let mut exps = vec![0i64; cols];
                    for (i, v) in x.iter().enumerate() {
                        exps[i] = v.to_i64().expect("witness exponent fits i64");
                    }
                    let dom = phi.domain().clone();
                    let mut eta = Cochain::trivial(dom, n - 1).at_modulus(m_big);
                    let mut tuple_vals = eta.values.clone();
                    for (i, e) in exps.iter().enumerate() {
                        tuple_vals[i] = e.rem_euclid(m_big as i64) as u64;
                    }
                    eta.values = tuple_vals;
                    // Normalize η: for degree 2 witnesses (η of degree 1) the
                    // identity rows force η(e) = 0 already; for degree-2 η,
                    // subtract the constant η(e,e).
                    if n == 3 {
                        let e = eta.domain.parent().identity();
                        let c0 = eta.value(&[e, e]);
                        for v in eta.values.iter_mut() {
                            *v = (*v + m_big - c0) % m_big;
                        }
                    }
                    let w = CoboundaryWitness { eta, target };
                    debug_assert!(w.verify());
                    Ok(Some(w))
                }
            }
        }
        d => Err(CochainError::BadDegree(d)),
    }
}

/// A generator of the domain when it is cyclic.
fn cyclic_generator(l: &Subgroup) -> Option<usize> {
    let grp = l.parent();
    l.elements().iter().copied().find(|&g| grp.element_order(g) == l.order())
}

/// Closed-form coboundary decision on a cyclic domain ⟨g⟩, avoiding the
/// Smith normal form of the full differential matrix.
///
/// Writing t for the lift of φ to modulus M·n, a telescoping recurrence
/// along powers of g produces a candidate η with dη agreeing with t on
/// every tuple whose first entry is g; the cocycle identity then forces
/// dη = t everywhere, because a normalized cocycle vanishing on such
/// tuples is invariant under shifting its first argument by g. For
/// degree 2 the construction always succeeds (cyclic Schur multipliers
/// are trivial); for degree 3 the obstruction is the cycle sum
/// Σ_i t(g, gⁱ, gᶜ), which vanishes for every coboundary.
fn cyclic_witness(phi: &Cochain, g: usize) -> Option<CoboundaryWitness> {
    let l = phi.domain().clone();
    let grp = l.parent().clone();
    let n = l.order();
    let m_big = phi.modulus() * n as u64;
    let target = phi.at_modulus(m_big);
    // Powers g⁰ … gⁿ⁻¹.
    let mut powers = Vec::with_capacity(n);
    let mut cur = grp.identity();
    for _ in 0..n {
        powers.push(cur);
        cur = grp.mul(g, cur);
    }
    match phi.degree() {
        2 => {
            // η(gᵏ) = k·c − Σ_{i<k} t(g, gⁱ) with c = Σ_{i<n} φ(g, gⁱ),
            // so that η(gⁿ) = η(e) = 0.
            let c: u64 = powers.iter().map(|&p| phi.value(&[g, p])).sum::<u64>() % m_big;
            let mut eta = Cochain::trivial(l, 1).at_modulus(m_big);
            let mut partial = 0u64;
            for (k, &p) in powers.iter().enumerate() {
                let v = (k as u64 * c) % m_big;
                eta.set_value(&[p], (v + m_big - partial % m_big) as i64);
                partial = (partial + target.value(&[g, p])) % m_big;
            }
            let w = CoboundaryWitness { eta, target };
            debug_assert!(w.verify());
            Some(w)
        }
        3 => {
            // Obstruction: every cycle sum must vanish.
            for &pc in &powers {
                let s: u64 = powers.iter().map(|&pi| target.value(&[g, pi, pc])).sum();
                if s % m_big != 0 {
                    return None;
                }
            }
            // η(g^{b+1}, gᶜ) = η(g^b, gᶜ) − t(g, g^b, gᶜ), η(e, ·) = 0.
            let mut eta = Cochain::trivial(l, 2).at_modulus(m_big);
            for &pc in &powers {
                let mut acc = 0u64;
                for b in 0..n - 1 {
                    let pb = powers[b];
                    acc = (acc + m_big - target.value(&[g, pb, pc]) % m_big) % m_big;
                    eta.set_value(&[powers[b + 1], pc], acc as i64);
                }
            }
            let w = CoboundaryWitness { eta, target };
            debug_assert!(w.verify());
            Some(w)
        }
        _ => unreachable!("cyclic witness is called for degrees 2 and 3 only"),
    }
}

/// One particular 2-cochain ψ with dψ = ω|_L (at modulus M·|L|), or None
/// when ω|_L is 𝕜ˣ-nontrivial.
pub fn solve_psi(omega: &Cochain, l: &Subgroup) -> Result<Option<Cochain>, CochainError> {
    let restricted = omega.restrict(l)?;
    match kx_coboundary_witness(&restricted)? {
        None => Ok(None),
        Some(w) => Ok(Some(w.eta.reduce_modulus())),
    }
}

/// H²(L, 𝕜ˣ) as elementary divisors plus class representatives. Classes
/// are computed at modulus |L| and then merged under 𝕜ˣ-coboundary
/// equivalence (decided by [`kx_coboundary_witness`]).
#[derive(Debug, Clone)]
pub struct H2Report {
    pub group: Subgroup,
    pub modulus: u64,
    pub elementary_divisors: Vec<u64>,
    pub class_representatives: Vec<Cochain>,
}

/// Positional H² data, shared between subgroups with the same
/// multiplication pattern (the computation only sees positions).
struct H2Entry {
    modulus: u64,
    elementary_divisors: Vec<u64>,
    rep_values: Vec<Vec<u64>>,
}

static H2_CACHE: Mutex<Option<HashMap<Vec<usize>, Arc<H2Entry>>>> = Mutex::new(None);

pub fn h2_classes(l: &Subgroup) -> H2Report {
    let key = mult_pattern(l);
    {
        let cache = H2_CACHE.lock().unwrap();
        if let Some(entry) = cache.as_ref().and_then(|map| map.get(&key)) {
            let class_representatives = entry
                .rep_values
                .iter()
                .map(|values| Cochain {
                    domain: l.clone(),
                    degree: 2,
                    modulus: entry.modulus,
                    values: values.clone(),
                })
                .collect();
            return H2Report {
                group: l.clone(),
                modulus: entry.modulus,
                elementary_divisors: entry.elementary_divisors.clone(),
                class_representatives,
            };
        }
    }
    let report = h2_classes_uncached(l);
    let entry = Arc::new(H2Entry {
        modulus: report.modulus,
        elementary_divisors: report.elementary_divisors.clone(),
        rep_values: report.class_representatives.iter().map(|c| c.values.clone()).collect(),
    });
    let mut cache = H2_CACHE.lock().unwrap();
    cache.get_or_insert_with(HashMap::new).entry(key).or_insert(entry);
    report
}

fn h2_classes_uncached(l: &Subgroup) -> H2Report {
    let m_usize = l.order();
    // Cyclic groups have trivial Schur multiplier.
    if cyclic_generator(l).is_some() {
        return H2Report {
            group: l.clone(),
            modulus: m_usize as u64,
            elementary_divisors: vec![],
            class_representatives: vec![Cochain::trivial(l.clone(), 2)],
        };
    }
    let m = BigInt::from(m_usize);
    if m_usize == 1 {
        return H2Report {
            group: l.clone(),
            modulus: 1,
            elementary_divisors: vec![],
            class_representatives: vec![Cochain::trivial(l.clone(), 2)],
        };
    }
    let c = m_usize * m_usize;
    let d1 = differential_matrix(l, 2);

    // Generators of { x ∈ (ℤ/m)^c : d2·x ≡ 0 } as an integer lattice
    // (together with m·I).
    let s = differential_snf(l, 3);
    let mut gens = snf::zeros(c, s.cols + c);
    for j in 0..s.cols {
        let scale = if j < s.rank {
            let d = &s.d[j][j];
            (&m / d.gcd(&m)).clone()
        } else {
            BigInt::from(1)
        };
        for i in 0..c {
            gens[i][j] = &s.v[i][j] * &scale;
        }
    }
    for i in 0..c {
        gens[i][s.cols + i] = m.clone();
    }
    let basis = snf::column_lattice_basis(&gens); // c × c, full rank

    // Relation lattice: coboundaries + m·I.
    let mut rel = snf::zeros(c, m_usize + c);
    for i in 0..c {
        for j in 0..m_usize {
            rel[i][j] = d1[i][j].clone();
        }
        rel[i][m_usize + i] = m.clone();
    }
    let x = snf::express_in_basis(&basis, &rel);
    let sx = snf::smith_normal_form(&x);
    // H ≅ ⊕ ℤ/d_i with generators = columns of basis · uinv(X).
    let gens_h = snf::mat_mul(&basis, &sx.uinv);
    let mut divisors: Vec<u64> = Vec::new();
    let mut gen_cols: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..sx.rank {
        let d = sx.d[i][i].to_u64().expect("small divisor");
        if d > 1 {
            divisors.push(d);
            gen_cols.push((0..c).map(|r| gens_h[r][i].clone()).collect());
        }
    }

    let make_cochain = |vec: &[BigInt]| -> Cochain {
        let dom = l.clone();
        let mm = m_usize as u64;
        let grab = |t: &[usize]| -> i64 {
            let sz = l.order();
            let mut idx = 0;
            let mut mult = 1;
            for &g in t {
                idx += l.position(g).unwrap() * mult;
                mult *= sz;
            }
            vec[idx].mod_floor(&m).to_i64().unwrap()
        };
        Cochain::from_fn(dom, 2, mm, grab).expect("H² representative normalizes")
    };

    // Enumerate the classes mod m and filter under 𝕜ˣ-equivalence.
    let total: u64 = divisors.iter().product();
    assert!(total <= 1 << 16, "H² candidate class count too large for desk scale");
    let k = divisors.len();
    let all_tuples: Vec<Vec<u64>> = (0..total)
        .map(|mut t| {
            let mut tuple = vec![0u64; k];
            for (i, &d) in divisors.iter().enumerate() {
                tuple[i] = t % d;
                t /= d;
            }
            tuple
        })
        .collect();
    let tuple_cochain = |tuple: &[u64]| -> Cochain {
        let mut v = vec![BigInt::zero(); c];
        for (i, &a) in tuple.iter().enumerate() {
            for r in 0..c {
                v[r] += &gen_cols[i][r] * BigInt::from(a);
            }
        }
        make_cochain(&v)
    };
    let mut kx_trivial: Vec<Vec<u64>> = Vec::new();
    for tuple in &all_tuples {
        let phi = tuple_cochain(tuple);
        debug_assert!(phi.is_cocycle());
        if kx_coboundary_witness(&phi).expect("cocycle").is_some() {
            kx_trivial.push(tuple.clone());
        }
    }
    // Structure of the quotient: ℤ^k / (diag(divisors) + lifts of the
    // 𝕜ˣ-trivial subgroup).
    let mut relq = snf::zeros(k, k + kx_trivial.len());
    for i in 0..k {
        relq[i][i] = BigInt::from(divisors[i]);
    }
    for (j, t) in kx_trivial.iter().enumerate() {
        for i in 0..k {
            relq[i][k + j] = BigInt::from(t[i]);
        }
    }
    let sq = snf::smith_normal_form(&relq);
    let final_divisors: Vec<u64> = (0..sq.rank)
        .map(|i| sq.d[i][i].to_u64().unwrap())
        .filter(|&d| d > 1)
        .collect();

    // Coset representatives: least tuple per 𝕜ˣ-class.
    let in_triv: std::collections::BTreeSet<Vec<u64>> = kx_trivial.iter().cloned().collect();
    let mut covered: std::collections::BTreeSet<Vec<u64>> = Default::default();
    let mut reps = Vec::new();
    for tuple in &all_tuples {
        if covered.contains(tuple) {
            continue;
        }
        reps.push(tuple.clone());
        for t in &in_triv {
            let shifted: Vec<u64> =
                tuple.iter().zip(t).zip(&divisors).map(|((&a, &b), &d)| (a + b) % d).collect();
            covered.insert(shifted);
        }
    }
    let expected: u64 = final_divisors.iter().product();
    assert_eq!(reps.len() as u64, expected.max(1), "H² class count mismatch");
    let class_representatives: Vec<Cochain> = reps.iter().map(|t| tuple_cochain(t)).collect();

    H2Report {
        group: l.clone(),
        modulus: m_usize as u64,
        elementary_divisors: final_divisors,
        class_representatives,
    }
}

/// μ(x^{i₁}y^{j₁}, x^{i₂}y^{j₂}) = (−1)^{j₁·i₂} on ℤ₂×ℤ₂ (stored mod 4 so
/// it combines directly with the D₈ 3-cocycle).
pub fn mu_klein() -> Cochain {
    let g = FiniteGroup::klein();
    let dom = Subgroup::whole(g);
    Cochain::from_fn(dom, 2, 4, |t| {
        let (a, b) = (t[0], t[1]);
        let j1 = (a / 2) % 2;
        let i2 = b % 2;
        2 * (j1 * i2) as i64
    })
    .expect("mu_klein")
}

/// A 2-cocycle on D₈ representing the nontrivial class of
/// H²(D₈, 𝕜ˣ) ≅ ℤ₂, normalized (by a coboundary correction) so that its
/// restriction to ⟨x,y⟩ is exactly μ(x^{i₁}y^{j₁}, x^{i₂}y^{j₂}) = (−1)^{j₁i₂}.
/// Its restriction to ⟨xy,z⟩ is likewise cohomologically nontrivial.
pub fn beta_d8() -> Cochain {
    static CACHE: std::sync::OnceLock<Cochain> = std::sync::OnceLock::new();
    CACHE
        .get_or_init(|| {
            let g = FiniteGroup::d8();
            let whole = Subgroup::whole(g.clone());
            let rep = h2_classes(&whole)
                .class_representatives
                .into_iter()
                .find(|c| {
                    kx_coboundary_witness(c).expect("H² rep is a cocycle").is_none()
                })
                .expect("H²(D8) has a nontrivial class");
            // μ transported to <x,y> ≤ D8 (elements 0..=3 carry the same
            // (i, j) coordinates as in Z2 x Z2).
            let l = Subgroup::generated(g, &[1, 2]);
            let mu_l = Cochain::from_fn(l.clone(), 2, 4, |t| {
                2 * (((t[0] / 2) % 2) * (t[1] % 2)) as i64
            })
            .expect("mu on <x,y>");
            let diff = rep.restrict(&l).expect("<x,y> ≤ D8").mul(&mu_l.invert());
            let eta = kx_coboundary_witness(&diff)
                .expect("cocycle")
                .expect("rep restricts to the class of mu on <x,y>")
                .eta
                .reduce_modulus();
            // Extend η by 1 outside <x,y>; restriction of dη~ to <x,y> is dη.
            let m = rep.modulus().lcm(&eta.modulus());
            let eta_ext = Cochain::from_fn(whole, 1, m, |t| {
                if l.contains(t[0]) {
                    (eta.value(&[t[0]]) * (m / eta.modulus())) as i64
                } else {
                    0
                }
            })
            .expect("extension stays normalized");
            rep.mul(&eta_ext.differential().expect("degree 1").invert()).reduce_modulus()
        })
        .clone()
}

/// ω_ℓ(x^i,x^j,x^k) = ζ_n^{ℓ·i·(j+k−⟨j+k⟩ₙ)/n} on ℤₙ.
pub fn omega_cyclic(n: usize, ell: u64) -> Cochain {
    let g = FiniteGroup::cyclic(n);
    let dom = Subgroup::whole(g);
    Cochain::from_fn(dom, 3, n as u64, |t| {
        let (i, j, k) = (t[0] as u64, t[1] as u64, t[2] as u64);
        let carry = (j + k) / n as u64; // (j+k − ⟨j+k⟩ₙ)/n ∈ {0,1}
        (ell * i * carry) as i64
    })
    .expect("omega_cyclic")
}

/// The nontrivial 3-cocycle on D₈ built from σ and τ (values in μ₄,
/// exponents of √−1):
/// ω(x^{i₁}y^{j₁}z^{n₁}, x^{i₂}y^{j₂}z^{n₂}, x^{i₃}y^{j₃}z^{n₃})
///   = σ_{i₁,j₁}(z^{n₂}, z^{n₃}) · τ_{z^{n₃}}(p₁ ◁ z^{n₂}, p₂),
/// where p ◁ z conjugates the Klein part (swapping the x and y exponents)
/// and products are normalized with z-parts on the left (the builtin D₈
/// table). `conjugate` flips to the complex-conjugate convention.
pub fn omega_d8(conjugate: bool) -> Cochain {
    let g = FiniteGroup::d8();
    let dom = Subgroup::whole(g);
    // τ_z(p, p′) exponents of ζ₄ indexed by (i,j) coordinates of p, p′.
    let tau_z = |p: (usize, usize), q: (usize, usize)| -> i64 {
        match (p, q) {
            ((1, 0), (1, 0)) => 1, // τ_z(x,x) = i
            ((0, 1), (0, 1)) => 1, // τ_z(y,y) = i
            ((1, 0), (1, 1)) => 1, // τ_z(x,xy) = i
            ((1, 1), (0, 1)) => 1, // τ_z(xy,y) = i
            ((0, 1), (1, 0)) => 2, // τ_z(y,x) = −1
            ((1, 1), (1, 0)) => 3, // τ_z(xy,x) = −i
            ((0, 1), (1, 1)) => 3, // τ_z(y,xy) = −i
            _ => 0,
        }
    };
    let c = Cochain::from_fn(dom, 3, 4, |t| {
        // Element x^i y^j z^n has index i + 2j + 4n.
        let (i1, j1) = (t[0] % 2, (t[0] / 2) % 2);
        let (i2, j2) = (t[1] % 2, (t[1] / 2) % 2);
        let n2 = (t[1] / 4) % 2;
        let n3 = (t[2] / 4) % 2;
        // σ_{i1,j1}(z^{n2}, z^{n3}): −i exactly when n2 = n3 = 1 and
        // (i1,j1) ∈ {(1,0), (0,1)}.
        let sigma = if n2 == 1 && n3 == 1 && ((i1 == 1 && j1 == 0) || (i1 == 0 && j1 == 1)) {
            3
        } else {
            0
        };
        // τ_{z^{n3}}(p₁ ◁ z^{n2}, p₂): the first argument is the first
        // factor's Klein part conjugated by the second factor's z-part.
        let p1 = if n2 == 1 { (j1, i1) } else { (i1, j1) };
        let tau = if n3 == 1 { tau_z(p1, (i2, j2)) } else { 0 };
        sigma + tau
    })
    .expect("omega_d8");
    if conjugate {
        c.invert()
    } else {
        c
    }
}

/// JSON input schema for cochains.
#[derive(Debug, Deserialize)]
pub struct CochainInput {
    pub group: Vec<usize>,
    pub degree: usize,
    pub modulus: u64,
    /// Entries `[g₁, …, gₙ, exponent]`; omitted tuples default to 0.
    #[serde(default)]
    pub values: Vec<Vec<i64>>,
}

impl CochainInput {
    pub fn build(&self, parent: &Arc<FiniteGroup>) -> Result<Cochain, CochainError> {
        let sub = Subgroup::new(parent.clone(), &self.group)
            .map_err(|e| CochainError::NotASubgroup(e.to_string()))?;
        let mut table = std::collections::HashMap::new();
        for entry in &self.values {
            if entry.len() != self.degree + 1 {
                return Err(CochainError::BadDegree(entry.len().saturating_sub(1)));
            }
            let tuple: Vec<usize> = entry[..self.degree].iter().map(|&v| v as usize).collect();
            table.insert(tuple, entry[self.degree]);
        }
        Cochain::from_fn(sub, self.degree, self.modulus, |t| {
            table.get(t).copied().unwrap_or(0)
        })
    }
}

/// Resolves a builtin cochain by name: `trivial`, `mu_klein`, `beta_d8`,
/// `omega_d8`, `omega_d8_conj`, `omega_cyclic:<n>:<l>`.
pub fn builtin_cochain(name: &str, group: &Arc<FiniteGroup>, degree: usize) -> Result<Cochain, CochainError> {
    match name {
        "trivial" | "1" => Ok(Cochain::trivial(Subgroup::whole(group.clone()), degree)),
        "mu_klein" | "mu" => Ok(mu_klein()),
        "beta_d8" | "beta" => Ok(beta_d8()),
        "omega_d8" | "d8" => Ok(omega_d8(false)),
        "omega_d8_conj" | "d8_conj" => Ok(omega_d8(true)),
        _ => {
            if let Some(rest) = name.strip_prefix("omega_cyclic:") {
                let parts: Vec<&str> = rest.split(':').collect();
                if parts.len() == 2 {
                    let n: usize = parts[0]
                        .parse()
                        .map_err(|_| CochainError::BadParams(rest.to_string()))?;
                    let l: u64 = parts[1]
                        .parse()
                        .map_err(|_| CochainError::BadParams(rest.to_string()))?;
                    return Ok(omega_cyclic(n, l));
                }
                return Err(CochainError::BadParams(rest.to_string()));
            }
            Err(CochainError::UnknownName(name.to_string()))
        }
    }
}
