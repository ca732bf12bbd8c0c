//! The eight-dimensional Kac–Paljutkin Hopf algebra H₈: an exact model of
//! its Hopf structure, its five irreducible representations, the six
//! built-in indecomposable semisimple module algebras, and the matching of
//! those algebras against the group-theoretical classification of
//! `C(D₈, ω, ⟨z⟩, 1)`.
//!
//! H₈ is presented by generators x, y, z with x² = y² = 1, xy = yx,
//! zx = yz, zy = xz, z² = ½(1 + x + y − xy), where x and y are grouplike,
//! Δ(z) = ½(1⊗1 + y⊗1 + 1⊗x − y⊗x)(z⊗z), ε(z) = 1 and S(z) = z. All
//! structure constants live in ℚ(ζ₈) and every axiom is checked entrywise.

use std::sync::Arc;

use num::{BigInt, BigRational};
use thiserror::Error;

use crate::cyclo::{solve, CMat, Cyc, CycField};
use crate::gt::{classify_algebras, fpdim_squared, AlgebraDatum, GTCategory, GtError};
use crate::oracle::{
    ambient_field, hom_space, regular_bimodule, simple_catalog, tensor_over,
    twisted_group_algebra, OracleError,
};

#[derive(Debug, Error)]
pub enum H8Error {
    #[error("axiom violated: {0}")]
    AxiomViolation(String),
    #[error("classification matching is ambiguous: {0}")]
    AmbiguousMatch(String),
    #[error("expected the category C(D8, omega, <z>, 1): {0}")]
    WrongCategory(String),
    #[error(transparent)]
    Gt(#[from] GtError),
    #[error(transparent)]
    Oracle(Box<OracleError>),
}

impl From<OracleError> for H8Error {
    fn from(e: OracleError) -> H8Error {
        H8Error::Oracle(Box::new(e))
    }
}

/// An element of H₈ as coordinates over the monomial basis
/// {x^a y^b z^c : a, b, c ∈ {0, 1}}, indexed by a + 2b + 4c.
type Elt = Vec<Cyc>;

const DIM: usize = 8;
const X: usize = 1;
const Y: usize = 2;
const Z: usize = 4;

/// The Kac–Paljutkin Hopf algebra with all structure maps as exact data
/// over ℚ(ζ₈): products and coproducts of basis monomials, the counit,
/// and the antipode.
pub struct HopfAlgebraModel {
    field: Arc<CycField>,
    names: Vec<String>,
    /// mult[i][j] = coordinates of eᵢ·eⱼ.
    mult: Vec<Vec<Elt>>,
    /// comult[i] = coordinates of Δ(eᵢ) over e_p ⊗ e_q at index p·8 + q.
    comult: Vec<Vec<Cyc>>,
    counit: Vec<Cyc>,
    /// antipode[i] = coordinates of S(eᵢ).
    antipode: Vec<Elt>,
}

fn unit_elt(f: &CycField, dim: usize, k: usize) -> Elt {
    let mut v = vec![f.zero(); dim];
    v[k] = f.one();
    v
}

/// Builds the model from the presentation. Basis monomials are normal
/// words x^a y^b z^c; products are computed by pushing z past the Klein
/// part (z·x^a y^b = x^b y^a·z) and resolving z² = ½(1 + x + y − xy).
pub fn build_h8() -> HopfAlgebraModel {
    let field = CycField::new(8);
    let f = field.as_ref();
    let half = f.from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
    let idx = |a: usize, b: usize, c: usize| (a % 2) + 2 * (b % 2) + 4 * (c % 2);
    let parts = |j: usize| (j % 2, (j / 2) % 2, (j / 4) % 2);

    // Left multiplication by the generators on a basis monomial.
    let lx = |j: usize| -> Elt {
        let (a, b, c) = parts(j);
        unit_elt(f, DIM, idx(a + 1, b, c))
    };
    let ly = |j: usize| -> Elt {
        let (a, b, c) = parts(j);
        unit_elt(f, DIM, idx(a, b + 1, c))
    };
    let lz = |j: usize| -> Elt {
        let (a, b, c) = parts(j);
        if c == 0 {
            unit_elt(f, DIM, idx(b, a, 1))
        } else {
            // z·x^a y^b z = x^b y^a·½(1 + x + y − xy).
            let mut v = vec![f.zero(); DIM];
            v[idx(b, a, 0)] = half.clone();
            v[idx(b + 1, a, 0)] = half.clone();
            v[idx(b, a + 1, 0)] = half.clone();
            v[idx(b + 1, a + 1, 0)] = f.neg(&half);
            v
        }
    };
    let apply_op = |op: &dyn Fn(usize) -> Elt, v: &Elt| -> Elt {
        let mut out = vec![f.zero(); DIM];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, w) in op(j).iter().enumerate() {
                if !w.is_zero() {
                    out[k] = f.add(&out[k], &f.mul(c, w));
                }
            }
        }
        out
    };

    let mut mult = vec![vec![Vec::new(); DIM]; DIM];
    for i in 0..DIM {
        let (a, b, c) = parts(i);
        for j in 0..DIM {
            // x^a y^b z^c · eⱼ = x^a·(y^b·(z^c·eⱼ)).
            let mut v = unit_elt(f, DIM, j);
            for _ in 0..c {
                v = apply_op(&lz, &v);
            }
            for _ in 0..b {
                v = apply_op(&ly, &v);
            }
            for _ in 0..a {
                v = apply_op(&lx, &v);
            }
            mult[i][j] = v;
        }
    }

    // Products in H⊗H (componentwise tensor of the multiplication).
    let mul64 = |u: &[Cyc], v: &[Cyc]| -> Vec<Cyc> {
        let mut out = vec![f.zero(); DIM * DIM];
        for (pq, cu) in u.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            let (p, q) = (pq / DIM, pq % DIM);
            for (rs, cv) in v.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let (r, s) = (rs / DIM, rs % DIM);
                let c = f.mul(cu, cv);
                for (k1, w1) in mult[p][r].iter().enumerate() {
                    if w1.is_zero() {
                        continue;
                    }
                    for (k2, w2) in mult[q][s].iter().enumerate() {
                        if !w2.is_zero() {
                            let t = f.mul(&c, &f.mul(w1, w2));
                            out[k1 * DIM + k2] = f.add(&out[k1 * DIM + k2], &t);
                        }
                    }
                }
            }
        }
        out
    };

    let tensor_unit = |p: usize, q: usize| -> Vec<Cyc> {
        let mut v = vec![f.zero(); DIM * DIM];
        v[p * DIM + q] = f.one();
        v
    };
    let dx = tensor_unit(X, X);
    let dy = tensor_unit(Y, Y);
    // Δ(z) = ½(1⊗1 + y⊗1 + 1⊗x − y⊗x)·(z⊗z).
    let dz = {
        let mut front = vec![f.zero(); DIM * DIM];
        front[0] = half.clone();
        front[Y * DIM] = half.clone();
        front[X] = half.clone();
        front[Y * DIM + X] = f.neg(&half);
        mul64(&front, &tensor_unit(Z, Z))
    };
    let mut comult = Vec::with_capacity(DIM);
    for i in 0..DIM {
        let (a, b, c) = parts(i);
        let mut v = tensor_unit(0, 0);
        for _ in 0..a {
            v = mul64(&v, &dx);
        }
        for _ in 0..b {
            v = mul64(&v, &dy);
        }
        for _ in 0..c {
            v = mul64(&v, &dz);
        }
        comult.push(v);
    }

    let counit = vec![f.one(); DIM];

    // S is an anti-homomorphism fixing the generators, so
    // S(x^a y^b z^c) = z^c y^b x^a.
    let mul_elt = |u: &Elt, v: &Elt| -> Elt {
        let mut out = vec![f.zero(); DIM];
        for (i, cu) in u.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for (j, cv) in v.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let c = f.mul(cu, cv);
                for (k, w) in mult[i][j].iter().enumerate() {
                    if !w.is_zero() {
                        out[k] = f.add(&out[k], &f.mul(&c, w));
                    }
                }
            }
        }
        out
    };
    let mut antipode = Vec::with_capacity(DIM);
    for i in 0..DIM {
        let (a, b, c) = parts(i);
        let mut v = unit_elt(f, DIM, 0);
        for _ in 0..c {
            v = mul_elt(&v, &unit_elt(f, DIM, Z));
        }
        for _ in 0..b {
            v = mul_elt(&v, &unit_elt(f, DIM, Y));
        }
        for _ in 0..a {
            v = mul_elt(&v, &unit_elt(f, DIM, X));
        }
        antipode.push(v);
    }

    let names = (0..DIM)
        .map(|i| {
            let (a, b, c) = parts(i);
            let mut s = String::new();
            if a == 1 {
                s.push('x');
            }
            if b == 1 {
                s.push('y');
            }
            if c == 1 {
                s.push('z');
            }
            if s.is_empty() {
                s.push('1');
            }
            s
        })
        .collect();

    HopfAlgebraModel { field, names, mult, comult, counit, antipode }
}

impl HopfAlgebraModel {
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        DIM
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn mult(&self, i: usize, j: usize) -> &[Cyc] {
        &self.mult[i][j]
    }

    pub fn comult(&self, i: usize) -> &[Cyc] {
        &self.comult[i]
    }

    pub fn counit(&self, i: usize) -> &Cyc {
        &self.counit[i]
    }

    pub fn antipode(&self, i: usize) -> &[Cyc] {
        &self.antipode[i]
    }

    fn mul_elt(&self, u: &[Cyc], v: &[Cyc]) -> Elt {
        let f = self.field.as_ref();
        let mut out = vec![f.zero(); DIM];
        for (i, cu) in u.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for (j, cv) in v.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let c = f.mul(cu, cv);
                for (k, w) in self.mult[i][j].iter().enumerate() {
                    if !w.is_zero() {
                        out[k] = f.add(&out[k], &f.mul(&c, w));
                    }
                }
            }
        }
        out
    }

    fn mul64(&self, u: &[Cyc], v: &[Cyc]) -> Vec<Cyc> {
        let f = self.field.as_ref();
        let mut out = vec![f.zero(); DIM * DIM];
        for (pq, cu) in u.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            let (p, q) = (pq / DIM, pq % DIM);
            for (rs, cv) in v.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let (r, s) = (rs / DIM, rs % DIM);
                let c = f.mul(cu, cv);
                for (k1, w1) in self.mult[p][r].iter().enumerate() {
                    if w1.is_zero() {
                        continue;
                    }
                    for (k2, w2) in self.mult[q][s].iter().enumerate() {
                        if !w2.is_zero() {
                            let t = f.mul(&c, &f.mul(w1, w2));
                            out[k1 * DIM + k2] = f.add(&out[k1 * DIM + k2], &t);
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks every Hopf axiom entrywise: associativity and unit,
    /// coassociativity and counit, multiplicativity of Δ and ε, the
    /// antipode identities, the presentation relation z² = ½(1+x+y−xy),
    /// and grouplikeness of x and y.
    pub fn verify_hopf_axioms(&self) -> Result<(), H8Error> {
        let f = self.field.as_ref();
        let eq = |a: &[Cyc], b: &[Cyc]| a.iter().zip(b).all(|(u, v)| f.sub(u, v).is_zero());
        let basis = |k: usize| unit_elt(f, DIM, k);

        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let lhs = self.mul_elt(&self.mult[i][j], &basis(k));
                    let rhs = self.mul_elt(&basis(i), &self.mult[j][k]);
                    if !eq(&lhs, &rhs) {
                        return Err(H8Error::AxiomViolation(format!(
                            "associativity fails at ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
            if !eq(&self.mult[0][i], &basis(i)) || !eq(&self.mult[i][0], &basis(i)) {
                return Err(H8Error::AxiomViolation(format!("1 is not a unit at {}", self.names[i])));
            }
        }

        // z² = ½(1 + x + y − xy).
        let half = f.from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        let mut rel = vec![f.zero(); DIM];
        rel[0] = half.clone();
        rel[X] = half.clone();
        rel[Y] = half.clone();
        rel[X + Y] = f.neg(&half);
        if !eq(&self.mult[Z][Z], &rel) {
            return Err(H8Error::AxiomViolation("z^2 relation fails".into()));
        }

        // Grouplike generators.
        for g in [X, Y] {
            let mut gg = vec![f.zero(); DIM * DIM];
            gg[g * DIM + g] = f.one();
            if !eq(&self.comult[g], &gg) {
                return Err(H8Error::AxiomViolation(format!("{} is not grouplike", self.names[g])));
            }
        }

        // Coassociativity: (Δ⊗id)Δ = (id⊗Δ)Δ in H⊗H⊗H.
        for i in 0..DIM {
            let mut lhs = vec![f.zero(); DIM * DIM * DIM];
            let mut rhs = vec![f.zero(); DIM * DIM * DIM];
            for (pq, c) in self.comult[i].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (p, q) = (pq / DIM, pq % DIM);
                for (rs, w) in self.comult[p].iter().enumerate() {
                    if !w.is_zero() {
                        let t = f.mul(c, w);
                        let slot = rs * DIM + q;
                        lhs[slot] = f.add(&lhs[slot], &t);
                    }
                }
                for (rs, w) in self.comult[q].iter().enumerate() {
                    if !w.is_zero() {
                        let t = f.mul(c, w);
                        let slot = p * DIM * DIM + rs;
                        rhs[slot] = f.add(&rhs[slot], &t);
                    }
                }
            }
            if !eq(&lhs, &rhs) {
                return Err(H8Error::AxiomViolation(format!(
                    "coassociativity fails at {}",
                    self.names[i]
                )));
            }
        }

        // Counit: (ε⊗id)Δ = id = (id⊗ε)Δ, and ε is an algebra map.
        for i in 0..DIM {
            let mut left = vec![f.zero(); DIM];
            let mut right = vec![f.zero(); DIM];
            for (pq, c) in self.comult[i].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (p, q) = (pq / DIM, pq % DIM);
                left[q] = f.add(&left[q], &f.mul(c, &self.counit[p]));
                right[p] = f.add(&right[p], &f.mul(c, &self.counit[q]));
            }
            if !eq(&left, &basis(i)) || !eq(&right, &basis(i)) {
                return Err(H8Error::AxiomViolation(format!("counit fails at {}", self.names[i])));
            }
        }
        for i in 0..DIM {
            for j in 0..DIM {
                let mut s = f.zero();
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    s = f.add(&s, &f.mul(c, &self.counit[k]));
                }
                if !f.sub(&s, &f.mul(&self.counit[i], &self.counit[j])).is_zero() {
                    return Err(H8Error::AxiomViolation(format!(
                        "counit is not multiplicative at ({}, {})",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }

        // Δ is an algebra map.
        for i in 0..DIM {
            for j in 0..DIM {
                let mut lhs = vec![f.zero(); DIM * DIM];
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (pq, w) in self.comult[k].iter().enumerate() {
                        if !w.is_zero() {
                            lhs[pq] = f.add(&lhs[pq], &f.mul(c, w));
                        }
                    }
                }
                let rhs = self.mul64(&self.comult[i], &self.comult[j]);
                if !eq(&lhs, &rhs) {
                    return Err(H8Error::AxiomViolation(format!(
                        "comultiplication is not multiplicative at ({}, {})",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }

        // Antipode: m(S⊗id)Δ = uε = m(id⊗S)Δ.
        for i in 0..DIM {
            let mut left = vec![f.zero(); DIM];
            let mut right = vec![f.zero(); DIM];
            for (pq, c) in self.comult[i].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (p, q) = (pq / DIM, pq % DIM);
                let l = self.mul_elt(&self.antipode[p], &unit_elt(f, DIM, q));
                let r = self.mul_elt(&unit_elt(f, DIM, p), &self.antipode[q]);
                for k in 0..DIM {
                    left[k] = f.add(&left[k], &f.mul(c, &l[k]));
                    right[k] = f.add(&right[k], &f.mul(c, &r[k]));
                }
            }
            let mut want = vec![f.zero(); DIM];
            want[0] = self.counit[i].clone();
            if !eq(&left, &want) || !eq(&right, &want) {
                return Err(H8Error::AxiomViolation(format!("antipode fails at {}", self.names[i])));
            }
        }
        Ok(())
    }
}

/// A finite-dimensional H₈-module: the action matrix of every basis
/// monomial, verified multiplicative.
pub struct H8Module {
    pub name: String,
    pub dim: usize,
    /// mats[i] = action of the i-th basis monomial.
    pub mats: Vec<CMat>,
}

/// Extends generator actions to the full basis (ρ(x^a y^b z^c) =
/// ρ(x)^a ρ(y)^b ρ(z)^c) and verifies ρ(eᵢ)ρ(eⱼ) = ρ(eᵢeⱼ) entrywise.
pub fn module_from_generators(
    h: &HopfAlgebraModel,
    name: &str,
    x: &CMat,
    y: &CMat,
    z: &CMat,
) -> Result<H8Module, H8Error> {
    let f = h.field.as_ref();
    let n = x.rows;
    let mut mats = Vec::with_capacity(DIM);
    for i in 0..DIM {
        let (a, b, c) = (i % 2, (i / 2) % 2, (i / 4) % 2);
        let mut m = CMat::eye(f, n);
        for _ in 0..a {
            m = m.mul(f, x);
        }
        for _ in 0..b {
            m = m.mul(f, y);
        }
        for _ in 0..c {
            m = m.mul(f, z);
        }
        mats.push(m);
    }
    for i in 0..DIM {
        for j in 0..DIM {
            let prod = mats[i].mul(f, &mats[j]);
            let mut want = CMat::zeros(f, n, n);
            for (k, c) in h.mult[i][j].iter().enumerate() {
                if !c.is_zero() {
                    want = want.add(f, &mats[k].scale(f, c));
                }
            }
            for p in 0..n * n {
                if !f.sub(&prod.data[p], &want.data[p]).is_zero() {
                    return Err(H8Error::AxiomViolation(format!(
                        "{name}: action is not multiplicative at ({}, {})",
                        h.names[i], h.names[j]
                    )));
                }
            }
        }
    }
    Ok(H8Module { name: name.to_string(), dim: n, mats })
}

/// The five irreducible H₈-modules: W₀ = 𝕜² with x = diag(−1,1),
/// y = diag(1,−1), z the swap; W₁ = 𝕜_{1,1,1}; W₂ = 𝕜_{1,1,−1};
/// W₃ = 𝕜_{−1,−1,i}; W₄ = 𝕜_{−1,−1,−i}.
pub fn irreps(h: &HopfAlgebraModel) -> Result<Vec<H8Module>, H8Error> {
    let f = h.field.as_ref();
    let scalar = |v: Cyc| {
        let mut m = CMat::zeros(f, 1, 1);
        *m.at_mut(0, 0) = v;
        m
    };
    let mut w0x = CMat::eye(f, 2);
    *w0x.at_mut(0, 0) = f.from_i64(-1);
    let mut w0y = CMat::eye(f, 2);
    *w0y.at_mut(1, 1) = f.from_i64(-1);
    let mut w0z = CMat::zeros(f, 2, 2);
    *w0z.at_mut(0, 1) = f.one();
    *w0z.at_mut(1, 0) = f.one();
    let i_unit = f.root(4, 1);
    let specs: Vec<(&str, CMat, CMat, CMat)> = vec![
        ("W0", w0x, w0y, w0z),
        ("W1", scalar(f.one()), scalar(f.one()), scalar(f.one())),
        ("W2", scalar(f.one()), scalar(f.one()), scalar(f.from_i64(-1))),
        ("W3", scalar(f.from_i64(-1)), scalar(f.from_i64(-1)), scalar(i_unit.clone())),
        ("W4", scalar(f.from_i64(-1)), scalar(f.from_i64(-1)), scalar(f.neg(&i_unit))),
    ];
    specs.into_iter().map(|(n, x, y, z)| module_from_generators(h, n, &x, &y, &z)).collect()
}

/// The five central primitive idempotents of H₈ ≅ Mat₂(𝕜) ⊕ 𝕜⁴, one per
/// irreducible, obtained by inverting the joint irrep coordinate map.
fn central_idempotents(h: &HopfAlgebraModel) -> Result<Vec<Elt>, H8Error> {
    let f = h.field.as_ref();
    let ws = irreps(h)?;
    // Rows: the four W₀ matrix entries, then W₁..W₄; columns: basis.
    let mut phi = CMat::zeros(f, DIM, DIM);
    for i in 0..DIM {
        let mut row = 0;
        for w in &ws {
            for p in 0..w.dim {
                for q in 0..w.dim {
                    *phi.at_mut(row, i) = w.mats[i].at(p, q).clone();
                    row += 1;
                }
            }
        }
    }
    let mut out = Vec::with_capacity(ws.len());
    let mut offset = 0;
    for w in &ws {
        let mut b = vec![f.zero(); DIM];
        for p in 0..w.dim {
            b[offset + p * w.dim + p] = f.one();
        }
        offset += w.dim * w.dim;
        let e = solve(f, &phi, &b)
            .ok_or_else(|| H8Error::AxiomViolation("irrep coordinate map is singular".into()))?;
        out.push(e);
    }
    // Sanity: idempotent and summing to 1.
    let mut total = vec![f.zero(); DIM];
    for e in &out {
        let sq = h.mul_elt(e, e);
        for k in 0..DIM {
            if !f.sub(&sq[k], &e[k]).is_zero() {
                return Err(H8Error::AxiomViolation("central idempotent is not idempotent".into()));
            }
            total[k] = f.add(&total[k], &e[k]);
        }
    }
    if !f.sub(&total[0], &f.one()).is_zero() || total[1..].iter().any(|c| !c.is_zero()) {
        return Err(H8Error::AxiomViolation("central idempotents do not sum to 1".into()));
    }
    Ok(out)
}

/// Multiplicities of W₀..W₄ in a module, by the trace of the central
/// idempotent projections (H₈ is semisimple, so characters determine the
/// decomposition).
pub fn decompose_module(h: &HopfAlgebraModel, m: &H8Module) -> Result<[usize; 5], H8Error> {
    let f = h.field.as_ref();
    let idems = central_idempotents(h)?;
    let dims = [2usize, 1, 1, 1, 1];
    let mut out = [0usize; 5];
    let mut total = 0;
    for (j, e) in idems.iter().enumerate() {
        let mut p = CMat::zeros(f, m.dim, m.dim);
        for (i, c) in e.iter().enumerate() {
            if !c.is_zero() {
                p = p.add(f, &m.mats[i].scale(f, c));
            }
        }
        let tr = p.trace(f);
        let r = tr
            .rational_part()
            .filter(|r| r.is_integer())
            .ok_or_else(|| H8Error::AxiomViolation("projection trace is not an integer".into()))?;
        let t: BigInt = r.to_integer();
        let t = usize::try_from(t)
            .map_err(|_| H8Error::AxiomViolation("negative projection trace".into()))?;
        if t % dims[j] != 0 {
            return Err(H8Error::AxiomViolation("trace is not a multiple of the irrep dim".into()));
        }
        out[j] = t / dims[j];
        total += t;
    }
    if total != m.dim {
        return Err(H8Error::AxiomViolation("multiplicities do not exhaust the dimension".into()));
    }
    Ok(out)
}

/// One of the six built-in indecomposable semisimple H₈-module algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
}

impl Tag {
    pub const ALL: [Tag; 6] = [Tag::I, Tag::Ii, Tag::Iii, Tag::Iv, Tag::V, Tag::Vi];

    pub fn name(self) -> &'static str {
        match self {
            Tag::I => "(i)",
            Tag::Ii => "(ii)",
            Tag::Iii => "(iii)",
            Tag::Iv => "(iv)",
            Tag::V => "(v)",
            Tag::Vi => "(vi)",
        }
    }
}

/// A semisimple algebra in Rep(H₈): carrier multiplication table, unit,
/// and the generator action matrices.
#[derive(Debug, Clone)]
pub struct H8ModuleAlgebra {
    pub name: String,
    pub dim: usize,
    /// mult[p][q] = coordinates of the carrier product s_p·s_q.
    pub mult: Vec<Vec<Vec<Cyc>>>,
    pub unit: Vec<Cyc>,
    pub x: CMat,
    pub y: CMat,
    pub z: CMat,
}

impl H8ModuleAlgebra {
    fn mul_vec(&self, f: &CycField, u: &[Cyc], v: &[Cyc]) -> Vec<Cyc> {
        let mut out = vec![f.zero(); self.dim];
        for (p, cu) in u.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for (q, cv) in v.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let c = f.mul(cu, cv);
                for (k, w) in self.mult[p][q].iter().enumerate() {
                    if !w.is_zero() {
                        out[k] = f.add(&out[k], &f.mul(&c, w));
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self, f: &CycField) -> bool {
        (0..self.dim).all(|p| {
            (0..self.dim).all(|q| {
                self.mult[p][q]
                    .iter()
                    .zip(&self.mult[q][p])
                    .all(|(a, b)| f.sub(a, b).is_zero())
            })
        })
    }

    /// The carrier as a bare H₈-module (checks the module axioms).
    pub fn underlying_module(&self, h: &HopfAlgebraModel) -> Result<H8Module, H8Error> {
        module_from_generators(h, &self.name, &self.x, &self.y, &self.z)
    }
}

/// Split commutative carrier 𝕜ⁿ with coordinatewise product.
fn split_carrier(f: &CycField, n: usize) -> (Vec<Vec<Vec<Cyc>>>, Vec<Cyc>) {
    let mut mult = vec![vec![vec![f.zero(); n]; n]; n];
    for p in 0..n {
        mult[p][p][p] = f.one();
    }
    (mult, vec![f.one(); n])
}

fn perm_mat(f: &CycField, images: &[usize]) -> CMat {
    let n = images.len();
    let mut m = CMat::zeros(f, n, n);
    for (j, &i) in images.iter().enumerate() {
        *m.at_mut(i, j) = f.one();
    }
    m
}

/// θ-block [[θ, θ̄], [θ̄, θ]] with θ = (1+i)/2 (or its conjugate).
fn theta_block(f: &CycField, conjugated: bool) -> CMat {
    let half = f.from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
    let i_unit = f.root(4, 1);
    let mut theta = f.mul(&half, &f.add(&f.one(), &i_unit));
    let mut theta_bar = f.mul(&half, &f.sub(&f.one(), &i_unit));
    if conjugated {
        std::mem::swap(&mut theta, &mut theta_bar);
    }
    let mut m = CMat::zeros(f, 2, 2);
    *m.at_mut(0, 0) = theta.clone();
    *m.at_mut(0, 1) = theta_bar.clone();
    *m.at_mut(1, 0) = theta_bar;
    *m.at_mut(1, 1) = theta;
    m
}

fn iii_algebra(h: &HopfAlgebraModel, conjugated: bool) -> H8ModuleAlgebra {
    let f = h.field.as_ref();
    let (mult, unit) = split_carrier(f, 2);
    let swap = perm_mat(f, &[1, 0]);
    H8ModuleAlgebra {
        name: if conjugated { "(iii)-conj".into() } else { "(iii)".into() },
        dim: 2,
        mult,
        unit,
        x: swap.clone(),
        y: swap,
        z: theta_block(f, conjugated),
    }
}

/// The θ ↔ θ̄ variant of algebra (iii): not isomorphic to (iii) as an
/// H₈-module algebra, but Morita equivalent to it.
pub fn conjugate_iii(h: &HopfAlgebraModel) -> H8ModuleAlgebra {
    iii_algebra(h, true)
}

/// The six classified module algebras:
/// (i) 𝕜 trivially; (ii) 𝕜² with z swapping; (iii) 𝕜² with x = y = swap
/// and the θ-block z; (iv) 𝕜⁴; (v) 𝕜⁴ with θ-blocks; (vi) H₈* with
/// (h·f)(t) = f(S(h)t).
pub fn builtin_module_algebra(h: &HopfAlgebraModel, tag: Tag) -> H8ModuleAlgebra {
    let f = h.field.as_ref();
    match tag {
        Tag::I => {
            let (mult, unit) = split_carrier(f, 1);
            let id = CMat::eye(f, 1);
            H8ModuleAlgebra {
                name: "(i)".into(),
                dim: 1,
                mult,
                unit,
                x: id.clone(),
                y: id.clone(),
                z: id,
            }
        }
        Tag::Ii => {
            let (mult, unit) = split_carrier(f, 2);
            H8ModuleAlgebra {
                name: "(ii)".into(),
                dim: 2,
                mult,
                unit,
                x: CMat::eye(f, 2),
                y: CMat::eye(f, 2),
                z: perm_mat(f, &[1, 0]),
            }
        }
        Tag::Iii => iii_algebra(h, false),
        Tag::Iv => {
            let (mult, unit) = split_carrier(f, 4);
            H8ModuleAlgebra {
                name: "(iv)".into(),
                dim: 4,
                mult,
                unit,
                x: perm_mat(f, &[0, 1, 3, 2]),
                y: perm_mat(f, &[1, 0, 2, 3]),
                z: perm_mat(f, &[2, 3, 0, 1]),
            }
        }
        Tag::V => {
            let (mult, unit) = split_carrier(f, 4);
            let xy = perm_mat(f, &[1, 0, 3, 2]);
            // z·(a,b,c,d) = (cθ+dθ̄, dθ+cθ̄, aθ+bθ̄, bθ+aθ̄): two θ-blocks
            // off the diagonal.
            let th = theta_block(f, false);
            let mut z = CMat::zeros(f, 4, 4);
            for p in 0..2 {
                for q in 0..2 {
                    *z.at_mut(p, 2 + q) = th.at(p, q).clone();
                    *z.at_mut(2 + p, q) = th.at(p, q).clone();
                }
            }
            H8ModuleAlgebra { name: "(v)".into(), dim: 4, mult, unit, x: xy.clone(), y: xy, z }
        }
        Tag::Vi => {
            // H₈* in the dual basis with the action (h·f)(t) = f(S(h)t).
            // That action is compatible with the convolution product
            // (f·g)(t) = f(t₍₂₎)g(t₍₁₎) (the coproduct legs land on f and g
            // through the antipode, which reverses them), so the product
            // reads the coproduct coefficients transposed.
            let mut mult = vec![vec![vec![f.zero(); DIM]; DIM]; DIM];
            for k in 0..DIM {
                for (pq, c) in h.comult[k].iter().enumerate() {
                    if !c.is_zero() {
                        mult[pq % DIM][pq / DIM][k] = c.clone();
                    }
                }
            }
            let unit = h.counit.clone();
            let act = |g: usize| -> CMat {
                let mut m = CMat::zeros(f, DIM, DIM);
                for k in 0..DIM {
                    let v = h.mul_elt(&h.antipode[g], &unit_elt(f, DIM, k));
                    for (j, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            *m.at_mut(k, j) = c.clone();
                        }
                    }
                }
                m
            };
            H8ModuleAlgebra {
                name: "(vi)".into(),
                dim: DIM,
                mult,
                unit,
                x: act(X),
                y: act(Y),
                z: act(Z),
            }
        }
    }
}

/// Verifies the carrier algebra axioms, the H₈-module axioms, the unit
/// law h·1 = ε(h)1, and the module-algebra law h·(ab) = Σ(h₍₁₎·a)(h₍₂₎·b).
///
/// The law is checked for the generators x, y, z only: ρ is verified
/// multiplicative and Δ multiplicative (Hopf axioms), so the law extends
/// from generators to all of H₈.
pub fn verify_module_algebra(h: &HopfAlgebraModel, s: &H8ModuleAlgebra) -> Result<(), H8Error> {
    let f = h.field.as_ref();
    let n = s.dim;
    let eq = |a: &[Cyc], b: &[Cyc]| a.iter().zip(b).all(|(u, v)| f.sub(u, v).is_zero());
    let basis = |k: usize| unit_elt(f, n, k);

    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let lhs = s.mul_vec(f, &s.mult[p][q], &basis(r));
                let rhs = s.mul_vec(f, &basis(p), &s.mult[q][r]);
                if !eq(&lhs, &rhs) {
                    return Err(H8Error::AxiomViolation(format!(
                        "{}: carrier associativity fails at ({p}, {q}, {r})",
                        s.name
                    )));
                }
            }
        }
        if !eq(&s.mul_vec(f, &s.unit, &basis(p)), &basis(p))
            || !eq(&s.mul_vec(f, &basis(p), &s.unit), &basis(p))
        {
            return Err(H8Error::AxiomViolation(format!("{}: carrier unit fails at {p}", s.name)));
        }
    }

    let module = s.underlying_module(h)?;
    let apply = |m: &CMat, v: &[Cyc]| -> Vec<Cyc> {
        let mut out = vec![f.zero(); n];
        for j in 0..n {
            if v[j].is_zero() {
                continue;
            }
            for i in 0..n {
                let c = m.at(i, j);
                if !c.is_zero() {
                    out[i] = f.add(&out[i], &f.mul(c, &v[j]));
                }
            }
        }
        out
    };
    let col = |m: &CMat, j: usize| -> Vec<Cyc> { (0..n).map(|i| m.at(i, j).clone()).collect() };

    for i in 0..DIM {
        let hv = apply(&module.mats[i], &s.unit);
        let want: Vec<Cyc> = s.unit.iter().map(|c| f.mul(c, &h.counit[i])).collect();
        if !eq(&hv, &want) {
            return Err(H8Error::AxiomViolation(format!(
                "{}: unit law fails at {}",
                s.name, h.names[i]
            )));
        }
    }

    for g in [X, Y, Z] {
        for p in 0..n {
            for q in 0..n {
                let lhs = apply(&module.mats[g], &s.mult[p][q]);
                let mut rhs = vec![f.zero(); n];
                for (uv, c) in h.comult[g].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (u, v) = (uv / DIM, uv % DIM);
                    let t = s.mul_vec(f, &col(&module.mats[u], p), &col(&module.mats[v], q));
                    for k in 0..n {
                        rhs[k] = f.add(&rhs[k], &f.mul(c, &t[k]));
                    }
                }
                if !eq(&lhs, &rhs) {
                    return Err(H8Error::AxiomViolation(format!(
                        "{}: module-algebra law fails at h = {}, pair ({p}, {q})",
                        s.name, h.names[g]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Morita separators for the classification: carrier dimensions for all
/// six tags, plus the number of indecomposable algebra summands after
/// restricting to the Hopf subalgebra ⟨x⟩ for the equal-dimension pairs
/// (ii)/(iii) and (iv)/(v).
pub struct MoritaReport {
    pub dims: [usize; 6],
    pub x_summands: Vec<(Tag, usize)>,
}

/// Indecomposable algebra summands of a split carrier under the x-action:
/// orbits of the permutation that x induces on the primitive idempotents.
fn x_summand_count(f: &CycField, s: &H8ModuleAlgebra) -> Result<usize, H8Error> {
    let n = s.dim;
    for p in 0..n {
        for q in 0..n {
            for k in 0..n {
                let want = if p == q && k == p { f.one() } else { f.zero() };
                if !f.sub(&s.mult[p][q][k], &want).is_zero() {
                    return Err(H8Error::AmbiguousMatch(format!(
                        "{}: carrier is not split coordinatewise",
                        s.name
                    )));
                }
            }
        }
    }
    let mut perm = vec![0usize; n];
    for j in 0..n {
        let mut image = None;
        for i in 0..n {
            let c = s.x.at(i, j);
            if !c.is_zero() {
                if image.is_some() || !f.sub(c, &f.one()).is_zero() {
                    return Err(H8Error::AmbiguousMatch(format!(
                        "{}: x does not permute the primitive idempotents",
                        s.name
                    )));
                }
                image = Some(i);
            }
        }
        perm[j] = image
            .ok_or_else(|| H8Error::AmbiguousMatch(format!("{}: singular x-action", s.name)))?;
    }
    let mut seen = vec![false; n];
    let mut orbits = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur];
        }
    }
    Ok(orbits)
}

pub fn morita_separators(h: &HopfAlgebraModel) -> Result<MoritaReport, H8Error> {
    let f = h.field.as_ref();
    let mut dims = [0usize; 6];
    for (k, tag) in Tag::ALL.iter().enumerate() {
        dims[k] = builtin_module_algebra(h, *tag).dim;
    }
    let mut x_summands = Vec::new();
    for tag in [Tag::Ii, Tag::Iii, Tag::Iv, Tag::V] {
        let s = builtin_module_algebra(h, tag);
        x_summands.push((tag, x_summand_count(f, &s)?));
    }
    // The counts must separate the equal-dimension pairs.
    if x_summands[0].1 == x_summands[1].1 || x_summands[2].1 == x_summands[3].1 {
        return Err(H8Error::AmbiguousMatch(
            "x-restriction does not separate the equal-dimension pairs".into(),
        ));
    }
    Ok(MoritaReport { dims, x_summands })
}

/// One matched pair: a classified algebra datum of the category, the
/// built-in H₈-module algebra it realizes, and both multiplicity vectors
/// over W₀..W₄ (the category side transported along Xᵢ ↔ Wᵢ).
pub struct MatchedPair {
    pub algebra: AlgebraDatum,
    pub tag: Tag,
    pub category_multiplicities: [usize; 5],
    pub hopf_multiplicities: [usize; 5],
}

/// The full matching report, including which simple objects of the
/// category were identified with W₃ and W₄ (this choice depends on the
/// sign convention of ω, so it is reported rather than asserted).
pub struct MatchReport {
    pub pairs: Vec<MatchedPair>,
    pub unit_catalog_index: usize,
    pub w3_catalog_index: usize,
    pub w4_catalog_index: usize,
}

/// Matches the classified algebras of C(D₈, ω, ⟨z⟩, 1) with the built-in
/// H₈-module algebras (i)–(vi) by comparing, for each module category
/// M^{K,1}(L,ψ) with canonical simple M, the multiplicities
/// m_X(M) = dim Hom(X ⊗ M, M) against the W-decompositions of (i)–(vi).
pub fn match_classification(
    h: &HopfAlgebraModel,
    c: &GTCategory,
) -> Result<MatchReport, H8Error> {
    if c.group().order() != 8 || c.k().order() != 2 {
        return Err(H8Error::WrongCategory(format!(
            "|G| = {}, |K| = {}",
            c.group().order(),
            c.k().order()
        )));
    }
    let algebras = classify_algebras(c)?;
    if algebras.len() != 6 {
        return Err(H8Error::WrongCategory(format!(
            "{} module-category classes instead of 6",
            algebras.len()
        )));
    }
    let psis: Vec<&crate::cochain::Cochain> = std::iter::once(c.alpha())
        .chain(algebras.iter().map(|d| d.modcat.psi()))
        .collect();
    let field = ambient_field(c.omega(), &psis);
    let a_k = twisted_group_algebra(c.k(), c.alpha(), c.omega(), &field)?;
    let cat = simple_catalog(&a_k, &a_k)?;
    if cat.rank() != 5 {
        return Err(H8Error::WrongCategory(format!("category rank {} instead of 5", cat.rank())));
    }

    // Identify the catalog positions: the unit (the summand of the
    // regular bimodule), its companion on the identity double coset, the
    // two-dimensional simple (the size-4 double coset), and the remaining
    // conjugate pair.
    let reg = regular_bimodule(&a_k);
    let identity = 0usize;
    let mut unit_idx = None;
    for (i, s) in cat.simples.iter().enumerate() {
        if cat.labels[i].support.contains(&identity) && hom_space(s, &reg)?.dim >= 1 {
            if unit_idx.is_some() {
                return Err(H8Error::AmbiguousMatch("unit object is not unique".into()));
            }
            unit_idx = Some(i);
        }
    }
    let unit_idx = unit_idx.ok_or_else(|| H8Error::AmbiguousMatch("no unit object".into()))?;
    let e2_idx = (0..5)
        .find(|&i| i != unit_idx && cat.labels[i].support.contains(&identity))
        .ok_or_else(|| H8Error::AmbiguousMatch("missing identity-coset companion".into()))?;
    let x0_idx = (0..5)
        .find(|&i| cat.labels[i].support.len() == 4)
        .ok_or_else(|| H8Error::AmbiguousMatch("missing two-dimensional simple".into()))?;
    let pair: Vec<usize> =
        (0..5).filter(|&i| i != unit_idx && i != e2_idx && i != x0_idx).collect();
    let [c3a, c3b] = pair[..] else {
        return Err(H8Error::AmbiguousMatch("unexpected catalog layout".into()));
    };

    // Category-side multiplicity vectors m_X(M) over the raw catalog.
    let mut raw: Vec<Vec<usize>> = Vec::with_capacity(6);
    for d in &algebras {
        let a_l =
            twisted_group_algebra(d.modcat.subgroup(), d.modcat.psi(), c.omega(), &field)?;
        let kl = simple_catalog(&a_k, &a_l)?;
        let m_pos = (0..kl.rank())
            .find(|&i| kl.labels[i].coset_rep == identity && kl.labels[i].rho_index == 0)
            .ok_or_else(|| H8Error::AmbiguousMatch("no canonical simple M(KeL, triv)".into()))?;
        let m = &kl.simples[m_pos];
        let mut v = Vec::with_capacity(5);
        for xs in &cat.simples {
            let t = tensor_over(xs, m)?;
            v.push(hom_space(&t, m)?.dim);
        }
        raw.push(v);
    }

    // Hopf-side decompositions of (i)–(vi).
    let mut hopf: Vec<[usize; 5]> = Vec::with_capacity(6);
    for tag in Tag::ALL {
        let s = builtin_module_algebra(h, tag);
        verify_module_algebra(h, &s)?;
        hopf.push(decompose_module(h, &s.underlying_module(h)?)?);
    }

    // Try both W₃/W₄ conventions; exactly one must produce a bijection.
    let mut winner: Option<(usize, usize, Vec<usize>)> = None;
    for (w3, w4) in [(c3a, c3b), (c3b, c3a)] {
        let mut assignment = Vec::with_capacity(6);
        let mut used = [false; 6];
        let mut ok = true;
        for v in &raw {
            let w_vec = [v[x0_idx], v[unit_idx], v[e2_idx], v[w3], v[w4]];
            match hopf.iter().position(|hv| *hv == w_vec) {
                Some(t) if !used[t] => {
                    used[t] = true;
                    assignment.push(t);
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            if winner.is_some() {
                return Err(H8Error::AmbiguousMatch(
                    "both W3/W4 conventions produce a matching".into(),
                ));
            }
            winner = Some((w3, w4, assignment));
        }
    }
    let (w3_idx, w4_idx, assignment) = winner.ok_or_else(|| {
        H8Error::AmbiguousMatch("no W3/W4 convention matches all six algebras".into())
    })?;

    let mut pairs = Vec::with_capacity(6);
    for ((d, v), &t) in algebras.into_iter().zip(&raw).zip(&assignment) {
        let tag = Tag::ALL[t];
        let dim_s = builtin_module_algebra(h, tag).dim;
        if fpdim_squared(c, &d)? != BigRational::from_integer(BigInt::from(dim_s)) {
            return Err(H8Error::AmbiguousMatch(format!(
                "squared FP-dimension of {} disagrees with dim {}",
                d.modcat.label(),
                tag.name()
            )));
        }
        pairs.push(MatchedPair {
            algebra: d,
            tag,
            category_multiplicities: [v[x0_idx], v[unit_idx], v[e2_idx], v[w3_idx], v[w4_idx]],
            hopf_multiplicities: hopf[t],
        });
    }
    Ok(MatchReport { pairs, unit_catalog_index: unit_idx, w3_catalog_index: w3_idx, w4_catalog_index: w4_idx })
}
