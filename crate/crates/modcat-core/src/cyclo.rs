//! Exact arithmetic in cyclotomic fields ℚ(ζ_n) and the dense linear
//! algebra used by the concrete oracle.
//!
//! A number is a rational combination of ζ_n^0 … ζ_n^{φ(n)−1}, kept reduced
//! against the n-th cyclotomic polynomial, so equality is coefficient
//! equality and all decisions are exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use std::sync::Arc;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Integer polynomial utilities for computing cyclotomic polynomials.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // num / den, exact division, both with nonzero leading coefficient.
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let dn = rem.len() - 1;
    assert!(dn >= dd);
    let mut q = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone() / den[dd].clone();
        q[i] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[i + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    q
}

fn cyclotomic_poly(n: usize) -> Vec<BigInt> {
    // Φ_n = (x^n − 1) / ∏_{d | n, d < n} Φ_d
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = BigInt::from(-1);
    num[n] = BigInt::one();
    let mut q = num;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            q = poly_div_exact(&q, &phi_d);
        }
    }
    q
}

/// The field ℚ(ζ_n), with the reduction table for all powers ζ^0 … ζ^{n−1}.
pub struct CycField {
    n: usize,
    deg: usize,
    /// powers[k] = coordinates of ζ^k in the basis ζ^0 … ζ^{deg−1}.
    powers: Vec<Vec<BigRational>>,
    /// Φ_n as a rational polynomial (monic), used for inversion.
    phi: Vec<BigRational>,
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycField(ζ_{})", self.n)
    }
}

impl CycField {
    pub fn new(n: usize) -> Arc<CycField> {
        assert!(n >= 1);
        let phi_int = cyclotomic_poly(n);
        let deg = phi_int.len() - 1;
        let phi: Vec<BigRational> =
            phi_int.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        // x^deg = −(lower part of Φ).
        let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        for k in 0..n {
            if k < deg {
                let mut v = vec![BigRational::zero(); deg];
                v[k] = BigRational::one();
                powers.push(v);
            } else {
                // ζ^k = ζ^{k−1} · ζ, reduced.
                let prev = powers[k - 1].clone();
                let mut v = vec![BigRational::zero(); deg];
                // Multiply by x: shift, then reduce the overflow coefficient.
                let overflow = prev[deg - 1].clone();
                for i in (1..deg).rev() {
                    v[i] = prev[i - 1].clone();
                }
                v[0] = BigRational::zero();
                if !overflow.is_zero() {
                    for i in 0..deg {
                        let t = &overflow * &phi[i];
                        v[i] -= t;
                    }
                }
                powers.push(v);
            }
        }
        Arc::new(CycField { n, deg, powers, phi })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn zero(&self) -> Cyc {
        Cyc { coeffs: vec![BigRational::zero(); self.deg] }
    }

    pub fn one(&self) -> Cyc {
        self.zeta_pow(0)
    }

    pub fn from_rational(&self, r: BigRational) -> Cyc {
        let mut c = self.zero();
        c.coeffs[0] = r;
        c
    }

    pub fn from_i64(&self, v: i64) -> Cyc {
        self.from_rational(rat(v))
    }

    /// ζ_n^k (k taken mod n).
    pub fn zeta_pow(&self, k: i64) -> Cyc {
        let k = k.rem_euclid(self.n as i64) as usize;
        Cyc { coeffs: self.powers[k].clone() }
    }

    /// A root of unity of order dividing `m`, given as exponent `e` of ζ_m;
    /// requires m | n.
    pub fn root(&self, m: usize, e: i64) -> Cyc {
        assert!(self.n % m == 0, "μ_{m} does not embed in ℚ(ζ_{})", self.n);
        self.zeta_pow(e * (self.n / m) as i64)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut out = vec![BigRational::zero(); self.deg];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                let k = (i + j) % self.n;
                for (t, c) in self.powers[k].iter().enumerate() {
                    if !c.is_zero() {
                        out[t] += &p * c;
                    }
                }
            }
        }
        Cyc { coeffs: out }
    }

    pub fn inv(&self, a: &Cyc) -> Option<Cyc> {
        if a.is_zero() {
            return None;
        }
        // Extended euclid over ℚ[x] between a (as polynomial) and Φ_n.
        let mut r0: Vec<BigRational> = self.phi.clone();
        let mut r1: Vec<BigRational> = a.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd (a nonzero constant since Φ_n is irreducible).
        assert!(r0.len() == 1, "inverse: gcd not constant");
        let c = r0[0].clone();
        let mut coeffs = vec![BigRational::zero(); self.deg];
        for (i, v) in s0.iter().enumerate() {
            // s0 may formally have degree ≥ deg only if a had; it does not.
            coeffs[i] = v / &c;
        }
        Some(Cyc { coeffs })
    }

    pub fn div(&self, a: &Cyc, b: &Cyc) -> Cyc {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    /// Embeds an element of ℚ(ζ_m) into this field (m | n).
    pub fn embed(&self, from: &CycField, a: &Cyc) -> Cyc {
        assert!(self.n % from.n == 0);
        let step = (self.n / from.n) as i64;
        let mut out = self.zero();
        for (k, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let z = self.zeta_pow(k as i64 * step);
                let term = Cyc { coeffs: z.coeffs.iter().map(|t| t * c).collect() };
                out = self.add(&out, &term);
            }
        }
        out
    }

    /// If `a` is a root of unity in μ_n, returns its exponent.
    pub fn as_root_of_unity(&self, a: &Cyc) -> Option<usize> {
        (0..self.n).find(|&k| self.powers[k] == a.coeffs)
    }

    pub fn format(&self, a: &Cyc) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let base = if k == 0 {
                format!("{c}")
            } else if c.is_one() {
                format!("z{}^{k}", self.n)
            } else {
                format!("{c}*z{}^{k}", self.n)
            };
            parts.push(base);
        }
        parts.join(" + ")
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let da = rem.len() - 1;
        let c = &rem[da] / &b[db];
        q[da - db] = c.clone();
        for j in 0..=db {
            let t = &c * &b[j];
            rem[da - db + j] -= t;
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    trim(&mut q);
    (q, rem)
}

/// An element of a cyclotomic field; the owning [`CycField`] provides all
/// arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyc {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl Cyc {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn rational_part(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

/// Dense matrices over a cyclotomic field.
#[derive(Clone, Debug)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Cyc>,
}

impl CMat {
    pub fn zeros(f: &CycField, rows: usize, cols: usize) -> CMat {
        CMat { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn eye(f: &CycField, n: usize) -> CMat {
        let mut m = CMat::zeros(f, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = f.one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Cyc {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Cyc {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, f: &CycField, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows);
        let mut out = CMat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let p = f.mul(a, b);
                        let cur = out.at(i, j).clone();
                        *out.at_mut(i, j) = f.add(&cur, &p);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &CycField, other: &CMat) -> CMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: &CycField, s: &Cyc) -> CMat {
        let data = self.data.iter().map(|a| f.mul(a, s)).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn trace(&self, f: &CycField) -> Cyc {
        assert_eq!(self.rows, self.cols);
        let mut t = f.zero();
        for i in 0..self.rows {
            t = f.add(&t, self.at(i, i));
        }
        t
    }
}

/// Row-reduces `m` in place; returns the pivot column of each pivot row.
pub fn rref(f: &CycField, m: &mut CMat) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row >= m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
            continue;
        };
        // Swap rows p, row.
        if p != row {
            for j in 0..m.cols {
                let a = m.at(p, j).clone();
                let b = m.at(row, j).clone();
                *m.at_mut(p, j) = b;
                *m.at_mut(row, j) = a;
            }
        }
        let inv = f.inv(m.at(row, col)).expect("pivot nonzero");
        for j in col..m.cols {
            let v = f.mul(m.at(row, j), &inv);
            *m.at_mut(row, j) = v;
        }
        for i in 0..m.rows {
            if i != row && !m.at(i, col).is_zero() {
                let factor = m.at(i, col).clone();
                for j in col..m.cols {
                    let t = f.mul(&factor, m.at(row, j));
                    let v = f.sub(m.at(i, j), &t);
                    *m.at_mut(i, j) = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the null space of `m` (as column vectors).
pub fn kernel_basis(f: &CycField, m: &CMat) -> Vec<Vec<Cyc>> {
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (prow, &pcol) in pivots.iter().enumerate() {
            v[pcol] = f.neg(r.at(prow, free));
        }
        basis.push(v);
    }
    basis
}

/// Rank of a matrix.
pub fn rank(f: &CycField, m: &CMat) -> usize {
    let mut r = m.clone();
    rref(f, &mut r).len()
}

/// An incrementally maintained row space in reduced row-echelon form.
///
/// Rows are inserted one at a time and reduced against the current basis,
/// so sparse, highly redundant equation systems (intertwiner equations,
/// tensor-product relations) stay cheap: redundant rows reduce to zero
/// quickly and the basis never exceeds the column count.
pub struct RowSpace {
    field: Arc<CycField>,
    cols: usize,
    /// Pivot column of each basis row, strictly increasing.
    pivots: Vec<usize>,
    /// Basis rows; rows[i] is normalized with pivot at pivots[i] and zero
    /// in every other pivot column.
    rows: Vec<Vec<Cyc>>,
}

impl RowSpace {
    pub fn new(field: Arc<CycField>, cols: usize) -> RowSpace {
        RowSpace { field, cols, pivots: Vec::new(), rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` against the basis in place (one pass suffices because
    /// basis rows are zero in each other's pivot columns).
    pub fn reduce(&self, v: &mut [Cyc]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    let t = f.mul(&c, r);
                    v[j] = f.sub(&v[j], &t);
                }
            }
        }
    }

    /// Inserts a row; returns true when it enlarged the row space.
    pub fn insert(&mut self, mut v: Vec<Cyc>) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(&v[p]).expect("pivot nonzero");
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = f.mul(c, &inv);
            }
        }
        // Clear the new pivot column from existing basis rows.
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (j, r) in v.iter().enumerate() {
                    if !r.is_zero() {
                        let t = f.mul(&c, r);
                        row[j] = f.sub(&row[j], &t);
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Columns without a pivot, i.e. a basis of the quotient by the row
    /// space (as coordinates).
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in the quotient basis given by the
    /// free columns.
    pub fn quotient_coords(&self, v: &[Cyc]) -> Vec<Cyc> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.free_columns().into_iter().map(|c| w[c].clone()).collect()
    }

    /// Basis of the null space of the row span seen as a linear system.
    pub fn kernel_basis(&self) -> Vec<Vec<Cyc>> {
        let f = &self.field;
        let mut basis = Vec::new();
        for free in self.free_columns() {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = f.neg(&row[free]);
            }
            basis.push(v);
        }
        basis
    }
}

/// Solves `m · x = b`; returns one solution if consistent.
pub fn solve(f: &CycField, m: &CMat, b: &[Cyc]) -> Option<Vec<Cyc>> {
    let mut aug = CMat::zeros(f, m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            *aug.at_mut(i, j) = m.at(i, j).clone();
        }
        *aug.at_mut(i, m.cols) = b[i].clone();
    }
    let pivots = rref(f, &mut aug);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![f.zero(); m.cols];
    for (prow, &pcol) in pivots.iter().enumerate() {
        x[pcol] = aug.at(prow, m.cols).clone();
    }
    Some(x)
}
