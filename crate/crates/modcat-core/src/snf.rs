//! Smith normal form over ℤ and the modular linear solving built on it.
//!
//! Used to decide whether a cochain is a coboundary mod m and to enumerate
//! H² as a quotient of integer lattices. ℤ/m is not a field, so all solving
//! goes through SNF with unimodular transforms.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn mat_from_i64(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![BigInt::zero(); c]; r]
}

pub fn eye(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    let mut out = zeros(r, c);
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[t][j].is_zero() {
                    let p = &a[i][t] * &b[t][j];
                    out[i][j] += p;
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Mat, x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum::<BigInt>())
        .collect()
}

/// Smith normal form `U · A · V = D` with `U`, `V` unimodular and `D`
/// diagonal with divisibility `d₁ | d₂ | …`. `uinv` satisfies
/// `uinv · U = I` and lets lattice bases be read off without inversion.
pub struct Snf {
    pub rows: usize,
    pub cols: usize,
    pub u: Mat,
    pub uinv: Mat,
    pub v: Mat,
    pub d: Mat,
    pub rank: usize,
}

impl Snf {
    pub fn diag(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn smith_normal_form(a: &Mat) -> Snf {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = eye(rows);
    let mut uinv = eye(rows);
    let mut v = eye(cols);

    let swap_rows = |d: &mut Mat, u: &mut Mat, uinv: &mut Mat, i: usize, j: usize| {
        d.swap(i, j);
        u.swap(i, j);
        for row in uinv.iter_mut() {
            row.swap(i, j);
        }
    };
    let swap_cols = |d: &mut Mat, v: &mut Mat, i: usize, j: usize| {
        for row in d.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    // row_i -= q * row_j  (and the matching uinv column update col_j += q col_i)
    let add_row = |d: &mut Mat, u: &mut Mat, uinv: &mut Mat, i: usize, j: usize, q: &BigInt| {
        for k in 0..d[0].len() {
            let t = q * &d[j][k];
            d[i][k] -= t;
        }
        for k in 0..u[0].len() {
            let t = q * &u[j][k];
            u[i][k] -= t;
        }
        for row in uinv.iter_mut() {
            let t = q * &row[i];
            row[j] += t;
        }
    };
    let add_col = |d: &mut Mat, v: &mut Mat, i: usize, j: usize, q: &BigInt| {
        for row in d.iter_mut() {
            let t = q * &row[j];
            row[i] -= t;
        }
        for row in v.iter_mut() {
            let t = q * &row[j];
            row[i] -= t;
        }
    };

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Find a pivot of least absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, &mut u, &mut uinv, t, pi);
        swap_cols(&mut d, &mut v, t, pj);

        // Reduce row t and column t until they are clear outside the pivot.
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    add_row(&mut d, &mut u, &mut uinv, i, t, &q);
                    if !d[i][t].is_zero() {
                        swap_rows(&mut d, &mut u, &mut uinv, t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    add_col(&mut d, &mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        swap_cols(&mut d, &mut v, t, j);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if d[t][t].is_negative() {
            for k in 0..cols {
                d[t][k] = -d[t][k].clone();
            }
            for k in 0..rows {
                u[t][k] = -u[t][k].clone();
            }
            for row in uinv.iter_mut() {
                row[t] = -row[t].clone();
            }
        }
        t += 1;
    }
    // Enforce the divisibility chain d₁ | d₂ | …
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..t.saturating_sub(1) {
            let (a, b) = (d[i][i].clone(), d[i + 1][i + 1].clone());
            if b.is_zero() || (&b % &a).is_zero() {
                continue;
            }
            changed = true;
            // Column i += column i+1, then re-clear the 2x2 block.
            for row in d.iter_mut() {
                let t2 = row[i + 1].clone();
                row[i] += t2;
            }
            for row in v.iter_mut() {
                let t2 = row[i + 1].clone();
                row[i] += t2;
            }
            // 2x2 block [[a,0],[b,b]] — run the local euclidean loop.
            loop {
                if d[i + 1][i].is_zero() {
                    break;
                }
                let q = d[i + 1][i].div_floor(&d[i][i]);
                add_row(&mut d, &mut u, &mut uinv, i + 1, i, &q);
                if d[i + 1][i].is_zero() {
                    break;
                }
                swap_rows(&mut d, &mut u, &mut uinv, i, i + 1);
            }
            for j in [i + 1] {
                if !d[i][j].is_zero() {
                    let q = d[i][j].div_floor(&d[i][i]);
                    add_col(&mut d, &mut v, j, i, &q);
                }
            }
            if d[i][i].is_negative() {
                for k in 0..cols {
                    d[i][k] = -d[i][k].clone();
                }
                for k in 0..rows {
                    u[i][k] = -u[i][k].clone();
                }
                for row in uinv.iter_mut() {
                    row[i] = -row[i].clone();
                }
            }
            if d[i + 1][i + 1].is_negative() {
                for k in 0..cols {
                    d[i + 1][k] = -d[i + 1][k].clone();
                }
                for k in 0..rows {
                    u[i + 1][k] = -u[i + 1][k].clone();
                }
                for row in uinv.iter_mut() {
                    row[i + 1] = -row[i + 1].clone();
                }
            }
        }
    }
    let rank = (0..t).take_while(|&i| !d[i][i].is_zero()).count();
    Snf { rows, cols, u, uinv, v, d, rank }
}

/// Solves `A·x ≡ b (mod m)` over ℤ, returning one solution reduced mod m.
pub fn solve_mod(a: &Mat, b: &[BigInt], m: &BigInt) -> Option<Vec<BigInt>> {
    solve_mod_snf(&smith_normal_form(a), b, m)
}

/// [`solve_mod`] against a precomputed factorization of `A`.
pub fn solve_mod_snf(snf: &Snf, b: &[BigInt], m: &BigInt) -> Option<Vec<BigInt>> {
    let ub = mat_vec(&snf.u, b);
    let mut y = vec![BigInt::zero(); snf.cols];
    for i in 0..snf.rows {
        let rhs = ub[i].mod_floor(m);
        if i < snf.rank {
            let di = &snf.d[i][i];
            let g = di.gcd(m);
            if !(&rhs % &g).is_zero() {
                return None;
            }
            // d_i y ≡ rhs (mod m): divide through by g and invert.
            let m2 = m / &g;
            let d2 = (di / &g).mod_floor(&m2);
            let r2 = &rhs / &g;
            let inv = mod_inverse(&d2, &m2)?;
            y[i] = (r2 * inv).mod_floor(&m2);
        } else if !rhs.is_zero() {
            return None;
        }
    }
    let x = mat_vec(&snf.v, &y);
    Some(x.into_iter().map(|c| c.mod_floor(m)).collect())
}

/// Enumerates every solution of `A·x ≡ 0 (mod m)`. The solution set is a
/// finite abelian group; callers are expected to keep it small (the
/// enumeration is asserted to stay under 2^16 elements).
pub fn kernel_mod(a: &Mat, m: &BigInt) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    // In SNF coordinates y = V⁻¹x the system is d_i·y_i ≡ 0 (mod m), so
    // y_i ranges over the multiples of m / gcd(d_i, m).
    let mut steps: Vec<BigInt> = Vec::with_capacity(snf.cols);
    let mut counts: Vec<usize> = Vec::with_capacity(snf.cols);
    let mut total: usize = 1;
    for i in 0..snf.cols {
        let di = if i < snf.rank { snf.d[i][i].clone() } else { BigInt::zero() };
        let g = di.gcd(m);
        let count = usize::try_from(&g).expect("kernel component too large");
        total = total.checked_mul(count).expect("kernel too large");
        assert!(total <= 1 << 16, "kernel too large to enumerate");
        steps.push(m / &g);
        counts.push(count);
    }
    let mut out = Vec::with_capacity(total);
    let mut odometer = vec![0usize; snf.cols];
    loop {
        let y: Vec<BigInt> =
            (0..snf.cols).map(|i| &steps[i] * BigInt::from(odometer[i])).collect();
        let x = mat_vec(&snf.v, &y);
        out.push(x.into_iter().map(|c| c.mod_floor(m)).collect());
        let mut i = 0;
        loop {
            if i == snf.cols {
                return out;
            }
            odometer[i] += 1;
            if odometer[i] < counts[i] {
                break;
            }
            odometer[i] = 0;
            i += 1;
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Basis of the column lattice spanned by `gens` (column-style Hermite
/// normal form; returns a list of basis columns, lower-triangular in the
/// pivot rows).
pub fn column_lattice_basis(gens: &Mat) -> Mat {
    if gens.is_empty() {
        return Vec::new();
    }
    let rows = gens.len();
    let ncols = gens[0].len();
    // Work with columns as vectors.
    let mut cols: Vec<Vec<BigInt>> =
        (0..ncols).map(|j| (0..rows).map(|i| gens[i][j].clone()).collect()).collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pivot_rows: Vec<usize> = Vec::new();
    for r in 0..rows {
        loop {
            // Gather columns with nonzero entry in row r (below prior pivots
            // they are already cleared).
            let mut idxs: Vec<usize> =
                (0..cols.len()).filter(|&j| !cols[j][r].is_zero()).collect();
            if idxs.is_empty() {
                break;
            }
            if idxs.len() == 1 {
                let c = cols.remove(idxs[0]);
                basis.push(c);
                pivot_rows.push(r);
                break;
            }
            // Euclidean step between the two smallest entries in row r.
            idxs.sort_by_key(|&j| cols[j][r].abs());
            let (j0, j1) = (idxs[0], idxs[1]);
            let q = cols[j1][r].div_floor(&cols[j0][r]);
            for i in 0..rows {
                let t = &q * &cols[j0][i];
                cols[j1][i] -= t;
            }
        }
        // Reduce remaining columns against the new pivot in row r.
        if let Some(p) = pivot_rows.iter().position(|&pr| pr == r) {
            let pivot = basis[p].clone();
            for c in cols.iter_mut() {
                if !c[r].is_zero() {
                    let q = c[r].div_floor(&pivot[r]);
                    for i in 0..rows {
                        let t = &q * &pivot[i];
                        c[i] -= t;
                    }
                }
            }
        }
    }
    // Return as a rows × k matrix.
    let k = basis.len();
    let mut out = zeros(rows, k);
    for (j, col) in basis.iter().enumerate() {
        for i in 0..rows {
            out[i][j] = col[i].clone();
        }
    }
    out
}

/// Solves `B · X = N` for integer `X` where the columns of `B` are a
/// lattice basis in Hermite (lower-triangular pivot) form and every column
/// of `N` lies in that lattice. Panics if a column does not.
pub fn express_in_basis(basis: &Mat, n: &Mat) -> Mat {
    let rows = basis.len();
    let k = if rows == 0 { 0 } else { basis[0].len() };
    let ncols = if n.is_empty() { 0 } else { n[0].len() };
    // Pivot row of each basis column: first nonzero entry.
    let pivots: Vec<usize> = (0..k)
        .map(|j| (0..rows).find(|&i| !basis[i][j].is_zero()).expect("zero basis column"))
        .collect();
    let mut x = zeros(k, ncols);
    for c in 0..ncols {
        let mut residue: Vec<BigInt> = (0..rows).map(|i| n[i][c].clone()).collect();
        for j in 0..k {
            let p = pivots[j];
            let (q, r) = residue[p].div_rem(&basis[p][j]);
            assert!(r.is_zero(), "column not in lattice");
            if !q.is_zero() {
                for i in 0..rows {
                    let t = &q * &basis[i][j];
                    residue[i] -= t;
                }
                x[j][c] = q;
            }
        }
        assert!(residue.iter().all(|v| v.is_zero()), "column not in lattice");
    }
    x
}
