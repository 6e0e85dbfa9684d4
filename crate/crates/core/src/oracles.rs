//! Slow reference computations used to cross-check the engine.
//!
//! Everything here is dense, works on `BigRational` directly, and builds its
//! own matrices from the definitions with its own index encoding
//! (little-endian digit tuples). Nothing is shared with the sparse engine
//! except the algebra's structure constants.

#![allow(clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::FinAlgebra;
use crate::error::{Error, Result};
use crate::triple::Triple;

/// Dense spaces beyond this size are refused.
pub const ORACLE_MAX_DIM: usize = 5000;

type Q = BigRational;
type Dense = Vec<Vec<Q>>;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn check_size(d: usize) -> Result<()> {
    if d > ORACLE_MAX_DIM {
        return Err(Error::TooLarge {
            degree: 0,
            limit: ORACLE_MAX_DIM,
        });
    }
    Ok(())
}

/// Rank by plain Gaussian elimination on a copy.
pub fn dense_rank(m: &[Vec<Q>]) -> usize {
    let mut m: Dense = m.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Basis of the nullspace of `m` (`cols`-long vectors).
pub fn dense_nullspace(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m: Dense = m.to_vec();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![Q::zero(); c]; r]
}

fn transpose(m: &[Vec<Q>], cols: usize) -> Dense {
    let mut t = zeros(cols, m.len());
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            t[j][i] = x.clone();
        }
    }
    t
}

fn matmul(a: &[Vec<Q>], b: &[Vec<Q>], inner: usize, cols: usize) -> Dense {
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            if row[k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &row[k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Product table of an algebra as dense `BigRational` vectors.
struct Table {
    d: usize,
    prod: Vec<Vec<Q>>,
}

impl Table {
    fn new(a: &FinAlgebra) -> Self {
        let d = a.dim();
        let mut prod = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                prod.push(
                    (0..d)
                        .map(|k| a.structure_constant(i, j, k).to_big())
                        .collect(),
                );
            }
        }
        Table { d, prod }
    }

    fn basis_mul(&self, i: usize, j: usize) -> &[Q] {
        &self.prod[i * self.d + j]
    }

    fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.d];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (k, p) in self.basis_mul(i, j).iter().enumerate() {
                    if !p.is_zero() {
                        out[k] = &out[k] + &c * p;
                    }
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.d];
        v[i] = Q::one();
        v
    }

    fn is_commutative(&self) -> bool {
        (0..self.d).all(|i| (0..self.d).all(|j| self.basis_mul(i, j) == self.basis_mul(j, i)))
    }
}

/// Little-endian digits of `x` in base `d`, `len` of them.
fn digits(mut x: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x % d);
        x /= d;
    }
    out
}

fn undigits(ds: &[usize], d: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &x| acc * d + x)
}

/// Adds `coeff · (v_0 ⊗ … ⊗ v_k)` into the dense column `col`.
fn add_tensor(col: &mut [Q], factors: &[Vec<Q>], d: usize, coeff: &Q) {
    let len = factors.len();
    let total = d.pow(len as u32);
    for x in 0..total {
        let ds = digits(x, d, len);
        let mut c = coeff.clone();
        for (f, &k) in factors.iter().zip(&ds) {
            if f[k].is_zero() {
                c = Q::zero();
                break;
            }
            c = &c * &f[k];
        }
        if !c.is_zero() {
            col[x] = &col[x] + c;
        }
    }
}

/// Classical Hochschild boundary `b_n: A^{⊗n+1} → A^{⊗n}` as a dense
/// `rows × cols` matrix.
fn classical_boundary(t: &Table, n: usize) -> Dense {
    let d = t.d;
    let cols = d.pow(n as u32 + 1);
    let rows = if n == 0 { 0 } else { d.pow(n as u32) };
    let mut m = zeros(rows, cols);
    if n == 0 {
        return m;
    }
    for x in 0..cols {
        let a = digits(x, d, n + 1);
        let mut col = vec![Q::zero(); rows];
        for i in 0..n {
            let mut factors: Vec<Vec<Q>> = Vec::with_capacity(n);
            for (v, &av) in a.iter().enumerate() {
                if v == i {
                    factors.push(t.basis_mul(av, a[i + 1]).to_vec());
                } else if v != i + 1 {
                    factors.push(t.basis(av));
                }
            }
            let sign = if i % 2 == 0 { q(1) } else { q(-1) };
            add_tensor(&mut col, &factors, d, &sign);
        }
        let mut factors = vec![t.basis_mul(a[n], a[0]).to_vec()];
        factors.extend(a[1..n].iter().map(|&av| t.basis(av)));
        let sign = if n.is_multiple_of(2) { q(1) } else { q(-1) };
        add_tensor(&mut col, &factors, d, &sign);
        for (r, v) in col.into_iter().enumerate() {
            m[r][x] = v;
        }
    }
    m
}

/// Classical cyclic operator `t(a_0⊗…⊗a_n) = (−1)^n a_n⊗a_0⊗…⊗a_{n−1}`.
fn classical_cyclic(d: usize, n: usize) -> Dense {
    let dim = d.pow(n as u32 + 1);
    let mut m = zeros(dim, dim);
    let sign = if n.is_multiple_of(2) { q(1) } else { q(-1) };
    for x in 0..dim {
        let a = digits(x, d, n + 1);
        let mut rot = vec![a[n]];
        rot.extend_from_slice(&a[..n]);
        m[undigits(&rot, d)][x] = sign.clone();
    }
    m
}

/// `N = 1 + t + … + t^n`.
fn classical_norm(d: usize, n: usize) -> Dense {
    let t = classical_cyclic(d, n);
    let dim = t.len();
    let mut power = zeros(dim, dim);
    for (i, row) in power.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    let mut sum = power.clone();
    for _ in 0..n {
        power = matmul(&t, &power, dim, dim);
        for (srow, prow) in sum.iter_mut().zip(&power) {
            for (s, p) in srow.iter_mut().zip(prow) {
                *s = &*s + p;
            }
        }
    }
    sum
}

fn rank_of(m: &Dense, cols: usize) -> usize {
    if m.len() > cols {
        dense_rank(&transpose(m, cols))
    } else {
        dense_rank(m)
    }
}

/// `dim HH_n(A)` of the classical Hochschild complex.
pub fn classical_hh(a: &FinAlgebra, n: usize) -> Result<usize> {
    let t = Table::new(a);
    let d = t.d;
    check_size(d.pow(n as u32 + 2))?;
    let dim_n = d.pow(n as u32 + 1);
    let bn = classical_boundary(&t, n);
    let bn1 = classical_boundary(&t, n + 1);
    Ok(dim_n - rank_of(&bn, dim_n) - rank_of(&bn1, d.pow(n as u32 + 2)))
}

/// `dim HC_n(A)` of Connes' complex `C_n / Im(1 − t)`. Over ℚ the projection
/// onto it has the same kernel as the norm `N`, so
/// `rank b̄_n = rank(N_{n−1} b_n)` and `dim C^λ_n = rank N_n`.
pub fn classical_hc(a: &FinAlgebra, n: usize) -> Result<usize> {
    let t = Table::new(a);
    let d = t.d;
    check_size(d.pow(n as u32 + 2))?;
    let dim = |k: usize| d.pow(k as u32 + 1);
    let quotient_dim = rank_of(&classical_norm(d, n), dim(n));
    let induced_rank = |k: usize| -> usize {
        if k == 0 {
            return 0;
        }
        let nb = matmul(
            &classical_norm(d, k - 1),
            &classical_boundary(&t, k),
            dim(k - 1),
            dim(k),
        );
        rank_of(&nb, dim(k))
    };
    Ok(quotient_dim - induced_rank(n) - induced_rank(n + 1))
}

/// `dim Ω¹_{A|ℚ}` from the presentation by `e_i dx_k` modulo the A-module
/// generated by `d(xy) − x dy − y dx`.
pub fn classical_kahler_dim(a: &FinAlgebra) -> Result<usize> {
    let t = Table::new(a);
    if !t.is_commutative() {
        return Err(Error::NonCommutative);
    }
    let d = t.d;
    check_size(d * d)?;
    // Coordinate of e_i dx_k is i + d·k.
    let sym = |coef: &[Q], x: &[Q]| -> Vec<Q> {
        let mut v = vec![Q::zero(); d * d];
        add_tensor(&mut v, &[coef.to_vec(), x.to_vec()], d, &q(1));
        v
    };
    let mut rels = Vec::new();
    for m in 0..d {
        let em = t.basis(m);
        for x in 0..d {
            for y in 0..d {
                let lhs = sym(&em, t.basis_mul(x, y));
                let r1 = sym(&t.mul(&em, &t.basis(x)), &t.basis(y));
                let r2 = sym(&t.mul(&em, &t.basis(y)), &t.basis(x));
                rels.push(
                    lhs.iter()
                        .zip(&r1)
                        .zip(&r2)
                        .map(|((l, p), s)| l - p - s)
                        .collect::<Vec<Q>>(),
                );
            }
        }
    }
    Ok(d * d - dense_rank(&rels))
}

/// `dim I/I²` for `I = Ker(A ⊗ A → A)`.
pub fn classical_i_mod_i2_dim(a: &FinAlgebra) -> Result<usize> {
    let t = Table::new(a);
    if !t.is_commutative() {
        return Err(Error::NonCommutative);
    }
    let d = t.d;
    check_size(d * d)?;
    // Coordinate of e_i ⊗ e_j is i + d·j.
    let mut m = zeros(d, d * d);
    for x in 0..d * d {
        let ij = digits(x, d, 2);
        for (k, v) in t.basis_mul(ij[0], ij[1]).iter().enumerate() {
            m[k][x] = v.clone();
        }
    }
    let ideal = dense_nullspace(&m, d * d);
    let tensor_mul = |u: &[Q], v: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); d * d];
        for (x, ux) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let a = digits(x, d, 2);
            for (y, vy) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let b = digits(y, d, 2);
                let c = ux * vy;
                let f = [
                    t.basis_mul(a[0], b[0]).to_vec(),
                    t.basis_mul(a[1], b[1]).to_vec(),
                ];
                add_tensor(&mut out, &f, d, &c);
            }
        }
        out
    };
    let mut square = Vec::new();
    for (i, u) in ideal.iter().enumerate() {
        for v in &ideal[i..] {
            square.push(tensor_mul(u, v));
        }
    }
    Ok(ideal.len() - dense_rank(&square))
}

/// `dim HH₁(A, B, ε)` from the low-degree formulas written out directly:
/// `∂₁(a, b; α) = aε(α)b − bε(α)a` and
/// `∂₂(a, b, c; α, β, γ) = (abε(α), c; βγ) − (a, bcε(γ); αβ) + (caε(β), b; αγ)`
/// with `α = b_{0,1}`, `β = b_{0,2}`, `γ = b_{1,2}`.
pub fn secondary_hh1_dim(t: &Triple) -> Result<usize> {
    let ta = Table::new(t.a());
    let tb = Table::new(t.b());
    let (da, db) = (ta.d, tb.d);
    let c1 = da * da * db;
    let c2 = da * da * da * db * db * db;
    check_size(c2)?;
    let eps: Vec<Vec<Q>> = (0..db)
        .map(|j| {
            t.eps_of_basis(j)
                .to_dense(da)
                .iter()
                .map(|r| r.to_big())
                .collect()
        })
        .collect();
    let eps_of = |beta: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); da];
        for (j, bj) in beta.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, e) in eps[j].iter().enumerate() {
                out[k] = &out[k] + bj * e;
            }
        }
        out
    };
    // C̄₁ coordinate of (a, b; α): a + da·b + da²·α.
    let add1 = |col: &mut [Q], a: &[Q], b: &[Q], al: &[Q], sign: &Q| {
        for (x, ax) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (y, by) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (z, az) in al.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let idx = x + da * y + da * da * z;
                    col[idx] = &col[idx] + sign * ax * by * az;
                }
            }
        }
    };
    let mut d1 = zeros(da, c1);
    for idx in 0..c1 {
        let (a, b, al) = (idx % da, (idx / da) % da, idx / (da * da));
        let e = &eps[al];
        let lhs = ta.mul(&ta.mul(&ta.basis(a), e), &ta.basis(b));
        let rhs = ta.mul(&ta.mul(&ta.basis(b), e), &ta.basis(a));
        for k in 0..da {
            d1[k][idx] = &lhs[k] - &rhs[k];
        }
    }
    let mut d2t = Vec::with_capacity(c2);
    for idx in 0..c2 {
        let ds = [
            idx % da,
            (idx / da) % da,
            (idx / (da * da)) % da,
            (idx / (da * da * da)) % db,
            (idx / (da * da * da * db)) % db,
            idx / (da * da * da * db * db),
        ];
        let (a, b, c) = (ta.basis(ds[0]), ta.basis(ds[1]), ta.basis(ds[2]));
        let (al, be, ga) = (tb.basis(ds[3]), tb.basis(ds[4]), tb.basis(ds[5]));
        let mut col = vec![Q::zero(); c1];
        let x = ta.mul(&ta.mul(&a, &b), &eps_of(&al));
        add1(&mut col, &x, &c, &tb.mul(&be, &ga), &q(1));
        let y = ta.mul(&ta.mul(&b, &c), &eps_of(&ga));
        add1(&mut col, &a, &y, &tb.mul(&al, &be), &q(-1));
        let z = ta.mul(&ta.mul(&c, &a), &eps_of(&be));
        add1(&mut col, &z, &b, &tb.mul(&al, &ga), &q(1));
        d2t.push(col);
    }
    Ok(c1 - dense_rank(&transpose(&d1, c1)) - dense_rank(&d2t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::catalog;

    fn f(n: usize) -> FinAlgebra {
        FinAlgebra::truncated_polynomial(n)
    }

    #[test]
    fn dense_rank_examples() {
        assert_eq!(dense_rank(&[]), 0);
        assert_eq!(dense_rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        let k = dense_nullspace(&[vec![q(1), q(-1)]], 2);
        assert_eq!(k, vec![vec![q(1), q(1)]]);
    }

    #[test]
    fn ground_field() {
        let k = FinAlgebra::ground();
        assert_eq!(classical_hh(&k, 0).unwrap(), 1);
        for n in 1..=3 {
            assert_eq!(classical_hh(&k, n).unwrap(), 0);
            assert_eq!(classical_hc(&k, n).unwrap(), (n % 2) ^ 1);
        }
        assert_eq!(classical_kahler_dim(&k).unwrap(), 0);
        assert_eq!(classical_i_mod_i2_dim(&k).unwrap(), 0);
    }

    #[test]
    fn classical_theorem_holds() {
        for a in [
            f(1),
            f(2),
            f(3),
            FinAlgebra::product_of_fields(2),
            FinAlgebra::product_of_fields(3),
        ] {
            let h1 = classical_hh(&a, 1).unwrap();
            assert_eq!(h1, classical_kahler_dim(&a).unwrap());
            assert_eq!(h1, classical_i_mod_i2_dim(&a).unwrap());
        }
        assert_eq!(classical_kahler_dim(&f(2)).unwrap(), 1);
        assert_eq!(
            classical_kahler_dim(&FinAlgebra::product_of_fields(2)).unwrap(),
            0
        );
        assert!(matches!(
            classical_kahler_dim(&FinAlgebra::matrix_algebra(2)),
            Err(Error::NonCommutative)
        ));
    }

    #[test]
    fn known_values() {
        // HH_n(ℚ[x]/(x^m)) has dim m for n = 0 and m − 1 above.
        for m in [2, 3] {
            let hh: Vec<usize> = (0..=3).map(|n| classical_hh(&f(m), n).unwrap()).collect();
            assert_eq!(hh, vec![m, m - 1, m - 1, m - 1]);
            // HC₀ = A and HC₁ = Ω¹/dA = 0.
            assert_eq!(classical_hc(&f(m), 0).unwrap(), m);
            assert_eq!(classical_hc(&f(m), 1).unwrap(), 0);
        }
        // M₂(ℚ) is Morita equivalent to ℚ.
        let m = FinAlgebra::matrix_algebra(2);
        assert_eq!(classical_hh(&m, 0).unwrap(), 1);
        assert_eq!(classical_hh(&m, 1).unwrap(), 0);
    }

    #[test]
    fn secondary_hh1_at_ground_b_is_classical() {
        for name in ["k_k", "dual_k", "trunc3_k", "prod_k", "mat2_k"] {
            let t = catalog(name).unwrap();
            assert_eq!(
                secondary_hh1_dim(&t).unwrap(),
                classical_hh(t.a(), 1).unwrap(),
                "{name}"
            );
        }
    }
}
