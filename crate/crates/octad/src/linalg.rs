//! Dense exact linear algebra over [`Scalar`] matrices.

use num_integer::Integer;

use crate::coeff::{linear_form, Coeff};
use crate::error::{Error, Result};
use crate::scalar::{RingDescriptor, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(ring: &RingDescriptor, n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

pub fn zeros(ring: &RingDescriptor, rows: usize, cols: usize) -> Matrix {
    vec![vec![ring.zero(); cols]; rows]
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(ring: &RingDescriptor, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = zeros(ring, a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        if row.len() != inner {
            return Err(Error::DimensionMismatch { expected: inner, got: row.len() });
        }
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] = &out[i][j] + &(aik * &b[k][j]);
            }
        }
    }
    Ok(out)
}

pub fn mat_vec(m: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
    let zero = x.first().map(|s| s.zero_like()).unwrap_or_else(|| Scalar::int(0));
    m.iter().map(|row| linear_form(row, x, &zero)).collect()
}

fn check_square(m: &Matrix) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
    }
    Ok(n)
}

fn exact_div(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Int(x), Scalar::Int(y)) => {
            let (q, r) = x.div_rem(y);
            debug_assert!(r == num_bigint::BigInt::from(0), "inexact Bareiss division");
            Scalar::Int(q)
        }
        _ => a * &b.try_invert().expect("Bareiss pivot must be invertible"),
    }
}

/// Fraction-free Gaussian elimination; valid over ℤ and ℚ.
pub fn bareiss_det(ring: &RingDescriptor, m: &Matrix) -> Result<Scalar> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(ring.one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(ring.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = exact_div(&num, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.negate() } else { d })
}

/// Laplace expansion memoised over column subsets; valid over any commutative ring.
pub fn cofactor_det(ring: &RingDescriptor, m: &Matrix) -> Result<Scalar> {
    let n = check_square(m)?;
    if n > 16 {
        return Err(Error::CostGuard(format!("cofactor expansion of a {n}x{n} matrix")));
    }
    let mut dp: Vec<Option<Scalar>> = vec![None; 1 << n];
    dp[0] = Some(ring.one());
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = ring.zero();
        for c in 0..n {
            if mask & (1 << c) == 0 || m[row][c].is_zero() {
                continue;
            }
            let rest = mask & !(1 << c);
            let sub = match &dp[rest] {
                Some(v) => v,
                None => continue,
            };
            let term = &m[row][c] * sub;
            let inversions = (rest >> (c + 1)).count_ones();
            acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        dp[mask] = Some(acc);
    }
    Ok(dp[(1 << n) - 1].take().unwrap())
}

fn field_det(ring: &RingDescriptor, m: &Matrix) -> Result<Scalar> {
    let n = check_square(m)?;
    let mut a = m.clone();
    let mut det = ring.one();
    for k in 0..n {
        let piv = match (k..n).find(|&i| !a[i][k].is_zero()) {
            Some(i) => i,
            None => return Ok(ring.zero()),
        };
        if piv != k {
            a.swap(piv, k);
            det = det.negate();
        }
        det = &det * &a[k][k];
        let inv = a[k][k].try_invert()?;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            for j in k..n {
                a[i][j] = &a[i][j] - &(&f * &a[k][j]);
            }
        }
    }
    Ok(det)
}

/// Determinant: Bareiss over ℤ and ℚ, elimination over 𝔽_p, cofactor
/// expansion elsewhere.
pub fn det(ring: &RingDescriptor, m: &Matrix) -> Result<Scalar> {
    match ring {
        RingDescriptor::Integers | RingDescriptor::Rationals => bareiss_det(ring, m),
        RingDescriptor::PrimeField(_) => field_det(ring, m),
        _ => cofactor_det(ring, m),
    }
}

/// Coefficients `[1, c1, ..., cn]` of `det(t*I - m)`, highest degree first.
/// Berkowitz's algorithm, so no division is needed.
pub fn char_poly(ring: &RingDescriptor, m: &Matrix) -> Result<Vec<Scalar>> {
    let n = check_square(m)?;
    let mut v = vec![ring.one()];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
        let mut t = Vec::with_capacity(r + 2);
        t.push(ring.one());
        t.push(m[r][r].negate());
        let mut col: Vec<Scalar> = (0..r).map(|i| m[i][r].clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(ring.zero(), |acc, j| &acc + &(&m[r][j] * &col[j]));
            t.push(rc.negate());
            col = (0..r)
                .map(|i| (0..r).fold(ring.zero(), |acc, j| &acc + &(&m[i][j] * &col[j])))
                .collect();
        }
        let mut next = vec![ring.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if j <= i && i - j < t.len() {
                    *slot = &*slot + &(&t[i - j] * vj);
                }
            }
        }
        v = next;
    }
    Ok(v)
}

pub fn eval_poly(coeffs_high_first: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.zero_like();
    for c in coeffs_high_first {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Row echelon reduction over a field; returns the rank and the reduced matrix.
fn echelon(m: &Matrix) -> Result<(usize, Matrix)> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let piv = match (rank..rows).find(|&i| !a[i][c].is_zero()) {
            Some(i) => i,
            None => continue,
        };
        a.swap(piv, rank);
        let inv = a[rank][c].try_invert()?;
        for j in c..cols {
            a[rank][j] = &a[rank][j] * &inv;
        }
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    a[i][j] = &a[i][j] - &(&f * &a[rank][j]);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok((rank, a))
}

pub fn rank(ring: &RingDescriptor, m: &Matrix) -> Result<usize> {
    if !ring.is_field() {
        return Err(Error::Precondition(format!("rank needs a field, got {ring}")));
    }
    Ok(echelon(m)?.0)
}

/// Solve `a * x = b` over a field. `None` if inconsistent; free variables are set to 0.
pub fn solve(ring: &RingDescriptor, a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if !ring.is_field() {
        return Err(Error::Precondition(format!("solve needs a field, got {ring}")));
    }
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    let cols = a.first().map_or(0, |r| r.len());
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (_, red) = echelon(&aug)?;
    let mut x = vec![ring.zero(); cols];
    for row in &red {
        match row[..cols].iter().position(|v| !v.is_zero()) {
            Some(p) => x[p] = row[cols].clone(),
            None => {
                if !row[cols].is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(x))
}

pub fn inverse(ring: &RingDescriptor, m: &Matrix) -> Result<Matrix> {
    let n = check_square(m)?;
    let id = identity(ring, n);
    let cols: Result<Vec<Vec<Scalar>>> = (0..n)
        .map(|j| {
            let e: Vec<Scalar> = id.iter().map(|r| r[j].clone()).collect();
            solve(ring, m, &e)?.ok_or(Error::NotInvertible)
        })
        .collect();
    let inv = transpose(&cols?);
    let check = mat_mul(ring, m, &inv)?;
    if check != id {
        return Err(Error::NotInvertible);
    }
    Ok(inv)
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`.
pub fn leading_minors(ring: &RingDescriptor, m: &Matrix) -> Result<Vec<Scalar>> {
    let n = check_square(m)?;
    (1..=n)
        .map(|k| {
            let sub: Matrix = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            det(ring, &sub)
        })
        .collect()
}

/// A module homomorphism given by its matrix on coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub matrix: Matrix,
}

impl LinearMap {
    pub fn apply<C: Coeff>(&self, x: &[C]) -> Vec<C> {
        let zero = x[0].zero_like();
        self.matrix.iter().map(|row| linear_form(row, x, &zero)).collect()
    }

    pub fn compose(&self, first: &LinearMap, ring: &RingDescriptor) -> Result<LinearMap> {
        Ok(LinearMap { matrix: mat_mul(ring, &self.matrix, &first.matrix)? })
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() }))
    }
}
