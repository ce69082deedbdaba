//! Quadratic forms stored by upper-triangular coefficients, their polar
//! bilinear forms, and the block determinant helper.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{RingDescriptor, Scalar};

/// `q(x) = sum_{i <= j} S[i][j] x_i x_j`. Entries below the diagonal are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    ring: RingDescriptor,
    coeffs: Matrix,
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    pub ring: RingDescriptor,
    pub gram: Matrix,
}

impl QuadraticForm {
    /// Takes any square matrix; entries below the diagonal are folded into the
    /// upper triangle.
    pub fn new(ring: RingDescriptor, coeffs: Matrix) -> Result<Self> {
        let n = coeffs.len();
        let mut s = linalg::zeros(&ring, n, n);
        for (i, row) in coeffs.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            for (j, c) in row.iter().enumerate() {
                if !c.in_ring(&ring) {
                    return Err(Error::RingMismatch(c.ring().to_string(), ring.to_string()));
                }
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                s[a][b] = &s[a][b] + c;
            }
        }
        Ok(QuadraticForm { ring, coeffs: s })
    }

    pub fn diagonal(ring: RingDescriptor, diag: &[Scalar]) -> Result<Self> {
        let n = diag.len();
        let mut s = linalg::zeros(&ring, n, n);
        for (i, d) in diag.iter().enumerate() {
            s[i][i] = d.clone();
        }
        QuadraticForm::new(ring, s)
    }

    pub fn hyperbolic_plane(ring: RingDescriptor) -> Self {
        let mut s = linalg::zeros(&ring, 2, 2);
        s[0][1] = ring.one();
        QuadraticForm { ring, coeffs: s }
    }

    pub fn euclidean(ring: RingDescriptor, n: usize) -> Self {
        QuadraticForm { coeffs: linalg::identity(&ring, n), ring }
    }

    /// Orthogonal sum `self ⊥ other`.
    pub fn orthogonal_sum(&self, other: &QuadraticForm) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        let (n, m) = (self.dim(), other.dim());
        let mut s = linalg::zeros(&self.ring, n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                s[i][j] = self.coeffs[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                s[n + i][n + j] = other.coeffs[i][j].clone();
            }
        }
        Ok(QuadraticForm { ring: self.ring.clone(), coeffs: s })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let coeffs = self.coeffs.iter().map(|r| r.iter().map(|v| v * c).collect()).collect();
        QuadraticForm { ring: self.ring.clone(), coeffs }
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(self.eval_generic(x))
    }

    pub fn eval_generic<C: Coeff>(&self, x: &[C]) -> C {
        let mut acc = x[0].zero_like();
        for i in 0..self.dim() {
            if x[i].is_zero() {
                continue;
            }
            let mut row = x[0].zero_like();
            for j in i..self.dim() {
                let c = &self.coeffs[i][j];
                if !c.is_zero() && !x[j].is_zero() {
                    row.add_assign(&x[j].scaled(c));
                }
            }
            if !row.is_zero() {
                acc.add_assign(&x[i].times(&row));
            }
        }
        acc
    }

    /// `Dq(x, y) = q(x + y) - q(x) - q(y)`.
    pub fn polar_generic<C: Coeff>(&self, x: &[C], y: &[C]) -> C {
        let mut acc = x[0].zero_like();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let c = &self.coeffs[i][j];
                if c.is_zero() {
                    continue;
                }
                let mut t = x[i].times(&y[j]);
                if i != j {
                    t.add_assign(&x[j].times(&y[i]));
                } else {
                    t = t.plus(&t);
                }
                if !t.is_zero() {
                    acc.add_assign(&t.scaled(c));
                }
            }
        }
        acc
    }

    pub fn polar(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
            }
        }
        Ok(self.polar_generic(x, y))
    }

    /// Gram matrix `S + S^T` of the polar form.
    pub fn bilinearize(&self) -> BilinearForm {
        let n = self.dim();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| &self.coeffs[i][j] + &self.coeffs[j][i]).collect())
            .collect();
        BilinearForm { ring: self.ring.clone(), gram }
    }

    /// The polar form's determinant is a unit (over ℤ: equals ±1).
    pub fn is_regular(&self) -> Result<bool> {
        if !(self.ring.is_field() || self.ring == RingDescriptor::Integers) {
            return Err(Error::Precondition(format!("regularity test over {}", self.ring)));
        }
        Ok(self.bilinearize().det()?.is_unit())
    }

    /// Leading principal minors of the Gram matrix all positive (ℤ and ℚ only).
    pub fn is_positive_definite(&self) -> Result<bool> {
        self.bilinearize().is_positive_definite()
    }
}

impl BilinearForm {
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len().min(y.len()) });
        }
        let gy = linalg::mat_vec(&self.gram, y);
        Ok(x.iter().zip(&gy).fold(self.ring.zero(), |acc, (a, b)| &acc + &(a * b)))
    }

    pub fn det(&self) -> Result<Scalar> {
        linalg::det(&self.ring, &self.gram)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    pub fn is_positive_definite(&self) -> Result<bool> {
        if !self.ring.is_ordered() {
            return Err(Error::Precondition(format!("positivity over unordered ring {}", self.ring)));
        }
        Ok(linalg::leading_minors(&self.ring, &self.gram)?.iter().all(|m| m.signum() == Some(1)))
    }
}

/// Determinant of `[[r*I_p, t1], [t2, s*I_q]]` for `t1` of size p x q and `t2`
/// of size q x p, evaluated as `r^(p-q) * char_{t2 t1}(r s)`.
pub fn block_det(r: &Scalar, s: &Scalar, t1: &Matrix, t2: &Matrix) -> Result<Scalar> {
    let ring = r.ring();
    if !s.same_ring(r) {
        return Err(Error::RingMismatch(ring.to_string(), s.ring().to_string()));
    }
    if !r.is_unit() {
        return Err(Error::NotAUnit(r.to_string()));
    }
    let p = t1.len();
    let q = t2.len();
    if p < q {
        return Err(Error::Precondition(format!("block sizes need p >= q, got p={p}, q={q}")));
    }
    for row in t1 {
        if row.len() != q {
            return Err(Error::DimensionMismatch { expected: q, got: row.len() });
        }
    }
    for row in t2 {
        if row.len() != p {
            return Err(Error::DimensionMismatch { expected: p, got: row.len() });
        }
    }
    let prod = if q == 0 { Vec::new() } else { linalg::mat_mul(&ring, t2, t1)? };
    let cp = linalg::char_poly(&ring, &prod)?;
    let value = linalg::eval_poly(&cp, &(r * s));
    Ok(&r.pow((p - q) as u32) * &value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> Scalar {
        Scalar::int(v)
    }

    #[test]
    fn evaluation_examples() {
        let zr = RingDescriptor::Integers;
        let h = QuadraticForm::hyperbolic_plane(zr.clone());
        assert_eq!(h.eval(&[z(2), z(3)]).unwrap(), z(6));
        let d = QuadraticForm::diagonal(zr.clone(), &[z(1), z(-1)]).unwrap();
        assert_eq!(d.eval(&[z(3), z(2)]).unwrap(), z(5));
        let e = QuadraticForm::euclidean(RingDescriptor::Rationals, 4);
        assert_eq!(e.eval(&vec![Scalar::rat(1, 1); 4]).unwrap(), Scalar::rat(4, 1));
        assert!(h.eval(&[z(1)]).is_err());
    }

    #[test]
    fn bilinearization_examples() {
        let zr = RingDescriptor::Integers;
        let one = QuadraticForm::diagonal(zr.clone(), &[z(1)]).unwrap();
        assert_eq!(one.bilinearize().gram, vec![vec![z(2)]]);
        let h = QuadraticForm::hyperbolic_plane(zr.clone());
        assert_eq!(h.bilinearize().gram, vec![vec![z(0), z(1)], vec![z(1), z(0)]]);
        let q2 = QuadraticForm::euclidean(RingDescriptor::Rationals, 2);
        let g = q2.bilinearize().gram;
        assert_eq!(g[0][0], Scalar::rat(2, 1));
        assert!(g[0][1].is_zero());
    }

    #[test]
    fn regularity_examples() {
        let f3 = RingDescriptor::PrimeField(3);
        let d3 = QuadraticForm::diagonal(f3.clone(), &[f3.one(), f3.from_i64(-1)]).unwrap();
        assert!(d3.is_regular().unwrap());
        let f2 = RingDescriptor::PrimeField(2);
        let d2 = QuadraticForm::diagonal(f2.clone(), &[f2.one(), f2.from_i64(-1)]).unwrap();
        assert!(!d2.is_regular().unwrap());
        assert!(QuadraticForm::hyperbolic_plane(RingDescriptor::Integers).is_regular().unwrap());
    }

    #[test]
    fn block_det_examples() {
        let one = |v: i64| vec![vec![z(v)]];
        assert_eq!(block_det(&z(2), &z(3), &one(1), &one(1)), Err(Error::NotAUnit("2".into())));
        let q = |v: i64| Scalar::rat(v, 1);
        let r = block_det(&q(2), &q(3), &vec![vec![q(1)]], &vec![vec![q(1)]]).unwrap();
        assert_eq!(r, q(5));
        let t1 = vec![vec![z(1)], vec![z(0)]];
        let t2 = vec![vec![z(1), z(0)]];
        assert_eq!(block_det(&z(1), &z(1), &t1, &t2).unwrap(), z(0));
        let zero_t1 = vec![vec![q(0)]; 2];
        let zero_t2 = vec![vec![q(0), q(0)]];
        assert_eq!(block_det(&q(2), &q(5), &zero_t1, &zero_t2).unwrap(), q(20));
    }
}
