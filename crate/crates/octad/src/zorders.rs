//! ℤ-lattices inside rational conic algebras: Gaussian, Hurwitz,
//! Dickson–Coxeter and Kirmse lattices, membership, closure audits and
//! exact enumeration of norm-one vectors.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::cayley::quaternions;
use crate::conic::{cartan_schouten, ConicAlgebra, ConicElement, ConicHandle};
use crate::error::{Error, Result};
use crate::identity::{Verdict, Witness};
use crate::linalg::{self, LinearMap, Matrix};
use crate::quadform::BilinearForm;
use crate::scalar::{RingDescriptor, Scalar};

#[derive(Clone, Debug)]
pub struct ZLattice {
    name: String,
    ambient: Arc<ConicAlgebra>,
    basis: Matrix,
    labels: Vec<String>,
    gram: Matrix,
    integral: bool,
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::rat(n, d)
}

impl ZLattice {
    /// Lattice spanned by the rows of `basis` (ambient coordinates).
    pub fn new(name: &str, ambient: Arc<ConicAlgebra>, basis: Matrix, labels: Vec<String>) -> Result<Self> {
        let k = ambient.ring().clone();
        if k != RingDescriptor::Rationals {
            return Err(Error::Precondition(format!("lattices live in algebras over Q, not {k}")));
        }
        let n = ambient.dim();
        if basis.len() != n || labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: basis.len().min(labels.len()) });
        }
        for row in &basis {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            if let Some(c) = row.iter().find(|c| !c.in_ring(&k)) {
                return Err(Error::RingMismatch(c.ring().to_string(), k.to_string()));
            }
        }
        if linalg::rank(&k, &basis)? != n {
            return Err(Error::Precondition(format!("basis of {name} is linearly dependent")));
        }
        let gram: Matrix = basis
            .iter()
            .map(|a| basis.iter().map(|b| ambient.polar_coords(a, b)).collect())
            .collect();
        let integral = basis.iter().all(|b| ambient.norm_coords(b).is_integral())
            && gram.iter().flatten().all(Scalar::is_integral);
        Ok(ZLattice { name: name.to_string(), ambient, basis, labels, gram, integral })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> &Arc<ConicAlgebra> {
        &self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `gram[i][j] = Dn(b_i, b_j)`.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn disc(&self) -> Scalar {
        linalg::det(self.ambient.ring(), &self.gram).expect("square rational matrix")
    }

    pub fn basis_element(&self, i: usize) -> ConicElement {
        self.ambient.element(self.basis[i].clone()).expect("basis row in ambient")
    }

    pub fn combination(&self, c: &[Scalar]) -> ConicElement {
        let n = self.rank();
        let mut x = vec![q(0, 1); n];
        for (ci, row) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (xl, bl) in x.iter_mut().zip(row) {
                *xl = &*xl + &(ci * bl);
            }
        }
        self.ambient.element(x).expect("combination in ambient")
    }

    /// Coefficients of `x` in the lattice basis (rational in general).
    pub fn coefficients(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let a = linalg::transpose(&self.basis);
        linalg::solve(self.ambient.ring(), &a, x)?
            .ok_or_else(|| Error::Precondition("lattice basis does not span the ambient space".into()))
    }

    pub fn contains_coords(&self, x: &[Scalar]) -> bool {
        match self.coefficients(x) {
            Ok(c) => c.iter().all(Scalar::is_integral),
            Err(_) => false,
        }
    }

    pub fn contains(&self, x: &ConicElement) -> bool {
        x.algebra() == &self.ambient && self.contains_coords(x.coords())
    }

    /// Same point set: each basis lies in the other lattice.
    pub fn same_lattice(&self, other: &ZLattice) -> bool {
        self.ambient == other.ambient
            && self.basis.iter().all(|b| other.contains_coords(b))
            && other.basis.iter().all(|b| self.contains_coords(b))
    }

    /// Image under a linear map of the ambient space.
    pub fn image(&self, name: &str, map: &LinearMap) -> Result<ZLattice> {
        let basis = self.basis.iter().map(|b| map.apply(b)).collect();
        ZLattice::new(name, self.ambient.clone(), basis, self.labels.clone())
    }

    /// Checks all products of basis pairs, in lexicographic order.
    pub fn closed_under_mul(&self) -> Verdict {
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let prod = self.ambient.mul_coords(&self.basis[i], &self.basis[j]);
                if !self.contains_coords(&prod) {
                    return Verdict::fails(
                        "closed_under_mul",
                        Witness::Product { left: self.labels[i].clone(), right: self.labels[j].clone(), product: prod },
                    );
                }
            }
        }
        Verdict::Holds
    }

    /// All lattice vectors `x` with `n(x) = 1`, in a fixed depth-first order.
    pub fn enumerate_units(&self) -> Result<Vec<ConicElement>> {
        Ok(self.enumerate_norm(&q(1, 1))?.into_iter().map(|c| self.combination(&c)).collect())
    }

    /// Coefficient vectors of all lattice vectors of norm exactly `target`
    /// (that is, `c^T G c = 2 target`), by exact Fincke–Pohst search.
    pub fn enumerate_norm(&self, target: &Scalar) -> Result<Vec<Vec<Scalar>>> {
        let form = BilinearForm { ring: self.ambient.ring().clone(), gram: self.gram.clone() };
        if !form.is_positive_definite()? {
            return Err(Error::Precondition(format!("norm on {} is not positive definite", self.name)));
        }
        let (d, u) = ldl(&self.gram);
        let n = self.rank();
        let budget = target + target;
        let mut out = Vec::new();
        let mut c = vec![0i64; n];
        search(&d, &u, n, &budget, &mut c, &mut out);
        Ok(out.into_iter().map(|v| v.into_iter().map(|c| q(c, 1)).collect()).collect())
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &Matrix| -> Value {
            Value::Array(m.iter().map(|r| Value::Array(r.iter().map(Scalar::to_json).collect())).collect())
        };
        json!({
            "name": self.name,
            "ambient": self.ambient.name(),
            "ambient_dim": self.ambient.dim(),
            "labels": self.labels,
            "basis": mat(&self.basis),
            "gram": mat(&self.gram),
            "disc": self.disc().to_json(),
            "integral": self.integral,
        })
    }

    pub fn from_json(ambient: Arc<ConicAlgebra>, v: &Value) -> Result<ZLattice> {
        let k = ambient.ring().clone();
        let rows = v["basis"].as_array().ok_or_else(|| Error::Parse("missing basis".into()))?;
        let basis = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("basis row is not an array".into()))?
                    .iter()
                    .map(|c| Scalar::from_json(&k, c))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Matrix>>()?;
        let labels = match v["labels"].as_array() {
            Some(ls) => ls.iter().map(|l| l.as_str().unwrap_or("?").to_string()).collect(),
            None => (0..basis.len()).map(|i| format!("b{i}")).collect(),
        };
        let name = v["name"].as_str().unwrap_or("lattice");
        ZLattice::new(name, ambient, basis, labels)
    }
}

/// `G = U^T D U` with `U` unit upper triangular.
fn ldl(g: &Matrix) -> (Vec<Scalar>, Matrix) {
    let n = g.len();
    let mut d = vec![q(0, 1); n];
    let mut u = vec![vec![q(0, 1); n]; n];
    for i in 0..n {
        let mut di = g[i][i].clone();
        for k in 0..i {
            di = &di - &(&d[k] * &(&u[k][i] * &u[k][i]));
        }
        d[i] = di;
        u[i][i] = q(1, 1);
        let inv = d[i].try_invert().expect("positive pivot");
        for j in i + 1..n {
            let mut s = g[i][j].clone();
            for k in 0..i {
                s = &s - &(&d[k] * &(&u[k][i] * &u[k][j]));
            }
            u[i][j] = &s * &inv;
        }
    }
    (d, u)
}

fn floor_rat(x: &Scalar) -> i64 {
    let r = x.to_rational().expect("rational");
    num_integer::Integer::div_floor(r.numer(), r.denom()).try_into().expect("bounded search")
}

fn search(d: &[Scalar], u: &Matrix, level: usize, left: &Scalar, c: &mut [i64], out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        if left.is_zero() {
            out.push(c.to_vec());
        }
        return;
    }
    let i = level - 1;
    let n = c.len();
    let mut center = q(0, 1);
    for j in i + 1..n {
        if c[j] != 0 {
            center = &center - &(&u[i][j] * &q(c[j], 1));
        }
    }
    let cost = |v: i64| {
        let t = &q(v, 1) - &center;
        &d[i] * &(&t * &t)
    };
    let fits = |v: i64| cost(v).try_sub(left).map(|s| s.signum() != Some(1)).unwrap_or(false);
    let base = floor_rat(&center);
    let start = if fits(base) {
        base
    } else if fits(base + 1) {
        base + 1
    } else {
        return;
    };
    let mut lo = start;
    while fits(lo - 1) {
        lo -= 1;
    }
    let mut hi = start;
    while fits(hi + 1) {
        hi += 1;
    }
    for v in lo..=hi {
        c[i] = v;
        let rest = left - &cost(v);
        search(d, u, i, &rest, c, out);
    }
    c[i] = 0;
}

fn rows_of(alg: &ConicAlgebra, elems: &[ConicElement]) -> Matrix {
    debug_assert!(elems.iter().all(|e| e.algebra().as_ref() == alg));
    elems.iter().map(|e| e.coords().to_vec()).collect()
}

/// The ℤ-span of the given algebra's basis.
pub fn gaussian(c: &Arc<ConicAlgebra>) -> Result<ZLattice> {
    let basis = (0..c.dim()).map(|i| c.basis_coords(i)).collect();
    ZLattice::new(&format!("Gamma({})", c.name()), c.clone(), basis, c.labels().to_vec())
}

/// Hurwitz quaternions with basis `1, i, j, h = (1 + i + j + k)/2`.
pub fn hurwitz() -> ZLattice {
    let h = quaternions(&RingDescriptor::Rationals);
    let mid = h.element(vec![q(1, 2); 4]).expect("h");
    let basis = rows_of(&h, &[h.one(), h.basis(1), h.basis(2), mid]);
    ZLattice::new("Hurwitz", h, basis, ["1", "i", "j", "h"].map(String::from).to_vec()).expect("Hurwitz basis")
}

/// Octonion coordinates of the half-norm orthogonal vectors `eps_1..eps_8`:
/// `eps_{2a-1} = (-u_{2a-2} + u_{2a})/2`-style pairs with `Dn(eps_i, eps_j) = δ_ij`.
pub fn eps_vectors() -> Vec<Vec<Scalar>> {
    let h = |pairs: &[(usize, i64)]| {
        let mut v = vec![q(0, 1); 8];
        for &(i, s) in pairs {
            v[i] = q(s, 2);
        }
        v
    };
    vec![
        h(&[(0, -1), (2, 1)]),
        h(&[(0, 1), (2, 1)]),
        h(&[(1, -1), (3, -1)]),
        h(&[(1, 1), (3, -1)]),
        h(&[(4, -1), (5, 1)]),
        h(&[(4, 1), (5, 1)]),
        h(&[(6, 1), (7, -1)]),
        h(&[(6, 1), (7, 1)]),
    ]
}

/// `xi_i = Dn(x, eps_i)`.
pub fn to_eps(x: &[Scalar]) -> Vec<Scalar> {
    let o = cartan_schouten(&RingDescriptor::Rationals);
    eps_vectors().iter().map(|e| o.polar_coords(x, e)).collect()
}

pub fn from_eps(xi: &[Scalar]) -> Vec<Scalar> {
    let mut x = vec![q(0, 1); 8];
    for (c, e) in xi.iter().zip(eps_vectors()) {
        for (xl, el) in x.iter_mut().zip(&e) {
            *xl = &*xl + &(c * el);
        }
    }
    x
}

/// `xi` all integers or all in `1/2 + ℤ`, with even coordinate sum.
pub fn in_e8(xi: &[Scalar]) -> bool {
    let half = q(1, 2);
    let all_int = xi.iter().all(Scalar::is_integral);
    let all_half = xi.iter().all(|c| (c - &half).is_integral());
    let sum = xi.iter().fold(q(0, 1), |a, c| &a + c);
    (all_int || all_half) && (&sum * &half).is_integral()
}

/// Dickson–Coxeter octonions: the E8 lattice in the coordinates of
/// [`eps_vectors`], spanned by `2 eps_1`, `eps_{i+1} - eps_i` and
/// `(eps_1 + ... + eps_8)/2`.
pub fn dickson_coxeter() -> ZLattice {
    let o = cartan_schouten(&RingDescriptor::Rationals);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut first = vec![q(0, 1); 8];
    first[0] = q(2, 1);
    rows.push(first);
    for i in 0..6 {
        let mut r = vec![q(0, 1); 8];
        r[i] = q(-1, 1);
        r[i + 1] = q(1, 1);
        rows.push(r);
    }
    rows.push(vec![q(1, 2); 8]);
    let basis = rows.iter().map(|xi| from_eps(xi)).collect();
    let labels = (1..=8).map(|i| format!("r{i}")).collect();
    ZLattice::new("Dickson-Coxeter", o, basis, labels).expect("E8 basis")
}

/// Kirmse's lattice with basis `1, u1, u2, u3, v1, v2, v3, v4`, the `v`'s
/// solved from `u4 = 2v1 - 1 - u1 - u2`, `u5 = 2v4 - 1 - u2 - u3`,
/// `u7 = -2v3 + 1 + u1 + u3`, `u6 = -2v2 + u3 + u5 - u7`.
pub fn kirmse() -> ZLattice {
    let o = cartan_schouten(&RingDescriptor::Rationals);
    // (u index on the left, coefficient of v, remaining terms as (u index, coefficient))
    let relations: [(usize, i64, &[(usize, i64)]); 4] = [
        (4, 2, &[(0, -1), (1, -1), (2, -1)]),
        (6, -2, &[(3, 1), (5, 1), (7, -1)]),
        (7, -2, &[(0, 1), (1, 1), (3, 1)]),
        (5, 2, &[(0, -1), (2, -1), (3, -1)]),
    ];
    let vs: Vec<Vec<Scalar>> = relations
        .iter()
        .map(|(lhs, a, rest)| {
            let mut v = vec![q(0, 1); 8];
            v[*lhs] = q(1, *a);
            for &(i, c) in rest.iter() {
                v[i] = &v[i] - &q(c, *a);
            }
            v
        })
        .collect();
    let mut basis: Matrix = (0..4).map(|i| o.basis_coords(i)).collect();
    basis.extend(vs);
    let labels = ["1", "u1", "u2", "u3", "v1", "v2", "v3", "v4"].map(String::from).to_vec();
    let lat = ZLattice::new("Kirmse", o, basis, labels).expect("Kirmse basis");
    assert!(
        lat.is_integral() && lat.disc().is_one(),
        "reconstructed Kirmse lattice is not integral unimodular"
    );
    lat
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DicoVariant {
    /// `Γ(H) + Γ(H) p` with `H = span(1, u1, u2, u4)`, `p = eps_2 - eps_3`.
    PForm,
    /// `Γ(B) + Γ(B) q` with `B = span(1, u3, u4, u6)`, `q = (1 + u3 + u4 + u5)/2`.
    QForm,
}

pub fn alternative_dico(variant: DicoVariant) -> ZLattice {
    let o = cartan_schouten(&RingDescriptor::Rationals);
    let (idx, name, x, xl) = match variant {
        DicoVariant::PForm => {
            let mut p = vec![q(0, 1); 8];
            p[1] = q(1, 1);
            p[2] = q(-1, 1);
            ([0, 1, 2, 4], "DiCo p-form", from_eps(&p), "p")
        }
        DicoVariant::QForm => {
            let mut v = vec![q(0, 1); 8];
            for i in [0, 3, 4, 5] {
                v[i] = q(1, 2);
            }
            ([0, 3, 4, 6], "DiCo q-form", v, "q")
        }
    };
    let x = o.element(x).expect("generator");
    let mut elems: Vec<ConicElement> = idx.iter().map(|&i| o.basis(i)).collect();
    let prods: Vec<ConicElement> = elems.iter().map(|b| b.mul(&x).expect("same algebra")).collect();
    elems.extend(prods);
    let mut labels: Vec<String> = idx.iter().map(|&i| if i == 0 { "1".into() } else { format!("u{i}") }).collect();
    labels.extend(idx.iter().map(|&i| if i == 0 { xl.to_string() } else { format!("u{i}{xl}") }));
    ZLattice::new(name, o.clone(), rows_of(&o, &elems), labels).expect("alternative DiCo basis")
}

/// The octonion automorphism `1 ↦ 1`, `u_r ↦ u_{r+2}` (indices mod 7).
pub fn index_shift_automorphism() -> LinearMap {
    let k = RingDescriptor::Rationals;
    let mut m = linalg::zeros(&k, 8, 8);
    m[0][0] = k.one();
    for r in 1..8 {
        m[(r + 1) % 7 + 1][r] = k.one();
    }
    LinearMap { matrix: m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::verify_homomorphism;

    #[test]
    fn eps_orthogonality() {
        let o = cartan_schouten(&RingDescriptor::Rationals);
        let e = eps_vectors();
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == j { q(1, 1) } else { q(0, 1) };
                assert_eq!(o.polar_coords(&e[i], &e[j]), expect);
            }
        }
        let x: Vec<Scalar> = (1..=8).map(|v| q(v, 3)).collect();
        assert_eq!(from_eps(&to_eps(&x)), x);
    }

    #[test]
    fn hurwitz_membership() {
        let h = hurwitz();
        let alg = h.ambient().clone();
        assert!(h.contains(&alg.element(vec![q(1, 2); 4]).unwrap()));
        assert!(!h.contains(&alg.element(vec![q(1, 2), q(1, 2), q(0, 1), q(0, 1)]).unwrap()));
        assert!(h.closed_under_mul().holds());
        assert!(h.is_integral());
    }

    #[test]
    fn kirmse_basis() {
        let k = kirmse();
        let v1 = k.basis_element(4);
        assert_eq!(v1.coords(), &[q(1, 2), q(1, 2), q(1, 2), q(0, 1), q(1, 2), q(0, 1), q(0, 1), q(0, 1)]);
        assert!(k.disc().is_one());
    }

    #[test]
    fn dico_membership() {
        let d = dickson_coxeter();
        let mut xi = vec![q(0, 1); 8];
        xi[0] = q(1, 1);
        xi[1] = q(1, 1);
        assert!(d.contains_coords(&from_eps(&xi)));
        xi[1] = q(0, 1);
        assert!(!d.contains_coords(&from_eps(&xi)));
        assert!(d.is_integral());
    }

    #[test]
    fn shift_is_automorphism() {
        let o = cartan_schouten(&RingDescriptor::Rationals);
        verify_homomorphism(&o, &o, &index_shift_automorphism()).unwrap();
    }

    #[test]
    fn lattice_json_round_trip() {
        let h = hurwitz();
        let v = h.to_json();
        assert_eq!(v["disc"], json!("4"));
        let back = ZLattice::from_json(h.ambient().clone(), &v).unwrap();
        assert!(back.same_lattice(&h));
        assert_eq!(back.labels(), h.labels());
    }

    #[test]
    fn indefinite_forms_rejected() {
        let split = crate::conic::split_etale(&RingDescriptor::Rationals);
        let g = gaussian(&split).unwrap();
        assert!(g.enumerate_units().is_err());
    }
}
