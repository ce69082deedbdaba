//! The first Tits construction `J(A, μ) = A ⊕ A j_1 ⊕ A j_2` over an
//! associative algebra `A` carrying a compatible cubic norm structure.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::{Coeff, Poly};
use crate::conic::ConicAlgebra;
use crate::cubic::{k_cubic, split_cubic_etale, CubicData, CubicElement, CubicHandle, CubicMap, IdemClass};
use crate::error::{Error, Result};
use crate::identity::{
    self, btrace, cubic_norm, one, scale, sharp, trace, var, AlgebraOps, CheckMode, Identity,
};
use crate::linalg::{self, LinearMap};
use crate::scalar::{RingDescriptor, Scalar};

/// A cubic norm structure together with an associative multiplication on
/// the same module whose unit is the base point.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicAssocInput {
    data: Arc<CubicData>,
    /// `(i, j, e_i e_j)` for nonzero products.
    table: Vec<(usize, usize, Vec<(usize, Scalar)>)>,
}

impl CubicAssocInput {
    /// Validates associativity, `x♯x = xx♯ = N(x)1` and `T(x, y) = T(xy)`
    /// by strict expansion.
    pub fn new(data: Arc<CubicData>, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = data.dim();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|p| p.len() != n)) {
            return Err(Error::DimensionMismatch { expected: n, got: table.len() });
        }
        let mut sparse = Vec::new();
        for (i, row) in table.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let entries: Vec<(usize, Scalar)> =
                    p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(l, c)| (l, c.clone())).collect();
                if !entries.is_empty() {
                    sparse.push((i, j, entries));
                }
            }
        }
        let input = CubicAssocInput { data, table: sparse };
        let verdict = identity::check_all(&input, &assoc_input_identities(), CheckMode::Strict)?;
        if let Some(f) = verdict.failure() {
            return Err(Error::Precondition(format!(
                "{} is not an associative cubic input: {} fails at {}",
                input.data.name(),
                f.check,
                f.witness.to_json()
            )));
        }
        Ok(input)
    }

    pub fn cubic(&self) -> &Arc<CubicData> {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn mul_generic<C: Coeff>(&self, x: &[C], y: &[C]) -> Vec<C> {
        let zero = x[0].zero_like();
        let mut out = vec![zero; self.dim()];
        for (i, j, entries) in &self.table {
            if x[*i].is_zero() || y[*j].is_zero() {
                continue;
            }
            let p = x[*i].times(&y[*j]);
            for (l, c) in entries {
                out[*l].add_assign(&p.scaled(c));
            }
        }
        out
    }
}

impl AlgebraOps for CubicAssocInput {
    fn ring(&self) -> &RingDescriptor {
        self.data.ring()
    }
    fn dim(&self) -> usize {
        self.data.dim()
    }
    fn unit(&self) -> &[Scalar] {
        self.data.basepoint()
    }
    fn op_mul<C: Coeff>(&self, x: &[C], y: &[C]) -> Result<Vec<C>> {
        Ok(self.mul_generic(x, y))
    }
    fn op_trace<C: Coeff>(&self, x: &[C]) -> Result<C> {
        self.data.op_trace(x)
    }
    fn op_sharp<C: Coeff>(&self, x: &[C]) -> Result<Vec<C>> {
        self.data.op_sharp(x)
    }
    fn op_cross<C: Coeff>(&self, x: &[C], y: &[C]) -> Result<Vec<C>> {
        self.data.op_cross(x, y)
    }
    fn op_cubic_norm<C: Coeff>(&self, x: &[C]) -> Result<C> {
        self.data.op_cubic_norm(x)
    }
    fn op_cubic_norm_at<C: Coeff>(&self, x: &[C], y: &[C]) -> Result<C> {
        self.data.op_cubic_norm_at(x, y)
    }
    fn op_bilinear_trace<C: Coeff>(&self, x: &[C], y: &[C]) -> Result<C> {
        self.data.op_bilinear_trace(x, y)
    }
}

fn assoc_input_identities() -> Vec<Identity> {
    let (x, y, z) = (var(0), var(1), var(2));
    vec![
        Identity::vector("unit", one() * x.clone(), x.clone()).with(identity::Equation::Vector(
            x.clone() * one(),
            x.clone(),
        )),
        Identity::vector(
            "associativity",
            (x.clone() * y.clone()) * z.clone(),
            x.clone() * (y.clone() * z),
        ),
        Identity::vector("adjoint compatibility", sharp(x.clone()) * x.clone(), scale(cubic_norm(x.clone()), one()))
            .with(identity::Equation::Vector(
                x.clone() * sharp(x.clone()),
                scale(cubic_norm(x.clone()), one()),
            )),
        Identity::scalar("trace compatibility", btrace(x.clone(), y.clone()), trace(x * y)),
    ]
}

fn dense_table(k: &RingDescriptor, n: usize, f: impl Fn(usize, usize) -> Option<usize>) -> Vec<Vec<Vec<Scalar>>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = vec![k.zero(); n];
                    if let Some(l) = f(i, j) {
                        v[l] = k.one();
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// The base ring with its cube norm.
pub fn k_assoc(k: &RingDescriptor) -> CubicAssocInput {
    CubicAssocInput::new(k_cubic(k), dense_table(k, 1, |_, _| Some(0))).expect("k is associative")
}

/// `k × k × k` with the componentwise product.
pub fn split_etale_assoc(k: &RingDescriptor) -> CubicAssocInput {
    CubicAssocInput::new(split_cubic_etale(k), dense_table(k, 3, |i, j| (i == j).then_some(i)))
        .expect("k^3 is associative")
}

/// `(x♯)_{rs}` of a 3×3 matrix stored row-major: the classical adjoint.
pub fn adjugate<C: Coeff>(x: &[C]) -> Vec<C> {
    let at = |r: usize, s: usize| &x[3 * (r % 3) + s % 3];
    let mut out = Vec::with_capacity(9);
    for r in 0..3 {
        for s in 0..3 {
            out.push(at(s + 1, r + 1).times(at(s + 2, r + 2)).minus(&at(s + 1, r + 2).times(at(s + 2, r + 1))));
        }
    }
    out
}

pub fn det3<C: Coeff>(x: &[C]) -> C {
    let adj = adjugate(x);
    (0..3).fold(x[0].zero_like(), |acc, s| acc.plus(&x[s].times(&adj[3 * s])))
}

/// `Mat3(k)` with determinant, classical adjoint and matrix product, on the
/// matrix units `E_rs` in row-major order.
pub fn mat3(k: &RingDescriptor) -> CubicAssocInput {
    let labels = (1..=3).flat_map(|r| (1..=3).map(move |s| format!("E{r}{s}"))).collect();
    let basepoint = (0..9).map(|i| if i % 4 == 0 { k.one() } else { k.zero() }).collect();
    let data = CubicData::from_laws(&format!("Mat3({k})"), k.clone(), labels, basepoint, adjugate::<Poly>, det3::<Poly>)
        .expect("matrix algebra laws");
    let table = dense_table(k, 9, |a, b| (a % 3 == b / 3).then_some(3 * (a / 3) + b % 3));
    CubicAssocInput::new(Arc::new(data), table).expect("Mat3 is an associative cubic input")
}

/// `k ⊕ C` with the componentwise product, for an associative conic `C`.
pub fn hat_assoc(conic: &Arc<ConicAlgebra>) -> Result<CubicAssocInput> {
    let data = crate::cubic::hat_pointed(conic.norm_form(), conic.unit_coords())?;
    let k = conic.ring();
    let n = 1 + conic.dim();
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = vec![k.zero(); n];
                    if i == 0 && j == 0 {
                        v[0] = k.one();
                    } else if i > 0 && j > 0 {
                        v[1..].clone_from_slice(conic.basis_product(i - 1, j - 1));
                    }
                    v
                })
                .collect()
        })
        .collect();
    CubicAssocInput::new(data, table)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tits {
    input: CubicAssocInput,
    mu: Scalar,
    data: Arc<CubicData>,
}

/// `J(A, μ)` on coordinates `(x_0, x_1, x_2)`, with
/// `N = N(x_0) + μ N(x_1) + μ² N(x_2) - μ T(x_0, x_1 x_2)` and
/// `x♯ = (x_0♯ - μ x_1 x_2, μ x_2♯ - x_0 x_1, x_1♯ - x_2 x_0)`.
pub fn tits(a: &CubicAssocInput, mu: &Scalar) -> Result<Tits> {
    let k = a.data.ring().clone();
    if !mu.in_ring(&k) {
        return Err(Error::RingMismatch(mu.ring().to_string(), k.to_string()));
    }
    if !mu.is_unit() {
        return Err(Error::NotAUnit(mu.to_string()));
    }
    let n = a.dim();
    let mut labels: Vec<String> = a.data.labels().to_vec();
    for j in ["j1", "j2"] {
        labels.extend(a.data.labels().iter().map(|l| format!("{l}{j}")));
    }
    let mut basepoint = a.data.basepoint().to_vec();
    basepoint.extend(vec![k.zero(); 2 * n]);
    let m = Poly::zero().lifted(mu);
    let d = a.data.as_ref();
    let sharp_law = |x: &[Poly]| -> Vec<Poly> {
        let (x0, x1, x2) = (&x[..n], &x[n..2 * n], &x[2 * n..]);
        let p0: Vec<Poly> = d
            .sharp_generic(x0)
            .iter()
            .zip(a.mul_generic(x1, x2))
            .map(|(s, p)| s.minus(&p.times(&m)))
            .collect();
        let p1: Vec<Poly> = d
            .sharp_generic(x2)
            .iter()
            .zip(a.mul_generic(x0, x1))
            .map(|(s, p)| s.times(&m).minus(&p))
            .collect();
        let p2: Vec<Poly> = d.sharp_generic(x1).iter().zip(a.mul_generic(x2, x0)).map(|(s, p)| s.minus(&p)).collect();
        p0.into_iter().chain(p1).chain(p2).collect()
    };
    let norm_law = |x: &[Poly]| -> Poly {
        let (x0, x1, x2) = (&x[..n], &x[n..2 * n], &x[2 * n..]);
        d.norm_generic(x0)
            .plus(&d.norm_generic(x1).times(&m))
            .plus(&d.norm_generic(x2).times(&m).times(&m))
            .minus(&d.btrace_generic(x0, &a.mul_generic(x1, x2)).times(&m))
    };
    let data = CubicData::from_laws(&format!("J({}, {mu})", d.name()), k, labels, basepoint, sharp_law, norm_law)?;
    Ok(Tits { input: a.clone(), mu: mu.clone(), data: Arc::new(data) })
}

impl Tits {
    pub fn input(&self) -> &CubicAssocInput {
        &self.input
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    pub fn cubic(&self) -> &Arc<CubicData> {
        &self.data
    }

    pub fn element(&self, x0: &[Scalar], x1: &[Scalar], x2: &[Scalar]) -> Result<CubicElement> {
        let coords: Vec<Scalar> = x0.iter().chain(x1).chain(x2).cloned().collect();
        self.data.element(coords)
    }

    /// `(x_0, x_1, x_2)`.
    pub fn components(&self, x: &CubicElement) -> [Vec<Scalar>; 3] {
        let n = self.input.dim();
        let c = x.coords();
        [c[..n].to_vec(), c[n..2 * n].to_vec(), c[2 * n..].to_vec()]
    }

    /// `1_A j_1`.
    pub fn j1(&self) -> CubicElement {
        let a = self.input.data.basepoint();
        let z = vec![self.data.ring().zero(); a.len()];
        self.element(&z, a, &z).expect("shape")
    }

    /// `1_A j_2`.
    pub fn j2(&self) -> CubicElement {
        let a = self.input.data.basepoint();
        let z = vec![self.data.ring().zero(); a.len()];
        self.element(&z, &z, a).expect("shape")
    }

    /// `T_A(x_0, y_0) + μ T_A(x_1, y_2) + μ T_A(x_2, y_1)`.
    pub fn trace_formula(&self, x: &CubicElement, y: &CubicElement) -> Scalar {
        let d = &self.input.data;
        let [x0, x1, x2] = self.components(x);
        let [y0, y1, y2] = self.components(y);
        let mixed = &d.btrace_generic(&x1, &y2) + &d.btrace_generic(&x2, &y1);
        &d.btrace_generic(&x0, &y0) + &(&self.mu * &mixed)
    }
}

/// `x = j_1 - 1` in `J(k, 1)` for a ring with `3 = 0`, where `x³ = 0` but
/// `x ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Char3Witness {
    pub algebra: Tits,
    pub x: CubicElement,
    pub square: CubicElement,
    pub cube: CubicElement,
}

pub fn char3_nilpotence_demo(k: &RingDescriptor) -> Result<Char3Witness> {
    if !k.from_i64(3).is_zero() {
        return Err(Error::Precondition(format!("3 is not zero in {k}")));
    }
    let algebra = tits(&k_assoc(k), &k.one())?;
    let x = algebra.j1().sub(&algebra.cubic().one())?;
    let (square, cube) = (x.power(2), x.power(3));
    Ok(Char3Witness { algebra, x, square, cube })
}

/// The isomorphism `J(A, N(p) μ) → J(A, μ)`,
/// `x_0 + x_1 j_1 + x_2 j_2 ↦ x_0 + (x_1 p) j_1 + (p♯ x_2) j_2`.
pub fn mu_rescale_map(a: &CubicAssocInput, mu: &Scalar, p: &[Scalar]) -> Result<CubicMap> {
    let d = &a.data;
    let np = d.norm_generic(p);
    if !np.is_unit() {
        return Err(Error::NotInvertible);
    }
    let source = tits(a, &(&np * mu))?;
    let target = tits(a, mu)?;
    let n = a.dim();
    let ps = d.sharp_generic(p);
    let k = d.ring();
    let cols: Vec<Vec<Scalar>> = (0..3 * n)
        .map(|idx| {
            let (block, i) = (idx / n, idx % n);
            let e = d.basis_coords(i);
            let image = match block {
                0 => e,
                1 => a.mul_generic(&e, p),
                _ => a.mul_generic(&ps, &e),
            };
            let mut col = vec![k.zero(); 3 * n];
            col[block * n..(block + 1) * n].clone_from_slice(&image);
            col
        })
        .collect();
    CubicMap::new(source.data.clone(), target.data.clone(), LinearMap { matrix: linalg::transpose(&cols) })
}

/// `J(Mat3(k), 1)`.
pub fn split_albert(k: &RingDescriptor) -> Result<Tits> {
    tits(&mat3(k), &k.one())
}

/// Isomorphism invariants of a cubic structure over a prime field read off
/// at an elementary idempotent `e`: the Peirce ranks, and exhaustive counts
/// over the subspace `E_2 ⊕ E_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub peirce_ranks: [usize; 3],
    pub trace_form_rank: usize,
    pub subspace_dim: usize,
    pub elementary_idempotents: u64,
    pub rank_one: u64,
    pub norm_histogram: BTreeMap<String, u64>,
}

pub fn diagnostics(e: &CubicElement) -> Result<Diagnostics> {
    let alg = e.algebra();
    let k = alg.ring().clone();
    let q = match k {
        RingDescriptor::PrimeField(p) => p,
        _ => return Err(Error::Precondition(format!("diagnostics need a prime field, got {k}"))),
    };
    if e.idem_class()? != IdemClass::Elementary {
        return Err(Error::Precondition(format!("{e} is not an elementary idempotent")));
    }
    let pe = e.peirce()?;
    let peirce_ranks = [
        linalg::rank(&k, &pe.e2.matrix)?,
        linalg::rank(&k, &pe.e1.matrix)?,
        linalg::rank(&k, &pe.e0.matrix)?,
    ];
    let trace_form_rank = linalg::rank(&k, &alg.trace_form())?;
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for proj in [&pe.e2, &pe.e0] {
        for col in linalg::transpose(&proj.matrix) {
            let mut trial = basis.clone();
            trial.push(col.clone());
            if linalg::rank(&k, &trial)? > basis.len() {
                basis = trial;
            }
        }
    }
    let dim = basis.len();
    let total = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total > 1 << 16 {
        return Err(Error::CostGuard(format!("{total} elements in E2 + E0")));
    }
    let mut out = Diagnostics {
        peirce_ranks,
        trace_form_rank,
        subspace_dim: dim,
        elementary_idempotents: 0,
        rank_one: 0,
        norm_histogram: BTreeMap::new(),
    };
    for idx in 0..total {
        let mut r = idx;
        let mut coords = vec![k.zero(); alg.dim()];
        for b in &basis {
            let c = k.from_i64((r % q as u128) as i64);
            r /= q as u128;
            for (x, y) in coords.iter_mut().zip(b) {
                *x = &*x + &(&c * y);
            }
        }
        let x = alg.element(coords)?;
        out.elementary_idempotents += u64::from(x.idem_class()? == IdemClass::Elementary);
        out.rank_one += u64::from(x.rank()? == 1);
        *out.norm_histogram.entry(x.norm().to_string()).or_insert(0) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tits_over_integers() {
        let k = RingDescriptor::Integers;
        let t = tits(&k_assoc(&k), &k.one()).unwrap();
        let x = t.cubic().from_ints(&[2, 3, 5]);
        assert_eq!(x.norm(), Scalar::int(8 + 27 + 125 - 90));
        assert_eq!(t.cubic().from_ints(&[1, 1, 1]).norm(), Scalar::int(0));
        assert!(t.cubic().validate_axioms(CheckMode::Strict).unwrap().holds());
    }

    #[test]
    fn char3() {
        let w = char3_nilpotence_demo(&RingDescriptor::PrimeField(3)).unwrap();
        assert!(w.cube.is_zero());
        assert!(!w.square.is_zero());
        assert!(char3_nilpotence_demo(&RingDescriptor::PrimeField(5)).is_err());
    }

    #[test]
    fn mat3_input() {
        let m = mat3(&RingDescriptor::Integers);
        assert_eq!(m.dim(), 9);
        let x: Vec<Scalar> = [2, 1, 0, 0, 3, 1, 1, 0, 1].iter().map(|&v| Scalar::int(v)).collect();
        assert_eq!(det3(&x), Scalar::int(7));
    }
}
