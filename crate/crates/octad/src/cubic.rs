//! Cubic norm structures: a base point `1`, a quadratic adjoint `x ↦ x♯` and
//! a cubic norm `N` on a free module, with `x♯♯ = N(x) x`, `N(1) = 1`,
//! `1♯ = 1` and the gradient and unit identities. Traces are derived from
//! the norm and the adjoint and never stored.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::coeff::{linear_form, Coeff, DualPair, Poly};
use crate::conic::format_coords;
use crate::error::{Error, Result};
use crate::identity::{
    self, btrace, cross, cubic_norm, cubic_norm_at, one, scale, sharp, trace, u_op, var, AlgebraOps,
    CheckMode, Identity, SExpr, Verdict, DEFAULT_SEED,
};
use crate::linalg::{LinearMap, Matrix};
use crate::quadform::QuadraticForm;
use crate::scalar::{RingDescriptor, Scalar};

/// Samples used when an identity is too large to expand.
pub const FALLBACK_SAMPLES: usize = 48;
/// Largest dimension for which the fundamental formula is expanded strictly.
pub const STRICT_FUNDAMENTAL_DIM: usize = 9;

#[derive(Clone, Debug, PartialEq)]
pub struct CubicData {
    name: String,
    ring: RingDescriptor,
    dim: usize,
    labels: Vec<String>,
    basepoint: Vec<Scalar>,
    sharp_basis: Vec<Vec<Scalar>>,
    /// `e_i × e_j` for `i < j`; pairs with zero cross product are omitted.
    cross_pairs: Vec<(usize, usize, Vec<Scalar>)>,
    /// `N(e_i)`.
    norm_diag: Vec<Scalar>,
    /// `(i, j, N(e_i; e_j))` for `i != j`, the coefficient of `ξ_i² ξ_j`.
    norm_dir: Vec<(usize, usize, Scalar)>,
    /// `(i, j, l, N(e_i, e_j, e_l))` for `i < j < l`.
    norm_triple: Vec<(usize, usize, usize, Scalar)>,
    cache: Cache,
}

#[derive(Clone, Debug, PartialEq)]
struct Cache {
    sharp_sparse: Vec<(usize, Vec<(usize, Scalar)>)>,
    cross_sparse: Vec<(usize, usize, Vec<(usize, Scalar)>)>,
    trace_coeffs: Vec<Scalar>,
    /// Nonzero `T(e_i, e_j)`.
    btrace: Vec<(usize, usize, Scalar)>,
}

fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn add_sparse<C: Coeff>(out: &mut [C], coeff: &C, entries: &[(usize, Scalar)]) {
    if coeff.is_zero() {
        return;
    }
    for (l, c) in entries {
        out[*l].add_assign(&coeff.scaled(c));
    }
}

impl CubicData {
    /// Builds a structure from its stored data. Only shapes, rings and the
    /// base point conditions `N(1) = 1`, `1♯ = 1` are checked here; the
    /// remaining axioms are the job of [`CubicData::validate_axioms`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        ring: RingDescriptor,
        labels: Vec<String>,
        basepoint: Vec<Scalar>,
        sharp_basis: Vec<Vec<Scalar>>,
        cross_pairs: Vec<(usize, usize, Vec<Scalar>)>,
        norm_diag: Vec<Scalar>,
        norm_dir: Vec<(usize, usize, Scalar)>,
        norm_triple: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let dim = basepoint.len();
        let check_len = |got: usize| {
            if got == dim {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected: dim, got })
            }
        };
        check_len(labels.len())?;
        check_len(sharp_basis.len())?;
        check_len(norm_diag.len())?;
        let check_ring = |c: &Scalar| {
            if c.in_ring(&ring) {
                Ok(())
            } else {
                Err(Error::RingMismatch(c.ring().to_string(), ring.to_string()))
            }
        };
        let check_index = |i: usize| {
            if i < dim {
                Ok(())
            } else {
                Err(Error::Precondition(format!("basis index {i} out of range for dimension {dim}")))
            }
        };
        for c in basepoint.iter().chain(&norm_diag) {
            check_ring(c)?;
        }
        for v in &sharp_basis {
            check_len(v.len())?;
            v.iter().try_for_each(check_ring)?;
        }
        for (i, j, v) in &cross_pairs {
            check_index(*j)?;
            if i >= j {
                return Err(Error::Precondition(format!("cross pair ({i}, {j}) is not ordered")));
            }
            check_len(v.len())?;
            v.iter().try_for_each(check_ring)?;
        }
        for (i, j, c) in &norm_dir {
            check_index(*i)?;
            check_index(*j)?;
            if i == j {
                return Err(Error::Precondition(format!("directional coefficient ({i}, {i})")));
            }
            check_ring(c)?;
        }
        for (i, j, l, c) in &norm_triple {
            check_index(*l)?;
            if !(i < j && j < l) {
                return Err(Error::Precondition(format!("norm triple ({i}, {j}, {l}) is not ordered")));
            }
            check_ring(c)?;
        }
        let mut data = CubicData {
            name: name.to_string(),
            ring: ring.clone(),
            dim,
            labels,
            basepoint,
            sharp_basis,
            cross_pairs: cross_pairs.into_iter().filter(|(_, _, v)| v.iter().any(|c| !c.is_zero())).collect(),
            norm_diag,
            norm_dir: norm_dir.into_iter().filter(|(_, _, c)| !c.is_zero()).collect(),
            norm_triple: norm_triple.into_iter().filter(|(_, _, _, c)| !c.is_zero()).collect(),
            cache: Cache {
                sharp_sparse: Vec::new(),
                cross_sparse: Vec::new(),
                trace_coeffs: Vec::new(),
                btrace: Vec::new(),
            },
        };
        data.fill_cache();
        if !data.norm_generic(&data.basepoint).is_one() {
            return Err(Error::Precondition("N(1) is not 1".into()));
        }
        if data.sharp_generic(&data.basepoint) != data.basepoint {
            return Err(Error::Precondition("1♯ is not 1".into()));
        }
        Ok(data)
    }

    fn fill_cache(&mut self) {
        let ring = &self.ring;
        self.cache.sharp_sparse = self
            .sharp_basis
            .iter()
            .enumerate()
            .map(|(i, v)| (i, sparse(v)))
            .filter(|(_, s)| !s.is_empty())
            .collect();
        self.cache.cross_sparse = self.cross_pairs.iter().map(|(i, j, v)| (*i, *j, sparse(v))).collect();
        self.cache.trace_coeffs = (0..self.dim)
            .map(|i| self.norm_at_generic(&self.basepoint, &self.basis_coords(i)))
            .collect();
        let mut bt = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let t = &self.cache.trace_coeffs;
                let cr = self.cross_generic(&self.basis_coords(i), &self.basis_coords(j));
                let v = &(&t[i] * &t[j]) - &linear_form(t, &cr, &ring.zero());
                if !v.is_zero() {
                    bt.push((i, j, v));
                }
            }
        }
        self.cache.btrace = bt;
    }

    /// Reads the stored data off polynomial laws for the adjoint and the
    /// norm, evaluated at the generic element `Σ t_i e_i`.
    pub fn from_laws(
        name: &str,
        ring: RingDescriptor,
        labels: Vec<String>,
        basepoint: Vec<Scalar>,
        sharp_law: impl Fn(&[Poly]) -> Vec<Poly>,
        norm_law: impl Fn(&[Poly]) -> Poly,
    ) -> Result<Self> {
        let dim = basepoint.len();
        if dim > 256 {
            return Err(Error::CostGuard(format!("dimension {dim} exceeds 256 generic variables")));
        }
        let generic: Vec<Poly> = (0..dim).map(|i| Poly::var(i as u8, ring.one())).collect();
        let sh = sharp_law(&generic);
        if sh.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: sh.len() });
        }
        let mut sharp_basis = vec![vec![ring.zero(); dim]; dim];
        let mut cross = std::collections::BTreeMap::new();
        for (l, p) in sh.iter().enumerate() {
            for (m, c) in p.terms() {
                match *m.vars() {
                    [i, j] if i == j => sharp_basis[i as usize][l] = c.clone(),
                    [i, j] => {
                        cross.entry((i as usize, j as usize)).or_insert_with(|| vec![ring.zero(); dim])[l] =
                            c.clone()
                    }
                    _ => return Err(Error::Precondition(format!("adjoint law of {name} is not quadratic"))),
                }
            }
        }
        let mut norm_diag = vec![ring.zero(); dim];
        let mut norm_dir = Vec::new();
        let mut norm_triple = Vec::new();
        for (m, c) in norm_law(&generic).terms() {
            match *m.vars() {
                [i, j, l] if i == j && j == l => norm_diag[i as usize] = c.clone(),
                [i, j, l] if i == j => norm_dir.push((i as usize, l as usize, c.clone())),
                [i, j, l] if j == l => norm_dir.push((j as usize, i as usize, c.clone())),
                [i, j, l] => norm_triple.push((i as usize, j as usize, l as usize, c.clone())),
                _ => return Err(Error::Precondition(format!("norm law of {name} is not cubic"))),
            }
        }
        let cross_pairs = cross.into_iter().map(|((i, j), v)| (i, j, v)).collect();
        CubicData::new(name, ring, labels, basepoint, sharp_basis, cross_pairs, norm_diag, norm_dir, norm_triple)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basepoint(&self) -> &[Scalar] {
        &self.basepoint
    }

    pub fn sharp_basis(&self) -> &[Vec<Scalar>] {
        &self.sharp_basis
    }

    pub fn cross_pairs(&self) -> &[(usize, usize, Vec<Scalar>)] {
        &self.cross_pairs
    }

    pub fn norm_diag(&self) -> &[Scalar] {
        &self.norm_diag
    }

    pub fn norm_dir(&self) -> &[(usize, usize, Scalar)] {
        &self.norm_dir
    }

    pub fn norm_triple(&self) -> &[(usize, usize, usize, Scalar)] {
        &self.norm_triple
    }

    pub fn basis_coords(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.ring.zero(); self.dim];
        v[i] = self.ring.one();
        v
    }

    /// Copy with `N(e_i)` replaced, for negative tests of the validator.
    pub fn with_norm_diag(&self, i: usize, value: Scalar) -> Result<CubicData> {
        let mut diag = self.norm_diag.clone();
        diag[i] = value;
        CubicData::new(
            &format!("{} (perturbed)", self.name),
            self.ring.clone(),
            self.labels.clone(),
            self.basepoint.clone(),
            self.sharp_basis.clone(),
            self.cross_pairs.clone(),
            diag,
            self.norm_dir.clone(),
            self.norm_triple.clone(),
        )
    }

    pub fn norm_generic<C: Coeff>(&self, x: &[C]) -> C {
        let zero = x[0].zero_like();
        let squares: Vec<C> = x.iter().map(|c| if c.is_zero() { zero.clone() } else { c.times(c) }).collect();
        let mut acc = zero.clone();
        for (i, d) in self.norm_diag.iter().enumerate() {
            if !d.is_zero() && !x[i].is_zero() {
                acc.add_assign(&squares[i].times(&x[i]).scaled(d));
            }
        }
        for (i, j, c) in &self.norm_dir {
            if !x[*i].is_zero() && !x[*j].is_zero() {
                acc.add_assign(&squares[*i].times(&x[*j]).scaled(c));
            }
        }
        for (i, j, l, c) in &self.norm_triple {
            if !x[*i].is_zero() && !x[*j].is_zero() && !x[*l].is_zero() {
                acc.add_assign(&x[*i].times(&x[*j]).times(&x[*l]).scaled(c));
            }
        }
        acc
    }

    pub fn sharp_generic<C: Coeff>(&self, x: &[C]) -> Vec<C> {
        let zero = x[0].zero_like();
        let mut out = vec![zero; self.dim];
        for (i, entries) in &self.cache.sharp_sparse {
            if !x[*i].is_zero() {
                add_sparse(&mut out, &x[*i].times(&x[*i]), entries);
            }
        }
        for (i, j, entries) in &self.cache.cross_sparse {
            if !x[*i].is_zero() && !x[*j].is_zero() {
                add_sparse(&mut out, &x[*i].times(&x[*j]), entries);
            }
        }
        out
    }

    pub fn cross_generic<C: Coeff>(&self, x: &[C], y: &[C]) -> Vec<C> {
        let zero = x[0].zero_like();
        let mut out = vec![zero; self.dim];
        for (i, entries) in &self.cache.sharp_sparse {
            if !x[*i].is_zero() && !y[*i].is_zero() {
                let p = x[*i].times(&y[*i]);
                add_sparse(&mut out, &p.plus(&p), entries);
            }
        }
        for (i, j, entries) in &self.cache.cross_sparse {
            let mut c = x[*i].zero_like();
            if !x[*i].is_zero() && !y[*j].is_zero() {
                c.add_assign(&x[*i].times(&y[*j]));
            }
            if !x[*j].is_zero() && !y[*i].is_zero() {
                c.add_assign(&x[*j].times(&y[*i]));
            }
            add_sparse(&mut out, &c, entries);
        }
        out
    }

    /// `N(x; y)`, the `ε`-coefficient of `N(x + εy)`.
    pub fn norm_at_generic<C: Coeff>(&self, x: &[C], y: &[C]) -> C {
        let z: Vec<DualPair<C>> =
            x.iter().zip(y).map(|(a, b)| DualPair { re: a.clone(), eps: b.clone() }).collect();
        self.norm_generic(&z).eps
    }

    pub fn trace_generic<C: Coeff>(&self, x: &[C]) -> C {
        linear_form(&self.cache.trace_coeffs, x, &x[0].zero_like())
    }

    pub fn btrace_generic<C: Coeff>(&self, x: &[C], y: &[C]) -> C {
        let mut acc = x[0].zero_like();
        for (i, j, c) in &self.cache.btrace {
            if !x[*i].is_zero() && !y[*j].is_zero() {
                acc.add_assign(&x[*i].times(&y[*j]).scaled(c));
            }
        }
        acc
    }

    /// `T(e_i)`.
    pub fn trace_coeffs(&self) -> &[Scalar] {
        &self.cache.trace_coeffs
    }

    /// Gram matrix of the bilinear trace on the basis.
    pub fn trace_form(&self) -> Matrix {
        let mut m = vec![vec![self.ring.zero(); self.dim]; self.dim];
        for (i, j, c) in &self.cache.btrace {
            m[*i][*j] = c.clone();
        }
        m
    }

    /// Checks the axioms. In strict mode each identity is expanded over basis
    /// multisets, except that the fundamental formula is sampled above
    /// dimension [`STRICT_FUNDAMENTAL_DIM`] and any identity over the strict
    /// budget falls back to sampling.
    pub fn validate_axioms(&self, mode: CheckMode) -> Result<Verdict> {
        for (id, strict_ok) in axiom_identities().into_iter().zip(self.strict_plan()) {
            let verdict = match mode {
                CheckMode::Strict if strict_ok => match identity::check_strict(self, &id) {
                    Err(Error::CostGuard(_)) => self.fallback(&id)?,
                    other => other?,
                },
                CheckMode::Strict => self.fallback(&id)?,
                sampled => identity::check(self, &id, sampled)?,
            };
            if !verdict.holds() {
                return Ok(verdict);
            }
        }
        Ok(Verdict::Holds)
    }

    /// Whether each axiom is expanded strictly in strict mode, in the order
    /// of [`axiom_identities`].
    pub fn strict_plan(&self) -> Vec<bool> {
        axiom_identities()
            .iter()
            .map(|id| {
                (id.name != FUNDAMENTAL || self.dim <= STRICT_FUNDAMENTAL_DIM)
                    && identity::strict_guard(id, self.dim).is_ok()
            })
            .collect()
    }

    fn fallback(&self, id: &Identity) -> Result<Verdict> {
        identity::check_sampled(self, id, FALLBACK_SAMPLES, DEFAULT_SEED)
    }

    pub fn to_json(&self) -> Value {
        let vec_json = |v: &[Scalar]| Value::Array(v.iter().map(Scalar::to_json).collect());
        json!({
            "name": self.name,
            "ring": self.ring.to_string(),
            "dim": self.dim,
            "labels": self.labels,
            "basepoint": vec_json(&self.basepoint),
            "sharp_basis": self.sharp_basis.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
            "cross_pairs": self
                .cross_pairs
                .iter()
                .map(|(i, j, v)| json!([i, j, vec_json(v)]))
                .collect::<Vec<_>>(),
            "norm_diag": vec_json(&self.norm_diag),
            "norm_dir": self.norm_dir.iter().map(|(i, j, c)| json!([i, j, c.to_json()])).collect::<Vec<_>>(),
            "norm_triple": self
                .norm_triple
                .iter()
                .map(|(i, j, l, c)| json!([i, j, l, c.to_json()]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<CubicData> {
        let bad = |what: &str| Error::Parse(format!("cubic data: bad or missing {what}"));
        let field = |k: &str| v.get(k).ok_or_else(|| bad(k));
        let ring = RingDescriptor::parse(field("ring")?.as_str().ok_or_else(|| bad("ring"))?)?;
        let arr = |x: &Value, what: &str| x.as_array().cloned().ok_or_else(|| bad(what));
        let scalars = |x: &Value, what: &str| -> Result<Vec<Scalar>> {
            arr(x, what)?.iter().map(|c| Scalar::from_json(&ring, c)).collect()
        };
        let index = |x: &Value, what: &str| -> Result<usize> {
            x.as_u64().map(|i| i as usize).ok_or_else(|| bad(what))
        };
        let name = field("name")?.as_str().ok_or_else(|| bad("name"))?;
        let labels = arr(field("labels")?, "labels")?
            .iter()
            .map(|l| l.as_str().map(str::to_string).ok_or_else(|| bad("labels")))
            .collect::<Result<Vec<_>>>()?;
        let basepoint = scalars(field("basepoint")?, "basepoint")?;
        let sharp_basis = arr(field("sharp_basis")?, "sharp_basis")?
            .iter()
            .map(|r| scalars(r, "sharp_basis"))
            .collect::<Result<Vec<_>>>()?;
        let cross_pairs = arr(field("cross_pairs")?, "cross_pairs")?
            .iter()
            .map(|e| {
                let e = arr(e, "cross_pairs")?;
                if e.len() != 3 {
                    return Err(bad("cross_pairs"));
                }
                Ok((index(&e[0], "cross_pairs")?, index(&e[1], "cross_pairs")?, scalars(&e[2], "cross_pairs")?))
            })
            .collect::<Result<Vec<_>>>()?;
        let norm_diag = scalars(field("norm_diag")?, "norm_diag")?;
        let norm_dir = arr(field("norm_dir")?, "norm_dir")?
            .iter()
            .map(|e| {
                let e = arr(e, "norm_dir")?;
                if e.len() != 3 {
                    return Err(bad("norm_dir"));
                }
                Ok((index(&e[0], "norm_dir")?, index(&e[1], "norm_dir")?, Scalar::from_json(&ring, &e[2])?))
            })
            .collect::<Result<Vec<_>>>()?;
        let norm_triple = arr(field("norm_triple")?, "norm_triple")?
            .iter()
            .map(|e| {
                let e = arr(e, "norm_triple")?;
                if e.len() != 4 {
                    return Err(bad("norm_triple"));
                }
                Ok((
                    index(&e[0], "norm_triple")?,
                    index(&e[1], "norm_triple")?,
                    index(&e[2], "norm_triple")?,
                    Scalar::from_json(&ring, &e[3])?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let data = CubicData::new(
            name,
            ring,
            labels,
            basepoint,
            sharp_basis,
            cross_pairs,
            norm_diag,
            norm_dir,
            norm_triple,
        )?;
        if let Some(d) = v.get("dim").and_then(Value::as_u64) {
            if d as usize != data.dim {
                return Err(Error::DimensionMismatch { expected: d as usize, got: data.dim });
            }
        }
        Ok(data)
    }
}

impl AlgebraOps for CubicData {
    fn ring(&self) -> &RingDescriptor {
        &self.ring
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn unit(&self) -> &[Scalar] {
        &self.basepoint
    }
    fn op_trace<C: Coeff>(&self, x: &[C]) -> Result<C> {
        Ok(self.trace_generic(x))
    }
    fn op_sharp<C: Coeff>(&self, x: &[C]) -> Result<Vec<C>> {
        Ok(self.sharp_generic(x))
    }
    fn op_cross<C: Coeff>(&self, x: &[C], y: &[C]) -> Result<Vec<C>> {
        Ok(self.cross_generic(x, y))
    }
    fn op_cubic_norm<C: Coeff>(&self, x: &[C]) -> Result<C> {
        Ok(self.norm_generic(x))
    }
    fn op_cubic_norm_at<C: Coeff>(&self, x: &[C], y: &[C]) -> Result<C> {
        Ok(self.norm_at_generic(x, y))
    }
    fn op_bilinear_trace<C: Coeff>(&self, x: &[C], y: &[C]) -> Result<C> {
        Ok(self.btrace_generic(x, y))
    }
}

const FUNDAMENTAL: &str = "fundamental formula";

/// The identities checked by [`CubicData::validate_axioms`], in order.
pub fn axiom_identities() -> Vec<Identity> {
    let (x, y, z) = (var(0), var(1), var(2));
    vec![
        Identity::scalar("unit norm", cubic_norm(one()), SExpr::Int(1)),
        Identity::vector("unit adjoint", sharp(one()), one()),
        Identity::vector("adjoint identity", sharp(sharp(x.clone())), scale(cubic_norm(x.clone()), x.clone())),
        Identity::scalar(
            "gradient identity",
            cubic_norm_at(x.clone(), y.clone()),
            btrace(sharp(x.clone()), y.clone()),
        ),
        Identity::vector("unit identity", cross(one(), y.clone()), scale(trace(y.clone()), one()) - y.clone()),
        Identity::vector(
            "adjoint cross identity",
            cross(sharp(x.clone()), cross(x.clone(), y.clone())),
            scale(btrace(sharp(x.clone()), y.clone()), x.clone()) + scale(cubic_norm(x.clone()), y.clone()),
        ),
        Identity::vector(
            "linearized adjoint identity",
            sharp(cross(x.clone(), y.clone())) + cross(sharp(x.clone()), sharp(y.clone())),
            scale(btrace(sharp(x.clone()), y.clone()), y.clone())
                + scale(btrace(x.clone(), sharp(y.clone())), x.clone()),
        ),
        Identity::vector(
            FUNDAMENTAL,
            u_op(u_op(x.clone(), y.clone()), z.clone()),
            u_op(x.clone(), u_op(y.clone(), u_op(x, z))),
        ),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdemClass {
    Zero,
    Elementary,
    CoElementary,
    Unit,
    NotIdempotent,
}

/// Peirce projections `E_2 = U_e`, `E_0 = U_{1-e}`, `E_1 = id - E_2 - E_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Peirce {
    pub e2: LinearMap,
    pub e1: LinearMap,
    pub e0: LinearMap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicElement {
    alg: Arc<CubicData>,
    coords: Vec<Scalar>,
}

pub trait CubicHandle {
    fn element(&self, coords: Vec<Scalar>) -> Result<CubicElement>;
    fn from_ints(&self, coords: &[i64]) -> CubicElement;
    fn basis(&self, i: usize) -> CubicElement;
    fn one(&self) -> CubicElement;
    fn zero(&self) -> CubicElement;
}

impl CubicHandle for Arc<CubicData> {
    fn element(&self, coords: Vec<Scalar>) -> Result<CubicElement> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: coords.len() });
        }
        if let Some(c) = coords.iter().find(|c| !c.in_ring(&self.ring)) {
            return Err(Error::RingMismatch(c.ring().to_string(), self.ring.to_string()));
        }
        Ok(CubicElement { alg: self.clone(), coords })
    }

    fn from_ints(&self, coords: &[i64]) -> CubicElement {
        assert_eq!(coords.len(), self.dim, "coordinate count");
        CubicElement { alg: self.clone(), coords: coords.iter().map(|&v| self.ring.from_i64(v)).collect() }
    }

    fn basis(&self, i: usize) -> CubicElement {
        CubicElement { alg: self.clone(), coords: self.basis_coords(i) }
    }

    fn one(&self) -> CubicElement {
        CubicElement { alg: self.clone(), coords: self.basepoint.clone() }
    }

    fn zero(&self) -> CubicElement {
        CubicElement { alg: self.clone(), coords: vec![self.ring.zero(); self.dim] }
    }
}

impl CubicElement {
    pub fn algebra(&self) -> &Arc<CubicData> {
        &self.alg
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    fn same_algebra(&self, other: &CubicElement) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "elements of different algebras {} and {}",
                self.alg.name, other.alg.name
            )))
        }
    }

    fn with(&self, coords: Vec<Scalar>) -> CubicElement {
        CubicElement { alg: self.alg.clone(), coords }
    }

    fn one(&self) -> CubicElement {
        self.with(self.alg.basepoint.clone())
    }

    pub fn add(&self, other: &CubicElement) -> Result<CubicElement> {
        self.same_algebra(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &CubicElement) -> Result<CubicElement> {
        self.same_algebra(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: &Scalar) -> CubicElement {
        self.with(self.coords.iter().map(|a| a.scaled(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn sharp(&self) -> CubicElement {
        self.with(self.alg.sharp_generic(&self.coords))
    }

    pub fn cross(&self, other: &CubicElement) -> Result<CubicElement> {
        self.same_algebra(other)?;
        Ok(self.with(self.alg.cross_generic(&self.coords, &other.coords)))
    }

    pub fn norm(&self) -> Scalar {
        self.alg.norm_generic(&self.coords)
    }

    /// `N(x; y)`.
    pub fn norm_at(&self, y: &CubicElement) -> Result<Scalar> {
        self.same_algebra(y)?;
        Ok(self.alg.norm_at_generic(&self.coords, &y.coords))
    }

    /// `T(x) = N(1; x)`.
    pub fn trace(&self) -> Scalar {
        self.alg.trace_generic(&self.coords)
    }

    /// `S(x) = T(x♯)`.
    pub fn quadratic_trace(&self) -> Scalar {
        self.sharp().trace()
    }

    /// `S(x, y) = T(x × y)`.
    pub fn quadratic_trace_polar(&self, y: &CubicElement) -> Result<Scalar> {
        Ok(self.cross(y)?.trace())
    }

    /// `T(x, y) = T(x) T(y) - S(x, y)`.
    pub fn bilinear_trace(&self, y: &CubicElement) -> Result<Scalar> {
        self.same_algebra(y)?;
        Ok(self.alg.btrace_generic(&self.coords, &y.coords))
    }

    /// `U_x y = T(x, y) x - x♯ × y`.
    pub fn u_op(&self, y: &CubicElement) -> Result<CubicElement> {
        let t = self.bilinear_trace(y)?;
        self.scale(&t).sub(&self.sharp().cross(y)?)
    }

    /// `{x y z} = T(x, y) z + T(z, y) x - (x × z) × y`.
    pub fn triple(&self, y: &CubicElement, z: &CubicElement) -> Result<CubicElement> {
        let a = z.scale(&self.bilinear_trace(y)?);
        let b = self.scale(&z.bilinear_trace(y)?);
        a.add(&b)?.sub(&self.cross(z)?.cross(y)?)
    }

    /// `x^2 = U_x 1`.
    pub fn square(&self) -> CubicElement {
        self.u_op(&self.one()).expect("same algebra")
    }

    /// `x^0 = 1`, `x^1 = x`, `x^n = U_x x^{n-2}`.
    pub fn power(&self, n: u32) -> CubicElement {
        match n {
            0 => self.one(),
            1 => self.clone(),
            _ => self.u_op(&self.power(n - 2)).expect("same algebra"),
        }
    }

    /// `N(x)^{-1} x♯` when `N(x)` is a unit.
    pub fn try_inverse(&self) -> Result<CubicElement> {
        let inv = self.norm().try_invert().map_err(|_| Error::NotInvertible)?;
        Ok(self.sharp().scale(&inv))
    }

    pub fn is_invertible(&self) -> bool {
        self.norm().is_unit()
    }

    /// 0 for zero, 1 if `x♯ = 0`, 2 if `N(x) = 0`, 3 otherwise. Needs a field.
    pub fn rank(&self) -> Result<u8> {
        if !self.alg.ring.is_field() {
            return Err(Error::Precondition(format!("rank needs a field, got {}", self.alg.ring)));
        }
        Ok(if self.is_zero() {
            0
        } else if self.sharp().is_zero() {
            1
        } else if self.norm().is_zero() {
            2
        } else {
            3
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.square() == *self
    }

    fn require_idempotent(&self) -> Result<()> {
        if self.is_idempotent() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{self} is not idempotent")))
        }
    }

    /// `(ε⁰, ε¹, ε², ε³)` with `ε³ = N(e)`, `ε² = S(e) - 3N(e)`,
    /// `ε¹ = T(e) - 2S(e) + 3N(e)` and `ε⁰ = 1 - ε¹ - ε² - ε³`, checked to be
    /// a complete orthogonal system of idempotents in the base ring.
    pub fn idempotent_split(&self) -> Result<[Scalar; 4]> {
        self.require_idempotent()?;
        let k = &self.alg.ring;
        let (t, s, n) = (self.trace(), self.quadratic_trace(), self.norm());
        let (two, three) = (k.from_i64(2), k.from_i64(3));
        let e3 = n.clone();
        let e2 = &s - &(&three * &n);
        let e1 = &(&t - &(&two * &s)) + &(&three * &n);
        let e0 = &(&(&k.one() - &e1) - &e2) - &e3;
        let split = [e0, e1, e2, e3];
        for (a, x) in split.iter().enumerate() {
            for (b, y) in split.iter().enumerate() {
                let p = x * y;
                let ok = if a == b { p == *x } else { p.is_zero() };
                if !ok {
                    return Err(Error::Precondition(format!(
                        "idempotent split of {self} is not orthogonal; the axioms fail"
                    )));
                }
            }
        }
        Ok(split)
    }

    /// Classifies an idempotent by its split. Over a ring with nontrivial
    /// idempotents a split that is not concentrated in one slot has no single
    /// class and is reported as an error.
    pub fn idem_class(&self) -> Result<IdemClass> {
        if !self.is_idempotent() {
            return Ok(IdemClass::NotIdempotent);
        }
        let split = self.idempotent_split()?;
        let hot: Vec<usize> = (0..4).filter(|&m| split[m].is_one()).collect();
        if hot.len() != 1 {
            return Err(Error::Precondition(format!(
                "{self} splits as ({}, {}, {}, {}) over {}; no single class",
                split[0], split[1], split[2], split[3], self.alg.ring
            )));
        }
        Ok([IdemClass::Zero, IdemClass::Elementary, IdemClass::CoElementary, IdemClass::Unit][hot[0]])
    }

    /// Matrix of `y ↦ U_x y` (column `j` is `U_x e_j`).
    pub fn u_matrix(&self) -> LinearMap {
        let alg = &self.alg;
        let cols: Vec<Vec<Scalar>> = (0..alg.dim)
            .map(|j| self.u_op(&alg.basis(j)).expect("same algebra").coords)
            .collect();
        LinearMap { matrix: crate::linalg::transpose(&cols) }
    }

    pub fn peirce(&self) -> Result<Peirce> {
        self.require_idempotent()?;
        let e2 = self.u_matrix();
        let e0 = self.one().sub(self)?.u_matrix();
        let id = crate::linalg::identity(&self.alg.ring, self.alg.dim);
        let e1 = LinearMap {
            matrix: (0..self.alg.dim)
                .map(|i| {
                    (0..self.alg.dim)
                        .map(|j| &(&id[i][j] - &e2.matrix[i][j]) - &e0.matrix[i][j])
                        .collect()
                })
                .collect(),
        };
        Ok(Peirce { e2, e1, e0 })
    }
}

impl fmt::Display for CubicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_coords(&self.coords, &self.alg.labels))
    }
}

/// A linear map between cubic norm structures given by its matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicMap {
    pub source: Arc<CubicData>,
    pub target: Arc<CubicData>,
    pub map: LinearMap,
}

impl CubicMap {
    /// Checks that `map` is bijective and preserves the base point and the
    /// adjoint, which makes it an isomorphism of cubic Jordan algebras.
    pub fn new(source: Arc<CubicData>, target: Arc<CubicData>, map: LinearMap) -> Result<Self> {
        verify_cubic_map(&source, &target, &map)?;
        Ok(CubicMap { source, target, map })
    }

    pub fn apply(&self, x: &CubicElement) -> Result<CubicElement> {
        if x.alg.as_ref() != self.source.as_ref() {
            return Err(Error::Precondition(format!("{x} is not in {}", self.source.name)));
        }
        self.target.element(self.map.apply(&x.coords))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CubicMap) -> Result<CubicMap> {
        if first.target != self.source {
            return Err(Error::Precondition("maps do not compose".into()));
        }
        let map = self.map.compose(&first.map, &self.source.ring)?;
        Ok(CubicMap { source: first.source.clone(), target: self.target.clone(), map })
    }
}

pub fn verify_cubic_map(source: &CubicData, target: &CubicData, map: &LinearMap) -> Result<()> {
    let (n, m) = (source.dim, target.dim);
    if map.matrix.len() != m || map.matrix.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: m, got: map.matrix.len() });
    }
    if n != m || !crate::linalg::det(&source.ring, &map.matrix)?.is_unit() {
        return Err(Error::Precondition("map is not bijective".into()));
    }
    if map.apply(&source.basepoint) != target.basepoint {
        return Err(Error::Precondition("map does not preserve the base point".into()));
    }
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| map.apply(&source.basis_coords(i))).collect();
    for i in 0..n {
        for j in i..n {
            let (lhs, rhs) = if i == j {
                (map.apply(&source.sharp_generic(&source.basis_coords(i))), target.sharp_generic(&images[i]))
            } else {
                (
                    map.apply(&source.cross_generic(&source.basis_coords(i), &source.basis_coords(j))),
                    target.cross_generic(&images[i], &images[j]),
                )
            };
            if lhs != rhs {
                return Err(Error::Precondition(format!(
                    "map does not preserve the adjoint on ({}, {})",
                    source.labels[i], source.labels[j]
                )));
            }
        }
    }
    Ok(())
}

/// The base ring with `N(x) = x^3` and `x♯ = x^2`.
pub fn k_cubic(k: &RingDescriptor) -> Arc<CubicData> {
    let data = CubicData::new(
        &format!("{k} (cubic)"),
        k.clone(),
        vec!["1".into()],
        vec![k.one()],
        vec![vec![k.one()]],
        Vec::new(),
        vec![k.one()],
        Vec::new(),
        Vec::new(),
    )
    .expect("k is a cubic norm structure");
    Arc::new(data)
}

/// `k³` with `N(x) = x1 x2 x3` and `x♯ = (x2 x3, x1 x3, x1 x2)`.
pub fn split_cubic_etale(k: &RingDescriptor) -> Arc<CubicData> {
    let unit_vec = |i: usize| {
        let mut v = vec![k.zero(); 3];
        v[i] = k.one();
        v
    };
    let data = CubicData::new(
        &format!("{k}^3"),
        k.clone(),
        vec!["c1".into(), "c2".into(), "c3".into()],
        vec![k.one(); 3],
        vec![vec![k.zero(); 3]; 3],
        vec![(0, 1, unit_vec(2)), (0, 2, unit_vec(1)), (1, 2, unit_vec(0))],
        vec![k.zero(); 3],
        Vec::new(),
        vec![(0, 1, 2, k.one())],
    )
    .expect("split cubic etale algebra");
    Arc::new(data)
}

/// `k × k` on the basis `(c, d)` with `N(ξ1 c + ξ2 d) = ξ1 ξ2²` and
/// `(ξ1 c + ξ2 d)♯ = ξ2² c + ξ1 ξ2 d`.
pub fn kk_cubic(k: &RingDescriptor) -> Arc<CubicData> {
    let data = CubicData::new(
        &format!("{k} x {k} (cubic)"),
        k.clone(),
        vec!["c".into(), "d".into()],
        vec![k.one(), k.one()],
        vec![vec![k.zero(), k.zero()], vec![k.one(), k.zero()]],
        vec![(0, 1, vec![k.zero(), k.one()])],
        vec![k.zero(), k.zero()],
        vec![(1, 0, k.one())],
        Vec::new(),
    )
    .expect("k x k cubic structure");
    Arc::new(data)
}

fn check_pointed(q: &QuadraticForm, e: &[Scalar]) -> Result<()> {
    if e.len() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), got: e.len() });
    }
    if !q.eval(e)?.is_one() {
        return Err(Error::Precondition("base point must have q(e) = 1".into()));
    }
    Ok(())
}

/// `k ⊕ M` for a pointed quadratic module `(M, q, e)`, with
/// `N(r, u) = r q(u)` and `(r, u)♯ = (q(u), r ū)` where `ū = Dq(e, u) e - u`.
pub fn hat_pointed(q: &QuadraticForm, e: &[Scalar]) -> Result<Arc<CubicData>> {
    check_pointed(q, e)?;
    let k = q.ring().clone();
    let m = q.dim();
    let mut labels = vec!["r".to_string()];
    labels.extend((1..=m).map(|i| format!("u{i}")));
    let mut basepoint = vec![k.one()];
    basepoint.extend(e.iter().cloned());
    let bar = |u: &[Poly]| -> Vec<Poly> {
        let zero = Poly::zero();
        let el: Vec<Poly> = e.iter().map(|c| zero.lifted(c)).collect();
        let d = q.polar_generic(&el, u);
        el.iter().zip(u).map(|(ei, ui)| ei.times(&d).minus(ui)).collect()
    };
    let data = CubicData::from_laws(
        &format!("hat({k}^{m})"),
        k,
        labels,
        basepoint,
        |x| {
            let (r, u) = (&x[0], &x[1..]);
            let mut out = vec![q.eval_generic(u)];
            out.extend(bar(u).iter().map(|c| c.times(r)));
            out
        },
        |x| x[0].times(&q.eval_generic(&x[1..])),
    )?;
    Ok(Arc::new(data))
}

/// A degree-2 Jordan structure on a pointed quadratic module, with
/// `U_x y = Dq(x, ȳ) x - q(x) ȳ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointedQuadraticJordan {
    q: QuadraticForm,
    e: Vec<Scalar>,
}

pub fn pointed_quadratic_jordan(q: &QuadraticForm, e: &[Scalar]) -> Result<PointedQuadraticJordan> {
    check_pointed(q, e)?;
    Ok(PointedQuadraticJordan { q: q.clone(), e: e.to_vec() })
}

impl PointedQuadraticJordan {
    pub fn form(&self) -> &QuadraticForm {
        &self.q
    }

    pub fn basepoint(&self) -> &[Scalar] {
        &self.e
    }

    fn check(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.q.dim() {
            return Err(Error::DimensionMismatch { expected: self.q.dim(), got: x.len() });
        }
        Ok(())
    }

    /// `x̄ = Dq(e, x) e - x`.
    pub fn conj(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check(x)?;
        let d = self.q.polar(&self.e, x)?;
        Ok(self.e.iter().zip(x).map(|(ei, xi)| &(ei * &d) - xi).collect())
    }

    pub fn u_op(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check(x)?;
        let yb = self.conj(y)?;
        let d = self.q.polar(x, &yb)?;
        let n = self.q.eval(x)?;
        Ok(x.iter().zip(&yb).map(|(xi, yi)| &(xi * &d) - &(yi * &n)).collect())
    }

    /// `x^2 = U_x e`.
    pub fn square(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.u_op(x, &self.e)
    }

    /// `q(x)^{-1} x̄` when `q(x)` is a unit.
    pub fn try_inverse(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let inv = self.q.eval(x)?.try_invert().map_err(|_| Error::NotInvertible)?;
        Ok(self.conj(x)?.iter().map(|c| c * &inv).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_etale_examples() {
        let a = split_cubic_etale(&RingDescriptor::Integers);
        let x = a.from_ints(&[2, 3, 5]);
        assert_eq!(x.sharp(), a.from_ints(&[15, 10, 6]));
        assert_eq!(a.basis(0).cross(&a.basis(1)).unwrap(), a.basis(2));
        assert_eq!(x.trace(), Scalar::int(10));
        assert_eq!(x.quadratic_trace(), Scalar::int(31));
        assert_eq!(x.norm(), Scalar::int(30));
        assert_eq!(x.u_op(&a.one()).unwrap(), a.from_ints(&[4, 9, 25]));
    }

    #[test]
    fn laws_round_trip() {
        let a = split_cubic_etale(&RingDescriptor::Rationals);
        let b = CubicData::from_laws(
            a.name(),
            a.ring().clone(),
            a.labels().to_vec(),
            a.basepoint().to_vec(),
            |x| a.sharp_generic(x),
            |x| a.norm_generic(x),
        )
        .unwrap();
        assert_eq!(*a, b);
    }

    #[test]
    fn constructors_validate() {
        let k = RingDescriptor::Rationals;
        for a in [k_cubic(&k), split_cubic_etale(&k), kk_cubic(&k)] {
            assert!(a.validate_axioms(CheckMode::Strict).unwrap().holds(), "{}", a.name());
        }
    }
}
