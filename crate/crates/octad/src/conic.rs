//! Conic algebras: unital algebras on a free module with a quadratic norm `n`
//! satisfying `x^2 - t(x) x + n(x) 1 = 0`, where `t(x) = Dn(1, x)`.

use std::fmt;
use std::ops;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::coeff::{linear_form, Coeff};
use crate::error::{Error, Result};
use crate::identity::{
    self, conj, norm, norm_polar, one, scale, trace, var, AlgebraOps, CheckMode, Equation,
    Identity, Verdict,
};
use crate::quadform::QuadraticForm;
use crate::scalar::{RingDescriptor, Scalar};

/// Extra data remembered by algebras built as `Cay(base, mu)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Doubling {
    pub base: Arc<ConicAlgebra>,
    pub mu: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConicAlgebra {
    name: String,
    ring: RingDescriptor,
    dim: usize,
    table: Vec<Vec<Vec<Scalar>>>,
    sparse: Vec<(usize, usize, Vec<(usize, Scalar)>)>,
    unit: Vec<Scalar>,
    norm: QuadraticForm,
    trace_coeffs: Vec<Scalar>,
    labels: Vec<String>,
    doubling: Option<Doubling>,
}

impl ConicAlgebra {
    /// Builds and validates a conic algebra from structure constants
    /// (`table[i][j]` = coordinates of `e_i e_j`), unit and norm.
    pub fn new(
        name: &str,
        ring: RingDescriptor,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        norm: QuadraticForm,
        labels: Vec<String>,
    ) -> Result<Self> {
        let dim = unit.len();
        let check_len = |got: usize| {
            if got == dim {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected: dim, got })
            }
        };
        check_len(table.len())?;
        check_len(norm.dim())?;
        check_len(labels.len())?;
        if norm.ring() != &ring {
            return Err(Error::RingMismatch(norm.ring().to_string(), ring.to_string()));
        }
        let mut sparse = Vec::new();
        for (i, row) in table.iter().enumerate() {
            check_len(row.len())?;
            for (j, prod) in row.iter().enumerate() {
                check_len(prod.len())?;
                let mut entries = Vec::new();
                for (l, c) in prod.iter().enumerate() {
                    if !c.in_ring(&ring) {
                        return Err(Error::RingMismatch(c.ring().to_string(), ring.to_string()));
                    }
                    if !c.is_zero() {
                        entries.push((l, c.clone()));
                    }
                }
                if !entries.is_empty() {
                    sparse.push((i, j, entries));
                }
            }
        }
        let polar_unit: Vec<Scalar> = (0..dim)
            .map(|i| {
                let mut e = vec![ring.zero(); dim];
                e[i] = ring.one();
                norm.polar_generic(&unit, &e)
            })
            .collect();
        let alg = ConicAlgebra {
            name: name.to_string(),
            ring: ring.clone(),
            dim,
            table,
            sparse,
            unit,
            norm,
            trace_coeffs: polar_unit,
            labels,
            doubling: None,
        };
        for i in 0..dim {
            let e = alg.basis_coords(i);
            if alg.mul_coords(&alg.unit, &e) != e || alg.mul_coords(&e, &alg.unit) != e {
                return Err(Error::Precondition(format!("unit does not fix {}", alg.labels[i])));
            }
        }
        if !alg.norm.eval_generic(&alg.unit).is_one() {
            return Err(Error::Precondition("norm of the unit is not 1".into()));
        }
        if !identity::check_strict(&alg, &ConicIdentity::Degree2.identity())?.holds() {
            return Err(Error::Precondition(format!("{name} violates x^2 - t(x)x + n(x)1 = 0")));
        }
        Ok(alg)
    }

    pub(crate) fn with_doubling(mut self, d: Doubling) -> Self {
        self.doubling = Some(d);
        self
    }

    pub fn doubling(&self) -> Option<&Doubling> {
        self.doubling.as_ref()
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

    pub fn unit_coords(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn norm_form(&self) -> &QuadraticForm {
        &self.norm
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn basis_coords(&self, i: usize) -> Vec<Scalar> {
        let mut e = vec![self.ring.zero(); self.dim];
        e[i] = self.ring.one();
        e
    }

    pub fn mul_coords<C: Coeff>(&self, x: &[C], y: &[C]) -> Vec<C> {
        let zero = x[0].zero_like();
        let mut out = vec![zero; self.dim];
        for (i, j, entries) in &self.sparse {
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

    pub fn trace_coords<C: Coeff>(&self, x: &[C]) -> C {
        linear_form(&self.trace_coeffs, x, &x[0].zero_like())
    }

    pub fn conj_coords<C: Coeff>(&self, x: &[C]) -> Vec<C> {
        let t = self.trace_coords(x);
        x.iter()
            .zip(&self.unit)
            .map(|(xi, ui)| if ui.is_zero() { xi.negated() } else { t.scaled(ui).minus(xi) })
            .collect()
    }

    pub fn norm_coords<C: Coeff>(&self, x: &[C]) -> C {
        self.norm.eval_generic(x)
    }

    pub fn polar_coords<C: Coeff>(&self, x: &[C], y: &[C]) -> C {
        self.norm.polar_generic(x, y)
    }

    pub fn to_json(&self) -> Value {
        let table: Vec<Value> = self
            .table
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|p| Value::Array(p.iter().map(Scalar::to_json).collect()))
                        .collect(),
                )
            })
            .collect();
        let norm_coeffs: Vec<Value> = self
            .norm
            .coeffs()
            .iter()
            .map(|r| Value::Array(r.iter().map(Scalar::to_json).collect()))
            .collect();
        json!({
            "name": self.name,
            "ring": self.ring.to_string(),
            "dim": self.dim,
            "labels": self.labels,
            "unit": self.unit.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "table": table,
            "norm_coeffs": norm_coeffs,
        })
    }

    /// Multiplication table as a text grid; row `i`, column `j` shows `e_i e_j`.
    pub fn table_text(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| format_coords(&self.table[i][j], &self.labels)).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|c| c.chars().count())
            .chain(self.labels.iter().map(|l| l.chars().count()))
            .max()
            .unwrap_or(1);
        let pad = |s: &str| format!("{s:>width$}");
        let mut out = String::new();
        out.push_str(&pad(""));
        out.push_str(" |");
        for l in &self.labels {
            out.push(' ');
            out.push_str(&pad(l));
        }
        out.push('\n');
        out.push_str(&"-".repeat((width + 1) * (self.dim + 1) + 1));
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            out.push_str(&pad(&self.labels[i]));
            out.push_str(" |");
            for c in row {
                out.push(' ');
                out.push_str(&pad(c));
            }
            out.push('\n');
        }
        out
    }
}

/// Renders coordinates as a combination of labels, e.g. `-u5` or `1/2*u1 + u3`.
pub fn format_coords(coords: &[Scalar], labels: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (c, l) in coords.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let term = if c.is_one() {
            l.clone()
        } else if c.is_minus_one() {
            format!("-{l}")
        } else {
            format!("{c}*{l}")
        };
        parts.push(term);
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}

impl AlgebraOps for ConicAlgebra {
    fn ring(&self) -> &RingDescriptor {
        &self.ring
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn unit(&self) -> &[Scalar] {
        &self.unit
    }
    fn op_mul<C: Coeff>(&self, x: &[C], y: &[C]) -> Result<Vec<C>> {
        Ok(self.mul_coords(x, y))
    }
    fn op_conj<C: Coeff>(&self, x: &[C]) -> Result<Vec<C>> {
        Ok(self.conj_coords(x))
    }
    fn op_trace<C: Coeff>(&self, x: &[C]) -> Result<C> {
        Ok(self.trace_coords(x))
    }
    fn op_norm<C: Coeff>(&self, x: &[C]) -> Result<C> {
        Ok(self.norm_coords(x))
    }
    fn op_norm_polar<C: Coeff>(&self, x: &[C], y: &[C]) -> Result<C> {
        Ok(self.polar_coords(x, y))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConicElement {
    alg: Arc<ConicAlgebra>,
    coords: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicIdempotent {
    Zero,
    Elementary,
    /// The unit element.
    Invertible,
    NotIdempotent,
}

pub trait ConicHandle {
    fn element(&self, coords: Vec<Scalar>) -> Result<ConicElement>;
    fn from_ints(&self, coords: &[i64]) -> ConicElement;
    fn basis(&self, i: usize) -> ConicElement;
    fn one(&self) -> ConicElement;
    fn zero(&self) -> ConicElement;
}

impl ConicHandle for Arc<ConicAlgebra> {
    fn element(&self, coords: Vec<Scalar>) -> Result<ConicElement> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: coords.len() });
        }
        if let Some(c) = coords.iter().find(|c| !c.in_ring(&self.ring)) {
            return Err(Error::RingMismatch(c.ring().to_string(), self.ring.to_string()));
        }
        Ok(ConicElement { alg: self.clone(), coords })
    }

    fn from_ints(&self, coords: &[i64]) -> ConicElement {
        assert_eq!(coords.len(), self.dim, "coordinate count");
        ConicElement { alg: self.clone(), coords: coords.iter().map(|&v| self.ring.from_i64(v)).collect() }
    }

    fn basis(&self, i: usize) -> ConicElement {
        ConicElement { alg: self.clone(), coords: self.basis_coords(i) }
    }

    fn one(&self) -> ConicElement {
        ConicElement { alg: self.clone(), coords: self.unit.clone() }
    }

    fn zero(&self) -> ConicElement {
        ConicElement { alg: self.clone(), coords: vec![self.ring.zero(); self.dim] }
    }
}

impl ConicElement {
    pub fn algebra(&self) -> &Arc<ConicAlgebra> {
        &self.alg
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    fn same_algebra(&self, other: &ConicElement) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "elements of different algebras {} and {}",
                self.alg.name, other.alg.name
            )))
        }
    }

    fn with(&self, coords: Vec<Scalar>) -> ConicElement {
        ConicElement { alg: self.alg.clone(), coords }
    }

    pub fn mul(&self, other: &ConicElement) -> Result<ConicElement> {
        self.same_algebra(other)?;
        Ok(self.with(self.alg.mul_coords(&self.coords, &other.coords)))
    }

    pub fn add(&self, other: &ConicElement) -> Result<ConicElement> {
        self.same_algebra(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &ConicElement) -> Result<ConicElement> {
        self.same_algebra(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: &Scalar) -> ConicElement {
        self.with(self.coords.iter().map(|a| a.scaled(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        self.alg.trace_coords(&self.coords)
    }

    pub fn conj(&self) -> ConicElement {
        self.with(self.alg.conj_coords(&self.coords))
    }

    pub fn norm(&self) -> Scalar {
        self.alg.norm_coords(&self.coords)
    }

    pub fn norm_polar(&self, other: &ConicElement) -> Result<Scalar> {
        self.same_algebra(other)?;
        Ok(self.alg.polar_coords(&self.coords, &other.coords))
    }

    /// `n(x)^{-1} x̄` when `n(x)` is a unit.
    pub fn try_inverse(&self) -> Result<ConicElement> {
        let inv = self.norm().try_invert().map_err(|_| Error::NotInvertible)?;
        Ok(self.conj().scale(&inv))
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(&self, y: &ConicElement, z: &ConicElement) -> Result<ConicElement> {
        self.mul(y)?.mul(z)?.sub(&self.mul(&y.mul(z)?)?)
    }

    pub fn classify_idempotent(&self) -> Result<ConicIdempotent> {
        if !self.alg.ring.is_connected() {
            return Err(Error::Precondition(format!(
                "idempotent classification needs a connected ring, got {}",
                self.alg.ring
            )));
        }
        if self.mul(self)? != *self {
            return Ok(ConicIdempotent::NotIdempotent);
        }
        if self.is_zero() {
            return Ok(ConicIdempotent::Zero);
        }
        if self.coords == self.alg.unit {
            return Ok(ConicIdempotent::Invertible);
        }
        if self.norm().is_zero() && self.trace().is_one() {
            return Ok(ConicIdempotent::Elementary);
        }
        Err(Error::Precondition("idempotent outside the connected classification".into()))
    }
}

impl fmt::Display for ConicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_coords(&self.coords, &self.alg.labels))
    }
}

macro_rules! element_op {
    ($tr:ident, $method:ident) => {
        impl ops::$tr<&ConicElement> for &ConicElement {
            type Output = ConicElement;
            fn $method(self, rhs: &ConicElement) -> ConicElement {
                match ConicElement::$method(self, rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

element_op!(Mul, mul);
element_op!(Add, add);
element_op!(Sub, sub);

impl ops::Neg for &ConicElement {
    type Output = ConicElement;
    fn neg(self) -> ConicElement {
        self.with(self.coords.iter().map(Scalar::negate).collect())
    }
}

/// The fixed catalog of conic identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicIdentity {
    Degree2,
    Flexible,
    LeftAlternative,
    RightAlternative,
    MoufangLeft,
    MoufangMiddle,
    MoufangRight,
    Kirmse,
    NormComposition,
    NormAssociativity,
    Associativity,
    ConjugationInvolution,
    TraceSymmetry,
}

impl ConicIdentity {
    pub const ALL: [ConicIdentity; 13] = [
        ConicIdentity::Degree2,
        ConicIdentity::Flexible,
        ConicIdentity::LeftAlternative,
        ConicIdentity::RightAlternative,
        ConicIdentity::MoufangLeft,
        ConicIdentity::MoufangMiddle,
        ConicIdentity::MoufangRight,
        ConicIdentity::Kirmse,
        ConicIdentity::NormComposition,
        ConicIdentity::NormAssociativity,
        ConicIdentity::Associativity,
        ConicIdentity::ConjugationInvolution,
        ConicIdentity::TraceSymmetry,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ConicIdentity::Degree2 => "degree2",
            ConicIdentity::Flexible => "flexible",
            ConicIdentity::LeftAlternative => "left-alternative",
            ConicIdentity::RightAlternative => "right-alternative",
            ConicIdentity::MoufangLeft => "moufang-left",
            ConicIdentity::MoufangMiddle => "moufang-middle",
            ConicIdentity::MoufangRight => "moufang-right",
            ConicIdentity::Kirmse => "kirmse",
            ConicIdentity::NormComposition => "norm-composition",
            ConicIdentity::NormAssociativity => "norm-associativity",
            ConicIdentity::Associativity => "associativity",
            ConicIdentity::ConjugationInvolution => "conjugation-involution",
            ConicIdentity::TraceSymmetry => "trace-symmetry",
        }
    }

    pub fn identity(&self) -> Identity {
        let (x, y, z) = (var(0), var(1), var(2));
        let name = self.name();
        match self {
            ConicIdentity::Degree2 => Identity::vector(
                name,
                x.clone() * x.clone(),
                scale(trace(x.clone()), x.clone()) - scale(norm(x), one()),
            ),
            ConicIdentity::Flexible => {
                Identity::vector(name, (x.clone() * y.clone()) * x.clone(), x.clone() * (y * x))
            }
            ConicIdentity::LeftAlternative => {
                Identity::vector(name, x.clone() * (x.clone() * y.clone()), (x.clone() * x) * y)
            }
            ConicIdentity::RightAlternative => {
                Identity::vector(name, (y.clone() * x.clone()) * x.clone(), y * (x.clone() * x))
            }
            ConicIdentity::MoufangLeft => Identity::vector(
                name,
                x.clone() * (y.clone() * (x.clone() * z.clone())),
                ((x.clone() * y) * x) * z,
            ),
            ConicIdentity::MoufangMiddle => Identity::vector(
                name,
                (x.clone() * y.clone()) * (z.clone() * x.clone()),
                (x.clone() * (y * z)) * x,
            ),
            ConicIdentity::MoufangRight => Identity::vector(
                name,
                ((z.clone() * x.clone()) * y.clone()) * x.clone(),
                z * (x.clone() * (y * x)),
            ),
            ConicIdentity::Kirmse => Identity::vector(
                name,
                (y.clone() * conj(x.clone())) * x.clone(),
                scale(norm(x.clone()), y.clone()),
            )
            .with(Equation::Vector(
                conj(x.clone()) * (x.clone() * y.clone()),
                scale(norm(x), y),
            )),
            ConicIdentity::NormComposition => Identity::scalar(
                name,
                norm(x.clone() * y.clone()),
                norm(x) * norm(y),
            ),
            ConicIdentity::NormAssociativity => Identity::scalar(
                name,
                norm_polar(x.clone() * y.clone(), z.clone()),
                norm_polar(y.clone(), conj(x.clone()) * z.clone()),
            )
            .with(Equation::Scalar(
                norm_polar(x.clone() * y.clone(), z.clone()),
                norm_polar(x, z * conj(y)),
            )),
            ConicIdentity::Associativity => {
                Identity::vector(name, (x.clone() * y.clone()) * z.clone(), x * (y * z))
            }
            ConicIdentity::ConjugationInvolution => Identity::vector(
                name,
                conj(x.clone() * y.clone()),
                conj(y) * conj(x),
            ),
            ConicIdentity::TraceSymmetry => {
                Identity::scalar(name, trace(x.clone() * y.clone()), trace(y * x))
            }
        }
    }

    pub fn parse(s: &str) -> Option<ConicIdentity> {
        ConicIdentity::ALL.iter().copied().find(|i| i.name() == s)
    }
}

/// Strict (polynomial-law) check of a conic identity, complete for total
/// degree up to 4.
pub fn strict_identity_check(id: &Identity, alg: &ConicAlgebra) -> Result<Verdict> {
    identity::check_strict(alg, id)
}

pub fn sampled_identity_check(id: &Identity, alg: &ConicAlgebra, samples: usize, seed: u64) -> Result<Verdict> {
    identity::check(alg, id, CheckMode::Sampled { samples, seed })
}

fn dense_table(ring: &RingDescriptor, dim: usize) -> Vec<Vec<Vec<Scalar>>> {
    vec![vec![vec![ring.zero(); dim]; dim]; dim]
}

/// The base ring as a one-dimensional conic algebra with norm `x^2`.
pub fn base_ring_algebra(k: &RingDescriptor) -> Arc<ConicAlgebra> {
    let mut table = dense_table(k, 1);
    table[0][0][0] = k.one();
    let norm = QuadraticForm::diagonal(k.clone(), &[k.one()]).expect("rank one form");
    let alg = ConicAlgebra::new(&k.to_string(), k.clone(), table, vec![k.one()], norm, vec!["1".into()])
        .expect("base ring is conic");
    Arc::new(alg)
}

/// `k × k` with componentwise product and norm `n(a, b) = ab`.
pub fn split_etale(k: &RingDescriptor) -> Arc<ConicAlgebra> {
    let mut table = dense_table(k, 2);
    table[0][0][0] = k.one();
    table[1][1][1] = k.one();
    let norm = QuadraticForm::hyperbolic_plane(k.clone());
    let alg = ConicAlgebra::new(
        &format!("{k} x {k}"),
        k.clone(),
        table,
        vec![k.one(), k.one()],
        norm,
        vec!["c1".into(), "c2".into()],
    )
    .expect("split etale algebra is conic");
    Arc::new(alg)
}

/// `k[t]/(t^2 - alpha t + beta)` on the basis `(1, t)`.
pub fn quadratic(k: &RingDescriptor, alpha: &Scalar, beta: &Scalar) -> Result<Arc<ConicAlgebra>> {
    let mut table = dense_table(k, 2);
    table[0][0][0] = k.one();
    table[0][1][1] = k.one();
    table[1][0][1] = k.one();
    table[1][1][0] = beta.negate();
    table[1][1][1] = alpha.clone();
    let norm = QuadraticForm::new(k.clone(), vec![vec![k.one(), alpha.clone()], vec![k.zero(), beta.clone()]])?;
    let alg = ConicAlgebra::new(
        &format!("{k}[t]/(t^2 - ({alpha})t + ({beta}))"),
        k.clone(),
        table,
        vec![k.one(), k.zero()],
        norm,
        vec!["1".into(), "t".into()],
    )?;
    Ok(Arc::new(alg))
}

fn fano(r: i64) -> usize {
    ((r - 1).rem_euclid(7) + 1) as usize
}

/// Octonions on the orthonormal basis `u0 = 1, u1, ..., u7` with
/// `u_{r+i} u_{r+3i} = u_r` for `i` in `{1, 2, 4}` (indices mod 7),
/// `u_r^2 = -1` and anticommuting imaginary units.
pub fn cartan_schouten(k: &RingDescriptor) -> Arc<ConicAlgebra> {
    let mut table = dense_table(k, 8);
    for a in 0..8 {
        table[0][a][a] = k.one();
        table[a][0][a] = k.one();
    }
    for r in 1..8 {
        table[r][r][0] = k.from_i64(-1);
    }
    for r in 1..8i64 {
        for i in [1i64, 2, 4] {
            let (a, b) = (fano(r + i), fano(r + 3 * i));
            table[a][b][r as usize] = k.one();
            table[b][a][r as usize] = k.from_i64(-1);
        }
    }
    for r in 1..8i64 {
        let p = &table[fano(r + 4)][fano(r + 5)];
        assert!(
            p.iter().enumerate().all(|(l, c)| if l == r as usize { c.is_one() } else { c.is_zero() }),
            "octonion table violates u_(r+4) u_(r+5) = u_r at r = {r}"
        );
    }
    let labels = (0..8).map(|i| format!("u{i}")).collect();
    let alg = ConicAlgebra::new(
        &format!("octonions({k})"),
        k.clone(),
        table,
        {
            let mut u = vec![k.zero(); 8];
            u[0] = k.one();
            u
        },
        QuadraticForm::euclidean(k.clone(), 8),
        labels,
    )
    .expect("octonion table is conic");
    Arc::new(alg)
}
