//! Identity verification for finite free algebras.
//!
//! An identity is a list of equations between expressions in variables
//! `x0, x1, ...`. Strict mode evaluates both sides at generic elements
//! `X_v = sum_i t_{v,i} e_i` with polynomial coordinates. The identity holds
//! as a polynomial law iff every coefficient of the difference vanishes, and
//! each nonzero coefficient pins down a tuple of basis multisets as a witness.
//! Sampled mode evaluates at seeded random points instead.

use std::ops;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coeff::{Coeff, Monomial, Poly, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::scalar::{RingDescriptor, Scalar};

pub const DEFAULT_SEED: u64 = 0xA1BE27;
/// Largest number of basis multiset tuples a strict check may expand.
pub const STRICT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(usize),
    One,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Conj(Box<Expr>),
    Scale(Box<SExpr>, Box<Expr>),
    Sharp(Box<Expr>),
    Cross(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum SExpr {
    Int(i64),
    Trace(Box<Expr>),
    Norm(Box<Expr>),
    /// Polar form of the quadratic norm.
    NormPolar(Box<Expr>, Box<Expr>),
    CubicNorm(Box<Expr>),
    /// Directional derivative `N(x; y)` of the cubic norm.
    CubicNormAt(Box<Expr>, Box<Expr>),
    /// Bilinear trace `T(x, y)` of a cubic norm structure.
    BilinearTrace(Box<Expr>, Box<Expr>),
    Add(Box<SExpr>, Box<SExpr>),
    Sub(Box<SExpr>, Box<SExpr>),
    Mul(Box<SExpr>, Box<SExpr>),
    Neg(Box<SExpr>),
}

pub fn var(i: usize) -> Expr {
    Expr::Var(i)
}

pub fn one() -> Expr {
    Expr::One
}

pub fn conj(x: Expr) -> Expr {
    Expr::Conj(Box::new(x))
}

pub fn sharp(x: Expr) -> Expr {
    Expr::Sharp(Box::new(x))
}

pub fn cross(x: Expr, y: Expr) -> Expr {
    Expr::Cross(Box::new(x), Box::new(y))
}

pub fn scale(s: SExpr, x: Expr) -> Expr {
    Expr::Scale(Box::new(s), Box::new(x))
}

pub fn trace(x: Expr) -> SExpr {
    SExpr::Trace(Box::new(x))
}

pub fn norm(x: Expr) -> SExpr {
    SExpr::Norm(Box::new(x))
}

pub fn norm_polar(x: Expr, y: Expr) -> SExpr {
    SExpr::NormPolar(Box::new(x), Box::new(y))
}

pub fn cubic_norm(x: Expr) -> SExpr {
    SExpr::CubicNorm(Box::new(x))
}

pub fn cubic_norm_at(x: Expr, y: Expr) -> SExpr {
    SExpr::CubicNormAt(Box::new(x), Box::new(y))
}

pub fn btrace(x: Expr, y: Expr) -> SExpr {
    SExpr::BilinearTrace(Box::new(x), Box::new(y))
}

/// `U_x y = T(x, y) x - x^# × y`.
pub fn u_op(x: Expr, y: Expr) -> Expr {
    scale(btrace(x.clone(), y.clone()), x.clone()) - cross(sharp(x), y)
}

/// `{x y z} = T(x, y) z + T(z, y) x - (x × z) × y`.
pub fn triple(x: Expr, y: Expr, z: Expr) -> Expr {
    scale(btrace(x.clone(), y.clone()), z.clone()) + scale(btrace(z.clone(), y.clone()), x.clone())
        - cross(cross(x, z), y)
}

macro_rules! expr_binop {
    ($ty:ident, $tr:ident, $method:ident, $variant:ident) => {
        impl ops::$tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_binop!(Expr, Add, add, Add);
expr_binop!(Expr, Sub, sub, Sub);
expr_binop!(Expr, Mul, mul, Mul);
expr_binop!(SExpr, Add, add, Add);
expr_binop!(SExpr, Sub, sub, Sub);
expr_binop!(SExpr, Mul, mul, Mul);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl ops::Neg for SExpr {
    type Output = SExpr;
    fn neg(self) -> SExpr {
        SExpr::Neg(Box::new(self))
    }
}

fn merge_max(a: Vec<usize>, b: Vec<usize>) -> Vec<usize> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0).max(b.get(i).copied().unwrap_or(0))).collect()
}

fn merge_sum(a: Vec<usize>, b: Vec<usize>) -> Vec<usize> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

fn times(a: Vec<usize>, k: usize) -> Vec<usize> {
    a.into_iter().map(|d| d * k).collect()
}

impl Expr {
    /// Upper bound for the degree in each variable.
    pub fn degrees(&self) -> Vec<usize> {
        match self {
            Expr::Var(i) => {
                let mut d = vec![0; i + 1];
                d[*i] = 1;
                d
            }
            Expr::One => Vec::new(),
            Expr::Add(a, b) | Expr::Sub(a, b) => merge_max(a.degrees(), b.degrees()),
            Expr::Neg(a) | Expr::Conj(a) => a.degrees(),
            Expr::Mul(a, b) | Expr::Cross(a, b) => merge_sum(a.degrees(), b.degrees()),
            Expr::Scale(s, a) => merge_sum(s.degrees(), a.degrees()),
            Expr::Sharp(a) => times(a.degrees(), 2),
        }
    }
}

impl SExpr {
    pub fn degrees(&self) -> Vec<usize> {
        match self {
            SExpr::Int(_) => Vec::new(),
            SExpr::Trace(a) => a.degrees(),
            SExpr::Norm(a) => times(a.degrees(), 2),
            SExpr::CubicNorm(a) => times(a.degrees(), 3),
            SExpr::CubicNormAt(x, y) => merge_sum(times(x.degrees(), 2), y.degrees()),
            SExpr::NormPolar(a, b) | SExpr::BilinearTrace(a, b) => merge_sum(a.degrees(), b.degrees()),
            SExpr::Add(a, b) | SExpr::Sub(a, b) => merge_max(a.degrees(), b.degrees()),
            SExpr::Mul(a, b) => merge_sum(a.degrees(), b.degrees()),
            SExpr::Neg(a) => a.degrees(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Equation {
    Vector(Expr, Expr),
    Scalar(SExpr, SExpr),
}

impl Equation {
    pub fn degrees(&self) -> Vec<usize> {
        match self {
            Equation::Vector(a, b) => merge_max(a.degrees(), b.degrees()),
            Equation::Scalar(a, b) => merge_max(a.degrees(), b.degrees()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub name: String,
    pub equations: Vec<Equation>,
}

impl Identity {
    pub fn vector(name: &str, lhs: Expr, rhs: Expr) -> Self {
        Identity { name: name.to_string(), equations: vec![Equation::Vector(lhs, rhs)] }
    }

    pub fn scalar(name: &str, lhs: SExpr, rhs: SExpr) -> Self {
        Identity { name: name.to_string(), equations: vec![Equation::Scalar(lhs, rhs)] }
    }

    pub fn with(mut self, eq: Equation) -> Self {
        self.equations.push(eq);
        self
    }

    /// Largest degree of each variable over all equations.
    pub fn degrees(&self) -> Vec<usize> {
        self.equations.iter().fold(Vec::new(), |acc, e| merge_max(acc, e.degrees()))
    }

    pub fn total_degree(&self) -> usize {
        self.degrees().iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.degrees().len()
    }
}

/// Operations an algebra can expose to the identity engine. Anything not
/// overridden is reported as unsupported.
pub trait AlgebraOps: Sync {
    fn ring(&self) -> &RingDescriptor;
    fn dim(&self) -> usize;
    fn unit(&self) -> &[Scalar];

    fn op_mul<C: Coeff>(&self, _x: &[C], _y: &[C]) -> Result<Vec<C>> {
        Err(Error::Unsupported("multiplication".into()))
    }
    fn op_conj<C: Coeff>(&self, _x: &[C]) -> Result<Vec<C>> {
        Err(Error::Unsupported("conjugation".into()))
    }
    fn op_trace<C: Coeff>(&self, _x: &[C]) -> Result<C> {
        Err(Error::Unsupported("trace".into()))
    }
    fn op_norm<C: Coeff>(&self, _x: &[C]) -> Result<C> {
        Err(Error::Unsupported("quadratic norm".into()))
    }
    fn op_norm_polar<C: Coeff>(&self, _x: &[C], _y: &[C]) -> Result<C> {
        Err(Error::Unsupported("quadratic norm".into()))
    }
    fn op_sharp<C: Coeff>(&self, _x: &[C]) -> Result<Vec<C>> {
        Err(Error::Unsupported("adjoint".into()))
    }
    fn op_cross<C: Coeff>(&self, _x: &[C], _y: &[C]) -> Result<Vec<C>> {
        Err(Error::Unsupported("cross product".into()))
    }
    fn op_cubic_norm<C: Coeff>(&self, _x: &[C]) -> Result<C> {
        Err(Error::Unsupported("cubic norm".into()))
    }
    fn op_cubic_norm_at<C: Coeff>(&self, _x: &[C], _y: &[C]) -> Result<C> {
        Err(Error::Unsupported("cubic norm".into()))
    }
    fn op_bilinear_trace<C: Coeff>(&self, _x: &[C], _y: &[C]) -> Result<C> {
        Err(Error::Unsupported("bilinear trace".into()))
    }
}

fn vec_zip<C: Coeff>(a: &[C], b: &[C], f: impl Fn(&C, &C) -> C) -> Vec<C> {
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

pub fn eval_expr<A: AlgebraOps + ?Sized, C: Coeff>(
    alg: &A,
    e: &Expr,
    vars: &[Vec<C>],
    zero: &C,
) -> Result<Vec<C>> {
    Ok(match e {
        Expr::Var(i) => vars
            .get(*i)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("variable x{i} not bound")))?,
        Expr::One => alg.unit().iter().map(|c| zero.lifted(c)).collect(),
        Expr::Add(a, b) => {
            vec_zip(&eval_expr(alg, a, vars, zero)?, &eval_expr(alg, b, vars, zero)?, C::plus)
        }
        Expr::Sub(a, b) => {
            vec_zip(&eval_expr(alg, a, vars, zero)?, &eval_expr(alg, b, vars, zero)?, C::minus)
        }
        Expr::Neg(a) => eval_expr(alg, a, vars, zero)?.iter().map(C::negated).collect(),
        Expr::Mul(a, b) => {
            alg.op_mul(&eval_expr(alg, a, vars, zero)?, &eval_expr(alg, b, vars, zero)?)?
        }
        Expr::Conj(a) => alg.op_conj(&eval_expr(alg, a, vars, zero)?)?,
        Expr::Scale(s, a) => {
            let s = eval_sexpr(alg, s, vars, zero)?;
            eval_expr(alg, a, vars, zero)?.iter().map(|c| c.times(&s)).collect()
        }
        Expr::Sharp(a) => alg.op_sharp(&eval_expr(alg, a, vars, zero)?)?,
        Expr::Cross(a, b) => {
            alg.op_cross(&eval_expr(alg, a, vars, zero)?, &eval_expr(alg, b, vars, zero)?)?
        }
    })
}

pub fn eval_sexpr<A: AlgebraOps + ?Sized, C: Coeff>(
    alg: &A,
    e: &SExpr,
    vars: &[Vec<C>],
    zero: &C,
) -> Result<C> {
    let ev = |x: &Expr| eval_expr(alg, x, vars, zero);
    Ok(match e {
        SExpr::Int(n) => zero.lifted(&alg.ring().from_i64(*n)),
        SExpr::Trace(a) => alg.op_trace(&ev(a)?)?,
        SExpr::Norm(a) => alg.op_norm(&ev(a)?)?,
        SExpr::NormPolar(a, b) => alg.op_norm_polar(&ev(a)?, &ev(b)?)?,
        SExpr::CubicNorm(a) => alg.op_cubic_norm(&ev(a)?)?,
        SExpr::CubicNormAt(a, b) => alg.op_cubic_norm_at(&ev(a)?, &ev(b)?)?,
        SExpr::BilinearTrace(a, b) => alg.op_bilinear_trace(&ev(a)?, &ev(b)?)?,
        SExpr::Add(a, b) => eval_sexpr(alg, a, vars, zero)?.plus(&eval_sexpr(alg, b, vars, zero)?),
        SExpr::Sub(a, b) => eval_sexpr(alg, a, vars, zero)?.minus(&eval_sexpr(alg, b, vars, zero)?),
        SExpr::Mul(a, b) => eval_sexpr(alg, a, vars, zero)?.times(&eval_sexpr(alg, b, vars, zero)?),
        SExpr::Neg(a) => eval_sexpr(alg, a, vars, zero)?.negated(),
    })
}

/// `lhs - rhs` of one equation, as a list of coordinates (length 1 for
/// scalar equations).
fn equation_defect<A: AlgebraOps + ?Sized, C: Coeff>(
    alg: &A,
    eq: &Equation,
    vars: &[Vec<C>],
    zero: &C,
) -> Result<Vec<C>> {
    Ok(match eq {
        Equation::Vector(l, r) => {
            vec_zip(&eval_expr(alg, l, vars, zero)?, &eval_expr(alg, r, vars, zero)?, C::minus)
        }
        Equation::Scalar(l, r) => {
            vec![eval_sexpr(alg, l, vars, zero)?.minus(&eval_sexpr(alg, r, vars, zero)?)]
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// Nonzero coefficient of the generic expansion: `args[v]` lists the basis
    /// indices (with multiplicity) taken by variable `v`.
    Monomial { equation: usize, args: Vec<Vec<usize>>, coordinate: Option<usize>, value: Scalar },
    /// Random point at which the equation fails.
    Sample { equation: usize, point: Vec<Vec<Scalar>>, coordinate: Option<usize>, value: Scalar },
    /// A named relation that does not hold.
    Relation { relation: String, lhs: Vec<Scalar>, rhs: Vec<Scalar> },
    /// A product of two named lattice basis vectors that leaves the lattice.
    Product { left: String, right: String, product: Vec<Scalar> },
}

fn scalars_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Monomial { equation, args, coordinate, value } => json!({
                "kind": "monomial",
                "equation": equation,
                "basis_indices": args,
                "coordinate": coordinate,
                "value": value.to_string(),
            }),
            Witness::Sample { equation, point, coordinate, value } => json!({
                "kind": "sample",
                "equation": equation,
                "point": point.iter().map(|p| scalars_json(p)).collect::<Vec<_>>(),
                "coordinate": coordinate,
                "value": value.to_string(),
            }),
            Witness::Relation { relation, lhs, rhs } => json!({
                "kind": "relation",
                "relation": relation,
                "lhs": scalars_json(lhs),
                "rhs": scalars_json(rhs),
            }),
            Witness::Product { left, right, product } => json!({
                "kind": "product",
                "pair": format!("{left}*{right}"),
                "product": scalars_json(product),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub check: String,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Holds,
    Fails(Failure),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(f) => Some(f),
        }
    }

    pub fn fails(check: &str, witness: Witness) -> Verdict {
        Verdict::Fails(Failure { check: check.to_string(), witness })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Strict,
    Sampled { samples: usize, seed: u64 },
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Number of basis multiset tuples a strict check of `id` expands.
pub fn strict_cost(id: &Identity, dim: usize) -> u128 {
    id.degrees()
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| binomial((dim + d - 1) as u128, d as u128))
        .product()
}

/// Identities of total degree above 4 are expanded only up to this dimension.
pub const HIGH_DEGREE_MAX_DIM: usize = 12;

/// Errors with `CostGuard` when a strict check of `id` in dimension `dim` is
/// out of budget.
pub fn strict_guard(id: &Identity, dim: usize) -> Result<()> {
    let nvars = id.num_vars();
    let degree = id.total_degree();
    if nvars * dim > 256 {
        return Err(Error::CostGuard(format!("{nvars} variables over dimension {dim}")));
    }
    if degree > MAX_DEGREE {
        return Err(Error::CostGuard(format!("total degree {degree} exceeds {MAX_DEGREE}")));
    }
    if degree > 4 && dim > HIGH_DEGREE_MAX_DIM {
        return Err(Error::CostGuard(format!(
            "{} has total degree {degree} in dimension {dim} > {HIGH_DEGREE_MAX_DIM}; use sampled mode",
            id.name
        )));
    }
    let cost = strict_cost(id, dim);
    if cost > STRICT_BUDGET {
        return Err(Error::CostGuard(format!(
            "{} needs {cost} basis multisets in dimension {dim}; use sampled mode",
            id.name
        )));
    }
    Ok(())
}

/// Complete check by generic expansion.
pub fn check_strict<A: AlgebraOps + ?Sized>(alg: &A, id: &Identity) -> Result<Verdict> {
    let dim = alg.dim();
    let nvars = id.num_vars();
    strict_guard(id, dim)?;
    let one = alg.ring().one();
    let vars: Vec<Vec<Poly>> = (0..nvars)
        .map(|v| (0..dim).map(|i| Poly::var((v * dim + i) as u8, one.clone())).collect())
        .collect();
    let zero = Poly::zero();
    for (k, eq) in id.equations.iter().enumerate() {
        let defect = equation_defect(alg, eq, &vars, &zero)?;
        let scalar_eq = matches!(eq, Equation::Scalar(..));
        let mut best: Option<(Monomial, usize, Scalar)> = None;
        for (c, p) in defect.iter().enumerate() {
            if let Some((m, v)) = p.terms().first() {
                let better = match &best {
                    None => true,
                    Some((bm, bc, _)) => (m, c) < (bm, *bc),
                };
                if better {
                    best = Some((*m, c, v.clone()));
                }
            }
        }
        if let Some((m, c, value)) = best {
            let mut args = vec![Vec::new(); nvars];
            for &t in m.vars() {
                let t = t as usize;
                args[t / dim].push(t % dim);
            }
            let witness = Witness::Monomial {
                equation: k,
                args,
                coordinate: if scalar_eq { None } else { Some(c) },
                value,
            };
            return Ok(Verdict::fails(&id.name, witness));
        }
    }
    Ok(Verdict::Holds)
}

/// Seeded random-point check. Passing is probabilistic, failing is certain.
pub fn check_sampled<A: AlgebraOps + ?Sized>(
    alg: &A,
    id: &Identity,
    samples: usize,
    seed: u64,
) -> Result<Verdict> {
    let dim = alg.dim();
    let nvars = id.num_vars();
    let ring = alg.ring().clone();
    let zero = ring.zero();
    let found = (0..samples)
        .into_par_iter()
        .map(|s| -> Result<Option<Witness>> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s as u64);
            let point: Vec<Vec<Scalar>> =
                (0..nvars).map(|_| (0..dim).map(|_| ring.sample(&mut rng)).collect()).collect();
            for (k, eq) in id.equations.iter().enumerate() {
                let defect = equation_defect(alg, eq, &point, &zero)?;
                if let Some(c) = defect.iter().position(|v| !v.is_zero()) {
                    let coordinate = match eq {
                        Equation::Scalar(..) => None,
                        Equation::Vector(..) => Some(c),
                    };
                    let value = defect[c].clone();
                    return Ok(Some(Witness::Sample { equation: k, point, coordinate, value }));
                }
            }
            Ok(None)
        })
        .find_first(|r| !matches!(r, Ok(None)));
    match found {
        None => Ok(Verdict::Holds),
        Some(Err(e)) => Err(e),
        Some(Ok(w)) => Ok(Verdict::fails(&id.name, w.expect("filtered"))),
    }
}

pub fn check<A: AlgebraOps + ?Sized>(alg: &A, id: &Identity, mode: CheckMode) -> Result<Verdict> {
    match mode {
        CheckMode::Strict => check_strict(alg, id),
        CheckMode::Sampled { samples, seed } => check_sampled(alg, id, samples, seed),
    }
}

/// Runs identities in order and stops at the first failure.
pub fn check_all<A: AlgebraOps + ?Sized>(alg: &A, ids: &[Identity], mode: CheckMode) -> Result<Verdict> {
    for id in ids {
        let v = check(alg, id, mode)?;
        if !v.holds() {
            return Ok(v);
        }
    }
    Ok(Verdict::Holds)
}
