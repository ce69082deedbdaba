//! Zorn vector matrices `[[a1, u2], [u1, a2]]` with `a_i` scalars and `u_i`
//! in `k^3`, the split octonions.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coeff::Coeff;
use crate::conic::{ConicAlgebra, ConicElement, ConicHandle};
use crate::error::{Error, Result};
use crate::identity::{Verdict, Witness};
use crate::quadform::QuadraticForm;
use crate::scalar::{is_prime, RingDescriptor, Scalar};

pub fn dot3<C: Coeff>(u: &[C; 3], v: &[C; 3]) -> C {
    u[0].times(&v[0]).plus(&u[1].times(&v[1])).plus(&u[2].times(&v[2]))
}

pub fn cross3<C: Coeff>(u: &[C; 3], v: &[C; 3]) -> [C; 3] {
    [
        u[1].times(&v[2]).minus(&u[2].times(&v[1])),
        u[2].times(&v[0]).minus(&u[0].times(&v[2])),
        u[0].times(&v[1]).minus(&u[1].times(&v[0])),
    ]
}

fn lin3<C: Coeff>(a: &C, u: &[C; 3], b: &C, v: &[C; 3], w: &[C; 3]) -> [C; 3] {
    std::array::from_fn(|i| a.times(&u[i]).plus(&b.times(&v[i])).plus(&w[i]))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZornElement<C = Scalar> {
    pub a1: C,
    pub a2: C,
    /// Lower-left vector.
    pub u1: [C; 3],
    /// Upper-right vector.
    pub u2: [C; 3],
}

impl<C: Coeff> ZornElement<C> {
    /// `[[a1 b1 - u2.v1, a1 v2 + b2 u2 + u1 x v1], [b1 u1 + a2 v1 + u2 x v2, a2 b2 - u1.v2]]`.
    pub fn mul(&self, y: &Self) -> Self {
        ZornElement {
            a1: self.a1.times(&y.a1).minus(&dot3(&self.u2, &y.u1)),
            u2: lin3(&self.a1, &y.u2, &y.a2, &self.u2, &cross3(&self.u1, &y.u1)),
            u1: lin3(&y.a1, &self.u1, &self.a2, &y.u1, &cross3(&self.u2, &y.u2)),
            a2: self.a2.times(&y.a2).minus(&dot3(&self.u1, &y.u2)),
        }
    }

    /// `a1 a2 + u2.u1`, the norm making `x^2 - t(x) x + n(x) 1 = 0` hold.
    pub fn norm(&self) -> C {
        self.a1.times(&self.a2).plus(&dot3(&self.u2, &self.u1))
    }

    pub fn trace(&self) -> C {
        self.a1.plus(&self.a2)
    }

    pub fn conj(&self) -> Self {
        ZornElement {
            a1: self.a2.clone(),
            a2: self.a1.clone(),
            u1: self.u1.clone().map(|c| c.negated()),
            u2: self.u2.clone().map(|c| c.negated()),
        }
    }

    pub fn add(&self, y: &Self) -> Self {
        ZornElement {
            a1: self.a1.plus(&y.a1),
            a2: self.a2.plus(&y.a2),
            u1: std::array::from_fn(|i| self.u1[i].plus(&y.u1[i])),
            u2: std::array::from_fn(|i| self.u2[i].plus(&y.u2[i])),
        }
    }
}

impl ZornElement<Scalar> {
    pub fn from_ints(k: &RingDescriptor, a1: i64, u2: [i64; 3], u1: [i64; 3], a2: i64) -> Self {
        ZornElement {
            a1: k.from_i64(a1),
            a2: k.from_i64(a2),
            u1: u1.map(|v| k.from_i64(v)),
            u2: u2.map(|v| k.from_i64(v)),
        }
    }

    pub fn one(k: &RingDescriptor) -> Self {
        Self::from_ints(k, 1, [0; 3], [0; 3], 1)
    }

    /// `E = diag(1, 0)`.
    pub fn e(k: &RingDescriptor) -> Self {
        Self::from_ints(k, 1, [0; 3], [0; 3], 0)
    }

    /// `X_i = [[0, -e_i], [e_i, 0]]` for `i = 1, 2`; `X_3 = X_1 X_2`.
    pub fn x(k: &RingDescriptor, i: usize) -> Self {
        match i {
            1 => Self::from_ints(k, 0, [-1, 0, 0], [1, 0, 0], 0),
            2 => Self::from_ints(k, 0, [0, -1, 0], [0, 1, 0], 0),
            3 => Self::x(k, 1).mul(&Self::x(k, 2)),
            _ => panic!("X_{i} is not defined"),
        }
    }

    pub fn try_mul(&self, y: &Self) -> Result<Self> {
        if !self.a1.same_ring(&y.a1) {
            return Err(Error::RingMismatch(self.a1.ring().to_string(), y.a1.ring().to_string()));
        }
        Ok(self.mul(y))
    }

    /// Coordinates in the basis `E, 1-E, X1, X2, X3, EX1, EX2, EX3`.
    pub fn to_basis_coords(&self) -> Vec<Scalar> {
        let (u1, u2) = (&self.u1, &self.u2);
        vec![
            self.a1.clone(),
            self.a2.clone(),
            u1[0].clone(),
            u1[1].clone(),
            u1[2].clone(),
            (&u2[0] + &u1[0]).negate(),
            (&u2[1] + &u1[1]).negate(),
            &u2[2] - &u1[2],
        ]
    }

    pub fn from_basis_coords(c: &[Scalar]) -> Self {
        ZornElement {
            a1: c[0].clone(),
            a2: c[1].clone(),
            u1: [c[2].clone(), c[3].clone(), c[4].clone()],
            u2: [(&c[2] + &c[5]).negate(), (&c[3] + &c[6]).negate(), &c[4] + &c[7]],
        }
    }
}

impl fmt::Display for ZornElement<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |u: &[Scalar; 3]| format!("({}, {}, {})", u[0], u[1], u[2]);
        write!(f, "[[{}, {}], [{}, {}]]", self.a1, v(&self.u2), v(&self.u1), self.a2)
    }
}

pub const BASIS_LABELS: [&str; 8] = ["E", "1-E", "X1", "X2", "X3", "EX1", "EX2", "EX3"];

fn basis_element(k: &RingDescriptor, i: usize) -> ZornElement {
    match i {
        0 => ZornElement::e(k),
        1 => ZornElement::from_ints(k, 0, [0; 3], [0; 3], 1),
        2..=4 => ZornElement::x(k, i - 1),
        _ => ZornElement::e(k).mul(&ZornElement::x(k, i - 4)),
    }
}

/// `Zor(k)` as a conic algebra on the basis `E, 1-E, X1, X2, X3, EX1, EX2, EX3`.
pub fn zorn_algebra(k: &RingDescriptor) -> Arc<ConicAlgebra> {
    let basis: Vec<ZornElement> = (0..8).map(|i| basis_element(k, i)).collect();
    for (i, b) in basis.iter().enumerate() {
        let c = b.to_basis_coords();
        debug_assert!(c.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() }));
    }
    let table = basis
        .iter()
        .map(|x| basis.iter().map(|y| x.mul(y).to_basis_coords()).collect())
        .collect();
    let mut s = vec![vec![k.zero(); 8]; 8];
    for i in 0..8 {
        s[i][i] = basis[i].norm();
        for j in i + 1..8 {
            s[i][j] = &(&basis[i].add(&basis[j]).norm() - &basis[i].norm()) - &basis[j].norm();
        }
    }
    let norm = QuadraticForm::new(k.clone(), s).expect("square norm matrix");
    let alg = ConicAlgebra::new(
        &format!("Zor({k})"),
        k.clone(),
        table,
        ZornElement::one(k).to_basis_coords(),
        norm,
        BASIS_LABELS.iter().map(|s| s.to_string()).collect(),
    )
    .expect("Zorn algebra is conic");
    Arc::new(alg)
}

/// Checks `e^2 = e`, `x1^2 = x2^2 = 1`, `x1 x2 x1 = -x2`,
/// `x1 e x1 = x2 e x2 = 1 - e` and `(x1 x2) e (x1 x2) = -(1 - e)`, in that
/// order. Triple products are bracketed from the left.
pub fn presentation_suite(e: &ConicElement, x1: &ConicElement, x2: &ConicElement) -> Result<Verdict> {
    let alg = e.algebra();
    let one = alg.element(alg.unit_coords().to_vec())?;
    let ebar = one.sub(e)?;
    let x3 = x1.mul(x2)?;
    let m3 = |a: &ConicElement, b: &ConicElement, c: &ConicElement| a.mul(b)?.mul(c);
    let relations: Vec<(&str, ConicElement, ConicElement)> = vec![
        ("e^2 = e", e.mul(e)?, e.clone()),
        ("x1^2 = 1", x1.mul(x1)?, one.clone()),
        ("x2^2 = 1", x2.mul(x2)?, one.clone()),
        ("x1 x2 x1 = -x2", m3(x1, x2, x1)?, -x2),
        ("x1 e x1 = 1 - e", m3(x1, e, x1)?, ebar.clone()),
        ("x2 e x2 = 1 - e", m3(x2, e, x2)?, ebar.clone()),
        ("(x1 x2) e (x1 x2) = -(1 - e)", m3(&x3, e, &x3)?, -&ebar),
    ];
    for (name, lhs, rhs) in relations {
        if lhs != rhs {
            return Ok(Verdict::fails(
                "presentation",
                Witness::Relation { relation: name.to_string(), lhs: lhs.coords().to_vec(), rhs: rhs.coords().to_vec() },
            ));
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZornCount {
    Invertibles,
    NormOne,
    ElementaryIdempotents,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ZornCensus {
    pub p: u64,
    pub invertibles: u64,
    pub norm_one: u64,
    pub elementary_idempotents: u64,
}

impl ZornCensus {
    pub fn get(&self, what: ZornCount) -> u64 {
        match what {
            ZornCount::Invertibles => self.invertibles,
            ZornCount::NormOne => self.norm_one,
            ZornCount::ElementaryIdempotents => self.elementary_idempotents,
        }
    }

    pub fn formula_invertibles(&self) -> u64 {
        let p = self.p;
        p.pow(3) * (p - 1) * (p.pow(4) - 1)
    }

    pub fn formula_norm_one(&self) -> u64 {
        let p = self.p;
        p.pow(3) * (p.pow(4) - 1)
    }

    pub fn formula_elementary_idempotents(&self) -> u64 {
        self.p.pow(6) + self.p.pow(3)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "invertibles": self.invertibles,
            "norm_one": self.norm_one,
            "elementary_idempotents": self.elementary_idempotents,
            "formula_invertibles": self.formula_invertibles(),
            "formula_norm_one": self.formula_norm_one(),
            "formula_elementary_idempotents": self.formula_elementary_idempotents(),
        })
    }
}

pub const MAX_CENSUS_PRIME: u64 = 7;

/// Enumerates all `p^8` elements of `Zor(F_p)`, sharded over the diagonal
/// entries.
pub fn census(p: u64) -> Result<ZornCensus> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if p > MAX_CENSUS_PRIME {
        return Err(Error::CostGuard(format!("census of Zor(F_{p}) needs p <= {MAX_CENSUS_PRIME}")));
    }
    let shards: Vec<(u64, u64)> = (0..p).flat_map(|a1| (0..p).map(move |a2| (a1, a2))).collect();
    let counts = shards
        .par_iter()
        .map(|&(a1, a2)| {
            let det = a1 * a2 % p;
            let trace_one = (a1 + a2) % p == 1;
            let mut c = ZornCensus::default();
            let mut v = [0u64; 6];
            loop {
                let dot = (v[0] * v[3] + v[1] * v[4] + v[2] * v[5]) % p;
                let n = (det + dot) % p;
                if n != 0 {
                    c.invertibles += 1;
                }
                if n == 1 {
                    c.norm_one += 1;
                }
                if n == 0 && trace_one {
                    c.elementary_idempotents += 1;
                }
                let mut i = 0;
                while i < 6 {
                    v[i] += 1;
                    if v[i] < p {
                        break;
                    }
                    v[i] = 0;
                    i += 1;
                }
                if i == 6 {
                    break;
                }
            }
            c
        })
        .reduce(ZornCensus::default, |a, b| ZornCensus {
            p: 0,
            invertibles: a.invertibles + b.invertibles,
            norm_one: a.norm_one + b.norm_one,
            elementary_idempotents: a.elementary_idempotents + b.elementary_idempotents,
        });
    Ok(ZornCensus { p, ..counts })
}

pub fn count_field(p: u64, what: ZornCount) -> Result<u64> {
    Ok(census(p)?.get(what))
}
