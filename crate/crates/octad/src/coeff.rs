//! Coefficient domains for algebra coordinates.
//!
//! Every algebra operation is written once over [`Coeff`]. Plugging in
//! [`Scalar`] gives numeric evaluation, [`Poly`] gives evaluation at generic
//! elements (used by the strict identity checker), and [`DualPair`] gives
//! directional derivatives.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Scalar;

pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    /// Multiply by a constant of the algebra's base ring.
    fn scaled(&self, c: &Scalar) -> Self;
    /// The base-ring constant `c` as an element of this domain.
    fn lifted(&self, c: &Scalar) -> Self;

    fn add_assign(&mut self, other: &Self) {
        *self = self.plus(other);
    }
}

impl Coeff for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero_like(self)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn negated(&self) -> Self {
        self.negate()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Scalar) -> Self {
        if c.is_one() {
            return self.clone();
        }
        if c.same_ring(self) {
            return self * c;
        }
        self * &self.lifted(c)
    }
    fn lifted(&self, c: &Scalar) -> Self {
        if c.same_ring(self) {
            return c.clone();
        }
        match c.embed(&self.ring()) {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }
}

pub const MAX_DEGREE: usize = 8;

/// A monomial in at most 256 variables, stored as a sorted list of variable
/// indices (with repetition).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    len: u8,
    vars: [u8; MAX_DEGREE],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { len: 0, vars: [0; MAX_DEGREE] }
    }

    pub fn var(v: u8) -> Self {
        let mut m = Monomial::one();
        m.vars[0] = v;
        m.len = 1;
        m
    }

    pub fn vars(&self) -> &[u8] {
        &self.vars[..self.len as usize]
    }

    pub fn degree(&self) -> usize {
        self.len as usize
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let total = self.len as usize + other.len as usize;
        assert!(total <= MAX_DEGREE, "monomial degree {total} exceeds {MAX_DEGREE}");
        let (a, b) = (self.vars(), other.vars());
        let mut out = Monomial::one();
        let (mut i, mut j) = (0, 0);
        for k in 0..total {
            let take_a = j >= b.len() || (i < a.len() && a[i] <= b[j]);
            if take_a {
                out.vars[k] = a[i];
                i += 1;
            } else {
                out.vars[k] = b[j];
                j += 1;
            }
        }
        out.len = total as u8;
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vars().cmp(other.vars())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.vars().iter().map(|v| format!("t{v}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial with base-ring coefficients; terms sorted by monomial,
/// zero coefficients never stored.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: vec![(Monomial::one(), c)] }
    }

    /// The variable `t_v` with coefficient `one`.
    pub fn var(v: u8, one: Scalar) -> Self {
        Poly { terms: vec![(Monomial::var(v), one)] }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.binary_search_by(|(k, _)| k.cmp(m)).ok().map(|i| &self.terms[i].1)
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn from_unsorted(mut raw: Vec<(Monomial, Scalar)>) -> Self {
        raw.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Monomial, Scalar)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => {
                    if let Some((_, lc)) = terms.last() {
                        if lc.is_zero() {
                            terms.pop();
                        }
                    }
                    terms.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = terms.last() {
            if lc.is_zero() {
                terms.pop();
            }
        }
        Poly { terms }
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i >= a.len() {
                Ordering::Greater
            } else if j >= b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other { b[j].1.negate() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }
}

impl Coeff for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        if other.terms.is_empty() {
            return self.clone();
        }
        if self.terms.is_empty() {
            return other.clone();
        }
        self.merge(other, false)
    }
    fn minus(&self, other: &Self) -> Self {
        if other.terms.is_empty() {
            return self.clone();
        }
        self.merge(other, true)
    }
    fn negated(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.negate())).collect() }
    }
    fn times(&self, other: &Self) -> Self {
        if self.terms.is_empty() || other.terms.is_empty() {
            return Poly::zero();
        }
        if other.terms.len() == 1 && other.terms[0].0.degree() == 0 {
            return self.scaled(&other.terms[0].1);
        }
        if self.terms.len() == 1 && self.terms[0].0.degree() == 0 {
            return other.scaled(&self.terms[0].1);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                raw.push((ma.mul(mb), ca * cb));
            }
        }
        Poly::from_unsorted(raw)
    }
    fn scaled(&self, c: &Scalar) -> Self {
        if c.is_one() {
            return self.clone();
        }
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_minus_one() {
            return self.negated();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (*m, a * c))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Poly { terms }
    }
    fn lifted(&self, c: &Scalar) -> Self {
        Poly::constant(c.clone())
    }
    fn add_assign(&mut self, other: &Self) {
        if other.terms.is_empty() {
            return;
        }
        if self.terms.is_empty() {
            *self = other.clone();
            return;
        }
        *self = self.merge(other, false);
    }
}

/// `re + eps*eps_part` with `eps^2 = 0`, over any coefficient domain.
#[derive(Clone, PartialEq, Debug)]
pub struct DualPair<C> {
    pub re: C,
    pub eps: C,
}

impl<C: Coeff> Coeff for DualPair<C> {
    fn zero_like(&self) -> Self {
        DualPair { re: self.re.zero_like(), eps: self.re.zero_like() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        DualPair { re: self.re.plus(&o.re), eps: self.eps.plus(&o.eps) }
    }
    fn minus(&self, o: &Self) -> Self {
        DualPair { re: self.re.minus(&o.re), eps: self.eps.minus(&o.eps) }
    }
    fn negated(&self) -> Self {
        DualPair { re: self.re.negated(), eps: self.eps.negated() }
    }
    fn times(&self, o: &Self) -> Self {
        DualPair {
            re: self.re.times(&o.re),
            eps: self.re.times(&o.eps).plus(&self.eps.times(&o.re)),
        }
    }
    fn scaled(&self, c: &Scalar) -> Self {
        DualPair { re: self.re.scaled(c), eps: self.eps.scaled(c) }
    }
    fn lifted(&self, c: &Scalar) -> Self {
        DualPair { re: self.re.lifted(c), eps: self.re.zero_like() }
    }
}

/// Sum of `coeffs[i] * x[i]`, skipping zero coordinates.
pub(crate) fn linear_form<C: Coeff>(coeffs: &[Scalar], x: &[C], zero: &C) -> C {
    let mut acc = zero.clone();
    for (c, xi) in coeffs.iter().zip(x) {
        if !c.is_zero() && !xi.is_zero() {
            acc.add_assign(&xi.scaled(c));
        }
    }
    acc
}
