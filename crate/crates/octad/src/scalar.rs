//! Exact commutative rings: ℤ, ℚ, 𝔽_p, ℤ/n, products and dual numbers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};

/// Structural description of a base ring. Two scalars live in the same ring
/// iff their descriptors are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    PrimeField(u64),
    ModularRing(u64),
    Product(Box<RingDescriptor>, Box<RingDescriptor>),
    DualNumbers(Box<RingDescriptor>),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn radical(mut n: u64) -> u64 {
    let mut r = 1u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            r *= d;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        r *= n;
    }
    r
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i128) as u64)
}

fn reduce_big(v: &BigInt, n: u64) -> u64 {
    v.mod_floor(&BigInt::from(n)).to_u64().expect("residue fits u64")
}

impl RingDescriptor {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(RingDescriptor::PrimeField(p))
        } else {
            Err(Error::Precondition(format!("{p} is not prime")))
        }
    }

    pub fn modular(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("modulus must be positive".into()));
        }
        Ok(RingDescriptor::ModularRing(n))
    }

    pub fn product(a: RingDescriptor, b: RingDescriptor) -> Self {
        RingDescriptor::Product(Box::new(a), Box::new(b))
    }

    pub fn dual(base: RingDescriptor) -> Self {
        RingDescriptor::DualNumbers(Box::new(base))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            RingDescriptor::Integers => Scalar::Int(v.clone()),
            RingDescriptor::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            RingDescriptor::PrimeField(p) => Scalar::Fp { value: reduce_big(v, *p), p: *p },
            RingDescriptor::ModularRing(n) => Scalar::Zn { value: reduce_big(v, *n), n: *n },
            RingDescriptor::Product(a, b) => {
                Scalar::Prod(Box::new((a.from_bigint(v), b.from_bigint(v))))
            }
            RingDescriptor::DualNumbers(a) => Scalar::Dual(Box::new((a.from_bigint(v), a.zero()))),
        }
    }

    /// Image of a rational number; requires the denominator to be a unit.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        if let RingDescriptor::Rationals = self {
            return Ok(Scalar::Rat(q.clone()));
        }
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom()).try_invert()?;
        Ok(&num * &den)
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingDescriptor::Rationals | RingDescriptor::PrimeField(_))
    }

    pub fn is_ordered(&self) -> bool {
        matches!(self, RingDescriptor::Integers | RingDescriptor::Rationals)
    }

    /// No idempotents besides 0 and 1.
    pub fn is_connected(&self) -> bool {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals | RingDescriptor::PrimeField(_) => {
                true
            }
            RingDescriptor::ModularRing(n) => *n > 1 && is_prime(radical(*n)),
            RingDescriptor::Product(_, _) => false,
            RingDescriptor::DualNumbers(a) => a.is_connected(),
        }
    }

    pub fn cardinality(&self) -> Option<u64> {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => None,
            RingDescriptor::PrimeField(p) => Some(*p),
            RingDescriptor::ModularRing(n) => Some(*n),
            RingDescriptor::Product(a, b) => a.cardinality()?.checked_mul(b.cardinality()?),
            RingDescriptor::DualNumbers(a) => a.cardinality()?.checked_mul(a.cardinality()?),
        }
    }

    /// All elements of a finite ring in a fixed order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => None,
            RingDescriptor::PrimeField(p) => {
                Some((0..*p).map(|value| Scalar::Fp { value, p: *p }).collect())
            }
            RingDescriptor::ModularRing(n) => {
                Some((0..*n).map(|value| Scalar::Zn { value, n: *n }).collect())
            }
            RingDescriptor::Product(a, b) => {
                let (ea, eb) = (a.elements()?, b.elements()?);
                let mut out = Vec::with_capacity(ea.len() * eb.len());
                for x in &ea {
                    for y in &eb {
                        out.push(Scalar::pair(x.clone(), y.clone()));
                    }
                }
                Some(out)
            }
            RingDescriptor::DualNumbers(a) => {
                let ea = a.elements()?;
                let mut out = Vec::with_capacity(ea.len() * ea.len());
                for x in &ea {
                    for y in &ea {
                        out.push(Scalar::dual(x.clone(), y.clone()));
                    }
                }
                Some(out)
            }
        }
    }

    /// Inverse of `Display`: `Z`, `Q`, `F7`, `Z/6`, `(A x B)`, `A[eps]`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown ring {s:?}"));
        if let Some(base) = s.strip_suffix("[eps]") {
            return Ok(RingDescriptor::dual(RingDescriptor::parse(base)?));
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0i32;
            let bytes = inner.as_bytes();
            for i in 0..bytes.len() {
                match bytes[i] {
                    b'(' => depth += 1,
                    b')' => depth -= 1,
                    b'x' if depth == 0 && inner[..i].ends_with(' ') && inner[i + 1..].starts_with(' ') => {
                        return Ok(RingDescriptor::product(
                            RingDescriptor::parse(&inner[..i])?,
                            RingDescriptor::parse(&inner[i + 1..])?,
                        ));
                    }
                    _ => {}
                }
            }
            return Err(bad());
        }
        match s {
            "Z" => Ok(RingDescriptor::Integers),
            "Q" => Ok(RingDescriptor::Rationals),
            _ => {
                if let Some(n) = s.strip_prefix("Z/") {
                    RingDescriptor::modular(n.parse().map_err(|_| bad())?)
                } else if let Some(p) = s.strip_prefix('F') {
                    RingDescriptor::prime_field(p.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
        }
    }

    /// Random element: integers in [-9, 9] over ℤ and ℚ, uniform residues otherwise.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => {
                self.from_i64(rng.gen_range(-9..=9))
            }
            RingDescriptor::PrimeField(p) => Scalar::Fp { value: rng.gen_range(0..*p), p: *p },
            RingDescriptor::ModularRing(n) => Scalar::Zn { value: rng.gen_range(0..*n), n: *n },
            RingDescriptor::Product(a, b) => Scalar::pair(a.sample(rng), b.sample(rng)),
            RingDescriptor::DualNumbers(a) => Scalar::dual(a.sample(rng), a.sample(rng)),
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::PrimeField(p) => write!(f, "F{p}"),
            RingDescriptor::ModularRing(n) => write!(f, "Z/{n}"),
            RingDescriptor::Product(a, b) => write!(f, "({a} x {b})"),
            RingDescriptor::DualNumbers(a) => write!(f, "{a}[eps]"),
        }
    }
}

/// An element of one of the rings above. Fractions are kept in lowest terms,
/// residues in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Fp { value: u64, p: u64 },
    Zn { value: u64, n: u64 },
    Prod(Box<(Scalar, Scalar)>),
    /// `a + b*eps`
    Dual(Box<(Scalar, Scalar)>),
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

fn residue_op(a: u64, b: u64, n: u64, op: Op) -> u64 {
    let (a, b, n) = (a as u128, b as u128, n as u128);
    (match op {
        Op::Add => (a + b) % n,
        Op::Sub => (a + n - b) % n,
        Op::Mul => (a * b) % n,
    }) as u64
}

impl Scalar {
    pub fn int(v: i64) -> Scalar {
        Scalar::Int(BigInt::from(v))
    }

    pub fn rat(num: i64, den: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn pair(a: Scalar, b: Scalar) -> Scalar {
        Scalar::Prod(Box::new((a, b)))
    }

    pub fn dual(a: Scalar, b: Scalar) -> Scalar {
        Scalar::Dual(Box::new((a, b)))
    }

    pub fn ring(&self) -> RingDescriptor {
        match self {
            Scalar::Int(_) => RingDescriptor::Integers,
            Scalar::Rat(_) => RingDescriptor::Rationals,
            Scalar::Fp { p, .. } => RingDescriptor::PrimeField(*p),
            Scalar::Zn { n, .. } => RingDescriptor::ModularRing(*n),
            Scalar::Prod(x) => RingDescriptor::product(x.0.ring(), x.1.ring()),
            Scalar::Dual(x) => RingDescriptor::dual(x.0.ring()),
        }
    }

    pub fn same_ring(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Int(_), Scalar::Int(_)) | (Scalar::Rat(_), Scalar::Rat(_)) => true,
            (Scalar::Fp { p, .. }, Scalar::Fp { p: q, .. }) => p == q,
            (Scalar::Zn { n, .. }, Scalar::Zn { n: m, .. }) => n == m,
            (Scalar::Prod(x), Scalar::Prod(y)) => x.0.same_ring(&y.0) && x.1.same_ring(&y.1),
            (Scalar::Dual(x), Scalar::Dual(y)) => x.0.same_ring(&y.0),
            _ => false,
        }
    }

    pub fn in_ring(&self, ring: &RingDescriptor) -> bool {
        match (self, ring) {
            (Scalar::Int(_), RingDescriptor::Integers) => true,
            (Scalar::Rat(_), RingDescriptor::Rationals) => true,
            (Scalar::Fp { p, .. }, RingDescriptor::PrimeField(q)) => p == q,
            (Scalar::Zn { n, .. }, RingDescriptor::ModularRing(m)) => n == m,
            (Scalar::Prod(x), RingDescriptor::Product(a, b)) => x.0.in_ring(a) && x.1.in_ring(b),
            (Scalar::Dual(x), RingDescriptor::DualNumbers(a)) => x.0.in_ring(a) && x.1.in_ring(a),
            _ => false,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::RingMismatch(self.ring().to_string(), other.ring().to_string())
    }

    fn binop(&self, other: &Scalar, op: Op) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Ok(Scalar::Int(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            })),
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            })),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                Ok(Scalar::Fp { value: residue_op(*a, *b, *p, op), p: *p })
            }
            (Scalar::Zn { value: a, n }, Scalar::Zn { value: b, n: m }) if n == m => {
                Ok(Scalar::Zn { value: residue_op(*a, *b, *n, op), n: *n })
            }
            (Scalar::Prod(x), Scalar::Prod(y)) => {
                Ok(Scalar::pair(x.0.binop(&y.0, op)?, x.1.binop(&y.1, op)?))
            }
            (Scalar::Dual(x), Scalar::Dual(y)) => match op {
                Op::Add | Op::Sub => Ok(Scalar::dual(x.0.binop(&y.0, op)?, x.1.binop(&y.1, op)?)),
                Op::Mul => {
                    let re = x.0.binop(&y.0, Op::Mul)?;
                    let eps = x.0.binop(&y.1, Op::Mul)?.binop(&x.1.binop(&y.0, Op::Mul)?, Op::Add)?;
                    Ok(Scalar::dual(re, eps))
                }
            },
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.binop(other, Op::Add)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.binop(other, Op::Sub)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.binop(other, Op::Mul)
    }

    pub fn negate(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { value, p } => Scalar::Fp { value: (p - value) % p, p: *p },
            Scalar::Zn { value, n } => Scalar::Zn { value: (n - value) % n, n: *n },
            Scalar::Prod(x) => Scalar::pair(x.0.negate(), x.1.negate()),
            Scalar::Dual(x) => Scalar::dual(x.0.negate(), x.1.negate()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(a) => a.is_zero(),
            Scalar::Rat(a) => a.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
            Scalar::Zn { value, .. } => *value == 0,
            Scalar::Prod(x) | Scalar::Dual(x) => x.0.is_zero() && x.1.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(a) => a.is_one(),
            Scalar::Rat(a) => a.is_one(),
            Scalar::Fp { value, p } => *value == 1 % p,
            Scalar::Zn { value, n } => *value == 1 % n,
            Scalar::Prod(x) => x.0.is_one() && x.1.is_one(),
            Scalar::Dual(x) => x.0.is_one() && x.1.is_zero(),
        }
    }

    pub fn is_minus_one(&self) -> bool {
        self.negate().is_one()
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Int(_) => Scalar::Int(BigInt::zero()),
            Scalar::Rat(_) => Scalar::Rat(BigRational::zero()),
            Scalar::Fp { p, .. } => Scalar::Fp { value: 0, p: *p },
            Scalar::Zn { n, .. } => Scalar::Zn { value: 0, n: *n },
            Scalar::Prod(x) => Scalar::pair(x.0.zero_like(), x.1.zero_like()),
            Scalar::Dual(x) => Scalar::dual(x.0.zero_like(), x.1.zero_like()),
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Int(_) => Scalar::Int(BigInt::one()),
            Scalar::Rat(_) => Scalar::Rat(BigRational::one()),
            Scalar::Fp { p, .. } => Scalar::Fp { value: 1 % p, p: *p },
            Scalar::Zn { n, .. } => Scalar::Zn { value: 1 % n, n: *n },
            Scalar::Prod(x) => Scalar::pair(x.0.one_like(), x.1.one_like()),
            Scalar::Dual(x) => Scalar::dual(x.0.one_like(), x.1.zero_like()),
        }
    }

    /// Inverse, or `NotAUnit` when none exists.
    pub fn try_invert(&self) -> Result<Scalar> {
        let not_unit = || Error::NotAUnit(self.to_string());
        match self {
            Scalar::Int(a) => {
                if a.is_one() || (-a).is_one() {
                    Ok(self.clone())
                } else {
                    Err(not_unit())
                }
            }
            Scalar::Rat(a) => {
                if a.is_zero() {
                    Err(not_unit())
                } else {
                    Ok(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Fp { value, p } => {
                mod_inverse(*value, *p).map(|v| Scalar::Fp { value: v, p: *p }).ok_or_else(not_unit)
            }
            Scalar::Zn { value, n } => {
                if *n == 1 {
                    return Ok(self.clone());
                }
                mod_inverse(*value, *n).map(|v| Scalar::Zn { value: v, n: *n }).ok_or_else(not_unit)
            }
            Scalar::Prod(x) => {
                let a = x.0.try_invert().map_err(|_| not_unit())?;
                let b = x.1.try_invert().map_err(|_| not_unit())?;
                Ok(Scalar::pair(a, b))
            }
            Scalar::Dual(x) => {
                let inv = x.0.try_invert().map_err(|_| not_unit())?;
                let eps = (&(&inv * &inv) * &x.1).negate();
                Ok(Scalar::dual(inv, eps))
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.try_invert().is_ok()
    }

    pub fn is_nilpotent(&self) -> bool {
        match self {
            Scalar::Int(_) | Scalar::Rat(_) | Scalar::Fp { .. } => self.is_zero(),
            Scalar::Zn { value, n } => value % radical(*n) == 0,
            Scalar::Prod(x) => x.0.is_nilpotent() && x.1.is_nilpotent(),
            Scalar::Dual(x) => x.0.is_nilpotent(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Canonical image in `target`: ℤ maps everywhere, ℚ maps where denominators
    /// are units, and R maps into R[eps].
    pub fn embed(&self, target: &RingDescriptor) -> Result<Scalar> {
        if self.in_ring(target) {
            return Ok(self.clone());
        }
        match (self, target) {
            (Scalar::Int(v), _) => Ok(target.from_bigint(v)),
            (Scalar::Rat(q), _) => target.from_rational(q),
            (_, RingDescriptor::DualNumbers(base)) => {
                Ok(Scalar::dual(self.embed(base)?, base.zero()))
            }
            _ => Err(Error::RingMismatch(self.ring().to_string(), target.to_string())),
        }
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(a) => Some(a.clone()),
            Scalar::Rat(a) if a.is_integer() => Some(a.to_integer()),
            _ => None,
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Int(a) => Some(BigRational::from_integer(a.clone())),
            Scalar::Rat(a) => Some(a.clone()),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.to_bigint().is_some()
    }

    /// Sign over an ordered ring.
    pub fn signum(&self) -> Option<i32> {
        let s = match self {
            Scalar::Int(a) => a.signum(),
            Scalar::Rat(a) => a.numer().signum(),
            _ => return None,
        };
        s.to_i32()
    }

    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Int(a) => Value::String(a.to_string()),
            Scalar::Rat(a) => Value::String(a.to_string()),
            Scalar::Fp { value, .. } | Scalar::Zn { value, .. } => Value::from(*value),
            Scalar::Prod(x) | Scalar::Dual(x) => Value::Array(vec![x.0.to_json(), x.1.to_json()]),
        }
    }

    pub fn from_json(ring: &RingDescriptor, v: &Value) -> Result<Scalar> {
        let bad = || Error::Parse(format!("cannot read {v} as an element of {ring}"));
        match ring {
            RingDescriptor::Integers | RingDescriptor::Rationals => {
                let s = v.as_str().ok_or_else(bad)?;
                Scalar::parse(ring, s)
            }
            RingDescriptor::PrimeField(_) | RingDescriptor::ModularRing(_) => {
                let n = v.as_u64().ok_or_else(bad)?;
                Ok(ring.from_bigint(&BigInt::from(n)))
            }
            RingDescriptor::Product(a, b) => {
                let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
                Ok(Scalar::pair(Scalar::from_json(a, &arr[0])?, Scalar::from_json(b, &arr[1])?))
            }
            RingDescriptor::DualNumbers(a) => {
                let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
                Ok(Scalar::dual(Scalar::from_json(a, &arr[0])?, Scalar::from_json(a, &arr[1])?))
            }
        }
    }

    /// Reads an integer or a fraction `p/q` and maps it into `ring`.
    pub fn parse(ring: &RingDescriptor, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar literal {s:?}"));
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?),
        };
        if let RingDescriptor::Integers = ring {
            if !q.is_integer() {
                return Err(Error::Parse(format!("{s} is not an integer")));
            }
        }
        ring.from_rational(&q)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(a) => write!(f, "{a}"),
            Scalar::Rat(a) => write!(f, "{a}"),
            Scalar::Fp { value, p } => write!(f, "{value} mod {p}"),
            Scalar::Zn { value, n } => write!(f, "{value} mod {n}"),
            Scalar::Prod(x) => write!(f, "({}, {})", x.0, x.1),
            Scalar::Dual(x) => write!(f, "{} + {}*eps", x.0, x.1),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.binop(rhs, $op) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, Op::Add);
forward_binop!(Sub, sub, Op::Sub);
forward_binop!(Mul, mul, Op::Mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}
