//! The Cayley–Dickson doubling `Cay(B, mu) = B ⊕ Bj`.

use std::sync::Arc;

use crate::coeff::Coeff;
use crate::conic::{base_ring_algebra, cartan_schouten, ConicAlgebra, ConicElement, ConicHandle, ConicIdentity, Doubling};
use crate::error::{Error, Result};
use crate::identity;
use crate::linalg::{self, LinearMap};
use crate::scalar::{RingDescriptor, Scalar};

const GENERATORS: [&str; 6] = ["i", "j", "l", "m", "n", "p"];

/// `(u1 + v1 j)(u2 + v2 j) = (u1 u2 + mu conj(v2) v1) + (v2 u1 + v1 conj(u2)) j`
/// on concatenated coordinates `(u, v)`.
pub fn doubled_mul<C: Coeff>(base: &ConicAlgebra, mu: &Scalar, x: &[C], y: &[C]) -> Vec<C> {
    let n = base.dim();
    let (u1, v1) = x.split_at(n);
    let (u2, v2) = y.split_at(n);
    let left: Vec<C> = base
        .mul_coords(u1, u2)
        .iter()
        .zip(base.mul_coords(&base.conj_coords(v2), v1))
        .map(|(a, b)| a.plus(&b.scaled(mu)))
        .collect();
    let right: Vec<C> = base
        .mul_coords(v2, u1)
        .iter()
        .zip(base.mul_coords(v1, &base.conj_coords(u2)))
        .map(|(a, b)| a.plus(&b))
        .collect();
    left.into_iter().chain(right).collect()
}

fn depth(b: &ConicAlgebra) -> (usize, usize) {
    match b.doubling() {
        Some(d) => {
            let (k, root) = depth(&d.base);
            (k + 1, root)
        }
        None => (0, b.dim()),
    }
}

/// `Cay(B, mu)` on coordinates `(u, v) ~ u + vj`, unit `(1_B, 0)` and norm
/// `n_B ⊥ (-mu) n_B`.
pub fn cayley_dickson(base: &Arc<ConicAlgebra>, mu: &Scalar) -> Result<Arc<ConicAlgebra>> {
    let k = base.ring().clone();
    if !mu.in_ring(&k) {
        return Err(Error::RingMismatch(mu.ring().to_string(), k.to_string()));
    }
    if !mu.is_unit() {
        return Err(Error::NotAUnit(mu.to_string()));
    }
    for id in [ConicIdentity::ConjugationInvolution, ConicIdentity::NormComposition] {
        if let Some(f) = identity::check_strict(base.as_ref(), &id.identity())?.failure() {
            return Err(Error::Precondition(format!(
                "{} is not multiplicative: {} fails at {}",
                base.name(),
                f.check,
                f.witness.to_json()
            )));
        }
    }
    let n = base.dim();
    let dim = 2 * n;
    let basis = |a: usize| {
        let mut e = vec![k.zero(); dim];
        e[a] = k.one();
        e
    };
    let table = (0..dim)
        .map(|a| (0..dim).map(|b| doubled_mul(base, mu, &basis(a), &basis(b))).collect())
        .collect();
    let mut unit = base.unit_coords().to_vec();
    unit.extend(vec![k.zero(); n]);
    let norm = base.norm_form().orthogonal_sum(&base.norm_form().scaled(&mu.negate()))?;

    let (d, root) = depth(base);
    let gen = GENERATORS[(d + usize::from(root > 1)).min(GENERATORS.len() - 1)];
    let unit_label = base.unit_coords().iter().position(|c| c.is_one()).filter(|&i| {
        base.unit_coords().iter().enumerate().all(|(j, c)| j == i || c.is_zero())
    });
    let mut labels = base.labels().to_vec();
    for (i, l) in base.labels().iter().enumerate() {
        labels.push(if Some(i) == unit_label { gen.to_string() } else { format!("{l}{gen}") });
    }
    let alg = ConicAlgebra::new(&format!("Cay({}, {})", base.name(), mu), k, table, unit, norm, labels)?
        .with_doubling(Doubling { base: base.clone(), mu: mu.clone() });
    Ok(Arc::new(alg))
}

/// `Cay(k; mu_1, ..., mu_t)`, doubling the base ring `t` times. Coordinate
/// `i` is the basis monomial whose generators are the set bits of `i`.
pub fn iterated(k: &RingDescriptor, mus: &[Scalar]) -> Result<Arc<ConicAlgebra>> {
    let mut alg = base_ring_algebra(k);
    for mu in mus {
        alg = cayley_dickson(&alg, mu)?;
    }
    Ok(alg)
}

/// `Cay(k; -1, -1)`.
pub fn quaternions(k: &RingDescriptor) -> Arc<ConicAlgebra> {
    let m = k.from_i64(-1);
    iterated(k, &[m.clone(), m]).expect("quaternions")
}

/// `Cay(O, -1)` over the octonions with the orthonormal table of
/// [`cartan_schouten`].
pub fn sedenions(k: &RingDescriptor) -> Arc<ConicAlgebra> {
    cayley_dickson(&cartan_schouten(k), &k.from_i64(-1)).expect("sedenions")
}

fn doubling_of(x: &ConicElement) -> Result<&Doubling> {
    x.algebra()
        .doubling()
        .ok_or_else(|| Error::Precondition(format!("{} is not a Cayley-Dickson algebra", x.algebra().name())))
}

/// `n(xy) - n(x) n(y)`.
pub fn composition_defect(x: &ConicElement, y: &ConicElement) -> Result<Scalar> {
    doubling_of(x)?;
    Ok(&x.mul(y)?.norm() - &(&x.norm() * &y.norm()))
}

/// `-mu n_B([v2, u1, u2], v1)` for `x = u1 + v1 j`, `y = u2 + v2 j`, where
/// `[a, b, c] = (ab)c - a(bc)`. Agrees with [`composition_defect`].
pub fn composition_defect_formula(x: &ConicElement, y: &ConicElement) -> Result<Scalar> {
    let d = doubling_of(x)?;
    if x.algebra() != y.algebra() {
        return Err(Error::Precondition("elements of different algebras".into()));
    }
    let b = &d.base;
    let n = b.dim();
    let (u1, v1) = x.coords().split_at(n);
    let (u2, v2) = y.coords().split_at(n);
    let u1 = b.element(u1.to_vec())?;
    let u2 = b.element(u2.to_vec())?;
    let v1 = b.element(v1.to_vec())?;
    let v2 = b.element(v2.to_vec())?;
    let assoc = v2.associator(&u1, &u2)?;
    Ok((&d.mu * &assoc.norm_polar(&v1)?).negate())
}

/// The zero divisor pair `a = w1 + w3 j`, `b = w2 - w6 j` of the sedenions
/// over `k` (ℤ or ℚ).
pub fn sedenion_zero_divisor_witness(k: &RingDescriptor) -> Result<(ConicElement, ConicElement)> {
    if !matches!(k, RingDescriptor::Integers | RingDescriptor::Rationals) {
        return Err(Error::Precondition(format!("sedenion witness needs Z or Q, got {k}")));
    }
    let s = sedenions(k);
    let mut a = vec![0i64; 16];
    a[1] = 1;
    a[8 + 3] = 1;
    let mut b = vec![0i64; 16];
    b[2] = 1;
    b[8 + 6] = -1;
    Ok((s.from_ints(&a), s.from_ints(&b)))
}

/// A linear map between two conic algebras that has been checked to be a
/// unital homomorphism preserving the norm.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: Arc<ConicAlgebra>,
    pub target: Arc<ConicAlgebra>,
    pub map: LinearMap,
}

impl AlgebraMap {
    pub fn apply(&self, x: &ConicElement) -> Result<ConicElement> {
        self.target.element(self.map.apply(x.coords()))
    }
}

/// Checks that `map` sends the unit to the unit, preserves the norm (on basis
/// vectors and their polarizations) and all basis products.
pub fn verify_homomorphism(source: &ConicAlgebra, target: &ConicAlgebra, map: &LinearMap) -> Result<()> {
    let fail = |what: String| Err(Error::Precondition(format!("homomorphism check failed: {what}")));
    if map.apply(source.unit_coords()) != target.unit_coords() {
        return fail("unit".into());
    }
    let images: Vec<Vec<Scalar>> = (0..source.dim()).map(|i| map.apply(&source.basis_coords(i))).collect();
    for a in 0..source.dim() {
        let ea = source.basis_coords(a);
        if target.norm_coords(&images[a]) != source.norm_coords(&ea) {
            return fail(format!("norm of {}", source.labels()[a]));
        }
        for b in 0..source.dim() {
            let eb = source.basis_coords(b);
            if b > a && target.polar_coords(&images[a], &images[b]) != source.polar_coords(&ea, &eb) {
                return fail(format!("polar form on ({}, {})", source.labels()[a], source.labels()[b]));
            }
            if map.apply(source.basis_product(a, b)) != target.mul_coords(&images[a], &images[b]) {
                return fail(format!("product {} {}", source.labels()[a], source.labels()[b]));
            }
        }
    }
    Ok(())
}

/// The map `u + vj ↦ u + (av) j`, verified as an isomorphism
/// `Cay(B, n_B(a) mu) → Cay(B, mu)`. With `nucleus_check`, `a` is first
/// checked to associate with all basis pairs of `B`.
pub fn scale_isomorphism(
    base: &Arc<ConicAlgebra>,
    mu: &Scalar,
    a: &ConicElement,
    nucleus_check: bool,
) -> Result<AlgebraMap> {
    if a.algebra() != base {
        return Err(Error::Precondition("scaling element must lie in the base algebra".into()));
    }
    let na = a.norm();
    if !na.is_unit() {
        return Err(Error::NotAUnit(na.to_string()));
    }
    if nucleus_check {
        let n = base.dim();
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (base.basis(i), base.basis(j));
                let in_nucleus = a.associator(&x, &y)?.is_zero()
                    && x.associator(a, &y)?.is_zero()
                    && x.associator(&y, a)?.is_zero();
                if !in_nucleus {
                    return Err(Error::Precondition(format!(
                        "{a} is not in the nucleus (basis pair {}, {})",
                        base.labels()[i],
                        base.labels()[j]
                    )));
                }
            }
        }
    }
    let source = cayley_dickson(base, &(&na * mu))?;
    let target = cayley_dickson(base, mu)?;
    let n = base.dim();
    let k = base.ring();
    let mut m = linalg::zeros(k, 2 * n, 2 * n);
    for i in 0..n {
        m[i][i] = k.one();
        let image = base.mul_coords(a.coords(), &base.basis_coords(i));
        for (r, c) in image.into_iter().enumerate() {
            m[n + r][n + i] = c;
        }
    }
    let map = LinearMap { matrix: m };
    verify_homomorphism(&source, &target, &map)?;
    Ok(AlgebraMap { source, target, map })
}

/// `v s v^{-1}`, computed as `(v s) v^{-1}`, for a trace-zero `s`.
pub fn quat_rotate(v: &ConicElement, s: &ConicElement) -> Result<ConicElement> {
    if !s.trace().is_zero() {
        return Err(Error::Precondition(format!("rotated element {s} has nonzero trace")));
    }
    let inv = v.try_inverse()?;
    v.mul(s)?.mul(&inv)
}
