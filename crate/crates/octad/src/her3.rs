//! Hermitian 3×3 matrices `Her3(C, Γ)` over a conic algebra `C` with its
//! standard conjugation, as cubic norm structures.
//!
//! An element is `Σ ξ_i e_ii + u_i[jl]` with `(ijl)` cyclic, where
//! `u[jl] = γ_l u e_jl + γ_j ū e_lj`. Coordinates are `(ξ_1, ξ_2, ξ_3)`
//! followed by the coordinates of `u_1`, `u_2`, `u_3` in `C`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::{Coeff, Poly};
use crate::conic::{format_coords, ConicAlgebra, ConicElement, ConicHandle, ConicIdentity};
use crate::cubic::{CubicData, CubicElement, CubicHandle, CubicMap, IdemClass};
use crate::error::{Error, Result};
use crate::identity;
use crate::linalg::LinearMap;
use crate::scalar::{RingDescriptor, Scalar};

/// Largest dimension an exhaustive census will scan.
pub const MAX_CENSUS_DIM: usize = 12;

const SLOTS: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
const SLOT_NAMES: [&str; 3] = ["23", "31", "12"];

/// Diagonal scaling data `Γ = diag(γ_1, γ_2, γ_3)` with unit entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Gamma([Scalar; 3]);

impl Gamma {
    pub fn new(g: [Scalar; 3]) -> Result<Self> {
        if let Some(c) = g.iter().find(|c| !c.is_unit()) {
            return Err(Error::NotAUnit(c.to_string()));
        }
        let ring = g[0].ring();
        if let Some(c) = g.iter().find(|c| !c.in_ring(&ring)) {
            return Err(Error::RingMismatch(c.ring().to_string(), ring.to_string()));
        }
        Ok(Gamma(g))
    }

    pub fn one(k: &RingDescriptor) -> Self {
        Gamma([k.one(), k.one(), k.one()])
    }

    pub fn entries(&self) -> &[Scalar; 3] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.0[i]
    }

    pub fn product(&self) -> Scalar {
        &(&self.0[0] * &self.0[1]) * &self.0[2]
    }

    /// `(γ_2 γ_3, γ_3 γ_1, γ_1 γ_2)`.
    pub fn sharp(&self) -> Gamma {
        Gamma(SLOTS.map(|(_, j, l)| &self.0[j] * &self.0[l]))
    }

    pub fn inverse(&self) -> Gamma {
        Gamma(self.0.clone().map(|c| c.try_invert().expect("entries are units")))
    }

    pub fn mul(&self, other: &Gamma) -> Gamma {
        Gamma([0, 1, 2].map(|i| &self.0[i] * &other.0[i]))
    }
}

/// `(ξ, u)` coordinates of a hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Her3Element {
    pub xi: [Scalar; 3],
    pub u: [ConicElement; 3],
}

pub type Mat3 = [[ConicElement; 3]; 3];

#[derive(Clone, Debug, PartialEq)]
pub struct Her3 {
    conic: Arc<ConicAlgebra>,
    gamma: Gamma,
    data: Arc<CubicData>,
}

fn lift(c: &Scalar) -> Poly {
    Poly::zero().lifted(c)
}

/// Builds `Her3(C, Γ)`. `C` must be multiplicative (conjugation an
/// involution, norm composition) and of dimension 1, 2, 4 or 8.
pub fn her3(conic: &Arc<ConicAlgebra>, gamma: &Gamma) -> Result<Her3> {
    let d = conic.dim();
    if ![1, 2, 4, 8].contains(&d) {
        return Err(Error::Precondition(format!("coefficient algebra of dimension {d}")));
    }
    let k = conic.ring().clone();
    if !gamma.0[0].in_ring(&k) {
        return Err(Error::RingMismatch(gamma.0[0].ring().to_string(), k.to_string()));
    }
    for id in [ConicIdentity::ConjugationInvolution, ConicIdentity::NormComposition] {
        if let Some(f) = identity::check_strict(conic.as_ref(), &id.identity())?.failure() {
            return Err(Error::Precondition(format!(
                "{} is not multiplicative: {} fails",
                conic.name(),
                f.check
            )));
        }
    }
    let mut labels: Vec<String> = ["e11", "e22", "e33"].iter().map(|s| s.to_string()).collect();
    for name in SLOT_NAMES {
        labels.extend(conic.labels().iter().map(|l| format!("{l}[{name}]")));
    }
    let mut basepoint = vec![k.one(); 3];
    basepoint.extend(vec![k.zero(); 3 * d]);
    let g: Vec<Poly> = gamma.0.iter().map(lift).collect();
    let c = conic.as_ref();
    let split = |x: &[Poly]| -> (Vec<Poly>, Vec<Vec<Poly>>) {
        (x[..3].to_vec(), (0..3).map(|i| x[3 + i * d..3 + (i + 1) * d].to_vec()).collect())
    };
    let sharp_law = |x: &[Poly]| -> Vec<Poly> {
        let (xi, u) = split(x);
        let mut out: Vec<Poly> = SLOTS
            .iter()
            .map(|&(i, j, l)| xi[j].times(&xi[l]).minus(&c.norm_coords(&u[i]).times(&g[j]).times(&g[l])))
            .collect();
        for &(i, j, l) in &SLOTS {
            let prod = c.conj_coords(&c.mul_coords(&u[j], &u[l]));
            out.extend(u[i].iter().zip(&prod).map(|(ui, p)| p.times(&g[i]).minus(&ui.times(&xi[i]))));
        }
        out
    };
    let norm_law = |x: &[Poly]| -> Poly {
        let (xi, u) = split(x);
        let mut n = xi[0].times(&xi[1]).times(&xi[2]);
        for &(i, j, l) in &SLOTS {
            n = n.minus(&c.norm_coords(&u[i]).times(&xi[i]).times(&g[j]).times(&g[l]));
        }
        let t = c.trace_coords(&c.mul_coords(&c.mul_coords(&u[0], &u[1]), &u[2]));
        n.plus(&t.times(&lift(&gamma.product())))
    };
    let gamma_name = gamma.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    let data = CubicData::from_laws(
        &format!("Her3({}; {gamma_name})", conic.name()),
        k,
        labels,
        basepoint,
        sharp_law,
        norm_law,
    )?;
    Ok(Her3 { conic: conic.clone(), gamma: gamma.clone(), data: Arc::new(data) })
}

impl Her3 {
    pub fn conic(&self) -> &Arc<ConicAlgebra> {
        &self.conic
    }

    pub fn gamma(&self) -> &Gamma {
        &self.gamma
    }

    pub fn cubic(&self) -> &Arc<CubicData> {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn element(&self, x: &Her3Element) -> Result<CubicElement> {
        let mut coords = x.xi.to_vec();
        for u in &x.u {
            if u.algebra().as_ref() != self.conic.as_ref() {
                return Err(Error::Precondition(format!("{u} is not in {}", self.conic.name())));
            }
            coords.extend(u.coords().iter().cloned());
        }
        self.data.element(coords)
    }

    /// `ξ_1 e_11 + ξ_2 e_22 + ξ_3 e_33`.
    pub fn diagonal(&self, xi: [Scalar; 3]) -> Result<CubicElement> {
        let z = self.conic.zero();
        self.element(&Her3Element { xi, u: [z.clone(), z.clone(), z] })
    }

    pub fn split(&self, x: &CubicElement) -> Result<Her3Element> {
        if x.algebra().as_ref() != self.data.as_ref() {
            return Err(Error::Precondition(format!("{x} is not in {}", self.data.name())));
        }
        let d = self.conic.dim();
        let c = x.coords();
        let u = [0, 1, 2].map(|i| self.conic.element(c[3 + i * d..3 + (i + 1) * d].to_vec()).expect("coordinates"));
        Ok(Her3Element { xi: [c[0].clone(), c[1].clone(), c[2].clone()], u })
    }

    /// The matrix in `Mat3(C)` with `(j, l)` entry `γ_l u_i` and `(l, j)`
    /// entry `γ_j ū_i`.
    pub fn matrix(&self, x: &Her3Element) -> Mat3 {
        let one = self.conic.one();
        let mut m: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| self.conic.zero()));
        for (i, j, l) in SLOTS {
            m[i][i] = one.scale(&x.xi[i]);
            m[j][l] = x.u[i].scale(&self.gamma.0[l]);
            m[l][j] = x.u[i].conj().scale(&self.gamma.0[j]);
        }
        m
    }

    pub fn matrix_mul(&self, a: &Mat3, b: &Mat3) -> Mat3 {
        std::array::from_fn(|r| {
            std::array::from_fn(|s| {
                (0..3).fold(self.conic.zero(), |acc, t| &acc + &a[r][t].mul(&b[t][s]).expect("same algebra"))
            })
        })
    }

    /// The common diagonal entry of `x♯ x - N(x) 1` computed in `Mat3(C)`.
    /// Fails if that matrix is not scalar.
    pub fn associator_defect(&self, x: &Her3Element) -> Result<ConicElement> {
        let xe = self.element(x)?;
        let sharp = self.split(&xe.sharp())?;
        let mut p = self.matrix_mul(&self.matrix(&sharp), &self.matrix(x));
        let n = self.conic.one().scale(&xe.norm());
        for (r, row) in p.iter_mut().enumerate() {
            row[r] = &row[r] - &n;
        }
        let d = p[0][0].clone();
        for (r, row) in p.iter().enumerate() {
            for (s, entry) in row.iter().enumerate() {
                let ok = if r == s { *entry == d } else { entry.is_zero() };
                if !ok {
                    return Err(Error::Precondition(format!("x♯x - N(x)1 has entry {entry} at ({r}, {s})")));
                }
            }
        }
        Ok(d)
    }

    /// Positivity via the minors `ξ_i`, the diagonal of `x♯` and `N(x)`.
    /// Needs an ordered base ring and `Γ = 1`.
    pub fn is_positive_definite(&self, x: &CubicElement) -> Result<bool> {
        let k = self.conic.ring();
        if !k.is_ordered() {
            return Err(Error::Precondition(format!("positivity needs an ordered ring, got {k}")));
        }
        if self.gamma != Gamma::one(k) {
            return Err(Error::Precondition("positivity is implemented for Γ = 1 only".into()));
        }
        let positive = |c: &Scalar| c.to_rational().is_some_and(|q| q > num_rational::BigRational::from_integer(0.into()));
        let sharp = x.sharp();
        Ok(x.coords()[..3].iter().all(positive) && sharp.coords()[..3].iter().all(positive) && positive(&x.norm()))
    }

    /// `Her3(C, Γ') ` with `Γ' = Δ♯ Δ^{-1} Γ` and the isomorphism
    /// `ξ_i ↦ ξ_i`, `u_i ↦ δ_i^{-1} u_i` onto it.
    pub fn diag_rescale(&self, delta: &Gamma) -> Result<(Her3, CubicMap)> {
        let target_gamma = delta.sharp().mul(&delta.inverse()).mul(&self.gamma);
        let target = her3(&self.conic, &target_gamma)?;
        let k = self.conic.ring();
        let d = self.conic.dim();
        let n = self.dim();
        let mut m = vec![vec![k.zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate().take(3) {
            row[i] = k.one();
        }
        let inv = delta.inverse();
        for i in 0..3 {
            for a in 0..d {
                let idx = 3 + i * d + a;
                m[idx][idx] = inv.0[i].clone();
            }
        }
        let map = CubicMap::new(self.data.clone(), target.data.clone(), LinearMap { matrix: m })?;
        Ok((target, map))
    }

    /// Text rendering as a 3×3 matrix with both off-diagonal halves shown.
    pub fn render(&self, x: &CubicElement) -> Result<String> {
        let m = self.matrix(&self.split(x)?);
        let cells: Vec<Vec<String>> = m
            .iter()
            .map(|row| row.iter().map(|c| format_coords(c.coords(), self.conic.labels())).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for row in &cells {
            out.push_str("[ ");
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            out.push_str(&padded.join("  "));
            out.push_str(" ]\n");
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Her3Count {
    RankOne,
    ElementaryIdempotents,
}

impl Her3Count {
    pub fn parse(s: &str) -> Option<Her3Count> {
        match s {
            "rank1" | "her3-rank1" => Some(Her3Count::RankOne),
            "elementary" | "elid" | "her3-elid" => Some(Her3Count::ElementaryIdempotents),
            _ => None,
        }
    }
}

/// Exhaustive scan of a cubic structure over `𝔽_2`.
pub fn census_f2_cubic(data: &Arc<CubicData>, what: Her3Count) -> Result<u64> {
    if data.ring() != &RingDescriptor::PrimeField(2) {
        return Err(Error::Precondition(format!("census needs F2, got {}", data.ring())));
    }
    let n = data.dim();
    if n > MAX_CENSUS_DIM {
        return Err(Error::CostGuard(format!("2^{n} elements exceed the census limit 2^{MAX_CENSUS_DIM}")));
    }
    let k = data.ring();
    let mut count = 0u64;
    for mask in 0u64..(1 << n) {
        let coords = (0..n).map(|b| k.from_i64((mask >> b & 1) as i64)).collect();
        let x = data.element(coords)?;
        let hit = match what {
            Her3Count::RankOne => x.rank()? == 1,
            Her3Count::ElementaryIdempotents => x.idem_class()? == IdemClass::Elementary,
        };
        count += u64::from(hit);
    }
    Ok(count)
}

/// Census of `Her3(C, 1)` for a conic `C` over `𝔽_2`.
pub fn census_f2(conic: &Arc<ConicAlgebra>, what: Her3Count) -> Result<u64> {
    let h = her3(conic, &Gamma::one(conic.ring()))?;
    census_f2_cubic(h.cubic(), what)
}

/// Histogram of norm values over all elements of a cubic structure over a
/// finite ring, keyed by the printed value.
pub fn norm_histogram(data: &Arc<CubicData>) -> Result<BTreeMap<String, u64>> {
    let k = data.ring();
    let elems = k.elements().ok_or_else(|| Error::Precondition(format!("{k} is infinite")))?;
    let q = elems.len() as u128;
    let total = q.checked_pow(data.dim() as u32).unwrap_or(u128::MAX);
    if total > 1 << MAX_CENSUS_DIM {
        return Err(Error::CostGuard(format!("{total} elements exceed the census limit")));
    }
    let mut hist = BTreeMap::new();
    for idx in 0..total {
        let mut r = idx;
        let coords: Vec<Scalar> = (0..data.dim())
            .map(|_| {
                let c = elems[(r % q) as usize].clone();
                r /= q;
                c
            })
            .collect();
        *hist.entry(data.norm_generic(&coords).to_string()).or_insert(0) += 1;
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::base_ring_algebra;

    #[test]
    fn identity_matrix() {
        let h = her3(&base_ring_algebra(&RingDescriptor::Rationals), &Gamma::one(&RingDescriptor::Rationals)).unwrap();
        let one = h.cubic().one();
        assert!(one.norm().is_one());
        assert_eq!(one.sharp(), one);
        assert_eq!(h.dim(), 6);
    }

    #[test]
    fn rescale_example() {
        let k = RingDescriptor::Rationals;
        let g = Gamma::new([Scalar::rat(2, 1), Scalar::rat(3, 1), Scalar::rat(1, 1)]).unwrap();
        let h = her3(&base_ring_algebra(&k), &g).unwrap();
        let (t, _) = h.diag_rescale(&g.inverse()).unwrap();
        assert_eq!(t.gamma().entries(), &[Scalar::rat(4, 3), Scalar::rat(9, 2), Scalar::rat(1, 6)]);
    }
}
