use std::sync::Arc;

use octad::cayley::quaternions;
use octad::conic::{base_ring_algebra, cartan_schouten, split_etale, ConicHandle};
use octad::cubic::{CubicElement, CubicHandle, IdemClass};
use octad::her3::{census_f2, census_f2_cubic, her3, norm_histogram, Gamma, Her3, Her3Count, Her3Element};
use octad::tits::mat3;
use octad::{CheckMode, ConicAlgebra, ConicElement, RingDescriptor, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::rat(n, d)
}

fn gamma(g: [i64; 3]) -> Gamma {
    Gamma::new(g.map(|v| q(v, 1))).unwrap()
}

fn random_element(h: &Her3, rng: &mut ChaCha8Rng) -> Her3Element {
    let k = h.conic().ring().clone();
    let d = h.conic().dim();
    let c = |rng: &mut ChaCha8Rng| k.from_i64(rng.gen_range(-4..=4));
    let xi = [c(rng), c(rng), c(rng)];
    let u = [0, 1, 2].map(|_| h.conic().element((0..d).map(|_| c(rng)).collect()).unwrap());
    Her3Element { xi, u }
}

/// 3×3 matrices over F2 as bit masks, row-major.
fn f2_mul(a: u16, b: u16) -> u16 {
    let mut out = 0;
    for r in 0..3 {
        for s in 0..3 {
            let mut v = 0;
            for t in 0..3 {
                v ^= (a >> (3 * r + t)) & (b >> (3 * t + s)) & 1;
            }
            out |= v << (3 * r + s);
        }
    }
    out
}

fn f2_rank(m: u16) -> u32 {
    let mut rows: Vec<u16> = (0..3).map(|r| (m >> (3 * r)) & 7).collect();
    let mut rank = 0;
    for bit in 0..3 {
        if let Some(p) = (rank as usize..3).find(|&i| rows[i] >> bit & 1 == 1) {
            rows.swap(rank as usize, p);
            for i in 0..3 {
                if i != rank as usize && rows[i] >> bit & 1 == 1 {
                    rows[i] ^= rows[rank as usize];
                }
            }
            rank += 1;
        }
    }
    rank
}

fn transpose(m: u16) -> u16 {
    let mut out = 0;
    for r in 0..3 {
        for s in 0..3 {
            out |= ((m >> (3 * r + s)) & 1) << (3 * s + r);
        }
    }
    out
}

#[test]
fn identity_matrix_over_q() {
    let k = RingDescriptor::Rationals;
    let h = her3(&base_ring_algebra(&k), &Gamma::one(&k)).unwrap();
    let one = h.cubic().one();
    assert!(one.norm().is_one());
    assert_eq!(one.sharp(), one);
    assert_eq!(one.trace(), q(3, 1));
}

#[test]
fn diagonal_trace_is_dot_product() {
    let k = RingDescriptor::Rationals;
    let h = her3(&quaternions(&k), &gamma([2, -1, 3])).unwrap();
    let x = h.diagonal([q(1, 1), q(-2, 1), q(5, 1)]).unwrap();
    let y = h.diagonal([q(3, 1), q(4, 1), q(1, 2)]).unwrap();
    assert_eq!(x.bilinear_trace(&y).unwrap(), q(3 - 8, 1) + q(5, 2));
}

#[test]
fn f2_census_matches_symmetric_matrices() {
    let f2 = RingDescriptor::PrimeField(2);
    let c = base_ring_algebra(&f2);
    assert_eq!(census_f2(&c, Her3Count::RankOne).unwrap(), 7);
    assert_eq!(census_f2(&c, Her3Count::ElementaryIdempotents).unwrap(), 4);
    let symmetric: Vec<u16> = (0u16..512).filter(|&m| transpose(m) == m).collect();
    assert_eq!(symmetric.len(), 64);
    assert_eq!(symmetric.iter().filter(|&&m| f2_rank(m) == 1).count(), 7);
    assert_eq!(symmetric.iter().filter(|&&m| f2_rank(m) == 1 && f2_mul(m, m) == m).count(), 4);
    let h = her3(&c, &Gamma::one(&f2)).unwrap();
    assert_eq!(h.cubic().basis(0).idem_class().unwrap(), IdemClass::Elementary);
    assert_eq!(h.cubic().one().trace(), f2.one());
}

#[test]
fn split_coefficients_give_full_matrices() {
    let f2 = RingDescriptor::PrimeField(2);
    let c = split_etale(&f2);
    let elid = census_f2(&c, Her3Count::ElementaryIdempotents).unwrap();
    let oracle = (0u16..512).filter(|&m| f2_rank(m) == 1 && f2_mul(m, m) == m).count() as u64;
    assert_eq!(elid, oracle);
    assert_eq!(elid, 28);
    let h = her3(&c, &Gamma::one(&f2)).unwrap();
    let m = mat3(&f2);
    assert_eq!(census_f2_cubic(m.cubic(), Her3Count::ElementaryIdempotents).unwrap(), elid);
    assert_eq!(norm_histogram(h.cubic()).unwrap(), norm_histogram(m.cubic()).unwrap());
    assert_eq!(
        census_f2_cubic(h.cubic(), Her3Count::RankOne).unwrap(),
        census_f2_cubic(m.cubic(), Her3Count::RankOne).unwrap()
    );
    assert!(census_f2(&cartan_schouten(&f2), Her3Count::RankOne).is_err());
}

#[test]
fn coefficient_algebras_must_be_multiplicative() {
    let k = RingDescriptor::Rationals;
    let sed = octad::cayley::sedenions(&k);
    assert!(her3(&sed, &Gamma::one(&k)).is_err());
    assert!(Gamma::new([q(0, 1), q(1, 1), q(1, 1)]).is_err());
}

#[test]
fn octonion_entries_validate() {
    let k = RingDescriptor::Rationals;
    let h = her3(&cartan_schouten(&k), &gamma([2, -3, 1])).unwrap();
    assert_eq!(h.dim(), 27);
    assert!(h.cubic().validate_axioms(CheckMode::Strict).unwrap().holds());
    let hq = her3(&quaternions(&k), &Gamma::one(&k)).unwrap();
    assert!(hq.cubic().validate_axioms(CheckMode::Strict).unwrap().holds());
}

fn associator(a: &ConicElement, b: &ConicElement, c: &ConicElement) -> ConicElement {
    &a.mul(b).unwrap().mul(c).unwrap() - &a.mul(&b.mul(c).unwrap()).unwrap()
}

#[test]
fn associator_defect_examples() {
    let k = RingDescriptor::Rationals;
    let o = cartan_schouten(&k);
    let g = gamma([1, 2, -1]);
    let h = her3(&o, &g).unwrap();
    let zero = q(0, 1);
    let x = Her3Element { xi: [zero.clone(), zero.clone(), zero.clone()], u: [o.basis(1), o.basis(2), o.basis(3)] };
    let d = h.associator_defect(&x).unwrap();
    let expect = associator(&o.basis(1), &o.basis(2), &o.basis(3)).scale(&g.product());
    assert!(!expect.is_zero());
    assert_eq!(d, expect);
    let y = Her3Element { xi: [q(1, 1), q(2, 1), q(3, 1)], u: [o.basis(4), o.zero(), o.basis(6)] };
    assert!(h.associator_defect(&y).unwrap().is_zero());
    let hq = her3(&quaternions(&k), &g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let x = random_element(&hq, &mut rng);
        assert!(hq.associator_defect(&x).unwrap().is_zero());
        let xe = hq.element(&x).unwrap();
        let sharp = hq.split(&xe.sharp()).unwrap();
        let other = hq.matrix_mul(&hq.matrix(&x), &hq.matrix(&sharp));
        for (r, row) in other.iter().enumerate() {
            for (s, entry) in row.iter().enumerate() {
                let want = if r == s { hq.conic().one().scale(&xe.norm()) } else { hq.conic().zero() };
                assert_eq!(*entry, want);
            }
        }
    }
}

#[test]
fn rescaling_preserves_norms_and_composes() {
    let k = RingDescriptor::Rationals;
    let g = gamma([2, 3, 1]);
    let h = her3(&quaternions(&k), &g).unwrap();
    let (same, id) = h.diag_rescale(&Gamma::one(&k)).unwrap();
    assert_eq!(same.gamma(), h.gamma());
    assert!(id.map.is_identity());
    let (t, map) = h.diag_rescale(&g.inverse()).unwrap();
    assert_eq!(t.gamma().entries(), &[q(4, 3), q(9, 2), q(1, 6)]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let x = h.element(&random_element(&h, &mut rng)).unwrap();
        assert_eq!(map.apply(&x).unwrap().norm(), x.norm());
    }
    let d1 = gamma([2, -1, 3]);
    let d2 = Gamma::new([q(1, 2), q(5, 1), q(-2, 3)]).unwrap();
    let (mid, f) = h.diag_rescale(&d1).unwrap();
    let (end, g2) = mid.diag_rescale(&d2).unwrap();
    let (direct_end, direct) = h.diag_rescale(&d2.mul(&d1)).unwrap();
    assert_eq!(end.gamma(), direct_end.gamma());
    assert_eq!(g2.compose(&f).unwrap().map, direct.map);
}

#[test]
fn positivity_criterion() {
    let k = RingDescriptor::Rationals;
    let c: Arc<ConicAlgebra> = quaternions(&k);
    let h = her3(&c, &Gamma::one(&k)).unwrap();
    assert!(h.is_positive_definite(&h.cubic().one()).unwrap());
    assert!(!h.is_positive_definite(&h.diagonal([q(1, 1), q(1, 1), q(-1, 1)]).unwrap()).unwrap());
    let x = Her3Element { xi: [q(1, 1), q(1, 1), q(1, 1)], u: [c.basis(2), c.zero(), c.zero()] };
    let xe = h.element(&x).unwrap();
    assert!(xe.sharp().coords()[0].is_zero());
    assert!(!h.is_positive_definite(&xe).unwrap());
    let half = Her3Element { xi: [q(1, 1), q(1, 1), q(1, 1)], u: [c.basis(2).scale(&q(1, 2)), c.zero(), c.zero()] };
    assert!(h.is_positive_definite(&h.element(&half).unwrap()).unwrap());
    let twisted = her3(&c, &gamma([1, 1, 2])).unwrap();
    assert!(twisted.is_positive_definite(&twisted.cubic().one()).is_err());
    let f3 = RingDescriptor::PrimeField(3);
    let hf = her3(&base_ring_algebra(&f3), &Gamma::one(&f3)).unwrap();
    assert!(hf.is_positive_definite(&hf.cubic().one()).is_err());
}

#[test]
fn rendering_shows_both_halves() {
    let k = RingDescriptor::Integers;
    let c = quaternions(&k);
    let h = her3(&c, &Gamma::one(&k)).unwrap();
    let x = Her3Element { xi: [Scalar::int(1), Scalar::int(2), Scalar::int(3)], u: [c.basis(1), c.zero(), c.zero()] };
    let text = h.render(&h.element(&x).unwrap()).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].trim_end().ends_with("i ]"), "{text}");
    assert!(rows[2].contains("-i"), "{text}");
}

#[test]
fn split_round_trip() {
    let k = RingDescriptor::Integers;
    let h = her3(&cartan_schouten(&k), &Gamma::one(&k)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = random_element(&h, &mut rng);
    let e: CubicElement = h.element(&x).unwrap();
    assert_eq!(h.split(&e).unwrap(), x);
}
