use std::sync::Arc;

use octad::cayley::{iterated, quaternions};
use octad::conic::{
    base_ring_algebra, cartan_schouten, quadratic, sampled_identity_check, split_etale, strict_identity_check,
    ConicHandle,
};
use octad::identity::{check_strict, var, Identity};
use octad::zorn::zorn_algebra;
use octad::{ConicAlgebra, ConicIdempotent, ConicIdentity, Error, RingDescriptor, Scalar, Verdict, Witness};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::rat(n, d)
}

fn constructed(k: &RingDescriptor) -> Vec<Arc<ConicAlgebra>> {
    let mut out = vec![base_ring_algebra(k), split_etale(k), cartan_schouten(k), zorn_algebra(k), quaternions(k)];
    out.push(quadratic(k, &k.one(), &k.from_i64(3)).unwrap());
    out
}

#[test]
fn products_and_traces() {
    let k = RingDescriptor::Rationals;
    let e = split_etale(&k);
    assert_eq!(e.from_ints(&[2, 5]).mul(&e.from_ints(&[3, 1])).unwrap(), e.from_ints(&[6, 5]));
    assert_eq!(e.from_ints(&[2, 5]).trace(), q(7, 1));
    assert_eq!(e.from_ints(&[2, 5]).conj(), e.from_ints(&[5, 2]));
    let o = cartan_schouten(&RingDescriptor::Integers);
    assert_eq!(o.basis(3).mul(&o.basis(4)).unwrap(), o.basis(6));
    assert_eq!(o.basis(1).mul(&o.basis(2)).unwrap(), o.basis(4));
    assert_eq!(o.basis(4).mul(&o.basis(6)).unwrap(), o.basis(3));
    for r in 1..8 {
        assert!(o.basis(r).trace().is_zero());
        assert_eq!(o.basis(r).try_inverse().unwrap(), -&o.basis(r));
    }
    let c = iterated(&k, &[q(-1, 1)]).unwrap();
    assert_eq!(c.from_ints(&[3, 4]).conj(), c.from_ints(&[3, -4]));
    let inv = c.from_ints(&[3, 4]).try_inverse().unwrap();
    assert_eq!(inv, c.element(vec![q(3, 25), q(-4, 25)]).unwrap());
    assert!(matches!(e.from_ints(&[1, 0]).try_inverse(), Err(Error::NotInvertible)));
}

#[test]
fn octonion_table_follows_the_index_rule() {
    let o = cartan_schouten(&RingDescriptor::Integers);
    let fano = |r: usize| (r - 1) % 7 + 1;
    for r in 1..=7 {
        for i in [1, 2, 4] {
            let (a, b) = (fano(r + i), fano(r + 3 * i));
            assert_eq!(o.basis(a).mul(&o.basis(b)).unwrap(), o.basis(r));
            assert_eq!(o.basis(b).mul(&o.basis(a)).unwrap(), -&o.basis(r));
        }
        assert_eq!(o.basis(fano(r + 4)).mul(&o.basis(fano(r + 5))).unwrap(), o.basis(r));
    }
    let norm = o.norm_form();
    for i in 0..8 {
        for j in 0..8 {
            let want = if i == j { 1 } else { 0 };
            assert_eq!(norm.coeffs()[i][j], Scalar::int(if j >= i { want } else { 0 }));
        }
    }
}

#[test]
fn idempotent_classes() {
    let k = RingDescriptor::Rationals;
    let e = split_etale(&k);
    assert_eq!(e.from_ints(&[1, 0]).classify_idempotent().unwrap(), ConicIdempotent::Elementary);
    assert_eq!(e.one().classify_idempotent().unwrap(), ConicIdempotent::Invertible);
    assert_eq!(e.zero().classify_idempotent().unwrap(), ConicIdempotent::Zero);
    let g = iterated(&k, &[q(-1, 1)]).unwrap();
    assert_eq!(g.basis(1).classify_idempotent().unwrap(), ConicIdempotent::NotIdempotent);
    let z6 = RingDescriptor::modular(6).unwrap();
    assert!(split_etale(&z6).one().classify_idempotent().is_err());
}

#[test]
fn split_etale_over_f2_has_one_unit() {
    let f2 = RingDescriptor::prime_field(2).unwrap();
    let e = split_etale(&f2);
    let units = (0..4).filter(|m| e.from_ints(&[m & 1, m >> 1]).try_inverse().is_ok()).count();
    assert_eq!(units, 1);
}

#[test]
fn constructors_pass_strict_checks() {
    for k in [RingDescriptor::Integers, RingDescriptor::Rationals, RingDescriptor::prime_field(2).unwrap()] {
        for alg in constructed(&k) {
            for id in [ConicIdentity::Degree2, ConicIdentity::ConjugationInvolution, ConicIdentity::MoufangLeft] {
                let v = strict_identity_check(&id.identity(), &alg).unwrap();
                assert!(v.holds(), "{} on {}: {v:?}", id.name(), alg.name());
            }
            let t = strict_identity_check(&ConicIdentity::TraceSymmetry.identity(), &alg).unwrap();
            assert!(t.holds(), "{}", alg.name());
        }
    }
    let o = cartan_schouten(&RingDescriptor::Integers);
    assert!(strict_identity_check(&ConicIdentity::Kirmse.identity(), &o).unwrap().holds());
    let a = strict_identity_check(&ConicIdentity::Associativity.identity(), &o).unwrap();
    match a {
        Verdict::Fails(f) => assert!(matches!(f.witness, Witness::Monomial { .. })),
        Verdict::Holds => panic!("octonions reported associative"),
    }
}

#[test]
fn strict_checks_report_the_smallest_witness() {
    let o = cartan_schouten(&RingDescriptor::Rationals);
    let v = strict_identity_check(&ConicIdentity::Associativity.identity(), &o).unwrap();
    let Verdict::Fails(f) = v else { panic!("associative") };
    let Witness::Monomial { args, coordinate, value, .. } = f.witness else { panic!("witness") };
    // Brute-force scan of basis triples in the same order.
    let mut first = None;
    'scan: for a in 0..8 {
        for b in 0..8 {
            for c in 0..8 {
                let (x, y, z) = (o.basis(a), o.basis(b), o.basis(c));
                let d = x.associator(&y, &z).unwrap();
                if let Some(pos) = d.coords().iter().position(|s| !s.is_zero()) {
                    first = Some((vec![vec![a], vec![b], vec![c]], pos, d.coords()[pos].clone()));
                    break 'scan;
                }
            }
        }
    }
    assert_eq!(first, Some((args, coordinate.unwrap(), value)));
}

#[test]
fn user_identities_and_cost_guard() {
    let k = RingDescriptor::Rationals;
    let comm = Identity::vector("commutativity", var(0) * var(1), var(1) * var(0));
    assert!(check_strict(&*split_etale(&k), &comm).unwrap().holds());
    assert!(!check_strict(&*quaternions(&k), &comm).unwrap().holds());
    let sed = octad::cayley::sedenions(&k);
    let big = Identity::vector(
        "degree five",
        ((var(0) * var(0)) * (var(0) * var(0))) * var(0),
        var(0) * ((var(0) * var(0)) * (var(0) * var(0))),
    );
    assert!(matches!(check_strict(&*sed, &big), Err(Error::CostGuard(_))));
    assert!(sampled_identity_check(&big, &sed, 20, 1).unwrap().holds());
}

#[test]
fn json_table_shape() {
    let v = quaternions(&RingDescriptor::Integers).to_json();
    assert_eq!(v["dim"], 4);
    assert_eq!(v["table"].as_array().unwrap().len(), 4);
    assert_eq!(v["unit"].as_array().unwrap().len(), 4);
    assert!(v["norm_coeffs"].is_array());
}

#[test]
fn text_table_shows_products() {
    let t = cartan_schouten(&RingDescriptor::Integers).table_text();
    assert_eq!(t.lines().count(), 10);
    let row3 = t.lines().nth(5).unwrap();
    assert!(row3.trim_start().starts_with("u3"), "{row3}");
    assert!(row3.split_whitespace().any(|c| c == "u6"), "{row3}");
}

proptest! {
    #[test]
    fn conjugation_reverses_products(seed in any::<u64>(), which in 0usize..6) {
        let k = RingDescriptor::Integers;
        let alg = &constructed(&k)[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = alg.dim();
        let x = alg.element((0..d).map(|_| k.sample(&mut rng)).collect()).unwrap();
        let y = alg.element((0..d).map(|_| k.sample(&mut rng)).collect()).unwrap();
        prop_assert_eq!(x.mul(&y).unwrap().conj(), y.conj().mul(&x.conj()).unwrap());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap().trace(), y.mul(&x).unwrap().trace());
        let sq = x.mul(&x).unwrap();
        let lhs = &(&sq - &x.scale(&x.trace())) + &alg.one().scale(&x.norm());
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn anisotropic_norms_have_no_zero_divisors(c in proptest::collection::vec(-9i64..=9, 8)) {
        prop_assume!(c.iter().any(|&v| v != 0));
        let o = cartan_schouten(&RingDescriptor::Rationals);
        prop_assert!(o.norm_form().is_positive_definite().unwrap());
        let x = o.from_ints(&c);
        let inv = x.try_inverse().unwrap();
        prop_assert_eq!(x.mul(&inv).unwrap(), o.one());
        prop_assert_eq!(inv.mul(&x).unwrap(), o.one());
    }
}
