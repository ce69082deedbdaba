use octad::{RingDescriptor, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rings() -> Vec<RingDescriptor> {
    let z6 = RingDescriptor::modular(6).unwrap();
    vec![
        RingDescriptor::Integers,
        RingDescriptor::Rationals,
        RingDescriptor::prime_field(7).unwrap(),
        RingDescriptor::modular(8).unwrap(),
        z6.clone(),
        RingDescriptor::product(z6.clone(), RingDescriptor::prime_field(5).unwrap()),
        RingDescriptor::dual(RingDescriptor::Integers),
        RingDescriptor::dual(z6),
    ]
}

#[test]
fn arithmetic_examples() {
    let f7 = RingDescriptor::prime_field(7).unwrap();
    assert_eq!(&f7.from_i64(3) * &f7.from_i64(5), f7.one());
    assert_eq!(&Scalar::rat(2, 3) + &Scalar::rat(1, 6), Scalar::rat(5, 6));
    let d = |a, b| Scalar::dual(Scalar::int(a), Scalar::int(b));
    assert_eq!(&d(2, 3) * &d(4, 5), d(8, 22));
    assert_eq!(Scalar::rat(4, -6), Scalar::rat(-2, 3));
    assert_eq!(f7.from_i64(-1).to_string(), "6 mod 7");
    assert_eq!(d(1, -2).to_string(), "1 + -2*eps");
    assert_eq!(Scalar::rat(-2, 3).to_string(), "-2/3");
}

#[test]
fn inversion_examples() {
    let f7 = RingDescriptor::prime_field(7).unwrap();
    assert_eq!(f7.from_i64(3).try_invert().unwrap(), f7.from_i64(5));
    assert!(Scalar::int(2).try_invert().is_err());
    let z6 = RingDescriptor::modular(6).unwrap();
    assert_eq!(z6.from_i64(5).try_invert().unwrap(), z6.from_i64(5));
    let dual = Scalar::dual(Scalar::rat(2, 1), Scalar::rat(3, 1));
    let inv = dual.try_invert().unwrap();
    assert!((&dual * &inv).is_one());
    assert!(Scalar::dual(Scalar::rat(0, 1), Scalar::rat(1, 1)).try_invert().is_err());
}

#[test]
fn nilpotency_examples() {
    assert!(RingDescriptor::modular(8).unwrap().from_i64(2).is_nilpotent());
    assert!(!RingDescriptor::prime_field(5).unwrap().from_i64(2).is_nilpotent());
    assert!(Scalar::dual(Scalar::rat(0, 1), Scalar::rat(3, 1)).is_nilpotent());
    let z12 = RingDescriptor::modular(12).unwrap();
    assert!(z12.from_i64(6).is_nilpotent());
    assert!(!z12.from_i64(4).is_nilpotent());
}

#[test]
fn prime_fields_require_primes() {
    assert!(RingDescriptor::prime_field(9).is_err());
    assert!(RingDescriptor::modular(0).is_err());
}

#[test]
fn mixed_rings_are_rejected() {
    let f5 = RingDescriptor::prime_field(5).unwrap();
    assert!(Scalar::int(1).try_add(&f5.one()).is_err());
    assert!(Scalar::int(1).try_mul(&Scalar::rat(1, 2)).is_err());
}

#[test]
fn unit_oracle_over_residues() {
    for n in 2..=30u64 {
        let k = RingDescriptor::modular(n).unwrap();
        for a in 0..n as i64 {
            let x = k.from_i64(a);
            let oracle = (0..n as i64).find(|&b| (a * b) % n as i64 == 1 % n as i64);
            match (x.try_invert(), oracle) {
                (Ok(inv), Some(_)) => assert!((&x * &inv).is_one(), "{x}"),
                (Err(_), None) => {}
                (r, o) => panic!("{x}: {r:?} vs oracle {o:?}"),
            }
            let nil = (1..=8).any(|m| x.pow(m).is_zero());
            assert_eq!(x.is_nilpotent(), nil, "{x}");
        }
    }
}

#[test]
fn ring_names_parse_back() {
    for k in rings() {
        assert_eq!(RingDescriptor::parse(&k.to_string()).unwrap(), k);
    }
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in rings() {
        for _ in 0..20 {
            let x = k.sample(&mut rng);
            assert_eq!(Scalar::from_json(&k, &x.to_json()).unwrap(), x);
        }
    }
}

proptest! {
    #[test]
    fn ring_axioms(seed in any::<u64>(), which in 0usize..8) {
        let k = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (k.sample(&mut rng), k.sample(&mut rng), k.sample(&mut rng));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Ok(inv) = a.try_invert() {
            prop_assert!((&a * &inv).is_one());
        }
    }

    #[test]
    fn dual_products(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
        let x = Scalar::dual(Scalar::int(a), Scalar::int(b));
        let y = Scalar::dual(Scalar::int(c), Scalar::int(d));
        prop_assert_eq!(&x * &y, Scalar::dual(Scalar::int(a * c), Scalar::int(a * d + b * c)));
    }

    #[test]
    fn fractions_are_reduced(n in -1000i64..1000, d in 1i64..1000) {
        let x = Scalar::rat(n, d);
        let r = x.to_rational().unwrap();
        prop_assert!(*r.denom() > 0.into());
        prop_assert_eq!(num_integer::Integer::gcd(r.numer(), r.denom()) <= 1.into(), true);
    }
}
