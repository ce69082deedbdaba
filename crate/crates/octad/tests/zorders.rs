use std::collections::BTreeSet;

use octad::cayley::quaternions;
use octad::conic::{cartan_schouten, quadratic, ConicHandle};
use octad::zorders::{
    alternative_dico, dickson_coxeter, from_eps, gaussian, hurwitz, in_e8, index_shift_automorphism, kirmse,
    to_eps, DicoVariant, ZLattice,
};
use octad::{RingDescriptor, Scalar};

mod common;

use common::{eps_combination, key, oracle_e8_roots, oracle_eps, q};

/// Brute force over the coefficient box `[-bound, bound]^rank`.
fn box_units(l: &ZLattice, bound: i64) -> BTreeSet<Vec<String>> {
    let n = l.rank();
    let mut out = BTreeSet::new();
    let mut c = vec![-bound; n];
    loop {
        let coeffs: Vec<Scalar> = c.iter().map(|&v| q(v, 1)).collect();
        let x = l.combination(&coeffs);
        if x.norm().is_one() {
            out.insert(key(&x));
        }
        let mut i = 0;
        while i < n {
            c[i] += 1;
            if c[i] <= bound {
                break;
            }
            c[i] = -bound;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out
}

fn unit_set(l: &ZLattice) -> BTreeSet<Vec<String>> {
    l.enumerate_units().unwrap().iter().map(key).collect()
}

#[test]
fn gaussian_integers_have_four_units() {
    let c = quadratic(&RingDescriptor::Rationals, &q(0, 1), &q(1, 1)).unwrap();
    let g = gaussian(&c).unwrap();
    let units = unit_set(&g);
    assert_eq!(units.len(), 4);
    assert_eq!(units, box_units(&g, 3));
}

#[test]
fn hurwitz_units_match_box_scan() {
    let h = hurwitz();
    let units = h.enumerate_units().unwrap();
    assert_eq!(units.len(), 24);
    let found: BTreeSet<_> = units.iter().map(key).collect();
    assert_eq!(found, box_units(&h, 3));
    let alg = h.ambient();
    let mut expected = BTreeSet::new();
    for i in 0..4 {
        for s in [1, -1] {
            let mut v = vec![0i64; 4];
            v[i] = s;
            expected.insert(key(&alg.from_ints(&v)));
        }
    }
    for mask in 0..16 {
        let v: Vec<Scalar> = (0..4).map(|b| if mask >> b & 1 == 1 { q(-1, 2) } else { q(1, 2) }).collect();
        expected.insert(key(&alg.element(v).unwrap()));
    }
    assert_eq!(found, expected);
}

#[test]
fn hurwitz_discriminant_regression() {
    assert_eq!(hurwitz().disc(), q(4, 1));
}

#[test]
fn e8_units_match_root_system() {
    let d = dickson_coxeter();
    let units = d.enumerate_units().unwrap();
    assert_eq!(units.len(), 240);
    let found: BTreeSet<_> = units.iter().map(key).collect();
    let expected: BTreeSet<Vec<String>> = oracle_e8_roots()
        .iter()
        .map(|xi| eps_combination(xi).iter().map(|c| c.to_string()).collect())
        .collect();
    assert_eq!(found, expected);
    let integer_type = units.iter().filter(|u| to_eps(u.coords()).iter().all(Scalar::is_integral)).count();
    assert_eq!((integer_type, units.len() - integer_type), (112, 128));
    assert_eq!(d.disc(), q(1, 1));
    assert!(d.closed_under_mul().holds());
}

#[test]
fn unit_sets_are_groups_under_multiplication() {
    for l in [hurwitz(), dickson_coxeter()] {
        let units = l.enumerate_units().unwrap();
        let set: BTreeSet<_> = units.iter().map(key).collect();
        assert!(set.contains(&key(&l.ambient().one())));
        for a in &units {
            assert!(set.contains(&key(&a.conj())));
            for b in &units {
                assert!(set.contains(&key(&a.mul(b).unwrap())), "{} * {} in {}", a, b, l.name());
            }
        }
    }
}

#[test]
fn eps_vectors_follow_the_u_relations() {
    for i in 1..=8 {
        let mut xi = vec![q(0, 1); 8];
        xi[i - 1] = q(1, 1);
        assert_eq!(from_eps(&xi), oracle_eps(i));
    }
}

#[test]
fn p_coset_products_in_eps_coordinates() {
    let o = cartan_schouten(&RingDescriptor::Rationals);
    let p = o.element(eps_combination(&[q(0, 1), q(1, 1), q(-1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)])).unwrap();
    assert_eq!(p.coords(), &[q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]);
    let h = |v: [i64; 8]| v.map(|c| q(c, 2)).to_vec();
    assert_eq!(to_eps(o.basis(1).mul(&p).unwrap().coords()), h([1, -1, -1, 1, -1, 1, -1, 1]));
    assert_eq!(to_eps(o.basis(2).mul(&p).unwrap().coords()), h([2, 0, 0, 0, 2, 0, 0, 0]));
    assert_eq!(to_eps(o.basis(4).mul(&p).unwrap().coords()), h([1, 1, 1, -1, -1, 1, -1, -1]));
}

#[test]
fn e8_characterization_matches_basis() {
    let d = dickson_coxeter();
    for xi in oracle_e8_roots() {
        assert!(in_e8(&xi));
        assert!(d.contains_coords(&eps_combination(&xi)));
    }
    let mut odd = vec![q(1, 2); 8];
    odd[0] = q(-1, 2);
    assert!(!in_e8(&odd));
    assert!(!d.contains_coords(&eps_combination(&odd)));
    for a in 0..8 {
        for b in 0..8 {
            let prod = d.ambient().mul_coords(&d.basis()[a], &d.basis()[b]);
            assert!(in_e8(&to_eps(&prod)));
        }
    }
}

#[test]
fn p_form_equals_dickson_coxeter() {
    let p = alternative_dico(DicoVariant::PForm);
    assert!(p.same_lattice(&dickson_coxeter()));
}

#[test]
fn q_form_is_shifted_dickson_coxeter() {
    let qf = alternative_dico(DicoVariant::QForm);
    let d = dickson_coxeter();
    let shifted = d.image("shifted", &index_shift_automorphism()).unwrap();
    assert!(qf.same_lattice(&shifted));
    assert!(!qf.same_lattice(&d));
    assert_eq!(qf.disc(), q(1, 1));
    assert!(qf.closed_under_mul().holds());
    assert_eq!(qf.enumerate_units().unwrap().len(), 240);
    let o = d.ambient();
    let q_elem = o.element(vec![q(1, 2), q(0, 1), q(0, 1), q(1, 2), q(1, 2), q(1, 2), q(0, 1), q(0, 1)]).unwrap();
    assert!(!d.contains(&q_elem));
    assert!(qf.contains(&q_elem));
    let q_hur = o.element(vec![q(1, 2), q(0, 1), q(0, 1), q(1, 2), q(1, 2), q(0, 1), q(1, 2), q(0, 1)]).unwrap();
    assert!(d.contains(&q_hur));
}

#[test]
fn q_form_coset_products() {
    let o = cartan_schouten(&RingDescriptor::Rationals);
    let qv = o.element(vec![q(1, 2), q(0, 1), q(0, 1), q(1, 2), q(1, 2), q(1, 2), q(0, 1), q(0, 1)]).unwrap();
    let h = |v: [i64; 8]| v.map(|c| q(c, 2)).to_vec();
    assert_eq!(o.basis(3).mul(&qv).unwrap().coords(), h([-1, 0, 1, 1, 0, 0, 1, 0]));
    assert_eq!(o.basis(4).mul(&qv).unwrap().coords(), h([-1, 0, 0, 0, 1, 0, -1, 1]));
    assert_eq!(o.basis(6).mul(&qv).unwrap().coords(), h([0, -1, 0, -1, 1, 0, 1, 0]));
}

#[test]
fn kirmse_is_unimodular_but_not_closed() {
    let k = kirmse();
    assert_eq!(k.disc(), q(1, 1));
    assert!(k.is_integral());
    let v = k.closed_under_mul();
    let f = v.failure().expect("Kirmse lattice is not closed");
    match &f.witness {
        octad::Witness::Product { left, right, product } => {
            assert_eq!((left.as_str(), right.as_str()), ("v1", "v3"));
            let expect = [0, 1, 1, 1, 0, 1, 0, 0].map(|c| q(c, 2)).to_vec();
            assert_eq!(product, &expect);
            assert!(!k.contains_coords(product));
        }
        w => panic!("unexpected witness {w:?}"),
    }
}

#[test]
fn kirmse_gram_matrix() {
    let k = kirmse();
    let expect: Vec<Vec<Scalar>> = [
        [2, 0, 0, 0, 1, 0, 1, 1],
        [0, 2, 0, 0, 1, 0, 1, 0],
        [0, 0, 2, 0, 1, 0, 0, 1],
        [0, 0, 0, 2, 0, 1, 1, 1],
        [1, 1, 1, 0, 2, 0, 1, 1],
        [0, 0, 0, 1, 0, 2, 1, 1],
        [1, 1, 0, 1, 1, 1, 2, 1],
        [1, 0, 1, 1, 1, 1, 1, 2],
    ]
    .iter()
    .map(|r| r.iter().map(|&c| q(c, 1)).collect())
    .collect();
    assert_eq!(k.gram(), &expect);
}

#[test]
fn quaternion_gaussian_order() {
    let g = gaussian(&quaternions(&RingDescriptor::Rationals)).unwrap();
    assert_eq!(g.enumerate_units().unwrap().len(), 8);
    assert_eq!(g.disc(), q(16, 1));
}
