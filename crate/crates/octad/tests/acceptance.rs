//! The fourteen acceptance criteria. Each prints one PASS/FAIL line; the
//! process exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use octad::cayley::{composition_defect, composition_defect_formula, iterated, sedenion_zero_divisor_witness, sedenions};
use octad::conic::{base_ring_algebra, cartan_schouten, split_etale, strict_identity_check, ConicHandle};
use octad::cubic::{
    axiom_identities, hat_pointed, k_cubic, kk_cubic, split_cubic_etale, CubicData, CubicElement, CubicHandle,
    IdemClass,
};
use octad::her3::{census_f2, her3, Gamma, Her3, Her3Count, Her3Element};
use octad::identity::{check_sampled, check_strict};
use octad::quadform::block_det;
use octad::tits::{char3_nilpotence_demo, k_assoc, mat3, split_albert, split_etale_assoc, tits};
use octad::zorders::{dickson_coxeter, hurwitz, kirmse, to_eps};
use octad::zorn::{census, zorn_algebra};
use octad::{
    ConicElement, ConicIdentity, QuadraticForm, RingDescriptor, Scalar, Verdict, Witness, DEFAULT_SEED,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{eps_combination, key, oracle_e8_roots, q};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn hurwitz_units() -> Outcome {
    let h = hurwitz();
    let units = ok(h.enumerate_units())?;
    let found: BTreeSet<_> = units.iter().map(key).collect();
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
        let v = (0..4).map(|b| if mask >> b & 1 == 1 { q(-1, 2) } else { q(1, 2) }).collect();
        expected.insert(key(&ok(alg.element(v))?));
    }
    ensure(units.len() == 24, format!("{} units", units.len()))?;
    ensure(found == expected, "unit set differs from {±1,±i,±j,±k} ∪ ½(±1±i±j±k)")?;
    Ok("24 units, equal to the expected set".into())
}

fn e8_units() -> Outcome {
    let units = ok(dickson_coxeter().enumerate_units())?;
    let found: BTreeSet<_> = units.iter().map(key).collect();
    let expected: BTreeSet<Vec<String>> = oracle_e8_roots()
        .iter()
        .map(|xi| eps_combination(xi).iter().map(|c| c.to_string()).collect())
        .collect();
    let integer = units.iter().filter(|u| to_eps(u.coords()).iter().all(Scalar::is_integral)).count();
    ensure(units.len() == 240, format!("{} units", units.len()))?;
    ensure(found == expected, "unit set differs from the root system")?;
    ensure(integer == 112, format!("{integer} integer-type units"))?;
    Ok(format!("240 units = {integer} integer + {} half-integer", units.len() - integer))
}

fn zorn_censuses() -> Outcome {
    let mut parts = Vec::new();
    for p in [2u64, 3] {
        let c = ok(census(p))?;
        let inv = p.pow(3) * (p - 1) * (p.pow(4) - 1);
        let one = p.pow(3) * (p.pow(4) - 1);
        ensure(c.invertibles == inv, format!("p={p}: {} invertibles, formula {inv}", c.invertibles))?;
        ensure(c.norm_one == one, format!("p={p}: {} norm-one, formula {one}", c.norm_one))?;
        parts.push(format!("p={p}: {} invertible, {} norm one", c.invertibles, c.norm_one));
    }
    Ok(parts.join("; "))
}

fn her3_f2_census() -> Outcome {
    let f2 = RingDescriptor::PrimeField(2);
    let c = base_ring_algebra(&f2);
    let rank1 = ok(census_f2(&c, Her3Count::RankOne))?;
    let elid = ok(census_f2(&c, Her3Count::ElementaryIdempotents))?;
    // Symmetric rank-one 3x3 matrices over F2 are v v^T for v != 0; they are
    // idempotent exactly when v has odd weight.
    let oracle_rank1 = (1u32..8).count() as u64;
    let oracle_elid = (1u32..8).filter(|v| v.count_ones() % 2 == 1).count() as u64;
    ensure(rank1 == 7 && rank1 == oracle_rank1, format!("{rank1} rank-one elements"))?;
    ensure(elid == 4 && elid == oracle_elid, format!("{elid} elementary idempotents"))?;
    Ok(format!("{rank1} rank one, {elid} elementary idempotents"))
}

/// Coefficient of `x_a x_b y_c y_d` in `n(xy) - n(x)n(y)` by polarizing the
/// defect at basis vectors.
fn defect_coefficient(alg: &Arc<octad::ConicAlgebra>, x: &[usize], y: &[usize]) -> Scalar {
    let defect = |xs: &[usize], ys: &[usize]| {
        let sum = |idx: &[usize]| idx.iter().fold(alg.zero(), |acc, &i| &acc + &alg.basis(i));
        composition_defect(&sum(xs), &sum(ys)).unwrap()
    };
    let subsets = |v: &[usize]| -> Vec<(Vec<usize>, i64)> {
        if v[0] == v[1] {
            vec![(vec![v[0]], 1)]
        } else {
            vec![(v.to_vec(), 1), (vec![v[0]], -1), (vec![v[1]], -1)]
        }
    };
    let mut total = q(0, 1);
    for (xs, sx) in subsets(x) {
        for (ys, sy) in subsets(y) {
            total = &total + &(&q(sx * sy, 1) * &defect(&xs, &ys));
        }
    }
    total
}

fn strict_moufang() -> Outcome {
    let rat = RingDescriptor::Rationals;
    let octonions = ok(iterated(&rat, &[q(-1, 1), q(-1, 1), q(-1, 1)]))?;
    let zorn = zorn_algebra(&RingDescriptor::Integers);
    for alg in [&octonions, &zorn] {
        for id in [ConicIdentity::MoufangLeft, ConicIdentity::MoufangMiddle, ConicIdentity::MoufangRight] {
            let v = ok(strict_identity_check(&id.identity(), alg))?;
            ensure(v.holds(), format!("{} fails on {}: {v:?}", id.name(), alg.name()))?;
        }
    }
    let s = sedenions(&rat);
    let v = ok(strict_identity_check(&ConicIdentity::NormComposition.identity(), &s))?;
    let (args, value) = match v {
        Verdict::Fails(f) => match f.witness {
            Witness::Monomial { args, value, .. } => (args, value),
            w => return Err(format!("unexpected witness {w:?}")),
        },
        Verdict::Holds => return Err("norm composition holds on the sedenions".into()),
    };
    ensure(args == vec![vec![1, 10], vec![3, 14]], format!("witness {args:?}"))?;
    ensure(value == q(-4, 1), format!("witness value {value}"))?;
    let oracle = defect_coefficient(&s, &args[0], &args[1]);
    ensure(oracle == value, format!("polarized defect {oracle} != {value}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..1000 {
        let x = ok(s.element((0..16).map(|_| rat.sample(&mut rng)).collect()))?;
        let y = ok(s.element((0..16).map(|_| rat.sample(&mut rng)).collect()))?;
        let direct = ok(composition_defect(&x, &y))?;
        let formula = ok(composition_defect_formula(&x, &y))?;
        ensure(direct == formula, format!("defect mismatch at {x}, {y}"))?;
    }
    let names = s.labels();
    Ok(format!(
        "Moufang holds on both; sedenion witness x{{{},{}}} y{{{},{}}} = {value}; defect formula exact on 1000 samples",
        names[args[0][0]], names[args[0][1]], names[args[1][0]], names[args[1][1]]
    ))
}

fn sedenion_zero_divisor() -> Outcome {
    let (a, b) = ok(sedenion_zero_divisor_witness(&RingDescriptor::Integers))?;
    ensure(ok(a.mul(&b))?.is_zero(), "ab != 0")?;
    ensure(a.norm() == Scalar::int(2) && b.norm() == Scalar::int(2), "norms are not 2")?;
    Ok(format!("({a})({b}) = 0, both norms 2"))
}

fn kirmse_lattice() -> Outcome {
    let k = kirmse();
    ensure(k.disc() == q(1, 1), format!("disc {}", k.disc()))?;
    let v = k.closed_under_mul();
    let f = v.failure().ok_or("Kirmse lattice reported closed")?;
    match &f.witness {
        Witness::Product { left, right, product } => {
            ensure((left.as_str(), right.as_str()) == ("v1", "v3"), format!("witness {left}*{right}"))?;
            let expect: Vec<Scalar> = [0, 1, 1, 1, 0, 1, 0, 0].iter().map(|&c| q(c, 2)).collect();
            ensure(*product == expect, "v1 v3 != (u1+u2+u3+u5)/2")?;
            let at = |l: &str| k.labels().iter().position(|x| x == l).unwrap();
            let v1v3 = ok(k.basis_element(at("v1")).mul(&k.basis_element(at("v3"))))?;
            ensure(v1v3.coords() == expect.as_slice(), "recomputed product differs")?;
            ensure(!k.contains(&v1v3), "product reported inside the lattice")?;
        }
        w => return Err(format!("unexpected witness {w:?}")),
    }
    Ok("disc 1; v1*v3 = (u1+u2+u3+u5)/2 lies outside".into())
}

fn albert_models_z() -> Result<[(String, Arc<CubicData>); 2], String> {
    let z = RingDescriptor::Integers;
    let h = ok(her3(&zorn_algebra(&z), &Gamma::one(&z)))?;
    let t = ok(split_albert(&z))?;
    Ok([(h.cubic().name().to_string(), h.cubic().clone()), (t.cubic().name().to_string(), t.cubic().clone())])
}

fn adjoint_strict() -> Outcome {
    let id = axiom_identities().into_iter().find(|i| i.name == "adjoint identity").ok_or("no adjoint identity")?;
    let mut parts = Vec::new();
    for (name, data) in albert_models_z()? {
        ensure(data.dim() == 27, format!("{name} has dimension {}", data.dim()))?;
        let t = Instant::now();
        let v = ok(check_strict(&*data, &id))?;
        ensure(v.holds(), format!("{name}: {v:?}"))?;
        parts.push(format!("{name} holds ({:.2} s)", t.elapsed().as_secs_f64()));
    }
    Ok(parts.join("; "))
}

fn fundamental_formula() -> Outcome {
    let id = axiom_identities().into_iter().find(|i| i.name == "fundamental formula").ok_or("no formula")?;
    let mut parts = Vec::new();
    for (name, data) in albert_models_z()? {
        let v = ok(check_sampled(&*data, &id, 1000, DEFAULT_SEED))?;
        ensure(v.holds(), format!("{name}: {v:?}"))?;
        // Operator form on a few points: the matrix of U_{U_x y} against the
        // product of the three U matrices.
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        for _ in 0..5 {
            let x = ok(data.element((0..27).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect()))?;
            let y = ok(data.element((0..27).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect()))?;
            let lhs = ok(x.u_op(&y))?.u_matrix();
            let (ux, uy) = (x.u_matrix(), y.u_matrix());
            let rhs = ok(ok(ux.compose(&uy, data.ring()))?.compose(&ux, data.ring()))?;
            ensure(lhs == rhs, format!("{name}: operator identity fails"))?;
        }
        parts.push(format!("{name} holds"));
    }
    Ok(format!("{} on 1000 samples each", parts.join(", ")))
}

fn conic_mul(a: &ConicElement, b: &ConicElement) -> ConicElement {
    a.mul(b).unwrap()
}

/// `x♯ x` as a 3x3 matrix product, computed entry by entry.
fn sharp_times(h: &Her3, x: &Her3Element) -> Result<[[ConicElement; 3]; 3], String> {
    let xe = ok(h.element(x))?;
    let s = ok(h.split(&xe.sharp()))?;
    let (a, b) = (h.matrix(&s), h.matrix(x));
    let c = h.conic();
    Ok(std::array::from_fn(|r| {
        std::array::from_fn(|col| (0..3).fold(c.zero(), |acc, t| &acc + &conic_mul(&a[r][t], &b[t][col])))
    }))
}

fn associator_defect() -> Outcome {
    let rat = RingDescriptor::Rationals;
    let g = Gamma::new([q(2, 1), q(-1, 1), q(3, 1)]).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut nonzero = 0;
    for (conic, expect_zero) in [(cartan_schouten(&rat), false), (octad::cayley::quaternions(&rat), true)] {
        let h = ok(her3(&conic, &g))?;
        let d = conic.dim();
        for _ in 0..500 {
            let mut c = || rat.from_i64(rng.gen_range(-5..=5));
            let xi = [c(), c(), c()];
            let u = std::array::from_fn(|_| conic.element((0..d).map(|_| c()).collect()).unwrap());
            let x = Her3Element { xi, u };
            let n = ok(h.element(&x))?.norm();
            let m = sharp_times(&h, &x)?;
            let [u1, u2, u3] = &x.u;
            let assoc = &conic_mul(&conic_mul(u1, u2), u3) - &conic_mul(u1, &conic_mul(u2, u3));
            let defect = assoc.scale(&g.product());
            if expect_zero {
                ensure(defect.is_zero(), "quaternion associator is nonzero")?;
            } else if !defect.is_zero() {
                nonzero += 1;
            }
            for r in 0..3 {
                for s in 0..3 {
                    let want = if r == s { &conic.one().scale(&n) + &defect } else { conic.zero() };
                    ensure(m[r][s] == want, format!("entry ({r},{s}) of x#x differs on {}", conic.name()))?;
                }
            }
        }
    }
    Ok(format!("500 octonion samples ({nonzero} with nonzero associator), quaternion defect 0"))
}

fn char3_nilpotence() -> Outcome {
    let w = ok(char3_nilpotence_demo(&RingDescriptor::PrimeField(3)))?;
    ensure(!w.square.is_zero(), "(j1-1)^2 = 0")?;
    ensure(w.cube.is_zero(), "(j1-1)^3 != 0")?;
    Ok(format!("x = {}, x^2 = {}, x^3 = 0", w.x, w.square))
}

fn eps_part(s: &Scalar) -> Option<Scalar> {
    match s {
        Scalar::Dual(p) => Some(p.1.clone()),
        _ => None,
    }
}

fn all_cubic_algebras() -> Result<Vec<Arc<CubicData>>, String> {
    let z = RingDescriptor::Integers;
    let rat = RingDescriptor::Rationals;
    let f5 = RingDescriptor::PrimeField(5);
    let z6 = ok(RingDescriptor::modular(6))?;
    let form = ok(QuadraticForm::diagonal(z.clone(), &[Scalar::int(1), Scalar::int(-1), Scalar::int(2)]))?;
    let mut out = vec![
        k_cubic(&z),
        split_cubic_etale(&z),
        split_cubic_etale(&z6),
        kk_cubic(&z),
        ok(hat_pointed(&form, &[Scalar::int(1), Scalar::int(0), Scalar::int(0)]))?,
    ];
    let g = ok(Gamma::new([q(2, 1), q(-1, 1), q(1, 3)]))?;
    for h in [
        ok(her3(&base_ring_algebra(&z), &Gamma::one(&z)))?,
        ok(her3(&split_etale(&z), &Gamma::one(&z)))?,
        ok(her3(&octad::cayley::quaternions(&z), &Gamma::one(&z)))?,
        ok(her3(&cartan_schouten(&z), &Gamma::one(&z)))?,
        ok(her3(&zorn_algebra(&z), &Gamma::one(&z)))?,
        ok(her3(&cartan_schouten(&rat), &g))?,
        ok(her3(&zorn_algebra(&f5), &Gamma::one(&f5)))?,
    ] {
        out.push(h.cubic().clone());
    }
    out.push(mat3(&z).cubic().clone());
    for t in [
        ok(tits(&k_assoc(&z), &Scalar::int(1)))?,
        ok(tits(&split_etale_assoc(&z), &Scalar::int(-1)))?,
        ok(tits(&mat3(&f5), &f5.from_i64(2)))?,
        ok(split_albert(&z))?,
    ] {
        out.push(t.cubic().clone());
    }
    Ok(out)
}

fn gradient_dual() -> Outcome {
    let algebras = all_cubic_algebras()?;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for data in &algebras {
        let k = data.ring().clone();
        for _ in 0..1000 {
            let x: Vec<Scalar> = (0..data.dim()).map(|_| k.sample(&mut rng)).collect();
            let y: Vec<Scalar> = (0..data.dim()).map(|_| k.sample(&mut rng)).collect();
            let lifted: Vec<Scalar> = x.iter().zip(&y).map(|(a, b)| Scalar::dual(a.clone(), b.clone())).collect();
            let n = data.norm_generic(&lifted);
            let eps = eps_part(&n).ok_or_else(|| format!("{}: norm left the dual ring", data.name()))?;
            let xe = ok(data.element(x))?;
            let ye = ok(data.element(y))?;
            let rhs = ok(xe.sharp().bilinear_trace(&ye))?;
            ensure(eps == rhs, format!("{}: eps part {eps} != T(x#, y) {rhs}", data.name()))?;
        }
    }
    Ok(format!("1000 samples in each of {} algebras", algebras.len()))
}

/// `ε^(m)` for `e = Σ a_i c_i`: the sum over m-subsets of the product of the
/// chosen `a_i` and the complements of the others.
fn oracle_split(a: &[Scalar; 3]) -> [Scalar; 4] {
    let one = a[0].one_like();
    std::array::from_fn(|m| {
        (0u32..8).filter(|s| s.count_ones() as usize == m).fold(a[0].zero_like(), |acc, s| {
            let term = (0..3).fold(one.clone(), |p, i| {
                let f = if s >> i & 1 == 1 { a[i].clone() } else { &one - &a[i] };
                &p * &f
            });
            &acc + &term
        })
    })
}

fn idempotent_split() -> Outcome {
    let z6 = ok(RingDescriptor::modular(6))?;
    let rings = [z6.clone(), RingDescriptor::product(z6.clone(), z6.clone())];
    let scalar_idempotents = |k: &RingDescriptor| -> Vec<Scalar> {
        let base: Vec<Scalar> = [0, 1, 3, 4].iter().map(|&v| z6.from_i64(v)).collect();
        match k {
            RingDescriptor::Product(..) => {
                base.iter().flat_map(|a| base.iter().map(move |b| Scalar::pair(a.clone(), b.clone()))).collect()
            }
            _ => base,
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let (mut classified, mut mixed) = (0, 0);
    for _ in 0..200 {
        let k = &rings[rng.gen_range(0..2)];
        let mut pool = scalar_idempotents(k);
        if rng.gen_bool(0.5) {
            pool.retain(|s| s.is_zero() || s.is_one());
        }
        let a: [Scalar; 3] = std::array::from_fn(|_| pool[rng.gen_range(0..pool.len())].clone());
        let hosts: Vec<CubicElement> = {
            let etale = split_cubic_etale(k);
            let e1 = ok(etale.element(a.to_vec()))?;
            let h = ok(her3(&base_ring_algebra(k), &Gamma::one(k)))?;
            let e2 = ok(h.diagonal(a.clone()))?;
            let m = mat3(k);
            let mut diag = vec![k.zero(); 9];
            for i in 0..3 {
                diag[4 * i] = a[i].clone();
            }
            let e3 = ok(m.cubic().element(diag))?;
            vec![e1, e2, e3]
        };
        let want = oracle_split(&a);
        let hot: Vec<usize> = (0..4).filter(|&m| want[m].is_one()).collect();
        for e in &hosts {
            ensure(e.is_idempotent(), format!("{e} is not idempotent"))?;
            let split = ok(e.idempotent_split())?;
            ensure(split == want, format!("split of {e} is {split:?}, expected {want:?}"))?;
            match (hot.as_slice(), e.idem_class()) {
                ([m], Ok(c)) => {
                    let expect = [IdemClass::Zero, IdemClass::Elementary, IdemClass::CoElementary, IdemClass::Unit][*m];
                    ensure(c == expect, format!("{e}: class {c:?}, expected {expect:?}"))?;
                }
                ([], Err(_)) => {}
                (h, c) => return Err(format!("{e}: hot slots {h:?}, class {c:?}")),
            }
        }
        if hot.len() == 1 {
            classified += 1;
        } else {
            mixed += 1;
        }
    }
    Ok(format!("200 idempotents in 3 hosts each: {classified} single-class, {mixed} mixed"))
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect()).collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det_i64(&minor)
        })
        .sum()
}

fn block_determinant() -> Outcome {
    let rat = RingDescriptor::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..500 {
        let p = rng.gen_range(1..=6usize);
        let q_ = rng.gen_range(0..=p.min(6 - p));
        let r = loop {
            let v = rng.gen_range(-5..=5i64);
            if v != 0 {
                break v;
            }
        };
        let s = rng.gen_range(-5..=5i64);
        let t1: Vec<Vec<i64>> = (0..p).map(|_| (0..q_).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let t2: Vec<Vec<i64>> = (0..q_).map(|_| (0..p).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let n = p + q_;
        let mut full = vec![vec![0i64; n]; n];
        for i in 0..p {
            full[i][i] = r;
            for j in 0..q_ {
                full[i][p + j] = t1[i][j];
            }
        }
        for i in 0..q_ {
            full[p + i][p + i] = s;
            for j in 0..p {
                full[p + i][j] = t2[i][j];
            }
        }
        let lift = |m: &[Vec<i64>]| m.iter().map(|row| row.iter().map(|&v| q(v, 1)).collect()).collect::<Vec<_>>();
        let got = ok(block_det(&q(r, 1), &q(s, 1), &lift(&t1), &lift(&t2)))?;
        let want = det_i64(&full);
        ensure(got == rat.from_i64(want), format!("p={p} q={q_} r={r} s={s}: {got} != {want}"))?;
    }
    Ok("500 instances agree with cofactor expansion".into())
}

struct Criterion {
    title: &'static str,
    target: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs_f64;
    let criteria = [
        Criterion { title: "Hurwitz units", target: secs(0.1), run: hurwitz_units },
        Criterion { title: "E8 units", target: secs(1.0), run: e8_units },
        Criterion { title: "Zorn censuses", target: secs(5.0), run: zorn_censuses },
        Criterion { title: "Her3(F2) census", target: secs(0.1), run: her3_f2_census },
        Criterion { title: "strict Moufang and composition defect", target: secs(30.0), run: strict_moufang },
        Criterion { title: "sedenion zero divisor", target: secs(0.01), run: sedenion_zero_divisor },
        Criterion { title: "Kirmse lattice", target: secs(0.1), run: kirmse_lattice },
        Criterion { title: "strict adjoint identity, dim 27", target: secs(120.0), run: adjoint_strict },
        Criterion { title: "fundamental formula, dim 27", target: secs(30.0), run: fundamental_formula },
        Criterion { title: "associator defect", target: secs(10.0), run: associator_defect },
        Criterion { title: "char-3 nilpotence", target: secs(0.01), run: char3_nilpotence },
        Criterion { title: "gradient identity via dual numbers", target: secs(10.0), run: gradient_dual },
        Criterion { title: "idempotent split", target: secs(5.0), run: idempotent_split },
        Criterion { title: "block determinant", target: secs(5.0), run: block_determinant },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let timing = format!("{:.3} s, target {} s", took.as_secs_f64(), c.target.as_secs_f64());
        let slow = if took > c.target { " [over target]" } else { "" };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {}: {detail} ({timing}){slow}", i + 1, c.title),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {why} ({timing})", i + 1, c.title);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
