//! Algebra-spec strings: `Q`, `cay(Q; -1, -1)`, `zorn(Z)`, `cs-octonions`,
//! `her3(zorn(Z), 1)`, `tits(mat3(F5), 2)` and friends.

use std::sync::Arc;

use octad::cayley::{iterated, quaternions, sedenions};
use octad::conic::{base_ring_algebra, cartan_schouten, quadratic, split_etale};
use octad::cubic::{k_cubic, split_cubic_etale, CubicData};
use octad::her3::{her3, Gamma};
use octad::tits::{k_assoc, mat3, split_etale_assoc, tits, CubicAssocInput};
use octad::zorders::{alternative_dico, dickson_coxeter, gaussian, hurwitz, kirmse, DicoVariant, ZLattice};
use octad::zorn::zorn_algebra;
use octad::{ConicAlgebra, RingDescriptor, Scalar};

pub enum Algebra {
    Conic(Arc<ConicAlgebra>),
    Cubic(Arc<CubicData>),
}

impl Algebra {
    pub fn name(&self) -> &str {
        match self {
            Algebra::Conic(c) => c.name(),
            Algebra::Cubic(c) => c.name(),
        }
    }
}

type Parsed<T> = Result<T, String>;

/// Splits at `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// `name(args)` or a bare `name`.
fn call(s: &str) -> Parsed<(String, Option<&str>)> {
    let s = s.trim();
    match s.find('(') {
        None => Ok((s.to_lowercase(), None)),
        Some(open) => {
            if !s.ends_with(')') {
                return Err(format!("unbalanced parentheses in '{s}'"));
            }
            Ok((s[..open].trim().to_lowercase(), Some(&s[open + 1..s.len() - 1])))
        }
    }
}

pub fn ring(s: &str) -> Parsed<RingDescriptor> {
    let t = s.trim().to_uppercase();
    let k = RingDescriptor::parse(&t).map_err(|e| e.to_string())?;
    match k {
        RingDescriptor::Integers
        | RingDescriptor::Rationals
        | RingDescriptor::PrimeField(_)
        | RingDescriptor::ModularRing(_) => Ok(k),
        _ => Err(format!("ring '{s}' is not one of Q, Z, Fp, Z/n")),
    }
}

pub fn scalar(k: &RingDescriptor, s: &str) -> Parsed<Scalar> {
    Scalar::parse(k, s.trim()).map_err(|e| e.to_string())
}

fn one_arg<'a>(name: &str, args: Option<&'a str>) -> Parsed<&'a str> {
    args.ok_or_else(|| format!("{name} needs an argument"))
}

pub fn conic(s: &str) -> Parsed<Arc<ConicAlgebra>> {
    let (name, args) = call(s)?;
    let ring_arg = |default: RingDescriptor| match args {
        Some(a) => ring(a),
        None => Ok(default),
    };
    match name.as_str() {
        "cay" => {
            let parts = split_top(one_arg("cay", args)?, ';');
            let k = ring(parts[0])?;
            let mus = match parts.get(1) {
                Some(list) if !list.is_empty() => {
                    split_top(list, ',').iter().map(|m| scalar(&k, m)).collect::<Parsed<Vec<_>>>()?
                }
                _ => Vec::new(),
            };
            if parts.len() > 2 {
                return Err(format!("cay takes 'ring; mu, ...', got '{s}'"));
            }
            iterated(&k, &mus).map_err(|e| e.to_string())
        }
        "zorn" => Ok(zorn_algebra(&ring(one_arg("zorn", args)?)?)),
        "split" => Ok(split_etale(&ring(one_arg("split", args)?)?)),
        "cs-octonions" => Ok(cartan_schouten(&ring_arg(RingDescriptor::Integers)?)),
        "quaternions" => Ok(quaternions(&ring_arg(RingDescriptor::Integers)?)),
        "sedenions" => Ok(sedenions(&ring_arg(RingDescriptor::Integers)?)),
        "quadratic" => {
            let parts = split_top(one_arg("quadratic", args)?, ';');
            let k = ring(parts[0])?;
            let ab = parts.get(1).map(|l| split_top(l, ',')).unwrap_or_default();
            if ab.len() != 2 {
                return Err("quadratic takes 'ring; alpha, beta'".into());
            }
            quadratic(&k, &scalar(&k, ab[0])?, &scalar(&k, ab[1])?).map_err(|e| e.to_string())
        }
        _ if args.is_none() => Ok(base_ring_algebra(&ring(&name)?)),
        _ => Err(format!("unknown conic algebra '{name}'")),
    }
}

fn assoc_input(s: &str) -> Parsed<CubicAssocInput> {
    let (name, args) = call(s)?;
    match name.as_str() {
        "mat3" => Ok(mat3(&ring(one_arg("mat3", args)?)?)),
        "split3" => Ok(split_etale_assoc(&ring(one_arg("split3", args)?)?)),
        _ if args.is_none() => Ok(k_assoc(&ring(&name)?)),
        _ => Err(format!("unknown associative cubic algebra '{name}'")),
    }
}

fn gamma(k: &RingDescriptor, list: &[&str]) -> Parsed<Gamma> {
    let entries = list.iter().map(|g| scalar(k, g)).collect::<Parsed<Vec<_>>>()?;
    let g = match entries.as_slice() {
        [g] => [g.clone(), g.clone(), g.clone()],
        [a, b, c] => [a.clone(), b.clone(), c.clone()],
        _ => return Err(format!("expected 1 or 3 diagonal entries, got {}", entries.len())),
    };
    Gamma::new(g).map_err(|e| e.to_string())
}

pub fn her3_spec(coeff: &str, gammas: &[&str]) -> Parsed<Arc<CubicData>> {
    let c = conic(coeff)?;
    let g = if gammas.is_empty() { Gamma::one(c.ring()) } else { gamma(c.ring(), gammas)? };
    Ok(her3(&c, &g).map_err(|e| e.to_string())?.cubic().clone())
}

pub fn algebra(s: &str) -> Parsed<Algebra> {
    let (name, args) = call(s)?;
    match name.as_str() {
        "her3" => {
            let parts = split_top(one_arg("her3", args)?, ',');
            Ok(Algebra::Cubic(her3_spec(parts[0], &parts[1..])?))
        }
        "tits" => {
            let parts = split_top(one_arg("tits", args)?, ',');
            if parts.len() != 2 {
                return Err("tits takes 'algebra, mu'".into());
            }
            let a = assoc_input(parts[0])?;
            let mu = scalar(a.cubic().ring(), parts[1])?;
            Ok(Algebra::Cubic(tits(&a, &mu).map_err(|e| e.to_string())?.cubic().clone()))
        }
        "cubic" => Ok(Algebra::Cubic(k_cubic(&ring(one_arg("cubic", args)?)?))),
        "cubic-split" => Ok(Algebra::Cubic(split_cubic_etale(&ring(one_arg("cubic-split", args)?)?))),
        "mat3" => Ok(Algebra::Cubic(mat3(&ring(one_arg("mat3", args)?)?).cubic().clone())),
        _ => conic(s).map(Algebra::Conic),
    }
}

pub const LATTICES: [&str; 6] = ["gaussian", "hurwitz", "dico", "dico-p", "dico-q", "kirmse"];

pub fn lattice(name: &str) -> Parsed<ZLattice> {
    match name.to_lowercase().as_str() {
        "gaussian" => {
            let c = quadratic(&RingDescriptor::Rationals, &Scalar::rat(0, 1), &Scalar::rat(1, 1))
                .map_err(|e| e.to_string())?;
            gaussian(&c).map_err(|e| e.to_string())
        }
        "hurwitz" => Ok(hurwitz()),
        "dico" | "dickson-coxeter" | "e8" => Ok(dickson_coxeter()),
        "dico-p" => Ok(alternative_dico(DicoVariant::PForm)),
        "dico-q" => Ok(alternative_dico(DicoVariant::QForm)),
        "kirmse" => Ok(kirmse()),
        other => Err(format!("unknown lattice '{other}' (known: {})", LATTICES.join(", "))),
    }
}
