#![allow(dead_code)]

use octad::{ConicElement, Scalar};

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::rat(n, d)
}

pub fn key(x: &ConicElement) -> Vec<String> {
    x.coords().iter().map(|c| c.to_string()).collect()
}

/// u-coordinates of eps_i read off from u0 = -e1 + e2, u2 = e1 + e2,
/// u1 = -e3 + e4, u3 = -e3 - e4, u4 = -e5 + e6, u5 = e5 + e6,
/// u6 = e7 + e8, u7 = -e7 + e8.
pub fn oracle_eps(i: usize) -> Vec<Scalar> {
    let mut v = vec![q(0, 1); 8];
    let mut set = |idx: usize, s: i64| v[idx] = q(s, 2);
    match i {
        1 => {
            set(0, -1);
            set(2, 1)
        }
        2 => {
            set(0, 1);
            set(2, 1)
        }
        3 => {
            set(1, -1);
            set(3, -1)
        }
        4 => {
            set(1, 1);
            set(3, -1)
        }
        5 => {
            set(4, -1);
            set(5, 1)
        }
        6 => {
            set(4, 1);
            set(5, 1)
        }
        7 => {
            set(6, 1);
            set(7, -1)
        }
        8 => {
            set(6, 1);
            set(7, 1)
        }
        _ => unreachable!(),
    }
    v
}

pub fn eps_combination(xi: &[Scalar]) -> Vec<Scalar> {
    let mut x = vec![q(0, 1); 8];
    for (i, c) in xi.iter().enumerate() {
        for (xl, el) in x.iter_mut().zip(oracle_eps(i + 1)) {
            *xl = &*xl + &(c * &el);
        }
    }
    x
}

/// All 240 roots in eps-coordinates: ±e_i ± e_j and (±1/2)^8 with an even
/// number of minus signs.
pub fn oracle_e8_roots() -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut xi = vec![q(0, 1); 8];
                xi[i] = q(si, 1);
                xi[j] = q(sj, 1);
                out.push(xi);
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            out.push((0..8).map(|b| if mask >> b & 1 == 1 { q(-1, 2) } else { q(1, 2) }).collect());
        }
    }
    out
}
