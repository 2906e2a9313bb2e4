// Each check draws its instance from a seed and reports the first mismatch.

use pbw::algebra::{NCPoly, Ring};
use pbw::criterion::rule_system;
use pbw::presets::{preset, LiftParams};
use pbw::scalars::{binom_vanishes, binom_vanishes_closed, q_binomial, Field, Scalar};
use pbw::words::Word;

use super::{poly, ring12, rng, twist};

pub type Check = Result<(), String>;

fn same(what: &str, a: &NCPoly, b: &NCPoly) -> Check {
    if a == b {
        Ok(())
    } else {
        Err(format!("{}: {:?} != {:?}", what, a, b))
    }
}

pub fn br(r: &Ring, a: &NCPoly, b: &NCPoly, q: &Scalar) -> NCPoly {
    r.q_commutator(a, b, q)
}

pub fn smul(c: &Scalar, a: &NCPoly) -> NCPoly {
    a.scale(c)
}

/// [...[[a,b]_q, b]_{qζ} ..., b]_{qζ^{k-1}}, k brackets.
pub fn left_nested(r: &Ring, a: &NCPoly, b: &NCPoly, q: &Scalar, z: &Scalar, k: usize) -> NCPoly {
    let mut acc = a.clone();
    let mut t = q.clone();
    for _ in 0..k {
        acc = br(r, &acc, b, &t);
        t = &t * z;
    }
    acc
}

/// [a, ... [a, [a,b]_q]_{qζ} ...]_{qζ^{k-1}}, k brackets.
pub fn right_nested(r: &Ring, a: &NCPoly, b: &NCPoly, q: &Scalar, z: &Scalar, k: usize) -> NCPoly {
    let mut acc = b.clone();
    let mut t = q.clone();
    for _ in 0..k {
        acc = br(r, a, &acc, &t);
        t = &t * z;
    }
    acc
}

pub fn derivation(seed: u64) -> Check {
    let r = ring12();
    let mut g = rng(seed);
    let (a, b, c) = (poly(&r, &mut g, 5), poly(&r, &mut g, 5), poly(&r, &mut g, 5));
    let (q, q1) = (twist(&r, &mut g), twist(&r, &mut g));
    let lhs = br(&r, &a, &r.mul(&b, &c), &(&q * &q1));
    let rhs = &r.mul(&br(&r, &a, &b, &q), &c) + &smul(&q, &r.mul(&b, &br(&r, &a, &c, &q1)));
    same("[a,bc]", &lhs, &rhs)?;
    let lhs = br(&r, &r.mul(&a, &b), &c, &(&q * &q1));
    let rhs = &r.mul(&a, &br(&r, &b, &c, &q1)) + &smul(&q1, &r.mul(&br(&r, &a, &c, &q), &b));
    same("[ab,c]", &lhs, &rhs)?;

    // n-fold version with three factors
    let bs: Vec<NCPoly> = (0..3).map(|_| poly(&r, &mut g, 3)).collect();
    let qs: Vec<Scalar> = (0..3).map(|_| twist(&r, &mut g)).collect();
    let prod = r.mul_all(&bs.iter().collect::<Vec<_>>());
    let lhs = br(&r, &a, &prod, &(&(&qs[0] * &qs[1]) * &qs[2]));
    let mut rhs = NCPoly::zero();
    let mut pre = r.one();
    for i in 0..3 {
        let mut t = r.constant(pre.clone());
        for b in &bs[..i] {
            t = r.mul(&t, b);
        }
        t = r.mul(&t, &br(&r, &a, &bs[i], &qs[i]));
        for b in &bs[i + 1..] {
            t = r.mul(&t, b);
        }
        rhs += &t;
        pre = &pre * &qs[i];
    }
    same("[a,b1b2b3]", &lhs, &rhs)
}

pub fn jacobi(seed: u64) -> Check {
    let r = ring12();
    let mut g = rng(seed);
    let (a, b, c) = (poly(&r, &mut g, 5), poly(&r, &mut g, 5), poly(&r, &mut g, 5));
    let (q, q1, q2) = (twist(&r, &mut g), twist(&r, &mut g), twist(&r, &mut g));
    let lhs = br(&r, &br(&r, &a, &b, &q1), &c, &(&q2 * &q));
    let ac = br(&r, &a, &c, &q2);
    let rhs = &(&br(&r, &a, &br(&r, &b, &c, &q), &(&q1 * &q2)) - &smul(&q1, &r.mul(&b, &ac)))
        + &smul(&q, &r.mul(&ac, &b));
    same("jacobi", &lhs, &rhs)
}

/// Both expansions for every n in 1..=4.
pub fn leibniz(seed: u64) -> Check {
    let r = ring12();
    let mut g = rng(seed);
    let (a, b) = (poly(&r, &mut g, 3), poly(&r, &mut g, 3));
    let (q, z) = (twist(&r, &mut g), twist(&r, &mut g));
    for n in 1..=4u64 {
        let qn = q.pow(n as i64).unwrap();
        let mut sb = NCPoly::zero();
        let mut sa = NCPoly::zero();
        for i in 0..n {
            let c = &q.pow(i as i64).unwrap() * &q_binomial(n, i, &z).unwrap();
            let tb = r.mul(&r.pow(&b, i), &left_nested(&r, &a, &b, &q, &z, (n - i) as usize));
            let ta = r.mul(&right_nested(&r, &a, &b, &q, &z, (n - i) as usize), &r.pow(&a, i));
            sb += &smul(&c, &tb);
            sa += &smul(&c, &ta);
        }
        same(&format!("[a,b^{}]", n), &br(&r, &a, &r.pow(&b, n), &qn), &sb)?;
        same(&format!("[a^{},b]", n), &br(&r, &r.pow(&a, n), &b, &qn), &sa)?;
    }
    Ok(())
}

/// ζ of order n ∈ {2,3,4,6} chosen by the seed.
pub fn restricted_leibniz(seed: u64) -> Check {
    let r = ring12();
    let mut g = rng(seed);
    let (a, b) = (poly(&r, &mut g, 3), poly(&r, &mut g, 3));
    let q = twist(&r, &mut g);
    let (k, n) = [(6, 2u64), (4, 3), (3, 4), (2, 6), (10, 6), (9, 4), (8, 3)][(seed % 7) as usize];
    let z = r.zeta(k);
    if z.ord().unwrap() != Some(n) {
        return Err(format!("ord ζ^{} != {}", k, n));
    }
    let qn = q.pow(n as i64).unwrap();
    same("restricted [a,b^n]", &br(&r, &a, &r.pow(&b, n), &qn), &left_nested(&r, &a, &b, &q, &z, n as usize))?;
    same("restricted [a^n,b]", &br(&r, &r.pow(&a, n), &b, &qn), &right_nested(&r, &a, &b, &q, &z, n as usize))
}

pub fn pascal(q: &Scalar, nmax: u64) -> Check {
    let b = |n, i| q_binomial(n, i, q).unwrap();
    for n in 1..=nmax {
        for i in 1..=n {
            let left = &(&q.pow(i as i64).unwrap() * &b(n, i)) + &b(n, i - 1);
            let mid = &b(n, i) + &(&q.pow((n + 1 - i) as i64).unwrap() * &b(n, i - 1));
            if left != b(n + 1, i) || mid != b(n + 1, i) {
                return Err(format!("q-Pascal fails at n={} i={} q={}", n, i, q));
            }
        }
    }
    Ok(())
}

/// Pascal over every ζ_12^k and every unit of F_2, F_3, F_5.
pub fn pascal_all(nmax: u64) -> Check {
    let f = Field::cyclotomic(12).unwrap();
    for k in 0..12 {
        pascal(&f.root(k), nmax)?;
    }
    for p in [2u32, 3, 5] {
        let f = Field::prime(p).unwrap();
        for v in 1..p as i64 {
            pascal(&f.from_int(v), nmax)?;
        }
    }
    Ok(())
}

/// (x2 + x1)^n against Σ binom(n,i)_q x2^i x1^{n-i} in the quantum plane.
pub fn binomial_theorem(nmax: u64) -> Check {
    for k in 0..6 {
        let d = preset("quantum_plane", &LiftParams { n: Some(6), k: Some(k), ..Default::default() }).unwrap().datum;
        let rs = rule_system(&d).unwrap();
        let r = &d.ring;
        let (x, y) = (r.x(r.idx(&[2])), r.x(r.idx(&[1])));
        let q = r.zeta(k);
        for n in 0..=nmax {
            let lhs = rs.normal_form(&r.pow(&(&x + &y), n));
            let mut rhs = NCPoly::zero();
            for i in 0..=n {
                let t = r.mul(&r.pow(&x, i), &r.pow(&y, n - i));
                rhs += &smul(&q_binomial(n, i, &q).unwrap(), &t);
            }
            same(&format!("binomial k={} n={}", k, n), &lhs, &rs.normal_form(&rhs))?;
        }
    }
    Ok(())
}

/// Direct evaluation against the closed form, n ≤ 12.
pub fn vanishing_table() -> Check {
    let mut qs: Vec<Scalar> = (0..12).map(|k| Field::cyclotomic(12).unwrap().root(k)).collect();
    for p in [2u32, 3] {
        let f = Field::prime(p).unwrap();
        qs.extend((1..p as i64).map(|v| f.from_int(v)));
    }
    for q in &qs {
        for n in 2..=12 {
            if binom_vanishes(n, q) != binom_vanishes_closed(n, q).unwrap() {
                return Err(format!("vanishing disagrees at n={} q={}", n, q));
            }
        }
    }
    Ok(())
}

pub fn all_words(theta: u8, n: usize) -> Vec<Word> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Word> = vec![vec![]];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|w| {
                (1..=theta).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Split at the lexicographically minimal proper ending, found by sorting.
pub fn min_ending_split(u: &[u8]) -> (Word, Word) {
    let mut endings: Vec<(Word, usize)> = (1..u.len()).map(|i| (u[i..].to_vec(), i)).collect();
    endings.sort();
    let i = endings[0].1;
    (u[..i].to_vec(), u[i..].to_vec())
}

/// Lyndon as "strictly smaller than each nontrivial rotation".
pub fn lyndon_by_rotation(u: &[u8]) -> bool {
    !u.is_empty() && (1..u.len()).all(|i| u < [&u[i..], &u[..i]].concat().as_slice())
}
