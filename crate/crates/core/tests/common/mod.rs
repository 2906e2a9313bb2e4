// Shared fixtures for the integration tests and the acceptance runner.
#![allow(dead_code)]

pub mod ident;

use pbw::algebra::{Datum, Monomial, NCPoly, Ring};
use pbw::presets::{preset, LiftParams};
use pbw::scalars::{Field, Scalar};
use pbw::words::LSet;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// θ = 3 over Q(ζ_12) with Γ = Z/12, gradings chosen so that words mix
/// several characters.
pub fn ring12() -> Ring {
    let f = Field::cyclotomic(12).unwrap();
    let g = vec![vec![1], vec![5], vec![2]];
    let chi = vec![vec![3], vec![1], vec![7]];
    Ring::new(f, pbw::algebra::GroupSpec::cyclic(12), g, chi, LSet::letters(3))
}

/// Random ζ_12^k.
pub fn twist(r: &Ring, rng: &mut ChaCha8Rng) -> Scalar {
    r.zeta(rng.gen_range(0..12))
}

/// Random coefficient: small integer times a root of unity, never zero.
pub fn coeff(r: &Ring, rng: &mut ChaCha8Rng) -> Scalar {
    let n = rng.gen_range(1..4) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut c = r.int(n);
    c *= &r.zeta(rng.gen_range(0..12));
    c
}

/// Random element with up to `terms` terms of word length ≤ 3 and a random
/// group part.
pub fn poly(r: &Ring, rng: &mut ChaCha8Rng, terms: usize) -> NCPoly {
    let mut p = NCPoly::zero();
    let n = rng.gen_range(1..=terms);
    for _ in 0..n {
        let len = rng.gen_range(0..=3);
        let word: Vec<u16> = (0..len).map(|_| rng.gen_range(0..r.theta() as u16)).collect();
        let g = vec![rng.gen_range(0..12)];
        let m = r.mono(word, g);
        p.add_term(m, &coeff(r, rng));
    }
    p
}

pub fn monomial_count(p: &NCPoly) -> usize {
    p.len()
}

pub fn leading_word(p: &NCPoly) -> Option<Monomial> {
    p.leading().map(|(m, _)| m.clone())
}

pub fn get(name: &str) -> Datum {
    preset(name, &LiftParams::default()).unwrap().datum
}

pub fn get_n(name: &str, n: u64) -> Datum {
    preset(name, &LiftParams::with_n(n)).unwrap().datum
}

/// Single-relation tampers of passing presets, each a genuinely different
/// algebra of smaller dimension. Every entry has PBW count ≤ 64.
pub fn tampered() -> Vec<(String, Datum)> {
    let mut out = vec![];

    // 1 − g^N becomes 1 − g
    let mut d = get_n("radford", 2);
    let r = d.ring.clone();
    d.set_redhat("1", &r.one_poly() - &r.grp_poly(&[1]));
    out.push(("radford N=2, redhat_1 = 1 - g".to_string(), d));

    // 1 − g² becomes 1 − g
    let mut d = get_n("uq_sl2", 3);
    let r = d.ring.clone();
    d.set_red("12", &r.one_poly() - &r.grp_poly(&[1]));
    out.push(("uq_sl2 N=3, red_12 = 1 - g".to_string(), d));

    // height of x_1 lowered below ord q_11
    let mut d = get_n("uq_sl2", 3);
    d.set_height("1", Some(2));
    out.push(("uq_sl2 N=3, N_1 = 2".to_string(), d));

    let mut d = get("lifting_a2_2b");
    let r = d.ring.clone();
    let twice = d.red("112").scale(&r.int(2));
    d.set_red("112", twice);
    out.push(("lifting_a2_2b, red_112 doubled".to_string(), d));

    let mut d = get("lifting_a2_2b");
    let r = d.ring.clone();
    let bumped = d.redhat("12") + &r.x(r.idx(&[2]));
    d.set_redhat("12", bumped);
    out.push(("lifting_a2_2b, redhat_12 + x2".to_string(), d));

    let mut d = get_n("lifting_a1", 2);
    let r = d.ring.clone();
    d.set_redhat("1", &r.one_poly() - &r.grp_poly(&[1]));
    out.push(("lifting_a1 N=2, redhat_1 = 1 - g".to_string(), d));

    out
}

/// Tampers whose PBW count exceeds the desk bound, used for mode agreement.
pub fn tampered_large() -> Vec<(String, Datum)> {
    let mut d = get("lifting_a2_4a");
    let r = d.ring.clone();
    let twice = d.red("112").scale(&r.int(2));
    d.set_red("112", twice);
    vec![("lifting_a2_4a, red_112 doubled".to_string(), d)]
}
