//! Ready-made data for the classical rank-one and rank-two examples, the A2
//! liftings and a B2 scaffold, each with its expected dimension.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{Datum, GroupElement, GroupSpec, NCPoly, Ring};
use crate::criterion::{forced_serre_from_power, SerreSide};
use crate::scalars::{Field, Scalar, ScalarError};
use crate::words::{parse_word, LSet, WordError};

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("unknown preset {0}")]
    Unknown(String),
    #[error("{0}")]
    Constraint(String),
    #[error("{0}")]
    Scalar(#[from] ScalarError),
    #[error("{0}")]
    Word(#[from] WordError),
}

/// Orders and lifting coefficients. Unset coefficients default to 1 where
/// admissible and 0 otherwise.
#[derive(Clone, Debug, Default)]
pub struct LiftParams {
    pub n: Option<u64>,
    /// Exponent k of the twist ζ^k where a preset has a free one.
    pub k: Option<i64>,
    /// Order of the cyclic group factors, where a preset lets it vary.
    pub group: Option<u64>,
    /// μ_u keyed by u, as rational literals.
    pub mu: BTreeMap<String, String>,
    /// λ_w keyed by w.
    pub lambda: BTreeMap<String, String>,
}

impl LiftParams {
    pub fn with_n(n: u64) -> Self {
        LiftParams { n: Some(n), ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: String,
    pub datum: Datum,
    /// Expected dimension; `None` when infinite.
    pub dimension: Option<u64>,
    /// Expected Hilbert coefficients for infinite cases, degrees 0, 1, ...
    pub hilbert: Option<Vec<u64>>,
}

pub const NAMES: &[&str] = &[
    "nichols_a1",
    "taft",
    "radford",
    "lifting_a1",
    "quantum_plane",
    "weyl",
    "nichols_a1xa1",
    "lifting_a1xa1",
    "book",
    "uq_sl2",
    "lifting_a2_1a",
    "lifting_a2_1b",
    "lifting_a2_2b",
    "lifting_a2_4a",
    "lifting_a2_4b",
    "b2_nichols",
];

/// One-line description per preset, for the CLI.
pub fn describe(name: &str) -> &'static str {
    match name {
        "nichols_a1" => "x^N = 0 over Γ = Z, q = ζ_N (N)",
        "taft" => "Taft algebra over Z/N (N)",
        "radford" => "Radford algebra x^N = 1 - g^N over Z/N² (N)",
        "lifting_a1" => "x^N = μ(1 - g^N) over Z/G (N, group G, mu 1)",
        "quantum_plane" => "x1x2 = ζ^k x2x1 over Z/N (N, k)",
        "weyl" => "x1x2 - x2x1 = 1 over Q",
        "nichols_a1xa1" => "[x1x2] = 0, x_i^N = 0 over Z/N × Z/N (N)",
        "lifting_a1xa1" => "[x1x2] = λ(1 - g1g2), x_i^N = μ_i(1 - g_i^N) over Z/G × Z/G (N, group G, lambda 12, mu 1, mu 2)",
        "book" => "book algebra h(1,q) over Z/N (N)",
        "uq_sl2" => "Frobenius-Lusztig kernel over Z/N (N odd)",
        "lifting_a2_1a" => "Cartan A2, q11 = -1, over Z/4 × Z/4 (mu 1, 12, 2)",
        "lifting_a2_1b" => "Cartan A2, ord q11 = 3, over Z/9 (lambda 112, 122; mu 1, 12, 2)",
        "lifting_a2_2b" => "q22 = -1, ord q11 = 4, over Z/4 (lambda 112; mu 2)",
        "lifting_a2_4a" => "q11 = q22 = -1, q12 ≠ ±1, over Z/6 (mu 1)",
        "lifting_a2_4b" => "q11 = q22 = -1, q12 = ±1, over Z/6 (mu 2)",
        "b2_nichols" => "L = {1,112,12,2}, Cartan B2 at ζ_5 over Z/5",
        _ => "",
    }
}

fn constraint(msg: impl Into<String>) -> PresetError {
    PresetError::Constraint(msg.into())
}

/// A datum with every red and redhat set to zero.
fn bare(field: Field, group: GroupSpec, g: Vec<GroupElement>, chi: Vec<Vec<i64>>, l: &[&str], heights: &[Option<u64>]) -> Result<Datum, PresetError> {
    let theta = g.len() as u8;
    let words = l.iter().map(|s| parse_word(s)).collect::<Result<Vec<_>, _>>()?;
    let lset = LSet::new(&words, theta)?;
    let ring = Ring::new(field, group, g, chi, lset);
    let mut d = Datum { ring, heights: vec![None; l.len()], reds: BTreeMap::new(), redhats: BTreeMap::new() };
    for (w, h) in l.iter().zip(heights) {
        d.set_height(w, *h);
    }
    for w in d.c_set() {
        d.reds.insert(w, NCPoly::zero());
    }
    for w in d.d_set() {
        d.redhats.insert(w, NCPoly::zero());
    }
    Ok(d)
}

/// μ_u is admissible iff g_u^{N_u} ≠ 1 and χ_u^{N_u} = ε.
pub fn mu_admissible(d: &Datum, u: &str) -> bool {
    let r = &d.ring;
    let w = parse_word(u).expect("word literal");
    let Some(n) = d.height_of(&w) else { return false };
    let g = r.group.pow(&r.word_g(&w), n as i64);
    let chi = r.char_pow(&r.word_chi(&w), n as i64);
    !r.group.is_identity(&g) && chi.iter().all(|k| *k == 0)
}

/// λ_w is admissible iff g_w ≠ 1 and χ_w = ε.
pub fn lambda_admissible(d: &Datum, w: &str) -> bool {
    let r = &d.ring;
    let w = parse_word(w).expect("word literal");
    !r.group.is_identity(&r.word_g(&w)) && r.word_chi(&w).iter().all(|k| *k == 0)
}

fn coefficient(d: &Datum, given: Option<&String>, admissible: bool, name: &str) -> Result<Scalar, PresetError> {
    let f = d.field();
    match given {
        Some(s) => {
            let c = f.parse_literal(std::slice::from_ref(s))?;
            if !c.is_zero() && !admissible {
                return Err(constraint(format!("{} must vanish for this group and character", name)));
            }
            Ok(c)
        }
        None if admissible => Ok(f.one()),
        None => Ok(f.zero()),
    }
}

fn mu(d: &Datum, p: &LiftParams, u: &str) -> Result<Scalar, PresetError> {
    coefficient(d, p.mu.get(u), mu_admissible(d, u), &format!("mu_{}", u))
}

fn lambda(d: &Datum, p: &LiftParams, w: &str) -> Result<Scalar, PresetError> {
    coefficient(d, p.lambda.get(w), lambda_admissible(d, w), &format!("lambda_{}", w))
}

/// c·(1 − g_u^n).
fn one_minus_g(r: &Ring, c: &Scalar, u: &str, n: u64) -> NCPoly {
    let g = r.group.pow(&r.word_g(&parse_word(u).unwrap()), n as i64);
    (&r.one_poly() - &r.grp_poly(&g)).scale(c)
}

fn need_n(p: &LiftParams, default: u64, min: u64, name: &str) -> Result<u64, PresetError> {
    let n = p.n.unwrap_or(default);
    if n < min {
        return Err(constraint(format!("{} needs N ≥ {}", name, min)));
    }
    Ok(n)
}

fn cyc(m: u64) -> Result<Field, PresetError> {
    Ok(Field::cyclotomic(m as u32)?)
}

pub fn preset(name: &str, p: &LiftParams) -> Result<Preset, PresetError> {
    let (datum, dimension, hilbert) = match name {
        "nichols_a1" => {
            let n = need_n(p, 3, 2, name)?;
            let d = bare(cyc(n)?, GroupSpec { torsion: vec![], free_rank: 1 }, vec![vec![1]], vec![vec![1]], &["1"], &[Some(n)])?;
            (d, None, Some(vec![1; n as usize]))
        }
        "taft" => {
            let n = need_n(p, 3, 2, name)?;
            let d = bare(cyc(n)?, GroupSpec::cyclic(n), vec![vec![1]], vec![vec![1]], &["1"], &[Some(n)])?;
            (d, Some(n * n), None)
        }
        "radford" => {
            let n = need_n(p, 2, 2, name)?;
            let mut d = bare(cyc(n)?, GroupSpec::cyclic(n * n), vec![vec![1]], vec![vec![1]], &["1"], &[Some(n)])?;
            let rh = one_minus_g(&d.ring, &d.field().one(), "1", n);
            d.set_redhat("1", rh);
            (d, Some(n * n * n), None)
        }
        "lifting_a1" => {
            let n = need_n(p, 2, 2, name)?;
            let go = p.group.unwrap_or(n * n);
            if !go.is_multiple_of(n) {
                return Err(constraint(format!("group order {} must be a multiple of N = {}", go, n)));
            }
            let mut d = bare(cyc(n)?, GroupSpec::cyclic(go), vec![vec![1]], vec![vec![1]], &["1"], &[Some(n)])?;
            let m1 = mu(&d, p, "1")?;
            let rh = one_minus_g(&d.ring, &m1, "1", n);
            d.set_redhat("1", rh);
            (d, Some(n * go), None)
        }
        "quantum_plane" => {
            let n = need_n(p, 3, 2, name)?;
            let k = p.k.unwrap_or(1);
            // g1 = g, g2 = 1, so q12 = ζ^k and q11 = q21 = q22 = 1
            let d = bare(cyc(n)?, GroupSpec::cyclic(n), vec![vec![1], vec![0]], vec![vec![0], vec![k]], &["1", "2"], &[None, None])?;
            (d, None, Some((1..=11).collect()))
        }
        "weyl" => {
            let mut d = bare(cyc(1)?, GroupSpec::trivial(), vec![vec![], vec![]], vec![vec![], vec![]], &["1", "2"], &[None, None])?;
            let one = d.ring.one_poly();
            d.set_red("12", one);
            (d, None, Some((1..=11).collect()))
        }
        "nichols_a1xa1" => {
            let n = need_n(p, 3, 2, name)?;
            // q11 = q22 = ζ, q12 = ζ^{-1}, q21 = ζ
            let d = bare(cyc(n)?, GroupSpec { torsion: vec![n, n], free_rank: 0 }, vec![vec![1, 0], vec![0, 1]], vec![vec![1, 1], vec![-1, 1]], &["1", "2"], &[Some(n), Some(n)])?;
            (d, Some(n.pow(4)), None)
        }
        "lifting_a1xa1" => {
            let n = need_n(p, 2, 2, name)?;
            let go = p.group.unwrap_or(n);
            if !go.is_multiple_of(n) {
                return Err(constraint(format!("group order {} must be a multiple of N = {}", go, n)));
            }
            // χ1 = (1,1), χ2 = χ1^{-1}: q12 q21 = 1 and χ1χ2 = ε
            let mut d = bare(cyc(n)?, GroupSpec { torsion: vec![go, go], free_rank: 0 }, vec![vec![1, 0], vec![0, 1]], vec![vec![1, 1], vec![-1, -1]], &["1", "2"], &[Some(n), Some(n)])?;
            let l12 = lambda(&d, p, "12")?;
            let (m1, m2) = (mu(&d, p, "1")?, mu(&d, p, "2")?);
            let r = d.ring.clone();
            d.set_red("12", one_minus_g(&r, &l12, "12", 1));
            d.set_redhat("1", one_minus_g(&r, &m1, "1", n));
            d.set_redhat("2", one_minus_g(&r, &m2, "2", n));
            (d, Some(n * n * go * go), None)
        }
        "book" => {
            let n = need_n(p, 3, 3, name)?;
            let d = bare(cyc(n)?, GroupSpec::cyclic(n), vec![vec![1], vec![1]], vec![vec![-1], vec![1]], &["1", "2"], &[Some(n), Some(n)])?;
            (d, Some(n.pow(3)), None)
        }
        "uq_sl2" => {
            let n = need_n(p, 3, 3, name)?;
            if n % 2 == 0 {
                return Err(constraint(format!("uq_sl2 needs ord q = N odd so that ord q² = N, got N = {}", n)));
            }
            let mut d = bare(cyc(n)?, GroupSpec::cyclic(n), vec![vec![1], vec![1]], vec![vec![-2], vec![2]], &["1", "2"], &[Some(n), Some(n)])?;
            let r = d.ring.clone();
            d.set_red("12", &r.one_poly() - &r.grp_poly(&[2]));
            (d, Some(n.pow(3)), None)
        }
        "lifting_a2_1a" => {
            // q11 = q22 = -1, q12 = 1, q21 = -1 with ζ = i
            let mut d = bare(cyc(4)?, GroupSpec { torsion: vec![4, 4], free_rank: 0 }, vec![vec![1, 0], vec![0, 1]], vec![vec![2, 2], vec![0, 2]], &["1", "12", "2"], &[Some(2), Some(2), Some(2)])?;
            let r = d.ring.clone();
            let (m1, m12, m2) = (mu(&d, p, "1")?, mu(&d, p, "12")?, mu(&d, p, "2")?);
            d.set_redhat("1", one_minus_g(&r, &m1, "1", 2));
            d.set_redhat("2", one_minus_g(&r, &m2, "2", 2));
            let x2 = r.xw("2");
            let q21 = r.q_word(&[2], &[1]);
            let c = &(&r.int(4) * &m1) * &q21;
            d.set_redhat("12", &r.mul(&x2, &x2).scale(&c) + &one_minus_g(&r, &m12, "12", 2));
            // the Serre words are forced by the height-2 powers
            let (_, r112) = forced_serre_from_power(&d, "1", "2", SerreSide::Left).expect("N_1 = 2");
            let (_, r122) = forced_serre_from_power(&d, "1", "2", SerreSide::Right).expect("N_2 = 2");
            d.set_red("112", r112);
            d.set_red("122", r122);
            (d, Some(8 * 16), None)
        }
        "lifting_a2_1b" => {
            // g1 = g2 = g of order 9, every q equal to ζ_9^3 of order 3
            let mut d = bare(cyc(9)?, GroupSpec::cyclic(9), vec![vec![1], vec![1]], vec![vec![3], vec![3]], &["1", "12", "2"], &[Some(3), Some(3), Some(3)])?;
            let r = d.ring.clone();
            let (l112, l122) = (lambda(&d, p, "112")?, lambda(&d, p, "122")?);
            let (m1, m12, m2) = (mu(&d, p, "1")?, mu(&d, p, "12")?, mu(&d, p, "2")?);
            d.set_red("112", one_minus_g(&r, &l112, "112", 1));
            d.set_red("122", one_minus_g(&r, &l122, "122", 1));
            d.set_redhat("1", one_minus_g(&r, &m1, "1", 3));
            d.set_redhat("2", one_minus_g(&r, &m2, "2", 3));
            let q = r.q_word(&[1], &[1]);
            let one = r.one();
            let omq = &one - &q;
            // [x1x2x2] is red_122 in the X_L ring
            let mut h = one_minus_g(&r, &l122, "122", 1).scale(&-(&(&omq * &q) * &l112));
            let x2 = r.xw("2");
            h += &r.pow(&x2, 3).scale(&(&m1 * &omq.pow(3)?));
            h += &one_minus_g(&r, &m12, "12", 3);
            d.set_redhat("12", h);
            (d, Some(27 * 9), None)
        }
        "lifting_a2_2b" => {
            // g1 = g2 = g of order 4, χ1(g) = i, χ2(g) = -1
            let mut d = bare(cyc(4)?, GroupSpec::cyclic(4), vec![vec![1], vec![1]], vec![vec![1], vec![2]], &["1", "12", "2"], &[Some(4), Some(2), Some(2)])?;
            let r = d.ring.clone();
            let l112 = lambda(&d, p, "112")?;
            let (m1, m2) = (mu(&d, p, "1")?, mu(&d, p, "2")?);
            d.set_red("112", one_minus_g(&r, &l112, "112", 1));
            d.set_redhat("1", one_minus_g(&r, &m1, "1", 4));
            d.set_redhat("2", one_minus_g(&r, &m2, "2", 2));
            let (_, r122) = forced_serre_from_power(&d, "1", "2", SerreSide::Right).expect("N_2 = 2");
            d.set_red("122", r122);
            d.set_redhat("12", a2_2b_redhat12(&r, &l112, &m2)?);
            (d, Some(4 * 2 * 2 * 4), None)
        }
        "lifting_a2_4a" => {
            // g1 = g, g2 = g^3 in Z/6; χ1(g) = -1, χ2(g) = ζ_6
            let mut d = bare(cyc(6)?, GroupSpec::cyclic(6), vec![vec![1], vec![3]], vec![vec![3], vec![1]], &["1", "12", "2"], &[Some(2), Some(3), Some(2)])?;
            let r = d.ring.clone();
            let (m1, m12) = (mu(&d, p, "1")?, mu(&d, p, "12")?);
            if let Some(s) = p.mu.get("2") {
                if !d.field().parse_literal(std::slice::from_ref(s))?.is_zero() {
                    return Err(constraint("case (4a) has x2^2 = 0, mu_2 must vanish"));
                }
            }
            d.set_redhat("1", one_minus_g(&r, &m1, "1", 2));
            d.set_redhat("12", one_minus_g(&r, &m12, "12", 3));
            let (_, r112) = forced_serre_from_power(&d, "1", "2", SerreSide::Left).expect("N_1 = 2");
            let (_, r122) = forced_serre_from_power(&d, "1", "2", SerreSide::Right).expect("N_2 = 2");
            d.set_red("112", r112);
            d.set_red("122", r122);
            (d, Some(2 * 3 * 2 * 6), None)
        }
        "lifting_a2_4b" => {
            // g1 = g^3, g2 = g in Z/6; χ1(g) = ζ_6, χ2(g) = -1
            let mut d = bare(cyc(6)?, GroupSpec::cyclic(6), vec![vec![3], vec![1]], vec![vec![1], vec![3]], &["1", "12", "2"], &[Some(2), Some(3), Some(2)])?;
            let r = d.ring.clone();
            let (m2, m12) = (mu(&d, p, "2")?, mu(&d, p, "12")?);
            if let Some(s) = p.mu.get("1") {
                if !d.field().parse_literal(std::slice::from_ref(s))?.is_zero() {
                    return Err(constraint("case (4b) has x1^2 = 0, mu_1 must vanish"));
                }
            }
            d.set_redhat("2", one_minus_g(&r, &m2, "2", 2));
            d.set_redhat("12", one_minus_g(&r, &m12, "12", 3));
            let (_, r112) = forced_serre_from_power(&d, "1", "2", SerreSide::Left).expect("N_1 = 2");
            let (_, r122) = forced_serre_from_power(&d, "1", "2", SerreSide::Right).expect("N_2 = 2");
            d.set_red("112", r112);
            d.set_red("122", r122);
            (d, Some(2 * 3 * 2 * 6), None)
        }
        "b2_nichols" => {
            // g1 = g2 = g in Z/5; q11 = q21 = ζ, q12 = q22 = ζ²
            let d = bare(cyc(5)?, GroupSpec::cyclic(5), vec![vec![1], vec![1]], vec![vec![1], vec![2]], &["1", "112", "12", "2"], &[Some(5), Some(5), Some(5), Some(5)])?;
            (d, Some(5u64.pow(5)), None)
        }
        _ => return Err(PresetError::Unknown(name.to_string())),
    };
    Ok(Preset { name: name.to_string(), datum, dimension, hilbert })
}

/// redhat_12 of case (2b) in the closed form
/// −q12⁻¹(q11+1)⁻¹(2λ x2 − μ2(q21²−1)(1−q11q21²) x1² g2²).
pub fn a2_2b_redhat12(r: &Ring, l112: &Scalar, m2: &Scalar) -> Result<NCPoly, PresetError> {
    let (q11, q12, q21) = (r.q_word(&[1], &[1]), r.q_word(&[1], &[2]), r.q_word(&[2], &[1]));
    let one = r.one();
    let q21sq = &q21 * &q21;
    let qq = &(&q21sq - &one) * &(&one - &(&q11 * &q21sq));
    let pre = -(&q12.inv()? * &(&q11 + &one).inv()?);
    let x1 = r.xw("1");
    let g2sq = r.group.pow(&r.word_g(&[2]), 2);
    let x1sq_g = r.mul(&r.mul(&x1, &x1), &r.grp_poly(&g2sq));
    let inner = &r.xw("2").scale(&(&r.int(2) * l112)) - &x1sq_g.scale(&(m2 * &qq));
    Ok(inner.scale(&pre))
}

/// Every preset at its default parameters.
pub fn all_default() -> Vec<Preset> {
    NAMES.iter().map(|n| preset(n, &LiftParams::default()).expect("default parameters are admissible")).collect()
}
