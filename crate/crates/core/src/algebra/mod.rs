//! Arithmetic in the smash product k⟨X_L⟩ # k[Γ] in canonical form U·g,
//! with the bicharacter, gradings, q-commutators, super letter expansion
//! and the ∂ operator used by the bracket recursion.

mod datum;
mod poly;

pub use datum::{Datum, DatumError, DatumFile, FieldFile, GroupFile, Height, TermFile};
pub use poly::{Monomial, NCPoly};

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalars::{Field, Scalar};
use crate::words::{format_word, LSet, Letter, SuperWord, Word};

pub type GroupElement = Vec<i64>;
/// Character as exponents k_f: the value on the f-th group generator is ζ^{k_f}.
pub type Character = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("graded commutator: left argument {0} is not Γ-homogeneous")]
    NotGroupHomogeneous(String),
    #[error("graded commutator: right argument {0} is not character-homogeneous")]
    NotCharHomogeneous(String),
    #[error("missing redbr<{0},{1}>")]
    MissingRedbr(String, String),
    #[error("{0}")]
    Scalar(#[from] crate::scalars::ScalarError),
}

/// Finite cyclic factors Z/m_i followed by free Z factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl GroupSpec {
    pub fn cyclic(n: u64) -> Self {
        GroupSpec { torsion: vec![n], free_rank: 0 }
    }

    pub fn trivial() -> Self {
        GroupSpec { torsion: vec![], free_rank: 0 }
    }

    pub fn factors(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Modulus of a factor, 0 for a free factor.
    pub fn modulus(&self, f: usize) -> u64 {
        self.torsion.get(f).copied().unwrap_or(0)
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.factors()]
    }

    pub fn normalize(&self, g: &mut [i64]) {
        for (f, e) in g.iter_mut().enumerate() {
            let m = self.modulus(f);
            if m > 0 {
                *e = e.rem_euclid(m as i64);
            }
        }
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> GroupElement {
        let mut out: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&mut out);
        out
    }

    pub fn pow(&self, a: &[i64], n: i64) -> GroupElement {
        let mut out: Vec<i64> = a.iter().map(|x| x * n).collect();
        self.normalize(&mut out);
        out
    }

    pub fn is_identity(&self, a: &[i64]) -> bool {
        let mut a = a.to_vec();
        self.normalize(&mut a);
        a.iter().all(|x| *x == 0)
    }

    /// All elements of a finite group, in lexicographic exponent order.
    pub fn elements(&self) -> Vec<GroupElement> {
        assert!(self.is_finite(), "elements of an infinite group");
        let mut out = vec![vec![]];
        for m in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..*m as i64).map(move |e| {
                        let mut q = p.clone();
                        q.push(e);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// The ring k⟨X_L⟩ # k[Γ] with per-letter gradings precomputed.
#[derive(Clone, Debug)]
pub struct Ring {
    pub field: Field,
    pub group: GroupSpec,
    pub lset: LSet,
    theta: u8,
    zeta_m: u64,
    roots: Vec<Scalar>,
    letter_g: Vec<GroupElement>,
    letter_chi: Vec<Character>,
    // per L member
    len: Vec<u32>,
    g: Vec<GroupElement>,
    chi: Vec<Character>,
    qexp: Vec<Vec<i64>>,
}

impl Ring {
    /// `g` and `chi` are given per generator x_1..x_θ.
    pub fn new(field: Field, group: GroupSpec, g: Vec<GroupElement>, chi: Vec<Character>, lset: LSet) -> Ring {
        let theta = lset.theta();
        assert_eq!(g.len(), theta as usize, "one group element per generator");
        assert_eq!(chi.len(), theta as usize, "one character per generator");
        let zeta_m = field.zeta_order();
        let roots = (0..zeta_m as i64).map(|k| field.root(k)).collect();
        let nf = group.factors();
        let mut letter_g = g;
        for x in letter_g.iter_mut() {
            x.resize(nf, 0);
            group.normalize(x);
        }
        let letter_chi: Vec<Character> = chi
            .into_iter()
            .map(|mut c| {
                c.resize(nf, 0);
                c.iter().map(|k| k.rem_euclid(zeta_m as i64)).collect()
            })
            .collect();
        let mut r = Ring {
            field,
            group,
            lset: LSet::letters(theta),
            theta,
            zeta_m,
            roots,
            letter_g,
            letter_chi,
            len: vec![],
            g: vec![],
            chi: vec![],
            qexp: vec![],
        };
        r.set_lset(lset);
        r
    }

    fn set_lset(&mut self, lset: LSet) {
        self.len = lset.words().iter().map(|w| w.len() as u32).collect();
        self.g = lset.words().iter().map(|w| self.word_g(w)).collect();
        self.chi = lset.words().iter().map(|w| self.word_chi(w)).collect();
        self.qexp = (0..lset.len())
            .map(|a| (0..lset.len()).map(|b| self.pair_exp(&self.chi[b], &self.g[a])).collect())
            .collect();
        self.lset = lset;
    }

    /// The same gradings over the plain alphabet, L = {x_1..x_θ}.
    pub fn letter_ring(&self) -> Ring {
        let mut r = self.clone();
        r.set_lset(LSet::letters(self.theta));
        r
    }

    pub fn theta(&self) -> u8 {
        self.theta
    }

    pub fn zeta_order(&self) -> u64 {
        self.zeta_m
    }

    pub fn zeta(&self, k: i64) -> Scalar {
        self.roots[k.rem_euclid(self.zeta_m as i64) as usize].clone()
    }

    pub fn one(&self) -> Scalar {
        self.field.one()
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.field.from_int(n)
    }

    fn pair_exp(&self, chi: &[i64], g: &[i64]) -> i64 {
        chi.iter().zip(g).map(|(k, e)| k * e).sum::<i64>().rem_euclid(self.zeta_m as i64)
    }

    /// deg_Γ of a word over X.
    pub fn word_g(&self, w: &[Letter]) -> GroupElement {
        let mut out = self.group.identity();
        for l in w {
            for (o, e) in out.iter_mut().zip(&self.letter_g[*l as usize - 1]) {
                *o += e;
            }
        }
        self.group.normalize(&mut out);
        out
    }

    /// deg_Γ̂ of a word over X.
    pub fn word_chi(&self, w: &[Letter]) -> Character {
        let mut out = vec![0; self.group.factors()];
        for l in w {
            for (o, e) in out.iter_mut().zip(&self.letter_chi[*l as usize - 1]) {
                *o += e;
            }
        }
        out.iter().map(|k| k.rem_euclid(self.zeta_m as i64)).collect()
    }

    pub fn letter_g(&self, i: usize) -> &GroupElement {
        &self.letter_g[i]
    }

    pub fn letter_chi(&self, i: usize) -> &Character {
        &self.letter_chi[i]
    }

    pub fn g_of(&self, l: u16) -> &GroupElement {
        &self.g[l as usize]
    }

    pub fn chi_of(&self, l: u16) -> &Character {
        &self.chi[l as usize]
    }

    pub fn len_of(&self, l: u16) -> u32 {
        self.len[l as usize]
    }

    /// Exponent of χ(g).
    pub fn char_exp(&self, chi: &[i64], g: &[i64]) -> i64 {
        self.pair_exp(chi, g)
    }

    pub fn char_value(&self, chi: &[i64], g: &[i64]) -> Scalar {
        self.zeta(self.pair_exp(chi, g))
    }

    pub fn char_pow(&self, chi: &[i64], n: i64) -> Character {
        chi.iter().map(|k| (k * n).rem_euclid(self.zeta_m as i64)).collect()
    }

    pub fn char_mul(&self, a: &[i64], b: &[i64]) -> Character {
        a.iter().zip(b).map(|(x, y)| (x + y).rem_euclid(self.zeta_m as i64)).collect()
    }

    /// q_{u,v} for words over X, as an exponent of ζ.
    pub fn q_word_exp(&self, u: &[Letter], v: &[Letter]) -> i64 {
        self.pair_exp(&self.word_chi(v), &self.word_g(u))
    }

    /// q_{u,v} for words over X.
    pub fn q_word(&self, u: &[Letter], v: &[Letter]) -> Scalar {
        self.zeta(self.q_word_exp(u, v))
    }

    /// q_{a,b} for L members.
    pub fn q(&self, a: u16, b: u16) -> Scalar {
        self.zeta(self.qexp[a as usize][b as usize])
    }

    pub fn q_exp(&self, a: u16, b: u16) -> i64 {
        self.qexp[a as usize][b as usize]
    }

    /// q_{U,V} for super words.
    pub fn q_super(&self, u: &[u16], v: &[u16]) -> Scalar {
        let e: i64 = u.iter().flat_map(|a| v.iter().map(move |b| self.qexp[*a as usize][*b as usize])).sum();
        self.zeta(e)
    }

    /// Index of an L member given as a word over X.
    pub fn idx(&self, w: &[Letter]) -> u16 {
        self.lset.index(w).unwrap_or_else(|| panic!("{} is not in L", format_word(w)))
    }

    pub fn mono(&self, word: SuperWord, mut grp: GroupElement) -> Monomial {
        grp.resize(self.group.factors(), 0);
        self.group.normalize(&mut grp);
        let len = word.iter().map(|l| self.len[*l as usize]).sum();
        Monomial { len, word, grp }
    }

    pub fn x(&self, l: u16) -> NCPoly {
        NCPoly::term(self.mono(vec![l], self.group.identity()), self.one())
    }

    /// x_w for an L member w given in digit form, e.g. "12".
    pub fn xw(&self, w: &str) -> NCPoly {
        let w = crate::words::parse_word(w).expect("word literal");
        self.x(self.idx(&w))
    }

    pub fn word_poly(&self, sw: &[u16]) -> NCPoly {
        NCPoly::term(self.mono(sw.to_vec(), self.group.identity()), self.one())
    }

    pub fn grp_poly(&self, g: &[i64]) -> NCPoly {
        NCPoly::term(self.mono(vec![], g.to_vec()), self.one())
    }

    pub fn constant(&self, c: Scalar) -> NCPoly {
        NCPoly::term(self.mono(vec![], self.group.identity()), c)
    }

    pub fn one_poly(&self) -> NCPoly {
        self.constant(self.one())
    }

    /// χ_V(g) as an exponent, for the letters of V.
    fn word_char_exp(&self, v: &[u16], g: &[i64]) -> i64 {
        if g.iter().all(|e| *e == 0) {
            return 0;
        }
        v.iter().map(|l| self.pair_exp(&self.chi[*l as usize], g)).sum()
    }

    /// (U g)(V h) = χ_V(g)·(UV)(gh); the scalar is returned as an exponent.
    pub fn mul_mono(&self, a: &Monomial, b: &Monomial) -> (Monomial, i64) {
        let e = self.word_char_exp(&b.word, &a.grp);
        let mut word = Vec::with_capacity(a.word.len() + b.word.len());
        word.extend_from_slice(&a.word);
        word.extend_from_slice(&b.word);
        let grp = self.group.mul(&a.grp, &b.grp);
        (Monomial { len: a.len + b.len, word, grp }, e)
    }

    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let (m, e) = self.mul_mono(ma, mb);
                let mut c = ca * cb;
                if e.rem_euclid(self.zeta_m as i64) != 0 {
                    c = &c * &self.zeta(e);
                }
                out.add_term(m, &c);
            }
        }
        out
    }

    pub fn mul_all(&self, factors: &[&NCPoly]) -> NCPoly {
        let mut acc = self.one_poly();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn pow(&self, a: &NCPoly, n: u64) -> NCPoly {
        let mut acc = self.one_poly();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// [a,b]_q = ab − q·ba.
    pub fn q_commutator(&self, a: &NCPoly, b: &NCPoly, q: &Scalar) -> NCPoly {
        let mut out = self.mul(a, b);
        out -= &self.mul(b, a).scale(q);
        out
    }

    /// deg_Γ of a super word: the product of g_l over its letters.
    pub fn deg_group(&self, u: &[u16]) -> GroupElement {
        let mut out = self.group.identity();
        for l in u {
            for (o, e) in out.iter_mut().zip(&self.g[*l as usize]) {
                *o += e;
            }
        }
        self.group.normalize(&mut out);
        out
    }

    /// Γ̂-degree of a super word, counting letters only.
    pub fn deg_char(&self, u: &[u16]) -> Character {
        let mut out = vec![0; self.group.factors()];
        for l in u {
            for (o, e) in out.iter_mut().zip(&self.chi[*l as usize]) {
                *o += e;
            }
        }
        out.iter().map(|k| k.rem_euclid(self.zeta_m as i64)).collect()
    }

    /// The common Γ̂-degree of all terms, or `None` if mixed or zero.
    pub fn char_degree(&self, a: &NCPoly) -> Option<Character> {
        let mut it = a.iter().map(|(m, _)| self.deg_char(&m.word));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    pub fn is_char_homogeneous_of(&self, a: &NCPoly, chi: &[i64]) -> bool {
        a.iter().all(|(m, _)| self.deg_char(&m.word) == chi)
    }

    /// The common deg_group of all terms, or `None` if mixed or zero.
    pub fn group_degree(&self, a: &NCPoly) -> Option<GroupElement> {
        let mut it = a.iter().map(|(m, _)| self.deg_group(&m.word));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    /// [a,b] with q = χ_b(g_a).
    pub fn graded_commutator(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, AlgebraError> {
        if a.is_zero() || b.is_zero() {
            return Ok(NCPoly::zero());
        }
        let ga = self.group_degree(a).ok_or_else(|| AlgebraError::NotGroupHomogeneous(self.fmt(a)))?;
        let cb = self.char_degree(b).ok_or_else(|| AlgebraError::NotCharHomogeneous(self.fmt(b)))?;
        Ok(self.q_commutator(a, b, &self.char_value(&cb, &ga)))
    }

    /// Ordering of super words whose letters are arbitrary Lyndon words,
    /// comparing letters by their underlying words.
    pub fn super_lex(a: &[&Word], b: &[&Word]) -> Ordering {
        a.cmp(b)
    }

    /// a ≺_L W (strict) or a ⪯_L W, for W a super word over arbitrary
    /// Lyndon words.
    pub fn prec_l_check(&self, a: &NCPoly, w: &[&Word], strict: bool) -> bool {
        let wl: usize = w.iter().map(|x| x.len()).sum();
        a.iter().all(|(m, _)| {
            let ml = m.len as usize;
            if ml < wl {
                return true;
            }
            if ml > wl || !self.group.is_identity(&m.grp) {
                return false;
            }
            let u: Vec<&Word> = m.word.iter().map(|l| self.lset.word(*l)).collect();
            match Self::super_lex(&u, w) {
                Ordering::Greater => true,
                Ordering::Equal => !strict,
                Ordering::Less => false,
            }
        })
    }

    /// Expands an element of k⟨X_L⟩ # k[Γ] into k⟨X⟩ # k[Γ], replacing each
    /// super letter by its iterated q-commutator. `free` is the letter ring.
    pub fn expand(&self, free: &Ring, a: &NCPoly) -> NCPoly {
        let cache: Vec<NCPoly> = self.lset.words().iter().map(|w| expand_superletter(free, w)).collect();
        let mut out = NCPoly::zero();
        for (m, c) in a.iter() {
            let mut t = free.one_poly();
            for l in &m.word {
                t = free.mul(&t, &cache[*l as usize]);
            }
            t = free.mul(&t, &free.grp_poly(&m.grp));
            out += &t.scale(c);
        }
        out
    }

    pub fn fmt_mono(&self, m: &Monomial) -> String {
        let mut parts: Vec<String> = m.word.iter().map(|l| format!("x{}", format_word(self.lset.word(*l)))).collect();
        for (f, e) in m.grp.iter().enumerate() {
            if *e != 0 {
                let name = if self.group.factors() == 1 { "g".to_string() } else { format!("g{}", f + 1) };
                parts.push(if *e == 1 { name } else { format!("{}^{}", name, e) });
            }
        }
        parts.join("*")
    }

    /// Terms in decreasing ≺ order.
    pub fn fmt(&self, a: &NCPoly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in a.iter().rev().enumerate() {
            let mono = self.fmt_mono(m);
            let coeff = c.to_string();
            let (neg, body) = match (coeff.strip_prefix('-'), coeff.contains(' ')) {
                (Some(rest), false) => (true, rest.to_string()),
                (_, true) => (false, format!("({})", coeff)),
                (None, false) => (false, coeff.clone()),
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{} * {}", body, mono)
            };
            if i == 0 {
                out.push_str(&if neg { format!("-{}", term) } else { term });
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        out
    }
}

/// [u] over the plain alphabet: [x_i] = x_i and [u] = [[v],[w]] for
/// Sh(u) = (v|w). `free` must be a letter ring.
pub fn expand_superletter(free: &Ring, u: &[Letter]) -> NCPoly {
    if u.len() == 1 {
        return free.x(u[0] as u16 - 1);
    }
    let (v, w) = crate::words::shirshov_decompose(u).expect("length ≥ 2");
    let a = expand_superletter(free, &v);
    let b = expand_superletter(free, &w);
    free.q_commutator(&a, &b, &free.q_word(&v, &w))
}

/// ∂_{u1} applied to `a`, whose terms of full length ℓ(degword) and trivial
/// group part are the ρ(U) summands and whose other terms are the ρ(V)g
/// summands.
pub fn partial_delta<F>(ring: &Ring, u1: u16, a: &NCPoly, degword: &[Letter], redbr: F) -> Result<NCPoly, AlgebraError>
where
    F: Fn(u16, u16) -> Option<NCPoly>,
{
    let xu = ring.x(u1);
    let u1w = ring.lset.word(u1).clone();
    let twist = ring.q_word(&u1w, degword);
    let full = degword.len() as u32;
    let mut out = NCPoly::zero();
    for (m, c) in a.iter() {
        let piece = if m.len == full && ring.group.is_identity(&m.grp) && !m.word.is_empty() {
            let l1 = m.word[0];
            let rb = redbr(u1, l1).ok_or_else(|| {
                AlgebraError::MissingRedbr(format_word(&u1w), format_word(ring.lset.word(l1)))
            })?;
            let term = ring.word_poly(&m.word);
            let rest = ring.word_poly(&m.word[1..]);
            // the q-derivation expansion of the graded bracket, with the first
            // summand's [x_u1, x_l1] replaced by redbr<u1,l1>
            let mut p = ring.graded_commutator(&xu, &term)?;
            let first = ring.graded_commutator(&xu, &ring.x(l1))?;
            p += &ring.mul(&(&rb - &first), &rest);
            p
        } else {
            let v = ring.word_poly(&m.word);
            let q = &twist * &ring.char_value(ring.chi_of(u1), &m.grp);
            ring.mul(&ring.q_commutator(&xu, &v, &q), &ring.grp_poly(&m.grp))
        };
        out += &piece.scale(c);
    }
    Ok(out)
}

/// Sorted map keyed by words, used by the datum for reds and redhats.
pub type WordMap<T> = BTreeMap<Word, T>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn ring2() -> Ring {
        // Z/12, χ_1(g) = ζ, χ_2(g) = ζ^5
        let l = LSet::new(&[parse_word("1").unwrap(), parse_word("12").unwrap(), parse_word("2").unwrap()], 2).unwrap();
        Ring::new(Field::Cyclotomic(12), GroupSpec::cyclic(12), vec![vec![1], vec![2]], vec![vec![1], vec![5]], l)
    }

    #[test]
    fn q_examples() {
        let r = ring2();
        let w = |s: &str| parse_word(s).unwrap();
        assert_eq!(r.q_word(&w("1"), &w("2")), r.zeta(5));
        let q12 = r.q_word(&w("1"), &w("2"));
        let q22 = r.q_word(&w("2"), &w("2"));
        assert_eq!(r.q_word(&w("112"), &w("2")), &(&q12 * &q12) * &q22);
        assert!(r.q_word(&[], &w("2")).is_one());
    }

    #[test]
    fn mul_examples() {
        let r = ring2();
        let (x1, x2) = (r.xw("1"), r.xw("2"));
        let g = r.grp_poly(&[1]);
        let h = r.grp_poly(&[3]);
        let a = r.mul(&x1, &g);
        let b = r.mul(&x2, &h);
        let expect = r.mul(&r.mul(&x1, &x2), &r.grp_poly(&[4])).scale(&r.zeta(5));
        assert_eq!(r.mul(&a, &b), expect);
        assert_eq!(r.mul(&r.one_poly(), &a), a);
        let p = r.mul(&x2, &x1);
        assert_eq!(p.len(), 1);
        assert_eq!(p.iter().next().unwrap().0.word, vec![2, 0]);
    }

    #[test]
    fn commutator_examples() {
        let r = ring2();
        let (x1, x2) = (r.xw("1"), r.xw("2"));
        let c = r.graded_commutator(&x1, &x2).unwrap();
        let expect = &r.mul(&x1, &x2) - &r.mul(&x2, &x1).scale(&r.q(0, 2));
        assert_eq!(c, expect);
        assert!(r.q_commutator(&c, &c, &r.one()).is_zero());
        let mixed = &x1 + &x2;
        assert!(r.graded_commutator(&x1, &mixed).is_err());
        assert!(r.graded_commutator(&mixed, &x1).is_err());
    }

    #[test]
    fn expansion() {
        let r = ring2();
        let free = r.letter_ring();
        let w = |s: &str| parse_word(s).unwrap();
        let e = expand_superletter(&free, &w("12"));
        let (x1, x2) = (free.x(0), free.x(1));
        assert_eq!(e, &free.mul(&x1, &x2) - &free.mul(&x2, &x1).scale(&free.q_word(&w("1"), &w("2"))));
        let e3 = expand_superletter(&free, &w("112"));
        let manual = free.q_commutator(&x1, &e, &free.q_word(&w("1"), &w("12")));
        assert_eq!(e3, manual);
    }

    #[test]
    fn homogeneity() {
        let r = ring2();
        let m = r.mul(&r.mul(&r.xw("1"), &r.xw("2")), &r.grp_poly(&[3]));
        assert_eq!(r.char_degree(&m), Some(vec![6]));
        assert_eq!(r.char_degree(&(&r.xw("1") + &r.xw("2"))), None);
        let p = &r.one_poly() - &r.grp_poly(&[2]);
        assert_eq!(r.char_degree(&p), Some(vec![0]));
    }

    #[test]
    fn prec_l_examples() {
        let r = ring2();
        let w12 = parse_word("12").unwrap();
        let target = vec![&w12];
        let a = r.mul(&r.xw("2"), &r.grp_poly(&[1]));
        assert!(r.prec_l_check(&a, &target, true));
        let b = r.mul(&r.xw("2"), &r.xw("1"));
        assert!(r.prec_l_check(&b, &target, true));
        assert!(!r.prec_l_check(&r.xw("12"), &target, true));
        assert!(r.prec_l_check(&r.xw("12"), &target, false));
    }

    #[test]
    fn delta_examples() {
        let r = ring2();
        let x12 = r.xw("12");
        let rb = |u: u16, v: u16| if (u, v) == (0, 2) { Some(x12.clone()) } else { None };
        let w = |s: &str| parse_word(s).unwrap();
        let d = partial_delta(&r, 0, &r.xw("2"), &w("2"), rb).unwrap();
        assert_eq!(d, x12);
        // ∂_1(1·g) vanishes iff the twist is 1
        let g = r.grp_poly(&[0]);
        let d = partial_delta(&r, 0, &g, &w("2"), rb).unwrap();
        let c = &r.one() - &r.q_word(&w("1"), &w("2"));
        assert_eq!(d, r.xw("1").scale(&c));
        // two letters: redbr<1,2>·x2 + q12·x2·[x1,x2]
        let x2 = r.xw("2");
        let a = r.mul(&x2, &x2);
        let d = partial_delta(&r, 0, &a, &w("22"), rb).unwrap();
        let br = r.graded_commutator(&r.xw("1"), &x2).unwrap();
        let expect = &r.mul(&x12, &x2) + &r.mul(&x2, &br).scale(&r.q(0, 2));
        assert_eq!(d, expect);
        assert!(partial_delta(&r, 2, &r.xw("1"), &w("1"), rb).is_err());
    }
}
