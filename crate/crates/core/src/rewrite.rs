//! The rewriting system on k⟨X_L⟩ # k[Γ]: one rule x_u x_v → redbr⟨u,v⟩ +
//! q_{u,v} x_v x_u per pair u < v in L and one rule x_u^{N_u} → redhat_u per
//! finite height. Group elements are kept canonical (rightmost), so only the
//! x-rules are ever applied.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{Datum, Monomial, NCPoly, Ring};
use crate::criterion::RedbrTable;
use crate::scalars::Scalar;
use crate::words::{format_word, SuperWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rule {rule}: right-hand side term {term} is not below the left-hand side")]
    Incompatible { rule: String, term: String },
    #[error("missing redbr entry for rule {0}")]
    MissingRedbr(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Pair(u16, u16),
    Power(u16),
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub kind: RuleKind,
    pub lhs: SuperWord,
    pub rhs: NCPoly,
}

#[derive(Clone, Debug)]
pub struct RuleSystem {
    pub datum: Datum,
    pub redbr: RedbrTable,
    pairs: BTreeMap<(u16, u16), Rule>,
    powers: Vec<Option<Rule>>,
}

/// Outcome of a bounded reduction.
#[derive(Clone, Debug)]
pub struct Bounded {
    /// What is left: terms at or above the bound plus irreducible terms.
    pub residue: NCPoly,
    pub steps: usize,
}

impl RuleSystem {
    pub fn build(d: &Datum, redbr: &RedbrTable) -> Result<RuleSystem, RewriteError> {
        let r = &d.ring;
        let n = r.lset.len() as u16;
        let mut pairs = BTreeMap::new();
        for a in 0..n {
            for b in a + 1..n {
                let name = format!("x{} x{}", format_word(r.lset.word(a)), format_word(r.lset.word(b)));
                let rb = redbr.get(a, b).ok_or_else(|| RewriteError::MissingRedbr(name.clone()))?;
                let rhs = rb + &r.word_poly(&[b, a]).scale(&r.q(a, b));
                let rule = Rule { kind: RuleKind::Pair(a, b), lhs: vec![a, b], rhs };
                check_compatible(r, &rule, &name)?;
                pairs.insert((a, b), rule);
            }
        }
        let mut powers = vec![None; n as usize];
        for a in 0..n {
            if let Some(h) = d.height(a) {
                let w = r.lset.word(a).clone();
                let rhs = d.redhats.get(&w).cloned().unwrap_or_default();
                let rule = Rule { kind: RuleKind::Power(a), lhs: vec![a; h as usize], rhs };
                check_compatible(r, &rule, &format!("x{}^{}", format_word(&w), h))?;
                powers[a as usize] = Some(rule);
            }
        }
        Ok(RuleSystem { datum: d.clone(), redbr: redbr.clone(), pairs, powers })
    }

    pub fn ring(&self) -> &Ring {
        &self.datum.ring
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.powers.iter().flatten().chain(self.pairs.values())
    }

    pub fn rule(&self, k: RuleKind) -> Option<&Rule> {
        match k {
            RuleKind::Pair(a, b) => self.pairs.get(&(a, b)),
            RuleKind::Power(a) => self.powers[a as usize].as_ref(),
        }
    }

    /// Leftmost reducible site, Power tried before Pair at each position.
    pub fn find_site(&self, w: &[u16]) -> Option<(usize, &Rule)> {
        for i in 0..w.len() {
            if let Some(rule) = &self.powers[w[i] as usize] {
                let n = rule.lhs.len();
                if i + n <= w.len() && w[i..i + n].iter().all(|x| *x == w[i]) {
                    return Some((i, rule));
                }
            }
            if i + 1 < w.len() && w[i] < w[i + 1] {
                return Some((i, &self.pairs[&(w[i], w[i + 1])]));
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &[u16]) -> bool {
        self.find_site(w).is_none()
    }

    /// V·rhs·W·g for a monomial V·lhs·W·g, scaled by `c`.
    fn apply(&self, m: &Monomial, pos: usize, rule: &Rule, c: &Scalar, out: &mut NCPoly) {
        let r = self.ring();
        let v = &m.word[..pos];
        let w = &m.word[pos + rule.lhs.len()..];
        let wlen: u32 = w.iter().map(|l| r.len_of(*l)).sum();
        let vlen: u32 = v.iter().map(|l| r.len_of(*l)).sum();
        for (t, tc) in rule.rhs.iter() {
            let mut word = Vec::with_capacity(v.len() + t.word.len() + w.len());
            word.extend_from_slice(v);
            word.extend_from_slice(&t.word);
            word.extend_from_slice(w);
            let grp = r.group.mul(&t.grp, &m.grp);
            // moving the rhs group part past W picks up χ_W(h)
            let e: i64 = w.iter().map(|l| r.char_exp(r.chi_of(*l), &t.grp)).sum();
            let mut coeff = tc * c;
            if e.rem_euclid(r.zeta_order() as i64) != 0 {
                coeff = &coeff * &r.zeta(e);
            }
            out.add_term(Monomial { len: vlen + t.len + wlen, word, grp }, &coeff);
        }
    }

    /// Rewrites until no left-hand side occurs.
    pub fn normal_form(&self, a: &NCPoly) -> NCPoly {
        let mut work = a.clone();
        let mut done: Vec<(Monomial, Scalar)> = vec![];
        while let Some((m, c)) = work.pop_leading() {
            match self.find_site(&m.word) {
                None => done.push((m, c)),
                Some((pos, rule)) => self.apply(&m, pos, rule, &c, &mut work),
            }
        }
        // popped in decreasing order and every rewrite strictly lowers the
        // word, so no two collected terms share a monomial
        done.into_iter().collect()
    }

    /// Like [`normal_form`](Self::normal_form) but only monomials whose word is
    /// ≺ `bound` may be rewritten.
    pub fn reduce_bounded(&self, a: &NCPoly, bound: &[u16]) -> Bounded {
        let r = self.ring();
        let blen = r.lset.x_len(bound) as u32;
        let below = |m: &Monomial| m.len < blen || (m.len == blen && m.word.as_slice() > bound);
        let mut work = a.clone();
        let mut residue = NCPoly::zero();
        let mut steps = 0;
        while let Some((m, c)) = work.pop_leading() {
            if !below(&m) {
                residue.add_term(m, &c);
                continue;
            }
            match self.find_site(&m.word) {
                None => residue.add_term(m, &c),
                Some((pos, rule)) => {
                    steps += 1;
                    self.apply(&m, pos, rule, &c, &mut work)
                }
            }
        }
        Bounded { residue, steps }
    }

    /// Irreducible super words up to X-length `max_len`, in increasing ≺.
    pub fn pbw_words(&self, max_len: usize) -> Vec<SuperWord> {
        let r = self.ring();
        let n = r.lset.len() as u16;
        let mut out = vec![];
        // letters nonincreasing, runs below the heights
        fn go(rs: &RuleSystem, cur: &mut SuperWord, len: usize, max_len: usize, top: u16, out: &mut Vec<SuperWord>) {
            out.push(cur.clone());
            for l in (0..=top).rev() {
                let ll = rs.ring().len_of(l) as usize;
                if len + ll > max_len {
                    continue;
                }
                let run = cur.iter().rev().take_while(|x| **x == l).count();
                if let Some(h) = rs.datum.height(l) {
                    if run + 1 >= h as usize {
                        continue;
                    }
                }
                cur.push(l);
                go(rs, cur, len + ll, max_len, l, out);
                cur.pop();
            }
        }
        if n > 0 {
            go(self, &mut vec![], 0, max_len, n - 1, &mut out);
        } else {
            out.push(vec![]);
        }
        out.sort_by(|a, b| r.lset.x_len(a).cmp(&r.lset.x_len(b)).then_with(|| b.cmp(a)));
        out
    }

    /// Irreducible monomials U·g up to X-length `max_len` (or the maximal
    /// PBW length when all heights are finite), each with every g ∈ Γ.
    pub fn pbw_monomials(&self, max_len: Option<usize>) -> Vec<Monomial> {
        let r = self.ring();
        let len = max_len.or_else(|| self.max_pbw_len()).expect("unbounded enumeration needs max_len");
        let elems = r.group.elements();
        self.pbw_words(len)
            .into_iter()
            .flat_map(|w| elems.iter().map(move |g| r.mono(w.clone(), g.clone())).collect::<Vec<_>>())
            .collect()
    }

    /// Σ (N_u − 1)·ℓ(u), the X-length of the longest PBW word.
    pub fn max_pbw_len(&self) -> Option<usize> {
        let r = self.ring();
        (0..r.lset.len() as u16).map(|l| self.datum.height(l).map(|h| (h as usize - 1) * r.len_of(l) as usize)).sum()
    }

    /// (Π N_u)·|Γ|, or `None` when infinite.
    pub fn dimension(&self) -> Option<u64> {
        let g = self.ring().group.order()?;
        let p: Option<u64> = self.datum.heights.iter().copied().product();
        p.map(|p| p * g)
    }

    /// Number of irreducible words by X-length, degrees 0..=max_deg.
    pub fn hilbert(&self, max_deg: usize) -> Vec<u64> {
        let r = self.ring();
        let mut series = vec![0u64; max_deg + 1];
        series[0] = 1;
        for l in 0..r.lset.len() as u16 {
            let ll = r.len_of(l) as usize;
            let cap = self.datum.height(l).map(|h| h as usize - 1).unwrap_or(usize::MAX);
            let mut next = vec![0u64; max_deg + 1];
            for (d, c) in series.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let mut k = 0;
                while k <= cap && d + k * ll <= max_deg {
                    next[d + k * ll] += c;
                    k += 1;
                }
            }
            series = next;
        }
        series
    }
}

fn check_compatible(r: &Ring, rule: &Rule, name: &str) -> Result<(), RewriteError> {
    let lhs = r.mono(rule.lhs.clone(), r.group.identity());
    for (m, _) in rule.rhs.iter() {
        if m.prec_cmp(&lhs) != Ordering::Less {
            return Err(RewriteError::Incompatible { rule: name.to_string(), term: r.fmt_mono(m) });
        }
    }
    Ok(())
}

/// ≺ on canonical monomials, ignoring the group part.
pub fn prec_diamond_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.prec_cmp(b)
}
