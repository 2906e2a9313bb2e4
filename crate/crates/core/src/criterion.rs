//! The bracket table redbr⟨u,v⟩, the q-Jacobi and restricted q-Leibniz
//! elements, the PBW check in full and reduced form, and the toolkit that
//! derives relations forced by the others.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{partial_delta, AlgebraError, Datum, Monomial, NCPoly, Ring};
use crate::oracle::{expanded_relations, in_truncated_ideal, Echelon};
use crate::rewrite::{RewriteError, RuleSystem};
use crate::scalars::{q_number, Scalar};
use crate::words::{format_word, parse_word, shirshov_decompose, SuperWord, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriterionError {
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Rewrite(#[from] RewriteError),
    #[error("missing red_{0}")]
    MissingRed(String),
    #[error("{0} is not in L")]
    NotInL(String),
    #[error("height of {0} is {1:?}, need 2")]
    HeightNotTwo(String, Option<u64>),
    #[error("{0}")]
    Shape(String),
}

/// redbr⟨u,v⟩ for all u < v in L, keyed by L indices.
#[derive(Clone, Debug, Default)]
pub struct RedbrTable {
    map: BTreeMap<(u16, u16), NCPoly>,
}

impl RedbrTable {
    pub fn get(&self, a: u16, b: u16) -> Option<&NCPoly> {
        self.map.get(&(a, b))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u16, u16), &NCPoly)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn redbr_rec(d: &Datum, a: u16, b: u16, memo: &mut BTreeMap<(u16, u16), NCPoly>) -> Result<NCPoly, CriterionError> {
    if let Some(p) = memo.get(&(a, b)) {
        return Ok(p.clone());
    }
    let r = &d.ring;
    let u = r.lset.word(a).clone();
    let v = r.lset.word(b).clone();
    let mut w = u.clone();
    w.extend_from_slice(&v);
    let (s1, s2) = shirshov_decompose(&w).expect("length ≥ 2");
    let out = if s1 == u && s2 == v {
        match r.lset.index(&w) {
            Some(i) => r.x(i),
            None => d.reds.get(&w).cloned().ok_or_else(|| CriterionError::MissingRed(format_word(&w)))?,
        }
    } else {
        let (u1, u2) = shirshov_decompose(&u).map_err(|_| CriterionError::Shape(format!("cannot split {}", format_word(&u))))?;
        let i1 = r.lset.index(&u1).ok_or_else(|| CriterionError::NotInL(format_word(&u1)))?;
        let i2 = r.lset.index(&u2).ok_or_else(|| CriterionError::NotInL(format_word(&u2)))?;
        if i2 >= b {
            return Err(CriterionError::Shape(format!("redbr<{},{}> needs {} < {}", format_word(&u), format_word(&v), format_word(&u2), format_word(&v))));
        }
        let inner = redbr_rec(d, i2, b, memo)?;
        let mut degword = u2.clone();
        degword.extend_from_slice(&v);
        // entries ∂ will look up
        for (m, _) in inner.iter() {
            if let Some(&l1) = m.word.first() {
                if l1 > i1 {
                    redbr_rec(d, i1, l1, memo)?;
                }
            }
        }
        let table = &*memo;
        let delta = partial_delta(r, i1, &inner, &degword, |x, y| table.get(&(x, y)).cloned())?;
        let rb1 = redbr_rec(d, i1, b, memo)?;
        let x2 = r.x(i2);
        let mut p = delta;
        p += &r.mul(&rb1, &x2).scale(&r.q(i2, b));
        p -= &r.mul(&x2, &rb1).scale(&r.q(i1, i2));
        p
    };
    memo.insert((a, b), out.clone());
    Ok(out)
}

/// All redbr⟨u,v⟩, u < v ∈ L.
pub fn redbr_table(d: &Datum) -> Result<RedbrTable, CriterionError> {
    let n = d.ring.lset.len() as u16;
    let mut memo = BTreeMap::new();
    // increasing ℓ(u)
    let mut order: Vec<(u16, u16)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    order.sort_by_key(|(a, _)| d.ring.len_of(*a));
    for (a, b) in order {
        redbr_rec(d, a, b, &mut memo)?;
    }
    Ok(RedbrTable { map: memo })
}

/// Builds the redbr table and the rule system in one go.
pub fn rule_system(d: &Datum) -> Result<RuleSystem, CriterionError> {
    let rt = redbr_table(d)?;
    Ok(RuleSystem::build(d, &rt)?)
}

fn rb(rt: &RedbrTable, a: u16, b: u16) -> NCPoly {
    rt.get(a, b).cloned().unwrap_or_else(|| panic!("redbr<{},{}> missing", a, b))
}

/// J(u<v<w).
pub fn jacobi_element(d: &Datum, rt: &RedbrTable, a: u16, b: u16, c: u16) -> Result<NCPoly, CriterionError> {
    let r = &d.ring;
    let (xa, xb, xc) = (r.x(a), r.x(b), r.x(c));
    let q_uv_w = &r.q(a, c) * &r.q(b, c);
    let q_u_vw = &r.q(a, b) * &r.q(a, c);
    let xac = r.graded_commutator(&xa, &xc)?;
    let mut p = r.q_commutator(&rb(rt, a, b), &xc, &q_uv_w);
    p -= &r.q_commutator(&xa, &rb(rt, b, c), &q_u_vw);
    p += &r.mul(&xb, &xac).scale(&r.q(a, b));
    p -= &r.mul(&xac, &xb).scale(&r.q(b, c));
    Ok(p)
}

fn height(d: &Datum, a: u16) -> Result<u64, CriterionError> {
    d.height(a).ok_or_else(|| CriterionError::Shape(format!("{} has infinite height", format_word(d.ring.lset.word(a)))))
}

fn redhat(d: &Datum, a: u16) -> NCPoly {
    d.redhats.get(d.ring.lset.word(a)).cloned().unwrap_or_default()
}

/// L(u,u<v): N_u − 1 right-nested brackets with x_u around redbr⟨u,v⟩,
/// minus [redhat_u, x_v]_{q_{u,v}^{N_u}}.
pub fn leibniz_le(d: &Datum, rt: &RedbrTable, a: u16, b: u16) -> Result<NCPoly, CriterionError> {
    let r = &d.ring;
    let n = height(d, a)?;
    let xa = r.x(a);
    let mut cur = rb(rt, a, b);
    for i in 1..n {
        let q = &r.zeta(r.q_exp(a, a) * i as i64) * &r.q(a, b);
        cur = r.q_commutator(&xa, &cur, &q);
    }
    let qn = r.zeta(r.q_exp(a, b) * n as i64);
    cur -= &r.q_commutator(&redhat(d, a), &r.x(b), &qn);
    Ok(cur)
}

/// L(u) = −[redhat_u, x_u]_1.
pub fn leibniz_self(d: &Datum, a: u16) -> Result<NCPoly, CriterionError> {
    let r = &d.ring;
    height(d, a)?;
    Ok(-r.q_commutator(&redhat(d, a), &r.x(a), &r.one()))
}

/// L(u,v<u): N_u − 1 left-nested brackets of redbr⟨v,u⟩ with x_u, minus
/// [x_v, redhat_u]_{q_{v,u}^{N_u}}.
pub fn leibniz_gt(d: &Datum, rt: &RedbrTable, a: u16, b: u16) -> Result<NCPoly, CriterionError> {
    let r = &d.ring;
    let n = height(d, a)?;
    let xa = r.x(a);
    let mut cur = rb(rt, b, a);
    for i in 1..n {
        let q = &r.q(b, a) * &r.zeta(r.q_exp(a, a) * i as i64);
        cur = r.q_commutator(&cur, &xa, &q);
    }
    let qn = r.zeta(r.q_exp(b, a) * n as i64);
    cur -= &r.q_commutator(&r.x(b), &redhat(d, a), &qn);
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConditionId {
    Jacobi(u16, u16, u16),
    /// L(u,u<v) as (u, v).
    LeibnizLE(u16, u16),
    LeibnizSelf(u16),
    /// L(u,v<u) as (u, v).
    LeibnizGT(u16, u16),
}

impl ConditionId {
    /// The super word whose ≺-predecessors bound the condition.
    pub fn bound(&self, d: &Datum) -> SuperWord {
        match *self {
            ConditionId::Jacobi(a, b, c) => vec![a, b, c],
            ConditionId::LeibnizLE(a, b) => {
                let mut w = vec![a; d.height(a).unwrap() as usize];
                w.push(b);
                w
            }
            ConditionId::LeibnizSelf(a) => vec![a; d.height(a).unwrap() as usize + 1],
            ConditionId::LeibnizGT(a, b) => {
                let mut w = vec![b];
                w.extend(vec![a; d.height(a).unwrap() as usize]);
                w
            }
        }
    }

    pub fn element(&self, d: &Datum, rt: &RedbrTable) -> Result<NCPoly, CriterionError> {
        match *self {
            ConditionId::Jacobi(a, b, c) => jacobi_element(d, rt, a, b, c),
            ConditionId::LeibnizLE(a, b) => leibniz_le(d, rt, a, b),
            ConditionId::LeibnizSelf(a) => leibniz_self(d, a),
            ConditionId::LeibnizGT(a, b) => leibniz_gt(d, rt, a, b),
        }
    }

    pub fn label(&self, d: &Datum) -> String {
        let w = |i: u16| format_word(d.ring.lset.word(i));
        match *self {
            ConditionId::Jacobi(a, b, c) => format!("J({}<{}<{})", w(a), w(b), w(c)),
            ConditionId::LeibnizLE(a, b) => format!("L({},{}<{})", w(a), w(a), w(b)),
            ConditionId::LeibnizSelf(a) => format!("L({})", w(a)),
            ConditionId::LeibnizGT(a, b) => format!("L({},{}<{})", w(a), w(b), w(a)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every q-Jacobi and restricted q-Leibniz condition.
    Full,
    /// Only the conditions that are not implied by the others.
    Reduced,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Reduced => "reduced",
        })
    }
}

/// The conditions to check, in a fixed order.
pub fn conditions(d: &Datum, mode: Mode) -> Vec<ConditionId> {
    let l = &d.ring.lset;
    let n = l.len() as u16;
    let concat = |a: u16, b: u16| -> Word {
        let mut w = l.word(a).clone();
        w.extend_from_slice(l.word(b));
        w
    };
    // uv ∈ L with Sh(uv) = (u|v)
    let sh_in_l = |a: u16, b: u16| {
        let w = concat(a, b);
        l.contains(&w) && shirshov_decompose(&w).map(|(x, y)| &x == l.word(a) && &y == l.word(b)).unwrap_or(false)
    };
    let mut out = vec![];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if mode == Mode::Full || !sh_in_l(a, b) {
                    out.push(ConditionId::Jacobi(a, b, c));
                }
            }
        }
    }
    for a in 0..n {
        if d.height(a).is_none() {
            continue;
        }
        out.push(ConditionId::LeibnizSelf(a));
        for b in 0..n {
            let vw = l.word(b);
            let uw = l.word(a);
            if b > a {
                // skip v = u·v′ with v′ ∈ L
                let skip = mode == Mode::Reduced && vw.len() > uw.len() && vw.starts_with(uw) && l.contains(&vw[uw.len()..]);
                if !skip {
                    out.push(ConditionId::LeibnizLE(a, b));
                }
            } else if b < a {
                // skip v = v′·u with v′ ∈ L
                let skip = mode == Mode::Reduced && vw.len() > uw.len() && vw.ends_with(uw) && l.contains(&vw[..vw.len() - uw.len()]);
                if !skip {
                    out.push(ConditionId::LeibnizGT(a, b));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub id: ConditionId,
    pub label: String,
    pub pass: bool,
    pub element: NCPoly,
    /// What bounded reduction left over.
    pub residue: NCPoly,
    pub fallback: bool,
    /// The span test hit its size cap; the verdict is then fail.
    pub capped: bool,
}

#[derive(Clone, Debug)]
pub struct PBWReport {
    pub mode: Mode,
    pub conditions: Vec<ConditionReport>,
    pub pass: bool,
}

/// Knobs for the span fallback.
#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub fallback: bool,
    pub cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { fallback: true, cap: 400_000 }
    }
}

/// Exact test of a ∈ I_{≺bound}: elimination over every V·(lhs − rhs)·W·h
/// with V·lhs·W ≺ bound. `None` when the cap is hit.
pub fn span_member(rs: &RuleSystem, a: &NCPoly, bound: &[u16], cap: usize) -> Option<bool> {
    let r = rs.ring();
    if a.is_zero() {
        return Some(true);
    }
    let blen = r.lset.x_len(bound) as u32;
    let bmono = r.mono(bound.to_vec(), r.group.identity());
    if a.iter().any(|(m, _)| m.prec_cmp(&bmono) != std::cmp::Ordering::Less) {
        return Some(false);
    }
    let groups = group_candidates(rs, a);
    let blocks: BTreeMap<Vec<i64>, NCPoly> = {
        let mut out: BTreeMap<Vec<i64>, NCPoly> = BTreeMap::new();
        for (m, c) in a.iter() {
            out.entry(r.deg_char(&m.word)).or_default().add_term(m.clone(), c);
        }
        out
    };
    let words = super_words_up_to(r, blen as usize);
    let mut count = 0;
    for (chi, part) in blocks {
        let mut ech = Echelon::new();
        for w in words.iter().filter(|w| r.deg_char(w) == chi) {
            let m0 = r.mono(w.clone(), r.group.identity());
            if m0.prec_cmp(&bmono) != std::cmp::Ordering::Less {
                continue;
            }
            for (pos, rule) in sites(rs, w) {
                let base = site_element(rs, w, pos, rule);
                for h in &groups {
                    count += 1;
                    if count > cap {
                        return None;
                    }
                    let shifted: NCPoly = base.iter().map(|(m, c)| (r.mono(m.word.clone(), r.group.mul(&m.grp, h)), c.clone())).collect();
                    ech.insert(&shifted);
                }
            }
        }
        if !ech.contains(&part) {
            return Some(false);
        }
    }
    Some(true)
}

fn group_candidates(rs: &RuleSystem, a: &NCPoly) -> Vec<Vec<i64>> {
    let r = rs.ring();
    if r.group.is_finite() {
        return r.group.elements();
    }
    let shifts: BTreeSet<Vec<i64>> = rs.rules().flat_map(|ru| ru.rhs.iter().map(|(m, _)| m.grp.clone())).collect();
    let mut set: BTreeSet<Vec<i64>> = a.iter().map(|(m, _)| m.grp.clone()).collect();
    set.insert(r.group.identity());
    for _ in 0..2 {
        let cur: Vec<Vec<i64>> = set.iter().cloned().collect();
        for h in &cur {
            for s in &shifts {
                set.insert(r.group.mul(h, s));
                set.insert(r.group.mul(h, &r.group.pow(s, -1)));
            }
        }
    }
    set.into_iter().collect()
}

/// Super words of X-length ≤ max.
pub fn super_words_up_to(r: &Ring, max: usize) -> Vec<SuperWord> {
    let mut out = vec![];
    fn go(r: &Ring, cur: &mut SuperWord, len: usize, max: usize, out: &mut Vec<SuperWord>) {
        out.push(cur.clone());
        for l in 0..r.lset.len() as u16 {
            let ll = r.len_of(l) as usize;
            if len + ll <= max {
                cur.push(l);
                go(r, cur, len + ll, max, out);
                cur.pop();
            }
        }
    }
    go(r, &mut vec![], 0, max, &mut out);
    out
}

/// Every rule occurrence in a word, not only the leftmost.
fn sites<'a>(rs: &'a RuleSystem, w: &[u16]) -> Vec<(usize, &'a crate::rewrite::Rule)> {
    let mut out = vec![];
    for i in 0..w.len() {
        if let Some(rule) = rs.rule(crate::rewrite::RuleKind::Power(w[i])) {
            let n = rule.lhs.len();
            if i + n <= w.len() && w[i..i + n].iter().all(|x| *x == w[i]) {
                out.push((i, rule));
            }
        }
        if i + 1 < w.len() && w[i] < w[i + 1] {
            if let Some(rule) = rs.rule(crate::rewrite::RuleKind::Pair(w[i], w[i + 1])) {
                out.push((i, rule));
            }
        }
    }
    out
}

/// V·(lhs − rhs)·W for the site at `pos`.
fn site_element(rs: &RuleSystem, w: &[u16], pos: usize, rule: &crate::rewrite::Rule) -> NCPoly {
    let r = rs.ring();
    let v = r.word_poly(&w[..pos]);
    let wp = r.word_poly(&w[pos + rule.lhs.len()..]);
    let diff = &r.word_poly(&rule.lhs) - &rule.rhs;
    r.mul(&r.mul(&v, &diff), &wp)
}

/// Runs one condition.
pub fn check_condition(rs: &RuleSystem, id: ConditionId, opts: CheckOptions) -> Result<ConditionReport, CriterionError> {
    let d = &rs.datum;
    let element = id.element(d, &rs.redbr)?;
    let bound = id.bound(d);
    let red = rs.reduce_bounded(&element, &bound);
    let mut pass = red.residue.is_zero();
    let mut fallback = false;
    let mut capped = false;
    if !pass && opts.fallback {
        fallback = true;
        match span_member(rs, &red.residue, &bound, opts.cap) {
            Some(b) => pass = b,
            None => capped = true,
        }
    }
    Ok(ConditionReport { id, label: id.label(d), pass, element, residue: red.residue, fallback, capped })
}

pub fn check_pbw_with(d: &Datum, mode: Mode, opts: CheckOptions) -> Result<PBWReport, CriterionError> {
    let rs = rule_system(d)?;
    check_rules(&rs, mode, opts)
}

pub fn check_rules(rs: &RuleSystem, mode: Mode, opts: CheckOptions) -> Result<PBWReport, CriterionError> {
    let conds = conditions(&rs.datum, mode)
        .into_iter()
        .map(|id| check_condition(rs, id, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = conds.iter().all(|c| c.pass);
    Ok(PBWReport { mode, conditions: conds, pass })
}

pub fn check_pbw(d: &Datum, mode: Mode) -> Result<PBWReport, CriterionError> {
    check_pbw_with(d, mode, CheckOptions::default())
}

#[derive(Serialize)]
struct ConditionJson<'a> {
    id: &'a str,
    status: &'a str,
    residue_terms: usize,
    fallback: bool,
    capped: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    mode: Mode,
    verdict: &'a str,
    dimension: Option<u64>,
    conditions: Vec<ConditionJson<'a>>,
}

impl PBWReport {
    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionReport> {
        self.conditions.iter().filter(|c| !c.pass)
    }

    pub fn to_text(&self, ring: &Ring, dimension: Option<u64>) -> String {
        let mut out = String::new();
        for c in &self.conditions {
            let status = if c.pass { "ok" } else { "FAIL" };
            let how = if c.fallback { " (span test)" } else { "" };
            out.push_str(&format!("{:<20} {}{}\n", c.label, status, how));
            if !c.pass {
                out.push_str(&format!("    residue: {}\n", ring.fmt(&c.residue)));
            }
        }
        match (self.pass, dimension) {
            (true, Some(n)) => out.push_str(&format!("PASS, dim {}\n", n)),
            (true, None) => out.push_str("PASS, dim infinite\n"),
            (false, _) => out.push_str(&format!("FAIL, {} condition(s) violated\n", self.failures().count())),
        }
        out
    }

    pub fn to_json(&self, dimension: Option<u64>) -> String {
        let j = ReportJson {
            mode: self.mode,
            verdict: self.verdict(),
            dimension: if self.pass { dimension } else { None },
            conditions: self
                .conditions
                .iter()
                .map(|c| ConditionJson {
                    id: &c.label,
                    status: if c.pass { "pass" } else { "fail" },
                    residue_terms: if c.pass { 0 } else { c.residue.len() },
                    fallback: c.fallback,
                    capped: c.capped,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("report serializes")
    }
}

/// Which Serre word a height-2 power relation forces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SerreSide {
    /// red_{uuv} = [redhat_u, x_v]_{q_{u,v}²}, needs N_u = 2.
    Left,
    /// red_{uvv} = [x_u, redhat_v]_{q_{u,v}²}, needs N_v = 2.
    Right,
}

/// The right-hand side of the Serre word forced by x_u² or x_v².
/// Returns the word and the forced value.
pub fn forced_serre_from_power(d: &Datum, u: &str, v: &str, side: SerreSide) -> Result<(Word, NCPoly), CriterionError> {
    let r = &d.ring;
    let uw = parse_word(u).map_err(|e| CriterionError::Shape(e.to_string()))?;
    let vw = parse_word(v).map_err(|e| CriterionError::Shape(e.to_string()))?;
    let a = r.lset.index(&uw).ok_or_else(|| CriterionError::NotInL(u.into()))?;
    let b = r.lset.index(&vw).ok_or_else(|| CriterionError::NotInL(v.into()))?;
    let q2 = r.zeta(2 * r.q_exp(a, b));
    let (word, key) = match side {
        SerreSide::Left => ([uw.clone(), uw.clone(), vw.clone()].concat(), a),
        SerreSide::Right => ([uw.clone(), vw.clone(), vw.clone()].concat(), b),
    };
    let h = d.height(key);
    if h != Some(2) {
        return Err(CriterionError::HeightNotTwo(format_word(r.lset.word(key)), h));
    }
    let rh = redhat(d, key);
    let p = match side {
        SerreSide::Left => r.q_commutator(&rh, &r.x(b), &q2),
        SerreSide::Right => r.q_commutator(&r.x(a), &rh, &q2),
    };
    Ok((word, p))
}

/// Which closed-form Jacobi identity to solve for a power or word relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForcedLevel {
    /// redhat_12 from J(1<12<2) with L = {1,12,2}.
    Rank2Twelve,
    /// red_11212 from J(1<112<2) with L = {1,112,12,2}.
    B2Word11212,
    /// redhat_112 from J(1<112<12).
    B2Power112,
    /// redhat_12 from J(112<12<2).
    B2Power12,
}

impl ForcedLevel {
    pub fn parse(s: &str) -> Option<ForcedLevel> {
        match s {
            "rank2-12" => Some(ForcedLevel::Rank2Twelve),
            "b2-11212" => Some(ForcedLevel::B2Word11212),
            "b2-112" => Some(ForcedLevel::B2Power112),
            "b2-12" => Some(ForcedLevel::B2Power12),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ForcedLevel::Rank2Twelve => "rank2-12",
            ForcedLevel::B2Word11212 => "b2-11212",
            ForcedLevel::B2Power112 => "b2-112",
            ForcedLevel::B2Power12 => "b2-12",
        }
    }

    /// The relation this level replaces.
    pub fn target(&self) -> &'static str {
        match self {
            ForcedLevel::Rank2Twelve => "redhat_12",
            ForcedLevel::B2Word11212 => "red_11212",
            ForcedLevel::B2Power112 => "redhat_112",
            ForcedLevel::B2Power12 => "redhat_12",
        }
    }
}

/// Generator values q_ij = χ_j(g_i).
fn qij(r: &Ring, i: u8, j: u8) -> Scalar {
    r.q_word(&[i], &[j])
}

/// The leading coefficients of the B2 Jacobi conditions.
pub struct B2Coefficients {
    pub q: Scalar,
    pub q1: Scalar,
    pub q2: Scalar,
    pub q3: Scalar,
}

pub fn b2_coefficients(r: &Ring) -> B2Coefficients {
    let (q11, q12, q21, q22) = (qij(r, 1, 1), qij(r, 1, 2), qij(r, 2, 1), qij(r, 2, 2));
    let one = r.one();
    let q = &q12 * &(&q_number(3, &q11) - &q_number(2, &q22));
    let q1212 = r.q_word(&[1, 2], &[1, 2]);
    let q11_4 = q11.pow(4).unwrap();
    let a = &q22 * &(&(&(&q11_4 * &q12) * &q21) - &one);
    let b = &(&q11 * &(&q22 - &q11)) * &(&q1212 + &one);
    let q1 = &(&q12 * &q12) * &(&a - &b);
    let q11_2 = &q11 * &q11;
    let q2 = &(&q11_2 * &q12) * &(&one - &(&(&q12 * &q21) * &q22));
    let q3 = &(&(&(&q12 * &q12) * &q22) * &(&q22 - &q11)) * &(&(&(&q11_2 * &q12) * &q21) - &one);
    B2Coefficients { q, q1, q2, q3 }
}

/// The alternate closed form of q′ via q, for cross-checking.
pub fn b2_q1_alternate(r: &Ring) -> Scalar {
    let (q11, q12, q21, q22) = (qij(r, 1, 1), qij(r, 1, 2), qij(r, 2, 1), qij(r, 2, 2));
    let c = b2_coefficients(r);
    let inner = &r.one() + &(&(&(&(&q11 * &q11) * &q12) * &q21) * &q22);
    let t = &(&c.q * &inner) - &(&(&q11 * &q12) * &q_number(2, &q22));
    &q12 * &t
}

fn red_of(d: &Datum, w: &str) -> Result<NCPoly, CriterionError> {
    d.reds.get(&parse_word(w).unwrap()).cloned().ok_or_else(|| CriterionError::MissingRed(w.into()))
}

fn idx(d: &Datum, w: &str) -> Result<u16, CriterionError> {
    d.ring.lset.index(&parse_word(w).unwrap()).ok_or_else(|| CriterionError::NotInL(w.into()))
}

/// ∂_1(red_122) with the degree word 122.
fn delta1_red122(d: &Datum, rt: &RedbrTable) -> Result<NCPoly, CriterionError> {
    let r = &d.ring;
    let red = red_of(d, "122")?;
    Ok(partial_delta(r, idx(d, "1")?, &red, &[1, 2, 2], |a, b| rt.get(a, b).cloned())?)
}

/// Solves the named Jacobi condition for the replaced relation. Returns the
/// leading coefficient and the forced right-hand side, or `None` when the
/// coefficient vanishes.
pub fn forced_power_from_jacobi(d: &Datum, rt: &RedbrTable, level: ForcedLevel) -> Result<Option<(Scalar, NCPoly)>, CriterionError> {
    let r = &d.ring;
    let w = |s: &str| parse_word(s).unwrap();
    let (coeff, body) = match level {
        ForcedLevel::Rank2Twelve => {
            let c = &r.q_word(&w("1"), &w("12")) - &r.q_word(&w("12"), &w("2"));
            let (x1, x2) = (r.x(idx(d, "1")?), r.x(idx(d, "2")?));
            let mut p = r.q_commutator(&red_of(d, "112")?, &x2, &r.q_word(&w("112"), &w("2")));
            p -= &r.q_commutator(&x1, &red_of(d, "122")?, &r.q_word(&w("1"), &w("122")));
            (c, p)
        }
        ForcedLevel::B2Word11212 => {
            let k = b2_coefficients(r);
            let (x1, x2) = (r.x(idx(d, "1")?), r.x(idx(d, "2")?));
            let (x12, x112) = (r.x(idx(d, "12")?), r.x(idx(d, "112")?));
            let mut p = r.q_commutator(&red_of(d, "1112")?, &x2, &r.q_word(&w("1112"), &w("2")));
            p -= &r.q_commutator(&x1, &delta1_red122(d, rt)?, &r.q_word(&w("1"), &w("1122")));
            p += &r.mul(&x12, &x112).scale(&k.q1);
            (k.q, p)
        }
        ForcedLevel::B2Power112 => {
            let k = b2_coefficients(r);
            let (x1, x12) = (r.x(idx(d, "1")?), r.x(idx(d, "12")?));
            let mut p = r.q_commutator(&red_of(d, "1112")?, &x12, &r.q_word(&w("1112"), &w("12")));
            p -= &r.q_commutator(&x1, &red_of(d, "11212")?, &r.q_word(&w("1"), &w("11212")));
            (k.q2, p)
        }
        ForcedLevel::B2Power12 => {
            let k = b2_coefficients(r);
            let (x2, x12, x112) = (r.x(idx(d, "2")?), r.x(idx(d, "12")?), r.x(idx(d, "112")?));
            let d1 = delta1_red122(d, rt)?;
            let mut p = r.q_commutator(&red_of(d, "11212")?, &x2, &r.q_word(&w("11212"), &w("2")));
            p -= &r.q_commutator(&x112, &red_of(d, "122")?, &r.q_word(&w("112"), &w("122")));
            p += &r.mul(&x12, &d1).scale(&r.q_word(&w("112"), &w("12")));
            p -= &r.mul(&d1, &x12).scale(&r.q_word(&w("12"), &w("2")));
            (k.q3, p)
        }
    };
    if coeff.is_zero() {
        return Ok(None);
    }
    let inv = coeff.inv().expect("nonzero");
    Ok(Some((coeff, body.scale(&-inv))))
}

/// A relation that the closed forms or the truncated ideal test show to be
/// implied by the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redundancy {
    pub relation: String,
    pub reason: String,
}

/// Closed-form matches: a stored relation equal to the value forced by a
/// height-2 power or by a Jacobi identity.
pub fn closed_form_redundancies(d: &Datum) -> Result<Vec<Redundancy>, CriterionError> {
    let r = &d.ring;
    let rt = redbr_table(d)?;
    let mut out = vec![];
    let words: Vec<Word> = r.lset.words().to_vec();
    for u in &words {
        for v in &words {
            if u >= v {
                continue;
            }
            for side in [SerreSide::Left, SerreSide::Right] {
                let (us, vs) = (format_word(u), format_word(v));
                if let Ok((w, p)) = forced_serre_from_power(d, &us, &vs, side) {
                    if d.reds.get(&w) == Some(&p) {
                        let by = if side == SerreSide::Left { &us } else { &vs };
                        out.push(Redundancy { relation: format!("red_{}", format_word(&w)), reason: format!("forced by x{}^2", by) });
                    }
                }
            }
        }
    }
    let lw: Vec<String> = words.iter().map(|w| format_word(w)).collect();
    let levels: Vec<ForcedLevel> = if lw == ["1", "12", "2"] {
        vec![ForcedLevel::Rank2Twelve]
    } else if lw == ["1", "112", "12", "2"] {
        vec![ForcedLevel::B2Word11212, ForcedLevel::B2Power112, ForcedLevel::B2Power12]
    } else {
        vec![]
    };
    for level in levels {
        let Ok(Some((_, p))) = forced_power_from_jacobi(d, &rt, level) else { continue };
        let (kind, w) = level.target().split_once('_').unwrap();
        let stored = if kind == "red" { d.reds.get(&parse_word(w).unwrap()) } else { d.redhats.get(&parse_word(w).unwrap()) };
        if stored == Some(&p) {
            out.push(Redundancy { relation: level.target().to_string(), reason: format!("forced by the q-Jacobi identity ({})", level.name()) });
        }
    }
    Ok(out)
}

/// Generic test: drop one relation and look for it in the ideal of the rest,
/// truncated at X-length ℓ(relation) + slack.
pub fn generic_redundancies(d: &Datum, slack: usize, cap: usize) -> Vec<Redundancy> {
    let free = d.ring.letter_ring();
    let mut out = vec![];
    for (name, rel) in expanded_relations(d, &free) {
        let n = rel.max_len().unwrap_or(0) as usize + slack;
        if let Ok(true) = in_truncated_ideal(d, &rel, &name, n, cap) {
            out.push(Redundancy { relation: name, reason: format!("in the ideal of the others up to length {}", n) });
        }
    }
    out
}

/// Convenience for tests and the CLI: leading monomial of a nonzero element.
pub fn leading(p: &NCPoly) -> Option<&Monomial> {
    p.leading().map(|(m, _)| m)
}
