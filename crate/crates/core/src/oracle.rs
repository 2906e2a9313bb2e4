//! Linear algebra that does not use the rewriting system: Gaussian
//! elimination on spans of ideal elements, the truncated quotient rank of a
//! datum computed in the free algebra k⟨X⟩ # k[Γ], and span membership.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::algebra::{expand_superletter, Datum, GroupElement, Monomial, NCPoly, Ring};
use crate::words::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle needs a finite group and finite heights")]
    Infinite,
    #[error("span exceeded {0} generators")]
    Capped(usize),
    #[error("words of length {0} are not spanned by shorter ones within the truncation")]
    NotSpanned(usize),
}

/// Echelon basis keyed by leading monomial; pivot rows have leading
/// coefficient 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: HashMap<Monomial, NCPoly>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_pivot(&self, m: &Monomial) -> bool {
        self.rows.contains_key(m)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Monomial> {
        self.rows.keys()
    }

    /// Remainder after eliminating every pivot monomial.
    pub fn reduce(&self, v: &NCPoly) -> NCPoly {
        let mut work = v.clone();
        let mut rest = vec![];
        while let Some((m, c)) = work.pop_leading() {
            match self.rows.get(&m) {
                Some(row) => {
                    for (t, tc) in row.iter() {
                        if *t != m {
                            work.add_term(t.clone(), &-(tc * &c));
                        }
                    }
                }
                None => rest.push((m, c)),
            }
        }
        rest.into_iter().collect()
    }

    /// Adds a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: &NCPoly) -> bool {
        let r = self.reduce(v);
        let Some((m, c)) = r.leading() else { return false };
        let m = m.clone();
        let inv = c.inv().expect("nonzero leading coefficient");
        self.rows.insert(m, r.scale(&inv));
        true
    }

    pub fn contains(&self, v: &NCPoly) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Words over the letters 0..n (as super-letter indices) of length ≤ max.
pub fn words_up_to(n: u16, max: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max {
        let mut next = vec![];
        for w in &layer {
            for l in 0..n {
                let mut x: Vec<u16> = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// The defining relations [w] − red_w and [u]^{N_u} − redhat_u expanded in
/// the free algebra over x_1..x_θ.
pub fn expanded_relations(d: &Datum, free: &Ring) -> Vec<(String, NCPoly)> {
    let mut out = vec![];
    for w in d.c_set() {
        let lhs = expand_superletter(free, &w);
        let rhs = d.reds.get(&w).map(|p| d.ring.expand(free, p)).unwrap_or_default();
        out.push((format!("red_{}", crate::words::format_word(&w)), &lhs - &rhs));
    }
    for w in d.d_set() {
        let n = d.height_of(&w).unwrap();
        let lhs = free.pow(&expand_superletter(free, &w), n);
        let rhs = d.redhats.get(&w).map(|p| d.ring.expand(free, p)).unwrap_or_default();
        out.push((format!("redhat_{}", crate::words::format_word(&w)), &lhs - &rhs));
    }
    out
}

/// Z^θ modulo the lattice spanned by the multidegree differences inside
/// each relation. Every relation is homogeneous for this grading, and it
/// refines the Γ̂-grading whenever the relations are Γ̂-homogeneous.
#[derive(Clone, Debug)]
pub struct DegreeLattice {
    theta: usize,
    // echelon rows, positive pivots
    rows: Vec<(usize, Vec<i64>)>,
}

impl DegreeLattice {
    pub fn new(theta: usize, rels: &[&NCPoly]) -> Self {
        let mut gens = vec![];
        for rel in rels {
            let mut it = rel.iter();
            let Some((m0, _)) = it.next() else { continue };
            let d0 = multidegree(theta, &m0.word);
            for (m, _) in it {
                let d = multidegree(theta, &m.word);
                gens.push(d.iter().zip(&d0).map(|(a, b)| a - b).collect::<Vec<i64>>());
            }
        }
        let mut rows = vec![];
        let mut col = 0;
        while col < theta && !gens.is_empty() {
            gens.retain(|g: &Vec<i64>| g.iter().any(|x| *x != 0));
            // Euclid on column `col` until one row is left with a nonzero entry
            loop {
                let mut nz: Vec<usize> = (0..gens.len()).filter(|i| gens[*i][col] != 0).collect();
                if nz.len() <= 1 {
                    if let Some(&i) = nz.first() {
                        let mut r = gens.swap_remove(i);
                        if r[col] < 0 {
                            r.iter_mut().for_each(|x| *x = -*x);
                        }
                        rows.push((col, r));
                    }
                    break;
                }
                nz.sort_by_key(|i| gens[*i][col].abs());
                let p = nz[0];
                let pivot = gens[p].clone();
                for &i in &nz[1..] {
                    let f = gens[i][col].div_euclid(pivot[col]);
                    for (x, y) in gens[i].iter_mut().zip(&pivot) {
                        *x -= f * y;
                    }
                }
            }
            col += 1;
        }
        DegreeLattice { theta, rows }
    }

    /// Canonical coset representative.
    pub fn key(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for (c, r) in &self.rows {
            let f = v[*c].div_euclid(r[*c]);
            for (x, y) in v.iter_mut().zip(r) {
                *x -= f * y;
            }
        }
        v
    }

    pub fn key_of_word(&self, w: &[u16]) -> Vec<i64> {
        self.key(&multidegree(self.theta, w))
    }
}

/// Letter counts of a word over x_1..x_θ (letter i stored as index i−1).
pub fn multidegree(theta: usize, w: &[u16]) -> Vec<i64> {
    let mut d = vec![0; theta];
    for l in w {
        d[*l as usize] += 1;
    }
    d
}

/// Right multiplication by a group element.
fn times_group(r: &Ring, a: &NCPoly, h: &GroupElement) -> NCPoly {
    a.iter().map(|(m, c)| (r.mono(m.word.clone(), r.group.mul(&m.grp, h)), c.clone())).collect()
}

/// V·a·W in the free ring (V and W plain words).
fn sandwich(r: &Ring, v: &[u16], a: &NCPoly, w: &[u16]) -> NCPoly {
    let mut out = NCPoly::zero();
    let wp = r.word_poly(w);
    for (m, c) in a.iter() {
        let mut word = v.to_vec();
        word.extend_from_slice(&m.word);
        let t = NCPoly::term(r.mono(word, m.grp.clone()), c.clone());
        out += &r.mul(&t, &wp);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRank {
    pub rank: u64,
    /// Maximal X-length of a PBW word.
    pub top: usize,
    pub generators: usize,
}

/// Truncated quotient dimension: with S the span of V·r·W·h over the
/// expanded relations r, total length ≤ n, returns dim F_top / (F_top ∩ S)
/// after checking that every word of length top+1 lies in F_top + S.
pub fn oracle_rank(d: &Datum, slack: usize, cap: usize) -> Result<OracleRank, OracleError> {
    if !d.is_finite() {
        return Err(OracleError::Infinite);
    }
    let free = d.ring.letter_ring();
    let top = max_pbw_len(d);
    let n = top + 1 + slack;
    let rels = expanded_relations(d, &free);
    let theta = d.theta() as u16;
    let elems = free.group.elements();
    let words = words_up_to(theta, n);
    let lat = DegreeLattice::new(theta as usize, &rels.iter().map(|(_, r)| r).collect::<Vec<_>>());
    let mut blocks: BTreeMap<Vec<i64>, Echelon> = BTreeMap::new();
    let mut count = 0;
    for (_, rel) in &rels {
        let Some((lead, _)) = rel.leading() else { continue };
        let dr = lead.len as usize;
        for v in words.iter().filter(|v| v.len() + dr <= n) {
            for w in words.iter().filter(|w| v.len() + w.len() + dr <= n) {
                let base = sandwich(&free, v, rel, w);
                let key = lat.key_of_word(&[v.as_slice(), &lead.word, w].concat());
                let block = blocks.entry(key).or_default();
                for h in &elems {
                    count += 1;
                    if count > cap {
                        return Err(OracleError::Capped(cap));
                    }
                    block.insert(&times_group(&free, &base, h));
                }
            }
        }
    }
    // every monomial of length top+1 must be a pivot
    for w in words.iter().filter(|w| w.len() == top + 1) {
        let key = lat.key_of_word(w);
        for h in &elems {
            let m = free.mono(w.clone(), h.clone());
            if !blocks.get(&key).map(|b| b.is_pivot(&m)).unwrap_or(false) {
                return Err(OracleError::NotSpanned(top + 1));
            }
        }
    }
    let total = words.iter().filter(|w| w.len() <= top).count() as u64 * elems.len() as u64;
    let pivots = blocks.values().flat_map(|b| b.pivots()).filter(|m| m.len as usize <= top).count() as u64;
    Ok(OracleRank { rank: total - pivots, top, generators: count })
}

/// Slack that carries the truncation one step past the longest overlap of
/// two relation leading words, where a collapse first becomes visible.
pub fn default_slack(d: &Datum) -> usize {
    let top = max_pbw_len(d);
    let lens: Vec<(usize, Option<u64>)> = d.lset().words().iter().map(|w| w.len()).zip(d.heights.iter().copied()).collect();
    let longest = lens.iter().map(|(l, _)| *l).max().unwrap_or(1);
    let mut overlap = 3 * longest;
    for (lu, h) in &lens {
        if let Some(n) = h {
            overlap = overlap.max(lu * (*n as usize + 1)).max(lu * *n as usize + longest);
        }
    }
    overlap.saturating_sub(top + 1) + 1
}

/// Σ (N_u − 1)·ℓ(u) over finite heights.
fn max_pbw_len(d: &Datum) -> usize {
    d.lset().words().iter().zip(&d.heights).filter_map(|(w, h)| h.map(|n| (n as usize - 1) * w.len())).sum()
}

/// Whether `target` (in the free ring over x_1..x_θ) lies in the ideal
/// generated by the relations except `skip`, within total X-length `n`. A
/// `true` answer is a certificate; `false` only means not found within the
/// truncation.
pub fn in_truncated_ideal(d: &Datum, target: &NCPoly, skip: &str, n: usize, cap: usize) -> Result<bool, OracleError> {
    let free = d.ring.letter_ring();
    let target = target.clone();
    let rels: Vec<NCPoly> = expanded_relations(d, &free).into_iter().filter(|(k, _)| k != skip).map(|(_, p)| p).collect();
    let theta = d.theta() as u16;
    let words = words_up_to(theta, n);
    let elems = group_candidates(&free, &target, &rels);
    let mut all: Vec<&NCPoly> = rels.iter().collect();
    all.push(&target);
    let lat = DegreeLattice::new(theta as usize, &all);
    let mut count = 0;
    let Some((tlead, _)) = target.leading() else { return Ok(true) };
    let tkey = lat.key_of_word(&tlead.word);
    let mut ech = Echelon::new();
    for rel in &rels {
        let Some((lead, _)) = rel.leading() else { continue };
        let dr = lead.len as usize;
        for v in words.iter().filter(|v| v.len() + dr <= n) {
            for w in words.iter().filter(|w| v.len() + w.len() + dr <= n) {
                if lat.key_of_word(&[v.as_slice(), &lead.word, w].concat()) != tkey {
                    continue;
                }
                let base = sandwich(&free, v, rel, w);
                for h in &elems {
                    count += 1;
                    if count > cap {
                        return Err(OracleError::Capped(cap));
                    }
                    ech.insert(&times_group(&free, &base, h));
                }
            }
        }
    }
    if !ech.contains(&target) {
        return Ok(false);
    }
    Ok(true)
}

/// All of Γ when finite; otherwise group parts reachable from the target by
/// the relations' group parts, a few steps out.
fn group_candidates(r: &Ring, target: &NCPoly, rels: &[NCPoly]) -> Vec<GroupElement> {
    if r.group.is_finite() {
        return r.group.elements();
    }
    let shifts: BTreeSet<GroupElement> = rels.iter().flat_map(|p| p.iter().map(|(m, _)| m.grp.clone())).collect();
    let mut set: BTreeSet<GroupElement> = target.iter().map(|(m, _)| m.grp.clone()).collect();
    set.insert(r.group.identity());
    for _ in 0..2 {
        let cur: Vec<GroupElement> = set.iter().cloned().collect();
        for h in &cur {
            for s in &shifts {
                set.insert(r.group.mul(h, s));
                set.insert(r.group.mul(h, &r.group.pow(s, -1)));
            }
        }
    }
    set.into_iter().collect()
}

/// Expansion of an X_L word as a plain word list, for tests.
pub fn flatten_word(d: &Datum, w: &[u16]) -> Word {
    d.lset().flatten(w)
}
