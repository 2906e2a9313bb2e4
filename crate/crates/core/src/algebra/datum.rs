use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalars::{is_height_shape, Field, Scalar, ScalarError};
use crate::words::{format_word, parse_word, LSet, Word, WordError};

use super::{GroupSpec, NCPoly, Ring};

#[derive(Debug, Error)]
pub enum DatumError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Word(#[from] WordError),
    #[error("{0}")]
    Scalar(#[from] ScalarError),
    #[error("datum: {0}")]
    Shape(String),
}

/// A full presentation: gradings, L, heights and right-hand sides.
#[derive(Clone, Debug)]
pub struct Datum {
    pub ring: Ring,
    /// N_u per L member, `None` for ∞.
    pub heights: Vec<Option<u64>>,
    /// red_w for w ∈ C(L).
    pub reds: BTreeMap<Word, NCPoly>,
    /// redhat_u for u ∈ D(L), keyed by the word u.
    pub redhats: BTreeMap<Word, NCPoly>,
}

impl Datum {
    pub fn theta(&self) -> u8 {
        self.ring.theta()
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn lset(&self) -> &LSet {
        &self.ring.lset
    }

    pub fn height(&self, l: u16) -> Option<u64> {
        self.heights[l as usize]
    }

    pub fn height_of(&self, w: &[u8]) -> Option<u64> {
        self.heights[self.ring.idx(w) as usize]
    }

    /// q_{u,v} for words over X.
    pub fn q_uv(&self, u: &[u8], v: &[u8]) -> Scalar {
        self.ring.q_word(u, v)
    }

    pub fn c_set(&self) -> Vec<Word> {
        self.ring.lset.c_set()
    }

    pub fn d_set(&self) -> Vec<Word> {
        self.ring.lset.words().iter().zip(&self.heights).filter(|(_, h)| h.is_some()).map(|(w, _)| w.clone()).collect()
    }

    pub fn red(&self, w: &str) -> &NCPoly {
        &self.reds[&parse_word(w).expect("word literal")]
    }

    pub fn redhat(&self, w: &str) -> &NCPoly {
        &self.redhats[&parse_word(w).expect("word literal")]
    }

    pub fn set_red(&mut self, w: &str, p: NCPoly) {
        self.reds.insert(parse_word(w).expect("word literal"), p);
    }

    pub fn set_redhat(&mut self, w: &str, p: NCPoly) {
        self.redhats.insert(parse_word(w).expect("word literal"), p);
    }

    pub fn set_height(&mut self, w: &str, n: Option<u64>) {
        let i = self.ring.idx(&parse_word(w).expect("word literal"));
        self.heights[i as usize] = n;
    }

    /// Whether Γ is finite and every height is finite.
    pub fn is_finite(&self) -> bool {
        self.ring.group.is_finite() && self.heights.iter().all(|h| h.is_some())
    }

    /// Every violated presentation constraint, each naming its witness.
    pub fn validate(&self) -> Vec<String> {
        let mut out = vec![];
        let r = &self.ring;
        let l = r.lset.clone();
        if !l.is_closed() {
            out.push("L not Shirshov closed".to_string());
        }
        let m = r.zeta_order() as i64;
        for i in 0..self.theta() as usize {
            for (f, k) in r.letter_chi(i).iter().enumerate() {
                let mf = r.group.modulus(f) as i64;
                if mf > 0 && (k * mf) % m != 0 {
                    out.push(format!("χ_{} has order not dividing {} on group factor {}", i + 1, mf, f + 1));
                }
            }
        }
        for (idx, w) in l.words().iter().enumerate() {
            let Some(n) = self.heights[idx] else { continue };
            let quu = r.q_word(w, w);
            match is_height_shape(n, &quu) {
                Ok(true) => {}
                _ => out.push(format!("height N_{} = {} does not fit ord q_{{u,u}}", format_word(w), n)),
            }
        }
        let c = l.c_set();
        for w in &c {
            if !self.reds.contains_key(w) {
                out.push(format!("missing red_{}", format_word(w)));
            }
        }
        for w in self.reds.keys() {
            if !c.contains(w) {
                out.push(format!("red_{} given but {} is not in C(L)", format_word(w), format_word(w)));
            }
        }
        let d = self.d_set();
        for w in &d {
            if !self.redhats.contains_key(w) {
                out.push(format!("missing redhat_{}", format_word(w)));
            }
        }
        for w in self.redhats.keys() {
            if !d.contains(w) {
                out.push(format!("redhat_{} given but {} has no finite height", format_word(w), format_word(w)));
            }
        }
        for (w, p) in &self.reds {
            let chi = r.word_chi(w);
            if !r.is_char_homogeneous_of(p, &chi) {
                out.push(format!("red_{} not Γ̂-homogeneous of degree χ_{}", format_word(w), format_word(w)));
            }
            if !r.prec_l_check(p, &[w], true) {
                out.push(format!("red_{} not ≺_L [{}]", format_word(w), format_word(w)));
            }
        }
        for (w, p) in &self.redhats {
            let Some(idx) = l.index(w) else { continue };
            let Some(n) = self.heights[idx as usize] else { continue };
            let chi = r.char_pow(&r.word_chi(w), n as i64);
            if !r.is_char_homogeneous_of(p, &chi) {
                out.push(format!("redhat_{} not Γ̂-homogeneous of degree χ_{}^{}", format_word(w), format_word(w), n));
            }
            let target: Vec<&Word> = (0..n).map(|_| w).collect();
            if !r.prec_l_check(p, &target, true) {
                out.push(format!("redhat_{} not ≺_L [{}]^{}", format_word(w), format_word(w), n));
            }
        }
        out
    }

    fn poly_to_terms(&self, p: &NCPoly) -> Vec<TermFile> {
        p.iter()
            .rev()
            .map(|(m, c)| TermFile {
                word: m.word.iter().map(|l| format_word(self.ring.lset.word(*l))).collect(),
                grp: m.grp.clone(),
                coeff: c.to_literal(),
            })
            .collect()
    }

    fn terms_to_poly(ring: &Ring, terms: &[TermFile]) -> Result<NCPoly, DatumError> {
        let mut p = NCPoly::zero();
        for t in terms {
            let word = t
                .word
                .iter()
                .map(|s| {
                    let w = parse_word(s)?;
                    ring.lset.index(&w).ok_or_else(|| WordError::NotInL(s.clone()))
                })
                .collect::<Result<Vec<u16>, WordError>>()?;
            if t.grp.len() != ring.group.factors() {
                return Err(DatumError::Shape(format!("group element {:?} has wrong length", t.grp)));
            }
            let c = ring.field.parse_literal(&t.coeff)?;
            p.add_term(ring.mono(word, t.grp.clone()), &c);
        }
        Ok(p)
    }

    pub fn to_file(&self) -> DatumFile {
        let r = &self.ring;
        let field = match r.field {
            Field::Cyclotomic(m) => FieldFile::Cyclotomic(m),
            Field::Prime(p) => FieldFile::Prime(p),
        };
        DatumFile {
            theta: self.theta(),
            field,
            group: GroupFile { torsion: r.group.torsion.clone(), free_rank: r.group.free_rank },
            g: (0..self.theta() as usize).map(|i| r.letter_g(i).clone()).collect(),
            chi: (0..self.theta() as usize).map(|i| r.letter_chi(i).clone()).collect(),
            l: r.lset.words().iter().map(|w| format_word(w)).collect(),
            heights: r
                .lset
                .words()
                .iter()
                .zip(&self.heights)
                .map(|(w, h)| (format_word(w), h.map(Height::Finite).unwrap_or(Height::Infinite)))
                .collect(),
            reds: self.reds.iter().map(|(w, p)| (format_word(w), self.poly_to_terms(p))).collect(),
            redhats: self.redhats.iter().map(|(w, p)| (format_word(w), self.poly_to_terms(p))).collect(),
        }
    }

    pub fn from_file(f: &DatumFile) -> Result<Datum, DatumError> {
        let field = match f.field {
            FieldFile::Cyclotomic(m) => Field::cyclotomic(m)?,
            FieldFile::Prime(p) => Field::prime(p)?,
        };
        let group = GroupSpec { torsion: f.group.torsion.clone(), free_rank: f.group.free_rank };
        if group.torsion.iter().any(|m| *m < 2) {
            return Err(DatumError::Shape("torsion orders must be at least 2".into()));
        }
        let th = f.theta as usize;
        if f.g.len() != th || f.chi.len() != th {
            return Err(DatumError::Shape(format!("need {} group elements and characters", th)));
        }
        if f.g.iter().chain(&f.chi).any(|v| v.len() != group.factors()) {
            return Err(DatumError::Shape(format!("exponent vectors must have length {}", group.factors())));
        }
        let words = f.l.iter().map(|s| parse_word(s)).collect::<Result<Vec<_>, _>>()?;
        let lset = LSet::new_unchecked(&words, f.theta)?;
        let ring = Ring::new(field, group, f.g.clone(), f.chi.clone(), lset);
        let mut heights = vec![None; ring.lset.len()];
        for (k, h) in &f.heights {
            let w = parse_word(k)?;
            let i = ring.lset.index(&w).ok_or_else(|| WordError::NotInL(k.clone()))?;
            heights[i as usize] = match h {
                Height::Finite(0) => return Err(DatumError::Shape(format!("height of {} must be positive", k))),
                Height::Finite(n) => Some(*n),
                Height::Infinite => None,
            };
        }
        let mut reds = BTreeMap::new();
        for (k, terms) in &f.reds {
            reds.insert(parse_word(k)?, Self::terms_to_poly(&ring, terms)?);
        }
        let mut redhats = BTreeMap::new();
        for (k, terms) in &f.redhats {
            redhats.insert(parse_word(k)?, Self::terms_to_poly(&ring, terms)?);
        }
        Ok(Datum { ring, heights, reds, redhats })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("datum serializes")
    }

    pub fn from_json(s: &str) -> Result<Datum, DatumError> {
        let f: DatumFile = serde_json::from_str(s)?;
        Datum::from_file(&f)
    }
}

/// On-disk form of a [`Datum`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub theta: u8,
    pub field: FieldFile,
    pub group: GroupFile,
    pub g: Vec<Vec<i64>>,
    pub chi: Vec<Vec<i64>>,
    #[serde(rename = "L")]
    pub l: Vec<String>,
    pub heights: BTreeMap<String, Height>,
    #[serde(default)]
    pub reds: BTreeMap<String, Vec<TermFile>>,
    #[serde(default)]
    pub redhats: BTreeMap<String, Vec<TermFile>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldFile {
    Cyclotomic(u32),
    Prime(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub torsion: Vec<u64>,
    #[serde(default)]
    pub free_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub word: Vec<String>,
    pub grp: Vec<i64>,
    pub coeff: Vec<String>,
}

/// A height: a positive integer or "inf".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Height {
    Finite(u64),
    Infinite,
}

impl Serialize for Height {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Height::Finite(n) => s.serialize_u64(*n),
            Height::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Height {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Height::Finite(n)),
            Raw::S(s) if s == "inf" => Ok(Height::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("height must be an integer or \"inf\", got {:?}", s))),
        }
    }
}
