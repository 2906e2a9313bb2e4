//! Words over the generator alphabet, Lyndon words, Shirshov decomposition
//! and closure, and the orders on words and super words.
//!
//! A word is a sequence of letters 1..θ. Rust's slice ordering is exactly
//! the lexicographic order used here: a proper prefix is smaller.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

pub type Letter = u8;
pub type Word = Vec<Letter>;

/// Word over X_L: indices into an [`LSet`]. Index order is lex order on the
/// underlying Lyndon words, so slice comparison is lex order on super words.
pub type SuperWord = Vec<u16>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word {0:?} is too short to decompose")]
    TooShort(String),
    #[error("{0} is not a Lyndon word")]
    NotLyndon(String),
    #[error("letter {letter} out of range 1..={theta}")]
    LetterRange { letter: u32, theta: u8 },
    #[error("cannot parse word {0:?}")]
    Parse(String),
    #[error("{0} is not in L")]
    NotInL(String),
}

pub fn lex_cmp(u: &[Letter], v: &[Letter]) -> Ordering {
    u.cmp(v)
}

/// By definition: nonempty and smaller than every proper ending.
pub fn is_lyndon(u: &[Letter]) -> bool {
    !u.is_empty() && (1..u.len()).all(|i| u < &u[i..])
}

/// Duval's generator, which emits Lyndon words in lexicographic order.
pub fn lyndon_up_to(theta: u8, n: usize) -> Vec<Word> {
    let mut out = vec![];
    if theta == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<Letter> = vec![1];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == theta {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(l) => *l += 1,
        }
    }
    out
}

/// Sh(u) = (v|w) with w the lexicographically minimal proper ending.
pub fn shirshov_decompose(u: &[Letter]) -> Result<(Word, Word), WordError> {
    if u.len() < 2 {
        return Err(WordError::TooShort(format_word(u)));
    }
    let i = (1..u.len()).min_by(|a, b| u[*a..].cmp(&u[*b..])).unwrap();
    Ok((u[..i].to_vec(), u[i..].to_vec()))
}

/// The longest proper ending that is itself Lyndon. On Lyndon words this
/// coincides with the minimal ending split.
pub fn longest_lyndon_ending(u: &[Letter]) -> Option<(Word, Word)> {
    (1..u.len()).find(|i| is_lyndon(&u[*i..])).map(|i| (u[..i].to_vec(), u[i..].to_vec()))
}

pub fn format_word(u: &[Letter]) -> String {
    if u.iter().all(|l| *l <= 9) {
        u.iter().map(|l| char::from(b'0' + l)).collect()
    } else {
        u.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// "112" or "1,10,2".
pub fn parse_word(s: &str) -> Result<Word, WordError> {
    let s = s.trim();
    let bad = || WordError::Parse(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if s.contains(',') {
        s.split(',')
            .map(|p| p.trim().parse::<Letter>().ok().filter(|l| *l >= 1).ok_or_else(bad))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).filter(|d| *d >= 1).map(|d| d as Letter).ok_or_else(bad))
            .collect()
    }
}

/// A Shirshov-closed set of Lyndon words, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSet {
    theta: u8,
    words: Vec<Word>,
}

fn check_members(words: &[Word], theta: u8) -> Result<(), WordError> {
    for w in words {
        for l in w {
            if *l == 0 || *l > theta {
                return Err(WordError::LetterRange { letter: *l as u32, theta });
            }
        }
        if !is_lyndon(w) {
            return Err(WordError::NotLyndon(format_word(w)));
        }
    }
    Ok(())
}

pub fn is_shirshov_closed(words: &[Word], theta: u8) -> Result<bool, WordError> {
    check_members(words, theta)?;
    let set: BTreeSet<&Word> = words.iter().collect();
    if (1..=theta).any(|l| !set.contains(&vec![l])) {
        return Ok(false);
    }
    for w in words.iter().filter(|w| w.len() >= 2) {
        let (a, b) = shirshov_decompose(w)?;
        if !set.contains(&a) || !set.contains(&b) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn shirshov_closure(words: &[Word], theta: u8) -> Result<LSet, WordError> {
    check_members(words, theta)?;
    let mut set: BTreeSet<Word> = words.iter().cloned().collect();
    set.extend((1..=theta).map(|l| vec![l]));
    let mut stack: Vec<Word> = set.iter().cloned().collect();
    while let Some(w) = stack.pop() {
        if w.len() < 2 {
            continue;
        }
        let (a, b) = shirshov_decompose(&w)?;
        for f in [a, b] {
            if set.insert(f.clone()) {
                stack.push(f);
            }
        }
    }
    Ok(LSet { theta, words: set.into_iter().collect() })
}

impl LSet {
    /// Builds L, rejecting sets that are not Shirshov closed.
    pub fn new(words: &[Word], theta: u8) -> Result<LSet, WordError> {
        if !is_shirshov_closed(words, theta)? {
            return Err(WordError::Parse("L not Shirshov closed".into()));
        }
        let set: BTreeSet<Word> = words.iter().cloned().collect();
        Ok(LSet { theta, words: set.into_iter().collect() })
    }

    /// Sorts and deduplicates without the closedness check, so a datum
    /// with a bad L can still be loaded and reported on.
    pub fn new_unchecked(words: &[Word], theta: u8) -> Result<LSet, WordError> {
        check_members(words, theta)?;
        let set: BTreeSet<Word> = words.iter().cloned().collect();
        Ok(LSet { theta, words: set.into_iter().collect() })
    }

    pub fn is_closed(&self) -> bool {
        is_shirshov_closed(&self.words, self.theta).unwrap_or(false)
    }

    /// The letters 1..θ.
    pub fn letters(theta: u8) -> LSet {
        LSet { theta, words: (1..=theta).map(|l| vec![l]).collect() }
    }

    pub fn theta(&self) -> u8 {
        self.theta
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: u16) -> &Word {
        &self.words[i as usize]
    }

    pub fn index(&self, w: &[Letter]) -> Option<u16> {
        self.words.binary_search_by(|x| x.as_slice().cmp(w)).ok().map(|i| i as u16)
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.index(w).is_some()
    }

    /// Concatenation of the underlying words.
    pub fn flatten(&self, sw: &[u16]) -> Word {
        sw.iter().flat_map(|i| self.words[*i as usize].iter().copied()).collect()
    }

    /// X-length ℓ(U).
    pub fn x_len(&self, sw: &[u16]) -> usize {
        sw.iter().map(|i| self.words[*i as usize].len()).sum()
    }

    /// C(L): words w = uv ∉ L with u < v in L and Sh(w) = (u|v).
    pub fn c_set(&self) -> Vec<Word> {
        let mut out = BTreeSet::new();
        for (i, u) in self.words.iter().enumerate() {
            for v in &self.words[i + 1..] {
                let mut w = u.clone();
                w.extend_from_slice(v);
                if self.contains(&w) {
                    continue;
                }
                let (a, b) = shirshov_decompose(&w).expect("length ≥ 2");
                if &a == u && &b == v {
                    out.insert(w);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn format_super(&self, sw: &[u16]) -> String {
        sw.iter().map(|i| format!("[{}]", format_word(&self.words[*i as usize]))).collect()
    }
}

/// U ≺ V: shorter X-length first; at equal length the lexicographically
/// bigger super word is smaller.
pub fn prec_cmp(l: &LSet, u: &[u16], v: &[u16]) -> Ordering {
    l.x_len(u).cmp(&l.x_len(v)).then_with(|| v.cmp(u))
}

/// Necklace count of Lyndon words of length n over θ letters.
pub fn necklace_count(theta: u64, n: u64) -> u64 {
    fn mobius(mut n: u64) -> i64 {
        let mut res = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                res = -res;
            }
            p += 1;
        }
        if n > 1 {
            res = -res;
        }
        res
    }
    let total: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(d) * (theta as i64).pow((n / d) as u32)).sum();
    (total / n as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_cmp(&w("1"), &w("12")), Ordering::Less);
        assert_eq!(lex_cmp(&w("12"), &w("2")), Ordering::Less);
        assert_eq!(lex_cmp(&w("12"), &w("12")), Ordering::Equal);
    }

    #[test]
    fn lyndon_examples() {
        assert!(is_lyndon(&w("1")));
        assert!(!is_lyndon(&w("11")));
        assert!(is_lyndon(&w("11212")));
        assert_eq!(lyndon_up_to(2, 2), vec![w("1"), w("12"), w("2")]);
        assert_eq!(lyndon_up_to(1, 3), vec![w("1")]);
        assert_eq!(lyndon_up_to(2, 4).len(), 8);
    }

    #[test]
    fn shirshov_examples() {
        assert_eq!(shirshov_decompose(&w("12")).unwrap(), (w("1"), w("2")));
        assert_eq!(shirshov_decompose(&w("11212")).unwrap(), (w("112"), w("12")));
        assert_eq!(shirshov_decompose(&w("112")).unwrap(), (w("1"), w("12")));
        assert!(shirshov_decompose(&w("1")).is_err());
    }

    #[test]
    fn closure_examples() {
        let bad = vec![w("1"), w("112"), w("2")];
        assert!(!is_shirshov_closed(&bad, 2).unwrap());
        let good = vec![w("1"), w("12"), w("112"), w("2")];
        assert!(is_shirshov_closed(&good, 2).unwrap());
        assert_eq!(shirshov_closure(&bad, 2).unwrap().words(), &[w("1"), w("112"), w("12"), w("2")]);
        assert!(is_shirshov_closed(&[w("11")], 1).is_err());
    }

    #[test]
    fn c_set_examples() {
        let l = LSet::new(&[w("1"), w("112"), w("12"), w("2")], 2).unwrap();
        assert_eq!(l.c_set(), vec![w("1112"), w("11212"), w("122")]);
        assert_eq!(LSet::letters(2).c_set(), vec![w("12")]);
        assert!(LSet::letters(1).c_set().is_empty());
    }

    #[test]
    fn prec_examples() {
        let l = LSet::new(&[w("1"), w("12"), w("2")], 2).unwrap();
        let (x1, x12, x2) = (0u16, 1u16, 2u16);
        assert_eq!(prec_cmp(&l, &[x1], &[x12]), Ordering::Less);
        assert_eq!(prec_cmp(&l, &[x2, x1], &[x1, x2]), Ordering::Less);
        assert_eq!(prec_cmp(&l, &[x12, x2], &[x12, x2]), Ordering::Equal);
    }

    #[test]
    fn word_literals() {
        assert_eq!(parse_word("1,10,2").unwrap(), vec![1, 10, 2]);
        assert_eq!(format_word(&[1, 10, 2]), "1,10,2");
        assert!(parse_word("1x").is_err());
    }
}
