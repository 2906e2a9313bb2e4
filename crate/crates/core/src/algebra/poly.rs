use std::cmp::Ordering;
use std::collections::btree_map;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::scalars::Scalar;
use crate::words::SuperWord;

use super::GroupElement;

/// U·g with the group element rightmost. `len` is the X-length ℓ(U).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub len: u32,
    pub word: SuperWord,
    pub grp: GroupElement,
}

// Encodes ≺ on the word part: shorter first, then the lexicographically
// bigger word is smaller. The group part only breaks ties for storage.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| other.word.cmp(&self.word))
            .then_with(|| self.grp.cmp(&other.grp))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    /// ≺ on words alone; equal words compare equal whatever the group part.
    pub fn prec_cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| other.word.cmp(&self.word))
    }
}

/// Finite linear combination of canonical monomials, zero coefficients
/// never stored. Iteration is in increasing ≺ order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly { terms: BTreeMap::new() }
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(m, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Monomial, Scalar> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// The ≺-greatest term.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        self.terms.pop_last()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Maximal X-length of a term.
    pub fn max_len(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.len).max()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }
}

impl FromIterator<(Monomial, Scalar)> for NCPoly {
    fn from_iter<I: IntoIterator<Item = (Monomial, Scalar)>>(iter: I) -> Self {
        let mut p = NCPoly::zero();
        for (m, c) in iter {
            p.add_term(m, &c);
        }
        p
    }
}

impl AddAssign<&NCPoly> for NCPoly {
    fn add_assign(&mut self, rhs: &NCPoly) {
        for (m, c) in rhs.iter() {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&NCPoly> for NCPoly {
    fn sub_assign(&mut self, rhs: &NCPoly) {
        for (m, c) in rhs.iter() {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(mut self, rhs: NCPoly) -> NCPoly {
        self += &rhs;
        self
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(mut self, rhs: NCPoly) -> NCPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}
