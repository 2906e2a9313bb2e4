//! Exact coefficients: the cyclotomic field Q(ζ_m) and prime fields F_p,
//! together with q-numbers and Gaussian binomials.
//!
//! Elements of Q(ζ_m) are stored as rational coefficient vectors in the
//! power basis 1, ζ, …, ζ^{φ(m)−1}, always fully reduced modulo Φ_m, so
//! equality is coefficient-wise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

mod rational;

pub use rational::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("not a unit")]
    NotAUnit,
    #[error("q_binomial: i = {i} exceeds n = {n}")]
    BinomialRange { n: u64, i: u64 },
    #[error("bad scalar literal {0:?}")]
    Literal(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("conductor must be positive")]
    Conductor,
}

/// Dense integer polynomial, lowest degree first.
pub type IntPoly = Vec<i64>;

fn poly_trim(p: &mut IntPoly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_exact(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    assert_eq!(*den.last().unwrap(), 1, "divisor must be monic");
    if rem.len() <= dd {
        return vec![0];
    }
    let mut quo = vec![0i64; rem.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0), "division was not exact");
    poly_trim(&mut quo);
    quo
}

/// Φ_m, obtained by dividing x^m − 1 by Φ_d for every proper divisor d of m.
pub fn cyclotomic_poly(m: u32) -> IntPoly {
    assert!(m >= 1, "conductor must be positive");
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    let mut den: IntPoly = vec![1];
    for d in 1..m {
        if m.is_multiple_of(d) {
            den = poly_mul(&den, &cyclotomic_poly(d));
        }
    }
    poly_div_exact(&num, &den)
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Smallest generator of F_p^×.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let n = p - 1;
    let mut factors = vec![];
    let mut k = n;
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            factors.push(d);
            while k.is_multiple_of(d) {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        factors.push(k);
    }
    (2..p)
        .find(|g| factors.iter().all(|f| mod_pow(*g, n / f, p) != 1))
        .expect("prime has a primitive root")
}

/// Per-conductor tables, built once and leaked so scalars can carry a
/// plain reference.
#[derive(Debug)]
pub struct CycloCtx {
    pub m: u32,
    pub phi: IntPoly,
    deg: usize,
    /// x^k mod Φ_m for 0 ≤ k < 2·deg − 1.
    table: Vec<IntPoly>,
    /// ζ^k in the power basis for 0 ≤ k < m.
    roots: Vec<Vec<i64>>,
}

fn reduce_int(mut p: Vec<i64>, phi: &IntPoly) -> Vec<i64> {
    let deg = phi.len() - 1;
    for k in (deg..p.len()).rev() {
        let c = p[k];
        if c != 0 {
            for j in 0..=deg {
                p[k - deg + j] -= c * phi[j];
            }
        }
    }
    p.truncate(deg.max(1));
    p.resize(deg.max(1), 0);
    p
}

impl CycloCtx {
    pub fn get(m: u32) -> &'static CycloCtx {
        static CACHE: OnceLock<Mutex<HashMap<u32, &'static CycloCtx>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        if let Some(c) = guard.get(&m) {
            return c;
        }
        let phi = cyclotomic_poly(m);
        let deg = phi.len() - 1;
        let table = (0..(2 * deg).max(1))
            .map(|k| {
                let mut mono = vec![0i64; k + 1];
                mono[k] = 1;
                reduce_int(mono, &phi)
            })
            .collect();
        let roots = (0..m as usize)
            .map(|k| {
                let mut mono = vec![0i64; k + 1];
                mono[k] = 1;
                reduce_int(mono, &phi)
            })
            .collect();
        let ctx: &'static CycloCtx = Box::leak(Box::new(CycloCtx { m, phi, deg, table, roots }));
        guard.insert(m, ctx);
        ctx
    }

    pub fn degree(&self) -> usize {
        self.deg
    }
}

/// Element of Q(ζ_m).
#[derive(Clone)]
pub struct CycloScalar {
    ctx: &'static CycloCtx,
    coeffs: Vec<Q>,
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.m == other.ctx.m && self.coeffs == other.coeffs
    }
}
impl Eq for CycloScalar {}

impl std::hash::Hash for CycloScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ζ{})[{}]", self.ctx.m, self)
    }
}

impl CycloScalar {
    pub fn zero(m: u32) -> Self {
        let ctx = CycloCtx::get(m);
        CycloScalar { ctx, coeffs: vec![Q::zero(); ctx.deg] }
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        let mut s = Self::zero(m);
        s.coeffs[0] = Q::from(n);
        s
    }

    pub fn from_rational(m: u32, q: Q) -> Self {
        let mut s = Self::zero(m);
        s.coeffs[0] = q;
        s
    }

    /// ζ_m^k for any integer k.
    pub fn root(m: u32, k: i64) -> Self {
        let ctx = CycloCtx::get(m);
        let k = k.rem_euclid(m as i64) as usize;
        let coeffs = ctx.roots[k].iter().map(|c| Q::from(*c)).collect();
        CycloScalar { ctx, coeffs }
    }

    /// Reduces an arbitrary-length coefficient vector modulo Φ_m.
    pub fn from_coeffs(m: u32, coeffs: Vec<Q>) -> Self {
        let ctx = CycloCtx::get(m);
        let mut out = vec![Q::zero(); ctx.deg];
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let red = if k < ctx.table.len() {
                ctx.table[k].clone()
            } else {
                let mut mono = vec![0i64; k + 1];
                mono[k] = 1;
                reduce_int(mono, &ctx.phi)
            };
            for (j, r) in red.iter().enumerate() {
                if *r != 0 {
                    out[j] += &c * Q::from(*r);
                }
            }
        }
        CycloScalar { ctx, coeffs: out }
    }

    pub fn conductor(&self) -> u32 {
        self.ctx.m
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.ctx.m, other.ctx.m, "mixed conductors");
        let deg = self.ctx.deg;
        if deg == 1 {
            return CycloScalar { ctx: self.ctx, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let mut conv = vec![Q::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut out: Vec<Q> = conv[..deg].to_vec();
        for (k, c) in conv.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (j, r) in self.ctx.table[k].iter().enumerate() {
                if *r != 0 {
                    out[j] += c * Q::from(*r);
                }
            }
        }
        CycloScalar { ctx: self.ctx, coeffs: out }
    }

    /// Inverse by the extended Euclidean algorithm against Φ_m.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::NotAUnit);
        }
        let phi: Vec<Q> = self.ctx.phi.iter().map(|c| Q::from(*c)).collect();
        let a = qpoly_trim(self.coeffs.clone());
        // invariant: s_i * a ≡ r_i (mod Φ)
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (vec![Q::zero()], vec![Q::one()]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (quo, rem) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ_m is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let inv: Vec<Q> = s0.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_coeffs(self.ctx.m, inv))
    }
}

fn qpoly_trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    if p.is_empty() {
        p.push(Q::zero());
    }
    p
}

fn qpoly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qpoly_trim(out)
}

fn qpoly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Q::zero);
            let y = b.get(i).cloned().unwrap_or_else(Q::zero);
            x - y
        })
        .collect();
    qpoly_trim(out)
}

fn qpoly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![Q::zero()], qpoly_trim(rem));
    }
    let mut quo = vec![Q::zero(); rem.len() - db];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for (j, d) in b.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
        }
        quo[k] = c;
    }
    rem.truncate(db.max(1));
    (qpoly_trim(quo), qpoly_trim(rem))
}

fn fmt_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec![];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", k),
            };
            let abs = c.abs();
            let body = if k == 0 {
                fmt_rational(&abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_rational(&abs), mono)
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{}", body) } else { body });
            } else {
                parts.push(if c.is_negative() { format!("- {}", body) } else { format!("+ {}", body) });
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Element of F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeScalar {
    pub p: u32,
    pub value: u32,
}

impl fmt::Debug for PrimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.p)
    }
}

impl PrimeScalar {
    pub fn new(p: u32, v: i64) -> Self {
        PrimeScalar { p, value: v.rem_euclid(p as i64) as u32 }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.value == 0 {
            return Err(ScalarError::NotAUnit);
        }
        Ok(PrimeScalar { p: self.p, value: mod_pow(self.value as u64, self.p as u64 - 2, self.p as u64) as u32 })
    }

    /// Multiplicative order by iteration.
    pub fn ord(&self) -> Result<u64, ScalarError> {
        if self.value == 0 {
            return Err(ScalarError::NotAUnit);
        }
        let p = self.p as u64;
        let mut x = self.value as u64;
        let mut n = 1;
        while x != 1 {
            x = x * self.value as u64 % p;
            n += 1;
        }
        Ok(n)
    }
}

/// The ambient field of a datum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Cyclotomic(u32),
    Prime(u32),
}

impl Field {
    pub fn cyclotomic(m: u32) -> Result<Self, ScalarError> {
        if m == 0 {
            return Err(ScalarError::Conductor);
        }
        Ok(Field::Cyclotomic(m))
    }

    pub fn prime(p: u32) -> Result<Self, ScalarError> {
        if !is_prime(p as u64) {
            return Err(ScalarError::NotPrime(p as u64));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Cyclotomic(_) => 0,
            Field::Prime(p) => *p as u64,
        }
    }

    /// Order of the distinguished root ζ: m for Q(ζ_m), p − 1 for F_p
    /// (where ζ is the least primitive root).
    pub fn zeta_order(&self) -> u64 {
        match self {
            Field::Cyclotomic(m) => *m as u64,
            Field::Prime(p) => *p as u64 - 1,
        }
    }

    /// Number of coefficients in a literal.
    pub fn literal_len(&self) -> usize {
        match self {
            Field::Cyclotomic(m) => CycloCtx::get(*m).degree(),
            Field::Prime(_) => 1,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Field::Cyclotomic(m) => Scalar::Cyclo(CycloScalar::from_int(*m, n)),
            Field::Prime(p) => Scalar::Prime(PrimeScalar::new(*p, n)),
        }
    }

    pub fn from_rational(&self, q: &Q) -> Result<Scalar, ScalarError> {
        match self {
            Field::Cyclotomic(m) => Ok(Scalar::Cyclo(CycloScalar::from_rational(*m, q.clone()))),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = q.numer().mod_floor(&pb).to_i64().unwrap();
                let d = q.denom().mod_floor(&pb).to_i64().unwrap();
                let d = PrimeScalar::new(*p, d).inv()?;
                Ok(Scalar::Prime(PrimeScalar::new(*p, n * d.value as i64)))
            }
        }
    }

    /// ζ^k.
    pub fn root(&self, k: i64) -> Scalar {
        match self {
            Field::Cyclotomic(m) => Scalar::Cyclo(CycloScalar::root(*m, k)),
            Field::Prime(p) => {
                let n = *p as i64 - 1;
                let g = primitive_root(*p as u64);
                Scalar::Prime(PrimeScalar::new(*p, mod_pow(g, k.rem_euclid(n) as u64, *p as u64) as i64))
            }
        }
    }

    /// Parses a literal: a list of φ(m) rationals for Q(ζ_m), one integer
    /// for F_p.
    pub fn parse_literal(&self, parts: &[String]) -> Result<Scalar, ScalarError> {
        if parts.len() != self.literal_len() {
            return Err(ScalarError::Literal(parts.join(",")));
        }
        let qs: Vec<Q> = parts.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
        match self {
            Field::Cyclotomic(m) => Ok(Scalar::Cyclo(CycloScalar::from_coeffs(*m, qs))),
            Field::Prime(_) => self.from_rational(&qs[0]),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Q, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Literal(s.to_string());
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        Ok(Q::new(a, b))
    } else {
        let a: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Q::from_integer(a))
    }
}

/// A coefficient. All scalars of one datum share the variant and its
/// parameter; mixing them is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Cyclo(CycloScalar),
    Prime(PrimeScalar),
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Cyclo(c) => write!(f, "{:?}", c),
            Scalar::Prime(p) => write!(f, "{:?}", p),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Cyclo(c) => write!(f, "{}", c),
            Scalar::Prime(p) => write!(f, "{}", p.value),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Cyclo(c) => Field::Cyclotomic(c.conductor()),
            Scalar::Prime(p) => Field::Prime(p.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Cyclo(c) => c.is_zero(),
            Scalar::Prime(p) => p.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Cyclo(c) => c.is_one(),
            Scalar::Prime(p) => p.value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Cyclo(c) => c.inv().map(Scalar::Cyclo),
            Scalar::Prime(p) => p.inv().map(Scalar::Prime),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Multiplicative order, or `None` if the element is not a root of unity.
    pub fn ord(&self) -> Result<Option<u64>, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::NotAUnit);
        }
        match self {
            Scalar::Prime(p) => p.ord().map(Some),
            Scalar::Cyclo(c) => {
                // roots of unity in Q(ζ_m) have order dividing 2m
                let bound = 2 * c.conductor() as u64;
                let mut x = self.clone();
                for n in 1..=bound {
                    if x.is_one() {
                        return Ok(Some(n));
                    }
                    x = &x * self;
                }
                Ok(None)
            }
        }
    }

    /// Literal strings for serialization.
    pub fn to_literal(&self) -> Vec<String> {
        match self {
            Scalar::Cyclo(c) => c.coeffs().iter().map(fmt_rational).collect(),
            Scalar::Prime(p) => vec![p.value.to_string()],
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
    };
}

fn add_s(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Cyclo(x), Scalar::Cyclo(y)) => {
            assert_eq!(x.ctx.m, y.ctx.m, "mixed conductors");
            let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(p, q)| p + q).collect();
            Scalar::Cyclo(CycloScalar { ctx: x.ctx, coeffs })
        }
        (Scalar::Prime(x), Scalar::Prime(y)) => {
            assert_eq!(x.p, y.p, "mixed primes");
            Scalar::Prime(PrimeScalar { p: x.p, value: ((x.value as u64 + y.value as u64) % x.p as u64) as u32 })
        }
        _ => panic!("mixed scalar variants"),
    }
}

fn sub_s(a: &Scalar, b: &Scalar) -> Scalar {
    add_s(a, &-b)
}

fn mul_s(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Cyclo(x), Scalar::Cyclo(y)) => Scalar::Cyclo(x.mul_ref(y)),
        (Scalar::Prime(x), Scalar::Prime(y)) => {
            assert_eq!(x.p, y.p, "mixed primes");
            Scalar::Prime(PrimeScalar { p: x.p, value: ((x.value as u64 * y.value as u64) % x.p as u64) as u32 })
        }
        _ => panic!("mixed scalar variants"),
    }
}

binop!(Add, add, add_s);
binop!(Sub, sub, sub_s);
binop!(Mul, mul, mul_s);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Cyclo(c) => Scalar::Cyclo(CycloScalar { ctx: c.ctx, coeffs: c.coeffs.iter().map(|x| -x).collect() }),
            Scalar::Prime(p) => Scalar::Prime(PrimeScalar::new(p.p, -(p.value as i64))),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Cyclo(x), Scalar::Cyclo(y)) => {
                for (p, q) in x.coeffs.iter_mut().zip(&y.coeffs) {
                    if !q.is_zero() {
                        *p += q;
                    }
                }
            }
            _ => *self = add_s(self, rhs),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Cyclo(x), Scalar::Cyclo(y)) => {
                for (p, q) in x.coeffs.iter_mut().zip(&y.coeffs) {
                    if !q.is_zero() {
                        *p -= q;
                    }
                }
            }
            _ => *self = sub_s(self, rhs),
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_s(self, rhs);
    }
}

/// ζ^k as an exponent pair; order is m / gcd(m, k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    pub k: u64,
    pub m: u64,
}

impl RootOfUnity {
    pub fn new(k: i64, m: u64) -> Self {
        assert!(m >= 1);
        RootOfUnity { k: k.rem_euclid(m as i64) as u64, m }
    }

    pub fn ord(&self) -> u64 {
        self.m / self.m.gcd(&self.k)
    }

    pub fn to_scalar(&self) -> Scalar {
        Scalar::Cyclo(CycloScalar::root(self.m as u32, self.k as i64))
    }
}

/// (n)_q = 1 + q + … + q^{n−1}.
pub fn q_number(n: u64, q: &Scalar) -> Scalar {
    let f = q.field();
    let mut acc = f.zero();
    let mut p = f.one();
    for _ in 0..n {
        acc += &p;
        p = &p * q;
    }
    acc
}

pub fn q_factorial(n: u64, q: &Scalar) -> Scalar {
    let mut acc = q.field().one();
    for k in 1..=n {
        acc = &acc * &q_number(k, q);
    }
    acc
}

/// Coefficients of the Gaussian binomial polynomial, built with the
/// recurrence G(n,i) = G(n−1,i−1) + x^i·G(n−1,i).
pub fn gaussian_poly(n: u64, i: u64) -> Result<Vec<BigInt>, ScalarError> {
    if i > n {
        return Err(ScalarError::BinomialRange { n, i });
    }
    // rows[j] = G(row, j)
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for r in 1..=n {
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(r as usize + 1);
        for j in 0..=r {
            let mut poly: Vec<BigInt> = vec![];
            if j >= 1 {
                poly = rows[(j - 1) as usize].clone();
            }
            if j < r {
                let src = &rows[j as usize];
                let need = src.len() + j as usize;
                if poly.len() < need {
                    poly.resize(need, BigInt::zero());
                }
                for (t, c) in src.iter().enumerate() {
                    poly[t + j as usize] += c;
                }
            }
            next.push(poly);
        }
        rows = next;
    }
    Ok(rows[i as usize].clone())
}

pub fn q_binomial(n: u64, i: u64, q: &Scalar) -> Result<Scalar, ScalarError> {
    let poly = gaussian_poly(n, i)?;
    let f = q.field();
    let mut acc = f.zero();
    for c in poly.iter().rev() {
        acc = &acc * q;
        acc += &f.from_rational(&Q::from_integer(c.clone()))?;
    }
    Ok(acc)
}

/// True iff binom(n,i)_q = 0 for every 1 ≤ i ≤ n−1, by direct evaluation.
pub fn binom_vanishes(n: u64, q: &Scalar) -> bool {
    (1..n).all(|i| q_binomial(n, i, q).map(|b| b.is_zero()).unwrap_or(false))
}

/// The closed-form side: ord q = n in characteristic 0, n = p^k·ord q in
/// characteristic p.
pub fn binom_vanishes_closed(n: u64, q: &Scalar) -> Result<bool, ScalarError> {
    let ord = match q.ord()? {
        Some(o) => o,
        None => return Ok(false),
    };
    let p = q.field().characteristic();
    if p == 0 {
        return Ok(ord == n);
    }
    let mut t = ord;
    while t < n {
        t *= p;
    }
    Ok(t == n)
}

/// Whether `n` has the height shape for `q`: n = ord q, or p^k·ord q in
/// characteristic p.
pub fn is_height_shape(n: u64, q: &Scalar) -> Result<bool, ScalarError> {
    if n == 1 {
        return Ok(q.is_one());
    }
    binom_vanishes_closed(n, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> Scalar {
        Field::Cyclotomic(m).root(k)
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn orders() {
        assert_eq!(RootOfUnity::new(2, 6).ord(), 3);
        assert_eq!(RootOfUnity::new(0, 6).ord(), 1);
        assert_eq!(PrimeScalar::new(7, 2).ord().unwrap(), 3);
        assert_eq!(PrimeScalar::new(7, 0).ord(), Err(ScalarError::NotAUnit));
        assert_eq!(z(6, 2).ord().unwrap(), Some(3));
        assert_eq!(z(6, 3).ord().unwrap(), Some(2));
    }

    #[test]
    fn roots_cycle() {
        for m in 1..=12 {
            assert!(z(m, m as i64).is_one());
            for j in 1..m as i64 {
                assert!(!z(m, j).is_one(), "ζ_{}^{} = 1", m, j);
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::Cyclotomic(12);
        let a = &(&f.from_int(3) + &z(12, 1)) - &z(12, 5);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(f.zero().inv(), Err(ScalarError::NotAUnit));
    }

    #[test]
    fn binomials() {
        let q = z(5, 1);
        let b = q_binomial(2, 1, &q).unwrap();
        assert_eq!(b, &Field::Cyclotomic(5).one() + &q);
        assert_eq!(q_binomial(4, 2, &Field::Cyclotomic(1).one()).unwrap(), Field::Cyclotomic(1).from_int(6));
        assert!(q_binomial(3, 1, &z(3, 1)).unwrap().is_zero());
        assert!(q_binomial(2, 3, &q).is_err());
    }

    #[test]
    fn vanishing_examples() {
        assert!(binom_vanishes(6, &z(6, 1)));
        assert!(!binom_vanishes(4, &z(6, 1)));
        assert!(binom_vanishes(2, &Field::Prime(2).one()));
    }

    #[test]
    fn prime_root() {
        assert_eq!(primitive_root(7), 3);
        let f = Field::Prime(7);
        assert_eq!(f.root(6), f.one());
        assert_eq!(f.root(2).ord().unwrap(), Some(3));
    }

    #[test]
    fn display() {
        let f = Field::Cyclotomic(4);
        let a = &f.from_int(1) - &z(4, 1);
        assert_eq!(a.to_string(), "1 - z");
        assert_eq!(f.zero().to_string(), "0");
        let h = f.from_rational(&Q::new(BigInt::from(-1), BigInt::from(2))).unwrap();
        assert_eq!(h.to_literal(), vec!["-1/2".to_string(), "0".to_string()]);
    }
}
