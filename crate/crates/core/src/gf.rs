//! Finite fields GF(p^m) with a fixed irreducible modulus.
//!
//! Elements are encoded as integers in `[0, q)`. The base-`p` digits of an
//! encoding are the coefficients of the representing polynomial, lowest
//! degree first, so for `p = 2` addition of encodings is bitwise XOR.
//!
//! A [`FiniteField`] is a cheap, shareable handle; all arithmetic on raw
//! encodings goes through it. [`FieldElement`] pairs an encoding with its
//! field for callers that want mismatch checking.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order supported.
pub const MAX_ORDER: u64 = 1 << 20;

const BINARY_TABLE_LIMIT: u32 = 1 << 16;
const ODD_TABLE_LIMIT: u32 = 59_049;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the supported limit of 2^20")]
    TooLarge { p: u32, m: u32 },
    #[error("modulus must be monic of degree {degree} with coefficients below {p}")]
    MalformedModulus { p: u32, degree: u32 },
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{sub} does not divide the extension degree {m}")]
    NotADivisor { sub: u32, m: u32 },
    #[error("encoding {value} out of range for a field of order {q}")]
    OutOfRange { value: u64, q: u32 },
    #[error("invalid field spec {0:?}")]
    BadSpec(String),
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

enum Multiplier {
    /// `exp` is doubled so that `exp[log a + log b]` needs no reduction.
    Log { log: Vec<u32>, exp: Vec<u32> },
    /// Carry-less multiply then reduce; `p = 2` only. Bits of the modulus,
    /// leading term included.
    Clmul { modulus: u64 },
    Schoolbook,
}

/// Odd-characteristic addition through two half-width digit tables.
struct SplitAdder {
    lo_base: u32,
    hi_base: u32,
    lo: Vec<u32>,
    hi: Vec<u32>,
    neg: Vec<u32>,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    mul: Multiplier,
    adder: Option<SplitAdder>,
}

/// Arithmetic context for GF(p^m).
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.spec())
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl FiniteField {
    /// Builds GF(p^m). Without an explicit modulus the lexicographically
    /// smallest monic irreducible of degree `m` is used, comparing
    /// coefficient vectors from the constant term upwards.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER);
        let q = q.ok_or(GfError::TooLarge { p, m })? as u32;
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m as usize + 1 || c[m as usize] != 1 || c.iter().any(|&x| x >= p) {
                    return Err(GfError::MalformedModulus { p, degree: m });
                }
                if !is_irreducible(p, c) {
                    return Err(GfError::ReducibleModulus(p));
                }
                c.to_vec()
            }
            None => smallest_irreducible(p, m),
        };
        let adder = (p != 2).then(|| SplitAdder::new(p, m));
        let mut inner = Inner {
            p,
            m,
            q,
            modulus,
            mul: Multiplier::Schoolbook,
            adder,
        };
        if p == 2 {
            let bits = inner
                .modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i));
            inner.mul = Multiplier::Clmul { modulus: bits };
        }
        let use_tables = if p == 2 {
            q <= BINARY_TABLE_LIMIT
        } else {
            q <= ODD_TABLE_LIMIT
        };
        if use_tables {
            inner.mul = build_log_tables(&inner);
        }
        Ok(FiniteField(Arc::new(inner)))
    }

    /// Parses `"p^m"`, `"p"` or `"p^m/c0,c1,...,cm"`.
    pub fn from_spec(spec: &str) -> Result<Self, GfError> {
        let bad = || GfError::BadSpec(spec.to_string());
        let (order, modulus) = match spec.split_once('/') {
            Some((o, c)) => (o, Some(c)),
            None => (spec, None),
        };
        let (p, m) = match order.trim().split_once('^') {
            Some((p, m)) => (p.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?),
            None => (order.trim().parse().map_err(|_| bad())?, 1),
        };
        match modulus {
            Some(c) => {
                let coeffs: Vec<u32> = c
                    .split(',')
                    .map(|s| s.trim().parse::<u32>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad())?;
                Self::new(p, m, Some(&coeffs))
            }
            None => Self::new(p, m, None),
        }
    }

    /// Canonical spec string with the modulus spelled out.
    pub fn spec(&self) -> String {
        let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}/{}", self.0.p, self.0.m, coeffs.join(","))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, GfError> {
        if value >= self.0.q {
            return Err(GfError::OutOfRange {
                value: value as u64,
                q: self.0.q,
            });
        }
        Ok(FieldElement {
            value,
            field: self.clone(),
        })
    }

    /// Base-`p` digits of an encoding, constant term first.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut a = a;
        (0..self.0.m)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        let p = self.0.p;
        digits.iter().rev().fold(0, |acc, &d| acc * p + d % p)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.0.adder {
            None => a ^ b,
            Some(t) => t.add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.0.adder {
            None => a,
            Some(t) => t.neg[a as usize],
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        match &self.0.adder {
            None => a ^ b,
            Some(t) => t.add(a, t.neg[b as usize]),
        }
    }

    /// `k * a` for an integer scalar `k`.
    pub fn scale(&self, k: u64, a: u32) -> u32 {
        let k = (k % self.0.p as u64) as u32;
        let digits: Vec<u32> = self.digits(a).iter().map(|&d| d * k % self.0.p).collect();
        self.from_digits(&digits)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.mul {
            Multiplier::Log { log, exp } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[(log[a as usize] + log[b as usize]) as usize]
                }
            }
            Multiplier::Clmul { modulus } => clmul_mod(a, b, *modulus, self.0.m),
            Multiplier::Schoolbook => poly_mul_mod(&self.0, a, b),
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(match &self.0.mul {
            Multiplier::Log { log, exp } => exp[((self.0.q - 1 - log[a as usize]) % (self.0.q - 1)) as usize],
            _ => self.pow(a, self.0.q as u64 - 2),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Multiplier::Log { log, exp } = &self.0.mul {
            let n = (self.0.q - 1) as u64;
            let k = (log[a as usize] as u64 * (e % n)) % n;
            return exp[k as usize];
        }
        let mut base = a;
        let mut e = e;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Discrete logarithm to the table generator, when tables exist.
    pub(crate) fn log_tables(&self) -> Option<(&[u32], &[u32])> {
        match &self.0.mul {
            Multiplier::Log { log, exp } => Some((log, exp)),
            _ => None,
        }
    }

    /// `x^(p^k)`.
    pub fn frobenius(&self, x: u32, k: u32) -> u32 {
        let e = (self.0.p as u64).pow(k % self.0.m);
        self.pow(x, e)
    }

    /// Relative trace from GF(p^m) down to GF(p^s).
    pub fn rel_trace(&self, subfield_degree: u32, x: u32) -> Result<u32, GfError> {
        let s = subfield_degree;
        if s == 0 || self.0.m % s != 0 {
            return Err(GfError::NotADivisor { sub: s, m: self.0.m });
        }
        let mut acc = 0;
        let mut term = x;
        for _ in 0..self.0.m / s {
            acc = self.add(acc, term);
            term = self.frobenius(term, s);
        }
        Ok(acc)
    }

    /// Absolute trace to GF(p), returned as an integer in `[0, p)`.
    pub fn abs_trace(&self, x: u32) -> u32 {
        self.rel_trace(1, x).expect("1 divides every degree")
    }
}

impl FromStr for FiniteField {
    type Err = GfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_spec(s)
    }
}

impl SplitAdder {
    fn new(p: u32, m: u32) -> Self {
        let lo_digits = m / 2;
        let hi_digits = m - lo_digits;
        let lo_base = p.pow(lo_digits);
        let hi_base = p.pow(hi_digits);
        let table = |base: u32, digits: u32| {
            let mut t = vec![0u32; (base * base) as usize];
            for a in 0..base {
                for b in 0..base {
                    let (mut x, mut y, mut r, mut w) = (a, b, 0, 1);
                    for _ in 0..digits {
                        r += ((x % p + y % p) % p) * w;
                        x /= p;
                        y /= p;
                        w *= p;
                    }
                    t[(a * base + b) as usize] = r;
                }
            }
            t
        };
        let lo = table(lo_base, lo_digits);
        let hi = table(hi_base, hi_digits);
        let q = lo_base * hi_base;
        let neg = (0..q)
            .map(|a| {
                let (mut x, mut r, mut w) = (a, 0, 1);
                for _ in 0..m {
                    r += ((p - x % p) % p) * w;
                    x /= p;
                    w *= p;
                }
                r
            })
            .collect();
        SplitAdder {
            lo_base,
            hi_base,
            lo,
            hi,
            neg,
        }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        let (ah, al) = (a / self.lo_base, a % self.lo_base);
        let (bh, bl) = (b / self.lo_base, b % self.lo_base);
        let lo = self.lo[(al * self.lo_base + bl) as usize];
        let hi = self.hi[(ah * self.hi_base + bh) as usize];
        hi * self.lo_base + lo
    }
}

fn clmul_mod(a: u32, b: u32, modulus: u64, m: u32) -> u32 {
    let (a, mut b) = (a as u64, b as u64);
    let mut prod = 0u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            prod ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    for bit in (m..2 * m).rev() {
        if prod >> bit & 1 == 1 {
            prod ^= modulus << (bit - m);
        }
    }
    prod as u32
}

/// Digit-vector multiplication reduced by the modulus. Used for table
/// construction and for fields above the table limits.
fn poly_mul_mod(f: &Inner, a: u32, b: u32) -> u32 {
    let (p, m) = (f.p as u64, f.m as usize);
    let to_digits = |mut x: u32| {
        let mut d = vec![0u64; m];
        for slot in d.iter_mut() {
            *slot = (x % f.p) as u64;
            x /= f.p;
        }
        d
    };
    let (da, db) = (to_digits(a), to_digits(b));
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (m..2 * m).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (k, &mk) in f.modulus.iter().enumerate() {
            let idx = deg - m + k;
            prod[idx] = (prod[idx] + (p - c) * mk as u64) % p;
        }
    }
    prod[..m].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
}

fn build_log_tables(f: &Inner) -> Multiplier {
    let slow = |a: u32, b: u32| match f.mul {
        Multiplier::Clmul { modulus } => clmul_mod(a, b, modulus, f.m),
        _ => poly_mul_mod(f, a, b),
    };
    let slow_pow = |a: u32, mut e: u64| {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = slow(acc, base);
            }
            base = slow(base, base);
            e >>= 1;
        }
        acc
    };
    let n = (f.q - 1) as u64;
    let factors = prime_factors(n);
    let generator = (1..f.q)
        .find(|&g| factors.iter().all(|&r| slow_pow(g, n / r) != 1))
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; f.q as usize];
    let mut x = 1u32;
    for i in 0..n as usize {
        exp[i] = x;
        exp[i + n as usize] = x;
        log[x as usize] = i as u32;
        x = slow(x, generator);
    }
    Multiplier::Log { log, exp }
}

/// Remainder of `num` modulo the monic `den`, coefficients low-degree first.
fn poly_rem(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (k, &c) in den.iter().enumerate() {
                r[shift + k] = (r[shift + k] + (p - lead) * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(p: u32, coeffs: &[u32]) -> bool {
    let deg = coeffs.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut g: Vec<u32> = Vec::with_capacity(d + 1);
            let mut x = n;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if poly_rem(p, coeffs, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for n in 0..count {
        // the constant term is the most significant position in the ordering
        let mut c = vec![0u32; m as usize + 1];
        let mut x = n;
        for i in (0..m as usize).rev() {
            c[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        c[m as usize] = 1;
        if is_irreducible(p, &c) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// An encoding tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    value: u32,
    field: FiniteField,
}

#[allow(clippy::should_implement_trait)]
impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    fn same_field(&self, other: &Self) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn with(&self, value: u32) -> Self {
        FieldElement {
            value,
            field: self.field.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self, GfError> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    pub fn rel_trace(&self, subfield_degree: u32) -> Result<Self, GfError> {
        Ok(self.with(self.field.rel_trace(subfield_degree, self.value)?))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
