//! Mappings GF(q) → GF(q) as reduced polynomials and as value tables, and
//! the Dembowski-Ostrom / affine classification of their exponents.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::gf::{FieldElement, FiniteField, GfError};

/// Largest field for Lagrange interpolation.
pub const MAX_INTERPOLATION_ORDER: u32 = 1 << 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuncError {
    #[error("mappings live over different fields")]
    FieldMismatch,
    #[error("value table has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("field of order {0} is too large for interpolation")]
    TooLarge(u32),
    #[error("invalid polynomial spec {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Reduces an exponent so that `x^e` and `x^reduced` agree on GF(q) and the
/// result lies in `[0, q)`.
pub fn reduce_exponent(e: u64, q: u32) -> u32 {
    if e < q as u64 {
        e as u32
    } else {
        ((e - 1) % (q as u64 - 1) + 1) as u32
    }
}

/// Values of a mapping, indexed by input encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    field: FiniteField,
    values: Vec<u32>,
}

impl ValueTable {
    pub fn new(field: &FiniteField, values: Vec<u32>) -> Result<Self, FuncError> {
        let q = field.order() as usize;
        if values.len() != q {
            return Err(FuncError::WrongLength {
                expected: q,
                got: values.len(),
            });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= field.order()) {
            return Err(GfError::OutOfRange {
                value: v as u64,
                q: field.order(),
            }
            .into());
        }
        Ok(ValueTable {
            field: field.clone(),
            values,
        })
    }

    pub fn from_fn(field: &FiniteField, f: impl Fn(u32) -> u32) -> Self {
        ValueTable {
            field: field.clone(),
            values: field.elements().map(f).collect(),
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: u32) -> u32 {
        self.values[x as usize]
    }

    pub fn add(&self, other: &ValueTable) -> Result<ValueTable, FuncError> {
        if self.field != other.field {
            return Err(FuncError::FieldMismatch);
        }
        Ok(ValueTable::from_fn(&self.field, |x| self.field.add(self.get(x), other.get(x))))
    }

    pub fn interpolate(&self) -> Result<PolyMap, FuncError> {
        interpolate(&self.field, &self.values)
    }
}

/// A polynomial of degree `< q`, stored densely: `coeffs[i]` multiplies `x^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap {
    field: FiniteField,
    coeffs: Vec<u32>,
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMap[{}]({})", self.field.spec(), self.to_sparse())
    }
}

impl PolyMap {
    pub fn zero(field: &FiniteField) -> Self {
        PolyMap {
            field: field.clone(),
            coeffs: vec![0; field.order() as usize],
        }
    }

    /// `c·x^d`, with `d` reduced to the canonical range.
    pub fn monomial(field: &FiniteField, d: u64, c: u32) -> Self {
        Self::from_terms(field, &[(d, c)])
    }

    /// Sum of `c·x^e` terms; exponents are reduced and like terms combined.
    pub fn from_terms(field: &FiniteField, terms: &[(u64, u32)]) -> Self {
        let mut f = Self::zero(field);
        for &(e, c) in terms {
            let e = reduce_exponent(e, field.order()) as usize;
            f.coeffs[e] = field.add(f.coeffs[e], c % field.order());
        }
        f
    }

    pub fn from_coeffs(field: &FiniteField, coeffs: Vec<u32>) -> Result<Self, FuncError> {
        let q = field.order() as usize;
        if coeffs.len() != q {
            return Err(FuncError::WrongLength {
                expected: q,
                got: coeffs.len(),
            });
        }
        Ok(PolyMap {
            field: field.clone(),
            coeffs,
        })
    }

    /// Parses `"e1:c1,e2:c2,..."`.
    pub fn parse_sparse(field: &FiniteField, spec: &str) -> Result<Self, FuncError> {
        let bad = || FuncError::BadSpec(spec.to_string());
        let mut terms = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (e, c) = part.split_once(':').ok_or_else(bad)?;
            let e: u64 = e.trim().parse().map_err(|_| bad())?;
            let c: u32 = c.trim().parse().map_err(|_| bad())?;
            if c >= field.order() {
                return Err(bad());
            }
            terms.push((e, c));
        }
        Ok(Self::from_terms(field, &terms))
    }

    /// Nonzero terms as `"e:c"` pairs in increasing exponent; `"0:0"` for zero.
    pub fn to_sparse(&self) -> String {
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("{e}:{c}")).collect();
        if parts.is_empty() {
            "0:0".into()
        } else {
            parts.join(",")
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (e as u32, c))
    }

    /// Horner evaluation on a raw encoding.
    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn evaluate(&self, x: &FieldElement) -> Result<FieldElement, FuncError> {
        if x.field() != &self.field {
            return Err(FuncError::FieldMismatch);
        }
        Ok(self.field.element(self.eval(x.value()))?)
    }

    /// All values, evaluated term by term.
    pub fn table(&self) -> ValueTable {
        let f = &self.field;
        let terms: Vec<(u32, u32)> = self.terms().collect();
        ValueTable::from_fn(f, |x| {
            terms
                .iter()
                .fold(0, |acc, &(e, c)| f.add(acc, f.mul(c, f.pow(x, e as u64))))
        })
    }

    pub fn add(&self, other: &PolyMap) -> Result<PolyMap, FuncError> {
        if self.field != other.field {
            return Err(FuncError::FieldMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(PolyMap {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: u32) -> PolyMap {
        PolyMap {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        }
    }

    /// The mapping `x ↦ f(x)^p`, reduced.
    pub fn frobenius_twist(&self) -> PolyMap {
        let f = &self.field;
        let p = f.characteristic() as u64;
        let terms: Vec<(u64, u32)> = self
            .terms()
            .map(|(e, c)| (e as u64 * p, f.pow(c, p)))
            .collect();
        Self::from_terms(f, &terms)
    }

    pub fn classify(&self) -> DoClass {
        classify(self)
    }
}

/// Unique reduced polynomial with the given value table:
/// `a_0 = f(0)` and `a_i = -Σ_c f(c)·c^(q-1-i)` for `i ≥ 1`.
pub fn interpolate(field: &FiniteField, values: &[u32]) -> Result<PolyMap, FuncError> {
    let q = field.order();
    if values.len() != q as usize {
        return Err(FuncError::WrongLength {
            expected: q as usize,
            got: values.len(),
        });
    }
    if q > MAX_INTERPOLATION_ORDER {
        return Err(FuncError::TooLarge(q));
    }
    let mut sums = vec![0u32; q as usize];
    for c in 0..q {
        let fc = values[c as usize];
        if fc == 0 {
            continue;
        }
        if c == 0 {
            // only the 0^0 term at i = q-1 survives
            let i = (q - 1) as usize;
            sums[i] = field.add(sums[i], fc);
            continue;
        }
        let mut power = fc;
        for i in (1..q as usize).rev() {
            sums[i] = field.add(sums[i], power);
            power = field.mul(power, c);
        }
    }
    let mut coeffs: Vec<u32> = sums.into_iter().map(|s| field.neg(s)).collect();
    coeffs[0] = values[0];
    PolyMap::from_coeffs(field, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum DoTag {
    #[serde(rename = "DO")]
    Do,
    Affine,
    #[serde(rename = "AffineDO")]
    AffineDo,
    General,
}

impl fmt::Display for DoTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DoTag::Do => "DO",
            DoTag::Affine => "Affine",
            DoTag::AffineDo => "AffineDO",
            DoTag::General => "General",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoClass {
    pub tag: DoTag,
    /// DO and affine parts whose sum is the input, unless the tag is General.
    pub witness: Option<(PolyMap, PolyMap)>,
}

/// Exponents `p^i + p^j` with `i ≤ j < m` (odd `p`) or `i < j < m` (`p = 2`).
pub fn do_exponents(field: &FiniteField) -> Vec<u32> {
    let (p, m) = (field.characteristic() as u64, field.degree());
    let mut out = Vec::new();
    for i in 0..m {
        for j in i..m {
            if p == 2 && i == j {
                continue;
            }
            out.push((p.pow(i) + p.pow(j)) as u32);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `0` and the Frobenius exponents `p^i`, `i < m`.
pub fn affine_exponents(field: &FiniteField) -> Vec<u32> {
    let (p, m) = (field.characteristic(), field.degree());
    let mut out: Vec<u32> = std::iter::once(0).chain((0..m).map(|i| p.pow(i))).collect();
    out.sort_unstable();
    out
}

pub fn classify(f: &PolyMap) -> DoClass {
    let do_set = do_exponents(&f.field);
    let affine_set = affine_exponents(&f.field);
    let mut do_terms = BTreeMap::new();
    let mut affine_terms = BTreeMap::new();
    let mut general = false;
    for (e, c) in f.terms() {
        if do_set.binary_search(&e).is_ok() {
            do_terms.insert(e as u64, c);
        } else if affine_set.binary_search(&e).is_ok() {
            affine_terms.insert(e as u64, c);
        } else {
            general = true;
        }
    }
    let tag = if general {
        DoTag::General
    } else if affine_terms.is_empty() {
        DoTag::Do
    } else if do_terms.is_empty() {
        DoTag::Affine
    } else {
        DoTag::AffineDo
    };
    let witness = (!general).then(|| {
        let part = |t: &BTreeMap<u64, u32>| {
            let terms: Vec<(u64, u32)> = t.iter().map(|(&e, &c)| (e, c)).collect();
            PolyMap::from_terms(&f.field, &terms)
        };
        (part(&do_terms), part(&affine_terms))
    });
    DoClass { tag, witness }
}
