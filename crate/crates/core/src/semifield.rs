//! Pre-semifields on GF(p)^m: axiom checks, construction from planar
//! functions, the identity-repair isotope, the opposite multiplication, and
//! the spread of a semifield.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::funcmaps::{DoTag, FuncError, PolyMap, ValueTable, MAX_INTERPOLATION_ORDER};
use crate::gf::{FiniteField, GfError};
use crate::planar::{is_planar_even_table, is_planar_odd_table, PlanarError};

/// Largest order whose product is stored as a table.
pub const MAX_TABLE_ORDER: u32 = 1 << 10;
/// Largest order for which distributivity is checked over all triples.
pub const MAX_TRIPLE_ORDER: u32 = 64;
/// Largest order for spread construction.
pub const MAX_SPREAD_ORDER: u32 = 1 << 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemifieldError {
    #[error("function is not planar (failing a = {0})")]
    NotPlanar(u32),
    #[error("order {0} is too large for this operation")]
    TooLarge(u32),
    #[error("identity repair needs a nonzero element")]
    ZeroElement,
    #[error("axioms fail: {0}")]
    AxiomsFail(String),
    #[error("product table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("malformed semifield text: {0}")]
    Parse(String),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Func(#[from] FuncError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Product {
    Table(Arc<Vec<u32>>),
    Field,
    /// `x^(p^k) y + x y^(p^k)`.
    Albert(u32),
}

/// How a pre-semifield was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Origin {
    FieldProduct,
    Albert { k: u32 },
    FromPlanar { convention: String },
    /// `x*y = R_e⁻¹(x) ∘ L_e⁻¹(y)`; `x∘y = F(x) * G(y)` with the recorded maps.
    IdentityRepair { e: u32, f_map: Vec<u32>, g_map: Vec<u32> },
    Opposite,
    Table,
}

#[derive(Clone, Debug)]
pub struct PreSemifield {
    field: FiniteField,
    product: Product,
    origin: Origin,
    commutative: bool,
    identity: Option<u32>,
    warnings: Vec<String>,
}

impl PartialEq for PreSemifield {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && (self.product == other.product
                || (0..self.order()).all(|x| (0..self.order()).all(|y| self.mul(x, y) == other.mul(x, y))))
    }
}

impl PreSemifield {
    fn build(field: &FiniteField, product: Product, origin: Origin) -> Self {
        let mut s = PreSemifield {
            field: field.clone(),
            product,
            origin,
            commutative: false,
            identity: None,
            warnings: Vec::new(),
        };
        s.commutative = match s.product {
            Product::Field | Product::Albert(_) => true,
            Product::Table(_) => s.scan_commutative(),
        };
        s.identity = s.scan_identity();
        s
    }

    pub fn field_product(field: &FiniteField) -> Self {
        Self::build(field, Product::Field, Origin::FieldProduct)
    }

    pub fn albert(field: &FiniteField, k: u32) -> Self {
        Self::build(field, Product::Albert(k), Origin::Albert { k })
    }

    pub fn from_table(field: &FiniteField, table: Vec<u32>) -> Result<Self, SemifieldError> {
        Self::from_table_with_origin(field, table, Origin::Table)
    }

    fn from_table_with_origin(field: &FiniteField, table: Vec<u32>, origin: Origin) -> Result<Self, SemifieldError> {
        let q = field.order() as usize;
        if table.len() != q * q {
            return Err(SemifieldError::TableSize {
                expected: q * q,
                got: table.len(),
            });
        }
        if let Some(&v) = table.iter().find(|&&v| v as usize >= q) {
            return Err(GfError::OutOfRange {
                value: v as u64,
                q: field.order(),
            }
            .into());
        }
        Ok(Self::build(field, Product::Table(Arc::new(table)), origin))
    }

    pub fn from_fn(field: &FiniteField, op: impl Fn(u32, u32) -> u32 + Sync) -> Result<Self, SemifieldError> {
        let q = field.order();
        if q > MAX_TABLE_ORDER {
            return Err(SemifieldError::TooLarge(q));
        }
        let table: Vec<u32> = (0..q)
            .into_par_iter()
            .flat_map_iter(|x| (0..q).map(move |y| (x, y)))
            .map(|(x, y)| op(x, y))
            .collect();
        Self::from_table(field, table)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn identity(&self) -> Option<u32> {
        self.identity
    }

    pub fn has_identity(&self) -> bool {
        self.identity.is_some()
    }

    /// Non-fatal remarks from construction, such as a planar function that
    /// is not affine Dembowski-Ostrom.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let f = &self.field;
        match &self.product {
            Product::Table(t) => t[(x * f.order() + y) as usize],
            Product::Field => f.mul(x, y),
            Product::Albert(k) => f.add(
                f.mul(f.frobenius(x, *k), y),
                f.mul(x, f.frobenius(y, *k)),
            ),
        }
    }

    /// Row-major product table, materialized if needed.
    pub fn table(&self) -> Result<Arc<Vec<u32>>, SemifieldError> {
        match &self.product {
            Product::Table(t) => Ok(t.clone()),
            _ => {
                let q = self.order();
                if q > MAX_TABLE_ORDER {
                    return Err(SemifieldError::TooLarge(q));
                }
                Ok(Arc::new(
                    (0..q).flat_map(|x| (0..q).map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)).collect(),
                ))
            }
        }
    }

    /// The map `x ↦ x∘x`.
    pub fn diagonal(&self) -> ValueTable {
        ValueTable::from_fn(&self.field, |x| self.mul(x, x))
    }

    fn scan_commutative(&self) -> bool {
        let q = self.order();
        (0..q).all(|x| (x + 1..q).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    fn scan_identity(&self) -> Option<u32> {
        let q = self.order();
        (1..q).find(|&e| (0..q).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// `x ⋆ y := y ∘ x`.
    pub fn opposite(&self) -> PreSemifield {
        let product = match &self.product {
            Product::Table(t) => {
                let q = self.order() as usize;
                let mut out = vec![0; q * q];
                for x in 0..q {
                    for y in 0..q {
                        out[y * q + x] = t[x * q + y];
                    }
                }
                Product::Table(Arc::new(out))
            }
            commutative => commutative.clone(),
        };
        PreSemifield {
            field: self.field.clone(),
            product,
            origin: Origin::Opposite,
            commutative: self.commutative,
            identity: self.identity,
            warnings: self.warnings.clone(),
        }
    }

    /// `(p, m, flags)` header followed by the row-major table.
    pub fn to_text(&self) -> Result<String, SemifieldError> {
        let table = self.table()?;
        let q = self.order() as usize;
        let mut out = format!(
            "presemifield {} commutative={} identity={}\n",
            self.field.spec(),
            self.commutative,
            self.identity.map_or("none".to_string(), |e| e.to_string())
        );
        for row in table.chunks(q) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<Self, SemifieldError> {
        let bad = |why: &str| SemifieldError::Parse(why.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("presemifield") {
            return Err(bad("missing 'presemifield' header"));
        }
        let field = FiniteField::from_spec(parts.next().ok_or_else(|| bad("missing field"))?)?;
        let mut table = Vec::new();
        for line in lines {
            for tok in line.split_whitespace() {
                table.push(tok.parse::<u32>().map_err(|_| bad(&format!("bad entry {tok:?}")))?);
            }
        }
        let s = Self::from_table(&field, table)?;
        // the flags in the header are recomputed, but must agree
        for flag in parts {
            let ok = match flag.split_once('=') {
                Some(("commutative", v)) => v == s.commutative.to_string(),
                Some(("identity", v)) => v == s.identity.map_or("none".to_string(), |e| e.to_string()),
                _ => false,
            };
            if !ok {
                return Err(bad(&format!("header flag {flag:?} does not match the table")));
            }
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    /// Additive group with identity 0; holds whenever every product is an
    /// element of the field.
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
    pub s4: bool,
    /// `(x, y, z)` with `x∘(y+z) ≠ x∘y + x∘z` (left) or `(x+y)∘z ≠ x∘z + y∘z` (right).
    pub s2_witness: Option<(String, u32, u32, u32)>,
    /// Nonzero `(x, y)` with `x∘y = 0`.
    pub s3_witness: Option<(u32, u32)>,
    pub identity: Option<u32>,
    /// Whether distributivity was checked on every triple (or an equivalent
    /// complete generator check) rather than on random samples.
    pub exhaustive: bool,
}

impl AxiomReport {
    pub fn presemifield(&self) -> bool {
        self.s1 && self.s2 && self.s3
    }

    pub fn semifield(&self) -> bool {
        self.presemifield() && self.s4
    }
}

/// Number of random triples for the sampled distributivity check.
const SAMPLED_TRIPLES: usize = 200_000;
/// Default seed for sampled distributivity checks.
pub const AXIOM_SEED: u64 = 0x5eed;

fn left_witness(s: &PreSemifield, x: u32, y: u32, z: u32) -> bool {
    let f = &s.field;
    s.mul(x, f.add(y, z)) != f.add(s.mul(x, y), s.mul(x, z))
}

fn right_witness(s: &PreSemifield, x: u32, y: u32, z: u32) -> bool {
    let f = &s.field;
    s.mul(f.add(x, y), z) != f.add(s.mul(x, z), s.mul(y, z))
}

fn distributivity(s: &PreSemifield, seed: u64) -> (Option<(String, u32, u32, u32)>, bool) {
    let f = &s.field;
    let q = f.order();
    let scan = |zs: &[u32]| -> Option<(String, u32, u32, u32)> {
        (0..q).into_par_iter().find_map_first(|x| {
            for y in 0..q {
                for &z in zs {
                    if left_witness(s, x, y, z) {
                        return Some(("left".to_string(), x, y, z));
                    }
                    if right_witness(s, y, z, x) {
                        return Some(("right".to_string(), y, z, x));
                    }
                }
            }
            None
        })
    };
    if q <= MAX_TRIPLE_ORDER {
        let all: Vec<u32> = f.elements().collect();
        return (scan(&all), true);
    }
    if q <= MAX_TABLE_ORDER {
        // g(y + b) = g(y) + g(b) for all y and all basis vectors b forces
        // additivity, since every element is a sum of basis vectors
        let basis: Vec<u32> = (0..f.degree()).map(|i| f.characteristic().pow(i)).collect();
        return (scan(&basis), true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLED_TRIPLES {
        let (x, y, z) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
        if left_witness(s, x, y, z) {
            return (Some(("left".into(), x, y, z)), false);
        }
        if right_witness(s, x, y, z) {
            return (Some(("right".into(), x, y, z)), false);
        }
    }
    (None, false)
}

pub fn check_axioms(s: &PreSemifield) -> AxiomReport {
    check_axioms_seeded(s, AXIOM_SEED)
}

/// [`check_axioms`] with an explicit seed for the sampled distributivity
/// check used above [`MAX_TABLE_ORDER`].
pub fn check_axioms_seeded(s: &PreSemifield, seed: u64) -> AxiomReport {
    let q = s.order();
    let (s2_witness, exhaustive) = distributivity(s, seed);
    let s3_witness = (1..q)
        .into_par_iter()
        .find_map_first(|x| (1..q).find(|&y| s.mul(x, y) == 0).map(|y| (x, y)));
    let identity = s.identity;
    AxiomReport {
        s1: match &s.product {
            Product::Table(t) => t.iter().all(|&v| v < q),
            _ => true,
        },
        s2: s2_witness.is_none(),
        s3: s3_witness.is_none(),
        s4: identity.is_some(),
        s2_witness,
        s3_witness,
        identity,
        exhaustive,
    }
}

fn not_affine_do_warning(table: &ValueTable) -> Result<Option<String>, SemifieldError> {
    if table.field().order() > MAX_INTERPOLATION_ORDER {
        return Ok(Some("field too large to classify the planar function".into()));
    }
    let tag = table.interpolate()?.classify().tag;
    Ok((tag == DoTag::General).then(|| "NotAffineDO: planar function is not affine Dembowski-Ostrom".into()))
}

/// `x∘y = f(x+y) - f(x) - f(y) + f(0)` for a planar `f` in odd characteristic.
pub fn presemifield_from_planar_odd(f: &PolyMap) -> Result<PreSemifield, SemifieldError> {
    presemifield_from_planar_odd_table(&f.table())
}

pub fn presemifield_from_planar_odd_table(f: &ValueTable) -> Result<PreSemifield, SemifieldError> {
    let field = f.field();
    let verdict = is_planar_odd_table(f)?;
    if let Some(a) = verdict.failing_a {
        return Err(SemifieldError::NotPlanar(a));
    }
    let v = f.values();
    let mut s = PreSemifield::from_fn(field, |x, y| {
        let t = field.sub(v[field.add(x, y) as usize], v[x as usize]);
        field.add(field.sub(t, v[y as usize]), v[0])
    })?;
    s.origin = Origin::FromPlanar {
        convention: "odd".into(),
    };
    s.warnings.extend(not_affine_do_warning(f)?);
    Ok(s)
}

/// `x∘y = f(x+y) + f(x) + f(y) + f(0) + xy` for a planar `f` over GF(2^m).
pub fn presemifield_from_planar_even(f: &PolyMap) -> Result<PreSemifield, SemifieldError> {
    presemifield_from_planar_even_table(&f.table())
}

pub fn presemifield_from_planar_even_table(f: &ValueTable) -> Result<PreSemifield, SemifieldError> {
    let field = f.field();
    let verdict = is_planar_even_table(f)?;
    if let Some(a) = verdict.failing_a {
        return Err(SemifieldError::NotPlanar(a));
    }
    let v = f.values();
    let mut s = PreSemifield::from_fn(field, |x, y| {
        v[(x ^ y) as usize] ^ v[x as usize] ^ v[y as usize] ^ v[0] ^ field.mul(x, y)
    })?;
    s.origin = Origin::FromPlanar {
        convention: "even".into(),
    };
    s.warnings.extend(not_affine_do_warning(f)?);
    Ok(s)
}

fn invert_permutation(map: &[u32]) -> Option<Vec<u32>> {
    let mut inv = vec![u32::MAX; map.len()];
    for (i, &v) in map.iter().enumerate() {
        if inv[v as usize] != u32::MAX {
            return None;
        }
        inv[v as usize] = i as u32;
    }
    Some(inv)
}

/// The isotope `x*y = R_e⁻¹(x) ∘ L_e⁻¹(y)` with `R_e(x) = x∘e` and
/// `L_e(y) = e∘y`; its identity is `e∘e`. Defaults to `e = 1`.
pub fn to_semifield(s: &PreSemifield, e: Option<u32>) -> Result<PreSemifield, SemifieldError> {
    let e = e.unwrap_or(1);
    if e == 0 {
        return Err(SemifieldError::ZeroElement);
    }
    s.field.element(e)?;
    let q = s.order();
    if q > MAX_TABLE_ORDER {
        return Err(SemifieldError::TooLarge(q));
    }
    let f_map: Vec<u32> = (0..q).map(|x| s.mul(x, e)).collect();
    let g_map: Vec<u32> = (0..q).map(|y| s.mul(e, y)).collect();
    let axioms = || SemifieldError::AxiomsFail(format!("multiplication by {e} is not a bijection"));
    let r_inv = invert_permutation(&f_map).ok_or_else(axioms)?;
    let l_inv = invert_permutation(&g_map).ok_or_else(axioms)?;
    let mut out = PreSemifield::from_fn(&s.field, |x, y| s.mul(r_inv[x as usize], l_inv[y as usize]))?;
    out.origin = Origin::IdentityRepair { e, f_map, g_map };
    out.warnings = s.warnings.clone();
    Ok(out)
}

/// `q + 1` subspaces of GF(p)^(2m), each given by `m` basis vectors written
/// as digit vectors `(x digits, y digits)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spread {
    pub p: u32,
    pub m: u32,
    pub subspaces: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadReport {
    pub count: usize,
    pub dimensions_ok: bool,
    /// First pair of subspaces meeting nontrivially.
    pub bad_pair: Option<(usize, usize)>,
}

impl SpreadReport {
    pub fn ok(&self, q: u32) -> bool {
        self.count == q as usize + 1 && self.dimensions_ok && self.bad_pair.is_none()
    }
}

/// Rank of a matrix over GF(p) by Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    let mut a: Vec<Vec<u32>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = (1..p).find(|&i| a[rank][c] * i % p == 1).expect("p is prime");
        for v in a[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let factor = a[r][c];
                for k in 0..cols {
                    a[r][k] = (a[r][k] + (p - factor) * a[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl Spread {
    pub fn verify(&self) -> SpreadReport {
        let dim = self.m as usize;
        let dimensions_ok = self
            .subspaces
            .iter()
            .all(|b| b.len() == dim && rank_mod_p(b, self.p) == dim);
        let n = self.subspaces.len();
        let bad_pair = (0..n).into_par_iter().find_map_first(|i| {
            (i + 1..n).find_map(|j| {
                let mut stacked = self.subspaces[i].clone();
                stacked.extend(self.subspaces[j].iter().cloned());
                (rank_mod_p(&stacked, self.p) != 2 * dim).then_some((i, j))
            })
        });
        SpreadReport {
            count: n,
            dimensions_ok,
            bad_pair,
        }
    }

    /// One line per subspace, each basis vector `(x, y)` written as the hex
    /// encoding of `x + q·y`.
    pub fn to_text(&self) -> String {
        let q = (self.p as u64).pow(self.m);
        let mut out = String::new();
        for basis in &self.subspaces {
            let words: Vec<String> = basis
                .iter()
                .map(|v| {
                    let enc = v.iter().rev().fold(0u64, |acc, &d| acc * self.p as u64 + d as u64);
                    debug_assert!(enc < q * q);
                    format!("{enc:x}")
                })
                .collect();
            writeln!(out, "{}", words.join(" ")).unwrap();
        }
        out
    }
}

/// `{(x, a∘x)}` for every `a`, and `{(0, x)}`.
pub fn spread_from_semifield(s: &PreSemifield) -> Result<Spread, SemifieldError> {
    let f = &s.field;
    let q = f.order();
    if q > MAX_SPREAD_ORDER {
        return Err(SemifieldError::TooLarge(q));
    }
    let report = check_axioms(s);
    if !report.presemifield() {
        return Err(SemifieldError::AxiomsFail(format!("{report:?}")));
    }
    let (p, m) = (f.characteristic(), f.degree());
    let basis: Vec<u32> = (0..m).map(|i| p.pow(i)).collect();
    let vector = |x: u32, y: u32| {
        let mut v = f.digits(x);
        v.extend(f.digits(y));
        v
    };
    let mut subspaces: Vec<Vec<Vec<u32>>> = (0..q)
        .map(|a| basis.iter().map(|&b| vector(b, s.mul(a, b))).collect())
        .collect();
    subspaces.push(basis.iter().map(|&b| vector(0, b)).collect());
    Ok(Spread { p, m, subspaces })
}
