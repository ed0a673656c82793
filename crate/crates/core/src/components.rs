//! Boolean functions and their relative difference sets: Walsh and
//! nega-Hadamard spectra in exact arithmetic, bent and negabent tests, the
//! counting criterion in the form-twisted group, the four-block construction
//! from two difference sets, and component functions obtained by projecting
//! a `(2^m, 2^m, 2^m, 1)` set onto an index-2 quotient of its forbidden
//! subgroup.

use std::fmt;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{BilinearForm, CocycleGroup, Group, GroupError, ProductGroup};
use crate::rds::{component_function, project_rds, verify_rds, LinearFunctional, RdsError, RdsVerdict, RelativeDifferenceSet};

/// Largest arity for truth-table functions.
pub const MAX_ARITY: u32 = 24;
/// Largest arity for the group-side constructions.
pub const MAX_GROUP_ARITY: u32 = 15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComponentError {
    #[error("arity {0} is out of range")]
    Arity(u32),
    #[error("truth table has length {got}, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("bad truth table: {0}")]
    BadHex(String),
    #[error("bilinear form has dimension {got}, expected {expected}")]
    FormDimension { expected: usize, got: usize },
    #[error("bilinear form is not symmetric")]
    NotSymmetric,
    #[error("the counting condition fails at a = {a}")]
    CountingFails { a: u64 },
    #[error("{0} is not a difference set")]
    NotDifferenceSet(&'static str),
    #[error("the set is not the graph of a function")]
    NotAGraph,
    #[error("the induced form has no orthonormal basis")]
    NoOrthonormalBasis,
    #[error("projection requires characteristic 2")]
    WrongCharacteristic,
    #[error(transparent)]
    Rds(#[from] RdsError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `f: GF(2)^m → GF(2)`. Input `x` is the integer with bit `i` equal to
/// coordinate `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    m: u32,
    table: Vec<u8>,
}

impl BooleanFunction {
    pub fn new(m: u32, table: Vec<u8>) -> Result<Self, ComponentError> {
        if m > MAX_ARITY {
            return Err(ComponentError::Arity(m));
        }
        if table.len() != 1 << m {
            return Err(ComponentError::TableLength {
                expected: 1 << m,
                got: table.len(),
            });
        }
        let table = table.into_iter().map(|b| b & 1).collect();
        Ok(BooleanFunction { m, table })
    }

    pub fn zero(m: u32) -> Self {
        assert!(m <= MAX_ARITY, "arity out of range");
        BooleanFunction {
            m,
            table: vec![0; 1 << m],
        }
    }

    pub fn from_fn(m: u32, mut f: impl FnMut(u64) -> u32) -> Self {
        assert!(m <= MAX_ARITY, "arity out of range");
        BooleanFunction {
            m,
            table: (0..1u64 << m).map(|x| (f(x) & 1) as u8).collect(),
        }
    }

    /// Sum of monomials, each a bitmask of the variables it multiplies;
    /// mask 0 is the constant 1.
    pub fn from_anf(m: u32, monomials: &[u64]) -> Self {
        Self::from_fn(m, |x| monomials.iter().filter(|&&mono| x & mono == mono).count() as u32)
    }

    /// The function whose truth table is the integer `Σ f(x) 2^x` in
    /// hexadecimal, most significant digit first.
    pub fn from_hex(m: u32, hex: &str) -> Result<Self, ComponentError> {
        if m > MAX_ARITY {
            return Err(ComponentError::Arity(m));
        }
        let hex = hex.trim().trim_start_matches("0x");
        let digits = Self::hex_len(m);
        if hex.len() != digits {
            return Err(ComponentError::BadHex(format!("expected {digits} hex digits, got {}", hex.len())));
        }
        let mut table = vec![0u8; 1 << m];
        for (pos, ch) in hex.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| ComponentError::BadHex(format!("invalid digit {ch:?}")))?;
            for bit in 0..4 {
                let x = 4 * pos + bit;
                if nibble >> bit & 1 == 1 {
                    if x >= table.len() {
                        return Err(ComponentError::BadHex("bits set beyond 2^m".into()));
                    }
                    table[x] = 1;
                }
            }
        }
        Ok(BooleanFunction { m, table })
    }

    pub fn to_hex(&self) -> String {
        let digits = Self::hex_len(self.m);
        (0..digits)
            .rev()
            .map(|pos| {
                let nibble = (0..4)
                    .filter(|&bit| self.table.get(4 * pos + bit) == Some(&1))
                    .fold(0u32, |acc, bit| acc | 1 << bit);
                char::from_digit(nibble, 16).expect("nibble")
            })
            .collect()
    }

    fn hex_len(m: u32) -> usize {
        ((1usize << m) + 3) / 4
    }

    pub fn arity(&self) -> u32 {
        self.m
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    #[inline]
    pub fn eval(&self, x: u64) -> u32 {
        self.table[x as usize] as u32
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b == 1).count()
    }

    /// Inputs where `f = 1`.
    pub fn support(&self) -> Vec<u32> {
        (0..self.table.len() as u32).filter(|&x| self.table[x as usize] == 1).collect()
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

#[inline]
fn dot(a: u64, x: u64) -> u32 {
    (a & x).count_ones() & 1
}

#[inline]
fn sign(bit: u32) -> i64 {
    1 - 2 * (bit as i64 & 1)
}

/// `Σ_x (−1)^{<a,x> + f(x)}`.
pub fn walsh(f: &BooleanFunction, a: u64) -> i64 {
    (0..1u64 << f.m).map(|x| sign(dot(a, x) ^ f.eval(x))).sum()
}

/// All Walsh values by the fast Hadamard transform, indexed by `a`.
pub fn walsh_spectrum(f: &BooleanFunction) -> Vec<i64> {
    let mut v: Vec<i64> = f.table.iter().map(|&b| sign(b as u32)).collect();
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (u, w) in lo.iter_mut().zip(hi.iter_mut()) {
                (*u, *w) = (*u + *w, *u - *w);
            }
        }
        h *= 2;
    }
    v
}

/// Every Walsh value has absolute value `2^{m/2}`; false for odd `m`.
pub fn is_bent(f: &BooleanFunction) -> bool {
    if f.m % 2 == 1 {
        return false;
    }
    let target = 1i64 << (f.m / 2);
    walsh_spectrum(f).iter().all(|w| w.abs() == target)
}

/// Exact Gaussian integer. Spectral values of arity `m` functions are
/// bounded by `2^m` in each component, so `i64` parts and an `i128` norm
/// never overflow within [`MAX_ARITY`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { re: 0, im: 0 };
    pub const ONE: GaussianInt = GaussianInt { re: 1, im: 0 };
    pub const I: GaussianInt = GaussianInt { re: 0, im: 1 };

    pub fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    /// `i^k`.
    pub fn i_pow(k: u32) -> Self {
        match k % 4 {
            0 => GaussianInt::new(1, 0),
            1 => GaussianInt::new(0, 1),
            2 => GaussianInt::new(-1, 0),
            _ => GaussianInt::new(0, -1),
        }
    }

    /// `|z|² = re² + im²`.
    pub fn norm(self) -> i128 {
        self.re as i128 * self.re as i128 + self.im as i128 * self.im as i128
    }

    /// Multiplication by `i`.
    pub fn mul_i(self) -> Self {
        GaussianInt::new(-self.im, self.re)
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianInt::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianInt::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussianInt::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// `Σ_x (−1)^{<x,a> + f(x)} i^{w(x)}` with `w` the Hamming weight.
pub fn nega_spectrum_value(f: &BooleanFunction, a: u64) -> GaussianInt {
    let (mut re, mut im) = (0i64, 0i64);
    for x in 0..1u64 << f.m {
        let s = sign(dot(a, x) ^ f.eval(x));
        match x.count_ones() % 4 {
            0 => re += s,
            1 => im += s,
            2 => re -= s,
            _ => im -= s,
        }
    }
    GaussianInt::new(re, im)
}

/// All nega-Hadamard values, indexed by `a`. Each coordinate contributes a
/// butterfly `(u, v) ↦ (u + iv, u − iv)`.
pub fn nega_spectrum(f: &BooleanFunction) -> Vec<GaussianInt> {
    let mut v: Vec<GaussianInt> = f
        .table
        .iter()
        .map(|&b| GaussianInt::new(sign(b as u32), 0))
        .collect();
    let mut h = 1;
    while h < v.len() {
        v.par_chunks_mut(2 * h).for_each(|block| {
            let (lo, hi) = block.split_at_mut(h);
            for (u, w) in lo.iter_mut().zip(hi.iter_mut()) {
                let iw = w.mul_i();
                (*u, *w) = (*u + iw, *u - iw);
            }
        });
        h *= 2;
    }
    v
}

/// Every nega-Hadamard value has squared modulus exactly `2^m`.
pub fn is_negabent(f: &BooleanFunction) -> bool {
    let target = 1i128 << f.m;
    nega_spectrum(f).iter().all(|z| z.norm() == target)
}

/// CSV rows `a,re,im,modulus2` of the nega-Hadamard spectrum.
pub fn nega_spectrum_csv(f: &BooleanFunction) -> String {
    let mut out = String::from("a,re,im,modulus2\n");
    for (a, z) in nega_spectrum(f).iter().enumerate() {
        writeln!(out, "{a},{},{},{}", z.re, z.im, z.norm()).expect("write to string");
    }
    out
}

fn check_form(f: &BooleanFunction, b: &BilinearForm) -> Result<(), ComponentError> {
    if b.dimension() != f.m as usize {
        return Err(ComponentError::FormDimension {
            expected: f.m as usize,
            got: b.dimension(),
        });
    }
    if !b.is_symmetric() {
        return Err(ComponentError::NotSymmetric);
    }
    Ok(())
}

/// The first `a ≠ 0` for which `f(x+a) + f(x) + B(a,x) = 0` does not have
/// exactly `2^{m−1}` solutions.
fn counting_failure(f: &BooleanFunction, b: &BilinearForm) -> Option<u64> {
    let q = 1u64 << f.m;
    (1..q).into_par_iter().find_first(|&a| {
        let zeros = (0..q).filter(|&x| f.eval(x ^ a) ^ f.eval(x) ^ b.eval(a, x) == 0).count() as u64;
        2 * zeros != q
    })
}

/// True iff `f(x+a) + f(x) + B(a,x) = b` has `2^{m−1}` solutions for every
/// `b` and every `a ≠ 0`.
pub fn verify_counting(f: &BooleanFunction, b: &BilinearForm) -> Result<bool, ComponentError> {
    check_form(f, b)?;
    Ok(counting_failure(f, b).is_none())
}

/// `{(x, f(x))}` in the group `GF(2)^m × GF(2)` twisted by `B`, relative to
/// `{(0, y)}`, without checking the difference property.
pub fn boolean_graph_rds(f: &BooleanFunction, b: &BilinearForm) -> Result<RelativeDifferenceSet, ComponentError> {
    check_form(f, b)?;
    if f.m == 0 || f.m > MAX_GROUP_ARITY {
        return Err(ComponentError::Arity(f.m));
    }
    let g = CocycleGroup::with_form(b.clone())?;
    let forbidden = [g.encode(0, 0), g.encode(0, 1)];
    let set: Vec<u32> = (0..1u32 << f.m).map(|x| g.encode(x, f.eval(x as u64))).collect();
    Ok(RelativeDifferenceSet::new(Group::Cocycle(g), &forbidden, &set)?)
}

/// The `(2^m, 2, 2^m, 2^{m−1})` set `{(x, f(x))}`; fails unless `f`
/// satisfies the counting condition for `B`.
pub fn rds_from_boolean(f: &BooleanFunction, b: &BilinearForm) -> Result<RelativeDifferenceSet, ComponentError> {
    check_form(f, b)?;
    if let Some(a) = counting_failure(f, b) {
        return Err(ComponentError::CountingFails { a });
    }
    boolean_graph_rds(f, b)
}

/// `GF(2)^m` as a product of `m` copies of `Z2`; encodings coincide with the
/// integer form of vectors.
pub fn elementary_abelian(m: u32) -> Result<ProductGroup, ComponentError> {
    Ok(ProductGroup::new(vec![2; m as usize])?)
}

/// Checks that the support of `f` is a difference set in `Z2^m`.
pub fn bent_support_difference_set(f: &BooleanFunction) -> Result<(Vec<u32>, RdsVerdict), ComponentError> {
    if f.m > MAX_GROUP_ARITY {
        return Err(ComponentError::Arity(f.m));
    }
    let g = Group::Product(elementary_abelian(f.m)?);
    let support = f.support();
    let verdict = verify_rds(&g, &[0], &support)?;
    Ok((support, verdict))
}

/// `{0}×D ∪ {1}×E ∪ {2}×(G∖D) ∪ {3}×(G∖E)` in `Z4 × G`, encoded as
/// `t + 4v`, with forbidden subgroup `2Z4 × {0}`. `D` and `E` must verify as
/// ordinary difference sets; the result is returned with its own verdict.
pub fn rds_from_two_difference_sets(
    g: &ProductGroup,
    d: &[u32],
    e: &[u32],
) -> Result<(RelativeDifferenceSet, RdsVerdict), ComponentError> {
    let base = Group::Product(g.clone());
    for (name, set) in [("D", d), ("E", e)] {
        if !verify_rds(&base, &[0], set)?.ok {
            return Err(ComponentError::NotDifferenceSet(name));
        }
    }
    let mut orders = vec![4];
    orders.extend_from_slice(g.cyclic_orders());
    let ambient = Group::Product(ProductGroup::new(orders)?);
    let v = g.order();
    let member = |set: &[u32]| {
        let mut bits = vec![false; v as usize];
        for &x in set {
            bits[x as usize] = true;
        }
        bits
    };
    let (in_d, in_e) = (member(d), member(e));
    let mut set = Vec::with_capacity(2 * v as usize);
    for x in 0..v {
        let blocks = [in_d[x as usize], in_e[x as usize], !in_d[x as usize], !in_e[x as usize]];
        set.extend((0..4).filter(|&t| blocks[t as usize]).map(|t| t + 4 * x));
    }
    let rds = RelativeDifferenceSet::new(ambient, &[0, 2], &set)?;
    let verdict = rds.verify();
    Ok((rds, verdict))
}

/// Identifies `Z4 × Z2^m` with the dot-product group of arity `m + 1`,
/// sending the `Z4` generator to `(e1, 0)` and the `j`-th `Z2` generator to
/// `(e1 + e_{j+1}, 0)`, and reads the image of `set` as a graph `{(x, f(x))}`.
pub fn standard_form_component(m: u32, set: &[u32]) -> Result<BooleanFunction, ComponentError> {
    if m + 1 > MAX_GROUP_ARITY {
        return Err(ComponentError::Arity(m + 1));
    }
    let g = CocycleGroup::with_form(BilinearForm::dot(m as usize + 1))?;
    let group = Group::Cocycle(g.clone());
    let z4 = g.encode(1, 0);
    let z2: Vec<u32> = (0..m).map(|j| g.encode(1 | 2 << j, 0)).collect();
    let image = |code: u32| {
        let (t, mut v) = (code % 4, code / 4);
        let mut acc = group.pow(z4, t as u64);
        for &gen in &z2 {
            if v & 1 == 1 {
                acc = group.op(acc, gen);
            }
            v >>= 1;
        }
        acc
    };
    let size = 1usize << (m + 1);
    let mut table = vec![u8::MAX; size];
    for &code in set {
        if code >= 4 << m {
            return Err(ComponentError::NotAGraph);
        }
        let (x, y) = g.decode(image(code));
        if table[x as usize] != u8::MAX {
            return Err(ComponentError::NotAGraph);
        }
        table[x as usize] = y as u8;
    }
    if table.contains(&u8::MAX) {
        return Err(ComponentError::NotAGraph);
    }
    BooleanFunction::new(m + 1, table)
}

/// A basis `b_1, …, b_m` with `B(b_i, b_j) = δ_ij`, as bitmasks. Exists iff
/// `B` is symmetric, nondegenerate and not alternating.
pub fn orthonormal_basis(b: &BilinearForm) -> Option<Vec<u64>> {
    if !b.is_symmetric() {
        return None;
    }
    let m = b.dimension();
    let mut chosen: Vec<u64> = Vec::with_capacity(m);
    let mut rest: Vec<u64> = (0..m).map(|i| 1u64 << i).collect();
    while !rest.is_empty() {
        // x ↦ B(x, x) is additive, so a unit vector exists in the span of
        // `rest` iff one of its basis vectors is one
        if let Some(i) = rest.iter().position(|&v| b.eval(v, v) == 1) {
            let v = rest.swap_remove(i);
            for w in rest.iter_mut() {
                if b.eval(*w, v) == 1 {
                    *w ^= v;
                }
            }
            chosen.push(v);
            continue;
        }
        // the remainder is alternating: split off a hyperbolic pair (e, f)
        // and trade it together with a unit vector u for three unit vectors
        let e = rest.swap_remove(0);
        let j = rest.iter().position(|&w| b.eval(e, w) == 1)?;
        let f = rest.swap_remove(j);
        let u = chosen.pop()?;
        for w in rest.iter_mut() {
            let (we, wf) = (b.eval(*w, e), b.eval(*w, f));
            if wf == 1 {
                *w ^= e;
            }
            if we == 1 {
                *w ^= f;
            }
        }
        chosen.extend([u ^ e, u ^ f, u ^ e ^ f]);
    }
    let ok = chosen
        .iter()
        .enumerate()
        .all(|(i, &x)| chosen.iter().enumerate().all(|(j, &y)| b.eval(x, y) == (i == j) as u32));
    ok.then_some(chosen)
}

/// Result of projecting a `(2^m, 2^m, 2^m, 1)` set onto `G / ker ℓ`.
#[derive(Clone, Debug)]
pub struct ProjectionOutcome {
    pub projected: RelativeDifferenceSet,
    pub verdict: RdsVerdict,
    /// `x ↦ ℓ(f(x))` in the coordinates of the base field.
    pub component: BooleanFunction,
    /// The form `(x, x') ↦ ℓ(β(x, x'))` governing the quotient group.
    pub form: BilinearForm,
    /// Orthonormal basis of that form.
    pub basis: Vec<u64>,
    /// The component rewritten in orthonormal coordinates, so that the
    /// quotient becomes the dot-product group.
    pub standard: BooleanFunction,
    pub negabent: bool,
}

/// Projects a canonical set `{(x, f(x))}` in a characteristic 2 pair group
/// along `U = ker ℓ`, verifies the image, and identifies the quotient with
/// the dot-product group via an orthonormal basis.
pub fn negabent_from_projection(
    d: &RelativeDifferenceSet,
    ell: &LinearFunctional,
) -> Result<ProjectionOutcome, ComponentError> {
    let Group::Cocycle(g) = d.group() else {
        return Err(RdsError::NotCanonical.into());
    };
    if g.base().characteristic() != 2 || g.fiber().characteristic() != 2 {
        return Err(ComponentError::WrongCharacteristic);
    }
    let values = component_function(d, ell)?;
    let u = ell.kernel_in(g);
    let projected = project_rds(d, &u)?;
    let verdict = projected.verify();

    let m = g.base().degree();
    let component = BooleanFunction::new(m, values.iter().map(|&v| v as u8).collect())?;
    let rows: Vec<u64> = (0..m)
        .map(|i| {
            (0..m).fold(0u64, |row, j| row | (ell.eval(g.beta(1 << i, 1 << j)) as u64) << j)
        })
        .collect();
    let form = BilinearForm::from_rows(rows);
    let basis = orthonormal_basis(&form).ok_or(ComponentError::NoOrthonormalBasis)?;
    let standard = BooleanFunction::from_fn(m, |z| {
        let x = basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| z >> i & 1 == 1)
            .fold(0u64, |acc, (_, &b)| acc ^ b);
        component.eval(x)
    });
    let negabent = is_negabent(&standard);
    Ok(ProjectionOutcome {
        projected,
        verdict,
        component,
        form,
        basis,
        standard,
        negabent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;
    use crate::planar::kantor_planar;
    use crate::funcmaps::ValueTable;
    use crate::rds::rds_from_planar_even_table;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x1x2() -> BooleanFunction {
        BooleanFunction::from_anf(2, &[0b11])
    }

    fn random_function(m: u32, rng: &mut ChaCha8Rng) -> BooleanFunction {
        BooleanFunction::from_fn(m, |_| rng.gen_range(0..2))
    }

    #[test]
    fn hex_round_trip_and_bit_order() {
        let f = x1x2();
        assert_eq!(f.table(), &[0, 0, 0, 1]);
        assert_eq!(f.to_hex(), "8");
        assert_eq!(BooleanFunction::from_hex(2, "8").unwrap(), f);
        let g = BooleanFunction::from_anf(4, &[0b0011, 0b1100]);
        assert_eq!(BooleanFunction::from_hex(4, &g.to_hex()).unwrap(), g);
        assert!(BooleanFunction::from_hex(2, "18").is_err());
        assert!(BooleanFunction::from_hex(1, "4").is_err());
        assert!(BooleanFunction::from_hex(2, "g").is_err());
    }

    #[test]
    fn walsh_examples() {
        let zero = BooleanFunction::zero(3);
        assert_eq!(walsh(&zero, 0), 8);
        assert!((1..8).all(|a| walsh(&zero, a) == 0));
        assert!((0..4).all(|a| walsh(&x1x2(), a).abs() == 2));
        assert!(is_bent(&x1x2()));
        assert!(is_bent(&BooleanFunction::from_anf(4, &[0b0011, 0b1100])));
        assert!(!is_bent(&BooleanFunction::zero(2)));
        assert!(!is_bent(&BooleanFunction::zero(3)));
    }

    #[test]
    fn fast_transforms_match_direct_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 0..=6 {
            let f = random_function(m, &mut rng);
            let w = walsh_spectrum(&f);
            let n = nega_spectrum(&f);
            for a in 0..1u64 << m {
                assert_eq!(w[a as usize], walsh(&f, a));
                assert_eq!(n[a as usize], nega_spectrum_value(&f, a));
            }
        }
    }

    #[test]
    fn nega_examples() {
        let z1 = BooleanFunction::zero(1);
        assert_eq!(nega_spectrum_value(&z1, 0), GaussianInt::new(1, 1));
        assert_eq!(nega_spectrum_value(&z1, 0).norm(), 2);
        assert!(is_negabent(&z1));
        let z2 = BooleanFunction::zero(2);
        assert_eq!(nega_spectrum_value(&z2, 0), GaussianInt::new(0, 2));
        assert!(is_negabent(&z2));
        assert_eq!(nega_spectrum_value(&x1x2(), 0), GaussianInt::new(2, 2));
        assert!(!is_negabent(&x1x2()));
    }

    #[test]
    fn parseval_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in 1..=12 {
            let f = random_function(m, &mut rng);
            let total: i128 = walsh_spectrum(&f).iter().map(|&w| w as i128 * w as i128).sum();
            assert_eq!(total, 1i128 << (2 * m));
            let total: i128 = nega_spectrum(&f).iter().map(|z| z.norm()).sum();
            assert_eq!(total, 1i128 << (2 * m));
        }
    }

    #[test]
    fn counting_examples() {
        assert!(verify_counting(&BooleanFunction::zero(1), &BilinearForm::dot(1)).unwrap());
        assert!(!verify_counting(&x1x2(), &BilinearForm::dot(2)).unwrap());
        let skew = BilinearForm::from_rows(vec![0b10, 0b00]);
        assert_eq!(verify_counting(&x1x2(), &skew), Err(ComponentError::NotSymmetric));
        assert!(matches!(
            verify_counting(&x1x2(), &BilinearForm::dot(3)),
            Err(ComponentError::FormDimension { .. })
        ));
    }

    #[test]
    fn three_paths_agree_exhaustively_up_to_three() {
        for m in 1..=3u32 {
            let b = BilinearForm::dot(m as usize);
            for code in 0..1u64 << (1 << m) {
                let f = BooleanFunction::from_fn(m, |x| (code >> x & 1) as u32);
                let nega = is_negabent(&f);
                assert_eq!(verify_counting(&f, &b).unwrap(), nega, "m={m} f={f}");
                assert_eq!(boolean_graph_rds(&f, &b).unwrap().verify().ok, nega, "m={m} f={f}");
            }
        }
    }

    #[test]
    fn rds_from_boolean_parameters() {
        let r = rds_from_boolean(&BooleanFunction::zero(1), &BilinearForm::dot(1)).unwrap();
        assert_eq!(r.group().order(), 4);
        assert_eq!(r.set(), &[0, 1]);
        assert_eq!(r.verify().params.unwrap().tuple(), (2, 2, 2, 1));
        let r = rds_from_boolean(&BooleanFunction::zero(3), &BilinearForm::dot(3)).unwrap();
        assert_eq!(r.verify().params.unwrap().tuple(), (8, 2, 8, 4));
        assert!(matches!(
            rds_from_boolean(&x1x2(), &BilinearForm::dot(2)),
            Err(ComponentError::CountingFails { .. })
        ));
    }

    #[test]
    fn four_block_construction_from_bent_support() {
        let f = BooleanFunction::from_anf(4, &[0b0011, 0b1100]);
        let (support, verdict) = bent_support_difference_set(&f).unwrap();
        assert_eq!(verdict.params.unwrap().tuple(), (16, 1, 6, 2));
        let g = elementary_abelian(4).unwrap();
        let (rds, verdict) = rds_from_two_difference_sets(&g, &support, &support).unwrap();
        assert_eq!(rds.group().order(), 64);
        assert_eq!(verdict.params.unwrap().tuple(), (32, 2, 32, 16));
        let h = standard_form_component(4, rds.set()).unwrap();
        assert_eq!(h.arity() % 2, 1);
        assert!(is_negabent(&h));
        assert!(verify_counting(&h, &BilinearForm::dot(5)).unwrap());
    }

    #[test]
    fn four_block_rejects_non_difference_sets() {
        let g = elementary_abelian(4).unwrap();
        let good = BooleanFunction::from_anf(4, &[0b0011, 0b1100]).support();
        assert_eq!(
            rds_from_two_difference_sets(&g, &[0, 1, 2], &good).unwrap_err(),
            ComponentError::NotDifferenceSet("D")
        );
        assert_eq!(
            rds_from_two_difference_sets(&g, &good, &[0, 1, 2]).unwrap_err(),
            ComponentError::NotDifferenceSet("E")
        );
    }

    #[test]
    fn four_block_degenerate_input_is_decided_by_census() {
        let g = ProductGroup::new(vec![2]).unwrap();
        let (rds, verdict) = rds_from_two_difference_sets(&g, &[0], &[0]).unwrap();
        assert_eq!(rds.set().len(), 4);
        assert!(!verdict.ok);
    }

    #[test]
    fn orthonormal_bases() {
        let dot = BilinearForm::dot(4);
        assert_eq!(orthonormal_basis(&dot).unwrap().len(), 4);
        // [[1,1],[1,0]] is nonalternating but its remainder after the first
        // unit vector is alternating, forcing the trade step
        let b = BilinearForm::from_rows(vec![0b011, 0b001, 0b100]);
        let basis = orthonormal_basis(&b).unwrap();
        assert_eq!(basis.len(), 3);
        let hyperbolic = BilinearForm::from_rows(vec![0b10, 0b01]);
        assert!(orthonormal_basis(&hyperbolic).is_none());
        assert!(orthonormal_basis(&BilinearForm::zero(2)).is_none());
    }

    #[test]
    fn kantor_projection_gives_negabent_component() {
        let f = FiniteField::new(2, 3, None).unwrap();
        let map = kantor_planar(&f, &[1], &[1]).unwrap();
        let d = rds_from_planar_even_table(&map).unwrap();
        for c in 1..8 {
            let ell = LinearFunctional::from_trace(&f, c);
            let out = negabent_from_projection(&d, &ell).unwrap();
            assert_eq!(out.verdict.params.unwrap().tuple(), (8, 2, 8, 4));
            assert!(out.negabent);
            assert!(verify_counting(&out.component, &out.form).unwrap());
        }
    }

    #[test]
    fn zero_map_projection_is_constant_and_negabent() {
        let f = FiniteField::new(2, 4, None).unwrap();
        let zero = ValueTable::new(&f, vec![0; 16]).unwrap();
        let d = rds_from_planar_even_table(&zero).unwrap();
        let out = negabent_from_projection(&d, &LinearFunctional::from_trace(&f, 1)).unwrap();
        assert_eq!(out.component.weight(), 0);
        assert!(out.verdict.ok);
        assert!(out.negabent);
        let full = LinearFunctional::new(2, vec![0; 4]);
        assert!(negabent_from_projection(&d, &full).is_err());
    }

    #[test]
    fn spectrum_csv_rows() {
        let csv = nega_spectrum_csv(&BooleanFunction::zero(1));
        assert_eq!(csv, "a,re,im,modulus2\n0,1,1,2\n1,1,-1,2\n");
    }
}
