//! Planarity in odd characteristic (all `x ↦ f(x+a) - f(x)` bijective) and in
//! characteristic 2 (all `x ↦ f(x+a) + f(x) + ax` bijective), known families,
//! and exhaustive monomial searches.

use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::funcmaps::{reduce_exponent, FuncError, PolyMap, ValueTable};
use crate::gf::{gcd, prime_factors, FiniteField, GfError};

/// Largest odd field for the monomial search.
pub const MAX_ODD_SEARCH: u32 = 6561;
/// Largest binary field for the monomial search over all coefficients.
pub const MAX_EVEN_SEARCH: u32 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("field has characteristic 2; use the even convention")]
    EvenCharacteristic,
    #[error("field has odd characteristic; use the odd convention")]
    OddCharacteristic,
    #[error("expected characteristic {expected}, got {got}")]
    WrongCharacteristic { expected: u32, got: u32 },
    #[error("invalid subfield chain: {0}")]
    BadChain(String),
    #[error("[K:K_n] = {0} is not odd")]
    OddQuotientViolated(u32),
    #[error("zeta number {0} is zero")]
    ZeroZeta(usize),
    #[error("search range too large: {0}")]
    RangeTooLarge(String),
    #[error("search kernel disagrees with the exhaustive check at d = {d}, c = {c}")]
    KernelMismatch { d: u32, c: u32 },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Func(#[from] FuncError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Odd,
    Even,
}

impl Convention {
    pub fn for_field(field: &FiniteField) -> Self {
        if field.characteristic() == 2 {
            Convention::Even
        } else {
            Convention::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarVerdict {
    pub planar: bool,
    /// Smallest `a` whose difference map is not a bijection.
    pub failing_a: Option<u32>,
    pub convention: Convention,
}

fn check_odd(field: &FiniteField) -> Result<(), PlanarError> {
    if field.characteristic() == 2 {
        Err(PlanarError::EvenCharacteristic)
    } else {
        Ok(())
    }
}

fn check_even(field: &FiniteField) -> Result<(), PlanarError> {
    if field.characteristic() != 2 {
        Err(PlanarError::OddCharacteristic)
    } else {
        Ok(())
    }
}

/// Whether `g` hits every value of `0..q` exactly once on `0..q`.
fn is_permutation(q: u32, g: impl Fn(u32) -> u32) -> bool {
    let mut seen = vec![0u64; (q as usize).div_ceil(64)];
    for x in 0..q {
        let v = g(x) as usize;
        let (w, b) = (v / 64, 1u64 << (v % 64));
        if seen[w] & b != 0 {
            return false;
        }
        seen[w] |= b;
    }
    true
}

fn verdict(convention: Convention, failing_a: Option<u32>) -> PlanarVerdict {
    PlanarVerdict {
        planar: failing_a.is_none(),
        failing_a,
        convention,
    }
}

pub fn is_planar_odd_table(f: &ValueTable) -> Result<PlanarVerdict, PlanarError> {
    let field = f.field();
    check_odd(field)?;
    let q = field.order();
    let v = f.values();
    let failing = (1..q).into_par_iter().find_first(|&a| {
        !is_permutation(q, |x| field.sub(v[field.add(x, a) as usize], v[x as usize]))
    });
    Ok(verdict(Convention::Odd, failing))
}

pub fn is_planar_even_table(f: &ValueTable) -> Result<PlanarVerdict, PlanarError> {
    let field = f.field();
    check_even(field)?;
    let q = field.order();
    let v = f.values();
    let failing = (1..q).into_par_iter().find_first(|&a| {
        !is_permutation(q, |x| v[(x ^ a) as usize] ^ v[x as usize] ^ field.mul(a, x))
    });
    Ok(verdict(Convention::Even, failing))
}

pub fn is_planar_odd(f: &PolyMap) -> Result<PlanarVerdict, PlanarError> {
    check_odd(f.field())?;
    is_planar_odd_table(&f.table())
}

pub fn is_planar_even(f: &PolyMap) -> Result<PlanarVerdict, PlanarError> {
    check_even(f.field())?;
    is_planar_even_table(&f.table())
}

/// Planarity under the convention matching the field's characteristic.
pub fn is_planar_table(f: &ValueTable) -> Result<PlanarVerdict, PlanarError> {
    match Convention::for_field(f.field()) {
        Convention::Odd => is_planar_odd_table(f),
        Convention::Even => is_planar_even_table(f),
    }
}

pub fn two_to_one_table(f: &ValueTable) -> Result<bool, PlanarError> {
    check_odd(f.field())?;
    let mut counts = vec![0u32; f.values().len()];
    for &v in f.values() {
        counts[v as usize] += 1;
    }
    let singles = counts.iter().filter(|&&c| c == 1).count();
    Ok(singles == 1 && counts.iter().all(|&c| c <= 2))
}

/// Exactly one value has a single preimage and every other value has zero or
/// two. For a DO polynomial the single fibre is `f⁻¹(0) = {0}`; requiring only
/// "0 or 2 preimages for nonzero values" would accept e.g. `2x⁴+3x⁶` on GF(9),
/// which has three zeros and is not planar.
pub fn two_to_one(f: &PolyMap) -> Result<bool, PlanarError> {
    check_odd(f.field())?;
    two_to_one_table(&f.table())
}

/// `x^((3^k+1)/2)` over GF(3^m).
pub fn cm_monomial(field: &FiniteField, k: u32) -> Result<PolyMap, PlanarError> {
    if field.characteristic() != 3 {
        return Err(PlanarError::WrongCharacteristic {
            expected: 3,
            got: field.characteristic(),
        });
    }
    let d = (3u128.pow(k) + 1) / 2;
    let d = reduce_exponent_wide(d, field.order());
    Ok(PolyMap::monomial(field, d, 1))
}

/// `x^(p^k+1)` over GF(p^m).
pub fn albert_monomial(field: &FiniteField, k: u32) -> PolyMap {
    let d = (field.characteristic() as u128).pow(k) + 1;
    PolyMap::monomial(field, reduce_exponent_wide(d, field.order()), 1)
}

fn reduce_exponent_wide(d: u128, q: u32) -> u64 {
    if d < q as u128 {
        d as u64
    } else {
        ((d - 1) % (q as u128 - 1) + 1) as u64
    }
}

/// `f(x) = (x · Σ tr_i(ζ_i x))²` on `K = GF(2^M)`, where `tr_i` is the trace
/// onto the subfield of degree `chain[i]`.
pub fn kantor_planar(
    field: &FiniteField,
    chain: &[u32],
    zetas: &[u32],
) -> Result<ValueTable, PlanarError> {
    check_even(field)?;
    let big_m = field.degree();
    if chain.is_empty() {
        return Err(PlanarError::BadChain("empty chain".into()));
    }
    if chain.len() != zetas.len() {
        return Err(PlanarError::BadChain(format!(
            "{} subfields but {} zetas",
            chain.len(),
            zetas.len()
        )));
    }
    let mut outer = big_m;
    for &d in chain {
        if d == 0 || outer % d != 0 || (d == outer && outer != big_m) {
            return Err(PlanarError::BadChain(format!(
                "degrees {chain:?} do not form a decreasing divisor chain of {big_m}"
            )));
        }
        outer = d;
    }
    if chain.windows(2).any(|w| w[1] >= w[0]) {
        return Err(PlanarError::BadChain(format!("degrees {chain:?} are not strictly decreasing")));
    }
    let index = big_m / chain[chain.len() - 1];
    if index % 2 == 0 {
        return Err(PlanarError::OddQuotientViolated(index));
    }
    if let Some(i) = zetas.iter().position(|&z| z == 0) {
        return Err(PlanarError::ZeroZeta(i + 1));
    }
    for &z in zetas {
        field.element(z)?;
    }
    let mut values = Vec::with_capacity(field.order() as usize);
    for x in field.elements() {
        let mut s = 0;
        for (&d, &z) in chain.iter().zip(zetas) {
            s ^= field.rel_trace(d, field.mul(z, x))?;
        }
        let inner = field.mul(x, s);
        values.push(field.mul(inner, inner));
    }
    Ok(ValueTable::new(field, values)?)
}

/// Odd characteristic: `c·x^d` (any `c ≠ 0`) is planar iff
/// `t ↦ (t+1)^d - t^d` is a permutation, by the substitution `x = a·t`.
pub fn odd_monomial_planar_fast(field: &FiniteField, d: u64) -> Result<bool, PlanarError> {
    check_odd(field)?;
    Ok(is_permutation(field.order(), |t| {
        field.sub(field.pow(field.add(t, 1), d), field.pow(t, d))
    }))
}

fn primitive_element(field: &FiniteField) -> u32 {
    if let Some((_, exp)) = field.log_tables() {
        return exp[1];
    }
    let n = field.order() as u64 - 1;
    let factors = prime_factors(n);
    (1..field.order())
        .find(|&w| factors.iter().all(|&r| field.pow(w, n / r) != 1))
        .expect("multiplicative group is cyclic")
}

/// Characteristic 2: all nonzero `c` such that `c·x^d` is planar, ascending.
///
/// With `x = a·t`, the map `x ↦ f(x+a)+f(x)+ax` becomes `a²(u·D(t) + t)` with
/// `D(t) = (t+1)^d + t^d` and `u = c·a^(d-2)`. So the verdict only depends on
/// the coset of `c` modulo the image of `a ↦ a^(d-2)`.
pub fn even_monomial_planar_coefficients(field: &FiniteField, d: u64) -> Result<Vec<u32>, PlanarError> {
    check_even(field)?;
    let q = field.order();
    if q == 2 {
        return Ok(vec![1]);
    }
    let n = q as u64 - 1;
    let dd: Vec<u32> = field
        .elements()
        .map(|t| field.pow(t ^ 1, d) ^ field.pow(t, d))
        .collect();
    let e = (d as i128 - 2).rem_euclid(n as i128) as u64;
    let g = gcd(e, n);
    let w = primitive_element(field);
    let mut powers = Vec::with_capacity(n as usize);
    let mut acc = 1u32;
    for _ in 0..n {
        powers.push(acc);
        acc = field.mul(acc, w);
    }
    let good: Vec<bool> = (0..g)
        .into_par_iter()
        .map(|r| {
            (r..n).step_by(g as usize).all(|k| {
                let u = powers[k as usize];
                is_permutation(q, |t| field.mul(u, dd[t as usize]) ^ t)
            })
        })
        .collect();
    let mut cs: Vec<u32> = (0..n)
        .filter(|&k| good[(k % g) as usize])
        .map(|k| powers[k as usize])
        .collect();
    cs.sort_unstable();
    Ok(cs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialHit {
    pub d: u32,
    pub cs: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonomialSearchReport {
    pub field: String,
    pub convention: Convention,
    pub d_min: u32,
    pub d_max: u32,
    pub restricted: bool,
    pub hits: Vec<MonomialHit>,
    /// Hit exponents grouped into orbits of `d ↦ p·d mod (q-1)`.
    pub orbits: Vec<Vec<u32>>,
    pub elapsed: f64,
}

/// `p·d` reduced into `[1, q-1]`.
pub fn frobenius_exponent(d: u32, p: u32, q: u32) -> u32 {
    reduce_exponent(d as u64 * p as u64, q)
}

impl MonomialSearchReport {
    pub fn hit_exponents(&self) -> Vec<u32> {
        self.hits.iter().map(|h| h.d).collect()
    }

    pub fn contains(&self, d: u32) -> bool {
        self.hits.iter().any(|h| h.d == d)
    }

    /// Breaches of the Frobenius symmetry, as `(d, image)` pairs.
    ///
    /// Odd convention: `x^(pd) = (x^d)^p` is planar whenever `x^d` is, so a hit
    /// whose image `p·d` was searched must be a hit. Even convention: the
    /// exponent orbit is not preserved (`x^5` is planar on GF(16) for some `c`,
    /// `x^10` for none), but `σ∘f∘σ⁻¹` is, which sends `c·x^d` to `c²·x^d`; the
    /// pairs reported are `(d, c)` with `c²` missing from the coefficient set.
    pub fn closure_violations(&self, field: &FiniteField) -> Vec<(u32, u32)> {
        let (p, q) = (field.characteristic(), field.order());
        match self.convention {
            Convention::Odd => self
                .hits
                .iter()
                .filter_map(|h| {
                    let image = frobenius_exponent(h.d, p, q);
                    let searched = (self.d_min..=self.d_max).contains(&image)
                        && !(self.restricted && image % p == 0);
                    (searched && !self.contains(image)).then_some((h.d, image))
                })
                .collect(),
            Convention::Even => self
                .hits
                .iter()
                .flat_map(|h| {
                    h.cs.iter()
                        .filter(|&&c| h.cs.binary_search(&field.mul(c, c)).is_err())
                        .map(move |&c| (h.d, c))
                })
                .collect(),
        }
    }
}

fn orbits(hits: &[u32], p: u32, q: u32) -> Vec<Vec<u32>> {
    let mut done = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for &d in hits {
        if done.contains(&d) {
            continue;
        }
        let mut orbit = vec![d];
        done.insert(d);
        let mut next = frobenius_exponent(d, p, q);
        while next != d && !done.contains(&next) {
            if hits.contains(&next) {
                orbit.push(next);
            }
            done.insert(next);
            next = frobenius_exponent(next, p, q);
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Exhaustive search over `c·x^d` for `d` in `d_range`. The odd convention
/// tests `c = 1` only; the even convention sweeps every nonzero `c`.
pub fn search_planar_monomials(
    field: &FiniteField,
    convention: Convention,
    d_range: RangeInclusive<u32>,
    restrict: bool,
) -> Result<MonomialSearchReport, PlanarError> {
    let start = Instant::now();
    let (p, q) = (field.characteristic(), field.order());
    match convention {
        Convention::Odd => {
            check_odd(field)?;
            if q > MAX_ODD_SEARCH {
                return Err(PlanarError::RangeTooLarge(format!("odd search needs q <= {MAX_ODD_SEARCH}")));
            }
        }
        Convention::Even => {
            check_even(field)?;
            if q > MAX_EVEN_SEARCH {
                return Err(PlanarError::RangeTooLarge(format!("even search needs q <= {MAX_EVEN_SEARCH}")));
            }
        }
    }
    let (d_min, d_max) = (*d_range.start(), *d_range.end());
    if d_min == 0 || d_max >= q || d_min > d_max {
        return Err(PlanarError::RangeTooLarge(format!(
            "exponents must lie in [1, {}], got [{d_min}, {d_max}]",
            q - 1
        )));
    }
    let mut hits = Vec::new();
    for d in d_range {
        match convention {
            Convention::Odd => {
                if restrict && d % p == 0 {
                    continue;
                }
                if odd_monomial_planar_fast(field, d as u64)? {
                    let f = PolyMap::monomial(field, d as u64, 1);
                    if !is_planar_odd(&f)?.planar {
                        return Err(PlanarError::KernelMismatch { d, c: 1 });
                    }
                    hits.push(MonomialHit { d, cs: vec![1] });
                }
            }
            Convention::Even => {
                let cs = even_monomial_planar_coefficients(field, d as u64)?;
                if cs.is_empty() {
                    continue;
                }
                // re-verify exhaustively where affordable
                let recheck: &[u32] = if q <= 64 {
                    &cs
                } else if q <= 1 << 12 {
                    &cs[..1]
                } else {
                    &[]
                };
                for &c in recheck {
                    if !is_planar_even(&PolyMap::monomial(field, d as u64, c))?.planar {
                        return Err(PlanarError::KernelMismatch { d, c });
                    }
                }
                hits.push(MonomialHit { d, cs });
            }
        }
    }
    let exps: Vec<u32> = hits.iter().map(|h| h.d).collect();
    Ok(MonomialSearchReport {
        field: field.spec(),
        convention,
        d_min,
        d_max,
        restricted: restrict && convention == Convention::Odd,
        orbits: orbits(&exps, p, q),
        hits,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// Exponents listed as planar on GF(p^m) for odd `p`, reduced into `[1, q-1]`:
/// `2`; `p^k+1` when `m/gcd(k,m)` is odd; `(3^k+1)/2` when `p = 3` and
/// `gcd(k,2m) = 1`.
pub fn known_odd_planar_exponents(field: &FiniteField) -> Vec<u32> {
    let (p, m, q) = (field.characteristic(), field.degree(), field.order());
    let mut out = vec![2];
    for k in 1..m {
        if (m / gcd(k as u64, m as u64) as u32) % 2 == 1 {
            out.push(reduce_exponent_wide((p as u128).pow(k) + 1, q) as u32);
        }
    }
    if p == 3 {
        for k in 1..=2 * m {
            if gcd(k as u64, 2 * m as u64) == 1 {
                out.push(reduce_exponent_wide((3u128.pow(k) + 1) / 2, q) as u32);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcmaps::{affine_exponents, do_exponents};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: u32, m: u32) -> FiniteField {
        FiniteField::new(p, m, None).unwrap()
    }

    fn mono(f: &FiniteField, d: u64, c: u32) -> PolyMap {
        PolyMap::monomial(f, d, c)
    }

    #[test]
    fn odd_examples() {
        let f9 = field(3, 2);
        let v = is_planar_odd(&mono(&f9, 2, 1)).unwrap();
        assert!(v.planar && v.failing_a.is_none() && v.convention == Convention::Odd);
        let v = is_planar_odd(&mono(&f9, 3, 1)).unwrap();
        assert!(!v.planar);
        assert_eq!(v.failing_a, Some(1));
        assert!(is_planar_odd(&mono(&field(3, 4), 14, 1)).unwrap().planar);
        assert_eq!(
            is_planar_odd(&mono(&field(2, 3), 3, 1)),
            Err(PlanarError::EvenCharacteristic)
        );
    }

    #[test]
    fn failing_witness_rechecks() {
        let f = field(5, 2);
        let g = mono(&f, 3, 1);
        let v = is_planar_odd(&g).unwrap();
        let a = v.failing_a.unwrap();
        let t = g.table();
        let mut image: Vec<u32> = f.elements().map(|x| f.sub(t.get(f.add(x, a)), t.get(x))).collect();
        image.sort_unstable();
        image.dedup();
        assert!(image.len() < f.order() as usize);
        for smaller in 1..a {
            let mut image: Vec<u32> = f.elements().map(|x| f.sub(t.get(f.add(x, smaller)), t.get(x))).collect();
            image.sort_unstable();
            image.dedup();
            assert_eq!(image.len(), f.order() as usize);
        }
    }

    #[test]
    fn even_examples() {
        let f8 = field(2, 3);
        assert!(is_planar_even(&PolyMap::zero(&f8)).unwrap().planar);
        let affine = PolyMap::from_terms(&f8, &[(0, 3), (1, 5), (2, 1), (4, 7)]);
        assert!(is_planar_even(&affine).unwrap().planar);
        assert_eq!(
            is_planar_even(&mono(&field(3, 2), 2, 1)),
            Err(PlanarError::OddCharacteristic)
        );
        // x^3 on GF(4) is never planar in this convention
        let f4 = field(2, 2);
        for c in 1..4 {
            assert!(!is_planar_even(&mono(&f4, 3, c)).unwrap().planar);
        }
    }

    #[test]
    fn two_to_one_examples() {
        let f9 = field(3, 2);
        assert!(two_to_one(&mono(&f9, 2, 1)).unwrap());
        let dickson = |f: &FiniteField| PolyMap::from_terms(f, &[(10, 1), (6, 1), (2, 2)]);
        assert!(two_to_one(&dickson(&field(3, 3))).unwrap());
        // on GF(9) the polynomial reduces to x^6, which is 2-to-1
        assert!(two_to_one(&dickson(&f9)).unwrap());
        assert!(!two_to_one(&dickson(&field(3, 4))).unwrap());
    }

    #[test]
    fn extra_zeros_are_not_two_to_one() {
        let g = PolyMap::from_terms(&field(3, 2), &[(4, 2), (6, 3)]);
        assert!(!is_planar_odd(&g).unwrap().planar);
        assert!(!two_to_one(&g).unwrap());
        assert!(!two_to_one(&PolyMap::zero(&field(3, 2))).unwrap());
    }

    #[test]
    fn cm_family() {
        let f81 = field(3, 4);
        assert_eq!(cm_monomial(&field(3, 2), 1).unwrap().to_sparse(), "2:1");
        assert_eq!(cm_monomial(&f81, 3).unwrap().to_sparse(), "14:1");
        assert!(!is_planar_odd(&cm_monomial(&field(3, 3), 3).unwrap()).unwrap().planar);
        assert!(cm_monomial(&field(5, 1), 1).is_err());
        for m in 2..=5 {
            let f = field(3, m);
            for k in 1..=6 {
                let planar = is_planar_odd(&cm_monomial(&f, k).unwrap()).unwrap().planar;
                assert_eq!(planar, gcd(k as u64, 2 * m as u64) == 1, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn do_planar_iff_two_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for m in 2..=3 {
            let f = field(3, m);
            let dos = do_exponents(&f);
            for &d in &dos {
                let g = mono(&f, d as u64, 1);
                assert_eq!(is_planar_odd(&g).unwrap().planar, two_to_one(&g).unwrap(), "d={d}");
            }
            for _ in 0..200 {
                let terms: Vec<(u64, u32)> = dos.iter().map(|&d| (d as u64, rng.gen_range(0..f.order()))).collect();
                let g = PolyMap::from_terms(&f, &terms);
                assert_eq!(is_planar_odd(&g).unwrap().planar, two_to_one(&g).unwrap());
            }
        }
    }

    #[test]
    fn affine_shift_preserves_verdicts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, m) in [(3, 2), (3, 3), (5, 2), (2, 3), (2, 4)] {
            let f = field(p, m);
            let affs = affine_exponents(&f);
            for _ in 0..30 {
                let terms: Vec<(u64, u32)> = (0..3)
                    .map(|_| (rng.gen_range(0..f.order()) as u64, rng.gen_range(0..f.order())))
                    .collect();
                let g = if rng.gen_bool(0.5) {
                    PolyMap::from_terms(&f, &terms)
                } else {
                    mono(&f, rng.gen_range(1..f.order()) as u64, rng.gen_range(1..f.order()))
                };
                let shift: Vec<(u64, u32)> = affs.iter().map(|&e| (e as u64, rng.gen_range(0..f.order()))).collect();
                let h = g.add(&PolyMap::from_terms(&f, &shift)).unwrap();
                let verdict = |x: &PolyMap| is_planar_table(&x.table()).unwrap().planar;
                assert_eq!(verdict(&g), verdict(&h));
            }
        }
    }

    #[test]
    fn odd_kernel_matches_brute_force() {
        for (p, m) in [(3, 2), (3, 3), (5, 2), (7, 1), (5, 1)] {
            let f = field(p, m);
            for d in 1..f.order() {
                assert_eq!(
                    odd_monomial_planar_fast(&f, d as u64).unwrap(),
                    is_planar_odd(&mono(&f, d as u64, 1)).unwrap().planar,
                    "GF({p}^{m}) d={d}"
                );
            }
        }
    }

    #[test]
    fn even_kernel_matches_brute_force() {
        for m in 1..=5 {
            let f = field(2, m);
            for d in 1..f.order() {
                let brute: Vec<u32> = (1..f.order())
                    .filter(|&c| is_planar_even(&mono(&f, d as u64, c)).unwrap().planar)
                    .collect();
                assert_eq!(even_monomial_planar_coefficients(&f, d as u64).unwrap(), brute, "m={m} d={d}");
            }
        }
    }

    #[test]
    fn even_coefficient_sets_closed_under_squaring() {
        for m in 2..=6 {
            let f = field(2, m);
            for d in 1..f.order() {
                let cs = even_monomial_planar_coefficients(&f, d as u64).unwrap();
                for &c in &cs {
                    assert!(cs.binary_search(&f.mul(c, c)).is_ok());
                }
            }
        }
    }

    #[test]
    fn kantor_examples() {
        let f8 = field(2, 3);
        for z in 1..8 {
            let t = kantor_planar(&f8, &[1], &[z]).unwrap();
            assert!(is_planar_even_table(&t).unwrap().planar);
        }
        // zeta = 1 gives (x tr(x))^2
        let t = kantor_planar(&f8, &[1], &[1]).unwrap();
        for x in f8.elements() {
            let s = f8.mul(x, f8.abs_trace(x));
            assert_eq!(t.get(x), f8.mul(s, s));
        }
        let f4 = field(2, 2);
        assert_eq!(kantor_planar(&f4, &[1], &[1]), Err(PlanarError::OddQuotientViolated(2)));
        assert_eq!(kantor_planar(&f8, &[1], &[0]), Err(PlanarError::ZeroZeta(1)));
        assert!(matches!(kantor_planar(&f8, &[2], &[1]), Err(PlanarError::BadChain(_))));
        let f512 = field(2, 9);
        assert!(matches!(kantor_planar(&f512, &[1, 3], &[1, 1]), Err(PlanarError::BadChain(_))));
        let t = kantor_planar(&f512, &[3, 1], &[2, 5]).unwrap();
        assert!(is_planar_even_table(&t).unwrap().planar);
    }

    #[test]
    fn search_gf9() {
        let f = field(3, 2);
        let r = search_planar_monomials(&f, Convention::Odd, 1..=8, true).unwrap();
        assert!(r.contains(2));
        let r = search_planar_monomials(&f, Convention::Odd, 1..=8, false).unwrap();
        assert!(r.contains(2) && r.contains(6));
        assert!(r.closure_violations(&f).is_empty());
        assert!(r.orbits.contains(&vec![2, 6]));
    }

    #[test]
    fn search_gf27() {
        let f = field(3, 3);
        let r = search_planar_monomials(&f, Convention::Odd, 1..=26, false).unwrap();
        for d in [2, 6, 18, 4, 12, 10] {
            assert!(r.contains(d), "d={d}");
        }
        assert!(!r.contains(14));
        assert!(r.closure_violations(&f).is_empty());
        for d in known_odd_planar_exponents(&f) {
            assert!(r.contains(d));
        }
    }

    #[test]
    fn search_errors() {
        let f = field(3, 2);
        assert!(matches!(
            search_planar_monomials(&f, Convention::Odd, 1..=9, true),
            Err(PlanarError::RangeTooLarge(_))
        ));
        assert_eq!(
            search_planar_monomials(&f, Convention::Even, 1..=8, true).unwrap_err(),
            PlanarError::OddCharacteristic
        );
        assert!(search_planar_monomials(&field(3, 9), Convention::Odd, 1..=2, true).is_err());
    }

    #[test]
    fn even_search_small() {
        let f16 = field(2, 4);
        let r = search_planar_monomials(&f16, Convention::Even, 1..=15, false).unwrap();
        let ds = r.hit_exponents();
        for d in [1, 2, 4, 8] {
            assert!(ds.contains(&d));
            assert_eq!(r.hits.iter().find(|h| h.d == d).unwrap().cs.len(), 15);
        }
        assert!(ds.contains(&5));
        assert!(!ds.contains(&10));
        assert!(r.closure_violations(&f16).is_empty());
    }
}
