//! Relative difference sets: exact verification, the constructions from
//! pre-semifields and planar functions, projection onto quotients, and
//! extraction of component functions.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::funcmaps::{PolyMap, ValueTable};
use crate::gf::{FiniteField, GfError};
use crate::groups::{CocycleGroup, Group, GroupError};
use crate::planar::{is_planar_even_table, is_planar_odd_table, PlanarError};
use crate::semifield::{check_axioms, PreSemifield, SemifieldError};

/// Largest group for verification.
pub const MAX_RDS_GROUP: u32 = 1 << 20;
/// Largest field for the semifield construction.
pub const MAX_RDS_FIELD: u32 = 1 << 10;
/// Violations listed individually in a verdict.
const MAX_LISTED_VIOLATIONS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RdsError {
    #[error("group of order {0} is too large")]
    TooLarge(u32),
    #[error("element {0} is not in the group")]
    NotAnElement(u32),
    #[error("element {0} is listed twice")]
    Duplicate(u32),
    #[error("forbidden set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup element {0} is not in the forbidden subgroup")]
    NotInForbidden(u32),
    #[error("projection identifies distinct elements of the set")]
    MultisetImage,
    #[error("projection needs an abelian group")]
    NonAbelian,
    #[error("function is not planar (failing a = {0})")]
    NotPlanar(u32),
    #[error("axioms fail: {0}")]
    AxiomsFail(String),
    #[error("set is not of the form {{(x, f(x))}} in a pair group")]
    NotCanonical,
    #[error("linear functional is zero, so it has no complement direction")]
    NoSplitting,
    #[error("group has no textual spec")]
    Unserializable,
    #[error("malformed difference set text: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    Semifield(#[from] SemifieldError),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RdsParams {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub lambda: u32,
}

impl RdsParams {
    pub fn tuple(&self) -> (u32, u32, u32, u32) {
        (self.m, self.n, self.k, self.lambda)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub element: u32,
    pub count: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdsVerdict {
    pub ok: bool,
    /// `(m, n, k, λ)` with `λ` inferred from the census; set when `ok`.
    #[serde(flatten)]
    pub params: Option<RdsParams>,
    /// The first few elements whose difference count is wrong.
    pub violations: Vec<Violation>,
    pub violation_count: u64,
}

fn check_elements(group: &Group, set: &[u32]) -> Result<Vec<u32>, RdsError> {
    let mut seen = vec![false; group.order() as usize];
    for &r in set {
        if r >= group.order() {
            return Err(RdsError::NotAnElement(r));
        }
        if seen[r as usize] {
            return Err(RdsError::Duplicate(r));
        }
        seen[r as usize] = true;
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    Ok(sorted)
}

fn check_subgroup(group: &Group, forbidden: &[u32]) -> Result<Vec<u32>, RdsError> {
    check_elements(group, forbidden)?;
    group.subgroup_from_elements(forbidden).map_err(|e| match e {
        GroupError::NotASubgroup => RdsError::NotASubgroup,
        e => e.into(),
    })
}

/// Exact difference census: every element outside `N` must occur `λ` times
/// as `r ⋆ r'⁻¹` with `r ≠ r'`, and no nonidentity element of `N` may occur.
pub fn verify_rds(group: &Group, forbidden: &[u32], set: &[u32]) -> Result<RdsVerdict, RdsError> {
    let order = group.order();
    if order > MAX_RDS_GROUP {
        return Err(RdsError::TooLarge(order));
    }
    let n_set = check_subgroup(group, forbidden)?;
    let r = check_elements(group, set)?;
    let mut in_n = vec![false; order as usize];
    for &x in &n_set {
        in_n[x as usize] = true;
    }
    let inverses: Vec<u32> = r.iter().map(|&x| group.inverse(x)).collect();
    let mut counts = vec![0u64; order as usize];
    for &a in &r {
        for (&b, &b_inv) in r.iter().zip(&inverses) {
            if a != b {
                counts[group.op(a, b_inv) as usize] += 1;
            }
        }
    }
    let (n, k) = (n_set.len() as u64, r.len() as u64);
    let outside = order as u64 - n;
    let lambda = if outside == 0 {
        0
    } else if (k * k.saturating_sub(1)) % outside == 0 {
        k * k.saturating_sub(1) / outside
    } else {
        // no λ is consistent with the size; compare against the first count
        (0..order).find(|&g| !in_n[g as usize]).map_or(0, |g| counts[g as usize])
    };
    let mut violations = Vec::new();
    let mut violation_count = 0;
    for g in 0..order {
        let expected = if in_n[g as usize] { 0 } else { lambda };
        if g != 0 && counts[g as usize] != expected {
            violation_count += 1;
            if violations.len() < MAX_LISTED_VIOLATIONS {
                violations.push(Violation {
                    element: g,
                    count: counts[g as usize],
                    expected,
                });
            }
        }
    }
    let ok = violation_count == 0 && k * k.saturating_sub(1) == lambda * outside;
    Ok(RdsVerdict {
        ok,
        params: ok.then(|| RdsParams {
            m: (order as u64 / n) as u32,
            n: n as u32,
            k: k as u32,
            lambda: lambda as u32,
        }),
        violations,
        violation_count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeDifferenceSet {
    group: Group,
    forbidden: Vec<u32>,
    set: Vec<u32>,
}

impl RelativeDifferenceSet {
    /// Checks membership and that `forbidden` is a subgroup; the difference
    /// property itself is checked by [`Self::verify`].
    pub fn new(group: Group, forbidden: &[u32], set: &[u32]) -> Result<Self, RdsError> {
        if group.order() > MAX_RDS_GROUP {
            return Err(RdsError::TooLarge(group.order()));
        }
        let forbidden = check_subgroup(&group, forbidden)?;
        let set = check_elements(&group, set)?;
        Ok(RelativeDifferenceSet { group, forbidden, set })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn forbidden(&self) -> &[u32] {
        &self.forbidden
    }

    pub fn set(&self) -> &[u32] {
        &self.set
    }

    pub fn verify(&self) -> RdsVerdict {
        verify_rds(&self.group, &self.forbidden, &self.set).expect("validated on construction")
    }

    /// The translate `R ⋆ g`.
    pub fn translate(&self, g: u32) -> Result<Self, RdsError> {
        if g >= self.group.order() {
            return Err(RdsError::NotAnElement(g));
        }
        let set: Vec<u32> = self.set.iter().map(|&r| self.group.op(r, g)).collect();
        Self::new(self.group.clone(), &self.forbidden, &set)
    }

    /// A generating set of the forbidden subgroup.
    pub fn forbidden_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = vec![0u32];
        for &x in &self.forbidden {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.group.generated_subgroup(&gens).expect("size checked");
            }
        }
        gens
    }

    /// Group spec line, forbidden generators line, then one element per line.
    pub fn to_text(&self) -> Result<String, RdsError> {
        let spec = self.group.spec().ok_or(RdsError::Unserializable)?;
        let gens: Vec<String> = self.forbidden_generators().iter().map(u32::to_string).collect();
        let mut out = format!("{spec}\n{}\n", gens.join(","));
        for r in &self.set {
            writeln!(out, "{r}").unwrap();
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<Self, RdsError> {
        let bad = |why: &str| RdsError::Parse(why.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let group = Group::from_spec(lines.next().ok_or_else(|| bad("missing group line"))?)?;
        let gens_line = lines.next().ok_or_else(|| bad("missing forbidden line"))?;
        let gens = parse_list(gens_line).ok_or_else(|| bad("bad forbidden generators"))?;
        if let Some(&g) = gens.iter().find(|&&g| g >= group.order()) {
            return Err(RdsError::NotAnElement(g));
        }
        let forbidden = group.generated_subgroup(&gens)?;
        let set: Vec<u32> = lines
            .map(|l| l.parse::<u32>().map_err(|_| bad(&format!("bad element {l:?}"))))
            .collect::<Result<_, _>>()?;
        Self::new(group, &forbidden, &set)
    }
}

/// Parses `"1,2,4"`; `"-"` or an empty string is the empty list.
pub fn parse_list(s: &str) -> Option<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Some(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}

fn fiber_subgroup(g: &CocycleGroup) -> Vec<u32> {
    g.fiber().elements().map(|y| g.encode(0, y)).collect()
}

fn graph_set(g: &CocycleGroup, values: impl Fn(u32) -> u32) -> Vec<u32> {
    g.base().elements().map(|x| g.encode(x, values(x))).collect()
}

/// `R = {(x, x∘x)}` in the group `(x,y)(x',y') = (x+x', y+y'+x∘x')`,
/// relative to `N = {(0, y)}`.
pub fn rds_from_semifield(s: &PreSemifield) -> Result<RelativeDifferenceSet, RdsError> {
    let q = s.order();
    if q > MAX_RDS_FIELD {
        return Err(RdsError::TooLarge(q));
    }
    let report = check_axioms(s);
    if !report.presemifield() {
        return Err(RdsError::AxiomsFail(format!(
            "s2 witness {:?}, s3 witness {:?}",
            report.s2_witness, report.s3_witness
        )));
    }
    let g = CocycleGroup::semifield(s.field(), s.table()?)?;
    let n = fiber_subgroup(&g);
    let r = graph_set(&g, |x| s.mul(x, x));
    RelativeDifferenceSet::new(g.into(), &n, &r)
}

/// `R = {(x, f(x))}` in the direct product `GF(q) × GF(q)`.
pub fn rds_from_planar_odd(f: &PolyMap) -> Result<RelativeDifferenceSet, RdsError> {
    rds_from_planar_odd_table(&f.table())
}

pub fn rds_from_planar_odd_table(f: &ValueTable) -> Result<RelativeDifferenceSet, RdsError> {
    let field = f.field();
    check_field_size(field)?;
    if let Some(a) = is_planar_odd_table(f)?.failing_a {
        return Err(RdsError::NotPlanar(a));
    }
    let g = CocycleGroup::direct(field);
    let (n, r) = (fiber_subgroup(&g), graph_set(&g, |x| f.get(x)));
    RelativeDifferenceSet::new(g.into(), &n, &r)
}

/// `R = {(x, f(x))}` in the group `(x,y)(x',y') = (x+x', y+y'+xx')`.
pub fn rds_from_planar_even(f: &PolyMap) -> Result<RelativeDifferenceSet, RdsError> {
    rds_from_planar_even_table(&f.table())
}

pub fn rds_from_planar_even_table(f: &ValueTable) -> Result<RelativeDifferenceSet, RdsError> {
    let field = f.field();
    check_field_size(field)?;
    if let Some(a) = is_planar_even_table(f)?.failing_a {
        return Err(RdsError::NotPlanar(a));
    }
    let g = CocycleGroup::field_product(field);
    let (n, r) = (fiber_subgroup(&g), graph_set(&g, |x| f.get(x)));
    RelativeDifferenceSet::new(g.into(), &n, &r)
}

fn check_field_size(field: &FiniteField) -> Result<(), RdsError> {
    if field.order() > MAX_RDS_FIELD {
        return Err(RdsError::TooLarge(field.order()));
    }
    Ok(())
}

/// Image of `D` in `G/U` for a subgroup `U` of the forbidden subgroup.
pub fn project_rds(d: &RelativeDifferenceSet, u: &[u32]) -> Result<RelativeDifferenceSet, RdsError> {
    if !d.group.is_commutative() {
        return Err(RdsError::NonAbelian);
    }
    if let Some(&x) = u.iter().find(|&&x| d.forbidden.binary_search(&x).is_err()) {
        return Err(RdsError::NotInForbidden(x));
    }
    let quotient = d.group.quotient(u)?;
    let mut image: Vec<u32> = d.set.iter().map(|&r| quotient.apply(r)).collect();
    image.sort_unstable();
    if image.windows(2).any(|w| w[0] == w[1]) {
        return Err(RdsError::MultisetImage);
    }
    let mut n_image: Vec<u32> = d.forbidden.iter().map(|&x| quotient.apply(x)).collect();
    n_image.sort_unstable();
    n_image.dedup();
    RelativeDifferenceSet::new(Group::Product(quotient.group), &n_image, &image)
}

/// A GF(p)-linear map `GF(p)^m → GF(p)`, `y ↦ Σ c_i y_i` on base-`p` digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFunctional {
    pub p: u32,
    pub coeffs: Vec<u32>,
}

impl LinearFunctional {
    pub fn new(p: u32, coeffs: Vec<u32>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        LinearFunctional { p, coeffs }
    }

    /// `y ↦ Tr(c·y)` over the prime field.
    pub fn from_trace(field: &FiniteField, c: u32) -> Self {
        let p = field.characteristic();
        let coeffs = (0..field.degree())
            .map(|i| field.abs_trace(field.mul(c, p.pow(i))))
            .collect();
        LinearFunctional { p, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, mut y: u32) -> u32 {
        let mut acc = 0u64;
        for &c in &self.coeffs {
            acc += c as u64 * (y % self.p) as u64;
            y /= self.p;
        }
        (acc % self.p as u64) as u32
    }

    /// The kernel inside the fiber of a pair group, as group encodings.
    pub fn kernel_in(&self, g: &CocycleGroup) -> Vec<u32> {
        g.fiber()
            .elements()
            .filter(|&y| self.eval(y) == 0)
            .map(|y| g.encode(0, y))
            .collect()
    }
}

/// For `R = {(x, f(x))}`, the table of `ℓ(f(x))`, i.e. the coordinate of
/// `f(x)` along a complement of `U = ker ℓ` in `N`.
pub fn component_function(d: &RelativeDifferenceSet, ell: &LinearFunctional) -> Result<Vec<u32>, RdsError> {
    let Group::Cocycle(g) = &d.group else {
        return Err(RdsError::NotCanonical);
    };
    if ell.is_zero() {
        return Err(RdsError::NoSplitting);
    }
    if ell.p != g.fiber().characteristic() || ell.coeffs.len() != g.fiber().degree() as usize {
        return Err(RdsError::NoSplitting);
    }
    let q = g.base().order() as usize;
    let mut out = vec![u32::MAX; q];
    for &r in &d.set {
        let (x, y) = g.decode(r);
        if out[x as usize] != u32::MAX {
            return Err(RdsError::NotCanonical);
        }
        out[x as usize] = ell.eval(y);
    }
    if out.contains(&u32::MAX) {
        return Err(RdsError::NotCanonical);
    }
    Ok(out)
}
