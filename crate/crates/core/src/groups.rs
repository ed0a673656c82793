//! Finite abelian groups used as ambient groups for difference sets.
//!
//! Two shapes are supported: products of cyclic groups, and cocycle
//! extensions on pairs `(x, y)` with `(x, y) * (x', y') = (x + x', y + y' + β(x, x'))`
//! for a biadditive `β`. Every element has a dense encoding in `[0, |G|)`
//! with the identity at 0; all algorithms work on those encodings.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{FiniteField, GfError};

/// Largest group accepted by enumeration-style operations.
pub const MAX_ENUMERATION: u64 = 1 << 20;
/// Largest group accepted by [`Group::quotient`].
pub const MAX_QUOTIENT: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element does not belong to this group")]
    GroupMismatch,
    #[error("group of order {order} exceeds the limit {limit}")]
    TooLarge { order: u64, limit: u64 },
    #[error("the given elements do not form a subgroup")]
    NotASubgroup,
    #[error("cyclic factor orders must be positive")]
    ZeroFactor,
    #[error("bilinear form needs {expected} rows, got {got}")]
    FormDimension { expected: usize, got: usize },
    #[error("bilinear forms are only supported over GF(2)-spaces")]
    FormCharacteristic,
    #[error("semifield table has the wrong size")]
    TableSize,
    #[error("invalid group spec {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Bilinear form on GF(2)^m. Row `i` is a bitmask of the `i`-th matrix row,
/// so `B(x, y) = Σ_i x_i <row_i, y>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    rows: Vec<u64>,
}

impl BilinearForm {
    pub fn from_rows(rows: Vec<u64>) -> Self {
        BilinearForm { rows }
    }

    pub fn zero(m: usize) -> Self {
        BilinearForm { rows: vec![0; m] }
    }

    /// The standard dot product.
    pub fn dot(m: usize) -> Self {
        BilinearForm {
            rows: (0..m).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn eval(&self, x: u64, y: u64) -> u32 {
        let mut acc = 0u32;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= (self.rows[i] & y).count_ones() & 1;
            bits &= bits - 1;
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.rows.len();
        (0..m).all(|i| (0..m).all(|j| (self.rows[i] >> j & 1) == (self.rows[j] >> i & 1)))
    }

    /// True iff `B(x, x) = 0` for every `x`.
    pub fn is_alternating(&self) -> bool {
        (0..1u64 << self.rows.len()).all(|x| self.eval(x, x) == 0)
    }
}

/// True iff the form vanishes on the diagonal of GF(2)^dimension.
pub fn is_alternating(form: &BilinearForm, dimension: usize) -> Result<bool, GroupError> {
    if form.dimension() != dimension {
        return Err(GroupError::FormDimension {
            expected: dimension,
            got: form.dimension(),
        });
    }
    Ok(form.is_alternating())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGroup {
    orders: Vec<u32>,
    order: u32,
}

impl ProductGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self, GroupError> {
        if orders.contains(&0) {
            return Err(GroupError::ZeroFactor);
        }
        let order = orders.iter().try_fold(1u64, |acc, &n| {
            let next = acc * n as u64;
            (next <= u32::MAX as u64).then_some(next)
        });
        let order = order.ok_or(GroupError::TooLarge {
            order: u64::MAX,
            limit: u32::MAX as u64,
        })? as u32;
        Ok(ProductGroup { orders, order })
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Mixed-radix encoding, first factor least significant.
    pub fn encode(&self, residues: &[u32]) -> u32 {
        residues
            .iter()
            .zip(&self.orders)
            .rev()
            .fold(0, |acc, (&r, &n)| acc * n + r % n)
    }

    pub fn decode(&self, mut a: u32) -> Vec<u32> {
        self.orders
            .iter()
            .map(|&n| {
                let r = a % n;
                a /= n;
                r
            })
            .collect()
    }

    #[inline]
    fn op(&self, mut a: u32, mut b: u32) -> u32 {
        let (mut out, mut weight) = (0, 1);
        for &n in &self.orders {
            let r = (a % n + b % n) % n;
            out += r * weight;
            weight *= n;
            a /= n;
            b /= n;
        }
        out
    }

    #[inline]
    fn inverse(&self, mut a: u32) -> u32 {
        let (mut out, mut weight) = (0, 1);
        for &n in &self.orders {
            out += ((n - a % n) % n) * weight;
            weight *= n;
            a /= n;
        }
        out
    }
}

/// The twisting map of a [`CocycleGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cocycle {
    Zero,
    /// `β(x, x') = x·x'` in the base field (fiber equals base).
    FieldProduct,
    /// `β(x, x') = x∘x'` given by a row-major product table over the base.
    Semifield(Arc<Vec<u32>>),
    /// `β = B` on GF(2)^m with values in GF(2).
    Form(BilinearForm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleGroup {
    base: FiniteField,
    fiber: FiniteField,
    cocycle: Cocycle,
}

impl CocycleGroup {
    /// Pairs over `base × base` twisted by the field product.
    pub fn field_product(base: &FiniteField) -> Self {
        CocycleGroup {
            base: base.clone(),
            fiber: base.clone(),
            cocycle: Cocycle::FieldProduct,
        }
    }

    /// Pairs over `base × base` twisted by a multiplication table.
    pub fn semifield(base: &FiniteField, table: Arc<Vec<u32>>) -> Result<Self, GroupError> {
        let q = base.order() as usize;
        if table.len() != q * q {
            return Err(GroupError::TableSize);
        }
        Ok(CocycleGroup {
            base: base.clone(),
            fiber: base.clone(),
            cocycle: Cocycle::Semifield(table),
        })
    }

    /// The direct product `base × base`.
    pub fn direct(base: &FiniteField) -> Self {
        CocycleGroup {
            base: base.clone(),
            fiber: base.clone(),
            cocycle: Cocycle::Zero,
        }
    }

    /// GF(2)^m × GF(2) twisted by a bilinear form.
    pub fn with_form(form: BilinearForm) -> Result<Self, GroupError> {
        let m = form.dimension() as u32;
        if m == 0 {
            return Err(GroupError::FormDimension { expected: 1, got: 0 });
        }
        let base = FiniteField::new(2, m, None)?;
        Self::with_form_over(&base, form)
    }

    pub fn with_form_over(base: &FiniteField, form: BilinearForm) -> Result<Self, GroupError> {
        if base.characteristic() != 2 {
            return Err(GroupError::FormCharacteristic);
        }
        if form.dimension() != base.degree() as usize {
            return Err(GroupError::FormDimension {
                expected: base.degree() as usize,
                got: form.dimension(),
            });
        }
        Ok(CocycleGroup {
            base: base.clone(),
            fiber: FiniteField::new(2, 1, None)?,
            cocycle: Cocycle::Form(form),
        })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn fiber(&self) -> &FiniteField {
        &self.fiber
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn order(&self) -> u32 {
        self.base.order() * self.fiber.order()
    }

    #[inline]
    pub fn encode(&self, x: u32, y: u32) -> u32 {
        x + self.base.order() * y
    }

    #[inline]
    pub fn decode(&self, a: u32) -> (u32, u32) {
        (a % self.base.order(), a / self.base.order())
    }

    #[inline]
    pub fn beta(&self, x: u32, x2: u32) -> u32 {
        match &self.cocycle {
            Cocycle::Zero => 0,
            Cocycle::FieldProduct => self.base.mul(x, x2),
            Cocycle::Semifield(t) => t[(x * self.base.order() + x2) as usize],
            Cocycle::Form(b) => b.eval(x as u64, x2 as u64),
        }
    }

    #[inline]
    fn op(&self, a: u32, b: u32) -> u32 {
        let (x, y) = self.decode(a);
        let (x2, y2) = self.decode(b);
        let f = &self.fiber;
        self.encode(self.base.add(x, x2), f.add(f.add(y, y2), self.beta(x, x2)))
    }

    #[inline]
    fn inverse(&self, a: u32) -> u32 {
        let (x, y) = self.decode(a);
        let f = &self.fiber;
        self.encode(self.base.neg(x), f.add(f.neg(y), self.beta(x, x)))
    }

    /// `β` is biadditive and symmetric on every pair.
    pub fn is_commutative(&self) -> bool {
        let q = self.base.order();
        (0..q).all(|x| (0..q).all(|x2| self.beta(x, x2) == self.beta(x2, x)))
    }
}

/// Structured view of an element, used at API boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Residues(Vec<u32>),
    Pair(u32, u32),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Residues(r) => {
                let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Pair(x, y) => write!(f, "({x},{y})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    Product(ProductGroup),
    Cocycle(CocycleGroup),
}

impl From<ProductGroup> for Group {
    fn from(g: ProductGroup) -> Self {
        Group::Product(g)
    }
}

impl From<CocycleGroup> for Group {
    fn from(g: CocycleGroup) -> Self {
        Group::Cocycle(g)
    }
}

impl Group {
    pub fn cyclic(orders: &[u32]) -> Result<Self, GroupError> {
        Ok(Group::Product(ProductGroup::new(orders.to_vec())?))
    }

    pub fn order(&self) -> u32 {
        match self {
            Group::Product(g) => g.order(),
            Group::Cocycle(g) => g.order(),
        }
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn op(&self, a: u32, b: u32) -> u32 {
        match self {
            Group::Product(g) => g.op(a, b),
            Group::Cocycle(g) => g.op(a, b),
        }
    }

    #[inline]
    pub fn inverse(&self, a: u32) -> u32 {
        match self {
            Group::Product(g) => g.inverse(a),
            Group::Cocycle(g) => g.inverse(a),
        }
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let (mut base, mut acc) = (a, 0);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.op(acc, base);
            }
            base = self.op(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            Group::Product(_) => true,
            Group::Cocycle(g) => g.is_commutative(),
        }
    }

    pub fn encode(&self, e: &GroupElement) -> Result<u32, GroupError> {
        match (self, e) {
            (Group::Product(g), GroupElement::Residues(r))
                if r.len() == g.orders.len() && r.iter().zip(&g.orders).all(|(x, n)| x < n) =>
            {
                Ok(g.encode(r))
            }
            (Group::Cocycle(g), GroupElement::Pair(x, y)) if *x < g.base.order() && *y < g.fiber.order() => {
                Ok(g.encode(*x, *y))
            }
            _ => Err(GroupError::GroupMismatch),
        }
    }

    pub fn decode(&self, a: u32) -> GroupElement {
        match self {
            Group::Product(g) => GroupElement::Residues(g.decode(a)),
            Group::Cocycle(g) => {
                let (x, y) = g.decode(a);
                GroupElement::Pair(x, y)
            }
        }
    }

    pub fn op_elements(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        let (a, b) = (self.encode(a)?, self.encode(b)?);
        Ok(self.decode(self.op(a, b)))
    }

    pub fn inverse_element(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        Ok(self.decode(self.inverse(self.encode(a)?)))
    }

    pub fn identity_element(&self) -> GroupElement {
        self.decode(0)
    }

    fn check_size(&self, limit: u64) -> Result<(), GroupError> {
        let order = self.order() as u64;
        if order > limit {
            return Err(GroupError::TooLarge { order, limit });
        }
        Ok(())
    }

    /// Number of elements of each order.
    pub fn element_order_census(&self) -> Result<BTreeMap<u32, u64>, GroupError> {
        self.check_size(MAX_ENUMERATION)?;
        let mut census = BTreeMap::new();
        for a in 0..self.order() {
            *census.entry(self.element_order(a)).or_insert(0) += 1;
        }
        Ok(census)
    }

    /// Subgroup generated by `generators`, as a sorted element list.
    pub fn generated_subgroup(&self, generators: &[u32]) -> Result<Vec<u32>, GroupError> {
        self.check_size(MAX_ENUMERATION)?;
        let n = self.order();
        if generators.iter().any(|&g| g >= n) {
            return Err(GroupError::GroupMismatch);
        }
        let mut member = vec![false; n as usize];
        member[0] = true;
        let mut elems = vec![0u32];
        for &g in generators {
            if member[g as usize] {
                continue;
            }
            // multiply the current subgroup by successive powers of g
            let base = elems.clone();
            let mut step = g;
            while !member[step as usize] {
                for &h in &base {
                    let x = self.op(h, step);
                    member[x as usize] = true;
                    elems.push(x);
                }
                step = self.op(step, g);
            }
        }
        elems.sort_unstable();
        Ok(elems)
    }

    /// Checks that `set` is a subgroup and returns it sorted and deduplicated.
    pub fn subgroup_from_elements(&self, set: &[u32]) -> Result<Vec<u32>, GroupError> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let closure = self.generated_subgroup(&sorted)?;
        if closure != sorted {
            return Err(GroupError::NotASubgroup);
        }
        Ok(sorted)
    }

    /// `G / <generators>` as a product of cyclic groups, together with the
    /// canonical epimorphism as a lookup table over encodings.
    pub fn quotient(&self, subgroup_generators: &[u32]) -> Result<Quotient, GroupError> {
        self.check_size(MAX_QUOTIENT)?;
        let subgroup = self.generated_subgroup(subgroup_generators)?;
        let n = self.order() as usize;

        // invariant-factor decomposition: repeatedly take an element of
        // maximal order modulo the span so far
        let mut levels: Vec<Vec<bool>> = Vec::new();
        let mut span = vec![false; n];
        for &u in &subgroup {
            span[u as usize] = true;
        }
        let mut span_size = subgroup.len();
        let mut gens: Vec<u32> = Vec::new();
        let mut orders: Vec<u32> = Vec::new();
        while span_size < n {
            let order_mod = |g: u32| {
                let (mut x, mut k) = (g, 1u32);
                while !span[x as usize] {
                    x = self.op(x, g);
                    k += 1;
                }
                k
            };
            let (best, best_order) = (0..n as u32)
                .map(|g| (g, order_mod(g)))
                .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            levels.push(span.clone());
            let members: Vec<u32> = (0..n as u32).filter(|&x| span[x as usize]).collect();
            let mut step = best;
            for _ in 1..best_order {
                for &h in &members {
                    span[self.op(h, step) as usize] = true;
                }
                step = self.op(step, best);
            }
            span_size *= best_order as usize;
            gens.push(best);
            orders.push(best_order);
        }

        // lift later generators so that they have the same order modulo
        // each earlier span; afterwards the generators are independent mod U
        for j in (0..gens.len()).rev() {
            let below = &levels[j];
            let (gj, nj) = (gens[j], orders[j]);
            for i in j + 1..gens.len() {
                let ni = orders[i];
                let target = self.pow(gens[i], ni as u64);
                let t = (0..nj)
                    .find(|&t| below[self.op(target, self.inverse(self.pow(gj, t as u64))) as usize])
                    .expect("power of a later generator lies in the next span");
                debug_assert_eq!(t % ni, 0);
                let adjust = self.inverse(self.pow(gj, (t / ni) as u64));
                gens[i] = self.op(gens[i], adjust);
            }
        }

        let target = ProductGroup::new(orders.clone())?;
        let mut map = vec![u32::MAX; n];
        for code in 0..target.order() {
            let coords = target.decode(code);
            let rep = coords
                .iter()
                .zip(&gens)
                .fold(0, |acc, (&c, &g)| self.op(acc, self.pow(g, c as u64)));
            for &u in &subgroup {
                map[self.op(rep, u) as usize] = code;
            }
        }
        debug_assert!(map.iter().all(|&c| c != u32::MAX));
        Ok(Quotient {
            group: target,
            map,
            subgroup,
            generators: gens,
        })
    }

    /// Parses `Z8`, `Z4xZ4`, `Z2^4`, `cocycle:<field>:product`,
    /// `cocycle:<field>:zero` or `cocycle:<field>:form=<hex rows>`.
    pub fn from_spec(spec: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadSpec(spec.to_string());
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("cocycle:") {
            let (field, twist) = rest.rsplit_once(':').ok_or_else(bad)?;
            let field = FiniteField::from_spec(field)?;
            return match twist {
                "product" => Ok(Group::Cocycle(CocycleGroup::field_product(&field))),
                "zero" => Ok(Group::Cocycle(CocycleGroup::direct(&field))),
                t => {
                    let rows = t.strip_prefix("form=").ok_or_else(bad)?;
                    let rows: Vec<u64> = rows
                        .split(',')
                        .map(|r| u64::from_str_radix(r.trim().trim_start_matches("0x"), 16))
                        .collect::<Result<_, _>>()
                        .map_err(|_| bad())?;
                    Ok(Group::Cocycle(CocycleGroup::with_form_over(
                        &field,
                        BilinearForm::from_rows(rows),
                    )?))
                }
            };
        }
        let mut orders = Vec::new();
        for part in spec.split('x') {
            let part = part.trim().strip_prefix('Z').ok_or_else(bad)?;
            let (n, reps) = match part.split_once('^') {
                Some((n, k)) => (n, k.parse::<usize>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let n: u32 = n.parse().map_err(|_| bad())?;
            orders.extend(std::iter::repeat_n(n, reps));
        }
        Group::cyclic(&orders)
    }

    /// Inverse of [`Group::from_spec`] where a spec string exists.
    pub fn spec(&self) -> Option<String> {
        match self {
            Group::Product(g) => {
                if g.orders.is_empty() {
                    return Some("Z1".into());
                }
                let parts: Vec<String> = g.orders.iter().map(|n| format!("Z{n}")).collect();
                Some(parts.join("x"))
            }
            Group::Cocycle(g) => {
                let twist = match &g.cocycle {
                    Cocycle::FieldProduct => "product".to_string(),
                    Cocycle::Zero => "zero".to_string(),
                    Cocycle::Form(b) => {
                        let rows: Vec<String> = b.rows.iter().map(|r| format!("{r:x}")).collect();
                        format!("form={}", rows.join(","))
                    }
                    Cocycle::Semifield(_) => return None,
                };
                Some(format!("cocycle:{}:{}", g.base.spec(), twist))
            }
        }
    }
}

/// Result of [`Group::quotient`].
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: ProductGroup,
    /// Image of every element encoding.
    pub map: Vec<u32>,
    /// The subgroup factored out, sorted.
    pub subgroup: Vec<u32>,
    /// Preimages of the cyclic generators of the quotient.
    pub generators: Vec<u32>,
}

impl Quotient {
    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        self.map[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(g: &Group) -> Vec<(u32, u64)> {
        g.element_order_census().unwrap().into_iter().collect()
    }

    #[test]
    fn cyclic_arithmetic() {
        let z8 = Group::from_spec("Z8").unwrap();
        assert_eq!(z8.op(5, 6), 3);
        for g in 0..8 {
            assert_eq!(z8.op(g, z8.inverse(g)), 0);
        }
        let e = z8
            .op_elements(&GroupElement::Residues(vec![5]), &GroupElement::Residues(vec![6]))
            .unwrap();
        assert_eq!(e, GroupElement::Residues(vec![3]));
        assert_eq!(
            z8.op_elements(&GroupElement::Pair(1, 0), &GroupElement::Residues(vec![6])),
            Err(GroupError::GroupMismatch)
        );
    }

    #[test]
    fn cocycle_over_gf3() {
        let f = FiniteField::new(3, 1, None).unwrap();
        let g = Group::Cocycle(CocycleGroup::field_product(&f));
        let r = g
            .op_elements(&GroupElement::Pair(1, 0), &GroupElement::Pair(1, 0))
            .unwrap();
        assert_eq!(r, GroupElement::Pair(2, 1));
        let inv = g.inverse_element(&GroupElement::Pair(1, 2)).unwrap();
        // (-1, -2 + 1*1) = (2, 2)
        assert_eq!(inv, GroupElement::Pair(2, 2));
        for a in 0..g.order() {
            assert_eq!(g.op(a, g.inverse(a)), 0);
        }
    }

    #[test]
    fn censuses() {
        let z44 = Group::from_spec("Z4xZ4").unwrap();
        assert_eq!(census(&z44), vec![(1, 1), (2, 3), (4, 12)]);
        for m in 1..=6usize {
            let alt = Group::Cocycle(CocycleGroup::with_form(BilinearForm::zero(m)).unwrap());
            assert_eq!(census(&alt), vec![(1, 1), (2, (1 << (m + 1)) - 1)]);
            let dot = Group::Cocycle(CocycleGroup::with_form(BilinearForm::dot(m)).unwrap());
            let c = dot.element_order_census().unwrap();
            assert_eq!(c[&1] + c[&2], 1 << m);
            assert_eq!(c[&4], 1 << m);
        }
    }

    #[test]
    fn census_size_limit() {
        let big = Group::cyclic(&[1 << 21]).unwrap();
        assert!(matches!(big.element_order_census(), Err(GroupError::TooLarge { .. })));
    }

    #[test]
    fn alternating_forms() {
        assert!(is_alternating(&BilinearForm::zero(3), 3).unwrap());
        for m in 1..6 {
            assert!(!is_alternating(&BilinearForm::dot(m), m).unwrap());
        }
        assert!(is_alternating(&BilinearForm::from_rows(vec![0b10, 0b01]), 2).unwrap());
        assert!(is_alternating(&BilinearForm::dot(2), 3).is_err());
    }

    #[test]
    fn cocycle_associativity_exhaustive() {
        let f4 = FiniteField::new(2, 2, None).unwrap();
        let f3 = FiniteField::new(3, 2, None).unwrap();
        let groups = [
            Group::Cocycle(CocycleGroup::field_product(&f4)),
            Group::Cocycle(CocycleGroup::field_product(&f3)),
            Group::Cocycle(CocycleGroup::with_form(BilinearForm::from_rows(vec![0b011, 0b110, 0b100])).unwrap()),
        ];
        for g in &groups {
            let n = g.order();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.op(g.op(a, b), c), g.op(a, g.op(b, c)));
                    }
                }
            }
        }
        // a non-symmetric form gives a noncommutative group
        assert!(!groups[2].is_commutative());
        assert!(groups[0].is_commutative());
    }

    #[test]
    fn quotients() {
        let z8 = Group::from_spec("Z8").unwrap();
        let q = z8.quotient(&[4]).unwrap();
        assert_eq!(q.group.cyclic_orders(), &[4]);
        for x in 0..8 {
            assert_eq!(q.apply(x), x % 4);
        }

        let z44 = Group::from_spec("Z4xZ4").unwrap();
        let trivial = z44.quotient(&[]).unwrap();
        assert_eq!(trivial.group.order(), 16);
        assert_eq!(trivial.group.cyclic_orders(), &[4, 4]);

        let two = z44.encode(&GroupElement::Residues(vec![2, 0])).unwrap();
        let two_b = z44.encode(&GroupElement::Residues(vec![0, 2])).unwrap();
        let q = z44.quotient(&[two, two_b]).unwrap();
        assert_eq!(q.group.cyclic_orders(), &[2, 2]);
    }

    #[test]
    fn quotient_map_is_a_homomorphism() {
        let f8 = FiniteField::new(2, 3, None).unwrap();
        let g = Group::Cocycle(CocycleGroup::field_product(&f8));
        let cg = match &g {
            Group::Cocycle(c) => c.clone(),
            _ => unreachable!(),
        };
        // kill the fiber elements with zero absolute trace
        let gens: Vec<u32> = (0..8).filter(|&y| f8.abs_trace(y) == 0).map(|y| cg.encode(0, y)).collect();
        let q = g.quotient(&gens).unwrap();
        assert_eq!(q.group.order(), 16);
        let target = Group::Product(q.group.clone());
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(q.apply(g.op(a, b)), target.op(q.apply(a), q.apply(b)));
            }
        }
        // Z4 x Z2 x Z2
        let mut orders = q.group.cyclic_orders().to_vec();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 2, 4]);
    }

    #[test]
    fn subgroup_checks() {
        let z8 = Group::from_spec("Z8").unwrap();
        assert_eq!(z8.subgroup_from_elements(&[0, 4]).unwrap(), vec![0, 4]);
        assert_eq!(z8.subgroup_from_elements(&[0, 2]), Err(GroupError::NotASubgroup));
        assert_eq!(z8.generated_subgroup(&[6]).unwrap(), vec![0, 2, 4, 6]);
    }

    #[test]
    fn spec_round_trip() {
        for s in ["Z8", "Z4xZ4", "cocycle:2^3/1,0,1,1:product", "cocycle:3^1/0,1:zero", "cocycle:2^2/1,1,1:form=1,2"] {
            let g = Group::from_spec(s).unwrap();
            assert_eq!(g.spec().unwrap(), s);
        }
        assert_eq!(Group::from_spec("Z2^3").unwrap().spec().unwrap(), "Z2xZ2xZ2");
        assert!(Group::from_spec("Q8").is_err());
    }
}
