//! Divisible designs and projective planes: the designs of a semifield and
//! of a relative difference set, axiom checks, and the extension of an
//! `(n,n,n,1)` design to a projective plane.

use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rds::{RdsParams, RelativeDifferenceSet};
use crate::semifield::{check_axioms, PreSemifield};

/// Largest semifield order for the design construction.
pub const MAX_DESIGN_FIELD: u32 = 64;
/// Largest group for the design of a difference set.
pub const MAX_DESIGN_GROUP: u32 = 1 << 14;
/// Above this many points, P1 and P2 are checked on samples.
pub const MAX_EXHAUSTIVE_PLANE: usize = 10_000;
const PLANE_SAMPLES: usize = 10_000;
/// Default seed for sampled plane checks.
pub const PLANE_SEED: u64 = 0x91a7e;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("order {0} is too large")]
    TooLarge(u32),
    #[error("structure has no point or line classes")]
    MissingClasses,
    #[error("point index {0} out of range")]
    BadPoint(u32),
    #[error("pre-semifield axioms fail")]
    AxiomsFail,
    #[error("not a divisible (n,n,n,1) design: {0}")]
    DesignInvalid(String),
    #[error("imported structure fails verification: {0}")]
    ImportInvalid(String),
    #[error("malformed structure text: {0}")]
    Parse(String),
}

/// Points `0..num_points`; each line a sorted list of point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    num_points: usize,
    lines: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
    point_classes: Option<Vec<Vec<u32>>>,
    line_classes: Option<Vec<Vec<u32>>>,
}

impl IncidenceStructure {
    pub fn new(
        num_points: usize,
        lines: Vec<Vec<u32>>,
        point_classes: Option<Vec<Vec<u32>>>,
        line_classes: Option<Vec<Vec<u32>>>,
    ) -> Result<Self, DesignError> {
        let mut lines = lines;
        let mut point_lines = vec![Vec::new(); num_points];
        for (i, line) in lines.iter_mut().enumerate() {
            line.sort_unstable();
            line.dedup();
            for &p in line.iter() {
                if p as usize >= num_points {
                    return Err(DesignError::BadPoint(p));
                }
                point_lines[p as usize].push(i as u32);
            }
        }
        let sorted = |c: Option<Vec<Vec<u32>>>| {
            c.map(|mut c| {
                c.iter_mut().for_each(|x| x.sort_unstable());
                c
            })
        };
        Ok(IncidenceStructure {
            num_points,
            lines,
            point_lines,
            point_classes: sorted(point_classes),
            line_classes: sorted(line_classes),
        })
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    pub fn lines_through(&self, p: u32) -> &[u32] {
        &self.point_lines[p as usize]
    }

    pub fn point_classes(&self) -> Option<&[Vec<u32>]> {
        self.point_classes.as_deref()
    }

    pub fn line_classes(&self) -> Option<&[Vec<u32>]> {
        self.line_classes.as_deref()
    }

    /// Points and lines interchanged.
    pub fn dual(&self) -> IncidenceStructure {
        IncidenceStructure::new(
            self.lines.len(),
            self.point_lines.clone(),
            self.line_classes.clone(),
            self.point_classes.clone(),
        )
        .expect("dual indices are in range")
    }

    /// The structure with point `p` renamed `map[p]`.
    pub fn relabel_points(&self, map: &[u32]) -> Result<IncidenceStructure, DesignError> {
        if map.len() != self.num_points {
            return Err(DesignError::BadPoint(map.len() as u32));
        }
        let rename = |v: &Vec<u32>| v.iter().map(|&p| map[p as usize]).collect::<Vec<u32>>();
        IncidenceStructure::new(
            self.num_points,
            self.lines.iter().map(rename).collect(),
            self.point_classes.as_ref().map(|c| c.iter().map(rename).collect()),
            self.line_classes.clone(),
        )
    }

    /// Hash of the sorted multiset of line hashes. Equal structures (as sets
    /// of point sets) have equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        let mut hashes: Vec<u64> = self
            .lines
            .iter()
            .map(|l| {
                let mut h = DefaultHasher::new();
                l.hash(&mut h);
                h.finish()
            })
            .collect();
        hashes.sort_unstable();
        let mut h = DefaultHasher::new();
        self.num_points.hash(&mut h);
        hashes.hash(&mut h);
        h.finish()
    }

    /// Header, then `l`, `pc` and `lc` records of point or line indices.
    pub fn to_text(&self, kind: &str) -> String {
        let mut out = format!("incidence {kind} points={} lines={}\n", self.num_points, self.lines.len());
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        for l in &self.lines {
            writeln!(out, "l {}", join(l)).unwrap();
        }
        for c in self.point_classes.iter().flatten() {
            writeln!(out, "pc {}", join(c)).unwrap();
        }
        for c in self.line_classes.iter().flatten() {
            writeln!(out, "lc {}", join(c)).unwrap();
        }
        out
    }

    /// Reads [`Self::to_text`] output and returns the structure and its kind.
    pub fn parse_text(text: &str) -> Result<(IncidenceStructure, String), DesignError> {
        let bad = |why: String| DesignError::Parse(why);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("incidence") {
            return Err(bad("missing 'incidence' header".into()));
        }
        let kind = parts.next().ok_or_else(|| bad("missing kind".into()))?.to_string();
        let mut num_points = None;
        for part in parts {
            if let Some(v) = part.strip_prefix("points=") {
                num_points = Some(v.parse::<usize>().map_err(|_| bad(format!("bad count {v:?}")))?);
            }
        }
        let num_points = num_points.ok_or_else(|| bad("missing points=".into()))?;
        let (mut ls, mut pcs, mut lcs) = (Vec::new(), Vec::new(), Vec::new());
        for line in lines {
            let mut toks = line.split_whitespace();
            let tag = toks.next().unwrap_or_default();
            let idx: Vec<u32> = toks
                .map(|t| t.parse::<u32>().map_err(|_| bad(format!("bad index {t:?}"))))
                .collect::<Result<_, _>>()?;
            match tag {
                "l" => ls.push(idx),
                "pc" => pcs.push(idx),
                "lc" => lcs.push(idx),
                t => return Err(bad(format!("unknown record {t:?}"))),
            }
        }
        let opt = |v: Vec<Vec<u32>>| (!v.is_empty()).then_some(v);
        Ok((IncidenceStructure::new(num_points, ls, opt(pcs), opt(lcs))?, kind))
    }

    /// Parses and re-verifies: designs against D1-D5, planes against P1-P3.
    pub fn import(text: &str) -> Result<(IncidenceStructure, String), DesignError> {
        let (s, kind) = Self::parse_text(text)?;
        match kind.as_str() {
            "design" => {
                let r = verify_design(&s, None)?;
                if !r.ok() {
                    return Err(DesignError::ImportInvalid(format!("{:?}", r.witnesses)));
                }
            }
            "plane" => {
                let r = verify_plane(&s);
                if !r.ok() {
                    return Err(DesignError::ImportInvalid(format!("{:?}", r.witnesses)));
                }
            }
            _ => {}
        }
        Ok((s, kind))
    }
}

/// Points `(x, y)` with index `x + q·y`; line `[m, b]` with index `m + q·b`
/// holds the points with `y = m∘x + b`. Classes: points by `x`, lines by `m`.
pub fn design_from_semifield(s: &PreSemifield) -> Result<IncidenceStructure, DesignError> {
    let f = s.field();
    let q = f.order();
    if q > MAX_DESIGN_FIELD {
        return Err(DesignError::TooLarge(q));
    }
    if !check_axioms(s).presemifield() {
        return Err(DesignError::AxiomsFail);
    }
    let mut lines = Vec::with_capacity((q * q) as usize);
    for b in 0..q {
        for m in 0..q {
            lines.push((0..q).map(|x| x + q * f.add(s.mul(m, x), b)).collect());
        }
    }
    let point_classes = (0..q).map(|x| (0..q).map(|y| x + q * y).collect()).collect();
    let line_classes = (0..q).map(|m| (0..q).map(|b| m + q * b).collect()).collect();
    IncidenceStructure::new((q * q) as usize, lines, Some(point_classes), Some(line_classes))
}

/// Points are group elements; line `g` is `R ⋆ g`; both classes are the
/// right cosets `N ⋆ g`.
pub fn design_from_rds(d: &RelativeDifferenceSet) -> Result<IncidenceStructure, DesignError> {
    let g = d.group();
    let order = g.order();
    if order > MAX_DESIGN_GROUP {
        return Err(DesignError::TooLarge(order));
    }
    let lines: Vec<Vec<u32>> = (0..order)
        .map(|t| d.set().iter().map(|&r| g.op(r, t)).collect())
        .collect();
    let mut seen = vec![false; order as usize];
    let mut classes = Vec::new();
    for t in 0..order {
        if seen[t as usize] {
            continue;
        }
        let coset: Vec<u32> = d.forbidden().iter().map(|&n| g.op(n, t)).collect();
        for &c in &coset {
            seen[c as usize] = true;
        }
        classes.push(coset);
    }
    IncidenceStructure::new(order as usize, lines, Some(classes.clone()), Some(classes))
}

/// The point relabeling `(x, y) ↦ (x, y - x∘x)` carrying the design of the
/// difference set `{(x, x∘x)}` onto the design of the semifield; the line
/// `R⋆(g₁, g₂)` becomes `[-g₁, g₂]`.
pub fn canonical_identification(s: &PreSemifield) -> Vec<u32> {
    let f = s.field();
    let q = f.order();
    (0..q * q)
        .map(|i| {
            let (x, y) = (i % q, i / q);
            x + q * f.sub(y, s.mul(x, x))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignReport {
    pub d1: bool,
    pub d2: bool,
    pub d3: bool,
    pub d4: bool,
    pub d5: bool,
    /// Parameters read off the structure (or the expected ones when given).
    pub params: Option<RdsParams>,
    pub witnesses: Vec<String>,
}

impl DesignReport {
    pub fn ok(&self) -> bool {
        self.d1 && self.d2 && self.d3 && self.d4 && self.d5
    }
}

fn class_index(classes: &[Vec<u32>], size: usize) -> Result<Vec<u32>, String> {
    let mut index = vec![u32::MAX; size];
    for (i, c) in classes.iter().enumerate() {
        for &p in c {
            if p as usize >= size {
                return Err(format!("class member {p} out of range"));
            }
            if index[p as usize] != u32::MAX {
                return Err(format!("{p} lies in two classes"));
            }
            index[p as usize] = i as u32;
        }
    }
    match index.iter().position(|&c| c == u32::MAX) {
        Some(p) => Err(format!("{p} lies in no class")),
        None => Ok(index),
    }
}

/// For every pair of distinct items in different classes, the number of
/// blocks containing both must be `lambda`; returns the first failure.
fn pair_counts(
    items: usize,
    blocks_of: &[Vec<u32>],
    members: &[Vec<u32>],
    class: &[u32],
    lambda: u64,
) -> Option<(u32, u32, u64)> {
    (0..items as u32).into_par_iter().find_map_first(|a| {
        let mut count = vec![0u64; items];
        for &b in &blocks_of[a as usize] {
            for &other in &members[b as usize] {
                count[other as usize] += 1;
            }
        }
        (0..items as u32).find_map(|b| {
            let expected = if class[a as usize] == class[b as usize] { 0 } else { lambda };
            (b != a && count[b as usize] != expected).then_some((a, b, count[b as usize]))
        })
    })
}

/// Checks D1-D5 exhaustively. Points in a common class must share no line
/// (this is what makes the classes of a divisible design well defined).
pub fn verify_design(i: &IncidenceStructure, expected: Option<RdsParams>) -> Result<DesignReport, DesignError> {
    let (pcs, lcs) = match (&i.point_classes, &i.line_classes) {
        (Some(p), Some(l)) => (p, l),
        _ => return Err(DesignError::MissingClasses),
    };
    let mut witnesses = Vec::new();
    let m = pcs.len() as u32;
    let n = pcs.first().map_or(0, Vec::len) as u32;
    let k = i.lines.first().map_or(0, Vec::len) as u32;
    let inferred_lambda = {
        // λ from the first point pair in different classes
        let pidx = class_index(pcs, i.num_points).ok();
        pidx.and_then(|idx| {
            let a = 0u32;
            let b = (0..i.num_points as u32).find(|&b| idx[b as usize] != idx[0])?;
            Some(
                i.point_lines[a as usize]
                    .iter()
                    .filter(|&&l| i.lines[l as usize].binary_search(&b).is_ok())
                    .count() as u32,
            )
        })
    };
    let params = expected.or(inferred_lambda.map(|lambda| RdsParams { m, n, k, lambda }));
    let Some(params) = params else {
        witnesses.push("cannot infer parameters".into());
        return Ok(DesignReport {
            d1: false,
            d2: false,
            d3: false,
            d4: false,
            d5: false,
            params: None,
            witnesses,
        });
    };
    let total = (params.m * params.n) as usize;
    let classes_ok = |name: &str, classes: &[Vec<u32>], size: usize, w: &mut Vec<String>| -> Option<Vec<u32>> {
        if size != total {
            w.push(format!("{name}: {size} items, expected {total}"));
            return None;
        }
        if classes.len() != params.m as usize || classes.iter().any(|c| c.len() != params.n as usize) {
            w.push(format!("{name}: classes are not {} classes of size {}", params.m, params.n));
            return None;
        }
        match class_index(classes, size) {
            Ok(idx) => Some(idx),
            Err(e) => {
                w.push(format!("{name}: {e}"));
                None
            }
        }
    };
    let pidx = classes_ok("D1", pcs, i.num_points, &mut witnesses);
    let lidx = classes_ok("D2", lcs, i.lines.len(), &mut witnesses);
    let d3 = match &pidx {
        Some(idx) => match pair_counts(i.num_points, &i.point_lines, &i.lines, idx, params.lambda as u64) {
            None => true,
            Some((a, b, c)) => {
                witnesses.push(format!("D3: points {a} and {b} share {c} lines"));
                false
            }
        },
        None => false,
    };
    let d4 = match &lidx {
        Some(idx) => match pair_counts(i.lines.len(), &i.lines, &i.point_lines, idx, params.lambda as u64) {
            None => true,
            Some((a, b, c)) => {
                witnesses.push(format!("D4: lines {a} and {b} share {c} points"));
                false
            }
        },
        None => false,
    };
    let d5 = match (
        i.lines.iter().position(|l| l.len() != params.k as usize),
        i.point_lines.iter().position(|l| l.len() != params.k as usize),
    ) {
        (None, None) => true,
        (line, point) => {
            if let Some(l) = line {
                witnesses.push(format!("D5: line {l} has {} points", i.lines[l].len()));
            }
            if let Some(p) = point {
                witnesses.push(format!("D5: point {p} is on {} lines", i.point_lines[p].len()));
            }
            false
        }
    };
    Ok(DesignReport {
        d1: pidx.is_some(),
        d2: lidx.is_some(),
        d3,
        d4,
        d5,
        params: Some(params),
        witnesses,
    })
}

/// Adds `∞`, a line through each point class and `∞`, a point `∞_L` on
/// every line of each line class `L`, and a line through all new points.
pub fn plane_from_design(d: &IncidenceStructure) -> Result<IncidenceStructure, DesignError> {
    let report = verify_design(d, None)?;
    let n = report.params.map_or(0, |p| p.n);
    let expected = RdsParams { m: n, n, k: n, lambda: 1 };
    if !report.ok() || report.params != Some(expected) {
        return Err(DesignError::DesignInvalid(format!(
            "parameters {:?}, witnesses {:?}",
            report.params, report.witnesses
        )));
    }
    let pcs = d.point_classes.as_ref().expect("verified");
    let lcs = d.line_classes.as_ref().expect("verified");
    let base = d.num_points as u32;
    let infinity = base;
    let mut lines = d.lines.clone();
    for (j, class) in lcs.iter().enumerate() {
        for &l in class {
            lines[l as usize].push(base + 1 + j as u32);
        }
    }
    for class in pcs {
        let mut l = class.clone();
        l.push(infinity);
        lines.push(l);
    }
    lines.push((0..=lcs.len() as u32).map(|j| base + j).collect());
    IncidenceStructure::new(d.num_points + 1 + lcs.len(), lines, None, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneReport {
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
    /// `n` when every line has `n+1` points and there are `n²+n+1` points.
    pub order: Option<u32>,
    pub sampled: bool,
    pub witnesses: Vec<String>,
}

impl PlaneReport {
    pub fn ok(&self) -> bool {
        self.p1 && self.p2 && self.p3
    }
}

fn common(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

fn unique_pairs(items: usize, blocks_of: &[Vec<u32>], members: &[Vec<u32>]) -> Option<(u32, u32, u64)> {
    let singletons: Vec<u32> = (0..items as u32).collect();
    pair_counts(items, blocks_of, members, &singletons, 1)
}

fn sampled_pairs(items: usize, blocks_of: &[Vec<u32>], seed: u64) -> Option<(u32, u32, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..PLANE_SAMPLES).find_map(|_| {
        let a = rng.gen_range(0..items);
        let b = rng.gen_range(0..items);
        let c = common(&blocks_of[a], &blocks_of[b]) as u64;
        (a != b && c != 1).then_some((a as u32, b as u32, c))
    })
}

/// Four points, no three on a line.
fn quadrilateral(i: &IncidenceStructure) -> Option<[u32; 4]> {
    let collinear = |a: u32, b: u32, c: u32| {
        i.point_lines[a as usize].iter().any(|&l| {
            let line = &i.lines[l as usize];
            line.binary_search(&b).is_ok() && line.binary_search(&c).is_ok()
        })
    };
    let n = i.num_points as u32;
    let a = 0;
    for b in 1..n {
        for c in b + 1..n {
            if collinear(a, b, c) {
                continue;
            }
            for d in c + 1..n {
                if !collinear(a, b, d) && !collinear(a, c, d) && !collinear(b, c, d) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// Checks P1-P3; P1 and P2 are exhaustive up to 10⁴ points and sampled with
/// [`PLANE_SEED`] above.
pub fn verify_plane(i: &IncidenceStructure) -> PlaneReport {
    verify_plane_seeded(i, PLANE_SEED)
}

pub fn verify_plane_seeded(i: &IncidenceStructure, seed: u64) -> PlaneReport {
    let mut witnesses = Vec::new();
    let sampled = i.num_points > MAX_EXHAUSTIVE_PLANE || i.lines.len() > MAX_EXHAUSTIVE_PLANE;
    let (bad_points, bad_lines) = if sampled {
        (
            sampled_pairs(i.num_points, &i.point_lines, seed),
            sampled_pairs(i.lines.len(), &i.lines, seed.wrapping_add(1)),
        )
    } else {
        (
            unique_pairs(i.num_points, &i.point_lines, &i.lines),
            unique_pairs(i.lines.len(), &i.lines, &i.point_lines),
        )
    };
    if let Some((a, b, c)) = bad_points {
        witnesses.push(format!("P1: points {a} and {b} share {c} lines"));
    }
    if let Some((a, b, c)) = bad_lines {
        witnesses.push(format!("P2: lines {a} and {b} share {c} points"));
    }
    let quad = quadrilateral(i);
    if quad.is_none() {
        witnesses.push("P3: no four points in general position".into());
    }
    let order = i.lines.first().and_then(|l| {
        let n = l.len().checked_sub(1)? as u32;
        let uniform = i.lines.iter().all(|l| l.len() == n as usize + 1)
            && i.point_lines.iter().all(|l| l.len() == n as usize + 1);
        let count = (n * n + n + 1) as usize;
        (uniform && i.num_points == count && i.lines.len() == count).then_some(n)
    });
    PlaneReport {
        p1: bad_points.is_none(),
        p2: bad_lines.is_none(),
        p3: quad.is_some(),
        order,
        sampled,
        witnesses,
    }
}
