//! The classical planes PG(2, q) and AG(2, q) for q ≤ 5: incidence,
//! exhaustive arc searches, the specific sub-objects consumed by the
//! Hjelmslev constructions, and the stored tables of maximum arc sizes
//! m_n(q) and m'_n(q).
//!
//! Points are coded by normalized homogeneous triples over F_q (leftmost
//! nonzero coordinate 1), enumerated so that the q² points with first
//! coordinate 1 come first; these form the standard affine chart, with the
//! line x₀ = 0 (coefficients (1,0,0)) as the default line at infinity.
//! Plane sizes never exceed 31 points, so point sets are u32 bitmasks.

use crate::gf::Gf;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("no object matching the request exists")]
    NotFound,
    #[error("request parameters out of range: {0}")]
    OutOfRange(String),
    #[error("triangle sets need an odd prime p <= 5, got {0}")]
    BadTrianglePrime(u8),
    #[error("affine map is singular")]
    SingularMap,
}

/// PG(2, q) with full incidence tables.
#[derive(Clone)]
pub struct ClassicalPlane {
    pub q: u8,
    pub gf: Gf,
    pub points: Vec<[u8; 3]>,
    pub lines: Vec<[u8; 3]>,
    pub line_points: Vec<Vec<u8>>,
    pub point_lines: Vec<Vec<u8>>,
    /// Point bitmask of each line.
    pub line_mask: Vec<u32>,
    point_index: BTreeMap<[u8; 3], u8>,
}

fn normalize(gf: &Gf, t: [u8; 3]) -> Option<[u8; 3]> {
    let i = t.iter().position(|&c| c != 0)?;
    let inv = gf.inv(t[i]);
    let mut out = [0u8; 3];
    for j in 0..3 {
        out[j] = gf.mul(t[j], inv);
    }
    Some(out)
}

impl ClassicalPlane {
    pub fn new(q: u8) -> ClassicalPlane {
        let gf = Gf::new(q);
        let mut points = Vec::new();
        // affine chart first: (1, y, z)
        for y in 0..q {
            for z in 0..q {
                points.push([1, y, z]);
            }
        }
        for z in 0..q {
            points.push([0, 1, z]);
        }
        points.push([0, 0, 1]);
        let lines = points.clone(); // same normal forms, as coefficient triples
        let n = points.len();
        let mut point_index = BTreeMap::new();
        for (i, &p) in points.iter().enumerate() {
            point_index.insert(p, i as u8);
        }
        let mut line_points = vec![Vec::new(); n];
        let mut point_lines = vec![Vec::new(); n];
        let mut line_mask = vec![0u32; n];
        for (li, l) in lines.iter().enumerate() {
            for (pi, p) in points.iter().enumerate() {
                let mut acc = 0u8;
                for k in 0..3 {
                    acc = gf.add(acc, gf.mul(l[k], p[k]));
                }
                if acc == 0 {
                    line_points[li].push(pi as u8);
                    point_lines[pi].push(li as u8);
                    line_mask[li] |= 1 << pi;
                }
            }
        }
        ClassicalPlane { q, gf, points, lines, line_points, point_lines, line_mask, point_index }
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn point_id(&self, t: [u8; 3]) -> Option<u8> {
        let n = normalize(&self.gf, t)?;
        self.point_index.get(&n).copied()
    }

    /// Lines share the normal forms of points, so the same lookup applies.
    pub fn line_id(&self, t: [u8; 3]) -> Option<u8> {
        self.point_id(t)
    }

    /// The unique line through two distinct points.
    pub fn line_through(&self, a: u8, b: u8) -> u8 {
        for &l in &self.point_lines[a as usize] {
            if self.line_mask[l as usize] & (1 << b) != 0 {
                return l;
            }
        }
        panic!("no common line for points {a}, {b}");
    }

    /// The intersection point of two distinct lines.
    pub fn meet(&self, a: u8, b: u8) -> u8 {
        let m = self.line_mask[a as usize] & self.line_mask[b as usize];
        debug_assert_eq!(m.count_ones(), 1);
        m.trailing_zeros() as u8
    }

    /// Default line at infinity for the affine chart: x₀ = 0.
    pub fn infinity_line(&self) -> u8 {
        self.line_id([1, 0, 0]).unwrap()
    }

    /// Bitmask of the q² affine chart points.
    pub fn affine_mask(&self) -> u32 {
        (1u32 << (self.q as u32 * self.q as u32)) - 1
    }

    pub fn affine_id(&self, x: u8, y: u8) -> u8 {
        x * self.q + y
    }

    pub fn affine_coords(&self, id: u8) -> (u8, u8) {
        (id / self.q, id % self.q)
    }

    /// Multiplicities of the points on a line, sorted non-increasing, as a
    /// digit string such as "22110".
    pub fn line_type(&self, mult: &[u8], line: u8) -> String {
        let mut v: Vec<u8> = self.line_points[line as usize]
            .iter()
            .map(|&p| mult[p as usize])
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.iter().map(|d| char::from(b'0' + d)).collect()
    }

    /// Census of line types of a multiset: type string -> count.
    pub fn line_type_census(&self, mult: &[u8]) -> BTreeMap<String, u32> {
        let mut out = BTreeMap::new();
        for l in 0..self.lines.len() as u8 {
            *out.entry(self.line_type(mult, l)).or_insert(0) += 1;
        }
        out
    }

    /// Multiplicity sum of a multiset along a line.
    pub fn line_mult(&self, mult: &[u8], line: u8) -> u32 {
        self.line_points[line as usize].iter().map(|&p| mult[p as usize] as u32).sum()
    }
}

/// Requests understood by [`find_object`].
#[derive(Clone, Debug)]
pub enum ObjectSpec {
    /// Projective (k, n)-arc: k distinct points, every line at most n.
    Arc { k: u32, n: u8 },
    /// Projective (k, s)-blocking set: every line at least s.
    Blocking { k: u32, s: u8 },
    /// (q+2, 2)-arc.
    Hyperoval,
    /// (q+1, 2)-arc.
    Oval,
}

#[derive(Clone, Debug, Default)]
pub struct ObjectRequest {
    pub spec: Option<ObjectSpec>,
    /// Points that may not be used.
    pub forbidden_points: u32,
    /// The chosen set must be disjoint from these lines.
    pub avoid_lines: Vec<u8>,
    /// Restrict to the affine chart; line constraints then apply to the
    /// affine lines only.
    pub affine: bool,
}

impl ObjectRequest {
    pub fn new(spec: ObjectSpec) -> Self {
        ObjectRequest { spec: Some(spec), ..Default::default() }
    }

    pub fn avoiding_lines(mut self, lines: &[u8]) -> Self {
        self.avoid_lines.extend_from_slice(lines);
        self
    }

    pub fn affine(mut self) -> Self {
        self.affine = true;
        self
    }

    pub fn forbidding(mut self, mask: u32) -> Self {
        self.forbidden_points |= mask;
        self
    }
}

/// Search for a point set satisfying the request. The search is exhaustive:
/// `NotFound` means no such object exists (a request is never silently
/// relaxed). The result is re-verified before being returned.
pub fn find_object(pg: &ClassicalPlane, req: &ObjectRequest) -> Result<Vec<u8>, ClassicalError> {
    let q = pg.q;
    let mut forbidden = req.forbidden_points;
    if req.affine {
        let all = ((1u64 << pg.n_points()) - 1) as u32;
        forbidden |= all & !pg.affine_mask();
    }
    for &l in &req.avoid_lines {
        forbidden |= pg.line_mask[l as usize];
    }
    let spec = req
        .spec
        .as_ref()
        .ok_or_else(|| ClassicalError::OutOfRange("empty request".into()))?;
    let (k, cap_low, cap_high) = match spec {
        ObjectSpec::Arc { k, n } => (*k, 0u8, *n),
        ObjectSpec::Hyperoval => ((q + 2) as u32, 0, 2),
        ObjectSpec::Oval => ((q + 1) as u32, 0, 2),
        ObjectSpec::Blocking { k, s } => (*k, *s, q + 1),
    };
    let inactive_line = if req.affine { Some(pg.infinity_line()) } else { None };
    let sol =
        search_set(pg, k, cap_low, cap_high, forbidden, inactive_line).ok_or(ClassicalError::NotFound)?;
    // self-check against the request
    let mut mult = vec![0u8; pg.n_points()];
    for &p in &sol {
        assert_eq!(forbidden & (1 << p), 0);
        mult[p as usize] += 1;
    }
    for l in 0..pg.lines.len() as u8 {
        if Some(l) == inactive_line {
            continue;
        }
        let m = pg.line_mult(&mult, l) as u8;
        assert!(m <= cap_high, "find_object produced an invalid set");
        if cap_low > 0 {
            assert!(m >= cap_low, "find_object produced a non-blocking set");
        }
    }
    Ok(sol)
}

/// Exhaustive DFS for a k-point set with all (active) line multiplicities
/// at most `cap_high` and, on completion, at least `cap_low`.
fn search_set(
    pg: &ClassicalPlane,
    k: u32,
    cap_low: u8,
    cap_high: u8,
    forbidden: u32,
    inactive_line: Option<u8>,
) -> Option<Vec<u8>> {
    struct Ctx<'a> {
        pg: &'a ClassicalPlane,
        k: u32,
        cap_low: u8,
        cap_high: u8,
        forbidden: u32,
        inactive: Option<u8>,
        n_pts: u8,
    }

    fn rec(c: &Ctx, start: u8, chosen: &mut Vec<u8>, line_mult: &mut [u8]) -> bool {
        if chosen.len() as u32 == c.k {
            if c.cap_low > 0 {
                for l in 0..c.pg.lines.len() as u8 {
                    if Some(l) != c.inactive && line_mult[l as usize] < c.cap_low {
                        return false;
                    }
                }
            }
            return true;
        }
        let remaining = (c.k - chosen.len() as u32) as u8;
        for p in start..c.n_pts {
            if c.n_pts - p < remaining {
                break;
            }
            if c.forbidden & (1 << p) != 0 {
                continue;
            }
            let mut ok = true;
            for &l in &c.pg.point_lines[p as usize] {
                if Some(l) != c.inactive && line_mult[l as usize] + 1 > c.cap_high {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for &l in &c.pg.point_lines[p as usize] {
                line_mult[l as usize] += 1;
            }
            chosen.push(p);
            if rec(c, p + 1, chosen, line_mult) {
                return true;
            }
            chosen.pop();
            for &l in &c.pg.point_lines[p as usize] {
                line_mult[l as usize] -= 1;
            }
        }
        false
    }

    let ctx = Ctx {
        pg,
        k,
        cap_low,
        cap_high,
        forbidden,
        inactive: inactive_line,
        n_pts: pg.n_points() as u8,
    };
    let mut chosen = Vec::new();
    let mut line_mult = vec![0u8; pg.lines.len()];
    if rec(&ctx, 0, &mut chosen, &mut line_mult) {
        Some(chosen)
    } else {
        None
    }
}

/// An abstract distribution problem over at most 32 local points grouped
/// into disjoint transversals, with constraints on a list of "cross lines"
/// (point masks). This is the common shape of every segment-arrangement
/// sub-problem: inside a point class, inside a line-class geometry, or
/// along a pencil of PG(2, q).
#[derive(Clone, Debug)]
pub struct MaskSystem {
    pub n_points: usize,
    pub transversals: Vec<Vec<u8>>,
    pub cross_lines: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct MaskSpec {
    /// Required number of chosen points per transversal.
    pub counts: Vec<u8>,
    /// Cap on the chosen count of every cross line.
    pub max_cross: Option<u8>,
    /// Require every cross line to meet the chosen set.
    pub block_cross: bool,
    /// Local points that may not be chosen.
    pub forbidden: u32,
}

/// Exhaustive backtracking over per-transversal subsets; `None` means no
/// realization exists. `seed` rotates the subset enumeration order per
/// stage, giving deterministic variety for retry loops.
pub fn solve_masks(sys: &MaskSystem, spec: &MaskSpec, seed: u64) -> Option<u32> {
    assert_eq!(spec.counts.len(), sys.transversals.len());
    let mut stages: Vec<Vec<u32>> = Vec::new();
    for (i, (t, &c)) in sys.transversals.iter().zip(&spec.counts).enumerate() {
        let pts: Vec<u8> = t.iter().copied().filter(|&p| spec.forbidden & (1 << p) == 0).collect();
        let mut subs = subsets_of_size(&pts, c as usize);
        if subs.is_empty() {
            return None;
        }
        if seed != 0 {
            let off = (splitmix(seed.wrapping_add(i as u64)) % subs.len() as u64) as usize;
            subs.rotate_left(off);
        }
        stages.push(subs);
    }

    fn rec(
        sys: &MaskSystem,
        spec: &MaskSpec,
        stages: &[Vec<u32>],
        depth: usize,
        acc: u32,
        line_mult: &mut [u8],
    ) -> Option<u32> {
        if depth == stages.len() {
            if spec.block_cross {
                for &cl in &sys.cross_lines {
                    if cl & acc == 0 {
                        return None;
                    }
                }
            }
            return Some(acc);
        }
        for &s in &stages[depth] {
            let mut ok = true;
            if let Some(cap) = spec.max_cross {
                for (li, &cl) in sys.cross_lines.iter().enumerate() {
                    let add = (cl & s).count_ones() as u8;
                    if add == 0 {
                        continue;
                    }
                    if line_mult[li] + add > cap {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            for (li, &cl) in sys.cross_lines.iter().enumerate() {
                line_mult[li] += (cl & s).count_ones() as u8;
            }
            if let Some(res) = rec(sys, spec, stages, depth + 1, acc | s, line_mult) {
                return Some(res);
            }
            for (li, &cl) in sys.cross_lines.iter().enumerate() {
                line_mult[li] -= (cl & s).count_ones() as u8;
            }
        }
        None
    }

    let mut line_mult = vec![0u8; sys.cross_lines.len()];
    rec(sys, spec, &stages, 0, 0, &mut line_mult)
}

/// A point distribution along the pencil of a marked point of PG(2, q):
/// exactly `count` chosen points on each listed transversal, constrained on
/// the lines *not* through the pencil point.
#[derive(Clone, Debug)]
pub struct PencilDistribution {
    pub pencil_point: u8,
    /// (transversal line id, required number of chosen points).
    pub counts: Vec<(u8, u8)>,
    /// Cap on the multiplicity of every line not through the pencil point.
    pub max_cross_line: Option<u8>,
    /// Require every line not through the pencil point to meet the set.
    pub block_cross_lines: bool,
}

/// Find a point set realizing the distribution; exhaustive, so `None` means
/// no realization exists.
pub fn find_distribution(pg: &ClassicalPlane, d: &PencilDistribution, seed: u64) -> Option<Vec<u8>> {
    for &(t, _) in &d.counts {
        assert!(
            pg.line_mask[t as usize] & (1 << d.pencil_point) != 0,
            "transversal {t} does not pass through the pencil point"
        );
    }
    let transversals: Vec<Vec<u8>> = d
        .counts
        .iter()
        .map(|&(t, _)| {
            pg.line_points[t as usize]
                .iter()
                .copied()
                .filter(|&p| p != d.pencil_point)
                .collect()
        })
        .collect();
    let cross_lines: Vec<u32> = (0..pg.lines.len() as u8)
        .filter(|&l| pg.line_mask[l as usize] & (1 << d.pencil_point) == 0)
        .map(|l| pg.line_mask[l as usize])
        .collect();
    let sys = MaskSystem { n_points: pg.n_points(), transversals, cross_lines };
    let spec = MaskSpec {
        counts: d.counts.iter().map(|&(_, c)| c).collect(),
        max_cross: d.max_cross_line,
        block_cross: d.block_cross_lines,
        forbidden: 0,
    };
    let acc = solve_masks(&sys, &spec, seed)?;
    let out: Vec<u8> = (0..pg.n_points() as u8).filter(|&p| acc & (1 << p) != 0).collect();
    Some(out)
}

fn subsets_of_size(pts: &[u8], c: usize) -> Vec<u32> {
    let n = pts.len();
    let mut out = Vec::new();
    if c > n {
        return out;
    }
    if c == 0 {
        out.push(0);
        return out;
    }
    let mut idx: Vec<usize> = (0..c).collect();
    loop {
        let mut m = 0u32;
        for &i in &idx {
            m |= 1 << pts[i];
        }
        out.push(m);
        let mut i = c;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - c {
                idx[i] += 1;
                for j in i + 1..c {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub(crate) fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// An affine transformation of F_p².
#[derive(Clone, Copy, Debug)]
pub struct AffineMap {
    pub a: [[u8; 2]; 2],
    pub t: [u8; 2],
}

impl AffineMap {
    pub fn identity() -> AffineMap {
        AffineMap { a: [[1, 0], [0, 1]], t: [0, 0] }
    }

    pub fn apply(&self, gf: &Gf, x: u8, y: u8) -> (u8, u8) {
        let u = gf.add(gf.add(gf.mul(self.a[0][0], x), gf.mul(self.a[0][1], y)), self.t[0]);
        let v = gf.add(gf.add(gf.mul(self.a[1][0], x), gf.mul(self.a[1][1], y)), self.t[1]);
        (u, v)
    }

    pub fn is_invertible(&self, gf: &Gf) -> bool {
        gf.sub(gf.mul(self.a[0][0], self.a[1][1]), gf.mul(self.a[0][1], self.a[1][0])) != 0
    }
}

/// Enumerate AGL(2, p): all invertible matrices with all translations.
pub fn all_affine_maps(p: u8) -> Vec<AffineMap> {
    let gf = Gf::new(p);
    let mut out = Vec::new();
    for a00 in 0..p {
        for a01 in 0..p {
            for a10 in 0..p {
                for a11 in 0..p {
                    let m = [[a00, a01], [a10, a11]];
                    let map = AffineMap { a: m, t: [0, 0] };
                    if !map.is_invertible(&gf) {
                        continue;
                    }
                    for t0 in 0..p {
                        for t1 in 0..p {
                            out.push(AffineMap { a: m, t: [t0, t1] });
                        }
                    }
                }
            }
        }
    }
    out
}

/// The image of the canonical triangle set {(x, y) : x + y < p − 1} (as
/// integers) under an affine transformation, as coordinate pairs of
/// AG(2, p). Requires an odd prime p ≤ 5 and an invertible map.
pub fn triangle_set(p: u8, map: &AffineMap) -> Result<Vec<(u8, u8)>, ClassicalError> {
    if !matches!(p, 3 | 5) {
        return Err(ClassicalError::BadTrianglePrime(p));
    }
    let gf = Gf::new(p);
    if !map.is_invertible(&gf) {
        return Err(ClassicalError::SingularMap);
    }
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            if (x as u16) + (y as u16) < (p as u16) - 1 {
                out.push(map.apply(&gf, x, y));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Stored maximum sizes m_n(q) of (k, n)-arcs (multisets allowed) in
/// PG(2, q), 0 ≤ n ≤ q + 1. A point of multiplicity m ≥ 2 forces
/// k ≤ (q+1)n − qm via the pencil count through it, so multiple points
/// never help for n ≤ q; the entries are pinned by the exhaustive
/// projective searches in this module's tests.
pub fn classical_max_arc(q: u8, n: u8) -> Result<u32, ClassicalError> {
    let row: &[u32] = match q {
        2 => &[0, 1, 4, 7],
        3 => &[0, 1, 4, 9, 13],
        4 => &[0, 1, 6, 9, 16, 21],
        5 => &[0, 1, 6, 11, 16, 25, 31],
        _ => return Err(ClassicalError::OutOfRange(format!("q = {q}"))),
    };
    row.get(n as usize)
        .copied()
        .ok_or_else(|| ClassicalError::OutOfRange(format!("n = {n} for q = {q}")))
}

/// Stored maximum sizes m'_n(q) of (k, n)-arcs in AG(2, q), 0 ≤ n ≤ q + 1.
pub fn classical_max_affine_arc(q: u8, n: u8) -> Result<u32, ClassicalError> {
    let row: &[u32] = match q {
        2 => &[0, 1, 4, 5],
        3 => &[0, 1, 4, 9, 10],
        4 => &[0, 1, 6, 9, 16, 17],
        5 => &[0, 1, 6, 11, 16, 25, 26],
        _ => return Err(ClassicalError::OutOfRange(format!("q = {q}"))),
    };
    row.get(n as usize)
        .copied()
        .ok_or_else(|| ClassicalError::OutOfRange(format!("n = {n} for q = {q}")))
}

/// Exhaustive maximum size of a projective (k, n)-arc, optionally restricted
/// to the affine chart. Uses the 2-transitivity of the collineation group
/// (PGL on the plane, AGL on the chart): any arc with at least two points
/// is equivalent to one containing the first two candidate points.
pub fn max_projective_arc(pg: &ClassicalPlane, n: u8, affine: bool) -> (u32, Vec<u8>) {
    let allowed: Vec<u8> = (0..pg.n_points() as u8)
        .filter(|&p| !affine || (pg.affine_mask() & (1 << p)) != 0)
        .collect();
    let inactive = if affine { Some(pg.infinity_line()) } else { None };
    if n == 0 || allowed.is_empty() {
        return (0, Vec::new());
    }
    if n == 1 {
        return (1, vec![allowed[0]]);
    }
    let mut best: u32 = 1;
    let mut best_set = vec![allowed[0]];
    let mut line_mult = vec![0u8; pg.lines.len()];
    let mut chosen = Vec::new();

    struct Ctx<'a> {
        pg: &'a ClassicalPlane,
        n: u8,
        allowed: &'a [u8],
        inactive: Option<u8>,
    }

    fn rec(
        c: &Ctx,
        pos: usize,
        chosen: &mut Vec<u8>,
        line_mult: &mut [u8],
        best: &mut u32,
        best_set: &mut Vec<u8>,
    ) {
        if chosen.len() as u32 > *best {
            *best = chosen.len() as u32;
            *best_set = chosen.clone();
        }
        for i in pos..c.allowed.len() {
            if chosen.len() as u32 + (c.allowed.len() - i) as u32 <= *best {
                break;
            }
            let p = c.allowed[i];
            let mut ok = true;
            for &l in &c.pg.point_lines[p as usize] {
                if Some(l) != c.inactive && line_mult[l as usize] + 1 > c.n {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for &l in &c.pg.point_lines[p as usize] {
                line_mult[l as usize] += 1;
            }
            chosen.push(p);
            rec(c, i + 1, chosen, line_mult, best, best_set);
            chosen.pop();
            for &l in &c.pg.point_lines[p as usize] {
                line_mult[l as usize] -= 1;
            }
        }
    }

    let ctx = Ctx { pg, n, allowed: &allowed, inactive };
    // Fix the first two points by 2-transitivity.
    let p0 = allowed[0];
    let p1 = allowed[1];
    for &l in &pg.point_lines[p0 as usize] {
        line_mult[l as usize] += 1;
    }
    for &l in &pg.point_lines[p1 as usize] {
        line_mult[l as usize] += 1;
    }
    chosen.push(p0);
    chosen.push(p1);
    best = 2;
    best_set = chosen.clone();
    rec(&ctx, 2, &mut chosen, &mut line_mult, &mut best, &mut best_set);
    (best, best_set)
}

/// Named (22, 6)- and (27, 7)-arc constructions in PG(2, 4), as
/// multiplicity vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedMultiset {
    /// Line construction: D double points and D − 1 zero points on a line.
    Line1,
    Line2,
    Line3,
    /// Quadrangle of double points, its diagonal points zero.
    Quadrangle,
    /// Hyperoval of double points, one passant of zero points.
    Hyperoval22,
    /// Doubles on the complement of four lines in general position,
    /// zeros on their six intersection points.
    DualArc22,
    /// (27, 7): hyperoval of doubles, all other points single.
    Hyperoval27,
    /// (27, 7): triangle of zeros, sides single, the other nine points double.
    DualArc27,
}

pub fn named_multiset(pg: &ClassicalPlane, which: NamedMultiset) -> Vec<u8> {
    assert_eq!(pg.q, 4, "named constructions live in PG(2, 4)");
    let mut mult = vec![1u8; pg.n_points()];
    match which {
        NamedMultiset::Line1 | NamedMultiset::Line2 | NamedMultiset::Line3 => {
            let d = match which {
                NamedMultiset::Line1 => 1usize,
                NamedMultiset::Line2 => 2,
                _ => 3,
            };
            let l = &pg.line_points[0];
            for i in 0..d {
                mult[l[i] as usize] = 2;
            }
            for i in d..(2 * d - 1) {
                mult[l[i] as usize] = 0;
            }
        }
        NamedMultiset::Quadrangle => {
            let quad = find_object(pg, &ObjectRequest::new(ObjectSpec::Arc { k: 4, n: 2 })).unwrap();
            for &p in &quad {
                mult[p as usize] = 2;
            }
            let (a, b, c, d) = (quad[0], quad[1], quad[2], quad[3]);
            for (s1, s2) in [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))] {
                let l1 = pg.line_through(s1.0, s1.1);
                let l2 = pg.line_through(s2.0, s2.1);
                mult[pg.meet(l1, l2) as usize] = 0;
            }
        }
        NamedMultiset::Hyperoval22 | NamedMultiset::Hyperoval27 => {
            let h = find_object(pg, &ObjectRequest::new(ObjectSpec::Hyperoval)).unwrap();
            let hmask: u32 = h.iter().fold(0, |m, &p| m | 1 << p);
            for &p in &h {
                mult[p as usize] = 2;
            }
            if which == NamedMultiset::Hyperoval22 {
                let passant = (0..pg.lines.len() as u8)
                    .find(|&l| pg.line_mask[l as usize] & hmask == 0)
                    .expect("hyperoval has a passant");
                for &p in &pg.line_points[passant as usize] {
                    mult[p as usize] = 0;
                }
            }
        }
        NamedMultiset::DualArc22 => {
            let lines = four_lines_general_position(pg);
            let mut on_count = vec![0u8; pg.n_points()];
            for &l in &lines {
                for &p in &pg.line_points[l as usize] {
                    on_count[p as usize] += 1;
                }
            }
            for p in 0..pg.n_points() {
                mult[p] = match on_count[p] {
                    0 => 2,
                    1 => 1,
                    _ => 0,
                };
            }
        }
        NamedMultiset::DualArc27 => {
            let l0 = 0u8;
            let l1 = 1u8;
            let l2 = (2..pg.lines.len() as u8)
                .find(|&l| {
                    let v = pg.meet(l0, l1);
                    pg.line_mask[l as usize] & (1 << v) == 0
                })
                .unwrap();
            let mut on_count = vec![0u8; pg.n_points()];
            for l in [l0, l1, l2] {
                for &p in &pg.line_points[l as usize] {
                    on_count[p as usize] += 1;
                }
            }
            for p in 0..pg.n_points() {
                mult[p] = match on_count[p] {
                    0 => 2,
                    1 => 1,
                    _ => 0,
                };
            }
        }
    }
    mult
}

fn triple_ok(pg: &ClassicalPlane, a: u8, b: u8, c: u8) -> bool {
    let v = pg.meet(a, b);
    pg.line_mask[c as usize] & (1 << v) == 0
}

fn four_lines_general_position(pg: &ClassicalPlane) -> [u8; 4] {
    let nl = pg.lines.len() as u8;
    for a in 0..nl {
        for b in a + 1..nl {
            for c in b + 1..nl {
                if !triple_ok(pg, a, b, c) {
                    continue;
                }
                for d in c + 1..nl {
                    if triple_ok(pg, a, b, d) && triple_ok(pg, a, c, d) && triple_ok(pg, b, c, d) {
                        return [a, b, c, d];
                    }
                }
            }
        }
    }
    panic!("no four lines in general position");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_counts() {
        for q in [2u8, 3, 4, 5] {
            let pg = ClassicalPlane::new(q);
            let n = (q as usize) * (q as usize) + q as usize + 1;
            assert_eq!(pg.n_points(), n);
            assert_eq!(pg.lines.len(), n);
            for lp in &pg.line_points {
                assert_eq!(lp.len(), q as usize + 1);
            }
            for pl in &pg.point_lines {
                assert_eq!(pl.len(), q as usize + 1);
            }
        }
    }

    #[test]
    fn hyperoval_avoiding_two_lines_q4() {
        let pg = ClassicalPlane::new(4);
        let req = ObjectRequest::new(ObjectSpec::Hyperoval).avoiding_lines(&[0, 1]);
        let h = find_object(&pg, &req).unwrap();
        assert_eq!(h.len(), 6);
        let mask: u32 = h.iter().fold(0, |m, &p| m | 1 << p);
        assert_eq!(pg.line_mask[0] & mask, 0);
        assert_eq!(pg.line_mask[1] & mask, 0);
    }

    #[test]
    fn affine_blocking_set_q5() {
        // a blocking set of AG(2, 5) with 2q − 1 = 9 points
        let pg = ClassicalPlane::new(5);
        let req = ObjectRequest::new(ObjectSpec::Blocking { k: 9, s: 1 }).affine();
        let b = find_object(&pg, &req).unwrap();
        assert_eq!(b.len(), 9);
    }

    #[test]
    fn arcs_11_3_exists_12_3_does_not_q5() {
        let pg = ClassicalPlane::new(5);
        assert!(find_object(&pg, &ObjectRequest::new(ObjectSpec::Arc { k: 11, n: 3 })).is_ok());
        let (max3, _) = max_projective_arc(&pg, 3, false);
        assert_eq!(max3, 11);
        // affine variant used by the bound engine
        let (max3a, _) = max_projective_arc(&pg, 3, true);
        assert_eq!(max3a, 11);
    }

    #[test]
    fn stored_arc_tables_match_search_small_q() {
        for q in [2u8, 3, 4] {
            let pg = ClassicalPlane::new(q);
            for n in 2..=q {
                let (m, _) = max_projective_arc(&pg, n, false);
                assert_eq!(m, classical_max_arc(q, n).unwrap(), "m_{n}({q})");
                let (ma, _) = max_projective_arc(&pg, n, true);
                assert_eq!(ma, classical_max_affine_arc(q, n).unwrap(), "m'_{n}({q})");
            }
            // n = q + 1: the full plane resp. chart plus one double point
            let npts = pg.n_points() as u32;
            assert_eq!(classical_max_arc(q, q + 1).unwrap(), npts);
            assert_eq!(
                classical_max_affine_arc(q, q + 1).unwrap(),
                (q as u32) * (q as u32) + 1
            );
        }
    }

    #[test]
    fn stored_arc_tables_match_search_q5() {
        let pg = ClassicalPlane::new(5);
        // the entries consumed by the bound and construction engines
        for (n, want, want_aff) in [(2u8, 6u32, 6u32), (3, 11, 11), (4, 16, 16)] {
            let (m, _) = max_projective_arc(&pg, n, false);
            assert_eq!(m, want, "m_{n}(5)");
            assert_eq!(m, classical_max_arc(5, n).unwrap());
            let (ma, _) = max_projective_arc(&pg, n, true);
            assert_eq!(ma, want_aff, "m'_{n}(5)");
            assert_eq!(ma, classical_max_affine_arc(5, n).unwrap());
        }
    }

    #[test]
    fn pencil_bound_excludes_multiple_points() {
        // A multiplicity-m point forces k ≤ (q+1)n − qm; for n ≤ q and
        // m ≥ 2 this is below the stored projective maxima, so the stored
        // m_n(q) values cover multisets as well.
        for q in [2u32, 3, 4, 5] {
            for n in 2..=q {
                let cap = (q + 1) * n - 2 * q;
                assert!(cap < classical_max_arc(q as u8, n as u8).unwrap());
            }
        }
    }

    #[test]
    fn triangle_sets() {
        let t = triangle_set(3, &AffineMap::identity()).unwrap();
        assert_eq!(t, vec![(0, 0), (0, 1), (1, 0)]);
        let t5 = triangle_set(5, &AffineMap::identity()).unwrap();
        assert_eq!(t5.len(), 10);
        let shifted = triangle_set(3, &AffineMap { a: [[1, 0], [0, 1]], t: [1, 1] }).unwrap();
        assert_eq!(shifted.len(), 3);
        assert!(triangle_set(2, &AffineMap::identity()).is_err());
        assert!(triangle_set(4, &AffineMap::identity()).is_err());
    }

    #[test]
    fn named_censuses_match_known_tables() {
        let pg = ClassicalPlane::new(4);
        let expect = |pairs: &[(&str, u32)]| -> BTreeMap<String, u32> {
            pairs.iter().map(|&(s, c)| (s.to_string(), c)).collect()
        };
        let cases = [
            (NamedMultiset::Line1, 22u32, expect(&[("21111", 5), ("11111", 16)])),
            (
                NamedMultiset::Line2,
                22,
                expect(&[("22110", 1), ("21111", 8), ("11111", 8), ("11110", 4)]),
            ),
            (NamedMultiset::Line3, 22, expect(&[("22200", 1), ("21111", 12), ("11110", 8)])),
            (
                NamedMultiset::Quadrangle,
                22,
                expect(&[("22110", 6), ("21111", 8), ("11110", 6), ("11000", 1)]),
            ),
            (
                NamedMultiset::Hyperoval22,
                22,
                expect(&[("22110", 15), ("11110", 5), ("00000", 1)]),
            ),
            (
                NamedMultiset::DualArc22,
                22,
                expect(&[("22200", 3), ("22110", 12), ("21111", 2), ("11000", 4)]),
            ),
            (NamedMultiset::Hyperoval27, 27, expect(&[("22111", 15), ("11111", 6)])),
            (
                NamedMultiset::DualArc27,
                27,
                expect(&[("22210", 9), ("22111", 9), ("11100", 3)]),
            ),
        ];
        for (which, k, want) in cases {
            let mult = named_multiset(&pg, which);
            let total: u32 = mult.iter().map(|&m| m as u32).sum();
            assert_eq!(total, k, "{which:?} cardinality");
            let census = pg.line_type_census(&mult);
            assert_eq!(census, want, "{which:?} census");
            let cap = if k == 22 { 6 } else { 7 };
            for l in 0..pg.lines.len() as u8 {
                assert!(pg.line_mult(&mult, l) <= cap);
            }
        }
    }

    #[test]
    fn distribution_solver_blocking_config() {
        // s points per transversal of a pencil, blocking every cross line:
        // the shape used to trim full planes down to large-n maximal arcs.
        for q in [3u8, 4, 5] {
            let pg = ClassicalPlane::new(q);
            let pencil_point = pg.n_points() as u8 - 1;
            let transversals: Vec<u8> = pg.point_lines[pencil_point as usize].clone();
            for s in 1..=q {
                let d = PencilDistribution {
                    pencil_point,
                    counts: transversals.iter().map(|&t| (t, s)).collect(),
                    max_cross_line: None,
                    block_cross_lines: true,
                };
                let sol = find_distribution(&pg, &d, 0).unwrap_or_else(|| {
                    panic!("no blocking distribution for q={q}, s={s}")
                });
                assert_eq!(sol.len(), (s as usize) * (q as usize + 1));
            }
        }
    }

    #[test]
    fn twentytwo_six_with_eight_doubles_has_at_most_19() {
        // Over all (8,3)-arcs S of double points, the largest (k,6)-arc
        // with S as its doubles has k ≤ 19, attained.
        let pg = ClassicalPlane::new(4);
        let n_pts = pg.n_points() as u8;
        let mut best_overall = 0u32;
        let mut doubles = Vec::new();
        fn rec(
            pg: &ClassicalPlane,
            start: u8,
            n_pts: u8,
            doubles: &mut Vec<u8>,
            line_mult: &mut [u8],
            best_overall: &mut u32,
        ) {
            if doubles.len() == 8 {
                // pack singles greedily-exhaustively: points with all lines ≤ 4
                let allowed: Vec<u8> = (0..n_pts)
                    .filter(|&p| !doubles.contains(&p))
                    .collect();
                let mut singles_best = 0u32;
                fn pack(
                    pg: &ClassicalPlane,
                    allowed: &[u8],
                    pos: usize,
                    line_mult: &mut [u8],
                    cur: u32,
                    best: &mut u32,
                ) {
                    if cur > *best {
                        *best = cur;
                    }
                    for i in pos..allowed.len() {
                        if cur + (allowed.len() - i) as u32 <= *best {
                            break;
                        }
                        let p = allowed[i];
                        if pg.point_lines[p as usize]
                            .iter()
                            .all(|&l| line_mult[l as usize] < 6)
                        {
                            for &l in &pg.point_lines[p as usize] {
                                line_mult[l as usize] += 1;
                            }
                            pack(pg, allowed, i + 1, line_mult, cur + 1, best);
                            for &l in &pg.point_lines[p as usize] {
                                line_mult[l as usize] -= 1;
                            }
                        }
                    }
                }
                pack(pg, &allowed, 0, line_mult, 0, &mut singles_best);
                let k = 16 + singles_best;
                if k > *best_overall {
                    *best_overall = k;
                }
                return;
            }
            let remaining = 8 - doubles.len() as u8;
            for p in start..n_pts {
                if n_pts - p < remaining {
                    break;
                }
                // doubles form a (k,3)-arc as a set and a (2k,6) as a multiset
                if pg.point_lines[p as usize].iter().any(|&l| line_mult[l as usize] + 2 > 6) {
                    continue;
                }
                for &l in &pg.point_lines[p as usize] {
                    line_mult[l as usize] += 2;
                }
                doubles.push(p);
                rec(pg, p + 1, n_pts, doubles, line_mult, best_overall);
                doubles.pop();
                for &l in &pg.point_lines[p as usize] {
                    line_mult[l as usize] -= 2;
                }
            }
        }
        let mut line_mult = vec![0u8; pg.lines.len()];
        rec(&pg, 0, n_pts, &mut doubles, &mut line_mult, &mut best_overall);
        assert_eq!(best_overall, 19);
    }

    #[test]
    fn four_lines_concurrent_arcs_q5_at_most_12() {
        // (k,4)-arcs in PG(2,5) whose 4-lines all pass through one point
        // have k ≤ 12. Case over the concurrency point: lines through it
        // may reach 4, all others at most 3. Multiple points only lower
        // the pencil bound, so projective search suffices.
        let pg = ClassicalPlane::new(5);
        let mut best = 0u32;
        for pivot in 0..pg.n_points() as u8 {
            let through: Vec<u8> = pg.point_lines[pivot as usize].clone();
            let mut caps = vec![3u8; pg.lines.len()];
            for &l in &through {
                caps[l as usize] = 4;
            }
            fn rec(
                pg: &ClassicalPlane,
                caps: &[u8],
                start: u8,
                line_mult: &mut [u8],
                cur: u32,
                best: &mut u32,
            ) {
                if cur > *best {
                    *best = cur;
                }
                let n_pts = pg.n_points() as u8;
                for p in start..n_pts {
                    if cur + (n_pts - p) as u32 <= *best {
                        break;
                    }
                    if pg.point_lines[p as usize]
                        .iter()
                        .any(|&l| line_mult[l as usize] + 1 > caps[l as usize])
                    {
                        continue;
                    }
                    for &l in &pg.point_lines[p as usize] {
                        line_mult[l as usize] += 1;
                    }
                    rec(pg, caps, p + 1, line_mult, cur + 1, best);
                    for &l in &pg.point_lines[p as usize] {
                        line_mult[l as usize] -= 1;
                    }
                }
            }
            let mut line_mult = vec![0u8; pg.lines.len()];
            rec(&pg, &caps, 0, &mut line_mult, 0, &mut best);
        }
        assert_eq!(best, 12);
    }
}
