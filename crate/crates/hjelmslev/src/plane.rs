//! The projective Hjelmslev plane PHG(2, R) as an explicit incidence
//! structure, with neighbour classes, the quotient plane PG(2, q), line
//! segments, directions, collineations, and duality.
//!
//! Points are free rank-1 submodules of R³ (as a right module), coded by
//! right-normalized coordinate triples: the leftmost unit coordinate is 1
//! and the coordinates to its left lie in the radical. Lines are coded by
//! left-normalized equation coefficient triples; x is on the line with
//! coefficients a iff a₀x₀ + a₁x₁ + a₂x₂ = 0. Points and lines share the
//! same list of normal forms, enumerated lexicographically on codes, so a
//! plane always has as many lines as points and `dualize` is an index-
//! preserving transposition.

use crate::classical::ClassicalPlane;
use crate::ring::{RingElement, RingRef};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlaneError {
    #[error("collineation matrix is singular mod the radical")]
    SingularMatrix,
    #[error("line class {0} is not incident with point class {1}")]
    DirectionNotIncident(u16, u16),
    #[error("triple {0:?} has no unit coordinate")]
    NoUnitCoordinate([u16; 3]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Point {
    pub coords: [RingElement; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Line {
    pub coeffs: [RingElement; 3],
}

/// Which side normalization multiplies on: primal planes normalize point
/// coordinates on the right, dual planes carry left-normalized triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chirality {
    Right,
    Left,
}

/// A collineation given by an invertible matrix over R together with a ring
/// automorphism index: the point action is x ↦ normalize(M·σ(x)).
#[derive(Clone, Debug)]
pub struct Collineation {
    pub matrix: [[RingElement; 3]; 3],
    pub auto: usize,
}

impl Collineation {
    pub fn identity() -> Collineation {
        let z = RingElement(0);
        let o = RingElement(1);
        Collineation { matrix: [[o, z, z], [z, o, z], [z, z, o]], auto: 0 }
    }
}

pub struct Plane {
    pub ring: RingRef,
    pub points: Vec<Point>,
    pub lines: Vec<Line>,
    pub line_points: Vec<Vec<u32>>,
    pub point_lines: Vec<Vec<u32>>,
    /// Per-line point bitmask, `words` u64 words per line.
    pub line_mask: Vec<u64>,
    pub words: usize,
    /// Neighbour class of each point / line, as a quotient point / line id.
    pub point_class: Vec<u16>,
    pub line_class: Vec<u16>,
    pub class_points: Vec<Vec<u32>>,
    pub class_lines: Vec<Vec<u32>>,
    /// The quotient plane PG(2, q).
    pub quotient: ClassicalPlane,
    /// segments[class][dir_idx][seg_idx] = sorted point ids; `dir_idx`
    /// indexes `directions_of(class)`, segments are ordered by least
    /// contained point id.
    segments: Vec<Vec<Vec<Vec<u32>>>>,
    point_index: HashMap<[u16; 3], u32>,
    pub chirality: Chirality,
}

fn lift_classical<F: Fn(u16) -> bool>(q: u16, is_unit_code: F) -> Vec<[u16; 3]> {
    // all normalized triples: leftmost unit coordinate is 1, entries to its
    // left in the radical
    let size = q * q;
    let mut out = Vec::new();
    let rad: Vec<u16> = (0..size).filter(|&c| !is_unit_code(c)).collect();
    for a in 0..size {
        for b in 0..size {
            out.push([1, a, b]);
        }
    }
    for &r1 in &rad {
        for b in 0..size {
            out.push([r1, 1, b]);
        }
    }
    for &r1 in &rad {
        for &r2 in &rad {
            out.push([r1, r2, 1]);
        }
    }
    out.sort_unstable();
    out
}

impl Plane {
    /// Build PHG(2, R).
    pub fn new(ring: RingRef) -> Arc<Plane> {
        let q = ring.q;
        let triples = lift_classical(q, |c| ring.is_unit(RingElement(c)));
        let points: Vec<Point> = triples
            .iter()
            .map(|t| Point { coords: [RingElement(t[0]), RingElement(t[1]), RingElement(t[2])] })
            .collect();
        let lines: Vec<Line> = triples
            .iter()
            .map(|t| Line { coeffs: [RingElement(t[0]), RingElement(t[1]), RingElement(t[2])] })
            .collect();
        let n = points.len();
        let words = n.div_ceil(64);
        let mut point_index = HashMap::with_capacity(n);
        for (i, t) in triples.iter().enumerate() {
            point_index.insert(*t, i as u32);
        }

        let mut line_points = vec![Vec::with_capacity((q * q + q) as usize); n];
        let mut point_lines = vec![Vec::with_capacity((q * q + q) as usize); n];
        let mut line_mask = vec![0u64; n * words];
        for (li, l) in lines.iter().enumerate() {
            for (pi, p) in points.iter().enumerate() {
                let mut acc = RingElement(0);
                for k in 0..3 {
                    acc = ring.add(acc, ring.mul(l.coeffs[k], p.coords[k]));
                }
                if acc.0 == 0 {
                    line_points[li].push(pi as u32);
                    point_lines[pi].push(li as u32);
                    line_mask[li * words + pi / 64] |= 1 << (pi % 64);
                }
            }
        }

        let quotient = ClassicalPlane::new(q as u8);
        let residue_triple = |t: [RingElement; 3]| -> [u8; 3] {
            [ring.residue(t[0]), ring.residue(t[1]), ring.residue(t[2])]
        };
        let point_class: Vec<u16> = points
            .iter()
            .map(|p| quotient.point_id(residue_triple(p.coords)).unwrap() as u16)
            .collect();
        let line_class: Vec<u16> = lines
            .iter()
            .map(|l| quotient.line_id(residue_triple(l.coeffs)).unwrap() as u16)
            .collect();

        let mut plane = Plane {
            ring,
            points,
            lines,
            line_points,
            point_lines,
            line_mask,
            words,
            point_class,
            line_class,
            class_points: Vec::new(),
            class_lines: Vec::new(),
            quotient,
            segments: Vec::new(),
            point_index,
            chirality: Chirality::Right,
        };
        plane.derive_classes_and_segments();
        Arc::new(plane)
    }

    fn derive_classes_and_segments(&mut self) {
        let nq = self.quotient.n_points();
        let mut class_points = vec![Vec::new(); nq];
        for (p, &c) in self.point_class.iter().enumerate() {
            class_points[c as usize].push(p as u32);
        }
        let mut class_lines = vec![Vec::new(); nq];
        for (l, &c) in self.line_class.iter().enumerate() {
            class_lines[c as usize].push(l as u32);
        }
        self.class_points = class_points;
        self.class_lines = class_lines;

        // segments per (point class, incident line class)
        let mut segments = Vec::with_capacity(nq);
        for c in 0..nq as u16 {
            let dirs = self.directions_of(c);
            let mut per_dir = Vec::with_capacity(dirs.len());
            for &d in &dirs {
                let mut segs: Vec<Vec<u32>> = Vec::new();
                let mut seen: Vec<bool> = vec![false; self.class_points[c as usize].len()];
                for (idx, &p) in self.class_points[c as usize].iter().enumerate() {
                    if seen[idx] {
                        continue;
                    }
                    // any line of class d through p cuts out the segment
                    let l = self.point_lines[p as usize]
                        .iter()
                        .copied()
                        .find(|&l| self.line_class[l as usize] == d)
                        .expect("no line of an incident class through point");
                    let seg: Vec<u32> = self.line_points[l as usize]
                        .iter()
                        .copied()
                        .filter(|&x| self.point_class[x as usize] == c)
                        .collect();
                    for &x in &seg {
                        let pos = self.class_points[c as usize].binary_search(&x).unwrap();
                        seen[pos] = true;
                    }
                    segs.push(seg);
                }
                segs.sort_by_key(|s| s[0]);
                per_dir.push(segs);
            }
            segments.push(per_dir);
        }
        self.segments = segments;
    }

    /// Line classes incident with a point class, as sorted quotient ids.
    pub fn directions_of(&self, class: u16) -> Vec<u16> {
        match self.chirality {
            Chirality::Right => self.quotient.point_lines[class as usize]
                .iter()
                .map(|&l| l as u16)
                .collect(),
            Chirality::Left => self.quotient.line_points[class as usize]
                .iter()
                .map(|&p| p as u16)
                .collect(),
        }
    }

    /// Point classes incident with a line class, as sorted quotient ids.
    pub fn classes_on(&self, line_class: u16) -> Vec<u16> {
        match self.chirality {
            Chirality::Right => self.quotient.line_points[line_class as usize]
                .iter()
                .map(|&p| p as u16)
                .collect(),
            Chirality::Left => self.quotient.point_lines[line_class as usize]
                .iter()
                .map(|&l| l as u16)
                .collect(),
        }
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn q(&self) -> u16 {
        self.ring.q
    }

    /// Right-normalize a coordinate triple (leftmost unit becomes 1).
    pub fn normalize_point(&self, t: [RingElement; 3]) -> Result<[u16; 3], PlaneError> {
        let r = &self.ring;
        let i = t
            .iter()
            .position(|&c| r.is_unit(c))
            .ok_or(PlaneError::NoUnitCoordinate([t[0].0, t[1].0, t[2].0]))?;
        let u = r.inverse(t[i]).unwrap();
        Ok(match self.chirality {
            Chirality::Right => [r.mul(t[0], u).0, r.mul(t[1], u).0, r.mul(t[2], u).0],
            Chirality::Left => [r.mul(u, t[0]).0, r.mul(u, t[1]).0, r.mul(u, t[2]).0],
        })
    }

    pub fn point_id(&self, t: [RingElement; 3]) -> Result<u32, PlaneError> {
        let n = self.normalize_point(t)?;
        Ok(*self.point_index.get(&n).expect("normalized triple not found"))
    }

    pub fn line_on(&self, line: u32, point: u32) -> bool {
        self.line_mask[line as usize * self.words + point as usize / 64] >> (point % 64) & 1 == 1
    }

    /// The q segments with the given direction in a point class, ordered by
    /// least contained point id. Errors if the direction is not incident.
    pub fn segments_of(
        &self,
        class: u16,
        direction: u16,
    ) -> Result<&[Vec<u32>], PlaneError> {
        let dirs = self.directions_of(class);
        let idx = dirs
            .iter()
            .position(|&d| d == direction)
            .ok_or(PlaneError::DirectionNotIncident(direction, class))?;
        Ok(&self.segments[class as usize][idx])
    }

    /// Multiplicities of the q parallel segments of a direction within a
    /// point class, sorted non-increasing: the type of the class w.r.t. the
    /// multiset in that direction.
    pub fn class_type(
        &self,
        class: u16,
        mult: &[u32],
        direction: u16,
    ) -> Result<Vec<u64>, PlaneError> {
        let segs = self.segments_of(class, direction)?;
        let mut v: Vec<u64> = segs
            .iter()
            .map(|s| s.iter().map(|&p| mult[p as usize] as u64).sum())
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Ok(v)
    }

    /// The q×(q+1) segment grid of a line class: entry (i, j) is the
    /// multiset multiplicity of the i-th segment (by least point id) with
    /// this direction in the j-th incident point class (by quotient id).
    pub fn segment_grid(&self, line_class: u16, mult: &[u32]) -> Vec<Vec<u64>> {
        let classes = self.classes_on(line_class);
        let q = self.q() as usize;
        let mut grid = vec![vec![0u64; classes.len()]; q];
        for (j, &c) in classes.iter().enumerate() {
            let segs = self.segments_of(c, line_class).unwrap();
            for (i, seg) in segs.iter().enumerate() {
                grid[i][j] = seg.iter().map(|&p| mult[p as usize] as u64).sum();
            }
        }
        grid
    }

    /// Apply a collineation to a point id; errors if the matrix is singular.
    pub fn apply_collineation(&self, g: &Collineation, point: u32) -> Result<u32, PlaneError> {
        self.check_invertible(g)?;
        Ok(self.apply_unchecked(g, point))
    }

    fn apply_unchecked(&self, g: &Collineation, point: u32) -> u32 {
        let r = &self.ring;
        let x = self.points[point as usize].coords;
        let sx = [
            r.auto_apply(g.auto, x[0]),
            r.auto_apply(g.auto, x[1]),
            r.auto_apply(g.auto, x[2]),
        ];
        let mut y = [RingElement(0); 3];
        for i in 0..3 {
            for (j, &sxj) in sx.iter().enumerate() {
                y[i] = r.add(y[i], r.mul(g.matrix[i][j], sxj));
            }
        }
        self.point_id(y).expect("collineation image is not a point")
    }

    pub fn check_invertible(&self, g: &Collineation) -> Result<(), PlaneError> {
        // invertible over a local ring iff invertible mod the radical
        let gf = &self.quotient.gf;
        let m: Vec<u8> = g
            .matrix
            .iter()
            .flatten()
            .map(|&e| self.ring.residue(e))
            .collect();
        let det = {
            let f = |i: usize, j: usize| m[3 * i + j];
            let mut d = 0u8;
            d = gf.add(d, gf.mul(f(0, 0), gf.sub(gf.mul(f(1, 1), f(2, 2)), gf.mul(f(1, 2), f(2, 1)))));
            d = gf.sub(d, gf.mul(f(0, 1), gf.sub(gf.mul(f(1, 0), f(2, 2)), gf.mul(f(1, 2), f(2, 0)))));
            d = gf.add(d, gf.mul(f(0, 2), gf.sub(gf.mul(f(1, 0), f(2, 1)), gf.mul(f(1, 1), f(2, 0)))));
            d
        };
        if det == 0 {
            Err(PlaneError::SingularMatrix)
        } else {
            Ok(())
        }
    }

    /// The point permutation of a collineation.
    pub fn point_perm(&self, g: &Collineation) -> Result<Vec<u32>, PlaneError> {
        self.check_invertible(g)?;
        Ok((0..self.n_points() as u32).map(|p| self.apply_unchecked(g, p)).collect())
    }

    /// The companion line permutation, derived from the point permutation:
    /// the image of a line is the unique line through the images of two of
    /// its non-neighbour points.
    pub fn line_perm(&self, point_perm: &[u32]) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.lines.len());
        for lp in &self.line_points {
            let a = lp[0];
            let b = lp
                .iter()
                .copied()
                .find(|&x| self.point_class[x as usize] != self.point_class[a as usize])
                .expect("line inside one neighbour class");
            let (ia, ib) = (point_perm[a as usize], point_perm[b as usize]);
            let mut common = self.point_lines[ia as usize]
                .iter()
                .copied()
                .filter(|&l| self.line_on(l, ib));
            let l = common.next().expect("no common line");
            debug_assert!(common.next().is_none(), "non-neighbour images share two lines");
            out.push(l);
        }
        out
    }

    /// Order of the collineation as a permutation of the points.
    pub fn collineation_order(&self, g: &Collineation) -> Result<u64, PlaneError> {
        let perm = self.point_perm(g)?;
        let mut seen = vec![false; perm.len()];
        let mut order = 1u64;
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x] as usize;
                len += 1;
            }
            order = lcm(order, len);
        }
        Ok(order)
    }

    /// Orbits of the group generated by the given point permutations.
    pub fn orbits(perms: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![s as u32];
            seen[s] = true;
            let mut stack = vec![s as u32];
            while let Some(x) = stack.pop() {
                for perm in perms {
                    let y = perm[x as usize];
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                        stack.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// The dual plane: points and lines swapped, incidence transposed.
    /// Indices are preserved, so dualizing twice restores the original
    /// incidence exactly.
    pub fn dualize(&self) -> Arc<Plane> {
        let n = self.n_points();
        let words = self.words;
        let mut line_mask = vec![0u64; n * words];
        for (li, lp) in self.point_lines.iter().enumerate() {
            for &p in lp {
                line_mask[li * words + p as usize / 64] |= 1 << (p % 64);
            }
        }
        let points: Vec<Point> = self.lines.iter().map(|l| Point { coords: l.coeffs }).collect();
        let lines: Vec<Line> = self.points.iter().map(|p| Line { coeffs: p.coords }).collect();
        let mut point_index = HashMap::with_capacity(n);
        for (i, p) in points.iter().enumerate() {
            point_index.insert([p.coords[0].0, p.coords[1].0, p.coords[2].0], i as u32);
        }
        let mut plane = Plane {
            ring: self.ring.clone(),
            points,
            lines,
            line_points: self.point_lines.clone(),
            point_lines: self.line_points.clone(),
            line_mask,
            words,
            point_class: self.line_class.clone(),
            line_class: self.point_class.clone(),
            class_points: Vec::new(),
            class_lines: Vec::new(),
            quotient: self.quotient.clone(),
            segments: Vec::new(),
            point_index,
            chirality: match self.chirality {
                Chirality::Right => Chirality::Left,
                Chirality::Left => Chirality::Right,
            },
        };
        plane.derive_classes_and_segments();
        Arc::new(plane)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn plane(name: &str) -> Arc<Plane> {
        Plane::new(Ring::by_name(name).unwrap())
    }

    #[test]
    fn cardinalities_all_rings() {
        for name in Ring::all_names() {
            let pl = plane(name);
            let q = pl.q() as usize;
            let expect = q * q * q * q + q * q * q + q * q;
            assert_eq!(pl.n_points(), expect, "{name} points");
            assert_eq!(pl.lines.len(), expect, "{name} lines");
            for lp in &pl.line_points {
                assert_eq!(lp.len(), q * q + q, "{name} line size");
            }
            for pls in &pl.point_lines {
                assert_eq!(pls.len(), q * q + q, "{name} pencil size");
            }
            assert_eq!(pl.class_points.len(), q * q + q + 1);
            for cp in &pl.class_points {
                assert_eq!(cp.len(), q * q, "{name} class size");
            }
            for cl in &pl.class_lines {
                assert_eq!(cl.len(), q * q, "{name} line class size");
            }
        }
    }

    #[test]
    fn segments_partition_classes() {
        for name in ["Z4", "S3", "T4"] {
            let pl = plane(name);
            let q = pl.q() as usize;
            for c in 0..pl.class_points.len() as u16 {
                let dirs = pl.directions_of(c);
                assert_eq!(dirs.len(), q + 1);
                for &d in &dirs {
                    let segs = pl.segments_of(c, d).unwrap();
                    assert_eq!(segs.len(), q);
                    let mut all: Vec<u32> = segs.iter().flatten().copied().collect();
                    all.sort_unstable();
                    assert_eq!(all, pl.class_points[c as usize]);
                    for s in segs {
                        assert_eq!(s.len(), q);
                    }
                }
            }
        }
    }

    #[test]
    fn common_line_counts_small() {
        // exhaustive for q <= 3
        for name in ["Z4", "S2", "Z9"] {
            let pl = plane(name);
            let q = pl.q() as usize;
            let n = pl.n_points();
            for a in 0..n as u32 {
                for b in (a + 1)..n as u32 {
                    let common = pl.point_lines[a as usize]
                        .iter()
                        .filter(|&&l| pl.line_on(l, b))
                        .count();
                    if pl.point_class[a as usize] == pl.point_class[b as usize] {
                        assert_eq!(common, q, "{name} neighbours");
                    } else {
                        assert_eq!(common, 1, "{name} non-neighbours");
                    }
                }
            }
        }
    }

    #[test]
    fn common_line_counts_sampled() {
        for name in ["G4", "S4", "T4", "Z25", "S5"] {
            let pl = plane(name);
            let q = pl.q() as usize;
            let n = pl.n_points() as u32;
            let step = 17;
            let mut a = 0u32;
            while a < n {
                let mut b = a + 1;
                while b < n {
                    let common = pl.point_lines[a as usize]
                        .iter()
                        .filter(|&&l| pl.line_on(l, b))
                        .count();
                    if pl.point_class[a as usize] == pl.point_class[b as usize] {
                        assert_eq!(common, q, "{name}");
                    } else {
                        assert_eq!(common, 1, "{name}");
                    }
                    b += step;
                }
                a += 13;
            }
        }
    }

    #[test]
    fn quotient_preserves_collinearity() {
        let pl = plane("Z9");
        for lp in pl.line_points.iter().step_by(7) {
            let (a, b, c) = (lp[0], lp[4], lp[8]);
            let ca = pl.point_class[a as usize];
            let cb = pl.point_class[b as usize];
            let cc = pl.point_class[c as usize];
            // the three classes lie on a common quotient line
            let found = (0..pl.quotient.lines.len() as u8).any(|l| {
                let m = pl.quotient.line_mask[l as usize];
                [ca, cb, cc].iter().all(|&x| m & (1 << x) != 0)
            });
            assert!(found);
        }
    }

    #[test]
    fn neighbor_class_examples() {
        let pl = plane("Z9");
        // (1,0,0) and (1,rad,rad) share a class
        let p1 = pl.point_id([RingElement(1), RingElement(0), RingElement(0)]).unwrap();
        let p2 = pl.point_id([RingElement(1), RingElement(3), RingElement(6)]).unwrap();
        assert_eq!(pl.point_class[p1 as usize], pl.point_class[p2 as usize]);
        let z4 = plane("Z4");
        assert_eq!(z4.class_lines.len(), 7);
    }

    #[test]
    fn collineation_identity_and_scalar() {
        let pl = plane("Z9");
        assert_eq!(pl.collineation_order(&Collineation::identity()).unwrap(), 1);
        // scalar unit matrix acts trivially on points
        let mut g = Collineation::identity();
        for i in 0..3 {
            g.matrix[i][i] = RingElement(2);
        }
        assert_eq!(pl.collineation_order(&g).unwrap(), 1);
        // singular matrix rejected
        let mut s = Collineation::identity();
        s.matrix[2][2] = RingElement(3);
        assert_eq!(pl.collineation_order(&s).unwrap_err(), PlaneError::SingularMatrix);
    }

    #[test]
    fn collineations_preserve_incidence() {
        let pl = plane("S3");
        let g = Collineation {
            matrix: [
                [RingElement(0), RingElement(1), RingElement(0)],
                [RingElement(0), RingElement(0), RingElement(1)],
                [RingElement(1), RingElement(4), RingElement(2)],
            ],
            auto: 1,
        };
        let pp = pl.point_perm(&g).unwrap();
        let lp = pl.line_perm(&pp);
        for (li, pts) in pl.line_points.iter().enumerate() {
            let il = lp[li];
            for &p in pts {
                assert!(pl.line_on(il, pp[p as usize]));
            }
        }
    }

    #[test]
    fn dualize_involution_and_counts() {
        for name in ["Z4", "S3"] {
            let pl = plane(name);
            let dual = pl.dualize();
            let q = pl.q() as usize;
            assert_eq!(dual.n_points(), pl.n_points());
            for lp in &dual.line_points {
                assert_eq!(lp.len(), q * q + q);
            }
            for cp in &dual.class_points {
                assert_eq!(cp.len(), q * q);
            }
            let back = dual.dualize();
            assert_eq!(back.line_points, pl.line_points);
            assert_eq!(back.point_class, pl.point_class);
            // dual segments still partition classes
            for c in 0..dual.class_points.len() as u16 {
                for &d in &dual.directions_of(c) {
                    let segs = dual.segments_of(c, d).unwrap();
                    assert_eq!(segs.len(), q);
                    for s in segs {
                        assert_eq!(s.len(), q);
                    }
                }
            }
        }
    }

    #[test]
    fn grid_conventions() {
        let pl = plane("Z4");
        let zero = vec![0u32; pl.n_points()];
        let grid = pl.segment_grid(0, &zero);
        assert_eq!(grid.len(), 2);
        assert_eq!(grid[0].len(), 3);
        assert!(grid.iter().flatten().all(|&v| v == 0));
        // one full line: its class sees one full segment per incident class
        let mut mult = vec![0u32; pl.n_points()];
        let l0 = 0u32;
        for &p in &pl.line_points[l0 as usize] {
            mult[p as usize] = 1;
        }
        let lc = pl.line_class[l0 as usize];
        let grid = pl.segment_grid(lc, &mult);
        let mut per_col: Vec<Vec<u64>> = vec![Vec::new(); 3];
        for row in &grid {
            for (j, &v) in row.iter().enumerate() {
                per_col[j].push(v);
            }
        }
        for col in per_col {
            let mut c = col.clone();
            c.sort_unstable();
            assert_eq!(c, vec![0, 2], "each class has one full 2-point segment");
        }
    }
}
