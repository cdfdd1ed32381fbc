//! Point multisets in a Hjelmslev plane and their verified invariants:
//! the (k, n)-arc and blocking parameters, the spectrum, the neighbour
//! class census, completeness, duals and orbit closures.

use crate::plane::{Collineation, Plane, PlaneError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArcError {
    #[error("multiset length {got} does not match the plane's {want} points")]
    LengthMismatch { got: usize, want: usize },
    #[error("operation needs a projective multiset (all multiplicities 0 or 1)")]
    NotProjective,
    #[error("multiset is not an n-arc for n = {0}")]
    NotAnArc(u64),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// A multiset of plane points: one multiplicity per point id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMultiset {
    pub mult: Vec<u32>,
}

impl PointMultiset {
    pub fn empty(plane: &Plane) -> PointMultiset {
        PointMultiset { mult: vec![0; plane.n_points()] }
    }

    pub fn from_points(plane: &Plane, pts: &[u32]) -> PointMultiset {
        let mut m = Self::empty(plane);
        for &p in pts {
            m.mult[p as usize] += 1;
        }
        m
    }

    pub fn cardinality(&self) -> u64 {
        self.mult.iter().map(|&m| m as u64).sum()
    }

    pub fn support(&self) -> Vec<u32> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| i as u32)
            .collect()
    }

    pub fn is_projective(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }
}

/// Verified parameters of a multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcReport {
    pub k: u64,
    pub n_max: u64,
    pub n_min: u64,
    /// spectrum[i] = number of lines of multiplicity i.
    pub spectrum: Vec<u64>,
    /// class_census[i] = number of point classes of multiplicity i.
    pub class_census: Vec<u64>,
    pub projective: bool,
    /// The largest n at which the multiset is a complete n-arc, when any.
    pub complete_at: Option<u64>,
}

impl ArcReport {
    /// Is this a (k, n)-arc for the given parameters?
    pub fn is_arc(&self, k: u64, n: u64) -> bool {
        self.k == k && self.n_max <= n
    }

    /// Is this a (k, s)-blocking multiset?
    pub fn is_blocking(&self, k: u64, s: u64) -> bool {
        self.k == k && self.n_min >= s
    }
}

/// Compute the full report for a multiset: one pass over the lines plus one
/// over the classes.
pub fn verify(plane: &Plane, ms: &PointMultiset) -> Result<ArcReport, ArcError> {
    if ms.mult.len() != plane.n_points() {
        return Err(ArcError::LengthMismatch { got: ms.mult.len(), want: plane.n_points() });
    }
    let k = ms.cardinality();
    let mut line_mult = Vec::with_capacity(plane.lines.len());
    for lp in &plane.line_points {
        line_mult.push(lp.iter().map(|&p| ms.mult[p as usize] as u64).sum::<u64>());
    }
    let n_max = line_mult.iter().copied().max().unwrap_or(0);
    let n_min = line_mult.iter().copied().min().unwrap_or(0);
    let mut spectrum = vec![0u64; n_max as usize + 1];
    for &m in &line_mult {
        spectrum[m as usize] += 1;
    }
    let mut class_mult = vec![0u64; plane.class_points.len()];
    for (c, pts) in plane.class_points.iter().enumerate() {
        class_mult[c] = pts.iter().map(|&p| ms.mult[p as usize] as u64).sum();
    }
    let cmax = class_mult.iter().copied().max().unwrap_or(0);
    let mut class_census = vec![0u64; cmax as usize + 1];
    for &m in &class_mult {
        class_census[m as usize] += 1;
    }
    // completeness at n_max: every point must see an n_max-line
    let complete = k > 0
        && (0..plane.n_points()).all(|p| {
            plane.point_lines[p].iter().any(|&l| line_mult[l as usize] == n_max)
        });
    Ok(ArcReport {
        k,
        n_max,
        n_min,
        spectrum,
        class_census,
        projective: ms.is_projective(),
        complete_at: if complete { Some(n_max) } else { None },
    })
}

/// Multiplicity of a single line.
pub fn line_multiplicity(plane: &Plane, ms: &PointMultiset, line: u32) -> u64 {
    plane.line_points[line as usize]
        .iter()
        .map(|&p| ms.mult[p as usize] as u64)
        .sum()
}

/// The complementary blocking multiset 1 − K of a projective multiset: a
/// projective (|P| − k, l − n)-blocking multiset where l is the line size.
pub fn complement_blocking(plane: &Plane, ms: &PointMultiset) -> Result<PointMultiset, ArcError> {
    if ms.mult.len() != plane.n_points() {
        return Err(ArcError::LengthMismatch { got: ms.mult.len(), want: plane.n_points() });
    }
    if !ms.is_projective() {
        return Err(ArcError::NotProjective);
    }
    Ok(PointMultiset { mult: ms.mult.iter().map(|&m| 1 - m).collect() })
}

/// A multiset is a complete n-arc iff raising any point's multiplicity
/// creates an (n+1)-line, i.e. every point lies on some line of
/// multiplicity exactly n. Errors if the input is not an n-arc.
pub fn is_complete(plane: &Plane, ms: &PointMultiset, n: u64) -> Result<bool, ArcError> {
    if ms.mult.len() != plane.n_points() {
        return Err(ArcError::LengthMismatch { got: ms.mult.len(), want: plane.n_points() });
    }
    let mut line_mult = vec![0u64; plane.lines.len()];
    for (l, lp) in plane.line_points.iter().enumerate() {
        line_mult[l] = lp.iter().map(|&p| ms.mult[p as usize] as u64).sum();
        if line_mult[l] > n {
            return Err(ArcError::NotAnArc(n));
        }
    }
    Ok((0..plane.n_points())
        .all(|p| plane.point_lines[p].iter().any(|&l| line_mult[l as usize] == n)))
}

/// The passants (0-lines) of a multiset, as a point set of the dual plane.
/// Dual point ids coincide with the primal line ids.
pub fn dual_passant_set(plane: &Plane, ms: &PointMultiset) -> PointMultiset {
    let mult = (0..plane.lines.len() as u32)
        .map(|l| u32::from(line_multiplicity(plane, ms, l) == 0))
        .collect();
    PointMultiset { mult }
}

/// Smallest g-invariant multiset dominating the input: each orbit through
/// the support is filled with the orbit's maximum multiplicity.
pub fn orbit_closure(
    plane: &Plane,
    ms: &PointMultiset,
    g: &Collineation,
) -> Result<PointMultiset, ArcError> {
    let perm = plane.point_perm(g)?;
    let orbits = Plane::orbits(&[perm], plane.n_points());
    let mut out = ms.clone();
    for orbit in orbits {
        let m = orbit.iter().map(|&p| ms.mult[p as usize]).max().unwrap();
        if m > 0 {
            for &p in &orbit {
                out.mult[p as usize] = m;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::Plane;
    use crate::ring::Ring;

    #[test]
    fn empty_and_full_reports() {
        let pl = Plane::new(Ring::by_name("Z4").unwrap());
        let empty = PointMultiset::empty(&pl);
        let r = verify(&pl, &empty).unwrap();
        assert_eq!(r.k, 0);
        assert_eq!(r.n_max, 0);
        assert_eq!(r.spectrum[0], pl.lines.len() as u64);
        let full = PointMultiset { mult: vec![1; pl.n_points()] };
        let r = verify(&pl, &full).unwrap();
        assert_eq!(r.k, 28);
        assert_eq!(r.n_max, 6);
        assert_eq!(r.n_min, 6);
        assert_eq!(r.spectrum[6], 28);
        assert!(r.projective);
        // full plane is complete at n = q² + q
        assert!(is_complete(&pl, &full, 6).unwrap());
        assert_eq!(r.complete_at, Some(6));
    }

    #[test]
    fn report_identities() {
        let pl = Plane::new(Ring::by_name("Z9").unwrap());
        let q = pl.q() as u64;
        // a haphazard but fixed multiset
        let mut ms = PointMultiset::empty(&pl);
        for p in (0..pl.n_points() as u32).step_by(3) {
            ms.mult[p as usize] = 1 + (p % 2);
        }
        let r = verify(&pl, &ms).unwrap();
        assert_eq!(r.spectrum.iter().sum::<u64>(), pl.lines.len() as u64);
        let weighted: u64 = r.spectrum.iter().enumerate().map(|(i, &a)| i as u64 * a).sum();
        assert_eq!(weighted, r.k * (q * q + q));
        assert_eq!(r.class_census.iter().sum::<u64>(), q * q + q + 1);
        let cw: u64 = r.class_census.iter().enumerate().map(|(i, &f)| i as u64 * f).sum();
        assert_eq!(cw, r.k);
    }

    #[test]
    fn single_point_not_complete_at_2() {
        let pl = Plane::new(Ring::by_name("Z4").unwrap());
        let ms = PointMultiset::from_points(&pl, &[0]);
        assert!(!is_complete(&pl, &ms, 2).unwrap());
    }

    #[test]
    fn complement_is_involution() {
        let pl = Plane::new(Ring::by_name("S3").unwrap());
        let mut ms = PointMultiset::empty(&pl);
        for p in (0..pl.n_points()).step_by(2) {
            ms.mult[p] = 1;
        }
        let c = complement_blocking(&pl, &ms).unwrap();
        assert_eq!(complement_blocking(&pl, &c).unwrap(), ms);
        let r = verify(&pl, &ms).unwrap();
        let rc = verify(&pl, &c).unwrap();
        let q = pl.q() as u64;
        assert_eq!(rc.n_min, q * q + q - r.n_max);
        assert_eq!(rc.n_max, q * q + q - r.n_min);
        // full plane complements to the empty multiset
        let full = PointMultiset { mult: vec![1; pl.n_points()] };
        let e = complement_blocking(&pl, &full).unwrap();
        assert_eq!(e.cardinality(), 0);
        // multiplicity 2 rejected
        let mut bad = PointMultiset::empty(&pl);
        bad.mult[0] = 2;
        assert_eq!(complement_blocking(&pl, &bad).unwrap_err(), ArcError::NotProjective);
    }

    #[test]
    fn orbit_closure_identity_fixes() {
        let pl = Plane::new(Ring::by_name("Z4").unwrap());
        let ms = PointMultiset::from_points(&pl, &[5]);
        let closed = orbit_closure(&pl, &ms, &Collineation::identity()).unwrap();
        assert_eq!(closed, ms);
    }
}
