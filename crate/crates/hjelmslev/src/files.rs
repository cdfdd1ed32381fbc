//! The arc file format: a small header followed by three rows of
//! whitespace-separated element codes, one column per point.
//!
//! ```text
//! # optional comments
//! ring Z9
//! declared 30 4
//! provenance fixture: published coordinate listing
//! 0 0 0 3 ...
//! 0 1 1 0 ...
//! 1 0 4 1 ...
//! ```
//!
//! Row i holds coordinate i of every point. Columns need not be
//! normalized; they are normalized on load. Duplicate columns raise the
//! multiplicity. A declared (k, n) in the header is checked against the
//! verified report and mismatches are reported, never silently accepted.

use crate::arcs::PointMultiset;
use crate::plane::Plane;
use crate::ring::{Ring, RingElement, RingRef};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("missing 'ring' header line")]
    MissingRing,
    #[error("unknown ring {0}")]
    UnknownRing(String),
    #[error("expected 3 coordinate rows, found {0}")]
    BadRowCount(usize),
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("bad element code {code} (must be < {max}) in column {col}")]
    BadCode { code: u64, max: u16, col: usize },
    #[error("column {0} has no unit coordinate")]
    NoUnitColumn(usize),
    #[error("file is for ring {file}, plane is over {plane}")]
    RingMismatch { file: String, plane: String },
    #[error("malformed header line: {0}")]
    BadHeader(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug)]
pub struct ArcFile {
    pub ring_name: String,
    pub declared: Option<(u64, u64)>,
    pub provenance: Option<String>,
    pub columns: Vec<[u16; 3]>,
}

impl ArcFile {
    pub fn parse(text: &str) -> Result<ArcFile, FileError> {
        let mut ring_name: Option<String> = None;
        let mut declared = None;
        let mut provenance = None;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let first = it.next().unwrap();
            if first.chars().next().unwrap().is_ascii_digit() {
                let mut row: Vec<u64> = Vec::new();
                for tok in line.split_whitespace() {
                    row.push(
                        tok.parse::<u64>()
                            .map_err(|_| FileError::BadHeader(line.to_string()))?,
                    );
                }
                rows.push(row);
                continue;
            }
            match first {
                "ring" => {
                    ring_name = Some(
                        it.next().ok_or_else(|| FileError::BadHeader(line.into()))?.to_string(),
                    )
                }
                "declared" => {
                    let k = it
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| FileError::BadHeader(line.into()))?;
                    let n = it
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| FileError::BadHeader(line.into()))?;
                    declared = Some((k, n));
                }
                "provenance" => {
                    provenance = Some(line["provenance".len()..].trim().to_string());
                }
                _ => return Err(FileError::BadHeader(line.into())),
            }
        }
        let ring_name = ring_name.ok_or(FileError::MissingRing)?;
        let ring = Ring::by_name(&ring_name).map_err(|_| FileError::UnknownRing(ring_name.clone()))?;
        if rows.len() != 3 {
            return Err(FileError::BadRowCount(rows.len()));
        }
        if rows[1].len() != rows[0].len() || rows[2].len() != rows[0].len() {
            return Err(FileError::RaggedRows);
        }
        let mut columns = Vec::with_capacity(rows[0].len());
        for col in 0..rows[0].len() {
            let mut triple = [0u16; 3];
            for (i, row) in rows.iter().enumerate() {
                let code = row[col];
                if code >= ring.size as u64 {
                    return Err(FileError::BadCode { code, max: ring.size, col });
                }
                triple[i] = code as u16;
            }
            if !triple.iter().any(|&c| ring.is_unit(RingElement(c))) {
                return Err(FileError::NoUnitColumn(col));
            }
            columns.push(triple);
        }
        Ok(ArcFile { ring_name: ring.name.clone(), declared, provenance, columns })
    }

    pub fn load(path: &std::path::Path) -> Result<ArcFile, FileError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn ring(&self) -> RingRef {
        Ring::by_name(&self.ring_name).expect("ring validated at parse time")
    }

    /// Turn the columns into a multiset on the given plane.
    pub fn to_multiset(&self, plane: &Plane) -> Result<PointMultiset, FileError> {
        if plane.ring.name != self.ring_name {
            return Err(FileError::RingMismatch {
                file: self.ring_name.clone(),
                plane: plane.ring.name.clone(),
            });
        }
        let mut ms = PointMultiset::empty(plane);
        for (col, t) in self.columns.iter().enumerate() {
            let id = plane
                .point_id([RingElement(t[0]), RingElement(t[1]), RingElement(t[2])])
                .map_err(|_| FileError::NoUnitColumn(col))?;
            ms.mult[id as usize] += 1;
        }
        Ok(ms)
    }
}

/// Render a multiset as an arc file.
pub fn render(
    plane: &Plane,
    ms: &PointMultiset,
    declared: Option<(u64, u64)>,
    provenance: &str,
) -> String {
    let mut cols: Vec<[u16; 3]> = Vec::new();
    for (p, &m) in ms.mult.iter().enumerate() {
        for _ in 0..m {
            let c = plane.points[p].coords;
            cols.push([c[0].0, c[1].0, c[2].0]);
        }
    }
    let mut out = String::new();
    out.push_str(&format!("ring {}\n", plane.ring.name));
    out.push_str(&format!("# q = {}, |R| = {}\n", plane.ring.q, plane.ring.size));
    if let Some((k, n)) = declared {
        out.push_str(&format!("declared {k} {n}\n"));
    }
    if !provenance.is_empty() {
        out.push_str(&format!("provenance {provenance}\n"));
    }
    for i in 0..3 {
        let row: Vec<String> = cols.iter().map(|c| c[i].to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs;
    use crate::plane::Plane;

    #[test]
    fn roundtrip() {
        let plane = Plane::new(Ring::by_name("S3").unwrap());
        let mut ms = PointMultiset::empty(&plane);
        for p in (0..plane.n_points()).step_by(5) {
            ms.mult[p] = 1 + (p % 2) as u32;
        }
        let text = render(&plane, &ms, Some((ms.cardinality(), 99)), "unit test");
        let file = ArcFile::parse(&text).unwrap();
        assert_eq!(file.ring_name, "S3");
        assert_eq!(file.declared, Some((ms.cardinality(), 99)));
        let back = file.to_multiset(&plane).unwrap();
        assert_eq!(back, ms);
    }

    #[test]
    fn rejects_radical_column() {
        let text = "ring Z4\n2 0\n2 1\n2 0\n";
        match ArcFile::parse(text) {
            Err(FileError::NoUnitColumn(0)) => {}
            other => panic!("expected NoUnitColumn, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_code_and_mismatch() {
        let text = "ring Z4\n9\n0\n0\n";
        assert!(matches!(ArcFile::parse(text), Err(FileError::BadCode { .. })));
        let plane = Plane::new(Ring::by_name("Z9").unwrap());
        let file = ArcFile::parse("ring Z4\n1\n0\n0\n").unwrap();
        assert!(matches!(file.to_multiset(&plane), Err(FileError::RingMismatch { .. })));
    }

    #[test]
    fn save_and_load_constructed_arc() {
        let plane = Plane::new(Ring::by_name("Z9").unwrap());
        let ms = crate::constructions::construct(
            &plane,
            crate::constructions::ConstructionId::Q2Minus1,
            0,
        )
        .unwrap();
        let text = render(&plane, &ms, Some((69, 8)), "construction output");
        let back = ArcFile::parse(&text).unwrap().to_multiset(&plane).unwrap();
        assert_eq!(back, ms);
        let r = arcs::verify(&plane, &back).unwrap();
        assert!(r.is_arc(69, 8));
    }
}
