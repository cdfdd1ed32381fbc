//! Embedded arc fixtures: published coordinate listings plus
//! search-generated witnesses produced with this crate's own tools (the
//! latter are tagged as such in their provenance lines).

use crate::files::ArcFile;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! fixture {
    ($name:literal) => {
        Fixture { name: $name, text: include_str!(concat!("../fixtures/", $name, ".arc")) }
    };
}

/// All embedded fixtures.
pub fn all() -> &'static [Fixture] {
    &[
        fixture!("z9_30_4"),
        fixture!("z9_39_3"),
        fixture!("g4_28_3"),
        fixture!("g4_68_5"),
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().iter().copied().find(|f| f.name == name)
}

pub fn parse(f: Fixture) -> ArcFile {
    ArcFile::parse(f.text).unwrap_or_else(|e| panic!("embedded fixture {} is broken: {e}", f.name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs;
    use crate::plane::Plane;

    #[test]
    fn fixtures_load_and_verify() {
        for f in all() {
            let file = parse(*f);
            let plane = Plane::new(file.ring());
            let ms = file.to_multiset(&plane).unwrap();
            let report = arcs::verify(&plane, &ms).unwrap();
            let (dk, dn) = file.declared.unwrap();
            assert_eq!(report.k, dk, "{}: cardinality", f.name);
            match f.name {
                // the declared n of the 39-point listing conflicts with the
                // settled value of m_3; its true parameters are (39, 5)
                "z9_39_3" => {
                    assert_eq!(dn, 3);
                    assert_ne!(report.n_max, dn, "{}: heading is known to disagree", f.name);
                    assert_eq!(report.n_max, 5, "{}", f.name);
                }
                _ => assert_eq!(report.n_max, dn, "{}: maximum line multiplicity", f.name),
            }
        }
    }
}
