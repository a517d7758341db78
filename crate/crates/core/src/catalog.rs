//! Built-in groups, shipped as generators with their recorded orders.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::parse::parse_cycles;
use crate::perm::Perm;

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub degree: usize,
    pub generators: &'static [&'static str],
    pub order: usize,
    /// Primes the test suite exercises for this group.
    pub primes: &'static [u64],
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "s3",
        description: "symmetric group S3",
        degree: 3,
        generators: &["(0 1 2)", "(0 1)"],
        order: 6,
        primes: &[2, 3],
    },
    CatalogEntry {
        name: "c7c3",
        description: "Frobenius group C7 ⋊ C3",
        degree: 7,
        generators: &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"],
        order: 21,
        primes: &[3, 7],
    },
    CatalogEntry {
        name: "a4",
        description: "alternating group A4",
        degree: 4,
        generators: &["(0 1 2)", "(0 1)(2 3)"],
        order: 12,
        primes: &[3],
    },
    CatalogEntry {
        name: "d10",
        description: "dihedral group of order 10",
        degree: 5,
        generators: &["(0 1 2 3 4)", "(1 4)(2 3)"],
        order: 10,
        primes: &[5],
    },
    CatalogEntry {
        name: "a5",
        description: "alternating group A5",
        degree: 5,
        generators: &["(0 1 2 3 4)", "(0 1 2)"],
        order: 60,
        primes: &[3, 5],
    },
    CatalogEntry {
        name: "a5xc5",
        description: "direct product A5 × C5",
        degree: 10,
        generators: &["(0 1 2 3 4)", "(0 1 2)", "(5 6 7 8 9)"],
        order: 300,
        primes: &[5],
    },
    CatalogEntry {
        name: "sl28",
        description: "SL(2,8) acting on the projective line",
        degree: 9,
        generators: &["(0 1)(2 3)(4 5)(6 7)", "(1 2 4 3 6 7 5)", "(0 8)(2 5)(3 6)(4 7)"],
        order: 504,
        primes: &[3, 7],
    },
    CatalogEntry {
        name: "sl28c3",
        description: "SL(2,8) ⋊ C3 extended by the field automorphism",
        degree: 9,
        generators: &["(0 1)(2 3)(4 5)(6 7)", "(1 2 4 3 6 7 5)", "(0 8)(2 5)(3 6)(4 7)", "(2 4 6)(3 5 7)"],
        order: 1512,
        primes: &[3],
    },
];

/// Looks up an entry, ignoring case, spaces and the `×`/`x` separator.
pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    let key: String = name
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
        .map(|c| if c == '×' { 'x' } else { c.to_ascii_lowercase() })
        .collect();
    let key = match key.as_str() {
        "sl(2,8)" => "sl28".to_string(),
        "sl(2,8)xc3" | "sl(2,8):c3" | "pgaml(2,8)" => "sl28c3".to_string(),
        _ => key,
    };
    CATALOG.iter().find(|e| e.name == key)
}

impl CatalogEntry {
    pub fn generators(&self) -> Vec<Perm> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, s)| parse_cycles(self.degree, s, i + 1).expect("catalog generators are valid"))
            .collect()
    }

    /// Enumerates the group and checks the recorded order.
    pub fn build(&self) -> Result<Arc<Group>> {
        let g = Group::new(self.degree, &self.generators())?;
        if g.order() != self.order {
            return Err(Error::Internal(format!("{} has order {}, expected {}", self.name, g.order(), self.order)));
        }
        Ok(Arc::new(g))
    }
}

pub fn load(name: &str) -> Result<Arc<Group>> {
    entry(name).ok_or_else(|| Error::UnknownGroup(name.to_string()))?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_group_text, serialize_group};

    #[test]
    fn every_entry_has_its_order() {
        for e in CATALOG {
            let g = e.build().unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
            let total: usize = g.classes().iter().map(|c| c.size).sum();
            assert_eq!(total, g.order());
        }
    }

    #[test]
    fn names_are_forgiving() {
        assert_eq!(entry("A5x C5").unwrap().name, "a5xc5");
        assert_eq!(entry("A5×C5").unwrap().name, "a5xc5");
        assert_eq!(entry("SL(2,8)").unwrap().name, "sl28");
        assert!(entry("m11").is_none());
        assert!(matches!(load("m11"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn entries_round_trip_through_text() {
        for e in CATALOG {
            let gens = e.generators();
            let text = serialize_group(e.degree, &gens);
            let (n, back) = parse_group_text(&text).unwrap();
            assert_eq!(n, e.degree);
            assert_eq!(back, gens);
            let g = Group::new(n, &back).unwrap();
            assert_eq!(g.elements(), e.build().unwrap().elements());
        }
    }
}
