//! Generators for the small algebras used throughout the checks.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{build_algebra, Algebra, Arrow, QuiverPresentation, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Linearly oriented `1 -> 2 -> ... -> n`, no relations.
    LinearA(usize),
    /// Cyclic quiver on `n` vertices with all paths of length `r` set to zero.
    NakayamaCyclic(usize, usize),
    /// One vertex, one loop `x`, relation `x^n`.
    TruncatedLocal(usize),
    /// `1 -> 2 -> 3` with the composite set to zero.
    ZeroRelationA3,
}

impl Family {
    /// Largest dimension of an indecomposable module. Every family here has
    /// finite representation type, so enumeration up to this bound is complete.
    pub fn max_indecomposable_dim(&self) -> usize {
        match *self {
            Family::LinearA(n) => n,
            Family::NakayamaCyclic(_, r) => r,
            Family::TruncatedLocal(n) => n,
            Family::ZeroRelationA3 => 2,
        }
    }

    pub fn is_self_injective(&self) -> bool {
        matches!(self, Family::NakayamaCyclic(..) | Family::TruncatedLocal(_))
    }

    pub fn parse(s: &str) -> Option<Family> {
        let s = s.trim();
        let args = |prefix: &str| -> Option<Vec<usize>> {
            let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|x| x.trim().parse().ok()).collect()
        };
        match s {
            "A3Z" | "ZeroRelationA3" => return Some(Family::ZeroRelationA3),
            "A2" => return Some(Family::LinearA(2)),
            "LOC2" => return Some(Family::TruncatedLocal(2)),
            "N32" => return Some(Family::NakayamaCyclic(3, 2)),
            _ => {}
        }
        if let Some(a) = args("LinearA") {
            return (a.len() == 1 && a[0] >= 1).then(|| Family::LinearA(a[0]));
        }
        if let Some(a) = args("NakayamaCyclic") {
            return (a.len() == 2 && a[0] >= 1 && a[1] >= 2).then(|| Family::NakayamaCyclic(a[0], a[1]));
        }
        if let Some(a) = args("TruncatedLocal") {
            return (a.len() == 1 && a[0] >= 2).then(|| Family::TruncatedLocal(a[0]));
        }
        None
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::LinearA(n) => write!(f, "LinearA({n})"),
            Family::NakayamaCyclic(n, r) => write!(f, "NakayamaCyclic({n},{r})"),
            Family::TruncatedLocal(n) => write!(f, "TruncatedLocal({n})"),
            Family::ZeroRelationA3 => write!(f, "ZeroRelationA3"),
        }
    }
}

fn arrow_name(i: usize, count: usize) -> String {
    if count <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{}", i + 1)
    }
}

fn vertices(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub fn presentation(family: &Family, p: u32) -> QuiverPresentation {
    let name = family.to_string();
    match *family {
        Family::LinearA(n) => QuiverPresentation {
            name,
            p,
            vertices: vertices(n),
            arrows: (0..n.saturating_sub(1))
                .map(|i| Arrow { name: arrow_name(i, n - 1), source: i, target: i + 1 })
                .collect(),
            relations: vec![],
            nilpotency: n.max(2),
        },
        Family::NakayamaCyclic(n, r) => {
            let arrows: Vec<Arrow> =
                (0..n).map(|i| Arrow { name: arrow_name(i, n), source: i, target: (i + 1) % n }).collect();
            // path of length r starting at vertex s, in written order (last arrow first)
            let relations = (0..n)
                .map(|s| Relation { terms: vec![(1, (0..r).rev().map(|k| (s + k) % n).collect())] })
                .collect();
            QuiverPresentation { name, p, vertices: vertices(n), arrows, relations, nilpotency: r }
        }
        Family::TruncatedLocal(n) => QuiverPresentation {
            name,
            p,
            vertices: vertices(1),
            arrows: vec![Arrow { name: "x".into(), source: 0, target: 0 }],
            relations: vec![Relation { terms: vec![(1, vec![0; n])] }],
            nilpotency: n,
        },
        Family::ZeroRelationA3 => QuiverPresentation {
            name,
            p,
            vertices: vertices(3),
            arrows: vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 2 },
            ],
            relations: vec![Relation { terms: vec![(1, vec![1, 0])] }],
            nilpotency: 2,
        },
    }
}

pub fn build(family: &Family, p: u32) -> Arc<Algebra> {
    build_algebra(&presentation(family, p)).expect("corpus presentations are valid")
}

/// Like [`build`], for user-chosen characteristics.
pub fn build_checked(family: &Family, p: u32) -> crate::Result<Arc<Algebra>> {
    crate::exactla::FieldSpec::new(p)?;
    build_algebra(&presentation(family, p))
}

pub fn a2() -> Arc<Algebra> {
    build(&Family::LinearA(2), 2)
}

pub fn a3z() -> Arc<Algebra> {
    build(&Family::ZeroRelationA3, 2)
}

pub fn loc2() -> Arc<Algebra> {
    build(&Family::TruncatedLocal(2), 2)
}

pub fn truncated_local(n: usize) -> Arc<Algebra> {
    build(&Family::TruncatedLocal(n), 2)
}

pub fn nakayama(n: usize, r: usize) -> Arc<Algebra> {
    build(&Family::NakayamaCyclic(n, r), 2)
}

pub fn linear_a(n: usize) -> Arc<Algebra> {
    build(&Family::LinearA(n), 2)
}

/// The six algebras swept by the main consistency checks.
pub fn standard_corpus() -> Vec<Family> {
    vec![
        Family::LinearA(2),
        Family::ZeroRelationA3,
        Family::TruncatedLocal(2),
        Family::TruncatedLocal(3),
        Family::NakayamaCyclic(3, 2),
        Family::LinearA(3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(linear_a(1).dim(), 1);
        assert_eq!(linear_a(3).dim(), 6);
        assert_eq!(nakayama(3, 2).dim(), 6);
        assert_eq!(truncated_local(3).dim(), 3);
    }

    #[test]
    fn parse_round_trip() {
        for f in standard_corpus() {
            assert_eq!(Family::parse(&f.to_string()), Some(f));
        }
        assert_eq!(Family::parse("N32"), Some(Family::NakayamaCyclic(3, 2)));
        assert_eq!(Family::parse("LinearA(x)"), None);
    }
}
