//! Finite structures with a single binary relation.
//!
//! A [`Structure`] is a vertex set `0..n` with an edge relation stored as a
//! dense bit matrix: row `u` is a `u64` whose bit `v` is set when `(u, v)` is an
//! edge. Graphs, digraphs and tournaments are all structures; a [`Kind`] says
//! which constraints a structure is expected to satisfy.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count a [`Structure`] can hold.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// A finite set of vertices `0..n` with one binary edge relation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Structure {
    n: usize,
    rows: Vec<u64>,
}

impl Structure {
    /// The structure on `n` vertices with no edges.
    ///
    /// Panics if `n` exceeds [`MAX_VERTICES`].
    pub fn edgeless(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Structure {
            n,
            rows: vec![0; n],
        }
    }

    /// Builds a structure from a list of ordered pairs. Duplicates are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::BoundExceeded {
                what: "vertex count",
                value: n,
                limit: MAX_VERTICES,
            });
        }
        let mut s = Structure::edgeless(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::OutOfRange { vertex: x, n });
                }
            }
            s.insert(u, v);
        }
        Ok(s)
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), n);
        debug_assert!(rows.iter().all(|r| r & !full_mask(n) == 0));
        Structure { n, rows }
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        self.rows[u] |= bit(v);
    }

    /// Adds a loop at every vertex.
    pub fn with_all_loops(mut self) -> Self {
        for v in 0..self.n {
            self.insert(v, v);
        }
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] & bit(v) != 0
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// Out-neighbourhood of `v` as a bit mask (includes `v` if it has a loop).
    #[inline]
    pub fn out_mask(&self, v: usize) -> u64 {
        self.rows[v]
    }

    /// In-neighbourhood of `v` as a bit mask.
    pub fn in_mask(&self, v: usize) -> u64 {
        let b = bit(v);
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| *r & b != 0)
            .fold(0, |m, (u, _)| m | bit(u))
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, &r)| bits(r).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Number of non-loop edges.
    pub fn proper_edge_count(&self) -> usize {
        self.edge_count() - self.loop_count()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.has_loop(v)).count()
    }

    /// Every vertex carries a loop.
    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.has_loop(v))
    }

    /// No vertex carries a loop.
    pub fn is_irreflexive(&self) -> bool {
        (0..self.n).all(|v| !self.has_loop(v))
    }

    /// The non-loop relation is symmetric.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (0..u).all(|v| self.has_edge(u, v) == self.has_edge(v, u)))
    }

    /// Every pair of distinct vertices is an edge (loops are not considered).
    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|u| self.rows[u] | bit(u) == full_mask(self.n))
    }

    /// No edge joins two distinct vertices (loops are not considered).
    pub fn is_empty_relation(&self) -> bool {
        (0..self.n).all(|u| self.rows[u] & !bit(u) == 0)
    }

    /// The structure obtained by sending vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Structure {
        debug_assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for (u, &r) in self.rows.iter().enumerate() {
            rows[perm[u]] = bits(r).fold(0, |m, v| m | bit(perm[v]));
        }
        Structure { n: self.n, rows }
    }

    /// The reverse relation.
    pub fn transpose(&self) -> Structure {
        let rows = (0..self.n).map(|v| self.in_mask(v)).collect();
        Structure { n: self.n, rows }
    }

    /// The substructure induced on `vs`, relabelled `0..vs.len()` in ascending
    /// vertex order.
    pub fn induced(&self, vs: &[usize]) -> Result<Structure> {
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(Error::OutOfRange {
                vertex: bad,
                n: self.n,
            });
        }
        Ok(self.induced_ordered(&sorted))
    }

    /// Substructure on `vs` in the order given; `vs` must be distinct and in range.
    pub(crate) fn induced_ordered(&self, vs: &[usize]) -> Structure {
        let rows = vs
            .iter()
            .map(|&u| {
                vs.iter()
                    .enumerate()
                    .filter(|(_, &v)| self.has_edge(u, v))
                    .fold(0, |m, (j, _)| m | bit(j))
            })
            .collect();
        Structure { n: vs.len(), rows }
    }

    /// Checks `self` against `kind`.
    pub fn validate(&self, kind: Kind) -> Result<()> {
        kind.check()?;
        for u in 0..self.n {
            for v in 0..self.n {
                let fwd = self.has_edge(u, v);
                if u == v {
                    match kind.model {
                        Model::Reflexive if !fwd => {
                            return Err(Error::kind("missing loop in reflexive model", Some((u, v))))
                        }
                        Model::Irreflexive if fwd => {
                            return Err(Error::kind("loop in irreflexive model", Some((u, v))))
                        }
                        _ => {}
                    }
                    continue;
                }
                let back = self.has_edge(v, u);
                match kind.shape {
                    Shape::Graph if fwd != back => {
                        return Err(Error::kind("graph relation is not symmetric", Some((u, v))))
                    }
                    Shape::Tournament if fwd == back => {
                        let reason = if fwd {
                            "tournament pair joined in both directions"
                        } else {
                            "tournament pair not joined"
                        };
                        return Err(Error::kind(reason, Some((u, v))));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}{}{v}", if u == v { "@" } else { ">" })?;
        }
        write!(f, "])")
    }
}

/// The overall shape constraint of a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Graph,
    Digraph,
    Tournament,
}

/// Which loops a structure carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Every vertex has a loop.
    Reflexive,
    /// No vertex has a loop.
    Irreflexive,
    /// Loops are arbitrary.
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Kind {
    pub shape: Shape,
    pub model: Model,
}

impl Kind {
    pub const fn new(shape: Shape, model: Model) -> Self {
        Kind { shape, model }
    }

    /// Rejects plain tournaments, which are not part of the model.
    pub fn check(self) -> Result<()> {
        if self.shape == Shape::Tournament && self.model == Model::Plain {
            return Err(Error::kind(
                "tournaments must be reflexive or irreflexive",
                None,
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.shape, self.model)
    }
}

macro_rules! str_enum {
    ($ty:ident { $($variant:ident => $name:literal),* $(,)? }) => {
        impl $ty {
            pub fn as_str(self) -> &'static str {
                match self { $($ty::$variant => $name),* }
            }
        }

        impl ::std::fmt::Display for $ty {
            fn fmt(&self, f: &mut ::std::fmt::Formatter<'_>) -> ::std::fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl ::std::str::FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s {
                    $($name => Ok($ty::$variant),)*
                    other => Err(format!(
                        concat!("unknown ", stringify!($ty), " `{}` (expected one of: {})"),
                        other,
                        [$($name),*].join(", ")
                    )),
                }
            }
        }
    };
}
pub(crate) use str_enum;

str_enum!(Shape {
    Graph => "graph",
    Digraph => "digraph",
    Tournament => "tournament",
});

str_enum!(Model {
    Reflexive => "reflexive",
    Irreflexive => "irreflexive",
    Plain => "plain",
});

#[cfg(test)]
mod tests {
    use super::*;

    const REFLEXIVE_GRAPH: Kind = Kind::new(Shape::Graph, Model::Reflexive);

    #[test]
    fn reflexive_k2_is_a_reflexive_graph() {
        let s = Structure::from_edges(2, &[(0, 0), (1, 1), (0, 1), (1, 0)]).unwrap();
        assert!(s.validate(REFLEXIVE_GRAPH).is_ok());
        assert!(s.validate(Kind::new(Shape::Digraph, Model::Reflexive)).is_ok());
    }

    #[test]
    fn directed_triangle_is_an_irreflexive_tournament() {
        let s = Structure::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(s
            .validate(Kind::new(Shape::Tournament, Model::Irreflexive))
            .is_ok());
    }

    #[test]
    fn asymmetric_pair_is_not_a_graph() {
        let s = Structure::from_edges(2, &[(0, 1)]).unwrap();
        let err = s
            .validate(Kind::new(Shape::Graph, Model::Irreflexive))
            .unwrap_err();
        match err {
            Error::KindViolation { pair, .. } => assert_eq!(pair, Some((0, 1))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn first_violation_is_reported() {
        // (0,0) is missing before the asymmetric (1,2) is reached.
        let s = Structure::from_edges(3, &[(1, 1), (2, 2), (1, 2)]).unwrap();
        match s.validate(REFLEXIVE_GRAPH).unwrap_err() {
            Error::KindViolation { pair, .. } => assert_eq!(pair, Some((0, 0))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn plain_tournaments_are_rejected() {
        let s = Structure::edgeless(1);
        assert!(s.validate(Kind::new(Shape::Tournament, Model::Plain)).is_err());
    }

    #[test]
    fn tournament_violations() {
        let both = Structure::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let neither = Structure::edgeless(2);
        let k = Kind::new(Shape::Tournament, Model::Irreflexive);
        assert!(both.validate(k).is_err());
        assert!(neither.validate(k).is_err());
    }

    #[test]
    fn induced_keeps_internal_edges() {
        let k4 = Structure::from_edges(
            4,
            &(0..4)
                .flat_map(|u| (0..4).map(move |v| (u, v)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let k2 = k4.induced(&[0, 1]).unwrap();
        assert_eq!(k2.n(), 2);
        assert_eq!(k2.edge_count(), 4);
        assert_eq!(k4.induced(&[]).unwrap(), Structure::edgeless(0));
        assert!(matches!(
            k4.induced(&[0, 7]),
            Err(Error::OutOfRange { vertex: 7, n: 4 })
        ));
    }

    #[test]
    fn induced_relabels_in_ascending_order() {
        let s = Structure::from_edges(5, &[(4, 1), (1, 3)]).unwrap();
        let sub = s.induced(&[4, 1]).unwrap();
        assert_eq!(sub, Structure::from_edges(2, &[(1, 0)]).unwrap());
    }

    #[test]
    fn relabel_and_transpose() {
        let s = Structure::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = s.relabel(&[2, 0, 1]);
        assert_eq!(r, Structure::from_edges(3, &[(2, 0), (0, 1)]).unwrap());
        assert_eq!(
            s.transpose(),
            Structure::from_edges(3, &[(1, 0), (2, 1)]).unwrap()
        );
    }

    #[test]
    fn too_many_vertices() {
        assert!(matches!(
            Structure::from_edges(65, &[]),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
