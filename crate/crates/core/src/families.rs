//! Named structure families.
//!
//! Vertices are `0..n`; where a family is usually described on `1..n`, every
//! vertex index is shifted down by one.

use crate::error::{Error, Result};
use crate::structure::{Kind, Model, Shape, Structure, MAX_VERTICES};

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::Range(format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    Ok(())
}

fn loop_model(model: Model) -> Result<bool> {
    match model {
        Model::Reflexive => Ok(true),
        Model::Irreflexive => Ok(false),
        Model::Plain => Err(Error::Range("model must be reflexive or irreflexive".into())),
    }
}

fn pairs_family(n: usize, loops: bool, mut keep: impl FnMut(usize, usize) -> bool) -> Structure {
    let mut s = Structure::edgeless(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && keep(u, v) {
                s.insert(u, v);
            }
        }
    }
    if loops {
        s = s.with_all_loops();
    }
    s
}

/// `K_n`: every pair of distinct vertices adjacent.
pub fn complete_graph(n: usize, model: Model) -> Result<Structure> {
    check_size(n)?;
    Ok(pairs_family(n, loop_model(model)?, |_, _| true))
}

/// No edges between distinct vertices; loops per `model`.
pub fn empty_graph(n: usize, model: Model) -> Result<Structure> {
    check_size(n)?;
    Ok(pairs_family(n, loop_model(model)?, |_, _| false))
}

fn check_pairs(n: usize, k: usize) -> Result<()> {
    check_size(n)?;
    if 2 * k > n {
        return Err(Error::Range(format!("need 2k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `N(n, k)`: the reflexive complete graph on `n` vertices with the `k`
/// disjoint edges `{0,1}, {2,3}, …, {2k-2, 2k-1}` removed.
pub fn subcomplete_graph(n: usize, k: usize) -> Result<Structure> {
    check_pairs(n, k)?;
    Ok(pairs_family(n, true, |u, v| !(u / 2 == v / 2 && u / 2 < k)))
}

/// All ordered pairs of distinct vertices; loops per `model`.
pub fn complete_digraph(n: usize, model: Model) -> Result<Structure> {
    complete_graph(n, model)
}

/// The reflexive complete digraph on `n` vertices with the directed edges
/// `(0,1), (2,3), …, (2k-2, 2k-1)` removed. The reverse edges remain.
pub fn subcomplete_digraph(n: usize, k: usize) -> Result<Structure> {
    check_pairs(n, k)?;
    Ok(pairs_family(n, true, |u, v| {
        !(u % 2 == 0 && v == u + 1 && u / 2 < k)
    }))
}

/// Reads a reflexive graph as a reflexive digraph, each edge `{a, b}` giving
/// `(a, b)` and `(b, a)`.
pub fn bidirect(g: &Structure) -> Result<Structure> {
    g.validate(Kind::new(Shape::Graph, Model::Reflexive))?;
    Ok(g.clone())
}

/// The reflexive parity tournament on odd `n`: for `i < j`, `i → j` when
/// `i` and `j` have different parity and `j → i` otherwise.
pub fn parity_tournament(n: usize) -> Result<Structure> {
    check_size(n)?;
    if n.is_multiple_of(2) {
        return Err(Error::Range(format!("parity tournaments need odd n, got {n}")));
    }
    Ok(pairs_family(n, true, |u, v| {
        let differ = (u + v) % 2 == 1;
        (u < v) == differ
    }))
}

/// A family generator by its command-line name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    CompleteGraph,
    EmptyGraph,
    SubcompleteGraph,
    CompleteDigraph,
    SubcompleteDigraph,
    Bidirect,
    ParityTournament,
}

crate::structure::str_enum!(Family {
    CompleteGraph => "complete-graph",
    EmptyGraph => "empty-graph",
    SubcompleteGraph => "subcomplete-graph",
    CompleteDigraph => "complete-digraph",
    SubcompleteDigraph => "subcomplete-digraph",
    Bidirect => "bidirect",
    ParityTournament => "parity-tournament",
});

/// Integer or model parameters for [`Family::build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: usize,
    pub k: usize,
    pub model: Model,
}

impl Family {
    /// Builds a family member and the kind it belongs to. `Bidirect` applies
    /// to the proper subcomplete graph `N(2k, k)` with `k = params.n`.
    pub fn build(self, p: FamilyParams) -> Result<(Kind, Structure)> {
        use Shape::*;
        Ok(match self {
            Family::CompleteGraph => (Kind::new(Graph, p.model), complete_graph(p.n, p.model)?),
            Family::EmptyGraph => (Kind::new(Graph, p.model), empty_graph(p.n, p.model)?),
            Family::SubcompleteGraph => (Kind::new(Graph, Model::Reflexive), subcomplete_graph(p.n, p.k)?),
            Family::CompleteDigraph => (Kind::new(Digraph, p.model), complete_digraph(p.n, p.model)?),
            Family::SubcompleteDigraph => (
                Kind::new(Digraph, Model::Reflexive),
                subcomplete_digraph(p.n, p.k)?,
            ),
            Family::Bidirect => {
                let n = p.n.checked_mul(2).ok_or_else(|| Error::Range("k too large".into()))?;
                (
                    Kind::new(Digraph, Model::Reflexive),
                    bidirect(&subcomplete_graph(n, p.n)?)?,
                )
            }
            Family::ParityTournament => (Kind::new(Tournament, Model::Reflexive), parity_tournament(p.n)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    #[test]
    fn complete_and_empty() {
        let k1 = complete_graph(1, Model::Reflexive).unwrap();
        assert_eq!(k1.edges().collect::<Vec<_>>(), vec![(0, 0)]);
        let k3 = complete_graph(3, Model::Irreflexive).unwrap();
        assert_eq!(k3.edge_count(), 6);
        assert!(k3.is_irreflexive());
        assert_eq!(complete_graph(6, Model::Reflexive).unwrap(), subcomplete_graph(6, 0).unwrap());
        assert!(complete_graph(2, Model::Plain).is_err());

        let e2 = empty_graph(2, Model::Reflexive).unwrap();
        assert_eq!(e2.edges().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
        assert_eq!(empty_graph(0, Model::Irreflexive).unwrap(), Structure::edgeless(0));
        assert_eq!(empty_graph(5, Model::Irreflexive).unwrap().edge_count(), 0);
    }

    #[test]
    fn subcomplete_graphs() {
        let n42 = subcomplete_graph(4, 2).unwrap();
        let c4 = Structure::from_edges(
            4,
            &[(0, 0), (1, 1), (2, 2), (3, 3), (0, 2), (2, 1), (1, 3), (3, 0)],
        )
        .unwrap();
        let c4 = Structure::from_edges(4, &c4.edges().chain(c4.transpose().edges()).collect::<Vec<_>>()).unwrap();
        assert!(are_isomorphic(&n42, &c4));

        let n62 = subcomplete_graph(6, 2).unwrap();
        assert!(!n62.has_edge(0, 1) && !n62.has_edge(2, 3));
        assert!(n62.has_edge(4, 5) && n62.has_edge(1, 2));
        assert_eq!(n62.proper_edge_count(), 2 * (15 - 2));

        assert_eq!(subcomplete_graph(2, 1).unwrap(), empty_graph(2, Model::Reflexive).unwrap());
        assert!(subcomplete_graph(3, 2).is_err());
    }

    #[test]
    fn induced_subcomplete() {
        let n31 = subcomplete_graph(3, 1).unwrap();
        assert_eq!(subcomplete_graph(6, 2).unwrap().induced(&[0, 1, 4]).unwrap(), n31);
    }

    #[test]
    fn subcomplete_vertices_miss_at_most_one_neighbour() {
        for n in 0..9 {
            for k in 0..=n / 2 {
                let g = subcomplete_graph(n, k).unwrap();
                for v in 0..n {
                    let missing = (0..n).filter(|&u| !g.has_edge(v, u)).count();
                    assert!(missing <= 1);
                }
            }
        }
    }

    #[test]
    fn digraph_families() {
        let k2 = complete_digraph(2, Model::Reflexive).unwrap();
        assert_eq!(k2.edges().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let k3i = complete_digraph(3, Model::Irreflexive).unwrap();
        assert_eq!(k3i.edge_count(), 6);
        for n in 0..=6 {
            assert!(complete_digraph(n, Model::Reflexive)
                .unwrap()
                .validate(Kind::new(Shape::Digraph, Model::Reflexive))
                .is_ok());
            assert_eq!(
                subcomplete_digraph(n, 0).unwrap(),
                complete_digraph(n, Model::Reflexive).unwrap()
            );
        }
        assert_eq!(
            subcomplete_digraph(2, 1).unwrap().edges().collect::<Vec<_>>(),
            vec![(0, 0), (1, 0), (1, 1)]
        );
        let n62 = subcomplete_digraph(6, 2).unwrap();
        assert!(!n62.has_edge(0, 1) && n62.has_edge(1, 0));
        assert!(!n62.has_edge(2, 3) && n62.has_edge(3, 2));
        assert!(n62.has_edge(4, 5) && n62.has_edge(5, 4));
    }

    #[test]
    fn bidirect_views_graph_as_digraph() {
        assert_eq!(
            bidirect(&complete_graph(3, Model::Reflexive).unwrap()).unwrap(),
            complete_digraph(3, Model::Reflexive).unwrap()
        );
        assert_eq!(
            bidirect(&empty_graph(2, Model::Reflexive).unwrap()).unwrap().edge_count(),
            2
        );
        let arc = Structure::from_edges(2, &[(0, 0), (1, 1), (0, 1)]).unwrap();
        assert!(matches!(bidirect(&arc), Err(Error::KindViolation { .. })));
    }

    #[test]
    fn parity_tournaments() {
        let t3 = parity_tournament(3).unwrap();
        assert_eq!(
            t3.edges().filter(|(u, v)| u != v).collect::<Vec<_>>(),
            vec![(0, 1), (1, 2), (2, 0)]
        );
        for n in [1, 3, 5, 7, 9] {
            assert!(parity_tournament(n)
                .unwrap()
                .validate(Kind::new(Shape::Tournament, Model::Reflexive))
                .is_ok());
        }
        assert!(parity_tournament(4).is_err());
        assert!(parity_tournament(0).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in [
            Family::CompleteGraph,
            Family::EmptyGraph,
            Family::SubcompleteGraph,
            Family::CompleteDigraph,
            Family::SubcompleteDigraph,
            Family::Bidirect,
            Family::ParityTournament,
        ] {
            assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
        }
    }
}
