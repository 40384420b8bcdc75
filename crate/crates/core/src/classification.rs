//! Recognition of subcomplete shapes and well-quasi-order verdicts for
//! single-obstruction avoidance classes.

use serde::{Deserialize, Serialize};

use crate::decomposition::max_disjoint_edges;
use crate::error::{Error, Result};
use crate::families::{
    bidirect, complete_digraph, complete_graph, parity_tournament, subcomplete_digraph,
    subcomplete_graph,
};
use crate::hom::{precedes, Mapping, Strength};
use crate::structure::{full_mask, str_enum, Kind, Model, Shape, Structure};

/// The ambient classes in which avoidance classes are classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureClass {
    IrreflexiveGraphs,
    ReflexiveGraphs,
    Digraphs,
    IrreflexiveDigraphs,
    ReflexiveDigraphs,
    ReflexiveTournaments,
}

str_enum!(StructureClass {
    IrreflexiveGraphs => "irreflexive-graphs",
    ReflexiveGraphs => "reflexive-graphs",
    Digraphs => "digraphs",
    IrreflexiveDigraphs => "irreflexive-digraphs",
    ReflexiveDigraphs => "reflexive-digraphs",
    ReflexiveTournaments => "reflexive-tournaments",
});

impl StructureClass {
    pub const ALL: [StructureClass; 6] = [
        StructureClass::IrreflexiveGraphs,
        StructureClass::ReflexiveGraphs,
        StructureClass::Digraphs,
        StructureClass::IrreflexiveDigraphs,
        StructureClass::ReflexiveDigraphs,
        StructureClass::ReflexiveTournaments,
    ];

    pub fn kind(self) -> Kind {
        use StructureClass::*;
        match self {
            IrreflexiveGraphs => Kind::new(Shape::Graph, Model::Irreflexive),
            ReflexiveGraphs => Kind::new(Shape::Graph, Model::Reflexive),
            Digraphs => Kind::new(Shape::Digraph, Model::Plain),
            IrreflexiveDigraphs => Kind::new(Shape::Digraph, Model::Irreflexive),
            ReflexiveDigraphs => Kind::new(Shape::Digraph, Model::Reflexive),
            ReflexiveTournaments => Kind::new(Shape::Tournament, Model::Reflexive),
        }
    }
}

/// Parameters of a recognized subcomplete structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Subcomplete {
    pub n: usize,
    pub k: usize,
    /// Every vertex lies on one of the `k` removed pairs.
    pub proper: bool,
}

impl Subcomplete {
    fn new(n: usize, k: usize) -> Self {
        Subcomplete { n, k, proper: 2 * k == n }
    }

    pub fn is_complete(&self) -> bool {
        self.k == 0
    }
}

/// Recognizes `N(n, k)`: every vertex misses at most one other vertex.
pub fn recognize_subcomplete_graph(g: &Structure) -> Result<Option<Subcomplete>> {
    g.validate(Kind::new(Shape::Graph, Model::Reflexive))?;
    let n = g.n();
    let mut missing = 0;
    for v in 0..n {
        let non = (!g.out_mask(v) & full_mask(n)).count_ones();
        if non > 1 {
            return Ok(None);
        }
        missing += non as usize;
    }
    Ok(Some(Subcomplete::new(n, missing / 2)))
}

/// Recognizes the subcomplete digraph: every pair joined in at least one
/// direction, and the one-way pairs pairwise disjoint.
pub fn recognize_subcomplete_digraph(d: &Structure) -> Result<Option<Subcomplete>> {
    d.validate(Kind::new(Shape::Digraph, Model::Reflexive))?;
    let n = d.n();
    let mut one_way = 0;
    for v in 0..n {
        let (out, inn) = (d.out_mask(v), d.in_mask(v));
        if (out | inn) != full_mask(n) {
            return Ok(None);
        }
        let partial = (out ^ inn).count_ones();
        if partial > 1 {
            return Ok(None);
        }
        one_way += partial as usize;
    }
    Ok(Some(Subcomplete::new(n, one_way / 2)))
}

/// True when no (strong) epimorphism maps `x` onto `obstruction`.
pub fn avoids(x: &Structure, obstruction: &Structure, strength: Strength) -> bool {
    !precedes(obstruction, x, strength)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Wqo,
    NotWqo,
    Open,
}

str_enum!(Outcome {
    Wqo => "wqo",
    NotWqo => "not-wqo",
    Open => "open",
});

/// Infinite antichain families used as witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AntichainFamily {
    /// Irreflexive complete graphs `K_m`, parameter `m`.
    IrreflexiveCompleteGraphs,
    /// Irreflexive complete digraphs, parameter `m`.
    IrreflexiveCompleteDigraphs,
    /// `N(2k, k)`, parameter `k`.
    ProperSubcompleteGraphs,
    /// Proper subcomplete digraphs on `2k` vertices, parameter `k`.
    ProperSubcompleteDigraphs,
    /// `N(2k, k)` read as reflexive digraphs, parameter `k`.
    BidirectedSubcompleteGraphs,
    /// Parity tournaments `T_m`, odd parameter `m`.
    ParityTournaments,
}

str_enum!(AntichainFamily {
    IrreflexiveCompleteGraphs => "irreflexive-complete-graphs",
    IrreflexiveCompleteDigraphs => "irreflexive-complete-digraphs",
    ProperSubcompleteGraphs => "proper-subcomplete-graphs",
    ProperSubcompleteDigraphs => "proper-subcomplete-digraphs",
    BidirectedSubcompleteGraphs => "bidirected-subcomplete-graphs",
    ParityTournaments => "parity-tournaments",
});

/// An antichain family together with its first parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WitnessFamily {
    pub name: AntichainFamily,
    pub start: usize,
}

impl WitnessFamily {
    /// The family member `i` steps after the first one.
    pub fn member(&self, i: usize) -> Result<Structure> {
        use AntichainFamily::*;
        match self.name {
            IrreflexiveCompleteGraphs => complete_graph(self.start + i, Model::Irreflexive),
            IrreflexiveCompleteDigraphs => complete_digraph(self.start + i, Model::Irreflexive),
            ProperSubcompleteGraphs => {
                let k = self.start + i;
                subcomplete_graph(2 * k, k)
            }
            ProperSubcompleteDigraphs => {
                let k = self.start + i;
                subcomplete_digraph(2 * k, k)
            }
            BidirectedSubcompleteGraphs => {
                let k = self.start + i;
                bidirect(&subcomplete_graph(2 * k, k)?)
            }
            ParityTournaments => parity_tournament(self.start + 2 * i),
        }
    }

    /// The family whose first member is the smallest one with more than `n`
    /// vertices (and, for tournaments, more than one vertex).
    fn above(name: AntichainFamily, n: usize) -> Self {
        use AntichainFamily::*;
        let start = match name {
            IrreflexiveCompleteGraphs | IrreflexiveCompleteDigraphs => n + 1,
            ProperSubcompleteGraphs | ProperSubcompleteDigraphs | BidirectedSubcompleteGraphs => {
                n / 2 + 1
            }
            ParityTournaments => {
                let m = n.max(1) + 1;
                m + (1 - m % 2)
            }
        };
        WitnessFamily { name, start }
    }
}

/// Names of the rules a verdict rests on.
pub mod rules {
    pub const EMPTY_OBSTRUCTION: &str = "empty-obstruction";
    pub const IRREFLEXIVE_GRAPHS: &str = "irreflexive-graphs-never-wqo";
    pub const REFLEXIVE_GRAPHS_STANDARD: &str = "reflexive-graphs-standard-partial-subcomplete";
    pub const REFLEXIVE_GRAPHS_STRONG_NON_SUBCOMPLETE: &str = "reflexive-graphs-strong-non-subcomplete";
    pub const REFLEXIVE_GRAPHS_STRONG_PROPER: &str = "reflexive-graphs-strong-proper-subcomplete";
    pub const REFLEXIVE_GRAPHS_STRONG_COMPLETE: &str = "reflexive-graphs-strong-complete";
    pub const REFLEXIVE_GRAPHS_STRONG_N31: &str = "reflexive-graphs-strong-n31";
    pub const REFLEXIVE_GRAPHS_STRONG_OPEN: &str = "reflexive-graphs-strong-open";
    pub const DIGRAPHS_STANDARD: &str = "digraphs-standard-complete";
    pub const DIGRAPHS_STRONG: &str = "digraphs-strong-complete";
    pub const IRREFLEXIVE_DIGRAPHS: &str = "irreflexive-digraphs-never-wqo";
    pub const REFLEXIVE_DIGRAPHS_STANDARD: &str = "reflexive-digraphs-standard-partial-subcomplete";
    pub const REFLEXIVE_DIGRAPHS_STRONG: &str = "reflexive-digraphs-strong-complete";
    pub const REFLEXIVE_TOURNAMENTS: &str = "reflexive-tournaments-never-wqo";
    pub const REFLEXIVE_TOURNAMENTS_TRIVIAL: &str = "reflexive-tournaments-trivial-obstruction";
}

/// The classification of one avoidance class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    /// The avoidance class is finite. Only ever set for `wqo`.
    pub finite_ideal: bool,
    pub witness_family: Option<WitnessFamily>,
    pub theorem_tag: String,
}

impl Verdict {
    fn wqo(finite: bool, tag: &str) -> Self {
        Verdict {
            outcome: Outcome::Wqo,
            finite_ideal: finite,
            witness_family: None,
            theorem_tag: tag.into(),
        }
    }

    fn not_wqo(family: AntichainFamily, n: usize, tag: &str) -> Self {
        Verdict {
            outcome: Outcome::NotWqo,
            finite_ideal: false,
            witness_family: Some(WitnessFamily::above(family, n)),
            theorem_tag: tag.into(),
        }
    }

    fn open(tag: &str) -> Self {
        Verdict {
            outcome: Outcome::Open,
            finite_ideal: false,
            witness_family: None,
            theorem_tag: tag.into(),
        }
    }
}

fn is_reflexive_complete(s: &Structure) -> bool {
    s.is_reflexive() && s.is_complete()
}

/// The verdict for `Av(obstruction)` inside `class` under `strength`.
pub fn classify(class: StructureClass, strength: Strength, obstruction: &Structure) -> Result<Verdict> {
    use AntichainFamily::*;
    use StructureClass::*;
    obstruction.validate(class.kind())?;
    let n = obstruction.n();
    let strong = strength == Strength::Strong;

    if n == 0 {
        // Nothing maps onto the empty structure except itself.
        let family = match class {
            IrreflexiveGraphs => IrreflexiveCompleteGraphs,
            IrreflexiveDigraphs => IrreflexiveCompleteDigraphs,
            ReflexiveGraphs => ProperSubcompleteGraphs,
            Digraphs | ReflexiveDigraphs => ProperSubcompleteDigraphs,
            ReflexiveTournaments => ParityTournaments,
        };
        return Ok(Verdict::not_wqo(family, 0, rules::EMPTY_OBSTRUCTION));
    }

    Ok(match class {
        IrreflexiveGraphs => Verdict::not_wqo(IrreflexiveCompleteGraphs, n, rules::IRREFLEXIVE_GRAPHS),
        IrreflexiveDigraphs => {
            Verdict::not_wqo(IrreflexiveCompleteDigraphs, n, rules::IRREFLEXIVE_DIGRAPHS)
        }
        ReflexiveGraphs => {
            let shape = recognize_subcomplete_graph(obstruction)?;
            match (strong, shape) {
                (false, Some(sc)) if !sc.proper => {
                    Verdict::wqo(sc.is_complete(), rules::REFLEXIVE_GRAPHS_STANDARD)
                }
                (false, _) => Verdict::not_wqo(ProperSubcompleteGraphs, n, rules::REFLEXIVE_GRAPHS_STANDARD),
                (true, None) => Verdict::not_wqo(
                    ProperSubcompleteGraphs,
                    n,
                    rules::REFLEXIVE_GRAPHS_STRONG_NON_SUBCOMPLETE,
                ),
                (true, Some(sc)) if sc.is_complete() => {
                    Verdict::wqo(n == 1, rules::REFLEXIVE_GRAPHS_STRONG_COMPLETE)
                }
                (true, Some(sc)) if sc.proper => {
                    Verdict::not_wqo(ProperSubcompleteGraphs, n, rules::REFLEXIVE_GRAPHS_STRONG_PROPER)
                }
                (true, Some(sc)) if sc.n == 3 => Verdict::wqo(false, rules::REFLEXIVE_GRAPHS_STRONG_N31),
                (true, Some(_)) => Verdict::open(rules::REFLEXIVE_GRAPHS_STRONG_OPEN),
            }
        }
        Digraphs => {
            let tag = if strong { rules::DIGRAPHS_STRONG } else { rules::DIGRAPHS_STANDARD };
            if is_reflexive_complete(obstruction) {
                Verdict::wqo(!strong, tag)
            } else if !obstruction.is_reflexive() {
                // Reflexive structures only map onto reflexive ones.
                Verdict::not_wqo(ProperSubcompleteDigraphs, n, tag)
            } else {
                // Both directions between distinct vertices survive any quotient.
                Verdict::not_wqo(IrreflexiveCompleteDigraphs, n, tag)
            }
        }
        ReflexiveDigraphs => {
            let shape = recognize_subcomplete_digraph(obstruction)?;
            if !strong {
                match shape {
                    Some(sc) if !sc.proper => Verdict::wqo(sc.is_complete(), rules::REFLEXIVE_DIGRAPHS_STANDARD),
                    _ => Verdict::not_wqo(ProperSubcompleteDigraphs, n, rules::REFLEXIVE_DIGRAPHS_STANDARD),
                }
            } else {
                match shape {
                    Some(sc) if sc.is_complete() => Verdict::wqo(n == 1, rules::REFLEXIVE_DIGRAPHS_STRONG),
                    // Images of bidirected graphs have no one-way pairs.
                    Some(sc) if !sc.proper => {
                        Verdict::not_wqo(BidirectedSubcompleteGraphs, n, rules::REFLEXIVE_DIGRAPHS_STRONG)
                    }
                    _ => Verdict::not_wqo(ProperSubcompleteDigraphs, n, rules::REFLEXIVE_DIGRAPHS_STRONG),
                }
            }
        }
        ReflexiveTournaments => {
            if n == 1 {
                // Every non-empty reflexive tournament maps onto a single vertex.
                Verdict::wqo(true, rules::REFLEXIVE_TOURNAMENTS_TRIVIAL)
            } else {
                Verdict::not_wqo(ParityTournaments, n, rules::REFLEXIVE_TOURNAMENTS)
            }
        }
    })
}

/// Largest member size tried by [`canonical_antichain`].
pub const WITNESS_SIZE_LIMIT: usize = 16;

/// The first `count` members of the verdict's witness family that avoid the
/// obstruction and are pairwise incomparable, each property checked with the
/// epimorphism engine. Members failing a check are skipped.
pub fn canonical_antichain(
    class: StructureClass,
    strength: Strength,
    obstruction: &Structure,
    count: usize,
) -> Result<Vec<Structure>> {
    let verdict = classify(class, strength, obstruction)?;
    let family = match (verdict.outcome, verdict.witness_family) {
        (Outcome::NotWqo, Some(f)) => f,
        _ => return Err(Error::NotAnAntichainVerdict),
    };
    let mut out: Vec<Structure> = Vec::with_capacity(count);
    let mut i = 0;
    while out.len() < count {
        let member = family.member(i)?;
        i += 1;
        if member.n() > WITNESS_SIZE_LIMIT {
            return Err(Error::VerificationFailed(format!(
                "found {} of {count} members below {WITNESS_SIZE_LIMIT} vertices",
                out.len()
            )));
        }
        if !avoids(&member, obstruction, strength) {
            continue;
        }
        let incomparable = out
            .iter()
            .all(|m| !precedes(m, &member, strength) && !precedes(&member, m, strength));
        if incomparable {
            out.push(member);
        }
    }
    Ok(out)
}

/// A strong epimorphism from the reflexive graph `h` onto the reflexive
/// complete graph on `n` vertices, sending disjoint edges of `h` onto the
/// edges of the target. `None` when `h` has too few disjoint edges.
pub fn strong_epi_onto_complete_graph(h: &Structure, n: usize) -> Result<Option<Mapping>> {
    h.validate(Kind::new(Shape::Graph, Model::Reflexive))?;
    let targets: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    cover_edges(h, n, &targets)
}

/// A strong epimorphism from `e` onto the reflexive complete digraph on `n`
/// vertices, sending `n²` disjoint edges of `e` onto its `n²` edges.
pub fn strong_epi_onto_complete_digraph(e: &Structure, n: usize) -> Result<Option<Mapping>> {
    let targets: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    cover_edges(e, n, &targets)
}

fn cover_edges(s: &Structure, n: usize, targets: &[(usize, usize)]) -> Result<Option<Mapping>> {
    if s.n() < n || (n == 0 && s.n() > 0) {
        return Ok(None);
    }
    let matching = max_disjoint_edges(s);
    if matching.len() < targets.len() {
        return Ok(None);
    }
    // Covering every target edge also hits every target vertex; spare
    // vertices go to vertex 0.
    let mut values = vec![0usize; s.n()];
    for (&(a, b), &(x, y)) in matching.pairs.iter().zip(targets) {
        values[a] = x;
        values[b] = y;
    }
    Mapping::new(n, values).map(Some)
}
