//! Isomorph-free enumeration and exhaustive checks over small structures.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{are_isomorphic, canonical_form};
use crate::classification::{avoids, recognize_subcomplete_digraph, recognize_subcomplete_graph};
use crate::decomposition::{
    epi_from_dominance, find_decomposition_with, max_disjoint_edges, max_disjoint_partial_pairs,
    random_dominating_pair, PartRestriction,
};
use crate::error::{Error, Result};
use crate::families::{parity_tournament, subcomplete_digraph, subcomplete_graph};
use crate::hom::{homomorphic_images, is_strong_epimorphism, precedes, Strength};
use crate::structure::{bit, str_enum, Kind, Model, Shape, Structure};
use crate::text::write_text;

/// Largest `n` accepted by [`enumerate_structures`] for each shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub graphs: usize,
    pub digraphs: usize,
    pub tournaments: usize,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds {
            graphs: 7,
            digraphs: 5,
            tournaments: 7,
        }
    }
}

impl EnumerationBounds {
    pub fn limit(&self, shape: Shape) -> usize {
        match shape {
            Shape::Graph => self.graphs,
            Shape::Digraph => self.digraphs,
            Shape::Tournament => self.tournaments,
        }
    }

    fn check(&self, kind: Kind, n: usize) -> Result<()> {
        kind.check()?;
        let limit = self.limit(kind.shape);
        if n > limit {
            return Err(Error::BoundExceeded {
                what: "enumeration size",
                value: n,
                limit,
            });
        }
        Ok(())
    }
}

/// One representative per isomorphism class of `kind` structures on `n`
/// vertices, sorted by canonical form.
pub fn enumerate_structures(kind: Kind, n: usize) -> Result<Vec<Structure>> {
    enumerate_structures_with(kind, n, &EnumerationBounds::default())
}

pub fn enumerate_structures_with(kind: Kind, n: usize, bounds: &EnumerationBounds) -> Result<Vec<Structure>> {
    bounds.check(kind, n)?;
    let mut level = vec![Structure::edgeless(0)];
    for m in 1..=n {
        level = extend(kind, &level, m - 1);
    }
    Ok(level)
}

/// All structures up to `max_n` vertices, smallest first.
pub fn enumerate_up_to(kind: Kind, max_n: usize) -> Result<Vec<Structure>> {
    EnumerationBounds::default().check(kind, max_n)?;
    let mut out = vec![Structure::edgeless(0)];
    let mut level = out.clone();
    for m in 1..=max_n {
        level = extend(kind, &level, m - 1);
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

/// Adds vertex `old_n` to every parent in every admissible way and keeps one
/// copy of each canonical form.
fn extend(kind: Kind, parents: &[Structure], old_n: usize) -> Vec<Structure> {
    let v = old_n;
    let attachments: Vec<(u64, u64)> = match kind.shape {
        Shape::Graph => (0..1u64 << old_n).map(|m| (m, m)).collect(),
        Shape::Digraph => (0..1u64 << old_n)
            .flat_map(|o| (0..1u64 << old_n).map(move |i| (o, i)))
            .collect(),
        Shape::Tournament => (0..1u64 << old_n)
            .map(|o| (o, !o & ((1u64 << old_n) - 1)))
            .collect(),
    };
    let loops: &[bool] = match kind.model {
        Model::Reflexive => &[true],
        Model::Irreflexive => &[false],
        Model::Plain => &[false, true],
    };
    let found: Vec<BTreeSet<Structure>> = parents
        .par_iter()
        .map(|p| {
            let mut set = BTreeSet::new();
            for &(out, inn) in &attachments {
                for &looped in loops {
                    let mut s = Structure::edgeless(v + 1);
                    for (a, b) in p.edges() {
                        s.insert(a, b);
                    }
                    for u in 0..v {
                        if out & bit(u) != 0 {
                            s.insert(v, u);
                        }
                        if inn & bit(u) != 0 {
                            s.insert(u, v);
                        }
                    }
                    if looped {
                        s.insert(v, v);
                    }
                    set.insert(canonical_form(&s));
                }
            }
            set
        })
        .collect();
    let mut all = BTreeSet::new();
    for set in found {
        all.extend(set);
    }
    all.into_iter().collect()
}

/// Enumerated structures with at most `max_n` vertices that avoid `obstruction`.
pub fn ideal_members(kind: Kind, strength: Strength, obstruction: &Structure, max_n: usize) -> Result<Vec<Structure>> {
    let all = enumerate_up_to(kind, max_n)?;
    Ok(all
        .into_par_iter()
        .filter(|x| avoids(x, obstruction, strength))
        .collect())
}

/// Largest member size accepted by the antichain routines.
pub const ANTICHAIN_MEMBER_LIMIT: usize = 16;

fn check_members(xs: &[Structure]) -> Result<()> {
    if let Some(x) = xs.iter().find(|x| x.n() > ANTICHAIN_MEMBER_LIMIT) {
        return Err(Error::BoundExceeded {
            what: "antichain member size",
            value: x.n(),
            limit: ANTICHAIN_MEMBER_LIMIT,
        });
    }
    Ok(())
}

fn comparable(a: &Structure, b: &Structure, strength: Strength) -> bool {
    are_isomorphic(a, b) || precedes(a, b, strength) || precedes(b, a, strength)
}

/// True when no two members are isomorphic or comparable.
pub fn verify_antichain(xs: &[Structure], strength: Strength) -> Result<bool> {
    check_members(xs)?;
    let pairs: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (i + 1..xs.len()).map(move |j| (i, j)))
        .collect();
    Ok(pairs
        .par_iter()
        .all(|&(i, j)| !comparable(&xs[i], &xs[j], strength)))
}

/// Result of [`find_antichain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntichainSearch {
    pub members: Option<Vec<Structure>>,
    /// The search was heuristic, so `None` does not rule an antichain out.
    pub greedy: bool,
}

/// Largest candidate list searched exactly by [`find_antichain`].
pub const EXACT_ANTICHAIN_LIMIT: usize = 30;

/// A pairwise incomparable subset of `xs` of the requested size.
pub fn find_antichain(xs: &[Structure], strength: Strength, size: usize) -> Result<AntichainSearch> {
    check_members(xs)?;
    let m = xs.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let edges: Vec<bool> = pairs
        .par_iter()
        .map(|&(i, j)| comparable(&xs[i], &xs[j], strength))
        .collect();
    let mut conflicts = vec![Vec::new(); m];
    for (&(i, j), &c) in pairs.iter().zip(&edges) {
        if c {
            conflicts[i].push(j);
            conflicts[j].push(i);
        }
    }
    let pick = |chosen: Vec<usize>| Some(chosen.into_iter().map(|i| xs[i].clone()).collect());

    if m <= EXACT_ANTICHAIN_LIMIT {
        let masks: Vec<u64> = conflicts
            .iter()
            .map(|c| c.iter().fold(0u64, |acc, &j| acc | bit(j)))
            .collect();
        let full = (1u64 << m) - 1;
        let found = independent_set(&masks, full, size, &mut Vec::new());
        return Ok(AntichainSearch {
            members: found.and_then(pick),
            greedy: false,
        });
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (conflicts[i].len(), i));
    let mut chosen: Vec<usize> = Vec::new();
    for i in order {
        if chosen.len() == size {
            break;
        }
        if chosen.iter().all(|&j| !conflicts[i].contains(&j)) {
            chosen.push(i);
        }
    }
    Ok(AntichainSearch {
        members: if chosen.len() == size { pick(chosen) } else { None },
        greedy: true,
    })
}

fn independent_set(conflicts: &[u64], avail: u64, need: usize, chosen: &mut Vec<usize>) -> Option<Vec<usize>> {
    if need == 0 {
        return Some(chosen.clone());
    }
    if (avail.count_ones() as usize) < need {
        return None;
    }
    let v = avail.trailing_zeros() as usize;
    let rest = avail & !bit(v);
    chosen.push(v);
    if let Some(found) = independent_set(conflicts, rest & !conflicts[v], need - 1, chosen) {
        return Some(found);
    }
    chosen.pop();
    independent_set(conflicts, rest, need, chosen)
}

/// The exhaustive checks run by [`verify_proposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropositionTag {
    /// Proper standard images of `N(n, k)` are partial subcomplete graphs.
    SubcompleteGraphImages,
    /// The same for subcomplete digraphs.
    SubcompleteDigraphImages,
    /// Parity tournaments have only themselves and the trivial tournament
    /// as images.
    ParityTournamentImages,
    /// Dominating signatures yield strong epimorphisms.
    DominanceEpimorphism,
    /// Few disjoint edges give a decomposition without a complete part.
    BoundedEdgesDecompose,
    /// Few disjoint partial pairs give a decomposition without an empty part.
    BoundedPartialPairsDecompose,
    /// Both orders are partial orders on isomorphism classes.
    PartialOrder,
}

str_enum!(PropositionTag {
    SubcompleteGraphImages => "subcomplete-graph-images",
    SubcompleteDigraphImages => "subcomplete-digraph-images",
    ParityTournamentImages => "parity-tournament-images",
    DominanceEpimorphism => "dominance-epimorphism",
    BoundedEdgesDecompose => "bounded-edges-decompose",
    BoundedPartialPairsDecompose => "bounded-partial-pairs-decompose",
    PartialOrder => "partial-order",
});

impl PropositionTag {
    pub const ALL: [PropositionTag; 7] = [
        PropositionTag::SubcompleteGraphImages,
        PropositionTag::SubcompleteDigraphImages,
        PropositionTag::ParityTournamentImages,
        PropositionTag::DominanceEpimorphism,
        PropositionTag::BoundedEdgesDecompose,
        PropositionTag::BoundedPartialPairsDecompose,
        PropositionTag::PartialOrder,
    ];

    /// Short code accepted alongside the long name.
    pub fn code(self) -> &'static str {
        use PropositionTag::*;
        match self {
            SubcompleteGraphImages => "P3.2",
            SubcompleteDigraphImages => "P4.4",
            ParityTournamentImages => "P5.1",
            DominanceEpimorphism => "T2.4",
            BoundedEdgesDecompose => "C2.5",
            BoundedPartialPairsDecompose => "L4.6",
            PartialOrder => "PO",
        }
    }

    /// Accepts the long name or the short code.
    pub fn lookup(s: &str) -> Result<Self> {
        PropositionTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s || t.code().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTag(s.into()))
    }

    /// Largest bound accepted for this check.
    pub fn max_bound(self) -> usize {
        use PropositionTag::*;
        match self {
            SubcompleteGraphImages => 7,
            SubcompleteDigraphImages => 6,
            ParityTournamentImages => 7,
            DominanceEpimorphism => 12,
            BoundedEdgesDecompose | BoundedPartialPairsDecompose => EnumerationBounds::default().digraphs,
            PartialOrder => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckOutcome {
    Pass,
    Fail,
}

/// Outcome of one exhaustive check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tag: PropositionTag,
    pub bound: usize,
    pub outcome: CheckOutcome,
    /// Wall-clock seconds.
    pub elapsed: f64,
    /// The offending structure in the text format.
    pub counterexample: Option<String>,
    /// Number of instances examined.
    pub checked: usize,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcome == CheckOutcome::Pass
    }
}

/// Randomized checks take their pairs from a generator seeded with this.
pub const DEFAULT_SEED: u64 = 0;

/// Runs the check named by `tag` over every instance up to `bound`.
pub fn verify_proposition(tag: PropositionTag, bound: usize, seed: u64) -> Result<Report> {
    if bound > tag.max_bound() {
        return Err(Error::BoundExceeded {
            what: "proposition bound",
            value: bound,
            limit: tag.max_bound(),
        });
    }
    let start = Instant::now();
    let (checked, failure) = run_check(tag, bound, seed)?;
    Ok(Report {
        tag,
        bound,
        outcome: if failure.is_some() { CheckOutcome::Fail } else { CheckOutcome::Pass },
        elapsed: start.elapsed().as_secs_f64(),
        counterexample: failure,
        checked,
    })
}

type CheckResult = Result<(usize, Option<String>)>;

fn first_failure<T: Sync>(items: &[T], fail: impl Fn(&T) -> Result<Option<String>> + Sync + Send) -> CheckResult {
    let results: Vec<Result<Option<String>>> = items.par_iter().map(&fail).collect();
    for r in results {
        if let Some(c) = r? {
            return Ok((items.len(), Some(c)));
        }
    }
    Ok((items.len(), None))
}

fn run_check(tag: PropositionTag, bound: usize, seed: u64) -> CheckResult {
    use PropositionTag::*;
    let reflexive_graph = Kind::new(Shape::Graph, Model::Reflexive);
    let reflexive_digraph = Kind::new(Shape::Digraph, Model::Reflexive);
    let plain_digraph = Kind::new(Shape::Digraph, Model::Plain);
    match tag {
        SubcompleteGraphImages | SubcompleteDigraphImages => {
            let graphs = tag == SubcompleteGraphImages;
            let kind = if graphs { reflexive_graph } else { reflexive_digraph };
            let mut instances = Vec::new();
            for n in 0..=bound {
                for k in 0..=n / 2 {
                    instances.push(if graphs { subcomplete_graph(n, k)? } else { subcomplete_digraph(n, k)? });
                }
            }
            first_failure(&instances, |g| {
                for img in homomorphic_images(g, kind, Strength::Standard)? {
                    if are_isomorphic(&img, g) {
                        continue;
                    }
                    let shape = if graphs {
                        recognize_subcomplete_graph(&img)?
                    } else {
                        recognize_subcomplete_digraph(&img)?
                    };
                    if !matches!(shape, Some(sc) if 2 * sc.k < sc.n) {
                        return Ok(Some(write_text(kind, &img)));
                    }
                }
                Ok(None)
            })
        }
        ParityTournamentImages => {
            let kind = Kind::new(Shape::Tournament, Model::Reflexive);
            let ms: Vec<usize> = (3..=bound).step_by(2).collect();
            first_failure(&ms, |&m| {
                let t = parity_tournament(m)?;
                let expected: BTreeSet<Structure> =
                    [canonical_form(&t), Structure::edgeless(1).with_all_loops()].into();
                let found: BTreeSet<Structure> = homomorphic_images(&t, kind, Strength::Standard)?.into_iter().collect();
                Ok((found != expected).then(|| write_text(kind, &t)))
            })
        }
        DominanceEpimorphism => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pairs: Vec<_> = (0..100).map(|_| random_dominating_pair(&mut rng, 2, bound)).collect();
            first_failure(&pairs, |(small, large)| {
                let phi = epi_from_dominance(
                    &small.structure,
                    &small.decomposition,
                    &large.structure,
                    &large.decomposition,
                )?;
                let ok = is_strong_epimorphism(&phi, &large.structure, &small.structure)?;
                Ok((!ok).then(|| write_text(plain_digraph, &large.structure)))
            })
        }
        BoundedEdgesDecompose => {
            let xs = enumerate_up_to(plain_digraph, bound)?;
            let xs: Vec<Structure> = xs.into_iter().filter(|d| max_disjoint_edges(d).len() <= 2).collect();
            first_failure(&xs, |d| {
                let ok = find_decomposition_with(d, 4, PartRestriction::NoComplete).is_some();
                Ok((!ok).then(|| write_text(plain_digraph, d)))
            })
        }
        BoundedPartialPairsDecompose => {
            let xs = enumerate_up_to(reflexive_digraph, bound)?;
            let xs: Vec<Structure> = xs
                .into_iter()
                .filter(|d| max_disjoint_partial_pairs(d).len() <= 2)
                .collect();
            first_failure(&xs, |d| {
                let ok = find_decomposition_with(d, 4, PartRestriction::NoEmpty).is_some();
                Ok((!ok).then(|| write_text(reflexive_digraph, d)))
            })
        }
        PartialOrder => {
            let xs = enumerate_up_to(plain_digraph, bound)?;
            for strength in Strength::ALL {
                if let Some(bad) = partial_order_violation(&xs, strength) {
                    return Ok((xs.len(), Some(write_text(plain_digraph, &bad))));
                }
            }
            Ok((xs.len(), None))
        }
    }
}

/// A structure witnessing a failure of reflexivity, antisymmetry or
/// transitivity of `precedes` over pairwise non-isomorphic `xs`.
pub fn partial_order_violation(xs: &[Structure], strength: Strength) -> Option<Structure> {
    let m = xs.len();
    let le: Vec<Vec<bool>> = (0..m)
        .into_par_iter()
        .map(|i| (0..m).map(|j| precedes(&xs[i], &xs[j], strength)).collect())
        .collect();
    for i in 0..m {
        if !le[i][i] {
            return Some(xs[i].clone());
        }
        for j in 0..m {
            if i != j && le[i][j] && le[j][i] {
                return Some(xs[i].clone());
            }
            if le[i][j] && (0..m).any(|k| le[j][k] && !le[i][k]) {
                return Some(xs[i].clone());
            }
        }
    }
    None
}
