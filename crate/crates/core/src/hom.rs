//! Standard and strong epimorphisms, and the two homomorphic image orders.
//!
//! `A ⪯ B` holds when some epimorphism maps `B` onto `A`. For the strong
//! order the epimorphism must also cover every edge of `A`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::structure::{bit, bits, full_mask, str_enum, Kind, Model, Shape, Structure};

/// Largest source size accepted by the exhaustive routines.
pub const EXHAUSTIVE_LIMIT: usize = 7;

/// Largest number of free edge choices expanded by [`homomorphic_images`]
/// under the standard order.
pub const COMPLETION_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    Standard,
    Strong,
}

str_enum!(Strength {
    Standard => "standard",
    Strong => "strong",
});

impl Strength {
    pub const ALL: [Strength; 2] = [Strength::Standard, Strength::Strong];
}

/// A total function from `0..source_size` to `0..target_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mapping {
    target_size: usize,
    values: Vec<usize>,
}

impl Mapping {
    pub fn new(target_size: usize, values: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v >= target_size) {
            return Err(Error::OutOfRange {
                vertex: bad,
                n: target_size,
            });
        }
        Ok(Mapping {
            target_size,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        Mapping {
            target_size: n,
            values: (0..n).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.values[v]
    }

    pub fn is_surjective(&self) -> bool {
        let hit = self.values.iter().fold(0u64, |m, &v| m | bit(v));
        self.target_size <= 64 && hit == full_mask(self.target_size)
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}->{v}")?;
        }
        Ok(())
    }
}

fn check_source(phi: &Mapping, s: &Structure) -> Result<()> {
    if phi.source_size() != s.n() {
        return Err(Error::SizeMismatch {
            expected: s.n(),
            found: phi.source_size(),
        });
    }
    Ok(())
}

fn check_sizes(phi: &Mapping, s: &Structure, t: &Structure) -> Result<()> {
    check_source(phi, s)?;
    if phi.target_size() != t.n() {
        return Err(Error::SizeMismatch {
            expected: t.n(),
            found: phi.target_size(),
        });
    }
    Ok(())
}

/// The image `φ(E(S))`, as a structure on the target vertex range.
pub fn image_edges(phi: &Mapping, s: &Structure) -> Result<Structure> {
    check_source(phi, s)?;
    let mut rows = vec![0u64; phi.target_size()];
    for (u, v) in s.edges() {
        rows[phi.apply(u)] |= bit(phi.apply(v));
    }
    Ok(Structure::from_rows(phi.target_size(), rows))
}

/// Every edge of `s` maps to an edge of `t`.
pub fn is_homomorphism(phi: &Mapping, s: &Structure, t: &Structure) -> Result<bool> {
    check_sizes(phi, s, t)?;
    Ok(s.edges().all(|(u, v)| t.has_edge(phi.apply(u), phi.apply(v))))
}

pub fn is_epimorphism(phi: &Mapping, s: &Structure, t: &Structure) -> Result<bool> {
    Ok(is_homomorphism(phi, s, t)? && phi.is_surjective())
}

/// Surjective, and the image of `E(s)` is exactly `E(t)`.
pub fn is_strong_epimorphism(phi: &Mapping, s: &Structure, t: &Structure) -> Result<bool> {
    check_sizes(phi, s, t)?;
    Ok(phi.is_surjective() && image_edges(phi, s)? == *t)
}

pub fn is_epimorphism_of(strength: Strength, phi: &Mapping, s: &Structure, t: &Structure) -> Result<bool> {
    match strength {
        Strength::Standard => is_epimorphism(phi, s, t),
        Strength::Strong => is_strong_epimorphism(phi, s, t),
    }
}

/// Searches for an epimorphism `source → target`.
///
/// Source vertices are assigned in descending degree order, candidate values
/// in ascending order, so the witness returned is deterministic.
pub fn find_epimorphism(source: &Structure, target: &Structure, strength: Strength) -> Option<Mapping> {
    let (sn, tn) = (source.n(), target.n());
    if tn > sn {
        return None;
    }
    if tn == 0 {
        return (sn == 0).then(|| Mapping::identity(0));
    }
    let strong = strength == Strength::Strong;
    if strong && target.edge_count() > source.edge_count() {
        return None;
    }

    let mut order: Vec<usize> = (0..sn).collect();
    let src_in: Vec<u64> = (0..sn).map(|v| source.in_mask(v)).collect();
    let degree = |v: usize| {
        let loopless = !bit(v);
        (source.out_mask(v) & loopless).count_ones() + (src_in[v] & loopless).count_ones()
    };
    order.sort_by_key(|&v| std::cmp::Reverse(degree(v)));

    let tgt_loops = (0..tn).filter(|&a| target.has_loop(a)).fold(0u64, |m, a| m | bit(a));
    let domains: Vec<u64> = (0..sn)
        .map(|v| if source.has_loop(v) { tgt_loops } else { full_mask(tn) })
        .collect();
    if domains.contains(&0) {
        return None;
    }

    let mut search = EpiSearch {
        src: source,
        tgt: target,
        strong,
        order,
        src_in,
        tgt_in: (0..tn).map(|a| target.in_mask(a)).collect(),
        values: vec![usize::MAX; sn],
        cover: vec![0; tn],
        uncovered: tn,
        edge_cover: vec![0; if strong { tn * tn } else { 0 }],
        uncovered_edges: target.edge_count(),
        assigned_src_edges: 0,
        total_src_edges: source.edge_count(),
    };
    if search.dfs(0, &domains) {
        Some(Mapping {
            target_size: tn,
            values: search.values,
        })
    } else {
        None
    }
}

struct EpiSearch<'a> {
    src: &'a Structure,
    tgt: &'a Structure,
    strong: bool,
    order: Vec<usize>,
    src_in: Vec<u64>,
    tgt_in: Vec<u64>,
    values: Vec<usize>,
    cover: Vec<u32>,
    uncovered: usize,
    edge_cover: Vec<u32>,
    uncovered_edges: usize,
    assigned_src_edges: usize,
    total_src_edges: usize,
}

impl EpiSearch<'_> {
    fn dfs(&mut self, depth: usize, domains: &[u64]) -> bool {
        let n = self.order.len();
        if depth == n {
            return self.uncovered == 0 && (!self.strong || self.uncovered_edges == 0);
        }
        let v = self.order[depth];
        let remaining = n - depth - 1;
        let mut next = domains.to_vec();
        for a in bits(domains[v]) {
            // Forward check: restrict the domains of unassigned vertices.
            next.copy_from_slice(domains);
            let out_a = self.tgt.out_mask(a);
            let in_a = self.tgt_in[a];
            let mut consistent = true;
            let mut reachable = 0u64;
            for &w in &self.order[depth + 1..] {
                if self.src.has_edge(v, w) {
                    next[w] &= out_a;
                }
                if self.src_in[v] & bit(w) != 0 {
                    next[w] &= in_a;
                }
                if next[w] == 0 {
                    consistent = false;
                    break;
                }
                reachable |= next[w];
            }
            if !consistent {
                continue;
            }

            self.assign(v, a, 1);
            let uncovered_mask = self
                .cover
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == 0)
                .fold(0u64, |m, (b, _)| m | bit(b));
            let feasible = self.uncovered <= remaining
                && uncovered_mask & !reachable == 0
                && (!self.strong
                    || self.uncovered_edges <= self.total_src_edges - self.assigned_src_edges);
            if feasible && self.dfs(depth + 1, &next) {
                return true;
            }
            self.assign(v, a, -1);
        }
        false
    }

    /// Records (`delta = 1`) or retracts (`delta = -1`) the assignment `v ↦ a`.
    fn assign(&mut self, v: usize, a: usize, delta: i32) {
        if delta > 0 {
            self.values[v] = a;
        }
        let before = self.cover[a];
        self.cover[a] = (before as i32 + delta) as u32;
        match (before, self.cover[a]) {
            (0, 1) => self.uncovered -= 1,
            (1, 0) => self.uncovered += 1,
            _ => {}
        }
        if self.strong {
            let tn = self.tgt.n();
            // Edges whose other endpoint is already assigned (or is v itself).
            let assigned_nbrs = self.src.out_mask(v) | self.src_in[v];
            for w in bits(assigned_nbrs) {
                if w != v && self.values[w] == usize::MAX {
                    continue;
                }
                let b = self.values[w];
                let touch = |x: usize, y: usize, this: &mut Self| {
                    let slot = &mut this.edge_cover[x * tn + y];
                    let old = *slot;
                    *slot = (old as i32 + delta) as u32;
                    match (old, *slot) {
                        (0, 1) => this.uncovered_edges -= 1,
                        (1, 0) => this.uncovered_edges += 1,
                        _ => {}
                    }
                    if delta > 0 {
                        this.assigned_src_edges += 1;
                    } else {
                        this.assigned_src_edges -= 1;
                    }
                };
                if self.src.has_edge(v, w) {
                    touch(a, b, self);
                }
                if w != v && self.src.has_edge(w, v) {
                    touch(b, a, self);
                }
            }
        }
        if delta < 0 {
            self.values[v] = usize::MAX;
        }
    }
}

/// Every epimorphism `source → target`, by exhaustive iteration over all
/// `target.n()^source.n()` maps, in lexicographic order of value vectors.
pub fn enumerate_epimorphisms(
    source: &Structure,
    target: &Structure,
    strength: Strength,
) -> Result<Vec<Mapping>> {
    Ok(exhaustive_epimorphisms(source, target, strength)?.collect())
}

/// Lazy form of [`enumerate_epimorphisms`].
pub fn exhaustive_epimorphisms<'a>(
    source: &'a Structure,
    target: &'a Structure,
    strength: Strength,
) -> Result<impl Iterator<Item = Mapping> + 'a> {
    if source.n() > EXHAUSTIVE_LIMIT {
        return Err(Error::BoundExceeded {
            what: "source size",
            value: source.n(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let (sn, tn) = (source.n(), target.n());
    let edges: Vec<(usize, usize)> = source.edges().collect();
    let target_rows = target.rows().to_vec();
    let mut current = vec![0usize; sn];
    let mut image = vec![0u64; tn];
    let mut done = tn == 0 && sn > 0;
    Ok(std::iter::from_fn(move || {
        while !done {
            let hit = current.iter().fold(0u64, |m, &v| m | bit(v));
            let mut accept = hit == full_mask(tn);
            if accept {
                image.iter_mut().for_each(|r| *r = 0);
                for &(u, v) in &edges {
                    let (a, b) = (current[u], current[v]);
                    if target_rows[a] & bit(b) == 0 {
                        accept = false;
                        break;
                    }
                    image[a] |= bit(b);
                }
                accept &= strength == Strength::Standard || image == target_rows;
            }
            let found = accept.then(|| current.clone());
            // Advance the odometer.
            done = true;
            for slot in current.iter_mut().rev() {
                *slot += 1;
                if *slot < tn {
                    done = false;
                    break;
                }
                *slot = 0;
            }
            if let Some(values) = found {
                return Some(Mapping {
                    target_size: tn,
                    values,
                });
            }
        }
        None
    }))
}

/// `a ⪯ b`: some epimorphism maps `b` onto `a`.
pub fn precedes(a: &Structure, b: &Structure, strength: Strength) -> bool {
    find_epimorphism(b, a, strength).is_some()
}

/// All homomorphic images of `s` inside the class described by `kind`, as
/// canonical forms in ascending order.
///
/// Strong images are the quotients of `s` that belong to the class. Standard
/// images are the members of the class containing some quotient of `s` as a
/// spanning substructure.
pub fn homomorphic_images(s: &Structure, kind: Kind, strength: Strength) -> Result<Vec<Structure>> {
    kind.check()?;
    if s.n() > EXHAUSTIVE_LIMIT {
        return Err(Error::BoundExceeded {
            what: "structure size",
            value: s.n(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let mut quotients = BTreeSet::new();
    for_each_partition(s.n(), &mut |blocks, count| {
        let phi = Mapping {
            target_size: count,
            values: blocks.to_vec(),
        };
        quotients.insert(canonical_form(&image_edges(&phi, s).unwrap()));
    });

    let mut images = BTreeSet::new();
    for q in &quotients {
        match strength {
            Strength::Strong => {
                if q.validate(kind).is_ok() {
                    images.insert(q.clone());
                }
            }
            Strength::Standard => {
                for t in completions(q, kind)? {
                    images.insert(canonical_form(&t));
                }
            }
        }
    }
    Ok(images.into_iter().collect())
}

/// Calls `f` with every set partition of `0..n` as a restricted growth string.
pub(crate) fn for_each_partition(n: usize, f: &mut dyn FnMut(&[usize], usize)) {
    fn go(i: usize, used: usize, blocks: &mut Vec<usize>, f: &mut dyn FnMut(&[usize], usize)) {
        if i == blocks.len() {
            f(blocks, used);
            return;
        }
        for b in 0..=used {
            blocks[i] = b;
            go(i + 1, used.max(b + 1), blocks, f);
        }
    }
    let mut blocks = vec![0; n];
    go(0, 0, &mut blocks, f);
}

/// Every member of `kind` on the vertices of `q` whose edge set contains `E(q)`.
fn completions(q: &Structure, kind: Kind) -> Result<Vec<Structure>> {
    let m = q.n();
    let mut base = q.clone();
    if kind.model == Model::Reflexive {
        base = base.with_all_loops();
    }
    if kind.model == Model::Irreflexive && !base.is_irreflexive() {
        return Ok(Vec::new());
    }
    if kind.shape == Shape::Graph {
        base = Structure::from_rows(
            m,
            (0..m).map(|v| base.out_mask(v) | base.in_mask(v)).collect(),
        );
    }

    // Each free choice adds one set of edges when its bit is on; tournament
    // pairs with no edge instead pick an orientation.
    let mut toggles: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut orient: Vec<(usize, usize)> = Vec::new();
    if kind.model == Model::Plain {
        for v in (0..m).filter(|&v| !base.has_loop(v)) {
            toggles.push(vec![(v, v)]);
        }
    }
    for u in 0..m {
        for v in u + 1..m {
            let (fwd, back) = (base.has_edge(u, v), base.has_edge(v, u));
            match kind.shape {
                Shape::Graph if !fwd => toggles.push(vec![(u, v), (v, u)]),
                Shape::Digraph => {
                    if !fwd {
                        toggles.push(vec![(u, v)]);
                    }
                    if !back {
                        toggles.push(vec![(v, u)]);
                    }
                }
                Shape::Tournament if fwd && back => return Ok(Vec::new()),
                Shape::Tournament if !fwd && !back => orient.push((u, v)),
                _ => {}
            }
        }
    }
    let free = toggles.len() + orient.len();
    if free > COMPLETION_LIMIT {
        return Err(Error::BoundExceeded {
            what: "free completion choices",
            value: free,
            limit: COMPLETION_LIMIT,
        });
    }
    let mut out = Vec::with_capacity(1 << free);
    for choice in 0u32..1 << free {
        let mut t = base.clone();
        for (i, edges) in toggles.iter().enumerate() {
            if choice & (1 << i) != 0 {
                for &(u, v) in edges {
                    t.insert(u, v);
                }
            }
        }
        for (j, &(u, v)) in orient.iter().enumerate() {
            if choice & (1 << (toggles.len() + j)) != 0 {
                t.insert(u, v);
            } else {
                t.insert(v, u);
            }
        }
        debug_assert!(t.validate(kind).is_ok());
        out.push(t);
    }
    Ok(out)
}
