//! Bounded decompositions, vertex types and dominance of type counts.
//!
//! A decomposition splits the vertices into an empty part `E`, a reflexive
//! complete part `C` and a bounded part `F`, with every `E`–`C` pair joined
//! the same way. Relative to `F`, each vertex outside `F` has a *type*: its
//! loop together with its edges to and from each vertex of `F`. Counting the
//! types in `E` and in `C` gives a signature; when one signature dominates
//! another componentwise (on the same support), mapping type classes onto
//! type classes and fixing `F` yields a strong epimorphism.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hom::Mapping;
use crate::structure::{bit, bits, full_mask, Kind, Model, Shape, Structure};

/// A set of disjoint vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointPairs {
    pub pairs: Vec<(usize, usize)>,
}

impl DisjointPairs {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// All endpoints, ascending.
    pub fn endpoints(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs
    }
}

/// Maximum matching in a loopless undirected graph given by symmetric rows.
/// Branch and bound over the lowest available vertex, memoized on the set of
/// available vertices.
fn max_matching(adj: &[u64]) -> Vec<(usize, usize)> {
    fn best(avail: u64, adj: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
        if avail.count_ones() < 2 {
            return 0;
        }
        if let Some(&m) = memo.get(&avail) {
            return m;
        }
        let v = avail.trailing_zeros() as usize;
        let rest = avail & !bit(v);
        let mut m = best(rest, adj, memo);
        let bound = (avail.count_ones() / 2) as usize;
        for u in bits(adj[v] & rest) {
            if m == bound {
                break;
            }
            m = m.max(1 + best(rest & !bit(u), adj, memo));
        }
        memo.insert(avail, m);
        m
    }

    let n = adj.len();
    let mut memo = HashMap::new();
    let mut avail = full_mask(n);
    let mut pairs = Vec::new();
    while avail.count_ones() >= 2 {
        let target = best(avail, adj, &mut memo);
        if target == 0 {
            break;
        }
        let v = avail.trailing_zeros() as usize;
        let rest = avail & !bit(v);
        if best(rest, adj, &mut memo) == target {
            avail = rest;
            continue;
        }
        let u = bits(adj[v] & rest)
            .find(|&u| 1 + best(rest & !bit(u), adj, &mut memo) == target)
            .expect("optimal choice exists");
        pairs.push((v, u));
        avail = rest & !bit(u);
    }
    pairs
}

/// Largest set of non-loop edges with pairwise distinct endpoints.
pub fn max_disjoint_edges(d: &Structure) -> DisjointPairs {
    let adj: Vec<u64> = (0..d.n())
        .map(|v| (d.out_mask(v) | d.in_mask(v)) & !bit(v))
        .collect();
    let pairs = max_matching(&adj)
        .into_iter()
        .map(|(a, b)| if d.has_edge(a, b) { (a, b) } else { (b, a) })
        .collect();
    DisjointPairs { pairs }
}

/// Largest set of disjoint non-adjacent pairs in a reflexive graph.
pub fn max_disjoint_nonedges(g: &Structure) -> Result<DisjointPairs> {
    g.validate(Kind::new(Shape::Graph, Model::Reflexive))?;
    let n = g.n();
    let adj: Vec<u64> = (0..n)
        .map(|v| !g.out_mask(v) & full_mask(n) & !bit(v))
        .collect();
    Ok(DisjointPairs {
        pairs: max_matching(&adj),
    })
}

/// Largest set of disjoint pairs that are not joined in both directions.
pub fn max_disjoint_partial_pairs(d: &Structure) -> DisjointPairs {
    let n = d.n();
    let adj: Vec<u64> = (0..n)
        .map(|v| !(d.out_mask(v) & d.in_mask(v)) & full_mask(n) & !bit(v))
        .collect();
    DisjointPairs {
        pairs: max_matching(&adj),
    }
}

/// A split of the vertices into empty, complete and bounded parts.
///
/// The flags record whether every `E → C` (respectively `C → E`) pair is an
/// edge. They are `false` whenever either part is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub e_set: Vec<usize>,
    pub c_set: Vec<usize>,
    pub f_set: Vec<usize>,
    pub e_to_c: bool,
    pub c_to_e: bool,
}

impl Decomposition {
    /// Checks the parts against `d` and derives the cross flags.
    pub fn new(d: &Structure, e_set: &[usize], c_set: &[usize], f_set: &[usize]) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidDecomposition(m));
        let mut seen = 0u64;
        for &v in e_set.iter().chain(c_set).chain(f_set) {
            if v >= d.n() {
                return Err(Error::OutOfRange { vertex: v, n: d.n() });
            }
            if seen & bit(v) != 0 {
                return invalid(format!("vertex {v} appears twice"));
            }
            seen |= bit(v);
        }
        if seen != full_mask(d.n()) {
            return invalid("parts do not cover every vertex".into());
        }
        let sorted = |xs: &[usize]| {
            let mut v = xs.to_vec();
            v.sort_unstable();
            v
        };
        let (e_set, c_set, f_set) = (sorted(e_set), sorted(c_set), sorted(f_set));
        let e_mask = e_set.iter().fold(0u64, |m, &v| m | bit(v));
        let c_mask = c_set.iter().fold(0u64, |m, &v| m | bit(v));
        for &x in &e_set {
            if d.out_mask(x) & e_mask & !bit(x) != 0 {
                return invalid(format!("empty part has an edge at vertex {x}"));
            }
        }
        for &z in &c_set {
            if d.out_mask(z) & c_mask != c_mask {
                return invalid(format!("complete part is missing an edge at vertex {z}"));
            }
        }
        let (mut e_to_c, mut c_to_e) = (false, false);
        if !e_set.is_empty() && !c_set.is_empty() {
            let (x0, z0) = (e_set[0], c_set[0]);
            e_to_c = d.has_edge(x0, z0);
            c_to_e = d.has_edge(z0, x0);
            for &x in &e_set {
                let to = d.out_mask(x) & c_mask;
                let from = d.in_mask(x) & c_mask;
                if to != if e_to_c { c_mask } else { 0 } || from != if c_to_e { c_mask } else { 0 } {
                    return invalid(format!("non-uniform connection at vertex {x}"));
                }
            }
        }
        Ok(Decomposition {
            e_set,
            c_set,
            f_set,
            e_to_c,
            c_to_e,
        })
    }

    pub fn validate(&self, d: &Structure) -> Result<()> {
        let again = Decomposition::new(d, &self.e_set, &self.c_set, &self.f_set)?;
        if again != *self {
            return Err(Error::InvalidDecomposition("cross flags do not match".into()));
        }
        Ok(())
    }
}

/// Restricts which parts a decomposition may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PartRestriction {
    #[default]
    Any,
    /// The complete part must be empty.
    NoComplete,
    /// The empty part must be empty.
    NoEmpty,
}

/// A decomposition with `|F| <= bound`, searching `F` by size and then
/// lexicographically.
pub fn find_decomposition(d: &Structure, bound: usize) -> Option<Decomposition> {
    find_decomposition_with(d, bound, PartRestriction::Any)
}

pub fn find_decomposition_with(
    d: &Structure,
    bound: usize,
    restriction: PartRestriction,
) -> Option<Decomposition> {
    let n = d.n();
    for size in 0..=bound.min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if let Some(dec) = split_remainder(d, &combo, restriction) {
                return Some(dec);
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    None
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn split_remainder(d: &Structure, f_set: &[usize], restriction: PartRestriction) -> Option<Decomposition> {
    let f_mask = f_set.iter().fold(0u64, |m, &v| m | bit(v));
    let rest_mask = full_mask(d.n()) & !f_mask;
    let rest: Vec<usize> = bits(rest_mask).collect();
    // A remainder vertex touching another remainder vertex cannot be in E.
    let forced: Vec<usize> = rest
        .iter()
        .copied()
        .filter(|&v| (d.out_mask(v) | d.in_mask(v)) & rest_mask & !bit(v) != 0)
        .collect();
    let (e, c): (Vec<usize>, Vec<usize>) = match restriction {
        PartRestriction::Any => (
            rest.iter().copied().filter(|v| !forced.contains(v)).collect(),
            forced,
        ),
        PartRestriction::NoComplete if forced.is_empty() => (rest, Vec::new()),
        PartRestriction::NoComplete => return None,
        PartRestriction::NoEmpty => (Vec::new(), rest),
    };
    Decomposition::new(d, &e, &c, f_set).ok()
}

/// The attachment of a vertex to the bounded part: its loop and its edges to
/// and from each vertex of `F`, with bit `i` standing for the `i`-th vertex of
/// `F` in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexType {
    pub looped: bool,
    pub to_f: u64,
    pub from_f: u64,
}

impl VertexType {
    /// The structure on `F ∪ {v}` described by this type, `v` last.
    pub fn structure(&self, base: &Structure) -> Structure {
        let f = base.n();
        let mut rows: Vec<u64> = base.rows().to_vec();
        for (i, row) in rows.iter_mut().enumerate() {
            if self.from_f & bit(i) != 0 {
                *row |= bit(f);
            }
        }
        rows.push(self.to_f | if self.looped { bit(f) } else { 0 });
        Structure::from_rows(f + 1, rows)
    }
}

fn type_pattern(d: &Structure, f_set: &[usize], v: usize) -> VertexType {
    let mut t = VertexType {
        looped: d.has_loop(v),
        to_f: 0,
        from_f: 0,
    };
    for (i, &x) in f_set.iter().enumerate() {
        if d.has_edge(v, x) {
            t.to_f |= bit(i);
        }
        if d.has_edge(x, v) {
            t.from_f |= bit(i);
        }
    }
    t
}

/// The structure induced on `f_set ∪ {v}`, with `f_set` in ascending order
/// followed by `v`.
pub fn vertex_type(d: &Structure, f_set: &[usize], v: usize) -> Result<Structure> {
    let mut f = f_set.to_vec();
    f.sort_unstable();
    f.dedup();
    if let Some(&bad) = f.iter().chain(std::iter::once(&v)).find(|&&x| x >= d.n()) {
        return Err(Error::OutOfRange { vertex: bad, n: d.n() });
    }
    if f.contains(&v) {
        return Err(Error::OutOfRange { vertex: v, n: d.n() });
    }
    f.push(v);
    Ok(d.induced_ordered(&f))
}

/// All `2^(2|F| + 1)` possible types over `base`, ascending.
pub fn full_type_table(base: &Structure) -> Vec<VertexType> {
    let f = base.n();
    assert!(f <= 10, "type table too large");
    let mut out = Vec::with_capacity(1 << (2 * f + 1));
    for looped in [false, true] {
        for to_f in 0..1u64 << f {
            for from_f in 0..1u64 << f {
                out.push(VertexType { looped, to_f, from_f });
            }
        }
    }
    out.sort();
    out
}

/// Type counts of the empty and complete parts relative to a bounded part.
///
/// Only realized types are listed; absent types count zero in both parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub base: Structure,
    pub e_to_c: bool,
    pub c_to_e: bool,
    pub types: Vec<VertexType>,
    pub e_counts: Vec<usize>,
    pub c_counts: Vec<usize>,
}

impl Signature {
    pub fn type_table(&self) -> Vec<Structure> {
        self.types.iter().map(|t| t.structure(&self.base)).collect()
    }

    fn counts(&self) -> BTreeMap<VertexType, (usize, usize)> {
        self.types
            .iter()
            .zip(self.e_counts.iter().zip(&self.c_counts))
            .map(|(&t, (&e, &c))| (t, (e, c)))
            .collect()
    }

    /// The structure described by the signature: `F` first, then the empty
    /// part type by type, then the complete part type by type.
    pub fn reconstruct(&self) -> Structure {
        let f = self.base.n();
        let mut groups: Vec<(VertexType, bool)> = Vec::new();
        for (t, &k) in self.types.iter().zip(&self.e_counts) {
            groups.extend(std::iter::repeat_n((*t, false), k));
        }
        for (t, &k) in self.types.iter().zip(&self.c_counts) {
            groups.extend(std::iter::repeat_n((*t, true), k));
        }
        let n = f + groups.len();
        let mut s = Structure::edgeless(n);
        for (u, v) in self.base.edges() {
            s.insert(u, v);
        }
        for (j, &(t, in_c)) in groups.iter().enumerate() {
            let v = f + j;
            if t.looped {
                s.insert(v, v);
            }
            for i in 0..f {
                if t.to_f & bit(i) != 0 {
                    s.insert(v, i);
                }
                if t.from_f & bit(i) != 0 {
                    s.insert(i, v);
                }
            }
            for (k, &(_, other_in_c)) in groups.iter().enumerate() {
                let w = f + k;
                match (in_c, other_in_c) {
                    (true, true) => s.insert(v, w),
                    (false, true) if self.e_to_c => s.insert(v, w),
                    (true, false) if self.c_to_e => s.insert(v, w),
                    _ => {}
                }
            }
        }
        s
    }
}

/// Type counts of `dec` over `d`.
pub fn tau_signature(d: &Structure, dec: &Decomposition) -> Result<Signature> {
    dec.validate(d)?;
    let mut counts: BTreeMap<VertexType, (usize, usize)> = BTreeMap::new();
    for &v in &dec.e_set {
        counts.entry(type_pattern(d, &dec.f_set, v)).or_default().0 += 1;
    }
    for &v in &dec.c_set {
        counts.entry(type_pattern(d, &dec.f_set, v)).or_default().1 += 1;
    }
    Ok(Signature {
        base: d.induced_ordered(&dec.f_set),
        e_to_c: dec.e_to_c,
        c_to_e: dec.c_to_e,
        types: counts.keys().copied().collect(),
        e_counts: counts.values().map(|c| c.0).collect(),
        c_counts: counts.values().map(|c| c.1).collect(),
    })
}

/// Componentwise `s1 <= s2` over the shared type table.
pub fn dominates(s1: &Signature, s2: &Signature) -> Result<bool> {
    if s1.base != s2.base || s1.e_to_c != s2.e_to_c || s1.c_to_e != s2.c_to_e {
        return Err(Error::TableMismatch);
    }
    let (c1, c2) = (s1.counts(), s2.counts());
    Ok(c1.iter().all(|(t, &(e, c))| {
        let (e2, cc2) = c2.get(t).copied().unwrap_or((0, 0));
        e <= e2 && c <= cc2
    }))
}

/// The strong epimorphism `d2 → d1` that fixes the bounded part pointwise and
/// maps each type class of `d2` onto the matching class of `d1`.
///
/// Requires equal bounded parts and cross flags, `τ(d1) <= τ(d2)`, and that
/// every class non-empty in `d2` is non-empty in `d1` (a non-empty class has
/// nowhere to go otherwise). Surplus vertices go to the least vertex of their
/// target class.
pub fn epi_from_dominance(
    d1: &Structure,
    dec1: &Decomposition,
    d2: &Structure,
    dec2: &Decomposition,
) -> Result<Mapping> {
    let precondition = |m: &str| Err(Error::PreconditionViolated(m.into()));
    let s1 = tau_signature(d1, dec1)?;
    let s2 = tau_signature(d2, dec2)?;
    match dominates(&s1, &s2) {
        Err(Error::TableMismatch) => {
            return precondition("bounded parts or cross flags differ")
        }
        Err(e) => return Err(e),
        Ok(false) => return precondition("signatures are not dominated"),
        Ok(true) => {}
    }
    let c1 = s1.counts();
    for (t, &(e2, cc2)) in s2.counts().iter() {
        let (e1, cc1) = c1.get(t).copied().unwrap_or((0, 0));
        if (e2 > 0 && e1 == 0) || (cc2 > 0 && cc1 == 0) {
            return precondition("signatures have different supports");
        }
    }

    let classes = |d: &Structure, dec: &Decomposition| {
        let mut m: BTreeMap<(bool, VertexType), Vec<usize>> = BTreeMap::new();
        for (part, set) in [(false, &dec.e_set), (true, &dec.c_set)] {
            for &v in set {
                m.entry((part, type_pattern(d, &dec.f_set, v))).or_default().push(v);
            }
        }
        m
    };
    let (targets, sources) = (classes(d1, dec1), classes(d2, dec2));
    let mut values = vec![usize::MAX; d2.n()];
    for (&x2, &x1) in dec2.f_set.iter().zip(&dec1.f_set) {
        values[x2] = x1;
    }
    for (key, members) in &sources {
        let image = &targets[key];
        for (i, &v) in members.iter().enumerate() {
            values[v] = image.get(i).copied().unwrap_or(image[0]);
        }
    }
    Mapping::new(d1.n(), values)
}

/// A structure together with one of its decompositions.
#[derive(Debug, Clone)]
pub struct Decomposed {
    pub structure: Structure,
    pub decomposition: Decomposition,
}

/// A random pair `(small, large)` over a common bounded part with
/// `τ(small) <= τ(large)` on equal supports, vertices shuffled.
///
/// `max_f` bounds `|F|`; `max_part` bounds each of `|E|` and `|C|`.
pub fn random_dominating_pair<R: Rng>(rng: &mut R, max_f: usize, max_part: usize) -> (Decomposed, Decomposed) {
    let f = rng.gen_range(0..=max_f);
    let base = Structure::from_rows(
        f,
        (0..f).map(|_| rng.gen::<u64>() & full_mask(f)).collect(),
    );
    let table = full_type_table(&base);
    let (e_to_c, c_to_e) = (rng.gen(), rng.gen());

    // Choose the realized classes and their sizes in the smaller structure.
    let pick = |rng: &mut R, complete: bool| -> Vec<(VertexType, usize, usize)> {
        let size_small = rng.gen_range(0..=max_part.min(3));
        let size_large = if size_small == 0 { 0 } else { rng.gen_range(size_small..=max_part) };
        let candidates: Vec<VertexType> = table.iter().copied().filter(|t| t.looped || !complete).collect();
        let mut classes: Vec<(VertexType, usize, usize)> = Vec::new();
        for _ in 0..size_small {
            let t = *candidates.choose(rng).unwrap();
            match classes.iter_mut().find(|c| c.0 == t) {
                Some(c) => c.1 += 1,
                None => classes.push((t, 1, 0)),
            }
        }
        for c in classes.iter_mut() {
            c.2 = c.1;
        }
        for _ in size_small..size_large {
            let idx = rng.gen_range(0..classes.len());
            classes[idx].2 += 1;
        }
        classes
    };
    let e_classes = pick(rng, false);
    let c_classes = pick(rng, true);
    let has_cross = !e_classes.is_empty() && !c_classes.is_empty();

    let build = |rng: &mut R, large: bool| -> Decomposed {
        let mut counts: BTreeMap<VertexType, (usize, usize)> = BTreeMap::new();
        for &(t, small, big) in &e_classes {
            counts.entry(t).or_default().0 = if large { big } else { small };
        }
        for &(t, small, big) in &c_classes {
            counts.entry(t).or_default().1 = if large { big } else { small };
        }
        let sig = Signature {
            base: base.clone(),
            e_to_c: e_to_c && has_cross,
            c_to_e: c_to_e && has_cross,
            types: counts.keys().copied().collect(),
            e_counts: counts.values().map(|c| c.0).collect(),
            c_counts: counts.values().map(|c| c.1).collect(),
        };
        let s = sig.reconstruct();
        let e_total: usize = sig.e_counts.iter().sum();
        let c_total: usize = sig.c_counts.iter().sum();
        // Keep F in ascending order so it stays aligned with `base`.
        let mut perm: Vec<usize> = (0..s.n()).collect();
        let mut free: Vec<usize> = (0..s.n()).collect();
        free.shuffle(rng);
        let mut fs: Vec<usize> = free[..f].to_vec();
        fs.sort_unstable();
        perm[..f].copy_from_slice(&fs);
        perm[f..].copy_from_slice(&free[f..]);
        let relabeled = s.relabel(&perm);
        let map = |range: std::ops::Range<usize>| range.map(|v| perm[v]).collect::<Vec<_>>();
        let dec = Decomposition::new(
            &relabeled,
            &map(f..f + e_total),
            &map(f + e_total..f + e_total + c_total),
            &map(0..f),
        )
        .expect("reconstructed structure decomposes");
        Decomposed {
            structure: relabeled,
            decomposition: dec,
        }
    };
    let small = build(rng, false);
    let large = build(rng, true);
    (small, large)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::families::*;
    use crate::hom::is_strong_epimorphism;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive oracle: largest subset of candidate pairs with distinct endpoints.
    fn brute_disjoint(n: usize, candidate: impl Fn(usize, usize) -> bool) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| candidate(u, v))
            .collect();
        let mut best = 0;
        for m in 0u64..1 << pairs.len() {
            let mut used = 0u64;
            let mut ok = true;
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if m & (1 << i) != 0 {
                    if used & (bit(u) | bit(v)) != 0 {
                        ok = false;
                        break;
                    }
                    used |= bit(u) | bit(v);
                }
            }
            if ok {
                best = best.max(m.count_ones() as usize);
            }
        }
        best
    }

    fn assert_disjoint(p: &DisjointPairs) {
        let ends = p.endpoints();
        let mut dedup = ends.clone();
        dedup.dedup();
        assert_eq!(ends, dedup);
    }

    #[test]
    fn disjoint_edge_examples() {
        assert_eq!(max_disjoint_edges(&empty_graph(5, Model::Reflexive).unwrap()).len(), 0);
        let k4 = complete_graph(4, Model::Reflexive).unwrap();
        assert_eq!(max_disjoint_edges(&k4).len(), brute_disjoint(4, |u, v| k4.has_edge(u, v)));
        assert_eq!(max_disjoint_edges(&k4).len(), 2);
        let path = Structure::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let m = max_disjoint_edges(&path);
        assert_eq!(m.len(), 1);
        assert!(m.pairs.iter().all(|&(a, b)| path.has_edge(a, b)));
    }

    #[test]
    fn disjoint_nonedge_examples() {
        for (n, k) in [(4, 2), (6, 2), (6, 3)] {
            let g = subcomplete_graph(n, k).unwrap();
            assert_eq!(brute_disjoint(n, |u, v| !g.has_edge(u, v)), k);
            let m = max_disjoint_nonedges(&g).unwrap();
            assert_eq!(m.len(), k);
            assert_disjoint(&m);
        }
        assert_eq!(max_disjoint_nonedges(&complete_graph(5, Model::Reflexive).unwrap()).unwrap().len(), 0);
        assert_eq!(max_disjoint_nonedges(&empty_graph(4, Model::Reflexive).unwrap()).unwrap().len(), 2);
        assert!(max_disjoint_nonedges(&empty_graph(2, Model::Irreflexive).unwrap()).is_err());
    }

    #[test]
    fn disjoint_partial_pair_examples() {
        assert_eq!(max_disjoint_partial_pairs(&complete_digraph(6, Model::Reflexive).unwrap()).len(), 0);
        let n62 = subcomplete_digraph(6, 2).unwrap();
        assert_eq!(
            brute_disjoint(6, |u, v| !(n62.has_edge(u, v) && n62.has_edge(v, u))),
            2
        );
        assert_eq!(max_disjoint_partial_pairs(&n62).len(), 2);
        assert_eq!(max_disjoint_partial_pairs(&empty_graph(4, Model::Reflexive).unwrap()).len(), 2);
    }

    #[test]
    fn matching_agrees_with_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(0..=7);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.3))
                .collect();
            let d = Structure::from_edges(n, &edges).unwrap();
            let m = max_disjoint_edges(&d);
            assert_disjoint(&m);
            assert_eq!(
                m.len(),
                brute_disjoint(n, |u, v| d.has_edge(u, v) || d.has_edge(v, u)),
                "{d:?}"
            );
        }
    }

    #[test]
    fn trivial_decompositions() {
        let k5 = complete_digraph(5, Model::Reflexive).unwrap();
        let dec = find_decomposition(&k5, 0).unwrap();
        assert!(dec.e_set.is_empty() && dec.f_set.is_empty());
        assert_eq!(dec.c_set, vec![0, 1, 2, 3, 4]);

        let e5 = empty_graph(5, Model::Irreflexive).unwrap();
        let dec = find_decomposition(&e5, 0).unwrap();
        assert_eq!(dec.e_set, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn subcomplete_digraph_decomposition() {
        let d = subcomplete_digraph(6, 2).unwrap();
        // The smallest-first search finds a two-vertex bounded part.
        let dec = find_decomposition(&d, 4).unwrap();
        assert_eq!(dec.f_set, vec![0, 2]);
        assert_eq!(dec.c_set, vec![1, 3, 4, 5]);
        assert!(dec.e_set.is_empty());
        // The endpoints of both one-way pairs also form a valid bounded part.
        let alt = Decomposition::new(&d, &[], &[4, 5], &[0, 1, 2, 3]).unwrap();
        assert!(!alt.e_to_c && !alt.c_to_e);
        assert!(find_decomposition(&d, 1).is_none());
    }

    #[test]
    fn invalid_decompositions_are_rejected() {
        let d = subcomplete_digraph(4, 1).unwrap();
        assert!(Decomposition::new(&d, &[], &[0, 1, 2, 3], &[]).is_err());
        assert!(Decomposition::new(&d, &[0], &[2, 3], &[]).is_err());
        assert!(Decomposition::new(&d, &[0], &[0, 2, 3], &[1]).is_err());
        // E -> C edges must be all present or all absent.
        let mixed = Structure::from_edges(3, &[(0, 1), (1, 1), (2, 2), (1, 2), (2, 1)]).unwrap();
        assert!(Decomposition::new(&mixed, &[0], &[1, 2], &[]).is_err());
    }

    #[test]
    fn restricted_searches() {
        let k3 = complete_digraph(3, Model::Reflexive).unwrap();
        let dec = find_decomposition_with(&k3, 2, PartRestriction::NoComplete).unwrap();
        assert!(dec.c_set.is_empty());
        assert_eq!(dec.f_set.len(), 2);
        let e3 = empty_graph(3, Model::Reflexive).unwrap();
        let dec = find_decomposition_with(&e3, 2, PartRestriction::NoEmpty).unwrap();
        assert!(dec.e_set.is_empty());
        assert_eq!(dec.c_set.len(), 1);
    }

    #[test]
    fn vertex_types() {
        let loopless = Structure::edgeless(2);
        assert_eq!(vertex_type(&loopless, &[], 0).unwrap(), Structure::edgeless(1));
        let looped = Structure::edgeless(1).with_all_loops();
        assert_eq!(vertex_type(&looped, &[], 0).unwrap(), looped);

        let d = subcomplete_digraph(6, 2).unwrap();
        assert_eq!(
            vertex_type(&d, &[0, 1, 2, 3], 4).unwrap(),
            vertex_type(&d, &[0, 1, 2, 3], 5).unwrap()
        );
        assert!(vertex_type(&d, &[0, 1], 1).is_err());
        assert!(vertex_type(&d, &[0, 1], 9).is_err());

        let star = Structure::from_edges(3, &[(0, 1), (1, 0)]).unwrap();
        assert_ne!(vertex_type(&star, &[0], 1).unwrap(), vertex_type(&star, &[0], 2).unwrap());
    }

    #[test]
    fn signature_of_complete_digraph() {
        let k3 = complete_digraph(3, Model::Reflexive).unwrap();
        let dec = Decomposition::new(&k3, &[], &[0, 1, 2], &[]).unwrap();
        let sig = tau_signature(&k3, &dec).unwrap();
        assert_eq!(sig.types.len(), 1);
        assert_eq!(sig.e_counts, vec![0]);
        assert_eq!(sig.c_counts, vec![3]);
        assert_eq!(sig.type_table(), vec![Structure::edgeless(1).with_all_loops()]);
    }

    #[test]
    fn signature_reconstructs_structure() {
        let d = subcomplete_digraph(6, 2).unwrap();
        let dec = find_decomposition(&d, 4).unwrap();
        let sig = tau_signature(&d, &dec).unwrap();
        assert!(are_isomorphic(&sig.reconstruct(), &d));
    }

    #[test]
    fn dominance() {
        let base = Structure::edgeless(0);
        let t0 = VertexType { looped: false, to_f: 0, from_f: 0 };
        let t1 = VertexType { looped: true, to_f: 0, from_f: 0 };
        let sig = |e: [usize; 2], c: [usize; 2]| Signature {
            base: base.clone(),
            e_to_c: false,
            c_to_e: false,
            types: vec![t0, t1],
            e_counts: e.to_vec(),
            c_counts: c.to_vec(),
        };
        let s = sig([1, 0], [0, 0]);
        assert!(dominates(&s, &s).unwrap());
        assert!(dominates(&s, &sig([2, 1], [0, 0])).unwrap());
        assert!(!dominates(&sig([2, 0], [0, 0]), &sig([1, 5], [0, 0])).unwrap());
        let mut other = s.clone();
        other.e_to_c = true;
        assert_eq!(dominates(&s, &other), Err(Error::TableMismatch));
    }

    #[test]
    fn epimorphism_from_identical_decompositions() {
        let d = subcomplete_digraph(5, 1).unwrap();
        let dec = find_decomposition(&d, 2).unwrap();
        let phi = epi_from_dominance(&d, &dec, &d, &dec).unwrap();
        assert_eq!(phi, Mapping::identity(5));
        assert!(is_strong_epimorphism(&phi, &d, &d).unwrap());
    }

    #[test]
    fn complete_onto_smaller_complete() {
        let k2 = complete_digraph(2, Model::Reflexive).unwrap();
        let k4 = complete_digraph(4, Model::Reflexive).unwrap();
        let d1 = Decomposition::new(&k2, &[], &[0, 1], &[]).unwrap();
        let d2 = Decomposition::new(&k4, &[], &[0, 1, 2, 3], &[]).unwrap();
        let phi = epi_from_dominance(&k2, &d1, &k4, &d2).unwrap();
        assert!(is_strong_epimorphism(&phi, &k4, &k2).unwrap());
        assert!(matches!(
            epi_from_dominance(&k4, &d2, &k2, &d1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn unequal_supports_are_rejected() {
        let k2 = complete_digraph(2, Model::Reflexive).unwrap();
        let mixed = Structure::from_edges(3, &[(0, 0), (1, 1), (0, 1), (1, 0), (2, 2)]).unwrap();
        let d1 = Decomposition::new(&k2, &[], &[0, 1], &[]).unwrap();
        let d2 = Decomposition::new(&mixed, &[2], &[0, 1], &[]).unwrap();
        assert!(matches!(
            epi_from_dominance(&k2, &d1, &mixed, &d2),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn random_pairs_yield_strong_epimorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (small, large) = random_dominating_pair(&mut rng, 2, 6);
            let phi = epi_from_dominance(
                &small.structure,
                &small.decomposition,
                &large.structure,
                &large.decomposition,
            )
            .unwrap();
            assert!(is_strong_epimorphism(&phi, &large.structure, &small.structure).unwrap());
        }
    }

    #[test]
    fn full_table_size() {
        assert_eq!(full_type_table(&Structure::edgeless(0)).len(), 2);
        assert_eq!(full_type_table(&Structure::edgeless(2)).len(), 32);
    }
}
