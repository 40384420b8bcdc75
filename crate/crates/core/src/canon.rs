//! Canonical labelling by individualization and refinement.
//!
//! The search refines an ordered vertex partition to an equitable one, then
//! branches on the members of the first non-singleton cell. Every leaf is a
//! discrete partition, read as a relabelling; the canonical form is the leaf
//! whose relabelled adjacency rows are lexicographically least. Branches that
//! differ by a transposition automorphism of the current node are explored
//! once.

use crate::structure::{bit, Structure};

/// The canonical representative of the isomorphism class of `s`.
pub fn canonical_form(s: &Structure) -> Structure {
    let perm = canonical_labeling(s, &vec![0; s.n()]);
    s.relabel(&perm)
}

/// A relabelling `perm` (vertex `v` goes to `perm[v]`) such that
/// `s.relabel(&perm)` is canonical among relabellings respecting `colors`.
///
/// Vertices of smaller colour receive smaller labels.
pub fn canonical_labeling(s: &Structure, colors: &[usize]) -> Vec<usize> {
    assert_eq!(colors.len(), s.n());
    if s.n() == 0 {
        return Vec::new();
    }
    let mut search = Search {
        s,
        ins: (0..s.n()).map(|v| s.in_mask(v)).collect(),
        best: None,
    };
    let initial = rank(colors.iter().map(|&c| vec![c as u32]).collect());
    search.run(initial);
    search.best.expect("search visits at least one leaf").1
}

/// Isomorphism test; cheap invariants first, then canonical forms.
pub fn are_isomorphic(a: &Structure, b: &Structure) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() || a.loop_count() != b.loop_count() {
        return false;
    }
    let degrees = |s: &Structure| {
        let mut d: Vec<(u32, u32, bool)> = (0..s.n())
            .map(|v| {
                (
                    s.out_mask(v).count_ones(),
                    s.in_mask(v).count_ones(),
                    s.has_loop(v),
                )
            })
            .collect();
        d.sort_unstable();
        d
    };
    if degrees(a) != degrees(b) {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

struct Search<'a> {
    s: &'a Structure,
    ins: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, colors: Vec<usize>) {
        let colors = self.refine(colors);
        let n = self.s.n();
        let cells = colors.iter().max().map_or(0, |&c| c + 1);
        if cells == n {
            self.leaf(colors);
            return;
        }
        let mut sizes = vec![0usize; cells];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = sizes.iter().position(|&k| k > 1).unwrap();
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if explored.iter().any(|&u| self.swap_is_automorphism(u, v)) {
                continue;
            }
            let child = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| if c > target || (c == target && u != v) { c + 1 } else { c })
                .collect();
            self.run(child);
            explored.push(v);
        }
    }

    fn leaf(&mut self, perm: Vec<usize>) {
        let code = self.s.relabel(&perm).rows().to_vec();
        match &self.best {
            Some((best, _)) if *best <= code => {}
            _ => self.best = Some((code, perm)),
        }
    }

    /// Refines `colors` until it is equitable with respect to out- and
    /// in-neighbour counts per cell.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let n = self.s.n();
        let mut cells = colors.iter().max().map_or(0, |&c| c + 1);
        loop {
            let mut masks = vec![0u64; cells];
            for (v, &c) in colors.iter().enumerate() {
                masks[c] |= bit(v);
            }
            let keys: Vec<Vec<u32>> = (0..n)
                .map(|v| {
                    let out = self.s.out_mask(v);
                    let inn = self.ins[v];
                    let mut key = Vec::with_capacity(2 + 2 * cells);
                    key.push(colors[v] as u32);
                    key.push(self.s.has_loop(v) as u32);
                    key.extend(masks.iter().map(|m| (out & m).count_ones()));
                    key.extend(masks.iter().map(|m| (inn & m).count_ones()));
                    key
                })
                .collect();
            let next = rank(keys);
            let next_cells = next.iter().max().map_or(0, |&c| c + 1);
            colors = next;
            if next_cells == cells {
                return colors;
            }
            cells = next_cells;
        }
    }

    fn swap_is_automorphism(&self, u: usize, v: usize) -> bool {
        let s = self.s;
        let others = !(bit(u) | bit(v));
        s.has_loop(u) == s.has_loop(v)
            && s.has_edge(u, v) == s.has_edge(v, u)
            && (s.out_mask(u) & others) == (s.out_mask(v) & others)
            && (self.ins[u] & others) == (self.ins[v] & others)
    }
}

/// Replaces each key by its rank among the distinct keys.
fn rank<K: Ord + Clone>(keys: Vec<K>) -> Vec<usize> {
    let mut distinct = keys.clone();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == used.len() {
                out.push(prefix.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    go(prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    fn brute_isomorphic(a: &Structure, b: &Structure) -> bool {
        a.n() == b.n() && all_perms(a.n()).iter().any(|p| a.relabel(p) == *b)
    }

    fn all_structures(n: usize) -> Vec<Structure> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
        (0u64..1 << pairs.len())
            .map(|m| {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m & (1 << i) != 0)
                    .map(|(_, &p)| p)
                    .collect();
                Structure::from_edges(n, &edges).unwrap()
            })
            .collect()
    }

    #[test]
    fn empty_structure() {
        let e = Structure::edgeless(0);
        assert_eq!(canonical_form(&e), e);
    }

    #[test]
    fn canonical_iff_isomorphic_on_three_vertices() {
        let all = all_structures(3);
        for a in &all {
            let ca = canonical_form(a);
            assert_eq!(canonical_form(&ca), ca);
            for b in all.iter().step_by(7) {
                assert_eq!(ca == canonical_form(b), brute_isomorphic(a, b), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn permuted_complete_graphs_agree() {
        let k = Structure::from_edges(
            6,
            &(0..6)
                .flat_map(|u| (0..6).filter(move |&v| v != u).map(move |v| (u, v)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(canonical_form(&k), k);
    }

    #[test]
    fn colored_labeling_puts_low_colours_first() {
        // A directed path 0 -> 1 -> 2 with vertex 2 coloured first.
        let s = Structure::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let perm = canonical_labeling(&s, &[1, 1, 0]);
        assert_eq!(perm[2], 0);
    }

    #[test]
    fn cycle_and_path_differ() {
        let c3 = Structure::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let p3 = Structure::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!are_isomorphic(&c3, &p3));
        assert!(are_isomorphic(&c3, &c3.relabel(&[1, 2, 0])));
    }
}
