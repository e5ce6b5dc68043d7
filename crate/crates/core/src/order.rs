//! The closure order on orbits, from subexpressions of reduced decompositions.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use thiserror::Error;

use crate::kgb::{KgbGraph, OrbitId, ReducedDecomposition, RootStatus};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("not a reduced decomposition: {0}")]
    Malformed(String),
}

/// Final terms of all subexpressions of `dec`, as a bit set over orbit ids.
///
/// At a step with generator `s` every reached orbit `u` may stay, move to
/// `m(s).u` if `s` is an ascent for `u`, or move to `s.u` if `s` is
/// noncompact non-cancellative for `u`.
pub fn subexpression_final_terms(
    graph: &KgbGraph,
    dec: &ReducedDecomposition,
) -> Result<FixedBitSet, OrderError> {
    if !graph.is_reduced_decomposition(dec) {
        return Err(OrderError::Malformed(format!(
            "orbits {:?} generators {:?}",
            dec.orbits, dec.generators
        )));
    }
    Ok(final_terms_unchecked(graph, dec.start(), &dec.generators))
}

pub(crate) fn final_terms_unchecked(graph: &KgbGraph, start: OrbitId, word: &[usize]) -> FixedBitSet {
    let n = graph.len();
    let mut cur = FixedBitSet::with_capacity(n);
    cur.insert(start.index());
    for &s in word {
        let mut next = cur.clone();
        for u in cur.ones() {
            let u = OrbitId::from(u);
            let st = graph.status(u, s);
            if st.is_ascent() {
                next.insert(graph.cayley(u, s).index());
            }
            if st == RootStatus::NoncompactImaginaryNoncanc {
                next.insert(graph.cross(u, s).index());
            }
        }
        cur = next;
    }
    cur
}

/// Dense closure order on the orbit set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoset {
    // below[v] = {u : u <= v}
    below: Vec<FixedBitSet>,
    lengths: Vec<usize>,
}

impl OrbitPoset {
    /// Lower cones from the canonical reduced decomposition of each orbit.
    pub fn build(graph: &KgbGraph) -> Self {
        let below = graph
            .orbit_ids()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|v| {
                let dec = graph.reduced_decomposition(v);
                final_terms_unchecked(graph, dec.start(), &dec.generators)
            })
            .collect();
        OrbitPoset { below, lengths: graph.orbit_ids().map(|v| graph.length(v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// `u <= v`
    pub fn leq(&self, u: OrbitId, v: OrbitId) -> bool {
        self.below[v.index()].contains(u.index())
    }

    pub fn lt(&self, u: OrbitId, v: OrbitId) -> bool {
        u != v && self.leq(u, v)
    }

    pub fn lower_cone(&self, v: OrbitId) -> &FixedBitSet {
        &self.below[v.index()]
    }

    pub fn lower_set(&self, v: OrbitId) -> BTreeSet<OrbitId> {
        self.below[v.index()].ones().map(OrbitId::from).collect()
    }

    /// Covering pairs `(u, v)`, `u < v` with nothing strictly between, sorted.
    pub fn covers(&self) -> Vec<(OrbitId, OrbitId)> {
        let n = self.len();
        let mut out = Vec::new();
        for v in 0..n {
            let strict: Vec<usize> = self.below[v].ones().filter(|&u| u != v).collect();
            for &u in &strict {
                let between = strict.iter().any(|&c| c != u && self.below[c].contains(u));
                if !between {
                    out.push((OrbitId::from(u), OrbitId::from(v)));
                }
            }
        }
        out.sort();
        out
    }

    pub fn minimal_elements(&self) -> Vec<OrbitId> {
        (0..self.len())
            .filter(|&v| self.below[v].count_ones(..) == 1)
            .map(OrbitId::from)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<OrbitId> {
        (0..self.len())
            .filter(|&v| !(0..self.len()).any(|w| w != v && self.below[w].contains(v)))
            .map(OrbitId::from)
            .collect()
    }

    /// The unique maximum, if there is one.
    pub fn maximum(&self) -> Option<OrbitId> {
        (0..self.len())
            .find(|&v| self.below[v].count_ones(..) == self.len())
            .map(OrbitId::from)
    }

    /// Maximal members of `set`.
    pub fn max_of(&self, set: &BTreeSet<OrbitId>) -> BTreeSet<OrbitId> {
        set.iter()
            .copied()
            .filter(|&v| !set.iter().any(|&w| self.lt(v, w)))
            .collect()
    }

    /// Violations of reflexivity, antisymmetry, transitivity and strict
    /// length monotonicity.
    pub fn check_partial_order(&self) -> Vec<String> {
        let n = self.len();
        let mut out = Vec::new();
        for v in 0..n {
            if !self.below[v].contains(v) {
                out.push(format!("{v} is not <= itself"));
            }
            for u in self.below[v].ones() {
                if u == v {
                    continue;
                }
                if self.below[u].contains(v) {
                    out.push(format!("{u} <= {v} <= {u}"));
                }
                if self.lengths[u] >= self.lengths[v] {
                    out.push(format!("{u} < {v} but lengths {} >= {}", self.lengths[u], self.lengths[v]));
                }
                if !self.below[u].is_subset(&self.below[v]) {
                    out.push(format!("{u} <= {v} but the cone of {u} is not inside the cone of {v}"));
                }
            }
        }
        out
    }
}

/// For every orbit, compares the final-term sets over all of its reduced
/// decompositions with the poset. Returns mismatches.
pub fn check_decomposition_independence(graph: &KgbGraph, poset: &OrbitPoset) -> Vec<String> {
    let ids: Vec<OrbitId> = graph.orbit_ids().collect();
    let mut out: Vec<String> = ids
        .par_iter()
        .flat_map_iter(|&v| {
            graph
                .all_reduced_decompositions(v)
                .into_iter()
                .filter_map(move |dec| {
                    let terms = final_terms_unchecked(graph, dec.start(), &dec.generators);
                    (terms != *poset.lower_cone(v)).then(|| {
                        format!("orbit {v}: decomposition {:?} gives a different lower set", dec.generators)
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    out
}

/// Checks that `m(s).v` is the unique maximum of `p(s, v)` for every `(v, s)`.
pub fn check_cayley_maximum(graph: &KgbGraph, poset: &OrbitPoset) -> Vec<String> {
    let mut out = Vec::new();
    for v in graph.orbit_ids() {
        for s in 0..graph.rank() {
            let p = graph.p_set(s, v);
            let top = graph.cayley(v, s);
            if !p.contains(&top) || p.iter().any(|&u| !poset.leq(u, top)) {
                out.push(format!("orbit {v} s{}: m(s).v = {top} is not the maximum of {:?}", s + 1, p));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{ClanModel, DiagonalModel};

    #[test]
    fn diagonal_order_is_bruhat() {
        for t in ["A1", "A2", "B2", "A3", "G2"] {
            let d = DiagonalModel::from_type(t).unwrap();
            let g = d.graph();
            let poset = OrbitPoset::build(g);
            let b = d.base();
            for u in g.orbit_ids() {
                for v in g.orbit_ids() {
                    assert_eq!(poset.leq(u, v), b.bruhat_leq(d.element(u), d.element(v)), "{t}");
                }
            }
        }
    }

    #[test]
    fn a1_final_terms() {
        let d = DiagonalModel::from_type("A1").unwrap();
        let g = d.graph();
        let dec = g.reduced_decomposition(OrbitId(1));
        assert_eq!(dec.generators, vec![0]);
        let t = subexpression_final_terms(g, &dec).unwrap();
        assert_eq!(t.ones().collect::<Vec<_>>(), vec![0, 1]);
        let bad = ReducedDecomposition { orbits: vec![OrbitId(1), OrbitId(1)], generators: vec![0] };
        assert!(subexpression_final_terms(g, &bad).is_err());
    }

    #[test]
    fn clan_11_open_orbit_sees_everything() {
        let m = ClanModel::new(1, 1).unwrap();
        let g = m.graph();
        let dec = g.reduced_decomposition(OrbitId(2));
        let t = subexpression_final_terms(g, &dec).unwrap();
        assert_eq!(t.count_ones(..), 3);
    }

    #[test]
    fn clan_orders_are_partial_orders() {
        for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)] {
            let m = ClanModel::new(p, q).unwrap();
            let g = m.graph();
            let poset = OrbitPoset::build(g);
            assert!(poset.check_partial_order().is_empty());
            assert_eq!(poset.minimal_elements(), g.closed_orbits());
            let top = poset.maximum().unwrap();
            assert_eq!(g.length(top), g.max_length());
            assert!(check_cayley_maximum(g, &poset).is_empty());
            assert!(check_decomposition_independence(g, &poset).is_empty());
        }
        let m = ClanModel::new(2, 2).unwrap();
        let poset = OrbitPoset::build(m.graph());
        let top = poset.maximum().unwrap();
        assert_eq!(m.clan(top).to_string(), "1221");
        assert_eq!(poset.lower_set(top).len(), 21);
    }

    #[test]
    fn covers_of_a2() {
        let d = DiagonalModel::from_type("A2").unwrap();
        let poset = OrbitPoset::build(d.graph());
        let b = d.base();
        let mut expected = Vec::new();
        for w in b.elements() {
            for u in b.bruhat_lower_covers(w) {
                expected.push((d.orbit(u), d.orbit(w)));
            }
        }
        expected.sort();
        assert_eq!(poset.covers(), expected);
    }
}
