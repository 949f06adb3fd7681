//! Subset dynamic programme for path-chromatic number.
//!
//! Any prefix `S = {v_1..v_l}` of an enumeration with last vertex `v` yields
//! the bag `X_l = N[S] \ (S \ {v})`, which depends on `(S, v)` only. So
//!
//! ```text
//! feasible(∅) = true
//! feasible(S) = ∃ v ∈ S : feasible(S \ v) ∧ χ(G[bag(S, v)]) ≤ k
//! ```
//!
//! decides whether some enumeration has every bag `k`-colourable, which is
//! equivalent to `χ_P(G) ≤ k`. The table is one bit per subset, filled one
//! popcount layer at a time; within a layer every 64-subset word is
//! independent, so words are distributed over workers.
//!
//! Writing `∂S = N[S] \ S`, every bag of `S` is `∂S ∪ {v}`, which gives cheap
//! rejections (if `∂S` alone needs more than `k` colours, no `v` helps) and
//! acceptances (if `v` has no neighbour in `∂S`, or `∂S` is `(k-1)`-colourable).

mod brute;

pub use brute::{brute_force_path_chromatic, count_special_enumerations, BRUTE_FORCE_LIMIT};

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::coloring::BagChromatic;
use crate::decomposition::Enumeration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::parallel::{self, Execution};
use crate::vertex_set::VertexSet;

/// Largest order accepted without `size_override`.
pub const DEFAULT_VERTEX_LIMIT: usize = 28;
/// Largest order accepted at all; the table takes `2^n` bits.
pub const HARD_VERTEX_LIMIT: usize = 34;

#[derive(Clone, Copy, Debug, Default)]
pub struct DpConfig {
    pub execution: Execution,
    pub size_override: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum DpAnswer {
    Decision(bool),
    Value(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct DpReport {
    pub answer: DpAnswer,
    pub witness: Option<Enumeration>,
    pub states_explored: u64,
    pub bag_cache_hits: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl DpReport {
    pub fn decision(&self) -> bool {
        match self.answer {
            DpAnswer::Decision(b) => b,
            DpAnswer::Value(_) => true,
        }
    }

    pub fn value(&self) -> Option<usize> {
        match self.answer {
            DpAnswer::Value(k) => Some(k),
            DpAnswer::Decision(_) => None,
        }
    }
}

/// `N[S] \ (S \ {v})`: the bag entered by `v` after the prefix `S \ {v}`.
pub fn bag_of_prefix(g: &Graph, prefix: VertexSet, v: usize) -> Result<VertexSet> {
    g.check_set(prefix)?;
    if !prefix.contains(v) {
        return Err(Error::param(format!("vertex {v} is not in the prefix")));
    }
    Ok(g.closed_neighborhood_unchecked(prefix) - prefix.without(v))
}

fn check_size(g: &Graph, config: &DpConfig) -> Result<()> {
    let n = g.order();
    let limit = if config.size_override {
        HARD_VERTEX_LIMIT
    } else {
        DEFAULT_VERTEX_LIMIT
    };
    if n > limit {
        return Err(Error::TooLarge {
            what: "graph order for the subset DP",
            actual: n,
            limit,
        });
    }
    Ok(())
}

pub fn path_chromatic_at_most(g: &Graph, k: usize) -> Result<DpReport> {
    path_chromatic_at_most_with(g, k, &DpConfig::default())
}

pub fn path_chromatic_at_most_with(g: &Graph, k: usize, config: &DpConfig) -> Result<DpReport> {
    check_size(g, config)?;
    let start = Instant::now();
    let cache = BagChromatic::new(g);
    let run = Table::solve(&cache, Rule::AtMost(k), config.execution);
    Ok(DpReport {
        answer: DpAnswer::Decision(run.feasible),
        witness: run.witness(),
        states_explored: run.states,
        bag_cache_hits: cache.hits(),
        elapsed: start.elapsed(),
    })
}

pub fn path_chromatic_number(g: &Graph) -> Result<DpReport> {
    path_chromatic_number_with(g, &DpConfig::default())
}

pub fn path_chromatic_number_with(g: &Graph, config: &DpConfig) -> Result<DpReport> {
    check_size(g, config)?;
    let start = Instant::now();
    let cache = BagChromatic::new(g);
    let (k, table, states) = least_k(&cache, config.execution);
    Ok(DpReport {
        answer: DpAnswer::Value(k),
        witness: table.witness(),
        states_explored: states,
        bag_cache_hits: cache.hits(),
        elapsed: start.elapsed(),
    })
}

/// Smallest feasible `k`, counting up from 1 with one shared bag cache.
fn least_k<'a, 'g>(cache: &'a BagChromatic<'g>, exec: Execution) -> (usize, Table<'a, 'g>, u64) {
    let mut states = 0;
    let mut k = 0;
    loop {
        let table = Table::solve(cache, Rule::AtMost(k), exec);
        states += table.states;
        if table.feasible {
            return (k, table, states);
        }
        k += 1;
    }
}

pub fn exists_special_enumeration(g: &Graph) -> Result<Option<Enumeration>> {
    Ok(special_enumeration_with(g, &DpConfig::default())?.witness)
}

/// Runs the χ_P search, then the special-enumeration DP at that `k`.
/// `answer` is `Decision(found)`.
pub fn special_enumeration_with(g: &Graph, config: &DpConfig) -> Result<DpReport> {
    check_size(g, config)?;
    let start = Instant::now();
    let cache = BagChromatic::new(g);
    let (k, _, mut states) = least_k(&cache, config.execution);
    let table = Table::solve(&cache, Rule::Special(k), config.execution);
    states += table.states;
    Ok(DpReport {
        answer: DpAnswer::Decision(table.feasible),
        witness: table.witness(),
        states_explored: states,
        bag_cache_hits: cache.hits(),
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Copy, Debug)]
enum Rule {
    /// Every bag `k`-colourable.
    AtMost(usize),
    /// Every bag `k`-colourable; bags entered by a vertex with an earlier
    /// neighbour `(k-1)`-colourable.
    Special(usize),
}

impl Rule {
    fn k(self) -> usize {
        match self {
            Rule::AtMost(k) | Rule::Special(k) => k,
        }
    }
}

struct Table<'a, 'g> {
    cache: &'a BagChromatic<'g>,
    rule: Rule,
    bits: Vec<AtomicU64>,
    n: usize,
    feasible: bool,
    states: u64,
}

impl<'a, 'g> Table<'a, 'g> {
    fn solve(cache: &'a BagChromatic<'g>, rule: Rule, exec: Execution) -> Self {
        let n = cache.graph().order();
        let words = if n >= 6 { 1usize << (n - 6) } else { 1 };
        let mut table = Table {
            cache,
            rule,
            bits: (0..words).map(|_| AtomicU64::new(0)).collect(),
            n,
            feasible: false,
            states: 0,
        };
        table.bits[0].store(1, Ordering::Relaxed);
        if n == 0 {
            table.feasible = true;
            return table;
        }
        if rule.k() == 0 {
            return table;
        }
        let states = AtomicU64::new(0);
        for layer in 1..=n as u32 {
            let found = AtomicU64::new(0);
            parallel::for_each_index(words, exec, |w| {
                let (hits, evaluated) = table.fill_word(w, layer);
                if hits != 0 {
                    table.bits[w].fetch_or(hits, Ordering::Relaxed);
                    found.fetch_add(1, Ordering::Relaxed);
                }
                states.fetch_add(evaluated, Ordering::Relaxed);
            });
            if found.load(Ordering::Relaxed) == 0 {
                table.states = states.into_inner();
                return table;
            }
        }
        table.states = states.into_inner();
        table.feasible = table.get((1u64 << n) - 1);
        table
    }

    #[inline]
    fn get(&self, mask: u64) -> bool {
        self.bits[(mask >> 6) as usize].load(Ordering::Relaxed) >> (mask & 63) & 1 == 1
    }

    /// Feasibility bits for the subsets of popcount `layer` in word `w`.
    fn fill_word(&self, w: usize, layer: u32) -> (u64, u64) {
        let base = (w as u64) << 6;
        let high = base.count_ones();
        let span: u64 = if self.n >= 6 { 64 } else { 1 << self.n };
        if layer < high || layer > high + span.trailing_zeros() {
            return (0, 0);
        }
        let mut out = 0u64;
        let mut evaluated = 0;
        for low in 0..span {
            if high + low.count_ones() != layer {
                continue;
            }
            evaluated += 1;
            if self.evaluate(base | low) {
                out |= 1 << low;
            }
        }
        (out, evaluated)
    }

    fn evaluate(&self, mask: u64) -> bool {
        let g = self.cache.graph();
        let prefix = VertexSet::from_bits(mask as u128);
        let closers: VertexSet = prefix
            .iter()
            .filter(|&v| self.get(mask & !(1 << v)))
            .collect();
        if closers.is_empty() {
            return false;
        }
        let boundary = g.closed_neighborhood_unchecked(prefix) - prefix;
        let k = self.rule.k();
        let below = self.cache.at_most(boundary, k - 1);
        if below && matches!(self.rule, Rule::AtMost(_)) {
            // every closer yields a bag of chromatic number at most k
            return true;
        }
        if !below && !self.cache.at_most(boundary, k) {
            return false;
        }
        let mut boundary_below = Some(below);
        closers
            .iter()
            .any(|v| self.admissible(prefix, boundary, v, &mut boundary_below))
    }

    /// Can `v` close the prefix `prefix` (so `v ∈ prefix`)? Assumes
    /// `χ(boundary) <= k` has been established.
    fn admissible(
        &self,
        prefix: VertexSet,
        boundary: VertexSet,
        v: usize,
        below: &mut Option<bool>,
    ) -> bool {
        let g = self.cache.graph();
        let bag = boundary.with(v);
        match self.rule {
            Rule::Special(k) if g.neighbors(v).intersects(prefix) => self.cache.at_most(bag, k - 1),
            Rule::AtMost(k) | Rule::Special(k) => {
                !g.neighbors(v).intersects(boundary)
                    || *below.get_or_insert_with(|| self.cache.at_most(boundary, k - 1))
                    || self.cache.at_most(bag, k)
            }
        }
    }

    /// Walks back from the full set, re-deriving a predecessor at each step.
    fn witness(&self) -> Option<Enumeration> {
        if !self.feasible {
            return None;
        }
        let g = self.cache.graph();
        let mut mask = if self.n == 0 { 0 } else { (1u64 << self.n) - 1 };
        let mut reversed = Vec::with_capacity(self.n);
        while mask != 0 {
            let prefix = VertexSet::from_bits(mask as u128);
            let boundary = g.closed_neighborhood_unchecked(prefix) - prefix;
            let mut below = None;
            let v = prefix
                .iter()
                .find(|&v| {
                    self.get(mask & !(1 << v)) && self.admissible(prefix, boundary, v, &mut below)
                })
                .expect("feasible state has an admissible predecessor");
            reversed.push(v);
            mask &= !(1 << v);
        }
        reversed.reverse();
        Some(Enumeration::new(reversed).expect("witness is a permutation"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{
        enumeration_chromatic_number, is_special_enumeration, path_decomposition_from_enumeration,
        Decomposition,
    };
    use crate::graph::{make_complete, make_cycle};

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn prefix_bags() {
        let k2 = make_complete(2).unwrap();
        assert_eq!(bag_of_prefix(&k2, set(&[0]), 0).unwrap(), set(&[0, 1]));
        let c5 = make_cycle(5).unwrap();
        assert_eq!(
            bag_of_prefix(&c5, set(&[0, 1]), 1).unwrap(),
            set(&[1, 2, 4])
        );
        assert!(bag_of_prefix(&c5, set(&[0, 1]), 2).is_err());
        assert!(bag_of_prefix(&c5, set(&[7]), 7).is_err());
    }

    #[test]
    fn prefix_bags_agree_with_enumeration_bags() {
        let c5 = make_cycle(5).unwrap();
        let order = Enumeration::new(vec![3, 0, 4, 1, 2]).unwrap();
        let p = path_decomposition_from_enumeration(&c5, &order).unwrap();
        let mut prefix = VertexSet::EMPTY;
        for (l, &v) in order.as_slice().iter().enumerate() {
            prefix.insert(v);
            assert_eq!(bag_of_prefix(&c5, prefix, v).unwrap(), p.bags()[l]);
        }
    }

    #[test]
    fn small_decisions() {
        let c5 = make_cycle(5).unwrap();
        assert!(path_chromatic_at_most(&c5, 2).unwrap().decision());
        assert!(!path_chromatic_at_most(&c5, 1).unwrap().decision());
        let k4 = make_complete(4).unwrap();
        assert!(!path_chromatic_at_most(&k4, 3).unwrap().decision());
        let yes = path_chromatic_at_most(&k4, 4).unwrap();
        assert!(yes.decision());
        assert_eq!(
            enumeration_chromatic_number(&k4, yes.witness.as_ref().unwrap()).unwrap(),
            4
        );
        assert!(!path_chromatic_at_most(&k4, 0).unwrap().decision());
    }

    #[test]
    fn values_and_witnesses() {
        for (g, expected) in [
            (make_cycle(5).unwrap(), 2),
            (make_cycle(7).unwrap(), 2),
            (make_complete(1).unwrap(), 1),
            (make_complete(5).unwrap(), 5),
            (Graph::empty(3).unwrap(), 1),
        ] {
            let r = path_chromatic_number(&g).unwrap();
            assert_eq!(r.value(), Some(expected));
            let w = r.witness.unwrap();
            assert_eq!(enumeration_chromatic_number(&g, &w).unwrap(), expected);
        }
        let r = path_chromatic_number(&Graph::empty(0).unwrap()).unwrap();
        assert_eq!(r.value(), Some(0));
        assert_eq!(r.witness.unwrap().len(), 0);
    }

    #[test]
    fn special_enumerations() {
        let k2 = make_complete(2).unwrap();
        let w = exists_special_enumeration(&k2).unwrap().unwrap();
        assert!(is_special_enumeration(&k2, &w, 2).unwrap());
        assert!(exists_special_enumeration(&make_cycle(5).unwrap())
            .unwrap()
            .is_none());
        assert!(exists_special_enumeration(&make_cycle(7).unwrap())
            .unwrap()
            .is_none());
        assert_eq!(
            exists_special_enumeration(&Graph::empty(0).unwrap())
                .unwrap()
                .unwrap()
                .len(),
            0
        );
        // even cycles do have one: C4 = K_{2,2}
        let c4 = make_cycle(4).unwrap();
        let w = exists_special_enumeration(&c4).unwrap().unwrap();
        assert!(is_special_enumeration(&c4, &w, 2).unwrap());
    }

    #[test]
    fn size_guard() {
        let big = Graph::empty(29).unwrap();
        assert!(matches!(
            path_chromatic_number(&big),
            Err(Error::TooLarge { .. })
        ));
        let config = DpConfig {
            size_override: true,
            ..DpConfig::default()
        };
        assert!(path_chromatic_at_most_with(&Graph::empty(35).unwrap(), 1, &config).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = make_cycle(9).unwrap();
        for execution in [Execution::Sequential, Execution::Parallel] {
            let config = DpConfig {
                execution,
                size_override: false,
            };
            let r = path_chromatic_number_with(&g, &config).unwrap();
            assert_eq!(r.value(), Some(2));
            assert_eq!(r.witness, path_chromatic_number(&g).unwrap().witness);
        }
    }

    #[test]
    fn witness_is_a_valid_decomposition() {
        let g = make_cycle(6).unwrap();
        let w = path_chromatic_number(&g).unwrap().witness.unwrap();
        let p = path_decomposition_from_enumeration(&g, &w).unwrap();
        assert_eq!(p.validate(&g).unwrap(), None);
    }
}
