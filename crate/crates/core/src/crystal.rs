//! Model-agnostic crystal graphs.
//!
//! A [`CrystalGraph`] is a frozen vertex/edge structure: elements are dense
//! indices, `f_i`/`e_i` are total arrays of optional targets, and every query
//! is read-only. Models (tableaux, order ideals, reverse plane partitions)
//! build one of these and then share the generic machinery: string statistics,
//! the tensor signature rule, restriction, components, and canonical
//! isomorphisms between connected crystals.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::weyl::{DynkinDiagram, NodeSet, Weight};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrystalError {
    #[error("component has {found} {kind} elements, expected exactly one")]
    ExtremalNotUnique { kind: &'static str, found: usize },
    #[error("graphs have different index sets")]
    IndexSetMismatch,
    #[error("graph is not connected")]
    NotConnected,
    #[error("edge structures disagree at \"{at}\" on node {node}")]
    StructureMismatch { at: String, node: usize },
    #[error("weights disagree at \"{at}\"")]
    WeightMismatch { at: String },
}

/// String lengths at one element: `epsilon = max n with e_i^n defined`,
/// `phi = max n with f_i^n defined`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StringStats {
    pub epsilon: usize,
    pub phi: usize,
}

/// Signature rule for `f_i` on a tensor product, given per-factor string
/// statistics: build the sign pattern (phi plusses then epsilon minuses per
/// factor), cancel `-+` pairs, and return the factor index of the rightmost
/// unpaired `+`, or `None`.
pub fn tensor_f(factors: &[StringStats]) -> Option<usize> {
    let (plus, _minus) = cancel(factors);
    plus.last().copied()
}

/// Mirror of [`tensor_f`]: the factor index of the leftmost unpaired `-`.
pub fn tensor_e(factors: &[StringStats]) -> Option<usize> {
    let (_plus, minus) = cancel(factors);
    minus.first().copied()
}

fn cancel(factors: &[StringStats]) -> (Vec<usize>, Vec<usize>) {
    let mut unpaired_plus = Vec::new();
    let mut minus_stack = Vec::new();
    for (idx, st) in factors.iter().enumerate() {
        for _ in 0..st.phi {
            if minus_stack.pop().is_none() {
                unpaired_plus.push(idx);
            }
        }
        for _ in 0..st.epsilon {
            minus_stack.push(idx);
        }
    }
    (unpaired_plus, minus_stack)
}

/// Finite crystal with dense element indices.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    diagram: DynkinDiagram,
    index_set: NodeSet,
    weights: Vec<Weight>,
    labels: Vec<String>,
    // indexed [node][element]; row 0 unused
    f: Vec<Vec<Option<usize>>>,
    e: Vec<Vec<Option<usize>>>,
}

impl CrystalGraph {
    /// Build from lowering edges; raising edges are derived by inversion.
    pub fn from_f_edges(
        diagram: DynkinDiagram,
        index_set: NodeSet,
        weights: Vec<Weight>,
        labels: Vec<String>,
        f_edge: impl Fn(usize, usize) -> Option<usize>,
    ) -> Self {
        let len = weights.len();
        assert_eq!(labels.len(), len);
        let m = diagram.rank();
        let mut f = vec![vec![None; len]; m + 1];
        let mut e = vec![vec![None; len]; m + 1];
        for i in index_set.iter() {
            for b in 0..len {
                if let Some(t) = f_edge(i, b) {
                    assert!(t < len, "f_{i} target out of range");
                    f[i][b] = Some(t);
                    assert!(e[i][t].is_none(), "two f_{i} edges share target {t}");
                    e[i][t] = Some(b);
                }
            }
        }
        CrystalGraph { diagram, index_set, weights, labels, f, e }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn index_set(&self) -> &NodeSet {
        &self.index_set
    }

    pub fn weight(&self, b: usize) -> &Weight {
        &self.weights[b]
    }

    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    pub fn f(&self, i: usize, b: usize) -> Option<usize> {
        self.f[i][b]
    }

    pub fn e(&self, i: usize, b: usize) -> Option<usize> {
        self.e[i][b]
    }

    /// Walk the i-string through `b` to exhaustion in both directions.
    /// Panics if a walk exceeds the element count (a cycle: malformed graph).
    pub fn string_stats(&self, i: usize, b: usize) -> StringStats {
        let cap = self.len();
        let mut phi = 0;
        let mut cur = b;
        while let Some(t) = self.f[i][cur] {
            phi += 1;
            assert!(phi <= cap, "cycle detected in {i}-string at {}", self.labels[b]);
            cur = t;
        }
        let mut epsilon = 0;
        cur = b;
        while let Some(t) = self.e[i][cur] {
            epsilon += 1;
            assert!(epsilon <= cap, "cycle detected in {i}-string at {}", self.labels[b]);
            cur = t;
        }
        StringStats { epsilon, phi }
    }

    /// Same vertex set, edges filtered to labels in `j_set`.
    pub fn restrict(&self, j_set: &NodeSet) -> CrystalGraph {
        assert!(j_set.is_subset(&self.index_set), "restriction outside index set");
        let mut out = self.clone();
        for i in 1..=self.diagram.rank() {
            if !j_set.contains(i) {
                out.f[i].iter_mut().for_each(|x| *x = None);
                out.e[i].iter_mut().for_each(|x| *x = None);
            }
        }
        out.index_set = j_set.clone();
        out
    }

    /// Connected components under undirected f/e edges; groups are sorted and
    /// ordered by least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let ids = self.component_ids();
        let count = ids.iter().copied().max().map_or(0, |x| x + 1);
        let mut groups = vec![Vec::new(); count];
        for (b, &id) in ids.iter().enumerate() {
            groups[id].push(b);
        }
        groups
    }

    /// Component index per element; components numbered by least element.
    pub fn component_ids(&self) -> Vec<usize> {
        let len = self.len();
        let mut ids = vec![usize::MAX; len];
        let mut next = 0;
        for start in 0..len {
            if ids[start] != usize::MAX {
                continue;
            }
            ids[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(b) = queue.pop_front() {
                for i in self.index_set.iter() {
                    for t in [self.f[i][b], self.e[i][b]].into_iter().flatten() {
                        if ids[t] == usize::MAX {
                            ids[t] = next;
                            queue.push_back(t);
                        }
                    }
                }
            }
            next += 1;
        }
        ids
    }

    /// The unique element of the component with every e_i undefined.
    pub fn highest_of(&self, component: &[usize]) -> Result<usize, CrystalError> {
        self.extremal(component, "highest", |b| {
            self.index_set.iter().all(|i| self.e[i][b].is_none())
        })
    }

    /// The unique element of the component with every f_i undefined.
    pub fn lowest_of(&self, component: &[usize]) -> Result<usize, CrystalError> {
        self.extremal(component, "lowest", |b| {
            self.index_set.iter().all(|i| self.f[i][b].is_none())
        })
    }

    fn extremal(
        &self,
        component: &[usize],
        kind: &'static str,
        pred: impl Fn(usize) -> bool,
    ) -> Result<usize, CrystalError> {
        let found: Vec<usize> = component.iter().copied().filter(|&b| pred(b)).collect();
        match found.as_slice() {
            [b] => Ok(*b),
            _ => Err(CrystalError::ExtremalNotUnique { kind, found: found.len() }),
        }
    }

    /// Greedy raising path: repeatedly apply e at the smallest applicable
    /// node. Applying e at the returned nodes in order maps `b` to the
    /// highest element of its component. Empty at a highest element.
    pub fn raising_path(&self, b: usize) -> Vec<usize> {
        let cap = self.len();
        let mut path = Vec::new();
        let mut cur = b;
        loop {
            match self.index_set.iter().find(|&i| self.e[i][cur].is_some()) {
                Some(i) => {
                    cur = self.e[i][cur].unwrap();
                    path.push(i);
                    assert!(path.len() <= cap, "cycle while raising from {}", self.labels[b]);
                }
                None => return path,
            }
        }
    }

    /// Map each element of `self` to the matching element of `dst`: highest
    /// goes to highest, then propagate along f-edges breadth-first. Fails if
    /// the edge structures or weights disagree anywhere. The result commutes
    /// with every f_i and e_i and preserves weights.
    pub fn canonical_iso(&self, dst: &CrystalGraph) -> Result<Vec<usize>, CrystalError> {
        if self.index_set != dst.index_set {
            return Err(CrystalError::IndexSetMismatch);
        }
        let src_comps = self.components();
        let dst_comps = dst.components();
        if src_comps.len() != 1 || dst_comps.len() != 1 {
            return Err(CrystalError::NotConnected);
        }
        let mut map = vec![usize::MAX; self.len()];
        let hs = self.highest_of(&src_comps[0])?;
        let hd = dst.highest_of(&dst_comps[0])?;
        map[hs] = hd;
        let mut queue = VecDeque::from([hs]);
        while let Some(b) = queue.pop_front() {
            for i in self.index_set.iter() {
                match (self.f[i][b], dst.f[i][map[b]]) {
                    (Some(sb), Some(db)) => {
                        if map[sb] == usize::MAX {
                            map[sb] = db;
                            queue.push_back(sb);
                        } else if map[sb] != db {
                            return Err(CrystalError::StructureMismatch {
                                at: self.labels[b].clone(),
                                node: i,
                            });
                        }
                    }
                    (None, None) => {}
                    _ => {
                        return Err(CrystalError::StructureMismatch {
                            at: self.labels[b].clone(),
                            node: i,
                        })
                    }
                }
            }
        }
        if self.len() != dst.len() || map.iter().any(|&x| x == usize::MAX) {
            return Err(CrystalError::NotConnected);
        }
        let mut hit = vec![false; dst.len()];
        for &t in &map {
            if std::mem::replace(&mut hit[t], true) {
                return Err(CrystalError::NotConnected);
            }
        }
        for b in 0..self.len() {
            if self.weights[b] != dst.weights[map[b]] {
                return Err(CrystalError::WeightMismatch { at: self.labels[b].clone() });
            }
            for i in self.index_set.iter() {
                if self.e[i][b].map(|s| map[s]) != dst.e[i][map[b]] {
                    return Err(CrystalError::StructureMismatch {
                        at: self.labels[b].clone(),
                        node: i,
                    });
                }
            }
        }
        Ok(map)
    }

    /// Rewire a single f-edge without touching anything else, leaving the
    /// graph inconsistent on purpose. Test-only: feeds the fault-coverage
    /// meta-test.
    #[cfg(test)]
    pub(crate) fn mutate_f_edge(&mut self, i: usize, b: usize, target: Option<usize>) {
        self.f[i][b] = target;
    }

    /// Deterministic DOT export: one node per element labeled by its text
    /// form, one directed edge per f_i labeled by i.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n  rankdir=LR;\n  node [shape=box];\n");
        for b in 0..self.len() {
            let _ = writeln!(out, "  b{b} [label=\"{}\"];", self.labels[b]);
        }
        for b in 0..self.len() {
            for i in self.index_set.iter() {
                if let Some(t) = self.f[i][b] {
                    let _ = writeln!(out, "  b{b} -> b{t} [label=\"{i}\"];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
