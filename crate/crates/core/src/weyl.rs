//! Root and weight arithmetic for the simply laced diagrams of types A and D.
//!
//! Weights live in epsilon-coordinates: integer vectors of length [`DynkinDiagram::dim`].
//! The type D convention is fixed here once and reused by every other module:
//! `alpha_i = e_i - e_{i+1}` for `i < m` and `alpha_m = e_{m-1} + e_m`, with the
//! spin nodes `m-1` and `m` both attached to `m-2`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("empty node set")]
    EmptyNodeSet,
    #[error("node set {0} is not connected")]
    Disconnected(NodeSet),
    #[error("no node j with alpha_j = -w0(alpha_{0})")]
    ThetaUnmatched(usize),
}

/// Integer weight vector in epsilon-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Weight(vec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, axis: usize) -> i64 {
        self.0[axis]
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| k * a).collect())
    }

    pub fn dot(&self, other: &Weight) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Unit vector e_axis (0-based axis).
    pub fn epsilon(dim: usize, axis: usize) -> Weight {
        let mut v = vec![0; dim];
        v[axis] = 1;
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A word in the simple reflections, stored as node indices.
///
/// Reducedness is a checkable property ([`DynkinDiagram::is_reduced`]), not
/// enforced by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord(Vec<usize>);

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for WeylWord {
    fn from(v: Vec<usize>) -> Self {
        WeylWord(v)
    }
}

impl FromIterator<usize> for WeylWord {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        WeylWord(iter.into_iter().collect())
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// Sorted, deduplicated set of diagram nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new<I: IntoIterator<Item = usize>>(nodes: I) -> Self {
        let mut v: Vec<usize> = nodes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }

    pub fn contains(&self, node: usize) -> bool {
        self.0.binary_search(&node).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|j| other.contains(j))
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        NodeSet::new(self.iter().chain(other.iter()))
    }
}

impl From<Vec<usize>> for NodeSet {
    fn from(v: Vec<usize>) -> Self {
        NodeSet::new(v)
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        NodeSet::new(iter)
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagramKind {
    TypeA,
    TypeD,
}

/// Dynkin diagram of type A_m or D_m with nodes `1..=m`.
///
/// In type D the spin nodes are `m-1` and `m`; they are not adjacent to each
/// other, and both attach to `m-2`. Adjacency drives all downstream
/// combinatorics; no other module does index arithmetic on nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    kind: DiagramKind,
    rank: usize,
}

impl DynkinDiagram {
    pub fn type_a(rank: usize) -> Self {
        assert!(rank >= 1, "type A rank must be >= 1");
        DynkinDiagram { kind: DiagramKind::TypeA, rank }
    }

    pub fn type_d(rank: usize) -> Self {
        assert!(rank >= 3, "type D rank must be >= 3");
        DynkinDiagram { kind: DiagramKind::TypeD, rank }
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the epsilon-coordinate space.
    pub fn dim(&self) -> usize {
        match self.kind {
            DiagramKind::TypeA => self.rank + 1,
            DiagramKind::TypeD => self.rank,
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> {
        1..=self.rank
    }

    pub fn check_node(&self, i: usize) -> Result<(), WeylError> {
        if i >= 1 && i <= self.rank {
            Ok(())
        } else {
            Err(WeylError::NodeOutOfRange { node: i, rank: self.rank })
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        if i == j || i < 1 || j < 1 || i > self.rank || j > self.rank {
            return false;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        match self.kind {
            DiagramKind::TypeA => b == a + 1,
            DiagramKind::TypeD => {
                let m = self.rank;
                (b == a + 1 && b <= m - 1) || (a == m - 2 && b == m)
            }
        }
    }

    /// Connectedness of the induced subdiagram on `set`.
    pub fn is_connected(&self, set: &NodeSet) -> bool {
        if set.is_empty() {
            return false;
        }
        let start = set.members()[0];
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(i) = queue.pop_front() {
            for j in set.iter() {
                if !seen.contains(&j) && self.adjacent(i, j) {
                    seen.insert(j);
                    queue.push_back(j);
                }
            }
        }
        seen.len() == set.len()
    }

    /// All nonempty connected node sets, in a fixed deterministic order.
    pub fn connected_subdiagrams(&self) -> Vec<NodeSet> {
        let m = self.rank;
        assert!(m < 24, "subdiagram enumeration is exponential in the rank");
        let mut out = Vec::new();
        for mask in 1u64..(1 << m) {
            let set: NodeSet = (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            if self.is_connected(&set) {
                out.push(set);
            }
        }
        out
    }

    /// Simple root alpha_i.
    pub fn simple_root(&self, i: usize) -> Weight {
        assert!(i >= 1 && i <= self.rank, "node {i} out of range 1..={}", self.rank);
        let dim = self.dim();
        match self.kind {
            DiagramKind::TypeD if i == self.rank => {
                let mut v = vec![0; dim];
                v[self.rank - 2] = 1;
                v[self.rank - 1] = 1;
                Weight::new(v)
            }
            _ => {
                let mut v = vec![0; dim];
                v[i - 1] = 1;
                v[i] = -1;
                Weight::new(v)
            }
        }
    }

    /// Simple reflection s_i acting on a weight.
    ///
    /// For `i < m` this swaps coordinates `i` and `i+1`; in type D the spin
    /// reflection s_m maps `(.., a, b)` to `(.., -b, -a)`. Involution.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        assert!(i >= 1 && i <= self.rank, "node {i} out of range 1..={}", self.rank);
        assert_eq!(w.dim(), self.dim(), "weight dimension mismatch");
        let mut v = w.coords().to_vec();
        if self.kind == DiagramKind::TypeD && i == self.rank {
            let m = self.rank;
            let (a, b) = (v[m - 2], v[m - 1]);
            v[m - 2] = -b;
            v[m - 1] = -a;
        } else {
            v.swap(i - 1, i);
        }
        Weight::new(v)
    }

    /// Product of the word acting on a weight: the word `s_{i_1}..s_{i_l}`
    /// acts as `reflect(i_1, reflect(i_2, ...))`, i.e. the rightmost letter
    /// is applied first.
    pub fn act_by_word(&self, word: &WeylWord, w: &Weight) -> Weight {
        let mut v = w.clone();
        for &i in word.letters().iter().rev() {
            v = self.reflect(i, &v);
        }
        v
    }

    /// All positive roots, in a fixed deterministic order.
    pub fn positive_roots(&self) -> Vec<Weight> {
        let dim = self.dim();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let mut v = vec![0; dim];
                v[i] = 1;
                v[j] = -1;
                out.push(Weight::new(v));
            }
        }
        if self.kind == DiagramKind::TypeD {
            for i in 0..dim {
                for j in (i + 1)..dim {
                    let mut v = vec![0; dim];
                    v[i] = 1;
                    v[j] = 1;
                    out.push(Weight::new(v));
                }
            }
        }
        out
    }

    fn is_negative_root(w: &Weight) -> bool {
        match w.coords().iter().find(|&&c| c != 0) {
            Some(&c) => c < 0,
            None => false,
        }
    }

    /// True iff the word's length equals its inversion count, computed by
    /// tracking every positive root through the word's product.
    pub fn is_reduced(&self, word: &WeylWord) -> bool {
        let inversions = self
            .positive_roots()
            .iter()
            .filter(|alpha| Self::is_negative_root(&self.act_by_word(word, alpha)))
            .count();
        inversions == word.len()
    }

    /// A strictly dominant weight: positive pairing with every simple root.
    pub fn rho(&self) -> Weight {
        let dim = self.dim();
        Weight::new((0..dim).map(|k| (dim - k) as i64).collect())
    }

    /// A reduced word for the longest element of the parabolic subgroup W_J.
    ///
    /// Walks a strictly dominant weight down to the J-antidominant chamber,
    /// always reflecting at the smallest eligible node so the output is
    /// deterministic. The returned word is read in application order.
    pub fn longest_word(&self, j_set: &NodeSet) -> Result<WeylWord, WeylError> {
        if j_set.is_empty() {
            return Err(WeylError::EmptyNodeSet);
        }
        for j in j_set.iter() {
            self.check_node(j)?;
        }
        if !self.is_connected(j_set) {
            return Err(WeylError::Disconnected(j_set.clone()));
        }
        let roots: BTreeMap<usize, Weight> =
            j_set.iter().map(|j| (j, self.simple_root(j))).collect();
        let mut lambda = self.rho();
        let mut word = Vec::new();
        while let Some(j) = j_set.iter().find(|&j| lambda.dot(&roots[&j]) > 0) {
            lambda = self.reflect(j, &lambda);
            word.push(j);
        }
        Ok(WeylWord::new(word))
    }

    /// The diagram automorphism of J induced by its longest element:
    /// `theta(j)` is the unique node with `alpha_theta(j) = -w0J(alpha_j)`.
    pub fn theta(&self, j_set: &NodeSet) -> Result<BTreeMap<usize, usize>, WeylError> {
        let w0 = self.longest_word(j_set)?;
        let mut map = BTreeMap::new();
        for j in j_set.iter() {
            let image = self.act_by_word(&w0, &self.simple_root(j)).neg();
            let target = j_set
                .iter()
                .find(|&k| self.simple_root(k) == image)
                .ok_or(WeylError::ThetaUnmatched(j))?;
            map.insert(j, target);
        }
        Ok(map)
    }

    /// Up to `budget` distinct words reachable from `word` by commutation
    /// moves (swap non-adjacent neighbors) and braid moves (`aba -> bab` for
    /// adjacent nodes), breadth-first. Always contains the input; output is
    /// sorted for determinism.
    pub fn braid_alternates(&self, word: &WeylWord, budget: usize) -> Vec<WeylWord> {
        let budget = budget.max(1);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.letters().to_vec());
        queue.push_back(word.letters().to_vec());
        while let Some(w) = queue.pop_front() {
            if seen.len() >= budget {
                break;
            }
            let push = |cand: Vec<usize>, seen: &mut BTreeSet<Vec<usize>>,
                        queue: &mut VecDeque<Vec<usize>>| {
                if seen.len() < budget && !seen.contains(&cand) {
                    seen.insert(cand.clone());
                    queue.push_back(cand);
                }
            };
            for p in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[p], w[p + 1]);
                if a != b && !self.adjacent(a, b) {
                    let mut cand = w.clone();
                    cand.swap(p, p + 1);
                    push(cand, &mut seen, &mut queue);
                }
            }
            for p in 0..w.len().saturating_sub(2) {
                let (a, b) = (w[p], w[p + 1]);
                if w[p + 2] == a && self.adjacent(a, b) {
                    let mut cand = w.clone();
                    cand[p] = b;
                    cand[p + 1] = a;
                    cand[p + 2] = b;
                    push(cand, &mut seen, &mut queue);
                }
            }
        }
        seen.into_iter().map(WeylWord::new).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> DynkinDiagram {
        DynkinDiagram::type_d(4)
    }

    fn wt(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn simple_roots_d4() {
        let d = d4();
        assert_eq!(d.simple_root(1), wt(&[1, -1, 0, 0]));
        assert_eq!(d.simple_root(3), wt(&[0, 0, 1, -1]));
        assert_eq!(d.simple_root(4), wt(&[0, 0, 1, 1]));
    }

    #[test]
    fn reflect_examples() {
        let d = d4();
        assert_eq!(d.reflect(1, &wt(&[1, 0, 0, 0])), wt(&[0, 1, 0, 0]));
        assert_eq!(d.reflect(4, &wt(&[0, 0, 1, 0])), wt(&[0, 0, 0, -1]));
        // alpha_4 is fixed by s_3? no: s_3 swaps coords 3,4 and alpha_4=(0,0,1,1) is symmetric.
        assert_eq!(d.reflect(3, &wt(&[0, 0, 1, 1])), wt(&[0, 0, 1, 1]));
    }

    #[test]
    fn reflect_is_involution() {
        let d = DynkinDiagram::type_d(5);
        let w = wt(&[3, -1, 4, 1, -5]);
        for i in d.nodes() {
            assert_eq!(d.reflect(i, &d.reflect(i, &w)), w);
        }
    }

    #[test]
    fn act_by_word_examples() {
        let d = d4();
        let e1 = wt(&[1, 0, 0, 0]);
        assert_eq!(d.act_by_word(&WeylWord::new(vec![]), &e1), e1);
        assert_eq!(d.act_by_word(&WeylWord::new(vec![1, 1]), &e1), e1);
        // Rightmost letter applies first: s_2(s_1(e1)) = s_2(e2) = e3.
        assert_eq!(d.act_by_word(&WeylWord::new(vec![2, 1]), &e1), wt(&[0, 0, 1, 0]));
    }

    #[test]
    fn is_reduced_examples() {
        let a3 = DynkinDiagram::type_a(3);
        assert!(a3.is_reduced(&WeylWord::new(vec![1, 3, 2, 1])));
        assert!(!a3.is_reduced(&WeylWord::new(vec![1, 1])));
        assert!(d4().is_reduced(&WeylWord::new(vec![1, 2, 3, 4, 2, 1])));
    }

    #[test]
    fn spin_nodes_not_adjacent() {
        let d = DynkinDiagram::type_d(5);
        assert!(d.adjacent(4, 3) && d.adjacent(3, 5) && !d.adjacent(4, 5));
        assert!(d.adjacent(1, 2) && d.adjacent(2, 3));
    }

    /// BFS over the subgroup W_J acting on the basis; returns the word-length
    /// of the longest element and its matrix (as images of the basis).
    fn bfs_longest(d: &DynkinDiagram, j_set: &NodeSet) -> (usize, Vec<Weight>) {
        let dim = d.dim();
        let id: Vec<Weight> = (0..dim).map(|k| Weight::epsilon(dim, k)).collect();
        let mut dist: BTreeMap<Vec<Weight>, usize> = BTreeMap::new();
        dist.insert(id.clone(), 0);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            let l = dist[&g];
            for j in j_set.iter() {
                let h: Vec<Weight> = g.iter().map(|col| d.reflect(j, col)).collect();
                if !dist.contains_key(&h) {
                    dist.insert(h.clone(), l + 1);
                    queue.push_back(h);
                }
            }
        }
        let max = dist.values().copied().max().unwrap();
        let longest: Vec<_> = dist.iter().filter(|(_, &l)| l == max).collect();
        assert_eq!(longest.len(), 1, "longest element must be unique");
        (max, longest[0].0.clone())
    }

    fn word_matrix(d: &DynkinDiagram, word: &WeylWord) -> Vec<Weight> {
        (0..d.dim())
            .map(|k| d.act_by_word(word, &Weight::epsilon(d.dim(), k)))
            .collect()
    }

    #[test]
    fn longest_word_rank_one() {
        assert_eq!(
            d4().longest_word(&NodeSet::new([1])).unwrap(),
            WeylWord::new(vec![1])
        );
    }

    #[test]
    fn longest_word_a2_matches_brute_force() {
        let d = d4();
        let j = NodeSet::new([1, 2]);
        let w = d.longest_word(&j).unwrap();
        assert_eq!(w.len(), 3);
        let (len, mat) = bfs_longest(&d, &j);
        assert_eq!(len, 3);
        assert_eq!(word_matrix(&d, &w), mat);
        assert_eq!(word_matrix(&d, &WeylWord::new(vec![1, 2, 1])), mat);
    }

    #[test]
    fn longest_word_full_d4() {
        let d = d4();
        let w = d.longest_word(&NodeSet::new([1, 2, 3, 4])).unwrap();
        assert_eq!(w.len(), 12);
        assert_eq!(d.positive_roots().len(), 12);
        assert!(d.is_reduced(&w));
    }

    #[test]
    fn longest_word_rejects_bad_sets() {
        let d = d4();
        assert_eq!(d.longest_word(&NodeSet::new([])), Err(WeylError::EmptyNodeSet));
        assert!(matches!(
            d.longest_word(&NodeSet::new([1, 3])),
            Err(WeylError::Disconnected(_))
        ));
        assert!(matches!(
            d.longest_word(&NodeSet::new([7])),
            Err(WeylError::NodeOutOfRange { .. })
        ));
    }

    #[test]
    fn theta_full_diagram() {
        let d5 = DynkinDiagram::type_d(5);
        let t = d5.theta(&NodeSet::new(1..=5)).unwrap();
        assert_eq!(t[&1], 1);
        assert_eq!(t[&2], 2);
        assert_eq!(t[&3], 3);
        assert_eq!(t[&4], 5);
        assert_eq!(t[&5], 4);

        let t4 = d4().theta(&NodeSet::new(1..=4)).unwrap();
        for i in 1..=4 {
            assert_eq!(t4[&i], i);
        }
    }

    #[test]
    fn theta_chain_reflects() {
        let d = DynkinDiagram::type_d(6);
        for k in 2..=4 {
            let j: NodeSet = (1..=k).collect();
            let t = d.theta(&j).unwrap();
            for i in 1..=k {
                assert_eq!(t[&i], k - i + 1);
            }
        }
    }

    #[test]
    fn theta_on_chain_through_spin_node() {
        // {1,2,4} is the chain 1 - 2 - 4 in D_4; theta reflects it
        let t = d4().theta(&NodeSet::new([1, 2, 4])).unwrap();
        assert_eq!(t[&1], 4);
        assert_eq!(t[&2], 2);
        assert_eq!(t[&4], 1);
    }

    #[test]
    fn braid_alternates_examples() {
        let a3 = DynkinDiagram::type_a(3);
        let out = a3.braid_alternates(&WeylWord::new(vec![1, 3]), 2);
        assert_eq!(out, vec![WeylWord::new(vec![1, 3]), WeylWord::new(vec![3, 1])]);

        let a2 = DynkinDiagram::type_a(2);
        let out = a2.braid_alternates(&WeylWord::new(vec![1, 2, 1]), 2);
        assert_eq!(out, vec![WeylWord::new(vec![1, 2, 1]), WeylWord::new(vec![2, 1, 2])]);

        let out = a3.braid_alternates(&WeylWord::new(vec![2, 1, 3, 2]), 4);
        assert!(out.contains(&WeylWord::new(vec![2, 3, 1, 2])));
    }

    #[test]
    fn braid_alternates_preserve_length_reducedness_and_element() {
        let d = d4();
        let q = WeylWord::new(vec![1, 2, 3, 4, 2, 1, 2, 3, 4, 2, 3, 4]);
        assert!(d.is_reduced(&q));
        let base = word_matrix(&d, &q);
        let alts = d.braid_alternates(&q, 24);
        assert!(alts.len() >= 4);
        for w in &alts {
            assert_eq!(w.len(), q.len());
            assert!(d.is_reduced(w));
            assert_eq!(word_matrix(&d, w), base);
        }
    }

    /// Express a root in the simple-root basis by Gaussian elimination; the
    /// support gives an independent positive-root count for parabolics.
    fn root_support(d: &DynkinDiagram, root: &Weight) -> Option<NodeSet> {
        let dim = d.dim();
        let rank = d.rank();
        let mut a = vec![vec![0f64; rank + 1]; dim];
        for (col, j) in d.nodes().enumerate() {
            for (row, &c) in d.simple_root(j).coords().iter().enumerate() {
                a[row][col] = c as f64;
            }
        }
        for (row, &c) in root.coords().iter().enumerate() {
            a[row][rank] = c as f64;
        }
        let mut pivot_row = 0;
        let mut pivots = vec![None; rank];
        for col in 0..rank {
            let Some(r) = (pivot_row..dim).find(|&r| a[r][col].abs() > 1e-9) else {
                continue;
            };
            a.swap(pivot_row, r);
            let p = a[pivot_row][col];
            for x in a[pivot_row].iter_mut() {
                *x /= p;
            }
            for r2 in 0..dim {
                if r2 != pivot_row && a[r2][col].abs() > 1e-12 {
                    let f = a[r2][col];
                    for c2 in 0..=rank {
                        a[r2][c2] -= f * a[pivot_row][c2];
                    }
                }
            }
            pivots[col] = Some(pivot_row);
            pivot_row += 1;
        }
        let mut coeffs = vec![0i64; rank];
        for col in 0..rank {
            if let Some(r) = pivots[col] {
                coeffs[col] = a[r][rank].round() as i64;
            }
        }
        // verify the integer reconstruction exactly
        let mut rebuilt = Weight::zero(dim);
        for (col, j) in d.nodes().enumerate() {
            rebuilt = rebuilt.add(&d.simple_root(j).scaled(coeffs[col]));
        }
        if &rebuilt == root {
            Some((1..=rank).filter(|&j| coeffs[j - 1] != 0).collect())
        } else {
            None
        }
    }

    #[test]
    fn longest_word_length_matches_parabolic_root_count() {
        for d in [DynkinDiagram::type_d(4), DynkinDiagram::type_d(5), DynkinDiagram::type_d(6)] {
            let roots = d.positive_roots();
            for j_set in d.connected_subdiagrams() {
                let w = d.longest_word(&j_set).unwrap();
                assert!(d.is_reduced(&w));
                let count = roots
                    .iter()
                    .filter(|r| root_support(&d, r).map_or(false, |s| s.is_subset(&j_set)))
                    .count();
                assert_eq!(w.len(), count, "J = {j_set}");
            }
        }
    }

    #[test]
    fn theta_is_involutive_diagram_automorphism() {
        for d in [DynkinDiagram::type_d(4), DynkinDiagram::type_d(5), DynkinDiagram::type_d(6)] {
            for j_set in d.connected_subdiagrams() {
                let t = d.theta(&j_set).unwrap();
                let w0 = d.longest_word(&j_set).unwrap();
                for j in j_set.iter() {
                    assert_eq!(t[&t[&j]], j);
                    assert_eq!(
                        d.act_by_word(&w0, &d.simple_root(j)),
                        d.simple_root(t[&j]).neg()
                    );
                    for k in j_set.iter() {
                        assert_eq!(d.adjacent(j, k), d.adjacent(t[&j], t[&k]));
                    }
                }
            }
        }
    }
}
