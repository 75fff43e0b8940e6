//! Heaps of Weyl words, order ideals, and reverse plane partitions.
//!
//! The heap of a word is the poset on its positions generated by `a < b`
//! whenever position `a` comes later in the word and sits on a runner
//! adjacent to `b`'s. Order ideals of the minuscule heap model the standard
//! crystal; height-n order-reversing labelings (RPPs) model its n-th
//! Cartan power through nested chains of ideals.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crystal::{tensor_e, tensor_f, CrystalGraph, StringStats};
use crate::weyl::{DynkinDiagram, NodeSet, Weight, WeylWord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeapError {
    #[error("label {label} at position {position} exceeds height {height}")]
    LabelOutOfRange { position: usize, label: u32, height: u32 },
    #[error("labels are not order-reversing at positions {lower} < {upper}")]
    NotOrderReversing { lower: usize, upper: usize },
    #[error("ideal chain is not nested at step {step}")]
    ChainNotNested { step: usize },
    #[error("label vector has length {got}, heap has {expected} elements")]
    LengthMismatch { got: usize, expected: usize },
}

/// Order ideal of a heap, stored as a bitmask over element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdeal(u64);

impl OrderIdeal {
    pub fn empty() -> Self {
        OrderIdeal(0)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut mask = 0u64;
        for x in members {
            mask |= 1 << x;
        }
        OrderIdeal(mask)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..64).filter(|&x| self.contains(x)).collect()
    }

    fn with(&self, x: usize) -> Self {
        OrderIdeal(self.0 | 1 << x)
    }

    fn without(&self, x: usize) -> Self {
        OrderIdeal(self.0 & !(1 << x))
    }
}

/// Heap of a word: poset on positions `0..len`, position 0 being the first
/// letter. All relations run from later positions (lower in the heap) to
/// earlier ones.
#[derive(Debug, Clone)]
pub struct Heap {
    diagram: DynkinDiagram,
    word: WeylWord,
    below: Vec<u64>,          // below[x]: strict down-set of x
    covers: Vec<Vec<usize>>,  // covers[x]: elements covered by x
    fibers: Vec<Vec<usize>>,  // per node, positions in increasing heap order
}

impl Heap {
    pub fn from_word(diagram: DynkinDiagram, word: WeylWord) -> Heap {
        let l = word.len();
        assert!(l <= 64, "heap words longer than 64 letters are unsupported");
        for &i in word.letters() {
            assert!(i >= 1 && i <= diagram.rank(), "node {i} out of range");
        }
        let w = word.letters();
        let mut below = vec![0u64; l];
        for b in (0..l).rev() {
            for a in (b + 1)..l {
                if diagram.adjacent(w[a], w[b]) {
                    below[b] |= 1 << a | below[a];
                }
            }
        }
        let mut covers = vec![Vec::new(); l];
        for x in 0..l {
            for y in 0..l {
                if below[x] >> y & 1 == 1 {
                    // y is covered by x unless some z sits strictly between
                    let between = (0..l).any(|z| {
                        below[x] >> z & 1 == 1 && below[z] >> y & 1 == 1
                    });
                    if !between {
                        covers[x].push(y);
                    }
                }
            }
        }
        let mut fibers = vec![Vec::new(); diagram.rank() + 1];
        for x in (0..l).rev() {
            fibers[w[x]].push(x); // descending position = increasing heap order
        }
        Heap { diagram, word, below, covers, fibers }
    }

    /// Heap of the word `(1, .., m-2, m-1, m, m-2, .., 1)` in type D_m: the
    /// double-tailed diamond with `2m-2` elements, the shape whose ideals
    /// model the standard crystal.
    pub fn minuscule(rank: usize) -> Heap {
        let diagram = DynkinDiagram::type_d(rank);
        let mut letters: Vec<usize> = (1..=rank - 2).collect();
        letters.push(rank - 1);
        letters.push(rank);
        letters.extend((1..=rank - 2).rev());
        Heap::from_word(diagram, WeylWord::new(letters))
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn word(&self) -> &WeylWord {
        &self.word
    }

    /// The runner (diagram node) of a position.
    pub fn runner(&self, x: usize) -> usize {
        self.word.letters()[x]
    }

    /// Strict order: x below y.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.below[y] >> x & 1 == 1
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    /// Fiber of a runner, in increasing heap order.
    pub fn fiber(&self, i: usize) -> &[usize] {
        &self.fibers[i]
    }

    pub fn fiber_totally_ordered(&self, i: usize) -> bool {
        let fiber = &self.fibers[i];
        fiber
            .iter()
            .enumerate()
            .all(|(k, &x)| fiber[k + 1..].iter().all(|&y| self.lt(x, y)))
    }

    pub fn is_ideal(&self, s: OrderIdeal) -> bool {
        (0..self.len()).all(|x| !s.contains(x) || self.below[x] & !s.0 == 0)
    }

    /// All order ideals, in a fixed deterministic order.
    pub fn order_ideals(&self) -> Vec<OrderIdeal> {
        // Decide membership along a linear extension (descending position);
        // an element may join only once its whole down-set is in.
        let mut out = Vec::new();
        let order: Vec<usize> = (0..self.len()).rev().collect();
        fn rec(heap: &Heap, order: &[usize], k: usize, cur: OrderIdeal, out: &mut Vec<OrderIdeal>) {
            match order.get(k) {
                None => out.push(cur),
                Some(&x) => {
                    rec(heap, order, k + 1, cur, out);
                    if heap.below[x] & !cur.0 == 0 {
                        rec(heap, order, k + 1, cur.with(x), out);
                    }
                }
            }
        }
        rec(self, &order, 0, OrderIdeal::empty(), &mut out);
        out.sort();
        out
    }

    /// Coset-model lowering operator: add the lowest fiber element missing
    /// from the ideal, if the result is still an ideal.
    pub fn ideal_f(&self, i: usize, s: OrderIdeal) -> Option<OrderIdeal> {
        let x = *self.fibers[i].iter().find(|&&x| !s.contains(x))?;
        let t = s.with(x);
        self.is_ideal(t).then_some(t)
    }

    /// Coset-model raising operator: remove the highest fiber element present
    /// in the ideal, if the result is still an ideal.
    pub fn ideal_e(&self, i: usize, s: OrderIdeal) -> Option<OrderIdeal> {
        let x = *self.fibers[i].iter().rev().find(|&&x| s.contains(x))?;
        let t = s.without(x);
        self.is_ideal(t).then_some(t)
    }

    /// Weight of an ideal: lambda minus the simple roots of its members.
    pub fn ideal_weight(&self, s: OrderIdeal, lambda: &Weight) -> Weight {
        let mut w = lambda.clone();
        for x in s.members() {
            w = w.sub(&self.diagram.simple_root(self.runner(x)));
        }
        w
    }

    /// Single-element toggle: add or remove x when the result is an ideal,
    /// otherwise fix.
    pub fn toggle_element(&self, x: usize, s: OrderIdeal) -> OrderIdeal {
        if !s.contains(x) {
            let t = s.with(x);
            if self.is_ideal(t) {
                return t;
            }
        } else {
            let t = s.without(x);
            if self.is_ideal(t) {
                return t;
            }
        }
        s
    }

    /// Runner toggle: the commuting product of the element toggles over a
    /// fiber.
    pub fn toggle_runner(&self, i: usize, s: OrderIdeal) -> OrderIdeal {
        self.fibers[i].iter().fold(s, |acc, &x| self.toggle_element(x, acc))
    }

    /// DOT export of the covering relations, nodes labeled by their runner.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph heap {\n  rankdir=BT;\n  node [shape=circle];\n");
        for x in 0..self.len() {
            let _ = writeln!(out, "  p{x} [label=\"s{}\"];", self.runner(x));
        }
        for x in 0..self.len() {
            for &y in &self.covers[x] {
                let _ = writeln!(out, "  p{y} -> p{x};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Nested chain of order ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealChain(Vec<OrderIdeal>);

impl IdealChain {
    pub fn new(ideals: Vec<OrderIdeal>) -> Result<Self, HeapError> {
        for k in 1..ideals.len() {
            if ideals[k - 1].0 & !ideals[k].0 != 0 {
                return Err(HeapError::ChainNotNested { step: k });
            }
        }
        Ok(IdealChain(ideals))
    }

    pub fn ideals(&self) -> &[OrderIdeal] {
        &self.0
    }
}

/// Reverse plane partition: order-reversing labeling of a heap by `0..=n`,
/// labels stored in word-position order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rpp {
    labels: Vec<u32>,
    height: u32,
}

/// JSON form of an RPP together with the word that defines its heap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RppFile {
    pub word: Vec<usize>,
    pub height: u32,
    pub labels: Vec<u32>,
}

impl Rpp {
    pub fn new(heap: &Heap, labels: Vec<u32>, height: u32) -> Result<Rpp, HeapError> {
        if labels.len() != heap.len() {
            return Err(HeapError::LengthMismatch { got: labels.len(), expected: heap.len() });
        }
        for (x, &v) in labels.iter().enumerate() {
            if v > height {
                return Err(HeapError::LabelOutOfRange { position: x, label: v, height });
            }
        }
        for y in 0..heap.len() {
            for &x in &heap.covers[y] {
                if labels[x] < labels[y] {
                    return Err(HeapError::NotOrderReversing { lower: x, upper: y });
                }
            }
        }
        Ok(Rpp { labels, height })
    }

    pub fn constant(heap: &Heap, value: u32, height: u32) -> Rpp {
        assert!(value <= height);
        Rpp { labels: vec![value; heap.len()], height }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> u32 {
        self.labels[x]
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// The nested chain: the k-th ideal collects the positions labeled at
    /// least `n-k+1`, so the first ideal holds the largest labels.
    pub fn to_chain(&self, heap: &Heap) -> IdealChain {
        let n = self.height;
        let ideals = (1..=n)
            .map(|k| {
                OrderIdeal::from_members(
                    (0..heap.len()).filter(|&x| self.labels[x] >= n - k + 1),
                )
            })
            .collect();
        IdealChain::new(ideals).expect("chain of an RPP is always nested")
    }

    /// Inverse of [`Rpp::to_chain`]: a position's label counts the ideals
    /// containing it.
    pub fn from_chain(heap: &Heap, chain: &IdealChain, height: u32) -> Result<Rpp, HeapError> {
        assert_eq!(chain.0.len() as u32, height, "chain length must equal height");
        let labels = (0..heap.len())
            .map(|x| chain.0.iter().filter(|s| s.contains(x)).count() as u32)
            .collect();
        Rpp::new(heap, labels, height)
    }

    pub fn weight(&self, heap: &Heap, lambda: &Weight) -> Weight {
        let mut w = lambda.scaled(self.height as i64);
        for (x, &v) in self.labels.iter().enumerate() {
            w = w.sub(&heap.diagram.simple_root(heap.runner(x)).scaled(v as i64));
        }
        w
    }

    /// Runner toggle on RPPs: toggle every ideal of the chain, then sum the
    /// indicator functions pointwise. The toggled tuple need not be nested;
    /// the sum is asserted to be a valid RPP.
    pub fn toggle(&self, heap: &Heap, i: usize) -> Rpp {
        let chain = self.to_chain(heap);
        let toggled: Vec<OrderIdeal> =
            chain.0.iter().map(|&s| heap.toggle_runner(i, s)).collect();
        let labels: Vec<u32> = (0..heap.len())
            .map(|x| toggled.iter().filter(|s| s.contains(x)).count() as u32)
            .collect();
        Rpp::new(heap, labels, self.height).expect("toggle sum must be a valid RPP")
    }

    fn chain_stats(heap: &Heap, i: usize, s: OrderIdeal) -> StringStats {
        StringStats {
            epsilon: heap.ideal_e(i, s).is_some() as usize,
            phi: heap.ideal_f(i, s).is_some() as usize,
        }
    }

    /// Lowering operator through the chain embedding: the signature rule over
    /// the n ideal factors picks one, the coset-model operator moves it.
    pub fn f(&self, heap: &Heap, i: usize) -> Option<Rpp> {
        let chain = self.to_chain(heap);
        let stats: Vec<StringStats> =
            chain.0.iter().map(|&s| Self::chain_stats(heap, i, s)).collect();
        let j = tensor_f(&stats)?;
        let mut ideals = chain.0;
        ideals[j] = heap.ideal_f(i, ideals[j]).expect("signature rule picked a dead factor");
        let chain = IdealChain::new(ideals).expect("f must preserve nesting");
        Some(Rpp::from_chain(heap, &chain, self.height).expect("f result must be a valid RPP"))
    }

    /// Raising operator; mirror of [`Rpp::f`].
    pub fn e(&self, heap: &Heap, i: usize) -> Option<Rpp> {
        let chain = self.to_chain(heap);
        let stats: Vec<StringStats> =
            chain.0.iter().map(|&s| Self::chain_stats(heap, i, s)).collect();
        let j = tensor_e(&stats)?;
        let mut ideals = chain.0;
        ideals[j] = heap.ideal_e(i, ideals[j]).expect("signature rule picked a dead factor");
        let chain = IdealChain::new(ideals).expect("e must preserve nesting");
        Some(Rpp::from_chain(heap, &chain, self.height).expect("e result must be a valid RPP"))
    }

    pub fn to_file(&self, heap: &Heap) -> RppFile {
        RppFile {
            word: heap.word().letters().to_vec(),
            height: self.height,
            labels: self.labels.clone(),
        }
    }

    pub fn from_file(diagram: DynkinDiagram, file: &RppFile) -> Result<(Heap, Rpp), HeapError> {
        let heap = Heap::from_word(diagram, WeylWord::new(file.word.clone()));
        let rpp = Rpp::new(&heap, file.labels.clone(), file.height)?;
        Ok((heap, rpp))
    }

    /// Text form: labels in word-position order, comma separated.
    pub fn text(&self) -> String {
        self.labels
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// All RPPs of the given height, lexicographic over a fixed linear extension.
pub fn enumerate_rpps(heap: &Heap, n: u32) -> Vec<Rpp> {
    // positions in increasing heap order; each label is capped by the labels
    // of the elements it covers
    let order: Vec<usize> = (0..heap.len()).rev().collect();
    let mut out = Vec::new();
    let mut labels = vec![0u32; heap.len()];
    fn rec(
        heap: &Heap,
        order: &[usize],
        k: usize,
        n: u32,
        labels: &mut Vec<u32>,
        out: &mut Vec<Rpp>,
    ) {
        match order.get(k) {
            None => out.push(Rpp { labels: labels.clone(), height: n }),
            Some(&x) => {
                let cap = heap.covers[x]
                    .iter()
                    .map(|&y| labels[y])
                    .min()
                    .unwrap_or(n);
                for v in 0..=cap {
                    labels[x] = v;
                    rec(heap, order, k + 1, n, labels, out);
                }
                labels[x] = 0;
            }
        }
    }
    rec(heap, &order, 0, n, &mut labels, &mut out);
    out
}

/// Crystal graph of the order ideals of a minuscule heap.
pub fn ideal_crystal(heap: &Heap, lambda: &Weight) -> CrystalGraph {
    let ideals = heap.order_ideals();
    let index: HashMap<OrderIdeal, usize> =
        ideals.iter().copied().enumerate().map(|(k, s)| (s, k)).collect();
    let weights = ideals.iter().map(|&s| heap.ideal_weight(s, lambda)).collect();
    let labels = ideals
        .iter()
        .map(|s| {
            let members: Vec<String> = s.members().iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let rank = heap.diagram.rank();
    CrystalGraph::from_f_edges(
        *heap.diagram(),
        NodeSet::new(1..=rank),
        weights,
        labels,
        |i, b| heap.ideal_f(i, ideals[b]).map(|t| index[&t]),
    )
}

/// Crystal graph of RPP(heap, n), weights relative to `n * lambda`.
pub fn rpp_crystal(heap: &Heap, n: u32, lambda: &Weight) -> CrystalGraph {
    let rpps = enumerate_rpps(heap, n);
    let index: HashMap<Rpp, usize> =
        rpps.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
    let weights = rpps.iter().map(|r| r.weight(heap, lambda)).collect();
    let labels = rpps.iter().map(|r| r.text()).collect();
    let rank = heap.diagram.rank();
    CrystalGraph::from_f_edges(
        *heap.diagram(),
        NodeSet::new(1..=rank),
        weights,
        labels,
        |i, b| rpps[b].f(heap, i).map(|t| index[&t]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::row_crystal;
    use proptest::prelude::*;

    fn a_chain(rank: usize) -> DynkinDiagram {
        DynkinDiagram::type_a(rank)
    }

    #[test]
    fn heap_shapes_from_words() {
        // (1,3,2,1) in A_3: positions 0 and 1 are incomparable
        let h = Heap::from_word(a_chain(3), WeylWord::new(vec![1, 3, 2, 1]));
        assert!(!h.lt(0, 1) && !h.lt(1, 0));

        // (3,2,1,2) in A_3: a chain of 4
        let h = Heap::from_word(a_chain(3), WeylWord::new(vec![3, 2, 1, 2]));
        for x in 0..4 {
            for y in 0..4 {
                assert!(x == y || h.lt(x, y) || h.lt(y, x));
            }
        }

        let h = Heap::from_word(a_chain(3), WeylWord::new(vec![2]));
        assert_eq!(h.len(), 1);
    }

    #[test]
    fn fibers_totally_ordered_on_reduced_words() {
        let d4 = DynkinDiagram::type_d(4);
        for (d, word) in [
            (d4, vec![1, 2, 3, 4, 2, 1]),
            (a_chain(3), vec![1, 3, 2, 1]),
            (a_chain(4), vec![3, 4, 2, 1, 3, 2]),
        ] {
            let w = WeylWord::new(word);
            assert!(d.is_reduced(&w));
            let h = Heap::from_word(d, w);
            for i in d.nodes() {
                assert!(h.fiber_totally_ordered(i));
            }
        }
        // a non-reduced counterexample: (1,1) has an unordered fiber
        let h = Heap::from_word(a_chain(3), WeylWord::new(vec![1, 1]));
        assert!(!h.fiber_totally_ordered(1));
    }

    #[test]
    fn minuscule_heap_shape() {
        let h = Heap::minuscule(4);
        assert_eq!(h.len(), 6);
        assert_eq!(h.fiber(1).len(), 2);
        assert_eq!(h.fiber(2).len(), 2);
        assert_eq!(h.fiber(3).len(), 1);
        assert_eq!(h.fiber(4).len(), 1);
        // the two middle elements are incomparable, on the spin runners
        let (x, y) = (h.fiber(3)[0], h.fiber(4)[0]);
        assert!(!h.lt(x, y) && !h.lt(y, x));
        assert_eq!(Heap::minuscule(3).len(), 4);
        assert_eq!(h.order_ideals().len(), 8);
    }

    #[test]
    fn minuscule_intervals_are_double_tailed_diamonds() {
        for m in 3..=6 {
            let h = Heap::minuscule(m);
            for i in 1..=m - 2 {
                let fiber = h.fiber(i);
                assert_eq!(fiber.len(), 2);
                let (lo, hi) = (fiber[0], fiber[1]);
                let interval: Vec<usize> =
                    (0..h.len()).filter(|&z| h.leq(lo, z) && h.leq(z, hi)).collect();
                assert_eq!(interval.len(), 2 * (m - i));
                let mut incomparable = Vec::new();
                for &x in &interval {
                    for &y in &interval {
                        if y > x && !h.lt(x, y) && !h.lt(y, x) {
                            incomparable.push((x, y));
                        }
                    }
                }
                assert_eq!(incomparable.len(), 1, "m={m} i={i}");
                let (x, y) = incomparable[0];
                let runners = NodeSet::new([h.runner(x), h.runner(y)]);
                assert_eq!(runners, NodeSet::new([m - 1, m]));
            }
        }
    }

    /// Subset-scan oracle for ideal enumeration, recomputing the order
    /// relation by brute transitive closure.
    fn brute_ideals(d: DynkinDiagram, word: &[usize]) -> Vec<OrderIdeal> {
        let l = word.len();
        let mut lt = vec![vec![false; l]; l];
        for a in 0..l {
            for b in 0..l {
                if a > b && d.adjacent(word[a], word[b]) {
                    lt[a][b] = true;
                }
            }
        }
        loop {
            let mut changed = false;
            for a in 0..l {
                for b in 0..l {
                    if !lt[a][b] && (0..l).any(|c| lt[a][c] && lt[c][b]) {
                        lt[a][b] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = Vec::new();
        for mask in 0u64..(1 << l) {
            let s = OrderIdeal(mask);
            let ok = (0..l).all(|x| {
                !s.contains(x) || (0..l).all(|y| !lt[y][x] || s.contains(y))
            });
            if ok {
                out.push(s);
            }
        }
        out
    }

    #[test]
    fn order_ideals_examples_and_oracle() {
        let empty = Heap::from_word(a_chain(3), WeylWord::new(vec![]));
        assert_eq!(empty.order_ideals(), vec![OrderIdeal::empty()]);

        let chain2 = Heap::from_word(a_chain(3), WeylWord::new(vec![1, 2]));
        assert_eq!(chain2.order_ideals().len(), 3);

        let h = Heap::minuscule(4);
        let mut brute = brute_ideals(*h.diagram(), h.word().letters());
        brute.sort();
        assert_eq!(h.order_ideals(), brute);
    }

    #[test]
    fn ideal_operator_examples() {
        let h = Heap::minuscule(4);
        // only the last s_1 position (index 5) is addable to the empty ideal
        assert_eq!(h.ideal_f(1, OrderIdeal::empty()), Some(OrderIdeal::from_members([5])));
        let full = OrderIdeal::from_members(0..6);
        assert_eq!(h.ideal_f(1, full), None);
        assert_eq!(h.ideal_e(1, OrderIdeal::empty()), None);
    }

    #[test]
    fn ideal_weights() {
        let h = Heap::minuscule(4);
        let lambda = Weight::new(vec![1, 0, 0, 0]);
        assert_eq!(h.ideal_weight(OrderIdeal::empty(), &lambda), lambda);
        let full = OrderIdeal::from_members(0..6);
        assert_eq!(h.ideal_weight(full, &lambda), lambda.neg());
        assert_eq!(
            h.ideal_weight(OrderIdeal::from_members([5]), &lambda),
            Weight::new(vec![0, 1, 0, 0])
        );
    }

    #[test]
    fn ideal_crystal_matches_standard_crystal() {
        let h = Heap::minuscule(4);
        let g = ideal_crystal(&h, &Weight::new(vec![1, 0, 0, 0]));
        let rows = row_crystal(4, 1);
        let map = rows.canonical_iso(&g).unwrap();
        assert_eq!(map.len(), 8);
    }

    #[test]
    fn toggle_element_cases() {
        let h = Heap::minuscule(4);
        let bottom = 5;
        assert_eq!(
            h.toggle_element(bottom, OrderIdeal::empty()),
            OrderIdeal::from_members([bottom])
        );
        // removal illegal while a successor stays in
        let s = OrderIdeal::from_members([5, 4]);
        assert_eq!(h.toggle_element(5, s), s);
        for ideal in h.order_ideals() {
            for x in 0..h.len() {
                assert_eq!(h.toggle_element(x, h.toggle_element(x, ideal)), ideal);
            }
        }
    }

    #[test]
    fn toggle_runner_examples() {
        let h = Heap::minuscule(4);
        // empty fiber comes from a node with no occurrences
        let single = Heap::from_word(*h.diagram(), WeylWord::new(vec![3]));
        assert_eq!(single.toggle_runner(1, OrderIdeal::empty()), OrderIdeal::empty());
        assert_eq!(
            h.toggle_runner(1, OrderIdeal::empty()),
            OrderIdeal::from_members([5])
        );
        assert_eq!(
            single.toggle_runner(3, OrderIdeal::empty()),
            single.toggle_element(0, OrderIdeal::empty())
        );
    }

    fn a4_example_heap_and_rpp() -> (Heap, Rpp) {
        let h = Heap::from_word(a_chain(4), WeylWord::new(vec![3, 4, 2, 1, 3, 2]));
        let rpp = Rpp::new(&h, vec![0, 1, 1, 3, 2, 3], 3).unwrap();
        (h, rpp)
    }

    #[test]
    fn chain_encoding_of_a4_example_rpp() {
        let (h, rpp) = a4_example_heap_and_rpp();
        let chain = rpp.to_chain(&h);
        let sizes: Vec<usize> = chain.ideals().iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![2, 3, 5]);
        assert_eq!(Rpp::from_chain(&h, &chain, 3).unwrap(), rpp);

        let const0 = Rpp::constant(&h, 0, 3);
        assert!(const0.to_chain(&h).ideals().iter().all(|s| s.is_empty()));
        let constn = Rpp::constant(&h, 3, 3);
        assert!(constn.to_chain(&h).ideals().iter().all(|s| s.len() == h.len()));
    }

    #[test]
    fn toggle_on_a4_example_moves_one_bead() {
        let (h, rpp) = a4_example_heap_and_rpp();
        let toggled = rpp.toggle(&h, 3);
        assert_eq!(toggled.labels(), &[1, 1, 1, 3, 2, 3]);
    }

    #[test]
    fn constant_zero_toggle() {
        let h = Heap::minuscule(4);
        let n = 2;
        let const0 = Rpp::constant(&h, 0, n);
        for i in 1..=4 {
            let t = const0.toggle(&h, i);
            let ideal = h.toggle_runner(i, OrderIdeal::empty());
            let expect: Vec<u32> = (0..h.len())
                .map(|x| if ideal.contains(x) { n } else { 0 })
                .collect();
            assert_eq!(t.labels(), expect.as_slice());
        }
    }

    #[test]
    fn rpp_toggles_are_involutions_and_reflect_weight() {
        let lambda = Weight::new(vec![1, 0, 0, 0]);
        for n in 1..=3u32 {
            let h = Heap::minuscule(4);
            let d = *h.diagram();
            for rpp in enumerate_rpps(&h, n) {
                for i in d.nodes() {
                    let t = rpp.toggle(&h, i);
                    assert_eq!(t.toggle(&h, i), rpp);
                    assert_eq!(t.weight(&h, &lambda), d.reflect(i, &rpp.weight(&h, &lambda)));
                }
            }
        }
    }

    #[test]
    fn rpp_counts_and_isomorphism() {
        let h = Heap::minuscule(4);
        assert_eq!(enumerate_rpps(&h, 2).len(), 35);
        let lambda = Weight::new(vec![1, 0, 0, 0]);
        assert_eq!(
            Rpp::constant(&h, 0, 3).weight(&h, &lambda),
            Weight::new(vec![3, 0, 0, 0])
        );
        let g = rpp_crystal(&h, 2, &lambda);
        let rows = row_crystal(4, 2);
        let map = rows.canonical_iso(&g).unwrap();
        assert_eq!(map.len(), 35);
    }

    #[test]
    fn ideal_crystal_agrees_with_height_one_rpps() {
        let h = Heap::minuscule(4);
        let lambda = Weight::new(vec![1, 0, 0, 0]);
        let gi = ideal_crystal(&h, &lambda);
        let gr = rpp_crystal(&h, 1, &lambda);
        assert!(gi.canonical_iso(&gr).is_ok());
    }

    #[test]
    fn rpp_file_roundtrip() {
        let (h, rpp) = a4_example_heap_and_rpp();
        let file = rpp.to_file(&h);
        let json = serde_json::to_string(&file).unwrap();
        let back: RppFile = serde_json::from_str(&json).unwrap();
        let (h2, rpp2) = Rpp::from_file(*h.diagram(), &back).unwrap();
        assert_eq!(h2.word(), h.word());
        assert_eq!(rpp2, rpp);
    }

    #[test]
    fn chain_roundtrip_is_exhaustive() {
        for m in 3..=5 {
            let h = Heap::minuscule(m);
            for n in 1..=3u32 {
                for rpp in enumerate_rpps(&h, n) {
                    let chain = rpp.to_chain(&h);
                    assert_eq!(Rpp::from_chain(&h, &chain, n).unwrap(), rpp);
                }
            }
        }
    }

    #[test]
    fn heap_dot_lists_covers_with_runner_labels() {
        let h = Heap::minuscule(3);
        let dot = h.to_dot();
        for x in 0..h.len() {
            assert!(dot.contains(&format!("p{x} [label=\"s{}\"];", h.runner(x))));
        }
        // word (1,2,3,1): the bottom position 3 is covered by both middles
        assert!(dot.contains("p3 -> p1;") && dot.contains("p3 -> p2;"));
        assert_eq!(h.to_dot(), dot);
    }

    proptest! {
        #[test]
        fn toggles_fix_validity_on_random_rpps(m in 3usize..=5, n in 1u32..=3, seed in 0usize..10_000) {
            let h = Heap::minuscule(m);
            let all = enumerate_rpps(&h, n);
            let rpp = all[seed % all.len()].clone();
            for i in 1..=m {
                // construction would panic if the toggle sum were invalid
                let t = rpp.toggle(&h, i);
                prop_assert_eq!(t.toggle(&h, i), rpp.clone());
            }
        }
    }
}
