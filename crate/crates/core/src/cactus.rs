//! The cactus-group action on crystals.
//!
//! A cactus generator acts on a crystal by the partial Schützenberger
//! involution of a connected subdiagram: restrict, reverse each connected
//! component string-by-string, twisting node labels by the diagram
//! automorphism of the subdiagram. Formal words over cactus generators,
//! toggles, the derived toggle words r_k, and the raising/lowering operators
//! are evaluated right-to-left as partial maps of element indices.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::crystal::CrystalGraph;
use crate::weyl::{NodeSet, WeylError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CactusError {
    #[error("cactus generator needs a connected subdiagram, got {0}")]
    DisconnectedCactus(NodeSet),
    #[error("token {position}: cannot parse \"{text}\"")]
    BadToken { position: usize, text: String },
    #[error("token {position}: node {node} out of range 1..={rank}")]
    TokenNodeOutOfRange { position: usize, node: usize, rank: usize },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// One letter of a formal word acting on a crystal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum GeneratorToken {
    /// c_J for a connected subdiagram J.
    Cactus(NodeSet),
    /// The toggle t_i.
    Toggle(usize),
    /// The derived toggle word r_k, expanded on demand.
    RToggle(usize),
    /// Lowering operator f_i (partial).
    Lower(usize),
    /// Raising operator e_i (partial).
    Raise(usize),
}

impl fmt::Display for GeneratorToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorToken::Cactus(j) => {
                let nodes: Vec<String> = j.iter().map(|x| x.to_string()).collect();
                write!(f, "c{{{}}}", nodes.join(","))
            }
            GeneratorToken::Toggle(i) => write!(f, "t{i}"),
            GeneratorToken::RToggle(k) => write!(f, "r{k}"),
            GeneratorToken::Lower(i) => write!(f, "f{i}"),
            GeneratorToken::Raise(i) => write!(f, "e{i}"),
        }
    }
}

/// Formal word of tokens, applied right-to-left like operator composition.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratorWord(Vec<GeneratorToken>);

impl GeneratorWord {
    pub fn new(tokens: Vec<GeneratorToken>) -> Self {
        GeneratorWord(tokens)
    }

    pub fn tokens(&self) -> &[GeneratorToken] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(words: &[&GeneratorWord]) -> GeneratorWord {
        GeneratorWord(words.iter().flat_map(|w| w.0.iter().cloned()).collect())
    }

    /// Parse the space-separated text syntax, e.g. `c{2,3,4} t1 r2 f3 e1`.
    /// Rejects out-of-range nodes and disconnected sets in `c{..}`.
    pub fn parse(
        text: &str,
        diagram: &crate::weyl::DynkinDiagram,
    ) -> Result<GeneratorWord, CactusError> {
        let mut tokens = Vec::new();
        for (p, tok) in text.split_whitespace().enumerate() {
            let position = p + 1;
            let bad = || CactusError::BadToken { position, text: tok.to_string() };
            let parse_node = |s: &str| -> Result<usize, CactusError> {
                let node: usize = s.parse().map_err(|_| bad())?;
                if node < 1 || node > diagram.rank() {
                    return Err(CactusError::TokenNodeOutOfRange {
                        position,
                        node,
                        rank: diagram.rank(),
                    });
                }
                Ok(node)
            };
            let token = if let Some(body) = tok.strip_prefix("c{").and_then(|s| s.strip_suffix('}')) {
                let mut nodes = Vec::new();
                for part in body.split(',') {
                    nodes.push(parse_node(part.trim())?);
                }
                let j = NodeSet::new(nodes);
                if !diagram.is_connected(&j) {
                    return Err(CactusError::DisconnectedCactus(j));
                }
                GeneratorToken::Cactus(j)
            } else if let Some(rest) = tok.strip_prefix('t') {
                GeneratorToken::Toggle(parse_node(rest)?)
            } else if let Some(rest) = tok.strip_prefix('r') {
                GeneratorToken::RToggle(parse_node(rest)?)
            } else if let Some(rest) = tok.strip_prefix('f') {
                GeneratorToken::Lower(parse_node(rest)?)
            } else if let Some(rest) = tok.strip_prefix('e') {
                GeneratorToken::Raise(parse_node(rest)?)
            } else {
                return Err(bad());
            };
            tokens.push(token);
        }
        Ok(GeneratorWord(tokens))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// The toggle word r_k, expanded to a flat word of toggles:
/// `r_m = t_m`, `r_{m-1} = t_{m-1}`, and
/// `r_k = r_{k+1} t_k r_{k+1} t_k r_{k+1}` below that.
pub fn r_word(rank: usize, k: usize) -> GeneratorWord {
    assert!(k >= 1 && k <= rank, "node {k} out of range");
    if k >= rank - 1 {
        return GeneratorWord(vec![GeneratorToken::Toggle(k)]);
    }
    let inner = r_word(rank, k + 1);
    let t = GeneratorWord(vec![GeneratorToken::Toggle(k)]);
    GeneratorWord::concat(&[&inner, &t, &inner, &t, &inner])
}

/// Partial Schützenberger involution of the connected subdiagram J at one
/// element: walk b up to the highest element of its J-component, then apply
/// the reversed raising path from the lowest element, with nodes twisted by
/// theta_J. Satisfies `wt(xi(b)) = w0J . wt(b)` and intertwines e_i with
/// f_{theta(i)} on the restriction.
pub fn xi(graph: &CrystalGraph, j_set: &NodeSet, b: usize) -> Result<usize, CactusError> {
    if !graph.diagram().is_connected(j_set) {
        return Err(CactusError::DisconnectedCactus(j_set.clone()));
    }
    let restricted = graph.restrict(j_set);
    let theta = graph.diagram().theta(j_set)?;
    let ids = restricted.component_ids();
    let component: Vec<usize> = (0..restricted.len()).filter(|&x| ids[x] == ids[b]).collect();
    let lowest = restricted
        .lowest_of(&component)
        .expect("component of a normal crystal has a unique lowest element");
    let path = restricted.raising_path(b);
    Ok(xi_with_path(&restricted, &theta, lowest, &path)
        .expect("raising path must lift from the lowest element"))
}

/// Core of [`xi`], exposed so path-independence can be probed with arbitrary
/// raising paths: apply `e_{theta(i)}` for the path nodes in reverse order,
/// starting from the lowest element. `None` if a raise dies.
pub fn xi_with_path(
    restricted: &CrystalGraph,
    theta: &BTreeMap<usize, usize>,
    lowest: usize,
    path: &[usize],
) -> Option<usize> {
    let mut cur = lowest;
    for &i in path.iter().rev() {
        cur = restricted.e(theta[&i], cur)?;
    }
    Some(cur)
}

/// Resolved token actions over one crystal: toggles are supplied by the
/// model, cactus permutations are computed from the graph and memoized.
pub struct ActionTable<'g> {
    graph: &'g CrystalGraph,
    toggles: Vec<Vec<usize>>,
    cactus: BTreeMap<NodeSet, Vec<usize>>,
    rtoggles: BTreeMap<usize, Vec<usize>>,
}

/// First disagreement of two words: the least element index where the
/// images differ, with both images (`None` encodes the crystal zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub element: usize,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
}

impl<'g> ActionTable<'g> {
    /// Build with the model's toggle action; `toggle_of(i, b)` must be an
    /// involutive permutation for every node.
    pub fn new(graph: &'g CrystalGraph, toggle_of: impl Fn(usize, usize) -> usize) -> Self {
        let m = graph.diagram().rank();
        let len = graph.len();
        let mut toggles = vec![Vec::new(); m + 1];
        for i in 1..=m {
            let perm: Vec<usize> = (0..len).map(|b| toggle_of(i, b)).collect();
            debug_assert!((0..len).all(|b| perm[perm[b]] == b), "t_{i} is not an involution");
            toggles[i] = perm;
        }
        ActionTable { graph, toggles, cactus: BTreeMap::new(), rtoggles: BTreeMap::new() }
    }

    pub fn graph(&self) -> &CrystalGraph {
        self.graph
    }

    pub fn toggle(&self, i: usize, b: usize) -> usize {
        self.toggles[i][b]
    }

    /// Swap two entries of a toggle permutation. Deliberately corrupts the
    /// table; used by the verification harness to prove it can fail.
    pub fn inject_toggle_fault(&mut self, i: usize, a: usize, b: usize) {
        self.toggles[i].swap(a, b);
    }

    /// The permutation of c_J, memoized per subdiagram.
    pub fn cactus_perm(&mut self, j_set: &NodeSet) -> Result<&[usize], CactusError> {
        if !self.cactus.contains_key(j_set) {
            let perm: Result<Vec<usize>, CactusError> =
                (0..self.graph.len()).map(|b| xi(self.graph, j_set, b)).collect();
            let perm = perm?;
            debug_assert!(
                (0..perm.len()).all(|b| perm[perm[b]] == b),
                "c_{j_set} is not an involution"
            );
            self.cactus.insert(j_set.clone(), perm);
        }
        Ok(self.cactus.get(j_set).unwrap().as_slice())
    }

    fn r_perm(&mut self, k: usize) -> &[usize] {
        if !self.rtoggles.contains_key(&k) {
            let word = r_word(self.graph.diagram().rank(), k);
            let perm: Vec<usize> = (0..self.graph.len())
                .map(|b| {
                    let mut cur = b;
                    for t in word.tokens().iter().rev() {
                        let GeneratorToken::Toggle(i) = t else { unreachable!() };
                        cur = self.toggles[*i][cur];
                    }
                    cur
                })
                .collect();
            self.rtoggles.insert(k, perm);
        }
        self.rtoggles.get(&k).unwrap().as_slice()
    }

    /// Apply one token; `None` is the crystal zero.
    pub fn apply(&mut self, token: &GeneratorToken, b: usize) -> Result<Option<usize>, CactusError> {
        Ok(match token {
            GeneratorToken::Cactus(j) => Some(self.cactus_perm(j)?[b]),
            GeneratorToken::Toggle(i) => Some(self.toggles[*i][b]),
            GeneratorToken::RToggle(k) => Some(self.r_perm(*k)[b]),
            GeneratorToken::Lower(i) => self.graph.f(*i, b),
            GeneratorToken::Raise(i) => self.graph.e(*i, b),
        })
    }

    /// Evaluate a word right-to-left; once a partial token yields zero the
    /// result is zero.
    pub fn evaluate(&mut self, word: &GeneratorWord, b: usize) -> Result<Option<usize>, CactusError> {
        let mut cur = Some(b);
        for token in word.tokens().iter().rev() {
            match cur {
                Some(x) => cur = self.apply(token, x)?,
                None => return Ok(None),
            }
        }
        Ok(cur)
    }

    /// Whole-domain agreement of two words, zero agreeing with zero. On
    /// disagreement returns the least-index counterexample.
    pub fn words_equal(
        &mut self,
        lhs: &GeneratorWord,
        rhs: &GeneratorWord,
    ) -> Result<Option<Counterexample>, CactusError> {
        for b in 0..self.graph.len() {
            let l = self.evaluate(lhs, b)?;
            let r = self.evaluate(rhs, b)?;
            if l != r {
                return Ok(Some(Counterexample { element: b, lhs: l, rhs: r }));
            }
        }
        Ok(None)
    }
}
