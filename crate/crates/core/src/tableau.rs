//! One-row tableaux over the type D alphabet.
//!
//! Letters are signed integers: `+i` is the filling `i`, `-i` the barred
//! filling. The order is `1 < 2 < ... < m-1 < {m, m-bar} < -(m-1) < ... < -1`
//! with `m` and `m-bar` incomparable; a valid row is weakly increasing and
//! never contains both `m` and `-m`. Rows model the crystal of highest weight
//! `n·w1` through the tensor embedding box-by-box.

use std::fmt;

use thiserror::Error;

use crate::crystal::{tensor_e, tensor_f, CrystalGraph, StringStats};
use crate::weyl::{DynkinDiagram, NodeSet, Weight};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableauError {
    #[error("entry {position}: invalid letter {value} for rank {rank}")]
    InvalidLetter { position: usize, value: i64, rank: usize },
    #[error("entry {position}: \"{text}\" is not an integer")]
    NotAnInteger { position: usize, text: String },
    #[error("entry {position}: row is not weakly increasing")]
    OutOfOrder { position: usize },
    #[error("entries {first} and {second}: {rank} and -{rank} cannot both appear")]
    SpinPair { first: usize, second: usize, rank: usize },
}

/// A letter of the alphabet: value in `{1..m}` or `{-m..-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(value: i32, rank: usize) -> Result<Letter, TableauError> {
        if value == 0 || value.unsigned_abs() as usize > rank {
            return Err(TableauError::InvalidLetter { position: 0, value: value as i64, rank });
        }
        Ok(Letter(value))
    }

    pub fn value(&self) -> i32 {
        self.0
    }

    pub fn is_barred(&self) -> bool {
        self.0 < 0
    }

    pub fn index(&self) -> usize {
        self.0.unsigned_abs() as usize
    }

    /// Sort key: unbarred i at i, barred i at 2m+1-i. The incomparable pair
    /// {m, -m} sits at positions m, m+1; comparison treats it specially.
    pub fn position(&self, rank: usize) -> usize {
        if self.is_barred() {
            2 * rank + 1 - self.index()
        } else {
            self.index()
        }
    }

    /// The partial order on letters: total except for {m, -m}.
    pub fn cmp_in(&self, other: &Letter, rank: usize) -> Option<std::cmp::Ordering> {
        if self.index() == rank && other.index() == rank && self.0 != other.0 {
            return None;
        }
        Some(self.position(rank).cmp(&other.position(rank)))
    }

    pub fn weight(&self, rank: usize) -> Weight {
        let mut v = vec![0i64; rank];
        v[self.index() - 1] = if self.is_barred() { -1 } else { 1 };
        Weight::new(v)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Crystal operator f_i on single letters: exactly the edges of the standard
/// crystal. For i <= m-2: i -> i+1 and -(i+1) -> -i. The two spin operators:
/// f_{m-1}: m-1 -> m, -m -> -(m-1); f_m: m-1 -> -m, m -> -(m-1).
pub fn std_f(rank: usize, i: usize, x: Letter) -> Option<Letter> {
    assert!(i >= 1 && i <= rank, "node {i} out of range");
    let m = rank as i32;
    let v = x.value();
    let out = if (i as i32) < m - 1 {
        let i = i as i32;
        if v == i {
            i + 1
        } else if v == -(i + 1) {
            -i
        } else {
            return None;
        }
    } else if i as i32 == m - 1 {
        if v == m - 1 {
            m
        } else if v == -m {
            -(m - 1)
        } else {
            return None;
        }
    } else {
        if v == m - 1 {
            -m
        } else if v == m {
            -(m - 1)
        } else {
            return None;
        }
    };
    Some(Letter(out))
}

/// Inverse of [`std_f`].
pub fn std_e(rank: usize, i: usize, x: Letter) -> Option<Letter> {
    assert!(i >= 1 && i <= rank, "node {i} out of range");
    let m = rank as i32;
    let v = x.value();
    let out = if (i as i32) < m - 1 {
        let i = i as i32;
        if v == i + 1 {
            i
        } else if v == -i {
            -(i + 1)
        } else {
            return None;
        }
    } else if i as i32 == m - 1 {
        if v == m {
            m - 1
        } else if v == -(m - 1) {
            -m
        } else {
            return None;
        }
    } else {
        if v == -m {
            m - 1
        } else if v == -(m - 1) {
            m
        } else {
            return None;
        }
    };
    Some(Letter(out))
}

/// String statistics of one letter; every string in the standard crystal has
/// length at most one.
pub fn letter_stats(rank: usize, i: usize, x: Letter) -> StringStats {
    StringStats {
        epsilon: std_e(rank, i, x).is_some() as usize,
        phi: std_f(rank, i, x).is_some() as usize,
    }
}

/// Multiplicity window around k: counts of the fillings k, k+1, k+2 and the
/// barred counterparts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LetterCounts {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub cbar: usize,
    pub bbar: usize,
    pub abar: usize,
}

/// Weakly increasing row of letters, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowTableau {
    rank: usize,
    entries: Vec<Letter>,
}

impl RowTableau {
    /// Validates order and the spin-pair exclusion; entries must already be
    /// weakly increasing.
    pub fn new(rank: usize, entries: Vec<Letter>) -> Result<Self, TableauError> {
        for (p, x) in entries.iter().enumerate() {
            if x.value() == 0 || x.index() > rank {
                return Err(TableauError::InvalidLetter {
                    position: p + 1,
                    value: x.value() as i64,
                    rank,
                });
            }
        }
        for p in 1..entries.len() {
            let prev = entries[p - 1];
            let cur = entries[p];
            match prev.cmp_in(&cur, rank) {
                Some(std::cmp::Ordering::Greater) => {
                    return Err(TableauError::OutOfOrder { position: p + 1 })
                }
                None => {
                    // adjacent m, -m: report as the spin pair it is
                    let first = entries.iter().position(|x| x.index() == rank).unwrap() + 1;
                    return Err(TableauError::SpinPair { first, second: p + 1, rank });
                }
                _ => {}
            }
        }
        let row = RowTableau { rank, entries };
        row.check_spin_pair()?;
        Ok(row)
    }

    fn check_spin_pair(&self) -> Result<(), TableauError> {
        let m = self.rank as i32;
        let plus = self.entries.iter().position(|x| x.value() == m);
        let minus = self.entries.iter().position(|x| x.value() == -m);
        if let (Some(p), Some(q)) = (plus, minus) {
            return Err(TableauError::SpinPair { first: p + 1, second: q + 1, rank: self.rank });
        }
        Ok(())
    }

    fn from_unsorted(rank: usize, mut entries: Vec<Letter>) -> Result<Self, TableauError> {
        entries.sort_by_key(|x| x.position(rank));
        RowTableau::new(rank, entries)
    }

    /// Parse the comma-separated text form, e.g. `1,2,-3`. Empty input is the
    /// empty row. Errors carry the 1-based entry position.
    pub fn parse(rank: usize, text: &str) -> Result<Self, TableauError> {
        let text = text.trim();
        if text.is_empty() {
            return RowTableau::new(rank, Vec::new());
        }
        let mut entries = Vec::new();
        for (p, tok) in text.split(',').enumerate() {
            let tok = tok.trim();
            let v: i32 = tok.parse().map_err(|_| TableauError::NotAnInteger {
                position: p + 1,
                text: tok.to_string(),
            })?;
            if v == 0 || v.unsigned_abs() as usize > rank {
                return Err(TableauError::InvalidLetter {
                    position: p + 1,
                    value: v as i64,
                    rank,
                });
            }
            entries.push(Letter(v));
        }
        RowTableau::new(rank, entries)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn height(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Letter] {
        &self.entries
    }

    /// Sum of the letter weights.
    pub fn weight(&self) -> Weight {
        let mut w = Weight::zero(self.rank);
        for x in &self.entries {
            w = w.add(&x.weight(self.rank));
        }
        w
    }

    fn stats(&self, i: usize) -> Vec<StringStats> {
        self.entries.iter().map(|&x| letter_stats(self.rank, i, x)).collect()
    }

    /// Lowering operator through the tensor embedding: the signature rule
    /// picks the box, the standard crystal moves it, and the row is re-sorted.
    pub fn f(&self, i: usize) -> Option<RowTableau> {
        let j = tensor_f(&self.stats(i))?;
        let mut entries = self.entries.clone();
        entries[j] = std_f(self.rank, i, entries[j]).expect("signature rule picked a dead box");
        Some(
            RowTableau::from_unsorted(self.rank, entries)
                .expect("f produced an invalid row"),
        )
    }

    /// Raising operator; mirror of [`RowTableau::f`].
    pub fn e(&self, i: usize) -> Option<RowTableau> {
        let j = tensor_e(&self.stats(i))?;
        let mut entries = self.entries.clone();
        entries[j] = std_e(self.rank, i, entries[j]).expect("signature rule picked a dead box");
        Some(
            RowTableau::from_unsorted(self.rank, entries)
                .expect("e produced an invalid row"),
        )
    }

    fn letter_counts(&self) -> (Vec<usize>, Vec<usize>) {
        let mut un = vec![0usize; self.rank + 1];
        let mut bar = vec![0usize; self.rank + 1];
        for x in &self.entries {
            if x.is_barred() {
                bar[x.index()] += 1;
            } else {
                un[x.index()] += 1;
            }
        }
        (un, bar)
    }

    fn from_counts(rank: usize, un: &[usize], bar: &[usize]) -> RowTableau {
        let mut entries = Vec::new();
        for i in 1..=rank {
            entries.extend(std::iter::repeat(Letter(i as i32)).take(un[i]));
        }
        for i in (1..=rank).rev() {
            entries.extend(std::iter::repeat(Letter(-(i as i32))).take(bar[i]));
        }
        RowTableau::new(rank, entries).expect("counts produced an invalid row")
    }

    /// The toggle t_i as a multiplicity operation.
    ///
    /// For i <= m-2 it swaps the multiplicities of i and i+1 and of their
    /// bars. t_{m-1} swaps m-1 with m and their bars, t_m interchanges m-1
    /// with -m and m with -(m-1); both then replace {m, -m} pairs with
    /// {m-1, -(m-1)} pairs until none remain. Total involution.
    pub fn toggle(&self, i: usize) -> RowTableau {
        let m = self.rank;
        assert!(i >= 1 && i <= m, "node {i} out of range");
        let (mut un, mut bar) = self.letter_counts();
        if i <= m - 2 {
            un.swap(i, i + 1);
            bar.swap(i, i + 1);
        } else if i == m - 1 {
            un.swap(m - 1, m);
            bar.swap(m - 1, m);
        } else {
            let (a, b) = (un[m - 1], bar[m]);
            un[m - 1] = b;
            bar[m] = a;
            let (a, b) = (un[m], bar[m - 1]);
            un[m] = b;
            bar[m - 1] = a;
        }
        if i >= m - 1 {
            while un[m] > 0 && bar[m] > 0 {
                un[m] -= 1;
                bar[m] -= 1;
                un[m - 1] += 1;
                bar[m - 1] += 1;
            }
        }
        RowTableau::from_counts(m, &un, &bar)
    }

    /// Extract the six-count window at k (needs 1 <= k <= m-2).
    pub fn window_counts(&self, k: usize) -> LetterCounts {
        assert!(k >= 1 && k <= self.rank - 2, "window base {k} out of range");
        let (un, bar) = self.letter_counts();
        LetterCounts {
            a: un[k],
            b: un[k + 1],
            c: un[k + 2],
            cbar: bar[k + 2],
            bbar: bar[k + 1],
            abar: bar[k],
        }
    }

    /// Rebuild the row with the window at k replaced, everything else kept.
    /// Fails only if the new window reintroduces the spin pair.
    pub fn replace_window(&self, k: usize, counts: &LetterCounts) -> Result<RowTableau, TableauError> {
        assert!(k >= 1 && k <= self.rank - 2, "window base {k} out of range");
        let (mut un, mut bar) = self.letter_counts();
        un[k] = counts.a;
        un[k + 1] = counts.b;
        un[k + 2] = counts.c;
        bar[k + 2] = counts.cbar;
        bar[k + 1] = counts.bbar;
        bar[k] = counts.abar;
        let mut entries = Vec::new();
        for i in 1..=self.rank {
            entries.extend(std::iter::repeat(Letter(i as i32)).take(un[i]));
        }
        for i in (1..=self.rank).rev() {
            entries.extend(std::iter::repeat(Letter(-(i as i32))).take(bar[i]));
        }
        RowTableau::new(self.rank, entries)
    }
}

impl fmt::Display for RowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// All valid rows of height n, in lexicographic order of the sort keys.
/// The count equals the dimension of the irreducible with highest weight n·w1.
pub fn enumerate_rows(rank: usize, n: usize) -> Vec<RowTableau> {
    assert!(rank >= 3, "rank must be >= 3");
    let positions = 2 * rank;
    let letter_at = |p: usize| -> Letter {
        if p <= rank {
            Letter(p as i32)
        } else {
            Letter(-((2 * rank + 1 - p) as i32))
        }
    };
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    // nondecreasing position sequences of length n, skipping {m, m+1} together
    fn rec(
        rank: usize,
        positions: usize,
        n: usize,
        start: usize,
        stack: &mut Vec<usize>,
        letter_at: &impl Fn(usize) -> Letter,
        out: &mut Vec<RowTableau>,
    ) {
        if stack.len() == n {
            let entries: Vec<Letter> = stack.iter().map(|&p| letter_at(p)).collect();
            out.push(RowTableau { rank, entries });
            return;
        }
        for p in start..=positions {
            if p == rank + 1 && stack.contains(&rank) {
                continue; // m and m-bar never appear together
            }
            stack.push(p);
            rec(rank, positions, n, p, stack, letter_at, out);
            stack.pop();
        }
    }
    rec(rank, positions, n, 1, &mut stack, &letter_at, &mut out);
    out
}

/// The crystal graph of all rows of height n, edges from the row operators.
pub fn row_crystal(rank: usize, n: usize) -> CrystalGraph {
    let diagram = DynkinDiagram::type_d(rank);
    let rows = enumerate_rows(rank, n);
    let index: std::collections::HashMap<RowTableau, usize> =
        rows.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let weights = rows.iter().map(|r| r.weight()).collect();
    let labels = rows.iter().map(|r| r.to_string()).collect();
    CrystalGraph::from_f_edges(diagram, NodeSet::new(1..=rank), weights, labels, |i, b| {
        rows[b].f(i).map(|t| index[&t])
    })
}
