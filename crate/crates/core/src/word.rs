//! Words over the signed generators of a right-angled Artin group and the
//! deletion calculus on them.
//!
//! A word is reduced by repeatedly cancelling a pair `x ... x^-1` whose
//! intervening letters all commute with `x`. A word admitting no such pair is
//! geodesic, so this gives both the word problem and geodesic length. Every
//! run of deletions is recorded in a [`DeletionTrace`]; for a word that
//! represents the identity the recorded pairs form a perfect matching of its
//! positions (the bands of a van Kampen diagram for the loop).

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

/// Length bound used by [`all_geodesic_words`] unless a caller asks otherwise.
pub const DEFAULT_GEODESIC_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter refers to vertex #{0}, which is not in the graph")]
    UnknownVertex(usize),
    #[error("word is not geodesic")]
    NotGeodesic,
    #[error("word does not represent the identity")]
    NotIdentity,
    #[error("geodesic length {len} exceeds the enumeration bound {bound}")]
    LengthBound { len: usize, bound: usize },
    #[error("the two paths do not have the same endpoints")]
    UnequalElements,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A generator or its inverse. Ordered by vertex, then `+` before `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub vertex: Vertex,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(vertex: Vertex) -> Self {
        Letter {
            vertex,
            sign: Sign::Pos,
        }
    }

    pub fn neg(vertex: Vertex) -> Self {
        Letter {
            vertex,
            sign: Sign::Neg,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            vertex: self.vertex,
            sign: self.sign.flip(),
        }
    }

    pub fn is_positive(self) -> bool {
        self.sign == Sign::Pos
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// `x^n` for a vertex `x` and `n >= 0`.
    pub fn power(x: Vertex, n: usize) -> Self {
        Word(vec![Letter::pos(x); n])
    }

    /// The all-positive word spelling out `vertices`.
    pub fn positive(vertices: &[Vertex]) -> Self {
        Word(vertices.iter().copied().map(Letter::pos).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Reverses the order and flips every sign.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| l.is_positive())
    }

    /// Vertices labelling the letters of the word.
    pub fn support(&self) -> VertexSet {
        self.0.iter().map(|l| l.vertex).collect()
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a Word, &'a Graph);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_empty() {
                    return f.write_str("*");
                }
                for (i, l) in self.0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    f.write_str(self.1.name(l.vertex))?;
                    if l.sign == Sign::Neg {
                        f.write_str("^-1")?;
                    }
                }
                Ok(())
            }
        }
        Show(self, graph)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Letters commute when they share a vertex or their vertices are adjacent.
pub fn commute(graph: &Graph, x: Vertex, y: Vertex) -> bool {
    x == y || graph.adjacent(x, y)
}

pub fn validate(graph: &Graph, word: &Word) -> Result<(), WordError> {
    match word
        .iter()
        .find(|l| l.vertex.index() >= graph.vertex_count())
    {
        Some(l) => Err(WordError::UnknownVertex(l.vertex.index())),
        None => Ok(()),
    }
}

/// Record of a reduction. Positions index the original word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DeletionTrace {
    /// Deleted pairs `(i, j)` with `i < j`, in the order they were deleted.
    pub deletions: Vec<(usize, usize)>,
    /// `survivors[k]` is the original position of letter `k` of the result.
    pub survivors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub word: Word,
    pub trace: DeletionTrace,
}

/// Reduces `word` to a geodesic by deletions.
///
/// Deletions are performed in order of the right letter's position, and for
/// each right letter the nearest admissible partner is taken. Scanning left
/// to right with the surviving prefix on a stack realises exactly this order:
/// the surviving prefix never admits a deletion, and removing a deleted
/// partner from it cannot create one, since that partner commutes with every
/// later survivor.
pub fn normalize(graph: &Graph, word: &Word) -> Result<Normalized, WordError> {
    validate(graph, word)?;
    let mut stack: Vec<(Letter, usize)> = Vec::with_capacity(word.len());
    let mut deletions = Vec::new();
    for (j, &x) in word.iter().enumerate() {
        let inverse = x.inverse();
        let mut partner = None;
        for k in (0..stack.len()).rev() {
            let y = stack[k].0;
            if y == inverse {
                partner = Some(k);
                break;
            }
            if y.vertex == x.vertex || !graph.adjacent(y.vertex, x.vertex) {
                break;
            }
        }
        match partner {
            Some(k) => {
                let (_, i) = stack.remove(k);
                deletions.push((i, j));
            }
            None => stack.push((x, j)),
        }
    }
    let (letters, survivors) = stack.into_iter().unzip();
    Ok(Normalized {
        word: Word(letters),
        trace: DeletionTrace {
            deletions,
            survivors,
        },
    })
}

/// Geodesic length of the element represented by `word`.
pub fn geodesic_length(graph: &Graph, word: &Word) -> Result<usize, WordError> {
    Ok(normalize(graph, word)?.word.len())
}

pub fn is_geodesic(graph: &Graph, word: &Word) -> Result<bool, WordError> {
    Ok(normalize(graph, word)?.trace.deletions.is_empty())
}

pub fn equals(graph: &Graph, w1: &Word, w2: &Word) -> Result<bool, WordError> {
    Ok(normalize(graph, &w1.concat(&w2.inverse()))?.word.is_empty())
}

/// Position of the first occurrence of `x` that every earlier letter of the
/// geodesic `word` commutes with.
fn frontable_position(graph: &Graph, word: &[Letter], x: Letter) -> Option<usize> {
    let star = graph.star(x.vertex);
    let mut seen = VertexSet::EMPTY;
    for (p, &y) in word.iter().enumerate() {
        if y == x {
            return Some(p);
        }
        seen.insert(y.vertex);
        if !seen.is_subset(star) {
            return None;
        }
    }
    None
}

/// The lexicographically least geodesic representative of the element.
///
/// Built greedily: at every step emit the least letter that can be brought
/// to the front of what remains.
pub fn canonical_form(graph: &Graph, word: &Word) -> Result<Word, WordError> {
    let mut rest = normalize(graph, word)?.word.into_letters();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut seen = VertexSet::EMPTY;
        let mut best: Option<(Letter, usize)> = None;
        for (p, &x) in rest.iter().enumerate() {
            if seen.is_subset(graph.star(x.vertex)) && best.is_none_or(|(b, _)| x < b) {
                best = Some((x, p));
            }
            seen.insert(x.vertex);
        }
        let (x, p) = best.expect("the first letter is always frontable");
        out.push(x);
        rest.remove(p);
    }
    Ok(Word(out))
}

/// A rearrangement of the geodesic `word` beginning with `x`, if one exists.
pub fn rearrange_front(graph: &Graph, word: &Word, x: Letter) -> Result<Option<Word>, WordError> {
    if !is_geodesic(graph, word)? {
        return Err(WordError::NotGeodesic);
    }
    Ok(frontable_position(graph, word, x).map(|p| {
        let mut letters = Vec::with_capacity(word.len());
        letters.push(x);
        letters.extend_from_slice(&word[..p]);
        letters.extend_from_slice(&word[p + 1..]);
        Word(letters)
    }))
}

/// Every geodesic word representing the same element as `word`, found by
/// breadth-first search over swaps of adjacent commuting letters.
pub fn all_geodesic_words(
    graph: &Graph,
    word: &Word,
    bound: usize,
) -> Result<BTreeSet<Word>, WordError> {
    let start = normalize(graph, word)?.word;
    if start.len() > bound {
        return Err(WordError::LengthBound {
            len: start.len(),
            bound,
        });
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(w) = queue.pop_front() {
        for i in 1..w.len() {
            let (x, y) = (w[i - 1], w[i]);
            if x.vertex != y.vertex && graph.adjacent(x.vertex, y.vertex) {
                let mut swapped = w.clone();
                swapped.0.swap(i - 1, i);
                if seen.insert(swapped.clone()) {
                    queue.push_back(swapped);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Pairs up the positions of a null-homotopic loop into mutually inverse
/// letters, in deletion order.
pub fn band_matching(graph: &Graph, loop_word: &Word) -> Result<Vec<(usize, usize)>, WordError> {
    let reduced = normalize(graph, loop_word)?;
    if !reduced.word.is_empty() {
        return Err(WordError::NotIdentity);
    }
    Ok(reduced.trace.deletions)
}

/// The six paths splitting two geodesic bigons `(a1, a2)`, `(b1, b2)`:
/// `a1 ~ gamma1 tau1`, `b1 ~ gamma1 delta1`, `a2 ~ delta2 gamma2` and
/// `b2 ~ tau2 gamma2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondDecomposition {
    pub gamma1: Word,
    pub tau1: Word,
    pub delta1: Word,
    pub gamma2: Word,
    pub tau2: Word,
    pub delta2: Word,
}

/// Splits the loop `a1 a2 b2^-1 b1^-1` along its band matching.
///
/// Every band joins an `a`-letter to a `b`-letter, since both sides are
/// geodesic. `gamma1` collects the `a1` letters whose band ends on `b1`,
/// `tau1` those ending on `b2`, `delta1` the `b1` letters whose band ends on
/// `a2`, and `gamma2` the `a2` letters ending on `b2`, each in the order of
/// its own side. Bands that cross join commuting letters, which is why the
/// side orders agree up to commutation and `tau2`, `delta2` can reuse the
/// label sequences of `tau1`, `delta1`.
pub fn diamond(
    graph: &Graph,
    a1: &Word,
    a2: &Word,
    b1: &Word,
    b2: &Word,
) -> Result<DiamondDecomposition, WordError> {
    let alpha = a1.concat(a2);
    let beta = b1.concat(b2);
    if !is_geodesic(graph, &alpha)? || !is_geodesic(graph, &beta)? {
        return Err(WordError::NotGeodesic);
    }
    let loop_word = alpha.concat(&beta.inverse());
    let matching = band_matching(graph, &loop_word).map_err(|e| match e {
        WordError::NotIdentity => WordError::UnequalElements,
        e => e,
    })?;

    #[derive(Clone, Copy, PartialEq, Eq)]
    enum Side {
        A1,
        A2,
        B1,
        B2,
    }
    let (k1, k2, m2) = (a1.len(), a2.len(), b2.len());
    let n = loop_word.len();
    // loop position -> (side, index within that side's own word)
    let locate = |p: usize| -> (Side, usize) {
        if p < k1 {
            (Side::A1, p)
        } else if p < k1 + k2 {
            (Side::A2, p - k1)
        } else if p < k1 + k2 + m2 {
            (Side::B2, m2 - 1 - (p - k1 - k2))
        } else {
            (Side::B1, n - 1 - p)
        }
    };
    let mut partner_side = vec![None; n];
    for &(i, j) in &matching {
        partner_side[i] = Some(locate(j).0);
        partner_side[j] = Some(locate(i).0);
    }
    let mut a1_partner = vec![Side::A1; k1];
    let mut a2_partner = vec![Side::A1; k2];
    let mut b1_partner = vec![Side::A1; b1.len()];
    for (p, side) in partner_side.into_iter().enumerate() {
        let side = side.expect("band matching is perfect");
        match locate(p) {
            (Side::A1, i) => a1_partner[i] = side,
            (Side::A2, i) => a2_partner[i] = side,
            (Side::B1, i) => b1_partner[i] = side,
            (Side::B2, _) => {}
        }
    }
    let pick = |word: &Word, partners: &[Side], want: Side| -> Word {
        word.iter()
            .zip(partners)
            .filter(|(_, &s)| s == want)
            .map(|(&l, _)| l)
            .collect()
    };
    let gamma1 = pick(a1, &a1_partner, Side::B1);
    let tau1 = pick(a1, &a1_partner, Side::B2);
    let delta1 = pick(b1, &b1_partner, Side::A2);
    let gamma2 = pick(a2, &a2_partner, Side::B2);
    Ok(DiamondDecomposition {
        tau2: tau1.clone(),
        delta2: delta1.clone(),
        gamma1,
        tau1,
        delta1,
        gamma2,
    })
}

impl DiamondDecomposition {
    /// Names of the decomposition properties that fail for the given
    /// bigons; empty when the decomposition is valid.
    pub fn violations(
        &self,
        graph: &Graph,
        a1: &Word,
        a2: &Word,
        b1: &Word,
        b2: &Word,
    ) -> Result<Vec<&'static str>, WordError> {
        let mut out = Vec::new();
        if self.tau1 != self.tau2 {
            out.push("tau-labels-differ");
        }
        if self.delta1 != self.delta2 {
            out.push("delta-labels-differ");
        }
        let (t, d) = (self.tau1.support(), self.delta1.support());
        if !t.intersection(d).is_empty() {
            out.push("tau-delta-not-disjoint");
        }
        if t.iter().any(|x| d.iter().any(|y| !graph.adjacent(x, y))) {
            out.push("tau-delta-do-not-commute");
        }
        let geodesic_equal = |p: &Word, q: &Word, target: &Word| -> Result<bool, WordError> {
            let w = p.concat(q);
            Ok(w.len() == target.len() && equals(graph, &w, target)?)
        };
        if !geodesic_equal(&self.gamma1, &self.tau1, a1)? {
            out.push("gamma1-tau1-not-a1");
        }
        if !geodesic_equal(&self.gamma1, &self.delta1, b1)? {
            out.push("gamma1-delta1-not-b1");
        }
        if !geodesic_equal(&self.delta2, &self.gamma2, a2)? {
            out.push("delta2-gamma2-not-a2");
        }
        if !geodesic_equal(&self.tau2, &self.gamma2, b2)? {
            out.push("tau2-gamma2-not-b2");
        }
        if !is_geodesic(graph, &self.tau1.inverse().concat(&self.delta1))? {
            out.push("tau1-inverse-delta1-not-geodesic");
        }
        if !is_geodesic(graph, &self.delta2.concat(&self.tau2.inverse()))? {
            out.push("delta2-tau2-inverse-not-geodesic");
        }
        Ok(out)
    }
}
