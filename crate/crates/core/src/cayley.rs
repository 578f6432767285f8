//! Finite pieces of the Cayley graph and of the hyperplane structure of the
//! standard cube complex.
//!
//! Group elements are named by their canonical geodesic word. A hyperplane
//! dual to `x`-edges is named by the coset `g<lk(x)>` of edges parallel to a
//! given one, via its minimal coset representative.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::word::{self, canonical_form, normalize, Letter, Sign, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("ball of radius {radius} exceeds the budget of {max_elements} elements")]
    BudgetExceeded { radius: usize, max_elements: usize },
    #[error("a hyperplane cannot be tested against itself")]
    SameHyperplane,
}

/// A group element, stored as its canonical word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    rep: Word,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { rep: Word::empty() }
    }

    pub fn from_word(graph: &Graph, word: &Word) -> Result<Self, WordError> {
        Ok(GroupElement {
            rep: canonical_form(graph, word)?,
        })
    }

    pub fn word(&self) -> &Word {
        &self.rep
    }

    /// Distance from the identity.
    pub fn length(&self) -> usize {
        self.rep.len()
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn mul_word(&self, graph: &Graph, word: &Word) -> Result<Self, WordError> {
        GroupElement::from_word(graph, &self.rep.concat(word))
    }

    pub fn mul(&self, graph: &Graph, other: &GroupElement) -> Self {
        self.mul_word(graph, &other.rep)
            .expect("elements of the same graph")
    }

    pub fn mul_letter(&self, graph: &Graph, letter: Letter) -> Self {
        let mut w = self.rep.clone();
        w.push(letter);
        GroupElement::from_word(graph, &w).expect("letter of the same graph")
    }

    pub fn inverse(&self, graph: &Graph) -> Self {
        GroupElement::from_word(graph, &self.rep.inverse()).expect("element of the graph")
    }
}

/// All signed generators, in letter order.
pub fn signed_letters(graph: &Graph) -> Vec<Letter> {
    graph
        .vertices()
        .flat_map(|v| [Letter::pos(v), Letter::neg(v)])
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallBudget {
    pub max_elements: usize,
}

impl Default for BallBudget {
    fn default() -> Self {
        BallBudget {
            max_elements: 2_000_000,
        }
    }
}

/// The elements within a given distance of the identity, with the Cayley
/// edges between them.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    pub radius: usize,
    elements: Vec<GroupElement>,
    depth: Vec<usize>,
    index: HashMap<Word, usize>,
    adjacency: Vec<Vec<(Letter, usize)>>,
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in breadth-first discovery order; the identity comes first.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Breadth-first depth of element `i`.
    pub fn depth(&self, i: usize) -> usize {
        self.depth[i]
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g.word()).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g.word())
    }

    /// Edges `g --x--> gx` leaving element `i` and staying in the ball.
    pub fn neighbours(&self, i: usize) -> &[(Letter, usize)] {
        &self.adjacency[i]
    }

    /// Number of elements at each depth `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius + 1];
        for &d in &self.depth {
            sizes[d] += 1;
        }
        sizes
    }
}

/// Breadth-first enumeration of the ball of the given radius, deduplicating
/// elements by canonical form.
pub fn ball(graph: &Graph, radius: usize, budget: BallBudget) -> Result<CayleyBall, GeometryError> {
    let letters = signed_letters(graph);
    let mut elements = vec![GroupElement::identity()];
    let mut depth = vec![0];
    let mut index = HashMap::from([(Word::empty(), 0)]);
    let mut layer = 0..1;
    for d in 1..=radius {
        let start = elements.len();
        for i in layer.clone() {
            for &x in &letters {
                let next = elements[i].mul_letter(graph, x);
                if !index.contains_key(next.word()) {
                    if elements.len() >= budget.max_elements {
                        return Err(GeometryError::BudgetExceeded {
                            radius,
                            max_elements: budget.max_elements,
                        });
                    }
                    index.insert(next.word().clone(), elements.len());
                    elements.push(next);
                    depth.push(d);
                }
            }
        }
        layer = start..elements.len();
    }
    let adjacency = elements
        .iter()
        .map(|g| {
            letters
                .iter()
                .filter_map(|&x| {
                    let next = g.mul_letter(graph, x);
                    index.get(next.word()).map(|&j| (x, j))
                })
                .collect()
        })
        .collect();
    Ok(CayleyBall {
        radius,
        elements,
        depth,
        index,
        adjacency,
    })
}

/// Word-metric distance between two elements.
pub fn distance(graph: &Graph, u: &GroupElement, v: &GroupElement) -> usize {
    word::geodesic_length(graph, &u.word().inverse().concat(v.word()))
        .expect("elements of the same graph")
}

/// The shortest element of the coset `x<s>`.
///
/// Any letter with vertex in `s` that can be shuffled to the end of the
/// geodesic is stripped off; this repeats until none is left.
pub fn coset_min_rep(graph: &Graph, x: &GroupElement, s: VertexSet) -> GroupElement {
    let mut letters = x.word().letters().to_vec();
    'strip: loop {
        for p in (0..letters.len()).rev() {
            let v = letters[p].vertex;
            if s.contains(v)
                && letters[p + 1..]
                    .iter()
                    .all(|l| word::commute(graph, l.vertex, v))
            {
                letters.remove(p);
                continue 'strip;
            }
        }
        break;
    }
    GroupElement::from_word(graph, &Word::new(letters)).expect("element of the graph")
}

/// Whether `x` lies in the coset `base<s>`.
pub fn in_coset(graph: &Graph, x: &GroupElement, base: &GroupElement, s: VertexSet) -> bool {
    normalize(graph, &base.word().inverse().concat(x.word()))
        .expect("elements of the same graph")
        .word
        .support()
        .is_subset(s)
}

/// A hyperplane of the standard complex: the one dual to the `label`-edge at
/// `base`, where `base` is the minimal representative of `base<lk(label)>`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperplaneId {
    pub base: GroupElement,
    pub label: Vertex,
}

impl HyperplaneId {
    pub fn display(&self, graph: &Graph) -> String {
        format!(
            "({}, {})",
            self.base.word().display(graph),
            graph.name(self.label)
        )
    }
}

/// The hyperplane dual to the edge from `from` to `from * x`.
pub fn hyperplane_id(graph: &Graph, from: &GroupElement, x: Vertex) -> HyperplaneId {
    HyperplaneId {
        base: coset_min_rep(graph, from, graph.link(x)),
        label: x,
    }
}

/// The hyperplane dual to the edge leaving `at` along `letter`. An inverse
/// letter traverses the edge from `at * x^-1` to `at` backwards.
pub fn edge_hyperplane(graph: &Graph, at: &GroupElement, letter: Letter) -> HyperplaneId {
    match letter.sign {
        Sign::Pos => hyperplane_id(graph, at, letter.vertex),
        Sign::Neg => hyperplane_id(graph, &at.mul_letter(graph, letter), letter.vertex),
    }
}

/// Which half-space of `h` contains `p`: [`Sign::Neg`] for the side of
/// `h.base`, [`Sign::Pos`] for the side of `h.base * h.label`.
pub fn side(graph: &Graph, p: &GroupElement, h: &HyperplaneId) -> Sign {
    let near = distance(graph, p, &h.base);
    let far = distance(graph, p, &h.base.mul_letter(graph, Letter::pos(h.label)));
    debug_assert_eq!(near.abs_diff(far), 1);
    if near < far {
        Sign::Neg
    } else {
        Sign::Pos
    }
}

/// Hyperplanes crossed by the path that reads the geodesic `w` from `base`.
pub fn crossings(
    graph: &Graph,
    base: &GroupElement,
    w: &Word,
) -> Result<Vec<HyperplaneId>, GeometryError> {
    if !word::is_geodesic(graph, w)? {
        return Err(WordError::NotGeodesic.into());
    }
    let mut at = base.clone();
    let mut out = Vec::with_capacity(w.len());
    for &x in w.iter() {
        out.push(edge_hyperplane(graph, &at, x));
        at = at.mul_letter(graph, x);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossingSearch {
    /// A square at `at` has one edge dual to each hyperplane.
    Found { at: GroupElement },
    /// No such square in the searched ball; says nothing beyond it.
    NotFoundWithinRadius,
}

/// Searches the ball of radius `search_radius` for a square whose two
/// midcubes lie on `h1` and `h2`.
pub fn hyperplanes_cross(
    graph: &Graph,
    h1: &HyperplaneId,
    h2: &HyperplaneId,
    search_radius: usize,
) -> Result<CrossingSearch, GeometryError> {
    if h1 == h2 {
        return Err(GeometryError::SameHyperplane);
    }
    let space = ball(graph, search_radius, BallBudget::default())?;
    if !graph.adjacent(h1.label, h2.label) {
        return Ok(CrossingSearch::NotFoundWithinRadius);
    }
    for p in space.elements() {
        let dual_to = |h: &HyperplaneId| {
            [Letter::pos(h.label), Letter::neg(h.label)]
                .into_iter()
                .any(|x| edge_hyperplane(graph, p, x) == *h)
        };
        if dual_to(h1) && dual_to(h2) {
            return Ok(CrossingSearch::Found { at: p.clone() });
        }
    }
    Ok(CrossingSearch::NotFoundWithinRadius)
}

/// Graphviz rendering of a ball. Each undirected edge is drawn once and
/// coloured by the hyperplane it is dual to.
pub fn ball_to_dot(graph: &Graph, ball: &CayleyBall) -> String {
    const PALETTE: [&str; 10] = [
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
        "#bcbd22", "#17becf",
    ];
    let mut colours: HashMap<HyperplaneId, usize> = HashMap::new();
    let mut out = String::from("graph cayley_ball {\n  node [shape=circle, fontsize=9];\n");
    for (i, g) in ball.elements().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", g.word().display(graph));
    }
    for (i, g) in ball.elements().iter().enumerate() {
        for &(x, j) in ball.neighbours(i) {
            if x.sign != Sign::Pos {
                continue;
            }
            let h = hyperplane_id(graph, g, x.vertex);
            let next = colours.len();
            let colour = *colours.entry(h).or_insert(next);
            let _ = writeln!(
                out,
                "  n{i} -- n{j} [label=\"{}\", color=\"{}\"];",
                graph.name(x.vertex),
                PALETTE[colour % PALETTE.len()]
            );
        }
    }
    out.push_str("}\n");
    out
}
