//! Presentation graphs and the graph-theoretic predicates used by the
//! boundary criterion: links, separators, induced paths on four vertices and
//! the join/union (cograph) decomposition.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Largest number of vertices a [`Graph`] may have. Vertex sets are `u64`
/// bitmasks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("empty vertex name")]
    EmptyName,
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex `{0}` lies in the separator")]
    VertexInSeparator(String),
    #[error("separation endpoints coincide (`{0}`)")]
    SameEndpoints(String),
}

/// A vertex handle; the total order on vertices is declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub(crate) u8);

impl Vertex {
    /// The `i`-th vertex in declaration order.
    pub fn from_index(i: usize) -> Vertex {
        assert!(i < MAX_VERTICES, "vertex index {i} out of range");
        Vertex(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    fn bit(self) -> u64 {
        1u64 << self.0
    }
}

/// A subset of the vertices of some graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(v.bit())
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 & v.bit() != 0
    }

    pub fn insert(&mut self, v: Vertex) {
        self.0 |= v.bit();
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !v.bit();
    }

    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | v.bit())
    }

    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !v.bit())
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Least vertex of the set.
    pub fn first(self) -> Option<Vertex> {
        (self.0 != 0).then(|| Vertex(self.0.trailing_zeros() as u8))
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = Vertex> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as u8;
            bits &= bits - 1;
            Some(Vertex(v))
        })
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

/// A finite simple undirected graph with named, totally ordered vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    adjacency: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate names and duplicate edges
    /// (including reversed duplicates).
    pub fn new<S, E>(vertices: &[S], edges: &[(E, E)]) -> Result<Self, GraphError>
    where
        S: AsRef<str>,
        E: AsRef<str>,
    {
        if vertices.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(vertices.len()));
        }
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, name) in vertices.iter().enumerate() {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(GraphError::EmptyName);
            }
            if index.insert(name.to_string(), Vertex(i as u8)).is_some() {
                return Err(GraphError::DuplicateVertex(name.to_string()));
            }
            names.push(name.to_string());
        }
        let mut graph = Graph {
            adjacency: vec![VertexSet::EMPTY; names.len()],
            names,
            index,
        };
        for (u, v) in edges {
            let (u, v) = (graph.vertex(u.as_ref())?, graph.vertex(v.as_ref())?);
            graph.add_edge(u, v)?;
        }
        Ok(graph)
    }

    /// Graph on vertices named by `names` with edges given as index pairs.
    pub fn from_indices<S: AsRef<str>>(
        names: &[S],
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let named: Vec<(&str, &str)> = edges
            .iter()
            .map(|&(u, v)| (names[u].as_ref(), names[v].as_ref()))
            .collect();
        Graph::new(names, &named)
    }

    /// Graph on vertices `0..n` (named by their decimal index) whose edge
    /// set is read from the bits of `mask`, one bit per pair `(i, j)` with
    /// `i < j` in lexicographic order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> bit & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        Graph::from_indices(&names, &edges).expect("edge mask describes a simple graph")
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::LoopEdge(self.name(u).to_string()));
        }
        if self.adjacency[u.index()].contains(v) {
            return Err(GraphError::DuplicateEdge(
                self.name(u).to_string(),
                self.name(v).to_string(),
            ));
        }
        self.adjacency[u.index()].insert(v);
        self.adjacency[v.index()].insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.names.len()).map(|i| Vertex(i as u8))
    }

    pub fn all(&self) -> VertexSet {
        if self.names.len() == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << self.names.len()) - 1)
        }
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.vertices()
            .flat_map(|u| {
                self.adjacency[u.index()]
                    .iter()
                    .filter(move |&v| u < v)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn set<'a, I>(&self, names: I) -> Result<VertexSet, GraphError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names.into_iter().map(|n| self.vertex(n)).collect()
    }

    /// Names of the members of `set`, in vertex order.
    pub fn set_names(&self, set: VertexSet) -> Vec<&str> {
        set.iter().map(|v| self.name(v)).collect()
    }

    /// Renders a set as `{a,b}`.
    pub fn format_set(&self, set: VertexSet) -> String {
        format!("{{{}}}", self.set_names(set).join(","))
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u.index()].contains(v)
    }

    /// Neighbours of `v`; never contains `v` itself.
    pub fn link(&self, v: Vertex) -> VertexSet {
        self.adjacency[v.index()]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.link(v).len()
    }

    /// Vertices that commute with `v` in the Artin group: the link plus `v`.
    pub fn star(&self, v: Vertex) -> VertexSet {
        self.link(v).with(v)
    }

    /// Connected components of the subgraph induced on `within`, each found
    /// by breadth-first search, ordered by least vertex.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        self.components_by(within, |v| self.link(v))
    }

    /// Connected components of the complement of the subgraph induced on
    /// `within`.
    pub fn complement_components(&self, within: VertexSet) -> Vec<VertexSet> {
        let all = self.all();
        self.components_by(within, |v| all.difference(self.link(v)).without(v))
    }

    fn components_by(
        &self,
        within: VertexSet,
        neighbours: impl Fn(Vertex) -> VertexSet,
    ) -> Vec<VertexSet> {
        let mut remaining = within;
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut component = VertexSet::singleton(start);
            let mut frontier = component;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(neighbours(v));
                }
                next = next.intersection(within).difference(component);
                component = component.union(next);
                frontier = next;
            }
            remaining = remaining.difference(component);
            out.push(component);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(self.all()).len() <= 1
    }

    pub fn is_complete(&self) -> bool {
        self.vertices()
            .all(|v| self.link(v) == self.all().without(v))
    }

    /// Whether the graph splits as a join of two nonempty subgraphs.
    pub fn splits_as_join(&self) -> bool {
        self.complement_components(self.all()).len() >= 2
    }

    /// Decides whether `separator` separates `u` from `v`, returning the
    /// component partition of the graph with the separator removed.
    pub fn separates(
        &self,
        separator: VertexSet,
        u: Vertex,
        v: Vertex,
    ) -> Result<Separation, GraphError> {
        for x in [u, v] {
            if separator.contains(x) {
                return Err(GraphError::VertexInSeparator(self.name(x).to_string()));
            }
        }
        if u == v {
            return Err(GraphError::SameEndpoints(self.name(u).to_string()));
        }
        let components = self.components(self.all().difference(separator));
        let separated = !components.iter().any(|c| c.contains(u) && c.contains(v));
        Ok(Separation {
            separated,
            components,
        })
    }

    /// The subgraph induced on `within`, keeping vertex names and order.
    pub fn induced(&self, within: VertexSet) -> Graph {
        let names: Vec<&str> = self.set_names(within);
        let edges: Vec<(&str, &str)> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| within.contains(u) && within.contains(v))
            .map(|(u, v)| (self.name(u), self.name(v)))
            .collect();
        Graph::new(&names, &edges).expect("induced subgraph of a valid graph")
    }

    /// Induced paths `a - b - c - d`, each reported once in the
    /// lexicographically least of its two orientations, sorted.
    pub fn find_induced_p4(&self) -> Vec<P4> {
        self.find_induced_p4_within(self.all())
    }

    pub fn find_induced_p4_within(&self, within: VertexSet) -> Vec<P4> {
        let mut out = Vec::new();
        for b in within.iter() {
            for c in self.link(b).intersection(within).iter() {
                let ends_a = self
                    .link(b)
                    .intersection(within)
                    .difference(self.link(c))
                    .without(c);
                let ends_d = self
                    .link(c)
                    .intersection(within)
                    .difference(self.link(b))
                    .without(b);
                for a in ends_a.iter() {
                    for d in ends_d.difference(self.link(a)).without(a).iter() {
                        let path = P4([a, b, c, d]);
                        if path.0 <= path.reversed().0 {
                            out.push(path);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_induced_p4(&self, [a, b, c, d]: [Vertex; 4]) -> bool {
        let distinct = VertexSet::from_iter([a, b, c, d]).len() == 4;
        distinct
            && self.adjacent(a, b)
            && self.adjacent(b, c)
            && self.adjacent(c, d)
            && !self.adjacent(a, c)
            && !self.adjacent(a, d)
            && !self.adjacent(b, d)
    }

    /// Join/union decomposition tree, or a prime verdict.
    pub fn decompose(&self) -> Decomposition {
        if self.is_empty() {
            return Decomposition::Empty;
        }
        match self.cotree(self.all()) {
            Ok(tree) => Decomposition::Cotree(tree),
            Err(part) => Decomposition::Prime {
                part,
                witness: self.find_induced_p4_within(part).first().copied(),
            },
        }
    }

    fn cotree(&self, within: VertexSet) -> Result<Cotree, VertexSet> {
        if within.len() == 1 {
            return Ok(Cotree::Leaf(within.first().unwrap()));
        }
        let parts = self.components(within);
        if parts.len() > 1 {
            return parts
                .into_iter()
                .map(|p| self.cotree(p))
                .collect::<Result<_, _>>()
                .map(Cotree::Union);
        }
        let parts = self.complement_components(within);
        if parts.len() > 1 {
            return parts
                .into_iter()
                .map(|p| self.cotree(p))
                .collect::<Result<_, _>>()
                .map(Cotree::Join);
        }
        Err(within)
    }

    /// Edge list over the same vertex set reproduced by a decomposition tree.
    pub fn edges_of_cotree(&self, tree: &Cotree) -> Vec<(Vertex, Vertex)> {
        let mut adjacency = vec![VertexSet::EMPTY; self.vertex_count()];
        fn fill(tree: &Cotree, adjacency: &mut [VertexSet]) {
            match tree {
                Cotree::Leaf(_) => {}
                Cotree::Union(children) => children.iter().for_each(|c| fill(c, adjacency)),
                Cotree::Join(children) => {
                    children.iter().for_each(|c| fill(c, adjacency));
                    let sets: Vec<VertexSet> = children.iter().map(Cotree::vertices).collect();
                    for (i, s) in sets.iter().enumerate() {
                        for (j, t) in sets.iter().enumerate() {
                            if i != j {
                                for v in s.iter() {
                                    adjacency[v.index()] = adjacency[v.index()].union(*t);
                                }
                            }
                        }
                    }
                }
            }
        }
        fill(tree, &mut adjacency);
        let mut edges = Vec::new();
        for u in self.vertices() {
            for v in adjacency[u.index()].iter().filter(|&v| u < v) {
                edges.push((u, v));
            }
        }
        edges
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", self.name(u), self.name(v)))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

/// Outcome of a separation query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub separated: bool,
    /// Components of the graph minus the separator, ordered by least vertex.
    pub components: Vec<VertexSet>,
}

impl Separation {
    pub fn component_of(&self, v: Vertex) -> Option<VertexSet> {
        self.components.iter().copied().find(|c| c.contains(v))
    }
}

/// An induced path `a - b - c - d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct P4(pub [Vertex; 4]);

impl P4 {
    pub fn reversed(self) -> P4 {
        let [a, b, c, d] = self.0;
        P4([d, c, b, a])
    }
}

/// Cograph decomposition tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cotree {
    Leaf(Vertex),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

impl Cotree {
    pub fn vertices(&self) -> VertexSet {
        match self {
            Cotree::Leaf(v) => VertexSet::singleton(*v),
            Cotree::Union(children) | Cotree::Join(children) => children
                .iter()
                .fold(VertexSet::EMPTY, |acc, c| acc.union(c.vertices())),
        }
    }

    /// Renders the tree as e.g. `JOIN(UNION(1,3),UNION(2,4))`.
    pub fn display<'a>(&'a self, graph: &'a Graph) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a Cotree, &'a Graph);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let (tag, children) = match self.0 {
                    Cotree::Leaf(v) => return f.write_str(self.1.name(*v)),
                    Cotree::Union(c) => ("UNION", c),
                    Cotree::Join(c) => ("JOIN", c),
                };
                write!(f, "{tag}(")?;
                for (i, child) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", Show(child, self.1))?;
                }
                f.write_str(")")
            }
        }
        Show(self, graph)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Empty,
    Cotree(Cotree),
    /// `part` is a vertex set inducing a subgraph that is connected with a
    /// connected complement; `witness` is an induced P4 inside it.
    Prime {
        part: VertexSet,
        witness: Option<P4>,
    },
}

impl Decomposition {
    pub fn is_prime(&self) -> bool {
        matches!(self, Decomposition::Prime { .. })
    }
}
