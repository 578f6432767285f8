//! Fixtures, random generators and independent oracles shared by the
//! integration tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use raag_core::graph::{Graph, Vertex};
use raag_core::word::{commute, normalize, Letter, Word};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn p4() -> Graph {
    Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_indices(&names, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::from_indices(&names, &edges).unwrap()
}

/// Parses `"a b^-1 c"`; `"*"` or `""` is the empty word.
pub fn w(g: &Graph, text: &str) -> Word {
    text.split_whitespace()
        .filter(|t| *t != "*")
        .map(|t| match t.strip_suffix("^-1") {
            Some(name) => Letter::neg(g.vertex(name).unwrap()),
            None => Letter::pos(g.vertex(t).unwrap()),
        })
        .collect()
}

pub fn v(g: &Graph, name: &str) -> Vertex {
    g.vertex(name).unwrap()
}

/// All labelled graphs on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs).map(move |mask| Graph::from_edge_mask(n, mask))
}

pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n)
        .flat_map(all_graphs)
        .filter(|g| g.is_connected())
        .collect()
}

/// All labelled trees on `n >= 2` vertices, decoded from Prüfer sequences.
pub fn labelled_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 2);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut seq = Vec::with_capacity(len);
        for _ in 0..len {
            seq.push(code % n);
            code /= n;
        }
        let mut degree = vec![1usize; n];
        for &x in &seq {
            degree[x] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &x in &seq {
            let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
            edges.push((leaf, x));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(Graph::from_indices(&names, &edges).unwrap());
    }
    out
}

/// Graph diameter by breadth-first search from every vertex; `None` when
/// disconnected.
pub fn diameter(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best = 0;
    for s in g.vertices() {
        let mut dist = vec![usize::MAX; n];
        dist[s.index()] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for x in g.link(u).iter() {
                if dist[x.index()] == usize::MAX {
                    dist[x.index()] = dist[u.index()] + 1;
                    queue.push_back(x);
                }
            }
        }
        best = best.max(*dist.iter().max()?);
        if best == usize::MAX {
            return None;
        }
    }
    Some(best)
}

/// Induced P4s by the plain ordered 4-tuple scan, each in its least
/// orientation.
pub fn brute_force_p4(g: &Graph) -> Vec<[Vertex; 4]> {
    let vs: Vec<Vertex> = g.vertices().collect();
    let mut out = Vec::new();
    for &a in &vs {
        for &b in &vs {
            for &c in &vs {
                for &d in &vs {
                    let t = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| t[i] != t[j]));
                    if distinct
                        && g.adjacent(a, b)
                        && g.adjacent(b, c)
                        && g.adjacent(c, d)
                        && !g.adjacent(a, c)
                        && !g.adjacent(a, d)
                        && !g.adjacent(b, d)
                        && t <= [d, c, b, a]
                    {
                        out.push(t);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, p: f64) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let pairs = n * (n - 1) / 2;
    let mut mask = 0u64;
    for bit in 0..pairs {
        if rng.gen_bool(p) {
            mask |= 1 << bit;
        }
    }
    Graph::from_edge_mask(n, mask)
}

pub fn random_connected_graph<R: Rng>(rng: &mut R, min: usize, max: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, max, p);
        if g.vertex_count() >= min && g.is_connected() {
            return g;
        }
    }
}

pub fn random_word<R: Rng>(rng: &mut R, g: &Graph, len: usize) -> Word {
    (0..len)
        .map(|_| {
            let v = Vertex::from_index(rng.gen_range(0..g.vertex_count()));
            if rng.gen_bool(0.5) {
                Letter::pos(v)
            } else {
                Letter::neg(v)
            }
        })
        .collect()
}

/// A random geodesic of length at most `max_len`.
pub fn random_geodesic<R: Rng>(rng: &mut R, g: &Graph, max_len: usize) -> Word {
    let len = rng.gen_range(0..=2 * max_len);
    let raw = random_word(rng, g, len);
    let reduced = normalize(g, &raw).unwrap().word;
    let keep = reduced.len().min(max_len);
    reduced.prefix(keep)
}

/// A uniformly chosen letter among those that can be moved to the front,
/// repeatedly: a random rearrangement of a geodesic.
pub fn random_rearrangement<R: Rng>(rng: &mut R, g: &Graph, word: &Word) -> Word {
    let mut rest: Vec<Letter> = word.letters().to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let movable: Vec<usize> = (0..rest.len())
            .filter(|&p| {
                rest[..p]
                    .iter()
                    .all(|l| commute(g, l.vertex, rest[p].vertex))
            })
            .collect();
        let p = *movable.choose(rng).unwrap();
        out.push(rest.remove(p));
    }
    Word::new(out)
}

/// Exact integer matrices giving a faithful representation of the Artin
/// group, independent of any word reduction.
///
/// The Artin group embeds in the right-angled Coxeter group on the doubled
/// vertex set `V x {0, 1}`, where `(u,0)(v,0)` and `(u,0)(v,1)` commute for
/// `u != v` and `(u,1)(v,1)` commute when `uv` is an edge, via
/// `v -> s_(v,0) s_(v,1)`. The Tits representation of that Coxeter group is
/// faithful and has integer entries when every Coxeter exponent is 2 or
/// infinite.
pub struct MatrixOracle {
    dim: usize,
    /// Per vertex: image of the generator, then of its inverse.
    images: Vec<[Vec<i64>; 2]>,
}

impl MatrixOracle {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let dim = 2 * n;
        let commutes = |s: usize, t: usize| -> bool {
            let (u, lu) = (s / 2, s % 2);
            let (v, lv) = (t / 2, t % 2);
            if u == v {
                return false;
            }
            match (lu, lv) {
                (1, 1) => g.adjacent(Vertex::from_index(u), Vertex::from_index(v)),
                _ => true,
            }
        };
        // bilinear form: 1 on the diagonal, 0 for commuting pairs, -1 otherwise
        let form = |s: usize, t: usize| -> i64 {
            if s == t {
                1
            } else if commutes(s, t) {
                0
            } else {
                -1
            }
        };
        let reflection = |s: usize| -> Vec<i64> {
            let mut m = identity(dim);
            for t in 0..dim {
                m[s * dim + t] -= 2 * form(s, t);
            }
            m
        };
        let images = (0..n)
            .map(|v| {
                let (r0, r1) = (reflection(2 * v), reflection(2 * v + 1));
                [mul(dim, &r0, &r1), mul(dim, &r1, &r0)]
            })
            .collect();
        MatrixOracle { dim, images }
    }

    pub fn identity(&self) -> Vec<i64> {
        identity(self.dim)
    }

    pub fn letter(&self, l: Letter) -> &[i64] {
        &self.images[l.vertex.index()][usize::from(!l.is_positive())]
    }

    pub fn image(&self, word: &Word) -> Vec<i64> {
        word.iter().fold(self.identity(), |acc, &l| {
            mul(self.dim, &acc, self.letter(l))
        })
    }

    /// Breadth-first depths of every element within `radius` of the
    /// identity, keyed by matrix.
    pub fn ball_depths(&self, g: &Graph, radius: usize) -> HashMap<Vec<i64>, usize> {
        let letters: Vec<Letter> = g
            .vertices()
            .flat_map(|v| [Letter::pos(v), Letter::neg(v)])
            .collect();
        let mut depth = HashMap::from([(self.identity(), 0)]);
        let mut frontier = vec![self.identity()];
        for d in 1..=radius {
            let mut next = Vec::new();
            for m in &frontier {
                for &l in &letters {
                    let p = mul(self.dim, m, self.letter(l));
                    if !depth.contains_key(&p) {
                        depth.insert(p.clone(), d);
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        depth
    }
}

fn identity(dim: usize) -> Vec<i64> {
    let mut m = vec![0; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m
}

fn mul(dim: usize, x: &[i64], y: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let a = x[i * dim + k];
            if a == 0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] = out[i * dim + j]
                    .checked_add(a.checked_mul(y[k * dim + j]).expect("entry overflow"))
                    .expect("entry overflow");
            }
        }
    }
    out
}
