//! Certificates for the separation criterion on an induced path `a-b-c-d`
//! and the resulting classification of presentation graphs by what is known
//! about the boundary of the standard cube complex.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet, P4};

/// Largest shared pool `lk(b) ∩ lk(c)` the strict search will split.
pub const MAX_STRICT_POOL: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("graph is disconnected; use classify, which reports a disconnected boundary")]
    Disconnected,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("strict search would split a pool of {0} shared neighbours (limit {MAX_STRICT_POOL})")]
    PoolTooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `B ∩ C = ∅`.
    StrictDisjoint,
    /// The four triple intersections that disjointness is used to rule out
    /// are empty.
    WeakEmpty,
}

impl Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Variant::StrictDisjoint => "strict",
            Variant::WeakEmpty => "weak",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Variant> {
        match tag {
            "strict" => Some(Variant::StrictDisjoint),
            "weak" => Some(Variant::WeakEmpty),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
    pub d: Vertex,
    /// Separates `c` from `a`; contained in `lk(c)`.
    pub b_set: VertexSet,
    /// Separates `b` from `d`; contained in `lk(b)`.
    pub c_set: VertexSet,
    pub variant: Variant,
}

impl Certificate {
    pub fn path(&self) -> [Vertex; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// A named hypothesis that a certificate violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Failure {
    NotDistinct,
    MissingEdgeAB,
    MissingEdgeBC,
    MissingEdgeCD,
    EdgeAC,
    EdgeAD,
    EdgeBD,
    BNotInLinkC,
    DInB,
    BDoesNotSeparate,
    CNotInLinkB,
    AInC,
    CDoesNotSeparate,
    BMeetsC,
    CMeetsLinkALinkD,
    CMeetsLinkALinkC,
    BMeetsLinkALinkD,
    BMeetsLinkDLinkB,
}

impl Failure {
    pub fn name(self) -> &'static str {
        match self {
            Failure::NotDistinct => "a,b,c,d-not-distinct",
            Failure::MissingEdgeAB => "edge-ab-missing",
            Failure::MissingEdgeBC => "edge-bc-missing",
            Failure::MissingEdgeCD => "edge-cd-missing",
            Failure::EdgeAC => "edge-ac-present",
            Failure::EdgeAD => "edge-ad-present",
            Failure::EdgeBD => "edge-bd-present",
            Failure::BNotInLinkC => "B-not-in-lk(c)",
            Failure::DInB => "d-in-B",
            Failure::BDoesNotSeparate => "B-does-not-separate",
            Failure::CNotInLinkB => "C-not-in-lk(b)",
            Failure::AInC => "a-in-C",
            Failure::CDoesNotSeparate => "C-does-not-separate",
            Failure::BMeetsC => "B∩C≠∅",
            Failure::CMeetsLinkALinkD => "C∩lk(a)∩lk(d)≠∅",
            Failure::CMeetsLinkALinkC => "C∩lk(a)∩lk(c)≠∅",
            Failure::BMeetsLinkALinkD => "B∩lk(a)∩lk(d)≠∅",
            Failure::BMeetsLinkDLinkB => "B∩lk(d)∩lk(b)≠∅",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A separator containing either endpoint does not separate them.
fn separates(graph: &Graph, s: VertexSet, u: Vertex, v: Vertex) -> bool {
    graph
        .separates(s, u, v)
        .map(|sep| sep.separated)
        .unwrap_or(false)
}

/// Checks every hypothesis, listing all that fail.
pub fn check_certificate(graph: &Graph, cert: &Certificate) -> Verdict {
    let Certificate {
        a,
        b,
        c,
        d,
        b_set,
        c_set,
        variant,
    } = *cert;
    let mut failures = Vec::new();
    let mut fail = |cond: bool, f: Failure| {
        if cond {
            failures.push(f);
        }
    };
    let distinct = VertexSet::from_iter([a, b, c, d]).len() == 4;
    fail(!distinct, Failure::NotDistinct);
    fail(!graph.adjacent(a, b), Failure::MissingEdgeAB);
    fail(!graph.adjacent(b, c), Failure::MissingEdgeBC);
    fail(!graph.adjacent(c, d), Failure::MissingEdgeCD);
    fail(graph.adjacent(a, c), Failure::EdgeAC);
    fail(graph.adjacent(a, d), Failure::EdgeAD);
    fail(graph.adjacent(b, d), Failure::EdgeBD);

    fail(!b_set.is_subset(graph.link(c)), Failure::BNotInLinkC);
    fail(b_set.contains(d), Failure::DInB);
    fail(!separates(graph, b_set, c, a), Failure::BDoesNotSeparate);
    fail(!c_set.is_subset(graph.link(b)), Failure::CNotInLinkB);
    fail(c_set.contains(a), Failure::AInC);
    fail(!separates(graph, c_set, b, d), Failure::CDoesNotSeparate);

    let lk = |v| graph.link(v);
    match variant {
        Variant::StrictDisjoint => {
            fail(!b_set.intersection(c_set).is_empty(), Failure::BMeetsC);
        }
        Variant::WeakEmpty => {
            let hit = |s: VertexSet, x, y| !s.intersection(lk(x)).intersection(lk(y)).is_empty();
            fail(hit(c_set, a, d), Failure::CMeetsLinkALinkD);
            fail(hit(c_set, a, c), Failure::CMeetsLinkALinkC);
            fail(hit(b_set, a, d), Failure::BMeetsLinkALinkD);
            fail(hit(b_set, d, b), Failure::BMeetsLinkDLinkB);
        }
    }
    Verdict { failures }
}

/// Searches the induced paths of a connected graph, in lexicographic order,
/// for one admitting a certificate of the given variant.
///
/// Separation is monotone in the separator, so for each path only the
/// largest admissible sets need testing: for the weak variant these are
/// fixed, and for the strict one each vertex of `lk(b) ∩ lk(c)` is assigned
/// to one side or the other.
pub fn find_certificate(
    graph: &Graph,
    variant: Variant,
) -> Result<Option<Certificate>, CriterionError> {
    if graph.is_empty() {
        return Err(CriterionError::EmptyGraph);
    }
    if !graph.is_connected() {
        return Err(CriterionError::Disconnected);
    }
    for P4([a, b, c, d]) in graph.find_induced_p4() {
        let lk = |v| graph.link(v);
        let found = match variant {
            Variant::WeakEmpty => {
                let b_set = lk(c)
                    .without(d)
                    .difference(lk(a).intersection(lk(d)))
                    .difference(lk(d).intersection(lk(b)));
                let c_set = lk(b)
                    .without(a)
                    .difference(lk(a).intersection(lk(d)))
                    .difference(lk(a).intersection(lk(c)));
                (separates(graph, b_set, c, a) && separates(graph, c_set, b, d))
                    .then_some((b_set, c_set))
            }
            Variant::StrictDisjoint => {
                let pool = lk(b).intersection(lk(c));
                if pool.len() > MAX_STRICT_POOL {
                    return Err(CriterionError::PoolTooLarge(pool.len()));
                }
                let b_only = lk(c).without(d).difference(pool);
                let c_only = lk(b).without(a).difference(pool);
                let members: Vec<Vertex> = pool.iter().collect();
                (0u32..1 << members.len()).find_map(|mask| {
                    let to_c: VertexSet = members
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect();
                    let b_set = b_only.union(pool.difference(to_c));
                    let c_set = c_only.union(to_c);
                    (separates(graph, b_set, c, a) && separates(graph, c_set, b, d))
                        .then_some((b_set, c_set))
                })
            }
        };
        if let Some((b_set, c_set)) = found {
            let cert = Certificate {
                a,
                b,
                c,
                d,
                b_set,
                c_set,
                variant,
            };
            debug_assert!(check_certificate(graph, &cert).passed());
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    DisconnectedBoundary,
    /// The group is free abelian of rank `n + 1`; the boundary is `S^n`.
    Sphere(usize),
    PathConnectedJoin,
    NonPathConnected(Certificate),
    Unknown,
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::DisconnectedBoundary => "DISCONNECTED_BOUNDARY",
            Classification::Sphere(_) => "SPHERE",
            Classification::PathConnectedJoin => "PATH_CONNECTED_JOIN",
            Classification::NonPathConnected(_) => "NON_PATH_CONNECTED",
            Classification::Unknown => "UNKNOWN",
        }
    }
}

/// Decision order: disconnected, complete, nontrivial join, weak certificate,
/// otherwise unknown.
pub fn classify(graph: &Graph) -> Result<Classification, CriterionError> {
    if graph.is_empty() {
        return Err(CriterionError::EmptyGraph);
    }
    if !graph.is_connected() {
        return Ok(Classification::DisconnectedBoundary);
    }
    if graph.is_complete() {
        return Ok(Classification::Sphere(graph.vertex_count() - 1));
    }
    if graph.splits_as_join() {
        return Ok(Classification::PathConnectedJoin);
    }
    Ok(match find_certificate(graph, Variant::WeakEmpty)? {
        Some(cert) => Classification::NonPathConnected(cert),
        None => Classification::Unknown,
    })
}
