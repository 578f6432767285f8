//! The two combinatorial rays built from a certificate's induced path
//! `a-b-c-d`, their marked vertices, and exact checks of the finite
//! statements made about them.
//!
//! With `k_0 = -1` and `k_{i+1} = 2 k_i + 2`:
//!
//! ```text
//! r    = prod_{i>=1} (cb)^{k_i} c d a b
//! s    = prod_{i>=1} d b c (b^2 c)^{k_i} b^2 a
//! v_n  = (prod_{i=1..n} (cb)^{k_i} c d a b) (cb)^{k_{n+1}} c d      v'_n = v_n a
//! w_n  =  prod_{i=1..n} d b c (b^2 c)^{k_i} b^2 a                   w'_n = w_n d
//! ```

use rayon::prelude::*;
use thiserror::Error;

use crate::criterion::{check_certificate, Certificate, Failure};
use crate::graph::{Graph, Vertex};
use crate::word::{self, all_geodesic_words, equals, is_geodesic, Letter, Word, WordError};

/// Default number of marked vertices checked along each ray.
pub const DEFAULT_N_MAX: usize = 8;

/// Longest word `verify_lines` will build.
pub const MAX_LINES_WORD: usize = 1 << 16;

/// How close every geodesic must come to the marked vertex.
pub const CLOSE_RADIUS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RayError {
    #[error("k-sequence length must be at least 1")]
    EmptySequence,
    #[error("k_{0} does not fit in 64 bits")]
    Overflow(usize),
    #[error("certificate fails: {0:?}")]
    InvalidCertificate(Vec<Failure>),
    #[error("index {n} is outside 0..={n_max}")]
    OutOfRange { n: usize, n_max: usize },
    #[error("words at n = {n} reach {len} letters, above the budget of {MAX_LINES_WORD}")]
    BudgetExceeded { n: usize, len: usize },
    #[error("path letters must be positive generators from {0}")]
    LetterOutsideSet(&'static str),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// `k_1, ..., k_n`.
pub fn k_sequence(n: usize) -> Result<Vec<u64>, RayError> {
    if n < 1 {
        return Err(RayError::EmptySequence);
    }
    let mut out = Vec::with_capacity(n);
    let mut k: i64 = -1;
    for i in 1..=n {
        k = k
            .checked_mul(2)
            .and_then(|x| x.checked_add(2))
            .ok_or(RayError::Overflow(i))?;
        out.push(k as u64);
    }
    debug_assert!(out
        .iter()
        .enumerate()
        .all(|(i, &k)| k == (1u64 << (i + 1)) - 2));
    Ok(out)
}

/// A certified graph together with the range of marked vertices to use.
#[derive(Debug, Clone)]
pub struct RaySpec {
    graph: Graph,
    cert: Certificate,
    n_max: usize,
}

impl RaySpec {
    pub fn new(graph: Graph, cert: Certificate, n_max: usize) -> Result<Self, RayError> {
        let verdict = check_certificate(&graph, &cert);
        if !verdict.passed() {
            return Err(RayError::InvalidCertificate(verdict.failures));
        }
        Ok(RaySpec { graph, cert, n_max })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn certificate(&self) -> &Certificate {
        &self.cert
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn letters(&self) -> [Vertex; 4] {
        self.cert.path()
    }

    /// `(cb)^{k_i} c d a b`
    fn r_block(&self, k: u64) -> Word {
        let [a, b, c, d] = self.letters();
        let mut w = Word::positive(&[c, b]).repeat(k as usize);
        w.extend_from(&Word::positive(&[c, d, a, b]));
        w
    }

    /// `d b c (b^2 c)^{k_i} b^2 a`
    fn s_block(&self, k: u64) -> Word {
        let [a, b, c, d] = self.letters();
        let mut w = Word::positive(&[d, b, c]);
        w.extend_from(&Word::positive(&[b, b, c]).repeat(k as usize));
        w.extend_from(&Word::positive(&[b, b, a]));
        w
    }

    fn v(&self, n: usize, ks: &[u64]) -> Word {
        let [_, b, c, d] = self.letters();
        let mut w = Word::empty();
        for &k in &ks[..n] {
            w.extend_from(&self.r_block(k));
        }
        w.extend_from(&Word::positive(&[c, b]).repeat(ks[n] as usize));
        w.extend_from(&Word::positive(&[c, d]));
        w
    }

    fn w(&self, n: usize, ks: &[u64]) -> Word {
        let mut w = Word::empty();
        for &k in &ks[..n] {
            w.extend_from(&self.s_block(k));
        }
        w
    }

    fn check_range(&self, n: usize) -> Result<(), RayError> {
        if n > self.n_max {
            return Err(RayError::OutOfRange {
                n,
                n_max: self.n_max,
            });
        }
        Ok(())
    }
}

/// Marked vertices at index `n`, as words read from the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayVertices {
    pub v: Word,
    pub v_prime: Word,
    pub w: Word,
    pub w_prime: Word,
    /// The segment of `r` from the identity to `v'_n`.
    pub r_prefix: Word,
    /// The segment of `s` from the identity to `w'_n`.
    pub s_prefix: Word,
}

pub fn ray_vertices(spec: &RaySpec, n: usize) -> Result<RayVertices, RayError> {
    spec.check_range(n)?;
    let ks = k_sequence(n + 1)?;
    let [a, _, _, d] = spec.letters();
    let v = spec.v(n, &ks);
    let w = spec.w(n, &ks);
    let mut v_prime = v.clone();
    v_prime.push(Letter::pos(a));
    let mut w_prime = w.clone();
    w_prime.push(Letter::pos(d));
    Ok(RayVertices {
        r_prefix: v_prime.clone(),
        s_prefix: w_prime.clone(),
        v,
        v_prime,
        w,
        w_prime,
    })
}

/// Both identities at one index:
/// `v_n = w'_n c^{k_{n+1}+1}` and `v'_n b^{k_{n+2}+1} = w_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinesRow {
    pub n: usize,
    pub identity1: bool,
    pub identity2: bool,
    /// `|v_n|`, `|w'_n c^{k_{n+1}+1}|`, `|v'_n b^{k_{n+2}+1}|`, `|w_{n+1}|`.
    pub lengths: [usize; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinesReport {
    pub rows: Vec<LinesRow>,
}

impl LinesReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.identity1 && r.identity2)
    }
}

/// Checks both identities for every `n` in `0..=n_max` by exact group
/// equality.
pub fn verify_lines(spec: &RaySpec) -> Result<LinesReport, RayError> {
    let ks = k_sequence(spec.n_max + 2)?;
    let [_, b, c, _] = spec.letters();
    let graph = &spec.graph;
    let rows = (0..=spec.n_max)
        .into_par_iter()
        .map(|n| {
            let len = lines_word_length(n, &ks);
            if len > MAX_LINES_WORD {
                return Err(RayError::BudgetExceeded { n, len });
            }
            let rv = ray_vertices(spec, n)?;
            let left1 = rv.v;
            let right1 = rv.w_prime.concat(&Word::power(c, ks[n] as usize + 1));
            let left2 = rv.v_prime.concat(&Word::power(b, ks[n + 1] as usize + 1));
            let right2 = spec.w(n + 1, &ks);
            let lengths = [left1.len(), right1.len(), left2.len(), right2.len()];
            Ok(LinesRow {
                n,
                identity1: equals(graph, &left1, &right1)?,
                identity2: equals(graph, &left2, &right2)?,
                lengths,
            })
        })
        .collect::<Result<Vec<_>, RayError>>()?;
    Ok(LinesReport { rows })
}

/// `|w_{n+1}|`, the longest word built at index `n`, computed without
/// building it. Saturates instead of overflowing.
fn lines_word_length(n: usize, ks: &[u64]) -> usize {
    ks[..=n + 1]
        .iter()
        .fold(0u64, |acc, &k| {
            acc.saturating_add(k.saturating_mul(3).saturating_add(6))
        })
        .try_into()
        .unwrap_or(usize::MAX)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    /// Every geodesic to every point of the path came close to the anchor.
    Passed { geodesics: usize },
    /// A geodesic to `target` that stays farther than the radius.
    Failed { target: Word, geodesic: Word },
    /// The longest target exceeds the enumeration bound; nothing was checked.
    Inconclusive { length: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloseReport {
    pub i: usize,
    /// Whether the ray segment followed by the path is geodesic.
    pub geodesic: bool,
    pub enumeration: Enumeration,
}

impl CloseReport {
    pub fn passed(&self) -> bool {
        self.geodesic && matches!(self.enumeration, Enumeration::Passed { .. })
    }
}

/// Follows `r` to `v'_i`, then the positive path `gamma` with letters in
/// `C`. Checks that the concatenation is geodesic and, within the bound,
/// that every geodesic from the identity to any point of `gamma` passes
/// within distance 4 of `v'_i`.
pub fn verify_close_shadow(
    spec: &RaySpec,
    i: usize,
    gamma: &Word,
    enumerate_bound: usize,
) -> Result<CloseReport, RayError> {
    if !gamma.is_positive() || !gamma.support().is_subset(spec.cert.c_set) {
        return Err(RayError::LetterOutsideSet("C"));
    }
    let anchor = ray_vertices(spec, i)?.r_prefix;
    close_shadow(&spec.graph, i, &anchor, gamma, enumerate_bound)
}

/// The same check along `s` to `w'_i`, followed by a positive path `beta`
/// with letters in `B`.
pub fn verify_close_shadow_mirrored(
    spec: &RaySpec,
    i: usize,
    beta: &Word,
    enumerate_bound: usize,
) -> Result<CloseReport, RayError> {
    if !beta.is_positive() || !beta.support().is_subset(spec.cert.b_set) {
        return Err(RayError::LetterOutsideSet("B"));
    }
    let anchor = ray_vertices(spec, i)?.s_prefix;
    close_shadow(&spec.graph, i, &anchor, beta, enumerate_bound)
}

fn close_shadow(
    graph: &Graph,
    i: usize,
    anchor: &Word,
    path: &Word,
    bound: usize,
) -> Result<CloseReport, RayError> {
    let full = anchor.concat(path);
    let geodesic = is_geodesic(graph, &full)?;
    if full.len() > bound {
        return Ok(CloseReport {
            i,
            geodesic,
            enumeration: Enumeration::Inconclusive {
                length: full.len(),
                bound,
            },
        });
    }
    let anchor_inverse = anchor.inverse();
    let mut geodesics = 0;
    for j in 0..=path.len() {
        let target = anchor.concat(&path.prefix(j));
        for rho in all_geodesic_words(graph, &target, bound)? {
            geodesics += 1;
            if !passes_near(graph, &rho, &anchor_inverse)? {
                return Ok(CloseReport {
                    i,
                    geodesic,
                    enumeration: Enumeration::Failed {
                        target,
                        geodesic: rho,
                    },
                });
            }
        }
    }
    Ok(CloseReport {
        i,
        geodesic,
        enumeration: Enumeration::Passed { geodesics },
    })
}

/// Whether some vertex on the path `rho` (read from the identity) lies
/// within [`CLOSE_RADIUS`] of the anchor whose inverse is given.
fn passes_near(graph: &Graph, rho: &Word, anchor_inverse: &Word) -> Result<bool, WordError> {
    for k in 0..=rho.len() {
        let gap = anchor_inverse.concat(&rho.prefix(k));
        if word::geodesic_length(graph, &gap)? <= CLOSE_RADIUS {
            return Ok(true);
        }
    }
    Ok(false)
}
