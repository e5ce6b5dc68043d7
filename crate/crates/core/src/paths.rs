//! Admissible paths from a closed orbit: walks that use Cayley ascents and,
//! for noncompact non-cancellative roots, cross steps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use thiserror::Error;

use crate::coxeter::{CoxeterSystem, Generator, WeylElement};
use crate::invariants::{violation, Check, CheckReport, InvariantContext, InvariantError};
use crate::kgb::{KgbGraph, OrbitId, RootStatus};

/// Longest generator word for which minimality is tested by enumerating subsequences.
pub const DIRECT_MINIMALITY_CAP: usize = 12;

/// Paths checked directly per orbit when the direct route is sampled.
const SAMPLE_SIZE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("{0} is not in Y")]
    NotInY(String),
    #[error("{word} is not a reduced word of the inverse of {y}")]
    NotReducedWord { word: String, y: String },
    #[error("{0} subexpressions end at the target orbit, expected exactly one")]
    ThreadCount(u64),
    #[error("step {step}: {message}")]
    Prefix { step: usize, message: String },
    #[error("minimal paths by subsequence test and by reduced words differ for orbit {0}")]
    RoutesDisagree(OrbitId),
}

/// `(v0, ..., vk)` with generators `(s1, ..., sk)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissiblePath {
    pub orbits: Vec<OrbitId>,
    pub generators: Vec<Generator>,
}

impl AdmissiblePath {
    pub fn trivial(v0: OrbitId) -> Self {
        AdmissiblePath { orbits: vec![v0], generators: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn start(&self) -> OrbitId {
        self.orbits[0]
    }

    pub fn end(&self) -> OrbitId {
        *self.orbits.last().unwrap()
    }

    /// `y = s_k ... s_1`
    pub fn y(&self, sys: &CoxeterSystem) -> WeylElement {
        let word: Vec<Generator> = self.generators.iter().rev().copied().collect();
        sys.from_word(&word).expect("generators in range")
    }

    pub fn is_admissible(&self, graph: &KgbGraph) -> bool {
        self.orbits.len() == self.generators.len() + 1
            && graph.is_closed(self.start())
            && self
                .generators
                .iter()
                .enumerate()
                .all(|(j, &s)| steps(graph, self.orbits[j], s).contains(&self.orbits[j + 1]))
    }

    fn push(&self, s: Generator, to: OrbitId) -> Self {
        let mut p = self.clone();
        p.generators.push(s);
        p.orbits.push(to);
        p
    }
}

impl Ord for AdmissiblePath {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), &self.generators, &self.orbits).cmp(&(other.len(), &other.generators, &other.orbits))
    }
}

impl PartialOrd for AdmissiblePath {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AdmissiblePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orbits: Vec<String> = self.orbits.iter().map(|v| v.to_string()).collect();
        write!(f, "{} | {}", CoxeterSystem::format_word(&self.generators), orbits.join(" "))
    }
}

/// Admissible steps out of `u` along `s`: the Cayley image on an ascent, and
/// the cross image for a noncompact non-cancellative root.
pub fn steps(graph: &KgbGraph, u: OrbitId, s: Generator) -> Vec<OrbitId> {
    let st = graph.status(u, s);
    let mut out = Vec::with_capacity(2);
    if st.is_ascent() {
        out.push(graph.cayley(u, s));
    }
    if st == RootStatus::NoncompactImaginaryNoncanc {
        out.push(graph.cross(u, s));
    }
    out
}

fn require_closed(graph: &KgbGraph, v0: OrbitId) -> Result<(), PathError> {
    if v0.index() >= graph.len() {
        return Err(InvariantError::UnknownOrbit(v0).into());
    }
    if !graph.is_closed(v0) {
        return Err(InvariantError::NotClosed(v0).into());
    }
    Ok(())
}

/// All admissible paths from `v0` of length at most `max_len`, any endpoint, sorted.
pub fn enumerate_paths_from(graph: &KgbGraph, v0: OrbitId, max_len: usize) -> Result<Vec<AdmissiblePath>, PathError> {
    require_closed(graph, v0)?;
    let mut out = Vec::new();
    let mut stack = vec![AdmissiblePath::trivial(v0)];
    while let Some(p) = stack.pop() {
        if p.len() < max_len {
            let u = p.end();
            for s in 0..graph.rank() {
                for t in steps(graph, u, s) {
                    stack.push(p.push(s, t));
                }
            }
        }
        out.push(p);
    }
    out.sort();
    Ok(out)
}

/// All admissible paths from `v0` to `v` of length at most `max_len`, sorted.
pub fn enumerate_paths(
    graph: &KgbGraph,
    v0: OrbitId,
    v: OrbitId,
    max_len: usize,
) -> Result<Vec<AdmissiblePath>, PathError> {
    Ok(enumerate_paths_from(graph, v0, max_len)?.into_iter().filter(|p| p.end() == v).collect())
}

/// Breadth-first distances from `v0` along admissible steps.
pub fn path_distances(graph: &KgbGraph, v0: OrbitId) -> Vec<Option<usize>> {
    crate::kgb::bfs_distances(graph.len(), &[v0], |u| {
        (0..graph.rank()).flat_map(move |s| steps(graph, u, s)).collect::<Vec<_>>()
    })
}

/// `l_{v0}(v)`, the length of a shortest admissible path.
pub fn path_length(graph: &KgbGraph, v0: OrbitId, v: OrbitId) -> Result<Option<usize>, PathError> {
    require_closed(graph, v0)?;
    Ok(path_distances(graph, v0)[v.index()])
}

/// All shortest admissible paths from `v0` to `v`, sorted.
pub fn shortest_paths(graph: &KgbGraph, v0: OrbitId, v: OrbitId) -> Result<Vec<AdmissiblePath>, PathError> {
    require_closed(graph, v0)?;
    let dist = path_distances(graph, v0);
    let Some(d) = dist[v.index()] else { return Ok(Vec::new()) };
    // walk back from v through predecessors one layer closer
    let mut preds: Vec<Vec<(Generator, OrbitId)>> = vec![Vec::new(); graph.len()];
    for u in graph.orbit_ids() {
        let Some(du) = dist[u.index()] else { continue };
        for s in 0..graph.rank() {
            for t in steps(graph, u, s) {
                if dist[t.index()] == Some(du + 1) {
                    preds[t.index()].push((s, u));
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut stack = vec![(v, Vec::<(Generator, OrbitId)>::new())];
    while let Some((cur, tail)) = stack.pop() {
        if tail.len() == d {
            let mut p = AdmissiblePath::trivial(v0);
            for &(s, t) in tail.iter().rev() {
                p = p.push(s, t);
            }
            out.push(p);
            continue;
        }
        for &(s, u) in &preds[cur.index()] {
            let mut t = tail.clone();
            t.push((s, cur));
            stack.push((u, t));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Every subexpression of the generator sequence `word` starting at `start`,
/// as orbit sequences. Exponential in the length of `word`.
pub fn subexpression_threads(graph: &KgbGraph, start: OrbitId, word: &[Generator]) -> Vec<Vec<OrbitId>> {
    let mut threads = vec![vec![start]];
    for &s in word {
        let mut next = Vec::new();
        for t in threads {
            let u = *t.last().unwrap();
            for to in std::iter::once(u).chain(steps(graph, u, s)) {
                let mut t2 = t.clone();
                t2.push(to);
                next.push(t2);
            }
        }
        threads = next;
    }
    threads.sort();
    threads
}

/// Number of subexpressions of `word` from `start` ending at each orbit,
/// after each prefix. `counts[j][u]`.
fn thread_counts(graph: &KgbGraph, start: OrbitId, word: &[Generator]) -> Vec<Vec<u64>> {
    let mut counts = vec![vec![0u64; graph.len()]];
    counts[0][start.index()] = 1;
    for &s in word {
        let prev = counts.last().unwrap();
        let mut next = prev.clone();
        for u in graph.orbit_ids() {
            let c = prev[u.index()];
            if c > 0 {
                for t in steps(graph, u, s) {
                    next[t.index()] = next[t.index()].saturating_add(c);
                }
            }
        }
        counts.push(next);
    }
    counts
}

/// The unique subexpression of the reduced decomposition of `m(y).v0` along
/// `word` that ends at `v`, for `y ∈ Y_{v0}(v)` and `word` a reduced word of
/// `y^{-1}`. Also checks that every step moves and that each prefix
/// `y_j = s_j ... s_1` lies in `Y_{v0}(u_j)`.
pub fn unique_subexpression(
    ctx: &InvariantContext,
    v: OrbitId,
    y: WeylElement,
    word: &[Generator],
) -> Result<AdmissiblePath, PathError> {
    let graph = ctx.graph();
    let sys = ctx.system();
    if !ctx.y_set(v).contains(&y) {
        return Err(PathError::NotInY(sys.format(y)));
    }
    let reduced = word.len() == sys.length(y) && sys.from_word(word).ok() == Some(sys.inverse(y));
    if !reduced {
        return Err(PathError::NotReducedWord { word: CoxeterSystem::format_word(word), y: sys.format(y) });
    }
    let counts = thread_counts(graph, ctx.v0(), word);
    let k = word.len();
    let total = counts[k][v.index()];
    if total != 1 {
        return Err(PathError::ThreadCount(total));
    }
    // backtrack through the unique thread
    let mut orbits = vec![v];
    let mut cur = v;
    for j in (1..=k).rev() {
        let s = word[j - 1];
        let prev = graph
            .orbit_ids()
            .find(|&u| {
                counts[j - 1][u.index()] > 0 && (u == cur || steps(graph, u, s).contains(&cur))
            })
            .expect("a thread reaches cur");
        orbits.push(prev);
        cur = prev;
    }
    orbits.reverse();
    let path = AdmissiblePath { orbits, generators: word.to_vec() };
    for j in 1..=k {
        let (a, b) = (path.orbits[j - 1], path.orbits[j]);
        if a == b {
            return Err(PathError::Prefix { step: j, message: format!("orbit {a} does not move") });
        }
        let prefix: Vec<Generator> = word[..j].iter().rev().copied().collect();
        let yj = sys.from_word(&prefix).expect("generators in range");
        if !ctx.y_set(b).contains(&yj) {
            return Err(PathError::Prefix {
                step: j,
                message: format!("{} is not in Y of orbit {b}", sys.format(yj)),
            });
        }
    }
    Ok(path)
}

/// Whether `path` is the only admissible path from its start to its end whose
/// generator sequence is a subsequence of its own.
pub fn is_minimal(graph: &KgbGraph, path: &AdmissiblePath) -> bool {
    let word = &path.generators;
    let target = path.end();
    let mut found: BTreeSet<AdmissiblePath> = BTreeSet::new();
    // depth-first over (next index into word, partial path)
    let mut stack = vec![(0usize, AdmissiblePath::trivial(path.start()))];
    while let Some((pos, p)) = stack.pop() {
        if p.end() == target {
            found.insert(p.clone());
            if found.len() > 1 {
                return false;
            }
        }
        for i in pos..word.len() {
            for t in steps(graph, p.end(), word[i]) {
                stack.push((i + 1, p.push(word[i], t)));
            }
        }
    }
    found.len() == 1 && found.contains(path)
}

/// Minimal paths by the bijection with `{(y, s) : y ∈ Y, s reduced word of y^{-1}}`.
pub fn minimal_paths_from_y(ctx: &InvariantContext, v: OrbitId) -> Result<Vec<AdmissiblePath>, PathError> {
    let sys = ctx.system();
    let mut out = Vec::new();
    for y in ctx.y_set(v) {
        for word in sys.reduced_words(sys.inverse(y)) {
            out.push(unique_subexpression(ctx, v, y, &word)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Minimal paths to every orbit by the subsequence test over all admissible
/// paths of length at most `max_len`.
pub fn minimal_paths_direct(
    graph: &KgbGraph,
    v0: OrbitId,
    max_len: usize,
) -> Result<BTreeMap<OrbitId, Vec<AdmissiblePath>>, PathError> {
    let all = enumerate_paths_from(graph, v0, max_len)?;
    let minimal: Vec<AdmissiblePath> = all.into_par_iter().filter(|p| is_minimal(graph, p)).collect();
    let mut out: BTreeMap<OrbitId, Vec<AdmissiblePath>> = graph.orbit_ids().map(|v| (v, Vec::new())).collect();
    for p in minimal {
        out.get_mut(&p.end()).unwrap().push(p);
    }
    for paths in out.values_mut() {
        paths.sort();
    }
    Ok(out)
}

/// Minimal admissible paths from `ctx.v0()` to every orbit, computed both by
/// the subsequence test and through `Y`; fails if the two disagree. When the
/// longest element is longer than [`DIRECT_MINIMALITY_CAP`] the subsequence
/// test is applied to a seeded random sample of the paths from `Y` only.
pub fn all_minimal_paths(ctx: &InvariantContext) -> Result<BTreeMap<OrbitId, Vec<AdmissiblePath>>, PathError> {
    let graph = ctx.graph();
    let sys = ctx.system();
    let by_y: BTreeMap<OrbitId, Vec<AdmissiblePath>> = graph
        .orbit_ids()
        .map(|v| Ok((v, minimal_paths_from_y(ctx, v)?)))
        .collect::<Result<_, PathError>>()?;
    let bound = sys.max_length();
    if bound <= DIRECT_MINIMALITY_CAP {
        let direct = minimal_paths_direct(graph, ctx.v0(), bound)?;
        if let Some((&v, _)) = direct.iter().find(|(v, paths)| by_y[v] != **paths) {
            return Err(PathError::RoutesDisagree(v));
        }
    } else {
        let mut rng = StdRng::seed_from_u64(ctx.v0().0 as u64);
        for (&v, paths) in &by_y {
            let sample: Vec<&AdmissiblePath> = paths.choose_multiple(&mut rng, SAMPLE_SIZE).collect();
            if sample.iter().any(|p| !is_minimal(graph, p)) {
                return Err(PathError::RoutesDisagree(v));
            }
        }
    }
    Ok(by_y)
}

/// Minimal paths from `ctx.v0()` to `v`; see [`all_minimal_paths`].
pub fn minimal_paths(ctx: &InvariantContext, v: OrbitId) -> Result<Vec<AdmissiblePath>, PathError> {
    let by_y = minimal_paths_from_y(ctx, v)?;
    let graph = ctx.graph();
    let bound = ctx.system().max_length();
    if bound <= DIRECT_MINIMALITY_CAP {
        let direct: Vec<AdmissiblePath> = enumerate_paths(graph, ctx.v0(), v, bound)?
            .into_par_iter()
            .filter(|p| is_minimal(graph, p))
            .collect();
        if direct != by_y {
            return Err(PathError::RoutesDisagree(v));
        }
    } else {
        let mut rng = StdRng::seed_from_u64(v.0 as u64);
        if by_y.choose_multiple(&mut rng, SAMPLE_SIZE).any(|p| !is_minimal(graph, p)) {
            return Err(PathError::RoutesDisagree(v));
        }
    }
    Ok(by_y)
}

/// For every `v`, `y ∈ Y_{v0}(v)` and reduced word of `y^{-1}`: exactly one
/// subexpression ends at `v`, and the prefix assertions hold.
pub fn verify_unique_subexpression(ctx: &InvariantContext) -> CheckReport {
    let sys = ctx.system();
    let mut r = CheckReport::new(Check::UniqueSubexpression, Some(ctx.v0()));
    for v in ctx.graph().orbit_ids() {
        for y in ctx.y_set(v) {
            for word in sys.reduced_words(sys.inverse(y)) {
                let res = unique_subexpression(ctx, v, y, &word);
                r.assert(res.is_ok(), || {
                    violation(&[v], sys, &[y], format!("word {}: {}", CoxeterSystem::format_word(&word), res.unwrap_err()))
                });
            }
        }
    }
    r.finish()
}

/// Path descriptions of `Y` and `Z`, the counting identity for minimal paths,
/// shortest paths inside minimal paths, and both compositions of the
/// bijection with `{(y, s)}`.
pub fn verify_path_theorems(ctx: &InvariantContext) -> CheckReport {
    let graph = ctx.graph();
    let sys = ctx.system();
    let mut r = CheckReport::new(Check::PathTheorems, Some(ctx.v0()));
    let minimal = match all_minimal_paths(ctx) {
        Ok(m) => m,
        Err(e) => {
            r.assert(false, || violation(&[], sys, &[], e.to_string()));
            return r.finish();
        }
    };
    for v in graph.orbit_ids() {
        let t = ctx.triple(v);
        let pmin = &minimal[&v];
        let ys: BTreeSet<WeylElement> = pmin.iter().map(|p| p.y(sys)).collect();
        r.assert(ys == t.y_set, || violation(&[v], sys, &[], "{y(p) : p minimal} != Y".into()));
        let words: usize = t.y_set.iter().map(|&y| sys.reduced_words(sys.inverse(y)).len()).sum();
        r.assert(pmin.len() == words, || {
            violation(&[v], sys, &[], format!("{} minimal paths, {words} reduced words", pmin.len()))
        });
        let short = shortest_paths(graph, ctx.v0(), v).expect("v0 closed");
        let zs: BTreeSet<WeylElement> = short.iter().map(|p| p.y(sys)).collect();
        r.assert(zs == t.z_set, || violation(&[v], sys, &[], "{y(p) : p shortest} != Z".into()));
        r.assert(short.iter().all(|p| pmin.binary_search(p).is_ok()), || {
            violation(&[v], sys, &[], "a shortest path is not minimal".into())
        });
        let zlen = t.z_set.iter().map(|&z| sys.length(z)).min();
        r.assert(short.first().map(|p| p.len()) == zlen, || {
            violation(&[v], sys, &[], "shortest path length differs from the length of Z".into())
        });
        for p in pmin {
            let y = p.y(sys);
            let back = unique_subexpression(ctx, v, y, &p.generators);
            r.assert(back.as_ref() == Ok(p), || violation(&[v], sys, &[y], format!("path {p} does not round-trip")));
        }
        for &y in &t.y_set {
            for word in sys.reduced_words(sys.inverse(y)) {
                let ok = unique_subexpression(ctx, v, y, &word)
                    .map(|p| p.y(sys) == y && p.generators == word && p.is_admissible(graph))
                    .unwrap_or(false);
                r.assert(ok, || violation(&[v], sys, &[y], "(y, s) does not round-trip".into()));
            }
        }
    }
    r.finish()
}
