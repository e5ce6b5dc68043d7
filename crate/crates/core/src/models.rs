//! Exact generators of KGB graphs.
//!
//! * The diagonal model: `G x G` with `K` the diagonal, whose orbits are the
//!   elements of `W`.
//! * The clan model for `U(p, q)`, i.e. `GL(p+q)` with `K = GL(p) x GL(q)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterSystem, WeylElement};
use crate::kgb::{KgbError, KgbGraph, OrbitId, OrbitRecord, RootStatus};

/// Largest `p + q` accepted by [`ClanModel::new`].
pub const CLAN_SIZE_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Kgb(#[from] KgbError),
    #[error("clan model needs p, q >= 1 and p + q <= {CLAN_SIZE_CAP}, got ({p}, {q})")]
    ClanSize { p: usize, q: usize },
    #[error("bad clan `{0}`")]
    BadClan(String),
    #[error("bad status pattern `{0}`")]
    BadPattern(String),
}

/// `W x W` with the factor swap, generated by `(s, e)` (index `s`) and
/// `(e, t)` (index `rank + t`).
pub fn product_system(base: &CoxeterSystem) -> Result<CoxeterSystem, CoxeterError> {
    let r = base.rank();
    let mut matrix = vec![vec![2u8; 2 * r]; 2 * r];
    for i in 0..r {
        for j in 0..r {
            matrix[i][j] = base.matrix()[i][j];
            matrix[r + i][r + j] = base.matrix()[i][j];
        }
    }
    let twist = (0..2 * r).map(|s| (s + r) % (2 * r)).collect();
    CoxeterSystem::new(matrix, twist)
}

/// The diagonal model over a finite Weyl group `W`.
#[derive(Clone, Debug)]
pub struct DiagonalModel {
    base: Arc<CoxeterSystem>,
    graph: KgbGraph,
    // product element index -> (w1, w2)
    split: Vec<(WeylElement, WeylElement)>,
    // w1.index * |W| + w2.index -> product element
    join: Vec<WeylElement>,
}

impl DiagonalModel {
    pub fn new(base: CoxeterSystem) -> Result<Self, ModelError> {
        let base = Arc::new(base);
        let product = Arc::new(product_system(&base)?);
        let r = base.rank();
        let n = base.order();

        let mut join = vec![product.identity(); n * n];
        let mut split = vec![(base.identity(), base.identity()); product.order()];
        for w1 in base.elements() {
            for w2 in base.elements() {
                let mut word = base.reduced_word(w1);
                word.extend(base.reduced_word(w2).into_iter().map(|t| t + r));
                let x = product.from_word(&word)?;
                join[w1.index() * n + w2.index()] = x;
                split[x.index()] = (w1, w2);
            }
        }

        // element indices already refine length, so orbit id = element index
        let id = |u: WeylElement| OrbitId::from(u.index());
        let orbits = base
            .elements()
            .map(|u| {
                let mut status = Vec::with_capacity(2 * r);
                let mut cross = Vec::with_capacity(2 * r);
                let mut cayley = Vec::with_capacity(2 * r);
                for s in 0..r {
                    let su = base.lmul(s, u);
                    let up = base.length(su) > base.length(u);
                    status.push(if up { RootStatus::ComplexAscent } else { RootStatus::ComplexDescent });
                    cross.push(id(su));
                    cayley.push(id(base.demazure_generator(s, u)));
                }
                for t in 0..r {
                    let ut = base.rmul(u, t);
                    let up = base.length(ut) > base.length(u);
                    status.push(if up { RootStatus::ComplexAscent } else { RootStatus::ComplexDescent });
                    cross.push(id(ut));
                    cayley.push(id(base.demazure_generator_right(u, t)));
                }
                OrbitRecord {
                    length: base.length(u) as u32,
                    phi: join[u.index() * n + base.inverse(u).index()],
                    status,
                    cross,
                    cayley,
                    label: Some(base.format(u)),
                }
            })
            .collect();
        let graph = KgbGraph::new(product, orbits)?;
        Ok(DiagonalModel { base, graph, split, join })
    }

    pub fn from_type(name: &str) -> Result<Self, ModelError> {
        Self::new(CoxeterSystem::from_type(name)?)
    }

    /// The diagonal model whose table equals `graph` up to labels, if any.
    pub fn recognize(graph: &KgbGraph) -> Option<Self> {
        let sys = graph.system();
        if !sys.rank().is_multiple_of(2) {
            return None;
        }
        let r = sys.rank() / 2;
        let matrix: Vec<Vec<u8>> = sys.matrix()[..r].iter().map(|row| row[..r].to_vec()).collect();
        let base = CoxeterSystem::untwisted(matrix).ok()?;
        if product_system(&base).ok()? != *sys || base.order() != graph.len() {
            return None;
        }
        let model = Self::new(base).ok()?;
        let same = graph.orbit_ids().all(|v| {
            let (a, b) = (graph.record(v), model.graph.record(v));
            a.length == b.length
                && a.phi == b.phi
                && a.status == b.status
                && a.cross == b.cross
                && a.cayley == b.cayley
        });
        same.then_some(model)
    }

    pub fn base(&self) -> &CoxeterSystem {
        &self.base
    }

    pub fn graph(&self) -> &KgbGraph {
        &self.graph
    }

    pub fn into_graph(self) -> KgbGraph {
        self.graph
    }

    /// The orbit of `u in W`.
    pub fn orbit(&self, u: WeylElement) -> OrbitId {
        OrbitId::from(u.index())
    }

    /// The element of `W` labelling an orbit.
    pub fn element(&self, v: OrbitId) -> WeylElement {
        self.base.element(v.index())
    }

    /// `(w1, w2) in W x W`.
    pub fn pair(&self, w1: WeylElement, w2: WeylElement) -> WeylElement {
        self.join[w1.index() * self.base.order() + w2.index()]
    }

    pub fn split(&self, x: WeylElement) -> (WeylElement, WeylElement) {
        self.split[x.index()]
    }
}

/// One position of a clan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClanEntry {
    Plus,
    Minus,
    /// End of a matched pair; pairs are numbered from 1 by first occurrence.
    Pair(u8),
}

/// A `(p, q)`-clan with normalized pair labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clan(Vec<ClanEntry>);

impl Clan {
    /// Builds a clan, renumbering pairs by first occurrence. Fails unless each
    /// label occurs exactly twice.
    pub fn new(entries: Vec<ClanEntry>) -> Result<Self, ModelError> {
        let mut count: BTreeMap<u8, usize> = BTreeMap::new();
        for e in &entries {
            if let ClanEntry::Pair(k) = e {
                *count.entry(*k).or_default() += 1;
            }
        }
        if count.values().any(|&c| c != 2) {
            return Err(ModelError::BadClan(Clan(entries).to_string()));
        }
        Ok(Self::normalized(entries))
    }

    fn normalized(mut entries: Vec<ClanEntry>) -> Self {
        let mut relabel: BTreeMap<u8, u8> = BTreeMap::new();
        for e in entries.iter_mut() {
            if let ClanEntry::Pair(k) = e {
                let next = relabel.len() as u8 + 1;
                *k = *relabel.entry(*k).or_insert(next);
            }
        }
        Clan(entries)
    }

    pub fn entries(&self) -> &[ClanEntry] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(p, q)` read off the signature.
    pub fn signature(&self) -> (usize, usize) {
        let plus = self.0.iter().filter(|e| **e == ClanEntry::Plus).count();
        let minus = self.0.iter().filter(|e| **e == ClanEntry::Minus).count();
        let pairs = (self.0.len() - plus - minus) / 2;
        (plus + pairs, minus + pairs)
    }

    pub fn pair_count(&self) -> usize {
        self.0.iter().filter(|e| matches!(e, ClanEntry::Pair(_))).count() / 2
    }

    /// Position matched with `i`, if `i` is a pair end.
    pub fn partner(&self, i: usize) -> Option<usize> {
        match self.0[i] {
            ClanEntry::Pair(k) => (0..self.0.len()).find(|&j| j != i && self.0[j] == ClanEntry::Pair(k)),
            _ => None,
        }
    }

    /// Matched pairs `(i, j)` with `i < j`, by left end.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.0.len())
            .filter_map(|i| self.partner(i).filter(|&j| j > i).map(|j| (i, j)))
            .collect()
    }

    /// The involution of `{0..n-1}` exchanging matched positions.
    pub fn involution(&self) -> Vec<usize> {
        (0..self.0.len()).map(|i| self.partner(i).unwrap_or(i)).collect()
    }

    pub fn swapped(&self, i: usize) -> Clan {
        let mut e = self.0.clone();
        e.swap(i, i + 1);
        Self::normalized(e)
    }

    fn paired(&self, i: usize) -> Clan {
        let mut e = self.0.clone();
        e[i] = ClanEntry::Pair(u8::MAX);
        e[i + 1] = ClanEntry::Pair(u8::MAX);
        Self::normalized(e)
    }

    /// Exchanges `+` and `-`.
    pub fn sign_swapped(&self) -> Clan {
        Clan(
            self.0
                .iter()
                .map(|e| match e {
                    ClanEntry::Plus => ClanEntry::Minus,
                    ClanEntry::Minus => ClanEntry::Plus,
                    p => *p,
                })
                .collect(),
        )
    }

    /// Orbit dimension minus the closed-orbit dimension, from the positions of the pairs.
    pub fn length_formula(&self) -> usize {
        let pairs = self.pairs();
        pairs
            .iter()
            .map(|&(i, j)| {
                let crossing = pairs.iter().filter(|&&(s, t)| s < i && i < t && t < j).count();
                j - i - crossing
            })
            .sum()
    }

    /// All `(p, q)`-clans, in lexicographic order.
    pub fn enumerate(p: usize, q: usize) -> Vec<Clan> {
        fn rec(p: usize, q: usize, open: usize, cur: &mut Vec<ClanEntry>, n: usize, next: u8, out: &mut Vec<Clan>) {
            let remaining = n - cur.len();
            if remaining == 0 {
                if open == 0 && p == 0 && q == 0 {
                    out.push(Clan::normalized(cur.clone()));
                }
                return;
            }
            // every open pair consumes one of p and one of q
            if p + q < remaining + open || remaining < open {
                return;
            }
            if p > open {
                cur.push(ClanEntry::Plus);
                rec(p - 1, q, open, cur, n, next, out);
                cur.pop();
            }
            if q > open {
                cur.push(ClanEntry::Minus);
                rec(p, q - 1, open, cur, n, next, out);
                cur.pop();
            }
            for k in 1..next {
                let used = cur.iter().filter(|e| **e == ClanEntry::Pair(k)).count();
                if used == 1 {
                    cur.push(ClanEntry::Pair(k));
                    rec(p - 1, q - 1, open - 1, cur, n, next, out);
                    cur.pop();
                }
            }
            if p > open && q > open {
                cur.push(ClanEntry::Pair(next));
                rec(p, q, open + 1, cur, n, next + 1, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(p, q, 0, &mut Vec::new(), p + q, 1, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Clan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            match e {
                ClanEntry::Plus => f.write_str("+")?,
                ClanEntry::Minus => f.write_str("-")?,
                ClanEntry::Pair(k) => write!(f, "{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Clan {
    type Err = ModelError;

    /// Parses strings like `+-1-1`; pair labels are single digits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(ClanEntry::Plus),
                '-' => Ok(ClanEntry::Minus),
                d if d.is_ascii_digit() && d != '0' => Ok(ClanEntry::Pair(d as u8 - b'0')),
                _ => Err(ModelError::BadClan(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.is_empty() {
            return Err(ModelError::BadClan(s.to_string()));
        }
        Clan::new(entries)
    }
}

/// The clan model for `U(p, q)`.
#[derive(Clone, Debug)]
pub struct ClanModel {
    p: usize,
    q: usize,
    clans: Vec<Clan>,
    graph: KgbGraph,
}

impl ClanModel {
    pub fn new(p: usize, q: usize) -> Result<Self, ModelError> {
        if p == 0 || q == 0 || p + q > CLAN_SIZE_CAP {
            return Err(ModelError::ClanSize { p, q });
        }
        let n = p + q;
        let system = Arc::new(CoxeterSystem::from_type(&format!("A{}", n - 1))?);
        let all = Clan::enumerate(p, q);

        let moves: Vec<Vec<(RootStatus, Clan, Clan)>> =
            all.iter().map(|c| (0..n - 1).map(|i| clan_move(c, i)).collect()).collect();

        // lengths by breadth-first search along ascents from the sign-only clans
        let index: BTreeMap<&Clan, usize> = all.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut length = vec![usize::MAX; all.len()];
        let mut layer: Vec<usize> = (0..all.len()).filter(|&i| all[i].pair_count() == 0).collect();
        layer.iter().for_each(|&i| length[i] = 0);
        let mut d = 0;
        while !layer.is_empty() {
            d += 1;
            let mut next = BTreeSet::new();
            for &i in &layer {
                for (st, _, up) in &moves[i] {
                    let j = index[up];
                    if st.is_ascent() && length[j] == usize::MAX {
                        length[j] = d;
                        next.insert(j);
                    }
                }
            }
            layer = next.into_iter().collect();
        }

        let mut order: Vec<usize> = (0..all.len()).collect();
        order.sort_by(|&a, &b| (length[a], &all[a]).cmp(&(length[b], &all[b])));
        let mut id_of = vec![OrbitId(0); all.len()];
        for (pos, &i) in order.iter().enumerate() {
            id_of[i] = OrbitId::from(pos);
        }

        let mut orbits = Vec::with_capacity(all.len());
        for &i in &order {
            let clan = &all[i];
            let status = moves[i].iter().map(|m| m.0).collect();
            let cross = moves[i].iter().map(|m| id_of[index[&m.1]]).collect();
            let cayley = moves[i].iter().map(|m| id_of[index[&m.2]]).collect();
            orbits.push(OrbitRecord {
                length: length[i] as u32,
                phi: involution_element(&system, &clan.involution()),
                status,
                cross,
                cayley,
                label: Some(clan.to_string()),
            });
        }
        let clans = order.iter().map(|&i| all[i].clone()).collect();
        let graph = KgbGraph::new(system, orbits)?;
        Ok(ClanModel { p, q, clans, graph })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn graph(&self) -> &KgbGraph {
        &self.graph
    }

    pub fn into_graph(self) -> KgbGraph {
        self.graph
    }

    pub fn clan(&self, v: OrbitId) -> &Clan {
        &self.clans[v.index()]
    }

    pub fn clans(&self) -> &[Clan] {
        &self.clans
    }

    pub fn orbit(&self, clan: &Clan) -> Option<OrbitId> {
        self.clans.iter().position(|c| c == clan).map(OrbitId::from)
    }

    /// `|W_K| = p! q!`
    pub fn wk_order(&self) -> usize {
        (1..=self.p).product::<usize>() * (1..=self.q).product::<usize>()
    }
}

/// Status, cross image and Cayley image of `s_i` (positions `i`, `i+1`).
fn clan_move(c: &Clan, i: usize) -> (RootStatus, Clan, Clan) {
    use ClanEntry::*;
    let e = c.entries();
    match (e[i], e[i + 1]) {
        (Plus, Plus) | (Minus, Minus) => (RootStatus::CompactImaginary, c.clone(), c.clone()),
        (Plus, Minus) | (Minus, Plus) => {
            (RootStatus::NoncompactImaginaryNoncanc, c.swapped(i), c.paired(i))
        }
        (Pair(a), Pair(b)) if a == b => (RootStatus::RealNoncanc, c.clone(), c.clone()),
        _ => {
            let pi = c.involution();
            if pi[i] < pi[i + 1] {
                let up = c.swapped(i);
                (RootStatus::ComplexAscent, up.clone(), up)
            } else {
                (RootStatus::ComplexDescent, c.swapped(i), c.clone())
            }
        }
    }
}

/// The element of `S_n` (type `A_{n-1}`) with one-line notation `perm`.
pub fn involution_element(system: &CoxeterSystem, perm: &[usize]) -> WeylElement {
    // bubble sort records a word w with perm = w in one-line notation
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    loop {
        let Some(i) = (0..p.len() - 1).find(|&i| p[i] > p[i + 1]) else { break };
        p.swap(i, i + 1);
        word.push(i);
    }
    word.reverse();
    system.from_word(&word).expect("generator in range")
}

/// Per-generator condition used by [`find_orbit_by_status`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatusPredicate {
    Any,
    Exact(RootStatus),
    Compact,
    Noncompact,
    Imaginary,
    Real,
    Complex,
}

impl StatusPredicate {
    pub fn matches(self, st: RootStatus) -> bool {
        match self {
            StatusPredicate::Any => true,
            StatusPredicate::Exact(x) => st == x,
            StatusPredicate::Compact => st == RootStatus::CompactImaginary,
            StatusPredicate::Noncompact => st.is_noncompact(),
            StatusPredicate::Imaginary => st.is_imaginary(),
            StatusPredicate::Real => st.is_real(),
            StatusPredicate::Complex => st.is_complex(),
        }
    }
}

impl FromStr for StatusPredicate {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(st) = RootStatus::from_code(s) {
            return Ok(StatusPredicate::Exact(st));
        }
        Ok(match s {
            "*" | "any" | "_" => StatusPredicate::Any,
            "c" | "compact" => StatusPredicate::Compact,
            "n" | "noncompact" => StatusPredicate::Noncompact,
            "i" | "imaginary" => StatusPredicate::Imaginary,
            "r" | "real" => StatusPredicate::Real,
            "C" | "complex" => StatusPredicate::Complex,
            _ => return Err(ModelError::BadPattern(s.to_string())),
        })
    }
}

/// A status predicate per simple root, optionally restricted to closed orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatusPattern {
    pub roots: Vec<StatusPredicate>,
    pub closed_only: bool,
}

impl StatusPattern {
    pub fn new(roots: Vec<StatusPredicate>) -> Self {
        StatusPattern { roots, closed_only: false }
    }

    pub fn closed(mut self) -> Self {
        self.closed_only = true;
        self
    }

    /// Every root must satisfy `pred` (e.g. "any root imaginary" is the negation of
    /// an all-complex pattern).
    pub fn uniform(rank: usize, pred: StatusPredicate) -> Self {
        Self::new(vec![pred; rank])
    }

    pub fn matches(&self, graph: &KgbGraph, v: OrbitId) -> bool {
        (!self.closed_only || graph.is_closed(v))
            && self.roots.len() == graph.rank()
            && self.roots.iter().enumerate().all(|(s, p)| p.matches(graph.status(v, s)))
    }
}

impl FromStr for StatusPattern {
    type Err = ModelError;

    /// Comma separated predicates, e.g. `n,c,n` or `C+,*,r!`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let roots = s.split(',').map(str::parse).collect::<Result<Vec<_>, _>>()?;
        Ok(StatusPattern::new(roots))
    }
}

/// All orbits matching `pattern`, in id order.
pub fn find_orbit_by_status(graph: &KgbGraph, pattern: &StatusPattern) -> BTreeSet<OrbitId> {
    graph.orbit_ids().filter(|&v| pattern.matches(graph, v)).collect()
}

/// Orbits at which some root has status matching `pred`.
pub fn orbits_with_any(graph: &KgbGraph, pred: StatusPredicate) -> BTreeSet<OrbitId> {
    graph
        .orbit_ids()
        .filter(|&v| (0..graph.rank()).any(|s| pred.matches(graph.status(v, s))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clan_counts() {
        // brute force: all words over {+, -, 1..4} of length n, normalized and filtered
        fn brute(p: usize, q: usize) -> usize {
            let n = p + q;
            let letters: Vec<ClanEntry> = [ClanEntry::Plus, ClanEntry::Minus]
                .into_iter()
                .chain((1..=4).map(ClanEntry::Pair))
                .collect();
            let mut seen = BTreeSet::new();
            let total = letters.len().pow(n as u32);
            for mut code in 0..total {
                let mut e = Vec::new();
                for _ in 0..n {
                    e.push(letters[code % letters.len()]);
                    code /= letters.len();
                }
                if let Ok(c) = Clan::new(e) {
                    if c.signature() == (p, q) {
                        seen.insert(c);
                    }
                }
            }
            seen.len()
        }
        for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (3, 2)] {
            assert_eq!(Clan::enumerate(p, q).len(), brute(p, q), "({p},{q})");
        }
        assert_eq!(Clan::enumerate(2, 2).len(), 21);
        assert_eq!(Clan::enumerate(1, 1).len(), 3);
    }

    #[test]
    fn clan_parse_normalizes() {
        let c: Clan = "2-+2".parse().unwrap();
        assert_eq!(c.to_string(), "1-+1");
        assert_eq!(c.signature(), (2, 2));
        assert_eq!(c.pairs(), vec![(0, 3)]);
        assert!("1-+".parse::<Clan>().is_err());
        assert!("x".parse::<Clan>().is_err());
    }

    #[test]
    fn clan_11_table() {
        let m = ClanModel::new(1, 1).unwrap();
        let g = m.graph();
        assert_eq!(g.len(), 3);
        assert_eq!(g.closed_orbits().len(), 2);
        let labels: Vec<String> = m.clans().iter().map(|c| c.to_string()).collect();
        assert_eq!(labels, ["+-", "-+", "11"]);
        let (a, b, open) = (OrbitId(0), OrbitId(1), OrbitId(2));
        assert_eq!(g.cross(a, 0), b);
        assert_eq!(g.status(open, 0), RootStatus::RealNoncanc);
        assert_eq!(g.p_set(0, open).len(), 3);
        assert_eq!(g.p_set(0, a), BTreeSet::from([a, b, open]));
        // the open orbit's Springer value is s
        assert_eq!(g.springer(open), g.system().generator(0));
    }

    #[test]
    fn clan_models_validate() {
        for (p, q) in (1..=5).flat_map(|p| (1..=6 - p).map(move |q| (p, q))) {
            let m = ClanModel::new(p, q).unwrap();
            let g = m.graph();
            assert!(g.validate().is_empty());
            let n = p + q;
            let binom = (1..=n).product::<usize>() / m.wk_order();
            assert_eq!(g.closed_orbits().len(), binom);
            for v in g.orbit_ids() {
                assert_eq!(g.length(v), m.clan(v).length_formula(), "({p},{q}) {}", m.clan(v));
            }
            let top = g.max_length();
            assert_eq!(g.orbit_ids().filter(|&v| g.length(v) == top).count(), 1);
        }
    }

    #[test]
    fn clan_sign_swap_isomorphism() {
        let a = ClanModel::new(3, 1).unwrap();
        let b = ClanModel::new(1, 3).unwrap();
        for v in a.graph().orbit_ids() {
            let w = b.orbit(&a.clan(v).sign_swapped()).unwrap();
            let (ga, gb) = (a.graph(), b.graph());
            for s in 0..ga.rank() {
                assert_eq!(ga.status(v, s), gb.status(w, s));
                assert_eq!(b.clan(gb.cross(w, s)), &a.clan(ga.cross(v, s)).sign_swapped());
                assert_eq!(b.clan(gb.cayley(w, s)), &a.clan(ga.cayley(v, s)).sign_swapped());
            }
            assert_eq!(ga.length(v), gb.length(w));
        }
    }

    #[test]
    fn clan_cap() {
        assert!(ClanModel::new(0, 2).is_err());
        assert!(ClanModel::new(5, 4).is_err());
    }

    #[test]
    fn su22_closed_pattern() {
        let m = ClanModel::new(2, 2).unwrap();
        let pat: StatusPattern = "n,c,n".parse().unwrap();
        let found = find_orbit_by_status(m.graph(), &pat.closed());
        let labels: BTreeSet<String> = found.iter().map(|&v| m.clan(v).to_string()).collect();
        assert_eq!(labels, BTreeSet::from(["+--+".to_string(), "-++-".to_string()]));
    }

    #[test]
    fn diagonal_a1() {
        let d = DiagonalModel::from_type("A1").unwrap();
        let g = d.graph();
        assert_eq!(g.len(), 2);
        assert_eq!(g.closed_orbits(), vec![OrbitId(0)]);
        assert_eq!(g.length(OrbitId(1)), 1);
        let sys = g.system();
        assert_eq!(sys.order(), 4);
        for v in g.orbit_ids() {
            let u = d.element(v);
            assert_eq!(d.split(g.springer(v)), (u, d.base().inverse(u)));
        }
    }

    #[test]
    fn recognize_diagonal() {
        for t in ["A1", "A2", "B2"] {
            let d = DiagonalModel::from_type(t).unwrap();
            let (sys, mut orbits) = d.graph().clone().into_parts();
            orbits.iter_mut().for_each(|o| o.label = None);
            let g = KgbGraph::new(sys, orbits).unwrap();
            assert_eq!(DiagonalModel::recognize(&g).unwrap().base(), d.base());
        }
        assert!(DiagonalModel::recognize(ClanModel::new(2, 1).unwrap().graph()).is_none());
        assert!(DiagonalModel::recognize(ClanModel::new(1, 1).unwrap().graph()).is_none());
    }

    #[test]
    fn diagonal_models_all_complex() {
        for t in ["A1", "A2", "B2", "A3", "G2", "A1xA1"] {
            let d = DiagonalModel::from_type(t).unwrap();
            let g = d.graph();
            assert_eq!(g.len(), d.base().order());
            assert!(orbits_with_any(g, StatusPredicate::Imaginary).is_empty());
            assert!(orbits_with_any(g, StatusPredicate::Real).is_empty());
            for v in g.orbit_ids() {
                assert_eq!(g.length(v), d.base().length(d.element(v)));
            }
            for x in g.system().elements() {
                let (a, b) = d.split(x);
                assert_eq!(d.pair(a, b), x);
            }
        }
    }

    #[test]
    fn corrupted_status_is_reported() {
        let m = ClanModel::new(2, 2).unwrap();
        let (sys, mut orbits) = m.into_graph().into_parts();
        // swap a compact status for a complex one
        let v = orbits.iter().position(|o| o.status[1] == RootStatus::CompactImaginary).unwrap();
        orbits[v].status[1] = RootStatus::ComplexAscent;
        let g = KgbGraph::new_unchecked(sys, orbits);
        let report = g.validate();
        assert!(report.rules().contains(&crate::kgb::Rule::StatusClassification));
    }
}
