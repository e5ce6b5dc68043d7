//! The KGB graph: the finite orbit set with, for every orbit and simple
//! reflection, the root status, the cross action and the Cayley (monoidal)
//! image, plus orbit lengths and Springer values.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::coxeter::{CoxeterSystem, Generator, WeylElement};

/// Position of an orbit in the orbit table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitId(pub u32);

impl OrbitId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for OrbitId {
    fn from(i: usize) -> Self {
        OrbitId(i as u32)
    }
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Type of a simple root relative to an orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootStatus {
    CompactImaginary,
    NoncompactImaginaryCanc,
    NoncompactImaginaryNoncanc,
    RealCanc,
    RealNoncanc,
    ComplexAscent,
    ComplexDescent,
}

impl RootStatus {
    pub const ALL: [RootStatus; 7] = [
        RootStatus::CompactImaginary,
        RootStatus::NoncompactImaginaryCanc,
        RootStatus::NoncompactImaginaryNoncanc,
        RootStatus::RealCanc,
        RootStatus::RealNoncanc,
        RootStatus::ComplexAscent,
        RootStatus::ComplexDescent,
    ];

    /// Two-character code used in orbit files.
    pub fn code(self) -> &'static str {
        match self {
            RootStatus::CompactImaginary => "cc",
            RootStatus::NoncompactImaginaryCanc => "n=",
            RootStatus::NoncompactImaginaryNoncanc => "n!",
            RootStatus::RealCanc => "r=",
            RootStatus::RealNoncanc => "r!",
            RootStatus::ComplexAscent => "C+",
            RootStatus::ComplexDescent => "C-",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.code() == code)
    }

    pub fn is_imaginary(self) -> bool {
        matches!(
            self,
            RootStatus::CompactImaginary
                | RootStatus::NoncompactImaginaryCanc
                | RootStatus::NoncompactImaginaryNoncanc
        )
    }

    pub fn is_noncompact(self) -> bool {
        matches!(self, RootStatus::NoncompactImaginaryCanc | RootStatus::NoncompactImaginaryNoncanc)
    }

    pub fn is_real(self) -> bool {
        matches!(self, RootStatus::RealCanc | RootStatus::RealNoncanc)
    }

    pub fn is_complex(self) -> bool {
        matches!(self, RootStatus::ComplexAscent | RootStatus::ComplexDescent)
    }

    /// The root moves the orbit up under `m(s)`: complex ascent or noncompact imaginary.
    pub fn is_ascent(self) -> bool {
        self == RootStatus::ComplexAscent || self.is_noncompact()
    }

    /// Number of orbits in `p(s, v)` for this status.
    pub fn fiber_size(self) -> usize {
        match self {
            RootStatus::CompactImaginary => 1,
            RootStatus::NoncompactImaginaryNoncanc | RootStatus::RealNoncanc => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for RootStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Everything stored about one orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub length: u32,
    pub phi: WeylElement,
    pub status: Vec<RootStatus>,
    pub cross: Vec<OrbitId>,
    pub cayley: Vec<OrbitId>,
    /// Optional human-readable name (a clan, a group element...).
    pub label: Option<String>,
}

/// A reduced decomposition of an orbit: a chain of Cayley ascents from a
/// closed orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedDecomposition {
    pub orbits: Vec<OrbitId>,
    pub generators: Vec<Generator>,
}

impl ReducedDecomposition {
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
}

#[derive(Debug, Error)]
pub enum KgbError {
    #[error("orbit table failed validation:\n{0}")]
    Invalid(ValidationReport),
}

/// Which family of checks a [`Failure`] belongs to. Declaration order is the
/// report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    /// Table shape, id ranges, element ownership.
    Structure,
    /// The seven-case analysis of `p(s, v)`.
    CaseAnalysis,
    /// Springer value along Cayley ascents.
    SpringerRecursion,
    /// `phi(s.v) = s phi(v) theta(s)`.
    CrossCompatibility,
    /// `theta(phi(v)) = phi(v)^{-1}`.
    TwistedInvolution,
    /// Status agrees with how `phi(v) theta` moves the simple root.
    StatusClassification,
    /// Lengths grow by one along ascents and match the ascent distance from closed orbits.
    LengthRecursion,
    /// Length zero, trivial Springer value and closedness coincide.
    ClosedOrbits,
}

impl Rule {
    pub fn tag(self) -> char {
        match self {
            Rule::Structure => 's',
            Rule::CaseAnalysis => 'a',
            Rule::SpringerRecursion => 'b',
            Rule::CrossCompatibility => 'c',
            Rule::TwistedInvolution => 'd',
            Rule::StatusClassification => 'e',
            Rule::LengthRecursion => 'f',
            Rule::ClosedOrbits => 'g',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub rule: Rule,
    pub orbit: Option<OrbitId>,
    pub root: Option<Generator>,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule ({}) {:?}", self.rule.tag(), self.rule)?;
        if let Some(v) = self.orbit {
            write!(f, " orbit {v}")?;
        }
        if let Some(s) = self.root {
            write!(f, " s{}", s + 1)?;
        }
        write!(f, ": {}", self.message)
    }
}

/// Result of [`KgbGraph::validate`]; empty means the table is consistent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn rules(&self) -> BTreeSet<Rule> {
        self.failures.iter().map(|f| f.rule).collect()
    }

    fn push(&mut self, rule: Rule, orbit: Option<usize>, root: Option<Generator>, message: String) {
        self.failures.push(Failure { rule, orbit: orbit.map(OrbitId::from), root, message });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fail in &self.failures {
            writeln!(f, "{fail}")?;
        }
        Ok(())
    }
}

/// The orbit set `V` with all of its structure. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KgbGraph {
    system: Arc<CoxeterSystem>,
    orbits: Vec<OrbitRecord>,
}

impl KgbGraph {
    /// Builds the graph and rejects it unless [`KgbGraph::validate`] passes.
    pub fn new(system: Arc<CoxeterSystem>, orbits: Vec<OrbitRecord>) -> Result<Self, KgbError> {
        let g = Self::new_unchecked(system, orbits);
        let report = g.validate();
        if report.is_empty() {
            Ok(g)
        } else {
            Err(KgbError::Invalid(report))
        }
    }

    /// Builds without validating. Other queries may panic on a table that
    /// does not pass [`KgbGraph::validate`].
    pub fn new_unchecked(system: Arc<CoxeterSystem>, orbits: Vec<OrbitRecord>) -> Self {
        KgbGraph { system, orbits }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn system_arc(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn orbit_ids(&self) -> impl DoubleEndedIterator<Item = OrbitId> + ExactSizeIterator {
        (0..self.orbits.len() as u32).map(OrbitId)
    }

    pub fn records(&self) -> &[OrbitRecord] {
        &self.orbits
    }

    pub fn record(&self, v: OrbitId) -> &OrbitRecord {
        &self.orbits[v.index()]
    }

    /// Consumes the graph, returning its parts (used to build modified copies).
    pub fn into_parts(self) -> (Arc<CoxeterSystem>, Vec<OrbitRecord>) {
        (self.system, self.orbits)
    }

    pub fn status(&self, v: OrbitId, s: Generator) -> RootStatus {
        self.orbits[v.index()].status[s]
    }

    pub fn cross(&self, v: OrbitId, s: Generator) -> OrbitId {
        self.orbits[v.index()].cross[s]
    }

    /// `m(s) . v`
    pub fn cayley(&self, v: OrbitId, s: Generator) -> OrbitId {
        self.orbits[v.index()].cayley[s]
    }

    pub fn length(&self, v: OrbitId) -> usize {
        self.orbits[v.index()].length as usize
    }

    pub fn label(&self, v: OrbitId) -> Option<&str> {
        self.orbits[v.index()].label.as_deref()
    }

    /// Stored Springer value `phi(v)`.
    pub fn springer(&self, v: OrbitId) -> WeylElement {
        self.orbits[v.index()].phi
    }

    /// The closed orbits `V0`.
    pub fn closed_orbits(&self) -> Vec<OrbitId> {
        self.orbit_ids().filter(|&v| self.length(v) == 0).collect()
    }

    pub fn is_closed(&self, v: OrbitId) -> bool {
        self.length(v) == 0
    }

    pub fn max_length(&self) -> usize {
        self.orbit_ids().map(|v| self.length(v)).max().unwrap_or(0)
    }

    /// `m(w) . v`, applying the letters of a reduced word right to left.
    pub fn monoidal_action(&self, w: WeylElement, v: OrbitId) -> OrbitId {
        self.monoidal_word(&self.system.reduced_word(w), v)
    }

    /// `m(a1) m(a2) ... m(ak) . v` for an arbitrary word.
    pub fn monoidal_word(&self, word: &[Generator], v: OrbitId) -> OrbitId {
        word.iter().rev().fold(v, |x, &s| self.cayley(x, s))
    }

    /// Cross action `w . v`.
    pub fn cross_action(&self, w: WeylElement, v: OrbitId) -> OrbitId {
        self.cross_word(&self.system.reduced_word(w), v)
    }

    pub fn cross_word(&self, word: &[Generator], v: OrbitId) -> OrbitId {
        word.iter().rev().fold(v, |x, &s| self.cross(x, s))
    }

    /// Springer value recomputed along a reduced decomposition, starting from
    /// the identity at the closed orbit.
    pub fn springer_along(&self, dec: &ReducedDecomposition) -> WeylElement {
        let sys = &self.system;
        let mut phi = sys.identity();
        for (j, &s) in dec.generators.iter().enumerate() {
            let u = dec.orbits[j];
            phi = match self.status(u, s) {
                RootStatus::ComplexAscent => {
                    sys.rmul(sys.lmul(s, phi), sys.twist()[s])
                }
                _ => sys.lmul(s, phi),
            };
        }
        phi
    }

    /// Ascent edges `(s, m(s).u)` out of `u`.
    fn ascents(&self, u: OrbitId) -> impl Iterator<Item = (Generator, OrbitId)> + '_ {
        (0..self.rank())
            .filter(move |&s| self.status(u, s).is_ascent())
            .map(move |s| (s, self.cayley(u, s)))
    }

    /// Canonical predecessor `(s, u)` of every non-closed orbit: breadth-first
    /// from `V0` along Cayley ascents, smallest generator first, then smallest
    /// predecessor.
    fn canonical_predecessors(&self) -> (Vec<Option<usize>>, Vec<Option<(Generator, OrbitId)>>) {
        let n = self.len();
        let mut dist: Vec<Option<usize>> = vec![None; n];
        let mut pred: Vec<Option<(Generator, OrbitId)>> = vec![None; n];
        let mut layer: Vec<OrbitId> = self.closed_orbits();
        for &v in &layer {
            dist[v.index()] = Some(0);
        }
        let mut d = 0;
        while !layer.is_empty() {
            let mut next: BTreeMap<OrbitId, (Generator, OrbitId)> = BTreeMap::new();
            for &u in &layer {
                for (s, v) in self.ascents(u) {
                    if v.index() >= n || dist[v.index()].is_some() {
                        continue;
                    }
                    let cand = (s, u);
                    next.entry(v).and_modify(|best| *best = (*best).min(cand)).or_insert(cand);
                }
            }
            d += 1;
            layer = next.keys().copied().collect();
            for (v, p) in next {
                dist[v.index()] = Some(d);
                pred[v.index()] = Some(p);
            }
        }
        (dist, pred)
    }

    /// The canonical reduced decomposition of `v`.
    pub fn reduced_decomposition(&self, v: OrbitId) -> ReducedDecomposition {
        let (_, pred) = self.canonical_predecessors();
        let mut orbits = vec![v];
        let mut generators = Vec::new();
        let mut cur = v;
        while let Some((s, u)) = pred[cur.index()] {
            generators.push(s);
            orbits.push(u);
            cur = u;
        }
        orbits.reverse();
        generators.reverse();
        ReducedDecomposition { orbits, generators }
    }

    /// Every reduced decomposition of `v` (all ascent chains from `V0`),
    /// sorted. Exponential; intended for small tables.
    pub fn all_reduced_decompositions(&self, v: OrbitId) -> Vec<ReducedDecomposition> {
        let mut into: Vec<Vec<(Generator, OrbitId)>> = vec![Vec::new(); self.len()];
        for u in self.orbit_ids() {
            for (s, w) in self.ascents(u) {
                into[w.index()].push((s, u));
            }
        }
        let mut out = Vec::new();
        let mut stack = vec![(v, Vec::<(Generator, OrbitId)>::new())];
        while let Some((cur, tail)) = stack.pop() {
            if self.is_closed(cur) {
                let mut orbits = vec![cur];
                let mut generators = Vec::new();
                for &(s, w) in tail.iter().rev() {
                    generators.push(s);
                    orbits.push(w);
                }
                out.push(ReducedDecomposition { orbits, generators });
                continue;
            }
            for &(s, u) in &into[cur.index()] {
                let mut t = tail.clone();
                t.push((s, cur));
                stack.push((u, t));
            }
        }
        out.sort();
        out
    }

    /// True when `dec` is a reduced decomposition ending anywhere.
    pub fn is_reduced_decomposition(&self, dec: &ReducedDecomposition) -> bool {
        dec.orbits.len() == dec.generators.len() + 1
            && dec.orbits.iter().all(|v| v.index() < self.len())
            && dec.generators.iter().all(|&s| s < self.rank())
            && self.is_closed(dec.orbits[0])
            && dec.generators.iter().enumerate().all(|(j, &s)| {
                let u = dec.orbits[j];
                self.status(u, s).is_ascent() && self.cayley(u, s) == dec.orbits[j + 1]
            })
    }

    /// `{u : m(s).u = v, u != v, s noncompact imaginary for u}`
    pub fn inverse_cayley(&self, s: Generator, v: OrbitId) -> BTreeSet<OrbitId> {
        self.orbit_ids()
            .filter(|&u| u != v && self.cayley(u, s) == v && self.status(u, s).is_noncompact())
            .collect()
    }

    /// `p(s, v)` assembled from the status of `s` at `v`.
    pub fn p_set(&self, s: Generator, v: OrbitId) -> BTreeSet<OrbitId> {
        let mut out = BTreeSet::from([v]);
        match self.status(v, s) {
            RootStatus::CompactImaginary => {}
            RootStatus::NoncompactImaginaryCanc | RootStatus::ComplexAscent => {
                out.insert(self.cayley(v, s));
            }
            RootStatus::NoncompactImaginaryNoncanc => {
                out.insert(self.cross(v, s));
                out.insert(self.cayley(v, s));
            }
            RootStatus::RealCanc | RootStatus::RealNoncanc => {
                out.extend(self.inverse_cayley(s, v));
            }
            RootStatus::ComplexDescent => {
                out.insert(self.cross(v, s));
            }
        }
        out
    }

    /// `{u : m(s).u = m(s).v}`, which equals `p(s, v)` on a valid table.
    pub fn cayley_fiber(&self, s: Generator, v: OrbitId) -> BTreeSet<OrbitId> {
        let top = self.cayley(v, s);
        self.orbit_ids().filter(|&u| self.cayley(u, s) == top).collect()
    }

    /// Checks every axiom and returns all failures, sorted.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        self.check_structure(&mut report);
        if !report.is_empty() {
            report.failures.sort();
            return report;
        }
        let fibers = self.all_cayley_fibers();
        for v in self.orbit_ids() {
            for s in 0..self.rank() {
                self.check_cases(v, s, &fibers, &mut report);
                self.check_springer(v, s, &mut report);
                self.check_classification(v, s, &mut report);
            }
            let phi = self.springer(v);
            if !self.system.is_twisted_involution(phi) {
                report.push(
                    Rule::TwistedInvolution,
                    Some(v.index()),
                    None,
                    format!("phi = {} is not a twisted involution", self.system.format(phi)),
                );
            }
            let closed_len = self.length(v) == 0;
            let closed_phi = phi == self.system.identity();
            if closed_len != closed_phi {
                report.push(
                    Rule::ClosedOrbits,
                    Some(v.index()),
                    None,
                    format!("length {} but phi = {}", self.length(v), self.system.format(phi)),
                );
            }
        }
        let (dist, _) = self.canonical_predecessors();
        for v in self.orbit_ids() {
            match dist[v.index()] {
                None => report.push(
                    Rule::LengthRecursion,
                    Some(v.index()),
                    None,
                    "not reachable from a closed orbit by Cayley ascents".to_string(),
                ),
                Some(d) if d != self.length(v) => report.push(
                    Rule::LengthRecursion,
                    Some(v.index()),
                    None,
                    format!("stored length {} but ascent distance {d}", self.length(v)),
                ),
                _ => {}
            }
        }
        if self.closed_orbits().is_empty() {
            report.push(Rule::ClosedOrbits, None, None, "no closed orbits".to_string());
        }
        report.failures.sort();
        report
    }

    fn check_structure(&self, report: &mut ValidationReport) {
        let n = self.len();
        let rank = self.rank();
        if n == 0 {
            report.push(Rule::Structure, None, None, "empty orbit table".to_string());
        }
        for (i, rec) in self.orbits.iter().enumerate() {
            for (what, len) in [
                ("status", rec.status.len()),
                ("cross", rec.cross.len()),
                ("cayley", rec.cayley.len()),
            ] {
                if len != rank {
                    report.push(
                        Rule::Structure,
                        Some(i),
                        None,
                        format!("{what} has {len} entries, expected {rank}"),
                    );
                }
            }
            for (s, id) in rec.cross.iter().enumerate() {
                if id.index() >= n {
                    report.push(Rule::Structure, Some(i), Some(s), format!("cross id {id} out of range"));
                }
            }
            for (s, id) in rec.cayley.iter().enumerate() {
                if id.index() >= n {
                    report.push(Rule::Structure, Some(i), Some(s), format!("cayley id {id} out of range"));
                }
            }
            if !self.system.owns(rec.phi) {
                report.push(Rule::Structure, Some(i), None, "phi is not in this Weyl group".to_string());
            }
        }
    }

    fn all_cayley_fibers(&self) -> Vec<BTreeMap<OrbitId, usize>> {
        (0..self.rank())
            .map(|s| {
                let mut count = BTreeMap::new();
                for u in self.orbit_ids() {
                    *count.entry(self.cayley(u, s)).or_insert(0) += 1;
                }
                count
            })
            .collect()
    }

    fn check_cases(
        &self,
        v: OrbitId,
        s: Generator,
        fibers: &[BTreeMap<OrbitId, usize>],
        report: &mut ValidationReport,
    ) {
        use RootStatus::*;
        let st = self.status(v, s);
        let c = self.cross(v, s);
        let m = self.cayley(v, s);
        let mut fail = |msg: String| report.failures.push(Failure {
            rule: Rule::CaseAnalysis,
            orbit: Some(v),
            root: Some(s),
            message: msg,
        });
        if self.cross(c, s) != v {
            fail(format!("cross action of s is not an involution: {v} -> {c} -> {}", self.cross(c, s)));
        }
        if self.cayley(m, s) != m {
            fail(format!("m(s) is not idempotent: {v} -> {m} -> {}", self.cayley(m, s)));
        }
        if (m != v) != st.is_ascent() {
            fail(format!("status {st} but m(s).v = {m}"));
        }
        let fiber = fibers[s][&m];
        if fiber != st.fiber_size() {
            fail(format!("status {st} needs |p(s,v)| = {} but {fiber} orbits share m(s).v", st.fiber_size()));
        }
        let pset = self.p_set(s, v);
        if pset.len() != st.fiber_size() || pset != self.cayley_fiber(s, v) {
            fail(format!("p(s,v) from status is {:?}, not the fiber of m(s)", pset));
        }
        match st {
            CompactImaginary => {
                if c != v {
                    fail(format!("compact root moved by cross action to {c}"));
                }
            }
            NoncompactImaginaryCanc => {
                if c != v {
                    fail(format!("cancellative root moved by cross action to {c}"));
                }
                if self.status(m, s) != RealCanc {
                    fail(format!("m(s).v = {m} has status {}, expected r=", self.status(m, s)));
                }
            }
            NoncompactImaginaryNoncanc => {
                if c == v || c == m {
                    fail(format!("v, s.v = {c}, m(s).v = {m} not pairwise distinct"));
                }
                if self.status(c, s) != NoncompactImaginaryNoncanc {
                    fail(format!("s.v = {c} has status {}, expected n!", self.status(c, s)));
                }
                if self.status(m, s) != RealNoncanc {
                    fail(format!("m(s).v = {m} has status {}, expected r!", self.status(m, s)));
                }
                if self.cayley(c, s) != m {
                    fail(format!("m(s).(s.v) = {} differs from m(s).v = {m}", self.cayley(c, s)));
                }
            }
            RealCanc | RealNoncanc => {
                if c != v {
                    fail(format!("real root moved by cross action to {c}"));
                }
                let below = self.inverse_cayley(s, v);
                let want = if st == RealCanc { NoncompactImaginaryCanc } else { NoncompactImaginaryNoncanc };
                if below.len() != st.fiber_size() - 1 || below.iter().any(|&u| self.status(u, s) != want) {
                    fail(format!("orbits below via m(s) are {:?}, expected {} of status {want}", below, st.fiber_size() - 1));
                }
            }
            ComplexAscent => {
                if c != m || c == v {
                    fail(format!("complex ascent needs m(s).v = s.v != v, got {m} and {c}"));
                }
                if self.status(m, s) != ComplexDescent {
                    fail(format!("m(s).v = {m} has status {}, expected C-", self.status(m, s)));
                }
            }
            ComplexDescent => {
                if c == v {
                    fail("complex descent fixed by cross action".to_string());
                }
                if self.status(c, s) != ComplexAscent {
                    fail(format!("s.v = {c} has status {}, expected C+", self.status(c, s)));
                }
            }
        }
    }

    fn check_springer(&self, v: OrbitId, s: Generator, report: &mut ValidationReport) {
        let sys = &*self.system;
        let phi = self.springer(v);
        let t = sys.twist()[s];
        let conj = sys.rmul(sys.lmul(s, phi), t);
        let c = self.cross(v, s);
        let m = self.cayley(v, s);
        if self.springer(c) != conj {
            report.push(
                Rule::CrossCompatibility,
                Some(v.index()),
                Some(s),
                format!(
                    "phi(s.v) = {} but s phi(v) theta(s) = {}",
                    sys.format(self.springer(c)),
                    sys.format(conj)
                ),
            );
        }
        let st = self.status(v, s);
        let mut fail = |rule: Rule, msg: String| report.push(rule, Some(v.index()), Some(s), msg);
        if st == RootStatus::ComplexAscent {
            if self.springer(m) != conj || sys.length(conj) != sys.length(phi) + 2 {
                fail(
                    Rule::SpringerRecursion,
                    format!("complex ascent: phi(m(s).v) = {}, expected {}", sys.format(self.springer(m)), sys.format(conj)),
                );
            }
        } else if st.is_noncompact() {
            let left = sys.lmul(s, phi);
            let right = sys.rmul(phi, t);
            if self.springer(m) != left || left != right || sys.length(left) <= sys.length(phi) {
                fail(
                    Rule::SpringerRecursion,
                    format!(
                        "noncompact: phi(m(s).v) = {}, s phi = {}, phi theta(s) = {}",
                        sys.format(self.springer(m)),
                        sys.format(left),
                        sys.format(right)
                    ),
                );
            }
            if self.springer(c) != phi {
                fail(Rule::SpringerRecursion, "noncompact: phi(s.v) differs from phi(v)".to_string());
            }
        }
        if st.is_ascent() && self.length(m) != self.length(v) + 1 {
            fail(
                Rule::LengthRecursion,
                format!("ascent to {m} changes length {} -> {}", self.length(v), self.length(m)),
            );
        }
    }

    /// The type of `s` determined by `theta_v = phi(v) theta` alone: imaginary,
    /// real, or complex with the sign of the image.
    pub fn classify_root(&self, v: OrbitId, s: Generator) -> RootKind {
        let sys = &*self.system;
        let x = self.springer(v);
        let t = sys.twist()[s];
        let xt = sys.rmul(x, t);
        let positive = sys.length(xt) > sys.length(x);
        // x(alpha_t) = +-alpha_s iff x t x^{-1} = s
        if sys.multiply(xt, sys.inverse(x)) == sys.generator(s) {
            if positive {
                RootKind::Imaginary
            } else {
                RootKind::Real
            }
        } else if positive {
            RootKind::ComplexPositive
        } else {
            RootKind::ComplexNegative
        }
    }

    fn check_classification(&self, v: OrbitId, s: Generator, report: &mut ValidationReport) {
        let st = self.status(v, s);
        let kind = self.classify_root(v, s);
        let ok = match kind {
            RootKind::Imaginary => st.is_imaginary(),
            RootKind::Real => st.is_real(),
            RootKind::ComplexPositive => st == RootStatus::ComplexAscent,
            RootKind::ComplexNegative => st == RootStatus::ComplexDescent,
        };
        if !ok {
            report.push(
                Rule::StatusClassification,
                Some(v.index()),
                Some(s),
                format!("stored status {st} but phi(v) theta moves the root as {kind:?}"),
            );
        }
    }
}

/// Coarse root type read off from the Springer value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    Imaginary,
    Real,
    ComplexPositive,
    ComplexNegative,
}

/// Breadth-first distances from `start` along `edges`.
pub(crate) fn bfs_distances<F, I>(n: usize, start: &[OrbitId], mut edges: F) -> Vec<Option<usize>>
where
    F: FnMut(OrbitId) -> I,
    I: IntoIterator<Item = OrbitId>,
{
    let mut dist = vec![None; n];
    let mut queue = VecDeque::new();
    for &v in start {
        dist[v.index()] = Some(0);
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        let d = dist[u.index()].unwrap();
        for w in edges(u) {
            if dist[w.index()].is_none() {
                dist[w.index()] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}
