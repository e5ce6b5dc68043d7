//! The sets `W_{v0}(v)`, `Y_{v0}(v)`, `Z_{v0}(v)` and the checks built on them.
//!
//! `W_{v0}(v) = {w : v <= m(w).v0}`, `Y` is its set of Bruhat-minimal
//! elements and `Z` its set of minimal-length elements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coxeter::{CoxeterSystem, Generator, WeylElement};
use crate::kgb::{KgbGraph, OrbitId, RootStatus};
use crate::models::DiagonalModel;
use crate::order::OrbitPoset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("orbit {0} is not closed")]
    NotClosed(OrbitId),
    #[error("orbit {0} does not exist")]
    UnknownOrbit(OrbitId),
    #[error("no closed orbit has all but at most one simple root compact")]
    NoHermitianBase,
    #[error("expected exactly one closed orbit, found {0}")]
    NotUniqueClosed(usize),
    #[error("orbit table is not a diagonal model")]
    NotDiagonal,
}

/// Names of the checks, used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    TripleInclusions,
    CompleteInvariant,
    WPrimeMin,
    UniqueMax,
    ClosedPairs,
    Hermitian,
    UniqueClosed,
    LengthCriterion,
    Generation,
    MonoidalOrbit,
    UniqueSubexpression,
    PathTheorems,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::TripleInclusions => "triple-inclusions",
            Check::CompleteInvariant => "complete-invariant",
            Check::WPrimeMin => "wprime-min",
            Check::UniqueMax => "unique-max",
            Check::ClosedPairs => "closed-pairs",
            Check::Hermitian => "hermitian",
            Check::UniqueClosed => "unique-closed",
            Check::LengthCriterion => "length-criterion",
            Check::Generation => "generation",
            Check::MonoidalOrbit => "monoidal-orbit",
            Check::UniqueSubexpression => "unique-subexpression",
            Check::PathTheorems => "path-theorems",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed assertion with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub orbits: Vec<OrbitId>,
    pub elements: Vec<String>,
    pub message: String,
}

/// Outcome of one check over one base orbit (or over the whole table).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub base: Option<OrbitId>,
    /// Number of individual assertions evaluated.
    pub cases: usize,
    pub violations: Vec<Violation>,
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(check: Check, base: Option<OrbitId>) -> Self {
        CheckReport { check, base, cases: 0, violations: Vec::new(), note: None }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn assert(&mut self, ok: bool, violation: impl FnOnce() -> Violation) {
        self.cases += 1;
        if !ok {
            self.violations.push(violation());
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.violations.sort();
        self
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        let base = self.base.map(|v| format!(" v0={v}")).unwrap_or_default();
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        format!("{}{base}: {verdict} ({} cases, {} violations)", self.check, self.cases, self.violations.len())
    }
}

pub(crate) fn violation(orbits: &[OrbitId], sys: &CoxeterSystem, elements: &[WeylElement], message: String) -> Violation {
    Violation {
        orbits: orbits.to_vec(),
        elements: elements.iter().map(|&w| sys.format(w)).collect(),
        message,
    }
}

/// `(v0, v, W, Y, Z)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTriple {
    pub v0: OrbitId,
    pub v: OrbitId,
    pub w_set: BTreeSet<WeylElement>,
    pub y_set: BTreeSet<WeylElement>,
    pub z_set: BTreeSet<WeylElement>,
}

/// Everything needed to evaluate `W`, `Y`, `Z` relative to a closed orbit
/// `v0`: the table, its order, and the memoized images `m(w).v0`.
#[derive(Clone, Debug)]
pub struct InvariantContext<'a> {
    graph: &'a KgbGraph,
    poset: &'a OrbitPoset,
    v0: OrbitId,
    image: Vec<OrbitId>,
}

impl<'a> InvariantContext<'a> {
    pub fn new(graph: &'a KgbGraph, poset: &'a OrbitPoset, v0: OrbitId) -> Result<Self, InvariantError> {
        if v0.index() >= graph.len() {
            return Err(InvariantError::UnknownOrbit(v0));
        }
        if !graph.is_closed(v0) {
            return Err(InvariantError::NotClosed(v0));
        }
        let sys = graph.system();
        // elements are enumerated by length, so w = s * parent with parent earlier
        let mut image = vec![v0; sys.order()];
        for w in sys.elements().skip(1) {
            let word = sys.reduced_word(w);
            let rest = sys.from_word(&word[1..]).expect("subword");
            image[w.index()] = graph.cayley(image[rest.index()], word[0]);
        }
        Ok(InvariantContext { graph, poset, v0, image })
    }

    pub fn graph(&self) -> &'a KgbGraph {
        self.graph
    }

    pub fn poset(&self) -> &'a OrbitPoset {
        self.poset
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.graph.system()
    }

    pub fn v0(&self) -> OrbitId {
        self.v0
    }

    /// `m(w).v0`
    pub fn image(&self, w: WeylElement) -> OrbitId {
        self.image[w.index()]
    }

    /// `v <= m(w).v0`
    pub fn intersects_bruhat_cell(&self, v: OrbitId, w: WeylElement) -> bool {
        self.poset.leq(v, self.image(w))
    }

    pub fn w_set(&self, v: OrbitId) -> BTreeSet<WeylElement> {
        self.system().elements().filter(|&w| self.intersects_bruhat_cell(v, w)).collect()
    }

    pub fn y_set(&self, v: OrbitId) -> BTreeSet<WeylElement> {
        self.system().min_elements(self.w_set(v))
    }

    pub fn z_set(&self, v: OrbitId) -> BTreeSet<WeylElement> {
        self.system().min_length_elements(self.w_set(v))
    }

    pub fn triple(&self, v: OrbitId) -> InvariantTriple {
        let w_set = self.w_set(v);
        let sys = self.system();
        InvariantTriple {
            v0: self.v0,
            v,
            y_set: sys.min_elements(w_set.iter().copied()),
            z_set: sys.min_length_elements(w_set.iter().copied()),
            w_set,
        }
    }

    /// `Y_{v0}(v)` for every orbit, by id.
    pub fn y_table(&self) -> Vec<BTreeSet<WeylElement>> {
        let ids: Vec<OrbitId> = self.graph.orbit_ids().collect();
        ids.par_iter().map(|&v| self.y_set(v)).collect()
    }

    /// `Y` through lower covers in `W`: members of `W_{v0}(v)` none of whose
    /// Bruhat lower covers lie in `W_{v0}(v)`. Agrees with [`Self::y_set`]
    /// because `W_{v0}(v)` is an upper set.
    pub fn y_set_by_covers(&self, v: OrbitId) -> BTreeSet<WeylElement> {
        let sys = self.system();
        sys.elements()
            .filter(|&w| self.intersects_bruhat_cell(v, w))
            .filter(|&w| sys.bruhat_lower_covers(w).into_iter().all(|u| !self.intersects_bruhat_cell(v, u)))
            .collect()
    }

    /// `{z : m(z).v0 = v, l(z) = l(v)}`
    pub fn monoidal_preimage(&self, v: OrbitId) -> BTreeSet<WeylElement> {
        let sys = self.system();
        let l = self.graph.length(v);
        sys.elements().filter(|&z| self.image(z) == v && sys.length(z) == l).collect()
    }
}

/// `Z ⊆ Y ⊆ W`, `W = W` exactly at `v0`, and `Y = {e}` there.
pub fn verify_triples(ctx: &InvariantContext) -> CheckReport {
    let sys = ctx.system();
    let mut r = CheckReport::new(Check::TripleInclusions, Some(ctx.v0()));
    for v in ctx.graph().orbit_ids() {
        let t = ctx.triple(v);
        r.assert(t.z_set.is_subset(&t.y_set) && t.y_set.is_subset(&t.w_set) && !t.z_set.is_empty(), || {
            violation(&[v], sys, &[], "Z ⊆ Y ⊆ W fails or Z is empty".to_string())
        });
        r.assert((t.w_set.len() == sys.order()) == (v == ctx.v0()), || {
            violation(&[v], sys, &[], format!("|W| = {} of {}", t.w_set.len(), sys.order()))
        });
    }
    r.finish()
}

/// Pairs `v != v'` with `phi(v) = phi(v')` whose `Y` sets meet, for the given table.
pub fn complete_invariant_violations(graph: &KgbGraph, y_table: &[BTreeSet<WeylElement>]) -> (usize, Vec<Violation>) {
    let sys = graph.system();
    let mut by_phi: BTreeMap<WeylElement, Vec<OrbitId>> = BTreeMap::new();
    for v in graph.orbit_ids() {
        by_phi.entry(graph.springer(v)).or_default().push(v);
    }
    let mut cases = 0;
    let mut out = Vec::new();
    for group in by_phi.values() {
        for (i, &a) in group.iter().enumerate() {
            for &b in &group[i + 1..] {
                cases += 1;
                let shared: Vec<WeylElement> = y_table[a.index()].intersection(&y_table[b.index()]).copied().collect();
                if !shared.is_empty() {
                    out.push(violation(
                        &[a, b],
                        sys,
                        &shared,
                        "equal Springer values and intersecting Y sets".to_string(),
                    ));
                }
            }
        }
    }
    (cases, out)
}

/// No two distinct orbits with the same Springer value share an element of `Y`.
pub fn verify_complete_invariant(ctx: &InvariantContext) -> CheckReport {
    let mut r = CheckReport::new(Check::CompleteInvariant, Some(ctx.v0()));
    let (cases, violations) = complete_invariant_violations(ctx.graph(), &ctx.y_table());
    r.cases = cases;
    r.violations = violations;
    r.finish()
}

/// `y ∈ ∪_v Y_{v0}(v)` iff `l(m(y).v0) = l(y)`, for every `y ∈ W`.
pub fn verify_length_criterion(ctx: &InvariantContext) -> CheckReport {
    let sys = ctx.system();
    let union: BTreeSet<WeylElement> = ctx.y_table().into_iter().flatten().collect();
    let mut r = CheckReport::new(Check::LengthCriterion, Some(ctx.v0()));
    for y in sys.elements() {
        let by_length = ctx.graph().length(ctx.image(y)) == sys.length(y);
        r.assert(union.contains(&y) == by_length, || {
            violation(&[ctx.image(y)], sys, &[y], format!("in some Y: {}, length criterion: {by_length}", union.contains(&y)))
        });
    }
    r.finish()
}

/// `w ∈ W_{v0}(v)` iff `y <= w` for some `y ∈ Y_{v0}(v)`, plus monotonicity of
/// the intersection predicate in `w`.
pub fn verify_generation(ctx: &InvariantContext) -> CheckReport {
    let sys = ctx.system();
    let mut r = CheckReport::new(Check::Generation, Some(ctx.v0()));
    for v in ctx.graph().orbit_ids() {
        let ys = ctx.y_set(v);
        for w in sys.elements() {
            let member = ctx.intersects_bruhat_cell(v, w);
            let generated = ys.iter().any(|&y| sys.bruhat_leq(y, w));
            r.assert(member == generated, || {
                violation(&[v], sys, &[w], format!("membership {member}, generated {generated}"))
            });
            if member {
                for s in 0..sys.rank() {
                    let up = sys.lmul(s, w);
                    if sys.length(up) > sys.length(w) {
                        r.assert(ctx.intersects_bruhat_cell(v, up), || {
                            violation(&[v], sys, &[w, up], "predicate not monotone".to_string())
                        });
                    }
                }
            }
        }
    }
    r.finish()
}

/// For `v` in the monoidal orbit of `v0`, `Z = {z : m(z).v0 = v, l(z) = l(v)}`.
pub fn verify_monoidal_orbit(ctx: &InvariantContext) -> CheckReport {
    let sys = ctx.system();
    let mut r = CheckReport::new(Check::MonoidalOrbit, Some(ctx.v0()));
    let reached: BTreeSet<OrbitId> = sys.elements().map(|w| ctx.image(w)).collect();
    for &v in &reached {
        let z = ctx.z_set(v);
        let pre = ctx.monoidal_preimage(v);
        r.assert(z == pre, || violation(&[v], sys, &[], format!("|Z| = {}, |preimage| = {}", z.len(), pre.len())));
    }
    r.finish()
}

/// Weaker form of the unique-maximum statement, valid in every model: each
/// `v` with some `y ∈ Y_{v0}(v)`, `y <= w`, lies below `m(w).v0`, and
/// `m(w).v0` is such an orbit.
pub fn verify_unique_max(ctx: &InvariantContext) -> CheckReport {
    let sys = ctx.system();
    let ys = ctx.y_table();
    let mut r = CheckReport::new(Check::UniqueMax, Some(ctx.v0()));
    r.note = Some("V_w is not computable from orbit tables here; checked via Y-membership only".to_string());
    for w in sys.elements() {
        let top = ctx.image(w);
        let cands: BTreeSet<OrbitId> = ctx
            .graph()
            .orbit_ids()
            .filter(|v| ys[v.index()].iter().any(|&y| sys.bruhat_leq(y, w)))
            .collect();
        let ok = cands.contains(&top) && cands.iter().all(|&v| ctx.poset().leq(v, top));
        r.assert(ok, || violation(&[top], sys, &[w], format!("candidates {:?} not all below m(w).v0", cands)));
    }
    r.finish()
}

/// The cells `u` with `BuB ⊆ B w1 B w2^{-1} B`, by expanding one generator
/// at a time: `B s B u B` is `B su B` if `su > u` and `B su B ∪ B u B` otherwise.
pub fn double_coset_cells(base: &CoxeterSystem, w1: WeylElement, w2: WeylElement) -> BTreeSet<WeylElement> {
    let mut word = base.reduced_word(w1);
    word.extend(base.reduced_word(base.inverse(w2)));
    let mut cells = BTreeSet::from([base.identity()]);
    for &s in word.iter().rev() {
        let mut next = BTreeSet::new();
        for &u in &cells {
            let su = base.lmul(s, u);
            next.insert(su);
            if base.length(su) < base.length(u) {
                next.insert(u);
            }
        }
        cells = next;
    }
    cells
}

/// Membership of `v` in [`double_coset_cells`].
pub fn diagonal_wprime_oracle(base: &CoxeterSystem, w1: WeylElement, w2: WeylElement, v: WeylElement) -> bool {
    double_coset_cells(base, w1, w2).contains(&v)
}

/// `{(w1, w2) : w = w1 w2^{-1}, l(w) = l(w1) + l(w2)}` as elements of `W x W`.
pub fn diagonal_closed_form(model: &DiagonalModel, w: WeylElement) -> BTreeSet<WeylElement> {
    let b = model.base();
    b.elements()
        .filter_map(|w1| {
            let w2 = b.inverse(b.multiply(b.inverse(w1), w));
            (b.length(w1) + b.length(w2) == b.length(w)).then(|| model.pair(w1, w2))
        })
        .collect()
}

/// In the diagonal model: `Y = min(W')` and `Z = min_l(W')` with `W'` from the
/// double-coset oracle, both equal to the closed form, and for every
/// `w = (w1, w2)` the set `V_w` of oracle cells has unique maximum `m(w).v0`.
pub fn verify_wprime_min(model: &DiagonalModel, poset: &OrbitPoset) -> CheckReport {
    let g = model.graph();
    let prod = g.system();
    let base = model.base();
    let ctx = InvariantContext::new(g, poset, OrbitId(0)).expect("identity orbit is closed");
    let cells: Vec<BTreeSet<WeylElement>> = prod
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&x| {
            let (w1, w2) = model.split(x);
            double_coset_cells(base, w1, w2)
        })
        .collect();
    let mut r = CheckReport::new(Check::WPrimeMin, Some(ctx.v0()));
    for v in g.orbit_ids() {
        let u = model.element(v);
        let wprime: Vec<WeylElement> = prod.elements().filter(|x| cells[x.index()].contains(&u)).collect();
        let t = ctx.triple(v);
        let min = prod.min_elements(wprime.iter().copied());
        let min_l = prod.min_length_elements(wprime.iter().copied());
        let closed = diagonal_closed_form(model, u);
        r.assert(min == t.y_set, || violation(&[v], prod, &[], "min(W') differs from Y".to_string()));
        r.assert(min_l == t.z_set, || violation(&[v], prod, &[], "min_l(W') differs from Z".to_string()));
        r.assert(t.y_set == closed && t.z_set == closed, || {
            violation(&[v], prod, &[], "Y or Z differs from the factorization closed form".to_string())
        });
    }
    for x in prod.elements() {
        let vw: BTreeSet<OrbitId> = cells[x.index()].iter().map(|&u| model.orbit(u)).collect();
        let maxes = poset.max_of(&vw);
        let top = ctx.image(x);
        r.assert(maxes.len() == 1 && maxes.contains(&top), || {
            violation(&[top], prod, &[x], format!("maximal elements of V_w are {:?}", maxes))
        });
    }
    r.finish()
}

/// For closed `v0, v0'`: `Y_{v0}(v0') = {y}` with `theta(y) = y`, `y.v0 = v0'`,
/// `y` the unique minimum of `{w ∈ W^theta : w.v0 = v0'}`, and (when
/// `wk_order` is given) `|{w : w.v0 = v0'}| = |W_K|`.
pub fn closed_pair_element(
    graph: &KgbGraph,
    poset: &OrbitPoset,
    v0: OrbitId,
    v0p: OrbitId,
    wk_order: Option<usize>,
) -> Result<CheckReport, InvariantError> {
    let ctx = InvariantContext::new(graph, poset, v0)?;
    if !graph.is_closed(v0p) {
        return Err(InvariantError::NotClosed(v0p));
    }
    let sys = graph.system();
    let mut r = CheckReport::new(Check::ClosedPairs, Some(v0));
    let ys = ctx.y_set(v0p);
    r.assert(ys.len() == 1, || violation(&[v0p], sys, &ys.iter().copied().collect::<Vec<_>>(), "|Y| != 1".into()));
    if let Some(&y) = ys.iter().next() {
        r.assert(sys.twist_apply(y) == y, || violation(&[v0p], sys, &[y], "y is not theta-fixed".into()));
        r.assert(graph.cross_action(y, v0) == v0p, || violation(&[v0p], sys, &[y], "y.v0 != v0'".into()));
        let fixed: Vec<WeylElement> = sys
            .elements()
            .filter(|&w| sys.twist_apply(w) == w && graph.cross_action(w, v0) == v0p)
            .collect();
        let min = sys.min_elements(fixed.iter().copied());
        r.assert(min == BTreeSet::from([y]), || {
            violation(&[v0p], sys, &[y], format!("minimal theta-fixed solutions: {} elements", min.len()))
        });
    }
    let count = sys.elements().filter(|&w| graph.cross_action(w, v0) == v0p).count();
    match wk_order {
        Some(k) => r.assert(count == k, || violation(&[v0p], sys, &[], format!("{count} solutions of w.v0 = v0', |W_K| = {k}"))),
        None => r.note = Some(format!("{count} solutions of w.v0 = v0'; |W_K| not supplied")),
    }
    Ok(r.finish())
}

/// [`closed_pair_element`] over all ordered pairs of closed orbits, merged per `v0`.
pub fn verify_closed_pairs(graph: &KgbGraph, poset: &OrbitPoset, wk_order: Option<usize>) -> Vec<CheckReport> {
    let closed = graph.closed_orbits();
    closed
        .iter()
        .map(|&v0| {
            let mut merged = CheckReport::new(Check::ClosedPairs, Some(v0));
            for &v0p in &closed {
                let r = closed_pair_element(graph, poset, v0, v0p, wk_order).expect("closed orbits");
                merged.cases += r.cases;
                merged.violations.extend(r.violations);
                if r.note.is_some() {
                    merged.note = r.note;
                }
            }
            merged.finish()
        })
        .collect()
}

/// The closed orbit used as base point in the Hermitian check: most compact
/// simple roots (at least `rank - 1`), then smallest id.
pub fn hermitian_base(graph: &KgbGraph) -> Result<OrbitId, InvariantError> {
    let compact = |v: OrbitId| (0..graph.rank()).filter(|&s| graph.status(v, s) == RootStatus::CompactImaginary).count();
    graph
        .closed_orbits()
        .into_iter()
        .filter(|&v| compact(v) + 1 >= graph.rank())
        .max_by_key(|&v| (compact(v), std::cmp::Reverse(v)))
        .ok_or(InvariantError::NoHermitianBase)
}

/// With `v0*` from [`hermitian_base`] and `J` its compact roots: every
/// `Y_{v0*}(v)` is a single element `nu(v)` of `W^J`, and `v -> (phi(v), nu(v))`
/// is injective.
pub fn hermitian_nu(graph: &KgbGraph, poset: &OrbitPoset) -> Result<CheckReport, InvariantError> {
    let base = hermitian_base(graph)?;
    let ctx = InvariantContext::new(graph, poset, base)?;
    let sys = graph.system();
    let j: BTreeSet<Generator> =
        (0..graph.rank()).filter(|&s| graph.status(base, s) == RootStatus::CompactImaginary).collect();
    let mut r = CheckReport::new(Check::Hermitian, Some(base));
    r.note = Some(format!(
        "J = {{{}}}",
        j.iter().map(|s| format!("s{}", s + 1)).collect::<Vec<_>>().join(",")
    ));
    let mut seen: BTreeMap<(WeylElement, WeylElement), OrbitId> = BTreeMap::new();
    for (v, ys) in graph.orbit_ids().zip(ctx.y_table()) {
        let elems: Vec<WeylElement> = ys.iter().copied().collect();
        r.assert(elems.len() == 1, || violation(&[v], sys, &elems, "|Y| != 1".into()));
        let Some(&nu) = elems.first() else { continue };
        r.assert(sys.is_min_coset_rep(nu, &j), || violation(&[v], sys, &[nu], "nu(v) not in W^J".into()));
        let key = (graph.springer(v), nu);
        let prev = seen.insert(key, v);
        r.assert(prev.is_none(), || {
            violation(&[prev.unwrap_or(v), v], sys, &[nu], "(phi, nu) not injective".into())
        });
    }
    Ok(r.finish())
}

/// With a single closed orbit: `phi` is injective, no root is noncompact
/// non-cancellative, and `Y = Z = {z : m(z).v0 = v, l(z) = l(v)}` for every `v`.
pub fn unique_closed_orbit_case(graph: &KgbGraph, poset: &OrbitPoset) -> Result<CheckReport, InvariantError> {
    let closed = graph.closed_orbits();
    if closed.len() != 1 {
        return Err(InvariantError::NotUniqueClosed(closed.len()));
    }
    let ctx = InvariantContext::new(graph, poset, closed[0])?;
    let sys = graph.system();
    let mut r = CheckReport::new(Check::UniqueClosed, Some(closed[0]));
    let mut phis: BTreeMap<WeylElement, OrbitId> = BTreeMap::new();
    for v in graph.orbit_ids() {
        let prev = phis.insert(graph.springer(v), v);
        r.assert(prev.is_none(), || violation(&[prev.unwrap_or(v), v], sys, &[], "phi not injective".into()));
        for s in 0..graph.rank() {
            r.assert(graph.status(v, s) != RootStatus::NoncompactImaginaryNoncanc, || {
                violation(&[v], sys, &[], format!("s{} is n!", s + 1))
            });
        }
        let t = ctx.triple(v);
        let pre = ctx.monoidal_preimage(v);
        r.assert(t.y_set == pre && t.z_set == pre, || {
            violation(&[v], sys, &[], format!("|Y| = {}, |Z| = {}, |preimage| = {}", t.y_set.len(), t.z_set.len(), pre.len()))
        });
    }
    Ok(r.finish())
}
