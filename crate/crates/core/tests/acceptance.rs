//! Acceptance gate. Each criterion prints one PASS/FAIL line with its runtime
//! and fails the test if a check or the time bound is missed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use orbitinv::invariants::{
    diagonal_wprime_oracle, hermitian_base, hermitian_nu, verify_closed_pairs, verify_complete_invariant,
    verify_length_criterion, verify_wprime_min, CheckReport, InvariantContext,
};
use orbitinv::io::{emit, parse};
use orbitinv::models::{find_orbit_by_status, StatusPattern};
use orbitinv::order::check_decomposition_independence;
use orbitinv::paths::{verify_path_theorems, verify_unique_subexpression};
use orbitinv::{ClanModel, DiagonalModel, KgbGraph, OrbitId, OrbitPoset, RootStatus, WeylElement};

type Outcome = Result<String, String>;

fn gate(number: u32, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let result = match result {
        Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
        other => other,
    };
    match &result {
        Ok(detail) => println!("criterion {number:>2} {name}: PASS in {elapsed:.2?} ({detail})"),
        Err(why) => println!("criterion {number:>2} {name}: FAIL in {elapsed:.2?} ({why})"),
    }
    if let Err(why) = result {
        panic!("criterion {number} failed: {why}");
    }
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn reports_pass(reports: &[CheckReport]) -> Result<usize, String> {
    for r in reports {
        if !r.passed() {
            return Err(format!("{}: first violation {:?}", r.summary(), r.violations[0]));
        }
    }
    Ok(reports.iter().map(|r| r.cases).sum())
}

/// Clans (1,1), (2,1), (2,2), (3,1) and diagonal A1, A2, A3.
fn suite() -> Vec<(String, KgbGraph)> {
    let mut out = Vec::new();
    for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        out.push((format!("clan({p},{q})"), ClanModel::new(p, q).unwrap().into_graph()));
    }
    for t in ["A1", "A2", "A3"] {
        out.push((format!("diagonal {t}"), DiagonalModel::from_type(t).unwrap().into_graph()));
    }
    out
}

fn for_each_base(
    graph: &KgbGraph,
    poset: &OrbitPoset,
    check: impl Fn(&InvariantContext) -> CheckReport,
) -> Result<usize, String> {
    let mut reports = Vec::new();
    for v0 in graph.closed_orbits() {
        let ctx = InvariantContext::new(graph, poset, v0).map_err(|e| e.to_string())?;
        reports.push(check(&ctx));
    }
    reports_pass(&reports)
}

#[test]
fn criterion_01_su22_example() {
    gate(1, "SU(2,2) example with Z != Y", Duration::from_secs(5), || {
        let model = ClanModel::new(2, 2).unwrap();
        let g = model.graph();
        ensure(g.len() == 21, || format!("|V| = {}", g.len()))?;
        ensure(g.closed_orbits().len() == 6, || format!("|V0| = {}", g.closed_orbits().len()))?;
        let pattern: StatusPattern = "n,c,n".parse().unwrap();
        let bases = find_orbit_by_status(g, &pattern.closed());
        ensure(!bases.is_empty(), || "no closed orbit with statuses (n, c, n)".into())?;
        let poset = OrbitPoset::build(g);
        let sys = g.system();
        let word = |w: &[usize]| sys.from_word(w).unwrap();
        for &v0 in &bases {
            let ctx = InvariantContext::new(g, &poset, v0).unwrap();
            // s3 s2 s1 acts with s1 first
            let v = g.monoidal_word(&[2, 1, 0], v0);
            let t = ctx.triple(v);
            ensure(t.z_set.iter().all(|&z| sys.length(z) == 3), || format!("v0 {v0}: Z has an element of length != 3"))?;
            ensure(t.y_set.contains(&word(&[1, 0, 1, 2])), || format!("v0 {v0}: s2s1s2s3 not in Y"))?;
            for w in [[0, 1, 2], [1, 0, 2], [1, 0, 1]] {
                ensure(!t.w_set.contains(&word(&w)), || format!("v0 {v0}: {} lies in W", sys.format(word(&w))))?;
            }
            ensure(t.z_set.is_subset(&t.y_set) && t.z_set != t.y_set, || format!("v0 {v0}: Z is not a proper subset of Y"))?;
        }
        Ok(format!("{} base orbits", bases.len()))
    });
}

#[test]
fn criterion_02_diagonal_closed_form() {
    gate(2, "diagonal closed form Y = Z", Duration::from_secs(30), || {
        let mut cases = 0;
        for t in ["A1", "A2", "B2", "A3"] {
            let d = DiagonalModel::from_type(t).unwrap();
            let g = d.graph();
            let b = d.base();
            let poset = OrbitPoset::build(g);
            let ctx = InvariantContext::new(g, &poset, OrbitId(0)).unwrap();
            for v in g.orbit_ids() {
                let w = d.element(v);
                let mut expected = BTreeSet::new();
                for w1 in b.elements() {
                    for w2 in b.elements() {
                        if b.multiply(w1, b.inverse(w2)) == w && b.length(w) == b.length(w1) + b.length(w2) {
                            expected.insert(d.pair(w1, w2));
                        }
                    }
                }
                let triple = ctx.triple(v);
                ensure(triple.y_set == expected, || format!("{t}: Y differs at {}", b.format(w)))?;
                ensure(triple.z_set == expected, || format!("{t}: Z differs at {}", b.format(w)))?;
                cases += 1;
            }
        }
        Ok(format!("{cases} orbits"))
    });
}

#[test]
fn criterion_03_wprime_oracle() {
    gate(3, "double-coset oracle agrees with Y, Z and V_w", Duration::from_secs(60), || {
        let mut cases = 0;
        for t in ["A1", "A2", "B2"] {
            let d = DiagonalModel::from_type(t).unwrap();
            let g = d.graph();
            let b = d.base();
            let sys = g.system();
            let poset = OrbitPoset::build(g);
            let ctx = InvariantContext::new(g, &poset, OrbitId(0)).unwrap();
            let prime = |x: WeylElement, v: OrbitId| {
                let (w1, w2) = d.split(x);
                diagonal_wprime_oracle(b, w1, w2, d.element(v))
            };
            for v in g.orbit_ids() {
                let set: Vec<WeylElement> = sys.elements().filter(|&x| prime(x, v)).collect();
                let triple = ctx.triple(v);
                ensure(sys.min_elements(set.iter().copied()) == triple.y_set, || format!("{t}: min W' != Y at {v}"))?;
                ensure(sys.min_length_elements(set.iter().copied()) == triple.z_set, || {
                    format!("{t}: min-length W' != Z at {v}")
                })?;
                cases += 1;
            }
            for x in sys.elements() {
                let vw: BTreeSet<OrbitId> = g.orbit_ids().filter(|&v| prime(x, v)).collect();
                let top = g.monoidal_action(x, OrbitId(0));
                ensure(poset.max_of(&vw) == BTreeSet::from([top]), || format!("{t}: V_w maximum differs for {}", sys.format(x)))?;
                cases += 1;
            }
            reports_pass(&[verify_wprime_min(&d, &poset)])?;
        }
        Ok(format!("{cases} cases"))
    });
}

#[test]
fn criterion_04_complete_invariant() {
    gate(4, "complete invariant", Duration::from_secs(120), || {
        let mut cases = 0;
        let mut shared_phi = 0;
        for (name, g) in suite() {
            let poset = OrbitPoset::build(&g);
            cases += for_each_base(&g, &poset, verify_complete_invariant).map_err(|e| format!("{name}: {e}"))?;
            for u in g.orbit_ids() {
                shared_phi += g.orbit_ids().filter(|&v| u < v && g.springer(u) == g.springer(v)).count();
            }
        }
        ensure(shared_phi > 0, || "no pair with equal phi in the suite".into())?;
        Ok(format!("{cases} cases, {shared_phi} pairs with equal phi"))
    });
}

#[test]
fn criterion_05_unique_subexpression() {
    gate(5, "unique subexpression", Duration::from_secs(120), || {
        let mut cases = 0;
        for (name, g) in suite() {
            let poset = OrbitPoset::build(&g);
            cases += for_each_base(&g, &poset, verify_unique_subexpression).map_err(|e| format!("{name}: {e}"))?;
        }
        Ok(format!("{cases} (v, y, word) cases"))
    });
}

#[test]
fn criterion_06_path_bijections() {
    gate(6, "path bijections", Duration::from_secs(120), || {
        let mut cases = 0;
        for (name, g) in suite() {
            let poset = OrbitPoset::build(&g);
            cases += for_each_base(&g, &poset, verify_path_theorems).map_err(|e| format!("{name}: {e}"))?;
        }
        Ok(format!("{cases} cases"))
    });
}

#[test]
fn criterion_07_hermitian() {
    gate(7, "Hermitian uniqueness", Duration::from_secs(60), || {
        for (p, q) in [(2, 2), (2, 1)] {
            let m = ClanModel::new(p, q).unwrap();
            let g = m.graph();
            let poset = OrbitPoset::build(g);
            let base = hermitian_base(g).map_err(|e| e.to_string())?;
            let compact = (0..g.rank()).filter(|&s| g.status(base, s) == RootStatus::CompactImaginary).count();
            ensure(compact + 1 == g.rank(), || format!("clan({p},{q}): v0* has {compact} compact roots"))?;
            reports_pass(&[hermitian_nu(g, &poset).map_err(|e| e.to_string())?])
                .map_err(|e| format!("clan({p},{q}): {e}"))?;
        }
        Ok("clan(2,2), clan(2,1)".into())
    });
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn criterion_08_closed_pairs() {
    gate(8, "closed pairs", Duration::from_secs(60), || {
        let mut cases = 0;
        for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            let m = ClanModel::new(p, q).unwrap();
            let poset = OrbitPoset::build(m.graph());
            let wk = factorial(p) * factorial(q);
            ensure(m.wk_order() == wk, || format!("clan({p},{q}): |W_K| = {}", m.wk_order()))?;
            cases += reports_pass(&verify_closed_pairs(m.graph(), &poset, Some(wk))).map_err(|e| format!("clan({p},{q}): {e}"))?;
        }
        for t in ["A1", "A2", "A3"] {
            let d = DiagonalModel::from_type(t).unwrap();
            let poset = OrbitPoset::build(d.graph());
            cases += reports_pass(&verify_closed_pairs(d.graph(), &poset, Some(d.base().order())))
                .map_err(|e| format!("diagonal {t}: {e}"))?;
        }
        Ok(format!("{cases} cases"))
    });
}

#[test]
fn criterion_09_axiom_suite() {
    gate(9, "axioms, order independence, length criterion", Duration::from_secs(120), || {
        let mut models = suite();
        for (p, q) in [(3, 2), (4, 1), (3, 3)] {
            models.push((format!("clan({p},{q})"), ClanModel::new(p, q).unwrap().into_graph()));
        }
        for t in ["B2", "G2", "A1xA1"] {
            models.push((format!("diagonal {t}"), DiagonalModel::from_type(t).unwrap().into_graph()));
        }
        let mut cases = 0;
        for (name, g) in &models {
            let report = g.validate();
            ensure(report.is_empty(), || format!("{name}: {report}"))?;
            let poset = OrbitPoset::build(g);
            let order = poset.check_partial_order();
            ensure(order.is_empty(), || format!("{name}: {}", order[0]))?;
            let dec = check_decomposition_independence(g, &poset);
            ensure(dec.is_empty(), || format!("{name}: {}", dec[0]))?;
            cases += for_each_base(g, &poset, verify_length_criterion).map_err(|e| format!("{name}: {e}"))?;
        }
        Ok(format!("{} models, {cases} length cases", models.len()))
    });
}

#[test]
fn criterion_10_round_trip() {
    gate(10, "round trip", Duration::from_secs(60), || {
        let mut models = suite();
        models.push(("diagonal B2".into(), DiagonalModel::from_type("B2").unwrap().into_graph()));
        models.push(("clan(3,2)".into(), ClanModel::new(3, 2).unwrap().into_graph()));
        for (name, g) in &models {
            let text = emit(g);
            ensure(emit(g) == text, || format!("{name}: emission not deterministic"))?;
            let back = parse(&text).map_err(|e| format!("{name}: {e}"))?;
            ensure(back == *g, || format!("{name}: parsed table differs"))?;
            ensure(emit(&back) == text, || format!("{name}: re-emission differs"))?;
        }
        Ok(format!("{} models", models.len()))
    });
}
