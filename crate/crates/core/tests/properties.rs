use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use orbitinv::invariants::InvariantContext;
use orbitinv::io::{emit, parse};
use orbitinv::{ClanModel, CoxeterSystem, DiagonalModel, KgbGraph, OrbitId, OrbitPoset, WeylElement};

const TYPES: [&str; 6] = ["A2", "A3", "B2", "B3", "G2", "A1xA2"];

fn systems() -> &'static Vec<CoxeterSystem> {
    static S: OnceLock<Vec<CoxeterSystem>> = OnceLock::new();
    S.get_or_init(|| TYPES.iter().map(|t| CoxeterSystem::from_type(t).unwrap()).collect())
}

struct Model {
    graph: KgbGraph,
    poset: OrbitPoset,
}

fn models() -> &'static Vec<Model> {
    static M: OnceLock<Vec<Model>> = OnceLock::new();
    M.get_or_init(|| {
        let mut graphs: Vec<KgbGraph> = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)]
            .iter()
            .map(|&(p, q)| ClanModel::new(p, q).unwrap().into_graph())
            .collect();
        graphs.push(DiagonalModel::from_type("A2").unwrap().into_graph());
        graphs.push(DiagonalModel::from_type("B2").unwrap().into_graph());
        graphs
            .into_iter()
            .map(|graph| {
                let poset = OrbitPoset::build(&graph);
                Model { graph, poset }
            })
            .collect()
    })
}

fn word(rank: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..=max)
}

/// A system index and a word in its generators.
fn system_word() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..TYPES.len()).prop_flat_map(|i| (Just(i), word(systems()[i].rank(), 12)))
}

fn model_word() -> impl Strategy<Value = (usize, Vec<usize>, usize)> {
    (0..models().len()).prop_flat_map(|i| {
        let g = &models()[i].graph;
        (Just(i), word(g.rank(), 10), 0..g.len())
    })
}

/// Demazure product as the Bruhat maximum of `{a b : a <= u, b <= w}`.
fn demazure_by_max(sys: &CoxeterSystem, u: WeylElement, w: WeylElement) -> BTreeSet<WeylElement> {
    let below = |x: WeylElement| sys.elements().filter(move |&y| sys.bruhat_leq(y, x)).collect::<Vec<_>>();
    let (bu, bw) = (below(u), below(w));
    let mut products = BTreeSet::new();
    for &a in &bu {
        for &b in &bw {
            products.insert(sys.multiply(a, b));
        }
    }
    products.iter().copied().filter(|&x| products.iter().all(|&y| sys.bruhat_leq(y, x))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn words_and_lengths((i, w) in system_word()) {
        let sys = &systems()[i];
        let x = sys.from_word(&w).unwrap();
        prop_assert!(sys.length(x) <= w.len());
        prop_assert_eq!(sys.length(x) % 2, w.len() % 2);
        let red = sys.reduced_word(x);
        prop_assert_eq!(red.len(), sys.length(x));
        prop_assert_eq!(sys.from_word(&red).unwrap(), x);
        let rev: Vec<usize> = w.iter().rev().copied().collect();
        prop_assert_eq!(sys.from_word(&rev).unwrap(), sys.inverse(x));
        prop_assert_eq!(sys.length(sys.inverse(x)), sys.length(x));
    }

    #[test]
    fn bruhat_subword_property((i, w) in system_word(), drop in any::<prop::sample::Index>()) {
        let sys = &systems()[i];
        let x = sys.from_word(&w).unwrap();
        let red = sys.reduced_word(x);
        prop_assume!(!red.is_empty());
        let mut sub = red.clone();
        sub.remove(drop.index(red.len()));
        let y = sys.from_word(&sub).unwrap();
        prop_assert!(sys.bruhat_leq(y, x));
        prop_assert!(!sys.bruhat_leq(x, y));
        prop_assert!(sys.bruhat_leq(sys.identity(), x));
        prop_assert!(sys.bruhat_leq(x, sys.longest_element()));
    }

    #[test]
    fn demazure_is_bruhat_max((i, a) in system_word(), b in word(4, 8)) {
        let sys = &systems()[i];
        let b: Vec<usize> = b.into_iter().map(|s| s % sys.rank()).collect();
        let u = sys.from_word(&a).unwrap();
        let w = sys.from_word(&b).unwrap();
        let d = sys.demazure(u, w);
        prop_assert_eq!(demazure_by_max(sys, u, w), BTreeSet::from([d]));
        prop_assert!(sys.length(d) >= sys.length(u).max(sys.length(w)));
        let joined: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
        prop_assert_eq!(sys.demazure_word(&joined), sys.demazure(sys.demazure_word(&a), sys.demazure_word(&b)));
    }

    #[test]
    fn monoidal_action_is_word_independent((i, w, v) in model_word()) {
        let m = &models()[i];
        let g = &m.graph;
        let sys = g.system();
        let v = OrbitId(v as u32);
        let x = sys.demazure_word(&w);
        // any word, reduced or not, acts through its Demazure product
        prop_assert_eq!(g.monoidal_word(&w, v), g.monoidal_action(x, v));
        for red in sys.reduced_words(x).into_iter().take(8) {
            prop_assert_eq!(g.monoidal_word(&red, v), g.monoidal_action(x, v));
        }
        prop_assert!(m.poset.leq(v, g.monoidal_action(x, v)));
    }

    #[test]
    fn cross_action_is_an_action((i, w, v) in model_word(), u in word(6, 6)) {
        let g = &models()[i].graph;
        let sys = g.system();
        let u: Vec<usize> = u.into_iter().map(|s| s % g.rank()).collect();
        let v = OrbitId(v as u32);
        let (a, b) = (sys.from_word(&u).unwrap(), sys.from_word(&w).unwrap());
        prop_assert_eq!(g.cross_action(sys.multiply(a, b), v), g.cross_action(a, g.cross_action(b, v)));
    }

    #[test]
    fn bruhat_cell_membership_is_monotone((i, w, v) in model_word(), extra in word(6, 4)) {
        let m = &models()[i];
        let g = &m.graph;
        let sys = g.system();
        let v0 = g.closed_orbits()[0];
        let ctx = InvariantContext::new(g, &m.poset, v0).unwrap();
        let small = sys.from_word(&w).unwrap();
        let extra: Vec<usize> = extra.into_iter().map(|s| s % g.rank()).collect();
        let big = sys.demazure(small, sys.demazure_word(&extra));
        prop_assert!(sys.bruhat_leq(small, big));
        let v = OrbitId(v as u32);
        if ctx.intersects_bruhat_cell(v, small) {
            prop_assert!(ctx.intersects_bruhat_cell(v, big));
        }
        prop_assert!(m.poset.leq(ctx.image(small), ctx.image(big)));
    }

    #[test]
    fn parse_survives_edits(i in 0..5usize, pos in any::<prop::sample::Index>(), byte in any::<u8>()) {
        let g = &models()[i].graph;
        let mut text = emit(g).into_bytes();
        let at = pos.index(text.len());
        text[at] = byte;
        if let Ok(text) = String::from_utf8(text) {
            if let Ok(back) = parse(&text) {
                prop_assert!(back.validate().is_empty());
            }
        }
    }
}

#[test]
fn small_clan_round_trips() {
    for p in 1..=4 {
        for q in 1..=(5 - p).max(1) {
            let g = ClanModel::new(p, q).unwrap().into_graph();
            assert_eq!(parse(&emit(&g)).unwrap(), g, "({p},{q})");
        }
    }
}
