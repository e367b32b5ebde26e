//! Property tests over randomly generated formulas and models.

use kbig::fmodel::{eval_fmodel, sat, SolverOptions, Verdict};
use kbig::formula::{eliminate_coimpl, nnf, plus_translation};
use kbig::semantics::algebra::{godel_impl, godel_min};
use kbig::semantics::{
    classicalise, eval_kbig_all, eval_kg2_at, frame_valid_kbig, frame_valid_kg2, threshold_classicalise, Frame,
    KG2Model, KbiGModel, PairValue,
};
use kbig::{parse, Formula, Rat};
use proptest::prelude::*;

const VARS: [&str; 3] = ["p", "q", "r"];

fn formula_with(leaves: BoxedStrategy<Formula>, dmneg: bool, modal: bool, depth: u32) -> BoxedStrategy<Formula> {
    leaves
        .prop_recursive(depth, 24, 2, move |inner| {
            let mut unary: Vec<fn(Formula) -> Formula> = vec![Formula::gneg, Formula::delta];
            if dmneg {
                unary.push(Formula::dmneg);
            }
            if modal {
                unary.push(Formula::boxed);
                unary.push(Formula::dia);
            }
            let binary: Vec<fn(Formula, Formula) -> Formula> =
                vec![Formula::and, Formula::or, Formula::implies, Formula::coimpl];
            prop_oneof![
                (inner.clone(), proptest::sample::select(unary)).prop_map(|(a, op)| op(a)),
                (inner.clone(), inner, proptest::sample::select(binary)).prop_map(|(a, b, op)| op(a, b)),
            ]
        })
        .boxed()
}

fn leaves(vars: usize) -> BoxedStrategy<Formula> {
    prop_oneof![
        6 => proptest::sample::select(VARS[..vars].to_vec()).prop_map(Formula::var),
        1 => Just(Formula::Zero),
        1 => Just(Formula::One),
    ]
    .boxed()
}

fn ltriangle() -> BoxedStrategy<Formula> {
    formula_with(leaves(2), false, true, 4)
}

fn full() -> BoxedStrategy<Formula> {
    formula_with(leaves(2), true, true, 4)
}

fn grid_value(k: u32) -> impl Strategy<Value = Rat> {
    (0..=k).prop_map(move |i| Rat::new(i as i64, k as i64))
}

fn crisp_frame() -> impl Strategy<Value = Frame> {
    (1usize..=3).prop_flat_map(|n| (Just(n), 0u64..1 << (n * n))).prop_map(|(n, mask)| Frame::from_bitmask(n, mask))
}

fn kbig_model() -> impl Strategy<Value = KbiGModel> {
    crisp_frame().prop_flat_map(|frame| {
        let n = frame.len();
        proptest::collection::vec(grid_value(6), 2 * n).prop_map(move |vals| {
            let mut m = KbiGModel::new(frame.clone());
            for (i, x) in vals.into_iter().enumerate() {
                m.set(VARS[i / n], i % n, x);
            }
            m
        })
    })
}

fn kg2_model() -> impl Strategy<Value = KG2Model> {
    crisp_frame().prop_flat_map(|frame| {
        let n = frame.len();
        proptest::collection::vec((grid_value(4), grid_value(4)), 2 * n).prop_map(move |vals| {
            let mut m = KG2Model::new(frame.clone()).unwrap();
            for (i, (t, f)) in vals.into_iter().enumerate() {
                m.set(VARS[i / n], i % n, PairValue::new(t, f));
            }
            m
        })
    })
}

fn pair() -> impl Strategy<Value = PairValue> {
    (grid_value(4), grid_value(4)).prop_map(|(t, f)| PairValue::new(t, f))
}

fn is_classical(x: Rat) -> bool {
    x == Rat::ZERO || x == Rat::ONE
}

/// Two-valued Kripke evaluation written out directly.
fn classical(m: &KbiGModel, w: usize, f: &Formula) -> bool {
    use Formula::*;
    match f {
        Var(p) => m.value(p, w) == Rat::ONE,
        Zero => false,
        One => true,
        GNeg(a) => !classical(m, w, a),
        Delta(a) => classical(m, w, a),
        And(a, b) => classical(m, w, a) && classical(m, w, b),
        Or(a, b) => classical(m, w, a) || classical(m, w, b),
        Impl(a, b) => !classical(m, w, a) || classical(m, w, b),
        Coimpl(a, b) => classical(m, w, a) && !classical(m, w, b),
        Box(a) => m.frame.successors(w).into_iter().all(|u| classical(m, u, a)),
        Dia(a) => m.frame.successors(w).into_iter().any(|u| classical(m, u, a)),
        DMNeg(_) => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn print_then_parse_is_identity(f in formula_with(leaves(3), true, true, 6)) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn nnf_pushes_negation_to_atoms_and_preserves_both_values(f in full(), m in kg2_model()) {
        let g = nnf(&f);
        prop_assert!(g.is_nnf());
        prop_assert!(!g.has_coimpl());
        prop_assert_eq!(nnf(&g), g.clone());
        for w in 0..m.frame.len() {
            prop_assert_eq!(eval_kg2_at(&m, w, &f).unwrap(), eval_kg2_at(&m, w, &g).unwrap());
        }
    }

    #[test]
    fn plus_translation_is_negation_free_and_tracks_v1(f in full(), m in kg2_model()) {
        let t = plus_translation(&nnf(&f)).unwrap();
        prop_assert!(!t.has_dmneg() && !t.has_coimpl());
        let plus = eval_kbig_all(&m.plus_model(), &t).unwrap();
        for w in 0..m.frame.len() {
            prop_assert_eq!(eval_kg2_at(&m, w, &f).unwrap().t, plus[w]);
        }
    }

    #[test]
    fn coimplication_elimination_preserves_values(f in ltriangle(), m in kbig_model()) {
        let g = eliminate_coimpl(&f);
        prop_assert!(!g.has_coimpl());
        prop_assert_eq!(eval_kbig_all(&m, &f).unwrap(), eval_kbig_all(&m, &g).unwrap());
    }

    #[test]
    fn godel_negation_is_implication_to_zero(f in ltriangle(), m in kbig_model()) {
        let neg = eval_kbig_all(&m, &Formula::gneg(f.clone())).unwrap();
        let imp = eval_kbig_all(&m, &Formula::implies(f, Formula::Zero)).unwrap();
        prop_assert_eq!(neg, imp);
    }

    #[test]
    fn residuation(a in grid_value(12), b in grid_value(12), c in grid_value(12)) {
        prop_assert_eq!(godel_min(a, b) <= c, a <= godel_impl(b, c));
    }

    #[test]
    fn two_valued_models_evaluate_classically(f in ltriangle(), m in kbig_model()) {
        let mut m = m;
        for xs in m.valuation.values_mut() {
            for x in xs.iter_mut() {
                *x = if *x > Rat::new(1, 2) { Rat::ONE } else { Rat::ZERO };
            }
        }
        let vals = eval_kbig_all(&m, &f).unwrap();
        for (w, v) in vals.into_iter().enumerate() {
            prop_assert!(is_classical(v));
            prop_assert_eq!(v == Rat::ONE, classical(&m, w, &f));
        }
    }

    #[test]
    fn de_morgan_negation_swaps(f in full(), m in kg2_model()) {
        for w in 0..m.frame.len() {
            let x = eval_kg2_at(&m, w, &f).unwrap();
            prop_assert_eq!(eval_kg2_at(&m, w, &Formula::dmneg(f.clone())).unwrap(), x.swap());
        }
    }

    #[test]
    fn first_coordinate_ignores_the_second_valuation(f in ltriangle(), m in kg2_model()) {
        let direct = eval_kbig_all(&m.v1_model(), &f).unwrap();
        for (w, v) in direct.into_iter().enumerate() {
            prop_assert_eq!(eval_kg2_at(&m, w, &f).unwrap().t, v);
        }
    }

    #[test]
    fn pm_order_is_a_partial_order(a in pair(), b in pair(), c in pair()) {
        prop_assert!(a.le_pm(a));
        if a.le_pm(b) && b.le_pm(a) {
            prop_assert_eq!(a, b);
        }
        if a.le_pm(b) && b.le_pm(c) {
            prop_assert!(a.le_pm(c));
        }
        prop_assert_eq!(a.lt_pm(b), a.le_pm(b) && a != b);
    }

    #[test]
    fn zero_is_preserved_by_classicalisation(
        f in formula_with(prop_oneof![proptest::sample::select(vec!["p", "q"]).prop_map(Formula::var), Just(Formula::Zero)].boxed(), false, true, 4)
            .prop_filter("0, &, |, ->, [], <> only", |f| !f.any(&|g| matches!(g, Formula::GNeg(_) | Formula::Delta(_) | Formula::Coimpl(..)))),
        m in kbig_model(),
    ) {
        let fuzzy = eval_kbig_all(&m, &f).unwrap();
        let crisp = eval_kbig_all(&classicalise(&m), &f).unwrap();
        for (a, b) in fuzzy.into_iter().zip(crisp) {
            prop_assert_eq!(a == Rat::ZERO, b == Rat::ZERO);
        }
    }

    #[test]
    fn monotone_classicalisation(
        f in formula_with(leaves(2), false, true, 3).prop_filter("monotone", Formula::is_monotone),
        g in formula_with(leaves(2), false, true, 3).prop_filter("monotone", Formula::is_monotone),
        m in kbig_model(),
    ) {
        let (vf, vg) = (eval_kbig_all(&m, &f).unwrap(), eval_kbig_all(&m, &g).unwrap());
        for w in 0..m.frame.len() {
            for u in 0..m.frame.len() {
                let x = vg[u];
                if vf[w] > x && x < Rat::ONE {
                    let c = threshold_classicalise(&m, x).unwrap();
                    prop_assert_eq!(eval_kbig_all(&c, &f).unwrap()[w], Rat::ONE);
                    prop_assert_eq!(eval_kbig_all(&c, &g).unwrap()[u], Rat::ZERO);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, ..ProptestConfig::default() })]

    #[test]
    fn conservativity_on_small_frames(f in formula_with(leaves(1), false, true, 3), frame in crisp_frame()) {
        let a = frame_valid_kbig(&frame, &f, None).unwrap().is_valid();
        let b = frame_valid_kg2(&frame, &f, None).unwrap().is_valid();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn finer_valuations_never_refute_certified_validity(
        f in formula_with(leaves(2), false, true, 3),
        m in kbig_model(),
    ) {
        if frame_valid_kbig(&m.frame, &f, None).unwrap().is_valid() {
            let mut m = m;
            for xs in m.valuation.values_mut() {
                for (i, x) in xs.iter_mut().enumerate() {
                    *x = Rat::new((x.numer() * 97 + i as i64) % 101, 101);
                }
            }
            prop_assert!(eval_kbig_all(&m, &f).unwrap().into_iter().all(|v| v == Rat::ONE));
        }
    }

    #[test]
    fn solver_witnesses_check_out(f in formula_with(leaves(2), false, true, 3), r in 1u32..=4) {
        if let (Verdict::Sat { witness, world }, _) = sat(&f, r, &SolverOptions::default()).unwrap() {
            prop_assert_eq!(eval_fmodel(&witness, &world, &f).unwrap(), Rat::ONE);
            for set in &witness.t {
                prop_assert!(set.contains(&Rat::ZERO) && set.contains(&Rat::ONE));
            }
        }
    }

    #[test]
    fn sat_survives_grid_refinement(f in formula_with(leaves(2), false, true, 3), r in 1u32..=3, k in 2u32..=3) {
        if sat(&f, r, &SolverOptions::default()).unwrap().0.is_sat() {
            prop_assert!(sat(&f, k * r, &SolverOptions::default()).unwrap().0.is_sat());
        }
    }
}
