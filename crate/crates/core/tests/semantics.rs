use kbig::fmodel::{falsifiable, sat, valid_kbig, valid_kg2, SolverOptions, ValidOutcome, Verdict};
use kbig::correspondence::{enumerate_frames, FrameFamily};
use kbig::formula::{axiom_corpus, nnf, plus_translation, Calculus};
use kbig::semantics::{
    classical_frame_valid, frame_valid_kbig, frame_valid_kg2, FrameVerdict, Frame, ModelFile,
};
use kbig::{parse, Rat};

#[test]
fn frame_validity_examples() {
    let refl = Frame::crisp(1, &[(0, 0)]);
    assert!(frame_valid_kbig(&refl, &parse("[]p -> p").unwrap(), None).unwrap().is_valid());
    match frame_valid_kbig(&refl, &parse("<>(p | ~p)").unwrap(), None).unwrap() {
        FrameVerdict::Refuted(r) => {
            assert!(r.value < Rat::ONE && r.value > Rat::ZERO);
            assert_eq!(r.model.value("p", 0), r.value);
        }
        FrameVerdict::Valid => panic!("must be refuted"),
    }
    let chain = Frame::crisp(2, &[(0, 1)]);
    assert!(frame_valid_kbig(&chain, &parse("#[]p -> []#p").unwrap(), None).unwrap().is_valid());
    assert!(classical_frame_valid(&refl, &parse("[]p -> p").unwrap(), None).unwrap());
    assert!(!classical_frame_valid(&Frame::crisp(1, &[]), &parse("<>1").unwrap(), None).unwrap());
}

#[test]
fn kg2_frame_validity_examples() {
    let point = Frame::crisp(1, &[]);
    let lin = parse("#(p -> q) | #(q -> p)").unwrap();
    assert!(frame_valid_kbig(&point, &lin, None).unwrap().is_valid());
    let neg_lin = parse("#!(p -> q) | #!(q -> p)").unwrap();
    assert!(!frame_valid_kg2(&point, &neg_lin, None).unwrap().is_valid());
    let dual = parse("[]p <-> !<>!p").unwrap();
    for n in 1..=3 {
        for frame in enumerate_frames(&FrameFamily::AllCrisp(n)).unwrap() {
            assert!(frame_valid_kg2(&frame, &dual, None).unwrap().is_valid(), "{frame}");
        }
    }
}

#[test]
fn kg2_axioms_on_three_worlds() {
    let frames = enumerate_frames(&FrameFamily::AllCrisp(3)).unwrap();
    let mut checked = 0;
    for inst in axiom_corpus(Calculus::HKG2, 1) {
        // keep the enumeration small: at most two translated variables
        if plus_translation(&nnf(&inst.formula)).unwrap().vars().len() > 2 {
            continue;
        }
        for frame in frames.iter().step_by(7) {
            assert!(frame_valid_kg2(frame, &inst.formula, None).unwrap().is_valid(), "{} on {frame}", inst.formula);
        }
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn solver_examples() {
    let o = SolverOptions::default();
    let (v, _) = sat(&parse("p").unwrap(), 2, &o).unwrap();
    let Verdict::Sat { witness, .. } = v else { panic!() };
    assert_eq!(witness.model.frame.len(), 1);
    assert_eq!(witness.model.value("p", 0), Rat::ONE);
    assert!(falsifiable(&parse("#<>p -> <>#p").unwrap(), 2, &o).unwrap().0.is_sat());
    for r in [1, 2, 5] {
        assert!(!falsifiable(&parse("p -> p").unwrap(), r, &o).unwrap().0.is_sat());
    }
    let (v, _) = valid_kbig(&parse("<>(p | ~p)").unwrap(), 2, &o).unwrap();
    let ValidOutcome::Countermodel { witness, .. } = v else { panic!() };
    assert!(witness.model.frame.successors(0).is_empty());
    assert!(valid_kbig(&parse("#[]p -> []#p").unwrap(), 2, &o).unwrap().0.is_valid());
    assert!(valid_kg2(&parse("!!p <-> p").unwrap(), 2, &o).unwrap().0.is_valid());
    assert!(valid_kg2(&parse("[]p <-> !<>!p").unwrap(), 2, &o).unwrap().0.is_valid());
    assert!(!valid_kg2(&parse("#!(p -> q) | #!(q -> p)").unwrap(), 2, &o).unwrap().0.is_valid());
}

#[test]
fn witness_files_round_trip() {
    let o = SolverOptions::default();
    let f = parse("~#(#<>p -> <>#p)").unwrap();
    let Verdict::Sat { witness, world } = sat(&f, 2, &o).unwrap().0 else { panic!() };
    let text = witness.to_file().to_json();
    let back = kbig::fmodel::FModel::from_file(&ModelFile::parse(&text).unwrap()).unwrap();
    assert_eq!(back, witness);
    assert_eq!(kbig::fmodel::eval_fmodel(&back, &world, &f).unwrap(), Rat::ONE);
}
