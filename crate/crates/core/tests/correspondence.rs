use kbig::correspondence::{
    enumerate_frames, gl_check, glivenko_check, glivenko_decay, serial_truncation_check, transfer_check,
    FrameFamily, DISPLAY_FORMULAS,
};
use kbig::formula::gen::{all_up_to, Signature};
use kbig::semantics::Frame;
use kbig::{parse, Formula, Rat};

fn transitive_at(frame: &Frame, w: usize) -> bool {
    frame.successors(w).iter().all(|&u| frame.successors(u).iter().all(|v| frame.successors(w).contains(v)))
}

#[test]
fn transitivity_is_transferred_pointwise() {
    let rep = transfer_check(&parse("<><>p -> <>p").unwrap(), &FrameFamily::AllCrisp(3)).unwrap();
    assert!(rep.transferrable);
    for v in &rep.verdicts {
        assert_eq!(v.kbig, transitive_at(&rep.frames[v.frame], v.world));
    }
}

#[test]
fn display_formulas_on_small_frames() {
    for n in 1..=2 {
        for s in DISPLAY_FORMULAS {
            let rep = transfer_check(&parse(s).unwrap(), &FrameFamily::AllCrisp(n)).unwrap();
            assert!(rep.transferrable && rep.frame_level_agree, "{s} on AllCrisp({n})");
        }
    }
}

#[test]
fn closed_formulas_transfer() {
    let closed: Vec<Formula> = all_up_to(&Signature::closed(), 4);
    assert!(closed.len() > 100);
    for f in &closed {
        let rep = transfer_check(f, &FrameFamily::AllCrisp(3)).unwrap();
        assert!(rep.transferrable, "{}", rep.summary());
    }
}

#[test]
fn loeb_on_other_families() {
    for family in [
        FrameFamily::TransitiveClosure(Box::new(FrameFamily::Chains(4))),
        FrameFamily::ReflexiveClosure(Box::new(FrameFamily::Stars(2))),
        FrameFamily::TransitiveClosure(Box::new(FrameFamily::AllCrisp(3))),
    ] {
        for frame in enumerate_frames(&family).unwrap() {
            for w in frame.worlds() {
                assert!(gl_check(&frame, w).unwrap().agrees(), "{frame} at {w}");
            }
        }
    }
}

#[test]
fn glivenko_named_formulas_on_three_worlds() {
    let fs: Vec<Formula> = ["p | (p -> 0)", "[](p | (p -> 0))", "0", "[]p -> p"].iter().map(|s| parse(s).unwrap()).collect();
    let rep = glivenko_check(&fs, 3).unwrap();
    assert!(rep.agrees());
    assert!(rep.render(false).contains("summary formulas=4"));
    assert!(glivenko_check(&[parse("~p").unwrap()], 1).is_err());
}

#[test]
fn decay_strictly_decreases() {
    let vals: Vec<Rat> = (1..=10).map(|n| glivenko_decay(n).unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(serial_truncation_check(4).unwrap(), Rat::new(1, 4));
}
