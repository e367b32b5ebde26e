use super::Formula;

/// Suffix reserved for the fresh variables introduced by
/// [`plus_translation`].
pub const STAR_SUFFIX: &str = "__star";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("formula is not in negation normal form: `{0}`")]
    NotNnf(String),
}

pub fn star_name(var: &str) -> String {
    format!("{var}{STAR_SUFFIX}")
}

/// Rewrites every `a -< b` as `a & ~#(a -> b)`.
pub fn eliminate_coimpl(f: &Formula) -> Formula {
    use Formula::*;
    let e = |g: &Formula| std::boxed::Box::new(eliminate_coimpl(g));
    match f {
        Var(_) | Zero | One => f.clone(),
        GNeg(a) => GNeg(e(a)),
        DMNeg(a) => DMNeg(e(a)),
        Delta(a) => Delta(e(a)),
        Box(a) => Box(e(a)),
        Dia(a) => Dia(e(a)),
        And(a, b) => And(e(a), e(b)),
        Or(a, b) => Or(e(a), e(b)),
        Impl(a, b) => Impl(e(a), e(b)),
        Coimpl(a, b) => {
            let (a, b) = (eliminate_coimpl(a), eliminate_coimpl(b));
            Formula::and(a.clone(), Formula::gneg(Formula::delta(Formula::implies(a, b))))
        }
    }
}

/// Negation normal form: `!` only directly above variables. Coimplication
/// is eliminated first.
pub fn nnf(f: &Formula) -> Formula {
    pos(&eliminate_coimpl(f))
}

fn pos(f: &Formula) -> Formula {
    use Formula::*;
    let p = |g: &Formula| std::boxed::Box::new(pos(g));
    match f {
        Var(_) | Zero | One => f.clone(),
        DMNeg(a) => neg(a),
        GNeg(a) => GNeg(p(a)),
        Delta(a) => Delta(p(a)),
        Box(a) => Box(p(a)),
        Dia(a) => Dia(p(a)),
        And(a, b) => And(p(a), p(b)),
        Or(a, b) => Or(p(a), p(b)),
        Impl(a, b) => Impl(p(a), p(b)),
        Coimpl(a, b) => Coimpl(p(a), p(b)),
    }
}

// nnf of `!f`
fn neg(f: &Formula) -> Formula {
    use Formula as F;
    match f {
        F::Var(_) => F::dmneg(f.clone()),
        F::Zero => F::One,
        F::One => F::Zero,
        F::DMNeg(a) => pos(a),
        F::And(a, b) => F::or(neg(a), neg(b)),
        F::Or(a, b) => F::and(neg(a), neg(b)),
        F::Impl(a, b) => {
            let nb = neg(b);
            F::and(nb.clone(), F::gneg(F::delta(F::implies(nb, neg(a)))))
        }
        F::Delta(a) => F::gneg(F::gneg(neg(a))),
        F::GNeg(a) => F::gneg(F::delta(neg(a))),
        F::Box(a) => F::dia(neg(a)),
        F::Dia(a) => F::boxed(neg(a)),
        F::Coimpl(..) => neg(&eliminate_coimpl(f)),
    }
}

/// Replaces each `!p` of an NNF formula by the fresh variable `p__star`.
pub fn plus_translation(f: &Formula) -> Result<Formula, TransformError> {
    if !f.is_nnf() {
        return Err(TransformError::NotNnf(f.to_string()));
    }
    Ok(star(&eliminate_coimpl(f)))
}

fn star(f: &Formula) -> Formula {
    use Formula::*;
    let s = |g: &Formula| std::boxed::Box::new(star(g));
    match f {
        Var(_) | Zero | One => f.clone(),
        DMNeg(a) => match &**a {
            Var(p) => Var(star_name(p)),
            _ => unreachable!("checked to be in nnf"),
        },
        GNeg(a) => GNeg(s(a)),
        Delta(a) => Delta(s(a)),
        Box(a) => Box(s(a)),
        Dia(a) => Dia(s(a)),
        And(a, b) => And(s(a), s(b)),
        Or(a, b) => Or(s(a), s(b)),
        Impl(a, b) => Impl(s(a), s(b)),
        Coimpl(a, b) => Coimpl(s(a), s(b)),
    }
}

/// `#!f := #f & !~#f`, which is `(1, 0)` exactly when `f` is `(1, 0)`.
pub fn delta_neg(f: &Formula) -> Formula {
    let d = Formula::delta(f.clone());
    Formula::and(d.clone(), Formula::dmneg(Formula::gneg(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn pf(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn nnf_examples() {
        assert_eq!(nnf(&pf("!(p -> q)")), pf("!q & ~#(!q -> !p)"));
        assert_eq!(nnf(&pf("!!p")), pf("p"));
        assert_eq!(nnf(&pf("![]p")), pf("<>!p"));
        assert_eq!(nnf(&pf("!#p")), pf("~~!p"));
        assert_eq!(nnf(&pf("!~p")), pf("~#!p"));
        assert_eq!(nnf(&pf("!(0 | 1)")), pf("1 & 0"));
        assert!(nnf(&pf("!(p -< !q)")).is_nnf());
    }

    #[test]
    fn coimpl_examples() {
        assert_eq!(eliminate_coimpl(&pf("p -< q")), pf("p & ~#(p -> q)"));
        assert_eq!(eliminate_coimpl(&pf("p -< p")), pf("p & ~#(p -> p)"));
        let free = pf("[]p -> <>(q & ~r)");
        assert_eq!(eliminate_coimpl(&free), free);
    }

    #[test]
    fn plus_examples() {
        let star = |s: &str| Formula::var(&star_name(s));
        assert_eq!(plus_translation(&pf("!p & q")).unwrap(), Formula::and(star("p"), pf("q")));
        assert_eq!(plus_translation(&pf("[]!p")).unwrap(), Formula::boxed(star("p")));
        assert_eq!(plus_translation(&pf("p")).unwrap(), pf("p"));
        assert!(matches!(plus_translation(&pf("!(p & q)")), Err(TransformError::NotNnf(_))));
        let t = plus_translation(&pf("!p -< q")).unwrap();
        assert!(!t.has_coimpl() && !t.has_dmneg());
    }

    #[test]
    fn delta_neg_expansion() {
        assert_eq!(delta_neg(&pf("p")), pf("#p & !~#p"));
    }
}
