use serde::Serialize;

use crate::error::{Error, Result};
use crate::measuring::{convolution_lazy, partial_induction, LazyConvolution, PartialInductionOutcome};
use crate::structures::{
    canonical_from_initial, is_N_generated, LazyAlgebra, Naturals, PointedSuccAlgebra, StepCoalgebra, SubterminalName,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub name: SubterminalName,
    /// Steps reached by partial induction, `None` when it is total.
    pub induction_steps: Option<usize>,
    pub homomorphism_exists: bool,
    /// Set for shapes outside `∅, <n>^, N⁻, I, N∞`.
    pub note: Option<String>,
}

/// Whether the forced map `n_A -> n_B` is well defined.
fn forced_hom_exists<L: LazyAlgebra>(a: &PointedSuccAlgebra, b: &L) -> bool {
    let lasso = canonical_from_initial(a);
    b.nth(lasso.prefix) == b.nth(lasso.prefix + lasso.cycle())
}

/// Names `Ā(A,B)` for an `A` generated by its zero.
///
/// Finite indices come from partial induction: `<k>^` measures iff `f_k`
/// exists. The index `∞` is present iff there is a homomorphism `A -> B`.
pub fn classify_universal<L: LazyAlgebra>(a: &PointedSuccAlgebra, b: &L) -> Result<Classification> {
    if !is_N_generated(a) {
        return Err(Error::Precondition(
            "the universal measuring is only classified for algebras generated by their zero".into(),
        ));
    }
    let outcome = partial_induction(a, b)?;
    let hom = forced_hom_exists(a, b);
    let (name, steps) = match outcome {
        PartialInductionOutcome::Total { .. } => (SubterminalName::NInfinity, None),
        PartialInductionOutcome::Partial { steps, .. } if hom => (SubterminalName::BracketAndPoint(steps), Some(steps)),
        PartialInductionOutcome::Partial { steps, .. } => (SubterminalName::Bracket(steps), Some(steps)),
    };
    let note = match name {
        SubterminalName::BracketAndPoint(n) => Some(format!(
            "partial induction stops after {n} steps but a homomorphism exists; the measuring coalgebra is <{n}>^ plus the point at infinity"
        )),
        SubterminalName::NMinus => Some("all finite indices but no homomorphism".into()),
        _ => None,
    };
    Ok(Classification {
        name,
        induction_steps: steps,
        homomorphism_exists: hom,
        note,
    })
}

/// `A°`, the universal measuring from `A` into the naturals.
pub fn dual_coalgebra_classified(a: &PointedSuccAlgebra) -> Result<SubterminalName> {
    Ok(classify_universal(a, &Naturals)?.name)
}

/// `C* = [C, N]`.
pub fn dual_algebra(c: &StepCoalgebra) -> LazyConvolution<Naturals> {
    convolution_lazy(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measuring::count_succ_measurings;
    use crate::structures::{
        algebras_up_to_iso, lazy_saturation, std_algebra, std_coalgebra, unit_step_coalgebra, Index,
    };
    use crate::universal::measuring_graph;

    fn candidates(k: usize) -> Vec<SubterminalName> {
        let mut out = vec![SubterminalName::Empty, SubterminalName::IPoint];
        for n in 0..=k {
            out.push(SubterminalName::Bracket(n));
            out.push(SubterminalName::BracketAndPoint(n));
        }
        out
    }

    #[test]
    fn chains() {
        for n in 0..5 {
            for b in algebras_up_to_iso(3) {
                let got = classify_universal(&std_algebra(n), &b).unwrap().name;
                let want = if b.nth(n) == b.nth(n + 1) {
                    SubterminalName::NInfinity
                } else {
                    SubterminalName::Bracket(n)
                };
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn one_point_target() {
        let point = std_algebra(0);
        for a in algebras_up_to_iso(4).iter().filter(|a| is_N_generated(a)) {
            assert_eq!(classify_universal(a, &point).unwrap().name, SubterminalName::NInfinity);
        }
    }

    #[test]
    fn agrees_with_enumeration_over_candidates() {
        let algebras = algebras_up_to_iso(3);
        for a in algebras.iter().filter(|a| is_N_generated(a)) {
            for b in &algebras {
                let s = classify_universal(a, b).unwrap().name;
                for cand in candidates(a.len() + b.len()) {
                    let c = cand.to_coalgebra().unwrap();
                    let count = count_succ_measurings(&c, a, b, 1 << 20).unwrap();
                    assert_eq!(count, u64::from(cand.embeds_in(&s)), "{cand} in {s} for {a} / {b}");
                }
            }
        }
    }

    #[test]
    fn agrees_with_the_measuring_graph() {
        let algebras = algebras_up_to_iso(3);
        for a in algebras.iter().filter(|a| is_N_generated(a)) {
            for b in &algebras {
                let s = classify_universal(a, b).unwrap();
                let g = measuring_graph(a, b, 1 << 20).unwrap();
                assert_eq!(!g.loops().is_empty(), s.homomorphism_exists);
                let finite = match s.name {
                    SubterminalName::NInfinity => Index::Infinite,
                    SubterminalName::Bracket(n) | SubterminalName::BracketAndPoint(n) => Index::Finite(n),
                    other => panic!("unexpected {other}"),
                };
                assert_eq!(g.longest_path_to_terminal(), Some(finite));
            }
        }
    }

    #[test]
    fn the_gap_shape_occurs() {
        let a = PointedSuccAlgebra::numbered(0, vec![1, 2, 1]).unwrap();
        let b = PointedSuccAlgebra::numbered(2, vec![3, 0, 3, 0]).unwrap();
        let s = classify_universal(&a, &b).unwrap();
        assert_eq!(s.name, SubterminalName::BracketAndPoint(1));
        assert!(s.note.is_some());
    }

    #[test]
    fn refuses_ungenerated() {
        let a = PointedSuccAlgebra::numbered(0, vec![0, 1]).unwrap();
        assert!(classify_universal(&a, &std_algebra(1)).unwrap_err().is_refusal());
    }

    #[test]
    fn duals() {
        for n in 0..6 {
            assert_eq!(
                dual_coalgebra_classified(&std_algebra(n)).unwrap(),
                SubterminalName::Bracket(n)
            );
        }
        // pure cycles through zero only reach step 0 against N
        let cyc = PointedSuccAlgebra::numbered(0, vec![1, 2, 0]).unwrap();
        assert_eq!(dual_coalgebra_classified(&cyc).unwrap(), SubterminalName::Bracket(0));
    }

    #[test]
    fn dual_grows_along_surjections() {
        for n in 0..=4 {
            for m in 0..=n {
                let (dn, dm) = (
                    dual_coalgebra_classified(&std_algebra(n)).unwrap(),
                    dual_coalgebra_classified(&std_algebra(m)).unwrap(),
                );
                assert!(dm.embeds_in(&dn));
            }
        }
    }

    #[test]
    fn dual_algebra_is_the_convolution() {
        let d = dual_algebra(&std_coalgebra(3));
        assert_eq!(d.zero(), vec![0; 4]);
        let lasso = lazy_saturation(&d, 100).unwrap();
        assert_eq!(lasso.top().unwrap(), &vec![0, 1, 2, 3]);
        assert!(lazy_saturation(&dual_algebra(&unit_step_coalgebra()), 100).is_err());
    }
}
