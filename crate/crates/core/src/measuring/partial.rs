use serde::Serialize;

use crate::error::{Error, Result};
use crate::structures::{is_N_generated, LazyAlgebra, PointedSuccAlgebra};

/// Where a required image of `f_{c+1}` comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Requirement<E> {
    /// The predecessor `a` with `succ a = x`, or `None` when `x` is zero.
    pub from: Option<usize>,
    pub image: E,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conflict<E> {
    /// The element of `A` with two different required images.
    pub element: usize,
    pub first: Requirement<E>,
    pub second: Requirement<E>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PartialInductionOutcome<E> {
    /// `f_0..f_steps` exist and `f_{steps+1}` is not well defined.
    Partial {
        steps: usize,
        functions: Vec<Vec<E>>,
        conflict: Conflict<E>,
    },
    /// `f_steps = f_{steps+1}`, which is a homomorphism.
    Total {
        steps: usize,
        functions: Vec<Vec<E>>,
        homomorphism: Vec<E>,
    },
}

impl<E> PartialInductionOutcome<E> {
    pub fn is_total(&self) -> bool {
        matches!(self, PartialInductionOutcome::Total { .. })
    }

    pub fn steps(&self) -> usize {
        match self {
            PartialInductionOutcome::Partial { steps, .. } | PartialInductionOutcome::Total { steps, .. } => *steps,
        }
    }

    pub fn functions(&self) -> &[Vec<E>] {
        match self {
            PartialInductionOutcome::Partial { functions, .. } | PartialInductionOutcome::Total { functions, .. } => {
                functions
            }
        }
    }
}

/// Approximates a homomorphism `A -> B` by `f_0 = 0`, `f_{c+1}(0) = 0`,
/// `f_{c+1}(a + 1) = f_c(a) + 1`, stopping at the first conflict or once the
/// sequence is stationary. Requires every element of `A` to be some `n_A`.
pub fn partial_induction<L: LazyAlgebra>(a: &PointedSuccAlgebra, b: &L) -> Result<PartialInductionOutcome<L::Elem>> {
    if !is_N_generated(a) {
        return Err(Error::Precondition(
            "partial induction needs an algebra generated by its zero".into(),
        ));
    }
    let n = a.len();
    let mut f = vec![b.zero(); n];
    let mut functions = vec![f.clone()];
    // f_c(n_A) = min(depth, c)_B, so the sequence settles after at most |A| steps
    for steps in 0..=n + 1 {
        let mut next: Vec<Option<Requirement<L::Elem>>> = vec![None; n];
        next[a.zero()] = Some(Requirement {
            from: None,
            image: b.zero(),
        });
        for x in 0..n {
            let y = a.succ(x);
            let req = Requirement {
                from: Some(x),
                image: b.succ(&f[x]),
            };
            match &next[y] {
                Some(prev) if prev.image != req.image => {
                    return Ok(PartialInductionOutcome::Partial {
                        steps,
                        functions,
                        conflict: Conflict {
                            element: y,
                            first: prev.clone(),
                            second: req,
                        },
                    });
                }
                Some(_) => {}
                None => next[y] = Some(req),
            }
        }
        let next: Vec<L::Elem> = next
            .into_iter()
            .map(|r| r.expect("generated algebras have no orphans").image)
            .collect();
        if next == f {
            return Ok(PartialInductionOutcome::Total {
                steps,
                functions,
                homomorphism: f,
            });
        }
        f = next;
        functions.push(f.clone());
    }
    unreachable!("partial induction on a generated algebra settles within |A| + 1 steps")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{canonical_from_initial, enumerate_alg_homs, std_algebra, Naturals};
    use proptest::prelude::*;

    #[test]
    fn chain_into_a_longer_chain_is_partial() {
        let out = partial_induction(&std_algebra(2), &std_algebra(5)).unwrap();
        assert_eq!(out.steps(), 2);
        let PartialInductionOutcome::Partial {
            conflict, functions, ..
        } = out
        else {
            panic!()
        };
        assert_eq!(conflict.element, 2);
        assert_eq!((conflict.first.image, conflict.second.image), (2, 3));
        assert_eq!(functions, vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn chain_into_itself_is_total() {
        for n in 0..5 {
            let out = partial_induction(&std_algebra(n), &std_algebra(n)).unwrap();
            let PartialInductionOutcome::Total { homomorphism, .. } = out else {
                panic!()
            };
            assert_eq!(homomorphism, (0..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn against_the_naturals_chains_are_partial() {
        for n in 0..5 {
            let out = partial_induction(&std_algebra(n), &Naturals).unwrap();
            assert!(!out.is_total());
            assert_eq!(out.steps(), n);
        }
    }

    #[test]
    fn refuses_ungenerated_algebras() {
        let a = PointedSuccAlgebra::numbered(0, vec![0, 1]).unwrap();
        let err = partial_induction(&a, &Naturals).unwrap_err();
        assert!(err.is_refusal());
    }

    #[test]
    fn zero_on_a_cycle_can_block_induction_despite_a_homomorphism() {
        // A = 0 -> 1 -> 2 -> 0, B has zero 1 and 1 -> 3 -> 2 -> 1
        let a = PointedSuccAlgebra::numbered(0, vec![1, 2, 0]).unwrap();
        let b = PointedSuccAlgebra::numbered(1, vec![0, 3, 1, 2]).unwrap();
        let out = partial_induction(&a, &b).unwrap();
        let PartialInductionOutcome::Partial { steps, conflict, .. } = out else {
            panic!()
        };
        assert_eq!((steps, conflict.element), (0, 0));
        let homs = enumerate_alg_homs(&a.to_fin(), &b.to_fin(), 1 << 20).unwrap();
        assert_eq!(homs, vec![vec![1, 3, 2]]);
    }

    #[test]
    fn a_long_cycle_can_block_induction_later() {
        // A = 0 -> 1 -> 2 -> 1, B has zero 2 and 2 -> 3 -> 0 -> 3
        let a = PointedSuccAlgebra::numbered(0, vec![1, 2, 1]).unwrap();
        let b = PointedSuccAlgebra::numbered(2, vec![3, 0, 3, 0]).unwrap();
        let out = partial_induction(&a, &b).unwrap();
        assert_eq!((out.is_total(), out.steps()), (false, 1));
        let homs = enumerate_alg_homs(&a.to_fin(), &b.to_fin(), 1 << 20).unwrap();
        assert_eq!(homs, vec![vec![2, 3, 0]]);
    }

    proptest! {
        #[test]
        fn totality_and_homomorphisms(
            succ_a in proptest::collection::vec(0usize..5, 1..=5),
            zero_b in 0usize..4,
            succ_b in proptest::collection::vec(0usize..4, 4),
        ) {
            let n = succ_a.len();
            let succ_a: Vec<usize> = succ_a.into_iter().map(|s| s % n).collect();
            let a = PointedSuccAlgebra::numbered(0, succ_a).unwrap();
            prop_assume!(is_N_generated(&a));
            let b = PointedSuccAlgebra::numbered(zero_b, succ_b).unwrap();
            let out = partial_induction(&a, &b).unwrap();
            let homs = enumerate_alg_homs(&a.to_fin(), &b.to_fin(), 1 << 20).unwrap();
            if out.is_total() {
                prop_assert!(!homs.is_empty());
            }
            // with a fixed point at the end of the chain the converse holds too
            if canonical_from_initial(&a).cycle() == 1 {
                prop_assert_eq!(out.is_total(), !homs.is_empty());
            }
            if let PartialInductionOutcome::Total { homomorphism, .. } = out {
                prop_assert_eq!(homs, vec![homomorphism]);
            }
        }
    }
}
