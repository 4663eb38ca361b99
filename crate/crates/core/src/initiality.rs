//! Family-relative C-initiality and the unique map into `C* = [C, N]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functor::{Elem, FinSet};
use crate::measuring::{convolution_lazy, count_succ_measurings};
use crate::structures::{
    algebras_up_to_iso, enumerate_alg_homs, lazy_saturation, Index, Lasso, LazyAlgebra, PointedSuccAlgebra,
    StepCoalgebra,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Exactly one measuring into every member of the family.
    CInitialOnFamily,
    Refuted,
    /// No count differs from 1, but some member was skipped.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCount {
    pub algebra: String,
    pub count: Option<u64>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CInitialReport {
    pub algebra: String,
    pub coalgebra: String,
    /// Always `"family"`: verdicts only speak about the tested algebras.
    pub scope: &'static str,
    pub counts: Vec<FamilyCount>,
    pub verdict: Verdict,
    /// Position in `counts` of the first member with a count other than 1.
    pub witness: Option<usize>,
}

impl CInitialReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::CInitialOnFamily
    }
}

/// All `X + 1` algebras with at most `max_size` elements, up to isomorphism.
pub fn algebra_family(max_size: usize) -> Vec<PointedSuccAlgebra> {
    algebras_up_to_iso(max_size)
}

fn coalgebra_label(c: &StepCoalgebra) -> String {
    let parts: Vec<String> = (0..c.len())
        .map(|s| match c.step(s) {
            None => format!("{}->stop", c.carrier().get(s)),
            Some(t) => format!("{}->{}", c.carrier().get(s), c.carrier().get(t)),
        })
        .collect();
    format!("step {}", parts.join(" "))
}

/// Counts `C`-measurings from `A` into each member of `family`.
#[allow(non_snake_case)]
pub fn is_C_initial_bounded(
    a: &PointedSuccAlgebra,
    c: &StepCoalgebra,
    family: &[PointedSuccAlgebra],
    bound: u64,
) -> Result<CInitialReport> {
    if family.is_empty() {
        return Err(Error::Precondition("the test family is empty".into()));
    }
    let mut counts = Vec::with_capacity(family.len());
    for x in family {
        let entry = match count_succ_measurings(c, a, x, bound) {
            Ok(n) => FamilyCount {
                algebra: x.to_string(),
                count: Some(n),
                skipped: None,
            },
            Err(e) if e.is_refusal() => FamilyCount {
                algebra: x.to_string(),
                count: None,
                skipped: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        };
        counts.push(entry);
    }
    let witness = counts.iter().position(|e| matches!(e.count, Some(n) if n != 1));
    let verdict = if witness.is_some() {
        Verdict::Refuted
    } else if counts.iter().any(|e| e.count.is_none()) {
        Verdict::Inconclusive
    } else {
        Verdict::CInitialOnFamily
    };
    Ok(CInitialReport {
        algebra: a.to_string(),
        coalgebra: coalgebra_label(c),
        scope: "family",
        counts,
        verdict,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchVerdict {
    Found,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct TerminalSearch {
    pub verdict: SearchVerdict,
    #[serde(serialize_with = "serialize_algebra")]
    pub algebra: Option<PointedSuccAlgebra>,
    pub size_bound: usize,
    /// How many algebras in the family are C-initial on it.
    pub candidates: usize,
    pub note: Option<String>,
}

fn serialize_algebra<S: serde::Serializer>(
    a: &Option<PointedSuccAlgebra>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match a {
        Some(a) => s.serialize_some(&a.to_string()),
        None => s.serialize_none(),
    }
}

/// Searches all algebras up to `size_bound` elements for one that is
/// C-initial on that family and receives exactly one homomorphism from every
/// other such algebra.
#[allow(non_snake_case)]
pub fn terminal_C_initial_bounded(c: &StepCoalgebra, size_bound: usize, bound: u64) -> Result<TerminalSearch> {
    let family = algebra_family(size_bound);
    let mut candidates = Vec::new();
    for a in &family {
        if is_C_initial_bounded(a, c, &family, bound)?.holds() {
            candidates.push(a);
        }
    }
    let found = candidates.iter().find(|t| {
        candidates.iter().all(|a| {
            enumerate_alg_homs(&a.to_fin(), &t.to_fin(), bound)
                .map(|h| h.len() == 1)
                .unwrap_or(false)
        })
    });
    let infinite = c.indices().contains(&Index::Infinite);
    Ok(match found {
        Some(t) => TerminalSearch {
            verdict: SearchVerdict::Found,
            algebra: Some((*t).clone()),
            size_bound,
            candidates: candidates.len(),
            note: None,
        },
        None => TerminalSearch {
            verdict: SearchVerdict::Inconclusive,
            algebra: None,
            size_bound,
            candidates: candidates.len(),
            note: Some(if candidates.is_empty() && infinite {
                "no algebra within the bound is C-initial on the family; with a state of infinite index the answer is expected to be infinite, like the naturals for I".into()
            } else if candidates.is_empty() {
                "no algebra within the bound is C-initial on the family".into()
            } else {
                "no C-initial algebra within the bound receives exactly one homomorphism from all the others".into()
            }),
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualMap {
    /// `images[a][c]`: the value at state `c` of the image of `a`.
    pub images: Vec<Vec<u64>>,
    /// The chain `n ↦ n_{C*}`.
    pub chain: Lasso<Vec<u64>>,
    /// Homomorphisms from `A` into the reachable part of `C*`.
    pub homs_into_reachable: usize,
}

/// The homomorphism `A -> [C, N]`. Elements reachable from zero off any
/// cycle go along the initial chain; elements on cycles go to the top.
pub fn unique_map_to_dual(a: &PointedSuccAlgebra, c: &StepCoalgebra, bound: usize) -> Result<DualMap> {
    let n = a.len();
    let mut has_pred = vec![false; n];
    for x in 0..n {
        has_pred[a.succ(x)] = true;
    }
    if let Some(x) = (0..n).find(|&x| x != a.zero() && !has_pred[x]) {
        return Err(Error::Precondition(format!(
            "element {} is neither zero nor a successor",
            a.carrier().get(x)
        )));
    }
    let dual = convolution_lazy(c);
    let chain = lazy_saturation(&dual, bound)?;
    let top = chain.top().cloned();

    let on_cycle: Vec<bool> = (0..n)
        .map(|x| {
            let mut y = a.succ(x);
            for _ in 0..n {
                if y == x {
                    return true;
                }
                y = a.succ(y);
            }
            false
        })
        .collect();
    let depth = {
        let mut d = vec![None; n];
        let mut x = a.zero();
        for k in 0..n {
            if d[x].is_some() {
                break;
            }
            d[x] = Some(k);
            x = a.succ(x);
        }
        d
    };
    let mut images = Vec::with_capacity(n);
    for x in 0..n {
        let image = if x == a.zero() {
            dual.zero()
        } else if on_cycle[x] {
            top.clone().ok_or_else(|| {
                Error::Precondition(format!(
                    "element {} lies on a cycle but [C,N] has no top element",
                    a.carrier().get(x)
                ))
            })?
        } else {
            chain
                .nth(depth[x].expect("every element off a cycle is reached from zero"))
                .clone()
        };
        images.push(image);
    }
    for x in 0..n {
        if images[a.succ(x)] != dual.succ(&images[x]) {
            return Err(Error::Precondition(format!(
                "no homomorphism into [C,N]: the successor of {} has no consistent image",
                a.carrier().get(x)
            )));
        }
    }

    // uniqueness: enumerate homomorphisms into the reachable part
    let names: Vec<String> = chain.elements.iter().map(|v| format!("{v:?}")).collect();
    let reachable = PointedSuccAlgebra::new(
        FinSet::new(names.iter().map(Elem::atom).collect())?,
        0,
        (0..chain.elements.len())
            .map(|k| {
                if k + 1 < chain.elements.len() {
                    k + 1
                } else {
                    chain.prefix
                }
            })
            .collect(),
    )?;
    // FinSet sorts names, so relabel through positions
    let pos = |v: &Vec<u64>| reachable.carrier().position_of_name(&format!("{v:?}"));
    let homs = enumerate_alg_homs(&a.to_fin(), &reachable.to_fin(), u64::MAX)?;
    let ours: Option<Vec<usize>> = images.iter().map(pos).collect();
    if homs.len() != 1 || Some(&homs[0]) != ours.as_ref() {
        return Err(Error::Invalid(format!(
            "expected exactly our map into the reachable part, found {} homomorphisms",
            homs.len()
        )));
    }
    Ok(DualMap {
        images,
        chain,
        homs_into_reachable: homs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{algebras_isomorphic, std_algebra, std_coalgebra, unit_step_coalgebra};

    #[test]
    fn chains_are_bracket_initial() {
        let family = algebra_family(3);
        for n in 0..=2 {
            let r = is_C_initial_bounded(&std_algebra(n), &std_coalgebra(n), &family, 1 << 20).unwrap();
            assert!(r.holds());
            assert!(r.counts.iter().all(|e| e.count == Some(1)));
            let longer = is_C_initial_bounded(&std_algebra(n + 1), &std_coalgebra(n), &family, 1 << 20).unwrap();
            assert!(longer.holds());
        }
    }

    #[test]
    fn everything_is_empty_initial() {
        let family = algebra_family(2);
        for a in algebra_family(3) {
            assert!(is_C_initial_bounded(&a, &StepCoalgebra::empty(), &family, 100)
                .unwrap()
                .holds());
        }
    }

    #[test]
    fn refutation_names_a_witness() {
        let family = algebra_family(2);
        // <0> into X by <1>^ forces 0_X = 1_X
        let r = is_C_initial_bounded(&std_algebra(0), &std_coalgebra(1), &family, 100).unwrap();
        assert_eq!(r.verdict, Verdict::Refuted);
        let w = r.witness.unwrap();
        assert_ne!(r.counts[w].count, Some(1));
    }

    #[test]
    fn skipped_members_make_it_inconclusive() {
        let family = vec![std_algebra(3)];
        let r = is_C_initial_bounded(&std_algebra(3), &std_coalgebra(3), &family, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.counts[0].skipped.is_some());
    }

    #[test]
    fn subfamilies_keep_the_verdict() {
        let family = algebra_family(3);
        let a = std_algebra(1);
        let c = std_coalgebra(1);
        assert!(is_C_initial_bounded(&a, &c, &family, 1 << 20).unwrap().holds());
        for k in 1..family.len() {
            assert!(is_C_initial_bounded(&a, &c, &family[..k], 1 << 20).unwrap().holds());
        }
    }

    #[test]
    fn terminal_bracket_initial() {
        for n in 0..=1 {
            let t = terminal_C_initial_bounded(&std_coalgebra(n), 3, 1 << 20).unwrap();
            assert_eq!(t.verdict, SearchVerdict::Found);
            assert!(algebras_isomorphic(t.algebra.as_ref().unwrap(), &std_algebra(n)));
        }
    }

    #[test]
    fn terminal_unit_initial_is_out_of_reach() {
        let t = terminal_C_initial_bounded(&unit_step_coalgebra(), 3, 1 << 20).unwrap();
        assert_eq!(t.verdict, SearchVerdict::Inconclusive);
        assert_eq!(t.candidates, 0);
    }

    #[test]
    fn terminal_empty_initial_is_the_point() {
        let t = terminal_C_initial_bounded(&StepCoalgebra::empty(), 3, 1 << 20).unwrap();
        assert_eq!(t.verdict, SearchVerdict::Found);
        assert_eq!(t.algebra.unwrap().len(), 1);
    }

    #[test]
    fn dual_map_of_chains() {
        for n in 0..=4 {
            let m = unique_map_to_dual(&std_algebra(n), &std_coalgebra(n), 100).unwrap();
            for (k, image) in m.images.iter().enumerate() {
                let want: Vec<u64> = (0..=n).map(|i| i.min(k) as u64).collect();
                assert_eq!(image, &want);
            }
            assert_eq!(m.homs_into_reachable, 1);
        }
    }

    #[test]
    fn cycle_elements_go_to_the_top() {
        // 0 -> 1 -> 2 -> 1
        let a = PointedSuccAlgebra::numbered(0, vec![1, 2, 1]).unwrap();
        let m = unique_map_to_dual(&a, &std_coalgebra(1), 100).unwrap();
        assert_eq!(m.images, vec![vec![0, 0], vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn dual_map_refusals() {
        // 1 is neither zero nor a successor
        let a = PointedSuccAlgebra::numbered(0, vec![0, 0]).unwrap();
        let err = unique_map_to_dual(&a, &std_coalgebra(1), 100).unwrap_err();
        assert!(err.to_string().contains("element 1"));
        // zero on a cycle of length 3 cannot map into [<1>^, N]
        let cyc = PointedSuccAlgebra::numbered(0, vec![1, 2, 0]).unwrap();
        assert!(unique_map_to_dual(&cyc, &std_coalgebra(1), 100).is_err());
        // [I, N] never saturates
        assert!(unique_map_to_dual(&std_algebra(1), &unit_step_coalgebra(), 50)
            .unwrap_err()
            .is_refusal());
    }
}
