use serde::Serialize;

use super::algebra::{PointedSuccAlgebra, StepCoalgebra};
use crate::error::{Error, Result};
use crate::functor::{Elem, FinSet};
use crate::search::hasse_covers;

pub const DEFAULT_SUBCOALGEBRA_BOUND: usize = 8;
pub const DEFAULT_QUOTIENT_BOUND: usize = 6;

/// A listing of a finite poset with its covering relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetListing<T> {
    pub items: Vec<T>,
    /// `(lower, upper)` positions in `items`.
    pub covers: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcoalgebra {
    /// Positions of the states in the ambient coalgebra.
    pub states: Vec<usize>,
    pub coalgebra: StepCoalgebra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAlgebra {
    /// Blocks of the partition, each sorted, ordered by least element.
    pub blocks: Vec<Vec<usize>>,
    /// Block of each element of the original carrier.
    pub projection: Vec<usize>,
    /// Blocks are named by their least element.
    pub algebra: PointedSuccAlgebra,
}

/// JSON view of a listing, with elements given by name.
#[derive(Serialize)]
pub struct PosetView<T> {
    pub items: Vec<T>,
    pub covers: Vec<(usize, usize)>,
}

/// All subsets closed under the step map, ordered by size then lexicographically.
pub fn subcoalgebras(c: &StepCoalgebra, bound: usize) -> Result<PosetListing<Subcoalgebra>> {
    let n = c.len();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "subcoalgebra listing",
            estimate: 1u128 << n.min(127),
            bound: 1u64 << bound.min(63),
        });
    }
    let mut masks: Vec<u64> = (0..1u64 << n)
        .filter(|&m| (0..n).all(|s| m >> s & 1 == 0 || c.step(s).is_none_or(|t| m >> t & 1 == 1)))
        .collect();
    masks.sort_by_key(|&m| (m.count_ones(), members(m, n)));
    let items = masks
        .iter()
        .map(|&m| {
            let states = members(m, n);
            let carrier = FinSet::new(states.iter().map(|&s| c.carrier().get(s).clone()).collect()).expect("distinct");
            let step = states
                .iter()
                .map(|&s| c.step(s).map(|t| states.binary_search(&t).expect("closed")))
                .collect();
            Subcoalgebra {
                coalgebra: StepCoalgebra::new(carrier, step).expect("valid"),
                states,
            }
        })
        .collect();
    let covers = hasse_covers(masks.len(), |i, j| masks[i] & !masks[j] == 0);
    Ok(PosetListing { items, covers })
}

fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&s| mask >> s & 1 == 1).collect()
}

/// Set partitions of `0..n` as restricted growth strings.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur.push(b);
            go(i + 1, n, if b == max { max + 1 } else { max }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        go(0, n, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// All quotients by congruences, finest first.
pub fn quotient_algebras(a: &PointedSuccAlgebra, bound: usize) -> Result<PosetListing<QuotientAlgebra>> {
    let n = a.len();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "quotient listing",
            estimate: n as u128,
            bound: bound as u64,
        });
    }
    let mut items: Vec<QuotientAlgebra> = partitions(n)
        .into_iter()
        .filter(|p| (0..n).all(|x| (0..n).all(|y| p[x] != p[y] || p[a.succ(x)] == p[a.succ(y)])))
        .map(|p| {
            let k = p.iter().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); k];
            for (x, &b) in p.iter().enumerate() {
                blocks[b].push(x);
            }
            // representatives are least elements; carrier positions sort with them
            let reps: Vec<Elem> = blocks.iter().map(|b| a.carrier().get(b[0]).clone()).collect();
            let carrier = FinSet::new(reps.clone()).expect("distinct");
            let pos: Vec<usize> = reps.iter().map(|r| carrier.position(r).expect("rep")).collect();
            let projection: Vec<usize> = p.iter().map(|&b| pos[b]).collect();
            let mut sorted_blocks = vec![Vec::new(); k];
            for (b, block) in blocks.into_iter().enumerate() {
                sorted_blocks[pos[b]] = block;
            }
            let mut succ = vec![0; k];
            for x in 0..n {
                succ[projection[x]] = projection[a.succ(x)];
            }
            let algebra = PointedSuccAlgebra::new(carrier, projection[a.zero()], succ).expect("valid");
            QuotientAlgebra {
                blocks: sorted_blocks,
                projection,
                algebra,
            }
        })
        .collect();
    items.sort_by(|x, y| {
        y.blocks
            .len()
            .cmp(&x.blocks.len())
            .then(x.projection.cmp(&y.projection))
    });
    // i ≤ j when the partition of i refines that of j
    let refines = |i: usize, j: usize| {
        let (p, q) = (&items[i].projection, &items[j].projection);
        (0..n).all(|x| (0..n).all(|y| p[x] != p[y] || q[x] == q[y]))
    };
    let covers = hasse_covers(items.len(), refines);
    Ok(PosetListing { items, covers })
}

impl PosetListing<Subcoalgebra> {
    pub fn view(&self) -> PosetView<Vec<String>> {
        PosetView {
            items: self.items.iter().map(|s| s.coalgebra.carrier().names()).collect(),
            covers: self.covers.clone(),
        }
    }
}

impl PosetListing<QuotientAlgebra> {
    /// Each quotient shown by its blocks, elements named from `original`.
    pub fn view(&self, original: &FinSet) -> PosetView<Vec<Vec<String>>> {
        PosetView {
            items: self
                .items
                .iter()
                .map(|q| {
                    q.blocks
                        .iter()
                        .map(|b| b.iter().map(|&x| original.get(x).to_string()).collect())
                        .collect()
                })
                .collect(),
            covers: self.covers.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{enumerate_alg_homs, std_algebra, std_coalgebra, unit_step_coalgebra};
    use proptest::prelude::*;

    #[test]
    fn subcoalgebras_of_a_bracket() {
        let l = subcoalgebras(&std_coalgebra(2), 8).unwrap();
        let states: Vec<_> = l.items.iter().map(|s| s.states.clone()).collect();
        assert_eq!(states, vec![vec![], vec![0], vec![0, 1], vec![0, 1, 2]]);
        assert_eq!(l.covers, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(subcoalgebras(&unit_step_coalgebra(), 8).unwrap().items.len(), 2);
    }

    #[test]
    fn subcoalgebra_bound_refuses() {
        let big = std_coalgebra(9);
        assert!(matches!(subcoalgebras(&big, 8), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn quotients_of_one() {
        let l = quotient_algebras(&std_algebra(1), 6).unwrap();
        assert_eq!(l.items.len(), 2);
        assert_eq!(l.items[0].algebra, std_algebra(1));
        assert_eq!(l.items[1].algebra.len(), 1);
        assert_eq!(l.covers, vec![(0, 1)]);
    }

    #[test]
    fn partition_counts_are_bell_numbers() {
        let bell: Vec<usize> = (0..6).map(|n| partitions(n).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52]);
    }

    proptest! {
        #[test]
        fn quotients_receive_surjective_homs(zero in 0usize..4, succ in proptest::collection::vec(0usize..4, 4)) {
            let a = PointedSuccAlgebra::numbered(zero, succ).unwrap();
            let l = quotient_algebras(&a, 6).unwrap();
            prop_assert!(l.items.iter().any(|q| q.blocks.len() == a.len()));
            for q in &l.items {
                let homs = enumerate_alg_homs(&a.to_fin(), &q.algebra.to_fin(), 1 << 20).unwrap();
                prop_assert!(homs.contains(&q.projection));
                let mut hit = vec![false; q.algebra.len()];
                for &b in &q.projection { hit[b] = true; }
                prop_assert!(hit.iter().all(|&h| h));
            }
        }

        #[test]
        fn subcoalgebras_form_a_lattice(step in proptest::collection::vec(proptest::option::of(0usize..5), 5)) {
            let c = StepCoalgebra::numbered(step).unwrap();
            let l = subcoalgebras(&c, 8).unwrap();
            let sets: Vec<Vec<usize>> = l.items.iter().map(|s| s.states.clone()).collect();
            for x in &sets {
                for y in &sets {
                    let inter: Vec<usize> = x.iter().copied().filter(|s| y.contains(s)).collect();
                    let mut uni = x.clone();
                    uni.extend(y.iter().copied().filter(|s| !x.contains(s)));
                    uni.sort();
                    prop_assert!(sets.contains(&inter));
                    prop_assert!(sets.contains(&uni));
                }
            }
        }
    }
}
