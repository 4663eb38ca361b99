use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Mutex;

use serde::Serialize;

use super::algebra::PointedSuccAlgebra;
use crate::error::{Error, Result};

/// An `X + 1` algebra whose elements are computed on demand.
pub trait LazyAlgebra {
    type Elem: Clone + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn succ(&self, x: &Self::Elem) -> Self::Elem;

    /// `succ^m(zero)`.
    fn nth(&self, m: usize) -> Self::Elem {
        let mut x = self.zero();
        for _ in 0..m {
            x = self.succ(&x);
        }
        x
    }
}

impl<L: LazyAlgebra + ?Sized> LazyAlgebra for &L {
    type Elem = L::Elem;

    fn zero(&self) -> Self::Elem {
        (**self).zero()
    }

    fn succ(&self, x: &Self::Elem) -> Self::Elem {
        (**self).succ(x)
    }
}

/// A finite algebra seen lazily; elements are carrier positions.
impl LazyAlgebra for PointedSuccAlgebra {
    type Elem = usize;

    fn zero(&self) -> usize {
        PointedSuccAlgebra::zero(self)
    }

    fn succ(&self, x: &usize) -> usize {
        PointedSuccAlgebra::succ(self, *x)
    }
}

/// The natural numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Naturals;

impl LazyAlgebra for Naturals {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn succ(&self, x: &u64) -> u64 {
        x + 1
    }
}

/// An eventually periodic chain: `elements[prefix..]` repeats forever.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Lasso<E> {
    pub elements: Vec<E>,
    pub prefix: usize,
}

impl<E> Lasso<E> {
    pub fn cycle(&self) -> usize {
        self.elements.len() - self.prefix
    }

    /// The `m`-th element of the infinite chain.
    pub fn nth(&self, m: usize) -> &E {
        if m < self.elements.len() {
            &self.elements[m]
        } else {
            &self.elements[self.prefix + (m - self.prefix) % self.cycle()]
        }
    }

    /// The element the chain settles on, when the cycle has length one.
    pub fn top(&self) -> Option<&E> {
        (self.cycle() == 1).then(|| &self.elements[self.prefix])
    }
}

/// Iterates `succ` from `zero` until an element repeats. Gives up with
/// `NotSaturated` once `bound` distinct elements have been seen.
pub fn lazy_saturation<L: LazyAlgebra>(l: &L, bound: usize) -> Result<Lasso<L::Elem>> {
    let mut seen: HashMap<L::Elem, usize> = HashMap::new();
    let mut elements = Vec::new();
    let mut x = l.zero();
    loop {
        if let Some(&p) = seen.get(&x) {
            return Ok(Lasso { elements, prefix: p });
        }
        if elements.len() >= bound {
            return Err(Error::NotSaturated {
                explored: elements.len(),
            });
        }
        seen.insert(x.clone(), elements.len());
        let next = l.succ(&x);
        elements.push(x);
        x = next;
    }
}

/// The chain `n ↦ n_A`; always saturates within `|A| + 1` steps.
pub fn canonical_from_initial(a: &PointedSuccAlgebra) -> Lasso<usize> {
    lazy_saturation(a, a.len() + 1).expect("finite algebras saturate")
}

/// Whether every element is `n_A` for some `n`.
#[allow(non_snake_case)]
pub fn is_N_generated(a: &PointedSuccAlgebra) -> bool {
    canonical_from_initial(a).elements.len() == a.len()
}

/// Caches successor computations of another lazy algebra.
pub struct Memoized<L: LazyAlgebra> {
    inner: L,
    cache: Mutex<HashMap<L::Elem, L::Elem>>,
}

impl<L: LazyAlgebra> Memoized<L> {
    pub fn new(inner: L) -> Self {
        Memoized {
            inner,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn inner(&self) -> &L {
        &self.inner
    }
}

impl<L: LazyAlgebra> LazyAlgebra for Memoized<L> {
    type Elem = L::Elem;

    fn zero(&self) -> L::Elem {
        self.inner.zero()
    }

    fn succ(&self, x: &L::Elem) -> L::Elem {
        if let Some(y) = self.cache.lock().expect("cache lock").get(x) {
            return y.clone();
        }
        // computed outside the lock; concurrent callers agree on the value
        let y = self.inner.succ(x);
        self.cache.lock().expect("cache lock").insert(x.clone(), y.clone());
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::std_algebra;
    use proptest::prelude::*;

    #[test]
    fn chains_of_standard_algebras() {
        let l = canonical_from_initial(&std_algebra(3));
        assert_eq!(l.elements, vec![0, 1, 2, 3]);
        assert_eq!((l.prefix, l.cycle()), (3, 1));
        assert_eq!(*l.nth(10), 3);
        assert_eq!(l.top(), Some(&3));
    }

    #[test]
    fn pure_cycle_through_zero() {
        let a = PointedSuccAlgebra::numbered(0, vec![1, 2, 0]).unwrap();
        let l = canonical_from_initial(&a);
        assert_eq!((l.prefix, l.cycle()), (0, 3));
        assert_eq!(*l.nth(7), 1);
        assert!(l.top().is_none());
    }

    #[test]
    fn naturals_never_saturate() {
        assert_eq!(
            lazy_saturation(&Naturals, 100),
            Err(Error::NotSaturated { explored: 100 })
        );
    }

    #[test]
    fn generation() {
        assert!(is_N_generated(&std_algebra(4)));
        assert!(is_N_generated(&PointedSuccAlgebra::numbered(0, vec![0]).unwrap()));
        // <2> with a disjoint extra chain 3 -> 4 -> 4
        let two_chains = PointedSuccAlgebra::numbered(0, vec![1, 2, 2, 4, 4]).unwrap();
        assert!(!is_N_generated(&two_chains));
    }

    #[test]
    fn memoized_agrees_with_inner() {
        let m = Memoized::new(Naturals);
        assert_eq!(m.nth(5), 5);
        assert_eq!(m.nth(5), 5);
        assert_eq!(m.inner().nth(3), 3);
    }

    proptest! {
        #[test]
        fn lasso_agrees_with_iteration(zero in 0usize..4, succ in proptest::collection::vec(0usize..4, 4)) {
            let a = PointedSuccAlgebra::numbered(zero, succ).unwrap();
            let l = canonical_from_initial(&a);
            prop_assert!(l.elements.len() <= a.len() + 1);
            let mut x = a.zero();
            for m in 0..8 {
                prop_assert_eq!(*l.nth(m), x);
                x = a.succ(x);
            }
            // least repetition
            prop_assert_eq!(l.nth(l.prefix + l.cycle()), &l.elements[l.prefix]);
        }
    }
}
