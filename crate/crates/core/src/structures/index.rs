use std::fmt;

use serde::{Serialize, Serializer};

use super::algebra::{FinCoalgebra, PointedSuccAlgebra, StepCoalgebra};
use crate::error::{Error, Result};
use crate::functor::{Elem, FinMap, FinSet, FunctorExpr};

/// A value of `N ∪ {∞}`; `Finite(k)` sorts before `Infinite`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl Index {
    pub fn min(self, other: Index) -> Index {
        std::cmp::min(self, other)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Index::Finite(k) => Some(k),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(k) => write!(f, "{k}"),
            Index::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Index::Finite(k) => s.serialize_u64(*k as u64),
            Index::Infinite => s.serialize_str("inf"),
        }
    }
}

impl StepCoalgebra {
    /// Steps until stop, or `Infinite` once a state repeats.
    pub fn index(&self, c: usize) -> Index {
        let mut seen = vec![false; self.len()];
        let mut cur = c;
        let mut k = 0;
        loop {
            if seen[cur] {
                return Index::Infinite;
            }
            seen[cur] = true;
            match self.step(cur) {
                None => return Index::Finite(k),
                Some(next) => {
                    cur = next;
                    k += 1;
                }
            }
        }
    }

    pub fn indices(&self) -> Vec<Index> {
        (0..self.len()).map(|c| self.index(c)).collect()
    }
}

/// Index of `c` in an `X + 1` coalgebra.
pub fn index_of(c: &FinCoalgebra, elem: &Elem) -> Result<Index> {
    let step = StepCoalgebra::from_fin(c)?;
    let i = c
        .carrier()
        .position(elem)
        .ok_or_else(|| Error::Invalid(format!("{elem} is not a state")))?;
    Ok(step.index(i))
}

/// `<n>`: carrier `0..=n`, `succ k = min(k + 1, n)`.
pub fn std_algebra(n: usize) -> PointedSuccAlgebra {
    PointedSuccAlgebra::numbered(0, (0..=n).map(|k| (k + 1).min(n)).collect()).expect("valid")
}

/// `<n>^`: carrier `0..=n`, `0` stops and `k` steps to `k - 1`.
pub fn std_coalgebra(n: usize) -> StepCoalgebra {
    StepCoalgebra::numbered((0..=n).map(|k| k.checked_sub(1)).collect()).expect("valid")
}

/// The one-state coalgebra `*` looping forever.
pub fn unit_step_coalgebra() -> StepCoalgebra {
    StepCoalgebra::new(FinSet::singleton(), vec![Some(0)]).expect("valid")
}

/// `I`: the singleton with structure `eta`.
pub fn unit_coalgebra(f: &FunctorExpr) -> FinCoalgebra {
    let one = FinSet::singleton();
    let fc = f.eval_on_set(&one);
    let chi = FinMap::from_fn(one.clone(), fc, |_| f.eta()).expect("eta lies in F(1)");
    FinCoalgebra::new(f.clone(), one, chi).expect("valid")
}

/// Names of the subcoalgebras of `N∞`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum SubterminalName {
    Empty,
    /// `<n>^`, the indices `0..=n`.
    Bracket(usize),
    /// All finite indices.
    NMinus,
    /// Only the index `∞`.
    IPoint,
    /// `<n>^` together with the point `∞`.
    BracketAndPoint(usize),
    NInfinity,
}

impl SubterminalName {
    pub fn contains(&self, i: Index) -> bool {
        match (self, i) {
            (SubterminalName::Empty, _) => false,
            (SubterminalName::Bracket(n), Index::Finite(k)) => k <= *n,
            (SubterminalName::Bracket(_), Index::Infinite) => false,
            (SubterminalName::NMinus, Index::Finite(_)) => true,
            (SubterminalName::NMinus, Index::Infinite) => false,
            (SubterminalName::IPoint, Index::Infinite) => true,
            (SubterminalName::IPoint, Index::Finite(_)) => false,
            (SubterminalName::BracketAndPoint(n), Index::Finite(k)) => k <= *n,
            (SubterminalName::BracketAndPoint(_), Index::Infinite) => true,
            (SubterminalName::NInfinity, _) => true,
        }
    }

    /// Inclusion of subcoalgebras of `N∞`.
    pub fn embeds_in(&self, other: &SubterminalName) -> bool {
        use SubterminalName::*;
        match (self, other) {
            (Empty, _) => true,
            (_, NInfinity) => true,
            (Bracket(n), Bracket(m) | BracketAndPoint(m)) | (BracketAndPoint(n), BracketAndPoint(m)) => n <= m,
            (IPoint, BracketAndPoint(_)) => true,
            (Bracket(_), NMinus) | (NMinus, NMinus) | (IPoint, IPoint) => true,
            _ => false,
        }
    }

    /// The finite coalgebra carrying this name, when there is one.
    pub fn to_coalgebra(&self) -> Option<StepCoalgebra> {
        match self {
            SubterminalName::Empty => Some(StepCoalgebra::empty()),
            SubterminalName::Bracket(n) => Some(std_coalgebra(*n)),
            SubterminalName::IPoint => Some(unit_step_coalgebra()),
            SubterminalName::BracketAndPoint(n) => {
                let mut names: Vec<String> = (0..=*n).map(|k| k.to_string()).collect();
                names.push("inf".into());
                let mut step: Vec<Option<usize>> = (0..=*n).map(|k| k.checked_sub(1)).collect();
                step.push(Some(n + 1));
                Some(StepCoalgebra::new(FinSet::atoms(names).expect("distinct"), step).expect("valid"))
            }
            SubterminalName::NMinus | SubterminalName::NInfinity => None,
        }
    }
}

impl fmt::Display for SubterminalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubterminalName::Empty => f.write_str("∅"),
            SubterminalName::Bracket(n) => write!(f, "⟨{n}⟩^"),
            SubterminalName::NMinus => f.write_str("ℕ⁻"),
            SubterminalName::IPoint => f.write_str("𝕀"),
            SubterminalName::BracketAndPoint(n) => write!(f, "⟨{n}⟩^ ⊔ 𝕀"),
            SubterminalName::NInfinity => f.write_str("ℕ∞"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn simulate(c: &StepCoalgebra, s: usize) -> Index {
        let mut cur = s;
        for k in 0..=c.len() {
            match c.step(cur) {
                None => return Index::Finite(k),
                Some(n) => cur = n,
            }
        }
        Index::Infinite
    }

    #[test]
    fn standard_families() {
        let c = std_coalgebra(3);
        assert_eq!(c.index(2), Index::Finite(2));
        assert_eq!(unit_step_coalgebra().index(0), Index::Infinite);
        assert_eq!(std_algebra(2).succ(2), 2);
        let i = unit_coalgebra(&FunctorExpr::id_plus_one());
        assert_eq!(i.step(0), &Elem::inl(Elem::star()));
        assert_eq!(
            index_of(&std_coalgebra(2).to_fin(), &Elem::atom("1")).unwrap(),
            Index::Finite(1)
        );
    }

    #[test]
    fn embedding_order() {
        use SubterminalName::*;
        assert!(Bracket(2).embeds_in(&Bracket(3)));
        assert!(!Bracket(3).embeds_in(&Bracket(2)));
        assert!(!IPoint.embeds_in(&NMinus));
        assert!(IPoint.embeds_in(&NInfinity));
        assert!(Bracket(7).embeds_in(&NMinus));
        assert!(Empty.embeds_in(&Empty));
        assert!(IPoint.embeds_in(&BracketAndPoint(0)));
        assert!(Bracket(1).embeds_in(&BracketAndPoint(1)));
        assert!(!BracketAndPoint(1).embeds_in(&Bracket(1)));
        assert!(!BracketAndPoint(1).embeds_in(&NMinus));
    }

    #[test]
    fn bracket_and_point_coalgebra() {
        let c = SubterminalName::BracketAndPoint(2).to_coalgebra().unwrap();
        assert_eq!(
            c.indices(),
            vec![Index::Finite(0), Index::Finite(1), Index::Finite(2), Index::Infinite]
        );
        assert_eq!(c.carrier().get(3), &Elem::atom("inf"));
    }

    proptest! {
        #[test]
        fn index_matches_simulation(step in proptest::collection::vec(proptest::option::of(0usize..5), 5)) {
            let c = StepCoalgebra::numbered(step).unwrap();
            let all = c.indices();
            for s in 0..5 {
                prop_assert_eq!(c.index(s), simulate(&c, s));
                prop_assert_eq!(all[s], simulate(&c, s));
            }
        }

        #[test]
        fn finite_index_means_stop_after_exactly_k_steps(step in proptest::collection::vec(proptest::option::of(0usize..6), 6)) {
            let c = StepCoalgebra::numbered(step).unwrap();
            for s in 0..6 {
                if let Index::Finite(k) = c.index(s) {
                    prop_assert!(k < 6);
                    let mut cur = s;
                    for _ in 0..k {
                        cur = c.step(cur).expect("no early stop");
                    }
                    prop_assert!(c.step(cur).is_none());
                }
            }
        }
    }
}
