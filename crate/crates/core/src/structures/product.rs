use super::algebra::{FinCoalgebra, StepCoalgebra};
use crate::error::Result;
use crate::functor::{Elem, FinMap};

/// `C ⊗ D` with structure `nabla ∘ (chi_C × chi_D)`; states are pairs `(c,d)`.
pub fn product_coalgebra(c: &FinCoalgebra, d: &FinCoalgebra) -> Result<FinCoalgebra> {
    c.functor().expect_same(d.functor())?;
    let f = c.functor();
    let carrier = c.carrier().product(d.carrier());
    let fc = f.eval_on_set(&carrier);
    let chi = FinMap::from_fn(carrier.clone(), fc, |p| {
        let (x, y) = p.as_pair().expect("pair state");
        let i = c.carrier().position(x).expect("state");
        let j = d.carrier().position(y).expect("state");
        f.nabla(c.step(i), d.step(j))
    })?;
    FinCoalgebra::new(f.clone(), carrier, chi)
}

/// The `X + 1` product: step both components, stopping when either stops.
/// Position of `(c,d)` is `c * |D| + d`.
pub fn product_step(c: &StepCoalgebra, d: &StepCoalgebra) -> StepCoalgebra {
    let carrier = c.carrier().product(d.carrier());
    let m = d.len();
    let step = (0..c.len())
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| match (c.step(i), d.step(j)) {
            (Some(x), Some(y)) => Some(x * m + y),
            _ => None,
        })
        .collect();
    StepCoalgebra::new(carrier, step).expect("valid")
}

/// The associator `(C ⊗ D) ⊗ E -> C ⊗ (D ⊗ E)` as a map of carriers.
pub fn associator(left: &FinCoalgebra, right: &FinCoalgebra) -> Result<FinMap> {
    FinMap::from_fn(left.carrier().clone(), right.carrier().clone(), |p| {
        let (xy, z) = p.as_pair().expect("pair");
        let (x, y) = xy.as_pair().expect("pair");
        Elem::pair(x.clone(), Elem::pair(y.clone(), z.clone()))
    })
}

/// The symmetry `C ⊗ D -> D ⊗ C`.
pub fn symmetry(cd: &FinCoalgebra, dc: &FinCoalgebra) -> Result<FinMap> {
    FinMap::from_fn(cd.carrier().clone(), dc.carrier().clone(), |p| {
        let (x, y) = p.as_pair().expect("pair");
        Elem::pair(y.clone(), x.clone())
    })
}

/// The unitor `C ⊗ I -> C`.
pub fn right_unitor(ci: &FinCoalgebra, c: &FinCoalgebra) -> Result<FinMap> {
    FinMap::from_fn(ci.carrier().clone(), c.carrier().clone(), |p| {
        p.as_pair().expect("pair").0.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{FinSet, FunctorExpr};
    use crate::structures::{all_step_coalgebras, is_coalgebra_hom, std_coalgebra, unit_coalgebra, Index};

    #[test]
    fn index_of_pair_is_minimum() {
        for c in all_step_coalgebras(2).iter().chain(&all_step_coalgebras(3)) {
            for d in &all_step_coalgebras(2) {
                let p = product_step(d, c);
                for i in 0..d.len() {
                    for j in 0..c.len() {
                        let k = i * c.len() + j;
                        assert_eq!(p.index(k), d.index(i).min(c.index(j)));
                    }
                }
            }
        }
        let p = product_step(&std_coalgebra(3), &std_coalgebra(1));
        assert_eq!(p.index(3 * 2 + 1), Index::Finite(1));
    }

    #[test]
    fn generic_product_matches_step_product() {
        for c in &all_step_coalgebras(2) {
            for d in &all_step_coalgebras(3) {
                let generic = product_coalgebra(&c.to_fin(), &d.to_fin()).unwrap();
                assert_eq!(StepCoalgebra::from_fin(&generic).unwrap(), product_step(c, d));
            }
        }
    }

    #[test]
    fn unit_symmetry_and_associator_are_isomorphisms() {
        let f = FunctorExpr::id_plus_one();
        let i = unit_coalgebra(&f);
        let small: Vec<FinCoalgebra> = (1..=2).flat_map(all_step_coalgebras).map(|c| c.to_fin()).collect();
        for c in &small {
            let ci = product_coalgebra(c, &i).unwrap();
            let u = right_unitor(&ci, c).unwrap();
            assert!(u.is_bijective());
            assert!(is_coalgebra_hom(&ci, c, u.images()));
            for d in &small {
                let cd = product_coalgebra(c, d).unwrap();
                let dc = product_coalgebra(d, c).unwrap();
                let s = symmetry(&cd, &dc).unwrap();
                assert!(s.is_bijective() && is_coalgebra_hom(&cd, &dc, s.images()));
            }
        }
        let tiny: Vec<FinCoalgebra> = all_step_coalgebras(1)
            .into_iter()
            .chain(all_step_coalgebras(2).into_iter().step_by(2))
            .map(|c| c.to_fin())
            .collect();
        for c in &tiny {
            for d in &tiny {
                for e in &tiny {
                    let left = product_coalgebra(&product_coalgebra(c, d).unwrap(), e).unwrap();
                    let right = product_coalgebra(c, &product_coalgebra(d, e).unwrap()).unwrap();
                    let a = associator(&left, &right).unwrap();
                    assert!(a.is_bijective() && is_coalgebra_hom(&left, &right, a.images()));
                }
            }
        }
    }

    #[test]
    fn automaton_products_accept_jointly() {
        let f = FunctorExpr::automaton(FinSet::atoms(["a"]).unwrap());
        // one accepting state looping, one rejecting state looping
        let acc = FinCoalgebra::from_fn(f.clone(), FinSet::singleton(), |_| {
            Elem::pair(Elem::atom("1"), Elem::Fun(vec![Elem::star()]))
        })
        .unwrap();
        let rej = FinCoalgebra::from_fn(f.clone(), FinSet::singleton(), |_| {
            Elem::pair(Elem::atom("0"), Elem::Fun(vec![Elem::star()]))
        })
        .unwrap();
        let p = product_coalgebra(&acc, &rej).unwrap();
        assert_eq!(p.step(0).as_pair().unwrap().0, &Elem::atom("0"));
    }
}
