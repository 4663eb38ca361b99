use crate::error::{check_bound, pow_estimate, Result};
use crate::functor::{Elem, FinMap};
use crate::structures::{FinAlgebra, FinCoalgebra, LazyAlgebra, Naturals, StepCoalgebra};

/// `[C, B]`: functions `C -> B` (as `Elem::Fun` indexed by state position)
/// with structure `(alpha u)(c) = beta(F(ev)(nabla(u, chi c)))`.
pub fn convolution_algebra(c: &FinCoalgebra, b: &FinAlgebra, bound: u64) -> Result<FinAlgebra> {
    c.functor().expect_same(b.functor())?;
    check_bound("convolution carrier", pow_estimate(b.len(), c.len()), bound)?;
    let f = c.functor();
    let carrier = b.carrier().functions_from(c.len());
    let ev = |p: &Elem| {
        let (g, x) = p.as_pair().expect("pair");
        let Elem::Fun(values) = g else {
            panic!("convolution element {g} is not a function")
        };
        values[c.carrier().position(x).expect("state")].clone()
    };
    let fa = f.eval_on_set(&carrier);
    let alpha = FinMap::from_fn(fa, carrier.clone(), |u| {
        Elem::Fun(
            (0..c.len())
                .map(|ci| {
                    let w = f.nabla(u, c.step(ci));
                    b.carrier().get(b.act(&f.fmap(&w, &ev))).clone()
                })
                .collect(),
        )
    })?;
    FinAlgebra::new(f.clone(), carrier, alpha)
}

/// `[C, L]` for an `X + 1` coalgebra and a lazy algebra `L`.
#[derive(Clone, Debug)]
pub struct LazyConvolution<L> {
    coalgebra: StepCoalgebra,
    base: L,
}

impl<L: LazyAlgebra> LazyConvolution<L> {
    pub fn new(coalgebra: StepCoalgebra, base: L) -> Self {
        LazyConvolution { coalgebra, base }
    }

    pub fn coalgebra(&self) -> &StepCoalgebra {
        &self.coalgebra
    }

    pub fn base(&self) -> &L {
        &self.base
    }
}

impl<L: LazyAlgebra> LazyAlgebra for LazyConvolution<L> {
    type Elem = Vec<L::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.coalgebra.len()]
    }

    fn succ(&self, f: &Self::Elem) -> Self::Elem {
        (0..self.coalgebra.len())
            .map(|c| match self.coalgebra.step(c) {
                None => self.base.zero(),
                Some(t) => self.base.succ(&f[t]),
            })
            .collect()
    }
}

/// `[C, N]`.
pub fn convolution_lazy(c: &StepCoalgebra) -> LazyConvolution<Naturals> {
    LazyConvolution::new(c.clone(), Naturals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{
        lazy_saturation, std_algebra, std_coalgebra, unit_step_coalgebra, Index, PointedSuccAlgebra,
    };

    #[test]
    fn bracket_dual_steps() {
        let l = convolution_lazy(&std_coalgebra(3));
        assert_eq!(l.zero(), vec![0, 0, 0, 0]);
        assert_eq!(l.succ(&vec![5, 6, 7, 8]), vec![0, 6, 7, 8]);
        assert_eq!(l.nth(2), vec![0, 1, 2, 2]);
    }

    #[test]
    fn bracket_dual_saturates_at_the_top_sequence() {
        for n in 0..6 {
            let lasso = lazy_saturation(&convolution_lazy(&std_coalgebra(n)), 100).unwrap();
            assert_eq!((lasso.prefix, lasso.cycle()), (n, 1));
            assert_eq!(lasso.top().unwrap(), &(0..=n as u64).collect::<Vec<_>>());
        }
    }

    #[test]
    fn unit_dual_never_saturates() {
        assert!(lazy_saturation(&convolution_lazy(&unit_step_coalgebra()), 100).is_err());
    }

    #[test]
    fn unit_into_a_finite_chain() {
        let l = LazyConvolution::new(unit_step_coalgebra(), std_algebra(2));
        let lasso = lazy_saturation(&l, 10).unwrap();
        assert_eq!((lasso.prefix, lasso.cycle()), (2, 1));
    }

    #[test]
    fn generic_convolution_matches_formula() {
        let c = StepCoalgebra::numbered(vec![None, Some(0), Some(1), Some(2)]).unwrap();
        let b = PointedSuccAlgebra::numbered(1, vec![2, 0, 2]).unwrap();
        let conv = convolution_algebra(&c.to_fin(), &b.to_fin(), 1000).unwrap();
        let idx = c.indices();
        let mut x = conv.act(&Elem::inr(Elem::star()));
        for m in 0..8 {
            let Elem::Fun(values) = conv.carrier().get(x) else {
                unreachable!()
            };
            for (ci, v) in values.iter().enumerate() {
                let k = match idx[ci] {
                    Index::Finite(k) => k.min(m),
                    Index::Infinite => m,
                };
                assert_eq!(v, b.carrier().get(b.nth(k)));
            }
            x = conv.act(&Elem::inl(conv.carrier().get(x).clone()));
        }
    }

    #[test]
    fn empty_coalgebra_gives_the_point() {
        let conv = convolution_algebra(&StepCoalgebra::empty().to_fin(), &std_algebra(3).to_fin(), 10).unwrap();
        assert_eq!(conv.len(), 1);
    }
}
