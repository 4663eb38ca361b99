use std::fmt;

use super::elem::{Elem, FinMap, FinSet};
use super::monoid::ConstMonoid;
use crate::error::{Error, Result};

/// An endofunctor on finite sets together with its lax monoidal structure
/// `nabla: F(X) × F(Y) -> F(X × Y)` and `eta: 1 -> F(1)`, for the cartesian
/// structure on sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FunctorExpr {
    Id,
    Const(ConstMonoid),
    Prod(Box<FunctorExpr>, Box<FunctorExpr>),
    /// `F + M` for a constant monoid `M`. The mixed components of `nabla`
    /// project onto the `M` factor.
    Sum(Box<FunctorExpr>, ConstMonoid),
    /// `Comp(outer, inner)` is `outer ∘ inner`.
    Comp(Box<FunctorExpr>, Box<FunctorExpr>),
    Exp(FinSet),
}

impl FunctorExpr {
    /// `X + 1`, whose algebras are sets with a zero and a successor.
    pub fn id_plus_one() -> Self {
        FunctorExpr::Sum(Box::new(FunctorExpr::Id), ConstMonoid::unit())
    }

    pub fn prod(l: FunctorExpr, r: FunctorExpr) -> Self {
        FunctorExpr::Prod(Box::new(l), Box::new(r))
    }

    pub fn sum(l: FunctorExpr, m: ConstMonoid) -> Self {
        FunctorExpr::Sum(Box::new(l), m)
    }

    pub fn comp(outer: FunctorExpr, inner: FunctorExpr) -> Self {
        FunctorExpr::Comp(Box::new(outer), Box::new(inner))
    }

    /// `2 × X^Σ`, whose coalgebras are automata.
    pub fn automaton(alphabet: FinSet) -> Self {
        FunctorExpr::prod(FunctorExpr::Const(ConstMonoid::bool_and()), FunctorExpr::Exp(alphabet))
    }

    pub fn is_id_plus_one(&self) -> bool {
        matches!(self, FunctorExpr::Sum(l, m) if **l == FunctorExpr::Id && m.carrier().len() == 1)
    }

    /// Carrier of `F(X)` in canonical order.
    pub fn eval_on_set(&self, x: &FinSet) -> FinSet {
        match self {
            FunctorExpr::Id => x.clone(),
            FunctorExpr::Const(m) => m.carrier().clone(),
            FunctorExpr::Prod(l, r) => l.eval_on_set(x).product(&r.eval_on_set(x)),
            FunctorExpr::Sum(l, m) => {
                let mut elems: Vec<Elem> = l.eval_on_set(x).iter().cloned().map(Elem::inl).collect();
                elems.extend(m.carrier().iter().cloned().map(Elem::inr));
                FinSet::from_sorted(elems)
            }
            FunctorExpr::Comp(outer, inner) => outer.eval_on_set(&inner.eval_on_set(x)),
            FunctorExpr::Exp(base) => x.functions_from(base.len()),
        }
    }

    /// Functorial action on a single element of `F(X)`, given the action of a
    /// map on elements of `X`.
    pub fn fmap(&self, u: &Elem, f: &dyn Fn(&Elem) -> Elem) -> Elem {
        match (self, u) {
            (FunctorExpr::Id, _) => f(u),
            (FunctorExpr::Const(_), _) => u.clone(),
            (FunctorExpr::Prod(l, r), Elem::Pair(a, b)) => Elem::pair(l.fmap(a, f), r.fmap(b, f)),
            (FunctorExpr::Sum(l, _), Elem::Inl(a)) => Elem::inl(l.fmap(a, f)),
            (FunctorExpr::Sum(..), Elem::Inr(_)) => u.clone(),
            (FunctorExpr::Comp(outer, inner), _) => outer.fmap(u, &|v| inner.fmap(v, f)),
            (FunctorExpr::Exp(_), Elem::Fun(vs)) => Elem::Fun(vs.iter().map(f).collect()),
            _ => panic!("element {u} does not belong to an evaluation of {self}"),
        }
    }

    /// `F(f): F(X) -> F(Y)`.
    pub fn eval_on_map(&self, f: &FinMap) -> FinMap {
        let dom = self.eval_on_set(f.domain());
        let cod = self.eval_on_set(f.codomain());
        let g = |x: &Elem| f.apply(x).expect("total map").clone();
        FinMap::from_fn(dom, cod, |u| self.fmap(u, &g)).expect("functor preserves codomains")
    }

    /// The lax structure map on a pair of elements `u ∈ F(X)`, `v ∈ F(Y)`.
    pub fn nabla(&self, u: &Elem, v: &Elem) -> Elem {
        self.nabla_with(u, v, false)
    }

    /// `nabla` with every constant-monoid product post-composed with a swap of
    /// the first two carrier elements. Used only as a negative control for the
    /// coherence checks.
    pub fn nabla_corrupted(&self, u: &Elem, v: &Elem) -> Elem {
        self.nabla_with(u, v, true)
    }

    fn nabla_with(&self, u: &Elem, v: &Elem, corrupt: bool) -> Elem {
        match (self, u, v) {
            (FunctorExpr::Id, _, _) => Elem::pair(u.clone(), v.clone()),
            (FunctorExpr::Const(m), _, _) => m.op_elem(u, v, corrupt),
            (FunctorExpr::Prod(l, r), Elem::Pair(u1, u2), Elem::Pair(v1, v2)) => {
                Elem::pair(l.nabla_with(u1, v1, corrupt), r.nabla_with(u2, v2, corrupt))
            }
            (FunctorExpr::Sum(l, _), Elem::Inl(a), Elem::Inl(b)) => Elem::inl(l.nabla_with(a, b, corrupt)),
            (FunctorExpr::Sum(..), Elem::Inl(_), Elem::Inr(m)) => Elem::Inr(m.clone()),
            (FunctorExpr::Sum(..), Elem::Inr(m), Elem::Inl(_)) => Elem::Inr(m.clone()),
            (FunctorExpr::Sum(_, mon), Elem::Inr(a), Elem::Inr(b)) => Elem::inr(mon.op_elem(a, b, corrupt)),
            (FunctorExpr::Comp(outer, inner), _, _) => {
                let w = outer.nabla_with(u, v, corrupt);
                outer.fmap(&w, &|p| {
                    let (a, b) = p.as_pair().expect("outer nabla yields pairs");
                    inner.nabla_with(a, b, corrupt)
                })
            }
            (FunctorExpr::Exp(_), Elem::Fun(xs), Elem::Fun(ys)) => Elem::Fun(
                xs.iter()
                    .zip(ys)
                    .map(|(x, y)| Elem::pair(x.clone(), y.clone()))
                    .collect(),
            ),
            _ => panic!("nabla of {self} applied to ill-typed elements {u}, {v}"),
        }
    }

    /// `nabla_{X,Y}` as a map `F(X) × F(Y) -> F(X × Y)`.
    pub fn nabla_map(&self, x: &FinSet, y: &FinSet) -> FinMap {
        let dom = self.eval_on_set(x).product(&self.eval_on_set(y));
        let cod = self.eval_on_set(&x.product(y));
        FinMap::from_fn(dom, cod, |p| {
            let (u, v) = p.as_pair().expect("pair");
            self.nabla(u, v)
        })
        .expect("nabla lands in F(X × Y)")
    }

    /// The unit of the lax structure, an element of `F(1)`.
    pub fn eta(&self) -> Elem {
        match self {
            FunctorExpr::Id => Elem::star(),
            FunctorExpr::Const(m) => m.unit_elem().clone(),
            FunctorExpr::Prod(l, r) => Elem::pair(l.eta(), r.eta()),
            FunctorExpr::Sum(l, _) => Elem::inl(l.eta()),
            FunctorExpr::Comp(outer, inner) => {
                let e = inner.eta();
                outer.fmap(&outer.eta(), &|_| e.clone())
            }
            FunctorExpr::Exp(base) => Elem::Fun(vec![Elem::star(); base.len()]),
        }
    }

    /// The elements of `X` that occur inside `u ∈ F(X)`.
    pub fn support(&self, u: &Elem) -> Vec<Elem> {
        let mut out = Vec::new();
        self.collect_support(u, &mut out);
        out
    }

    fn collect_support(&self, u: &Elem, out: &mut Vec<Elem>) {
        match (self, u) {
            (FunctorExpr::Id, _) => out.push(u.clone()),
            (FunctorExpr::Const(_), _) | (FunctorExpr::Sum(..), Elem::Inr(_)) => {}
            (FunctorExpr::Prod(l, r), Elem::Pair(a, b)) => {
                l.collect_support(a, out);
                r.collect_support(b, out);
            }
            (FunctorExpr::Sum(l, _), Elem::Inl(a)) => l.collect_support(a, out),
            (FunctorExpr::Comp(outer, inner), _) => {
                for v in outer.support(u) {
                    inner.collect_support(&v, out);
                }
            }
            (FunctorExpr::Exp(_), Elem::Fun(vs)) => out.extend(vs.iter().cloned()),
            _ => panic!("element {u} does not belong to an evaluation of {self}"),
        }
    }

    pub(crate) fn expect_same(&self, other: &FunctorExpr) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::mismatch(self, other))
        }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorExpr::Id => f.write_str("id"),
            FunctorExpr::Const(m) => write!(f, "(const {m})"),
            FunctorExpr::Prod(l, r) => write!(f, "(prod {l} {r})"),
            FunctorExpr::Sum(l, m) => write!(f, "(sum {l} (const {m}))"),
            FunctorExpr::Comp(o, i) => write!(f, "(comp {o} {i})"),
            FunctorExpr::Exp(base) => {
                f.write_str("(exp")?;
                for e in base {
                    write!(f, " {e}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> FinSet {
        FinSet::atoms(names.iter().copied()).unwrap()
    }

    #[test]
    fn successor_functor_on_two_points() {
        let fx = FunctorExpr::id_plus_one().eval_on_set(&set(&["a", "b"]));
        assert_eq!(fx.names(), ["inl(a)", "inl(b)", "inr(*)"]);
    }

    #[test]
    fn automaton_functor_cardinality() {
        let f = FunctorExpr::automaton(set(&["s"]));
        assert_eq!(f.eval_on_set(&set(&["x", "y"])).len(), 4);
        let f2 = FunctorExpr::automaton(set(&["s", "t"]));
        assert_eq!(f2.eval_on_set(&set(&["x", "y", "z"])).len(), 2 * 9);
    }

    #[test]
    fn composite_successor_functor() {
        // (X + 1) + 1 on one point: inl(inl a), inl(inr *), inr(*)
        let f = FunctorExpr::comp(FunctorExpr::id_plus_one(), FunctorExpr::id_plus_one());
        let fx = f.eval_on_set(&set(&["a"]));
        assert_eq!(fx.names(), ["inl(inl(a))", "inl(inr(*))", "inr(*)"]);
    }

    #[test]
    fn map_action_on_coproduct() {
        let f = FunctorExpr::id_plus_one();
        let x = set(&["a", "b"]);
        let y = set(&["y"]);
        let collapse = FinMap::new(x.clone(), y, vec![0, 0]).unwrap();
        let fm = f.eval_on_map(&collapse);
        let img: Vec<String> = fm.domain().iter().map(|u| fm.apply(u).unwrap().to_string()).collect();
        assert_eq!(img, ["inl(y)", "inl(y)", "inr(*)"]);
        assert_eq!(
            f.eval_on_map(&FinMap::identity(&x)),
            FinMap::identity(&f.eval_on_set(&x))
        );
    }

    #[test]
    fn successor_nabla_and_eta() {
        let f = FunctorExpr::id_plus_one();
        let a = Elem::inl(Elem::atom("a"));
        let b = Elem::inl(Elem::atom("b"));
        let stop = Elem::inr(Elem::star());
        assert_eq!(f.nabla(&a, &b), Elem::inl(Elem::pair(Elem::atom("a"), Elem::atom("b"))));
        assert_eq!(f.nabla(&stop, &b), stop);
        assert_eq!(f.nabla(&a, &stop), stop);
        assert_eq!(f.eta(), Elem::inl(Elem::star()));
    }

    #[test]
    fn constant_nabla_is_the_monoid_operation() {
        let m = ConstMonoid::bool_and();
        let f = FunctorExpr::Const(m.clone());
        for a in 0..2 {
            for b in 0..2 {
                let (ea, eb) = (m.carrier().get(a), m.carrier().get(b));
                assert_eq!(&f.nabla(ea, eb), m.carrier().get(m.op(a, b)));
            }
        }
        assert_eq!(f.eta(), Elem::atom("1"));
    }

    #[test]
    fn composite_eta_factors_through_inner_eta() {
        let g = FunctorExpr::id_plus_one();
        let inner = FunctorExpr::automaton(set(&["s"]));
        let gf = FunctorExpr::comp(g.clone(), inner.clone());
        let expected = g.fmap(&g.eta(), &|_| inner.eta());
        assert_eq!(gf.eta(), expected);
        assert_eq!(gf.eta().to_string(), "inl((1,[*]))");
    }

    #[test]
    fn support_collects_base_elements() {
        let f = FunctorExpr::automaton(set(&["s", "t"]));
        let u = Elem::pair(Elem::atom("1"), Elem::Fun(vec![Elem::atom("x"), Elem::atom("y")]));
        assert_eq!(f.support(&u), vec![Elem::atom("x"), Elem::atom("y")]);
        assert!(FunctorExpr::id_plus_one().support(&Elem::inr(Elem::star())).is_empty());
    }
}
