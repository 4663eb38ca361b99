use std::fmt;

use crate::error::{check_bound, pow_estimate, Error, Result};
use crate::functor::{Elem, FinMap, FinSet, FunctorExpr};
use crate::search::Csp;

/// An algebra `alpha: F(A) -> A` on a finite carrier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinAlgebra {
    functor: FunctorExpr,
    carrier: FinSet,
    alpha: FinMap,
}

impl FinAlgebra {
    pub fn new(functor: FunctorExpr, carrier: FinSet, alpha: FinMap) -> Result<Self> {
        let fa = functor.eval_on_set(&carrier);
        if alpha.domain() != &fa || alpha.codomain() != &carrier {
            return Err(Error::Invalid(format!(
                "structure map of an algebra for {functor} must go from F(A) to A"
            )));
        }
        Ok(FinAlgebra {
            functor,
            carrier,
            alpha,
        })
    }

    pub fn from_fn(functor: FunctorExpr, carrier: FinSet, alpha: impl Fn(&Elem) -> Elem) -> Result<Self> {
        let fa = functor.eval_on_set(&carrier);
        let alpha = FinMap::from_fn(fa, carrier.clone(), alpha)?;
        Ok(FinAlgebra {
            functor,
            carrier,
            alpha,
        })
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn alpha(&self) -> &FinMap {
        &self.alpha
    }

    /// `alpha(u)` as a carrier position.
    pub fn act(&self, u: &Elem) -> usize {
        let i = self.alpha.domain().position(u).expect("element of F(A)");
        self.alpha.image_index(i)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }
}

/// A coalgebra `chi: C -> F(C)` on a finite carrier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinCoalgebra {
    functor: FunctorExpr,
    carrier: FinSet,
    chi: FinMap,
}

impl FinCoalgebra {
    pub fn new(functor: FunctorExpr, carrier: FinSet, chi: FinMap) -> Result<Self> {
        let fc = functor.eval_on_set(&carrier);
        if chi.domain() != &carrier || chi.codomain() != &fc {
            return Err(Error::Invalid(format!(
                "structure map of a coalgebra for {functor} must go from C to F(C)"
            )));
        }
        Ok(FinCoalgebra { functor, carrier, chi })
    }

    pub fn from_fn(functor: FunctorExpr, carrier: FinSet, chi: impl Fn(&Elem) -> Elem) -> Result<Self> {
        let fc = functor.eval_on_set(&carrier);
        let chi = FinMap::from_fn(carrier.clone(), fc, chi)?;
        Ok(FinCoalgebra { functor, carrier, chi })
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn chi(&self) -> &FinMap {
        &self.chi
    }

    /// `chi` of the state at position `c`.
    pub fn step(&self, c: usize) -> &Elem {
        self.chi.codomain().get(self.chi.image_index(c))
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }
}

/// An `X + 1` algebra: a zero and a successor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointedSuccAlgebra {
    carrier: FinSet,
    zero: usize,
    succ: Vec<usize>,
}

impl PointedSuccAlgebra {
    pub fn new(carrier: FinSet, zero: usize, succ: Vec<usize>) -> Result<Self> {
        if zero >= carrier.len() {
            return Err(Error::Invalid("zero is not in the carrier".into()));
        }
        if succ.len() != carrier.len() || succ.iter().any(|&s| s >= carrier.len()) {
            return Err(Error::Invalid("successor must be a total endofunction".into()));
        }
        Ok(PointedSuccAlgebra { carrier, zero, succ })
    }

    /// Carrier `{0, ..., n-1}`.
    pub fn numbered(zero: usize, succ: Vec<usize>) -> Result<Self> {
        PointedSuccAlgebra::new(FinSet::numbered(succ.len()), zero, succ)
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn succ(&self, a: usize) -> usize {
        self.succ[a]
    }

    pub fn succ_table(&self) -> &[usize] {
        &self.succ
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn to_fin(&self) -> FinAlgebra {
        let f = FunctorExpr::id_plus_one();
        let n = self.len();
        // F(A) lists inl(a) in carrier order, then inr(*)
        let mut images = self.succ.clone();
        images.push(self.zero);
        let alpha =
            FinMap::new(f.eval_on_set(&self.carrier), self.carrier.clone(), images).expect("successor table is total");
        debug_assert_eq!(alpha.domain().len(), n + 1);
        FinAlgebra {
            functor: f,
            carrier: self.carrier.clone(),
            alpha,
        }
    }

    pub fn from_fin(a: &FinAlgebra) -> Result<Self> {
        if !a.functor.is_id_plus_one() {
            return Err(Error::mismatch(FunctorExpr::id_plus_one(), &a.functor));
        }
        let n = a.len();
        let images = a.alpha.images();
        Ok(PointedSuccAlgebra {
            carrier: a.carrier.clone(),
            zero: images[n],
            succ: images[..n].to_vec(),
        })
    }

    /// Reorders nothing; renames the carrier element by element.
    pub fn relabel(&self, carrier: FinSet) -> Result<Self> {
        if carrier.len() != self.len() {
            return Err(Error::Invalid("relabeling changes the carrier size".into()));
        }
        PointedSuccAlgebra::new(carrier, self.zero, self.succ.clone())
    }
}

impl fmt::Display for PointedSuccAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zero {} succ", self.carrier.get(self.zero))?;
        for (a, &s) in self.succ.iter().enumerate() {
            write!(f, " {}->{}", self.carrier.get(a), self.carrier.get(s))?;
        }
        Ok(())
    }
}

/// An `X + 1` coalgebra: a partial step function, `None` meaning stop.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StepCoalgebra {
    carrier: FinSet,
    step: Vec<Option<usize>>,
}

impl StepCoalgebra {
    pub fn new(carrier: FinSet, step: Vec<Option<usize>>) -> Result<Self> {
        if step.len() != carrier.len() || step.iter().flatten().any(|&s| s >= carrier.len()) {
            return Err(Error::Invalid("step must be defined on every state".into()));
        }
        Ok(StepCoalgebra { carrier, step })
    }

    pub fn numbered(step: Vec<Option<usize>>) -> Result<Self> {
        StepCoalgebra::new(FinSet::numbered(step.len()), step)
    }

    pub fn empty() -> Self {
        StepCoalgebra {
            carrier: FinSet::empty(),
            step: Vec::new(),
        }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn step(&self, c: usize) -> Option<usize> {
        self.step[c]
    }

    pub fn step_table(&self) -> &[Option<usize>] {
        &self.step
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn to_fin(&self) -> FinCoalgebra {
        let f = FunctorExpr::id_plus_one();
        let fc = f.eval_on_set(&self.carrier);
        let n = self.len();
        let images = self.step.iter().map(|s| s.unwrap_or(n)).collect();
        let chi = FinMap::new(self.carrier.clone(), fc, images).expect("step is total");
        FinCoalgebra {
            functor: f,
            carrier: self.carrier.clone(),
            chi,
        }
    }

    pub fn from_fin(c: &FinCoalgebra) -> Result<Self> {
        if !c.functor.is_id_plus_one() {
            return Err(Error::mismatch(FunctorExpr::id_plus_one(), &c.functor));
        }
        let n = c.len();
        let step = c
            .chi
            .images()
            .iter()
            .map(|&i| if i == n { None } else { Some(i) })
            .collect();
        Ok(StepCoalgebra {
            carrier: c.carrier.clone(),
            step,
        })
    }
}

fn fin_position(set: &FinSet, e: &Elem) -> usize {
    set.position(e).expect("element of the carrier")
}

/// Whether `h` (carrier positions) is an algebra homomorphism `A -> B`.
pub fn is_algebra_hom(a: &FinAlgebra, b: &FinAlgebra, h: &[usize]) -> bool {
    if a.functor != b.functor || h.len() != a.len() {
        return false;
    }
    let map = |x: &Elem| b.carrier.get(h[fin_position(&a.carrier, x)]).clone();
    a.alpha.domain().iter().enumerate().all(|(i, u)| {
        let lhs = h[a.alpha.image_index(i)];
        lhs == b.act(&a.functor.fmap(u, &map))
    })
}

/// Whether `h` (carrier positions) is a coalgebra homomorphism `C -> D`.
pub fn is_coalgebra_hom(c: &FinCoalgebra, d: &FinCoalgebra, h: &[usize]) -> bool {
    if c.functor != d.functor || h.len() != c.len() {
        return false;
    }
    let map = |x: &Elem| d.carrier.get(h[fin_position(&c.carrier, x)]).clone();
    (0..c.len()).all(|i| d.step(h[i]) == &c.functor.fmap(c.step(i), &map))
}

/// All algebra homomorphisms `A -> B`, lexicographically by image table.
pub fn enumerate_alg_homs(a: &FinAlgebra, b: &FinAlgebra, bound: u64) -> Result<Vec<Vec<usize>>> {
    a.functor.expect_same(&b.functor)?;
    check_bound("algebra homomorphisms", pow_estimate(b.len(), a.len()), bound)?;
    if a.functor.is_id_plus_one() {
        let (a, b) = (PointedSuccAlgebra::from_fin(a)?, PointedSuccAlgebra::from_fin(b)?);
        return Ok(succ_hom_csp(&a, &b).solutions());
    }
    let f = &a.functor;
    let mut csp = Csp::new(vec![b.len(); a.len()]);
    for (i, u) in a.alpha.domain().iter().enumerate() {
        let target = a.alpha.image_index(i);
        let mut vars: Vec<usize> = f.support(u).iter().map(|x| fin_position(&a.carrier, x)).collect();
        vars.push(target);
        let (u, ac, bc) = (u.clone(), &a.carrier, &b.carrier);
        csp.add(&vars, move |h| {
            let image = f.fmap(&u, &|x| bc.get(h[fin_position(ac, x)]).clone());
            h[target] == b.act(&image)
        });
    }
    Ok(csp.solutions())
}

fn succ_hom_csp<'a>(a: &'a PointedSuccAlgebra, b: &'a PointedSuccAlgebra) -> Csp<'a> {
    let mut csp = Csp::new(vec![b.len(); a.len()]);
    let z = a.zero;
    csp.add(&[z], move |h| h[z] == b.zero);
    for x in 0..a.len() {
        let s = a.succ[x];
        csp.add(&[x, s], move |h| h[s] == b.succ[h[x]]);
    }
    csp
}

/// All coalgebra homomorphisms `C -> D`.
pub fn enumerate_coalg_homs(c: &FinCoalgebra, d: &FinCoalgebra, bound: u64) -> Result<Vec<Vec<usize>>> {
    c.functor.expect_same(&d.functor)?;
    check_bound("coalgebra homomorphisms", pow_estimate(d.len(), c.len()), bound)?;
    let f = &c.functor;
    let mut csp = Csp::new(vec![d.len(); c.len()]);
    for i in 0..c.len() {
        let step = c.step(i).clone();
        let mut vars: Vec<usize> = f.support(&step).iter().map(|x| fin_position(&c.carrier, x)).collect();
        vars.push(i);
        let (cc, dc) = (&c.carrier, &d.carrier);
        csp.add(&vars, move |h| {
            d.step(h[i]) == &f.fmap(&step, &|x| dc.get(h[fin_position(cc, x)]).clone())
        });
    }
    Ok(csp.solutions())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> PointedSuccAlgebra {
        PointedSuccAlgebra::numbered(0, (0..=n).map(|k| (k + 1).min(n)).collect()).unwrap()
    }

    #[test]
    fn succ_view_round_trips() {
        let a = chain(2);
        let fa = a.to_fin();
        assert_eq!(fa.act(&Elem::inr(Elem::star())), 0);
        assert_eq!(fa.act(&Elem::inl(Elem::atom("2"))), 2);
        assert_eq!(PointedSuccAlgebra::from_fin(&fa).unwrap(), a);
    }

    #[test]
    fn step_view_round_trips() {
        let c = StepCoalgebra::numbered(vec![None, Some(0), Some(2)]).unwrap();
        let fc = c.to_fin();
        assert_eq!(fc.step(0), &Elem::inr(Elem::star()));
        assert_eq!(fc.step(1), &Elem::inl(Elem::atom("0")));
        assert_eq!(StepCoalgebra::from_fin(&fc).unwrap(), c);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        assert!(PointedSuccAlgebra::numbered(3, vec![0, 1]).is_err());
        assert!(PointedSuccAlgebra::numbered(0, vec![0, 2]).is_err());
        assert!(StepCoalgebra::numbered(vec![Some(1)]).is_err());
    }

    #[test]
    fn homs_between_chains() {
        // Alg(<1>, <2>) is empty: 1 and 2 differ in <2>.
        let homs = enumerate_alg_homs(&chain(1).to_fin(), &chain(2).to_fin(), 1000).unwrap();
        assert!(homs.is_empty());
        let homs = enumerate_alg_homs(&chain(2).to_fin(), &chain(1).to_fin(), 1000).unwrap();
        assert_eq!(homs, vec![vec![0, 1, 1]]);
        assert!(is_algebra_hom(&chain(2).to_fin(), &chain(1).to_fin(), &[0, 1, 1]));
    }

    #[test]
    fn coalgebra_homs_preserve_steps() {
        let c = StepCoalgebra::numbered(vec![None, Some(0)]).unwrap().to_fin();
        let d = StepCoalgebra::numbered(vec![None, Some(0), Some(1)]).unwrap().to_fin();
        let homs = enumerate_coalg_homs(&c, &d, 1000).unwrap();
        assert_eq!(homs, vec![vec![0, 1]]);
        assert!(is_coalgebra_hom(&c, &d, &[0, 1]));
        assert!(!is_coalgebra_hom(&c, &d, &[0, 2]));
    }
}
