//! Elements of evaluated functors, finite sets with a canonical order, and
//! total maps between them.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// The name of the unique element of the singleton set.
pub const STAR: &str = "*";

/// An element of a finite set built by evaluating a functor expression.
///
/// Atoms are the named elements of base sets. The other variants mirror the
/// node kinds of [`FunctorExpr`](super::FunctorExpr): pairs for products,
/// `inl`/`inr` for the tagged sum, and `Fun` for a function out of an
/// exponent base, listed in the base's canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Elem {
    Atom(String),
    Pair(Box<Elem>, Box<Elem>),
    Inl(Box<Elem>),
    Inr(Box<Elem>),
    Fun(Vec<Elem>),
}

impl Elem {
    pub fn atom(name: impl Into<String>) -> Self {
        Elem::Atom(name.into())
    }

    pub fn star() -> Self {
        Elem::Atom(STAR.to_string())
    }

    pub fn pair(a: Elem, b: Elem) -> Self {
        Elem::Pair(Box::new(a), Box::new(b))
    }

    pub fn inl(a: Elem) -> Self {
        Elem::Inl(Box::new(a))
    }

    pub fn inr(a: Elem) -> Self {
        Elem::Inr(Box::new(a))
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Elem::Atom(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Elem::Atom(_) => 0,
            Elem::Pair(..) => 1,
            Elem::Inl(_) => 2,
            Elem::Inr(_) => 3,
            Elem::Fun(_) => 4,
        }
    }
}

/// Natural order on names: runs of digits compare numerically, so `q2 < q10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let mut xs = a.chars().peekable();
    let mut ys = b.chars().peekable();
    loop {
        match (xs.peek().copied(), ys.peek().copied()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let mut dx = String::new();
                while let Some(c) = xs.peek().copied().filter(char::is_ascii_digit) {
                    dx.push(c);
                    xs.next();
                }
                let mut dy = String::new();
                while let Some(c) = ys.peek().copied().filter(char::is_ascii_digit) {
                    dy.push(c);
                    ys.next();
                }
                let tx = dx.trim_start_matches('0');
                let ty = dy.trim_start_matches('0');
                let ord = tx.len().cmp(&ty.len()).then_with(|| tx.cmp(ty));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(&y);
                }
                xs.next();
                ys.next();
            }
        }
    }
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Elem::Atom(a), Elem::Atom(b)) => natural_cmp(a, b),
            (Elem::Pair(a1, b1), Elem::Pair(a2, b2)) => a1.cmp(a2).then_with(|| b1.cmp(b2)),
            (Elem::Inl(a), Elem::Inl(b)) | (Elem::Inr(a), Elem::Inr(b)) => a.cmp(b),
            (Elem::Fun(a), Elem::Fun(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Atom(s) => f.write_str(s),
            Elem::Pair(a, b) => write!(f, "({a},{b})"),
            Elem::Inl(a) => write!(f, "inl({a})"),
            Elem::Inr(a) => write!(f, "inr({a})"),
            Elem::Fun(vs) => {
                f.write_str("[")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// A finite set of distinct elements kept in canonical (sorted) order.
///
/// Positions in the order double as indices everywhere in the crate: maps,
/// measurings and enumerations store `usize` positions rather than elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FinSet {
    elems: Vec<Elem>,
}

impl FinSet {
    pub fn new(mut elems: Vec<Elem>) -> Result<Self> {
        elems.sort();
        if let Some(w) = elems.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate element {}", w[0])));
        }
        Ok(FinSet { elems })
    }

    /// Set of atoms with the given names.
    pub fn atoms<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        FinSet::new(names.into_iter().map(|s| Elem::Atom(s.into())).collect())
    }

    /// `{0, 1, ..., n-1}` as atoms.
    pub fn numbered(n: usize) -> Self {
        FinSet {
            elems: (0..n).map(|i| Elem::Atom(i.to_string())).collect(),
        }
    }

    pub fn singleton() -> Self {
        FinSet {
            elems: vec![Elem::star()],
        }
    }

    pub fn empty() -> Self {
        FinSet::default()
    }

    pub(crate) fn from_sorted(elems: Vec<Elem>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]), "unsorted FinSet");
        FinSet { elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &Elem {
        &self.elems[i]
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Elem> {
        self.elems.iter()
    }

    pub fn position(&self, e: &Elem) -> Option<usize> {
        self.elems.binary_search(e).ok()
    }

    pub fn position_of_name(&self, name: &str) -> Option<usize> {
        self.position(&Elem::Atom(name.to_string()))
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.position(e).is_some()
    }

    /// Cartesian product; pairs come out already in canonical order.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut elems = Vec::with_capacity(self.len() * other.len());
        for a in &self.elems {
            for b in &other.elems {
                elems.push(Elem::pair(a.clone(), b.clone()));
            }
        }
        FinSet::from_sorted(elems)
    }

    /// All functions `base -> self`, each encoded as `Elem::Fun`.
    pub fn functions_from(&self, base: usize) -> FinSet {
        let n = self.len();
        if n == 0 {
            return if base == 0 {
                FinSet::from_sorted(vec![Elem::Fun(vec![])])
            } else {
                FinSet::empty()
            };
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; base];
        loop {
            out.push(Elem::Fun(idx.iter().map(|&i| self.elems[i].clone()).collect()));
            let mut k = base;
            loop {
                if k == 0 {
                    return FinSet::from_sorted(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.elems.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl<'a> IntoIterator for &'a FinSet {
    type Item = &'a Elem;
    type IntoIter = std::slice::Iter<'a, Elem>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// A total map between finite sets, stored as image positions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinMap {
    domain: FinSet,
    codomain: FinSet,
    images: Vec<usize>,
}

impl FinMap {
    pub fn new(domain: FinSet, codomain: FinSet, images: Vec<usize>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::Invalid(format!(
                "map has {} images for a domain of size {}",
                images.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= codomain.len()) {
            return Err(Error::Invalid(format!("image index {bad} out of range")));
        }
        Ok(FinMap {
            domain,
            codomain,
            images,
        })
    }

    /// Builds a map from a function on elements; fails if some image is not
    /// in the codomain.
    pub fn from_fn(domain: FinSet, codomain: FinSet, f: impl Fn(&Elem) -> Elem) -> Result<Self> {
        let mut images = Vec::with_capacity(domain.len());
        for x in &domain {
            let y = f(x);
            let j = codomain
                .position(&y)
                .ok_or_else(|| Error::Invalid(format!("image {y} of {x} is not in the codomain")))?;
            images.push(j);
        }
        Ok(FinMap {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(set: &FinSet) -> Self {
        FinMap {
            domain: set.clone(),
            codomain: set.clone(),
            images: (0..set.len()).collect(),
        }
    }

    pub fn domain(&self) -> &FinSet {
        &self.domain
    }

    pub fn codomain(&self) -> &FinSet {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn apply(&self, x: &Elem) -> Option<&Elem> {
        self.domain.position(x).map(|i| self.codomain.get(self.images[i]))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinMap) -> Result<FinMap> {
        if self.codomain != other.domain {
            return Err(Error::Invalid("composing maps with mismatched sets".into()));
        }
        Ok(FinMap {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain.len() != self.codomain.len() {
            return false;
        }
        let mut hit = vec![false; self.codomain.len()];
        for &i in &self.images {
            if std::mem::replace(&mut hit[i], true) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order_on_names() {
        assert_eq!(natural_cmp("2", "10"), Ordering::Less);
        assert_eq!(natural_cmp("q2", "q10"), Ordering::Less);
        assert_eq!(natural_cmp("a", "b"), Ordering::Less);
        assert_eq!(natural_cmp("01", "1"), Ordering::Less);
        let set = FinSet::atoms(["10", "2", "0"]).unwrap();
        assert_eq!(set.names(), ["0", "2", "10"]);
    }

    #[test]
    fn duplicates_are_rejected() {
        assert!(FinSet::atoms(["a", "b", "a"]).is_err());
    }

    #[test]
    fn function_space_is_lexicographic() {
        let x = FinSet::atoms(["a", "b"]).unwrap();
        let fs = x.functions_from(2);
        assert_eq!(fs.names(), ["[a,a]", "[a,b]", "[b,a]", "[b,b]"]);
        assert_eq!(FinSet::empty().functions_from(0).len(), 1);
        assert_eq!(FinSet::empty().functions_from(1).len(), 0);
    }

    #[test]
    fn map_composition_and_bijectivity() {
        let x = FinSet::numbered(3);
        let swap = FinMap::new(x.clone(), x.clone(), vec![1, 0, 2]).unwrap();
        assert!(swap.is_bijective());
        assert_eq!(swap.then(&swap).unwrap(), FinMap::identity(&x));
        let collapse = FinMap::new(x.clone(), x.clone(), vec![0, 0, 2]).unwrap();
        assert!(!collapse.is_bijective());
        assert!(FinMap::new(x.clone(), x, vec![0, 5, 0]).is_err());
    }
}
