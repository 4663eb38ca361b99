use std::fmt;

use super::elem::{Elem, FinSet};
use crate::error::{Error, Result};

/// A finite commutative monoid, used as the value of a constant functor.
///
/// The operation table is validated exhaustively on construction, so every
/// `ConstMonoid` in circulation is associative, commutative and unital.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConstMonoid {
    name: String,
    carrier: FinSet,
    unit: usize,
    table: Vec<usize>,
}

impl ConstMonoid {
    /// `op` receives and returns carrier positions.
    pub fn new(
        name: impl Into<String>,
        carrier: FinSet,
        unit: &Elem,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let name = name.into();
        let n = carrier.len();
        let unit = carrier
            .position(unit)
            .ok_or_else(|| Error::Invalid(format!("monoid {name}: unit {unit} not in carrier")))?;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = op(a, b);
                if c >= n {
                    return Err(Error::Invalid(format!("monoid {name}: operation leaves the carrier")));
                }
                table.push(c);
            }
        }
        let m = ConstMonoid {
            name,
            carrier,
            unit,
            table,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let n = self.carrier.len();
        let el = |i: usize| self.carrier.get(i);
        for a in 0..n {
            if self.op(self.unit, a) != a || self.op(a, self.unit) != a {
                return Err(Error::Invalid(format!(
                    "monoid {}: {} is not a unit for {}",
                    self.name,
                    el(self.unit),
                    el(a)
                )));
            }
            for b in 0..n {
                if self.op(a, b) != self.op(b, a) {
                    return Err(Error::Invalid(format!(
                        "monoid {}: not commutative at ({}, {})",
                        self.name,
                        el(a),
                        el(b)
                    )));
                }
                for c in 0..n {
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                        return Err(Error::Invalid(format!(
                            "monoid {}: not associative at ({}, {}, {})",
                            self.name,
                            el(a),
                            el(b),
                            el(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-element monoid; `X + unit` is the successor functor.
    pub fn unit() -> Self {
        ConstMonoid {
            name: "unit".into(),
            carrier: FinSet::singleton(),
            unit: 0,
            table: vec![0],
        }
    }

    fn boolean(name: &str, unit: usize, op: fn(bool, bool) -> bool) -> Self {
        let carrier = FinSet::numbered(2);
        let unit_elem = carrier.get(unit).clone();
        ConstMonoid::new(name, carrier, &unit_elem, |a, b| op(a == 1, b == 1) as usize)
            .expect("boolean monoids are valid")
    }

    pub fn bool_and() -> Self {
        Self::boolean("bool and", 1, |a, b| a && b)
    }

    pub fn bool_or() -> Self {
        Self::boolean("bool or", 0, |a, b| a || b)
    }

    pub fn bool_xor() -> Self {
        Self::boolean("bool xor", 0, |a, b| a ^ b)
    }

    pub fn zmod_add(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("z0 is not finite".into()));
        }
        ConstMonoid::new(
            format!("z{n} add"),
            FinSet::numbered(n),
            &Elem::atom("0"),
            move |a, b| (a + b) % n,
        )
    }

    pub fn zmod_mul(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("zmod multiplication needs n >= 2".into()));
        }
        ConstMonoid::new(
            format!("z{n} mul"),
            FinSet::numbered(n),
            &Elem::atom("1"),
            move |a, b| (a * b) % n,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn unit_elem(&self) -> &Elem {
        self.carrier.get(self.unit)
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.carrier.len() + b]
    }

    pub(crate) fn op_elem(&self, a: &Elem, b: &Elem, corrupt: bool) -> Elem {
        let i = self.carrier.position(a).expect("monoid element");
        let j = self.carrier.position(b).expect("monoid element");
        let mut k = self.op(i, j);
        if corrupt && self.carrier.len() >= 2 && k < 2 {
            // swap the first two elements of the result
            k = 1 - k;
        }
        self.carrier.get(k).clone()
    }
}

impl fmt::Display for ConstMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_monoids_validate() {
        for m in [
            ConstMonoid::unit(),
            ConstMonoid::bool_and(),
            ConstMonoid::bool_or(),
            ConstMonoid::bool_xor(),
            ConstMonoid::zmod_add(3).unwrap(),
            ConstMonoid::zmod_mul(4).unwrap(),
        ] {
            m.validate().unwrap();
        }
        assert_eq!(ConstMonoid::bool_and().unit_elem(), &Elem::atom("1"));
    }

    #[test]
    fn non_associative_operation_is_rejected() {
        // NAND is commutative but neither associative nor unital.
        let r = ConstMonoid::new("nand", FinSet::numbered(2), &Elem::atom("1"), |a, b| {
            !(a == 1 && b == 1) as usize
        });
        assert!(matches!(r, Err(Error::Invalid(_))));

        // Truncated subtraction has a unit on one side only.
        let r = ConstMonoid::new("monus", FinSet::numbered(3), &Elem::atom("0"), |a, b| {
            a.saturating_sub(b)
        });
        assert!(r.is_err());
    }

    #[test]
    fn non_commutative_operation_is_rejected() {
        // Left projection is associative but neither commutative nor unital.
        let r = ConstMonoid::new("left", FinSet::numbered(2), &Elem::atom("0"), |a, _| a);
        assert!(r.is_err());
    }
}
