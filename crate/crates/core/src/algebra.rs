//! Finite MV-algebras with product, stored as operation tables over the
//! carrier `{0, .., n-1}` with `0` the MV-zero.

use std::fmt;

use crate::error::{Error, Result};

/// An element index into the carrier of a [`FiniteAlgebra`].
pub type Elem = usize;

/// Carrier `{0..n-1}` with tables for `¬`, `⊕` and the product `·`.
///
/// Construction only validates table shape and ranges; whether the tables
/// form an MV-algebra (or something stronger) is decided by the checkers in
/// [`crate::axioms`]. The top `u = ¬0` is always computed, never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    size: usize,
    neg: Vec<Elem>,
    oplus: Vec<Elem>,
    mul: Vec<Elem>,
}

impl FiniteAlgebra {
    pub fn new(neg: Vec<Elem>, oplus: Vec<Elem>, mul: Vec<Elem>) -> Result<Self> {
        let size = neg.len();
        if size == 0 {
            return Err(Error::InvalidTable("carrier must be non-empty".into()));
        }
        if oplus.len() != size * size {
            return Err(Error::InvalidTable(format!(
                "oplus table has {} entries, expected {}",
                oplus.len(),
                size * size
            )));
        }
        if mul.len() != size * size {
            return Err(Error::InvalidTable(format!(
                "prod table has {} entries, expected {}",
                mul.len(),
                size * size
            )));
        }
        for (name, table) in [("neg", &neg), ("oplus", &oplus), ("prod", &mul)] {
            if let Some(bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::InvalidTable(format!(
                    "{name} entry {bad} is outside the carrier 0..{size}"
                )));
            }
        }
        Ok(Self {
            size,
            neg,
            oplus,
            mul,
        })
    }

    /// Builds the tables by evaluating closures on every (pair of) element(s).
    pub fn from_fns(
        size: usize,
        neg: impl Fn(Elem) -> Elem,
        oplus: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let neg_t = (0..size).map(&neg).collect();
        let mut oplus_t = Vec::with_capacity(size * size);
        let mut mul_t = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                oplus_t.push(oplus(x, y));
                mul_t.push(mul(x, y));
            }
        }
        Self::new(neg_t, oplus_t, mul_t)
    }

    /// The one-element algebra.
    pub fn trivial() -> Self {
        Self {
            size: 1,
            neg: vec![0],
            oplus: vec![0],
            mul: vec![0],
        }
    }

    /// Same MV-reduct, product replaced by the given closure.
    pub fn with_mul(&self, mul: impl Fn(&Self, Elem, Elem) -> Elem) -> Result<Self> {
        let mut table = Vec::with_capacity(self.size * self.size);
        for x in self.elements() {
            for y in self.elements() {
                table.push(mul(self, x, y));
            }
        }
        Self::new(self.neg.clone(), self.oplus.clone(), table)
    }

    /// The MV-reduct with the zero product `ab = 0`.
    pub fn mv_reduct(&self) -> Self {
        Self {
            size: self.size,
            neg: self.neg.clone(),
            oplus: self.oplus.clone(),
            mul: vec![0; self.size * self.size],
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.neg[0]
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x]
    }

    #[inline]
    pub fn oplus(&self, x: Elem, y: Elem) -> Elem {
        self.oplus[x * self.size + y]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.size + y]
    }

    /// `x ⊖ y = ¬(¬x ⊕ y)`.
    #[inline]
    pub fn ominus(&self, x: Elem, y: Elem) -> Elem {
        self.neg(self.oplus(self.neg(x), y))
    }

    /// `x ⊙ y = ¬(¬x ⊕ ¬y)`.
    #[inline]
    pub fn odot(&self, x: Elem, y: Elem) -> Elem {
        self.neg(self.oplus(self.neg(x), self.neg(y)))
    }

    /// `x ≤ y` iff `x ⊖ y = 0`.
    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.ominus(x, y) == 0
    }

    /// `x ∨ y = (x ⊖ y) ⊕ y`; the lattice join whenever the MV axioms hold.
    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.oplus(self.ominus(x, y), y)
    }

    /// `x ∧ y = ¬(¬x ∨ ¬y)`.
    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.neg(self.join(self.neg(x), self.neg(y)))
    }

    pub fn neg_table(&self) -> &[Elem] {
        &self.neg
    }

    pub fn oplus_table(&self) -> &[Elem] {
        &self.oplus
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    /// First incomparable pair, if any.
    pub fn incomparable_pair(&self) -> Option<(Elem, Elem)> {
        for x in self.elements() {
            for y in x + 1..self.size {
                if !self.leq(x, y) && !self.leq(y, x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_chain(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    /// Derived operation tables, with `∧`/`∨` taken from the order itself.
    pub fn derived_ops(&self) -> Result<DerivedOps> {
        let n = self.size;
        let mut ominus = Vec::with_capacity(n * n);
        let mut odot = Vec::with_capacity(n * n);
        let mut leq = Vec::with_capacity(n * n);
        for x in self.elements() {
            for y in self.elements() {
                ominus.push(self.ominus(x, y));
                odot.push(self.odot(x, y));
                leq.push(self.leq(x, y));
            }
        }
        let le = |x: Elem, y: Elem| leq[x * n + y];
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for x in self.elements() {
            for y in self.elements() {
                let lower: Vec<Elem> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
                let glb: Vec<Elem> = lower
                    .iter()
                    .copied()
                    .filter(|&z| lower.iter().all(|&w| le(w, z)))
                    .collect();
                if glb.len() != 1 {
                    return Err(Error::NotLattice {
                        x,
                        y,
                        bound: "infimum",
                    });
                }
                let upper: Vec<Elem> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
                let lub: Vec<Elem> = upper
                    .iter()
                    .copied()
                    .filter(|&z| upper.iter().all(|&w| le(z, w)))
                    .collect();
                if lub.len() != 1 {
                    return Err(Error::NotLattice {
                        x,
                        y,
                        bound: "supremum",
                    });
                }
                meet.push(glb[0]);
                join.push(lub[0]);
            }
        }
        Ok(DerivedOps {
            size: n,
            ominus,
            odot,
            meet,
            join,
            leq,
        })
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAlgebra(n={})", self.size)
    }
}

/// Tables for `⊖`, `⊙`, `∧`, `∨` and `≤`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedOps {
    size: usize,
    ominus: Vec<Elem>,
    odot: Vec<Elem>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    leq: Vec<bool>,
}

impl DerivedOps {
    pub fn ominus(&self, x: Elem, y: Elem) -> Elem {
        self.ominus[x * self.size + y]
    }
    pub fn odot(&self, x: Elem, y: Elem) -> Elem {
        self.odot[x * self.size + y]
    }
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.size + y]
    }
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.size + y]
    }
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.size + y]
    }
}

/// Componentwise product; the pair `(a, b)` has index `a * |B| + b`.
pub fn product_algebra(a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
    let nb = b.size();
    let split = |x: Elem| (x / nb, x % nb);
    FiniteAlgebra::from_fns(
        a.size() * nb,
        |x| {
            let (p, q) = split(x);
            a.neg(p) * nb + b.neg(q)
        },
        |x, y| {
            let ((p, q), (r, s)) = (split(x), split(y));
            a.oplus(p, r) * nb + b.oplus(q, s)
        },
        |x, y| {
            let ((p, q), (r, s)) = (split(x), split(y));
            a.mul(p, r) * nb + b.mul(q, s)
        },
    )
    .expect("componentwise tables stay in range")
}

/// Index of the pair `(x, y)` in [`product_algebra`]`(a, b)`.
pub fn pair_index(b: &FiniteAlgebra, x: Elem, y: Elem) -> Elem {
    x * b.size() + y
}

/// The two projections out of [`product_algebra`]`(a, b)`.
pub fn projections(a: &FiniteAlgebra, b: &FiniteAlgebra) -> (Vec<Elem>, Vec<Elem>) {
    let nb = b.size();
    let n = a.size() * nb;
    ((0..n).map(|x| x / nb).collect(), (0..n).map(|x| x % nb).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomLaw {
    Zero,
    Oplus,
    Neg,
    Mul,
}

/// A failed homomorphism law together with its arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomViolation {
    pub law: HomLaw,
    pub args: Vec<Elem>,
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.law, self.args.as_slice()) {
            (HomLaw::Zero, _) => write!(f, "f(0) != 0"),
            (HomLaw::Neg, [x]) => write!(f, "f(¬{x}) != ¬f({x})"),
            (HomLaw::Oplus, [x, y]) => write!(f, "f({x}⊕{y}) != f({x})⊕f({y})"),
            (HomLaw::Mul, [x, y]) => write!(f, "f({x}·{y}) != f({x})·f({y})"),
            (law, args) => write!(f, "{law:?} {args:?}"),
        }
    }
}

/// First violated homomorphism law of `map: a -> b`, or `None` if `map`
/// preserves `0`, `⊕`, `¬` and `·`.
pub fn hom_violation(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[Elem]) -> Option<HomViolation> {
    assert_eq!(map.len(), a.size(), "map must be total on the source carrier");
    assert!(map.iter().all(|&v| v < b.size()), "map leaves the target carrier");
    if map[a.zero()] != b.zero() {
        return Some(HomViolation {
            law: HomLaw::Zero,
            args: vec![],
        });
    }
    for x in a.elements() {
        if map[a.neg(x)] != b.neg(map[x]) {
            return Some(HomViolation {
                law: HomLaw::Neg,
                args: vec![x],
            });
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if map[a.oplus(x, y)] != b.oplus(map[x], map[y]) {
                return Some(HomViolation {
                    law: HomLaw::Oplus,
                    args: vec![x, y],
                });
            }
            if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                return Some(HomViolation {
                    law: HomLaw::Mul,
                    args: vec![x, y],
                });
            }
        }
    }
    None
}

pub fn is_hom(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[Elem]) -> bool {
    hom_violation(a, b, map).is_none()
}

/// True when `map` is a bijective homomorphism.
pub fn is_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[Elem]) -> bool {
    if a.size() != b.size() || !is_hom(a, b, map) {
        return false;
    }
    let mut seen = vec![false; b.size()];
    map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn z10_minus_matches_worked_arithmetic() {
        let z = catalog::z_rig(10);
        // ¬7 = 3, 3 ⊕ 6 = 9, ¬9 = 1
        assert_eq!(z.neg(7), 3);
        assert_eq!(z.oplus(3, 6), 9);
        assert_eq!(z.ominus(7, 6), 1);
    }

    #[test]
    fn self_difference_is_zero() {
        for alg in [catalog::z_rig(10), catalog::luk(5), catalog::boolean(3, catalog::ProductKind::Inf)] {
            for x in alg.elements() {
                assert_eq!(alg.ominus(x, x), 0);
            }
        }
    }

    #[test]
    fn luk4_third_odot_third_is_zero() {
        let l4 = catalog::luk(4);
        assert_eq!(l4.odot(1, 1), 0);
        assert_eq!(l4.odot(2, 2), 1);
    }

    #[test]
    fn formula_lattice_ops_match_order_lattice() {
        for alg in [
            catalog::z_rig(10),
            catalog::boolean(3, catalog::ProductKind::Inf),
            product_algebra(&catalog::luk(3), &catalog::luk(4)),
        ] {
            let d = alg.derived_ops().unwrap();
            for x in alg.elements() {
                for y in alg.elements() {
                    assert_eq!(d.meet(x, y), alg.meet(x, y));
                    assert_eq!(d.join(x, y), alg.join(x, y));
                    assert_eq!(d.ominus(x, y), alg.ominus(x, y));
                }
            }
        }
    }

    #[test]
    fn non_lattice_order_is_reported() {
        // ¬ is the identity, so x ⊖ y = x ⊕ y; the table makes 0 the bottom and
        // leaves 1, 2 incomparable with no upper bound.
        let alg = FiniteAlgebra::from_fns(
            3,
            |x| x,
            |x, y| if x == 0 || x == y { 0 } else { x },
            |_, _| 0,
        )
        .unwrap();
        assert!(alg.leq(0, 1) && alg.leq(0, 2));
        assert_eq!(alg.incomparable_pair(), Some((1, 2)));
        assert_eq!(
            alg.derived_ops(),
            Err(Error::NotLattice {
                x: 1,
                y: 2,
                bound: "supremum"
            })
        );
    }

    #[test]
    fn table_validation() {
        assert!(FiniteAlgebra::new(vec![], vec![], vec![]).is_err());
        assert!(FiniteAlgebra::new(vec![1, 0], vec![0, 1, 1, 1], vec![0, 0, 0]).is_err());
        assert!(FiniteAlgebra::new(vec![1, 2], vec![0, 1, 1, 1], vec![0, 0, 0, 0]).is_err());
    }

    #[test]
    fn product_and_projections() {
        let two = catalog::boolean(1, catalog::ProductKind::Inf);
        let four = product_algebra(&two, &two);
        let b2 = catalog::boolean(2, catalog::ProductKind::Inf);
        assert_eq!(four, b2);
        let (p1, p2) = projections(&two, &two);
        assert!(is_hom(&four, &two, &p1));
        assert!(is_hom(&four, &two, &p2));
        let one = FiniteAlgebra::trivial();
        let l3 = catalog::luk(3);
        assert_eq!(product_algebra(&l3, &one), l3);
    }

    #[test]
    fn hom_check_examples() {
        let z = catalog::z_rig(10);
        let id: Vec<Elem> = z.elements().collect();
        assert!(is_hom(&z, &z, &id));
        // Ł3 → 2 sending 1/2 ↦ 1 breaks negation: f(¬½) = f(½) = 1 but ¬f(½) = 0
        let l3 = catalog::luk(3);
        let two = catalog::luk(2);
        let v = hom_violation(&l3, &two, &[0, 1, 1]).unwrap();
        assert_eq!(v.law, HomLaw::Neg);
        assert_eq!(v.args, vec![1]);
    }
}
