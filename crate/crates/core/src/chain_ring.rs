//! The ring `A♯ = ℤ × A` over a finite MV-chain with product.
//!
//! Elements are pairs `(m, a)` kept in canonical form `a ≠ u`, so `(m, u)`
//! is stored as `(m + 1, 0)`. Addition carries through `⊕`/`⊙`; the product is
//! `(m,a)(n,b) = mn(0,u²) + m(0,bu) + n(0,au) + (0,ab)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Elem, FiniteAlgebra};
use crate::classify::{self, VarietyLabel};
use crate::report::Report;
use crate::{Error, Result};

/// Canonical pair `(m, a)` with `a ≠ u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainRingElem {
    pub m: BigInt,
    pub a: Elem,
}

impl ChainRingElem {
    pub fn new(m: impl Into<BigInt>, a: Elem) -> Self {
        Self { m: m.into(), a }
    }
}

impl fmt::Display for ChainRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.a)
    }
}

/// Chang's ring over a non-trivial finite MV-chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRing {
    chain: FiniteAlgebra,
    top: Elem,
    rank: Vec<usize>,
}

impl ChainRing {
    /// The chain must satisfy the MV axioms; its product is used as given.
    pub fn new(chain: FiniteAlgebra) -> Result<Self> {
        if chain.is_trivial() {
            return Err(Error::TrivialAlgebra);
        }
        if !crate::axioms::check_mv(&chain).passed() {
            return Err(Error::Precondition {
                required: VarietyLabel::Mv,
                actual: VarietyLabel::NotMv,
            });
        }
        if let Some((x, y)) = chain.incomparable_pair() {
            return Err(Error::NotChain { x, y });
        }
        let rank = chain
            .elements()
            .map(|x| chain.elements().filter(|&y| y != x && chain.leq(y, x)).count())
            .collect();
        let top = chain.top();
        Ok(Self { chain, top, rank })
    }

    pub fn chain(&self) -> &FiniteAlgebra {
        &self.chain
    }

    /// Position of `a` in the chain order, `0` for the bottom.
    pub fn rank(&self, a: Elem) -> usize {
        self.rank[a]
    }

    pub fn canon(&self, m: BigInt, a: Elem) -> ChainRingElem {
        if a == self.top {
            ChainRingElem { m: m + 1, a: 0 }
        } else {
            ChainRingElem { m, a }
        }
    }

    pub fn is_canonical(&self, x: &ChainRingElem) -> bool {
        x.a != self.top && x.a < self.chain.size()
    }

    pub fn elem(&self, m: i64, a: Elem) -> ChainRingElem {
        self.canon(BigInt::from(m), a)
    }

    pub fn zero(&self) -> ChainRingElem {
        ChainRingElem { m: BigInt::zero(), a: 0 }
    }

    /// `𝐮 = (1,0) = (0,u)`
    pub fn unit(&self) -> ChainRingElem {
        ChainRingElem { m: BigInt::one(), a: 0 }
    }

    /// `(0, a)`
    pub fn segment(&self, a: Elem) -> ChainRingElem {
        self.canon(BigInt::zero(), a)
    }

    pub fn add(&self, x: &ChainRingElem, y: &ChainRingElem) -> ChainRingElem {
        let s = self.chain.oplus(x.a, y.a);
        if s != self.top {
            self.canon(&x.m + &y.m, s)
        } else {
            self.canon(&x.m + &y.m + 1, self.chain.odot(x.a, y.a))
        }
    }

    /// `-(m,a) = (-m-1, ¬a)`
    pub fn neg(&self, x: &ChainRingElem) -> ChainRingElem {
        self.canon(-&x.m - 1, self.chain.neg(x.a))
    }

    pub fn sub(&self, x: &ChainRingElem, y: &ChainRingElem) -> ChainRingElem {
        self.add(x, &self.neg(y))
    }

    /// `k·x` by repeated doubling.
    pub fn scalar(&self, k: &BigInt, x: &ChainRingElem) -> ChainRingElem {
        if k.is_zero() || (x.m.is_zero() && x.a == 0) {
            return self.zero();
        }
        if k.is_negative() {
            return self.scalar(&-k, &self.neg(x));
        }
        let mut acc = self.zero();
        let mut base = x.clone();
        let bits = k.bits();
        for i in 0..bits {
            if k.bit(i) {
                acc = self.add(&acc, &base);
            }
            if i + 1 < bits {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// The product formula on raw, possibly non-canonical pairs.
    pub fn mul_pairs(&self, m: &BigInt, a: Elem, n: &BigInt, b: Elem) -> ChainRingElem {
        let c = &self.chain;
        let u = self.top;
        let t1 = self.scalar(&(m * n), &self.segment(c.mul(u, u)));
        let t2 = self.scalar(m, &self.segment(c.mul(b, u)));
        let t3 = self.scalar(n, &self.segment(c.mul(a, u)));
        let t4 = self.segment(c.mul(a, b));
        self.add(&self.add(&t1, &t2), &self.add(&t3, &t4))
    }

    pub fn mul(&self, x: &ChainRingElem, y: &ChainRingElem) -> ChainRingElem {
        self.mul_pairs(&x.m, x.a, &y.m, y.a)
    }

    pub fn leq(&self, x: &ChainRingElem, y: &ChainRingElem) -> bool {
        x.m < y.m || (x.m == y.m && self.rank[x.a] <= self.rank[y.a])
    }

    pub fn meet(&self, x: &ChainRingElem, y: &ChainRingElem) -> ChainRingElem {
        if self.leq(x, y) { x.clone() } else { y.clone() }
    }

    pub fn join(&self, x: &ChainRingElem, y: &ChainRingElem) -> ChainRingElem {
        if self.leq(x, y) { y.clone() } else { x.clone() }
    }

    pub fn abs(&self, x: &ChainRingElem) -> ChainRingElem {
        self.join(x, &self.neg(x))
    }

    /// All canonical `(m, a)` with `|m| ≤ bound`.
    pub fn coordinate_window(&self, bound: i64) -> Vec<ChainRingElem> {
        let mut out = Vec::new();
        for m in -bound..=bound {
            for a in self.chain.elements().filter(|&a| a != self.top) {
                out.push(ChainRingElem::new(m, a));
            }
        }
        out
    }

    /// `[0, 𝐮]` listed as `(0, a)` for every `a`.
    pub fn unit_segment(&self) -> Vec<ChainRingElem> {
        self.chain.elements().map(|a| self.segment(a)).collect()
    }
}

fn first<T>(it: impl IntoIterator<Item = T>, mut bad: impl FnMut(&T) -> Option<String>) -> Option<String> {
    it.into_iter().find_map(|t| bad(&t))
}

fn pairs<T: Clone>(xs: &[T]) -> impl Iterator<Item = (T, T)> + '_ {
    xs.iter().flat_map(move |x| xs.iter().map(move |y| (x.clone(), y.clone())))
}

fn triples<T: Clone>(xs: &[T]) -> impl Iterator<Item = (T, T, T)> + '_ {
    xs.iter()
        .flat_map(move |x| xs.iter().flat_map(move |y| xs.iter().map(move |z| (x.clone(), y.clone(), z.clone()))))
}

/// Ring, order and semi-low laws over every canonical `(m, a)` with `|m| ≤ bound`.
///
/// Expected to pass on PMV_f chains; other chains may fail with a witness.
pub fn verify_ring_axioms(ring: &ChainRing, bound: i64) -> Report {
    let w = ring.coordinate_window(bound);
    let win = format!("window |m|<={bound}");
    let mut r = Report::new();
    let mut put = |id: &str, witness: Option<String>| match witness {
        None => r.push(id, true, win.clone()),
        Some(wit) => r.push(id, false, format!("{win}: {wit}")),
    };
    let zero = ring.zero();
    let u = ring.unit();
    let c = ring.chain();

    put(
        "canonical",
        first(pairs(&w), |(x, y)| {
            let outs = [ring.add(x, y), ring.neg(x), ring.mul(x, y)];
            outs.iter().find(|o| !ring.is_canonical(o)).map(|o| format!("{x},{y} produced {o}"))
        }),
    );
    put(
        "add-associative",
        first(triples(&w), |(x, y, z)| {
            let l = ring.add(&ring.add(x, y), z);
            let rr = ring.add(x, &ring.add(y, z));
            (l != rr).then(|| format!("({x}+{y})+{z}={l} != {rr}"))
        }),
    );
    put(
        "add-commutative",
        first(pairs(&w), |(x, y)| {
            (ring.add(x, y) != ring.add(y, x)).then(|| format!("{x}+{y}"))
        }),
    );
    put(
        "add-identity-inverse",
        first(w.iter(), |x| {
            if ring.add(x, &zero) != **x {
                Some(format!("{x}+0"))
            } else if ring.add(x, &ring.neg(x)) != zero {
                Some(format!("{x}+(-{x})={}", ring.add(x, &ring.neg(x))))
            } else {
                None
            }
        }),
    );
    put(
        "order-compatible",
        first(triples(&w), |(x, y, z)| {
            (ring.leq(x, y) && !ring.leq(&ring.add(x, z), &ring.add(y, z)))
                .then(|| format!("{x}<={y} but {x}+{z} > {y}+{z}"))
        }),
    );
    put(
        "strong-unit",
        first(w.iter(), |x| {
            let n = x.m.abs() + 1;
            let bound = ring.scalar(&n, &u);
            (!ring.leq(&ring.abs(x), &bound)).then(|| format!("|{x}| > {n}u"))
        }),
    );
    put(
        "mul-commutative",
        first(pairs(&w), |(x, y)| {
            let (l, rr) = (ring.mul(x, y), ring.mul(y, x));
            (l != rr).then(|| format!("{x}{y}={l} != {y}{x}={rr}"))
        }),
    );
    put(
        "distributive",
        first(triples(&w), |(x, y, z)| {
            let l = ring.mul(x, &ring.add(y, z));
            let rr = ring.add(&ring.mul(x, y), &ring.mul(x, z));
            (l != rr).then(|| format!("{x}[{y}+{z}]={l} != {x}{y}+{x}{z}={rr}"))
        }),
    );
    put(
        "mul-associative",
        first(triples(&w), |(x, y, z)| {
            let l = ring.mul(&ring.mul(x, y), z);
            let rr = ring.mul(x, &ring.mul(y, z));
            (l != rr).then(|| format!("({x}{y}){z}={l} != {x}({y}{z})={rr}"))
        }),
    );
    put(
        "positive-product",
        first(pairs(&w), |(x, y)| {
            let p = ring.mul(x, y);
            (ring.leq(&zero, x) && ring.leq(&zero, y) && !ring.leq(&zero, &p))
                .then(|| format!("{x}{y}={p} < 0"))
        }),
    );
    put(
        "carry-product-identity",
        first(triples(&c.elements().collect::<Vec<_>>()), |&(x, y, z)| {
            if c.oplus(y, z) != c.top() {
                return None;
            }
            let l = ring.mul(&ring.segment(x), &ring.segment(c.odot(y, z)));
            let rr = ring.sub(
                &ring.add(&ring.segment(c.mul(x, y)), &ring.segment(c.mul(x, z))),
                &ring.segment(c.mul(x, c.top())),
            );
            (l != rr).then(|| format!("x={x} y={y} z={z}: (0,x)(0,y⊙z)={l} != {rr}"))
        }),
    );
    let seg = ring.unit_segment();
    put(
        "semi-low",
        first(pairs(&seg), |(x, y)| {
            let p = ring.mul(x, y);
            let m = ring.meet(x, y);
            (!ring.leq(&p, &m)).then(|| format!("{x}{y}={p} not below {m}"))
        }),
    );
    put(
        "well-defined",
        first(pairs(&w), |(x, y)| {
            let raw = ring.mul_pairs(&x.m, c.top(), &y.m, y.a);
            let canon = ring.mul(&ring.canon(x.m.clone(), c.top()), y);
            (raw != canon).then(|| format!("({},u)·{y}={raw} != {canon}", x.m))
        }),
    );
    r
}

/// `(0,x)(0,y⊙z) = (0,xy)+(0,xz)-(0,xu)` over all triples, with no side condition.
pub fn carry_identity_unconditional(ring: &ChainRing) -> Option<(Elem, Elem, Elem)> {
    let c = ring.chain();
    for x in c.elements() {
        for y in c.elements() {
            for z in c.elements() {
                let l = ring.mul(&ring.segment(x), &ring.segment(c.odot(y, z)));
                let r = ring.sub(
                    &ring.add(&ring.segment(c.mul(x, y)), &ring.segment(c.mul(x, z))),
                    &ring.segment(c.mul(x, c.top())),
                );
                if l != r {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Three readings of `(Σ(0,xᵢ))(Σ(0,yᵢ))` against sums of segment products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumProduct {
    pub left: ChainRingElem,
    /// `Σᵢ (0, xᵢyᵢ)`
    pub diagonal: ChainRingElem,
    /// `Σᵢⱼ (0, xᵢyⱼ)`
    pub bilinear: ChainRingElem,
    /// `(0, (⊕xᵢ)(⊕yᵢ))` when both sums stay below `𝐮`.
    pub collapsed: Option<ChainRingElem>,
}

impl SumProduct {
    pub fn diagonal_holds(&self) -> bool {
        self.left == self.diagonal
    }

    pub fn bilinear_holds(&self) -> bool {
        self.left == self.bilinear
    }

    /// Vacuously true when a sum leaves the unit segment.
    pub fn collapsed_holds(&self) -> bool {
        self.collapsed.as_ref().is_none_or(|c| *c == self.left)
    }
}

pub fn sum_product_identity(ring: &ChainRing, xs: &[Elem], ys: &[Elem]) -> Result<SumProduct> {
    classify::require(ring.chain(), VarietyLabel::Pmvf)?;
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument("vectors must have equal length".into()));
    }
    let c = ring.chain();
    if let Some(&bad) = xs.iter().chain(ys).find(|&&v| v >= c.size()) {
        return Err(Error::InvalidArgument(format!("element {bad} is outside the carrier")));
    }
    let sum = |v: &[Elem]| v.iter().fold(ring.zero(), |acc, &a| ring.add(&acc, &ring.segment(a)));
    let (sx, sy) = (sum(xs), sum(ys));
    let left = ring.mul(&sx, &sy);
    let diagonal = xs
        .iter()
        .zip(ys)
        .fold(ring.zero(), |acc, (&x, &y)| ring.add(&acc, &ring.segment(c.mul(x, y))));
    let mut bilinear = ring.zero();
    for &x in xs {
        for &y in ys {
            bilinear = ring.add(&bilinear, &ring.segment(c.mul(x, y)));
        }
    }
    let u = ring.unit();
    let collapsed = (ring.leq(&sx, &u) && ring.leq(&sy, &u)).then(|| {
        let fx = xs.iter().fold(0, |acc, &a| c.oplus(acc, a));
        let fy = ys.iter().fold(0, |acc, &a| c.oplus(acc, a));
        ring.segment(c.mul(fx, fy))
    });
    Ok(SumProduct {
        left,
        diagonal,
        bilinear,
        collapsed,
    })
}

/// `a ↦ (0,a)` is an isomorphism onto the unit segment with `x⊕y = (x+y)∧𝐮`,
/// `¬x = 𝐮-x` and the inherited product.
pub fn gamma_chain_roundtrip(chain: &FiniteAlgebra) -> Result<Report> {
    classify::require(chain, VarietyLabel::Pmvf)?;
    let ring = ChainRing::new(chain.clone())?;
    let u = ring.unit();
    let mut r = Report::new();
    let image: Vec<ChainRingElem> = chain.elements().map(|a| ring.segment(a)).collect();
    // the segment, enumerated from the ring side: m = 0 with any a, plus 𝐮
    let mut segment: Vec<ChainRingElem> = ring
        .coordinate_window(1)
        .into_iter()
        .filter(|x| ring.leq(&ring.zero(), x) && ring.leq(x, &u))
        .collect();
    segment.sort();
    let mut sorted_image = image.clone();
    sorted_image.sort();
    sorted_image.dedup();
    r.push(
        "bijective-onto-segment",
        sorted_image == segment && sorted_image.len() == chain.size(),
        format!("|A|={} |segment|={}", chain.size(), segment.len()),
    );
    let mut oplus = None;
    let mut mul = None;
    for a in chain.elements() {
        for b in chain.elements() {
            let trunc = ring.meet(&ring.add(&image[a], &image[b]), &u);
            if oplus.is_none() && image[chain.oplus(a, b)] != trunc {
                oplus = Some(format!("a={a} b={b}: i(a⊕b)={} != {trunc}", image[chain.oplus(a, b)]));
            }
            let p = ring.mul(&image[a], &image[b]);
            if mul.is_none() && image[chain.mul(a, b)] != p {
                mul = Some(format!("a={a} b={b}: i(ab)={} != {p}", image[chain.mul(a, b)]));
            }
        }
    }
    r.record("preserves-oplus", oplus);
    r.record(
        "preserves-neg",
        chain.elements().find_map(|a| {
            let rhs = ring.sub(&u, &image[a]);
            (image[chain.neg(a)] != rhs).then(|| format!("a={a}: i(¬a)={} != {rhs}", image[chain.neg(a)]))
        }),
    );
    r.record("preserves-product", mul);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, ProductKind};

    fn z10() -> ChainRing {
        ChainRing::new(catalog::z_rig(10)).unwrap()
    }

    #[test]
    fn addition_examples() {
        let l3 = ChainRing::new(catalog::luk(3)).unwrap();
        assert_eq!(l3.add(&l3.elem(0, 1), &l3.elem(0, 1)), l3.elem(1, 0));
        let z = z10();
        assert_eq!(z.add(&z.elem(0, 7), &z.elem(0, 6)), z.elem(1, 3));
        for x in z.coordinate_window(3) {
            assert_eq!(z.add(&x, &z.neg(&x)), z.zero());
        }
        assert_eq!(z.elem(4, 10), z.elem(5, 0));
    }

    #[test]
    fn product_examples() {
        let b = ChainRing::new(catalog::boolean(1, ProductKind::Inf)).unwrap();
        assert_eq!(b.mul(&b.elem(2, 0), &b.elem(3, 0)), b.elem(6, 0));
        let l3 = ChainRing::new(catalog::luk(3)).unwrap();
        assert_eq!(l3.mul(&l3.elem(1, 0), &l3.elem(1, 0)), l3.zero());
        let z = z10();
        assert_eq!(z.mul(&z.elem(0, 2), &z.elem(0, 7)), z.elem(1, 0));
    }

    #[test]
    fn scalar_matches_repeated_addition() {
        let z = z10();
        let x = z.elem(-2, 7);
        let mut acc = z.zero();
        for k in 0..40 {
            assert_eq!(z.scalar(&BigInt::from(k), &x), acc);
            assert_eq!(z.scalar(&BigInt::from(-k), &x), z.neg(&acc));
            acc = z.add(&acc, &x);
        }
    }

    #[test]
    fn huge_scalars_do_not_overflow() {
        let b = ChainRing::new(catalog::boolean(1, ProductKind::Inf)).unwrap();
        let big: BigInt = BigInt::from(i64::MAX) * 4u32;
        let x = b.elem(0, 1);
        let y = ChainRingElem { m: big.clone(), a: 0 };
        assert_eq!(b.mul(&y, &y).m, &big * &big);
        assert_eq!(b.scalar(&big, &x).m, big);
    }

    #[test]
    fn pmvf_chains_satisfy_ring_laws() {
        for alg in [catalog::boolean(1, ProductKind::Inf), catalog::luk(4)] {
            let r = verify_ring_axioms(&ChainRing::new(alg).unwrap(), 4);
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn z10_distributivity_fails_with_known_witness() {
        let z = z10();
        let x = z.elem(0, 2);
        let l = z.mul(&x, &z.add(&z.elem(0, 7), &z.elem(0, 6)));
        let r = z.add(&z.mul(&x, &z.elem(0, 7)), &z.mul(&x, &z.elem(0, 6)));
        assert_eq!(l, z.elem(1, 6));
        assert_eq!(r, z.elem(2, 0));
        assert!(!verify_ring_axioms(&z, 2).passed("distributive"));
    }

    #[test]
    fn carry_identity_needs_its_side_condition() {
        let b = ChainRing::new(catalog::boolean(1, ProductKind::Inf)).unwrap();
        assert_eq!(carry_identity_unconditional(&b), Some((1, 0, 0)));
        assert!(verify_ring_axioms(&b, 1).passed("carry-product-identity"));
    }

    #[test]
    fn sum_product_readings() {
        let b = ChainRing::new(catalog::boolean(1, ProductKind::Inf)).unwrap();
        let s = sum_product_identity(&b, &[1, 1], &[1, 1]).unwrap();
        assert_eq!(s.left, b.elem(4, 0));
        assert_eq!(s.diagonal, b.elem(2, 0));
        assert!(!s.diagonal_holds() && s.bilinear_holds() && s.collapsed.is_none());
        let s = sum_product_identity(&b, &[1, 0], &[0, 1]).unwrap();
        assert!(!s.diagonal_holds() && s.bilinear_holds() && s.collapsed_holds());
        let s = sum_product_identity(&b, &[1], &[1]).unwrap();
        assert!(s.diagonal_holds());
        let s = sum_product_identity(&b, &[0, 0, 0], &[1, 0, 1]).unwrap();
        assert_eq!((s.left.clone(), s.diagonal.clone()), (b.zero(), b.zero()));
        assert!(sum_product_identity(&z10(), &[1], &[1]).is_err());
    }

    #[test]
    fn gamma_roundtrip_on_chains() {
        assert!(gamma_chain_roundtrip(&catalog::boolean(1, ProductKind::Inf)).unwrap().all_passed());
        assert!(gamma_chain_roundtrip(&catalog::luk(4)).unwrap().all_passed());
        assert!(matches!(
            gamma_chain_roundtrip(&catalog::z_rig(10)),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn rejects_non_chains() {
        assert!(matches!(
            ChainRing::new(catalog::boolean(2, ProductKind::Inf)),
            Err(Error::NotChain { .. })
        ));
        assert_eq!(ChainRing::new(catalog::one()).unwrap_err(), Error::TrivialAlgebra);
    }
}
