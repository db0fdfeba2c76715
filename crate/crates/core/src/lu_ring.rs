//! Lattice-ordered unital rings: the common interface, the integer vector
//! ring `ℤⁿ`, and the f-ring check.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain_ring::{ChainRing, ChainRingElem};
use crate::report::Report;
use crate::{Error, Result};

/// Ordered ring with a distinguished positive unit `u`.
pub trait LuRing {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn unit(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// Every element with `|x| ≤ bound·u`, sorted.
    fn window(&self, bound: u32) -> Vec<Self::Elem>;
    fn describe(&self) -> String;

    fn show(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    /// `x⁺ = x ∨ 0`
    fn positive_part(&self, x: &Self::Elem) -> Self::Elem {
        self.join(x, &self.zero())
    }

    /// `x⁻ = (-x) ∨ 0`
    fn negative_part(&self, x: &Self::Elem) -> Self::Elem {
        self.join(&self.neg(x), &self.zero())
    }

    /// `|x| = x⁺ + x⁻`
    fn abs(&self, x: &Self::Elem) -> Self::Elem {
        self.add(&self.positive_part(x), &self.negative_part(x))
    }

    fn scale(&self, k: i64, x: &Self::Elem) -> Self::Elem {
        if k < 0 {
            return self.scale(-k, &self.neg(x));
        }
        let (mut k, mut base, mut acc) = (k as u64, x.clone(), self.zero());
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// `[0, u]`
    fn unit_segment(&self) -> Vec<Self::Elem> {
        let (zero, u) = (self.zero(), self.unit());
        self.window(1)
            .into_iter()
            .filter(|x| self.leq(&zero, x) && self.leq(x, &u))
            .collect()
    }

    fn is_semi_low(&self) -> bool {
        let seg = self.unit_segment();
        seg.iter()
            .all(|a| seg.iter().all(|b| self.leq(&self.mul(a, b), &self.meet(a, b))))
    }
}

/// `ℤⁿ` with componentwise operations and a positive unit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntVector {
    unit: Vec<i64>,
}

impl IntVector {
    /// Unit `(1, ..., 1)`.
    pub fn new(n: usize) -> Self {
        Self { unit: vec![1; n] }
    }

    pub fn with_unit(unit: Vec<i64>) -> Result<Self> {
        if unit.is_empty() || unit.iter().any(|&v| v <= 0) {
            return Err(Error::InvalidArgument("unit must have positive components".into()));
        }
        Ok(Self { unit })
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    fn zip(&self, x: &[i64], y: &[i64], f: impl Fn(i64, i64) -> i64) -> Vec<i64> {
        x.iter().zip(y).map(|(&a, &b)| f(a, b)).collect()
    }
}

impl LuRing for IntVector {
    type Elem = Vec<i64>;

    fn zero(&self) -> Vec<i64> {
        vec![0; self.dim()]
    }

    fn unit(&self) -> Vec<i64> {
        self.unit.clone()
    }

    fn add(&self, x: &Vec<i64>, y: &Vec<i64>) -> Vec<i64> {
        self.zip(x, y, |a, b| a + b)
    }

    fn neg(&self, x: &Vec<i64>) -> Vec<i64> {
        x.iter().map(|a| -a).collect()
    }

    fn mul(&self, x: &Vec<i64>, y: &Vec<i64>) -> Vec<i64> {
        self.zip(x, y, |a, b| a * b)
    }

    fn leq(&self, x: &Vec<i64>, y: &Vec<i64>) -> bool {
        x.iter().zip(y).all(|(a, b)| a <= b)
    }

    fn meet(&self, x: &Vec<i64>, y: &Vec<i64>) -> Vec<i64> {
        self.zip(x, y, i64::min)
    }

    fn join(&self, x: &Vec<i64>, y: &Vec<i64>) -> Vec<i64> {
        self.zip(x, y, i64::max)
    }

    fn window(&self, bound: u32) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &u in &self.unit {
            let r = u * bound as i64;
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (-r..=r).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn describe(&self) -> String {
        format!("Z^{} with unit {:?}", self.dim(), self.unit)
    }
}

impl LuRing for ChainRing {
    type Elem = ChainRingElem;

    fn zero(&self) -> ChainRingElem {
        ChainRing::zero(self)
    }

    fn unit(&self) -> ChainRingElem {
        ChainRing::unit(self)
    }

    fn add(&self, x: &ChainRingElem, y: &ChainRingElem) -> ChainRingElem {
        ChainRing::add(self, x, y)
    }

    fn neg(&self, x: &ChainRingElem) -> ChainRingElem {
        ChainRing::neg(self, x)
    }

    fn mul(&self, x: &ChainRingElem, y: &ChainRingElem) -> ChainRingElem {
        ChainRing::mul(self, x, y)
    }

    fn leq(&self, x: &ChainRingElem, y: &ChainRingElem) -> bool {
        ChainRing::leq(self, x, y)
    }

    fn meet(&self, x: &ChainRingElem, y: &ChainRingElem) -> ChainRingElem {
        ChainRing::meet(self, x, y)
    }

    fn join(&self, x: &ChainRingElem, y: &ChainRingElem) -> ChainRingElem {
        ChainRing::join(self, x, y)
    }

    /// `(m, a)` with `-M ≤ m < M`, plus `(M, 0)`.
    fn window(&self, bound: u32) -> Vec<ChainRingElem> {
        let b = bound as i64;
        let top = self.chain().top();
        let mut out: Vec<ChainRingElem> = (-b..b)
            .flat_map(|m| {
                self.chain()
                    .elements()
                    .filter(move |&a| a != top)
                    .map(move |a| ChainRingElem::new(m, a))
            })
            .collect();
        out.push(ChainRingElem::new(b, 0));
        out.sort();
        out
    }

    fn describe(&self) -> String {
        format!("chain ring over a {}-element chain", self.chain().size())
    }

    fn show(&self, x: &ChainRingElem) -> String {
        x.to_string()
    }

    fn scale(&self, k: i64, x: &ChainRingElem) -> ChainRingElem {
        self.scalar(&BigInt::from(k), x)
    }
}

/// Checks `a∧b = 0, c ≥ 0 ⇒ ac∧b = a∧cb = 0` and `a∧b = 0 ⇒ ab = 0`.
///
/// Exhaustive over the window `|x| ≤ bound·u` when the number of triples is at
/// most `samples`; otherwise `samples` random triples are drawn from the window
/// with `a = x - x∧y`, `b = y - x∧y` and `c = |z|`.
pub fn f_ring_check<R: LuRing>(ring: &R, bound: u32, samples: usize, seed: u64) -> Report {
    let w = ring.window(bound);
    let zero = ring.zero();
    let nonneg: Vec<&R::Elem> = w.iter().filter(|x| ring.leq(&zero, x)).collect();
    let disjoint: Vec<(&R::Elem, &R::Elem)> = if nonneg.len().saturating_pow(2) <= samples.saturating_mul(4) {
        nonneg
            .iter()
            .flat_map(|&a| nonneg.iter().map(move |&b| (a, b)))
            .filter(|(a, b)| ring.meet(a, b) == zero)
            .collect()
    } else {
        Vec::new()
    };
    let exhaustive = !disjoint.is_empty() && disjoint.len().saturating_mul(nonneg.len()) <= samples;
    let mut triples: Vec<(R::Elem, R::Elem, R::Elem)> = Vec::new();
    if exhaustive {
        for (a, b) in &disjoint {
            for c in &nonneg {
                triples.push(((*a).clone(), (*b).clone(), (*c).clone()));
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = &w[rng.gen_range(0..w.len())];
            let y = &w[rng.gen_range(0..w.len())];
            let z = &w[rng.gen_range(0..w.len())];
            let m = ring.meet(x, y);
            triples.push((ring.sub(x, &m), ring.sub(y, &m), ring.abs(z)));
        }
    }
    let scope = if exhaustive {
        format!("window |x|<={bound}u exhaustive, {} triples", triples.len())
    } else {
        format!("window |x|<={bound}u, {} sampled triples, seed {seed}", triples.len())
    };
    let mut r = Report::new();
    let mut law = None;
    let mut prod = None;
    for (a, b, c) in &triples {
        if ring.meet(a, b) != zero {
            continue;
        }
        if law.is_none() {
            let l = ring.meet(&ring.mul(a, c), b);
            let rr = ring.meet(a, &ring.mul(c, b));
            if l != zero || rr != zero {
                law = Some(format!(
                    "a={} b={} c={}: ac∧b={} a∧cb={}",
                    ring.show(a),
                    ring.show(b),
                    ring.show(c),
                    ring.show(&l),
                    ring.show(&rr)
                ));
            }
        }
        if prod.is_none() && ring.mul(a, b) != zero {
            prod = Some(format!("a={} b={}: ab={}", ring.show(a), ring.show(b), ring.show(&ring.mul(a, b))));
        }
    }
    for (id, wit) in [("f-ring", law), ("disjoint-product-zero", prod)] {
        match wit {
            None => r.push(id, true, scope.clone()),
            Some(w) => r.push(id, false, format!("{scope}: {w}")),
        }
    }
    r
}

/// Group, order and ring laws of an `LuRing` on random window triples.
pub fn lu_ring_laws<R: LuRing>(ring: &R, bound: u32, samples: usize, seed: u64) -> Report {
    let w = ring.window(bound);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = ring.zero();
    let u = ring.unit();
    let scope = format!("window |x|<={bound}u, {samples} samples, seed {seed}");
    let mut fails: Vec<(&str, String)> = Vec::new();
    let mut note = |id: &'static str, ok: bool, wit: &dyn Fn() -> String| {
        if !ok && !fails.iter().any(|(i, _)| *i == id) {
            fails.push((id, wit()));
        }
    };
    for _ in 0..samples {
        let x = &w[rng.gen_range(0..w.len())];
        let y = &w[rng.gen_range(0..w.len())];
        let z = &w[rng.gen_range(0..w.len())];
        let s = |e: &R::Elem| ring.show(e);
        note(
            "add-associative",
            ring.add(&ring.add(x, y), z) == ring.add(x, &ring.add(y, z)),
            &|| format!("{} {} {}", s(x), s(y), s(z)),
        );
        note("add-inverse", ring.add(x, &ring.neg(x)) == zero, &|| s(x));
        note(
            "order-compatible",
            !ring.leq(x, y) || ring.leq(&ring.add(x, z), &ring.add(y, z)),
            &|| format!("{} {} {}", s(x), s(y), s(z)),
        );
        note(
            "distributive",
            ring.mul(x, &ring.add(y, z)) == ring.add(&ring.mul(x, y), &ring.mul(x, z)),
            &|| format!("{} {} {}", s(x), s(y), s(z)),
        );
        note(
            "mul-associative",
            ring.mul(&ring.mul(x, y), z) == ring.mul(x, &ring.mul(y, z)),
            &|| format!("{} {} {}", s(x), s(y), s(z)),
        );
        note("mul-commutative", ring.mul(x, y) == ring.mul(y, x), &|| format!("{} {}", s(x), s(y)));
        let (px, py) = (ring.abs(x), ring.abs(y));
        note(
            "positive-product",
            ring.leq(&zero, &ring.mul(&px, &py)),
            &|| format!("{} {}", s(&px), s(&py)),
        );
        note(
            "strong-unit",
            ring.leq(&ring.abs(x), &ring.scale(bound as i64, &u)),
            &|| s(x),
        );
    }
    let mut r = Report::new();
    for id in [
        "add-associative",
        "add-inverse",
        "order-compatible",
        "distributive",
        "mul-associative",
        "mul-commutative",
        "positive-product",
        "strong-unit",
    ] {
        match fails.iter().find(|(i, _)| *i == id) {
            None => r.push(id, true, scope.clone()),
            Some((_, w)) => r.push(id, false, format!("{scope}: {w}")),
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, ProductKind};

    #[test]
    fn int_vector_basics() {
        let z2 = IntVector::new(2);
        assert_eq!(z2.window(8).len(), 17 * 17);
        assert_eq!(z2.unit_segment(), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(z2.is_semi_low());
        assert!(!IntVector::with_unit(vec![2]).unwrap().is_semi_low());
        assert_eq!(z2.abs(&vec![-3, 2]), vec![3, 2]);
        assert_eq!(z2.scale(-3, &vec![1, 2]), vec![-3, -6]);
    }

    #[test]
    fn f_ring_example_in_z2() {
        let z2 = IntVector::new(2);
        let (a, b, c) = (vec![1, 0], vec![0, 1], vec![5, 5]);
        assert_eq!(z2.mul(&a, &c), vec![5, 0]);
        assert_eq!(z2.meet(&z2.mul(&a, &c), &b), vec![0, 0]);
        assert!(f_ring_check(&z2, 8, 1 << 20, 0).all_passed());
    }

    #[test]
    fn chain_ring_window_matches_absolute_bound() {
        let r = ChainRing::new(catalog::luk(3)).unwrap();
        let w = LuRing::window(&r, 2);
        let u2 = r.scale(2, &LuRing::unit(&r));
        let all = r.coordinate_window(3);
        let expected: Vec<_> = all.into_iter().filter(|x| r.leq(&LuRing::abs(&r, x), &u2)).collect();
        assert_eq!(w, expected);
        assert_eq!(r.unit_segment(), vec![r.elem(0, 0), r.elem(0, 1), r.elem(1, 0)]);
    }

    #[test]
    fn chain_rings_are_f_rings() {
        for alg in [catalog::boolean(1, ProductKind::Inf), catalog::luk(4)] {
            let r = ChainRing::new(alg).unwrap();
            assert!(f_ring_check(&r, 8, 1 << 20, 0).all_passed());
            assert!(lu_ring_laws(&r, 8, 500, 1).all_passed());
        }
    }

    #[test]
    fn sampling_kicks_in_for_large_windows() {
        let z4 = IntVector::new(4);
        let r = f_ring_check(&z4, 8, 2000, 7);
        assert!(r.all_passed());
        assert!(r.get("f-ring").unwrap().detail.contains("sampled"));
    }
}
