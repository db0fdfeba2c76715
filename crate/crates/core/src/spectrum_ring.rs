//! The ring `A♯` of a finite PMV_f-algebra, generated by `(0, â)` inside the
//! product of the chain rings `(A/P)♯` over the prime spectrum.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{hom_violation, Elem, FiniteAlgebra};
use crate::chain_ring::{ChainRing, ChainRingElem};
use crate::classify::{self, VarietyLabel};
use crate::ideal::{self, IdealSet, Quotient};
use crate::lu_ring::LuRing;
use crate::report::Report;
use crate::{Error, Result};

/// One chain-ring element per prime, in spectrum order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecRingElem {
    pub components: Vec<ChainRingElem>,
}

impl fmt::Display for SpecRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// The full product `∏ Rᵢ` of chain rings with componentwise operations.
#[derive(Clone, Debug)]
pub struct ProductChainRing {
    rings: Vec<ChainRing>,
}

impl ProductChainRing {
    pub fn new(rings: Vec<ChainRing>) -> Self {
        Self { rings }
    }

    pub fn rings(&self) -> &[ChainRing] {
        &self.rings
    }

    pub fn arity(&self) -> usize {
        self.rings.len()
    }

    fn zip(
        &self,
        x: &SpecRingElem,
        y: &SpecRingElem,
        f: impl Fn(&ChainRing, &ChainRingElem, &ChainRingElem) -> ChainRingElem,
    ) -> SpecRingElem {
        SpecRingElem {
            components: self
                .rings
                .iter()
                .zip(x.components.iter().zip(&y.components))
                .map(|(r, (a, b))| f(r, a, b))
                .collect(),
        }
    }

    /// `|x| ≤ bound·u` in every component.
    pub fn within(&self, x: &SpecRingElem, bound: u32) -> bool {
        self.rings.iter().zip(&x.components).all(|(r, c)| {
            let cap = ChainRingElem::new(bound as i64, 0);
            r.leq(&r.abs(c), &cap)
        })
    }
}

impl LuRing for ProductChainRing {
    type Elem = SpecRingElem;

    fn zero(&self) -> SpecRingElem {
        SpecRingElem {
            components: self.rings.iter().map(|r| r.zero()).collect(),
        }
    }

    fn unit(&self) -> SpecRingElem {
        SpecRingElem {
            components: self.rings.iter().map(|r| r.unit()).collect(),
        }
    }

    fn add(&self, x: &SpecRingElem, y: &SpecRingElem) -> SpecRingElem {
        self.zip(x, y, |r, a, b| r.add(a, b))
    }

    fn neg(&self, x: &SpecRingElem) -> SpecRingElem {
        SpecRingElem {
            components: self.rings.iter().zip(&x.components).map(|(r, a)| r.neg(a)).collect(),
        }
    }

    fn mul(&self, x: &SpecRingElem, y: &SpecRingElem) -> SpecRingElem {
        self.zip(x, y, |r, a, b| r.mul(a, b))
    }

    fn leq(&self, x: &SpecRingElem, y: &SpecRingElem) -> bool {
        self.rings
            .iter()
            .zip(x.components.iter().zip(&y.components))
            .all(|(r, (a, b))| r.leq(a, b))
    }

    fn meet(&self, x: &SpecRingElem, y: &SpecRingElem) -> SpecRingElem {
        self.zip(x, y, |r, a, b| r.meet(a, b))
    }

    fn join(&self, x: &SpecRingElem, y: &SpecRingElem) -> SpecRingElem {
        self.zip(x, y, |r, a, b| r.join(a, b))
    }

    fn window(&self, bound: u32) -> Vec<SpecRingElem> {
        let mut out = vec![Vec::new()];
        for r in &self.rings {
            let w = LuRing::window(r, bound);
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<ChainRingElem>| {
                    w.iter().map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c.clone());
                        p
                    })
                })
                .collect();
        }
        let mut out: Vec<SpecRingElem> = out.into_iter().map(|components| SpecRingElem { components }).collect();
        out.sort();
        out
    }

    fn describe(&self) -> String {
        let sizes: Vec<String> = self.rings.iter().map(|r| r.chain().size().to_string()).collect();
        format!("product of chain rings over chains of sizes [{}]", sizes.join(","))
    }

    fn show(&self, x: &SpecRingElem) -> String {
        x.to_string()
    }
}

/// `A♯` for a non-trivial finite PMV_f-algebra.
#[derive(Clone, Debug)]
pub struct SpectrumRing {
    algebra: FiniteAlgebra,
    primes: Vec<IdealSet>,
    quotients: Vec<Quotient>,
    ambient: ProductChainRing,
}

impl SpectrumRing {
    pub fn new(alg: &FiniteAlgebra) -> Result<Self> {
        if alg.is_trivial() {
            return Err(Error::TrivialAlgebra);
        }
        classify::require(alg, VarietyLabel::Pmvf)?;
        let primes = ideal::spec(alg)?;
        let quotients = primes
            .iter()
            .map(|p| ideal::quotient(alg, p))
            .collect::<Result<Vec<_>>>()?;
        let rings = quotients
            .iter()
            .map(|q| ChainRing::new(q.algebra.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            algebra: alg.clone(),
            primes,
            quotients,
            ambient: ProductChainRing::new(rings),
        })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn primes(&self) -> &[IdealSet] {
        &self.primes
    }

    pub fn quotients(&self) -> &[Quotient] {
        &self.quotients
    }

    /// The ambient product `∏ (A/P)♯`.
    pub fn ambient(&self) -> &ProductChainRing {
        &self.ambient
    }

    /// `(0, â)`: the class of `a` at each prime.
    pub fn generator(&self, a: Elem) -> SpecRingElem {
        SpecRingElem {
            components: self
                .ambient
                .rings
                .iter()
                .zip(&self.quotients)
                .map(|(r, q)| r.segment(q.projection[a]))
                .collect(),
        }
    }

    pub fn generators(&self) -> Vec<SpecRingElem> {
        self.algebra.elements().map(|a| self.generator(a)).collect()
    }

    /// `Σ εᵢ (0, âᵢ)`
    pub fn formal_sum(&self, terms: &[(bool, Elem)]) -> SpecRingElem {
        terms.iter().fold(self.zero(), |acc, &(positive, a)| {
            let g = self.generator(a);
            if positive {
                self.add(&acc, &g)
            } else {
                self.sub(&acc, &g)
            }
        })
    }

    /// Element of `A` whose generator equals `x`, if any.
    pub fn preimage(&self, x: &SpecRingElem) -> Option<Elem> {
        self.algebra.elements().find(|&a| self.generator(a) == *x)
    }
}

impl LuRing for SpectrumRing {
    type Elem = SpecRingElem;

    fn zero(&self) -> SpecRingElem {
        self.ambient.zero()
    }

    fn unit(&self) -> SpecRingElem {
        self.ambient.unit()
    }

    fn add(&self, x: &SpecRingElem, y: &SpecRingElem) -> SpecRingElem {
        self.ambient.add(x, y)
    }

    fn neg(&self, x: &SpecRingElem) -> SpecRingElem {
        self.ambient.neg(x)
    }

    fn mul(&self, x: &SpecRingElem, y: &SpecRingElem) -> SpecRingElem {
        self.ambient.mul(x, y)
    }

    fn leq(&self, x: &SpecRingElem, y: &SpecRingElem) -> bool {
        self.ambient.leq(x, y)
    }

    fn meet(&self, x: &SpecRingElem, y: &SpecRingElem) -> SpecRingElem {
        self.ambient.meet(x, y)
    }

    fn join(&self, x: &SpecRingElem, y: &SpecRingElem) -> SpecRingElem {
        self.ambient.join(x, y)
    }

    /// Elements reachable from `0` by adding `±(0, â)` without leaving the window.
    fn window(&self, bound: u32) -> Vec<SpecRingElem> {
        let gens: Vec<SpecRingElem> = self
            .algebra
            .elements()
            .filter(|&a| a != 0)
            .map(|a| self.generator(a))
            .collect();
        let steps: Vec<SpecRingElem> = gens.iter().cloned().chain(gens.iter().map(|g| self.neg(g))).collect();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.zero());
        queue.push_back(self.zero());
        while let Some(x) = queue.pop_front() {
            for s in &steps {
                let y = self.add(&x, s);
                if !seen.contains(&y) && self.ambient.within(&y, bound) {
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn describe(&self) -> String {
        format!(
            "ring of a {}-element algebra over {} primes",
            self.algebra.size(),
            self.primes.len()
        )
    }

    fn show(&self, x: &SpecRingElem) -> String {
        x.to_string()
    }
}

/// Compares `(Σεᵢ(0,âᵢ))(Σδⱼ(0,b̂ⱼ))` with `Σᵢⱼ εᵢδⱼ(0, âᵢb̂ⱼ)` for every sign pattern.
pub fn formal_product_check(ring: &SpectrumRing, left: &[Elem], right: &[Elem]) -> Result<Report> {
    if left.len() > 3 || right.len() > 3 {
        return Err(Error::TooLarge("generator lists are limited to length 3".into()));
    }
    let alg = ring.algebra();
    if let Some(&bad) = left.iter().chain(right).find(|&&a| a >= alg.size()) {
        return Err(Error::InvalidArgument(format!("element {bad} is outside the carrier")));
    }
    let mut witness = None;
    let mut cases = 0usize;
    'outer: for eps in 0u32..(1 << left.len()) {
        for del in 0u32..(1 << right.len()) {
            cases += 1;
            let sign = |mask: u32, i: usize| mask >> i & 1 == 0;
            let xs: Vec<(bool, Elem)> = left.iter().enumerate().map(|(i, &a)| (sign(eps, i), a)).collect();
            let ys: Vec<(bool, Elem)> = right.iter().enumerate().map(|(j, &b)| (sign(del, j), b)).collect();
            let product = ring.mul(&ring.formal_sum(&xs), &ring.formal_sum(&ys));
            let mut formal = Vec::new();
            for &(e, a) in &xs {
                for &(d, b) in &ys {
                    formal.push((e == d, alg.mul(a, b)));
                }
            }
            let expected = ring.formal_sum(&formal);
            if product != expected {
                witness = Some(format!("signs {xs:?} {ys:?}: product {product} != formal {expected}"));
                break 'outer;
            }
        }
    }
    let mut r = Report::new();
    match witness {
        None => r.push("formal-product", true, format!("{cases} sign patterns")),
        Some(w) => r.push("formal-product", false, w),
    }
    Ok(r)
}

/// Checks `A ≅ Γ(A♯, u)` on a finite PMV_f-algebra.
///
/// `budget` random words of length at most 6 over signed generators are
/// folded into the segment by `(w ∨ 0) ∧ u` and must land on a generator.
pub fn gamma_general_roundtrip(alg: &FiniteAlgebra, budget: usize, seed: u64) -> Result<Report> {
    let ring = SpectrumRing::new(alg)?;
    let gens = ring.generators();
    let u = ring.unit();
    let zero = ring.zero();
    let mut r = Report::new();

    let distinct: BTreeSet<&SpecRingElem> = gens.iter().collect();
    r.push(
        "generator-injective",
        distinct.len() == alg.size(),
        format!("{} distinct images of {} elements", distinct.len(), alg.size()),
    );
    let mut oplus = None;
    let mut prod = None;
    for a in alg.elements() {
        for b in alg.elements() {
            let t = ring.meet(&ring.add(&gens[a], &gens[b]), &u);
            if oplus.is_none() && gens[alg.oplus(a, b)] != t {
                oplus = Some(format!("a={a} b={b}: (a⊕b)^={} != {t}", gens[alg.oplus(a, b)]));
            }
            let p = ring.mul(&gens[a], &gens[b]);
            if prod.is_none() && gens[alg.mul(a, b)] != p {
                prod = Some(format!("a={a} b={b}: (ab)^={} != {p}", gens[alg.mul(a, b)]));
            }
        }
    }
    r.record("preserves-oplus", oplus);
    r.record(
        "preserves-neg",
        alg.elements().find_map(|a| {
            let t = ring.sub(&u, &gens[a]);
            (gens[alg.neg(a)] != t).then(|| format!("a={a}: (¬a)^={} != {t}", gens[alg.neg(a)]))
        }),
    );
    r.record("preserves-product", prod);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut escape = None;
    for _ in 0..budget {
        let len = rng.gen_range(1..=6);
        let pick = |rng: &mut ChaCha8Rng| {
            let g = &gens[rng.gen_range(0..gens.len())];
            if rng.gen_bool(0.5) {
                g.clone()
            } else {
                ring.neg(g)
            }
        };
        let mut w = pick(&mut rng);
        for _ in 1..len {
            let g = pick(&mut rng);
            w = match rng.gen_range(0..3) {
                0 => ring.add(&w, &g),
                1 => ring.sub(&w, &g),
                _ => ring.mul(&w, &g),
            };
        }
        let folded = ring.meet(&ring.join(&w, &zero), &u);
        if !distinct.contains(&folded) {
            escape = Some(format!("word value {w} folds to {folded}, not a generator"));
            break;
        }
    }
    match escape {
        None => r.push("segment-closure", true, format!("{budget} random words, seed {seed}")),
        Some(w) => r.push("segment-closure", false, w),
    }

    let segment = ring.unit_segment();
    let image: Vec<SpecRingElem> = distinct.iter().map(|&g| g.clone()).collect();
    r.push(
        "segment-equals-image",
        segment == image,
        format!("|segment|={} |A|={}", segment.len(), alg.size()),
    );

    match crate::ring_side::gamma(&ring) {
        Ok(g) => {
            let map: Vec<Elem> = gens.iter().map(|x| g.index_of(x).expect("generator lies in the segment")).collect();
            let iso = crate::algebra::is_isomorphism(alg, &g.algebra, &map);
            r.push("gamma-isomorphic", iso, format!("Γ(A♯) has {} elements", g.algebra.size()));
        }
        Err(e) => r.push("gamma-isomorphic", false, e.to_string()),
    }
    Ok(r)
}

/// `h♯` on `A♯ → B♯`, acting at each prime `Q` of `B` through `A/h⁻¹Q → B/Q`.
#[derive(Clone, Debug)]
pub struct LiftedHom {
    /// For each prime of the target, the index of its preimage in the source spectrum.
    pub source_prime: Vec<usize>,
    /// For each prime `Q` of the target, the class map `A/h⁻¹Q → B/Q`.
    pub class_maps: Vec<Vec<Elem>>,
    target: ProductChainRing,
}

impl LiftedHom {
    pub fn apply(&self, x: &SpecRingElem) -> SpecRingElem {
        SpecRingElem {
            components: self
                .target
                .rings
                .iter()
                .zip(self.source_prime.iter().zip(&self.class_maps))
                .map(|(r, (&i, map))| {
                    let c = &x.components[i];
                    r.canon(c.m.clone(), map[c.a])
                })
                .collect(),
        }
    }
}

/// Lifts an algebra homomorphism to the associated rings and checks the result.
pub fn lift_hom(src: &SpectrumRing, tgt: &SpectrumRing, map: &[Elem], seed: u64) -> Result<(LiftedHom, Report)> {
    let (a, b) = (src.algebra(), tgt.algebra());
    if map.len() != a.size() || map.iter().any(|&v| v >= b.size()) {
        return Err(Error::NotHom("map is not total on the source carrier".into()));
    }
    if let Some(v) = hom_violation(a, b, map) {
        return Err(Error::NotHom(v.to_string()));
    }
    let mut report = Report::new();
    let mut source_prime = Vec::new();
    let mut class_maps = Vec::new();
    let mut bad_class = None;
    for (q, quot_b) in tgt.primes().iter().zip(tgt.quotients()) {
        let pre: Vec<Elem> = a.elements().filter(|&x| q.contains(map[x])).collect();
        let i = src
            .primes()
            .iter()
            .position(|p| p.members() == pre.as_slice())
            .ok_or_else(|| Error::NotHom(format!("preimage {pre:?} of a prime is not prime")))?;
        let quot_a = &src.quotients()[i];
        let cm: Vec<Elem> = quot_a
            .representatives
            .iter()
            .map(|&rep| quot_b.projection[map[rep]])
            .collect();
        if bad_class.is_none() {
            if let Some(x) = a.elements().find(|&x| quot_b.projection[map[x]] != cm[quot_a.projection[x]]) {
                bad_class = Some(format!("class of {x} at preimage {pre:?}"));
            } else if let Some(v) = hom_violation(&quot_a.algebra, &quot_b.algebra, &cm) {
                bad_class = Some(format!("class map at preimage {pre:?}: {v}"));
            }
        }
        source_prime.push(i);
        class_maps.push(cm);
    }
    report.record("class-maps", bad_class);
    let lifted = LiftedHom {
        source_prime,
        class_maps,
        target: tgt.ambient().clone(),
    };

    report.record(
        "square-commutes",
        a.elements().find_map(|x| {
            let l = lifted.apply(&src.generator(x));
            let r = tgt.generator(map[x]);
            (l != r).then(|| format!("a={x}: h♯(â)={l} != h(a)^={r}"))
        }),
    );
    let mut ring_hom = None;
    'outer: for x in a.elements() {
        for y in a.elements() {
            let (gx, gy) = (src.generator(x), src.generator(y));
            let checks = [
                ("sum", lifted.apply(&src.add(&gx, &gy)), tgt.add(&lifted.apply(&gx), &lifted.apply(&gy))),
                ("product", lifted.apply(&src.mul(&gx, &gy)), tgt.mul(&lifted.apply(&gx), &lifted.apply(&gy))),
                ("negation", lifted.apply(&src.neg(&gx)), tgt.neg(&lifted.apply(&gx))),
            ];
            if let Some((what, l, r)) = checks.into_iter().find(|(_, l, r)| l != r) {
                ring_hom = Some(format!("{what} at a={x} b={y}: {l} != {r}"));
                break 'outer;
            }
        }
    }
    report.record("ring-hom-on-generators", ring_hom);

    // two formal sums with equal value must have equal formal images
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buckets: BTreeMap<SpecRingElem, SpecRingElem> = BTreeMap::new();
    let mut collisions = 0usize;
    let mut clash = None;
    for _ in 0..2000 {
        let len = rng.gen_range(0..=4);
        let terms: Vec<(bool, Elem)> = (0..len).map(|_| (rng.gen_bool(0.5), rng.gen_range(0..a.size()))).collect();
        let value = src.formal_sum(&terms);
        let mapped: Vec<(bool, Elem)> = terms.iter().map(|&(s, x)| (s, map[x])).collect();
        let image = tgt.formal_sum(&mapped);
        if lifted.apply(&value) != image {
            clash = Some(format!("formal image of {terms:?} differs from h♯ of its value"));
            break;
        }
        match buckets.get(&value) {
            Some(prev) if *prev != image => {
                clash = Some(format!("{terms:?} collides with an earlier sum but maps elsewhere"));
                break;
            }
            Some(_) => collisions += 1,
            None => {
                buckets.insert(value, image);
            }
        }
    }
    match clash {
        None => report.push(
            "well-defined",
            true,
            format!("2000 random formal sums, {collisions} collisions, seed {seed}"),
        ),
        Some(w) => report.push("well-defined", false, w),
    }
    Ok((lifted, report))
}
