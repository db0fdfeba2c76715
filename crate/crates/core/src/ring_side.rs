//! From rings back to algebras: the unit segment functor `Γ`, the map
//! `υ: (Γ R)♯ → R`, ℓ-ideals versus ideals of the segment, and `(2ⁿ)♯ ≅ ℤⁿ`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{is_isomorphism, Elem, FiniteAlgebra};
use crate::catalog::{self, ProductKind};
use crate::chain_ring::ChainRingElem;
use crate::ideal::{self, IdealSet};
use crate::lu_ring::{IntVector, LuRing};
use crate::report::Report;
use crate::spectrum_ring::{ProductChainRing, SpecRingElem, SpectrumRing};
use crate::{Error, Result};

/// Largest segment turned into a table.
pub const MAX_SEGMENT: usize = 4096;

/// `Γ(R, u)`: the segment `[0, u]` as a finite algebra, zero at index 0.
#[derive(Clone, Debug)]
pub struct GammaAlgebra<E> {
    pub algebra: FiniteAlgebra,
    pub elements: Vec<E>,
    index: HashMap<E, Elem>,
}

impl<E: Clone + Eq + std::hash::Hash> GammaAlgebra<E> {
    pub fn index_of(&self, x: &E) -> Option<Elem> {
        self.index.get(x).copied()
    }

    pub fn element(&self, i: Elem) -> &E {
        &self.elements[i]
    }
}

pub fn gamma<R: LuRing>(ring: &R) -> Result<GammaAlgebra<R::Elem>> {
    let zero = ring.zero();
    let u = ring.unit();
    let mut elements = vec![zero.clone()];
    elements.extend(ring.unit_segment().into_iter().filter(|x| *x != zero));
    if elements.len() > MAX_SEGMENT {
        return Err(Error::TooLarge(format!("segment has {} elements", elements.len())));
    }
    let index: HashMap<R::Elem, Elem> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let at = |x: &R::Elem| {
        index
            .get(x)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("{} is missing from the enumerated segment", ring.show(x))))
    };
    let n = elements.len();
    let neg = elements.iter().map(|x| at(&ring.sub(&u, x))).collect::<Result<Vec<_>>>()?;
    let mut oplus = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for x in &elements {
        for y in &elements {
            oplus.push(at(&ring.meet(&ring.add(x, y), &u))?);
            let p = ring.mul(x, y);
            match index.get(&p) {
                Some(&i) => mul.push(i),
                None => {
                    return Err(Error::ProductEscapesSegment {
                        a: ring.show(x),
                        b: ring.show(y),
                    })
                }
            }
        }
    }
    for x in &elements {
        for y in &elements {
            if !ring.leq(&ring.mul(x, y), &ring.meet(x, y)) {
                return Err(Error::NotSemiLow {
                    a: ring.show(x),
                    b: ring.show(y),
                });
            }
        }
    }
    Ok(GammaAlgebra {
        algebra: FiniteAlgebra::new(neg, oplus, mul)?,
        elements,
        index,
    })
}

/// `υ` restricted to the window of `(Γ R)♯`, built along `±(0, x̂)` steps.
#[derive(Clone, Debug)]
pub struct Upsilon<E> {
    pub gamma: GammaAlgebra<E>,
    pub spectrum: SpectrumRing,
    pub map: BTreeMap<SpecRingElem, E>,
    /// First element reached along two paths with different values.
    pub conflict: Option<String>,
}

pub fn upsilon<R: LuRing>(ring: &R, bound: u32) -> Result<Upsilon<R::Elem>> {
    let g = gamma(ring)?;
    let s = SpectrumRing::new(&g.algebra)?;
    let mut steps = Vec::new();
    for a in g.algebra.elements().filter(|&a| a != 0) {
        let x = s.generator(a);
        let v = g.element(a).clone();
        steps.push((s.neg(&x), ring.neg(&v)));
        steps.push((x, v));
    }
    let mut map = BTreeMap::new();
    let mut conflict = None;
    let mut queue = VecDeque::new();
    map.insert(s.zero(), ring.zero());
    queue.push_back(s.zero());
    while let Some(x) = queue.pop_front() {
        let vx = map[&x].clone();
        for (step, value) in &steps {
            let y = s.add(&x, step);
            if !s.ambient().within(&y, bound) {
                continue;
            }
            let vy = ring.add(&vx, value);
            match map.get(&y) {
                Some(prev) => {
                    if *prev != vy && conflict.is_none() {
                        conflict = Some(format!("{y} maps to both {} and {}", ring.show(prev), ring.show(&vy)));
                    }
                }
                None => {
                    map.insert(y.clone(), vy);
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(Upsilon {
        gamma: g,
        spectrum: s,
        map,
        conflict,
    })
}

/// Checks that `υ: (Γ R)♯ → R` is a well-defined ℓ-ring isomorphism on `|x| ≤ bound·u`.
pub fn upsilon_roundtrip<R: LuRing>(ring: &R, bound: u32, samples: usize, seed: u64) -> Result<Report> {
    let up = upsilon(ring, bound)?;
    let s = &up.spectrum;
    let window = format!("window |x|<=M u, M={bound}");
    let mut r = Report::new();
    match &up.conflict {
        None => r.push("well-defined", true, format!("{} elements, {window}", up.map.len())),
        Some(w) => r.push("well-defined", false, w.clone()),
    }
    r.record(
        "unit",
        (up.map.get(&s.unit()) != Some(&ring.unit())).then(|| "υ(u) != u".to_string()),
    );
    let image: BTreeSet<&R::Elem> = up.map.values().collect();
    let target = ring.window(bound);
    let onto = image.len() == up.map.len() && image.len() == target.len() && target.iter().all(|t| image.contains(t));
    r.push(
        "bijective-onto-window",
        onto,
        format!("{} source, {} distinct images, {} target, {window}", up.map.len(), image.len(), target.len()),
    );

    let domain: Vec<&SpecRingElem> = up.map.keys().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ring_hom = None;
    let mut lattice_hom = None;
    let mut tested = 0usize;
    for _ in 0..samples {
        let x = domain[rng.gen_range(0..domain.len())];
        let y = domain[rng.gen_range(0..domain.len())];
        let (vx, vy) = (&up.map[x], &up.map[y]);
        let ops: [(&str, SpecRingElem, R::Elem); 3] = [
            ("sum", s.add(x, y), ring.add(vx, vy)),
            ("product", s.mul(x, y), ring.mul(vx, vy)),
            ("negation", s.neg(x), ring.neg(vx)),
        ];
        for (what, z, vz) in ops {
            if let Some(got) = up.map.get(&z) {
                tested += 1;
                if *got != vz && ring_hom.is_none() {
                    ring_hom = Some(format!("{what} of {x} and {y}: {} != {}", ring.show(got), ring.show(&vz)));
                }
            }
        }
        let lat = [("meet", s.meet(x, y), ring.meet(vx, vy)), ("join", s.join(x, y), ring.join(vx, vy))];
        for (what, z, vz) in lat {
            if up.map.get(&z) != Some(&vz) && lattice_hom.is_none() {
                lattice_hom = Some(format!("{what} of {x} and {y}"));
            }
        }
        if s.leq(x, y) != ring.leq(vx, vy) && lattice_hom.is_none() {
            lattice_hom = Some(format!("order between {x} and {y}"));
        }
    }
    match ring_hom {
        None => r.push("ring-hom", true, format!("{tested} operations on {samples} sampled pairs, seed {seed}, {window}")),
        Some(w) => r.push("ring-hom", false, w),
    }
    match lattice_hom {
        None => r.push("lattice-hom", true, format!("{samples} sampled pairs, seed {seed}, {window}")),
        Some(w) => r.push("lattice-hom", false, w),
    }
    Ok(r)
}

/// `x ∈ φ(J)` iff `|x| ∧ u ∈ J`.
pub fn phi_contains<R: LuRing>(ring: &R, g: &GammaAlgebra<R::Elem>, j: &IdealSet, x: &R::Elem) -> bool {
    let t = ring.meet(&ring.abs(x), &ring.unit());
    g.index_of(&t).is_some_and(|i| j.contains(i))
}

/// `ψ(H) = H ∩ [0, u]`.
pub fn psi<E: Clone + Eq + std::hash::Hash>(g: &GammaAlgebra<E>, h: impl Fn(&E) -> bool) -> Result<IdealSet> {
    IdealSet::new(&g.algebra, g.algebra.elements().filter(|&i| h(g.element(i))))
}

/// A named ℓ-ideal given by membership.
pub type EllIdeal<'a, E> = (String, Box<dyn Fn(&E) -> bool + 'a>);

/// `{x : xᵢ = 0 for i ∉ support}` in `ℤⁿ`, one per subset.
pub fn coordinate_ideals<'a>(n: usize) -> Vec<EllIdeal<'a, Vec<i64>>> {
    (0..1u32 << n)
        .map(|s| {
            let name = format!("support {s:0width$b}", width = n);
            let pred: Box<dyn Fn(&Vec<i64>) -> bool> =
                Box::new(move |x: &Vec<i64>| x.iter().enumerate().all(|(i, &v)| s >> i & 1 == 1 || v == 0));
            (name, pred)
        })
        .collect()
}

/// Compares the ideals of `Γ(R)` with the supplied ℓ-ideals of `R` through `φ` and `ψ`.
pub fn check_ideal_correspondence<R: LuRing>(
    ring: &R,
    ell_ideals: &[EllIdeal<'_, R::Elem>],
    bound: u32,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let g = gamma(ring)?;
    let ideals = ideal::all_ideals(&g.algebra)?;
    let window_elems = ring.window(bound);
    let window = format!("window |x|<=M u, M={bound}");
    let phi_masks: Vec<Vec<bool>> = ideals
        .iter()
        .map(|j| window_elems.iter().map(|x| phi_contains(ring, &g, j, x)).collect())
        .collect();
    let mut r = Report::new();

    let mut bad = None;
    for j in &ideals {
        let back = psi(&g, |x| phi_contains(ring, &g, j, x))?;
        if back != *j {
            bad = Some(format!("ψφ{:?} = {:?}", j.members(), back.members()));
            break;
        }
    }
    match bad {
        None => r.push("psi-phi-identity", true, format!("{} ideals", ideals.len())),
        Some(w) => r.push("psi-phi-identity", false, w),
    }

    let mut injective = None;
    let mut monotone = None;
    for (a, ja) in ideals.iter().enumerate() {
        for (b, jb) in ideals.iter().enumerate() {
            if a < b && phi_masks[a] == phi_masks[b] && injective.is_none() {
                injective = Some(format!("{:?} and {:?} agree on the window", ja.members(), jb.members()));
            }
            let sub = ja.members().iter().all(|&x| jb.contains(x));
            let below = phi_masks[a].iter().zip(&phi_masks[b]).all(|(&p, &q)| !p || q);
            if sub && !below && monotone.is_none() {
                monotone = Some(format!("{:?} ⊆ {:?} but images are not nested", ja.members(), jb.members()));
            }
        }
    }
    match injective {
        None => r.push("phi-injective", true, window.clone()),
        Some(w) => r.push("phi-injective", false, w),
    }
    match monotone {
        None => r.push("phi-monotone", true, window.clone()),
        Some(w) => r.push("phi-monotone", false, w),
    }

    // ℓ-ideal laws and absorbency of each φ(J), on sampled window pairs
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut l_ideal = None;
    let mut absorbent = None;
    'outer: for (j, mask) in ideals.iter().zip(&phi_masks) {
        let members: Vec<&R::Elem> = window_elems.iter().zip(mask).filter(|(_, &m)| m).map(|(x, _)| x).collect();
        for _ in 0..samples {
            let x = members[rng.gen_range(0..members.len())];
            let y = members[rng.gen_range(0..members.len())];
            let z = &window_elems[rng.gen_range(0..window_elems.len())];
            let inside = |w: &R::Elem| phi_contains(ring, &g, j, w);
            if !inside(&ring.sub(x, y)) {
                l_ideal = Some(format!("{:?}: difference of {} and {} leaves", j.members(), ring.show(x), ring.show(y)));
            } else if ring.leq(&ring.abs(z), &ring.abs(x)) && !inside(z) {
                l_ideal = Some(format!("{:?}: {} below {} but outside", j.members(), ring.show(z), ring.show(x)));
            }
            if !inside(&ring.mul(z, x)) && absorbent.is_none() {
                absorbent = Some(format!("{:?}: {}·{} leaves", j.members(), ring.show(z), ring.show(x)));
            }
            if l_ideal.is_some() {
                break 'outer;
            }
        }
    }
    let sampled = format!("{samples} samples per ideal, seed {seed}, {window}");
    match l_ideal {
        None => r.push("phi-l-ideal", true, sampled.clone()),
        Some(w) => r.push("phi-l-ideal", false, w),
    }
    match absorbent {
        None => r.push("phi-absorbent", true, sampled),
        Some(w) => r.push("phi-absorbent", false, w),
    }

    if !ell_ideals.is_empty() {
        let mut roundtrip = None;
        let mut covered = BTreeSet::new();
        for (name, h) in ell_ideals {
            let j = psi(&g, h)?;
            if !j.flags().is_mv_ideal {
                roundtrip = Some(format!("{name}: ψ gives a non-ideal {:?}", j.members()));
                break;
            }
            if let Some(x) = window_elems.iter().find(|x| phi_contains(ring, &g, &j, x) != h(x)) {
                roundtrip = Some(format!("{name}: φψ differs at {}", ring.show(x)));
                break;
            }
            covered.insert(j);
        }
        match roundtrip {
            None => r.push("phi-psi-identity", true, format!("{} ℓ-ideals, {window}", ell_ideals.len())),
            Some(w) => r.push("phi-psi-identity", false, w),
        }
        r.push(
            "ell-ideals-complete",
            covered.len() == ideals.len(),
            format!("{} distinct ℓ-ideals for {} ideals", covered.len(), ideals.len()),
        );
    }
    Ok(r)
}

/// `aₖ = ((x − ku) ∧ u) ∨ 0` for `k = 0, 1, ...` up to the first zero; sums to `x` when `x ≥ 0`.
pub fn l_decomposition<R: LuRing>(ring: &R, x: &R::Elem) -> Result<Vec<R::Elem>> {
    const LIMIT: usize = 1 << 20;
    let (zero, u) = (ring.zero(), ring.unit());
    let mut parts = Vec::new();
    let mut rest = x.clone();
    loop {
        let part = ring.join(&ring.meet(&rest, &u), &zero);
        if part == zero {
            return Ok(parts);
        }
        if parts.len() == LIMIT {
            return Err(Error::BudgetExceeded {
                what: "decomposition parts".into(),
                limit: LIMIT,
            });
        }
        parts.push(part);
        rest = ring.sub(&rest, &u);
    }
}

/// Certifies `φ(J) = J♯` on the window: every member decomposes into segment
/// pieces from `J`, adding `±j` for `j ∈ J` stays inside, and `φ(J)` absorbs
/// products with `samples` window elements drawn per member.
pub fn j_sharp_check<R: LuRing>(ring: &R, j: &IdealSet, bound: u32, samples: usize, seed: u64) -> Result<Report> {
    let g = gamma(ring)?;
    if j.mask().len() != g.algebra.size() || !j.flags().is_mv_ideal {
        return Err(Error::NotIdeal(format!("{:?}", j.members())));
    }
    let window_elems = ring.window(bound);
    let window = format!("window |x|<=M u, M={bound}");
    let members: Vec<&R::Elem> = window_elems.iter().filter(|x| phi_contains(ring, &g, j, x)).collect();
    let mut decomposition = None;
    let mut closure = None;
    let mut absorb = None;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &x in &members {
        if decomposition.is_none() {
            for side in [ring.positive_part(x), ring.negative_part(x)] {
                let parts = l_decomposition(ring, &side)?;
                let sum = parts.iter().fold(ring.zero(), |acc, p| ring.add(&acc, p));
                if sum != side {
                    decomposition = Some(format!("parts of {} do not sum back", ring.show(&side)));
                } else if let Some(p) = parts.iter().find(|p| g.index_of(p).is_none_or(|i| !j.contains(i))) {
                    decomposition = Some(format!("part {} of {} is outside J", ring.show(p), ring.show(x)));
                }
            }
        }
        if closure.is_none() {
            for &e in j.members() {
                let jx = g.element(e);
                for y in [ring.add(x, jx), ring.sub(x, jx)] {
                    if !phi_contains(ring, &g, j, &y) {
                        closure = Some(format!("{} ± {} leaves", ring.show(x), ring.show(jx)));
                    }
                }
            }
        }
        if absorb.is_none() {
            for _ in 0..samples {
                let z = &window_elems[rng.gen_range(0..window_elems.len())];
                if !phi_contains(ring, &g, j, &ring.mul(z, x)) {
                    absorb = Some(format!("{}·{} leaves", ring.show(z), ring.show(x)));
                    break;
                }
            }
        }
    }
    let mut r = Report::new();
    match decomposition {
        None => r.push("decomposition", true, format!("{} members, {window}", members.len())),
        Some(w) => r.push("decomposition", false, w),
    }
    match closure {
        None => r.push("generated-within-phi", true, window.clone()),
        Some(w) => r.push("generated-within-phi", false, w),
    }
    match absorb {
        None => r.push("absorbent", true, format!("{samples} factors per member, seed {seed}, {window}")),
        Some(w) => r.push("absorbent", false, w),
    }
    Ok(r)
}

/// `Θ: Γ(R/J) → Γ(R)/(J ∩ [0,u])`, `[x]_J ↦ [x]`, with `R → R/J` given by `project`.
pub fn quotient_theorem_check<R: LuRing, Q: LuRing>(
    ring: &R,
    quotient_ring: &Q,
    project: impl Fn(&R::Elem) -> Q::Elem,
    in_kernel: impl Fn(&R::Elem) -> bool,
    bound: u32,
) -> Result<Report> {
    let g = gamma(ring)?;
    let gq = gamma(quotient_ring)?;
    let window = format!("window |x|<=M u, M={bound}");
    let mut r = Report::new();
    let zq = quotient_ring.zero();
    r.record(
        "kernel",
        ring.window(bound)
            .into_iter()
            .find(|x| (project(x) == zq) != in_kernel(x))
            .map(|x| format!("kernel disagrees at {}", ring.show(&x))),
    );
    let trace = psi(&g, &in_kernel)?;
    let q = ideal::quotient(&g.algebra, &trace)?;
    let mut theta = Vec::with_capacity(gq.algebra.size());
    let mut defect = None;
    for i in gq.algebra.elements() {
        let classes: BTreeSet<Elem> = g
            .algebra
            .elements()
            .filter(|&x| project(g.element(x)) == *gq.element(i))
            .map(|x| q.projection[x])
            .collect();
        if classes.len() != 1 {
            defect = Some(format!(
                "{} has preimages in {} classes",
                quotient_ring.show(gq.element(i)),
                classes.len()
            ));
            theta.push(0);
        } else {
            theta.push(*classes.iter().next().expect("one class"));
        }
    }
    r.record("theta-well-defined", defect.clone());
    let iso = defect.is_none() && is_isomorphism(&gq.algebra, &q.algebra, &theta);
    r.push(
        "theta-isomorphism",
        iso,
        format!(
            "|Γ(R/J)|={} |Γ(R)/(J∩[0,u])|={}, {window}",
            gq.algebra.size(),
            q.algebra.size()
        ),
    );
    Ok(r)
}

/// Quotient theorem on `ℤⁿ` for the ideal vanishing outside `support`.
pub fn quotient_theorem_int(n: usize, support: &[bool], bound: u32) -> Result<Report> {
    if support.len() != n {
        return Err(Error::InvalidArgument("support length differs from the dimension".into()));
    }
    let kept: Vec<usize> = (0..n).filter(|&i| !support[i]).collect();
    let ring = IntVector::new(n);
    let quotient = IntVector::new(kept.len());
    quotient_theorem_check(
        &ring,
        &quotient,
        |x| kept.iter().map(|&i| x[i]).collect(),
        |x| x.iter().zip(support).all(|(&v, &s)| s || v == 0),
        bound,
    )
}

/// Quotient theorem on `A♯` for the ideal vanishing outside the primes in `support`.
pub fn quotient_theorem_spectrum(ring: &SpectrumRing, support: &[bool], bound: u32) -> Result<Report> {
    let factors = ring.ambient().rings();
    if support.len() != factors.len() {
        return Err(Error::InvalidArgument("support length differs from the number of primes".into()));
    }
    let kept: Vec<usize> = (0..factors.len()).filter(|&i| !support[i]).collect();
    let quotient = ProductChainRing::new(kept.iter().map(|&i| factors[i].clone()).collect());
    quotient_theorem_check(
        ring,
        &quotient,
        |x| SpecRingElem {
            components: kept.iter().map(|&i| x.components[i].clone()).collect(),
        },
        |x| {
            x.components
                .iter()
                .zip(support)
                .all(|(c, &s)| s || *c == ChainRingElem::new(0, 0))
        },
        bound,
    )
}

/// `Θ: (2ⁿ)♯ → ℤⁿ`, evaluating each component at its prime.
#[derive(Clone, Debug)]
pub struct BooleanRingIso {
    pub spectrum: SpectrumRing,
    /// Coordinate of `ℤⁿ` read off each prime.
    pub coordinate: Vec<usize>,
}

impl BooleanRingIso {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=4).contains(&n) {
            return Err(Error::InvalidArgument(format!("dimension {n} is outside 1..=4")));
        }
        let spectrum = SpectrumRing::new(&catalog::boolean(n, ProductKind::Inf))?;
        // the prime of coordinate i is the set of masks with bit i clear
        let coordinate = spectrum
            .primes()
            .iter()
            .map(|p| {
                (0..n)
                    .find(|&i| p.members().iter().all(|&a| a >> i & 1 == 0) && p.len() == 1 << (n - 1))
                    .ok_or_else(|| Error::InvalidArgument(format!("unexpected prime {:?}", p.members())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { spectrum, coordinate })
    }

    pub fn dim(&self) -> usize {
        self.coordinate.len()
    }

    pub fn apply(&self, x: &SpecRingElem) -> Result<Vec<i64>> {
        let mut out = vec![0; self.dim()];
        for (c, &i) in x.components.iter().zip(&self.coordinate) {
            let m: i64 = (&c.m)
                .try_into()
                .map_err(|_| Error::TooLarge(format!("coordinate {} does not fit in i64", c.m)))?;
            out[i] = m + if c.a == 0 { 0 } else { 1 };
        }
        Ok(out)
    }

    /// `λₖ` as a bitmask: the coordinates where `h` equals `k`.
    pub fn level_set(h: &[i64], k: i64) -> Elem {
        h.iter().enumerate().filter(|(_, &v)| v == k).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// `Σₖ k·λ̂ₖ`
    pub fn from_levels(&self, h: &[i64]) -> SpecRingElem {
        let s = &self.spectrum;
        let levels: BTreeSet<i64> = h.iter().copied().filter(|&k| k != 0).collect();
        levels
            .into_iter()
            .fold(s.zero(), |acc, k| s.add(&acc, &s.scale(k, &s.generator(Self::level_set(h, k)))))
    }
}

/// Verifies `(2ⁿ)♯ ≅ ℤⁿ` on the window `|x| ≤ bound·u`.
pub fn boolean_ring_iso(n: usize, bound: u32, samples: usize, seed: u64) -> Result<Report> {
    let iso = BooleanRingIso::new(n)?;
    let s = &iso.spectrum;
    let z = IntVector::new(n);
    let window = format!("window |x|<=M u, M={bound}");
    let mut r = Report::new();

    r.record(
        "generators-to-indicators",
        (0..1usize << n).find_map(|f| {
            let want: Vec<i64> = (0..n).map(|i| (f >> i & 1) as i64).collect();
            let got = iso.apply(&s.generator(f)).ok()?;
            (got != want).then(|| format!("f={f}: {got:?} != {want:?}"))
        }),
    );

    let dom = s.window(bound);
    let mut images = BTreeSet::new();
    for x in &dom {
        images.insert(iso.apply(x)?);
    }
    let target = z.window(bound);
    r.push(
        "injective-on-window",
        images.len() == dom.len(),
        format!("{} elements, {} images, {window}", dom.len(), images.len()),
    );
    r.push(
        "image-is-window",
        images.len() == target.len() && target.iter().all(|t| images.contains(t)),
        format!("{} target elements, {window}", target.len()),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hom = None;
    for _ in 0..samples {
        let word = |rng: &mut ChaCha8Rng| {
            let mut w = s.zero();
            for _ in 0..rng.gen_range(1..=4) {
                let g = s.generator(rng.gen_range(0..1usize << n));
                w = if rng.gen_bool(0.5) { s.add(&w, &g) } else { s.sub(&w, &g) };
            }
            w
        };
        let (x, y) = (word(&mut rng), word(&mut rng));
        let (tx, ty) = (iso.apply(&x)?, iso.apply(&y)?);
        let cases = [
            ("sum", s.add(&x, &y), z.add(&tx, &ty)),
            ("product", s.mul(&x, &y), z.mul(&tx, &ty)),
            ("negation", s.neg(&x), z.neg(&tx)),
            ("meet", s.meet(&x, &y), z.meet(&tx, &ty)),
            ("join", s.join(&x, &y), z.join(&tx, &ty)),
        ];
        for (what, a, b) in cases {
            if iso.apply(&a)? != b {
                hom = Some(format!("{what} of {x} and {y}"));
            }
        }
        if hom.is_some() {
            break;
        }
    }
    match hom {
        None => r.push("ring-lattice-hom", true, format!("{samples} word pairs, seed {seed}")),
        Some(w) => r.push("ring-lattice-hom", false, w),
    }

    let mut levels = None;
    for h in &target {
        if iso.apply(&iso.from_levels(h))? != *h {
            levels = Some(format!("{h:?} is not Σ k·λ_k"));
            break;
        }
    }
    match levels {
        None => r.push("level-decomposition", true, format!("{} vectors, {window}", target.len())),
        Some(w) => r.push("level-decomposition", false, w),
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_ring::ChainRing;
    use crate::classify::{classify, VarietyLabel};

    #[test]
    fn gamma_of_int_vectors_is_boolean() {
        for n in 1..=3 {
            let g = gamma(&IntVector::new(n)).unwrap();
            assert_eq!(g.algebra.size(), 1 << n);
            assert_eq!(classify(&g.algebra).label, VarietyLabel::Pmv1);
            let b = catalog::boolean(n, ProductKind::Inf);
            // bitmask of the 0/1 vector
            let map: Vec<Elem> = b
                .elements()
                .map(|f| g.index_of(&(0..n).map(|i| (f >> i & 1) as i64).collect()).unwrap())
                .collect();
            assert!(is_isomorphism(&b, &g.algebra, &map));
        }
    }

    #[test]
    fn gamma_rejects_large_unit() {
        let e = gamma(&IntVector::with_unit(vec![2]).unwrap()).unwrap_err();
        assert_eq!(e, Error::ProductEscapesSegment { a: "[2]".into(), b: "[2]".into() });
    }

    #[test]
    fn gamma_of_boolean_chain_ring() {
        let two = catalog::boolean(1, ProductKind::Inf);
        let g = gamma(&ChainRing::new(two.clone()).unwrap()).unwrap();
        assert!(is_isomorphism(&two, &g.algebra, &[0, 1]));
    }

    #[test]
    fn upsilon_on_integers() {
        let up = upsilon(&IntVector::new(1), 5).unwrap();
        let four = SpecRingElem {
            components: vec![ChainRingElem::new(4, 0)],
        };
        assert_eq!(up.map[&four], vec![4]);
        let rep = upsilon_roundtrip(&IntVector::new(2), 8, 500, 0).unwrap();
        assert!(rep.all_passed(), "{rep}");
        assert!(rep.get("bijective-onto-window").unwrap().detail.contains("289 target"));
        let l3 = ChainRing::new(catalog::luk(3)).unwrap();
        assert!(upsilon_roundtrip(&l3, 8, 500, 0).unwrap().all_passed());
    }

    #[test]
    fn ideal_correspondence_on_z2() {
        let z = IntVector::new(2);
        let rep = check_ideal_correspondence(&z, &coordinate_ideals(2), 5, 200, 0).unwrap();
        assert!(rep.all_passed(), "{rep}");
        let g = gamma(&z).unwrap();
        let j = psi(&g, |x| x[0] == 0).unwrap();
        assert_eq!(j.len(), 2);
        for x in z.window(5) {
            assert_eq!(phi_contains(&z, &g, &j, &x), x[0] == 0);
        }
    }

    #[test]
    fn decomposition_of_negative_part() {
        let z = IntVector::new(2);
        let x = vec![0, -7];
        let parts = l_decomposition(&z, &z.negative_part(&x)).unwrap();
        assert_eq!(parts, vec![vec![0, 1]; 7]);
        assert!(l_decomposition(&z, &z.zero()).unwrap().is_empty());
        let g = gamma(&z).unwrap();
        let j = psi(&g, |x| x[0] == 0).unwrap();
        assert!(j_sharp_check(&z, &j, 6, 50, 0).unwrap().all_passed());
    }

    #[test]
    fn quotient_theorem_instances() {
        for support in [[false, true], [false, false], [true, true]] {
            let rep = quotient_theorem_int(2, &support, 3).unwrap();
            assert!(rep.all_passed(), "{support:?}: {rep}");
        }
        let s = SpectrumRing::new(&crate::algebra::product_algebra(&catalog::luk(3), &catalog::luk(4))).unwrap();
        for support in [[true, false], [false, false], [true, true]] {
            let rep = quotient_theorem_spectrum(&s, &support, 2).unwrap();
            assert!(rep.all_passed(), "{support:?}: {rep}");
        }
    }

    #[test]
    fn boolean_levels() {
        assert_eq!(BooleanRingIso::level_set(&[2, -1], 2), 1);
        assert_eq!(BooleanRingIso::level_set(&[2, -1], -1), 2);
        let iso = BooleanRingIso::new(2).unwrap();
        assert_eq!(iso.apply(&iso.from_levels(&[2, -1])).unwrap(), vec![2, -1]);
        assert_eq!(iso.apply(&iso.spectrum.generator(1)).unwrap(), vec![1, 0]);
        assert!(boolean_ring_iso(2, 4, 200, 0).unwrap().all_passed());
        assert!(BooleanRingIso::new(5).is_err());
    }
}
