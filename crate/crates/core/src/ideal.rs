//! Ideals, prime spectra, quotients and the subdirect representation.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::algebra::{hom_violation, Elem, FiniteAlgebra};
use crate::classify::{self, VarietyLabel};
use crate::report::Report;
use crate::{Error, Result};

/// Default cap on the number of ideals [`all_ideals`] will enumerate.
pub const DEFAULT_IDEAL_BUDGET: usize = 1 << 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct IdealFlags {
    pub is_mv_ideal: bool,
    pub is_absorbent: bool,
    pub is_prime_mv: bool,
    pub is_prime_w: bool,
}

/// A subset of a carrier together with its recomputable flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealSet {
    members: Vec<Elem>,
    mask: Vec<bool>,
    flags: IdealFlags,
}

impl IdealSet {
    /// Wraps an arbitrary subset; duplicates are dropped and flags evaluated.
    pub fn new(alg: &FiniteAlgebra, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut mask = vec![false; alg.size()];
        for x in members {
            if x >= alg.size() {
                return Err(Error::InvalidArgument(format!(
                    "element {x} is outside the carrier 0..{}",
                    alg.size()
                )));
            }
            mask[x] = true;
        }
        Ok(Self::from_mask(alg, mask))
    }

    fn from_mask(alg: &FiniteAlgebra, mask: Vec<bool>) -> Self {
        let members = mask_members(&mask);
        let flags = IdealFlags {
            is_mv_ideal: is_ideal_mask(alg, &mask),
            is_absorbent: is_absorbent_mask(alg, &mask),
            is_prime_mv: is_prime_mv_mask(alg, &mask),
            is_prime_w: is_prime_w_mask(alg, &mask),
        };
        Self { members, mask, flags }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn flags(&self) -> IdealFlags {
        self.flags
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.mask.len()
    }

    /// Flags stored at construction agree with a fresh evaluation.
    pub fn flags_consistent(&self, alg: &FiniteAlgebra) -> bool {
        Self::from_mask(alg, self.mask.clone()).flags == self.flags
    }
}

impl PartialOrd for IdealSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IdealSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}

fn mask_members(mask: &[bool]) -> Vec<Elem> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

fn to_mask(alg: &FiniteAlgebra, s: &[Elem]) -> Vec<bool> {
    let mut mask = vec![false; alg.size()];
    for &x in s {
        if x < mask.len() {
            mask[x] = true;
        }
    }
    mask
}

fn is_ideal_mask(alg: &FiniteAlgebra, m: &[bool]) -> bool {
    if !m[0] {
        return false;
    }
    for b in alg.elements().filter(|&b| m[b]) {
        if alg.elements().any(|a| alg.leq(a, b) && !m[a]) {
            return false;
        }
        if alg.elements().any(|c| m[c] && !m[alg.oplus(b, c)]) {
            return false;
        }
    }
    true
}

fn is_absorbent_mask(alg: &FiniteAlgebra, m: &[bool]) -> bool {
    alg.elements()
        .filter(|&a| m[a])
        .all(|a| alg.elements().all(|b| m[alg.mul(a, b)] && m[alg.mul(b, a)]))
}

fn is_prime_mv_mask(alg: &FiniteAlgebra, m: &[bool]) -> bool {
    let proper = m.iter().any(|&b| !b);
    proper
        && is_ideal_mask(alg, m)
        && alg
            .elements()
            .all(|a| alg.elements().all(|b| !m[alg.meet(a, b)] || m[a] || m[b]))
}

fn is_prime_w_mask(alg: &FiniteAlgebra, m: &[bool]) -> bool {
    let proper = m.iter().any(|&b| !b);
    proper
        && is_ideal_mask(alg, m)
        && is_absorbent_mask(alg, m)
        && alg
            .elements()
            .all(|a| alg.elements().all(|b| !m[alg.mul(a, b)] || m[a] || m[b]))
}

/// Contains 0, is downward closed and closed under `⊕`.
pub fn is_ideal(alg: &FiniteAlgebra, s: &[Elem]) -> bool {
    is_ideal_mask(alg, &to_mask(alg, s))
}

/// `a ∈ S` implies `ab, ba ∈ S` for every `b`.
pub fn is_absorbent(alg: &FiniteAlgebra, s: &[Elem]) -> bool {
    is_absorbent_mask(alg, &to_mask(alg, s))
}

/// Proper ideal with `a∧b ∈ P ⇒ a ∈ P or b ∈ P`.
pub fn is_prime_mv(alg: &FiniteAlgebra, s: &[Elem]) -> bool {
    is_prime_mv_mask(alg, &to_mask(alg, s))
}

/// Proper absorbent ideal with `ab ∈ P ⇒ a ∈ P or b ∈ P`.
pub fn is_prime_w(alg: &FiniteAlgebra, s: &[Elem]) -> bool {
    is_prime_w_mask(alg, &to_mask(alg, s))
}

fn close_mask(alg: &FiniteAlgebra, mask: &mut [bool]) {
    mask[0] = true;
    loop {
        let mut changed = false;
        let members = mask_members(mask);
        for &b in &members {
            for a in alg.elements() {
                if !mask[a] && alg.leq(a, b) {
                    mask[a] = true;
                    changed = true;
                }
            }
            for &c in &members {
                let s = alg.oplus(b, c);
                if !mask[s] {
                    mask[s] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Least ideal containing `gens`.
pub fn generated_ideal(alg: &FiniteAlgebra, gens: &[Elem]) -> Result<IdealSet> {
    let mut mask = vec![false; alg.size()];
    for &g in gens {
        if g >= alg.size() {
            return Err(Error::InvalidArgument(format!("generator {g} is outside the carrier")));
        }
        mask[g] = true;
    }
    close_mask(alg, &mut mask);
    Ok(IdealSet::from_mask(alg, mask))
}

/// Every ideal, sorted lexicographically by member list.
///
/// Ideals are generated as closures `⟨I ∪ {x}⟩` starting from `{0}`, so no
/// subset of the carrier is ever tested directly.
pub fn all_ideals(alg: &FiniteAlgebra) -> Result<Vec<IdealSet>> {
    all_ideals_with_budget(alg, DEFAULT_IDEAL_BUDGET)
}

pub fn all_ideals_with_budget(alg: &FiniteAlgebra, budget: usize) -> Result<Vec<IdealSet>> {
    let mut start = vec![false; alg.size()];
    close_mask(alg, &mut start);
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    seen.insert(start.clone());
    let mut work = vec![start];
    while let Some(mask) = work.pop() {
        for x in alg.elements().filter(|&x| !mask[x]) {
            let mut next = mask.clone();
            next[x] = true;
            close_mask(alg, &mut next);
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded {
                        what: "ideal enumeration".into(),
                        limit: budget,
                    });
                }
                work.push(next);
            }
        }
    }
    let mut out: Vec<IdealSet> = seen.into_iter().map(|m| IdealSet::from_mask(alg, m)).collect();
    out.sort();
    Ok(out)
}

/// Prime MV-ideals.
pub fn spec(alg: &FiniteAlgebra) -> Result<Vec<IdealSet>> {
    Ok(all_ideals(alg)?.into_iter().filter(|i| i.flags.is_prime_mv).collect())
}

/// Prime ideals with respect to the product.
pub fn spec_w(alg: &FiniteAlgebra) -> Result<Vec<IdealSet>> {
    Ok(all_ideals(alg)?.into_iter().filter(|i| i.flags.is_prime_w).collect())
}

/// Outcome of comparing ideal families on a PMV_f-algebra.
#[derive(Clone, Debug)]
pub struct SpectraComparison {
    pub report: Report,
    pub ideals: usize,
    pub spec: usize,
    pub spec_w: usize,
    /// Reported, not asserted.
    pub spec_w_equals_spec: bool,
}

/// Every ideal is absorbent, and product-primes are MV-primes.
pub fn check_espectros(alg: &FiniteAlgebra) -> Result<SpectraComparison> {
    classify::require(alg, VarietyLabel::Pmvf)?;
    let ideals = all_ideals(alg)?;
    let mut report = Report::new();
    let not_absorbent = ideals.iter().find(|i| !i.flags.is_absorbent);
    report.record(
        "ideals-absorbent",
        not_absorbent.map(|i| format!("ideal {:?} is not absorbent", i.members)),
    );
    let spec: Vec<_> = ideals.iter().filter(|i| i.flags.is_prime_mv).collect();
    let spec_w: Vec<_> = ideals.iter().filter(|i| i.flags.is_prime_w).collect();
    let stray = spec_w.iter().find(|p| !p.flags.is_prime_mv);
    report.record(
        "spec-w-within-spec",
        stray.map(|p| format!("{:?} is product-prime but not prime", p.members)),
    );
    let bad_prime = spec.iter().find(|p| !p.flags.is_absorbent);
    report.record(
        "primes-absorbent",
        bad_prime.map(|p| format!("prime {:?} is not absorbent", p.members)),
    );
    Ok(SpectraComparison {
        report,
        ideals: ideals.len(),
        spec: spec.len(),
        spec_w: spec_w.len(),
        spec_w_equals_spec: spec.len() == spec_w.len(),
    })
}

/// A quotient algebra together with the projection from the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: FiniteAlgebra,
    pub projection: Vec<Elem>,
    /// Least member of each class, in class order.
    pub representatives: Vec<Elem>,
    pub carries_product: bool,
}

/// `A/I` for an absorbent ideal, with the product induced.
pub fn quotient(alg: &FiniteAlgebra, ideal: &IdealSet) -> Result<Quotient> {
    quotient_with(alg, ideal, true)
}

/// `A/I` of the MV-reduct: any ideal is accepted and the product is zero.
pub fn quotient_mv(alg: &FiniteAlgebra, ideal: &IdealSet) -> Result<Quotient> {
    quotient_with(alg, ideal, false)
}

fn quotient_with(alg: &FiniteAlgebra, ideal: &IdealSet, carry_product: bool) -> Result<Quotient> {
    let m = ideal.mask();
    if m.len() != alg.size() {
        return Err(Error::InvalidArgument("ideal belongs to a different carrier".into()));
    }
    if !is_ideal_mask(alg, m) {
        return Err(Error::NotIdeal(format!("{:?}", ideal.members)));
    }
    if carry_product {
        for a in alg.elements().filter(|&a| m[a]) {
            if let Some(b) = alg.elements().find(|&b| !m[alg.mul(a, b)] || !m[alg.mul(b, a)]) {
                return Err(Error::NotAbsorbent { a, b });
            }
        }
    }
    let equiv = |x: Elem, y: Elem| m[alg.oplus(alg.ominus(x, y), alg.ominus(y, x))];
    let rep: Vec<Elem> = alg
        .elements()
        .map(|x| alg.elements().find(|&y| equiv(x, y)).expect("x is related to itself"))
        .collect();
    for x in alg.elements() {
        for y in alg.elements() {
            if (rep[x] == rep[y]) != equiv(x, y) {
                return Err(Error::IllDefinedQuotient(format!(
                    "relation is not an equivalence at ({x}, {y})"
                )));
            }
        }
    }
    let representatives: Vec<Elem> = rep.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let class_of = |r: Elem| representatives.binary_search(&r).expect("representative is listed");
    let projection: Vec<Elem> = rep.iter().map(|&r| class_of(r)).collect();
    let k = representatives.len();
    let neg: Vec<Elem> = representatives.iter().map(|&r| projection[alg.neg(r)]).collect();
    let mut oplus = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &r in &representatives {
        for &s in &representatives {
            oplus.push(projection[alg.oplus(r, s)]);
            mul.push(if carry_product { projection[alg.mul(r, s)] } else { 0 });
        }
    }
    for x in alg.elements() {
        if projection[alg.neg(x)] != neg[projection[x]] {
            return Err(Error::IllDefinedQuotient(format!("¬ at {x}")));
        }
        for y in alg.elements() {
            let (cx, cy) = (projection[x], projection[y]);
            if projection[alg.oplus(x, y)] != oplus[cx * k + cy] {
                return Err(Error::IllDefinedQuotient(format!("⊕ at ({x}, {y})")));
            }
            if carry_product && projection[alg.mul(x, y)] != mul[cx * k + cy] {
                return Err(Error::IllDefinedQuotient(format!("· at ({x}, {y})")));
            }
        }
    }
    Ok(Quotient {
        algebra: FiniteAlgebra::new(neg, oplus, mul)?,
        projection,
        representatives,
        carries_product: carry_product,
    })
}

/// `a ↦ ([a]_P)_P` into the product of the quotients by prime ideals.
#[derive(Clone, Debug)]
pub struct SubdirectEmbedding {
    pub primes: Vec<IdealSet>,
    pub factors: Vec<Quotient>,
    pub carries_products: bool,
}

impl SubdirectEmbedding {
    /// Components of the image of `a`, one per prime.
    pub fn image(&self, a: Elem) -> Vec<Elem> {
        self.factors.iter().map(|q| q.projection[a]).collect()
    }

    pub fn verify(&self, alg: &FiniteAlgebra) -> Report {
        let mut r = Report::new();
        let source = if self.carries_products {
            alg.clone()
        } else {
            alg.mv_reduct()
        };
        let non_chain = self
            .factors
            .iter()
            .zip(&self.primes)
            .find_map(|(q, p)| q.algebra.incomparable_pair().map(|(x, y)| (p, x, y)));
        r.record(
            "components-are-chains",
            non_chain.map(|(p, x, y)| format!("A/{:?} has incomparable classes {x}, {y}", p.members())),
        );
        let not_onto = self.factors.iter().zip(&self.primes).find(|(q, _)| {
            let hit: BTreeSet<_> = q.projection.iter().collect();
            hit.len() != q.algebra.size()
        });
        r.record(
            "components-surjective",
            not_onto.map(|(_, p)| format!("projection to A/{:?} is not onto", p.members())),
        );
        let not_hom = self
            .factors
            .iter()
            .zip(&self.primes)
            .find_map(|(q, p)| hom_violation(&source, &q.algebra, &q.projection).map(|v| (p, v)));
        r.record(
            "components-hom",
            not_hom.map(|(p, v)| format!("A -> A/{:?}: {v}", p.members())),
        );
        let mut seen = std::collections::BTreeMap::new();
        let mut collision = None;
        for a in alg.elements() {
            if let Some(b) = seen.insert(self.image(a), a) {
                collision = Some((b, a));
                break;
            }
        }
        let injective = collision.is_none();
        r.record(
            "injective",
            collision.map(|(a, b)| format!("{a} and {b} have the same image")),
        );
        let meet_is_zero = alg
            .elements()
            .filter(|&x| self.primes.iter().all(|p| p.contains(x)))
            .eq(std::iter::once(0));
        r.push(
            "intersection-agrees",
            meet_is_zero == injective,
            format!("intersection of primes is {{0}}: {meet_is_zero}, injective: {injective}"),
        );
        r
    }
}

/// Products are carried when the algebra is PMV_f; otherwise the MV-reduct is embedded.
pub fn subdirect_embedding(alg: &FiniteAlgebra) -> Result<SubdirectEmbedding> {
    if alg.is_trivial() {
        return Err(Error::TrivialAlgebra);
    }
    let c = classify::classify(alg);
    if c.label < VarietyLabel::Mv {
        return Err(Error::Precondition {
            required: VarietyLabel::Mv,
            actual: c.label,
        });
    }
    let primes = spec(alg)?;
    let carries_products = c.label >= VarietyLabel::Pmvf && primes.iter().all(|p| p.flags.is_absorbent);
    let factors = primes
        .iter()
        .map(|p| quotient_with(alg, p, carries_products))
        .collect::<Result<Vec<_>>>()?;
    Ok(SubdirectEmbedding {
        primes,
        factors,
        carries_products,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_isomorphism;
    use crate::catalog::{self, ProductKind};

    fn b2() -> FiniteAlgebra {
        catalog::boolean(2, ProductKind::Inf)
    }

    #[test]
    fn predicates_on_small_sets() {
        let a = b2();
        assert!(is_ideal(&a, &[0, 1]) && is_absorbent(&a, &[0, 1]) && is_prime_mv(&a, &[0, 1]));
        let l4 = catalog::luk(4);
        assert!(!is_ideal(&l4, &[0, 1]));
        assert!(is_prime_mv(&l4, &[0]));
        assert!(!is_prime_mv(&l4, &[0, 1, 2, 3]));
    }

    #[test]
    fn generated_ideals() {
        let a = b2();
        assert_eq!(generated_ideal(&a, &[1]).unwrap().members(), &[0, 1]);
        assert_eq!(generated_ideal(&catalog::luk(4), &[1]).unwrap().len(), 4);
        assert_eq!(generated_ideal(&a, &[]).unwrap().members(), &[0]);
    }

    #[test]
    fn ideal_counts() {
        let l3 = catalog::luk(3);
        let ids = all_ideals(&l3).unwrap();
        assert_eq!(ids.iter().map(|i| i.members().to_vec()).collect::<Vec<_>>(), vec![vec![0], vec![0, 1, 2]]);
        assert_eq!(spec(&l3).unwrap().len(), 1);
        assert_eq!(all_ideals(&b2()).unwrap().len(), 4);
        let s = spec(&b2()).unwrap();
        assert_eq!(s.iter().map(|i| i.members().to_vec()).collect::<Vec<_>>(), vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(spec(&catalog::z_rig(10)).unwrap().iter().map(|i| i.len()).collect::<Vec<_>>(), vec![1]);
        assert_eq!(all_ideals(&catalog::boolean(5, ProductKind::Inf)).unwrap().len(), 32);
    }

    #[test]
    fn budget_is_reported() {
        let e = all_ideals_with_budget(&catalog::boolean(3, ProductKind::Inf), 3).unwrap_err();
        assert!(e.is_size_error());
    }

    #[test]
    fn espectros_on_examples() {
        let c = check_espectros(&catalog::boolean(3, ProductKind::Inf)).unwrap();
        assert!(c.report.all_passed());
        assert_eq!(c.ideals, 8);
        assert!(c.spec_w_equals_spec);
        let l5 = check_espectros(&catalog::luk(5)).unwrap();
        assert!(l5.report.all_passed());
        // with the zero product no proper ideal is product-prime
        assert!(!l5.spec_w_equals_spec);
        assert!(matches!(check_espectros(&catalog::z_rig(10)), Err(Error::Precondition { .. })));
    }

    #[test]
    fn quotients() {
        let a = b2();
        let q = quotient(&a, &IdealSet::new(&a, [0, 2]).unwrap()).unwrap();
        assert_eq!(q.algebra, catalog::boolean(1, ProductKind::Inf));
        assert_eq!(q.projection, vec![0, 1, 0, 1]);
        let id = quotient(&a, &IdealSet::new(&a, [0]).unwrap()).unwrap();
        assert!(is_isomorphism(&a, &id.algebra, &id.projection));
        let all = quotient(&a, &IdealSet::new(&a, 0..4).unwrap()).unwrap();
        assert!(all.algebra.is_trivial());
        assert!(matches!(
            quotient(&a, &IdealSet::new(&a, [1]).unwrap()),
            Err(Error::NotIdeal(_))
        ));
        // 1·2 = 1∨2 = 3 escapes {0, 1}
        let s = catalog::boolean(2, ProductKind::SupZero);
        assert!(matches!(
            quotient(&s, &IdealSet::new(&s, [0, 1]).unwrap()),
            Err(Error::NotAbsorbent { .. })
        ));
    }

    #[test]
    fn sup_zero_has_no_proper_nontrivial_absorbent_ideals() {
        let s = catalog::boolean(2, ProductKind::SupZero);
        let absorbent: Vec<_> = all_ideals(&s)
            .unwrap()
            .into_iter()
            .filter(|i| i.flags().is_absorbent)
            .map(|i| i.len())
            .collect();
        assert_eq!(absorbent, vec![1, 4]);
    }

    #[test]
    fn subdirect_examples() {
        let e = subdirect_embedding(&b2()).unwrap();
        assert_eq!(e.factors.len(), 2);
        assert!(e.verify(&b2()).all_passed());
        let l4 = catalog::luk(4);
        let e = subdirect_embedding(&l4).unwrap();
        assert_eq!(e.factors.len(), 1);
        assert_eq!(e.factors[0].algebra, l4);
        let b3 = catalog::boolean(3, ProductKind::Inf);
        let e = subdirect_embedding(&b3).unwrap();
        assert_eq!(e.factors.len(), 3);
        assert!(e.verify(&b3).all_passed());
        assert_eq!(subdirect_embedding(&catalog::one()).unwrap_err(), Error::TrivialAlgebra);
    }
}
