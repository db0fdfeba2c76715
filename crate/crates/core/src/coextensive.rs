//! Splitting an algebra along a complemented element and the pushout squares
//! of a homomorphism out of a product.

use crate::algebra::{hom_violation, is_hom, pair_index, product_algebra, projections, Elem, FiniteAlgebra};
use crate::catalog::{self, ProductKind};
use crate::classify::{self, VarietyLabel};
use crate::ideal::{self, IdealSet, Quotient};
use crate::report::Report;
use crate::{Error, Result};

/// Probes larger than this are refused.
pub const MAX_PROBE: usize = 8;

/// Default node budget for hom enumeration.
pub const DEFAULT_BUDGET: usize = 1 << 20;

/// `e` with `e·e = e`.
pub fn idempotents(c: &FiniteAlgebra) -> Vec<Elem> {
    c.elements().filter(|&e| c.mul(e, e) == e).collect()
}

/// `e` with `e ⊕ e = e`, the complemented elements of the MV-reduct.
pub fn boolean_elements(c: &FiniteAlgebra) -> Vec<Elem> {
    c.elements().filter(|&e| c.oplus(e, e) == e).collect()
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub e: Elem,
    pub ideal_e: IdealSet,
    pub ideal_not_e: IdealSet,
    pub left: Quotient,
    pub right: Quotient,
    /// `θ(c) = ([c]_⟨e⟩, [c]_⟨¬e⟩)`
    pub theta: Vec<(Elem, Elem)>,
    pub report: Report,
}

impl SplitResult {
    pub fn is_isomorphism(&self) -> bool {
        self.report.all_passed()
    }
}

/// `C → C/⟨e⟩ × C/⟨¬e⟩`. Accepts `e` with `e·e = e` or `e⊕e = e`; the
/// report states whether `θ` is an isomorphism.
pub fn split(c: &FiniteAlgebra, e: Elem) -> Result<SplitResult> {
    if e >= c.size() {
        return Err(Error::InvalidArgument(format!("element {e} is outside the carrier")));
    }
    classify::require(c, VarietyLabel::Pmvf)?;
    if c.mul(e, e) != e && c.oplus(e, e) != e {
        return Err(Error::NotIdempotent(e));
    }
    let ne = c.neg(e);
    let ideal_e = ideal::generated_ideal(c, &[e])?;
    let ideal_not_e = ideal::generated_ideal(c, &[ne])?;
    let left = ideal::quotient(c, &ideal_e)?;
    let right = ideal::quotient(c, &ideal_not_e)?;
    let theta: Vec<(Elem, Elem)> = c.elements().map(|x| (left.projection[x], right.projection[x])).collect();

    let mut report = Report::new();
    let meet: Vec<Elem> = ideal_e.members().iter().copied().filter(|&x| ideal_not_e.contains(x)).collect();
    report.push("kernels-meet-zero", meet == [0], format!("⟨e⟩∩⟨¬e⟩ = {meet:?}"));
    let join = ideal::generated_ideal(c, &[e, ne])?;
    report.push("ideals-join-whole", join.is_whole(), format!("|⟨e,¬e⟩| = {}", join.len()));
    let target = product_algebra(&left.algebra, &right.algebra);
    let flat: Vec<Elem> = theta.iter().map(|&(l, r)| pair_index(&right.algebra, l, r)).collect();
    report.record(
        "theta-hom",
        hom_violation(c, &target, &flat).map(|v| v.to_string()),
    );
    let mut seen = vec![None; target.size()];
    let mut collision = None;
    for x in c.elements() {
        if let Some(y) = seen[flat[x]].replace(x) {
            collision = Some(format!("θ({y}) = θ({x})"));
            break;
        }
    }
    report.record("theta-injective", collision);
    let hit = seen.iter().filter(|s| s.is_some()).count();
    report.push(
        "theta-surjective",
        hit == target.size(),
        format!("{hit} of {}×{} pairs reached", left.algebra.size(), right.algebra.size()),
    );
    Ok(SplitResult {
        e,
        ideal_e,
        ideal_not_e,
        left,
        right,
        theta,
        report,
    })
}

/// Every homomorphism `src → dst`, by propagation and backtracking.
pub fn homomorphisms(src: &FiniteAlgebra, dst: &FiniteAlgebra, budget: usize) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    let mut nodes = 0usize;
    let mut map = vec![None; src.size()];
    if assign(src, dst, &mut map, 0, 0) {
        search(src, dst, &mut map, &mut out, &mut nodes, budget)?;
    }
    Ok(out)
}

fn search(
    src: &FiniteAlgebra,
    dst: &FiniteAlgebra,
    map: &mut Vec<Option<Elem>>,
    out: &mut Vec<Vec<Elem>>,
    nodes: &mut usize,
    budget: usize,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded {
            what: "homomorphism search nodes".into(),
            limit: budget,
        });
    }
    let Some(x) = map.iter().position(Option::is_none) else {
        let total: Vec<Elem> = map.iter().map(|v| v.expect("complete")).collect();
        if is_hom(src, dst, &total) {
            out.push(total);
        }
        return Ok(());
    };
    for v in dst.elements() {
        let mut trial = map.clone();
        if assign(src, dst, &mut trial, x, v) {
            search(src, dst, &mut trial, out, nodes, budget)?;
        }
    }
    Ok(())
}

/// Sets `map[x] = v` and closes under the forced values; false on conflict.
fn assign(src: &FiniteAlgebra, dst: &FiniteAlgebra, map: &mut [Option<Elem>], x: Elem, v: Elem) -> bool {
    let mut pending = vec![(x, v)];
    while let Some((x, v)) = pending.pop() {
        match map[x] {
            Some(w) if w == v => continue,
            Some(_) => return false,
            None => map[x] = Some(v),
        }
        pending.push((src.neg(x), dst.neg(v)));
        for y in src.elements() {
            if let Some(w) = map[y] {
                pending.push((src.oplus(x, y), dst.oplus(v, w)));
                pending.push((src.mul(x, y), dst.mul(v, w)));
                pending.push((src.mul(y, x), dst.mul(w, v)));
            }
        }
    }
    true
}

/// A small test object for universal properties.
#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub algebra: FiniteAlgebra,
}

impl Probe {
    pub fn new(name: impl Into<String>, algebra: FiniteAlgebra) -> Self {
        Self {
            name: name.into(),
            algebra,
        }
    }
}

/// `1`, `2`, `2²` and the three-element chain with zero product.
pub fn default_probes() -> Vec<Probe> {
    vec![
        Probe::new("one", catalog::one()),
        Probe::new("boolean(1)", catalog::boolean(1, ProductKind::Inf)),
        Probe::new("boolean(2)", catalog::boolean(2, ProductKind::Inf)),
        Probe::new("luk(3)", catalog::luk(3)),
    ]
}

fn compose(first: &[Elem], second: &[Elem]) -> Vec<Elem> {
    first.iter().map(|&x| second[x]).collect()
}

/// One side of the split: `q_A(a) = q(g(a, b))`, independent of `b`.
fn side_map(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    g: &[Elem],
    q: &[Elem],
    first: bool,
) -> (Vec<Elem>, Option<String>) {
    let outer = if first { a } else { b };
    let inner = if first { b } else { a };
    let mut map = Vec::with_capacity(outer.size());
    let mut defect = None;
    for x in outer.elements() {
        let at = |y: Elem| {
            let pair = if first { pair_index(b, x, y) } else { pair_index(b, y, x) };
            q[g[pair]]
        };
        let v = at(0);
        if defect.is_none() {
            if let Some(y) = inner.elements().find(|&y| at(y) != v) {
                defect = Some(format!("element {x}: partner 0 and partner {y} give different classes"));
            }
        }
        map.push(v);
    }
    (map, defect)
}

/// Checks both squares of `g: A×B → C` are pushouts against the probes, and
/// that the pushout of the two projections is the one-element algebra.
pub fn pushout_check(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    c: &FiniteAlgebra,
    g: &[Elem],
    probes: &[Probe],
    budget: usize,
) -> Result<Report> {
    let ab = product_algebra(a, b);
    if g.len() != ab.size() || g.iter().any(|&v| v >= c.size()) {
        return Err(Error::NotHom("map is not total on the product carrier".into()));
    }
    if let Some(v) = hom_violation(&ab, c, g) {
        return Err(Error::NotHom(v.to_string()));
    }
    for p in probes {
        if p.algebra.size() > MAX_PROBE {
            return Err(Error::TooLarge(format!(
                "probe {} has {} elements, at most {MAX_PROBE} allowed",
                p.name,
                p.algebra.size()
            )));
        }
        classify::require(&p.algebra, VarietyLabel::Pmvf)?;
    }
    let e = g[pair_index(b, 0, b.top())];
    let s = split(c, e)?;
    let mut report = Report::new();
    report.merge("split", s.report.clone());

    let (pa, pb) = projections(a, b);
    let (qa, qa_defect) = side_map(a, b, g, &s.left.projection, true);
    let (qb, qb_defect) = side_map(a, b, g, &s.right.projection, false);
    report.record("q-a-well-defined", qa_defect);
    report.record("q-b-well-defined", qb_defect);
    report.record("q-a-hom", hom_violation(a, &s.left.algebra, &qa).map(|v| v.to_string()));
    report.record("q-b-hom", hom_violation(b, &s.right.algebra, &qb).map(|v| v.to_string()));
    let squares = compose(&pa, &qa) == compose(g, &s.left.projection)
        && compose(&pb, &qb) == compose(g, &s.right.projection);
    report.push("squares-commute", squares, "");

    let names: Vec<&str> = probes.iter().map(|p| p.name.as_str()).collect();
    for (id, side, proj, q, quotient) in [
        ("universal-a", a, &pa, &qa, &s.left),
        ("universal-b", b, &pb, &qb, &s.right),
    ] {
        let mut cones = 0usize;
        let mut failure = None;
        'probes: for p in probes {
            let from_side = homomorphisms(side, &p.algebra, budget)?;
            let from_c = homomorphisms(c, &p.algebra, budget)?;
            let from_quotient = homomorphisms(&quotient.algebra, &p.algebra, budget)?;
            for ls in &from_side {
                for lg in &from_c {
                    if compose(proj, ls) != compose(g, lg) {
                        continue;
                    }
                    cones += 1;
                    let mediating = from_quotient
                        .iter()
                        .filter(|l| compose(&quotient.projection, l) == *lg && compose(q, l) == *ls)
                        .count();
                    if mediating != 1 {
                        failure = Some(format!("probe {}: {mediating} mediating maps for a cone", p.name));
                        break 'probes;
                    }
                }
            }
        }
        match failure {
            None => report.push(id, true, format!("{cones} cones over probes {names:?}")),
            Some(w) => report.push(id, false, w),
        }
    }

    // λ_A π_A = λ_B π_B forces 0 = 1 in the probe
    let mut projection = None;
    let mut cones = 0usize;
    for p in probes {
        let la = homomorphisms(a, &p.algebra, budget)?;
        let lb = homomorphisms(b, &p.algebra, budget)?;
        let here = la
            .iter()
            .flat_map(|x| lb.iter().map(move |y| (x, y)))
            .filter(|(x, y)| compose(&pa, x) == compose(&pb, y))
            .count();
        cones += here;
        let expected = usize::from(p.algebra.is_trivial());
        if here != expected && projection.is_none() {
            projection = Some(format!("probe {}: {here} compatible pairs, expected {expected}", p.name));
        }
    }
    match projection {
        None => report.push("projection-pushout-terminal", true, format!("{cones} cones over probes {names:?}")),
        Some(w) => report.push("projection-pushout-terminal", false, w),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(k: usize) -> FiniteAlgebra {
        catalog::boolean(k, ProductKind::Inf)
    }

    #[test]
    fn idempotent_lists() {
        assert_eq!(idempotents(&b(2)), vec![0, 1, 2, 3]);
        assert_eq!(idempotents(&catalog::luk(3)), vec![0]);
        let c = product_algebra(&b(1), &catalog::luk(4));
        assert_eq!(idempotents(&c), vec![0, pair_index(&catalog::luk(4), 1, 0)]);
        assert_eq!(boolean_elements(&catalog::luk(3)), vec![0, 2]);
    }

    #[test]
    fn splits() {
        let s = split(&b(2), 2).unwrap();
        assert!(s.is_isomorphism(), "{}", s.report);
        assert_eq!((s.left.algebra.size(), s.right.algebra.size()), (2, 2));
        let s = split(&b(2), 0).unwrap();
        assert!(s.is_isomorphism());
        assert_eq!((s.left.algebra.size(), s.right.algebra.size()), (4, 1));
        let s = split(&b(2), 3).unwrap();
        assert_eq!((s.left.algebra.size(), s.right.algebra.size()), (1, 4));
        assert_eq!(split(&catalog::luk(4), 1).unwrap_err(), Error::NotIdempotent(1));
    }

    #[test]
    fn hom_counts() {
        // 2² has two homs to 2 and four endomorphisms
        assert_eq!(homomorphisms(&b(2), &b(1), DEFAULT_BUDGET).unwrap().len(), 2);
        assert_eq!(homomorphisms(&b(2), &b(2), DEFAULT_BUDGET).unwrap().len(), 4);
        assert_eq!(homomorphisms(&b(1), &catalog::one(), DEFAULT_BUDGET).unwrap().len(), 1);
        assert!(homomorphisms(&catalog::one(), &b(1), DEFAULT_BUDGET).unwrap().is_empty());
        assert!(matches!(
            homomorphisms(&b(3), &b(3), 2),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn pushout_of_identity() {
        let two = b(1);
        let c = product_algebra(&two, &two);
        let id: Vec<Elem> = c.elements().collect();
        let rep = pushout_check(&two, &two, &c, &id, &default_probes(), DEFAULT_BUDGET).unwrap();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn pushout_collapsing_second_factor() {
        // A×B → A → A×1: e = g(0,1) = 0
        let (a, bb) = (b(1), catalog::luk(3));
        let c = product_algebra(&a, &catalog::one());
        let ab = product_algebra(&a, &bb);
        let (pa, _) = projections(&a, &bb);
        let g: Vec<Elem> = ab.elements().map(|x| pa[x]).collect();
        let rep = pushout_check(&a, &bb, &c, &g, &default_probes(), DEFAULT_BUDGET).unwrap();
        assert!(rep.passed("squares-commute"), "{rep}");
        assert!(rep.passed("universal-a"), "{rep}");
    }

    #[test]
    fn oversized_probe_is_refused() {
        let two = b(1);
        let c = product_algebra(&two, &two);
        let id: Vec<Elem> = c.elements().collect();
        let probes = [Probe::new("big", b(4))];
        assert!(matches!(
            pushout_check(&two, &two, &c, &id, &probes, DEFAULT_BUDGET),
            Err(Error::TooLarge(_))
        ));
    }
}
