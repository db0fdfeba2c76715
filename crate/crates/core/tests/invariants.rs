use mvring::algebra::{is_isomorphism, product_algebra, Elem};
use mvring::catalog::{self, ProductKind};
use mvring::chain_ring::ChainRing;
use mvring::classify::{classify, VarietyLabel};
use mvring::coextensive::split;
use mvring::ideal::{self, generated_ideal, IdealSet};
use mvring::lu_ring::{f_ring_check, IntVector, LuRing};
use mvring::ring_side::gamma;
use mvring::spectrum_ring::SpectrumRing;
use mvring::{format, FiniteAlgebra};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn catalog_at_least(label: VarietyLabel) -> Vec<(&'static str, FiniteAlgebra)> {
    catalog::entries()
        .iter()
        .map(|e| (e.name, e.build()))
        .filter(|(_, a)| classify(a).is_at_least(label))
        .collect()
}

fn pmvf_chains() -> Vec<FiniteAlgebra> {
    catalog_at_least(VarietyLabel::Pmvf)
        .into_iter()
        .map(|(_, a)| a)
        .filter(|a| !a.is_trivial() && a.is_chain())
        .collect()
}

#[test]
fn order_is_a_bounded_lattice() {
    for (name, a) in catalog_at_least(VarietyLabel::Mv) {
        let u = a.top();
        for x in a.elements() {
            assert!(a.leq(0, x) && a.leq(x, u), "{name}: bounds at {x}");
            for y in a.elements() {
                let (j, m) = (a.join(x, y), a.meet(x, y));
                assert!(a.leq(x, j) && a.leq(y, j) && a.leq(m, x) && a.leq(m, y), "{name}");
                if a.leq(x, y) && a.leq(y, x) {
                    assert_eq!(x, y, "{name}: antisymmetry");
                }
                for z in a.elements() {
                    if a.leq(x, z) && a.leq(y, z) {
                        assert!(a.leq(j, z), "{name}: join is not least");
                    }
                    if a.leq(x, y) && a.leq(y, z) {
                        assert!(a.leq(x, z), "{name}: transitivity");
                    }
                }
            }
        }
    }
}

#[test]
fn products_are_monotone_in_mvw_rigs() {
    for (name, a) in catalog_at_least(VarietyLabel::MvwRig) {
        let u = a.top();
        assert!(a.leq(a.mul(u, u), u), "{name}: u·u > u");
        for x in a.elements() {
            for y in a.elements().filter(|&y| a.leq(x, y)) {
                for c in a.elements() {
                    assert!(a.leq(a.mul(x, c), a.mul(y, c)), "{name}: {x}≤{y} but {x}·{c} > {y}·{c}");
                }
            }
        }
    }
}

#[test]
fn products_distribute_over_meet_and_join() {
    for (name, a) in catalog_at_least(VarietyLabel::Pmvf) {
        for x in a.elements() {
            for y in a.elements() {
                for z in a.elements() {
                    assert_eq!(a.mul(x, a.meet(y, z)), a.meet(a.mul(x, y), a.mul(x, z)), "{name}");
                    assert_eq!(a.mul(x, a.join(y, z)), a.join(a.mul(x, y), a.mul(x, z)), "{name}");
                }
            }
        }
    }
}

#[test]
fn infimum_product_is_always_an_mvw_rig() {
    for (name, a) in catalog_at_least(VarietyLabel::Mv) {
        if a.size() > 16 {
            continue;
        }
        let inf = catalog::with_product(&a.mv_reduct(), ProductKind::Inf).unwrap();
        assert!(classify(&inf).is_at_least(VarietyLabel::MvwRig), "{name}");
    }
}

#[test]
fn primes_absorb_and_embedding_matches_intersection() {
    for (name, a) in catalog_at_least(VarietyLabel::Pmvf) {
        if a.is_trivial() {
            continue;
        }
        for p in ideal::spec(&a).unwrap() {
            assert!(p.flags().is_absorbent, "{name}: prime {:?}", p.members());
        }
        let emb = ideal::subdirect_embedding(&a).unwrap();
        assert!(emb.carries_products);
        assert!(emb.verify(&a).all_passed(), "{name}");
    }
}

#[test]
fn quotient_kernel_is_the_ideal() {
    for (name, a) in catalog_at_least(VarietyLabel::Pmvf) {
        for i in ideal::all_ideals(&a).unwrap() {
            let q = ideal::quotient(&a, &i).unwrap();
            let kernel: Vec<Elem> = a.elements().filter(|&x| q.projection[x] == 0).collect();
            assert_eq!(kernel, i.members(), "{name}");
            assert_eq!(q.representatives.len(), q.algebra.size());
        }
    }
}

#[test]
fn degenerate_splits() {
    for (name, c) in catalog_at_least(VarietyLabel::Pmvf) {
        if c.is_trivial() {
            continue;
        }
        let identity: Vec<Elem> = c.elements().collect();
        let s = split(&c, 0).unwrap();
        assert!(s.is_isomorphism(), "{name}");
        assert!(is_isomorphism(&c, &s.left.algebra, &identity), "{name}");
        assert!(s.right.algebra.is_trivial());
        let s = split(&c, c.top()).unwrap();
        assert!(s.left.algebra.is_trivial() && s.right.algebra.size() == c.size(), "{name}");
        for e in mvring::coextensive::boolean_elements(&c) {
            let s = split(&c, e).unwrap();
            if s.is_isomorphism() {
                assert_eq!(s.left.algebra.size() * s.right.algebra.size(), c.size(), "{name}");
            }
        }
    }
}

#[test]
fn int_vectors_are_semi_low_f_rings() {
    for n in 1..=4 {
        let z = IntVector::new(n);
        assert!(z.is_semi_low());
        assert!(f_ring_check(&z, 3, 500, 0).all_passed());
        let g = gamma(&z).unwrap();
        assert_eq!(g.algebra.size(), 1 << n);
        assert_eq!(classify(&g.algebra).label, VarietyLabel::Pmv1);
    }
}

#[test]
fn spectrum_rings_are_semi_low_with_strong_unit() {
    for (name, a) in catalog_at_least(VarietyLabel::Pmvf) {
        if a.is_trivial() || a.size() > 16 {
            continue;
        }
        let r = SpectrumRing::new(&a).unwrap();
        assert!(r.is_semi_low(), "{name}");
        let u = r.unit();
        for x in r.window(2) {
            assert!(r.leq(&r.abs(&x), &r.scale(2, &u)), "{name}: {x}");
        }
    }
}

fn small_algebra() -> impl Strategy<Value = FiniteAlgebra> {
    let n = catalog::entries().len();
    (0..n, 0..n, any::<bool>()).prop_map(|(i, j, pair)| {
        let a = catalog::entries()[i].build();
        let b = catalog::entries()[j].build();
        if pair && a.size() * b.size() <= 64 {
            product_algebra(&a, &b)
        } else {
            a
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_ideal_is_a_closure(alg in small_algebra(), seeds in prop::collection::vec(any::<usize>(), 0..4), extra in any::<usize>()) {
        let n = alg.size();
        let gens: Vec<Elem> = seeds.iter().map(|s| s % n).collect();
        let closed = generated_ideal(&alg, &gens).unwrap();
        prop_assert!(closed.flags().is_mv_ideal);
        prop_assert!(gens.iter().all(|&g| closed.contains(g)));
        prop_assert_eq!(&generated_ideal(&alg, closed.members()).unwrap(), &closed);
        let mut more = gens.clone();
        more.push(extra % n);
        let bigger = generated_ideal(&alg, &more).unwrap();
        prop_assert!(closed.members().iter().all(|&x| bigger.contains(x)));
    }

    #[test]
    fn witnesses_replay(alg in small_algebra()) {
        let c = classify(&alg);
        prop_assert!(c.tower_consistent());
        for w in c.all_witnesses() {
            prop_assert!(w.replays(&alg));
        }
    }

    #[test]
    fn format_round_trips(alg in small_algebra()) {
        prop_assert_eq!(format::parse(&format::write(&alg)).unwrap(), alg);
    }

    #[test]
    fn ideal_flags_agree_with_predicates(alg in small_algebra(), bits in any::<u64>()) {
        let members: Vec<Elem> = alg.elements().filter(|&x| x < 64 && bits >> x & 1 == 1).collect();
        let set = IdealSet::new(&alg, members.clone()).unwrap();
        prop_assert!(set.flags_consistent(&alg));
        prop_assert_eq!(set.flags().is_mv_ideal, ideal::is_ideal(&alg, &members));
    }

    #[test]
    fn chain_ring_canonical_forms(
        which in 0usize..64,
        ms in prop::collection::vec(-1_000_000_000_000i64..1_000_000_000_000, 3),
        as_ in prop::collection::vec(any::<usize>(), 3),
    ) {
        let chains = pmvf_chains();
        let ring = ChainRing::new(chains[which % chains.len()].clone()).unwrap();
        let size = ring.chain().size();
        let xs: Vec<_> = ms.iter().zip(&as_).map(|(&m, &a)| ring.canon(BigInt::from(m), a % size)).collect();
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(&ring.canon(x.m.clone(), x.a), x);
        for o in [ring.add(x, y), ring.neg(x), ring.mul(x, y)] {
            prop_assert!(ring.is_canonical(&o));
        }
        prop_assert_eq!(ring.add(&ring.add(x, y), z), ring.add(x, &ring.add(y, z)));
        prop_assert_eq!(ring.add(x, y), ring.add(y, x));
        prop_assert_eq!(ring.mul(x, &ring.add(y, z)), ring.add(&ring.mul(x, y), &ring.mul(x, z)));
        prop_assert_eq!(ring.mul(&ring.mul(x, y), z), ring.mul(x, &ring.mul(y, z)));
        prop_assert_eq!(ring.mul(x, y), ring.mul(y, x));
        if ring.leq(x, y) {
            prop_assert!(ring.leq(&ring.add(x, z), &ring.add(y, z)));
        }
        let bound = ring.scalar(&(x.m.clone().abs() + 1), &ring.unit());
        prop_assert!(ring.leq(&ring.abs(x), &bound));
        let zero = ring.zero();
        let (lo, hi) = (ring.meet(x, y), ring.join(x, y));
        if ring.leq(&zero, &lo) && ring.leq(&zero, z) {
            prop_assert!(ring.leq(&ring.mul(&lo, z), &ring.mul(&hi, z)));
        }
    }

    #[test]
    fn spectrum_ring_is_a_commutative_ring(
        which in 0usize..64,
        terms in prop::collection::vec(prop::collection::vec((any::<bool>(), any::<usize>()), 0..5), 3),
    ) {
        let algebras: Vec<FiniteAlgebra> = catalog_at_least(VarietyLabel::Pmvf)
            .into_iter()
            .map(|(_, a)| a)
            .filter(|a| !a.is_trivial() && a.size() <= 16)
            .collect();
        let alg = &algebras[which % algebras.len()];
        let r = SpectrumRing::new(alg).unwrap();
        let xs: Vec<_> = terms
            .iter()
            .map(|t| r.formal_sum(&t.iter().map(|&(s, a)| (s, a % alg.size())).collect::<Vec<_>>()))
            .collect();
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(r.mul(x, &r.add(y, z)), r.add(&r.mul(x, y), &r.mul(x, z)));
        prop_assert_eq!(r.mul(&r.mul(x, y), z), r.mul(x, &r.mul(y, z)));
        prop_assert_eq!(r.mul(x, y), r.mul(y, x));
        let zero = r.zero();
        let (a, b) = (r.sub(x, &r.meet(x, y)), r.sub(y, &r.meet(x, y)));
        prop_assert_eq!(r.meet(&a, &b), zero.clone());
        prop_assert_eq!(r.mul(&a, &b), zero.clone());
        let c = r.abs(z);
        prop_assert_eq!(r.meet(&r.mul(&a, &c), &b), zero);
    }
}
