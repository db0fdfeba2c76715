//! Exhaustive axiom checkers for the variety tower MV / MVW-rig / PMV /
//! PMV_f / PMV_1. Every failure carries a replayable [`Witness`].

use std::fmt;

use crate::algebra::{Elem, FiniteAlgebra};

/// A single law, universally quantified over `arity` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    OplusAssociative,
    OplusCommutative,
    OplusIdentity,
    DoubleNegation,
    AbsorbsTop,
    Lukasiewicz,
    MulCommutative,
    MulAssociative,
    /// MVW i) `a0 = 0a = 0`
    MvwZero,
    /// MVW ii) `a(b⊕c) ⊖ (ab⊕ac) = 0`
    MvwSubdistributive,
    /// MVW iii) `(ab⊖ac) ⊖ a(b⊖c) = 0`
    MvwMinus,
    /// PMV i) `a⊙b = 0 ⇒ ac⊙bc = 0`
    PmvOdot,
    /// PMV ii) `a⊙b = 0 ⇒ c(a⊕b) = ca⊕cb`
    PmvDistributive,
    /// `ab ≤ a∧b`
    BelowMeet,
    /// `a(b⊖c) = ab⊖ac`
    MinusDistributive,
    /// `au = a`
    Unit,
}

impl Axiom {
    pub fn arity(self) -> usize {
        use Axiom::*;
        match self {
            OplusIdentity | DoubleNegation | AbsorbsTop | MvwZero | Unit => 1,
            OplusCommutative | Lukasiewicz | MulCommutative | BelowMeet => 2,
            OplusAssociative | MulAssociative | MvwSubdistributive | MvwMinus | PmvOdot
            | PmvDistributive | MinusDistributive => 3,
        }
    }

    pub fn name(self) -> &'static str {
        use Axiom::*;
        match self {
            OplusAssociative => "oplus-associative",
            OplusCommutative => "oplus-commutative",
            OplusIdentity => "oplus-identity",
            DoubleNegation => "double-negation",
            AbsorbsTop => "absorbs-top",
            Lukasiewicz => "lukasiewicz",
            MulCommutative => "mul-commutative",
            MulAssociative => "mul-associative",
            MvwZero => "mvw-i-zero",
            MvwSubdistributive => "mvw-ii-subdistributive",
            MvwMinus => "mvw-iii-minus",
            PmvOdot => "pmv-i-odot",
            PmvDistributive => "pmv-ii-distributive",
            BelowMeet => "below-meet",
            MinusDistributive => "minus-distributive",
            Unit => "unit",
        }
    }

    /// Evaluates the law at one assignment; `args.len()` must equal the arity.
    pub fn holds(self, alg: &FiniteAlgebra, args: &[Elem]) -> bool {
        self.violation(alg, args).is_none()
    }

    /// `None` when the law holds at `args`, otherwise a description of both sides.
    pub fn violation(self, alg: &FiniteAlgebra, args: &[Elem]) -> Option<String> {
        use Axiom::*;
        assert_eq!(args.len(), self.arity(), "wrong number of arguments for {self:?}");
        let m = |x, y| alg.mul(x, y);
        let fail = |lhs: Elem, rhs: Elem, text: String| (lhs != rhs).then_some(text);
        match *args {
            [x] => match self {
                OplusIdentity => fail(alg.oplus(x, 0), x, format!("{x}⊕0={} != {x}", alg.oplus(x, 0))),
                DoubleNegation => {
                    let nn = alg.neg(alg.neg(x));
                    fail(nn, x, format!("¬¬{x}={nn} != {x}"))
                }
                AbsorbsTop => {
                    let u = alg.top();
                    fail(alg.oplus(x, u), u, format!("{x}⊕¬0={} != ¬0={u}", alg.oplus(x, u)))
                }
                MvwZero => {
                    let (l, r) = (m(x, 0), m(0, x));
                    (l != 0 || r != 0).then(|| format!("{x}·0={l}, 0·{x}={r}"))
                }
                Unit => {
                    let xu = m(x, alg.top());
                    fail(xu, x, format!("{x}·u={xu} != {x}"))
                }
                _ => unreachable!(),
            },
            [x, y] => match self {
                OplusCommutative => fail(
                    alg.oplus(x, y),
                    alg.oplus(y, x),
                    format!("{x}⊕{y}={} != {y}⊕{x}={}", alg.oplus(x, y), alg.oplus(y, x)),
                ),
                Lukasiewicz => {
                    let l = alg.oplus(alg.neg(alg.oplus(alg.neg(x), y)), y);
                    let r = alg.oplus(alg.neg(alg.oplus(alg.neg(y), x)), x);
                    fail(l, r, format!("x={x} y={y}: ¬(¬x⊕y)⊕y={l} != ¬(¬y⊕x)⊕x={r}"))
                }
                MulCommutative => fail(m(x, y), m(y, x), format!("{x}·{y}={} != {y}·{x}={}", m(x, y), m(y, x))),
                BelowMeet => {
                    let (p, meet) = (m(x, y), alg.meet(x, y));
                    (!alg.leq(p, meet)).then(|| format!("a={x} b={y}: ab={p} not below a∧b={meet}"))
                }
                _ => unreachable!(),
            },
            [a, b, c] => match self {
                OplusAssociative => {
                    let l = alg.oplus(alg.oplus(a, b), c);
                    let r = alg.oplus(a, alg.oplus(b, c));
                    fail(l, r, format!("({a}⊕{b})⊕{c}={l} != {a}⊕({b}⊕{c})={r}"))
                }
                MulAssociative => {
                    let l = m(m(a, b), c);
                    let r = m(a, m(b, c));
                    fail(l, r, format!("({a}·{b})·{c}={l} != {a}·({b}·{c})={r}"))
                }
                MvwSubdistributive => {
                    let l = m(a, alg.oplus(b, c));
                    let r = alg.oplus(m(a, b), m(a, c));
                    (!alg.leq(l, r)).then(|| format!("a={a} b={b} c={c}: a(b⊕c)={l} not below ab⊕ac={r}"))
                }
                MvwMinus => {
                    let l = alg.ominus(m(a, b), m(a, c));
                    let r = m(a, alg.ominus(b, c));
                    (!alg.leq(l, r)).then(|| format!("a={a} b={b} c={c}: ab⊖ac={l} not below a(b⊖c)={r}"))
                }
                PmvOdot => {
                    if alg.odot(a, b) != 0 {
                        return None;
                    }
                    let (ac, bc) = (m(a, c), m(b, c));
                    let v = alg.odot(ac, bc);
                    (v != 0).then(|| format!("a={a} b={b} c={c}: a⊙b=0 but ac⊙bc={ac}⊙{bc}={v}"))
                }
                PmvDistributive => {
                    if alg.odot(a, b) != 0 {
                        return None;
                    }
                    let l = m(c, alg.oplus(a, b));
                    let r = alg.oplus(m(c, a), m(c, b));
                    fail(l, r, format!("a={a} b={b} c={c}: a⊙b=0 but c(a⊕b)={l} != ca⊕cb={r}"))
                }
                MinusDistributive => {
                    let l = m(a, alg.ominus(b, c));
                    let r = alg.ominus(m(a, b), m(a, c));
                    fail(l, r, format!("a={a} b={b} c={c}: a(b⊖c)={a}·{}={l} != ab⊖ac={}⊖{}={r}", alg.ominus(b, c), m(a, b), m(a, c)))
                }
                _ => unreachable!(),
            },
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failing assignment for an axiom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub axiom: Axiom,
    pub args: Vec<Elem>,
}

impl Witness {
    /// True when the assignment still violates the axiom in `alg`.
    pub fn replays(&self, alg: &FiniteAlgebra) -> bool {
        !self.axiom.holds(alg, &self.args)
    }

    pub fn describe(&self, alg: &FiniteAlgebra) -> String {
        match self.axiom.violation(alg, &self.args) {
            Some(text) => format!("{} {text}", self.axiom),
            None => format!("{} {:?} (no longer violated)", self.axiom, self.args),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Stop at the first violation.
    #[default]
    FirstWitness,
    /// Collect every violating assignment.
    Exhaustive,
}

/// Outcome of checking a list of laws.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn first(&self) -> Option<&Witness> {
        self.witnesses.first()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.witnesses.iter().any(|w| w.axiom == axiom)
    }

    pub fn contains(&self, axiom: Axiom, args: &[Elem]) -> bool {
        self.witnesses.iter().any(|w| w.axiom == axiom && w.args == args)
    }
}

/// Checks `laws` in order over all assignments in lexicographic order.
pub fn check_laws(alg: &FiniteAlgebra, laws: &[Axiom], mode: Mode) -> Verdict {
    let n = alg.size();
    let mut verdict = Verdict::default();
    for &law in laws {
        let k = law.arity();
        let mut args = vec![0; k];
        'outer: loop {
            if !law.holds(alg, &args) {
                verdict.witnesses.push(Witness {
                    axiom: law,
                    args: args.clone(),
                });
                if mode == Mode::FirstWitness {
                    return verdict;
                }
            }
            for i in (0..k).rev() {
                args[i] += 1;
                if args[i] < n {
                    continue 'outer;
                }
                args[i] = 0;
            }
            break;
        }
    }
    verdict
}

pub const MV_LAWS: &[Axiom] = &[
    Axiom::OplusAssociative,
    Axiom::OplusCommutative,
    Axiom::OplusIdentity,
    Axiom::DoubleNegation,
    Axiom::AbsorbsTop,
    Axiom::Lukasiewicz,
];
pub const SEMIGROUP_LAWS: &[Axiom] = &[Axiom::MulCommutative, Axiom::MulAssociative];
pub const MVW_LAWS: &[Axiom] = &[Axiom::MvwZero, Axiom::MvwSubdistributive, Axiom::MvwMinus];
pub const PMV_LAWS: &[Axiom] = &[Axiom::PmvOdot, Axiom::PmvDistributive];
pub const PMVF_LAWS: &[Axiom] = &[Axiom::BelowMeet, Axiom::MinusDistributive];
pub const PMV1_LAWS: &[Axiom] = &[Axiom::Unit, Axiom::MinusDistributive];

pub fn check_mv(alg: &FiniteAlgebra) -> Verdict {
    check_laws(alg, MV_LAWS, Mode::FirstWitness)
}

/// Commutativity and associativity of the product.
pub fn check_product(alg: &FiniteAlgebra) -> Verdict {
    check_laws(alg, SEMIGROUP_LAWS, Mode::FirstWitness)
}

pub fn check_mvw(alg: &FiniteAlgebra) -> Verdict {
    check_laws(alg, MVW_LAWS, Mode::FirstWitness)
}

pub fn check_pmv(alg: &FiniteAlgebra) -> Verdict {
    check_laws(alg, PMV_LAWS, Mode::FirstWitness)
}

/// The two laws PMV_f adds on top of an MVW-rig; the MVW axioms are not re-checked.
pub fn check_pmvf(alg: &FiniteAlgebra) -> Verdict {
    check_laws(alg, PMVF_LAWS, Mode::FirstWitness)
}

pub fn check_pmv1(alg: &FiniteAlgebra) -> Verdict {
    check_laws(alg, PMV1_LAWS, Mode::FirstWitness)
}
