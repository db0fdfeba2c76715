//! Places a finite algebra in the variety tower.

use std::fmt;

use crate::algebra::FiniteAlgebra;
use crate::axioms::{self, Mode, Verdict, Witness};

/// Ordered from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarietyLabel {
    NotMv,
    Mv,
    MvwRig,
    Pmv,
    Pmvf,
    Pmv1,
}

impl VarietyLabel {
    pub const ALL: [VarietyLabel; 6] = [
        VarietyLabel::NotMv,
        VarietyLabel::Mv,
        VarietyLabel::MvwRig,
        VarietyLabel::Pmv,
        VarietyLabel::Pmvf,
        VarietyLabel::Pmv1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            VarietyLabel::NotMv => "NOT-MV",
            VarietyLabel::Mv => "MV",
            VarietyLabel::MvwRig => "MVW-RIG",
            VarietyLabel::Pmv => "PMV",
            VarietyLabel::Pmvf => "PMV-F",
            VarietyLabel::Pmv1 => "PMV-1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.as_str().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for VarietyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub label: VarietyLabel,
    pub mv: Verdict,
    pub product: Verdict,
    pub mvw: Verdict,
    pub pmv: Verdict,
    pub pmvf: Verdict,
    pub pmv1: Verdict,
}

impl Classification {
    /// The raw checks respect PMV_1 ⇒ PMV_f ⇒ PMV ⇒ MVW, independent of the label.
    pub fn tower_consistent(&self) -> bool {
        if !self.mv.passed() || !self.product.passed() {
            return true;
        }
        let mvw = self.mvw.passed();
        let pmv = mvw && self.pmv.passed();
        let pmvf = mvw && self.pmvf.passed();
        let pmv1 = self.pmv1.passed();
        (!pmv1 || pmvf) && (!pmvf || pmv) && (!pmv || mvw)
    }

    /// Witnesses explaining why the next level up was not reached.
    pub fn rejected(&self) -> Vec<&Witness> {
        let verdict = match self.label {
            VarietyLabel::NotMv => &self.mv,
            VarietyLabel::Mv => {
                if self.product.passed() {
                    &self.mvw
                } else {
                    &self.product
                }
            }
            VarietyLabel::MvwRig => &self.pmv,
            VarietyLabel::Pmv => &self.pmvf,
            VarietyLabel::Pmvf => &self.pmv1,
            VarietyLabel::Pmv1 => return Vec::new(),
        };
        verdict.witnesses.iter().collect()
    }

    pub fn all_witnesses(&self) -> impl Iterator<Item = &Witness> {
        [&self.mv, &self.product, &self.mvw, &self.pmv, &self.pmvf, &self.pmv1]
            .into_iter()
            .flat_map(|v| v.witnesses.iter())
    }

    pub fn is_at_least(&self, label: VarietyLabel) -> bool {
        self.label >= label
    }
}

pub fn classify(alg: &FiniteAlgebra) -> Classification {
    classify_with(alg, Mode::FirstWitness)
}

pub fn classify_exhaustive(alg: &FiniteAlgebra) -> Classification {
    classify_with(alg, Mode::Exhaustive)
}

pub fn classify_with(alg: &FiniteAlgebra, mode: Mode) -> Classification {
    let mv = axioms::check_laws(alg, axioms::MV_LAWS, mode);
    let (product, mvw, pmv, pmvf, pmv1) = if mv.passed() {
        (
            axioms::check_laws(alg, axioms::SEMIGROUP_LAWS, mode),
            axioms::check_laws(alg, axioms::MVW_LAWS, mode),
            axioms::check_laws(alg, axioms::PMV_LAWS, mode),
            axioms::check_laws(alg, axioms::PMVF_LAWS, mode),
            axioms::check_laws(alg, axioms::PMV1_LAWS, mode),
        )
    } else {
        Default::default()
    };
    let label = if !mv.passed() {
        VarietyLabel::NotMv
    } else if !product.passed() || !mvw.passed() {
        VarietyLabel::Mv
    } else if !pmv.passed() {
        VarietyLabel::MvwRig
    } else if !pmvf.passed() {
        VarietyLabel::Pmv
    } else if !pmv1.passed() {
        VarietyLabel::Pmvf
    } else {
        VarietyLabel::Pmv1
    };
    Classification {
        label,
        mv,
        product,
        mvw,
        pmv,
        pmvf,
        pmv1,
    }
}

/// Fails with a precondition error unless `alg` reaches `required`.
pub fn require(alg: &FiniteAlgebra, required: VarietyLabel) -> crate::Result<Classification> {
    let c = classify(alg);
    if c.label < required {
        return Err(crate::Error::Precondition {
            required,
            actual: c.label,
        });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, ProductKind};

    #[test]
    fn labels_of_small_examples() {
        assert_eq!(classify(&catalog::z_rig(10)).label, VarietyLabel::MvwRig);
        assert_eq!(classify(&catalog::luk(3)).label, VarietyLabel::Pmvf);
        assert_eq!(classify(&catalog::boolean(2, ProductKind::Inf)).label, VarietyLabel::Pmv1);
        assert_eq!(classify(&catalog::luk_with(3, ProductKind::Inf)).label, VarietyLabel::MvwRig);
        assert_eq!(classify(&FiniteAlgebra::trivial()).label, VarietyLabel::Pmv1);
    }

    #[test]
    fn label_strings_round_trip() {
        for l in VarietyLabel::ALL {
            assert_eq!(VarietyLabel::parse(l.as_str()), Some(l));
        }
    }

    #[test]
    fn rejected_witnesses_belong_to_next_level() {
        let c = classify(&catalog::z_rig(10));
        let r = c.rejected();
        assert_eq!(r.len(), 1);
        assert!(r[0].replays(&catalog::z_rig(10)));
        assert!(c.tower_consistent());
    }

    #[test]
    fn require_reports_actual_label() {
        let err = require(&catalog::z_rig(10), VarietyLabel::Pmvf).unwrap_err();
        assert_eq!(
            err,
            crate::Error::Precondition {
                required: VarietyLabel::Pmvf,
                actual: VarietyLabel::MvwRig
            }
        );
    }
}
