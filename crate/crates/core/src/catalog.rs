//! Named algebras used as examples and counterexamples.
//!
//! Constructor strings such as `luk(4,inf)` or `product(boolean(1),luk(3))`
//! are parsed by [`build`]. The infinite product closure of the Łukasiewicz
//! chains and the real-interval algebras are not representable here.

use std::fmt;

use crate::algebra::{product_algebra, FiniteAlgebra};
use crate::classify::VarietyLabel;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    /// `ab = 0`
    Zero,
    /// `ab = a∧b`
    Inf,
    /// `ab = a∨b` for non-zero factors, `0` otherwise
    SupZero,
    /// `ab = a∨b` everywhere
    SupNoZero,
    /// Product on the four-element chain that breaks only MVW axiom iii.
    IndepL4,
}

impl ProductKind {
    pub const ALL: [ProductKind; 5] = [
        ProductKind::Zero,
        ProductKind::Inf,
        ProductKind::SupZero,
        ProductKind::SupNoZero,
        ProductKind::IndepL4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProductKind::Zero => "zero",
            ProductKind::Inf => "inf",
            ProductKind::SupZero => "sup_zero",
            ProductKind::SupNoZero => "sup_nozero",
            ProductKind::IndepL4 => "indep_l4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The `n`-element Łukasiewicz chain `{0, 1/(n-1), ..., 1}` with zero product.
pub fn luk(n: usize) -> FiniteAlgebra {
    assert!(n >= 2, "luk needs at least two elements");
    let top = n - 1;
    FiniteAlgebra::from_fns(n, |x| top - x, |x, y| (x + y).min(top), |_, _| 0)
        .expect("valid Łukasiewicz tables")
}

pub fn luk_with(n: usize, kind: ProductKind) -> FiniteAlgebra {
    with_product(&luk(n), kind).expect("product kind applies to this chain")
}

/// `{0, ..., n}` with truncated sum and truncated integer product.
pub fn z_rig(n: usize) -> FiniteAlgebra {
    assert!(n >= 1, "z_rig needs n >= 1");
    FiniteAlgebra::from_fns(n + 1, |x| n - x, |x, y| (x + y).min(n), |x, y| (x * y).min(n))
        .expect("valid truncated-integer tables")
}

/// Boolean algebra of `k`-bit masks.
pub fn boolean(k: usize, kind: ProductKind) -> FiniteAlgebra {
    assert!(k <= 5, "boolean algebras are limited to 2^5 elements");
    let mask = (1usize << k) - 1;
    let base = FiniteAlgebra::from_fns(1 << k, |x| !x & mask, |x, y| x | y, |_, _| 0)
        .expect("valid Boolean tables");
    with_product(&base, kind).expect("product kind applies to Boolean algebras")
}

pub fn one() -> FiniteAlgebra {
    FiniteAlgebra::trivial()
}

/// Replaces the product of an MV-algebra by the named one.
pub fn with_product(alg: &FiniteAlgebra, kind: ProductKind) -> Result<FiniteAlgebra> {
    match kind {
        ProductKind::Zero => Ok(alg.mv_reduct()),
        ProductKind::Inf => alg.with_mul(|a, x, y| a.meet(x, y)),
        ProductKind::SupZero => alg.with_mul(|a, x, y| if x == 0 || y == 0 { 0 } else { a.join(x, y) }),
        ProductKind::SupNoZero => alg.with_mul(|a, x, y| a.join(x, y)),
        ProductKind::IndepL4 => {
            let l4 = luk(4);
            if alg.neg_table() != l4.neg_table() || alg.oplus_table() != l4.oplus_table() {
                return Err(Error::InvalidArgument("indep_l4 only applies to luk(4)".into()));
            }
            alg.with_mul(|a, x, y| {
                if x == 0 || y == 0 {
                    0
                } else if a.odot(x, y) == 0 {
                    a.oplus(x, y)
                } else {
                    a.odot(x, y)
                }
            })
        }
    }
}

/// Builds an algebra from a constructor string.
pub fn build(ctor: &str) -> Result<FiniteAlgebra> {
    let compact: String = ctor.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = CtorParser { s: &compact, pos: 0 };
    let alg = p.expr()?;
    if p.pos != compact.len() {
        return Err(p.err("trailing input"));
    }
    Ok(alg)
}

struct CtorParser<'a> {
    s: &'a str,
    pos: usize,
}

impl CtorParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidArgument(format!("bad constructor `{}` at offset {}: {msg}", self.s, self.pos))
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        let rest = &self.s[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        &self.s[start..start + len]
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.s[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn peek(&self, c: char) -> bool {
        self.s[self.pos..].starts_with(c)
    }

    fn number(&mut self) -> Result<usize> {
        let tok = self.ident().to_string();
        tok.parse().map_err(|_| self.err(&format!("expected a number, found `{tok}`")))
    }

    fn kind(&mut self) -> Result<ProductKind> {
        let tok = self.ident().to_string();
        ProductKind::parse(&tok).ok_or_else(|| self.err(&format!("unknown product kind `{tok}`")))
    }

    fn optional_kind(&mut self, default: ProductKind) -> Result<ProductKind> {
        if self.peek(',') {
            self.eat(',')?;
            self.kind()
        } else {
            Ok(default)
        }
    }

    fn expr(&mut self) -> Result<FiniteAlgebra> {
        let name = self.ident().to_string();
        if name == "one" {
            return Ok(one());
        }
        self.eat('(')?;
        let alg = match name.as_str() {
            "luk" => {
                let n = self.number()?;
                if !(2..=64).contains(&n) {
                    return Err(self.err("luk(n) needs 2 <= n <= 64"));
                }
                let kind = self.optional_kind(ProductKind::Zero)?;
                with_product(&luk(n), kind)?
            }
            "z_rig" => {
                let n = self.number()?;
                if !(1..=63).contains(&n) {
                    return Err(self.err("z_rig(n) needs 1 <= n <= 63"));
                }
                z_rig(n)
            }
            "boolean" => {
                let k = self.number()?;
                if k > 5 {
                    return Err(self.err("boolean(k) needs k <= 5"));
                }
                let kind = self.optional_kind(ProductKind::Inf)?;
                with_product(&boolean(k, ProductKind::Zero), kind)?
            }
            "with_product" => {
                let inner = self.expr()?;
                self.eat(',')?;
                let kind = self.kind()?;
                with_product(&inner, kind)?
            }
            "product" => {
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                if a.size() * b.size() > 256 {
                    return Err(Error::TooLarge("product algebras are limited to 256 elements".into()));
                }
                product_algebra(&a, &b)
            }
            other => return Err(self.err(&format!("unknown constructor `{other}`"))),
        };
        self.eat(')')?;
        Ok(alg)
    }
}

/// A named algebra with the label the classifier is expected to produce.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub expected: VarietyLabel,
    pub note: &'static str,
}

impl CatalogEntry {
    pub fn build(&self) -> FiniteAlgebra {
        build(self.name).expect("catalog constructors are valid")
    }
}

const fn entry(name: &'static str, expected: VarietyLabel, note: &'static str) -> CatalogEntry {
    CatalogEntry { name, expected, note }
}

use VarietyLabel::{Mv, MvwRig, Pmv1, Pmvf};

pub const ENTRIES: &[CatalogEntry] = &[
    entry("one", Pmv1, "trivial algebra"),
    entry("boolean(1,inf)", Pmv1, "two-element Boolean algebra"),
    entry("boolean(2,inf)", Pmv1, "Boolean 2^2, infimum product"),
    entry("boolean(3,inf)", Pmv1, "Boolean 2^3, infimum product"),
    entry("boolean(4,inf)", Pmv1, "Boolean 2^4, infimum product"),
    entry("boolean(5,inf)", Pmv1, "Boolean 2^5, infimum product"),
    entry("boolean(2,sup_zero)", MvwRig, "supremum product with the zero rule"),
    entry("boolean(2,sup_nozero)", Mv, "supremum product, breaks a0 = 0"),
    entry("luk(3)", Pmvf, "three-element chain, zero product"),
    entry("luk(4)", Pmvf, "four-element chain, zero product"),
    entry("luk(5)", Pmvf, "five-element chain, zero product"),
    entry("luk(8)", Pmvf, "eight-element chain, zero product"),
    entry("luk(3,inf)", MvwRig, "infimum product, breaks minus-distributivity"),
    entry("luk(4,inf)", MvwRig, "infimum product, not PMV at a=b=c=1/3"),
    entry("luk(4,indep_l4)", Mv, "breaks only MVW axiom iii"),
    entry("luk(4,sup_nozero)", Mv, "supremum product, breaks a0 = 0"),
    entry("luk(4,sup_zero)", MvwRig, "supremum product with the zero rule"),
    entry("z_rig(10)", MvwRig, "truncated integers 0..10"),
    entry("z_rig(1)", Pmv1, "truncated integers 0..1"),
    entry("product(luk(3),boolean(1,inf))", Pmvf, "six-element product"),
    entry("product(boolean(1,inf),luk(4))", Pmvf, "eight-element product"),
    entry("product(luk(3),luk(4))", Pmvf, "twelve-element product of chains"),
    entry("product(boolean(2,inf),luk(3))", Pmvf, "twelve-element product"),
    entry("product(boolean(1,inf),z_rig(10))", MvwRig, "product with a non-PMV factor"),
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    ENTRIES.iter().find(|e| e.name == compact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    #[test]
    fn every_entry_classifies_as_expected() {
        for e in ENTRIES {
            let c = classify(&e.build());
            assert_eq!(c.label, e.expected, "{}", e.name);
        }
    }

    #[test]
    fn luk2_is_boolean2_as_mv_algebra() {
        assert_eq!(luk(2).oplus_table(), boolean(1, ProductKind::Zero).oplus_table());
        assert_eq!(luk(2).neg_table(), boolean(1, ProductKind::Zero).neg_table());
    }

    #[test]
    fn z_rig_one_is_boolean_two() {
        assert_eq!(z_rig(1), boolean(1, ProductKind::Inf));
    }

    #[test]
    fn z10_tables() {
        let z = z_rig(10);
        assert_eq!(z.mul(2, z.ominus(7, 6)), 2);
        assert_eq!(z.ominus(z.mul(2, 7), z.mul(2, 6)), 0);
        assert_eq!(z.odot(6, 6), 2);
    }

    #[test]
    fn indep_product_is_cyclic_on_nonzero_elements() {
        let a = luk_with(4, ProductKind::IndepL4);
        assert_eq!(a.mul(1, 1), 2);
        assert_eq!(a.mul(1, 2), 3);
        assert_eq!(a.mul(2, 2), 1);
        assert_eq!(a.mul(3, 2), 2);
        assert!(with_product(&luk(5), ProductKind::IndepL4).is_err());
    }

    #[test]
    fn ctor_parser() {
        assert_eq!(build("boolean(2)").unwrap(), boolean(2, ProductKind::Inf));
        assert_eq!(build(" luk( 4 , inf ) ").unwrap(), luk_with(4, ProductKind::Inf));
        assert_eq!(build("with_product(luk(4),inf)").unwrap(), luk_with(4, ProductKind::Inf));
        assert_eq!(build("product(luk(3),boolean(1,inf))").unwrap().size(), 6);
        assert!(build("luk(1)").is_err());
        assert!(build("luk(3").is_err());
        assert!(build("frob(3)").is_err());
        assert!(build("luk(3))").is_err());
    }

    #[test]
    fn infimum_product_is_always_mvw() {
        for e in ENTRIES {
            let a = e.build();
            if crate::axioms::check_mv(&a).passed() && a.size() <= 16 {
                let inf = with_product(&a, ProductKind::Inf).unwrap();
                assert!(crate::axioms::check_mvw(&inf).passed(), "{}", e.name);
            }
        }
    }
}
