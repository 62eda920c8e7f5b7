//! Coproducts as formal tensor expressions, evaluated in modules.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graded::{gflip_between, gkron, GradedMatrix};
use crate::reps::Module;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    H,
    VPlus,
    VMinus,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::H, Generator::VPlus, Generator::VMinus];

    pub fn name(self) -> &'static str {
        match self {
            Generator::H => "h",
            Generator::VPlus => "v+",
            Generator::VMinus => "v-",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A letter in a tensor-leg word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    H,
    VPlus,
    VMinus,
    /// `E^k = e^{k sigma}`
    E(i32),
    /// `q^{kh/2} = s^{kh}`
    K(i32),
}

impl Atom {
    fn eval(self, m: &Module) -> Result<GradedMatrix> {
        match self {
            Atom::H => Ok(m.h().clone()),
            Atom::VPlus => Ok(m.v_plus().clone()),
            Atom::VMinus => m.v_minus().cloned().ok_or_else(|| {
                Error::UnsupportedRepresentation("module carries no v- image".to_string())
            }),
            Atom::E(k) => m.e_power(k),
            Atom::K(k) => m.q_half_power(k),
        }
    }
}

fn eval_word(word: &[Atom], m: &Module) -> Result<GradedMatrix> {
    let mut acc: Option<GradedMatrix> = None;
    for a in word {
        let x = a.eval(m)?;
        acc = Some(match acc {
            None => x,
            Some(prev) => &prev * &x,
        });
    }
    Ok(acc.unwrap_or_else(|| m.identity()))
}

/// `coeff * left ⊗ right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorTerm {
    pub coeff: Scalar,
    pub left: Vec<Atom>,
    pub right: Vec<Atom>,
}

fn term(left: &[Atom], right: &[Atom]) -> TensorTerm {
    TensorTerm {
        coeff: Scalar::one(),
        left: left.to_vec(),
        right: right.to_vec(),
    }
}

fn scaled(coeff: Scalar, left: &[Atom], right: &[Atom]) -> TensorTerm {
    TensorTerm {
        coeff,
        ..term(left, right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoproductKind {
    Classical,
    QDeformed,
    Jordanian,
    SuperJordanian,
}

impl CoproductKind {
    pub const ALL: [CoproductKind; 4] = [
        CoproductKind::Classical,
        CoproductKind::QDeformed,
        CoproductKind::Jordanian,
        CoproductKind::SuperJordanian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoproductKind::Classical => "CLASSICAL",
            CoproductKind::QDeformed => "Q_DEFORMED",
            CoproductKind::Jordanian => "JORDANIAN",
            CoproductKind::SuperJordanian => "SUPER_JORDANIAN",
        }
    }
}

impl fmt::Display for CoproductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoproductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CoproductKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown coproduct '{s}'")))
    }
}

/// A coproduct given generator by generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductMap {
    kind: CoproductKind,
    rules: Vec<(Generator, Vec<TensorTerm>)>,
}

impl CoproductMap {
    pub fn new(kind: CoproductKind) -> Self {
        use Atom::*;
        let xi = Scalar::xi();
        let rules = match kind {
            CoproductKind::Classical => Generator::ALL
                .iter()
                .map(|&g| {
                    let a = match g {
                        Generator::H => H,
                        Generator::VPlus => VPlus,
                        Generator::VMinus => VMinus,
                    };
                    (g, vec![term(&[a], &[]), term(&[], &[a])])
                })
                .collect(),
            CoproductKind::QDeformed => vec![
                (Generator::H, vec![term(&[H], &[]), term(&[], &[H])]),
                (
                    Generator::VPlus,
                    vec![term(&[VPlus], &[K(1)]), term(&[K(-1)], &[VPlus])],
                ),
                (
                    Generator::VMinus,
                    vec![term(&[VMinus], &[K(1)]), term(&[K(-1)], &[VMinus])],
                ),
            ],
            CoproductKind::Jordanian => vec![
                (Generator::H, vec![term(&[H], &[E(-2)]), term(&[], &[H])]),
                (
                    Generator::VPlus,
                    vec![term(&[VPlus], &[E(1)]), term(&[], &[VPlus])],
                ),
                (
                    Generator::VMinus,
                    vec![
                        term(&[VMinus], &[E(-1)]),
                        term(&[], &[VMinus]),
                        scaled(xi, &[H], &[VPlus, E(-2)]),
                    ],
                ),
            ],
            CoproductKind::SuperJordanian => vec![
                (
                    Generator::H,
                    vec![
                        term(&[H], &[E(-2)]),
                        term(&[], &[H]),
                        scaled(&xi * &Scalar::from_int(4), &[VPlus, E(-1)], &[VPlus, E(-2)]),
                    ],
                ),
                (
                    Generator::VPlus,
                    vec![term(&[VPlus], &[]), term(&[E(1)], &[VPlus])],
                ),
            ],
        };
        CoproductMap { kind, rules }
    }

    pub fn classical() -> Self {
        CoproductMap::new(CoproductKind::Classical)
    }

    pub fn q_deformed() -> Self {
        CoproductMap::new(CoproductKind::QDeformed)
    }

    pub fn jordanian() -> Self {
        CoproductMap::new(CoproductKind::Jordanian)
    }

    pub fn super_jordanian() -> Self {
        CoproductMap::new(CoproductKind::SuperJordanian)
    }

    pub fn kind(&self) -> CoproductKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.rules.iter().map(|(g, _)| *g)
    }

    pub fn supports(&self, g: Generator) -> bool {
        self.rules.iter().any(|(x, _)| *x == g)
    }

    pub fn rule(&self, g: Generator) -> Result<&[TensorTerm]> {
        self.rules
            .iter()
            .find(|(x, _)| *x == g)
            .map(|(_, t)| t.as_slice())
            .ok_or_else(|| Error::UnsupportedGenerator {
                coproduct: self.name().to_string(),
                generator: g.name().to_string(),
            })
    }

    fn check_module(&self, m: &Module) -> Result<()> {
        if self.kind != CoproductKind::QDeformed {
            return Ok(());
        }
        let residuals = m.relation_residuals(true)?;
        if residuals.iter().all(|(_, r)| r.is_zero()) {
            Ok(())
        } else {
            Err(Error::UnsupportedRepresentation(format!(
                "module of dimension {} does not satisfy the q-deformed relations",
                m.dim()
            )))
        }
    }

    /// The image of `g` on `V1 ⊗ V2`.
    pub fn image(&self, g: Generator, m1: &Module, m2: &Module) -> Result<GradedMatrix> {
        self.check_module(m1)?;
        self.check_module(m2)?;
        let mut acc = GradedMatrix::zeros_on(&m1.parity().tensor(m2.parity()));
        for t in self.rule(g)? {
            let piece = gkron(&eval_word(&t.left, m1)?, &eval_word(&t.right, m2)?);
            acc = &acc + &piece.scale(&t.coeff);
        }
        Ok(acc)
    }

    /// The image of `g` under the opposite coproduct on `V1 ⊗ V2`.
    pub fn opposite_image(&self, g: Generator, m1: &Module, m2: &Module) -> Result<GradedMatrix> {
        let swapped = self.image(g, m2, m1)?;
        let back = gflip_between(m2.parity(), m1.parity());
        let there = gflip_between(m1.parity(), m2.parity());
        Ok(&(&back * &swapped) * &there)
    }

    /// `V1 ⊗ V2` as a module; `v-` is present only when the rule and both
    /// factors provide it.
    pub fn tensor(&self, m1: &Module, m2: &Module) -> Result<Module> {
        let h = self.image(Generator::H, m1, m2)?;
        let v_plus = self.image(Generator::VPlus, m1, m2)?;
        let v_minus =
            if self.supports(Generator::VMinus) && m1.v_minus().is_some() && m2.v_minus().is_some()
            {
                Some(self.image(Generator::VMinus, m1, m2)?)
            } else {
                None
            };
        Ok(Module::new(h, v_plus, v_minus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{fundamental_rep, irrep, Spin};

    #[test]
    fn classical_is_primitive() {
        let f = fundamental_rep();
        let cp = CoproductMap::classical();
        let img = cp.image(Generator::H, f.module(), f.module()).unwrap();
        let i = f.module().identity();
        assert_eq!(img, &gkron(f.h(), &i) + &gkron(&i, f.h()));
    }

    #[test]
    fn super_jordanian_has_no_v_minus() {
        let f = fundamental_rep();
        let cp = CoproductMap::super_jordanian();
        let err = cp
            .image(Generator::VMinus, f.module(), f.module())
            .unwrap_err();
        assert!(matches!(err, Error::UnsupportedGenerator { .. }));
        let t = cp.tensor(f.module(), f.module()).unwrap();
        assert!(t.v_minus().is_none());
    }

    #[test]
    fn q_deformed_rejects_spin_one() {
        let f = fundamental_rep();
        let r = irrep(Spin::ONE).unwrap();
        let cp = CoproductMap::q_deformed();
        assert!(cp.image(Generator::H, f.module(), f.module()).is_ok());
        assert!(matches!(
            cp.image(Generator::VPlus, f.module(), r.module()),
            Err(Error::UnsupportedRepresentation(_))
        ));
    }

    #[test]
    fn opposite_of_cocommutative_is_itself() {
        let f = fundamental_rep();
        let r = irrep(Spin::ONE).unwrap();
        let cp = CoproductMap::classical();
        for g in Generator::ALL {
            let a = cp.image(g, f.module(), r.module()).unwrap();
            let b = cp.opposite_image(g, f.module(), r.module()).unwrap();
            assert_eq!(a, b, "{g}");
        }
    }

    #[test]
    fn names_parse() {
        for k in CoproductKind::ALL {
            assert_eq!(k.name().parse::<CoproductKind>().unwrap(), k);
        }
    }
}
