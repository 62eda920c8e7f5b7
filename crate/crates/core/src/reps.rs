//! Finite-dimensional irreducible modules of osp(1|2) and the FRT generators
//! `H, E, V, W` realized in them.
//!
//! Weight basis `e_0, ..., e_{4j}` with `h e_k = (2j - k) e_k`; `v+` raises by
//! one step, `v-` lowers, and `e_k` has parity `k mod 2`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graded::{GradedMatrix, ParityVector};
use crate::report::Check;
use crate::scalar::{parse_rational, Scalar};

/// A spin `j` in `{1/2, 1, 3/2, 2}`, stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin(u32);

impl Spin {
    pub const HALF: Spin = Spin(1);
    pub const ONE: Spin = Spin(2);
    pub const THREE_HALVES: Spin = Spin(3);
    pub const TWO: Spin = Spin(4);

    pub fn from_twice(twice: u32) -> Result<Spin> {
        if (1..=4).contains(&twice) {
            Ok(Spin(twice))
        } else {
            Err(Error::UnsupportedSpin(format!("{twice}/2")))
        }
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    /// `4j + 1`.
    pub fn dim(self) -> usize {
        2 * self.0 as usize + 1
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Spin> {
        let r = parse_rational(s.trim()).map_err(|_| Error::UnsupportedSpin(s.to_string()))?;
        let twice = &r * BigRational::from_integer(2.into());
        if !twice.is_integer() {
            return Err(Error::UnsupportedSpin(s.to_string()));
        }
        let t = twice
            .to_integer()
            .to_u32()
            .ok_or_else(|| Error::UnsupportedSpin(s.to_string()))?;
        Spin::from_twice(t).map_err(|_| Error::UnsupportedSpin(s.to_string()))
    }
}

/// The FRT generators `H, E, V, W` (and `E^{-1}`) as matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrtGenerators {
    pub h: GradedMatrix,
    pub e: GradedMatrix,
    pub e_inv: GradedMatrix,
    pub v: GradedMatrix,
    pub w: GradedMatrix,
}

/// A graded module given by the images of `h`, `v+` and (optionally) `v-`.
///
/// Tensor products under a twisted coproduct are modules too; `v-` is absent
/// when the coproduct does not provide it in closed form.
#[derive(Debug)]
pub struct Module {
    h: GradedMatrix,
    v_plus: GradedMatrix,
    v_minus: Option<GradedMatrix>,
    sigma: OnceLock<GradedMatrix>,
}

impl Clone for Module {
    fn clone(&self) -> Self {
        Module {
            h: self.h.clone(),
            v_plus: self.v_plus.clone(),
            v_minus: self.v_minus.clone(),
            sigma: self.sigma.clone(),
        }
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h && self.v_plus == other.v_plus && self.v_minus == other.v_minus
    }
}

impl Module {
    pub fn new(h: GradedMatrix, v_plus: GradedMatrix, v_minus: Option<GradedMatrix>) -> Self {
        assert_eq!(h.dim(), v_plus.dim());
        Module {
            h,
            v_plus,
            v_minus,
            sigma: OnceLock::new(),
        }
    }

    pub fn parity(&self) -> &ParityVector {
        self.h.parity()
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn identity(&self) -> GradedMatrix {
        GradedMatrix::identity(self.parity())
    }

    pub fn h(&self) -> &GradedMatrix {
        &self.h
    }

    pub fn v_plus(&self) -> &GradedMatrix {
        &self.v_plus
    }

    pub fn v_minus(&self) -> Option<&GradedMatrix> {
        self.v_minus.as_ref()
    }

    /// `X+ = 4 v+^2`.
    pub fn x_plus(&self) -> GradedMatrix {
        (&self.v_plus * &self.v_plus).scale(&Scalar::from_int(4))
    }

    /// `X- = -4 v-^2`.
    pub fn x_minus(&self) -> Option<GradedMatrix> {
        self.v_minus
            .as_ref()
            .map(|v| (v * v).scale(&Scalar::from_int(-4)))
    }

    /// `sigma = (1/2) log(1 + 2 xi X+)`.
    pub fn sigma(&self) -> Result<GradedMatrix> {
        if let Some(s) = self.sigma.get() {
            return Ok(s.clone());
        }
        let arg = &self.identity()
            + &self
                .x_plus()
                .scale(&Scalar::from_int(2))
                .scale(&Scalar::xi());
        let s = arg.log_unipotent()?.scale(&Scalar::ratio(1, 2));
        Ok(self.sigma.get_or_init(|| s).clone())
    }

    /// `E^k = exp(k sigma)`.
    pub fn e_power(&self, k: i32) -> Result<GradedMatrix> {
        if k == 0 {
            return Ok(self.identity());
        }
        self.sigma()?
            .scale(&Scalar::from_int(k as i64))
            .exp_nilpotent()
    }

    /// `H = xi h E - 2 xi^2 v^2 E^{-1}`, `V = -2 xi v E^{-1}`, `W = 2 xi v`.
    pub fn frt_generators(&self) -> Result<FrtGenerators> {
        let xi = Scalar::xi();
        let e = self.e_power(1)?;
        let e_inv = self.e_power(-1)?;
        let v = &self.v_plus;
        let v2 = v * v;
        let h = &(&self.h * &e).scale(&xi)
            - &(&v2 * &e_inv).scale(&(&xi * &xi).scale(&BigRational::from_integer(2.into())));
        let big_v = (v * &e_inv).scale(&(&xi * &Scalar::from_int(-2)));
        let w = v.scale(&(&xi * &Scalar::from_int(2)));
        Ok(FrtGenerators {
            h,
            e,
            e_inv,
            v: big_v,
            w,
        })
    }

    /// Conjugate every generator image by `f`.
    pub fn conjugated(&self, f: &GradedMatrix) -> Result<Module> {
        let f_inv = f.inverse()?;
        let conj = |m: &GradedMatrix| &(f * m) * &f_inv;
        Ok(Module::new(
            conj(&self.h),
            conj(&self.v_plus),
            self.v_minus.as_ref().map(conj),
        ))
    }

    /// `q^{kh/2} = s^{kh}`; needs `h` diagonal with integer eigenvalues.
    pub fn q_half_power(&self, k: i32) -> Result<GradedMatrix> {
        let n = self.dim();
        let mut diag = Vec::with_capacity(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.h.get(i, j).is_zero() {
                    return Err(Error::UnsupportedRepresentation(
                        "q^{h/2} needs a diagonal h".to_string(),
                    ));
                }
            }
            let m = self
                .h
                .get(i, i)
                .as_rational()
                .filter(|r| r.is_integer())
                .and_then(|r| r.to_integer().to_i32())
                .ok_or_else(|| {
                    Error::UnsupportedRepresentation("h must have integer eigenvalues".to_string())
                })?;
            diag.push(Scalar::s().powi(k * m));
        }
        Ok(GradedMatrix::diagonal(self.parity(), diag))
    }

    /// Residuals of the defining relations
    /// `[h, v+] = v+`, `[h, v-] = -v-`, `[v+, v-] = -h/4`
    /// (or its q-form `-(1/4)(q^h - q^{-h})/(q - q^{-1})`).
    pub fn relation_residuals(&self, q_deformed: bool) -> Result<Vec<(String, GradedMatrix)>> {
        let mut out = Vec::new();
        out.push((
            "[h, v+] = v+".to_string(),
            &self.h.commutator(&self.v_plus) - &self.v_plus,
        ));
        if let Some(vm) = &self.v_minus {
            out.push(("[h, v-] = -v-".to_string(), &self.h.commutator(vm) + vm));
            let anti = &(&self.v_plus * vm) + &(vm * &self.v_plus);
            if q_deformed {
                let qh = self.q_half_power(2)?;
                let qmh = self.q_half_power(-2)?;
                let q = Scalar::q();
                let denom = (&q - &q.inv()?).scale(&BigRational::from_integer(4.into()));
                let rhs = (&qh - &qmh).scale(&denom.inv()?);
                out.push((
                    "[v+, v-] = -(q^h - q^-h)/(4(q - q^-1))".to_string(),
                    &anti + &rhs,
                ));
            } else {
                out.push((
                    "[v+, v-] = -h/4".to_string(),
                    &anti + &self.h.scale(&Scalar::ratio(1, 4)),
                ));
            }
        }
        Ok(out)
    }
}

/// An irreducible module of spin `j` with its derived matrices cached.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    spin: Spin,
    module: Module,
    x_plus: GradedMatrix,
    x_minus: GradedMatrix,
    sigma: GradedMatrix,
    generators: FrtGenerators,
}

impl Representation {
    fn from_module(spin: Spin, module: Module) -> Result<Self> {
        let x_plus = module.x_plus();
        let x_minus = module.x_minus().expect("irreducible modules carry v-");
        let sigma = module.sigma()?;
        let generators = module.frt_generators()?;
        let rep = Representation {
            spin,
            module,
            x_plus,
            x_minus,
            sigma,
            generators,
        };
        let failures: Vec<String> = rep
            .invariant_checks()
            .into_iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect();
        if !failures.is_empty() {
            return Err(Error::InconsistentRepresentation(failures.join(", ")));
        }
        Ok(rep)
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn parity(&self) -> &ParityVector {
        self.module.parity()
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn h(&self) -> &GradedMatrix {
        self.module.h()
    }

    pub fn v_plus(&self) -> &GradedMatrix {
        self.module.v_plus()
    }

    pub fn v_minus(&self) -> &GradedMatrix {
        self.module.v_minus().expect("irreducible modules carry v-")
    }

    pub fn x_plus(&self) -> &GradedMatrix {
        &self.x_plus
    }

    pub fn x_minus(&self) -> &GradedMatrix {
        &self.x_minus
    }

    pub fn sigma(&self) -> &GradedMatrix {
        &self.sigma
    }

    pub fn e(&self) -> &GradedMatrix {
        &self.generators.e
    }

    pub fn e_inv(&self) -> &GradedMatrix {
        &self.generators.e_inv
    }

    pub fn generators(&self) -> &FrtGenerators {
        &self.generators
    }

    /// Every structural invariant of the module as a named check.
    pub fn invariant_checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        match self.module.relation_residuals(false) {
            Ok(rs) => out.extend(rs.iter().map(|(n, r)| Check::vanishing(n.clone(), r))),
            Err(e) => out.push(Check::errored("defining relations", &e)),
        }
        let hx = &self.h().commutator(&self.x_plus) - &self.x_plus.scale(&Scalar::from_int(2));
        out.push(Check::vanishing("[h, X+] = 2 X+", &hx));
        let strictly_upper = self.x_plus.nonzero().all(|(i, j, _)| j > i)
            && self.v_plus().nonzero().all(|(i, j, _)| j == i + 1);
        out.push(Check::new(
            "X+ strictly upper triangular",
            strictly_upper,
            "",
        ));
        let parity_ok = (0..self.dim()).all(|k| {
            let weight = self
                .h()
                .get(k, k)
                .as_rational()
                .unwrap_or_else(BigRational::zero);
            let expected = (BigRational::from_integer((self.spin.twice() as i64).into()) - weight)
                .to_integer();
            let expected = (expected % 2u32).to_u8().unwrap_or(2);
            self.parity().get(k) == expected
        });
        out.push(Check::new("parity = (2j - weight) mod 2", parity_ok, ""));
        let idx = self.v_plus().nilpotency_index();
        out.push(Check::new(
            "v+ nilpotency index = 4j + 1",
            idx == Some(self.dim()),
            format!("{idx:?}"),
        ));
        let e2 = &self.generators.e * &self.generators.e;
        let target =
            &self.module.identity() + &self.x_plus.scale(&Scalar::from_int(2)).scale(&Scalar::xi());
        out.push(Check::equal("E^2 = 1 + 2 xi X+", &e2, &target));
        out
    }
}

/// The three-dimensional module: `h = diag(1, 0, -1)`,
/// `v+ = (E12 + E23)/2`, `v- = (-E21 + E32)/2`, so `X+ = E13`.
pub fn fundamental_rep() -> Representation {
    let p = ParityVector::fundamental();
    let half = Scalar::ratio(1, 2);
    let h = GradedMatrix::diagonal(
        &p,
        vec![Scalar::one(), Scalar::zero(), Scalar::from_int(-1)],
    );
    let v_plus = GradedMatrix::from_entries(&p, [(1, 2, half.clone()), (2, 3, half.clone())]);
    let v_minus = GradedMatrix::from_entries(&p, [(2, 1, -&half), (3, 2, half)]);
    Representation::from_module(Spin::HALF, Module::new(h, v_plus, Some(v_minus)))
        .expect("fundamental module is consistent")
}

/// Spin-`j` irreducible module. `v+` has all superdiagonal entries `1/2`;
/// the `v-` entries follow from `v+ v- + v- v+ = -h/4` row by row.
pub fn irrep(spin: Spin) -> Result<Representation> {
    let n = spin.dim();
    let p = ParityVector::new((0..n).map(|k| (k % 2) as u8).collect());
    let weights: Vec<i64> = (0..n).map(|k| spin.twice() as i64 - k as i64).collect();
    let quarter = |m: i64| BigRational::new(m.into(), 4.into());
    let half = BigRational::new(1.into(), 2.into());

    // p_k = c_k d_k with c_k = 1/2 the v+ entry and d_k the v- entry.
    let mut products = Vec::with_capacity(n - 1);
    let mut prev = BigRational::zero();
    for &m in weights.iter().take(n - 1) {
        let pk = -quarter(m) - &prev;
        if pk.is_zero() {
            return Err(Error::InconsistentRepresentation(format!(
                "vanishing v- entry for spin {spin}"
            )));
        }
        products.push(pk.clone());
        prev = pk;
    }
    if prev != -quarter(weights[n - 1]) {
        return Err(Error::InconsistentRepresentation(format!(
            "lowest-weight condition fails for spin {spin}"
        )));
    }

    let h = GradedMatrix::diagonal(&p, weights.iter().map(|&m| Scalar::from_int(m)).collect());
    let v_plus = GradedMatrix::from_entries(
        &p,
        (0..n - 1).map(|k| (k + 1, k + 2, Scalar::from_rational(half.clone()))),
    );
    let v_minus = GradedMatrix::from_entries(
        &p,
        products
            .iter()
            .enumerate()
            .map(|(k, pk)| (k + 2, k + 1, Scalar::from_rational(pk / &half))),
    );
    Representation::from_module(spin, Module::new(h, v_plus, Some(v_minus)))
}

/// The eight displayed relations of the FRT algebra and the two dependencies,
/// evaluated in a module.
pub fn lt_relation_residuals(g: &FrtGenerators) -> Vec<(String, GradedMatrix)> {
    let xi = Scalar::xi();
    let one = GradedMatrix::identity(g.e.parity());
    let (e, ei, h, v, w) = (&g.e, &g.e_inv, &g.h, &g.v, &g.w);
    let e2 = e * e;
    let ei2 = ei * ei;
    let two = Scalar::from_int(2);
    vec![
        ("[E, V] = 0".into(), e.commutator(v)),
        ("[E, W] = 0".into(), e.commutator(w)),
        (
            "[H, E] = xi (E^2 - 1)".into(),
            &h.commutator(e) - &(&e2 - &one).scale(&xi),
        ),
        (
            "[H, V] = xi (V (E^-1 - E) - W)".into(),
            &h.commutator(v) - &(&(v * &(ei - e)) - w).scale(&xi),
        ),
        (
            "[V, V] = xi (1 - E^-2)".into(),
            &(v * v).scale(&two) - &(&one - &ei2).scale(&xi),
        ),
        (
            "[W, W] = xi (E^2 - 1)".into(),
            &(w * w).scale(&two) - &(&e2 - &one).scale(&xi),
        ),
        (
            "VW + WV = -xi (E - E^-1)".into(),
            &(&(v * w) + &(w * v)) + &(e - ei).scale(&xi),
        ),
        (
            "V^2 + W^2 = xi/2 (E^2 - E^-2)".into(),
            &(&(v * v) + &(w * w)) - &(&e2 - &ei2).scale(&(&xi * &Scalar::ratio(1, 2))),
        ),
        ("V = -W E^-1".into(), v + &(w * ei)),
        (
            "E^2 = 1 + 2 W^2 / xi".into(),
            &(&e2 - &one).scale(&xi) - &(w * w).scale(&two),
        ),
    ]
}

pub fn check_lt_relations(rep: &Representation) -> Vec<Check> {
    let mut out: Vec<Check> = lt_relation_residuals(rep.generators())
        .iter()
        .map(|(n, r)| Check::vanishing(format!("spin {}: {n}", rep.spin()), r))
        .collect();
    // V^2 + W^2 follows from the [V,V] and [W,W] relations: the right sides add up.
    let g = rep.generators();
    let one = GradedMatrix::identity(rep.parity());
    let half_xi = Scalar::xi().scale(&BigRational::new(1.into(), 2.into()));
    let implied = &(&(&one - &(&g.e_inv * &g.e_inv)) + &(&(&g.e * &g.e) - &one)).scale(&half_xi)
        - &(&(&g.e * &g.e) - &(&g.e_inv * &g.e_inv)).scale(&half_xi);
    out.push(Check::vanishing(
        format!(
            "spin {}: V^2 + W^2 relation implied by [V,V] and [W,W]",
            rep.spin()
        ),
        &implied,
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_matches_irrep_half() {
        let f = fundamental_rep();
        let r = irrep(Spin::HALF).unwrap();
        assert_eq!(f, r);
        assert_eq!(f.x_plus(), &GradedMatrix::unit(f.parity(), 1, 3));
    }

    #[test]
    fn bidiagonal_ansatz_family() {
        // v+ = a E12 + b E23, v- = c E21 + d E32 with 4 v+^2 = E13 forces ab = 1/4;
        // the anticommutator then forces ac = -1/4 and bd = 1/4.
        let p = ParityVector::fundamental();
        let h = GradedMatrix::diagonal(
            &p,
            vec![Scalar::one(), Scalar::zero(), Scalar::from_int(-1)],
        );
        for a in [
            Scalar::ratio(1, 2),
            Scalar::from_int(2),
            Scalar::ratio(-1, 3),
        ] {
            let b = Scalar::ratio(1, 4).checked_div(&a).unwrap();
            let c = Scalar::ratio(-1, 4).checked_div(&a).unwrap();
            let d = Scalar::ratio(1, 4).checked_div(&b).unwrap();
            let m = Module::new(
                h.clone(),
                GradedMatrix::from_entries(&p, [(1, 2, a.clone()), (2, 3, b.clone())]),
                Some(GradedMatrix::from_entries(&p, [(2, 1, c), (3, 2, d)])),
            );
            for (name, r) in m.relation_residuals(false).unwrap() {
                assert!(r.is_zero(), "{name}");
            }
            assert_eq!(m.x_plus(), GradedMatrix::unit(&p, 1, 3));
            if a == b {
                assert_eq!(a, Scalar::ratio(1, 2));
            }
        }
    }

    #[test]
    fn spin_one_shape() {
        let r = irrep(Spin::ONE).unwrap();
        assert_eq!(r.dim(), 5);
        assert_eq!(r.parity().bits(), &[0, 1, 0, 1, 0]);
        assert_eq!(r.v_plus().nilpotency_index(), Some(5));
        assert_eq!(r.x_plus().rank(), 3);
        assert_eq!(r.x_plus().pow(2).rank(), 1);
        assert!(r.x_plus().pow(3).is_zero());
    }

    #[test]
    fn invariants_hold_for_all_supported_spins() {
        for t in 1..=4 {
            let r = irrep(Spin::from_twice(t).unwrap()).unwrap();
            for c in r.invariant_checks() {
                assert!(c.pass, "spin {}: {}", r.spin(), c.name);
            }
        }
    }

    #[test]
    fn unsupported_spin() {
        assert!(Spin::from_twice(5).is_err());
        assert!("5/2".parse::<Spin>().is_err());
        assert!("1/3".parse::<Spin>().is_err());
        assert_eq!("3/2".parse::<Spin>().unwrap(), Spin::THREE_HALVES);
        assert_eq!(Spin::ONE.to_string(), "1");
        assert_eq!(Spin::HALF.to_string(), "1/2");
    }

    #[test]
    fn sigma_in_fundamental() {
        let f = fundamental_rep();
        let e13 = GradedMatrix::unit(f.parity(), 1, 3).scale(&Scalar::xi());
        assert_eq!(f.sigma(), &e13);
        assert_eq!(f.e(), &(&GradedMatrix::identity(f.parity()) + &e13));
    }

    #[test]
    fn sigma_at_zero_xi() {
        let zero = crate::scalar::Bindings::from([(crate::scalar::Var::Xi, Scalar::zero())]);
        let r = irrep(Spin::ONE).unwrap();
        assert!(r.sigma().substitute(&zero).unwrap().is_zero());
        assert!(r.e().substitute(&zero).unwrap().is_identity());
        let g = r.generators();
        assert!(g.h.substitute(&zero).unwrap().is_zero());
        assert!(g.v.substitute(&zero).unwrap().is_zero());
        assert!(g.w.substitute(&zero).unwrap().is_zero());
    }

    #[test]
    fn frt_generators_in_fundamental() {
        let f = fundamental_rep();
        let p = f.parity();
        let g = f.generators();
        let e12_23 = &GradedMatrix::unit(p, 1, 2) + &GradedMatrix::unit(p, 2, 3);
        assert_eq!(g.w, e12_23.scale(&Scalar::xi()));
        assert_eq!(g.v, e12_23.scale(&-Scalar::xi()));
    }

    #[test]
    fn e_inverse_two_ways() {
        for t in 1..=3 {
            let r = irrep(Spin::from_twice(t).unwrap()).unwrap();
            assert_eq!(r.e().inverse().unwrap(), *r.e_inv());
        }
    }

    #[test]
    fn lt_relations_spin_half_and_one() {
        for spin in [Spin::HALF, Spin::ONE] {
            for c in check_lt_relations(&irrep(spin).unwrap()) {
                assert!(c.pass, "{}: {}", c.name, c.residual_summary);
            }
        }
    }
}
