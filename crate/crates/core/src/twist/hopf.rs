//! Coproduct homomorphisms, R-matrix intertwining, twist conjugation,
//! the cocycle equation and coassociativity, all evaluated in modules.

use crate::error::Result;
use crate::graded::{gkron, GradedMatrix};
use crate::report::Check;
use crate::reps::Module;
use crate::twist::coproduct::{CoproductKind, CoproductMap, Generator};

fn dims(ms: &[&Module]) -> String {
    let d: Vec<String> = ms.iter().map(|m| m.dim().to_string()).collect();
    format!("({})", d.join(","))
}

/// Defining relations of the tensor-product module built by `cp`.
pub fn check_homomorphism(cp: &CoproductMap, m1: &Module, m2: &Module) -> Result<Vec<Check>> {
    let t = cp.tensor(m1, m2)?;
    let q = cp.kind() == CoproductKind::QDeformed;
    let tag = dims(&[m1, m2]);
    Ok(t.relation_residuals(q)?
        .iter()
        .map(|(n, r)| Check::vanishing(format!("{} on {tag}: {n}", cp.name()), r))
        .collect())
}

/// `R Δ(x) = Δ^op(x) R` for every generator `cp` provides.
pub fn check_r_intertwines(
    label: &str,
    r: &GradedMatrix,
    cp: &CoproductMap,
    m1: &Module,
    m2: &Module,
) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for g in cp.generators() {
        if g == Generator::VMinus && (m1.v_minus().is_none() || m2.v_minus().is_none()) {
            continue;
        }
        let d = cp.image(g, m1, m2)?;
        let op = cp.opposite_image(g, m1, m2)?;
        let res = &(r * &d) - &(&op * r);
        out.push(Check::vanishing(
            format!(
                "{label} intertwines {} on {}: {g}",
                cp.name(),
                dims(&[m1, m2])
            ),
            &res,
        ));
    }
    Ok(out)
}

/// `F Δ(x) F^{-1}` for every generator `cp` provides on the pair.
pub fn twist_conjugate(
    f: &GradedMatrix,
    cp: &CoproductMap,
    m1: &Module,
    m2: &Module,
) -> Result<Vec<(Generator, GradedMatrix)>> {
    let fi = f.inverse()?;
    let mut out = Vec::new();
    for g in cp.generators() {
        if g == Generator::VMinus && (m1.v_minus().is_none() || m2.v_minus().is_none()) {
            continue;
        }
        out.push((g, &(f * &cp.image(g, m1, m2)?) * &fi));
    }
    Ok(out)
}

/// `F from(x) F^{-1} = to(x)` for every generator in `to`.
pub fn check_twist_conjugation(
    label: &str,
    f: &GradedMatrix,
    from: &CoproductMap,
    to: &CoproductMap,
    m1: &Module,
    m2: &Module,
) -> Result<Vec<Check>> {
    let conj = twist_conjugate(f, from, m1, m2)?;
    let mut out = Vec::new();
    for (g, img) in conj {
        if !to.supports(g) {
            continue;
        }
        let target = to.image(g, m1, m2)?;
        out.push(Check::equal(
            format!(
                "{label} maps {} to {} on {}: {g}",
                from.name(),
                to.name(),
                dims(&[m1, m2])
            ),
            &img,
            &target,
        ));
    }
    Ok(out)
}

/// A twist given on any pair of modules.
pub type TwistBuilder<'a> = dyn Fn(&Module, &Module) -> Result<GradedMatrix> + 'a;

/// `F_12 (Δ ⊗ id)(F) = F_23 (id ⊗ Δ)(F)` on `V1 ⊗ V2 ⊗ V3`.
pub fn check_cocycle(
    label: &str,
    twist: &TwistBuilder<'_>,
    cp: &CoproductMap,
    m1: &Module,
    m2: &Module,
    m3: &Module,
) -> Result<Check> {
    let f12 = gkron(&twist(m1, m2)?, &m3.identity());
    let f23 = gkron(&m1.identity(), &twist(m2, m3)?);
    let left = twist(&cp.tensor(m1, m2)?, m3)?;
    let right = twist(m1, &cp.tensor(m2, m3)?)?;
    Ok(Check::equal(
        format!("{label} cocycle on {}", dims(&[m1, m2, m3])),
        &(&f12 * &left),
        &(&f23 * &right),
    ))
}

/// `(Δ ⊗ id) Δ = (id ⊗ Δ) Δ` on the generators of `cp`.
pub fn check_coassociativity(
    cp: &CoproductMap,
    m1: &Module,
    m2: &Module,
    m3: &Module,
) -> Result<Vec<Check>> {
    let left = cp.tensor(m1, m2)?;
    let right = cp.tensor(m2, m3)?;
    let mut out = Vec::new();
    for g in cp.generators() {
        if g == Generator::VMinus && [m1, m2, m3].iter().any(|m| m.v_minus().is_none()) {
            continue;
        }
        let a = cp.image(g, &left, m3)?;
        let b = cp.image(g, m1, &right)?;
        out.push(Check::equal(
            format!(
                "{} coassociative on {}: {g}",
                cp.name(),
                dims(&[m1, m2, m3])
            ),
            &a,
            &b,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{contract_r, f_jordanian, f_super_fund, kr_rmatrix};
    use crate::reps::{fundamental_rep, irrep, Spin};
    use crate::scalar::Scalar;

    fn all_pass(cs: &[Check]) {
        for c in cs {
            assert!(c.pass, "{}: {}", c.name, c.residual_summary);
        }
    }

    #[test]
    fn homomorphisms() {
        let f = fundamental_rep();
        let r = irrep(Spin::ONE).unwrap();
        for cp in [CoproductMap::classical(), CoproductMap::jordanian()] {
            let c = check_homomorphism(&cp, f.module(), f.module()).unwrap();
            assert_eq!(c.len(), 3);
            all_pass(&c);
            all_pass(&check_homomorphism(&cp, f.module(), r.module()).unwrap());
        }
        let q = check_homomorphism(&CoproductMap::q_deformed(), f.module(), f.module()).unwrap();
        assert_eq!(q.len(), 3);
        all_pass(&q);
        let sj =
            check_homomorphism(&CoproductMap::super_jordanian(), f.module(), f.module()).unwrap();
        assert_eq!(sj.len(), 1);
        all_pass(&sj);
    }

    #[test]
    fn r_matrices_intertwine() {
        let f = fundamental_rep().module().clone();
        all_pass(
            &check_r_intertwines("KR", &kr_rmatrix(), &CoproductMap::q_deformed(), &f, &f).unwrap(),
        );
        let sj = check_r_intertwines(
            "R(sj)",
            &contract_r().unwrap(),
            &CoproductMap::super_jordanian(),
            &f,
            &f,
        )
        .unwrap();
        assert_eq!(sj.len(), 2);
        all_pass(&sj);
        let id = GradedMatrix::identity(&f.parity().tensor(f.parity()));
        all_pass(&check_r_intertwines("I", &id, &CoproductMap::classical(), &f, &f).unwrap());
        // The KR matrix does not intertwine the primitive coproduct.
        let bad =
            check_r_intertwines("KR", &kr_rmatrix(), &CoproductMap::classical(), &f, &f).unwrap();
        assert!(bad.iter().any(|c| !c.pass));
    }

    #[test]
    fn jordanian_twist_conjugation() {
        let f = fundamental_rep();
        let r = irrep(Spin::ONE).unwrap();
        for m2 in [f.module(), r.module()] {
            let fj = f_jordanian(f.module(), m2).unwrap();
            let c = check_twist_conjugation(
                "F(j)",
                &fj,
                &CoproductMap::classical(),
                &CoproductMap::jordanian(),
                f.module(),
                m2,
            )
            .unwrap();
            assert_eq!(c.len(), 3);
            all_pass(&c);
        }
    }

    #[test]
    fn super_jordanian_twist_conjugation_in_fundamental() {
        let f = fundamental_rep();
        let m = f.module();
        let fsj = &f_super_fund() * &f_jordanian(m, m).unwrap();
        let c = check_twist_conjugation(
            "F(s) F(j)",
            &fsj,
            &CoproductMap::classical(),
            &CoproductMap::super_jordanian(),
            m,
            m,
        )
        .unwrap();
        assert_eq!(c.len(), 2);
        all_pass(&c);
    }

    #[test]
    fn cocycles() {
        let f = fundamental_rep();
        let r = irrep(Spin::ONE).unwrap();
        let cp = CoproductMap::classical();
        let fj = |a: &Module, b: &Module| f_jordanian(a, b);
        let (m, s1) = (f.module(), r.module());
        assert!(check_cocycle("F(j)", &fj, &cp, m, m, m).unwrap().pass);
        assert!(check_cocycle("F(j)", &fj, &cp, m, m, s1).unwrap().pass);
        let one =
            |a: &Module, b: &Module| Ok(GradedMatrix::identity(&a.parity().tensor(b.parity())));
        assert!(check_cocycle("I", &one, &cp, m, m, m).unwrap().pass);
    }

    #[test]
    fn coassociativity() {
        let f = fundamental_rep();
        let m = f.module();
        for cp in [CoproductMap::classical(), CoproductMap::jordanian()] {
            let c = check_coassociativity(&cp, m, m, m).unwrap();
            assert_eq!(c.len(), 3);
            all_pass(&c);
        }
    }

    #[test]
    fn conjugation_preserves_relations() {
        // A random-looking unipotent twist keeps the tensor module a module.
        let f = fundamental_rep();
        let m = f.module();
        let t = CoproductMap::classical().tensor(m, m).unwrap();
        let p = t.parity().clone();
        let mut u = GradedMatrix::identity(&p);
        u.set(0, 4, Scalar::ratio(3, 7));
        u.set(1, 8, Scalar::xi());
        u.set(2, 6, Scalar::ratio(-5, 2));
        let c = t.conjugated(&u).unwrap();
        for (n, r) in c.relation_residuals(false).unwrap() {
            assert!(r.is_zero(), "{n}");
        }
    }
}
