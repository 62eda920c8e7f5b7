//! The FRT relation `R L_1 L_2 = L_2 L_1 R` and the coproducts of the
//! entries of `L`.

use crate::error::Result;
use crate::graded::{embed13, gkron, GradedMatrix, ParityVector};
use crate::matrices::{contract_r, f_jordanian, l_plus};
use crate::report::Check;
use crate::reps::{fundamental_rep, Representation};
use crate::twist::coproduct::CoproductMap;
use crate::twist::phi::f1_twist;

/// `R12 L13 L23 = L23 L13 R12` on `C^3 ⊗ C^3 ⊗ V`.
pub fn frt_check(rep: &Representation) -> Result<Check> {
    let p3 = ParityVector::fundamental();
    let pr = rep.parity();
    let l = l_plus(rep.module())?;
    let r12 = gkron(&contract_r()?, &GradedMatrix::identity(pr));
    let l13 = embed13(&l, &p3, &p3, pr);
    let l23 = gkron(&GradedMatrix::identity(&p3), &l);
    let lhs = &(&r12 * &l13) * &l23;
    let rhs = &(&l23 * &l13) * &r12;
    Ok(Check::equal(
        format!(
            "spin {}: R L1 L2 = L2 L1 R ({} entries)",
            rep.spin(),
            lhs.dim() * lhs.dim()
        ),
        &lhs,
        &rhs,
    ))
}

/// Coproducts of `E, V, W, H` on `C^3 ⊗ V`, computed by twisting the
/// primitive coproduct with `F(s) F(j)` and compared with
/// `E ⊗ E`, `V ⊗ E^-1 + 1 ⊗ V`, `W ⊗ 1 + E ⊗ W`, `H ⊗ E^-1 + E ⊗ H - W ⊗ V`.
pub fn check_l_coproducts(rep: &Representation) -> Result<Vec<Check>> {
    let f = fundamental_rep();
    let (m1, m2) = (f.module(), rep.module());
    let twist = &f1_twist(m1, m2)? * &f_jordanian(m1, m2)?;
    let twisted = CoproductMap::classical()
        .tensor(m1, m2)?
        .conjugated(&twist)?;
    let d = twisted.frt_generators()?;
    let a = f.generators();
    let b = rep.generators();
    let one_a = m1.identity();
    let one_b = m2.identity();
    let tag = format!("(1/2,{})", rep.spin());
    Ok(vec![
        Check::equal(format!("Δ(E) = E ⊗ E on {tag}"), &d.e, &gkron(&a.e, &b.e)),
        Check::equal(
            format!("Δ(V) = V ⊗ E^-1 + 1 ⊗ V on {tag}"),
            &d.v,
            &(&gkron(&a.v, &b.e_inv) + &gkron(&one_a, &b.v)),
        ),
        Check::equal(
            format!("Δ(W) = W ⊗ 1 + E ⊗ W on {tag}"),
            &d.w,
            &(&gkron(&a.w, &one_b) + &gkron(&a.e, &b.w)),
        ),
        Check::equal(
            format!("Δ(H) = H ⊗ E^-1 + E ⊗ H - W ⊗ V on {tag}"),
            &d.h,
            &(&(&gkron(&a.h, &b.e_inv) + &gkron(&a.e, &b.h)) - &gkron(&a.w, &b.v)),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{irrep, Spin};

    #[test]
    fn frt_spin_half() {
        let c = frt_check(&fundamental_rep()).unwrap();
        assert!(c.pass, "{}", c.residual_summary);
        assert!(c.name.contains("729 entries"));
    }

    #[test]
    fn l_coproducts_fundamental() {
        for c in check_l_coproducts(&fundamental_rep()).unwrap() {
            assert!(c.pass, "{}: {}", c.name, c.residual_summary);
        }
    }

    #[test]
    fn l_coproducts_spin_one() {
        for c in check_l_coproducts(&irrep(Spin::ONE).unwrap()).unwrap() {
            assert!(c.pass, "{}: {}", c.name, c.residual_summary);
        }
    }
}
