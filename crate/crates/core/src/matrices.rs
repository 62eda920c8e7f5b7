//! The explicit 9x9 (and 3x3) matrices of the deformation and the identities
//! relating them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graded::{conjugate_flip, gkron, GradedMatrix, ParityVector};
use crate::report::Check;
use crate::reps::{fundamental_rep, Module};
use crate::scalar::{contraction_binding, Scalar, Var};

fn fund() -> ParityVector {
    ParityVector::fundamental()
}

/// The `U_q(osp(1|2))` R-matrix on `C^3 ⊗ C^3`, with `q = s^2`:
/// `a = d = omega`, `b = c = -omega/s`, `e = omega (1 + 1/q)`.
pub fn kr_rmatrix() -> GradedMatrix {
    let q = Scalar::q();
    let qi = q.inv().expect("q is nonzero");
    let w = Scalar::omega();
    let b = -&w.checked_div(&Scalar::s()).expect("s is nonzero");
    let e = &w * &(&Scalar::one() + &qi);
    let diag = [
        &q,
        &Scalar::one(),
        &qi,
        &Scalar::one(),
        &Scalar::one(),
        &Scalar::one(),
        &qi,
        &Scalar::one(),
        &q,
    ];
    let mut entries: Vec<(usize, usize, Scalar)> = diag
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1, i + 1, (*v).clone()))
        .collect();
    entries.extend([
        (2, 4, w.clone()),
        (3, 5, b.clone()),
        (3, 7, e),
        (5, 7, b),
        (6, 8, w),
    ]);
    GradedMatrix::from_entries(&fund().tensor(&fund()), entries)
}

/// `M = I + theta X+` in the fundamental module.
pub fn m_matrix() -> GradedMatrix {
    let p = fund();
    &GradedMatrix::identity(&p) + &fundamental_rep().x_plus().scale(&Scalar::theta())
}

/// Which side of the similarity transform carries the inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `G R G^{-1}`
    Forward,
    /// `G^{-1} R G`
    Backward,
}

/// `G R G^{-1}` (or `G^{-1} R G`) with `G = M ⊗ M`.
pub fn transform_r_with(orientation: Orientation) -> GradedMatrix {
    let m = m_matrix();
    let g = gkron(&m, &m);
    let gi = g.inverse().expect("M ⊗ M is unipotent");
    let r = kr_rmatrix();
    match orientation {
        Orientation::Forward => &(&g * &r) * &gi,
        Orientation::Backward => &(&gi * &r) * &g,
    }
}

/// The similarity-transformed R-matrix.
pub fn transform_r() -> GradedMatrix {
    transform_r_with(Orientation::Forward)
}

/// Contraction: `theta = xi / omega`, then `s -> 1`.
pub fn contract_r() -> Result<GradedMatrix> {
    contract(&transform_r())
}

pub fn contract(r: &GradedMatrix) -> Result<GradedMatrix> {
    r.substitute(&contraction_binding())?.limit_at_one()
}

/// The jordanian twist `exp(h ⊗ sigma)` on `V1 ⊗ V2`.
pub fn f_jordanian(m1: &Module, m2: &Module) -> Result<GradedMatrix> {
    gkron(m1.h(), &m2.sigma()?).exp_nilpotent()
}

/// The super-twist in the fundamental pair, as a literal matrix.
pub fn f_super_fund() -> GradedMatrix {
    let xi = Scalar::xi();
    let half = Scalar::ratio(1, 2);
    let x2 = &xi * &half;
    let entries = [
        (1, 5, x2.clone()),
        (1, 9, &(&xi * &xi) * &Scalar::ratio(-1, 8)),
        (2, 6, x2.clone()),
        (4, 8, -&x2),
        (5, 9, -&x2),
    ];
    let p = fund().tensor(&fund());
    &GradedMatrix::identity(&p) + &GradedMatrix::from_entries(&p, entries)
}

/// The upper triangular operator matrix with blocks
/// `(E^-1, V, H; 0, 1, W; 0, 0, E)` acting on `C^3 ⊗ V`.
pub fn l_plus(module: &Module) -> Result<GradedMatrix> {
    let g = module.frt_generators()?;
    let n = module.dim();
    let one = module.identity();
    let blocks = [
        (0, 0, &g.e_inv),
        (0, 1, &g.v),
        (0, 2, &g.h),
        (1, 1, &one),
        (1, 2, &g.w),
        (2, 2, &g.e),
    ];
    let p = fund().tensor(module.parity());
    let mut out = GradedMatrix::zeros_on(&p);
    for (bi, bj, block) in blocks {
        for (a, b, v) in block.nonzero() {
            out.set(bi * n + a, bj * n + b, v.clone());
        }
    }
    Ok(out)
}

/// The named matrices that can be emitted and compared against fixtures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedMatrix {
    KrR,
    M,
    RTransformed,
    RSj,
    FJ,
    FS,
    LPlus,
}

impl NamedMatrix {
    pub const ALL: [NamedMatrix; 7] = [
        NamedMatrix::KrR,
        NamedMatrix::M,
        NamedMatrix::RTransformed,
        NamedMatrix::RSj,
        NamedMatrix::FJ,
        NamedMatrix::FS,
        NamedMatrix::LPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedMatrix::KrR => "kr",
            NamedMatrix::M => "m",
            NamedMatrix::RTransformed => "transformed",
            NamedMatrix::RSj => "sjr",
            NamedMatrix::FJ => "fj",
            NamedMatrix::FS => "fs",
            NamedMatrix::LPlus => "lplus",
        }
    }

    /// Variables the matrix depends on.
    pub fn variables(self) -> &'static [Var] {
        match self {
            NamedMatrix::KrR => &[Var::S],
            NamedMatrix::M => &[Var::Theta],
            NamedMatrix::RTransformed => &[Var::S, Var::Theta],
            _ => &[Var::Xi],
        }
    }

    pub fn build(self) -> Result<GradedMatrix> {
        Ok(match self {
            NamedMatrix::KrR => kr_rmatrix(),
            NamedMatrix::M => m_matrix(),
            NamedMatrix::RTransformed => transform_r(),
            NamedMatrix::RSj => contract_r()?,
            NamedMatrix::FJ => {
                let f = fundamental_rep();
                f_jordanian(f.module(), f.module())?
            }
            NamedMatrix::FS => f_super_fund(),
            NamedMatrix::LPlus => l_plus(fundamental_rep().module())?,
        })
    }
}

impl fmt::Display for NamedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedMatrix::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown matrix '{s}'")))
    }
}

/// `R_21 R = 1`.
pub fn check_triangular(name: &str, r: &GradedMatrix, leg: &ParityVector) -> Check {
    match conjugate_flip(r, leg) {
        Ok(r21) => {
            let prod = &r21 * r;
            Check::vanishing(
                format!("{name}: R21 R = 1"),
                &(&prod - &GradedMatrix::identity(r.parity())),
            )
        }
        Err(e) => Check::errored(format!("{name}: R21 R = 1"), &e),
    }
}

/// Twist factorization of the contracted R-matrix in the fundamental pair.
pub fn check_factorization() -> Result<Vec<Check>> {
    let p = fund();
    let f = fundamental_rep();
    let fs = f_super_fund();
    let fj = f_jordanian(f.module(), f.module())?;
    let fs21 = conjugate_flip(&fs, &p)?;
    let fj21 = conjugate_flip(&fj, &p)?;
    let fj_inv = fj.inverse()?;
    let fs_inv = fs.inverse()?;
    let rsj = contract_r()?;

    let product = &(&(&fs21 * &fj21) * &fj_inv) * &fs_inv;
    let jordanian = &fj21 * &fj_inv;
    let mut out = vec![
        Check::equal("F21(s) F21(j) F(j)^-1 F(s)^-1 = R(sj)", &product, &rsj),
        Check::equal("F21(s) = F(s)^-1", &fs21, &fs_inv),
        check_triangular("jordanian factor F21(j) F(j)^-1", &jordanian, &p),
    ];
    let differs = jordanian != rsj;
    out.push(Check::new(
        "jordanian factor differs from R(sj)",
        differs,
        if differs { "differs" } else { "equal" },
    ));
    Ok(out)
}

/// Every entry of `transformed - kr` is `omega theta` times a function regular at `s = 1`.
pub fn check_new_entries_proportional() -> Check {
    let diff = &transform_r() - &kr_rmatrix();
    let omega = Scalar::omega();
    let mut bad = Vec::new();
    for (i, j, v) in diff.nonzero() {
        let ok = v
            .divide_by(Var::Theta)
            .and_then(|t| t.checked_div(&omega).ok())
            .map(|t| {
                t.substitute(&contraction_binding())
                    .and_then(|u| u.limit_at_one())
                    .is_ok()
            })
            .unwrap_or(false);
        if !ok {
            bad.push(format!("({},{})", i + 1, j + 1));
        }
    }
    let count = diff.nonzero().count();
    Check::new(
        "new entries proportional to omega theta",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{count} new entries")
        } else {
            format!("not divisible: {}", bad.join(", "))
        },
    )
}
