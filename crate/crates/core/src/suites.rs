//! Named verification suites, as run by `qosp verify`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{check_gybe, GradedMatrix, ParityVector};
use crate::io::matrix_from_json;
use crate::matrices::{
    check_factorization, check_new_entries_proportional, check_triangular, f_jordanian, kr_rmatrix,
    NamedMatrix,
};
use crate::report::{Check, Report};
use crate::reps::{check_lt_relations, fundamental_rep, irrep, Module, Representation, Spin};
use crate::twist::frt::{check_l_coproducts, frt_check};
use crate::twist::hopf::{
    check_coassociativity, check_cocycle, check_homomorphism, check_r_intertwines,
    check_twist_conjugation,
};
use crate::twist::phi::{
    check_intertwining_s, check_qcoproduct_xplus, compute_dsj_vminus, f1_twist, solve_phi,
    PhiSeries,
};
use crate::twist::CoproductMap;

/// Environment variable naming a directory of golden fixtures to use instead
/// of the built-in ones.
pub const FIXTURES_ENV: &str = "QOSP_FIXTURES";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Golden,
    Ybe,
    Triangular,
    Factorization,
    Frt,
    Cocycle,
    Hopf,
    Intertwine,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Golden,
        Suite::Ybe,
        Suite::Triangular,
        Suite::Factorization,
        Suite::Frt,
        Suite::Cocycle,
        Suite::Hopf,
        Suite::Intertwine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Golden => "golden",
            Suite::Ybe => "ybe",
            Suite::Triangular => "triangular",
            Suite::Factorization => "factorization",
            Suite::Frt => "frt",
            Suite::Cocycle => "cocycle",
            Suite::Hopf => "hopf",
            Suite::Intertwine => "intertwine",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

/// Options shared by the suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Spins used by the representation-level suites.
    pub spins: Vec<Spin>,
    /// Series order for the super-twist checks.
    pub order: u32,
    /// Pairs for the series solver.
    pub pairs: Vec<(Spin, Spin)>,
    /// Overrides the built-in golden fixtures.
    pub fixtures: Option<PathBuf>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            spins: vec![Spin::HALF, Spin::ONE],
            order: 2,
            pairs: vec![(Spin::ONE, Spin::HALF), (Spin::ONE, Spin::ONE)],
            fixtures: std::env::var_os(FIXTURES_ENV).map(PathBuf::from),
        }
    }
}

fn builtin_fixture(m: NamedMatrix) -> Option<&'static str> {
    Some(match m {
        NamedMatrix::KrR => include_str!("../fixtures/kr.json"),
        NamedMatrix::RTransformed => include_str!("../fixtures/transformed.json"),
        NamedMatrix::RSj => include_str!("../fixtures/sjr.json"),
        NamedMatrix::FJ => include_str!("../fixtures/fj.json"),
        NamedMatrix::FS => include_str!("../fixtures/fs.json"),
        _ => return None,
    })
}

/// The matrices that have golden fixtures.
pub const GOLDEN: [NamedMatrix; 5] = [
    NamedMatrix::KrR,
    NamedMatrix::RTransformed,
    NamedMatrix::RSj,
    NamedMatrix::FJ,
    NamedMatrix::FS,
];

pub fn load_fixture(m: NamedMatrix, dir: Option<&PathBuf>) -> Result<GradedMatrix> {
    match dir {
        Some(d) => matrix_from_json(&std::fs::read_to_string(
            d.join(format!("{}.json", m.name())),
        )?),
        None => matrix_from_json(
            builtin_fixture(m)
                .ok_or_else(|| Error::InvalidArgument(format!("no fixture for '{}'", m.name())))?,
        ),
    }
}

fn collect(name: &str, r: Result<Vec<Check>>) -> Vec<Check> {
    r.unwrap_or_else(|e| vec![Check::errored(name, &e)])
}

fn one(name: &str, r: Result<Check>) -> Check {
    r.unwrap_or_else(|e| Check::errored(name, &e))
}

fn golden(opts: &SuiteOptions) -> Vec<Check> {
    GOLDEN
        .par_iter()
        .map(|&m| {
            let label = format!("{} matches fixture", m.name());
            one(
                &label,
                (|| {
                    let built = m.build()?;
                    let fixture = load_fixture(m, opts.fixtures.as_ref())?;
                    Ok(Check::equal(label.clone(), &built, &fixture))
                })(),
            )
        })
        .collect()
}

fn ybe() -> Vec<Check> {
    let p = ParityVector::fundamental();
    let mut out: Vec<Check> = [
        NamedMatrix::KrR,
        NamedMatrix::RTransformed,
        NamedMatrix::RSj,
    ]
    .par_iter()
    .map(|&m| {
        let label = format!("{}: graded YBE", m.name());
        one(
            &label,
            m.build().map(|r| {
                let res = check_gybe(&r, &p);
                Check::new(label.clone(), res.is_zero(), res.summary())
            }),
        )
    })
    .collect();
    out.push(check_new_entries_proportional());
    out
}

fn triangular() -> Vec<Check> {
    let p = ParityVector::fundamental();
    let mut out = Vec::new();
    out.push(one(
        "sjr",
        NamedMatrix::RSj
            .build()
            .map(|r| check_triangular("sjr", &r, &p)),
    ));
    let kr = check_triangular("kr", &kr_rmatrix(), &p);
    out.push(Check::new(
        "kr: R21 R != 1 at generic s",
        !kr.pass,
        kr.residual_summary,
    ));
    out.push(check_triangular(
        "identity",
        &GradedMatrix::identity(&p.tensor(&p)),
        &p,
    ));
    out
}

fn representations(opts: &SuiteOptions) -> Result<Vec<Representation>> {
    opts.spins.iter().map(|&s| irrep(s)).collect()
}

fn frt(opts: &SuiteOptions) -> Vec<Check> {
    let reps = match representations(opts) {
        Ok(r) => r,
        Err(e) => return vec![Check::errored("representations", &e)],
    };
    let mut out = Vec::new();
    let f = fundamental_rep();
    out.push(Check::equal(
        "fundamental X+ = E13",
        f.x_plus(),
        &GradedMatrix::unit(f.parity(), 1, 3),
    ));
    let per_rep: Vec<Vec<Check>> = reps
        .par_iter()
        .map(|r| {
            let mut cs: Vec<Check> = r
                .invariant_checks()
                .into_iter()
                .map(|mut c| {
                    c.name = format!("spin {}: {}", r.spin(), c.name);
                    c
                })
                .collect();
            cs.extend(check_lt_relations(r));
            cs.push(one("frt", frt_check(r)));
            cs.extend(collect("L coproducts", check_l_coproducts(r)));
            cs
        })
        .collect();
    out.extend(per_rep.into_iter().flatten());
    out
}

fn cocycle(opts: &SuiteOptions) -> Vec<Check> {
    let f = fundamental_rep();
    let m = f.module();
    let cp = CoproductMap::classical();
    let fj = |a: &Module, b: &Module| f_jordanian(a, b);
    let mut thirds: Vec<Module> = vec![m.clone()];
    if let Ok(reps) = representations(opts) {
        thirds.extend(
            reps.iter()
                .filter(|r| r.spin() != Spin::HALF)
                .map(|r| r.module().clone()),
        );
    }
    let mut out: Vec<Check> = thirds
        .par_iter()
        .map(|m3| one("F(j) cocycle", check_cocycle("F(j)", &fj, &cp, m, m, m3)))
        .collect();
    out.extend(collect(
        "coassociativity",
        check_coassociativity(&CoproductMap::jordanian(), m, m, m),
    ));
    out.extend(collect(
        "coassociativity",
        check_coassociativity(&cp, m, m, m),
    ));
    out
}

fn hopf(opts: &SuiteOptions) -> Vec<Check> {
    let f = fundamental_rep();
    let m = f.module();
    let mut out = Vec::new();
    let reps = representations(opts).unwrap_or_default();
    for cp in [CoproductMap::classical(), CoproductMap::jordanian()] {
        out.extend(collect(cp.name(), check_homomorphism(&cp, m, m)));
        for r in reps.iter().filter(|r| r.spin() != Spin::HALF) {
            out.extend(collect(cp.name(), check_homomorphism(&cp, m, r.module())));
        }
    }
    out.extend(collect(
        "Q_DEFORMED",
        check_homomorphism(&CoproductMap::q_deformed(), m, m),
    ));
    out.extend(collect(
        "SUPER_JORDANIAN",
        check_homomorphism(&CoproductMap::super_jordanian(), m, m),
    ));
    out.extend(collect(
        "KR intertwines",
        check_r_intertwines("KR", &kr_rmatrix(), &CoproductMap::q_deformed(), m, m),
    ));
    out.extend(collect(
        "R(sj) intertwines",
        NamedMatrix::RSj
            .build()
            .and_then(|r| check_r_intertwines("R(sj)", &r, &CoproductMap::super_jordanian(), m, m)),
    ));
    out.extend(collect(
        "F(j) conjugation",
        f_jordanian(m, m).and_then(|fj| {
            check_twist_conjugation(
                "F(j)",
                &fj,
                &CoproductMap::classical(),
                &CoproductMap::jordanian(),
                m,
                m,
            )
        }),
    ));
    out.extend(collect(
        "F(s) F(j) conjugation",
        (|| {
            let fsj = &NamedMatrix::FS.build()? * &f_jordanian(m, m)?;
            check_twist_conjugation(
                "F(s) F(j)",
                &fsj,
                &CoproductMap::classical(),
                &CoproductMap::super_jordanian(),
                m,
                m,
            )
        })(),
    ));
    match check_qcoproduct_xplus(m, m) {
        Ok(terms) => {
            for t in terms {
                out.extend(t.checks);
            }
        }
        Err(e) => out.push(Check::errored("q cross term", &e)),
    }
    out
}

fn intertwine(opts: &SuiteOptions) -> Vec<Check> {
    let f = fundamental_rep();
    let m = f.module();
    let n = opts.order;
    let mut out = Vec::new();
    out.extend(collect(
        "f1 intertwining",
        check_intertwining_s(&PhiSeries::f1_only(n), m, m, n),
    ));
    out.push(one(
        "f1 twist",
        f1_twist(m, m).and_then(|t| {
            Ok(Check::equal(
                "exp(-2 xi v ⊗ v f1 ⊗ f1) equals the fundamental super-twist",
                &t,
                &NamedMatrix::FS.build()?,
            ))
        }),
    ));
    if n >= 2 {
        // f1 alone is not enough once spin 1 is on both legs.
        match irrep(Spin::ONE)
            .and_then(|r| check_intertwining_s(&PhiSeries::f1_only(n), r.module(), r.module(), n))
        {
            Ok(cs) => {
                let c = &cs[0];
                out.push(Check::new(
                    "f1 ⊗ f1 alone fails on (1,1)",
                    !c.pass,
                    c.residual_summary.clone(),
                ));
            }
            Err(e) => out.push(Check::errored("f1 ⊗ f1 on (1,1)", &e)),
        }
    }
    match solve_phi(n, &opts.pairs) {
        Ok(sol) => {
            out.extend(sol.checks.into_iter().map(|mut c| {
                c.name = format!("solver: {}", c.name);
                c
            }));
        }
        Err(e) => out.push(Check::errored("solver", &e)),
    }
    match compute_dsj_vminus(&PhiSeries::f1_only(n), m, m, n) {
        Ok((_, cs)) => out.extend(cs),
        Err(e) => out.push(Check::errored("Δ(v-)", &e)),
    }
    out
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Report {
    let checks = match suite {
        Suite::Golden => golden(opts),
        Suite::Ybe => ybe(),
        Suite::Triangular => triangular(),
        Suite::Factorization => collect("factorization", check_factorization()),
        Suite::Frt => frt(opts),
        Suite::Cocycle => cocycle(opts),
        Suite::Hopf => hopf(opts),
        Suite::Intertwine => intertwine(opts),
    };
    Report {
        suite: suite.name().to_string(),
        checks,
    }
}

/// Every suite, concurrently, merged into one report in a fixed order.
pub fn run_all(opts: &SuiteOptions) -> Report {
    let reports: Vec<Report> = Suite::ALL.par_iter().map(|&s| run_suite(s, opts)).collect();
    let mut all = Report::new("all");
    for r in reports {
        all.extend(r.checks.into_iter().map(|mut c| {
            c.name = format!("[{}] {}", r.suite, c.name);
            c
        }));
    }
    all
}
