//! The super-twist `F = exp(-2 xi (v ⊗ v) phi)` and the order-by-order solver
//! for the coefficients of `phi`.
//!
//! `phi` is stored as `sum_{m,n} c_{mn} u^m ⊗ u^n` with `u = xi X+` on each leg
//! and `c_{mn} = c_{nm}`. A series of order `N` keeps the terms with `m + n <= N`;
//! the exponent then reaches `xi^{N+1}`, and all identities are checked modulo
//! `xi^{N+2}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graded::{gkron, GradedMatrix};
use crate::linalg::solve_rational;
use crate::report::Check;
use crate::reps::{irrep, Module, Spin};
use crate::scalar::Scalar;
use crate::twist::coproduct::{CoproductMap, Generator};

/// Largest supported series order.
pub const MAX_ORDER: u32 = 4;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Taylor coefficients of `f1 = 2/(e^sigma + 1)` in `u = xi X+`, where
/// `e^sigma = sqrt(1 + 2u)`.
pub fn f1_series(order: u32) -> Vec<BigRational> {
    let n = order as usize + 1;
    // sqrt(1 + 2u) = sum binom(1/2, k) (2u)^k
    let mut root = Vec::with_capacity(n);
    let mut binom = BigRational::one();
    let half = rat(1, 2);
    let mut pow2 = BigRational::one();
    for k in 0..n {
        root.push(&binom * &pow2);
        binom = &binom * (&half - BigRational::from_integer(k.into()))
            / BigRational::from_integer((k + 1).into());
        pow2 *= rat(2, 1);
    }
    // 2 / (1 + root) by series division.
    let mut den = root;
    den[0] += BigRational::one();
    let mut out: Vec<BigRational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = if k == 0 {
            rat(2, 1)
        } else {
            BigRational::zero()
        };
        for j in 1..=k {
            acc -= &den[j] * &out[k - j];
        }
        out.push(acc / &den[0]);
    }
    out
}

/// `f1 = 2 (1 + E)^{-1}` as a matrix.
pub fn f1_matrix(m: &Module) -> Result<GradedMatrix> {
    let s = &m.identity() + &m.e_power(1)?;
    Ok(s.inverse()?.scale(&Scalar::from_int(2)))
}

/// `exp(a)` keeping powers of `xi` below `order`; `a` must have no `xi^0` part.
pub fn exp_truncated(a: &GradedMatrix, order: u32) -> GradedMatrix {
    let mut result = GradedMatrix::identity(a.parity());
    let mut term = result.clone();
    for k in 1..=order.max(1) {
        term = (&term * a)
            .truncate_xi(order)
            .scale_rational(&rat(1, k as i64));
        if term.is_zero() {
            break;
        }
        result = &result + &term;
    }
    result
}

/// Lowest power of `xi` present in a matrix.
pub fn lowest_xi_order(m: &GradedMatrix) -> Option<u32> {
    let top = m.nonzero().map(|(_, _, v)| v.xi_degree()).max()?;
    (0..=top).find(|&k| !m.xi_coefficient(k).is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientStatus {
    /// Taken from the closed form of `f1`.
    Closed,
    /// Fixed uniquely by the intertwining equations.
    Solved,
    /// Not fixed by the supplied modules; holds the `f1 ⊗ f1` value.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCoefficient {
    pub value: BigRational,
    pub status: CoefficientStatus,
}

/// One term `d_k l_k ⊗ l_k` of the symmetric decomposition of `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiTerm {
    pub k: u32,
    pub weight: BigRational,
    /// `l_k[m]` for `m = k-1, k, ...` as far as the series order allows.
    pub coefficients: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSeries {
    max_order: u32,
    coefficients: BTreeMap<(u32, u32), PhiCoefficient>,
}

impl PhiSeries {
    pub fn empty(max_order: u32) -> Self {
        PhiSeries {
            max_order,
            coefficients: BTreeMap::new(),
        }
    }

    /// `phi = f1 ⊗ f1` truncated at total degree `order`.
    pub fn f1_only(order: u32) -> Self {
        let a = f1_series(order);
        let mut out = PhiSeries::empty(order);
        for m in 0..=order {
            for n in m..=order - m {
                out.set(
                    m,
                    n,
                    &a[m as usize] * &a[n as usize],
                    CoefficientStatus::Closed,
                );
            }
        }
        out
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn set(&mut self, m: u32, n: u32, value: BigRational, status: CoefficientStatus) {
        let key = (m.min(n), m.max(n));
        self.coefficients
            .insert(key, PhiCoefficient { value, status });
    }

    pub fn coefficient(&self, m: u32, n: u32) -> Option<&PhiCoefficient> {
        self.coefficients.get(&(m.min(n), m.max(n)))
    }

    pub fn get(&self, m: u32, n: u32) -> BigRational {
        self.coefficient(m, n)
            .map(|c| c.value.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&(u32, u32), &PhiCoefficient)> {
        self.coefficients.iter()
    }

    /// `sum c_{mn} xi^{m+n} X^m ⊗ X^n` on `V1 ⊗ V2`.
    pub fn image(&self, m1: &Module, m2: &Module) -> GradedMatrix {
        let x1 = m1.x_plus();
        let x2 = m2.x_plus();
        let mut acc = GradedMatrix::zeros_on(&m1.parity().tensor(m2.parity()));
        for (&(m, n), c) in &self.coefficients {
            if c.value.is_zero() {
                continue;
            }
            let xi_pow = Scalar::xi().powi((m + n) as i32).scale(&c.value);
            let mut add = |a: u32, b: u32| {
                let t = gkron(&x1.pow(a), &x2.pow(b));
                if !t.is_zero() {
                    acc = &acc + &t.scale(&xi_pow);
                }
            };
            add(m, n);
            if m != n {
                add(n, m);
            }
        }
        acc
    }

    /// `-2 xi (v ⊗ v) phi`.
    pub fn exponent(&self, m1: &Module, m2: &Module) -> GradedMatrix {
        let vv = gkron(m1.v_plus(), m2.v_plus()).scale(&(&Scalar::xi() * &Scalar::from_int(-2)));
        &vv * &self.image(m1, m2)
    }

    /// The super-twist modulo `xi^{order}`.
    pub fn super_twist(&self, m1: &Module, m2: &Module, order: u32) -> GradedMatrix {
        exp_truncated(&self.exponent(m1, m2), order)
    }

    /// `phi = sum_k d_k l_k ⊗ l_k` with `l_k` starting at `u^{k-1}` with
    /// coefficient 1, computed from the known coefficients.
    pub fn decomposition(&self) -> Vec<PhiTerm> {
        let n = self.max_order as usize;
        let known = |i: usize, j: usize| i + j <= n;
        let mut s: Vec<Vec<BigRational>> = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        if known(i, j) {
                            self.get(i as u32, j as u32)
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut k = 0;
        while 2 * k <= n {
            let d = s[k][k].clone();
            if d.is_zero() {
                break;
            }
            let l: Vec<BigRational> = (k..=n - k).map(|m| &s[k][m] / &d).collect();
            for i in k..=n {
                for j in k..=n {
                    if known(i, j) && i + k <= n && j + k <= n {
                        let t = &d * &l[i - k] * &l[j - k];
                        s[i][j] -= t;
                    }
                }
            }
            out.push(PhiTerm {
                k: k as u32 + 1,
                weight: d,
                coefficients: l,
            });
            k += 1;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coefficients
            .iter()
            .map(|(&(m, n), c)| json!({"m": m, "n": n, "value": c.value.to_string(), "status": c.status}))
            .collect();
        let terms: Vec<Value> = self
            .decomposition()
            .iter()
            .map(|t| {
                json!({
                    "k": t.k,
                    "weight": t.weight.to_string(),
                    "coefficients": t.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({"max_order": self.max_order, "coefficients": coeffs, "terms": terms})
    }
}

fn pair_label(a: &Module, b: &Module) -> String {
    format!("({},{})", a.dim(), b.dim())
}

/// `v ⊗ E + 1 ⊗ v`, the jordanian image of `v+`.
fn jordanian_v(m1: &Module, m2: &Module) -> Result<GradedMatrix> {
    CoproductMap::jordanian().image(Generator::VPlus, m1, m2)
}

/// `v ⊗ 1 + E ⊗ v`.
fn target_v(m1: &Module, m2: &Module) -> Result<GradedMatrix> {
    CoproductMap::super_jordanian().image(Generator::VPlus, m1, m2)
}

/// `F Δ_j(v+) F^{-1} = v+ ⊗ 1 + E ⊗ v+` and
/// `(v+ ⊗ E + 1 ⊗ v+) F^{-2} = v+ ⊗ 1 + E ⊗ v+`, modulo `xi^{N+2}`.
pub fn check_intertwining_s(
    phi: &PhiSeries,
    m1: &Module,
    m2: &Module,
    order: u32,
) -> Result<Vec<Check>> {
    let k = order + 2;
    let a = phi.exponent(m1, m2);
    let f = exp_truncated(&a, k);
    let fi = exp_truncated(&-&a, k);
    let dj = jordanian_v(m1, m2)?;
    let t = target_v(m1, m2)?;
    let label = pair_label(m1, m2);
    let describe = |name: String, r: GradedMatrix| match lowest_xi_order(&r) {
        None => Check::vanishing(name, &r),
        Some(o) => {
            let mut c = Check::vanishing(name, &r);
            c.residual_summary = format!("first failing order xi^{o}; {}", c.residual_summary);
            c
        }
    };
    let main = (&(&(&f * &dj) * &fi) - &t).truncate_xi(k);
    let aux = (&(&dj * &(&fi * &fi)) - &t).truncate_xi(k);
    Ok(vec![
        describe(
            format!("F Δj(v+) F^-1 = v+ ⊗ 1 + E ⊗ v+ on {label} mod xi^{k}"),
            main,
        ),
        describe(
            format!("(v+ ⊗ E + 1 ⊗ v+) F^-2 = v+ ⊗ 1 + E ⊗ v+ on {label} mod xi^{k}"),
            aux,
        ),
    ])
}

/// The super-twist with `phi = f1 ⊗ f1` taken in closed form, exact.
pub fn f1_twist(m1: &Module, m2: &Module) -> Result<GradedMatrix> {
    let vv = gkron(m1.v_plus(), m2.v_plus()).scale(&(&Scalar::xi() * &Scalar::from_int(-2)));
    let ff = gkron(&f1_matrix(m1)?, &f1_matrix(m2)?);
    (&vv * &ff).exp_nilpotent()
}

/// Linear-system bookkeeping for one power of `xi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub xi_order: u32,
    pub unknowns: Vec<(u32, u32)>,
    pub equations: usize,
    pub rank: usize,
    pub null_space: Vec<Vec<BigRational>>,
    pub conflicting: Vec<String>,
}

/// Coefficients `c_mn` keyed by `(m, n)`.
pub type CoefficientMap = BTreeMap<(u32, u32), BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSolution {
    pub series: PhiSeries,
    pub orders: Vec<OrderReport>,
    /// Coefficients fixed by each pair on its own.
    pub per_pair: Vec<((Spin, Spin), CoefficientMap)>,
    pub checks: Vec<Check>,
}

impl PhiSolution {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let orders: Vec<Value> = self
            .orders
            .iter()
            .map(|o| {
                json!({
                    "xi_order": o.xi_order,
                    "unknowns": o.unknowns,
                    "equations": o.equations,
                    "rank": o.rank,
                    "null_space": o.null_space.iter().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "conflicting": o.conflicting,
                })
            })
            .collect();
        let pairs: Vec<Value> = self
            .per_pair
            .iter()
            .map(|((a, b), vals)| {
                json!({
                    "pair": [a.to_string(), b.to_string()],
                    "solved": vals.iter().map(|(&(m, n), v)| json!({"m": m, "n": n, "value": v.to_string()})).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "series": self.series.to_json(),
            "orders": orders,
            "pairs": pairs,
            "checks": self.checks,
        })
    }
}

struct PairData {
    label: String,
    m1: Module,
    m2: Module,
    dj: GradedMatrix,
    target: GradedMatrix,
    d0: GradedMatrix,
}

impl PairData {
    fn new(a: Spin, b: Spin) -> Result<Self> {
        let m1 = irrep(a)?.module().clone();
        let m2 = irrep(b)?.module().clone();
        let dj = jordanian_v(&m1, &m2)?;
        let target = target_v(&m1, &m2)?;
        let d0 = CoproductMap::classical().image(Generator::VPlus, &m1, &m2)?;
        Ok(PairData {
            label: format!("({a},{b})"),
            m1,
            m2,
            dj,
            target,
            d0,
        })
    }

    /// Coefficient matrix of the unknown `c_{mn}` at its own order.
    fn column(&self, m: u32, n: u32) -> GradedMatrix {
        let vv = gkron(self.m1.v_plus(), self.m2.v_plus()).scale(&Scalar::from_int(-2));
        let x1 = self.m1.x_plus();
        let x2 = self.m2.x_plus();
        let mut b = &vv * &gkron(&x1.pow(m), &x2.pow(n));
        if m != n {
            b = &b + &(&vv * &gkron(&x1.pow(n), &x2.pow(m)));
        }
        b.commutator(&self.d0)
    }

    /// `F Δj(v+) - T F` for the known part of `phi`, modulo `xi^{order}`.
    fn residual(&self, phi: &PhiSeries, order: u32) -> GradedMatrix {
        let f = phi.super_twist(&self.m1, &self.m2, order);
        (&(&f * &self.dj) - &(&self.target * &f)).truncate_xi(order)
    }
}

fn to_rational(s: &Scalar) -> Result<BigRational> {
    s.as_rational().ok_or_else(|| {
        Error::InvalidArgument(format!("expected a rational coefficient, found {s}"))
    })
}

fn solve_on(order: u32, pairs: &[PairData]) -> Result<(PhiSeries, Vec<OrderReport>)> {
    let defaults = f1_series(order);
    let mut phi = PhiSeries::empty(order);
    let mut reports = Vec::new();
    for k in 1..=order + 1 {
        let unknowns: Vec<(u32, u32)> = (0..k)
            .map(|m| (m, k - 1 - m))
            .filter(|(m, n)| m <= n)
            .collect();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        let mut rhs: Vec<BigRational> = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        let mut lower: Vec<String> = Vec::new();
        for pd in pairs {
            let res = pd.residual(&phi, k + 1);
            if let Some(o) = lowest_xi_order(&res).filter(|&o| o < k) {
                lower.push(format!("{} leaves a residual at xi^{o}", pd.label));
            }
            let r = res.xi_coefficient(k);
            let cols: Vec<GradedMatrix> = unknowns.iter().map(|&(m, n)| pd.column(m, n)).collect();
            let dim = r.dim();
            for i in 0..dim {
                for j in 0..dim {
                    let coeffs: Vec<BigRational> = cols
                        .iter()
                        .map(|c| to_rational(c.get(i, j)))
                        .collect::<Result<_>>()?;
                    let b = -to_rational(r.get(i, j))?;
                    if coeffs.iter().all(Zero::is_zero) && b.is_zero() {
                        continue;
                    }
                    rows.push(coeffs);
                    rhs.push(b);
                    labels.push(format!(
                        "{} entry ({},{}) at xi^{k}",
                        pd.label,
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
        if rows.is_empty() {
            // Keeps the variable count visible to the solver.
            rows.push(vec![BigRational::zero(); unknowns.len()]);
            rhs.push(BigRational::zero());
            labels.push("empty system".to_string());
        }
        let equations = rows
            .iter()
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .count();
        let sol = solve_rational(&rows, &rhs);
        let mut conflicting: Vec<String> =
            sol.conflicting.iter().map(|&i| labels[i].clone()).collect();
        conflicting.extend(lower);
        let mut values = sol
            .particular
            .clone()
            .unwrap_or_else(|| vec![BigRational::zero(); unknowns.len()]);
        // Free variables take their f1 ⊗ f1 value.
        for v in &sol.null_space {
            let f = v
                .iter()
                .position(|c| c.is_one())
                .expect("null vectors carry a unit entry");
            let (m, n) = unknowns[f];
            let default = &defaults[m as usize] * &defaults[n as usize];
            for (x, c) in values.iter_mut().zip(v) {
                *x += &default * c;
            }
        }
        for (idx, &(m, n)) in unknowns.iter().enumerate() {
            let determined = sol.null_space.iter().all(|v| v[idx].is_zero());
            let status = if determined {
                CoefficientStatus::Solved
            } else {
                CoefficientStatus::Undetermined
            };
            phi.set(m, n, values[idx].clone(), status);
        }
        reports.push(OrderReport {
            xi_order: k,
            unknowns,
            equations,
            rank: sol.rank,
            null_space: sol.null_space,
            conflicting,
        });
    }
    Ok((phi, reports))
}

/// Solve for `phi` to order `N` from the intertwining relation on the given pairs.
fn summary_of(items: &[String]) -> String {
    if items.is_empty() {
        "0".into()
    } else {
        items.join("; ")
    }
}

pub fn solve_phi(order: u32, pairs: &[(Spin, Spin)]) -> Result<PhiSolution> {
    if order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "order {order} exceeds {MAX_ORDER}"
        )));
    }
    if pairs.is_empty() {
        return Err(Error::InvalidArgument(
            "no representation pairs given".to_string(),
        ));
    }
    let data: Vec<PairData> = pairs
        .iter()
        .map(|&(a, b)| PairData::new(a, b))
        .collect::<Result<_>>()?;
    let (series, orders) = solve_on(order, &data)?;

    let mut per_pair = Vec::new();
    for (pd, &pair) in data.iter().zip(pairs) {
        let (single, _) = solve_on(order, std::slice::from_ref(pd))?;
        let solved: BTreeMap<(u32, u32), BigRational> = single
            .coefficients()
            .filter(|(_, c)| c.status == CoefficientStatus::Solved)
            .map(|(&k, c)| (k, c.value.clone()))
            .collect();
        per_pair.push((pair, solved));
    }

    let mut checks = Vec::new();
    for o in &orders {
        checks.push(Check::new(
            format!("xi^{} system consistent", o.xi_order),
            o.conflicting.is_empty(),
            if o.conflicting.is_empty() {
                format!(
                    "{} equations, rank {}, {} free",
                    o.equations,
                    o.rank,
                    o.null_space.len()
                )
            } else {
                format!("conflicting: {}", o.conflicting.join("; "))
            },
        ));
    }
    let mut disagreements = Vec::new();
    for (i, (pa, va)) in per_pair.iter().enumerate() {
        for (pb, vb) in &per_pair[i + 1..] {
            for (key, x) in va {
                if let Some(y) = vb.get(key) {
                    if x != y {
                        disagreements.push(format!(
                            "c{}{}: {x} on ({},{}) vs {y} on ({},{})",
                            key.0, key.1, pa.0, pa.1, pb.0, pb.1
                        ));
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        "coefficients agree across pairs",
        disagreements.is_empty(),
        summary_of(&disagreements),
    ));
    for pd in &data {
        checks.extend(check_intertwining_s(&series, &pd.m1, &pd.m2, order)?);
    }
    let a = f1_series(order);
    let mut mismatched = Vec::new();
    for m in 0..=order {
        if let Some(c) = series.coefficient(0, m) {
            if c.status == CoefficientStatus::Solved && c.value != a[m as usize] {
                mismatched.push(format!("c0{m} = {} vs {}", c.value, a[m as usize]));
            }
        }
    }
    checks.push(Check::new(
        "solved c0m match the expansion of 2/(e^sigma + 1)",
        mismatched.is_empty(),
        summary_of(&mismatched),
    ));
    Ok(PhiSolution {
        series,
        orders,
        per_pair,
        checks,
    })
}

/// `F (v- ⊗ E^-1 + 1 ⊗ v- + xi h ⊗ v+ E^-2) F^{-1}` modulo `xi^{N+2}`, with
/// the relations it must satisfy together with the closed forms of `Δ(h)`, `Δ(v+)`.
pub fn compute_dsj_vminus(
    phi: &PhiSeries,
    m1: &Module,
    m2: &Module,
    order: u32,
) -> Result<(GradedMatrix, Vec<Check>)> {
    let k = order + 2;
    let a = phi.exponent(m1, m2);
    let f = exp_truncated(&a, k);
    let fi = exp_truncated(&-&a, k);
    let dj_minus = CoproductMap::jordanian().image(Generator::VMinus, m1, m2)?;
    let dv_minus = (&(&f * &dj_minus) * &fi).truncate_xi(k);
    let sj = CoproductMap::super_jordanian();
    let dh = sj.image(Generator::H, m1, m2)?;
    let dv = sj.image(Generator::VPlus, m1, m2)?;
    let label = pair_label(m1, m2);

    let anti = &(&(&dv * &dv_minus) + &(&dv_minus * &dv)) + &dh.scale(&Scalar::ratio(1, 4));
    let weight = &dh.commutator(&dv_minus) + &dv_minus;
    let classical = CoproductMap::classical().image(Generator::VMinus, m1, m2)?;
    // First order: the jordanian xi-term plus [A_1, Δ(v-)] with A_1 = -2 c00 xi v ⊗ v.
    let a1 = a.xi_coefficient(1);
    let first = &dj_minus.xi_coefficient(1) + &a1.commutator(&classical);
    Ok((
        dv_minus.clone(),
        vec![
            Check::vanishing(
                format!("[Δ(v+), Δ(v-)] + Δ(h)/4 = 0 on {label} mod xi^{k}"),
                &anti.truncate_xi(k),
            ),
            Check::vanishing(
                format!("[Δ(h), Δ(v-)] + Δ(v-) = 0 on {label} mod xi^{k}"),
                &weight.truncate_xi(k),
            ),
            Check::equal(
                format!("xi^0 part of Δ(v-) is v- ⊗ 1 + 1 ⊗ v- on {label}"),
                &dv_minus.xi_coefficient(0),
                &classical,
            ),
            Check::equal(
                format!("xi^1 part of Δ(v-) on {label}"),
                &dv_minus.xi_coefficient(1),
                &first,
            ),
        ],
    ))
}

/// The cross term in the square of the q-deformed coproduct of `v±`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCrossTerm {
    pub generator: Generator,
    /// `mu` in `Δ(v)^2 - (v^2 ⊗ K^2 + K^-2 ⊗ v^2) = mu K^-1 v ⊗ v K`.
    pub coefficient: Scalar,
    pub checks: Vec<Check>,
}

pub fn check_qcoproduct_xplus(m1: &Module, m2: &Module) -> Result<Vec<QCrossTerm>> {
    let cp = CoproductMap::q_deformed();
    let mut out = Vec::new();
    for g in [Generator::VPlus, Generator::VMinus] {
        let (v1, v2) = match g {
            Generator::VPlus => (m1.v_plus().clone(), m2.v_plus().clone()),
            _ => (
                m1.v_minus()
                    .cloned()
                    .ok_or_else(|| Error::UnsupportedRepresentation("no v-".into()))?,
                m2.v_minus()
                    .cloned()
                    .ok_or_else(|| Error::UnsupportedRepresentation("no v-".into()))?,
            ),
        };
        let d = cp.image(g, m1, m2)?;
        let k2 = m2.q_half_power(1)?;
        let k1i = m1.q_half_power(-1)?;
        let naive = &gkron(&(&v1 * &v1), &(&k2 * &k2)) + &gkron(&(&k1i * &k1i), &(&v2 * &v2));
        let cross = &(&d * &d) - &naive;
        let shape = gkron(&(&k1i * &v1), &(&v2 * &k2));
        let mu = match shape.nonzero().next() {
            Some((i, j, b)) => cross.get(i, j).checked_div(b)?,
            None => Scalar::zero(),
        };
        let fitted = &cross - &shape.scale(&mu);
        let at_one = crate::scalar::Bindings::from([(crate::scalar::Var::S, Scalar::one())]);
        let mu_at_one = mu.substitute(&at_one)?;
        let name = g.name();
        out.push(QCrossTerm {
            generator: g,
            coefficient: mu.clone(),
            checks: vec![
                Check::vanishing(
                    format!("cross term of Δq({name})^2 is mu K^-1 {name} ⊗ {name} K"),
                    &fitted,
                ),
                Check::new(
                    format!("cross term of Δq({name})^2 nonzero at generic s"),
                    !mu.is_zero() && !shape.is_zero(),
                    format!("mu = {mu}"),
                ),
                Check::new(
                    format!("cross term of Δq({name})^2 vanishes at s = 1"),
                    mu_at_one.is_zero(),
                    format!("mu(1) = {mu_at_one}"),
                ),
            ],
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::f_super_fund;
    use crate::reps::fundamental_rep;

    /// Independent form: 2/(1 + sqrt(1+2u)) = (sqrt(1+2u) - 1)/u, so
    /// a_m = binom(1/2, m+1) 2^{m+1}.
    fn oracle(m: usize) -> BigRational {
        let mut b = BigRational::one();
        for i in 0..=m {
            b = b * (rat(1, 2) - BigRational::from_integer(i.into()))
                / BigRational::from_integer((i + 1).into());
        }
        b * BigRational::from_integer(BigInt::from(2).pow(m as u32 + 1))
    }

    #[test]
    fn f1_coefficients() {
        let a = f1_series(5);
        for (m, c) in a.iter().enumerate() {
            assert_eq!(c, &oracle(m), "m = {m}");
        }
        assert_eq!(a[0], rat(1, 1));
        assert_eq!(a[1], rat(-1, 2));
        assert_eq!(a[2], rat(1, 2));
    }

    #[test]
    fn f1_matrix_matches_series() {
        for t in 1..=3 {
            let r = irrep(Spin::from_twice(t).unwrap()).unwrap();
            let m = r.module();
            let a = f1_series(8);
            let u = m.x_plus().scale(&Scalar::xi());
            let mut series = GradedMatrix::zeros_on(m.parity());
            for (k, c) in a.iter().enumerate() {
                series = &series + &u.pow(k as u32).scale_rational(c);
            }
            assert_eq!(f1_matrix(m).unwrap(), series);
        }
    }

    #[test]
    fn f1_twist_in_fundamental_is_literal() {
        let f = fundamental_rep();
        assert_eq!(f1_twist(f.module(), f.module()).unwrap(), f_super_fund());
    }

    #[test]
    fn f1_only_intertwines_fundamental() {
        let f = fundamental_rep();
        for n in 0..=3 {
            for c in
                check_intertwining_s(&PhiSeries::f1_only(n), f.module(), f.module(), n).unwrap()
            {
                assert!(c.pass, "{}: {}", c.name, c.residual_summary);
            }
        }
    }

    #[test]
    fn f1_only_fails_on_spin_one_pair() {
        let r = irrep(Spin::ONE).unwrap();
        let cs = check_intertwining_s(&PhiSeries::f1_only(2), r.module(), r.module(), 2).unwrap();
        assert!(!cs[0].pass);
        assert!(
            cs[0]
                .residual_summary
                .starts_with("first failing order xi^3"),
            "{}",
            cs[0].residual_summary
        );
    }

    #[test]
    fn zero_phi_at_order_zero() {
        let f = fundamental_rep();
        let mut phi = PhiSeries::empty(0);
        phi.set(0, 0, BigRational::zero(), CoefficientStatus::Closed);
        let a = phi.exponent(f.module(), f.module());
        assert!(a.is_zero());
        let c = check_intertwining_s(&phi, f.module(), f.module(), 0).unwrap();
        // Only the xi^0 and xi^1 parts are compared; the xi^1 part needs c00 = 1.
        assert!(!c[0].pass);
        let main = (&jordanian_v(f.module(), f.module()).unwrap()
            - &target_v(f.module(), f.module()).unwrap())
            .xi_coefficient(0);
        assert!(main.is_zero());
    }

    #[test]
    fn solver_order_one() {
        let sol = solve_phi(1, &[(Spin::ONE, Spin::HALF), (Spin::ONE, Spin::ONE)]).unwrap();
        assert!(sol.passed(), "{:?}", sol.checks);
        assert_eq!(sol.series.get(0, 0), rat(1, 1));
        assert_eq!(sol.series.get(0, 1), rat(-1, 2));
    }

    #[test]
    fn solver_fundamental_pair_reproduces_literal_twist() {
        let sol = solve_phi(1, &[(Spin::HALF, Spin::HALF)]).unwrap();
        assert!(sol.passed(), "{:?}", sol.checks);
        assert_eq!(sol.series.get(0, 0), rat(1, 1));
        let f = fundamental_rep();
        let tw = sol.series.super_twist(f.module(), f.module(), 3);
        assert_eq!(tw, f_super_fund());
    }

    #[test]
    fn solver_order_two() {
        let sol = solve_phi(2, &[(Spin::ONE, Spin::HALF), (Spin::ONE, Spin::ONE)]).unwrap();
        assert!(sol.passed(), "{:?}", sol.checks);
        let c11 = sol.series.coefficient(1, 1).unwrap();
        assert_eq!(c11.value, rat(1, 6));
        assert_eq!(c11.status, CoefficientStatus::Solved);
        assert_eq!(
            sol.series.coefficient(0, 2).unwrap().status,
            CoefficientStatus::Undetermined
        );
        let terms = sol.series.decomposition();
        assert_eq!(terms[0].weight, rat(1, 1));
        assert_eq!(terms[1].weight, rat(-1, 12));
    }

    #[test]
    fn solver_with_three_halves() {
        let sol = solve_phi(
            2,
            &[(Spin::ONE, Spin::ONE), (Spin::THREE_HALVES, Spin::HALF)],
        )
        .unwrap();
        assert!(sol.passed(), "{:?}", sol.checks);
        let c02 = sol.series.coefficient(0, 2).unwrap();
        assert_eq!(
            (c02.value.clone(), c02.status),
            (rat(1, 2), CoefficientStatus::Solved)
        );
    }

    #[test]
    fn dsj_vminus_in_fundamental() {
        let f = fundamental_rep();
        let (_, checks) =
            compute_dsj_vminus(&PhiSeries::f1_only(2), f.module(), f.module(), 2).unwrap();
        for c in checks {
            assert!(c.pass, "{}: {}", c.name, c.residual_summary);
        }
    }

    #[test]
    fn q_cross_terms() {
        let f = fundamental_rep();
        let terms = check_qcoproduct_xplus(f.module(), f.module()).unwrap();
        for t in &terms {
            for c in &t.checks {
                assert!(c.pass, "{}: {}", c.name, c.residual_summary);
            }
        }
        let q = Scalar::q();
        assert_eq!(terms[0].coefficient, &q - &Scalar::one());
        assert_eq!(terms[1].coefficient, &q.inv().unwrap() - &Scalar::one());
    }
}
