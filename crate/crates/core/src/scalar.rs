//! Exact rational functions in `s`, `theta` and `xi`.
//!
//! The deformation parameter is carried as `q = s^2`, so `sqrt(q) = s` stays
//! polynomial. A [`Scalar`] is a fraction `num / den` where `den` is a monic
//! polynomial in `s` alone; `theta` and `xi` only ever occur in numerators.
//! With that restriction the reduction to lowest terms needs nothing beyond
//! univariate gcds over `Q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    S,
    Theta,
    Xi,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::Theta => "theta",
            Var::Xi => "xi",
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(Var::S),
            "theta" => Ok(Var::Theta),
            "xi" => Ok(Var::Xi),
            other => Err(Error::Parse(format!("unknown variable '{other}'"))),
        }
    }
}

/// Exponent triple. The derived ordering is lexicographic in `(s, theta, xi)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub s: u32,
    pub theta: u32,
    pub xi: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        s: 0,
        theta: 0,
        xi: 0,
    };

    pub fn new(s: u32, theta: u32, xi: u32) -> Self {
        Monomial { s, theta, xi }
    }

    fn of(var: Var, power: u32) -> Self {
        match var {
            Var::S => Monomial::new(power, 0, 0),
            Var::Theta => Monomial::new(0, power, 0),
            Var::Xi => Monomial::new(0, 0, power),
        }
    }

    fn exponent(&self, var: Var) -> u32 {
        match var {
            Var::S => self.s,
            Var::Theta => self.theta,
            Var::Xi => self.xi,
        }
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(
            self.s + other.s,
            self.theta + other.theta,
            self.xi + other.xi,
        )
    }
}

/// Polynomial in `s, theta, xi` with rational coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::of(v, 1), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    fn is_univariate_s(&self) -> bool {
        self.terms.keys().all(|m| m.theta == 0 && m.xi == 0)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Drop every term whose `xi` exponent is at least `order`.
    pub fn truncate_xi(&self, order: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.xi < order)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `xi^k`, as a polynomial in the remaining variables.
    pub fn xi_coefficient(&self, k: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.xi == k)
                .map(|(m, c)| (Monomial::new(m.s, m.theta, 0), c.clone()))
                .collect(),
        }
    }

    /// Split into univariate `s`-polynomials keyed by the `(theta, xi)` part.
    fn s_groups(&self) -> BTreeMap<(u32, u32), Vec<BigRational>> {
        let mut out: BTreeMap<(u32, u32), Vec<BigRational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let g = out.entry((m.theta, m.xi)).or_default();
            let idx = m.s as usize;
            if g.len() <= idx {
                g.resize(idx + 1, BigRational::zero());
            }
            g[idx] = c.clone();
        }
        out
    }

    fn from_s_groups(groups: &BTreeMap<(u32, u32), Vec<BigRational>>) -> Poly {
        let mut p = Poly::zero();
        for (&(theta, xi), coeffs) in groups {
            for (i, c) in coeffs.iter().enumerate() {
                p.add_term(Monomial::new(i as u32, theta, xi), c.clone());
            }
        }
        p
    }

    fn from_univariate(u: &[BigRational]) -> Poly {
        let mut p = Poly::zero();
        for (i, c) in u.iter().enumerate() {
            p.add_term(Monomial::new(i as u32, 0, 0), c.clone());
        }
        p
    }

    fn to_univariate(&self) -> Vec<BigRational> {
        debug_assert!(self.is_univariate_s());
        let mut out = vec![BigRational::zero(); self.degree_in(Var::S) as usize + 1];
        for (m, c) in &self.terms {
            out[m.s as usize] = c.clone();
        }
        upoly::trim(out)
    }

    /// Value at `s = 1`, a polynomial in `theta, xi`.
    fn at_s_one(&self) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            p.add_term(Monomial::new(0, m.theta, m.xi), c.clone());
        }
        p
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

/// Dense univariate polynomials over `Q`, index = power.
mod upoly {
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    pub fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn is_zero(p: &[BigRational]) -> bool {
        p.iter().all(|c| c.is_zero())
    }

    pub fn monic(p: Vec<BigRational>) -> Vec<BigRational> {
        let p = trim(p);
        match p.last() {
            Some(lc) if !lc.is_one() => {
                let lc = lc.clone();
                p.into_iter().map(|c| c / &lc).collect()
            }
            _ => p,
        }
    }

    pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "univariate division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let lc = b[db].clone();
        let mut q = vec![BigRational::zero(); r.len() - db];
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let f = &r[r.len() - 1] / &lc;
            for (i, bc) in b.iter().enumerate() {
                let t = &f * bc;
                r[k + i] -= t;
            }
            q[k] = f;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        monic(x)
    }

    pub fn exact_div(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let (q, r) = divrem(a, b);
        debug_assert!(is_zero(&r), "inexact univariate division");
        q
    }

    pub fn eval_one(p: &[BigRational]) -> BigRational {
        p.iter().fold(BigRational::zero(), |acc, c| acc + c)
    }
}

/// An exact element of `Q(s)[theta, xi]`, always kept in lowest terms with a
/// monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(rat(n, 1))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(rat(n, d))
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(Poly::var(v))
    }

    pub fn s() -> Self {
        Scalar::var(Var::S)
    }

    pub fn theta() -> Self {
        Scalar::var(Var::Theta)
    }

    pub fn xi() -> Self {
        Scalar::var(Var::Xi)
    }

    /// `q = s^2`.
    pub fn q() -> Self {
        Scalar::s().powi(2)
    }

    /// `omega = q - 1/q`.
    pub fn omega() -> Self {
        let q = Scalar::q();
        &q - &q.inv().expect("q is nonzero")
    }

    /// Build `num / den` and reduce. `den` must be a nonzero polynomial in `s`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !den.is_univariate_s() {
            return Err(Error::NotInvertible(format!(
                "denominator must lie in Q[s]: {}",
                fmt_poly(&den)
            )));
        }
        Ok(Scalar::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let mut den_u = den.to_univariate();
        let mut groups = num.s_groups();
        if den_u.len() > 1 {
            let mut g = den_u.clone();
            for c in groups.values() {
                if g.len() <= 1 {
                    break;
                }
                g = upoly::gcd(&g, c);
            }
            if g.len() > 1 {
                for c in groups.values_mut() {
                    *c = upoly::exact_div(c, &g);
                }
                den_u = upoly::exact_div(&den_u, &g);
            }
        }
        let lc = den_u.last().cloned().expect("nonzero denominator");
        if !lc.is_one() {
            for c in groups.values_mut() {
                for x in c.iter_mut() {
                    *x /= &lc;
                }
            }
            for x in den_u.iter_mut() {
                *x /= &lc;
            }
        }
        Scalar {
            num: Poly::from_s_groups(&groups),
            den: Poly::from_univariate(&den_u),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    /// True when `inv` would succeed: nonzero and free of `theta`, `xi`.
    pub fn is_invertible(&self) -> bool {
        !self.is_zero() && self.num.is_univariate_s()
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.num.is_univariate_s() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Ok(Scalar::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Integer power; negative exponents go through `inv`.
    pub fn powi(&self, e: i32) -> Scalar {
        if e >= 0 {
            Scalar::normalize(self.num.pow(e as u32), self.den.pow(e as u32))
        } else {
            self.inv()
                .expect("negative power of a non-invertible scalar")
                .powi(-e)
        }
    }

    /// Drop all terms of order `xi^order` and higher. Valid because `xi`
    /// never appears in a denominator.
    pub fn truncate_xi(&self, order: u32) -> Scalar {
        Scalar::normalize(self.num.truncate_xi(order), self.den.clone())
    }

    pub fn xi_coefficient(&self, k: u32) -> Scalar {
        Scalar::normalize(self.num.xi_coefficient(k), self.den.clone())
    }

    /// `self / v` for `v` in `{theta, xi}`, when `v` divides the numerator.
    pub fn divide_by(&self, v: Var) -> Option<Scalar> {
        if v == Var::S || self.num.terms().any(|(m, _)| m.exponent(v) == 0) {
            return None;
        }
        let mut num = Poly::zero();
        for (m, c) in self.num.terms() {
            let lowered = match v {
                Var::Theta => Monomial::new(m.s, m.theta - 1, m.xi),
                _ => Monomial::new(m.s, m.theta, m.xi - 1),
            };
            num = &num + &Poly::term(lowered, c.clone());
        }
        Some(Scalar {
            num,
            den: self.den.clone(),
        })
    }

    pub fn xi_degree(&self) -> u32 {
        self.num.degree_in(Var::Xi)
    }

    /// Replace variables by scalars. Unbound variables are left in place.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Scalar> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut cache: BTreeMap<(Var, u32), Scalar> = BTreeMap::new();
        let num = eval_poly(&self.num, bindings, &mut cache);
        let den = eval_poly(&self.den, bindings, &mut cache);
        if den.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        num.checked_div(&den)
    }

    /// `lim_{s -> 1}` by repeated exact division by `(s - 1)`.
    pub fn limit_at_one(&self) -> Result<Scalar> {
        if self.num.contains(Var::Theta) {
            return Err(Error::ThetaInLimit);
        }
        let mut groups = self.num.s_groups();
        let mut den = self.den.to_univariate();
        let s_minus_one = vec![rat(-1, 1), rat(1, 1)];
        while upoly::eval_one(&den).is_zero() {
            if groups.values().any(|g| !upoly::eval_one(g).is_zero()) {
                return Err(Error::LimitDoesNotExist);
            }
            for g in groups.values_mut() {
                *g = upoly::exact_div(g, &s_minus_one);
            }
            den = upoly::exact_div(&den, &s_minus_one);
        }
        let d = upoly::eval_one(&den);
        let num = Poly::from_s_groups(&groups).at_s_one();
        Ok(Scalar::from_poly(num.scale(&(BigRational::one() / d))))
    }
}

/// Variable bindings for [`Scalar::substitute`].
pub type Bindings = BTreeMap<Var, Scalar>;

/// The contraction binding `theta = xi / omega`.
pub fn contraction_binding() -> Bindings {
    let value = Scalar::xi()
        .checked_div(&Scalar::omega())
        .expect("omega is invertible");
    BTreeMap::from([(Var::Theta, value)])
}

fn eval_poly(p: &Poly, bindings: &Bindings, cache: &mut BTreeMap<(Var, u32), Scalar>) -> Scalar {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = Scalar::from_rational(c.clone());
        for v in [Var::S, Var::Theta, Var::Xi] {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let f = cache
                .entry((v, e))
                .or_insert_with(|| match bindings.get(&v) {
                    Some(val) => val.powi(e as i32),
                    None => Scalar::from_poly(Poly::term(Monomial::of(v, e), BigRational::one())),
                })
                .clone();
            t = &t * &f;
        }
        acc = &acc + &t;
    }
    acc
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let da = self.den.to_univariate();
        let db = rhs.den.to_univariate();
        let g = upoly::gcd(&da, &db);
        let fa = Poly::from_univariate(&upoly::exact_div(&db, &g));
        let fb = Poly::from_univariate(&upoly::exact_div(&da, &g));
        let den = &self.den * &fa;
        let num = &(&self.num * &fa) + &(&rhs.num * &fb);
        Scalar::normalize(num, den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        Scalar::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Self {
        Scalar::from_rational(c)
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial_tail(m: &Monomial) -> String {
    let mut out = String::new();
    for v in [Var::S, Var::Theta, Var::Xi] {
        match m.exponent(v) {
            0 => {}
            1 => {
                out.push('*');
                out.push_str(v.name());
            }
            e => {
                out.push('*');
                out.push_str(v.name());
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
    out
}

/// Terms in descending `(s, theta, xi)` order, each as `c*s^a*theta^b*xi^c`.
pub fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        if i == 0 {
            out.push_str(&fmt_rational(c));
        } else if c.is_negative() {
            out.push_str(" - ");
            out.push_str(&fmt_rational(&-c.clone()));
        } else {
            out.push_str(" + ");
            out.push_str(&fmt_rational(c));
        }
        out.push_str(&fmt_monomial_tail(m));
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", fmt_poly(&self.num))
        } else {
            write!(f, "({}) / ({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        parse::parse(src)
    }
}

/// Recursive-descent reader for scalar expressions: the canonical form plus
/// ordinary `+ - * / ^` and parentheses over `s`, `theta`, `xi`, `q`.
mod parse {
    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Num(BigInt),
        Ident(String),
        Op(char),
    }

    fn lex(src: &str) -> Result<Vec<Tok>> {
        let mut out = Vec::new();
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("digits")));
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            } else if "+-*/^()".contains(c) {
                out.push(Tok::Op(c));
                i += 1;
            } else {
                return Err(Error::Parse(format!("unexpected character '{c}'")));
            }
        }
        Ok(out)
    }

    struct Parser {
        toks: Vec<Tok>,
        pos: usize,
    }

    impl Parser {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }

        fn eat(&mut self, op: char) -> bool {
            if self.peek() == Some(&Tok::Op(op)) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn expr(&mut self) -> Result<Scalar> {
            let mut acc = self.term()?;
            loop {
                if self.eat('+') {
                    acc = &acc + &self.term()?;
                } else if self.eat('-') {
                    acc = &acc - &self.term()?;
                } else {
                    return Ok(acc);
                }
            }
        }

        fn term(&mut self) -> Result<Scalar> {
            let mut acc = self.unary()?;
            loop {
                if self.eat('*') {
                    acc = &acc * &self.unary()?;
                } else if self.eat('/') {
                    acc = acc.checked_div(&self.unary()?)?;
                } else {
                    return Ok(acc);
                }
            }
        }

        fn unary(&mut self) -> Result<Scalar> {
            if self.eat('-') {
                return Ok(-self.unary()?);
            }
            if self.eat('+') {
                return self.unary();
            }
            let base = self.atom()?;
            if self.eat('^') {
                let paren = self.eat('(');
                let neg = self.eat('-');
                match self.peek().cloned() {
                    Some(Tok::Num(n)) => {
                        self.pos += 1;
                        if paren && !self.eat(')') {
                            return Err(Error::Parse("expected ')' after exponent".into()));
                        }
                        let e: i32 = n
                            .try_into()
                            .map_err(|_| Error::Parse("exponent too large".into()))?;
                        let e = if neg { -e } else { e };
                        if e < 0 && !base.is_invertible() {
                            return Err(Error::NotInvertible(base.to_string()));
                        }
                        Ok(base.powi(e))
                    }
                    _ => Err(Error::Parse("expected integer exponent".into())),
                }
            } else {
                Ok(base)
            }
        }

        fn atom(&mut self) -> Result<Scalar> {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    Ok(Scalar::from_rational(BigRational::from_integer(n)))
                }
                Some(Tok::Ident(name)) => {
                    self.pos += 1;
                    match name.as_str() {
                        "q" => Ok(Scalar::q()),
                        other => Ok(Scalar::var(other.parse()?)),
                    }
                }
                Some(Tok::Op('(')) => {
                    self.pos += 1;
                    let v = self.expr()?;
                    if !self.eat(')') {
                        return Err(Error::Parse("expected ')'".into()));
                    }
                    Ok(v)
                }
                Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
                None => Err(Error::Parse("unexpected end of input".into())),
            }
        }
    }

    pub fn parse(src: &str) -> Result<Scalar> {
        let toks = lex(src)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in '{src}'")));
        }
        Ok(v)
    }
}

/// Parse an exact rational such as `"1/2"` or `"-3"`.
pub fn parse_rational(src: &str) -> Result<BigRational> {
    let v: Scalar = src.parse()?;
    v.as_rational()
        .ok_or_else(|| Error::Parse(format!("'{src}' is not a rational constant")))
}
