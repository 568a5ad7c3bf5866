use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::cyclotomic::{is_known_irreducible, split_binomial};
use crate::algebra::gcd::gcd;
use crate::algebra::monomial::Monomial;
use crate::algebra::poly::{pow_scalar, Poly};
use crate::algebra::var::{Group, Var};
use crate::algebra::{AlgebraError, Scalar};

/// Quotient of a Laurent polynomial by a product of normalized factors.
///
/// Denominator factors carry no monomial content, have leading coefficient
/// 1 and are never constant; every unit is absorbed by the numerator. No
/// gcd is taken automatically, so two equal functions may have different
/// representations: compare with `==`, which cross-multiplies.
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

type Factors = Vec<(Poly, u32)>;

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Vec::new() }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: Scalar) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> RatFunc {
        RatFunc::from_poly(Poly::int(n))
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Vec::new() }
    }

    pub fn monomial(m: Monomial) -> RatFunc {
        RatFunc::from_poly(Poly::monomial(m))
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(Poly::var(v))
    }

    /// `num / den`; panics if `den` is zero.
    pub fn new(num: Poly, den: &Poly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc::from_factors(num, [(den.clone(), -1)])
    }

    /// `num * prod f^e`; negative exponents go to the denominator.
    pub fn from_factors<I: IntoIterator<Item = (Poly, i32)>>(num: Poly, factors: I) -> RatFunc {
        let mut num = num;
        let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
        for (f, e) in factors {
            if e == 0 {
                continue;
            }
            if e > 0 {
                num = &num * &f.pow(e as u32);
                continue;
            }
            let (c, m, n) = f.normalize_unit();
            num = num.mul_term(&pow_scalar(&c, e), &m.pow(e));
            if n.is_one() {
                continue;
            }
            match split_binomial(&n) {
                Some(parts) => {
                    for p in parts {
                        *den.entry(p).or_insert(0) += (-e) as u32;
                    }
                }
                None => *den.entry(n).or_insert(0) += (-e) as u32,
            }
        }
        RatFunc::from_parts(num, den.into_iter().collect())
    }

    fn from_parts(num: Poly, den: Factors) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn denom(&self) -> Poly {
        let mut d = Poly::one();
        for (f, e) in &self.den {
            d = &d * &f.pow(*e);
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        for (f, _) in &self.den {
            v.extend(f.vars());
        }
        v.sort();
        v.dedup();
        v
    }

    pub fn has_group(&self, g: Group) -> bool {
        self.num.has_group(g) || self.den.iter().any(|(f, _)| f.has_group(g))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> RatFunc {
        RatFunc::from_parts(self.num.scale(c), self.den.clone())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> RatFunc {
        RatFunc { num: self.num.mul_monomial(m), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        RatFunc::from_parts(&self.num * p, self.den.clone())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let num = &self.num * &other.num;
        RatFunc::from_parts(num, merge_factors(&self.den, &other.den))
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of zero");
        let mut num = Poly::one();
        for (f, e) in &self.den {
            num = &num * &f.pow(*e);
        }
        RatFunc::from_factors(num, [(self.num.clone(), -1)])
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        self.mul(&other.recip())
    }

    pub fn pow(&self, e: i32) -> RatFunc {
        if e == 0 {
            return RatFunc::one();
        }
        let base = if e < 0 { self.recip() } else { self.clone() };
        let n = e.unsigned_abs();
        RatFunc::from_parts(
            base.num.pow(n),
            base.den.iter().map(|(f, m)| (f.clone(), m * n)).collect(),
        )
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::from_parts(&self.num + &other.num, self.den.clone());
        }
        let lcm = lcm_factors(&self.den, &other.den);
        let a = &self.num * &cofactor(&lcm, &self.den);
        let b = &other.num * &cofactor(&lcm, &other.den);
        RatFunc::from_parts(&a + &b, lcm)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    /// Sums many terms, adding numerators over identical denominators
    /// before taking any lcm.
    pub fn sum<'a, I: IntoIterator<Item = &'a RatFunc>>(items: I) -> RatFunc {
        let mut groups: BTreeMap<Factors, Poly> = BTreeMap::new();
        for r in items {
            if r.is_zero() {
                continue;
            }
            match groups.get_mut(&r.den) {
                Some(p) => *p = &*p + &r.num,
                None => {
                    groups.insert(r.den.clone(), r.num.clone());
                }
            }
        }
        let parts: Vec<RatFunc> = groups
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(d, p)| RatFunc { num: p, den: d })
            .collect();
        match parts.len() {
            0 => RatFunc::zero(),
            1 => parts.into_iter().next().unwrap(),
            _ => {
                let mut lcm: Factors = Vec::new();
                for p in &parts {
                    lcm = lcm_factors(&lcm, &p.den);
                }
                let mut num = Poly::zero();
                for p in &parts {
                    num = &num + &(&p.num * &cofactor(&lcm, &p.den));
                }
                RatFunc::from_parts(num, lcm)
            }
        }
    }

    /// Exact zero test of `self - other` by cross-multiplication.
    pub fn equals(&self, other: &RatFunc) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let lcm = lcm_factors(&self.den, &other.den);
        let a = &self.num * &cofactor(&lcm, &self.den);
        let b = &other.num * &cofactor(&lcm, &other.den);
        a == b
    }

    /// Monomial substitution of variables; fails if a denominator factor
    /// becomes identically zero.
    pub fn try_substitute<F>(&self, rule: F) -> Result<RatFunc, AlgebraError>
    where
        F: Fn(Var) -> Option<(Scalar, Monomial)>,
    {
        let num = self.num.substitute(&rule);
        let mut factors: Vec<(Poly, i32)> = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let g = f.substitute(&rule);
            if g.is_zero() {
                return Err(AlgebraError::DivisionByZero(format!("factor {f} vanishes under substitution")));
            }
            factors.push((g, -(*e as i32)));
        }
        Ok(RatFunc::from_factors(num, factors))
    }

    pub fn substitute<F>(&self, rule: F) -> RatFunc
    where
        F: Fn(Var) -> Option<(Scalar, Monomial)>,
    {
        self.try_substitute(rule).expect("substitution hit a pole")
    }

    /// Cancels common factors between the numerator and each denominator
    /// factor. Keeps the factored shape of the denominator.
    pub fn simplify(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let mut num = self.num.clone();
        let mut pending: Vec<(Poly, u32)> = self.den.clone();
        let mut kept: Vec<(Poly, i32)> = Vec::new();
        while let Some((f, mut e)) = pending.pop() {
            while e > 0 {
                if let Some(q) = num.exact_div(&f) {
                    num = q;
                    e -= 1;
                    continue;
                }
                if is_known_irreducible(&f) {
                    break;
                }
                let g = gcd(&num, &f);
                if g.is_one() {
                    break;
                }
                num = num.exact_div(&g).expect("gcd divides numerator");
                let rest = f.exact_div(&g).expect("gcd divides factor");
                e -= 1;
                if !rest.is_constant() {
                    pending.push((rest.normalize_unit().2, 1));
                    let (c, m, _) = rest.normalize_unit();
                    num = num.mul_term(&c.recip(), &m.inv());
                } else {
                    let c = rest.as_constant().unwrap();
                    num = num.scale(&c.recip());
                }
            }
            if e > 0 {
                kept.push((f, -(e as i32)));
            }
        }
        RatFunc::from_factors(num, kept)
    }

    /// Splits into (coefficient, rest) by applying `pred` to the numerator
    /// monomials; only valid when the denominator is free of `pred` variables.
    pub fn numerator_terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.num.terms().iter().map(|(m, c)| (m, c))
    }
}

fn merge_factors(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Factors {
    if a.is_empty() {
        return b.to_vec();
    }
    if b.is_empty() {
        return a.to_vec();
    }
    let mut map: BTreeMap<Poly, u32> = a.iter().cloned().collect();
    for (f, e) in b {
        *map.entry(f.clone()).or_insert(0) += e;
    }
    map.into_iter().collect()
}

fn lcm_factors(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Factors {
    let mut map: BTreeMap<Poly, u32> = a.iter().cloned().collect();
    for (f, e) in b {
        let v = map.entry(f.clone()).or_insert(0);
        *v = (*v).max(*e);
    }
    map.into_iter().collect()
}

/// `lcm / part` as an expanded polynomial.
fn cofactor(lcm: &[(Poly, u32)], part: &[(Poly, u32)]) -> Poly {
    let mut out = Poly::one();
    for (f, e) in lcm {
        let have = part
            .binary_search_by(|(g, _)| g.cmp(f))
            .map(|i| part[i].1)
            .unwrap_or(0);
        if *e > have {
            out = &out * &f.pow(e - have);
        }
    }
    out
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for RatFunc {}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::int(n)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl std::ops::Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        RatFunc::add(&self, &rhs)
    }
}

impl std::ops::Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::mul(&self, &rhs)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (i, (p, e)) in self.den.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})^{e}")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::{parse_poly, parse_ratfunc};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn factorization_equality() {
        let f = RatFunc::new(p("1 - q^2"), &p("1 - q"));
        let g = RatFunc::from_poly(p("1 + q"));
        assert_eq!(f, g);
    }

    #[test]
    fn different_functions_differ() {
        let f = RatFunc::new(p("x1"), &p("x2"));
        let g = RatFunc::new(p("x2"), &p("x1"));
        assert_ne!(f, g);
    }

    #[test]
    fn common_factor_invariance() {
        let base = RatFunc::new(&p("1 - t") * &p("1 + q"), &p("1 - q*t"));
        let scaled = RatFunc::new(&(&p("1 - t") * &p("1 + q")) * &p("1 - x1"), &(&p("1 - q*t") * &p("1 - x1")));
        assert_eq!(base, scaled);
    }

    #[test]
    fn addition_over_distinct_denominators() {
        // 1/(1-q) - q/(1-q) = 1
        let a = RatFunc::new(Poly::one(), &p("1 - q"));
        let b = RatFunc::new(p("q"), &p("1 - q"));
        assert!(a.sub(&b).simplify().is_one());
        // 1/(1-q) + 1/(1+q) = 2/(1-q^2)
        let c = RatFunc::new(Poly::one(), &p("1 + q"));
        assert_eq!(a.add(&c), RatFunc::new(p("2"), &p("1 - q^2")));
    }

    #[test]
    fn denominators_absorb_units() {
        let f = RatFunc::new(Poly::one(), &p("2*q - 2*q^2*x1"));
        assert_eq!(f.den_factors().len(), 1);
        assert!(f.den_factors()[0].0.leading().unwrap().1.is_one());
        assert_eq!(f.mul(&RatFunc::from_poly(p("2*q - 2*q^2*x1"))), RatFunc::one());
    }

    #[test]
    fn simplify_cancels_partial_factors() {
        let f = RatFunc::new(&p("1 - t") * &p("q + t"), &(&p("1 - t^2") * &p("q + t")));
        let s = f.simplify();
        assert_eq!(s, f);
        assert_eq!(s.den_factors().len(), 1);
        assert_eq!(s.numer().len(), 1);
    }

    #[test]
    fn text_round_trip() {
        let f = RatFunc::new(p("3/2*q - t*x1^-1"), &(&p("1 - q*t").pow(2) * &p("1 + x1")));
        let back = parse_ratfunc(&f.to_string()).unwrap();
        assert_eq!(back.to_string(), f.to_string());
    }

    #[test]
    fn substitution_detects_vanishing_denominator() {
        let f = RatFunc::new(Poly::one(), &p("1 - q*t"));
        let r = f.try_substitute(|v| (v == Var::T).then(|| (Scalar::one(), Monomial::var_pow(Var::Q, -1))));
        assert!(r.is_err());
    }
}
