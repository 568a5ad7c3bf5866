//! Truncated multivariate power series.
//!
//! Variables whose group carries a cap are series variables; everything
//! else lives in the rational-function coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::{substitute_monomial, Poly};
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::var::{Group, Var};
use crate::algebra::{AlgebraError, Scalar};

/// Maximum total degree per capped variable group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Caps(BTreeMap<Group, u32>);

impl Caps {
    pub fn new() -> Caps {
        Caps::default()
    }

    pub fn with(mut self, g: Group, cap: u32) -> Caps {
        self.0.insert(g, cap);
        self
    }

    pub fn cap(&self, g: Group) -> Option<u32> {
        self.0.get(&g).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Group, u32)> + '_ {
        self.0.iter().map(|(g, c)| (*g, *c))
    }

    pub fn is_capped(&self, v: Var) -> bool {
        self.0.contains_key(&v.group())
    }

    /// Sum of all caps; bounds the nilpotency order of a series with zero
    /// constant term.
    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    /// True when every capped group degree of `m` is within its cap.
    pub fn admits(&self, m: &Monomial) -> bool {
        self.0.iter().all(|(g, c)| m.group_degree(*g) <= *c as i64)
    }

    /// Splits a monomial into (series part, coefficient part).
    pub fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        m.split(|v| self.is_capped(v))
    }

    fn widened(&self, by: &BTreeMap<Group, u32>) -> Caps {
        let mut out = self.clone();
        for (g, w) in by {
            if let Some(c) = out.0.get_mut(g) {
                *c += w;
            }
        }
        out
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, c)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}={}", g.name(), c)?;
        }
        Ok(())
    }
}

/// A power series in the capped variables, truncated at the caps, with
/// coefficients that are rational functions of the remaining variables.
#[derive(Clone)]
pub struct TruncatedSeries {
    caps: Caps,
    terms: BTreeMap<Monomial, RatFunc>,
}

impl TruncatedSeries {
    pub fn zero(caps: &Caps) -> TruncatedSeries {
        TruncatedSeries { caps: caps.clone(), terms: BTreeMap::new() }
    }

    pub fn one(caps: &Caps) -> TruncatedSeries {
        TruncatedSeries::constant(caps, RatFunc::one())
    }

    pub fn constant(caps: &Caps, c: RatFunc) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(caps);
        if !c.is_zero() {
            s.terms.insert(Monomial::one(), c);
        }
        s
    }

    /// `c * m`; `m` must consist of capped variables with nonnegative
    /// exponents. Dropped if beyond the caps.
    pub fn term(caps: &Caps, m: Monomial, c: RatFunc) -> Result<TruncatedSeries, AlgebraError> {
        let (series, rest) = caps.split(&m);
        if !series.iter().all(|(_, e)| e > 0) {
            return Err(AlgebraError::CapViolation(format!("negative exponent in {m}")));
        }
        let c = if rest.is_one() { c } else { c.mul_monomial(&rest) };
        let mut s = TruncatedSeries::zero(caps);
        if caps.admits(&series) && !c.is_zero() {
            s.terms.insert(series, c);
        }
        Ok(s)
    }

    pub(crate) fn from_map(caps: &Caps, terms: BTreeMap<Monomial, RatFunc>) -> TruncatedSeries {
        let mut terms = terms;
        terms.retain(|m, c| !c.is_zero() && caps.admits(m));
        TruncatedSeries { caps: caps.clone(), terms }
    }

    /// Collects `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, RatFunc)>>(caps: &Caps, it: I) -> TruncatedSeries {
        let mut acc: BTreeMap<Monomial, Vec<RatFunc>> = BTreeMap::new();
        for (m, c) in it {
            if caps.admits(&m) && !c.is_zero() {
                acc.entry(m).or_default().push(c);
            }
        }
        let terms = acc.into_iter().map(|(m, cs)| (m, RatFunc::sum(cs.iter()))).collect();
        TruncatedSeries::from_map(caps, terms)
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn constant_term(&self) -> RatFunc {
        self.coefficient(&Monomial::one())
    }

    fn check_caps(&self, other: &TruncatedSeries) {
        assert_eq!(self.caps, other.caps, "series with different caps");
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_caps(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => *v = v.add(c),
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TruncatedSeries { caps: self.caps.clone(), terms }
    }

    pub fn neg(&self) -> TruncatedSeries {
        self.map_coefficients(|c| c.neg())
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> TruncatedSeries {
        self.map_coefficients(|x| x.mul(c))
    }

    pub fn map_coefficients<F: Fn(&RatFunc) -> RatFunc>(&self, f: F) -> TruncatedSeries {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect();
        TruncatedSeries::from_map(&self.caps, terms)
    }

    /// Cancels common factors in every coefficient.
    pub fn simplify(&self) -> TruncatedSeries {
        self.map_coefficients(|c| c.simplify())
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_caps(other);
        if self.is_zero() || other.is_zero() {
            return TruncatedSeries::zero(&self.caps);
        }
        if self.is_constant_series() {
            return other.scale(&self.constant_term());
        }
        if other.is_constant_series() {
            return self.scale(&other.constant_term());
        }
        let mut acc: BTreeMap<Monomial, Vec<RatFunc>> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if self.caps.admits(&m) {
                    acc.entry(m).or_default().push(ca.mul(cb));
                }
            }
        }
        let terms = acc.into_iter().map(|(m, cs)| (m, RatFunc::sum(cs.iter()))).collect();
        TruncatedSeries::from_map(&self.caps, terms)
    }

    fn is_constant_series(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains_key(&Monomial::one())
    }

    pub fn pow(&self, e: u32) -> TruncatedSeries {
        let mut result = TruncatedSeries::one(&self.caps);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<TruncatedSeries, AlgebraError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(AlgebraError::DivisionByZero("series without constant term".into()));
        }
        let c0_inv = c0.recip();
        let mut g = self.scale(&c0_inv);
        g.terms.remove(&Monomial::one());
        // 1/(1+g) = 1 - g(1 - g(1 - ...))
        let one = TruncatedSeries::one(&self.caps);
        let mut r = one.clone();
        for _ in 0..self.caps.total() {
            r = one.sub(&g.mul(&r));
        }
        Ok(r.scale(&c0_inv))
    }

    /// Re-truncates to smaller caps.
    pub fn truncate(&self, caps: &Caps) -> TruncatedSeries {
        TruncatedSeries::from_map(caps, self.terms.clone())
    }

    /// Monomial substitution; the image is re-truncated at `target`.
    pub fn substitute<F>(&self, rule: F, target: &Caps) -> Result<TruncatedSeries, AlgebraError>
    where
        F: Fn(Var) -> Option<(Scalar, Monomial)>,
    {
        let mut acc: Vec<(Monomial, RatFunc)> = Vec::with_capacity(self.terms.len());
        let mut expanded = TruncatedSeries::zero(target);
        for (m, c) in &self.terms {
            let (s, img) = substitute_monomial(m, &rule);
            let (series, rest) = target.split(&img);
            if !series.iter().all(|(_, e)| e > 0) {
                return Err(AlgebraError::CapViolation(format!("{m} maps to {img}")));
            }
            if !target.admits(&series) {
                continue;
            }
            let mut coeff = c.try_substitute(&rule)?.scale(&s);
            if !rest.is_one() {
                coeff = coeff.mul_monomial(&rest);
            }
            if coeff.vars().iter().any(|v| target.is_capped(*v)) {
                let part = series_expand(&coeff, target)?;
                let shifted = TruncatedSeries::term(target, series, RatFunc::one())?;
                expanded = expanded.add(&part.mul(&shifted));
            } else {
                acc.push((series, coeff));
            }
        }
        Ok(TruncatedSeries::from_terms(target, acc).add(&expanded))
    }

    /// Coefficient-wise comparison; returns the differing monomials in
    /// ascending order with both coefficients.
    pub fn diff(&self, other: &TruncatedSeries) -> Vec<(Monomial, RatFunc, RatFunc)> {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|m| {
                let a = self.coefficient(m);
                let b = other.coefficient(m);
                (a != b).then(|| (m.clone(), a, b))
            })
            .collect()
    }
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.caps == other.caps && self.diff(other).is_empty()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.caps, self)
    }
}

/// Taylor expansion of `f` around the origin of the capped variables.
///
/// Each denominator factor involving capped variables must have a unique
/// lowest-degree capped monomial `M0`, and every other capped monomial in
/// it must be a multiple of `M0`; otherwise the pole is not expandable.
pub fn series_expand(f: &RatFunc, caps: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    if f.is_zero() {
        return Ok(TruncatedSeries::zero(caps));
    }
    let mut coeff = RatFunc::one();
    let mut laurent = Monomial::one();
    // (series part of 1 + g, exponent) for every factor needing expansion
    let mut pieces: Vec<(Vec<(Monomial, RatFunc)>, u32)> = Vec::new();
    let mut plain: Vec<(Poly, i32)> = Vec::new();
    for (p, e) in f.den_factors() {
        if !p.vars().iter().any(|v| caps.is_capped(*v)) {
            plain.push((p.clone(), -(*e as i32)));
            continue;
        }
        let parts = split_by_series(p, caps);
        let degree = |m: &Monomial| caps.iter().map(|(g, _)| m.group_degree(g)).sum::<i64>();
        let lowest = parts.keys().map(degree).min().unwrap();
        let at_lowest: Vec<&Monomial> = parts.keys().filter(|m| degree(m) == lowest).collect();
        if at_lowest.len() != 1 {
            return Err(AlgebraError::NonExpandablePole(format!("({p}) has no unique lowest term")));
        }
        let m0 = at_lowest[0].clone();
        let c0 = RatFunc::from_poly(parts[&m0].clone());
        let c0_inv = c0.recip();
        let mut g = Vec::new();
        for (m, c) in &parts {
            if *m == m0 {
                continue;
            }
            let ratio = m.div(&m0);
            if !ratio.iter().all(|(_, x)| x > 0) {
                return Err(AlgebraError::NonExpandablePole(format!("({p}) is not a power series around 0")));
            }
            g.push((ratio, RatFunc::from_poly(c.clone()).mul(&c0_inv)));
        }
        coeff = coeff.mul(&c0_inv.pow(*e as i32));
        laurent = laurent.mul(&m0.pow(-(*e as i32)));
        pieces.push((g, *e));
    }
    coeff = coeff.mul(&RatFunc::from_factors(Poly::one(), plain));

    let numer = split_by_series(f.numer(), caps);
    let mut widen: BTreeMap<Group, u32> = BTreeMap::new();
    for m in numer.keys() {
        let shifted = m.mul(&laurent);
        for (g, _) in caps.iter() {
            let d = shifted.group_degree(g);
            if d < 0 {
                let w = widen.entry(g).or_insert(0);
                *w = (*w).max((-d) as u32);
            }
        }
    }
    let inner_caps = caps.widened(&widen);
    let mut body = TruncatedSeries::one(&inner_caps);
    for (g, e) in pieces {
        let inv = inverse_one_plus(&g, &inner_caps)?;
        body = body.mul(&inv.pow(e));
    }
    let mut acc: Vec<(Monomial, RatFunc)> = Vec::new();
    for (nm, nc) in &numer {
        let shift = nm.mul(&laurent);
        let nc = RatFunc::from_poly(nc.clone());
        for (bm, bc) in body.terms() {
            let m = shift.mul(bm);
            if caps.admits(&m) {
                acc.push((m, nc.mul(bc)));
            }
        }
    }
    let mut grouped: BTreeMap<Monomial, Vec<RatFunc>> = BTreeMap::new();
    for (m, c) in acc {
        grouped.entry(m).or_default().push(c);
    }
    let mut terms = BTreeMap::new();
    for (m, cs) in grouped {
        let c = RatFunc::sum(cs.iter());
        if c.is_zero() {
            continue;
        }
        if !m.iter().all(|(_, e)| e > 0) {
            return Err(AlgebraError::NonExpandablePole(format!("Laurent term {m} survives")));
        }
        terms.insert(m, c.mul(&coeff));
    }
    Ok(TruncatedSeries::from_map(caps, terms))
}

/// Groups the terms of `p` by their capped-variable monomial.
fn split_by_series(p: &Poly, caps: &Caps) -> BTreeMap<Monomial, Poly> {
    let mut parts: BTreeMap<Monomial, Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (s, rest) = caps.split(m);
        parts.entry(s).or_default().push((rest, c.clone()));
    }
    parts.into_iter().map(|(m, ts)| (m, Poly::from_terms(ts))).collect()
}

/// `1 / (1 + sum c_i m_i)` for monomials of positive degree.
fn inverse_one_plus(g: &[(Monomial, RatFunc)], caps: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    if let [(m, c)] = g {
        // geometric series
        let ratio = c.neg();
        let mut terms = BTreeMap::new();
        let mut power = Monomial::one();
        let mut cp = RatFunc::one();
        while caps.admits(&power) {
            terms.insert(power.clone(), cp.clone());
            power = power.mul(m);
            cp = cp.mul(&ratio);
        }
        return Ok(TruncatedSeries::from_map(caps, terms));
    }
    let mut s = TruncatedSeries::one(caps);
    for (m, c) in g {
        s = s.add(&TruncatedSeries::term(caps, m.clone(), c.clone())?);
    }
    s.inverse()
}

impl TruncatedSeries {
    /// Series of a polynomial (no expansion needed).
    pub fn from_poly(caps: &Caps, p: &Poly) -> Result<TruncatedSeries, AlgebraError> {
        series_expand(&RatFunc::from_poly(p.clone()), caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::algebra::text::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn ratio_caps(c: u32) -> Caps {
        Caps::new().with(Group::Ratio, c)
    }

    fn series_of(caps: &Caps, s: &str) -> TruncatedSeries {
        TruncatedSeries::from_poly(caps, &p(s)).unwrap()
    }

    #[test]
    fn geometric_series() {
        let caps = ratio_caps(3);
        let s = series_expand(&RatFunc::new(Poly::one(), &p("1 - r1")), &caps).unwrap();
        assert_eq!(s, series_of(&caps, "1 + r1 + r1^2 + r1^3"));
    }

    #[test]
    fn numerator_times_geometric() {
        let caps = ratio_caps(2);
        let s = series_expand(&RatFunc::new(p("1 - hbar*r1"), &p("1 - q*r1")), &caps).unwrap();
        let want = series_of(&caps, "1 + q*r1 - hbar*r1 + q^2*r1^2 - q*hbar*r1^2");
        assert_eq!(s, want);
    }

    #[test]
    fn equal_degree_pole_is_rejected() {
        let caps = ratio_caps(2);
        let e = series_expand(&RatFunc::new(Poly::one(), &p("r1 - r2")), &caps);
        assert!(matches!(e, Err(AlgebraError::NonExpandablePole(_))));
    }

    #[test]
    fn negative_degree_factor_is_flipped() {
        // 1/(1 - q/r1) = -r1/q * 1/(1 - r1/q)
        let caps = ratio_caps(3);
        let f = RatFunc::new(Poly::one(), &p("1 - q*r1^-1"));
        let s = series_expand(&f, &caps).unwrap();
        let want = series_of(&caps, "-q^-1*r1 - q^-2*r1^2 - q^-3*r1^3");
        assert_eq!(s, want);
    }

    #[test]
    fn laurent_part_cancelled_by_numerator() {
        let caps = ratio_caps(2);
        let f = RatFunc::new(p("r1"), &p("r1 - r1^2"));
        assert_eq!(series_expand(&f, &caps).unwrap(), series_of(&caps, "1 + r1 + r1^2"));
        let g = RatFunc::new(Poly::one(), &p("r1"));
        assert!(series_expand(&g, &caps).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let caps = Caps::new().with(Group::Ratio, 3).with(Group::Kahler, 2);
        let s = series_of(&caps, "2 + q*r1 - z*r2 + t*z^2");
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv), TruncatedSeries::one(&caps));
    }

    #[test]
    fn substitution_is_homomorphic() {
        let caps = Caps::new().with(Group::Kahler, 3);
        let target = Caps::new().with(Group::Ratio, 3);
        let a = series_of(&caps, "1 + z1 - hbar_dual*z1*z2");
        let b = series_of(&caps, "1 - q*z2 + z1^2");
        let rule = |v: Var| match v.index() {
            Some(i) if v.group() == Group::Kahler => Some((Scalar::one(), Monomial::from_pairs([(Var::HBAR, 1), (Var::r(i), 1)]))),
            _ if v == Var::HBAR_DUAL => Some((Scalar::one(), Monomial::from_pairs([(Var::Q, 1), (Var::HBAR, -1)]))),
            _ => None,
        };
        let lhs = a.mul(&b).substitute(rule, &target).unwrap();
        let rhs = a.substitute(rule, &target).unwrap().mul(&b.substitute(rule, &target).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_into_negative_exponent_fails() {
        let caps = Caps::new().with(Group::Kahler, 2);
        let s = series_of(&caps, "1 + z");
        let r = s.substitute(|v| (v == Var::Z).then(|| (Scalar::one(), Monomial::var_pow(Var::r(1), -1))), &ratio_caps(2));
        assert!(matches!(r, Err(AlgebraError::CapViolation(_))));
    }
}
