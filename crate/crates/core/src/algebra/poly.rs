use std::collections::BTreeMap;

use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::monomial::Monomial;
use crate::algebra::var::{Group, Var};
use crate::algebra::Scalar;

/// Sparse multivariate Laurent polynomial over the rationals.
///
/// Terms are kept sorted by descending graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Scalar::from_integer(n.into()))
    }

    pub fn term(c: Scalar, m: Monomial) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Poly {
        Poly::term(Scalar::one(), m)
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Monomial::var(v))
    }

    /// `1 - c*m`, the building block of every q-Pochhammer factor.
    pub fn one_minus(c: &Scalar, m: &Monomial) -> Poly {
        Poly::from_terms([(Monomial::one(), Scalar::one()), (m.clone(), -c.clone())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Poly {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::default();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Scalar>) -> Poly {
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_terms(&mut terms);
        Poly { terms }
    }

    /// Builds from terms already sorted descending with distinct monomials.
    fn from_sorted(terms: Vec<(Monomial, Scalar)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// True when the polynomial is a scalar (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Single term `c*m`, if the polynomial has exactly one term.
    pub fn as_term(&self) -> Option<(&Scalar, &Monomial)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((c, m)),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(x, _)| m.cmp(x))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.iter().map(|p| p.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.contains(v))
    }

    pub fn has_group(&self, g: Group) -> bool {
        self.terms.iter().any(|(m, _)| m.has_group(g))
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Monomial::one(),
        };
        it.fold(first, |acc, (m, _)| acc.meet(m))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_sorted(self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        // multiplying by a monomial preserves grlex order
        Poly::from_sorted(self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect())
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_sorted(self.terms.iter().map(|(x, y)| (x.mul(m), y * c)).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Ring-homomorphic substitution of variables by scalar multiples of
    /// monomials. Variables for which `rule` returns `None` are kept.
    pub fn substitute<F>(&self, rule: F) -> Poly
    where
        F: Fn(Var) -> Option<(Scalar, Monomial)>,
    {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity_and_hasher(self.terms.len(), Default::default());
        for (m, c) in &self.terms {
            let (s, img) = substitute_monomial(m, &rule);
            let c = c * s;
            match acc.get_mut(&img) {
                Some(v) => *v += c,
                None => {
                    acc.insert(img, c);
                }
            }
        }
        Poly::from_map(acc)
    }

    /// Maximum and minimum exponent of `v` over all terms.
    pub fn exp_range(&self, v: Var) -> Option<(i32, i32)> {
        let mut it = self.terms.iter().map(|(m, _)| m.exp(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Splits by the exponent of `v`: `self = sum_e coeffs[e] * v^e`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, Poly> {
        let mut parts: BTreeMap<i32, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            parts.entry(e).or_default().push((m.without(v), c.clone()));
        }
        // removing v from a sorted list breaks grlex order only across degrees
        parts.into_iter().map(|(e, ts)| (e, Poly::from_terms(ts))).collect()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`
    /// in the Laurent polynomial ring.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((c, m)) = d.as_term() {
            let inv = c.recip();
            return Some(self.mul_term(&inv, &m.inv()));
        }
        // reduce to honest polynomials so leading-term division terminates
        let ca = self.monomial_content();
        let cd = d.monomial_content();
        let a = self.mul_monomial(&ca.inv());
        let dd = d.mul_monomial(&cd.inv());
        let q = poly_divide(&a, &dd)?;
        Some(q.mul_monomial(&ca.div(&cd)))
    }

    pub fn is_divisible_by(&self, d: &Poly) -> bool {
        self.exact_div(d).is_some()
    }

    /// Leading coefficient made 1 and monomial content removed.
    ///
    /// Returns `(unit_coeff, unit_monomial, normalized)` with
    /// `self = unit_coeff * unit_monomial * normalized`.
    pub fn normalize_unit(&self) -> (Scalar, Monomial, Poly) {
        assert!(!self.is_zero(), "cannot normalize the zero polynomial");
        let content = self.monomial_content();
        let shifted = self.mul_monomial(&content.inv());
        let lc = shifted.terms[0].1.clone();
        let normalized = shifted.scale(&lc.recip());
        (lc, content, normalized)
    }

    pub fn max_group_degree(&self, g: Group) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.group_degree(g)).max()
    }

    pub fn min_group_degree(&self, g: Group) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.group_degree(g)).min()
    }

    /// Drops every term whose `g`-degree exceeds `cap`.
    pub fn truncate_group(&self, g: Group, cap: i64) -> Poly {
        Poly::from_sorted(
            self.terms
                .iter()
                .filter(|(m, _)| m.group_degree(g) <= cap)
                .cloned()
                .collect(),
        )
    }
}

pub(crate) fn substitute_monomial<F>(m: &Monomial, rule: &F) -> (Scalar, Monomial)
where
    F: Fn(Var) -> Option<(Scalar, Monomial)>,
{
    let mut s = Scalar::one();
    let mut pairs: Vec<(Var, i32)> = Vec::new();
    for (v, e) in m.iter() {
        match rule(v) {
            Some((c, img)) => {
                s *= pow_scalar(&c, e);
                pairs.extend(img.iter().map(|(w, f)| (w, f * e)));
            }
            None => pairs.push((v, e)),
        }
    }
    (s, Monomial::from_pairs(pairs))
}

pub(crate) fn pow_scalar(c: &Scalar, e: i32) -> Scalar {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else {
        num_traits::pow(c.recip(), (-e) as usize)
    }
}

/// Polynomial long division for honest (nonnegative-exponent) polynomials.
fn poly_divide(a: &Poly, d: &Poly) -> Option<Poly> {
    let (lm, lc) = d.terms[0].clone();
    let lc_inv = lc.recip();
    let mut rem = a.clone();
    let mut quot: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some((m, c)) = rem.terms.first().cloned() {
        let qm = m.div(&lm);
        if !qm.is_nonnegative() && !qm.is_one() {
            return None;
        }
        let qc = c * &lc_inv;
        rem = &rem - &d.mul_term(&qc, &qm);
        quot.push((qm, qc));
    }
    Some(Poly::from_terms(quot))
}

fn merge_add(a: &[(Monomial, Scalar)], b: &[(Monomial, Scalar)], negate_b: bool) -> Vec<(Monomial, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -b[j].1.clone() } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate_b { -c.clone() } else { c.clone() })));
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::from_sorted(merge_add(&self.terms, &rhs.terms, false))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::from_sorted(merge_add(&self.terms, &rhs.terms, true))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_sorted(self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some((c, m)) = rhs.as_term() {
            return self.mul_term(c, m);
        }
        if let Some((c, m)) = self.as_term() {
            return rhs.mul_term(c, m);
        }
        let (sa, ia) = integer_parts(&self.terms);
        let (sb, ib) = integer_parts(&rhs.terms);
        let denom = sa * sb;
        let prod = small_product(&self.terms, &ia, &rhs.terms, &ib).unwrap_or_else(|| big_product(&self.terms, &ia, &rhs.terms, &ib));
        let mut terms: Vec<(Monomial, Scalar)> = prod
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, if denom.is_one() { Scalar::from_integer(c) } else { Scalar::new(c, denom.clone()) }))
            .collect();
        sort_terms(&mut terms);
        Poly { terms }
    }
}

/// Descending grlex with each degree computed once.
fn sort_terms(terms: &mut Vec<(Monomial, Scalar)>) {
    let mut keyed: Vec<(i64, (Monomial, Scalar))> = terms.drain(..).map(|t| (t.0.degree(), t)).collect();
    keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1 .0.grlex_cmp(&a.1 .0)));
    terms.extend(keyed.into_iter().map(|(_, t)| t));
}

/// Common denominator `s` and the integer numerators `s * c`.
fn integer_parts(terms: &[(Monomial, Scalar)]) -> (BigInt, Vec<BigInt>) {
    let mut s = BigInt::one();
    for (_, c) in terms {
        if !c.denom().is_one() {
            s = s.lcm(c.denom());
        }
    }
    let ints = terms
        .iter()
        .map(|(_, c)| if s.is_one() { c.numer().clone() } else { c.numer() * (&s / c.denom()) })
        .collect();
    (s, ints)
}

/// Product with machine integers; `None` when anything overflows.
fn small_product(a: &[(Monomial, Scalar)], ia: &[BigInt], b: &[(Monomial, Scalar)], ib: &[BigInt]) -> Option<HashMap<Monomial, BigInt>> {
    let sa: Vec<i64> = ia.iter().map(|c| c.to_i64()).collect::<Option<_>>()?;
    let sb: Vec<i64> = ib.iter().map(|c| c.to_i64()).collect::<Option<_>>()?;
    let mut acc: HashMap<Monomial, i128> = HashMap::with_capacity_and_hasher(a.len() * b.len(), Default::default());
    for ((ma, _), ca) in a.iter().zip(&sa) {
        for ((mb, _), cb) in b.iter().zip(&sb) {
            let c = *ca as i128 * *cb as i128;
            let v = acc.entry(ma.mul(mb)).or_insert(0);
            *v = v.checked_add(c)?;
        }
    }
    Some(acc.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect())
}

fn big_product(a: &[(Monomial, Scalar)], ia: &[BigInt], b: &[(Monomial, Scalar)], ib: &[BigInt]) -> HashMap<Monomial, BigInt> {
    let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity_and_hasher(a.len() * b.len(), Default::default());
    for ((ma, _), ca) in a.iter().zip(ia) {
        for ((mb, _), cb) in b.iter().zip(ib) {
            *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    acc
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn fmt_scalar(c: &Scalar) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Canonical text: terms in descending graded-lex order, explicit
    /// rational coefficients except a unit coefficient on a non-constant
    /// monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_scalar(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn distributes_pochhammer_pair() {
        let lhs = &p("1 - x1") * &p("1 - q*x1");
        assert_eq!(lhs, p("1 - x1 - q*x1 + q*x1^2"));
    }

    #[test]
    fn identity_and_zero() {
        let a = p("3/2*q*x1^-1 - t + 7");
        assert_eq!(&a * &Poly::one(), a);
        let zero = &p("x1") - &p("x1");
        assert!(zero.is_zero());
        assert!((&zero * &a).is_zero());
    }

    #[test]
    fn exact_division_in_laurent_ring() {
        let f = p("1 - q^2");
        let g = p("1 - q");
        assert_eq!(f.exact_div(&g).unwrap(), p("1 + q"));
        assert!(g.exact_div(&f).is_none());
        let h = &p("x1^-1 - t*x2^-1") * &p("q + x1");
        assert_eq!(h.exact_div(&p("x2 - t*x1")).unwrap(), &p("q + x1") * &p("x1^-1*x2^-1"));
    }

    #[test]
    fn normalization_splits_unit() {
        let f = p("-2*q*x1 + 4*q^2");
        let (c, m, n) = f.normalize_unit();
        let back = n.mul_term(&c, &m);
        assert_eq!(back, f);
        assert!(n.leading().unwrap().1.is_one());
        assert!(n.monomial_content().is_one());
    }

    #[test]
    fn substitution_is_monomial_map() {
        let f = p("1 - hbar_dual");
        let g = f.substitute(|v| (v == Var::HBAR_DUAL).then(|| (Scalar::one(), Monomial::from_pairs([(Var::Q, 1), (Var::HBAR, -1)]))));
        assert_eq!(g, p("1 - q*hbar^-1"));
    }
}
