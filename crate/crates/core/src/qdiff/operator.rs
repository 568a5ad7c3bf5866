use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::algebra::{AlgebraError, Monomial, Poly, RatFunc, Scalar, Var};
use crate::qcomb::QFactorList;

/// `sum_d c_d(x) prod_i p_i^{d_i}` where `p_i` sends `x_i` to `q x_i`.
#[derive(Clone, Debug)]
pub struct ShiftOperator {
    k: usize,
    terms: BTreeMap<Vec<u32>, RatFunc>,
}

/// All `(d_1..d_k)` with nonnegative entries summing to `d`, in
/// descending lexicographic order.
pub fn compositions(d: u32, k: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in (0..=left).rev() {
            cur.push(first);
            rec(left - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(d, k, &mut Vec::new(), &mut out);
    out
}

fn x(i: usize) -> Monomial {
    Monomial::var(Var::x(i + 1))
}

/// `x_j / x_i` with 0-based indices.
fn ratio(j: usize, i: usize) -> Monomial {
    x(j).div(&x(i))
}

fn qpow(e: i32) -> Monomial {
    Monomial::var_pow(Var::Q, e)
}

/// Substitution `x_i -> q^{d_i} x_i`.
fn shift_rule(shift: &[u32]) -> impl Fn(Var) -> Option<(Scalar, Monomial)> + '_ {
    move |v: Var| {
        let i = v.index()?;
        if Var::x(i) != v || i == 0 || i > shift.len() {
            return None;
        }
        Some((Scalar::one(), x(i - 1).mul(&qpow(shift[i - 1] as i32))))
    }
}

impl ShiftOperator {
    pub fn zero(k: usize) -> ShiftOperator {
        ShiftOperator { k, terms: BTreeMap::new() }
    }

    pub fn identity(k: usize) -> ShiftOperator {
        ShiftOperator::from_terms(k, [(vec![0; k], RatFunc::one())])
    }

    /// The elementary shift `p_i` (0-based `i`).
    pub fn shift(k: usize, i: usize) -> ShiftOperator {
        let mut d = vec![0; k];
        d[i] = 1;
        ShiftOperator::from_terms(k, [(d, RatFunc::one())])
    }

    /// Merges equal shifts and drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, RatFunc)>>(k: usize, terms: I) -> ShiftOperator {
        let mut acc: BTreeMap<Vec<u32>, Vec<RatFunc>> = BTreeMap::new();
        for (d, c) in terms {
            assert_eq!(d.len(), k, "shift vector length");
            acc.entry(d).or_default().push(c);
        }
        let terms = acc
            .into_iter()
            .filter_map(|(d, cs)| {
                let c = if cs.len() == 1 { cs.into_iter().next().unwrap() } else { RatFunc::sum(cs.iter()) };
                (!c.is_zero()).then_some((d, c))
            })
            .collect();
        ShiftOperator { k, terms }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, shift: &[u32]) -> RatFunc {
        self.terms.get(shift).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// `sum_d c_d(x) f(q^d x)`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let parts: Vec<RatFunc> = self.terms.iter().map(|(d, c)| c.mul(&f.substitute(shift_rule(d)))).collect();
        RatFunc::sum(parts.iter())
    }

    /// `self ∘ other`: coefficients of `other` are shifted by the shift of
    /// the outer term.
    pub fn compose(&self, other: &ShiftOperator) -> Result<ShiftOperator, AlgebraError> {
        if self.k != other.k {
            return Err(AlgebraError::Length(format!("composing operators in {} and {} variables", self.k, other.k)));
        }
        let mut out = Vec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let shifted = cb.try_substitute(shift_rule(a))?;
                let d: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.push((d, ca.mul(&shifted)));
            }
        }
        Ok(ShiftOperator::from_terms(self.k, out))
    }

    pub fn add(&self, other: &ShiftOperator) -> ShiftOperator {
        let it = self.terms.iter().chain(other.terms.iter()).map(|(d, c)| (d.clone(), c.clone()));
        ShiftOperator::from_terms(self.k, it)
    }

    pub fn sub(&self, other: &ShiftOperator) -> ShiftOperator {
        let neg = other.terms.iter().map(|(d, c)| (d.clone(), c.neg()));
        ShiftOperator::from_terms(self.k, self.terms.iter().map(|(d, c)| (d.clone(), c.clone())).chain(neg))
    }

    pub fn scale(&self, c: &RatFunc) -> ShiftOperator {
        ShiftOperator::from_terms(self.k, self.terms.iter().map(|(d, t)| (d.clone(), t.mul(c))))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients<F>(&self, f: F) -> Result<ShiftOperator, AlgebraError>
    where
        F: Fn(&RatFunc) -> Result<RatFunc, AlgebraError>,
    {
        let mut out = Vec::with_capacity(self.terms.len());
        for (d, c) in &self.terms {
            out.push((d.clone(), f(c)?));
        }
        Ok(ShiftOperator::from_terms(self.k, out))
    }
}

impl PartialEq for ShiftOperator {
    fn eq(&self, other: &ShiftOperator) -> bool {
        self.k == other.k
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(d, c)| other.terms.get(d).is_some_and(|o| o == c))
    }
}

impl fmt::Display for ShiftOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (d, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let shift: Vec<String> = d.iter().map(|e| e.to_string()).collect();
            write!(f, "({})*p^({})", c, shift.join(","))?;
        }
        Ok(())
    }
}

/// `prod_{i,j} (t x_j/x_i)_{d_j} / (q x_j/x_i)_{d_j}`, shared by every
/// operator below.
fn leading_block(shift: &[u32], t: &Monomial) -> QFactorList {
    let one = Scalar::one();
    let mut f = QFactorList::new();
    let k = shift.len();
    for i in 0..k {
        for (j, &dj) in shift.iter().enumerate() {
            let m = ratio(j, i);
            let dj = dj as i32;
            f.mul_qpoch(&one, &t.mul(&m), dj);
            f.div_qpoch(&one, &qpow(1).mul(&m), dj);
        }
    }
    f
}

fn assemble<F>(d: u32, k: usize, coefficient: F) -> Result<ShiftOperator, AlgebraError>
where
    F: Fn(&[u32]) -> Result<RatFunc, AlgebraError>,
{
    let mut terms = Vec::new();
    for shift in compositions(d, k) {
        let c = coefficient(&shift)?;
        terms.push((shift, c));
    }
    Ok(ShiftOperator::from_terms(k, terms))
}

/// `D_d(x; q, t)`: the sum over compositions of `d` of
/// `prod_{i,j} (t x_j/x_i)_{d_j}/(q x_j/x_i)_{d_j} (q x_j/x_i)_{d_j-d_i}/(t x_j/x_i)_{d_j-d_i}`
/// times `prod_i p_i^{d_i}`.
pub fn op_d(d: u32, k: usize) -> Result<ShiftOperator, AlgebraError> {
    let t = Monomial::var(Var::T);
    let one = Scalar::one();
    assemble(d, k, |shift| {
        let mut f = leading_block(shift, &t);
        for i in 0..k {
            for j in 0..k {
                let m = ratio(j, i);
                let e = shift[j] as i32 - shift[i] as i32;
                f.mul_qpoch(&one, &qpow(1).mul(&m), e);
                f.div_qpoch(&one, &t.mul(&m), e);
            }
        }
        Ok(f.evaluate()?.into_ratfunc())
    })
}

/// `D_d` written with the pairwise factors
/// `(1 - q^{d_j-d_i} x_j/x_i)/(1 - x_j/x_i) (q x_j/(t x_i))_{d_j-d_i}/(t x_j/x_i)_{d_j-d_i} (t/q)^{d_j-d_i}`
/// over `i < j`.
pub fn op_d_rewritten(d: u32, k: usize) -> Result<ShiftOperator, AlgebraError> {
    let t = Monomial::var(Var::T);
    let q_over_t = qpow(1).div(&t);
    let t_over_q = t.div(&qpow(1));
    let one = Scalar::one();
    assemble(d, k, |shift| {
        let mut f = leading_block(shift, &t);
        let mut extra = RatFunc::one();
        for i in 0..k {
            for j in i + 1..k {
                let m = ratio(j, i);
                let e = shift[j] as i32 - shift[i] as i32;
                f.mul_qpoch(&one, &q_over_t.mul(&m), e);
                f.div_qpoch(&one, &t.mul(&m), e);
                let num = Poly::one_minus(&one, &qpow(e).mul(&m));
                let den = Poly::one_minus(&one, &m);
                extra = extra.mul(&RatFunc::new(num, &den)).mul_monomial(&t_over_q.pow(e));
            }
        }
        Ok(f.evaluate()?.into_ratfunc().mul(&extra))
    })
}

/// Noumi's row-type operator `N_d(x; q, t)`.
pub fn op_n(d: u32, k: usize) -> Result<ShiftOperator, AlgebraError> {
    let t = Monomial::var(Var::T);
    assemble(d, k, |shift| {
        let mut c = leading_block(shift, &t).evaluate()?.into_ratfunc();
        for i in 0..k {
            for j in i + 1..k {
                let num = &Poly::monomial(x(j).mul(&qpow(shift[j] as i32))) - &Poly::monomial(x(i).mul(&qpow(shift[i] as i32)));
                let den = &Poly::monomial(x(j)) - &Poly::monomial(x(i));
                c = c.mul(&RatFunc::new(num, &den));
            }
        }
        Ok(c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_expr;

    fn r(s: &str) -> RatFunc {
        parse_expr(s).unwrap()
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn degree_zero_is_identity() {
        for k in 1..=3 {
            assert_eq!(op_d(0, k).unwrap(), ShiftOperator::identity(k));
            assert_eq!(op_n(0, k).unwrap(), ShiftOperator::identity(k));
        }
    }

    #[test]
    fn one_variable() {
        let want = r("(1 - t)*(1 - q*t)/((1 - q)*(1 - q^2))");
        let d = op_d(2, 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.coefficient(&[2]), want);
        assert_eq!(op_n(2, 1).unwrap(), d);
        // x^m is an eigenvector with eigenvalue (t)_2/(q)_2 q^{2m}
        let f = r("x1^3");
        assert_eq!(d.apply(&f), f.mul(&want).mul_monomial(&qpow(6)));
    }

    #[test]
    fn d1_two_variables() {
        let d = op_d(1, 2).unwrap();
        assert_eq!(d.len(), 2);
        let want = r("(1 - t)*(1 - t*x2/(q*x1))/((1 - q)*(1 - x2/x1))");
        assert_eq!(d.coefficient(&[1, 0]), want);
    }

    #[test]
    fn shifts_commute() {
        let a = ShiftOperator::shift(2, 0);
        let b = ShiftOperator::shift(2, 1);
        assert_eq!(a.compose(&b).unwrap(), b.compose(&a).unwrap());
        let id = ShiftOperator::identity(2);
        let d = op_d(1, 2).unwrap();
        assert_eq!(id.compose(&d).unwrap(), d);
    }

    #[test]
    fn compose_then_apply() {
        let a = op_d(1, 2).unwrap();
        let b = op_n(1, 2).unwrap();
        let f = r("x1^2 + 3*x2");
        assert_eq!(a.compose(&b).unwrap().apply(&f), a.apply(&b.apply(&f)));
    }
}
