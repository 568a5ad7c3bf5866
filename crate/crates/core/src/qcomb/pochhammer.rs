use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::poly::pow_scalar;
use crate::algebra::{AlgebraError, Monomial, Poly, RatFunc, Scalar, Var};

/// A product of linear factors `(1 - c*m)^e` with signed multiplicities.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QFactorList {
    factors: Vec<(Scalar, Monomial, i32)>,
}

/// Outcome of merging factor lists: an exact zero or a rational function.
#[derive(Clone, Debug, PartialEq)]
pub enum QRatio {
    Zero,
    Value(RatFunc),
}

impl QRatio {
    pub fn into_ratfunc(self) -> RatFunc {
        match self {
            QRatio::Zero => RatFunc::zero(),
            QRatio::Value(r) => r,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, QRatio::Zero)
    }
}

/// `(x)_n` for `x = c*m`; negative `n` gives `1/prod_{i=1..|n|} (1 - x q^-i)`.
pub fn qpoch(c: &Scalar, m: &Monomial, n: i32) -> QFactorList {
    let mut f = QFactorList::new();
    f.mul_qpoch(c, m, n);
    f
}

/// `(x)_n` as a rational function; panics on a pole.
pub fn qpoch_ratfunc(c: &Scalar, m: &Monomial, n: i32) -> RatFunc {
    qpoch(c, m, n).evaluate().expect("pochhammer pole").into_ratfunc()
}

/// Merges numerator and denominator lists, detecting zero factors before
/// any division.
pub fn qfactor_ratio(num: &[QFactorList], den: &[QFactorList]) -> Result<QRatio, AlgebraError> {
    let mut all = QFactorList::new();
    for f in num {
        all.extend(f, 1);
    }
    for f in den {
        all.extend(f, -1);
    }
    all.evaluate()
}

impl QFactorList {
    pub fn new() -> QFactorList {
        QFactorList::default()
    }

    pub fn factors(&self) -> &[(Scalar, Monomial, i32)] {
        &self.factors
    }

    pub fn push(&mut self, c: Scalar, m: Monomial, mult: i32) {
        if mult != 0 && !c.is_zero() {
            self.factors.push((c, m, mult));
        }
    }

    /// Multiplies by `(c*m)_n`.
    pub fn mul_qpoch(&mut self, c: &Scalar, m: &Monomial, n: i32) {
        if n >= 0 {
            for i in 0..n {
                self.push(c.clone(), m.mul(&Monomial::var_pow(Var::Q, i)), 1);
            }
        } else {
            for i in 1..=-n {
                self.push(c.clone(), m.mul(&Monomial::var_pow(Var::Q, -i)), -1);
            }
        }
    }

    /// Divides by `(c*m)_n`.
    pub fn div_qpoch(&mut self, c: &Scalar, m: &Monomial, n: i32) {
        let mut f = QFactorList::new();
        f.mul_qpoch(c, m, n);
        self.extend(&f, -1);
    }

    pub fn extend(&mut self, other: &QFactorList, sign: i32) {
        for (c, m, e) in &other.factors {
            self.push(c.clone(), m.clone(), e * sign);
        }
    }

    /// Net multiplicity of identically vanishing factors.
    pub fn zero_multiplicity(&self) -> i32 {
        self.factors
            .iter()
            .filter(|(c, m, _)| m.is_one() && c.is_one())
            .map(|f| f.2)
            .sum()
    }

    /// Collapses the product. Factors equal up to a unit are merged first,
    /// so a zero factor in the numerator cancels a zero factor in the
    /// denominator; a surviving zero factor makes the product ZERO and a
    /// surviving zero in the denominator is a pole.
    pub fn evaluate(&self) -> Result<QRatio, AlgebraError> {
        let mut unit_c = Scalar::one();
        let mut unit_m = Monomial::one();
        let mut zero = 0i32;
        let mut merged: BTreeMap<(Monomial, Scalar), i32> = BTreeMap::new();
        for (c, m, e) in &self.factors {
            if m.is_one() {
                if c.is_one() {
                    zero += e;
                } else {
                    unit_c *= pow_scalar(&(Scalar::one() - c), *e);
                }
                continue;
            }
            let inv = m.inv();
            if inv > *m {
                // 1 - c*m = (-c*m) * (1 - m^-1/c)
                unit_c *= pow_scalar(&-c.clone(), *e);
                unit_m = unit_m.mul(&m.pow(*e));
                *merged.entry((inv, c.recip())).or_insert(0) += e;
            } else {
                *merged.entry((m.clone(), c.clone())).or_insert(0) += e;
            }
        }
        if zero > 0 {
            return Ok(QRatio::Zero);
        }
        if zero < 0 {
            return Err(AlgebraError::Pole(format!("vanishing factor with multiplicity {zero}")));
        }
        let mut num = Poly::term(unit_c, unit_m);
        let mut den = Vec::new();
        for ((m, c), e) in merged {
            if e > 0 {
                num = &num * &Poly::one_minus(&c, &m).pow(e as u32);
            } else if e < 0 {
                den.push((Poly::one_minus(&c, &m), e));
            }
        }
        Ok(QRatio::Value(RatFunc::from_factors(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;

    fn one() -> Scalar {
        Scalar::one()
    }

    fn mono(v: Var, e: i32) -> Monomial {
        Monomial::var_pow(v, e)
    }

    #[test]
    fn empty_product_is_one() {
        assert!(qpoch_ratfunc(&one(), &mono(Var::x(1), 1), 0).is_one());
    }

    #[test]
    fn positive_index_unrolls() {
        let got = qpoch_ratfunc(&one(), &mono(Var::x(1), 1), 2);
        let want = &parse_poly("1 - x1").unwrap() * &parse_poly("1 - q*x1").unwrap();
        assert_eq!(got, RatFunc::from_poly(want));
    }

    #[test]
    fn negative_index_inverts() {
        let got = qpoch_ratfunc(&one(), &mono(Var::x(1), 1), -1);
        assert_eq!(got, RatFunc::new(Poly::one(), &parse_poly("1 - q^-1*x1").unwrap()));
    }

    #[test]
    fn zero_factor_kills_the_product() {
        let num = qpoch(&one(), &Monomial::one(), 2);
        let den = qpoch(&one(), &Monomial::from_pairs([(Var::Q, 1), (Var::HBAR, -1)]), 2);
        assert_eq!(qfactor_ratio(&[num], &[den]).unwrap(), QRatio::Zero);
    }

    #[test]
    fn zero_in_denominator_is_a_pole() {
        let den = qpoch(&one(), &Monomial::one(), 1);
        assert!(matches!(qfactor_ratio(&[], &[den]), Err(AlgebraError::Pole(_))));
    }

    #[test]
    fn simple_ratio() {
        let r = qfactor_ratio(&[qpoch(&one(), &mono(Var::HBAR, 1), 1)], &[qpoch(&one(), &mono(Var::Q, 1), 1)]).unwrap();
        let want = RatFunc::new(parse_poly("1 - hbar").unwrap(), &parse_poly("1 - q").unwrap());
        assert_eq!(r, QRatio::Value(want));
    }

    #[test]
    fn negative_index_ratio_is_finite() {
        // (1)_{-2} / (q/hbar)_{-2}: all factors nonzero
        let num = qpoch(&one(), &Monomial::one(), -2);
        let den = qpoch(&one(), &Monomial::from_pairs([(Var::Q, 1), (Var::HBAR, -1)]), -2);
        let r = qfactor_ratio(&[num], &[den]).unwrap().into_ratfunc();
        // oracle: (1-q^-1 * q/hbar)(1-q^-2 * q/hbar) / ((1-q^-1)(1-q^-2))
        let oracle = RatFunc::new(
            &parse_poly("1 - hbar^-1").unwrap() * &parse_poly("1 - q^-1*hbar^-1").unwrap(),
            &(&parse_poly("1 - q^-1").unwrap() * &parse_poly("1 - q^-2").unwrap()),
        );
        assert_eq!(r, oracle);
    }

    #[test]
    fn orientation_merges_equal_factors() {
        let mut f = QFactorList::new();
        f.push(Scalar::from_integer(2.into()), mono(Var::T, 1), 1);
        f.push(Scalar::new(1.into(), 2.into()), mono(Var::T, -1), -1);
        // (1 - 2t)/(1 - 1/(2t)) = -2t
        let r = f.evaluate().unwrap().into_ratfunc();
        assert_eq!(r, RatFunc::from_poly(parse_poly("-2*t").unwrap()));
        assert!(r.is_poly());
    }
}
