//! Truncated expansions of the infinite product `φ(x) = prod_{i>=0} (1 - x q^i)`.
//!
//! With `q` a formal parameter the product never terminates, so all three
//! functions use the Euler and q-binomial series instead of partial products.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::poly::pow_scalar;
use crate::algebra::{AlgebraError, Caps, Monomial, RatFunc, Scalar, TruncatedSeries, Var};
use crate::qcomb::pochhammer::qpoch_ratfunc;

fn series_part(m: &Monomial, caps: &Caps) -> Result<(Monomial, Monomial), AlgebraError> {
    let (s, rest) = caps.split(m);
    if s.is_one() || !s.iter().all(|(_, e)| e > 0) {
        return Err(AlgebraError::NonTruncating(format!("argument {m} has no positive capped part")));
    }
    Ok((s, rest))
}

fn collect<F>(c: &Scalar, m: &Monomial, caps: &Caps, coeff: F) -> Result<TruncatedSeries, AlgebraError>
where
    F: Fn(i32) -> RatFunc,
{
    let (s, rest) = series_part(m, caps)?;
    let mut terms = BTreeMap::new();
    let mut n = 0i32;
    loop {
        let sm = s.pow(n);
        if !caps.admits(&sm) {
            break;
        }
        let c_n = coeff(n).mul_monomial(&rest.pow(n)).scale(&pow_scalar(c, n));
        terms.insert(sm, c_n);
        n += 1;
    }
    Ok(TruncatedSeries::from_terms(caps, terms))
}

/// `φ(c*m) = sum_n (-1)^n q^{n(n-1)/2} (c*m)^n / (q)_n`.
pub fn phi_truncated(c: &Scalar, m: &Monomial, caps: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    collect(c, m, caps, |n| {
        let sign = if n % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        qpoch_ratfunc(&Scalar::one(), &Monomial::var(Var::Q), n)
            .recip()
            .mul_monomial(&Monomial::var_pow(Var::Q, n * (n - 1) / 2))
            .scale(&sign)
    })
}

/// `1/φ(c*m) = sum_n (c*m)^n / (q)_n`.
pub fn phi_inverse(c: &Scalar, m: &Monomial, caps: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    collect(c, m, caps, |n| qpoch_ratfunc(&Scalar::one(), &Monomial::var(Var::Q), n).recip())
}

/// `φ(a*x)/φ(x) = sum_n (a)_n/(q)_n x^n` with `a = ac*am` and `x = c*m`.
pub fn phi_ratio(ac: &Scalar, am: &Monomial, c: &Scalar, m: &Monomial, caps: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    collect(c, m, caps, |n| {
        qpoch_ratfunc(ac, am, n).div(&qpoch_ratfunc(&Scalar::one(), &Monomial::var(Var::Q), n))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;
    use crate::algebra::{Group, Poly};

    fn one() -> Scalar {
        Scalar::one()
    }

    #[test]
    fn phi_times_inverse_is_one() {
        let caps = Caps::new().with(Group::Kahler, 4);
        let x = Monomial::from_pairs([(Var::Z, 1), (Var::HBAR, 1)]);
        let a = phi_truncated(&one(), &x, &caps).unwrap();
        let b = phi_inverse(&one(), &x, &caps).unwrap();
        assert_eq!(a.mul(&b), TruncatedSeries::one(&caps));
    }

    #[test]
    fn phi_low_order_terms() {
        // φ(z) = 1 - z/(1-q) + q z^2/((1-q)(1-q^2)) + ...
        let caps = Caps::new().with(Group::Kahler, 2);
        let s = phi_truncated(&one(), &Monomial::var(Var::Z), &caps).unwrap();
        let z1 = s.coefficient(&Monomial::var(Var::Z));
        assert_eq!(z1, RatFunc::new(Poly::int(-1), &parse_poly("1 - q").unwrap()));
        let z2 = s.coefficient(&Monomial::var_pow(Var::Z, 2));
        let den = &parse_poly("1 - q").unwrap() * &parse_poly("1 - q^2").unwrap();
        assert_eq!(z2, RatFunc::new(parse_poly("q").unwrap(), &den));
    }

    #[test]
    fn ratio_matches_quotient() {
        let caps = Caps::new().with(Group::Kahler, 3);
        let x = Monomial::var(Var::z(1));
        let h = Monomial::var(Var::HBAR_DUAL);
        let direct = phi_ratio(&one(), &h, &one(), &x, &caps).unwrap();
        let hx = x.mul(&h);
        let quotient = phi_truncated(&one(), &hx, &caps).unwrap().mul(&phi_inverse(&one(), &x, &caps).unwrap());
        assert_eq!(direct, quotient);
    }

    #[test]
    fn pure_parameter_argument_does_not_truncate() {
        let caps = Caps::new().with(Group::Kahler, 2);
        assert!(matches!(phi_truncated(&one(), &Monomial::one(), &caps), Err(AlgebraError::NonTruncating(_))));
        assert!(phi_truncated(&one(), &Monomial::var(Var::Q), &caps).is_err());
    }
}
