use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AlgebraError, Monomial, Poly, RatFunc, Scalar, Var};
use crate::qcomb::Partition;

/// A symmetric polynomial in `x_1..x_k`, stored in the monomial basis.
#[derive(Clone, PartialEq)]
pub struct SymPoly {
    k: usize,
    coeffs: BTreeMap<Partition, RatFunc>,
}

/// `m_μ(x_1..x_k)`.
pub fn monomial_sym(mu: &Partition, k: usize) -> Result<SymPoly, AlgebraError> {
    if mu.len() > k {
        return Err(AlgebraError::Length(format!("partition {mu} has more than {k} parts")));
    }
    Ok(SymPoly { k, coeffs: BTreeMap::from([(mu.clone(), RatFunc::one())]) })
}

/// Distinct rearrangements of `parts` padded with zeros to length `k`.
pub(crate) fn exponent_vectors(mu: &Partition, k: usize) -> Vec<Vec<u32>> {
    let mut v: Vec<u32> = mu.parts().to_vec();
    v.resize(k, 0);
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    while let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) {
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
    out
}

impl SymPoly {
    pub fn zero(k: usize) -> SymPoly {
        SymPoly { k, coeffs: BTreeMap::new() }
    }

    /// Drops zero coefficients and partitions longer than `k`.
    pub fn from_coeffs(k: usize, coeffs: BTreeMap<Partition, RatFunc>) -> SymPoly {
        let coeffs = coeffs.into_iter().filter(|(p, c)| p.len() <= k && !c.is_zero()).collect();
        SymPoly { k, coeffs }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, RatFunc> {
        &self.coeffs
    }

    /// Coefficient of `m_ν`.
    pub fn coeff(&self, nu: &Partition) -> RatFunc {
        self.coeffs.get(nu).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.coeffs.clone();
        for (p, c) in &other.coeffs {
            let v = out.entry(p.clone()).or_insert_with(RatFunc::zero);
            *v = v.add(c);
        }
        SymPoly::from_coeffs(self.k.min(other.k), out)
    }

    pub fn scale(&self, c: &RatFunc) -> SymPoly {
        let coeffs = self.coeffs.iter().map(|(p, x)| (p.clone(), x.mul(c))).collect();
        SymPoly::from_coeffs(self.k, coeffs)
    }

    /// Same coefficients viewed in fewer variables.
    pub fn restrict(&self, k: usize) -> SymPoly {
        SymPoly::from_coeffs(k, self.coeffs.clone())
    }

    /// Substitutes `q` and `t` in the coefficients by scalar multiples of
    /// monomials; used for parameter slots such as `(q, q/t)`.
    pub fn with_params(&self, q: (Scalar, Monomial), t: (Scalar, Monomial)) -> Result<SymPoly, AlgebraError> {
        let rule = |v: Var| {
            if v == Var::Q {
                Some(q.clone())
            } else if v == Var::T {
                Some(t.clone())
            } else {
                None
            }
        };
        let mut coeffs = BTreeMap::new();
        for (p, c) in &self.coeffs {
            coeffs.insert(p.clone(), c.try_substitute(rule)?);
        }
        Ok(SymPoly::from_coeffs(self.k, coeffs))
    }

    /// Replaces every variable `v` in the coefficients by `rule(v)`.
    pub fn map_coefficients<F: Fn(&RatFunc) -> RatFunc>(&self, f: F) -> SymPoly {
        let coeffs = self.coeffs.iter().map(|(p, c)| (p.clone(), f(c))).collect();
        SymPoly::from_coeffs(self.k, coeffs)
    }

    /// Expanded `(x-monomial, coefficient)` pairs.
    pub fn expanded_terms(&self) -> Vec<(Monomial, RatFunc)> {
        let mut out = Vec::new();
        for (p, c) in &self.coeffs {
            for e in exponent_vectors(p, self.k) {
                let m = Monomial::from_pairs(e.iter().enumerate().map(|(i, &x)| (Var::x(i + 1), x as i32)));
                out.push((m, c.clone()));
            }
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// The polynomial as a single rational function in `x`, `q`, `t`.
    pub fn to_ratfunc(&self) -> RatFunc {
        let parts: Vec<RatFunc> = self
            .coeffs
            .iter()
            .map(|(p, c)| {
                let mut poly = Poly::zero();
                for e in exponent_vectors(p, self.k) {
                    let m = Monomial::from_pairs(e.iter().enumerate().map(|(i, &x)| (Var::x(i + 1), x as i32)));
                    poly = &poly + &Poly::monomial(m);
                }
                c.mul_poly(&poly)
            })
            .collect();
        RatFunc::sum(parts.iter())
    }

    /// Value at `x_i = point[i]`, each entry a scalar times a monomial.
    pub fn eval(&self, point: &[(Scalar, Monomial)]) -> Result<RatFunc, AlgebraError> {
        if point.len() != self.k {
            return Err(AlgebraError::Length(format!("{} values for {} variables", point.len(), self.k)));
        }
        let mut parts = Vec::new();
        for (p, c) in &self.coeffs {
            let mut poly = Poly::zero();
            for e in exponent_vectors(p, self.k) {
                let mut coeff = Scalar::from_integer(1.into());
                let mut m = Monomial::one();
                for (i, &x) in e.iter().enumerate() {
                    coeff *= crate::algebra::poly::pow_scalar(&point[i].0, x as i32);
                    m = m.mul(&point[i].1.pow(x as i32));
                }
                poly = &poly + &Poly::term(coeff, m);
            }
            parts.push(c.mul_poly(&poly));
        }
        Ok(RatFunc::sum(parts.iter()))
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.expanded_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn poly_of(s: &SymPoly) -> RatFunc {
        s.to_ratfunc()
    }

    #[test]
    fn monomial_symmetric_functions() {
        let cases = [("1", "x1 + x2"), ("1,1", "x1*x2"), ("2,1", "x1^2*x2 + x1*x2^2")];
        for (mu, want) in cases {
            let got = poly_of(&monomial_sym(&p(mu), 2).unwrap());
            assert_eq!(got, RatFunc::from_poly(parse_poly(want).unwrap()), "{mu}");
        }
        assert!(matches!(monomial_sym(&p("1,1,1"), 2), Err(AlgebraError::Length(_))));
    }

    #[test]
    fn rearrangements_are_distinct() {
        assert_eq!(exponent_vectors(&p("2,1"), 3).len(), 6);
        assert_eq!(exponent_vectors(&p("1,1"), 3).len(), 3);
        assert_eq!(exponent_vectors(&Partition::empty(), 2), vec![vec![0, 0]]);
    }
}
