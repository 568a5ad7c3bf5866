//! `P_λ = Σ_T ψ_T(q,t) x^T` over semistandard tableaux, built one
//! horizontal strip at a time. Every factor is a binomial ratio.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::algebra::{AlgebraError, Monomial, Poly, RatFunc, Scalar, Var};
use crate::macdonald::sym::SymPoly;
use crate::qcomb::Partition;

fn qt(a: u32, l: u32) -> Monomial {
    Monomial::from_pairs([(Var::Q, a as i32), (Var::T, l as i32)])
}

/// `b_λ(s)` as (numerator, denominator); `None` outside `λ`.
fn b_factor(lambda: &Partition, lambda_conj: &Partition, i: u32, j: u32) -> Option<(Poly, Poly)> {
    if !lambda.contains((i, j)) {
        return None;
    }
    let arm = lambda.part(i as usize) - j;
    let leg = lambda_conj.part(j as usize) - i;
    let one = Scalar::one();
    Some((Poly::one_minus(&one, &qt(arm, leg + 1)), Poly::one_minus(&one, &qt(arm + 1, leg))))
}

/// `ψ_{λ/μ}` for a horizontal strip `λ/μ`: the product of `b_μ(s)/b_λ(s)`
/// over boxes in rows meeting the strip but in columns that miss it.
pub fn psi(lambda: &Partition, mu: &Partition) -> RatFunc {
    let (lc, mc) = (lambda.conjugate(), mu.conjugate());
    let strip_cols: Vec<u32> = (1..=lambda.len())
        .flat_map(|i| mu.part(i) + 1..=lambda.part(i))
        .collect();
    let mut factors: Vec<(Poly, i32)> = Vec::new();
    for i in 1..=lambda.len() as u32 {
        if lambda.part(i as usize) == mu.part(i as usize) {
            continue;
        }
        for j in 1..=mu.part(i as usize) {
            if strip_cols.contains(&j) {
                continue;
            }
            if let Some((n, d)) = b_factor(mu, &mc, i, j) {
                factors.push((n, 1));
                factors.push((d, -1));
            }
            if let Some((n, d)) = b_factor(lambda, &lc, i, j) {
                factors.push((n, -1));
                factors.push((d, 1));
            }
        }
    }
    RatFunc::from_factors(Poly::one(), factors).simplify()
}

/// Every `κ ⊆ outer` such that `κ/inner` is a horizontal strip of `size` boxes.
fn strips(inner: &Partition, outer: &Partition, size: u32) -> Vec<Partition> {
    fn rec(inner: &Partition, outer: &Partition, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i > outer.len() {
            if left == 0 {
                out.push(Partition::new(cur.iter().copied()));
            }
            return;
        }
        let lo = inner.part(i);
        let mut hi = outer.part(i).min(lo + left);
        if i > 1 {
            hi = hi.min(inner.part(i - 1));
        }
        if hi < lo {
            return;
        }
        for v in lo..=hi {
            cur.push(v);
            rec(inner, outer, i + 1, left - (v - lo), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if inner.fits_in(outer) {
        rec(inner, outer, 1, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Coefficient of `x^ν` in `P_λ`, summed over chains of horizontal strips.
fn monomial_coefficient(lambda: &Partition, nu: &Partition) -> RatFunc {
    let mut layer: HashMap<Partition, Vec<RatFunc>> = HashMap::from([(Partition::empty(), vec![RatFunc::one()])]);
    for &step in nu.parts() {
        let mut next: HashMap<Partition, Vec<RatFunc>> = HashMap::new();
        for (kappa, weights) in layer {
            let w = RatFunc::sum(weights.iter()).simplify();
            for big in strips(&kappa, lambda, step) {
                let c = w.mul(&psi(&big, &kappa));
                next.entry(big).or_default().push(c);
            }
        }
        layer = next;
    }
    layer.remove(lambda).map(|ws| RatFunc::sum(ws.iter()).simplify()).unwrap_or_else(RatFunc::zero)
}

/// `P_λ(x_1..x_k; q, t)` from the tableau formula.
pub fn macdonald_p_tableau(lambda: &Partition, k: usize) -> Result<SymPoly, AlgebraError> {
    if lambda.len() > k {
        return Err(AlgebraError::Length(format!("partition {lambda} has more than {k} parts")));
    }
    let mut coeffs = BTreeMap::new();
    for nu in Partition::all_with_length(lambda.size(), k) {
        if !nu.dominated_by(lambda) {
            continue;
        }
        let c = monomial_coefficient(lambda, &nu);
        if !c.is_zero() {
            coeffs.insert(nu, c);
        }
    }
    Ok(SymPoly::from_coeffs(k, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn strips_are_horizontal() {
        assert_eq!(strips(&p("1"), &p("2,1"), 2), vec![p("2,1")]);
        assert_eq!(strips(&p("2"), &p("3,3"), 2), vec![p("2,2"), p("3,1")]);
        assert!(strips(&p("1"), &p("1,1,1"), 2).is_empty());
    }

    #[test]
    fn two_row_coefficient() {
        let c = macdonald_p_tableau(&p("2"), 2).unwrap().coeff(&p("1,1"));
        let want = RatFunc::new(&parse_poly("1 + q").unwrap() * &parse_poly("1 - t").unwrap(), &parse_poly("1 - q*t").unwrap());
        assert_eq!(c, want);
    }
}
