//! Multivariate polynomial gcd by recursive primitive remainder sequences.
//!
//! Only used to keep Macdonald coefficients in lowest terms; rational
//! function equality never depends on it.

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Poly;
use crate::algebra::var::Var;

/// Greatest common divisor in the Laurent polynomial ring, normalized so
/// that it has no monomial content and leading coefficient 1.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() && b.is_zero() {
        return Poly::zero();
    }
    if a.is_zero() {
        return b.normalize_unit().2;
    }
    if b.is_zero() {
        return a.normalize_unit().2;
    }
    let a = a.normalize_unit().2;
    let b = b.normalize_unit().2;
    if a.is_one() || b.is_one() || a.len() == 1 || b.len() == 1 {
        return Poly::one();
    }
    if a == b {
        return a;
    }
    gcd_rec(&a, &b)
}

/// Both inputs are content-free polynomials with leading coefficient 1.
fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    let x = match (va.first(), vb.first()) {
        (Some(&p), Some(&q)) => p.min(q),
        _ => return Poly::one(),
    };
    let in_a = a.contains_var(x);
    let in_b = b.contains_var(x);
    if !in_a {
        return gcd(a, &content(b, x));
    }
    if !in_b {
        return gcd(&content(a, x), b);
    }
    let ca = content(a, x);
    let cb = content(b, x);
    let c = gcd(&ca, &cb);
    let mut p = primitive(a, &ca);
    let mut r = primitive(b, &cb);
    if degree(&p, x) < degree(&r, x) {
        std::mem::swap(&mut p, &mut r);
    }
    while !r.is_zero() {
        if degree(&r, x) == 0 {
            // r is free of x; primitive parts have trivial x-content
            p = Poly::one();
            break;
        }
        let rem = pseudo_rem(&p, &r, x);
        p = r;
        r = if rem.is_zero() {
            rem
        } else {
            let cr = content(&rem, x);
            primitive(&rem, &cr)
        };
    }
    let g = if p.is_one() { p } else { primitive(&p, &content(&p, x)) };
    (&g * &c).normalize_unit().2
}

fn degree(p: &Poly, x: Var) -> i32 {
    p.exp_range(x).map(|r| r.1).unwrap_or(0)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content(p: &Poly, x: Var) -> Poly {
    let coeffs = p.coefficients_in(x);
    let mut it = coeffs.into_values();
    let mut g = match it.next() {
        Some(c) => c.normalize_unit().2,
        None => return Poly::zero(),
    };
    for c in it {
        if g.is_one() {
            break;
        }
        g = gcd(&g, &c);
    }
    g
}

fn primitive(p: &Poly, c: &Poly) -> Poly {
    if c.is_one() {
        return p.normalize_unit().2;
    }
    p.exact_div(c)
        .expect("content divides its polynomial")
        .normalize_unit()
        .2
}

/// Pseudo-remainder of `a` by `b` with respect to `x` (both honest
/// polynomials in `x`).
fn pseudo_rem(a: &Poly, b: &Poly, x: Var) -> Poly {
    let db = degree(b, x);
    let bc = b.coefficients_in(x);
    let lb = bc.get(&db).cloned().expect("leading coefficient");
    let mut r = a.clone();
    loop {
        let dr = degree(&r, x);
        if r.is_zero() || dr < db {
            return r;
        }
        let lr = r.coefficients_in(x).remove(&dr).expect("leading coefficient");
        let shift = Monomial::var_pow(x, dr - db);
        r = &(&r * &lb) - &(&b.mul_monomial(&shift) * &lr);
        if !r.is_zero() {
            // strip the x-free content to curb coefficient growth
            let c = content(&r, x);
            if !c.is_one() && !c.is_zero() {
                r = r.exact_div(&c).expect("content divides");
            }
        }
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
    fn univariate_common_factor() {
        let a = &p("1 - q") * &p("1 + q^2");
        let b = &p("1 - q") * &p("3 + q");
        assert_eq!(gcd(&a, &b), p("q - 1"));
    }

    #[test]
    fn bivariate_common_factor() {
        let f = p("1 - q*t");
        let a = &(&f * &f) * &p("1 + t");
        let b = &f * &p("q - t^2 + 5");
        assert_eq!(gcd(&a, &b), f.normalize_unit().2);
    }

    #[test]
    fn coprime_gives_one() {
        assert!(gcd(&p("1 - q"), &p("1 - t")).is_one());
        assert!(gcd(&p("q + t"), &p("q - t")).is_one());
    }

    #[test]
    fn laurent_inputs_ignore_monomial_units() {
        let a = &p("q^-2*t") * &p("1 - q*t");
        let b = p("t^-1 - q");
        assert_eq!(gcd(&a, &b), p("q*t - 1"));
    }

    #[test]
    fn trivariate() {
        let g = p("x1 - t*x2 + q");
        let a = &g * &p("x1 + x2");
        let b = &g * &p("x1 - q*x2 + 1");
        assert_eq!(gcd(&a, &b), g.normalize_unit().2);
    }
}
