//! Cyclotomic splitting of binomial factors `1 ± m`.
//!
//! Every denominator produced by q-Pochhammer symbols is such a binomial.
//! Splitting them into `Φ_d(m0)` with `m0` primitive gives a canonical
//! basis of irreducible, pairwise coprime factors, so cancellation needs
//! only exact division.

use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Poly;
use crate::algebra::Scalar;

/// Coefficients of `Φ_d(x)`, constant term first.
pub fn cyclotomic_coeffs(d: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&d) {
        return v.clone();
    }
    // x^d - 1 divided by Φ_e for every proper divisor e
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in 1..d {
        if d.is_multiple_of(e) {
            num = divide(&num, &cyclotomic_coeffs(e));
        }
    }
    cache.lock().unwrap().insert(d, num.clone());
    num
}

fn divide(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db] / b[db];
        q[i] = c;
        for j in 0..=db {
            rem[i + j] -= c * b[j];
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn known() -> &'static RwLock<HashSet<Poly>> {
    static KNOWN: OnceLock<RwLock<HashSet<Poly>>> = OnceLock::new();
    KNOWN.get_or_init(|| RwLock::new(HashSet::new()))
}

/// True if `p` was produced by [`split_binomial`] and is therefore
/// irreducible.
pub fn is_known_irreducible(p: &Poly) -> bool {
    known().read().unwrap().contains(p)
}

/// Splits a normalized two-term polynomial `m1 ± m2` into normalized
/// cyclotomic factors whose product is exactly `p`. Returns `None` when
/// the ratio of the coefficients is not ±1.
pub fn split_binomial(p: &Poly) -> Option<Vec<Poly>> {
    let t = p.terms();
    if t.len() != 2 {
        return None;
    }
    let (m1, c1) = &t[0];
    let (m2, c2) = &t[1];
    // p = c1*m1*(1 - r*m)
    let r = -(c2 / c1);
    let plus = r.is_one();
    let minus = (-r.clone()).is_one();
    if !plus && !minus {
        return None;
    }
    let mut m = m2.div(m1);
    if m < Monomial::one() {
        m = m.inv();
    }
    let g = m.iter().fold(0i32, |acc, (_, e)| acc.gcd(&e)).unsigned_abs();
    let m0 = Monomial::from_pairs(m.iter().map(|(v, e)| (v, e / g as i32)));
    let degrees: Vec<u32> = if plus {
        (1..=g).filter(|d| g % d == 0).collect()
    } else {
        (1..=2 * g).filter(|d| (2 * g) % d == 0 && g % d != 0).collect()
    };
    let mut out = Vec::with_capacity(degrees.len());
    for d in degrees {
        let coeffs = cyclotomic_coeffs(d);
        let f = Poly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, &c)| (m0.pow(i as i32), Scalar::from_integer(c.into()))),
        );
        out.push(f.normalize_unit().2);
    }
    {
        let mut set = known().write().unwrap();
        for f in &out {
            if !set.contains(f) {
                set.insert(f.clone());
            }
        }
    }
    Some(out)
}

/// Pulls every factor of the form `Φ_d(m0)` out of a polynomial in at
/// most two variables by trial division. Returns the factors found with
/// multiplicities, and the cofactor.
pub fn extract_binomial_factors(p: &Poly) -> (Vec<(Poly, u32)>, Poly) {
    let vars = p.vars();
    if p.is_zero() || vars.is_empty() || vars.len() > 2 {
        return (Vec::new(), p.clone());
    }
    let span = |v| p.exp_range(v).map(|(lo, hi)| hi - lo).unwrap_or(0);
    let (x, dx) = (vars[0], span(vars[0]));
    let (y, dy) = match vars.get(1) {
        Some(&y) => (Some(y), span(y)),
        None => (None, 0),
    };
    let mut rest = p.clone();
    let mut found = Vec::new();
    for a in 0..=dx {
        let b_range: Vec<i32> = if y.is_some() { (-dy..=dy).collect() } else { vec![0] };
        for b in b_range {
            if (a == 0 && b <= 0) || a.gcd(&b) != 1 {
                continue;
            }
            let mut pairs = vec![(x, a)];
            if let Some(y) = y {
                pairs.push((y, b));
            }
            let m0 = Monomial::from_pairs(pairs);
            let mut d = 1u32;
            loop {
                let coeffs = cyclotomic_coeffs(d);
                let deg = coeffs.len() as i32 - 1;
                if deg * a > dx || deg * b.abs() > dy {
                    // φ(d) is not monotone in d; stop once a full window fails
                    if d > 4 * (dx.max(dy) as u32 + 2) {
                        break;
                    }
                    d += 1;
                    continue;
                }
                let f = Poly::from_terms(
                    coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, &c)| (m0.pow(i as i32), Scalar::from_integer(c.into()))),
                )
                .normalize_unit()
                .2;
                let mut e = 0u32;
                while let Some(q) = rest.exact_div(&f) {
                    rest = q;
                    e += 1;
                }
                if e > 0 {
                    known().write().unwrap().insert(f.clone());
                    found.push((f, e));
                }
                d += 1;
            }
        }
    }
    (found, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_coeffs(1), vec![-1, 1]);
        assert_eq!(cyclotomic_coeffs(2), vec![1, 1]);
        assert_eq!(cyclotomic_coeffs(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_coeffs(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_coeffs(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn splitting_reproduces_the_binomial() {
        for s in ["q^6 - 1", "q^2*t^4 + 1", "t^3 - q^3", "x1 - q^2*x2"] {
            let p = parse_poly(s).unwrap().normalize_unit().2;
            let parts = split_binomial(&p).unwrap();
            let prod = parts.iter().fold(Poly::one(), |a, b| &a * b);
            assert_eq!(prod, p, "{s}");
        }
        assert_eq!(split_binomial(&parse_poly("q^6 - 1").unwrap()).unwrap().len(), 4);
        assert!(split_binomial(&parse_poly("q - 2").unwrap()).is_none());
    }

    #[test]
    fn extraction_finds_binomial_factors() {
        let p = &(&parse_poly("1 - q^2*t").unwrap() * &parse_poly("1 - t^2").unwrap()) * &parse_poly("3 + q + t").unwrap();
        let (found, rest) = extract_binomial_factors(&p);
        assert_eq!(found.len(), 3);
        let prod = found.iter().fold(rest.clone(), |a, (f, e)| &a * &f.pow(*e));
        assert_eq!(prod, p);
        assert_eq!(rest.len(), 3);
    }
}
