//! The pairing `<p_λ, p_μ> = δ_{λμ} z_λ prod_i (1 - q^{λ_i})/(1 - t^{λ_i})`
//! and the change of basis between power sums and monomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Monomial, Poly, RatFunc, Scalar, Var};
use crate::macdonald::sym::SymPoly;
use crate::qcomb::Partition;

/// `<p_λ, p_μ>`.
pub fn power_inner(lambda: &Partition, mu: &Partition) -> RatFunc {
    if lambda != mu {
        return RatFunc::zero();
    }
    let mut factors = Vec::new();
    let mut num = Poly::constant(lambda.z_factor());
    for &part in lambda.parts() {
        num = &num * &Poly::one_minus(&Scalar::one(), &Monomial::var_pow(Var::Q, part as i32));
        factors.push((Poly::one_minus(&Scalar::one(), &Monomial::var_pow(Var::T, part as i32)), -1));
    }
    RatFunc::from_factors(num, factors)
}

/// `p_ρ = sum_λ c_λ m_λ`: `c_λ` counts the ways to distribute the parts of
/// `ρ` over the rows of `λ`.
pub fn power_to_monomial(rho: &Partition) -> BTreeMap<Partition, Scalar> {
    let mut out = BTreeMap::new();
    for lambda in Partition::all(rho.size()) {
        let c = distributions(rho, &lambda);
        if !c.is_zero() {
            out.insert(lambda, Scalar::from_integer(c));
        }
    }
    out
}

fn distributions(rho: &Partition, lambda: &Partition) -> BigInt {
    let mut states: HashMap<Vec<u32>, BigInt> = HashMap::from([(lambda.parts().to_vec(), BigInt::one())]);
    for &r in rho.parts() {
        let mut next: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (rem, c) in states {
            for j in 0..rem.len() {
                if rem[j] >= r {
                    let mut v = rem.clone();
                    v[j] -= r;
                    *next.entry(v).or_insert_with(BigInt::zero) += &c;
                }
            }
        }
        states = next;
    }
    states.into_iter().filter(|(v, _)| v.iter().all(|&x| x == 0)).map(|(_, c)| c).sum()
}

/// Change-of-basis data for one degree.
pub(crate) struct DegreeData {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// Row `λ` holds the power-sum coordinates of `m_λ`.
    pub m_to_p: Vec<Vec<Scalar>>,
    /// `<p_ρ, p_ρ>`.
    pub norms: Vec<RatFunc>,
}

pub(crate) fn degree_data(d: u32) -> Arc<DegreeData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<DegreeData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&d) {
        return v.clone();
    }
    let data = Arc::new(build_degree_data(d));
    cache.lock().unwrap().entry(d).or_insert(data).clone()
}

fn build_degree_data(d: u32) -> DegreeData {
    let parts = Partition::all(d);
    let n = parts.len();
    let index: HashMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // l[ρ][λ] with p_ρ = sum_λ l[ρ][λ] m_λ
    let mut l = vec![vec![Scalar::zero(); n]; n];
    for (i, rho) in parts.iter().enumerate() {
        for (lambda, c) in power_to_monomial(rho) {
            l[i][index[&lambda]] = c;
        }
    }
    let m_to_p = invert(l);
    let norms = parts.iter().map(|p| power_inner(p, p)).collect();
    DegreeData { parts, index, m_to_p, norms }
}

/// Gauss–Jordan inverse of a nonsingular rational matrix.
fn invert(mut a: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular matrix");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = &a[col][j] * &f;
                    a[r][j] -= x;
                    let y = &inv[col][j] * &f;
                    inv[r][j] -= y;
                }
            }
        }
    }
    // a m = p  =>  m = a^-1 p, so row λ of a^-1 lists p-coordinates of m_λ
    inv
}

/// `<m_λ, m_μ>`.
pub fn gram(lambda: &Partition, mu: &Partition) -> RatFunc {
    if lambda.size() != mu.size() {
        return RatFunc::zero();
    }
    let data = degree_data(lambda.size());
    let a = &data.m_to_p[data.index[lambda]];
    let b = &data.m_to_p[data.index[mu]];
    let terms: Vec<RatFunc> = (0..data.parts.len())
        .filter(|&r| !a[r].is_zero() && !b[r].is_zero())
        .map(|r| data.norms[r].scale(&(&a[r] * &b[r])))
        .collect();
    RatFunc::sum(terms.iter()).simplify()
}

/// `<f, g>` computed through the Gram matrix of the monomial basis.
pub fn inner(f: &SymPoly, g: &SymPoly) -> RatFunc {
    let mut terms = Vec::new();
    for (a, fa) in f.coeffs() {
        for (b, gb) in g.coeffs() {
            if a.size() == b.size() {
                terms.push(fa.mul(gb).mul(&gram(a, b)));
            }
        }
    }
    RatFunc::sum(terms.iter()).simplify()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn power_pairing_values() {
        let one = power_inner(&p("1"), &p("1"));
        assert_eq!(one, RatFunc::new(parse_poly("1 - q").unwrap(), &parse_poly("1 - t").unwrap()));
        let two = power_inner(&p("2"), &p("2"));
        assert_eq!(two, RatFunc::new(parse_poly("2 - 2*q^2").unwrap(), &parse_poly("1 - t^2").unwrap()));
        assert!(power_inner(&p("1,1"), &p("2")).is_zero());
    }

    #[test]
    fn power_sums_in_monomials() {
        // p_{1,1} = m_2 + 2 m_{1,1}
        let c = power_to_monomial(&p("1,1"));
        assert_eq!(c[&p("2")], Scalar::one());
        assert_eq!(c[&p("1,1")], Scalar::from_integer(2.into()));
        // p_{2,1} = m_3 + m_{2,1}
        let c = power_to_monomial(&p("2,1"));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn gram_is_symmetric() {
        for a in Partition::all(3) {
            for b in Partition::all(3) {
                assert_eq!(gram(&a, &b), gram(&b, &a));
            }
        }
    }

    #[test]
    fn gram_degree_one() {
        let g = gram(&p("1"), &p("1"));
        assert_eq!(g, RatFunc::new(parse_poly("1 - q").unwrap(), &parse_poly("1 - t").unwrap()));
        assert!(gram(&p("1"), &p("2")).is_zero());
    }
}
