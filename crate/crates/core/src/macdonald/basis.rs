use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::algebra::cyclotomic::extract_binomial_factors;
use crate::algebra::{AlgebraError, Monomial, RatFunc, Scalar};
use crate::macdonald::inner::{degree_data, DegreeData};
use crate::macdonald::sym::SymPoly;
use crate::qcomb::Partition;

/// Total orders refining dominance, used to run Gram–Schmidt.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearExtension {
    /// Ascending lexicographic order.
    Lex,
    /// Descending `n(λ)`, ties broken by descending lexicographic order.
    NStatistic,
}

impl LinearExtension {
    fn sort(self, parts: &mut [Partition]) {
        match self {
            LinearExtension::Lex => parts.sort(),
            LinearExtension::NStatistic => {
                parts.sort_by(|a, b| b.n_statistic().cmp(&a.n_statistic()).then_with(|| b.cmp(a)))
            }
        }
    }
}

/// One orthogonalized basis vector, in monomial and power-sum coordinates.
#[derive(Clone)]
struct BasisVector {
    m: Vec<RatFunc>,
    p: Vec<RatFunc>,
    /// `1/<b, b>` with its denominator split into binomial factors.
    norm_inv: RatFunc,
}

fn downset(mu: &Partition) -> Vec<Partition> {
    Partition::all(mu.size()).into_iter().filter(|nu| nu.dominated_by(mu)).collect()
}

/// `<m_s, b>` using the power-sum coordinates of `b`.
fn pair_with_monomial(data: &DegreeData, s: usize, b: &BasisVector) -> RatFunc {
    let row = &data.m_to_p[s];
    let terms: Vec<RatFunc> = (0..data.parts.len())
        .filter(|&r| !row[r].is_zero() && !b.p[r].is_zero())
        .map(|r| b.p[r].mul(&data.norms[r]).scale(&row[r]))
        .collect();
    RatFunc::sum(terms.iter())
}

fn orthogonalize(data: &DegreeData, s: &Partition, earlier: &[Arc<BasisVector>]) -> BasisVector {
    let n = data.parts.len();
    let si = data.index[s];
    let mut m = vec![RatFunc::zero(); n];
    m[si] = RatFunc::one();
    let mut p: Vec<RatFunc> = data.m_to_p[si].iter().map(|c| RatFunc::constant(c.clone())).collect();
    for b in earlier {
        let c = pair_with_monomial(data, si, b).mul(&b.norm_inv).simplify();
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            if !b.m[i].is_zero() {
                m[i] = m[i].sub(&c.mul(&b.m[i])).simplify();
            }
            if !b.p[i].is_zero() {
                p[i] = p[i].sub(&c.mul(&b.p[i])).simplify();
            }
        }
    }
    let norm_terms: Vec<RatFunc> = (0..n)
        .filter(|&r| !p[r].is_zero())
        .map(|r| p[r].mul(&p[r]).mul(&data.norms[r]))
        .collect();
    let norm = RatFunc::sum(norm_terms.iter()).simplify();
    let (factors, rest) = extract_binomial_factors(norm.numer());
    let inv_factors = factors.into_iter().map(|(f, e)| (f, -(e as i32))).chain([(rest, -1)]);
    let norm_inv = RatFunc::from_factors(norm.denom(), inv_factors);
    BasisVector { m, p, norm_inv }
}

fn to_sympoly(data: &DegreeData, b: &BasisVector, k: usize) -> SymPoly {
    let coeffs = data.parts.iter().cloned().zip(b.m.iter().cloned()).collect();
    SymPoly::from_coeffs(k, coeffs)
}

/// Memoized Macdonald polynomials, computed along the lexicographic
/// extension of dominance. Access is serialized by a mutex.
pub struct MacdonaldBasisCache {
    inner: Mutex<HashMap<Partition, Arc<BasisVector>>>,
}

impl Default for MacdonaldBasisCache {
    fn default() -> Self {
        MacdonaldBasisCache { inner: Mutex::new(HashMap::new()) }
    }
}

impl MacdonaldBasisCache {
    pub fn new() -> MacdonaldBasisCache {
        MacdonaldBasisCache::default()
    }

    pub fn global() -> &'static MacdonaldBasisCache {
        static GLOBAL: OnceLock<MacdonaldBasisCache> = OnceLock::new();
        GLOBAL.get_or_init(MacdonaldBasisCache::new)
    }

    fn vector(&self, mu: &Partition) -> Arc<BasisVector> {
        let mut cache = self.inner.lock().unwrap();
        if let Some(b) = cache.get(mu) {
            return b.clone();
        }
        let data = degree_data(mu.size());
        let mut order = downset(mu);
        LinearExtension::Lex.sort(&mut order);
        let mut done: Vec<Arc<BasisVector>> = Vec::with_capacity(order.len());
        for s in &order {
            let b = match cache.get(s) {
                Some(b) => b.clone(),
                None => {
                    let b = Arc::new(orthogonalize(&data, s, &done));
                    cache.insert(s.clone(), b.clone());
                    b
                }
            };
            done.push(b);
        }
        cache[mu].clone()
    }

    /// `P_μ` as an element of the full ring of symmetric functions
    /// (enough variables that no monomial is lost).
    pub fn get(&self, mu: &Partition) -> SymPoly {
        let data = degree_data(mu.size());
        to_sympoly(&data, &self.vector(mu), (mu.size() as usize).max(1))
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Largest degree handled by Gram–Schmidt; beyond it `macdonald_p` uses
/// the tableau formula.
pub const GRAM_SCHMIDT_MAX_DEGREE: u32 = 5;

/// `P_μ(x_1..x_k; q, t)`.
pub fn macdonald_p(mu: &Partition, k: usize) -> Result<SymPoly, AlgebraError> {
    if mu.len() > k {
        return Err(AlgebraError::Length(format!("partition {mu} has more than {k} parts")));
    }
    if mu.size() > GRAM_SCHMIDT_MAX_DEGREE {
        return crate::macdonald::tableau::macdonald_p_tableau(mu, k);
    }
    Ok(MacdonaldBasisCache::global().get(mu).restrict(k))
}

/// `P_μ` in the full ring of symmetric functions.
pub fn macdonald_p_lambda(mu: &Partition) -> SymPoly {
    MacdonaldBasisCache::global().get(mu)
}

/// Uncached Gram–Schmidt along the given extension of dominance.
pub fn macdonald_p_with(mu: &Partition, k: usize, ext: LinearExtension) -> Result<SymPoly, AlgebraError> {
    if mu.len() > k {
        return Err(AlgebraError::Length(format!("partition {mu} has more than {k} parts")));
    }
    let data = degree_data(mu.size());
    let mut order = downset(mu);
    ext.sort(&mut order);
    let mut done: Vec<Arc<BasisVector>> = Vec::new();
    for s in &order {
        done.push(Arc::new(orthogonalize(&data, s, &done)));
    }
    Ok(to_sympoly(&data, done.last().unwrap(), k))
}

/// `P_μ(point; q ↦ qp, t ↦ tp)`, both parameter slots given as scalar
/// multiples of monomials.
pub fn macdonald_eval(
    mu: &Partition,
    point: &[(Scalar, Monomial)],
    qp: (Scalar, Monomial),
    tp: (Scalar, Monomial),
) -> Result<RatFunc, AlgebraError> {
    macdonald_p(mu, point.len())?.with_params(qp, tp)?.eval(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;
    use crate::algebra::Var;
    use crate::macdonald::inner::inner;
    use num_traits::One;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn r(s: &str) -> RatFunc {
        crate::algebra::text::parse_ratfunc(s).unwrap()
    }

    #[test]
    fn low_degree_polynomials() {
        let p1 = macdonald_p(&p("1"), 2).unwrap();
        assert_eq!(p1.coeffs().len(), 1);
        assert!(p1.coeff(&p("1")).is_one());
        let p11 = macdonald_p(&p("1,1"), 2).unwrap();
        assert_eq!(p11.coeffs().len(), 1);
        let p2 = macdonald_p(&p("2"), 2).unwrap();
        assert!(p2.coeff(&p("2")).is_one());
        // c = (1+q)(1-t)/(1-qt)
        let want = RatFunc::new(&parse_poly("1 + q").unwrap() * &parse_poly("1 - t").unwrap(), &parse_poly("1 - q*t").unwrap());
        assert_eq!(p2.coeff(&p("1,1")), want);
        assert!(inner(&macdonald_p_lambda(&p("2")), &macdonald_p_lambda(&p("1,1"))).is_zero());
    }

    #[test]
    fn evaluation_linear_case() {
        let q = || (Scalar::one(), Monomial::var(Var::Q));
        let t = || (Scalar::one(), Monomial::var(Var::T));
        let point = [
            (Scalar::one(), Monomial::var_pow(Var::Q, 2)),
            (Scalar::one(), Monomial::from_pairs([(Var::Q, 0), (Var::T, 1)])),
        ];
        let v = macdonald_eval(&p("1"), &point, q(), t()).unwrap();
        assert_eq!(v, r("q^2 + t"));
    }

    #[test]
    fn empty_partition_is_one() {
        let v = macdonald_eval(&Partition::empty(), &[(Scalar::one(), Monomial::one())], (Scalar::one(), Monomial::var(Var::Q)), (Scalar::one(), Monomial::var(Var::T))).unwrap();
        assert!(v.is_one());
    }

    #[test]
    fn gram_schmidt_matches_tableau_formula() {
        for n in 1..=5 {
            for mu in Partition::all_with_length(n, 3) {
                let a = macdonald_p(&mu, 3).unwrap();
                let b = crate::macdonald::tableau::macdonald_p_tableau(&mu, 3).unwrap();
                assert_eq!(a, b, "{mu}");
            }
        }
    }

    #[test]
    fn extensions_agree_on_incomparable_pairs() {
        for mu in ["3,1,1", "2,2,1", "3,2"] {
            let a = macdonald_p_with(&p(mu), 5, LinearExtension::Lex).unwrap();
            let b = macdonald_p_with(&p(mu), 5, LinearExtension::NStatistic).unwrap();
            assert_eq!(a, b, "{mu}");
        }
    }
}
