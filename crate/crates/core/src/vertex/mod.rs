//! Vertex functions of `T*Gr(k, n)`, of its dual quiver variety and of the
//! point varieties `X_λ`, as truncated series in the Kähler parameters.

pub mod checks;
pub mod cone;
pub mod summand;

use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{AlgebraError, Caps, Group, Monomial, RatFunc, Scalar, TruncatedSeries, Var};
use crate::macdonald::{macdonald_p, SymPoly};
use crate::qcomb::{phi_ratio, qpoch_ratfunc, zbox, Partition, QFactorList, QRatio, QuiverA};

pub use checks::{check_reducetopoint, check_selberg_point, check_verpoint};
pub use cone::{check_cone_vanishing, in_cone, out_of_cone_samples};
pub use summand::{degree_tuples, quiver_factors, spectral_block, DegreeTuple};

fn mono(pairs: &[(Var, i32)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

fn one() -> Scalar {
    Scalar::one()
}

pub fn require_dual_range(k: usize, n: usize) -> Result<(), AlgebraError> {
    if k == 0 || 2 * k > n {
        return Err(AlgebraError::Length(format!("require 2k ≤ n and k ≥ 1, got k={k}, n={n}")));
    }
    Ok(())
}

/// The rectangle `(k^{n-k})`.
pub fn rectangle(k: usize, n: usize) -> Partition {
    Partition::rectangle(k as u32, (n - k) as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variety {
    X,
    XDual,
    XLambda,
}

/// What to generate and to which caps.
#[derive(Clone, Debug)]
pub struct VertexSpec {
    pub variety: Variety,
    pub k: usize,
    pub n: usize,
    /// Used for `XLambda`; the rectangle for the others.
    pub lambda: Partition,
    pub zcap: u32,
    pub ucap: u32,
}

impl VertexSpec {
    pub fn x(k: usize, n: usize, zcap: u32) -> Result<VertexSpec, AlgebraError> {
        require_dual_range(k, n)?;
        Ok(VertexSpec { variety: Variety::X, k, n, lambda: rectangle(k, n), zcap, ucap: 0 })
    }

    pub fn dual(k: usize, n: usize, zcap: u32, ucap: u32) -> Result<VertexSpec, AlgebraError> {
        require_dual_range(k, n)?;
        Ok(VertexSpec { variety: Variety::XDual, k, n, lambda: rectangle(k, n), zcap, ucap })
    }

    pub fn lambda(lambda: Partition, zcap: u32) -> VertexSpec {
        let k = lambda.part(1) as usize;
        let n = k + lambda.len();
        VertexSpec { variety: Variety::XLambda, k, n, lambda, zcap, ucap: 0 }
    }

    pub fn caps(&self) -> Caps {
        match self.variety {
            Variety::XDual => Caps::new().with(Group::Kahler, self.zcap).with(Group::Spectral, self.ucap),
            _ => Caps::new().with(Group::Kahler, self.zcap),
        }
    }

    /// The quiver whose degree tuples index the summands.
    pub fn quiver(&self) -> QuiverA {
        match self.variety {
            Variety::X => QuiverA::new(vec![self.k as u32], vec![0]),
            Variety::XDual => QuiverA::for_dual(self.k as u32, self.n as u32),
            Variety::XLambda => QuiverA::for_lambda(&self.lambda),
        }
    }

    pub fn generate(&self) -> Result<TruncatedSeries, AlgebraError> {
        match self.variety {
            Variety::X => vertex_x(self.k, self.n, self.zcap),
            Variety::XDual => vertex_xdual(self.k, self.n, &self.caps()),
            Variety::XLambda => vertex_xlambda(&self.lambda, &self.caps(), None),
        }
    }
}

impl fmt::Display for VertexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variety {
            Variety::X => write!(f, "X k={} n={}", self.k, self.n),
            Variety::XDual => write!(f, "Xdual k={} n={}", self.k, self.n),
            Variety::XLambda => write!(f, "Xlambda lambda={}", self.lambda),
        }
    }
}

/// Weak compositions of every total up to `cap` into `k` parts.
fn compositions_up_to(k: usize, cap: u32) -> Vec<Vec<u32>> {
    (0..=cap).flat_map(|d| crate::qdiff::compositions(d, k)).collect()
}

fn a_ratio(j: usize, i: usize) -> Monomial {
    mono(&[(Var::a(j), 1), (Var::a(i), -1)])
}

/// Factors of the `T*Gr(k, n)` summand for degrees `d` on the last `k`
/// equivariant weights.
pub fn x_factors(k: usize, n: usize, d: &[u32]) -> QFactorList {
    let last: Vec<usize> = (n - k + 1..=n).collect();
    let h = Monomial::var(Var::HBAR);
    let q = Monomial::var(Var::Q);
    let mut f = QFactorList::new();
    for i in 1..=n {
        for (jj, &j) in last.iter().enumerate() {
            let m = a_ratio(j, i);
            f.mul_qpoch(&one(), &h.mul(&m), d[jj] as i32);
            f.div_qpoch(&one(), &q.mul(&m), d[jj] as i32);
        }
    }
    for (ii, &i) in last.iter().enumerate() {
        for (jj, &j) in last.iter().enumerate() {
            let m = a_ratio(j, i);
            let e = d[jj] as i32 - d[ii] as i32;
            f.mul_qpoch(&one(), &q.mul(&m), e);
            f.div_qpoch(&one(), &h.mul(&m), e);
        }
    }
    f
}

fn value(list: &QFactorList) -> Result<Option<RatFunc>, AlgebraError> {
    Ok(match list.evaluate()? {
        QRatio::Zero => None,
        QRatio::Value(r) => Some(r),
    })
}

/// Vertex function of `T*Gr(k, n)` at the fixed point `{n-k+1..n}`,
/// a series in `z` to degree `zcap` with coefficients in `a_i, q, hbar`.
pub fn vertex_x(k: usize, n: usize, zcap: u32) -> Result<TruncatedSeries, AlgebraError> {
    require_dual_range(k, n)?;
    grassmannian_vertex(k, n, zcap)
}

/// As [`vertex_x`] for any `1 <= k <= n`.
pub fn grassmannian_vertex(k: usize, n: usize, zcap: u32) -> Result<TruncatedSeries, AlgebraError> {
    if k == 0 || k > n {
        return Err(AlgebraError::Length(format!("require 1 <= k <= n, got k={k}, n={n}")));
    }
    let caps = Caps::new().with(Group::Kahler, zcap);
    let terms: Vec<Option<(Monomial, RatFunc)>> = compositions_up_to(k, zcap)
        .par_iter()
        .map(|d| {
            let total: u32 = d.iter().sum();
            Ok(value(&x_factors(k, n, d))?.map(|c| (Monomial::var_pow(Var::Z, total as i32), c)))
        })
        .collect::<Result<_, AlgebraError>>()?;
    Ok(TruncatedSeries::from_terms(&caps, terms.into_iter().flatten()))
}

/// A symmetric function inserted into the point-variety vertex, possibly
/// graded by extra series monomials: `sum_m m * tau_m(x)`.
#[derive(Clone, Debug)]
pub struct Descendant {
    terms: Vec<(Monomial, SymPoly)>,
}

impl Descendant {
    pub fn new(tau: SymPoly) -> Descendant {
        Descendant { terms: vec![(Monomial::one(), tau)] }
    }

    pub fn graded(terms: Vec<(Monomial, SymPoly)>) -> Descendant {
        Descendant { terms }
    }

    pub fn k(&self) -> usize {
        self.terms.first().map(|t| t.1.k()).unwrap_or(0)
    }

    pub fn terms(&self) -> &[(Monomial, SymPoly)] {
        &self.terms
    }

    fn eval(&self, point: &[(Scalar, Monomial)]) -> Result<Vec<(Monomial, RatFunc)>, AlgebraError> {
        self.terms.iter().map(|(m, p)| Ok((m.clone(), p.eval(point)?))).collect()
    }
}

/// `(q/hbar_dual)_d/(q)_d P_(d)(x; q, q/hbar_dual)` in `k` variables.
pub fn row_descendant(d: u32, k: usize) -> Result<SymPoly, AlgebraError> {
    let qh = mono(&[(Var::Q, 1), (Var::HBAR_DUAL, -1)]);
    let p = macdonald_p(&Partition::new([d]), k)?.with_params((one(), Monomial::var(Var::Q)), (one(), qh.clone()))?;
    let c = qpoch_ratfunc(&one(), &qh, d as i32).div(&qpoch_ratfunc(&one(), &Monomial::var(Var::Q), d as i32));
    Ok(p.scale(&c))
}

/// The point-variety vertex. With `tau`, every summand is multiplied by
/// `tau(x)` at `x_j = hbar_dual^{j-1} q^{d_{L,j}}`, `L = l(λ)`.
pub fn vertex_xlambda(lambda: &Partition, caps: &Caps, tau: Option<&Descendant>) -> Result<TruncatedSeries, AlgebraError> {
    if lambda.is_empty() {
        return Ok(TruncatedSeries::one(caps));
    }
    let quiver = QuiverA::for_lambda(lambda);
    let framing = lambda.part(1) as usize;
    let node = lambda.len();
    if let Some(t) = tau {
        if t.k() != quiver.v(node) as usize {
            return Err(AlgebraError::Length(format!(
                "descendant in {} variables, node {node} has dimension {}",
                t.k(),
                quiver.v(node)
            )));
        }
    }
    let zcap = caps.cap(Group::Kahler).unwrap_or(0);
    let chunks: Vec<Vec<(Monomial, RatFunc)>> = degree_tuples(&quiver, zcap)
        .par_iter()
        .map(|d| {
            let Some(c) = value(&quiver_factors(&quiver, framing, d, Var::HBAR_DUAL))? else {
                return Ok(Vec::new());
            };
            let zm = d.kahler_monomial();
            let Some(t) = tau else {
                return Ok(vec![(zm, c)]);
            };
            let point: Vec<(Scalar, Monomial)> = (1..=quiver.v(node) as usize)
                .map(|j| (one(), mono(&[(Var::HBAR_DUAL, j as i32 - 1), (Var::Q, d.get(node, j) as i32)])))
                .collect();
            Ok(t.eval(&point)?.into_iter().map(|(m, v)| (zm.mul(&m), c.mul(&v))).collect())
        })
        .collect::<Result<_, AlgebraError>>()?;
    let terms = chunks.into_iter().flatten();
    Ok(TruncatedSeries::from_terms(caps, terms))
}

/// Vertex of the dual quiver variety: the point-variety summand for the
/// rectangle times the spectral block at node `n-k`, expanded in `u`.
pub fn vertex_xdual(k: usize, n: usize, caps: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    require_dual_range(k, n)?;
    let quiver = QuiverA::for_dual(k as u32, n as u32);
    let zcap = caps.cap(Group::Kahler).unwrap_or(0);
    let parts: Vec<Option<TruncatedSeries>> = degree_tuples(&quiver, zcap)
        .par_iter()
        .map(|d| {
            let mut f = quiver_factors(&quiver, k, d, Var::HBAR_DUAL);
            f.extend(&spectral_block(&quiver, n - k, d, Var::HBAR_DUAL), 1);
            let Some(c) = value(&f)? else {
                return Ok(None);
            };
            let zm = TruncatedSeries::term(caps, d.kahler_monomial(), RatFunc::one())?;
            Ok(Some(crate::algebra::series_expand(&c, caps)?.mul(&zm)))
        })
        .collect::<Result<_, AlgebraError>>()?;
    Ok(parts.into_iter().flatten().fold(TruncatedSeries::zero(caps), |acc, p| acc.add(&p)))
}

/// `prod_{□ ∈ λ} φ(hbar_dual z_□)/φ(z_□)`.
pub fn vertex_product(lambda: &Partition, caps: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    let hd = Monomial::var(Var::HBAR_DUAL);
    let mut s = TruncatedSeries::one(caps);
    for cell in lambda.cells() {
        s = s.mul(&phi_ratio(&one(), &hd, &one(), &zbox(lambda, cell)?, caps)?);
    }
    Ok(s)
}

/// `prod_{i=1..k} φ(u hbar_dual^i)/φ(u q hbar_dual^{i-1})`.
pub fn prefactor_dual(k: usize, caps: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    let a = mono(&[(Var::HBAR_DUAL, 1), (Var::Q, -1)]);
    let mut s = TruncatedSeries::one(caps);
    for i in 1..=k as i32 {
        let x = mono(&[(Var::U, 1), (Var::Q, 1), (Var::HBAR_DUAL, i - 1)]);
        s = s.mul(&phi_ratio(&one(), &a, &one(), &x, caps)?);
    }
    Ok(s)
}

/// `prod_{i=1..k} φ((hbar/q)^{i-1} z)/φ(hbar (hbar/q)^{i-1} z)`.
pub fn prefactor_x(k: usize, caps: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    let a = Monomial::var_pow(Var::HBAR, -1);
    let mut s = TruncatedSeries::one(caps);
    for i in 1..=k as i32 {
        let x = mono(&[(Var::Z, 1), (Var::HBAR, i), (Var::Q, 1 - i)]);
        s = s.mul(&phi_ratio(&one(), &a, &one(), &x, caps)?);
    }
    Ok(s)
}

/// Factors of a single summand, for cone and pole bookkeeping.
pub fn summand_factors(spec: &VertexSpec, d: &DegreeTuple) -> QFactorList {
    match spec.variety {
        Variety::X => x_factors(spec.k, spec.n, &d.rows().iter().flatten().copied().collect::<Vec<_>>()),
        Variety::XLambda => {
            let quiver = spec.quiver();
            quiver_factors(&quiver, spec.lambda.part(1) as usize, d, Var::HBAR_DUAL)
        }
        Variety::XDual => {
            let quiver = spec.quiver();
            let mut f = quiver_factors(&quiver, spec.k, d, Var::HBAR_DUAL);
            f.extend(&spectral_block(&quiver, spec.n - spec.k, d, Var::HBAR_DUAL), 1);
            f
        }
    }
}
