use num_traits::One;

use crate::algebra::{AlgebraError, Caps, Group, Monomial, RatFunc, Scalar, TruncatedSeries, Var};
use crate::macdonald::{macdonald_eval, macdonald_p, SymPoly};
use crate::qcomb::{phi_ratio, qpoch_ratfunc, Partition, QFactorList};
use crate::qdiff::operator::{compositions, op_d, op_d_rewritten};
use crate::report::{CheckReport, Mismatch};

/// Which `t` the Macdonald polynomial is taken at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamSlot {
    /// `P_μ(x; q, q/t)`, the eigenbasis of `D_d(x; q, t)`.
    QOverT,
    /// `P_μ(x; q, t)`.
    T,
}

fn mono(pairs: &[(Var, i32)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

fn slot_params(slot: ParamSlot) -> ((Scalar, Monomial), (Scalar, Monomial)) {
    let q = (Scalar::one(), Monomial::var(Var::Q));
    let t = match slot {
        ParamSlot::QOverT => (Scalar::one(), mono(&[(Var::Q, 1), (Var::T, -1)])),
        ParamSlot::T => (Scalar::one(), Monomial::var(Var::T)),
    };
    (q, t)
}

/// `P_μ(x_1..x_k)` at the given parameter slot.
pub fn macdonald_at(mu: &Partition, k: usize, slot: ParamSlot) -> Result<SymPoly, AlgebraError> {
    let (q, t) = slot_params(slot);
    macdonald_p(mu, k)?.with_params(q, t)
}

/// `x_i -> q^{shift_i} x_i` followed by `x_1 -> 1`.
fn dehomogenize(shift: &[u32]) -> impl Fn(Var) -> Option<(Scalar, Monomial)> + '_ {
    move |v: Var| {
        let i = v.index().filter(|&i| i >= 1 && Var::x(i) == v)?;
        let e = shift.get(i - 1).copied().unwrap_or(0) as i32;
        let m = if i == 1 { Monomial::one() } else { Monomial::var(v) };
        Some((Scalar::one(), m.mul(&Monomial::var_pow(Var::Q, e))))
    }
}

/// `s_i = q^{μ_i} (t/q)^{i-1}`, `i = 1..k`.
pub fn spectral_point(mu: &Partition, k: usize) -> Vec<(Scalar, Monomial)> {
    (1..=k)
        .map(|i| {
            let e = i as i32 - 1;
            (Scalar::one(), mono(&[(Var::Q, mu.part(i) as i32 - e), (Var::T, e)]))
        })
        .collect()
}

/// `(t)_d/(q)_d P_(d)(s; q, t)`.
pub fn eigenvalue(mu: &Partition, d: u32, k: usize) -> Result<RatFunc, AlgebraError> {
    let one = Scalar::one();
    let row = Partition::new([d]);
    let q = (one.clone(), Monomial::var(Var::Q));
    let t = (one.clone(), Monomial::var(Var::T));
    let p = macdonald_eval(&row, &spectral_point(mu, k), q, t)?;
    let ratio = qpoch_ratfunc(&one, &Monomial::var(Var::T), d as i32).div(&qpoch_ratfunc(&one, &Monomial::var(Var::Q), d as i32));
    Ok(ratio.mul(&p))
}

/// `D_d P_μ(x; q, q/t) = eigenvalue · P_μ(x; q, q/t)` as an identity of
/// rational functions.
pub fn check_diagonal(mu: &Partition, d: u32, k: usize) -> CheckReport {
    let head = CheckReport::new("diagonal").k(k).params(format!("mu={mu} d={d}"));
    head.clone().finish((|| {
        let mut report = head.clone();
        // Both sides are homogeneous in x, so x_1 = 1 loses nothing, and
        // the q,t denominators of P and of the eigenvalue clear.
        let p = macdonald_at(mu, k, ParamSlot::QOverT)?.to_ratfunc();
        let e = eigenvalue(mu, d, k)?;
        let (pn, en, ed) = (p.numer(), e.numer(), e.denom());
        let mut parts = vec![RatFunc::from_poly(-&(en * &pn.substitute(dehomogenize(&[]))))];
        for (shift, c) in op_d(d, k)?.terms() {
            let c = c.try_substitute(dehomogenize(&[]))?;
            parts.push(c.mul_poly(&(&ed * &pn.substitute(dehomogenize(shift)))));
        }
        let diff = RatFunc::sum(parts.iter());
        if !diff.is_zero() {
            let left = op_d(d, k)?.apply(&p);
            report.push(Mismatch::new("operator", left.simplify(), e.mul(&p).simplify()));
        }
        Ok(report)
    })())
}

/// `D_a D_b = D_b D_a` for all `a < b <= dmax`, by symbolic composition.
pub fn check_commute(k: usize, dmax: u32) -> CheckReport {
    let head = CheckReport::new("commute").k(k).params(format!("dmax={dmax}"));
    head.clone().finish((|| {
        let mut report = head.clone();
        let ops: Vec<_> = (0..=dmax).map(|d| op_d(d, k)).collect::<Result<_, _>>()?;
        for a in 1..=dmax as usize {
            for b in a + 1..=dmax as usize {
                let ab = ops[a].compose(&ops[b])?;
                let ba = ops[b].compose(&ops[a])?;
                let diff = ab.sub(&ba);
                for (shift, c) in diff.terms() {
                    report.push(Mismatch::new(format!("D{a}D{b} p^{shift:?}"), c, "0"));
                }
            }
        }
        Ok(report)
    })())
}

/// The pairwise rewriting of `D_d` agrees with the definition term by term.
pub fn check_lemma_rewrite(k: usize, dmax: u32) -> CheckReport {
    let head = CheckReport::new("lemma-rewrite").k(k).params(format!("dmax={dmax}"));
    head.clone().finish((|| {
        let mut report = head.clone();
        for d in 0..=dmax {
            let a = op_d(d, k)?;
            let b = op_d_rewritten(d, k)?;
            for shift in compositions(d, k) {
                report.compare(format!("d={d} p^{shift:?}"), &a.coefficient(&shift), &b.coefficient(&shift));
            }
        }
        Ok(report)
    })())
}

/// `prod_i φ(t s_i z)/φ(s_i z)` truncated in `z`.
fn spectral_product(mu: &Partition, k: usize, caps: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    let one = Scalar::one();
    let mut acc = TruncatedSeries::one(caps);
    for (c, s) in spectral_point(mu, k) {
        let f = phi_ratio(&one, &Monomial::var(Var::T), &c, &s.mul(&Monomial::var(Var::Z)), caps)?;
        acc = acc.mul(&f);
    }
    Ok(acc)
}

/// `D(z) P_μ = P_μ prod_i φ(t s_i z)/φ(s_i z)` to `z`-degree `zcap`.
pub fn check_diagonal2(mu: &Partition, k: usize, zcap: u32) -> CheckReport {
    let caps = Caps::new().with(Group::Kahler, zcap);
    let head = CheckReport::new("diagonal2").k(k).caps(&caps).params(format!("mu={mu}"));
    head.clone().finish((|| {
        let mut report = head.clone();
        let p = macdonald_at(mu, k, ParamSlot::QOverT)?.to_ratfunc();
        let mut left = Vec::new();
        for d in 0..=zcap {
            left.push((Monomial::var_pow(Var::Z, d as i32), op_d(d, k)?.apply(&p)));
        }
        let left = TruncatedSeries::from_terms(&caps, left);
        let right = spectral_product(mu, k, &caps)?.scale(&p);
        report.compare_series(&left, &right);
        Ok(report)
    })())
}

/// The q-integral weight at `x = a q^d`, relative to its value at `x = a`:
/// each `φ(c q^n)/φ(c)` collapses to `1/(c)_n`.
pub fn selberg_weight(d: &[u32]) -> Result<RatFunc, AlgebraError> {
    let one = Scalar::one();
    let k = d.len();
    let a = |i: usize| Monomial::var(Var::a(i + 1));
    let (q, t) = (Monomial::var(Var::Q), Monomial::var(Var::T));
    let mut f = QFactorList::new();
    for i in 0..k {
        for j in 0..k {
            let m = a(j).div(&a(i));
            let e = d[j] as i32 - d[i] as i32;
            // φ(t x_j/x_i) / φ(q x_j/x_i)
            f.mul_qpoch(&one, &q.mul(&m), e);
            f.div_qpoch(&one, &t.mul(&m), e);
            // φ(q x_j/a_i) / φ(t x_j/a_i)
            f.mul_qpoch(&one, &t.mul(&m), d[j] as i32);
            f.div_qpoch(&one, &q.mul(&m), d[j] as i32);
        }
    }
    Ok(f.evaluate()?.into_ratfunc())
}

/// The q-Selberg evaluation at generic `a_1..a_k`, truncated in `z`.
pub fn qselberg_check(mu: &Partition, k: usize, zcap: u32) -> CheckReport {
    qselberg_check_at(mu, k, zcap, ParamSlot::QOverT)
}

/// As [`qselberg_check`] with an explicit parameter slot for `P_μ`.
pub fn qselberg_check_at(mu: &Partition, k: usize, zcap: u32, slot: ParamSlot) -> CheckReport {
    let caps = Caps::new().with(Group::Kahler, zcap);
    let slot_name = match slot {
        ParamSlot::QOverT => "q,q/t",
        ParamSlot::T => "q,t",
    };
    let head = CheckReport::new("selberg").k(k).caps(&caps).params(format!("mu={mu} slot={slot_name}"));
    head.clone().finish((|| {
        let mut report = head.clone();
        let (left, right) = qselberg_sides(mu, k, zcap, slot)?;
        report.compare_series(&left, &right);
        Ok(report)
    })())
}

/// Both sides of the q-Selberg evaluation.
pub fn qselberg_sides(mu: &Partition, k: usize, zcap: u32, slot: ParamSlot) -> Result<(TruncatedSeries, TruncatedSeries), AlgebraError> {
    let caps = Caps::new().with(Group::Kahler, zcap);
    let p = macdonald_at(mu, k, slot)?;
    let point = |d: &[u32]| -> Vec<(Scalar, Monomial)> {
        (0..k).map(|i| (Scalar::one(), mono(&[(Var::a(i + 1), 1), (Var::Q, d[i] as i32)]))).collect()
    };
    let mut left = Vec::new();
    for total in 0..=zcap {
        for d in compositions(total, k) {
            let w = selberg_weight(&d)?;
            left.push((Monomial::var_pow(Var::Z, total as i32), w.mul(&p.eval(&point(&d))?)));
        }
    }
    let left = TruncatedSeries::from_terms(&caps, left);
    let right = spectral_product(mu, k, &caps)?.scale(&p.eval(&point(&vec![0; k]))?);
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_expr;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn one_variable_eigenvalues() {
        for d in 0..=3 {
            for m in 0..=2 {
                let want = parse_expr(&format!("q^{}", d * m)).unwrap().mul(
                    &qpoch_ratfunc(&Scalar::one(), &Monomial::var(Var::T), d as i32)
                        .div(&qpoch_ratfunc(&Scalar::one(), &Monomial::var(Var::Q), d as i32)),
                );
                assert_eq!(eigenvalue(&Partition::new([m]), d, 1).unwrap(), want);
                assert!(check_diagonal(&Partition::new([m]), d, 1).passed());
            }
        }
    }

    #[test]
    fn linear_eigenvalue() {
        // (1-t)/(1-q) (q + t/q) for μ = (1) in two variables
        let want = parse_expr("(1 - t)/(1 - q)*(q + t/q)").unwrap();
        assert_eq!(eigenvalue(&p("1"), 1, 2).unwrap(), want);
        assert!(check_diagonal(&p("1"), 1, 2).passed());
    }

    #[test]
    fn two_variable_spectrum() {
        assert!(check_diagonal(&p("2,1"), 2, 2).passed());
        assert!(check_diagonal(&p("2"), 2, 2).passed());
    }

    #[test]
    fn plain_slot_is_not_an_eigenbasis() {
        let q = macdonald_at(&p("2"), 2, ParamSlot::T).unwrap().to_ratfunc();
        let left = op_d(1, 2).unwrap().apply(&q);
        assert_ne!(left, eigenvalue(&p("2"), 1, 2).unwrap().mul(&q));
    }

    #[test]
    fn small_commutators_and_rewrites() {
        assert!(check_commute(2, 2).passed());
        assert!(check_lemma_rewrite(2, 2).passed());
    }

    #[test]
    fn generating_function() {
        assert!(check_diagonal2(&p("1"), 2, 3).passed());
    }

    #[test]
    fn selberg_one_variable() {
        let (left, right) = qselberg_sides(&Partition::empty(), 1, 3, ParamSlot::QOverT).unwrap();
        assert_eq!(left, right);
        let coeff = qpoch_ratfunc(&Scalar::one(), &Monomial::var(Var::T), 2)
            .div(&qpoch_ratfunc(&Scalar::one(), &Monomial::var(Var::Q), 2));
        assert_eq!(left.coefficient(&Monomial::var_pow(Var::Z, 2)), coeff);
    }

    #[test]
    fn selberg_small() {
        assert!(qselberg_check(&p("1"), 2, 2).passed());
        assert!(qselberg_check(&p("2"), 2, 2).passed());
        assert!(!qselberg_check_at(&p("2"), 2, 2, ParamSlot::T).passed());
    }
}
