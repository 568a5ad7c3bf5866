//! Exact checks of the defining properties of `P_μ`.

use num_traits::One;

use crate::algebra::{Caps, Group, Monomial, Scalar, TruncatedSeries, Var};
use crate::macdonald::basis::{macdonald_p, macdonald_p_lambda, macdonald_p_with, LinearExtension};
use crate::macdonald::inner::inner;
use crate::qcomb::{phi_ratio, qpoch_ratfunc, Partition};
use crate::report::{CheckReport, Mismatch};

fn partitions_up_to(max_size: u32, k: usize) -> impl Iterator<Item = (u32, Vec<Partition>)> {
    (1..=max_size).map(move |n| (n, Partition::all(n).into_iter().filter(|p| p.len() <= k).collect()))
}

/// `<P_μ, P_ν> = 0` for distinct `μ, ν` of equal size, lengths at most `k`.
pub fn check_orthogonality(max_size: u32, k: usize) -> CheckReport {
    let mut report = CheckReport::new("orthogonality").k(k).params(format!("size<={max_size}"));
    for (_, parts) in partitions_up_to(max_size, k) {
        for (i, mu) in parts.iter().enumerate() {
            for nu in &parts[i + 1..] {
                let c = inner(&macdonald_p_lambda(mu), &macdonald_p_lambda(nu));
                if !c.is_zero() {
                    report.push(Mismatch::new(format!("<P_{mu}, P_{nu}>"), c, "0"));
                }
            }
        }
    }
    report
}

/// Coefficient 1 on `m_μ` and nothing outside the dominance down-set.
pub fn check_unitriangularity(max_size: u32, k: usize) -> CheckReport {
    let head = CheckReport::new("unitriangularity").k(k).params(format!("size<={max_size}"));
    head.clone().finish((|| {
        let mut report = head.clone();
        for (_, parts) in partitions_up_to(max_size, k) {
            for mu in &parts {
                let p = macdonald_p(mu, k)?;
                let lead = p.coeff(mu);
                if !lead.is_one() {
                    report.push(Mismatch::new(format!("P_{mu} at m_{mu}"), lead, "1"));
                }
                for (nu, c) in p.coeffs() {
                    if !nu.dominated_by(mu) && !c.is_zero() {
                        report.push(Mismatch::new(format!("P_{mu} at m_{nu}"), c, "0"));
                    }
                }
            }
        }
        Ok(report)
    })())
}

/// Gram–Schmidt along two different extensions of dominance.
pub fn check_extensions(max_size: u32, k: usize) -> CheckReport {
    let head = CheckReport::new("extensions").k(k).params(format!("size<={max_size}"));
    head.clone().finish((|| {
        let mut report = head.clone();
        for (_, parts) in partitions_up_to(max_size, k) {
            for mu in &parts {
                let a = macdonald_p_with(mu, k, LinearExtension::Lex)?;
                let b = macdonald_p_with(mu, k, LinearExtension::NStatistic)?;
                for nu in a.coeffs().keys().chain(b.coeffs().keys()) {
                    report.compare(format!("P_{mu} at m_{nu}"), &a.coeff(nu), &b.coeff(nu));
                }
            }
        }
        Ok(report)
    })())
}

/// `prod_i φ(y t x_i)/φ(y x_i) = sum_d (t)_d/(q)_d P_(d)(x; q, t) y^d`
/// up to `y^ycap`.
pub fn check_qbinomial(k: usize, ycap: u32) -> CheckReport {
    let caps = Caps::new().with(Group::Spectral, ycap);
    let head = CheckReport::new("qbinomial").k(k).caps(&caps);
    head.clone().finish((|| {
        let mut report = head.clone();
        let one = Scalar::one();
        let t = Monomial::var(Var::T);
        let mut left = TruncatedSeries::one(&caps);
        for i in 1..=k {
            let yx = Monomial::from_pairs([(Var::Y, 1), (Var::x(i), 1)]);
            left = left.mul(&phi_ratio(&one, &t, &one, &yx, &caps)?);
        }
        let mut right = Vec::new();
        for d in 0..=ycap {
            let row = macdonald_p(&Partition::new([d]), k)?.to_ratfunc();
            let c = qpoch_ratfunc(&one, &t, d as i32).div(&qpoch_ratfunc(&one, &Monomial::var(Var::Q), d as i32));
            right.push((Monomial::var_pow(Var::Y, d as i32), c.mul(&row)));
        }
        report.compare_series(&left, &TruncatedSeries::from_terms(&caps, right));
        Ok(report)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        assert!(check_orthogonality(4, 2).passed());
        assert!(check_unitriangularity(4, 3).passed());
        assert!(check_extensions(4, 3).passed());
        assert!(check_qbinomial(2, 3).passed());
    }

    #[test]
    fn qbinomial_records_caps() {
        let r = check_qbinomial(1, 2);
        assert!(r.passed(), "{r}");
        assert_eq!(r.caps, "spectral=2");
    }
}
