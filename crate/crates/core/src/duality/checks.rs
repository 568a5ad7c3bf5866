//! Checks that pass between the two sides of the duality.

use num_traits::One;

use crate::algebra::{AlgebraError, Caps, Group, Monomial, RatFunc, Scalar, TruncatedSeries, Var};
use crate::qcomb::{phi_ratio, zbox, QFactorList};
use crate::qdiff::{compositions, op_d};
use crate::report::CheckReport;
use crate::vertex::{prefactor_x, rectangle, require_dual_range, row_descendant, vertex_product, vertex_x, vertex_xdual, vertex_xlambda, x_factors, Descendant};

use super::{shift_exponent, shift_rule, KappaMap, RatioFrame};

fn ratio_caps(rcap: u32) -> Caps {
    Caps::new().with(Group::Ratio, rcap)
}

fn hbar_over_q() -> Monomial {
    Monomial::from_pairs([(Var::Q, 1), (Var::HBAR, -1)])
}

/// `κ(vertex_product(k^{n-k})) = prod_{j > n-k >= i} φ(q a_j/a_i)/φ(hbar a_j/a_i)`.
pub fn check_prform(k: usize, n: usize, rcap: u32) -> CheckReport {
    let target = ratio_caps(rcap);
    let head = CheckReport::new("prform").k(k).n(n).caps(&target);
    head.clone().finish((|| {
        let kappa = KappaMap::new(k, n)?;
        let mut report = head.clone();
        let src = Caps::new().with(Group::Kahler, rcap);
        let left = kappa.apply(&vertex_product(&rectangle(k, n), &src)?, &target)?;
        let mut right = TruncatedSeries::one(&target);
        for j in n - k + 1..=n {
            for i in 1..=n - k {
                let x = RatioFrame::a_ratio(j, i).mul(&Monomial::var(Var::HBAR));
                right = right.mul(&phi_ratio(&Scalar::one(), &hbar_over_q(), &Scalar::one(), &x, &target)?);
            }
        }
        report.compare_series(&left, &right);
        Ok(report)
    })())
}

/// `φ(c m)^e` factors of `κ` applied to the point-variety product.
fn kappa_product_factors(kappa: &KappaMap) -> Result<Vec<(Scalar, Monomial, i32)>, AlgebraError> {
    let lambda = rectangle(kappa.k, kappa.n);
    let mut out = Vec::new();
    for cell in lambda.cells() {
        let (c, m) = kappa.apply_monomial(&zbox(&lambda, cell)?);
        out.push((c.clone(), m.mul(&hbar_over_q()), 1));
        out.push((c, m, -1));
    }
    Ok(out)
}

/// `p^d F / F` for `F` the product above, exactly.
fn shifted_product_ratio(kappa: &KappaMap, d: &[u32]) -> Result<RatFunc, AlgebraError> {
    let mut f = QFactorList::new();
    for (c, m, e) in kappa_product_factors(kappa)? {
        let s: i32 = m
            .iter()
            .filter_map(|(v, x)| v.index().filter(|&l| v == Var::r(l)).map(|l| x * shift_exponent(kappa.k, kappa.n, d, l)))
            .sum();
        // φ(q^s y)/φ(y) = 1/(y)_s
        if e > 0 {
            f.div_qpoch(&c, &m, s);
        } else {
            f.mul_qpoch(&c, &m, s);
        }
    }
    Ok(f.evaluate()?.into_ratfunc())
}

/// Coefficient of `p^d` in `D_{|d|}(a_{n-k+1}, ..., a_n; q, hbar)`, in ratio coordinates.
fn operator_coefficient(k: usize, n: usize, d: &[u32]) -> Result<RatFunc, AlgebraError> {
    let total: u32 = d.iter().sum();
    let c = op_d(total, k)?.coefficient(d);
    let c = c.try_substitute(|v| match v.index() {
        Some(i) if v == Var::x(i) => Some((Scalar::one(), Monomial::var(Var::a(n - k + i)))),
        _ => (v == Var::T).then(|| (Scalar::one(), Monomial::var(Var::HBAR))),
    })?;
    RatioFrame::ratfunc(&c)
}

/// Shifting `κ(V_λ)` by `p^d` multiplies it by
/// `prod_j prod_{i <= n-k} (hbar a_j/a_i)_{d_j}/(q a_j/a_i)_{d_j}`, and the
/// matching operator coefficient times that factor is the `d` summand of
/// the Grassmannian vertex.
pub fn check_vgrcoeff(k: usize, n: usize, d: &[u32]) -> CheckReport {
    let head = CheckReport::new("vgrcoeff").k(k).n(n).params(format!(
        "d={}",
        d.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    ));
    head.clone().finish((|| {
        let kappa = KappaMap::new(k, n)?;
        if d.len() != k {
            return Err(AlgebraError::Length(format!("d has {} entries, expected {k}", d.len())));
        }
        let mut report = head.clone();
        let got = shifted_product_ratio(&kappa, d)?;
        let mut want = QFactorList::new();
        let one = Scalar::one();
        for (m, &dj) in d.iter().enumerate() {
            let j = n - k + m + 1;
            for i in 1..=n - k {
                let x = RatioFrame::a_ratio(j, i);
                want.mul_qpoch(&one, &x.mul(&Monomial::var(Var::HBAR)), dj as i32);
                want.div_qpoch(&one, &x.mul(&Monomial::var(Var::Q)), dj as i32);
            }
        }
        report.compare("shift ratio", &got, &want.evaluate()?.into_ratfunc());
        let term = operator_coefficient(k, n, d)?.mul(&got);
        let eq2 = RatioFrame::ratfunc(&x_factors(k, n, d).evaluate()?.into_ratfunc())?;
        report.compare("summand", &term, &eq2);
        Ok(report)
    })())
}

/// [`check_vgrcoeff`] for every `d` with `|d| <= max_total`.
pub fn check_vgrcoeff_upto(k: usize, n: usize, max_total: u32) -> CheckReport {
    let mut report = CheckReport::new("vgrcoeff").k(k).n(n).params(format!("|d|<={max_total}"));
    for total in 0..=max_total {
        for d in compositions(total, k) {
            report.absorb(&check_vgrcoeff(k, n, &d));
        }
    }
    report
}

/// `(q/hbar_dual)_d/(q)_d P_(d)(x; q, q/hbar_dual) hbar_dual^{d(1-k)}`.
pub fn insertion_descendant(d: u32, k: usize) -> Result<Descendant, AlgebraError> {
    let h = RatFunc::monomial(Monomial::var_pow(Var::HBAR_DUAL, d as i32 * (1 - k as i32)));
    Ok(Descendant::new(row_descendant(d, k)?.scale(&h)))
}

/// `D_d κ(V_λ) = κ(V_λ with the one-row descendant of degree d)` in
/// ratio coordinates to total degree `rcap`.
pub fn check_insertion(k: usize, n: usize, d: u32, rcap: u32) -> CheckReport {
    let target = ratio_caps(rcap);
    let head = CheckReport::new("insertion").k(k).n(n).caps(&target).params(format!("d={d}"));
    head.clone().finish((|| {
        let kappa = KappaMap::new(k, n)?;
        let mut report = head.clone();
        let lambda = rectangle(k, n);
        let src = Caps::new().with(Group::Kahler, rcap);
        let v = kappa.apply(&vertex_xlambda(&lambda, &src, None)?, &target)?;
        let mut left = TruncatedSeries::zero(&target);
        for e in compositions(d, k) {
            let c = crate::algebra::series_expand(&operator_coefficient(k, n, &e)?, &target)?;
            left = left.add(&c.mul(&v.substitute(shift_rule(k, n, &e), &target)?));
        }
        let tau = insertion_descendant(d, k)?;
        let right = kappa.apply(&vertex_xlambda(&lambda, &src, Some(&tau))?, &target)?;
        report.compare_series(&left, &right);
        Ok(report)
    })())
}

/// Both sides of the duality in `(r, z)` coordinates:
/// `prefactor_x * V_X` and `κ(V_λ^{-1} V_dual)`.
pub fn main_sides(k: usize, n: usize, zcap: u32, rcap: u32) -> Result<(TruncatedSeries, TruncatedSeries), AlgebraError> {
    require_dual_range(k, n)?;
    let kappa = KappaMap::new(k, n)?;
    let target = Caps::new().with(Group::Ratio, rcap).with(Group::Kahler, zcap);
    let zcaps = Caps::new().with(Group::Kahler, zcap);
    let x = prefactor_x(k, &zcaps)?.mul(&vertex_x(k, n, zcap)?);
    let left = RatioFrame::series(&x, &target)?;
    let src = Caps::new().with(Group::Kahler, rcap).with(Group::Spectral, zcap);
    let dual = vertex_product(&rectangle(k, n), &src)?.inverse()?.mul(&vertex_xdual(k, n, &src)?);
    let right = kappa.apply(&dual, &target)?;
    Ok((left, right))
}

pub fn check_main(k: usize, n: usize, zcap: u32, rcap: u32) -> CheckReport {
    let caps = Caps::new().with(Group::Ratio, rcap).with(Group::Kahler, zcap);
    let head = CheckReport::new("main").k(k).n(n).caps(&caps);
    head.clone().finish((|| {
        let mut report = head.clone();
        let (left, right) = main_sides(k, n, zcap, rcap)?;
        report.compare_series(&left, &right);
        Ok(report)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_box_product() {
        assert!(check_prform(1, 2, 3).passed());
    }

    #[test]
    fn zero_shift_ratio_is_one() {
        let kappa = KappaMap::new(2, 4).unwrap();
        assert!(shifted_product_ratio(&kappa, &[0, 0]).unwrap().is_one());
    }

    #[test]
    fn one_two_unit_shift() {
        let kappa = KappaMap::new(1, 2).unwrap();
        let got = shifted_product_ratio(&kappa, &[1]).unwrap();
        let want = crate::algebra::text::parse_expr("(1 - hbar*r1)/(1 - q*r1)").unwrap();
        assert_eq!(got, want);
        assert!(check_vgrcoeff(1, 2, &[1]).passed());
    }

    #[test]
    fn small_insertions() {
        assert!(check_insertion(1, 2, 0, 3).passed());
        let r = check_insertion(1, 2, 1, 3);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn main_one_two() {
        let r = check_main(1, 2, 2, 2);
        assert!(r.passed(), "{r:?}");
    }
}
