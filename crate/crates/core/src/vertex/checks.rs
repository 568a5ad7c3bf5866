//! Product formula and reduction to the point variety.

use num_traits::One;

use crate::algebra::{AlgebraError, Caps, Group, Monomial, RatFunc, Scalar, TruncatedSeries, Var};
use crate::qcomb::{phi_ratio, Partition};
use crate::qdiff::{qselberg_sides, ParamSlot};
use crate::report::CheckReport;

use super::{grassmannian_vertex, prefactor_dual, rectangle, require_dual_range, row_descendant, vertex_product, vertex_xdual, vertex_xlambda, Descendant};

/// The point-variety vertex against its φ-product, to total Kähler degree `zcap`.
pub fn check_verpoint(lambda: &Partition, zcap: u32) -> CheckReport {
    let caps = Caps::new().with(Group::Kahler, zcap);
    let head = CheckReport::new("verpoint").caps(&caps).params(format!("lambda={lambda}"));
    head.clone().finish((|| {
        let mut report = head.clone();
        report.compare_series(&vertex_xlambda(lambda, &caps, None)?, &vertex_product(lambda, &caps)?);
        Ok(report)
    })())
}

/// `sum_{d <= ucap} (q/hbar_dual)_d/(q)_d P_(d)(x; q, q/hbar_dual) (hbar_dual u)^d`.
pub fn reduction_descendant(k: usize, ucap: u32) -> Result<Descendant, AlgebraError> {
    let terms = (0..=ucap)
        .map(|d| {
            let hd = RatFunc::monomial(Monomial::var_pow(Var::HBAR_DUAL, d as i32));
            Ok((Monomial::var_pow(Var::U, d as i32), row_descendant(d, k)?.scale(&hd)))
        })
        .collect::<Result<_, AlgebraError>>()?;
    Ok(Descendant::graded(terms))
}

/// The dual vertex equals `prefactor_dual(k)` times the rectangle vertex
/// with the one-row descendant inserted.
pub fn check_reducetopoint(k: usize, n: usize, zcap: u32, ucap: u32) -> CheckReport {
    let caps = Caps::new().with(Group::Kahler, zcap).with(Group::Spectral, ucap);
    let head = CheckReport::new("reduce").k(k).n(n).caps(&caps);
    head.clone().finish((|| {
        require_dual_range(k, n)?;
        let mut report = head.clone();
        let tau = reduction_descendant(k, ucap)?;
        let right = prefactor_dual(k, &caps)?.mul(&vertex_xlambda(&rectangle(k, n), &caps, Some(&tau))?);
        report.compare_series(&vertex_xdual(k, n, &caps)?, &right);
        Ok(report)
    })())
}

/// The q-Selberg integral with no insertion, the vertex of `T*Gr(k, k)`
/// at `hbar = t`, and `prod_{i<=k} φ(t (t/q)^{i-1} z)/φ((t/q)^{i-1} z)`
/// all agree to `z^zcap`.
pub fn check_selberg_point(k: usize, zcap: u32) -> CheckReport {
    let caps = Caps::new().with(Group::Kahler, zcap);
    let head = CheckReport::new("selberg-point").k(k).n(k).caps(&caps);
    head.clone().finish((|| {
        let mut report = head.clone();
        let (integral, _) = qselberg_sides(&Partition::empty(), k, zcap, ParamSlot::QOverT)?;
        let vertex = grassmannian_vertex(k, k, zcap)?.map_coefficients(|c| {
            c.substitute(|v| (v == Var::HBAR).then(|| (Scalar::one(), Monomial::var(Var::T))))
        });
        let mut product = TruncatedSeries::one(&caps);
        for i in 1..=k as i32 {
            let x = Monomial::from_pairs([(Var::Z, 1), (Var::T, i - 1), (Var::Q, 1 - i)]);
            product = product.mul(&phi_ratio(&Scalar::one(), &Monomial::var(Var::T), &Scalar::one(), &x, &caps)?);
        }
        report.compare_series(&integral, &vertex);
        report.compare_series(&vertex, &product);
        Ok(report)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products() {
        for l in [vec![1], vec![2], vec![1, 1]] {
            let r = check_verpoint(&Partition::new(l), 3);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn selberg_point_small() {
        for k in 1..=2 {
            let r = check_selberg_point(k, 3);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn reduction_one_two() {
        let r = check_reducetopoint(1, 2, 2, 2);
        assert!(r.passed(), "{r:?}");
    }
}
