//! Which degree tuples carry a nonzero summand.
//!
//! Put the `j`-th degree at node `c` in the `j`-th box of content `c`,
//! boxes taken top to bottom. The summand survives exactly when the
//! filling weakly increases along rows and down columns.

use std::collections::HashMap;

use rand::rngs::ChaCha8Rng;
use rand::{RngExt, SeedableRng};

use crate::algebra::AlgebraError;
use crate::qcomb::{Cell, Partition, QRatio, QuiverA};
use crate::report::{CheckReport, Mismatch};

use super::summand::{degree_tuples, DegreeTuple};
use super::{summand_factors, Variety, VertexSpec};

/// The filling of `λ` by `d`; `None` if the shapes disagree.
pub fn filling(lambda: &Partition, d: &DegreeTuple) -> Option<HashMap<Cell, u32>> {
    let mut seen: HashMap<u32, usize> = HashMap::new();
    let mut out = HashMap::new();
    for cell in lambda.cells() {
        // cells() runs row by row, so each diagonal is visited top to bottom
        let c = lambda.content(cell).ok()?;
        let j = seen.entry(c).or_insert(0);
        *j += 1;
        let row = d.rows().get(c as usize - 1)?;
        out.insert(cell, *row.get(*j - 1)?);
    }
    let boxes: usize = d.rows().iter().map(Vec::len).sum();
    (boxes == out.len()).then_some(out)
}

/// Reverse plane partition test.
pub fn in_cone(lambda: &Partition, d: &DegreeTuple) -> bool {
    let Some(f) = filling(lambda, d) else {
        return false;
    };
    f.iter().all(|(&(i, j), &x)| {
        f.get(&(i, j + 1)).is_none_or(|&y| x <= y) && f.get(&(i + 1, j)).is_none_or(|&y| x <= y)
    })
}

fn shape(spec: &VertexSpec) -> (QuiverA, Option<&Partition>) {
    let lambda = (spec.variety != Variety::X).then_some(&spec.lambda);
    (spec.quiver(), lambda)
}

/// Up to `count` distinct random tuples outside the cone, entries at most
/// `max_entry`. Deterministic in `seed`.
pub fn out_of_cone_samples(spec: &VertexSpec, count: usize, max_entry: u32, seed: u64) -> Vec<DegreeTuple> {
    let (quiver, lambda) = shape(spec);
    let Some(lambda) = lambda else {
        return Vec::new();
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<DegreeTuple> = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let rows = quiver
            .dims()
            .iter()
            .map(|&v| (0..v).map(|_| rng.random_range(0..=max_entry)).collect())
            .collect();
        let d = DegreeTuple::from_rows(rows);
        if !in_cone(lambda, &d) && !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

fn classify(spec: &VertexSpec, d: &DegreeTuple) -> Result<bool, AlgebraError> {
    Ok(!matches!(summand_factors(spec, d).evaluate()?, QRatio::Zero))
}

/// Every summand up to `cap` is nonzero exactly in the cone, and `samples`
/// random tuples outside it give an exact zero. A pole anywhere fails.
pub fn check_cone_vanishing(spec: &VertexSpec, cap: u32, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("cone").k(spec.k).n(spec.n).params(format!("{spec} cap={cap} samples={samples} seed={seed}"));
    let (quiver, lambda) = shape(spec);
    let mut visit = |d: &DegreeTuple, expect_zero: Option<bool>| match classify(spec, d) {
        Err(e) => report.push(Mismatch::new(d, format!("pole: {e}"), "finite")),
        Ok(nonzero) => {
            let want = expect_zero.map(|z| !z).unwrap_or_else(|| lambda.is_none_or(|l| in_cone(l, d)));
            if nonzero != want {
                let show = |b: bool| if b { "nonzero" } else { "0" };
                report.push(Mismatch::new(d, show(nonzero), show(want)));
            }
        }
    };
    for d in degree_tuples(&quiver, cap) {
        visit(&d, None);
    }
    let outside = out_of_cone_samples(spec, samples, cap.max(2) + 2, seed);
    for d in &outside {
        visit(d, Some(true));
    }
    if lambda.is_some_and(|l| l.size() > 1) && outside.len() < samples {
        report.push(Mismatch::new("samples", outside.len(), samples));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(rows: &[&[u32]]) -> DegreeTuple {
        DegreeTuple::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn two_box_row() {
        // λ = (2): node 1 holds box (1,2), node 2 holds box (1,1)
        let l = Partition::new([2]);
        assert!(in_cone(&l, &tuple(&[&[1], &[0]])));
        assert!(!in_cone(&l, &tuple(&[&[0], &[1]])));
    }

    #[test]
    fn square() {
        let l = Partition::new([2, 2]);
        // contents: (1,2)->1, (1,1)->2, (2,2)->2, (2,1)->3
        assert!(in_cone(&l, &tuple(&[&[1], &[0, 2], &[1]])));
        assert!(!in_cone(&l, &tuple(&[&[0], &[1, 0], &[0]])));
    }

    #[test]
    fn sampling_is_deterministic_and_outside() {
        let spec = VertexSpec::lambda(Partition::new([2, 2]), 3);
        let a = out_of_cone_samples(&spec, 20, 3, 7);
        assert_eq!(a, out_of_cone_samples(&spec, 20, 3, 7));
        assert_eq!(a.len(), 20);
        assert!(a.iter().all(|d| !in_cone(&spec.lambda, d)));
    }

    #[test]
    fn single_box_has_no_outside() {
        let spec = VertexSpec::lambda(Partition::new([1]), 3);
        assert!(out_of_cone_samples(&spec, 5, 3, 1).is_empty());
    }

    #[test]
    fn small_shapes_vanish_off_the_cone() {
        for l in [[2, 1], [2, 2], [3, 1]] {
            let spec = VertexSpec::lambda(Partition::new(l), 3);
            let r = check_cone_vanishing(&spec, 3, 50, 11);
            assert!(r.passed(), "{r:?}");
        }
        let r = check_cone_vanishing(&VertexSpec::dual(2, 4, 3, 0).unwrap(), 3, 50, 11);
        assert!(r.passed(), "{r:?}");
    }
}
