//! Degree tuples `d_{i,j}` and the Pochhammer factors of a single summand.

use std::fmt;

use num_traits::One;

use crate::algebra::{Monomial, Scalar, Var};
use crate::qcomb::{QFactorList, QuiverA};

/// Degrees `d_{i,j}`, `i` a quiver node and `1 <= j <= v_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeTuple {
    d: Vec<Vec<u32>>,
}

impl DegreeTuple {
    pub fn zeros(quiver: &QuiverA) -> DegreeTuple {
        DegreeTuple { d: quiver.dims().iter().map(|&v| vec![0; v as usize]).collect() }
    }

    /// Builds from per-node rows; row `i-1` holds node `i`.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> DegreeTuple {
        DegreeTuple { d: rows }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.d
    }

    /// `d_{i,j}`, zero outside the quiver.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i == 0 || j == 0 {
            return 0;
        }
        self.d.get(i - 1).and_then(|r| r.get(j - 1)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.d[i - 1][j - 1] = value;
    }

    pub fn node_total(&self, i: usize) -> u32 {
        self.d.get(i.wrapping_sub(1)).map(|r| r.iter().sum()).unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.d.iter().flatten().sum()
    }

    /// `prod_i z_i^{sum_j d_{i,j}}`.
    pub fn kahler_monomial(&self) -> Monomial {
        Monomial::from_pairs((1..=self.d.len()).map(|i| (Var::z(i), self.node_total(i) as i32)))
    }

    fn slots(&self) -> Vec<(usize, usize)> {
        self.d
            .iter()
            .enumerate()
            .flat_map(|(i, r)| (1..=r.len()).map(move |j| (i + 1, j)))
            .collect()
    }
}

impl fmt::Display for DegreeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .d
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join("|"))
    }
}

/// Every tuple on `quiver` with total degree at most `cap`, in a fixed order.
pub fn degree_tuples(quiver: &QuiverA, cap: u32) -> Vec<DegreeTuple> {
    fn rec(slots: &[(usize, usize)], left: u32, cur: &mut DegreeTuple, out: &mut Vec<DegreeTuple>) {
        let Some((&(i, j), rest)) = slots.split_first() else {
            out.push(cur.clone());
            return;
        };
        for x in 0..=left {
            cur.set(i, j, x);
            rec(rest, left - x, cur, out);
        }
        cur.set(i, j, 0);
    }
    let mut cur = DegreeTuple::zeros(quiver);
    let slots = cur.slots();
    let mut out = Vec::new();
    rec(&slots, cap, &mut cur, &mut out);
    out
}

/// `hbar^e q^f`.
fn hq(hbar: Var, e: i32, f: i32) -> Monomial {
    Monomial::from_pairs([(hbar, e), (Var::Q, f)])
}

fn ratio(list: &mut QFactorList, num: Monomial, den: Monomial, n: i32) {
    let one = Scalar::one();
    list.mul_qpoch(&one, &num, n);
    list.div_qpoch(&one, &den, n);
}

/// Factors of one summand of the point-variety vertex: a framing block at
/// `framing`, edge blocks between neighbouring nodes and a diagonal block
/// at every node, all written in the parameter `hbar`.
pub fn quiver_factors(quiver: &QuiverA, framing: usize, d: &DegreeTuple, hbar: Var) -> QFactorList {
    let mut f = QFactorList::new();
    let v = |i: usize| quiver.v(i) as usize;
    for j in 1..=v(framing) {
        let dj = d.get(framing, j) as i32;
        ratio(&mut f, hq(hbar, j as i32, 0), hq(hbar, j as i32 - 1, 1), dj);
    }
    for i in 1..quiver.nodes() {
        // edges from the framing node onward carry one more power of hbar
        let s = if i < framing { 0 } else { 1 };
        for j in 1..=v(i) {
            for l in 1..=v(i + 1) {
                let m = d.get(i + 1, l) as i32 - d.get(i, j) as i32;
                let e = l as i32 - j as i32;
                ratio(&mut f, hq(hbar, e + s, 0), hq(hbar, e + s - 1, 1), m);
            }
        }
    }
    for i in 1..=quiver.nodes() {
        for j in 1..=v(i) {
            for l in 1..=v(i) {
                let m = d.get(i, l) as i32 - d.get(i, j) as i32;
                let e = l as i32 - j as i32;
                ratio(&mut f, hq(hbar, e, 1), hq(hbar, e + 1, 0), m);
            }
        }
    }
    f
}

/// `prod_{j <= v_node} (hbar^j u)_{d_{node,j}} / (q hbar^{j-1} u)_{d_{node,j}}`.
pub fn spectral_block(quiver: &QuiverA, node: usize, d: &DegreeTuple, hbar: Var) -> QFactorList {
    let mut f = QFactorList::new();
    let u = Monomial::var(Var::U);
    for j in 1..=quiver.v(node) as usize {
        let dj = d.get(node, j) as i32;
        ratio(&mut f, hq(hbar, j as i32, 0).mul(&u), hq(hbar, j as i32 - 1, 1).mul(&u), dj);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcomb::Partition;

    #[test]
    fn tuple_count_is_a_binomial() {
        let quiver = QuiverA::for_lambda(&Partition::new([2, 2]));
        // 4 slots, total <= 3: C(7, 4)
        assert_eq!(degree_tuples(&quiver, 3).len(), 35);
        assert_eq!(degree_tuples(&quiver, 0), vec![DegreeTuple::zeros(&quiver)]);
    }

    #[test]
    fn kahler_monomial_sums_each_node() {
        let t = DegreeTuple::from_rows(vec![vec![1], vec![0, 2], vec![1]]);
        assert_eq!(t.kahler_monomial().to_string(), "z1*z2^2*z3");
        assert_eq!(t.to_string(), "[1|0,2|1]");
    }

    #[test]
    fn out_of_cone_tuple_vanishes() {
        let quiver = QuiverA::for_lambda(&Partition::new([2]));
        // node 2 carries the corner box, which cannot exceed node 1
        let d = DegreeTuple::from_rows(vec![vec![0], vec![1]]);
        assert!(quiver_factors(&quiver, 2, &d, Var::HBAR_DUAL).evaluate().unwrap().is_zero());
    }
}
