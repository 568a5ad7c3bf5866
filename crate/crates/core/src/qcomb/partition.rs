use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{AlgebraError, Monomial, Scalar, Var};

/// A box `(row, column)`, both 1-based.
pub type Cell = (u32, u32);

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Partition {
        let mut v: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// Rectangle with `rows` rows of length `cols`.
    pub fn rectangle(cols: u32, rows: u32) -> Partition {
        Partition::new(std::iter::repeat_n(cols, rows as usize))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `λ_i`, 1-based, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.0 >= 1 && cell.1 >= 1 && cell.1 <= self.part(cell.0 as usize)
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &p) in self.0.iter().enumerate() {
            for j in 1..=p {
                out.push((i as u32 + 1, j));
            }
        }
        out
    }

    fn check(&self, cell: Cell) -> Result<(), AlgebraError> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(AlgebraError::CellOutOfRange(format!("{cell:?} not in {self}")))
        }
    }

    /// `c(i, j) = i - j + λ_1`; the smallest content is 1.
    pub fn content(&self, cell: Cell) -> Result<u32, AlgebraError> {
        self.check(cell)?;
        Ok(cell.0 + self.part(1) - cell.1)
    }

    /// The box itself, everything to its right and everything below it.
    pub fn hook(&self, cell: Cell) -> Result<Vec<Cell>, AlgebraError> {
        self.check(cell)?;
        let (i, j) = cell;
        let mut out: Vec<Cell> = (j..=self.part(i as usize)).map(|m| (i, m)).collect();
        let mut m = i + 1;
        while self.part(m as usize) >= j {
            out.push((m, j));
            m += 1;
        }
        Ok(out)
    }

    pub fn conjugate(&self) -> Partition {
        Partition::new((1..=self.part(1)).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32))
    }

    /// `μ ≤ λ` in dominance order (same size required).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for i in 1..=self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    /// Inclusion of Young diagrams.
    pub fn fits_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && (1..=self.len()).all(|i| self.part(i) <= other.part(i))
    }

    /// `n(λ) = sum (i-1) λ_i`.
    pub fn n_statistic(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, p)| i as u32 * p).sum()
    }

    /// Multiplicity of each part size, indexed by size.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.part(1) as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    /// `z_λ = prod_n n^{m_n} m_n!`.
    pub fn z_factor(&self) -> Scalar {
        let mut z = BigInt::one();
        for (n, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for i in 1..=m {
                z *= BigInt::from(n) * BigInt::from(i);
            }
        }
        Scalar::from_integer(z)
    }

    /// All partitions of `n`, in descending lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions of `n` with at most `len` parts.
    pub fn all_with_length(n: u32, len: usize) -> Vec<Partition> {
        Partition::all(n).into_iter().filter(|p| p.len() <= len).collect()
    }

    /// Every partition whose diagram fits in `self`.
    pub fn subdiagrams(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        fn rec(outer: &Partition, i: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i > outer.len() {
                out.push(Partition::new(cur.iter().copied()));
                return;
            }
            for p in 0..=max.min(outer.part(i)) {
                cur.push(p);
                rec(outer, i + 1, p, cur, out);
                cur.pop();
            }
        }
        rec(self, 1, self.part(1), &mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl FromStr for Partition {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Partition, AlgebraError> {
        let s = s.trim();
        if s.is_empty() || s == "0" || s == "()" || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|e| AlgebraError::Parse(format!("partition `{s}`: {e}")))?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(AlgebraError::Parse(format!("partition `{s}` is not weakly decreasing")));
        }
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Dimension and framing vectors of an A-type quiver, nodes `1..=len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverA {
    v: Vec<u32>,
    w: Vec<u32>,
}

impl QuiverA {
    pub fn new(v: Vec<u32>, w: Vec<u32>) -> QuiverA {
        assert_eq!(v.len(), w.len());
        QuiverA { v, w }
    }

    /// `v_i` = number of boxes of content `i`, one framing at `λ_1`.
    pub fn for_lambda(lambda: &Partition) -> QuiverA {
        if lambda.is_empty() {
            return QuiverA::new(Vec::new(), Vec::new());
        }
        let nodes = (lambda.part(1) as usize + lambda.len()).saturating_sub(1);
        let mut v = vec![0u32; nodes];
        for cell in lambda.cells() {
            let c = lambda.content(cell).unwrap();
            v[c as usize - 1] += 1;
        }
        let mut w = vec![0u32; nodes];
        w[lambda.part(1) as usize - 1] = 1;
        QuiverA { v, w }
    }

    /// The dual of `T*Gr(k, n)`: `v_i = min(i, k, n-i)`, framings at `k`
    /// and `n-k`.
    pub fn for_dual(k: u32, n: u32) -> QuiverA {
        let nodes = n.saturating_sub(1) as usize;
        let v = (1..=nodes as u32).map(|i| i.min(k).min(n - i)).collect();
        let mut w = vec![0u32; nodes];
        if k >= 1 && (k as usize) <= nodes {
            w[k as usize - 1] += 1;
        }
        if n > k && ((n - k) as usize) <= nodes && n - k >= 1 {
            w[(n - k) as usize - 1] += 1;
        }
        QuiverA { v, w }
    }

    pub fn nodes(&self) -> usize {
        self.v.len()
    }

    /// `v_i`, zero outside `1..=nodes`.
    pub fn v(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.v.get(i - 1).copied().unwrap_or(0)
    }

    pub fn w(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.w.get(i - 1).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[u32] {
        &self.v
    }

    pub fn framings(&self) -> &[u32] {
        &self.w
    }
}

/// The shifted Kähler monomial `z_□ = prod_{hook} ẑ_{c(□')}` with
/// `ẑ_i = (hbar_dual/q)^{σ(i)} z_i`, `σ(i) = v_{i-1} - v_i`, plus one at
/// the framing node `λ_1`.
pub fn zbox(lambda: &Partition, cell: Cell) -> Result<Monomial, AlgebraError> {
    let quiver = QuiverA::for_lambda(lambda);
    let mut pairs = Vec::new();
    for b in lambda.hook(cell)? {
        let c = lambda.content(b)? as usize;
        let mut sigma = quiver.v(c - 1) as i32 - quiver.v(c) as i32;
        if c == lambda.part(1) as usize {
            sigma += 1;
        }
        pairs.push((Var::z(c), 1));
        pairs.push((Var::HBAR_DUAL, sigma));
        pairs.push((Var::Q, -sigma));
    }
    Ok(Monomial::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn contents() {
        assert_eq!(p("2,2").content((1, 2)).unwrap(), 1);
        assert_eq!(p("2,2").content((2, 1)).unwrap(), 3);
        assert_eq!(p("1").content((1, 1)).unwrap(), 1);
        assert!(p("1").content((2, 1)).is_err());
    }

    #[test]
    fn hooks() {
        assert_eq!(p("2,2").hook((1, 1)).unwrap(), vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(p("2,2").hook((2, 2)).unwrap(), vec![(2, 2)]);
        assert_eq!(p("3").hook((1, 2)).unwrap(), vec![(1, 2), (1, 3)]);
        assert!(p("3").hook((2, 1)).is_err());
    }

    #[test]
    fn zboxes() {
        assert_eq!(zbox(&p("1"), (1, 1)).unwrap(), Monomial::var(Var::z(1)));
        let want = Monomial::from_pairs([(Var::z(1), 1), (Var::z(2), 1), (Var::z(3), 1)]);
        assert_eq!(zbox(&p("2,2"), (1, 1)).unwrap(), want);
        assert_eq!(zbox(&p("2,2"), (2, 2)).unwrap(), Monomial::var(Var::z(2)));
    }

    #[test]
    fn rectangle_contents_match_dual_quiver() {
        for n in 2..=6u32 {
            for k in 1..=n / 2 {
                let lambda = Partition::rectangle(k, n - k);
                assert_eq!(QuiverA::for_lambda(&lambda).dims(), QuiverA::for_dual(k, n).dims(), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("3,3,1").to_string(), "3,3,1");
        assert!(p("").is_empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn dominance_and_enumeration() {
        assert_eq!(Partition::all(5).len(), 7);
        assert!(p("2,2").dominated_by(&p("3,1")));
        assert!(!p("3,1,1,1").dominated_by(&p("2,2,2")));
        assert!(!p("2,2,2").dominated_by(&p("3,1,1,1")));
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
        assert_eq!(p("2,2,1").z_factor(), Scalar::from_integer(8.into()));
        assert_eq!(p("2,1").subdiagrams().len(), 5);
    }
}
