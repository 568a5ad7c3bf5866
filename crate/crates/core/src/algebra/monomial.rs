use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::algebra::var::{Group, Var};

/// A Laurent monomial: sorted `(variable, exponent)` pairs, zero exponents
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, i32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Monomial {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Monomial {
        let mut v: SmallVec<[(Var, i32); 4]> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, i32); 4]> = SmallVec::new();
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0
            .binary_search_by_key(&v, |p| p.0)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.exp(v) != 0
    }

    /// Sum of all exponents.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    pub fn group_degree(&self, g: Group) -> i64 {
        self.0
            .iter()
            .filter(|p| p.0.group() == g)
            .map(|p| p.1 as i64)
            .sum()
    }

    pub fn has_group(&self, g: Group) -> bool {
        self.0.iter().any(|p| p.0.group() == g)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|p| p.1 > 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out: SmallVec<[(Var, i32); 4]> = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, x)| (v, x * e)).collect())
    }

    /// Componentwise minimum of exponents (missing variables count as 0).
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut pairs: Vec<(Var, i32)> = Vec::new();
        for &(v, e) in self.0.iter() {
            let m = e.min(other.exp(v));
            pairs.push((v, m));
        }
        for &(v, e) in other.0.iter() {
            if !self.contains(v) {
                pairs.push((v, e.min(0)));
            }
        }
        Monomial::from_pairs(pairs)
    }

    /// Splits into the part whose variables satisfy `pred` and the rest.
    pub fn split<F: Fn(Var) -> bool>(&self, pred: F) -> (Monomial, Monomial) {
        let mut yes = Monomial::one();
        let mut no = Monomial::one();
        for &p in self.0.iter() {
            if pred(p.0) {
                yes.0.push(p);
            } else {
                no.0.push(p);
            }
        }
        (yes, no)
    }

    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect())
    }

    /// Graded lexicographic comparison: total degree first, then the
    /// exponent of the lowest-id variable where the two differ.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            let next_a = a.get(i);
            let next_b = b.get(j);
            match (next_a, next_b) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grlex_cmp(other)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(Var, i32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn multiplication_adds_exponents_and_drops_zeros() {
        let a = m(&[(Var::Q, 2), (Var::x(1), -1)]);
        let b = m(&[(Var::x(1), 1), (Var::T, 3)]);
        assert_eq!(a.mul(&b), m(&[(Var::Q, 2), (Var::T, 3)]));
        assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn grlex_orders_by_degree_then_lowest_variable() {
        let q2 = m(&[(Var::Q, 2)]);
        let qx = m(&[(Var::Q, 1), (Var::x(1), 1)]);
        let x2 = m(&[(Var::x(1), 2)]);
        assert!(q2 > qx && qx > x2);
        assert!(m(&[(Var::x(1), 1)]) > Monomial::one());
        assert!(m(&[(Var::Q, -1)]) < Monomial::one());
    }

    #[test]
    fn group_degree_counts_only_that_group() {
        let mono = m(&[(Var::Q, 5), (Var::r(1), 2), (Var::r(3), -1), (Var::Z, 1)]);
        assert_eq!(mono.group_degree(Group::Ratio), 1);
        assert_eq!(mono.group_degree(Group::Kahler), 1);
        assert_eq!(mono.group_degree(Group::Parameter), 5);
    }

    #[test]
    fn meet_is_componentwise() {
        let a = m(&[(Var::Q, 2), (Var::T, -1)]);
        let b = m(&[(Var::Q, 1), (Var::x(1), 3)]);
        assert_eq!(a.meet(&b), m(&[(Var::Q, 1), (Var::T, -1)]));
    }
}
