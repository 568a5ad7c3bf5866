//! The parameter map `κ` between the dual sides, the ratio coordinates
//! `r_i = a_{i+1}/a_i`, and the end-to-end checks of the duality.

pub mod checks;

use num_traits::One;

use crate::algebra::{AlgebraError, Caps, Monomial, RatFunc, Scalar, TruncatedSeries, Var};

pub use checks::{check_insertion, check_main, check_prform, check_vgrcoeff, check_vgrcoeff_upto, insertion_descendant, main_sides};

type Image = Option<(Scalar, Monomial)>;

fn mono(pairs: &[(Var, i32)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

/// `κ` for `T*Gr(k, n)`:
/// `z_i -> hbar^{e_i} r_i`, `hbar_dual -> q/hbar`, `u -> z (hbar/q)^k`,
/// where `e_i` is `-1` below `k`, `0` up to `n-k` and `1` from `n-k` on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KappaMap {
    pub k: usize,
    pub n: usize,
}

impl KappaMap {
    pub fn new(k: usize, n: usize) -> Result<KappaMap, AlgebraError> {
        crate::vertex::require_dual_range(k, n)?;
        Ok(KappaMap { k, n })
    }

    /// Power of `hbar` attached to `z_i`.
    pub fn hbar_shift(&self, i: usize) -> i32 {
        if i < self.k {
            -1
        } else if i < self.n - self.k {
            0
        } else {
            1
        }
    }

    pub fn image(&self, v: Var) -> Image {
        let one = Scalar::one();
        if v == Var::HBAR_DUAL {
            return Some((one, mono(&[(Var::Q, 1), (Var::HBAR, -1)])));
        }
        if v == Var::U {
            let k = self.k as i32;
            return Some((one, mono(&[(Var::Z, 1), (Var::HBAR, k), (Var::Q, -k)])));
        }
        match (v.group(), v.index()) {
            (crate::algebra::Group::Kahler, Some(i)) if v == Var::z(i) && i < self.n => {
                Some((one, mono(&[(Var::r(i), 1), (Var::HBAR, self.hbar_shift(i))])))
            }
            _ => None,
        }
    }

    /// The inverse substitution.
    pub fn preimage(&self, v: Var) -> Image {
        let one = Scalar::one();
        if v == Var::HBAR {
            return Some((one, mono(&[(Var::Q, 1), (Var::HBAR_DUAL, -1)])));
        }
        if v == Var::Z {
            return Some((one, mono(&[(Var::U, 1), (Var::HBAR_DUAL, self.k as i32)])));
        }
        match (v.group(), v.index()) {
            (crate::algebra::Group::Ratio, Some(i)) if i < self.n => {
                let e = -self.hbar_shift(i);
                Some((one, mono(&[(Var::z(i), 1), (Var::Q, e), (Var::HBAR_DUAL, -e)])))
            }
            _ => None,
        }
    }

    pub fn apply(&self, s: &TruncatedSeries, target: &Caps) -> Result<TruncatedSeries, AlgebraError> {
        s.substitute(|v| self.image(v), target)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> (Scalar, Monomial) {
        substitute_monomial(m, |v| self.image(v))
    }
}

fn substitute_monomial(m: &Monomial, rule: impl Fn(Var) -> Image) -> (Scalar, Monomial) {
    let mut c = Scalar::one();
    let mut out = Monomial::one();
    for (v, e) in m.iter() {
        match rule(v) {
            Some((s, img)) => {
                c *= crate::algebra::poly::pow_scalar(&s, e);
                out = out.mul(&img.pow(e));
            }
            None => out = out.mul(&Monomial::var_pow(v, e)),
        }
    }
    (c, out)
}

/// `κ(s)`, re-truncated at `target`.
pub fn kappa(s: &TruncatedSeries, k: usize, n: usize, target: &Caps) -> Result<TruncatedSeries, AlgebraError> {
    KappaMap::new(k, n)?.apply(s, target)
}

/// Ratio coordinates: `a_i -> r_1 ... r_{i-1}`. Exact on anything of
/// degree zero in the `a_i`.
pub struct RatioFrame;

impl RatioFrame {
    pub fn image(v: Var) -> Image {
        match v.index() {
            Some(i) if v == Var::a(i) => Some((Scalar::one(), Monomial::from_pairs((1..i).map(|l| (Var::r(l), 1))))),
            _ => None,
        }
    }

    /// `a_j/a_i` in ratio coordinates.
    pub fn a_ratio(j: usize, i: usize) -> Monomial {
        if j >= i {
            Monomial::from_pairs((i..j).map(|l| (Var::r(l), 1)))
        } else {
            RatioFrame::a_ratio(i, j).inv()
        }
    }

    pub fn ratfunc(f: &RatFunc) -> Result<RatFunc, AlgebraError> {
        f.try_substitute(RatioFrame::image)
    }

    pub fn series(s: &TruncatedSeries, target: &Caps) -> Result<TruncatedSeries, AlgebraError> {
        s.substitute(RatioFrame::image, target)
    }
}

/// Power of `q` that `prod_m p_m^{d_m}` puts on `r_l`: the shift `p_m`
/// sends `a_{n-k+m}` to `q a_{n-k+m}`.
pub fn shift_exponent(k: usize, n: usize, d: &[u32], l: usize) -> i32 {
    let at = |m: isize| -> i32 {
        if m >= 1 && (m as usize) <= k {
            d[m as usize - 1] as i32
        } else {
            0
        }
    };
    let m = l as isize - (n - k) as isize;
    at(m + 1) - at(m)
}

/// `r_l -> q^{s_l} r_l` for the shift `d`.
pub fn shift_rule(k: usize, n: usize, d: &[u32]) -> impl Fn(Var) -> Image + '_ {
    move |v| match v.index() {
        Some(l) if v == Var::r(l) => {
            let s = shift_exponent(k, n, d, l);
            (s != 0).then(|| (Scalar::one(), mono(&[(Var::r(l), 1), (Var::Q, s)])))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Group;
    use crate::vertex::{prefactor_dual, prefactor_x};

    #[test]
    fn kappa_examples() {
        let m = KappaMap::new(1, 2).unwrap();
        assert_eq!(m.apply_monomial(&Monomial::var(Var::z(1))).1, mono(&[(Var::HBAR, 1), (Var::r(1), 1)]));
        assert_eq!(m.apply_monomial(&Monomial::var_pow(Var::HBAR_DUAL, 2)).1, mono(&[(Var::Q, 2), (Var::HBAR, -2)]));
        let m = KappaMap::new(2, 5).unwrap();
        let got = m.apply_monomial(&mono(&[(Var::U, 1), (Var::HBAR_DUAL, 1)])).1;
        assert_eq!(got, mono(&[(Var::Z, 1), (Var::HBAR, 1), (Var::Q, -1)]));
    }

    #[test]
    fn kappa_round_trip() {
        for (k, n) in [(1, 2), (1, 3), (2, 4), (2, 5), (3, 7)] {
            let m = KappaMap::new(k, n).unwrap();
            let mut gens = vec![Var::U, Var::HBAR_DUAL, Var::Q];
            gens.extend((1..n).map(Var::z));
            for g in gens {
                let (c, img) = m.apply_monomial(&Monomial::var(g));
                let (c2, back) = substitute_monomial(&img, |v| m.preimage(v));
                assert!((c * c2).is_one());
                assert_eq!(back, Monomial::var(g), "{k},{n}");
            }
        }
    }

    #[test]
    fn kappa_rejects_wide_grassmannians() {
        assert!(KappaMap::new(3, 5).is_err());
    }

    #[test]
    fn prefactors_match_under_kappa() {
        for k in 1..=2 {
            let src = Caps::new().with(Group::Spectral, 3);
            let target = Caps::new().with(Group::Kahler, 3);
            let got = KappaMap { k, n: 2 * k }.apply(&prefactor_dual(k, &src).unwrap(), &target).unwrap();
            assert_eq!(got, prefactor_x(k, &target).unwrap());
        }
    }

    #[test]
    fn ratio_frame() {
        assert_eq!(RatioFrame::a_ratio(4, 2), mono(&[(Var::r(2), 1), (Var::r(3), 1)]));
        assert_eq!(RatioFrame::a_ratio(1, 3), mono(&[(Var::r(1), -1), (Var::r(2), -1)]));
        let f = RatFunc::monomial(mono(&[(Var::a(3), 1), (Var::a(1), -1)]));
        assert_eq!(RatioFrame::ratfunc(&f).unwrap(), RatFunc::monomial(RatioFrame::a_ratio(3, 1)));
    }

    #[test]
    fn shifts_move_neighbouring_ratios() {
        // k=2, n=4: p_1 scales a_3, so r_2 -> q r_2 and r_3 -> r_3/q
        assert_eq!(shift_exponent(2, 4, &[1, 0], 2), 1);
        assert_eq!(shift_exponent(2, 4, &[1, 0], 3), -1);
        assert_eq!(shift_exponent(2, 4, &[1, 0], 1), 0);
        assert_eq!(shift_exponent(2, 4, &[0, 2], 3), 2);
    }
}
