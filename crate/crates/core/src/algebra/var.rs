//! Registered symbolic variables.
//!
//! Every variable the library knows about has a fixed numeric id, so the
//! monomial order (and therefore every canonical serialization) is the same
//! in every process. Indexed families (`z_i`, `r_i`, `a_i`, `x_i`) occupy
//! disjoint id ranges.

use std::fmt;

use crate::algebra::AlgebraError;

/// Role a variable plays inside a truncated series.
///
/// Capped groups become series variables; every other variable is part of
/// the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Group {
    /// `q`, `hbar`, `hbar_dual`, `t`.
    Parameter,
    /// Kähler parameters `z`, `z_1 .. z_{n-1}`.
    Kahler,
    /// Auxiliary expansion variables `u` and `y`.
    Spectral,
    /// Ratio coordinates `r_i = a_{i+1}/a_i`.
    Ratio,
    /// Equivariant `a_i` and Chern-root variables `x_i`.
    Generic,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Parameter => "parameter",
            Group::Kahler => "kahler",
            Group::Spectral => "spectral",
            Group::Ratio => "ratio",
            Group::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Option<Group> {
        Some(match s {
            "parameter" => Group::Parameter,
            "kahler" => Group::Kahler,
            "spectral" => Group::Spectral,
            "ratio" => Group::Ratio,
            "generic" => Group::Generic,
            _ => return None,
        })
    }
}

const Z_BASE: u16 = 100;
const R_BASE: u16 = 200;
const A_BASE: u16 = 300;
const X_BASE: u16 = 400;
const FAMILY_LEN: u16 = 99;

/// A registered variable. Ordering follows the numeric id.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u16);

impl Var {
    pub const Q: Var = Var(0);
    pub const HBAR: Var = Var(1);
    pub const HBAR_DUAL: Var = Var(2);
    pub const T: Var = Var(3);
    pub const Y: Var = Var(4);
    pub const U: Var = Var(5);
    pub const Z: Var = Var(6);

    fn indexed(base: u16, i: usize) -> Var {
        assert!(
            i >= 1 && i <= FAMILY_LEN as usize,
            "variable index {i} out of range 1..={FAMILY_LEN}"
        );
        Var(base + i as u16)
    }

    /// Kähler parameter `z_i` of the dual quiver.
    pub fn z(i: usize) -> Var {
        Var::indexed(Z_BASE, i)
    }

    /// Ratio coordinate `r_i = a_{i+1}/a_i`.
    pub fn r(i: usize) -> Var {
        Var::indexed(R_BASE, i)
    }

    /// Equivariant parameter `a_i`.
    pub fn a(i: usize) -> Var {
        Var::indexed(A_BASE, i)
    }

    /// Generic symmetric-function variable `x_i`.
    pub fn x(i: usize) -> Var {
        Var::indexed(X_BASE, i)
    }

    pub fn id(self) -> u16 {
        self.0
    }

    /// Family index for `z_i`, `r_i`, `a_i`, `x_i`; `None` for scalars.
    pub fn index(self) -> Option<usize> {
        match self.0 {
            id if id > Z_BASE && id < R_BASE => Some((id - Z_BASE) as usize),
            id if id > R_BASE && id < A_BASE => Some((id - R_BASE) as usize),
            id if id > A_BASE && id < X_BASE => Some((id - A_BASE) as usize),
            id if id > X_BASE => Some((id - X_BASE) as usize),
            _ => None,
        }
    }

    pub fn group(self) -> Group {
        match self.0 {
            0..=3 => Group::Parameter,
            4 | 5 => Group::Spectral,
            6 => Group::Kahler,
            id if id > Z_BASE && id < R_BASE => Group::Kahler,
            id if id > R_BASE && id < A_BASE => Group::Ratio,
            _ => Group::Generic,
        }
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "q".into(),
            1 => "hbar".into(),
            2 => "hbar_dual".into(),
            3 => "t".into(),
            4 => "y".into(),
            5 => "u".into(),
            6 => "z".into(),
            id if id > Z_BASE && id < R_BASE => format!("z{}", id - Z_BASE),
            id if id > R_BASE && id < A_BASE => format!("r{}", id - R_BASE),
            id if id > A_BASE && id < X_BASE => format!("a{}", id - A_BASE),
            id => format!("x{}", id - X_BASE),
        }
    }

    pub fn parse(name: &str) -> Result<Var, AlgebraError> {
        let fixed = match name {
            "q" => Some(Var::Q),
            "hbar" => Some(Var::HBAR),
            "hbar_dual" => Some(Var::HBAR_DUAL),
            "t" => Some(Var::T),
            "y" => Some(Var::Y),
            "u" => Some(Var::U),
            "z" => Some(Var::Z),
            _ => None,
        };
        if let Some(v) = fixed {
            return Ok(v);
        }
        let unknown = || AlgebraError::Parse(format!("unknown variable `{name}`"));
        let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
        let i: usize = tail.parse().map_err(|_| unknown())?;
        if i == 0 || i > FAMILY_LEN as usize || tail.starts_with('0') {
            return Err(unknown());
        }
        match head {
            "z" => Ok(Var::z(i)),
            "r" => Ok(Var::r(i)),
            "a" => Ok(Var::a(i)),
            "x" => Ok(Var::x(i)),
            _ => Err(unknown()),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        let vars = [
            Var::Q,
            Var::HBAR,
            Var::HBAR_DUAL,
            Var::T,
            Var::Y,
            Var::U,
            Var::Z,
            Var::z(1),
            Var::z(17),
            Var::r(3),
            Var::a(9),
            Var::x(2),
        ];
        for v in vars {
            assert_eq!(Var::parse(&v.name()).unwrap(), v);
        }
    }

    #[test]
    fn groups_are_fixed() {
        assert_eq!(Var::Q.group(), Group::Parameter);
        assert_eq!(Var::HBAR_DUAL.group(), Group::Parameter);
        assert_eq!(Var::U.group(), Group::Spectral);
        assert_eq!(Var::z(4).group(), Group::Kahler);
        assert_eq!(Var::Z.group(), Group::Kahler);
        assert_eq!(Var::r(1).group(), Group::Ratio);
        assert_eq!(Var::a(1).group(), Group::Generic);
        assert_eq!(Var::x(3).group(), Group::Generic);
        assert_eq!(Var::r(5).index(), Some(5));
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(Var::parse("w").is_err());
        assert!(Var::parse("z0").is_err());
        assert!(Var::parse("z01").is_err());
        assert!(Var::parse("b2").is_err());
    }
}
