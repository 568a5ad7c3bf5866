//! Exact rational functions and truncated series: parse, multiply, expand.

use num_traits::One;
use symdual::algebra::text::parse_expr;
use symdual::algebra::{series_expand, Caps, Group, Monomial, Scalar, Var};
use symdual::qcomb::{phi_inverse, phi_truncated};

fn main() -> Result<(), symdual::Error> {
    let f = parse_expr("(1 - hbar*z)/(1 - q*z)")?;
    let caps = Caps::new().with(Group::Kahler, 4);
    println!("f = {f}");
    println!("f to z^4 = {}", series_expand(&f, &caps)?);

    // φ(z) · 1/φ(z) = 1, exactly
    let z = Monomial::var(Var::Z);
    let phi = phi_truncated(&Scalar::one(), &z, &caps)?;
    let inv = phi_inverse(&Scalar::one(), &z, &caps)?;
    println!("phi(z) = {phi}");
    println!("phi(z)/phi(z) = {}", phi.mul(&inv));
    Ok(())
}
