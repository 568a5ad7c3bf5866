//! Macdonald polynomials in the monomial basis, and their orthogonality.

use symdual::macdonald::{check_orthogonality, check_qbinomial, inner, macdonald_p, macdonald_p_lambda};
use symdual::qcomb::Partition;

fn main() -> Result<(), symdual::Error> {
    for mu in ["1", "2", "1,1", "2,1"] {
        let mu: Partition = mu.parse()?;
        println!("P_{mu}(x1, x2, x3) = {}", macdonald_p(&mu, 3)?);
    }
    let a = macdonald_p_lambda(&"2,1".parse()?);
    let b = macdonald_p_lambda(&"3".parse()?);
    println!("<P_21, P_3> = {}", inner(&a, &b));
    println!("{}", check_orthogonality(4, 3));
    println!("{}", check_qbinomial(2, 4));
    Ok(())
}
