//! The operators `D_d` act diagonally on `P_μ(x; q, q/t)`.

use symdual::qcomb::Partition;
use symdual::qdiff::{check_commute, check_diagonal, eigenvalue, op_d};

fn main() -> Result<(), symdual::Error> {
    println!("D_1 in two variables:\n  {}", op_d(1, 2)?);
    let mu = Partition::new([2, 1]);
    for d in 1..=2 {
        println!("eigenvalue of D_{d} on P_{mu}: {}", eigenvalue(&mu, d, 2)?);
        println!("{}", check_diagonal(&mu, d, 2));
    }
    println!("{}", check_commute(2, 2));
    Ok(())
}
