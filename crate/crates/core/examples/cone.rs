//! Summands outside the cone of reverse plane partitions vanish exactly.

use symdual::qcomb::Partition;
use symdual::vertex::{check_cone_vanishing, in_cone, out_of_cone_samples, summand_factors, VertexSpec};

fn main() -> Result<(), symdual::Error> {
    let spec = VertexSpec::lambda(Partition::new([2, 2]), 3);
    for d in out_of_cone_samples(&spec, 5, 3, 42) {
        let value = summand_factors(&spec, &d).evaluate()?;
        println!("{d} in cone: {}, summand zero: {}", in_cone(&spec.lambda, &d), value.is_zero());
    }
    println!("{}", check_cone_vanishing(&spec, 3, 50, 42));
    println!("{}", check_cone_vanishing(&VertexSpec::dual(2, 5, 3, 0)?, 3, 50, 42));
    Ok(())
}
