//! Vertex functions of `T*Gr(k, n)`, its dual, and `X_λ`.

use symdual::algebra::{Caps, Group};
use symdual::qcomb::Partition;
use symdual::vertex::{check_verpoint, vertex_product, VertexSpec};

fn main() -> Result<(), symdual::Error> {
    let x = VertexSpec::x(1, 2, 2)?;
    println!("{x}: {}", x.generate()?);
    let dual = VertexSpec::dual(1, 2, 2, 1)?;
    println!("{dual}: {}", dual.generate()?);

    let lambda = Partition::new([2, 1]);
    let spec = VertexSpec::lambda(lambda.clone(), 2);
    println!("{spec}: {}", spec.generate()?);
    println!("product: {}", vertex_product(&lambda, &Caps::new().with(Group::Kahler, 2))?);
    println!("{}", check_verpoint(&Partition::new([2, 2]), 3));
    Ok(())
}
