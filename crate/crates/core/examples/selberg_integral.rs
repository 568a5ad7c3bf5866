//! The q-Selberg evaluation, and its empty-partition case as a vertex of `T*Gr(k, k)`.

use symdual::qcomb::Partition;
use symdual::qdiff::{qselberg_check, qselberg_sides, ParamSlot};
use symdual::vertex::check_selberg_point;

fn main() -> Result<(), symdual::Error> {
    let (integral, closed) = qselberg_sides(&Partition::new([1]), 2, 2, ParamSlot::QOverT)?;
    println!("q-integral  = {integral}");
    println!("closed form = {closed}");
    println!("{}", qselberg_check(&Partition::new([2, 1]), 2, 2));
    println!("{}", check_selberg_point(2, 3));
    Ok(())
}
