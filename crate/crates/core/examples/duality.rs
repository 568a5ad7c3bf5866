//! Both sides of the duality for `T*Gr(1, 3)`, and the check for a few cases.

use symdual::duality::{check_main, check_prform, main_sides};

fn main() -> Result<(), symdual::Error> {
    let (left, right) = main_sides(1, 3, 1, 2)?;
    println!("left  = {left}");
    println!("right = {right}");
    for (k, n) in [(1, 2), (1, 3), (2, 4)] {
        println!("{}", check_prform(k, n, 3));
        println!("{}", check_main(k, n, 2, 2));
    }
    Ok(())
}
