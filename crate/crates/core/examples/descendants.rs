//! Descendant insertions: the dual vertex reduces to the point variety,
//! and `D_d` inserts a one-row Macdonald polynomial.

use symdual::duality::{check_insertion, check_vgrcoeff_upto};
use symdual::vertex::check_reducetopoint;

fn main() {
    for (k, n) in [(1, 2), (1, 3), (2, 4)] {
        println!("{}", check_reducetopoint(k, n, 2, 2));
        println!("{}", check_vgrcoeff_upto(k, n, 2));
        for d in 0..=2 {
            println!("{}", check_insertion(k, n, d, 3));
        }
    }
}
