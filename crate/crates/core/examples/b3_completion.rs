//! The braid monoid on s2 < s1 has an infinite Groebner basis; completion to
//! a degree cap shows the first members of the family.

use anick::groebner::complete;
use anick::tlmap::b3_monoid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b3 = b3_monoid()?;
    for cap in [6, 8, 10] {
        let gb = complete(&b3, cap)?;
        println!("cap {cap}: complete = {}, next degree = {:?}", gb.is_complete(), gb.pending_degree());
        for g in gb.elements() {
            println!("  {}", g.display(gb.alphabet()));
        }
    }
    Ok(())
}
