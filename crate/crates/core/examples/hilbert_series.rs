//! Normal-word counts by length for TL3, TL4 and the braid monoid.

use anick::groebner::{complete, normal_word_series};
use anick::tlmap::{b3_monoid, tl, LoopParameter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [3, 4] {
        let gb = complete(&tl(n, LoopParameter::Tau)?, 8)?;
        let s = normal_word_series(&gb, 8);
        println!("TL{n}: {:?}, dimension {} (complete basis: {})", s.coefficients, s.total(), gb.is_complete());
    }
    let gb = complete(&b3_monoid()?, 10)?;
    println!("B3 monoid: {:?}", normal_word_series(&gb, 10).coefficients);
    Ok(())
}
