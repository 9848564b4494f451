//! Images of braid words in TL3 and TL4 under s_i -> A + A^-1 e_i.

use anick::groebner::complete;
use anick::tlmap::{braid_image, tl, BraidWord, LoopParameter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [3, 4] {
        let gb = complete(&tl(n, LoopParameter::Kauffman)?, 6)?;
        println!("TL{n} with tau = -A^2 - A^-2");
        for text in ["s1", "s1'", "s1 s1'", "s1 s2 s1", "s2 s1 s2", "s1 s1 s1"] {
            let w = BraidWord::parse(text, n)?;
            println!("  {text:<10} |-> {}", braid_image(&w, &gb)?.display(gb.alphabet()));
        }
    }
    Ok(())
}
