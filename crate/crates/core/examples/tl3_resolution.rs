//! The differentials d0..d3 of Anick's resolution for TL3, with the complex
//! and exactness checks.

use anick::coeff::rat;
use anick::groebner::complete;
use anick::resolution::Resolution;
use anick::tlmap::{preset, PresetId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gb = complete(&preset(PresetId::Tl(3))?, 6)?;
    let res = Resolution::build(&gb, 3)?;
    for t in res.export() {
        for e in t.entries {
            println!("d{}({} ⊗ 1) = {}", t.level, e.chain, e.value);
        }
    }
    println!("is a complex: {}", res.check_complex(3)?.is_complex);
    for e in res.check_exactness(&rat(3, 2))? {
        println!(
            "tau = 3/2, position {:>2}: dim {:>3} = {} + {} ? {}",
            e.position, e.dimension, e.rank_outgoing, e.rank_incoming, e.exact
        );
    }
    Ok(())
}
