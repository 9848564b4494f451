//! Anick chains of TL3: listings, the doubling of |Cn| and length ranges.

use anick::chains::{degree_range, enumerate_chains, euler_check};
use anick::groebner::complete;
use anick::tlmap::{preset, PresetId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gb = complete(&preset(PresetId::Tl(3))?, 6)?;
    let chains = enumerate_chains(&gb, 10)?;
    for cs in chains.levels() {
        let r = degree_range(cs).expect("nonempty level");
        print!("C_{:<2} |C| = {:<5} lengths {}..{}", cs.level, cs.len(), r.min_length, r.max_length);
        if cs.level <= 3 {
            let words: Vec<String> = cs.chains.iter().map(|c| gb.alphabet().fmt_compact(&c.word)).collect();
            print!("  {}", words.join(" "));
        }
        println!();
    }
    let euler = euler_check(2, &gb.obstructions(), 12)?;
    println!("normal words {:?}", euler.normal_words);
    println!("H(t) * chain series = 1 through t^12: {}", euler.holds);
    Ok(())
}
