//! Completes TL3 and prints how every ambiguity resolves.

use anick::groebner::{complete, verify_diamond};
use anick::tlmap::{preset, PresetId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tl3 = preset(PresetId::Tl(3))?;
    let gb = complete(&tl3, 6)?;
    println!("complete: {}", gb.is_complete());
    for g in gb.elements() {
        println!("  {}", g.display(gb.alphabet()));
    }
    let report = verify_diamond(&gb)?;
    for e in &report.entries {
        println!("{:>8} {:?}: {}  ->  {}", e.word, e.kind, e.s_polynomial, e.normal_form);
    }
    println!("all resolved: {}", report.all_resolved);
    Ok(())
}
