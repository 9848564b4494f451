//! Tor of the trivial TL3-module, from the reduced Anick complex and from the
//! normalized bar complex, at generic tau and a few values.

use anick::coeff::int;
use anick::groebner::complete;
use anick::homology::{bar_oracle, reduce_complex, render_reduced, tau_dependence_report, Specialization};
use anick::resolution::Resolution;
use anick::tlmap::{preset, PresetId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gb = complete(&preset(PresetId::Tl(3))?, 6)?;
    let res = Resolution::build(&gb, 4)?;
    for d in reduce_complex(&res).iter().take(3) {
        for line in render_reduced(&res, d, gb.alphabet()) {
            println!("{line}");
        }
    }
    let values = [int(0), int(1), int(2), int(-1)];
    let report = tau_dependence_report(&res, 4, &values)?;
    println!("{:?}", report.levels);
    print!("{}", report.betti.render_text());
    for s in [Specialization::Generic, Specialization::At(int(0))] {
        println!("bar complex at {s}: {:?}", bar_oracle(&gb, 3, &s)?.dims);
    }
    Ok(())
}
