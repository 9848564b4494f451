//! Loads presentations from JSON and computes Tor where it does not vanish.

use anick::cli::presentation_from_json;
use anick::groebner::complete;
use anick::homology::{bar_oracle, betti, reduce_complex, Specialization};
use anick::resolution::Resolution;

const DUAL_NUMBERS: &str = r#"{ "format": 1, "generators": ["x"], "relations": ["x*x"] }"#;
const EXTERIOR: &str = r#"{
  "format": 1,
  "generators": ["x", "y"],
  "relations": ["x*x", "y*y", "y*x + x*y"]
}"#;
const BAD: &str = r#"{ "format": 1, "generators": ["x"], "relations": ["x*z"] }"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, text) in [("k[x]/x^2", DUAL_NUMBERS), ("exterior algebra on x, y", EXTERIOR)] {
        let p = presentation_from_json(text)?;
        let gb = complete(&p, 6)?;
        let res = Resolution::build(&gb, 4)?;
        let anick = betti(&reduce_complex(&res), 4, &Specialization::Generic)?;
        let bar = bar_oracle(&gb, 4, &Specialization::Generic)?;
        println!("{name}: Tor dims {:?} (bar complex {:?})", anick.dims, bar.dims);
    }
    println!("bad file: {}", presentation_from_json(BAD).unwrap_err());
    Ok(())
}
