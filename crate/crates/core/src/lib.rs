//! Exact noncommutative Gröbner bases, Anick chains, Anick's free resolution
//! and the Tor-computing reduced complex for finitely presented augmented
//! algebras, with Temperley-Lieb and braid-monoid presets.

pub mod coeff;
pub mod freealg;
pub mod groebner;
pub mod chains;
pub mod linalg;
pub mod resolution;
pub mod homology;
pub mod tlmap;
pub mod cli;
