//! Shared fixtures for the benchmarks.

use qbext::algebra::{Algebra, Elem};
use qbext::cartan::CartanDatum;

pub fn algebra(t: &str) -> Algebra {
    Algebra::new(CartanDatum::new(t.parse().unwrap()).unwrap())
}

/// A fixed medium-sized element: a product of generators across levels
/// -1..=2, whose normal form exercises both exchange relations and the
/// slice-basis substitution.
pub fn medium_element(a: &Algebra) -> Elem {
    let text = "f[1,0] f[2,1] f[1,-1] f[2,0] f[1,1] f[2,2] f[1,0] f[2,1]";
    a.parse_elem(text).unwrap()
}
