//! The three worked covers: two `(Z/5)^2`-covers branched over the dual
//! Hesse arrangement and one over the complete quadrilateral.

use crate::arrangement::{complete_quadrilateral, dual_hesse, Arrangement};
use crate::homology::Epimorphism;

fn epi(rows: &[[i64; 2]]) -> Epimorphism {
    Epimorphism::validated(5, rows.iter().map(|r| r.to_vec()).collect()).expect("builtin epimorphism")
}

pub fn phi1() -> Epimorphism {
    epi(&[[1, 1], [1, 0], [1, 1], [3, 3], [3, 0], [0, 1], [0, 1], [0, 2], [1, 1]])
}

pub fn phi2() -> Epimorphism {
    epi(&[[0, 1], [1, 0], [1, 0], [0, 1], [1, 0], [0, 1], [1, 2], [1, 2], [0, 3]])
}

pub fn phi3() -> Epimorphism {
    epi(&[[1, 0], [1, 0], [1, 2], [0, 1], [0, 1], [2, 1]])
}

/// A named builtin cover: arrangement plus epimorphism, all points of
/// multiplicity at least 3 blown up.
#[derive(Clone, Debug)]
pub struct Example {
    pub name: &'static str,
    pub arrangement: Arrangement,
    pub phi: Epimorphism,
}

pub fn example(name: &str) -> Option<Example> {
    let (name, arrangement, phi) = match name {
        "example1" => ("example1", dual_hesse(), phi1()),
        "example2" => ("example2", dual_hesse(), phi2()),
        "example3" => ("example3", complete_quadrilateral(), phi3()),
        _ => return None,
    };
    Some(Example { name, arrangement, phi })
}

pub fn arrangement(name: &str) -> Option<Arrangement> {
    match name {
        "dual_hesse" => Some(dual_hesse()),
        "complete_quadrilateral" => Some(complete_quadrilateral()),
        _ => example(name).map(|e| e.arrangement),
    }
}

pub const EXAMPLES: [&str; 3] = ["example1", "example2", "example3"];
