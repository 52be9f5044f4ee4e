//! Fixtures shared by the criterion benches.

use cansplit::poly::rat;
use cansplit::toric::Rank2Toric;
use cansplit::{parse, Poly, VarTable};

pub const QUARTIC: &str = include_str!("../../../data/a19_quartic.txt");

/// The quartic with an A_19 point at the origin of the chart `t = 1`.
pub fn a19_quartic() -> Poly {
    let table = VarTable::new(&["x", "y", "z", "t"]).expect("valid names");
    parse(QUARTIC, &table).expect("quartic parses").evaluate(&[(3, rat::int(1))])
}

/// `x^2 + x*y^2 + y^5 + x*y*z + z^7` in `x, y, z`.
pub fn mixed_germ() -> Poly {
    let table = VarTable::new(&["x", "y", "z"]).expect("valid names");
    parse("x^2 + x*y^2 + y^5 + x*y*z + z^7", &table).expect("germ parses")
}

/// The weighted rank-2 example with a divisorial, a flop and a divisorial step.
pub fn weighted_example() -> Rank2Toric {
    Rank2Toric::from_ints(
        &["u", "x", "y", "z", "alpha", "xi", "t"],
        [&[0, 1, 1, 1, 3, 5, 1], &[-1, 0, 1, 1, 3, 6, 2]],
        2,
    )
    .expect("valid toric data")
}
