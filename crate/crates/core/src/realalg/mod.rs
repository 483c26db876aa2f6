//! Exact real algebraic arithmetic: root isolation, algebraic numbers and
//! sample points with algebraic coordinates.

mod algnum;
mod field;
mod isolate;
mod sample;
pub mod upoly;

use num_traits::Signed;
use serde::{Serialize, Serializer};

pub use algnum::AlgNum;
pub use field::{Elt, Field, KPoly};
pub use isolate::{isolate_real_roots, root_bound, simplest_between, RootInterval};
pub use sample::{LiftRoot, LiftRoots, SamplePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, o: Sign) -> Sign {
        match (self, o) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

impl Sign {
    pub fn of<T: Signed>(x: &T) -> Sign {
        if x.is_positive() {
            Sign::Pos
        } else if x.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.to_i8())
    }
}
