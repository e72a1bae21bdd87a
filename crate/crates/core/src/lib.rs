//! Jordan block sizes of unipotent and nilpotent elements of `Sp(V)` in
//! characteristic 2 acting on the Lie algebras of the simply connected and
//! adjoint groups of type C, computed both from closed-form decomposition
//! rules and from explicit matrices over GF(2) and integer lattices.

use std::fmt;
use std::str::FromStr;

pub mod adjoint;
pub mod block_arith;
pub mod chevalley;
pub mod classes;
pub mod gf2;
pub mod jordan;
pub mod matrix_reps;

pub use jordan::JordanType;

/// Whether a class lives in the group (unipotent `u`) or the Lie algebra (nilpotent `e`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Unipotent,
    Nilpotent,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Unipotent => "unipotent",
            Kind::Nilpotent => "nilpotent",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "unipotent" | "unip" | "u" => Ok(Kind::Unipotent),
            "nilpotent" | "nilp" | "n" => Ok(Kind::Nilpotent),
            other => Err(format!("unknown kind {other:?} (expected unipotent or nilpotent)")),
        }
    }
}
