//! Finite n-valued Lukasiewicz-Moisil algebras, their dual spaces, and
//! their congruence lattices.
//!
//! Every object is finite: subsets are fixed-width bitsets ([`Subset`]),
//! orders are stored as up/down rows, and the dual space carries the
//! discrete topology, so every subset is clopen and closure is the identity.

pub mod boolean;
pub mod congruence;
pub mod duality;
pub mod error;
pub mod lattice;
pub mod lm;
pub mod poset;
pub mod subset;

pub use duality::{
    chain_decomposition, co_dual, dual_hom, dual_space, round_trip, validate_space, CoDual, Dual,
    LnPSpace, RoundTrip, SpaceAxiom, SpaceReport,
};
pub use congruence::{Congruence, ConLattice, Mode};
pub use error::{BooleanError, CongruenceError, DualityError, LatticeError, LmError, OrderError};
pub use lattice::{DistLattice, PrimeSpectrum};
pub use lm::{make_chain, make_ideal, make_power, make_product, make_subchain, Axiom, LmAlgebra, ValidationReport};
pub use poset::Poset;
pub use subset::Subset;
