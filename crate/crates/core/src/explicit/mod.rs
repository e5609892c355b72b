//! Exact explicit solving: CNF encoding, a CDCL core, hint procedures and the
//! biclique-cover / set-cover instance converters.

mod cnf;
mod hint;
mod reduction;
pub mod sat;

pub use cnf::{encode_cnf, solve_explicit, solve_explicit_with, CnfFormula, SolveOptions, SolveStats, VarMap};
pub use hint::{max_complement, solve_with_hint, HintReport};
pub use reduction::{
    from_ccbs, from_set_cover, witness_to_biclique_cover, witness_to_cover, Biclique, CcbsInstance,
    SetCoverInstance,
};
