//! Exact search for Bernstein functional equations `L · f^{s+1} = b(s) f^s`
//! by linear algebra over the Weyl algebra, used as an independent check on
//! small discriminants.

mod operator;
mod oracle;

pub use operator::{apply_to_power, with_parameter, WeylOperator, WeylTerm, S_VAR};
pub use oracle::{
    essential_vandermonde, factor_rational_roots, find_bernstein, verify_conjecture_small,
    ConjectureVerdict, OracleBounds, OracleResult, MAX_UNKNOWNS, SMALL_N_LIMIT,
};
