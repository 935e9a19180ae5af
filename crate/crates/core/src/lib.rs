//! Exact p-adic computation of Stirling-number valuations `e_p(n, k)` and the
//! lower bounds for homotopy exponents of `SU(n)` built from them.

pub mod bounds;
pub mod error;
pub mod exponent;
pub mod padic;
pub mod poly;
pub mod polysum;
pub mod stirling;
pub mod verify;
mod zmod;

pub use error::{Error, Result};
pub use exponent::{carmichael_lambda, pow_mod, StructuredExponent};
pub use padic::{
    carries, euler_phi_prime_power, is_prime, least_residue, ord_biguint, ord_factorial, ord_int,
    ord_u64, trunc_val, ModPE, Prime, PrimePowerCtx, Tri, TruncatedValuation, Valuation,
};
pub use poly::{binom_poly, poly_delta, IntPolynomial};
pub use stirling::{
    dsu_cap, e_p, e_p_stable, mstirling_mod, mstirling_mod_row, stable_params, stirling_exact,
    Certificate, EpOptions, EpResult, Precision, StableParams, StableValue,
};
pub use verify::{CheckName, CheckOutcome, GridSpec, SweepReport};

/// Run `f` on a dedicated pool of `jobs` worker threads.
pub fn with_worker_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
    {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
