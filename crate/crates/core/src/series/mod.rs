//! Partial sums of Diophantine Dirichlet series and the identities that
//! rewrite them: Λ/Θ/Ψ, the recursive half-angle expansion, Abel and
//! floor-Stieltjes forms, and periodic-weight series.

pub mod lambda;
pub mod partial;
pub mod recursion;
pub mod spec;

pub use lambda::{
    lambda_bessel, lambda_bessel_term, lambda_elementary, lambda_elementary_term, lambda_slope, psi_from_lambda, psi_reconstruction,
    theta_tail, BesselLambda,
};
pub use partial::{
    abel_check, character_series, cot_sec_identity_check, partial_sum, partial_sum_parallel,
    stieltjes_floor_sum, summatory, AbelCheck, CotIdentity, PartialSumReport, Spike,
};
pub use recursion::{recursion_decompose, split_S1_S2, RecursionDecomposition, SplitSums};
pub use spec::{Kernel, Phase, SeriesSpec, Term, Weight};
