//! Fractional matchings, deficiency maximisation and factor decisions.
//!
//! Every decision is made by the deficiency criterion
//! `max_S i(G−S) − c·|S| ≤ 0` and backed by an independent constructive
//! certificate or refuting witness set.

mod certificate;
mod deficiency;
mod fractional;
mod matching;

pub use certificate::{
    find_factor, has_k2_ck_factor, has_star_factor, two_matching_factor, Component, FactorCertificate, FactorKind,
    FactorOutcome, CONSTRUCT_MAX_ORDER,
};
pub use deficiency::{max_deficiency, DeficiencyResult, DEFICIENCY_MAX_ORDER};
pub use fractional::{
    brute_force_mu_f, double_cover_matching_size, fractional_matching_number, FractionalMatchingNumber,
    BRUTE_FORCE_MAX_ORDER,
};
pub use matching::{bipartite_max_matching, BipartiteMatching};
