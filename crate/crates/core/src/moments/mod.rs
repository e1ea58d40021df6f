//! The mollifier `λ(n)`, `M(s, d)`, weighted family sums over square-free
//! `d`, the empirical mollified second moment and the constant bounding the
//! proportion of vanishing central values.

mod family;
mod headline;
mod mollifier;

pub use family::{
    family_sum, family_sum_weighted, main_term_prediction, mollified_ratio, s1_main_term,
    sieve_weights, FamilyVariant, MollifiedRatio, MomentConfig,
};
pub use headline::{
    default_s, headline_constant, v_formula, GradientDenominator, HeadlineConfig, HeadlineResult,
    Prefactor, VConvention, VValue, TAIL_LIMIT,
};
pub use mollifier::{lambda_coeff, mollifier_value, MollifierSpec, Poly};
